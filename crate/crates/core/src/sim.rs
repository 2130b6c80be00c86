//! Perception–selection–action loop, scenarios and batch runs.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::ibenet::{DriveKind, ExternalAction, IbeNet, IbenetParams, SelectionState};
use crate::motor::{apply_step, position_clear, step_for_action, MotorParams};
use crate::perception::{sense, PerceptKind, PerceptMemory, PerceptionParams, Pose};
use crate::physiology::{
    apply_consummation, is_dead, tick_needs, InternalField, InternalState, PhysiologyParams,
};
use crate::world::{Depletion, Stimulus, StimulusId, StimulusKind, Vec2, World};

#[derive(Debug, Clone, PartialEq)]
pub enum ScriptedAction {
    MoveStimulus { id: StimulusId, position: Vec2 },
    AddStimulus(Stimulus),
    RemoveStimulus { id: StimulusId },
    SetInternal { field: InternalField, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEvent", into = "RawEvent")]
pub struct ScriptedEvent {
    pub tick: u64,
    pub action: ScriptedAction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveSpec {
    id: StimulusId,
    position: Vec2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RemoveSpec {
    id: StimulusId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetSpec {
    field: InternalField,
    value: f64,
}

// File form of an event: a tick plus exactly one action table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvent {
    tick: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    move_stimulus: Option<MoveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    add_stimulus: Option<Stimulus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    remove_stimulus: Option<RemoveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    set_internal: Option<SetSpec>,
}

impl TryFrom<RawEvent> for ScriptedEvent {
    type Error = String;

    fn try_from(raw: RawEvent) -> Result<Self, String> {
        let mut actions = Vec::new();
        if let Some(m) = raw.move_stimulus {
            actions.push(ScriptedAction::MoveStimulus {
                id: m.id,
                position: m.position,
            });
        }
        if let Some(s) = raw.add_stimulus {
            actions.push(ScriptedAction::AddStimulus(s));
        }
        if let Some(r) = raw.remove_stimulus {
            actions.push(ScriptedAction::RemoveStimulus { id: r.id });
        }
        if let Some(s) = raw.set_internal {
            actions.push(ScriptedAction::SetInternal {
                field: s.field,
                value: s.value,
            });
        }
        if actions.len() != 1 {
            return Err(format!(
                "event at tick {} must have exactly one of move_stimulus, add_stimulus, remove_stimulus, set_internal",
                raw.tick
            ));
        }
        Ok(ScriptedEvent {
            tick: raw.tick,
            action: actions.remove(0),
        })
    }
}

impl From<ScriptedEvent> for RawEvent {
    fn from(e: ScriptedEvent) -> Self {
        let mut raw = RawEvent {
            tick: e.tick,
            move_stimulus: None,
            add_stimulus: None,
            remove_stimulus: None,
            set_internal: None,
        };
        match e.action {
            ScriptedAction::MoveStimulus { id, position } => {
                raw.move_stimulus = Some(MoveSpec { id, position })
            }
            ScriptedAction::AddStimulus(s) => raw.add_stimulus = Some(s),
            ScriptedAction::RemoveStimulus { id } => raw.remove_stimulus = Some(RemoveSpec { id }),
            ScriptedAction::SetInternal { field, value } => {
                raw.set_internal = Some(SetSpec { field, value })
            }
        }
        raw
    }
}

fn default_max_ticks() -> u64 {
    1000
}

fn default_name() -> String {
    "scenario".to_string()
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_ticks")]
    pub max_ticks: u64,
    pub world: World,
    pub animat: Pose,
    #[serde(default)]
    pub internal: InternalState,
    #[serde(default)]
    pub perception: PerceptionParams,
    #[serde(default)]
    pub physiology: PhysiologyParams,
    #[serde(default)]
    pub motor: MotorParams,
    #[serde(default)]
    pub ibenet: IbenetParams,
    #[serde(default)]
    pub events: Vec<ScriptedEvent>,
}

impl Scenario {
    /// Every violated constraint, each prefixed with its field path.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.max_ticks == 0 {
            out.push("max_ticks: must be > 0".to_string());
        }
        let world = self.world.violations();
        let world_ok = world.is_empty();
        out.extend(world);
        out.extend(self.internal.violations("internal"));
        out.extend(self.perception.violations());
        out.extend(self.physiology.violations());
        let motor = self.motor.violations();
        let motor_ok = motor.is_empty();
        out.extend(motor);
        out.extend(self.ibenet.violations());

        let p = self.animat.position;
        if !p.is_finite() || !self.animat.theta.is_finite() {
            out.push("animat: position and theta must be finite".to_string());
        } else if world_ok && motor_ok && !position_clear(p, &self.motor, &self.world) {
            out.push(format!(
                "animat.position: body at {p} overlaps an obstacle or the world frame"
            ));
        }

        let mut ids: BTreeSet<StimulusId> = self.world.stimuli.iter().map(|s| s.id).collect();
        let mut last_tick = 0;
        for (i, e) in self.events.iter().enumerate() {
            let path = format!("events[{i}]");
            if e.tick < last_tick {
                out.push(format!(
                    "{path}.tick: events must be sorted by tick ({} after {last_tick})",
                    e.tick
                ));
            }
            last_tick = last_tick.max(e.tick);
            match &e.action {
                ScriptedAction::MoveStimulus { id, position } => {
                    if !ids.contains(id) {
                        out.push(format!(
                            "{path}.move_stimulus.id: unknown stimulus {}",
                            id.0
                        ));
                    }
                    if !position.is_finite() || !self.world.bounds.contains(*position) {
                        out.push(format!("{path}.move_stimulus.position: {position} lies outside the world bounds"));
                    }
                }
                ScriptedAction::AddStimulus(s) => {
                    if !ids.insert(s.id) {
                        out.push(format!("{path}.add_stimulus.id: duplicate id {}", s.id.0));
                    }
                    if !(s.magnitude > 0.0 && s.magnitude.is_finite()) {
                        out.push(format!(
                            "{path}.add_stimulus.magnitude: must be > 0, got {}",
                            s.magnitude
                        ));
                    }
                    if !(s.body_radius >= 0.0 && s.body_radius.is_finite()) {
                        out.push(format!(
                            "{path}.add_stimulus.body_radius: must be >= 0, got {}",
                            s.body_radius
                        ));
                    }
                    if !s.position.is_finite() || !self.world.bounds.contains(s.position) {
                        out.push(format!(
                            "{path}.add_stimulus.position: {} lies outside the world bounds",
                            s.position
                        ));
                    }
                }
                ScriptedAction::RemoveStimulus { id } => {
                    if !ids.remove(id) {
                        out.push(format!(
                            "{path}.remove_stimulus.id: unknown stimulus {}",
                            id.0
                        ));
                    }
                }
                ScriptedAction::SetInternal { field, value } => {
                    if !(0.0..=1.0).contains(value) {
                        out.push(format!(
                            "{path}.set_internal.value: {} must be in [0, 1], got {value}",
                            field.label()
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError { violations })
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid scenario:\n  {}", .violations.join("\n  "))]
pub struct ValidationError {
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEvent {
    pub tick: u64,
    pub pose: Pose,
    pub action: ExternalAction,
    pub drive: Option<(DriveKind, f64)>,
    pub internal: InternalState,
    /// Percept value per kind, in [`PerceptKind::ALL`] order; remembered
    /// percepts report their decayed value, absent kinds 0.
    pub percepts: [f64; 8],
    pub collision: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    MaxTicks,
    Death,
}

impl Termination {
    pub fn label(self) -> &'static str {
        match self {
            Termination::MaxTicks => "max_ticks",
            Termination::Death => "death",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinalState {
    pub world: World,
    pub pose: Pose,
    pub internal: InternalState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub events: Vec<TraceEvent>,
    pub termination: Termination,
    pub final_state: FinalState,
}

impl RunResult {
    pub fn first_drive(&self) -> Option<DriveKind> {
        self.events.iter().find_map(|e| e.drive.map(|d| d.0))
    }

    /// Tick of the first Drink, if any.
    pub fn first_drink(&self) -> Option<u64> {
        self.events
            .iter()
            .find(|e| e.action == ExternalAction::Drink)
            .map(|e| e.tick)
    }
}

/// A running simulation.
pub struct Sim {
    scenario: Scenario,
    world: World,
    pose: Pose,
    internal: InternalState,
    memory: PerceptMemory,
    selection: SelectionState,
    net: IbeNet,
    rng: ChaCha8Rng,
    tick: u64,
    next_event: usize,
    events: Vec<TraceEvent>,
    termination: Option<Termination>,
}

impl Sim {
    pub fn new(scenario: Scenario) -> Result<Self, ValidationError> {
        scenario.validate()?;
        Ok(Self {
            world: scenario.world.clone(),
            pose: Pose::new(scenario.animat.position, scenario.animat.theta),
            internal: scenario.internal,
            memory: PerceptMemory::new(),
            selection: SelectionState::default(),
            net: IbeNet::new(scenario.ibenet.clone(), scenario.physiology.clone()),
            rng: ChaCha8Rng::seed_from_u64(scenario.seed),
            tick: 0,
            next_event: 0,
            events: Vec::new(),
            termination: None,
            scenario,
        })
    }

    pub fn termination(&self) -> Option<Termination> {
        self.termination
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn internal(&self) -> &InternalState {
        &self.internal
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    fn apply_scripted(&mut self) {
        while let Some(e) = self.scenario.events.get(self.next_event) {
            if e.tick > self.tick {
                break;
            }
            self.next_event += 1;
            if e.tick < self.tick {
                continue;
            }
            match &e.action {
                ScriptedAction::MoveStimulus { id, position } => {
                    if let Some(s) = self.world.stimulus_mut(*id) {
                        s.position = *position;
                    }
                }
                ScriptedAction::AddStimulus(s) => {
                    if self.world.stimulus(s.id).is_none() {
                        self.world.stimuli.push(s.clone());
                    }
                }
                ScriptedAction::RemoveStimulus { id } => self.world.stimuli.retain(|s| s.id != *id),
                ScriptedAction::SetInternal { field, value } => self.internal.set(*field, *value),
            }
        }
    }

    /// Advances one tick. Does nothing once terminated.
    pub fn step(&mut self) -> Option<&TraceEvent> {
        if self.termination.is_some() {
            return None;
        }
        self.apply_scripted();

        let motor = &self.scenario.motor;
        let (percepts, memory) = sense(
            &self.world,
            &self.pose,
            self.internal.lucidity,
            motor.body_radius,
            &self.memory,
            &self.scenario.perception,
        );
        self.memory = memory;

        let out = self
            .net
            .tick(self.tick, &percepts, &self.internal, &self.selection);
        let action = out.action;

        let bearing = match action {
            ExternalAction::AvoidObstacle => percepts
                .iter()
                .find(|p| p.kind == PerceptKind::Obstacle)
                .map(|p| p.bearing),
            ExternalAction::Runaway => percepts
                .iter()
                .find(|p| p.kind == PerceptKind::Blob)
                .map(|p| p.bearing),
            _ => out.attention.as_ref().and_then(|a| a.bearing),
        };
        let step = step_for_action(action, bearing, &mut self.rng, motor);
        let moved = apply_step(&self.pose, step, self.internal.strength, motor, &self.world);
        self.pose = moved.pose;

        let mut consumed = None;
        if action.is_consummatory() {
            let source = match action {
                ExternalAction::Drink => StimulusKind::Water,
                ExternalAction::Eat => StimulusKind::Food,
                _ => StimulusKind::Grass,
            };
            let target = out
                .attention
                .as_ref()
                .filter(|a| a.at_range)
                .and_then(|a| a.target);
            if let Some(id) = target.and_then(|t| t.member(source)) {
                let rate = match action {
                    ExternalAction::Drink => self.scenario.physiology.drink_rate,
                    ExternalAction::Eat => self.scenario.physiology.eat_rate,
                    _ => self.scenario.physiology.rest_rate,
                };
                if self.world.deplete_stimulus(id, rate) != Depletion::UnknownId {
                    self.internal =
                        apply_consummation(&self.internal, action, &self.scenario.physiology);
                    consumed = Some(action);
                }
            }
        }
        self.internal = tick_needs(
            &self.internal,
            moved.moved,
            consumed,
            &self.scenario.physiology,
        );
        self.selection = out.selection;

        let mut values = [0.0; 8];
        for p in &percepts {
            if let Some(i) = PerceptKind::ALL.iter().position(|k| *k == p.kind) {
                values[i] = p.value;
            }
        }
        self.events.push(TraceEvent {
            tick: self.tick,
            pose: self.pose,
            action,
            drive: out.drive.map(|d| (d.kind, d.intensity)),
            internal: self.internal,
            percepts: values,
            collision: moved.collision,
        });
        debug_assert!(self.world.violations().is_empty());

        self.tick += 1;
        if is_dead(&self.internal) {
            self.termination = Some(Termination::Death);
        } else if self.tick >= self.scenario.max_ticks {
            self.termination = Some(Termination::MaxTicks);
        }
        self.events.last()
    }

    pub fn finish(mut self) -> RunResult {
        while self.step().is_some() {}
        RunResult {
            events: self.events,
            termination: self.termination.unwrap_or(Termination::MaxTicks),
            final_state: FinalState {
                world: self.world,
                pose: self.pose,
                internal: self.internal,
            },
        }
    }
}

/// Runs `scenario` to Death or `max_ticks`.
pub fn run(scenario: &Scenario) -> Result<RunResult, ValidationError> {
    Ok(Sim::new(scenario.clone())?.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternSegment {
    pub action: ExternalAction,
    pub start_tick: u64,
    /// Inclusive.
    pub end_tick: u64,
}

/// Run-length encoding of the selected actions.
pub fn action_pattern(events: &[TraceEvent]) -> Vec<PatternSegment> {
    let mut out: Vec<PatternSegment> = Vec::new();
    for e in events {
        match out.last_mut() {
            Some(seg) if seg.action == e.action => seg.end_tick = e.tick,
            _ => out.push(PatternSegment {
                action: e.action,
                start_tick: e.tick,
                end_tick: e.tick,
            }),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Explore,
    Wander,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Explore => "explore",
            Variant::Wander => "wander",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchRun {
    pub seed: u64,
    /// Ticks until the first Drink; `None` if the run ended without one.
    pub first_drink: Option<u64>,
    pub termination: Termination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchReport {
    pub variant: Variant,
    pub max_ticks: u64,
    pub runs: Vec<BatchRun>,
}

impl BatchReport {
    pub fn censored(&self) -> usize {
        self.runs.iter().filter(|r| r.first_drink.is_none()).count()
    }

    /// Response times with censored runs counted at `max_ticks`, which
    /// makes any summary of them a lower bound.
    pub fn response_times(&self) -> Vec<f64> {
        self.runs
            .iter()
            .map(|r| r.first_drink.unwrap_or(self.max_ticks) as f64)
            .collect()
    }

    pub fn mean(&self) -> f64 {
        let t = self.response_times();
        t.iter().sum::<f64>() / t.len().max(1) as f64
    }

    pub fn median(&self) -> f64 {
        let mut t = self.response_times();
        if t.is_empty() {
            return f64::NAN;
        }
        t.sort_by(f64::total_cmp);
        let n = t.len();
        if n % 2 == 1 {
            t[n / 2]
        } else {
            (t[n / 2 - 1] + t[n / 2]) / 2.0
        }
    }
}

/// Runs seeds `seed_base .. seed_base + runs` in parallel; results come
/// back in seed order.
pub fn batch(
    scenario: &Scenario,
    runs: u64,
    seed_base: u64,
    variant: Variant,
) -> Result<BatchReport, ValidationError> {
    let mut base = scenario.clone();
    base.ibenet.explore = variant == Variant::Explore;
    base.validate()?;
    let results: Vec<BatchRun> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut s = base.clone();
            s.seed = seed_base.wrapping_add(i);
            let seed = s.seed;
            let result = Sim::new(s).expect("validated above").finish();
            BatchRun {
                seed,
                first_drink: result.first_drink(),
                termination: result.termination,
            }
        })
        .collect();
    Ok(BatchReport {
        variant,
        max_ticks: scenario.max_ticks,
        runs: results,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MannWhitney {
    /// U statistic of the first sample.
    pub u: f64,
    pub z: f64,
    /// One-sided p-value for the first sample tending to be smaller.
    pub p_less: f64,
}

/// Mann–Whitney U test, normal approximation with tie and continuity
/// corrections.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> MannWhitney {
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let mut pooled: Vec<(f64, usize)> = a
        .iter()
        .map(|v| (*v, 0))
        .chain(b.iter().map(|v| (*v, 1)))
        .collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut rank_sum_a = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        rank_sum_a += rank * pooled[i..j].iter().filter(|p| p.1 == 0).count() as f64;
        i = j;
    }
    let u = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    let n = n1 + n2;
    let mean = n1 * n2 / 2.0;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return MannWhitney {
            u,
            z: 0.0,
            p_less: 1.0,
        };
    }
    let z = (u - mean + 0.5) / var.sqrt();
    let normal = Normal::standard();
    MannWhitney {
        u,
        z,
        p_less: normal.cdf(z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::Rect;

    fn empty_scenario() -> Scenario {
        Scenario {
            name: "empty".into(),
            seed: 1,
            max_ticks: 50,
            world: World::new(Rect::new(Vec2::new(-20.0, -20.0), Vec2::new(20.0, 20.0))),
            animat: Pose::new(Vec2::ZERO, 0.0),
            internal: InternalState {
                security: 1.0,
                ..Default::default()
            },
            perception: PerceptionParams::default(),
            physiology: PhysiologyParams::default(),
            motor: MotorParams::default(),
            ibenet: IbenetParams::default(),
            events: Vec::new(),
        }
    }

    fn water(id: u32, z: f64, x: f64, magnitude: f64) -> Stimulus {
        Stimulus {
            id: StimulusId(id),
            kind: StimulusKind::Water,
            position: Vec2::new(z, x),
            magnitude,
            body_radius: 0.5,
        }
    }

    #[test]
    fn zero_rates_only_move_the_pose() {
        let mut s = empty_scenario();
        s.physiology = PhysiologyParams {
            thirst_growth: 0.0,
            hunger_growth: 0.0,
            fatigue_per_meter: 0.0,
            drain_rate: 0.0,
            restore_rate: 0.0,
            ..Default::default()
        };
        let r = run(&s).unwrap();
        assert_eq!(r.events.len(), 50);
        assert!(r
            .events
            .iter()
            .all(|e| e.internal == s.internal && e.action == ExternalAction::Wander));
        assert_ne!(r.final_state.pose, s.animat);
        assert_eq!(action_pattern(&r.events).len(), 1);
    }

    #[test]
    fn same_seed_same_trace() {
        let s = empty_scenario();
        assert_eq!(run(&s).unwrap(), run(&s).unwrap());
        let mut other = s.clone();
        other.seed = 2;
        assert_ne!(run(&s).unwrap().events, run(&other).unwrap().events);
    }

    #[test]
    fn drink_tick_is_symmetric() {
        let mut s = empty_scenario();
        s.internal.thirst = 0.6;
        s.world.stimuli.push(water(1, 1.0, 0.0, 2.0));
        s.max_ticks = 1;
        let r = run(&s).unwrap();
        assert_eq!(r.events[0].action, ExternalAction::Drink);
        let rho = s.physiology.drink_rate;
        assert!((r.final_state.internal.thirst - (0.6 - rho)).abs() < 1e-12);
        assert!((r.final_state.world.stimuli[0].magnitude - (2.0 - rho)).abs() < 1e-12);
    }

    #[test]
    fn validation_examples() {
        let mut s = empty_scenario();
        s.max_ticks = 0;
        s.internal.thirst = -0.1;
        let v = s.violations();
        assert!(v.iter().any(|m| m.starts_with("max_ticks")));
        assert!(v.iter().any(|m| m.starts_with("internal.thirst")));

        let mut s = empty_scenario();
        s.events = vec![
            ScriptedEvent {
                tick: 5,
                action: ScriptedAction::RemoveStimulus { id: StimulusId(9) },
            },
            ScriptedEvent {
                tick: 2,
                action: ScriptedAction::SetInternal {
                    field: InternalField::Thirst,
                    value: 2.0,
                },
            },
        ];
        let v = s.violations();
        assert_eq!(v.len(), 3, "{v:?}");
    }

    #[test]
    fn scripted_events_apply_on_their_tick() {
        let mut s = empty_scenario();
        s.max_ticks = 3;
        s.events = vec![ScriptedEvent {
            tick: 1,
            action: ScriptedAction::SetInternal {
                field: InternalField::Hunger,
                value: 0.3,
            },
        }];
        s.physiology.hunger_growth = 0.0;
        let r = run(&s).unwrap();
        assert_eq!(r.events[0].internal.hunger, 0.0);
        assert_eq!(r.events[1].internal.hunger, 0.3);
    }

    #[test]
    fn pattern_segments_count_switches() {
        let s = empty_scenario();
        let mut events = run(&s).unwrap().events;
        for (i, e) in events.iter_mut().enumerate() {
            e.action = if (i / 3) % 2 == 0 {
                ExternalAction::Wander
            } else {
                ExternalAction::Explore
            };
        }
        let switches = events
            .windows(2)
            .filter(|w| w[0].action != w[1].action)
            .count();
        let pattern = action_pattern(&events);
        assert_eq!(pattern.len(), switches + 1);
        assert_eq!(
            pattern[0],
            PatternSegment {
                action: ExternalAction::Wander,
                start_tick: 0,
                end_tick: 2
            }
        );
        assert_eq!(
            pattern.last().unwrap().end_tick,
            events.last().unwrap().tick
        );
    }

    #[test]
    fn mann_whitney_matches_reference() {
        // reference values from scipy.stats.mannwhitneyu(a, b,
        // alternative="less", method="asymptotic", use_continuity=True)
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 5.0, 6.0];
        let b = [4.0, 5.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0];
        let r = mann_whitney_u(&a, &b);
        assert_eq!(r.u, 5.5);
        assert!(
            (r.p_less - 0.005_272_165_283_486_347).abs() < 1e-10,
            "{r:?}"
        );
        let r = mann_whitney_u(&[3.0, 3.0, 3.0, 7.0, 1.0], &[3.0, 2.0, 9.0, 9.0, 9.0, 4.0]);
        assert_eq!(r.u, 7.5);
        assert!((r.p_less - 0.093_295_145_731_699_5).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn batch_is_ordered_by_seed() {
        let mut s = empty_scenario();
        s.max_ticks = 20;
        let r = batch(&s, 5, 10, Variant::Explore).unwrap();
        let seeds: Vec<u64> = r.runs.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, vec![10, 11, 12, 13, 14]);
        assert_eq!(r.censored(), 5);
        assert_eq!(r.mean(), 20.0);
    }
}
