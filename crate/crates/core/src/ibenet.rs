//! The action selection network: a cognitive and a motivational blackboard
//! node cooperating to turn percepts and internal state into exactly one
//! external action per tick.
//!
//! Pipeline, in order:
//!
//! 1. exteroceptors and perceptual persistence (cognitive)
//! 2. transmit persistents to the motivational node
//! 3. proprioceptors
//! 4. propio/extero/drive congruence
//! 5. consummatory preferences selector (winner takes all, with
//!    persistence and aversive preemption)
//! 6. transmit the drive to the cognitive node
//! 7. attention to preferences
//! 8. external behaviours selector, with reflex response inhibition
//!
//! Every stage is a package of production rules run through
//! [`blackboard::run_node`](crate::blackboard::run_node). The free
//! functions in this module run a single stage on a scratch board so each
//! one can be exercised on its own.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blackboard::{
    run_node, ActionDescriptor, Blackboard, CompetitionMode, InternalBehaviour, LevelId, NodeKind,
    Reac, Rule,
};
use crate::perception::{Percept, PerceptKind, Target};
use crate::physiology::{InternalState, PhysiologyParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveKind {
    Thirst,
    Hunger,
    ThirstAndHunger,
    Fatigue,
    Safety,
}

impl DriveKind {
    pub const ALL: [DriveKind; 5] = [
        DriveKind::Thirst,
        DriveKind::Hunger,
        DriveKind::ThirstAndHunger,
        DriveKind::Fatigue,
        DriveKind::Safety,
    ];

    pub fn label(self) -> &'static str {
        match self {
            DriveKind::Thirst => "thirst",
            DriveKind::Hunger => "hunger",
            DriveKind::ThirstAndHunger => "thirst_and_hunger",
            DriveKind::Fatigue => "fatigue",
            DriveKind::Safety => "safety",
        }
    }

    /// Percept kind that satisfies the drive.
    pub fn percept(self) -> PerceptKind {
        match self {
            DriveKind::Thirst => PerceptKind::Water,
            DriveKind::Hunger => PerceptKind::Food,
            DriveKind::ThirstAndHunger => PerceptKind::FoodAndWater,
            DriveKind::Fatigue => PerceptKind::Grass,
            DriveKind::Safety => PerceptKind::Blob,
        }
    }

    /// Behaviour id of the drive's consummatory preference rule. The
    /// aversive rule is declared first, so it wins every tie.
    pub fn preference_rank(self) -> u32 {
        match self {
            DriveKind::Safety => 0,
            DriveKind::Thirst => 1,
            DriveKind::Hunger => 2,
            DriveKind::ThirstAndHunger => 3,
            DriveKind::Fatigue => 4,
        }
    }
}

impl fmt::Display for DriveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The animat's behaviour repertory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExternalAction {
    AvoidObstacle,
    Wander,
    Explore,
    ApproachFood,
    Eat,
    ApproachWater,
    Drink,
    ApproachFoodAndWater,
    ApproachGrass,
    Rest,
    Runaway,
}

impl ExternalAction {
    pub const ALL: [ExternalAction; 11] = [
        ExternalAction::AvoidObstacle,
        ExternalAction::Wander,
        ExternalAction::Explore,
        ExternalAction::ApproachFood,
        ExternalAction::Eat,
        ExternalAction::ApproachWater,
        ExternalAction::Drink,
        ExternalAction::ApproachFoodAndWater,
        ExternalAction::ApproachGrass,
        ExternalAction::Rest,
        ExternalAction::Runaway,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ExternalAction::AvoidObstacle => "avoid_obstacle",
            ExternalAction::Wander => "wander",
            ExternalAction::Explore => "explore",
            ExternalAction::ApproachFood => "approach_food",
            ExternalAction::Eat => "eat",
            ExternalAction::ApproachWater => "approach_water",
            ExternalAction::Drink => "drink",
            ExternalAction::ApproachFoodAndWater => "approach_food_and_water",
            ExternalAction::ApproachGrass => "approach_grass",
            ExternalAction::Rest => "rest",
            ExternalAction::Runaway => "runaway",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.label() == label)
    }

    pub fn is_consummatory(self) -> bool {
        matches!(
            self,
            ExternalAction::Eat | ExternalAction::Drink | ExternalAction::Rest
        )
    }

    pub fn is_approach(self) -> bool {
        matches!(
            self,
            ExternalAction::ApproachFood
                | ExternalAction::ApproachWater
                | ExternalAction::ApproachFoodAndWater
                | ExternalAction::ApproachGrass
        )
    }

    fn ordinal(self) -> u32 {
        Self::ALL
            .iter()
            .position(|a| *a == self)
            .unwrap_or_default() as u32
    }
}

impl fmt::Display for ExternalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IbenetParams {
    /// Added to the incumbent drive's activation.
    pub persistence_bonus: f64,
    /// Blob risk must exceed `risk_tolerance · security` to preempt.
    pub risk_tolerance: f64,
    /// Blob-free ticks needed before a runaway is considered over.
    pub calm_ticks: u32,
    /// Thirst or hunger above this, with no matching percept, backs a
    /// search for the missing signal.
    pub search_threshold: f64,
    /// Search congruent strength is `need · search_weight`.
    pub search_weight: f64,
    /// When false the search-backed action is Wander instead of Explore.
    pub explore: bool,
}

impl Default for IbenetParams {
    fn default() -> Self {
        Self {
            persistence_bonus: 0.1,
            risk_tolerance: 1.0,
            calm_ticks: 10,
            search_threshold: 0.5,
            search_weight: 0.5,
            explore: true,
        }
    }
}

impl IbenetParams {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(0.0..1.0).contains(&self.persistence_bonus) {
            out.push(format!(
                "ibenet.persistence_bonus: must be in [0, 1), got {}",
                self.persistence_bonus
            ));
        }
        if !(self.risk_tolerance > 0.0 && self.risk_tolerance.is_finite()) {
            out.push(format!(
                "ibenet.risk_tolerance: must be > 0, got {}",
                self.risk_tolerance
            ));
        }
        if self.calm_ticks == 0 {
            out.push("ibenet.calm_ticks: must be >= 1".to_string());
        }
        if !(0.0..=1.0).contains(&self.search_threshold) {
            out.push(format!(
                "ibenet.search_threshold: must be in [0, 1], got {}",
                self.search_threshold
            ));
        }
        if !(0.0..=1.0).contains(&self.search_weight) {
            out.push(format!(
                "ibenet.search_weight: must be in [0, 1], got {}",
                self.search_weight
            ));
        }
        out
    }
}

/// Combination of an internal need with the external signal able to
/// satisfy it. `percept == None` marks a search congruent: the need is
/// pressing but nothing that satisfies it is in view.
#[derive(Debug, Clone, PartialEq)]
pub struct Congruent {
    pub drive: DriveKind,
    pub percept: Option<PerceptKind>,
    pub strength: f64,
    pub at_range: bool,
    pub target: Option<Target>,
    /// Blob magnitude over distance; only set for safety congruents.
    pub risk: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriveSignal {
    pub kind: DriveKind,
    pub intensity: f64,
    pub target: Option<(PerceptKind, Target)>,
}

/// Drive bound to the percept it is after.
#[derive(Debug, Clone, PartialEq)]
pub struct Attention {
    pub drive: DriveKind,
    pub percept: Option<PerceptKind>,
    pub at_range: bool,
    pub target: Option<Target>,
    pub bearing: Option<f64>,
    pub remembered: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionState {
    pub current_drive: Option<DriveSignal>,
    pub current_action: ExternalAction,
    /// Drive that was cut short by an aversive preemption.
    pub interrupted_drive: Option<DriveKind>,
    /// Consecutive blob-free ticks while fleeing.
    pub calm_ticks: u32,
}

impl Default for SelectionState {
    fn default() -> Self {
        Self {
            current_drive: None,
            current_action: ExternalAction::Wander,
            interrupted_drive: None,
            calm_ticks: 0,
        }
    }
}

impl SelectionState {
    fn incumbent(&self) -> Option<DriveKind> {
        match &self.current_drive {
            Some(d) if d.kind != DriveKind::Safety => Some(d.kind),
            Some(_) => None,
            None => self.interrupted_drive,
        }
    }

    fn fleeing(&self) -> bool {
        self.current_drive
            .as_ref()
            .is_some_and(|d| d.kind == DriveKind::Safety)
    }
}

/// Synthetic signal able to suppress a reflex. Nothing in the simulation
/// produces these; they exist for conditioning experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InhibitionSignal {
    pub action: ExternalAction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflexVerdict {
    Allow,
    Suppress,
}

pub fn reflex_response_inhibition(
    reflex: ExternalAction,
    signals: &[InhibitionSignal],
) -> ReflexVerdict {
    if signals.iter().any(|s| s.action == reflex) {
        ReflexVerdict::Suppress
    } else {
        ReflexVerdict::Allow
    }
}

/// Solution element tags shared by both nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Percept(PerceptKind),
    Need(DriveKind),
    Congruent(DriveKind, Option<PerceptKind>),
    Drive(DriveKind),
    Action(ExternalAction),
}

/// Everything observable about one pass of the network.
#[derive(Debug, Clone, PartialEq)]
pub struct AsmOutcome {
    pub action: ExternalAction,
    pub drive: Option<DriveSignal>,
    pub congruents: Vec<Congruent>,
    /// Effective activation of every drive that entered the competition.
    pub activations: Vec<(DriveKind, f64)>,
    pub attention: Option<Attention>,
    pub reflex: Option<(ExternalAction, ReflexVerdict)>,
    pub selection: SelectionState,
}

// Action priorities inside the external behaviours selector.
const PRIORITY_REFLEX: f64 = 1.0;
const PRIORITY_RUNAWAY: f64 = 0.75;
const PRIORITY_DRIVEN: f64 = 0.5;
const PRIORITY_DEFAULT: f64 = 0.25;

/// Proprioceptor readings: one per need plus the safety exposure
/// `1 − security`, ordered by drive kind.
pub fn proprioceive(state: &InternalState) -> Vec<(DriveKind, f64)> {
    vec![
        (DriveKind::Thirst, state.thirst),
        (DriveKind::Hunger, state.hunger),
        (DriveKind::Fatigue, state.fatigue),
        (DriveKind::Safety, 1.0 - state.security),
    ]
}

fn need_of(needs: &[(DriveKind, f64)], kind: DriveKind) -> f64 {
    needs
        .iter()
        .find(|(k, _)| *k == kind)
        .map_or(0.0, |(_, v)| *v)
}

fn percept_of(percepts: &[Percept], kind: PerceptKind) -> Option<&Percept> {
    percepts.iter().find(|p| p.kind == kind)
}

/// Congruent for one drive, if its conditions hold.
fn congruent_for(
    drive: DriveKind,
    needs: &[(DriveKind, f64)],
    percepts: &[Percept],
    params: &IbenetParams,
    satiation: f64,
) -> Option<Congruent> {
    let need = match drive {
        DriveKind::ThirstAndHunger => {
            let (t, h) = (
                need_of(needs, DriveKind::Thirst),
                need_of(needs, DriveKind::Hunger),
            );
            if t <= satiation || h <= satiation {
                return None;
            }
            t.min(h)
        }
        DriveKind::Safety => need_of(needs, DriveKind::Safety),
        other => need_of(needs, other),
    };
    let bound = |p: &Percept, strength: f64| Congruent {
        drive,
        percept: Some(p.kind),
        strength,
        at_range: p.at_range,
        target: p.target,
        risk: None,
    };

    if drive == DriveKind::Safety {
        let blob = percept_of(percepts, PerceptKind::Blob).filter(|p| !p.remembered)?;
        let strength = need * blob.value;
        return (strength > 0.0).then(|| Congruent {
            risk: Some(blob.nearest_magnitude / blob.nearest_distance.max(1e-9)),
            ..bound(blob, strength)
        });
    }
    if need <= satiation {
        return None;
    }
    match percept_of(percepts, drive.percept()) {
        Some(p) if p.value > 0.0 => Some(bound(p, need * p.value)),
        Some(_) => None,
        None => {
            let searchable = matches!(drive, DriveKind::Thirst | DriveKind::Hunger);
            (searchable && need > params.search_threshold && params.search_weight > 0.0).then_some(
                Congruent {
                    drive,
                    percept: None,
                    strength: need * params.search_weight,
                    at_range: false,
                    target: None,
                    risk: None,
                },
            )
        }
    }
}

/// Consummatory action currently running for `drive`, if it must be
/// allowed to finish: the target is still at range and the need it
/// reduces is not yet satiated.
fn consummation_locked(
    congruent: &Congruent,
    selection: &SelectionState,
    internal: &InternalState,
    physiology: &PhysiologyParams,
) -> bool {
    let incumbent = selection.current_drive.as_ref().map(|d| d.kind);
    if incumbent != Some(congruent.drive) || !congruent.at_range || congruent.percept.is_none() {
        return false;
    }
    let sat = physiology.satiation_threshold;
    match selection.current_action {
        ExternalAction::Drink => internal.thirst > sat,
        ExternalAction::Eat => internal.hunger > sat,
        ExternalAction::Rest => internal.fatigue > sat,
        _ => false,
    }
}

/// Activation with which a congruent enters the winner-takes-all
/// competition, or `None` if it does not compete at all.
pub fn effective_activation(
    congruent: &Congruent,
    selection: &SelectionState,
    internal: &InternalState,
    params: &IbenetParams,
    physiology: &PhysiologyParams,
) -> Option<f64> {
    if congruent.drive == DriveKind::Safety {
        let limit = params.risk_tolerance * internal.security;
        return congruent.risk.filter(|r| *r > limit).map(|_| 1.0);
    }
    if consummation_locked(congruent, selection, internal, physiology) {
        Some(1.0)
    } else if selection.incumbent() == Some(congruent.drive) {
        Some((congruent.strength + params.persistence_bonus).min(1.0))
    } else {
        Some(congruent.strength)
    }
}

/// Attention to preferences: binds the drive to its percept, live or
/// remembered, or to a search for it.
pub fn attention_to_preferences(drive: &DriveSignal, percepts: &[Percept]) -> Attention {
    match percept_of(percepts, drive.kind.percept()) {
        Some(p) => Attention {
            drive: drive.kind,
            percept: Some(p.kind),
            at_range: p.at_range,
            target: p.target,
            bearing: Some(p.bearing),
            remembered: p.remembered,
        },
        None => Attention {
            drive: drive.kind,
            percept: None,
            at_range: false,
            target: None,
            bearing: None,
            remembered: false,
        },
    }
}

/// Which consummatory action a compound source is used for: an action
/// already under way continues until its need is satiated, otherwise the
/// larger need goes first (thirst on ties).
fn compound_consummation(
    selection: &SelectionState,
    internal: &InternalState,
    physiology: &PhysiologyParams,
) -> ExternalAction {
    let sat = physiology.satiation_threshold;
    let continuing = selection
        .current_drive
        .as_ref()
        .is_some_and(|d| d.kind == DriveKind::ThirstAndHunger);
    match selection.current_action {
        ExternalAction::Drink if continuing && internal.thirst > sat => ExternalAction::Drink,
        ExternalAction::Eat if continuing && internal.hunger > sat => ExternalAction::Eat,
        _ if internal.thirst >= internal.hunger => ExternalAction::Drink,
        _ => ExternalAction::Eat,
    }
}

/// Action backed by the attended drive, before reflexes are considered.
fn driven_action(
    attention: &Attention,
    selection: &SelectionState,
    internal: &InternalState,
    params: &IbenetParams,
    physiology: &PhysiologyParams,
) -> ExternalAction {
    use ExternalAction as A;
    let search = if params.explore {
        A::Explore
    } else {
        A::Wander
    };
    match (
        attention.drive,
        attention.percept.is_some(),
        attention.at_range,
    ) {
        (DriveKind::Safety, _, _) => A::Runaway,
        (DriveKind::Thirst, true, true) => A::Drink,
        (DriveKind::Thirst, true, false) => A::ApproachWater,
        (DriveKind::Hunger, true, true) => A::Eat,
        (DriveKind::Hunger, true, false) => A::ApproachFood,
        (DriveKind::ThirstAndHunger, true, true) => {
            compound_consummation(selection, internal, physiology)
        }
        (DriveKind::ThirstAndHunger, true, false) => A::ApproachFoodAndWater,
        (DriveKind::Fatigue, true, true) => A::Rest,
        (DriveKind::Fatigue, true, false) => A::ApproachGrass,
        (DriveKind::Thirst | DriveKind::Hunger | DriveKind::ThirstAndHunger, false, _) => search,
        (DriveKind::Fatigue, false, _) => A::Wander,
    }
}

/// Per-pass data the rules consult alongside the boards.
#[derive(Debug, Clone, Default)]
struct Ctx {
    percepts: Vec<Percept>,
    internal: InternalState,
    selection: SelectionState,
    params: IbenetParams,
    physiology: PhysiologyParams,
    inhibitions: Vec<InhibitionSignal>,
    congruents: Vec<Congruent>,
    fleeing_hold: bool,
    attention: Option<Attention>,
}

type Package = InternalBehaviour<Tag, Ctx>;

fn describe(level: LevelId, tag: Tag, certainty: f64) -> ActionDescriptor<Tag> {
    ActionDescriptor {
        level,
        tag,
        certainty,
    }
}

fn perception_packages() -> Vec<Package> {
    let mut extero = Package::new("exteroceptors", CompetitionMode::MultiWinner(0.0));
    let mut persistence = Package::new("perceptual persistence", CompetitionMode::MultiWinner(0.0));
    for (i, kind) in PerceptKind::ALL.into_iter().enumerate() {
        extero = extero.rule(Rule::new(i as u32, move |_, ctx: &Ctx| {
            percept_of(&ctx.percepts, kind)
                .filter(|p| !p.remembered)
                .map(|p| {
                    (
                        describe(LevelId::ExternalPerceptions, Tag::Percept(kind), p.value),
                        p.value,
                    )
                })
        }));
        persistence = persistence.rule(Rule::new(i as u32, move |_, ctx: &Ctx| {
            percept_of(&ctx.percepts, kind).map(|p| {
                (
                    describe(LevelId::PerceptualPersistents, Tag::Percept(kind), p.value),
                    p.value,
                )
            })
        }));
    }
    vec![extero, persistence]
}

fn congruence_package() -> Vec<Package> {
    let mut package = Package::new(
        "propio/extero/drive congruence",
        CompetitionMode::MultiWinner(0.0),
    );
    for (i, drive) in DriveKind::ALL.into_iter().enumerate() {
        package = package.rule(Rule::new(
            i as u32,
            move |board: &Blackboard<Tag>, ctx: &Ctx| {
                let needs: Vec<(DriveKind, f64)> = board
                    .read_level(LevelId::MotInternalPerceptions)
                    .iter()
                    .filter_map(|e| match e.tag {
                        Tag::Need(k) => Some((k, e.certainty)),
                        _ => None,
                    })
                    .collect();
                // percepts transmitted from the cognitive node
                let received: Vec<Percept> = ctx
                    .percepts
                    .iter()
                    .filter(|p| {
                        board
                            .get(LevelId::MotExternalPerceptions, &Tag::Percept(p.kind))
                            .is_some()
                    })
                    .cloned()
                    .collect();
                congruent_for(
                    drive,
                    &needs,
                    &received,
                    &ctx.params,
                    ctx.physiology.satiation_threshold,
                )
                .map(|c| {
                    (
                        describe(
                            LevelId::PropioExteroDriveCongruents,
                            Tag::Congruent(drive, c.percept),
                            c.strength,
                        ),
                        c.strength,
                    )
                })
            },
        ));
    }
    vec![package]
}

fn preference_package() -> Vec<Package> {
    let mut package = Package::new(
        "consummatory preferences selector",
        CompetitionMode::WinnerTakesAll,
    );
    for drive in DriveKind::ALL {
        package = package.rule(Rule::new(drive.preference_rank(), move |_, ctx: &Ctx| {
            let from_congruent = ctx
                .congruents
                .iter()
                .find(|c| c.drive == drive)
                .and_then(|c| {
                    effective_activation(
                        c,
                        &ctx.selection,
                        &ctx.internal,
                        &ctx.params,
                        &ctx.physiology,
                    )
                });
            let held = drive == DriveKind::Safety && ctx.fleeing_hold;
            let activation = if held { Some(1.0) } else { from_congruent };
            activation.map(|a| (describe(LevelId::Drive, Tag::Drive(drive), a), a))
        }));
    }
    vec![package]
}

fn attention_package() -> Vec<Package> {
    let mut package = Package::new("attention to preferences", CompetitionMode::WinnerTakesAll);
    for drive in DriveKind::ALL {
        package = package.rule(Rule::new(
            drive.preference_rank(),
            move |board: &Blackboard<Tag>, ctx: &Ctx| {
                let preferent = board.get(LevelId::ConsummatoryPreferents, &Tag::Drive(drive))?;
                let attention = ctx.attention.as_ref().filter(|a| a.drive == drive)?;
                Some((
                    describe(
                        LevelId::DrivePerceptionCongruents,
                        Tag::Congruent(drive, attention.percept),
                        preferent.certainty,
                    ),
                    preferent.certainty,
                ))
            },
        ));
    }
    vec![package]
}

fn obstacle_at_range(ctx: &Ctx) -> bool {
    percept_of(&ctx.percepts, PerceptKind::Obstacle).is_some_and(|p| p.at_range)
}

fn selector_packages() -> Vec<Package> {
    use ExternalAction as A;
    let mut potential = Package::new("external behaviours", CompetitionMode::MultiWinner(0.0));
    for action in ExternalAction::ALL {
        potential = potential.rule(Rule::new(
            action.ordinal(),
            move |board: &Blackboard<Tag>, ctx: &Ctx| {
                let attended = board
                    .read_level(LevelId::DrivePerceptionCongruents)
                    .first()
                    .and(ctx.attention.as_ref());
                let driven = attended.map(|a| {
                    driven_action(
                        a,
                        &ctx.selection,
                        &ctx.internal,
                        &ctx.params,
                        &ctx.physiology,
                    )
                });
                let priority = match action {
                    A::AvoidObstacle => {
                        let consuming = driven.is_some_and(A::is_consummatory);
                        (obstacle_at_range(ctx) && !consuming).then_some(PRIORITY_REFLEX)
                    }
                    A::Wander => Some(if driven == Some(A::Wander) {
                        PRIORITY_DRIVEN
                    } else {
                        PRIORITY_DEFAULT
                    }),
                    A::Runaway => (driven == Some(A::Runaway)).then_some(PRIORITY_RUNAWAY),
                    other => (driven == Some(other)).then_some(PRIORITY_DRIVEN),
                }?;
                Some((
                    describe(LevelId::PotentialActions, Tag::Action(action), priority),
                    priority,
                ))
            },
        ));
    }

    let mut actuators = Package::new("actuator", CompetitionMode::WinnerTakesAll);
    for action in ExternalAction::ALL {
        actuators = actuators.rule(Rule::new(
            action.ordinal(),
            move |board: &Blackboard<Tag>, ctx: &Ctx| {
                let e = board.get(LevelId::PotentialActions, &Tag::Action(action))?;
                if action == A::AvoidObstacle
                    && reflex_response_inhibition(action, &ctx.inhibitions)
                        == ReflexVerdict::Suppress
                {
                    return None;
                }
                Some((
                    describe(LevelId::Actions, Tag::Action(action), e.certainty),
                    e.certainty,
                ))
            },
        ));
    }
    vec![potential, actuators]
}

/// The two-node network with its rule packages and persistent boards.
pub struct IbeNet {
    params: IbenetParams,
    physiology: PhysiologyParams,
    inhibitions: Vec<InhibitionSignal>,
    cognitive: Blackboard<Tag>,
    motivational: Blackboard<Tag>,
    perception: Vec<Package>,
    congruence: Vec<Package>,
    preferences: Vec<Package>,
    attention: Vec<Package>,
    potential: Package,
    actuators: Package,
}

impl fmt::Debug for IbeNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IbeNet")
            .field("params", &self.params)
            .field("cognitive", &self.cognitive)
            .field("motivational", &self.motivational)
            .finish_non_exhaustive()
    }
}

impl IbeNet {
    pub fn new(params: IbenetParams, physiology: PhysiologyParams) -> Self {
        let mut selector = selector_packages().into_iter();
        Self {
            params,
            physiology,
            inhibitions: Vec::new(),
            cognitive: Blackboard::new(NodeKind::Cognitive),
            motivational: Blackboard::new(NodeKind::Motivational),
            perception: perception_packages(),
            congruence: congruence_package(),
            preferences: preference_package(),
            attention: attention_package(),
            potential: selector.next().expect("potential actions package"),
            actuators: selector.next().expect("actuator package"),
        }
    }

    pub fn with_inhibitions(mut self, inhibitions: Vec<InhibitionSignal>) -> Self {
        self.inhibitions = inhibitions;
        self
    }

    pub fn cognitive_board(&self) -> &Blackboard<Tag> {
        &self.cognitive
    }

    pub fn motivational_board(&self) -> &Blackboard<Tag> {
        &self.motivational
    }

    /// One perception–selection cycle.
    pub fn tick(
        &mut self,
        tick: u64,
        percepts: &[Percept],
        internal: &InternalState,
        selection: &SelectionState,
    ) -> AsmOutcome {
        // Every level is recomputed each cycle; drive persistence lives in
        // the selection state, not in stale elements.
        self.cognitive.expire(tick, |_| Some(1));
        self.motivational.expire(tick, |_| Some(1));
        self.motivational.clear_level(LevelId::Drive);

        let mut ctx = Ctx {
            percepts: percepts.to_vec(),
            internal: *internal,
            selection: selection.clone(),
            params: self.params.clone(),
            physiology: self.physiology.clone(),
            inhibitions: self.inhibitions.clone(),
            ..Default::default()
        };

        run_node(&mut self.cognitive, &self.perception, &ctx, tick);
        for e in self.cognitive.read_level(LevelId::PerceptualPersistents) {
            self.motivational
                .post(LevelId::MotExternalPerceptions, e.tag, e.certainty, tick);
        }
        for (kind, value) in proprioceive(internal) {
            self.motivational.post(
                LevelId::MotInternalPerceptions,
                Tag::Need(kind),
                value,
                tick,
            );
        }

        run_node(&mut self.motivational, &self.congruence, &ctx, tick);
        ctx.congruents = collect_congruents(
            &self.motivational,
            percepts,
            internal,
            &self.params,
            &self.physiology,
        );

        let blob_present = percept_of(percepts, PerceptKind::Blob).is_some();
        let calm_ticks = if selection.fleeing() && !blob_present {
            selection.calm_ticks + 1
        } else {
            0
        };
        ctx.fleeing_hold = selection.fleeing() && calm_ticks < self.params.calm_ticks;

        let report = run_node(&mut self.motivational, &self.preferences, &ctx, tick);
        let activations: Vec<(DriveKind, f64)> = report
            .lreacs
            .iter()
            .flat_map(|l| l.registers.iter())
            .filter_map(drive_activation)
            .collect();
        let drive = report.winners.iter().find_map(|w| {
            drive_activation(w).map(|(kind, intensity)| DriveSignal {
                kind,
                intensity,
                target: ctx
                    .congruents
                    .iter()
                    .find(|c| c.drive == kind)
                    .and_then(|c| c.percept.zip(c.target)),
            })
        });

        if let Some(d) = &drive {
            let certainty = self
                .motivational
                .get(LevelId::Drive, &Tag::Drive(d.kind))
                .map_or(0.0, |e| e.certainty);
            self.cognitive.post(
                LevelId::ConsummatoryPreferents,
                Tag::Drive(d.kind),
                certainty,
                tick,
            );
        }
        ctx.attention = drive
            .as_ref()
            .map(|d| attention_to_preferences(d, percepts));
        run_node(&mut self.cognitive, &self.attention, &ctx, tick);

        run_node(
            &mut self.cognitive,
            std::slice::from_ref(&self.potential),
            &ctx,
            tick,
        );
        run_node(
            &mut self.cognitive,
            std::slice::from_ref(&self.actuators),
            &ctx,
            tick,
        );
        let action = self
            .cognitive
            .read_level(LevelId::Actions)
            .first()
            .and_then(|e| match e.tag {
                Tag::Action(a) => Some(a),
                _ => None,
            })
            .unwrap_or(ExternalAction::Wander);

        let reflex = self
            .cognitive
            .get(
                LevelId::PotentialActions,
                &Tag::Action(ExternalAction::AvoidObstacle),
            )
            .map(|_| {
                (
                    ExternalAction::AvoidObstacle,
                    reflex_response_inhibition(ExternalAction::AvoidObstacle, &self.inhibitions),
                )
            });

        let next = next_selection(selection, drive.as_ref(), action, calm_ticks);
        AsmOutcome {
            action,
            drive,
            congruents: ctx.congruents,
            activations,
            attention: ctx.attention,
            reflex,
            selection: next,
        }
    }
}

fn drive_activation(reac: &Reac<Tag>) -> Option<(DriveKind, f64)> {
    match reac.action.tag {
        Tag::Drive(kind) => Some((kind, reac.activation)),
        _ => None,
    }
}

/// Rebuilds full congruent records for the elements the congruence stage
/// posted.
fn collect_congruents(
    board: &Blackboard<Tag>,
    percepts: &[Percept],
    internal: &InternalState,
    params: &IbenetParams,
    physiology: &PhysiologyParams,
) -> Vec<Congruent> {
    let needs = proprioceive(internal);
    board
        .read_level(LevelId::PropioExteroDriveCongruents)
        .iter()
        .filter_map(|e| match e.tag {
            Tag::Congruent(drive, _) => congruent_for(
                drive,
                &needs,
                percepts,
                params,
                physiology.satiation_threshold,
            ),
            _ => None,
        })
        .collect()
}

fn next_selection(
    previous: &SelectionState,
    drive: Option<&DriveSignal>,
    action: ExternalAction,
    calm_ticks: u32,
) -> SelectionState {
    let mut next = SelectionState {
        current_drive: drive.cloned(),
        current_action: action,
        interrupted_drive: previous.interrupted_drive,
        calm_ticks: 0,
    };
    match drive.map(|d| d.kind) {
        Some(DriveKind::Safety) => {
            if !previous.fleeing() {
                if let Some(k) = previous.incumbent() {
                    next.interrupted_drive = Some(k);
                }
            }
            next.calm_ticks = calm_ticks;
        }
        Some(kind) if previous.interrupted_drive == Some(kind) => next.interrupted_drive = None,
        _ => {}
    }
    next
}

/// Congruence stage on its own.
pub fn congruence(
    needs: &[(DriveKind, f64)],
    percepts: &[Percept],
    params: &IbenetParams,
    physiology: &PhysiologyParams,
) -> Vec<Congruent> {
    DriveKind::ALL
        .into_iter()
        .filter_map(|d| congruent_for(d, needs, percepts, params, physiology.satiation_threshold))
        .collect()
}

/// Consummatory preferences selector on its own: winner takes all over the
/// effective activations of `congruents`.
pub fn select_consummatory_preference(
    congruents: &[Congruent],
    selection: &SelectionState,
    internal: &InternalState,
    params: &IbenetParams,
    physiology: &PhysiologyParams,
) -> Option<DriveSignal> {
    let ctx = Ctx {
        internal: *internal,
        selection: selection.clone(),
        params: params.clone(),
        physiology: physiology.clone(),
        congruents: congruents.to_vec(),
        ..Default::default()
    };
    let mut board = Blackboard::new(NodeKind::Motivational);
    let report = run_node(&mut board, &preference_package(), &ctx, 0);
    report
        .winners
        .iter()
        .find_map(drive_activation)
        .map(|(kind, intensity)| DriveSignal {
            kind,
            intensity,
            target: congruents
                .iter()
                .find(|c| c.drive == kind)
                .and_then(|c| c.percept.zip(c.target)),
        })
}

/// External behaviours selector on its own.
pub fn external_behaviour_selector(
    attention: Option<&Attention>,
    percepts: &[Percept],
    selection: &SelectionState,
    internal: &InternalState,
    params: &IbenetParams,
    physiology: &PhysiologyParams,
) -> ExternalAction {
    let ctx = Ctx {
        percepts: percepts.to_vec(),
        internal: *internal,
        selection: selection.clone(),
        params: params.clone(),
        physiology: physiology.clone(),
        attention: attention.cloned(),
        ..Default::default()
    };
    let mut board = Blackboard::new(NodeKind::Cognitive);
    if let Some(a) = attention {
        board.post(
            LevelId::DrivePerceptionCongruents,
            Tag::Congruent(a.drive, a.percept),
            1.0,
            0,
        );
    }
    let packages = selector_packages();
    for package in &packages {
        run_node(&mut board, std::slice::from_ref(package), &ctx, 0);
    }
    board
        .read_level(LevelId::Actions)
        .first()
        .and_then(|e| match e.tag {
            Tag::Action(a) => Some(a),
            _ => None,
        })
        .unwrap_or(ExternalAction::Wander)
}

/// Whole network pass on fresh boards.
pub fn asm_tick(
    percepts: &[Percept],
    internal: &InternalState,
    selection: &SelectionState,
    params: &IbenetParams,
    physiology: &PhysiologyParams,
) -> AsmOutcome {
    IbeNet::new(params.clone(), physiology.clone()).tick(0, percepts, internal, selection)
}
