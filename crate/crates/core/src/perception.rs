//! Perceptual system.
//!
//! Each tick the animat samples the stimuli inside its forward semicircle
//! of radius `r_p0 · lucidity`, drops everything hidden behind an obstacle,
//! and condenses what is left into one bounded *pondered value* per kind.
//! Kinds that drop out of view keep reverberating in [`PerceptMemory`]
//! with geometric decay until they fall below the forgetting threshold.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::world::{distance, Rect, Stimulus, StimulusId, StimulusKind, Vec2, World};

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_signed(theta: f64) -> f64 {
    let t = normalize_angle(theta);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pose {
    pub position: Vec2,
    #[serde(default)]
    pub theta: f64,
}

impl Pose {
    pub fn new(position: Vec2, theta: f64) -> Self {
        Self {
            position,
            theta: normalize_angle(theta),
        }
    }

    pub fn heading(&self) -> Vec2 {
        Vec2::from_angle(self.theta)
    }

    /// Bearing of `point` relative to the current heading, in `(-π, π]`.
    /// Positive bearings lie counter-clockwise (towards `+x` when facing `+z`).
    pub fn bearing_to(&self, point: Vec2) -> f64 {
        wrap_signed((point - self.position).angle() - self.theta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PerceptionParams {
    /// Perception radius at full lucidity.
    pub base_radius: f64,
    /// Distances are clamped below by this before taking magnitude/distance.
    pub d_min: f64,
    /// Per-tick decay factor of reverberating percepts.
    pub memory_decay: f64,
    /// Reverberating percepts below this value are forgotten.
    pub forget_eps: f64,
    /// Food and water closer than this form a compound source.
    pub pairing_distance: f64,
    /// Extra slack added to the two body radii in the at-range test.
    pub at_range_margin: f64,
    /// Obstacles closer than this to the body surface, ahead of the
    /// animat, raise an at-range obstacle percept.
    pub obstacle_lookahead: f64,
}

impl Default for PerceptionParams {
    fn default() -> Self {
        Self {
            base_radius: 10.0,
            d_min: 0.5,
            memory_decay: 0.9,
            forget_eps: 0.01,
            pairing_distance: 2.0,
            at_range_margin: 0.25,
            obstacle_lookahead: 0.5,
        }
    }
}

impl PerceptionParams {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |ok: bool, field: &str, rule: &str, v: f64| {
            if !ok {
                out.push(format!("perception.{field}: must be {rule}, got {v}"));
            }
        };
        check(
            self.base_radius > 0.0 && self.base_radius.is_finite(),
            "base_radius",
            "> 0",
            self.base_radius,
        );
        check(
            self.d_min > 0.0 && self.d_min.is_finite(),
            "d_min",
            "> 0",
            self.d_min,
        );
        check(
            self.memory_decay > 0.0 && self.memory_decay < 1.0,
            "memory_decay",
            "in (0, 1)",
            self.memory_decay,
        );
        check(
            self.forget_eps > 0.0 && self.forget_eps < 1.0,
            "forget_eps",
            "in (0, 1)",
            self.forget_eps,
        );
        check(
            self.pairing_distance >= 0.0 && self.pairing_distance.is_finite(),
            "pairing_distance",
            ">= 0",
            self.pairing_distance,
        );
        check(
            self.at_range_margin >= 0.0 && self.at_range_margin.is_finite(),
            "at_range_margin",
            ">= 0",
            self.at_range_margin,
        );
        check(
            self.obstacle_lookahead >= 0.0 && self.obstacle_lookahead.is_finite(),
            "obstacle_lookahead",
            ">= 0",
            self.obstacle_lookahead,
        );
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerceptKind {
    Water,
    Food,
    Grass,
    Blob,
    RedSpot,
    YellowSpot,
    FoodAndWater,
    Obstacle,
}

impl PerceptKind {
    pub const ALL: [PerceptKind; 8] = [
        PerceptKind::Water,
        PerceptKind::Food,
        PerceptKind::Grass,
        PerceptKind::Blob,
        PerceptKind::RedSpot,
        PerceptKind::YellowSpot,
        PerceptKind::FoodAndWater,
        PerceptKind::Obstacle,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PerceptKind::Water => "water",
            PerceptKind::Food => "food",
            PerceptKind::Grass => "grass",
            PerceptKind::Blob => "blob",
            PerceptKind::RedSpot => "red_spot",
            PerceptKind::YellowSpot => "yellow_spot",
            PerceptKind::FoodAndWater => "food_and_water",
            PerceptKind::Obstacle => "obstacle",
        }
    }
}

impl From<StimulusKind> for PerceptKind {
    fn from(kind: StimulusKind) -> Self {
        match kind {
            StimulusKind::Water => PerceptKind::Water,
            StimulusKind::Food => PerceptKind::Food,
            StimulusKind::Grass => PerceptKind::Grass,
            StimulusKind::Blob => PerceptKind::Blob,
            StimulusKind::RedSpot => PerceptKind::RedSpot,
            StimulusKind::YellowSpot => PerceptKind::YellowSpot,
        }
    }
}

/// What a percept points at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Stimulus(StimulusId),
    Pair { food: StimulusId, water: StimulusId },
}

impl Target {
    /// The stimulus a consummatory action of `kind` draws from.
    pub fn member(self, kind: StimulusKind) -> Option<StimulusId> {
        match (self, kind) {
            (Target::Stimulus(id), _) => Some(id),
            (Target::Pair { food, .. }, StimulusKind::Food) => Some(food),
            (Target::Pair { water, .. }, StimulusKind::Water) => Some(water),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Percept {
    pub kind: PerceptKind,
    /// Pondered value in `[0, 1]`.
    pub value: f64,
    pub nearest_distance: f64,
    /// Bearing to the nearest source relative to the heading.
    pub bearing: f64,
    /// Magnitude of the nearest source (used for risk assessment).
    pub nearest_magnitude: f64,
    pub at_range: bool,
    pub target: Option<Target>,
    pub remembered: bool,
}

/// Reverberation record kept for a kind after it drops out of view.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryEntry {
    pub value: f64,
    /// World-frame position of the source when last seen; bearing and
    /// distance are recomputed against the current pose.
    pub last_position: Vec2,
    pub last_distance: f64,
    pub last_bearing: f64,
    pub magnitude: f64,
    pub target: Option<Target>,
    pub ticks_since_seen: u32,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PerceptMemory {
    entries: BTreeMap<PerceptKind, MemoryEntry>,
}

impl PerceptMemory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, kind: PerceptKind) -> Option<&MemoryEntry> {
        self.entries.get(&kind)
    }

    pub fn insert(&mut self, kind: PerceptKind, entry: MemoryEntry) {
        self.entries.insert(kind, entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PerceptKind, &MemoryEntry)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }
}

pub fn effective_radius(params: &PerceptionParams, lucidity: f64) -> f64 {
    params.base_radius * lucidity.clamp(0.0, 1.0)
}

/// Forward semicircle test: inside the open disc of radius `r_p` and
/// strictly in front of the line through the animat perpendicular to its
/// heading.
pub fn in_perceptual_region(pose: &Pose, r_p: f64, point: Vec2) -> bool {
    let offset = point - pose.position;
    offset.length() < r_p && offset.dot(pose.heading()) > 0.0
}

/// Squashes `Σ mᵢ / max(dᵢ, d_min)` into `[0, 1)` with `s / (1 + s)`.
pub fn ponder(sources: &[(f64, f64)], d_min: f64) -> f64 {
    let s: f64 = sources.iter().map(|&(m, d)| m / d.max(d_min)).sum();
    s / (1.0 + s)
}

pub fn decay_memory(memory: &PerceptMemory, params: &PerceptionParams) -> PerceptMemory {
    let entries = memory
        .entries
        .iter()
        .filter_map(|(kind, entry)| {
            let value = entry.value * params.memory_decay;
            (value >= params.forget_eps).then(|| {
                (
                    *kind,
                    MemoryEntry {
                        value,
                        ticks_since_seen: entry.ticks_since_seen + 1,
                        ..entry.clone()
                    },
                )
            })
        })
        .collect();
    PerceptMemory { entries }
}

struct Seen<'a> {
    stimulus: &'a Stimulus,
    distance: f64,
}

fn at_range(
    distance: f64,
    stimulus: &Stimulus,
    animat_radius: f64,
    params: &PerceptionParams,
) -> bool {
    distance < animat_radius + stimulus.body_radius + params.at_range_margin
}

/// Runs one perception cycle and returns the percepts, ordered by kind,
/// together with the updated reverberation memory.
pub fn sense(
    world: &World,
    pose: &Pose,
    lucidity: f64,
    animat_radius: f64,
    memory: &PerceptMemory,
    params: &PerceptionParams,
) -> (Vec<Percept>, PerceptMemory) {
    let r_p = effective_radius(params, lucidity);
    let visible: Vec<Seen<'_>> = world
        .stimuli
        .iter()
        .filter(|s| in_perceptual_region(pose, r_p, s.position))
        .filter(|s| {
            s.position == pose.position || !world.segment_blocked(pose.position, s.position)
        })
        .map(|s| Seen {
            stimulus: s,
            distance: distance(pose.position, s.position),
        })
        .collect();

    let mut live: BTreeMap<PerceptKind, (Percept, Vec2)> = BTreeMap::new();

    for kind in StimulusKind::ALL {
        let of_kind: Vec<&Seen<'_>> = visible.iter().filter(|s| s.stimulus.kind == kind).collect();
        let Some(nearest) = of_kind.iter().min_by(|a, b| {
            a.distance
                .total_cmp(&b.distance)
                .then(a.stimulus.id.cmp(&b.stimulus.id))
        }) else {
            continue;
        };
        let sources: Vec<(f64, f64)> = of_kind
            .iter()
            .map(|s| (s.stimulus.magnitude, s.distance))
            .collect();
        let percept = Percept {
            kind: kind.into(),
            value: ponder(&sources, params.d_min),
            nearest_distance: nearest.distance,
            bearing: pose.bearing_to(nearest.stimulus.position),
            nearest_magnitude: nearest.stimulus.magnitude,
            at_range: at_range(nearest.distance, nearest.stimulus, animat_radius, params),
            target: Some(Target::Stimulus(nearest.stimulus.id)),
            remembered: false,
        };
        live.insert(kind.into(), (percept, nearest.stimulus.position));
    }

    if let Some((percept, at)) = compound_percept(&visible, pose, animat_radius, params) {
        live.insert(PerceptKind::FoodAndWater, (percept, at));
    }

    let mut next_memory = PerceptMemory::new();
    let mut percepts = Vec::new();
    for kind in PerceptKind::ALL {
        if kind == PerceptKind::Obstacle {
            if let Some(p) = obstacle_percept(world, pose, animat_radius, params) {
                percepts.push(p);
            }
            continue;
        }
        if let Some((percept, at)) = live.remove(&kind) {
            next_memory.insert(
                kind,
                MemoryEntry {
                    value: percept.value,
                    last_position: at,
                    last_distance: percept.nearest_distance,
                    last_bearing: percept.bearing,
                    magnitude: percept.nearest_magnitude,
                    target: percept.target,
                    ticks_since_seen: 0,
                },
            );
            percepts.push(percept);
        } else if let Some(entry) = memory.get(kind) {
            let value = entry.value * params.memory_decay;
            if value < params.forget_eps {
                continue;
            }
            let nearest_distance = distance(pose.position, entry.last_position);
            let bearing = pose.bearing_to(entry.last_position);
            next_memory.insert(
                kind,
                MemoryEntry {
                    value,
                    last_distance: nearest_distance,
                    last_bearing: bearing,
                    ticks_since_seen: entry.ticks_since_seen + 1,
                    ..entry.clone()
                },
            );
            percepts.push(Percept {
                kind,
                value,
                nearest_distance,
                bearing,
                nearest_magnitude: entry.magnitude,
                at_range: false,
                target: entry.target,
                remembered: true,
            });
        }
    }
    (percepts, next_memory)
}

/// Best visible food/water pair closer than `pairing_distance`. The pair's
/// value ponders both members together; bearing and distance refer to the
/// pair's midpoint and the pair is at range only when both members are.
fn compound_percept(
    visible: &[Seen<'_>],
    pose: &Pose,
    animat_radius: f64,
    params: &PerceptionParams,
) -> Option<(Percept, Vec2)> {
    let foods = visible
        .iter()
        .filter(|s| s.stimulus.kind == StimulusKind::Food);
    let mut best: Option<(f64, &Seen<'_>, &Seen<'_>)> = None;
    for food in foods {
        for water in visible
            .iter()
            .filter(|s| s.stimulus.kind == StimulusKind::Water)
        {
            if distance(food.stimulus.position, water.stimulus.position) >= params.pairing_distance
            {
                continue;
            }
            let value = ponder(
                &[
                    (food.stimulus.magnitude, food.distance),
                    (water.stimulus.magnitude, water.distance),
                ],
                params.d_min,
            );
            if best.as_ref().is_none_or(|(v, _, _)| value > *v) {
                best = Some((value, food, water));
            }
        }
    }
    let (value, food, water) = best?;
    let mid = food.stimulus.position.midpoint(water.stimulus.position);
    let both_at_range = at_range(food.distance, food.stimulus, animat_radius, params)
        && at_range(water.distance, water.stimulus, animat_radius, params);
    Some((
        Percept {
            kind: PerceptKind::FoodAndWater,
            value,
            nearest_distance: distance(pose.position, mid),
            bearing: pose.bearing_to(mid),
            nearest_magnitude: food.stimulus.magnitude.min(water.stimulus.magnitude),
            at_range: both_at_range,
            target: Some(Target::Pair {
                food: food.stimulus.id,
                water: water.stimulus.id,
            }),
            remembered: false,
        },
        mid,
    ))
}

/// Nearest point on any obstacle or on the world frame, if it lies ahead of
/// the animat and within `body radius + lookahead`.
fn obstacle_percept(
    world: &World,
    pose: &Pose,
    animat_radius: f64,
    params: &PerceptionParams,
) -> Option<Percept> {
    let reach = animat_radius + params.obstacle_lookahead;
    let p = pose.position;
    let b = world.bounds;
    let frame = [
        Vec2::new(b.min.z, p.x),
        Vec2::new(b.max.z, p.x),
        Vec2::new(p.z, b.min.x),
        Vec2::new(p.z, b.max.x),
    ];
    let heading = pose.heading();
    frame
        .into_iter()
        .chain(world.obstacles.iter().map(|o: &Rect| o.closest_point(p)))
        .map(|q| (q, distance(p, q)))
        .filter(|(q, d)| *d < reach && (*q - p).dot(heading) > 0.0)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(q, d)| Percept {
            kind: PerceptKind::Obstacle,
            value: 1.0,
            nearest_distance: d,
            bearing: pose.bearing_to(q),
            nearest_magnitude: 1.0,
            at_range: true,
            target: None,
            remembered: false,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::Rect;

    fn pose(z: f64, x: f64, theta: f64) -> Pose {
        Pose::new(Vec2::new(z, x), theta)
    }

    fn stim(id: u32, kind: StimulusKind, z: f64, x: f64, magnitude: f64) -> Stimulus {
        Stimulus {
            id: StimulusId(id),
            kind,
            position: Vec2::new(z, x),
            magnitude,
            body_radius: 0.5,
        }
    }

    fn arena() -> World {
        World::new(Rect::new(Vec2::ZERO, Vec2::new(40.0, 40.0)))
    }

    #[test]
    fn radius_scales_with_lucidity() {
        let p = PerceptionParams {
            base_radius: 10.0,
            ..Default::default()
        };
        assert_eq!(effective_radius(&p, 1.0), 10.0);
        assert_eq!(effective_radius(&p, 0.0), 0.0);
        assert_eq!(effective_radius(&p, 0.5), 5.0);
    }

    #[test]
    fn semicircle_examples() {
        let a = pose(0.0, 0.0, 0.0);
        assert!(in_perceptual_region(&a, 5.0, Vec2::new(1.0, 0.0)));
        assert!(!in_perceptual_region(&a, 5.0, Vec2::new(-1.0, 0.0)));
        assert!(!in_perceptual_region(&a, 5.0, Vec2::new(0.0, 10.0)));
        // facing +x
        let b = pose(0.0, 0.0, std::f64::consts::FRAC_PI_2);
        assert!(in_perceptual_region(&b, 5.0, Vec2::new(0.5, 2.0)));
        assert!(!in_perceptual_region(&b, 5.0, Vec2::new(2.0, -0.5)));
    }

    #[test]
    fn ponder_examples() {
        assert_eq!(ponder(&[], 0.5), 0.0);
        assert!((ponder(&[(1.0, 0.5)], 0.5) - 2.0 / 3.0).abs() < 1e-15);
        let one = ponder(&[(1.0, 3.0)], 0.5);
        let two = ponder(&[(1.0, 3.0), (0.2, 7.0)], 0.5);
        assert!(two > one);
    }

    #[test]
    fn angles_normalize() {
        assert_eq!(normalize_angle(-1e-300), 0.0);
        assert!((normalize_angle(-PI / 2.0) - 1.5 * PI).abs() < 1e-12);
        assert!((wrap_signed(1.5 * PI) + PI / 2.0).abs() < 1e-12);
        assert_eq!(wrap_signed(PI), PI);
    }

    #[test]
    fn nothing_perceived_in_empty_world() {
        let (percepts, memory) = sense(
            &arena(),
            &pose(20.0, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        assert!(percepts.is_empty());
        assert!(memory.is_empty());
    }

    #[test]
    fn visible_water_is_a_live_percept() {
        let w = arena().with_stimulus(stim(1, StimulusKind::Water, 25.0, 20.0, 1.0));
        let (percepts, _) = sense(
            &w,
            &pose(20.0, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        assert_eq!(percepts.len(), 1);
        let p = &percepts[0];
        assert_eq!(p.kind, PerceptKind::Water);
        assert!(!p.remembered && !p.at_range);
        assert!((p.value - (0.2 / 1.2)).abs() < 1e-12);
        assert!(p.bearing.abs() < 1e-12);
        assert_eq!(p.target, Some(Target::Stimulus(StimulusId(1))));
    }

    #[test]
    fn occluded_stimulus_is_not_perceived() {
        let w = arena()
            .with_stimulus(stim(1, StimulusKind::Water, 28.0, 20.0, 1.0))
            .with_obstacle(Rect::new(Vec2::new(23.0, 15.0), Vec2::new(24.0, 25.0)));
        let (percepts, _) = sense(
            &w,
            &pose(20.0, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        assert!(percepts.is_empty());
    }

    #[test]
    fn at_range_uses_both_radii() {
        let w = arena().with_stimulus(stim(1, StimulusKind::Food, 21.2, 20.0, 1.0));
        let (percepts, _) = sense(
            &w,
            &pose(20.0, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        assert!(percepts[0].at_range);
        let w = arena().with_stimulus(stim(1, StimulusKind::Food, 21.3, 20.0, 1.0));
        let (percepts, _) = sense(
            &w,
            &pose(20.0, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        assert!(!percepts[0].at_range);
    }

    #[test]
    fn lost_water_reverberates_then_is_forgotten() {
        let params = PerceptionParams::default();
        let w = arena().with_stimulus(stim(1, StimulusKind::Water, 22.0, 20.0, 1.0));
        let (first, mut memory) = sense(
            &w,
            &pose(20.0, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &params,
        );
        let v0 = first[0].value;
        // turn around: the water is now behind
        let behind = pose(20.0, 20.0, PI);
        // oracle: first k with v0·λᵏ < ε
        let vanish = ((params.forget_eps / v0).ln() / params.memory_decay.ln()).ceil() as u32;
        let mut expected = v0;
        for k in 1..=vanish + 2 {
            let (percepts, next) = sense(&w, &behind, 1.0, 0.5, &memory, &params);
            memory = next;
            expected *= params.memory_decay;
            if k < vanish {
                assert_eq!(percepts.len(), 1, "tick {k}");
                assert!(percepts[0].remembered && !percepts[0].at_range);
                assert!((percepts[0].value - expected).abs() < 1e-12);
                // bearing is recomputed against the new pose
                assert!((percepts[0].bearing.abs() - PI).abs() < 1e-9);
            } else {
                assert!(percepts.is_empty(), "tick {k} should have forgotten");
            }
        }
    }

    #[test]
    fn decay_memory_examples() {
        let params = PerceptionParams::default();
        assert!(decay_memory(&PerceptMemory::new(), &params).is_empty());
        let entry = |value| MemoryEntry {
            value,
            last_position: Vec2::ZERO,
            last_distance: 1.0,
            last_bearing: 0.0,
            magnitude: 1.0,
            target: None,
            ticks_since_seen: 0,
        };
        let mut m = PerceptMemory::new();
        m.insert(PerceptKind::Water, entry(0.8));
        m.insert(PerceptKind::Food, entry(0.010));
        let d = decay_memory(&m, &params);
        assert_eq!(d.len(), 1);
        assert!((d.get(PerceptKind::Water).unwrap().value - 0.72).abs() < 1e-12);
    }

    #[test]
    fn adjacent_food_and_water_form_a_compound() {
        let w = arena()
            .with_stimulus(stim(1, StimulusKind::Food, 25.0, 19.5, 1.0))
            .with_stimulus(stim(2, StimulusKind::Water, 25.0, 20.5, 1.0))
            .with_stimulus(stim(3, StimulusKind::Water, 25.0, 30.0, 1.0));
        let (percepts, _) = sense(
            &w,
            &pose(20.0, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        let compound = percepts
            .iter()
            .find(|p| p.kind == PerceptKind::FoodAndWater)
            .unwrap();
        assert_eq!(
            compound.target,
            Some(Target::Pair {
                food: StimulusId(1),
                water: StimulusId(2)
            })
        );
        assert!(compound.bearing.abs() < 1e-12);
        assert!((compound.nearest_distance - 5.0).abs() < 1e-12);
        // two unit sources at d: s = 2/d, value = 2 / (d + 2)
        assert!((compound.value - 2.0 / (25.25f64.sqrt() + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn wall_ahead_is_an_obstacle_percept() {
        let (percepts, _) = sense(
            &arena(),
            &pose(39.2, 20.0, 0.0),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        assert_eq!(percepts.len(), 1);
        assert_eq!(percepts[0].kind, PerceptKind::Obstacle);
        assert!(percepts[0].at_range);
        // same spot facing away from the wall
        let (percepts, _) = sense(
            &arena(),
            &pose(39.2, 20.0, PI),
            1.0,
            0.5,
            &PerceptMemory::new(),
            &Default::default(),
        );
        assert!(percepts.is_empty());
    }
}
