//! The bounded plane the animat lives in: stimuli, obstacles and the
//! geometry queries the other modules build on.
//!
//! Coordinates follow the `(z, x)` plane convention. Headings are measured
//! from the `+z` axis towards `+x`, so a heading `θ` points along
//! `(cos θ, sin θ)`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Stimuli at or below this magnitude are removed from the world.
pub const DEPLETION_FLOOR: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub z: f64,
    pub x: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { z: 0.0, x: 0.0 };

    pub const fn new(z: f64, x: f64) -> Self {
        Self { z, x }
    }

    /// Unit vector for a heading angle.
    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.z * other.z + self.x * other.x
    }

    pub fn length(self) -> f64 {
        self.z.hypot(self.x)
    }

    /// Angle of this vector measured like a heading.
    pub fn angle(self) -> f64 {
        self.x.atan2(self.z)
    }

    pub fn is_finite(self) -> bool {
        self.z.is_finite() && self.x.is_finite()
    }

    pub fn midpoint(self, other: Vec2) -> Vec2 {
        Vec2::new((self.z + other.z) * 0.5, (self.x + other.x) * 0.5)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.z + rhs.z, self.x + rhs.x)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.z - rhs.z, self.x - rhs.x)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.z * rhs, self.x * rhs)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([z, x]: [f64; 2]) -> Self {
        Vec2::new(z, x)
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.z, v.x]
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.x)
    }
}

/// Euclidean distance between two points.
pub fn distance(a: Vec2, b: Vec2) -> f64 {
    (a - b).length()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StimulusKind {
    Water,
    Food,
    Grass,
    Blob,
    RedSpot,
    YellowSpot,
}

impl StimulusKind {
    pub const ALL: [StimulusKind; 6] = [
        StimulusKind::Water,
        StimulusKind::Food,
        StimulusKind::Grass,
        StimulusKind::Blob,
        StimulusKind::RedSpot,
        StimulusKind::YellowSpot,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StimulusId(pub u32);

impl fmt::Display for StimulusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stimulus {
    pub id: StimulusId,
    pub kind: StimulusKind,
    pub position: Vec2,
    pub magnitude: f64,
    #[serde(default = "default_stimulus_radius")]
    pub body_radius: f64,
}

fn default_stimulus_radius() -> f64 {
    0.5
}

/// Axis-aligned rectangle. Used both for obstacles and for the world frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rect {
    pub min: Vec2,
    pub max: Vec2,
}

impl Rect {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self { min, max }
    }

    pub fn is_well_formed(&self) -> bool {
        self.min.is_finite()
            && self.max.is_finite()
            && self.min.z < self.max.z
            && self.min.x < self.max.x
    }

    /// Closed containment.
    pub fn contains(&self, p: Vec2) -> bool {
        p.z >= self.min.z && p.z <= self.max.z && p.x >= self.min.x && p.x <= self.max.x
    }

    /// Strict (open) containment.
    pub fn contains_strictly(&self, p: Vec2) -> bool {
        p.z > self.min.z && p.z < self.max.z && p.x > self.min.x && p.x < self.max.x
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.contains(other.min) && self.contains(other.max)
    }

    /// Grows the rectangle by `margin` on every side (negative shrinks).
    pub fn inflate(&self, margin: f64) -> Rect {
        Rect::new(
            Vec2::new(self.min.z - margin, self.min.x - margin),
            Vec2::new(self.max.z + margin, self.max.x + margin),
        )
    }

    pub fn closest_point(&self, p: Vec2) -> Vec2 {
        Vec2::new(
            p.z.clamp(self.min.z, self.max.z),
            p.x.clamp(self.min.x, self.max.x),
        )
    }

    pub fn width(&self) -> f64 {
        self.max.z - self.min.z
    }

    pub fn height(&self) -> f64 {
        self.max.x - self.min.x
    }

    /// Parameter range `(t_in, t_out)` over which the line `from + t·dir`
    /// lies strictly inside the rectangle, or `None` if it never does.
    pub(crate) fn open_slab_interval(&self, from: Vec2, dir: Vec2) -> Option<(f64, f64)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (p, d, min, max) in [
            (from.z, dir.z, self.min.z, self.max.z),
            (from.x, dir.x, self.min.x, self.max.x),
        ] {
            if d == 0.0 {
                if !(p > min && p < max) {
                    return None;
                }
            } else {
                let t1 = (min - p) / d;
                let t2 = (max - p) / d;
                lo = lo.max(t1.min(t2));
                hi = hi.min(t1.max(t2));
            }
        }
        (lo < hi).then_some((lo, hi))
    }
}

pub type Obstacle = Rect;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct World {
    pub bounds: Rect,
    #[serde(default)]
    pub stimuli: Vec<Stimulus>,
    #[serde(default)]
    pub obstacles: Vec<Obstacle>,
}

/// Outcome of [`World::deplete_stimulus`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Depletion {
    Reduced { remaining: f64 },
    Removed,
    UnknownId,
}

impl World {
    pub fn new(bounds: Rect) -> Self {
        Self {
            bounds,
            stimuli: Vec::new(),
            obstacles: Vec::new(),
        }
    }

    pub fn with_stimulus(mut self, stimulus: Stimulus) -> Self {
        self.stimuli.push(stimulus);
        self
    }

    pub fn with_obstacle(mut self, obstacle: Obstacle) -> Self {
        self.obstacles.push(obstacle);
        self
    }

    pub fn stimulus(&self, id: StimulusId) -> Option<&Stimulus> {
        self.stimuli.iter().find(|s| s.id == id)
    }

    pub fn stimulus_mut(&mut self, id: StimulusId) -> Option<&mut Stimulus> {
        self.stimuli.iter_mut().find(|s| s.id == id)
    }

    /// True iff the open segment `(from, to)` passes through the interior
    /// of any obstacle. The world frame is not considered here.
    pub fn segment_blocked(&self, from: Vec2, to: Vec2) -> bool {
        let dir = to - from;
        self.obstacles.iter().any(|rect| {
            rect.open_slab_interval(from, dir)
                .is_some_and(|(lo, hi)| lo.max(0.0) < hi.min(1.0))
        })
    }

    pub fn deplete_stimulus(&mut self, id: StimulusId, amount: f64) -> Depletion {
        let Some(idx) = self.stimuli.iter().position(|s| s.id == id) else {
            return Depletion::UnknownId;
        };
        let stimulus = &mut self.stimuli[idx];
        stimulus.magnitude -= amount.max(0.0);
        if stimulus.magnitude <= DEPLETION_FLOOR {
            self.stimuli.remove(idx);
            Depletion::Removed
        } else {
            Depletion::Reduced {
                remaining: stimulus.magnitude,
            }
        }
    }

    /// Nearest stimulus of `kind`, ties resolved by lowest id.
    pub fn nearest_of_kind(&self, kind: StimulusKind, from: Vec2) -> Option<(&Stimulus, f64)> {
        self.stimuli
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| (s, distance(s.position, from)))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.id.cmp(&b.0.id)))
    }

    /// Lists every violated world invariant.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.bounds.is_well_formed() {
            out.push("world.bounds: min must be strictly below max on both axes".to_string());
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, s) in self.stimuli.iter().enumerate() {
            if !seen.insert(s.id) {
                out.push(format!("world.stimuli[{i}].id: duplicate id {}", s.id.0));
            }
            if !(s.magnitude > 0.0 && s.magnitude.is_finite()) {
                out.push(format!(
                    "world.stimuli[{i}].magnitude: must be > 0, got {}",
                    s.magnitude
                ));
            }
            if !(s.body_radius >= 0.0 && s.body_radius.is_finite()) {
                out.push(format!(
                    "world.stimuli[{i}].body_radius: must be >= 0, got {}",
                    s.body_radius
                ));
            }
            if !s.position.is_finite() || !self.bounds.contains(s.position) {
                out.push(format!(
                    "world.stimuli[{i}].position: {} lies outside the world bounds",
                    s.position
                ));
            }
        }
        for (i, o) in self.obstacles.iter().enumerate() {
            if !o.is_well_formed() {
                out.push(format!(
                    "world.obstacles[{i}]: min must be strictly below max on both axes"
                ));
            } else if !self.bounds.contains_rect(o) {
                out.push(format!(
                    "world.obstacles[{i}]: lies outside the world bounds"
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn water(id: u32, z: f64, x: f64, magnitude: f64) -> Stimulus {
        Stimulus {
            id: StimulusId(id),
            kind: StimulusKind::Water,
            position: Vec2::new(z, x),
            magnitude,
            body_radius: 0.5,
        }
    }

    fn arena() -> World {
        World::new(Rect::new(Vec2::ZERO, Vec2::new(20.0, 20.0)))
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(Vec2::ZERO, Vec2::ZERO), 0.0);
        assert_eq!(distance(Vec2::ZERO, Vec2::new(3.0, 4.0)), 5.0);
    }

    #[test]
    fn empty_world_never_blocks() {
        let w = arena();
        assert!(!w.segment_blocked(Vec2::new(1.0, 1.0), Vec2::new(19.0, 19.0)));
    }

    #[test]
    fn segment_through_rect_is_blocked() {
        let w = arena().with_obstacle(Rect::new(Vec2::new(9.0, 4.0), Vec2::new(11.0, 16.0)));
        assert!(w.segment_blocked(Vec2::new(2.0, 10.0), Vec2::new(18.0, 10.0)));
        assert!(!w.segment_blocked(Vec2::new(2.0, 10.0), Vec2::new(8.0, 10.0)));
        // grazing along an edge does not enter the interior
        assert!(!w.segment_blocked(Vec2::new(9.0, 1.0), Vec2::new(9.0, 19.0)));
    }

    #[test]
    fn depletion_examples() {
        let mut w = arena().with_stimulus(water(1, 5.0, 5.0, 1.0));
        assert_eq!(
            w.deplete_stimulus(StimulusId(1), 0.0),
            Depletion::Reduced { remaining: 1.0 }
        );
        match w.deplete_stimulus(StimulusId(1), 0.3) {
            Depletion::Reduced { remaining } => assert!((remaining - 0.7).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        let mut w = arena().with_stimulus(water(2, 5.0, 5.0, 0.05));
        assert_eq!(w.deplete_stimulus(StimulusId(2), 0.1), Depletion::Removed);
        assert!(w.stimuli.is_empty());
        assert_eq!(w.deplete_stimulus(StimulusId(9), 0.1), Depletion::UnknownId);
    }

    #[test]
    fn nearest_of_kind_examples() {
        let w = arena();
        assert!(w.nearest_of_kind(StimulusKind::Water, Vec2::ZERO).is_none());

        let w = arena().with_stimulus(water(1, 2.0, 0.0, 1.0));
        let (s, d) = w.nearest_of_kind(StimulusKind::Water, Vec2::ZERO).unwrap();
        assert_eq!((s.id, d), (StimulusId(1), 2.0));

        let food = |id, z| Stimulus {
            kind: StimulusKind::Food,
            ..water(id, z, 0.0, 1.0)
        };
        let w = arena()
            .with_stimulus(food(1, 5.0))
            .with_stimulus(food(2, 3.0));
        let (s, d) = w.nearest_of_kind(StimulusKind::Food, Vec2::ZERO).unwrap();
        assert_eq!((s.id, d), (StimulusId(2), 3.0));
        assert!(w.nearest_of_kind(StimulusKind::Water, Vec2::ZERO).is_none());
    }

    #[test]
    fn violations_are_listed() {
        let mut w = arena()
            .with_stimulus(water(1, 25.0, 5.0, -1.0))
            .with_stimulus(water(1, 5.0, 5.0, 1.0));
        w.obstacles
            .push(Rect::new(Vec2::new(3.0, 3.0), Vec2::new(2.0, 4.0)));
        let v = w.violations();
        assert_eq!(v.len(), 4, "{v:?}");
    }
}
