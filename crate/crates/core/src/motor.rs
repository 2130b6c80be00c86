//! Motor system: action → angular steps → kinematics with collision
//! clamping.
//!
//! The two angular steps α and β are reduced to differential-drive form:
//! the heading turns by `α − β` and the body advances by the mean step
//! scaled by `gain · strength`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ibenet::ExternalAction;
use crate::perception::{wrap_signed, Pose};
use crate::world::{Vec2, World};

// Numerical back-off kept from any surface the animat is stopped against.
const CONTACT_GAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotorStep {
    pub alpha: f64,
    pub beta: f64,
}

impl MotorStep {
    pub const STILL: MotorStep = MotorStep {
        alpha: 0.0,
        beta: 0.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Self {
        Self {
            alpha: alpha.clamp(0.0, 1.0),
            beta: beta.clamp(0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MotorParams {
    pub body_radius: f64,
    /// Meters per radian of mean step.
    pub gain: f64,
    /// α = β used by Explore.
    pub explore_step: f64,
    /// Proportional steering gain for approach and runaway.
    pub steering_gain: f64,
    /// Turn taken away from an obstacle each tick while avoiding it.
    pub avoid_turn: f64,
}

impl Default for MotorParams {
    fn default() -> Self {
        Self {
            body_radius: 0.5,
            gain: 1.0,
            explore_step: 0.5,
            steering_gain: 1.0,
            avoid_turn: 0.5,
        }
    }
}

impl MotorParams {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in [
            ("body_radius", self.body_radius),
            ("gain", self.gain),
            ("explore_step", self.explore_step),
            ("steering_gain", self.steering_gain),
            ("avoid_turn", self.avoid_turn),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                out.push(format!("motor.{name}: must be > 0, got {v}"));
            }
        }
        for (name, v) in [
            ("explore_step", self.explore_step),
            ("avoid_turn", self.avoid_turn),
        ] {
            if v > 1.0 {
                out.push(format!("motor.{name}: must be <= 1, got {v}"));
            }
        }
        out
    }
}

fn steer(bearing: f64, params: &MotorParams) -> MotorStep {
    let turn = (params.steering_gain * bearing).clamp(-1.0, 1.0);
    MotorStep::new(0.5 + turn / 2.0, 0.5 - turn / 2.0)
}

/// Angular steps for `action`. `bearing` is the bearing of the attended
/// target (or of the obstacle, for AvoidObstacle); without one, steering
/// actions go straight.
pub fn step_for_action<R: Rng + ?Sized>(
    action: ExternalAction,
    bearing: Option<f64>,
    rng: &mut R,
    params: &MotorParams,
) -> MotorStep {
    use ExternalAction as A;
    match action {
        A::Wander => {
            let alpha = rng.random::<f64>();
            let beta = rng.random::<f64>();
            MotorStep::new(alpha, beta)
        }
        A::Explore => MotorStep::new(params.explore_step, params.explore_step),
        A::Eat | A::Drink | A::Rest => MotorStep::STILL,
        A::ApproachFood | A::ApproachWater | A::ApproachFoodAndWater | A::ApproachGrass => {
            steer(bearing.unwrap_or(0.0), params)
        }
        A::Runaway => match bearing {
            Some(b) => steer(wrap_signed(b + std::f64::consts::PI), params),
            None => steer(0.0, params),
        },
        A::AvoidObstacle => {
            let turn = params.avoid_turn;
            if bearing.unwrap_or(0.0) >= 0.0 {
                MotorStep::new(0.0, turn)
            } else {
                MotorStep::new(turn, 0.0)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub pose: Pose,
    pub moved: f64,
    pub collision: bool,
}

/// Applies `step` and clamps the motion against obstacles and the frame,
/// both taken with the body radius accounted for.
pub fn apply_step(
    pose: &Pose,
    step: MotorStep,
    strength: f64,
    params: &MotorParams,
    world: &World,
) -> StepOutcome {
    let theta = pose.theta + (step.alpha - step.beta);
    let turned = Pose::new(pose.position, theta);
    let forward = (step.alpha + step.beta) / 2.0 * params.gain * strength.clamp(0.0, 1.0);
    if forward <= 0.0 {
        return StepOutcome {
            pose: turned,
            moved: 0.0,
            collision: false,
        };
    }
    let delta = turned.heading() * forward;
    let from = pose.position;

    // fraction of the segment that can be travelled freely
    let mut t = 1.0_f64;
    for obstacle in &world.obstacles {
        let grown = obstacle.inflate(params.body_radius);
        if let Some((lo, hi)) = grown.open_slab_interval(from, delta) {
            if lo < 0.0 && hi > 0.0 {
                t = 0.0;
            } else if (0.0..t).contains(&lo) {
                t = lo;
            }
        }
    }
    let frame = world.bounds.inflate(-params.body_radius);
    for (p, d, min, max) in [
        (from.z, delta.z, frame.min.z, frame.max.z),
        (from.x, delta.x, frame.min.x, frame.max.x),
    ] {
        let limit = if d > 0.0 {
            (max - p) / d
        } else if d < 0.0 {
            (min - p) / d
        } else {
            continue;
        };
        t = t.min(limit.max(0.0));
    }

    let collision = t < 1.0;
    if collision {
        t = (t - CONTACT_GAP / forward).max(0.0);
    }
    let position = from + delta * t;
    let position = if position_clear(position, params, world) {
        position
    } else {
        from
    };
    let moved = (position - from).length();
    StepOutcome {
        pose: Pose::new(position, theta),
        moved,
        collision,
    }
}

/// Whether a body centred at `p` overlaps neither an obstacle nor the frame.
pub fn position_clear(p: Vec2, params: &MotorParams, world: &World) -> bool {
    world.bounds.inflate(-params.body_radius).contains(p)
        && world
            .obstacles
            .iter()
            .all(|o| !o.inflate(params.body_radius).contains_strictly(p))
}
