//! Internal medium: the six normalized state variables and their dynamics.

use serde::{Deserialize, Serialize};

use crate::ibenet::{DriveKind, ExternalAction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InternalState {
    pub strength: f64,
    pub lucidity: f64,
    pub security: f64,
    pub fatigue: f64,
    pub thirst: f64,
    pub hunger: f64,
}

impl Default for InternalState {
    fn default() -> Self {
        Self {
            strength: 1.0,
            lucidity: 1.0,
            security: 0.5,
            fatigue: 0.0,
            thirst: 0.0,
            hunger: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InternalField {
    Strength,
    Lucidity,
    Security,
    Fatigue,
    Thirst,
    Hunger,
}

impl InternalField {
    pub const ALL: [InternalField; 6] = [
        InternalField::Strength,
        InternalField::Lucidity,
        InternalField::Security,
        InternalField::Fatigue,
        InternalField::Thirst,
        InternalField::Hunger,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InternalField::Strength => "strength",
            InternalField::Lucidity => "lucidity",
            InternalField::Security => "security",
            InternalField::Fatigue => "fatigue",
            InternalField::Thirst => "thirst",
            InternalField::Hunger => "hunger",
        }
    }
}

impl InternalState {
    pub fn get(&self, field: InternalField) -> f64 {
        match field {
            InternalField::Strength => self.strength,
            InternalField::Lucidity => self.lucidity,
            InternalField::Security => self.security,
            InternalField::Fatigue => self.fatigue,
            InternalField::Thirst => self.thirst,
            InternalField::Hunger => self.hunger,
        }
    }

    pub fn set(&mut self, field: InternalField, value: f64) {
        let slot = match field {
            InternalField::Strength => &mut self.strength,
            InternalField::Lucidity => &mut self.lucidity,
            InternalField::Security => &mut self.security,
            InternalField::Fatigue => &mut self.fatigue,
            InternalField::Thirst => &mut self.thirst,
            InternalField::Hunger => &mut self.hunger,
        };
        *slot = value;
    }

    pub fn is_valid(&self) -> bool {
        InternalField::ALL
            .iter()
            .all(|f| (0.0..=1.0).contains(&self.get(*f)))
    }

    pub fn violations(&self, prefix: &str) -> Vec<String> {
        InternalField::ALL
            .iter()
            .filter(|f| !(0.0..=1.0).contains(&self.get(**f)))
            .map(|f| {
                format!(
                    "{prefix}.{}: must be in [0, 1], got {}",
                    f.label(),
                    self.get(*f)
                )
            })
            .collect()
    }

    fn max_need(&self) -> f64 {
        self.thirst.max(self.hunger).max(self.fatigue)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysiologyParams {
    pub thirst_growth: f64,
    pub hunger_growth: f64,
    /// Fatigue gained per meter travelled.
    pub fatigue_per_meter: f64,
    pub drink_rate: f64,
    pub eat_rate: f64,
    pub rest_rate: f64,
    pub critical_threshold: f64,
    /// Strength and lucidity lost per tick while any need is critical.
    pub drain_rate: f64,
    /// Strength and lucidity regained per tick while every need is satiated.
    pub restore_rate: f64,
    pub satiation_threshold: f64,
}

impl Default for PhysiologyParams {
    fn default() -> Self {
        Self {
            thirst_growth: 0.001,
            hunger_growth: 0.001,
            fatigue_per_meter: 0.002,
            drink_rate: 0.02,
            eat_rate: 0.02,
            rest_rate: 0.01,
            critical_threshold: 0.9,
            drain_rate: 0.005,
            restore_rate: 0.001,
            satiation_threshold: 0.1,
        }
    }
}

impl PhysiologyParams {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in [
            ("thirst_growth", self.thirst_growth),
            ("hunger_growth", self.hunger_growth),
            ("fatigue_per_meter", self.fatigue_per_meter),
            ("drink_rate", self.drink_rate),
            ("eat_rate", self.eat_rate),
            ("rest_rate", self.rest_rate),
            ("drain_rate", self.drain_rate),
            ("restore_rate", self.restore_rate),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                out.push(format!("physiology.{name}: must be >= 0, got {v}"));
            }
        }
        let (s, c) = (self.satiation_threshold, self.critical_threshold);
        if !(s > 0.0 && s < c && c < 1.0) {
            out.push(format!(
                "physiology.satiation_threshold/critical_threshold: need 0 < satiation < critical < 1, got {s} and {c}"
            ));
        }
        out
    }
}

/// One tick of need growth followed by the strength/lucidity coupling.
/// A need that was consumed this tick (`consumed` is the consummatory
/// action actually applied) does not grow on the same tick.
pub fn tick_needs(
    state: &InternalState,
    moved_distance: f64,
    consumed: Option<ExternalAction>,
    params: &PhysiologyParams,
) -> InternalState {
    let mut next = *state;
    let grows = |a: ExternalAction| consumed != Some(a);
    if grows(ExternalAction::Drink) {
        next.thirst = (next.thirst + params.thirst_growth).clamp(0.0, 1.0);
    }
    if grows(ExternalAction::Eat) {
        next.hunger = (next.hunger + params.hunger_growth).clamp(0.0, 1.0);
    }
    next.fatigue =
        (next.fatigue + params.fatigue_per_meter * moved_distance.max(0.0)).clamp(0.0, 1.0);

    if next.max_need() > params.critical_threshold {
        next.strength = (next.strength - params.drain_rate).max(0.0);
        next.lucidity = (next.lucidity - params.drain_rate).max(0.0);
    } else if next.max_need() <= params.satiation_threshold {
        next.strength = (next.strength + params.restore_rate).min(1.0);
        next.lucidity = (next.lucidity + params.restore_rate).min(1.0);
    }
    next
}

/// Need reduction for a consummatory action; anything else is a no-op.
pub fn apply_consummation(
    state: &InternalState,
    action: ExternalAction,
    params: &PhysiologyParams,
) -> InternalState {
    let mut next = *state;
    match action {
        ExternalAction::Drink => next.thirst = (next.thirst - params.drink_rate).max(0.0),
        ExternalAction::Eat => next.hunger = (next.hunger - params.eat_rate).max(0.0),
        ExternalAction::Rest => next.fatigue = (next.fatigue - params.rest_rate).max(0.0),
        _ => {}
    }
    next
}

pub fn is_dead(state: &InternalState) -> bool {
    state.strength <= 0.0
}

pub fn is_satiated(state: &InternalState, drive: DriveKind, params: &PhysiologyParams) -> bool {
    let t = params.satiation_threshold;
    match drive {
        DriveKind::Thirst => state.thirst <= t,
        DriveKind::Hunger => state.hunger <= t,
        DriveKind::Fatigue => state.fatigue <= t,
        DriveKind::ThirstAndHunger => state.thirst <= t && state.hunger <= t,
        DriveKind::Safety => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zero_rates() -> PhysiologyParams {
        PhysiologyParams {
            thirst_growth: 0.0,
            hunger_growth: 0.0,
            fatigue_per_meter: 0.0,
            drink_rate: 0.0,
            eat_rate: 0.0,
            rest_rate: 0.0,
            drain_rate: 0.0,
            restore_rate: 0.0,
            ..Default::default()
        }
    }

    #[test]
    fn zero_dynamics_leave_state_unchanged() {
        let s = InternalState {
            thirst: 0.95,
            hunger: 0.3,
            fatigue: 0.5,
            strength: 0.7,
            ..Default::default()
        };
        assert_eq!(tick_needs(&s, 3.0, None, &zero_rates()), s);
    }

    #[test]
    fn critical_need_drains_linearly() {
        let params = PhysiologyParams {
            thirst_growth: 0.0,
            hunger_growth: 0.0,
            ..Default::default()
        };
        let mut s = InternalState {
            thirst: 0.95,
            ..Default::default()
        };
        for _ in 0..40 {
            s = tick_needs(&s, 0.0, None, &params);
        }
        assert!((s.strength - (1.0 - 40.0 * params.drain_rate)).abs() < 1e-12);
        assert!((s.lucidity - (1.0 - 40.0 * params.drain_rate)).abs() < 1e-12);
    }

    #[test]
    fn satisfied_needs_restore_strength() {
        let params = PhysiologyParams::default();
        let s = InternalState {
            thirst: 0.05,
            hunger: 0.05,
            fatigue: 0.05,
            strength: 0.5,
            lucidity: 0.5,
            ..Default::default()
        };
        let next = tick_needs(&s, 0.0, None, &params);
        assert!(next.strength > 0.5 && next.lucidity > 0.5);
    }

    #[test]
    fn consummation_examples() {
        let params = PhysiologyParams {
            drink_rate: 0.1,
            ..Default::default()
        };
        let s = InternalState {
            thirst: 0.8,
            ..Default::default()
        };
        assert!(
            (apply_consummation(&s, ExternalAction::Drink, &params).thirst - 0.7).abs() < 1e-12
        );
        let s = InternalState {
            hunger: 0.0,
            ..Default::default()
        };
        assert_eq!(
            apply_consummation(&s, ExternalAction::Eat, &params).hunger,
            0.0
        );
        let s = InternalState {
            thirst: 0.8,
            ..Default::default()
        };
        assert_eq!(
            apply_consummation(&s, ExternalAction::ApproachWater, &params),
            s
        );
    }

    #[test]
    fn death_examples() {
        assert!(is_dead(&InternalState {
            strength: 0.0,
            ..Default::default()
        }));
        assert!(!is_dead(&InternalState {
            strength: 0.01,
            ..Default::default()
        }));
    }

    #[test]
    fn deprived_animat_dies_on_the_predicted_tick() {
        // 1/128 is exact in binary so the arithmetic has no rounding slack
        let params = PhysiologyParams {
            drain_rate: 1.0 / 128.0,
            ..Default::default()
        };
        let mut s = InternalState {
            thirst: 0.95,
            ..Default::default()
        };
        let predicted = (s.strength / params.drain_rate).ceil() as usize;
        let mut ticks = 0;
        while !is_dead(&s) {
            s = tick_needs(&s, 0.0, None, &params);
            ticks += 1;
        }
        assert_eq!(ticks, predicted);
    }

    #[test]
    fn satiation_examples() {
        let params = PhysiologyParams::default();
        assert!(is_satiated(
            &InternalState {
                thirst: 0.05,
                ..Default::default()
            },
            DriveKind::Thirst,
            &params
        ));
        assert!(!is_satiated(
            &InternalState {
                thirst: 0.5,
                ..Default::default()
            },
            DriveKind::Thirst,
            &params
        ));

        let params = PhysiologyParams {
            thirst_growth: 0.0,
            ..Default::default()
        };
        let mut s = InternalState {
            thirst: 0.8,
            ..Default::default()
        };
        let predicted =
            ((0.8 - params.satiation_threshold) / params.drink_rate - 1e-9).ceil() as usize;
        let mut ticks = 0;
        while !is_satiated(&s, DriveKind::Thirst, &params) {
            s = apply_consummation(&s, ExternalAction::Drink, &params);
            ticks += 1;
        }
        assert_eq!(ticks, predicted);
    }

    fn action() -> impl Strategy<Value = ExternalAction> {
        prop::sample::select(ExternalAction::ALL.to_vec())
    }

    fn unit() -> impl Strategy<Value = f64> {
        0.0..=1.0f64
    }

    proptest! {
        #[test]
        fn state_stays_normalized(
            init in (unit(), unit(), unit(), unit(), unit(), unit()),
            steps in prop::collection::vec((action(), 0.0..5.0f64), 0..200),
        ) {
            let params = PhysiologyParams { thirst_growth: 0.01, hunger_growth: 0.02, ..Default::default() };
            let mut s = InternalState {
                strength: init.0, lucidity: init.1, security: init.2,
                fatigue: init.3, thirst: init.4, hunger: init.5,
            };
            let security = s.security;
            for (a, moved) in steps {
                s = apply_consummation(&s, a, &params);
                s = tick_needs(&s, moved, a.is_consummatory().then_some(a), &params);
                prop_assert!(s.is_valid(), "{s:?}");
                prop_assert_eq!(s.security, security);
            }
        }

        #[test]
        fn drinking_never_raises_thirst(thirst in unit(), ticks in 1usize..100) {
            let params = PhysiologyParams::default();
            let mut s = InternalState { thirst, ..Default::default() };
            for _ in 0..ticks {
                let next = tick_needs(&apply_consummation(&s, ExternalAction::Drink, &params), 0.0, Some(ExternalAction::Drink), &params);
                prop_assert!(next.thirst <= s.thirst);
                s = next;
            }
        }

        #[test]
        fn strength_falls_while_critical(thirst in 0.91..=1.0f64, strength in unit(), ticks in 1usize..100) {
            let params = PhysiologyParams::default();
            let mut s = InternalState { thirst, strength, ..Default::default() };
            for _ in 0..ticks {
                let next = tick_needs(&s, 0.0, None, &params);
                prop_assert!(next.strength <= s.strength);
                s = next;
            }
        }
    }
}
