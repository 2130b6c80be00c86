use proptest::prelude::*;

use animat_sim::ibenet::{ExternalAction, IbenetParams};
use animat_sim::motor::{position_clear, MotorParams};
use animat_sim::perception::{effective_radius, in_perceptual_region, PerceptionParams, Pose};
use animat_sim::physiology::{InternalState, PhysiologyParams};
use animat_sim::sim::{action_pattern, run, Scenario};
use animat_sim::world::{Rect, Stimulus, StimulusId, StimulusKind, Vec2, World};

fn arb_scenario() -> impl Strategy<Value = Scenario> {
    let stimulus = (0usize..3, -14.0..14.0f64, -14.0..14.0f64, 10.0..20.0f64);
    let obstacle = (-12.0..10.0f64, -12.0..10.0f64, 0.5..3.0f64, 0.5..3.0f64);
    (
        proptest::collection::vec(stimulus, 1..6),
        proptest::collection::vec(obstacle, 0..3),
        (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64),
        0.0..std::f64::consts::TAU,
        any::<u64>(),
    )
        .prop_map(
            |(stimuli, obstacles, (thirst, hunger, fatigue), theta, seed)| {
                let kinds = [StimulusKind::Water, StimulusKind::Food, StimulusKind::Grass];
                let mut world =
                    World::new(Rect::new(Vec2::new(-15.0, -15.0), Vec2::new(15.0, 15.0)));
                for (i, (k, z, x, m)) in stimuli.into_iter().enumerate() {
                    world.stimuli.push(Stimulus {
                        id: StimulusId(i as u32),
                        kind: kinds[k],
                        position: Vec2::new(z, x),
                        magnitude: m,
                        body_radius: 0.5,
                    });
                }
                for (z, x, w, h) in obstacles {
                    world
                        .obstacles
                        .push(Rect::new(Vec2::new(z, x), Vec2::new(z + w, x + h)));
                }
                Scenario {
                    name: "random".into(),
                    seed,
                    max_ticks: 300,
                    world,
                    animat: Pose::new(Vec2::new(13.5, 13.5), theta),
                    internal: InternalState {
                        thirst,
                        hunger,
                        fatigue,
                        security: 1.0,
                        ..Default::default()
                    },
                    perception: PerceptionParams::default(),
                    physiology: PhysiologyParams::default(),
                    motor: MotorParams::default(),
                    ibenet: IbenetParams::default(),
                    events: Vec::new(),
                }
            },
        )
        .prop_filter("start clear of obstacles", |s| {
            position_clear(s.animat.position, &s.motor, &s.world)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn traces_are_well_formed(s in arb_scenario()) {
        let r = run(&s).unwrap();
        for (i, e) in r.events.iter().enumerate() {
            prop_assert_eq!(e.tick, i as u64);
            prop_assert!(e.internal.is_valid(), "{:?}", e.internal);
            prop_assert!(position_clear(e.pose.position, &s.motor, &s.world));
        }
        prop_assert!(r.events.len() as u64 <= s.max_ticks);
        prop_assert_eq!(r, run(&s).unwrap());
    }

    #[test]
    fn consummation_runs_until_satiation(s in arb_scenario()) {
        let sat = s.physiology.satiation_threshold;
        let r = run(&s).unwrap();
        let pattern = action_pattern(&r.events);
        let last = pattern.len().saturating_sub(1);
        for seg in &pattern[..last] {
            let end = &r.events[seg.end_tick as usize];
            let state = end.internal;
            let (need, source) = match seg.action {
                ExternalAction::Drink => (state.thirst, StimulusKind::Water),
                ExternalAction::Eat => (state.hunger, StimulusKind::Food),
                ExternalAction::Rest => (state.fatigue, StimulusKind::Grass),
                _ => continue,
            };
            // the source must still be perceivable and in contact for the
            // action to be owed; a fading lucidity can shrink it out of view
            let r_p = effective_radius(&s.perception, state.lucidity);
            let present = s.world.stimuli.iter().any(|st| {
                st.kind == source
                    && in_perceptual_region(&end.pose, r_p, st.position)
                    && !s.world.segment_blocked(end.pose.position, st.position)
                    && (st.position - end.pose.position).length()
                        < s.motor.body_radius + st.body_radius + s.perception.at_range_margin
            });
            prop_assert!(!present || need <= sat, "{:?} stopped at need {}", seg, need);
        }
    }
}
