mod common;

use interlace::tasep::{simulate, transition_prob, ParticleConfig, Update};
use proptest::prelude::*;

fn initial_strategy() -> impl Strategy<Value = Vec<i64>> {
    (1usize..=3, -4i64..4, prop::collection::vec(1i64..4, 2)).prop_map(|(n, top, gaps)| {
        let mut y = vec![top];
        for g in gaps.into_iter().take(n - 1) {
            y.push(y.last().unwrap() - g);
        }
        y
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_matches_master_equation(y in initial_strategy(), t in 0.05f64..1.0) {
        let (law, lost) = common::master_equation(&y, t, 16);
        prop_assert!(lost < 1e-8);
        for (x, p) in &law {
            let g = transition_prob(x, &y, t).unwrap();
            prop_assert!((g - p).abs() < 1e-6, "x={x:?} y={y:?} t={t}: {g} vs {p}");
        }
    }
}

#[test]
fn oracle_is_a_probability_law() {
    let (law, lost) = common::master_equation(&[0, -1], 0.7, 16);
    assert!(lost < 1e-10);
    assert!(law.values().all(|&p| p >= 0.0));
    // the blocked follower leaves only the leader's clock
    assert!((law[&vec![0, -1]] - (-0.7f64).exp()).abs() < 1e-12);
}

#[test]
fn simulator_stays_inside_the_support() {
    let ic = ParticleConfig::new(vec![2, 0, -3]).unwrap();
    let mut r = interlace::rng::root(2);
    for _ in 0..2000 {
        let c = simulate(&ic, 0.8, Update::Continuous, &mut r).unwrap();
        assert!(c.is_valid());
        assert!(transition_prob(&c.positions, &ic.initial, 0.8).unwrap() > 0.0);
    }
}
