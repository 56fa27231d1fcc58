// Cross-module laws, checked on random instances drawn from `testkit`.

use proptest::prelude::*;
use rand::Rng;

use martkit::condexp::{cond_exp, has_cond_exp};
use martkit::martingale::{
    check_difference, check_set_integral, check_succ, cond_exp_process, find_counterexample, is_martingale,
    is_submartingale, transform, Characterization, Relation, Scope,
};
use martkit::measure::{ae_eq, ae_ge, density_report, integral, set_integral, EventCap, FnTable};
use martkit::numeric::VecD;
use martkit::process::{is_adapted, is_predictable, is_predictable_shifted, is_progressive};
use martkit::testkit;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn cond_exp_preserves_set_integrals(seed in any::<u64>()) {
        let mut rng = testkit::rng(seed);
        let n = rng.random_range(1..=7);
        let m = testkit::random_space(&mut rng, n, 10);
        let p = testkit::random_partition(&mut rng, n);
        let x = testkit::random_table(&mut rng, n, 2);
        let e = cond_exp(&m, &p, &x).unwrap().table;
        // check each atom directly rather than through has_cond_exp
        for atom in p.atoms() {
            prop_assert_eq!(set_integral(&m, atom, &e).unwrap(), set_integral(&m, atom, &x).unwrap());
        }
        prop_assert!(has_cond_exp(&m, &p, &x, &e, EventCap::default()).unwrap());
        prop_assert_eq!(integral(&m, &e).unwrap(), integral(&m, &x).unwrap());
    }

    #[test]
    fn cond_exp_on_discrete_is_identity_ae(seed in any::<u64>()) {
        let mut rng = testkit::rng(seed);
        let n = rng.random_range(1..=8);
        let m = testkit::random_space(&mut rng, n, 10);
        let x = testkit::random_table(&mut rng, n, 3);
        let e = cond_exp(&m, &martkit::Partition::discrete(n), &x).unwrap().table;
        prop_assert!(ae_eq(&m, &e, &x).unwrap());
    }

    #[test]
    fn density_detects_null_modifications(seed in any::<u64>()) {
        let mut rng = testkit::rng(seed);
        let n = rng.random_range(1..=7);
        let m = testkit::random_measure(&mut rng, n, 10, 0.4);
        let f = testkit::random_table(&mut rng, n, 1);
        let w = rng.random_range(0..n);
        let bumped = FnTable::new(
            (0..n).map(|k| if k == w { VecD::scalar(f.get(k).components()[0].clone() + martkit::Rat::one()) } else { f.get(k).clone() }).collect(),
        ).unwrap();
        let rep = density_report(&m, &f, &bumped, EventCap::default()).unwrap();
        prop_assert_eq!(rep.equal, m.weight(w).is_zero());
    }

    #[test]
    fn hierarchy_is_consistent(seed in any::<u64>()) {
        let mut rng = testkit::rng(seed);
        let n = rng.random_range(1..=6);
        let horizon = rng.random_range(0..=3);
        let f = testkit::random_filtration(&mut rng, n, horizon);
        let x = testkit::random_predictable_process(&mut rng, &f, 1);
        prop_assert!(is_predictable(&x, &f).unwrap());
        prop_assert!(is_predictable_shifted(&x, &f).unwrap());
        prop_assert!(is_progressive(&x, &f).unwrap());
        prop_assert!(is_adapted(&x, &f).unwrap());
        let y = testkit::random_process(&mut rng, n, horizon, 1);
        prop_assert_eq!(is_adapted(&y, &f).unwrap(), is_progressive(&y, &f).unwrap());
        prop_assert_eq!(is_predictable(&y, &f).unwrap(), is_predictable_shifted(&y, &f).unwrap());
    }

    #[test]
    fn characterizations_agree(seed in any::<u64>()) {
        let mut rng = testkit::rng(seed);
        let n = rng.random_range(1..=6);
        let horizon = rng.random_range(0..=4);
        let m = testkit::random_space(&mut rng, n, 10);
        let f = testkit::random_filtration(&mut rng, n, horizon);
        let x = testkit::random_scalar_adapted(&mut rng, &m, &f);
        let cap = EventCap::default();
        for rel in [Relation::Eq, Relation::Le, Relation::Ge] {
            let pairwise = find_counterexample(&m, &f, &x, Characterization::Pairwise, rel, cap).unwrap().is_none();
            prop_assert_eq!(pairwise, check_succ(&m, &f, &x, rel).unwrap());
            prop_assert_eq!(pairwise, check_set_integral(&m, &f, &x, rel, Scope::AllPairs, cap).unwrap());
            prop_assert_eq!(pairwise, check_set_integral(&m, &f, &x, rel, Scope::Successor, cap).unwrap());
            prop_assert_eq!(pairwise, check_difference(&m, &f, &x, rel).unwrap());
        }
    }

    #[test]
    fn martingales_have_constant_mean(seed in any::<u64>()) {
        let mut rng = testkit::rng(seed);
        let n = rng.random_range(1..=8);
        let horizon = rng.random_range(0..=5);
        let m = testkit::random_space(&mut rng, n, 10);
        let f = testkit::random_filtration(&mut rng, n, horizon);
        let g = testkit::random_table(&mut rng, n, 1);
        let x = cond_exp_process(&m, &f, &g).unwrap();
        prop_assert!(is_martingale(&m, &f, &x).unwrap());
        let mean = integral(&m, &g).unwrap();
        for t in 0..=horizon {
            prop_assert_eq!(integral(&m, x.at(t)).unwrap(), mean.clone());
        }
    }

    #[test]
    fn transforms_of_submartingales_by_nonneg_bets(seed in any::<u64>()) {
        let mut rng = testkit::rng(seed);
        let n = rng.random_range(1..=6);
        let horizon = rng.random_range(0..=4);
        let m = testkit::random_space(&mut rng, n, 10);
        let f = testkit::random_filtration(&mut rng, n, horizon);
        let x = testkit::random_drifting(&mut rng, &m, &f, true);
        let c = testkit::random_predictable_process(&mut rng, &f, 1).p_norm();
        let y = transform(&c, &x).unwrap();
        prop_assert!(is_submartingale(&m, &f, &y).unwrap());
        prop_assert!(ae_ge(&m, y.at(0), &FnTable::zeros(n, 1)).unwrap());
    }
}
