mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdmbc_core::prob::{
    cond_mutual_information, conditional_entropy, entropy, mutual_information, LabeledJoint, Pmf,
    NORMALIZATION_TOL,
};

const NAMES: [&str; 4] = ["A", "B", "C", "D"];

/// Random joint over four variables of sizes 1..=3, as (sizes, seed).
fn joint_strategy() -> impl Strategy<Value = LabeledJoint> {
    (prop::collection::vec(1usize..=3, 4), any::<u64>()).prop_map(|(sizes, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cells = sizes.iter().product();
        let probs = common::random_probs(&mut rng, cells);
        LabeledJoint::from_dense(&NAMES, &sizes, &probs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn chain_rule_holds(j in joint_strategy()) {
        let lhs = mutual_information(&j, &["A"], &["B", "C"]).unwrap();
        let rhs = mutual_information(&j, &["A"], &["B"]).unwrap()
            + cond_mutual_information(&j, &["A"], &["C"], &["B"]).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn conditional_mutual_information_is_nonnegative(j in joint_strategy()) {
        for (a, b, c) in [(&["A"][..], &["B"][..], &["C", "D"][..]), (&["A", "D"], &["B"], &[]), (&["C"], &["D"], &["A"])] {
            prop_assert!(cond_mutual_information(&j, a, b, c).unwrap() >= 0.0);
        }
    }

    #[test]
    fn entropy_identities_hold(j in joint_strategy()) {
        let h_ab = entropy(&j, &["A", "B"]).unwrap();
        let h_b = entropy(&j, &["B"]).unwrap();
        let h_a_given_b = conditional_entropy(&j, &["A"], &["B"]).unwrap();
        prop_assert!((h_ab - h_b - h_a_given_b).abs() < 1e-9);
        prop_assert!(h_a_given_b >= -1e-12);
    }

    #[test]
    fn marginals_and_conditionals_stay_normalized(j in joint_strategy(), b in 0usize..3) {
        prop_assert!((j.total_mass() - 1.0).abs() < NORMALIZATION_TOL);
        let m = j.marginal(&["C", "A"]).unwrap();
        prop_assert!((m.total_mass() - 1.0).abs() < NORMALIZATION_TOL);
        prop_assert_eq!(m.names(), &["C".to_string(), "A".to_string()]);
        let b = b % j.sizes()[1];
        if j.probability(&[("B", b)]).unwrap() > 0.0 {
            let c = j.condition(&[("B", b)]).unwrap();
            prop_assert!((c.total_mass() - 1.0).abs() < NORMALIZATION_TOL);
        }
    }

    #[test]
    fn composed_joint_keeps_inputs_independent_of_states(seed in 0u64..10_000, u in 1usize..=3) {
        let spec = common::random_spec(seed, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let x = spec.alphabets().x;
        let p_ux = common::random_probs(&mut rng, u * x);
        let input = LabeledJoint::from_dense(&["U", "X"], &[u, x], &p_ux).unwrap();
        let joint = spec.compose_joint(&input).unwrap();
        prop_assert!((joint.total_mass() - 1.0).abs() < NORMALIZATION_TOL);
        let dep = mutual_information(&joint, &["U", "X"], &["S1", "S2"]).unwrap();
        prop_assert!(dep.abs() < 1e-9, "{dep}");
    }

    #[test]
    fn pmf_entropy_is_bounded_by_log_size(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Pmf::new(common::random_probs(&mut rng, n)).unwrap();
        prop_assert!(p.entropy() >= 0.0);
        prop_assert!(p.entropy() <= (n as f64).log2() + 1e-12);
    }
}

#[test]
fn invalid_pmfs_are_rejected() {
    assert!(Pmf::new(vec![0.5, 0.4]).is_err());
    assert!(Pmf::new(vec![1.2, -0.2]).is_err());
    assert!(Pmf::new(vec![f64::NAN, 1.0]).is_err());
    assert!(Pmf::new(vec![]).is_err());
}
