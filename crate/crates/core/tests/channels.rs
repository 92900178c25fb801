mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdmbc_core::channel::{
    check_no_tradeoff, check_physically_degraded, dueck_bc, erasure, erasure_bc, flipping_bc,
    load_channel, multiplicative_bc, save_channel, DegradedVerdict, NoTradeoffWitness, SdmbcSpec,
};
use sdmbc_core::estimation::{expected_distortion, optimal_estimator};
use sdmbc_core::prob::{LabeledJoint, Pmf};
use sdmbc_core::regions::SimplexGrid;

fn builtins() -> Vec<SdmbcSpec> {
    vec![
        multiplicative_bc(0.6, 0.5).unwrap(),
        flipping_bc(0.6, 0.5).unwrap(),
        erasure_bc(&erasure::independent_law(0.3, 0.3, 0.2, 0.2).unwrap()).unwrap(),
        dueck_bc(&Pmf::bernoulli(0.75).unwrap()).unwrap(),
    ]
}

#[test]
fn builtin_kernels_are_normalized() {
    for spec in builtins() {
        let a = *spec.alphabets();
        assert!((spec.state_law().probs().iter().sum::<f64>() - 1.0).abs() < 1e-9);
        for s1 in 0..a.s1 {
            for s2 in 0..a.s2 {
                for x in 0..a.x {
                    let row = spec.transition_row(s1, s2, x);
                    assert!(
                        (row.iter().sum::<f64>() - 1.0).abs() < 1e-9,
                        "{}",
                        spec.name()
                    );
                    assert!(row.iter().all(|&p| p >= 0.0));
                }
            }
        }
    }
}

#[test]
fn degradedness_of_the_builtin_channels() {
    let verdicts: Vec<bool> = builtins()
        .iter()
        .map(|s| check_physically_degraded(s).holds())
        .collect();
    assert_eq!(verdicts, [true, true, false, false]);
}

/// `P(x) P(s1) P(y1 | s1, x) K(y2, s2 | s1, y1)` must equal the composed joint.
#[test]
fn degraded_factorization_reconstructs_the_joint() {
    for spec in [
        multiplicative_bc(0.6, 0.5).unwrap(),
        flipping_bc(0.7, 0.3).unwrap(),
    ] {
        let DegradedVerdict::Degraded { kernel } = check_physically_degraded(&spec) else {
            panic!("builtin is degraded");
        };
        let a = *spec.alphabets();
        for p_x in SimplexGrid::new(a.x, 8).unwrap().points() {
            let input = LabeledJoint::from_dense(&["X"], &[a.x], &p_x).unwrap();
            let joint = spec.compose_joint(&input).unwrap();
            let ps1 = joint.marginal(&["S1"]).unwrap().to_dense();
            for (x, &px) in p_x.iter().enumerate() {
                for (s1, &ps) in ps1.iter().enumerate() {
                    for y1 in 0..a.y1 {
                        let p_y1 = y1_given(&spec, s1, x, y1, ps);
                        for y2 in 0..a.y2 {
                            for s2 in 0..a.s2 {
                                let want = joint
                                    .probability(&[
                                        ("X", x),
                                        ("S1", s1),
                                        ("Y1", y1),
                                        ("Y2", y2),
                                        ("S2", s2),
                                    ])
                                    .unwrap();
                                let got = px * ps * p_y1 * kernel.prob(&[s1, y1], &[y2, s2]);
                                assert!(
                                    common::close(got, want, 1e-9),
                                    "{}: {got} vs {want}",
                                    spec.name()
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

fn y1_given(spec: &SdmbcSpec, s1: usize, x: usize, y1: usize, ps1: f64) -> f64 {
    if ps1 == 0.0 {
        return 0.0;
    }
    let a = spec.alphabets();
    let block = a.y2 * a.z;
    (0..a.s2)
        .map(|s2| {
            let row = spec.transition_row(s1, s2, x);
            spec.state_prob(s1, s2) * row[y1 * block..(y1 + 1) * block].iter().sum::<f64>()
        })
        .sum::<f64>()
        / ps1
}

#[test]
fn non_degraded_verdicts_carry_a_genuine_witness() {
    let mut seen = 0;
    for seed in 0..40 {
        let spec = common::random_spec(seed, 3);
        if let DegradedVerdict::NotDegraded {
            s1,
            y1,
            x,
            x_prime,
            gap,
        } = check_physically_degraded(&spec)
        {
            seen += 1;
            assert_ne!(x, x_prime);
            assert!(gap > 1e-9);
            assert!(s1 < spec.alphabets().s1 && y1 < spec.alphabets().y1);
        }
    }
    assert!(seen > 0);
}

#[test]
fn erasure_indicator_is_a_no_tradeoff_witness() {
    for (s1, s2, e1, e2) in [
        (0.3, 0.3, 0.2, 0.2),
        (0.1, 0.8, 0.5, 0.0),
        (0.5, 0.5, 1.0, 1.0),
    ] {
        let spec = erasure_bc(&erasure::independent_law(s1, s2, e1, e2).unwrap()).unwrap();
        let verdict =
            check_no_tradeoff(&spec, &NoTradeoffWitness::erasure_indicator(), 32, 3).unwrap();
        assert!(verdict.holds(), "{verdict}");
    }
}

#[test]
fn no_tradeoff_fails_where_the_input_matters() {
    let spec = erasure_bc(&erasure::independent_law(0.3, 0.3, 0.2, 0.2).unwrap()).unwrap();
    let constant = NoTradeoffWitness {
        psi1: vec![0; 9],
        psi2: vec![0; 9],
    };
    assert!(!check_no_tradeoff(&spec, &constant, 8, 0).unwrap().holds());
    let mult = multiplicative_bc(0.6, 0.5).unwrap();
    let identity = NoTradeoffWitness {
        psi1: (0..4).collect(),
        psi2: (0..4).collect(),
    };
    assert!(!check_no_tradeoff(&mult, &identity, 8, 0).unwrap().holds());
    let short = NoTradeoffWitness {
        psi1: vec![0; 3],
        psi2: vec![0; 4],
    };
    assert!(check_no_tradeoff(&mult, &short, 8, 0).is_err());
}

#[test]
fn no_tradeoff_implies_input_free_distortion() {
    let spec = erasure_bc(&erasure::independent_law(0.4, 0.7, 0.25, 0.6).unwrap()).unwrap();
    assert!(
        check_no_tradeoff(&spec, &NoTradeoffWitness::erasure_indicator(), 16, 9)
            .unwrap()
            .holds()
    );
    let est = optimal_estimator(&spec, spec.distortion()).unwrap();
    let reference =
        expected_distortion(&spec, &Pmf::uniform(2).unwrap(), &est, spec.distortion()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let law = common::random_pmf(&mut rng, 2);
        let d = expected_distortion(&spec, &law, &est, spec.distortion()).unwrap();
        assert!(common::close(d[0], reference[0], 1e-9) && common::close(d[1], reference[1], 1e-9));
    }
}

#[test]
fn channel_documents_round_trip() {
    let mut specs = builtins();
    specs.extend((0..10).map(|seed| common::random_spec(seed, 3)));
    for spec in specs {
        let text = save_channel(&spec);
        let back = load_channel(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(save_channel(&back), text);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    let text = save_channel(&multiplicative_bc(0.6, 0.5).unwrap());
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["state_law"][0] = serde_json::json!(0.9);
    assert!(load_channel(&doc.to_string()).is_err());
    assert!(load_channel("[1, 2, 3]").is_err());
    assert!(load_channel("not json").is_err());
}
