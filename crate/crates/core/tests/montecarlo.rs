mod common;

use sdmbc_core::channel::{dueck, dueck_bc, multiplicative_bc, SdmbcSpec};
use sdmbc_core::estimation::{expected_distortion, optimal_estimator};
use sdmbc_core::montecarlo::{simulate, simulate_feedback_stats, SimConfig, SimResult};
use sdmbc_core::prob::Pmf;

fn run(spec: &SdmbcSpec, law: &Pmf, n: u64, seed: u64) -> SimResult {
    let est = optimal_estimator(spec, spec.distortion()).unwrap();
    simulate(
        spec,
        &est,
        spec.distortion(),
        &SimConfig::new(n, seed, law.clone()).unwrap(),
    )
    .unwrap()
}

#[test]
fn results_do_not_depend_on_the_thread_count() {
    let spec = dueck_bc(&Pmf::bernoulli(0.75).unwrap()).unwrap();
    let law = dueck::coupled_input(0.3).unwrap();
    let n = 3 * (1 << 16) + 123;
    let reference = run(&spec, &law, n, 11);
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let again = pool.install(|| run(&spec, &law, n, 11));
        assert_eq!(again, reference);
        assert_eq!(again.to_json(), reference.to_json());
    }
    assert_ne!(run(&spec, &law, n, 12), reference);
}

#[test]
fn error_shrinks_with_a_hundredfold_sample_size() {
    let spec = multiplicative_bc(0.6, 0.5).unwrap();
    let law = Pmf::uniform(2).unwrap();
    let est = optimal_estimator(&spec, spec.distortion()).unwrap();
    let exact = expected_distortion(&spec, &law, &est, spec.distortion()).unwrap();
    let mut improved = 0;
    for trial in 0..20 {
        let small = run(&spec, &law, 10_000, 1000 + trial);
        let large = run(&spec, &law, 1_000_000, 2000 + trial);
        let err = |r: &SimResult| (r.mean[0] - exact[0]).abs() + (r.mean[1] - exact[1]).abs();
        improved += usize::from(err(&large) < err(&small));
    }
    assert!(improved >= 19, "{improved}/20");
}

#[test]
fn feedback_frequencies_match_the_kernel_within_four_standard_errors() {
    let specs = [
        (
            multiplicative_bc(0.6, 0.5).unwrap(),
            Pmf::new(vec![0.3, 0.7]).unwrap(),
        ),
        (
            dueck_bc(&Pmf::bernoulli(0.75).unwrap()).unwrap(),
            dueck::coupled_input(0.4).unwrap(),
        ),
    ];
    for (spec, law) in specs {
        let stats =
            simulate_feedback_stats(&spec, &SimConfig::new(400_000, 5, law.clone()).unwrap())
                .unwrap();
        let a = spec.alphabets();
        for x in 0..a.x {
            let nx = stats.input_count(x);
            if law.get(x) == 0.0 {
                assert_eq!(nx, 0);
                continue;
            }
            let analytic = spec.feedback_given_input(x);
            for (z, &p) in analytic.iter().enumerate() {
                let freq = stats.frequency(x, z).unwrap();
                let se = (p * (1.0 - p) / nx as f64).sqrt();
                if se == 0.0 {
                    assert_eq!(freq, p, "{} x={x} z={z}", spec.name());
                } else {
                    assert!(
                        (freq - p).abs() <= 4.0 * se,
                        "{} x={x} z={z}: {freq} vs {p}",
                        spec.name()
                    );
                }
            }
        }
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    assert!(SimConfig::new(0, 1, Pmf::uniform(2).unwrap()).is_err());
    let spec = multiplicative_bc(0.6, 0.5).unwrap();
    let dueck = dueck_bc(&Pmf::bernoulli(0.75).unwrap()).unwrap();
    let est = optimal_estimator(&dueck, dueck.distortion()).unwrap();
    let cfg = SimConfig::new(10, 1, Pmf::uniform(2).unwrap()).unwrap();
    assert!(simulate(&spec, &est, spec.distortion(), &cfg).is_err());
}
