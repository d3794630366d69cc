//! Harness-level invariants that go beyond single modules: the near-full
//! block scaling window and library-level determinism of the runners.

use ffent_cli::config::EntropyRunParams;
use ffent_cli::runner;
use ffent_core::fermion::EntropyBase;

#[test]
fn near_full_block_sits_in_the_enhanced_area_window() {
    // L = N - ceil(log N): the block almost fills the system, and the
    // sandwich pins S between 4 kappa (1 - kappa) log L and
    // kappa (1 - kappa) log^2 L, tested with slack factor 1.5 on each side.
    let n = 2000usize;
    let kappa = 0.5;
    let l = n - (n as f64).ln().ceil() as usize;
    let params = EntropyRunParams {
        n,
        k: 1000,
        l,
        eps0: 2.0,
        realizations: 2,
        master_seed: 91,
        base: EntropyBase::Bits,
    };
    let rows = runner::run_haar_entropy(&params).unwrap();
    let log_l = (l as f64).ln();
    let lo = 4.0 * kappa * (1.0 - kappa) * log_l / 1.5;
    let hi = 1.5 * kappa * (1.0 - kappa) * log_l * log_l;
    for row in &rows {
        assert!(
            row.s >= lo && row.s <= hi,
            "realization {}: S = {} outside [{lo}, {hi}]",
            row.realization,
            row.s
        );
    }
}

#[test]
fn runners_are_bitwise_deterministic() {
    let params = EntropyRunParams {
        n: 48,
        k: 20,
        l: 30,
        eps0: 2.0,
        realizations: 6,
        master_seed: 1234,
        base: EntropyBase::Bits,
    };
    let a = runner::run_haar_entropy(&params).unwrap();
    let b = runner::run_haar_entropy(&params).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.s.to_bits(), y.s.to_bits());
        assert_eq!(x.lower.to_bits(), y.lower.to_bits());
        assert_eq!(x.upper.to_bits(), y.upper.to_bits());
    }
    let a = runner::run_gue_entropy(&params).unwrap();
    let b = runner::run_gue_entropy(&params).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.s.to_bits(), y.s.to_bits());
    }
}

#[test]
fn gue_and_haar_pipelines_agree_in_distribution() {
    // same law, different pipelines: compare ensemble means loosely
    let params = EntropyRunParams {
        n: 120,
        k: 60,
        l: 60,
        eps0: 2.0,
        realizations: 40,
        master_seed: 5,
        base: EntropyBase::Bits,
    };
    let gue: Vec<f64> = runner::run_gue_entropy(&params)
        .unwrap()
        .iter()
        .map(|r| r.s)
        .collect();
    let haar: Vec<f64> = runner::run_haar_entropy(&params)
        .unwrap()
        .iter()
        .map(|r| r.s)
        .collect();
    let (mg, sg) = ffent_core::stats::mean_and_std_error(&gue);
    let (mh, sh) = ffent_core::stats::mean_and_std_error(&haar);
    let spread = (sg * sg + sh * sh).sqrt();
    assert!(
        (mg - mh).abs() <= 5.0 * spread,
        "GUE mean {mg} vs Haar mean {mh}, spread {spread}"
    );
}
