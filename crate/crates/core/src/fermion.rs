//! Fermi projections, block restrictions, entanglement entropy, and the
//! two-sided sandwich bounds.
//!
//! The chain is: diagonalize the one-body Hamiltonian, project onto the
//! occupied band, restrict the projection to the leading block, and read the
//! entropy off the block spectrum. The lower bound `4 Tr P(1 - P)` and the
//! upper bound `L h0(.)` hold per realization.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::spectral::{eigh, HermitianMatrix, SpectralDecomposition, UnitaryMatrix};

/// Logarithm base for entropies. Bits are the default everywhere except the
/// radiation module, which works in nats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EntropyBase {
    #[default]
    Bits,
    Nats,
}

impl EntropyBase {
    fn log(self, x: f64) -> f64 {
        match self {
            EntropyBase::Bits => x.log2(),
            EntropyBase::Nats => x.ln(),
        }
    }

    /// Entropy of one half-filled mode: the per-mode maximum.
    pub fn max_per_mode(self) -> f64 {
        match self {
            EntropyBase::Bits => 1.0,
            EntropyBase::Nats => LN_2,
        }
    }
}

/// Clamping tolerance for block eigenvalues and entropy arguments.
pub const CLAMP_TOL: f64 = 1e-9;
/// Idempotency tolerance required of projections in [`offdiag_lower_bound`].
pub const IDEMPOTENCY_TOL: f64 = 1e-8;
/// Ties with the Fermi energy below this spacing are rejected as degenerate.
pub const FERMI_TIE_TOL: f64 = 1e-12;

/// Which one-body levels are occupied.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FermiSea {
    /// Occupy the `K` lowest levels. This is the primary form.
    Filling(usize),
    /// Occupy all levels `<= fermi_energy`; errors on near-ties.
    FermiEnergy(f64),
}

/// Binary Shannon entropy `h(x) = -x log x - (1 - x) log(1 - x)` with the
/// continuity convention `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64, base: EntropyBase) -> Result<f64> {
    if !x.is_finite() || x < -CLAMP_TOL || x > 1.0 + CLAMP_TOL {
        return Err(Error::invalid(
            "x",
            format!("must lie in [0, 1] within {CLAMP_TOL:.0e}, got {x}"),
        ));
    }
    Ok(h_clamped(x.clamp(0.0, 1.0), base))
}

pub(crate) fn h_clamped(x: f64, base: EntropyBase) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * base.log(x) - (1.0 - x) * base.log(1.0 - x)
}

/// Reparametrized entropy `h0` with `h(x) = h0(x (1 - x))` on `[0, 1/4]`.
pub fn h0(y: f64, base: EntropyBase) -> Result<f64> {
    if !y.is_finite() || y < -CLAMP_TOL || y > 0.25 + CLAMP_TOL {
        return Err(Error::invalid(
            "y",
            format!("must lie in [0, 1/4] within {CLAMP_TOL:.0e}, got {y}"),
        ));
    }
    let y = y.clamp(0.0, 0.25);
    let x = 0.5 * (1.0 - (1.0 - 4.0 * y).max(0.0).sqrt());
    Ok(h_clamped(x, base))
}

/// Fermi projection `P = sum_{alpha occupied} psi^alpha (psi^alpha)*`.
///
/// With the filling form, exactly the `K` lowest levels are occupied. With
/// the energy form, a level within [`FERMI_TIE_TOL`] of the Fermi energy is
/// an error: the paper fixes `K = [N kappa]` and never resolves ties.
pub fn fermi_projection(dec: &SpectralDecomposition, sea: &FermiSea) -> Result<HermitianMatrix> {
    let n = dec.dim();
    let k = match sea {
        FermiSea::Filling(k) => {
            if *k > n {
                return Err(Error::invalid(
                    "K",
                    format!("filling {k} exceeds dimension {n}"),
                ));
            }
            *k
        }
        FermiSea::FermiEnergy(ef) => {
            if !ef.is_finite() {
                return Err(Error::invalid("fermi_energy", "must be finite"));
            }
            for &e in dec.eigenvalues() {
                if (e - ef).abs() <= FERMI_TIE_TOL {
                    return Err(Error::DegenerateFermiLevel {
                        fermi_energy: *ef,
                        eigenvalue: e,
                        tol: FERMI_TIE_TOL,
                    });
                }
            }
            dec.eigenvalues().iter().filter(|&&e| e <= *ef).count()
        }
    };
    if k == 0 {
        return HermitianMatrix::from_lower(n, |_, _| crate::spectral::C64::new(0.0, 0.0));
    }
    let occupied = dec.eigenvectors().as_complex().block(0..n, 0..k)?;
    Ok(occupied.gram())
}

/// Leading `L x L` block of a Fermi projection, with provenance metadata.
#[derive(Clone, Debug)]
pub struct RestrictedProjection {
    matrix: HermitianMatrix,
    n: usize,
    k: usize,
    seed: u64,
}

impl RestrictedProjection {
    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn l(&self) -> usize {
        self.matrix.dim()
    }

    /// Dimension of the full system the block was cut from.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of occupied levels, recovered from the trace of the full projection.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Attaches the master seed of the realization that produced the block.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Restriction of the projection `P` to the leading block of size `l`.
pub fn restricted_projection(p: &HermitianMatrix, l: usize) -> Result<RestrictedProjection> {
    let n = p.dim();
    if l == 0 || l > n {
        return Err(Error::invalid(
            "L",
            format!("must satisfy 1 <= L <= N = {n}, got {l}"),
        ));
    }
    let k = p.trace().round().clamp(0.0, n as f64) as usize;
    Ok(RestrictedProjection {
        matrix: p.leading_block(l)?,
        n,
        k,
        seed: 0,
    })
}

/// Per-realization entropy record with the sandwich bounds and the block
/// spectrum that produced them.
#[derive(Clone, Debug)]
pub struct EntropyReport {
    pub entropy: f64,
    pub lower: f64,
    pub upper: f64,
    /// Block eigenvalues clamped to `[0, 1]`, ascending.
    pub block_spectrum: Vec<f64>,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub seed: u64,
    pub base: EntropyBase,
}

impl EntropyReport {
    /// Revalidates `lower <= S <= upper` and `0 <= S <= L` with `slack`.
    pub fn validate(&self, slack: f64) -> Result<()> {
        let max = self.l as f64 * self.base.max_per_mode();
        let ok = self.entropy >= self.lower - slack
            && self.entropy <= self.upper + slack
            && self.entropy >= -slack
            && self.entropy <= max + slack;
        if ok {
            Ok(())
        } else {
            Err(Error::BoundsViolated {
                entropy: self.entropy,
                lower: self.lower,
                upper: self.upper,
            })
        }
    }
}

/// Entanglement entropy `S = sum h(p_alpha)` of a restricted projection,
/// together with the Result 1 bounds.
///
/// `lower` is `4 Tr P_b (1 - P_b)` and `upper` is `L h0(lower / 4L)`. In
/// nats the lower bound carries an extra `ln 2`, which is the scaling under
/// which `h(x) >= 4 x (1 - x) log 2` keeps the sandwich exact.
pub fn entanglement_entropy(pb: &RestrictedProjection, base: EntropyBase) -> Result<EntropyReport> {
    let dec = eigh(pb.matrix())?;
    let l = pb.l();
    let mut spectrum = Vec::with_capacity(l);
    for &p in dec.eigenvalues() {
        if p < -CLAMP_TOL || p > 1.0 + CLAMP_TOL {
            return Err(Error::SpectrumOutOfUnitRange {
                value: p,
                tol: CLAMP_TOL,
            });
        }
        spectrum.push(p.clamp(0.0, 1.0));
    }
    let mut entropy = 0.0;
    let mut lower_raw = 0.0;
    for &p in &spectrum {
        entropy += h_clamped(p, base);
        lower_raw += 4.0 * p * (1.0 - p);
    }
    let upper = l as f64 * h0((lower_raw / (4.0 * l as f64)).min(0.25), base)?;
    let lower = match base {
        EntropyBase::Bits => lower_raw,
        EntropyBase::Nats => lower_raw * LN_2,
    };
    Ok(EntropyReport {
        entropy,
        lower,
        upper,
        block_spectrum: spectrum,
        n: pb.n(),
        k: pb.k(),
        l,
        seed: pb.seed(),
        base,
    })
}

/// Off-diagonal form of the lower bound: `4 sum_{l <= L, k > L} |P_{lk}|^2`.
///
/// Equals `4 Tr P_b (1 - P_b)` when `P` is an exact projection, which is why
/// idempotency is a precondition.
pub fn offdiag_lower_bound(p: &HermitianMatrix, l: usize) -> Result<f64> {
    let n = p.dim();
    if l == 0 || l > n {
        return Err(Error::invalid(
            "L",
            format!("must satisfy 1 <= L <= N = {n}, got {l}"),
        ));
    }
    let defect = p.idempotency_defect();
    if defect > IDEMPOTENCY_TOL {
        return Err(Error::NotIdempotent {
            max_dev: defect,
            tol: IDEMPOTENCY_TOL,
        });
    }
    let mut sum = 0.0;
    for i in 0..l {
        for j in l..n {
            sum += p.get(i, j).norm_sqr();
        }
    }
    Ok(4.0 * sum)
}

/// Haar expectation of the lower bound: `4 K(N-K) L(N-L) / (N (N^2 - 1))`.
pub fn expected_lower_bound(n: usize, k: usize, l: usize) -> Result<f64> {
    if n <= 1 {
        return Err(Error::invalid(
            "N",
            format!("must be >= 2 (formula singular), got {n}"),
        ));
    }
    if k > n {
        return Err(Error::invalid("K", format!("must satisfy K <= N, got {k} > {n}")));
    }
    if l == 0 || l > n {
        return Err(Error::invalid(
            "L",
            format!("must satisfy 1 <= L <= N = {n}, got {l}"),
        ));
    }
    let (n, k, l) = (n as f64, k as f64, l as f64);
    Ok(4.0 * k * (n - k) * l * (n - l) / (n * (n * n - 1.0)))
}

/// Entropy of the `L = N - 1` block through the rank-one identity.
///
/// The block of `P(1 - P)` is rank one with eigenvalue
/// `q = sum_{l < N} |P_{lN}|^2`, so `S = h0(q)` with no block
/// diagonalization. The column `P_{.N}` is assembled from the first `K`
/// columns of `U`.
pub fn rank_one_entropy(u: &UnitaryMatrix, k: usize, base: EntropyBase) -> Result<f64> {
    let n = u.dim();
    if n < 2 {
        return Err(Error::invalid("N", format!("must be >= 2, got {n}")));
    }
    if k == 0 || k > n {
        return Err(Error::invalid(
            "K",
            format!("must satisfy 1 <= K <= N = {n}, got {k}"),
        ));
    }
    let last = n - 1;
    let mut q = 0.0;
    for row in 0..last {
        let mut entry = crate::spectral::C64::new(0.0, 0.0);
        for col in 0..k {
            entry += u.get(row, col) * u.get(last, col).conj();
        }
        q += entry.norm_sqr();
    }
    h0(q.min(0.25), base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{kac_fermi_projection, sample_haar_unitary, RngStream};
    use crate::spectral::{ComplexMatrix, C64};
    use approx::assert_relative_eq;

    #[test]
    fn binary_entropy_reference_values() {
        assert_relative_eq!(
            binary_entropy(0.5, EntropyBase::Bits).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(binary_entropy(0.0, EntropyBase::Bits).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0, EntropyBase::Bits).unwrap(), 0.0);
        // frozen from direct evaluation of the defining formula
        assert_relative_eq!(
            binary_entropy(0.25, EntropyBase::Bits).unwrap(),
            0.8112781244591328,
            epsilon = 1e-12
        );
        assert!(binary_entropy(1.1, EntropyBase::Bits).is_err());
        assert!(binary_entropy(-0.1, EntropyBase::Bits).is_err());
        // clamping tolerance admits machine-level overshoot
        assert_eq!(binary_entropy(1.0 + 1e-10, EntropyBase::Bits).unwrap(), 0.0);
    }

    #[test]
    fn h0_reference_values() {
        assert_relative_eq!(h0(0.25, EntropyBase::Bits).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(h0(0.0, EntropyBase::Bits).unwrap(), 0.0);
        assert!(h0(0.3, EntropyBase::Bits).is_err());
        // defining identity h(x) = h0(x (1 - x))
        for x in [0.1, 0.3, 0.7] {
            let lhs = h0(x * (1.0 - x), EntropyBase::Bits).unwrap();
            let rhs = binary_entropy(x, EntropyBase::Bits).unwrap();
            assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn pointwise_bound_h_above_parabola() {
        // h(x) >= 4 x (1 - x) on a dense grid (bits)
        for i in 0..=2000 {
            let x = i as f64 / 2000.0;
            let h = binary_entropy(x, EntropyBase::Bits).unwrap();
            assert!(
                h >= 4.0 * x * (1.0 - x) - 1e-12,
                "violated at x = {x}: {h}"
            );
        }
    }

    fn haar_projection(seed: u64, n: usize, k: usize) -> HermitianMatrix {
        let u = sample_haar_unitary(&RngStream::new(seed, 0), n);
        let dec_free = u.as_complex().block(0..n, 0..k).unwrap();
        dec_free.gram()
    }

    #[test]
    fn fermi_projection_full_and_empty_band() {
        let h = crate::ensembles::sample_gue(&RngStream::new(4, 0), 8, 2.0).unwrap();
        let dec = crate::spectral::eigh(&h).unwrap();
        let full = fermi_projection(&dec, &FermiSea::Filling(8)).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((full.get(i, j) - C64::new(expect, 0.0)).norm() <= 1e-12);
            }
        }
        let empty = fermi_projection(&dec, &FermiSea::Filling(0)).unwrap();
        assert_eq!(empty.max_abs(), 0.0);
    }

    #[test]
    fn fermi_projection_trace_and_idempotency() {
        let h = crate::ensembles::sample_gue(&RngStream::new(5, 1), 12, 2.0).unwrap();
        let dec = crate::spectral::eigh(&h).unwrap();
        let p = fermi_projection(&dec, &FermiSea::Filling(3)).unwrap();
        assert_relative_eq!(p.trace(), 3.0, epsilon = 1e-9);
        assert!(p.idempotency_defect() <= 1e-9);
    }

    #[test]
    fn fermi_energy_form_counts_and_rejects_ties() {
        let h = crate::ensembles::sample_gue(&RngStream::new(6, 2), 10, 2.0).unwrap();
        let dec = crate::spectral::eigh(&h).unwrap();
        let e = dec.eigenvalues().to_vec();
        let ef = 0.5 * (e[3] + e[4]);
        let p = fermi_projection(&dec, &FermiSea::FermiEnergy(ef)).unwrap();
        assert_relative_eq!(p.trace(), 4.0, epsilon = 1e-9);
        assert!(matches!(
            fermi_projection(&dec, &FermiSea::FermiEnergy(e[3])),
            Err(Error::DegenerateFermiLevel { .. })
        ));
    }

    #[test]
    fn restriction_of_kac_projection_spectrum() {
        // eigenvalues {1 (mult L-1), 1 - L/N}: rank-one perturbation of identity
        let p = kac_fermi_projection(4);
        let pb = restricted_projection(&p, 2).unwrap();
        let dec = eigh(pb.matrix()).unwrap();
        assert_relative_eq!(dec.eigenvalues()[0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(dec.eigenvalues()[1], 1.0, epsilon = 1e-12);
        assert_eq!(pb.k(), 3);
        assert_eq!(pb.n(), 4);
    }

    #[test]
    fn restriction_full_size_is_identity_map() {
        let p = kac_fermi_projection(5);
        let pb = restricted_projection(&p, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(pb.matrix().get(i, j), p.get(i, j));
            }
        }
        assert!(restricted_projection(&p, 6).is_err());
        assert!(restricted_projection(&p, 0).is_err());
    }

    #[test]
    fn haar_block_matches_direct_summation() {
        // oracle: entrywise direct sum over occupied columns
        let (n, k, l) = (12, 5, 7);
        let u = sample_haar_unitary(&RngStream::new(17, 0), n);
        let p = u.as_complex().block(0..n, 0..k).unwrap().gram();
        let pb = restricted_projection(&p, l).unwrap();
        for r in 0..l {
            for c in 0..l {
                let mut direct = C64::new(0.0, 0.0);
                for j in 0..k {
                    direct += u.get(r, j) * u.get(c, j).conj();
                }
                assert!((pb.matrix().get(r, c) - direct).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn entropy_of_single_half_filled_mode() {
        let p = HermitianMatrix::from_lower(1, |_, _| C64::new(0.5, 0.0)).unwrap();
        let pb = restricted_projection(&p, 1).unwrap();
        let rep = entanglement_entropy(&pb, EntropyBase::Bits).unwrap();
        assert_relative_eq!(rep.entropy, 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.lower, 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.upper, 1.0, epsilon = 1e-12);
        rep.validate(1e-9).unwrap();
    }

    #[test]
    fn entropy_of_pure_block_is_zero() {
        let p = HermitianMatrix::from_lower(3, |i, j| {
            if i == j && i < 2 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let pb = restricted_projection(&p, 3).unwrap();
        let rep = entanglement_entropy(&pb, EntropyBase::Bits).unwrap();
        assert_eq!(rep.entropy, 0.0);
        assert_eq!(rep.lower, 0.0);
        assert_eq!(rep.upper, 0.0);
    }

    #[test]
    fn kac_entropy_is_h_of_filling_ratio() {
        // S = h(1 - L/N) = h(L/N), frozen from h(0.3)
        let p = kac_fermi_projection(100);
        let pb = restricted_projection(&p, 30).unwrap();
        let rep = entanglement_entropy(&pb, EntropyBase::Bits).unwrap();
        assert_relative_eq!(rep.entropy, 0.8812908992306927, epsilon = 1e-10);
    }

    #[test]
    fn spectrum_out_of_contract_is_an_error() {
        let p = HermitianMatrix::from_lower(2, |i, j| {
            if i == j {
                C64::new(1.5, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let pb = restricted_projection(&p, 2).unwrap();
        assert!(matches!(
            entanglement_entropy(&pb, EntropyBase::Bits),
            Err(Error::SpectrumOutOfUnitRange { .. })
        ));
    }

    #[test]
    fn offdiag_bound_identity_projection() {
        let p = HermitianMatrix::new(ComplexMatrix::identity(6)).unwrap();
        assert_eq!(offdiag_lower_bound(&p, 3).unwrap(), 0.0);
    }

    #[test]
    fn offdiag_bound_kac_closed_form() {
        // entries of I - P_d are -1/N off the diagonal: 4 L (N - L) / N^2
        for (n, l) in [(10usize, 3usize), (50, 20), (7, 7)] {
            let p = kac_fermi_projection(n);
            let got = offdiag_lower_bound(&p, l).unwrap();
            let expect = 4.0 * (l * (n - l)) as f64 / (n * n) as f64;
            assert_relative_eq!(got, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn offdiag_bound_matches_trace_form_on_haar() {
        let (n, k, l) = (40, 17, 11);
        let p = haar_projection(123, n, k);
        let bound = offdiag_lower_bound(&p, l).unwrap();
        let pb = restricted_projection(&p, l).unwrap();
        let rep = entanglement_entropy(&pb, EntropyBase::Bits).unwrap();
        assert!((bound - rep.lower).abs() <= 1e-8);
    }

    #[test]
    fn offdiag_bound_rejects_non_projections() {
        let h = crate::ensembles::sample_gue(&RngStream::new(1, 1), 6, 2.0).unwrap();
        assert!(matches!(
            offdiag_lower_bound(&h, 3),
            Err(Error::NotIdempotent { .. })
        ));
    }

    #[test]
    fn expected_lower_bound_values() {
        assert_eq!(expected_lower_bound(10, 0, 3).unwrap(), 0.0);
        assert_relative_eq!(
            expected_lower_bound(2, 1, 1).unwrap(),
            2.0 / 3.0,
            epsilon = 1e-15
        );
        assert!(expected_lower_bound(1, 0, 1).is_err());
    }

    #[test]
    fn expected_lower_bound_monte_carlo_small() {
        // Monte Carlo oracle at N = 2, K = 1, L = 1: E{4 p (1 - p)} = 2/3
        let samples = 4000;
        let mut acc = 0.0;
        let mut acc2 = 0.0;
        for idx in 0..samples {
            let u = sample_haar_unitary(&RngStream::new(0xDEAD, idx), 2);
            let p = u.get(0, 0).norm_sqr();
            let v = 4.0 * p * (1.0 - p);
            acc += v;
            acc2 += v * v;
        }
        let mean = acc / samples as f64;
        let var = (acc2 / samples as f64 - mean * mean).max(0.0);
        let se = (var / samples as f64).sqrt();
        let expect = expected_lower_bound(2, 1, 1).unwrap();
        assert!((mean - expect).abs() <= 5.0 * se, "mean {mean} se {se}");
    }

    #[test]
    fn rank_one_entropy_matches_direct_pipeline() {
        // Appendix-style identity: S at L = N - 1 equals h0(q) per realization
        let (n, k) = (60, 25);
        for idx in 0..4 {
            let u = sample_haar_unitary(&RngStream::new(31415, idx), n);
            let p = u.as_complex().block(0..n, 0..k).unwrap().gram();
            let pb = restricted_projection(&p, n - 1).unwrap();
            let rep = entanglement_entropy(&pb, EntropyBase::Bits).unwrap();
            let s1 = rank_one_entropy(&u, k, EntropyBase::Bits).unwrap();
            assert!(
                (rep.entropy - s1).abs() <= 1e-9,
                "direct {} vs rank-one {}",
                rep.entropy,
                s1
            );
        }
    }

    #[test]
    fn rank_one_maximum_is_one_bit() {
        // u with u (1 - u) = 1/4 gives h0(1/4) = 1 bit
        assert_relative_eq!(h0(0.25, EntropyBase::Bits).unwrap(), 1.0, epsilon = 1e-15);
        assert!(rank_one_entropy(&sample_haar_unitary(&RngStream::new(0, 0), 1), 1, EntropyBase::Bits).is_err());
    }

    #[test]
    fn nats_sandwich_still_holds() {
        let p = haar_projection(777, 30, 12);
        let pb = restricted_projection(&p, 9).unwrap();
        let rep = entanglement_entropy(&pb, EntropyBase::Nats).unwrap();
        rep.validate(1e-9).unwrap();
        let bits = entanglement_entropy(&pb, EntropyBase::Bits).unwrap();
        assert_relative_eq!(rep.entropy, bits.entropy * LN_2, epsilon = 1e-12);
    }

    #[test]
    fn monotone_count_rank_constraints() {
        // Tr P_b within [max(0, K + L - N), min(K, L)]
        for (seed, n, k, l) in [(1u64, 20usize, 8usize, 5usize), (2, 25, 20, 18), (3, 16, 4, 14)] {
            let p = haar_projection(seed, n, k);
            let pb = restricted_projection(&p, l).unwrap();
            let tr = pb.matrix().trace();
            let lo = k.saturating_sub(n - l) as f64;
            let hi = k.min(l) as f64;
            assert!(tr >= lo - 1e-8 && tr <= hi + 1e-8, "trace {tr} not in [{lo}, {hi}]");
        }
    }
}
