//! Page-style bipartite random pure states: reduced density matrices, von
//! Neumann entropy, and ensemble experiments over i.i.d. entry laws.
//!
//! Entropies here default to nats.

use crate::ensembles::{sample_iid_with_rng, EntryDistribution, RngStream};
use crate::error::{Error, Result};
use crate::exec;
use crate::fermion::EntropyBase;
use crate::spectral::{eigh, ComplexMatrix, HermitianMatrix};

/// Tolerance below which a density-matrix eigenvalue is a contract violation.
pub const EIGENVALUE_TOL: f64 = 1e-8;

/// Normalized state of a bipartite system with radiation dimension `L` and
/// environment dimension `K`, stored as an `L x K` amplitude array.
#[derive(Clone, Debug)]
pub struct BipartiteState {
    amplitudes: ComplexMatrix,
}

impl BipartiteState {
    pub fn l(&self) -> usize {
        self.amplitudes.rows()
    }

    pub fn k(&self) -> usize {
        self.amplitudes.cols()
    }

    pub fn amplitudes(&self) -> &ComplexMatrix {
        &self.amplitudes
    }

    /// Sum of squared amplitude moduli; 1 within 1e-12 by construction.
    pub fn norm_sqr(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.l() {
            for j in 0..self.k() {
                acc += self.amplitudes.get(i, j).norm_sqr();
            }
        }
        acc
    }
}

/// Density matrix of the radiation subsystem: Hermitian, PSD, unit trace.
#[derive(Clone, Debug)]
pub struct ReducedDensityMatrix {
    matrix: HermitianMatrix,
}

impl ReducedDensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }
}

/// Draws `X` with i.i.d. entries from `dist` and normalizes to the unit
/// sphere. For Gaussian entries the result is exactly Haar on the sphere.
pub fn random_pure_state(
    stream: &RngStream,
    l: usize,
    k: usize,
    dist: EntryDistribution,
) -> Result<BipartiteState> {
    if l == 0 || k == 0 {
        return Err(Error::invalid("L", "dimensions must be >= 1"));
    }
    let mut rng = stream.rng();
    for _attempt in 0..2 {
        let x = sample_iid_with_rng(&mut rng, l, k, dist);
        let mut norm_sqr = 0.0;
        for i in 0..l {
            for j in 0..k {
                norm_sqr += x.get(i, j).norm_sqr();
            }
        }
        if norm_sqr > 0.0 {
            let inv = 1.0 / norm_sqr.sqrt();
            let amplitudes = ComplexMatrix::from_fn(l, k, |i, j| x.get(i, j) * inv)?;
            return Ok(BipartiteState { amplitudes });
        }
    }
    Err(Error::DegenerateState)
}

/// Reduced density matrix of the radiation: `rho = A A*` for the normalized
/// `L x K` amplitude array `A`.
pub fn reduced_density_matrix(state: &BipartiteState) -> ReducedDensityMatrix {
    ReducedDensityMatrix {
        matrix: state.amplitudes.gram(),
    }
}

/// Von Neumann entropy `-sum lambda_i log lambda_i` with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &ReducedDensityMatrix, base: EntropyBase) -> Result<f64> {
    let dec = eigh(rho.matrix())?;
    let mut s = 0.0;
    for &v in dec.eigenvalues() {
        if v < -EIGENVALUE_TOL {
            return Err(Error::SpectrumOutOfUnitRange {
                value: v,
                tol: EIGENVALUE_TOL,
            });
        }
        if v > 0.0 {
            s -= v * match base {
                EntropyBase::Bits => v.log2(),
                EntropyBase::Nats => v.ln(),
            };
        }
    }
    Ok(s.max(0.0))
}

/// Outcome of a Page experiment: per-sample entropies in sample order plus
/// their mean and standard error.
#[derive(Clone, Debug)]
pub struct PageExperiment {
    pub mean: f64,
    pub std_error: f64,
    pub samples: Vec<f64>,
}

/// Replicates `random_pure_state -> entropy` over `n_samples` independent
/// streams derived from `stream` (indices `stream + 0 .. stream + n`).
///
/// Samples fan out across workers; the mean is reduced in sample-index
/// order, so results are bit-identical however many workers run.
pub fn page_experiment(
    stream: &RngStream,
    l: usize,
    k: usize,
    dist: EntryDistribution,
    n_samples: usize,
    base: EntropyBase,
) -> Result<PageExperiment> {
    if n_samples == 0 {
        return Err(Error::invalid("n_samples", "must be >= 1"));
    }
    let samples: Vec<Result<f64>> = exec::map_indexed(n_samples, |i| {
        let state = random_pure_state(&stream.offset(i as u64), l, k, dist)?;
        von_neumann_entropy(&reduced_density_matrix(&state), base)
    });
    let samples: Vec<f64> = samples.into_iter().collect::<Result<_>>()?;
    let mean = samples.iter().sum::<f64>() / n_samples as f64;
    let var = samples
        .iter()
        .map(|s| (s - mean) * (s - mean))
        .sum::<f64>()
        / n_samples as f64;
    let std_error = (var / n_samples as f64).sqrt();
    Ok(PageExperiment {
        mean,
        std_error,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn single_mode_state_is_a_phase() {
        let s = random_pure_state(
            &RngStream::new(1, 0),
            1,
            1,
            EntryDistribution::ComplexGaussian,
        )
        .unwrap();
        assert_relative_eq!(s.amplitudes().get(0, 0).norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn states_are_normalized() {
        for (idx, dist) in [
            EntryDistribution::ComplexGaussian,
            EntryDistribution::ComplexRademacher,
            EntryDistribution::ComplexUniformDisk,
        ]
        .into_iter()
        .enumerate()
        {
            let s = random_pure_state(&RngStream::new(7, idx as u64), 5, 9, dist).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn first_amplitude_moment_on_small_sphere() {
        // E |psi_11|^2 = 1 / (L K) by symmetry of the sphere measure
        let samples = 20_000;
        let mut acc = 0.0;
        let mut acc2 = 0.0;
        for i in 0..samples {
            let s = random_pure_state(
                &RngStream::new(404, i),
                2,
                2,
                EntryDistribution::ComplexGaussian,
            )
            .unwrap();
            let v = s.amplitudes().get(0, 0).norm_sqr();
            acc += v;
            acc2 += v * v;
        }
        let mean = acc / samples as f64;
        let var = (acc2 / samples as f64 - mean * mean).max(0.0);
        let se = (var / samples as f64).sqrt();
        assert!((mean - 0.25).abs() <= 5.0 * se, "mean {mean} se {se}");
    }

    #[test]
    fn product_state_has_pure_reduced_matrix() {
        // rank-one amplitudes: rho has spectrum (1, 0, ...)
        let amplitudes = ComplexMatrix::from_fn(3, 4, |i, j| {
            let row = [0.5, 0.5, std::f64::consts::FRAC_1_SQRT_2][i];
            let col = [0.5, 0.5, 0.5, 0.5][j];
            crate::spectral::C64::new(row * col, 0.0)
        })
        .unwrap();
        let state = BipartiteState { amplitudes };
        assert!((state.norm_sqr() - 1.0).abs() <= 1e-12);
        let rho = reduced_density_matrix(&state);
        let dec = eigh(rho.matrix()).unwrap();
        assert_relative_eq!(dec.eigenvalues()[2], 1.0, epsilon = 1e-12);
        assert!(dec.eigenvalues()[1].abs() <= 1e-12);
        let s = von_neumann_entropy(&rho, EntropyBase::Nats).unwrap();
        assert!(s.abs() <= 1e-10);
    }

    #[test]
    fn maximally_entangled_state() {
        // A = I / sqrt(L) gives rho = I / L and S = log L
        let l = 4;
        let amplitudes = ComplexMatrix::from_fn(l, l, |i, j| {
            if i == j {
                crate::spectral::C64::new(1.0 / (l as f64).sqrt(), 0.0)
            } else {
                crate::spectral::C64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let rho = reduced_density_matrix(&BipartiteState { amplitudes });
        for i in 0..l {
            assert_relative_eq!(rho.matrix().get(i, i).re, 0.25, epsilon = 1e-15);
        }
        let s = von_neumann_entropy(&rho, EntropyBase::Nats).unwrap();
        assert_relative_eq!(s, (l as f64).ln(), epsilon = 1e-12);
    }

    #[test]
    fn random_reduced_matrix_contract() {
        let state = random_pure_state(
            &RngStream::new(11, 3),
            6,
            10,
            EntryDistribution::ComplexGaussian,
        )
        .unwrap();
        let rho = reduced_density_matrix(&state);
        assert!((rho.trace() - 1.0).abs() <= 1e-12);
        let dec = eigh(rho.matrix()).unwrap();
        assert!(dec.eigenvalues().iter().all(|&v| v >= -1e-10));
    }

    #[test]
    fn entropy_bounded_by_log_min_dim() {
        for idx in 0..10 {
            let (l, k) = (5, 3);
            let state = random_pure_state(
                &RngStream::new(88, idx),
                l,
                k,
                EntryDistribution::ComplexUniformDisk,
            )
            .unwrap();
            let s = von_neumann_entropy(&reduced_density_matrix(&state), EntropyBase::Nats)
                .unwrap();
            assert!(s >= 0.0);
            assert!(s <= (l.min(k) as f64).ln() + 1e-9);
        }
    }

    #[test]
    fn subsystem_symmetry_per_draw() {
        // entropy from the L x L Gram equals entropy from the K x K Gram
        for idx in 0..6 {
            let (l, k) = (4, 7);
            let state = random_pure_state(
                &RngStream::new(5150, idx),
                l,
                k,
                EntryDistribution::ComplexGaussian,
            )
            .unwrap();
            let s_l = von_neumann_entropy(&reduced_density_matrix(&state), EntropyBase::Nats)
                .unwrap();
            let flipped = ComplexMatrix::from_fn(k, l, |i, j| state.amplitudes().get(j, i).conj())
                .unwrap();
            let s_k = von_neumann_entropy(
                &ReducedDensityMatrix {
                    matrix: flipped.gram(),
                },
                EntropyBase::Nats,
            )
            .unwrap();
            assert!((s_l - s_k).abs() <= 1e-9, "L-side {s_l} vs K-side {s_k}");
        }
    }

    #[test]
    fn trivial_subsystem_has_zero_entropy() {
        let exp = page_experiment(
            &RngStream::new(3, 0),
            1,
            6,
            EntryDistribution::ComplexGaussian,
            50,
            EntropyBase::Nats,
        )
        .unwrap();
        assert!(exp.samples.iter().all(|&s| s.abs() <= 1e-10));
        assert!(exp.mean.abs() <= 1e-10);
    }

    #[test]
    fn page_experiment_matches_exact_mean_small() {
        // Monte Carlo against page_exact(2, 2) = 1/3 nats
        let exp = page_experiment(
            &RngStream::new(2024, 0),
            2,
            2,
            EntryDistribution::ComplexGaussian,
            20_000,
            EntropyBase::Nats,
        )
        .unwrap();
        let expect = crate::theory::page_exact(2, 2).unwrap();
        assert!(
            (exp.mean - expect).abs() <= 3.0 * exp.std_error,
            "mean {} expect {} se {}",
            exp.mean,
            expect,
            exp.std_error
        );
    }

    #[test]
    fn page_experiment_is_deterministic() {
        let run = || {
            page_experiment(
                &RngStream::new(9, 0),
                3,
                4,
                EntryDistribution::ComplexRademacher,
                64,
                EntropyBase::Nats,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    }

    #[test]
    fn fluctuations_shrink_with_size() {
        let std_of = |l: usize, k: usize, n: usize, seed: u64| {
            let exp = page_experiment(
                &RngStream::new(seed, 0),
                l,
                k,
                EntryDistribution::ComplexGaussian,
                n,
                EntropyBase::Nats,
            )
            .unwrap();
            exp.std_error * (n as f64).sqrt()
        };
        // sample std at (64, 128) exceeds that at (256, 512)
        let small = std_of(64, 128, 200, 1);
        let large = std_of(256, 512, 200, 2);
        assert!(
            small > large,
            "std at (64,128) = {small} should exceed std at (256,512) = {large}"
        );
    }
}
