//! Random samplers (GUE, Haar unitary, i.i.d.-entry matrices) and the
//! deterministic Kac model, all driven by reproducible seeded streams.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::spectral::{ComplexMatrix, HermitianMatrix, UnitaryMatrix, C64};

/// One member of a family of statistically independent random streams.
///
/// Streams with the same `(master_seed, stream_index)` pair produce
/// bit-identical sequences; distinct pairs are independent. Every sampler is
/// a deterministic function of its stream and parameters, so ensembles can
/// fan out across workers and still reproduce exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngStream {
    master_seed: u64,
    stream_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self {
            master_seed,
            stream_index,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Stream with the same master seed and index shifted by `offset`.
    pub fn offset(&self, offset: u64) -> Self {
        Self {
            master_seed: self.master_seed,
            stream_index: self.stream_index.wrapping_add(offset),
        }
    }

    /// Fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Entry laws for i.i.d. complex matrices, all normalized to mean 0,
/// `E{X^2} = 0`, `E{|X|^2} = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryDistribution {
    /// `(a + ib)/sqrt(2)` with independent standard normals `a`, `b`.
    ComplexGaussian,
    /// Uniform on the four phases `{1, -1, i, -i}`.
    ComplexRademacher,
    /// Uniform on the disk of radius `sqrt(2)`.
    ComplexUniformDisk,
}

impl EntryDistribution {
    pub fn sample(&self, rng: &mut impl Rng) -> C64 {
        match self {
            EntryDistribution::ComplexGaussian => {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
            }
            EntryDistribution::ComplexRademacher => match rng.random_range(0..4u8) {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(-1.0, 0.0),
                2 => C64::new(0.0, 1.0),
                _ => C64::new(0.0, -1.0),
            },
            EntryDistribution::ComplexUniformDisk => {
                let r = (2.0 * rng.random::<f64>()).sqrt();
                let theta = std::f64::consts::TAU * rng.random::<f64>();
                C64::new(r * theta.cos(), r * theta.sin())
            }
        }
    }
}

/// GUE draw scaled so the limiting spectral radius is `eps0`.
///
/// `M = eps0 (4N)^{-1/2} X` with `X` Hermitian, real `N(0,1)` diagonal and
/// complex Gaussian off-diagonal entries of unit second absolute moment.
pub fn sample_gue(stream: &RngStream, n: usize, eps0: f64) -> Result<HermitianMatrix> {
    if !(eps0 > 0.0) {
        return Err(Error::invalid("eps0", format!("must be > 0, got {eps0}")));
    }
    if n == 0 {
        return Err(Error::invalid("N", "must be >= 1"));
    }
    let mut rng = stream.rng();
    let scale = eps0 / (4.0 * n as f64).sqrt();
    // row-major draw order over the lower triangle, diagonal first per row
    let mut entries = vec![C64::new(0.0, 0.0); n * (n + 1) / 2];
    let mut idx = 0;
    for row in 0..n {
        let d: f64 = StandardNormal.sample(&mut rng);
        entries[idx] = C64::new(d * scale, 0.0);
        idx += 1;
        for _ in 0..row {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            entries[idx] = C64::new(re, im) * (scale * std::f64::consts::FRAC_1_SQRT_2);
            idx += 1;
        }
    }
    let row_base = |i: usize| i * (i + 1) / 2;
    HermitianMatrix::from_lower(n, |i, j| {
        if i == j {
            entries[row_base(i)]
        } else {
            entries[row_base(i) + 1 + j]
        }
    })
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// diagonal-phase correction.
///
/// Each column of `Q` is multiplied by the phase of the matching diagonal
/// entry of `R`; without this fix the QR output is not Haar.
pub fn sample_haar_unitary(stream: &RngStream, n: usize) -> UnitaryMatrix {
    assert!(n >= 1, "dimension must be >= 1");
    let mut rng = stream.rng();
    let ginibre = faer::Mat::<C64>::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let (mut q, rdiag) = crate::spectral::qr_square(ginibre.as_ref());
    for (j, r) in rdiag.iter().enumerate() {
        let norm = r.norm();
        let phase = if norm > 0.0 { r / norm } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    UnitaryMatrix::from_mat_unchecked(q)
}

/// Matrix of i.i.d. entries from `dist`, drawn in row-major order.
pub fn sample_iid_matrix(
    stream: &RngStream,
    rows: usize,
    cols: usize,
    dist: EntryDistribution,
) -> ComplexMatrix {
    let mut rng = stream.rng();
    sample_iid_with_rng(&mut rng, rows, cols, dist)
}

/// Same as [`sample_iid_matrix`] but continues an existing generator.
pub fn sample_iid_with_rng(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    dist: EntryDistribution,
) -> ComplexMatrix {
    assert!(rows >= 1 && cols >= 1, "dimensions must be >= 1");
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        entries.push(dist.sample(rng));
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| entries[i * cols + j])
        .expect("sampled entries are finite")
}

/// Kac one-body Hamiltonian `eps0 N^{-1} 1_N`: rank one, eigenvalues
/// `{0 (mult N-1), eps0}`.
pub fn kac_hamiltonian(n: usize, eps0: f64) -> Result<HermitianMatrix> {
    if !(eps0 > 0.0) {
        return Err(Error::invalid("eps0", format!("must be > 0, got {eps0}")));
    }
    if n == 0 {
        return Err(Error::invalid("N", "must be >= 1"));
    }
    let v = eps0 / n as f64;
    HermitianMatrix::from_lower(n, |_, _| C64::new(v, 0.0))
}

/// Fermi projection of the Kac model for a Fermi energy in `(0, eps0)`,
/// i.e. with only the zero eigenspace filled: `I - P_d`, built analytically
/// to sidestep the (N-1)-fold degeneracy of the eigensolver route.
pub fn kac_fermi_projection(n: usize) -> HermitianMatrix {
    assert!(n >= 1, "dimension must be >= 1");
    let off = -1.0 / n as f64;
    HermitianMatrix::from_lower(n, |i, j| {
        if i == j {
            C64::new(1.0 + off, 0.0)
        } else {
            C64::new(off, 0.0)
        }
    })
    .expect("entries are finite")
}
