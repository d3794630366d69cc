//! Dense complex matrices with structural invariants, plus the Hermitian
//! eigendecomposition everything else is built on.
//!
//! Indexing follows Rust conventions (0-based); a "leading block" of size L
//! is rows `0..l` and columns `0..l`.

use faer::linalg::solvers::{Qr, SelfAdjointEigen};
use faer::{Mat, MatRef, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Absolute tolerance for the Hermiticity invariant.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Max-norm tolerance for `U*U - I` in the unitarity invariant.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Relative tolerance for the eigendecomposition reconstruction residual.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Dense complex matrix in row-major semantics; all entries finite.
#[derive(Clone, Debug)]
pub struct ComplexMatrix {
    mat: Mat<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from a function of (row, col), rejecting non-finite entries.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> C64,
    ) -> Result<Self> {
        let mat = Mat::from_fn(rows, cols, |i, j| f(i, j));
        for j in 0..cols {
            for i in 0..rows {
                let z = mat[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(Self { mat })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            mat: Mat::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mat: Mat::identity(n, n),
        }
    }

    pub fn rows(&self) -> usize {
        self.mat.nrows()
    }

    pub fn cols(&self) -> usize {
        self.mat.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.mat[(row, col)]
    }

    /// Largest entry modulus; zero for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 0..self.cols() {
            for i in 0..self.rows() {
                m = m.max(self.mat[(i, j)].norm());
            }
        }
        m
    }

    /// Copies the sub-block `rows` x `cols` out of the matrix.
    pub fn block(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Result<ComplexMatrix> {
        if rows.end > self.rows() || cols.end > self.cols() || rows.start > rows.end
            || cols.start > cols.end
        {
            return Err(Error::BlockOutOfBounds {
                row_end: rows.end,
                col_end: cols.end,
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let sub = self
            .mat
            .as_ref()
            .submatrix(rows.start, cols.start, rows.len(), cols.len());
        Ok(ComplexMatrix {
            mat: sub.to_owned(),
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix {
            mat: self.mat.adjoint().to_owned(),
        }
    }

    /// Matrix product; panics on an inner-dimension mismatch.
    pub fn matmul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols(),
            rhs.rows(),
            "inner dimensions must agree: {} vs {}",
            self.cols(),
            rhs.rows()
        );
        ComplexMatrix {
            mat: &self.mat * &rhs.mat,
        }
    }

    /// Gram matrix `A A*`, exactly Hermitian by construction.
    pub fn gram(&self) -> HermitianMatrix {
        let n = self.rows();
        let prod: Mat<C64> = &self.mat * self.mat.adjoint();
        let mut out = Mat::<C64>::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = C64::new(prod[(i, i)].re, 0.0);
            for j in 0..i {
                let z = prod[(i, j)];
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        HermitianMatrix {
            m: ComplexMatrix { mat: out },
        }
    }

    pub(crate) fn as_mat(&self) -> MatRef<'_, C64> {
        self.mat.as_ref()
    }
}

/// Square complex matrix with `A = A*` within [`HERMITICITY_TOL`].
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    m: ComplexMatrix,
}

impl HermitianMatrix {
    /// Validates the Hermiticity invariant of an arbitrary complex matrix.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::invalid(
                "matrix",
                format!("expected square, got {} x {}", m.rows(), m.cols()),
            ));
        }
        let n = m.rows();
        let mut max_dev = 0.0f64;
        for i in 0..n {
            max_dev = max_dev.max(m.get(i, i).im.abs());
            for j in 0..i {
                let d = m.get(i, j) - m.get(j, i).conj();
                max_dev = max_dev.max(d.norm());
            }
        }
        if max_dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                max_dev,
                tol: HERMITICITY_TOL,
            });
        }
        Ok(Self { m })
    }

    /// Builds an exactly Hermitian matrix from its lower triangle and real diagonal.
    ///
    /// `f(i, j)` is only consulted for `i >= j`; the imaginary part of the
    /// diagonal is discarded.
    pub fn from_lower(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut mat = Mat::<C64>::zeros(n, n);
        for i in 0..n {
            let d = f(i, i);
            if !d.re.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: i });
            }
            mat[(i, i)] = C64::new(d.re, 0.0);
            for j in 0..i {
                let z = f(i, j);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                mat[(i, j)] = z;
                mat[(j, i)] = z.conj();
            }
        }
        Ok(Self {
            m: ComplexMatrix { mat },
        })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m.get(row, col)
    }

    pub fn max_abs(&self) -> f64 {
        self.m.max_abs()
    }

    /// Real trace (diagonal imaginary parts are zero by the invariant).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    pub fn as_complex(&self) -> &ComplexMatrix {
        &self.m
    }

    /// Leading principal block of size `l`, still Hermitian.
    pub fn leading_block(&self, l: usize) -> Result<HermitianMatrix> {
        let b = self.m.block(0..l, 0..l)?;
        Ok(HermitianMatrix { m: b })
    }

    /// Max-norm of `A^2 - A`; small for projections.
    pub fn idempotency_defect(&self) -> f64 {
        let sq: Mat<C64> = self.m.as_mat() * self.m.as_mat();
        let mut max_dev = 0.0f64;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                max_dev = max_dev.max((sq[(i, j)] - self.m.get(i, j)).norm());
            }
        }
        max_dev
    }
}

/// Square complex matrix with `||U*U - I||_max <=` [`UNITARITY_TOL`].
#[derive(Clone, Debug)]
pub struct UnitaryMatrix {
    m: ComplexMatrix,
}

impl UnitaryMatrix {
    /// Validates the unitarity invariant.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::invalid(
                "matrix",
                format!("expected square, got {} x {}", m.rows(), m.cols()),
            ));
        }
        let max_dev = unitarity_defect(m.as_mat());
        if max_dev > UNITARITY_TOL {
            return Err(Error::NotUnitary {
                max_dev,
                tol: UNITARITY_TOL,
            });
        }
        Ok(Self { m })
    }

    pub(crate) fn from_mat_unchecked(mat: Mat<C64>) -> Self {
        Self {
            m: ComplexMatrix { mat },
        }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.m.get(row, col)
    }

    pub fn as_complex(&self) -> &ComplexMatrix {
        &self.m
    }

    /// Max-norm of `U*U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(self.m.as_mat())
    }
}

fn unitarity_defect(u: MatRef<'_, C64>) -> f64 {
    let prod: Mat<C64> = u.adjoint() * u;
    let n = u.nrows();
    let mut max_dev = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let expect = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            max_dev = max_dev.max((prod[(i, j)] - expect).norm());
        }
    }
    max_dev
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
///
/// Column `alpha` of `eigenvectors` belongs to `eigenvalues[alpha]`. Each
/// column carries a fixed phase: its first component of non-negligible
/// modulus is real positive, so the decomposition is deterministic for a
/// fixed input.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: UnitaryMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &UnitaryMatrix {
        &self.eigenvectors
    }

    /// Max-norm residual of `H - V diag(lambda) V*`.
    pub fn reconstruction_residual(&self, h: &HermitianMatrix) -> f64 {
        let n = self.dim();
        let v = self.eigenvectors.as_complex().as_mat();
        let mut scaled = Mat::<C64>::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] = v[(i, j)] * C64::new(self.eigenvalues[j], 0.0);
            }
        }
        let rebuilt: Mat<C64> = scaled.as_ref() * v.adjoint();
        let mut max_dev = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                max_dev = max_dev.max((rebuilt[(i, j)] - h.get(i, j)).norm());
            }
        }
        max_dev
    }
}

/// Phase entries below this are treated as zero when fixing eigenvector phases.
const PHASE_TOL: f64 = 1e-12;

/// Full eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come out ascending; eigenvector phases follow the convention
/// documented on [`SpectralDecomposition`].
pub fn eigh(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = h.dim();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: UnitaryMatrix::from_mat_unchecked(Mat::zeros(0, 0)),
        });
    }
    let eig = SelfAdjointEigen::new(h.m.as_mat(), Side::Lower)
        .map_err(|_| Error::EighDidNotConverge)?;
    let raw_vals = eig.S();
    let raw_vecs = eig.U();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw_vals[a].re.total_cmp(&raw_vals[b].re));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = Mat::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues.push(raw_vals[src].re);
        let phase = (0..n)
            .map(|i| raw_vecs[(i, src)])
            .find(|z| z.norm() > PHASE_TOL)
            .map(|z| z.conj() / z.norm())
            .unwrap_or_else(|| C64::new(1.0, 0.0));
        for i in 0..n {
            vectors[(i, dst)] = raw_vecs[(i, src)] * phase;
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: UnitaryMatrix::from_mat_unchecked(vectors),
    })
}

/// Thin QR of a square complex matrix; returns `(Q, diag(R))`.
///
/// Used by the Haar sampler, which needs the diagonal of `R` for the phase
/// correction.
pub(crate) fn qr_square(m: MatRef<'_, C64>) -> (Mat<C64>, Vec<C64>) {
    let qr = Qr::new(m);
    let q = qr.compute_Q();
    let r = qr.R();
    let diag = (0..m.ncols()).map(|i| r[(i, i)]).collect();
    (q, diag)
}
