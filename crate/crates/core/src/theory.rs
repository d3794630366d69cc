//! Closed-form limit laws and predicted constants: semicircle CDF and
//! quantile, Wachter and Marchenko-Pastur distributions, the specific
//! entropy, the asymptotic coefficients, and Page's exact and asymptotic
//! formulas.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fermion::{h0, h_clamped, EntropyBase};
use crate::quad;

/// Default absolute tolerance for law integrals; comfortably inside the
/// 1e-6 mass and 1e-7 entropy promises.
pub const QUAD_TOL: f64 = 1e-9;

/// Atomic-plus-absolutely-continuous probability measure on an interval.
///
/// The density is stored as `sqrt((hi - x)(x - lo)) * smooth(x)` so that
/// integrals run through the edge-stable substitution in [`quad`].
pub struct LimitLaw {
    atoms: Vec<(f64, f64)>,
    support: (f64, f64),
    smooth: Box<dyn Fn(quad::SqrtEdgePoint) -> f64 + Send + Sync>,
}

impl LimitLaw {
    /// Atoms as `(location, mass)` pairs; zero-mass atoms are omitted.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Mass of the atom at `location`, zero if there is none.
    pub fn atom_mass(&self, location: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|(loc, _)| *loc == location)
            .map(|(_, m)| m)
            .sum()
    }

    /// Support `[lo, hi]` of the absolutely continuous part.
    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Density of the absolutely continuous part; zero outside the support.
    pub fn density(&self, x: f64) -> f64 {
        let (lo, hi) = self.support;
        if x <= lo || x >= hi {
            return 0.0;
        }
        let pt = quad::SqrtEdgePoint {
            x,
            from_lo: x - lo,
            from_hi: hi - x,
        };
        (pt.from_lo * pt.from_hi).sqrt() * (self.smooth)(pt)
    }

    /// Integral of `f` against the absolutely continuous part.
    pub fn integrate_ac(&self, f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
        let (lo, hi) = self.support;
        quad::sqrt_weighted(|pt| f(pt.x) * (self.smooth)(pt), lo, hi, lo, hi, tol)
    }

    pub fn ac_mass(&self, tol: f64) -> Result<f64> {
        self.integrate_ac(|_| 1.0, tol)
    }

    pub fn total_mass(&self, tol: f64) -> Result<f64> {
        let atoms: f64 = self.atoms.iter().map(|(_, m)| m).sum();
        Ok(atoms + self.ac_mass(tol)?)
    }

    /// First moment, atoms included.
    pub fn mean(&self, tol: f64) -> Result<f64> {
        let atoms: f64 = self.atoms.iter().map(|(loc, m)| loc * m).sum();
        Ok(atoms + self.integrate_ac(|x| x, tol)?)
    }

    /// Distribution function `F(x)`, atoms included.
    pub fn cdf(&self, x: f64, tol: f64) -> Result<f64> {
        let (lo, hi) = self.support;
        let atoms: f64 = self
            .atoms
            .iter()
            .filter(|(loc, _)| *loc <= x)
            .map(|(_, m)| m)
            .sum();
        if x <= lo {
            return Ok(atoms);
        }
        let ac = quad::sqrt_weighted(
            |pt| (self.smooth)(pt),
            lo,
            hi,
            lo,
            x.min(hi),
            tol,
        )?;
        Ok(atoms + ac)
    }
}

fn check_open_unit(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::invalid(
            name,
            format!("must lie strictly inside (0, 1), got {v}"),
        ));
    }
    Ok(())
}

/// Semicircle distribution function on `[-eps0, eps0]`, closed form.
pub fn semicircle_cdf(eps: f64, eps0: f64) -> f64 {
    assert!(eps0 > 0.0, "eps0 must be positive");
    if eps <= -eps0 {
        return 0.0;
    }
    if eps >= eps0 {
        return 1.0;
    }
    0.5 + eps * (eps0 * eps0 - eps * eps).sqrt() / (PI * eps0 * eps0)
        + (eps / eps0).asin() / PI
}

/// Inverse of [`semicircle_cdf`]: the Fermi energy matching a filling
/// fraction `kappa`.
pub fn semicircle_quantile(kappa: f64, eps0: f64) -> Result<f64> {
    assert!(eps0 > 0.0, "eps0 must be positive");
    check_open_unit("kappa", kappa)?;
    let mut lo = -eps0;
    let mut hi = eps0;
    // bisection; the CDF is strictly increasing on the support
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if semicircle_cdf(mid, eps0) < kappa {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * eps0 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Wachter distribution: the limiting spectral law of the `L x L` block of
/// a Haar-rotated rank-`K` projection, with `K/N -> kappa`, `L/N -> lambda`.
pub fn wachter_law(kappa: f64, lambda: f64) -> Result<LimitLaw> {
    check_open_unit("kappa", kappa)?;
    check_open_unit("lambda", lambda)?;
    let m0 = (lambda - kappa).max(0.0) / lambda;
    let m1 = (lambda + kappa - 1.0).max(0.0) / lambda;
    let a = (kappa * (1.0 - lambda)).sqrt();
    let b = (lambda * (1.0 - kappa)).sqrt();
    let p_minus = (a - b) * (a - b);
    let p_plus = ((a + b) * (a + b)).min(1.0);
    let mut atoms = Vec::new();
    if m0 > 0.0 {
        atoms.push((0.0, m0));
    }
    if m1 > 0.0 {
        atoms.push((1.0, m1));
    }
    // density sqrt((p+ - p)(p - p-)) / (2 pi lambda p (1 - p)); the edge
    // distances keep p and 1 - p exact when the support touches 0 or 1
    let one_minus_hi = 1.0 - p_plus;
    let norm = 2.0 * PI * lambda;
    Ok(LimitLaw {
        atoms,
        support: (p_minus, p_plus),
        smooth: Box::new(move |pt| {
            let p = p_minus + pt.from_lo;
            let q = one_minus_hi + pt.from_hi;
            1.0 / (norm * p * q)
        }),
    })
}

/// Specific entropy `s_{kappa lambda}`: the per-site coefficient of the
/// volume law, computed by quadrature against the Wachter density.
///
/// Absolute error at most 1e-7; the atoms at 0 and 1 do not contribute
/// because `h` vanishes there.
pub fn specific_entropy(kappa: f64, lambda: f64, base: EntropyBase) -> Result<f64> {
    let law = wachter_law(kappa, lambda)?;
    law.integrate_ac(|p| h_clamped(p.clamp(0.0, 1.0), base), QUAD_TOL)
}

/// Volume-law coefficients at `(kappa, lambda)`, all in bits:
/// `c_minus <= s <= c_plus`, and `c_sqrt` from the square-root upper bound.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticCoefficients {
    pub c_minus: f64,
    pub c_plus: f64,
    pub c_sqrt: f64,
    pub s: f64,
}

/// Computes the coefficient quadruple. `lambda = 0` is the successive-limit
/// regime, where the specific entropy degenerates to `h(kappa) = c_plus`.
pub fn coefficients(kappa: f64, lambda: f64) -> Result<AsymptoticCoefficients> {
    check_open_unit("kappa", kappa)?;
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::invalid(
            "lambda",
            format!("must lie in [0, 1), got {lambda}"),
        ));
    }
    let c_minus = 4.0 * kappa * (1.0 - kappa) * (1.0 - lambda);
    let c_plus = h0(c_minus / 4.0, EntropyBase::Bits)?;
    let s = if lambda > 0.0 {
        specific_entropy(kappa, lambda, EntropyBase::Bits)?
    } else {
        h_clamped(kappa, EntropyBase::Bits)
    };
    Ok(AsymptoticCoefficients {
        c_minus,
        c_plus,
        c_sqrt: c_minus.sqrt(),
        s,
    })
}

/// Which parameter a Table-1 style row holds fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedParameter {
    Kappa(f64),
    Lambda(f64),
}

/// Maximal distances between coefficient curves over a grid of the free
/// parameter: `(max[s - c_minus], max[c_plus - s], max[c_plus - c_minus])`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DistanceTriple {
    pub c_minus_to_s: f64,
    pub s_to_c_plus: f64,
    pub c_minus_to_c_plus: f64,
}

pub fn table1_distances(fixed: FixedParameter, grid_step: f64) -> Result<DistanceTriple> {
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(Error::invalid(
            "grid_step",
            format!("must lie in (0, 0.01], got {grid_step}"),
        ));
    }
    let v = match fixed {
        FixedParameter::Kappa(v) | FixedParameter::Lambda(v) => v,
    };
    check_open_unit("fixed", v)?;
    let steps = (1.0 / grid_step).round() as usize;
    let mut out = DistanceTriple::default();
    for i in 1..steps {
        let free = i as f64 / steps as f64;
        let (kappa, lambda) = match fixed {
            FixedParameter::Kappa(k) => (k, free),
            FixedParameter::Lambda(l) => (free, l),
        };
        let c = coefficients(kappa, lambda)?;
        out.c_minus_to_s = out.c_minus_to_s.max(c.s - c.c_minus);
        out.s_to_c_plus = out.s_to_c_plus.max(c.c_plus - c.s);
        out.c_minus_to_c_plus = out.c_minus_to_c_plus.max(c.c_plus - c.c_minus);
    }
    Ok(out)
}

/// Marchenko-Pastur law for the `L x L` Gram matrix `X X* / K` with
/// `L / K -> lambda`: atom `max(1 - 1/lambda, 0)` at zero plus the density
/// on `[(1 - sqrt(lambda))^2, (1 + sqrt(lambda))^2]`.
pub fn marchenko_pastur_law(lambda: f64) -> Result<LimitLaw> {
    if !(lambda > 0.0) {
        return Err(Error::invalid(
            "lambda",
            format!("must be > 0, got {lambda}"),
        ));
    }
    let root = lambda.sqrt();
    let w_minus = (1.0 - root) * (1.0 - root);
    let w_plus = (1.0 + root) * (1.0 + root);
    let mut atoms = Vec::new();
    let m0 = (1.0 - 1.0 / lambda).max(0.0);
    if m0 > 0.0 {
        atoms.push((0.0, m0));
    }
    let norm = 2.0 * PI * lambda;
    Ok(LimitLaw {
        atoms,
        support: (w_minus, w_plus),
        smooth: Box::new(move |pt| {
            let w = w_minus + pt.from_lo;
            1.0 / (norm * w)
        }),
    })
}

/// Page's exact mean entanglement entropy (nats) of an `L`-dimensional
/// subsystem of a Haar-random pure state on `C^L (x) C^K`, for `L <= K`:
/// `sum_{t = K+1}^{KL} 1/t - (L - 1) / (2K)`.
pub fn page_exact(l: usize, k: usize) -> Result<f64> {
    if l == 0 || k == 0 {
        return Err(Error::invalid("L", "dimensions must be >= 1"));
    }
    if l > k {
        return Err(Error::invalid(
            "L",
            format!("formula requires L <= K, got L = {l}, K = {k}; swap the arguments (subsystem symmetry)"),
        ));
    }
    let kl = (k as u64) * (l as u64);
    // ascending terms for accurate accumulation
    let mut sum = 0.0;
    for t in ((k as u64 + 1)..=kl).rev() {
        sum += 1.0 / t as f64;
    }
    Ok(sum - (l as f64 - 1.0) / (2.0 * k as f64))
}

/// Deficit of the Page entropy below `log L` (nats) in the proportional
/// regime `L / K -> lambda`: `lambda / 2` up to `lambda = 1`, then
/// `1 / (2 lambda) + log lambda`; equivalently
/// `min(lambda, 1/lambda)/2 + log max(1, lambda)`.
pub fn page_deficit(lambda: f64) -> f64 {
    assert!(lambda > 0.0, "lambda must be positive");
    0.5 * lambda.min(1.0 / lambda) + lambda.max(1.0).ln()
}
