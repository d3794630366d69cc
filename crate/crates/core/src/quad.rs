//! Adaptive Gauss-Kronrod quadrature, with a dedicated change of variables
//! for densities carrying square-root edge factors.
//!
//! All nodes are interior, so integrands may blow up (removably) at the
//! interval endpoints without producing NaNs.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [0, 1] side (symmetric), with the embedded
// 7-point Gauss rule on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

const MAX_DEPTH: u32 = 60;

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half.abs())
}

fn refine(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    estimate: f64,
    err: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    if !estimate.is_finite() {
        return Err(Error::QuadratureDidNotConverge {
            error_estimate: f64::INFINITY,
            tol,
        });
    }
    if err <= tol {
        return Ok(estimate);
    }
    if depth == 0 {
        return Err(Error::QuadratureDidNotConverge {
            error_estimate: err,
            tol,
        });
    }
    let mid = 0.5 * (a + b);
    let (left, el) = gk15(f, a, mid);
    let (right, er) = gk15(f, mid, b);
    let half_tol = 0.5 * tol;
    Ok(refine(f, a, mid, left, el, half_tol, depth - 1)?
        + refine(f, mid, b, right, er, half_tol, depth - 1)?)
}

/// Adaptive quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (estimate, err) = gk15(&f, a, b);
    refine(&f, a, b, estimate, err, tol, MAX_DEPTH)
}

/// Point handed to [`sqrt_weighted`] integrands, with the distances to the
/// support edges computed cancellation-free.
#[derive(Clone, Copy, Debug)]
pub struct SqrtEdgePoint {
    pub x: f64,
    /// `x - lo`, exact near the lower edge.
    pub from_lo: f64,
    /// `hi - x`, exact near the upper edge.
    pub from_hi: f64,
}

/// Integrates `f(x) * sqrt((hi - x)(x - lo))` over `[from, to]`, a
/// sub-interval of the support `[lo, hi]`.
///
/// Substituting `x = lo + 2 w sin^2(phi / 2)` (half-width `w`) turns the
/// square-root factor into the smooth weight `(x - lo)(hi - x)` in `phi`,
/// so inverse-square-root edge densities integrate cleanly: write the
/// density as `sqrt((hi - x)(x - lo)) * r(x)` and pass `r` here. The edge
/// distances on [`SqrtEdgePoint`] let `r` cancel its own edge poles without
/// catastrophic rounding.
pub fn sqrt_weighted(
    f: impl Fn(SqrtEdgePoint) -> f64,
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
    tol: f64,
) -> Result<f64> {
    if !(hi > lo) {
        return Err(Error::invalid(
            "support",
            format!("expected lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let w = 0.5 * (hi - lo);
    let m = 0.5 * (lo + hi);
    // phi = acos((m - x) / w), increasing in x, range [0, pi]
    let phi_of = |x: f64| ((m - x) / w).clamp(-1.0, 1.0).acos();
    let p0 = phi_of(from.max(lo));
    let p1 = phi_of(to.min(hi));
    if p1 <= p0 {
        return Ok(0.0);
    }
    integrate(
        |phi| {
            let (s, c) = (0.5 * phi).sin_cos();
            let from_lo = 2.0 * w * s * s;
            let from_hi = 2.0 * w * c * c;
            let pt = SqrtEdgePoint {
                x: lo + from_lo,
                from_lo,
                from_hi,
            };
            f(pt) * from_lo * from_hi
        },
        p0,
        p1,
        tol,
    )
}
