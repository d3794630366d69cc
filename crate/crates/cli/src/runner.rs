//! Experiment drivers: seeded ensemble orchestration feeding the row types.
//!
//! Every randomized run derives one RNG stream per realization from the
//! master seed and reduces in realization order, so output is byte-identical
//! at any worker count.

use std::f64::consts::LN_2;

use ffent_core::ensembles::{
    kac_fermi_projection, sample_gue, sample_haar_unitary, sample_iid_matrix, EntryDistribution,
    RngStream,
};
use ffent_core::fermion::{
    binary_entropy, entanglement_entropy, fermi_projection, rank_one_entropy,
    restricted_projection, EntropyBase, EntropyReport, FermiSea,
};
use ffent_core::radiation::{page_experiment, PageExperiment};
use ffent_core::spectral::{eigh, HermitianMatrix, C64};
use ffent_core::theory::{
    self, coefficients, marchenko_pastur_law, page_deficit, page_exact, table1_distances,
    FixedParameter, LimitLaw,
};
use ffent_core::{exec, stats};

use crate::config::{EntropyRunParams, PageRunParams};
use crate::error::{CliError, Result};
use crate::rows::{
    DeficitRow, EntropyRow, HistRow, KacRow, PageRow, RankOneRow, SurfaceRow, Table1Row,
};

fn contract(e: ffent_core::Error) -> CliError {
    CliError::Contract(e)
}

/// Theory columns `(c_minus, s, c_plus)` at the run's aspect ratios, scaled
/// to the run base; NaN when the ratios leave the open square.
fn theory_columns(n: usize, k: usize, l: usize, base: EntropyBase) -> (f64, f64, f64) {
    let kappa = k as f64 / n as f64;
    let lambda = l as f64 / n as f64;
    if !(kappa > 0.0 && kappa < 1.0 && lambda > 0.0 && lambda < 1.0) {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    match coefficients(kappa, lambda) {
        Ok(c) => {
            let scale = match base {
                EntropyBase::Bits => 1.0,
                EntropyBase::Nats => LN_2,
            };
            (c.c_minus * scale, c.s * scale, c.c_plus * scale)
        }
        Err(_) => (f64::NAN, f64::NAN, f64::NAN),
    }
}

fn collect_reports(
    params: &EntropyRunParams,
    per_realization: impl Fn(usize) -> ffent_core::Result<EntropyReport> + Sync + Send,
) -> Result<Vec<EntropyRow>> {
    let theory = theory_columns(params.n, params.k, params.l, params.base);
    let reports: Vec<ffent_core::Result<EntropyReport>> =
        exec::map_indexed(params.realizations, per_realization);
    let mut rows = Vec::with_capacity(params.realizations);
    for (i, report) in reports.into_iter().enumerate() {
        let report = report.map_err(contract)?;
        rows.push(EntropyRow::from_report(i, &report, theory));
    }
    Ok(rows)
}

/// GUE pipeline: sample -> diagonalize -> Fermi projection -> block ->
/// entropy report, one row per realization.
pub fn run_gue_entropy(params: &EntropyRunParams) -> Result<Vec<EntropyRow>> {
    let p = *params;
    collect_reports(params, move |i| {
        let stream = RngStream::new(p.master_seed, i as u64);
        let h = sample_gue(&stream, p.n, p.eps0)?;
        let dec = eigh(&h)?;
        let proj = fermi_projection(&dec, &FermiSea::Filling(p.k))?;
        let pb = restricted_projection(&proj, p.l)?.with_seed(p.master_seed);
        entanglement_entropy(&pb, p.base)
    })
}

/// Haar pipeline: the Fermi projection comes straight from the occupied
/// columns of a Haar unitary, bypassing the GUE diagonalization. The block
/// statistics are identical in law and about N times cheaper.
pub fn run_haar_entropy(params: &EntropyRunParams) -> Result<Vec<EntropyRow>> {
    let p = *params;
    collect_reports(params, move |i| {
        let stream = RngStream::new(p.master_seed, i as u64);
        let u = sample_haar_unitary(&stream, p.n);
        let occupied = u.as_complex().block(0..p.n, 0..p.k)?;
        let pb = restricted_projection(&occupied.gram(), p.l)?.with_seed(p.master_seed);
        entanglement_entropy(&pb, p.base)
    })
}

/// Coefficient surfaces on a square (kappa, lambda) grid with step
/// `grid_step <= 0.05`.
pub fn run_surface(grid_step: f64) -> Result<Vec<SurfaceRow>> {
    if !(grid_step > 0.0 && grid_step <= 0.05) {
        return Err(CliError::config(format!(
            "field `grid_step`: figures need a step in (0, 0.05], got {grid_step}"
        )));
    }
    let steps = (1.0 / grid_step).round() as usize;
    let points: Vec<(f64, f64)> = (1..steps)
        .flat_map(|i| (1..steps).map(move |j| (i as f64 / steps as f64, j as f64 / steps as f64)))
        .collect();
    let out: Vec<ffent_core::Result<SurfaceRow>> = exec::map_indexed(points.len(), |idx| {
        let (kappa, lambda) = points[idx];
        let c = coefficients(kappa, lambda)?;
        Ok(SurfaceRow {
            kappa,
            lambda,
            c_minus: c.c_minus,
            s: c.s,
            c_plus: c.c_plus,
            c_sqrt: c.c_sqrt,
        })
    });
    out.into_iter()
        .collect::<ffent_core::Result<Vec<_>>>()
        .map_err(contract)
}

/// The 18-row distance table: kappa fixed at 0.1..0.9 maximizing over
/// lambda, then the transpose.
pub fn run_table1(grid_step: f64) -> Result<Vec<Table1Row>> {
    if !(grid_step > 0.0 && grid_step <= 0.01) {
        return Err(CliError::config(format!(
            "field `grid_step`: the distance table needs a step in (0, 0.01], got {grid_step}"
        )));
    }
    let fixed: Vec<(&'static str, FixedParameter)> = (1..=9)
        .map(|i| ("kappa", FixedParameter::Kappa(i as f64 / 10.0)))
        .chain((1..=9).map(|i| ("lambda", FixedParameter::Lambda(i as f64 / 10.0))))
        .collect();
    let out: Vec<ffent_core::Result<Table1Row>> = exec::map_indexed(fixed.len(), |idx| {
        let (side, parameter) = fixed[idx];
        let d = table1_distances(parameter, grid_step)?;
        let value = match parameter {
            FixedParameter::Kappa(v) | FixedParameter::Lambda(v) => v,
        };
        Ok(Table1Row {
            side,
            fixed: value,
            d_c_minus_s: d.c_minus_to_s,
            d_s_c_plus: d.s_to_c_plus,
            d_c_minus_c_plus: d.c_minus_to_c_plus,
        })
    });
    out.into_iter()
        .collect::<ffent_core::Result<Vec<_>>>()
        .map_err(contract)
}

fn dist_name(dist: EntryDistribution) -> &'static str {
    match dist {
        EntryDistribution::ComplexGaussian => "gaussian",
        EntryDistribution::ComplexRademacher => "rademacher",
        EntryDistribution::ComplexUniformDisk => "disk",
    }
}

/// Converts a nats-valued theory number to the requested base.
fn from_nats(v: f64, base: EntropyBase) -> f64 {
    match base {
        EntropyBase::Nats => v,
        EntropyBase::Bits => v / LN_2,
    }
}

/// Page experiment rows plus the aggregate (mean, standard error).
pub fn run_page(params: &PageRunParams) -> Result<(Vec<PageRow>, PageExperiment)> {
    let stream = RngStream::new(params.master_seed, 0);
    let exp = page_experiment(
        &stream,
        params.l,
        params.k,
        params.dist,
        params.samples,
        params.base,
    )
    .map_err(contract)?;
    let (small, large) = (params.l.min(params.k), params.l.max(params.k));
    let exact = from_nats(page_exact(small, large).map_err(contract)?, params.base);
    let lambda = params.l as f64 / params.k as f64;
    let asymptotic = from_nats((params.l as f64).ln() - page_deficit(lambda), params.base);
    let rows = exp
        .samples
        .iter()
        .enumerate()
        .map(|(i, &s)| PageRow {
            sample: i,
            l: params.l,
            k: params.k,
            dist: dist_name(params.dist),
            s,
            page_exact: exact,
            page_asymptotic: asymptotic,
            seed: params.master_seed,
        })
        .collect();
    Ok((rows, exp))
}

/// Deficit curve for the later-stage radiation picture, lambda on a grid.
pub fn deficit_curve(step: f64, max_lambda: f64) -> Result<Vec<DeficitRow>> {
    if !(step > 0.0 && max_lambda > step) {
        return Err(CliError::config(format!(
            "field `grid_step`: need 0 < step < max lambda, got step {step}, max {max_lambda}"
        )));
    }
    let n = (max_lambda / step).round() as usize;
    Ok((1..=n)
        .map(|i| {
            let lambda = i as f64 * step;
            DeficitRow {
                lambda,
                deficit: page_deficit(lambda),
            }
        })
        .collect())
}

/// Deterministic Kac run: analytic projection pipeline next to `h(1 - L/N)`.
pub fn run_kac(n: usize, l: usize, eps0: f64, base: EntropyBase) -> Result<KacRow> {
    if n == 0 {
        return Err(CliError::config("field `n`: must be >= 1, got 0"));
    }
    if l == 0 || l > n {
        return Err(CliError::config(format!(
            "field `l`: block size must satisfy 1 <= L <= N = {n}, got {l}"
        )));
    }
    if !(eps0 > 0.0) {
        return Err(CliError::config(format!(
            "field `eps0`: must be > 0, got {eps0}"
        )));
    }
    let proj = kac_fermi_projection(n);
    let pb = restricted_projection(&proj, l).map_err(contract)?;
    let report = entanglement_entropy(&pb, base).map_err(contract)?;
    let closed = binary_entropy(1.0 - l as f64 / n as f64, base).map_err(contract)?;
    Ok(KacRow {
        n,
        l,
        eps0,
        s: report.entropy,
        s_closed_form: closed,
    })
}

/// Rank-one experiment at `L = N - 1`: direct block entropy against `h0(q)`
/// per realization.
pub fn run_rank_one(
    n: usize,
    k: usize,
    realizations: usize,
    master_seed: u64,
    base: EntropyBase,
) -> Result<Vec<RankOneRow>> {
    if n < 2 {
        return Err(CliError::config(format!(
            "field `n`: rank-one identity needs N >= 2, got {n}"
        )));
    }
    if k == 0 || k > n {
        return Err(CliError::config(format!(
            "field `k`: must satisfy 1 <= K <= N = {n}, got {k}"
        )));
    }
    if realizations == 0 {
        return Err(CliError::config(
            "field `realizations`: must be >= 1, got 0",
        ));
    }
    let out: Vec<ffent_core::Result<RankOneRow>> = exec::map_indexed(realizations, |i| {
        let stream = RngStream::new(master_seed, i as u64);
        let u = sample_haar_unitary(&stream, n);
        let occupied = u.as_complex().block(0..n, 0..k)?;
        let pb = restricted_projection(&occupied.gram(), n - 1)?.with_seed(master_seed);
        let direct = entanglement_entropy(&pb, base)?.entropy;
        let shortcut = rank_one_entropy(&u, k, base)?;
        Ok(RankOneRow {
            realization: i,
            n,
            k,
            s_direct: direct,
            s_rank_one: shortcut,
            abs_diff: (direct - shortcut).abs(),
            seed: master_seed,
        })
    });
    out.into_iter()
        .collect::<ffent_core::Result<Vec<_>>>()
        .map_err(contract)
}

fn spectrum_rows(eigenvalues: &[f64], law: &LimitLaw) -> Result<(Vec<HistRow>, f64)> {
    let mut sorted = eigenvalues.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut rows = Vec::with_capacity(sorted.len());
    let mut ks = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let theory = law.cdf(x, theory::QUAD_TOL).map_err(contract)?;
        let empirical = (i as f64 + 1.0) / n;
        ks = ks
            .max((empirical - theory).abs())
            .max((theory - i as f64 / n).abs());
        rows.push(HistRow {
            index: i,
            eigenvalue: x,
            empirical_cdf: empirical,
            theory_cdf: theory,
        });
    }
    Ok((rows, ks))
}

/// Gram-spectrum histogram against the Marchenko-Pastur law at
/// `lambda = L / K`: eigenvalues of `X X* / K` for a raw i.i.d. draw.
pub fn run_mp_hist(
    l: usize,
    k: usize,
    dist: EntryDistribution,
    master_seed: u64,
) -> Result<(Vec<HistRow>, f64)> {
    if l == 0 || k == 0 {
        return Err(CliError::config("fields `l`/`k`: dimensions must be >= 1"));
    }
    let x = sample_iid_matrix(&RngStream::new(master_seed, 0), l, k, dist);
    let gram = x.gram();
    let scaled = HermitianMatrix::from_lower(l, |i, j| {
        let z = gram.get(i, j);
        C64::new(z.re / k as f64, z.im / k as f64)
    })
    .map_err(contract)?;
    let dec = eigh(&scaled).map_err(contract)?;
    let law = marchenko_pastur_law(l as f64 / k as f64).map_err(contract)?;
    spectrum_rows(dec.eigenvalues(), &law)
}

/// Block-spectrum histogram of one Haar realization against the Wachter law
/// at `kappa = K / N`, `lambda = L / N`.
pub fn run_wachter_hist(
    n: usize,
    k: usize,
    l: usize,
    master_seed: u64,
) -> Result<(Vec<HistRow>, f64)> {
    let kappa = k as f64 / n as f64;
    let lambda = l as f64 / n as f64;
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(CliError::config(format!(
            "field `k`: the Wachter law needs 0 < K/N < 1, got {kappa}"
        )));
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(CliError::config(format!(
            "field `l`: the Wachter law needs 0 < L/N < 1, got {lambda}"
        )));
    }
    let u = sample_haar_unitary(&RngStream::new(master_seed, 0), n);
    let occupied = u.as_complex().block(0..n, 0..k).map_err(contract)?;
    let pb = restricted_projection(&occupied.gram(), l).map_err(contract)?;
    let report = entanglement_entropy(&pb, EntropyBase::Bits).map_err(contract)?;
    let law = theory::wachter_law(kappa, lambda).map_err(contract)?;
    spectrum_rows(&report.block_spectrum, &law)
}

/// Summary line for randomized runs, reusable by tests.
pub fn summarize(samples: &[f64]) -> (f64, f64) {
    stats::mean_and_std_error(samples)
}
