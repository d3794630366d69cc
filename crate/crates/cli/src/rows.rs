//! Result-row schemas, one per experiment, with CSV and plot-data emission.

use ffent_core::fermion::{EntropyBase, EntropyReport};

use crate::error::{CliError, Result};

/// Shortest round-trip formatting; keeps output byte-stable across runs.
pub fn fmt_f(x: f64) -> String {
    format!("{x}")
}

/// A CSV-emittable record that can also flatten to (x, y, series) triples.
pub trait Row {
    fn headers() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
    fn plot_triples(&self) -> Vec<(String, String, String)>;
}

/// Per-realization output of the gue-entropy and haar-entropy experiments.
#[derive(Clone, Debug)]
pub struct EntropyRow {
    pub realization: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub kappa: f64,
    pub lambda: f64,
    pub s: f64,
    pub s_per_l: f64,
    pub lower: f64,
    pub upper: f64,
    pub c_minus: f64,
    pub s_theory: f64,
    pub c_plus: f64,
    pub seed: u64,
    pub base: EntropyBase,
}

impl EntropyRow {
    pub fn from_report(
        realization: usize,
        report: &EntropyReport,
        theory: (f64, f64, f64),
    ) -> Self {
        EntropyRow {
            realization,
            n: report.n,
            k: report.k,
            l: report.l,
            kappa: report.k as f64 / report.n as f64,
            lambda: report.l as f64 / report.n as f64,
            s: report.entropy,
            s_per_l: report.entropy / report.l as f64,
            lower: report.lower,
            upper: report.upper,
            c_minus: theory.0,
            s_theory: theory.1,
            c_plus: theory.2,
            seed: report.seed,
            base: report.base,
        }
    }

    /// Result 1 sandwich plus the `0 <= S <= L` cap, with `slack`.
    pub fn validate(&self, slack: f64) -> Result<()> {
        let max = self.l as f64 * self.base.max_per_mode();
        let ok = self.s >= self.lower - slack
            && self.s <= self.upper + slack
            && self.s >= -slack
            && self.s <= max + slack;
        if ok {
            Ok(())
        } else {
            Err(CliError::Contract(ffent_core::Error::BoundsViolated {
                entropy: self.s,
                lower: self.lower,
                upper: self.upper,
            }))
        }
    }
}

impl Row for EntropyRow {
    fn headers() -> &'static [&'static str] {
        &[
            "realization",
            "N",
            "K",
            "L",
            "kappa",
            "lambda",
            "S",
            "S_per_L",
            "lower",
            "upper",
            "c_minus",
            "s_theory",
            "c_plus",
            "seed",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.realization.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            self.l.to_string(),
            fmt_f(self.kappa),
            fmt_f(self.lambda),
            fmt_f(self.s),
            fmt_f(self.s_per_l),
            fmt_f(self.lower),
            fmt_f(self.upper),
            fmt_f(self.c_minus),
            fmt_f(self.s_theory),
            fmt_f(self.c_plus),
            self.seed.to_string(),
        ]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        let x = self.realization.to_string();
        vec![
            (x.clone(), fmt_f(self.s), "S".into()),
            (x.clone(), fmt_f(self.lower), "lower".into()),
            (x, fmt_f(self.upper), "upper".into()),
        ]
    }
}

/// One (kappa, lambda) grid point of the coefficient surfaces.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceRow {
    pub kappa: f64,
    pub lambda: f64,
    pub c_minus: f64,
    pub s: f64,
    pub c_plus: f64,
    pub c_sqrt: f64,
}

impl Row for SurfaceRow {
    fn headers() -> &'static [&'static str] {
        &["kappa", "lambda", "c_minus", "s", "c_plus", "c_sqrt"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_f(self.kappa),
            fmt_f(self.lambda),
            fmt_f(self.c_minus),
            fmt_f(self.s),
            fmt_f(self.c_plus),
            fmt_f(self.c_sqrt),
        ]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        let x = fmt_f(self.lambda);
        let tag = |name: &str| format!("{name}@kappa={}", fmt_f(self.kappa));
        vec![
            (x.clone(), fmt_f(self.c_minus), tag("c_minus")),
            (x.clone(), fmt_f(self.s), tag("s")),
            (x.clone(), fmt_f(self.c_plus), tag("c_plus")),
            (x, fmt_f(self.c_sqrt), tag("c_sqrt")),
        ]
    }
}

/// One row of the maximal-distance table (left side fixes kappa, right side
/// fixes lambda).
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub side: &'static str,
    pub fixed: f64,
    pub d_c_minus_s: f64,
    pub d_s_c_plus: f64,
    pub d_c_minus_c_plus: f64,
}

impl Row for Table1Row {
    fn headers() -> &'static [&'static str] {
        &[
            "fixed_parameter",
            "value",
            "delta_c_minus_s",
            "delta_s_c_plus",
            "delta_c_minus_c_plus",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.side.to_string(),
            fmt_f(self.fixed),
            fmt_f(self.d_c_minus_s),
            fmt_f(self.d_s_c_plus),
            fmt_f(self.d_c_minus_c_plus),
        ]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        let x = fmt_f(self.fixed);
        vec![
            (
                x.clone(),
                fmt_f(self.d_c_minus_s),
                format!("{}:delta_c_minus_s", self.side),
            ),
            (
                x.clone(),
                fmt_f(self.d_s_c_plus),
                format!("{}:delta_s_c_plus", self.side),
            ),
            (
                x,
                fmt_f(self.d_c_minus_c_plus),
                format!("{}:delta_c_minus_c_plus", self.side),
            ),
        ]
    }
}

/// Per-sample output of the Page experiment.
#[derive(Clone, Debug)]
pub struct PageRow {
    pub sample: usize,
    pub l: usize,
    pub k: usize,
    pub dist: &'static str,
    pub s: f64,
    pub page_exact: f64,
    pub page_asymptotic: f64,
    pub seed: u64,
}

impl Row for PageRow {
    fn headers() -> &'static [&'static str] {
        &[
            "sample",
            "L",
            "K",
            "dist",
            "S",
            "page_exact",
            "page_asymptotic",
            "seed",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.sample.to_string(),
            self.l.to_string(),
            self.k.to_string(),
            self.dist.to_string(),
            fmt_f(self.s),
            fmt_f(self.page_exact),
            fmt_f(self.page_asymptotic),
            self.seed.to_string(),
        ]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        vec![(
            self.sample.to_string(),
            fmt_f(self.s),
            format!("S:{}", self.dist),
        )]
    }
}

/// Point on the Page deficit curve (always in nats).
#[derive(Clone, Copy, Debug)]
pub struct DeficitRow {
    pub lambda: f64,
    pub deficit: f64,
}

impl Row for DeficitRow {
    fn headers() -> &'static [&'static str] {
        &["lambda", "deficit"]
    }

    fn fields(&self) -> Vec<String> {
        vec![fmt_f(self.lambda), fmt_f(self.deficit)]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        vec![(fmt_f(self.lambda), fmt_f(self.deficit), "deficit".into())]
    }
}

/// Deterministic Kac run: pipeline entropy next to the closed form.
#[derive(Clone, Copy, Debug)]
pub struct KacRow {
    pub n: usize,
    pub l: usize,
    pub eps0: f64,
    pub s: f64,
    pub s_closed_form: f64,
}

impl Row for KacRow {
    fn headers() -> &'static [&'static str] {
        &["N", "L", "eps0", "S", "S_closed_form"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.l.to_string(),
            fmt_f(self.eps0),
            fmt_f(self.s),
            fmt_f(self.s_closed_form),
        ]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        vec![(
            fmt_f(self.l as f64 / self.n as f64),
            fmt_f(self.s),
            "kac".into(),
        )]
    }
}

/// Per-realization comparison of the direct `L = N - 1` entropy against the
/// rank-one shortcut.
#[derive(Clone, Copy, Debug)]
pub struct RankOneRow {
    pub realization: usize,
    pub n: usize,
    pub k: usize,
    pub s_direct: f64,
    pub s_rank_one: f64,
    pub abs_diff: f64,
    pub seed: u64,
}

impl Row for RankOneRow {
    fn headers() -> &'static [&'static str] {
        &[
            "realization",
            "N",
            "K",
            "S_direct",
            "S_rank_one",
            "abs_diff",
            "seed",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.realization.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            fmt_f(self.s_direct),
            fmt_f(self.s_rank_one),
            fmt_f(self.abs_diff),
            self.seed.to_string(),
        ]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        let x = self.realization.to_string();
        vec![
            (x.clone(), fmt_f(self.s_direct), "S_direct".into()),
            (x, fmt_f(self.s_rank_one), "S_rank_one".into()),
        ]
    }
}

/// One spectrum point of a histogram experiment, with both CDFs.
#[derive(Clone, Copy, Debug)]
pub struct HistRow {
    pub index: usize,
    pub eigenvalue: f64,
    pub empirical_cdf: f64,
    pub theory_cdf: f64,
}

impl Row for HistRow {
    fn headers() -> &'static [&'static str] {
        &["index", "eigenvalue", "empirical_cdf", "theory_cdf"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            fmt_f(self.eigenvalue),
            fmt_f(self.empirical_cdf),
            fmt_f(self.theory_cdf),
        ]
    }

    fn plot_triples(&self) -> Vec<(String, String, String)> {
        vec![
            (
                fmt_f(self.eigenvalue),
                fmt_f(self.empirical_cdf),
                "empirical".into(),
            ),
            (
                fmt_f(self.eigenvalue),
                fmt_f(self.theory_cdf),
                "theory".into(),
            ),
        ]
    }
}
