//! Experiment configuration: JSON file schema, CLI overrides, and the
//! per-experiment resolution into validated parameter sets.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use ffent_core::ensembles::EntryDistribution;
use ffent_core::fermion::EntropyBase;

use crate::error::{CliError, Result};

/// Entry-law tag as it appears in config files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DistTag {
    Gaussian,
    Rademacher,
    Disk,
}

impl From<DistTag> for EntryDistribution {
    fn from(tag: DistTag) -> Self {
        match tag {
            DistTag::Gaussian => EntryDistribution::ComplexGaussian,
            DistTag::Rademacher => EntryDistribution::ComplexRademacher,
            DistTag::Disk => EntryDistribution::ComplexUniformDisk,
        }
    }
}

/// Entropy base tag: `2` for bits, `e` for nats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum BaseTag {
    #[serde(rename = "2")]
    #[value(name = "2")]
    Two,
    #[serde(rename = "e")]
    #[value(name = "e")]
    E,
}

impl From<BaseTag> for EntropyBase {
    fn from(tag: BaseTag) -> Self {
        match tag {
            BaseTag::Two => EntropyBase::Bits,
            BaseTag::E => EntropyBase::Nats,
        }
    }
}

/// Raw configuration as read from JSON; CLI flags override individual
/// fields. Which fields are required depends on the experiment.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub experiment: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub kappa: Option<f64>,
    pub l: Option<usize>,
    pub lambda: Option<f64>,
    pub eps0: Option<f64>,
    pub realizations: Option<usize>,
    pub master_seed: Option<u64>,
    pub dist: Option<DistTag>,
    pub base: Option<BaseTag>,
    pub output_path: Option<PathBuf>,
    pub grid_step: Option<f64>,
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("cannot parse config {}: {e}", path.display())))
    }

    /// Errors when the file's `experiment` tag names a different subcommand.
    pub fn check_experiment_tag(&self, subcommand: &str) -> Result<()> {
        if let Some(tag) = &self.experiment {
            if tag != subcommand {
                return Err(CliError::config(format!(
                    "field `experiment`: config says {tag:?} but the {subcommand:?} subcommand was invoked"
                )));
            }
        }
        Ok(())
    }

    fn require_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| CliError::config("field `n`: missing system size"))
    }

    /// Resolves the filling: exactly one of `k` or `kappa`, then `K = floor(kappa N)`.
    pub fn resolve_k(&self, n: usize) -> Result<usize> {
        let k = match (self.k, self.kappa) {
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "fields `k`/`kappa`: exactly one must be given, found both",
                ))
            }
            (None, None) => {
                return Err(CliError::config(
                    "fields `k`/`kappa`: exactly one must be given, found neither",
                ))
            }
            (Some(k), None) => k,
            (None, Some(kappa)) => {
                if !(0.0..=1.0).contains(&kappa) {
                    return Err(CliError::config(format!(
                        "field `kappa`: must lie in [0, 1], got {kappa}"
                    )));
                }
                (kappa * n as f64).floor() as usize
            }
        };
        if k > n {
            return Err(CliError::config(format!(
                "field `k`: filling {k} exceeds n = {n}"
            )));
        }
        Ok(k)
    }

    /// Resolves the block size: exactly one of `l` or `lambda`, then `L = floor(lambda N)`.
    pub fn resolve_l(&self, n: usize) -> Result<usize> {
        let l = match (self.l, self.lambda) {
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "fields `l`/`lambda`: exactly one must be given, found both",
                ))
            }
            (None, None) => {
                return Err(CliError::config(
                    "fields `l`/`lambda`: exactly one must be given, found neither",
                ))
            }
            (Some(l), None) => l,
            (None, Some(lambda)) => {
                if !(0.0..=1.0).contains(&lambda) {
                    return Err(CliError::config(format!(
                        "field `lambda`: must lie in [0, 1], got {lambda}"
                    )));
                }
                (lambda * n as f64).floor() as usize
            }
        };
        if l == 0 || l > n {
            return Err(CliError::config(format!(
                "field `l`: block size must satisfy 1 <= L <= N = {n}, got {l}"
            )));
        }
        Ok(l)
    }

    pub fn require_seed(&self) -> Result<u64> {
        self.master_seed.ok_or_else(|| {
            CliError::config(
                "field `master_seed`: a seed is mandatory for randomized experiments (--seed)",
            )
        })
    }

    pub fn realizations(&self) -> Result<usize> {
        let r = self.realizations.unwrap_or(1);
        if r == 0 {
            return Err(CliError::config(
                "field `realizations`: must be >= 1, got 0",
            ));
        }
        Ok(r)
    }

    pub fn base(&self) -> EntropyBase {
        self.base.map(EntropyBase::from).unwrap_or_default()
    }

    pub fn dist(&self) -> EntryDistribution {
        self.dist.map(EntryDistribution::from).unwrap_or(EntryDistribution::ComplexGaussian)
    }

    pub fn eps0(&self) -> Result<f64> {
        let e = self.eps0.unwrap_or(2.0);
        if !(e > 0.0) {
            return Err(CliError::config(format!(
                "field `eps0`: must be > 0, got {e}"
            )));
        }
        Ok(e)
    }
}

/// Parameters for the GUE and Haar block-entropy runs.
#[derive(Clone, Copy, Debug)]
pub struct EntropyRunParams {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub eps0: f64,
    pub realizations: usize,
    pub master_seed: u64,
    pub base: EntropyBase,
}

pub fn resolve_entropy_run(cfg: &ExperimentConfig) -> Result<EntropyRunParams> {
    let n = cfg.require_n()?;
    if n == 0 {
        return Err(CliError::config("field `n`: must be >= 1, got 0"));
    }
    Ok(EntropyRunParams {
        n,
        k: cfg.resolve_k(n)?,
        l: cfg.resolve_l(n)?,
        eps0: cfg.eps0()?,
        realizations: cfg.realizations()?,
        master_seed: cfg.require_seed()?,
        base: cfg.base(),
    })
}

/// Parameters for the Page random-state experiment.
#[derive(Clone, Copy, Debug)]
pub struct PageRunParams {
    pub l: usize,
    pub k: usize,
    pub dist: EntryDistribution,
    pub samples: usize,
    pub master_seed: u64,
    pub base: EntropyBase,
}

pub fn resolve_page_run(cfg: &ExperimentConfig) -> Result<PageRunParams> {
    let l = cfg
        .l
        .ok_or_else(|| CliError::config("field `l`: missing radiation dimension"))?;
    let k = cfg
        .k
        .ok_or_else(|| CliError::config("field `k`: missing environment dimension"))?;
    if l == 0 || k == 0 {
        return Err(CliError::config(
            "fields `l`/`k`: dimensions must be >= 1",
        ));
    }
    // the radiation module defaults to natural log
    let base = cfg.base.map(EntropyBase::from).unwrap_or(EntropyBase::Nats);
    Ok(PageRunParams {
        l,
        k,
        dist: cfg.dist(),
        samples: cfg.realizations()?,
        master_seed: cfg.require_seed()?,
        base,
    })
}
