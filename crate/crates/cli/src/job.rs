//! Job descriptions as read from flags or from a batch file, and their
//! validated form.

use std::fmt;
use std::path::PathBuf;

use bug_spectra::verify::VerifyGrid;
use bug_spectra::{Alpha, BugSpec, SolveConfig};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliError};

/// Overrides the bisection and Jacobi tolerances.
pub const SOLVE_TOL_ENV: &str = "ALPHA_BUG_SOLVE_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Spectrum,
    Sweep,
    Scan,
    Verify,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Structured,
    Dense,
    Halved,
    All,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Structured => "structured",
            Method::Dense => "dense",
            Method::Halved => "halved",
            Method::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// One job as written by the user. Every field except `command` is
/// optional here; [`JobConfig::validate`] decides which ones a command
/// needs.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: CommandKind,
    #[serde(default)]
    pub job_id: Option<String>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub i: Option<usize>,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub q: Option<usize>,
    #[serde(default)]
    pub r: Option<usize>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub alphas: Option<Vec<f64>>,
    #[serde(default)]
    pub method: Option<Method>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub max_n: Option<usize>,
    #[serde(default)]
    pub timings: bool,
}

impl JobConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            job_id: None,
            n: None,
            d: None,
            i: None,
            p: None,
            q: None,
            r: None,
            alpha: None,
            alphas: None,
            method: None,
            format: None,
            output: None,
            max_n: None,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<Job, CliError> {
        let kind = match self.command {
            CommandKind::Spectrum => {
                self.forbid("alphas", self.alphas.is_some())?;
                self.forbid("max_n", self.max_n.is_some())?;
                JobKind::Spectrum {
                    bug: self.bug()?,
                    alpha: alpha(self.alpha.ok_or_else(|| invalid("spectrum needs alpha"))?)?,
                    method: self.method.unwrap_or_default(),
                }
            }
            CommandKind::Sweep => {
                self.forbid("alpha", self.alpha.is_some())?;
                self.forbid("max_n", self.max_n.is_some())?;
                let alphas = self.alphas.as_deref().unwrap_or_default();
                if alphas.is_empty() {
                    return Err(invalid("sweep needs a nonempty alpha list"));
                }
                JobKind::Sweep {
                    bug: self.bug()?,
                    alphas: alphas.iter().map(|&a| alpha(a)).collect::<Result<_, _>>()?,
                    method: self.method.unwrap_or_default(),
                }
            }
            CommandKind::Scan => {
                self.forbid("i", self.i.is_some())?;
                self.forbid("p, q, r", self.p.is_some() || self.q.is_some() || self.r.is_some())?;
                self.forbid("alphas", self.alphas.is_some())?;
                self.forbid("method", self.method.is_some())?;
                self.forbid("max_n", self.max_n.is_some())?;
                JobKind::Scan {
                    n: self.n.ok_or_else(|| invalid("scan needs n"))?,
                    d: self.d.ok_or_else(|| invalid("scan needs d"))?,
                    alpha: alpha(self.alpha.ok_or_else(|| invalid("scan needs alpha"))?)?,
                }
            }
            CommandKind::Verify => {
                let params = [self.n, self.d, self.i, self.p, self.q, self.r];
                self.forbid("bug parameters", params.iter().any(Option::is_some))?;
                self.forbid("alpha", self.alpha.is_some())?;
                self.forbid("method", self.method.is_some())?;
                let mut grid = VerifyGrid::default();
                if let Some(max_n) = self.max_n {
                    if max_n < 3 {
                        return Err(invalid(format!("max_n must be at least 3, got {max_n}")));
                    }
                    grid.max_n = max_n;
                }
                if let Some(alphas) = &self.alphas {
                    if alphas.is_empty() {
                        return Err(invalid("verify alpha list is empty"));
                    }
                    grid.alphas = alphas.iter().map(|&a| alpha(a)).collect::<Result<_, _>>()?;
                }
                JobKind::Verify { grid }
            }
        };
        Ok(Job { kind, format: self.format.unwrap_or_default(), timings: self.timings })
    }

    fn forbid(&self, field: &str, present: bool) -> Result<(), CliError> {
        if present {
            let command = serde_json::to_value(self.command).expect("unit enum");
            return Err(invalid(format!("{field} is not accepted by {}", command.as_str().unwrap_or("?"))));
        }
        Ok(())
    }

    fn bug(&self) -> Result<BugInput, CliError> {
        match ((self.n, self.d, self.i), (self.p, self.q, self.r)) {
            ((Some(n), Some(d), Some(i)), (None, None, None)) => {
                Ok(BugInput { spec: BugSpec::new(n, d, i)?, form: InputForm::Ndi })
            }
            ((None, None, None), (Some(p), Some(q), Some(r))) => {
                Ok(BugInput { spec: BugSpec::from_pqr(p, q, r)?, form: InputForm::Pqr })
            }
            _ => Err(invalid("give exactly one of (n, d, i) or (p, q, r), complete")),
        }
    }
}

fn alpha(x: f64) -> Result<Alpha, CliError> {
    Ok(Alpha::new(x)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputForm {
    Ndi,
    Pqr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BugInput {
    pub spec: BugSpec,
    pub form: InputForm,
}

#[derive(Debug, Clone, PartialEq)]
pub enum JobKind {
    Spectrum { bug: BugInput, alpha: Alpha, method: Method },
    Sweep { bug: BugInput, alphas: Vec<Alpha>, method: Method },
    Scan { n: usize, d: usize, alpha: Alpha },
    Verify { grid: VerifyGrid },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub kind: JobKind,
    pub format: Format,
    pub timings: bool,
}

/// Default tolerances, with `ALPHA_BUG_SOLVE_TOL` applied when set.
pub fn solve_config_from_env() -> Result<SolveConfig, CliError> {
    solve_config_with(std::env::var(SOLVE_TOL_ENV).ok().as_deref())
}

pub fn solve_config_with(tol: Option<&str>) -> Result<SolveConfig, CliError> {
    let mut cfg = SolveConfig::default();
    if let Some(raw) = tol {
        let tol: f64 = raw.trim().parse().map_err(|_| invalid(format!("{SOLVE_TOL_ENV}={raw:?} is not a number")))?;
        cfg.bisection_tol = tol;
        cfg.jacobi_off_tol = tol;
        cfg.validate()?;
    }
    Ok(cfg)
}
