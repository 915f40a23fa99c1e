//! Output payloads. Field order is declaration order and every float goes
//! through [`Num`], so identical jobs render byte-identical output.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::job::{InputForm, Method};

/// A float rendered at 12 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn rounded(self) -> f64 {
        round_sig12(self.0)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.rounded())
    }
}

/// Rounds to 12 significant digits. Negative zero becomes zero.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn num_text(x: f64) -> String {
    serde_json::to_string(&Num(x)).expect("finite float")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputEcho {
    pub input_form: InputForm,
    pub n: usize,
    pub d: usize,
    /// As given, before mirroring.
    pub i: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Num>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm {
    pub value: Num,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronReport {
    pub rho: Num,
    pub deviation: Num,
    pub residual: Num,
    pub min_entry: Num,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterReport {
    pub expected: usize,
    pub found: usize,
    pub quotient_coincidences: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalvedReport {
    pub rho: Num,
    pub deviation: Num,
    pub passed: bool,
}

/// Cross-checks attached when the method is `all`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub oracle_matched: bool,
    pub oracle_max_deviation: Num,
    pub oracle_tolerance: Num,
    pub perron: PerronReport,
    pub closed_form_cluster: Option<ClusterReport>,
    pub halved: Option<HalvedReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub input: InputEcho,
    pub method: Method,
    pub closed_form: Option<ClosedForm>,
    pub quotient_eigenvalues: Vec<Num>,
    pub rho: Num,
    pub timings_ms: Option<Num>,
    pub verification: Option<Verification>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: Num,
    pub rho: Num,
    pub closed_form: Option<Num>,
    pub closed_mult: usize,
    pub min_quotient: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub input: InputEcho,
    pub method: Method,
    pub rows: Vec<SweepRow>,
    pub timings_ms: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanInput {
    pub n: usize,
    pub d: usize,
    pub alpha: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRowReport {
    pub i: usize,
    pub rho: Num,
    pub is_argmax: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub input: ScanInput,
    pub rows: Vec<ScanRowReport>,
    pub argmax: usize,
    pub timings_ms: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_deviation: Num,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub alphas: Vec<Num>,
    pub all_passed: bool,
    pub total_cases: usize,
    pub total_failures: usize,
    pub checks: Vec<CheckReport>,
    pub timings_ms: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Report {
    Spectrum(SpectrumReport),
    Sweep(SweepReport),
    Scan(ScanReport),
    Verify(VerifyReport),
}

impl Report {
    /// 1 when a verification the job asked for failed.
    pub fn exit_code(&self) -> u8 {
        let failed = match self {
            Report::Spectrum(s) => s.verification.as_ref().is_some_and(|v| !v.passed),
            Report::Verify(v) => !v.all_passed,
            Report::Sweep(_) | Report::Scan(_) => false,
        };
        u8::from(failed)
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Comma-separated with a header row and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Spectrum(s) => {
                out.push_str("source,value,multiplicity\n");
                if let Some(c) = s.closed_form {
                    writeln!(out, "closed-form,{},{}", num_text(c.value.0), c.multiplicity).unwrap();
                }
                let source = match s.method {
                    Method::Halved => "halved",
                    Method::Dense => "dense",
                    Method::Structured | Method::All => "quotient",
                };
                for v in &s.quotient_eigenvalues {
                    writeln!(out, "{source},{},1", num_text(v.0)).unwrap();
                }
            }
            Report::Sweep(s) => {
                out.push_str("alpha,rho,closed_form,closed_mult\n");
                for row in &s.rows {
                    let closed = row.closed_form.map(|c| num_text(c.0)).unwrap_or_default();
                    writeln!(out, "{},{},{},{}", num_text(row.alpha.0), num_text(row.rho.0), closed, row.closed_mult)
                        .unwrap();
                }
            }
            Report::Scan(s) => {
                out.push_str("i,rho,is_argmax\n");
                for row in &s.rows {
                    writeln!(out, "{},{},{}", row.i, num_text(row.rho.0), row.is_argmax).unwrap();
                }
            }
            Report::Verify(v) => {
                out.push_str("check,cases,failed,worst_deviation\n");
                for c in &v.checks {
                    writeln!(out, "{},{},{},{}", c.name, c.cases, c.failed, num_text(c.worst_deviation.0)).unwrap();
                }
            }
        }
        out
    }
}
