use std::time::Instant;

use bug_spectra::verify::{
    check_closed_form_multiplicity, check_oracle, check_perron, extremal_scan, run_grid, VerifyGrid, HALVED_RHO_TOL,
    MULTIPLICITY_RADIUS, ORACLE_TOL,
};
use bug_spectra::{
    assemble_dense_alpha, bug_closed_form, bug_to_hjoin, bug_tridiagonal, halved_tridiagonal, jacobi_eigenvalues,
    tridiag_eigenvalues, Alpha, SolveConfig,
};

use crate::error::{invalid, CliError};
use crate::job::{BugInput, Job, JobKind, Method};
use crate::report::*;

pub fn execute(job: &Job, cfg: &SolveConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match &job.kind {
        JobKind::Spectrum { bug, alpha, method } => Report::Spectrum(spectrum(bug, *alpha, *method, cfg)?),
        JobKind::Sweep { bug, alphas, method } => Report::Sweep(sweep(bug, alphas, *method, cfg)?),
        JobKind::Scan { n, d, alpha } => Report::Scan(scan(*n, *d, *alpha, cfg)?),
        JobKind::Verify { grid } => Report::Verify(verify(grid, cfg)?),
    };
    if job.timings {
        let ms = Some(Num(start.elapsed().as_secs_f64() * 1e3));
        match &mut report {
            Report::Spectrum(r) => r.timings_ms = ms,
            Report::Sweep(r) => r.timings_ms = ms,
            Report::Scan(r) => r.timings_ms = ms,
            Report::Verify(r) => r.timings_ms = ms,
        }
    }
    Ok(report)
}

fn echo(bug: &BugInput, alpha: Option<Alpha>) -> InputEcho {
    let b = &bug.spec;
    let (q, r) = b.input_qr();
    InputEcho {
        input_form: bug.form,
        n: b.n(),
        d: b.d(),
        i: q,
        p: b.p(),
        q,
        r,
        alpha: alpha.map(|a| Num(a.value())),
    }
}

/// Removes the `multiplicity` dense values nearest the closed-form value
/// and reports their mean; the rest stay in order.
fn split_closed_form(dense: Vec<f64>, value: f64, multiplicity: usize) -> (f64, Vec<f64>) {
    let mut order: Vec<usize> = (0..dense.len()).collect();
    order.sort_by(|&a, &b| (dense[a] - value).abs().total_cmp(&(dense[b] - value).abs()).then(a.cmp(&b)));
    let mut taken = vec![false; dense.len()];
    for &k in &order[..multiplicity] {
        taken[k] = true;
    }
    let mean = order[..multiplicity].iter().map(|&k| dense[k]).sum::<f64>() / multiplicity as f64;
    let rest = dense.into_iter().zip(taken).filter(|(_, t)| !t).map(|(x, _)| x).collect();
    (mean, rest)
}

fn is_symmetric_bug(bug: &BugInput) -> bool {
    let b = &bug.spec;
    b.d() >= 4 && b.d().is_multiple_of(2) && b.i() == b.d() / 2
}

fn spectrum(bug: &BugInput, alpha: Alpha, method: Method, cfg: &SolveConfig) -> Result<SpectrumReport, CliError> {
    let b = &bug.spec;
    let closed = bug_closed_form(b, alpha);
    let (closed_form, quotient) = match method {
        Method::Structured | Method::All => {
            let q = tridiag_eigenvalues(&bug_tridiagonal(b, alpha), cfg);
            (closed.map(|c| ClosedForm { value: Num(c.value), multiplicity: c.multiplicity }), q)
        }
        Method::Halved => {
            if !is_symmetric_bug(bug) {
                return Err(invalid(format!(
                    "halved method needs even d ≥ 4 and i = d/2, got d = {}, i = {}",
                    b.d(),
                    b.i()
                )));
            }
            let q = tridiag_eigenvalues(&halved_tridiagonal(b.n(), b.d(), alpha)?, cfg);
            (closed.map(|c| ClosedForm { value: Num(c.value), multiplicity: c.multiplicity }), q)
        }
        Method::Dense => {
            let dense = jacobi_eigenvalues(&assemble_dense_alpha(&bug_to_hjoin(b), alpha)?, cfg)?;
            match closed {
                Some(c) => {
                    let (mean, rest) = split_closed_form(dense, c.value, c.multiplicity);
                    (Some(ClosedForm { value: Num(mean), multiplicity: c.multiplicity }), rest)
                }
                None => (None, dense),
            }
        }
    };
    let rho = *quotient.last().expect("quotient order is at least 3");
    let verification = if method == Method::All { Some(verification(bug, alpha, rho, cfg)?) } else { None };
    Ok(SpectrumReport {
        input: echo(bug, Some(alpha)),
        method,
        closed_form,
        quotient_eigenvalues: quotient.into_iter().map(Num).collect(),
        rho: Num(rho),
        timings_ms: None,
        verification,
    })
}

fn verification(bug: &BugInput, alpha: Alpha, rho: f64, cfg: &SolveConfig) -> Result<Verification, CliError> {
    let b = &bug.spec;
    let oracle = check_oracle(b, alpha, ORACLE_TOL, cfg)?;
    let p = check_perron(b, alpha, cfg)?;
    let perron = PerronReport {
        rho: Num(p.rho_power),
        deviation: Num(p.deviation),
        residual: Num(p.residual),
        min_entry: Num(p.min_entry),
        passed: p.passed(ORACLE_TOL),
    };
    let cluster = check_closed_form_multiplicity(b, alpha, MULTIPLICITY_RADIUS, cfg)?.map(|m| ClusterReport {
        expected: m.expected,
        found: m.found,
        quotient_coincidences: m.quotient_coincidences,
        passed: m.passed(),
    });
    let halved = if is_symmetric_bug(bug) {
        let h = *tridiag_eigenvalues(&halved_tridiagonal(b.n(), b.d(), alpha)?, cfg).last().expect("order ≥ 3");
        let deviation = (h - rho).abs();
        Some(HalvedReport { rho: Num(h), deviation: Num(deviation), passed: deviation <= HALVED_RHO_TOL })
    } else {
        None
    };
    let passed = oracle.matched
        && perron.passed
        && cluster.is_none_or(|c| c.passed)
        && halved.as_ref().is_none_or(|h| h.passed);
    Ok(Verification {
        oracle_matched: oracle.matched,
        oracle_max_deviation: Num(oracle.max_abs_deviation),
        oracle_tolerance: Num(ORACLE_TOL),
        perron,
        closed_form_cluster: cluster,
        halved,
        passed,
    })
}

fn sweep(bug: &BugInput, alphas: &[Alpha], method: Method, cfg: &SolveConfig) -> Result<SweepReport, CliError> {
    let rows = alphas
        .iter()
        .map(|&a| {
            let s = spectrum(bug, a, method, cfg)?;
            Ok(SweepRow {
                alpha: Num(a.value()),
                rho: s.rho,
                closed_form: s.closed_form.map(|c| c.value),
                closed_mult: s.closed_form.map_or(0, |c| c.multiplicity),
                min_quotient: s.quotient_eigenvalues[0],
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(SweepReport { input: echo(bug, None), method, rows, timings_ms: None })
}

fn scan(n: usize, d: usize, alpha: Alpha, cfg: &SolveConfig) -> Result<ScanReport, CliError> {
    let rows = extremal_scan(n, d, alpha, cfg)?;
    let argmax = rows.iter().find(|r| r.is_argmax).map(|r| r.i).expect("scan flags one row");
    Ok(ScanReport {
        input: ScanInput { n, d, alpha: Num(alpha.value()) },
        rows: rows.into_iter().map(|r| ScanRowReport { i: r.i, rho: Num(r.rho), is_argmax: r.is_argmax }).collect(),
        argmax,
        timings_ms: None,
    })
}

fn verify(grid: &VerifyGrid, cfg: &SolveConfig) -> Result<VerifyReport, CliError> {
    let summary = run_grid(grid, cfg)?;
    Ok(VerifyReport {
        max_n: grid.max_n,
        alphas: grid.alphas.iter().map(|a| Num(a.value())).collect(),
        all_passed: summary.all_passed(),
        total_cases: summary.total_cases(),
        total_failures: summary.total_failures(),
        checks: summary
            .checks
            .into_iter()
            .map(|c| CheckReport {
                name: c.name,
                cases: c.cases,
                passed: c.passed(),
                failed: c.failures.len(),
                worst_deviation: Num(c.worst_deviation),
                failures: c.failures,
                notes: c.notes,
            })
            .collect(),
        timings_ms: None,
    })
}
