//! Cross-checks between the structured path and the dense oracle.

use std::fmt::Write as _;

use crate::alpha::Alpha;
use crate::eigensolve::{jacobi_eigenvalues, perron_pair, sturm_count, tridiag_eigenvalues, SolveConfig};
use crate::error::{domain, Error, Result};
use crate::graph::{assemble_dense_alpha, bug_to_hjoin, BugSpec, DenseSym};
use crate::spectrum::{cluster_threshold, Spectrum};
use crate::structured::{
    bug_closed_form, bug_spectrum, bug_tridiagonal, halved_spectral_radius, proof_decomposition, spectral_radius,
};

/// Default L∞ tolerance between structured and dense spectra.
pub const ORACLE_TOL: f64 = 1e-8;
/// Default strict-interlacing margin.
pub const INTERLACING_MARGIN: f64 = 1e-10;
/// Tolerance between the halved and full spectral radii.
pub const HALVED_RHO_TOL: f64 = 1e-9;
/// Absolute cluster radius for closed-form multiplicity counts.
pub const MULTIPLICITY_RADIUS: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub matched: bool,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    /// `(structured, dense)` after expanding and sorting both sides.
    pub pairing: Vec<(f64, f64)>,
    pub multiplicity_diagnostics: String,
}

/// L∞ distance between the sorted expansion of `structured` and `dense`.
pub fn compare_spectra(structured: &Spectrum, dense: &[f64], tol: f64) -> Result<ComparisonReport> {
    let expanded = structured.expanded();
    if expanded.len() != dense.len() {
        return Err(Error::CardinalityMismatch { structured: expanded.len(), dense: dense.len() });
    }
    let mut sorted_dense = dense.to_vec();
    sorted_dense.sort_by(f64::total_cmp);
    let pairing: Vec<_> = expanded.into_iter().zip(sorted_dense).collect();
    let max_abs_deviation = pairing.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let radius = cluster_threshold(structured.max().unwrap_or(0.0));
    let mut multiplicity_diagnostics = String::new();
    for e in structured.entries().iter().filter(|e| e.multiplicity > 1) {
        let dense_count = pairing.iter().filter(|(_, d)| (d - e.value).abs() <= radius).count();
        let _ = write!(
            multiplicity_diagnostics,
            "{}{} {:.6}: structured x{}, dense x{}",
            if multiplicity_diagnostics.is_empty() { "" } else { "; " },
            e.source,
            e.value,
            e.multiplicity,
            dense_count
        );
    }
    Ok(ComparisonReport {
        matched: max_abs_deviation <= tol,
        max_abs_deviation,
        tolerance: tol,
        pairing,
        multiplicity_diagnostics,
    })
}

/// True iff `outer[k] + margin < inner[k] < outer[k+1] − margin` for every `k`.
pub fn check_interlacing(inner: &[f64], outer: &[f64], strict_margin: f64) -> Result<bool> {
    if outer.len() != inner.len() + 1 {
        return Err(Error::InterlacingLength { inner: inner.len(), outer: outer.len() });
    }
    Ok(inner
        .iter()
        .enumerate()
        .all(|(k, &mu)| outer[k] + strict_margin < mu && mu < outer[k + 1] - strict_margin))
}

/// Smallest gap between an inner eigenvalue and its two outer neighbours.
pub fn interlacing_gap(inner: &[f64], outer: &[f64]) -> f64 {
    inner
        .iter()
        .enumerate()
        .map(|(k, &mu)| (mu - outer[k]).min(outer[k + 1] - mu))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub i: usize,
    pub rho: f64,
    pub is_argmax: bool,
}

/// `ρ_α(B(i))` for every canonical `i ∈ 1..=⌊d/2⌋`.
///
/// Radii within `1e−12 · max(1, ρ)` of each other count as tied; ties go to
/// the larger `i`.
pub fn extremal_scan(n: usize, d: usize, alpha: Alpha, cfg: &SolveConfig) -> Result<Vec<ScanRow>> {
    if d < 2 || n < d + 2 {
        return Err(domain(format!("extremal scan needs d ≥ 2 and n ≥ d + 2, got n = {n}, d = {d}")));
    }
    let mut rows = (1..=d / 2)
        .map(|i| Ok(ScanRow { i, rho: spectral_radius(&BugSpec::new(n, d, i)?, alpha, cfg), is_argmax: false }))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (k, row) in rows.iter().enumerate() {
        if row.rho >= rows[best].rho - 1e-12 * rows[best].rho.abs().max(1.0) {
            best = k;
        }
    }
    rows[best].is_argmax = true;
    Ok(rows)
}

/// Every valid canonical bug with `n ≤ max_n`, ordered by `(n, d, i)`.
pub fn bugs_up_to(max_n: usize) -> Vec<BugSpec> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for d in 2..n {
            for i in 1..=d / 2 {
                out.push(BugSpec::new(n, d, i).expect("enumerated parameters are valid"));
            }
        }
    }
    out
}

/// Dense matrix with `diag_weight · deg(v)` on the diagonal and
/// `off_weight` on every edge, assembled straight from an edge list.
pub fn edge_list_matrix(n: usize, edges: &[(usize, usize)], diag_weight: f64, off_weight: f64) -> DenseSym {
    let mut degree = vec![0usize; n];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut rows = vec![vec![0.0; n]; n];
    for &(u, v) in edges {
        rows[u][v] = off_weight;
        rows[v][u] = off_weight;
    }
    for (v, row) in rows.iter_mut().enumerate() {
        row[v] = diag_weight * degree[v] as f64;
    }
    DenseSym::from_rows(&rows).expect("assembled symmetrically")
}

/// Structured spectrum against Jacobi on the dense `A_α`.
pub fn check_oracle(b: &BugSpec, alpha: Alpha, tol: f64, cfg: &SolveConfig) -> Result<ComparisonReport> {
    let dense = jacobi_eigenvalues(&assemble_dense_alpha(&bug_to_hjoin(b), alpha)?, cfg)?;
    compare_spectra(&bug_spectrum(b, alpha, cfg), &dense, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplicityCheck {
    pub value: f64,
    /// Closed-form multiplicity `n − d − 1`.
    pub expected: usize,
    /// Dense eigenvalues within the radius.
    pub found: usize,
    /// Eigenvalues of the tridiagonal quotient within the same radius, by
    /// Sturm count. Nonzero when a quotient eigenvalue lands exactly on the
    /// closed-form value (for example `K_4 − e` at `α = ½`).
    pub quotient_coincidences: usize,
    /// Largest distance from `value` among the dense values counted.
    pub spread: f64,
}

impl MultiplicityCheck {
    /// Dense count equals the closed-form multiplicity plus coincident
    /// quotient eigenvalues.
    pub fn passed(&self) -> bool {
        self.found == self.expected + self.quotient_coincidences
    }

    /// Dense count equals `n − d − 1` exactly.
    pub fn exact(&self) -> bool {
        self.found == self.expected
    }
}

/// Counts dense eigenvalues within `radius` of `(n − d + 2)α − 1`. `None`
/// when `n − d = 1`.
pub fn check_closed_form_multiplicity(
    b: &BugSpec,
    alpha: Alpha,
    radius: f64,
    cfg: &SolveConfig,
) -> Result<Option<MultiplicityCheck>> {
    let Some(closed) = bug_closed_form(b, alpha) else {
        return Ok(None);
    };
    let dense = jacobi_eigenvalues(&assemble_dense_alpha(&bug_to_hjoin(b), alpha)?, cfg)?;
    let near: Vec<f64> = dense.iter().map(|x| (x - closed.value).abs()).filter(|&x| x <= radius).collect();
    let t = bug_tridiagonal(b, alpha);
    let quotient_coincidences = sturm_count(&t, closed.value + radius) - sturm_count(&t, closed.value - radius);
    Ok(Some(MultiplicityCheck {
        value: closed.value,
        expected: closed.multiplicity,
        found: near.len(),
        quotient_coincidences,
        spread: near.into_iter().fold(0.0, f64::max),
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerronCheck {
    pub rho_power: f64,
    pub rho_structured: f64,
    pub deviation: f64,
    pub min_entry: f64,
    pub residual: f64,
    pub residual_bound: f64,
}

impl PerronCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.deviation <= tol && self.min_entry > 0.0 && self.residual < self.residual_bound
    }
}

/// Power iteration on the dense `A_α` against the structured maximum.
pub fn check_perron(b: &BugSpec, alpha: Alpha, cfg: &SolveConfig) -> Result<PerronCheck> {
    let dense = assemble_dense_alpha(&bug_to_hjoin(b), alpha)?;
    let pair = perron_pair(&dense, cfg)?;
    let rho_structured = spectral_radius(b, alpha, cfg);
    Ok(PerronCheck {
        rho_power: pair.rho,
        rho_structured,
        deviation: (pair.rho - rho_structured).abs(),
        min_entry: pair.vector.iter().copied().fold(f64::INFINITY, f64::min),
        residual: pair.residual,
        residual_bound: cfg.power_tol * pair.rho.abs().max(1.0),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalvingCheck {
    /// `|ρ(halved) − ρ(M(B(d/2)))|`.
    pub rho_deviation: f64,
    /// L∞ between `σ(bordered) ⊎ σ(S)` and `σ(M(B(d/2)))`.
    pub union_deviation: f64,
    pub interlaced: bool,
    pub interlacing_gap: f64,
}

impl HalvingCheck {
    pub fn passed(&self) -> bool {
        self.rho_deviation <= HALVED_RHO_TOL && self.union_deviation <= ORACLE_TOL && self.interlaced
    }
}

/// Halved radius, spectral decomposition and strict interlacing for a
/// symmetric bug (`d` even, `i = d/2`).
pub fn check_halving(b: &BugSpec, alpha: Alpha, margin: f64, cfg: &SolveConfig) -> Result<HalvingCheck> {
    let parts = proof_decomposition(b, alpha)?;
    let full = tridiag_eigenvalues(&bug_tridiagonal(b, alpha), cfg);
    let outer = tridiag_eigenvalues(&parts.bordered, cfg);
    let inner = tridiag_eigenvalues(&parts.inner, cfg);

    let halved_rho = halved_spectral_radius(b.n(), b.d(), alpha, cfg)?;
    let full_rho = *full.last().expect("order d + 1 ≥ 5");

    let mut union: Vec<f64> = outer.iter().chain(&inner).copied().collect();
    union.sort_by(f64::total_cmp);
    let union_deviation = union.iter().zip(&full).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    Ok(HalvingCheck {
        rho_deviation: (halved_rho - full_rho).abs(),
        union_deviation,
        interlaced: check_interlacing(&inner, &outer, margin)?,
        interlacing_gap: interlacing_gap(&inner, &outer),
    })
}

/// At `α = 0` against the adjacency matrix and at `α = ½` against `½·Q`,
/// both assembled from the literal edge list. Returns the two L∞ deviations.
pub fn check_special_alphas(b: &BugSpec, cfg: &SolveConfig) -> Result<(f64, f64)> {
    let edges = b.edges();
    let adjacency = edge_list_matrix(b.n(), &edges, 0.0, 1.0);
    let signless = edge_list_matrix(b.n(), &edges, 1.0, 1.0);
    let adj_eigs = jacobi_eigenvalues(&adjacency, cfg)?;
    let half_q: Vec<f64> = jacobi_eigenvalues(&signless, cfg)?.into_iter().map(|x| 0.5 * x).collect();
    let at_zero = compare_spectra(&bug_spectrum(b, Alpha::new(0.0)?, cfg), &adj_eigs, f64::INFINITY)?;
    let at_half = compare_spectra(&bug_spectrum(b, Alpha::new(0.5)?, cfg), &half_q, f64::INFINITY)?;
    Ok((at_zero.max_abs_deviation, at_half.max_abs_deviation))
}

/// Four-decimal reference spectrum of `B_{8,2,3}` at `α = 0.6`.
pub const GOLDEN_BUG: (usize, usize, usize) = (11, 5, 2);
pub const GOLDEN_ALPHA: f64 = 0.6;
pub const GOLDEN_CLOSED_FORM: (f64, usize) = (3.8, 5);
pub const GOLDEN_QUOTIENT: [f64; 6] = [0.3909, 0.5539, 1.3521, 3.5403, 4.2486, 6.9144];
/// Half a unit in the fourth decimal place.
pub const GOLDEN_TOL: f64 = 5e-5;

/// Worst deviation of the structured path from the 4-d.p. reference values;
/// `None` if the closed-form multiplicity is wrong.
pub fn check_golden(cfg: &SolveConfig) -> Result<Option<f64>> {
    let (n, d, i) = GOLDEN_BUG;
    let b = BugSpec::new(n, d, i)?;
    let alpha = Alpha::new(GOLDEN_ALPHA)?;
    let closed = bug_closed_form(&b, alpha).ok_or_else(|| domain("golden bug has a closed-form eigenvalue"))?;
    if closed.multiplicity != GOLDEN_CLOSED_FORM.1 {
        return Ok(None);
    }
    let quotient = tridiag_eigenvalues(&bug_tridiagonal(&b, alpha), cfg);
    let worst = quotient
        .iter()
        .zip(GOLDEN_QUOTIENT)
        .map(|(a, b)| (a - b).abs())
        .fold((closed.value - GOLDEN_CLOSED_FORM.0).abs(), f64::max);
    Ok(Some(worst))
}

/// Bounds for [`run_grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyGrid {
    pub max_n: usize,
    pub alphas: Vec<Alpha>,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        Self {
            max_n: 12,
            alphas: [0.0, 0.25, 0.5, 0.75, 0.99].into_iter().map(|a| Alpha::new(a).unwrap()).collect(),
        }
    }
}

/// Outcome of one family of checks over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Worst observed deviation, where the check has one.
    pub worst_deviation: f64,
    /// Cases that passed only once a coincident quotient eigenvalue was
    /// counted into the closed-form cluster.
    pub notes: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: Vec::new(), worst_deviation: 0.0, notes: Vec::new() }
    }

    fn record(&mut self, ok: bool, deviation: f64, label: impl FnOnce() -> String) {
        self.cases += 1;
        self.worst_deviation = self.worst_deviation.max(deviation);
        if !ok {
            self.failures.push(label());
        }
    }

    pub fn passed(&self) -> usize {
        self.cases - self.failures.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub checks: Vec<CheckOutcome>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn total_failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }
}

/// Symmetric bugs `B(n, d, d/2)` for even `d ∈ {4, 6, 8}`,
/// `d < n ≤ d + 6` and `α ∈ {0, 0.3, 0.7}`.
pub fn halving_grid() -> Vec<(BugSpec, Alpha)> {
    let mut out = Vec::new();
    for d in [4, 6, 8] {
        for n in d + 1..=d + 6 {
            for a in [0.0, 0.3, 0.7] {
                out.push((BugSpec::new(n, d, d / 2).expect("valid"), Alpha::new(a).expect("in range")));
            }
        }
    }
    out
}

/// Runs every check over all bugs with `n ≤ max_n` and the given `α` grid.
///
/// Halving and interlacing always run over [`halving_grid`], since at `α`
/// close to 1 the interlacing gaps drop below double precision. Extremality
/// is asserted only at `α ∈ {0, ½}`, over `5 ≤ n ≤ max_n` and
/// `2 ≤ d ≤ n − 2`. The golden check runs when the grid contains the
/// reference bug and `α = 0.6`.
pub fn run_grid(grid: &VerifyGrid, cfg: &SolveConfig) -> Result<VerifySummary> {
    cfg.validate()?;
    let bugs = bugs_up_to(grid.max_n);
    let label = |b: &BugSpec, a: Alpha| format!("B(n={}, d={}, i={}) alpha={}", b.n(), b.d(), b.i(), a);

    let mut oracle = CheckOutcome::new("oracle");
    let mut multiplicity = CheckOutcome::new("closed-form-multiplicity");
    let mut perron = CheckOutcome::new("perron");
    for b in &bugs {
        for &a in &grid.alphas {
            let report = check_oracle(b, a, ORACLE_TOL, cfg)?;
            oracle.record(report.matched, report.max_abs_deviation, || label(b, a));

            if let Some(m) = check_closed_form_multiplicity(b, a, MULTIPLICITY_RADIUS, cfg)? {
                multiplicity.record(m.passed(), m.spread, || {
                    format!(
                        "{}: expected x{} + {} quotient, found x{}",
                        label(b, a),
                        m.expected,
                        m.quotient_coincidences,
                        m.found
                    )
                });
                if m.passed() && !m.exact() {
                    multiplicity.notes.push(format!("{}: x{} + {} quotient", label(b, a), m.expected, m.quotient_coincidences));
                }
            }

            let p = check_perron(b, a, cfg)?;
            perron.record(p.passed(ORACLE_TOL), p.deviation, || label(b, a));
        }
    }

    let mut halving = CheckOutcome::new("halving");
    let mut interlacing = CheckOutcome::new("interlacing");
    for (b, a) in halving_grid() {
        let h = check_halving(&b, a, INTERLACING_MARGIN, cfg)?;
        let ok = h.rho_deviation <= HALVED_RHO_TOL && h.union_deviation <= ORACLE_TOL;
        halving.record(ok, h.rho_deviation.max(h.union_deviation), || label(&b, a));
        interlacing.record(h.interlaced, 0.0, || format!("{}: gap {:e}", label(&b, a), h.interlacing_gap));
    }

    let mut special = CheckOutcome::new("special-alpha");
    for b in &bugs {
        let (adj, half_q) = check_special_alphas(b, cfg)?;
        special.record(adj <= ORACLE_TOL && half_q <= ORACLE_TOL, adj.max(half_q), || {
            format!("B(n={}, d={}, i={}): adjacency {adj:e}, signless {half_q:e}", b.n(), b.d(), b.i())
        });
    }

    let mut extremal = CheckOutcome::new("extremal");
    for a in [Alpha::new(0.0)?, Alpha::new(0.5)?] {
        for n in 5..=grid.max_n {
            for d in 2..=n - 2 {
                let rows = extremal_scan(n, d, a, cfg)?;
                let argmax = rows.iter().find(|r| r.is_argmax).map(|r| r.i);
                extremal.record(argmax == Some(d / 2), 0.0, || {
                    format!("n={n} d={d} alpha={a}: argmax i={argmax:?}")
                });
            }
        }
    }

    let mut checks = vec![oracle, multiplicity, perron, halving, interlacing, special, extremal];

    let (n, _, _) = GOLDEN_BUG;
    if grid.max_n >= n && grid.alphas.iter().any(|a| a.value() == GOLDEN_ALPHA) {
        let mut golden = CheckOutcome::new("golden-example");
        match check_golden(cfg)? {
            Some(worst) => golden.record(worst <= GOLDEN_TOL, worst, || "B_{8,2,3} alpha=0.6".into()),
            None => golden.record(false, f64::INFINITY, || "closed-form multiplicity".into()),
        }
        checks.push(golden);
    }
    Ok(VerifySummary { checks })
}
