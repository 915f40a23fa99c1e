//! Self-contained eigenvalue kernels.
//!
//! * Sturm-sequence bisection for symmetric tridiagonal matrices (the
//!   structured path).
//! * Cyclic-by-rows Jacobi for dense symmetric matrices (the oracle).
//! * Shifted power iteration for the Perron pair of a nonnegative
//!   irreducible matrix.

use crate::error::{domain, Error, Result};
use crate::graph::DenseSym;
use crate::tridiag::SymTridiag;

/// Stopping rules for the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    /// Bisection stops when an interval is narrower than this times
    /// `max(1, Gershgorin span)`.
    pub bisection_tol: f64,
    /// Jacobi stops when the off-diagonal Frobenius norm drops below this
    /// times the Frobenius norm of the input.
    pub jacobi_off_tol: f64,
    pub max_jacobi_sweeps: usize,
    /// Power iteration stops when `‖Av − ρv‖ < power_tol · max(1, ρ)`.
    pub power_tol: f64,
    pub max_power_iters: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            bisection_tol: 1e-13,
            jacobi_off_tol: 1e-12,
            max_jacobi_sweeps: 64,
            power_tol: 1e-10,
            max_power_iters: 100_000,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let tols = [self.bisection_tol, self.jacobi_off_tol, self.power_tol];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(domain("solver tolerances must be finite and positive"));
        }
        if self.max_jacobi_sweeps < 1 || self.max_power_iters < 1 {
            return Err(domain("solver iteration caps must be at least 1"));
        }
        Ok(())
    }
}

/// Interval `[lo, hi]` containing every eigenvalue, from Gershgorin discs.
pub fn gershgorin_interval(t: &SymTridiag) -> (f64, f64) {
    let (diag, off) = (t.diag(), t.offdiag());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (j, &a) in diag.iter().enumerate() {
        let left = if j > 0 { off[j - 1].abs() } else { 0.0 };
        let right = off.get(j).map_or(0.0, |e| e.abs());
        lo = lo.min(a - left - right);
        hi = hi.max(a + left + right);
    }
    (lo, hi)
}

/// Sturm counter with the squared off-diagonal and pivot floor precomputed.
struct Sturm<'a> {
    diag: &'a [f64],
    off_sq: Vec<f64>,
    pivot_floor: f64,
}

impl<'a> Sturm<'a> {
    fn new(t: &'a SymTridiag) -> Self {
        let (lo, hi) = gershgorin_interval(t);
        let scale = lo.abs().max(hi.abs()).max(1.0);
        Self {
            diag: t.diag(),
            off_sq: t.offdiag().iter().map(|e| e * e).collect(),
            pivot_floor: f64::EPSILON * scale,
        }
    }

    /// Number of negative pivots of the LDLᵀ factorization of `T − xI`.
    fn count(&self, x: f64) -> usize {
        let floor = self.pivot_floor * (1.0 + x.abs());
        let mut count = 0;
        let mut pivot = 1.0;
        for (j, &a) in self.diag.iter().enumerate() {
            pivot = if j == 0 { a - x } else { (a - x) - self.off_sq[j - 1] / pivot };
            if pivot.abs() < floor {
                pivot = -floor;
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }
}

/// Number of eigenvalues of `t` strictly less than `x`.
pub fn sturm_count(t: &SymTridiag, x: f64) -> usize {
    Sturm::new(t).count(x)
}

/// Padded bracketing interval and the absolute bisection width.
fn bracket(t: &SymTridiag, cfg: &SolveConfig) -> (f64, f64, f64) {
    let (lo, hi) = gershgorin_interval(t);
    let width = cfg.bisection_tol * (hi - lo).max(1.0);
    let pad = width + 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    (lo - pad, hi + pad, width)
}

fn bisect_all(s: &Sturm, lo: f64, hi: f64, below_lo: usize, below_hi: usize, width: f64, out: &mut [f64]) {
    if below_hi <= below_lo {
        return;
    }
    let mid = 0.5 * (lo + hi);
    if hi - lo <= width || mid <= lo || mid >= hi {
        out[below_lo..below_hi].fill(mid);
        return;
    }
    let below_mid = s.count(mid).clamp(below_lo, below_hi);
    bisect_all(s, lo, mid, below_lo, below_mid, width, out);
    bisect_all(s, mid, hi, below_mid, below_hi, width, out);
}

/// All eigenvalues of `t`, ascending.
pub fn tridiag_eigenvalues(t: &SymTridiag, cfg: &SolveConfig) -> Vec<f64> {
    let m = t.order();
    if m == 1 {
        return t.diag().to_vec();
    }
    let s = Sturm::new(t);
    let (lo, hi, width) = bracket(t, cfg);
    let mut out = vec![0.0; m];
    bisect_all(&s, lo, hi, 0, m, width, &mut out);
    out
}

/// The `k`-th smallest eigenvalue (0-based), bisecting only its bracket.
pub fn tridiag_kth_eigenvalue(t: &SymTridiag, k: usize, cfg: &SolveConfig) -> f64 {
    assert!(k < t.order(), "eigenvalue index {k} out of range");
    if t.order() == 1 {
        return t.diag()[0];
    }
    let s = Sturm::new(t);
    let (mut lo, mut hi, width) = bracket(t, cfg);
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= width || mid <= lo || mid >= hi {
            return mid;
        }
        if s.count(mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Largest eigenvalue of `t`.
pub fn tridiag_largest(t: &SymTridiag, cfg: &SolveConfig) -> f64 {
    tridiag_kth_eigenvalue(t, t.order() - 1, cfg)
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * sum).sqrt()
}

/// All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn jacobi_eigenvalues(m: &DenseSym, cfg: &SolveConfig) -> Result<Vec<f64>> {
    let n = m.order();
    let mut a = m.as_slice().to_vec();
    let target = cfg.jacobi_off_tol * m.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off <= target {
            break;
        }
        if sweeps == cfg.max_jacobi_sweeps {
            return Err(Error::JacobiConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
    }
    let mut values: Vec<f64> = (0..n).map(|j| a[j * n + j]).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Dominant eigenpair of a nonnegative irreducible symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronPair {
    pub rho: f64,
    /// Unit-norm eigenvector with strictly positive entries.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Power iteration from the all-ones vector.
///
/// The iteration runs on `A + σI` with `σ = max(0, −lo)/2`, `lo` the
/// Gershgorin lower bound. A bipartite graph has `−ρ` in its adjacency
/// spectrum, which stalls the unshifted iteration; any `σ > 0` separates it.
/// When `lo ≥ 0` no shift is applied.
pub fn perron_pair(m: &DenseSym, cfg: &SolveConfig) -> Result<PerronPair> {
    let n = m.order();
    if n == 0 {
        return Err(domain("Perron pair of an empty matrix"));
    }
    let lo = (0..n)
        .map(|a| {
            let radius: f64 = m.row(a).iter().enumerate().filter(|&(b, _)| b != a).map(|(_, x)| x.abs()).sum();
            m.get(a, a) - radius
        })
        .fold(f64::INFINITY, f64::min);
    let shift = 0.5 * (-lo).max(0.0);

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut residual = f64::INFINITY;
    for iteration in 0..cfg.max_power_iters {
        let w = m.mul_vec(&v);
        let rho: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        residual = w.iter().zip(&v).map(|(a, b)| (a - rho * b).powi(2)).sum::<f64>().sqrt();
        if residual < cfg.power_tol * rho.abs().max(1.0) {
            if let Some(index) = v.iter().position(|&x| x <= 0.0) {
                return Err(Error::NonPositivePerronVector { index });
            }
            return Ok(PerronPair { rho, vector: v, residual, iterations: iteration });
        }
        let mut next: Vec<f64> = w.iter().zip(&v).map(|(a, b)| a + shift * b).collect();
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(domain("power iteration collapsed to the zero vector"));
        }
        next.iter_mut().for_each(|x| *x /= norm);
        v = next;
    }
    Err(Error::PowerIteration { iterations: cfg.max_power_iters, residual })
}
