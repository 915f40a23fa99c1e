//! Structured spectral reductions for H-joins and bugs.
//!
//! For an H-join of regular graphs, every eigenvalue of `A_α` either comes
//! from a component (shifted by `α·s_j`) or from the `k × k` quotient matrix
//! with diagonal `α·s_j + r_j` and off-diagonal `(1 − α)·√(n_a·n_b)` on host
//! edges. For a bug the host is a path, so the quotient is tridiagonal of
//! order `d + 1`, and the only component eigenvalue is `(n − d + 2)·α − 1`
//! with multiplicity `n − d − 1`.
//!
//! When `d` is even and `i = d/2` the quotient is symmetric about its center.
//! An orthogonal similarity splits it into a bordered matrix of order
//! `d/2 + 1` (which holds `ρ_α`) and its leading block `S` of order `d/2`.

use crate::alpha::Alpha;
use crate::eigensolve::{jacobi_eigenvalues, tridiag_eigenvalues, tridiag_largest, SolveConfig};
use crate::error::{domain, Error, Result};
use crate::graph::{complete_graph_alpha_spectrum, BugSpec, DenseSym, HJoinSpec};
use crate::spectrum::{Eigenvalue, Source, Spectrum};
use crate::tridiag::SymTridiag;

/// The quotient matrix `M(G)` of an H-join.
pub fn quotient_matrix(h: &HJoinSpec, alpha: Alpha) -> DenseSym {
    let (a, beta) = (alpha.value(), alpha.beta());
    let comps = h.components();
    DenseSym::from_fn(h.host_order(), |x, y| {
        if x == y {
            a * h.neighbor_order(x) as f64 + comps[x].degree() as f64
        } else if h.adjacent(x, y) {
            beta * ((comps[x].order() * comps[y].order()) as f64).sqrt()
        } else {
            0.0
        }
    })
}

fn banded_to_tridiag(m: &DenseSym) -> SymTridiag {
    let k = m.order();
    let diag = (0..k).map(|j| m.get(j, j)).collect();
    let off = (0..k.saturating_sub(1)).map(|j| m.get(j, j + 1)).collect();
    SymTridiag::new(diag, off).expect("quotient entries are finite")
}

/// Full spectrum of an H-join of complete graphs.
///
/// A component `K_m` with `m > 1` contributes `α·s_j + α·m − 1` with
/// multiplicity `m − 1`; the quotient matrix contributes the rest.
pub fn hjoin_spectrum(h: &HJoinSpec, alpha: Alpha, cfg: &SolveConfig) -> Result<Spectrum> {
    let mut entries = Vec::new();
    for (j, c) in h.components().iter().enumerate() {
        if !c.is_complete() {
            return Err(Error::UnsupportedComponent { index: j });
        }
        if c.order() == 1 {
            continue;
        }
        let shift = alpha.value() * h.neighbor_order(j) as f64;
        let own = complete_graph_alpha_spectrum(c.order(), alpha)?;
        // Drop r_j = m − 1; for α < 1 the remaining value α·m − 1 is distinct.
        let rest = own
            .entries()
            .iter()
            .find(|e| e.value != c.degree() as f64)
            .expect("K_m with m > 1 has a second eigenvalue");
        entries.push(Eigenvalue::new(shift + rest.value, c.order() - 1, Source::ClosedForm));
    }
    let quotient = quotient_matrix(h, alpha);
    let values = if h.host_is_banded() {
        tridiag_eigenvalues(&banded_to_tridiag(&quotient), cfg)
    } else {
        jacobi_eigenvalues(&quotient, cfg)?
    };
    entries.extend(values.into_iter().map(|v| Eigenvalue::new(v, 1, Source::Quotient)));
    Ok(Spectrum::from_entries(entries))
}

/// The order-`(d+1)` tridiagonal quotient `M(B(i))`, written directly.
///
/// Host cell `j` carries `K_{n−d}` when `j = i` and `K_1` otherwise. Its
/// diagonal entry is `α·(n_{j−1} + n_{j+1}) + n_j − 1` and the coupling to
/// cell `j + 1` is `β·√(n_j·n_{j+1})`, which gives `α` at the path ends,
/// `2α` along the paths, `α(n−d+1)` (or `α(n−d)` when `i = 1`) next to the
/// clique, `2α + n − d − 1` on the clique cell, and `β√(n−d)` on its two
/// couplings.
pub fn bug_tridiagonal(b: &BugSpec, alpha: Alpha) -> SymTridiag {
    let (a, beta) = (alpha.value(), alpha.beta());
    let k = b.d() + 1;
    let clique = b.clique_order() as f64;
    let size = |j: usize| if j == b.i() { clique } else { 1.0 };
    let diag = (0..k)
        .map(|j| {
            let left = if j > 0 { size(j - 1) } else { 0.0 };
            let right = if j + 1 < k { size(j + 1) } else { 0.0 };
            size(j) - 1.0 + a * (left + right)
        })
        .collect();
    let off = (0..k - 1).map(|j| beta * (size(j) * size(j + 1)).sqrt()).collect();
    SymTridiag::new(diag, off).expect("bug entries are finite")
}

/// `(n − d + 2)·α − 1` with multiplicity `n − d − 1`, or `None` when `n − d = 1`.
pub fn bug_closed_form(b: &BugSpec, alpha: Alpha) -> Option<Eigenvalue> {
    let mult = b.clique_order() - 1;
    (mult > 0).then(|| Eigenvalue::new(b.p() as f64 * alpha.value() - 1.0, mult, Source::ClosedForm))
}

/// Complete spectrum of `A_α(B(i))`: the closed-form eigenvalue plus the
/// `d + 1` simple eigenvalues of [`bug_tridiagonal`].
pub fn bug_spectrum(b: &BugSpec, alpha: Alpha, cfg: &SolveConfig) -> Spectrum {
    let quotient = tridiag_eigenvalues(&bug_tridiagonal(b, alpha), cfg);
    let mut entries: Vec<_> = quotient.into_iter().map(|v| Eigenvalue::new(v, 1, Source::Quotient)).collect();
    entries.extend(bug_closed_form(b, alpha));
    Spectrum::from_entries(entries)
}

fn require_even_diameter(d: usize) -> Result<()> {
    if d < 4 || !d.is_multiple_of(2) {
        return Err(domain(format!("halving needs an even diameter d ≥ 4, got {d}")));
    }
    Ok(())
}

/// The leading block `S` of `M(B(d/2))`, order `d/2`: diagonal
/// `(α, 2α, …, 2α, (n−d+1)α)` with every coupling `β`.
fn leading_block(n: usize, d: usize, alpha: Alpha) -> SymTridiag {
    let (a, beta) = (alpha.value(), alpha.beta());
    let half = d / 2;
    let mut diag = vec![2.0 * a; half];
    diag[0] = a;
    diag[half - 1] = (n - d + 1) as f64 * a;
    SymTridiag::new(diag, vec![beta; half - 1]).expect("finite entries")
}

/// The order-`(d/2 + 1)` matrix whose largest eigenvalue is
/// `ρ_α(B_{n−d+2, d/2, d/2})`.
pub fn halved_tridiagonal(n: usize, d: usize, alpha: Alpha) -> Result<SymTridiag> {
    require_even_diameter(d)?;
    if n < d + 1 {
        return Err(domain(format!("order n = {n} must be at least d + 1 = {}", d + 1)));
    }
    let s = leading_block(n, d, alpha);
    let clique = (n - d) as f64;
    let mut diag = s.diag().to_vec();
    diag.push(clique - 1.0 + 2.0 * alpha.value());
    let mut off = s.offdiag().to_vec();
    off.push(alpha.beta() * (2.0 * clique).sqrt());
    SymTridiag::new(diag, off)
}

/// Splitting of a symmetric bug's quotient under the orthogonal similarity
/// that folds `M(B(d/2))` about its center.
#[derive(Debug, Clone, PartialEq)]
pub struct HalvingDecomposition {
    /// `[S, √2·b; √2·bᵀ, 2α + n − d − 1]`, identical to [`halved_tridiagonal`].
    pub bordered: SymTridiag,
    /// The leading block `S`.
    pub inner: SymTridiag,
}

/// Returns the bordered matrix and `S` such that
/// `σ(M(B(d/2))) = σ(bordered) ⊎ σ(S)`.
pub fn proof_decomposition(b: &BugSpec, alpha: Alpha) -> Result<HalvingDecomposition> {
    require_even_diameter(b.d())?;
    if b.i() != b.d() / 2 {
        return Err(domain(format!("halving needs i = d/2 = {}, got i = {}", b.d() / 2, b.i())));
    }
    Ok(HalvingDecomposition {
        bordered: halved_tridiagonal(b.n(), b.d(), alpha)?,
        inner: leading_block(b.n(), b.d(), alpha),
    })
}

/// `ρ_α(B(i))`, the largest eigenvalue of [`bug_tridiagonal`].
///
/// Only the top eigenvalue is bisected. The Perron vector is constant on
/// each clique block, so `ρ_α` is always a quotient eigenvalue.
pub fn spectral_radius(b: &BugSpec, alpha: Alpha, cfg: &SolveConfig) -> f64 {
    tridiag_largest(&bug_tridiagonal(b, alpha), cfg)
}

/// `ρ_α` of the symmetric bug from the halved matrix.
pub fn halved_spectral_radius(n: usize, d: usize, alpha: Alpha, cfg: &SolveConfig) -> Result<f64> {
    Ok(tridiag_largest(&halved_tridiagonal(n, d, alpha)?, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bug_to_hjoin, RegularComponent};
    use approx::assert_abs_diff_eq;

    fn alpha(x: f64) -> Alpha {
        Alpha::new(x).unwrap()
    }

    fn bug(n: usize, d: usize, i: usize) -> BugSpec {
        BugSpec::new(n, d, i).unwrap()
    }

    fn assert_slice_close(got: &[f64], expected: &[f64], eps: f64) {
        assert_eq!(got.len(), expected.len(), "{got:?} vs {expected:?}");
        for (g, e) in got.iter().zip(expected) {
            assert_abs_diff_eq!(*g, *e, epsilon = eps);
        }
    }

    const REFERENCE_EIGENVALUES: [f64; 6] = [0.3909, 0.5539, 1.3521, 3.5403, 4.2486, 6.9144];

    #[test]
    fn bug_tridiagonal_matches_printed_example() {
        let t = bug_tridiagonal(&bug(11, 5, 2), alpha(0.6));
        assert_slice_close(t.diag(), &[0.6, 4.2, 6.2, 4.2, 1.2, 0.6], 1e-12);
        assert_slice_close(t.offdiag(), &[0.4, 0.9798, 0.9798, 0.4, 0.4], 5e-5);
    }

    #[test]
    fn bug_tridiagonal_path_collapse() {
        let a = alpha(0.3);
        let t = bug_tridiagonal(&bug(4, 3, 1), a);
        assert_slice_close(t.diag(), &[0.3, 0.6, 0.6, 0.3], 1e-15);
        assert_slice_close(t.offdiag(), &[0.7; 3], 1e-15);
    }

    #[test]
    fn bug_tridiagonal_substitution() {
        let t = bug_tridiagonal(&bug(10, 4, 2), alpha(0.0));
        assert_slice_close(t.diag(), &[0.0, 0.0, 5.0, 0.0, 0.0], 1e-15);
        let r6 = 6f64.sqrt();
        assert_slice_close(t.offdiag(), &[1.0, r6, r6, 1.0], 1e-15);
    }

    #[test]
    fn x1_block_for_i_equal_one() {
        // X_1 = [α(n−d), β√(n−d), 0; β√(n−d), 2α+n−d−1, β√(n−d); 0, β√(n−d), α(n−d+1)]
        let (n, d) = (10, 7);
        let a = alpha(0.25);
        let t = bug_tridiagonal(&bug(n, d, 1), a);
        let c = (n - d) as f64;
        assert_slice_close(&t.diag()[..3], &[0.25 * c, 0.5 + c - 1.0, 0.25 * (c + 1.0)], 1e-15);
        assert_slice_close(&t.offdiag()[..3], &[0.75 * c.sqrt(), 0.75 * c.sqrt(), 0.75], 1e-15);
        assert_slice_close(&t.diag()[3..], &[0.5, 0.5, 0.5, 0.5, 0.25], 1e-15);
    }

    #[test]
    fn matches_block_form_with_reversed_tail() {
        // M(B(i)) = [X_i, βF; βFᵀ, J·T_{d−i−1}·J]
        let (n, d, i) = (14, 8, 3);
        let a = alpha(0.4);
        let t = bug_tridiagonal(&bug(n, d, i), a);
        let tail_len = d - i - 1;
        let mut tail_diag = vec![0.8; tail_len];
        tail_diag[0] = 0.4;
        let tail = SymTridiag::new(tail_diag, vec![0.6; tail_len - 1]).unwrap().reversed();
        assert_slice_close(&t.diag()[i + 2..], tail.diag(), 1e-15);
        assert_slice_close(&t.offdiag()[i + 2..], tail.offdiag(), 1e-15);
        assert_abs_diff_eq!(t.offdiag()[i + 1], 0.6, epsilon = 1e-15);
    }

    #[test]
    fn tridiagonal_equals_generic_quotient() {
        for (n, d, i) in [(11, 5, 2), (4, 3, 1), (10, 4, 2), (6, 2, 1), (20, 9, 4), (9, 8, 1)] {
            for x in [0.0, 0.37, 0.99] {
                let b = bug(n, d, i);
                let t = bug_tridiagonal(&b, alpha(x));
                let q = quotient_matrix(&bug_to_hjoin(&b), alpha(x));
                assert_eq!(t.to_dense(), q, "B({n},{d},{i}) at α = {x}");
            }
        }
    }

    #[test]
    fn quotient_of_single_complete_graph() {
        let h = HJoinSpec::new(vec![RegularComponent::complete(6).unwrap()], vec![]).unwrap();
        let q = quotient_matrix(&h, alpha(0.7));
        assert_eq!(q.order(), 1);
        assert_eq!(q.get(0, 0), 5.0);
    }

    #[test]
    fn hjoin_spectrum_of_b823() {
        let h = bug_to_hjoin(&bug(11, 5, 2));
        let s = hjoin_spectrum(&h, alpha(0.6), &SolveConfig::default()).unwrap();
        assert_eq!(s.total_multiplicity(), 11);
        let closed: Vec<_> = s.from_source(Source::ClosedForm).collect();
        assert_eq!(closed.len(), 1);
        assert_abs_diff_eq!(closed[0].value, 3.8, epsilon = 1e-12);
        assert_eq!(closed[0].multiplicity, 5);
        let quotient: Vec<_> = s.from_source(Source::Quotient).map(|e| e.value).collect();
        assert_slice_close(&quotient, &REFERENCE_EIGENVALUES, 5e-5);
    }

    #[test]
    fn hjoin_spectrum_of_path_and_k4() {
        let cfg = SolveConfig::default();
        let h = bug_to_hjoin(&bug(4, 3, 1));
        let s = hjoin_spectrum(&h, alpha(0.0), &cfg).unwrap();
        let golden = 0.5 * (1.0 + 5f64.sqrt());
        assert_slice_close(&s.expanded(), &[-golden, 1.0 - golden, golden - 1.0, golden], 1e-12);

        let h = HJoinSpec::new(vec![RegularComponent::complete(4).unwrap()], vec![]).unwrap();
        let s = hjoin_spectrum(&h, alpha(0.5), &cfg).unwrap();
        assert_eq!(s.pairs(), vec![(1.0, 3), (3.0, 1)]);
        assert_eq!(s.entries()[1].source, Source::Quotient);
    }

    #[test]
    fn hjoin_spectrum_non_path_host() {
        // K_2 ∨ K_3 = K_5 via a single host edge.
        let h = HJoinSpec::new(
            vec![RegularComponent::complete(2).unwrap(), RegularComponent::complete(3).unwrap()],
            vec![(0, 1)],
        )
        .unwrap();
        let s = hjoin_spectrum(&h, alpha(0.3), &SolveConfig::default()).unwrap();
        let expected = [0.3 * 5.0 - 1.0; 4];
        assert_slice_close(&s.expanded()[..4], &expected, 1e-12);
        assert_abs_diff_eq!(s.max().unwrap(), 4.0, epsilon = 1e-12);

        // Star host: a triangle of K_1's hanging off a K_3 is not banded.
        let k1 = RegularComponent::complete(1).unwrap();
        let h = HJoinSpec::new(
            vec![RegularComponent::complete(3).unwrap(), k1, k1, k1],
            vec![(0, 1), (0, 2), (0, 3)],
        )
        .unwrap();
        assert!(!h.host_is_banded());
        let s = hjoin_spectrum(&h, alpha(0.5), &SolveConfig::default()).unwrap();
        assert_eq!(s.total_multiplicity(), 6);
    }

    #[test]
    fn hjoin_spectrum_rejects_regular_components() {
        let c6 = RegularComponent::regular(6, 2).unwrap();
        let h = HJoinSpec::new(vec![c6], vec![]).unwrap();
        assert_eq!(
            hjoin_spectrum(&h, alpha(0.2), &SolveConfig::default()),
            Err(Error::UnsupportedComponent { index: 0 })
        );
    }

    #[test]
    fn bug_spectrum_of_b823() {
        let s = bug_spectrum(&bug(11, 5, 2), alpha(0.6), &SolveConfig::default());
        let closed = bug_closed_form(&bug(11, 5, 2), alpha(0.6)).unwrap();
        assert_abs_diff_eq!(closed.value, 3.8, epsilon = 1e-12);
        assert_eq!(closed.multiplicity, 5);
        assert_eq!(s.total_multiplicity(), 11);
        let quotient: Vec<_> = s.from_source(Source::Quotient).map(|e| e.value).collect();
        assert_slice_close(&quotient, &REFERENCE_EIGENVALUES, 5e-5);
    }

    #[test]
    fn bug_spectrum_without_closed_form() {
        let s = bug_spectrum(&bug(4, 3, 1), alpha(0.0), &SolveConfig::default());
        assert_eq!(s.len(), 4);
        assert!(s.entries().iter().all(|e| e.multiplicity == 1 && e.source == Source::Quotient));
    }

    #[test]
    fn bug_spectrum_closed_form_multiplicity() {
        let s = bug_spectrum(&bug(12, 4, 2), alpha(0.3), &SolveConfig::default());
        let closed: Vec<_> = s.from_source(Source::ClosedForm).collect();
        assert_abs_diff_eq!(closed[0].value, 2.0, epsilon = 1e-12);
        assert_eq!(closed[0].multiplicity, 7);
        assert_eq!(s.from_source(Source::Quotient).count(), 5);
    }

    #[test]
    fn mirror_symmetry() {
        let cfg = SolveConfig::default();
        let a = bug_spectrum(&bug(13, 7, 2), alpha(0.45), &cfg);
        let b = bug_spectrum(&bug(13, 7, 5), alpha(0.45), &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn halved_examples() {
        let t = halved_tridiagonal(10, 4, alpha(0.0)).unwrap();
        assert_slice_close(t.diag(), &[0.0, 0.0, 5.0], 1e-15);
        assert_slice_close(t.offdiag(), &[1.0, 12f64.sqrt()], 1e-15);

        let a = alpha(0.2);
        let t = halved_tridiagonal(5, 4, a).unwrap();
        assert_slice_close(t.diag(), &[0.2, 0.4, 0.4], 1e-15);
        assert_slice_close(t.offdiag(), &[0.8, 0.8 * 2f64.sqrt()], 1e-15);

        assert_eq!(halved_tridiagonal(12, 6, alpha(0.5)).unwrap().order(), 4);
    }

    #[test]
    fn halved_domain_errors() {
        assert!(halved_tridiagonal(10, 5, alpha(0.1)).is_err());
        assert!(halved_tridiagonal(10, 2, alpha(0.1)).is_err());
        assert!(halved_tridiagonal(4, 4, alpha(0.1)).is_err());
        assert!(proof_decomposition(&bug(11, 5, 2), alpha(0.1)).is_err());
        assert!(proof_decomposition(&bug(11, 6, 2), alpha(0.1)).is_err());
    }

    #[test]
    fn halved_radius_of_b822_solves_its_cubic() {
        // det(λI − H) = λ³ − 5λ² − 13λ + 5 for H = [[0,1,0],[1,0,√12],[0,√12,5]].
        let rho = halved_spectral_radius(10, 4, alpha(0.0), &SolveConfig::default()).unwrap();
        assert_abs_diff_eq!(rho.powi(3) - 5.0 * rho.powi(2) - 13.0 * rho + 5.0, 0.0, epsilon = 1e-9);
        let full = spectral_radius(&bug(10, 4, 2), alpha(0.0), &SolveConfig::default());
        assert_abs_diff_eq!(rho, full, epsilon = 1e-12);
    }

    #[test]
    fn decomposition_example() {
        let cfg = SolveConfig::default();
        let a = alpha(0.6);
        let parts = proof_decomposition(&bug(10, 4, 2), a).unwrap();
        assert_eq!(parts.bordered, halved_tridiagonal(10, 4, a).unwrap());
        assert_slice_close(parts.inner.diag(), &[0.6, 4.2], 1e-12);
        assert_slice_close(parts.inner.offdiag(), &[0.4], 1e-12);

        let mut union = tridiag_eigenvalues(&parts.bordered, &cfg);
        union.extend(tridiag_eigenvalues(&parts.inner, &cfg));
        union.sort_by(f64::total_cmp);
        let full = tridiag_eigenvalues(&bug_tridiagonal(&bug(10, 4, 2), a), &cfg);
        assert_slice_close(&union, &full, 1e-10);
    }

    #[test]
    fn b823_radius() {
        let rho = spectral_radius(&bug(11, 5, 2), alpha(0.6), &SolveConfig::default());
        assert_abs_diff_eq!(rho, 6.9144, epsilon = 5e-5);
    }
}
