//! Bug graphs, H-joins of regular graphs, and dense `A_α` assembly.
//!
//! A bug `B_{p,q,r}` is `K_p` with one edge `uv` removed and paths `P_q`, `P_r`
//! hung from `u` and `v`. With `n = p + q + r − 2` and `d = q + r` it is the
//! `P_{d+1}`-join of `i` copies of `K_1`, one `K_{n−d}`, and `d − i` copies of
//! `K_1`, where `i = q`.

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use crate::alpha::Alpha;
use crate::error::{domain, Error, Result};
use crate::spectrum::{Eigenvalue, Source, Spectrum};

/// Parameters of a bug graph, stored canonically with `i ≤ ⌊d/2⌋`.
///
/// Equality and hashing ignore the `mirrored` flag: `B(i)` and `B(d − i)` are
/// isomorphic and compare equal.
#[derive(Debug, Clone, Copy)]
pub struct BugSpec {
    n: usize,
    d: usize,
    i: usize,
    mirrored: bool,
}

impl BugSpec {
    /// Builds `B_{n−d+2, i, d−i}`; `i` may be given on either side of `d/2`.
    pub fn new(n: usize, d: usize, i: usize) -> Result<Self> {
        if d < 2 {
            return Err(domain(format!("diameter must be at least 2, got {d}")));
        }
        if n < d + 1 {
            return Err(domain(format!(
                "order n = {n} must be at least d + 1 = {} so the middle clique is nonempty",
                d + 1
            )));
        }
        if i < 1 || i > d - 1 {
            return Err(domain(format!("path length i must lie in 1..={}, got {i}", d - 1)));
        }
        let mirrored = i > d / 2;
        let i = if mirrored { d - i } else { i };
        Ok(Self { n, d, i, mirrored })
    }

    /// Builds `B_{p,q,r}`, the bug of order `p + q + r − 2` and diameter `q + r`.
    pub fn from_pqr(p: usize, q: usize, r: usize) -> Result<Self> {
        if p < 3 {
            return Err(domain(format!("clique order p must be at least 3, got {p}")));
        }
        if q < 1 || r < 1 {
            return Err(domain(format!("path orders q and r must be at least 1, got q = {q}, r = {r}")));
        }
        Self::new(p + q + r - 2, q + r, q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Canonical left path length, `1 ≤ i ≤ ⌊d/2⌋`.
    pub fn i(&self) -> usize {
        self.i
    }

    /// True when the caller supplied `i > ⌊d/2⌋` (or `q > r`) and it was reflected.
    pub fn mirrored(&self) -> bool {
        self.mirrored
    }

    /// Clique order `p = n − d + 2`.
    pub fn p(&self) -> usize {
        self.n - self.d + 2
    }

    /// Canonical `q = i`.
    pub fn q(&self) -> usize {
        self.i
    }

    /// Canonical `r = d − i`.
    pub fn r(&self) -> usize {
        self.d - self.i
    }

    /// `(q, r)` in the orientation the caller supplied.
    pub fn input_qr(&self) -> (usize, usize) {
        if self.mirrored {
            (self.r(), self.q())
        } else {
            (self.q(), self.r())
        }
    }

    /// Order of the middle clique, `n − d`.
    pub fn clique_order(&self) -> usize {
        self.n - self.d
    }

    /// Edge list built literally from the definition: `K_p` on vertices
    /// `0..p` minus the edge `{0, 1}`, then `q − 1` path vertices hung from
    /// vertex 0 and `r − 1` hung from vertex 1.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let p = self.p();
        let mut edges = Vec::new();
        for a in 0..p {
            for b in (a + 1)..p {
                if (a, b) != (0, 1) {
                    edges.push((a, b));
                }
            }
        }
        let mut next = p;
        for (anchor, len) in [(0, self.q()), (1, self.r())] {
            let mut prev = anchor;
            for _ in 1..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        debug_assert_eq!(next, self.n);
        edges
    }
}

impl PartialEq for BugSpec {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.d, self.i) == (other.n, other.d, other.i)
    }
}

impl Eq for BugSpec {}

impl Hash for BugSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.n, self.d, self.i).hash(state);
    }
}

/// Free-function form of [`BugSpec::from_pqr`].
pub fn bug_from_pqr(p: usize, q: usize, r: usize) -> Result<BugSpec> {
    BugSpec::from_pqr(p, q, r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// `K_m`, regular of degree `m − 1`.
    Complete,
    /// Some other regular graph; carried for validation only.
    Regular,
}

/// A regular graph placed on one host vertex of an H-join.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularComponent {
    order: usize,
    degree: usize,
    kind: ComponentKind,
}

impl RegularComponent {
    pub fn complete(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(domain("complete graph order must be at least 1"));
        }
        Ok(Self { order: m, degree: m - 1, kind: ComponentKind::Complete })
    }

    pub fn regular(order: usize, degree: usize) -> Result<Self> {
        if order < 1 || degree >= order {
            return Err(domain(format!("no {degree}-regular graph on {order} vertices")));
        }
        if !(order * degree).is_multiple_of(2) {
            return Err(domain(format!("handshake violated: {order} * {degree} is odd")));
        }
        if degree == order - 1 {
            return Self::complete(order);
        }
        Ok(Self { order, degree, kind: ComponentKind::Regular })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn is_complete(&self) -> bool {
        self.kind == ComponentKind::Complete
    }
}

/// Host graph `H` on vertices `0..k` plus one regular component per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct HJoinSpec {
    components: Vec<RegularComponent>,
    host_edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    neighbor_orders: Vec<usize>,
}

impl HJoinSpec {
    /// Host edges use 0-based vertex indices into `components`.
    pub fn new(components: Vec<RegularComponent>, host_edges: Vec<(usize, usize)>) -> Result<Self> {
        let k = components.len();
        if k == 0 {
            return Err(domain("an H-join needs at least one host vertex"));
        }
        let mut seen = BTreeSet::new();
        let mut neighbors = vec![Vec::new(); k];
        for &(a, b) in &host_edges {
            if a >= k || b >= k {
                return Err(domain(format!("host edge ({a}, {b}) out of range for k = {k}")));
            }
            if a == b {
                return Err(domain(format!("host graph has a loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(domain(format!("host graph has a duplicate edge ({a}, {b})")));
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let neighbor_orders = neighbors
            .iter()
            .map(|list| list.iter().map(|&l| components[l].order).sum())
            .collect();
        Ok(Self { components, host_edges, neighbors, neighbor_orders })
    }

    /// Number of host vertices `k`.
    pub fn host_order(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RegularComponent] {
        &self.components
    }

    pub fn host_edges(&self) -> &[(usize, usize)] {
        &self.host_edges
    }

    pub fn neighbors(&self, j: usize) -> &[usize] {
        &self.neighbors[j]
    }

    /// `s_j`: total order of the components adjacent to `j` in the host.
    pub fn neighbor_order(&self, j: usize) -> usize {
        self.neighbor_orders[j]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Order of the joined graph, `Σ n_j`.
    pub fn order(&self) -> usize {
        self.components.iter().map(|c| c.order).sum()
    }

    /// True when every host edge joins consecutive vertices.
    pub fn host_is_banded(&self) -> bool {
        self.host_edges.iter().all(|&(a, b)| a.abs_diff(b) == 1)
    }

    fn require_complete(&self) -> Result<()> {
        match self.components.iter().position(|c| !c.is_complete()) {
            Some(index) => Err(Error::UnsupportedComponent { index }),
            None => Ok(()),
        }
    }
}

/// `B(i)` as the `P_{d+1}`-join: `K_1` at host positions `0..i`, `K_{n−d}` at
/// position `i`, `K_1` at positions `i+1..=d`.
pub fn bug_to_hjoin(b: &BugSpec) -> HJoinSpec {
    let k = b.d() + 1;
    let components = (0..k)
        .map(|j| {
            let m = if j == b.i() { b.clique_order() } else { 1 };
            RegularComponent { order: m, degree: m - 1, kind: ComponentKind::Complete }
        })
        .collect();
    let host_edges = (0..k - 1).map(|j| (j, j + 1)).collect();
    HJoinSpec::new(components, host_edges).expect("path host is simple")
}

/// Dense real symmetric matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSym {
    order: usize,
    entries: Vec<f64>,
}

impl DenseSym {
    pub fn zeros(order: usize) -> Self {
        Self { order, entries: vec![0.0; order * order] }
    }

    /// Evaluates `f` on the upper triangle and mirrors it.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(order);
        for a in 0..order {
            for b in a..order {
                m.set_sym(a, b, f(a, b));
            }
        }
        m
    }

    /// Accepts square rows that are exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|row| row.len() != order) {
            return Err(domain("matrix rows must form a square array"));
        }
        let mut pairs = (0..order).flat_map(|a| (a + 1..order).map(move |b| (a, b)));
        if let Some((a, b)) = pairs.find(|&(a, b)| rows[a][b] != rows[b][a]) {
            return Err(domain(format!("matrix is not symmetric at ({a}, {b})")));
        }
        Ok(Self { order, entries: rows.concat() })
    }

    pub(crate) fn set_sym(&mut self, a: usize, b: usize, value: f64) {
        self.entries[a * self.order + b] = value;
        self.entries[b * self.order + a] = value;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.entries[a * self.order + b]
    }

    pub fn row(&self, a: usize) -> &[f64] {
        &self.entries[a * self.order..(a + 1) * self.order]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|a| self.get(a, a)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.order, "vector length must match matrix order");
        (0..self.order)
            .map(|a| self.row(a).iter().zip(x).map(|(m, v)| m * v).sum())
            .collect()
    }
}

/// Dense `A_α` of an H-join of complete graphs, vertices grouped by host
/// vertex in index order.
pub fn assemble_dense_alpha(h: &HJoinSpec, alpha: Alpha) -> Result<DenseSym> {
    h.require_complete()?;
    let (a, beta) = (alpha.value(), alpha.beta());
    let mut offsets = Vec::with_capacity(h.host_order() + 1);
    offsets.push(0);
    for c in h.components() {
        offsets.push(offsets.last().unwrap() + c.order());
    }
    let mut m = DenseSym::zeros(h.order());
    for (j, c) in h.components().iter().enumerate() {
        let block = offsets[j]..offsets[j + 1];
        let degree = (c.degree() + h.neighbor_order(j)) as f64;
        for u in block.clone() {
            m.set_sym(u, u, a * degree);
            for v in (u + 1)..block.end {
                m.set_sym(u, v, beta);
            }
        }
        for &l in h.neighbors(j).iter().filter(|&&l| l > j) {
            for u in block.clone() {
                for v in offsets[l]..offsets[l + 1] {
                    m.set_sym(u, v, beta);
                }
            }
        }
    }
    Ok(m)
}

/// Spectrum of `A_α(K_m)`: `m − 1` once and `α·m − 1` with multiplicity `m − 1`.
pub fn complete_graph_alpha_spectrum(m: usize, alpha: Alpha) -> Result<Spectrum> {
    if m < 1 {
        return Err(domain("complete graph order must be at least 1"));
    }
    let mut entries = vec![Eigenvalue::new((m - 1) as f64, 1, Source::ClosedForm)];
    if m > 1 {
        entries.push(Eigenvalue::new(alpha.value() * m as f64 - 1.0, m - 1, Source::ClosedForm));
    }
    Ok(Spectrum::from_entries(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(x: f64) -> Alpha {
        Alpha::new(x).unwrap()
    }

    fn triple(b: &BugSpec) -> (usize, usize, usize) {
        (b.n(), b.d(), b.i())
    }

    #[test]
    fn pqr_examples() {
        assert_eq!(triple(&bug_from_pqr(8, 2, 3).unwrap()), (11, 5, 2));
        assert_eq!(triple(&bug_from_pqr(5, 3, 4).unwrap()), (10, 7, 3));
        assert_eq!(triple(&bug_from_pqr(3, 1, 2).unwrap()), (4, 3, 1));
    }

    #[test]
    fn pqr_domain_errors() {
        assert!(bug_from_pqr(2, 1, 1).is_err());
        assert!(bug_from_pqr(4, 0, 1).is_err());
        assert!(bug_from_pqr(4, 1, 0).is_err());
    }

    #[test]
    fn new_domain_errors() {
        assert!(BugSpec::new(5, 1, 1).is_err());
        assert!(BugSpec::new(5, 5, 2).is_err());
        assert!(BugSpec::new(8, 4, 0).is_err());
        assert!(BugSpec::new(8, 4, 4).is_err());
    }

    #[test]
    fn canonicalization_records_mirroring() {
        let b = bug_from_pqr(8, 3, 2).unwrap();
        assert_eq!(triple(&b), (11, 5, 2));
        assert!(b.mirrored());
        assert_eq!(b.input_qr(), (3, 2));
        assert_eq!((b.q(), b.r()), (2, 3));
        assert_eq!(b, BugSpec::new(11, 5, 2).unwrap());
        assert!(!BugSpec::new(11, 5, 2).unwrap().mirrored());
    }

    #[test]
    fn order_identity() {
        for (p, q, r) in [(3, 1, 1), (5, 3, 4), (8, 2, 3), (10, 1, 7)] {
            let b = bug_from_pqr(p, q, r).unwrap();
            assert_eq!(b.p() + b.q() + b.r() - 2, b.n());
            assert_eq!(b.p(), p);
            assert_eq!(b.edges().len(), p * (p - 1) / 2 - 1 + (q - 1) + (r - 1));
        }
    }

    #[test]
    fn hjoin_of_small_bugs() {
        let h = bug_to_hjoin(&BugSpec::new(11, 5, 2).unwrap());
        let orders: Vec<_> = h.components().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 1, 6, 1, 1, 1]);
        assert_eq!(h.host_edges(), &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let s: Vec<_> = (0..6).map(|j| h.neighbor_order(j)).collect();
        assert_eq!(s, vec![1, 7, 2, 7, 2, 1]);
        assert_eq!(h.order(), 11);

        let h = bug_to_hjoin(&BugSpec::new(10, 7, 1).unwrap());
        let orders: Vec<_> = h.components().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 3, 1, 1, 1, 1, 1, 1]);

        let h = bug_to_hjoin(&BugSpec::new(4, 3, 1).unwrap());
        assert!(h.components().iter().all(|c| c.order() == 1 && c.degree() == 0));
        assert_eq!(h.host_order(), 4);
    }

    #[test]
    fn hjoin_rejects_non_simple_hosts() {
        let k1 = RegularComponent::complete(1).unwrap();
        assert!(HJoinSpec::new(vec![k1, k1], vec![(0, 0)]).is_err());
        assert!(HJoinSpec::new(vec![k1, k1], vec![(0, 1), (1, 0)]).is_err());
        assert!(HJoinSpec::new(vec![k1, k1], vec![(0, 2)]).is_err());
        assert!(HJoinSpec::new(vec![], vec![]).is_err());
    }

    #[test]
    fn regular_component_validation() {
        assert!(RegularComponent::regular(3, 1).is_err());
        assert!(RegularComponent::regular(3, 3).is_err());
        assert!(RegularComponent::regular(4, 3).unwrap().is_complete());
        assert_eq!(RegularComponent::regular(6, 2).unwrap().kind(), ComponentKind::Regular);
    }

    #[test]
    fn dense_of_path_bug_is_path_adjacency() {
        let h = bug_to_hjoin(&BugSpec::new(4, 3, 1).unwrap());
        let m = assemble_dense_alpha(&h, alpha(0.0)).unwrap();
        for a in 0..4usize {
            for b in 0..4usize {
                let expected = if a.abs_diff(b) == 1 { 1.0 } else { 0.0 };
                assert_eq!(m.get(a, b), expected);
            }
        }
    }

    #[test]
    fn dense_of_single_k4_is_half_signless_laplacian() {
        let h = HJoinSpec::new(vec![RegularComponent::complete(4).unwrap()], vec![]).unwrap();
        let m = assemble_dense_alpha(&h, alpha(0.5)).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m.get(a, b), if a == b { 1.5 } else { 0.5 });
            }
        }
    }

    #[test]
    fn dense_rejects_non_complete_components() {
        let c6 = RegularComponent::regular(6, 2).unwrap();
        let h = HJoinSpec::new(vec![c6], vec![]).unwrap();
        assert_eq!(
            assemble_dense_alpha(&h, alpha(0.3)),
            Err(Error::UnsupportedComponent { index: 0 })
        );
    }

    #[test]
    fn dense_diagonal_and_trace_follow_degrees() {
        for (n, d, i) in [(11, 5, 2), (10, 7, 3), (6, 2, 1), (9, 4, 1)] {
            let b = BugSpec::new(n, d, i).unwrap();
            let mut degree = vec![0usize; n];
            for (u, v) in b.edges() {
                degree[u] += 1;
                degree[v] += 1;
            }
            let mut expected: Vec<_> = degree.clone();
            expected.sort_unstable();

            let a = alpha(0.35);
            let m = assemble_dense_alpha(&bug_to_hjoin(&b), a).unwrap();
            let mut diag: Vec<_> = (0..n).map(|v| (m.get(v, v) / a.value()).round() as usize).collect();
            diag.sort_unstable();
            assert_eq!(diag, expected);
            assert!((m.trace() - a.value() * 2.0 * b.edges().len() as f64).abs() < 1e-12);
            for u in 0..n {
                for v in 0..n {
                    let x = m.get(u, v);
                    assert!(u == v || x == 0.0 || x == a.beta());
                }
            }

            let m0 = assemble_dense_alpha(&bug_to_hjoin(&b), alpha(0.0)).unwrap();
            let mut row_sums: Vec<_> = (0..n).map(|u| m0.row(u).iter().sum::<f64>() as usize).collect();
            row_sums.sort_unstable();
            assert_eq!(row_sums, expected);
        }
    }

    #[test]
    fn bug_degree_multiset() {
        // i ≥ 2: two leaves, d − 4 internal path vertices of degree 2, and
        // n − d + 2 vertices of K_p (u, v included) of degree n − d + 1.
        let b = BugSpec::new(12, 6, 3).unwrap();
        let mut degree = vec![0usize; 12];
        for (u, v) in b.edges() {
            degree[u] += 1;
            degree[v] += 1;
        }
        degree.sort_unstable();
        assert_eq!(degree, vec![1, 1, 2, 2, 7, 7, 7, 7, 7, 7, 7, 7]);

        // i = 1: u itself is the end of P_1 and has degree n − d.
        let b = BugSpec::new(9, 4, 1).unwrap();
        let mut degree = vec![0usize; 9];
        for (u, v) in b.edges() {
            degree[u] += 1;
            degree[v] += 1;
        }
        degree.sort_unstable();
        assert_eq!(degree, vec![1, 2, 5, 6, 6, 6, 6, 6, 6]);
    }

    #[test]
    fn complete_graph_spectra() {
        let s = complete_graph_alpha_spectrum(3, alpha(0.0)).unwrap();
        assert_eq!(s.pairs(), vec![(-1.0, 2), (2.0, 1)]);
        let s = complete_graph_alpha_spectrum(4, alpha(0.5)).unwrap();
        assert_eq!(s.pairs(), vec![(1.0, 3), (3.0, 1)]);
        let s = complete_graph_alpha_spectrum(6, alpha(0.6)).unwrap();
        let pairs = s.pairs();
        assert!((pairs[0].0 - 2.6).abs() < 1e-12 && pairs[0].1 == 5);
        assert_eq!(pairs[1], (5.0, 1));
        let s = complete_graph_alpha_spectrum(1, alpha(0.4)).unwrap();
        assert_eq!(s.pairs(), vec![(0.0, 1)]);
        assert!(complete_graph_alpha_spectrum(0, alpha(0.4)).is_err());
    }

    #[test]
    fn from_rows_checks_shape_and_symmetry() {
        assert!(DenseSym::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_ok());
        assert!(DenseSym::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]).is_err());
        assert!(DenseSym::from_rows(&[vec![1.0, 2.0]]).is_err());
    }
}
