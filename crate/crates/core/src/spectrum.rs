//! Eigenvalue multisets with exact multiplicities and provenance.

use std::fmt;

/// Where an eigenvalue came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// Closed-form value with an exact multiplicity.
    ClosedForm,
    /// Eigenvalue of a quotient (or halved) tridiagonal matrix.
    Quotient,
    /// Numerically clustered output of the dense solver.
    Dense,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::ClosedForm => "closed-form",
            Source::Quotient => "quotient",
            Source::Dense => "dense",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
    pub source: Source,
}

impl Eigenvalue {
    pub fn new(value: f64, multiplicity: usize, source: Source) -> Self {
        assert!(multiplicity > 0, "eigenvalue multiplicity must be positive");
        Self { value, multiplicity, source }
    }
}

/// A spectrum sorted by value.
///
/// Entries from different sources are never merged, so a quotient eigenvalue
/// that happens to equal the closed-form value stays a separate entry.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    entries: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn from_entries(mut entries: Vec<Eigenvalue>) -> Self {
        entries.sort_by(|a, b| a.value.total_cmp(&b.value));
        Self { entries }
    }

    /// Wraps simple eigenvalues from a single source.
    pub fn simple(values: &[f64], source: Source) -> Self {
        Self::from_entries(values.iter().map(|&v| Eigenvalue::new(v, 1, source)).collect())
    }

    /// Groups sorted dense-solver output into clusters: a value joins the
    /// current cluster when it lies within `threshold` of the cluster's first
    /// member. Each cluster is reported at its mean.
    pub fn from_dense(sorted: &[f64], threshold: f64) -> Self {
        let mut entries: Vec<Eigenvalue> = Vec::new();
        let mut start = 0;
        while start < sorted.len() {
            let anchor = sorted[start];
            let mut end = start + 1;
            while end < sorted.len() && sorted[end] - anchor <= threshold {
                end += 1;
            }
            let mean = sorted[start..end].iter().sum::<f64>() / (end - start) as f64;
            entries.push(Eigenvalue::new(mean, end - start, Source::Dense));
            start = end;
        }
        Self { entries }
    }

    pub fn merge(mut self, other: Spectrum) -> Self {
        self.entries.extend(other.entries);
        Self::from_entries(self.entries)
    }

    pub fn entries(&self) -> &[Eigenvalue] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Every eigenvalue repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }

    /// Largest eigenvalue.
    pub fn max(&self) -> Option<f64> {
        self.entries.last().map(|e| e.value)
    }

    pub fn from_source(&self, source: Source) -> impl Iterator<Item = &Eigenvalue> {
        self.entries.iter().filter(move |e| e.source == source)
    }

    pub fn pairs(&self) -> Vec<(f64, usize)> {
        self.entries.iter().map(|e| (e.value, e.multiplicity)).collect()
    }
}

/// Dense-output clustering radius `1e−7 · max(1, ρ)`.
pub fn cluster_threshold(spectral_radius: f64) -> f64 {
    1e-7 * spectral_radius.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_sorted_and_expanded() {
        let s = Spectrum::from_entries(vec![
            Eigenvalue::new(3.8, 5, Source::ClosedForm),
            Eigenvalue::new(0.39, 1, Source::Quotient),
            Eigenvalue::new(6.91, 1, Source::Quotient),
        ]);
        assert_eq!(s.total_multiplicity(), 7);
        assert_eq!(s.expanded(), vec![0.39, 3.8, 3.8, 3.8, 3.8, 3.8, 6.91]);
        assert_eq!(s.max(), Some(6.91));
        assert_eq!(s.from_source(Source::ClosedForm).count(), 1);
    }

    #[test]
    fn dense_clustering() {
        let values = [-1.0, 2.6 - 1e-12, 2.6, 2.6 + 2e-12, 2.6 + 5e-9, 5.0];
        let s = Spectrum::from_dense(&values, cluster_threshold(5.0));
        assert_eq!(s.len(), 3);
        assert_eq!(s.entries()[1].multiplicity, 4);
        assert!((s.entries()[1].value - 2.6).abs() < 1e-8);
        assert!(s.entries().iter().all(|e| e.source == Source::Dense));
        assert_eq!(s.total_multiplicity(), values.len());
    }

    #[test]
    fn cluster_threshold_scales_with_radius() {
        assert_eq!(cluster_threshold(0.5), 1e-7);
        assert_eq!(cluster_threshold(20.0), 2e-6);
    }
}
