use crate::error::{domain, Result};
use crate::graph::DenseSym;

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(domain("tridiagonal matrix must have order at least 1"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(domain(format!(
                "off-diagonal length {} does not match order {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(domain("tridiagonal entries must be finite"));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.diag.iter().map(|x| x * x).sum::<f64>() + 2.0 * self.offdiag.iter().map(|x| x * x).sum::<f64>()
    }

    /// `J T J`: the same matrix with its index order reversed.
    pub fn reversed(&self) -> Self {
        Self {
            diag: self.diag.iter().rev().copied().collect(),
            offdiag: self.offdiag.iter().rev().copied().collect(),
        }
    }

    /// True when no off-diagonal entry is zero, which makes every eigenvalue simple.
    pub fn is_unreduced(&self) -> bool {
        self.offdiag.iter().all(|&e| e != 0.0)
    }

    pub fn to_dense(&self) -> DenseSym {
        let m = self.order();
        DenseSym::from_fn(m, |a, b| {
            if a == b {
                self.diag[a]
            } else if b == a + 1 {
                self.offdiag[a]
            } else {
                0.0
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        assert!(SymTridiag::new(vec![1.0, 2.0], vec![0.5]).is_ok());
        assert!(SymTridiag::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiag::new(vec![], vec![]).is_err());
        assert!(SymTridiag::new(vec![f64::NAN], vec![]).is_err());
    }

    #[test]
    fn reversal_and_dense_embedding() {
        let t = SymTridiag::new(vec![1.0, 2.0, 3.0], vec![0.5, 0.25]).unwrap();
        let r = t.reversed();
        assert_eq!(r.diag(), &[3.0, 2.0, 1.0]);
        assert_eq!(r.offdiag(), &[0.25, 0.5]);
        let dense = t.to_dense();
        assert_eq!(dense.get(1, 2), 0.25);
        assert_eq!(dense.get(2, 1), 0.25);
        assert_eq!(dense.get(0, 2), 0.0);
        assert!((dense.frobenius_norm().powi(2) - t.frobenius_sq()).abs() < 1e-12);
    }
}
