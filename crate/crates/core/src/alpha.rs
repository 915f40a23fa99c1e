use std::fmt;

use crate::error::{domain, Error, Result};

/// The mixing weight of `A_α(G) = α·D(G) + (1 − α)·A(G)`, restricted to `[0, 1)`.
///
/// `α = 1` is rejected: `A_1(G) = D(G)` carries no adjacency information.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..1.0).contains(&value) {
            return Err(domain(format!("alpha must be a finite real in [0, 1), got {value}")));
        }
        Ok(Self(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Off-diagonal scale `β = 1 − α`.
    #[inline]
    pub fn beta(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_half_open_unit_interval() {
        assert!(Alpha::new(0.0).is_ok());
        assert!(Alpha::new(0.999).is_ok());
        assert_eq!(Alpha::new(0.6).unwrap().beta(), 1.0 - 0.6);
    }

    #[test]
    fn rejects_one_negative_and_non_finite() {
        for bad in [1.0, -0.1, 1.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(Alpha::new(bad), Err(Error::Domain(_))), "{bad}");
        }
    }
}
