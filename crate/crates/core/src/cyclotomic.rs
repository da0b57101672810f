//! Exact root-of-unity expressions, used as an input encoding for matrices
//! whose entries live in a cyclotomic field. Values are evaluated to
//! complex floats on load; all downstream checks are tolerance-based.

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// `ζ^e` for `ζ = exp(2πi/order)`, with the exponent reduced first so large
/// exponents lose no accuracy.
pub fn root_of_unity(order: u64, exponent: i64) -> Complex {
    debug_assert!(order > 0);
    let e = exponent.rem_euclid(order as i64) as f64;
    let angle = std::f64::consts::TAU * e / order as f64;
    Complex::new(angle.cos(), angle.sin())
}

/// A coefficient in a root sum: either a plain number or an exact ratio
/// written as `[numerator, denominator]`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Number(f64),
    Ratio(i64, i64),
}

impl Coefficient {
    pub fn value(self) -> Result<f64> {
        match self {
            Coefficient::Number(x) => Ok(x),
            Coefficient::Ratio(_, 0) => {
                Err(Error::Input("zero denominator in exact coefficient".into()))
            }
            Coefficient::Ratio(n, d) => Ok(n as f64 / d as f64),
        }
    }
}

/// `Σ cᵗ·ζ^{eᵗ}`, written in JSON as `[[c, e], ...]` relative to a
/// file-level root order.
#[derive(Clone, Debug, Deserialize)]
pub struct RootSum(pub Vec<(Coefficient, i64)>);

impl RootSum {
    pub fn eval(&self, order: u64) -> Result<Complex> {
        if order == 0 {
            return Err(Error::Input("root order must be positive".into()));
        }
        let mut acc = Complex::new(0.0, 0.0);
        for &(coeff, exponent) in &self.0 {
            acc += coeff.value()? * root_of_unity(order, exponent);
        }
        Ok(acc)
    }
}
