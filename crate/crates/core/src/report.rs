//! Serializable views of numerical results.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number with its polar data, as emitted in JSON reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub log_modulus: f64,
    pub phase: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self {
            re: z.re,
            im: z.im,
            log_modulus: z.norm().ln(),
            phase: z.arg(),
        }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        Complex64::new(v.re, v.im)
    }
}

/// `|a − b| / max(|b|, floor)`.
pub fn relative_error(a: Complex64, b: Complex64, floor: f64) -> f64 {
    (a - b).norm() / b.norm().max(floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_fields() {
        let v = ComplexValue::from(Complex64::new(0.0, -2.0));
        assert!((v.log_modulus - 2f64.ln()).abs() < 1e-15);
        assert!((v.phase + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let json = serde_json::to_string(&v).unwrap();
        let back: ComplexValue = serde_json::from_str(&json).unwrap();
        assert_eq!(Complex64::from(back), Complex64::new(0.0, -2.0));
    }

    #[test]
    fn relative_error_floor() {
        assert_eq!(
            relative_error(Complex64::new(1e-20, 0.0), Complex64::new(0.0, 0.0), 1.0),
            1e-20
        );
    }
}
