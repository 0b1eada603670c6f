use num_complex::Complex64;

use crate::error::{domain, Result};

/// Thermal noise weight `E(y) = y / (e^y - 1)`, with `E(0) = 1`.
pub fn planck_weight(y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(domain(format!("noise weight needs y >= 0, got {y}")));
    }
    Ok(weight(y))
}

/// `y E'(y) / E(y) = 1 - y - E(y)`.
pub fn planck_weight_log_derivative(y: f64) -> Result<f64> {
    planck_weight(y).map(|e| 1.0 - y - e)
}

pub(crate) fn weight(y: f64) -> f64 {
    if y < 1e-8 {
        1.0 - 0.5 * y
    } else {
        y / y.exp_m1()
    }
}

/// `y + E(y) - 1`, accurate near `y = 0` where it behaves like `y / 2`.
pub(crate) fn weight_excess(y: f64) -> f64 {
    if y < 1e-4 {
        y * (0.5 + y / 12.0)
    } else {
        y + weight(y) - 1.0
    }
}

/// Series impedance in units of `R`: `z(x) = 1 - i (x - kappa^2 / x)` with
/// `x = omega / omega_R`. `kappa = 0` is the RL circuit.
pub fn reduced_impedance(x: f64, kappa: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(domain(format!("reduced frequency must be positive, got {x}")));
    }
    if !(kappa >= 0.0) {
        return Err(domain(format!("kappa must be >= 0, got {kappa}")));
    }
    Ok(impedance(x, kappa))
}

pub(crate) fn impedance(x: f64, kappa: f64) -> Complex64 {
    Complex64::new(1.0, -(x - kappa * kappa / x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_values() {
        assert_eq!(planck_weight(0.0).unwrap(), 1.0);
        let e = std::f64::consts::E;
        assert!((planck_weight(1.0).unwrap() - 1.0 / (e - 1.0)).abs() < 1e-15);
        assert!((planck_weight(1.0).unwrap() - 0.581977).abs() < 1e-6);
        assert!((planck_weight(10.0).unwrap() - 4.5402e-4).abs() < 1e-8);
        assert!(planck_weight(-1e-3).is_err());
    }

    #[test]
    fn weight_is_decreasing_and_bounded() {
        let mut prev = planck_weight(0.0).unwrap();
        for i in 1..400 {
            let y = i as f64 * 0.1;
            let e = planck_weight(y).unwrap();
            assert!(e < prev && e > 0.0 && e <= 1.0);
            prev = e;
        }
    }

    #[test]
    fn weight_excess_series_matches_direct() {
        for y in [1e-3, 1e-2, 0.5, 3.0] {
            let direct = y + planck_weight(y).unwrap() - 1.0;
            assert!((weight_excess(y) - direct).abs() < 1e-12 * (1.0 + direct.abs()));
        }
        assert!((weight_excess(1e-6) - 5e-7).abs() < 1e-13);
    }

    #[test]
    fn impedance_examples() {
        assert_eq!(reduced_impedance(1.0, 0.0).unwrap(), Complex64::new(1.0, -1.0));
        assert_eq!(reduced_impedance(2.5, 2.5).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(reduced_impedance(0.5, 1.0).unwrap(), Complex64::new(1.0, 1.5));
        assert!(reduced_impedance(0.0, 1.0).is_err());
        assert!(reduced_impedance(1.0, -1.0).is_err());
    }
}
