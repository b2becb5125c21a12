use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::format_complex;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// `ln Gamma(s)` for `Re s >= 1/2` by the Lanczos approximation.
fn ln_gamma_right(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `sin(pi s)` with the argument shifted to the nearest integer first, so the
/// zeros at integers are resolved to full relative accuracy.
fn sin_pi(s: Complex64) -> Complex64 {
    let k = s.re.round();
    let sign = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
    sign * (PI * (s - k)).sin()
}

/// `Gamma(s)`, with reflection for `Re s < 1/2`.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if is_pole(s) {
        return Err(Error::Pole {
            function: "gamma",
            at: format_complex(s),
        });
    }
    if s.re < 0.5 {
        let g = ln_gamma_right(1.0 - s).exp();
        return Ok(PI / (sin_pi(s) * g));
    }
    Ok(ln_gamma_right(s).exp())
}

/// `1 / Gamma(s)`, entire, zero at the non-positive integers.
pub fn rgamma(s: Complex64) -> Complex64 {
    if is_pole(s) {
        return Complex64::new(0.0, 0.0);
    }
    if s.re < 0.5 {
        return sin_pi(s) * ln_gamma_right(1.0 - s).exp() / PI;
    }
    (-ln_gamma_right(s)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn classical_values() {
        assert!((gamma(c(1.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma(c(0.5)).unwrap() - PI.sqrt()).norm() < 1e-14);
        assert!((gamma(c(5.0)).unwrap() - 24.0).norm() < 1e-12);
        assert!((gamma(c(-0.5)).unwrap() + 2.0 * PI.sqrt()).norm() < 1e-13);
        assert!(gamma(c(0.0)).is_err());
        assert!(gamma(c(-3.0)).is_err());
        assert_eq!(rgamma(c(-2.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn recurrence_and_stirling() {
        for &s in &[Complex64::new(0.3, 4.0), Complex64::new(-7.2, 1.5), Complex64::new(12.0, -30.0)] {
            let lhs = gamma(s + 1.0).unwrap();
            let rhs = s * gamma(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm(), "{s}");
        }
        // Stirling with four correction terms at |s| = 40.
        let s = Complex64::new(24.0, 32.0);
        let st = (s - 0.5) * s.ln() - s + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * s) - 1.0 / (360.0 * s.powi(3))
            + 1.0 / (1260.0 * s.powi(5))
            - 1.0 / (1680.0 * s.powi(7));
        let g = gamma(s).unwrap();
        assert!((g / st.exp() - 1.0).norm() < 1e-12);
    }
}
