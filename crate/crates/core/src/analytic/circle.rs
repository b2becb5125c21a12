use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{out_of_range, Error, Result};

use super::gamma::{gamma, rgamma};
use super::hurwitz::{hurwitz_zeta, hurwitz_zeta_regular, riemann_zeta};
use super::quadrature::tanh_sinh;
use super::{format_complex, EvalOptions};

fn two_pi_pow(s: Complex64) -> Complex64 {
    // (2 pi)^(-2s)
    (-2.0 * s * (2.0 * PI).ln()).exp()
}

fn check_theta(theta: f64, allow_zero: bool) -> Result<()> {
    let ok = if allow_zero { (0.0..1.0).contains(&theta) } else { theta > 0.0 && theta < 1.0 };
    if ok {
        Ok(())
    } else {
        Err(out_of_range("theta", format!("got {theta}")))
    }
}

fn half_pole(s: Complex64, function: &'static str) -> Result<()> {
    if s == Complex64::new(0.5, 0.0) {
        return Err(Error::Pole { function, at: format_complex(s) });
    }
    Ok(())
}

/// `zeta_{R/Z}(s) = 2 (2 pi)^(-2s) zeta(2s)`, the untwisted circle.
pub fn circle_zeta_untwisted(s: Complex64) -> Result<Complex64> {
    half_pole(s, "circle_zeta")?;
    Ok(2.0 * two_pi_pow(s) * riemann_zeta(2.0 * s)?)
}

/// `zeta_{R/Z}(s, theta) = (2 pi)^(-2s) [zeta(2s, theta) + zeta(2s, 1 - theta)]`.
///
/// At `theta = 0` the zero mode `(2 pi theta)^(-2s)` is subtracted before the
/// limit, which gives [`circle_zeta_untwisted`].
pub fn circle_zeta(s: Complex64, theta: f64) -> Result<Complex64> {
    check_theta(theta, true)?;
    if theta == 0.0 {
        return circle_zeta_untwisted(s);
    }
    half_pole(s, "circle_zeta")?;
    let z = hurwitz_zeta(2.0 * s, theta)? + hurwitz_zeta(2.0 * s, 1.0 - theta)?;
    Ok(two_pi_pow(s) * z)
}

/// `-d/dtheta zeta_{R/Z}(s, theta) / (2s) = (2 pi)^(-2s) [zeta(1+2s, theta) - zeta(1+2s, 1-theta)]`.
///
/// The poles of the two Hurwitz terms cancel, so this is entire; at `s = 0`
/// it equals `psi(1 - theta) - psi(theta) = pi cot(pi theta)`.
pub fn circle_zeta_dtheta_reduced(s: Complex64, theta: f64) -> Result<Complex64> {
    check_theta(theta, false)?;
    let o = EvalOptions::default();
    let d = hurwitz_zeta_regular(1.0 + 2.0 * s, theta, &o)? - hurwitz_zeta_regular(1.0 + 2.0 * s, 1.0 - theta, &o)?;
    Ok(two_pi_pow(s) * d)
}

/// `d/dtheta zeta_{R/Z}(s, theta) = -2s (2 pi)^(-2s) [zeta(1+2s, theta) - zeta(1+2s, 1-theta)]`.
pub fn circle_zeta_dtheta(s: Complex64, theta: f64) -> Result<Complex64> {
    Ok(-2.0 * s * circle_zeta_dtheta_reduced(s, theta)?)
}

/// `zeta_Z(s) = 2^(-2s) pi^(-1/2) Gamma(1/2 - s) / Gamma(1 - s)`, the spectral
/// zeta of the path graph `Z`; equals `C(2n, n)` at `s = -n` and vanishes at
/// positive integers.
pub fn zeta_z(s: Complex64) -> Result<Complex64> {
    let g = gamma(0.5 - s).map_err(|_| Error::Pole {
        function: "zeta_z",
        at: format_complex(s),
    })?;
    Ok((-2.0 * s * 2f64.ln()).exp() / PI.sqrt() * g * rgamma(1.0 - s))
}

/// `int_0^1 [4 sin^2(pi x)]^(-s) dx` by quadrature, for real `s < 1/2`.
pub fn zeta_z_integral(s: f64) -> Result<f64> {
    if s >= 0.5 {
        return Err(out_of_range("s", "integral diverges for s >= 1/2"));
    }
    // Symmetric about 1/2, so integrate the half with the singularity at 0.
    let half = tanh_sinh(|x| (4.0 * (PI * x).sin().powi(2)).powf(-s), 0.0, 0.5, 1e-15);
    Ok(2.0 * half)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn circle_values() {
        for th in [0.25, 1.0 / 3.0] {
            assert!(circle_zeta(c(0.0), th).unwrap().norm() < 1e-15);
            assert!(circle_zeta(c(-1.0), th).unwrap().norm() < 1e-13);
        }
        assert!((circle_zeta(c(1.0), 0.5).unwrap() - 0.25).norm() < 1e-15);
        assert!((circle_zeta(c(1.0), 0.0).unwrap() - 1.0 / 12.0).norm() < 1e-15);
        assert!(circle_zeta(c(0.5), 0.3).is_err());
    }

    #[test]
    fn derivative() {
        assert!(circle_zeta_dtheta(Complex64::new(0.7, 2.0), 0.5).unwrap().norm() < 1e-15);
        let r = circle_zeta_dtheta_reduced(c(0.0), 0.25).unwrap();
        assert!((r - PI).norm() < 1e-13, "{r}");
        let h = 1e-5;
        let fd = (circle_zeta(c(1.0), 0.25 + h).unwrap() - circle_zeta(c(1.0), 0.25 - h).unwrap()) / (2.0 * h);
        assert!((fd - circle_zeta_dtheta(c(1.0), 0.25).unwrap()).norm() < 1e-6);
    }

    #[test]
    fn path_graph_zeta() {
        assert!((zeta_z(c(-1.0)).unwrap() - 2.0).norm() < 1e-14);
        assert!((zeta_z(c(0.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((zeta_z(c(-2.0)).unwrap() - 6.0).norm() < 1e-13);
        for p in 1..5 {
            assert_eq!(zeta_z(c(p as f64)).unwrap().norm(), 0.0);
        }
        assert!(zeta_z(c(1.5)).is_err());
        for s in [-1.0, -0.3, 0.2] {
            let q = zeta_z_integral(s).unwrap();
            assert!((q - zeta_z(c(s)).unwrap().re).abs() < 1e-12, "s = {s}: {q}");
        }
    }
}
