//! Finite spectral sums on cycle graphs: the twisted zeta `zeta_n(s, theta)`,
//! its theta-derivative, the discrete L-functions `L_n(s, chi)`, the exact
//! trigonometric identities and the resolvent/Chebyshev generating function.
//!
//! Eigenvalues are `4 sin^2(pi x)` with `x = (j + theta)/n`. The sine is always
//! taken at `min(x, 1 - x)`, with `1 - x` formed from integers, so eigenvalues
//! near the top of the spectrum keep full relative accuracy.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{circle_zeta, circle_zeta_dtheta};
use crate::characters::{DirichletCharacter, Parity};
use crate::error::{out_of_range, CharacterRequirement, Result};
use crate::exact_series::{a_coefficients, rational_to_f64, Rational};
use crate::summation::{sum_f64, ComplexSum};

/// Which finite sum a [`SpectrumSum`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Plain,
    ThetaDerivative,
    EvenL,
    OddL,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumParameter {
    Theta(f64),
    Character { q: u64, index: usize },
}

/// An evaluated finite spectral sum with its summation metadata.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumSum {
    pub n: u64,
    pub parameter: SpectrumParameter,
    pub s: [f64; 2],
    pub kind: SpectrumKind,
    pub value: Complex64,
    pub terms_summed: u64,
}

/// Point `(num + theta)/den` on the circle, folded to `[0, 1/2]`; the sign
/// records whether it was reflected, which flips cotangents.
struct Angle {
    reduced: f64,
    reflected: bool,
}

fn angle(num: u64, theta: f64, den: u64) -> Angle {
    let x = (num as f64 + theta) / den as f64;
    if x <= 0.5 {
        Angle { reduced: x, reflected: false }
    } else {
        Angle {
            reduced: ((den - num) as f64 - theta) / den as f64,
            reflected: true,
        }
    }
}

impl Angle {
    fn sin(&self) -> f64 {
        (PI * self.reduced).sin()
    }

    /// `ln(4 sin^2(pi x))`.
    fn log_eigenvalue(&self) -> f64 {
        4f64.ln() + 2.0 * self.sin().ln()
    }

    fn eigenvalue(&self) -> f64 {
        4.0 * self.sin().powi(2)
    }

    fn cot(&self) -> f64 {
        let c = 1.0 / (PI * self.reduced).tan();
        if self.reflected {
            -c
        } else {
            c
        }
    }
}

fn check_open_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(out_of_range("theta", format!("need 0 < theta < 1, got {theta}")))
    }
}

fn check_n(n: u64, min: u64) -> Result<()> {
    if n >= min {
        Ok(())
    } else {
        Err(out_of_range("n", format!("need n >= {min}, got {n}")))
    }
}

/// `lambda^(-s)` for `lambda = 4 sin^2`, via the positive real logarithm.
fn power(a: &Angle, s: Complex64) -> Complex64 {
    (-s * a.log_eigenvalue()).exp()
}

/// Eigenvalues `4 sin^2(pi (j + theta)/n)`, `j = 0..n`, in index order.
pub fn bundle_spectrum(n: u64, theta: f64) -> Vec<f64> {
    (0..n).map(|j| angle(j, theta, n).eigenvalue()).collect()
}

pub fn zeta_n_sum(s: Complex64, theta: f64, n: u64) -> Result<SpectrumSum> {
    check_open_theta(theta)?;
    check_n(n, 1)?;
    let mut acc = ComplexSum::new();
    for j in 0..n {
        acc.add(power(&angle(j, theta, n), s));
    }
    Ok(SpectrumSum {
        n,
        parameter: SpectrumParameter::Theta(theta),
        s: [s.re, s.im],
        kind: SpectrumKind::Plain,
        value: acc.value(),
        terms_summed: n,
    })
}

/// `zeta_n(s, theta) = sum_{j=0}^{n-1} [4 sin^2(pi (j + theta)/n)]^(-s)`, `0 < theta < 1`.
pub fn zeta_n(s: Complex64, theta: f64, n: u64) -> Result<Complex64> {
    Ok(zeta_n_sum(s, theta, n)?.value)
}

pub fn zeta_n_standard_sum(s: Complex64, n: u64) -> Result<SpectrumSum> {
    check_n(n, 2)?;
    let mut acc = ComplexSum::new();
    for j in 1..n {
        acc.add(power(&angle(j, 0.0, n), s));
    }
    Ok(SpectrumSum {
        n,
        parameter: SpectrumParameter::Theta(0.0),
        s: [s.re, s.im],
        kind: SpectrumKind::Plain,
        value: acc.value(),
        terms_summed: n - 1,
    })
}

/// `zeta_{Z/nZ}(s) = sum_{j=1}^{n-1} [4 sin^2(pi j/n)]^(-s)`, zero mode discarded.
pub fn zeta_n_standard(s: Complex64, n: u64) -> Result<Complex64> {
    Ok(zeta_n_standard_sum(s, n)?.value)
}

pub fn zeta_n_dtheta_sum(s: Complex64, theta: f64, n: u64) -> Result<SpectrumSum> {
    check_open_theta(theta)?;
    check_n(n, 1)?;
    let mut acc = ComplexSum::new();
    for j in 0..n {
        let a = angle(j, theta, n);
        acc.add(a.cot() * power(&a, s));
    }
    Ok(SpectrumSum {
        n,
        parameter: SpectrumParameter::Theta(theta),
        s: [s.re, s.im],
        kind: SpectrumKind::ThetaDerivative,
        value: -s * (2.0 * PI / n as f64) * acc.value(),
        terms_summed: n,
    })
}

/// `d/dtheta zeta_n = -s (2 pi/n) sum_j cot(pi (j + theta)/n) [4 sin^2(pi (j + theta)/n)]^(-s)`.
pub fn zeta_n_dtheta(s: Complex64, theta: f64, n: u64) -> Result<Complex64> {
    Ok(zeta_n_dtheta_sum(s, theta, n)?.value)
}

/// Weight of the character sum over the `qn`-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LWeight {
    /// `sum chi(j) [4 sin^2(pi j/qn)]^(-s)`, the even convention.
    Plain,
    /// `sum chi(j) cot(pi j/qn) [4 sin^2(pi j/qn)]^(-s)`, the odd convention.
    Cotangent,
}

impl LWeight {
    pub fn for_parity(p: Parity) -> Self {
        match p {
            Parity::Even => LWeight::Plain,
            Parity::Odd => LWeight::Cotangent,
        }
    }
}

/// The character sum with an explicit weight, regardless of parity.
pub fn discrete_l_weighted(s: Complex64, chi: &DirichletCharacter, n: u64, weight: LWeight) -> Result<Complex64> {
    check_n(n, 1)?;
    let q = chi.modulus();
    let big = q * n;
    let mut acc = ComplexSum::new();
    for j in 1..big {
        let c = chi.value(j as i64);
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let a = angle(j, 0.0, big);
        let w = match weight {
            LWeight::Plain => 1.0,
            LWeight::Cotangent => a.cot(),
        };
        acc.add(c * w * power(&a, s));
    }
    Ok(acc.value())
}

pub fn discrete_l_sum(s: Complex64, chi: &DirichletCharacter, n: u64) -> Result<SpectrumSum> {
    chi.require(CharacterRequirement::ModulusAboveOne)?;
    chi.require(CharacterRequirement::NonPrincipal)?;
    let value = discrete_l_weighted(s, chi, n, LWeight::for_parity(chi.parity()))?;
    Ok(SpectrumSum {
        n,
        parameter: SpectrumParameter::Character {
            q: chi.modulus(),
            index: chi.index(),
        },
        s: [s.re, s.im],
        kind: match chi.parity() {
            Parity::Even => SpectrumKind::EvenL,
            Parity::Odd => SpectrumKind::OddL,
        },
        value,
        terms_summed: chi.modulus() * n - 1,
    })
}

/// `L_n(s, chi)`, with the cotangent weight for odd `chi`.
pub fn discrete_l(s: Complex64, chi: &DirichletCharacter, n: u64) -> Result<Complex64> {
    Ok(discrete_l_sum(s, chi, n)?.value)
}

/// Both sides of the two trigonometric identities at integer `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrigIdentities {
    /// `sum_j sin^(-2p)(pi (j + theta)/n)`.
    pub even_lhs: f64,
    /// `2^(2p) sum_k a_{p-k}(p) zeta_{R/Z}(k, theta) n^(2k)`.
    pub even_rhs: f64,
    /// `sum_j cot(pi (j + theta)/n) sin^(-2p)(pi (j + theta)/n)`.
    pub odd_lhs: f64,
    /// `-(2^(2p) / (2 pi p)) sum_k a_{p-k}(p) d/dtheta zeta_{R/Z}(k, theta) n^(2k+1)`.
    pub odd_rhs: f64,
}

/// Evaluates the closed forms, and the brute-force sums they equal.
pub fn trig_closed_forms(n: u64, theta: f64, p: u32) -> Result<TrigIdentities> {
    check_open_theta(theta)?;
    check_n(n, 1)?;
    if p == 0 {
        return Err(out_of_range("p", "need p >= 1"));
    }
    let pu = p as usize;
    let a = a_coefficients(pu);
    let pr = Rational::from_integer(p.into());
    let four_p = 4f64.powi(p as i32);
    let nf = n as f64;
    let mut even = Vec::with_capacity(pu + 1);
    let mut odd = Vec::with_capacity(pu + 1);
    for k in 0..=pu {
        let apk = rational_to_f64(&a[pu - k].eval(&pr));
        let kc = Complex64::new(k as f64, 0.0);
        even.push(apk * circle_zeta(kc, theta)?.re * nf.powi(2 * k as i32));
        odd.push(apk * circle_zeta_dtheta(kc, theta)?.re * nf.powi(2 * k as i32 + 1));
    }
    let even_rhs = four_p * sum_f64(even);
    let odd_rhs = -four_p / (2.0 * PI * p as f64) * sum_f64(odd);
    let mut el = Vec::with_capacity(n as usize);
    let mut ol = Vec::with_capacity(n as usize);
    for j in 0..n {
        let an = angle(j, theta, n);
        let inv = an.sin().powi(-2 * p as i32);
        el.push(inv);
        ol.push(an.cot() * inv);
    }
    Ok(TrigIdentities {
        even_lhs: sum_f64(el),
        even_rhs,
        odd_lhs: sum_f64(ol),
        odd_rhs,
    })
}

/// Terms of the generating-function identity
/// `sum_p s^p zeta_n(p+1, theta) = n U_{n-1}(1 - s/2) / (2 (T_n(1 - s/2) - cos 2 pi theta))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaplaceTraceIdentity {
    /// Truncated power series in `s`.
    pub series: f64,
    pub series_terms: usize,
    /// Chebyshev quotient.
    pub chebyshev: f64,
    /// `sum_j 1 / (lambda_j - s)`.
    pub resolvent: f64,
    /// `|series - chebyshev|`.
    pub residual: f64,
}

/// `T_n(x)` and `U_{n-1}(x)` by the three-term recurrence in binary64.
fn chebyshev_pair(n: u64, x: f64) -> (f64, f64) {
    let (mut t0, mut t1) = (1.0, x);
    let (mut u0, mut u1) = (0.0, 1.0); // U_{-1}, U_0
    for _ in 1..n {
        (t0, t1) = (t1, 2.0 * x * t1 - t0);
        (u0, u1) = (u1, 2.0 * x * u1 - u0);
    }
    (t1, u1)
}

/// Checks the identity at real `s` with `|s| <= lambda_min / 2`, the radius
/// used for the otherwise unquantified interval of validity.
pub fn laplace_trace_identity(s: f64, theta: f64, n: u64) -> Result<LaplaceTraceIdentity> {
    check_open_theta(theta)?;
    check_n(n, 1)?;
    let spectrum = bundle_spectrum(n, theta);
    let lambda_min = spectrum.iter().copied().fold(f64::INFINITY, f64::min);
    if s.abs() > lambda_min / 2.0 {
        return Err(out_of_range(
            "s",
            format!("|s| = {} exceeds half the smallest eigenvalue {}", s.abs(), lambda_min / 2.0),
        ));
    }
    let resolvent = sum_f64(spectrum.iter().map(|l| 1.0 / (l - s)));
    let (t, u) = chebyshev_pair(n, 1.0 - s / 2.0);
    let chebyshev = n as f64 * u / (2.0 * (t - (2.0 * PI * theta).cos()));
    // Term p is at most n (|s|/lambda_min)^p / lambda_min, a geometric series.
    let r = s.abs() / lambda_min;
    let mut terms = Vec::new();
    let mut p = 0usize;
    loop {
        let zp = sum_f64(spectrum.iter().map(|l| l.powi(-(p as i32) - 1)));
        terms.push(s.powi(p as i32) * zp);
        p += 1;
        let bound = n as f64 / lambda_min * r.powi(p as i32) / (1.0 - r);
        if bound < 1e-13 * resolvent.abs() || r == 0.0 || p > 2000 {
            break;
        }
    }
    let series = sum_f64(terms);
    Ok(LaplaceTraceIdentity {
        series,
        series_terms: p,
        chebyshev,
        resolvent,
        residual: (series - chebyshev).abs(),
    })
}

/// Least-squares fit of `n -> zeta_n(p, theta)` over `n = 1..=2p+3` by a
/// polynomial of degree `2p`, next to the closed-form coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolynomialityFit {
    pub p: u32,
    pub theta: f64,
    /// Fitted coefficients of `n^0..=n^(2p)`.
    pub fitted: Vec<f64>,
    /// `a_{p-k}(p) zeta_{R/Z}(k, theta)` at `n^(2k)` and zero at odd powers.
    pub predicted: Vec<f64>,
    /// Largest `|fit(n) - zeta_n(p, theta)| / zeta_n(p, theta)` over the samples.
    pub max_relative_residual: f64,
}

impl PolynomialityFit {
    /// Largest coefficient difference, relative to the largest predicted coefficient.
    pub fn coefficient_error(&self) -> f64 {
        let scale = self.predicted.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        self.fitted.iter().zip(&self.predicted).fold(0.0f64, |m, (f, p)| m.max((f - p).abs())) / scale
    }
}

pub fn polynomiality_fit(p: u32, theta: f64) -> Result<PolynomialityFit> {
    check_open_theta(theta)?;
    if p == 0 {
        return Err(out_of_range("p", "need p >= 1"));
    }
    let degree = 2 * p as usize;
    let ns: Vec<u64> = (1..=degree as u64 + 3).collect();
    let values = ns
        .iter()
        .map(|&n| Ok(zeta_n(Complex64::new(p as f64, 0.0), theta, n)?.re))
        .collect::<Result<Vec<_>>>()?;
    // Columns are scaled by the largest n so the system stays well conditioned.
    let top = *ns.last().unwrap_or(&1) as f64;
    let vander = DMatrix::from_fn(ns.len(), degree + 1, |i, k| (ns[i] as f64 / top).powi(k as i32));
    let rhs = DVector::from_column_slice(&values);
    let sol = vander
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-300)
        .map_err(|e| out_of_range("polynomial fit", e.to_string()))?;
    let fitted: Vec<f64> = (0..=degree).map(|k| sol[k] / top.powi(k as i32)).collect();
    let residuals = &vander * &sol - &rhs;
    let max_relative_residual = residuals.iter().zip(&values).fold(0.0f64, |m, (r, v)| m.max((r / v).abs()));
    let a = a_coefficients(p as usize);
    let pr = Rational::from_integer(p.into());
    let mut predicted = vec![0.0; degree + 1];
    for k in 0..=p as usize {
        let apk = rational_to_f64(&a[p as usize - k].eval(&pr));
        predicted[2 * k] = apk * circle_zeta(Complex64::new(k as f64, 0.0), theta)?.re;
    }
    Ok(PolynomialityFit {
        p,
        theta,
        fitted,
        predicted,
        max_relative_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::real_primitive_characters;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn polynomial_in_n() {
        for p in 1..=3 {
            for theta in [0.25, 1.0 / 3.0] {
                let f = polynomiality_fit(p, theta).unwrap();
                assert!(f.max_relative_residual < 1e-8, "{f:?}");
                assert!(f.coefficient_error() < 1e-8, "{f:?}");
            }
        }
    }

    #[test]
    fn small_sums() {
        assert!((zeta_n(c(1.0), 0.5, 1).unwrap() - 0.25).norm() < 1e-15);
        assert!((zeta_n(c(1.0), 0.5, 2).unwrap() - 1.0).norm() < 1e-15);
        assert!((zeta_n_standard(c(1.0), 2).unwrap() - 0.25).norm() < 1e-15);
        for n in 2..=8u64 {
            let nf = n as f64;
            let z1 = zeta_n_standard(c(1.0), n).unwrap().re;
            assert!((z1 - (nf * nf - 1.0) / 12.0).abs() < 1e-13);
            let z2 = zeta_n_standard(c(2.0), n).unwrap().re;
            assert!((z2 - (nf * nf - 1.0) * (nf * nf + 11.0) / 720.0).abs() < 1e-12);
        }
        assert!(zeta_n_standard(c(1.0), 1).is_err());
        assert!(zeta_n(c(1.0), 0.0, 3).is_err());
    }

    #[test]
    fn derivative_sums() {
        assert!(zeta_n_dtheta(c(1.0), 0.5, 1).unwrap().norm() < 1e-15);
        assert!(zeta_n_dtheta(c(1.0), 0.5, 2).unwrap().norm() < 1e-15);
        let h = 1e-5;
        let fd = (zeta_n(c(2.0), 1.0 / 3.0 + h, 5).unwrap() - zeta_n(c(2.0), 1.0 / 3.0 - h, 5).unwrap()) / (2.0 * h);
        let d = zeta_n_dtheta(c(2.0), 1.0 / 3.0, 5).unwrap();
        assert!((fd - d).norm() < 1e-6 * d.norm());
    }

    #[test]
    fn odd_l_mod_three() {
        let chi = &real_primitive_characters(3, Parity::Odd)[0];
        let v = discrete_l(c(1.0), chi, 1).unwrap();
        assert!((v.re - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-15);
        let s = discrete_l_sum(c(1.0), chi, 4).unwrap();
        assert_eq!(s.terms_summed, 11);
        assert_eq!(s.kind, SpectrumKind::OddL);
    }

    #[test]
    fn trig_small_cases() {
        let t = trig_closed_forms(1, 0.25, 1).unwrap();
        assert!((t.even_lhs - 2.0).abs() < 1e-14 && (t.even_rhs - 2.0).abs() < 1e-12);
        let t = trig_closed_forms(3, 1.0 / 3.0, 1).unwrap();
        assert!((t.even_lhs - t.even_rhs).abs() < 1e-10 * t.even_lhs);
        assert!((t.odd_lhs - t.odd_rhs).abs() < 1e-10 * t.even_lhs);
        let t = trig_closed_forms(4, 0.5, 2).unwrap();
        assert!(t.odd_rhs.abs() < 1e-12);
    }

    #[test]
    fn laplace_identity() {
        let r = laplace_trace_identity(-0.1, 0.5, 1).unwrap();
        assert!((r.resolvent - 1.0 / 4.1).abs() < 1e-15);
        assert!(r.residual < 1e-12);
        assert!(laplace_trace_identity(-0.05, 0.25, 3).unwrap().residual < 1e-10);
        let r = laplace_trace_identity(-0.01, 1.0 / 3.0, 5).unwrap();
        assert!((r.resolvent - r.chebyshev).abs() < 1e-12 * r.resolvent);
        assert!(laplace_trace_identity(-3.0, 0.25, 3).is_err());
    }
}
