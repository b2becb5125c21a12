//! Hurwitz zeta `zeta(s, a) = sum_{k>=0} (k + a)^(-s)`, `0 < a <= 1`.
//!
//! Evaluation strategy by region:
//! * `Re s >= 0`: Euler-Maclaurin after `N` direct terms, with `N` raised to
//!   `ceil|s| + 2M` so the Bernoulli corrections decay geometrically.
//! * `Re s < 0`, `a = r/q` with small `q`: Hurwitz's formula for rational
//!   arguments, which expresses `zeta(s, r/q)` through `zeta(1 - s, m/q)`.
//!   The direct sum would otherwise cancel catastrophically.
//! * `Re s < 0`, other `a`: `a^(-s) + zeta(s, 1 + a)` with the second term
//!   Taylor-expanded in `a` around the nearest `1 + r/16`, whose coefficients
//!   come from the rational formula. Below `Re s = -4` the functional
//!   equation with the periodic zeta summed directly is cheaper.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{out_of_range, Error, Result};
use crate::exact_series::{bernoulli_numbers, factorial, rational_to_f64, Rational};
use crate::summation::ComplexSum;

use super::gamma::gamma;
use super::{format_complex, EvalOptions};

/// Largest denominator for which rational arguments are recognised.
const RATIONAL_DENOMINATOR_LIMIT: u64 = 256;

/// `B_{2j} / (2j)!` for `j = 0..=60`.
fn bernoulli_weights() -> &'static [f64] {
    static W: OnceLock<Vec<f64>> = OnceLock::new();
    W.get_or_init(|| {
        let b = bernoulli_numbers(120);
        (0..=60)
            .map(|j| rational_to_f64(&(b[2 * j].clone() / Rational::from_integer(factorial(2 * j)))))
            .collect()
    })
}

fn cpow_real_base(x: f64, s: Complex64) -> Complex64 {
    (-s * x.ln()).exp()
}

/// `(e^z - 1) / z`, accurate for small `|z|`.
fn phi(z: Complex64) -> Complex64 {
    if z.norm() < 1e-300 {
        return Complex64::new(1.0, 0.0);
    }
    let em1 = Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * (z.im / 2.0).sin().powi(2),
        z.re.exp() * z.im.sin(),
    );
    em1 / z
}

/// Euler-Maclaurin evaluation. With `regular` the pole term `1/(s-1)` is
/// removed analytically, which leaves an entire function of `s`.
fn euler_maclaurin(s: Complex64, a: f64, opts: &EvalOptions, regular: bool) -> Complex64 {
    let m = opts.correction_terms;
    let n = opts.euler_maclaurin_shift.max(s.norm().ceil() as usize + 2 * m);
    let mut acc = ComplexSum::new();
    for k in 0..n {
        acc.add(cpow_real_base(k as f64 + a, s));
    }
    let x = n as f64 + a;
    let lx = x.ln();
    let x_minus_s = (-s * lx).exp();
    if regular {
        acc.add(-lx * phi((1.0 - s) * lx));
    } else {
        acc.add(x_minus_s * x / (s - 1.0));
    }
    acc.add(0.5 * x_minus_s);
    let w = bernoulli_weights();
    // (s)_{2j-1} x^{-s-2j+1}, built incrementally.
    let mut t = s * x_minus_s / x;
    for (j, &wj) in w.iter().enumerate().take(m + 1).skip(1) {
        if j > 1 {
            let k = (2 * j - 3) as f64;
            t = t * (s + k) * (s + k + 1.0) / (x * x);
        }
        acc.add(wj * t);
    }
    acc.value()
}

/// `a = r/q` up to two ulps with `q <= limit`, if such a fraction exists.
///
/// The slack admits values such as `1.0 - 1.0/3.0`, which is not the double
/// nearest to `2/3`.
pub(crate) fn small_rational(a: f64, limit: u64) -> Option<(u64, u64)> {
    if !(a > 0.0 && a <= 1.0) {
        return None;
    }
    (1..=limit).find_map(|q| {
        let r = (a * q as f64).round();
        let close = (r / q as f64 - a).abs() <= 2.0 * f64::EPSILON * a;
        (r >= 1.0 && r <= q as f64 && close).then_some((r as u64, q))
    })
}

/// `zeta(s, r/q) = 2 Gamma(1-s) (2 pi q)^(s-1) sum_{m=1..q} sin(pi s/2 + 2 pi m r/q) zeta(1-s, m/q)`.
///
/// For `r < q` the pole parts of `zeta(1-s, m/q)` cancel in the sum, so only
/// regular parts enter. For `r = q` the lone pole term is carried in closed form.
fn rational_reflection(s: Complex64, r: u64, q: u64, opts: &EvalOptions) -> Result<Complex64> {
    let pref = 2.0 * gamma(1.0 - s)? * cpow_real_base(2.0 * PI * q as f64, 1.0 - s);
    let mut acc = ComplexSum::new();
    for m in 1..=q {
        let ang = 2.0 * PI * ((m * r) % q) as f64 / q as f64;
        let w = (PI * s / 2.0 + ang).sin();
        acc.add(w * euler_maclaurin(1.0 - s, m as f64 / q as f64, opts, true));
    }
    if r % q == 0 {
        // sum_m sin(pi s/2) / (-s)
        acc.add(-(q as f64) * (PI * s / 2.0).sin() / s);
    }
    Ok(pref * acc.value())
}

/// Grid used by [`taylor_shift`].
const TAYLOR_GRID: u64 = 16;

/// `zeta(w, 1 + r/g)` for the Taylor grid point, `r` in `0..=g`.
fn zeta_at_grid(w: Complex64, r: u64, opts: &EvalOptions) -> Result<Complex64> {
    let g = TAYLOR_GRID;
    if w.re >= 0.0 {
        return Ok(euler_maclaurin(w, 1.0 + r as f64 / g as f64, opts, false));
    }
    if r == 0 {
        return rational_reflection(w, 1, 1, opts);
    }
    let a0 = r as f64 / g as f64;
    Ok(rational_reflection(w, r, g, opts)? - cpow_real_base(a0, w))
}

/// `zeta(s, a) = a^(-s) + sum_k (-1)^k (s)_k / k! zeta(s + k, a0) (a - 1 - a0')^k`
/// with `a0 = 1 + r/16` the nearest grid point, so `|delta| <= 1/32` and `a0 >= 1`.
fn taylor_shift(s: Complex64, a: f64, opts: &EvalOptions) -> Result<Complex64> {
    let g = TAYLOR_GRID as f64;
    let r = (a * g).round().clamp(0.0, g);
    let delta = a - r / g;
    let mut acc = ComplexSum::new();
    acc.add(cpow_real_base(a, s));
    // c_k = (-1)^k (s)_k delta^k / k!
    let mut c = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    for k in 0..200usize {
        if k > 0 {
            c *= -(s + (k - 1) as f64) * delta / k as f64;
        }
        if c == Complex64::new(0.0, 0.0) {
            // s is a non-positive integer and the expansion has terminated.
            break;
        }
        let w = s + k as f64;
        if w == Complex64::new(1.0, 0.0) {
            continue;
        }
        let term = c * zeta_at_grid(w, r as u64, opts)?;
        acc.add(term);
        let scale = acc.value().norm().max(f64::MIN_POSITIVE);
        small_run = if term.norm() < 1e-18 * scale { small_run + 1 } else { 0 };
        if small_run >= 3 {
            break;
        }
    }
    Ok(acc.value())
}

/// Functional equation with the periodic zeta summed directly; `Re s < -4`.
fn functional_equation(s: Complex64, a: f64, opts: &EvalOptions) -> Result<Complex64> {
    let sigma = s.re;
    // Tail sum_{k>K} k^(sigma-1) <= K^sigma / (-sigma).
    let k_max = ((opts.tolerance * 1e-4 * -sigma).ln() / sigma).exp().ceil().max(16.0) as usize;
    let mut cos_sum = ComplexSum::new();
    let mut sin_sum = ComplexSum::new();
    for k in 1..=k_max {
        let p = cpow_real_base(k as f64, 1.0 - s);
        let ang = 2.0 * PI * (k as f64 * a).fract();
        cos_sum.add(ang.cos() * p);
        sin_sum.add(ang.sin() * p);
    }
    let pref = 2.0 * gamma(1.0 - s)? * cpow_real_base(2.0 * PI, 1.0 - s);
    Ok(pref * ((PI * s / 2.0).sin() * cos_sum.value() + (PI * s / 2.0).cos() * sin_sum.value()))
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a <= 1.0 {
        Ok(())
    } else {
        Err(out_of_range("Hurwitz parameter", format!("need 0 < a <= 1, got {a}")))
    }
}

fn evaluate(s: Complex64, a: f64, opts: &EvalOptions, regular: bool) -> Result<Complex64> {
    let opts = opts.validated()?;
    check_a(a)?;
    if s.re >= 0.0 {
        return Ok(euler_maclaurin(s, a, &opts, regular));
    }
    let pole = if regular { 1.0 / (s - 1.0) } else { Complex64::new(0.0, 0.0) };
    let full = if let Some((r, q)) = small_rational(a, RATIONAL_DENOMINATOR_LIMIT) {
        rational_reflection(s, r, q, &opts)?
    } else if s.re >= -4.0 {
        taylor_shift(s, a, &opts)?
    } else {
        functional_equation(s, a, &opts)?
    };
    Ok(full - pole)
}

/// `zeta(s, a)` for `0 < a <= 1`, `s != 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_with(s, a, &EvalOptions::default())
}

pub fn hurwitz_zeta_with(s: Complex64, a: f64, opts: &EvalOptions) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: format_complex(s),
        });
    }
    evaluate(s, a, opts, false)
}

/// `zeta(s, a) - 1/(s - 1)`, entire in `s`; at `s = 1` it equals `-psi(a)`.
pub fn hurwitz_zeta_regular(s: Complex64, a: f64, opts: &EvalOptions) -> Result<Complex64> {
    evaluate(s, a, opts, true)
}

/// `zeta(s) = zeta(s, 1)`.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

pub fn riemann_zeta_with(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    hurwitz_zeta_with(s, 1.0, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::{bernoulli_polynomial, ratio};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn classical_values() {
        let z2 = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!(rel(z2, c(PI * PI / 6.0, 0.0)) < 1e-14);
        assert!(rel(riemann_zeta(c(0.0, 0.0)).unwrap(), c(-0.5, 0.0)) < 1e-14);
        assert!(rel(riemann_zeta(c(-1.0, 0.0)).unwrap(), c(-1.0 / 12.0, 0.0)) < 1e-13);
        assert!(rel(hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap(), c(PI * PI / 2.0, 0.0)) < 1e-14);
        assert!(rel(hurwitz_zeta(c(-1.0, 0.0), 0.5).unwrap(), c(1.0 / 24.0, 0.0)) < 1e-13);
        for th in [0.25, 1.0 / 3.0, 0.5] {
            let v = hurwitz_zeta(c(0.0, 0.0), th).unwrap();
            assert!((v.re - (0.5 - th)).abs() < 1e-14 && v.im.abs() < 1e-15);
        }
        assert!(hurwitz_zeta(c(1.0, 0.0), 0.3).is_err());
    }

    #[test]
    fn regular_part_at_one_is_minus_digamma() {
        // -psi(1) = Euler's constant, -psi(1/2) = gamma + 2 ln 2.
        let eg = 0.577_215_664_901_532_9;
        let o = EvalOptions::default();
        assert!((hurwitz_zeta_regular(c(1.0, 0.0), 1.0, &o).unwrap().re - eg).abs() < 1e-14);
        let v = hurwitz_zeta_regular(c(1.0, 0.0), 0.5, &o).unwrap().re;
        assert!((v - (eg + 2.0 * 2f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn negative_integers_match_bernoulli() {
        for n in 0..=8usize {
            let b = bernoulli_polynomial(n + 1);
            for th in [ratio(1, 4), ratio(1, 3), ratio(1, 2)] {
                let expect = -rational_to_f64(&b.eval(&th)) / (n + 1) as f64;
                let got = hurwitz_zeta(c(-(n as f64), 0.0), rational_to_f64(&th)).unwrap();
                assert!((got.re - expect).abs() < 1e-12 * expect.abs().max(1e-3), "n = {n}, {th}: {got} vs {expect}");
            }
        }
    }

    #[test]
    fn irrational_parameter_on_both_sides_of_minus_four() {
        // Continuity across the switch between Euler-Maclaurin and the functional equation.
        let a = 0.123_456_789_f64;
        let lo = hurwitz_zeta(c(-4.0 - 1e-9, 0.0), a).unwrap();
        let hi = hurwitz_zeta(c(-4.0 + 1e-9, 0.0), a).unwrap();
        assert!(rel(lo, hi) < 1e-6, "{lo} vs {hi}");
    }

    #[test]
    fn irrational_parameter_left_half_plane() {
        // Reference values computed independently to 30 digits.
        let v = hurwitz_zeta(c(-2.5, 0.0), 0.123).unwrap();
        assert!(rel(v, c(-7.830_670_479_419_182_8e-4, 0.0)) < 1e-12, "{v}");
        let v = hurwitz_zeta(c(-6.5, 3.0), 0.123).unwrap();
        assert!(rel(v, c(-0.044_421_750_180_674_322, -0.106_478_884_015_038_58)) < 1e-12, "{v}");
    }

    #[test]
    fn small_rational_detection() {
        assert_eq!(small_rational(1.0 - 1.0 / 3.0, 256), Some((2, 3)));
        assert_eq!(small_rational(0.25, 256), Some((1, 4)));
        assert_eq!(small_rational(2.0 / 7.0, 256), Some((2, 7)));
        assert_eq!(small_rational(1.0, 256), Some((1, 1)));
        assert_eq!(small_rational(0.123_456_789, 256), None);
    }
}
