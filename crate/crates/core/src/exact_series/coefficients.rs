use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;

use super::{ratio, Rational, RationalPolynomial, RationalSeries, Variable};

type Cache = RwLock<Vec<RationalPolynomial>>;

fn cached(cache: &'static OnceLock<Cache>, m: usize, build: fn(usize) -> Vec<RationalPolynomial>) -> Vec<RationalPolynomial> {
    let lock = cache.get_or_init(|| RwLock::new(Vec::new()));
    {
        let have = lock.read().expect("coefficient cache poisoned");
        if have.len() > m {
            return have[..=m].to_vec();
        }
    }
    let fresh = build(m.max(12));
    let mut have = lock.write().expect("coefficient cache poisoned");
    if fresh.len() > have.len() {
        *have = fresh;
    }
    have[..=m].to_vec()
}

fn build_a(m: usize) -> Vec<RationalPolynomial> {
    let minus_two_s = RationalPolynomial::monomial(ratio(-2, 1), 1, Variable::S);
    RationalSeries::sinc_half(m)
        .log()
        .scale(&minus_two_s)
        .exp()
        .into_coeffs()
}

fn build_b(m: usize) -> Vec<RationalPolynomial> {
    // z cot(z/2) = 2 cos(z/2) / (sin(z/2) / (z/2)), an even series.
    let two = RationalPolynomial::constant(ratio(2, 1), Variable::S);
    let z_cot = RationalSeries::cos_half(m)
        .mul(&RationalSeries::sinc_half(m).reciprocal())
        .scale(&two);
    let a = RationalSeries::new(build_a(m));
    a.mul(&z_cot).divided_by_z().into_coeffs()
}

static A_CACHE: OnceLock<Cache> = OnceLock::new();
static B_CACHE: OnceLock<Cache> = OnceLock::new();

/// `a_0..=a_m`: `(z/2 / sin(z/2))^(2s) = sum_k a_k(s) z^(2k)`.
pub fn a_coefficients(m: usize) -> Vec<RationalPolynomial> {
    cached(&A_CACHE, m, build_a)
}

/// `b_0..=b_m`: `(z/2 / sin(z/2))^(2s) cot(z/2) = sum_k b_k(s) z^(2k-1)`.
pub fn b_coefficients(m: usize) -> Vec<RationalPolynomial> {
    cached(&B_CACHE, m, build_b)
}

/// `2(s-k) a_k(s) - s b_k(s)`, identically zero for every `k`.
pub fn coefficient_relation_residual(k: usize) -> RationalPolynomial {
    let a = &a_coefficients(k)[k];
    let b = &b_coefficients(k)[k];
    let two_s_minus_k =
        RationalPolynomial::new(vec![Rational::from_integer((-2 * k as i64).into()), ratio(2, 1)], Variable::S);
    &(&two_s_minus_k * a) - &(&RationalPolynomial::var(Variable::S) * b)
}

/// `a_0(s)..=a_m(s)` at a complex point.
pub fn a_values(m: usize, s: Complex64) -> Vec<Complex64> {
    a_coefficients(m).iter().map(|p| p.eval_complex(s)).collect()
}

/// `b_0(s)..=b_m(s)` at a complex point.
pub fn b_values(m: usize, s: Complex64) -> Vec<Complex64> {
    b_coefficients(m).iter().map(|p| p.eval_complex(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::new(c.iter().map(|&(n, d)| ratio(n, d)).collect(), Variable::S)
    }

    #[test]
    fn leading_coefficients() {
        let a = a_coefficients(2);
        assert_eq!(a[0], poly(&[(1, 1)]));
        assert_eq!(a[1], poly(&[(0, 1), (1, 12)]));
        assert_eq!(a[2], poly(&[(0, 1), (1, 1440), (5, 1440)]));
        let b = b_coefficients(2);
        assert_eq!(b[0], poly(&[(2, 1)]));
        assert_eq!(b[1], poly(&[(-1, 6), (1, 6)]));
        assert_eq!(b[2], poly(&[(-2, 720), (-9, 720), (5, 720)]));
    }

    #[test]
    fn degrees() {
        for (k, (a, b)) in a_coefficients(10).iter().zip(b_coefficients(10)).enumerate() {
            assert_eq!(a.degree(), Some(k));
            assert_eq!(b.degree(), Some(k));
        }
    }

    #[test]
    fn relation_holds() {
        for k in 0..=12 {
            assert!(coefficient_relation_residual(k).is_zero(), "k = {k}");
        }
    }

    #[test]
    fn a_at_one_is_reciprocal_sine_square_series() {
        // (z/2)^2 / sin^2(z/2) at z = 0.3 against the truncated series.
        let z: f64 = 0.3;
        let exact = ((z / 2.0) / (z / 2.0).sin()).powi(2);
        let approx: f64 = a_values(12, Complex64::new(1.0, 0.0))
            .iter()
            .enumerate()
            .map(|(k, c)| c.re * z.powi(2 * k as i32))
            .sum();
        assert!((exact - approx).abs() < 1e-15);
    }
}
