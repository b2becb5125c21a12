use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial, Rational, RationalPolynomial, Variable};

/// `B_0..=B_m` with `B_1 = -1/2`, from `sum_{j<=k} C(k+1, j) B_j = 0`.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::from_integer(BigInt::from(1)));
    for k in 1..=m {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(k + 1, j)) * bj;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// `B_k` as the constant term of `t e^{xt} / (e^t - 1)` at `x = 0`.
pub fn bernoulli_number(k: usize) -> Rational {
    bernoulli_numbers(k).pop().expect("non-empty")
}

/// `B_k(x) = sum_j C(k, j) B_j x^(k-j)`.
pub fn bernoulli_polynomial(k: usize) -> RationalPolynomial {
    let b = bernoulli_numbers(k);
    let mut coeffs = vec![Rational::zero(); k + 1];
    for (j, bj) in b.iter().enumerate() {
        coeffs[k - j] = Rational::from_integer(binomial(k, j)) * bj;
    }
    RationalPolynomial::new(coeffs, Variable::X)
}

#[cfg(test)]
mod tests {
    use super::super::ratio;
    use super::*;

    #[test]
    fn small_numbers() {
        assert_eq!(bernoulli_number(0), ratio(1, 1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(2), ratio(1, 6));
        assert_eq!(bernoulli_number(3), ratio(0, 1));
        assert_eq!(bernoulli_number(4), ratio(-1, 30));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
    }

    #[test]
    fn small_polynomials() {
        let b1 = bernoulli_polynomial(1);
        assert_eq!(b1.coeffs(), &[ratio(-1, 2), ratio(1, 1)]);
        let b2 = bernoulli_polynomial(2);
        assert_eq!(b2.coeffs(), &[ratio(1, 6), ratio(-1, 1), ratio(1, 1)]);
    }

    #[test]
    fn reflection() {
        for k in 0..=12 {
            let p = bernoulli_polynomial(k);
            let reflected = p.compose_affine(&ratio(1, 1), &ratio(-1, 1));
            let expected = if k % 2 == 0 { p.clone() } else { -&p };
            assert_eq!(reflected, expected, "k = {k}");
        }
    }
}
