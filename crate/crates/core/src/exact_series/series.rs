use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, Rational, RationalPolynomial, Variable};

/// Truncated power series in `u = z^2` whose coefficients are polynomials in `s`.
///
/// Coefficient `k` multiplies `z^(2k)`, or `z^(2k-1)` when `odd_shift` is set.
/// Only coefficients `0..=order` are known; no operation reads past them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<RationalPolynomial>,
    odd_shift: bool,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<RationalPolynomial>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        Self {
            coeffs,
            odd_shift: false,
        }
    }

    fn from_rationals(coeffs: Vec<Rational>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| RationalPolynomial::constant(c, Variable::S))
                .collect(),
        )
    }

    /// Truncation order `m`: coefficients `0..=m` are exact.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_odd_shifted(&self) -> bool {
        self.odd_shift
    }

    /// Reinterpret coefficient `k` as multiplying `z^(2k-1)`, i.e. divide by `z`.
    pub fn divided_by_z(mut self) -> Self {
        assert!(!self.odd_shift, "series is already odd-shifted");
        self.odd_shift = true;
        self
    }

    pub fn coeff(&self, k: usize) -> &RationalPolynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RationalPolynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RationalPolynomial> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
            odd_shift: self.odd_shift,
        }
    }

    /// `sin(z/2) / (z/2)` to order `m` in `z^2`.
    pub fn sinc_half(m: usize) -> Self {
        Self::from_rationals(
            (0..=m)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let den = BigInt::from(4).pow(j as u32) * factorial(2 * j + 1);
                    Rational::new(BigInt::from(sign), den)
                })
                .collect(),
        )
    }

    /// `cos(z/2)` to order `m` in `z^2`.
    pub fn cos_half(m: usize) -> Self {
        Self::from_rationals(
            (0..=m)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let den = BigInt::from(4).pow(j as u32) * factorial(2 * j);
                    Rational::new(BigInt::from(sign), den)
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let m = self.order().min(other.order());
        Self {
            coeffs: (0..=m).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
            odd_shift: self.odd_shift,
        }
    }

    /// Cauchy product truncated to the smaller order. Shifts add.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            !(self.odd_shift && other.odd_shift),
            "product of two odd-shifted series is not representable"
        );
        let m = self.order().min(other.order());
        let coeffs = (0..=m)
            .map(|k| {
                (0..=k).fold(RationalPolynomial::zero(Variable::S), |acc, j| {
                    &acc + &(&self.coeffs[j] * &other.coeffs[k - j])
                })
            })
            .collect();
        Self {
            coeffs,
            odd_shift: self.odd_shift || other.odd_shift,
        }
    }

    pub fn scale(&self, p: &RationalPolynomial) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
            odd_shift: self.odd_shift,
        }
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn reciprocal(&self) -> Self {
        self.require_unit_constant();
        let mut inv: Vec<RationalPolynomial> = vec![RationalPolynomial::one(Variable::S)];
        for k in 1..=self.order() {
            let mut acc = RationalPolynomial::zero(Variable::S);
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &inv[k - j]);
            }
            inv.push(-&acc);
        }
        Self::new(inv)
    }

    /// Formal logarithm of a series with constant term 1.
    ///
    /// From `f * (log f)' = f'` in `u`: `L_k = f_k - (1/k) sum_{j<k} j L_j f_{k-j}`.
    pub fn log(&self) -> Self {
        self.require_unit_constant();
        let mut out: Vec<RationalPolynomial> = vec![RationalPolynomial::zero(Variable::S)];
        for k in 1..=self.order() {
            let mut acc = RationalPolynomial::zero(Variable::S);
            for j in 1..k {
                let w = Rational::from_integer(BigInt::from(j));
                acc = &acc + &(&out[j] * &self.coeffs[k - j]).scale(&w);
            }
            let inv_k = Rational::new(BigInt::one(), BigInt::from(k));
            out.push(&self.coeffs[k] - &acc.scale(&inv_k));
        }
        Self::new(out)
    }

    /// Formal exponential of a series with zero constant term.
    ///
    /// From `E' = h' E`: `E_k = (1/k) sum_{j=1..k} j h_j E_{k-j}`.
    pub fn exp(&self) -> Self {
        assert!(
            !self.odd_shift && self.coeffs[0].is_zero(),
            "exp needs a zero constant term"
        );
        let mut out: Vec<RationalPolynomial> = vec![RationalPolynomial::one(Variable::S)];
        for k in 1..=self.order() {
            let mut acc = RationalPolynomial::zero(Variable::S);
            for j in 1..=k {
                let w = Rational::from_integer(BigInt::from(j));
                acc = &acc + &(&self.coeffs[j] * &out[k - j]).scale(&w);
            }
            out.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
        }
        Self::new(out)
    }

    fn require_unit_constant(&self) {
        assert!(
            !self.odd_shift && self.coeffs[0] == RationalPolynomial::one(Variable::S),
            "operation needs constant term 1"
        );
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.odd_shift, other.odd_shift, "mismatched series shift");
    }
}

impl Zero for RationalSeries {
    fn zero() -> Self {
        Self::new(vec![RationalPolynomial::zero(Variable::S)])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl std::ops::Add for RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: Self) -> Self {
        RationalSeries::add(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_round_trip_on_sinc() {
        for m in [0, 1, 5, 16] {
            let f = RationalSeries::sinc_half(m);
            assert_eq!(f.log().exp(), f, "order {m}");
        }
    }

    #[test]
    fn reciprocal_inverts() {
        let f = RationalSeries::sinc_half(10);
        let one = f.mul(&f.reciprocal());
        assert_eq!(one.coeff(0), &RationalPolynomial::one(Variable::S));
        assert!((1..=10).all(|k| one.coeff(k).is_zero()));
    }

    #[test]
    fn truncation_is_respected() {
        let a = RationalSeries::sinc_half(3);
        let b = RationalSeries::cos_half(7);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }
}
