use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// Name of the indeterminate a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    S,
    X,
    N,
}

impl Variable {
    pub fn symbol(self) -> &'static str {
        match self {
            Variable::S => "s",
            Variable::X => "x",
            Variable::N => "n",
        }
    }
}

/// Dense polynomial with exact rational coefficients, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient list and `degree()` returns `None` for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
    var: Variable,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>, var: Variable) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, var }
    }

    pub fn from_integers(coeffs: &[i64], var: Variable) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            var,
        )
    }

    pub fn zero(var: Variable) -> Self {
        Self {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn one(var: Variable) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(c: Rational, var: Variable) -> Self {
        Self::new(vec![c], var)
    }

    /// `c * var^degree`
    pub fn monomial(c: Rational, degree: usize, var: Variable) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs, var)
    }

    /// The identity polynomial `var`.
    pub fn var(var: Variable) -> Self {
        Self::monomial(Rational::one(), 1, var)
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        Self::new(coeffs, self.var)
    }

    /// `p(a + b*var)`, re-expanded in the same variable.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Self::new(vec![a.clone(), b.clone()], self.var);
        let mut out = Self::zero(self.var);
        for c in self.coeffs.iter().rev() {
            out = &(&out * &inner) + &Self::constant(c.clone(), self.var);
        }
        out
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.var), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &c * d;
                }
            }
            quot[i] = c;
        }
        (Self::new(quot, self.var), Self::new(rem, self.var))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Coefficients as exact `num/den` strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Numerator or denominator beyond f64 range: divide in log space.
        let (n, d) = (r.numer(), r.denom());
        let sign = if n.sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
        let ln = |b: &BigInt| {
            let bits = b.bits();
            let shift = bits.saturating_sub(60);
            let top = (b.magnitude() >> shift).to_f64().unwrap_or(0.0);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        };
        sign * (ln(n) - ln(d)).exp()
    })
}

/// Canonical `num/den` rendering, denominator always printed.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational::zero();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = if neg { -c.clone() } else { c.clone() };
            let body = match i {
                0 => format!("{a}"),
                1 if a.is_one() => v.to_string(),
                1 => format!("{a}*{v}"),
                _ if a.is_one() => format!("{v}^{i}"),
                _ => format!("{a}*{v}^{i}"),
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        assert_eq!(self.var, rhs.var, "polynomials in different variables");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RationalPolynomial::new(coeffs, self.var)
    }
}

impl<'a> Sub<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        assert_eq!(self.var, rhs.var, "polynomials in different variables");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RationalPolynomial::new(coeffs, self.var)
    }
}

impl<'a> Mul<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        assert_eq!(self.var, rhs.var, "polynomials in different variables");
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPolynomial::new(coeffs, self.var)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = RationalPolynomial::new(vec![r(1, 2), r(0, 1), r(0, 1)], Variable::X);
        assert_eq!(p.degree(), Some(0));
        assert!(RationalPolynomial::new(vec![r(0, 1)], Variable::X).is_zero());
    }

    #[test]
    fn affine_composition() {
        // (x^2)(1 - 2x) = 1 - 4x + 4x^2
        let p = RationalPolynomial::from_integers(&[0, 0, 1], Variable::X);
        let q = p.compose_affine(&r(1, 1), &r(-2, 1));
        assert_eq!(q, RationalPolynomial::from_integers(&[1, -4, 4], Variable::X));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let a = RationalPolynomial::from_integers(&[-1, 1], Variable::X);
        let b = RationalPolynomial::from_integers(&[2, 1], Variable::X);
        let p = &(&a * &a) * &b;
        let (q, rem) = p.div_rem(&a);
        assert!(rem.is_zero());
        assert_eq!(q, &a * &b);
        assert_eq!(p.squarefree_part().monic(), (&a * &b).monic());
    }

    #[test]
    fn display_is_readable() {
        let p = RationalPolynomial::new(vec![r(1, 1440), r(5, 1440)], Variable::S);
        assert_eq!(p.to_string(), "1/288*s + 1/1440");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((rational_to_f64(&big) - 10.0).abs() < 1e-12);
    }
}
