use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{factorial, ratio, rational_to_f64, Rational, RationalPolynomial, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

/// `T_n` or `U_n` in `x` from `P_{k+1} = 2x P_k - P_{k-1}`.
pub fn chebyshev(kind: ChebyshevKind, n: usize) -> RationalPolynomial {
    let p0 = RationalPolynomial::one(Variable::X);
    let p1 = match kind {
        ChebyshevKind::First => RationalPolynomial::var(Variable::X),
        ChebyshevKind::Second => RationalPolynomial::monomial(ratio(2, 1), 1, Variable::X),
    };
    if n == 0 {
        return p0;
    }
    let two_x = RationalPolynomial::monomial(ratio(2, 1), 1, Variable::X);
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `cos(2 pi theta)` when it is rational, i.e. `theta` in `{0, 1/6, 1/4, 1/3, 1/2, ...}`.
pub fn exact_cos_two_pi(theta: &Rational) -> Option<Rational> {
    let t = theta - theta.floor();
    let (n, d) = (t.numer().to_u32()?, t.denom().to_u32()?);
    let v = match (n, d) {
        (0, 1) => ratio(1, 1),
        (1, 2) => ratio(-1, 1),
        (1, 4) | (3, 4) => ratio(0, 1),
        (1, 6) | (5, 6) => ratio(1, 2),
        (1, 3) | (2, 3) => ratio(-1, 2),
        _ => return None,
    };
    Some(v)
}

/// `rational(x) + cos(2 pi theta) * cos_part(x)` with the cosine kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosPolynomial {
    pub theta: Rational,
    pub rational: RationalPolynomial,
    pub cos_part: RationalPolynomial,
}

impl CosPolynomial {
    /// Structurally zero, independent of the value of the cosine.
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.cos_part.is_zero()
    }

    /// Fully rational form when `cos(2 pi theta)` is rational.
    pub fn to_rational(&self) -> Option<RationalPolynomial> {
        let c = exact_cos_two_pi(&self.theta)?;
        Some(&self.rational + &self.cos_part.scale(&c))
    }

    /// Coefficients with the cosine substituted in binary64.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        if let Some(p) = self.to_rational() {
            return p.to_f64_coeffs();
        }
        let c = (2.0 * std::f64::consts::PI * rational_to_f64(&self.theta)).cos();
        let r = self.rational.to_f64_coeffs();
        let k = self.cos_part.to_f64_coeffs();
        (0..r.len().max(k.len()))
            .map(|i| r.get(i).copied().unwrap_or(0.0) + c * k.get(i).copied().unwrap_or(0.0))
            .collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `p(a + b x)` applied to both parts.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        Self {
            theta: self.theta.clone(),
            rational: self.rational.compose_affine(a, b),
            cos_part: self.cos_part.compose_affine(a, b),
        }
    }
}

/// `P_{n,theta}(x) = 2 [T_n(1 - x/2) - cos(2 pi theta)]`, whose roots are the
/// eigenvalues `4 sin^2(pi (j + theta) / n)` of the twisted cycle Laplacian.
pub fn charpoly_bundle(n: usize, theta: &Rational) -> CosPolynomial {
    assert!(n >= 1, "cycle length must be positive");
    let t = chebyshev(ChebyshevKind::First, n).compose_affine(&ratio(1, 1), &ratio(-1, 2));
    CosPolynomial {
        theta: theta.clone(),
        rational: t.scale(&ratio(2, 1)),
        cos_part: RationalPolynomial::constant(ratio(-2, 1), Variable::X),
    }
}

/// `T_n(1 - 2x) - cos(2 pi theta) - P_{n,theta}(4x) / 2`, zero as a polynomial.
pub fn chebyshev_lemma_residual(n: usize, theta: &Rational) -> CosPolynomial {
    let lhs = chebyshev(ChebyshevKind::First, n).compose_affine(&ratio(1, 1), &ratio(-2, 1));
    let p = charpoly_bundle(n, theta).compose_affine(&ratio(0, 1), &ratio(4, 1));
    let half = ratio(1, 2);
    CosPolynomial {
        theta: theta.clone(),
        rational: &lhs - &p.rational.scale(&half),
        cos_part: &RationalPolynomial::constant(ratio(-1, 1), Variable::X) - &p.cos_part.scale(&half),
    }
}

/// Closed form of `det(x + Delta_{n,theta})`:
/// `2(1 - cos 2 pi theta) + 2n sum_{k=1..n} (n+k-1)! / ((n-k)! (2k)!) x^k`.
pub fn forest_expansion(n: usize, theta: &Rational) -> CosPolynomial {
    let mut coeffs = vec![ratio(2, 1)];
    for k in 1..=n {
        let num = BigInt::from(2 * n) * factorial(n + k - 1);
        let den = factorial(n - k) * factorial(2 * k);
        coeffs.push(Rational::new(num, den));
    }
    CosPolynomial {
        theta: theta.clone(),
        rational: RationalPolynomial::new(coeffs, Variable::X),
        cos_part: RationalPolynomial::constant(ratio(-2, 1), Variable::X),
    }
}

/// Real roots of `P_{n,theta}`, ascending, each listed once.
///
/// Repeated roots are removed exactly through `p / gcd(p, p')` when the
/// cosine is rational; the remaining simple roots come from the companion
/// matrix and are polished by Newton steps on the original polynomial.
pub fn charpoly_roots(n: usize, theta: &Rational) -> Vec<f64> {
    let p = charpoly_bundle(n, theta);
    let coeffs = match p.to_rational() {
        Some(exact) => exact.squarefree_part().to_f64_coeffs(),
        None => p.to_f64_coeffs(),
    };
    let mut roots: Vec<f64> = companion_roots(&coeffs)
        .into_iter()
        .map(|r| newton_polish(&coeffs, r))
        .collect();
    roots.sort_by(f64::total_cmp);
    roots
}

fn companion_roots(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    m.complex_eigenvalues().iter().map(|z| z.re).collect()
}

fn horner_with_derivative(c: &[f64], x: f64) -> (f64, f64) {
    c.iter().rev().fold((0.0, 0.0), |(p, dp), &a| (p * x + a, dp * x + p))
}

fn newton_polish(simple: &[f64], mut x: f64) -> f64 {
    for _ in 0..8 {
        let (p, dp) = horner_with_derivative(simple, x);
        if dp == 0.0 || !dp.is_finite() {
            break;
        }
        let step = p / dp;
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order() {
        assert_eq!(chebyshev(ChebyshevKind::First, 1), RationalPolynomial::var(Variable::X));
        assert_eq!(
            chebyshev(ChebyshevKind::First, 2),
            RationalPolynomial::from_integers(&[-1, 0, 2], Variable::X)
        );
        assert_eq!(
            chebyshev(ChebyshevKind::Second, 2),
            RationalPolynomial::from_integers(&[-1, 0, 4], Variable::X)
        );
    }

    #[test]
    fn derivative_relation() {
        for n in 1..=20 {
            let lhs = chebyshev(ChebyshevKind::First, n).derivative();
            let rhs = chebyshev(ChebyshevKind::Second, n - 1).scale(&ratio(n as i64, 1));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn lemma_and_expansion() {
        for n in 1..=12 {
            for th in [ratio(0, 1), ratio(1, 4), ratio(1, 3), ratio(2, 7)] {
                assert!(chebyshev_lemma_residual(n, &th).is_zero());
                let det = charpoly_bundle(n, &th).compose_affine(&ratio(0, 1), &ratio(-1, 1));
                assert_eq!(det, forest_expansion(n, &th), "n = {n}");
            }
        }
    }

    #[test]
    fn single_vertex() {
        let p = charpoly_bundle(1, &ratio(1, 5));
        // 2(1 - x/2) - 2 cos = 4 sin^2(pi theta) - x
        assert_eq!(p.rational, RationalPolynomial::from_integers(&[2, -1], Variable::X));
        let x = 0.7;
        let expect = 4.0 * (std::f64::consts::PI / 5.0).sin().powi(2) - x;
        assert!((p.eval_f64(x) - expect).abs() < 1e-14);
    }

    #[test]
    fn roots_match_spectrum() {
        for n in 1..=10 {
            for th in [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(1, 7)] {
                let t = rational_to_f64(&th);
                let mut lam: Vec<f64> = (0..n)
                    .map(|j| 4.0 * (std::f64::consts::PI * (j as f64 + t) / n as f64).sin().powi(2))
                    .collect();
                lam.sort_by(f64::total_cmp);
                lam.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
                let roots = charpoly_roots(n, &th);
                assert_eq!(roots.len(), lam.len(), "n = {n}, theta = {th}");
                for (r, l) in roots.iter().zip(&lam) {
                    assert!((r - l).abs() < 1e-8, "n = {n}: {r} vs {l}");
                }
            }
        }
    }
}
