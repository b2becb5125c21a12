//! Exact rational arithmetic: polynomials, truncated series in `z^2`, Bernoulli
//! data, the `a_k`/`b_k` coefficient polynomials, Chebyshev polynomials and the
//! characteristic polynomial of the twisted cycle Laplacian.

mod bernoulli;
mod chebyshev;
mod coefficients;
mod forests;
mod poly;
mod series;

use num_bigint::BigInt;
use num_traits::One;

pub use bernoulli::{bernoulli_number, bernoulli_numbers, bernoulli_polynomial};
pub use chebyshev::{
    charpoly_bundle, charpoly_roots, chebyshev, chebyshev_lemma_residual, exact_cos_two_pi,
    forest_expansion, ChebyshevKind, CosPolynomial,
};
pub use coefficients::{
    a_coefficients, a_values, b_coefficients, b_values, coefficient_relation_residual,
};
pub use forests::{brute_force_rooted_forests, rooted_forest_count};
pub use poly::{rational_string, rational_to_f64, RationalPolynomial, Variable};
pub use series::RationalSeries;

/// Canonical arbitrary-precision fraction.
pub type Rational = num_rational::BigRational;

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Shorthand for `num/den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
