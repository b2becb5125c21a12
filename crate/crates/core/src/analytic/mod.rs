//! Floating-point evaluation of the continuous objects: gamma, Hurwitz and
//! Riemann zeta, Dirichlet L, the circle spectral zetas, the path-graph zeta
//! and the completed L-function.

mod circle;
mod gamma;
mod hurwitz;
mod lfunc;
pub mod quadrature;

pub use circle::{
    circle_zeta, circle_zeta_dtheta, circle_zeta_dtheta_reduced, circle_zeta_untwisted, zeta_z,
    zeta_z_integral,
};
pub use gamma::{gamma, rgamma};
pub use hurwitz::{
    hurwitz_zeta, hurwitz_zeta_regular, hurwitz_zeta_with, riemann_zeta, riemann_zeta_with,
};
pub use lfunc::{
    completed_xi, dirichlet_l, dirichlet_l_with, functional_equation_check, FunctionalEquationCheck,
};

/// Euler-Maclaurin parameters for the zeta evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Number of terms summed directly before the tail formula.
    pub euler_maclaurin_shift: usize,
    /// Number of Bernoulli correction terms.
    pub correction_terms: usize,
    /// Relative tolerance used to size truncated series.
    pub tolerance: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            euler_maclaurin_shift: 30,
            correction_terms: 12,
            tolerance: 1e-12,
        }
    }
}

impl EvalOptions {
    pub fn validated(self) -> crate::Result<Self> {
        if self.euler_maclaurin_shift == 0 || self.correction_terms == 0 || self.correction_terms > 60 {
            return Err(crate::error::out_of_range(
                "EvalOptions",
                "need shift >= 1 and 1 <= correction terms <= 60",
            ));
        }
        Ok(self)
    }
}

pub(crate) fn format_complex(s: num_complex::Complex64) -> String {
    if s.im == 0.0 {
        format!("{}", s.re)
    } else {
        format!("{}{:+}i", s.re, s.im)
    }
}
