use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::{root_number, DirichletCharacter, Parity};
use crate::error::{CharacterRequirement, Error, Result};
use crate::summation::ComplexSum;

use super::gamma::gamma;
use super::hurwitz::{hurwitz_zeta_regular, riemann_zeta_with};
use super::{format_complex, EvalOptions};

/// `L(s, chi) = q^(-s) sum_r chi(r) zeta(s, r/q)`.
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    dirichlet_l_with(s, chi, &EvalOptions::default())
}

pub fn dirichlet_l_with(s: Complex64, chi: &DirichletCharacter, opts: &EvalOptions) -> Result<Complex64> {
    let q = chi.modulus();
    if q == 1 {
        return riemann_zeta_with(s, opts);
    }
    let one = Complex64::new(1.0, 0.0);
    if chi.is_principal() && s == one {
        return Err(Error::Pole {
            function: "dirichlet_l",
            at: format_complex(s),
        });
    }
    let qf = q as f64;
    let q_pow = (-s * qf.ln()).exp();
    // Since chi(0) = 0, the pole parts 1/(s-1) appear with total weight
    // sum_r chi(r), which vanishes unless chi is principal.
    let mut pole_weight = 0.0;
    let mut acc = ComplexSum::new();
    if s.re >= 0.0 {
        for r in 1..q {
            let c = chi.value(r as i64);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            acc.add(c * hurwitz_zeta_regular(s, r as f64 / qf, opts)?);
            pole_weight += c.re;
        }
        let pole = if chi.is_principal() { pole_weight / (s - 1.0) } else { Complex64::new(0.0, 0.0) };
        return Ok(q_pow * (acc.value() + pole));
    }
    // Hurwitz's formula for rational arguments, summed over r first:
    // sum_r chi(r) zeta(s, r/q) = 2 Gamma(1-s) (2 pi q)^(s-1) sum_m c_m zeta(1-s, m/q)
    // with c_m = sum_r chi(r) sin(pi s/2 + 2 pi m r/q). The c_m add up to zero,
    // so the poles of zeta(1-s, m/q) cancel and regular parts suffice.
    let half = PI * s / 2.0;
    for m in 1..=q {
        let mut cm = ComplexSum::new();
        for r in 1..q {
            let c = chi.value(r as i64);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let ang = 2.0 * PI * ((m * r) % q) as f64 / qf;
            cm.add(c * (half + ang).sin());
        }
        acc.add(cm.value() * hurwitz_zeta_regular(1.0 - s, m as f64 / qf, opts)?);
    }
    let pref = 2.0 * gamma(1.0 - s)? * ((s - 1.0) * (2.0 * PI * qf).ln()).exp();
    Ok(q_pow * pref * acc.value())
}

/// `xi(s, chi) = (pi/q)^(-s/2) Gamma((s + a)/2) L(s, chi)`, `a = 0` for even
/// and `a = 1` for odd primitive `chi`.
pub fn completed_xi(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    chi.require(CharacterRequirement::NonPrincipal)?;
    chi.require(CharacterRequirement::Primitive)?;
    let shift = match chi.parity() {
        Parity::Even => 0.0,
        Parity::Odd => 1.0,
    };
    let g = gamma((s + shift) / 2.0)?;
    let pq = (PI / chi.modulus() as f64).ln();
    Ok((-s / 2.0 * pq).exp() * g * dirichlet_l(s, chi)?)
}

/// Both sides of `xi(s, chi) = w_chi xi(1 - s, conj chi)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FunctionalEquationCheck {
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_residual: f64,
}

pub fn functional_equation_check(s: Complex64, chi: &DirichletCharacter) -> Result<FunctionalEquationCheck> {
    let lhs = completed_xi(s, chi)?;
    let rhs = root_number(chi)? * completed_xi(1.0 - s, &chi.conjugate())?;
    Ok(FunctionalEquationCheck {
        lhs: [lhs.re, lhs.im],
        rhs: [rhs.re, rhs.im],
        abs_residual: (lhs - rhs).norm(),
    })
}
