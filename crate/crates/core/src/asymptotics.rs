//! Truncated large-`n` expansions of the cyclic spectral sums, empirical
//! remainder orders, and the exact special-value identities they turn into
//! at positive integers.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{circle_zeta, circle_zeta_dtheta, dirichlet_l, riemann_zeta, zeta_z};
use crate::characters::{DirichletCharacter, Parity};
use crate::discrete_spectra::{
    discrete_l, trig_closed_forms, zeta_n, zeta_n_dtheta, zeta_n_standard,
};
use crate::error::{out_of_range, CharacterRequirement, Error, Result};
use crate::exact_series::{a_values, b_values};
use crate::summation::{sum_complex, sum_f64};
use crate::table::ScanTable;

/// A truncated expansion and its parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionResult {
    pub m: usize,
    pub value: Complex64,
    /// Contribution of each `k = 0..=m`.
    pub terms: Vec<Complex64>,
    /// The `n zeta_Z(s)` term of the plain expansion, zero elsewhere.
    pub path_term: Complex64,
    /// Exponent of `n` in the first omitted term.
    pub predicted_exponent: f64,
}

impl ExpansionResult {
    fn new(m: usize, terms: Vec<Complex64>, path_term: Complex64, predicted_exponent: f64) -> Self {
        let value = path_term + sum_complex(terms.iter().copied());
        ExpansionResult {
            m,
            value,
            terms,
            path_term,
            predicted_exponent,
        }
    }
}

fn reject_half_integer(s: Complex64) -> Result<()> {
    if s.im == 0.0 && s.re > 0.0 && (s.re - 0.5).fract() == 0.0 {
        return Err(Error::HalfInteger(s.re));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(out_of_range("theta", format!("need 0 < theta < 1, got {theta}")))
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(out_of_range("n", "need n >= 1"));
    }
    Ok(())
}

fn require_parity(chi: &DirichletCharacter, parity: Parity) -> Result<()> {
    chi.require(CharacterRequirement::ModulusAboveOne)?;
    chi.require(CharacterRequirement::NonPrincipal)?;
    chi.require(match parity {
        Parity::Even => CharacterRequirement::Even,
        Parity::Odd => CharacterRequirement::Odd,
    })
}

/// `x^z` for real `x > 0`.
fn rpow(x: f64, z: Complex64) -> Complex64 {
    (z * x.ln()).exp()
}

/// `n zeta_Z(s) + n^(2s) sum_{k<=m} a_k(s) zeta_{R/Z}(s-k, theta) n^(-2k)`.
pub fn expand_zeta_n(s: Complex64, theta: f64, n: u64, m: usize) -> Result<ExpansionResult> {
    reject_half_integer(s)?;
    check_theta(theta)?;
    check_n(n)?;
    let nf = n as f64;
    let a = a_values(m, s);
    let terms = (0..=m)
        .map(|k| Ok(a[k] * circle_zeta(s - k as f64, theta)? * rpow(nf, 2.0 * (s - k as f64))))
        .collect::<Result<Vec<_>>>()?;
    let path_term = nf * zeta_z(s)?;
    Ok(ExpansionResult::new(m, terms, path_term, 2.0 * s.re - 2.0 - 2.0 * m as f64))
}

/// `n^(2s) sum_{k<=m} a_k(s) d/dtheta zeta_{R/Z}(s-k, theta) n^(-2k)`.
pub fn expand_zeta_n_dtheta(s: Complex64, theta: f64, n: u64, m: usize) -> Result<ExpansionResult> {
    check_theta(theta)?;
    check_n(n)?;
    let nf = n as f64;
    let a = a_values(m, s);
    let terms = (0..=m)
        .map(|k| Ok(a[k] * circle_zeta_dtheta(s - k as f64, theta)? * rpow(nf, 2.0 * (s - k as f64))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpansionResult::new(m, terms, Complex64::new(0.0, 0.0), 2.0 * s.re - 2.0 - 2.0 * m as f64))
}

/// `2 X^(2s) sum_{k<=m} a_k(s) X^(-2k) L(2(s-k), chi)` with `X = qn / 2 pi`.
pub fn expand_l_even(s: Complex64, chi: &DirichletCharacter, n: u64, m: usize) -> Result<ExpansionResult> {
    reject_half_integer(s)?;
    require_parity(chi, Parity::Even)?;
    check_n(n)?;
    let x = (chi.modulus() * n) as f64 / (2.0 * PI);
    let a = a_values(m, s);
    let terms = (0..=m)
        .map(|k| {
            let z = 2.0 * (s - k as f64);
            Ok(2.0 * a[k] * dirichlet_l(z, chi)? * rpow(x, z))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpansionResult::new(m, terms, Complex64::new(0.0, 0.0), 2.0 * s.re - 2.0 - 2.0 * m as f64))
}

/// `2 sum_{k<=m} b_k(s) L(1 + 2(s-k), chi) X^(1 + 2(s-k))` with `X = qn / 2 pi`.
pub fn expand_l_odd(s: Complex64, chi: &DirichletCharacter, n: u64, m: usize) -> Result<ExpansionResult> {
    require_parity(chi, Parity::Odd)?;
    check_n(n)?;
    let x = (chi.modulus() * n) as f64 / (2.0 * PI);
    let b = b_values(m, s);
    let terms = (0..=m)
        .map(|k| {
            let z = 1.0 + 2.0 * (s - k as f64);
            Ok(2.0 * b[k] * dirichlet_l(z, chi)? * rpow(x, z))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExpansionResult::new(m, terms, Complex64::new(0.0, 0.0), 1.0 + 2.0 * (s.re - m as f64 - 1.0)))
}

/// Least-squares slope of `log |error|` against `log n`.
pub fn remainder_order(samples: &[(u64, f64)]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(out_of_range("samples", format!("need at least 3, got {}", samples.len())));
    }
    if let Some(index) = samples.iter().position(|&(_, e)| !(e > 0.0)) {
        return Err(Error::ExactTermination { index });
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(n, e)| ((n as f64).ln(), e.ln())).collect();
    let k = pts.len() as f64;
    let mx = sum_f64(pts.iter().map(|p| p.0)) / k;
    let my = sum_f64(pts.iter().map(|p| p.1)) / k;
    let sxy = sum_f64(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)));
    let sxx = sum_f64(pts.iter().map(|p| (p.0 - mx).powi(2)));
    Ok(sxy / sxx)
}

/// Which expansion a remainder fit runs against.
#[derive(Debug, Clone, Copy)]
pub enum ExpansionKind<'a> {
    ZetaN { theta: f64 },
    ZetaNDtheta { theta: f64 },
    EvenL(&'a DirichletCharacter),
    OddL(&'a DirichletCharacter),
}

impl ExpansionKind<'_> {
    /// The truncated expansion and the exact finite sum at one `n`.
    pub fn evaluate(&self, s: Complex64, n: u64, m: usize) -> Result<(ExpansionResult, Complex64)> {
        Ok(match *self {
            ExpansionKind::ZetaN { theta } => (expand_zeta_n(s, theta, n, m)?, zeta_n(s, theta, n)?),
            ExpansionKind::ZetaNDtheta { theta } => {
                (expand_zeta_n_dtheta(s, theta, n, m)?, zeta_n_dtheta(s, theta, n)?)
            }
            ExpansionKind::EvenL(chi) => (expand_l_even(s, chi, n, m)?, discrete_l(s, chi, n)?),
            ExpansionKind::OddL(chi) => (expand_l_odd(s, chi, n, m)?, discrete_l(s, chi, n)?),
        })
    }
}

/// Errors of a truncated expansion over a grid of `n` and the fitted order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderFit {
    /// `(n, |expansion - exact|)`.
    pub samples: Vec<(u64, f64)>,
    pub predicted_exponent: f64,
    /// `None` when every error is at rounding level, i.e. the expansion is exact.
    pub fitted_exponent: Option<f64>,
    /// The `n` values the slope was fitted on.
    pub fitted_on: Vec<u64>,
}

impl RemainderFit {
    pub fn deviation(&self) -> Option<f64> {
        self.fitted_exponent.map(|f| (f - self.predicted_exponent).abs())
    }
}

/// Relative error below which every sample means the expansion is exact.
pub const TERMINATION_FLOOR: f64 = 1e-12;
/// Relative error below which a sample is rounding noise and left out of the fit.
pub const ROUNDING_FLOOR: f64 = 8.0 * f64::EPSILON;

pub fn remainder_fit(kind: ExpansionKind<'_>, s: Complex64, m: usize, n_list: &[u64]) -> Result<RemainderFit> {
    let evaluated: Vec<(u64, f64, f64, f64)> = n_list
        .par_iter()
        .map(|&n| {
            let (e, exact) = kind.evaluate(s, n, m)?;
            let abs = (e.value - exact).norm();
            Ok((n, e.predicted_exponent, abs, abs / exact.norm()))
        })
        .collect::<Result<_>>()?;
    let predicted_exponent = evaluated.first().map_or(f64::NAN, |e| e.1);
    let samples: Vec<(u64, f64)> = evaluated.iter().map(|&(n, _, e, _)| (n, e)).collect();
    if evaluated.iter().all(|e| e.3 <= TERMINATION_FLOOR) {
        return Ok(RemainderFit {
            samples,
            predicted_exponent,
            fitted_exponent: None,
            fitted_on: Vec::new(),
        });
    }
    let clean: Vec<(u64, f64)> = evaluated.iter().filter(|e| e.3 > ROUNDING_FLOOR).map(|e| (e.0, e.2)).collect();
    let used = if clean.len() >= 3 { clean } else { samples.clone() };
    Ok(RemainderFit {
        fitted_exponent: Some(remainder_order(&used)?),
        fitted_on: used.iter().map(|u| u.0).collect(),
        samples,
        predicted_exponent,
    })
}

/// Both sides of one exact identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_residual: f64,
    pub rel_residual: f64,
}

impl IdentityReport {
    pub fn new(id: &str, params: &[(&str, f64)], lhs: Complex64, rhs: Complex64) -> Self {
        Self::with_scale(id, params, lhs, rhs, 0.0)
    }

    /// As [`IdentityReport::new`], with the relative residual taken against at
    /// least `scale`. Used where both sides vanish, e.g. odd sums at `theta = 1/2`.
    pub fn with_scale(id: &str, params: &[(&str, f64)], lhs: Complex64, rhs: Complex64, scale: f64) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm()).max(scale);
        IdentityReport {
            identity_id: id.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            abs_residual,
            rel_residual: if scale > 0.0 { abs_residual / scale } else { 0.0 },
        }
    }

    pub fn holds(&self, rel_tolerance: f64) -> bool {
        self.rel_residual < rel_tolerance
    }
}

/// Which identity [`special_values`] evaluates.
#[derive(Debug, Clone, Copy)]
pub enum IdentityTarget<'a> {
    /// Power sums of `1/sin` (even) or `cot/sin` (odd) at `theta`.
    Trig { theta: f64, parity: Parity },
    /// `zeta(2p)` recovered from lower even values and `zeta_{Z/nZ}(p)`.
    Riemann,
    /// `zeta_{Z/nZ}(p)` in terms of `zeta_{R/Z}(k)`.
    Plain,
    /// `L_n(p, chi)` in terms of `L(2k, chi)` or `L(2k+1, chi)`.
    Dirichlet { chi: &'a DirichletCharacter, parity: Parity },
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `zeta_{Z/nZ}(p)`, with the empty sum at `n = 1`.
fn cyclic_zeta(p: u32, n: u64) -> Result<f64> {
    if n == 1 {
        Ok(0.0)
    } else {
        Ok(zeta_n_standard(real(p as f64), n)?.re)
    }
}

/// `(2 pi/n)^(2p) zeta_{Z/nZ}(p) / 2 - sum_{k<p} a_{p-k}(p) (2 pi/n)^(2p-2k) zeta(2k)`,
/// given `zeta(0), zeta(2), .., zeta(2p-2)`.
pub fn zeta_recursion_step(p: u32, n: u64, lower: &[f64]) -> Result<f64> {
    if p == 0 || lower.len() < p as usize {
        return Err(out_of_range("p", format!("need p >= 1 and {p} lower values")));
    }
    let pu = p as usize;
    let a = a_values(pu, real(p as f64));
    let w = 2.0 * PI / n as f64;
    let head = w.powi(2 * p as i32) * cyclic_zeta(p, n)? / 2.0;
    let tail = sum_f64((0..pu).map(|k| a[pu - k].re * w.powi(2 * (pu - k) as i32) * lower[k]));
    Ok(head - tail)
}

fn dirichlet_closed_form(p: u32, chi: &DirichletCharacter, n: u64) -> Result<Complex64> {
    let pu = p as usize;
    let a = a_values(pu, real(p as f64));
    let x = (chi.modulus() * n) as f64 / (2.0 * PI);
    let terms = (0..=pu)
        .map(|k| {
            Ok(match chi.parity() {
                Parity::Even => 2.0 * a[pu - k] * dirichlet_l(real(2.0 * k as f64), chi)? * x.powi(2 * k as i32),
                Parity::Odd => {
                    if k == 0 {
                        return Ok(Complex64::new(0.0, 0.0));
                    }
                    2.0 * (2.0 * k as f64 / p as f64)
                        * a[pu - k]
                        * dirichlet_l(real(2.0 * k as f64 + 1.0), chi)?
                        * x.powi(2 * k as i32 + 1)
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_complex(terms))
}

/// Evaluates both sides of the selected identity at integers `p, n >= 1`.
pub fn special_values(p: u32, n: u64, target: IdentityTarget<'_>) -> Result<IdentityReport> {
    if p == 0 || n == 0 {
        return Err(out_of_range("(p, n)", format!("need p, n >= 1, got ({p}, {n})")));
    }
    let (pf, nf) = (p as f64, n as f64);
    match target {
        IdentityTarget::Trig { theta, parity } => {
            let t = trig_closed_forms(n, theta, p)?;
            let params = [("p", pf), ("n", nf), ("theta", theta)];
            Ok(match parity {
                Parity::Even => IdentityReport::new("trig_even", &params, real(t.even_lhs), real(t.even_rhs)),
                Parity::Odd => {
                    IdentityReport::with_scale("trig_odd", &params, real(t.odd_lhs), real(t.odd_rhs), t.even_lhs)
                }
            })
        }
        IdentityTarget::Riemann => {
            let lower = (0..p)
                .map(|k| Ok(riemann_zeta(real(2.0 * k as f64))?.re))
                .collect::<Result<Vec<_>>>()?;
            let rhs = zeta_recursion_step(p, n, &lower)?;
            let lhs = riemann_zeta(real(2.0 * pf))?.re;
            Ok(IdentityReport::new("zeta_recursion", &[("p", pf), ("n", nf)], real(lhs), real(rhs)))
        }
        IdentityTarget::Plain => {
            let pu = p as usize;
            let a = a_values(pu, real(pf));
            let terms = (0..=pu)
                .map(|k| Ok(a[pu - k].re * circle_zeta(real(k as f64), 0.0)?.re * nf.powi(2 * k as i32)))
                .collect::<Result<Vec<_>>>()?;
            let lhs = cyclic_zeta(p, n)?;
            let scale = sum_f64(terms.iter().map(|t| t.abs()));
            let rhs = sum_f64(terms);
            Ok(IdentityReport::with_scale("zeta_cyclic", &[("p", pf), ("n", nf)], real(lhs), real(rhs), scale))
        }
        IdentityTarget::Dirichlet { chi, parity } => {
            if chi.parity() != parity || chi.is_principal() {
                return Err(Error::InvalidIdentity(format!(
                    "{parity:?} identity needs a non-principal {parity:?} character, got index {} mod {}",
                    chi.index(),
                    chi.modulus()
                )));
            }
            let lhs = discrete_l(real(pf), chi, n)?;
            let rhs = dirichlet_closed_form(p, chi, n)?;
            let id = match parity {
                Parity::Even => "dirichlet_even",
                Parity::Odd => "dirichlet_odd",
            };
            let params = [("p", pf), ("n", nf), ("q", chi.modulus() as f64), ("char_index", chi.index() as f64)];
            Ok(IdentityReport::new(id, &params, lhs, rhs))
        }
    }
}

/// The Dirichlet closed form against the trigonometric closed forms summed
/// against `chi` at `theta = r/q`. The two routes share no evaluation code
/// beyond the coefficients.
pub fn dirichlet_routes_agree(p: u32, chi: &DirichletCharacter, n: u64) -> Result<IdentityReport> {
    chi.require(CharacterRequirement::NonPrincipal)?;
    if p == 0 || n == 0 {
        return Err(out_of_range("(p, n)", format!("need p, n >= 1, got ({p}, {n})")));
    }
    let q = chi.modulus();
    let direct = dirichlet_closed_form(p, chi, n)?;
    let scale = 4f64.powi(-(p as i32));
    let mut terms = Vec::new();
    for r in 1..q {
        let c = chi.value(r as i64);
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let t = trig_closed_forms(n, r as f64 / q as f64, p)?;
        let side = match chi.parity() {
            Parity::Even => t.even_rhs,
            Parity::Odd => t.odd_rhs,
        };
        terms.push(c * scale * side);
    }
    let params = [("p", p as f64), ("n", n as f64), ("q", q as f64), ("char_index", chi.index() as f64)];
    Ok(IdentityReport::new("dirichlet_via_trig", &params, direct, sum_complex(terms)))
}

pub const RECURSION_COLUMNS: [&str; 6] = ["p", "direct", "recovered_n1", "rel_error_n1", "recovered_n2", "rel_error_n2"];

/// `zeta(2p)` for `p = 1..=p_max`, each recovered from the previously
/// recovered values (starting at `zeta(0) = -1/2`) through the `n = 1` and
/// `n = 2` recursions.
pub fn zeta_recursion_table(p_max: u32) -> Result<ScanTable> {
    if p_max == 0 {
        return Err(out_of_range("p_max", "need p_max >= 1"));
    }
    let mut chain1 = vec![-0.5];
    let mut chain2 = vec![-0.5];
    let mut table = ScanTable::new("recursion", &RECURSION_COLUMNS).with_parameter("p_max", p_max);
    for p in 1..=p_max {
        let r1 = zeta_recursion_step(p, 1, &chain1)?;
        let r2 = zeta_recursion_step(p, 2, &chain2)?;
        chain1.push(r1);
        chain2.push(r2);
        let direct = riemann_zeta(real(2.0 * p as f64))?.re;
        table.push(vec![
            p.into(),
            direct.into(),
            r1.into(),
            ((r1 - direct) / direct).abs().into(),
            r2.into(),
            ((r2 - direct) / direct).abs().into(),
        ])?;
    }
    Ok(table)
}

/// One row of the sign probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiegelSample {
    pub s: f64,
    pub n: u64,
    /// `L_n(s, chi)` itself.
    pub l_n: f64,
    /// The argument `u` with `L_n(u, chi) ~ c L(s, chi)`: `s/2` for even and
    /// `(s-1)/2` for odd `chi`.
    pub shifted_arg: f64,
    pub l_n_shifted: f64,
    /// Leading and subleading terms of the two-term expansion at `u`.
    pub leading: f64,
    pub subleading: f64,
    pub l_s: f64,
    pub l_s_minus_2: f64,
    /// What `L_n(u) >= 0` implies for `L(s)`: "positive", "nonnegative" or "none".
    pub implied: &'static str,
}

fn siegel_sample(chi: &DirichletCharacter, s: f64, n: u64) -> Result<SiegelSample> {
    let l_n = discrete_l(real(s), chi, n)?.re;
    let (shifted_arg, e) = match chi.parity() {
        Parity::Even => (s / 2.0, expand_l_even(real(s / 2.0), chi, n, 1)?),
        Parity::Odd => ((s - 1.0) / 2.0, expand_l_odd(real((s - 1.0) / 2.0), chi, n, 1)?),
    };
    let l_n_shifted = discrete_l(real(shifted_arg), chi, n)?.re;
    let l_s_minus_2 = dirichlet_l(real(s - 2.0), chi)?.re;
    let implied = if l_n_shifted < 0.0 {
        "none"
    } else {
        match chi.parity() {
            // The subleading term is negative, so L(s) must beat it.
            Parity::Even if l_s_minus_2 < 0.0 => "positive",
            Parity::Even => "none",
            // The subleading term is positive; only the limit survives.
            Parity::Odd => "nonnegative",
        }
    };
    Ok(SiegelSample {
        s,
        n,
        l_n,
        shifted_arg,
        l_n_shifted,
        leading: e.terms[0].re,
        subleading: e.terms[1].re,
        l_s: dirichlet_l(real(s), chi)?.re,
        l_s_minus_2,
        implied,
    })
}

pub const SIEGEL_COLUMNS: [&str; 14] = [
    "q",
    "char_index",
    "parity",
    "s",
    "n",
    "l_n",
    "sign_l_n",
    "shifted_arg",
    "l_n_shifted",
    "leading",
    "subleading",
    "l_s",
    "l_s_minus_2",
    "implied",
];

/// Signs of `L_n` over an `(s, n)` grid for a real non-principal character.
pub fn siegel_samples(chi: &DirichletCharacter, s_grid: &[f64], n_list: &[u64]) -> Result<Vec<SiegelSample>> {
    chi.require(CharacterRequirement::Real)?;
    chi.require(CharacterRequirement::NonPrincipal)?;
    chi.require(CharacterRequirement::ModulusAboveOne)?;
    if let Some(s) = s_grid.iter().find(|s| !(**s > 0.0 && **s < 1.0)) {
        return Err(out_of_range("s", format!("need 0 < s < 1, got {s}")));
    }
    let cells: Vec<(f64, u64)> = s_grid.iter().flat_map(|&s| n_list.iter().map(move |&n| (s, n))).collect();
    cells.par_iter().map(|&(s, n)| siegel_sample(chi, s, n)).collect()
}

pub fn siegel_sign_probe(chi: &DirichletCharacter, s_grid: &[f64], n_list: &[u64]) -> Result<ScanTable> {
    let samples = siegel_samples(chi, s_grid, n_list)?;
    let parity = match chi.parity() {
        Parity::Even => "even",
        Parity::Odd => "odd",
    };
    let mut table = ScanTable::new("siegel", &SIEGEL_COLUMNS)
        .with_parameter("q", chi.modulus())
        .with_parameter("char_index", chi.index());
    for x in samples {
        let sign = if x.l_n > 0.0 { 1 } else if x.l_n < 0.0 { -1 } else { 0 };
        table.push(vec![
            chi.modulus().into(),
            chi.index().into(),
            parity.into(),
            x.s.into(),
            x.n.into(),
            x.l_n.into(),
            sign.into(),
            x.shifted_arg.into(),
            x.l_n_shifted.into(),
            x.leading.into(),
            x.subleading.into(),
            x.l_s.into(),
            x.l_s_minus_2.into(),
            x.implied.into(),
        ])?;
    }
    Ok(table)
}
