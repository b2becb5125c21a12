//! Completed discrete L-functions `xi_n(s, chi)` and the ratio experiment
//! `xi_n(s, chi) / xi_n(1 - s, conj chi) -> w_chi`.
//!
//! The probe checks the mechanism behind the limit (the two-term expansion
//! `xi_n = c xi + beta n^-2 + O(n^-4)`); it never claims to find or exclude
//! zeros.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{completed_xi, gamma};
use crate::asymptotics::remainder_order;
use crate::characters::{root_number, DirichletCharacter, Parity};
use crate::discrete_spectra::discrete_l;
use crate::error::{out_of_range, CharacterRequirement, Result};
use crate::table::ScanTable;

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    chi.require(CharacterRequirement::ModulusAboveOne)?;
    chi.require(CharacterRequirement::NonPrincipal)?;
    chi.require(CharacterRequirement::Primitive)
}

/// `x^z` for real `x > 0`.
fn rpow(x: f64, z: Complex64) -> Complex64 {
    (z * x.ln()).exp()
}

/// `2^s n^-s (pi/q)^(s/2) Gamma((s+a)/2) L_n((s-a)/2, chi)` with `a = 1` for
/// odd and `a = 0` for even `chi`.
///
/// Tends to `4 xi(s, chi)` for odd and `2 xi(s, chi)` for even `chi`.
pub fn xi_n(s: Complex64, chi: &DirichletCharacter, n: u64) -> Result<Complex64> {
    require_primitive(chi)?;
    if n == 0 {
        return Err(out_of_range("n", "need n >= 1"));
    }
    let a = match chi.parity() {
        Parity::Odd => 1.0,
        Parity::Even => 0.0,
    };
    let pref = rpow(2.0 / n as f64, s) * rpow(PI / chi.modulus() as f64, s / 2.0);
    Ok(pref * gamma((s + a) / 2.0)? * discrete_l((s - a) / 2.0, chi, n)?)
}

/// Limit of `xi_n / xi`: 4 for odd and 2 for even characters.
pub fn xi_n_limit_factor(chi: &DirichletCharacter) -> f64 {
    match chi.parity() {
        Parity::Odd => 4.0,
        Parity::Even => 2.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaValue {
    pub s: Complex64,
    pub value: Complex64,
}

/// `beta(s, chi) = (pi/q) (s-1)(s-3)/3 xi(s-2, chi)`, the `n^-2` coefficient
/// of `xi_n(s, chi)` for odd primitive `chi`.
pub fn beta(s: Complex64, chi: &DirichletCharacter) -> Result<BetaValue> {
    require_primitive(chi)?;
    chi.require(CharacterRequirement::Odd)?;
    let c = PI / chi.modulus() as f64 * (s - 1.0) * (s - 3.0) / 3.0;
    Ok(BetaValue {
        s,
        value: c * entire_xi(s - 2.0, chi)?,
    })
}

/// `xi(s, chi)` through the functional equation left of the critical line,
/// where the direct form is a product of a Gamma pole and a trivial zero.
fn entire_xi(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if s.re < 0.5 {
        Ok(root_number(chi)? * completed_xi(1.0 - s, &chi.conjugate())?)
    } else {
        completed_xi(s, chi)
    }
}

/// `|xi_n(s) - 4 xi(s) - beta(s) n^-2|` over `n_list` and its fitted order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoTermFit {
    pub s: Complex64,
    pub samples: Vec<(u64, f64)>,
    pub fitted_exponent: f64,
}

pub fn two_term_fit(s: Complex64, chi: &DirichletCharacter, n_list: &[u64]) -> Result<TwoTermFit> {
    let b = beta(s, chi)?.value;
    let xi = 4.0 * completed_xi(s, chi)?;
    let samples: Vec<(u64, f64)> = n_list
        .par_iter()
        .map(|&n| Ok((n, (xi_n(s, chi, n)? - xi - b / (n * n) as f64).norm())))
        .collect::<Result<_>>()?;
    Ok(TwoTermFit {
        s,
        fitted_exponent: remainder_order(&samples)?,
        samples,
    })
}

pub const BETA_COLUMNS: [&str; 4] = ["sigma", "t", "abs_beta", "decreasing_so_far"];

/// `|beta(sigma + it)|` over a strictly increasing `sigma` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaMonotonicity {
    pub t: f64,
    pub values: Vec<(f64, f64)>,
    pub strictly_decreasing: bool,
}

pub fn beta_monotonicity(chi: &DirichletCharacter, t: f64, sigma_grid: &[f64]) -> Result<BetaMonotonicity> {
    if sigma_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(out_of_range("sigma_grid", "must be strictly increasing"));
    }
    let values: Vec<(f64, f64)> = sigma_grid
        .par_iter()
        .map(|&sigma| Ok((sigma, beta(Complex64::new(sigma, t), chi)?.value.norm())))
        .collect::<Result<_>>()?;
    let strictly_decreasing = values.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(BetaMonotonicity {
        t,
        values,
        strictly_decreasing,
    })
}

pub fn beta_monotonicity_scan(chi: &DirichletCharacter, t: f64, sigma_grid: &[f64]) -> Result<ScanTable> {
    let m = beta_monotonicity(chi, t, sigma_grid)?;
    let mut table = ScanTable::new("beta-monotonicity", &BETA_COLUMNS)
        .with_parameter("q", chi.modulus())
        .with_parameter("char_index", chi.index())
        .with_parameter("strictly_decreasing", m.strictly_decreasing);
    let mut ok = true;
    for (i, &(sigma, v)) in m.values.iter().enumerate() {
        ok &= i == 0 || v < m.values[i - 1].1;
        table.push(vec![sigma.into(), t.into(), v.into(), ok.into()])?;
    }
    Ok(table)
}

/// Below this `|xi_n(1 - s)|` the ratio is flagged instead of trusted.
pub const NEAR_ZERO: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSample {
    pub s: Complex64,
    pub n: u64,
    pub xi_n_s: Complex64,
    pub xi_n_1ms: Complex64,
    pub abs_ratio: f64,
    pub phase: f64,
    pub near_zero: bool,
}

pub fn ratio_sample(s: Complex64, chi: &DirichletCharacter, n: u64) -> Result<RatioSample> {
    let xi_n_s = xi_n(s, chi, n)?;
    let xi_n_1ms = xi_n(1.0 - s, &chi.conjugate(), n)?;
    let r = xi_n_s / xi_n_1ms;
    Ok(RatioSample {
        s,
        n,
        xi_n_s,
        xi_n_1ms,
        abs_ratio: r.norm(),
        phase: r.arg(),
        near_zero: xi_n_1ms.norm() < NEAR_ZERO,
    })
}

/// Extrapolated `n -> inf` limit of the ratio at one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioLimit {
    pub s: Complex64,
    /// Richardson limit, exponent 2, from the two largest `n`.
    pub limit: Complex64,
    pub abs_limit: f64,
    /// `arg(limit / w_chi)`, zero when the limit is the root number.
    pub phase_error: f64,
    pub root_number: Complex64,
    /// Fitted exponent of `|ratio_n - limit|` over all but the largest `n`.
    pub rate: Option<f64>,
    /// `|xi(s, chi)|`; ratios with this below 1e-6 are not expected to converge to `w_chi`.
    pub abs_xi: f64,
    pub near_zero: bool,
    /// `|beta(s) / beta(1 - s)|` for odd characters.
    pub beta_ratio: Option<f64>,
}

impl RatioLimit {
    /// Distance of the limit from `w_chi` in modulus and phase.
    pub fn deviation(&self) -> (f64, f64) {
        ((self.abs_limit - 1.0).abs(), self.phase_error.abs())
    }
}

/// Smallest `Im s` of the region where the even-character limit is known.
pub const EVEN_IM_THRESHOLD: f64 = 8.0;

fn check_region(chi: &DirichletCharacter, s_grid: &[Complex64], widen: bool) -> Result<()> {
    for s in s_grid {
        if !(s.re > 0.0 && s.re < 1.0) {
            return Err(out_of_range("s", format!("need 0 < Re s < 1, got {s}")));
        }
        if chi.is_even() && !widen && s.im.abs() < EVEN_IM_THRESHOLD {
            return Err(out_of_range(
                "s",
                format!("even characters need |Im s| >= {EVEN_IM_THRESHOLD} unless the region is widened, got {s}"),
            ));
        }
    }
    Ok(())
}

/// Samples over the `(s, n)` grid and per-`s` limits. `n_list` must be
/// increasing with at least two entries.
pub fn ratio_experiment(
    chi: &DirichletCharacter,
    s_grid: &[Complex64],
    n_list: &[u64],
    widen_even_region: bool,
) -> Result<(Vec<RatioSample>, Vec<RatioLimit>)> {
    require_primitive(chi)?;
    check_region(chi, s_grid, widen_even_region)?;
    if n_list.len() < 2 || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(out_of_range("n_list", "need at least two increasing values"));
    }
    let w = root_number(chi)?;
    let cells: Vec<(Complex64, u64)> = s_grid.iter().flat_map(|&s| n_list.iter().map(move |&n| (s, n))).collect();
    let samples: Vec<RatioSample> = cells.par_iter().map(|&(s, n)| ratio_sample(s, chi, n)).collect::<Result<_>>()?;
    let per_s = n_list.len();
    let limits = samples
        .chunks(per_s)
        .map(|row| {
            let s = row[0].s;
            let ratio = |x: &RatioSample| x.xi_n_s / x.xi_n_1ms;
            let (a, b) = (&row[per_s - 2], &row[per_s - 1]);
            let (na, nb) = ((a.n * a.n) as f64, (b.n * b.n) as f64);
            let limit = (nb * ratio(b) - na * ratio(a)) / (nb - na);
            let diffs: Vec<(u64, f64)> = row[..per_s - 1].iter().map(|x| (x.n, (ratio(x) - limit).norm())).collect();
            let beta_ratio = if chi.is_odd() {
                Some(beta(s, chi)?.value.norm() / beta(1.0 - s, &chi.conjugate())?.value.norm())
            } else {
                None
            };
            Ok(RatioLimit {
                s,
                limit,
                abs_limit: limit.norm(),
                phase_error: (limit / w).arg(),
                root_number: w,
                rate: remainder_order(&diffs).ok(),
                abs_xi: completed_xi(s, chi)?.norm(),
                near_zero: row.iter().any(|x| x.near_zero),
                beta_ratio,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((samples, limits))
}

pub const RATIO_COLUMNS: [&str; 11] = [
    "q",
    "char_index",
    "parity",
    "s_re",
    "s_im",
    "n",
    "abs_ratio",
    "phase",
    "abs_xi_n_s",
    "abs_xi_n_1ms",
    "flag_near_zero",
];

pub fn ratio_scan(
    chi: &DirichletCharacter,
    s_grid: &[Complex64],
    n_list: &[u64],
    widen_even_region: bool,
) -> Result<ScanTable> {
    let (samples, _) = ratio_experiment(chi, s_grid, n_list, widen_even_region)?;
    let parity = if chi.is_odd() { "odd" } else { "even" };
    let mut table = ScanTable::new("grh-ratio", &RATIO_COLUMNS)
        .with_parameter("q", chi.modulus())
        .with_parameter("char_index", chi.index());
    for x in samples {
        table.push(vec![
            chi.modulus().into(),
            chi.index().into(),
            parity.into(),
            x.s.re.into(),
            x.s.im.into(),
            x.n.into(),
            x.abs_ratio.into(),
            x.phase.into(),
            x.xi_n_s.norm().into(),
            x.xi_n_1ms.norm().into(),
            x.near_zero.into(),
        ])?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::real_primitive_characters;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn chi(q: u64, parity: Parity) -> DirichletCharacter {
        real_primitive_characters(q, parity).remove(0)
    }

    #[test]
    fn real_at_real_points() {
        let odd = chi(3, Parity::Odd);
        let v = xi_n(c(0.5, 0.0), &odd, 10).unwrap();
        assert!(v.im.abs() < 1e-9 * v.norm());
        let even = chi(5, Parity::Even);
        assert!(xi_n(c(0.3, 9.0), &even, 20).unwrap().norm().is_finite());
    }

    #[test]
    fn beta_zeros_and_coefficient() {
        let odd = chi(3, Parity::Odd);
        assert!(beta(c(1.0, 0.0), &odd).unwrap().value.norm() < 1e-15);
        assert!(beta(c(3.0, 0.0), &odd).unwrap().value.norm() < 1e-15);
        let s = c(0.4, 0.0);
        let xi = 4.0 * completed_xi(s, &odd).unwrap();
        let d = |n: u64| (xi_n(s, &odd, n).unwrap() - xi) * (n * n) as f64;
        // Richardson on n^2 (xi_n - 4 xi) = beta + O(n^-2).
        let extrapolated = (4.0 * d(160) - d(80)) / 3.0;
        assert!((extrapolated - beta(s, &odd).unwrap().value).norm() < 1e-4);
        assert!(beta(s, &chi(5, Parity::Even)).is_err());
    }

    #[test]
    fn two_term_order() {
        let f = two_term_fit(c(0.5, 3.0), &chi(3, Parity::Odd), &[40, 80, 160, 320]).unwrap();
        assert!(f.fitted_exponent <= -3.5, "{f:?}");
    }

    #[test]
    fn ratio_tends_to_root_number() {
        let odd = chi(3, Parity::Odd);
        let (samples, limits) = ratio_experiment(&odd, &[c(0.5, 3.0), c(0.3, 0.0)], &[50, 100, 200], false).unwrap();
        assert!((samples[2].abs_ratio - 1.0).abs() < 1e-3);
        for l in &limits {
            let (dm, dp) = l.deviation();
            assert!(dm < 1e-4 && dp < 1e-4, "{l:?}");
        }
        let real = &samples[3..];
        assert!(real.iter().all(|x| x.phase.abs() < 1e-8 || (x.phase.abs() - PI).abs() < 1e-8));
        let swapped = ratio_sample(c(0.5, -3.0), &odd, 50).unwrap();
        assert!((swapped.abs_ratio * samples[0].abs_ratio - 1.0).abs() < 1e-10);
        assert!(ratio_experiment(&chi(5, Parity::Even), &[c(0.5, 3.0)], &[50, 100], false).is_err());
    }

    #[test]
    fn beta_decreasing() {
        let odd = chi(3, Parity::Odd);
        let grid: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
        for t in [0.0, 5.0] {
            assert!(beta_monotonicity(&odd, t, &grid).unwrap().strictly_decreasing);
        }
    }
}
