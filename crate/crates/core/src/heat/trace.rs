//! The character-twisted heat trace on the `qn`-cycle and its positivity.
//!
//! For real, even, primitive `chi` the trace has two expressions,
//! `Tr(t) = sum_{j=1}^{qn-1} chi(j) e^(-t lambda_j)` (spectral) and
//! `Tr(t) = (qn / tau) sum_{j=1}^{q-1} chi(j) K(t, jn)` (covering, Bessel).
//! Near `t = 0` the spectral side is dominated by cancellation while the
//! covering side keeps relative accuracy; at large `t` it is the other way
//! round. Each side therefore carries its own rounding floor and signs are
//! read from the sharper one.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::quadrature::tanh_sinh;
use crate::characters::{gauss_sum, DirichletCharacter};
use crate::discrete_spectra::discrete_l;
use crate::error::{out_of_range, CharacterRequirement, Result};
use crate::summation::NeumaierSum;
use crate::table::ScanTable;

use super::kernel::heat_kernel_bessel_auto;

/// Numeric small-`t` constant: the trace is positive for `t < 0.72 n^2`.
pub const SMALL_T_NUMERIC: f64 = 0.72;
/// Numeric large-`t` constant: the trace is positive for `t > 0.015 q^2 n^2`.
pub const LARGE_T_NUMERIC: f64 = 0.015;

/// Proven small-`t` constant `1 / (2 ln 2)`.
pub fn small_t_proven() -> f64 {
    1.0 / (2.0 * std::f64::consts::LN_2)
}

/// Proven large-`t` constant `ln 2 / (4 (16 - pi^2))`.
pub fn large_t_proven() -> f64 {
    std::f64::consts::LN_2 / (4.0 * (16.0 - PI * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityRegion {
    SmallT,
    LargeT,
    Gap,
}

impl PositivityRegion {
    pub fn classify(q: u64, n: u64, t: f64) -> Self {
        let n2 = (n * n) as f64;
        if t < SMALL_T_NUMERIC * n2 {
            PositivityRegion::SmallT
        } else if t > LARGE_T_NUMERIC * (q * q) as f64 * n2 {
            PositivityRegion::LargeT
        } else {
            PositivityRegion::Gap
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PositivityRegion::SmallT => "small_t",
            PositivityRegion::LargeT => "large_t",
            PositivityRegion::Gap => "gap",
        }
    }
}

/// Both expressions of the trace at one `t`, with rounding floors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistedTrace {
    pub t: f64,
    pub spectral: f64,
    pub kernel: f64,
    pub spectral_floor: f64,
    pub kernel_floor: f64,
}

impl TwistedTrace {
    /// The expression with the smaller floor, and that floor.
    pub fn best(&self) -> (f64, f64) {
        if self.kernel_floor < self.spectral_floor {
            (self.kernel, self.kernel_floor)
        } else {
            (self.spectral, self.spectral_floor)
        }
    }

    /// `1` or `-1` when the best value clears its floor, otherwise `0`.
    pub fn sign(&self) -> i32 {
        let (v, floor) = self.best();
        if v > floor {
            1
        } else if v < -floor {
            -1
        } else {
            0
        }
    }

    /// Disagreement between the two expressions.
    pub fn residual(&self) -> f64 {
        (self.spectral - self.kernel).abs()
    }
}

fn require_heat_character(chi: &DirichletCharacter) -> Result<()> {
    chi.require(CharacterRequirement::ModulusAboveOne)?;
    chi.require(CharacterRequirement::Real)?;
    chi.require(CharacterRequirement::Even)?;
    chi.require(CharacterRequirement::Primitive)
}

fn spectral_side(chi: &DirichletCharacter, n: u64, t: f64) -> (f64, f64) {
    let big = chi.modulus() * n;
    let mut acc = NeumaierSum::new();
    let mut mag = 0.0;
    for j in 1..big {
        let c = chi.real_value(j as i64).expect("real character");
        if c == 0 {
            continue;
        }
        let lam = 4.0 * (PI * j.min(big - j) as f64 / big as f64).sin().powi(2);
        let e = (-t * lam).exp();
        acc.add(c as f64 * e);
        mag += (2.0 + t * lam) * e;
    }
    (acc.value(), 4.0 * f64::EPSILON * mag)
}

fn kernel_side(chi: &DirichletCharacter, n: u64, t: f64, tau: f64) -> Result<(f64, f64)> {
    let q = chi.modulus();
    let big = q * n;
    let mut acc = NeumaierSum::new();
    let mut mag = 0.0;
    for j in 1..q {
        let c = chi.real_value(j as i64).expect("real character");
        if c == 0 {
            continue;
        }
        let k = heat_kernel_bessel_auto(big, t, (j * n) as i64)?.value;
        acc.add(c as f64 * k);
        mag += k.abs();
    }
    let scale = big as f64 / tau;
    Ok((scale * acc.value(), 64.0 * f64::EPSILON * scale * mag))
}

/// The trace `sum chi(j) e^(-t lambda_j)` on the `qn`-cycle, both ways.
pub fn twisted_heat_trace(chi: &DirichletCharacter, n: u64, t: f64) -> Result<TwistedTrace> {
    require_heat_character(chi)?;
    if n == 0 || !(t >= 0.0) {
        return Err(out_of_range("(n, t)", format!("need n >= 1, t >= 0, got ({n}, {t})")));
    }
    let tau = gauss_sum(chi).re;
    let (spectral, spectral_floor) = spectral_side(chi, n, t);
    let (kernel, kernel_floor) = kernel_side(chi, n, t, tau)?;
    Ok(TwistedTrace {
        t,
        spectral,
        kernel,
        spectral_floor,
        kernel_floor,
    })
}

pub const POSITIVITY_COLUMNS: [&str; 7] = ["q", "char_index", "n", "t", "trace_value", "sign", "region"];

/// Trace, sign and region for every `t` in the grid. Rows keep grid order.
///
/// A sign of 0 means the value is below the rounding floor of both
/// expressions. Points in the gap region are reported, never asserted.
pub fn heat_positivity_scan(chi: &DirichletCharacter, n: u64, t_grid: &[f64]) -> Result<ScanTable> {
    require_heat_character(chi)?;
    let traces: Vec<TwistedTrace> = t_grid
        .par_iter()
        .map(|&t| twisted_heat_trace(chi, n, t))
        .collect::<Result<_>>()?;
    let q = chi.modulus();
    let mut table = ScanTable::new("heat-scan", &POSITIVITY_COLUMNS)
        .with_parameter("q", q)
        .with_parameter("char_index", chi.index())
        .with_parameter("n", n);
    for tr in traces {
        table.push(vec![
            q.into(),
            chi.index().into(),
            n.into(),
            tr.t.into(),
            tr.best().0.into(),
            tr.sign().into(),
            PositivityRegion::classify(q, n, tr.t).name().into(),
        ])?;
    }
    Ok(table)
}

/// `count` evenly spaced points on `[lo, hi]`, endpoints included.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect(),
    }
}

/// Mellin transform at `s = 1` of the covering expression, against `L_n(1, chi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MellinCheck {
    pub quadrature: f64,
    pub expected: f64,
    pub relative_error: f64,
}

/// `int_0^inf Tr(t) dt` with `Tr` from Bessel kernels equals `L_n(1, chi)`.
///
/// The integrand is below `qn e^(-40)` beyond `t = 40 / lambda_1`, where the
/// range is cut.
pub fn mellin_check(chi: &DirichletCharacter, n: u64) -> Result<MellinCheck> {
    require_heat_character(chi)?;
    let tau = gauss_sum(chi).re;
    let big = chi.modulus() * n;
    let lambda1 = 4.0 * (PI / big as f64).sin().powi(2);
    let t_max = 40.0 / lambda1;
    let quadrature = tanh_sinh(
        |t| kernel_side(chi, n, t, tau).map(|k| k.0).unwrap_or(f64::NAN),
        0.0,
        t_max,
        1e-10,
    );
    let expected = discrete_l(num_complex::Complex64::new(1.0, 0.0), chi, n)?.re;
    Ok(MellinCheck {
        quadrature,
        expected,
        relative_error: (quadrature - expected).abs() / expected.abs(),
    })
}
