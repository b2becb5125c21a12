use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::summation::NeumaierSum;

use super::bessel::{bessel_i_scaled, bessel_ratio_bound};

/// Tail tolerance for the covering sum.
pub const COVERING_TAIL_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMethod {
    Spectral,
    Bessel,
}

/// One heat-kernel value on `Z/NZ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatKernelValue {
    pub vertices: u64,
    pub t: f64,
    pub x: i64,
    pub value: f64,
    pub method: KernelMethod,
    /// Covering sum runs over `j = -J..=J`; zero for the spectral method.
    pub truncation: u64,
}

fn check(vertices: u64, t: f64) -> Result<()> {
    if vertices == 0 {
        return Err(out_of_range("N", "cycle must have at least one vertex"));
    }
    if !(t >= 0.0) {
        return Err(out_of_range("t", format!("need t >= 0, got {t}")));
    }
    Ok(())
}

/// `K(t, x) = (1/N) sum_j e^(-4t sin^2(pi j/N)) e^(2 pi i x j/N)`.
///
/// Only the real part is accumulated; the imaginary part cancels exactly
/// between `j` and `N - j`, which a debug assertion confirms.
pub fn heat_kernel_spectral(vertices: u64, t: f64, x: i64) -> Result<f64> {
    check(vertices, t)?;
    let n = vertices;
    let xr = x.rem_euclid(n as i64) as u64;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for j in 0..n {
        let lam = 4.0 * (PI * j.min(n - j) as f64 / n as f64).sin().powi(2);
        let w = (-t * lam).exp();
        let ang = 2.0 * PI * ((xr * j) % n) as f64 / n as f64;
        re.add(w * ang.cos());
        im.add(w * ang.sin());
    }
    debug_assert!(im.value().abs() < 1e-12, "imaginary part {}", im.value());
    Ok(re.value() / n as f64)
}

/// Smallest omitted index and the geometric tail bound for truncation `J`.
fn covering_tail(vertices: u64, t: f64, xr: u64, j_max: u64) -> f64 {
    let y = 2.0 * t;
    let lo = (j_max + 1) * vertices - xr;
    let hi = xr + (j_max + 1) * vertices;
    [lo, hi]
        .iter()
        .map(|&k| {
            let rho = bessel_ratio_bound(k, y);
            bessel_i_scaled(k, y) / (1.0 - rho)
        })
        .sum()
}

/// `K(t, x) = e^(-2t) sum_{|j| <= J} I_{|x + jN|}(2t)`, the lift to the path `Z`.
///
/// Fails when the ratio-bound estimate of the omitted tail exceeds
/// [`COVERING_TAIL_TOLERANCE`].
pub fn heat_kernel_bessel(vertices: u64, t: f64, x: i64, truncation: u64) -> Result<HeatKernelValue> {
    check(vertices, t)?;
    if truncation == 0 {
        return Err(out_of_range("J", "truncation must be at least 1"));
    }
    let n = vertices as i64;
    let xr = x.rem_euclid(n);
    let tail = covering_tail(vertices, t, xr as u64, truncation);
    if tail > COVERING_TAIL_TOLERANCE {
        return Err(Error::TruncationInsufficient {
            tail,
            tolerance: COVERING_TAIL_TOLERANCE,
        });
    }
    Ok(HeatKernelValue {
        vertices,
        t,
        x,
        value: covering_sum(vertices, t, xr, truncation),
        method: KernelMethod::Bessel,
        truncation,
    })
}

fn covering_sum(vertices: u64, t: f64, xr: i64, truncation: u64) -> f64 {
    let n = vertices as i64;
    let y = 2.0 * t;
    let mut acc = NeumaierSum::new();
    // Largest terms last would be better for rounding; compensation makes order moot.
    for j in -(truncation as i64)..=truncation as i64 {
        acc.add(bessel_i_scaled((xr + j * n).unsigned_abs(), y));
    }
    acc.value()
}

/// Smallest `J` whose covering tail is below tolerance.
pub fn covering_truncation(vertices: u64, t: f64, x: i64) -> u64 {
    let xr = x.rem_euclid(vertices as i64) as u64;
    (1..)
        .find(|&j| covering_tail(vertices, t, xr, j) <= COVERING_TAIL_TOLERANCE)
        .expect("Bessel tails decay")
}

/// Covering form with `J` chosen by [`covering_truncation`].
pub fn heat_kernel_bessel_auto(vertices: u64, t: f64, x: i64) -> Result<HeatKernelValue> {
    check(vertices, t)?;
    heat_kernel_bessel(vertices, t, x, covering_truncation(vertices, t, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_condition_and_mass() {
        for n in [3u64, 5, 8] {
            for x in 0..n as i64 {
                let v = heat_kernel_spectral(n, 0.0, x).unwrap();
                assert!((v - if x == 0 { 1.0 } else { 0.0 }).abs() < 1e-15);
                let b = heat_kernel_bessel_auto(n, 0.0, x).unwrap().value;
                assert_eq!(b, if x == 0 { 1.0 } else { 0.0 });
            }
            for t in [0.1, 1.0, 5.0] {
                let mass: f64 = (0..n as i64).map(|x| heat_kernel_spectral(n, t, x).unwrap()).sum();
                assert!((mass - 1.0).abs() < 1e-14);
                assert!((heat_kernel_spectral(n, t, 1).unwrap() - heat_kernel_spectral(n, t, -1).unwrap()).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn duality() {
        for (n, t, x) in [(5u64, 1.0, 0i64), (3, 0.5, 1), (12, 5.0, 7), (8, 0.1, 3)] {
            let s = heat_kernel_spectral(n, t, x).unwrap();
            let b = heat_kernel_bessel_auto(n, t, x).unwrap();
            assert!((s - b.value).abs() < 1e-14, "N = {n}, t = {t}, x = {x}");
        }
    }

    #[test]
    fn insufficient_truncation_is_reported() {
        assert!(matches!(
            heat_kernel_bessel(3, 50.0, 0, 1),
            Err(Error::TruncationInsufficient { .. })
        ));
    }
}
