//! Lazy random-walk path counts on `Z/NZ`.
//!
//! `c_n(x)` counts length-`n` walks from 0 to `x` whose steps are `-1, 0, +1`,
//! so `c_{n+1} = S c_n` with `(S f)(x) = f(x-1) + f(x) + f(x+1)` and
//! `S = 3 - Delta`. Hence `K(t) = e^(-3t) sum_n t^n/n! c_n`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{out_of_range, Result};
use crate::summation::NeumaierSum;

use super::kernel::heat_kernel_spectral;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountVector {
    pub vertices: u64,
    pub steps: u64,
    pub counts: Vec<BigUint>,
}

impl PathCountVector {
    pub fn delta(vertices: u64) -> Self {
        let mut counts = vec![BigUint::zero(); vertices as usize];
        counts[0] = BigUint::one();
        Self { vertices, steps: 0, counts }
    }

    /// One application of `S`.
    pub fn step(&self) -> Self {
        let n = self.counts.len();
        let counts = (0..n)
            .map(|x| &self.counts[(x + n - 1) % n] + &self.counts[x] + &self.counts[(x + 1) % n])
            .collect();
        Self {
            vertices: self.vertices,
            steps: self.steps + 1,
            counts,
        }
    }

    /// `c_n(y) <= c_n(x)` whenever `h(x) <= h(y)`, `h(x) = min(x, N - x)`.
    pub fn first_monotonicity_violation(&self) -> Option<(u64, u64)> {
        let n = self.vertices;
        let h = |x: u64| x.min(n - x);
        for x in 0..n {
            for y in 0..n {
                if h(x) <= h(y) && self.counts[y as usize] > self.counts[x as usize] {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// `c_steps` for the `N`-cycle, exactly.
pub fn path_counts(vertices: u64, steps: u64) -> Result<PathCountVector> {
    if vertices < 3 {
        return Err(out_of_range("N", "need N >= 3"));
    }
    let mut c = PathCountVector::delta(vertices);
    for _ in 0..steps {
        c = c.step();
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub vertices: u64,
    pub max_steps: u64,
    pub monotone: bool,
    /// `(steps, x, y)` with `h(x) <= h(y)` but `c(y) > c(x)`.
    pub first_violation: Option<(u64, u64, u64)>,
    /// Largest `|e^(-3t) sum_n t^n/n! c_n(x) - K(t, x)|` over the sample times.
    pub kernel_residual: f64,
}

/// Sample times for the exponential-series cross-check.
const KERNEL_SAMPLE_TIMES: [f64; 3] = [0.1, 0.5, 1.5];

/// Checks monotonicity in `h` for every `n <= max_steps`, and that the path
/// counts resum to the spectral heat kernel.
pub fn monotonicity_check(vertices: u64, max_steps: u64) -> Result<MonotonicityReport> {
    let mut c = path_counts(vertices, 0)?;
    let mut violation = None;
    for _ in 0..=max_steps {
        if violation.is_none() {
            violation = c.first_monotonicity_violation().map(|(x, y)| (c.steps, x, y));
        }
        if c.steps == max_steps {
            break;
        }
        c = c.step();
    }
    let mut residual: f64 = 0.0;
    for &t in &KERNEL_SAMPLE_TIMES {
        // (3t)^n/n! decays past n ~ 3t; 80 terms leave < 1e-40 at t = 1.5.
        let mut sums = vec![NeumaierSum::new(); vertices as usize];
        let mut c = PathCountVector::delta(vertices);
        let mut w = (-3.0 * t).exp();
        for n in 0..80u64 {
            for (x, s) in sums.iter_mut().enumerate() {
                s.add(w * c.counts[x].to_f64().unwrap_or(f64::INFINITY));
            }
            c = c.step();
            w *= t / (n + 1) as f64;
        }
        for (x, s) in sums.iter().enumerate() {
            let k = heat_kernel_spectral(vertices, t, x as i64)?;
            residual = residual.max((s.value() - k).abs());
        }
    }
    Ok(MonotonicityReport {
        vertices,
        max_steps,
        monotone: violation.is_none(),
        first_violation: violation,
        kernel_residual: residual,
    })
}
