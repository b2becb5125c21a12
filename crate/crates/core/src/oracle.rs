//! Brute-force references built from explicit matrices.
//!
//! Nothing here uses the closed-form eigenvalues `4 sin^2(pi (j + theta)/n)`,
//! Bessel functions or Gauss sums; the operators are assembled entry by entry
//! and handed to dense linear algebra. The results are slow and only
//! moderately accurate, which is what an independent check needs.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::characters::{DirichletCharacter, Parity};
use crate::error::{out_of_range, Result};
use crate::summation::{sum_complex, sum_f64};

/// `(Delta f)(x) = 2 f(x) - e^(2 pi i theta/n) f(x+1) - e^(-2 pi i theta/n) f(x-1)` on `Z/nZ`.
pub fn bundle_laplacian(n: usize, theta: f64) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    let w = Complex64::from_polar(1.0, 2.0 * PI * theta / n as f64);
    for x in 0..n {
        m[(x, x)] += 2.0;
        m[(x, (x + 1) % n)] -= w;
        m[(x, (x + n - 1) % n)] -= w.conj();
    }
    m
}

/// Eigenvalues of the bundle Laplacian, ascending.
pub fn bundle_eigenvalues(n: usize, theta: f64) -> Vec<f64> {
    let mut e: Vec<f64> = bundle_laplacian(n, theta).symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

/// `sum lambda^-s` over the matrix eigenvalues, for real `s`.
pub fn zeta_n(s: f64, theta: f64, n: usize) -> f64 {
    sum_f64(bundle_eigenvalues(n, theta).into_iter().map(|l| l.powf(-s)))
}

/// Plain cycle Laplacian on `Z/NZ` as a real matrix.
pub fn cycle_laplacian(big: usize) -> DMatrix<f64> {
    bundle_laplacian(big, 0.0).map(|z| z.re)
}

/// Rayleigh quotients of the Laplacian and of the symmetric difference
/// `(S - S^-1) / 2i` on the Fourier mode `e^(2 pi i j x / N)`.
fn mode_quotients(big: usize, j: usize) -> (f64, f64) {
    let lap = bundle_laplacian(big, 0.0);
    let mut diff = DMatrix::<Complex64>::zeros(big, big);
    for x in 0..big {
        diff[(x, (x + 1) % big)] += Complex64::new(0.0, -0.5);
        diff[(x, (x + big - 1) % big)] += Complex64::new(0.0, 0.5);
    }
    let v = DVector::from_fn(big, |x, _| Complex64::from_polar(1.0, 2.0 * PI * (j * x) as f64 / big as f64));
    let norm = v.dotc(&v);
    ((v.dotc(&(&lap * &v)) / norm).re, (v.dotc(&(&diff * &v)) / norm).re)
}

/// `L_n(s, chi)` from Rayleigh quotients on the `qn`-cycle. The odd weight
/// `cot(pi j/N)` enters as `2 mu_j / lambda_j`.
pub fn discrete_l(s: f64, chi: &DirichletCharacter, n: usize) -> Complex64 {
    let big = chi.modulus() as usize * n;
    let terms = (1..big).filter_map(|j| {
        let c = chi.value(j as i64);
        if c.norm_sqr() == 0.0 {
            return None;
        }
        let (lam, mu) = mode_quotients(big, j);
        let w = match chi.parity() {
            Parity::Even => 1.0,
            Parity::Odd => 2.0 * mu / lam,
        };
        Some(c * w * lam.powf(-s))
    });
    sum_complex(terms)
}

/// Column `x = 0` of `exp(-t Delta)` on `Z/NZ`.
pub fn heat_kernel(big: usize, t: f64) -> Vec<f64> {
    let e = (cycle_laplacian(big) * -t).exp();
    e.column(0).iter().copied().collect()
}

/// `sum_j chi(j) e^(-t lambda_j)` as `sum_x K(t, x) sum_j chi(j) e^(2 pi i j x / N)`,
/// with the kernel from the matrix exponential and the transform summed directly.
pub fn twisted_trace(chi: &DirichletCharacter, n: usize, t: f64) -> f64 {
    let big = chi.modulus() as usize * n;
    let k = heat_kernel(big, t);
    let terms = (0..big).map(|x| {
        let hat = sum_complex(
            (1..big).map(|j| chi.value(j as i64) * Complex64::from_polar(1.0, 2.0 * PI * (j * x % big) as f64 / big as f64)),
        );
        k[x] * hat
    });
    sum_complex(terms).re
}

/// `det(x + Delta_{n,theta})` by LU decomposition.
pub fn shifted_determinant(n: usize, theta: f64, x: f64) -> f64 {
    let m = bundle_laplacian(n, theta) + DMatrix::<Complex64>::identity(n, n) * Complex64::new(x, 0.0);
    m.determinant().re
}

/// Lazy-walk path counts `c_k(h)`: closed walks of `k` steps from 0 to `h`
/// with steps in `{-1, 0, 1}` on `Z/NZ`, by repeated matrix-vector products.
pub fn lazy_walk_counts(big: usize, steps: usize) -> Result<Vec<Vec<u128>>> {
    if big < 3 {
        return Err(out_of_range("N", "need N >= 3"));
    }
    let mut v = vec![0u128; big];
    v[0] = 1;
    let mut out = vec![v.clone()];
    for _ in 0..steps {
        v = (0..big).map(|x| v[x] + v[(x + 1) % big] + v[(x + big - 1) % big]).collect();
        out.push(v.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::real_primitive_characters;

    #[test]
    fn eigenvalues_of_small_cycles() {
        let e = bundle_eigenvalues(4, 0.0);
        for (a, b) in e.iter().zip([0.0, 2.0, 2.0, 4.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((zeta_n(1.0, 0.5, 2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn odd_l_mod_three() {
        let chi = &real_primitive_characters(3, Parity::Odd)[0];
        let v = discrete_l(1.0, chi, 1);
        assert!((v.re - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn kernel_is_a_distribution() {
        let k = heat_kernel(7, 0.8);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((k[1] - k[6]).abs() < 1e-14);
    }

    #[test]
    fn walk_counts() {
        let c = lazy_walk_counts(5, 2).unwrap();
        assert_eq!(c[2], vec![3, 2, 1, 1, 2]);
    }
}
