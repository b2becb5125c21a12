//! Library values against independent references: explicit matrices from
//! `oracle`, exact Bernoulli data, quadrature, and high-precision constants.

use discrete_l::analytic::{
    completed_xi, dirichlet_l, functional_equation_check, gamma, hurwitz_zeta, riemann_zeta, zeta_z, zeta_z_integral,
};
use discrete_l::characters::{enumerate_characters, real_primitive_characters, Parity};
use discrete_l::discrete_spectra::{discrete_l, zeta_n, zeta_n_standard};
use discrete_l::exact_series::{bernoulli_polynomial, forest_expansion, ratio, rational_to_f64};
use discrete_l::heat::{heat_kernel_bessel_auto, heat_kernel_spectral, mellin_check, path_counts, twisted_heat_trace};
use discrete_l::oracle;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * b.norm().max(1e-300)
}

#[test]
fn twisted_zeta_matches_matrix_eigenvalues() {
    for n in 1..=12u64 {
        for theta in [0.1, 0.25, 1.0 / 3.0, 0.5, 0.9] {
            for s in [-1.3, 0.5, 1.0, 2.5] {
                let lib = zeta_n(c(s, 0.0), theta, n).unwrap();
                let brute = oracle::zeta_n(s, theta, n as usize);
                assert!(close(lib, c(brute, 0.0), 1e-10), "n={n} theta={theta} s={s}: {lib} vs {brute}");
            }
        }
    }
}

#[test]
fn untwisted_zeta_matches_matrix_eigenvalues() {
    for n in 2..=12usize {
        let e = oracle::bundle_eigenvalues(n, 0.0);
        let brute: f64 = e[1..].iter().map(|l| l.powf(-1.5)).sum();
        let lib = zeta_n_standard(c(1.5, 0.0), n as u64).unwrap();
        assert!(close(lib, c(brute, 0.0), 1e-10), "n={n}");
    }
}

#[test]
fn discrete_l_matches_rayleigh_quotients() {
    for q in 3..=12 {
        for chi in enumerate_characters(q).iter().filter(|c| !c.is_principal()) {
            for n in 1..=3 {
                for s in [0.3, 1.0, 2.0] {
                    let lib = discrete_l(c(s, 0.0), chi, n).unwrap();
                    let brute = oracle::discrete_l(s, chi, n as usize);
                    assert!((lib - brute).norm() < 1e-10 * brute.norm().max(1.0), "q={q} idx={} n={n} s={s}", chi.index());
                }
            }
        }
    }
}

#[test]
fn heat_kernels_match_matrix_exponential() {
    for big in 3..=12u64 {
        for t in [0.1, 1.0, 5.0, 20.0] {
            let brute = oracle::heat_kernel(big as usize, t);
            for x in 0..big {
                let s = heat_kernel_spectral(big, t, x as i64).unwrap();
                let b = heat_kernel_bessel_auto(big, t, x as i64).unwrap().value;
                assert!((s - brute[x as usize]).abs() < 1e-12, "N={big} t={t} x={x}");
                assert!((b - brute[x as usize]).abs() < 1e-12, "N={big} t={t} x={x}");
            }
        }
    }
}

#[test]
fn twisted_trace_matches_matrix_exponential() {
    for q in [5, 8, 12, 13] {
        for chi in real_primitive_characters(q, Parity::Even) {
            for n in 1..=3 {
                for t in [0.05, 0.7, 4.0, 30.0] {
                    let tr = twisted_heat_trace(&chi, n, t).unwrap();
                    let brute = oracle::twisted_trace(&chi, n as usize, t);
                    assert!((tr.best().0 - brute).abs() < 1e-10, "q={q} n={n} t={t}");
                }
            }
        }
    }
}

#[test]
fn forest_expansion_matches_determinant() {
    for n in 1..=10usize {
        for (th, thf) in [(ratio(0, 1), 0.0), (ratio(1, 4), 0.25), (ratio(1, 3), 1.0 / 3.0), (ratio(1, 2), 0.5)] {
            let p = forest_expansion(n, &th);
            for x in [-0.7, 0.3, 1.9] {
                let det = oracle::shifted_determinant(n, thf, x);
                assert!((p.eval_f64(x) - det).abs() < 1e-9 * det.abs().max(1.0), "n={n} theta={thf} x={x}");
            }
        }
    }
}

#[test]
fn path_counts_match_walk_enumeration() {
    for big in 3..=12u64 {
        let walks = oracle::lazy_walk_counts(big as usize, 40).unwrap();
        for (steps, row) in walks.iter().enumerate() {
            let counts = path_counts(big, steps as u64).unwrap();
            for (x, w) in row.iter().enumerate() {
                assert_eq!(counts.counts[x].to_string(), w.to_string(), "N={big} steps={steps} x={x}");
            }
        }
    }
}

/// `sum_{k<K} (k+a)^-s` plus the first Euler-Maclaurin corrections of the tail.
fn hurwitz_partial(s: f64, a: f64) -> f64 {
    let k = 20_000.0;
    let head: f64 = (0..20_000).map(|j| (j as f64 + a).powf(-s)).sum();
    let x: f64 = k + a;
    head + x.powf(1.0 - s) / (s - 1.0) + x.powf(-s) / 2.0 + s * x.powf(-s - 1.0) / 12.0
}

#[test]
fn hurwitz_matches_partial_sums() {
    for s in [1.6, 2.0, 2.5, 3.0, 4.5] {
        for a in [0.1, 0.25, 0.5, 0.8] {
            let lib = hurwitz_zeta(c(s, 0.0), a).unwrap().re;
            let brute = hurwitz_partial(s, a);
            assert!((lib - brute).abs() < 1e-10 * brute, "s={s} a={a}");
        }
    }
}

#[test]
fn hurwitz_at_negative_integers_is_bernoulli() {
    for n in 0..=8usize {
        let b = bernoulli_polynomial(n + 1);
        for (th, thf) in [(ratio(1, 4), 0.25), (ratio(1, 3), 1.0 / 3.0), (ratio(1, 2), 0.5)] {
            let exact = -rational_to_f64(&b.eval(&th)) / (n + 1) as f64;
            let lib = hurwitz_zeta(c(-(n as f64), 0.0), thf).unwrap().re;
            assert!((lib - exact).abs() < 1e-9, "n={n} theta={thf}");
        }
    }
}

#[test]
fn path_zeta_matches_quadrature() {
    for s in [-1.0, -0.3, 0.2] {
        let closed = zeta_z(c(s, 0.0)).unwrap().re;
        assert!((closed - zeta_z_integral(s).unwrap()).abs() < 1e-8, "s={s}");
    }
    assert!((zeta_z(c(-1.0, 0.0)).unwrap().re - 2.0).abs() < 1e-13);
}

#[test]
fn functional_equation_in_the_strip() {
    for q in 3..=12 {
        for parity in [Parity::Even, Parity::Odd] {
            for chi in real_primitive_characters(q, parity) {
                for i in 0..5 {
                    for j in 0..5 {
                        let s = c(0.1 + 0.2 * i as f64, -6.0 + 3.0 * j as f64);
                        let f = functional_equation_check(s, &chi).unwrap();
                        assert!(f.abs_residual < 1e-8, "q={q} s={s}: {f:?}");
                    }
                }
            }
        }
    }
}

/// Reference values computed with mpmath at 30 digits.
#[test]
fn high_precision_constants() {
    let chi3 = real_primitive_characters(3, Parity::Odd).remove(0);
    let chi4 = real_primitive_characters(4, Parity::Odd).remove(0);
    let chi5 = real_primitive_characters(5, Parity::Even).remove(0);
    let cases = [
        (dirichlet_l(c(0.5, 3.0), &chi3).unwrap(), c(1.126_095_539_097_696, 0.708_091_334_468_107_7)),
        (dirichlet_l(c(-1.5, 0.0), &chi3).unwrap(), c(-0.143_639_830_208_142_73, 0.0)),
        (dirichlet_l(c(0.5, 0.0), &chi5).unwrap(), c(0.231_750_947_504_015_76, 0.0)),
        (dirichlet_l(c(-2.5, 1.0), &chi5).unwrap(), c(-0.344_098_832_259_454_2, -2.509_543_128_437_553)),
        (dirichlet_l(c(0.25, 10.0), &chi4).unwrap(), c(-0.538_868_325_684_557_7, -0.603_122_279_430_936_5)),
        (hurwitz_zeta(c(0.3, 2.0), 0.2).unwrap(), c(-1.445_945_235_525_240_1, -0.592_737_912_289_618_3)),
        (hurwitz_zeta(c(-2.7, 0.0), 0.35).unwrap(), c(-0.008_094_043_034_854_300_6, 0.0)),
        (hurwitz_zeta(c(3.5, 0.0), 1.0 / 3.0).unwrap(), c(47.210_621_289_283_96, 0.0)),
        (gamma(c(0.3, 4.0)).unwrap(), c(0.001_164_643_684_811_490_6, 0.003_352_559_888_035_202_4)),
        (gamma(c(-2.5, 0.0)).unwrap(), c(-0.945_308_720_482_941_9, 0.0)),
        (riemann_zeta(c(0.5, 14.0)).unwrap(), c(0.022_241_142_609_993_59, -0.103_258_123_266_450_06)),
    ];
    for (i, (lib, reference)) in cases.iter().enumerate() {
        assert!(close(*lib, *reference, 1e-11), "case {i}: {lib} vs {reference}");
    }
    assert!(completed_xi(c(0.5, 0.0), &chi3).unwrap().im.abs() < 1e-14);
}

#[test]
fn mellin_transform_of_the_trace() {
    for (q, n) in [(5, 1), (5, 2), (8, 1), (13, 1)] {
        let chi = real_primitive_characters(q, Parity::Even).remove(0);
        let m = mellin_check(&chi, n).unwrap();
        assert!(m.relative_error < 1e-6, "q={q} n={n}: {m:?}");
    }
}
