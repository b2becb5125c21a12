//! Property tests for the structural invariants of every module.

use discrete_l::analytic::{gamma, hurwitz_zeta};
use discrete_l::asymptotics::{expand_l_odd, expand_zeta_n, zeta_recursion_table};
use discrete_l::characters::{
    character, enumerate_characters, gauss_sum, real_primitive_characters, DirichletCharacter, Parity,
};
use discrete_l::discrete_spectra::{discrete_l_weighted, zeta_n, zeta_n_dtheta, LWeight};
use discrete_l::exact_series::{a_coefficients, b_coefficients, coefficient_relation_residual};
use discrete_l::grh_probe::{beta, ratio_sample};
use discrete_l::heat::{heat_kernel_bessel_auto, heat_kernel_spectral, twisted_heat_trace};
use discrete_l::table::{Cell, ScanTable};
use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

fn euler_phi(q: u64) -> usize {
    (1..=q).filter(|j| j.gcd(&q) == 1).count()
}

fn chi_strategy() -> impl Strategy<Value = DirichletCharacter> {
    (2u64..=60).prop_flat_map(|q| (Just(q), 0..euler_phi(q))).prop_map(|(q, i)| character(q, i).unwrap())
}

#[test]
fn character_tables() {
    for q in 1..=200u64 {
        let chars = enumerate_characters(q);
        assert_eq!(chars.len(), euler_phi(q), "q = {q}");
        for chi in &chars {
            if !chi.is_principal() {
                let total: Complex64 = (1..=q).map(|j| chi.value(j as i64)).sum();
                assert!(total.norm() < 1e-12, "q = {q}, index {}", chi.index());
            }
            if chi.is_primitive() && q > 1 {
                assert!((gauss_sum(chi).norm() - (q as f64).sqrt()).abs() < 1e-10, "q = {q}");
            }
        }
    }
}

#[test]
fn coefficient_relation_is_exact() {
    for k in 0..=12 {
        assert!(coefficient_relation_residual(k).is_zero(), "k = {k}");
    }
    let a = a_coefficients(12);
    let b = b_coefficients(12);
    for k in 0..=12 {
        assert_eq!(a[k].degree(), Some(k));
        assert_eq!(b[k].degree(), Some(k));
    }
}

#[test]
fn parity_mismatched_sums_vanish() {
    for q in 3..=12 {
        for chi in enumerate_characters(q).iter().filter(|c| !c.is_principal()) {
            let wrong = match chi.parity() {
                Parity::Even => LWeight::Cotangent,
                Parity::Odd => LWeight::Plain,
            };
            for n in 1..=4 {
                for s in [1.0, 2.0] {
                    let v = discrete_l_weighted(Complex64::new(s, 0.0), chi, n, wrong).unwrap();
                    assert!(v.norm() < 1e-12, "q={q} idx={} n={n} s={s}: {v}", chi.index());
                }
            }
        }
    }
}

#[test]
fn recursion_table_is_rectangular() {
    let t = zeta_recursion_table(4).unwrap();
    assert_eq!(t.rows.len(), 4);
    assert!(t.rows.iter().all(|r| r.len() == t.columns.len()));
    let mut bad = ScanTable::new("x", &["a", "b"]);
    assert!(bad.push(vec![Cell::from(1i64)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characters_are_multiplicative(chi in chi_strategy(), a in 0i64..200, b in 0i64..200) {
        let lhs = chi.value(a * b);
        let rhs = chi.value(a) * chi.value(b);
        prop_assert!((lhs - rhs).norm() < 1e-12);
        if a.gcd(&(chi.modulus() as i64)) == 1 {
            prop_assert!((chi.value(a).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugate_character_conjugates_values(chi in chi_strategy(), a in 0i64..100) {
        prop_assert!((chi.conjugate().value(a) - chi.value(a).conj()).norm() < 1e-12);
    }

    #[test]
    fn zeta_n_reflects_in_theta(n in 1u64..30, theta in 0.01f64..0.99, s in -2.0f64..3.0) {
        let z = Complex64::new(s, 0.0);
        let a = zeta_n(z, theta, n).unwrap();
        let b = zeta_n(z, 1.0 - theta, n).unwrap();
        prop_assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
        let da = zeta_n_dtheta(z, theta, n).unwrap();
        let db = zeta_n_dtheta(z, 1.0 - theta, n).unwrap();
        prop_assert!((da + db).norm() < 1e-10 * da.norm().max(1.0));
    }

    #[test]
    fn expansion_terminates_at_integers(p in 1u32..=4, theta in 0.05f64..0.95, n in 1u64..=8) {
        let s = Complex64::new(p as f64, 0.0);
        let e = expand_zeta_n(s, theta, n, p as usize).unwrap();
        let z = zeta_n(s, theta, n).unwrap();
        prop_assert!((e.value - z).norm() < 1e-9 * z.norm());
    }

    #[test]
    fn truncations_telescope(sr in 0.05f64..0.95, si in -5.0f64..5.0, n in 1u64..40) {
        let chi = real_primitive_characters(3, Parity::Odd).remove(0);
        let s = Complex64::new(sr, si);
        let e0 = expand_l_odd(s, &chi, n, 0).unwrap();
        let e1 = expand_l_odd(s, &chi, n, 1).unwrap();
        prop_assert!((e1.value - e0.value - e1.terms[1]).norm() < 1e-12 * e1.value.norm());
    }

    #[test]
    fn heat_kernel_duality(big in 3u64..16, t in 0.01f64..30.0, x in 0i64..16) {
        let s = heat_kernel_spectral(big, t, x).unwrap();
        let b = heat_kernel_bessel_auto(big, t, x).unwrap().value;
        prop_assert!((s - b).abs() < 1e-10);
        prop_assert!(b >= 0.0);
        let mass: f64 = (0..big as i64).map(|y| heat_kernel_spectral(big, t, y).unwrap()).sum();
        prop_assert!((mass - 1.0).abs() < 1e-10);
        prop_assert!((s - heat_kernel_spectral(big, t, -x).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn trace_expressions_agree(idx in 0usize..3, n in 1u64..=4, t in 0.0f64..60.0) {
        let q = [5u64, 8, 12][idx];
        let chi = real_primitive_characters(q, Parity::Even).remove(0);
        let tr = twisted_heat_trace(&chi, n, t).unwrap();
        prop_assert!(tr.residual() < 1e-9);
    }

    #[test]
    fn beta_is_symmetric_on_the_critical_line(t in -20.0f64..20.0) {
        let chi = real_primitive_characters(3, Parity::Odd).remove(0);
        let s = Complex64::new(0.5, t);
        let a = beta(s, &chi).unwrap().value;
        let b = beta(1.0 - s, &chi.conjugate()).unwrap().value;
        prop_assert!((a.norm() - b.norm()).abs() < 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn swapping_s_inverts_the_ratio(sr in 0.1f64..0.9, si in -6.0f64..6.0, n in 5u64..60) {
        let chi = real_primitive_characters(3, Parity::Odd).remove(0);
        let s = Complex64::new(sr, si);
        let a = ratio_sample(s, &chi, n).unwrap();
        let b = ratio_sample(1.0 - s, &chi, n).unwrap();
        prop_assert!((a.abs_ratio * b.abs_ratio - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hurwitz_duplication(sr in -6.0f64..6.0, si in -10.0f64..10.0, a in 0.05f64..1.0) {
        // zeta(s, a/2) + zeta(s, (a+1)/2) = 2^s zeta(s, a), valid within the supported range
        let s = Complex64::new(sr, si);
        prop_assume!((s - 1.0).norm() > 1e-3);
        let lhs = hurwitz_zeta(s, a / 2.0).unwrap() + hurwitz_zeta(s, (a + 1.0) / 2.0).unwrap();
        let rhs = (s * 2f64.ln()).exp() * hurwitz_zeta(s, a).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(lhs.norm()).max(1.0));
    }

    #[test]
    fn gamma_recurrence(sr in -8.0f64..8.0, si in 0.1f64..10.0) {
        let s = Complex64::new(sr, si);
        let lhs = gamma(s + 1.0).unwrap();
        let rhs = s * gamma(s).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }
}

#[test]
fn scans_do_not_depend_on_thread_count() {
    let chi = real_primitive_characters(5, Parity::Even).remove(0);
    let odd = real_primitive_characters(3, Parity::Odd).remove(0);
    let grid = discrete_l::heat::linear_grid(0.0, 5.0, 64);
    let s_grid = [Complex64::new(0.4, 0.0), Complex64::new(0.5, 3.0)];
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let heat = discrete_l::heat::heat_positivity_scan(&chi, 3, &grid).unwrap().to_csv_string();
            let ratio = discrete_l::grh_probe::ratio_scan(&odd, &s_grid, &[50, 100], false).unwrap().to_csv_string();
            (heat, ratio)
        })
    };
    assert_eq!(run(1), run(4));
}
