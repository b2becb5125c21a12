//! One function per subcommand. Each returns the table to emit, plus an
//! optional JSON document for commands whose JSON shape is not tabular.

use std::f64::consts::PI;

use anyhow::{bail, Context, Result};
use discrete_l::asymptotics::{dirichlet_routes_agree, special_values, zeta_recursion_table, IdentityReport, IdentityTarget};
use discrete_l::characters::{character, enumerate_characters, DirichletCharacter, Parity};
use discrete_l::discrete_spectra::{bundle_spectrum, discrete_l, zeta_n, zeta_n_standard};
use discrete_l::exact_series::{
    a_coefficients, b_coefficients, brute_force_rooted_forests, charpoly_bundle, charpoly_roots, chebyshev,
    chebyshev_lemma_residual, rooted_forest_count, ChebyshevKind, Rational,
};
use discrete_l::grh_probe::ratio_scan;
use discrete_l::heat::{heat_positivity_scan, linear_grid};
use discrete_l::asymptotics::siegel_sign_probe;
use discrete_l::table::{Cell, ScanTable};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::args::{Family, Fraction};

/// Residuals above this are reported as failures by `identities`.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

pub struct Output {
    pub table: ScanTable,
    pub json: Option<Value>,
}

impl From<ScanTable> for Output {
    fn from(table: ScanTable) -> Self {
        Output { table, json: None }
    }
}

fn chi(q: u64, index: usize) -> Result<DirichletCharacter> {
    character(q, index).with_context(|| format!("no character {index} mod {q}"))
}

fn exact_theta(theta: Fraction) -> Result<Rational> {
    let Some((num, den)) = theta.exact else {
        bail!("theta must be given as a fraction num/den for exact identities");
    };
    Ok(Rational::new(num.into(), den.into()))
}

pub fn coeffs(max_k: usize) -> Result<Output> {
    let a = a_coefficients(max_k);
    let b = b_coefficients(max_k);
    let mut table = ScanTable::new("coeffs", &["k", "degree", "a_k", "b_k"]).with_parameter("max_k", max_k);
    let mut records = Vec::new();
    for k in 0..=max_k {
        let (ak, bk) = (a[k].coeff_strings(), b[k].coeff_strings());
        for d in 0..ak.len().max(bk.len()) {
            let get = |v: &[String]| v.get(d).cloned().unwrap_or_else(|| "0".into());
            table.push(vec![k.into(), d.into(), get(&ak).into(), get(&bk).into()])?;
        }
        records.push(json!({ "k": k, "a_k": ak, "b_k": bk }));
    }
    let json = json!({ "metadata": table.metadata, "coefficients": records });
    Ok(Output { table, json: Some(json) })
}

pub fn zeta_n_value(s: Complex64, theta: Fraction, n: u64) -> Result<Output> {
    let theta_zero = theta.exact.is_some_and(|(num, _)| num == 0);
    let value = if theta_zero { zeta_n_standard(s, n)? } else { zeta_n(s, theta.value, n)? };
    let mut table = ScanTable::new("zeta-n", &["s_re", "s_im", "theta", "n", "value_re", "value_im"])
        .with_parameter("s", s)
        .with_parameter("theta", theta.value)
        .with_parameter("n", n);
    table.push(vec![s.re.into(), s.im.into(), theta.value.into(), n.into(), value.re.into(), value.im.into()])?;
    Ok(table.into())
}

pub fn l_n_value(q: u64, index: usize, s: Complex64, n: u64) -> Result<Output> {
    let c = chi(q, index)?;
    let value = discrete_l(s, &c, n)?;
    let mut table = ScanTable::new("l-n", &["q", "char_index", "s_re", "s_im", "n", "value_re", "value_im"])
        .with_parameter("q", q)
        .with_parameter("char_index", index)
        .with_parameter("s", s)
        .with_parameter("n", n);
    table.push(vec![q.into(), index.into(), s.re.into(), s.im.into(), n.into(), value.re.into(), value.im.into()])?;
    Ok(table.into())
}

pub const IDENTITY_COLUMNS: [&str; 9] =
    ["identity_id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_residual", "rel_residual", "holds"];

fn identity_row(r: &IdentityReport) -> Vec<Cell> {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    vec![
        r.identity_id.as_str().into(),
        params.join(";").into(),
        r.lhs[0].into(),
        r.lhs[1].into(),
        r.rhs[0].into(),
        r.rhs[1].into(),
        r.abs_residual.into(),
        r.rel_residual.into(),
        r.holds(IDENTITY_TOLERANCE).into(),
    ]
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Exact integer counts: closed form against brute-force enumeration.
fn forest_reports(n: u64) -> Result<Vec<IdentityReport>> {
    if !(1..=16).contains(&n) {
        bail!("forest counts need 1 <= n <= 16");
    }
    let nu = n as usize;
    (1..=nu)
        .map(|k| {
            let closed = rooted_forest_count(nu, k)?.to_string().parse::<f64>()?;
            let brute = brute_force_rooted_forests(nu, k) as f64;
            Ok(IdentityReport::new("rooted_forests", &[("n", n as f64), ("k", k as f64)], real(closed), real(brute)))
        })
        .collect()
}

/// The Chebyshev lemma and the charpoly roots, evaluated at sample points.
fn chebyshev_reports(n: u64, theta: Fraction) -> Result<Vec<IdentityReport>> {
    if n == 0 {
        bail!("n must be positive");
    }
    let nu = n as usize;
    let th = exact_theta(theta)?;
    let exact = chebyshev_lemma_residual(nu, &th).is_zero();
    let cos = (2.0 * PI * theta.value).cos();
    let t = chebyshev(ChebyshevKind::First, nu);
    let p = charpoly_bundle(nu, &th);
    let params = |x: f64| [("n", n as f64), ("theta", theta.value), ("x", x)];
    let mut out: Vec<IdentityReport> = [0.1, 0.25, 0.5, 0.9]
        .iter()
        .map(|&x| {
            let lhs = t.eval_f64(1.0 - 2.0 * x) - cos;
            let rhs = p.eval_f64(4.0 * x) / 2.0;
            let id = if exact { "chebyshev_lemma" } else { "chebyshev_lemma_inexact" };
            IdentityReport::with_scale(id, &params(x), real(lhs), real(rhs), 1.0)
        })
        .collect();
    let mut spectrum = bundle_spectrum(n, theta.value);
    spectrum.sort_by(f64::total_cmp);
    spectrum.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let roots = charpoly_roots(nu, &th);
    if roots.len() != spectrum.len() {
        bail!("charpoly has {} distinct roots, spectrum has {}", roots.len(), spectrum.len());
    }
    for (i, (r, e)) in roots.iter().zip(&spectrum).enumerate() {
        out.push(IdentityReport::with_scale(
            "charpoly_root",
            &[("n", n as f64), ("theta", theta.value), ("index", i as f64)],
            real(*r),
            real(*e),
            1.0,
        ));
    }
    Ok(out)
}

pub fn identities(
    family: Family,
    p: u32,
    n: u64,
    theta: Option<Fraction>,
    q: Option<u64>,
    index: Option<usize>,
) -> Result<Output> {
    let reports = match family {
        Family::Trig => {
            let theta = theta.context("--theta is required for the trig family")?;
            vec![
                special_values(p, n, IdentityTarget::Trig { theta: theta.value, parity: Parity::Even })?,
                special_values(p, n, IdentityTarget::Trig { theta: theta.value, parity: Parity::Odd })?,
            ]
        }
        Family::Riemann => {
            vec![special_values(p, n, IdentityTarget::Riemann)?, special_values(p, n, IdentityTarget::Plain)?]
        }
        Family::Dirichlet => {
            let q = q.context("--q is required for the dirichlet family")?;
            let targets: Vec<DirichletCharacter> = match index {
                Some(i) => vec![chi(q, i)?],
                None => enumerate_characters(q).into_iter().filter(|c| !c.is_principal()).collect(),
            };
            let mut out = Vec::new();
            for c in &targets {
                out.push(special_values(p, n, IdentityTarget::Dirichlet { chi: c, parity: c.parity() })?);
                out.push(dirichlet_routes_agree(p, c, n)?);
            }
            out
        }
        Family::Forest => forest_reports(n)?,
        Family::Chebyshev => chebyshev_reports(n, theta.context("--theta is required for the chebyshev family")?)?,
    };
    let mut table = ScanTable::new("identities", &IDENTITY_COLUMNS)
        .with_parameter("family", format!("{family:?}").to_lowercase())
        .with_parameter("p", p)
        .with_parameter("n", n);
    if let Some(t) = theta {
        table.set_parameter("theta", t.value);
    }
    if let Some(q) = q {
        table.set_parameter("q", q);
    }
    for r in &reports {
        table.push(identity_row(r))?;
    }
    Ok(table.into())
}

pub fn recursion(p_max: u32) -> Result<Output> {
    Ok(zeta_recursion_table(p_max)?.into())
}

pub fn heat_scan(q: u64, index: usize, n: u64, t_min: f64, t_max: f64, steps: usize) -> Result<Output> {
    if !(t_min >= 0.0 && t_max >= t_min) || steps == 0 {
        bail!("need 0 <= t_min <= t_max and steps >= 1");
    }
    let c = chi(q, index)?;
    let table = heat_positivity_scan(&c, n, &linear_grid(t_min, t_max, steps))?
        .with_parameter("t_min", t_min)
        .with_parameter("t_max", t_max)
        .with_parameter("steps", steps);
    Ok(table.into())
}

pub fn grh_ratio(q: u64, index: usize, s_list: &[Complex64], n_list: &[u64], widen: bool) -> Result<Output> {
    let c = chi(q, index)?;
    Ok(ratio_scan(&c, s_list, n_list, widen)?.into())
}

pub fn siegel(q: u64, index: usize, s_steps: usize, n_list: &[u64]) -> Result<Output> {
    if s_steps == 0 {
        bail!("need s_steps >= 1");
    }
    let c = chi(q, index)?;
    let grid: Vec<f64> = (1..=s_steps).map(|k| k as f64 / (s_steps + 1) as f64).collect();
    Ok(siegel_sign_probe(&c, &grid, n_list)?.into())
}

pub fn characters(q: u64) -> Result<Output> {
    if q == 0 {
        bail!("modulus must be positive");
    }
    let records: Vec<_> = enumerate_characters(q).iter().map(|c| c.record()).collect();
    let mut table = ScanTable::new("characters", &["q", "index", "parity", "real", "primitive", "conductor", "values"])
        .with_parameter("q", q);
    for r in &records {
        let parity = match r.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        table.push(vec![
            r.q.into(),
            r.index.into(),
            parity.into(),
            r.real.into(),
            r.primitive.into(),
            r.conductor.into(),
            serde_json::to_string(&r.values)?.into(),
        ])?;
    }
    let json = json!({ "metadata": table.metadata, "characters": records });
    Ok(Output { table, json: Some(json) })
}
