//! Dirichlet characters as explicit value tables.
//!
//! `(Z/qZ)*` is decomposed into cyclic factors: one per odd prime power
//! (generated by a primitive root), and for `2^e` the factors `<-1>` (e >= 2)
//! and `<5>` (e >= 3). A character is an exponent vector `c` with
//! `chi(g_i) = exp(2 pi i c_i / ord_i)`. Characters are listed in
//! lexicographic order of `c`, so index 0 is always the principal character.
//!
//! Values are derived from exact phase numerators modulo the lcm of the
//! factor orders; `+-1` and `+-i` are produced exactly.

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{CharacterRequirement, Error, Result};
use crate::summation::ComplexSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: usize,
    exponents: Vec<u64>,
    phase_modulus: u64,
    phases: Vec<Option<u64>>,
    values: Vec<Complex64>,
    conductor: u64,
    parity: Parity,
    is_real: bool,
    is_principal: bool,
}

/// One cyclic factor of the unit group: generator lifted to `Z/qZ`, and its order.
#[derive(Debug, Clone)]
struct Factor {
    generator: u64,
    order: u64,
}

/// Unit group data shared by all characters of one modulus.
struct UnitGroup {
    q: u64,
    factors: Vec<Factor>,
    /// `dlog[a]` = exponent vector of the unit `a`, `None` off units.
    dlog: Vec<Option<Vec<u64>>>,
}

fn factorize(mut q: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut e = 0;
            while q % p == 0 {
                q /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if q > 1 {
        out.push((q, 1));
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mult_order(g: u64, m: u64) -> u64 {
    let (mut x, mut k) = (g % m, 1);
    while x != 1 {
        x = mul_mod(x, g, m);
        k += 1;
    }
    k
}

/// Lift `r mod m` to `Z/qZ`, congruent to 1 modulo the cofactor `q/m`.
fn crt_lift(r: u64, m: u64, q: u64) -> u64 {
    let cof = q / m;
    if cof == 1 {
        return r % q;
    }
    // x = r + m*t with x = 1 mod cof.
    let ext = (m as i64).extended_gcd(&(cof as i64));
    let inv_m = ext.x.rem_euclid(cof as i64) as u64;
    let diff = (1 + cof - r % cof) % cof;
    let t = mul_mod(diff, inv_m, cof);
    (r + m * t) % q
}

impl UnitGroup {
    fn new(q: u64) -> Self {
        let mut factors = Vec::new();
        for (p, e) in factorize(q) {
            let pe = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    factors.push(Factor { generator: crt_lift(pe - 1, pe, q), order: 2 });
                }
                if e >= 3 {
                    factors.push(Factor { generator: crt_lift(5, pe, q), order: pe / 4 });
                }
            } else {
                let phi = pe / p * (p - 1);
                let g = (2..pe)
                    .find(|&g| g % p != 0 && mult_order(g, pe) == phi)
                    .expect("odd prime powers have primitive roots");
                factors.push(Factor { generator: crt_lift(g, pe, q), order: phi });
            }
        }
        let mut dlog = vec![None; q as usize];
        let mut exps = vec![0u64; factors.len()];
        loop {
            let a = factors
                .iter()
                .zip(&exps)
                .fold(1 % q, |acc, (f, &k)| (0..k).fold(acc, |x, _| mul_mod(x, f.generator, q)));
            dlog[a as usize] = Some(exps.clone());
            if !advance(&mut exps, &factors) {
                break;
            }
        }
        Self { q, factors, dlog }
    }

    fn lcm_order(&self) -> u64 {
        self.factors.iter().fold(1, |l, f| l.lcm(&f.order))
    }
}

/// Odometer step over exponent vectors; last coordinate fastest.
fn advance(exps: &mut [u64], factors: &[Factor]) -> bool {
    for i in (0..exps.len()).rev() {
        exps[i] += 1;
        if exps[i] < factors[i].order {
            return true;
        }
        exps[i] = 0;
    }
    false
}

fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if (4 * num) % den == 0 {
        return match 4 * num / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (2.0 * std::f64::consts::PI * num as f64 / den as f64).sin_cos();
    Complex64::new(c, s)
}

impl DirichletCharacter {
    fn build(group: &UnitGroup, index: usize, exponents: Vec<u64>) -> Self {
        let q = group.q;
        let l = group.lcm_order();
        let phases: Vec<Option<u64>> = group
            .dlog
            .iter()
            .map(|d| {
                d.as_ref().map(|e| {
                    e.iter()
                        .zip(&exponents)
                        .zip(&group.factors)
                        .fold(0, |acc, ((&ej, &cj), f)| (acc + ej * cj % f.order * (l / f.order)) % l)
                })
            })
            .collect();
        let values = phases
            .iter()
            .map(|p| p.map_or(Complex64::new(0.0, 0.0), |k| root_of_unity(k, l)))
            .collect();
        let is_principal = exponents.iter().all(|&c| c == 0);
        let is_real = phases.iter().flatten().all(|&k| (2 * k) % l == 0);
        let parity = match phases[((q + q - 1) % q) as usize] {
            Some(k) if k != 0 => Parity::Odd,
            _ => Parity::Even,
        };
        let conductor = (1..=q)
            .filter(|d| q % d == 0)
            .find(|&d| {
                phases
                    .iter()
                    .enumerate()
                    .all(|(a, p)| p.is_none_or(|k| (a as u64) % d != 1 % d || k == 0))
            })
            .unwrap_or(q);
        Self {
            modulus: q,
            index,
            exponents,
            phase_modulus: l,
            phases,
            values,
            conductor,
            parity,
            is_real,
            is_principal,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Position in [`enumerate_characters`] order.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `chi(j)` for any integer `j`, reduced mod `q`.
    pub fn value(&self, j: i64) -> Complex64 {
        self.values[j.rem_euclid(self.modulus as i64) as usize]
    }

    /// `chi(0..q)`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `chi(j)` as an integer in `{-1, 0, 1}`; `None` for non-real characters.
    pub fn real_value(&self, j: i64) -> Option<i32> {
        if !self.is_real {
            return None;
        }
        Some(match self.phases[j.rem_euclid(self.modulus as i64) as usize] {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        })
    }

    /// Exact phase of `chi(j)` as `k / phase_modulus` of a full turn.
    pub fn phase(&self, j: i64) -> Option<(u64, u64)> {
        self.phases[j.rem_euclid(self.modulus as i64) as usize].map(|k| (k, self.phase_modulus))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_principal(&self) -> bool {
        self.is_principal
    }

    /// The complex-conjugate character, with its own enumeration index.
    pub fn conjugate(&self) -> Self {
        let group = UnitGroup::new(self.modulus);
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(&group.factors)
            .map(|(&c, f)| (f.order - c) % f.order)
            .collect();
        let index = exps
            .iter()
            .zip(&group.factors)
            .fold(0usize, |acc, (&c, f)| acc * f.order as usize + c as usize);
        Self::build(&group, index, exps)
    }

    pub fn require(&self, req: CharacterRequirement) -> Result<()> {
        let ok = match req {
            CharacterRequirement::NonPrincipal => !self.is_principal,
            CharacterRequirement::Primitive => self.is_primitive(),
            CharacterRequirement::Real => self.is_real,
            CharacterRequirement::Even => self.is_even(),
            CharacterRequirement::Odd => self.is_odd(),
            CharacterRequirement::ModulusAboveOne => self.modulus > 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Character(req))
        }
    }

    pub fn record(&self) -> CharacterRecord {
        CharacterRecord {
            q: self.modulus,
            index: self.index,
            parity: self.parity,
            real: self.is_real,
            primitive: self.is_primitive(),
            conductor: self.conductor,
            values: self.values.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Serializable summary of a character table.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterRecord {
    pub q: u64,
    pub index: usize,
    pub parity: Parity,
    pub real: bool,
    pub primitive: bool,
    pub conductor: u64,
    pub values: Vec<[f64; 2]>,
}

/// All `phi(q)` characters mod `q`, principal first.
pub fn enumerate_characters(q: u64) -> Vec<DirichletCharacter> {
    assert!(q >= 1, "modulus must be positive");
    let group = UnitGroup::new(q);
    let mut exps = vec![0u64; group.factors.len()];
    let mut out = Vec::new();
    loop {
        out.push(DirichletCharacter::build(&group, out.len(), exps.clone()));
        if !advance(&mut exps, &group.factors) {
            break;
        }
    }
    out
}

/// Character `index` of [`enumerate_characters`]`(q)`.
pub fn character(q: u64, index: usize) -> Result<DirichletCharacter> {
    if q == 0 {
        return Err(crate::error::out_of_range("q", "modulus must be positive"));
    }
    enumerate_characters(q).into_iter().nth(index).ok_or_else(|| {
        crate::error::out_of_range("character index", format!("q = {q} has no character {index}"))
    })
}

/// Real, primitive, non-principal characters mod `q` of the given parity.
pub fn real_primitive_characters(q: u64, parity: Parity) -> Vec<DirichletCharacter> {
    enumerate_characters(q)
        .into_iter()
        .filter(|c| !c.is_principal() && c.is_real() && c.is_primitive() && c.parity() == parity)
        .collect()
}

/// `tau(chi) = sum_{j=1..q} chi(j) e^{2 pi i j / q}`.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus();
    let mut acc = ComplexSum::new();
    for j in 1..=q {
        if let Some(k) = chi.phases[(j % q) as usize] {
            // Combine both phases exactly over the common denominator l*q.
            let l = chi.phase_modulus;
            acc.add(root_of_unity((k * q + j * l) % (l * q), l * q));
        }
    }
    acc.value()
}

/// `w_chi = tau(chi)/(i sqrt q)` for odd and `tau(chi)/sqrt q` for even `chi`.
pub fn root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    chi.require(CharacterRequirement::NonPrincipal)?;
    chi.require(CharacterRequirement::Primitive)?;
    let tau = gauss_sum(chi) / (chi.modulus() as f64).sqrt();
    Ok(match chi.parity() {
        Parity::Even => tau,
        Parity::Odd => tau * Complex64::new(0.0, -1.0),
    })
}

/// Range of partial sums examined by [`has_positive_mean_in`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanRange {
    /// `0 <= m <= floor(q/2)`, for real even primitive characters.
    HalfModulus,
    /// `0 <= m < q`, the variant usually stated for odd characters.
    Full,
}

/// All partial sums `sum_{j<=m} chi(j)` are non-negative for `0 <= m <= q/2`.
pub fn has_positive_mean(chi: &DirichletCharacter) -> Result<bool> {
    has_positive_mean_in(chi, MeanRange::HalfModulus)
}

pub fn has_positive_mean_in(chi: &DirichletCharacter, range: MeanRange) -> Result<bool> {
    chi.require(CharacterRequirement::ModulusAboveOne)?;
    chi.require(CharacterRequirement::Real)?;
    if range == MeanRange::HalfModulus {
        chi.require(CharacterRequirement::Even)?;
    }
    chi.require(CharacterRequirement::Primitive)?;
    let q = chi.modulus() as i64;
    let top = match range {
        MeanRange::HalfModulus => q / 2,
        MeanRange::Full => q - 1,
    };
    let mut partial = 0i64;
    for j in 0..=top {
        partial += chi.real_value(j).expect("real character") as i64;
        if partial < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
