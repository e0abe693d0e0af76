//! Exact polynomials in the two family variables `(r, s)`, used to certify
//! the associativity equations of `K(r,s)` for all parameter values at once.
//!
//! Coefficient equations are generated from [`crate::families::FAMILY_ROWS`]
//! by substituting each symbol with its polynomial in `(r, s)`, so the
//! catalog is derived from the same table that [`crate::families::build_k_rs`]
//! evaluates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{family_table, Param};
use crate::rational::{format_rational, int, rat, Rational};

/// Polynomial in `r` and `s` keyed by `(deg_r, deg_s)`. Zero coefficients
/// are never stored, so structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, deg_r: u32, deg_s: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_r, deg_s), c);
        }
        Self { terms }
    }

    pub fn r() -> Self {
        Self::monomial(int(1), 1, 0)
    }

    pub fn s() -> Self {
        Self::monomial(int(1), 0, 1)
    }

    /// Builds from `(coefficient, deg_r, deg_s)` triples, merging repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, u32, u32)>) -> Self {
        let mut out = Self::zero();
        for (c, dr, ds) in terms {
            out.add_term((dr, ds), c);
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, deg_r: u32, deg_s: u32) -> Rational {
        self.terms.get(&(deg_r, deg_s)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn eval(&self, r: &Rational, s: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(dr, ds), c)| {
            acc + c * num_traits::pow(r.clone(), dr as usize) * num_traits::pow(s.clone(), ds as usize)
        })
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v);
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        BivariatePoly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), x * y);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.cmp(a)));
        for (idx, (&(dr, ds), c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let has_vars = dr + ds > 0;
            if !has_vars || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (var, deg) in [("r", dr), ("s", ds)] {
                match deg {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    d => write!(f, "{var}^{d}")?,
                }
            }
        }
        Ok(())
    }
}

/// `F(r,s) = 3r² + 10rs + 3s² - 8r - 8s + 3`.
pub fn conic_poly() -> BivariatePoly {
    BivariatePoly::from_terms([
        (int(3), 2, 0),
        (int(10), 1, 1),
        (int(3), 0, 2),
        (int(-8), 1, 0),
        (int(-8), 0, 1),
        (int(3), 0, 0),
    ])
}

pub fn param_poly(param: Param) -> BivariatePoly {
    let r = BivariatePoly::r();
    let s = BivariatePoly::s();
    let sum = &r + &s;
    let c = |q: Rational| BivariatePoly::constant(q);
    match param {
        Param::Zero => BivariatePoly::zero(),
        Param::P => &c(int(2)) - &sum.scale(&int(4)),
        Param::Q => sum.scale(&rat(1, 2)),
        Param::R => r,
        Param::S => s,
        Param::U => (&c(int(1)) - &sum).scale(&rat(1, 2)),
        Param::V => &c(rat(1, 2)) - &r,
        Param::W => &c(rat(1, 2)) - &s,
        Param::X => (&sum.scale(&int(3)) - &c(int(1))).scale(&rat(1, 2)),
        Param::Y => &sum.scale(&rat(5, 2)) - &c(int(1)),
    }
}

/// Polynomial in `(r, s)` for a family parameter name (`p`, `q`, ..., `y`).
pub fn substitute_params(symbol: &str) -> Result<BivariatePoly> {
    Param::from_name(symbol).map(param_poly).ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
}

/// Triples whose associativity, together with the `r ↔ s` relabelings and
/// the star anti-automorphism, implies associativity of the whole family.
pub const REDUCED_TRIPLES: [(usize, usize, usize); 14] = [
    (1, 1, 1),
    (1, 1, 2),
    (1, 1, 3),
    (1, 2, 1),
    (1, 2, 3),
    (1, 3, 1),
    (1, 3, 2),
    (1, 3, 3),
    (1, 3, 4),
    (3, 1, 3),
    (3, 1, 4),
    (3, 3, 3),
    (3, 3, 4),
    (3, 4, 3),
];

pub type Triple = (usize, usize, usize);

/// Coefficient indices of each reduced triple whose equation holds only on
/// the conic; every other coefficient equation holds identically.
pub const CONIC_DEPENDENT: [(Triple, &[usize]); 14] = [
    ((1, 1, 1), &[]),
    ((1, 1, 2), &[2, 3, 4]),
    ((1, 1, 3), &[2, 3, 4]),
    ((1, 2, 1), &[]),
    ((1, 2, 3), &[1, 3]),
    ((1, 3, 1), &[]),
    ((1, 3, 2), &[1, 2]),
    ((1, 3, 3), &[1, 3]),
    ((1, 3, 4), &[1, 2, 3]),
    ((3, 1, 3), &[]),
    ((3, 1, 4), &[3, 4]),
    ((3, 3, 3), &[]),
    ((3, 3, 4), &[1, 2, 3]),
    ((3, 4, 3), &[]),
];

/// One coefficient equation `((δ_i∘δ_j)∘δ_k)_m = (δ_i∘(δ_j∘δ_k))_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdentityId {
    pub triple: (usize, usize, usize),
    pub coefficient: usize,
}

impl IdentityId {
    pub fn new(triple: (usize, usize, usize), coefficient: usize) -> Result<Self> {
        if !REDUCED_TRIPLES.contains(&triple) || coefficient > 4 {
            return Err(Error::UnknownIdentity { triple, coefficient });
        }
        Ok(Self { triple, coefficient })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    AlwaysZero,
    ConicMultiple(Rational),
    Other,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::AlwaysZero => "AlwaysZero",
            Classification::ConicMultiple(_) => "ConicMultiple",
            Classification::Other => "Other",
        }
    }
}

/// The family tensor with polynomial entries.
pub fn symbolic_family_table() -> Vec<BivariatePoly> {
    family_table(param_poly, BivariatePoly::zero(), BivariatePoly::constant(int(1)))
}

/// Residual polynomials of all five coefficient equations of `(i, j, k)`
/// for any 5×5×5 polynomial tensor.
pub fn triple_residuals(table: &[BivariatePoly], (i, j, k): (usize, usize, usize)) -> Vec<BivariatePoly> {
    let at = |a: usize, b: usize, c: usize| &table[(a * 5 + b) * 5 + c];
    (0..5)
        .map(|m| {
            let mut residual = BivariatePoly::zero();
            for t in 0..5 {
                residual = &residual + &(at(i, j, t) * at(t, k, m));
                residual = &residual - &(at(j, k, t) * at(i, t, m));
            }
            residual
        })
        .collect()
}

/// `LHS - RHS` of the named coefficient equation as a polynomial in `(r, s)`.
pub fn identity_residual(id: IdentityId) -> BivariatePoly {
    triple_residuals(&symbolic_family_table(), id.triple).swap_remove(id.coefficient)
}

pub fn classify_residual(poly: &BivariatePoly) -> Result<Classification> {
    let degree = poly.degree();
    if degree > 2 {
        return Err(Error::DegreeTooHigh(degree));
    }
    if poly.is_zero() {
        return Ok(Classification::AlwaysZero);
    }
    let conic = conic_poly();
    let cofactor = poly.coefficient(0, 0) / conic.coefficient(0, 0);
    if !cofactor.is_zero() && conic.scale(&cofactor) == *poly {
        Ok(Classification::ConicMultiple(cofactor))
    } else {
        Ok(Classification::Other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: IdentityId,
    pub residual: BivariatePoly,
    pub classification: Classification,
    /// Agrees with [`CONIC_DEPENDENT`] for this coefficient.
    pub matches_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogReport {
    pub entries: Vec<CatalogEntry>,
}

impl CatalogReport {
    /// Entries classified as neither zero nor a multiple of the conic.
    pub fn failures(&self) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.classification == Classification::Other).collect()
    }

    pub fn mismatches(&self) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| !e.matches_expected).collect()
    }

    pub fn ok(&self) -> bool {
        self.failures().is_empty() && self.mismatches().is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "triple": [e.id.triple.0, e.id.triple.1, e.id.triple.2],
                    "coefficient": e.id.coefficient,
                    "classification": e.classification.label(),
                    "cofactor": match &e.classification {
                        Classification::ConicMultiple(c) => Some(format_rational(c)),
                        _ => None,
                    },
                    "residual": e.residual.to_string(),
                    "matches_expected": e.matches_expected,
                })
            })
            .collect();
        serde_json::json!({ "ok": self.ok(), "entries": entries })
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<10} {:>5}  {:<14} {:>8}  residual", "triple", "coef", "class", "cofactor")?;
        for e in &self.entries {
            let (i, j, k) = e.id.triple;
            let cofactor = match &e.classification {
                Classification::ConicMultiple(c) => format_rational(c),
                _ => "-".to_string(),
            };
            let flag = if e.matches_expected { "" } else { "  <-- unexpected" };
            writeln!(
                f,
                "({i},{j},{k})    {:>5}  {:<14} {:>8}  {}{flag}",
                e.id.coefficient,
                e.classification.label(),
                cofactor,
                e.residual
            )?;
        }
        let zero = self.entries.iter().filter(|e| e.classification == Classification::AlwaysZero).count();
        write!(
            f,
            "{} equations: {} always hold, {} hold exactly on the conic, {} other, {} unexpected",
            self.entries.len(),
            zero,
            self.entries.len() - zero - self.failures().len(),
            self.failures().len(),
            self.mismatches().len()
        )
    }
}

/// Classifies every coefficient equation of the reduced triples.
pub fn verify_appendix() -> CatalogReport {
    let table = symbolic_family_table();
    let mut entries = Vec::with_capacity(REDUCED_TRIPLES.len() * 5);
    for (triple, conic_dependent) in CONIC_DEPENDENT {
        for (coefficient, residual) in triple_residuals(&table, triple).into_iter().enumerate() {
            let classification = classify_residual(&residual).unwrap_or(Classification::Other);
            let matches_expected = match &classification {
                Classification::AlwaysZero => !conic_dependent.contains(&coefficient),
                Classification::ConicMultiple(_) => conic_dependent.contains(&coefficient),
                Classification::Other => false,
            };
            entries.push(CatalogEntry {
                id: IdentityId { triple, coefficient },
                residual,
                classification,
                matches_expected,
            });
        }
    }
    CatalogReport { entries }
}
