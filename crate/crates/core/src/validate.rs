//! Exact axiom checks for structure tensors.
//!
//! Every check is exhaustive: it returns the full, lexicographically sorted
//! list of violations rather than stopping at the first failure.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::Hypergroup;
use crate::rational::{format_rational, Rational};

/// Why a row `δ_i ∘ δ_j` is not a probability measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StochasticReason {
    NegativeEntry { k: usize, value: Rational },
    RowSum(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticViolation {
    pub i: usize,
    pub j: usize,
    pub reason: StochasticReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Largest `|((δ_i∘δ_j)∘δ_k - δ_i∘(δ_j∘δ_k))_t|` over `t`.
    pub max_residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityReport {
    pub triples_checked: usize,
    pub violations: Vec<AssociativityViolation>,
}

impl AssociativityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Aggregated outcome of all axiom checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub unit_ok: bool,
    pub unit_violations: Vec<(usize, usize)>,
    pub stochastic_violations: Vec<StochasticViolation>,
    pub star_compat_violations: Vec<(usize, usize, usize)>,
    pub support_violations: Vec<(usize, usize)>,
    pub associativity_violations: Vec<AssociativityViolation>,
    pub triples_checked: usize,
    pub commutativity_witness: Option<(usize, usize)>,
    pub overall: bool,
}

/// Rows `(0, j)` and `(i, 0)` that differ from the corresponding Dirac
/// measure.
pub fn check_unit(h: &Hypergroup) -> Vec<(usize, usize)> {
    let n = h.order();
    let is_dirac = |row: &[Rational], at: usize| {
        row.iter().enumerate().all(|(k, m)| if k == at { m.is_one() } else { m.is_zero() })
    };
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != 0 && j != 0 {
                continue;
            }
            let at = if i == 0 { j } else { i };
            if !is_dirac(h.row(i, j), at) {
                violations.push((i, j));
            }
        }
    }
    violations
}

pub fn check_stochastic(h: &Hypergroup) -> Vec<StochasticViolation> {
    let n = h.order();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let row = h.row(i, j);
            for (k, m) in row.iter().enumerate() {
                if m.is_negative() {
                    violations.push(StochasticViolation {
                        i,
                        j,
                        reason: StochasticReason::NegativeEntry { k, value: m.clone() },
                    });
                }
            }
            let sum = row.iter().fold(Rational::zero(), |acc, m| acc + m);
            if !sum.is_one() {
                violations.push(StochasticViolation { i, j, reason: StochasticReason::RowSum(sum) });
            }
        }
    }
    violations
}

/// Triples where `m[i][j][k] ≠ m[star j][star i][star k]`.
pub fn check_star_compat(h: &Hypergroup) -> Vec<(usize, usize, usize)> {
    let n = h.order();
    let star = h.star();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if h.entry(i, j, k) != h.entry(star.apply(j), star.apply(i), star.apply(k)) {
                    violations.push((i, j, k));
                }
            }
        }
    }
    violations
}

/// Pairs where `m[i][j][0] > 0` disagrees with `j = star(i)`.
pub fn check_support(h: &Hypergroup) -> Vec<(usize, usize)> {
    let n = h.order();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let positive = h.entry(i, j, 0).is_positive();
            if positive != (j == h.star().apply(i)) {
                violations.push((i, j));
            }
        }
    }
    violations
}

/// Componentwise `(δ_i∘δ_j)∘δ_k - δ_i∘(δ_j∘δ_k)`.
pub fn associativity_residual(h: &Hypergroup, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let n = h.order();
    let mut out = vec![Rational::zero(); n];
    let ij = h.row(i, j);
    let jk = h.row(j, k);
    for t in 0..n {
        if !ij[t].is_zero() {
            for (slot, m) in out.iter_mut().zip(h.row(t, k)) {
                if !m.is_zero() {
                    *slot += &ij[t] * m;
                }
            }
        }
        if !jk[t].is_zero() {
            for (slot, m) in out.iter_mut().zip(h.row(i, t)) {
                if !m.is_zero() {
                    *slot -= &jk[t] * m;
                }
            }
        }
    }
    out
}

pub(crate) fn violation_for(h: &Hypergroup, i: usize, j: usize, k: usize) -> Option<AssociativityViolation> {
    let residual = associativity_residual(h, i, j, k);
    let max_residual = residual.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
    (!max_residual.is_zero()).then_some(AssociativityViolation { i, j, k, max_residual })
}

pub fn check_associativity(h: &Hypergroup) -> AssociativityReport {
    let n = h.order();
    let mut violations = Vec::new();
    let mut triples_checked = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                triples_checked += 1;
                violations.extend(violation_for(h, i, j, k));
            }
        }
    }
    AssociativityReport { triples_checked, violations }
}

/// Lexicographically smallest `(i, j)` with `i < j` and
/// `δ_i ∘ δ_j ≠ δ_j ∘ δ_i`.
pub fn commutativity_witness(h: &Hypergroup) -> Option<(usize, usize)> {
    let n = h.order();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| h.row(i, j) != h.row(j, i))
}

pub fn validate(h: &Hypergroup) -> ValidationReport {
    let unit_violations = check_unit(h);
    let stochastic_violations = check_stochastic(h);
    let star_compat_violations = check_star_compat(h);
    let support_violations = check_support(h);
    let associativity = check_associativity(h);
    let unit_ok = unit_violations.is_empty();
    let overall = unit_ok
        && stochastic_violations.is_empty()
        && star_compat_violations.is_empty()
        && support_violations.is_empty()
        && associativity.ok();
    ValidationReport {
        unit_ok,
        unit_violations,
        stochastic_violations,
        star_compat_violations,
        support_violations,
        associativity_violations: associativity.violations,
        triples_checked: associativity.triples_checked,
        commutativity_witness: commutativity_witness(h),
        overall,
    }
}

/// Coefficient identities that every hypergroup satisfies as a consequence
/// of the axioms. Indices are written with `ī = star(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DerivedIdentity {
    /// `m[i][ī][0] = m[ī][i][0]`.
    UnitCoefficientSymmetry { i: usize },
    /// `m[i][j][ī] = m[j][i][ī]`.
    ConjugateCoefficient { i: usize, j: usize },
    /// `m[i][j][i] = m[j][ī][ī]`.
    SelfCoefficient { i: usize, j: usize },
    /// `m[i][j][k̄] = m[j][k][ī]`, required only when every
    /// `m[i][ī][0]` with `i ≥ 1` takes the same value.
    CyclicCoefficient { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedIdentityReport {
    pub checked: usize,
    /// Whether the equal-unit-coefficient hypothesis held, so that the
    /// cyclic family was checked.
    pub cyclic_checked: bool,
    pub violations: Vec<DerivedIdentity>,
}

impl DerivedIdentityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_derived_identities(h: &Hypergroup) -> DerivedIdentityReport {
    let n = h.order();
    let bar = |i: usize| h.star().apply(i);
    let mut checked = 0;
    let mut violations = Vec::new();

    for i in 0..n {
        checked += 1;
        if h.entry(i, bar(i), 0) != h.entry(bar(i), i, 0) {
            violations.push(DerivedIdentity::UnitCoefficientSymmetry { i });
        }
    }
    for i in 1..n {
        for j in 1..n {
            checked += 2;
            if h.entry(i, j, bar(i)) != h.entry(j, i, bar(i)) {
                violations.push(DerivedIdentity::ConjugateCoefficient { i, j });
            }
            if h.entry(i, j, i) != h.entry(j, bar(i), bar(i)) {
                violations.push(DerivedIdentity::SelfCoefficient { i, j });
            }
        }
    }

    let cyclic_checked = (1..n).all(|i| h.entry(i, bar(i), 0) == h.entry(1, bar(1), 0));
    if cyclic_checked {
        for i in 1..n {
            for j in 1..n {
                for k in 1..n {
                    checked += 1;
                    if h.entry(i, j, bar(k)) != h.entry(j, k, bar(i)) {
                        violations.push(DerivedIdentity::CyclicCoefficient { i, j, k });
                    }
                }
            }
        }
    }
    violations.sort();
    DerivedIdentityReport { checked, cyclic_checked, violations }
}

impl ValidationReport {
    /// Machine-readable form; rationals are rendered as `num/den` strings.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Stochastic {
            i: usize,
            j: usize,
            reason: String,
        }
        #[derive(Serialize)]
        struct Assoc {
            i: usize,
            j: usize,
            k: usize,
            max_residual: String,
        }
        let stochastic: Vec<_> = self
            .stochastic_violations
            .iter()
            .map(|v| Stochastic { i: v.i, j: v.j, reason: v.reason.to_string() })
            .collect();
        let assoc: Vec<_> = self
            .associativity_violations
            .iter()
            .map(|v| Assoc { i: v.i, j: v.j, k: v.k, max_residual: format_rational(&v.max_residual) })
            .collect();
        serde_json::json!({
            "overall": self.overall,
            "unit_ok": self.unit_ok,
            "unit_violations": self.unit_violations,
            "stochastic_violations": stochastic,
            "star_compat_violations": self.star_compat_violations,
            "support_violations": self.support_violations,
            "associativity_violations": assoc,
            "triples_checked": self.triples_checked,
            "commutativity_witness": self.commutativity_witness,
        })
    }
}

impl std::fmt::Display for StochasticReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NegativeEntry { k, value } => {
                write!(f, "negative coefficient {} at c_{k}", format_rational(value))
            }
            Self::RowSum(sum) => write!(f, "row sums to {}", format_rational(sum)),
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = |ok: bool| if ok { "ok" } else { "FAILED" };
        writeln!(f, "unit rows:          {}", status(self.unit_ok))?;
        for (i, j) in &self.unit_violations {
            writeln!(f, "  row ({i},{j}) is not the expected Dirac measure")?;
        }
        writeln!(f, "stochastic rows:    {}", status(self.stochastic_violations.is_empty()))?;
        for v in &self.stochastic_violations {
            writeln!(f, "  row ({},{}): {}", v.i, v.j, v.reason)?;
        }
        writeln!(f, "star compatibility: {}", status(self.star_compat_violations.is_empty()))?;
        for (i, j, k) in &self.star_compat_violations {
            writeln!(f, "  m[{i}][{j}][{k}] differs from its starred counterpart")?;
        }
        writeln!(f, "support of c_0:     {}", status(self.support_violations.is_empty()))?;
        for (i, j) in &self.support_violations {
            writeln!(f, "  row ({i},{j}) has the wrong c_0 support")?;
        }
        writeln!(
            f,
            "associativity:      {} ({} triples checked, {} failing)",
            status(self.associativity_violations.is_empty()),
            self.triples_checked,
            self.associativity_violations.len()
        )?;
        for v in &self.associativity_violations {
            writeln!(f, "  ({},{},{}): max residual {}", v.i, v.j, v.k, format_rational(&v.max_residual))?;
        }
        match self.commutativity_witness {
            Some((i, j)) => writeln!(f, "commutativity:      non-commutative, witness ({i},{j})")?,
            None => writeln!(f, "commutativity:      commutative")?,
        }
        write!(f, "overall:            {}", if self.overall { "VALID" } else { "INVALID" })
    }
}
