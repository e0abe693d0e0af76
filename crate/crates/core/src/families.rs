//! Reference hypergroups: the two-parameter order-5 family `K(r,s)` with
//! star structure `c_3* = c_4`, and hypergroups induced by finite groups.
//!
//! The family's structure equations are stored once, as a table of
//! parameter symbols ([`FAMILY_ROWS`]). [`build_k_rs`] fills it with exact
//! values; the symbolic module fills the same table with polynomials in
//! `(r, s)`.

use num_traits::{One, Signed, Zero};

use crate::algebra::{Hypergroup, StarInvolution};
use crate::error::{Error, Result};
use crate::rational::{int, rat, rational_sqrt, Rational};

/// Star structure of the family: `c_3` and `c_4` are exchanged.
pub const FAMILY_STAR: [usize; 5] = [0, 1, 2, 4, 3];

/// Symbols appearing in the family's structure equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Zero,
    P,
    Q,
    R,
    S,
    U,
    V,
    W,
    X,
    Y,
}

impl Param {
    pub const ALL: [Param; 9] =
        [Param::P, Param::Q, Param::R, Param::S, Param::U, Param::V, Param::W, Param::X, Param::Y];

    pub fn name(self) -> &'static str {
        match self {
            Param::Zero => "0",
            Param::P => "p",
            Param::Q => "q",
            Param::R => "r",
            Param::S => "s",
            Param::U => "u",
            Param::V => "v",
            Param::W => "w",
            Param::X => "x",
            Param::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }
}

use Param::{Zero as O, P, Q, R, S, U, V, W, X, Y};

/// `FAMILY_ROWS[i-1][j-1][k]` is the coefficient of `δ_k` in `δ_i ∘ δ_j`
/// for `1 ≤ i, j ≤ 4`.
pub const FAMILY_ROWS: [[[Param; 5]; 4]; 4] = [
    [
        [P, Y, Q, Q, Q], // δ1∘δ1
        [O, Q, Q, V, W], // δ1∘δ2
        [O, Q, V, R, U], // δ1∘δ3
        [O, Q, W, U, S], // δ1∘δ4
    ],
    [
        [O, Q, Q, W, V], // δ2∘δ1
        [P, Q, Y, Q, Q], // δ2∘δ2
        [O, W, Q, S, U], // δ2∘δ3
        [O, V, Q, U, R], // δ2∘δ4
    ],
    [
        [O, Q, W, S, U], // δ3∘δ1
        [O, V, Q, R, U], // δ3∘δ2
        [O, U, U, X, U], // δ3∘δ3
        [P, R, S, X, X], // δ3∘δ4
    ],
    [
        [O, Q, V, U, R], // δ4∘δ1
        [O, W, Q, U, S], // δ4∘δ2
        [P, S, R, X, X], // δ4∘δ3
        [O, U, U, U, X], // δ4∘δ4
    ],
];

/// Fills the family table (unit rows included) with values of any scalar
/// type, laid out row-major as `[i][j][k]` over `5^3` entries.
pub fn family_table<T: Clone>(value: impl Fn(Param) -> T, zero: T, one: T) -> Vec<T> {
    let mut table = Vec::with_capacity(125);
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                let entry = if i == 0 || j == 0 {
                    if i + j == k {
                        one.clone()
                    } else {
                        zero.clone()
                    }
                } else {
                    match FAMILY_ROWS[i - 1][j - 1][k] {
                        Param::Zero => zero.clone(),
                        p => value(p),
                    }
                };
                table.push(entry);
            }
        }
    }
    table
}

/// All family parameters as functions of `(r, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub r: Rational,
    pub s: Rational,
    pub p: Rational,
    pub q: Rational,
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
}

impl FamilyParams {
    pub fn get(&self, param: Param) -> Rational {
        match param {
            Param::Zero => Rational::zero(),
            Param::P => self.p.clone(),
            Param::Q => self.q.clone(),
            Param::R => self.r.clone(),
            Param::S => self.s.clone(),
            Param::U => self.u.clone(),
            Param::V => self.v.clone(),
            Param::W => self.w.clone(),
            Param::X => self.x.clone(),
            Param::Y => self.y.clone(),
        }
    }
}

pub fn derived_params(r: &Rational, s: &Rational) -> FamilyParams {
    let half = rat(1, 2);
    let sum = r + s;
    FamilyParams {
        p: int(2) - int(4) * &sum,
        q: &sum / int(2),
        u: (int(1) - &sum) / int(2),
        v: &half - r,
        w: &half - s,
        x: (int(-1) + int(3) * &sum) / int(2),
        y: int(-1) + rat(5, 2) * &sum,
        r: r.clone(),
        s: s.clone(),
    }
}

/// First violated inequality of `0 ≤ r < 1/2, 0 ≤ s < 1/2, 2/5 ≤ r+s < 1/2`.
pub fn region_violation(r: &Rational, s: &Rational) -> Option<String> {
    let half = rat(1, 2);
    let sum = r + s;
    if r.is_negative() {
        return Some(format!("0 ≤ r fails (r = {r})"));
    }
    if r >= &half {
        return Some(format!("r < 1/2 fails (r = {r})"));
    }
    if s.is_negative() {
        return Some(format!("0 ≤ s fails (s = {s})"));
    }
    if s >= &half {
        return Some(format!("s < 1/2 fails (s = {s})"));
    }
    if sum < rat(2, 5) {
        return Some(format!("2/5 ≤ r + s fails (r + s = {sum})"));
    }
    if sum >= half {
        return Some(format!("r + s < 1/2 fails (r + s = {sum})"));
    }
    None
}

pub fn in_region(r: &Rational, s: &Rational) -> bool {
    region_violation(r, s).is_none()
}

/// Builds `K(r,s)`. The conic condition is not required: off-conic tables
/// are stochastic, star-compatible and support-correct, but not associative.
pub fn build_k_rs(r: &Rational, s: &Rational) -> Result<Hypergroup> {
    if let Some(violation) = region_violation(r, s) {
        return Err(Error::OutOfRegion(violation));
    }
    let params = derived_params(r, s);
    let table = family_table(|p| params.get(p), Rational::zero(), Rational::one());
    let star = StarInvolution::new(FAMILY_STAR.to_vec()).expect("family star is an involution");
    Hypergroup::new(star, table)
}

/// `F(r,s) = 3r² + 10rs + 3s² - 8r - 8s + 3`.
pub fn conic_value(r: &Rational, s: &Rational) -> Rational {
    int(3) * r * r + int(10) * r * s + int(3) * s * s - int(8) * r - int(8) * s + int(3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicSolution {
    Exact(Rational),
    /// `lo < root < hi` with `hi - lo` below the requested width.
    Enclosure {
        lo: Rational,
        hi: Rational,
    },
}

impl ConicSolution {
    pub fn lower(&self) -> &Rational {
        match self {
            ConicSolution::Exact(x) => x,
            ConicSolution::Enclosure { lo, .. } => lo,
        }
    }

    pub fn midpoint(&self) -> Rational {
        match self {
            ConicSolution::Exact(x) => x.clone(),
            ConicSolution::Enclosure { lo, hi } => (lo + hi) / int(2),
        }
    }
}

/// Both roots in `s` of `F(r, s) = 0`, ascending.
///
/// The discriminant is `4(16r² - 16r + 7) > 0`, so both roots are real. They
/// are exact when `16r² - 16r + 7` is a rational square; otherwise each is
/// bracketed by exact bisection.
pub fn conic_solutions_for_r(r: &Rational, width: &Rational) -> Result<Vec<ConicSolution>> {
    if !width.is_positive() {
        return Err(Error::InvalidWidth);
    }
    // 3s² + bs + c
    let b = int(10) * r - int(8);
    let c = int(3) * r * r - int(8) * r + int(3);
    let reduced = int(16) * r * r - int(16) * r + int(7);
    let vertex = -&b / int(6);

    if let Some(root) = rational_sqrt(&reduced) {
        // √disc = 2·root, roots = (-b ± 2·root) / 6
        let lo = (-&b - int(2) * &root) / int(6);
        let hi = (-&b + int(2) * &root) / int(6);
        return Ok(vec![ConicSolution::Exact(lo), ConicSolution::Exact(hi)]);
    }

    let f = |s: &Rational| int(3) * s * s + &b * s + &c;
    let mut reach = int(1);
    while !f(&(&vertex + &reach)).is_positive() {
        reach *= int(2);
    }
    let bisect = |mut neg: Rational, mut pos: Rational| {
        // invariant: f(neg) < 0 < f(pos)
        while (&pos - &neg).abs() >= *width {
            let mid = (&neg + &pos) / int(2);
            if f(&mid).is_negative() {
                neg = mid;
            } else {
                pos = mid;
            }
        }
        if neg < pos {
            ConicSolution::Enclosure { lo: neg, hi: pos }
        } else {
            ConicSolution::Enclosure { lo: pos, hi: neg }
        }
    };
    let lower = bisect(vertex.clone(), &vertex - &reach);
    let upper = bisect(vertex.clone(), &vertex + &reach);
    Ok(vec![lower, upper])
}

/// Second intersection of the conic with the line of slope `t` through
/// its rational point `(1/4, 1/4)`.
pub fn rational_point_from_slope(t: &Rational) -> Result<(Rational, Rational)> {
    let den = (int(3) * t + int(1)) * (t + int(3));
    if den.is_zero() {
        return Err(Error::DegenerateSlope(t.to_string()));
    }
    let lambda = int(4) * (int(1) + t) / den;
    let quarter = rat(1, 4);
    Ok((&quarter + &lambda, &quarter + t * &lambda))
}

/// Hypergroup of a finite group: `δ_g ∘ δ_h = δ_{gh}`, star = inverse.
/// `cayley[g][h]` is the index of `gh`; the identity must be index 0.
pub fn group_hypergroup(cayley: &[Vec<usize>]) -> Result<Hypergroup> {
    let n = cayley.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for (g, row) in cayley.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {g} has length {}, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} in row {g} is out of range")));
        }
    }
    for g in 0..n {
        if cayley[0][g] != g || cayley[g][0] != g {
            return Err(Error::NotAGroup(format!("index 0 is not an identity for {g}")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                    return Err(Error::NotAGroup(format!("({a}{b}){c} ≠ {a}({b}{c})")));
                }
            }
        }
    }
    let mut inverse = Vec::with_capacity(n);
    for g in 0..n {
        let inv = (0..n)
            .find(|&h| cayley[g][h] == 0 && cayley[h][g] == 0)
            .ok_or_else(|| Error::NotAGroup(format!("{g} has no inverse")))?;
        inverse.push(inv);
    }
    let star = StarInvolution::new(inverse).map_err(|e| Error::NotAGroup(e.to_string()))?;
    Ok(Hypergroup::from_fn(star, |i, j, k| if cayley[i][j] == k { int(1) } else { int(0) }))
}

pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Z_2 × Z_2 with elements encoded as two-bit masks.
pub fn klein_four_table() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

/// Permutations of `{0, 1, 2}` under composition, identity first.
pub fn symmetric_group_s3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
    perms.iter().map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarStructures {
    pub involutions: Vec<StarInvolution>,
    /// Classes up to relabeling of `{1, ..., order-1}`, one per number of
    /// 2-cycles.
    pub classes: usize,
}

pub fn enumerate_star_structures(order: usize) -> Result<StarStructures> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut involutions = Vec::new();
    let mut perm: Vec<usize> = (0..order).collect();
    let remaining: Vec<usize> = (1..order).collect();
    fill_involutions(&mut perm, &remaining, &mut involutions);
    let involutions = involutions.into_iter().map(|p| StarInvolution::new(p).expect("generated involution")).collect();
    Ok(StarStructures { involutions, classes: (order - 1) / 2 + 1 })
}

/// The smallest unassigned element is either fixed or paired with a later one.
fn fill_involutions(perm: &mut [usize], remaining: &[usize], out: &mut Vec<Vec<usize>>) {
    let Some((&first, rest)) = remaining.split_first() else {
        out.push(perm.to_vec());
        return;
    };
    fill_involutions(perm, rest, out);
    for (idx, &partner) in rest.iter().enumerate() {
        perm[first] = partner;
        perm[partner] = first;
        let others: Vec<usize> = rest.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, &x)| x).collect();
        fill_involutions(perm, &others, out);
        perm[first] = first;
        perm[partner] = partner;
    }
}
