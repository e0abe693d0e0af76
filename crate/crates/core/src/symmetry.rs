//! Relabelings of the ground set and isomorphism checks.

use crate::algebra::{Hypergroup, StarInvolution};
use crate::error::{Error, Result};
use crate::families::FAMILY_STAR;
use crate::symbolic::REDUCED_TRIPLES;
use crate::validate::violation_for;

/// Bijection of `{0, ..., n}` fixing `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relabeling {
    perm: Vec<usize>,
}

impl Relabeling {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        if perm.first() != Some(&0) {
            return Err(Error::InvalidRelabeling("the unit must map to itself".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidRelabeling(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(order: usize) -> Self {
        Self { perm: (0..order).collect() }
    }

    /// Exchanges `a` and `b` (both nonzero).
    pub fn swap(order: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a >= order || b >= order {
            return Err(Error::InvalidRelabeling(format!("cannot swap {a} and {b} in order {order}")));
        }
        let mut perm: Vec<usize> = (0..order).collect();
        perm.swap(a, b);
        Ok(Self { perm })
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn order(&self) -> usize {
        self.perm.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Relabeling) -> Self {
        Self { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }
}

/// Pushforward: `result[σi][σj][σk] = h[i][j][k]`, star `σ∘star∘σ⁻¹`.
pub fn relabel(h: &Hypergroup, sigma: &Relabeling) -> Result<Hypergroup> {
    if sigma.order() != h.order() {
        return Err(Error::DimensionMismatch { expected: h.order(), actual: sigma.order() });
    }
    let inv = sigma.inverse();
    let star: Vec<usize> = (0..h.order()).map(|a| sigma.apply(h.star().apply(inv.apply(a)))).collect();
    let star = StarInvolution::new(star)?;
    Ok(Hypergroup::from_fn(star, |a, b, c| h.entry(inv.apply(a), inv.apply(b), inv.apply(c)).clone()))
}

/// Whether `sigma` carries `h1` exactly onto `h2`.
pub fn check_isomorphism(h1: &Hypergroup, h2: &Hypergroup, sigma: &Relabeling) -> Result<bool> {
    if h1.order() != h2.order() {
        return Err(Error::DimensionMismatch { expected: h1.order(), actual: h2.order() });
    }
    Ok(relabel(h1, sigma)? == *h2)
}

/// Brute-force search over all relabelings; intended for order ≤ 6.
pub fn find_isomorphism(h1: &Hypergroup, h2: &Hypergroup) -> Result<Option<Relabeling>> {
    if h1.order() != h2.order() {
        return Err(Error::DimensionMismatch { expected: h1.order(), actual: h2.order() });
    }
    let n = h1.order();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut found = None;
    permute(&mut rest, 0, &mut |tail| {
        let mut perm = Vec::with_capacity(n);
        perm.push(0);
        perm.extend_from_slice(tail);
        let sigma = Relabeling { perm };
        if relabel(h1, &sigma).map(|h| h == *h2).unwrap_or(false) {
            found = Some(sigma);
            true
        } else {
            false
        }
    });
    Ok(found)
}

// Swap-based enumeration; stops once `visit` returns true.
fn permute(items: &mut [usize], start: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if start == items.len() {
        return visit(items);
    }
    for i in start..items.len() {
        items.swap(start, i);
        if permute(items, start + 1, visit) {
            return true;
        }
        items.swap(start, i);
    }
    false
}

/// Checks associativity on the fourteen representative triples only.
/// Returns the first failing triple, if any.
pub fn reduced_associativity(h: &Hypergroup) -> Result<Option<(usize, usize, usize)>> {
    if h.order() != 5 {
        return Err(Error::DimensionMismatch { expected: 5, actual: h.order() });
    }
    if h.star().as_slice() != FAMILY_STAR {
        return Err(Error::InvalidInvolution(format!("expected star {FAMILY_STAR:?}, got {:?}", h.star().as_slice())));
    }
    Ok(REDUCED_TRIPLES.iter().copied().find(|&(i, j, k)| violation_for(h, i, j, k).is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelings_must_fix_unit() {
        assert!(Relabeling::new(vec![1, 0]).is_err());
        assert!(Relabeling::new(vec![0, 1, 1]).is_err());
        assert!(Relabeling::new(vec![0, 2, 1]).is_ok());
        assert!(Relabeling::swap(3, 0, 1).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let a = Relabeling::new(vec![0, 2, 3, 1]).unwrap();
        let b = Relabeling::swap(4, 1, 3).unwrap();
        assert_eq!(a.compose(&a.inverse()), Relabeling::identity(4));
        assert_eq!(a.compose(&b).apply(1), a.apply(b.apply(1)));
    }

    #[test]
    fn permutation_count() {
        let mut items = vec![1, 2, 3, 4];
        let mut count = 0;
        permute(&mut items, 0, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 24);
    }
}
