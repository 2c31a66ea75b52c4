//! The four abelian color groups: ℤ, ℤ/k, ℤ² and ℤ/p × ℤ/q.
//!
//! Free coordinates are arbitrary precision. Cyclic coordinates are kept in
//! canonical form `0 <= x < modulus`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Ambient group of a colored graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// ℤ
    FreeRank1,
    /// ℤ/kℤ, k ≥ 2
    Cyclic(u64),
    /// ℤ²
    FreeRank2,
    /// ℤ/pℤ × ℤ/qℤ, p ≠ q odd primes
    CyclicPQ(u64, u64),
}

impl GroupSpec {
    pub fn cyclic(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidGroup(format!("Z/{k}: modulus must be at least 2")));
        }
        Ok(GroupSpec::Cyclic(k))
    }

    pub fn cyclic_pq(p: u64, q: u64) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidGroup(format!("Z/{p}xZ/{q}: primes must be distinct")));
        }
        for x in [p, q] {
            if x == 2 || !is_prime(x) {
                return Err(Error::InvalidGroup(format!("Z/{p}xZ/{q}: {x} is not an odd prime")));
            }
        }
        Ok(GroupSpec::CyclicPQ(p, q))
    }

    /// Number of coordinates an element carries.
    pub fn dimension(&self) -> usize {
        match self {
            GroupSpec::FreeRank1 | GroupSpec::Cyclic(_) => 1,
            GroupSpec::FreeRank2 | GroupSpec::CyclicPQ(..) => 2,
        }
    }

    /// Modulus of each coordinate; `None` for free coordinates.
    pub fn moduli(&self) -> [Option<u64>; 2] {
        match *self {
            GroupSpec::FreeRank1 | GroupSpec::FreeRank2 => [None, None],
            GroupSpec::Cyclic(k) => [Some(k), None],
            GroupSpec::CyclicPQ(p, q) => [Some(p), Some(q)],
        }
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match *self {
            GroupSpec::Cyclic(k) => Some(k),
            GroupSpec::CyclicPQ(p, q) => Some(p * q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements of a finite group in canonical order (lexicographic on
    /// coordinates).
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        match *self {
            GroupSpec::Cyclic(k) => Some((0..k).map(|x| GroupElem::from_u64s(*self, x, 0)).collect()),
            GroupSpec::CyclicPQ(p, q) => Some(
                (0..p)
                    .flat_map(|a| (0..q).map(move |b| (a, b)))
                    .map(|(a, b)| GroupElem::from_u64s(*self, a, b))
                    .collect(),
            ),
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::FreeRank1 => write!(f, "Z"),
            GroupSpec::Cyclic(k) => write!(f, "Z/{k}"),
            GroupSpec::FreeRank2 => write!(f, "Z^2"),
            GroupSpec::CyclicPQ(p, q) => write!(f, "Z/{p}xZ/{q}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidGroup(format!("cannot parse group '{s}' (expected Z, Z/k, Z^2 or Z/pxZ/q)"));
        match s {
            "Z" => return Ok(GroupSpec::FreeRank1),
            "Z^2" => return Ok(GroupSpec::FreeRank2),
            _ => {}
        }
        let modulus = |part: &str| -> Result<u64> {
            part.strip_prefix("Z/").and_then(|m| m.parse::<u64>().ok()).ok_or_else(bad)
        };
        match s.split_once(['x', 'X']) {
            Some((l, r)) => GroupSpec::cyclic_pq(modulus(l)?, modulus(r)?),
            None => GroupSpec::cyclic(modulus(s)?),
        }
    }
}

/// An element of one of the color groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    spec: GroupSpec,
    coords: [BigInt; 2],
}

impl GroupElem {
    pub fn zero(spec: GroupSpec) -> Self {
        GroupElem { spec, coords: [BigInt::zero(), BigInt::zero()] }
    }

    /// Builds an element, reducing cyclic coordinates. A second coordinate is
    /// required exactly for the rank-2 groups.
    pub fn new(spec: GroupSpec, coords: &[BigInt]) -> Result<Self> {
        if coords.len() != spec.dimension() {
            return Err(Error::Usage(format!(
                "{spec} elements have {} coordinate(s), got {}",
                spec.dimension(),
                coords.len()
            )));
        }
        let mut c = [BigInt::zero(), BigInt::zero()];
        for (slot, v) in c.iter_mut().zip(coords) {
            *slot = v.clone();
        }
        Ok(Self::canonical(spec, c))
    }

    pub fn from_i64(spec: GroupSpec, x: i64) -> Self {
        debug_assert_eq!(spec.dimension(), 1);
        Self::canonical(spec, [BigInt::from(x), BigInt::zero()])
    }

    pub fn from_pair(spec: GroupSpec, x: i64, y: i64) -> Self {
        debug_assert_eq!(spec.dimension(), 2);
        Self::canonical(spec, [BigInt::from(x), BigInt::from(y)])
    }

    fn from_u64s(spec: GroupSpec, x: u64, y: u64) -> Self {
        Self::canonical(spec, [BigInt::from(x), BigInt::from(y)])
    }

    fn canonical(spec: GroupSpec, mut coords: [BigInt; 2]) -> Self {
        for (c, m) in coords.iter_mut().zip(spec.moduli()) {
            if let Some(m) = m {
                *c = c.mod_floor(&BigInt::from(m));
            }
        }
        if spec.dimension() == 1 {
            coords[1] = BigInt::zero();
        }
        GroupElem { spec, coords }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords[..self.spec.dimension()]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &GroupElem) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch { left: self.spec, right: other.spec });
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElem) -> Result<GroupElem> {
        self.check(other)?;
        Ok(self.plus(other))
    }

    pub fn sub(&self, other: &GroupElem) -> Result<GroupElem> {
        self.check(other)?;
        Ok(self.minus(other))
    }

    pub fn neg(&self) -> GroupElem {
        let [a, b] = &self.coords;
        Self::canonical(self.spec, [-a, -b])
    }

    // Unchecked variants for callers that already share a spec.
    pub(crate) fn plus(&self, other: &GroupElem) -> GroupElem {
        debug_assert_eq!(self.spec, other.spec);
        let [a, b] = &self.coords;
        let [c, d] = &other.coords;
        Self::canonical(self.spec, [a + c, b + d])
    }

    pub(crate) fn minus(&self, other: &GroupElem) -> GroupElem {
        debug_assert_eq!(self.spec, other.spec);
        let [a, b] = &self.coords;
        let [c, d] = &other.coords;
        Self::canonical(self.spec, [a - c, b - d])
    }

    /// Sum of absolute values of each coordinate (used for prime selection).
    pub(crate) fn abs_coords(&self) -> [BigInt; 2] {
        [self.coords[0].abs(), self.coords[1].abs()]
    }

    /// Small-integer view for hot loops; `None` if a coordinate exceeds `i64`.
    pub(crate) fn to_i64_pair(&self) -> Option<[i64; 2]> {
        Some([self.coords[0].to_i64()?, self.coords[1].to_i64()?])
    }

    /// Index of a finite-group element in [`GroupSpec::elements`] order.
    pub(crate) fn finite_index(&self) -> Option<usize> {
        let a = self.coords[0].to_u64()?;
        match self.spec {
            GroupSpec::Cyclic(_) => Some(a as usize),
            GroupSpec::CyclicPQ(_, q) => Some((a * q + self.coords[1].to_u64()?) as usize),
            _ => None,
        }
    }

    /// Parses `c` or `c1,c2`.
    pub fn parse(spec: GroupSpec, text: &str) -> Result<GroupElem> {
        let parts: Vec<BigInt> = text
            .split(',')
            .map(|p| p.trim().parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Usage(format!("bad color '{text}'")))?;
        GroupElem::new(spec, &parts)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec.dimension() {
            1 => write!(f, "{}", self.coords[0]),
            _ => write!(f, "{},{}", self.coords[0], self.coords[1]),
        }
    }
}

/// Rank of the subgroup generated by `elems`, in {0, 1, 2}.
///
/// ℤ and ℤ/p: 0 if everything is zero, else 1. ℤ²: rank of the generated
/// lattice by integer row reduction. ℤ/p × ℤ/q: number of prime components
/// with a nontrivial projection. Composite ℤ/k has no rank here.
pub fn rank_of_span(spec: GroupSpec, elems: &[GroupElem]) -> Result<usize> {
    if let Some(bad) = elems.iter().find(|e| e.spec != spec) {
        return Err(Error::SpecMismatch { left: spec, right: bad.spec });
    }
    match spec {
        GroupSpec::Cyclic(k) if !is_prime(k) => {
            Err(Error::UnsupportedGroup { spec, what: "rank (composite modulus)" })
        }
        GroupSpec::FreeRank1 | GroupSpec::Cyclic(_) => Ok(usize::from(elems.iter().any(|e| !e.is_zero()))),
        GroupSpec::CyclicPQ(..) => {
            let p_side = elems.iter().any(|e| !e.coords[0].is_zero());
            let q_side = elems.iter().any(|e| !e.coords[1].is_zero());
            Ok(usize::from(p_side) + usize::from(q_side))
        }
        GroupSpec::FreeRank2 => Ok(lattice_rank(elems.iter().map(|e| e.coords.clone()))),
    }
}

/// Hermite-style elimination: fold every row with a nonzero first entry into
/// a single pivot by the Euclidean algorithm, then look at what is left in the
/// second column.
fn lattice_rank(rows: impl Iterator<Item = [BigInt; 2]>) -> usize {
    let mut pivot: Option<[BigInt; 2]> = None;
    let mut second_column_nonzero = false;
    for row in rows {
        if row[0].is_zero() {
            second_column_nonzero |= !row[1].is_zero();
            continue;
        }
        let Some(mut a) = pivot.take() else {
            pivot = Some(row);
            continue;
        };
        let mut b = row;
        while !b[0].is_zero() {
            let q = a[0].div_floor(&b[0]);
            let r = [&a[0] - &q * &b[0], &a[1] - &q * &b[1]];
            a = std::mem::replace(&mut b, r);
        }
        second_column_nonzero |= !b[1].is_zero();
        pivot = Some(a);
    }
    usize::from(pivot.is_some()) + usize::from(second_column_nonzero)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest odd prime strictly greater than `bound`, skipping `avoid`.
pub(crate) fn odd_prime_above(bound: &BigInt, avoid: Option<u64>) -> Result<u64> {
    let start = bound
        .to_u64()
        .and_then(|b| b.checked_add(1))
        .ok_or_else(|| Error::Usage("color magnitudes too large for prime reduction".into()))?;
    let mut c = start.max(3);
    loop {
        if c % 2 == 1 && is_prime(c) && Some(c) != avoid {
            return Ok(c);
        }
        c = c.checked_add(1).ok_or_else(|| Error::Usage("prime search overflowed".into()))?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn z5(x: i64) -> GroupElem {
        GroupElem::from_i64(GroupSpec::Cyclic(5), x)
    }

    #[test]
    fn parses_and_prints_specs() {
        for s in ["Z", "Z/5", "Z^2", "Z/3xZ/5"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert!("Z/1".parse::<GroupSpec>().is_err());
        assert!("Z/3xZ/3".parse::<GroupSpec>().is_err());
        assert!("Z/3xZ/9".parse::<GroupSpec>().is_err());
        assert!("Z/2xZ/3".parse::<GroupSpec>().is_err());
        assert!("Q".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(z5(3).add(&z5(4)).unwrap(), z5(2));
        let z2 = GroupSpec::FreeRank2;
        let s = GroupElem::from_pair(z2, 1, 0).add(&GroupElem::from_pair(z2, 0, 1)).unwrap();
        assert_eq!(s, GroupElem::from_pair(z2, 1, 1));
        let x = GroupElem::from_pair(z2, -4, 9);
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_rejects_mixed_groups() {
        let e = z5(1).add(&GroupElem::from_i64(GroupSpec::FreeRank1, 1));
        assert!(matches!(e, Err(Error::SpecMismatch { .. })));
    }

    #[test]
    fn neg_examples() {
        assert_eq!(z5(2).neg(), z5(3));
        let z = GroupSpec::FreeRank1;
        assert_eq!(GroupElem::from_i64(z, 7).neg(), GroupElem::from_i64(z, -7));
        let pq = GroupSpec::CyclicPQ(3, 5);
        assert_eq!(GroupElem::from_pair(pq, 1, 2).neg(), GroupElem::from_pair(pq, 2, 3));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(z5(-1).coords()[0], big(4));
        assert_eq!(z5(12), z5(2));
    }

    #[test]
    fn rank_examples() {
        let z2 = GroupSpec::FreeRank2;
        assert_eq!(rank_of_span(z2, &[]).unwrap(), 0);
        let v = [GroupElem::from_pair(z2, 2, 0), GroupElem::from_pair(z2, 3, 0)];
        assert_eq!(rank_of_span(z2, &v).unwrap(), 1);
        let pq = GroupSpec::CyclicPQ(3, 5);
        let v = [GroupElem::from_pair(pq, 1, 0), GroupElem::from_pair(pq, 2, 0)];
        assert_eq!(rank_of_span(pq, &v).unwrap(), 1);
        assert_eq!(rank_of_span(pq, &[GroupElem::from_pair(pq, 1, 1)]).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_composite_modulus() {
        let z6 = GroupSpec::Cyclic(6);
        let r = rank_of_span(z6, &[GroupElem::from_i64(z6, 1)]);
        assert!(matches!(r, Err(Error::UnsupportedGroup { .. })));
    }

    #[test]
    fn prime_search() {
        assert_eq!(odd_prime_above(&big(4), None).unwrap(), 5);
        assert_eq!(odd_prime_above(&big(4), Some(5)).unwrap(), 7);
        assert_eq!(odd_prime_above(&big(0), None).unwrap(), 3);
        assert_eq!(odd_prime_above(&big(2), None).unwrap(), 3);
    }
}
