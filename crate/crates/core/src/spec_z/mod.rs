//! Exact calculus on the spectrum of the integers, `{0} ∪ ℙ`.
//!
//! Subsets of ℙ are restricted to finite and cofinite ones, which form a
//! Boolean algebra with finite representations. A bounded increasing
//! function is stored as its value at the generic point plus a partition of
//! ℙ into finitely many value classes.

pub mod prime;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filtration::PosetHom;
use crate::poset::{generate_poset, Family, PosetRef, UpperSet};

pub use prime::is_prime;

/// A finite or cofinite set of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPrimeSet {
    cofinite: bool,
    support: BTreeSet<u64>,
}

fn check_primes<I: IntoIterator<Item = u64>>(it: I) -> Result<BTreeSet<u64>> {
    it.into_iter()
        .map(|p| {
            if is_prime(p) {
                Ok(p)
            } else {
                Err(Error::NotPrime(p.to_string()))
            }
        })
        .collect()
}

impl ZPrimeSet {
    /// Exactly the given primes.
    pub fn finite<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        Ok(ZPrimeSet {
            cofinite: false,
            support: check_primes(primes)?,
        })
    }

    /// Every prime except the given ones.
    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Result<Self> {
        Ok(ZPrimeSet {
            cofinite: true,
            support: check_primes(excluded)?,
        })
    }

    pub fn empty() -> Self {
        ZPrimeSet {
            cofinite: false,
            support: BTreeSet::new(),
        }
    }

    /// All of ℙ.
    pub fn primes() -> Self {
        ZPrimeSet {
            cofinite: true,
            support: BTreeSet::new(),
        }
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    /// The listed primes: the members when finite, the exclusions when
    /// cofinite.
    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.support.is_empty()
    }

    pub fn contains(&self, q: u64) -> bool {
        self.support.contains(&q) != self.cofinite
    }

    pub fn complement(&self) -> Self {
        ZPrimeSet {
            cofinite: !self.cofinite,
            support: self.support.clone(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.support, &other.support);
        match (self.cofinite, other.cofinite) {
            (false, false) => Self::raw(false, a.union(b)),
            (false, true) => Self::raw(true, b.difference(a)),
            (true, false) => Self::raw(true, a.difference(b)),
            (true, true) => Self::raw(true, a.intersection(b)),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.support, &other.support);
        match (self.cofinite, other.cofinite) {
            (false, false) => Self::raw(false, a.intersection(b)),
            (false, true) => Self::raw(false, a.difference(b)),
            (true, false) => Self::raw(false, b.difference(a)),
            (true, true) => Self::raw(true, a.union(b)),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    fn raw<'a, I: Iterator<Item = &'a u64>>(cofinite: bool, it: I) -> Self {
        ZPrimeSet {
            cofinite,
            support: it.copied().collect(),
        }
    }
}

/// `{2,3}` for a finite set, `~{2,3}` for everything but 2 and 3.
impl fmt::Display for ZPrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.support.iter().map(u64::to_string).collect();
        let tilde = if self.cofinite { "~" } else { "" };
        write!(f, "{tilde}{{{}}}", list.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZSetOp {
    Union,
    Intersect,
    /// Unary; the second operand is ignored.
    Complement,
    Symdiff,
}

impl std::str::FromStr for ZSetOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "union" => Ok(ZSetOp::Union),
            "intersect" => Ok(ZSetOp::Intersect),
            "complement" => Ok(ZSetOp::Complement),
            "symdiff" => Ok(ZSetOp::Symdiff),
            other => Err(Error::Parse {
                line: 1,
                msg: format!("unknown set operation `{other}`"),
            }),
        }
    }
}

pub fn zset_algebra(op: ZSetOp, a: &ZPrimeSet, b: &ZPrimeSet) -> ZPrimeSet {
    match op {
        ZSetOp::Union => a.union(b),
        ZSetOp::Intersect => a.intersection(b),
        ZSetOp::Complement => a.complement(),
        ZSetOp::Symdiff => a.symmetric_difference(b),
    }
}

/// A specialisation-closed subset of Spec(ℤ): either everything, or a set
/// of closed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZUpperSet {
    Whole,
    Primes(ZPrimeSet),
}

impl fmt::Display for ZUpperSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZUpperSet::Whole => f.write_str("@all"),
            ZUpperSet::Primes(s) => s.fmt(f),
        }
    }
}

/// A bounded increasing function on Spec(ℤ).
///
/// Normal form: classes are nonempty, pairwise disjoint, cover ℙ, carry
/// distinct values at least `v0`, and are sorted by value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPosetHom {
    v0: i64,
    classes: Vec<(i64, ZPrimeSet)>,
}

impl ZPosetHom {
    pub fn new(v0: i64, classes: Vec<(i64, ZPrimeSet)>) -> Result<Self> {
        let mut merged: Vec<(i64, ZPrimeSet)> = Vec::new();
        let mut covered = ZPrimeSet::empty();
        let mut sorted = classes;
        sorted.sort_by_key(|c| c.0);
        for (v, set) in sorted {
            if set.is_empty() {
                continue;
            }
            if v < v0 {
                return Err(Error::InvalidHom(format!(
                    "class value {v} lies below the generic value {v0}"
                )));
            }
            if !covered.is_disjoint(&set) {
                return Err(Error::InvalidHom(format!(
                    "classes overlap on {}",
                    covered.intersection(&set)
                )));
            }
            covered = covered.union(&set);
            match merged.last_mut() {
                Some((lv, lset)) if *lv == v => *lset = lset.union(&set),
                _ => merged.push((v, set)),
            }
        }
        if covered != ZPrimeSet::primes() {
            return Err(Error::InvalidHom(format!(
                "classes miss the primes {}",
                covered.complement()
            )));
        }
        Ok(ZPosetHom {
            v0,
            classes: merged,
        })
    }

    pub fn constant(v: i64) -> Self {
        ZPosetHom {
            v0: v,
            classes: vec![(v, ZPrimeSet::primes())],
        }
    }

    /// Value at the generic point `0`.
    pub fn generic_value(&self) -> i64 {
        self.v0
    }

    pub fn classes(&self) -> &[(i64, ZPrimeSet)] {
        &self.classes
    }

    pub fn value_at(&self, q: u64) -> Result<i64> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q.to_string()));
        }
        Ok(self
            .classes
            .iter()
            .find(|(_, s)| s.contains(q))
            .map(|c| c.0)
            .expect("classes cover every prime"))
    }

    /// The `(n, U)` pair when this is a t-function.
    pub fn as_t_function(&self) -> Option<ZTFunction> {
        if !is_z_tfunction(self) {
            return None;
        }
        let u = self
            .classes
            .iter()
            .find(|c| c.0 == self.v0 + 1)
            .map(|c| c.1.clone())
            .unwrap_or_else(ZPrimeSet::empty);
        Some(ZTFunction { n: self.v0, u })
    }
}

/// `0:<v0>; <value>:<set>; ...`
impl fmt::Display for ZPosetHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0:{}", self.v0)?;
        for (v, s) in &self.classes {
            write!(f, "; {v}:{s}")?;
        }
        Ok(())
    }
}

/// A bounded t-function on Spec(ℤ), as the pair `(ψ(0), ψ⁻¹(ψ(0)+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZTFunction {
    pub n: i64,
    pub u: ZPrimeSet,
}

impl ZTFunction {
    pub fn new(n: i64, u: ZPrimeSet) -> Self {
        ZTFunction { n, u }
    }

    pub fn to_hom(&self) -> ZPosetHom {
        ZPosetHom::new(
            self.n,
            vec![(self.n, self.u.complement()), (self.n + 1, self.u.clone())],
        )
        .expect("complementary classes")
    }
}

impl From<&ZTFunction> for ZPosetHom {
    fn from(t: &ZTFunction) -> Self {
        t.to_hom()
    }
}

/// `(n, {2,3})`
impl fmt::Display for ZTFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.u)
    }
}

/// Right mutation: one more on `w`, which is always specialisation-closed.
pub fn mutate_z(h: &ZPosetHom, w: &ZUpperSet) -> ZPosetHom {
    match w {
        ZUpperSet::Whole => ZPosetHom {
            v0: h.v0 + 1,
            classes: h.classes.iter().map(|(v, s)| (v + 1, s.clone())).collect(),
        },
        ZUpperSet::Primes(w) => {
            let split = h
                .classes
                .iter()
                .flat_map(|(v, s)| [(*v, s.difference(w)), (v + 1, s.intersection(w))])
                .collect();
            ZPosetHom::new(h.v0, split).expect("splitting a partition keeps it a partition")
        }
    }
}

pub fn is_z_tfunction(h: &ZPosetHom) -> bool {
    h.classes.iter().all(|c| c.0 == h.v0 || c.0 == h.v0 + 1)
}

fn check_prime_list(primes: &[u64]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if !seen.insert(p) {
            return Err(Error::DuplicateLabel(p.to_string()));
        }
    }
    Ok(())
}

fn truncated_fan(primes: &[u64]) -> Result<PosetRef> {
    check_prime_list(primes)?;
    Ok(Arc::new(generate_poset(Family::Fan(primes.len() as i64))?))
}

/// Restriction to the fan `g < p1, ..., pk` where `p_i` stands for
/// `primes[i - 1]` and `g` for the generic point.
pub fn truncate_z(h: &ZPosetHom, primes: &[u64]) -> Result<PosetHom> {
    let poset = truncated_fan(primes)?;
    let mut values = vec![h.v0];
    for &q in primes {
        values.push(h.value_at(q)?);
    }
    PosetHom::new(&poset, values)
}

/// The matching restriction of a specialisation-closed set.
pub fn truncate_zupper(w: &ZUpperSet, primes: &[u64]) -> Result<UpperSet> {
    let poset = truncated_fan(primes)?;
    match w {
        ZUpperSet::Whole => Ok(UpperSet::all(&poset)),
        ZUpperSet::Primes(s) => {
            let members = primes
                .iter()
                .enumerate()
                .filter(|(_, &q)| s.contains(q))
                .map(|(i, _)| i + 1)
                .collect();
            UpperSet::new(&poset, members)
        }
    }
}

fn parse_u64_list(body: &str) -> Result<Vec<u64>> {
    let body = body.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .unwrap_or(body);
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("`{t}` is not a non-negative integer"),
            })
        })
        .collect()
}

/// Parses `2,3,5`, `~2,3` (all primes but 2 and 3), `@empty`, or the
/// displayed forms `{2,3}` / `~{2,3}`.
pub fn parse_prime_set(text: &str) -> Result<ZPrimeSet> {
    let t = text.trim();
    if t == "@empty" {
        return Ok(ZPrimeSet::empty());
    }
    if t == "@all" {
        return Err(Error::Parse {
            line: 1,
            msg: "`@all` denotes the whole spectrum, not a set of primes (use `~` for all primes)"
                .into(),
        });
    }
    match t.strip_prefix('~') {
        Some(rest) => ZPrimeSet::cofinite(parse_u64_list(rest)?),
        None => ZPrimeSet::finite(parse_u64_list(t)?),
    }
}

/// Like [`parse_prime_set`], plus `@all` for the whole spectrum.
pub fn parse_upper_set(text: &str) -> Result<ZUpperSet> {
    if text.trim() == "@all" {
        Ok(ZUpperSet::Whole)
    } else {
        parse_prime_set(text).map(ZUpperSet::Primes)
    }
}

/// Parses the displayed form `0:<v0>; <value>:<set>; ...`.
pub fn parse_zhom(text: &str) -> Result<ZPosetHom> {
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let mut parts = text.split(';').map(str::trim).filter(|p| !p.is_empty());
    let head = parts.next().ok_or_else(|| bad("empty function".into()))?;
    let v0 = head
        .strip_prefix("0:")
        .and_then(|v| v.trim().parse::<i64>().ok())
        .ok_or_else(|| bad(format!("expected `0:<value>` first, got `{head}`")))?;
    let mut classes = Vec::new();
    for part in parts {
        let (v, set) = part
            .split_once(':')
            .ok_or_else(|| bad(format!("expected `<value>:<set>`, got `{part}`")))?;
        let v = v
            .trim()
            .parse::<i64>()
            .map_err(|_| bad(format!("`{v}` is not an integer")))?;
        classes.push((v, parse_prime_set(set)?));
    }
    ZPosetHom::new(v0, classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: &[u64]) -> ZPrimeSet {
        ZPrimeSet::finite(v.iter().copied()).unwrap()
    }

    fn cof(v: &[u64]) -> ZPrimeSet {
        ZPrimeSet::cofinite(v.iter().copied()).unwrap()
    }

    fn small_primes() -> Vec<u64> {
        (2..=20).filter(|&n| is_prime(n)).collect()
    }

    #[test]
    fn algebra_examples() {
        assert_eq!(zset_algebra(ZSetOp::Union, &fin(&[2, 3]), &fin(&[3, 5])), fin(&[2, 3, 5]));
        assert_eq!(zset_algebra(ZSetOp::Complement, &fin(&[2]), &fin(&[])), cof(&[2]));
        let meet = zset_algebra(ZSetOp::Intersect, &cof(&[2, 3]), &fin(&[3, 5]));
        // membership oracle over primes <= 20
        let members: Vec<u64> = small_primes()
            .into_iter()
            .filter(|&q| !(q == 2 || q == 3) && (q == 3 || q == 5))
            .collect();
        assert_eq!(members, [5]);
        assert_eq!(meet, fin(&[5]));
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(ZPrimeSet::finite([2, 4]).unwrap_err(), Error::NotPrime("4".into()));
        assert_eq!(ZPrimeSet::cofinite([1]).unwrap_err().name(), "NotPrime");
    }

    #[test]
    fn parsing_sets() {
        assert_eq!(parse_prime_set("2,3,5").unwrap(), fin(&[2, 3, 5]));
        assert_eq!(parse_prime_set("~2,3").unwrap(), cof(&[2, 3]));
        assert_eq!(parse_prime_set("@empty").unwrap(), ZPrimeSet::empty());
        assert_eq!(parse_prime_set("~").unwrap(), ZPrimeSet::primes());
        assert_eq!(parse_prime_set("~{2,3}").unwrap(), cof(&[2, 3]));
        assert_eq!(parse_upper_set("@all").unwrap(), ZUpperSet::Whole);
        assert!(parse_prime_set("@all").is_err());
        assert_eq!(parse_prime_set("2,9").unwrap_err().name(), "NotPrime");
    }

    #[test]
    fn hom_normal_form() {
        let h = ZPosetHom::new(0, vec![(1, fin(&[2])), (0, cof(&[2, 3])), (1, fin(&[3]))]).unwrap();
        assert_eq!(h.classes(), &[(0, cof(&[2, 3])), (1, fin(&[2, 3]))]);
        assert_eq!(h.to_string(), "0:0; 0:~{2,3}; 1:{2,3}");
        assert_eq!(parse_zhom(&h.to_string()).unwrap(), h);

        let overlap = ZPosetHom::new(0, vec![(0, cof(&[])), (1, fin(&[2]))]);
        assert_eq!(overlap.unwrap_err().name(), "InvalidHom");
        let gap = ZPosetHom::new(0, vec![(0, cof(&[2]))]);
        assert_eq!(gap.unwrap_err().name(), "InvalidHom");
        let below = ZPosetHom::new(0, vec![(-1, cof(&[]))]);
        assert_eq!(below.unwrap_err().name(), "InvalidHom");
    }

    #[test]
    fn mutation_cases() {
        let t = ZTFunction::new(0, fin(&[2])).to_hom();
        let disjoint = mutate_z(&t, &ZUpperSet::Primes(fin(&[3])));
        assert_eq!(disjoint.classes(), &[(0, cof(&[2, 3])), (1, fin(&[2, 3]))]);
        assert_eq!(disjoint.as_t_function(), Some(ZTFunction::new(0, fin(&[2, 3]))));

        let overlap = mutate_z(&t, &ZUpperSet::Primes(fin(&[2])));
        assert_eq!(overlap.classes(), &[(0, cof(&[2])), (2, fin(&[2]))]);
        assert!(!is_z_tfunction(&overlap));
        assert_eq!(overlap.as_t_function(), None);

        let whole = mutate_z(&t, &ZUpperSet::Whole);
        assert_eq!(whole.as_t_function(), Some(ZTFunction::new(1, fin(&[2]))));

        assert_eq!(mutate_z(&t, &ZUpperSet::Primes(ZPrimeSet::empty())), t);
    }

    #[test]
    fn t_function_checks() {
        let t = ZTFunction::new(3, cof(&[2, 3]));
        assert!(is_z_tfunction(&t.to_hom()));
        assert_eq!(t.to_hom().as_t_function(), Some(t));
        assert!(is_z_tfunction(&ZPosetHom::constant(4)));
        let jump = ZPosetHom::new(0, vec![(0, cof(&[7])), (2, fin(&[7]))]).unwrap();
        assert!(!is_z_tfunction(&jump));
    }

    #[test]
    fn truncation() {
        let t = ZTFunction::new(0, fin(&[2])).to_hom();
        let f = truncate_z(&t, &[2, 3]).unwrap();
        assert_eq!(f.values(), &[0, 1, 0]);
        assert_eq!(f.poset().labels(), &["g", "p1", "p2"]);
        let c = truncate_z(&ZPosetHom::constant(5), &[5, 7, 11]).unwrap();
        assert_eq!(c.values(), &[5, 5, 5, 5]);
        assert_eq!(truncate_z(&t, &[2, 4]).unwrap_err().name(), "NotPrime");
        assert_eq!(truncate_z(&t, &[2, 2]).unwrap_err().name(), "DuplicateLabel");

        let w = ZUpperSet::Primes(fin(&[3]));
        let left = truncate_z(&mutate_z(&t, &w), &[2, 3]).unwrap();
        let right = crate::mutation::mutate_function(&f, &truncate_zupper(&w, &[2, 3]).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.values(), &[0, 1, 1]);
    }
}
