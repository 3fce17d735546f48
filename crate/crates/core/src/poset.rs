//! Finite posets standing in for prime spectra, and their upper sets.
//!
//! Elements are opaque labels; `a < b` reads "the prime `a` is contained in
//! the prime `b`". Upper sets are therefore exactly the
//! specialisation-closed subsets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filtration::PosetHom;

/// Largest poset for which upper sets are enumerated.
pub const MAX_ENUMERATION_SIZE: usize = 20;

/// Shared handle to a poset. Every derived value keeps one.
pub type PosetRef = Arc<PrimePoset>;

/// Index-based subset of a poset's elements.
pub type Subset = BTreeSet<usize>;

/// A finite partially ordered set of prime labels.
#[derive(Clone, Debug)]
pub struct PrimePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // leq[a][b] <=> a <= b, transitively closed
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    linear: Vec<usize>,
}

impl PartialEq for PrimePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}

impl Eq for PrimePoset {}

pub(crate) fn same_poset(a: &PosetRef, b: &PosetRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::EmptyLabel);
    }
    if !label
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
    {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

/// Builds a poset from element labels and a generating set of strict
/// relations `(a, b)` meaning `a < b`.
///
/// The relation list need not be transitively closed or reduced.
pub fn build_poset<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<PrimePoset> {
    let mut labels = Vec::with_capacity(elements.len());
    let mut index = HashMap::with_capacity(elements.len());
    for e in elements {
        let e = e.as_ref();
        validate_label(e)?;
        if index.insert(e.to_string(), labels.len()).is_some() {
            return Err(Error::DuplicateLabel(e.to_string()));
        }
        labels.push(e.to_string());
    }
    let n = labels.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in relations {
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
        leq[a][b] = true;
    }
    // Warshall
    for k in 0..n {
        let row_k = leq[k].clone();
        for row in leq.iter_mut().filter(|row| row[k]) {
            for (cell, &via) in row.iter_mut().zip(&row_k) {
                *cell |= via;
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if leq[i][j] && leq[j][i] {
                return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Ok(PrimePoset::from_closed(labels, index, leq))
}

impl PrimePoset {
    fn from_closed(labels: Vec<String>, index: HashMap<String, usize>, leq: Vec<Vec<bool>>) -> Self {
        let n = labels.len();
        let lt = |a: usize, b: usize| a != b && leq[a][b];
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up[a].push(b);
            down[b].push(a);
        }
        // Sorting by the number of elements strictly below gives a linear extension.
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&b| ((0..n).filter(|&a| lt(a, b)).count(), b));
        PrimePoset {
            labels,
            index,
            leq,
            covers,
            up,
            down,
            linear,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `a <= b` in the partial order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Covering pairs `(a, b)` with `a ⋖ b`, ordered by `(a, b)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covering `a`.
    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    /// A linear extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn all(&self) -> Subset {
        (0..self.len()).collect()
    }

    /// Resolves labels to indices.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels
            .into_iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect()
    }

    /// Whether an index subset is upward closed. Checking covers suffices.
    pub fn is_upper(&self, subset: &Subset) -> bool {
        subset
            .iter()
            .all(|&p| self.up[p].iter().all(|q| subset.contains(q)))
    }

    pub fn closure(&self, subset: &Subset) -> Subset {
        let mut out = subset.clone();
        let mut stack: Vec<usize> = subset.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &q in &self.up[p] {
                if out.insert(q) {
                    stack.push(q);
                }
            }
        }
        out
    }

    /// Length of the longest chain in the poset (0 for an empty poset).
    pub fn krull_dimension(&self) -> i64 {
        self.heights().into_iter().max().unwrap_or(0)
    }

    fn heights(&self) -> Vec<i64> {
        let mut h = vec![0i64; self.len()];
        for &q in &self.linear {
            h[q] = self.down[q].iter().map(|&p| h[p] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Comma-joined labels of `subset`, sorted by label.
    pub fn format_subset(&self, subset: &Subset) -> String {
        let mut names: Vec<&str> = subset.iter().map(|&i| self.label(i)).collect();
        names.sort_unstable();
        names.join(",")
    }
}

/// Standard poset families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `c0 < c1 < ... < c(n-1)`.
    Chain(i64),
    /// One minimal `g` below pairwise incomparable `p1..pk`: the spectrum of
    /// the integers truncated to `k` primes.
    Fan(i64),
}

pub fn generate_poset(family: Family) -> Result<PrimePoset> {
    match family {
        Family::Chain(n) => {
            if n < 1 {
                return Err(Error::InvalidSize(format!("chain length must be >= 1, got {n}")));
            }
            let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
            let rels: Vec<(String, String)> = labels
                .windows(2)
                .map(|w| (w[0].clone(), w[1].clone()))
                .collect();
            build_poset(&labels, &rels)
        }
        Family::Fan(k) => {
            if k < 0 {
                return Err(Error::InvalidSize(format!("fan width must be >= 0, got {k}")));
            }
            let mut labels = vec!["g".to_string()];
            labels.extend((1..=k).map(|i| format!("p{i}")));
            let rels: Vec<(String, String)> = labels[1..]
                .iter()
                .map(|p| ("g".to_string(), p.clone()))
                .collect();
            build_poset(&labels, &rels)
        }
    }
}

/// A specialisation-closed (upward closed) subset of a poset.
#[derive(Clone, Debug)]
pub struct UpperSet {
    poset: PosetRef,
    members: Subset,
}

impl PartialEq for UpperSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_poset(&self.poset, &other.poset)
    }
}

impl Eq for UpperSet {}

impl UpperSet {
    /// Validates an index subset. Returns `NotMutable` naming the subset
    /// when it is not upward closed.
    pub fn new(poset: &PosetRef, members: Subset) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&i| i >= poset.len()) {
            return Err(Error::UnknownLabel(format!("#{bad}")));
        }
        if !poset.is_upper(&members) {
            return Err(Error::NotMutable(poset.format_subset(&members)));
        }
        Ok(UpperSet {
            poset: poset.clone(),
            members,
        })
    }

    pub fn from_labels<I, S>(poset: &PosetRef, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let members = poset.subset(labels)?;
        UpperSet::new(poset, members)
    }

    pub(crate) fn new_unchecked(poset: &PosetRef, members: Subset) -> Self {
        debug_assert!(poset.is_upper(&members));
        UpperSet {
            poset: poset.clone(),
            members,
        }
    }

    pub fn empty(poset: &PosetRef) -> Self {
        Self::new_unchecked(poset, Subset::new())
    }

    pub fn all(poset: &PosetRef) -> Self {
        Self::new_unchecked(poset, poset.all())
    }

    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.members.len() == self.poset.len()
    }

    /// Member labels in sorted order.
    pub fn labels(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.members.iter().map(|&i| self.poset.label(i)).collect();
        v.sort_unstable();
        v
    }

    pub fn union(&self, other: &UpperSet) -> Result<UpperSet> {
        self.check_same(other)?;
        Ok(Self::new_unchecked(
            &self.poset,
            self.members.union(&other.members).copied().collect(),
        ))
    }

    pub fn intersection(&self, other: &UpperSet) -> Result<UpperSet> {
        self.check_same(other)?;
        Ok(Self::new_unchecked(
            &self.poset,
            self.members.intersection(&other.members).copied().collect(),
        ))
    }

    fn check_same(&self, other: &UpperSet) -> Result<()> {
        if same_poset(&self.poset, &other.poset) {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }
}

/// `@empty` for the empty set, `@all` for the whole poset, else the sorted
/// comma list of member labels.
impl fmt::Display for UpperSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("@empty")
        } else if self.is_all() {
            f.write_str("@all")
        } else {
            f.write_str(&self.poset.format_subset(&self.members))
        }
    }
}

pub fn is_upper_set<I, S>(poset: &PrimePoset, subset: I) -> Result<bool>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    Ok(poset.is_upper(&poset.subset(subset)?))
}

pub fn upper_closure<I, S>(poset: &PosetRef, subset: I) -> Result<UpperSet>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let s = poset.subset(subset)?;
    Ok(UpperSet::new_unchecked(poset, poset.closure(&s)))
}

/// All upper sets, sorted by cardinality and then by the sorted list of
/// member labels.
pub fn enumerate_upper_sets(poset: &PosetRef) -> Result<Vec<UpperSet>> {
    let n = poset.len();
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge(format!(
            "upper-set enumeration is limited to {MAX_ENUMERATION_SIZE} elements, poset has {n}"
        )));
    }
    let up_masks: Vec<u32> = (0..n)
        .map(|p| poset.upper_covers(p).iter().fold(0u32, |m, &q| m | 1 << q))
        .collect();
    // Walk from the top of a linear extension down: an element may join
    // only if everything covering it already has.
    let order: Vec<usize> = poset.linear_extension().iter().rev().copied().collect();
    let mut masks = Vec::new();
    let mut stack = vec![(0usize, 0u32)];
    while let Some((depth, mask)) = stack.pop() {
        if depth == order.len() {
            masks.push(mask);
            continue;
        }
        let p = order[depth];
        stack.push((depth + 1, mask));
        if up_masks[p] & !mask == 0 {
            stack.push((depth + 1, mask | 1 << p));
        }
    }

    let mut by_label: Vec<usize> = (0..n).collect();
    by_label.sort_by(|&a, &b| poset.label(a).cmp(poset.label(b)));
    let mut keyed: Vec<(Vec<usize>, u32)> = masks
        .into_iter()
        .map(|m| {
            let key: Vec<usize> = (0..n).filter(|&r| m >> by_label[r] & 1 == 1).collect();
            (key, m)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(keyed
        .into_iter()
        .map(|(_, m)| {
            UpperSet::new_unchecked(poset, (0..n).filter(|&i| m >> i & 1 == 1).collect())
        })
        .collect())
}

/// Each element mapped to the length of the longest chain below it.
pub fn height_function(poset: &PosetRef) -> PosetHom {
    PosetHom::new_unchecked(poset, poset.heights())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(p: PrimePoset) -> PosetRef {
        Arc::new(p)
    }

    #[test]
    fn chain_from_relations() {
        let p = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn redundant_relations_are_reduced() {
        let p = build_poset(&["a", "b", "c"], &[("a", "c"), ("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn cycle_is_rejected() {
        let err = build_poset(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err.name(), "CycleDetected");
        let err = build_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        assert_eq!(err.name(), "CycleDetected");
    }

    #[test]
    fn bad_labels() {
        assert_eq!(
            build_poset(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            build_poset(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
        assert_eq!(build_poset(&[""], &[]).unwrap_err(), Error::EmptyLabel);
        assert_eq!(build_poset(&["a b"], &[]).unwrap_err().name(), "InvalidLabel");
    }

    #[test]
    fn fan_poset() {
        let p = build_poset(&["g", "p", "q"], &[("g", "p"), ("g", "q")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (0, 2)]);
        assert!(!p.leq(1, 2) && !p.leq(2, 1));
    }

    #[test]
    fn generated_families() {
        let c1 = generate_poset(Family::Chain(1)).unwrap();
        assert_eq!(c1.len(), 1);
        assert!(c1.covers().is_empty());
        let f2 = generate_poset(Family::Fan(2)).unwrap();
        assert_eq!(f2.labels(), &["g", "p1", "p2"]);
        assert_eq!(f2.covers(), &[(0, 1), (0, 2)]);
        let f0 = generate_poset(Family::Fan(0)).unwrap();
        assert_eq!(f0.labels(), &["g"]);
        assert_eq!(generate_poset(Family::Chain(0)).unwrap_err().name(), "InvalidSize");
        assert_eq!(generate_poset(Family::Fan(-1)).unwrap_err().name(), "InvalidSize");
    }

    #[test]
    fn upper_set_checks() {
        let f2 = generate_poset(Family::Fan(2)).unwrap();
        assert!(is_upper_set(&f2, ["p1"]).unwrap());
        assert!(!is_upper_set(&f2, ["g"]).unwrap());
        assert!(is_upper_set(&f2, Vec::<&str>::new()).unwrap());
        assert_eq!(is_upper_set(&f2, ["x"]).unwrap_err().name(), "UnknownLabel");
    }

    #[test]
    fn closures() {
        let f2 = arc(generate_poset(Family::Fan(2)).unwrap());
        assert_eq!(upper_closure(&f2, ["g"]).unwrap().labels(), ["g", "p1", "p2"]);
        let c3 = arc(generate_poset(Family::Chain(3)).unwrap());
        assert_eq!(upper_closure(&c3, ["c1"]).unwrap().labels(), ["c1", "c2"]);
        assert!(upper_closure(&c3, Vec::<&str>::new()).unwrap().is_empty());
    }

    #[test]
    fn enumeration_small_cases() {
        let show = |p: &PosetRef| -> Vec<String> {
            enumerate_upper_sets(p)
                .unwrap()
                .iter()
                .map(|u| u.labels().join(","))
                .collect()
        };
        let c2 = arc(generate_poset(Family::Chain(2)).unwrap());
        assert_eq!(show(&c2), ["", "c1", "c0,c1"]);
        let f2 = arc(generate_poset(Family::Fan(2)).unwrap());
        assert_eq!(show(&f2), ["", "p1", "p2", "p1,p2", "g,p1,p2"]);
        let f0 = arc(generate_poset(Family::Fan(0)).unwrap());
        assert_eq!(show(&f0), ["", "g"]);
    }

    #[test]
    fn enumeration_guard() {
        let big = arc(generate_poset(Family::Chain(21)).unwrap());
        assert_eq!(enumerate_upper_sets(&big).unwrap_err().name(), "TooLarge");
        let ok = arc(generate_poset(Family::Chain(20)).unwrap());
        assert_eq!(enumerate_upper_sets(&ok).unwrap().len(), 21);
    }

    #[test]
    fn heights() {
        let f2 = arc(generate_poset(Family::Fan(2)).unwrap());
        assert_eq!(height_function(&f2).values(), &[0, 1, 1]);
        let c3 = arc(generate_poset(Family::Chain(3)).unwrap());
        assert_eq!(height_function(&c3).values(), &[0, 1, 2]);
        assert_eq!(c3.krull_dimension(), 2);
        let f0 = arc(generate_poset(Family::Fan(0)).unwrap());
        assert_eq!(height_function(&f0).values(), &[0]);
    }

    #[test]
    fn display_abbreviations() {
        let f2 = arc(generate_poset(Family::Fan(2)).unwrap());
        assert_eq!(UpperSet::empty(&f2).to_string(), "@empty");
        assert_eq!(UpperSet::all(&f2).to_string(), "@all");
        assert_eq!(UpperSet::from_labels(&f2, ["p2", "p1"]).unwrap().to_string(), "p1,p2");
    }
}
