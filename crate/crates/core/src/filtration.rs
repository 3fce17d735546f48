//! Bounded sp-filtrations, bounded poset homomorphisms and the bijection
//! between them.
//!
//! A filtration `φ` is a decreasing integer-indexed family of upper sets that
//! is the whole poset at and below some `lo` and empty from some `hi` on.
//! The matching function sends a prime `p` to the unique `n` with
//! `p ∈ φ(n-1) \ φ(n)`; conversely `φ(n) = {p : f(p) > n}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{same_poset, PosetRef, Subset, UpperSet};

/// An increasing integer-valued function on a finite poset.
#[derive(Clone, Debug)]
pub struct PosetHom {
    poset: PosetRef,
    values: Vec<i64>,
}

impl PartialEq for PosetHom {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && same_poset(&self.poset, &other.poset)
    }
}

impl Eq for PosetHom {}

impl PosetHom {
    /// Values are given in element order.
    pub fn new(poset: &PosetRef, values: Vec<i64>) -> Result<Self> {
        if values.len() != poset.len() {
            let missing = poset.labels().get(values.len()).cloned().unwrap_or_default();
            return Err(Error::MissingValue(missing));
        }
        for &(a, b) in poset.covers() {
            if values[a] > values[b] {
                return Err(Error::NotIncreasing(
                    poset.label(a).to_string(),
                    poset.label(b).to_string(),
                ));
            }
        }
        Ok(PosetHom {
            poset: poset.clone(),
            values,
        })
    }

    /// Builds from `(label, value)` pairs naming each element exactly once.
    pub fn from_pairs<S: AsRef<str>>(poset: &PosetRef, pairs: &[(S, i64)]) -> Result<Self> {
        let mut values = vec![None; poset.len()];
        for (label, v) in pairs {
            let i = poset.index_of(label.as_ref())?;
            if values[i].replace(*v).is_some() {
                return Err(Error::DuplicateLabel(label.as_ref().to_string()));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingValue(poset.label(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        PosetHom::new(poset, values)
    }

    pub fn constant(poset: &PosetRef, c: i64) -> Self {
        PosetHom::new_unchecked(poset, vec![c; poset.len()])
    }

    pub(crate) fn new_unchecked(poset: &PosetRef, values: Vec<i64>) -> Self {
        PosetHom {
            poset: poset.clone(),
            values,
        }
    }

    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> i64 {
        self.values[i]
    }

    pub fn value_of(&self, label: &str) -> Result<i64> {
        Ok(self.values[self.poset.index_of(label)?])
    }

    pub fn min(&self) -> Option<i64> {
        self.values.iter().copied().min()
    }

    pub fn max(&self) -> Option<i64> {
        self.values.iter().copied().max()
    }

    /// `{p : f(p) > n}`, always an upper set.
    pub fn preimage_above(&self, n: i64) -> UpperSet {
        let members = (0..self.values.len()).filter(|&i| self.values[i] > n).collect();
        UpperSet::new_unchecked(&self.poset, members)
    }

    /// `label:value` pairs sorted by label and joined by `;`.
    pub fn sorted_key(&self) -> String {
        let mut pairs: Vec<(&str, i64)> = (0..self.values.len())
            .map(|i| (self.poset.label(i), self.values[i]))
            .collect();
        pairs.sort_unstable();
        pairs
            .iter()
            .map(|(l, v)| format!("{l}:{v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// `(g:0, p1:1, p2:0)` in element order.
impl fmt::Display for PosetHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", self.poset.label(i), v)?;
        }
        f.write_str(")")
    }
}

/// A poset homomorphism increasing by at most one along every cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TFunction(PosetHom);

impl TFunction {
    pub fn as_hom(&self) -> &PosetHom {
        &self.0
    }

    pub fn into_hom(self) -> PosetHom {
        self.0
    }
}

impl TryFrom<PosetHom> for TFunction {
    type Error = Error;

    fn try_from(f: PosetHom) -> Result<Self> {
        if let Some(&(a, b)) = f
            .poset
            .covers()
            .iter()
            .find(|&&(a, b)| f.values[b] > f.values[a] + 1)
        {
            return Err(Error::NotTFunction(
                f.poset.label(a).to_string(),
                f.poset.label(b).to_string(),
            ));
        }
        Ok(TFunction(f))
    }
}

pub fn is_t_function(f: &PosetHom) -> bool {
    f.poset
        .covers()
        .iter()
        .all(|&(a, b)| f.values[a] <= f.values[b] && f.values[b] <= f.values[a] + 1)
}

/// A bounded sp-filtration in normal form.
///
/// Only the window `[lo, hi - 1]` is stored: `lo` is the largest index whose
/// step is the whole poset and `hi` the smallest whose step is empty. On the
/// empty poset the unique filtration is stored with `lo = -1`, `hi = 0`.
#[derive(Clone, Debug)]
pub struct SpFiltration {
    poset: PosetRef,
    lo: i64,
    steps: Vec<Subset>,
}

impl PartialEq for SpFiltration {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.steps == other.steps && same_poset(&self.poset, &other.poset)
    }
}

impl Eq for SpFiltration {}

impl SpFiltration {
    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64
    }

    /// The step at any integer index.
    pub fn step(&self, n: i64) -> UpperSet {
        if n < self.lo {
            UpperSet::all(&self.poset)
        } else if n >= self.hi() {
            UpperSet::empty(&self.poset)
        } else {
            UpperSet::new_unchecked(&self.poset, self.steps[(n - self.lo) as usize].clone())
        }
    }

    pub(crate) fn step_ref(&self, n: i64) -> Option<&Subset> {
        if n < self.lo || n >= self.hi() {
            None
        } else {
            Some(&self.steps[(n - self.lo) as usize])
        }
    }

    /// The standard filtration: everything at `n <= -1`, nothing from `0` on.
    pub fn standard(poset: &PosetRef) -> Self {
        SpFiltration {
            poset: poset.clone(),
            lo: -1,
            steps: vec![poset.all()],
        }
    }

    /// Normalizes a contiguous run of steps starting at `start`; everything
    /// after the run is empty. Inputs must already be upper and decreasing
    /// with `steps[0]` the whole poset.
    pub(crate) fn from_run(poset: &PosetRef, start: i64, mut steps: Vec<Subset>) -> Self {
        let n = poset.len();
        if n == 0 {
            return SpFiltration::standard(poset);
        }
        while steps.last().is_some_and(|s| s.is_empty()) {
            steps.pop();
        }
        let leading_all = steps.iter().take_while(|s| s.len() == n).count();
        debug_assert!(leading_all >= 1);
        let drop = leading_all - 1;
        steps.drain(..drop);
        SpFiltration {
            poset: poset.clone(),
            lo: start + drop as i64,
            steps,
        }
    }

    /// Steps of the stored window `[lo, hi - 1]`.
    pub fn window(&self) -> impl Iterator<Item = (i64, UpperSet)> + '_ {
        (self.lo..self.hi()).map(move |n| (n, self.step(n)))
    }
}

/// One line per stored index: `<n>: <members>` with `@all` / `@empty`.
impl fmt::Display for SpFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, s) in self.window() {
            writeln!(f, "{n}: {s}")?;
        }
        Ok(())
    }
}

/// Validates and normalizes `(index, step)` data.
///
/// Indices below the smallest given one are taken to be the whole poset,
/// indices above the largest given one to be empty, and a gap between two
/// given indices repeats the step before it. The smallest given step must be
/// the whole poset.
pub fn make_filtration<S: AsRef<str>>(
    poset: &PosetRef,
    steps: &[(i64, Vec<S>)],
) -> Result<SpFiltration> {
    let mut resolved = Vec::with_capacity(steps.len());
    for (n, labels) in steps {
        resolved.push((*n, poset.subset(labels.iter().map(|l| l.as_ref()))?));
    }
    make_filtration_indices(poset, resolved)
}

pub fn make_filtration_indices(
    poset: &PosetRef,
    steps: Vec<(i64, Subset)>,
) -> Result<SpFiltration> {
    let mut map = BTreeMap::new();
    for (n, s) in steps {
        if map.insert(n, s).is_some() {
            return Err(Error::DuplicateIndex(n));
        }
    }
    for (&n, s) in &map {
        if !poset.is_upper(s) {
            return Err(Error::NotUpperSet(n));
        }
    }
    let (&start, first) = map
        .iter()
        .next()
        .ok_or_else(|| Error::NotBounded("no steps given".into()))?;
    let (&end, _) = map.iter().next_back().expect("nonempty");
    let mut run = Vec::with_capacity((end - start + 1) as usize);
    let mut prev = first.clone();
    for n in start..=end {
        let cur = map.get(&n).cloned().unwrap_or_else(|| prev.clone());
        if n > start && !cur.is_subset(&prev) {
            return Err(Error::NotDecreasing(n - 1));
        }
        prev = cur.clone();
        run.push(cur);
    }
    if run[0].len() != poset.len() {
        return Err(Error::NotBounded(format!(
            "lowest step {start} is not the whole poset"
        )));
    }
    Ok(SpFiltration::from_run(poset, start, run))
}

/// `p ↦` the unique `n` with `p ∈ φ(n-1) \ φ(n)`.
pub fn filtration_to_function(phi: &SpFiltration) -> PosetHom {
    // p lies in the first k stored steps exactly, so it drops out at lo + k.
    let values = (0..phi.poset.len())
        .map(|p| phi.lo + phi.steps.iter().take_while(|s| s.contains(&p)).count() as i64)
        .collect();
    PosetHom::new_unchecked(&phi.poset, values)
}

/// `n ↦ {p : f(p) > n}`.
pub fn function_to_filtration(f: &PosetHom) -> SpFiltration {
    let (Some(min), Some(max)) = (f.min(), f.max()) else {
        return SpFiltration::standard(&f.poset);
    };
    let lo = min - 1;
    let steps = (lo..max).map(|n| f.preimage_above(n).members().clone()).collect();
    SpFiltration {
        poset: f.poset.clone(),
        lo,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{generate_poset, height_function, Family};
    use std::sync::Arc;

    fn family(f: Family) -> PosetRef {
        Arc::new(generate_poset(f).unwrap())
    }

    fn none() -> Vec<&'static str> {
        Vec::new()
    }

    /// Oracle: scan indices for the unique `n` with `p ∈ φ(n-1) \ φ(n)`.
    fn scan(phi: &SpFiltration) -> Vec<i64> {
        (0..phi.poset().len())
            .map(|p| {
                let hits: Vec<i64> = (phi.lo() - 2..=phi.hi() + 2)
                    .filter(|&n| phi.step(n - 1).contains(p) && !phi.step(n).contains(p))
                    .collect();
                assert_eq!(hits.len(), 1);
                hits[0]
            })
            .collect()
    }

    #[test]
    fn standard_filtration_from_steps() {
        let c2 = family(Family::Chain(2));
        let phi = make_filtration(&c2, &[(-1, vec!["c0", "c1"]), (0, none())]).unwrap();
        assert_eq!(phi, SpFiltration::standard(&c2));
        assert_eq!(phi.to_string(), "-1: @all\n");
        assert_eq!(filtration_to_function(&phi), PosetHom::constant(&c2, 0));
    }

    #[test]
    fn non_upper_step() {
        let c2 = family(Family::Chain(2));
        let err = make_filtration(&c2, &[(-1, vec!["c0", "c1"]), (0, vec!["c0"])]).unwrap_err();
        assert_eq!(err, Error::NotUpperSet(0));
    }

    #[test]
    fn other_make_errors() {
        let f2 = family(Family::Fan(2));
        let e = make_filtration(&f2, &[(0, vec!["p1"]), (1, vec!["p1", "p2"])]).unwrap_err();
        assert_eq!(e, Error::NotDecreasing(0));
        let e = make_filtration(&f2, &[(0, vec!["p1"])]).unwrap_err();
        assert_eq!(e.name(), "NotBounded");
        let e = make_filtration::<&str>(&f2, &[]).unwrap_err();
        assert_eq!(e.name(), "NotBounded");
        let e = make_filtration(&f2, &[(0, none()), (0, none())]).unwrap_err();
        assert_eq!(e, Error::DuplicateIndex(0));
    }

    #[test]
    fn fan_filtration_window() {
        let f2 = family(Family::Fan(2));
        let phi = make_filtration(
            &f2,
            &[(0, vec!["g", "p1", "p2"]), (1, vec!["p1"]), (2, none())],
        )
        .unwrap();
        assert_eq!((phi.lo(), phi.hi()), (0, 2));
        assert_eq!(phi.to_string(), "0: @all\n1: p1\n");
    }

    #[test]
    fn normalization_trims_and_fills() {
        let c2 = family(Family::Chain(2));
        let all = vec!["c0", "c1"];
        let phi = make_filtration(
            &c2,
            &[(-3, all.clone()), (-1, all.clone()), (1, vec!["c1"]), (5, none())],
        )
        .unwrap();
        assert_eq!((phi.lo(), phi.hi()), (0, 5));
        assert_eq!(filtration_to_function(&phi).values(), &[1, 5]);
    }

    #[test]
    fn function_values_from_filtration() {
        let f2 = family(Family::Fan(2));
        let phi = make_filtration(&f2, &[(0, vec!["g", "p1", "p2"]), (1, vec!["p1"])]).unwrap();
        // frozen from the membership scan
        assert_eq!(scan(&phi), vec![1, 2, 1]);
        assert_eq!(filtration_to_function(&phi).values(), &[1, 2, 1]);

        let c3 = family(Family::Chain(3));
        let phi = make_filtration(
            &c3,
            &[(-1, vec!["c0", "c1", "c2"]), (0, vec!["c1", "c2"]), (1, vec!["c2"])],
        )
        .unwrap();
        assert_eq!(scan(&phi), vec![0, 1, 2]);
        assert_eq!(filtration_to_function(&phi).values(), &[0, 1, 2]);
    }

    #[test]
    fn filtration_from_function() {
        let c2 = family(Family::Chain(2));
        assert_eq!(
            function_to_filtration(&PosetHom::constant(&c2, 0)),
            SpFiltration::standard(&c2)
        );
        let f2 = family(Family::Fan(2));
        let f = PosetHom::from_pairs(&f2, &[("g", 0), ("p1", 1), ("p2", 0)]).unwrap();
        let phi = function_to_filtration(&f);
        let expected = make_filtration(&f2, &[(-1, vec!["g", "p1", "p2"]), (0, vec!["p1"])]).unwrap();
        assert_eq!(phi, expected);
    }

    #[test]
    fn decreasing_function_rejected() {
        let f1 = family(Family::Fan(1));
        let err = PosetHom::from_pairs(&f1, &[("g", 1), ("p1", 0)]).unwrap_err();
        assert_eq!(err.name(), "NotIncreasing");
        let err = PosetHom::from_pairs(&f1, &[("g", 1)]).unwrap_err();
        assert_eq!(err, Error::MissingValue("p1".into()));
    }

    #[test]
    fn t_function_recognition() {
        for f in [Family::Chain(4), Family::Fan(3)] {
            let p = family(f);
            assert!(is_t_function(&height_function(&p)));
            assert!(is_t_function(&PosetHom::constant(&p, -7)));
        }
        let c2 = family(Family::Chain(2));
        let jump = PosetHom::new(&c2, vec![0, 2]).unwrap();
        assert!(!is_t_function(&jump));
        assert_eq!(TFunction::try_from(jump).unwrap_err().name(), "NotTFunction");
    }

    #[test]
    fn empty_poset() {
        let empty: PosetRef = Arc::new(crate::poset::build_poset::<&str>(&[], &[]).unwrap());
        let f = PosetHom::new(&empty, vec![]).unwrap();
        assert!(is_t_function(&f));
        let phi = function_to_filtration(&f);
        assert_eq!(phi, SpFiltration::standard(&empty));
        assert_eq!(filtration_to_function(&phi), f);
    }
}
