//! Right mutation of poset homomorphisms and sp-filtrations at
//! specialisation-closed subsets, and the decomposition of any bounded
//! homomorphism into iterated mutations of a constant one.

use std::fmt;

use crate::error::{Error, Result};
use crate::filtration::{PosetHom, SpFiltration};
use crate::poset::{same_poset, PosetRef, PrimePoset, Subset, UpperSet};

/// A constant starting function and a list of subsets to mutate at, in order.
#[derive(Clone, Debug)]
pub struct MutationSequence {
    poset: PosetRef,
    base: i64,
    steps: Vec<Subset>,
}

impl PartialEq for MutationSequence {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.steps == other.steps && same_poset(&self.poset, &other.poset)
    }
}

impl Eq for MutationSequence {}

impl MutationSequence {
    /// Steps are not validated here; [`apply_mutation_sequence`] rejects
    /// the first one that is not upward closed.
    pub fn new(poset: &PosetRef, base: i64, steps: Vec<Subset>) -> Self {
        MutationSequence {
            poset: poset.clone(),
            base,
            steps,
        }
    }

    pub fn from_labels<S: AsRef<str>>(poset: &PosetRef, base: i64, steps: &[Vec<S>]) -> Result<Self> {
        let steps = steps
            .iter()
            .map(|s| poset.subset(s.iter().map(|l| l.as_ref())))
            .collect::<Result<_>>()?;
        Ok(Self::new(poset, base, steps))
    }

    pub fn poset(&self) -> &PosetRef {
        &self.poset
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn steps(&self) -> &[Subset] {
        &self.steps
    }
}

/// `base: <n>` followed by one sorted comma list per step.
impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base: {}", self.base)?;
        for s in &self.steps {
            if s.len() == self.poset.len() {
                writeln!(f, "@all")?;
            } else {
                writeln!(f, "{}", self.poset.format_subset(s))?;
            }
        }
        Ok(())
    }
}

/// A right mutation at `labels` exists iff they form an upper set.
pub fn check_mutability<I, S>(poset: &PrimePoset, labels: I) -> Result<bool>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    crate::poset::is_upper_set(poset, labels)
}

/// Adds one on `w`, leaves everything else alone.
pub fn mutate_function(psi: &PosetHom, w: &UpperSet) -> Result<PosetHom> {
    if !same_poset(psi.poset(), w.poset()) {
        return Err(Error::PosetMismatch);
    }
    let values = psi
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| if w.contains(i) { v + 1 } else { v })
        .collect();
    Ok(PosetHom::new_unchecked(psi.poset(), values))
}

/// [`mutate_function`] at a raw label set, which must be upward closed.
pub fn mutate_function_at<I, S>(psi: &PosetHom, labels: I) -> Result<PosetHom>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let w = UpperSet::from_labels(psi.poset(), labels)?;
    mutate_function(psi, &w)
}

/// `n ↦ (W ∩ φ(n-1)) ∪ φ(n)`.
pub fn mutate_filtration(phi: &SpFiltration, w: &UpperSet) -> Result<SpFiltration> {
    let poset = phi.poset();
    if !same_poset(poset, w.poset()) {
        return Err(Error::PosetMismatch);
    }
    let all = poset.all();
    let empty = Subset::new();
    let at = |n: i64| -> &Subset {
        if n < phi.lo() {
            &all
        } else {
            phi.step_ref(n).unwrap_or(&empty)
        }
    };
    // Below lo the result is everything; above hi it is empty.
    let run = (phi.lo()..=phi.hi())
        .map(|n| {
            let mut s: Subset = w.members().intersection(at(n - 1)).copied().collect();
            s.extend(at(n));
            s
        })
        .collect();
    Ok(SpFiltration::from_run(poset, phi.lo(), run))
}

/// Slices `ψ` into `W_n = {p : ψ(p) > n}` for `n = min ψ .. max ψ - 1`.
pub fn decompose_to_mutations(psi: &PosetHom) -> Result<MutationSequence> {
    let (Some(min), Some(max)) = (psi.min(), psi.max()) else {
        return Err(Error::EmptyPoset);
    };
    let steps = (min..max)
        .map(|n| psi.preimage_above(n).members().clone())
        .collect();
    Ok(MutationSequence::new(psi.poset(), min, steps))
}

/// Folds [`mutate_function`] over the steps, starting from the constant
/// base function.
pub fn apply_mutation_sequence(seq: &MutationSequence) -> Result<PosetHom> {
    let mut f = PosetHom::constant(&seq.poset, seq.base);
    for (i, s) in seq.steps.iter().enumerate() {
        let w = UpperSet::new(&seq.poset, s.clone()).map_err(|e| match e {
            Error::NotMutable(_) => Error::NotMutableStep(i),
            other => other,
        })?;
        f = mutate_function(&f, &w)?;
    }
    Ok(f)
}

/// Undoes one recorded right mutation: subtracts one on `w`.
pub fn invert_mutation(psi: &PosetHom, w: &UpperSet) -> Result<PosetHom> {
    if !same_poset(psi.poset(), w.poset()) {
        return Err(Error::PosetMismatch);
    }
    let values = psi
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| if w.contains(i) { v - 1 } else { v })
        .collect();
    PosetHom::new(psi.poset(), values).map_err(|e| match e {
        Error::NotIncreasing(..) => Error::NotInvertible(w.labels().join(",")),
        other => other,
    })
}
