#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::Rng;
use spmut::{build_poset, PosetHom, PosetRef, Subset, UpperSet};
use spmut::{ZPosetHom, ZPrimeSet, ZUpperSet};

/// Poset on `e0..e(n-1)` with `ei < ej` whenever `i < j` and `edges` says so.
pub fn poset_from_edges(n: usize, edges: &[bool]) -> PosetRef {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut rels = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if edges.get(k).copied().unwrap_or(false) {
                rels.push((labels[i].clone(), labels[j].clone()));
            }
            k += 1;
        }
    }
    Arc::new(build_poset(&labels, &rels).unwrap())
}

pub fn random_poset(rng: &mut StdRng, max: usize) -> PosetRef {
    let n = rng.gen_range(0..=max);
    let density: f64 = rng.gen_range(0.1..0.6);
    let edges: Vec<bool> = (0..n * n.saturating_sub(1) / 2)
        .map(|_| rng.gen_bool(density))
        .collect();
    poset_from_edges(n, &edges)
}

/// Pushes raw values up along a linear extension so the result is
/// increasing; stays inside the range of the raw values.
pub fn monotonize(poset: &PosetRef, raw: &[i64]) -> PosetHom {
    let mut v = raw.to_vec();
    for &q in poset.linear_extension() {
        for p in 0..poset.len() {
            if p != q && poset.leq(p, q) {
                v[q] = v[q].max(v[p]);
            }
        }
    }
    PosetHom::new(poset, v).unwrap()
}

pub fn random_function(rng: &mut StdRng, poset: &PosetRef, lo: i64, hi: i64) -> PosetHom {
    let raw: Vec<i64> = (0..poset.len()).map(|_| rng.gen_range(lo..=hi)).collect();
    monotonize(poset, &raw)
}

pub fn random_subset(rng: &mut StdRng, n: usize) -> Subset {
    let p: f64 = rng.gen_range(0.0..1.0);
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

pub fn random_upper(rng: &mut StdRng, poset: &PosetRef) -> UpperSet {
    let s = random_subset(rng, poset.len());
    UpperSet::new(poset, poset.closure(&s)).unwrap()
}

/// Upward closure check straight from the order relation.
pub fn brute_is_upper(poset: &PosetRef, s: &Subset) -> bool {
    s.iter()
        .all(|&p| (0..poset.len()).all(|q| !poset.leq(p, q) || s.contains(&q)))
}

/// All upward-closed subsets by filtering the full power set.
pub fn brute_upper_sets(poset: &PosetRef) -> BTreeSet<Subset> {
    let n = poset.len();
    (0u32..1 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Subset>())
        .filter(|s| brute_is_upper(poset, s))
        .collect()
}

/// Covering pairs from the order relation alone.
pub fn brute_covers(poset: &PosetRef) -> Vec<(usize, usize)> {
    let n = poset.len();
    let lt = |a: usize, b: usize| a != b && poset.leq(a, b);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

pub const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
pub const PRIMES_TO_100: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

pub fn random_zset(rng: &mut StdRng) -> ZPrimeSet {
    let picked: Vec<u64> = SMALL_PRIMES.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
    if rng.gen_bool(0.5) {
        ZPrimeSet::finite(picked).unwrap()
    } else {
        ZPrimeSet::cofinite(picked).unwrap()
    }
}

pub fn random_zupper(rng: &mut StdRng) -> ZUpperSet {
    if rng.gen_bool(0.2) {
        ZUpperSet::Whole
    } else {
        ZUpperSet::Primes(random_zset(rng))
    }
}

/// Random bounded increasing function: each small prime gets a value in
/// `v0..=v0+3`, every other prime gets a shared default value.
pub fn random_zhom(rng: &mut StdRng) -> ZPosetHom {
    let v0 = rng.gen_range(-3..=3);
    let default = v0 + rng.gen_range(0..=3);
    let assigned: Vec<(u64, i64)> = SMALL_PRIMES
        .iter()
        .map(|&q| (q, v0 + rng.gen_range(0..=3)))
        .collect();
    let mut classes = Vec::new();
    for v in v0..=v0 + 3 {
        let members: Vec<u64> = assigned.iter().filter(|a| a.1 == v).map(|a| a.0).collect();
        if v == default {
            let others = assigned.iter().filter(|a| a.1 != v).map(|a| a.0);
            classes.push((v, ZPrimeSet::cofinite(others).unwrap()));
        } else {
            classes.push((v, ZPrimeSet::finite(members).unwrap()));
        }
    }
    ZPosetHom::new(v0, classes).unwrap()
}

pub fn random_prime_list(rng: &mut StdRng, max: usize) -> Vec<u64> {
    let k = rng.gen_range(0..=max);
    let mut pool: Vec<u64> = PRIMES_TO_100.to_vec();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let i = rng.gen_range(0..pool.len());
        out.push(pool.swap_remove(i));
    }
    out
}
