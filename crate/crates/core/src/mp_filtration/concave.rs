use super::ext_index::ExtIndex;
use super::length::OrbitFn;
use crate::galois_roots::{GRootDatum, Orbits};
use std::collections::HashMap;

/// f(Σ a_i) ≤ Σ f(a_i) for every family of at most |R|+1 elements of R ∪ {0}
/// whose sum lies in R ∪ {0}. Minimal decomposition costs are found by a
/// bounded relaxation over lattice points, pruned once a partial cost reaches
/// max f (valid because the values are then nonnegative). Exact for the
/// supported scale, rank ≤ 4.
pub fn is_concave(f: &OrbitFn, datum: &GRootDatum, orbits: &Orbits) -> bool {
    let zero = ExtIndex::zero();
    if f.toral() < zero {
        return false;
    }
    let nroots = datum.num_roots();
    let value = |r: usize| f.get(orbits.of_root(r).id);
    let nonneg = (0..nroots).all(|r| value(r) >= zero);
    let top = (0..nroots).map(value).chain([f.toral()]).max().unwrap_or(zero);
    let target: HashMap<Vec<i128>, ExtIndex> = (0..nroots)
        .map(|r| (datum.root(r).to_vec(), value(r)))
        .chain([(vec![0; datum.rank()], f.toral())])
        .collect();
    let mut best: HashMap<Vec<i128>, ExtIndex> = HashMap::new();
    let mut frontier: Vec<(Vec<i128>, ExtIndex)> = Vec::new();
    for r in 0..nroots {
        let v = datum.root(r).to_vec();
        let c = value(r);
        if best.get(&v).is_none_or(|b| c < *b) {
            best.insert(v.clone(), c);
            frontier.push((v, c));
        }
    }
    for _step in 1..=nroots {
        let mut next = Vec::new();
        for (v, c) in &frontier {
            if nonneg && *c >= top {
                continue;
            }
            for r in 0..nroots {
                let w: Vec<i128> = v.iter().zip(datum.root(r)).map(|(a, b)| a + b).collect();
                let cw = c.add(&value(r));
                if let Some(t) = target.get(&w) {
                    if cw < *t {
                        return false;
                    }
                }
                if best.get(&w).is_none_or(|b| cw < *b) {
                    best.insert(w.clone(), cw);
                    next.push((w, cw));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    true
}
