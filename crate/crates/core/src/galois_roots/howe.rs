use super::datum::{GRootDatum, Orbits};
use crate::error::{Error, Result, ValidationFailure};
use crate::rational::{in_lattice, parse_rational, show, Rational};
use crate::zlattice::rank_of_vectors;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

const MODULE: &str = "galois_roots";

/// Depth of θ∘α^∨ on an orbit; everything at or below zero is one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Depth {
    Nonpositive,
    Positive(Rational),
}

impl Depth {
    pub fn from_rational(r: Rational) -> Self {
        if r > Rational::zero() {
            Depth::Positive(r)
        } else {
            Depth::Nonpositive
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.trim() == "nonpositive" {
            Ok(Depth::Nonpositive)
        } else {
            Ok(Self::from_rational(parse_rational(s)?))
        }
    }

    pub fn value(&self) -> Option<Rational> {
        match self {
            Depth::Nonpositive => None,
            Depth::Positive(r) => Some(*r),
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Nonpositive => write!(f, "nonpositive"),
            Depth::Positive(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// R_0 ⊆ R_1 ⊆ ... ⊆ R_d = R with breaks r_0 < ... < r_{d-1} ≤ r_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoweFiltration {
    levels: Vec<Vec<usize>>,
    breaks: Vec<Rational>,
    total: Rational,
}

impl HoweFiltration {
    pub fn d(&self) -> usize {
        self.breaks.len()
    }

    pub fn level(&self, i: usize) -> &[usize] {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn total(&self) -> Rational {
        self.total
    }

    /// r_0, ..., r_{d-1}, r_d
    pub fn depth_sequence(&self) -> Vec<Rational> {
        let mut v = self.breaks.clone();
        v.push(self.total);
        v
    }

    /// R_{i+1} minus R_i.
    pub fn layer(&self, i: usize) -> Vec<usize> {
        self.levels[i + 1]
            .iter()
            .copied()
            .filter(|r| self.levels[i].binary_search(r).is_err())
            .collect()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn depth_of_root(&self, root: usize) -> Depth {
        if self.levels[0].binary_search(&root).is_ok() {
            return Depth::Nonpositive;
        }
        for i in 0..self.d() {
            if self.levels[i + 1].binary_search(&root).is_ok() {
                return Depth::Positive(self.breaks[i]);
            }
        }
        Depth::Nonpositive
    }

    /// Σ r_i (|R_{i+1}| - |R_i|)
    pub fn weighted_break_sum(&self) -> Rational {
        (0..self.d())
            .map(|i| self.breaks[i] * Rational::from_integer(self.layer(i).len() as i128))
            .sum()
    }
}

/// span_Q(S) ∩ R = S.
pub fn is_levi_closed(datum: &GRootDatum, subset: &[usize]) -> bool {
    let n = datum.rank();
    let vs: Vec<Vec<i128>> = subset.iter().map(|&i| datum.root(i).to_vec()).collect();
    let base = rank_of_vectors(&vs, n);
    (0..datum.num_roots()).filter(|i| !subset.contains(i)).all(|i| {
        let mut w = vs.clone();
        w.push(datum.root(i).to_vec());
        rank_of_vectors(&w, n) > base
    })
}

/// Span closure of a root subset.
pub fn levi_closure(datum: &GRootDatum, subset: &[usize]) -> Vec<usize> {
    let n = datum.rank();
    let vs: Vec<Vec<i128>> = subset.iter().map(|&i| datum.root(i).to_vec()).collect();
    let base = rank_of_vectors(&vs, n);
    (0..datum.num_roots())
        .filter(|&i| {
            let mut w = vs.clone();
            w.push(datum.root(i).to_vec());
            rank_of_vectors(&w, n) == base
        })
        .collect()
}

/// Per-orbit depths from a map keyed by any root of the orbit (or of its negative).
pub fn orbit_depths(orbits: &Orbits, depths: &BTreeMap<usize, Depth>) -> Result<Vec<Depth>> {
    let mut errs = Vec::new();
    let mut per: Vec<Option<Depth>> = vec![None; orbits.len()];
    for (&root, &dep) in depths {
        if root >= orbits.iter().map(|o| o.members.len()).sum::<usize>() {
            errs.push(ValidationFailure::new(
                MODULE,
                "theta_depths",
                format!("unknown root {root}"),
            ));
            continue;
        }
        let pos = orbits.position_of_root(root);
        match per[pos] {
            Some(old) if old != dep => errs.push(ValidationFailure::new(
                MODULE,
                "theta_depths",
                format!("depth map is not Γ-invariant on the orbit of root {root}"),
            )),
            _ => per[pos] = Some(dep),
        }
    }
    let snapshot = per.clone();
    for (pos, o) in orbits.iter().enumerate() {
        let npos = orbits.position_of_root(o.negative);
        match (snapshot[pos], snapshot[npos]) {
            (Some(a), Some(b)) if a != b => errs.push(ValidationFailure::new(
                MODULE,
                "theta_depths",
                format!("depth map is not negation-invariant at orbit {}", o.id),
            )),
            (None, Some(b)) => per[pos] = Some(b),
            (None, None) => errs.push(ValidationFailure::new(
                MODULE,
                "theta_depths",
                format!("no depth given for orbit {}", o.id),
            )),
            _ => {}
        }
    }
    if !errs.is_empty() {
        return Err(Error::Validation(errs));
    }
    Ok(per.into_iter().map(|d| d.unwrap()).collect())
}

pub fn howe_filtration(
    datum: &GRootDatum,
    orbits: &Orbits,
    depths: &BTreeMap<usize, Depth>,
    total: Rational,
) -> Result<HoweFiltration> {
    let per = orbit_depths(orbits, depths)?;
    filtration_from_orbit_depths(datum, orbits, &per, total)
}

pub fn filtration_from_orbit_depths(
    datum: &GRootDatum,
    orbits: &Orbits,
    per: &[Depth],
    total: Rational,
) -> Result<HoweFiltration> {
    let mut errs = Vec::new();
    if total < Rational::zero() {
        errs.push(ValidationFailure::new(
            MODULE,
            "theta_total_depth",
            "total depth is negative",
        ));
    }
    let mut breaks: Vec<Rational> = per.iter().filter_map(|d| d.value()).collect();
    breaks.sort();
    breaks.dedup();
    if let Some(&m) = breaks.last() {
        if m > total {
            errs.push(ValidationFailure::new(
                MODULE,
                "theta_depths",
                format!("depth {} exceeds the total depth {}", show(&m), show(&total)),
            ));
        }
    }
    let mut levels = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for (pos, o) in orbits.iter().enumerate() {
        if per[pos] == Depth::Nonpositive {
            current.extend(&o.members);
        }
    }
    current.sort();
    levels.push(current.clone());
    for r in &breaks {
        for (pos, o) in orbits.iter().enumerate() {
            if per[pos] == Depth::Positive(*r) {
                current.extend(&o.members);
            }
        }
        current.sort();
        levels.push(current.clone());
    }
    for (i, l) in levels.iter().enumerate() {
        if !is_levi_closed(datum, l) {
            errs.push(ValidationFailure::new(
                MODULE,
                "theta_depths",
                format!("R_{i} is not Q-closed in R (Levi condition fails)"),
            ));
        }
    }
    if !errs.is_empty() {
        return Err(Error::Validation(errs));
    }
    Ok(HoweFiltration { levels, breaks, total })
}

/// Result of the depth-lattice test for one orbit of one layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthLatticeCheck {
    pub orbit: usize,
    pub layer: usize,
    pub e: i128,
    #[serde(with = "crate::rational::serde_rational")]
    pub depth: Rational,
    /// r_i ∈ (1/e)Z
    pub in_value_group: bool,
    /// r_i ∈ (1/2e)Z
    pub in_half_lattice: bool,
    pub pass: bool,
}

pub fn validate_depth_lattice(filt: &HoweFiltration, orbits: &Orbits) -> Vec<DepthLatticeCheck> {
    let mut out = Vec::new();
    for i in 0..filt.d() {
        let r = filt.breaks()[i];
        let mut seen = Vec::new();
        for root in filt.layer(i) {
            let o = orbits.of_root(root);
            if seen.contains(&o.id) {
                continue;
            }
            seen.push(o.id);
            let a = in_lattice(&r, o.e());
            let b = in_lattice(&r, 2 * o.e());
            out.push(DepthLatticeCheck {
                orbit: o.id,
                layer: i,
                e: o.e(),
                depth: r,
                in_value_group: a,
                in_half_lattice: b,
                pass: a && b,
            });
        }
    }
    out
}

/// Single-orbit form of the depth-lattice test: (value group, half lattice).
pub fn depth_lattice_membership(e: i128, r: Rational) -> (bool, bool) {
    (in_lattice(&r, e), in_lattice(&r, 2 * e))
}
