use super::concave::is_concave;
use super::ext_index::ExtIndex;
use super::length::OrbitFn;
use crate::error::{Error, Result};
use crate::galois_roots::{GRootDatum, Orbits};
use crate::rational::{ceil_int, int, rat, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Some j has 0 ≤ r_0 = ... = r_j and ½r_j ≤ r_{j+1} ≤ ... ≤ r_d.
pub fn is_admissible(r: &[Rational]) -> bool {
    let Some(&r0) = r.first() else {
        return false;
    };
    if r0 < Rational::zero() {
        return false;
    }
    let mut j = 0;
    while j + 1 < r.len() && r[j + 1] == r0 {
        j += 1;
    }
    if j + 1 == r.len() {
        return true;
    }
    if r[j + 1] < r[j] * rat(1, 2) {
        return false;
    }
    r[j + 1..].windows(2).all(|w| w[0] <= w[1])
}

pub fn is_weakly_increasing(r: &[Rational]) -> bool {
    r.windows(2).all(|w| w[0] <= w[1])
}

/// 0 < r_i ≤ s_i ≤ min(r_i, ..., r_d) + min(r) for all i.
pub fn step_condition_holds(r: &[Rational], s: &[Rational]) -> bool {
    if r.len() != s.len() || r.is_empty() {
        return false;
    }
    let m = *r.iter().min().unwrap();
    (0..r.len()).all(|i| {
        let tail = *r[i..].iter().min().unwrap();
        r[i] > Rational::zero() && r[i] <= s[i] && s[i] <= tail + m
    })
}

/// f_r on orbits: r_0 on R_0 ∪ {0}, r_i on R_i minus R_{i-1}.
pub fn f_from_sequence(datum: &GRootDatum, orbits: &Orbits, levels: &[Vec<usize>], r: &[Rational]) -> Result<OrbitFn> {
    if levels.len() != r.len() {
        return Err(Error::Dimension("sequence and Levi chain lengths differ".into()));
    }
    if !is_admissible(r) {
        return Err(Error::Invalid(format!("sequence {r:?} is not admissible")));
    }
    if levels.last().map(|l| l.len()) != Some(datum.num_roots()) {
        return Err(Error::Invalid("Levi chain must end at the full root set".into()));
    }
    let mut vals: BTreeMap<usize, ExtIndex> = BTreeMap::new();
    for o in orbits.iter() {
        let i = levels
            .iter()
            .position(|l| l.binary_search(&o.id).is_ok())
            .ok_or_else(|| Error::Invalid("orbit missing from the Levi chain".into()))?;
        vals.insert(o.id, ExtIndex::At(r[i]));
    }
    let f = OrbitFn::new(vals, ExtIndex::At(r[0]));
    if !is_concave(&f, datum, orbits) {
        return Err(Error::Consistency("f_r is not concave".into()));
    }
    Ok(f)
}

/// s^(j)_i = min(s_i, r_i + j·r_0), j = 0..N, N = ⌈max (s_i - r_i)/r_0⌉.
/// Each step is checked to be weakly increasing, admissible and to satisfy the step condition.
pub fn mp_chain(r: &[Rational], s: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if r.len() != s.len() || r.is_empty() {
        return Err(Error::Dimension("sequences must have the same positive length".into()));
    }
    if !is_weakly_increasing(r) || !is_weakly_increasing(s) {
        return Err(Error::Invalid("sequences must be weakly increasing".into()));
    }
    if !is_admissible(r) || !is_admissible(s) {
        return Err(Error::Invalid("sequences must be admissible".into()));
    }
    if r.iter().zip(s).any(|(a, b)| !(Rational::zero() < *a && a <= b)) {
        return Err(Error::Invalid("need 0 < r_i ≤ s_i".into()));
    }
    let r0 = r[0];
    let gap = r.iter().zip(s).map(|(a, b)| b - a).max().unwrap();
    let n = ceil_int(&(gap / r0)).max(0);
    let chain: Vec<Vec<Rational>> = (0..=n)
        .map(|j| r.iter().zip(s).map(|(a, b)| (*b).min(a + int(j) * r0)).collect())
        .collect();
    for (j, step) in chain.iter().enumerate() {
        if !is_weakly_increasing(step) || !is_admissible(step) {
            return Err(Error::Consistency(format!("chain step {j} is not admissible")));
        }
    }
    for w in chain.windows(2) {
        if !step_condition_holds(&w[0], &w[1]) {
            return Err(Error::Consistency(
                "chain step violates the Moy-Prasad condition".into(),
            ));
        }
    }
    if chain[0] != r || chain.last().unwrap() != s {
        return Err(Error::Consistency("chain endpoints are wrong".into()));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_roots::{classify_orbits, FiniteGroup, GaloisFrame};
    use crate::qexact::PrimePower;

    #[test]
    fn admissibility() {
        assert!(is_admissible(&[int(1)]));
        assert!(is_admissible(&[int(1), rat(3, 2)]));
        assert!(is_admissible(&[int(1), rat(3, 4)]));
        assert!(!is_admissible(&[int(1), rat(1, 4)]));
        assert!(!is_admissible(&[int(1), int(3), int(2)]));
        assert!(is_admissible(&[int(0), int(0), int(5)]));
    }

    #[test]
    fn chain_examples() {
        assert_eq!(mp_chain(&[int(2)], &[int(2)]).unwrap().len(), 1);
        assert_eq!(
            mp_chain(&[int(1)], &[int(3)]).unwrap(),
            vec![vec![int(1)], vec![int(2)], vec![int(3)]]
        );
        assert_eq!(
            mp_chain(&[rat(1, 2), int(1)], &[int(1), int(2)]).unwrap(),
            vec![vec![rat(1, 2), int(1)], vec![int(1), rat(3, 2)], vec![int(1), int(2)]]
        );
        assert!(mp_chain(&[int(2)], &[int(1)]).is_err());
        assert!(mp_chain(&[int(0)], &[int(1)]).is_err());
    }

    #[test]
    fn step_functions() {
        // A1 ⊂ A1 x A1, split
        let g = FiniteGroup::trivial();
        let d = GRootDatum::new_permissive(&g, 2, &[], vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap();
        let fr = GaloisFrame::new(g, &[], 0, PrimePower::new(3, 1).unwrap()).unwrap();
        let o = classify_orbits(&d, &fr).unwrap();
        let levels = vec![vec![0, 2], vec![0, 1, 2, 3]];
        let f = f_from_sequence(&d, &o, &levels, &[int(1), rat(3, 2)]).unwrap();
        assert_eq!(f.get(0), ExtIndex::At(int(1)));
        assert_eq!(f.get(1), ExtIndex::At(rat(3, 2)));
        assert_eq!(f.toral(), ExtIndex::At(int(1)));
        assert!(f_from_sequence(&d, &o, &levels, &[int(1), rat(1, 4)]).is_err());
        let f0 = f_from_sequence(&d, &o, &levels[1..], &[int(2)]).unwrap();
        assert_eq!(f0, OrbitFn::constant(&o, ExtIndex::At(int(2))));
    }
}
