use super::ext_index::ExtIndex;
use super::jumps::{jump_length_at, torsor_points, JumpAssignment, ToralJumps};
use crate::error::{Error, Result};
use crate::galois_roots::{OrbitInfo, Orbits};
use crate::rational::{in_lattice, int, rat, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A function on orbits ∪ {0}, valued in the extended index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitFn {
    values: BTreeMap<usize, ExtIndex>,
    toral: ExtIndex,
}

impl OrbitFn {
    pub fn new(values: BTreeMap<usize, ExtIndex>, toral: ExtIndex) -> Self {
        OrbitFn { values, toral }
    }

    pub fn constant(orbits: &Orbits, v: ExtIndex) -> Self {
        OrbitFn {
            values: orbits.iter().map(|o| (o.id, v)).collect(),
            toral: v,
        }
    }

    /// Value on an orbit, by id.
    pub fn get(&self, orbit: usize) -> ExtIndex {
        self.values[&orbit]
    }

    pub fn toral(&self) -> ExtIndex {
        self.toral
    }

    pub fn values(&self) -> &BTreeMap<usize, ExtIndex> {
        &self.values
    }

    pub fn set(&mut self, orbit: usize, v: ExtIndex) {
        self.values.insert(orbit, v);
    }

    pub fn max(&self, other: &Self) -> Self {
        OrbitFn {
            values: self
                .values
                .iter()
                .map(|(k, v)| (*k, (*v).max(other.values[k])))
                .collect(),
            toral: self.toral.max(other.toral),
        }
    }

    pub fn le(&self, other: &Self) -> bool {
        self.toral <= other.toral && self.values.iter().all(|(k, v)| *v <= other.values[k])
    }
}

/// Σ_{t ∈ [lo, hi)} jump length on one orbit; negative when hi < lo, so that
/// lengths are additive over concatenated intervals.
pub fn orbit_interval_length(orbit: &OrbitInfo, jumps: &JumpAssignment, lo: ExtIndex, hi: ExtIndex) -> Result<i128> {
    if hi < lo {
        return Ok(-orbit_interval_length(orbit, jumps, hi, lo)?);
    }
    let pts = torsor_points(jumps.offset(orbit.id), orbit.e(), lo, hi)?;
    Ok(pts.len() as i128 * orbit.f())
}

pub fn toral_interval_length(toral: &ToralJumps, lo: ExtIndex, hi: ExtIndex) -> Result<i128> {
    if hi < lo {
        return Ok(-toral.length_between(hi, lo)?);
    }
    toral.length_between(lo, hi)
}

/// len g^{R'}_{x,0+:f} = Σ_{ᾱ ∈ R'} Σ_{0<t<f(ᾱ)} f_ᾱ·1_{ord_x ᾱ}(t), over orbit ids.
/// An orbit with f(ᾱ) = 0 contributes -len g^ᾱ_{x,0:0+}.
pub fn length_sum(orbits: &Orbits, subset: &[usize], f: &OrbitFn, jumps: &JumpAssignment) -> Result<i128> {
    let mut total = 0;
    for &id in subset {
        let v = f.get(id);
        if !v.is_finite() {
            return Err(Error::Invalid(format!("f is infinite on orbit {id}")));
        }
        total += orbit_interval_length(orbits.by_id(id), jumps, ExtIndex::zero_plus(), v)?;
    }
    Ok(total)
}

/// Both sides of
/// len g^{R'}_{x,0+:f} + ½len g^{R'}_{x,0:0+} + ½len g^{R'}_{x,f:f+} = Σ [k_ᾱ:k] f(ᾱ).
pub fn master_length_identity(
    orbits: &Orbits,
    subset: &[usize],
    f: &BTreeMap<usize, Rational>,
    jumps: &JumpAssignment,
) -> Result<(Rational, Rational)> {
    for &id in subset {
        let o = orbits.by_id(id);
        if !subset.contains(&o.negative) {
            return Err(Error::Invalid(format!("subset is not closed under negation at {id}")));
        }
        let v = *f
            .get(&id)
            .ok_or_else(|| Error::Invalid(format!("f undefined on orbit {id}")))?;
        if f.get(&o.negative) != Some(&v) {
            return Err(Error::Invalid(format!("f is not even at orbit {id}")));
        }
        if v < Rational::zero() || !in_lattice(&v, 2 * o.e()) {
            return Err(Error::Invalid(format!(
                "f(ᾱ) must lie in ½ord(k_ᾱ^×) and be nonnegative at orbit {id}"
            )));
        }
    }
    let fx = OrbitFn::new(
        f.iter().map(|(k, v)| (*k, ExtIndex::At(*v))).collect(),
        ExtIndex::zero(),
    );
    let half = rat(1, 2);
    let mut lhs = int(length_sum(orbits, subset, &fx, jumps)?);
    let mut rhs = Rational::zero();
    for &id in subset {
        let o = orbits.by_id(id);
        let v = f[&id];
        lhs += half * int(jump_length_at(o, jumps, Rational::zero()));
        lhs += half * int(jump_length_at(o, jumps, v));
        rhs += int(o.size() as i128) * v;
    }
    Ok((lhs, rhs))
}
