use super::ext_index::ExtIndex;
use crate::error::{Error, Result, ValidationFailure};
use crate::galois_roots::{OrbitInfo, Orbits};
use crate::rational::{ceil_int, floor_int, in_lattice, int, mod_lattice, rat, show, Rational};
use crate::zlattice::{rank_of_vectors, IntMatrix};
use std::collections::BTreeMap;

const MODULE: &str = "mp_filtration";

/// Offsets t_ᾱ of the jump torsors ord_x(ᾱ) = t_ᾱ + (1/e_ᾱ)Z, keyed by orbit id
/// and stored reduced into [0, 1/e_ᾱ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpAssignment {
    offsets: BTreeMap<usize, Rational>,
}

impl JumpAssignment {
    /// Builds from offsets keyed by any root of an orbit. A missing orbit takes
    /// the negated offset of its negative; torsor symmetry is checked.
    pub fn new(orbits: &Orbits, given: &BTreeMap<usize, Rational>) -> Result<Self> {
        let mut errs = Vec::new();
        let nroots: usize = orbits.iter().map(|o| o.size()).sum();
        let mut per: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&root, &t) in given {
            if root >= nroots {
                errs.push(ValidationFailure::new(
                    MODULE,
                    "jump_offsets",
                    format!("unknown root {root}"),
                ));
                continue;
            }
            let o = orbits.of_root(root);
            let t = mod_lattice(&t, o.e());
            if let Some(old) = per.insert(o.id, t) {
                if old != t {
                    errs.push(ValidationFailure::new(
                        MODULE,
                        "jump_offsets",
                        format!("offsets disagree on the orbit of root {root}"),
                    ));
                }
            }
        }
        for o in orbits.iter() {
            if per.contains_key(&o.id) {
                continue;
            }
            match per.get(&o.negative).copied() {
                Some(t) => {
                    per.insert(o.id, mod_lattice(&-t, o.e()));
                }
                None => errs.push(ValidationFailure::new(
                    MODULE,
                    "jump_offsets",
                    format!("no offset for orbit {} or its negative", o.id),
                )),
            }
        }
        if errs.is_empty() {
            for o in orbits.iter() {
                let t = per[&o.id];
                let tn = per[&o.negative];
                if !in_lattice(&(t + tn), o.e()) {
                    errs.push(ValidationFailure::new(
                        MODULE,
                        "jump_offsets",
                        format!(
                            "torsor symmetry fails at orbit {}: offsets {} and {} are not opposite mod 1/{}",
                            o.id,
                            show(&t),
                            show(&tn),
                            o.e()
                        ),
                    ));
                }
            }
        }
        if !errs.is_empty() {
            return Err(Error::Validation(errs));
        }
        Ok(JumpAssignment { offsets: per })
    }

    /// Offset of an orbit, by id.
    pub fn offset(&self, orbit: usize) -> Rational {
        self.offsets[&orbit]
    }

    pub fn offsets(&self) -> &BTreeMap<usize, Rational> {
        &self.offsets
    }

    /// Whether t ∈ ord_x(ᾱ).
    pub fn is_jump(&self, orbit: &OrbitInfo, t: Rational) -> bool {
        in_lattice(&(t - self.offset(orbit.id)), orbit.e())
    }
}

/// Length of g^ᾱ_{x,t:t+}: f_ᾱ on the torsor, else 0.
pub fn jump_length_at(orbit: &OrbitInfo, jumps: &JumpAssignment, t: Rational) -> i128 {
    if jumps.is_jump(orbit, t) {
        orbit.f()
    } else {
        0
    }
}

/// Points of offset + (1/e)Z inside [lo, hi).
pub fn torsor_points(offset: Rational, e: i128, lo: ExtIndex, hi: ExtIndex) -> Result<Vec<Rational>> {
    if hi <= lo {
        return Ok(vec![]);
    }
    let a = lo
        .base()
        .ok_or_else(|| Error::Invalid("interval starts at infinity".into()))?;
    let b = hi
        .base()
        .ok_or_else(|| Error::Invalid("interval is unbounded".into()))?;
    let step = rat(1, e);
    let k0 = floor_int(&((a - offset) / step));
    let k1 = ceil_int(&((b - offset) / step));
    Ok((k0..=k1)
        .map(|k| offset + step * int(k))
        .filter(|t| lo <= ExtIndex::At(*t) && ExtIndex::At(*t) < hi)
        .collect())
}

/// Jumps of the torus filtration. The piece at t = m/e_S has dimension equal to
/// the multiplicity of the eigenvalue ζ^m of the inertia generator on the
/// character lattice (ζ a primitive e_S-th root of unity, e_S the order of that
/// matrix); other t contribute nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralJumps {
    e_s: i128,
    mult: Vec<i128>,
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quo = vec![0; num.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd] / lead;
        quo[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    quo
}

/// Coefficients (constant term first) of the d-th cyclotomic polynomial.
pub fn cyclotomic(d: usize) -> Vec<i128> {
    let mut p = vec![0i128; d + 1];
    p[0] = -1;
    p[d] = 1;
    for k in 1..d {
        if d.is_multiple_of(k) {
            p = poly_div_exact(&p, &cyclotomic(k));
        }
    }
    p
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

fn poly_at_matrix(coeffs: &[i128], a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(a)?.add(&IntMatrix::scalar(n, *c))?;
    }
    Ok(acc)
}

impl ToralJumps {
    pub fn from_inertia_generator(a: &IntMatrix) -> Result<Self> {
        let n = a.rows();
        let mut e_s = 1usize;
        let mut p = a.clone();
        while p != IntMatrix::identity(n) {
            p = p.mul(a)?;
            e_s += 1;
            if e_s > 10_000 {
                return Err(Error::Invalid("inertia acts with infinite order".into()));
            }
        }
        let mut mult = Vec::with_capacity(e_s);
        for m in 0..e_s {
            let d = e_s / num_integer::gcd(m, e_s);
            let phi = poly_at_matrix(&cyclotomic(d), a)?;
            let r = rank_of_vectors(&phi.to_rows(), n);
            let ker = (n - r) as i128;
            let ph = euler_phi(d) as i128;
            if ker % ph != 0 {
                return Err(Error::Consistency("eigenvalue multiplicity is not integral".into()));
            }
            mult.push(ker / ph);
        }
        Ok(ToralJumps { e_s: e_s as i128, mult })
    }

    /// Unramified torus of rank n: jumps at the integers with weight n.
    pub fn unramified(n: usize) -> Self {
        ToralJumps {
            e_s: 1,
            mult: vec![n as i128],
        }
    }

    pub fn e_s(&self) -> i128 {
        self.e_s
    }

    pub fn multiplicities(&self) -> &[i128] {
        &self.mult
    }

    pub fn length_at(&self, t: Rational) -> i128 {
        let x = t * int(self.e_s);
        if !x.is_integer() {
            return 0;
        }
        self.mult[x.to_integer().rem_euclid(self.e_s) as usize]
    }

    /// Σ length_at(t) over t ∈ [lo, hi).
    pub fn length_between(&self, lo: ExtIndex, hi: ExtIndex) -> Result<i128> {
        let pts = torsor_points(Rational::from_integer(0), self.e_s, lo, hi)?;
        Ok(pts.into_iter().map(|t| self.length_at(t)).sum())
    }
}
