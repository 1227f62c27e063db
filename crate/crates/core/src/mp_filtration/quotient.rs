use super::ext_index::ExtIndex;
use super::jumps::{JumpAssignment, ToralJumps};
use super::length::{orbit_interval_length, toral_interval_length, OrbitFn};
use super::sequence::{f_from_sequence, is_admissible, is_weakly_increasing, step_condition_holds};
use crate::error::{Error, Result};
use crate::galois_roots::{GRootDatum, Orbits};
use crate::qexact::{exp_q, PrimePower, QMonomial};
use crate::rational::{int, Rational};
use num_traits::Zero;

/// Evidence that |G_{x,f:g}| = |g_{x,f:g}| applies to a pair (f, g).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainCertificate {
    /// f is the constant 0+ and g = f_r for a weakly increasing admissible r.
    FromZeroPlus {
        levels: Vec<Vec<usize>>,
        seq: Vec<Rational>,
    },
    /// f = f_{s(0)}, g = f_{s(N)}, each adjacent pair passing the Moy-Prasad step condition.
    Chain {
        levels: Vec<Vec<usize>>,
        seqs: Vec<Vec<Rational>>,
    },
}

/// Jump data shared by every quotient computation on one datum.
#[derive(Debug, Clone, Copy)]
pub struct LengthData<'a> {
    pub datum: &'a GRootDatum,
    pub orbits: &'a Orbits,
    pub jumps: &'a JumpAssignment,
    pub toral: &'a ToralJumps,
}

impl LengthData<'_> {
    /// Signed len g_{x,f:g}: orbit sums of torsor points in [f(ᾱ), g(ᾱ)) plus the toral part.
    pub fn length(&self, f: &OrbitFn, g: &OrbitFn) -> Result<i128> {
        let mut total = toral_interval_length(self.toral, f.toral(), g.toral())?;
        for o in self.orbits.iter() {
            total += orbit_interval_length(o, self.jumps, f.get(o.id), g.get(o.id))?;
        }
        Ok(total)
    }

    fn check(&self, f: &OrbitFn, g: &OrbitFn, cert: &ChainCertificate) -> Result<()> {
        let bad = |m: &str| Err(Error::Invalid(format!("chain certificate rejected: {m}")));
        match cert {
            ChainCertificate::FromZeroPlus { levels, seq } => {
                if *f != OrbitFn::constant(self.orbits, ExtIndex::zero_plus()) {
                    return bad("f is not the constant 0+");
                }
                if !is_weakly_increasing(seq) || !is_admissible(seq) || seq[0] <= Rational::zero() {
                    return bad("sequence must be positive, weakly increasing and admissible");
                }
                if f_from_sequence(self.datum, self.orbits, levels, seq)? != *g {
                    return bad("g is not the step function of the sequence");
                }
            }
            ChainCertificate::Chain { levels, seqs } => {
                let (Some(first), Some(last)) = (seqs.first(), seqs.last()) else {
                    return bad("empty chain");
                };
                if seqs.iter().any(|s| !is_weakly_increasing(s)) {
                    return bad("chain members must be weakly increasing");
                }
                if seqs.windows(2).any(|w| !step_condition_holds(&w[0], &w[1])) {
                    return bad("a step violates the Moy-Prasad condition");
                }
                if f_from_sequence(self.datum, self.orbits, levels, first)? != *f {
                    return bad("f is not the first step function");
                }
                if f_from_sequence(self.datum, self.orbits, levels, last)? != *g {
                    return bad("g is not the last step function");
                }
            }
        }
        Ok(())
    }

    /// |G_{x,f:g}| as exp_q(len g_{x,f:g}). A certificate is needed unless f = g.
    pub fn quotient_order(
        &self,
        f: &OrbitFn,
        g: &OrbitFn,
        cert: Option<&ChainCertificate>,
        q: &PrimePower,
    ) -> Result<QMonomial> {
        if f == g {
            return Ok(QMonomial::one(q));
        }
        if !f.le(g) {
            return Err(Error::Invalid("quotient_order needs f ≤ g".into()));
        }
        let cert = cert.ok_or_else(|| Error::Invalid("missing chain certificate".into()))?;
        self.check(f, g, cert)?;
        Ok(exp_q(int(self.length(f, g)?), q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_roots::{classify_orbits, FiniteGroup, GaloisFrame};
    use crate::rational::rat;
    use crate::zlattice::IntMatrix;
    use std::collections::BTreeMap;

    #[test]
    fn split_a1_zero_plus_to_two() {
        let g = FiniteGroup::trivial();
        let d = GRootDatum::new_permissive(&g, 1, &[], vec![vec![1], vec![-1]]).unwrap();
        let q = PrimePower::new(5, 1).unwrap();
        let fr = GaloisFrame::new(g, &[], 0, q).unwrap();
        let o = classify_orbits(&d, &fr).unwrap();
        let j = JumpAssignment::new(&o, &BTreeMap::from([(0, int(0))])).unwrap();
        let t = ToralJumps::unramified(1);
        let data = LengthData {
            datum: &d,
            orbits: &o,
            jumps: &j,
            toral: &t,
        };
        let f = OrbitFn::constant(&o, ExtIndex::zero_plus());
        let g2 = OrbitFn::constant(&o, ExtIndex::At(int(2)));
        let cert = ChainCertificate::FromZeroPlus {
            levels: vec![vec![0, 1]],
            seq: vec![int(2)],
        };
        assert_eq!(
            data.quotient_order(&f, &g2, Some(&cert), &q).unwrap(),
            QMonomial::from_integer(125, &q).unwrap()
        );
        assert_eq!(data.quotient_order(&g2, &g2, None, &q).unwrap(), QMonomial::one(&q));
        assert!(data.quotient_order(&f, &g2, None, &q).is_err());

        let g1 = OrbitFn::constant(&o, ExtIndex::At(int(1)));
        let c = ChainCertificate::Chain {
            levels: vec![vec![0, 1]],
            seqs: vec![vec![int(1)], vec![int(2)]],
        };
        assert_eq!(
            data.quotient_order(&g1, &g2, Some(&c), &q).unwrap(),
            QMonomial::from_integer(125, &q).unwrap()
        );
        let long = ChainCertificate::Chain {
            levels: vec![vec![0, 1]],
            seqs: vec![vec![int(1)], vec![int(3)]],
        };
        let g3 = OrbitFn::constant(&o, ExtIndex::At(int(3)));
        assert!(data.quotient_order(&g1, &g3, Some(&long), &q).is_err());
    }

    #[test]
    fn swapped_pair_half_jumps() {
        let g = FiniteGroup::cyclic(2);
        let swap = IntMatrix::square(&[vec![0, 1], vec![1, 0]]).unwrap();
        let d = GRootDatum::new_permissive(
            &g,
            2,
            &[(1, swap.clone())],
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        )
        .unwrap();
        let q = PrimePower::new(3, 1).unwrap();
        let fr = GaloisFrame::new(g, &[1], 1, q).unwrap();
        let o = classify_orbits(&d, &fr).unwrap();
        let j = JumpAssignment::new(&o, &BTreeMap::from([(0, rat(1, 2))])).unwrap();
        let t = ToralJumps::from_inertia_generator(&swap).unwrap();
        let data = LengthData {
            datum: &d,
            orbits: &o,
            jumps: &j,
            toral: &t,
        };
        let f = OrbitFn::constant(&o, ExtIndex::zero_plus());
        let g1 = OrbitFn::constant(&o, ExtIndex::At(int(1)));
        let cert = ChainCertificate::FromZeroPlus {
            levels: vec![vec![0, 1, 2, 3]],
            seq: vec![int(1)],
        };
        // t = 1/2 on both orbits; the torus piece at 1/2 is the -1 eigenline.
        assert_eq!(data.length(&f, &g1).unwrap(), 3);
        assert_eq!(
            data.quotient_order(&f, &g1, Some(&cert), &q).unwrap(),
            QMonomial::from_integer(27, &q).unwrap()
        );
    }
}
