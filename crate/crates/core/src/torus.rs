//! Lattice invariants of the torus S^a attached to a Galois frame: the
//! inertia-invariant character lattice M with its Frobenius and the finite
//! groups built from the cocharacter lattice.

use crate::error::{Error, Result};
use crate::galois_roots::{GRootDatum, GaloisFrame};
use crate::mp_filtration::ToralJumps;
use crate::rational::Rational;
use crate::zlattice::{
    coinvariants_order, coinvariants_with_frobenius, fg_fixed_order, group_coinvariants, invariant_sublattice,
    twisted_fixed_order, IntMatrix, Sublattice,
};
use num_traits::Zero;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct TorusData {
    /// dim S^a
    pub rank: usize,
    /// M = X^*(S^a)^I
    pub m: Sublattice,
    /// Frobenius on M in the basis of `m`.
    pub frob_m: IntMatrix,
    pub invariants: TorusInvariants,
    pub toral_jumps: ToralJumps,
}

/// The integer invariants entering both sides of the comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorusInvariants {
    pub rank_m: usize,
    /// |det(qF - 1 | M)| = |(κ̄^× ⊗ M^∨)^Frob|
    pub det_q: i128,
    /// |M_Frob|
    pub m_frob: i128,
    /// |(X_*^I)_Frob|
    pub cochar_inv_coinv: i128,
    /// |(X_{*,I})^Frob|
    pub cochar_coinv_fixed: i128,
    /// |X_{*,Γ}|
    pub cochar_gamma_coinv: i128,
}

impl TorusData {
    pub fn new(datum: &GRootDatum, frame: &GaloisFrame) -> Result<Self> {
        let n = datum.rank();
        let q = frame.q();
        let sigma = frame.frobenius();
        let inertia = frame.inertia();
        let i_char: Vec<IntMatrix> = inertia.iter().map(|&g| datum.action(g).clone()).collect();
        let m = invariant_sublattice(&i_char, n)?;
        let frob_m = m.restrict(datum.action(sigma))?;
        let det_q = if m.rank() == 0 {
            1
        } else {
            twisted_fixed_order(&frob_m, q)?
        };
        let m_frob = coinvariants_order(&frob_m)?.expect_finite("M_Frob")?;

        let i_co: Vec<IntMatrix> = inertia.iter().map(|&g| datum.cochar_action(g)).collect::<Result<_>>()?;
        let frob_co = datum.cochar_action(sigma)?;
        let xi = invariant_sublattice(&i_co, n)?;
        let cochar_inv_coinv = coinvariants_order(&xi.restrict(&frob_co)?)?.expect_finite("(X_*^I)_Frob")?;
        let cochar_coinv_fixed = fg_fixed_order(&coinvariants_with_frobenius(&i_co, &frob_co)?)?;
        let all_co = datum.cochar_actions()?;
        let cochar_gamma_coinv = group_coinvariants(&all_co, n)?.order().expect_finite("X_{*,Γ}")?;

        let tau = datum.action(frame.inertia_generator());
        let toral_jumps = ToralJumps::from_inertia_generator(tau)?;
        if toral_jumps.length_at(Rational::zero()) != m.rank() as i128 {
            return Err(Error::Consistency(
                "eigenvalue-1 multiplicity differs from rank M".into(),
            ));
        }
        Ok(TorusData {
            rank: n,
            invariants: TorusInvariants {
                rank_m: m.rank(),
                det_q,
                m_frob,
                cochar_inv_coinv,
                cochar_coinv_fixed,
                cochar_gamma_coinv,
            },
            m,
            frob_m,
            toral_jumps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_roots::FiniteGroup;
    use crate::qexact::PrimePower;

    #[test]
    fn unramified_sl2_torus() {
        let g = FiniteGroup::cyclic(2);
        let neg = IntMatrix::square(&[vec![-1]]).unwrap();
        let d = GRootDatum::new(&g, 1, &[(1, neg)], vec![vec![2], vec![-2]]).unwrap();
        let fr = GaloisFrame::new(g, &[], 1, PrimePower::new(3, 1).unwrap()).unwrap();
        let t = TorusData::new(&d, &fr).unwrap();
        assert_eq!(
            t.invariants,
            TorusInvariants {
                rank_m: 1,
                det_q: 4,
                m_frob: 2,
                cochar_inv_coinv: 2,
                cochar_coinv_fixed: 1,
                cochar_gamma_coinv: 2
            }
        );
    }

    #[test]
    fn ramified_sl2_torus() {
        let g = FiniteGroup::cyclic(2);
        let neg = IntMatrix::square(&[vec![-1]]).unwrap();
        let d = GRootDatum::new(&g, 1, &[(1, neg)], vec![vec![2], vec![-2]]).unwrap();
        let fr = GaloisFrame::new(g, &[1], 1, PrimePower::new(5, 1).unwrap()).unwrap();
        let t = TorusData::new(&d, &fr).unwrap();
        assert_eq!(t.invariants.rank_m, 0);
        assert_eq!(t.invariants.det_q, 1);
        assert_eq!(t.invariants.m_frob, 1);
        assert_eq!(t.invariants.cochar_coinv_fixed, 2);
        assert_eq!(t.invariants.cochar_gamma_coinv, 2);
    }
}
