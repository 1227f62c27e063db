use super::conductor::{conductor_tame_induction, conductor_tame_via_discriminant, eps_abs, CharDescriptor};
use crate::error::{Error, Result};
use crate::formal_degree::Degree;
use crate::galois_roots::{Depth, GRootDatum, HoweFiltration, Orbits};
use crate::qexact::{exp_q, PrimePower, QMonomial};
use crate::rational::{int, rat, Rational};
use crate::torus::TorusData;
use crate::zlattice::{
    coinvariants_order, group_coinvariants, rational_det, rational_inverse, twisted_fixed_order, IntMatrix,
};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// |γ(0, V_toral)| as monomial times rational, with the L- and ε-values it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToralGamma {
    pub gamma: Degree,
    /// |L(0, V_toral)| = 1/|det(1 - F | M)|
    #[serde(with = "crate::rational::serde_rational")]
    pub l_at_0: Rational,
    /// |L(1, V_toral^∨)| = 1/|det(1 - q^{-1}F^{-T} | M)|
    #[serde(with = "crate::rational::serde_rational")]
    pub l_at_1_dual: Rational,
    /// cond V_toral = dim S^a - rank M
    #[serde(with = "crate::rational::serde_rational")]
    pub conductor: Rational,
}

/// |γ(0,V_toral)| = |ε|·|L(1,V^∨)|/|L(0,V)|, checked against
/// exp_q(½(dim S^a + rank M))·|M_Frob|/|det(qF - 1 | M)|.
pub fn toral_gamma_abs(frob_m: &IntMatrix, dim_sa: usize, q: &PrimePower) -> Result<ToralGamma> {
    let r = frob_m.rows();
    if r > dim_sa {
        return Err(Error::Dimension("rank M exceeds dim S^a".into()));
    }
    let m_frob = coinvariants_order(frob_m)?.expect_finite("M_Frob")?;
    let det_q = if r == 0 { 1 } else { twisted_fixed_order(frob_m, q)? };
    let closed = Degree {
        prefactor: rat(m_frob, det_q),
        monomial: exp_q(rat((dim_sa + r) as i128, 2), q),
    };

    let conductor = int((dim_sa - r) as i128);
    let l_at_0 = Rational::one() / int(frob_m.minus_identity().det()?.abs());
    let finv =
        rational_inverse(&frob_m.to_rational()).ok_or_else(|| Error::SingularDeterminant("Frobenius on M".into()))?;
    let qinv = Rational::one() / int(q.q());
    let dual: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let id = if i == j { Rational::one() } else { Rational::zero() };
                    id - qinv * finv[j][i]
                })
                .collect()
        })
        .collect();
    let l_at_1_dual = Rational::one() / rational_det(&dual).abs();
    let via_l = eps_abs(conductor, q)?.scale(l_at_1_dual / l_at_0)?;
    if via_l != closed.value()? {
        return Err(Error::Consistency(format!(
            "toral gamma: L-values give {via_l}, closed form {}",
            closed.value()?
        )));
    }
    Ok(ToralGamma {
        gamma: closed,
        l_at_0,
        l_at_1_dual,
        conductor,
    })
}

/// depth ψ_α: r for θ-depth r > 0, zero for nonpositive θ-depth.
pub fn psi_depth(d: &Depth) -> Rational {
    d.value().unwrap_or_else(Rational::zero)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitConductor {
    pub orbit: usize,
    pub size: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub psi_depth: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub conductor: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootGamma {
    pub gamma: QMonomial,
    pub orbitwise: QMonomial,
    pub conductors: Vec<OrbitConductor>,
}

/// exp_q(½|R| + ½Σ r_i(|R_{i+1}|-|R_i|)), checked against ∏ |ε(Ind ψ_α)| over
/// orbits; every ψ_α is ramified so the L-factors are 1.
pub fn root_gamma_abs(filt: &HoweFiltration, orbits: &Orbits, q: &PrimePower) -> Result<RootGamma> {
    let nroots: usize = orbits.iter().map(|o| o.size()).sum();
    let closed = exp_q(rat(nroots as i128, 2) + filt.weighted_break_sum() * rat(1, 2), q);
    let mut orbitwise = QMonomial::one(q);
    let mut conductors = Vec::new();
    for o in orbits.iter() {
        let psi = CharDescriptor::ramified(psi_depth(&filt.depth_of_root(o.id)))?;
        let cond = conductor_tame_induction(&o.invariants, &psi)?;
        if cond != conductor_tame_via_discriminant(&o.invariants, &psi)? {
            return Err(Error::Consistency(format!(
                "conductor formulas disagree at orbit {}",
                o.id
            )));
        }
        orbitwise = orbitwise.mul(&eps_abs(cond, q)?)?;
        conductors.push(OrbitConductor {
            orbit: o.id,
            size: o.size(),
            psi_depth: psi.depth,
            conductor: cond,
        });
    }
    if orbitwise != closed {
        return Err(Error::Consistency(format!(
            "root gamma: orbitwise product {orbitwise} differs from closed form {closed}"
        )));
    }
    Ok(RootGamma {
        gamma: closed,
        orbitwise,
        conductors,
    })
}

/// |π_0(S_φ^♮)| = |X_*(S^a)_Γ|
pub fn component_group_order(datum: &GRootDatum) -> Result<i128> {
    group_coinvariants(&datum.cochar_actions()?, datum.rank())?
        .order()
        .finite()
        .ok_or_else(|| Error::Infinite("X_*(S^a)_Γ is infinite (datum is not elliptic)".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisSide {
    pub toral: ToralGamma,
    pub root: RootGamma,
    pub component_group: i128,
    pub degree: Degree,
}

/// |M_Frob|/(|X_{*,Γ}|·|det(qF - 1 | M)|)·exp_q(½dim G^a + ½rank M + ½Σ r_i(|R_{i+1}|-|R_i|)),
/// checked against |γ(V_toral)|·|γ(V_root)|/|π_0|.
pub fn galois_side(
    datum: &GRootDatum,
    orbits: &Orbits,
    filt: &HoweFiltration,
    torus: &TorusData,
    q: &PrimePower,
) -> Result<GaloisSide> {
    let toral = toral_gamma_abs(&torus.frob_m, torus.rank, q)?;
    let root = root_gamma_abs(filt, orbits, q)?;
    let component_group = component_group_order(datum)?;
    let inv = &torus.invariants;
    let degree = Degree {
        prefactor: rat(inv.m_frob, component_group * inv.det_q),
        monomial: exp_q(
            rat((datum.dim_g() + inv.rank_m) as i128, 2) + filt.weighted_break_sum() * rat(1, 2),
            q,
        ),
    };
    let assembled = toral.gamma.value()?.mul(&root.gamma)?.scale(rat(1, component_group))?;
    if assembled != degree.value()? {
        return Err(Error::Consistency(
            "Galois side assembly disagrees with the closed form".into(),
        ));
    }
    Ok(GaloisSide {
        toral,
        root,
        component_group,
        degree,
    })
}
