use crate::error::{Error, Result};
use crate::galois_roots::FieldInvariants;
use crate::qexact::{exp_q, PrimePower, QMonomial};
use crate::rational::{int, rat, Rational};
use num_traits::Zero;
use serde::Serialize;

/// A character of W_k: unramified, or ramified of depth ≥ 0 (depth 0 is tame).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharDescriptor {
    pub ramified: bool,
    #[serde(with = "crate::rational::serde_rational")]
    pub depth: Rational,
}

impl CharDescriptor {
    pub fn unramified() -> Self {
        CharDescriptor {
            ramified: false,
            depth: Rational::zero(),
        }
    }

    pub fn ramified(depth: Rational) -> Result<Self> {
        if depth < Rational::zero() {
            return Err(Error::Invalid("depth must be nonnegative".into()));
        }
        Ok(CharDescriptor { ramified: true, depth })
    }
}

/// cond χ = 0 if unramified, 1 + depth χ otherwise.
pub fn conductor_char(c: &CharDescriptor) -> Rational {
    if c.ramified {
        int(1) + c.depth
    } else {
        Rational::zero()
    }
}

/// cond Ind_{ℓ/k} χ = [ℓ:k](1 + depth_k χ) for tame ℓ/k and ramified χ.
pub fn conductor_tame_induction(ext: &FieldInvariants, c: &CharDescriptor) -> Result<Rational> {
    if !c.ramified {
        return Err(Error::Invalid(
            "the induced-conductor formula needs a ramified character".into(),
        ));
    }
    Ok(int(ext.degree) * (int(1) + c.depth))
}

/// cond Ind_{ℓ/k} π = ord_k(disc_{ℓ/k}) dim π + f_{ℓ/k} cond π.
pub fn conductor_induction_general(disc_val: i128, f: i128, dim: i128, cond_sub: Rational) -> Result<Rational> {
    if disc_val < 0 || f < 0 || dim < 0 || cond_sub < Rational::zero() {
        return Err(Error::Invalid("conductor inputs must be nonnegative".into()));
    }
    Ok(int(disc_val * dim) + int(f) * cond_sub)
}

/// The general induction formula for a tame extension: disc valuation (e-1)f and
/// the ℓ-conductor 1 + e·depth_k χ of the restricted character.
pub fn conductor_tame_via_discriminant(ext: &FieldInvariants, c: &CharDescriptor) -> Result<Rational> {
    let cond_l = conductor_char(&CharDescriptor {
        ramified: c.ramified,
        depth: c.depth * int(ext.e),
    });
    conductor_induction_general(ext.disc, ext.f, 1, cond_l)
}

/// |ε| = q^{cond/2}
pub fn eps_abs(cond: Rational, q: &PrimePower) -> Result<QMonomial> {
    if cond < Rational::zero() {
        return Err(Error::Invalid("conductor must be nonnegative".into()));
    }
    Ok(exp_q(cond * rat(1, 2), q))
}

/// Tame extension of degree e·f, as seen from its invariants.
pub fn tame_extension(e: i128, f: i128) -> FieldInvariants {
    FieldInvariants {
        degree: e * f,
        e,
        f,
        disc: (e - 1) * f,
    }
}
