use super::matrix::{rank_of_vectors, IntMatrix};
use super::snf::{hermite_rows, integer_kernel, smith_normal_form};
use crate::error::{Error, Result};
use crate::qexact::PrimePower;
use serde::{Serialize, Serializer};
use std::fmt;

/// Order of a finitely generated abelian group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(i128),
    Infinite,
}

impl GroupOrder {
    pub fn finite(self) -> Option<i128> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }

    pub fn expect_finite(self, what: &str) -> Result<i128> {
        self.finite().ok_or_else(|| Error::Infinite(what.to_string()))
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "INFINITE"),
        }
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Z^r + Z/d1 + ... + Z/dk, optionally remembering a presentation Z^n / R Z^m
/// and an endomorphism of Z^n preserving the relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<i128>,
    relations: Option<IntMatrix>,
    endomorphism: Option<IntMatrix>,
}

impl FgAbelianGroup {
    /// Cokernel of the n x m relation matrix.
    pub fn from_relations(relations: &IntMatrix) -> Result<Self> {
        let n = relations.rows();
        let snf = smith_normal_form(relations)?;
        let diag = snf.diagonal();
        let rank = snf.rank();
        Ok(FgAbelianGroup {
            free_rank: n - rank,
            torsion: diag.into_iter().filter(|d| *d > 1).collect(),
            relations: Some(relations.clone()),
            endomorphism: None,
        })
    }

    pub fn cyclic(n: i128) -> Result<Self> {
        Self::from_relations(&IntMatrix::square(&[vec![n]])?)
    }

    pub fn free(r: usize) -> Self {
        FgAbelianGroup {
            free_rank: r,
            torsion: vec![],
            relations: Some(IntMatrix::zeros(r, 0)),
            endomorphism: None,
        }
    }

    pub fn with_endomorphism(mut self, f: IntMatrix) -> Result<Self> {
        let rel = self
            .relations
            .as_ref()
            .ok_or_else(|| Error::Invalid("endomorphism needs a presentation".into()))?;
        if f.rows() != rel.rows() || !f.is_square() {
            return Err(Error::Dimension("endomorphism size".into()));
        }
        self.endomorphism = Some(f);
        Ok(self)
    }

    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.torsion.iter().product())
        }
    }

    pub fn relations(&self) -> Option<&IntMatrix> {
        self.relations.as_ref()
    }

    pub fn endomorphism(&self) -> Option<&IntMatrix> {
        self.endomorphism.as_ref()
    }
}

/// A saturated sublattice of Z^n with a basis (columns) and a left inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    basis: IntMatrix,
    left_inverse: IntMatrix,
}

impl Sublattice {
    /// `basis` is n x k with linearly independent columns spanning a saturated lattice.
    pub fn from_saturated_basis(basis: IntMatrix) -> Result<Self> {
        let (n, k) = (basis.rows(), basis.cols());
        let snf = smith_normal_form(&basis)?;
        if snf.diagonal().iter().any(|d| *d != 1) {
            return Err(Error::Invalid("basis does not span a saturated sublattice".into()));
        }
        let mut proj = IntMatrix::zeros(k, n);
        for i in 0..k {
            proj.set(i, i, 1);
        }
        let left_inverse = snf.v.mul(&proj)?.mul(&snf.u)?;
        Ok(Sublattice { basis, left_inverse })
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn left_inverse(&self) -> &IntMatrix {
        &self.left_inverse
    }

    /// Matrix of an endomorphism preserving the sublattice, in the chosen basis.
    pub fn restrict(&self, f: &IntMatrix) -> Result<IntMatrix> {
        let fb = f.mul(&self.basis)?;
        let c = self.left_inverse.mul(&fb)?;
        if self.basis.mul(&c)? != fb {
            return Err(Error::Invalid("endomorphism does not preserve the sublattice".into()));
        }
        Ok(c)
    }
}

/// |coker(F - 1)| = |det(F - 1)|, or INFINITE when F has fixed vectors.
pub fn coinvariants_order(f: &IntMatrix) -> Result<GroupOrder> {
    if !f.is_square() {
        return Err(Error::Dimension("Frobenius must be square".into()));
    }
    let d = f.minus_identity().det()?;
    Ok(if d == 0 {
        GroupOrder::Infinite
    } else {
        GroupOrder::Finite(d.abs())
    })
}

/// |det(qF - 1)|, the number of Frobenius-fixed points of the torus with
/// character lattice M.
pub fn twisted_fixed_order(f: &IntMatrix, q: &PrimePower) -> Result<i128> {
    if !f.is_square() {
        return Err(Error::Dimension("Frobenius must be square".into()));
    }
    let d = f.scale(q.q()).minus_identity().det()?;
    if d == 0 {
        return Err(Error::SingularDeterminant("det(qF - 1) = 0".into()));
    }
    Ok(d.abs())
}

/// X_G for the group generated by `gens` acting on Z^n.
pub fn group_coinvariants(gens: &[IntMatrix], n: usize) -> Result<FgAbelianGroup> {
    let parts: Vec<IntMatrix> = gens.iter().map(|g| g.minus_identity()).collect();
    let rel = if parts.is_empty() {
        IntMatrix::zeros(n, 0)
    } else {
        IntMatrix::hstack(&parts, n)?
    };
    FgAbelianGroup::from_relations(&rel)
}

/// Vectors fixed by every generator, as a saturated sublattice.
pub fn invariant_sublattice(gens: &[IntMatrix], n: usize) -> Result<Sublattice> {
    if gens.is_empty() {
        return Sublattice::from_saturated_basis(IntMatrix::identity(n));
    }
    let parts: Vec<IntMatrix> = gens.iter().map(|g| g.minus_identity()).collect();
    let stacked = IntMatrix::vstack(&parts, n)?;
    Sublattice::from_saturated_basis(integer_kernel(&stacked)?)
}

/// Invariant sublattice together with the restriction of `frob` to it.
pub fn invariant_sublattice_with(gens: &[IntMatrix], frob: &IntMatrix) -> Result<(Sublattice, IntMatrix)> {
    let m = invariant_sublattice(gens, frob.rows())?;
    let f = m.restrict(frob)?;
    Ok((m, f))
}

/// |ker(F - 1 : G -> G)| for G = Z^n / N with N the column span of the relations.
pub fn fg_fixed_order(g: &FgAbelianGroup) -> Result<i128> {
    let rel = g
        .relations
        .as_ref()
        .ok_or_else(|| Error::Invalid("group has no presentation".into()))?;
    let f = g
        .endomorphism
        .as_ref()
        .ok_or_else(|| Error::Invalid("group has no endomorphism".into()))?;
    let n = rel.rows();
    // P = {x : (F-1)x in N}, read off from ker [F-1 | -R].
    let big = IntMatrix::hstack(&[f.minus_identity(), rel.scale(-1)], n)?;
    let ker = integer_kernel(&big)?;
    let mut pgen = IntMatrix::zeros(n, ker.cols());
    for j in 0..ker.cols() {
        for i in 0..n {
            pgen.set(i, j, ker.get(i, j));
        }
    }
    let rank_p = smith_normal_form(&pgen)?.rank();
    let snf_n = smith_normal_form(rel)?;
    if rank_p > snf_n.rank() {
        return Err(Error::Infinite("fixed subgroup has a free part".into()));
    }
    let snf_p = smith_normal_form(&pgen)?;
    let (a, b) = (snf_n.torsion_product(), snf_p.torsion_product());
    if a % b != 0 {
        return Err(Error::Consistency("lattice index is not integral".into()));
    }
    Ok(a / b)
}

/// X_I with the Frobenius endomorphism attached.
pub fn coinvariants_with_frobenius(gens: &[IntMatrix], frob: &IntMatrix) -> Result<FgAbelianGroup> {
    group_coinvariants(gens, frob.rows())?.with_endomorphism(frob.clone())
}

/// Hermite basis (as columns) of the lattice spanned by the given columns.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    hermite_rows(&gens.transpose()).transpose()
}

pub fn rank(vs: &[Vec<i128>], n: usize) -> usize {
    rank_of_vectors(vs, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i128>]) -> IntMatrix {
        IntMatrix::square(rows).unwrap()
    }

    #[test]
    fn coinvariant_examples() {
        assert_eq!(coinvariants_order(&m(&[vec![-1]])).unwrap(), GroupOrder::Finite(2));
        assert_eq!(coinvariants_order(&m(&[vec![1]])).unwrap(), GroupOrder::Infinite);
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(coinvariants_order(&rot).unwrap(), GroupOrder::Finite(2));
    }

    #[test]
    fn twisted_examples() {
        let q3 = PrimePower::new(3, 1).unwrap();
        assert_eq!(twisted_fixed_order(&m(&[vec![1]]), &q3).unwrap(), 2);
        assert_eq!(twisted_fixed_order(&m(&[vec![-1]]), &q3).unwrap(), 4);
        assert_eq!(twisted_fixed_order(&IntMatrix::zeros(0, 0), &q3).unwrap(), 1);
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(twisted_fixed_order(&rot, &q3).unwrap(), 10);
        assert_eq!(twisted_fixed_order(&rot.transpose(), &q3).unwrap(), 10);
    }

    #[test]
    fn group_coinvariant_examples() {
        let g = group_coinvariants(&[m(&[vec![-1]])], 1).unwrap();
        assert_eq!(g.order(), GroupOrder::Finite(2));
        let swap = m(&[vec![0, 1], vec![1, 0]]);
        let g = group_coinvariants(&[swap], 2).unwrap();
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.order(), GroupOrder::Infinite);
        let g = group_coinvariants(&[], 1).unwrap();
        assert_eq!(g.order(), GroupOrder::Infinite);
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(group_coinvariants(&[rot], 2).unwrap().order(), GroupOrder::Finite(2));
    }

    #[test]
    fn invariant_sublattice_examples() {
        let swap = m(&[vec![0, 1], vec![1, 0]]);
        let frob = m(&[vec![-1, 0], vec![0, -1]]);
        let (sub, f) = invariant_sublattice_with(&[swap], &frob).unwrap();
        assert_eq!(sub.basis().to_rows(), vec![vec![1], vec![1]]);
        assert_eq!(f.to_rows(), vec![vec![-1]]);
        let (sub, f) = invariant_sublattice_with(&[], &frob).unwrap();
        assert_eq!(sub.rank(), 2);
        assert_eq!(f, frob);
        let sub = invariant_sublattice(&[m(&[vec![-1]])], 1).unwrap();
        assert_eq!(sub.rank(), 0);
    }

    #[test]
    fn fixed_order_examples() {
        let z = FgAbelianGroup::free(1).with_endomorphism(m(&[vec![-1]])).unwrap();
        assert_eq!(fg_fixed_order(&z).unwrap(), 1);
        let z2 = FgAbelianGroup::cyclic(2)
            .unwrap()
            .with_endomorphism(m(&[vec![1]]))
            .unwrap();
        assert_eq!(fg_fixed_order(&z2).unwrap(), 2);
        let z4 = FgAbelianGroup::cyclic(4)
            .unwrap()
            .with_endomorphism(m(&[vec![3]]))
            .unwrap();
        assert_eq!(fg_fixed_order(&z4).unwrap(), 2);
        let zid = FgAbelianGroup::free(1).with_endomorphism(m(&[vec![1]])).unwrap();
        assert!(matches!(fg_fixed_order(&zid), Err(Error::Infinite(_))));
    }

    #[test]
    fn left_inverse_recovers_coordinates() {
        let b = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let s = Sublattice::from_saturated_basis(b.clone()).unwrap();
        assert_eq!(s.left_inverse().mul(&b).unwrap(), IntMatrix::identity(2));
        let bad = IntMatrix::from_rows(&[vec![2], vec![0]]).unwrap();
        assert!(Sublattice::from_saturated_basis(bad).is_err());
    }
}
