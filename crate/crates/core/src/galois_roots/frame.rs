use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result, ValidationFailure};
use crate::qexact::PrimePower;
use serde::Serialize;

/// Invariants of the fixed field of a subgroup H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldInvariants {
    pub degree: i128,
    pub e: i128,
    pub f: i128,
    pub disc: i128,
}

/// Finite Galois quotient with inertia subgroup and Frobenius element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisFrame {
    group: FiniteGroup,
    inertia: Subgroup,
    tau: usize,
    frobenius: usize,
    q: PrimePower,
}

const MODULE: &str = "galois_roots";

impl GaloisFrame {
    /// `inertia_gens` generate I. Every violated invariant is reported.
    pub fn new(group: FiniteGroup, inertia_gens: &[usize], frobenius: usize, q: PrimePower) -> Result<Self> {
        let n = group.order();
        let mut errs = Vec::new();
        if inertia_gens.iter().any(|x| *x >= n) || frobenius >= n {
            return Err(Error::Validation(vec![ValidationFailure::new(
                MODULE,
                "GaloisFrame",
                "inertia or frobenius element out of range",
            )]));
        }
        let inertia = group.generate(inertia_gens);
        if !group.is_normal(&inertia) {
            errs.push(ValidationFailure::new(MODULE, "inertia", "inertia is not normal"));
        }
        let tau = group.cyclic_generator(&inertia);
        if tau.is_none() {
            errs.push(ValidationFailure::new(MODULE, "inertia", "inertia is not cyclic"));
        }
        if inertia.len() as i128 % q.p() == 0 {
            errs.push(ValidationFailure::new(
                MODULE,
                "inertia",
                format!("|I| = {} is divisible by p = {} (wild)", inertia.len(), q.p()),
            ));
        }
        let mut gens = inertia.clone();
        gens.push(frobenius);
        if group.generate(&gens).len() != n {
            errs.push(ValidationFailure::new(
                MODULE,
                "frobenius",
                "Frobenius does not generate the quotient by inertia",
            ));
        }
        if !errs.is_empty() {
            return Err(Error::Validation(errs));
        }
        Ok(GaloisFrame {
            group,
            inertia,
            tau: tau.unwrap(),
            frobenius,
            q,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn inertia(&self) -> &[usize] {
        &self.inertia
    }

    pub fn inertia_generator(&self) -> usize {
        self.tau
    }

    pub fn frobenius(&self) -> usize {
        self.frobenius
    }

    pub fn q(&self) -> &PrimePower {
        &self.q
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Soft checks that do not invalidate the frame.
    pub fn diagnostics(&self) -> Vec<String> {
        let g = &self.group;
        let lhs = g.conj(self.frobenius, self.tau);
        let k = (self.q.q() as usize) % self.inertia.len().max(1);
        let rhs = g.pow(self.tau, k as i64);
        if lhs == rhs {
            vec![]
        } else {
            vec![format!(
                "Frobenius conjugates the inertia generator {} to {} rather than its q-th power {}",
                self.tau, lhs, rhs
            )]
        }
    }

    pub fn field_invariants(&self, h: &[usize]) -> Result<FieldInvariants> {
        if !self.group.is_subgroup(h) {
            return Err(Error::NotSubgroup(format!("{h:?}")));
        }
        let degree = (self.order() / h.len()) as i128;
        let ih = FiniteGroup::intersect(&self.inertia, h);
        let e = (self.inertia.len() / ih.len()) as i128;
        Ok(FieldInvariants {
            degree,
            e,
            f: degree / e,
            disc: degree - degree / e,
        })
    }

    /// The frame of the fixed field of H: group H (re-indexed), inertia I ∩ H
    /// and a Frobenius in H mapping to σ^f modulo inertia, f = [Γ : HI].
    /// Returns the frame and the embedding of its elements into Γ.
    pub fn sub_frame(&self, h: &[usize]) -> Result<(GaloisFrame, Vec<usize>)> {
        let g = &self.group;
        let table = g.subgroup_table(h)?;
        let mut hi = h.to_vec();
        hi.extend_from_slice(&self.inertia);
        let hi = g.generate(&hi);
        let f = (self.order() / hi.len()) as i64;
        let target = g.pow(self.frobenius, f);
        let target_coset: Subgroup = {
            let mut v: Vec<usize> = self.inertia.iter().map(|&i| g.mul(target, i)).collect();
            v.sort();
            v
        };
        let frob = h
            .iter()
            .position(|x| FiniteGroup::contains(&target_coset, *x))
            .ok_or_else(|| Error::Consistency("no Frobenius lift in subgroup".into()))?;
        let ih = FiniteGroup::intersect(&self.inertia, h);
        let pos: Vec<usize> = ih.iter().map(|x| h.binary_search(x).unwrap()).collect();
        let frame = GaloisFrame::new(table, &pos, frob, self.q)?;
        Ok((frame, h.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i128) -> PrimePower {
        PrimePower::new(p, 1).unwrap()
    }

    #[test]
    fn field_invariant_examples() {
        let fr = GaloisFrame::new(FiniteGroup::cyclic(4), &[2], 1, q(3)).unwrap();
        let fi = fr.field_invariants(&[0]).unwrap();
        assert_eq!((fi.degree, fi.e, fi.f, fi.disc), (4, 2, 2, 2));
        let fi = fr.field_invariants(&[0, 1, 2, 3]).unwrap();
        assert_eq!((fi.degree, fi.e, fi.f, fi.disc), (1, 1, 1, 0));
        let fi = fr.field_invariants(&[0, 2]).unwrap();
        assert_eq!((fi.degree, fi.e, fi.f, fi.disc), (2, 1, 2, 0));
        assert!(fr.field_invariants(&[0, 1]).is_err());
    }

    #[test]
    fn frame_validation() {
        // wild inertia
        assert!(GaloisFrame::new(FiniteGroup::cyclic(3), &[1], 0, q(3)).is_err());
        // Frobenius fails to generate
        assert!(GaloisFrame::new(FiniteGroup::cyclic(4), &[], 2, q(3)).is_err());
        // non-normal inertia in S3
        let (s3, _) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let err = GaloisFrame::new(s3.clone(), &[1], 2, q(5)).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        assert!(GaloisFrame::new(s3, &[2], 1, q(5)).is_ok());
    }

    #[test]
    fn sub_frame_of_unramified_quadratic() {
        let fr = GaloisFrame::new(FiniteGroup::cyclic(4), &[2], 1, q(3)).unwrap();
        let (sub, emb) = fr.sub_frame(&[0, 2]).unwrap();
        assert_eq!(emb, vec![0, 2]);
        assert_eq!(sub.order(), 2);
        assert_eq!(sub.inertia().len(), 2);
        let (sub, _) = fr.sub_frame(&[0]).unwrap();
        assert_eq!(sub.order(), 1);
    }

    #[test]
    fn e_and_f_multiply_along_chains() {
        let fr = GaloisFrame::new(FiniteGroup::cyclic(8), &[4], 1, q(3)).unwrap();
        let chain = [vec![0], vec![0, 4], vec![0, 2, 4, 6], fr.group().whole()];
        for w in chain.windows(2) {
            let small = fr.field_invariants(&w[0]).unwrap();
            let big = fr.field_invariants(&w[1]).unwrap();
            let (sub, _) = fr.sub_frame(&w[1]).unwrap();
            let pos: Vec<usize> = w[0].iter().map(|x| w[1].binary_search(x).unwrap()).collect();
            let rel = sub.field_invariants(&pos).unwrap();
            assert_eq!(small.e, big.e * rel.e);
            assert_eq!(small.f, big.f * rel.f);
        }
    }
}
