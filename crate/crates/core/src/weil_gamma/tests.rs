use super::*;
use crate::galois_roots::{classify_orbits, howe_filtration, Depth, FiniteGroup, GRootDatum, GaloisFrame};
use crate::qexact::{exp_q, PrimePower};
use crate::rational::{int, rat};
use crate::torus::TorusData;
use crate::zlattice::IntMatrix;
use std::collections::BTreeMap;

#[test]
fn toral_gamma_examples() {
    let q = PrimePower::new(3, 1).unwrap();
    let neg = IntMatrix::square(&[vec![-1]]).unwrap();
    let t = toral_gamma_abs(&neg, 1, &q).unwrap();
    assert_eq!(t.gamma.value().unwrap().to_rational(), Some(rat(3, 2)));
    assert_eq!(t.l_at_0, rat(1, 2));

    let empty = IntMatrix::zeros(0, 0);
    let t = toral_gamma_abs(&empty, 1, &q).unwrap();
    assert_eq!(t.gamma.value().unwrap(), exp_q(rat(1, 2), &q));

    let rot = IntMatrix::square(&[vec![0, -1], vec![1, 0]]).unwrap();
    let t = toral_gamma_abs(&rot, 2, &q).unwrap();
    assert_eq!(t.gamma.value().unwrap().to_rational(), Some(rat(9, 5)));

    let id = IntMatrix::identity(1);
    assert!(toral_gamma_abs(&id, 1, &q).is_err());
}

#[test]
fn toral_gamma_full_unramified_lattice() {
    // M = X^*, trivial inertia: exp_q(dim S^a)·|det(F - 1)|/|det(qF - 1)|
    let q = PrimePower::new(5, 1).unwrap();
    let f = IntMatrix::square(&[vec![0, -1], vec![1, -1]]).unwrap();
    let t = toral_gamma_abs(&f, 2, &q).unwrap();
    let expect = exp_q(int(2), &q).scale(rat(3, 31)).unwrap();
    assert_eq!(t.gamma.value().unwrap(), expect);
}

#[test]
fn psi_depth_rule() {
    assert_eq!(psi_depth(&Depth::Positive(rat(1, 2))), rat(1, 2));
    assert_eq!(psi_depth(&Depth::Nonpositive), int(0));
    assert_eq!(psi_depth(&Depth::Positive(int(2))), int(2));
}

fn sl2(p: i128, ramified: bool) -> (GRootDatum, GaloisFrame) {
    let g = FiniteGroup::cyclic(2);
    let neg = IntMatrix::square(&[vec![-1]]).unwrap();
    let d = GRootDatum::new(&g, 1, &[(1, neg)], vec![vec![1], vec![-1]]).unwrap();
    let inertia: &[usize] = if ramified { &[1] } else { &[] };
    let fr = GaloisFrame::new(g, inertia, 1, PrimePower::new(p, 1).unwrap()).unwrap();
    (d, fr)
}

fn galois_value(p: i128, ramified: bool, depth: Option<crate::Rational>) -> GaloisSide {
    let (d, fr) = sl2(p, ramified);
    let o = classify_orbits(&d, &fr).unwrap();
    let (dep, total) = match depth {
        Some(r) => (Depth::Positive(r), r),
        None => (Depth::Nonpositive, int(0)),
    };
    let filt = howe_filtration(&d, &o, &BTreeMap::from([(0, dep)]), total).unwrap();
    let t = TorusData::new(&d, &fr).unwrap();
    galois_side(&d, &o, &filt, &t, fr.q()).unwrap()
}

#[test]
fn root_gamma_examples() {
    let q = PrimePower::new(5, 1).unwrap();
    let g = galois_value(5, true, Some(rat(1, 2)));
    assert_eq!(g.root.gamma, exp_q(rat(3, 2), &q));
    let g = galois_value(5, false, None);
    assert_eq!(g.root.gamma, exp_q(int(1), &q));

    let tg = FiniteGroup::trivial();
    let roots = vec![
        vec![1, 0],
        vec![0, 1],
        vec![1, 1],
        vec![-1, 0],
        vec![0, -1],
        vec![-1, -1],
    ];
    let d = GRootDatum::new_permissive(&tg, 2, &[], roots).unwrap();
    let fr = GaloisFrame::new(tg, &[], 0, q).unwrap();
    let o = classify_orbits(&d, &fr).unwrap();
    let third = Depth::Positive(rat(1, 3));
    let one = Depth::Positive(int(1));
    let depths = BTreeMap::from([(0, third), (3, third), (1, one), (2, one), (4, one), (5, one)]);
    let filt = howe_filtration(&d, &o, &depths, int(1)).unwrap();
    assert_eq!(filt.level_sizes(), vec![0, 2, 6]);
    let r = root_gamma_abs(&filt, &o, &q).unwrap();
    assert_eq!(r.gamma, exp_q(rat(16, 3), &q));

    // conductors add over any split of the orbits
    let n = r.conductors.len();
    for mask in 0u32..(1 << n) {
        let part = |inside: bool| -> crate::Rational {
            r.conductors
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i & 1 == 1) == inside)
                .map(|(_, c)| c.conductor)
                .sum()
        };
        let prod = eps_abs(part(true), &q)
            .unwrap()
            .mul(&eps_abs(part(false), &q).unwrap())
            .unwrap();
        assert_eq!(prod, r.gamma);
    }
}

#[test]
fn component_groups() {
    let (d, _) = sl2(3, false);
    assert_eq!(component_group_order(&d).unwrap(), 2);

    let g3 = FiniteGroup::cyclic(3);
    let d = GRootDatum::new_permissive(&g3, 1, &[(1, IntMatrix::identity(1))], vec![vec![1], vec![-1]]).unwrap();
    assert!(component_group_order(&d).is_err());

    let g4 = FiniteGroup::cyclic(4);
    let rot = IntMatrix::square(&[vec![0, -1], vec![1, 0]]).unwrap();
    let d = GRootDatum::new(
        &g4,
        2,
        &[(1, rot)],
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
    )
    .unwrap();
    assert_eq!(component_group_order(&d).unwrap(), 2);
}

#[test]
fn galois_side_examples() {
    let g = galois_value(3, false, None);
    assert_eq!(g.degree.prefactor, rat(1, 4));
    assert_eq!(g.degree.value().unwrap().to_rational(), Some(rat(9, 4)));
    let g = galois_value(5, true, Some(rat(1, 2)));
    assert_eq!(g.degree.value().unwrap().to_rational(), Some(rat(25, 2)));
    let g = galois_value(5, true, None);
    let q = PrimePower::new(5, 1).unwrap();
    assert_eq!(g.degree.prefactor, rat(1, 2));
    assert_eq!(g.degree.monomial, exp_q(rat(3, 2), &q));
}
