use super::*;
use crate::galois_roots::{
    classify_orbits, howe_filtration, Depth, FiniteGroup, GRootDatum, GaloisFrame, HoweFiltration, Orbits,
};
use crate::mp_filtration::{JumpAssignment, LengthData, ToralJumps};
use crate::qexact::{exp_q, PrimePower, QMonomial};
use crate::rational::{int, rat};
use crate::torus::TorusData;
use crate::zlattice::IntMatrix;
use crate::Rational;
use std::collections::BTreeMap;

struct Fixture {
    datum: GRootDatum,
    frame: GaloisFrame,
    orbits: Orbits,
    jumps: JumpAssignment,
    filt: HoweFiltration,
    torus: TorusData,
}

impl Fixture {
    fn shape(&self) -> YuShape<'_> {
        let lengths = LengthData {
            datum: &self.datum,
            orbits: &self.orbits,
            jumps: &self.jumps,
            toral: &self.torus.toral_jumps,
        };
        YuShape::new(lengths, &self.filt, *self.frame.q()).unwrap()
    }
}

fn sl2(p: i128, ramified: bool, depth: Option<Rational>, offset: Rational) -> Fixture {
    let g = FiniteGroup::cyclic(2);
    let neg = IntMatrix::square(&[vec![-1]]).unwrap();
    let datum = GRootDatum::new(&g, 1, &[(1, neg)], vec![vec![1], vec![-1]]).unwrap();
    let inertia: &[usize] = if ramified { &[1] } else { &[] };
    let frame = GaloisFrame::new(g, inertia, 1, PrimePower::new(p, 1).unwrap()).unwrap();
    let orbits = classify_orbits(&datum, &frame).unwrap();
    let jumps = JumpAssignment::new(&orbits, &BTreeMap::from([(0, offset)])).unwrap();
    let (d, total) = match depth {
        Some(r) => (Depth::Positive(r), r),
        None => (Depth::Nonpositive, int(0)),
    };
    let filt = howe_filtration(&datum, &orbits, &BTreeMap::from([(0, d)]), total).unwrap();
    let torus = TorusData::new(&datum, &frame).unwrap();
    Fixture {
        datum,
        frame,
        orbits,
        jumps,
        filt,
        torus,
    }
}

#[test]
fn compact_induction_examples() {
    let q = PrimePower::new(5, 1).unwrap();
    let one = QMonomial::one(&q);
    assert_eq!(compact_induction_degree(&one, &one).unwrap(), one);
    let d = compact_induction_degree(&exp_q(int(1), &q), &exp_q(int(-2), &q)).unwrap();
    assert_eq!(d, exp_q(int(3), &q));
    assert!(compact_induction_degree(&one, &one.scale(int(-1)).unwrap()).is_err());
}

#[test]
fn dl_dimension_examples() {
    let q = PrimePower::new(5, 1).unwrap();
    assert_eq!(dl_dimension(order_sl2(5), 6, 3, 1, &q).unwrap(), 4);
    assert_eq!(dl_dimension(7, 7, 1, 1, &q).unwrap(), 1);
    let q3 = PrimePower::new(3, 1).unwrap();
    assert_eq!(order_gl2(3), 48);
    assert_eq!(dl_dimension(48, 8, 4, 2, &q3).unwrap(), 2);
    assert!(dl_dimension(48, 5, 4, 2, &q3).is_err());
}

#[test]
fn unramified_depth_zero_regular_degree() {
    let fx = sl2(3, false, None, int(0));
    let shape = fx.shape();
    let r = regular_degree(&shape, &fx.torus).unwrap();
    assert_eq!(r.by_torus_points.value().unwrap().to_rational(), Some(rat(9, 4)));
    assert_eq!(r.by_torus_index.value().unwrap().to_rational(), Some(rat(9, 4)));
    let dz = regular_depth_zero_input(&shape, &fx.torus).unwrap();
    let g = general_degree(&shape, &dz).unwrap();
    assert_eq!(g.degree.value().unwrap(), r.by_torus_index.value().unwrap());
    assert_eq!(g.assembly.enumerated, int(3));
}

#[test]
fn ramified_depth_half_prefactors_differ() {
    let fx = sl2(5, true, Some(rat(1, 2)), int(0));
    let shape = fx.shape();
    let r = regular_degree(&shape, &fx.torus).unwrap();
    assert_eq!(r.by_torus_points.value().unwrap().to_rational(), Some(int(25)));
    assert_eq!(r.by_torus_index.value().unwrap().to_rational(), Some(rat(25, 2)));
    let dz = regular_depth_zero_input(&shape, &fx.torus).unwrap();
    let g = general_degree(&shape, &dz).unwrap();
    assert_eq!(g.degree.value().unwrap(), r.by_torus_index.value().unwrap());
    assert_eq!(heisenberg_dims(&shape), vec![QMonomial::one(&shape.q)]);
}

#[test]
fn general_degree_depth_one_unramified() {
    // dim G^a = 3, reductive quotient of dimension 1, d = 1, r_0 = 1, two roots in R_1 \ R_0.
    for offset in [int(0), rat(1, 2)] {
        let fx = sl2(5, false, Some(int(1)), offset);
        let shape = fx.shape();
        let dz = DepthZeroInput {
            dim_rho: QMonomial::one(&shape.q),
            stab_index: QMonomial::one(&shape.q),
        };
        let g = general_degree(&shape, &dz).unwrap();
        assert_eq!(g.degree.value().unwrap(), exp_q(int(3), &shape.q));
        let r = regular_degree(&shape, &fx.torus).unwrap();
        assert_eq!(r.by_torus_points.monomial, exp_q(int(3), &shape.q));
    }
}

#[test]
fn heisenberg_on_swapped_pair() {
    let g = FiniteGroup::cyclic(2);
    let swap = IntMatrix::square(&[vec![0, 1], vec![1, 0]]).unwrap();
    let datum = GRootDatum::new_permissive(
        &g,
        2,
        &[(1, swap.clone())],
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
    )
    .unwrap();
    let q = PrimePower::new(3, 1).unwrap();
    let frame = GaloisFrame::new(g, &[1], 1, q).unwrap();
    let orbits = classify_orbits(&datum, &frame).unwrap();
    let jumps = JumpAssignment::new(&orbits, &BTreeMap::from([(0, rat(1, 2))])).unwrap();
    let toral = ToralJumps::from_inertia_generator(&swap).unwrap();
    let depths = BTreeMap::from([(0, Depth::Positive(int(1)))]);
    let filt = howe_filtration(&datum, &orbits, &depths, int(1)).unwrap();
    let lengths = LengthData {
        datum: &datum,
        orbits: &orbits,
        jumps: &jumps,
        toral: &toral,
    };
    let shape = YuShape::new(lengths, &filt, q).unwrap();
    assert_eq!(heisenberg_dims(&shape), vec![exp_q(int(1), &q)]);
    let a = volume_assembly(&shape).unwrap();
    assert_eq!(a.enumerated, a.closed_form);
}
