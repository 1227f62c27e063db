use fdc_core::galois_roots::{classify_orbits, FiniteGroup, GRootDatum, GaloisFrame, Orbits};
use fdc_core::mp_filtration::*;
use fdc_core::rational::{int, rat};
use fdc_core::zlattice::IntMatrix;
use fdc_core::{PrimePower, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use std::collections::BTreeMap;

/// Roots ±e_i in Z^n with Γ = I = Z/n cycling the coordinates: two opposite
/// orbits with e = n.
fn cycled(n: usize) -> (GRootDatum, Orbits) {
    let mut rows = vec![vec![0i128; n]; n];
    for i in 0..n {
        rows[(i + 1) % n][i] = 1;
    }
    build(n, n, IntMatrix::square(&rows).unwrap())
}

/// Same lattice with a signed cycle of order 2n: one symmetric orbit with e = 2n.
fn signed_cycle(n: usize) -> (GRootDatum, Orbits) {
    let mut rows = vec![vec![0i128; n]; n];
    for i in 0..n {
        rows[(i + 1) % n][i] = if i + 1 == n { -1 } else { 1 };
    }
    build(n, 2 * n, IntMatrix::square(&rows).unwrap())
}

fn build(n: usize, order: usize, gen: IntMatrix) -> (GRootDatum, Orbits) {
    let g = FiniteGroup::cyclic(order);
    let mut roots = Vec::new();
    for s in [1, -1] {
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = s;
            roots.push(v);
        }
    }
    let (action, gens) = if order == 1 {
        (vec![], vec![])
    } else {
        (vec![(1, gen)], vec![1])
    };
    let frob = gens.first().copied().unwrap_or(0);
    let d = GRootDatum::new_permissive(&g, n, &action, roots).unwrap();
    let fr = GaloisFrame::new(g, &gens, frob, PrimePower::new(13, 1).unwrap()).unwrap();
    let o = classify_orbits(&d, &fr).unwrap();
    (d, o)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn master_identity_holds(sym in any::<bool>(), n in 1usize..=6, k in 0i128..24, num in 0i128..30, half_off in any::<bool>()) {
        let (_, o) = if sym { signed_cycle(n.div_ceil(2)) } else { cycled(n) };
        let first = o.iter().next().unwrap();
        let e = first.e();
        prop_assume!(e <= 6);
        let off = if first.symmetric {
            if half_off { rat(1, 2 * e) } else { int(0) }
        } else {
            rat(k, 12 * e)
        };
        let j = JumpAssignment::new(&o, &BTreeMap::from([(first.id, off)])).unwrap();
        let v = rat(num, 2 * e);
        let ids: Vec<usize> = o.iter().map(|x| x.id).collect();
        let f: BTreeMap<usize, Rational> = ids.iter().map(|i| (*i, v)).collect();
        let (lhs, rhs) = master_length_identity(&o, &ids, &f, &j).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn torsor_symmetry(n in 1usize..=6, k in 0i128..60, t_num in -60i128..60) {
        let (_, o) = cycled(n);
        let a = o.iter().next().unwrap();
        let j = JumpAssignment::new(&o, &BTreeMap::from([(a.id, rat(k, 10 * n as i128))])).unwrap();
        let neg = o.by_id(a.negative);
        let t = rat(t_num, 20 * n as i128);
        prop_assert_eq!(jump_length_at(a, &j, t), jump_length_at(neg, &j, -t));
    }

    #[test]
    fn periodic_sum_matches_direct(l_num in 1i128..6, l_den in 1i128..4, c_num in 0i128..12, m in 1i128..12, w in 1i128..4) {
        let lambda0 = rat(l_num, l_den);
        let c = lambda0 * rat(c_num, 12);
        let h = DiscreteFn::lattice_indicator(c, lambda0)
            .with_periodic(-c, lambda0, int(1))
            .with_periodic(Rational::zero(), lambda0, int(w));
        let s = lambda0 * rat(m, 2);
        let fast = periodic_sum_value(lambda0, &h, s).unwrap();
        prop_assert_eq!(fast, primed_sum(&h, Rational::zero(), s).unwrap());
    }

    #[test]
    fn primed_sum_additive(a in -20i128..20, b in 1i128..20, c in 1i128..20, den in 1i128..6, off in 0i128..6) {
        let h = DiscreteFn::lattice_indicator(rat(off, 6), rat(1, 2)).with_periodic(int(0), int(1), int(3));
        let (x, y, z) = (rat(a, den), rat(a + b, den), rat(a + b + c, den));
        let lhs = primed_sum(&h, x, y).unwrap() + primed_sum(&h, y, z).unwrap();
        prop_assert_eq!(lhs, primed_sum(&h, x, z).unwrap());
    }

    #[test]
    fn quotient_orders_compose(r1 in 1i128..4, d2 in 0i128..5, d3 in 0i128..5) {
        // Split A1 with constant step functions: orders multiply along f ≤ g ≤ h.
        let g = FiniteGroup::trivial();
        let d = GRootDatum::new_permissive(&g, 1, &[], vec![vec![1], vec![-1]]).unwrap();
        let q = PrimePower::new(5, 1).unwrap();
        let fr = GaloisFrame::new(g, &[], 0, q).unwrap();
        let o = classify_orbits(&d, &fr).unwrap();
        let j = JumpAssignment::new(&o, &BTreeMap::from([(0, int(0))])).unwrap();
        let t = ToralJumps::unramified(1);
        let data = LengthData { datum: &d, orbits: &o, jumps: &j, toral: &t };
        let levels = vec![vec![0, 1]];
        let (a, b, c) = (rat(r1, 2), rat(r1, 2) + rat(d2, 2), rat(r1, 2) + rat(d2 + d3, 2));
        let fx = |x: Rational| OrbitFn::constant(&o, ExtIndex::At(x));
        let order = |x: Rational, y: Rational| {
            let chain = mp_chain(&[x], &[y]).unwrap();
            let cert = ChainCertificate::Chain { levels: levels.clone(), seqs: chain };
            data.quotient_order(&fx(x), &fx(y), Some(&cert), &q).unwrap()
        };
        prop_assert_eq!(order(a, b).mul(&order(b, c)).unwrap(), order(a, c));
    }
}

#[test]
fn fixtures_have_expected_ramification() {
    let (_, o) = cycled(3);
    assert_eq!(o.len(), 2);
    assert!(o.iter().all(|x| x.e() == 3 && !x.symmetric));
    let (_, o) = signed_cycle(2);
    assert_eq!(o.len(), 1);
    assert!(o.iter().all(|x| x.e() == 4 && x.symmetric));
}
