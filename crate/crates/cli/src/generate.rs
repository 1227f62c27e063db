//! Random instances for the self-test suites.

use crate::scenario::{DepthZeroSpec, GroupSpec, QSpec, ScenarioFile};
use fdc_core::chi_data::frames_on;
use fdc_core::galois_roots::{classify_orbits, howe_filtration, Depth, FiniteGroup, GRootDatum, GaloisFrame, Orbits};
use fdc_core::mp_filtration::JumpAssignment;
use fdc_core::rational::{format_rational, int, rat};
use fdc_core::zlattice::IntMatrix;
use fdc_core::Rational;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Closure of matrix generators, identity first. None past `limit` elements.
pub fn matrix_group(gens: &[IntMatrix], n: usize, limit: usize) -> Option<(FiniteGroup, Vec<IntMatrix>)> {
    let mut elems = vec![IntMatrix::identity(n)];
    let mut index: HashMap<IntMatrix, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = elems[x].mul(g).ok()?;
            if !index.contains_key(&y) {
                if elems.len() >= limit {
                    return None;
                }
                index.insert(y.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(y);
            }
        }
    }
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&a.mul(b).unwrap()]).collect())
        .collect();
    Some((FiniteGroup::from_table(table).ok()?, elems))
}

fn mat(rows: &[Vec<i128>]) -> IntMatrix {
    IntMatrix::square(rows).expect("square")
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.rows() + b.rows();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j));
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(a.rows() + i, a.cols() + j, b.get(i, j));
        }
    }
    m
}

/// A root system in some lattice together with generators of its automorphisms.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<Vec<i128>>,
    pub automorphisms: Vec<IntMatrix>,
}

fn signed_perm_gens(n: usize) -> Vec<IntMatrix> {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut m = IntMatrix::identity(n);
        m.set(i, i, 0);
        m.set(i + 1, i + 1, 0);
        m.set(i, i + 1, 1);
        m.set(i + 1, i, 1);
        gens.push(m);
    }
    let mut flip = IntMatrix::identity(n);
    flip.set(0, 0, -1);
    gens.push(flip);
    gens
}

fn unit(n: usize, i: usize, s: i128) -> Vec<i128> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

pub fn a1_power(n: usize) -> RootSystem {
    let roots = (0..n).flat_map(|i| [unit(n, i, 1), unit(n, i, -1)]).collect();
    RootSystem {
        name: format!("A1^{n}"),
        rank: n,
        roots,
        automorphisms: signed_perm_gens(n),
    }
}

/// Long roots ±e_i ± e_j together with ±e_i.
pub fn b_type(n: usize) -> RootSystem {
    let mut roots = a1_power(n).roots;
    for i in 0..n {
        for j in i + 1..n {
            for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = s;
                v[j] = t;
                roots.push(v);
            }
        }
    }
    RootSystem {
        name: format!("B{n}"),
        rank: n,
        roots,
        automorphisms: signed_perm_gens(n),
    }
}

/// ±e_i ± e_j only.
pub fn d4() -> RootSystem {
    let mut r = b_type(4);
    r.roots.retain(|v| v.iter().filter(|x| **x != 0).count() == 2);
    r.name = "D4".into();
    r
}

pub fn a2() -> RootSystem {
    RootSystem {
        name: "A2".into(),
        rank: 2,
        roots: fdc_core::chi_data::a2_roots(),
        automorphisms: vec![
            mat(&[vec![-1, 1], vec![0, 1]]),
            mat(&[vec![1, 0], vec![1, -1]]),
            IntMatrix::scalar(2, -1),
        ],
    }
}

/// Orthogonal sum; with `swap` also the exchange of two equal factors.
pub fn product(a: &RootSystem, b: &RootSystem, swap: bool) -> RootSystem {
    let n = a.rank + b.rank;
    let mut roots = Vec::new();
    for r in &a.roots {
        let mut v = r.clone();
        v.extend(vec![0; b.rank]);
        roots.push(v);
    }
    for r in &b.roots {
        let mut v = vec![0; a.rank];
        v.extend(r);
        roots.push(v);
    }
    let mut automorphisms: Vec<IntMatrix> = a
        .automorphisms
        .iter()
        .map(|m| block_diag(m, &IntMatrix::identity(b.rank)))
        .chain(
            b.automorphisms
                .iter()
                .map(|m| block_diag(&IntMatrix::identity(a.rank), m)),
        )
        .collect();
    if swap && a.rank == b.rank {
        let k = a.rank;
        let mut s = IntMatrix::zeros(n, n);
        for i in 0..k {
            s.set(i, k + i, 1);
            s.set(k + i, i, 1);
        }
        automorphisms.push(s);
    }
    RootSystem {
        name: format!("{}x{}", a.name, b.name),
        rank: n,
        roots,
        automorphisms,
    }
}

pub fn catalog(max_rank: usize, max_roots: usize) -> Vec<RootSystem> {
    let a2 = a2();
    let all = vec![
        a1_power(1),
        a1_power(2),
        a1_power(3),
        a1_power(4),
        a2.clone(),
        b_type(2),
        b_type(3),
        product(&a2, &a1_power(1), false),
        product(&a2, &a1_power(2), false),
        product(&a2, &a2, true),
        product(&b_type(2), &a1_power(2), false),
        d4(),
    ];
    all.into_iter()
        .filter(|r| r.rank <= max_rank && r.roots.len() <= max_roots)
        .collect()
}

/// A random word in the automorphism generators (and -1).
pub fn random_automorphism<R: Rng>(rs: &RootSystem, rng: &mut R) -> IntMatrix {
    let mut gens = rs.automorphisms.clone();
    gens.push(IntMatrix::scalar(rs.rank, -1));
    let mut m = IntMatrix::identity(rs.rank);
    for _ in 0..rng.gen_range(1..=6) {
        m = m.mul(gens.choose(rng).unwrap()).unwrap();
    }
    m
}

#[derive(Debug, Clone, Copy)]
pub struct DatumBounds {
    pub max_rank: usize,
    pub max_roots: usize,
    pub max_group: usize,
    pub max_e: i128,
    pub elliptic: bool,
}

/// A random Galois root datum with frame, and the data that rebuilds it.
#[derive(Debug, Clone)]
pub struct RandomDatum {
    pub system: String,
    pub group: FiniteGroup,
    pub action: Vec<(usize, IntMatrix)>,
    pub roots: Vec<Vec<i128>>,
    pub rank: usize,
    pub datum: GRootDatum,
    pub frame: GaloisFrame,
    pub orbits: Orbits,
    pub inertia_gens: Vec<usize>,
}

pub fn random_datum<R: Rng>(rng: &mut R, b: DatumBounds) -> RandomDatum {
    let systems = catalog(b.max_rank, b.max_roots);
    loop {
        let rs = systems.choose(rng).unwrap();
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<IntMatrix> = (0..ngens).map(|_| random_automorphism(rs, rng)).collect();
        let Some((mgroup, elems)) = matrix_group(&gens, rs.rank, b.max_group) else {
            continue;
        };
        // sometimes take a cyclic cover, so inertia can act through a quotient
        let (group, action) = match (ngens, rng.gen_bool(0.5)) {
            (1, true) => {
                let k = rng.gen_range(1..=3);
                let n = mgroup.order() * k;
                if n > b.max_group {
                    continue;
                }
                (
                    FiniteGroup::cyclic(n),
                    if n > 1 { vec![(1 % n, gens[0].clone())] } else { vec![] },
                )
            }
            _ => (
                mgroup.clone(),
                (1..elems.len()).map(|i| (i, elems[i].clone())).collect(),
            ),
        };
        let built = if b.elliptic {
            GRootDatum::new(&group, rs.rank, &action, rs.roots.clone())
        } else {
            GRootDatum::new_permissive(&group, rs.rank, &action, rs.roots.clone())
        };
        let Ok(datum) = built else { continue };
        let p = *[3i128, 5, 7, 11, 13].choose(rng).unwrap();
        let a = if rng.gen_bool(0.2) { 2 } else { 1 };
        let frames = frames_on(&group, p);
        let Some(frame) = frames.choose(rng) else { continue };
        let q = fdc_core::PrimePower::new(p, a).unwrap();
        let tau = frame.inertia_generator();
        let inertia_gens = if frame.inertia().len() > 1 { vec![tau] } else { vec![] };
        let Ok(frame) = GaloisFrame::new(group.clone(), &inertia_gens, frame.frobenius(), q) else {
            continue;
        };
        let Ok(orbits) = classify_orbits(&datum, &frame) else {
            continue;
        };
        if orbits.iter().any(|o| o.e() > b.max_e) {
            continue;
        }
        return RandomDatum {
            system: rs.name.clone(),
            group,
            action,
            roots: rs.roots.clone(),
            rank: rs.rank,
            datum,
            frame,
            orbits,
            inertia_gens,
        };
    }
}

/// Offsets respecting torsor symmetry: symmetric orbits get 0 or 1/(2e),
/// opposite asymmetric orbits get t and -t.
pub fn random_offsets<R: Rng>(orbits: &Orbits, rng: &mut R) -> BTreeMap<usize, Rational> {
    let mut out = BTreeMap::new();
    for o in orbits.iter() {
        let rep = o.members[0];
        if o.symmetric {
            out.insert(rep, if rng.gen() { rat(1, 2 * o.e()) } else { int(0) });
        } else if o.id < o.negative {
            out.insert(rep, rat(rng.gen_range(0..12), 12 * o.e()));
        }
    }
    out
}

/// Depths per ±orbit pair in (1/e)Z ∩ (0, 3] or nonpositive; retried until
/// the Levi condition holds.
pub fn random_depths<R: Rng>(rd: &RandomDatum, rng: &mut R) -> Option<(BTreeMap<usize, Depth>, Rational)> {
    for _ in 0..20 {
        let mut depths = BTreeMap::new();
        for o in rd.orbits.iter() {
            if o.id > o.negative {
                continue;
            }
            let d = if rng.gen_bool(0.35) {
                Depth::Nonpositive
            } else {
                Depth::Positive(rat(rng.gen_range(1..=3 * o.e()), o.e()))
            };
            depths.insert(o.members[0], d);
        }
        let top = depths.values().filter_map(|d| d.value()).max().unwrap_or(int(0));
        let total = if rng.gen_bool(0.3) { top + rat(1, 2) } else { top };
        if howe_filtration(&rd.datum, &rd.orbits, &depths, total).is_ok() {
            return Some((depths, total));
        }
    }
    None
}

/// A random valid scenario file: rank ≤ 3, |R| ≤ 12, |Γ| ≤ 8, e ≤ 4.
pub fn random_scenario<R: Rng>(rng: &mut R, name: &str) -> ScenarioFile {
    let bounds = DatumBounds {
        max_rank: 3,
        max_roots: 12,
        max_group: 8,
        max_e: 4,
        elliptic: true,
    };
    loop {
        let rd = random_datum(rng, bounds);
        let Some((depths, total)) = random_depths(&rd, rng) else {
            continue;
        };
        let offsets = random_offsets(&rd.orbits, rng);
        if JumpAssignment::new(&rd.orbits, &offsets).is_err() {
            continue;
        }
        let q = rd.frame.q();
        return ScenarioFile {
            name: format!("{name} ({})", rd.system),
            q: QSpec { p: q.p(), a: q.a() },
            group: GroupSpec {
                order: rd.group.order(),
                mult_table: Some(rd.group.table().to_vec()),
                perm_gens: None,
            },
            inertia: rd.inertia_gens.clone(),
            frobenius: rd.frame.frobenius(),
            lattice_rank: rd.rank,
            action: rd.action.iter().map(|(g, m)| (g.to_string(), m.to_rows())).collect(),
            roots: rd.roots.clone(),
            jump_offsets: offsets
                .iter()
                .map(|(k, v)| (k.to_string(), format_rational(v)))
                .collect(),
            theta_depths: depths.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            theta_total_depth: format_rational(&total),
            chi: None,
            chi_subgroups: None,
            depth_zero: DepthZeroSpec::default(),
        };
    }
}

/// Inputs to the length identity on one datum.
#[derive(Debug, Clone)]
pub struct MasterInstance {
    pub system: String,
    pub orbits: Orbits,
    pub subset: Vec<usize>,
    pub f: BTreeMap<usize, Rational>,
    pub jumps: JumpAssignment,
}

/// rank ≤ 4, |R| ≤ 24, e ≤ 6; f even with values in ½(1/e)Z ∩ [0, 4].
pub fn random_master_instance<R: Rng>(rng: &mut R) -> MasterInstance {
    let bounds = DatumBounds {
        max_rank: 4,
        max_roots: 24,
        max_group: 16,
        max_e: 6,
        elliptic: false,
    };
    let rd = random_datum(rng, bounds);
    let offsets = random_offsets(&rd.orbits, rng);
    let jumps = JumpAssignment::new(&rd.orbits, &offsets).expect("symmetric offsets");
    let mut subset = Vec::new();
    let mut f = BTreeMap::new();
    for o in rd.orbits.iter() {
        if o.id > o.negative || !rng.gen_bool(0.8) {
            continue;
        }
        let v = rat(rng.gen_range(0..=8 * o.e()), 2 * o.e());
        for id in [o.id, o.negative] {
            if !subset.contains(&id) {
                subset.push(id);
            }
            f.insert(id, v);
        }
    }
    subset.sort();
    MasterInstance {
        system: rd.system,
        orbits: rd.orbits,
        subset,
        f,
        jumps,
    }
}

/// A random Γ-lattice (|Γ| ≤ 8, rank ≤ 3, no invariants) with a frame; the
/// action is conjugated by a random unimodular matrix.
pub fn random_lattice<R: Rng>(rng: &mut R) -> (GaloisFrame, Vec<IntMatrix>) {
    loop {
        let rd = random_datum(
            rng,
            DatumBounds {
                max_rank: 3,
                max_roots: 18,
                max_group: 8,
                max_e: 8,
                elliptic: true,
            },
        );
        let n = rd.rank;
        let p = random_unimodular(n, rng);
        let Ok(pinv) = p.inverse() else { continue };
        let acts: Vec<IntMatrix> = rd
            .datum
            .actions()
            .iter()
            .map(|a| p.mul(a).unwrap().mul(&pinv).unwrap())
            .collect();
        return (rd.frame, acts);
    }
}

pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(0..=4) {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = rng.gen_range(-2..=2);
        m.add_row(i, j, c);
    }
    if rng.gen() {
        m.negate_row(0);
    }
    m
}

/// A 3x3 integer matrix with 0 < |det(F - 1)| ≤ 50.
pub fn random_frobenius_3x3<R: Rng>(rng: &mut R) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i128>> = (0..3)
            .map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let f = mat(&rows);
        let d = f.minus_identity().det().unwrap();
        if d != 0 && d.abs() <= 50 {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::build_scenario;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrix_group_of_rotation() {
        let (g, e) = matrix_group(&[mat(&[vec![0, -1], vec![1, 0]])], 2, 16).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(e[0], IntMatrix::identity(2));
    }

    #[test]
    fn catalog_respects_bounds() {
        assert!(catalog(4, 24).iter().all(|r| r.rank <= 4 && r.roots.len() <= 24));
        assert_eq!(d4().roots.len(), 24);
        assert_eq!(b_type(3).roots.len(), 18);
    }

    #[test]
    fn generated_scenarios_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for i in 0..20 {
            let f = random_scenario(&mut rng, &format!("g{i}"));
            build_scenario(&f, None).unwrap();
        }
    }

    #[test]
    fn generated_lattices_are_elliptic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let (fr, acts) = random_lattice(&mut rng);
            assert_eq!(acts.len(), fr.order());
            let inv = fdc_core::zlattice::invariant_sublattice(&acts, acts[0].rows()).unwrap();
            assert_eq!(inv.rank(), 0);
        }
    }
}
