use super::chi::{random_chi, ChiData};
use super::cocycle::SectionChoices;
use crate::error::Result;
use crate::galois_roots::{FiniteGroup, GRootDatum, GaloisFrame, Subgroup};
use crate::qexact::PrimePower;
use crate::rational::{rat, Rational};
use crate::zlattice::IntMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;

/// A finite Weil model with χ-data and the subgroups to base change along.
#[derive(Debug, Clone)]
pub struct ChiModel {
    pub name: String,
    pub frame: GaloisFrame,
    pub datum: GRootDatum,
    pub chi: ChiData,
    pub subgroups: Vec<Subgroup>,
}

fn m(rows: &[Vec<i128>]) -> IntMatrix {
    IntMatrix::square(rows).expect("model matrix")
}

fn q(p: i128) -> PrimePower {
    PrimePower::new(p, 1).expect("odd prime")
}

fn a1_roots() -> Vec<Vec<i128>> {
    vec![vec![1], vec![-1]]
}

fn a1a1_roots() -> Vec<Vec<i128>> {
    vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]
}

/// A2 in the basis of simple roots.
pub fn a2_roots() -> Vec<Vec<i128>> {
    vec![
        vec![1, 0],
        vec![-1, 0],
        vec![0, 1],
        vec![0, -1],
        vec![1, 1],
        vec![-1, -1],
    ]
}

fn b2_roots() -> Vec<Vec<i128>> {
    let mut v = a1a1_roots();
    v.extend([vec![1, 1], vec![-1, -1], vec![1, -1], vec![-1, 1]]);
    v
}

fn model(
    name: &str,
    frame: GaloisFrame,
    rank: usize,
    acts: &[(usize, IntMatrix)],
    roots: Vec<Vec<i128>>,
    chi: &[(usize, Vec<(usize, Rational)>)],
) -> Result<ChiModel> {
    let datum = GRootDatum::new_permissive(frame.group(), rank, acts, roots)?;
    let given: BTreeMap<_, _> = chi.iter().cloned().collect();
    let chi = ChiData::from_generator_images(&datum, frame.group(), &given)?;
    let subgroups = frame.group().all_subgroups();
    Ok(ChiModel {
        name: name.into(),
        frame,
        datum,
        chi,
        subgroups,
    })
}

/// Z/4 acting by -1 on A1, unramified; χ_α(σ²) = 1/2.
pub fn z4_a1() -> ChiModel {
    let fr = GaloisFrame::new(FiniteGroup::cyclic(4), &[], 1, q(5)).unwrap();
    model(
        "z4_a1",
        fr,
        1,
        &[(1, m(&[vec![-1]]))],
        a1_roots(),
        &[(0, vec![(2, rat(1, 2))])],
    )
    .unwrap()
}

/// Z/4 totally ramified, acting by -1 on A1.
pub fn z4_a1_ramified() -> ChiModel {
    let fr = GaloisFrame::new(FiniteGroup::cyclic(4), &[1], 0, q(5)).unwrap();
    model(
        "z4_a1_ramified",
        fr,
        1,
        &[(1, m(&[vec![-1]]))],
        a1_roots(),
        &[(0, vec![(2, rat(1, 2))])],
    )
    .unwrap()
}

/// Z/8 acting by -1 on A1 with inertia of order 2; Γ_α ≅ Z/4.
pub fn z8_a1() -> ChiModel {
    let fr = GaloisFrame::new(FiniteGroup::cyclic(8), &[4], 1, q(3)).unwrap();
    model(
        "z8_a1",
        fr,
        1,
        &[(1, m(&[vec![-1]]))],
        a1_roots(),
        &[(0, vec![(2, rat(1, 2))])],
    )
    .unwrap()
}

/// Z/8 acting on A1×A1 through a quarter turn; one class of four roots.
pub fn z8_rot_a1a1() -> ChiModel {
    let fr = GaloisFrame::new(FiniteGroup::cyclic(8), &[], 1, q(3)).unwrap();
    let rot = m(&[vec![0, -1], vec![1, 0]]);
    model(
        "z8_rot_a1a1",
        fr,
        2,
        &[(1, rot)],
        a1a1_roots(),
        &[(0, vec![(4, rat(1, 2))])],
    )
    .unwrap()
}

/// S3 acting on A2 by the Weyl group, inertia A3. Every Γ_α is trivial, so
/// the sign condition on symmetric roots cannot hold; kept as a diagnostic model.
pub fn s3_a2() -> ChiModel {
    let (g, _) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
    let s1 = m(&[vec![-1, 1], vec![0, 1]]);
    let s2 = m(&[vec![1, 0], vec![1, -1]]);
    let rot = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
    let fr = GaloisFrame::new(g, &[rot], 1, q(7)).unwrap();
    model("s3_a2", fr, 2, &[(1, s1), (2, s2)], a2_roots(), &[]).unwrap()
}

pub fn bundled_models() -> Vec<ChiModel> {
    vec![z4_a1(), z4_a1_ramified(), z8_a1(), z8_rot_a1a1(), s3_a2()]
}

/// A group with an action on a rank-2 or rank-1 lattice and a root set.
struct Template {
    group: FiniteGroup,
    rank: usize,
    acts: Vec<(usize, IntMatrix)>,
    roots: Vec<Vec<i128>>,
}

fn cyclic_template(n: usize, gen: IntMatrix, roots: Vec<Vec<i128>>) -> Template {
    Template {
        group: FiniteGroup::cyclic(n),
        rank: gen.rows(),
        acts: vec![(1 % n.max(1), gen)],
        roots,
    }
}

fn templates<R: Rng>(rng: &mut R) -> Template {
    let coxeter = m(&[vec![0, -1], vec![1, -1]]);
    match rng.gen_range(0..8) {
        0 => cyclic_template(2 * rng.gen_range(1..=8), m(&[vec![-1]]), a1_roots()),
        1 => cyclic_template(4 * rng.gen_range(1..=4), m(&[vec![0, -1], vec![1, 0]]), a1a1_roots()),
        2 => {
            let swap = if rng.gen() {
                m(&[vec![0, 1], vec![1, 0]])
            } else {
                m(&[vec![0, -1], vec![-1, 0]])
            };
            cyclic_template(2 * rng.gen_range(1..=8), swap, a1a1_roots())
        }
        3 => cyclic_template(3 * rng.gen_range(1..=5), coxeter, a2_roots()),
        4 => cyclic_template(6 * rng.gen_range(1..=2), coxeter.scale(-1), a2_roots()),
        5 => {
            let (g, _) = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
            let acts = vec![(1, m(&[vec![-1, 1], vec![0, 1]])), (2, m(&[vec![1, 0], vec![1, -1]]))];
            Template {
                group: g,
                rank: 2,
                acts,
                roots: a2_roots(),
            }
        }
        6 => {
            let (g, _) = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
            let acts = vec![(1, m(&[vec![0, -1], vec![1, 0]])), (2, m(&[vec![1, 0], vec![0, -1]]))];
            Template {
                group: g,
                rank: 2,
                acts,
                roots: b2_roots(),
            }
        }
        _ => {
            let (g, _) =
                FiniteGroup::from_permutations(&[vec![1, 0, 2, 3, 4], vec![0, 2, 1, 3, 4], vec![0, 1, 2, 4, 3]])
                    .unwrap();
            let acts = vec![
                (1, m(&[vec![-1, 1], vec![0, 1]])),
                (2, m(&[vec![1, 0], vec![1, -1]])),
                (3, IntMatrix::scalar(2, -1)),
            ];
            Template {
                group: g,
                rank: 2,
                acts,
                roots: a2_roots(),
            }
        }
    }
}

/// Frames on `group`: normal cyclic inertia with cyclic quotient.
pub fn frames_on(group: &FiniteGroup, p: i128) -> Vec<GaloisFrame> {
    let mut out = Vec::new();
    for inertia in group.all_subgroups() {
        if !group.is_normal(&inertia) || inertia.len() as i128 % p == 0 {
            continue;
        }
        let Some(tau) = group.cyclic_generator(&inertia) else {
            continue;
        };
        for s in group.elements() {
            if let Ok(fr) = GaloisFrame::new(group.clone(), &[tau], s, q(p)) {
                out.push(fr);
                break;
            }
        }
    }
    out
}

/// A random base-change instance: model, subgroup H and section choices over Γ.
#[derive(Debug, Clone)]
pub struct ChiInstance {
    pub model: ChiModel,
    pub h: Subgroup,
    pub choices: SectionChoices,
}

pub fn random_chi_instance<R: Rng>(rng: &mut R) -> ChiInstance {
    loop {
        let t = templates(rng);
        if t.group.order() > 16 {
            continue;
        }
        let Ok(datum) = GRootDatum::new_permissive(&t.group, t.rank, &t.acts, t.roots.clone()) else {
            continue;
        };
        let p = *[3i128, 5, 7, 11, 13].choose(rng).unwrap();
        let frames = frames_on(&t.group, p);
        let Some(frame) = frames.choose(rng).cloned() else {
            continue;
        };
        let chi = random_chi(&datum, &t.group, rng);
        let subgroups = t.group.all_subgroups();
        let h = subgroups.choose(rng).unwrap().clone();
        let choices = SectionChoices::random(&datum, &t.group, rng);
        let model = ChiModel {
            name: "random".into(),
            frame,
            datum,
            chi,
            subgroups,
        };
        return ChiInstance { model, h, choices };
    }
}
