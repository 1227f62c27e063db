use super::character::{all_characters, sign_value, transfer_value, Character};
use crate::error::{Error, Result};
use crate::galois_roots::{FiniteGroup, GRootDatum, GaloisFrame, Subgroup};
use crate::rational::{mod1, Rational};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Γ_α.
pub fn stabilizer(datum: &GRootDatum, group: &FiniteGroup, root: usize) -> Subgroup {
    group.elements().filter(|&g| datum.act_root(g, root) == root).collect()
}

/// Γ_{±α}.
pub fn stabilizer_pm(datum: &GRootDatum, group: &FiniteGroup, root: usize) -> Subgroup {
    let n = datum.neg(root);
    group
        .elements()
        .filter(|&g| {
            let r = datum.act_root(g, root);
            r == root || r == n
        })
        .collect()
}

/// Orbits of Γ × {±1} on the roots, each sorted, ordered by smallest root.
pub fn root_classes(datum: &GRootDatum, group: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..datum.num_roots() {
        if seen.contains(&a) {
            continue;
        }
        let cls: BTreeSet<usize> = group
            .elements()
            .flat_map(|g| {
                let b = datum.act_root(g, a);
                [b, datum.neg(b)]
            })
            .collect();
        seen.extend(cls.iter().copied());
        out.push(cls.into_iter().collect());
    }
    out
}

/// An element σ with σ·from = to, if any.
pub fn carrier(datum: &GRootDatum, group: &FiniteGroup, from: usize, to: usize) -> Option<usize> {
    group.elements().find(|&g| datum.act_root(g, from) == to)
}

/// A character χ_α of Γ_α for every root α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiData {
    chars: Vec<Character>,
}

impl ChiData {
    pub fn character(&self, root: usize) -> &Character {
        &self.chars[root]
    }

    pub fn characters(&self) -> &[Character] {
        &self.chars
    }

    /// Builds χ from generator images on some roots. Other roots are filled
    /// by transport and negation; a class with no data gets trivial characters.
    pub fn from_generator_images(
        datum: &GRootDatum,
        group: &FiniteGroup,
        given: &BTreeMap<usize, Vec<(usize, Rational)>>,
    ) -> Result<Self> {
        let mut known = BTreeMap::new();
        for (root, imgs) in given {
            if *root >= datum.num_roots() {
                return Err(Error::Invalid(format!("χ given for unknown root {root}")));
            }
            let stab = stabilizer(datum, group, *root);
            known.insert(*root, Character::from_generators(group, &stab, imgs)?);
        }
        Ok(Self::complete(datum, group, known))
    }

    /// Fills missing roots from the smallest given root of each class.
    pub fn complete(datum: &GRootDatum, group: &FiniteGroup, mut known: BTreeMap<usize, Character>) -> Self {
        for cls in root_classes(datum, group) {
            let seed = match cls.iter().find(|r| known.contains_key(r)) {
                Some(r) => *r,
                None => {
                    let r = cls[0];
                    known.insert(r, Character::trivial(&stabilizer(datum, group, r)));
                    r
                }
            };
            let base = known[&seed].clone();
            for &b in &cls {
                if known.contains_key(&b) {
                    continue;
                }
                let c = match carrier(datum, group, seed, b) {
                    Some(s) => base.transport(group, s),
                    None => {
                        let s = carrier(datum, group, seed, datum.neg(b)).expect("class member");
                        base.transport(group, s).negate()
                    }
                };
                known.insert(b, c);
            }
        }
        ChiData {
            chars: known.into_values().collect(),
        }
    }

    pub fn from_characters(chars: Vec<Character>) -> Self {
        ChiData { chars }
    }

    pub fn is_trivial(&self) -> bool {
        self.chars.iter().all(Character::is_trivial)
    }

    /// Generator images per root, as used in scenario files.
    pub fn generator_images(&self, group: &FiniteGroup) -> BTreeMap<usize, Vec<(usize, Rational)>> {
        self.chars
            .iter()
            .enumerate()
            .map(|(r, c)| (r, c.generator_images(group)))
            .collect()
    }
}

/// Violations of the χ-data conditions, one message per failure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ChiDiagnostics {
    pub domain: Vec<String>,
    pub negation: Vec<String>,
    pub equivariance: Vec<String>,
    pub symmetric_restriction: Vec<String>,
    pub template: Vec<String>,
}

impl ChiDiagnostics {
    pub fn is_chi_data(&self) -> bool {
        self.domain.is_empty()
            && self.negation.is_empty()
            && self.equivariance.is_empty()
            && self.symmetric_restriction.is_empty()
    }

    pub fn is_minimally_ramified(&self) -> bool {
        self.is_chi_data() && self.template.is_empty()
    }

    pub fn all(&self) -> Vec<String> {
        [
            &self.domain,
            &self.negation,
            &self.equivariance,
            &self.symmetric_restriction,
            &self.template,
        ]
        .into_iter()
        .flatten()
        .cloned()
        .collect()
    }
}

/// Checks χ_{-α} = χ_α^{-1}, χ_{σα}(g) = χ_α(σ^{-1}gσ), and for symmetric α
/// that χ_α composed with the transfer Γ_{±α} → Γ_α is the sign of Γ_α in Γ_{±α}.
/// Also checks the minimally ramified template.
pub fn validate_chi(chi: &ChiData, datum: &GRootDatum, frame: &GaloisFrame) -> ChiDiagnostics {
    let group = frame.group();
    let mut d = ChiDiagnostics::default();
    if chi.chars.len() != datum.num_roots() {
        d.domain.push(format!(
            "χ has {} characters for {} roots",
            chi.chars.len(),
            datum.num_roots()
        ));
        return d;
    }
    for a in 0..datum.num_roots() {
        let stab = stabilizer(datum, group, a);
        if chi.chars[a].domain() != stab {
            d.domain
                .push(format!("χ_{a} is not defined exactly on the stabilizer of root {a}"));
        }
    }
    if !d.domain.is_empty() {
        return d;
    }
    for a in 0..datum.num_roots() {
        let ca = &chi.chars[a];
        let cn = &chi.chars[datum.neg(a)];
        if ca.values().iter().any(|(g, v)| cn.values()[g] != mod1(&-v)) {
            d.negation.push(format!(
                "χ of root {} is not the inverse of χ of root {a}",
                datum.neg(a)
            ));
        }
        for s in group.elements() {
            let b = datum.act_root(s, a);
            let moved = ca.transport(group, s);
            if moved != chi.chars[b] {
                d.equivariance
                    .push(format!("χ of root {b} differs from χ of root {a} moved by element {s}"));
                break;
            }
        }
        let pm = stabilizer_pm(datum, group, a);
        let stab = ca.domain();
        if pm.len() != stab.len() {
            for &g in &pm {
                let got = transfer_value(group, &pm, ca, g).expect("transfer stays in domain");
                if got != sign_value(&stab, g) {
                    d.symmetric_restriction.push(format!(
                        "root {a}: χ on the transfer of element {g} is {got}, expected {}",
                        sign_value(&stab, g)
                    ));
                    break;
                }
            }
        }
        d.template.extend(template_violation(chi, datum, frame, a));
    }
    d
}

fn template_violation(chi: &ChiData, datum: &GRootDatum, frame: &GaloisFrame, a: usize) -> Option<String> {
    let group = frame.group();
    let ca = &chi.chars[a];
    let stab = ca.domain();
    let pm = stabilizer_pm(datum, group, a);
    if pm.len() == stab.len() {
        return (!ca.is_trivial()).then(|| format!("root {a} is asymmetric but χ is nontrivial"));
    }
    let ia = FiniteGroup::intersect(frame.inertia(), &stab);
    let ipm = FiniteGroup::intersect(frame.inertia(), &pm);
    let ramified = ipm.len() != ia.len();
    if ramified {
        return None;
    }
    ia.iter()
        .any(|g| ca.values()[g] != Rational::from_integer(0))
        .then(|| format!("root {a} is symmetric unramified but χ is ramified"))
}

/// χ restricted to H, living on the sub-frame of H.
#[derive(Debug, Clone)]
pub struct BaseChanged {
    pub frame: GaloisFrame,
    pub embedding: Vec<usize>,
    pub datum: GRootDatum,
    pub chi: ChiData,
}

/// The datum seen by a subgroup H ≤ Γ, re-indexed by position in sorted H.
pub fn restrict_datum(datum: &GRootDatum, h: &[usize], sub_group: &FiniteGroup) -> Result<GRootDatum> {
    let acts: Vec<_> = (1..h.len()).map(|i| (i, datum.action(h[i]).clone())).collect();
    GRootDatum::new_permissive(sub_group, datum.rank(), &acts, datum.roots().to_vec())
}

pub fn base_change_chi(chi: &ChiData, datum: &GRootDatum, frame: &GaloisFrame, h: &[usize]) -> Result<BaseChanged> {
    let (sub, embedding) = frame.sub_frame(h)?;
    let sub_datum = restrict_datum(datum, &embedding, sub.group())?;
    let pos = |x: usize| embedding.binary_search(&x).unwrap();
    let chars = chi
        .chars
        .iter()
        .map(|c| {
            let dom = FiniteGroup::intersect(&c.domain(), &embedding);
            c.restrict(&dom).map(|r| r.reindex(pos))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BaseChanged {
        frame: sub,
        embedding,
        datum: sub_datum,
        chi: ChiData { chars },
    })
}

/// Characters of Γ_α compatible with negation inside Γ_{±α}; the candidates
/// for χ on a class representative.
pub fn admissible_characters(datum: &GRootDatum, group: &FiniteGroup, root: usize) -> Vec<Character> {
    let stab = stabilizer(datum, group, root);
    let pm = stabilizer_pm(datum, group, root);
    let flips: Vec<usize> = pm
        .iter()
        .copied()
        .filter(|g| !FiniteGroup::contains(&stab, *g))
        .collect();
    all_characters(group, &stab)
        .into_iter()
        .filter(|c| flips.iter().all(|&s| c.transport(group, s) == c.negate()))
        .filter(|c| {
            group
                .elements()
                .filter(|g| datum.act_root(*g, root) == root)
                .all(|s| c.transport(group, s) == *c)
        })
        .collect()
}

/// A random χ satisfying negation and equivariance.
pub fn random_chi<R: Rng>(datum: &GRootDatum, group: &FiniteGroup, rng: &mut R) -> ChiData {
    let mut known = BTreeMap::new();
    for cls in root_classes(datum, group) {
        let cands = admissible_characters(datum, group, cls[0]);
        known.insert(
            cls[0],
            cands.choose(rng).expect("trivial character is admissible").clone(),
        );
    }
    ChiData::complete(datum, group, known)
}
