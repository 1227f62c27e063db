use super::chi::{base_change_chi, root_classes, stabilizer, stabilizer_pm, ChiData};
use crate::error::{Error, Result};
use crate::galois_roots::{FiniteGroup, GRootDatum, GaloisFrame};
use crate::rational::{mod1, Rational};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Choices for one Γ × {±1} class of roots: a representative α, a section u of
/// Γ → Γ_{±α}\Γ and a section v of Γ_{±α} → Γ_α\Γ_{±α}. Both are keyed by
/// coset label (smallest element).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassChoice {
    pub rep: usize,
    pub u: BTreeMap<usize, usize>,
    pub v: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionChoices {
    pub classes: Vec<ClassChoice>,
}

/// Element of X^*(S) ⊗ Q/Z, coordinates in [0, 1).
pub type DualTorusElement = Vec<Rational>;

impl SectionChoices {
    /// Smallest root per class, coset labels as representatives.
    pub fn canonical(datum: &GRootDatum, group: &FiniteGroup) -> Self {
        let classes = root_classes(datum, group)
            .into_iter()
            .map(|cls| {
                let rep = cls[0];
                let pm = stabilizer_pm(datum, group, rep);
                let st = stabilizer(datum, group, rep);
                ClassChoice {
                    rep,
                    u: group
                        .right_cosets(&pm, &group.whole())
                        .into_iter()
                        .map(|x| (x, x))
                        .collect(),
                    v: group.right_cosets(&st, &pm).into_iter().map(|y| (y, y)).collect(),
                }
            })
            .collect();
        SectionChoices { classes }
    }

    /// Random representatives and random coset elements.
    pub fn random<R: Rng>(datum: &GRootDatum, group: &FiniteGroup, rng: &mut R) -> Self {
        let classes = root_classes(datum, group)
            .into_iter()
            .map(|cls| {
                let rep = *cls.choose(rng).unwrap();
                let pm = stabilizer_pm(datum, group, rep);
                let st = stabilizer(datum, group, rep);
                let pick = |sub: &[usize], ambient: &[usize], rng: &mut R| -> BTreeMap<usize, usize> {
                    group
                        .right_cosets(sub, ambient)
                        .into_iter()
                        .map(|x| {
                            let coset: Vec<usize> = sub.iter().map(|&h| group.mul(h, x)).collect();
                            (x, *coset.choose(rng).unwrap())
                        })
                        .collect()
                };
                let u = pick(&pm, &group.whole(), rng);
                let v = pick(&st, &pm, rng);
                ClassChoice { rep, u, v }
            })
            .collect();
        SectionChoices { classes }
    }

    /// Each class has one representative and both maps are sections.
    pub fn check(&self, datum: &GRootDatum, group: &FiniteGroup) -> Result<()> {
        let classes = root_classes(datum, group);
        if classes.len() != self.classes.len() {
            return Err(Error::Invalid(format!(
                "{} root classes but {} representatives",
                classes.len(),
                self.classes.len()
            )));
        }
        for (cls, ch) in classes.iter().zip(&self.classes) {
            if !cls.contains(&ch.rep) {
                return Err(Error::Invalid(format!(
                    "representative {} lies in the wrong class",
                    ch.rep
                )));
            }
            let pm = stabilizer_pm(datum, group, ch.rep);
            let st = stabilizer(datum, group, ch.rep);
            let want_u = group.right_cosets(&pm, &group.whole());
            let want_v = group.right_cosets(&st, &pm);
            if ch.u.keys().copied().collect::<Vec<_>>() != want_u
                || ch.u.iter().any(|(x, g)| group.right_coset_label(&pm, *g) != *x)
            {
                return Err(Error::Invalid(format!("u is not a section for root {}", ch.rep)));
            }
            if ch.v.keys().copied().collect::<Vec<_>>() != want_v
                || ch.v.iter().any(|(y, g)| group.right_coset_label(&st, *g) != *y)
            {
                return Err(Error::Invalid(format!("v is not a section for root {}", ch.rep)));
            }
        }
        Ok(())
    }

    /// The gauge: p(β) = +1 iff β = u(x)^{-1}α for some class and coset x.
    pub fn gauge(&self, datum: &GRootDatum, group: &FiniteGroup) -> Result<Vec<i8>> {
        let mut p = vec![0i8; datum.num_roots()];
        for ch in &self.classes {
            for g in ch.u.values() {
                let b = datum.act_root(group.inv(*g), ch.rep);
                p[b] = 1;
                p[datum.neg(b)] = -1;
            }
        }
        for b in 0..p.len() {
            if p[b] == 0 || p[b] != -p[datum.neg(b)] {
                return Err(Error::Consistency(format!("gauge is not odd at root {b}")));
            }
        }
        Ok(p)
    }
}

/// r_χ(w) = Σ_{classes, x} χ_α(v_0(u_x(w))) · u(x)^{-1}α, coordinates mod 1.
pub fn r_chi_eval(
    chi: &ChiData,
    datum: &GRootDatum,
    group: &FiniteGroup,
    choices: &SectionChoices,
    w: usize,
) -> Result<DualTorusElement> {
    let mut acc = vec![Rational::zero(); datum.rank()];
    for ch in &choices.classes {
        let a = ch.rep;
        let pm = stabilizer_pm(datum, group, a);
        let st = stabilizer(datum, group, a);
        let v_of = |g: usize| -> Result<usize> {
            ch.v.get(&group.right_coset_label(&st, g))
                .copied()
                .ok_or_else(|| Error::Invalid(format!("v has no value on the coset of {g}")))
        };
        let v_id = v_of(0)?;
        for (&x, &ux) in &ch.u {
            let uxw = group.mul(ux, w);
            let target =
                ch.u.get(&group.right_coset_label(&pm, uxw))
                    .copied()
                    .ok_or_else(|| Error::Invalid(format!("u has no value on the coset of {uxw}")))?;
            let k = group.mul(uxw, group.inv(target));
            if !FiniteGroup::contains(&pm, k) {
                return Err(Error::Consistency(format!("u_x(w) left Γ_±α at coset {x}")));
            }
            let kv = group.mul(v_id, k);
            let v0 = group.mul(kv, group.inv(v_of(kv)?));
            if !FiniteGroup::contains(&st, v0) {
                return Err(Error::Consistency(format!("v_0 left Γ_α at coset {x}")));
            }
            let val = chi.character(a).value(v0)?;
            if val.is_zero() {
                continue;
            }
            let beta = datum.root(datum.act_root(group.inv(ux), a));
            for (c, b) in acc.iter_mut().zip(beta) {
                *c += val * Rational::from_integer(*b);
            }
        }
    }
    Ok(acc.iter().map(mod1).collect())
}

/// Sections for the sub-frame of H together with the rebuilt sections over Γ,
/// related as u(x) = c(z)·u^z(y) and v^z(y) = c(z)^{-1} v(c(z) y c(z)^{-1}) c(z).
#[derive(Debug, Clone, Serialize)]
pub struct CompatibleChoices {
    pub top: SectionChoices,
    /// Keyed and valued by position in sorted H.
    pub sub: SectionChoices,
    /// Per class of Γ: (double coset label, c(z), α_z).
    pub double_cosets: Vec<Vec<(usize, usize, usize)>>,
}

pub fn compatible_choices(
    datum: &GRootDatum,
    group: &FiniteGroup,
    choices: &SectionChoices,
    h: &[usize],
) -> Result<CompatibleChoices> {
    choices.check(datum, group)?;
    if !group.is_subgroup(h) {
        return Err(Error::NotSubgroup(format!("{h:?}")));
    }
    let pos = |x: usize| h.binary_search(&x).unwrap();
    let mut top = Vec::new();
    let mut sub = Vec::new();
    let mut dcs = Vec::new();
    for ch in &choices.classes {
        let a = ch.rep;
        let pm = stabilizer_pm(datum, group, a);
        let st = stabilizer(datum, group, a);
        let labels: Vec<usize> = {
            let mut l: Vec<usize> = group.elements().map(|g| group.double_coset_label(&pm, g, h)).collect();
            l.sort();
            l.dedup();
            l
        };
        let s0_given = ch.v[&0];
        let s_given = ch.v.iter().find(|(y, _)| **y != 0).map(|(_, g)| *g);
        let mut cand0 = vec![s0_given];
        cand0.extend(st.iter().copied().filter(|g| *g != s0_given));
        let mut cand1: Vec<Option<usize>> = vec![s_given];
        if let Some(sg) = s_given {
            cand1.extend(
                pm.iter()
                    .copied()
                    .filter(|g| !FiniteGroup::contains(&st, *g) && *g != sg)
                    .map(Some),
            );
        }
        let mut found = None;
        'search: for &s0 in &cand0 {
            for &s1 in &cand1 {
                let mut cs = Vec::new();
                for &z in &labels {
                    let dc = group.double_coset(&pm, z, h);
                    let c = dc.iter().copied().find(|&c| {
                        let ci = group.inv(c);
                        let good = |s: usize| FiniteGroup::contains(h, group.mul(group.mul(ci, s), c));
                        let az = datum.act_root(ci, a);
                        let sym_h = h.iter().any(|&g| datum.act_root(g, az) == datum.neg(az));
                        good(s0) && (!sym_h || good(s1.expect("symmetric over H implies symmetric")))
                    });
                    match c {
                        Some(c) => cs.push((z, c)),
                        None => continue,
                    }
                }
                if cs.len() == labels.len() {
                    found = Some((s0, s1, cs));
                    break 'search;
                }
            }
        }
        let (s0, s1, cs) =
            found.ok_or_else(|| Error::Consistency(format!("no compatible double-coset section for root {a}")))?;
        let mut u_top = BTreeMap::new();
        let mut dc_info = Vec::new();
        for &(z, c) in &cs {
            let ci = group.inv(c);
            let az = datum.act_root(ci, a);
            dc_info.push((z, c, az));
            let pm_z: Vec<usize> = FiniteGroup::intersect(&stabilizer_pm(datum, group, az), h);
            let st_z: Vec<usize> = FiniteGroup::intersect(&stabilizer(datum, group, az), h);
            let mut uz = BTreeMap::new();
            for y in group.right_cosets(&pm_z, h) {
                let x = group.right_coset_label(&pm, group.mul(c, y));
                let pref = group.mul(ci, ch.u[&x]);
                let pick = if FiniteGroup::contains(h, pref) && group.right_coset_label(&pm_z, pref) == y {
                    pref
                } else {
                    y
                };
                uz.insert(y, pick);
                u_top.insert(x, group.mul(c, pick));
            }
            let mut vz = BTreeMap::new();
            for y in group.right_cosets(&st_z, &pm_z) {
                let inner = group.conj(c, y);
                let s = if FiniteGroup::contains(&st, inner) {
                    s0
                } else {
                    s1.unwrap()
                };
                vz.insert(y, group.conj(ci, s));
            }
            sub.push(ClassChoice {
                rep: az,
                u: uz.into_iter().map(|(k, v)| (pos(k), pos(v))).collect(),
                v: vz.into_iter().map(|(k, v)| (pos(k), pos(v))).collect(),
            });
        }
        let mut v_top = BTreeMap::from([(0usize, s0)]);
        if let Some(s) = s1 {
            v_top.insert(*ch.v.keys().find(|y| **y != 0).unwrap(), s);
        }
        top.push(ClassChoice {
            rep: a,
            u: u_top,
            v: v_top,
        });
        dcs.push(dc_info);
    }
    // order sub classes the way the sub-frame enumerates them
    let sub_group = group.subgroup_table(h)?;
    let sub_datum = super::chi::restrict_datum(datum, h, &sub_group)?;
    let order = root_classes(&sub_datum, &sub_group);
    let mut sorted = Vec::new();
    for cls in &order {
        let found: Vec<&ClassChoice> = sub.iter().filter(|c| cls.contains(&c.rep)).collect();
        if found.len() != 1 {
            return Err(Error::Consistency(format!(
                "{} representatives found for an H-class",
                found.len()
            )));
        }
        sorted.push(found[0].clone());
    }
    let top = SectionChoices { classes: top };
    let sub = SectionChoices { classes: sorted };
    top.check(datum, group)?;
    sub.check(&sub_datum, &sub_group)?;
    Ok(CompatibleChoices {
        top,
        sub,
        double_cosets: dcs,
    })
}

/// First element of H where the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseChangeWitness {
    pub w: usize,
    #[serde(with = "crate::rational::serde_vec")]
    pub over_k: DualTorusElement,
    #[serde(with = "crate::rational::serde_vec")]
    pub over_l: DualTorusElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseChangeReport {
    pub holds: bool,
    pub checked: usize,
    pub gauges_agree: bool,
    pub witness: Option<BaseChangeWitness>,
}

/// Compares r_χ on H with r_{χ_ℓ} for explicit choices on both sides.
pub fn compare_on_subgroup(
    chi: &ChiData,
    datum: &GRootDatum,
    frame: &GaloisFrame,
    h: &[usize],
    top: &SectionChoices,
    sub: &SectionChoices,
) -> Result<BaseChangeReport> {
    let group = frame.group();
    let bc = base_change_chi(chi, datum, frame, h)?;
    let sg = bc.frame.group();
    let gk = top.gauge(datum, group)?;
    let gl = sub.gauge(&bc.datum, sg)?;
    for (i, &w) in h.iter().enumerate() {
        let over_k = r_chi_eval(chi, datum, group, top, w)?;
        let over_l = r_chi_eval(&bc.chi, &bc.datum, sg, sub, i)?;
        if over_k != over_l {
            return Ok(BaseChangeReport {
                holds: false,
                checked: i + 1,
                gauges_agree: gk == gl,
                witness: Some(BaseChangeWitness { w, over_k, over_l }),
            });
        }
    }
    Ok(BaseChangeReport {
        holds: true,
        checked: h.len(),
        gauges_agree: gk == gl,
        witness: None,
    })
}

/// Builds compatible choices from `choices` and checks r_χ|_H = r_{χ_ℓ} on all of H.
pub fn verify_base_change(
    chi: &ChiData,
    datum: &GRootDatum,
    frame: &GaloisFrame,
    h: &[usize],
    choices: &SectionChoices,
) -> Result<BaseChangeReport> {
    let cc = compatible_choices(datum, frame.group(), choices, h)?;
    compare_on_subgroup(chi, datum, frame, h, &cc.top, &cc.sub)
}

/// On every subgroup H where χ restricts trivially, r_χ with choices
/// compatible with H vanishes on H.
pub fn vanishes_where_chi_trivial(
    chi: &ChiData,
    datum: &GRootDatum,
    frame: &GaloisFrame,
    choices: &SectionChoices,
) -> Result<bool> {
    let group = frame.group();
    for h in group.all_subgroups() {
        if !base_change_chi(chi, datum, frame, &h)?.chi.is_trivial() {
            continue;
        }
        let cc = compatible_choices(datum, group, choices, &h)?;
        for &w in &h {
            if r_chi_eval(chi, datum, group, &cc.top, w)?.iter().any(|c| !c.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
