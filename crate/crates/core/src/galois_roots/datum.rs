use super::frame::{FieldInvariants, GaloisFrame};
use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result, ValidationFailure};
use crate::zlattice::{invariant_sublattice, IntMatrix};
use std::collections::HashMap;

const MODULE: &str = "galois_roots";

/// Character lattice of S^a with a Γ-action (one matrix per group element,
/// A_{gh} = A_g A_h, acting on column vectors) and a stable root set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GRootDatum {
    rank: usize,
    action: Vec<IntMatrix>,
    roots: Vec<Vec<i128>>,
    perm: Vec<Vec<usize>>,
    neg: Vec<usize>,
}

/// Extends matrices given on generating elements to a homomorphism on all of Γ.
pub fn extend_action(group: &FiniteGroup, n: usize, given: &[(usize, IntMatrix)]) -> Result<Vec<IntMatrix>> {
    let mut act: Vec<Option<IntMatrix>> = vec![None; group.order()];
    act[0] = Some(IntMatrix::identity(n));
    for (g, m) in given {
        if *g >= group.order() {
            return Err(Error::Invalid(format!("action key {g} is not a group element")));
        }
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension(format!("action matrix for {g} is not {n}x{n}")));
        }
        let d = m.det()?;
        if d != 1 && d != -1 {
            return Err(Error::Invalid(format!(
                "action matrix for {g} is not invertible over Z"
            )));
        }
    }
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (g, m) in given {
            let y = group.mul(x, *g);
            let val = act[x].as_ref().unwrap().mul(m)?;
            match &act[y] {
                Some(existing) if *existing != val => {
                    return Err(Error::Invalid(format!(
                        "action is not a homomorphism (conflict at element {y})"
                    )))
                }
                Some(_) => {}
                None => {
                    act[y] = Some(val);
                    frontier.push(y);
                }
            }
        }
    }
    if act.iter().any(|a| a.is_none()) {
        return Err(Error::Invalid("action keys do not generate the group".into()));
    }
    let act: Vec<IntMatrix> = act.into_iter().map(|a| a.unwrap()).collect();
    for a in group.elements() {
        for b in group.elements() {
            if act[group.mul(a, b)] != act[a].mul(&act[b])? {
                return Err(Error::Invalid("action is not a homomorphism".into()));
            }
        }
    }
    Ok(act)
}

impl GRootDatum {
    /// Elliptic datum: L^Γ = 0 is enforced.
    pub fn new(group: &FiniteGroup, rank: usize, action: &[(usize, IntMatrix)], roots: Vec<Vec<i128>>) -> Result<Self> {
        let d = Self::new_permissive(group, rank, action, roots)?;
        if !d.is_elliptic()? {
            return Err(Error::Validation(vec![ValidationFailure::new(
                MODULE,
                "GRootDatum",
                "ellipticity failure: the character lattice has nonzero Γ-invariants",
            )]));
        }
        Ok(d)
    }

    /// Same checks except ellipticity, for isotropic examples.
    pub fn new_permissive(
        group: &FiniteGroup,
        rank: usize,
        action: &[(usize, IntMatrix)],
        roots: Vec<Vec<i128>>,
    ) -> Result<Self> {
        let action = extend_action(group, rank, action)?;
        let mut errs = Vec::new();
        let mut index: HashMap<Vec<i128>, usize> = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::Dimension(format!("root {i} has wrong length")));
            }
            if r.iter().all(|x| *x == 0) {
                errs.push(ValidationFailure::new(MODULE, "roots", "0 is not a root"));
            }
            if index.insert(r.clone(), i).is_some() {
                errs.push(ValidationFailure::new(MODULE, "roots", format!("duplicate root {r:?}")));
            }
        }
        let mut neg = vec![usize::MAX; roots.len()];
        for (i, r) in roots.iter().enumerate() {
            let m: Vec<i128> = r.iter().map(|x| -x).collect();
            match index.get(&m) {
                Some(j) => neg[i] = *j,
                None => errs.push(ValidationFailure::new(
                    MODULE,
                    "roots",
                    format!("root set is not closed under negation at {r:?}"),
                )),
            }
        }
        let mut perm = Vec::with_capacity(action.len());
        for (g, a) in action.iter().enumerate() {
            let mut p = Vec::with_capacity(roots.len());
            for r in &roots {
                let img = a.mul_vec(r);
                match index.get(&img) {
                    Some(j) => p.push(*j),
                    None => {
                        errs.push(ValidationFailure::new(
                            MODULE,
                            "roots",
                            format!("root set is not stable under element {g}"),
                        ));
                        p.push(usize::MAX);
                    }
                }
            }
            perm.push(p);
        }
        if !errs.is_empty() {
            errs.dedup();
            return Err(Error::Validation(errs));
        }
        Ok(GRootDatum {
            rank,
            action,
            roots,
            perm,
            neg,
        })
    }

    pub fn is_elliptic(&self) -> Result<bool> {
        Ok(invariant_sublattice(&self.action, self.rank)?.rank() == 0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i128>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i128] {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Action on X_* = Hom(X^*, Z): A_g^{-T}.
    pub fn cochar_action(&self, g: usize) -> Result<IntMatrix> {
        Ok(self.action[g].inverse()?.transpose())
    }

    pub fn cochar_actions(&self) -> Result<Vec<IntMatrix>> {
        (0..self.action.len()).map(|g| self.cochar_action(g)).collect()
    }

    /// Index of g·α.
    pub fn act_root(&self, g: usize, i: usize) -> usize {
        self.perm[g][i]
    }

    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    pub fn root_index(&self, v: &[i128]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    /// dim G^a = rank + |R|.
    pub fn dim_g(&self) -> usize {
        self.rank + self.roots.len()
    }
}

/// One Γ-orbit of roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    /// Smallest root index in the orbit.
    pub id: usize,
    pub members: Vec<usize>,
    pub stabilizer: Subgroup,
    /// {g : gα = ±α}
    pub stabilizer_pm: Subgroup,
    pub invariants: FieldInvariants,
    pub symmetric: bool,
    pub ramified: bool,
    /// Id of the orbit of -α.
    pub negative: usize,
}

impl OrbitInfo {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn e(&self) -> i128 {
        self.invariants.e
    }

    pub fn f(&self) -> i128 {
        self.invariants.f
    }
}

/// Orbit partition with a root -> orbit lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    list: Vec<OrbitInfo>,
    of_root: Vec<usize>,
}

impl Orbits {
    pub fn iter(&self) -> std::slice::Iter<'_, OrbitInfo> {
        self.list.iter()
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// Position in the list of the orbit containing a root.
    pub fn position_of_root(&self, root: usize) -> usize {
        self.of_root[root]
    }

    pub fn of_root(&self, root: usize) -> &OrbitInfo {
        &self.list[self.of_root[root]]
    }

    pub fn by_id(&self, id: usize) -> &OrbitInfo {
        self.of_root(id)
    }

    pub fn as_slice(&self) -> &[OrbitInfo] {
        &self.list
    }
}

pub fn classify_orbits(datum: &GRootDatum, frame: &GaloisFrame) -> Result<Orbits> {
    let g = frame.group();
    if datum.actions().len() != g.order() {
        return Err(Error::Dimension("datum and frame have different groups".into()));
    }
    let nroots = datum.num_roots();
    let mut of_root = vec![usize::MAX; nroots];
    let mut list: Vec<OrbitInfo> = Vec::new();
    for a in 0..nroots {
        if of_root[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = g.elements().map(|x| datum.act_root(x, a)).collect();
        members.sort();
        members.dedup();
        let pos = list.len();
        for &m in &members {
            of_root[m] = pos;
        }
        let na = datum.neg(a);
        let stabilizer: Subgroup = g.elements().filter(|&x| datum.act_root(x, a) == a).collect();
        let stabilizer_pm: Subgroup = g
            .elements()
            .filter(|&x| {
                let y = datum.act_root(x, a);
                y == a || y == na
            })
            .collect();
        let symmetric = members.binary_search(&na).is_ok();
        let ramified = symmetric && frame.inertia().iter().any(|&t| datum.act_root(t, a) == na);
        list.push(OrbitInfo {
            id: a,
            members,
            invariants: frame.field_invariants(&stabilizer)?,
            stabilizer,
            stabilizer_pm,
            symmetric,
            ramified,
            negative: usize::MAX,
        });
    }
    for o in list.iter_mut() {
        let na = datum.neg(o.id);
        o.negative = na;
    }
    let ids: Vec<usize> = list.iter().map(|o| o.id).collect();
    for o in list.iter_mut() {
        o.negative = ids[of_root[o.negative]];
    }
    Ok(Orbits { list, of_root })
}
