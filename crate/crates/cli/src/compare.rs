use crate::error::{CliError, CliResult};
use crate::scenario::Scenario;
use fdc_core::formal_degree::{
    general_degree, regular_degree, regular_depth_zero_input, Degree, DepthZeroInput, YuShape,
};
use fdc_core::mp_filtration::LengthData;
use fdc_core::rational::format_rational;
use fdc_core::torus::TorusInvariants;
use fdc_core::weil_gamma::{galois_side, OrbitConductor};
use fdc_core::zlattice::{coinvariants_with_frobenius, fg_fixed_order, twisted_fixed_order};
use fdc_core::{qmon_from_integer, Error, QMonomial, Result};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Automorphic,
    Galois,
}

/// One evaluator's output: the exact value split as prefactor · monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub side: Side,
    pub degree: Degree,
    pub value: QMonomial,
    pub shown: String,
}

impl Evaluation {
    fn new(side: Side, degree: Degree) -> Result<Self> {
        let value = degree.value()?;
        Ok(Evaluation {
            side,
            shown: value.to_string(),
            degree,
            value,
        })
    }
}

pub trait Evaluator: Send + Sync {
    fn name(&self) -> &'static str;
    fn side(&self) -> Side;
    fn evaluate(&self, s: &Scenario, shape: &YuShape) -> Result<Evaluation>;
}

struct RegularTorusPoints;
struct RegularTorusIndex;
struct GeneralFormula;
struct GaloisGamma;

impl Evaluator for RegularTorusPoints {
    fn name(&self) -> &'static str {
        "automorphic_torus_points"
    }
    fn side(&self) -> Side {
        Side::Automorphic
    }
    fn evaluate(&self, s: &Scenario, shape: &YuShape) -> Result<Evaluation> {
        Evaluation::new(self.side(), regular_degree(shape, &s.torus)?.by_torus_points)
    }
}

impl Evaluator for RegularTorusIndex {
    fn name(&self) -> &'static str {
        "automorphic_torus_index"
    }
    fn side(&self) -> Side {
        Side::Automorphic
    }
    fn evaluate(&self, s: &Scenario, shape: &YuShape) -> Result<Evaluation> {
        Evaluation::new(self.side(), regular_degree(shape, &s.torus)?.by_torus_index)
    }
}

impl Evaluator for GeneralFormula {
    fn name(&self) -> &'static str {
        "automorphic_general"
    }
    fn side(&self) -> Side {
        Side::Automorphic
    }
    fn evaluate(&self, s: &Scenario, shape: &YuShape) -> Result<Evaluation> {
        let dz = match s.depth_zero {
            None => regular_depth_zero_input(shape, &s.torus)?,
            Some((d, i)) => DepthZeroInput {
                dim_rho: qmon_from_integer(d, &s.q)?,
                stab_index: qmon_from_integer(i, &s.q)?,
            },
        };
        Evaluation::new(self.side(), general_degree(shape, &dz)?.degree)
    }
}

impl Evaluator for GaloisGamma {
    fn name(&self) -> &'static str {
        "galois"
    }
    fn side(&self) -> Side {
        Side::Galois
    }
    fn evaluate(&self, s: &Scenario, _: &YuShape) -> Result<Evaluation> {
        Evaluation::new(
            self.side(),
            galois_side(&s.datum, &s.orbits, &s.filtration, &s.torus, &s.q)?.degree,
        )
    }
}

/// Named evaluators; the comparison runs whichever are registered.
pub struct EvaluatorRegistry {
    inner: HashMap<String, Box<dyn Evaluator>>,
}

impl EvaluatorRegistry {
    pub fn empty() -> Self {
        EvaluatorRegistry { inner: HashMap::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(RegularTorusPoints));
        r.register(Box::new(RegularTorusIndex));
        r.register(Box::new(GeneralFormula));
        r.register(Box::new(GaloisGamma));
        r
    }

    pub fn register(&mut self, e: Box<dyn Evaluator>) {
        self.inner.insert(e.name().to_string(), e);
    }

    pub fn get(&self, name: &str) -> CliResult<&dyn Evaluator> {
        self.inner
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| CliError::Unregistered {
                kind: "evaluator",
                name: name.into(),
            })
    }

    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.inner.keys().map(String::as_str).collect();
        v.sort();
        v
    }

    pub fn on_side(&self, side: Side) -> Vec<&dyn Evaluator> {
        self.names()
            .into_iter()
            .map(|n| self.inner[n].as_ref())
            .filter(|e| e.side() == side)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Equal,
    Flagged,
    Unequal,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "EQUAL",
            Verdict::Flagged => "FLAGGED",
            Verdict::Unequal => "UNEQUAL",
        })
    }
}

/// An identity checked on the side, with both sides as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl BridgeCheck {
    fn new(name: &str, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        BridgeCheck {
            name: name.into(),
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub id: usize,
    pub size: usize,
    pub e: i128,
    pub f: i128,
    pub symmetric: bool,
    pub ramified: bool,
    pub depth: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationSummary {
    pub breaks: Vec<String>,
    pub level_sizes: Vec<usize>,
    pub total: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub name: String,
    pub q: String,
    /// None when only one side was evaluated.
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag_reason: Option<String>,
    pub values: BTreeMap<String, Evaluation>,
    pub bridges: Vec<BridgeCheck>,
    pub torus: TorusInvariants,
    pub orbits: Vec<OrbitSummary>,
    pub filtration: FiltrationSummary,
    pub conductors: Vec<OrbitConductor>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u128>,
}

fn shape_of(s: &Scenario) -> Result<YuShape<'_>> {
    let lengths = LengthData {
        datum: &s.datum,
        orbits: &s.orbits,
        jumps: &s.jumps,
        toral: &s.torus.toral_jumps,
    };
    YuShape::new(lengths, &s.filtration, s.q)
}

/// [S(k):S(k)_{0+}] as the product of its two factors, recomputed from the
/// datum, against the value used by the automorphic side; and the lattice
/// identity |(X_*^I)_Frob|·|(X_{*,I})^Frob| = |X_{*,Γ}|.
fn bridges(s: &Scenario, shape: &YuShape) -> Result<Vec<BridgeCheck>> {
    let inv = &s.torus.invariants;
    let frob = s.datum.cochar_action(s.frame.frobenius())?;
    let i_co: Vec<_> = s
        .frame
        .inertia()
        .iter()
        .map(|&g| s.datum.cochar_action(g))
        .collect::<Result<_>>()?;
    let fixed = fg_fixed_order(&coinvariants_with_frobenius(&i_co, &frob)?)?;
    let points = if s.torus.m.rank() == 0 {
        1
    } else {
        twisted_fixed_order(&s.torus.frob_m, &s.q)?
    };
    let reg = regular_degree(shape, &s.torus)?;
    let galois = galois_side(&s.datum, &s.orbits, &s.filtration, &s.torus, &s.q)?;
    Ok(vec![
        BridgeCheck::new("torus_index_factorization", reg.torus_index, fixed * points),
        BridgeCheck::new(
            "cocharacter_index_ratio",
            inv.cochar_inv_coinv * inv.cochar_coinv_fixed,
            inv.cochar_gamma_coinv,
        ),
        BridgeCheck::new("component_group", galois.component_group, inv.cochar_gamma_coinv),
        BridgeCheck::new("root_gamma_orbitwise", &galois.root.orbitwise, &galois.root.gamma),
    ])
}

fn summaries(s: &Scenario) -> (Vec<OrbitSummary>, FiltrationSummary) {
    let orbits = s
        .orbits
        .iter()
        .map(|o| OrbitSummary {
            id: o.id,
            size: o.size(),
            e: o.e(),
            f: o.f(),
            symmetric: o.symmetric,
            ramified: o.ramified,
            depth: s.filtration.depth_of_root(o.members[0]).to_string(),
        })
        .collect();
    let f = &s.filtration;
    let filt = FiltrationSummary {
        breaks: f.breaks().iter().map(format_rational).collect(),
        level_sizes: f.level_sizes(),
        total: format_rational(&f.total()),
    };
    (orbits, filt)
}

/// EQUAL when every automorphic value matches the Galois value. FLAGGED when
/// only the 1/|S(k)| prefactor variant disagrees. UNEQUAL otherwise, or when
/// a side identity fails.
pub fn verdict(values: &BTreeMap<String, Evaluation>, bridges: &[BridgeCheck]) -> (Verdict, Option<String>) {
    if let Some(b) = bridges.iter().find(|b| !b.holds) {
        return (
            Verdict::Unequal,
            Some(format!("identity {} fails: {} vs {}", b.name, b.lhs, b.rhs)),
        );
    }
    let galois: Vec<&Evaluation> = values.values().filter(|e| e.side == Side::Galois).collect();
    let Some(g) = galois.first() else {
        return (Verdict::Unequal, Some("no Galois evaluator".into()));
    };
    if galois.iter().any(|x| x.value != g.value) {
        return (Verdict::Unequal, Some("Galois evaluators disagree".into()));
    }
    let off: Vec<&String> = values
        .iter()
        .filter(|(_, e)| e.side == Side::Automorphic && e.value != g.value)
        .map(|(n, _)| n)
        .collect();
    match off.as_slice() {
        [] => (Verdict::Equal, None),
        [n] if n.as_str() == "automorphic_torus_points" => {
            let e = &values["automorphic_torus_points"];
            (
                Verdict::Flagged,
                Some(format!(
                    "the 1/|S(k)| prefactor gives {} while the torus-index prefactor and the Galois side give {}",
                    e.shown, g.shown
                )),
            )
        }
        _ => (
            Verdict::Unequal,
            Some(format!("automorphic values {off:?} differ from the Galois side")),
        ),
    }
}

fn run_side(s: &Scenario, reg: &EvaluatorRegistry, sides: &[Side]) -> Result<ComparisonReport> {
    let shape = shape_of(s)?;
    let mut values = BTreeMap::new();
    for side in sides {
        for e in reg.on_side(*side) {
            values.insert(e.name().to_string(), e.evaluate(s, &shape)?);
        }
    }
    let both = sides.contains(&Side::Automorphic) && sides.contains(&Side::Galois);
    let bridges = if both { bridges(s, &shape)? } else { vec![] };
    let (verdict, flag_reason) = if both {
        let (v, r) = verdict(&values, &bridges);
        (Some(v), r)
    } else {
        (None, None)
    };
    let conductors = if sides.contains(&Side::Galois) {
        galois_side(&s.datum, &s.orbits, &s.filtration, &s.torus, &s.q)?
            .root
            .conductors
    } else {
        vec![]
    };
    let (orbits, filtration) = summaries(s);
    Ok(ComparisonReport {
        name: s.file.name.clone(),
        q: s.q.to_string(),
        verdict,
        flag_reason,
        values,
        bridges,
        torus: s.torus.invariants,
        orbits,
        filtration,
        conductors,
        diagnostics: s.diagnostics.clone(),
        elapsed_us: None,
    })
}

pub fn run_compare(s: &Scenario, reg: &EvaluatorRegistry) -> Result<ComparisonReport> {
    run_side(s, reg, &[Side::Automorphic, Side::Galois])
}

pub fn run_degree(s: &Scenario, reg: &EvaluatorRegistry) -> Result<ComparisonReport> {
    run_side(s, reg, &[Side::Automorphic])
}

pub fn run_gamma(s: &Scenario, reg: &EvaluatorRegistry) -> Result<ComparisonReport> {
    run_side(s, reg, &[Side::Galois])
}

/// Value of a named evaluator in a finished report.
pub fn value_of(r: &ComparisonReport, name: &str) -> Result<QMonomial> {
    r.values
        .get(name)
        .map(|e| e.value.clone())
        .ok_or_else(|| Error::Invalid(format!("no value for {name}")))
}
