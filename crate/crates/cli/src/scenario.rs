use crate::error::{CliError, CliResult};
use fdc_core::chi_data::{validate_chi, ChiData, ChiDiagnostics};
use fdc_core::galois_roots::{
    classify_orbits, howe_filtration, validate_depth_lattice, Depth, FiniteGroup, GRootDatum, GaloisFrame,
    HoweFiltration, Orbits, Subgroup,
};
use fdc_core::mp_filtration::JumpAssignment;
use fdc_core::rational::{format_rational, parse_rational};
use fdc_core::torus::TorusData;
use fdc_core::zlattice::IntMatrix;
use fdc_core::{Error, PrimePower, Rational, ValidationFailure};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSpec {
    pub p: i128,
    #[serde(default = "one")]
    pub a: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult_table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm_gens: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DepthZeroSpec {
    Named(String),
    Explicit { dim_rho: i128, stab_index: i128 },
}

impl Default for DepthZeroSpec {
    fn default() -> Self {
        DepthZeroSpec::Named("regular".into())
    }
}

/// On-disk scenario. Rationals are "num/den" strings; map keys are element
/// or root indices written as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub q: QSpec,
    pub group: GroupSpec,
    #[serde(default)]
    pub inertia: Vec<usize>,
    pub frobenius: usize,
    pub lattice_rank: usize,
    pub action: BTreeMap<String, Vec<Vec<i128>>>,
    pub roots: Vec<Vec<i128>>,
    #[serde(default)]
    pub jump_offsets: BTreeMap<String, String>,
    pub theta_depths: BTreeMap<String, String>,
    pub theta_total_depth: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_subgroups: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub depth_zero: DepthZeroSpec,
}

/// A fully validated scenario with every derived object built.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub q: PrimePower,
    pub frame: GaloisFrame,
    pub datum: GRootDatum,
    pub orbits: Orbits,
    pub jumps: JumpAssignment,
    pub filtration: HoweFiltration,
    pub torus: TorusData,
    /// None means the depth-zero part is read off from the torus.
    pub depth_zero: Option<(i128, i128)>,
    pub chi: Option<ChiData>,
    pub chi_diagnostics: Option<ChiDiagnostics>,
    pub chi_subgroups: Vec<Subgroup>,
    pub diagnostics: Vec<String>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.file == other.file
            && self.q == other.q
            && self.frame == other.frame
            && self.datum == other.datum
            && self.orbits == other.orbits
            && self.jumps == other.jumps
            && self.filtration == other.filtration
            && self.chi == other.chi
    }
}

const BUNDLED: &[(&str, &str)] = &[
    (
        "sl2_unramified_depth0",
        include_str!("bundled/sl2_unramified_depth0.json"),
    ),
    (
        "sl2_ramified_depth_half",
        include_str!("bundled/sl2_ramified_depth_half.json"),
    ),
    ("z4_a1_chi", include_str!("bundled/z4_a1_chi.json")),
    ("z8_rot_a1a1_chi", include_str!("bundled/z8_rot_a1a1_chi.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_source(name: &str) -> CliResult<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| CliError::UnknownBundled(name.into()))
}

pub fn parse_scenario_file(text: &str, origin: &str) -> CliResult<ScenarioFile> {
    serde_json::from_str(text).map_err(|source| CliError::Json {
        origin: origin.into(),
        source,
    })
}

/// Loads a path, or `bundled:NAME` for a scenario shipped with the binary.
pub fn load_scenario(path: &str, q_override: Option<PrimePower>) -> CliResult<Scenario> {
    let text = match path.strip_prefix("bundled:") {
        Some(name) => bundled_source(name)?.to_string(),
        None => std::fs::read_to_string(Path::new(path)).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })?,
    };
    let file = parse_scenario_file(&text, path)?;
    Ok(build_scenario(&file, q_override)?)
}

pub fn load_bundled(name: &str, q_override: Option<PrimePower>) -> CliResult<Scenario> {
    load_scenario(&format!("bundled:{name}"), q_override)
}

/// The canonical on-disk form of a scenario.
pub fn emit_scenario(s: &Scenario) -> ScenarioFile {
    s.file.clone()
}

pub fn scenario_json(file: &ScenarioFile) -> String {
    serde_json::to_string_pretty(file).expect("scenario serializes")
}

struct Failures(Vec<ValidationFailure>);

impl Failures {
    fn push(&mut self, module: &str, field: &str, msg: impl Into<String>) {
        self.0.push(ValidationFailure::new(module, field, msg));
    }

    fn absorb(&mut self, module: &str, field: &str, e: Error) {
        match e {
            Error::Validation(v) => self.0.extend(v),
            other => self.push(module, field, other.to_string()),
        }
    }

    fn finish(self) -> fdc_core::Result<()> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(self.0))
        }
    }
}

fn index_key(key: &str, field: &str) -> fdc_core::Result<usize> {
    key.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{field}: key {key:?} is not an index")))
}

fn rational_map(m: &BTreeMap<String, String>, field: &str) -> fdc_core::Result<BTreeMap<usize, Rational>> {
    m.iter()
        .map(|(k, v)| {
            let r = parse_rational(v).map_err(|e| Error::Parse(format!("{field}[{k}]: {e}")))?;
            Ok((index_key(k, field)?, r))
        })
        .collect()
}

fn build_group(spec: &GroupSpec) -> fdc_core::Result<FiniteGroup> {
    let g = match (&spec.mult_table, &spec.perm_gens) {
        (Some(t), None) => FiniteGroup::from_table(t.clone())?,
        (None, Some(p)) => FiniteGroup::from_permutations(p)?.0,
        (None, None) if spec.order == 1 => FiniteGroup::trivial(),
        _ => return Err(Error::Invalid("give exactly one of mult_table and perm_gens".into())),
    };
    if g.order() != spec.order {
        return Err(Error::Invalid(format!(
            "declared order {} but the group has {}",
            spec.order,
            g.order()
        )));
    }
    Ok(g)
}

/// Parses and validates everything, collecting every violated invariant.
/// Malformed numbers are parse errors and stop immediately.
pub fn build_scenario(raw: &ScenarioFile, q_override: Option<PrimePower>) -> fdc_core::Result<Scenario> {
    let offsets = rational_map(&raw.jump_offsets, "jump_offsets")?;
    let total = parse_rational(&raw.theta_total_depth).map_err(|e| Error::Parse(format!("theta_total_depth: {e}")))?;
    let mut depths = BTreeMap::new();
    for (k, v) in &raw.theta_depths {
        let d = Depth::parse(v).map_err(|e| Error::Parse(format!("theta_depths[{k}]: {e}")))?;
        depths.insert(index_key(k, "theta_depths")?, d);
    }
    let mut chi_images: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (root, imgs) in raw.chi.iter().flatten() {
        let m = rational_map(imgs, "chi")?;
        chi_images.insert(index_key(root, "chi")?, m.into_iter().collect());
    }
    let mut action = Vec::new();
    for (k, rows) in &raw.action {
        action.push((index_key(k, "action")?, rows.clone()));
    }

    let mut fails = Failures(Vec::new());
    let q = match q_override {
        Some(q) => Some(q),
        None => match PrimePower::new(raw.q.p, raw.q.a) {
            Ok(q) => Some(q),
            Err(e) => {
                fails.absorb("qexact", "q", e);
                None
            }
        },
    };
    let group = match build_group(&raw.group) {
        Ok(g) => Some(g),
        Err(e) => {
            fails.absorb("galois_roots", "group", e);
            None
        }
    };
    let (Some(q), Some(group)) = (q, group) else {
        fails.finish()?;
        unreachable!()
    };
    let frame = GaloisFrame::new(group.clone(), &raw.inertia, raw.frobenius, q)
        .map_err(|e| fails.absorb("galois_roots", "GaloisFrame", e))
        .ok();
    let mut mats = Vec::new();
    for (g, rows) in &action {
        match IntMatrix::square(rows) {
            Ok(m) => mats.push((*g, m)),
            Err(e) => fails.absorb("zlattice", "action", e),
        }
    }
    let datum = GRootDatum::new(&group, raw.lattice_rank, &mats, raw.roots.clone())
        .map_err(|e| fails.absorb("galois_roots", "GRootDatum", e))
        .ok();
    let (Some(frame), Some(datum)) = (frame, datum) else {
        fails.finish()?;
        unreachable!()
    };
    let orbits = classify_orbits(&datum, &frame)?;
    let jumps = JumpAssignment::new(&orbits, &offsets)
        .map_err(|e| fails.absorb("mp_filtration", "jump_offsets", e))
        .ok();
    let filtration = howe_filtration(&datum, &orbits, &depths, total)
        .map_err(|e| fails.absorb("galois_roots", "theta_depths", e))
        .ok();
    if let Some(f) = &filtration {
        for c in validate_depth_lattice(f, &orbits).iter().filter(|c| !c.pass) {
            fails.push(
                "galois_roots",
                "theta_depths",
                format!(
                    "depth-lattice failure: break {} on orbit {} (e = {}) is not in the value group",
                    format_rational(&c.depth),
                    c.orbit,
                    c.e
                ),
            );
        }
    }
    let torus = TorusData::new(&datum, &frame)
        .map_err(|e| fails.absorb("torus", "M", e))
        .ok();
    let depth_zero = match &raw.depth_zero {
        DepthZeroSpec::Named(s) if s == "regular" => None,
        DepthZeroSpec::Named(s) => {
            fails.push("formal_degree", "depth_zero", format!("unknown depth-zero mode {s:?}"));
            None
        }
        DepthZeroSpec::Explicit { dim_rho, stab_index } => {
            if *dim_rho <= 0 || *stab_index <= 0 {
                fails.push("formal_degree", "depth_zero", "dim_rho and stab_index must be positive");
            }
            Some((*dim_rho, *stab_index))
        }
    };
    let mut chi = None;
    let mut chi_diagnostics = None;
    if raw.chi.is_some() {
        match ChiData::from_generator_images(&datum, &group, &chi_images) {
            Ok(c) => {
                let d = validate_chi(&c, &datum, &frame);
                for m in d.domain.iter().chain(&d.negation).chain(&d.equivariance) {
                    fails.push("chi_data", "chi", m.clone());
                }
                chi = Some(c);
                chi_diagnostics = Some(d);
            }
            Err(e) => fails.absorb("chi_data", "chi", e),
        }
    }
    let chi_subgroups = match &raw.chi_subgroups {
        Some(list) => {
            let mut out = Vec::new();
            for h in list {
                let mut h = h.clone();
                h.sort();
                h.dedup();
                if group.is_subgroup(&h) {
                    out.push(h);
                } else {
                    fails.push("chi_data", "chi_subgroups", format!("{h:?} is not a subgroup"));
                }
            }
            out
        }
        None => group.all_subgroups(),
    };
    fails.finish()?;
    let mut diagnostics = frame.diagnostics();
    if let Some(d) = &chi_diagnostics {
        diagnostics.extend(d.symmetric_restriction.iter().cloned());
        diagnostics.extend(d.template.iter().cloned());
    }
    let file = canonical_file(raw, &q, &offsets, &depths, &total, &chi_images);
    Ok(Scenario {
        file,
        q,
        frame,
        datum,
        orbits,
        jumps: jumps.unwrap(),
        filtration: filtration.unwrap(),
        torus: torus.unwrap(),
        depth_zero,
        chi,
        chi_diagnostics,
        chi_subgroups,
        diagnostics,
    })
}

fn canonical_file(
    raw: &ScenarioFile,
    q: &PrimePower,
    offsets: &BTreeMap<usize, Rational>,
    depths: &BTreeMap<usize, Depth>,
    total: &Rational,
    chi: &BTreeMap<usize, Vec<(usize, Rational)>>,
) -> ScenarioFile {
    let mut f = raw.clone();
    f.q = QSpec { p: q.p(), a: q.a() };
    f.jump_offsets = offsets
        .iter()
        .map(|(k, v)| (k.to_string(), format_rational(v)))
        .collect();
    f.theta_depths = depths.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    f.theta_total_depth = format_rational(total);
    if raw.chi.is_some() {
        f.chi = Some(
            chi.iter()
                .map(|(r, imgs)| {
                    (
                        r.to_string(),
                        imgs.iter().map(|(g, v)| (g.to_string(), format_rational(v))).collect(),
                    )
                })
                .collect(),
        );
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenarios_load() {
        for n in bundled_names() {
            load_bundled(n, None).unwrap();
        }
    }

    #[test]
    fn round_trip() {
        for n in bundled_names() {
            let s = load_bundled(n, None).unwrap();
            let text = scenario_json(&emit_scenario(&s));
            let again = build_scenario(&parse_scenario_file(&text, n).unwrap(), None).unwrap();
            assert_eq!(s, again, "{n}");
        }
    }

    #[test]
    fn ellipticity_failure_names_datum() {
        let mut f = parse_scenario_file(bundled_source("sl2_unramified_depth0").unwrap(), "t").unwrap();
        f.action.insert("1".into(), vec![vec![1]]);
        let err = build_scenario(&f, None).unwrap_err();
        let Error::Validation(v) = err else {
            panic!("expected validation failure")
        };
        assert!(v
            .iter()
            .any(|x| x.field == "GRootDatum" && x.message.contains("ellipticity")));
    }

    #[test]
    fn bad_rational_is_parse_error() {
        let mut f = parse_scenario_file(bundled_source("sl2_unramified_depth0").unwrap(), "t").unwrap();
        f.theta_total_depth = "1/0".into();
        assert!(matches!(build_scenario(&f, None), Err(Error::Parse(_))));
    }

    #[test]
    fn depth_lattice_violation_is_refused() {
        let mut f = parse_scenario_file(bundled_source("sl2_unramified_depth0").unwrap(), "t").unwrap();
        f.theta_depths.insert("0".into(), "1/2".into());
        f.theta_total_depth = "1/2".into();
        let err = build_scenario(&f, None).unwrap_err();
        let Error::Validation(v) = err else {
            panic!("expected validation failure")
        };
        assert!(v.iter().any(|x| x.message.contains("depth-lattice")));
    }

    #[test]
    fn several_failures_are_reported_together() {
        let mut f = parse_scenario_file(bundled_source("sl2_unramified_depth0").unwrap(), "t").unwrap();
        f.theta_depths.insert("0".into(), "1/2".into());
        f.theta_total_depth = "1/2".into();
        f.jump_offsets.insert("0".into(), "1/3".into());
        let Err(Error::Validation(v)) = build_scenario(&f, None) else {
            panic!()
        };
        assert!(v.len() >= 2);
    }
}
