//! Property suites behind `fdc selftest` and the acceptance target.

use crate::compare::{run_compare, value_of, EvaluatorRegistry, Verdict};
use crate::error::{CliError, CliResult};
use crate::generate::{random_frobenius_3x3, random_lattice, random_master_instance, random_scenario};
use crate::scenario::{build_scenario, load_bundled, Scenario};
use fdc_core::chi_data::{bundled_models, random_chi_instance, verify_base_change, SectionChoices};
use fdc_core::formal_degree::random_index_ratio_instance;
use fdc_core::mp_filtration::{master_length_identity, periodic_sum_value, DiscreteFn};
use fdc_core::rational::{format_rational, int, lcm, rat};
use fdc_core::weil_gamma::{conductor_tame_induction, conductor_tame_via_discriminant, tame_extension, CharDescriptor};
use fdc_core::zlattice::{
    coinvariants_order, coinvariants_with_frobenius, fg_fixed_order, group_coinvariants, invariant_sublattice,
    IntMatrix,
};
use fdc_core::{PrimePower, Rational, Result};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::time::{Duration, Instant};

pub const DEFAULT_SEED: u64 = 20240917;

/// Seed from FDC_SEED when set, else the default.
pub fn seed_from_env() -> u64 {
    std::env::var("FDC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides every suite's instance count.
    pub count: Option<usize>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig { seed, count: None }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn count(&self, default: usize) -> usize {
        self.count.unwrap_or(default)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub criterion: u8,
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Extra counts worth showing (e.g. FLAGGED verdicts).
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
    pub budget_ms: Option<u128>,
    pub passed: bool,
}

impl SuiteOutcome {
    pub fn line(&self) -> String {
        let mut s = format!(
            "criterion {:>2} {:<28} {} ({} checked, {} failed, {} ms",
            self.criterion,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.checked,
            self.failures.len(),
            self.elapsed_ms
        );
        if let Some(b) = self.budget_ms {
            s.push_str(&format!(" of {b}"));
        }
        s.push(')');
        for n in &self.notes {
            s.push_str(&format!("; {n}"));
        }
        s
    }
}

/// Collects results inside a suite run.
#[derive(Default)]
pub struct Tally {
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn absorb<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

pub trait Suite: Send + Sync {
    fn criterion(&self) -> u8;
    fn name(&self) -> &str;
    fn budget(&self) -> Option<Duration> {
        None
    }
    /// Fails when the suite checked fewer than this many instances.
    fn minimum(&self) -> usize {
        1
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally);

    fn run(&self, cfg: &SuiteConfig) -> SuiteOutcome {
        let start = Instant::now();
        let mut t = Tally::default();
        self.run_tally(cfg, &mut t);
        let elapsed = start.elapsed();
        let within = self.budget().is_none_or(|b| elapsed <= b);
        let enough = cfg.count.is_some() || t.checked >= self.minimum();
        SuiteOutcome {
            criterion: self.criterion(),
            name: self.name().to_string(),
            checked: t.checked,
            passed: t.failures.is_empty() && within && enough,
            failures: t.failures,
            notes: t.notes,
            elapsed_ms: elapsed.as_millis(),
            budget_ms: self.budget().map(|b| b.as_millis()),
        }
    }
}

struct MasterLength;

impl Suite for MasterLength {
    fn criterion(&self) -> u8 {
        1
    }
    fn name(&self) -> &str {
        "master_length_identity"
    }
    fn budget(&self) -> Option<Duration> {
        Some(Duration::from_secs(10))
    }
    fn minimum(&self) -> usize {
        1000
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let mut rng = cfg.rng(1);
        for i in 0..cfg.count(1000) {
            let inst = random_master_instance(&mut rng);
            if let Some((lhs, rhs)) = t.absorb(
                master_length_identity(&inst.orbits, &inst.subset, &inst.f, &inst.jumps),
                &inst.system,
            ) {
                t.check(lhs == rhs, || {
                    format!(
                        "instance {i} ({}): {} != {}",
                        inst.system,
                        format_rational(&lhs),
                        format_rational(&rhs)
                    )
                });
            }
        }
    }
}

/// Σ' over [0, s] evaluated point by point on a grid fine enough to hit
/// every support point.
fn grid_primed_sum(h: &DiscreteFn, s: Rational) -> Rational {
    let mut den = *s.denom();
    for p in &h.periodic {
        den = lcm(den, lcm(*p.offset.denom(), *p.period.denom()));
    }
    let steps = (s * int(den)).to_integer();
    let mut total = Rational::zero();
    for k in 0..=steps {
        let w = if k == 0 || k == steps { rat(1, 2) } else { int(1) };
        total += w * h.value(rat(k, den));
    }
    total
}

struct PeriodicSum;

impl Suite for PeriodicSum {
    fn criterion(&self) -> u8 {
        2
    }
    fn name(&self) -> &str {
        "periodic_sum"
    }
    fn minimum(&self) -> usize {
        1000
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let mut rng = cfg.rng(2);
        for i in 0..cfg.count(1000) {
            let lambda0 = rat(rng.gen_range(1..6), rng.gen_range(1..4));
            // even, λ₀-periodic jump pattern: ±c families plus symmetric points
            let mut h = DiscreteFn::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let c = lambda0 * rat(rng.gen_range(0..12), 12);
                let w = int(rng.gen_range(1..4));
                h = h.with_periodic(c, lambda0, w).with_periodic(-c, lambda0, w);
            }
            if rng.gen() {
                h = h.with_periodic(lambda0 * rat(1, 2), lambda0, int(rng.gen_range(1..4)));
            }
            let s = lambda0 * rat(rng.gen_range(1..12), 2);
            if let Some(fast) = t.absorb(periodic_sum_value(lambda0, &h, s), "periodic_sum_value") {
                let slow = grid_primed_sum(&h, s);
                t.check(fast == slow, || {
                    format!(
                        "instance {i}: closed form {} vs direct {}",
                        format_rational(&fast),
                        format_rational(&slow)
                    )
                });
            }
        }
    }
}

fn sl2_unramified(q: i128) -> CliResult<Scenario> {
    load_bundled("sl2_unramified_depth0", Some(PrimePower::from_q(q)?))
}

struct TwoSided;

impl Suite for TwoSided {
    fn criterion(&self) -> u8 {
        3
    }
    fn name(&self) -> &str {
        "sl2_two_sided"
    }
    fn budget(&self) -> Option<Duration> {
        Some(Duration::from_secs(1))
    }
    fn minimum(&self) -> usize {
        4
    }
    fn run_tally(&self, _cfg: &SuiteConfig, t: &mut Tally) {
        let reg = EvaluatorRegistry::builtin();
        for q in [3i128, 5, 7, 9] {
            let s = match sl2_unramified(q) {
                Ok(s) => s,
                Err(e) => {
                    t.check(false, || format!("q = {q}: {e}"));
                    continue;
                }
            };
            let Some(r) = t.absorb(run_compare(&s, &reg), "run_compare") else {
                continue;
            };
            let expect = rat(q * q, q + 1);
            let vals: Vec<Option<Rational>> = reg
                .names()
                .iter()
                .map(|n| value_of(&r, n).ok().and_then(|v| v.to_rational()))
                .collect();
            t.check(
                r.verdict == Some(Verdict::Equal) && vals.iter().all(|v| *v == Some(expect)),
                || {
                    format!(
                        "q = {q}: verdict {:?}, values {vals:?}, expected {}",
                        r.verdict,
                        format_rational(&expect)
                    )
                },
            );
        }
    }
}

/// The scenarios of the randomized two-sided suite, regenerated from the seed.
pub fn random_compare_scenarios(cfg: &SuiteConfig) -> Vec<CliResult<Scenario>> {
    let mut rng = cfg.rng(4);
    (0..cfg.count(200))
        .map(|i| {
            let f = random_scenario(&mut rng, &format!("random-{i}"));
            build_scenario(&f, None).map_err(CliError::from)
        })
        .collect()
}

struct RandomTwoSided;

impl Suite for RandomTwoSided {
    fn criterion(&self) -> u8 {
        4
    }
    fn name(&self) -> &str {
        "random_two_sided"
    }
    fn budget(&self) -> Option<Duration> {
        Some(Duration::from_secs(60))
    }
    fn minimum(&self) -> usize {
        200
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let reg = EvaluatorRegistry::builtin();
        let (mut equal, mut flagged) = (0, 0);
        for s in random_compare_scenarios(cfg) {
            let s = match s {
                Ok(s) => s,
                Err(e) => {
                    t.check(false, || format!("generated scenario invalid: {e}"));
                    continue;
                }
            };
            let Some(r) = t.absorb(run_compare(&s, &reg), &s.file.name) else {
                continue;
            };
            match r.verdict {
                Some(Verdict::Equal) => equal += 1,
                Some(Verdict::Flagged) if r.flag_reason.is_some() => flagged += 1,
                _ => {}
            }
            let ok = matches!(r.verdict, Some(Verdict::Equal))
                || (r.verdict == Some(Verdict::Flagged) && r.flag_reason.is_some());
            t.check(ok, || {
                format!(
                    "{}: {:?} {}",
                    r.name,
                    r.verdict,
                    r.flag_reason.clone().unwrap_or_default()
                )
            });
        }
        t.notes.push(format!("{equal} EQUAL, {flagged} FLAGGED (prefactor)"));
    }
}

struct LatticeIdentity;

impl Suite for LatticeIdentity {
    fn criterion(&self) -> u8 {
        5
    }
    fn name(&self) -> &str {
        "lattice_index_identity"
    }
    fn minimum(&self) -> usize {
        500
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let mut rng = cfg.rng(5);
        for i in 0..cfg.count(500) {
            let (frame, acts) = random_lattice(&mut rng);
            let n = acts[0].rows();
            let frob = &acts[frame.frobenius()];
            let inertia: Vec<IntMatrix> = frame.inertia().iter().map(|&g| acts[g].clone()).collect();
            let sides = (|| -> Result<(i128, i128)> {
                let inv = invariant_sublattice(&inertia, n)?;
                let a = if inv.rank() == 0 {
                    1
                } else {
                    coinvariants_order(&inv.restrict(frob)?)?.expect_finite("(X^I)_Frob")?
                };
                let b = fg_fixed_order(&coinvariants_with_frobenius(&inertia, frob)?)?;
                let c = group_coinvariants(&acts, n)?.order().expect_finite("X_Γ")?;
                Ok((a * b, c))
            })();
            if let Some((lhs, rhs)) = t.absorb(sides, "lattice orders") {
                t.check(lhs == rhs, || format!("instance {i}: {lhs} != {rhs}"));
            }
        }
    }
}

/// |Z³/(F-1)Z³| as d³ over the size of the column span of F-1 in (Z/d)³.
pub fn brute_force_cokernel(m: &IntMatrix, d: i128) -> i128 {
    let d = d.unsigned_abs() as usize;
    let idx = |v: [usize; 3]| (v[0] * d + v[1]) * d + v[2];
    let cols: Vec<[usize; 3]> = (0..3)
        .map(|j| {
            let c = m.column(j);
            [0, 1, 2].map(|i| c[i].rem_euclid(d as i128) as usize)
        })
        .collect();
    let mut seen = vec![false; d * d * d];
    let mut stack = vec![[0usize; 3]];
    seen[0] = true;
    let mut size = 1usize;
    while let Some(v) = stack.pop() {
        for c in &cols {
            let w = [0, 1, 2].map(|i| (v[i] + c[i]) % d);
            if !seen[idx(w)] {
                seen[idx(w)] = true;
                size += 1;
                stack.push(w);
            }
        }
    }
    ((d * d * d) / size) as i128
}

struct CoinvariantOracle;

impl Suite for CoinvariantOracle {
    fn criterion(&self) -> u8 {
        6
    }
    fn name(&self) -> &str {
        "coinvariants_oracle"
    }
    fn minimum(&self) -> usize {
        500
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let mut rng = cfg.rng(6);
        for i in 0..cfg.count(500) {
            let f = random_frobenius_3x3(&mut rng);
            let m = f.minus_identity();
            let d = m.det().unwrap_or(0);
            let Some(fast) = t.absorb(
                coinvariants_order(&f).and_then(|o| o.expect_finite("coinvariants")),
                "snf",
            ) else {
                continue;
            };
            let slow = brute_force_cokernel(&m, d);
            t.check(fast == slow, || {
                format!("instance {i} {:?}: snf {fast}, enumeration {slow}", f.to_rows())
            });
        }
    }
}

struct ConductorConsistency;

impl Suite for ConductorConsistency {
    fn criterion(&self) -> u8 {
        7
    }
    fn name(&self) -> &str {
        "conductor_consistency"
    }
    fn minimum(&self) -> usize {
        36
    }
    fn run_tally(&self, _cfg: &SuiteConfig, t: &mut Tally) {
        for e in 1..=6 {
            for f in 1..=6 {
                let ext = tame_extension(e, f);
                for k in 0..=4 * e {
                    let depth = rat(k, e);
                    let Some(c) = t.absorb(CharDescriptor::ramified(depth), "descriptor") else {
                        continue;
                    };
                    let r = conductor_tame_induction(&ext, &c)
                        .and_then(|a| Ok((a, conductor_tame_via_discriminant(&ext, &c)?)));
                    if let Some((a, b)) = t.absorb(r, "conductor") {
                        t.check(a == b, || {
                            format!(
                                "e={e} f={f} depth {}: {} vs {}",
                                format_rational(&depth),
                                format_rational(&a),
                                format_rational(&b)
                            )
                        });
                    }
                }
            }
        }
    }
}

struct ChiBaseChange;

impl Suite for ChiBaseChange {
    fn criterion(&self) -> u8 {
        8
    }
    fn name(&self) -> &str {
        "chi_base_change"
    }
    fn budget(&self) -> Option<Duration> {
        Some(Duration::from_secs(30))
    }
    fn minimum(&self) -> usize {
        100
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let mut bundled = 0;
        for m in bundled_models() {
            let choices = SectionChoices::canonical(&m.datum, m.frame.group());
            for h in &m.subgroups {
                let r = verify_base_change(&m.chi, &m.datum, &m.frame, h, &choices);
                if let Some(r) = t.absorb(r, &m.name) {
                    bundled += r.checked;
                    t.check(r.holds, || format!("{} on H = {h:?}: {:?}", m.name, r.witness));
                }
            }
        }
        let mut rng = cfg.rng(8);
        let mut elements = 0;
        for i in 0..cfg.count(100) {
            let inst = random_chi_instance(&mut rng);
            let m = &inst.model;
            let r = verify_base_change(&m.chi, &m.datum, &m.frame, &inst.h, &inst.choices);
            if let Some(r) = t.absorb(r, &m.name) {
                elements += r.checked;
                t.check(r.holds, || {
                    format!("random {i} ({}) on H = {:?}: {:?}", m.name, inst.h, r.witness)
                });
            }
        }
        t.notes.push(format!(
            "{bundled} bundled and {elements} random group elements compared"
        ));
    }
}

struct IndexRatio;

impl Suite for IndexRatio {
    fn criterion(&self) -> u8 {
        9
    }
    fn name(&self) -> &str {
        "index_ratio"
    }
    fn minimum(&self) -> usize {
        1000
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let mut rng = cfg.rng(9);
        for i in 0..cfg.count(1000) {
            let inst = random_index_ratio_instance(&mut rng);
            t.check(inst.holds(), || format!("instance {i}: {inst:?}"));
        }
    }
}

struct OrbitwiseConductor;

impl Suite for OrbitwiseConductor {
    fn criterion(&self) -> u8 {
        10
    }
    fn name(&self) -> &str {
        "orbitwise_conductor"
    }
    fn minimum(&self) -> usize {
        204
    }
    fn run_tally(&self, cfg: &SuiteConfig, t: &mut Tally) {
        let reg = EvaluatorRegistry::builtin();
        let mut scenarios: Vec<CliResult<Scenario>> = [3i128, 5, 7, 9].into_iter().map(sl2_unramified).collect();
        scenarios.extend(random_compare_scenarios(cfg));
        for s in scenarios {
            let s = match s {
                Ok(s) => s,
                Err(e) => {
                    t.check(false, || e.to_string());
                    continue;
                }
            };
            let Some(r) = t.absorb(run_compare(&s, &reg), &s.file.name) else {
                continue;
            };
            let b = r.bridges.iter().find(|b| b.name == "root_gamma_orbitwise");
            t.check(b.is_some_and(|b| b.holds), || format!("{}: {b:?}", r.name));
        }
    }
}

/// Suites keyed by name.
pub struct SuiteRegistry {
    inner: HashMap<String, Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { inner: HashMap::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        let all: Vec<Box<dyn Suite>> = vec![
            Box::new(MasterLength),
            Box::new(PeriodicSum),
            Box::new(TwoSided),
            Box::new(RandomTwoSided),
            Box::new(LatticeIdentity),
            Box::new(CoinvariantOracle),
            Box::new(ConductorConsistency),
            Box::new(ChiBaseChange),
            Box::new(IndexRatio),
            Box::new(OrbitwiseConductor),
        ];
        for s in all {
            r.register(s);
        }
        r
    }

    pub fn register(&mut self, s: Box<dyn Suite>) {
        self.inner.insert(s.name().to_string(), s);
    }

    pub fn get(&self, name: &str) -> CliResult<&dyn Suite> {
        self.inner
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| CliError::Unregistered {
                kind: "suite",
                name: name.into(),
            })
    }

    /// Ordered by criterion number.
    pub fn suites(&self) -> Vec<&dyn Suite> {
        let mut v: Vec<&dyn Suite> = self.inner.values().map(|s| s.as_ref()).collect();
        v.sort_by_key(|s| s.criterion());
        v
    }

    pub fn by_criterion(&self, c: u8) -> Option<&dyn Suite> {
        self.suites().into_iter().find(|s| s.criterion() == c)
    }

    pub fn run_all(&self, cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
        self.suites().iter().map(|s| s.run(cfg)).collect()
    }
}

impl crate::report::Render for SuiteOutcome {
    fn render_text(&self, out: &mut String) {
        out.push_str(&self.line());
        out.push('\n');
        for f in self.failures.iter().take(5) {
            out.push_str(&format!("    {f}\n"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sum_matches_hand_value() {
        let h = DiscreteFn::lattice_indicator(int(0), int(1));
        assert_eq!(grid_primed_sum(&h, int(2)), int(2));
        assert_eq!(grid_primed_sum(&h, rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn brute_force_cokernel_of_diagonal() {
        let m = IntMatrix::square(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(brute_force_cokernel(&m, 6), 6);
        let m = IntMatrix::square(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, -1]]).unwrap();
        assert_eq!(brute_force_cokernel(&m, -4), 4);
    }

    #[test]
    fn registry_lists_ten_criteria() {
        let r = SuiteRegistry::builtin();
        let c: Vec<u8> = r.suites().iter().map(|s| s.criterion()).collect();
        assert_eq!(c, (1..=10).collect::<Vec<_>>());
        assert!(r.get("periodic_sum").is_ok());
        assert!(r.get("nope").is_err());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = SuiteConfig {
            seed: 7,
            count: Some(5),
        };
        let r = SuiteRegistry::builtin();
        for name in [
            "master_length_identity",
            "periodic_sum",
            "lattice_index_identity",
            "coinvariants_oracle",
            "index_ratio",
        ] {
            let o = r.get(name).unwrap().run(&cfg);
            assert!(o.passed, "{}", o.line());
        }
    }
}
