use crate::report::Render;
use crate::scenario::Scenario;
use fdc_core::chi_data::{
    vanishes_where_chi_trivial, verify_base_change, BaseChangeReport, ChiDiagnostics, SectionChoices,
};
use fdc_core::{Error, Result};
use serde::Serialize;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupCheck {
    pub subgroup: Vec<usize>,
    pub result: BaseChangeReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiCheckReport {
    pub name: String,
    pub diagnostics: ChiDiagnostics,
    pub is_chi_data: bool,
    pub minimally_ramified: bool,
    pub subgroups: Vec<SubgroupCheck>,
    pub vanishes_where_trivial: bool,
    pub all_hold: bool,
}

/// r_χ|_H against r_{χ_H} for every listed subgroup, with compatible choices.
pub fn run_chi_check(s: &Scenario) -> Result<ChiCheckReport> {
    let chi = s
        .chi
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("scenario {} has no chi data", s.file.name)))?;
    let diagnostics = s.chi_diagnostics.clone().unwrap_or_default();
    let choices = SectionChoices::canonical(&s.datum, s.frame.group());
    let mut subgroups = Vec::new();
    for h in &s.chi_subgroups {
        let result = verify_base_change(chi, &s.datum, &s.frame, h, &choices)?;
        subgroups.push(SubgroupCheck {
            subgroup: h.clone(),
            result,
        });
    }
    let vanishes = vanishes_where_chi_trivial(chi, &s.datum, &s.frame, &choices)?;
    let all_hold = vanishes && subgroups.iter().all(|c| c.result.holds);
    Ok(ChiCheckReport {
        name: s.file.name.clone(),
        is_chi_data: diagnostics.is_chi_data(),
        minimally_ramified: diagnostics.is_minimally_ramified(),
        diagnostics,
        subgroups,
        vanishes_where_trivial: vanishes,
        all_hold,
    })
}

impl Render for ChiCheckReport {
    fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "chi-data {}", self.name);
        let _ = writeln!(
            out,
            "  conditions: {}  minimally ramified: {}",
            if self.is_chi_data { "ok" } else { "violated" },
            if self.minimally_ramified { "yes" } else { "no" }
        );
        for m in self.diagnostics.all() {
            let _ = writeln!(out, "  note: {m}");
        }
        for c in &self.subgroups {
            let _ = write!(out, "  H = {:?}: {} element(s) checked, ", c.subgroup, c.result.checked);
            match &c.result.witness {
                None => out.push_str("r_chi restricts correctly\n"),
                Some(w) => {
                    let show = |v: &[fdc_core::Rational]| {
                        v.iter().map(fdc_core::rational::show).collect::<Vec<_>>().join(", ")
                    };
                    let _ = writeln!(
                        out,
                        "MISMATCH at w = {}: [{}] vs [{}]",
                        w.w,
                        show(&w.over_k),
                        show(&w.over_l)
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            "  vanishes where chi restricts trivially: {}",
            self.vanishes_where_trivial
        );
        let _ = writeln!(out, "result: {}", if self.all_hold { "PASS" } else { "FAIL" });
    }
}
