use crate::compare::ComparisonReport;
use crate::error::CliError;
use serde::Serialize;
use std::fmt::Write;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(CliError::UnknownFormat(other.into())),
        }
    }
}

/// Anything emit_report can print.
pub trait Render: Serialize {
    fn render_text(&self, out: &mut String);
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    reports: &'a [T],
}

/// Deterministic output: BTreeMaps everywhere, no timestamps unless asked for.
pub fn emit_report<T: Render>(reports: &[T], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Document { reports }).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            if reports.is_empty() {
                return "no reports\n".into();
            }
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                r.render_text(&mut out);
            }
            out
        }
    }
}

impl Render for ComparisonReport {
    fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "scenario {}  (q = {})", self.name, self.q);
        let _ = writeln!(
            out,
            "  torus: rank M = {}, |S(k)_0:0+| = {}, |M_Frob| = {}, |X_*,Γ| = {}",
            self.torus.rank_m, self.torus.det_q, self.torus.m_frob, self.torus.cochar_gamma_coinv
        );
        for o in &self.orbits {
            let _ = writeln!(
                out,
                "  orbit {:>2}: size {:>2}  e {}  f {}  {}{}  depth {}",
                o.id,
                o.size,
                o.e,
                o.f,
                if o.symmetric { "symmetric" } else { "asymmetric" },
                if o.ramified { " ramified" } else { "" },
                o.depth
            );
        }
        let _ = writeln!(
            out,
            "  breaks [{}], total depth {}",
            self.filtration.breaks.join(", "),
            self.filtration.total
        );
        let width = self.values.keys().map(String::len).max().unwrap_or(0);
        for (name, e) in &self.values {
            let _ = writeln!(
                out,
                "  {name:<width$}  {:<24} = {} · {}",
                e.shown,
                fdc_core::rational::show(&e.degree.prefactor),
                e.degree.monomial
            );
        }
        for b in &self.bridges {
            let _ = writeln!(
                out,
                "  check {}: {} = {}  {}",
                b.name,
                b.lhs,
                b.rhs,
                if b.holds { "ok" } else { "FAILED" }
            );
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "  note: {d}");
        }
        if let Some(us) = self.elapsed_us {
            let _ = writeln!(out, "  elapsed {us} µs");
        }
        match self.verdict {
            Some(v) => {
                let _ = write!(out, "verdict: {v}");
                if let Some(r) = &self.flag_reason {
                    let _ = write!(out, " ({r})");
                }
                out.push('\n');
            }
            None => out.push_str("verdict: n/a (one side only)\n"),
        }
    }
}
