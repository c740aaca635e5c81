use std::fmt::Write as _;

use cmgeom::{CheckReport, Verdict};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub verdict: String,
    pub residual_symbolic: String,
    /// `null` when no sample point could evaluate the residual.
    pub residual_sampled_max: Option<f64>,
    pub notes: Vec<String>,
}

impl CheckEntry {
    pub fn from_report(r: &CheckReport, tol: f64) -> Self {
        let mut notes = r.notes.clone();
        if r.verdict == Verdict::Fail {
            if let Some(m) = r.sampled_max.filter(|m| *m <= tol && !r.residuals.is_empty()) {
                notes.push(format!("sampled residual {m:e} is below tolerance; the exact verdict stands"));
            }
        }
        CheckEntry {
            id: r.id.clone(),
            verdict: r.verdict.to_string(),
            residual_symbolic: r.residual_symbolic(),
            residual_sampled_max: r.sampled_max,
            notes,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Solutions {
    #[serde(rename = "A")]
    pub a: Option<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Option<Vec<String>>,
    pub k: Option<String>,
    pub mu: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub version: String,
    pub spec_hash: String,
    pub checks: Vec<CheckEntry>,
    pub solutions: Solutions,
    pub classification: Option<String>,
}

impl ReportDocument {
    pub fn check(&self, id: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == "fail")
    }

    /// 0 without failing checks, 2 with.
    pub fn exit_code(&self) -> i32 {
        if self.has_failures() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "cmverify {}  spec {}", self.version, &self.spec_hash[..12]).unwrap();
        let width = self.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let pad = width - c.id.chars().count();
            write!(out, "{}{}  {:<11}  {}", c.id, " ".repeat(pad), c.verdict, c.residual_symbolic).unwrap();
            if let Some(m) = c.residual_sampled_max.filter(|m| *m > 0.0) {
                write!(out, "  [max {m:.3e}]").unwrap();
            }
            out.push('\n');
            for n in &c.notes {
                writeln!(out, "{}    {n}", " ".repeat(width)).unwrap();
            }
        }
        let s = &self.solutions;
        if let Some(a) = &s.a {
            writeln!(out, "A = ({})", a.join(", ")).unwrap();
        }
        if let Some(b) = &s.b {
            writeln!(out, "B = ({})", b.join(", ")).unwrap();
        }
        if let Some(k) = &s.k {
            writeln!(out, "k = {k}").unwrap();
        }
        if let Some(mu) = &s.mu {
            writeln!(out, "mu = {mu}").unwrap();
        }
        if let Some(c) = &self.classification {
            writeln!(out, "classification: {c}").unwrap();
        }
        let count = |v: &str| self.checks.iter().filter(|c| c.verdict == v).count();
        writeln!(
            out,
            "{} checks: {} pass, {} fail, {} needs-input, {} degenerate",
            self.checks.len(),
            count("pass"),
            count("fail"),
            count("needs-input"),
            count("degenerate")
        )
        .unwrap();
        out
    }
}
