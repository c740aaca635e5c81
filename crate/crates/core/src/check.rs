//! Named check outcomes and random sample points.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcore::{evaluate_ratfn, Exclusion, Point, RatFn, Symbol};

use crate::frames::FrameSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NeedsInput,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NeedsInput => "needs-input",
            Verdict::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub label: String,
    pub value: RatFn,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub id: String,
    pub verdict: Verdict,
    /// Nonzero residuals only.
    pub residuals: Vec<Residual>,
    /// Number of scalar equations examined.
    pub checked: usize,
    pub sampled_max: Option<f64>,
    pub notes: Vec<String>,
    /// Replaces the residual listing in reports when set.
    pub summary: Option<String>,
}

impl CheckReport {
    pub fn new(id: impl Into<String>, verdict: Verdict) -> Self {
        CheckReport {
            id: id.into(),
            verdict,
            residuals: Vec::new(),
            checked: 0,
            sampled_max: None,
            notes: Vec::new(),
            summary: None,
        }
    }

    /// Exact verdict from residuals: pass iff every one is identically zero.
    pub fn from_residuals<I>(id: impl Into<String>, residuals: I, sampler: &Sampler) -> Self
    where
        I: IntoIterator<Item = (String, RatFn)>,
    {
        let mut report = CheckReport::new(id, Verdict::Pass);
        for (label, value) in residuals {
            report.checked += 1;
            if !value.is_zero() {
                report.residuals.push(Residual { label, value });
            }
        }
        if !report.residuals.is_empty() {
            report.verdict = Verdict::Fail;
        }
        let values: Vec<RatFn> = report.residuals.iter().map(|r| r.value.clone()).collect();
        report.sampled_max = sampler.max_abs(&values);
        report
    }

    pub fn needs_input(id: impl Into<String>, what: &str) -> Self {
        CheckReport::new(id, Verdict::NeedsInput).with_note(format!("needs {what}"))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// First nonzero residual as `label: expr`, or `0`.
    pub fn residual_symbolic(&self) -> String {
        if let Some(s) = &self.summary {
            return s.clone();
        }
        match self.residuals.first() {
            None => "0".into(),
            Some(r) if self.residuals.len() == 1 => format!("{}: {}", r.label, r.value),
            Some(r) => format!(
                "{}: {} (+{} more)",
                r.label,
                r.value,
                self.residuals.len() - 1
            ),
        }
    }
}

/// Deterministic sample points for numeric residual magnitudes.
#[derive(Clone, Debug, Default)]
pub struct Sampler {
    points: Vec<Point>,
}

impl Sampler {
    pub fn none() -> Self {
        Sampler::default()
    }

    /// Coordinates are drawn from `[-3,-1] ∪ [1,3]`, parameters from `[1,3]`.
    /// Points violating an exclusion are redrawn.
    pub fn new(
        coords: &[Symbol],
        params: &[Symbol],
        exclusions: &[Exclusion],
        count: usize,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(count);
        let mut attempts = 0;
        while points.len() < count && attempts < 100 * count.max(1) {
            attempts += 1;
            let mut p = Point::new();
            for c in coords {
                let mag: f64 = rng.gen_range(1.0..=3.0);
                let v = if rng.gen_bool(0.5) { mag } else { -mag };
                p.set_f64(c, v).expect("finite");
            }
            for s in params {
                p.set_f64(s, rng.gen_range(1.0..=3.0)).expect("finite");
            }
            if p.satisfies(exclusions) {
                points.push(p);
            }
        }
        Sampler { points }
    }

    pub fn for_spec(spec: &FrameSpec, count: usize, seed: u64) -> Self {
        Sampler::new(&spec.coords, &spec.params, &spec.exclusions, count, seed)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Largest `|value|` over all points where it can be evaluated. `None` if
    /// nothing could be evaluated; `Some(0.0)` for an empty list.
    pub fn max_abs(&self, values: &[RatFn]) -> Option<f64> {
        if values.is_empty() {
            return Some(0.0);
        }
        let mut best: Option<f64> = None;
        for p in &self.points {
            for v in values {
                if let Ok(x) = evaluate_ratfn(v, p) {
                    best = Some(best.map_or(x.abs(), |b: f64| b.max(x.abs())));
                }
            }
        }
        best
    }
}
