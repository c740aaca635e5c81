use std::path::Path;

use cmgeom::contact::{axiom_suite, build_structure, HVariant};
use cmgeom::nullity::{extract_k_mu, identity_check, IDENTITY_IDS};
use cmgeom::pipeline::example_pipeline;
use cmgeom::recurrence::{solve_recurrence, theorem_check, Projector, THEOREM_IDS};
use cmgeom::{
    CheckReport, ContactStructure, CurvatureData, DEtaFactor, Frame, NullityParams, Param,
    RecurrenceKind, RecurrenceSolution, Sampler, Verdict,
};
use sha2::{Digest, Sha256};
use symcore::{parse_expr, RatFn};
use thiserror::Error;

use crate::corpus;
use crate::report::{CheckEntry, ReportDocument, Solutions};
use crate::specfile::{parse_spec, SpecError, SpecFile};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Geometry(#[from] cmgeom::Error),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Frame,
    Axioms,
    Identities,
    Theorems,
    Kmu,
    Recurrence,
    Pipeline,
    All,
}

#[derive(Clone, Debug)]
pub struct Options {
    /// `None` runs every kind the spec supports.
    pub kind: Option<RecurrenceKind>,
    pub k: Option<String>,
    pub mu: Option<String>,
    pub seed: u64,
    pub points: usize,
    pub tol: f64,
    pub deta_factor: DEtaFactor,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            kind: None,
            k: None,
            mu: None,
            seed: 42,
            points: 8,
            tol: 1e-9,
            deta_factor: DEtaFactor::Half,
        }
    }
}

/// Reads `arg` as a path, falling back to the bundled corpus by name.
pub fn load_spec(arg: &str) -> Result<String, RunError> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|source| RunError::Io {
            path: arg.to_string(),
            source,
        });
    }
    let name = arg.strip_suffix(".cmspec").unwrap_or(arg);
    let name = Path::new(name).file_name().and_then(|n| n.to_str()).unwrap_or(name);
    corpus::bundled(name).map(str::to_string).ok_or_else(|| RunError::Io {
        path: arg.to_string(),
        source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled spec"),
    })
}

pub fn spec_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

struct Ctx<'a> {
    spec: &'a SpecFile,
    frame: Frame,
    sampler: Sampler,
    curv: Option<CurvatureData>,
    cs: Option<Result<ContactStructure, cmgeom::Error>>,
    opts: &'a Options,
}

impl<'a> Ctx<'a> {
    fn curv(&mut self) -> &CurvatureData {
        if self.curv.is_none() {
            self.curv = Some(CurvatureData::new(&self.frame));
        }
        self.curv.as_ref().unwrap()
    }

    fn contact(&mut self) -> Result<&ContactStructure, RunError> {
        if self.cs.is_none() {
            self.cs = Some(match &self.spec.contact {
                Some(decl) => build_structure(&self.frame, decl),
                None => Err(cmgeom::Error::MissingInput("the spec has no contact structure".into())),
            });
        }
        self.cs.as_ref().unwrap().as_ref().map_err(|e| RunError::Geometry(e.clone()))
    }

    fn has_contact(&self) -> bool {
        self.spec.contact.is_some()
    }

    fn supplied(&self, flag: &Option<String>, declared: &Option<RatFn>, name: &str) -> Result<Option<RatFn>, RunError> {
        match flag {
            Some(text) => parse_expr(text, &self.spec.table())
                .and_then(|e| e.to_ratfn())
                .map(Some)
                .map_err(|e| RunError::Input(format!("--{name}: {e}"))),
            None => Ok(declared.clone()),
        }
    }

    /// Flag, then spec declaration, then extraction with the given h.
    fn params(&mut self, v: &HVariant<'_>) -> Result<(NullityParams, NullityParams), RunError> {
        let k = self.supplied(&self.opts.k, &self.spec.declare_k, "k")?;
        let mu = self.supplied(&self.opts.mu, &self.spec.declare_mu, "mu")?;
        let cs = self.contact()?.clone();
        self.curv();
        let extracted = extract_k_mu(&self.frame, self.curv.as_ref().unwrap(), &cs, v.h);
        let usable = |p: &Param| if extracted.consistent { p.clone() } else { Param::Indeterminate };
        let effective = NullityParams::declared(
            k.map(Param::Value).unwrap_or_else(|| usable(&extracted.k)),
            mu.map(Param::Value).unwrap_or_else(|| usable(&extracted.mu)),
        );
        Ok((effective, extracted))
    }
}

fn frame_report(frame: &Frame, sampler: &Sampler) -> CheckReport {
    let v = frame.validation();
    let mut res = Vec::new();
    for ((i, j, k), r) in &v.jacobi_residual {
        for (m, c) in r.iter().enumerate() {
            res.push((format!("Jacobi(E{},E{},E{})^E{}", i + 1, j + 1, k + 1, m + 1), c.clone()));
        }
    }
    let mut rep = CheckReport::from_residuals("FRAME", res, sampler);
    if !v.antisymmetric {
        rep.verdict = Verdict::Fail;
        rep.summary = Some("structure functions are not antisymmetric".into());
    }
    if let Some(d) = &v.frame_determinant {
        rep.notes.push(format!("frame determinant = {d}"));
    }
    rep.notes.push(format!("metric determinant = {}", v.metric_determinant));
    rep.notes.extend(v.warnings.iter().cloned());
    rep
}

fn kmu_report(suffix: &str, effective: &NullityParams, extracted: &NullityParams, sampler: &Sampler) -> CheckReport {
    let id = format!("KMU{suffix}");
    let mut rep = if !extracted.consistent {
        let res = extracted
            .residual
            .iter()
            .enumerate()
            .map(|(n, r)| (format!("eq{}", n + 1), r.clone()));
        let mut rep = CheckReport::from_residuals(&id, res, sampler);
        rep.verdict = Verdict::Fail;
        rep.summary = Some("no k, mu satisfy R(X,Y)ξ = k(...) + mu(...)".into());
        rep
    } else {
        let mut res = Vec::new();
        for (name, e, x) in [("k", &effective.k, &extracted.k), ("mu", &effective.mu, &extracted.mu)] {
            if let (Some(e), Some(x)) = (e.value(), x.value()) {
                res.push((format!("{name} - extracted {name}"), e - x));
            }
        }
        CheckReport::from_residuals(&id, res, sampler)
    };
    rep.notes.push(format!("extracted k = {}, mu = {}", extracted.k, extracted.mu));
    rep.notes.push(format!("in use k = {}, mu = {}", effective.k, effective.mu));
    rep
}

fn show(v: &[RatFn]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn run(suite: Suite, text: &str, opts: &Options) -> Result<ReportDocument, RunError> {
    let spec = parse_spec(text)?;
    let mut doc = ReportDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        spec_hash: spec_hash(text),
        checks: Vec::new(),
        solutions: Solutions::default(),
        classification: None,
    };
    let frame = match Frame::new(spec.frame_spec()) {
        Ok(f) => f,
        Err(e) if suite == Suite::Frame => {
            let mut rep = CheckReport::new("FRAME", Verdict::Fail);
            rep.summary = Some(e.to_string());
            doc.checks.push(CheckEntry::from_report(&rep, opts.tol));
            return Ok(doc);
        }
        Err(e) => return Err(e.into()),
    };
    let sampler = Sampler::for_spec(frame.spec(), opts.points, opts.seed);
    let mut ctx = Ctx {
        spec: &spec,
        frame,
        sampler,
        curv: None,
        cs: None,
        opts,
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    let all = suite == Suite::All;

    if matches!(suite, Suite::Frame | Suite::All) {
        reports.push(frame_report(&ctx.frame, &ctx.sampler));
    }
    if suite == Suite::Axioms || (all && ctx.has_contact()) {
        let cs = ctx.contact()?.clone();
        reports.extend(axiom_suite(&ctx.frame, &cs, opts.deta_factor, &ctx.sampler));
    }
    let mut primary_params = None;
    if matches!(suite, Suite::Kmu | Suite::Identities) || (all && ctx.has_contact()) {
        let cs = ctx.contact()?.clone();
        for v in cs.h_variants() {
            let (effective, extracted) = ctx.params(&v)?;
            reports.push(kmu_report(v.suffix, &effective, &extracted, &ctx.sampler));
            if suite != Suite::Kmu {
                for id in IDENTITY_IDS {
                    let curv = ctx.curv().clone();
                    reports.push(identity_check(id, v.suffix, &ctx.frame, &curv, &cs, v.h, &effective, &ctx.sampler));
                }
            }
            primary_params.get_or_insert(effective);
        }
    }

    let mut shown: Option<RecurrenceSolution> = None;
    if matches!(suite, Suite::Recurrence | Suite::Theorems | Suite::All) {
        let kinds: Vec<RecurrenceKind> = match (suite, opts.kind) {
            (Suite::Theorems, _) => vec![RecurrenceKind::Phi],
            (_, Some(k)) => vec![k],
            _ if ctx.has_contact() => vec![RecurrenceKind::Full, RecurrenceKind::Ricci, RecurrenceKind::Phi],
            _ => vec![RecurrenceKind::Full, RecurrenceKind::Ricci],
        };
        for kind in kinds {
            let cs = match kind {
                RecurrenceKind::Phi => Some(ctx.contact()?.clone()),
                _ => None,
            };
            let curv = ctx.curv().clone();
            let sol = solve_recurrence(kind, &ctx.frame, &curv, cs.as_ref(), Projector::Phi2)?;
            reports.push(sol.report(&ctx.sampler));
            shown = Some(sol);
        }
    }
    if matches!(suite, Suite::Theorems) || (all && ctx.has_contact()) {
        let cs = ctx.contact()?.clone();
        let sol = shown.clone().expect("φ-recurrence solved above");
        for v in cs.h_variants() {
            let (effective, _) = ctx.params(&v)?;
            let curv = ctx.curv().clone();
            for id in THEOREM_IDS {
                reports.push(theorem_check(id, v.suffix, &ctx.frame, &curv, &cs, v.h, &effective, &sol, &ctx.sampler));
            }
            primary_params.get_or_insert(effective);
        }
    }
    if suite == Suite::Pipeline {
        let cs = ctx.contact()?.clone();
        let p = example_pipeline(&ctx.frame, &cs, &ctx.sampler)?;
        reports.extend(p.checks);
        if let (Some(a), Some(b)) = (p.a_e1, p.b_e1) {
            let zero = RatFn::zero();
            doc.solutions.a = Some(show(&[a, zero.clone(), zero.clone()]));
            doc.solutions.b = Some(show(&[b, zero.clone(), zero]));
        }
    }

    if let Some(sol) = &shown {
        doc.solutions.a = Some(show(&sol.a));
        doc.solutions.b = Some(show(&sol.b));
        doc.classification = Some(sol.description());
    }
    if let Some(p) = primary_params {
        doc.solutions.k = Some(p.k.to_string());
        doc.solutions.mu = Some(p.mu.to_string());
    }
    doc.checks = reports.iter().map(|r| CheckEntry::from_report(r, opts.tol)).collect();
    Ok(doc)
}
