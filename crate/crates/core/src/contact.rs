//! Almost contact metric structures, the operator h = ½ £_ξ φ and the axiom
//! suite.

use std::fmt;

use symcore::linalg;
use symcore::RatFn;

use crate::check::{CheckReport, Sampler, Verdict};
use crate::frames::Frame;
use crate::tensor::{self, OneForm, Tensor02, Tensor11, VectorField};
use crate::Error;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ContactDecl {
    pub xi: Option<VectorField>,
    pub phi: Option<Tensor11>,
    pub eta: Option<OneForm>,
    pub h: Option<Tensor11>,
}

/// Normalization of the exterior derivative, `dη(X,Y) = f·(Xη(Y) - Yη(X) - η([X,Y]))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DEtaFactor {
    #[default]
    Half,
    One,
}

impl DEtaFactor {
    pub fn value(self) -> RatFn {
        match self {
            DEtaFactor::Half => RatFn::from_ratio(1, 2),
            DEtaFactor::One => RatFn::one(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HSource {
    Declared,
    Computed,
}

impl fmt::Display for HSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HSource::Declared => "declared",
            HSource::Computed => "computed",
        })
    }
}

/// One choice of h for h-dependent checks.
#[derive(Clone, Copy, Debug)]
pub struct HVariant<'a> {
    pub source: HSource,
    /// Appended to check ids, e.g. `[h:declared]`; empty when only one h is in play.
    pub suffix: &'a str,
    pub h: &'a Tensor11,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContactStructure {
    pub phi: Tensor11,
    pub xi: VectorField,
    pub eta: OneForm,
    /// `dim = 2n + 1`.
    pub n: usize,
    pub h_declared: Option<Tensor11>,
    pub h_computed: Tensor11,
}

impl ContactStructure {
    /// The h used for solutions: declared when present.
    pub fn h(&self) -> &Tensor11 {
        self.h_declared.as_ref().unwrap_or(&self.h_computed)
    }

    pub fn h_discrepancy(&self) -> Option<Tensor11> {
        self.h_declared.as_ref().map(|d| {
            d.iter()
                .zip(&self.h_computed)
                .map(|(a, b)| tensor::sub(a, b))
                .collect()
        })
    }

    pub fn h_variants(&self) -> Vec<HVariant<'_>> {
        match &self.h_declared {
            Some(d) if *d != self.h_computed => vec![
                HVariant {
                    source: HSource::Declared,
                    suffix: "[h:declared]",
                    h: d,
                },
                HVariant {
                    source: HSource::Computed,
                    suffix: "[h:computed]",
                    h: &self.h_computed,
                },
            ],
            Some(d) => vec![HVariant {
                source: HSource::Declared,
                suffix: "",
                h: d,
            }],
            None => vec![HVariant {
                source: HSource::Computed,
                suffix: "",
                h: &self.h_computed,
            }],
        }
    }

    pub fn phi_apply(&self, v: &[RatFn]) -> VectorField {
        tensor::apply11(&self.phi, v)
    }

    pub fn eta_apply(&self, v: &[RatFn]) -> RatFn {
        tensor::contract(&self.eta, v)
    }
}

pub fn build_structure(frame: &Frame, decl: &ContactDecl) -> Result<ContactStructure, Error> {
    let dim = frame.dim();
    if dim.is_multiple_of(2) {
        return Err(Error::Shape(format!("dimension {dim} is not odd")));
    }
    let xi = decl.xi.clone().ok_or_else(|| Error::Shape("xi is not declared".into()))?;
    let phi = decl.phi.clone().ok_or_else(|| Error::Shape("phi is not declared".into()))?;
    if xi.len() != dim {
        return Err(Error::Shape(format!("xi has {} components, expected {dim}", xi.len())));
    }
    let square = |t: &Tensor11| t.len() == dim && t.iter().all(|r| r.len() == dim);
    if !square(&phi) {
        return Err(Error::Shape(format!("phi is not {dim}x{dim}")));
    }
    if let Some(h) = &decl.h {
        if !square(h) {
            return Err(Error::Shape(format!("h is not {dim}x{dim}")));
        }
    }
    let eta = frame.lower(&xi);
    if let Some(declared) = &decl.eta {
        if declared.len() != dim {
            return Err(Error::Shape(format!("eta has {} components, expected {dim}", declared.len())));
        }
        if *declared != eta {
            let shown: Vec<String> = eta.iter().map(ToString::to_string).collect();
            return Err(Error::InconsistentEta(format!(
                "declared eta differs from g(., xi) = ({})",
                shown.join(", ")
            )));
        }
    }
    let h_computed = compute_h(frame, &phi, &xi);
    Ok(ContactStructure {
        phi,
        xi,
        eta,
        n: (dim - 1) / 2,
        h_declared: decl.h.clone(),
        h_computed,
    })
}

/// `h E_i = ½([ξ, φE_i] - φ[ξ, E_i])`.
pub fn compute_h(frame: &Frame, phi: &Tensor11, xi: &[RatFn]) -> Tensor11 {
    let half = RatFn::from_ratio(1, 2);
    (0..frame.dim())
        .map(|i| {
            let a = frame.lie_bracket(xi, &phi[i]);
            let b = tensor::apply11(phi, &frame.lie_bracket(xi, &frame.basis(i)));
            tensor::scale(&half, &tensor::sub(&a, &b))
        })
        .collect()
}

pub fn d_eta(frame: &Frame, eta: &[RatFn], factor: DEtaFactor) -> Tensor02 {
    let f = factor.value();
    let dim = frame.dim();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let raw = &(&frame.apply(i, &eta[j]) - &frame.apply(j, &eta[i]))
                        - &tensor::contract(eta, frame.bracket(i, j));
                    &f * &raw
                })
                .collect()
        })
        .collect()
}

/// `φ²V = -V + η(V)ξ`.
pub fn phi2_project(cs: &ContactStructure, v: &[RatFn]) -> VectorField {
    tensor::sub(&tensor::scale(&cs.eta_apply(v), &cs.xi), v)
}

pub(crate) fn e(i: usize) -> String {
    format!("E{}", i + 1)
}

/// Labelled components of a vector residual.
pub(crate) fn components(prefix: &str, v: &[RatFn]) -> Vec<(String, RatFn)> {
    v.iter()
        .enumerate()
        .map(|(k, x)| (format!("{prefix}^{}", e(k)), x.clone()))
        .collect()
}

pub fn axiom_suite(
    frame: &Frame,
    cs: &ContactStructure,
    factor: DEtaFactor,
    sampler: &Sampler,
) -> Vec<CheckReport> {
    let dim = frame.dim();
    let b = |i: usize| frame.basis(i);
    let phi_e: Vec<VectorField> = (0..dim).map(|i| cs.phi_apply(&b(i))).collect();
    let mut out = Vec::new();

    let deta = d_eta(frame, &cs.eta, factor);
    let mut res = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let v = &deta[i][j] - &frame.pairing(&b(i), &phi_e[j]);
            res.push((format!("({},{})", e(i), e(j)), v));
        }
    }
    out.push(
        CheckReport::from_residuals("I2.1", res, sampler)
            .with_note(format!("dη(X,Y) = g(X,φY) with factor {}", factor.value())),
    );

    let mut res = components("φξ", &cs.phi_apply(&cs.xi));
    res.push(("η(ξ) - 1".into(), &cs.eta_apply(&cs.xi) - &RatFn::one()));
    for i in 0..dim {
        res.push((format!("η(φ{})", e(i)), cs.eta_apply(&phi_e[i])));
        let lhs = cs.phi_apply(&phi_e[i]);
        let rhs = phi2_project(cs, &b(i));
        res.extend(components(&format!("φ²{}", e(i)), &tensor::sub(&lhs, &rhs)));
    }
    out.push(CheckReport::from_residuals("I2.2", res, sampler));

    let mut res = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let v = &(&frame.pairing(&phi_e[i], &phi_e[j]) - &frame.metric()[i][j])
                + &(&cs.eta[i] * &cs.eta[j]);
            res.push((format!("({},{})", e(i), e(j)), v));
        }
    }
    out.push(CheckReport::from_residuals("I2.3", res, sampler));

    out.push(contact_condition(cs, &deta, sampler));

    if let Some(disc) = cs.h_discrepancy() {
        let res = (0..dim).flat_map(|i| components(&format!("Δh{}", e(i)), &disc[i]));
        let mut report = CheckReport::from_residuals("H-DECL", res, sampler);
        if !report.passed() {
            report = report.with_note("declared h differs from ½ £_ξ φ");
        }
        out.push(report);
    }

    for variant in cs.h_variants() {
        let h = variant.h;
        let id = |base: &str| format!("{base}{}", variant.suffix);

        let mut res = Vec::new();
        for i in 0..dim {
            let lhs = frame.nabla_basis(i, &cs.xi);
            let rhs = tensor::neg(&tensor::add(&phi_e[i], &cs.phi_apply(&h[i])));
            res.extend(components(&format!("∇_{}ξ", e(i)), &tensor::sub(&lhs, &rhs)));
        }
        out.push(CheckReport::from_residuals(id("I2.4"), res, sampler));

        let mut res = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = &frame.pairing(&h[i], &b(j)) - &frame.pairing(&b(i), &h[j]);
                res.push((format!("({},{})", e(i), e(j)), v));
            }
        }
        out.push(CheckReport::from_residuals(id("H1"), res, sampler).with_note("h symmetric"));

        let anti = tensor::compose(h, &cs.phi);
        let anti2 = tensor::compose(&cs.phi, h);
        let res = (0..dim).flat_map(|i| {
            components(&format!("(hφ+φh){}", e(i)), &tensor::add(&anti[i], &anti2[i]))
        });
        out.push(CheckReport::from_residuals(id("H2"), res, sampler).with_note("hφ = -φh"));

        let res = vec![
            ("tr h".to_string(), tensor::trace11(h)),
            ("tr φh".to_string(), tensor::trace11(&anti2)),
        ];
        out.push(CheckReport::from_residuals(id("H3"), res, sampler));

        let res = components("hξ", &tensor::apply11(h, &cs.xi));
        out.push(CheckReport::from_residuals(id("H4"), res, sampler));
    }
    out
}

/// `η ∧ (dη)^n ≠ 0`, tested through the bordered skew matrix
/// `[[0, η], [-η^T, dη]]` whose determinant is the square of the top form's
/// coefficient.
fn contact_condition(cs: &ContactStructure, deta: &Tensor02, sampler: &Sampler) -> CheckReport {
    let dim = cs.eta.len();
    let mut m = vec![vec![RatFn::zero(); dim + 1]; dim + 1];
    for i in 0..dim {
        m[0][i + 1] = cs.eta[i].clone();
        m[i + 1][0] = -&cs.eta[i];
        for j in 0..dim {
            m[i + 1][j + 1] = deta[i][j].clone();
        }
    }
    let det = linalg::determinant(&m);
    let mut report = CheckReport::new("CONTACT", Verdict::Pass);
    report.checked = 1;
    if det.is_zero() {
        report.verdict = Verdict::Fail;
        report.summary = Some("η∧(dη)^n ≡ 0".into());
        report.sampled_max = Some(0.0);
    } else {
        report.summary = Some(format!("Pf² = {det}"));
        report.sampled_max = sampler.max_abs(std::slice::from_ref(&det));
        let vanishes = sampler
            .points()
            .iter()
            .any(|p| symcore::evaluate_ratfn(&det, p) == Ok(0.0));
        if vanishes {
            report.verdict = Verdict::Fail;
            report.notes.push("η∧(dη)^n vanishes at a sample point".into());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{FrameMode, FrameSpec};
    use symcore::linalg::identity;
    use symcore::Symbol;

    fn r(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    fn frame(c: Vec<Vec<Vec<RatFn>>>, act: Vec<Vec<RatFn>>) -> Frame {
        Frame::new(FrameSpec {
            coords: ["x", "y", "z"].iter().map(|s| Symbol::new(s)).collect(),
            params: vec![],
            exclusions: vec![],
            mode: FrameMode::Bracket { c, act },
            metric: identity(3),
        })
        .unwrap()
    }

    fn sphere() -> Frame {
        let mut c = vec![vec![vec![r(0); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = r(2);
            c[j][i][k] = r(-2);
        }
        frame(c, vec![vec![r(0); 3]; 3])
    }

    fn example() -> Frame {
        let mut c = vec![vec![vec![r(0); 3]; 3]; 3];
        c[0][1][1] = RatFn::one() / RatFn::var("y");
        c[1][0][1] = -&c[0][1][1];
        let mut act = vec![vec![r(0); 3]; 3];
        act[0][1] = r(1);
        frame(c, act)
    }

    fn sphere_decl() -> ContactDecl {
        ContactDecl {
            xi: Some(vec![r(0), r(0), r(1)]),
            phi: Some(vec![
                vec![r(0), r(1), r(0)],
                vec![r(-1), r(0), r(0)],
                vec![r(0), r(0), r(0)],
            ]),
            eta: None,
            h: None,
        }
    }

    fn example_decl() -> ContactDecl {
        ContactDecl {
            xi: Some(vec![r(0), r(0), r(1)]),
            phi: Some(vec![
                vec![r(0), r(-1), r(0)],
                vec![r(1), r(0), r(0)],
                vec![r(0), r(0), r(0)],
            ]),
            eta: Some(vec![r(0), r(0), r(1)]),
            h: Some(vec![
                vec![r(-1), r(0), r(0)],
                vec![r(0), r(1), r(0)],
                vec![r(0), r(0), r(0)],
            ]),
        }
    }

    fn verdict(reports: &[CheckReport], id: &str) -> Verdict {
        reports.iter().find(|r| r.id == id).unwrap_or_else(|| panic!("{id}")).verdict
    }

    #[test]
    fn sphere_passes_every_axiom() {
        let f = sphere();
        let cs = build_structure(&f, &sphere_decl()).unwrap();
        assert!(cs.h_computed.iter().all(|row| tensor::is_zero(row)));
        let reports = axiom_suite(&f, &cs, DEtaFactor::Half, &Sampler::none());
        for rep in &reports {
            assert_eq!(rep.verdict, Verdict::Pass, "{} {}", rep.id, rep.residual_symbolic());
        }
        let with_one = axiom_suite(&f, &cs, DEtaFactor::One, &Sampler::none());
        assert_eq!(verdict(&with_one, "I2.1"), Verdict::Fail);
    }

    #[test]
    fn example_audit() {
        let f = example();
        let cs = build_structure(&f, &example_decl()).unwrap();
        assert!(cs.h_computed.iter().all(|row| tensor::is_zero(row)));
        let reports = axiom_suite(&f, &cs, DEtaFactor::Half, &Sampler::none());
        assert_eq!(verdict(&reports, "I2.1"), Verdict::Fail);
        assert_eq!(verdict(&reports, "I2.2"), Verdict::Pass);
        assert_eq!(verdict(&reports, "I2.3"), Verdict::Pass);
        assert_eq!(verdict(&reports, "CONTACT"), Verdict::Fail);
        assert_eq!(verdict(&reports, "H-DECL"), Verdict::Fail);
        let i24 = reports.iter().find(|r| r.id == "I2.4[h:declared]").unwrap();
        assert_eq!(i24.verdict, Verdict::Fail);
        assert!(i24.residuals.iter().any(|r| r.label.starts_with("∇_E2ξ")));
        assert_eq!(verdict(&reports, "H2[h:declared]"), Verdict::Pass);
        assert_eq!(verdict(&reports, "H3[h:declared]"), Verdict::Pass);
    }

    #[test]
    fn eta_cross_check_and_shape_errors() {
        let f = sphere();
        let mut decl = sphere_decl();
        decl.eta = Some(vec![r(1), r(0), r(0)]);
        assert!(matches!(build_structure(&f, &decl), Err(Error::InconsistentEta(_))));
        decl.eta = None;
        decl.xi = None;
        assert!(matches!(build_structure(&f, &decl), Err(Error::Shape(_))));
    }

    #[test]
    fn projection_properties() {
        let f = sphere();
        let cs = build_structure(&f, &sphere_decl()).unwrap();
        assert!(tensor::is_zero(&phi2_project(&cs, &cs.xi)));
        let v = vec![RatFn::var("x"), r(2), r(5)];
        let p = phi2_project(&cs, &v);
        assert_eq!(phi2_project(&cs, &p), tensor::neg(&p));
    }

    #[test]
    fn killing_when_h_vanishes() {
        let f = sphere();
        let cs = build_structure(&f, &sphere_decl()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let lie = &f.pairing(&f.nabla_basis(i, &cs.xi), &f.basis(j))
                    + &f.pairing(&f.basis(i), &f.nabla_basis(j, &cs.xi));
                assert!(lie.is_zero());
            }
        }
    }
}
