//! Parametric walk through the three-dimensional example: curvature of
//! symbolic fields, the φ²-projections, and the hand-built 1-forms.

use symcore::{parse_expr, RatFn, SymbolTable};

use crate::check::{CheckReport, Sampler, Verdict};
use crate::contact::{components, phi2_project, ContactStructure};
use crate::curvature::{self, CurvatureData};
use crate::frames::Frame;
use crate::tensor::{self, VectorField};
use crate::Error;

pub const PARAMS: [&str; 9] = ["a1", "b1", "c1", "a2", "b2", "c2", "a3", "b3", "c3"];

pub const PIPELINE_IDS: [&str; 9] = [
    "PIPE-5.1", "PIPE-5.2", "PIPE-5.3", "PIPE-5.4", "PIPE-5.5", "PIPE-5.6", "PIPE-5.7", "PIPE-5.8",
    "PIPE-5.9",
];

// Expected closed forms, frame components E1, E2, E3.
const R_XYZ: [&str; 3] = ["-2*b3/y^2*(a1*b2 - a2*b1)", "2*a3/y^2*(a1*b2 - a2*b1)", "0"];
const G_XYZ: [&str; 3] = [
    "(a2*a3 + b2*b3 + c2*c3)*a1 - (a1*a3 + b1*b3 + c1*c3)*a2",
    "(a2*a3 + b2*b3 + c2*c3)*b1 - (a1*a3 + b1*b3 + c1*c3)*b2",
    "(a2*a3 + b2*b3 + c2*c3)*c1 - (a1*a3 + b1*b3 + c1*c3)*c2",
];
const NABLA_R: [[&str; 3]; 3] = [
    ["4/y^3*(a1*b2 - a2*b1)*b3", "-4/y^3*(a1*b2 - a2*b1)*a3", "0"],
    ["0", "0", "0"],
    ["0", "0", "0"],
];
const U: [&str; 2] = ["2*b3/y^2*(a1*b2 - a2*b1)", "-2*a3/y^2*(a1*b2 - a2*b1)"];
const V: [&str; 2] = [
    "a2*(b1*b3 + c1*c3) - a1*(b2*b3 + c2*c3)",
    "b2*(a1*a3 + c1*c3) - b1*(a2*a3 + c2*c3)",
];
const P: [&str; 3] = ["-4*b3/y^3*(a1*b2 - a2*b1)", "0", "0"];
const Q: [&str; 3] = ["4*a3/y^3*(a1*b2 - a2*b1)", "0", "0"];

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub checks: Vec<CheckReport>,
    pub r_xyz: VectorField,
    pub g_xyz: VectorField,
    /// `(∇_{E_i} R)(X,Y)Z`.
    pub nabla_r: Vec<VectorField>,
    pub u: [RatFn; 2],
    pub v: [RatFn; 2],
    pub p: [RatFn; 3],
    pub q: [RatFn; 3],
    /// `v2·p1 - v1·q1`.
    pub a_numerator: RatFn,
    /// `u1·q1 - u2·p1`.
    pub b_numerator: RatFn,
    /// `u1·v2 - u2·v1`.
    pub denominator: RatFn,
    pub a_e1: Option<RatFn>,
    pub b_e1: Option<RatFn>,
}

impl PipelineReport {
    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn table() -> SymbolTable {
    SymbolTable::new(["x", "y", "z"], PARAMS)
}

fn expected(text: &str) -> RatFn {
    parse_expr(text, &table())
        .and_then(|e| e.to_ratfn())
        .expect("stored formula parses")
}

fn field(frame: &Frame, i: usize) -> VectorField {
    let s = |name: &str| RatFn::var(&format!("{name}{}", i + 1));
    let v = vec![s("a"), s("b"), s("c")];
    debug_assert_eq!(v.len(), frame.dim());
    v
}

fn compare(id: &str, computed: &[(String, RatFn)], want: &[&str], sampler: &Sampler) -> CheckReport {
    let res = computed
        .iter()
        .zip(want)
        .map(|((label, c), p)| (label.clone(), c - &expected(p)));
    let mut rep = CheckReport::from_residuals(id, res, sampler);
    for (label, c) in computed {
        rep.notes.push(format!("{label} = {c}"));
    }
    rep
}

/// Runs the example chain on a three-dimensional frame carrying the
/// example's contact structure. Frame vectors are `X = a1 E1 + b1 E2 + c1 E3`
/// and likewise for Y, Z.
pub fn example_pipeline(
    frame: &Frame,
    cs: &ContactStructure,
    sampler: &Sampler,
) -> Result<PipelineReport, Error> {
    if frame.dim() != 3 {
        return Err(Error::Shape("the example pipeline needs a 3-dimensional frame".into()));
    }
    let curv = CurvatureData::new(frame);
    let (x, y, z) = (field(frame, 0), field(frame, 1), field(frame, 2));
    let mut checks = Vec::new();

    let r_xyz = curv.apply(&x, &y, &z);
    checks.push(compare("PIPE-5.1", &components("R(X,Y)Z", &r_xyz), &R_XYZ, sampler));

    let g_xyz = curvature::g_tensor(frame, &x, &y, &z);
    checks.push(compare("PIPE-5.2", &components("G(X,Y)Z", &g_xyz), &G_XYZ, sampler));

    let mut nabla_r = Vec::new();
    for i in 0..3 {
        let w = frame.basis(i);
        let v = curvature::nabla_riemann(frame, &curv.riemann, &w, &x, &y, &z);
        let label = format!("(∇_E{}R)(X,Y)Z", i + 1);
        checks.push(compare(&format!("PIPE-5.{}", i + 3), &components(&label, &v), &NABLA_R[i], sampler));
        nabla_r.push(v);
    }

    let pr = phi2_project(cs, &r_xyz);
    let pg = phi2_project(cs, &g_xyz);
    let u = [pr[0].clone(), pr[1].clone()];
    let v = [pg[0].clone(), pg[1].clone()];
    let mut six = vec![
        ("u1".to_string(), u[0].clone()),
        ("u2".to_string(), u[1].clone()),
        ("v1".to_string(), v[0].clone()),
        ("v2".to_string(), v[1].clone()),
    ];
    let mut want: Vec<&str> = U.iter().chain(V.iter()).copied().collect();
    six.push(("φ²(R(X,Y)Z)^E3".into(), pr[2].clone()));
    six.push(("φ²(G(X,Y)Z)^E3".into(), pg[2].clone()));
    want.extend(["0", "0"]);
    checks.push(compare("PIPE-5.6", &six, &want, sampler));

    let projected: Vec<VectorField> = nabla_r.iter().map(|n| phi2_project(cs, n)).collect();
    let p = [0, 1, 2].map(|i| projected[i][0].clone());
    let q = [0, 1, 2].map(|i| projected[i][1].clone());
    let mut pq = Vec::new();
    let mut want = Vec::new();
    for i in 0..3 {
        pq.push((format!("p{}", i + 1), p[i].clone()));
        pq.push((format!("q{}", i + 1), q[i].clone()));
        want.push(P[i]);
        want.push(Q[i]);
    }
    for (i, pv) in projected.iter().enumerate() {
        pq.push((format!("φ²((∇_E{}R)(X,Y)Z)^E3", i + 1), pv[2].clone()));
        want.push("0");
    }
    checks.push(compare("PIPE-5.7", &pq, &want, sampler));

    let a_numerator = &(&v[1] * &p[0]) - &(&v[0] * &q[0]);
    let b_numerator = &(&u[0] * &q[0]) - &(&u[1] * &p[0]);
    let denominator = &(&u[0] * &v[1]) - &(&u[1] * &v[0]);
    let ab = &(&x[0] * &y[1]) - &(&x[1] * &y[0]);
    let (a_e1, b_e1) = if denominator.is_zero() {
        (None, None)
    } else {
        (Some(&a_numerator / &denominator), Some(&b_numerator / &denominator))
    };
    let conditions = [
        ("a1*b2 - a2*b1", &ab),
        ("v2*p1 - v1*q1", &a_numerator),
        ("u1*q1 - u2*p1", &b_numerator),
        ("u1*v2 - u2*v1", &denominator),
    ];
    let violated: Vec<&str> = conditions
        .iter()
        .filter(|(_, c)| c.is_zero())
        .map(|(name, _)| *name)
        .collect();
    let mut rep = CheckReport::new(
        "PIPE-5.8",
        if violated.is_empty() { Verdict::Pass } else { Verdict::Fail },
    );
    rep.checked = conditions.len();
    rep.sampled_max = Some(0.0);
    if !violated.is_empty() {
        rep.summary = Some(
            violated
                .iter()
                .map(|n| format!("{n} = 0"))
                .collect::<Vec<_>>()
                .join(", "),
        );
    }
    for (name, c) in &conditions {
        rep.notes.push(format!("{name} = {c}"));
    }
    if let (Some(a), Some(b)) = (&a_e1, &b_e1) {
        rep.notes.push(format!("A(E1) = {a}"));
        rep.notes.push(format!("B(E1) = {b}"));
    }
    checks.push(rep);

    let id = "PIPE-5.9";
    match (&a_e1, &b_e1) {
        (Some(a), Some(b)) => {
            let mut res = Vec::new();
            let zero = RatFn::zero();
            for i in 0..3 {
                let (ai, bi) = if i == 0 { (a, b) } else { (&zero, &zero) };
                let rhs = tensor::add(&tensor::scale(ai, &pr), &tensor::scale(bi, &pg));
                let lhs = &projected[i];
                res.extend(components(&format!("W=E{}", i + 1), &tensor::sub(lhs, &rhs)));
            }
            checks.push(CheckReport::from_residuals(id, res, sampler));
        }
        _ => checks.push(
            CheckReport::new(id, Verdict::Fail).with_note("u1*v2 - u2*v1 vanishes, A(E1) undefined"),
        ),
    }

    Ok(PipelineReport {
        checks,
        r_xyz,
        g_xyz,
        nabla_r,
        u,
        v,
        p,
        q,
        a_numerator,
        b_numerator,
        denominator,
        a_e1,
        b_e1,
    })
}
