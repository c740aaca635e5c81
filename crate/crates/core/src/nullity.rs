//! Generalized (k, μ)-nullity: extraction of k and μ from the curvature and
//! the battery of identities that hold on (k, μ)-contact metric manifolds.

use std::fmt;

use symcore::linalg::{self, LinearSolution};
use symcore::{RatFn, Symbol};

use crate::check::{CheckReport, Sampler};
use crate::contact::{components, e, ContactStructure};
use crate::curvature::{self, CurvatureData};
use crate::frames::Frame;
use crate::tensor::{self, Tensor, Tensor11, VectorField};

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Value(RatFn),
    Indeterminate,
}

impl Param {
    pub fn value(&self) -> Option<&RatFn> {
        match self {
            Param::Value(v) => Some(v),
            Param::Indeterminate => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(v) => write!(f, "{v}"),
            Param::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamSource {
    Extracted,
    Declared,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NullityParams {
    pub k: Param,
    pub mu: Param,
    pub source: ParamSource,
    /// False when no (k, μ) satisfies R(X,Y)ξ = k(...) + μ(...) exactly.
    pub consistent: bool,
    /// Per-equation residual at the least-squares point when inconsistent.
    pub residual: Vec<RatFn>,
}

impl NullityParams {
    pub fn declared(k: Param, mu: Param) -> Self {
        NullityParams {
            k,
            mu,
            source: ParamSource::Declared,
            consistent: true,
            residual: Vec::new(),
        }
    }
}

/// Solves `R(E_i,E_j)ξ = k[η(E_j)E_i - η(E_i)E_j] + μ[η(E_j)hE_i - η(E_i)hE_j]`
/// for the functions k and μ over all frame pairs and components.
pub fn extract_k_mu(
    frame: &Frame,
    curv: &CurvatureData,
    cs: &ContactStructure,
    h: &Tensor11,
) -> NullityParams {
    let dim = frame.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let lhs = curv.apply(&frame.basis(i), &frame.basis(j), &cs.xi);
            let kc = tensor::sub(
                &tensor::scale(&cs.eta[j], &frame.basis(i)),
                &tensor::scale(&cs.eta[i], &frame.basis(j)),
            );
            let mc = tensor::sub(
                &tensor::scale(&cs.eta[j], &h[i]),
                &tensor::scale(&cs.eta[i], &h[j]),
            );
            for l in 0..dim {
                rows.push(vec![kc[l].clone(), mc[l].clone()]);
                rhs.push(lhs[l].clone());
            }
        }
    }
    let (k, mu, consistent, residual) = match linalg::solve(&rows, &rhs) {
        LinearSolution::Unique(x) => (Param::Value(x[0].clone()), Param::Value(x[1].clone()), true, vec![]),
        LinearSolution::Underdetermined {
            particular, kernel, ..
        } => {
            // An unknown is determined only if every kernel direction leaves it fixed.
            let fixed = |u: usize| kernel.iter().all(|v| v[u].is_zero());
            let pick = |u: usize| {
                if fixed(u) {
                    Param::Value(particular[u].clone())
                } else {
                    Param::Indeterminate
                }
            };
            (pick(0), pick(1), true, vec![])
        }
        LinearSolution::Inconsistent {
            least_squares,
            residual,
        } => (
            Param::Value(least_squares[0].clone()),
            Param::Value(least_squares[1].clone()),
            false,
            residual,
        ),
    };
    NullityParams {
        k,
        mu,
        source: ParamSource::Extracted,
        consistent,
        residual,
    }
}

pub const IDENTITY_IDS: [&str; 13] = [
    "I3.1", "I3.2", "I3.3", "I3.4", "I3.5", "I3.6", "I3.7", "I3.8", "I3.9", "I3.10", "I3.11",
    "I3.12", "I3.13",
];

pub(crate) const K_SYMBOL: &str = "$k";
pub(crate) const MU_SYMBOL: &str = "$mu";

/// Frame-level operations shared by the identity and theorem checks. Missing
/// k or μ are replaced by placeholder symbols so that a check can tell
/// whether its residual actually depends on them.
pub(crate) struct Geo<'a> {
    pub frame: &'a Frame,
    pub curv: &'a CurvatureData,
    pub cs: &'a ContactStructure,
    pub h: &'a Tensor11,
    pub k: RatFn,
    pub mu: RatFn,
    pub n: RatFn,
}

impl<'a> Geo<'a> {
    pub fn new(
        frame: &'a Frame,
        curv: &'a CurvatureData,
        cs: &'a ContactStructure,
        h: &'a Tensor11,
        k: &Param,
        mu: &Param,
    ) -> Self {
        let resolve = |p: &Param, name: &str| {
            p.value().cloned().unwrap_or_else(|| RatFn::symbol(&Symbol::new(name)))
        };
        Geo {
            frame,
            curv,
            cs,
            h,
            k: resolve(k, K_SYMBOL),
            mu: resolve(mu, MU_SYMBOL),
            n: RatFn::from_int(cs.n as i64),
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn e(&self, i: usize) -> VectorField {
        self.frame.basis(i)
    }

    pub fn g(&self, x: &[RatFn], y: &[RatFn]) -> RatFn {
        self.frame.pairing(x, y)
    }

    pub fn eta(&self, x: &[RatFn]) -> RatFn {
        self.cs.eta_apply(x)
    }

    pub fn phi(&self, x: &[RatFn]) -> VectorField {
        self.cs.phi_apply(x)
    }

    pub fn hh(&self, x: &[RatFn]) -> VectorField {
        tensor::apply11(self.h, x)
    }

    pub fn xi(&self) -> &VectorField {
        &self.cs.xi
    }

    pub fn r(&self, x: &[RatFn], y: &[RatFn], z: &[RatFn]) -> VectorField {
        self.curv.apply(x, y, z)
    }

    pub fn s(&self, x: &[RatFn], y: &[RatFn]) -> RatFn {
        self.curv.ricci_apply(x, y)
    }

    pub fn int(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    /// Turns residuals into a report, or NeedsInput when they still mention
    /// a placeholder.
    pub fn report(&self, id: &str, res: Vec<(String, RatFn)>, sampler: &Sampler) -> CheckReport {
        let k = Symbol::new(K_SYMBOL);
        let mu = Symbol::new(MU_SYMBOL);
        let needs_k = res.iter().any(|(_, v)| v.depends_on(&k));
        let needs_mu = res.iter().any(|(_, v)| v.depends_on(&mu));
        match (needs_k, needs_mu) {
            (true, true) => CheckReport::needs_input(id, "k and mu"),
            (true, false) => CheckReport::needs_input(id, "k"),
            (false, true) => CheckReport::needs_input(id, "mu"),
            (false, false) => CheckReport::from_residuals(id, res, sampler),
        }
    }
}

fn pair(i: usize, j: usize) -> String {
    format!("({},{})", e(i), e(j))
}

fn triple(i: usize, j: usize, k: usize) -> String {
    format!("({},{},{})", e(i), e(j), e(k))
}

/// Runs one identity of the battery. `id` is the bare id; `suffix` is
/// appended to the reported id.
pub fn identity_check(
    id: &str,
    suffix: &str,
    frame: &Frame,
    curv: &CurvatureData,
    cs: &ContactStructure,
    h: &Tensor11,
    params: &NullityParams,
    sampler: &Sampler,
) -> CheckReport {
    let geo = Geo::new(frame, curv, cs, h, &params.k, &params.mu);
    let res = match id {
        "I3.1" => i3_1(&geo),
        "I3.2" => i3_2(&geo),
        "I3.3" => i3_3(&geo),
        "I3.4" => i3_4(&geo),
        "I3.5" => i3_5(&geo),
        "I3.6" => i3_6(&geo),
        "I3.7" => i3_7(&geo),
        "I3.8" => i3_8(&geo),
        "I3.9" => i3_9(&geo),
        "I3.10" => i3_10(&geo),
        "I3.11" => i3_11(&geo),
        "I3.12" => i3_12(&geo),
        "I3.13" => i3_13(&geo),
        other => panic!("unknown identity {other}"),
    };
    let mut report = geo.report(&format!("{id}{suffix}"), res, sampler);
    if id == "I3.12" {
        report = report.with_note("read as (∇_X η)(Y) = g(X + hX, φY)");
    }
    report
}

/// `R(X,Y)ξ = k[η(Y)X - η(X)Y] + μ[η(Y)hX - η(X)hY]`.
fn i3_1(g: &Geo) -> Vec<(String, RatFn)> {
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let (x, y) = (g.e(i), g.e(j));
            let lhs = g.r(&x, &y, g.xi());
            let kt = tensor::sub(&tensor::scale(&g.eta(&y), &x), &tensor::scale(&g.eta(&x), &y));
            let mt = tensor::sub(
                &tensor::scale(&g.eta(&y), &g.hh(&x)),
                &tensor::scale(&g.eta(&x), &g.hh(&y)),
            );
            let rhs = tensor::add(&tensor::scale(&g.k, &kt), &tensor::scale(&g.mu, &mt));
            out.extend(components(&pair(i, j), &tensor::sub(&lhs, &rhs)));
        }
    }
    out
}

/// `h² = (k - 1)φ²`.
fn i3_2(g: &Geo) -> Vec<(String, RatFn)> {
    let km1 = &g.k - &RatFn::one();
    (0..g.dim())
        .flat_map(|i| {
            let x = g.e(i);
            let lhs = g.hh(&g.hh(&x));
            let rhs = tensor::scale(&km1, &g.phi(&g.phi(&x)));
            components(&format!("h²{}", e(i)), &tensor::sub(&lhs, &rhs))
        })
        .collect()
}

/// `(∇_X φ)Y = g(X + hX, Y)ξ - η(Y)(X + hX)`.
fn i3_3(g: &Geo) -> Vec<(String, RatFn)> {
    let phi = Tensor::from_tensor11(&g.cs.phi);
    let mut out = Vec::new();
    for a in 0..g.dim() {
        let d = g.frame.nabla_tensor_basis(a, &phi).to_matrix();
        let x = g.e(a);
        let xh = tensor::add(&x, &g.hh(&x));
        for b in 0..g.dim() {
            let y = g.e(b);
            let rhs = tensor::sub(
                &tensor::scale(&g.g(&xh, &y), g.xi()),
                &tensor::scale(&g.eta(&y), &xh),
            );
            out.extend(components(&pair(a, b), &tensor::sub(&d[b], &rhs)));
        }
    }
    out
}

/// `(∇_X h)Y = {(1-k)g(X,φY) + g(X,hφY)}ξ + η(Y)h(φX + φhX) - μη(X)φhY`.
fn i3_4(g: &Geo) -> Vec<(String, RatFn)> {
    let ht = Tensor::from_tensor11(g.h);
    let one_k = &RatFn::one() - &g.k;
    let mut out = Vec::new();
    for a in 0..g.dim() {
        let d = g.frame.nabla_tensor_basis(a, &ht).to_matrix();
        let x = g.e(a);
        for b in 0..g.dim() {
            let y = g.e(b);
            let coef = &(&one_k * &g.g(&x, &g.phi(&y))) + &g.g(&x, &g.hh(&g.phi(&y)));
            let mid = g.hh(&tensor::add(&g.phi(&x), &g.phi(&g.hh(&x))));
            let last = tensor::scale(&(&g.mu * &g.eta(&x)), &g.phi(&g.hh(&y)));
            let rhs = tensor::sub(
                &tensor::add(&tensor::scale(&coef, g.xi()), &tensor::scale(&g.eta(&y), &mid)),
                &last,
            );
            out.extend(components(&pair(a, b), &tensor::sub(&d[b], &rhs)));
        }
    }
    out
}

/// `R(ξ,X)Y = k[g(X,Y)ξ - η(Y)X] + μ[g(hX,Y)ξ - η(Y)hX]`.
fn i3_5(g: &Geo) -> Vec<(String, RatFn)> {
    let mut out = Vec::new();
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            let (x, y) = (g.e(a), g.e(b));
            let lhs = g.r(g.xi(), &x, &y);
            let kt = tensor::sub(&tensor::scale(&g.g(&x, &y), g.xi()), &tensor::scale(&g.eta(&y), &x));
            let mt = tensor::sub(
                &tensor::scale(&g.g(&g.hh(&x), &y), g.xi()),
                &tensor::scale(&g.eta(&y), &g.hh(&x)),
            );
            let rhs = tensor::add(&tensor::scale(&g.k, &kt), &tensor::scale(&g.mu, &mt));
            out.extend(components(&pair(a, b), &tensor::sub(&lhs, &rhs)));
        }
    }
    out
}

/// `η(R(X,Y)Z) = k[g(Y,Z)η(X) - g(X,Z)η(Y)] + μ[g(hY,Z)η(X) - g(hX,Z)η(Y)]`.
fn i3_6(g: &Geo) -> Vec<(String, RatFn)> {
    let mut out = Vec::new();
    let d = g.dim();
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let (x, y, z) = (g.e(i), g.e(j), g.e(l));
                let lhs = g.eta(&g.r(&x, &y, &z));
                let kt = &(&g.g(&y, &z) * &g.eta(&x)) - &(&g.g(&x, &z) * &g.eta(&y));
                let mt = &(&g.g(&g.hh(&y), &z) * &g.eta(&x)) - &(&g.g(&g.hh(&x), &z) * &g.eta(&y));
                let rhs = &(&g.k * &kt) + &(&g.mu * &mt);
                out.push((triple(i, j, l), &lhs - &rhs));
            }
        }
    }
    out
}

/// `S(X,ξ) = 2nk η(X)`.
fn i3_7(g: &Geo) -> Vec<(String, RatFn)> {
    let c = &(&Geo::int(2) * &g.n) * &g.k;
    (0..g.dim())
        .map(|i| {
            let x = g.e(i);
            (format!("({},ξ)", e(i)), &g.s(&x, g.xi()) - &(&c * &g.eta(&x)))
        })
        .collect()
}

/// `Qφ - φQ = 2[2(n-1) + μ]hφ`.
fn i3_8(g: &Geo) -> Vec<(String, RatFn)> {
    let q = &g.curv.ricci_operator;
    let lhs_a = tensor::compose(q, &g.cs.phi);
    let lhs_b = tensor::compose(&g.cs.phi, q);
    let hphi = tensor::compose(g.h, &g.cs.phi);
    let c = &Geo::int(2) * &(&(&Geo::int(2) * &(&g.n - &RatFn::one())) + &g.mu);
    (0..g.dim())
        .flat_map(|i| {
            let v = tensor::sub(&tensor::sub(&lhs_a[i], &lhs_b[i]), &tensor::scale(&c, &hphi[i]));
            components(&format!("(Qφ-φQ){}", e(i)), &v)
        })
        .collect()
}

/// `S(X,Y) = [2(n-1) - nμ]g(X,Y) + [2(n-1) + μ]g(hX,Y) + [2(1-n) + n(2k+μ)]η(X)η(Y)`.
fn i3_9(g: &Geo) -> Vec<(String, RatFn)> {
    let two = Geo::int(2);
    let one = RatFn::one();
    let c1 = &(&two * &(&g.n - &one)) - &(&g.n * &g.mu);
    let c2 = &(&two * &(&g.n - &one)) + &g.mu;
    let c3 = &(&two * &(&one - &g.n)) + &(&g.n * &(&(&two * &g.k) + &g.mu));
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let (x, y) = (g.e(i), g.e(j));
            let rhs = &(&(&c1 * &g.g(&x, &y)) + &(&c2 * &g.g(&g.hh(&x), &y)))
                + &(&c3 * &(&g.eta(&x) * &g.eta(&y)));
            out.push((pair(i, j), &g.s(&x, &y) - &rhs));
        }
    }
    out
}

/// `r = 2n(2n - 2 + k - nμ)`.
fn i3_10(g: &Geo) -> Vec<(String, RatFn)> {
    let two = Geo::int(2);
    let inner = &(&(&(&two * &g.n) - &two) + &g.k) - &(&g.n * &g.mu);
    let rhs = &(&two * &g.n) * &inner;
    vec![("r".into(), &g.curv.scalar - &rhs)]
}

/// `S(φX,φY) = S(X,Y) - 2nk η(X)η(Y) - 2(2n - 2 + μ)g(hX,Y)`.
fn i3_11(g: &Geo) -> Vec<(String, RatFn)> {
    let two = Geo::int(2);
    let c1 = &(&two * &g.n) * &g.k;
    let c2 = &two * &(&(&(&two * &g.n) - &two) + &g.mu);
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let (x, y) = (g.e(i), g.e(j));
            let lhs = g.s(&g.phi(&x), &g.phi(&y));
            let rhs = &(&g.s(&x, &y) - &(&c1 * &(&g.eta(&x) * &g.eta(&y))))
                - &(&c2 * &g.g(&g.hh(&x), &y));
            out.push((pair(i, j), &lhs - &rhs));
        }
    }
    out
}

/// `(∇_X η)(Y) = g(X + hX, φY)`.
fn i3_12(g: &Geo) -> Vec<(String, RatFn)> {
    let eta = Tensor::from_one_form(&g.cs.eta);
    let mut out = Vec::new();
    for a in 0..g.dim() {
        let d = g.frame.nabla_tensor_basis(a, &eta);
        let x = g.e(a);
        let xh = tensor::add(&x, &g.hh(&x));
        for b in 0..g.dim() {
            let rhs = g.g(&xh, &g.phi(&g.e(b)));
            out.push((pair(a, b), d.get(&[b]) - &rhs));
        }
    }
    out
}

/// `(∇_W R)(X,Y)ξ` against its full expansion in k, μ, h and R.
fn i3_13(g: &Geo) -> Vec<(String, RatFn)> {
    let d = g.dim();
    let one_k = &RatFn::one() - &g.k;
    let mut out = Vec::new();
    for w_i in 0..d {
        let nr = curvature::nabla_riemann_tensor(g.frame, &g.curv.riemann, w_i);
        let w = g.e(w_i);
        let wh = tensor::add(&w, &g.hh(&w));
        for i in 0..d {
            for j in i + 1..d {
                let (x, y) = (g.e(i), g.e(j));
                let lhs = curvature::riemann_apply(&nr, &x, &y, g.xi());
                let a_y = g.g(&wh, &g.phi(&y));
                let a_x = g.g(&wh, &g.phi(&x));
                let kt = tensor::sub(&tensor::scale(&a_y, &x), &tensor::scale(&a_x, &y));
                let bx = &(&one_k * &g.g(&w, &g.phi(&x))) + &g.g(&w, &g.hh(&g.phi(&x)));
                let by = &(&one_k * &g.g(&w, &g.phi(&y))) + &g.g(&w, &g.hh(&g.phi(&y)));
                let mut mt = tensor::sub(&tensor::scale(&a_y, &g.hh(&x)), &tensor::scale(&a_x, &g.hh(&y)));
                mt = tensor::add(&mt, &tensor::scale(&(&bx * &g.eta(&y)), g.xi()));
                mt = tensor::sub(&mt, &tensor::scale(&(&by * &g.eta(&x)), g.xi()));
                let inner = tensor::sub(
                    &tensor::scale(&g.eta(&x), &g.phi(&g.hh(&y))),
                    &tensor::scale(&g.eta(&y), &g.phi(&g.hh(&x))),
                );
                mt = tensor::add(&mt, &tensor::scale(&(&g.mu * &g.eta(&w)), &inner));
                let mut rhs = tensor::add(&tensor::scale(&g.k, &kt), &tensor::scale(&g.mu, &mt));
                rhs = tensor::add(&rhs, &g.r(&x, &y, &g.phi(&w)));
                rhs = tensor::add(&rhs, &g.r(&x, &y, &g.phi(&g.hh(&w))));
                let label = format!("W={},{}", e(w_i), pair(i, j));
                out.extend(components(&label, &tensor::sub(&lhs, &rhs)));
            }
        }
    }
    out
}
