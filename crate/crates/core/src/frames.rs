//! Frames, brackets and the Levi-Civita connection.

use symcore::linalg::{self, Matrix};
use symcore::{Exclusion, RatFn, Symbol};

use crate::tensor::{self, Slot, Tensor, VectorField};
use crate::Error;

/// `c[i][j][k]` with `[E_i, E_j] = Σ_k c[i][j][k] E_k`.
pub type Structure = Vec<Vec<Vec<RatFn>>>;

#[derive(Clone, Debug, PartialEq)]
pub enum FrameMode {
    /// `E_i = Σ_j a[i][j] ∂/∂x_j`.
    Coordinate { a: Matrix },
    /// Declared structure functions and frame action on coordinates,
    /// `act[i][j] = E_i(x_j)`.
    Bracket { c: Structure, act: Matrix },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrameSpec {
    pub coords: Vec<Symbol>,
    pub params: Vec<Symbol>,
    pub exclusions: Vec<Exclusion>,
    pub mode: FrameMode,
    pub metric: Matrix,
}

impl FrameSpec {
    pub fn dim(&self) -> usize {
        self.metric.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    /// `det(a)` in coordinate mode.
    pub frame_determinant: Option<RatFn>,
    pub metric_determinant: RatFn,
    pub antisymmetric: bool,
    /// Nonzero Jacobi sums, keyed by the frame triple.
    pub jacobi_residual: Vec<((usize, usize, usize), VectorField)>,
    pub warnings: Vec<String>,
}

fn check_shape(spec: &FrameSpec) -> Result<(), Error> {
    let dim = spec.dim();
    if dim == 0 {
        return Err(Error::Shape("empty frame".into()));
    }
    if spec.metric.iter().any(|row| row.len() != dim) {
        return Err(Error::Shape("metric is not square".into()));
    }
    let nc = spec.coords.len();
    match &spec.mode {
        FrameMode::Coordinate { a } => {
            if nc != dim || a.len() != dim || a.iter().any(|row| row.len() != nc) {
                return Err(Error::Shape(format!(
                    "coordinate frame needs a {dim}x{dim} coefficient matrix over {dim} coordinates"
                )));
            }
        }
        FrameMode::Bracket { c, act } => {
            let ok = c.len() == dim
                && c.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim))
                && act.len() == dim
                && act.iter().all(|row| row.len() == nc);
            if !ok {
                return Err(Error::Shape("structure functions or action have the wrong size".into()));
            }
        }
    }
    Ok(())
}

/// `E_i(f)`.
pub fn frame_apply(spec: &FrameSpec, i: usize, f: &RatFn) -> RatFn {
    if f.as_constant().is_some() {
        return RatFn::zero();
    }
    let row = match &spec.mode {
        FrameMode::Coordinate { a } => &a[i],
        FrameMode::Bracket { act, .. } => &act[i],
    };
    let mut acc = RatFn::zero();
    for (coef, x) in row.iter().zip(&spec.coords) {
        if coef.is_zero() || !f.depends_on(x) {
            continue;
        }
        acc = &acc + &(coef * &f.derivative(x));
    }
    acc
}

/// `V(f)` for a vector field with frame components.
fn vector_apply(spec: &FrameSpec, v: &[RatFn], f: &RatFn) -> RatFn {
    let mut acc = RatFn::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let d = frame_apply(spec, i, f);
        if !d.is_zero() {
            acc = &acc + &(vi * &d);
        }
    }
    acc
}

fn lie_bracket_with(spec: &FrameSpec, c: &Structure, v: &[RatFn], w: &[RatFn]) -> VectorField {
    let dim = spec.dim();
    let mut out: VectorField = (0..dim)
        .map(|k| &vector_apply(spec, v, &w[k]) - &vector_apply(spec, w, &v[k]))
        .collect();
    for a in 0..dim {
        if v[a].is_zero() {
            continue;
        }
        for b in 0..dim {
            if w[b].is_zero() || tensor::is_zero(&c[a][b]) {
                continue;
            }
            let vw = &v[a] * &w[b];
            for k in 0..dim {
                if !c[a][b][k].is_zero() {
                    out[k] = &out[k] + &(&vw * &c[a][b][k]);
                }
            }
        }
    }
    out
}

/// Structure functions of the frame. In coordinate mode the coordinate
/// bracket `E_i(a_j) - E_j(a_i)` is pulled back through `a^{-1}`.
pub fn compute_brackets(spec: &FrameSpec) -> Result<Structure, Error> {
    check_shape(spec)?;
    match &spec.mode {
        FrameMode::Bracket { c, .. } => Ok(c.clone()),
        FrameMode::Coordinate { a } => {
            let dim = spec.dim();
            let inv = linalg::inverse(a).ok_or_else(|| Error::FrameDependent {
                det: linalg::determinant(a).to_string(),
            })?;
            let mut c = vec![vec![vec![RatFn::zero(); dim]; dim]; dim];
            for i in 0..dim {
                for j in i + 1..dim {
                    let coord: Vec<RatFn> = (0..dim)
                        .map(|m| {
                            &frame_apply(spec, i, &a[j][m]) - &frame_apply(spec, j, &a[i][m])
                        })
                        .collect();
                    let frame: VectorField = (0..dim)
                        .map(|k| (0..dim).map(|m| &coord[m] * &inv[m][k]).sum())
                        .collect();
                    c[j][i] = tensor::neg(&frame);
                    c[i][j] = frame;
                }
            }
            Ok(c)
        }
    }
}

fn jacobi_residual(spec: &FrameSpec, c: &Structure) -> Vec<((usize, usize, usize), VectorField)> {
    let dim = spec.dim();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let term = |p: usize, q: usize, r: usize| {
                    lie_bracket_with(spec, c, &tensor::basis(dim, p), &c[q][r])
                };
                let sum = tensor::add(&tensor::add(&term(i, j, k), &term(j, k, i)), &term(k, i, j));
                if !tensor::is_zero(&sum) {
                    out.push(((i, j, k), sum));
                }
            }
        }
    }
    out
}

pub fn validate_frame(spec: &FrameSpec) -> Result<ValidationReport, Error> {
    check_shape(spec)?;
    let dim = spec.dim();
    let mut report = ValidationReport::default();

    for i in 0..dim {
        for j in 0..dim {
            if spec.metric[i][j] != spec.metric[j][i] {
                return Err(Error::Shape(format!("metric is not symmetric at g{}{}", i + 1, j + 1)));
            }
        }
    }
    report.metric_determinant = linalg::determinant(&spec.metric);
    if report.metric_determinant.is_zero() {
        return Err(Error::SingularMetric);
    }

    if let FrameMode::Coordinate { a } = &spec.mode {
        let det = linalg::determinant(a);
        if det.is_zero() {
            return Err(Error::FrameDependent { det: det.to_string() });
        }
        if det.as_constant().is_none() {
            report
                .warnings
                .push(format!("frame degenerates where {} = 0", RatFn::from_poly(det.numer().clone())));
        }
        report.frame_determinant = Some(det);
    }

    let c = compute_brackets(spec)?;
    report.antisymmetric = (0..dim).all(|i| {
        (0..dim).all(|j| (0..dim).all(|k| c[i][j][k] == -&c[j][i][k]))
    });
    if !report.antisymmetric {
        report.warnings.push("structure functions are not antisymmetric".into());
    }
    report.jacobi_residual = jacobi_residual(spec, &c);
    for ((i, j, k), _) in &report.jacobi_residual {
        report.warnings.push(format!(
            "Jacobi identity fails for (E{}, E{}, E{})",
            i + 1,
            j + 1,
            k + 1
        ));
    }

    if let FrameMode::Bracket { act, .. } = &spec.mode {
        // [E_i, E_j](x_m) must agree with the declared action.
        for i in 0..dim {
            for j in i + 1..dim {
                for (m, x) in spec.coords.iter().enumerate() {
                    let lhs: RatFn = (0..dim).map(|k| &c[i][j][k] * &act[k][m]).sum();
                    let rhs = &frame_apply(spec, i, &act[j][m]) - &frame_apply(spec, j, &act[i][m]);
                    if lhs != rhs {
                        report.warnings.push(format!(
                            "declared action is inconsistent with [E{}, E{}] on {x}",
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Converts a coordinate-mode spec to bracket mode with the same brackets and
/// frame action.
pub fn to_bracket_mode(spec: &FrameSpec) -> Result<FrameSpec, Error> {
    let c = compute_brackets(spec)?;
    let act = match &spec.mode {
        FrameMode::Coordinate { a } => a.clone(),
        FrameMode::Bracket { act, .. } => act.clone(),
    };
    Ok(FrameSpec {
        mode: FrameMode::Bracket { c, act },
        ..spec.clone()
    })
}

/// `gamma[i][j]` holds the components of `∇_{E_i} E_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub gamma: Vec<Vec<VectorField>>,
}

fn koszul(spec: &FrameSpec, c: &Structure, g_inv: &Matrix) -> Connection {
    let dim = spec.dim();
    let g = &spec.metric;
    let half = RatFn::from_ratio(1, 2);
    let cg = |i: usize, j: usize, k: usize| -> RatFn {
        (0..dim)
            .filter(|&m| !c[i][j][m].is_zero())
            .map(|m| &c[i][j][m] * &g[m][k])
            .sum()
    };
    let mut gamma = vec![vec![tensor::zero_vector(dim); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let lowered: Vec<RatFn> = (0..dim)
                .map(|k| {
                    let s = &(&(&frame_apply(spec, i, &g[j][k]) + &frame_apply(spec, j, &g[i][k]))
                        - &frame_apply(spec, k, &g[i][j]))
                        + &(&(&cg(i, j, k) - &cg(i, k, j)) - &cg(j, k, i));
                    &half * &s
                })
                .collect();
            gamma[i][j] = (0..dim)
                .map(|l| (0..dim).map(|k| &lowered[k] * &g_inv[k][l]).sum())
                .collect();
        }
    }
    Connection { gamma }
}

pub fn koszul_connection(spec: &FrameSpec) -> Result<Connection, Error> {
    Ok(Frame::new(spec.clone())?.connection().clone())
}

/// A validated frame with its brackets, inverse metric and connection
/// computed once.
#[derive(Clone, Debug)]
pub struct Frame {
    spec: FrameSpec,
    c: Structure,
    g_inv: Matrix,
    conn: Connection,
    validation: ValidationReport,
}

impl Frame {
    pub fn new(spec: FrameSpec) -> Result<Self, Error> {
        let validation = validate_frame(&spec)?;
        let c = compute_brackets(&spec)?;
        let g_inv = linalg::inverse(&spec.metric).ok_or(Error::SingularMetric)?;
        let conn = koszul(&spec, &c, &g_inv);
        Ok(Frame {
            spec,
            c,
            g_inv,
            conn,
            validation,
        })
    }

    pub fn spec(&self) -> &FrameSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.validation
    }

    pub fn structure(&self) -> &Structure {
        &self.c
    }

    pub fn bracket(&self, i: usize, j: usize) -> &VectorField {
        &self.c[i][j]
    }

    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn gamma(&self, i: usize, j: usize) -> &VectorField {
        &self.conn.gamma[i][j]
    }

    pub fn metric(&self) -> &Matrix {
        &self.spec.metric
    }

    pub fn metric_inverse(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn basis(&self, i: usize) -> VectorField {
        tensor::basis(self.dim(), i)
    }

    pub fn apply(&self, i: usize, f: &RatFn) -> RatFn {
        frame_apply(&self.spec, i, f)
    }

    pub fn apply_vector(&self, v: &[RatFn], f: &RatFn) -> RatFn {
        vector_apply(&self.spec, v, f)
    }

    pub fn lie_bracket(&self, v: &[RatFn], w: &[RatFn]) -> VectorField {
        lie_bracket_with(&self.spec, &self.c, v, w)
    }

    pub fn pairing(&self, x: &[RatFn], y: &[RatFn]) -> RatFn {
        tensor::bilinear(&self.spec.metric, x, y)
    }

    pub fn lower(&self, v: &[RatFn]) -> Vec<RatFn> {
        (0..self.dim())
            .map(|j| (0..self.dim()).map(|i| &v[i] * &self.spec.metric[i][j]).sum())
            .collect()
    }

    pub fn raise(&self, w: &[RatFn]) -> VectorField {
        (0..self.dim())
            .map(|j| (0..self.dim()).map(|i| &w[i] * &self.g_inv[i][j]).sum())
            .collect()
    }

    /// `∇_{E_a} V`.
    pub fn nabla_basis(&self, a: usize, v: &[RatFn]) -> VectorField {
        let dim = self.dim();
        let mut out: VectorField = v.iter().map(|vk| self.apply(a, vk)).collect();
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let g = self.gamma(a, j);
            for k in 0..dim {
                if !g[k].is_zero() {
                    out[k] = &out[k] + &(vj * &g[k]);
                }
            }
        }
        out
    }

    /// `∇_W V`.
    pub fn nabla(&self, w: &[RatFn], v: &[RatFn]) -> VectorField {
        let mut out = tensor::zero_vector(self.dim());
        for (a, wa) in w.iter().enumerate() {
            if !wa.is_zero() {
                out = tensor::add(&out, &tensor::scale(wa, &self.nabla_basis(a, v)));
            }
        }
        out
    }

    /// `∇_{E_a} T` for a tensor of any valence.
    pub fn nabla_tensor_basis(&self, a: usize, t: &Tensor) -> Tensor {
        let dim = self.dim();
        let mut out = Tensor::zeros(t.slots.clone(), dim);
        for o in 0..t.data.len() {
            let idx = t.multi_index(o);
            let mut acc = self.apply(a, &t.data[o]);
            for (s, slot) in t.slots.iter().enumerate() {
                let mut other = idx.clone();
                for l in 0..dim {
                    other[s] = l;
                    let tv = t.get(&other);
                    if tv.is_zero() {
                        continue;
                    }
                    match slot {
                        Slot::Up => {
                            let g = &self.gamma(a, l)[idx[s]];
                            if !g.is_zero() {
                                acc = &acc + &(g * tv);
                            }
                        }
                        Slot::Down => {
                            let g = &self.gamma(a, idx[s])[l];
                            if !g.is_zero() {
                                acc = &acc - &(g * tv);
                            }
                        }
                    }
                }
            }
            out.data[o] = acc;
        }
        out
    }

    /// `∇_W T`.
    pub fn nabla_tensor(&self, w: &[RatFn], t: &Tensor) -> Tensor {
        let mut out = Tensor::zeros(t.slots.clone(), self.dim());
        for (a, wa) in w.iter().enumerate() {
            if wa.is_zero() {
                continue;
            }
            let d = self.nabla_tensor_basis(a, t);
            out.data = tensor::add(&out.data, &tensor::scale(wa, &d.data));
        }
        out
    }
}

pub fn covariant_derivative_vector(frame: &Frame, w: &[RatFn], v: &[RatFn]) -> VectorField {
    frame.nabla(w, v)
}

pub fn covariant_derivative_tensor(frame: &Frame, w: &[RatFn], t: &Tensor) -> Tensor {
    frame.nabla_tensor(w, t)
}

pub fn metric_pairing(frame: &Frame, x: &[RatFn], y: &[RatFn]) -> RatFn {
    frame.pairing(x, y)
}
