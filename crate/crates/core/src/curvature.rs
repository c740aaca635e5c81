//! Riemann curvature, its covariant derivative and the Ricci contractions.
//!
//! Sign convention: `R(X,Y) = ∇_X ∇_Y - ∇_Y ∇_X - ∇_[X,Y]`.

use symcore::linalg::mat_mul;
use symcore::RatFn;

use crate::frames::Frame;
use crate::tensor::{self, Slot, Tensor, Tensor02, Tensor11, VectorField};

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureData {
    /// `riemann[i,j,k,l]` is the `E_l` component of `R(E_i,E_j)E_k`.
    pub riemann: Tensor,
    pub ricci: Tensor02,
    pub scalar: RatFn,
    /// `g(QX, Y) = S(X, Y)`, row layout.
    pub ricci_operator: Tensor11,
}

impl CurvatureData {
    pub fn new(frame: &Frame) -> Self {
        let riemann = riemann(frame);
        let (ricci, scalar, ricci_operator) = ricci(frame, &riemann);
        CurvatureData {
            riemann,
            ricci,
            scalar,
            ricci_operator,
        }
    }

    /// `R(E_i, E_j) E_k`.
    pub fn component(&self, i: usize, j: usize, k: usize) -> VectorField {
        component(&self.riemann, i, j, k)
    }

    pub fn apply(&self, x: &[RatFn], y: &[RatFn], z: &[RatFn]) -> VectorField {
        riemann_apply(&self.riemann, x, y, z)
    }

    pub fn ricci_apply(&self, x: &[RatFn], y: &[RatFn]) -> RatFn {
        tensor::bilinear(&self.ricci, x, y)
    }
}

fn component(r: &Tensor, i: usize, j: usize, k: usize) -> VectorField {
    (0..r.dim).map(|l| r.get(&[i, j, k, l]).clone()).collect()
}

pub fn riemann(frame: &Frame) -> Tensor {
    let dim = frame.dim();
    let mut r = Tensor::zeros(vec![Slot::Down, Slot::Down, Slot::Down, Slot::Up], dim);
    for i in 0..dim {
        for j in i + 1..dim {
            for k in 0..dim {
                let mut v = tensor::sub(
                    &frame.nabla_basis(i, frame.gamma(j, k)),
                    &frame.nabla_basis(j, frame.gamma(i, k)),
                );
                for (l, c) in frame.bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        v = tensor::sub(&v, &tensor::scale(c, frame.gamma(l, k)));
                    }
                }
                for (m, val) in v.into_iter().enumerate() {
                    r.set(&[j, i, k, m], -&val);
                    r.set(&[i, j, k, m], val);
                }
            }
        }
    }
    r
}

/// Multilinear `R(X,Y)Z`; components may carry free parameters.
pub fn riemann_apply(r: &Tensor, x: &[RatFn], y: &[RatFn], z: &[RatFn]) -> VectorField {
    let dim = r.dim;
    let mut out = tensor::zero_vector(dim);
    for i in 0..dim {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..dim {
            if y[j].is_zero() || i == j {
                continue;
            }
            let xy = &x[i] * &y[j];
            for k in 0..dim {
                if z[k].is_zero() {
                    continue;
                }
                let c = component(r, i, j, k);
                if !tensor::is_zero(&c) {
                    out = tensor::add(&out, &tensor::scale(&(&xy * &z[k]), &c));
                }
            }
        }
    }
    out
}

/// `(∇_W R)(X,Y)Z` from the definition
/// `∇_W(R(X,Y)Z) - R(∇_W X,Y)Z - R(X,∇_W Y)Z - R(X,Y)∇_W Z`.
pub fn nabla_riemann(
    frame: &Frame,
    r: &Tensor,
    w: &[RatFn],
    x: &[RatFn],
    y: &[RatFn],
    z: &[RatFn],
) -> VectorField {
    let first = frame.nabla(w, &riemann_apply(r, x, y, z));
    let a = riemann_apply(r, &frame.nabla(w, x), y, z);
    let b = riemann_apply(r, x, &frame.nabla(w, y), z);
    let c = riemann_apply(r, x, y, &frame.nabla(w, z));
    tensor::sub(&tensor::sub(&tensor::sub(&first, &a), &b), &c)
}

/// Components of `∇_{E_a} R` as a tensor of the same valence.
pub fn nabla_riemann_tensor(frame: &Frame, r: &Tensor, a: usize) -> Tensor {
    frame.nabla_tensor_basis(a, r)
}

/// Ricci tensor `S(Y,Z) = tr(X ↦ R(X,Y)Z)`, scalar curvature and Ricci
/// operator.
pub fn ricci(frame: &Frame, r: &Tensor) -> (Tensor02, RatFn, Tensor11) {
    let dim = frame.dim();
    let s: Tensor02 = (0..dim)
        .map(|y| {
            (0..dim)
                .map(|z| (0..dim).map(|a| r.get(&[a, y, z, a]).clone()).sum())
                .collect()
        })
        .collect();
    let g_inv = frame.metric_inverse();
    let scalar = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .filter(|&(i, j)| !g_inv[i][j].is_zero())
        .map(|(i, j)| &g_inv[i][j] * &s[i][j])
        .sum();
    let q = mat_mul(&s, g_inv);
    (s, scalar, q)
}

/// `G(X,Y)Z = g(Y,Z)X - g(X,Z)Y`.
pub fn g_tensor(frame: &Frame, x: &[RatFn], y: &[RatFn], z: &[RatFn]) -> VectorField {
    tensor::sub(
        &tensor::scale(&frame.pairing(y, z), x),
        &tensor::scale(&frame.pairing(x, z), y),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{FrameMode, FrameSpec, Structure};
    use symcore::linalg::identity;
    use symcore::Symbol;

    fn r(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    fn coords() -> Vec<Symbol> {
        ["x", "y", "z"].iter().map(|s| Symbol::new(s)).collect()
    }

    fn bracket_frame(c: Structure, act: Vec<Vec<RatFn>>) -> Frame {
        Frame::new(FrameSpec {
            coords: coords(),
            params: vec![],
            exclusions: vec![],
            mode: FrameMode::Bracket { c, act },
            metric: identity(3),
        })
        .unwrap()
    }

    fn example() -> Frame {
        let mut c = vec![vec![vec![r(0); 3]; 3]; 3];
        c[0][1][1] = RatFn::one() / RatFn::var("y");
        c[1][0][1] = -&c[0][1][1];
        let mut act = vec![vec![r(0); 3]; 3];
        act[0][1] = r(1);
        bracket_frame(c, act)
    }

    fn sphere() -> Frame {
        let mut c = vec![vec![vec![r(0); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = r(2);
            c[j][i][k] = r(-2);
        }
        bracket_frame(c, vec![vec![r(0); 3]; 3])
    }

    fn strings(v: &[RatFn]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn example_components() {
        let curv = CurvatureData::new(&example());
        assert_eq!(strings(&curv.component(0, 1, 0)), ["0", "2/y^2", "0"]);
        assert_eq!(strings(&curv.component(0, 1, 1)), ["-2/y^2", "0", "0"]);
        let mut nonzero = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if !tensor::is_zero(&curv.component(i, j, k)) {
                        nonzero += 1;
                    }
                }
            }
        }
        // (1,2,1), (1,2,2) and their antisymmetric partners.
        assert_eq!(nonzero, 4);
        assert!(tensor::is_zero(&curv.component(0, 1, 2)));
    }

    #[test]
    fn example_ricci() {
        let curv = CurvatureData::new(&example());
        assert_eq!(curv.ricci[0][0].to_string(), "-2/y^2");
        assert_eq!(curv.ricci[1][1].to_string(), "-2/y^2");
        assert!(curv.ricci[2][2].is_zero());
        assert_eq!(curv.scalar.to_string(), "-4/y^2");
    }

    #[test]
    fn sphere_has_constant_curvature_one() {
        let frame = sphere();
        let curv = CurvatureData::new(&frame);
        assert_eq!(curv.component(0, 1, 1), frame.basis(0));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(curv.ricci[i][j], if i == j { r(2) } else { r(0) });
            }
        }
        assert_eq!(curv.scalar, r(6));
        for a in 0..3 {
            assert!(nabla_riemann_tensor(&frame, &curv.riemann, a).is_zero());
        }
    }

    #[test]
    fn nabla_routes_agree() {
        let frame = example();
        let curv = CurvatureData::new(&frame);
        for a in 0..3 {
            let t = nabla_riemann_tensor(&frame, &curv.riemann, a);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let direct = nabla_riemann(
                            &frame,
                            &curv.riemann,
                            &frame.basis(a),
                            &frame.basis(i),
                            &frame.basis(j),
                            &frame.basis(k),
                        );
                        let comp: Vec<RatFn> = (0..3).map(|l| t.get(&[i, j, k, l]).clone()).collect();
                        assert_eq!(direct, comp);
                    }
                }
            }
        }
    }

    #[test]
    fn g_tensor_basics() {
        let frame = example();
        let e = |i| frame.basis(i);
        assert_eq!(g_tensor(&frame, &e(0), &e(1), &e(1)), e(0));
        let x = vec![r(1), r(2), r(3)];
        assert!(tensor::is_zero(&g_tensor(&frame, &x, &x, &e(2))));
    }
}
