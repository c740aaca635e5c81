//! Frame-component tensors.
//!
//! Everything is expressed in the moving frame `E_1..E_n`. Vectors and
//! one-forms are plain component vectors; (1,1) tensors use the layout
//! `t[i][j] = (T E_i)^j` and (0,2) tensors `t[i][j] = T(E_i, E_j)`.

use symcore::linalg::Matrix;
use symcore::RatFn;

pub type VectorField = Vec<RatFn>;
pub type OneForm = Vec<RatFn>;
pub type Tensor11 = Matrix;
pub type Tensor02 = Matrix;

pub fn zero_vector(dim: usize) -> VectorField {
    vec![RatFn::zero(); dim]
}

pub fn basis(dim: usize, i: usize) -> VectorField {
    let mut v = zero_vector(dim);
    v[i] = RatFn::one();
    v
}

pub fn add(a: &[RatFn], b: &[RatFn]) -> VectorField {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[RatFn], b: &[RatFn]) -> VectorField {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &RatFn, v: &[RatFn]) -> VectorField {
    if c.is_zero() {
        return zero_vector(v.len());
    }
    v.iter().map(|x| c * x).collect()
}

pub fn neg(v: &[RatFn]) -> VectorField {
    v.iter().map(|x| -x).collect()
}

pub fn is_zero(v: &[RatFn]) -> bool {
    v.iter().all(RatFn::is_zero)
}

/// `ω(V)` for a one-form given by components.
pub fn contract(form: &[RatFn], v: &[RatFn]) -> RatFn {
    form.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

/// `T V` for a (1,1) tensor in row layout.
pub fn apply11(t: &[Vec<RatFn>], v: &[RatFn]) -> VectorField {
    let dim = v.len();
    let mut out = zero_vector(dim);
    for (vi, row) in v.iter().zip(t) {
        if vi.is_zero() {
            continue;
        }
        for (o, tij) in out.iter_mut().zip(row) {
            if !tij.is_zero() {
                *o = &*o + &(vi * tij);
            }
        }
    }
    out
}

/// `A ∘ B`.
pub fn compose(a: &[Vec<RatFn>], b: &[Vec<RatFn>]) -> Tensor11 {
    b.iter().map(|row| apply11(a, row)).collect()
}

/// `T(X, Y)` for a (0,2) tensor.
pub fn bilinear(t: &[Vec<RatFn>], x: &[RatFn], y: &[RatFn]) -> RatFn {
    let mut acc = RatFn::zero();
    for (xi, row) in x.iter().zip(t) {
        if xi.is_zero() {
            continue;
        }
        let inner = contract(row, y);
        if !inner.is_zero() {
            acc = &acc + &(xi * &inner);
        }
    }
    acc
}

pub fn trace11(t: &[Vec<RatFn>]) -> RatFn {
    t.iter().enumerate().map(|(i, row)| row[i].clone()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Up,
    Down,
}

/// Dense tensor of arbitrary valence. Index `i_1 .. i_r` is stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub slots: Vec<Slot>,
    pub dim: usize,
    pub data: Vec<RatFn>,
}

impl Tensor {
    pub fn zeros(slots: Vec<Slot>, dim: usize) -> Self {
        let len = dim.pow(slots.len() as u32);
        Tensor {
            slots,
            dim,
            data: vec![RatFn::zero(); len],
        }
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn multi_index(&self, mut offset: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank()];
        for slot in idx.iter_mut().rev() {
            *slot = offset % self.dim;
            offset /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &RatFn {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: RatFn) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn from_vector(v: &[RatFn]) -> Self {
        Tensor {
            slots: vec![Slot::Up],
            dim: v.len(),
            data: v.to_vec(),
        }
    }

    pub fn from_one_form(w: &[RatFn]) -> Self {
        Tensor {
            slots: vec![Slot::Down],
            dim: w.len(),
            data: w.to_vec(),
        }
    }

    pub fn from_tensor11(t: &[Vec<RatFn>]) -> Self {
        Tensor {
            slots: vec![Slot::Down, Slot::Up],
            dim: t.len(),
            data: t.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_tensor02(t: &[Vec<RatFn>]) -> Self {
        Tensor {
            slots: vec![Slot::Down, Slot::Down],
            dim: t.len(),
            data: t.iter().flatten().cloned().collect(),
        }
    }

    /// Rank-2 tensors back to nested rows.
    pub fn to_matrix(&self) -> Vec<Vec<RatFn>> {
        assert_eq!(self.rank(), 2, "not a rank-2 tensor");
        self.data.chunks(self.dim).map(<[RatFn]>::to_vec).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    #[test]
    fn composition_order() {
        // phi E1 = -E2, phi E2 = E1; phi^2 = -1 on span(E1, E2).
        let phi = vec![
            vec![r(0), r(-1), r(0)],
            vec![r(1), r(0), r(0)],
            vec![r(0), r(0), r(0)],
        ];
        let sq = compose(&phi, &phi);
        assert_eq!(sq[0], vec![r(-1), r(0), r(0)]);
        assert_eq!(sq[1], vec![r(0), r(-1), r(0)]);
        assert!(is_zero(&sq[2]));
    }

    #[test]
    fn offsets_roundtrip() {
        let t = Tensor::zeros(vec![Slot::Down, Slot::Down, Slot::Up], 3);
        for o in 0..27 {
            assert_eq!(t.offset(&t.multi_index(o)), o);
        }
        assert_eq!(t.offset(&[1, 2, 0]), 15);
    }

    #[test]
    fn bilinear_matches_components() {
        let g = vec![vec![r(1), r(2)], vec![r(2), r(5)]];
        assert_eq!(bilinear(&g, &basis(2, 0), &basis(2, 1)), r(2));
        assert_eq!(bilinear(&g, &[r(1), r(1)], &[r(1), r(1)]), r(10));
    }
}
