//! Exact linear algebra over the field of rational functions.

use crate::ratfn::RatFn;

pub type Matrix = Vec<Vec<RatFn>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RatFn::one() } else { RatFn::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<RatFn>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<RatFn>], b: &[Vec<RatFn>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<RatFn>], v: &[RatFn]) -> Vec<RatFn> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Determinant by fraction-field elimination.
pub fn determinant(m: &[Vec<RatFn>]) -> RatFn {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = RatFn::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return RatFn::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}

/// Inverse, or `None` when the matrix is singular.
pub fn inverse(m: &[Vec<RatFn>]) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let rank = rref_in_place(&mut a, n);
    if rank < n {
        return None;
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Gauss-Jordan elimination on the first `ncols` columns. Returns the rank.
/// The result is the reduced row echelon form, which does not depend on the
/// original row order.
fn rref_in_place(a: &mut Matrix, ncols: usize) -> usize {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = a[rank][col].recip().expect("pivot is nonzero");
        for c in col..width {
            if !a[rank][c].is_zero() {
                a[rank][c] = &a[rank][c] * &inv;
            }
        }
        for r in 0..rows {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..width {
                if a[rank][c].is_zero() {
                    continue;
                }
                let t = &factor * &a[rank][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    /// Exactly one solution.
    Unique(Vec<RatFn>),
    /// Solution set `particular + span(kernel)`; free unknowns are set to zero in
    /// `particular`.
    Underdetermined {
        particular: Vec<RatFn>,
        kernel: Vec<Vec<RatFn>>,
        free: Vec<usize>,
    },
    /// No solution. `least_squares` solves the normal equations and `residual`
    /// is `b - A x` at that point, one entry per equation.
    Inconsistent {
        least_squares: Vec<RatFn>,
        residual: Vec<RatFn>,
    },
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, LinearSolution::Inconsistent { .. })
    }

    /// A representative solution (free unknowns zero), if one exists.
    pub fn representative(&self) -> Option<&[RatFn]> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            LinearSolution::Underdetermined { particular, .. } => Some(particular),
            LinearSolution::Inconsistent { .. } => None,
        }
    }
}

/// Solve `A x = b` exactly. Zero rows are allowed.
pub fn solve(a: &[Vec<RatFn>], b: &[RatFn]) -> LinearSolution {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .filter(|(row, rhs)| !(rhs.is_zero() && row.iter().all(RatFn::is_zero)))
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    let rank = rref_in_place(&mut aug, n);
    if aug[rank..].iter().any(|row| !row[n].is_zero()) {
        let at = transpose(a);
        let normal = mat_mul(&at, a);
        let rhs = mat_vec(&at, b);
        let least_squares = match solve(&normal, &rhs) {
            LinearSolution::Unique(x) => x,
            LinearSolution::Underdetermined { particular, .. } => particular,
            LinearSolution::Inconsistent { .. } => unreachable!("normal equations are consistent"),
        };
        let ax = mat_vec(a, &least_squares);
        let residual = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        return LinearSolution::Inconsistent {
            least_squares,
            residual,
        };
    }
    // Pivot columns of the reduced form.
    let mut pivots = Vec::with_capacity(rank);
    for row in aug.iter().take(rank) {
        let col = (0..n).find(|&c| !row[c].is_zero()).expect("pivot row");
        pivots.push(col);
    }
    let mut x = vec![RatFn::zero(); n];
    for (row, &col) in aug.iter().zip(&pivots) {
        x[col] = row[n].clone();
    }
    if rank == n {
        return LinearSolution::Unique(x);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![RatFn::zero(); n];
            v[f] = RatFn::one();
            for (row, &col) in aug.iter().zip(&pivots) {
                v[col] = -&row[f];
            }
            v
        })
        .collect();
    LinearSolution::Underdetermined {
        particular: x,
        kernel,
        free,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> RatFn {
        RatFn::from_int(n)
    }

    #[test]
    fn determinant_of_dependent_rows_is_zero() {
        // Rows of the frame d/dy, 2xy d/dz, d/dz in (x, y, z) coordinates.
        let two_xy = &(&r(2) * &RatFn::var("x")) * &RatFn::var("y");
        let m = vec![
            vec![r(0), r(1), r(0)],
            vec![r(0), r(0), two_xy],
            vec![r(0), r(0), r(1)],
        ];
        assert!(determinant(&m).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let y = RatFn::var("y");
        let m = vec![vec![y.clone(), r(1)], vec![r(0), r(2)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
    }

    #[test]
    fn unique_solution_over_function_field() {
        // 4/y^3 = -(2/y^2) a + b ; 0 = -b
        let y = RatFn::var("y");
        let a = vec![
            vec![-(&r(2) / &y.pow(2).unwrap()), r(1)],
            vec![r(0), r(-1)],
        ];
        let b = vec![&r(4) / &y.pow(3).unwrap(), r(0)];
        match solve(&a, &b) {
            LinearSolution::Unique(x) => {
                assert_eq!(x[0], &r(-2) / &y);
                assert!(x[1].is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_system_reports_residual() {
        let a = vec![vec![r(1)], vec![r(1)]];
        let b = vec![r(0), r(2)];
        match solve(&a, &b) {
            LinearSolution::Inconsistent {
                least_squares,
                residual,
            } => {
                assert_eq!(least_squares, vec![r(1)]);
                assert_eq!(residual, vec![r(-1), r(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn underdetermined_kernel() {
        let a = vec![vec![r(1), r(1)]];
        let b = vec![r(3)];
        match solve(&a, &b) {
            LinearSolution::Underdetermined {
                particular,
                kernel,
                free,
            } => {
                assert_eq!(particular, vec![r(3), r(0)]);
                assert_eq!(kernel, vec![vec![r(-1), r(1)]]);
                assert_eq!(free, vec![1]);
            }
            other => panic!("{other:?}"),
        }
    }
}
