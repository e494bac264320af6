//! Dense exact linear algebra over the coefficient field Q(q, r).
//!
//! Plain Gaussian elimination; matrix sizes here stay small (the largest
//! systems are skew-inverse solves and intertwiner constraint systems), so
//! exactness wins over sophistication.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.clone() + b.clone();
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = a.clone() - b.clone();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.clone() * s.clone();
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    /// Row-reduce in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr >= self.rows {
                break;
            }
            let found = (pr..self.rows).find(|&i| !self[(i, col)].is_zero());
            let Some(sr) = found else { continue };
            if sr != pr {
                for j in 0..self.cols {
                    let a = self[(sr, j)].clone();
                    let b = self[(pr, j)].clone();
                    self[(sr, j)] = b;
                    self[(pr, j)] = a;
                }
            }
            let inv = self[(pr, col)].inv().expect("pivot is nonzero");
            for j in col..self.cols {
                self[(pr, j)] = self[(pr, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i == pr || self[(i, col)].is_zero() {
                    continue;
                }
                let f = self[(i, col)].clone();
                for j in col..self.cols {
                    self[(i, j)] = self[(i, j)].clone() - f.clone() * self[(pr, j)].clone();
                }
            }
            pivots.push(col);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(row, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = b if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse; None when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let pivots = aug.rref();
        if pivots.iter().filter(|&&p| p < n).count() != n {
            return None;
        }
        let mut inv = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

/// Kronecker product a (x) b.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zero(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    if b[(k, l)].is_zero() {
                        continue;
                    }
                    out[(i * b.rows + k, j * b.cols + l)] = a[(i, j)].clone() * b[(k, l)].clone();
                }
            }
        }
    }
    out
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// Precomputed reduction of a full-column-rank matrix, for expressing many
/// vectors in the same column basis.
pub struct BasisSolver {
    reduced: Mat,
    pivots: Vec<usize>,
    cols: usize,
}

impl BasisSolver {
    /// `basis` has one column per basis vector. Returns None when the columns
    /// are linearly dependent.
    pub fn new(basis: Mat) -> Option<Self> {
        let cols = basis.cols;
        // Keep [A | I] reduced so any b can be expressed later.
        let n = basis.rows;
        let mut aug = Mat::zero(n, cols + n);
        for i in 0..n {
            for j in 0..cols {
                aug[(i, j)] = basis[(i, j)].clone();
            }
            aug[(i, cols + i)] = Scalar::one();
        }
        let pivots = aug.rref();
        let rank = pivots.iter().filter(|&&p| p < cols).count();
        if rank != cols {
            return None;
        }
        Some(BasisSolver {
            reduced: aug,
            pivots,
            cols,
        })
    }

    /// Coordinates x with basis * x = b, or None when b is outside the span.
    pub fn express(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        // Apply the recorded row operations to b: the trailing identity block
        // of the reduced augmented matrix is exactly the transform T with
        // T * basis = rref(basis).
        let n = b.len();
        let tb: Vec<Scalar> = (0..self.reduced.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..n {
                    let t = &self.reduced[(i, self.cols + j)];
                    if !t.is_zero() && !b[j].is_zero() {
                        acc = acc + t.clone() * b[j].clone();
                    }
                }
                acc
            })
            .collect();
        let mut x = vec![Scalar::zero(); self.cols];
        let mut seen = 0;
        for (row, &pc) in self.pivots.iter().enumerate() {
            if pc < self.cols {
                x[pc] = tb[row].clone();
                seen += 1;
            }
        }
        debug_assert_eq!(seen, self.cols);
        // Rows beyond the pivot rows must have zero transformed entries,
        // otherwise b is outside the column span.
        for (row, v) in tb.iter().enumerate() {
            let is_pivot_row = row < self.pivots.len() && self.pivots[row] < self.cols;
            if !is_pivot_row && !v.is_zero() {
                return None;
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Scalar::q();
        let m = Mat::from_rows(vec![vec![q.clone(), s(1)], vec![s(1), Scalar::q_pow(-1)]]);
        // det = 1 - 1 = 0: singular
        assert!(m.inverse().is_none());
        let m2 = Mat::from_rows(vec![vec![q.clone(), s(1)], vec![s(0), Scalar::q_int(2)]]);
        let inv = m2.inverse().unwrap();
        assert_eq!(m2.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let q = Scalar::q();
        let m = Mat::from_rows(vec![
            vec![s(1), q.clone(), s(0)],
            vec![s(2), q.clone() * s(2), s(0)],
        ]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Mat::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(m.solve(&[s(1), s(2)]).is_some());
        assert!(m.solve(&[s(1), s(3)]).is_none());
    }

    #[test]
    fn basis_solver_expresses_members_only() {
        let q = Scalar::q();
        // Columns: (1, 0, 1), (q, 1, 0)
        let b = Mat::from_rows(vec![
            vec![s(1), q.clone()],
            vec![s(0), s(1)],
            vec![s(1), s(0)],
        ]);
        let solver = BasisSolver::new(b).unwrap();
        let target = vec![s(1) + q.clone() * s(3), s(3), s(1)];
        let x = solver.express(&target).unwrap();
        assert_eq!(x, vec![s(1), s(3)]);
        assert!(solver.express(&[s(0), s(0), s(1)]).is_none());
    }
}
