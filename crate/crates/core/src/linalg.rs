//! Small dense matrices over exact rationals, plus nullspace computation.
//!
//! Matrices here are the transition matrices of the automaticity module and
//! the constraint systems of the equation-derivation module. Entries are
//! normalized rationals, so structural equality and hashing are sound.

use num_traits::{One, Zero};

use crate::algebra::{rat_to_string, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::algebra::rat_from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        out
    }

    /// Column-vector action `self * v`.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-vector action `v^T * self`.
    pub fn apply_left(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = Rat::zero();
                for i in 0..self.rows {
                    if !v[i].is_zero() {
                        let a = self.get(i, j);
                        if !a.is_zero() {
                            acc += &v[i] * a;
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Submatrix `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut out = Matrix::zero(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rat_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental reduced row echelon form over the rationals.
///
/// Constraint rows are fed one at a time; at most `cols` rows are retained,
/// so feeding many redundant constraints stays cheap.
pub struct Rref {
    cols: usize,
    /// (pivot column, fully reduced row with 1 at the pivot), sorted by pivot.
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Rref {
    pub fn new(cols: usize) -> Self {
        Rref { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce and insert one constraint row. Returns true when it increased
    /// the rank.
    pub fn push(&mut self, mut row: Vec<Rat>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (pc, prow) in &self.rows {
            if !row[*pc].is_zero() {
                let factor = row[*pc].clone();
                for j in 0..self.cols {
                    if !prow[j].is_zero() {
                        let t = &factor * &prow[j];
                        row[j] -= t;
                    }
                }
            }
        }
        let Some(pivot) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = Rat::one() / &row[pivot];
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        // keep existing rows reduced against the new pivot
        for (_, prow) in self.rows.iter_mut() {
            if !prow[pivot].is_zero() {
                let factor = prow[pivot].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        let t = &factor * &row[j];
                        prow[j] -= t;
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(pc, _)| *pc < pivot);
        self.rows.insert(at, (pivot, row));
        true
    }

    /// Nullspace basis, one vector per free column, ordered by free column
    /// index. Each vector has 1 at its free column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let pivot_cols: Vec<usize> = self.rows.iter().map(|(pc, _)| *pc).collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (pc, prow) in &self.rows {
                if !prow[f].is_zero() {
                    v[*pc] = -prow[f].clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_from_i64;

    fn v(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&x| rat_from_i64(x)).collect()
    }

    #[test]
    fn matrix_product() {
        let a = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), Matrix::from_i64_rows(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&Matrix::identity(2)), a);
    }

    #[test]
    fn apply_both_sides() {
        let a = Matrix::from_i64_rows(&[&[1, -1], &[0, 2]]);
        assert_eq!(a.apply(&v(&[3, 1])), v(&[2, 2]));
        assert_eq!(a.apply_left(&v(&[1, 1])), v(&[1, 1]));
    }

    #[test]
    fn nullspace_of_dependent_rows() {
        // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
        let mut r = Rref::new(3);
        assert!(r.push(v(&[1, 1, 1])));
        assert!(r.push(v(&[1, 0, -1])));
        assert!(!r.push(v(&[2, 1, 0])));
        let ns = r.nullspace();
        assert_eq!(ns.len(), 1);
        let k = &ns[0];
        // check A k = 0
        assert!((&k[0] + &k[1] + &k[2]).is_zero());
        assert!((&k[0] - &k[2]).is_zero());
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        let mut r = Rref::new(2);
        r.push(v(&[1, 0]));
        r.push(v(&[0, 1]));
        assert!(r.nullspace().is_empty());
    }
}
