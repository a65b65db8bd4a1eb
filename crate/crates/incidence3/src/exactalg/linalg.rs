//! Exact Gaussian elimination: rank, reduced echelon form and nullspace
//! bases with a fixed convention (pivots normalized to 1, pivot columns
//! ascending) so that outputs are bit-identical across runs.

use crate::error::{Error, Result};
use crate::exactalg::field::{Field, Scalar};

/// A dense matrix over one field, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize) -> Matrix {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::RaggedMatrix);
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for s in &row {
                if s.field() != &field {
                    return Err(Error::FieldMismatch);
                }
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::new(field.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize; // pivot row
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            // first nonzero entry at or below pr (deterministic choice)
            let Some(sel) = (pr..self.rows).find(|&r| !self.at(r, pc).is_zero()) else {
                continue;
            };
            if sel != pr {
                for c in 0..self.cols {
                    self.data.swap(sel * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = f.inv(self.at(pr, pc)).expect("pivot nonzero");
            for c in pc..self.cols {
                let v = f.mul(self.at(pr, c), &inv);
                *self.at_mut(pr, c) = v;
            }
            for r in 0..self.rows {
                if r != pr && !self.at(r, pc).is_zero() {
                    let factor = self.at(r, pc).clone();
                    for c in pc..self.cols {
                        let v = f.sub(self.at(r, c), &f.mul(&factor, self.at(pr, c)));
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

/// Rank and a deterministic nullspace basis.
///
/// The basis follows the echelon convention: one vector per free column j
/// (ascending), with entry 1 at j and minus the reduced-echelon entry at
/// each pivot position.
pub fn rank_and_nullspace(m: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    let f = m.field.clone();
    let mut rr = m.clone();
    let pivots = rr.rref();
    let rank = pivots.len();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for j in 0..m.cols {
        if pivot_set.contains(&j) {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[j] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(rr.at(i, j));
        }
        basis.push(v);
    }
    (rank, basis)
}

/// Determinant of a small square matrix by ordinary elimination.
pub fn determinant(m: &Matrix) -> Result<Scalar> {
    if m.rows != m.cols {
        return Err(Error::RaggedMatrix);
    }
    let f = m.field.clone();
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&r| !a.at(r, col).is_zero()) else {
            return Ok(f.zero());
        };
        if sel != col {
            for c in 0..n {
                a.data.swap(sel * n + c, col * n + c);
            }
            det = f.neg(&det);
        }
        let piv = a.at(col, col).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv)?;
        for r in col + 1..n {
            if a.at(r, col).is_zero() {
                continue;
            }
            let factor = f.mul(a.at(r, col), &inv);
            for c in col..n {
                let v = f.sub(a.at(r, c), &f.mul(&factor, a.at(col, c)));
                *a.at_mut(r, c) = v;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn mat_i64(field: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field.clone(),
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_rank() {
        let m = Matrix::identity(q(), 3);
        let (rank, ns) = rank_and_nullspace(&m);
        assert_eq!(rank, 3);
        assert!(ns.is_empty());
    }

    #[test]
    fn zero_matrix_nullspace() {
        let m = Matrix::new(q(), 2, 5);
        let (rank, ns) = rank_and_nullspace(&m);
        assert_eq!(rank, 0);
        assert_eq!(ns.len(), 5);
        for (j, v) in ns.iter().enumerate() {
            for (i, s) in v.iter().enumerate() {
                assert_eq!(s.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn rank_one_nullspace_convention() {
        // [[1,2],[2,4]] -> rank 1, nullspace spanned by (-2, 1) under the
        // fixed echelon convention (free column carries the 1).
        let m = mat_i64(&q(), &[&[1, 2], &[2, 4]]);
        let (rank, ns) = rank_and_nullspace(&m);
        assert_eq!(rank, 1);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q().from_int(-2), q().from_int(1)]);
    }

    #[test]
    fn rank_nullity_random_matrices() {
        // rank + nullity = cols, 200 seeded matrices per field
        for field in [q(), Field::parse("F7").unwrap(), Field::parse("F2^2").unwrap()] {
            let mut state = 0x1234_5678_9abc_def0u64;
            let mut next = move || {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                state
            };
            for _ in 0..200 {
                let rows = (next() % 5 + 1) as usize;
                let cols = (next() % 5 + 1) as usize;
                let mut m = Matrix::new(field.clone(), rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        *m.at_mut(r, c) = field.from_int((next() % 7) as i64 - 3);
                    }
                }
                let (rank, ns) = rank_and_nullspace(&m);
                assert_eq!(rank + ns.len(), cols);
                // every basis vector really is in the kernel
                for v in &ns {
                    for r in 0..rows {
                        let mut acc = field.zero();
                        for c in 0..cols {
                            acc = field.add(&acc, &field.mul(m.at(r, c), &v[c]));
                        }
                        assert!(acc.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn determinant_matches_cofactor_small() {
        let m = mat_i64(&q(), &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        // cofactor by hand: 2*(12-1) - 1*(4-0) + 0 = 18
        assert_eq!(determinant(&m).unwrap(), q().from_int(18));
        let sing = mat_i64(&q(), &[&[1, 2], &[2, 4]]);
        assert!(determinant(&sing).unwrap().is_zero());
    }
}
