use std::fmt;

use crate::scalar::{DSquared, ExactScalar};

/// Dense matrix of exact scalars sharing one value of D².
#[derive(Debug, Clone)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
    ctx: DSquared,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize, ctx: DSquared) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
            ctx,
        }
    }

    pub fn identity(n: usize, ctx: DSquared) -> Self {
        Self::from_fn(n, n, ctx, |r, c| {
            if r == c {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: DSquared, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ScalarMatrix { rows, cols, data, ctx }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> DSquared {
        self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.data[r * self.cols + c] = v;
    }

    fn add(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        a.add(b, Some(self.ctx)).expect("addition with a context is total")
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = ScalarMatrix::zeros(self.rows, other.cols, self.ctx);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = self.add(out.get(r, c), &a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Tensor product, first factor most significant.
    pub fn kron(&self, other: &ScalarMatrix) -> ScalarMatrix {
        ScalarMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, self.ctx, |r, c| {
            let a = self.get(r / other.rows, c / other.cols);
            if a.is_zero() {
                return ExactScalar::zero();
            }
            a.mul(other.get(r % other.rows, c % other.cols))
        })
    }

    pub fn transpose(&self) -> ScalarMatrix {
        ScalarMatrix::from_fn(self.cols, self.rows, self.ctx, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &ExactScalar) -> ScalarMatrix {
        ScalarMatrix::from_fn(self.rows, self.cols, self.ctx, |r, c| self.get(r, c).mul(s))
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).fold(ExactScalar::zero(), |acc, i| self.add(&acc, self.get(i, i)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).eq_in(self.get(c, r), self.ctx)))
    }

    /// First entry where the two matrices differ in value.
    pub fn first_difference(&self, other: &ScalarMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| !self.get(r, c).eq_in(other.get(r, c), self.ctx))
    }

    pub fn eq_exact(&self, other: &ScalarMatrix) -> bool {
        self.first_difference(other).is_none()
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<ScalarMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = ScalarMatrix::identity(n, self.ctx);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p_inv = a.get(col, col).inv().ok()?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).neg();
                a.add_row_multiple(r, col, &f);
                inv.add_row_multiple(r, col, &f);
            }
        }
        Some(inv)
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ExactScalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return ExactScalar::zero();
            };
            if pivot != col {
                a.swap_rows(col, pivot);
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let p_inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).mul(&p_inv).neg();
                a.add_row_multiple(r, col, &f);
            }
        }
        det
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, i: usize, s: &ExactScalar) {
        for c in 0..self.cols {
            let v = self.get(i, c).mul(s);
            self.set(i, c, v);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &ExactScalar) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.add(self.get(dst, c), &s.mul(f));
            self.set(dst, c, v);
        }
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.get(r, c).reduced(self.ctx).to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> ScalarMatrix {
        ScalarMatrix::from_fn(rows.len(), rows[0].len(), DSquared(2), |r, c| {
            ExactScalar::from_integer(rows[r][c])
        })
    }

    #[test]
    fn inverse_and_det() {
        let m = int_matrix(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(inv.eq_exact(&int_matrix(&[&[1, -1], &[-1, 2]])));
        assert!(m.determinant().eq_in(&ExactScalar::one(), DSquared(2)));
        assert!(int_matrix(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(int_matrix(&[&[1, 2], &[2, 4]]).determinant().is_zero());
        let anti = int_matrix(&[&[0, 1], &[1, 0]]);
        assert!(anti.inverse().unwrap().eq_exact(&anti));
        assert!(anti.determinant().eq_in(&ExactScalar::from_integer(-1), DSquared(2)));
    }

    #[test]
    fn mixed_d_powers() {
        let ctx = DSquared(2);
        let d = ExactScalar::d_power(1);
        let m = ScalarMatrix::from_fn(2, 2, ctx, |r, c| if r == c { d.clone() } else { ExactScalar::zero() });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).eq_exact(&ScalarMatrix::identity(2, ctx)));
        assert!(m.determinant().eq_in(&ExactScalar::from_integer(2), ctx));
    }

    #[test]
    fn kron_shape() {
        let a = int_matrix(&[&[1, 2]]);
        let b = int_matrix(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert!(k.eq_exact(&int_matrix(&[&[0, 1, 0, 2], &[1, 0, 2, 0]])));
    }
}
