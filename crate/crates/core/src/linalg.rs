//! Dense exact linear algebra over any [`Ring`] whose nonzero elements we
//! can invert (Q(i), the parametric fraction field, jets with invertible
//! constant term).

use crate::scalars::Ring;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

/// Pivot choice for Gauss-Jordan elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    /// First nonzero entry at or below the current row.
    First,
    /// Nonzero entry whose row has the fewest nonzeros; a different
    /// elimination order used to cross-check ranks.
    Sparsest,
}

impl<C: Ring> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, C::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[C] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<C> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = C::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn choose_pivot(&self, col: usize, from: usize, strategy: Pivot) -> Option<usize> {
        let candidates = (from..self.rows).filter(|&r| self.get(r, col).is_unit());
        match strategy {
            Pivot::First => candidates.into_iter().next(),
            Pivot::Sparsest => candidates.min_by_key(|&r| self.row(r).iter().filter(|x| !x.is_zero()).count()),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, strategy: Pivot) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = m.choose_pivot(col, row, strategy) else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).try_inv().expect("nonzero pivot is invertible");
            for c in col..m.cols {
                let v = m.get(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let x = m.get(row, c);
                    if x.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).sub(&f.mul(x));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref(Pivot::First).1.len()
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank_bareiss(&self) -> usize {
        let mut m = self.clone();
        let mut prev = C::one();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = m.choose_pivot(col, rank, Pivot::First) else { continue };
            m.swap_rows(rank, p);
            let piv = m.get(rank, col).clone();
            let prev_inv = prev.try_inv().expect("previous pivot nonzero");
            for r in rank + 1..m.rows {
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = piv.mul(m.get(r, c)).sub(&f.mul(m.get(rank, c))).mul(&prev_inv);
                    m.set(r, c, v);
                }
            }
            prev = piv;
            rank += 1;
        }
        rank
    }

    /// Determinant by elimination over the fraction field.
    pub fn determinant(&self) -> C {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = C::one();
        for col in 0..m.cols {
            let Some(p) = m.choose_pivot(col, col, Pivot::First) else { return C::zero() };
            if p != col {
                m.swap_rows(col, p);
                det = det.neg();
            }
            let piv = m.get(col, col).clone();
            det = det.mul(&piv);
            let inv = piv.try_inv().expect("nonzero pivot");
            for r in col + 1..m.rows {
                let f = m.get(r, col).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).sub(&f.mul(m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, C::one());
        }
        let (red, pivots) = aug.rref(Pivot::First);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<C>> {
        let (red, pivots) = self.rref(Pivot::First);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = red.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y^T A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<C>> {
        self.transpose().nullspace()
    }

    /// Some solution of `A x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref(Pivot::First);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(r, self.cols).clone();
        }
        Some(x)
    }
}

pub fn dot<C: Ring>(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc.add(&x.mul(y)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational as G;

    fn g(k: i64) -> G {
        G::from_int(k)
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_rows(vec![vec![g(1), G::i()], vec![G::i(), g(1)]]);
        assert_eq!(m.determinant(), g(2));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        // singular: [[1, t], [conj t, 1]] with |t| = 1
        let s = Matrix::from_rows(vec![vec![g(1), G::i()], vec![G::i().conj(), g(1)]]);
        assert!(s.inverse().is_none());
        assert!(s.determinant().is_zero());
    }

    #[test]
    fn ranks_agree_across_strategies() {
        let m = Matrix::from_rows(vec![
            vec![g(1), g(2), g(3)],
            vec![g(2), g(4), g(6)],
            vec![g(0), g(1), G::i()],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_bareiss(), 2);
        assert_eq!(m.rref(Pivot::Sparsest).1.len(), 2);
        for v in m.nullspace() {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
        for y in m.left_nullspace() {
            assert!(m.transpose().mul_vec(&y).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(vec![vec![g(1), g(1)], vec![g(2), g(2)]]);
        let x = m.solve(&[g(1), g(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![g(1), g(2)]);
        assert!(m.solve(&[g(1), g(3)]).is_none());
    }
}
