use super::{Field, Poly};

/// Dense row-major matrix over a field.
///
/// The matrix keeps a copy of the field's one so empty shapes still know
/// their field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    one: F,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, one: &F) -> Self {
        Matrix { rows, cols, data: vec![one.zero_like(); rows * cols], one: one.one_like() }
    }

    pub fn identity(n: usize, one: &F) -> Self {
        let mut m = Matrix::zeros(n, n, one);
        for i in 0..n {
            m.set(i, i, one.one_like());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>, one: &F) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), one: one.one_like() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn one(&self) -> &F {
        &self.one
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols, &self.one);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, one: self.one.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, one: self.one.clone() }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(self.one.zero_like(), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect()
    }

    /// `q(M)` for a square matrix.
    pub fn eval_poly(&self, q: &Poly<F>) -> Self {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut acc = Matrix::zeros(self.rows, self.cols, &self.one);
        for c in q.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::identity(self.rows, &self.one).scale(c));
        }
        acc
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Columns are scanned left to right; among candidate pivot rows the one
    /// with the smallest `size_hint` wins, ties going to the lowest row index.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .filter(|&i| !self.get(i, c).is_zero())
                .min_by_key(|&i| (self.get(i, c).size_hint(), i));
            let Some(piv) = best else { continue };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().unwrap();
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rj = self.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).sub(&f.mul(rj));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right null space `{v : M v = 0}`; empty iff the columns are independent.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![self.one.zero_like(); self.cols];
            v[free] = self.one.clone();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = m.get(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Monic minimal polynomial, found as the first linear dependence among
    /// `I, M, M^2, ...` viewed as vectors of length `n^2`.
    pub fn min_poly(&self) -> Poly<F> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut powers: Vec<Matrix<F>> = vec![Matrix::identity(n, &self.one)];
        loop {
            let k = powers.len();
            let mut stacked = Matrix::zeros(n * n, k, &self.one);
            for (j, pw) in powers.iter().enumerate() {
                for (i, x) in pw.data.iter().enumerate() {
                    stacked.set(i, j, x.clone());
                }
            }
            if let Some(v) = stacked.kernel().into_iter().next() {
                // previous powers are independent, so the last entry is nonzero
                let lead = v[k - 1].inv().expect("dependence involves the newest power");
                return Poly::new(v.iter().map(|x| x.mul(&lead)).collect());
            }
            let next = powers.last().unwrap().mul(self);
            powers.push(next);
        }
    }
}
