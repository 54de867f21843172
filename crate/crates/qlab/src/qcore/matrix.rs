use super::real::{one, zero, Real, C};
use crate::error::{Error, Result};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<C<T>>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn from_diag(d: &[C<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn column_vector(v: &[C<T>]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C<T>]) {
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn diag(&self) -> Vec<C<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|x| x * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C<T> {
        self.diag().into_iter().fold(zero(), |a, b| a + b)
    }

    pub fn norm_fro(&self) -> T {
        self.data.iter().fold(T::zero(), |a, x| a + x.norm_sqr()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |a, x| a.max(x.norm()))
    }

    pub fn matmul(&self, b: &Self) -> Self {
        assert_eq!(self.cols, b.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let brow = &b.data[k * b.cols..(k + 1) * b.cols];
                for (o, bv) in orow.iter_mut().zip(brow) {
                    *o += a * *bv;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(zero(), |a, (x, y)| a + *x * *y))
            .collect()
    }

    pub fn kron(&self, b: &Self) -> Self {
        let (r, c) = (self.rows * b.rows, self.cols * b.cols);
        Self::from_fn(r, c, |i, j| self[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)])
    }

    pub fn powi(&self, n: usize) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = out.matmul(self);
        }
        out
    }

    pub fn commutator(&self, b: &Self) -> Self {
        &self.matmul(b) - &b.matmul(self)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Entries at strided positions `(r0 + i*step, c0 + j*step)`.
    pub fn strided(&self, r0: usize, c0: usize, step: usize) -> Self {
        let r = (self.rows - r0).div_ceil(step);
        let c = (self.cols - c0).div_ceil(step);
        Self::from_fn(r, c, |i, j| self[(r0 + i * step, c0 + j * step)])
    }

    /// LU with partial pivoting; `Singular` on a vanishing pivot.
    fn lu(&self) -> Result<(Self, Vec<usize>)> {
        if !self.is_square() {
            return Err(Error::Dimension("LU needs a square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = self.max_abs();
        if scale == T::zero() {
            return Err(Error::Singular);
        }
        for k in 0..n {
            let mut p = k;
            let mut best = a[(k, k)].norm();
            for i in k + 1..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= scale * T::epsilon() * T::of(n as f64) {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let piv = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                a[(i, k)] = f;
                if f.norm() == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        Ok((a, perm))
    }

    pub fn solve(&self, b: &Self) -> Result<Self> {
        let (lu, perm) = self.lu()?;
        let n = self.rows;
        let mut x = Self::from_fn(n, b.cols, |i, j| b[(perm[i], j)]);
        for c in 0..b.cols {
            for i in 0..n {
                let mut s = x[(i, c)];
                for k in 0..i {
                    s -= lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s / lu[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Result<C<T>> {
        if !self.is_square() {
            return Err(Error::Dimension("det needs a square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut acc = one::<T>();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).unwrap_or(std::cmp::Ordering::Equal)).unwrap_or(k);
            if a[(p, k)].norm() == T::zero() {
                return Ok(C::new(T::zero(), T::zero()));
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                acc = -acc;
            }
            let piv = a[(k, k)];
            acc *= piv;
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                for j in k + 1..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        Ok(acc)
    }

    /// Orthonormal-free basis of the right null space, from Gaussian
    /// elimination with complete pivoting. Columns of the result span it.
    pub fn null_space(&self, rel_tol: T) -> Self {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut colperm: Vec<usize> = (0..n).collect();
        let scale = self.max_abs();
        let mut rank = 0;
        while rank < m.min(n) {
            let (mut pi, mut pj, mut best) = (rank, rank, T::zero());
            for i in rank..m {
                for j in rank..n {
                    let v = a[(i, j)].norm();
                    if v > best {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if best <= rel_tol * scale || best == T::zero() {
                break;
            }
            for j in 0..n {
                a.data.swap(rank * n + j, pi * n + j);
            }
            for i in 0..m {
                a.data.swap(i * n + rank, i * n + pj);
            }
            colperm.swap(rank, pj);
            let piv = a[(rank, rank)];
            for j in 0..n {
                a[(rank, j)] /= piv;
            }
            for i in 0..m {
                if i == rank {
                    continue;
                }
                let f = a[(i, rank)];
                if f.norm() == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a[(rank, j)];
                    a[(i, j)] -= f * v;
                }
            }
            rank += 1;
        }
        let free = n - rank;
        let mut out = Self::zeros(n, free);
        for f in 0..free {
            let jf = rank + f;
            out[(colperm[jf], f)] = one();
            for r in 0..rank {
                out[(colperm[r], f)] = -a[(r, jf)];
            }
        }
        out
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, b: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&b.data).map(|(x, y)| *x + *y).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, b: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&b.data).map(|(x, y)| *x - *y).collect(),
        }
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, b: &CMatrix<T>) -> CMatrix<T> {
        self.matmul(b)
    }
}

impl<T: Real> Mul<C<T>> for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, s: C<T>) -> CMatrix<T> {
        self.scale(s)
    }
}

impl<T: Real> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        self.map(|x| -x)
    }
}

/// `max|A - B| / max(max|A|, max|B|, floor)`.
pub fn rel_residual<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, floor: T) -> T {
    let d = (a - b).max_abs();
    let s = a.max_abs().max(b.max_abs()).max(floor);
    if s == T::zero() {
        T::zero()
    } else {
        d / s
    }
}
