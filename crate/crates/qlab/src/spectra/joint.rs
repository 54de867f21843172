use crate::error::{Error, Result};
use crate::qcore::{cis, cluster, eigenvalues, CMatrix, Real, C};

/// Common eigenbasis of a commuting family.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectrum<T: Real> {
    /// Unit eigenvectors, one per column.
    pub vectors: CMatrix<T>,
    /// `values[j][i]`: eigenvalue of operator `i` on vector `j`.
    pub values: Vec<Vec<C<T>>>,
    /// Largest `|A v - a v| / max|A|` over operators and vectors.
    pub residual: T,
}

impl<T: Real> JointSpectrum<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, j: usize) -> Vec<C<T>> {
        self.vectors.column(j)
    }

    /// Eigenvalues of operator `i` across the basis.
    pub fn column(&self, i: usize) -> Vec<C<T>> {
        self.values.iter().map(|v| v[i]).collect()
    }
}

/// `v^dagger A v / v^dagger v`.
pub fn rayleigh<T: Real>(a: &CMatrix<T>, v: &[C<T>]) -> C<T> {
    let av = a.matvec(v);
    let num: C<T> = v.iter().zip(&av).map(|(x, y)| x.conj() * *y).sum();
    let den: T = v.iter().map(|x| x.norm_sqr()).sum();
    num / den
}

/// `|A v - lambda v| / (max|A| |v|)`, or the absolute value for a zero operator.
pub fn eig_residual<T: Real>(a: &CMatrix<T>, v: &[C<T>], lambda: C<T>) -> T {
    let av = a.matvec(v);
    let r: T = av.iter().zip(v).map(|(x, y)| (*x - *y * lambda).norm_sqr()).sum::<T>().sqrt();
    let nv: T = v.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
    let s = a.max_abs();
    if s == T::zero() {
        r / nv
    } else {
        r / (s * nv)
    }
}

fn normalize<T: Real>(v: &mut [C<T>]) {
    let n: T = v.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
    let mut big = 0;
    for (i, c) in v.iter().enumerate() {
        if c.norm() > v[big].norm() * (T::one() + T::of(1e-9)) {
            big = i;
        }
    }
    let ph = if v[big].norm() > T::zero() { v[big].conj() / v[big].norm() } else { C::new(T::one(), T::zero()) };
    for x in v.iter_mut() {
        *x = *x * ph / n;
    }
}

/// Simultaneous eigenbasis of pairwise commuting square matrices.
///
/// A fixed generic combination of the (normalized) operators is diagonalized;
/// its eigenspaces are then resolved by null spaces so that genuine
/// degeneracies of the whole family keep a full basis.
pub fn joint_spectrum<T: Real>(ops: &[CMatrix<T>], tol: T) -> Result<JointSpectrum<T>> {
    let first = ops.first().ok_or_else(|| Error::Precondition("empty operator family".into()))?;
    let n = first.rows();
    if ops.iter().any(|o| o.rows() != n || o.cols() != n) {
        return Err(Error::Dimension("operator family must share one square shape".into()));
    }
    for i in 0..ops.len() {
        for j in 0..i {
            let s = ops[i].max_abs() * ops[j].max_abs();
            if s == T::zero() {
                continue;
            }
            let r = ops[i].commutator(&ops[j]).max_abs() / s;
            if r > tol {
                return Err(Error::NonCommuting(r.to_f64_lossy()));
            }
        }
    }
    let mut comb = CMatrix::zeros(n, n);
    for (i, o) in ops.iter().enumerate() {
        let s = o.max_abs();
        if s == T::zero() {
            continue;
        }
        let c = cis(T::of(0.7 + 1.9 * i as f64)) * T::of(1.0 + 0.37 * i as f64) / s;
        comb = &comb + &o.scale(c);
    }
    let ev = eigenvalues(&comb)?;
    let scale = T::one().max(comb.max_abs());
    let groups = cluster(&ev, T::of(1e-7) * scale);
    let mut cols: Vec<Vec<C<T>>> = Vec::new();
    for (lam, mult) in groups {
        let shifted = &comb - &CMatrix::identity(n).scale(lam);
        let mut rel = T::of(1e-9);
        let mut ns = shifted.null_space(rel);
        while ns.cols() < mult && rel < T::of(1e-4) {
            rel *= T::of(10.0);
            ns = shifted.null_space(rel);
        }
        let mut basis = gram_schmidt(&ns);
        if basis.is_empty() {
            return Err(Error::NoConvergence(0));
        }
        // A defective cluster yields fewer vectors than its multiplicity.
        basis.truncate(mult.max(1));
        cols.extend(basis);
    }
    let values: Vec<Vec<C<T>>> = cols.iter().map(|v| ops.iter().map(|o| rayleigh(o, v)).collect()).collect();
    let mut residual = T::zero();
    for (v, vals) in cols.iter().zip(&values) {
        for (o, l) in ops.iter().zip(vals) {
            residual = residual.max(eig_residual(o, v, *l));
        }
    }
    let vectors = CMatrix::from_fn(n, cols.len(), |i, j| cols[j][i]);
    Ok(JointSpectrum { vectors, values, residual })
}

fn gram_schmidt<T: Real>(m: &CMatrix<T>) -> Vec<Vec<C<T>>> {
    let mut out: Vec<Vec<C<T>>> = Vec::new();
    for j in 0..m.cols() {
        let mut v = m.column(j);
        for u in &out {
            let p: C<T> = u.iter().zip(&v).map(|(a, b)| a.conj() * *b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= p * *y;
            }
        }
        let n: T = v.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
        if n > T::of(1e-10) {
            normalize(&mut v);
            out.push(v);
        }
    }
    out
}
