use super::matrix::CMatrix;
use super::real::{zero, Real, C};
use crate::error::{Error, Result};
use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub struct EigenResult<T: Real> {
    pub eigenvalues: Vec<C<T>>,
    /// Unit-norm eigenvectors stored as columns.
    pub eigenvectors: CMatrix<T>,
    /// `|A v - lambda v| / |A|` per pair.
    pub residuals: Vec<T>,
    pub tol: T,
}

impl<T: Real> EigenResult<T> {
    pub fn max_residual(&self) -> T {
        self.residuals.iter().fold(T::zero(), |a, &r| a.max(r))
    }

    pub fn vector(&self, i: usize) -> Vec<C<T>> {
        self.eigenvectors.column(i)
    }
}

fn lex(a: &C<f64>, b: &C<f64>) -> Ordering {
    a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Givens pair `(c, s)` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens<T: Real>(a: C<T>, b: C<T>) -> (T, C<T>) {
    let na = a.norm();
    let nb = b.norm();
    if nb == T::zero() {
        return (T::one(), zero());
    }
    if na == T::zero() {
        return (T::zero(), b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

/// Householder reduction to upper Hessenberg form, `A = Q H Q^H`.
fn hessenberg<T: Real>(a: &CMatrix<T>) -> (CMatrix<T>, CMatrix<T>) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<C<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let phase = if v[0].norm() == T::zero() { C::new(T::one(), T::zero()) } else { v[0] / v[0].norm() };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vn = v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt();
        if vn == T::zero() {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vn;
        }
        let two = T::of(2.0);
        // H <- (I - 2vv^H) H
        for j in 0..n {
            let mut s = zero::<T>();
            for (t, vi) in v.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + t, j)];
            }
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= *vi * s * two;
            }
        }
        // H <- H (I - 2vv^H), Q <- Q (I - 2vv^H)
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let mut s = zero::<T>();
                for (t, vi) in v.iter().enumerate() {
                    s += m[(i, k + 1 + t)] * *vi;
                }
                for (t, vi) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= s * vi.conj() * two;
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = zero();
        }
    }
    (h, q)
}

/// Complex Schur form `A = Z T Z^H` by shifted QR on the Hessenberg matrix.
fn schur<T: Real>(a: &CMatrix<T>, want_z: bool) -> Result<(CMatrix<T>, CMatrix<T>)> {
    let n = a.rows();
    let (mut h, mut z) = hessenberg(a);
    if n < 2 {
        return Ok((h, z));
    }
    let eps = T::epsilon();
    let anorm = a.norm_fro().max(T::min_positive_value());
    let budget = 100 * n.max(10);
    let mut total = 0usize;
    let mut hi = n - 1;
    let mut iter = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == T::zero() {
                s = anorm;
            }
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > budget {
            return Err(Error::NoConvergence(budget));
        }
        let a11 = h[(hi - 1, hi - 1)];
        let a12 = h[(hi - 1, hi)];
        let a21 = h[(hi, hi - 1)];
        let a22 = h[(hi, hi)];
        let mu = if iter % 11 == 10 {
            a22 + C::new(a21.norm() * T::of(0.75), a21.norm() * T::of(0.25))
        } else {
            let half = T::of(0.5);
            let m = (a11 + a22) * half;
            let d = ((a11 - a22) * half * ((a11 - a22) * half) + a12 * a21).sqrt();
            let r1 = m + d;
            let r2 = m - d;
            if (r1 - a22).norm() < (r2 - a22).norm() {
                r1
            } else {
                r2
            }
        };
        for j in l..=hi {
            h[(j, j)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for j in l..hi {
            let (c, s) = givens(h[(j, j)], h[(j + 1, j)]);
            for col in j..n {
                let x = h[(j, col)];
                let y = h[(j + 1, col)];
                h[(j, col)] = x * c + s * y;
                h[(j + 1, col)] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (t, (c, s)) in rots.into_iter().enumerate() {
            let j = l + t;
            let top = (j + 2).min(hi);
            for row in 0..=top {
                let x = h[(row, j)];
                let y = h[(row, j + 1)];
                h[(row, j)] = x * c + y * s.conj();
                h[(row, j + 1)] = -x * s + y * c;
            }
            if want_z {
                for row in 0..n {
                    let x = z[(row, j)];
                    let y = z[(row, j + 1)];
                    z[(row, j)] = x * c + y * s.conj();
                    z[(row, j + 1)] = -x * s + y * c;
                }
            }
        }
        for j in l..=hi {
            h[(j, j)] += mu;
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = zero();
        }
    }
    Ok((h, z))
}

/// Eigenvalues only, sorted lexicographically by (re, im).
pub fn eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<C<T>>> {
    if !a.is_square() {
        return Err(Error::Dimension("eigenvalues need a square matrix".into()));
    }
    let (t, _) = schur(a, false)?;
    let mut ev = t.diag();
    ev.sort_by(|x, y| lex(&to64(*x), &to64(*y)));
    Ok(ev)
}

fn to64<T: Real>(z: C<T>) -> C<f64> {
    C::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
}

/// Dense eigendecomposition of a general complex matrix.
pub fn eig_dense<T: Real>(a: &CMatrix<T>, tol: T) -> Result<EigenResult<T>> {
    if !a.is_square() {
        return Err(Error::Dimension("eig_dense needs a square matrix".into()));
    }
    let n = a.rows();
    let (t, z) = schur(a, true)?;
    let anorm = a.norm_fro();
    let small = (anorm * T::epsilon()).max(T::min_positive_value());
    let mut vecs = CMatrix::zeros(n, n);
    for k in 0..n {
        let lam = t[(k, k)];
        let mut x = vec![zero::<T>(); n];
        x[k] = C::new(T::one(), T::zero());
        for i in (0..k).rev() {
            let mut s = zero::<T>();
            for j in i + 1..=k {
                s += t[(i, j)] * x[j];
            }
            let mut d = t[(i, i)] - lam;
            if d.norm() < small {
                d = C::new(small, T::zero());
            }
            x[i] = -s / d;
        }
        let mut v = vec![zero::<T>(); n];
        for r in 0..n {
            let mut s = zero::<T>();
            for j in 0..=k {
                s += z[(r, j)] * x[j];
            }
            v[r] = s;
        }
        let nv = v.iter().fold(T::zero(), |s, x| s + x.norm_sqr()).sqrt();
        let mut big = 0;
        for (i, c) in v.iter().enumerate() {
            if c.norm() > v[big].norm() * (T::one() + T::of(1e-9)) {
                big = i;
            }
        }
        let phase = if v[big].norm() > T::zero() { v[big].conj() / v[big].norm() } else { C::new(T::one(), T::zero()) };
        for (r, c) in v.iter().enumerate() {
            vecs[(r, k)] = *c * phase / nv;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag = t.diag();
    order.sort_by(|&i, &j| lex(&to64(diag[i]), &to64(diag[j])));
    let eigenvalues: Vec<C<T>> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| vecs[(r, order[c])]);
    let scale = if anorm == T::zero() { T::one() } else { anorm };
    let residuals = (0..n)
        .map(|i| {
            let v = eigenvectors.column(i);
            let av = a.matvec(&v);
            av.iter().zip(&v).fold(T::zero(), |s, (x, y)| s + (*x - *y * eigenvalues[i]).norm_sqr()).sqrt() / scale
        })
        .collect();
    Ok(EigenResult { eigenvalues, eigenvectors, residuals, tol })
}
