use super::eig::eigenvalues;
use super::matrix::CMatrix;
use super::real::{one, zero, Real, C};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    W,
}

/// Polynomial with complex coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly<T: Real> {
    coeffs: Vec<C<T>>,
    var: Var,
}

impl<T: Real> ComplexPoly<T> {
    pub fn new(mut coeffs: Vec<C<T>>, var: Var) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() == T::zero()) {
            coeffs.pop();
        }
        ComplexPoly { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        ComplexPoly { coeffs: Vec::new(), var }
    }

    pub fn from_roots(roots: &[C<T>], lead: C<T>, var: Var) -> Self {
        let mut c = vec![lead];
        for r in roots {
            let mut next = vec![zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += *a;
                next[i] -= *a * *r;
            }
            c = next;
        }
        Self::new(c, var)
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C<T> {
        self.coeffs.last().copied().unwrap_or_else(zero)
    }

    /// Largest coefficient magnitude.
    pub fn norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |a, c| a.max(c.norm()))
    }

    pub fn eval(&self, x: C<T>) -> C<T> {
        self.coeffs.iter().rev().fold(zero(), |acc, c| acc * x + *c)
    }

    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, a)| *a * T::of(i as f64)).collect();
        Self::new(c, self.var)
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::new(self.coeffs.iter().map(|c| *c * s).collect(), self.var)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[C<T>], i: usize| v.get(i).copied().unwrap_or_else(zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect(), self.var)
    }

    /// Zero coefficients whose magnitude is below `rel` times the largest.
    pub fn snap(&self, rel: T) -> Self {
        let cut = self.norm() * rel;
        Self::new(self.coeffs.iter().map(|c| if c.norm() < cut { zero() } else { *c }).collect(), self.var)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        Self::new(self.coeffs.iter().map(|c| *c / l).collect(), self.var)
    }

    /// All complex roots with multiplicity, each polished by Newton steps.
    pub fn roots(&self, tol: T) -> Result<Vec<C<T>>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p = self.snap(tol.min(T::of(1e-10)));
        let low = p.coeffs.iter().take_while(|c| c.norm() == T::zero()).count();
        let mut out = vec![zero(); low];
        let rest = Self::new(p.coeffs[low..].to_vec(), self.var);
        let d = rest.degree().unwrap_or(0);
        if d == 0 {
            return Ok(out);
        }
        let m = rest.monic();
        let mut comp = CMatrix::zeros(d, d);
        for j in 0..d {
            comp[(0, j)] = -m.coeffs[d - 1 - j];
        }
        for i in 1..d {
            comp[(i, i - 1)] = one();
        }
        let dp = m.derivative();
        for r in eigenvalues(&comp)? {
            let mut x = r;
            for _ in 0..4 {
                let fx = m.eval(x);
                let dfx = dp.eval(x);
                if dfx.norm() == T::zero() {
                    break;
                }
                let nx = x - fx / dfx;
                if m.eval(nx).norm() < fx.norm() {
                    x = nx;
                } else {
                    break;
                }
            }
            out.push(x);
        }
        Ok(out)
    }
}

/// Newton interpolation through `(x, y)` samples.
pub fn interpolate<T: Real>(samples: &[(C<T>, C<T>)], var: Var) -> Result<ComplexPoly<T>> {
    let n = samples.len();
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (samples[i].0, samples[j].0);
            if (a - b).norm() <= T::of(1e-14) * T::one().max(a.norm()) {
                return Err(Error::DuplicateAbscissa);
            }
        }
    }
    let xs: Vec<C<T>> = samples.iter().map(|s| s.0).collect();
    let mut dd: Vec<C<T>> = samples.iter().map(|s| s.1).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Horner-style expansion of the Newton form into monomials.
    let mut coeffs: Vec<C<T>> = Vec::new();
    for i in (0..n).rev() {
        let mut next = vec![zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += *c;
            next[k] -= *c * xs[i];
        }
        next[0] += dd[i];
        coeffs = next;
    }
    Ok(ComplexPoly::new(coeffs, var).snap(T::of(1e-10)))
}

/// Group values lying within `reltol * max(1, |x|)` of each other.
pub fn cluster<T: Real>(xs: &[C<T>], reltol: T) -> Vec<(C<T>, usize)> {
    let mut out: Vec<(C<T>, usize, C<T>)> = Vec::new();
    for &x in xs {
        let hit = out.iter_mut().find(|(c, _, _)| (*c - x).norm() <= reltol * T::one().max(x.norm()));
        match hit {
            Some(entry) => {
                entry.1 += 1;
                entry.2 += x;
                entry.0 = entry.2 / T::of(entry.1 as f64);
            }
            None => out.push((x, 1, x)),
        }
    }
    out.into_iter().map(|(c, m, _)| (c, m)).collect()
}

pub fn poly_roots<T: Real>(p: &ComplexPoly<T>, tol: T) -> Result<Vec<C<T>>> {
    p.roots(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as Z;

    fn z(re: f64, im: f64) -> Z {
        Z::new(re, im)
    }

    #[test]
    fn trivial_interpolations() {
        let p = interpolate(&[(z(0., 0.), z(1., 0.)), (z(1., 0.), z(1., 0.))], Var::Z).unwrap();
        assert_eq!(p.degree(), Some(0));
        let p = interpolate(&[(z(0., 0.), z(0., 0.)), (z(1., 0.), z(1., 0.)), (z(-1., 0.), z(-1., 0.))], Var::Z).unwrap();
        assert_eq!(p.degree(), Some(1));
        assert!((p.coeffs()[1] - 1.0).norm() < 1e-14);
        assert_eq!(
            interpolate(&[(z(1., 0.), z(0., 0.)), (z(1., 0.), z(2., 0.))], Var::Z),
            Err(Error::DuplicateAbscissa)
        );
    }

    #[test]
    fn roots_of_unity_string() {
        let mu = z(0.7, 0.4);
        let p = ComplexPoly::new(vec![-mu * mu * mu, z(0., 0.), z(0., 0.), z(1., 0.)], Var::W);
        let r = p.roots(1e-12).unwrap();
        let q = Z::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        for want in [mu, mu * q, mu * q * q] {
            assert!(r.iter().any(|x| (x - want).norm() < 1e-12));
        }
        let sq = ComplexPoly::new(vec![z(-1., 0.), z(0., 0.), z(1., 0.)], Var::Z).roots(1e-12).unwrap();
        assert!(sq.iter().any(|x| (x - 1.0).norm() < 1e-14) && sq.iter().any(|x| (x + 1.0).norm() < 1e-14));
    }

    #[test]
    fn zero_roots_counted() {
        let p = ComplexPoly::from_roots(&[z(0., 0.), z(0., 0.), z(2., 1.)], z(3., 0.), Var::W);
        let r = p.roots(1e-12).unwrap();
        assert_eq!(r.iter().filter(|x| x.norm() == 0.0).count(), 2);
        assert_eq!(cluster(&r, 1e-6).len(), 2);
    }
}
