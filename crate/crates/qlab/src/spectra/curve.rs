use super::joint::{eig_residual, rayleigh};
use crate::error::{Error, Result};
use crate::intertwiner::prime_params;
use crate::qcore::{cis, interpolate, ipow, CMatrix, ComplexPoly, Real, RootContext, Var, C};
use crate::qop::{default_convention, q_chain, FEConvention};
use crate::repz::{RepParams, SpecZPoint};
use crate::sixvertex::weights_ab;

/// Eigenvalue polynomial together with the `mu` converting `z` to `w = z/mu`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve<T: Real> {
    pub poly: ComplexPoly<T>,
    /// Ignored for curves in `z`.
    pub mu: C<T>,
}

impl<T: Real> SpectralCurve<T> {
    pub fn in_z(poly: ComplexPoly<T>) -> Self {
        SpectralCurve { poly, mu: C::new(T::one(), T::zero()) }
    }

    pub fn arg(&self, z: C<T>) -> C<T> {
        match self.poly.var() {
            Var::W => z / self.mu,
            Var::Z => z,
        }
    }

    pub fn eval_z(&self, z: C<T>) -> C<T> {
        self.poly.eval(self.arg(z))
    }

    /// `sum |c_k| |x|^k`, the size against which a value at `z` is small.
    pub fn magnitude(&self, z: C<T>) -> T {
        let x = self.arg(z).norm();
        self.poly.coeffs().iter().rev().fold(T::zero(), |acc, c| acc * x + c.norm())
    }

    pub fn to_z(&self, root: C<T>) -> C<T> {
        match self.poly.var() {
            Var::W => root * self.mu,
            Var::Z => root,
        }
    }
}

/// `count` distinct spectral parameters away from the unit circle and from
/// the real axis.
pub fn default_samples<T: Real>(count: usize) -> Vec<C<T>> {
    (0..count)
        .map(|j| {
            let r = T::of(0.55 + 0.07 * j as f64);
            cis(T::of(0.3 + 2.4 * j as f64)) * r
        })
        .collect()
}

/// Rayleigh quotients of `v` against `op_at(z)` interpolated in the curve
/// variable. Fails with `EigvecDrift` if `v` stops being an eigenvector.
pub fn operator_curve<T: Real, F>(op_at: F, v: &[C<T>], zs: &[C<T>], var: Var, mu: C<T>, tol: T) -> Result<SpectralCurve<T>>
where
    F: Fn(C<T>) -> Result<CMatrix<T>>,
{
    let mut samples = Vec::with_capacity(zs.len());
    for &z in zs {
        let a = op_at(z)?;
        let mut lam = rayleigh(&a, v);
        let r = eig_residual(&a, v, lam);
        // round-off sized values of an identically vanishing eigenvalue
        if lam.norm() <= T::of(1e-12) * a.max_abs() {
            lam = C::new(T::zero(), T::zero());
        }
        if r > tol {
            return Err(Error::EigvecDrift(r.to_f64_lossy()));
        }
        let x = if var == Var::W { z / mu } else { z };
        samples.push((x, lam));
    }
    Ok(SpectralCurve { poly: interpolate(&samples, var)?, mu })
}

/// Determinant of a sector block as a polynomial in the curve variable.
pub fn block_det_curve<T: Real, F>(op_at: F, zs: &[C<T>], var: Var, mu: C<T>) -> Result<SpectralCurve<T>>
where
    F: Fn(C<T>) -> Result<CMatrix<T>>,
{
    let mut samples = Vec::with_capacity(zs.len());
    for &z in zs {
        let x = if var == Var::W { z / mu } else { z };
        samples.push((x, op_at(z)?.det()?));
    }
    Ok(SpectralCurve { poly: interpolate(&samples, var)?, mu })
}

fn check_polynomial(conv: FEConvention) -> Result<()> {
    if conv == FEConvention::Phab {
        return Err(Error::Precondition("the Phab normalization is not polynomial in w".into()));
    }
    Ok(())
}

/// Eigenvalue curve of `Q(z)` on explicit coordinates, in `w = z/mu`.
pub fn eigenvalue_curve_params<T: Real>(
    params: &RepParams<T>,
    mu: C<T>,
    eigvec: &[C<T>],
    zs: &[C<T>],
    m: usize,
    conv: FEConvention,
    tol: T,
) -> Result<SpectralCurve<T>> {
    check_polynomial(conv)?;
    let op = |z: C<T>| {
        let w = z / mu;
        q_chain(params, w, w.sqrt(), m, conv)
    };
    operator_curve(op, eigvec, zs, Var::W, mu, tol)
}

/// Eigenvalue curve of `Q_p(z)` in the default normalization; `eigvec` lives
/// on the full chain.
pub fn eigenvalue_curve<T: Real>(p: &SpecZPoint<T>, eigvec: &[C<T>], zs: &[C<T>], m: usize, tol: T) -> Result<SpectralCurve<T>> {
    let params = p.chart().map_err(|e| if e == Error::EvenParityCyclic { Error::EvenCyclic } else { e })?;
    eigenvalue_curve_params(&params, p.mu, eigvec, zs, m, default_convention(&p.ctx), tol)
}

/// Curves of `Q_p`, `Q_{p'}` and `Q_{p''}` on one eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTriple<T: Real> {
    pub base: SpectralCurve<T>,
    pub prime: SpectralCurve<T>,
    pub double_prime: SpectralCurve<T>,
    pub conv: FEConvention,
}

pub fn curve_triple<T: Real>(
    params: &RepParams<T>,
    mu: C<T>,
    eigvec: &[C<T>],
    zs: &[C<T>],
    m: usize,
    conv: FEConvention,
    tol: T,
) -> Result<CurveTriple<T>> {
    let pr = prime_params(params, mu)?;
    Ok(CurveTriple {
        base: eigenvalue_curve_params(params, mu, eigvec, zs, m, conv, tol)?,
        prime: eigenvalue_curve_params(&pr.prime, pr.mu_prime, eigvec, zs, m, conv, tol)?,
        double_prime: eigenvalue_curve_params(&pr.double_prime, pr.mu_double_prime, eigvec, zs, m, conv, tol)?,
        conv,
    })
}

/// `phi_1(z)^M Q'(z q^2)` and `phi_2(z)^M Q''(z q^{-2})`.
pub fn shifted_terms<T: Real>(
    prime: &SpectralCurve<T>,
    double_prime: &SpectralCurve<T>,
    conv: FEConvention,
    z: C<T>,
    m: usize,
    ctx: &RootContext<T>,
) -> Result<(C<T>, C<T>)> {
    let q2 = ctx.qpow(2);
    let (a, b) = weights_ab(z, ctx)?;
    let (f1, f2) = conv.phi(a, b, ctx);
    let mm = m as i64;
    Ok((ipow(f1, mm) * prime.eval_z(z * q2), ipow(f2, mm) * double_prime.eval_z(z / q2)))
}

/// Transfer-matrix eigenvalue recovered from the functional equation.
pub fn transfer_eigen_from_q<T: Real>(curves: &CurveTriple<T>, z: C<T>, m: usize, ctx: &RootContext<T>) -> Result<C<T>> {
    let den = curves.base.eval_z(z);
    if den.norm() <= T::of(1e-12) * curves.base.magnitude(z) || curves.base.poly.is_zero() {
        return Err(Error::DivisionByZeroCurve);
    }
    let (t1, t2) = shifted_terms(&curves.prime, &curves.double_prime, curves.conv, z, m, ctx)?;
    Ok((t1 + t2) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::cx;

    #[test]
    fn curve_of_scalar_family() {
        let op = |z: C<f64>| Ok(CMatrix::identity(2).scale(z * z + 1.0));
        let v = [cx(1.0, 0.0), cx(0.0, 0.0)];
        let c = operator_curve(op, &v, &default_samples(4), Var::Z, cx(1.0, 0.0), 1e-10).unwrap();
        assert_eq!(c.poly.degree(), Some(2));
        assert!((c.eval_z(cx(2.0, 0.0)) - 5.0).norm() < 1e-10);
    }

    #[test]
    fn drift_detected() {
        let op = |z: C<f64>| Ok(CMatrix::from_rows(&[vec![cx(1.0, 0.0), z], vec![cx(0.0, 0.0), cx(2.0, 0.0)]]));
        let v = [cx(0.0, 0.0), cx(1.0, 0.0)];
        let r = operator_curve(op, &v, &default_samples(3), Var::Z, cx(1.0, 0.0), 1e-8);
        assert!(matches!(r, Err(Error::EigvecDrift(_))));
    }
}
