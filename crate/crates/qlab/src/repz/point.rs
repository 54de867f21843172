use super::{CyclicRep, RepParams};
use crate::error::{Error, Result};
use crate::qcore::{ipow, Real, RootContext, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepKind {
    Nilpotent,
    SemiCyclic,
    Cyclic,
}

/// A point `(x, y, z, c)` of the hypersurface together with the chosen root
/// `mu` of `mu + mu^{-1} = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecZPoint<T: Real> {
    pub x: C<T>,
    pub y: C<T>,
    pub zc: C<T>,
    pub c: C<T>,
    pub mu: C<T>,
    pub ctx: RootContext<T>,
}

fn tiny<T: Real>() -> T {
    T::of(1e-12)
}

impl<T: Real> SpecZPoint<T> {
    /// Validated constructor; checks the hypersurface equation and `mu`.
    pub fn new(ctx: RootContext<T>, x: C<T>, y: C<T>, zc: C<T>, c: C<T>, mu: C<T>) -> Result<Self> {
        let p = SpecZPoint { x, y, zc, c, mu, ctx };
        p.validate()?;
        Ok(p)
    }

    /// Point with `c = mu + mu^{-1}`.
    pub fn from_mu(ctx: RootContext<T>, x: C<T>, y: C<T>, zc: C<T>, mu: C<T>) -> Result<Self> {
        Self::new(ctx, x, y, zc, mu + mu.inv(), mu)
    }

    fn validate(&self) -> Result<()> {
        if [self.x, self.y, self.zc, self.c, self.mu].iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Precondition("coordinates must be finite".into()));
        }
        if self.zc.norm() == T::zero() {
            return Err(Error::Precondition("z must be nonzero".into()));
        }
        if (self.mu - C::new(T::one(), T::zero())).norm() < T::of(1e-10) {
            return Err(Error::DegenerateMu);
        }
        let r = self.sz_residual();
        if r > T::tol(1e-8) {
            return Err(Error::HypersurfaceViolation(r.to_f64_lossy()));
        }
        let cm = self.mu + self.mu.inv();
        if (cm - self.c).norm() > T::tol(1e-8) * T::one().max(self.c.norm()) {
            return Err(Error::Precondition("mu + 1/mu differs from c".into()));
        }
        if self.kind() == RepKind::Nilpotent {
            let sign = self.ctx.qpow(-(self.ctx.nprime() as i64));
            let m = self.zc * ipow(self.mu, self.ctx.nprime() as i64);
            if (m - sign).norm() > T::tol(1e-8) {
                return Err(Error::Precondition("nilpotent point on the wrong mu branch".into()));
            }
        }
        Ok(())
    }

    /// Relative residual of `xy + (-1)^{N+1}(z + z^{-1}) = F_N(c)`.
    pub fn sz_residual(&self) -> T {
        let sign = if self.ctx.is_odd() { T::one() } else { -T::one() };
        let lhs = self.x * self.y + (self.zc + self.zc.inv()) * sign;
        let rhs = self.ctx.big_f(self.c);
        let scale = T::one().max(lhs.norm()).max(rhs.norm()).max((self.x * self.y).norm());
        (lhs - rhs).norm() / scale
    }

    /// `xy + z + z^{-1}`, preserved by the coadjoint flows.
    pub fn invariant(&self) -> C<T> {
        self.x * self.y + self.zc + self.zc.inv()
    }

    pub fn kind(&self) -> RepKind {
        let scale = T::one().max(self.zc.norm()).max(self.zc.inv().norm());
        let xz = self.x.norm() <= tiny::<T>() * scale;
        let yz = self.y.norm() <= tiny::<T>() * scale;
        match (xz, yz) {
            (true, true) => RepKind::Nilpotent,
            (false, false) => RepKind::Cyclic,
            _ => RepKind::SemiCyclic,
        }
    }

    /// Evaluation parameter `w = z / mu`.
    pub fn w_of(&self, z: C<T>) -> C<T> {
        z / self.mu
    }

    /// Canonical coordinates `(xi, zeta, lambda)` of the point.
    pub fn chart(&self) -> Result<RepParams<T>> {
        let ctx = self.ctx;
        let np = ctx.nprime() as i64;
        let d = ctx.qdiff();
        let q = ctx.q();
        let dn = ipow(d, np);
        let scale = T::one().max(self.zc.norm());
        if self.y.norm() > tiny::<T>() * scale {
            if !ctx.is_odd() {
                return Err(Error::EvenParityCyclic);
            }
            let lambda = self.zc.powf(T::one() / T::of(np as f64));
            let zeta = self.y / dn;
            let xz = (self.c - q * lambda - (q * lambda).inv()) / (d * d);
            return RepParams::new(ctx, xz / zeta, zeta, lambda);
        }
        for m in [self.mu, self.mu.inv()] {
            let lambda = (q * m).inv();
            if (ipow(lambda, np) - self.zc).norm() <= T::tol(1e-8) * scale {
                let base = RepParams::nilpotent(ctx, lambda)?;
                if self.x.norm() <= tiny::<T>() * scale {
                    return Ok(base);
                }
                if !ctx.is_odd() {
                    return Err(Error::EvenParityCyclic);
                }
                let prod = (1..np).fold(C::new(T::one(), T::zero()), |a, n| a * base.e_coeff(n));
                if prod.norm() <= tiny::<T>() {
                    return Err(Error::NoSolution);
                }
                return RepParams::new(ctx, self.x / (dn * prod), base.zeta, lambda);
            }
        }
        Err(Error::NoSolution)
    }

    /// Same point with the opposite root `mu^{-1}`.
    pub fn with_mu(&self, mu: C<T>) -> Result<Self> {
        Self::new(self.ctx, self.x, self.y, self.zc, self.c, mu)
    }
}

/// Root of `mu^2 - c mu + 1` continued from `1/(lambda q)` as `xi zeta` is
/// switched on.
pub fn mu_branch<T: Real>(c: C<T>, params: &RepParams<T>) -> Result<C<T>> {
    let ctx = params.ctx;
    let q = ctx.q();
    let start = (params.lambda * q).inv();
    let one = C::new(T::one(), T::zero());
    let xz = params.xi * params.zeta;
    if xz.norm() == T::zero() {
        if (start - one).norm() < T::of(1e-10) {
            return Err(Error::DegenerateMu);
        }
        return Ok(start);
    }
    let d = ctx.qdiff();
    let base = q * params.lambda + (q * params.lambda).inv();
    let two = T::of(2.0);
    let four = C::new(T::of(4.0), T::zero());
    let mut cur = start;
    let steps = 32;
    for i in 1..=steps {
        let s = T::of(i as f64 / steps as f64);
        let cs = base + d * d * xz * s * s;
        let disc = (cs * cs - four).sqrt();
        let r1 = (cs + disc) / two;
        let r2 = (cs - disc) / two;
        if (r1 - r2).norm() < T::of(1e-6) * T::one().max(r1.norm()) {
            return Err(Error::AmbiguousBranch);
        }
        cur = if (r1 - cur).norm() <= (r2 - cur).norm() { r1 } else { r2 };
    }
    if (cur + cur.inv() - c).norm() > T::tol(1e-8) * T::one().max(c.norm()) {
        return Err(Error::Precondition("Casimir value does not match the parameters".into()));
    }
    if (cur - one).norm() < T::of(1e-10) {
        return Err(Error::DegenerateMu);
    }
    Ok(cur)
}

/// Central values of a representation, with the `mu` branch attached.
pub fn central_values<T: Real>(rep: &CyclicRep<T>) -> Result<SpecZPoint<T>> {
    let p = &rep.params;
    let ctx = p.ctx;
    let np = ctx.nprime() as i64;
    let dn = ipow(ctx.qdiff(), np);
    let x = dn * rep.eta;
    let y = p.zeta * dn;
    let zc = ipow(p.lambda, np);
    let c = p.casimir();
    let mu = mu_branch(c, p)?;
    let pt = SpecZPoint { x, y, zc, c, mu, ctx };
    let r = pt.sz_residual();
    if r > T::tol(1e-8) {
        return Err(Error::HypersurfaceViolation(r.to_f64_lossy()));
    }
    Ok(pt)
}

/// Membership in the finite set of classical points.
pub fn in_discriminant<T: Real>(p: &SpecZPoint<T>) -> bool {
    if p.kind() != RepKind::Nilpotent {
        return false;
    }
    let ctx = p.ctx;
    let tol = T::of(1e-9);
    let close = |a: C<T>, b: C<T>| (a - b).norm() <= tol * T::one().max(b.norm());
    let n = ctx.n() as i64;
    let one = C::new(T::one(), T::zero());
    for l in 1..n {
        let s = ctx.qpow(l) + ctx.qpow(-l);
        if ctx.is_odd() {
            for zs in [one, -one] {
                for cs in [s, -s] {
                    if close(p.zc, zs) && close(p.c, cs) {
                        return true;
                    }
                }
            }
        } else if l != ctx.nprime() as i64 {
            let zs = if l % 2 == 1 { one } else { -one };
            if close(p.zc, zs) && close(p.c, s) {
                return true;
            }
        }
    }
    false
}

/// The N' points over the same base point `(x, y, z)`.
///
/// For even N the Casimir steps by `q^2`, the step that keeps `F_N(c)` fixed.
pub fn fiber<T: Real>(p: &SpecZPoint<T>) -> Result<Vec<SpecZPoint<T>>> {
    if in_discriminant(p) {
        return Err(Error::DiscriminantPoint);
    }
    let ctx = p.ctx;
    let step = if ctx.is_odd() { 1 } else { 2 };
    (0..ctx.nprime() as i64)
        .map(|l| {
            let mu = p.mu * ctx.qpow(step * l);
            SpecZPoint::new(ctx, p.x, p.y, p.zc, mu + mu.inv(), mu)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::cx;
    use crate::repz::build_cyclic_rep;

    #[test]
    fn nilpotent_central_values() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let p = RepParams::nilpotent(ctx, cx(2.0, 0.0)).unwrap();
        let pt = central_values(&build_cyclic_rep(p).unwrap()).unwrap();
        let q = ctx.q();
        assert!(pt.x.norm() == 0.0 && pt.y.norm() == 0.0);
        assert!((pt.zc - 8.0).norm() < 1e-13);
        assert!((pt.c - (q * 2.0 + q.inv() / 2.0)).norm() < 1e-13);
        assert!((pt.mu - (q * 2.0).inv()).norm() < 1e-14);
    }

    #[test]
    fn degenerate_mu() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let p = RepParams::nilpotent(ctx, ctx.q().inv()).unwrap();
        assert_eq!(mu_branch(p.casimir(), &p), Err(Error::DegenerateMu));
    }

    #[test]
    fn discriminant_examples() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let q = ctx.q();
        let s = q + q.inv();
        let mk = |zc, c| SpecZPoint { x: cx(0.0, 0.0), y: cx(0.0, 0.0), zc, c, mu: cx(2.0, 0.0), ctx };
        assert!(in_discriminant(&mk(cx(1.0, 0.0), s)));
        assert!(in_discriminant(&mk(cx(1.0, 0.0), -s)));
        assert!(!in_discriminant(&mk(cx(1.3, 0.0), s)));
    }

    #[test]
    fn chart_roundtrip_semicyclic() {
        let ctx = RootContext::<f64>::new(5, 1).unwrap();
        let p = RepParams::new(ctx, cx(0.4, -0.3), cx(0.0, 0.0), cx(0.9, 0.5)).unwrap();
        let pt = central_values(&build_cyclic_rep(p).unwrap()).unwrap();
        assert_eq!(pt.kind(), RepKind::SemiCyclic);
        let back = pt.chart().unwrap();
        let pt2 = central_values(&build_cyclic_rep(back).unwrap()).unwrap();
        assert!((pt2.x - pt.x).norm() < 1e-12 && (pt2.c - pt.c).norm() < 1e-12);
    }
}
