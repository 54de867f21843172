use super::{build_q, chart_of, default_convention, q_chain, FEConvention};
use crate::error::{Error, Result};
use crate::intertwiner::prime_params;
use crate::qcore::{ipow, rel_residual, CMatrix, Real, C};
use crate::repz::{Gradation, RepKind, RepParams, SpecZPoint};
use crate::sixvertex::{symmetry_ops, transfer_matrix, unit_rho, weights_ab};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    /// `e^{tS^z} Q_p(z) e^{-tS^z} = Q_{e^{tS^z} p}(z)`.
    QSz,
    /// `S Q_p(z) S = Q_{Sp}(z)`.
    SQ,
    /// `R Q_p(z) R = z^M w^{-S^z} Q_{Rp}(z mu^{-2}) w^{S^z}`.
    QR,
    /// Nilpotent case: `R Q_lambda(z) R = lambda^{N'M} Q_{lambda^{-1}q^{-2}}(z lambda^2 q^2)`
    /// (odd variant; the breve variant has no prefactor).
    QR0,
    /// Principal vs homogeneous gradation.
    Qp,
    /// `R Q_p(z) R = (-wq)^M (-w)^{-S^z} Q_p(mu^2/(zq^2))^t (-w)^{S^z}`.
    Transpose,
    /// Functional equation at `-q` for even orders with odd `N'`.
    TQS,
}

fn n_down(s: usize) -> i64 {
    s.count_ones() as i64
}

/// `f^{S^z} X f^{-S^z}` for integer exponent differences (X flips whole spins).
fn conj_sz<T: Real>(x: &CMatrix<T>, f: impl Fn(i64) -> C<T>) -> CMatrix<T> {
    CMatrix::from_fn(x.rows(), x.cols(), |b, a| x[(b, a)] * f(n_down(a) - n_down(b)))
}

fn point_with<T: Real>(p: &SpecZPoint<T>, x: C<T>, y: C<T>, zc: C<T>, mu: C<T>) -> Result<SpecZPoint<T>> {
    SpecZPoint::new(p.ctx, x, y, zc, p.c, mu)
}

/// Chains shorter than N' can give Q = 0; residuals are then measured
/// against the L-block size instead of round-off.
fn q_floor<T: Real>(p: &SpecZPoint<T>, z: C<T>, m: usize) -> T {
    let size = match chart_of(p) {
        Ok(params) => {
            let w = p.w_of(z);
            default_convention(&p.ctx).build_l(&params, w, w.sqrt()).map(|l| l.full().max_abs().powi(m as i32)).unwrap_or(T::zero())
        }
        Err(_) => T::zero(),
    };
    size * T::of(1e-3)
}

fn hom<T: Real>(p: &SpecZPoint<T>, z: C<T>, m: usize) -> Result<CMatrix<T>> {
    Ok(build_q(p, z, m, default_convention(&p.ctx), Gradation::Homogeneous)?.op.matrix)
}

/// Residual of one transformation law. `t` is used by `QSz` only.
pub fn transformation_check<T: Real>(law: Law, p: &SpecZPoint<T>, z: C<T>, m: usize, t: C<T>) -> Result<T> {
    let ctx = p.ctx;
    let floor = q_floor(p, z, m);
    match law {
        Law::QSz => {
            let n = T::of(ctx.n() as f64);
            let pt = point_with(p, p.x * (-t * n).exp(), p.y * (t * n).exp(), p.zc, p.mu)?;
            let lhs = conj_sz(&hom(p, z, m)?, |d| (t * T::of(d as f64)).exp());
            Ok(rel_residual(&lhs, &hom(&pt, z, m)?, floor))
        }
        Law::SQ => {
            let (_, _, s) = symmetry_ops::<T>(m);
            let lhs = s.matrix.matmul(&hom(p, z, m)?).matmul(&s.matrix);
            let ps = point_with(p, -p.x, -p.y, p.zc, p.mu)?;
            Ok(rel_residual(&lhs, &hom(&ps, z, m)?, floor))
        }
        Law::QR | Law::Transpose => {
            if !ctx.is_odd() {
                return Err(Error::LawPreconditionViolated("odd order required".into()));
            }
            let (_, r, _) = symmetry_ops::<T>(m);
            let lhs = r.matrix.matmul(&hom(p, z, m)?).matmul(&r.matrix);
            let w = p.w_of(z);
            let rhs = if law == Law::QR {
                let pr = SpecZPoint::new(ctx, p.y, p.x, p.zc.inv(), p.c, p.mu.inv())?;
                conj_sz(&hom(&pr, z / (p.mu * p.mu), m)?, |d| ipow(w, -d)).scale(ipow(p.zc, m as i64))
            } else {
                let q = ctx.q();
                let qt = hom(p, p.mu * p.mu / (z * q * q), m)?.transpose();
                conj_sz(&qt, |d| ipow(-w, -d)).scale(ipow(-w * q, m as i64))
            };
            Ok(rel_residual(&lhs, &rhs, floor))
        }
        Law::QR0 => {
            if p.kind() != RepKind::Nilpotent {
                return Err(Error::LawPreconditionViolated("nilpotent point required".into()));
            }
            let params = chart_of(p)?;
            let conv = default_convention(&ctx);
            let q = ctx.q();
            let la = params.lambda;
            let w = z / p.mu;
            let (_, r, _) = symmetry_ops::<T>(m);
            let lhs = r.matrix.matmul(&q_chain(&params, w, w.sqrt(), m, conv)?).matmul(&r.matrix);
            let lr = (la * q * q).inv();
            // the odd variant carries lambda^{N'M}; the breve one has unit
            // prefactor once lambda_R^{1/2} = -(lambda^{1/2} q)^{-1}
            let (sr, factor) = match conv.variant(&ctx)? {
                crate::intertwiner::LVariant::Odd => (lr.sqrt(), ipow(la, (ctx.nprime() * m) as i64)),
                crate::intertwiner::LVariant::Breve => (-(params.sqrt_lambda * q).inv(), C::new(T::one(), T::zero())),
            };
            let pr = RepParams::nilpotent(ctx, lr)?.with_sqrt_lambda(sr)?;
            // mu_R = 1/(lambda_R q) = lambda q, so w is unchanged
            let zr = z * la * la * q * q;
            let wr = zr / (la * q);
            let rhs = q_chain(&pr, wr, wr.sqrt(), m, conv)?.scale(factor);
            Ok(rel_residual(&lhs, &rhs, floor))
        }
        Law::Qp => {
            let conv = default_convention(&ctx);
            let x = z;
            let y = x / p.mu.sqrt();
            let prin = build_q(p, x, m, conv, Gradation::Principal)?.op.matrix;
            let homq = build_q(p, x * x, m, conv, Gradation::Homogeneous)?.op.matrix;
            Ok(rel_residual(&prin, &conj_sz(&homq, |d| ipow(y, -d)), floor))
        }
        Law::TQS => tqs_residual(p, z, m),
    }
}

/// `Q_p(z,-q) U S T(z,q) U = b(z,q)^M Q_{p'}(zq^2,-q) + a(z,q)^M Q_{p''}(zq^{-2},-q)`.
///
/// `p` lives at the odd root `-q`; `U` is `sigma^z` on every second site
/// (the gauge relating `T(z,-q)` and `S T(z,q)`). Needs an even chain.
fn tqs_residual<T: Real>(p: &SpecZPoint<T>, z: C<T>, m: usize) -> Result<T> {
    let odd = p.ctx;
    if !odd.is_odd() || !m.is_multiple_of(2) {
        return Err(Error::LawPreconditionViolated("odd N' at -q and an even chain required".into()));
    }
    let even = odd.negated()?;
    let params = chart_of(p)?;
    let conv = FEConvention::Phab;
    let qo = odd.q();
    let pr = prime_params(&params, p.mu)?;
    let w = z / p.mu;
    let sw = w.sqrt();
    let (s1, s2) = conv.sqrt_w_shift(&odd);
    let q0 = q_chain(&params, w, sw, m, conv)?;
    let q1 = q_chain(&pr.prime, w * qo, sw * s1, m, conv)?;
    let q2 = q_chain(&pr.double_prime, w / qo, sw * s2, m, conv)?;
    let (_, _, s) = symmetry_ops::<T>(m);
    let mask: usize = (0..m).step_by(2).map(|i| 1usize << i).sum();
    let u = CMatrix::from_diag(
        &(0..1usize << m)
            .map(|b| if (b & mask).count_ones().is_multiple_of(2) { C::new(T::one(), T::zero()) } else { C::new(-T::one(), T::zero()) })
            .collect::<Vec<_>>(),
    );
    let t = transfer_matrix(z, m, &even, &unit_rho)?.matrix;
    let lhs = q0.matmul(&u).matmul(&s.matrix).matmul(&t).matmul(&u);
    let (a, b) = weights_ab(z, &even)?;
    let rhs = &q1.scale(ipow(b, m as i64)) + &q2.scale(ipow(a, m as i64));
    Ok(rel_residual(&lhs, &rhs, T::zero()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommuteReport<T: Real> {
    /// The invariant equalities hold.
    pub predicate: bool,
    /// `|[Q_A, Q_B]| / (|Q_A| |Q_B|)`.
    pub residual: T,
}

/// Whether `Q_{pA}(zA)` and `Q_{pB}(zB)` are predicted to commute:
/// `x/(1-z)`, `y/(1-z^{-1})` agree and `wA^N = wB^N` with `w = z/mu`.
pub fn commute_predicate<T: Real>(a: &SpecZPoint<T>, b: &SpecZPoint<T>, za: C<T>, zb: C<T>, m: usize) -> Result<CommuteReport<T>> {
    let ctx = a.ctx;
    let one = C::new(T::one(), T::zero());
    let n = ctx.n() as i64;
    let (wa, wb) = (a.w_of(za), b.w_of(zb));
    let close = |u: C<T>, v: C<T>| (u - v).norm() <= T::of(1e-8) * T::one().max(u.norm()).max(v.norm());
    let predicate = close(a.x * (one - b.zc), b.x * (one - a.zc))
        && close(a.y * (one - b.zc.inv()), b.y * (one - a.zc.inv()))
        && close(ipow(wa, n), ipow(wb, n));
    let conv = default_convention(&ctx);
    let qa = build_q(a, za, m, conv, Gradation::Homogeneous)?.op.matrix;
    let qb = build_q(b, zb, m, conv, Gradation::Homogeneous)?.op.matrix;
    let denom = qa.max_abs().max(q_floor(a, za, m)) * qb.max_abs().max(q_floor(b, zb, m));
    let residual = if denom == T::zero() { T::zero() } else { qa.commutator(&qb).max_abs() / denom };
    Ok(CommuteReport { predicate, residual })
}

/// `|[Q_p(z), T(w)]| / (|Q| |T|)`.
pub fn qt_commutator<T: Real>(p: &SpecZPoint<T>, z: C<T>, w: C<T>, m: usize) -> Result<T> {
    let q = hom(p, z, m)?;
    let t = transfer_matrix(w, m, &p.ctx, &unit_rho)?.matrix;
    let denom = q.max_abs().max(q_floor(p, z, m)) * t.max_abs();
    Ok(if denom == T::zero() { T::zero() } else { q.commutator(&t).max_abs() / denom })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, RootContext};
    use crate::repz::{build_cyclic_rep, central_values, fiber};

    fn pt(n: usize, xi: f64, zeta: f64, la: (f64, f64)) -> SpecZPoint<f64> {
        let ctx = RootContext::new(n, 1).unwrap();
        let p = RepParams::new(ctx, cx(xi, 0.2), cx(zeta, -0.3), cx(la.0, la.1)).unwrap();
        central_values(&build_cyclic_rep(p).unwrap()).unwrap()
    }

    #[test]
    fn laws_cyclic() {
        let p = pt(3, 0.4, 0.7, (0.8, 0.5));
        let z = cx(0.6, -0.7);
        for m in [3, 4, 5] {
            for law in [Law::QSz, Law::SQ, Law::QR, Law::Qp, Law::Transpose] {
                let r = transformation_check(law, &p, z, m, cx(0.3, -0.2)).unwrap();
                assert!(r < 1e-8, "{law:?} M={m}: {r}");
            }
        }
    }

    #[test]
    fn laws_nilpotent() {
        for n in [3, 4, 5] {
            let ctx = RootContext::<f64>::new(n, 1).unwrap();
            let p = central_values(&build_cyclic_rep(RepParams::nilpotent(ctx, cx(0.7, 0.5)).unwrap()).unwrap()).unwrap();
            for m in [2, 3, 4] {
                for law in [Law::QR0, Law::SQ, Law::Qp] {
                    let r = transformation_check(law, &p, cx(0.6, -0.7), m, cx(0.0, 0.0)).unwrap();
                    assert!(r < 1e-8, "N={n} {law:?} M={m}: {r}");
                }
            }
        }
    }

    #[test]
    fn tqs() {
        let p = pt(3, 0.4, 0.7, (0.8, 0.5));
        for m in [2, 4] {
            let r = transformation_check(Law::TQS, &p, cx(0.6, -0.7), m, cx(0.0, 0.0)).unwrap();
            assert!(r < 1e-8, "M={m}: {r}");
        }
    }

    #[test]
    fn commutation() {
        let p = pt(3, 0.4, 0.7, (0.8, 0.5));
        let z = cx(0.6, -0.7);
        for f in fiber(&p).unwrap() {
            let r = commute_predicate(&p, &f, z, z, 4).unwrap();
            assert!(r.predicate && r.residual < 1e-9, "{r:?}");
        }
        let other = pt(3, -0.3, 1.1, (1.2, -0.4));
        let r = commute_predicate(&p, &other, z, cx(0.2, 0.9), 3).unwrap();
        assert!(!r.predicate && r.residual > 1e-6, "{r:?}");
        assert!(qt_commutator(&p, z, cx(1.1, 0.3), 4).unwrap() < 1e-9);
    }
}
