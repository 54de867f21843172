use super::point::{central_values, SpecZPoint};
use super::{build_cyclic_rep, RepParams};
use crate::error::{Error, Result};
use crate::qcore::{ComplexPoly, Real, Var, C};

/// `(x, y, z, c) -> (y, x, z^{-1}, c)` with `mu -> mu^{-1}`.
pub fn spin_reversal_point<T: Real>(p: &SpecZPoint<T>) -> Result<SpecZPoint<T>> {
    SpecZPoint::new(p.ctx, p.y, p.x, p.zc.inv(), p.c, p.mu.inv())
}

/// Coordinates `(xi^R, eta, lambda^{-1} q^{-2})` of the spin-reversed
/// representation, with `xi^R` picked among the roots of
/// `zeta = xi^R prod_{n=1}^{N'-1}([lambda^R; n-1][n] + xi^R eta)`.
pub fn reversal_coordinates<T: Real>(params: &RepParams<T>) -> Result<RepParams<T>> {
    let ctx = params.ctx;
    if !ctx.is_odd() {
        return Err(Error::EvenParity);
    }
    let eta = params.eta();
    let lr = (params.lambda * ctx.qpow(2)).inv();
    let base = RepParams::nilpotent(ctx, lr)?;
    if params.is_nilpotent() {
        return Ok(base);
    }
    let target = spin_reversal_point(&central_values(&build_cyclic_rep(*params)?)?)?;
    let one = C::new(T::one(), T::zero());
    // s * prod (b_n + s eta) - zeta
    let mut poly = ComplexPoly::new(vec![C::new(T::zero(), T::zero()), one], Var::Z);
    for n in 1..ctx.nprime() as i64 {
        let b = base.e_coeff(n);
        let factor = ComplexPoly::new(vec![b, eta], Var::Z);
        poly = mul(&poly, &factor);
    }
    let poly = poly.sub(&ComplexPoly::new(vec![params.zeta], Var::Z));
    let mut best: Option<(T, RepParams<T>)> = None;
    for s in poly.roots(T::of(1e-12))? {
        let cand = RepParams::new(ctx, s, eta, lr)?;
        let Ok(rep) = build_cyclic_rep(cand) else { continue };
        let p = &rep.params;
        let np = ctx.nprime() as i64;
        let dn = crate::qcore::ipow(ctx.qdiff(), np);
        let (x, y, zc, c) = (dn * rep.eta, p.zeta * dn, crate::qcore::ipow(p.lambda, np), p.casimir());
        let scale = T::one().max(target.x.norm()).max(target.y.norm()).max(target.c.norm());
        let err = ((x - target.x).norm() + (y - target.y).norm() + (zc - target.zc).norm() + (c - target.c).norm()) / scale;
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, cand));
        }
    }
    match best {
        Some((err, cand)) if err < T::tol(1e-8) => Ok(cand),
        _ => Err(Error::NoSolution),
    }
}

fn mul<T: Real>(a: &ComplexPoly<T>, b: &ComplexPoly<T>) -> ComplexPoly<T> {
    let (ac, bc) = (a.coeffs(), b.coeffs());
    if ac.is_empty() || bc.is_empty() {
        return ComplexPoly::zero(a.var());
    }
    let mut out = vec![C::new(T::zero(), T::zero()); ac.len() + bc.len() - 1];
    for (i, x) in ac.iter().enumerate() {
        for (j, y) in bc.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    ComplexPoly::new(out, a.var())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, RootContext};

    #[test]
    fn nilpotent_reversal() {
        let ctx = RootContext::<f64>::new(5, 1).unwrap();
        let la = cx(0.8, 0.3);
        let r = reversal_coordinates(&RepParams::nilpotent(ctx, la).unwrap()).unwrap();
        assert!(r.is_nilpotent());
        assert!((r.lambda - (la * ctx.qpow(2)).inv()).norm() < 1e-14);
    }

    #[test]
    fn cyclic_reversal_matches_point_map() {
        for n in [3, 5] {
            let ctx = RootContext::<f64>::new(n, 1).unwrap();
            let p = RepParams::new(ctx, cx(0.4, -0.2), cx(0.6, 0.5), cx(0.7, 0.9)).unwrap();
            let r = reversal_coordinates(&p).unwrap();
            assert!((r.zeta - p.eta()).norm() < 1e-14);
            assert!((r.xi - p.xi * p.zeta / p.eta()).norm() < 1e-9 * (1.0 + r.xi.norm()));
            let a = spin_reversal_point(&central_values(&build_cyclic_rep(p).unwrap()).unwrap()).unwrap();
            let b = central_values(&build_cyclic_rep(r).unwrap()).unwrap();
            assert!((a.x - b.x).norm() + (a.y - b.y).norm() + (a.zc - b.zc).norm() + (a.c - b.c).norm() < 1e-9);
        }
    }

    #[test]
    fn involution() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let p = RepParams::new(ctx, cx(0.4, -0.2), cx(0.6, 0.5), cx(0.7, 0.9)).unwrap();
        let pt = central_values(&build_cyclic_rep(p).unwrap()).unwrap();
        let back = spin_reversal_point(&spin_reversal_point(&pt).unwrap()).unwrap();
        assert!((back.x - pt.x).norm() + (back.mu - pt.mu).norm() < 1e-14);
    }
}
