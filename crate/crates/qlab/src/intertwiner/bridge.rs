use super::{LOperator, LVariant};
use crate::error::{Error, Result};
use crate::qcore::{ipow, CMatrix, Real, RootContext, C};
use crate::repz::SpecZPoint;

/// Breve L-operator on the three-parameter cyclic representation
/// `(s0, s1, s2)` together with its common invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct BsBridge<T: Real> {
    /// Blocks are in the `Z`/`X` basis of the representation.
    pub l: LOperator<T>,
    /// `Gamma_1..3` from the central values of the representation.
    pub gamma: [C<T>; 3],
    /// `Gamma_1..3` from the coefficients `d, f, g, h` of the second form.
    /// For odd N these equal `(-Gamma_1, Gamma_2, -Gamma_3)`.
    pub gamma_coeff: [C<T>; 3],
    /// Largest entrywise difference of the two constructions.
    pub entry_residual: T,
    pub point: SpecZPoint<T>,
}

pub fn bs_bridge<T: Real>(s0: C<T>, s1: C<T>, s2: C<T>, w: C<T>, ctx: &RootContext<T>) -> Result<BsBridge<T>> {
    if !ctx.is_odd() {
        return Err(Error::EvenParity);
    }
    if s0.norm() == T::zero() || s1.norm() == T::zero() || s2.norm() == T::zero() {
        return Err(Error::Precondition("s0, s1, s2 must be nonzero".into()));
    }
    let n = ctx.n();
    let q = ctx.q();
    let qh = ctx.qhalf();
    let d = ctx.qdiff();
    let zd: Vec<C<T>> = (0..n).map(|k| ctx.qpow(-(k as i64))).collect();
    let z = CMatrix::from_diag(&zd);
    let zi = CMatrix::from_diag(&zd.iter().map(|x| x.inv()).collect::<Vec<_>>());
    let x = CMatrix::from_fn(n, n, |i, j| if i == (j + 1) % n { C::new(T::one(), T::zero()) } else { C::new(T::zero(), T::zero()) });
    let xi = x.transpose();
    let r = (s1 / s2).sqrt();
    let e = (&zi.scale(s1) - &z.scale(s1.inv())).matmul(&xi).scale((s0 * d).inv());
    let f = (&z.scale(s2) - &zi.scale(s2.inv())).matmul(&x).scale(s0 / d);
    let t = z.scale(r.inv());
    let ti = zi.scale(r);
    let sw = w.sqrt();
    let rp = qh * sw;
    let rm = (qh * sw).inv();
    let a = &t.scale(rp) - &ti.scale(rm);
    let b = f.scale(rp * d / qh);
    let c = e.scale(rm * d * qh);
    let dd = &ti.scale(rp) - &t.scale(rm);

    let (dp, dm) = (qh / r, -r / qh);
    let (fm, fp) = (-dp / q, -dm * q);
    let (gp, gm) = (-s0 / s2, s0 * s2);
    let (hp, hm) = (s1 / s0, -(s0 * s1).inv());
    let lt = [
        &z.scale(sw * dp) + &zi.scale(dm / sw),
        (&zi.scale(gp) + &z.scale(gm)).matmul(&x).scale(sw),
        (&zi.scale(hp) + &z.scale(hm)).matmul(&xi).scale(sw.inv()),
        &zi.scale(sw * fp) + &z.scale(fm / sw),
    ];
    let entry_residual = [&a, &b, &c, &dd].iter().zip(lt.iter()).fold(T::zero(), |m, (u, v)| m.max((*u - v).max_abs()));

    let big_e = e.matmul(&t);
    let big_f = ti.matmul(&f);
    let big_k = t.matmul(&t);
    let cx = big_e.scale(d).powi(n)[(0, 0)];
    let cy = big_f.scale(d).powi(n)[(0, 0)];
    let cz = big_k.powi(n)[(0, 0)];
    let cas = (&(&big_k.scale(q) + &big_k.inverse()?.scale(q.inv())) + &big_f.matmul(&big_e).scale(d * d))[(0, 0)];
    let one = C::new(T::one(), T::zero());
    let wn = ipow(w, -(n as i64));
    let gamma = [(one - cz.inv()) * (one - cz) / (cx * cy), wn, -wn * cx / (cz * cy)];
    let ni = n as i64;
    let (dpn, dmn, fpn, fmn) = (ipow(dp, ni), ipow(dm, ni), ipow(fp, ni), ipow(fm, ni));
    let (gsum, hsum) = (ipow(gp, ni) + ipow(gm, ni), ipow(hp, ni) + ipow(hm, ni));
    let gamma_coeff = [
        (dpn - fpn) * (dmn - fmn) / (gsum * hsum),
        wn * (dmn - fmn) / (dpn - fpn),
        wn * hsum / gsum,
    ];
    // c = u + 1/u with u = s1 s2 / q
    let mu = s1 * s2 / q;
    let point = SpecZPoint::new(*ctx, cx, cy, cz, cas, mu)?;
    let params = point.chart()?;
    let l = LOperator { a, b, c, d: dd, w_arg: w, variant: LVariant::Breve, rho_plus: rp, rho_minus: rm, params };
    Ok(BsBridge { l, gamma, gamma_coeff, entry_residual, point })
}
