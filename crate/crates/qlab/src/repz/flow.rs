use super::point::{in_discriminant, SpecZPoint};
use crate::error::{Error, Result};
use crate::qcore::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowGenerator {
    E,
    F,
}

/// `(e^{s a} - 1) / a`, with a series near `a = 0`.
fn expm1_over<T: Real>(a: C<T>, s: C<T>) -> C<T> {
    let sa = s * a;
    if sa.norm() < T::of(1e-6) {
        let two = T::of(2.0);
        let six = T::of(6.0);
        s + s * sa / two + s * sa * sa / six
    } else {
        (sa.exp() - C::new(T::one(), T::zero())) / a
    }
}

/// Quantum coadjoint flow `exp(t e)` or `exp(t f)` on the hypersurface.
///
/// The Casimir value and `mu` are carried along unchanged, since
/// `xy + z + z^{-1}` is invariant.
pub fn coadjoint_flow<T: Real>(p: &SpecZPoint<T>, gen: FlowGenerator, t: C<T>) -> Result<SpecZPoint<T>> {
    if !p.ctx.is_odd() {
        return Err(Error::EvenParity);
    }
    if in_discriminant(p) {
        return Err(Error::DiscriminantPoint);
    }
    let (x, y, zc) = (p.x, p.y, p.zc);
    let (nx, ny, nz) = match gen {
        FlowGenerator::E => {
            let shift = zc * expm1_over(x, -t) + zc.inv() * expm1_over(x, t);
            (x, y - shift, zc * (-t * x).exp())
        }
        FlowGenerator::F => {
            let shift = zc * expm1_over(y, t) + zc.inv() * expm1_over(y, -t);
            (x - shift, y, zc * (t * y).exp())
        }
    };
    SpecZPoint::new(p.ctx, nx, ny, nz, p.c, p.mu)
}
