use crate::qcore::{ipow, Real, C};
use crate::repz::{RepKind, SpecZPoint};

fn close<T: Real>(a: C<T>, b: C<T>, scale: T) -> bool {
    (a - b).norm() <= T::tol(1e-8) * scale
}

/// Necessary conditions for an intertwiner `pi_{wA}^{pA} x pi_{wB}^{pB}`.
///
/// Odd N: the four equalities obtained from the coproducts of the central
/// elements `x_i, y_i` for both loop indices. Even N: both points must be
/// nilpotent, in which case the conditions hold for all `wA, wB`.
pub fn existence_criteria<T: Real>(a: &SpecZPoint<T>, b: &SpecZPoint<T>, wa: C<T>, wb: C<T>) -> bool {
    if !a.ctx.is_odd() {
        return a.kind() == RepKind::Nilpotent && b.kind() == RepKind::Nilpotent;
    }
    let r = ipow(wa / wb, a.ctx.n() as i64);
    let (x, y, z) = (a.x, a.y, a.zc);
    let (xb, yb, zb) = (b.x, b.y, b.zc);
    let scale = [x, y, xb, yb, x * zb, xb * z, xb * r, y * r]
        .iter()
        .fold(T::one(), |m, v| m.max(v.norm()));
    close(x + z * xb, xb + x * zb, scale)
        && close(y / zb + yb, yb / z + y, scale)
        && close(x * zb + xb * r, z * xb * r + x, scale)
        && close(r * y + yb / z, yb + y * r / zb, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, RootContext};
    use crate::repz::{build_cyclic_rep, central_values, fiber, RepParams};

    fn point(n: usize, xi: f64, zeta: f64) -> SpecZPoint<f64> {
        let ctx = RootContext::new(n, 1).unwrap();
        let p = RepParams::new(ctx, cx(xi, 0.2), cx(zeta, -0.1), cx(0.9, 0.4)).unwrap();
        central_values(&build_cyclic_rep(p).unwrap()).unwrap()
    }

    #[test]
    fn fiber_mates() {
        let p = point(3, 0.4, 0.7);
        let w = cx(0.3, 0.8);
        for f in fiber(&p).unwrap() {
            assert!(existence_criteria(&p, &f, w, w));
        }
        assert!(existence_criteria(&p, &p, w, w * RootContext::<f64>::new(3, 1).unwrap().q()));
    }

    #[test]
    fn unrelated_points() {
        let a = point(5, 0.4, 0.7);
        let b = point(5, -0.3, 1.3);
        assert!(!existence_criteria(&a, &b, cx(0.3, 0.8), cx(1.1, 0.2)));
    }

    #[test]
    fn even_requires_nilpotent() {
        let ctx = RootContext::<f64>::new(4, 1).unwrap();
        let nil = central_values(&build_cyclic_rep(RepParams::nilpotent(ctx, cx(0.9, 0.4)).unwrap()).unwrap()).unwrap();
        assert!(existence_criteria(&nil, &nil, cx(0.3, 0.1), cx(2.0, 1.0)));
        let cyc = SpecZPoint { x: cx(0.5, 0.0), ..nil };
        assert!(!existence_criteria(&cyc, &nil, cx(0.3, 0.1), cx(0.3, 0.1)));
    }
}
