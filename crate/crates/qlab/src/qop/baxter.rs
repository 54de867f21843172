use crate::error::{Error, Result};
use crate::qcore::{ipow, rel_residual, CMatrix, Real, RootContext, C};
use crate::sixvertex::{transfer_matrix, unit_rho, weights_ab, ChainOperator};

/// Baxter's explicit auxiliary matrix on the `S^z = 0` sector, zero elsewhere.
///
/// Element `(beta, alpha)` is
/// `exp(i gamma/4 sum_{n<m}(alpha_n beta_m - alpha_m beta_n)) (zq)^{(M + sum alpha_m beta_m)/4}`
/// with spins `+-1`, `q = e^{i gamma}`, and without the infinite product factor.
pub fn baxter_q<T: Real>(z: C<T>, m: usize, ctx: &RootContext<T>) -> Result<ChainOperator<T>> {
    if !m.is_multiple_of(2) || m == 0 {
        return Err(Error::OddChain);
    }
    let dim = 1usize << m;
    let spins = |s: usize| -> Vec<i64> { (0..m).map(|i| if (s >> (m - 1 - i)) & 1 == 0 { 1 } else { -1 }).collect() };
    let zq = z * ctx.q();
    let gamma = ctx.gamma();
    let mut out = CMatrix::zeros(dim, dim);
    let sector: Vec<usize> = (0..dim).filter(|s| 2 * s.count_ones() as usize == m).collect();
    for &b in &sector {
        let be = spins(b);
        for &a in &sector {
            let al = spins(a);
            let mut ph = 0i64;
            for mm in 0..m {
                for nn in 0..mm {
                    ph += al[nn] * be[mm] - al[mm] * be[nn];
                }
            }
            let d: i64 = (0..m).map(|i| al[i] * be[i]).sum();
            // both states have S^z = 0, so M + d is a multiple of 4
            let phase = C::new(T::zero(), gamma * T::of(ph as f64 / 4.0)).exp();
            out[(b, a)] = phase * ipow(zq, (m as i64 + d) / 4);
        }
    }
    Ok(ChainOperator::new(m, out, "Q_Baxter"))
}

/// Residual of `Q(z) T(z) = (b q^{-1/2})^M Q(zq^2) + (a q^{1/2})^M Q(zq^{-2})`
/// on the `S^z = 0` sector.
pub fn baxter_tq_residual<T: Real>(z: C<T>, m: usize, ctx: &RootContext<T>) -> Result<T> {
    let q = ctx.q();
    let b0 = baxter_q(z, m, ctx)?.matrix;
    let bp = baxter_q(z * q * q, m, ctx)?.matrix;
    let bm = baxter_q(z / (q * q), m, ctx)?.matrix;
    let t = transfer_matrix(z, m, ctx, &unit_rho)?.matrix;
    let (a, b) = weights_ab(z, ctx)?;
    let half = m as i64 / 2;
    let lhs = b0.matmul(&t);
    let rhs = &bp.scale(ipow(b, m as i64) * ctx.qpow(-half)) + &bm.scale(ipow(a, m as i64) * ctx.qpow(half));
    Ok(rel_residual(&lhs, &rhs, T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::cx;

    #[test]
    fn four_site() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let z = cx(0.4, 0.9);
        let b = baxter_q(z, 4, &ctx).unwrap();
        // diagonal element m1 = zq, times the normalization (zq)^{M/4}
        let s = 0b0011;
        let zq = z * ctx.q();
        assert!((b.matrix[(s, s)] - zq * zq).norm() < 1e-14);
        assert!(baxter_tq_residual(z, 4, &ctx).unwrap() < 1e-10);
        assert!(baxter_tq_residual(cx(-1.3, 0.2), 6, &ctx).unwrap() < 1e-10);
        assert_eq!(baxter_q(z, 3, &ctx).unwrap_err(), Error::OddChain);
    }
}
