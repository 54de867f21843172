use super::{build_l_params, LVariant};
use crate::error::{Error, Result};
use crate::qcore::{ipow, one, rel_residual, CMatrix, Real, C};
use crate::repz::{build_cyclic_rep, reversal_coordinates, CyclicRep, SpecZPoint};

/// Invertible `phi` with `phi A_i phi^{-1} = B_i` for every pair.
///
/// Solves the stacked linear system `B_i phi - phi A_i = 0` and scales the
/// solution so that its first non-negligible entry (row-major) is one.
pub fn find_gauge_matrices<T: Real>(pairs: &[(&CMatrix<T>, &CMatrix<T>)]) -> Result<CMatrix<T>> {
    let n = pairs.first().ok_or_else(|| Error::Dimension("no generators".into()))?.0.rows();
    let id = CMatrix::identity(n);
    let mut sys = CMatrix::zeros(n * n * pairs.len(), n * n);
    for (blk, (a, b)) in pairs.iter().enumerate() {
        let m = &b.kron(&id) - &id.kron(&a.transpose());
        for i in 0..n * n {
            for j in 0..n * n {
                sys[(blk * n * n + i, j)] = m[(i, j)];
            }
        }
    }
    let ns = sys.null_space(T::of(1e-10));
    if ns.cols() == 0 {
        return Err(Error::NotIsomorphic);
    }
    let v = ns.column(0);
    let vmax = v.iter().fold(T::zero(), |m, x| m.max(x.norm()));
    let pivot = v.iter().copied().find(|x| x.norm() > T::of(1e-8) * vmax).ok_or(Error::NotIsomorphic)?;
    let phi = CMatrix::from_fn(n, n, |i, j| v[i * n + j] / pivot);
    let inv = phi.inverse().map_err(|_| Error::NotIsomorphic)?;
    for (a, b) in pairs {
        let r = rel_residual(&phi.matmul(a).matmul(&inv), b, T::one());
        if !(r < T::tol(1e-8)) {
            return Err(Error::NotIsomorphic);
        }
    }
    Ok(phi)
}

/// `phi (E_A, F_A, K_A) phi^{-1} = (E_B, F_B, K_B)`.
pub fn find_gauge<T: Real>(a: &CyclicRep<T>, b: &CyclicRep<T>) -> Result<CMatrix<T>> {
    find_gauge_matrices(&[(&a.e, &b.e), (&a.f, &b.f), (&a.k, &b.k)])
}

/// Residual of
/// `(1 x sigma^x) L(w) (1 x sigma^x) = z (phi x w^{-sigma^z/2}) L^R(w) (phi^{-1} x w^{sigma^z/2})`
/// for the odd variant, with `L^R` built on the spin-reversed representation.
pub fn spin_reversal_l_check<T: Real>(p: &SpecZPoint<T>, w: C<T>) -> Result<T> {
    let params = p.chart()?;
    let ctx = params.ctx;
    if !ctx.is_odd() {
        return Err(Error::EvenParity);
    }
    let rp = reversal_coordinates(&params)?;
    let rep = build_cyclic_rep(params)?;
    let rrep = build_cyclic_rep(rp)?;
    let phi = find_gauge_matrices(&[(&rrep.e, &rep.f), (&rrep.f, &rep.e), (&rrep.k, &rep.k_inv())])?;
    let phi_inv = phi.inverse()?;
    let l = build_l_params(&params, w, LVariant::Odd)?;
    let lr = build_l_params(&rp, w, LVariant::Odd)?;
    let sw = w.sqrt();
    let twist = CMatrix::from_diag(&[sw, sw.inv()]);
    let twist_inv = CMatrix::from_diag(&[sw.inv(), sw]);
    let zc = ipow(params.lambda, ctx.nprime() as i64);
    let mut sx = CMatrix::zeros(2, 2);
    sx[(0, 1)] = one();
    sx[(1, 0)] = one();
    let ix = CMatrix::identity(ctx.nprime()).kron(&sx);
    let lhs = ix.matmul(&l.full()).matmul(&ix);
    let rhs = phi.kron(&twist_inv).matmul(&lr.full()).matmul(&phi_inv.kron(&twist)).scale(zc);
    Ok(rel_residual(&lhs, &rhs, T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, RootContext};
    use crate::repz::{central_values, RepParams};

    #[test]
    fn identity_gauge() {
        let p = RepParams::new(RootContext::<f64>::new(3, 1).unwrap(), cx(0.3, 0.1), cx(0.2, -0.5), cx(1.1, 0.4)).unwrap();
        let r = build_cyclic_rep(p).unwrap();
        let g = find_gauge(&r, &r).unwrap();
        assert!((&g - &CMatrix::identity(3)).max_abs() < 1e-10);
    }

    #[test]
    fn different_casimir_not_isomorphic() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let a = build_cyclic_rep(RepParams::new(ctx, cx(0.3, 0.1), cx(0.2, -0.5), cx(1.1, 0.4)).unwrap()).unwrap();
        let b = build_cyclic_rep(RepParams::new(ctx, cx(0.7, 0.1), cx(0.2, -0.5), cx(1.1, 0.4)).unwrap()).unwrap();
        assert_eq!(find_gauge(&a, &b).unwrap_err(), Error::NotIsomorphic);
    }

    #[test]
    fn conjugated_rep() {
        let ctx = RootContext::<f64>::new(5, 2).unwrap();
        let a = build_cyclic_rep(RepParams::new(ctx, cx(0.3, 0.1), cx(0.2, -0.5), cx(1.1, 0.4)).unwrap()).unwrap();
        let g = CMatrix::from_fn(5, 5, |i, j| cx(((i * 7 + j * 3) % 5) as f64 * 0.3 + if i == j { 2.0 } else { 0.0 }, 0.1 * j as f64));
        let gi = g.inverse().unwrap();
        let mut b = a.clone();
        b.e = g.matmul(&a.e).matmul(&gi);
        b.f = g.matmul(&a.f).matmul(&gi);
        b.k = g.matmul(&a.k).matmul(&gi);
        let phi = find_gauge(&a, &b).unwrap();
        assert!(rel_residual(&phi.matmul(&a.e).matmul(&phi.inverse().unwrap()), &b.e, 1.0) < 1e-9);
    }

    #[test]
    fn reversal_law() {
        for n in [3, 5] {
            let ctx = RootContext::<f64>::new(n, 1).unwrap();
            for params in [
                RepParams::new(ctx, cx(0.3, 0.1), cx(0.2, -0.5), cx(1.1, 0.4)).unwrap(),
                RepParams::nilpotent(ctx, cx(0.9, 0.3)).unwrap(),
            ] {
                let p = central_values(&build_cyclic_rep(params).unwrap()).unwrap();
                let r = spin_reversal_l_check(&p, cx(0.6, -0.8)).unwrap();
                assert!(r < 1e-9, "N={n}: {r}");
            }
        }
    }
}
