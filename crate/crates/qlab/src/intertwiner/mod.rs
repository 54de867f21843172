//! L-operators intertwining `pi_w^p x pi_z^0`, their Yang-Baxter checks and
//! related constructions.

mod bridge;
mod crit;
mod exact;
mod gauge;

pub use bridge::{bs_bridge, BsBridge};
pub use crit::existence_criteria;
pub use exact::{
    inclusion_map, prime_params, projection_map, verify_exact_sequence, ExactSequenceCheck, ExactSequenceData,
    FEConvention, PrimeData,
};
pub use gauge::{find_gauge, find_gauge_matrices, spin_reversal_l_check};

use crate::error::{Error, Result};
use crate::qcore::{rel_residual, CMatrix, Real, C};
use crate::repz::{
    build_cyclic_rep, coproduct_action, evaluation_rep, two_dim_rep, CyclicRep, Gradation, RepParams, SpecZPoint,
    ALL_GENERATORS,
};
use crate::sixvertex::{from_site_blocks, r_matrix, unit_rho, RGauge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LVariant {
    /// Built from integer powers of `K`; odd N only.
    Odd,
    /// Built from `t = K^{1/2}`; any parity, nilpotent reps at even N.
    Breve,
}

/// `L(w) = [[A, B], [C, D]]` over the spin factor, acting on `aux x site`.
#[derive(Debug, Clone, PartialEq)]
pub struct LOperator<T: Real> {
    pub a: CMatrix<T>,
    pub b: CMatrix<T>,
    pub c: CMatrix<T>,
    pub d: CMatrix<T>,
    pub w_arg: C<T>,
    pub variant: LVariant,
    pub rho_plus: C<T>,
    pub rho_minus: C<T>,
    pub params: RepParams<T>,
}

impl<T: Real> LOperator<T> {
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Blocks indexed `[s_out][s_in]`.
    pub fn blocks(&self) -> [[CMatrix<T>; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]]
    }

    /// Full `2N' x 2N'` matrix, index `2*a + s`.
    pub fn full(&self) -> CMatrix<T> {
        from_site_blocks(&self.blocks())
    }

    /// Principal-gradation form `[[A, B/y], [C y, D]]`; requires `w_arg = y^2`.
    pub fn principal(&self, y: C<T>) -> Self {
        let mut out = self.clone();
        out.b = self.b.scale(y.inv());
        out.c = self.c.scale(y);
        out
    }

    /// Blocks of `(1 x sigma^x) L (1 x sigma^x)`.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.a = self.d.clone();
        out.b = self.c.clone();
        out.c = self.b.clone();
        out.d = self.a.clone();
        out
    }
}

/// L-operator of `rep` at argument `w` with explicit `rho_+`, `rho_-`.
///
/// No parity checks; see [`build_l`].
pub fn l_from_rep<T: Real>(rep: &CyclicRep<T>, w: C<T>, variant: LVariant, rho_plus: C<T>, rho_minus: C<T>) -> LOperator<T> {
    let ctx = rep.ctx();
    let d = ctx.qdiff();
    let (a, b, c, dd) = match variant {
        LVariant::Odd => {
            let n = ctx.n();
            let kp = rep.k.powi(n.div_ceil(2));
            let km = rep.k.powi((n - 1) / 2);
            (
                &kp.scale(rho_plus) - &km.scale(rho_minus),
                kp.matmul(&rep.f).scale(rho_plus * d),
                rep.e.matmul(&km).scale(rho_minus * d),
                &km.scale(rho_plus) - &kp.scale(rho_minus),
            )
        }
        LVariant::Breve => {
            let np = rep.dim();
            let sl = rep.params.sqrt_lambda;
            let t: Vec<C<T>> = (0..np).map(|n| sl * ctx.qhalf_pow(-2 * n as i64)).collect();
            let ti: Vec<C<T>> = t.iter().map(|x| x.inv()).collect();
            let (t, ti) = (CMatrix::from_diag(&t), CMatrix::from_diag(&ti));
            (
                &t.scale(rho_plus) - &ti.scale(rho_minus),
                t.matmul(&rep.f).scale(rho_plus * d),
                rep.e.matmul(&ti).scale(rho_minus * d),
                &ti.scale(rho_plus) - &t.scale(rho_minus),
            )
        }
    };
    LOperator { a, b, c, d: dd, w_arg: w, variant, rho_plus, rho_minus, params: rep.params }
}

fn check_variant<T: Real>(params: &RepParams<T>, variant: LVariant) -> Result<()> {
    let odd = params.ctx.is_odd();
    if variant == LVariant::Odd && !odd {
        return Err(Error::EvenParity);
    }
    if !odd && !params.is_nilpotent() {
        return Err(Error::EvenCyclic);
    }
    Ok(())
}

/// L-operator with the default normalization `rho_+ = q w`, `rho_- = 1`.
pub fn build_l_params<T: Real>(params: &RepParams<T>, w: C<T>, variant: LVariant) -> Result<LOperator<T>> {
    check_variant(params, variant)?;
    let rep = build_cyclic_rep(*params)?;
    Ok(l_from_rep(&rep, w, variant, params.ctx.q() * w, C::new(T::one(), T::zero())))
}

pub fn build_l<T: Real>(p: &SpecZPoint<T>, w: C<T>, variant: LVariant) -> Result<LOperator<T>> {
    build_l_params(&p.chart()?, w, variant)
}

/// Breve L-operator for any parameters, including cyclic ones at even N
/// where no intertwiner exists.
pub fn build_l_unchecked<T: Real>(params: &RepParams<T>, w: C<T>) -> LOperator<T> {
    let rep = CyclicRep::raw(*params);
    l_from_rep(&rep, w, LVariant::Breve, params.ctx.q() * w, C::new(T::one(), T::zero()))
}

/// `max_x |L (pi_w x pi_z) Delta(x) - (pi_w x pi_z) Delta^op(x) L| / |L|`.
///
/// `l` must be built at `w/z` (homogeneous) or be the principal form at
/// `y = w^{1/2} / z^{1/2}`.
pub fn verify_intertwining<T: Real>(l: &LOperator<T>, w: C<T>, z: C<T>, gradation: Gradation) -> Result<T> {
    let expected = w / z;
    if (l.w_arg - expected).norm() > T::tol(1e-10) * expected.norm().max(T::one()) {
        return Err(Error::Precondition("L must be built at w/z".into()));
    }
    let rep = CyclicRep::raw(l.params);
    let pw = evaluation_rep(&rep, w, gradation)?;
    let pz = two_dim_rep(l.params.ctx, z, gradation)?;
    let full = match gradation {
        Gradation::Homogeneous => l.full(),
        Gradation::Principal => l.principal(w.sqrt() / z.sqrt()).full(),
    };
    let norm = full.max_abs();
    let mut worst = T::zero();
    for g in ALL_GENERATORS {
        let lhs = full.matmul(&coproduct_action(g, &pw, &pz, false));
        let rhs = coproduct_action(g, &pw, &pz, true).matmul(&full);
        worst = worst.max((&lhs - &rhs).max_abs() / norm);
    }
    Ok(worst)
}

/// Embeds an operator on `(aux, s)` into `(aux, s2, s3)` acting on `aux, s3`.
pub fn embed13<T: Real>(l: &CMatrix<T>) -> CMatrix<T> {
    let n = l.rows() / 2;
    let mut out = CMatrix::zeros(4 * n, 4 * n);
    for a in 0..n {
        for s in 0..2 {
            for b in 0..n {
                for t in 0..2 {
                    let v = l[(a * 2 + s, b * 2 + t)];
                    for m in 0..2 {
                        out[((a * 2 + m) * 2 + s, (b * 2 + m) * 2 + t)] = v;
                    }
                }
            }
        }
    }
    out
}

/// `L12(w/z) L13(w) R23(z) = R23(z) L13(w) L12(w/z)`; relative residual.
pub fn verify_ybe<T: Real>(params: &RepParams<T>, variant: LVariant, w: C<T>, z: C<T>) -> Result<T> {
    let ctx = params.ctx;
    let l12 = build_l_params(params, w / z, variant)?.full().kron(&CMatrix::identity(2));
    let l13 = embed13(&build_l_params(params, w, variant)?.full());
    let r23 = CMatrix::identity(params.ctx.nprime()).kron(&r_matrix(z, &ctx, &unit_rho, RGauge::Homogeneous)?);
    let lhs = l12.matmul(&l13).matmul(&r23);
    let rhs = r23.matmul(&l13).matmul(&l12);
    Ok(rel_residual(&lhs, &rhs, T::zero()))
}

/// The same relation with every L replaced by the six-vertex R-matrix.
pub fn verify_ybe_r<T: Real>(ctx: &crate::qcore::RootContext<T>, w: C<T>, z: C<T>) -> Result<T> {
    let r = |x| r_matrix(x, ctx, &unit_rho, RGauge::Homogeneous);
    let r12 = r(w / z)?.kron(&CMatrix::identity(2));
    let r13 = embed13(&r(w)?);
    let r23 = CMatrix::identity(2).kron(&r(z)?);
    let lhs = r12.matmul(&r13).matmul(&r23);
    let rhs = r23.matmul(&r13).matmul(&r12);
    Ok(rel_residual(&lhs, &rhs, T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, RootContext};

    fn cyc(n: usize) -> RepParams<f64> {
        RepParams::new(RootContext::new(n, 1).unwrap(), cx(0.3, -0.4), cx(0.5, 0.2), cx(0.8, 0.6)).unwrap()
    }

    #[test]
    fn odd_blocks_match_definition() {
        let p = cyc(3);
        let w = cx(0.7, 0.1);
        let l = build_l_params(&p, w, LVariant::Odd).unwrap();
        let rep = build_cyclic_rep(p).unwrap();
        let q = p.ctx.q();
        let a = &rep.k.powi(2).scale(q * w) - &rep.k;
        assert!((&l.a - &a).max_abs() < 1e-14);
        assert!((l.rho_plus / l.rho_minus - q * w).norm() < 1e-15);
    }

    #[test]
    fn intertwines_odd_and_breve() {
        for n in [3, 5] {
            let p = cyc(n);
            let (w, z) = (cx(0.4, 1.1), cx(-0.6, 0.3));
            for v in [LVariant::Odd, LVariant::Breve] {
                let l = build_l_params(&p, w / z, v).unwrap();
                assert!(verify_intertwining(&l, w, z, Gradation::Homogeneous).unwrap() < 1e-10);
                let lp = build_l_params(&p, w / z, v).unwrap();
                assert!(verify_intertwining(&lp, w, z, Gradation::Principal).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn even_order() {
        let ctx = RootContext::<f64>::new(4, 1).unwrap();
        let nil = RepParams::nilpotent(ctx, cx(0.8, 0.3)).unwrap();
        let (w, z) = (cx(0.4, 1.1), cx(-0.6, 0.3));
        let l = build_l_params(&nil, w / z, LVariant::Breve).unwrap();
        assert!(verify_intertwining(&l, w, z, Gradation::Homogeneous).unwrap() < 1e-10);
        assert_eq!(build_l_params(&nil, w, LVariant::Odd).unwrap_err(), Error::EvenParity);
        let cy = RepParams::new(ctx, cx(0.3, 0.0), cx(0.7, 0.0), cx(0.8, 0.3)).unwrap();
        assert_eq!(build_l_params(&cy, w, LVariant::Breve).unwrap_err(), Error::EvenCyclic);
        let bad = build_l_unchecked(&cy, w / z);
        assert!(verify_intertwining(&bad, w, z, Gradation::Homogeneous).unwrap() > 1e-2);
    }

    #[test]
    fn yang_baxter() {
        let (w, z) = (cx(0.9, -0.2), cx(0.3, 0.7));
        for n in [3, 5] {
            assert!(verify_ybe(&cyc(n), LVariant::Odd, w, z).unwrap() < 1e-9);
        }
        let nil = RepParams::nilpotent(RootContext::new(4, 1).unwrap(), cx(0.8, 0.3)).unwrap();
        assert!(verify_ybe(&nil, LVariant::Breve, w, z).unwrap() < 1e-9);
        assert!(verify_ybe_r(&RootContext::<f64>::new(5, 2).unwrap(), w, z).unwrap() < 1e-10);
    }

    #[test]
    fn reversed_blocks() {
        let l = build_l_params(&cyc(3), cx(0.5, 0.5), LVariant::Odd).unwrap();
        let mut sx = CMatrix::zeros(2, 2);
        sx[(0, 1)] = cx(1.0, 0.0);
        sx[(1, 0)] = cx(1.0, 0.0);
        let ix = CMatrix::identity(3).kron(&sx);
        let lhs = ix.matmul(&l.full()).matmul(&ix);
        assert_eq!(lhs, l.reversed().full());
    }
}
