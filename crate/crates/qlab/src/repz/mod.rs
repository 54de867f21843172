//! Representations of U_q(sl2) at roots of unity and the hypersurface of
//! central values labelling them.

mod eval;
mod flow;
mod point;
mod reversal;

pub use eval::{
    aqg_residual, coproduct_action, ALL_GENERATORS, cs_residual, evaluation_rep, loop_central_values, two_dim_rep, Gradation,
    Generator, LoopCentral, LoopRep,
};
pub use flow::{coadjoint_flow, FlowGenerator};
pub use point::{central_values, fiber, in_discriminant, mu_branch, RepKind, SpecZPoint};
pub use reversal::{reversal_coordinates, spin_reversal_point};

use crate::error::{Error, Result};
use crate::qcore::{one, zero, CMatrix, Real, RootContext, C};

/// Coordinates `(xi, zeta, lambda)` of an N'-dimensional representation.
///
/// `sqrt_lambda` fixes the branch of `K^{1/2}` used by the breve L-operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParams<T: Real> {
    pub xi: C<T>,
    pub zeta: C<T>,
    pub lambda: C<T>,
    pub sqrt_lambda: C<T>,
    pub ctx: RootContext<T>,
}

impl<T: Real> RepParams<T> {
    pub fn new(ctx: RootContext<T>, xi: C<T>, zeta: C<T>, lambda: C<T>) -> Result<Self> {
        if lambda.norm() == T::zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(RepParams { xi, zeta, lambda, sqrt_lambda: lambda.sqrt(), ctx })
    }

    pub fn nilpotent(ctx: RootContext<T>, lambda: C<T>) -> Result<Self> {
        Self::new(ctx, zero(), zero(), lambda)
    }

    /// Same parameters with an explicit branch of `lambda^{1/2}`.
    pub fn with_sqrt_lambda(mut self, s: C<T>) -> Result<Self> {
        if (s * s - self.lambda).norm() > T::tol(1e-8) * self.lambda.norm() {
            return Err(Error::BranchDegenerate);
        }
        self.sqrt_lambda = s;
        Ok(self)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.xi.norm() == T::zero() && self.zeta.norm() == T::zero()
    }

    /// `[lambda; n-1][n] + xi zeta`, the coefficient of `E v_n`.
    pub fn e_coeff(&self, n: i64) -> C<T> {
        let lb = (self.lambda * self.ctx.qpow(1 - n) - self.ctx.qpow(n - 1) / self.lambda) / self.ctx.qdiff();
        lb * self.ctx.q_bracket(n) + self.xi * self.zeta
    }

    /// `eta = xi prod_{n=1}^{N'-1} ([lambda; n-1][n] + xi zeta)`.
    pub fn eta(&self) -> C<T> {
        (1..self.ctx.nprime() as i64).fold(self.xi, |acc, n| acc * self.e_coeff(n))
    }

    /// Casimir value `q lambda + q^{-1} lambda^{-1} + (q-q^{-1})^2 xi zeta`.
    pub fn casimir(&self) -> C<T> {
        let q = self.ctx.q();
        let d = self.ctx.qdiff();
        q * self.lambda + (q * self.lambda).inv() + d * d * self.xi * self.zeta
    }
}

/// Generator matrices `E, F, K` acting on `v_0, ..., v_{N'-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicRep<T: Real> {
    pub e: CMatrix<T>,
    pub f: CMatrix<T>,
    pub k: CMatrix<T>,
    pub params: RepParams<T>,
    pub eta: C<T>,
}

impl<T: Real> CyclicRep<T> {
    /// Builds the matrices without the even-order restriction. Used to
    /// exhibit the intertwiner obstruction for cyclic reps at even N.
    pub fn raw(params: RepParams<T>) -> Self {
        let ctx = params.ctx;
        let np = ctx.nprime();
        let mut e = CMatrix::zeros(np, np);
        let mut f = CMatrix::zeros(np, np);
        let k = CMatrix::from_diag(&(0..np).map(|n| params.lambda * ctx.qpow(-2 * n as i64)).collect::<Vec<_>>());
        for n in 0..np - 1 {
            f[(n + 1, n)] = one();
        }
        f[(0, np - 1)] += params.zeta;
        for n in 1..np {
            e[(n - 1, n)] = params.e_coeff(n as i64);
        }
        e[(np - 1, 0)] += params.xi;
        CyclicRep { e, f, k, params, eta: params.eta() }
    }

    pub fn dim(&self) -> usize {
        self.k.rows()
    }

    pub fn ctx(&self) -> RootContext<T> {
        self.params.ctx
    }

    pub fn k_inv(&self) -> CMatrix<T> {
        CMatrix::from_diag(&self.k.diag().iter().map(|x| x.inv()).collect::<Vec<_>>())
    }

    /// Residuals of `KEK^{-1}=q^2E`, `KFK^{-1}=q^{-2}F`, `[E,F]=(K-K^{-1})/(q-q^{-1})`.
    pub fn qg_residuals(&self) -> [T; 3] {
        let ctx = self.ctx();
        let ki = self.k_inv();
        let r1 = (&self.k.matmul(&self.e).matmul(&ki) - &self.e.scale(ctx.qpow(2))).max_abs();
        let r2 = (&self.k.matmul(&self.f).matmul(&ki) - &self.f.scale(ctx.qpow(-2))).max_abs();
        let rhs = (&self.k - &ki).scale(ctx.qdiff().inv());
        let r3 = (&self.e.commutator(&self.f) - &rhs).max_abs();
        [r1, r2, r3]
    }
}

pub fn build_cyclic_rep<T: Real>(params: RepParams<T>) -> Result<CyclicRep<T>> {
    if !params.ctx.is_odd() && !params.is_nilpotent() {
        return Err(Error::EvenParityCyclic);
    }
    Ok(CyclicRep::raw(params))
}
