//! Auxiliary matrices `Q_p(z)`, their functional equations with the transfer
//! matrix, fiber sums and Baxter's explicit spin-zero matrix.

mod baxter;
mod laws;

pub use baxter::{baxter_q, baxter_tq_residual};
pub use laws::{commute_predicate, qt_commutator, transformation_check, CommuteReport, Law};

pub use crate::intertwiner::FEConvention;

use crate::error::{Error, Result};
use crate::intertwiner::prime_params;
use crate::qcore::{CMatrix, Real, RootContext, C};
use crate::repz::{Gradation, RepParams, SpecZPoint};
use crate::sixvertex::{chain_trace, transfer_matrix, unit_rho, weights_ab, ChainOperator};

/// `Phodd` for odd N, `Phiev` for even N.
pub fn default_convention<T: Real>(ctx: &RootContext<T>) -> FEConvention {
    if ctx.is_odd() {
        FEConvention::Phodd
    } else {
        FEConvention::Phiev
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix<T: Real> {
    pub op: ChainOperator<T>,
    pub point: SpecZPoint<T>,
    pub params: RepParams<T>,
    pub z: C<T>,
    pub convention: FEConvention,
    pub gradation: Gradation,
}

/// `tr_0 L_{0M}(w) ... L_{01}(w)` on the representation `params`.
pub fn q_chain<T: Real>(params: &RepParams<T>, w: C<T>, sqrt_w: C<T>, m: usize, conv: FEConvention) -> Result<CMatrix<T>> {
    if m == 0 {
        return Err(Error::Precondition("chain length must be positive".into()));
    }
    let l = conv.build_l(params, w, sqrt_w)?;
    Ok(chain_trace(&l.blocks(), m))
}

/// Principal-gradation auxiliary matrix built from `[[A, B/y], [C y, D]]` at `L(y^2)`.
pub fn q_chain_principal<T: Real>(params: &RepParams<T>, y: C<T>, m: usize, conv: FEConvention) -> Result<CMatrix<T>> {
    if m == 0 {
        return Err(Error::Precondition("chain length must be positive".into()));
    }
    let l = conv.build_l(params, y * y, y)?.principal(y);
    Ok(chain_trace(&l.blocks(), m))
}

fn chart_of<T: Real>(p: &SpecZPoint<T>) -> Result<RepParams<T>> {
    p.chart().map_err(|e| if e == Error::EvenParityCyclic { Error::EvenCyclic } else { e })
}

/// `Q_p(z)` with `w = z / mu_p`. In the principal gradation `z` is the
/// principal spectral variable `x` and `y = x / mu^{1/2}`.
pub fn build_q<T: Real>(p: &SpecZPoint<T>, z: C<T>, m: usize, conv: FEConvention, gradation: Gradation) -> Result<QMatrix<T>> {
    let params = chart_of(p)?;
    let mat = match gradation {
        Gradation::Homogeneous => {
            let w = z / p.mu;
            q_chain(&params, w, w.sqrt(), m, conv)?
        }
        Gradation::Principal => q_chain_principal(&params, z / p.mu.sqrt(), m, conv)?,
    };
    Ok(QMatrix { op: ChainOperator::new(m, mat, "Q"), point: *p, params, z, convention: conv, gradation })
}

/// Result of a functional-equation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TqReport<T: Real> {
    /// Relative residual; absolute (scaled by the L-block size) when trivial.
    pub residual: T,
    /// Set when every operator in the equation vanishes.
    pub trivial: bool,
    pub phi1: C<T>,
    pub phi2: C<T>,
}

fn tq_report<T: Real>(lhs: &CMatrix<T>, rhs: &CMatrix<T>, q: &CMatrix<T>, scale: T, phi1: C<T>, phi2: C<T>) -> TqReport<T> {
    let floor = T::of(1e-12) * scale;
    let trivial = q.max_abs() <= floor && lhs.max_abs() <= floor && rhs.max_abs() <= floor;
    let diff = (lhs - rhs).max_abs();
    let residual = if trivial { diff / scale.max(T::min_positive_value()) } else { diff / lhs.max_abs().max(rhs.max_abs()) };
    TqReport { residual, trivial, phi1, phi2 }
}

fn l_scale<T: Real>(params: &RepParams<T>, w: C<T>, sw: C<T>, m: usize, conv: FEConvention) -> Result<T> {
    let l = conv.build_l(params, w, sw)?;
    Ok(l.full().max_abs().powi(m as i32))
}

/// `Q_p(z) T(z) = phi_1^M Q_{p'}(z q^2) + phi_2^M Q_{p''}(z q^{-2})` on explicit coordinates.
pub fn tq_residual_params<T: Real>(
    params: &RepParams<T>,
    mu: C<T>,
    z: C<T>,
    m: usize,
    conv: FEConvention,
) -> Result<TqReport<T>> {
    let ctx = params.ctx;
    let q = ctx.q();
    let pr = prime_params(params, mu)?;
    let w = z / mu;
    let sw = w.sqrt();
    let (s1, s2) = conv.sqrt_w_shift(&ctx);
    let q0 = q_chain(params, w, sw, m, conv)?;
    let q1 = q_chain(&pr.prime, w * q, sw * s1, m, conv)?;
    let q2 = q_chain(&pr.double_prime, w / q, sw * s2, m, conv)?;
    let t = transfer_matrix(z, m, &ctx, &unit_rho)?.matrix;
    let (a, b) = weights_ab(z, &ctx)?;
    let (f1, f2) = conv.phi(a, b, &ctx);
    let (f1m, f2m) = (f1.powi(m as i32), f2.powi(m as i32));
    let lhs = q0.matmul(&t);
    let rhs = &q1.scale(f1m) + &q2.scale(f2m);
    Ok(tq_report(&lhs, &rhs, &q0, l_scale(params, w, sw, m, conv)?, f1, f2))
}

pub fn tq_residual<T: Real>(p: &SpecZPoint<T>, z: C<T>, m: usize, conv: FEConvention) -> Result<TqReport<T>> {
    tq_residual_params(&chart_of(p)?, p.mu, z, m, conv)
}

/// Terms of a fiber sum: coordinates, `mu` and the `w^{1/2}` shift per step.
fn fiber_terms<T: Real>(params: &RepParams<T>, mu: C<T>, m: usize) -> Result<Vec<(RepParams<T>, C<T>)>> {
    let ctx = params.ctx;
    if !ctx.is_odd() && !m.is_multiple_of(2) {
        return Err(Error::Precondition(
            "even-order fiber sums need an even chain: the lambda^{1/2} branch flips after N steps".into(),
        ));
    }
    let mut out = Vec::with_capacity(ctx.n());
    let (mut p, mut mu) = (*params, mu);
    for _ in 0..ctx.n() {
        out.push((p, mu));
        let pr = prime_params(&p, mu)?;
        p = pr.prime;
        mu = pr.mu_prime;
    }
    Ok(out)
}

/// Fiber sum together with a triviality flag.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSum<T: Real> {
    pub op: ChainOperator<T>,
    pub s: i64,
    /// The sum vanishes identically (relative to the size of its terms).
    pub trivial: bool,
}

fn fiber_sum_raw<T: Real>(
    terms: &[(RepParams<T>, C<T>)],
    s: i64,
    z: C<T>,
    sw0: C<T>,
    m: usize,
    conv: FEConvention,
) -> Result<(CMatrix<T>, T)> {
    let ctx = terms[0].0.ctx;
    let (_, s2) = conv.sqrt_w_shift(&ctx);
    let dim = 1usize << m;
    let mut acc = CMatrix::zeros(dim, dim);
    let mut scale = T::zero();
    let mut sw = sw0;
    for (l, (p, mu)) in terms.iter().enumerate() {
        let term = q_chain(p, z / *mu, sw, m, conv)?;
        scale = scale.max(term.max_abs());
        acc = &acc + &term.scale(ctx.qpow(-s * l as i64));
        sw *= s2;
    }
    Ok((acc, scale))
}

/// `sum_l q^{-s l} Q_{p_l}(z)` over the points `p_l` reached by `l` primes.
///
/// Odd N runs over the N' fiber points; even N over `lambda q^{-l}`,
/// `l` in `Z_N`, and needs an even chain.
pub fn fiber_sum_q<T: Real>(params: &RepParams<T>, mu: C<T>, s: i64, z: C<T>, m: usize, conv: FEConvention) -> Result<FiberSum<T>> {
    let terms = fiber_terms(params, mu, m)?;
    let (acc, scale) = fiber_sum_raw(&terms, s, z, (z / mu).sqrt(), m, conv)?;
    let trivial = acc.max_abs() <= T::of(1e-10) * scale;
    Ok(FiberSum { op: ChainOperator::new(m, acc, "Q_fiber"), s, trivial })
}

/// `Q(z) T(z) = phi_1^M q^s Q(z q^2) + phi_2^M q^{-s} Q(z q^{-2})` for the fiber sum.
pub fn fiber_sum_residual<T: Real>(
    params: &RepParams<T>,
    mu: C<T>,
    s: i64,
    z: C<T>,
    m: usize,
    conv: FEConvention,
) -> Result<TqReport<T>> {
    let ctx = params.ctx;
    let q = ctx.q();
    let terms = fiber_terms(params, mu, m)?;
    let sw = (z / mu).sqrt();
    let (f0, scale) = fiber_sum_raw(&terms, s, z, sw, m, conv)?;
    let (fp, _) = fiber_sum_raw(&terms, s, z * q * q, sw * q, m, conv)?;
    let (fm, _) = fiber_sum_raw(&terms, s, z / (q * q), sw / q, m, conv)?;
    let t = transfer_matrix(z, m, &ctx, &unit_rho)?.matrix;
    let (a, b) = weights_ab(z, &ctx)?;
    let (f1, f2) = conv.phi(a, b, &ctx);
    let lhs = f0.matmul(&t);
    let rhs = &fp.scale(f1.powi(m as i32) * ctx.qpow(s)) + &fm.scale(f2.powi(m as i32) * ctx.qpow(-s));
    Ok(tq_report(&lhs, &rhs, &f0, scale.max(T::min_positive_value()), f1, f2))
}
