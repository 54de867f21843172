use super::{embed13, l_from_rep, LOperator, LVariant};
use crate::error::{Error, Result};
use crate::qcore::{rel_residual, CMatrix, Real, RootContext, C};
use crate::repz::{build_cyclic_rep, RepParams};
use crate::sixvertex::{r_matrix, unit_rho, weights_ab, RGauge};

/// Normalization of `rho_+`, `rho_-` and the resulting scalar functions
/// `phi_1`, `phi_2` of the functional equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FEConvention {
    /// Odd variant, `rho_+ = q w`, `rho_- = 1`; odd N.
    Phodd,
    /// Breve variant, `rho_+ = q w`, `rho_- = 1`; any parity.
    Phiev,
    /// `rho_+ = q w^{1/2}`, `rho_- = w^{-1/2}`, so that `phi_1 = b`, `phi_2 = a`.
    Phab,
}

impl FEConvention {
    pub fn variant<T: Real>(self, ctx: &RootContext<T>) -> Result<LVariant> {
        match self {
            FEConvention::Phodd if !ctx.is_odd() => Err(Error::EvenParity),
            FEConvention::Phodd => Ok(LVariant::Odd),
            FEConvention::Phiev => Ok(LVariant::Breve),
            FEConvention::Phab if ctx.is_odd() => Ok(LVariant::Odd),
            FEConvention::Phab => Ok(LVariant::Breve),
        }
    }

    /// `(rho_+, rho_-)` at argument `w` with the branch `sqrt_w` of `w^{1/2}`.
    pub fn rho<T: Real>(self, w: C<T>, sqrt_w: C<T>, ctx: &RootContext<T>) -> (C<T>, C<T>) {
        match self {
            FEConvention::Phab => (ctx.q() * sqrt_w, sqrt_w.inv()),
            _ => (ctx.q() * w, C::new(T::one(), T::zero())),
        }
    }

    /// Factors `(s', s'')` with `(wq)^{1/2} = s' w^{1/2}` and `(w/q)^{1/2} = s'' w^{1/2}`.
    pub fn sqrt_w_shift<T: Real>(self, ctx: &RootContext<T>) -> (C<T>, C<T>) {
        if ctx.is_odd() {
            let h = (ctx.n() as i64 - 1) / 2;
            (ctx.qpow(-h), ctx.qpow(h))
        } else {
            (ctx.qhalf(), ctx.qhalf().inv())
        }
    }

    /// `(phi_1, phi_2)` in terms of the six-vertex weights `a`, `b`.
    pub fn phi<T: Real>(self, a: C<T>, b: C<T>, ctx: &RootContext<T>) -> (C<T>, C<T>) {
        match self {
            FEConvention::Phab => (b, a),
            FEConvention::Phiev => (b / ctx.qhalf(), a * ctx.qhalf()),
            FEConvention::Phodd => {
                let h = (ctx.n() as i64 - 1) / 2;
                (b * ctx.qpow(h), a * ctx.qpow(-h))
            }
        }
    }

    /// L-operator at `w` on the representation `params`.
    pub fn build_l<T: Real>(self, params: &RepParams<T>, w: C<T>, sqrt_w: C<T>) -> Result<LOperator<T>> {
        let ctx = params.ctx;
        let variant = self.variant(&ctx)?;
        if !ctx.is_odd() && !params.is_nilpotent() {
            return Err(Error::EvenCyclic);
        }
        let rep = build_cyclic_rep(*params)?;
        let (rp, rm) = self.rho(w, sqrt_w, &ctx);
        Ok(l_from_rep(&rep, w, variant, rp, rm))
    }
}

/// Coordinates of the two representations `p'`, `p''` in the exact sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimeData<T: Real> {
    pub prime: RepParams<T>,
    pub double_prime: RepParams<T>,
    pub mu_prime: C<T>,
    pub mu_double_prime: C<T>,
}

/// `p'`: `lambda/q`, `mu q`; `p''`: `lambda q`, `mu/q`; `zeta' = zeta'' = q^{N'} zeta`.
pub fn prime_params<T: Real>(params: &RepParams<T>, mu: C<T>) -> Result<PrimeData<T>> {
    let ctx = params.ctx;
    let q = ctx.q();
    let qh = ctx.qhalf();
    let np = ctx.nprime() as i64;
    let (xi, zeta, la) = (params.xi, params.zeta, params.lambda);
    let den = mu - q * la;
    if den.norm() <= T::of(1e-12) * mu.norm().max(T::one()) {
        return Err(Error::PoleInParams);
    }
    let zp = ctx.qpow(np) * zeta;
    let (xp, xpp) = if zeta.norm() > T::zero() {
        (xi * zeta * (q * mu - la) / den / zp, xi * zeta * (mu / q - la * q * q) / den / zp)
    } else {
        let lb = |n| ctx.lambda_bracket(la, n);
        let d1 = la * q - (la * q).inv();
        if d1.norm() == T::zero() {
            return Err(Error::PoleInParams);
        }
        let bm1 = lb(-1)?;
        if bm1.norm() == T::zero() {
            return Err(Error::PoleInParams);
        }
        (xi * ctx.qpow(np) * (la - la.inv()) / d1, xi * lb(np - 2)? / bm1)
    };
    let prime = RepParams::new(ctx, xp, zp, la / q)?.with_sqrt_lambda(params.sqrt_lambda / qh)?;
    let double_prime = RepParams::new(ctx, xpp, zp, la * q)?.with_sqrt_lambda(params.sqrt_lambda * qh)?;
    Ok(PrimeData { prime, double_prime, mu_prime: mu * q, mu_double_prime: mu / q })
}

/// Inclusion `iota: V' -> V x C^2` and projection `tau: V x C^2 -> V''`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSequenceData<T: Real> {
    /// `2N' x N'`, column n is `X_n = alpha_n v_{n+1} x up + beta_n v_n x down`.
    pub iota: CMatrix<T>,
    /// `N' x 2N'`, annihilates every `X_n` and sends `Y_n = gamma_n v_n x up` to `v_n`.
    pub tau: CMatrix<T>,
    pub alpha: Vec<C<T>>,
    pub beta: Vec<C<T>>,
    pub gamma: Vec<C<T>>,
    pub primes: PrimeData<T>,
    pub alpha0: C<T>,
    pub gamma0: C<T>,
}

pub fn inclusion_map<T: Real>(params: &RepParams<T>, mu: C<T>) -> Result<ExactSequenceData<T>> {
    ExactSequenceData::new(params, mu)
}

pub fn projection_map<T: Real>(params: &RepParams<T>, mu: C<T>) -> Result<ExactSequenceData<T>> {
    ExactSequenceData::new(params, mu)
}

impl<T: Real> ExactSequenceData<T> {
    pub fn new(params: &RepParams<T>, mu: C<T>) -> Result<Self> {
        let ctx = params.ctx;
        let np = ctx.nprime();
        if np < 2 {
            return Err(Error::OrderTooSmall(np));
        }
        let primes = prime_params(params, mu)?;
        let q = ctx.q();
        let one = C::new(T::one(), T::zero());
        let alpha: Vec<C<T>> =
            (0..np).map(|n| if n == np - 1 { params.zeta } else { one } * ctx.qpow(-(n as i64))).collect();
        let beta: Vec<C<T>> = (0..np)
            .map(|n| (mu * q / params.lambda * ctx.qpow(n as i64) - ctx.qpow(-(n as i64))) / ctx.qdiff())
            .collect();
        let mut iota = CMatrix::zeros(2 * np, np);
        for n in 0..np {
            iota[(((n + 1) % np) * 2, n)] += alpha[n];
            iota[(n * 2 + 1, n)] += beta[n];
        }
        let mut gamma = vec![one];
        for m in 1..np as i64 {
            let den = params.e_coeff(m);
            if den.norm() == T::zero() {
                return Err(Error::PoleInParams);
            }
            let g = *gamma.last().unwrap() * primes.double_prime.e_coeff(m) / den;
            gamma.push(g);
        }
        let mut basis = CMatrix::zeros(2 * np, 2 * np);
        for n in 0..np {
            for r in 0..2 * np {
                basis[(r, n)] = iota[(r, n)];
            }
            basis[(n * 2, np + n)] = gamma[n];
        }
        let inv = basis.inverse().map_err(|_| Error::PoleInParams)?;
        let tau = CMatrix::from_fn(np, 2 * np, |i, j| inv[(np + i, j)]);
        Ok(ExactSequenceData { iota, tau, alpha, beta, gamma, primes, alpha0: one, gamma0: one })
    }
}

/// Residuals and scalar factors of
/// `L13(w) R23(z) (iota x 1) = phi_1 (iota x 1) L'(wq)` and
/// `(tau x 1) L13(w) R23(z) = phi_2 L''(w/q) (tau x 1)`, with `w = z/mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSequenceCheck<T: Real> {
    pub residual1: T,
    pub residual2: T,
    pub phi1: C<T>,
    pub phi2: C<T>,
    /// The closed forms of the chosen convention.
    pub phi1_expected: C<T>,
    pub phi2_expected: C<T>,
    pub tau_iota: T,
    /// `|eta' - eta|` and `|eta'' - eta|`, relative.
    pub eta_shift: [T; 2],
}

fn fit<T: Real>(lhs: &CMatrix<T>, rhs: &CMatrix<T>) -> (C<T>, T) {
    let (mut num, mut den) = (C::new(T::zero(), T::zero()), T::zero());
    for (a, b) in lhs.data().iter().zip(rhs.data()) {
        num += b.conj() * a;
        den += b.norm_sqr();
    }
    let phi = num / den;
    (phi, rel_residual(lhs, &rhs.scale(phi), T::zero()))
}

pub fn verify_exact_sequence<T: Real>(
    params: &RepParams<T>,
    mu: C<T>,
    z: C<T>,
    conv: FEConvention,
) -> Result<ExactSequenceCheck<T>> {
    let ctx = params.ctx;
    let data = ExactSequenceData::new(params, mu)?;
    let q = ctx.q();
    let w = z / mu;
    let sw = w.sqrt();
    let (s1, s2) = conv.sqrt_w_shift(&ctx);
    let l = conv.build_l(params, w, sw)?;
    let l1 = conv.build_l(&data.primes.prime, w * q, sw * s1)?;
    let l2 = conv.build_l(&data.primes.double_prime, w / q, sw * s2)?;
    let np = ctx.nprime();
    let lr = embed13(&l.full()).matmul(&CMatrix::identity(np).kron(&r_matrix(z, &ctx, &unit_rho, RGauge::Homogeneous)?));
    let i2 = CMatrix::identity(2);
    let iot = data.iota.kron(&i2);
    let taut = data.tau.kron(&i2);
    let (phi1, residual1) = fit(&lr.matmul(&iot), &iot.matmul(&l1.full()));
    let (phi2, residual2) = fit(&taut.matmul(&lr), &l2.full().matmul(&taut));
    let (a, b) = weights_ab(z, &ctx)?;
    let (phi1_expected, phi2_expected) = conv.phi(a, b, &ctx);
    let eta = params.eta();
    let scale = eta.norm().max(T::of(1e-300));
    let e1 = (data.primes.prime.eta() - eta).norm() / scale;
    let e2 = (data.primes.double_prime.eta() - eta).norm() / scale;
    Ok(ExactSequenceCheck {
        residual1,
        residual2,
        phi1,
        phi2,
        phi1_expected,
        phi2_expected,
        tau_iota: data.tau.matmul(&data.iota).max_abs(),
        eta_shift: [e1, e2],
    })
}
