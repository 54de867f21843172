//! Six-vertex R-matrix, transfer matrix, XXZ Hamiltonian and the finite
//! symmetries of the periodic chain.
//!
//! Basis: site 1 is the most significant bit, spin up is bit 0.

use crate::error::{Error, Result};
use crate::qcore::{one, rel_residual, zero, CMatrix, Real, RootContext, C};

pub type Rho<'a, T> = &'a dyn Fn(C<T>, &RootContext<T>) -> C<T>;

/// The unit normalization `rho = 1`.
pub fn unit_rho<T: Real>(_: C<T>, _: &RootContext<T>) -> C<T> {
    one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RGauge {
    Homogeneous,
    Principal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoltzmannWeights<T: Real> {
    pub a: C<T>,
    pub b: C<T>,
    pub c: C<T>,
    pub cprime: C<T>,
    pub z: C<T>,
    pub rho: C<T>,
}

impl<T: Real> BoltzmannWeights<T> {
    pub fn new(z: C<T>, ctx: &RootContext<T>, rho: Rho<T>) -> Result<Self> {
        let q2 = ctx.qpow(2);
        let den = one::<T>() - z * q2;
        if den.norm() < T::of(1e-13) {
            return Err(Error::PoleAtZ);
        }
        let r = rho(z, ctx);
        let b = r * (one::<T>() - z) * ctx.q() / den;
        let c = r * (one::<T>() - q2) / den;
        Ok(BoltzmannWeights { a: r, b, c, cprime: c * z, z, rho: r })
    }
}

/// `a(z)` and `b(z)` for the unit normalization.
pub fn weights_ab<T: Real>(z: C<T>, ctx: &RootContext<T>) -> Result<(C<T>, C<T>)> {
    let w = BoltzmannWeights::new(z, ctx, &unit_rho)?;
    Ok((w.a, w.b))
}

/// 4x4 R-matrix on `aux x site`, index `2*a + s`.
///
/// In the principal gauge the argument is `x` with `z = x^2`.
pub fn r_matrix<T: Real>(z: C<T>, ctx: &RootContext<T>, rho: Rho<T>, gauge: RGauge) -> Result<CMatrix<T>> {
    let zz = match gauge {
        RGauge::Homogeneous => z,
        RGauge::Principal => z * z,
    };
    let w = BoltzmannWeights::new(zz, ctx, rho)?;
    let mut r = CMatrix::zeros(4, 4);
    r[(0, 0)] = w.a;
    r[(3, 3)] = w.a;
    r[(1, 1)] = w.b;
    r[(2, 2)] = w.b;
    r[(1, 2)] = w.c;
    r[(2, 1)] = w.cprime;
    if gauge == RGauge::Principal {
        r[(1, 2)] = w.c * z;
        r[(2, 1)] = w.cprime / z;
    }
    Ok(r)
}

/// A dense operator on `(C^2)^{x M}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOperator<T: Real> {
    pub m: usize,
    pub matrix: CMatrix<T>,
    pub label: String,
}

impl<T: Real> ChainOperator<T> {
    pub fn new(m: usize, matrix: CMatrix<T>, label: impl Into<String>) -> Self {
        assert_eq!(matrix.rows(), 1 << m, "chain operator dimension");
        ChainOperator { m, matrix, label: label.into() }
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }
}

/// Blocks `blk[s_out][s_in]` of an operator on `aux x site` with site-fastest
/// index `2*a + s`.
pub fn site_blocks<T: Real>(op: &CMatrix<T>) -> [[CMatrix<T>; 2]; 2] {
    let b = |so: usize, si: usize| op.strided(so, si, 2);
    [[b(0, 0), b(0, 1)], [b(1, 0), b(1, 1)]]
}

/// Inverse of [`site_blocks`].
pub fn from_site_blocks<T: Real>(blk: &[[CMatrix<T>; 2]; 2]) -> CMatrix<T> {
    let n = blk[0][0].rows();
    CMatrix::from_fn(2 * n, 2 * n, |i, j| blk[i % 2][j % 2][(i / 2, j / 2)])
}

fn small_mul<T: Real>(a: &[C<T>], b: &[C<T>], d: usize) -> Vec<C<T>> {
    let mut out = vec![zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x.re == T::zero() && x.im == T::zero() {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += x * b[k * d + j];
            }
        }
    }
    out
}

/// `<beta|Op|alpha> = tr(blk[beta_M][alpha_M] ... blk[beta_1][alpha_1])`.
///
/// Each column is built site by site, keeping one partial product per
/// output prefix; cost `O(4^M D^3)`.
pub fn chain_trace<T: Real>(blk: &[[CMatrix<T>; 2]; 2], m: usize) -> CMatrix<T> {
    let d = blk[0][0].rows();
    let flat: Vec<Vec<Option<Vec<C<T>>>>> = (0..2)
        .map(|so| {
            (0..2)
                .map(|si| {
                    let b = &blk[so][si];
                    if b.max_abs() == T::zero() {
                        None
                    } else {
                        Some(b.data().to_vec())
                    }
                })
                .collect()
        })
        .collect();
    let dim = 1usize << m;
    let mut out = CMatrix::zeros(dim, dim);
    let mut ident = vec![zero(); d * d];
    for i in 0..d {
        ident[i * d + i] = one();
    }
    for alpha in 0..dim {
        let mut partial: Vec<Option<Vec<C<T>>>> = vec![Some(ident.clone())];
        for site in 0..m {
            let a = (alpha >> (m - 1 - site)) & 1;
            let mut next = Vec::with_capacity(partial.len() * 2);
            for p in &partial {
                for b in 0..2 {
                    next.push(match (p, &flat[b][a]) {
                        (Some(p), Some(x)) => Some(small_mul(x, p, d)),
                        _ => None,
                    });
                }
            }
            partial = next;
        }
        for (beta, p) in partial.iter().enumerate() {
            if let Some(p) = p {
                out[(beta, alpha)] = (0..d).fold(zero(), |s, i| s + p[i * d + i]);
            }
        }
    }
    out
}

pub fn transfer_matrix<T: Real>(z: C<T>, m: usize, ctx: &RootContext<T>, rho: Rho<T>) -> Result<ChainOperator<T>> {
    if m == 0 {
        return Err(Error::Precondition("chain length must be positive".into()));
    }
    let r = r_matrix(z, ctx, rho, RGauge::Homogeneous)?;
    Ok(ChainOperator::new(m, chain_trace(&site_blocks(&r), m), "T"))
}

/// Transfer matrix from an explicit R-matrix.
pub fn transfer_from_r<T: Real>(r: &CMatrix<T>, m: usize) -> ChainOperator<T> {
    ChainOperator::new(m, chain_trace(&site_blocks(r), m), "T")
}

/// Periodic XXZ Hamiltonian with anisotropy `(q + q^{-1})/2`.
pub fn hamiltonian<T: Real>(m: usize, ctx: &RootContext<T>) -> Result<ChainOperator<T>> {
    if m < 2 {
        return Err(Error::Precondition("Hamiltonian needs at least two sites".into()));
    }
    let dim = 1usize << m;
    let delta = (ctx.q() + ctx.q().inv()) * T::of(0.5);
    let two = T::of(2.0);
    let mut h = CMatrix::zeros(dim, dim);
    for s in 0..dim {
        for site in 0..m {
            let i = m - 1 - site;
            let j = m - 1 - ((site + 1) % m);
            let (bi, bj) = ((s >> i) & 1, (s >> j) & 1);
            if bi != bj {
                let t = s ^ (1 << i) ^ (1 << j);
                h[(t, s)] += C::new(two, T::zero());
                h[(s, s)] -= delta * two;
            }
        }
    }
    Ok(ChainOperator::new(m, h, "H"))
}

/// `S^z` eigenvalue of each basis state (half-integers).
pub fn spin_z_values<T: Real>(m: usize) -> Vec<T> {
    (0..1usize << m).map(|s| T::of(m as f64 / 2.0 - s.count_ones() as f64)).collect()
}

/// `(S^z, R, S)`: total spin, global spin flip, and `sigma^z x ... x sigma^z`.
pub fn symmetry_ops<T: Real>(m: usize) -> (ChainOperator<T>, ChainOperator<T>, ChainOperator<T>) {
    let dim = 1usize << m;
    let sz: Vec<C<T>> = spin_z_values::<T>(m).into_iter().map(|v| C::new(v, T::zero())).collect();
    let mut r = CMatrix::zeros(dim, dim);
    for s in 0..dim {
        r[(s ^ (dim - 1), s)] = one();
    }
    let sg: Vec<C<T>> =
        (0..dim).map(|s| if s.count_ones() % 2 == 0 { one() } else { -one::<T>() }).collect();
    (
        ChainOperator::new(m, CMatrix::from_diag(&sz), "Sz"),
        ChainOperator::new(m, r, "R"),
        ChainOperator::new(m, CMatrix::from_diag(&sg), "S"),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RstReport<T: Real> {
    /// `T(z, q^{-1})` against `T(z^{-1}, q)`.
    pub inversion: T,
    /// `T(z, -q)` against `U S T(z, q) U` where `U` is `sigma^z` on every
    /// second site. The literal identity without `U` does not hold.
    pub negation: T,
}

pub fn rst_checks<T: Real>(m: usize, z: C<T>, ctx: &RootContext<T>) -> Result<RstReport<T>> {
    if !m.is_multiple_of(2) {
        return Err(Error::Precondition("RST checks need an even chain".into()));
    }
    let inv = ctx.inverse();
    let neg = ctx.negated()?;
    let a = transfer_matrix(z, m, &inv, &unit_rho)?.matrix;
    let b = transfer_matrix(z.inv(), m, ctx, &unit_rho)?.matrix;
    let c = transfer_matrix(z, m, &neg, &unit_rho)?.matrix;
    let (_, _, s) = symmetry_ops::<T>(m);
    let stag: Vec<C<T>> = (0..1usize << m)
        .map(|b| {
            let mask: usize = (0..m).step_by(2).map(|i| 1 << i).sum();
            if (b & mask).count_ones().is_multiple_of(2) { one() } else { -one::<T>() }
        })
        .collect();
    let u = CMatrix::from_diag(&stag);
    let d = u.matmul(&s.matrix).matmul(&transfer_matrix(z, m, ctx, &unit_rho)?.matrix).matmul(&u);
    Ok(RstReport { inversion: rel_residual(&a, &b, T::zero()), negation: rel_residual(&c, &d, T::zero()) })
}

/// `Z = tr T(z)^{M'}`.
pub fn partition_function<T: Real>(z: C<T>, m: usize, mprime: usize, ctx: &RootContext<T>, rho: Rho<T>) -> Result<C<T>> {
    let t = transfer_matrix(z, m, ctx, rho)?;
    Ok(t.matrix.powi(mprime).trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::cx;

    fn ctx3() -> RootContext<f64> {
        RootContext::new(3, 1).unwrap()
    }

    #[test]
    fn permutation_at_one() {
        let r = r_matrix(cx(1.0, 0.0), &ctx3(), &unit_rho, RGauge::Homogeneous).unwrap();
        let mut p = CMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            p[(i, j)] = cx(1.0, 0.0);
        }
        assert!((&r - &p).max_abs() < 1e-15);
    }

    #[test]
    fn pole() {
        let c = ctx3();
        let z = c.qpow(-2);
        assert_eq!(r_matrix(z, &c, &unit_rho, RGauge::Homogeneous), Err(Error::PoleAtZ));
    }

    #[test]
    fn principal_symmetric_offdiagonal() {
        let r = r_matrix(cx(0.7, 0.4), &ctx3(), &unit_rho, RGauge::Principal).unwrap();
        assert!((r[(1, 2)] - r[(2, 1)]).norm() < 1e-15);
    }

    #[test]
    fn shift_at_one() {
        let m = 4;
        let t = transfer_matrix(cx(1.0, 0.0), m, &ctx3(), &unit_rho).unwrap();
        for s in 0..16usize {
            // T(1) moves the spin on site j to site j+1 (cyclically)
            let rot = ((s >> 1) | ((s & 1) << (m - 1))) & 15;
            let col = t.matrix.column(s);
            let hit = (0..16).filter(|&i| col[i].norm() > 1e-12).collect::<Vec<_>>();
            assert_eq!(hit.len(), 1);
            assert!(hit[0] == rot || hit[0] == (((s << 1) | (s >> (m - 1))) & 15));
        }
    }

    #[test]
    fn two_site_bruteforce() {
        let c = ctx3();
        let z = cx(0.3, 0.8);
        let r = r_matrix(z, &c, &unit_rho, RGauge::Homogeneous).unwrap();
        let t = transfer_matrix(z, 2, &c, &unit_rho).unwrap();
        for beta in 0..4usize {
            for alpha in 0..4usize {
                let mut s = cx(0.0, 0.0);
                for a0 in 0..2 {
                    for a1 in 0..2 {
                        for a2 in 0..2 {
                            // R_{02} R_{01}: aux a0 -> a1 at site 1, a1 -> a2 at site 2, a2 = a0
                            if a2 != a0 {
                                continue;
                            }
                            let (b1, b2) = (beta >> 1, beta & 1);
                            let (x1, x2) = (alpha >> 1, alpha & 1);
                            s += r[(a1 * 2 + b1, a0 * 2 + x1)] * r[(a2 * 2 + b2, a1 * 2 + x2)];
                        }
                    }
                }
                assert!((t.matrix[(beta, alpha)] - s).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn hamiltonian_basics() {
        let c = ctx3();
        let h = hamiltonian(4, &c).unwrap();
        assert!(h.matrix.column(0).iter().all(|x| x.norm() == 0.0));
        let (sz, r, s) = symmetry_ops::<f64>(4);
        assert!(h.matrix.commutator(&sz.matrix).max_abs() < 1e-14);
        assert!((&r.matrix.matmul(&r.matrix) - &CMatrix::identity(16)).max_abs() == 0.0);
        assert!((&s.matrix.matmul(&s.matrix) - &CMatrix::identity(16)).max_abs() == 0.0);
        let t = transfer_matrix(cx(0.4, -0.9), 4, &c, &unit_rho).unwrap();
        assert!(h.matrix.commutator(&t.matrix).max_abs() < 1e-12);
    }

    #[test]
    fn rst_small() {
        let c = ctx3();
        for m in [2, 4] {
            let r = rst_checks(m, cx(0.6, 0.3), &c).unwrap();
            assert!(r.inversion < 1e-12 && r.negation < 1e-12, "{r:?}");
        }
        assert!(rst_checks(3, cx(0.6, 0.3), &c).is_err());
    }

    #[test]
    fn partition_at_shift_point() {
        let c = ctx3();
        let m = 4;
        // tr(shift^k) counts the 2^{gcd(k,M)} periodic configurations
        for mp in 1..=4usize {
            let z = partition_function(cx(1.0, 0.0), m, mp, &c, &unit_rho).unwrap();
            let g = (1..=m).rev().find(|d| m % d == 0 && mp % d == 0).unwrap();
            assert!((z - (1u32 << g) as f64).norm() < 1e-10);
        }
    }
}
