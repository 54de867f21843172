use crate::error::{Error, Result};
use crate::qcore::{cis, zero, CMatrix, Real, C};
use crate::sixvertex::ChainOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grading {
    /// Fixed `S^z`.
    Sz,
    /// Number of down spins modulo the given period (`N'` for cyclic Q).
    SzModNprime(usize),
    /// Fixed `S^z` and lattice momentum `2 pi k / M`.
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorLabel {
    /// `2 S^z`, when fixed.
    pub sz2: Option<i64>,
    /// Down-spin count modulo the grading period.
    pub down_class: Option<usize>,
    pub momentum: Option<usize>,
}

/// Restriction of an operator to one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorBlock<T: Real> {
    pub label: SectorLabel,
    /// Basis states spanning the sector (for momentum sectors, the states
    /// whose translation orbits enter the basis).
    pub indices: Vec<usize>,
    /// Orthonormal basis as columns of a `2^M x d` matrix.
    pub basis: CMatrix<T>,
    pub block: CMatrix<T>,
}

impl<T: Real> SectorBlock<T> {
    pub fn dim(&self) -> usize {
        self.block.rows()
    }

    /// `B^dagger A B` for another operator on the same chain.
    pub fn restrict(&self, op: &CMatrix<T>) -> CMatrix<T> {
        self.basis.adjoint().matmul(&op.matmul(&self.basis))
    }

    /// Embed a sector vector into the full space.
    pub fn lift(&self, v: &[C<T>]) -> Vec<C<T>> {
        self.basis.matvec(v)
    }
}

pub fn sz2_of(m: usize, s: usize) -> i64 {
    m as i64 - 2 * s.count_ones() as i64
}

/// Cyclic shift moving site `i` to site `i + 1`.
pub fn translation<T: Real>(m: usize) -> CMatrix<T> {
    let dim = 1usize << m;
    let mut out = CMatrix::zeros(dim, dim);
    for s in 0..dim {
        out[(rotate(s, m), s)] = C::new(T::one(), T::zero());
    }
    out
}

fn rotate(s: usize, m: usize) -> usize {
    ((s >> 1) | ((s & 1) << (m - 1))) & ((1 << m) - 1)
}

fn selection<T: Real>(dim: usize, idx: &[usize]) -> CMatrix<T> {
    let mut b = CMatrix::zeros(dim, idx.len());
    for (c, &i) in idx.iter().enumerate() {
        b[(i, c)] = C::new(T::one(), T::zero());
    }
    b
}

fn coupling<T: Real>(a: &CMatrix<T>, key: &[usize]) -> T {
    let n = a.rows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            if key[i] != key[j] {
                worst = worst.max(a[(i, j)].norm());
            }
        }
    }
    let s = a.max_abs();
    if s == T::zero() {
        T::zero()
    } else {
        worst / s
    }
}

const BLOCK_TOL: f64 = 1e-12;

/// Split `op` into sectors of the chosen grading, ordered by label.
pub fn sector_blocks<T: Real>(op: &ChainOperator<T>, grading: Grading) -> Result<Vec<SectorBlock<T>>> {
    let m = op.m;
    let dim = op.dim();
    let a = &op.matrix;
    let tol = T::of(BLOCK_TOL);
    match grading {
        Grading::Sz | Grading::SzModNprime(_) => {
            let key: Vec<usize> = (0..dim)
                .map(|s| match grading {
                    Grading::SzModNprime(p) => s.count_ones() as usize % p.max(1),
                    _ => s.count_ones() as usize,
                })
                .collect();
            let c = coupling(a, &key);
            if c > tol {
                return Err(Error::NotBlockDiagonal(c.to_f64_lossy()));
            }
            let mut keys: Vec<usize> = key.clone();
            keys.sort_unstable();
            keys.dedup();
            let mut out: Vec<SectorBlock<T>> = keys
                .into_iter()
                .map(|k| {
                    let idx: Vec<usize> = (0..dim).filter(|&s| key[s] == k).collect();
                    let label = match grading {
                        Grading::SzModNprime(_) => SectorLabel { sz2: None, down_class: Some(k), momentum: None },
                        _ => SectorLabel { sz2: Some(m as i64 - 2 * k as i64), down_class: None, momentum: None },
                    };
                    let basis = selection(dim, &idx);
                    let block = CMatrix::from_fn(idx.len(), idx.len(), |i, j| a[(idx[i], idx[j])]);
                    SectorBlock { label, indices: idx, basis, block }
                })
                .collect();
            out.sort_by_key(|b| b.label);
            Ok(out)
        }
        Grading::Momentum => {
            let key: Vec<usize> = (0..dim).map(|s| s.count_ones() as usize).collect();
            let c = coupling(a, &key);
            if c > tol {
                return Err(Error::NotBlockDiagonal(c.to_f64_lossy()));
            }
            let sh = translation::<T>(m);
            let comm = a.commutator(&sh).max_abs();
            let scale = a.max_abs();
            if scale > T::zero() && comm > tol * scale {
                return Err(Error::NotBlockDiagonal((comm / scale).to_f64_lossy()));
            }
            let mut out = Vec::new();
            let mut reps: Vec<(usize, usize)> = Vec::new();
            let mut seen = vec![false; dim];
            for s in 0..dim {
                if seen[s] {
                    continue;
                }
                let mut period = 0;
                let mut t = s;
                loop {
                    seen[t] = true;
                    period += 1;
                    t = rotate(t, m);
                    if t == s {
                        break;
                    }
                }
                reps.push((s, period));
            }
            for down in 0..=m {
                for k in 0..m {
                    let mut cols: Vec<Vec<C<T>>> = Vec::new();
                    let mut idx = Vec::new();
                    for &(r, period) in &reps {
                        if r.count_ones() as usize != down || (k * period) % m != 0 {
                            continue;
                        }
                        let mut v = vec![zero::<T>(); dim];
                        let norm = T::of(period as f64).sqrt();
                        let mut t = r;
                        for j in 0..period {
                            let ph = T::of(-2.0 * std::f64::consts::PI * (k * j) as f64 / m as f64);
                            v[t] = cis(ph) / norm;
                            t = rotate(t, m);
                        }
                        cols.push(v);
                        idx.push(r);
                    }
                    if cols.is_empty() {
                        continue;
                    }
                    let basis = CMatrix::from_fn(dim, cols.len(), |i, j| cols[j][i]);
                    let block = basis.adjoint().matmul(&a.matmul(&basis));
                    let label = SectorLabel { sz2: Some(m as i64 - 2 * down as i64), down_class: None, momentum: Some(k) };
                    out.push(SectorBlock { label, indices: idx, basis, block });
                }
            }
            out.sort_by_key(|b| b.label);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, RootContext};
    use crate::sixvertex::{transfer_matrix, unit_rho};

    #[test]
    fn transfer_sz_blocks_are_binomial() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let t = transfer_matrix(cx(0.4, 0.3), 4, &ctx, &unit_rho).unwrap();
        let blocks = sector_blocks(&t, Grading::Sz).unwrap();
        let mut dims: Vec<usize> = blocks.iter().map(|b| b.dim()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 4, 4, 6]);
    }

    #[test]
    fn momentum_blocks_reassemble_spectrum() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let t = transfer_matrix(cx(0.4, 0.3), 4, &ctx, &unit_rho).unwrap();
        let blocks = sector_blocks(&t, Grading::Momentum).unwrap();
        assert_eq!(blocks.iter().map(|b| b.dim()).sum::<usize>(), 16);
        let tr: C<f64> = blocks.iter().map(|b| b.block.trace()).sum();
        assert!((tr - t.matrix.trace()).norm() < 1e-12);
    }

    #[test]
    fn translation_has_order_m() {
        let s = translation::<f64>(5);
        assert!((&s.powi(5) - &CMatrix::identity(32)).max_abs() < 1e-15);
    }
}
