//! Sector decomposition, joint spectra of the commuting family, eigenvalue
//! curves and their zeros.

mod bethe;
mod curve;
mod joint;
mod sectors;

pub use bethe::{be_residuals, bethe_analysis, string_period, BetheAnalysis, Shifts, StringInfo};
pub use curve::{
    block_det_curve, curve_triple, default_samples, eigenvalue_curve, eigenvalue_curve_params, operator_curve,
    shifted_terms, transfer_eigen_from_q, CurveTriple, SpectralCurve,
};
pub use joint::{eig_residual, joint_spectrum, rayleigh, JointSpectrum};
pub use sectors::{sector_blocks, sz2_of, translation, Grading, SectorBlock, SectorLabel};

use crate::qcore::{ComplexPoly, Real, C};

/// One matched pair of the proportionality report.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioEntry<T: Real> {
    pub fiber_index: usize,
    pub baxter_index: usize,
    /// Mean of the ratio over the samples.
    pub ratio: C<T>,
    /// Mean of `|r - ratio|^2 / |ratio|^2`.
    pub variance: T,
    pub constant: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProportionalityReport<T: Real> {
    pub entries: Vec<RatioEntry<T>>,
}

impl<T: Real> ProportionalityReport<T> {
    pub fn all_constant(&self) -> bool {
        self.entries.iter().all(|e| e.constant)
    }

    pub fn max_variance(&self) -> T {
        self.entries.iter().fold(T::zero(), |a, e| a.max(e.variance))
    }
}

fn monic_distance<T: Real>(a: &ComplexPoly<T>, b: &ComplexPoly<T>) -> T {
    let (a, b) = (a.monic(), b.monic());
    let n = a.coeffs().len().max(b.coeffs().len());
    let get = |p: &ComplexPoly<T>, i: usize| p.coeffs().get(i).copied().unwrap_or_else(|| C::new(T::zero(), T::zero()));
    (0..n).fold(T::zero(), |s, i| s + (get(&a, i) - get(&b, i)).norm_sqr())
}

/// Pairs each fiber-sum curve with the nearest Baxter curve (after monic
/// normalization, greedily) and measures the ratio across `zs`.
pub fn baxter_comparison<T: Real>(
    fiber: &[ComplexPoly<T>],
    baxter: &[ComplexPoly<T>],
    zs: &[C<T>],
    tol: T,
) -> ProportionalityReport<T> {
    let mut free: Vec<usize> = (0..baxter.len()).filter(|&j| !baxter[j].is_zero()).collect();
    let mut entries = Vec::new();
    for (i, f) in fiber.iter().enumerate() {
        if f.is_zero() || free.is_empty() {
            continue;
        }
        let (pos, _) = free
            .iter()
            .enumerate()
            .map(|(k, &j)| (k, monic_distance(f, &baxter[j])))
            .fold((0, T::infinity()), |best, cur| if cur.1 < best.1 { cur } else { best });
        let j = free.remove(pos);
        let rs: Vec<C<T>> = zs.iter().map(|&z| f.eval(z) / baxter[j].eval(z)).collect();
        let n = T::of(rs.len().max(1) as f64);
        let mean = rs.iter().fold(C::new(T::zero(), T::zero()), |a, r| a + *r) / n;
        let var = rs.iter().fold(T::zero(), |a, r| a + (*r - mean).norm_sqr()) / n / mean.norm_sqr().max(T::min_positive_value());
        entries.push(RatioEntry { fiber_index: i, baxter_index: j, ratio: mean, variance: var, constant: var < tol });
    }
    ProportionalityReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, Var};

    #[test]
    fn proportional_pairs_found() {
        let p1 = ComplexPoly::from_roots(&[cx(1.0, 0.0), cx(0.0, 2.0)], cx(1.0, 0.0), Var::Z);
        let p2 = ComplexPoly::from_roots(&[cx(-1.0, 0.5)], cx(1.0, 0.0), Var::Z);
        let fiber = vec![p2.scale(cx(3.0, 0.0)), p1.scale(cx(0.0, -2.0))];
        let rep = baxter_comparison(&fiber, &[p1, p2], &default_samples(5), 1e-10);
        assert!(rep.all_constant());
        assert_eq!(rep.entries[0].baxter_index, 1);
        assert!((rep.entries[1].ratio - cx(0.0, -2.0)).norm() < 1e-12);
    }
}
