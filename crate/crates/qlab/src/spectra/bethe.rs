use super::curve::{shifted_terms, SpectralCurve};
use super::sectors::SectorLabel;
use crate::error::{Error, Result};
use crate::qcore::{ipow, one, Real, RootContext, C};
use crate::qop::FEConvention;
use crate::sixvertex::weights_ab;

/// A complete string `{w0, w0 p, ..., w0 p^{len-1}}` with `p^{len} = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StringInfo<T: Real> {
    /// First member, in the curve variable.
    pub center: C<T>,
    pub length: usize,
    pub period: C<T>,
    pub members: Vec<C<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetheAnalysis<T: Real> {
    pub curve: SpectralCurve<T>,
    /// Multiplicity of the root at `w = 0`, kept out of the Bethe equations.
    pub zero_roots: usize,
    pub strings: Vec<StringInfo<T>>,
    /// Isolated roots, as `z` values.
    pub bethe_roots: Vec<C<T>>,
    /// Isolated roots at which both shifted curves vanish as well.
    pub common_roots: Vec<C<T>>,
    /// Isolated roots on a pole of the Boltzmann weights, where the
    /// functional equation cannot be evaluated.
    pub pole_roots: Vec<C<T>>,
    /// Functional-equation residual per Bethe root (empty without shifted curves).
    pub residuals: Vec<T>,
    /// Residual of `(a/b)^M = prod_{l != j} (q^2 z_j/z_l - 1)/(z_j/z_l - q^2)` per Bethe root.
    pub be_residuals: Vec<T>,
    pub sector: Option<SectorLabel>,
}

/// Shifted curves entering the residual at a root of the base curve.
#[derive(Debug, Clone, Copy)]
pub struct Shifts<'a, T: Real> {
    pub prime: &'a SpectralCurve<T>,
    pub double_prime: &'a SpectralCurve<T>,
    pub conv: FEConvention,
}

const STRING_TOL: f64 = 1e-6;
const COMMON_TOL: f64 = 1e-7;

/// Multiplicative period of complete strings: `q` for odd N, `q^2` for even N.
pub fn string_period<T: Real>(ctx: &RootContext<T>) -> C<T> {
    if ctx.is_odd() {
        ctx.q()
    } else {
        ctx.qpow(2)
    }
}

fn find_strings<T: Real>(roots: &[C<T>], ctx: &RootContext<T>) -> (Vec<StringInfo<T>>, Vec<C<T>>) {
    let period = string_period(ctx);
    let len = ctx.nprime();
    let mut used = vec![false; roots.len()];
    let mut strings = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let r = roots[i];
        let mut picked = vec![i];
        let mut cur = r;
        for _ in 1..len {
            cur *= period;
            let hit = (0..roots.len())
                .filter(|&k| !used[k] && !picked.contains(&k))
                .find(|&k| (roots[k] - cur).norm() <= T::of(STRING_TOL) * T::one().max(cur.norm()));
            match hit {
                Some(k) => picked.push(k),
                None => break,
            }
        }
        if picked.len() == len {
            for &k in &picked {
                used[k] = true;
            }
            strings.push(StringInfo { center: r, length: len, period, members: picked.iter().map(|&k| roots[k]).collect() });
        }
    }
    let rest = (0..roots.len()).filter(|&k| !used[k]).map(|k| roots[k]).collect();
    (strings, rest)
}

/// Residuals of the Bethe equations in their product form.
pub fn be_residuals<T: Real>(roots: &[C<T>], m: usize, ctx: &RootContext<T>) -> Result<Vec<T>> {
    let q2 = ctx.qpow(2);
    roots
        .iter()
        .enumerate()
        .map(|(j, &zj)| {
            let (a, b) = weights_ab(zj, ctx)?;
            let lhs = ipow(a / b, m as i64);
            let rhs = roots
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != j)
                .fold(one::<T>(), |acc, (_, &zl)| acc * (q2 * zj / zl - one::<T>()) / (zj / zl - q2));
            Ok((lhs - rhs).norm() / T::one().max(lhs.norm()))
        })
        .collect()
}

/// Zeros of an eigenvalue curve split into the root at the origin, complete
/// strings and isolated roots; isolated roots are checked against the
/// functional equation when the shifted curves are supplied.
pub fn bethe_analysis<T: Real>(
    curve: &SpectralCurve<T>,
    ctx: &RootContext<T>,
    m: usize,
    shifts: Option<Shifts<'_, T>>,
) -> Result<BetheAnalysis<T>> {
    if curve.poly.is_zero() {
        return Err(Error::ZeroCurve);
    }
    let roots = curve.poly.roots(T::of(1e-10))?;
    let rscale = roots.iter().fold(T::one(), |a, r| a.max(r.norm()));
    let (zeros, nonzero): (Vec<C<T>>, Vec<C<T>>) = roots.into_iter().partition(|r| r.norm() <= T::of(1e-8) * rscale);
    let (strings, isolated) = find_strings(&nonzero, ctx);
    let mut bethe = Vec::new();
    let mut common = Vec::new();
    let mut poles = Vec::new();
    let mut residuals = Vec::new();
    for r in isolated {
        let z = curve.to_z(r);
        match shifts {
            Some(s) => {
                let q2 = ctx.qpow(2);
                let small_p = s.prime.eval_z(z * q2).norm() <= T::of(COMMON_TOL) * s.prime.magnitude(z * q2);
                let small_pp = s.double_prime.eval_z(z / q2).norm() <= T::of(COMMON_TOL) * s.double_prime.magnitude(z / q2);
                if small_p && small_pp {
                    common.push(z);
                    continue;
                }
                let (t1, t2) = match shifted_terms(s.prime, s.double_prime, s.conv, z, m, ctx) {
                    Err(Error::PoleAtZ) => {
                        poles.push(z);
                        continue;
                    }
                    other => other?,
                };
                // sized by the terms' magnitudes: at b(z) = 0 both sides are round-off
                let (a, b) = weights_ab(z, ctx)?;
                let (f1, f2) = s.conv.phi(a, b, ctx);
                let mm = m as i32;
                let scale = f1.norm().powi(mm) * s.prime.magnitude(z * q2) + f2.norm().powi(mm) * s.double_prime.magnitude(z / q2);
                residuals.push((t1 + t2).norm() / scale.max(T::min_positive_value()));
                bethe.push(z);
            }
            None if weights_ab(z, ctx).is_err() => poles.push(z),
            None => bethe.push(z),
        }
    }
    let be = be_residuals(&bethe, m, ctx)?;
    Ok(BetheAnalysis {
        curve: curve.clone(),
        zero_roots: zeros.len(),
        strings,
        bethe_roots: bethe,
        common_roots: common,
        pole_roots: poles,
        residuals,
        be_residuals: be,
        sector: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{cx, ComplexPoly, Var};

    #[test]
    fn strings_and_zero_roots() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let q = ctx.q();
        let mu = cx(0.7, 0.4);
        let mut roots: Vec<C<f64>> = (0..3).flat_map(|n| [ipow(q, n) * mu, ipow(q, n) / mu]).collect();
        roots.push(cx(0.0, 0.0));
        let c = SpectralCurve { poly: ComplexPoly::from_roots(&roots, cx(2.0, 1.0), Var::W), mu };
        let ba = bethe_analysis(&c, &ctx, 3, None).unwrap();
        assert_eq!(ba.zero_roots, 1);
        assert_eq!(ba.strings.len(), 2);
        assert!(ba.bethe_roots.is_empty());
        for s in &ba.strings {
            let c3 = ipow(s.center, 3);
            assert!((c3 - ipow(mu, 3)).norm() < 1e-8 || (c3 - ipow(mu, -3)).norm() < 1e-8);
        }
    }

    #[test]
    fn zero_curve_reported() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let c = SpectralCurve::in_z(ComplexPoly::zero(Var::Z));
        assert_eq!(bethe_analysis(&c, &ctx, 3, None).unwrap_err(), Error::ZeroCurve);
    }

    #[test]
    fn even_order_uses_q_squared() {
        let ctx = RootContext::<f64>::new(4, 1).unwrap();
        assert!((string_period(&ctx) - cx(-1.0, 0.0)).norm() < 1e-15);
    }
}
