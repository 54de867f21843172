use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Real scalar backing every complex computation in the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative tolerance used when a caller does not supply one.
    fn default_tol() -> Self;

    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits")
    }

    /// A double-precision consistency threshold, widened by
    /// `sqrt(eps / f64::EPSILON)` for coarser scalars.
    fn tol(x: f64) -> Self {
        let ratio = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
        Self::of(x * ratio.max(1.0).sqrt())
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn default_tol() -> Self {
        2e-3
    }
}

pub type C<T> = Complex<T>;

pub fn cx<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(T::of(re), T::of(im))
}

pub fn cis<T: Real>(theta: T) -> C<T> {
    Complex::new(theta.cos(), theta.sin())
}

pub fn zero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn one<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

/// Integer power that accepts negative exponents.
pub fn ipow<T: Real>(z: C<T>, n: i64) -> C<T> {
    if n >= 0 {
        z.powi(n as i32)
    } else {
        z.inv().powi((-n) as i32)
    }
}

/// `|a-b| / max(|a|,|b|,floor)`.
pub fn rel_diff<T: Real>(a: C<T>, b: C<T>, floor: T) -> T {
    let s = a.norm().max(b.norm()).max(floor);
    (a - b).norm() / s
}
