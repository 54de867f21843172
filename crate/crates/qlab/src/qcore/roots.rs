use super::real::{cis, one, Real, C};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

/// A primitive root of unity `q = exp(2 pi i k / N)`.
///
/// Powers are computed from the exact angle, never by repeated products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootContext<T: Real> {
    n: usize,
    k: usize,
    nprime: usize,
    parity: Parity,
    q: C<T>,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl<T: Real> RootContext<T> {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OrderTooSmall(n));
        }
        let kr = k % n;
        if gcd(kr, n) != 1 {
            return Err(Error::NonPrimitive { n, k });
        }
        let parity = if n % 2 == 1 { Parity::Odd } else { Parity::Even };
        let nprime = if parity == Parity::Odd { n } else { n / 2 };
        let mut ctx = RootContext { n, k: kr, nprime, parity, q: one() };
        ctx.q = ctx.qpow(1);
        let thresh = T::of(1e-12).max(T::epsilon() * T::of(64.0));
        for m in 1..n {
            let d: C<T> = ctx.qpow(m as i64) - one::<T>();
            if d.norm() <= thresh {
                return Err(Error::NonPrimitive { n, k });
            }
        }
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nprime(&self) -> usize {
        self.nprime
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn q(&self) -> C<T> {
        self.q
    }

    /// `gamma` with `q = exp(i gamma)`.
    pub fn gamma(&self) -> T {
        T::of(2.0) * T::PI() * T::of(self.k as f64) / T::of(self.n as f64)
    }

    /// `q^m` by index arithmetic modulo N.
    pub fn qpow(&self, m: i64) -> C<T> {
        let n = self.n as i64;
        let r = ((self.k as i64 * m) % n + n) % n;
        cis(T::of(2.0) * T::PI() * T::of(r as f64) / T::of(n as f64))
    }

    /// `q_h^m` with `q_h = exp(i pi k / N)`, so `q_h^2 = q`.
    pub fn qhalf_pow(&self, m: i64) -> C<T> {
        let n2 = 2 * self.n as i64;
        let r = ((self.k as i64 * m) % n2 + n2) % n2;
        cis(T::PI() * T::of(r as f64) / T::of(self.n as f64))
    }

    pub fn qhalf(&self) -> C<T> {
        self.qhalf_pow(1)
    }

    /// `q - q^{-1}`.
    pub fn qdiff(&self) -> C<T> {
        self.qpow(1) - self.qpow(-1)
    }

    /// The context of `q^{-1}`.
    pub fn inverse(&self) -> Self {
        RootContext::new(self.n, self.n - self.k).expect("inverse root is primitive")
    }

    /// The context of `-q`, reduced to its own primitive order.
    pub fn negated(&self) -> Result<Self> {
        let num = 2 * self.k + self.n;
        let den = 2 * self.n;
        let g = gcd(num % den, den);
        RootContext::new(den / g, (num % den) / g)
    }

    /// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`.
    pub fn q_bracket(&self, n: i64) -> C<T> {
        (self.qpow(n) - self.qpow(-n)) / self.qdiff()
    }

    /// `[lambda; n]_q = (lambda q^{-n} - lambda^{-1} q^n) / (q - q^{-1})`.
    pub fn lambda_bracket(&self, lambda: C<T>, n: i64) -> Result<C<T>> {
        if lambda.norm() == T::zero() {
            return Err(Error::ZeroLambda);
        }
        Ok((lambda * self.qpow(-n) - self.qpow(n) / lambda) / self.qdiff())
    }

    /// The polynomial `F_N` expressing `mu^{N'} + mu^{-N'}` through `mu + mu^{-1}`.
    pub fn big_f(&self, x: C<T>) -> C<T> {
        let two = T::of(2.0);
        let mut prod = one::<T>();
        if self.is_odd() {
            for l in 0..self.n as i64 {
                prod *= x + self.qpow(l) + self.qpow(-l);
            }
        } else {
            for l in (0..self.n as i64).step_by(2) {
                prod *= x - self.qpow(l + 1) - self.qpow(-l - 1);
            }
        }
        prod - two
    }
}

pub fn make_root_context<T: Real>(n: usize, k: usize) -> Result<RootContext<T>> {
    RootContext::new(n, k)
}

pub fn q_bracket<T: Real>(n: i64, ctx: &RootContext<T>) -> C<T> {
    ctx.q_bracket(n)
}

pub fn lambda_bracket<T: Real>(lambda: C<T>, n: i64, ctx: &RootContext<T>) -> Result<C<T>> {
    ctx.lambda_bracket(lambda, n)
}

pub fn big_f<T: Real>(x: C<T>, ctx: &RootContext<T>) -> C<T> {
    ctx.big_f(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn orders() {
        let c3 = RootContext::<f64>::new(3, 1).unwrap();
        assert_eq!(c3.nprime(), 3);
        assert_eq!(c3.parity(), Parity::Odd);
        let c4 = RootContext::<f64>::new(4, 1).unwrap();
        assert_eq!(c4.nprime(), 2);
        assert_eq!(c4.parity(), Parity::Even);
        assert_eq!(RootContext::<f64>::new(4, 2), Err(Error::NonPrimitive { n: 4, k: 2 }));
        assert_eq!(RootContext::<f64>::new(2, 1), Err(Error::OrderTooSmall(2)));
    }

    #[test]
    fn brackets() {
        let c = RootContext::<f64>::new(3, 1).unwrap();
        assert!((c.q_bracket(1) - 1.0).norm() < 1e-15);
        assert!(c.q_bracket(3).norm() < 1e-15);
        assert!((c.q_bracket(2) + 1.0).norm() < 1e-15);
        let q = c.q();
        let l = c.lambda_bracket(q, 1).unwrap();
        assert!(l.norm() < 1e-15);
        assert!(c.lambda_bracket(Complex64::new(1.0, 0.0), 0).unwrap().norm() < 1e-15);
        assert_eq!(c.lambda_bracket(Complex64::new(0.0, 0.0), 0), Err(Error::ZeroLambda));
    }

    #[test]
    fn big_f_even_four() {
        let c = RootContext::<f64>::new(4, 1).unwrap();
        let x = Complex64::new(0.3, -1.2);
        assert!((c.big_f(x) - (x * x - 2.0)).norm() < 1e-13);
        let c5 = RootContext::<f64>::new(5, 2).unwrap();
        assert!((c5.big_f(Complex64::new(2.0, 0.0)) - 2.0).norm() < 1e-12);
    }

    #[test]
    fn negated_and_inverse() {
        let c = RootContext::<f64>::new(6, 1).unwrap();
        let m = c.negated().unwrap();
        assert_eq!((m.n(), m.k()), (3, 2));
        assert!((m.q() + c.q()).norm() < 1e-14);
        let c3 = RootContext::<f64>::new(3, 1).unwrap();
        assert!((c3.negated().unwrap().q() + c3.q()).norm() < 1e-14);
        assert!((c3.inverse().q() - c3.q().inv()).norm() < 1e-14);
    }
}
