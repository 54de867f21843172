use super::CyclicRep;
use crate::error::{Error, Result};
use crate::qcore::{one, CMatrix, Real, RootContext, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gradation {
    Homogeneous,
    Principal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
}

/// Images of the loop-algebra generators `e_i, f_i, k_i` (i = 0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct LoopRep<T: Real> {
    pub e: [CMatrix<T>; 2],
    pub f: [CMatrix<T>; 2],
    pub k: [CMatrix<T>; 2],
    pub param: C<T>,
    pub gradation: Gradation,
    pub ctx: RootContext<T>,
}

impl<T: Real> LoopRep<T> {
    pub fn dim(&self) -> usize {
        self.k[0].rows()
    }

    pub fn get(&self, g: Generator) -> &CMatrix<T> {
        match g {
            Generator::E(i) => &self.e[i],
            Generator::F(i) => &self.f[i],
            Generator::K(i) => &self.k[i],
        }
    }

    fn k_inv(&self, i: usize) -> CMatrix<T> {
        CMatrix::from_diag(&self.k[i].diag().iter().map(|x| x.inv()).collect::<Vec<_>>())
    }
}

fn diag_inv<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    CMatrix::from_diag(&m.diag().iter().map(|x| x.inv()).collect::<Vec<_>>())
}

/// Evaluation representation `pi_w` of a cyclic representation.
///
/// For the principal gradation the spectral argument is `x = w^{1/2}`
/// (principal branch).
pub fn evaluation_rep<T: Real>(rep: &CyclicRep<T>, w: C<T>, gradation: Gradation) -> Result<LoopRep<T>> {
    if w.norm() == T::zero() {
        return Err(Error::ZeroEvaluationParameter);
    }
    let ki = rep.k_inv();
    let (e, f) = match gradation {
        Gradation::Homogeneous => ([rep.f.scale(w), rep.e.clone()], [rep.e.scale(w.inv()), rep.f.clone()]),
        Gradation::Principal => {
            let x = w.sqrt();
            ([rep.f.scale(x), rep.e.scale(x)], [rep.e.scale(x.inv()), rep.f.scale(x.inv())])
        }
    };
    Ok(LoopRep { e, f, k: [ki, rep.k.clone()], param: w, gradation, ctx: rep.ctx() })
}

/// Two-dimensional evaluation representation `pi^0_z`.
pub fn two_dim_rep<T: Real>(ctx: RootContext<T>, z: C<T>, gradation: Gradation) -> Result<LoopRep<T>> {
    if z.norm() == T::zero() {
        return Err(Error::ZeroEvaluationParameter);
    }
    let mut sp = CMatrix::zeros(2, 2);
    sp[(0, 1)] = one();
    let sm = sp.transpose();
    let q = ctx.q();
    let kq = CMatrix::from_diag(&[q, q.inv()]);
    let ki = diag_inv(&kq);
    let (e, f) = match gradation {
        Gradation::Homogeneous => ([sm.scale(z), sp.clone()], [sp.scale(z.inv()), sm.clone()]),
        Gradation::Principal => {
            let y = z.sqrt();
            ([sm.scale(y), sp.scale(y)], [sp.scale(y.inv()), sm.scale(y.inv())])
        }
    };
    Ok(LoopRep { e, f, k: [ki, kq], param: z, gradation, ctx })
}

/// `(pi_A x pi_B)` applied to the coproduct (or opposite coproduct) of `gen`.
pub fn coproduct_action<T: Real>(gen: Generator, a: &LoopRep<T>, b: &LoopRep<T>, opposite: bool) -> CMatrix<T> {
    let ia = CMatrix::identity(a.dim());
    let ib = CMatrix::identity(b.dim());
    match (gen, opposite) {
        (Generator::K(i), _) => a.k[i].kron(&b.k[i]),
        (Generator::E(i), false) => &a.e[i].kron(&ib) + &a.k[i].kron(&b.e[i]),
        (Generator::E(i), true) => &ia.kron(&b.e[i]) + &a.e[i].kron(&b.k[i]),
        (Generator::F(i), false) => &a.f[i].kron(&b.k_inv(i)) + &ia.kron(&b.f[i]),
        (Generator::F(i), true) => &a.k_inv(i).kron(&b.f[i]) + &a.f[i].kron(&ib),
    }
}

pub const ALL_GENERATORS: [Generator; 6] =
    [Generator::E(0), Generator::F(0), Generator::K(0), Generator::E(1), Generator::F(1), Generator::K(1)];

/// Largest residual of the loop-algebra relations with Cartan matrix
/// `[[2,-2],[-2,2]]`.
pub fn aqg_residual<T: Real>(r: &LoopRep<T>) -> T {
    let ctx = r.ctx;
    let a = [[2i64, -2], [-2, 2]];
    let mut worst = T::zero();
    let scale = |m: &CMatrix<T>| T::one().max(m.max_abs());
    for i in 0..2 {
        let ki = r.k_inv(i);
        for j in 0..2 {
            let ke = r.k[i].matmul(&r.e[j]).matmul(&ki);
            let kf = r.k[i].matmul(&r.f[j]).matmul(&ki);
            worst = worst.max((&ke - &r.e[j].scale(ctx.qpow(a[i][j]))).max_abs() / scale(&r.e[j]));
            worst = worst.max((&kf - &r.f[j].scale(ctx.qpow(-a[i][j]))).max_abs() / scale(&r.f[j]));
            let comm = r.e[i].commutator(&r.f[j]);
            let want = if i == j { (&r.k[i] - &ki).scale(ctx.qdiff().inv()) } else { CMatrix::zeros(r.dim(), r.dim()) };
            worst = worst.max((&comm - &want).max_abs() / scale(&want).max(scale(&r.e[i]) * scale(&r.f[j])));
            worst = worst.max(r.k[i].commutator(&r.k[j]).max_abs());
        }
    }
    worst
}

/// Largest relative residual of the two Chevalley-Serre relations.
pub fn cs_residual<T: Real>(r: &LoopRep<T>) -> T {
    let b3 = r.ctx.q_bracket(3);
    let serre = |x: &CMatrix<T>, y: &CMatrix<T>| {
        let x2 = x.matmul(x);
        let x3 = x2.matmul(x);
        let t1 = x3.matmul(y);
        let t2 = x2.matmul(y).matmul(x).scale(b3);
        let t3 = x.matmul(y).matmul(&x2).scale(b3);
        let t4 = y.matmul(&x3);
        let s = T::one().max(t1.max_abs()).max(t2.max_abs()).max(t4.max_abs());
        (&(&(&t1 - &t2) + &t3) - &t4).max_abs() / s
    };
    let mut worst = T::zero();
    for (i, j) in [(0, 1), (1, 0)] {
        worst = worst.max(serre(&r.e[i], &r.e[j]));
        worst = worst.max(serre(&r.f[i], &r.f[j]));
    }
    worst
}

/// Scalar values of the central elements `x_i, y_i, z_i` on a loop representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopCentral<T: Real> {
    pub x: [C<T>; 2],
    pub y: [C<T>; 2],
    pub z: [C<T>; 2],
}

/// `x_i = ((q-q^{-1}) e_i)^{N'}`, `y_i = ((q-q^{-1}) f_i)^{N'}`, `z_i = k_i^{N'}`
/// read off as scalars (entry (0,0) of the respective powers).
pub fn loop_central_values<T: Real>(r: &LoopRep<T>) -> LoopCentral<T> {
    let np = r.ctx.nprime();
    let d = r.ctx.qdiff();
    let pw = |m: &CMatrix<T>, s: C<T>| m.scale(s).powi(np)[(0, 0)];
    let one = C::new(T::one(), T::zero());
    LoopCentral {
        x: [pw(&r.e[0], d), pw(&r.e[1], d)],
        y: [pw(&r.f[0], d), pw(&r.f[1], d)],
        z: [pw(&r.k[0], one), pw(&r.k[1], one)],
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::cx;
    use crate::repz::{build_cyclic_rep, RepParams};

    #[test]
    fn relations_hold() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let p = RepParams::new(ctx, cx(0.4, 0.1), cx(-0.3, 0.8), cx(0.9, -0.2)).unwrap();
        let rep = build_cyclic_rep(p).unwrap();
        for g in [Gradation::Homogeneous, Gradation::Principal] {
            let ev = evaluation_rep(&rep, cx(0.7, 0.3), g).unwrap();
            assert!(aqg_residual(&ev) < 1e-10);
            assert!(cs_residual(&ev) < 1e-9);
            assert_eq!(ev.k[0], rep.k_inv());
            let t = two_dim_rep(ctx, cx(1.3, -0.2), g).unwrap();
            assert!(aqg_residual(&t) < 1e-12);
            assert!(cs_residual(&t) < 1e-12);
        }
    }

    #[test]
    fn coproduct_of_k_and_central_powers() {
        let ctx = RootContext::<f64>::new(3, 1).unwrap();
        let p = RepParams::new(ctx, cx(0.4, 0.1), cx(-0.3, 0.8), cx(0.9, -0.2)).unwrap();
        let a = evaluation_rep(&build_cyclic_rep(p).unwrap(), cx(0.7, 0.3), Gradation::Homogeneous).unwrap();
        let b = two_dim_rep(ctx, cx(1.3, -0.2), Gradation::Homogeneous).unwrap();
        assert_eq!(coproduct_action(Generator::K(1), &a, &b, false), a.k[1].kron(&b.k[1]));
        let ca = loop_central_values(&a);
        let cb = loop_central_values(&b);
        for i in 0..2 {
            let de = coproduct_action(Generator::E(i), &a, &b, false).scale(ctx.qdiff()).powi(3);
            let want = ca.x[i] + ca.z[i] * cb.x[i];
            let id = CMatrix::identity(6).scale(want);
            assert!((&de - &id).max_abs() < 1e-10 * (1.0 + want.norm()));
        }
    }
}
