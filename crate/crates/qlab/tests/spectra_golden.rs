use qlab::qcore::{cx, ipow, RootContext, C};
use qlab::qop::{q_chain, FEConvention};
use qlab::repz::{mu_branch, RepParams};
use qlab::sixvertex::{transfer_matrix, unit_rho, ChainOperator};
use qlab::spectra::*;

type Cx = C<f64>;

fn params(ctx: RootContext<f64>, s: u64) -> (RepParams<f64>, Cx) {
    let f = |k: u64| ((s * 7919 + k * 104729) % 1000) as f64 / 1000.0 - 0.5;
    let p = RepParams::new(ctx, cx(0.4 + f(1), f(2)), cx(0.3 + f(3), 0.2 + f(4)), cx(0.9 + f(5), f(6))).unwrap();
    (p, mu_branch(p.casimir(), &p).unwrap())
}

fn matches(got: &[Cx], want: &[Cx], tol: f64) -> bool {
    let mut left: Vec<Cx> = got.to_vec();
    want.iter().all(|w| {
        let Some((k, d)) = left.iter().enumerate().map(|(k, g)| (k, (g - w).norm() / w.norm().max(1.0))).min_by(|a, b| a.1.total_cmp(&b.1)) else { return false };
        left.remove(k);
        d < tol
    })
}

#[test]
fn m4_down_one_sector() {
    let ctx = RootContext::<f64>::new(3, 1).unwrap();
    let q = ctx.q();
    let (p, mu) = params(ctx, 3);
    let conv = FEConvention::Phodd;
    let z0: Cx = cx(0.37, 0.81);
    let qm = q_chain(&p, z0 / mu, (z0 / mu).sqrt(), 4, conv).unwrap();
    let t = transfer_matrix(z0, 4, &ctx, &unit_rho).unwrap().matrix;
    let qb = sector_blocks(&ChainOperator::new(4, qm, "Q"), Grading::Sz).unwrap();
    let tb = sector_blocks(&ChainOperator::new(4, t, "T"), Grading::Sz).unwrap();
    let k = qb.iter().position(|b| b.label.sz2 == Some(-2)).unwrap();
    let js = joint_spectrum(&[tb[k].block.clone(), qb[k].block.clone()], 1e-9).unwrap();
    assert_eq!(js.len(), 4);
    let zc = ipow(p.lambda, 3);
    let c = mu + mu.inv();
    let r3 = 3f64.sqrt();
    let wt: Cx = cx(0.23, -0.61);
    let want = vec![
        -9.0 * zc * zc * wt * (wt + q * q / mu) * (wt + q * q * mu),
        -15.0 * zc * zc * wt * (wt - q * q / mu) * (wt - q * q * mu),
        -3.0 * zc * zc * wt * (wt * wt * (2.0 - r3) + wt * q * q * c + q * (2.0 + r3)),
        -3.0 * zc * zc * wt * (wt * wt * (2.0 + r3) + wt * q * q * c + q * (2.0 - r3)),
    ];
    let zs = default_samples(6);
    let mut got = Vec::new();
    for j in 0..4 {
        let v = qb[k].lift(&js.vector(j));
        let tr = curve_triple(&p, mu, &v, &zs, 4, conv, 1e-8).unwrap();
        got.push(tr.base.poly.eval(wt));
        let zt: Cx = cx(-0.3, 0.45);
        let te = transfer_eigen_from_q(&tr, zt, 4, &ctx).unwrap();
        let tfull = transfer_matrix(zt, 4, &ctx, &unit_rho).unwrap().matrix;
        let tl = rayleigh(&tfull, &v);
        assert!((te - tl).norm() < 1e-8 * tl.norm().max(1.0), "{te} {tl}");
        let sh = Shifts { prime: &tr.prime, double_prime: &tr.double_prime, conv };
        let ba = bethe_analysis(&tr.base, &ctx, 4, Some(sh)).unwrap();
        assert!(ba.residuals.iter().chain(&ba.be_residuals).all(|r| *r < 1e-8), "{ba:?}");
    }
    assert!(matches(&got, &want, 1e-8), "{got:?}\n{want:?}");
}
