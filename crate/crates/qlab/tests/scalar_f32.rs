use qlab::intertwiner::{build_l_params, verify_intertwining, verify_ybe, LVariant};
use qlab::qcore::{C, RootContext};
use qlab::qop::{tq_residual_params, FEConvention};
use qlab::repz::{build_cyclic_rep, central_values, mu_branch, Gradation, RepParams};

fn c(re: f32, im: f32) -> C<f32> {
    C::new(re, im)
}

#[test]
fn single_precision_pipeline() {
    let ctx = RootContext::<f32>::new(3, 1).unwrap();
    let p = RepParams::new(ctx, c(0.4, 0.2), c(0.7, -0.3), c(0.8, 0.5)).unwrap();
    let pt = central_values(&build_cyclic_rep(p).unwrap()).unwrap();
    assert!(pt.sz_residual() < 1e-4);
    let (w, z) = (c(0.9, 0.3), c(0.6, -0.7));
    let l = build_l_params(&p, w / z, LVariant::Odd).unwrap();
    assert!(verify_intertwining(&l, w, z, Gradation::Homogeneous).unwrap() < 1e-4);
    assert!(verify_ybe(&p, LVariant::Odd, w, z).unwrap() < 1e-4);
    let mu = mu_branch(p.casimir(), &p).unwrap();
    let rep = tq_residual_params(&p, mu, c(0.7, 0.4), 3, FEConvention::Phodd).unwrap();
    assert!(rep.residual < 1e-4, "{}", rep.residual);
}
