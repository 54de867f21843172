use proptest::prelude::*;
use qlab::intertwiner::{build_l_params, verify_intertwining, verify_ybe_r, LVariant};
use qlab::qcore::{cx, RootContext, C};
use qlab::qop::{tq_residual_params, FEConvention};
use qlab::repz::{build_cyclic_rep, central_values, fiber, mu_branch, Gradation, RepParams};

type Cx = C<f64>;

fn complex(lo: f64, hi: f64) -> impl Strategy<Value = Cx> {
    (lo..hi, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Cx::from_polar(r, t))
}

fn odd_order() -> impl Strategy<Value = usize> {
    prop_oneof![Just(3usize), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn central_values_on_hypersurface(n in odd_order(), xi in complex(0.3, 1.3), zeta in complex(0.3, 1.3), la in complex(0.5, 1.5)) {
        let ctx = RootContext::new(n, 1).unwrap();
        let p = RepParams::new(ctx, xi, zeta, la).unwrap();
        let pt = central_values(&build_cyclic_rep(p).unwrap()).unwrap();
        prop_assert!(pt.sz_residual() < 1e-9);
        if let Ok(mates) = fiber(&pt) {
            for m in mates {
                prop_assert!(m.sz_residual() < 1e-9);
            }
        }
    }

    #[test]
    fn l_operator_intertwines(n in odd_order(), xi in complex(0.3, 1.3), zeta in complex(0.3, 1.3), la in complex(0.5, 1.5),
                              w in complex(0.5, 1.5), z in complex(0.5, 1.5), breve in any::<bool>()) {
        let ctx = RootContext::new(n, 1).unwrap();
        let p = RepParams::new(ctx, xi, zeta, la).unwrap();
        let v = if breve { LVariant::Breve } else { LVariant::Odd };
        let l = build_l_params(&p, w / z, v).unwrap();
        for g in [Gradation::Homogeneous, Gradation::Principal] {
            prop_assert!(verify_intertwining(&l, w, z, g).unwrap() < 1e-9);
        }
    }

    #[test]
    fn r_matrix_ybe(n in 3usize..9, u in complex(0.5, 1.5), v in complex(0.5, 1.5)) {
        let ctx = RootContext::new(n, 1).unwrap();
        prop_assert!(verify_ybe_r(&ctx, u, v).unwrap() < 1e-9);
    }

    #[test]
    fn functional_equation_nilpotent(la in complex(0.6, 1.4), z in complex(0.4, 1.6), m in 2usize..5) {
        let ctx = RootContext::new(3, 1).unwrap();
        let p = RepParams::nilpotent(ctx, la).unwrap();
        if let Ok(mu) = mu_branch(p.casimir(), &p) {
            let rep = tq_residual_params(&p, mu, z, m, FEConvention::Phodd).unwrap();
            prop_assert!(rep.residual < 1e-8, "{}", rep.residual);
        }
    }
}

#[test]
fn fixed_point_smoke() {
    let ctx = RootContext::<f64>::new(5, 2).unwrap();
    let p = RepParams::new(ctx, cx(0.5, 0.1), cx(0.2, 0.6), cx(1.1, -0.2)).unwrap();
    assert!(central_values(&build_cyclic_rep(p).unwrap()).unwrap().sz_residual() < 1e-10);
}
