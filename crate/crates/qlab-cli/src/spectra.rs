use qlab::qop::q_chain;
use qlab::sixvertex::{transfer_matrix, unit_rho, ChainOperator};
use qlab::spectra::{bethe_analysis, curve_triple, default_samples, joint_spectrum, sector_blocks, Grading, SectorBlock, SectorLabel, Shifts};
use qlab::{Error, C64};

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::report::Row;

fn sector_name(l: &SectorLabel) -> String {
    match (l.sz2, l.down_class) {
        (Some(s), _) => format!("2Sz={s}"),
        (None, Some(d)) => format!("down mod N'={d}"),
        _ => format!("{l:?}"),
    }
}

/// Cyclic Q changes S^z by multiples of N'; nilpotent Q conserves it.
fn grading(cfg: &ScenarioConfig) -> Grading {
    if cfg.params.is_nilpotent() {
        Grading::Sz
    } else {
        Grading::SzModNprime(cfg.ctx.nprime())
    }
}

/// Sector blocks of `T(z0)` and `Q(z0)` at the first spectral parameter.
fn blocks(cfg: &ScenarioConfig) -> Result<Vec<(SectorBlock<f64>, SectorBlock<f64>)>, CliError> {
    let z0 = cfg.zs[0];
    let t = transfer_matrix(z0, cfg.m, &cfg.ctx, &unit_rho)?;
    let w = z0 / cfg.mu;
    let q = ChainOperator::new(cfg.m, q_chain(&cfg.params, w, w.sqrt(), cfg.m, cfg.conv)?, "Q");
    let tb = sector_blocks(&t, grading(cfg))?;
    let qb = sector_blocks(&q, grading(cfg))?;
    if tb.len() != qb.len() || tb.iter().zip(&qb).any(|(a, b)| a.label != b.label) {
        return Err(Error::NotBlockDiagonal(f64::NAN).into());
    }
    Ok(tb.into_iter().zip(qb).collect())
}

pub fn spectrum(cfg: &ScenarioConfig) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for (tb, qb) in blocks(cfg)? {
        let name = sector_name(&tb.label);
        let js = joint_spectrum(&[tb.block.clone(), qb.block.clone()], cfg.tol)?;
        rows.push(Row::new("spectrum", format!("{name} joint residual")).residual(js.residual, cfg.tol));
        for (j, vals) in js.values.iter().enumerate() {
            rows.push(Row::new("spectrum", format!("{name} v{j} T")).value(vals[0]));
            rows.push(Row::new("spectrum", format!("{name} v{j} Q")).value(vals[1]));
        }
    }
    Ok(rows)
}

pub fn bethe(cfg: &ScenarioConfig) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    let zs: Vec<C64> = default_samples(cfg.m + 2);
    for (tb, qb) in blocks(cfg)? {
        let name = sector_name(&tb.label);
        let js = joint_spectrum(&[tb.block.clone(), qb.block.clone()], cfg.tol)?;
        for j in 0..js.len() {
            let v = tb.lift(&js.vector(j));
            let tag = format!("{name} v{j}");
            let tr = match curve_triple(&cfg.params, cfg.mu, &v, &zs, cfg.m, cfg.conv, cfg.tol) {
                Ok(tr) => tr,
                Err(Error::EigvecDrift(r)) => {
                    rows.push(Row::new("bethe", format!("{tag} eigenvector depends on z (drift {r:.1e}); no curve")));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let sh = Shifts { prime: &tr.prime, double_prime: &tr.double_prime, conv: cfg.conv };
            let ba = match bethe_analysis(&tr.base, &cfg.ctx, cfg.m, Some(sh)) {
                Ok(ba) => ba,
                Err(Error::ZeroCurve) => {
                    rows.push(Row::new("bethe", format!("{tag} eigenvalue vanishes identically")));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            rows.push(Row::new("bethe", format!("{tag} degree {} zero-roots {}", ba.curve.poly.degree().unwrap_or(0), ba.zero_roots)));
            for (k, s) in ba.strings.iter().enumerate() {
                rows.push(Row::new("bethe", format!("{tag} string {k} center (w), length {}", s.length)).value(s.center));
            }
            for (k, z) in ba.pole_roots.iter().enumerate() {
                rows.push(Row::new("bethe", format!("{tag} root {k} on the weight pole")).value(*z));
            }
            for (k, z) in ba.common_roots.iter().enumerate() {
                rows.push(Row::new("bethe", format!("{tag} common root {k}")).value(*z));
            }
            for (k, z) in ba.bethe_roots.iter().enumerate() {
                let fe = ba.residuals.get(k).copied().unwrap_or(0.0);
                rows.push(Row::new("bethe", format!("{tag} root {k}")).value(*z).residual(fe, cfg.tol));
                // the product form assumes Q' and Q'' share the roots of Q, so it is informational
                if let Some(be) = ba.be_residuals.get(k) {
                    let mut row = Row::new("bethe", format!("{tag} root {k} product-form residual"));
                    row.residual = Some(*be);
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}
