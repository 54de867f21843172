use qlab::intertwiner::{build_l_params, verify_exact_sequence, verify_intertwining, verify_ybe, verify_ybe_r};
use qlab::qop::{commute_predicate, qt_commutator, transformation_check, tq_residual_params, Law};
use qlab::repz::{build_cyclic_rep, central_values, fiber, Gradation, RepKind};
use qlab::Error;

use crate::config::{Check, ScenarioConfig};
use crate::error::CliError;
use crate::report::Row;

pub const ALL_CHECKS: [Check; 6] = [Check::Tq, Check::Intertwine, Check::Ybe, Check::Exact, Check::Laws, Check::Commute];

/// Expands `all` and removes duplicates, keeping the canonical order.
pub fn expand(checks: &[Check]) -> Vec<Check> {
    if checks.is_empty() || checks.contains(&Check::All) {
        return ALL_CHECKS.to_vec();
    }
    ALL_CHECKS.iter().copied().filter(|c| checks.contains(c)).collect()
}

fn zlabel(i: usize) -> String {
    format!("z{i}")
}

/// Partner parameter for two-parameter identities.
fn partner(cfg: &ScenarioConfig, i: usize) -> qlab::C64 {
    let zs = &cfg.zs;
    if zs.len() > 1 {
        zs[(i + 1) % zs.len()]
    } else {
        zs[i] * qlab::C64::new(0.8, 0.35)
    }
}

pub fn run(cfg: &ScenarioConfig, checks: &[Check]) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for check in expand(checks) {
        match check {
            Check::Tq => tq(cfg, &mut rows)?,
            Check::Intertwine => intertwine(cfg, &mut rows)?,
            Check::Ybe => ybe(cfg, &mut rows)?,
            Check::Exact => exact(cfg, &mut rows)?,
            Check::Laws => laws(cfg, &mut rows)?,
            Check::Commute => commute(cfg, &mut rows)?,
            Check::All => unreachable!("expanded above"),
        }
    }
    Ok(rows)
}

fn tq(cfg: &ScenarioConfig, rows: &mut Vec<Row>) -> Result<(), CliError> {
    for (i, &z) in cfg.zs.iter().enumerate() {
        let rep = tq_residual_params(&cfg.params, cfg.mu, z, cfg.m, cfg.conv)?;
        let mut row = Row::new("tq", zlabel(i)).residual(rep.residual, cfg.tol);
        if rep.trivial {
            row.label.push_str(" (Q = 0)");
        }
        rows.push(row);
    }
    Ok(())
}

fn intertwine(cfg: &ScenarioConfig, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let variant = cfg.conv.variant(&cfg.ctx)?;
    for (i, &z) in cfg.zs.iter().enumerate() {
        let w = partner(cfg, i);
        let l = build_l_params(&cfg.params, w / z, variant).map_err(even_cyclic)?;
        for (g, name) in [(Gradation::Homogeneous, "hom"), (Gradation::Principal, "prin")] {
            if cfg.gradation.is_some_and(|c| c != g) {
                continue;
            }
            let r = verify_intertwining(&l, w, z, g)?;
            rows.push(Row::new("intertwine", format!("{} {name}", zlabel(i))).residual(r, cfg.tol));
        }
    }
    Ok(())
}

/// Cyclic parameters at even order have no intertwiner.
pub fn even_cyclic(e: Error) -> Error {
    if e == Error::EvenParityCyclic {
        Error::EvenCyclic
    } else {
        e
    }
}

fn ybe(cfg: &ScenarioConfig, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let variant = cfg.conv.variant(&cfg.ctx)?;
    for (i, &z) in cfg.zs.iter().enumerate() {
        let w = partner(cfg, i);
        let r = verify_ybe(&cfg.params, variant, w, z)?;
        rows.push(Row::new("ybe", format!("{} RLL", zlabel(i))).residual(r, cfg.tol));
        let r = verify_ybe_r(&cfg.ctx, w, z)?;
        rows.push(Row::new("ybe", format!("{} RRR", zlabel(i))).residual(r, cfg.tol));
    }
    Ok(())
}

fn exact(cfg: &ScenarioConfig, rows: &mut Vec<Row>) -> Result<(), CliError> {
    for (i, &z) in cfg.zs.iter().enumerate() {
        let chk = verify_exact_sequence(&cfg.params, cfg.mu, z, cfg.conv)?;
        rows.push(Row::new("exact", format!("{} inclusion", zlabel(i))).residual(chk.residual1, cfg.tol));
        rows.push(Row::new("exact", format!("{} projection", zlabel(i))).residual(chk.residual2, cfg.tol));
        rows.push(Row::new("exact", format!("{} phi1", zlabel(i))).golden(chk.phi1, chk.phi1_expected, cfg.tol));
        rows.push(Row::new("exact", format!("{} phi2", zlabel(i))).golden(chk.phi2, chk.phi2_expected, cfg.tol));
    }
    Ok(())
}

fn laws(cfg: &ScenarioConfig, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let pt = central_values(&build_cyclic_rep(cfg.params)?)?;
    let list: &[Law] = match pt.kind() {
        RepKind::Nilpotent => &[Law::QR0, Law::SQ, Law::Qp, Law::QSz],
        _ => &[Law::QSz, Law::SQ, Law::QR, Law::Qp, Law::Transpose],
    };
    let t = qlab::C64::new(0.3, -0.2);
    for (i, &z) in cfg.zs.iter().enumerate() {
        for &law in list {
            match transformation_check(law, &pt, z, cfg.m, t) {
                Ok(r) => rows.push(Row::new("laws", format!("{} {law:?}", zlabel(i))).residual(r, cfg.tol)),
                // a law outside its domain is reported, not failed
                Err(Error::LawPreconditionViolated(why)) => rows.push(Row::new("laws", format!("{} {law:?} skipped: {why}", zlabel(i)))),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

fn commute(cfg: &ScenarioConfig, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let pt = central_values(&build_cyclic_rep(cfg.params)?)?;
    let mates = match fiber(&pt) {
        Ok(f) => f,
        Err(Error::DiscriminantPoint) => vec![pt],
        Err(e) => return Err(e.into()),
    };
    for (i, &z) in cfg.zs.iter().enumerate() {
        for (l, mate) in mates.iter().enumerate() {
            let rep = commute_predicate(&pt, mate, z, z, cfg.m)?;
            rows.push(Row::new("commute", format!("{} fiber {l}", zlabel(i))).residual(rep.residual, cfg.tol));
        }
        let r = qt_commutator(&pt, z, partner(cfg, i), cfg.m)?;
        rows.push(Row::new("commute", format!("{} [Q,T]", zlabel(i))).residual(r, cfg.tol));
    }
    Ok(())
}
