use qlab::qop::qt_commutator;
use qlab::repz::{build_cyclic_rep, central_values, coadjoint_flow, FlowGenerator, SpecZPoint};
use qlab::{Error, C64};
use rand::Rng;

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::report::Row;

#[derive(Debug, Clone, Default)]
pub struct OrbitOptions {
    pub steps: Option<usize>,
    pub gens: Option<String>,
    pub t: Option<C64>,
    pub every: Option<usize>,
}

fn parse_gens(s: &str) -> Result<Vec<FlowGenerator>, CliError> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c.to_ascii_uppercase() {
            'E' => Ok(FlowGenerator::E),
            'F' => Ok(FlowGenerator::F),
            other => Err(CliError::Config(format!("generator {other:?} is not E or F"))),
        })
        .collect()
}

fn point_rows(rows: &mut Vec<Row>, step: usize, p: &SpecZPoint<f64>, inv0: C64, tol: f64) {
    let tag = format!("step {step}");
    rows.push(Row::new("orbit", format!("{tag} x")).value(p.x));
    rows.push(Row::new("orbit", format!("{tag} y")).value(p.y));
    rows.push(Row::new("orbit", format!("{tag} z")).value(p.zc));
    let inv = p.invariant();
    let drift = (inv - inv0).norm() / inv0.norm().max(1.0);
    rows.push(Row::new("orbit", format!("{tag} invariant")).value(inv).residual(drift, tol));
}

pub fn run(cfg: &ScenarioConfig, opts: &OrbitOptions) -> Result<Vec<Row>, CliError> {
    if !cfg.ctx.is_odd() {
        return Err(Error::EvenParity.into());
    }
    let gens = match &opts.gens {
        Some(s) => parse_gens(s)?,
        None => {
            let mut r = cfg.rng(2);
            (0..opts.steps.unwrap_or(10)).map(|_| if r.gen_bool(0.5) { FlowGenerator::E } else { FlowGenerator::F }).collect()
        }
    };
    let t = opts.t.unwrap_or(C64::new(0.05, 0.02));
    let every = opts.every.unwrap_or(10).max(1);
    let (z, w) = (cfg.zs[0], cfg.zs.get(1).copied().unwrap_or(cfg.zs[0] * C64::new(0.8, 0.35)));
    let start = central_values(&build_cyclic_rep(cfg.params)?)?;
    let inv0 = start.invariant();
    let mut rows = Vec::new();
    let mut p = start;
    point_rows(&mut rows, 0, &p, inv0, cfg.tol);
    for (i, g) in gens.iter().enumerate() {
        p = coadjoint_flow(&p, *g, t)?;
        let step = i + 1;
        point_rows(&mut rows, step, &p, inv0, cfg.tol);
        if step % every == 0 || step == gens.len() {
            let r = qt_commutator(&p, w, z, cfg.m)?;
            rows.push(Row::new("orbit", format!("step {step} [T,Q]")).residual(r, cfg.tol));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_strings() {
        assert_eq!(parse_gens("e F\tf").unwrap(), vec![FlowGenerator::E, FlowGenerator::F, FlowGenerator::F]);
        assert!(parse_gens("EX").is_err());
    }
}
