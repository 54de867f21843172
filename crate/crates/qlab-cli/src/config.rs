use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlab::intertwiner::prime_params;
use qlab::qcore::RootContext;
use qlab::qop::{default_convention, FEConvention};
use qlab::repz::{mu_branch, Gradation, RepParams};
use qlab::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "qlab", version, about = "Q-operator verification and spectra at roots of unity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residuals of the structural identities.
    Verify {
        /// Checks to run; repeatable.
        #[arg(long, value_enum, global = false)]
        check: Vec<Check>,
    },
    /// Joint spectrum of T and Q per S^z sector.
    Spectrum,
    /// Eigenvalue curves, strings and Bethe roots.
    Bethe,
    /// Random or prescribed coadjoint orbit.
    Orbit {
        /// Number of random steps (ignored with --gens).
        #[arg(long)]
        steps: Option<usize>,
        /// Generator sequence such as "EFFE".
        #[arg(long)]
        gens: Option<String>,
        /// Step parameter.
        #[arg(long, value_parser = parse_complex)]
        t: Option<C64>,
        /// Sample the commutator with T every this many steps.
        #[arg(long)]
        every: Option<usize>,
    },
    /// Tables of the worked N=3 examples against their closed forms.
    Report {
        #[arg(value_enum)]
        case: Option<Case>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Tq,
    Intertwine,
    Ybe,
    Exact,
    Laws,
    Commute,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    M3,
    M4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvArg {
    Phodd,
    Phiev,
    Phab,
}

impl From<ConvArg> for FEConvention {
    fn from(c: ConvArg) -> Self {
        match c {
            ConvArg::Phodd => FEConvention::Phodd,
            ConvArg::Phiev => FEConvention::Phiev,
            ConvArg::Phab => FEConvention::Phab,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradArg {
    Hom,
    Prin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Json,
    Csv,
}

/// Flags shared by all subcommands; every one may also come from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with the same keys as the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long = "M", global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    pub xi: Option<C64>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    pub zeta: Option<C64>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Option<C64>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Vec<C64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub convention: Option<ConvArg>,
    #[arg(long, global = true, value_enum)]
    pub gradation: Option<GradArg>,
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im but got {s:?}")),
    }
}

/// Contents of a config file. Complex values are `[re, im]`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub k: Option<usize>,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub xi: Option<[f64; 2]>,
    pub zeta: Option<[f64; 2]>,
    pub lambda: Option<[f64; 2]>,
    pub z: Option<Vec<[f64; 2]>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub convention: Option<ConvArg>,
    pub gradation: Option<GradArg>,
    pub emit: Option<Emit>,
    pub out: Option<PathBuf>,
    pub check: Option<Vec<Check>>,
    pub steps: Option<usize>,
    pub gens: Option<String>,
    pub t: Option<[f64; 2]>,
    pub every: Option<usize>,
    pub case: Option<Case>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

fn c2(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

/// Fully resolved scenario; every value satisfies the library preconditions
/// that can be checked before computing.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub ctx: RootContext<f64>,
    pub m: usize,
    pub params: RepParams<f64>,
    pub mu: C64,
    pub zs: Vec<C64>,
    pub seed: u64,
    pub tol: f64,
    pub conv: FEConvention,
    /// `None` runs the gradation-dependent checks in both gradations.
    pub gradation: Option<Gradation>,
    pub emit: Emit,
    pub out: Option<PathBuf>,
}

/// Echo of the resolved configuration in the report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub xi: [f64; 2],
    pub zeta: [f64; 2],
    pub lambda: [f64; 2],
    pub mu: [f64; 2],
    pub z: Vec<[f64; 2]>,
    pub seed: u64,
    pub tol: f64,
    pub convention: String,
    pub gradation: String,
}

pub fn pair(c: C64) -> [f64; 2] {
    [c.re, c.im]
}

impl ScenarioConfig {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: self.ctx.n(),
            k: self.ctx.k(),
            m: self.m,
            xi: pair(self.params.xi),
            zeta: pair(self.params.zeta),
            lambda: pair(self.params.lambda),
            mu: pair(self.mu),
            z: self.zs.iter().map(|z| pair(*z)).collect(),
            seed: self.seed,
            tol: self.tol,
            convention: format!("{:?}", self.conv).to_lowercase(),
            gradation: match self.gradation {
                Some(Gradation::Homogeneous) => "hom".into(),
                Some(Gradation::Principal) => "prin".into(),
                None => "both".into(),
            },
        }
    }

    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }
}

pub fn random_complex(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> C64 {
    let m: f64 = r.gen_range(lo..hi);
    let t: f64 = r.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(m, t)
}

/// Cyclic coordinates for odd N, nilpotent ones for even N, redrawn until
/// `mu` and the shifted coordinates are regular.
fn draw_params(ctx: RootContext<f64>, r: &mut ChaCha8Rng) -> Result<(RepParams<f64>, C64), CliError> {
    for _ in 0..100 {
        let la = random_complex(r, 0.6, 1.4);
        let p = if ctx.is_odd() {
            RepParams::new(ctx, random_complex(r, 0.4, 1.2), random_complex(r, 0.4, 1.2), la)?
        } else {
            RepParams::nilpotent(ctx, la)?
        };
        if let Ok(mu) = mu_branch(p.casimir(), &p) {
            if prime_params(&p, mu).is_ok() && (mu.norm() - 1.0).abs() > 0.05 {
                return Ok((p, mu));
            }
        }
    }
    Err(CliError::Config("no regular parameters drawn from the seed".into()))
}

/// Merges flags over the file and validates. `case_n` forces the root order
/// for the worked examples.
pub fn resolve(common: &CommonArgs, file: &FileConfig, case_defaults: Option<(usize, usize)>) -> Result<ScenarioConfig, CliError> {
    let n = common.n.or(file.n);
    let k = common.k.or(file.k).unwrap_or(1);
    let m = common.m.or(file.m);
    // a worked example fixes N and M; conflicting values are rejected rather than overridden
    if let Some((cn, cm)) = case_defaults {
        if n.is_some_and(|n| n != cn) || m.is_some_and(|m| m != cm) {
            return Err(CliError::Config(format!("this example is defined for N={cn}, M={cm}")));
        }
    }
    let n = n.or(case_defaults.map(|c| c.0)).unwrap_or(3);
    let m = m.or(case_defaults.map(|c| c.1)).unwrap_or(4);
    if !(1..=10).contains(&m) {
        return Err(CliError::Config(format!("M={m} must lie in 1..=10")));
    }
    let ctx = RootContext::<f64>::new(n, k)?;
    let seed = common.seed.or(file.seed).unwrap_or(0);
    let tol = common.tol.or(file.tol).unwrap_or(1e-8);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Config(format!("tolerance {tol} must be positive")));
    }
    let samples = common.samples.or(file.samples).unwrap_or(5);
    if samples == 0 {
        return Err(CliError::Config("samples must be positive".into()));
    }
    let xi = common.xi.or(file.xi.map(c2));
    let zeta = common.zeta.or(file.zeta.map(c2));
    let lambda = common.lambda.or(file.lambda.map(c2));
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let (params, mu) = match (xi, zeta, lambda) {
        (None, None, None) => draw_params(ctx, &mut r)?,
        (_, _, None) => return Err(CliError::Config("--xi/--zeta need --lambda".into())),
        (xi, zeta, Some(la)) => {
            let zero = C64::new(0.0, 0.0);
            let p = RepParams::new(ctx, xi.unwrap_or(zero), zeta.unwrap_or(zero), la)?;
            let mu = mu_branch(p.casimir(), &p)?;
            (p, mu)
        }
    };
    let mut zs: Vec<C64> = if !common.z.is_empty() { common.z.clone() } else { file.z.clone().unwrap_or_default().into_iter().map(c2).collect() };
    if zs.is_empty() {
        r.set_stream(1);
        zs = (0..samples).map(|_| random_complex(&mut r, 0.5, 1.5)).collect();
    }
    if zs.iter().any(|z| z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite()) {
        return Err(CliError::Config("spectral parameters must be finite and nonzero".into()));
    }
    let conv = common.convention.or(file.convention).map(FEConvention::from).unwrap_or_else(|| default_convention(&ctx));
    if conv == FEConvention::Phodd && !ctx.is_odd() {
        return Err(CliError::Config("the phodd convention needs odd N".into()));
    }
    let gradation = common.gradation.or(file.gradation).map(|g| match g {
        GradArg::Hom => Gradation::Homogeneous,
        GradArg::Prin => Gradation::Principal,
    });
    Ok(ScenarioConfig {
        ctx,
        m,
        params,
        mu,
        zs,
        seed,
        tol,
        conv,
        gradation,
        emit: common.emit.or(file.emit).unwrap_or(Emit::Json),
        out: common.out.clone().or(file.out.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        assert_eq!(parse_complex("1.5,-2").unwrap(), C64::new(1.5, -2.0));
        assert_eq!(parse_complex(" 3 ").unwrap(), C64::new(3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x,1").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig = toml::from_str("N = 5\nM = 3\ntol = 1e-6\nz = [[0.5, 0.1]]\nseed = 4").unwrap();
        let flags = CommonArgs { m: Some(2), ..Default::default() };
        let cfg = resolve(&flags, &file, None).unwrap();
        assert_eq!((cfg.ctx.n(), cfg.m, cfg.tol, cfg.seed), (5, 2, 1e-6, 4));
        assert_eq!(cfg.zs, vec![C64::new(0.5, 0.1)]);
    }

    #[test]
    fn draws_are_seeded() {
        let flags = CommonArgs { seed: Some(9), ..Default::default() };
        let a = resolve(&flags, &FileConfig::default(), None).unwrap();
        let b = resolve(&flags, &FileConfig::default(), None).unwrap();
        assert_eq!(a.params, b.params);
        assert_eq!(a.zs, b.zs);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
        let bad = CommonArgs { m: Some(0), ..Default::default() };
        assert!(matches!(resolve(&bad, &FileConfig::default(), None), Err(CliError::Config(_))));
        let even = CommonArgs { n: Some(4), convention: Some(ConvArg::Phodd), ..Default::default() };
        assert!(resolve(&even, &FileConfig::default(), None).is_err());
    }
}
