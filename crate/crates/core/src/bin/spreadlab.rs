use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spreadlab::planar::planar_verdict;
use spreadlab::quadform::DOPolyJson;
use spreadlab::spread::{build_even_n3, build_typec, build_typeh, even3_delta_admissible, Spread, SpreadJson};
use spreadlab::verify::{run_experiment, ExperimentSpec, DEFAULT_WORK_BUDGET};
use spreadlab::{DOPoly, Elt, Error, FieldCtx, Result};

#[derive(Parser)]
#[command(name = "spreadlab", version, about = "Flag-transitive spreads, planar functions and exhaustive checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the field tower F_p ⊂ F_q ⊂ F_{q^n} ⊂ F_{q^2n} as JSON.
    Tower(TowerArgs),
    /// Build a spread and print it as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Re-verify a spread JSON file.
    Verify { path: PathBuf },
    /// Run a verification experiment.
    Experiment(ExperimentArgs),
    /// Planarity and nuclei of a DO polynomial given as JSON.
    Planar {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long, value_enum, default_value = "ambient")]
        field: FieldArg,
        path: PathBuf,
    },
}

#[derive(Args)]
struct TowerArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: u32,
    #[arg(long)]
    n: u32,
}

impl TowerArgs {
    fn ctx(&self) -> Result<Arc<FieldCtx>> {
        Ok(Arc::new(FieldCtx::new(self.p, self.e, self.n)?))
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FieldArg {
    Mid,
    Ambient,
}

#[derive(Subcommand)]
enum BuildKind {
    /// β-orbit of {x + δx^{q^i}}, q odd.
    Typec {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        i: u32,
        /// Encoding of δ; defaults to the first admissible one.
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two β²-orbits of {x + δx^{q^k}} swapped by z ↦ ηz^{q^n}.
    Typeh {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long)]
        eta: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// β-orbit of {tr(x) + δx} in F_{q^6}, q = 2^e.
    Even3 {
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// no-typec-odd, no-typec-even8, even-n3-classification, hermite or
    /// planar-dichotomy.
    name: String,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long)]
    full: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_WORK_BUDGET)]
    budget: u64,
    #[arg(long, hide = true)]
    inject: Option<u64>,
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn emit_spread(s: &Spread, out: Option<PathBuf>) -> Result<()> {
    let json = serde_json::to_string_pretty(&s.to_json())?;
    match out {
        Some(path) => fs::write(path, json)?,
        None => println!("{json}"),
    }
    Ok(())
}

fn build(kind: BuildKind) -> Result<()> {
    match kind {
        BuildKind::Typec { tower, i, delta, out } => {
            let ctx = tower.ctx()?;
            let d = match delta {
                Some(d) => Elt(d),
                None => ctx.find_deltas()?[0],
            };
            emit_spread(&build_typec(&ctx, i, d)?, out)
        }
        BuildKind::Typeh { tower, k, delta, eta, out } => {
            let ctx = tower.ctx()?;
            let d = match delta {
                Some(d) => Elt(d),
                None => ctx.find_deltas()?[0],
            };
            let eta = match eta {
                Some(x) => Elt(x),
                None => *ctx
                    .find_etas(k)?
                    .first()
                    .ok_or_else(|| Error::InvalidParameter("no admissible eta".into()))?,
            };
            emit_spread(&build_typeh(&ctx, k, d, eta)?, out)
        }
        BuildKind::Even3 { e, delta, out } => {
            let ctx = Arc::new(FieldCtx::new(2, e, 3)?);
            let d = match delta {
                Some(d) => Elt(d),
                None => ctx
                    .elements(ctx.ambient())
                    .filter(|&d| even3_delta_admissible(&ctx, d))
                    .min()
                    .expect("admissible delta exists"),
            };
            emit_spread(&build_even_n3(&ctx, d)?, out)
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput {
    verified: bool,
    components: usize,
    kernel: Option<u64>,
    kernel_is_q_power: Option<bool>,
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Tower(t) => {
            print_json(&t.ctx()?.to_json())?;
            Ok(0)
        }
        Cmd::Build { kind } => {
            build(kind)?;
            Ok(0)
        }
        Cmd::Verify { path } => {
            let json: SpreadJson = serde_json::from_str(&fs::read_to_string(path)?)?;
            let mut s = Spread::from_json(&json)?;
            let verified = s.verify()?;
            let k = s.kernel();
            print_json(&VerifyOutput {
                verified,
                components: s.components().len(),
                kernel: k.map(|k| k.size),
                kernel_is_q_power: k.map(|k| k.is_q_power),
            })?;
            Ok(if verified { 0 } else { 2 })
        }
        Cmd::Experiment(a) => {
            let mut spec = ExperimentSpec::new(&a.name);
            spec.q = a.q;
            spec.n = a.n;
            spec.m = a.m;
            spec.k = a.k;
            spec.sample = a.sample;
            spec.full = a.full;
            spec.seed = a.seed;
            if let Some(j) = a.jobs {
                spec.jobs = j;
            }
            spec.out = a.out;
            spec.checkpoint = a.checkpoint;
            spec.budget = a.budget;
            spec.inject = a.inject;
            let report = run_experiment(&spec)?;
            print_json(&report)?;
            Ok(report.exit_code() as u8)
        }
        Cmd::Planar { tower, field, path } => {
            let ctx = tower.ctx()?;
            let sub = match field {
                FieldArg::Mid => ctx.mid_field(),
                FieldArg::Ambient => ctx.ambient(),
            };
            let json: DOPolyJson = serde_json::from_str(&fs::read_to_string(path)?)?;
            let f = DOPoly::from_json(&ctx, sub, &json)?;
            print_json(&planar_verdict(&f)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
