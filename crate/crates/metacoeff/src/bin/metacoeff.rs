//! Thin command-line wrapper over the library: cover specification in,
//! invariants / matrices / verification reports out.

use clap::{Args, Parser, Subcommand};
use metacoeff::cli::{
    cmd_bwn, cmd_dual, cmd_exc, cmd_gl2, cmd_lcm, cmd_orbits, cmd_poincare, cmd_verify, CliError,
    CoverSpec, SpecOptions,
};

#[derive(Parser)]
#[command(
    name = "metacoeff",
    about = "Exact invariants and symbolic local coefficients matrices for covers of split reductive p-adic groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// family: A, B, C, D, E6, E7, E8, F4, G2, SL2, Sp, GL, SOodd
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    /// Q on short coroots (ignored when --d-matrix or --spec is given)
    #[arg(long, default_value_t = 1)]
    q_short: i64,
    /// full bisector matrix as JSON rows, e.g. "[[0,1],[0,0]]"
    #[arg(long)]
    d_matrix: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: u64,
    /// read the whole cover spec from a JSON file instead
    #[arg(long)]
    spec: Option<String>,
    /// output format: text | json | latex
    #[arg(long, default_value = "text")]
    output: String,
    #[arg(long, default_value_t = metacoeff::orbits::DEFAULT_ENUM_CAP)]
    enumeration_cap: u64,
    /// epsilon regime; only "+1" is supported
    #[arg(long, default_value = "+1")]
    eps: String,
}

impl SpecArgs {
    fn to_spec(&self) -> Result<CoverSpec, CliError> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path, e)))?;
            return serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad spec file: {}", e)));
        }
        let family = self
            .family
            .clone()
            .ok_or_else(|| CliError::Usage("--family or --spec is required".into()))?;
        let d_matrix = match &self.d_matrix {
            Some(s) => Some(
                serde_json::from_str::<Vec<Vec<i64>>>(s)
                    .map_err(|e| CliError::Usage(format!("bad --d-matrix: {}", e)))?,
            ),
            None => None,
        };
        Ok(CoverSpec {
            family,
            rank: self.rank,
            d_matrix,
            q_short: Some(self.q_short),
            n: self.n,
            options: SpecOptions {
                eps: self.eps.clone(),
                enumeration_cap: self.enumeration_cap,
                output: self.output.clone(),
            },
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dual root datum: Y_{Q,n}, modified type, center, fundamental group
    Dual(SpecArgs),
    /// Coset-space counts: d, b_alpha, a_alpha, signs, b_W, exceptional
    Orbits(SpecArgs),
    /// The twisted-Weyl fixed-point count b_{W,n}
    Bwn(SpecArgs),
    /// The exceptional set and its coset-image count
    Exc(SpecArgs),
    /// Sweep n and emit the rational Poincare series
    Poincare {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 24)]
        n_max: usize,
        /// number of per-n worker threads for the sweep
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Scattering, change-of-basis and local coefficients matrices
    Lcm {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0)]
        alpha: usize,
    },
    /// Run a named verification suite (or "all")
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long, default_value_t = false)]
        json: bool,
    },
    /// Kazhdan-Patterson GL(2) constants, blocks, and identity checks
    Gl2 {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        c: i64,
        #[arg(long, default_value_t = false)]
        json: bool,
    },
}

fn run() -> Result<String, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Dual(a) => cmd_dual(&a.to_spec()?),
        Command::Orbits(a) => cmd_orbits(&a.to_spec()?),
        Command::Bwn(a) => cmd_bwn(&a.to_spec()?),
        Command::Exc(a) => cmd_exc(&a.to_spec()?),
        Command::Poincare { spec, n_max, jobs } => cmd_poincare(&spec.to_spec()?, n_max, jobs),
        Command::Lcm { spec, alpha } => cmd_lcm(&spec.to_spec()?, alpha),
        Command::Verify { suite, grid: _, json } => cmd_verify(&suite, json),
        Command::Gl2 { n, c, json } => cmd_gl2(n, c, json),
    }
}

fn main() {
    match run() {
        Ok(text) => {
            print!("{}", text);
        }
        Err(e) => {
            eprintln!("{}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
