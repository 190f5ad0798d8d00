mod output;

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use lottogap::montecarlo::draw_history;
use lottogap::oracle::{
    adjudicate_cycle, enumerate_distribution_with, EnumOptions, DEFAULT_BUDGET,
};
use lottogap::{
    audit, crosscheck, dp_f, game_ev, gap_probability, parse_draws, simulate, DrawSpec, Error,
    SimConfig, Topology,
};

use output::Out;

#[derive(Parser, Debug)]
#[command(
    name = "lottogap",
    version,
    about = "Exact odds of close numbers in lottery draws"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Decimal digits for rendered probabilities (round half to even).
    #[arg(long, default_value_t = 6, global = true)]
    digits: u32,
    /// Cap on worker threads for enumeration and simulation.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Topo {
    Line,
    Cycle,
}

impl From<Topo> for Topology {
    fn from(t: Topo) -> Self {
        match t {
            Topo::Line => Topology::Line,
            Topo::Cycle => Topology::Cycle,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct DrawArgs {
    /// Pool size: numbers are drawn from 1..=n.
    #[arg(short = 'n', long = "pool", value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Draw size.
    #[arg(short = 'm', long = "draw")]
    m: u32,
}

impl DrawArgs {
    fn spec(self) -> Result<DrawSpec, Failure> {
        DrawSpec::new(self.n, self.m).map_err(|_| {
            Failure::usage(format!(
                "-m/--draw: draw size {} exceeds pool size -n/--pool {}",
                self.m, self.n
            ))
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Probability that two drawn numbers are closer than k.
    Prob {
        #[command(flatten)]
        draw: DrawArgs,
        #[arg(short = 'k', long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value_t = Topo::Line)]
        topo: Topo,
    },
    /// Line and ring probabilities for k = 1..=k-max side by side.
    Table {
        #[command(flatten)]
        draw: DrawArgs,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: u32,
        /// Add the column computed from the displayed ring closed form.
        #[arg(long)]
        paper_compat: bool,
    },
    /// Check recurrence, generating-function series and closed form agree.
    Crosscheck {
        #[arg(long, default_value_t = 60)]
        max_n: usize,
        #[arg(long, default_value_t = 12)]
        max_m: usize,
        /// Also print the recurrence table.
        #[arg(long)]
        values: bool,
    },
    /// Count every subset by its exact minimum gap.
    Enumerate {
        #[command(flatten)]
        draw: DrawArgs,
        #[arg(long, value_enum, default_value_t = Topo::Line)]
        topo: Topo,
        /// Largest number of subsets to visit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Enumerate the ring and compare it with the recurrence, the displayed
    /// closed form and published values.
    Adjudicate {
        #[arg(short = 'n', long = "pool", default_value_t = 49, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(short = 'm', long = "draw", default_value_t = 6)]
        m: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Seeded Monte Carlo estimate.
    Simulate {
        #[command(flatten)]
        draw: DrawArgs,
        #[arg(short = 'k', long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value_t = Topo::Line)]
        topo: Topo,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Independent RNG streams; part of the result's identity.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        workers: u32,
    },
    /// Expected value of the even-money bet on a close pair.
    Ev {
        #[command(flatten)]
        draw: DrawArgs,
        #[arg(short = 'k', long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_enum, default_value_t = Topo::Line)]
        topo: Topo,
        /// Stake per bet, integer or fraction like 5/2.
        #[arg(long)]
        stake: Option<BigRational>,
    },
    /// Compare a draw-history CSV against the exact probabilities.
    Audit {
        file: PathBuf,
        #[command(flatten)]
        draw: DrawArgs,
        #[arg(long, value_enum, default_value_t = Topo::Line)]
        topo: Topo,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: u32,
    },
    /// Write a synthetic uniform draw history as CSV.
    Generate {
        #[command(flatten)]
        draw: DrawArgs,
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::DegenerateDraw(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        // Only fails if the global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global();
    }
    let out = Out::new(cli.format, cli.digits);
    let threads = cli.threads.map(|t| t as usize);
    match cli.command {
        Command::Prob { draw, k, topo } => {
            let g = gap_probability(draw.spec()?, k, topo.into())?;
            out.prob(&g);
        }
        Command::Table {
            draw,
            k_max,
            paper_compat,
        } => out.table(draw.spec()?, k_max, paper_compat)?,
        Command::Crosscheck {
            max_n,
            max_m,
            values,
        } => {
            let report = crosscheck(max_n, max_m);
            let table = values.then(|| dp_f(max_n, max_m));
            out.crosscheck(&report, table.as_ref());
            if !report.passed() {
                return Err(Failure {
                    code: 3,
                    message: "three-way agreement failed".into(),
                });
            }
        }
        Command::Enumerate { draw, topo, budget } => {
            let dist = enumerate_distribution_with(
                draw.spec()?,
                topo.into(),
                &EnumOptions { budget, threads },
            )?;
            out.enumerate(&dist)?;
        }
        Command::Adjudicate {
            n,
            m,
            k_max,
            budget,
        } => {
            let spec = DrawArgs { n, m }.spec()?;
            let dist = enumerate_distribution_with(
                spec,
                Topology::Cycle,
                &EnumOptions { budget, threads },
            )?;
            let rows = adjudicate_cycle(&dist, k_max)?;
            out.adjudicate(spec, &rows);
        }
        Command::Simulate {
            draw,
            k,
            topo,
            trials,
            seed,
            workers,
        } => {
            let config =
                SimConfig::new(draw.spec()?, k, topo.into(), trials, seed).with_workers(workers);
            out.simulate(&simulate(&config)?);
        }
        Command::Ev {
            draw,
            k,
            topo,
            stake,
        } => {
            let report = game_ev(draw.spec()?, k, topo.into())?;
            out.ev(&report, stake.as_ref());
        }
        Command::Audit {
            file,
            draw,
            topo,
            k_max,
        } => {
            let spec = draw.spec()?;
            let reader = File::open(&file)
                .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            let records = parse_draws(BufReader::new(reader), spec)
                .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            out.audit(&audit(&records, spec, topo.into(), k_max)?);
        }
        Command::Generate { draw, draws, seed } => {
            let history = draw_history(draw.spec()?, draws, seed);
            out.history(&history);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
