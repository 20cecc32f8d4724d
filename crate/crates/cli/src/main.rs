use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indel_entropy::average::{avg_1del, avg_1ins, figure_csv, figure_table};
use indel_entropy::embed::{deletion_ball, insertion_ball};
use indel_entropy::entropy::{
    input_entropy, input_entropy_1del_closed, input_entropy_1ins_closed, input_entropy_auto, output_entropy,
};
use indel_entropy::extremal::{
    exhaustive_extremizers, extrema_1ins_fixed_runs, global_extrema_1del, global_extrema_1ins,
    max_1del_fixed_runs, min_1del_fixed_runs, min_2del, ExtremalResult, DEFAULT_WITNESS_LIMIT,
};
use indel_entropy::verify::{run_suite, Suite};
use indel_entropy::{ChannelSpec, Config, Direction, Error, Result, Word};
use serde_json::json;

#[derive(Parser)]
#[command(name = "indel-entropy", version, about = "Entropies of deletion and insertion channels")]
struct Cli {
    /// Largest weighted ball that may be materialized.
    #[arg(long, global = true, default_value_t = indel_entropy::config::DEFAULT_CAP)]
    max_ball: u64,
    /// Largest word space that may be enumerated.
    #[arg(long, global = true, default_value_t = indel_entropy::config::DEFAULT_CAP)]
    max_space: u64,
    /// Worker threads for exhaustive scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Del,
    Ins,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Del => Direction::Deletion,
            Dir::Ins => Direction::Insertion,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Enum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Input,
    Output,
}

#[derive(Args)]
struct Channel {
    #[arg(long, value_enum)]
    dir: Dir,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Input entropy of a received word, or output entropy of a sent word.
    Entropy {
        #[command(flatten)]
        channel: Channel,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, value_enum, default_value = "input")]
        kind: Kind,
    },
    /// Weighted ball around a word, one `word<TAB>weight` line per entry.
    Ball {
        #[command(flatten)]
        channel: Channel,
        #[arg(long)]
        word: String,
    },
    /// Minimum and maximum input entropy over words of length m.
    Extremal {
        #[command(flatten)]
        channel: Channel,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_WITNESS_LIMIT)]
        witness_limit: usize,
    },
    /// Average input entropy of a single-error channel.
    Average {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        direct: bool,
        #[arg(long, value_enum, default_value = "del")]
        dir: Dir,
    },
    /// Writes the 1-deletion min/max/average curves as CSV.
    Figure {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs a self-check suite against enumeration.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        max_m: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        max_space: cli.max_space,
        max_ball: cli.max_ball,
        threads: cli.threads,
    };
    match run(cli.command, &config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, config: &Config) -> Result<ExitCode> {
    match command {
        Command::Entropy { channel, word, method, kind } => {
            let direction = channel.dir.into();
            let w = Word::parse(&word, channel.q)?;
            let report = match (kind, method) {
                (Kind::Output, Some(MethodArg::Closed)) => {
                    return Err(Error::OutOfRange("output entropy has no closed form".into()))
                }
                (Kind::Output, _) => output_entropy(&ChannelSpec::for_input(direction, channel.k, &w)?, &w, config)?,
                (Kind::Input, None) => input_entropy_auto(direction, channel.k, &w, config)?,
                (Kind::Input, Some(MethodArg::Enum)) => {
                    input_entropy(&ChannelSpec::for_output(direction, channel.k, &w)?, &w, config)?
                }
                (Kind::Input, Some(MethodArg::Closed)) => match (direction, channel.k) {
                    (Direction::Deletion, 1) => input_entropy_1del_closed(&w)?,
                    (Direction::Insertion, 1) => {
                        ChannelSpec::for_output(direction, 1, &w)?;
                        input_entropy_1ins_closed(&w)?
                    }
                    _ => return Err(Error::OutOfRange("closed form requires k=1".into())),
                },
            };
            print_json(&report);
        }
        Command::Ball { channel, word } => {
            let w = Word::parse(&word, channel.q)?;
            let ball = match Direction::from(channel.dir) {
                Direction::Deletion => deletion_ball(&w, channel.k, config)?,
                Direction::Insertion => insertion_ball(&w, channel.k, config)?,
            };
            print!("{}", ball.to_text());
        }
        Command::Extremal { channel, m, runs, exhaustive, witness_limit } => {
            let (min, max) = extremal(channel, m, runs, exhaustive, config)?;
            let record = json!({
                "min": min.map(|r| r.to_record(witness_limit)),
                "max": max.map(|r| r.to_record(witness_limit)),
            });
            print_json(&record);
        }
        Command::Average { q, n, direct, dir } => {
            let report = match dir {
                Dir::Del => avg_1del(n, q, direct, config)?,
                Dir::Ins => avg_1ins(n, q, direct, config)?,
            };
            print_json(&report);
        }
        Command::Figure { q, n_min, n_max, out } => {
            let csv = figure_csv(&figure_table(n_min, n_max, q)?);
            fs::write(&out, csv).map_err(|e| Error::OutOfRange(format!("{}: {e}", out.display())))?;
        }
        Command::Verify { suite, max_m, q } => {
            let summary = run_suite(suite, max_m, q, config)?;
            println!("{summary}");
            if !summary.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

type Pair = (Option<ExtremalResult>, Option<ExtremalResult>);

fn extremal(channel: Channel, m: usize, runs: Option<usize>, exhaustive: bool, config: &Config) -> Result<Pair> {
    let Channel { dir, k, q } = channel;
    let direction = Direction::from(dir);
    if exhaustive {
        let (lo, hi) = exhaustive_extremizers(direction, k, q, m, runs, config)?;
        return Ok((Some(lo), Some(hi)));
    }
    let (lo, hi) = match (direction, k, runs) {
        (Direction::Deletion, 1, Some(r)) => (
            min_1del_fixed_runs(q, m, r, config)?,
            max_1del_fixed_runs(q, m, r, config)?,
        ),
        (Direction::Deletion, 1, None) => global_extrema_1del(q, m + 1, config)?,
        (Direction::Insertion, 1, Some(r)) => extrema_1ins_fixed_runs(q, m, r, config)?,
        (Direction::Insertion, 1, None) => global_extrema_1ins(q, m, config)?,
        (Direction::Deletion, 2, None) if q == 2 => return Ok((Some(min_2del(m)?), None)),
        _ => {
            return Err(Error::OutOfRange(
                "no closed form for this channel; pass --exhaustive".into(),
            ))
        }
    };
    Ok((Some(lo), Some(hi)))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("records serialize"));
}
