//! The `mobius` command line tool.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::breaking::{color, integralize, saturation_witness};
use crate::error::Error;
use crate::honeycomb::{count_lr, GlHoneycomb};
use crate::lift::largest_lift;
use crate::moebius::{count_nl, count_nl_in, natural_size, MoebiusBoundary, MoebiusHoneycomb};
use crate::oracle::nl_oracle;
use crate::partition::Partition;
use crate::rational::Rational;
use crate::svg::{render_gl, render_mh};

/// Environment variable holding the number of worker threads.
pub const WORKERS_ENV: &str = "MOBIUS_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "mobius", version, about = "Honeycombs, Möbius honeycombs and their coefficients")]
pub struct Cli {
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Triple {
    #[arg(long, value_parser = parse_partition, default_value = "")]
    pub lambda: Partition,
    #[arg(long, value_parser = parse_partition, default_value = "")]
    pub mu: Partition,
    #[arg(long, value_parser = parse_partition, default_value = "")]
    pub nu: Partition,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Enumerate,
    Formula,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count integral honeycombs with boundary (μ*, ν*, λ).
    Lr {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Count integral Möbius honeycombs, or evaluate the closed formula.
    Nl {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Enumerate)]
        method: Method,
    },
    /// Build an integral witness from one for (kλ, kμ, kν).
    Saturate {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, default_value_t = 2)]
        k: i64,
        /// Write the full witness as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest-lift of a boundary.
    Lift {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shift a largest-lift with integral boundary to an integral honeycomb.
    Integralize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a honeycomb or Möbius honeycomb stored as JSON.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Mark off-lattice vertices and edges.
        #[arg(long)]
        color: bool,
    },
    /// Compare enumeration with the closed formula over a range of triples.
    Crosscheck {
        #[arg(long, default_value_t = 2)]
        max_part: i64,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        delta: i64,
        /// Check only this many triples, drawn with `--seed`.
        #[arg(long)]
        sample: Option<usize>,
    },
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    s.parse()
}

fn largest_part(t: &Triple) -> i64 {
    t.lambda.largest().max(t.mu.largest()).max(t.nu.largest()).max(1)
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => writeln!(stdout, "{text}")?,
    }
    Ok(())
}

fn read_json(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Every triple with at most `max_len` parts of size at most `max_part` and even weight.
pub fn sweep(max_part: i64, max_len: usize) -> Vec<(Partition, Partition, Partition)> {
    let ps = Partition::all_bounded(max_len, max_part);
    let mut out = Vec::new();
    for l in &ps {
        for m in &ps {
            for v in &ps {
                if (l.weight() + m.weight() + v.weight()) % 2 == 0 {
                    out.push((l.clone(), m.clone(), v.clone()));
                }
            }
        }
    }
    out
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), Error> {
    match cli.command {
        Command::Lr { triple, n } => {
            let n = n.unwrap_or(triple.lambda.len().max(triple.mu.len()).max(triple.nu.len()).max(1));
            writeln!(stdout, "{}", count_lr(&triple.lambda, &triple.mu, &triple.nu, n)?)?;
        }
        Command::Nl { triple, delta, n, method } => {
            let (l, m, v) = (&triple.lambda, &triple.mu, &triple.nu);
            let count = match method {
                Method::Formula => nl_oracle(l, m, v),
                Method::Enumerate => {
                    let delta = delta.unwrap_or(largest_part(&triple));
                    match n {
                        Some(n) => count_nl_in(l, m, v, delta, n)?,
                        None => count_nl(l, m, v, delta)?,
                    }
                }
            };
            writeln!(stdout, "{count}")?;
        }
        Command::Saturate { triple, k, out } => {
            match saturation_witness(&triple.lambda, &triple.mu, &triple.nu, k)? {
                None => writeln!(stdout, "N=0")?,
                Some(w) => {
                    let p = &w.pieces;
                    writeln!(
                        stdout,
                        "witness: {} white loops, {} double breaks, {} sixfold repairs",
                        w.result.loops.len(),
                        w.result.breaks.len(),
                        w.result.sixfold.len()
                    )?;
                    writeln!(stdout, "alpha={:?} beta={:?} gamma={:?}", p.alpha, p.beta, p.gamma)?;
                    if let Some(path) = &out {
                        fs::write(path, serde_json::to_string_pretty(&w)?)?;
                        writeln!(stdout, "written to {}", path.display())?;
                    } else {
                        writeln!(stdout, "{}", w.result.honeycomb.to_json()?)?;
                    }
                }
            }
        }
        Command::Lift { triple, delta, n, out } => {
            let delta = delta.unwrap_or(largest_part(&triple));
            let n = n.unwrap_or(natural_size(&triple.lambda, &triple.mu, &triple.nu));
            let xi = MoebiusBoundary::for_nl(&triple.lambda, &triple.mu, &triple.nu, delta, n)?;
            let ll = largest_lift(&xi, &Rational::from_int(delta), n)?;
            emit(&out, &ll.honeycomb.to_json()?, stdout)?;
        }
        Command::Integralize { input, out } => {
            let h = MoebiusHoneycomb::from_json(&read_json(&input)?)?;
            emit(&out, &integralize(&h)?.honeycomb.to_json()?, stdout)?;
        }
        Command::Render { input, out, color: colored } => {
            let text = read_json(&input)?;
            let svg = match MoebiusHoneycomb::from_json(&text) {
                Ok(h) => {
                    let c = if colored { Some(color(&h)?) } else { None };
                    render_mh(&h, c.as_ref())?
                }
                Err(_) => {
                    let h: GlHoneycomb = serde_json::from_str(&text)?;
                    render_gl(&h)?
                }
            };
            emit(&out, &svg, stdout)?;
        }
        Command::Crosscheck {
            max_part,
            max_len,
            delta,
            sample,
        } => {
            let mut triples = sweep(max_part, max_len);
            if let Some(s) = sample {
                triples.shuffle(&mut ChaCha8Rng::seed_from_u64(cli.seed));
                triples.truncate(s);
            }
            let results: Vec<_> = triples
                .par_iter()
                .map(|(l, m, v)| count_nl(l, m, v, delta).map(|c| (c, nl_oracle(l, m, v))))
                .collect();
            let mut bad = 0;
            for ((l, m, v), r) in triples.iter().zip(results) {
                let (c, o) = r?;
                if c != o {
                    bad += 1;
                    writeln!(stdout, "mismatch {l} {m} {v}: enumerate {c}, formula {o}")?;
                }
            }
            writeln!(stdout, "{} triples, {} mismatches", triples.len(), bad)?;
            if bad > 0 {
                return Err(Error::Invariant(format!("{bad} triples disagree")));
            }
        }
    }
    Ok(())
}

/// Parse arguments, set up the worker pool and run; returns the exit status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    if let Some(w) = cli.workers {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    match run(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
