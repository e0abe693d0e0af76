//! `hypergroup`: command-line front end for the hypergroup toolkit.
//!
//! Exit codes: 0 on success, 1 when a check fails or input is refused,
//! 2 on usage or input errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use hypergroup::families::{
    build_k_rs, conic_solutions_for_r, conic_value, rational_point_from_slope, region_violation, ConicSolution,
};
use hypergroup::rational::{format_rational, parse_rational_lenient, to_f64};
use hypergroup::search::{feasibility_search, sample_region, SearchConfig};
use hypergroup::symbolic::verify_appendix;
use hypergroup::symmetry::{check_isomorphism, Relabeling};
use hypergroup::validate::{commutativity_witness, validate};
use hypergroup::{io, Hypergroup, Rational, StarInvolution};

#[derive(Parser)]
#[command(name = "hypergroup", version, about = "Exact-arithmetic toolkit for finite hypergroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every hypergroup axiom on a document.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build K(r,s) and write its document.
    Construct {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        r: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        s: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the conic F(r, s) = 0 for s at a fixed r.
    Conic {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        r: Rational,
        #[arg(long, value_parser = rational_arg, default_value = "1/1000000000")]
        width: Rational,
    },
    /// Rational point on the conic along the line of the given slope through (1/4, 1/4).
    Point {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        slope: Rational,
    },
    /// Print a commutativity witness, or "commutative".
    Witness { file: PathBuf },
    /// Sample the (r, s) parameter region to CSV.
    Region {
        #[arg(long, value_parser = rational_arg)]
        step: Rational,
        #[arg(long)]
        out: PathBuf,
    },
    /// Floating-point feasibility search for structure tensors.
    Search {
        #[arg(long)]
        order: usize,
        /// Star involution as a comma-separated list, e.g. 0,3,2,1.
        #[arg(long)]
        star: String,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 400)]
        max_iterations: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every associativity coefficient equation of K(r,s) symbolically.
    SymbolicVerify {
        #[arg(long)]
        json: bool,
    },
    /// Check the (1 2) and (3 4) relabelings of K(r,s) against K(s,r).
    Isocheck {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        r: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        s: Rational,
    },
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational_lenient(text).map_err(|e| e.to_string())
}

/// A command either succeeds, or reports a failed check (exit 1).
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> anyhow::Result<Hypergroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Validate { file, json } => {
            let report = validate(&load(&file)?);
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json())?);
            } else {
                println!("{report}");
            }
            Ok(if report.overall { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Construct { r, s, out } => {
            if let Some(violation) = region_violation(&r, &s) {
                eprintln!("refusing to construct K({r},{s}): {violation}");
                return Ok(Outcome::Fail);
            }
            let h = build_k_rs(&r, &s)?;
            write_output(out.as_deref(), &io::serialize(&h))?;
            Ok(Outcome::Pass)
        }
        Command::Conic { r, width } => {
            for solution in conic_solutions_for_r(&r, &width)? {
                match solution {
                    ConicSolution::Exact(x) => println!("exact {}", format_rational(&x)),
                    ConicSolution::Enclosure { lo, hi } => println!(
                        "enclosure [{}, {}] ~ {:.12}",
                        format_rational(&lo),
                        format_rational(&hi),
                        to_f64(&((&lo + &hi) / Rational::from_integer(2.into())))
                    ),
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Point { slope } => {
            let (r, s) = rational_point_from_slope(&slope)?;
            let f = conic_value(&r, &s);
            println!("r = {}", format_rational(&r));
            println!("s = {}", format_rational(&s));
            println!("F(r,s) = {}", format_rational(&f));
            match region_violation(&r, &s) {
                None => println!("in region"),
                Some(v) => println!("outside region: {v}"),
            }
            Ok(Outcome::Pass)
        }
        Command::Witness { file } => {
            match commutativity_witness(&load(&file)?) {
                Some((i, j)) => println!("({i},{j})"),
                None => println!("commutative"),
            }
            Ok(Outcome::Pass)
        }
        Command::Region { step, out } => {
            let rows = sample_region(&step)?;
            let mut csv = String::from("r,s,in_region,conic_value,admissible\n");
            for row in &rows {
                writeln!(
                    csv,
                    "{},{},{},{:e},{}",
                    format_rational(&row.r),
                    format_rational(&row.s),
                    row.in_region,
                    row.conic_value,
                    row.admissible
                )?;
            }
            fs::write(&out, csv).with_context(|| format!("writing {}", out.display()))?;
            let inside = rows.iter().filter(|r| r.in_region).count();
            let admissible = rows.iter().filter(|r| r.admissible).count();
            println!("{} grid points, {inside} in region, {admissible} admissible", rows.len());
            Ok(Outcome::Pass)
        }
        Command::Search { order, star, restarts, seed, max_iterations, out } => {
            let perm = star
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .context("--star must be a comma-separated list of indices")?;
            let star = StarInvolution::new(perm)?;
            if star.order() != order {
                bail!("--star has {} entries but --order is {order}", star.order());
            }
            let mut config = SearchConfig::new(star);
            config.restarts = restarts;
            config.seed = seed;
            config.max_iterations = max_iterations;
            let candidates = feasibility_search(&config)?;
            let mut csv = String::from("restart,residual,commutativity_defect,commutative,tensor\n");
            for c in &candidates {
                let tensor: Vec<String> = c.tensor.iter().map(|x| format!("{x:.17e}")).collect();
                writeln!(
                    csv,
                    "{},{:e},{:e},{},{}",
                    c.restart,
                    c.residual,
                    c.commutativity_defect,
                    c.is_commutative(config.commutativity_tolerance),
                    tensor.join(";")
                )?;
            }
            write_output(out.as_deref(), &csv)?;
            if out.is_some() {
                let non_commutative =
                    candidates.iter().filter(|c| !c.is_commutative(config.commutativity_tolerance)).count();
                println!("{} candidates, {non_commutative} non-commutative", candidates.len());
            }
            Ok(Outcome::Pass)
        }
        Command::SymbolicVerify { json } => {
            let report = verify_appendix();
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json())?);
            } else {
                println!("{report}");
            }
            Ok(if report.ok() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Isocheck { r, s } => {
            for (a, b) in [(&r, &s), (&s, &r)] {
                if let Some(violation) = region_violation(a, b) {
                    eprintln!("refusing to construct K({a},{b}): {violation}");
                    return Ok(Outcome::Fail);
                }
            }
            let k_rs = build_k_rs(&r, &s)?;
            let k_sr = build_k_rs(&s, &r)?;
            let mut all = true;
            for (name, a, b) in [("swap(1,2)", 1, 2), ("swap(3,4)", 3, 4)] {
                let ok = check_isomorphism(&k_rs, &k_sr, &Relabeling::swap(5, a, b)?)?;
                all &= ok;
                println!("{name}: K({r},{s}) -> K({s},{r}) {}", if ok { "isomorphic" } else { "NOT isomorphic" });
            }
            Ok(if all { Outcome::Pass } else { Outcome::Fail })
        }
    }
}
