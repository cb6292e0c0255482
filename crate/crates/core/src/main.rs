//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on computation or input-file errors, 2 on
//! usage errors. `ISOCHRON_THREADS` caps the worker pool.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use isochron::alphabet::{alphabet_of_component, Word};
use isochron::analysis::{
    check_isochronous_with, consistency_probe, theorem_applies, TheoremCondition,
};
use isochron::constraints::{Chart, FieldSpec};
use isochron::correction::{
    correction_numeric_with, correction_term_with, Composition, CorrectionOptions,
};
use isochron::io::parse_field;
use isochron::mould::carr_of_word;
use isochron::operators::bracket_coeffs;
use isochron::selftest::run_selftest;
use isochron::variety::{export, generators_with, ExportFormat};

#[derive(Parser)]
#[command(
    name = "isochron",
    version,
    about = "Correction terms and isochronicity of planar polynomial centers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// List the letters of component r.
    Alphabet { r: u32 },
    /// Evaluate the correction mould on a word such as "(1,0).(0,1)".
    Mould {
        #[arg(long)]
        word: Word,
    },
    /// Coefficients of the left-nested bracket of a word.
    Bracket {
        #[arg(long)]
        word: Word,
        field: PathBuf,
    },
    /// Correction term at one depth.
    Correction {
        #[arg(long)]
        depth: u32,
        /// Word composition order: forward (last letter acts first) or reverse.
        #[arg(long, default_value_t = Composition::Forward)]
        composition: Composition,
        field: PathBuf,
    },
    /// Evaluate even depths until a nonzero correction term appears.
    Check {
        #[arg(long)]
        max_depth: u32,
        /// Word composition order: forward (last letter acts first) or reverse.
        #[arg(long, default_value_t = Composition::Forward)]
        composition: Composition,
        field: PathBuf,
    },
    /// Whether a nonisochronicity criterion applies to a field.
    Theorem {
        /// One of 1a, 1b, weak, 2:k,l, 3:k,l,m, 4i:k,l,r,n, 4ii:k,l,r,n.
        #[arg(long)]
        condition: TheoremCondition,
        field: PathBuf,
    },
    /// Check random fields satisfying a criterion.
    Probe {
        #[arg(long)]
        condition: TheoremCondition,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_depth: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generators of the isochronous variety.
    Variety {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        max_depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = Chart::Lower)]
        chart: Chart,
        /// Split every coordinate into real and imaginary parts (text only).
        #[arg(long)]
        real: bool,
        /// Word composition order: forward (last letter acts first) or reverse.
        #[arg(long, default_value_t = Composition::Forward)]
        composition: Composition,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the golden tables and low-depth formulas.
    Selftest,
}

fn load(path: &PathBuf) -> anyhow::Result<FieldSpec> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_field(&text).with_context(|| format!("parsing {}", path.display()))
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("ISOCHRON_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("ISOCHRON_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cmd: Command) -> anyhow::Result<()> {
    match cmd {
        Command::Alphabet { r } => {
            for l in alphabet_of_component(r)? {
                println!("{l}");
            }
        }
        Command::Mould { word } => println!("{}", carr_of_word(&word)),
        Command::Bracket { word, field } => {
            let spec = load(&field)?;
            let b = bracket_coeffs(&word, &spec.operators())?;
            println!("letter: {}", b.total);
            println!("P: {}", b.p);
            println!("Q: {}", b.q);
        }
        Command::Correction {
            depth,
            composition,
            field,
        } => {
            let spec = load(&field)?;
            let opts = CorrectionOptions {
                composition,
                ..Default::default()
            };
            if spec.is_numeric() {
                let t = correction_numeric_with(&spec, depth, &opts)?;
                for (sig, v) in &t.by_signature {
                    println!("components {sig:?}: {v}");
                }
                println!("Ca_{depth} = {}", t.total);
            } else {
                let t = correction_term_with(&spec, depth, &opts)?;
                for (sig, v) in &t.by_signature {
                    println!("components {sig:?}: {v}");
                }
                println!("Ca_{depth} = {}", t.total);
            }
        }
        Command::Check {
            max_depth,
            composition,
            field,
        } => {
            let spec = load(&field)?;
            let rep = check_isochronous_with(&spec, max_depth, composition)?;
            for (d, v) in &rep.table {
                println!("Ca_{d} = {v}");
            }
            println!("{}", rep.verdict);
        }
        Command::Theorem { condition, field } => {
            let spec = load(&field)?;
            let a = theorem_applies(&spec, &condition);
            let head = if a.applies { "applies" } else { "no guarantee" };
            println!("{condition}: {head} ({})", a.explanation);
        }
        Command::Probe {
            condition,
            samples,
            max_depth,
            seed,
        } => {
            let rep = consistency_probe(&condition, samples, max_depth, seed)?;
            for (i, s) in rep.samples.iter().enumerate() {
                let support: Vec<u32> = s.spec.support();
                println!("sample {i}: support {support:?}: {}", s.verdict);
            }
            println!(
                "{condition}: {}/{} nonisochronous within depth {max_depth}, {} flagged",
                rep.witnessed.len(),
                rep.samples.len(),
                rep.flagged.len()
            );
        }
        Command::Variety {
            degree,
            max_depth,
            format,
            chart,
            real,
            composition,
            out,
        } => {
            let gs = generators_with(degree, max_depth, chart, composition)?;
            let fmt = match format {
                Format::Text => ExportFormat::Text,
                Format::Structured => ExportFormat::Structured,
            };
            let doc = export(&gs, fmt, real)?;
            match out {
                Some(p) => {
                    std::fs::write(&p, doc).with_context(|| format!("writing {}", p.display()))?
                }
                None => print!("{doc}"),
            }
        }
        Command::Selftest => {
            let rep = run_selftest()?;
            print!("{}", rep.render());
            if !rep.passed() {
                bail!("selftest failed");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
