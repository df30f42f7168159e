use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use divgrad::classify::{classify, is_equivalent, is_isomorphic, CaseTag, ClassificationRecord, Verdict};
use divgrad::format::{format_gda, format_record, parse_gda, parse_record, summary};
use divgrad::graded::{product_of, Block, GradedAlgebra};
use divgrad::group::{Group, Hom};
use divgrad::oracle::run_suite;
use divgrad::realize::{canonical_representative, realize_from_invariants};
use divgrad::refine::refine;
use divgrad::Error;

/// Division gradings on M_n(R), M_n(C) and M_n(H) with exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "divgrad", version)]
struct Cli {
    /// Write the resulting document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for pseudorandom verification suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Largest m for list-based verification suites.
    #[arg(long = "max-m", global = true, default_value_t = 2)]
    max_m: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tensor product of building blocks, optionally relabeled into a group.
    Build {
        #[arg(required = true)]
        blocks: Vec<String>,
        /// Target group of the relabeling (defaults to the product group).
        #[arg(long)]
        group: Option<String>,
        /// Images of the standard generators of the product group, e.g.
        /// "(1,0) (1,1)"; must define an injective homomorphism.
        #[arg(long)]
        images: Option<String>,
    },
    /// Classify a grading document and print its invariants.
    Classify { file: PathBuf },
    /// Isomorphism over a common grading group.
    Iso { a: PathBuf, b: PathBuf },
    /// Equivalence (graded isomorphism up to relabeling of degrees).
    Equiv { a: PathBuf, b: PathBuf },
    /// Canonical representative of a list entry.
    Canonical {
        tag: String,
        m: u32,
        /// Ambient group to move the grading into.
        #[arg(long)]
        group: Option<String>,
    },
    /// Grading realizing a classification record.
    Realize { file: PathBuf },
    /// Refinement of a grading with two- or four-dimensional components.
    Refine { file: PathBuf },
    /// Run verification suites (blocks, list, arf, hh, refine, roundtrip,
    /// count, all).
    Verify { suite: String, seed: Option<u64> },
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::WrongSymbol { .. } | Error::Parse { .. } => 2,
        Error::Deferred(_) => 3,
        Error::NotDivision(_) => 4,
        Error::NotGrading(_) => 5,
        _ => 1,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<GradedAlgebra> {
    let a = parse_gda(&read(path)?)?;
    a.check_grading().map_err(Error::from)?;
    Ok(a)
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_verdict(v: &Verdict) {
    println!("{} ({})", if v.holds { "yes" } else { "no" }, v.reason);
    println!("# left: {}", summary(&v.left));
    println!("# right: {}", summary(&v.right));
}

fn build(blocks: &[String], group: Option<&str>, images: Option<&str>) -> anyhow::Result<GradedAlgebra> {
    let factors = blocks.iter().map(|b| Ok(Block::parse(b)?.build())).collect::<anyhow::Result<Vec<_>>>()?;
    let a = product_of(&factors)?;
    let src = a.group();
    let dst = match group {
        Some(g) => Group::parse(g)?,
        None => src,
    };
    let hom = match images {
        Some(text) => {
            let imgs = text.split_whitespace().map(|t| dst.parse_elem(t)).collect::<Result<Vec<_>, _>>()?;
            Hom::new(src, dst, imgs)?
        }
        None if dst == src => return Ok(a),
        None => return Err(Error::BadHom(format!("relabeling into {dst} needs --images")).into()),
    };
    if !hom.is_injective() {
        return Err(Error::BadHom("relabeling is not injective".into()).into());
    }
    Ok(a.coarsen(&hom)?)
}

fn classify_record(a: &GradedAlgebra) -> Result<ClassificationRecord, Error> {
    a.check_division_grading()?;
    classify(a)
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Build { blocks, group, images } => {
            emit(cli, &format_gda(&build(blocks, group.as_deref(), images.as_deref())?))?;
        }
        Command::Classify { file } => {
            let rec = classify_record(&load(file)?)?;
            if cli.out.is_some() {
                println!("{}", summary(&rec));
                emit(cli, &format_record(&rec))?;
            } else {
                print!("# {}\n{}", summary(&rec), format_record(&rec));
            }
            if rec.is_deferred() {
                return Ok(3);
            }
        }
        Command::Iso { a, b } => print_verdict(&is_isomorphic(&load(a)?, &load(b)?)?),
        Command::Equiv { a, b } => print_verdict(&is_equivalent(&load(a)?, &load(b)?)?),
        Command::Canonical { tag, m, group } => {
            let ambient = group.as_deref().map(Group::parse).transpose()?;
            emit(cli, &format_gda(&canonical_representative(CaseTag::parse(tag)?, *m, ambient)?))?;
        }
        Command::Realize { file } => {
            let rec = parse_record(&read(file)?)?;
            emit(cli, &format_gda(&realize_from_invariants(&rec)?))?;
        }
        Command::Refine { file } => emit(cli, &format_gda(&refine(&load(file)?)?.algebra))?,
        Command::Verify { suite, seed } => {
            let reports = run_suite(suite, seed.unwrap_or(cli.seed), cli.max_m)?;
            let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let ok = reports.iter().all(|r| r.passed());
            emit(cli, &format!("{text}{}\n", if ok { "all suites pass" } else { "some suites fail" }))?;
            if !ok {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (code, status) = match e.downcast_ref::<Error>() {
                Some(err) => (err.code(), exit_status(err)),
                None => ("io", 1),
            };
            let line = e.to_string().replace('\n', " ");
            eprintln!("error: {code}: {line}");
            ExitCode::from(status)
        }
    }
}
