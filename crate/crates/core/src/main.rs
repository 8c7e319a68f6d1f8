use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use shellkit::certificates::{build_shelling, extract_assignment, Assignment};
use shellkit::format::{
    parse_complex, parse_shelling, write_complex, write_gadget, write_meta, write_shelling,
};
use shellkit::gadgets::{
    blade, choice_gadget, hemisphere, separated_hemisphere, tricorne, turbine, HemisphereStyle,
};
use shellkit::homology::{betti, relative_betti};
use shellkit::reduction::{normalize, parse_dimacs, reduce, CnfInstance, ReductionMeta};
use shellkit::search::{find_shelling, prove_unshellable_quick, QuickVerdict, SearchOptions, Verdict};
use shellkit::shelling::{check_shelling_named, ShellingError};
use shellkit::{Complex, RelativeComplex};

#[derive(Parser)]
#[command(name = "shellkit", version, about = "Check, search and construct shellings of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a facet order (exit 0 valid, 1 invalid).
    Check {
        complex: PathBuf,
        shelling: PathBuf,
        /// Check relative to the `g` faces instead of ignoring them.
        #[arg(long)]
        relative: bool,
    },
    /// Decide shellability (exit 0 shellable, 1 not, 3 budget exhausted).
    Solve {
        complex: PathBuf,
        /// Maximum number of facet placements.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        parallel: bool,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a gadget: hemisphere, separated-hemisphere, tricorne, blade,
    /// turbine:N, choice or choice-separated.
    Gadget {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a CNF formula into a complex.
    Reduce {
        cnf: PathBuf,
        /// Rewrite the formula into the accepted fragment first.
        #[arg(long)]
        normalize: bool,
        /// Write the gadget metadata (JSON) here.
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shelling of the compiled complex from a satisfying assignment, given
    /// as a file or inline (`"v 1 -2 0"`).
    Certify {
        cnf: PathBuf,
        assignment: String,
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Satisfying assignment from a shelling of the compiled complex.
    Extract {
        cnf: PathBuf,
        shelling: PathBuf,
        #[arg(long)]
        normalize: bool,
    },
    /// Reduced Betti numbers over GF(2), relative when `g` faces are given.
    Homology { complex: PathBuf },
    /// Face numbers, free faces and purity.
    Stats { complex: PathBuf },
}

enum Fail {
    /// Exit 1 with a diagnostic.
    No(String),
    /// Exit 2 with a diagnostic.
    Format(String),
}

type Res = Result<ExitCode, Fail>;

fn format_err(e: impl std::fmt::Display) -> Fail {
    Fail::Format(e.to_string())
}

fn read(p: &Path) -> Result<String, Fail> {
    fs::read_to_string(p).map_err(|e| Fail::Format(format!("{}: {e}", p.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Format(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_complex(p: &Path) -> Result<RelativeComplex, Fail> {
    parse_complex(&read(p)?).map_err(|e| Fail::Format(format!("{}: {e}", p.display())))
}

fn load_instance(p: &Path, norm: bool) -> Result<CnfInstance, Fail> {
    let inst = parse_dimacs(&read(p)?).map_err(|e| Fail::Format(format!("{}: {e}", p.display())))?;
    if norm {
        normalize(&inst).map_err(format_err)
    } else {
        Ok(inst)
    }
}

fn load_reduction(p: &Path, norm: bool) -> Result<(Complex, ReductionMeta), Fail> {
    reduce(&load_instance(p, norm)?).map_err(format_err)
}

/// Order errors that make a file uncheckable are format errors; a refused
/// step is a "no".
fn shelling_fail(e: ShellingError) -> Fail {
    match e {
        ShellingError::NotAPermutation(_) | ShellingError::GammaContainsFacet(_) => format_err(e),
        other => Fail::No(other.to_string()),
    }
}

fn check(complex: &Path, shelling: &Path, relative: bool) -> Res {
    let rc = load_complex(complex)?;
    let rc = if relative { rc } else { RelativeComplex::absolute(rc.delta().clone()) };
    let order = parse_shelling(&read(shelling)?).map_err(format_err)?;
    let s = check_shelling_named(&rc, &order).map_err(shelling_fail)?;
    println!("valid shelling of {} facets, {} homology facets", s.len(), s.homology_facets().len());
    Ok(ExitCode::SUCCESS)
}

fn solve(complex: &Path, budget: Option<u64>, parallel: bool, out: Option<&Path>) -> Res {
    let rc = load_complex(complex)?;
    if let Ok(QuickVerdict::Unshellable(proof)) = prove_unshellable_quick(&rc) {
        println!("# UNSHELLABLE");
        println!(
            "# relative Betti numbers {}; none of {} facets can come last",
            proof.relative_betti, proof.facets_checked
        );
        return Ok(ExitCode::from(1));
    }
    let opts = SearchOptions { budget, parallel, ..SearchOptions::default() };
    let outcome = find_shelling(&rc, &opts).map_err(|e| Fail::No(e.to_string()))?;
    eprintln!("{} placements", outcome.nodes);
    println!("# {}", outcome.verdict.label());
    match outcome.verdict {
        Verdict::Shellable(s) => {
            let text = write_shelling(&s);
            print!("{text}");
            if let Some(p) = out {
                emit(&text, Some(p))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Verdict::Unshellable => Ok(ExitCode::from(1)),
        Verdict::BudgetExhausted => Ok(ExitCode::from(3)),
    }
}

fn gadget(name: &str, out: Option<&Path>) -> Res {
    let g = match name {
        "hemisphere" => hemisphere(),
        "separated-hemisphere" => separated_hemisphere(),
        "tricorne" => tricorne(),
        "blade" => blade(),
        "choice" => choice_gadget("", HemisphereStyle::Compact).map_err(format_err)?,
        "choice-separated" => choice_gadget("", HemisphereStyle::Separated).map_err(format_err)?,
        other => match other.strip_prefix("turbine:").map(str::parse::<usize>) {
            Some(Ok(n)) => turbine(n).map_err(format_err)?,
            _ => return Err(Fail::Format(format!("unknown gadget {other:?}"))),
        },
    };
    emit(&write_gadget(&g), out)?;
    Ok(ExitCode::SUCCESS)
}

fn reduce_cmd(cnf: &Path, norm: bool, meta: Option<&Path>, out: Option<&Path>) -> Res {
    let (c, m) = load_reduction(cnf, norm)?;
    let comments = vec![format!(
        "compiled from {} variables and {} clauses: {} facets",
        m.instance.num_vars,
        m.instance.clauses.len(),
        c.num_facets()
    )];
    emit(&write_complex(&RelativeComplex::absolute(c), &comments), out)?;
    if let Some(p) = meta {
        emit(&write_meta(&m), Some(p))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn certify(cnf: &Path, assignment: &str, norm: bool, out: Option<&Path>) -> Res {
    let (_, m) = load_reduction(cnf, norm)?;
    let p = Path::new(assignment);
    let text = if p.is_file() { read(p)? } else { assignment.to_string() };
    let a = Assignment::parse(&text, m.instance.num_vars).map_err(format_err)?;
    let s = build_shelling(&m, &a).map_err(|e| Fail::No(e.to_string()))?;
    emit(&write_shelling(&s), out)?;
    Ok(ExitCode::SUCCESS)
}

fn extract(cnf: &Path, shelling: &Path, norm: bool) -> Res {
    let (c, m) = load_reduction(cnf, norm)?;
    let order = parse_shelling(&read(shelling)?).map_err(format_err)?;
    let s = check_shelling_named(&RelativeComplex::absolute(c), &order).map_err(shelling_fail)?;
    let a = extract_assignment(&m, &s).map_err(|e| Fail::No(e.to_string()))?;
    println!("{a}");
    Ok(ExitCode::SUCCESS)
}

fn homology(complex: &Path) -> Res {
    let rc = load_complex(complex)?;
    let profile = if rc.gamma().is_void() {
        betti(rc.delta())
    } else {
        relative_betti(&rc).map_err(format_err)?
    };
    println!("{profile}");
    Ok(ExitCode::SUCCESS)
}

fn stats(complex: &Path) -> Res {
    let rc = load_complex(complex)?;
    let c = rc.delta();
    println!("vertices {}", c.num_vertices());
    println!("facets {}", c.num_facets());
    println!("dimension {}", c.dimension());
    println!("pure {}", c.is_pure());
    println!("f-vector {}", c.f_vector());
    if c.is_pure() {
        println!("h-vector {}", c.h_vector());
    }
    println!("euler characteristic {}", c.euler_characteristic());
    let free = c.free_faces();
    println!("free faces {}", free.len());
    for f in free {
        println!("  {}", c.names(&f).join(" "));
    }
    if !rc.gamma().is_void() {
        println!("subcomplex facets {}", rc.gamma().num_facets());
        println!("relative reduced euler characteristic {}", rc.reduced_euler_characteristic());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Check { complex, shelling, relative } => check(complex, shelling, *relative),
        Command::Solve { complex, budget, parallel, out } => {
            solve(complex, *budget, *parallel, out.as_deref())
        }
        Command::Gadget { name, out } => gadget(name, out.as_deref()),
        Command::Reduce { cnf, normalize, meta, out } => {
            reduce_cmd(cnf, *normalize, meta.as_deref(), out.as_deref())
        }
        Command::Certify { cnf, assignment, normalize, out } => {
            certify(cnf, assignment, *normalize, out.as_deref())
        }
        Command::Extract { cnf, shelling, normalize } => extract(cnf, shelling, *normalize),
        Command::Homology { complex } => homology(complex),
        Command::Stats { complex } => stats(complex),
    };
    match res {
        Ok(code) => code,
        Err(Fail::No(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Fail::Format(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
