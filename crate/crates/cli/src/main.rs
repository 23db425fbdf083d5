mod corpus;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use omlkit::bsa::{enumerate_bsas, EnumerateOptions};
use omlkit::builders::Family;
use omlkit::format::{oml, poset};
use omlkit::iso::{check_reconstruction, RoundTripOptions, DEFAULT_ISO_BUDGET};
use omlkit::reconstruct::{reconstruct, ReconstructOptions};
use omlkit::verify::verify;
use omlkit::Lattice;

/// Finite orthomodular lattices and their posets of Boolean subalgebras.
#[derive(Parser, Debug)]
#[command(name = "omlkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a lattice and write it as .oml.
    Build(BuildArgs),
    /// Check the lattice axioms of an .oml file.
    Verify { file: PathBuf },
    /// Enumerate the Boolean subalgebras of an .oml lattice into a .poset file.
    Bsas {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Shuffle node ids with this seed and drop dimension annotations.
        #[arg(long, value_name = "SEED")]
        anonymize: Option<u64>,
    },
    /// Rebuild a lattice from a .poset file.
    Reconstruct {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        no_gap_rule: bool,
    },
    /// Enumerate, anonymize, rebuild and compare with the input.
    Roundtrip {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_gap_rule: bool,
    },
    /// Run every lattice of a .corpus file and print a summary table.
    Corpus {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write per-lattice .oml/.poset files and the table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// boolean, mo, bowtie, chain, triangle or benzene.
    #[arg(long, requires_ifs = [("boolean", "n"), ("mo", "n"), ("chain", "n")])]
    family: Option<String>,
    /// Family expression, e.g. `product(boolean(2),mo(2))`.
    #[arg(long)]
    expr: Option<String>,
    /// Greechie diagram file.
    #[arg(long)]
    gd: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    n: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Bad input that is the caller's fault rather than a stage failure.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Enumeration and isomorphism budgets, overridden by `OMLKIT_BUDGET`.
pub(crate) fn budgets() -> Result<(EnumerateOptions, u64)> {
    let mut enumerate = EnumerateOptions::default();
    let mut iso = DEFAULT_ISO_BUDGET;
    if let Ok(raw) = std::env::var("OMLKIT_BUDGET") {
        let v: usize = raw
            .trim()
            .parse()
            .map_err(|_| Usage(format!("OMLKIT_BUDGET must be a positive integer, got {raw:?}")))?;
        enumerate.budget = v;
        iso = v as u64;
    }
    Ok((enumerate, iso))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow!("read: {}: {e}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| anyhow!("write: {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_lattice(path: &Path) -> Result<Lattice> {
    oml::parse(&read(path)?).map_err(|e| anyhow!("parse: {}: {e}", path.display()))
}

fn family(args: &BuildArgs) -> Result<Family> {
    let s = &args.source;
    if let Some(expr) = &s.expr {
        return expr.parse().map_err(|e| Usage(format!("{e}")).into());
    }
    if let Some(gd) = &s.gd {
        return Ok(Family::GreechieFile(gd.display().to_string()));
    }
    let name = s.family.as_deref().expect("clap enforces a source");
    let n = args.n;
    let expr = match (name, n) {
        ("boolean" | "mo" | "chain", Some(n)) => format!("{name}({n})"),
        ("bowtie" | "triangle" | "benzene", None) => name.to_string(),
        ("bowtie" | "triangle" | "benzene", Some(_)) => bail!(Usage(format!("--n does not apply to {name}"))),
        _ => bail!(Usage(format!("unknown family {name:?}"))),
    };
    expr.parse().map_err(|e| Usage(format!("{e}")).into())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build(args) => {
            let l = family(&args)?.build().map_err(|e| anyhow!("build: {e}"))?;
            write_or_print(args.output.as_deref(), &oml::serialize(&l))?;
            Ok(true)
        }
        Command::Verify { file } => {
            let l = oml::parse_unverified(&read(&file)?).map_err(|e| anyhow!("parse: {}: {e}", file.display()))?;
            let report = verify(&l);
            print!("{report}");
            Ok(report.all_passed())
        }
        Command::Bsas { file, output, anonymize } => {
            let l = load_lattice(&file)?;
            let (opts, _) = budgets()?;
            let b = enumerate_bsas(&l, &opts).map_err(|e| anyhow!("enumeration: {e}"))?;
            let text = match anonymize {
                Some(seed) => poset::serialize(&b.anonymize(seed).poset, None),
                None => poset::serialize(b.poset(), Some(&b.dimensions())),
            };
            write_or_print(output.as_deref(), &text)?;
            let mut per_dim = vec![0usize; b.dimensions().iter().max().map_or(0, |d| d + 1)];
            for d in b.dimensions() {
                per_dim[d] += 1;
            }
            let hist: Vec<String> =
                per_dim.iter().enumerate().skip(1).map(|(d, k)| format!("{d}:{k}")).collect();
            let stats = format!(
                "nodes: {}\ncovers: {}\nby dimension: {}\n",
                b.len(),
                b.poset().covers().len(),
                hist.join(" ")
            );
            if output.is_some() {
                print!("{stats}");
            } else {
                eprint!("{stats}");
            }
            Ok(true)
        }
        Command::Reconstruct { file, output, no_gap_rule } => {
            let p = poset::parse(&read(&file)?).map_err(|e| anyhow!("parse: {}: {e}", file.display()))?;
            let opts = ReconstructOptions { gap_rule: !no_gap_rule };
            let r = reconstruct(&p.poset, &opts)
                .map_err(|e| anyhow!("reconstruction failure: {e} (stage {})", e.stage()))?;
            write_or_print(output.as_deref(), &oml::serialize(&r.lattice))?;
            if output.is_some() {
                print!("{r}");
            } else {
                eprint!("{r}");
            }
            Ok(true)
        }
        Command::Roundtrip { file, seed, no_gap_rule } => {
            let l = load_lattice(&file)?;
            let (enumerate, iso_budget) = budgets()?;
            let opts = RoundTripOptions {
                seed,
                enumerate,
                reconstruct: ReconstructOptions { gap_rule: !no_gap_rule },
                iso_budget,
            };
            let report = check_reconstruction(&l, &opts);
            print!("{report}");
            Ok(report.verdict.is_isomorphic())
        }
        Command::Corpus { file, jobs, out } => {
            let spec = corpus::CorpusSpec::parse(&read(&file)?)
                .map_err(|e| Usage(format!("{}: {e}", file.display())))?;
            let out = out.or(spec.output.clone());
            corpus::run(&spec, jobs, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
