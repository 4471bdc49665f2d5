mod nspec;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use wordgap::prob::{coset_probability, sample_probability, word_probability, EnumConfig};
use wordgap::psl2::Psl2;
use wordgap::solvable::{
    badness_report, engel_badness, gamma_recursion_check, metab_badness, reduce_to_minimal_verbal,
};
use wordgap::survey::{family, ingest, survey, write_csv, SurveyFilter};
use wordgap::vsmb::{check_word, VsmbConfig, DEFAULT_GROUPS};
use wordgap::{parse, resolve_group, Elem, Error, Word};

/// Named words: comm, engel2, metab, gamma:d (left-normed), gammaR:d
/// (right-nested), power:n. Bracket syntax over x1..x9 with ' for inverse,
/// e.g. `[x1,x2,x2]` or `x1 x2 x1' x2'`.
#[derive(Parser)]
#[command(name = "wordgap", version, about = "Exact word-map probabilities on finite groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Tuple or evaluation budget; accepts integers or forms like 1e7.
    #[arg(long, global = true, value_parser = parse_budget)]
    budget: Option<u128>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (defaults to stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact (or sampled) probability that a word takes a given value.
    Prob {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
        /// Target element index (0 is the identity).
        #[arg(long, default_value_t = 0)]
        target: u32,
        /// Normal subgroup N for a coset probability.
        #[arg(long, requires = "reps")]
        coset: Option<String>,
        /// One coset representative index per variable.
        #[arg(long, requires = "coset")]
        reps: Option<String>,
        /// Monte Carlo estimate from this many samples instead of enumeration.
        #[arg(long, conflicts_with = "coset")]
        sample: Option<u64>,
    },
    /// One probability row per group of a corpus, as CSV.
    Survey {
        /// Directory of group JSON files.
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        corpus: Option<PathBuf>,
        /// Named family: cyclic, dihedral, quaternion, sym, alt, abelian.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 100)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Summary JSON path (defaults to stderr).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Non-constancy of varied coset word maps on small simple groups.
    Vsmb {
        #[arg(long)]
        word: String,
        /// Comma-separated group specs.
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        /// Check every canonical variation.
        #[arg(long)]
        full_stream: bool,
    },
    /// Fixed points of outer automorphisms of PSL(2, q), as CSV.
    Fix {
        #[arg(long)]
        q: usize,
    },
    /// Bad-tuple counts and probability bounds for a solvable group.
    Badness {
        #[arg(long)]
        group: String,
        /// engel2, metab, gamma:d / gammaR:d, or any word.
        #[arg(long)]
        word: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    All,
    Solvable,
    Nonsolvable,
}

fn parse_budget(s: &str) -> Result<u128, String> {
    if let Ok(n) = s.parse::<u128>() {
        return Ok(n);
    }
    let (mant, exp) = s
        .split_once(['e', 'E'])
        .ok_or_else(|| format!("`{s}` is not a budget"))?;
    let mant: u128 = mant.parse().map_err(|_| format!("`{s}` is not a budget"))?;
    let exp: u32 = exp.parse().map_err(|_| format!("`{s}` is not a budget"))?;
    10u128
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(mant))
        .ok_or_else(|| format!("`{s}` overflows"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        _ => 2,
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout()),
    })
}

fn write_json(path: &Option<PathBuf>, value: &impl serde::Serialize) -> Result<(), Error> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn enum_config(g: &Global) -> EnumConfig {
    match g.budget {
        Some(b) => EnumConfig::with_budget(b),
        None => EnumConfig::default(),
    }
}

/// Runs one command and returns its exit code.
fn run(cli: Cli) -> Result<u8, Error> {
    let g = &cli.global;
    let cfg = enum_config(g);
    match cli.cmd {
        Cmd::Prob {
            group,
            word,
            target,
            coset,
            reps,
            sample,
        } => {
            let grp = resolve_group(&group)?;
            let w = parse(&word)?;
            if target as usize >= grp.order() {
                return Err(Error::Contract(format!(
                    "target {target} is not an element of {}",
                    grp.name()
                )));
            }
            let target = Elem(target);
            if let Some(n) = sample {
                write_json(&g.out, &sample_probability(&grp, &w, target, n, g.seed)?)?;
                return Ok(0);
            }
            let p = match (coset, reps) {
                (Some(spec), Some(reps)) => {
                    let n = nspec::parse_normal(&grp, &spec)?;
                    let reps = nspec::parse_elements(&grp, &reps).map_err(Error::Contract)?;
                    coset_probability(&grp, &n, &w, &reps, &cfg)?
                }
                _ => word_probability(&grp, &w, target, &cfg)?,
            };
            write_json(&g.out, &p)?;
            Ok(0)
        }
        Cmd::Survey {
            corpus,
            family: fam,
            word,
            max_order,
            filter,
            summary,
        } => {
            let w = parse(&word)?;
            let groups = match (corpus, fam) {
                (Some(dir), _) => ingest(&dir)?,
                (None, Some(name)) => family(&name, max_order)?,
                (None, None) => unreachable!("clap requires a corpus or a family"),
            };
            let groups: Vec<_> = groups.into_iter().filter(|x| x.order() <= max_order).collect();
            let filter = match filter {
                Filter::All => SurveyFilter::All,
                Filter::Solvable => SurveyFilter::Solvable,
                Filter::Nonsolvable => SurveyFilter::Nonsolvable,
            };
            let s = survey(&groups, &w, &word, filter, &cfg);
            write_csv(&s.rows, output(&g.out)?)?;
            match &summary {
                Some(_) => write_json(&summary, &s.summary)?,
                None => eprintln!("{}", serde_json::to_string_pretty(&s.summary)?),
            }
            for f in &s.summary.failures {
                eprintln!("{}: {}", f.group, f.error);
            }
            Ok(if s.summary.failures.iter().any(|f| !f.budget) {
                2
            } else if s.summary.failures.is_empty() {
                0
            } else {
                3
            })
        }
        Cmd::Vsmb {
            word,
            groups,
            full_stream,
        } => {
            let w = parse(&word)?;
            let groups = groups.unwrap_or_else(|| DEFAULT_GROUPS.iter().map(|s| s.to_string()).collect());
            let mut vcfg = VsmbConfig {
                seed: g.seed,
                full_stream,
                ..VsmbConfig::default()
            };
            if let Some(b) = g.budget {
                vcfg.budget = b;
            }
            write_json(&g.out, &check_word(&w, &groups, &vcfg)?)?;
            Ok(0)
        }
        Cmd::Fix { q } => {
            let s = Psl2::new(q)?;
            let mut w = csv::Writer::from_writer(output(&g.out)?);
            for row in s.fix_report() {
                w.serialize(row)?;
            }
            w.flush()?;
            Ok(0)
        }
        Cmd::Badness { group, word } => {
            let grp = resolve_group(&group)?;
            if let Some(d) = word.strip_prefix("gammaR:").or_else(|| word.strip_prefix("gamma:")) {
                let d: usize = d
                    .parse()
                    .map_err(|_| Error::Contract(format!("`{word}` needs an integer length")))?;
                write_json(&g.out, &gamma_recursion_check(&grp, d, &cfg)?)?;
                return Ok(0);
            }
            let w = parse(&word)?;
            let ctx = reduce_to_minimal_verbal(&grp, &w, &cfg)?;
            let report = badness_report(&ctx, &cfg)?;
            let value = if w == Word::engel2() {
                json!({ "reduction": report, "engel": engel_badness(&ctx, &cfg)? })
            } else if w == Word::metab() {
                json!({ "reduction": report, "metab": metab_badness(&ctx, &cfg)? })
            } else {
                json!({ "reduction": report })
            };
            write_json(&g.out, &value)?;
            Ok(0)
        }
    }
}
