use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use geoconj::acceptance;
use geoconj::conjugates::{alpha, alpha_powers, dgcp, gcp};
use geoconj::free_subsets::benois_saturate;
use geoconj::oracles::dgcp_witness_search;
use geoconj::vfree::{
    build_transducer, geo_of_rational, Geometry, Rational, VfConfig, VfStructure,
};
use geoconj::words::free_reduce;
use geoconj::{Alphabet, Cfg, Error, Nfa};

const EXIT_NO: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VALIDATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "geoconj",
    version,
    about = "Conjugacy and geodesics for rational subsets of (virtually) free groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format for automata.
    #[arg(long, global = true, value_enum, default_value_t = Format::Txt)]
    format: Format,
    /// Write the result to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = acceptance::SEED)]
    seed: u64,
    /// Node budget for breadth-first searches in virtually free groups.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Txt,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Free reduction of a word.
    Reduce {
        #[arg(long)]
        word: String,
    },
    /// Automaton for the reduced words of a rational subset.
    Benois {
        #[arg(long)]
        nfa: PathBuf,
    },
    /// Grammar for the conjugates u⁻¹vu with u in L and v in K.
    Alpha {
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        l: PathBuf,
    },
    /// Grammar for the conjugates of K by the powers of U.
    Powers {
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        u: String,
    },
    /// Is some element of K1 conjugate to some element of K2 by an element of K0?
    Dgcp {
        #[arg(long)]
        k0: PathBuf,
        #[arg(long)]
        k1: PathBuf,
        #[arg(long)]
        k2: PathBuf,
        /// On YES, search for a witness of length ≤ BOUND.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Is X conjugate to an element of K by an element of L0?
    Gcp {
        #[arg(long)]
        x: String,
        #[arg(long)]
        k: PathBuf,
        #[arg(long)]
        l0: PathBuf,
    },
    /// Normal form of a word in a virtually free group.
    Nf {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Automaton for the geodesics of a rational subset.
    Geo {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        k: PathBuf,
        #[command(flatten)]
        params: GeoParams,
    },
    /// The geodesic transducer of a virtually free group.
    Transducer {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        params: GeoParams,
    },
    /// Words of length ≤ N of an automaton or grammar, in shortlex order.
    Enumerate {
        #[arg(long, conflicts_with = "cfg", required_unless_present = "cfg")]
        nfa: Option<PathBuf>,
        #[arg(long)]
        cfg: Option<PathBuf>,
        #[arg(long)]
        max_len: usize,
    },
    /// Run a test suite.
    Check {
        #[arg(long, value_parser = ["acceptance"])]
        suite: String,
        /// Run only this criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Args)]
struct GeoParams {
    /// Configuration file with ftc, cone_radius, lambda, epsilon and budget.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    ftc: Option<usize>,
    #[arg(long)]
    cone_radius: Option<usize>,
    /// Radius up to which the fellow-traveler constant is checked (0 skips the check).
    #[arg(long, default_value_t = 4)]
    validate_radius: usize,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Budget { .. }) => EXIT_BUDGET,
                Some(Error::Validation(_)) => EXIT_VALIDATION,
                _ => EXIT_INPUT,
            };
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_nfa(path: &Path) -> Result<Nfa> {
    Nfa::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_group(path: &Path) -> Result<VfStructure> {
    VfStructure::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(global: &Global, text: &str) -> Result<()> {
    match &global.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_nfa(global: &Global, n: &Nfa) -> Result<()> {
    match global.format {
        Format::Txt => emit(global, &n.to_text()),
        Format::Dot => emit(global, &n.to_dot()),
    }
}

fn emit_cfg(global: &Global, g: &Cfg) -> Result<()> {
    if global.format == Format::Dot {
        log::warn!("grammars have no dot form, writing text");
    }
    emit(global, &g.to_text())
}

fn decision(yes: bool) -> u8 {
    println!("{}", if yes { "YES" } else { "NO" });
    if yes {
        0
    } else {
        EXIT_NO
    }
}

/// The generators named by a word: its letters, lowercased.
fn word_alphabet(word: &str) -> Result<Alphabet> {
    let mut gens: Vec<char> = word
        .chars()
        .filter(|c| !matches!(c, '1' | 'ε'))
        .map(|c| c.to_ascii_lowercase())
        .collect();
    gens.sort_unstable();
    gens.dedup();
    Ok(Alphabet::from_chars(gens)?)
}

fn geo_config(global: &Global, params: &GeoParams) -> Result<VfConfig> {
    let mut cfg = match &params.config {
        Some(path) => {
            VfConfig::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?
        }
        None => VfConfig::default(),
    };
    if let Some(k) = params.ftc {
        cfg.ftc = k;
    }
    if let Some(r) = params.cone_radius {
        cfg.cone_radius = r;
    }
    if let Some(b) = global.budget {
        cfg.budget = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn validate_ftc(s: &VfStructure, cfg: &VfConfig, radius: usize) -> Result<()> {
    if radius == 0 {
        return Ok(());
    }
    let geo = Geometry::standard(s, cfg.budget);
    let lambda = Rational::from_integer(s.constant_c() as i64);
    let report =
        geo.fellow_traveler_validate(lambda, Rational::from_integer(0), cfg.ftc, radius)?;
    if !report.ok() {
        return Err(Error::Validation(format!(
            "fellow-traveler constant {} is too small, at least {} is needed",
            cfg.ftc, report.minimal_k
        ))
        .into());
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8> {
    let global = &cli.global;
    match &cli.command {
        Command::Reduce { word } => {
            let a = word_alphabet(word)?;
            let w = a.parse_word(word)?;
            emit(global, &format!("{}\n", a.render(&free_reduce(&w))))?;
        }
        Command::Benois { nfa } => emit_nfa(global, &benois_saturate(&load_nfa(nfa)?))?,
        Command::Alpha { k, l } => emit_cfg(global, &alpha(&load_nfa(k)?, &load_nfa(l)?)?.grammar)?,
        Command::Powers { k, u } => {
            let k = load_nfa(k)?;
            let u = k.alphabet().parse_word(u)?;
            emit_cfg(global, &alpha_powers(&k, &u)?)?;
        }
        Command::Dgcp {
            k0,
            k1,
            k2,
            witness,
            bound,
        } => {
            let (k0, k1, k2) = (load_nfa(k0)?, load_nfa(k1)?, load_nfa(k2)?);
            let yes = dgcp(&k0, &k1, &k2)?;
            let code = decision(yes);
            if yes && *witness {
                match dgcp_witness_search(&k0, &k1, &k2, *bound) {
                    Some(w) => {
                        let a = k0.alphabet();
                        println!(
                            "witness: u = {}, x = {}, y = {}",
                            a.render(&w.u),
                            a.render(&w.x),
                            a.render(&w.y)
                        );
                    }
                    None => println!("no witness of length ≤ {bound}"),
                }
            }
            return Ok(code);
        }
        Command::Gcp { x, k, l0 } => {
            let (k, l0) = (load_nfa(k)?, load_nfa(l0)?);
            let x = k.alphabet().parse_word(x)?;
            return Ok(decision(gcp(&x, &k, &l0)?));
        }
        Command::Nf { group, word } => {
            let s = load_group(group)?;
            let w = s.generators().parse_word(word)?;
            emit(global, &format!("{}\n", s.render_nf(&s.normal_form(&w)?)))?;
        }
        Command::Geo { group, k, params } => {
            let s = load_group(group)?;
            let cfg = geo_config(global, params)?;
            validate_ftc(&s, &cfg, params.validate_radius)?;
            let k = load_nfa(k)?.with_alphabet(s.generators())?;
            emit_nfa(global, &geo_of_rational(&s, &k, &cfg)?)?;
        }
        Command::Transducer { group, params } => {
            let s = load_group(group)?;
            let cfg = geo_config(global, params)?;
            validate_ftc(&s, &cfg, params.validate_radius)?;
            let geo = Geometry::standard(&s, cfg.budget);
            emit(global, &build_transducer(&geo, &cfg)?.to_text())?;
        }
        Command::Enumerate { nfa, cfg, max_len } => {
            let (words, alphabet) = match (nfa, cfg) {
                (Some(path), _) => {
                    let n = load_nfa(path)?;
                    (n.enumerate_terms(*max_len), n.alphabet().clone())
                }
                (None, Some(path)) => {
                    let g = Cfg::parse(&read(path)?)
                        .with_context(|| format!("parsing {}", path.display()))?;
                    (g.enumerate_terms(*max_len), g.alphabet().clone())
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let text: String = words
                .iter()
                .map(|w| format!("{}\n", alphabet.render_terms(w)))
                .collect();
            emit(global, &text)?;
        }
        Command::Check { suite: _, only } => {
            let outcomes = match only {
                Some(id) => acceptance::run(*id, global.seed).into_iter().collect(),
                None => acceptance::run_all(global.seed),
            };
            anyhow::ensure!(!outcomes.is_empty(), "no such criterion");
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&format!("{o}\n"));
            }
            emit(global, &text)?;
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(EXIT_VALIDATION);
            }
        }
    }
    Ok(0)
}
