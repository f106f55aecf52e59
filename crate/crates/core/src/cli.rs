//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pullback::{expected_dims, Label, Lattice, PullbackEngine};
use crate::rootsys::{CartanType, Family};
use crate::veritab::{closed_form_check, load_cases, VerificationReport, Verifier};
use crate::weyl::ReducedWord;

const G2_LETTERS: &str = "\
G2 words may use letters: s = node 1 (short root), t = node 2 (long root).
Numeric words are 1-based node indices in Bourbaki order, e.g. \"4 3 2 1\".";

#[derive(Debug, Parser)]
#[command(name = "schubert", version, about = "Images of Schubert classes in the mod-p Chow ring of a compact Lie group", after_help = G2_LETTERS)]
pub struct Cli {
    /// Worker threads for relation building (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded dimensions of CH*(G; F_p) from the known presentation, optionally
    /// compared with the computed quotients.
    Dims {
        #[command(flatten)]
        group: GroupArgs,
        /// Also compute these degrees, e.g. `6` or `2-12`.
        #[arg(long)]
        degree: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify π*[Σ_w] for every w in the given degrees.
    Pullback {
        #[command(flatten)]
        group: GroupArgs,
        /// Degree `2k` or an inclusive range such as `2-12`.
        #[arg(long)]
        degree: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Expand μ*[Σ_w] over length-additive factorizations.
    #[command(after_help = G2_LETTERS)]
    Comodule {
        #[command(flatten)]
        group: GroupArgs,
        /// Reduced word, e.g. "1 2 1 2 1 2" or "s t s t s t".
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check computed labels against the stored tables.
    Verify {
        /// Run every stored case and the closed-form checks.
        #[arg(long, conflicts_with = "case")]
        all: bool,
        /// Run only the named cases (file stems).
        #[arg(long)]
        case: Vec<String>,
        /// Directory of fixture files; overrides the built-in tables.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Cartan type, e.g. G2, F4, E6, A3.
    #[arg(long = "type")]
    pub cartan_type: String,
    #[arg(long)]
    pub p: u32,
    /// adjoint | sc
    #[arg(long, default_value = "adjoint")]
    pub lattice: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Whether a command ran to completion with a positive result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

impl GroupArgs {
    fn parse(&self) -> Result<(CartanType, u32, Lattice)> {
        Ok((self.cartan_type.parse()?, self.p, self.lattice.parse()?))
    }
}

/// `"6"` or `"2-12"` into word lengths.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::invalid(format!("bad degree {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (num(a)?, num(b)?),
        None => {
            let d = num(s)?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    if lo % 2 != 0 || hi % 2 != 0 {
        return Err(Error::invalid(format!("degrees are even; got {s:?}")));
    }
    Ok((lo / 2..=hi / 2).collect())
}

/// Parse a word, accepting `s`/`t` letters for G2.
pub fn parse_word(ct: CartanType, s: &str) -> Result<ReducedWord> {
    let letters_only = s
        .chars()
        .all(|c| c == 's' || c == 't' || c == ',' || c.is_whitespace());
    if ct.family() == Family::G && letters_only && !s.trim().is_empty() {
        let w = s
            .chars()
            .filter_map(|c| match c {
                's' => Some(0),
                't' => Some(1),
                _ => None,
            })
            .collect();
        return Ok(ReducedWord(w));
    }
    s.parse()
}

/// One degree as a JSON object; only nonzero classes are listed.
pub fn degree_json(engine: &mut PullbackEngine, k: usize) -> Result<Value> {
    let dim = engine.classify(k)?.dim();
    let labels = engine.labels(k)?.labels.clone();
    let stratum = engine.strata().get(k);
    let classes: Vec<Value> = labels
        .iter()
        .zip(&stratum.words)
        .filter(|(l, _)| !l.is_zero())
        .map(|(l, w)| json!({ "label": l.to_string(), "word": w.one_based() }))
        .collect();
    Ok(json!({
        "cartan_type": engine.cartan_type().to_string(),
        "p": engine.p(),
        "lattice": engine.lattice().to_string(),
        "degree": 2 * k,
        "quotient_dim": dim,
        "classes": classes,
    }))
}

fn degree_text(engine: &mut PullbackEngine, k: usize, out: &mut dyn Write) -> Result<()> {
    let dim = engine.classify(k)?.dim();
    let labels = engine.labels(k)?.labels.clone();
    writeln!(
        out,
        "{} p={} {} degree {}: quotient dim {}",
        engine.cartan_type(),
        engine.p(),
        engine.lattice(),
        2 * k,
        dim
    )?;
    let stratum = engine.strata().get(k);
    for (l, w) in labels.iter().zip(&stratum.words) {
        if !matches!(l, Label::Zero) {
            writeln!(out, "  {l:<10} {w}")?;
        }
    }
    Ok(())
}

fn to_canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string_pretty(v).expect("plain data")
}

/// Run a parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Dims { group, degree, format } => {
            let (ct, p, lattice) = group.parse()?;
            let mut engine = PullbackEngine::new(ct, p, lattice)?;
            let lattice = engine.lattice();
            let expected = expected_dims(ct, p, lattice);
            let mut computed = Vec::new();
            if let Some(d) = degree {
                for k in parse_degrees(d)? {
                    computed.push((2 * k, engine.classify(k)?.dim()));
                }
            }
            let mismatch = computed.iter().any(|&(d, dim)| {
                expected
                    .as_ref()
                    .is_some_and(|e| e.get(&d).copied().unwrap_or(0) != dim)
            });
            match format {
                Format::Json => {
                    let exp = expected.as_ref().map(|e| {
                        e.iter()
                            .map(|(d, n)| (d.to_string(), json!(n)))
                            .collect::<serde_json::Map<_, _>>()
                    });
                    let comp: serde_json::Map<_, _> =
                        computed.iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
                    let v = json!({
                        "cartan_type": ct.to_string(),
                        "p": p,
                        "lattice": lattice.to_string(),
                        "expected": exp,
                        "computed": comp,
                    });
                    writeln!(out, "{}", to_canonical_string(&v))?;
                }
                Format::Text => {
                    match &expected {
                        Some(e) => {
                            let parts: Vec<String> = e.iter().map(|(d, n)| format!("{d}:{n}")).collect();
                            writeln!(out, "{ct} p={p} {lattice} expected {{{}}}", parts.join(", "))?
                        }
                        None => writeln!(out, "{ct} p={p} {lattice} expected unknown")?,
                    }
                    for (d, n) in &computed {
                        writeln!(out, "  degree {d}: computed {n}")?;
                    }
                }
            }
            Ok(if mismatch { Outcome::Failure } else { Outcome::Success })
        }
        Command::Pullback { group, degree, format } => {
            let (ct, p, lattice) = group.parse()?;
            let degrees = parse_degrees(degree)?;
            let mut engine = PullbackEngine::new(ct, p, lattice)?;
            match format {
                Format::Json => {
                    let mut items = degrees
                        .iter()
                        .map(|&k| degree_json(&mut engine, k))
                        .collect::<Result<Vec<_>>>()?;
                    let v = if items.len() == 1 { items.remove(0) } else { Value::Array(items) };
                    writeln!(out, "{}", to_canonical_string(&v))?;
                }
                Format::Text => {
                    for k in degrees {
                        degree_text(&mut engine, k, out)?;
                    }
                }
            }
            Ok(Outcome::Success)
        }
        Command::Comodule { group, word, format } => {
            let (ct, p, lattice) = group.parse()?;
            let mut engine = PullbackEngine::new(ct, p, lattice)?;
            let word = parse_word(ct, word)?;
            let w = engine.parse_word(word.letters())?;
            if engine.group().length(&w) != word.len() {
                return Err(Error::invalid(format!("{word} is not a reduced word")));
            }
            let ex = engine.comodule_expansion(&w)?;
            match format {
                Format::Json => writeln!(out, "{}", to_canonical_string(&ex.to_json()))?,
                Format::Text => writeln!(out, "{ex}")?,
            }
            Ok(Outcome::Success)
        }
        Command::Verify { all, case, fixtures, format } => {
            if !*all && case.is_empty() {
                return Err(Error::invalid("verify needs --all or --case"));
            }
            let cases = load_cases(fixtures.as_deref())?;
            let selected: Vec<_> = if *all {
                cases
            } else {
                for c in case {
                    if !cases.iter().any(|x| &x.id == c) {
                        return Err(Error::invalid(format!("no case named {c:?}")));
                    }
                }
                cases.into_iter().filter(|x| case.contains(&x.id)).collect()
            };
            let mut verifier = Verifier::new();
            let mut reports: Vec<VerificationReport> = selected.iter().map(|c| verifier.run(c)).collect();
            if *all {
                for n in 2..=6 {
                    for p in [2, 3, 5] {
                        reports.push(closed_form_check(Family::A, n, p));
                    }
                }
                for n in 2..=4 {
                    reports.push(closed_form_check(Family::C, n, 2));
                }
            }
            let ok = reports.iter().all(|r| r.passed);
            match format {
                Format::Json => {
                    let v = Value::Array(reports.iter().map(|r| r.to_json()).collect());
                    writeln!(out, "{}", to_canonical_string(&v))?;
                }
                Format::Text => {
                    for r in &reports {
                        writeln!(out, "{r}")?;
                    }
                }
            }
            Ok(if ok { Outcome::Success } else { Outcome::Failure })
        }
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Failure) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::NotARoot(_) | Error::Fixture { .. } => 2,
                _ => 1,
            }
        }
    }
}
