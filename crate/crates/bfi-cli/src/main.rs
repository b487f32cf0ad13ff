//! Command-line front end: translate formulas, run single checks, sweep a
//! corpus, inspect models, and print clause-by-clause traces.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error,
//! 3 domain too large.

use anyhow::Context;
use bfi_core::checks::{find_check, registry, run_corpus, Check, CorpusEntry, Outcome};
use bfi_core::model::{check_model_axioms, model_from_json, FiniteModel};
use bfi_core::printer::{format_formula, format_type, Style};
use bfi_core::sexpr::{parse_formulas, ConstSignature};
use bfi_core::syntax::Formula;
use bfi_core::translate::find_translator;
use bfi_core::typing::well_typed;
use clap::{ArgGroup, Parser, Subcommand};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bfi",
    version,
    about = "Bounded functional interpretations over finite type structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate formulas (K, B, U, or the composition K-then-B)
    #[command(group(ArgGroup::new("which").required(true).args(["k", "b", "u", "kb"])))]
    Translate {
        /// Krivine negative translation A^K
        #[arg(long)]
        k: bool,
        /// Bounded functional interpretation A^B
        #[arg(long)]
        b: bool,
        /// Shoenfield-like bounded functional interpretation A^U
        #[arg(long)]
        u: bool,
        /// Composition (A^K)^B
        #[arg(long)]
        kb: bool,
        /// Also print the outer/inner witness tuple signatures
        #[arg(long)]
        show_tuples: bool,
        /// Output style: sexpr, unicode or latex
        #[arg(long, default_value = "sexpr")]
        style: String,
        /// Model file providing extra constants for parsing
        #[arg(long)]
        model: Option<PathBuf>,
        /// Formula file, or `-` for standard input
        input: String,
    },
    /// Run one check on every formula in a file
    #[command(group(ArgGroup::new("which").required(true)
        .args(["eq3", "eq4", "eq5", "mono", "bounded", "types", "characterization"])))]
    Check {
        #[arg(long)]
        eq3: bool,
        #[arg(long)]
        eq4: bool,
        #[arg(long)]
        eq5: bool,
        /// Monotonicity of A_U on its second tuple
        #[arg(long)]
        mono: bool,
        /// Matrices are bounded formulas
        #[arg(long)]
        bounded: bool,
        /// Tuple type agreement between U and K-then-B
        #[arg(long)]
        types: bool,
        /// Characterization: A and A^K evaluate alike
        #[arg(long = "char")]
        characterization: bool,
        /// Model file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// Report as JSON
        #[arg(long)]
        json: bool,
        /// Formula file, or `-` for standard input
        input: String,
    },
    /// Run checks over a directory of formula files (*.fml)
    Corpus {
        /// Model file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated check names (default: all)
        #[arg(long)]
        checks: Option<String>,
        /// Report as JSON
        #[arg(long)]
        json: bool,
        /// Zero the timing fields for byte-reproducible reports
        #[arg(long)]
        stable: bool,
        /// Directory of formula files
        dir: PathBuf,
    },
    /// Print domain sizes and verify the framework axioms
    ModelInfo {
        /// Model file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// Check types up to this level
        #[arg(long, default_value_t = 2)]
        max_level: u32,
        /// Report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Show the clause-by-clause derivation of a translation
    #[command(group(ArgGroup::new("which").required(true).args(["k", "b", "u"])))]
    Explain {
        #[arg(long)]
        k: bool,
        #[arg(long)]
        b: bool,
        #[arg(long)]
        u: bool,
        /// Model file providing extra constants for parsing
        #[arg(long)]
        model: Option<PathBuf>,
        /// Formula file, or `-` for standard input
        input: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_input(input: &str) -> anyhow::Result<String> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading `{input}`"))
    }
}

fn load_model(path: &Path) -> anyhow::Result<FiniteModel> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading `{}`", path.display()))?;
    model_from_json(&text).with_context(|| format!("loading model `{}`", path.display()))
}

fn signature_for(model: Option<&FiniteModel>) -> ConstSignature {
    let mut sig = ConstSignature::builtin();
    if let Some(m) = model {
        for (name, c) in m.constants() {
            sig = sig.with(name.clone(), c.ty.clone());
        }
    }
    sig
}

/// Parse, type-check and close-check the formulas of one input.
fn load_formulas(text: &str, sig: &ConstSignature) -> anyhow::Result<Vec<Formula>> {
    let formulas = parse_formulas(text, sig).map_err(|e| anyhow::anyhow!("parse error: {e}"))?;
    for f in &formulas {
        let report = well_typed(f);
        if !report.is_ok() {
            anyhow::bail!(
                "ill-typed formula {}: {report}",
                format_formula(f, Style::Sexpr)
            );
        }
    }
    Ok(formulas)
}

fn describe_outcome(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Pass => "pass".to_string(),
        Outcome::Fail { witness, detail } => {
            let mut out = "fail".to_string();
            if let Some(d) = detail {
                out.push_str(&format!(" ({d})"));
            }
            if !witness.is_empty() {
                let bindings: Vec<String> = witness
                    .iter()
                    .map(|(v, e)| format!("{} = {}", v.name, e.to_json()))
                    .collect();
                out.push_str(&format!("; witness: {}", bindings.join(", ")));
            }
            out
        }
        Outcome::Skip { reason } => format!("skip ({reason})"),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Translate {
            k,
            b,
            u,
            kb,
            show_tuples,
            style,
            model,
            input,
        } => {
            let style =
                Style::parse(&style).ok_or_else(|| anyhow::anyhow!("unknown style `{style}`"))?;
            let name = which_name(&[(k, "k"), (b, "b"), (u, "u"), (kb, "kb")]);
            let translator = find_translator(name).expect("registered");
            let model = model.as_deref().map(load_model).transpose()?;
            let formulas = load_formulas(&read_input(&input)?, &signature_for(model.as_ref()))?;
            for f in formulas {
                let translated = translator
                    .translate(&f)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                println!("{}", format_formula(&translated.formula, style));
                if show_tuples {
                    if let Some(r) = &translated.result {
                        let fmt = |tys: &[bfi_core::syntax::FinType]| {
                            tys.iter()
                                .map(|t| format_type(t, style))
                                .collect::<Vec<_>>()
                                .join(", ")
                        };
                        let (outer, inner) = r.signature();
                        println!("outer: ({})", fmt(&outer));
                        println!("inner: ({})", fmt(&inner));
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            eq3,
            eq4,
            eq5,
            mono,
            bounded,
            types,
            characterization,
            model,
            json,
            input,
        } => {
            let name = which_name(&[
                (eq3, "eq3"),
                (eq4, "eq4"),
                (eq5, "eq5"),
                (mono, "mono"),
                (bounded, "bounded"),
                (types, "types"),
                (characterization, "char"),
            ]);
            let check = find_check(name).expect("registered");
            let model = load_model(&model)?;
            let id_stem = stem_of(&input);
            let formulas = load_formulas(&read_input(&input)?, &signature_for(Some(&model)))?;
            let entries = number_entries(&id_stem, formulas);
            let report = run_corpus(&entries, std::slice::from_ref(&model), &[check]);
            if json {
                println!("{}", report.to_json(false));
            } else {
                for r in &report.reports {
                    println!(
                        "{} {}: {}",
                        r.formula,
                        r.check,
                        describe_outcome(&r.outcome)
                    );
                }
            }
            // a failure outranks a skip when one file holds both
            let exit = if report.reports.iter().any(|r| r.outcome.is_fail()) {
                EXIT_CHECK_FAILED
            } else if report.reports.iter().any(|r| r.outcome.is_skip()) {
                EXIT_TOO_LARGE
            } else {
                EXIT_OK
            };
            Ok(exit)
        }
        Command::Corpus {
            model,
            checks,
            json,
            stable,
            dir,
        } => {
            let model = load_model(&model)?;
            let selected: Vec<&dyn Check> = match checks {
                None => registry().to_vec(),
                Some(list) => list
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|name| {
                        find_check(name).ok_or_else(|| anyhow::anyhow!("unknown check `{name}`"))
                    })
                    .collect::<anyhow::Result<Vec<_>>>()?,
            };
            let entries = load_corpus_dir(&dir, &signature_for(Some(&model)))?;
            let report = run_corpus(&entries, std::slice::from_ref(&model), &selected);
            if json {
                println!("{}", report.to_json(stable));
            } else {
                for r in &report.reports {
                    println!(
                        "{}  {}  N={} cap={}  {}",
                        r.formula,
                        r.check,
                        r.model.base_size,
                        r.model.size_cap,
                        describe_outcome(&r.outcome)
                    );
                }
                let s = &report.summary;
                println!(
                    "total {} | pass {} | fail {} | skip {}",
                    s.total, s.pass, s.fail, s.skip
                );
            }
            Ok(if report.ok() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::ModelInfo {
            model,
            max_level,
            json,
        } => {
            let m = load_model(&model)?;
            let types = bfi_core::model::admitted_types(&m, max_level);
            let report = check_model_axioms(&m, max_level);
            if json {
                let type_rows: Vec<serde_json::Value> = types
                    .iter()
                    .map(|ty| {
                        serde_json::json!({
                            "type": ty.to_string(),
                            "cardinality": m.cardinality(ty),
                            "self_majorizing": m.self_majorizing(ty).map(|v| v.len()).ok(),
                        })
                    })
                    .collect();
                let axiom_rows: Vec<serde_json::Value> = report
                    .entries
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "type": e.ty.to_string(),
                            "axiom": e.axiom,
                            "outcome": e.outcome.to_string(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "base_size": m.base_size(),
                        "size_cap": m.size_cap(),
                        "types": type_rows,
                        "axioms": axiom_rows,
                    })
                );
            } else {
                println!("base {{0..{}}}, cap {}", m.base_size(), m.size_cap());
                for ty in &types {
                    let card = m
                        .cardinality(ty)
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "overflow".to_string());
                    let self_maj = m
                        .self_majorizing(ty)
                        .map(|v| v.len().to_string())
                        .unwrap_or_else(|_| "-".to_string());
                    println!(
                        "type {}: {} elements, {} self-majorizing",
                        format_type(ty, Style::Unicode),
                        card,
                        self_maj
                    );
                }
                for e in &report.entries {
                    println!(
                        "axiom [{}] at {}: {}",
                        e.axiom,
                        format_type(&e.ty, Style::Unicode),
                        e.outcome
                    );
                }
            }
            Ok(if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Explain {
            k,
            b,
            u,
            model,
            input,
        } => {
            let name = which_name(&[(k, "k"), (b, "b"), (u, "u")]);
            let translator = find_translator(name).expect("registered");
            let model = model.as_deref().map(load_model).transpose()?;
            let formulas = load_formulas(&read_input(&input)?, &signature_for(model.as_ref()))?;
            let mut first = true;
            for f in formulas {
                if !first {
                    println!();
                }
                first = false;
                println!("input: {}", format_formula(&f, Style::Unicode));
                let lines = translator.explain(&f).map_err(|e| anyhow::anyhow!("{e}"))?;
                for line in lines {
                    println!("{line}");
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn which_name<'a>(flags: &[(bool, &'a str)]) -> &'a str {
    flags
        .iter()
        .find(|(set, _)| *set)
        .map(|(_, name)| *name)
        .expect("clap group guarantees one flag")
}

fn stem_of(input: &str) -> String {
    if input == "-" {
        "stdin".to_string()
    } else {
        Path::new(input)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".to_string())
    }
}

fn number_entries(stem: &str, formulas: Vec<Formula>) -> Vec<CorpusEntry> {
    formulas
        .into_iter()
        .enumerate()
        .map(|(i, formula)| CorpusEntry {
            id: format!("{stem}#{:03}", i + 1),
            formula,
        })
        .collect()
}

/// Load every `*.fml` file of a directory (sorted by name), requiring
/// well-typed closed formulas.
fn load_corpus_dir(dir: &Path, sig: &ConstSignature) -> anyhow::Result<Vec<CorpusEntry>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading corpus directory `{}`", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "fml"))
        .collect();
    files.sort();
    if files.is_empty() {
        anyhow::bail!("no .fml files in `{}`", dir.display());
    }
    let mut entries = Vec::new();
    for file in files {
        let stem = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = std::fs::read_to_string(&file)
            .with_context(|| format!("reading `{}`", file.display()))?;
        let formulas = load_formulas(&text, sig)
            .with_context(|| format!("in corpus file `{}`", file.display()))?;
        for f in &formulas {
            if !f.free_vars().is_empty() {
                anyhow::bail!(
                    "corpus formula must be closed: {} in `{}`",
                    format_formula(f, Style::Sexpr),
                    file.display()
                );
            }
        }
        entries.extend(number_entries(&stem, formulas));
    }
    Ok(entries)
}
