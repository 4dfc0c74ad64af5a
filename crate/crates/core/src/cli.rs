//! The `grprop` command line.
//!
//! Machine-readable JSON goes to stdout and a short summary to stderr.
//! Exit codes: 0 success, 1 invalid input, 2 a bound was exhausted, 3 a
//! property was violated.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::fixtures::{Corpus, MorphismSpec};
use crate::free::{beta_decomposition_check, left_adjoint_truncated, FreeBounds, GeneratorFamily, SchemePair};
use crate::graphs::json::GraphJson;
use crate::graphs::{canon::code_of, enumerate_graphs, ArityBound, Biprofile, ColorSet, Scheme};
use crate::lifting::{classify_morphism, rlp_generators, Flag, LiftBounds};
use crate::properads::{PropMorphism, PropSpec};
use crate::selftest::{self, Scale, CRITERIA};
use crate::substitution::{check_closure, ClosureBounds};

#[derive(Parser, Debug)]
#[command(name = "grprop", version, about = "Graphs, generalized props and lifting checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Largest number of vertices of enumerated or outer graphs.
    #[arg(long, global = true)]
    pub bound_vertices: Option<usize>,
    /// Simplicial degree of decorations and generated compositions.
    #[arg(long, global = true)]
    pub bound_dim: Option<usize>,
    /// Largest simplex dimension of horns and boundaries in lifting checks.
    #[arg(long, global = true)]
    pub bound_horn: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// JSON on stdout, summary on stderr.
    #[default]
    Json,
    /// Summary on stdout only.
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical code, biprofile and Betti numbers of a graph file.
    Canonicalize { path: PathBuf },
    /// Isomorphism classes of graphs with a given biprofile.
    Enumerate {
        #[arg(long, default_value = "prop")]
        scheme: String,
        /// Biprofile such as `(0,0;1)`.
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 1)]
        colors: u32,
        /// Vertex arity bound `inputs,outputs`.
        #[arg(long, default_value = "2,2")]
        arity: String,
        /// Also check that substituting scheme members stays in the scheme,
        /// sampling with the seed when a domain is too large.
        #[arg(long)]
        closure: bool,
    },
    /// One entry of the truncated left adjoint of a prop file.
    Free {
        /// Prop file, or `corpus:NAME`.
        prop: String,
        /// `di-c` or `c-prop`.
        #[arg(long, default_value = "c-prop")]
        pair: String,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value = "2,2")]
        arity: String,
    },
    /// Entrywise and componentwise classification of a morphism.
    Classify {
        /// Morphism file, or `corpus:NAME`.
        morphism: String,
    },
    /// Right lifting of a morphism against a generating family.
    Lift {
        /// Morphism file, or `corpus:NAME`.
        morphism: String,
        #[arg(long, value_enum, default_value_t = Family::Horns)]
        family: Family,
    },
    /// Runs the property suite.
    Selftest {
        /// Small domains for a fast run.
        #[arg(long)]
        quick: bool,
        /// Only these criteria (1-based).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Horns,
    Boundaries,
    CategoryCofibrations,
    CategoryHorns,
}

/// Settings after merging the config file with the flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Settings {
    pub bound_vertices: usize,
    pub bound_dim: usize,
    pub bound_horn: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { bound_vertices: 3, bound_dim: 0, bound_horn: 2, seed: 0, format: Format::Json }
    }
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, Failure> {
        let mut s = match &args.config {
            Some(path) => serde_json::from_str(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?,
            None => Settings::default(),
        };
        if let Some(v) = args.bound_vertices {
            s.bound_vertices = v;
        }
        if let Some(v) = args.bound_dim {
            s.bound_dim = v;
        }
        if let Some(v) = args.bound_horn {
            s.bound_horn = v;
        }
        if let Some(v) = args.seed {
            s.seed = v;
        }
        if let Some(v) = args.format {
            s.format = v;
        }
        Ok(s)
    }

    fn lift(&self) -> LiftBounds {
        LiftBounds { p_max: self.bound_horn, ..LiftBounds::default() }
    }
}

/// A command outcome other than success.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Display) -> Self {
        Failure { code: 1, message: message.to_string() }
    }
}

/// What a command prints and how it exits.
pub struct Report {
    pub json: Value,
    pub summary: String,
    pub code: u8,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn parse_arity(s: &str) -> Result<ArityBound, Failure> {
    let (i, o) = s.split_once(',').ok_or_else(|| Failure::invalid(format!("arity {s} is not `inputs,outputs`")))?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|_| Failure::invalid(format!("arity {s}")));
    Ok(ArityBound::new(n(i)?, n(o)?))
}

fn load_morphism(arg: &str) -> Result<PropMorphism, Failure> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        let corpus = Corpus::standard().map_err(Failure::invalid)?;
        return corpus
            .morphisms
            .iter()
            .find(|m| m.name() == name)
            .cloned()
            .ok_or_else(|| Failure::invalid(format!("no corpus morphism {name}")));
    }
    let spec: MorphismSpec = parse_json(Path::new(arg))?;
    spec.build().map_err(Failure::invalid)
}

fn load_prop(arg: &str) -> Result<std::sync::Arc<crate::properads::GrProp>, Failure> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        let corpus = Corpus::standard().map_err(Failure::invalid)?;
        return corpus.props.get(name).cloned().ok_or_else(|| Failure::invalid(format!("no corpus prop {name}")));
    }
    let spec: PropSpec = parse_json(Path::new(arg))?;
    Ok(std::sync::Arc::new(spec.build().map_err(Failure::invalid)?))
}

pub fn execute(command: &Command, s: &Settings) -> Result<Report, Failure> {
    match command {
        Command::Canonicalize { path } => {
            let g = parse_json::<GraphJson>(path)?.to_graph().map_err(Failure::invalid)?;
            let report = g.validate();
            if !report.is_valid() {
                return Err(Failure::invalid(format!("invalid graph: {:?}", report)));
            }
            let code = code_of(&g);
            let (b0, b1) = g.betti();
            Ok(Report {
                json: json!({ "code": code.to_string(), "biprofile": g.biprofile().to_string(),
                              "vertices": g.vertex_count(), "betti": [b0, b1] }),
                summary: format!("{} vertices, biprofile {}, betti ({b0}, {b1})", g.vertex_count(), g.biprofile()),
                code: 0,
            })
        }
        Command::Enumerate { scheme, profile, colors, arity, closure } => {
            let scheme = Scheme::parse(scheme).ok_or_else(|| Failure::invalid(format!("unknown scheme {scheme}")))?;
            let bp = Biprofile::parse(profile).map_err(Failure::invalid)?;
            let cs = ColorSet::range(*colors);
            if let Some(c) = bp.colors().find(|c| !cs.contains(*c)) {
                return Err(Failure::invalid(format!("color {c} outside {colors} colors")));
            }
            let arity = parse_arity(arity)?;
            let codes = enumerate_graphs(scheme, &cs, &bp, s.bound_vertices, arity);
            let rows: Vec<Value> = codes
                .iter()
                .map(|c| {
                    let g = c.decode().expect("enumerated codes decode");
                    json!({ "code": c.to_string(), "vertices": g.vertex_count(), "betti": g.betti() })
                })
                .collect();
            let mut summary = format!("{} classes in {scheme} on {bp} with at most {} vertices", rows.len(), s.bound_vertices);
            let report = closure.then(|| {
                let bounds = ClosureBounds {
                    colors: *colors,
                    outer_vertices: s.bound_vertices,
                    arity,
                    seed: s.seed,
                    ..ClosureBounds::default()
                };
                check_closure(scheme, &bounds)
            });
            if let Some(r) = &report {
                summary.push_str(&format!(
                    "; {} substitutions, {} leave the scheme",
                    r.substitutions_checked,
                    r.counterexamples.len()
                ));
            }
            Ok(Report {
                summary,
                code: if report.as_ref().is_some_and(|r| !r.is_clean()) { 3 } else { 0 },
                json: json!({ "scheme": scheme, "biprofile": bp.to_string(), "classes": rows.len(), "graphs": rows,
                              "closure": report }),
            })
        }
        Command::Free { prop, pair, profile, arity } => {
            let p = load_prop(prop)?;
            let pair = SchemePair::parse(pair).ok_or_else(|| Failure::invalid(format!("unknown pair {pair}")))?;
            let bp = Biprofile::parse(profile).map_err(Failure::invalid)?;
            let bounds = FreeBounds { degree: s.bound_dim, ..FreeBounds::new(s.bound_vertices, parse_arity(arity)?) };
            let fe = left_adjoint_truncated(&p, pair, &bp, bounds).map_err(free_failure)?;
            let check = beta_decomposition_check(&p, pair, &bp, bounds).ok();
            let violated = check.as_ref().is_some_and(|r| !r.holds());
            Ok(Report {
                summary: format!(
                    "{} elements in {} classes; strata {:?}{}",
                    fe.elements.len(),
                    fe.class_count(),
                    fe.strata(),
                    if violated { "; bottom stratum check FAILED" } else { "" }
                ),
                json: json!({ "pair": pair, "biprofile": bp.to_string(), "bounds": bounds,
                              "elements": fe.elements.len(), "classes": fe.classes, "strata": fe.strata(),
                              "bottom_stratum": check }),
                code: if violated { 3 } else { 0 },
            })
        }
        Command::Classify { morphism } => {
            let f = load_morphism(morphism)?;
            let c = classify_morphism(&f, s.lift()).map_err(Failure::invalid)?;
            Ok(Report {
                summary: format!("{}: W1 {} W2 {} F1 {} F2 {}", f.name(), c.w1.flag, c.w2.flag, c.f1.flag, c.f2.flag),
                code: if c.has_no() { 3 } else { 0 },
                json: serde_json::to_value(&c).expect("serializable"),
            })
        }
        Command::Lift { morphism, family } => {
            let f = load_morphism(morphism)?;
            let arity = f.dom().arity();
            let p = s.bound_horn;
            let fam = match family {
                Family::Horns => GeneratorFamily::horns(arity, p),
                Family::Boundaries => GeneratorFamily::boundaries(arity, p),
                Family::CategoryCofibrations => GeneratorFamily::category_cofibrations(p),
                Family::CategoryHorns => GeneratorFamily::category_horns(p),
            }
            .map_err(Failure::invalid)?;
            let v = rlp_generators(&f, &fam, s.lift()).map_err(Failure::invalid)?;
            Ok(Report {
                summary: format!("{}: {} against {} generators ({} squares)", f.name(), v.verdict, v.generators, v.squares),
                code: if v.verdict == Flag::Unknown { 2 } else { 0 },
                json: serde_json::to_value(&v).expect("serializable"),
            })
        }
        Command::Selftest { quick, only } => {
            let mut scale = if *quick { Scale::quick() } else { Scale::default() };
            scale.p_max = s.bound_horn;
            let corpus = Corpus::standard().map_err(Failure::invalid)?;
            let ids: Vec<usize> = if only.is_empty() { (1..=CRITERIA.len()).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > CRITERIA.len()) {
                return Err(Failure::invalid(format!("no criterion {bad}")));
            }
            let results: Vec<_> = ids.iter().map(|&i| selftest::run(i, &scale, &corpus)).collect();
            let failed = results.iter().filter(|r| !r.passed).count();
            Ok(Report {
                summary: results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n"),
                json: json!({ "scale": scale, "results": results, "failed": failed }),
                code: if failed > 0 { 3 } else { 0 },
            })
        }
    }
}

fn free_failure(e: crate::free::FreeError) -> Failure {
    match e {
        crate::free::FreeError::Bound { .. } => Failure { code: 2, message: e.to_string() },
        e => Failure::invalid(e),
    }
}

/// Parses arguments, runs the command and prints its output.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = Settings::resolve(&cli.global).and_then(|s| execute(&cli.command, &s).map(|r| (s, r)));
    match outcome {
        Ok((s, r)) => {
            match s.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
                    eprintln!("{}", r.summary);
                }
                Format::Text => println!("{}", r.summary),
            }
            ExitCode::from(r.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
