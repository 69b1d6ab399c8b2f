//! Command-line surface for the coincidence invariant library.
//!
//! Exit codes: 0 success, 2 validation or parse error, 3 non-orientable
//! (or non-closed) input where orientability is required, 4 dimension
//! mismatch, 5 a self-check failed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coincidence::corpus::{Corpus, CorpusEntry};
use coincidence::intersection::{
    intersection_lefschetz, intersection_number, SubmanifoldInclusion,
};
use coincidence::io::{ComplexFile, HomologyReport, MapFile, SubcomplexFile, ThetaFile};
use coincidence::lefschetz::{
    alpha_beta_lefschetz, canonical_theta, coincidence_lefschetz, lefschetz_fixed, theta_lefschetz,
    HomologyClass, ThetaMap,
};
use coincidence::selftest;
use coincidence::{
    euler_characteristic, homology, Error, Manifold, Rational, SimplicialComplex, SimplicialMap,
};

#[derive(Parser)]
#[command(
    name = "coincidence",
    version,
    about = "Exact Lefschetz coincidence and intersection invariants of simplicial maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Use a built-in complex (s1, s2-oct, t2-9, rp2-6) with its named maps
    #[arg(long)]
    corpus: Option<String>,
    /// Complex file (JSON); repeat to load several
    #[arg(short = 'c', long = "complex")]
    complex: Vec<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct MapArg {
    /// Map: a corpus map name or a map file path
    #[arg(long = "map-f")]
    map_f: String,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    map_f: MapArg,
    /// Second map: a corpus map name or a map file path
    #[arg(long = "map-g")]
    map_g: String,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers and Euler characteristic of a complex
    Homology(CommonArgs),
    /// Euler characteristic of a complex
    Euler(CommonArgs),
    /// Orient a closed pseudomanifold and print the facet signs
    Orient(CommonArgs),
    /// Degree of a map between same-dimensional complexes
    Degree {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        map: MapArg,
    },
    /// Fixed-point Lefschetz number of an endomap
    Lefschetz {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        map: MapArg,
    },
    /// Coincidence Lefschetz number of a pair of maps
    Coincidence {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        maps: PairArgs,
    },
    /// θ-relative Lefschetz number (θ from a file, or `canonical`)
    Theta {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        maps: PairArgs,
        /// θ file path, or `canonical`
        #[arg(long)]
        theta: String,
    },
    /// (α, β)-relative Lefschetz number
    Alphabeta {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        maps: PairArgs,
        /// Class file for α, or `fundamental`
        #[arg(long)]
        alpha: String,
        /// Class file for β, or `unit` (the Thom class slot)
        #[arg(long)]
        beta: String,
    },
    /// Intersection invariants of a map against a subcomplex
    Intersect {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        map: MapArg,
        /// Subcomplex: a corpus subcomplex name or a subcomplex file path
        #[arg(long)]
        sub: String,
        /// Optional θ for the intersection Lefschetz number (`canonical` or a file)
        #[arg(long)]
        theta: Option<String>,
    },
    /// Run the full verification suite
    Selftest {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// List the built-in corpus
    Corpus {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// Loaded complexes and corpus data a subcommand resolves names against.
struct Context {
    entry: Option<CorpusEntry>,
    registry: BTreeMap<String, Arc<SimplicialComplex>>,
    /// The complex the command is "about": the corpus entry's, or the
    /// first loaded file's.
    primary: Arc<SimplicialComplex>,
}

impl Context {
    fn load(common: &CommonArgs) -> Result<Self, Error> {
        let mut registry = BTreeMap::new();
        let mut entry = None;
        let mut primary = None;
        if let Some(name) = &common.corpus {
            let corpus = Corpus::builtin();
            let found = corpus.get(name).cloned().ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown corpus entry `{name}`; available: {:?}",
                    corpus.names()
                ))
            })?;
            registry.insert(found.complex.name().to_string(), found.complex.clone());
            for map in found.maps.values() {
                registry
                    .entry(map.domain().name().to_string())
                    .or_insert_with(|| map.domain().clone());
            }
            primary = Some(found.complex.clone());
            entry = Some(found);
        }
        for path in &common.complex {
            let file: ComplexFile = coincidence::io::read_json(path)?;
            let complex = Arc::new(file.to_complex()?);
            if primary.is_none() {
                primary = Some(complex.clone());
            }
            registry.insert(complex.name().to_string(), complex);
        }
        let primary = primary.ok_or_else(|| {
            Error::InvalidInput("pass --corpus <name> or --complex <file>".into())
        })?;
        Ok(Context {
            entry,
            registry,
            primary,
        })
    }

    fn resolve_map(&self, spec: &str) -> Result<SimplicialMap, Error> {
        if let Some(entry) = &self.entry {
            if let Some(map) = entry.map(spec) {
                return Ok(map.clone());
            }
        }
        let path = Path::new(spec);
        if path.exists() {
            let file: MapFile = coincidence::io::read_json(path)?;
            return file.to_map(&self.registry);
        }
        Err(Error::InvalidInput(format!(
            "`{spec}` is neither a named corpus map nor a readable map file"
        )))
    }

    fn resolve_sub(&self, spec: &str) -> Result<SubmanifoldInclusion, Error> {
        if let Some(entry) = &self.entry {
            if let Some(facets) = entry.subcomplexes.get(spec) {
                return SubmanifoldInclusion::new(entry.complex.clone(), spec, facets);
            }
        }
        let path = Path::new(spec);
        if path.exists() {
            let file: SubcomplexFile = coincidence::io::read_json(path)?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "sub".to_string());
            return file.to_inclusion(&self.registry, name);
        }
        Err(Error::InvalidInput(format!(
            "`{spec}` is neither a named corpus subcomplex nor a readable file"
        )))
    }

    fn resolve_theta(
        &self,
        spec: &str,
        thom_side: &Manifold,
        receiver: &Manifold,
        codim: usize,
    ) -> Result<ThetaMap, Error> {
        if spec == "canonical" {
            return canonical_theta(thom_side, receiver, codim);
        }
        let file: ThetaFile = coincidence::io::read_json(Path::new(spec))?;
        file.to_theta()
    }

    fn resolve_class(&self, spec: &str, m: &Manifold) -> Result<HomologyClass, Error> {
        if spec == "fundamental" {
            return Ok(HomologyClass::fundamental(m));
        }
        coincidence::io::read_json(Path::new(spec))
    }
}

fn emit(format: Format, fields: Vec<(&str, Value)>) {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, Value> = fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            println!("{}", Value::Object(map));
        }
        Format::Table => {
            for (k, v) in fields {
                match v {
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
    }
}

fn rational_value(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Homology(common) => {
            let ctx = Context::load(&common)?;
            let h = homology(&ctx.primary);
            let report = HomologyReport {
                betti: h.betti_vector(),
                euler: euler_characteristic(&ctx.primary),
            };
            emit(
                common.format,
                vec![
                    ("betti", json!(report.betti)),
                    ("euler", rational_value(&report.euler)),
                ],
            );
            Ok(0)
        }
        Command::Euler(common) => {
            let ctx = Context::load(&common)?;
            emit(
                common.format,
                vec![("euler", rational_value(&euler_characteristic(&ctx.primary)))],
            );
            Ok(0)
        }
        Command::Orient(common) => {
            let ctx = Context::load(&common)?;
            let m = Manifold::new(ctx.primary.clone())?;
            let signs: Vec<Value> = m
                .fundamental_class()
                .coefficients()
                .iter()
                .map(rational_value)
                .collect();
            emit(
                common.format,
                vec![
                    ("coefficients", Value::Array(signs)),
                    ("orientable", json!(true)),
                ],
            );
            Ok(0)
        }
        Command::Degree { common, map } => {
            let ctx = Context::load(&common)?;
            let f = ctx.resolve_map(&map.map_f)?;
            let dom = homology(f.domain());
            let cod = homology(f.codomain());
            let degree = coincidence::homology::degree_of_map(&f, &dom, &cod)?;
            emit(common.format, vec![("degree", rational_value(&degree))]);
            Ok(0)
        }
        Command::Lefschetz { common, map } => {
            let ctx = Context::load(&common)?;
            let f = ctx.resolve_map(&map.map_f)?;
            let h = homology(f.domain());
            let l = lefschetz_fixed(&f, &h)?;
            emit(common.format, vec![("L", rational_value(&l))]);
            Ok(0)
        }
        Command::Coincidence { common, maps } => {
            let ctx = Context::load(&common)?;
            let f = ctx.resolve_map(&maps.map_f.map_f)?;
            let g = ctx.resolve_map(&maps.map_g)?;
            let m = Manifold::new(f.domain().clone())?;
            let n = Manifold::new(f.codomain().clone())?;
            let l = coincidence_lefschetz(&f, &g, &m, &n)?;
            let mut fields = vec![("L", rational_value(&l))];
            if let Some(entry) = &ctx.entry {
                let known_free = entry
                    .coincidence_free
                    .iter()
                    .any(|&(cf, cg)| cf == maps.map_f.map_f && cg == maps.map_g);
                if known_free {
                    fields.push(("coincidence_free_consistent", json!(l.is_zero())));
                }
            }
            emit(common.format, fields);
            Ok(0)
        }
        Command::Theta {
            common,
            maps,
            theta,
        } => {
            let ctx = Context::load(&common)?;
            let f = ctx.resolve_map(&maps.map_f.map_f)?;
            let g = ctx.resolve_map(&maps.map_g)?;
            let m = Manifold::new(f.domain().clone())?;
            let n = Manifold::new(f.codomain().clone())?;
            let theta = ctx.resolve_theta(&theta, &n, &m, n.dim())?;
            let l = theta_lefschetz(&f, &g, &theta, &m, &n)?;
            emit(common.format, vec![("L_theta", rational_value(&l))]);
            Ok(0)
        }
        Command::Alphabeta {
            common,
            maps,
            alpha,
            beta,
        } => {
            let ctx = Context::load(&common)?;
            let f = ctx.resolve_map(&maps.map_f.map_f)?;
            let g = ctx.resolve_map(&maps.map_g)?;
            let m = Manifold::new(f.domain().clone())?;
            let n = Manifold::new(f.codomain().clone())?;
            let alpha = ctx.resolve_class(&alpha, &m)?;
            let beta = if beta == "unit" {
                // The Thom class slot: unit functional at α's Thom degree.
                HomologyClass::new(n.name(), alpha.degree, vec![Rational::one()])
            } else {
                ctx.resolve_class(&beta, &n)?
            };
            let l = alpha_beta_lefschetz(&f, &g, &alpha, &beta, &m, &n)?;
            emit(common.format, vec![("L_alpha_beta", rational_value(&l))]);
            Ok(0)
        }
        Command::Intersect {
            common,
            map,
            sub,
            theta,
        } => {
            let ctx = Context::load(&common)?;
            let f = ctx.resolve_map(&map.map_f)?;
            let inc = ctx.resolve_sub(&sub)?;
            let m = Manifold::new(f.domain().clone())?;
            let p = Manifold::new(inc.ambient().clone())?;
            let q = Manifold::new(inc.sub().clone())?;
            match theta {
                Some(spec) => {
                    let theta = ctx.resolve_theta(&spec, &q, &m, inc.codim())?;
                    let l = intersection_lefschetz(&f, &inc, &theta, &m, &p, &q)?;
                    emit(common.format, vec![("L_intersection", rational_value(&l))]);
                }
                None => {
                    let count = intersection_number(&f, &inc, &m, &p, &q)?;
                    emit(
                        common.format,
                        vec![("intersection_number", rational_value(&count))],
                    );
                }
            }
            Ok(0)
        }
        Command::Selftest { format } => {
            let results = selftest::run_all();
            let all_passed = results.iter().all(|r| r.passed);
            match format {
                Format::Table => {
                    for r in &results {
                        println!("{}", r.line());
                    }
                    println!("selftest: {}", if all_passed { "PASS" } else { "FAIL" });
                }
                Format::Json => {
                    let criteria: Vec<Value> = results
                        .iter()
                        .map(|r| {
                            json!({
                                "id": r.id,
                                "name": r.name,
                                "passed": r.passed,
                                "detail": r.detail,
                            })
                        })
                        .collect();
                    emit(
                        Format::Json,
                        vec![
                            ("criteria", Value::Array(criteria)),
                            ("passed", json!(all_passed)),
                        ],
                    );
                }
            }
            Ok(if all_passed { 0 } else { 5 })
        }
        Command::Corpus { format } => {
            let corpus = Corpus::builtin();
            match format {
                Format::Table => {
                    for entry in corpus.entries() {
                        let maps: Vec<&str> = entry.maps.keys().copied().collect();
                        let subs: Vec<&str> = entry.subcomplexes.keys().copied().collect();
                        println!(
                            "{}: betti={:?} euler={} orientable={} maps={:?} subcomplexes={:?}",
                            entry.name,
                            entry.expected.betti,
                            entry.expected.euler,
                            entry.expected.orientable,
                            maps,
                            subs
                        );
                    }
                }
                Format::Json => {
                    let entries: Vec<Value> = corpus
                        .entries()
                        .iter()
                        .map(|entry| {
                            json!({
                                "betti": entry.expected.betti,
                                "euler": entry.expected.euler.to_string(),
                                "maps": entry.maps.keys().collect::<Vec<_>>(),
                                "name": entry.name,
                                "orientable": entry.expected.orientable,
                                "subcomplexes": entry.subcomplexes.keys().collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    emit(Format::Json, vec![("corpus", Value::Array(entries))]);
                }
            }
            Ok(0)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NonOrientable(_) | Error::NotClosed { .. } | Error::DualityDegenerate { .. } => 3,
        Error::DimensionMismatch(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}
