use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use helixlab::explorer::{
    explore, explore_markov_bound, explore_markov_depth, sigma_generators, tau_generators,
    threads_from_env, ExploreOptions,
};
use helixlab::markov::format_psl_word;
use helixlab::serial::big_to_json;
use helixlab::{
    apply_b_word, apply_braid, descend, export_dot, export_json, from_exceptional, helix_class,
    make_triple, quiver, seed_state, t_map, t_omega, verify_suite, BraidWordA, BraidWordB, Error,
    ExcState, KClass, OrbitGraph, ProjectiveSpace, SphState, Suite, VerifyParams,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "helixlab", version, about = "Braid group actions on exceptional and spherical collections, at the level of K-theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Str,
    Strw,
    Markov,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a braid word to a collection and print the resulting state.
    ///
    /// Exceptional seeds take σ words (`s1 s2^-1`); spherical seeds take
    /// τ/r words (`t0 r^-1`).
    Mutate {
        #[arg(long, default_value = "P2")]
        space: ProjectiveSpace,
        #[arg(long, default_value = "")]
        word: String,
        /// Builtin name (P1, P2, …), state JSON, or a path to a JSON file.
        #[arg(long)]
        seed: Option<String>,
        /// Start from the spherical collection of the seed.
        #[arg(long)]
        spherical: bool,
    },
    /// Descend a Markov triple to (3,3,3).
    Descend {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
        #[arg(allow_negative_numbers = true)]
        c: BigInt,
    },
    /// Explore a tilting graph or the Markov tree.
    Orbit {
        kind: Kind,
        #[arg(long, default_value = "P2")]
        space: ProjectiveSpace,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        /// Weight bound for the Markov tree.
        #[arg(long)]
        bound: Option<BigInt>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite; exits 0 iff it passes.
    Verify {
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        bound: Option<BigInt>,
        #[arg(long = "max-p")]
        max_p: Option<u32>,
        /// RNG seed for random words.
        #[arg(long = "rng-seed")]
        rng_seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the quiver counts and the Markov triples T and T_ω.
    Quiver {
        #[arg(long, default_value = "P2")]
        space: ProjectiveSpace,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        seed: Option<String>,
        /// τ/r word applied to the spherical collection before T_ω.
        #[arg(long = "tau-word", default_value = "")]
        tau_word: String,
    },
    /// Print helix classes E_i for a range of indices.
    Helix {
        #[arg(long, default_value = "P2")]
        space: ProjectiveSpace,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        to: i64,
    },
    /// Euler pairing χ(x, y) of two class vectors such as `1,0,0`.
    Euler {
        #[arg(long, default_value = "P2")]
        space: ProjectiveSpace,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
}

/// Either kind of state read from `--seed`.
enum Seed {
    Exc(ExcState),
    Sph(SphState),
}

fn read_seed(spec: Option<&str>, space: ProjectiveSpace) -> Result<Seed, Error> {
    let Some(spec) = spec else {
        return Ok(Seed::Exc(seed_state(space)));
    };
    if let Ok(s) = spec.parse::<ProjectiveSpace>() {
        return Ok(Seed::Exc(seed_state(s)));
    }
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?
    } else {
        return Err(Error::Parse(format!("seed {spec:?} is not a space, JSON, or file")));
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("seed JSON: {e}")))?;
    if v.get("simples").is_some() {
        SphState::from_json(&v).map(Seed::Sph)
    } else {
        ExcState::from_json(&v).map(Seed::Exc)
    }
}

fn exc_seed(spec: Option<&str>, space: ProjectiveSpace) -> Result<ExcState, Error> {
    match read_seed(spec, space)? {
        Seed::Exc(s) => Ok(s),
        Seed::Sph(_) => Err(Error::Parse("expected an exceptional collection seed".into())),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn print_graph(g: &OrbitGraph, format: Format) {
    match format {
        Format::Json => print!("{}", export_json(g)),
        Format::Dot => print!("{}", export_dot(g)),
        Format::Text => {
            println!(
                "{} from {}: {} nodes, {} edges, {} dedup hits",
                g.meta.kind,
                g.meta.seed,
                g.node_count(),
                g.edge_count(),
                g.dedup_hits
            );
            for n in &g.nodes {
                println!("{}\t{}\t{}", n.depth, n.key, g.word_string(n));
            }
        }
    }
}

fn options<S>(kind: &str, seed: &str, depth: usize, threads: Option<usize>) -> ExploreOptions<S> {
    let mut o = ExploreOptions::depth(kind, seed, depth);
    o.threads = threads;
    o
}

fn run(cmd: Command) -> Result<bool, Error> {
    let threads = threads_from_env();
    match cmd {
        Command::Mutate { space, word, seed, spherical } => {
            let out = match read_seed(seed.as_deref(), space)? {
                Seed::Exc(s) if !spherical => {
                    let w = BraidWordA::parse(s.n(), &word)?;
                    apply_braid(&s, &w)?.to_json()
                }
                Seed::Exc(s) => {
                    let sph = from_exceptional(&s)?;
                    apply_b_word(&sph, &BraidWordB::parse(sph.n(), &word)?)?.to_json()
                }
                Seed::Sph(s) => apply_b_word(&s, &BraidWordB::parse(s.n(), &word)?)?.to_json(),
            };
            println!("{}", pretty(&out));
        }
        Command::Descend { a, b, c } => {
            let t = make_triple(a, b, c)?;
            let d = descend(&t)?;
            let labels: Vec<&str> = d.labels.iter().map(|l| l.label()).collect();
            let out = json!({
                "path": d.path.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
                "labels": labels,
                "word": format_psl_word(&d.letters()),
            });
            println!("{}", pretty(&out));
        }
        Command::Orbit { kind, space, seed, depth, bound, format } => {
            let g = match kind {
                Kind::Markov => match (depth, bound) {
                    (_, Some(b)) => explore_markov_bound(&b, threads)?,
                    (Some(d), None) => explore_markov_depth(d, threads)?,
                    (None, None) => {
                        return Err(Error::Parse("markov orbit needs --depth or --bound".into()))
                    }
                },
                Kind::Str | Kind::Strw => {
                    let depth = depth.unwrap_or(2);
                    let label = seed.clone().unwrap_or_else(|| space.to_string());
                    match (kind, read_seed(seed.as_deref(), space)?) {
                        (Kind::Str, Seed::Exc(s)) => explore(s.clone(), &sigma_generators(s.n()), &options("str", &label, depth, threads))?,
                        (Kind::Str, Seed::Sph(_)) => {
                            return Err(Error::Parse("str needs an exceptional collection seed".into()))
                        }
                        (_, Seed::Exc(s)) => {
                            let sph = from_exceptional(&s)?;
                            explore(sph.clone(), &tau_generators(sph.n()), &options("strw", &label, depth, threads))?
                        }
                        (_, Seed::Sph(s)) => explore(s.clone(), &tau_generators(s.n()), &options("strw", &label, depth, threads))?,
                    }
                }
            };
            print_graph(&g, format);
        }
        Command::Verify { suite, n, depth, trials, bound, max_p, rng_seed, json } => {
            let d = VerifyParams::default();
            let params = VerifyParams {
                n: n.unwrap_or(d.n),
                depth: depth.unwrap_or(d.depth),
                trials: trials.unwrap_or(d.trials),
                bound: bound.unwrap_or(d.bound),
                max_p: max_p.unwrap_or(d.max_p),
                seed: rng_seed.unwrap_or(d.seed),
            };
            let report = verify_suite(suite, &params);
            if json {
                println!("{}", pretty(&report.to_json()));
            } else {
                print!("{report}");
            }
            return Ok(report.passed());
        }
        Command::Quiver { space, word, seed, tau_word } => {
            let s = exc_seed(seed.as_deref(), space)?;
            let s = apply_braid(&s, &BraidWordA::parse(s.n(), &word)?)?;
            let sph = from_exceptional(&s)?;
            let sph = apply_b_word(&sph, &BraidWordB::parse(sph.n(), &tau_word)?)?;
            let (t, tw) = if s.n() == 3 {
                (t_map(&s)?.to_json(), t_omega(&sph)?.to_json())
            } else {
                (Value::Null, Value::Null)
            };
            let q: Vec<Value> = quiver(&s)?.iter().map(big_to_json).collect();
            let out = json!({ "quiver": q, "T": t, "T_omega": tw });
            println!("{}", pretty(&out));
        }
        Command::Helix { space, seed, from, to } => {
            if from > to {
                return Err(Error::Parse(format!("empty range {from}..{to}")));
            }
            let s = exc_seed(seed.as_deref(), space)?;
            let out: Vec<Value> = (from..=to)
                .map(|i| json!({ "index": i, "class": helix_class(&s, i) }))
                .collect();
            println!("{}", pretty(&Value::Array(out)));
        }
        Command::Euler { space, x, y } => {
            let lat = seed_state(space).lattice().clone();
            let parse = |s: &str| -> Result<KClass, Error> {
                s.split(',')
                    .map(|t| t.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()
                    .map(KClass)
            };
            println!("{}", lat.chi(&parse(&x)?, &parse(&y)?)?);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_invariant() { 2 } else { 1 })
        }
    }
}
