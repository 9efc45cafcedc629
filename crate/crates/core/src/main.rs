use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use skewlink::cli::{emit_certificate, generate_instance, parse_instance, GenSpec, InstanceFile};
use skewlink::linkage::{build_reduced_instance, kappa};
use skewlink::matroid::ElementSet;
use skewlink::patterns::{beta, find_unavoidable};
use skewlink::witness::{certify, CertifyOutcome, WitnessConfig};
use skewlink::Error;

#[derive(Parser)]
#[command(
    name = "skewlink",
    version,
    about = "Circuits, linkage and circumference certificates for binary matroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Instance file; standard input when absent or `-`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Ground set size, rank, connectivity and named sets.
    Info(Common),
    /// Lists circuits in lexicographic order.
    Circuits {
        #[arg(long)]
        max_size: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    Circumference(Common),
    /// Linkage between two named sets.
    Kappa {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[command(flatten)]
        common: Common,
    },
    /// Builds the reduced instance for two named circuits.
    Reduce {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[command(flatten)]
        common: Common,
    },
    /// Searches for a certificate of 2c >= |C1| + |C2| + k.
    Certify {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = WitnessConfig::default().max_subset_size)]
        max_subset_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Looks for I_l, its complement or T_l in the representation matrix.
    Pattern {
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Prints a generated instance file.
    Gen {
        /// `circular_ladder M`, `random R N SEED` or `disjoint_cycles A B`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Verification(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(m) => Failure::Verification(m),
            e => Failure::Input(e),
        }
    }
}

fn load(common: &Common) -> Result<InstanceFile, Failure> {
    let mut buf = Vec::new();
    let res = match &common.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read(p).map(|b| buf = b),
        _ => std::io::stdin().read_to_end(&mut buf).map(|_| ()),
    };
    res.map_err(|e| Failure::Input(Error::InvalidArgument(format!("cannot read input: {e}"))))?;
    Ok(parse_instance(&buf)?)
}

fn one_based(s: &ElementSet) -> Vec<usize> {
    s.iter().map(|e| e + 1).collect()
}

fn show(format: Format, value: serde_json::Value, text: String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("json value")
        ),
        Format::Text => print!("{text}"),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Info(common) => {
            let f = load(&common)?;
            let m = &f.matroid;
            let sets: serde_json::Map<_, _> = f
                .named_sets
                .iter()
                .map(|(k, s)| {
                    (
                        k.clone(),
                        json!({"elements": one_based(s), "circuit": m.is_circuit(s)}),
                    )
                })
                .collect();
            let mut text = format!(
                "elements: {}\nrank: {}\ncomponents: {}\n",
                m.ground_size(),
                m.rank(),
                m.components().len()
            );
            for (k, s) in &f.named_sets {
                text += &format!("set {k}: {:?} circuit={}\n", one_based(s), m.is_circuit(s));
            }
            show(
                common.format,
                json!({"elements": m.ground_size(), "rank": m.rank(), "components": m.components().len(), "sets": sets}),
                text,
            );
        }
        Command::Circuits { max_size, common } => {
            let f = load(&common)?;
            let cs: Vec<Vec<usize>> = f.matroid.circuits(max_size).iter().map(one_based).collect();
            let text: String = cs.iter().map(|c| format!("{c:?}\n")).collect();
            show(common.format, json!({"circuits": cs}), text);
        }
        Command::Circumference(common) => {
            let c = load(&common)?.matroid.circumference()?;
            show(common.format, json!({"circumference": c}), format!("{c}\n"));
        }
        Command::Kappa { x, y, common } => {
            let f = load(&common)?;
            let k = kappa(&f.matroid, f.named(&x)?, f.named(&y)?)?;
            show(common.format, json!({"kappa": k}), format!("{k}\n"));
        }
        Command::Reduce { c1, c2, common } => {
            let f = load(&common)?;
            let ri = build_reduced_instance(&f.matroid, f.named(&c1)?, f.named(&c2)?)?;
            let orig = |s: &ElementSet| one_based(&ri.trace().to_original(s));
            let x: Vec<usize> = ri
                .x()
                .iter()
                .map(|&e| ri.trace().surviving()[e] + 1)
                .collect();
            let d: Vec<Vec<usize>> = ri.d().iter().map(orig).collect();
            let trace: Vec<_> = ri
                .trace()
                .steps()
                .iter()
                .map(|s| json!({"element": s.element + 1, "op": s.op}))
                .collect();
            let mut text = format!(
                "N: {} elements, t = {}\nX: {x:?}\n",
                ri.n().ground_size(),
                ri.t()
            );
            for (i, di) in d.iter().enumerate() {
                text += &format!("D{}: {di:?}\n", i + 1);
            }
            show(
                common.format,
                json!({"n": ri.n().ground_size(), "t": ri.t(), "c1": orig(ri.c1()), "c2": orig(ri.c2()), "x": x, "d": d, "trace": trace}),
                text,
            );
        }
        Command::Certify {
            c1,
            c2,
            k,
            max_subset_size,
            seed,
            common,
        } => {
            let f = load(&common)?;
            let cfg = WitnessConfig {
                max_subset_size,
                seed,
                ..WitnessConfig::default()
            };
            match certify(&f.matroid, f.named(&c1)?, f.named(&c2)?, k, &cfg)? {
                CertifyOutcome::Certified(c) => {
                    let a = &c.arithmetic;
                    let text = format!(
                        "{:?} certificate via {:?}: 2c >= {} >= {} = |C1| + |C2| + k\n",
                        c.scenario, c.path, a.twice_c, a.required
                    );
                    match common.format {
                        Format::Json => print!("{}", emit_certificate(&c)),
                        Format::Text => print!("{text}"),
                    }
                }
                CertifyOutcome::Failed(r) => {
                    show(
                        common.format,
                        serde_json::to_value(&r).expect("report"),
                        format!("no certificate: {}\n", r.reason),
                    );
                    return Err(Failure::Verification(r.reason));
                }
            }
        }
        Command::Pattern { l, common } => {
            let f = load(&common)?;
            let b = u32::try_from(l)
                .ok()
                .and_then(|l| beta(l).ok())
                .map(|b| b.to_string());
            match find_unavoidable(f.matroid.rep(), l)? {
                Some(hit) => {
                    let text = format!(
                        "{:?} of order {} at rows {:?}, columns {:?}\n",
                        hit.kind,
                        hit.order,
                        hit.rows_in_pattern_order()
                            .iter()
                            .map(|r| r + 1)
                            .collect::<Vec<_>>(),
                        hit.cols_in_pattern_order()
                            .iter()
                            .map(|c| c + 1)
                            .collect::<Vec<_>>()
                    );
                    show(common.format, json!({"beta": b, "hit": hit}), text);
                }
                None => {
                    show(
                        common.format,
                        json!({"beta": b, "hit": null}),
                        "no pattern\n".into(),
                    );
                }
            }
        }
        Command::Gen { spec, format } => {
            let f = generate_instance(GenSpec::from_words(&spec)?)?;
            show(format, json!({"instance": f.render()}), f.render());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
