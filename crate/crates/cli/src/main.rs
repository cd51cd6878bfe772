use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fewxc::classifier::{certificate_target, classify_xc, desarguian_test, lift_hexagon, XcValue};
use fewxc::constructors::{build_family, FamilySpec};
use fewxc::gale::{faces_from_gale, gale_transform, is_polytopal, sporadic_up_to};
use fewxc::io::{
    extension_from_json, extension_to_json, polytope_from_json, polytope_to_json, slack_to_json, xc_result_to_json,
};
use fewxc::oracle::{slack_matrix, verify_extension, ExtensionCertificate, Target};
use fewxc::polytope::Polytope;
use fewxc::{bounds, corpus, Error};

#[derive(Parser)]
#[command(name = "fewxc", version, about = "Exact extension complexity for polytopes with few vertices or facets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a polytope and print the value with its certificate.
    Classify {
        file: PathBuf,
        /// Only run the hexagon test and lift.
        #[arg(long)]
        hexagon: bool,
    },
    /// Build a polytope from a family spec such as {"kind":"join_family","k":0,"n":1,"m":2}.
    Construct { spec: PathBuf },
    /// Gale transform of the vertex set.
    Gale { file: PathBuf },
    /// Non-pyramidal polytopes with d+4 vertices and d+3 facets.
    EnumerateSporadic {
        /// Largest dimension searched.
        #[arg(long, default_value_t = 7)]
        d: usize,
    },
    /// Lower-bound formulas.
    Bounds {
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, conflicts_with = "r")]
        n: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Slack matrix, one row per facet.
    Slack { file: PathBuf },
    /// Check an extension certificate; exits 1 when it is rejected.
    Verify { polytope: PathBuf, certificate: PathBuf },
    /// Write the test corpus into a directory.
    Corpus { dir: PathBuf },
}

enum Failure {
    Input(String),
    Infeasible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedRational(_) | Error::Invalid(_) | Error::DimensionMismatch(_) | Error::BoundDomain(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Infeasible(e.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_polytope(path: &Path) -> Result<Polytope, Failure> {
    Ok(polytope_from_json(&read_text(path)?)?)
}

fn emit(v: &Value) {
    // a closed pipe downstream is not an error worth reporting
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn classify_hexagon(p: &Polytope) -> Result<u8, Failure> {
    match desarguian_test(p)? {
        None => {
            emit(&json!({ "desarguian": false }));
            Ok(2)
        }
        Some(w) => {
            let lift = lift_hexagon(p, &w)?;
            let ext = ExtensionCertificate { target: Target::Primal, keep: p.ambient_dim(), q: lift.q };
            emit(&json!({
                "desarguian": true,
                "rotation": w.rotation,
                "reflected": w.reflected,
                "labeling": w.labeling,
                "certificate": { "extension": extension_to_json(&ext) },
            }));
            Ok(0)
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Classify { file, hexagon } => {
            let p = read_polytope(&file)?;
            if hexagon {
                return classify_hexagon(&p);
            }
            let r = classify_xc(&p)?;
            emit(&xc_result_to_json(&r));
            Ok(if matches!(r.value, XcValue::Exact(_)) { 0 } else { 2 })
        }
        Command::Construct { spec } => {
            let spec: FamilySpec = serde_json::from_str(&read_text(&spec)?)
                .map_err(|e| Failure::Input(format!("malformed family spec: {e}")))?;
            emit(&polytope_to_json(&build_family(&spec)?));
            Ok(0)
        }
        Command::Gale { file } => {
            let p = read_polytope(&file)?;
            let g = gale_transform(&p.point_config())?;
            let facets = faces_from_gale(&g)?;
            emit(&json!({
                "corank": g.corank(),
                "labels": g.labels(),
                "vectors": g.vectors().iter().map(|v| v.iter().map(fewxc::exactnum::format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "polytopal": is_polytopal(&g),
                "facets": facets.facets().iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
            }));
            Ok(0)
        }
        Command::EnumerateSporadic { d } => {
            let found = sporadic_up_to(d)?;
            let mut per_dim: BTreeMap<usize, usize> = BTreeMap::new();
            let records: Vec<Value> = found
                .iter()
                .map(|s| {
                    *per_dim.entry(s.dim).or_default() += 1;
                    json!({
                        "dim": s.dim,
                        "vertices": polytope_to_json(&s.polytope)["vertices"],
                        "facet_count": s.polytope.n_facets(),
                    })
                })
                .collect();
            emit(&Value::Array(records));
            let summary: Vec<String> = per_dim.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            eprintln!("count per dimension: {}", summary.join(" "));
            Ok(0)
        }
        Command::Bounds { d, n, r, alpha } => {
            let rep = bounds::report(d, n, r, alpha)?;
            emit(&serde_json::to_value(rep).expect("serializable"));
            Ok(0)
        }
        Command::Slack { file } => {
            emit(&slack_to_json(&slack_matrix(&read_polytope(&file)?)));
            Ok(0)
        }
        Command::Verify { polytope, certificate } => {
            let p = read_polytope(&polytope)?;
            let cert = extension_from_json(&read_text(&certificate)?)?;
            let v = verify_extension(&certificate_target(&p, cert.target), &cert);
            emit(&json!({ "ok": v.ok, "facet_count": v.facet_count }));
            Ok(if v.ok { 0 } else { 1 })
        }
        Command::Corpus { dir } => {
            fs::create_dir_all(&dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
            let mut names = Vec::new();
            for (name, p) in corpus::corpus() {
                let path = dir.join(format!("{name}.json"));
                let text = serde_json::to_string_pretty(&polytope_to_json(&p)).expect("serializable");
                fs::write(&path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                names.push(name);
            }
            emit(&json!(names));
            Ok(0)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("FEWXC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("FEWXC_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|_| run(cli.command)) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
