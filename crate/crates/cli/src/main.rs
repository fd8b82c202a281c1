use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::info;
use serde_json::json;

use qtg_core::analysis::{self, classify, find_k1_crossings, is_quasi_planar};
use qtg_core::batch::rewrite_all;
use qtg_core::io::generate::{generate, GenKind};
use qtg_core::io::geom::{ingest_geometric, parse_geom};
use qtg_core::io::qtg::{parse, parse_raw, serialize};
use qtg_core::io::svg::render_svg;
use qtg_core::pipeline::{certify, rewrite};
use qtg_core::untangle::untangle_all;
use qtg_core::{IoError, PipelineError, TopologicalGraph};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qtg",
    version,
    about = "Redraw k-planar simple drawings without k+1 pairwise crossing edges"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .qtg file and report its size.
    Validate { file: PathBuf },
    /// Report simplicity, k-planarity and the (k+1)-crossings of a drawing.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Remove every tangled (k+1)-crossing.
    Untangle {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the full pipeline and certify the result.
    Rewrite {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Rewrite many files on the worker pool into a directory.
    RewriteAll {
        files: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Check an output drawing against its input.
    Certify {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Convert a .geom drawing into a .qtg file.
    Ingest {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a generated drawing.
    Generate {
        /// convex_chords, random_kplanar, tangled_fixture, mutual_fixture or adj_fixture.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Chords as `a-b,c-d,...` for convex_chords.
        #[arg(long)]
        chords: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Draw a .qtg file as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write each connected component of a .qtg file to `<prefix>.<i>.qtg`.
    Split {
        file: PathBuf,
        #[arg(long)]
        prefix: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::input(e)
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match e {
            PipelineError::InvariantViolation(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<TopologicalGraph, Failure> {
    parse(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn parse_chords(s: &str) -> Result<Vec<(u32, u32)>, Failure> {
    s.split(',')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            let (a, b) = c
                .trim()
                .split_once('-')
                .ok_or_else(|| Failure::input(format!("bad chord {c:?}, expected a-b")))?;
            let a = a.parse().map_err(|_| Failure::input(format!("bad chord {c:?}")))?;
            let b = b.parse().map_err(|_| Failure::input(format!("bad chord {c:?}")))?;
            Ok((a, b))
        })
        .collect()
}

fn gen_kind(
    kind: &str,
    n: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    chords: Option<&str>,
) -> Result<GenKind, Failure> {
    let need =
        |v: Option<usize>, name: &str| v.ok_or_else(|| Failure::input(format!("--{name} is required for {kind}")));
    match kind {
        "convex_chords" => Ok(GenKind::ConvexChords {
            n: need(n, "n")? as u32,
            chords: parse_chords(chords.ok_or_else(|| Failure::input("--chords is required for convex_chords"))?)?,
        }),
        "random_kplanar" => Ok(GenKind::RandomKPlanar {
            n: need(n, "n")?,
            m: need(m, "m")?,
            k: need(k, "k")?,
        }),
        other => Ok(other.parse()?),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let g = load(&file)?;
            let report = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "crossings": g.crossings().len(),
                "faces": g.faces().len(),
            });
            println!("{report}");
            Ok(0)
        }
        Command::Analyze { file, k } => {
            let g = load(&file)?;
            let simple = analysis::is_simple(&g);
            let (k_planar, max) = analysis::is_k_planar(&g, k);
            let crossings = if k_planar {
                find_k1_crossings(&g, k)
                    .map_err(Failure::input)?
                    .iter()
                    .map(|x| json!({ "edges": x.edges, "tangle": classify(&g, x) }))
                    .collect()
            } else {
                Vec::new()
            };
            let qp = is_quasi_planar(&g, k + 1);
            let report = json!({
                "k": k,
                "simple": simple.simple,
                "violations": simple.violations,
                "almost_simple": analysis::is_almost_simple(&g),
                "k_planar": k_planar,
                "max_crossings": max,
                "k1_crossings": crossings,
                "quasi_planar": qp,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(0)
        }
        Command::Untangle { file, k, output } => {
            let g = load(&file)?;
            if k < 3 {
                return Err(PipelineError::BadK(k).into());
            }
            let (h, stats) = untangle_all(&g, k).map_err(PipelineError::from)?;
            info!("{} untangle steps", stats.iterations);
            write(&output, &serialize(&h))?;
            Ok(0)
        }
        Command::Rewrite {
            file,
            k,
            output,
            certificate,
        } => {
            let g = load(&file)?;
            let (h, cert) = rewrite(&g, k)?;
            write(&output, &serialize(&h))?;
            if let Some(path) = certificate {
                write(&path, &cert.to_json())?;
            }
            info!("rewrite PASS");
            Ok(0)
        }
        Command::RewriteAll { files, k, out_dir } => {
            fs::create_dir_all(&out_dir).map_err(|e| Failure::input(format!("{}: {e}", out_dir.display())))?;
            let inputs = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
            let mut worst = 0;
            for (file, result) in files.iter().zip(rewrite_all(&inputs, k)) {
                let name = file.file_name().map(PathBuf::from).unwrap_or_else(|| file.clone());
                match result {
                    Ok((h, cert)) => {
                        write(&out_dir.join(&name), &serialize(&h))?;
                        write(&out_dir.join(&name).with_extension("cert.json"), &cert.to_json())?;
                        println!("{}: PASS", file.display());
                    }
                    Err(e) => {
                        let f = Failure::from(e);
                        eprintln!("{}: {}", file.display(), f.message);
                        worst = worst.max(f.code);
                    }
                }
            }
            Ok(worst)
        }
        Command::Certify { input, output, k } => {
            let cert = certify(&load(&input)?, &load(&output)?, k);
            println!("{}", cert.to_json());
            Ok(if cert.pass { 0 } else { EXIT_FAIL })
        }
        Command::Ingest { file, output } => {
            let g = ingest_geometric(&parse_geom(&read(&file)?)?)?;
            write(&output, &serialize(&g))?;
            Ok(0)
        }
        Command::Generate {
            kind,
            seed,
            n,
            m,
            k,
            chords,
            output,
        } => {
            let kind = gen_kind(&kind, n, m, k, chords.as_deref())?;
            let g = generate(&kind, seed)?;
            write(&output, &serialize(&g))?;
            Ok(0)
        }
        Command::Render { file, output } => {
            write(&output, &render_svg(&load(&file)?))?;
            Ok(0)
        }
        Command::Split { file, prefix } => {
            let parts = parse_raw(&read(&file)?)?.split();
            for (i, part) in parts.iter().enumerate() {
                part.build()?;
                let mut path = prefix.clone().into_os_string();
                path.push(format!(".{i}.qtg"));
                write(Path::new(&path), &part.to_text())?;
            }
            println!("{} components", parts.len());
            Ok(0)
        }
    }
}

fn init_logging() {
    let filter = match std::env::var("QTG_LOG").as_deref() {
        Ok("trace") => "trace",
        Ok("info") => "info",
        Ok("quiet") => "off",
        _ => "warn",
    };
    env_logger::Builder::new()
        .parse_filters(filter)
        .format_timestamp(None)
        .init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
