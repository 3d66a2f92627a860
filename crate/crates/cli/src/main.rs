use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use mpoly_core::cube_models::{self, DESK_MAX_DIM};
use mpoly_core::orderings::{enumerate_orderings, EnumerationOptions, Filter, Mode};
use mpoly_core::reconstruction::{find_good_orientations, reconstruct_faces, ReconstructionSummary};
use mpoly_core::{Error, LinearOrdering, MatroidPolytope, OrderingReport, PointConfiguration, PolytopeGraph};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

/// Matroid polytopes of integer point configurations: faces, h*-vectors,
/// K-orderings, shelling orderings and graph reconstruction.
#[derive(Parser, Debug)]
#[command(name = "mpoly", version)]
struct Cli {
    /// Write the run manifest to this file instead of standard error.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Face lattice, f-vector, h*-vector and Euler check.
    Faces(InputArgs),
    /// f-vector, h*-vector and Euler check only.
    Fvector(InputArgs),
    /// Graph of the polytope in the exchange format.
    Graph(InputArgs),
    /// Classify one ordering of a simple matroid polytope.
    CheckOrdering {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated labels, e.g. "e3,e1,e2,e4".
        #[arg(long)]
        ordering: String,
    },
    /// Stream reports of orderings matching a filter, then a summary.
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "all")]
        filter: Filter,
        #[command(flatten)]
        run: RunArgs,
        /// Exhaustive: stop after this many orderings. Sample: draw this many.
        #[arg(long)]
        limit: Option<u128>,
    },
    /// Rebuild the face lattice from the graph alone.
    Reconstruct {
        /// Graph JSON: {"vertices": [..], "edges": [[a, b], ..]}.
        #[arg(long)]
        graph: PathBuf,
        /// Point configuration to compare the reconstruction against.
        #[arg(long)]
        oracle: Option<PathBuf>,
        /// Maximum search nodes for the good-orientation search.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// The cube C^d as a point configuration.
    Cube {
        #[arg(long)]
        dim: usize,
        /// Check the binomial h*-identity instead of printing points.
        #[arg(long)]
        identity: bool,
    },
    /// Count K-orderings that are not shelling orderings of C^d.
    Experiment {
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        run: RunArgs,
        /// Exhaustive: stop after this many orderings. Sample: draw this many.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// The built-in test corpus with its basic invariants.
    Corpus,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Point configuration JSON: {"name", "dim", "labels", "points"}.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Serialize, Default)]
struct RunManifest {
    command: String,
    inputs: BTreeMap<String, String>,
    seed: Option<u64>,
    budget: Option<String>,
    version: &'static str,
    wall_time_ms: u128,
    exit_code: u8,
}

struct Session {
    manifest: RunManifest,
    out: BufWriter<io::Stdout>,
}

impl Session {
    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.manifest.inputs.insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn config(&mut self, path: &Path) -> anyhow::Result<PointConfiguration> {
        let text = self.read(path)?;
        Ok(PointConfiguration::from_json(&text)?)
    }

    fn polytope(&mut self, path: &Path) -> anyhow::Result<MatroidPolytope> {
        Ok(MatroidPolytope::new(self.config(path)?)?)
    }

    fn emit<T: Serialize>(&mut self, value: &T) -> anyhow::Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn emit_pretty<T: Serialize>(&mut self, value: &T) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let start = Instant::now();
    let mut session = Session {
        manifest: RunManifest { version: env!("CARGO_PKG_VERSION"), ..Default::default() },
        out: BufWriter::new(io::stdout()),
    };
    let code = match run(&cli.command, &mut session) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) if err.is_validation() => EXIT_VALIDATION,
                _ => EXIT_USAGE,
            }
        }
    };
    if let Err(e) = session.out.flush() {
        eprintln!("error: writing output: {e}");
    }
    session.manifest.wall_time_ms = start.elapsed().as_millis();
    session.manifest.exit_code = code;
    let manifest = serde_json::to_string(&json!({ "manifest": session.manifest })).expect("manifest");
    match &cli.manifest {
        Some(path) => {
            if let Err(e) = fs::write(path, manifest + "\n") {
                eprintln!("error: writing manifest {}: {e}", path.display());
            }
        }
        None => eprintln!("{manifest}"),
    }
    ExitCode::from(code)
}

fn run(command: &Command, s: &mut Session) -> anyhow::Result<u8> {
    s.manifest.command = command_name(command).to_string();
    match command {
        Command::Faces(a) => {
            let poly = s.polytope(&a.input)?;
            s.emit_pretty(&poly.lattice().to_json())?;
        }
        Command::Fvector(a) => {
            let poly = s.polytope(&a.input)?;
            let lat = poly.lattice();
            s.emit_pretty(&json!({
                "name": poly.config().name,
                "rank": lat.rank(),
                "f": lat.f_vector(),
                "h_star": lat.h_star(),
                "euler_ok": lat.euler_check(),
            }))?;
        }
        Command::Graph(a) => {
            let poly = s.polytope(&a.input)?;
            s.emit_pretty(&poly.graph().to_json())?;
        }
        Command::CheckOrdering { input, ordering } => {
            let poly = s.polytope(&input.input)?;
            poly.require_simple()?;
            let ord = LinearOrdering::parse(poly.labels(), ordering)?;
            s.emit_pretty(&OrderingReport::build(&poly, &ord, None)?)?;
        }
        Command::Enumerate { input, filter, run, limit } => {
            let poly = s.polytope(&input.input)?;
            poly.require_simple()?;
            s.manifest.seed = Some(run.seed);
            s.manifest.budget = limit.map(|l| l.to_string());
            let opts = EnumerationOptions {
                filter: *filter,
                mode: run.mode,
                seed: run.seed,
                limit: *limit,
                workers: run.workers,
            };
            let result = enumerate_orderings(&poly, &opts)?;
            for report in &result.reports {
                s.emit(report)?;
            }
            s.emit(&json!({ "summary": result.summary }))?;
            if result.summary.partial {
                return Ok(EXIT_PARTIAL);
            }
        }
        Command::Reconstruct { graph, oracle, budget } => {
            let text = s.read(graph)?;
            let g = PolytopeGraph::from_json_str(&text)?;
            s.manifest.budget = budget.map(|b| b.to_string());
            let good = find_good_orientations(&g, *budget)?;
            let lat = reconstruct_faces(&g, &good)?;
            let summary = ReconstructionSummary::new(lat.rank(), &good);
            let mut doc = json!({ "summary": summary, "lattice": lat.to_json() });
            let mut code = if good.partial { EXIT_PARTIAL } else { 0 };
            if let Some(path) = oracle {
                let poly = s.polytope(path)?;
                if poly.labels() != g.labels() {
                    return Err(anyhow!(
                        "oracle labels {:?} do not match graph vertices {:?}",
                        poly.labels(),
                        g.labels()
                    ));
                }
                let same = lat.same_faces_as(poly.lattice());
                doc["isomorphic"] = json!(same);
                if !same && code == 0 {
                    code = EXIT_VALIDATION;
                }
            }
            s.emit_pretty(&doc)?;
            return Ok(code);
        }
        Command::Cube { dim, identity } => {
            warn_dim(*dim);
            if *identity {
                s.emit_pretty(&cube_models::cube_h_star_identity(*dim)?)?;
            } else {
                s.emit_pretty(&cube_models::cube(*dim)?)?;
            }
        }
        Command::Experiment { dim, run, budget } => {
            warn_dim(*dim);
            s.manifest.seed = Some(run.seed);
            s.manifest.budget = budget.map(|b| b.to_string());
            let report = cube_models::problem_experiment(*dim, run.mode, run.seed, *budget, run.workers)?;
            for w in &report.witnesses {
                s.emit(&json!({ "witness": w }))?;
            }
            for w in &report.rejected {
                s.emit(&json!({ "rejected": w }))?;
            }
            let mut summary = serde_json::to_value(&report.summary)?;
            summary["dim"] = json!(report.dim);
            summary["coincide"] = json!(report.coincide);
            summary["witnesses"] = json!(report.witnesses.len());
            summary["rejected"] = json!(report.rejected.len());
            summary["consistent"] = json!(report.summary.counts.is_consistent());
            s.emit(&summary)?;
            if report.summary.partial {
                return Ok(EXIT_PARTIAL);
            }
        }
        Command::Corpus => {
            let mut entries = Vec::new();
            for config in cube_models::corpus() {
                let poly = MatroidPolytope::new(config)?;
                let lat = poly.lattice();
                entries.push(json!({
                    "config": poly.config(),
                    "rank": lat.rank(),
                    "simple": poly.is_simple(),
                    "f": lat.f_vector(),
                    "h_star": lat.h_star(),
                    "euler_ok": lat.euler_check(),
                }));
            }
            s.emit_pretty(&entries)?;
        }
    }
    Ok(0)
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Faces(_) => "faces",
        Command::Fvector(_) => "fvector",
        Command::Graph(_) => "graph",
        Command::CheckOrdering { .. } => "check-ordering",
        Command::Enumerate { .. } => "enumerate",
        Command::Reconstruct { .. } => "reconstruct",
        Command::Cube { .. } => "cube",
        Command::Experiment { .. } => "experiment",
        Command::Corpus => "corpus",
    }
}

fn warn_dim(dim: usize) {
    if dim > DESK_MAX_DIM {
        eprintln!("warning: dimension {dim} is above {DESK_MAX_DIM}; expect long runs");
    }
}
