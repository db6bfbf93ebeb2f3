use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sparing_core::catalog::{catalog_csv, catalog_rows};
use sparing_core::report::DEFAULT_MAX_VERTICES;
use sparing_core::{
    construct, run_sweep, sparing_number_exact, Engine, EngineChoice, Family, FamilyInstance,
    Format, Graph, Params, SolveOptions, SweepSpec,
};

/// Sparing numbers of graphs under weak integer additive set-indexers.
#[derive(Parser)]
#[command(name = "sparing", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the graph of a family instance as JSON.
    Gen {
        #[command(flatten)]
        instance: InstanceArgs,
        /// JSON output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write Graphviz DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Solve the exact sparing number of a graph JSON file.
    Phi {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
    },
    /// Compare published formulas, constructions and the exact oracle.
    Compare {
        /// Comma-separated family names, or `all`.
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a family construction and export the labeled graph as DOT.
    Label {
        #[command(flatten)]
        instance: InstanceArgs,
        /// DOT output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the construction outcome as JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Dump the formula catalog as CSV.
    Catalog {
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    m2: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    path_edges: Option<usize>,
}

impl InstanceArgs {
    fn instance(&self) -> Result<FamilyInstance> {
        let family: Family = self.family.parse()?;
        let params = Params {
            m: self.m,
            n: self.n,
            m1: self.m1,
            m2: self.m2,
            rows: self.rows,
            cols: self.cols,
            path_edges: self.path_edges,
        };
        Ok(FamilyInstance::from_params(family, &params)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Exhaustive,
    Bnb,
}

impl EngineArg {
    fn choice(self) -> EngineChoice {
        match self {
            EngineArg::Auto => EngineChoice::Auto,
            EngineArg::Exhaustive => EngineChoice::Force(Engine::Exhaustive),
            EngineArg::Bnb => EngineChoice::Force(Engine::BranchAndBound),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn options(engine: EngineArg) -> Result<SolveOptions> {
    let mut opts = SolveOptions::from_env()?;
    opts.engine = engine.choice();
    Ok(opts)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { instance, out, dot } => {
            let graph = instance.instance()?.graph()?;
            emit(out.as_deref(), &graph.to_json())?;
            if let Some(path) = dot {
                emit(Some(&path), &graph.to_dot())?;
            }
        }
        Command::Phi { graph, engine } => {
            let text = fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let g = Graph::from_json(&text)?;
            let result = sparing_number_exact(g.into(), &options(engine)?)?;
            println!("{}", result.report_json());
        }
        Command::Compare {
            families,
            max_vertices,
            format,
            engine,
            out,
        } => {
            let spec = SweepSpec::new(SweepSpec::parse_families(&families)?, max_vertices)?;
            let report = run_sweep(&spec, &options(engine)?)?;
            emit(out.as_deref(), &report.render(format.into()))?;
        }
        Command::Label {
            instance,
            out,
            json,
        } => {
            let outcome = construct(&instance.instance()?)?;
            emit(out.as_deref(), &outcome.labeling.to_dot())?;
            if let Some(path) = json {
                emit(Some(&path), &outcome.to_json())?;
            }
        }
        Command::Catalog {
            families,
            max_vertices,
            out,
        } => {
            let spec = SweepSpec::new(SweepSpec::parse_families(&families)?, max_vertices)?;
            emit(
                out.as_deref(),
                &catalog_csv(&catalog_rows(&spec.instances())?)?,
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let limit = e
                .downcast_ref::<sparing_core::Error>()
                .is_some_and(sparing_core::Error::is_resource_limit);
            ExitCode::from(if limit { 2 } else { 1 })
        }
    }
}
