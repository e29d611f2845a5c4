use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cyldiag::svg::render_svg;
use cyldiag::verify::{run_all, VerifyOptions};
use cyldiag::{
    enumerate_diagrams, ClassificationReport, ComponentLabel, CompleteDualGraph, CylinderDiagram, EnumerationQuery,
    Filter, StratumSpec, Strategy,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cyldiag", version, about = "Cylinder diagrams and square-tiled surfaces in low genus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate cylinder diagrams of a stratum or of a whole genus.
    Enumerate(EnumerateArgs),
    /// Classify one diagram and print its report as JSON.
    Classify {
        /// Diagram such as "(1,2,3)-(3,2,1)", or a file holding one.
        diagram: String,
    },
    /// Run the built-in verification suite.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Perturb the enumeration count; the suite must notice.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Draw a diagram as a DOT dual graph or an SVG staircase.
    Render(RenderArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Stratum such as "H(2,2)" or "H(2,2)^odd".
    #[arg(long, conflicts_with = "genus", required_unless_present = "genus")]
    stratum: Option<String>,
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long)]
    cylinders: usize,
    #[arg(long, value_enum, default_value = "direct")]
    strategy: StrategyArg,
    #[arg(long, value_enum)]
    component: Option<ComponentArg>,
    /// Comma separated: case=3.I, no-semisimple, no-selfadjacent, simple>=k.
    #[arg(long = "filter")]
    filters: Vec<String>,
    /// Directory for the atlas files.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RenderArgs {
    /// Diagram string, DOT text, or a file holding either.
    input: String,
    #[arg(long, value_enum, default_value = "dot", conflicts_with_all = ["dot", "svg"])]
    format: Format,
    #[arg(long)]
    dot: bool,
    #[arg(long, conflicts_with = "dot")]
    svg: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Direct,
    Dual,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComponentArg {
    Hyp,
    Odd,
    Even,
    Unique,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Direct => Strategy::Direct,
            StrategyArg::Dual => Strategy::Dual,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

impl From<ComponentArg> for ComponentLabel {
    fn from(c: ComponentArg) -> Self {
        match c {
            ComponentArg::Hyp => ComponentLabel::Hyp,
            ComponentArg::Odd => ComponentLabel::Odd,
            ComponentArg::Even => ComponentLabel::Even,
            ComponentArg::Unique => ComponentLabel::Unique,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Enumerate(args) => enumerate(args),
        Command::Classify { diagram } => classify(&diagram),
        Command::VerifyPaper { json, inject_fault } => verify(json, inject_fault),
        Command::Render(args) => render(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Inline text, or the contents of the file it names.
fn read_input(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_diagram(text: &str) -> Result<CylinderDiagram> {
    let text = text.trim();
    if text.starts_with("digraph") {
        return Ok(CompleteDualGraph::from_dot(text)?.to_diagram()?);
    }
    Ok(text.parse::<CylinderDiagram>()?)
}

fn enumerate(args: EnumerateArgs) -> Result<bool> {
    let (query, suffix) = match (&args.stratum, args.genus) {
        (Some(s), _) => {
            let spec: StratumSpec = s.parse()?;
            (EnumerationQuery::stratum(spec.signature, args.cylinders), spec.component)
        }
        (None, Some(g)) => (EnumerationQuery::genus(g, args.cylinders), None),
        (None, None) => bail!("one of --stratum or --genus is required"),
    };
    let component = match (suffix, args.component.map(ComponentLabel::from)) {
        (Some(a), Some(b)) if a != b => bail!("stratum names component {a} but --component is {b}"),
        (a, b) => b.or(a),
    };
    let mut filters = Vec::new();
    for f in &args.filters {
        filters.extend(Filter::parse_list(f)?);
    }
    let query = query
        .with_strategy(args.strategy.into())
        .with_filters(filters)
        .with_component(component);

    let atlas = enumerate_diagrams(&query)?;
    let classes = atlas.symmetry_representatives().len();
    let files = match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            Some(atlas.save(dir)?)
        }
        None => None,
    };

    if args.json {
        let doc = json!({
            "query": atlas.query,
            "count": atlas.len(),
            "up_to_symmetry": classes,
            "counts": atlas.counts(),
            "diagrams": atlas.entries.iter().map(|e| e.report.canonical.to_string()).collect::<Vec<_>>(),
            "files": files.as_ref().map(|(t, j)| [t.display().to_string(), j.display().to_string()]),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
        return Ok(true);
    }
    println!("query: {}", atlas.query);
    println!("count: {}", atlas.len());
    println!("up to symmetry: {classes}");
    for c in atlas.counts() {
        println!("  {}^{} {}-cyl: {} ({} up to symmetry)", c.stratum, c.component, c.cylinders, c.count, c.up_to_symmetry);
    }
    for e in &atlas.entries {
        println!("  {}  [{}]", e.report.canonical, e.report.degeneration_case);
    }
    if let Some((txt, js)) = files {
        println!("wrote {} and {}", txt.display(), js.display());
    }
    Ok(true)
}

fn classify(arg: &str) -> Result<bool> {
    let d = parse_diagram(&read_input(arg)?)?;
    let report = ClassificationReport::new(&d)?;
    println!("{}", report.to_json());
    Ok(true)
}

fn verify(json_out: bool, inject_fault: bool) -> Result<bool> {
    let opts = VerifyOptions { inject_fault, ..VerifyOptions::full() };
    let start = Instant::now();
    let results = run_all(opts);
    let millis = start.elapsed().as_millis();
    let failed: Vec<_> = results.iter().filter(|r| !r.pass).collect();

    if json_out {
        let doc = json!({
            "passed": results.len() - failed.len(),
            "total": results.len(),
            "millis": millis,
            "checks": results,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("{:>2}  {:<6} {:<32} {:>7}  expected / computed", "id", "status", "check", "ms");
        for r in &results {
            let status = if r.pass { "ok" } else { "FAIL" };
            println!("{:>2}  {:<6} {:<32} {:>7}  {}", r.id, status, r.name, r.millis, r.expected);
            if !r.pass || r.expected != r.computed {
                println!("{:>51}{}", "", r.computed);
            }
            if let Some(note) = &r.note {
                println!("{:>51}({note})", "");
            }
        }
        println!("{} of {} checks pass in {:.1}s", results.len() - failed.len(), results.len(), millis as f64 / 1000.0);
        for r in &failed {
            eprintln!("check {} {} failed: expected {}, computed {}", r.id, r.name, r.expected, r.computed);
        }
    }
    Ok(failed.is_empty())
}

fn render(args: RenderArgs) -> Result<bool> {
    let d = parse_diagram(&read_input(&args.input)?)?;
    let format = if args.svg {
        Format::Svg
    } else if args.dot {
        Format::Dot
    } else {
        args.format
    };
    let text = match format {
        Format::Dot => CompleteDualGraph::from_diagram(&d).to_dot(),
        Format::Svg => render_svg(&d)?,
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(true)
}
