//! The `layersep` command line: generation, separators, layouts,
//! verification, oracle queries, benchmarks and rendering.
//!
//! Exit codes are 0 on success, 1 for bad input, 2 when a result fails
//! verification and 3 when an exhaustive search refuses an instance as too
//! large. JSON goes to standard output, diagnostics to standard error.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use layersep::bench::{self, Family, SeparatorChoice, CSV_HEADER};
use layersep::graph::bfs_layering;
use layersep::layout::{construct, LayoutJson, LayoutKind, LinearLayout};
use layersep::oracle::{fixed_order_layout, min_layout_number, Enumeration};
use layersep::planar::{planar_two_path_separator, PlanarProvider, RotationSystem};
use layersep::render::arc_diagram_svg;
use layersep::separator::{
    find_layered_separator_exact, find_min_ell_separator, verify_separator, ExactProvider, SeparatorCert,
    SeparatorProvider,
};
use layersep::verify::{check_bounds, check_layer_by_layer, check_validity, Violation};
use layersep::{Graph, Layering};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "layersep", version, about = "Stack and queue layouts from layered separators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph, optionally with its BFS layering and embedding.
    Gen(GenArgs),
    /// Build a stack or queue layout, print it as JSON and check it.
    Layout(LayoutArgs),
    /// Check a layout file against a graph.
    Verify(VerifyArgs),
    /// Find a layered separator of the whole graph.
    Separator(SeparatorArgs),
    /// Exact stack or queue number of a small graph, with a witness layout.
    Oracle(OracleArgs),
    /// CSV of channel counts against the bound for a graph family.
    Bench(BenchArgs),
    /// Draw a layout as an SVG arc diagram.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// grid, grid-nn2, triangulation, map, complete, cycle, path or star.
    pub family: Family,
    /// Family parameter: side length, vertex count or leaf count.
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Graph file; standard output when absent.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Also write the BFS layering from --bfs-root to this file.
    #[arg(long)]
    pub layering: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub bfs_root: usize,
    /// Also write the rotation system to this file (plane families only).
    #[arg(long)]
    pub embedding: Option<PathBuf>,
}

/// Where the layering comes from: a file, or BFS from a root (vertex 0 by
/// default).
#[derive(Debug, Args)]
pub struct LayeringSource {
    /// Layering file with one layer index per vertex.
    #[arg(long, conflicts_with = "bfs_root")]
    pub layering: Option<PathBuf>,
    /// Root of the BFS layering.
    #[arg(long)]
    pub bfs_root: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub source: LayeringSource,
    /// stack or queue.
    #[arg(long, default_value = "stack")]
    pub kind: LayoutKind,
    /// exact or planar. Planar when an embedding is given, exact otherwise.
    #[arg(long)]
    pub separator: Option<SeparatorChoice>,
    /// Rotation system file, needed by the planar separator.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Fixed bound on separator vertices per layer.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Also render the layout to this SVG file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub layout: PathBuf,
    /// Check channel budgets for this separator bound.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Check that the order visits this layering layer by layer.
    #[arg(long)]
    pub layering: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeparatorArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub source: LayeringSource,
    /// exact or planar. Planar when an embedding is given, exact otherwise.
    #[arg(long)]
    pub method: Option<SeparatorChoice>,
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Required vertices per layer for the exact method; the minimum when absent.
    #[arg(long)]
    pub ell: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub graph: PathBuf,
    #[arg(long, default_value = "stack")]
    pub kind: LayoutKind,
    /// Fixed vertex order, comma separated. All orders are searched when absent.
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,
    /// Visit all n! orders instead of one per symmetry class.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub family: Family,
    /// Comma-separated sizes such as 4,8,16 or an inclusive range such as 2..5.
    pub sizes: Sizes,
    /// Layout kinds, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "stack")]
    pub kind: Vec<LayoutKind>,
    /// exact or planar. Planar for plane families, exact otherwise.
    #[arg(long)]
    pub separator: Option<SeparatorChoice>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub graph: PathBuf,
    pub layout: PathBuf,
    /// SVG file; standard output when absent.
    pub out: Option<PathBuf>,
    /// Draw layer boundaries of this layering.
    #[arg(long)]
    pub layering: Option<PathBuf>,
}

/// Benchmark sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sizes(pub Vec<usize>);

impl FromStr for Sizes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad size {t:?}"));
        if let Some((a, b)) = s.split_once("..") {
            let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            return Ok(Sizes((a..=b).collect()));
        }
        let v = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        Ok(Sizes(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable or malformed input, or arguments that do not fit together.
    Input(String),
    /// A result failed verification.
    Invalid(String),
    SizeGuard(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::SizeGuard(_) => EXIT_SIZE_GUARD,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Invalid(m) | Failure::SizeGuard(m) => f.write_str(m),
        }
    }
}

impl From<layersep::Error> for Failure {
    fn from(e: layersep::Error) -> Self {
        if e.is_size_guard() {
            Failure::SizeGuard(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs one command, returning the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Layout(a) => cmd_layout(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Separator(a) => cmd_separator(&a, out),
        Command::Oracle(a) => cmd_oracle(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
        Command::Render(a) => cmd_render(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{f}");
            f.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: layersep::Error) -> Failure {
    match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_layering(path: &Path, g: &Graph) -> Result<Layering, Failure> {
    let layering = Layering::parse(&read(path)?).map_err(|e| in_file(path, e))?;
    Layering::for_graph(g, layering.as_slice().to_vec()).map_err(|e| in_file(path, e))
}

fn load_rotation(path: &Path) -> Result<RotationSystem, Failure> {
    RotationSystem::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_layout(path: &Path, g: &Graph) -> Result<LinearLayout, Failure> {
    let json: LayoutJson = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let layout = LinearLayout::from_json(&json).map_err(|e| in_file(path, e))?;
    if layout.n() != g.n() {
        return Err(Failure::Input(format!(
            "{}: layout orders {} vertices, graph has {}",
            path.display(),
            layout.n(),
            g.n()
        )));
    }
    Ok(layout)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// The single vertex of layer 0, which a BFS layering must have.
fn layer_zero_root(layering: &Layering) -> Result<usize, Failure> {
    let roots: Vec<usize> = (0..layering.len()).filter(|&v| layering.layer(v) == 0).collect();
    match roots[..] {
        [root] => Ok(root),
        _ => Err(Failure::Input(format!(
            "the planar separator needs a BFS layering, but layer 0 has {} vertices",
            roots.len()
        ))),
    }
}

fn planar_provider(g: &Graph, rotation: Option<&RotationSystem>, layering: &Layering) -> Result<PlanarProvider, Failure> {
    let rotation = rotation.ok_or_else(|| Failure::Input("the planar separator needs --embedding".into()))?;
    let provider = PlanarProvider::new(g, rotation, layer_zero_root(layering)?)?;
    if provider.layering() != layering {
        return Err(Failure::Input(
            "the planar separator needs a BFS layering: every vertex must sit at its distance from the layer-0 root"
                .into(),
        ));
    }
    Ok(provider)
}

fn default_choice(rotation: Option<&RotationSystem>) -> SeparatorChoice {
    match rotation {
        Some(_) => SeparatorChoice::Planar,
        None => SeparatorChoice::Exact,
    }
}

fn resolve(
    g: &Graph,
    rotation: Option<&RotationSystem>,
    choice: SeparatorChoice,
    source: &LayeringSource,
    ell: Option<usize>,
) -> Result<(Layering, Box<dyn SeparatorProvider>), Failure> {
    let Some(path) = &source.layering else {
        return Ok(bench::prepare(g, rotation, choice, source.bfs_root.unwrap_or(0), ell)?);
    };
    let layering = load_layering(path, g)?;
    let provider: Box<dyn SeparatorProvider> = match choice {
        SeparatorChoice::Exact => Box::new(ExactProvider { ell }),
        SeparatorChoice::Planar => Box::new(planar_provider(g, rotation, &layering)?),
    };
    Ok((layering, provider))
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    let inst = bench::instance(a.family, a.size, a.seed)?;
    let text = inst.graph.to_text();
    match &a.out {
        Some(path) => write(path, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if let Some(path) = &a.layering {
        write(path, &bfs_layering(&inst.graph, a.bfs_root)?.to_text())?;
    }
    if let Some(path) = &a.embedding {
        let rotation = inst
            .rotation
            .as_ref()
            .ok_or_else(|| Failure::Input(format!("family {} has no embedding", a.family)))?;
        write(path, &rotation.to_text())?;
    }
    Ok(())
}

/// Validity, layer order and bound problems of a constructed layout.
fn audit(g: &Graph, layout: &LinearLayout, layering: &Layering, ell: usize) -> Vec<Violation> {
    let mut v = check_validity(g, layout);
    v.extend(check_layer_by_layer(layout.order(), layering));
    v.extend(check_bounds(layout, ell, g.n()).breaches);
    v
}

pub fn cmd_layout(a: &LayoutArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let rotation = a.embedding.as_deref().map(load_rotation).transpose()?;
    let choice = a.separator.unwrap_or_else(|| default_choice(rotation.as_ref()));
    let (layering, provider) = resolve(&g, rotation.as_ref(), choice, &a.source, a.ell)?;
    let c = construct(a.kind, &g, &layering, provider.as_ref(), a.ell)?;
    writeln!(out, "{}", to_json(&c.layout.to_json()))?;
    if let Some(path) = &a.svg {
        write(path, &arc_diagram_svg(&g, &c.layout, Some(&layering)))?;
    }
    writeln!(
        err,
        "{} layout of {} vertices and {} edges: {} channels, ℓ = {}, bound {}",
        a.kind,
        g.n(),
        g.m(),
        c.layout.channel_count(),
        c.ell,
        layersep::layout::channel_bound(a.kind, c.ell, g.n())
    )?;
    let violations = audit(&g, &c.layout, &layering, c.ell);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(to_json(&violations)))
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport<'a> {
    kind: LayoutKind,
    channels: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
    violations: &'a [Violation],
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let layout = load_layout(&a.layout, &g)?;
    let mut violations = check_validity(&g, &layout);
    if let Some(path) = &a.layering {
        violations.extend(check_layer_by_layer(layout.order(), &load_layering(path, &g)?));
    }
    let bound = a.ell.map(|ell| {
        let report = check_bounds(&layout, ell, g.n());
        violations.extend(report.breaches);
        report.bound
    });
    if violations.is_empty() {
        writeln!(out, "OK")?;
        return Ok(());
    }
    let report = VerifyReport {
        kind: layout.kind(),
        channels: layout.channel_count(),
        bound,
        violations: &violations,
    };
    writeln!(out, "{}", to_json(&report))?;
    Err(Failure::Invalid(format!("{} violation(s)", violations.len())))
}

pub fn cmd_separator(a: &SeparatorArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let rotation = a.embedding.as_deref().map(load_rotation).transpose()?;
    let layering = match &a.source.layering {
        Some(path) => load_layering(path, &g)?,
        None => bfs_layering(&g, a.source.bfs_root.unwrap_or(0))?,
    };
    let cert: SeparatorCert = match a.method.unwrap_or_else(|| default_choice(rotation.as_ref())) {
        SeparatorChoice::Exact => match a.ell {
            Some(ell) => find_layered_separator_exact(&g, &layering, ell)?
                .ok_or_else(|| Failure::Invalid(layersep::Error::NoSeparator { ell }.to_string()))?,
            None => find_min_ell_separator(&g, &layering)?.1,
        },
        SeparatorChoice::Planar => {
            if a.ell.is_some() {
                return Err(Failure::Input("--ell only applies to the exact method".into()));
            }
            let provider = planar_provider(&g, rotation.as_ref(), &layering)?;
            planar_two_path_separator(&g, rotation.as_ref().expect("checked"), &layering, provider.tree())?
        }
    };
    writeln!(out, "{}", to_json(&cert))?;
    let violations = verify_separator(&g, &layering, &cert);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(to_json(&violations)))
    }
}

#[derive(Debug, Serialize)]
struct OracleReport {
    kind: LayoutKind,
    value: usize,
    witness: LayoutJson,
}

pub fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let (value, witness) = match &a.order {
        Some(order) => {
            let layout = fixed_order_layout(a.kind, &g, order)?;
            (layout.channel_count(), layout)
        }
        None => {
            let mode = if a.full { Enumeration::Full } else { Enumeration::Reduced };
            let opt = min_layout_number(a.kind, &g, mode)?;
            (opt.value, opt.witness)
        }
    };
    let report = OracleReport {
        kind: a.kind,
        value,
        witness: witness.to_json(),
    };
    writeln!(out, "{}", to_json(&report))?;
    Ok(())
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Outcome {
    writeln!(out, "{CSV_HEADER}")?;
    let mut breaches = Vec::new();
    for &size in &a.sizes.0 {
        let inst = bench::instance(a.family, size, a.seed)?;
        let choice = a.separator.unwrap_or_else(|| bench::default_choice(&inst));
        for &kind in &a.kind {
            let row = bench::bench_row(&inst, kind, choice)?;
            writeln!(out, "{}", row.to_csv())?;
            if row.channels_used > row.bound || row.oracle_opt.is_some_and(|o| o > row.channels_used) {
                breaches.push(format!("{} {size} {kind}", a.family));
            }
        }
    }
    if breaches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invalid(format!("rows out of bounds: {}", breaches.join(", "))))
    }
}

pub fn cmd_render(a: &RenderArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let layout = load_layout(&a.layout, &g)?;
    let layering = a.layering.as_deref().map(|p| load_layering(p, &g)).transpose()?;
    let svg = arc_diagram_svg(&g, &layout, layering.as_ref());
    match &a.out {
        Some(path) => write(path, &svg),
        None => Ok(out.write_all(svg.as_bytes())?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_lists_and_ranges() {
        assert_eq!("4,8,16".parse::<Sizes>().unwrap(), Sizes(vec![4, 8, 16]));
        assert_eq!("2..5".parse::<Sizes>().unwrap(), Sizes(vec![2, 3, 4, 5]));
        assert_eq!("2..=3".parse::<Sizes>().unwrap(), Sizes(vec![2, 3]));
        assert_eq!("7".parse::<Sizes>().unwrap(), Sizes(vec![7]));
        assert!("5..2".parse::<Sizes>().is_err());
        assert!("a,b".parse::<Sizes>().is_err());
    }

    #[test]
    fn size_guard_maps_to_exit_three() {
        let e = layersep::Error::TooLarge {
            what: "edge count",
            got: 40,
            limit: 28,
        };
        assert_eq!(Failure::from(e).exit_code(), EXIT_SIZE_GUARD);
        assert_eq!(Failure::from(layersep::Error::SelfLoop(0)).exit_code(), EXIT_INPUT);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
