//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! fails if any criterion does.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use layersep::generators::{
    complete, connected_graphs, cycle, grid, grid_nn2, map_graph_from_grid_host, random_connected_graph,
    random_map_nations, stacked_triangulation,
};
use layersep::graph::{bfs_layering, bfs_tree};
use layersep::layout::{construct, floor_log2, Construction, LayoutKind};
use layersep::oracle::{fixed_order_stack_number, min_layout_number, min_stack_number, Enumeration};
use layersep::planar::{planar_two_path_separator, PlanarProvider, RotationSystem};
use layersep::separator::{find_layered_separator_exact, verify_separator, ExactProvider, SeparatorProvider};
use layersep::verify::{check_bounds, check_layer_by_layer, check_validity};
use layersep::{Graph, Layering};
use tempfile::TempDir;

const VALIDITY_BUDGET: Duration = Duration::from_secs(60);
const KINDS: [LayoutKind; 2] = [LayoutKind::Stack, LayoutKind::Queue];

type Verdict = Result<String, String>;

struct Case {
    name: String,
    graph: Graph,
    rotation: Option<RotationSystem>,
}

impl Case {
    fn new(name: String, graph: Graph, rotation: Option<RotationSystem>) -> Self {
        Case { name, graph, rotation }
    }

    fn provider(&self) -> (Layering, Box<dyn SeparatorProvider>) {
        match &self.rotation {
            Some(rot) => {
                let p = PlanarProvider::new(&self.graph, rot, 0).expect("plane corpus graph");
                (p.layering().clone(), Box::new(p))
            }
            None => (
                bfs_layering(&self.graph, 0).expect("connected corpus graph"),
                Box::new(ExactProvider::default()),
            ),
        }
    }
}

fn corpus() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 1..=6 {
        for (i, g) in connected_graphs(n).unwrap().into_iter().enumerate() {
            cases.push(Case::new(format!("connected n={n} #{i}"), g, None));
        }
    }
    for r in 1..=8 {
        for c in r..=8 {
            let (g, rot) = grid(r, c);
            cases.push(Case::new(format!("grid {r}x{c}"), g, Some(rot)));
        }
    }
    for n in 1..=4 {
        cases.push(Case::new(format!("grid_nn2({n})"), grid_nn2(n), None));
    }
    for i in 0..10u64 {
        let n = 5 * (i as usize + 1);
        let (g, rot) = stacked_triangulation(n, i).unwrap();
        cases.push(Case::new(format!("triangulation n={n} seed={i}"), g, Some(rot)));
    }
    for i in 0..10u64 {
        let d_cap = if i % 2 == 0 { 3 } else { 4 };
        let nations = random_map_nations(6, 6, 19, d_cap, i).unwrap();
        let g = map_graph_from_grid_host(6, 6, &nations, d_cap).unwrap();
        cases.push(Case::new(format!("map 6x6 d={d_cap} seed={i}"), g, None));
    }
    cases
}

struct Built {
    case: usize,
    kind: LayoutKind,
    layering: Layering,
    result: Result<Construction, String>,
}

fn build_all(cases: &[Case]) -> Vec<Built> {
    let mut out = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        let (layering, provider) = case.provider();
        for kind in KINDS {
            let result = construct(kind, &case.graph, &layering, provider.as_ref(), None).map_err(|e| e.to_string());
            out.push(Built {
                case: i,
                kind,
                layering: layering.clone(),
                result,
            });
        }
    }
    out
}

fn validity(cases: &[Case], built: &[Built], elapsed: Duration) -> Verdict {
    let mut bad = Vec::new();
    for b in built {
        let case = &cases[b.case];
        match &b.result {
            Err(e) => bad.push(format!("{} {}: {e}", case.name, b.kind)),
            Ok(c) => {
                let v = check_validity(&case.graph, &c.layout);
                let l = check_layer_by_layer(c.layout.order(), &b.layering);
                if !v.is_empty() || !l.is_empty() {
                    bad.push(format!("{} {}: {} conflicts, {} layer-order breaks", case.name, b.kind, v.len(), l.len()));
                }
            }
        }
    }
    if elapsed > VALIDITY_BUDGET {
        bad.push(format!("took {elapsed:.1?}, budget {VALIDITY_BUDGET:?}"));
    }
    let summary = format!("{} graphs, {} layouts, {elapsed:.1?}", cases.len(), built.len());
    if bad.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", bad.join("; ")))
    }
}

fn bounds(cases: &[Case], built: &[Built]) -> Verdict {
    let mut bad = Vec::new();
    let mut tightest = 0.0f64;
    for b in built {
        let Ok(c) = &b.result else {
            bad.push(format!("{} {}: no layout", cases[b.case].name, b.kind));
            continue;
        };
        let n = cases[b.case].graph.n();
        let report = check_bounds(&c.layout, c.ell, n);
        if !report.pass {
            bad.push(format!("{} {}: {:?}", cases[b.case].name, b.kind, report.breaches));
        }
        if report.bound > 0 {
            tightest = tightest.max(report.channel_count as f64 / report.bound as f64);
        }
    }
    if bad.is_empty() {
        Ok(format!("all {} layouts within w·ℓ·⌊log₂n⌋ and class budgets, max usage {:.0}%", built.len(), 100.0 * tightest))
    } else {
        Err(bad.join("; "))
    }
}

fn planar_fast_path(cases: &[Case], built: &[Built]) -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (i, case) in cases.iter().enumerate() {
        let Some(rot) = &case.rotation else { continue };
        checked += 1;
        let g = &case.graph;
        let tree = bfs_tree(g, 0).unwrap();
        match planar_two_path_separator(g, rot, &tree.layering, &tree) {
            Err(e) => bad.push(format!("{}: {e}", case.name)),
            Ok(cert) => {
                if cert.max_per_layer() > 2 {
                    bad.push(format!("{}: separator has {} vertices in one layer", case.name, cert.max_per_layer()));
                }
                if !verify_separator(g, &tree.layering, &cert).is_empty() {
                    bad.push(format!("{}: certificate rejected", case.name));
                }
            }
        }
        for b in built.iter().filter(|b| b.case == i) {
            let Ok(c) = &b.result else { continue };
            let cap = 2 * b.kind.width_factor() * floor_log2(g.n());
            if c.layout.channel_count() > cap {
                bad.push(format!("{} {}: {} channels > {cap}", case.name, b.kind, c.layout.channel_count()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{checked} plane graphs: ≤ 2 per layer, stacks ≤ 10⌊log₂n⌋, queues ≤ 6⌊log₂n⌋"))
    } else {
        Err(format!("{checked} plane graphs; {}", bad.join("; ")))
    }
}

fn oracle_consistency() -> Verdict {
    let mut bad = Vec::new();
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 1..=6 {
        for (i, g) in connected_graphs(n).unwrap().into_iter().enumerate() {
            graphs.push((format!("connected n={n} #{i}"), g));
        }
    }
    graphs.push(("K4".into(), complete(4)));
    graphs.push(("K5".into(), complete(5)));
    graphs.push(("C4".into(), cycle(4)));
    for (name, g) in &graphs {
        let layering = bfs_layering(g, 0).unwrap();
        for kind in KINDS {
            let reduced = min_layout_number(kind, g, Enumeration::Reduced).unwrap().value;
            let full = min_layout_number(kind, g, Enumeration::Full).unwrap().value;
            if reduced != full {
                bad.push(format!("{name} {kind}: reduced {reduced} vs full {full}"));
            }
            let c = construct(kind, g, &layering, &ExactProvider::default(), None).unwrap();
            if reduced > c.layout.channel_count() {
                bad.push(format!("{name} {kind}: optimum {reduced} above construction {}", c.layout.channel_count()));
            }
        }
    }
    let natural: Vec<usize> = (0..4).collect();
    let examples = [
        ("C4 natural order stacks", fixed_order_stack_number(&cycle(4), &natural).unwrap(), 1),
        ("K4 natural order stacks", fixed_order_stack_number(&complete(4), &natural).unwrap(), 2),
        ("K5 stack number", min_stack_number(&complete(5)).unwrap().value, 3),
    ];
    for (what, got, want) in examples {
        if got != want {
            bad.push(format!("{what}: {got}, expected {want}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} graphs, both kinds; C4→1, K4→2, K5→3 reproduced", graphs.len()))
    } else {
        Err(bad.join("; "))
    }
}

/// Reference feasibility test written without the library's search: every
/// vertex subset, flood fill over adjacency lists.
fn slow_feasible(g: &Graph, layer: &[usize], ell: usize) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    'subsets: for mask in 0u32..(1 << n) {
        let mut per_layer = vec![0; n];
        for v in (0..n).filter(|&v| mask >> v & 1 == 1) {
            per_layer[layer[v]] += 1;
            if per_layer[layer[v]] > ell {
                continue 'subsets;
            }
        }
        let mut seen = mask;
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            seen |= 1 << s;
            let mut stack = vec![s];
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for &w in &adj[v] {
                    if seen >> w & 1 == 0 {
                        seen |= 1 << w;
                        stack.push(w);
                    }
                }
            }
            if 2 * size > n {
                continue 'subsets;
            }
        }
        return true;
    }
    false
}

fn separator_correctness(cases: &[Case]) -> Verdict {
    let mut graphs: Vec<Graph> = (1..=7).flat_map(|n| connected_graphs(n).unwrap()).collect();
    for seed in 0..200u64 {
        let p = [0.2, 0.3, 0.45, 0.6][seed as usize % 4];
        graphs.push(random_connected_graph(7 + seed as usize % 2, p, seed));
    }
    graphs.extend(cases.iter().filter(|c| c.graph.n() <= 8).map(|c| c.graph.clone()));
    let mut bad = Vec::new();
    let mut triples = 0;
    for g in &graphs {
        for root in 0..g.n() {
            let layering = bfs_layering(g, root).unwrap();
            for ell in 0..=3 {
                triples += 1;
                let found = find_layered_separator_exact(g, &layering, ell).unwrap();
                if found.is_some() != slow_feasible(g, layering.as_slice(), ell) {
                    bad.push(format!("{:?} root {root} ℓ={ell}", g.edges()));
                }
                if let Some(cert) = found {
                    if cert.max_per_layer() > ell || !verify_separator(g, &layering, &cert).is_empty() {
                        bad.push(format!("{:?} root {root} ℓ={ell}: bad certificate", g.edges()));
                    }
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{} graphs, {triples} (graph, layering, ℓ) triples agree", graphs.len()))
    } else {
        Err(format!("{} disagreements, first: {}", bad.len(), bad[0]))
    }
}

fn binary(dir: &Path, args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_layersep"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    if code != 0 {
        return Err(format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok((out.stdout, code))
}

fn log_growth() -> Verdict {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let (csv, _) = binary(dir.path(), &["bench", "grid", "4,8,16,32", "--separator", "planar", "--kind", "stack"])?;
    let csv = String::from_utf8(csv).map_err(|e| e.to_string())?;
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).ok_or(format!("no {name} column"));
    let (n_col, used_col) = (col("n")?, col("channels_used")?);
    let mut bad = Vec::new();
    let mut series = Vec::new();
    let mut prev = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let n: usize = f[n_col].parse().map_err(|_| format!("bad row {line}"))?;
        let used: usize = f[used_col].parse().map_err(|_| format!("bad row {line}"))?;
        let cap = 10 * floor_log2(n);
        if used < prev {
            bad.push(format!("n={n}: {used} < previous {prev}"));
        }
        if used > cap {
            bad.push(format!("n={n}: {used} > {cap}"));
        }
        series.push(format!("{n}:{used}/{cap}"));
        prev = used;
    }
    if series.len() != 4 {
        bad.push(format!("expected 4 rows, got {}", series.len()));
    }
    if bad.is_empty() {
        Ok(format!("n:channels/cap {}", series.join(" ")))
    } else {
        Err(bad.join("; "))
    }
}

fn determinism() -> Verdict {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let d = dir.path();
    binary(d, &["gen", "triangulation", "40", "--seed", "7", "-o", "t.txt", "--embedding", "t.rot"])?;
    binary(d, &["gen", "map", "6", "--seed", "2", "-o", "m.txt", "--layering", "m.lay"])?;
    binary(d, &["gen", "grid", "9", "-o", "g.txt", "--embedding", "g.rot"])?;
    let runs: [&[&str]; 3] = [
        &["layout", "t.txt", "--embedding", "t.rot", "--bfs-root", "3", "--kind", "stack"],
        &["layout", "m.txt", "--layering", "m.lay", "--kind", "queue"],
        &["layout", "g.txt", "--embedding", "g.rot", "--kind", "stack", "--separator", "planar"],
    ];
    let mut bad = Vec::new();
    for args in runs {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let svg = format!("out{attempt}.svg");
            let mut a = args.to_vec();
            a.extend(["--svg", &svg]);
            let (json, _) = binary(d, &a)?;
            let svg = std::fs::read(d.join(&svg)).map_err(|e| e.to_string())?;
            outputs.push((json, svg));
        }
        if outputs[0].0 != outputs[1].0 {
            bad.push(format!("{}: JSON differs", args[1]));
        }
        if outputs[0].1 != outputs[1].1 {
            bad.push(format!("{}: SVG differs", args[1]));
        }
    }
    if bad.is_empty() {
        Ok("3 inputs, JSON and SVG byte-identical across runs".into())
    } else {
        Err(bad.join("; "))
    }
}

fn report(id: usize, title: &str, verdict: &Verdict) -> bool {
    match verdict {
        Ok(detail) => println!("[PASS] {id}. {title}: {detail}"),
        Err(detail) => println!("[FAIL] {id}. {title}: {detail}"),
    }
    verdict.is_ok()
}

fn main() -> ExitCode {
    let cases = corpus();
    let start = Instant::now();
    let built = build_all(&cases);
    let v1 = validity(&cases, &built, start.elapsed());
    let results = [
        report(1, "validity suite", &v1),
        report(2, "bound suite", &bounds(&cases, &built)),
        report(3, "planar fast path", &planar_fast_path(&cases, &built)),
        report(4, "oracle consistency", &oracle_consistency()),
        report(5, "separator correctness", &separator_correctness(&cases)),
        report(6, "log-growth smoke check", &log_growth()),
        report(7, "determinism", &determinism()),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
