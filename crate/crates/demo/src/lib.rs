//! WebAssembly bindings for the browser page in `www/`.
//!
//! Each exported function takes plain strings and numbers and returns a JSON
//! string (or an SVG document), so the page needs no bundler. The pure
//! functions in this crate are what the bindings call, and they are tested
//! natively.

use std::fmt::Write as _;

use layersep::bench::{build, default_choice, instance, Family, Instance};
use layersep::layout::{channel_bound, LayoutKind};
use layersep::oracle::{min_layout_number, Enumeration};
use layersep::render::arc_diagram_svg;
use layersep::verify::{check_layer_by_layer, check_validity};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest graph the page will build; beyond this the SVG stops being readable.
pub const MAX_VERTICES: usize = 400;

#[derive(Debug, Serialize)]
pub struct LayoutSummary {
    pub n: usize,
    pub m: usize,
    pub separator: &'static str,
    pub ell: usize,
    pub channels: usize,
    pub bound: usize,
    pub depth: usize,
    pub valid: bool,
    pub layer_by_layer: bool,
    pub svg: String,
}

#[derive(Debug, Serialize)]
pub struct OptimumSummary {
    pub n: usize,
    pub m: usize,
    pub optimum: usize,
    pub constructed: usize,
    pub svg: String,
}

fn parse_kind(kind: &str) -> Result<LayoutKind, String> {
    match kind {
        "stack" => Ok(LayoutKind::Stack),
        "queue" => Ok(LayoutKind::Queue),
        _ => Err(format!("unknown layout kind {kind:?}")),
    }
}

fn make_instance(family: &str, size: usize, seed: u64) -> Result<Instance, String> {
    let family: Family = family.parse().map_err(|e: layersep::Error| e.to_string())?;
    let inst = instance(family, size, seed).map_err(|e| e.to_string())?;
    if inst.graph.n() > MAX_VERTICES {
        return Err(format!(
            "{} vertices is more than the demo draws (at most {MAX_VERTICES})",
            inst.graph.n()
        ));
    }
    Ok(inst)
}

/// Builds the separator layout of a generated graph and draws it.
pub fn layout_summary(family: &str, size: usize, kind: &str, seed: u64) -> Result<LayoutSummary, String> {
    let kind = parse_kind(kind)?;
    let inst = make_instance(family, size, seed)?;
    let choice = default_choice(&inst);
    let (layering, c) = build(&inst, kind, choice).map_err(|e| e.to_string())?;
    let g = &inst.graph;
    Ok(LayoutSummary {
        n: g.n(),
        m: g.m(),
        separator: if inst.rotation.is_some() { "planar" } else { "exact" },
        ell: c.ell,
        channels: c.layout.channel_count(),
        bound: channel_bound(kind, c.ell, g.n()),
        depth: c.decomposition.height(),
        valid: check_validity(g, &c.layout).is_empty(),
        layer_by_layer: check_layer_by_layer(c.layout.order(), &layering).is_empty(),
        svg: arc_diagram_svg(g, &c.layout, Some(&layering)),
    })
}

/// Brute-force optimum over all vertex orders next to the constructed count.
pub fn optimum_summary(family: &str, size: usize, kind: &str, seed: u64) -> Result<OptimumSummary, String> {
    let kind = parse_kind(kind)?;
    let inst = make_instance(family, size, seed)?;
    let g = &inst.graph;
    let best = min_layout_number(kind, g, Enumeration::Reduced).map_err(|e| e.to_string())?;
    let (_, c) = build(&inst, kind, default_choice(&inst)).map_err(|e| e.to_string())?;
    Ok(OptimumSummary {
        n: g.n(),
        m: g.m(),
        optimum: best.value,
        constructed: c.layout.channel_count(),
        svg: arc_diagram_svg(g, &best.witness, None),
    })
}

/// One point of the growth chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub channels: usize,
    pub bound: usize,
}

/// Channel counts and bounds over a list of family sizes.
pub fn growth_points(family: &str, sizes: &str, kind: &str, seed: u64) -> Result<Vec<GrowthPoint>, String> {
    let kind = parse_kind(kind)?;
    let family: Family = family.parse().map_err(|e: layersep::Error| e.to_string())?;
    let mut points = Vec::new();
    for part in sizes.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let size: usize = part.parse().map_err(|_| format!("bad size {part:?}"))?;
        let inst = instance(family, size, seed).map_err(|e| e.to_string())?;
        let (_, c) = build(&inst, kind, default_choice(&inst)).map_err(|e| e.to_string())?;
        points.push(GrowthPoint {
            n: inst.graph.n(),
            channels: c.layout.channel_count(),
            bound: channel_bound(kind, c.ell, inst.graph.n()),
        });
    }
    if points.is_empty() {
        return Err("no sizes given".into());
    }
    Ok(points)
}

/// Line chart of channels and bound against `n` on a log scale.
pub fn growth_svg(points: &[GrowthPoint]) -> String {
    const W: f64 = 520.0;
    const H: f64 = 300.0;
    const PAD: f64 = 44.0;
    let lx = |n: usize| (n.max(1) as f64).log2();
    let (x0, x1) = points
        .iter()
        .map(|p| lx(p.n))
        .fold((f64::MAX, f64::MIN), |(a, b), x| (a.min(x), b.max(x)));
    let span = if x1 > x0 { x1 - x0 } else { 1.0 };
    let top = points.iter().map(|p| p.bound.max(p.channels)).max().unwrap_or(1).max(1) as f64;
    let px = |n: usize| PAD + (lx(n) - x0) / span * (W - 2.0 * PAD);
    let py = |v: usize| H - PAD - v as f64 / top * (H - 2.0 * PAD);
    let line = |f: &dyn Fn(&GrowthPoint) -> usize| {
        points
            .iter()
            .map(|p| format!("{:.1},{:.1}", px(p.n), py(f(p))))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<path d="M{PAD},{PAD} V{b} H{r}" fill="none" stroke="#444"/>"##,
        b = H - PAD,
        r = W - PAD
    );
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-dasharray="5 3"/>"##,
        line(&|p| p.bound)
    );
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        line(&|p| p.channels)
    );
    for p in points {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.1}" cy="{:.1}" r="3" fill="#1f77b4"><title>n = {}: {} channels, bound {}</title></circle>"##,
            px(p.n),
            py(p.channels),
            p.n,
            p.channels,
            p.bound
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            px(p.n),
            H - PAD + 16.0,
            p.n
        );
    }
    let _ = writeln!(s, r#"<text x="{PAD}" y="{:.1}" text-anchor="end" dx="-4">{top}</text>"#, PAD + 4.0);
    let _ = writeln!(s, r#"<text x="{PAD}" y="{:.1}" text-anchor="end" dx="-4">0</text>"#, H - PAD + 4.0);
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">n (log scale)</text>"#, W / 2.0, H - 8.0);
    let _ = writeln!(s, r##"<text x="{:.1}" y="18" fill="#1f77b4">channels used</text>"##, PAD + 8.0);
    let _ = writeln!(s, r##"<text x="{:.1}" y="18" fill="#d62728">bound</text>"##, PAD + 120.0);
    s.push_str("</svg>\n");
    s
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

/// JSON [`LayoutSummary`] for the "build" panel.
#[wasm_bindgen(js_name = buildLayout)]
pub fn build_layout(family: &str, size: usize, kind: &str, seed: u64) -> Result<String, JsValue> {
    to_js(layout_summary(family, size, kind, seed))
}

/// JSON [`OptimumSummary`] for the "optimum" panel.
#[wasm_bindgen(js_name = compareOptimum)]
pub fn compare_optimum(family: &str, size: usize, kind: &str, seed: u64) -> Result<String, JsValue> {
    to_js(optimum_summary(family, size, kind, seed))
}

/// SVG chart for the "growth" panel.
#[wasm_bindgen(js_name = growthChart)]
pub fn growth_chart(family: &str, sizes: &str, kind: &str, seed: u64) -> Result<String, JsValue> {
    growth_points(family, sizes, kind, seed)
        .map(|p| growth_svg(&p))
        .map_err(|e| JsValue::from_str(&e))
}
