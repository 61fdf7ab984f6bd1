//! SVG arc diagrams: vertices on a horizontal line in layout order, each
//! edge a semicircle above it, coloured by channel.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::graph::{Graph, Layering};
use crate::layout::{ChannelClass, ChannelId, LinearLayout};

const SPACING: f64 = 36.0;
const MARGIN: f64 = 24.0;
const LEGEND_ROW: f64 = 16.0;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
    "#393b79", "#e7ba52",
];

/// Stable colour for a flat channel number.
pub fn channel_colour(channel: usize) -> String {
    match PALETTE.get(channel) {
        Some(c) => (*c).to_string(),
        None => format!("hsl({}, 65%, 45%)", (channel * 137) % 360),
    }
}

fn label(id: Option<ChannelId>) -> String {
    match id {
        None => String::new(),
        Some(id) => {
            let cls = match id.cls {
                ChannelClass::Intra => "intra",
                ChannelClass::EvenInter => "even",
                ChannelClass::OddInter => "odd",
                ChannelClass::Inter => "inter",
            };
            format!(" (depth {}, {cls} {})", id.depth, id.slot)
        }
    }
}

/// Renders `layout` of `g`. With a layering, layer boundaries are drawn as
/// dashed vertical lines.
pub fn arc_diagram_svg(g: &Graph, layout: &LinearLayout, layering: Option<&Layering>) -> String {
    let n = layout.n();
    let x = |pos: usize| MARGIN + SPACING * pos as f64;
    let max_span = layout
        .assignment()
        .iter()
        .map(|a| layout.position(a.edge.0).abs_diff(layout.position(a.edge.1)))
        .max()
        .unwrap_or(0);
    let axis = MARGIN + SPACING * max_span as f64 / 2.0 + 4.0;
    let mut channels: BTreeMap<usize, Option<ChannelId>> = BTreeMap::new();
    for a in layout.assignment() {
        channels.entry(a.channel).or_insert(a.id);
    }
    let width = (2.0 * MARGIN + SPACING * n.saturating_sub(1) as f64).max(260.0);
    let legend_top = axis + 34.0;
    let height = legend_top + LEGEND_ROW * channels.len() as f64 + MARGIN;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(
        s,
        "<title>{} layout: {} vertices, {} edges, {} channels</title>",
        layout.kind(),
        g.n(),
        g.m(),
        channels.len()
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if let Some(layering) = layering {
        for pos in 1..n {
            let (a, b) = (layout.order()[pos - 1], layout.order()[pos]);
            if layering.layer(a) != layering.layer(b) {
                let bx = (x(pos - 1) + x(pos)) / 2.0;
                let _ = writeln!(
                    s,
                    r##"<line x1="{bx:.1}" y1="{:.1}" x2="{bx:.1}" y2="{:.1}" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##,
                    MARGIN / 2.0,
                    axis + 24.0
                );
            }
        }
    }

    let _ = writeln!(
        s,
        r##"<line x1="{:.1}" y1="{axis:.1}" x2="{:.1}" y2="{axis:.1}" stroke="#444444"/>"##,
        x(0) - 8.0,
        x(n.saturating_sub(1)) + 8.0
    );
    let _ = writeln!(s, r#"<g fill="none" stroke-width="1.6" stroke-opacity="0.85">"#);
    for a in layout.assignment() {
        let (p, q) = (layout.position(a.edge.0), layout.position(a.edge.1));
        let (x1, x2) = (x(p.min(q)), x(p.max(q)));
        let r = (x2 - x1) / 2.0;
        let _ = writeln!(
            s,
            r#"<path d="M {x1:.1} {axis:.1} A {r:.1} {r:.1} 0 0 1 {x2:.1} {axis:.1}" stroke="{}"><title>{}-{} channel {}</title></path>"#,
            channel_colour(a.channel),
            a.edge.0,
            a.edge.1,
            a.channel
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="10" text-anchor="middle">"#);
    for (pos, &v) in layout.order().iter().enumerate() {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.1}" cy="{axis:.1}" r="3.5" fill="#222222"/><text x="{:.1}" y="{:.1}">{v}</text>"##,
            x(pos),
            x(pos),
            axis + 16.0
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="11">"#);
    for (row, (&ch, &id)) in channels.iter().enumerate() {
        let y = legend_top + LEGEND_ROW * row as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN:.1}" y="{:.1}" width="18" height="4" fill="{}"/><text x="{:.1}" y="{:.1}">{} {ch}{}</text>"#,
            y - 4.0,
            channel_colour(ch),
            MARGIN + 26.0,
            y,
            layout.kind(),
            label(id)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
