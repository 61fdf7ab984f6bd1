//! Independent checks for linear layouts.
//!
//! Validity only looks at vertex positions and flat channel numbers; the
//! structured channel ids are consulted by [`check_bounds`] alone.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph, Layering};
use crate::layout::{channel_bound, ChannelClass, LayoutKind, LinearLayout};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Crossing { channel: usize, first: Edge, second: Edge },
    Nesting { channel: usize, first: Edge, second: Edge },
    /// `after` sits in a lower layer than `before` but follows it.
    LayerOrder { before: usize, after: usize },
    Bound { detail: String },
    Coverage { reason: String, edge: Option<Edge> },
}

/// `a` and `b` strictly interleave: `a0 < b0 < a1 < b1` or the mirror.
fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// One span strictly inside the other.
fn nests(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1)
}

fn coverage(g: &Graph, layout: &LinearLayout) -> Vec<Violation> {
    let mut out = Vec::new();
    if layout.n() != g.n() {
        out.push(Violation::Coverage {
            reason: format!("layout orders {} vertices, graph has {}", layout.n(), g.n()),
            edge: None,
        });
        return out;
    }
    let assigned: Vec<Edge> = layout.assignment().iter().map(|a| a.edge).collect();
    for w in assigned.windows(2) {
        if w[0] == w[1] {
            out.push(Violation::Coverage {
                reason: "edge assigned more than once".into(),
                edge: Some(w[0]),
            });
        }
    }
    let assigned_set: BTreeSet<Edge> = assigned.iter().copied().collect();
    for e in g.edges() {
        if !assigned_set.contains(e) {
            out.push(Violation::Coverage {
                reason: "edge has no channel".into(),
                edge: Some(*e),
            });
        }
    }
    for &a in &assigned_set {
        if !g.has_edge(a.0, a.1) {
            out.push(Violation::Coverage {
                reason: "assigned edge is not in the graph".into(),
                edge: Some(a),
            });
        }
    }
    out
}

fn pairwise(g: &Graph, layout: &LinearLayout, conflict: fn((usize, usize), (usize, usize)) -> bool, stack: bool) -> Vec<Violation> {
    let mut out = coverage(g, layout);
    if layout.n() != g.n() {
        return out;
    }
    let mut channels: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for a in layout.assignment() {
        if a.edge.1 < g.n() {
            channels.entry(a.channel).or_default().push(a.edge);
        }
    }
    for (&channel, edges) in &channels {
        let spans: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (p, q) = (layout.position(u), layout.position(v));
                (p.min(q), p.max(q))
            })
            .collect();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if conflict(spans[i], spans[j]) {
                    let (first, second) = (edges[i], edges[j]);
                    out.push(if stack {
                        Violation::Crossing { channel, first, second }
                    } else {
                        Violation::Nesting { channel, first, second }
                    });
                }
            }
        }
    }
    out
}

/// Coverage problems plus one violation per crossing same-channel pair.
pub fn check_stack_validity(g: &Graph, layout: &LinearLayout) -> Vec<Violation> {
    pairwise(g, layout, crosses, true)
}

/// Coverage problems plus one violation per nesting same-channel pair.
pub fn check_queue_validity(g: &Graph, layout: &LinearLayout) -> Vec<Violation> {
    pairwise(g, layout, nests, false)
}

/// Dispatches on the layout's kind.
pub fn check_validity(g: &Graph, layout: &LinearLayout) -> Vec<Violation> {
    match layout.kind() {
        LayoutKind::Stack => check_stack_validity(g, layout),
        LayoutKind::Queue => check_queue_validity(g, layout),
    }
}

/// Reports each vertex placed after some vertex of a higher layer, with the
/// highest such predecessor as witness.
pub fn check_layer_by_layer(order: &[usize], layering: &Layering) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut top: Option<usize> = None;
    for &v in order {
        match top {
            Some(t) if layering.layer(t) > layering.layer(v) => out.push(Violation::LayerOrder { before: t, after: v }),
            Some(t) if layering.layer(t) == layering.layer(v) => {}
            _ => top = Some(v),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub pass: bool,
    pub channel_count: usize,
    pub bound: usize,
    pub breaches: Vec<Violation>,
}

/// Total channels against `w·ℓ·⌊log₂ n⌋` and per-depth class budgets of
/// `ℓ` intra-layer and `2ℓ` inter-layer slots.
pub fn check_bounds(layout: &LinearLayout, ell: usize, n: usize) -> BoundReport {
    let kind = layout.kind();
    let bound = channel_bound(kind, ell, n);
    let channel_count = layout.channel_count();
    let mut breaches = Vec::new();
    if channel_count > bound {
        breaches.push(Violation::Bound {
            detail: format!("{channel_count} {kind}s used, bound {}·{ell}·⌊log₂ {n}⌋ = {bound}", kind.width_factor()),
        });
    }
    let mut slots: BTreeMap<(usize, ChannelClass), BTreeSet<usize>> = BTreeMap::new();
    for a in layout.assignment() {
        if let Some(id) = a.id {
            slots.entry((id.depth, id.cls)).or_default().insert(id.slot);
        }
    }
    for ((depth, cls), used) in &slots {
        if !cls.belongs_to(kind) {
            breaches.push(Violation::Bound {
                detail: format!("class {cls:?} at depth {depth} is not a {kind} class"),
            });
            continue;
        }
        let cap = cls.capacity_factor() * ell;
        let over = used.iter().filter(|&&s| s == 0 || s > cap).count();
        if used.len() > cap || over > 0 {
            breaches.push(Violation::Bound {
                detail: format!(
                    "depth {depth} class {cls:?} uses {} slots (max slot {}), budget {cap}",
                    used.len(),
                    used.iter().max().copied().unwrap_or(0)
                ),
            });
        }
    }
    BoundReport {
        pass: breaches.is_empty(),
        channel_count,
        bound,
        breaches,
    }
}
