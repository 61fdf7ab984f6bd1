//! Linear layouts and the recursive separator-based construction shared by
//! the stack and queue variants.
//!
//! The construction first computes a separator decomposition: the root
//! separator `S`, then recursively the components of `G - S`, ordered by
//! their smallest vertex. It then merges per-layer orders bottom-up and
//! gives every edge incident to a separator a channel determined by the
//! recursion depth, the edge class and the position of its separator
//! endpoint within `ρ_i` (the separator vertices of layer `i`, ascending).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical, components_avoiding, induced_subgraph, validate_layering, Edge, Graph, Layering};
use crate::separator::{verify_separator, SeparatorCert, SeparatorProvider};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutKind {
    Stack,
    Queue,
}

impl LayoutKind {
    /// Channels available per recursion depth, in units of ℓ.
    pub fn width_factor(self) -> usize {
        match self {
            LayoutKind::Stack => 5,
            LayoutKind::Queue => 3,
        }
    }

    pub fn classes(self) -> &'static [ChannelClass] {
        match self {
            LayoutKind::Stack => &[ChannelClass::Intra, ChannelClass::EvenInter, ChannelClass::OddInter],
            LayoutKind::Queue => &[ChannelClass::Intra, ChannelClass::Inter],
        }
    }
}

impl std::fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LayoutKind::Stack => "stack",
            LayoutKind::Queue => "queue",
        })
    }
}

impl std::str::FromStr for LayoutKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stack" => Ok(LayoutKind::Stack),
            "queue" => Ok(LayoutKind::Queue),
            _ => Err(Error::InvalidArgument(format!("unknown layout kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChannelClass {
    Intra,
    EvenInter,
    OddInter,
    Inter,
}

impl ChannelClass {
    /// Number of slots of this class at one depth, in units of ℓ.
    pub fn capacity_factor(self) -> usize {
        match self {
            ChannelClass::Intra => 1,
            _ => 2,
        }
    }

    pub fn belongs_to(self, kind: LayoutKind) -> bool {
        kind.classes().contains(&self)
    }

    fn offset_factor(self) -> usize {
        match self {
            ChannelClass::Intra => 0,
            ChannelClass::EvenInter | ChannelClass::Inter => 1,
            ChannelClass::OddInter => 3,
        }
    }
}

/// Structured channel: recursion depth, edge class, and 1-based slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChannelId {
    pub depth: usize,
    pub cls: ChannelClass,
    pub slot: usize,
}

impl ChannelId {
    pub fn new(depth: usize, cls: ChannelClass, slot: usize) -> Self {
        ChannelId { depth, cls, slot }
    }

    /// `depth * w·ℓ + offset(cls)·ℓ + slot - 1`, injective while slots stay
    /// within their class capacity.
    pub fn flatten(&self, kind: LayoutKind, ell: usize) -> usize {
        self.depth * kind.width_factor() * ell + self.cls.offset_factor() * ell + self.slot - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeAssignment {
    pub edge: Edge,
    pub channel: usize,
    pub id: Option<ChannelId>,
}

/// Vertex order plus an edge partition into stacks or queues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLayout {
    kind: LayoutKind,
    order: Vec<usize>,
    position: Vec<usize>,
    assignment: Vec<EdgeAssignment>,
}

impl LinearLayout {
    /// Fails unless `order` is a permutation of `0..order.len()`.
    pub fn new(kind: LayoutKind, order: Vec<usize>, mut assignment: Vec<EdgeAssignment>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if position[v] != usize::MAX {
                return Err(Error::InvalidArgument(format!("vertex {v} appears twice in the order")));
            }
            position[v] = i;
        }
        for a in &mut assignment {
            a.edge = canonical(a.edge.0, a.edge.1);
        }
        assignment.sort_by_key(|a| a.edge);
        Ok(LinearLayout {
            kind,
            order,
            position,
            assignment,
        })
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn assignment(&self) -> &[EdgeAssignment] {
        &self.assignment
    }

    pub fn channel_of(&self, u: usize, v: usize) -> Option<usize> {
        let e = canonical(u, v);
        self.assignment
            .binary_search_by_key(&e, |a| a.edge)
            .ok()
            .map(|i| self.assignment[i].channel)
    }

    /// Number of distinct channels used.
    pub fn channel_count(&self) -> usize {
        self.assignment.iter().map(|a| a.channel).collect::<BTreeSet<_>>().len()
    }

    pub fn to_json(&self) -> LayoutJson {
        LayoutJson {
            kind: self.kind,
            order: self.order.clone(),
            assignment: self
                .assignment
                .iter()
                .map(|a| AssignmentJson {
                    u: a.edge.0,
                    v: a.edge.1,
                    depth: a.id.map(|c| c.depth),
                    cls: a.id.map(|c| c.cls),
                    slot: a.id.map(|c| c.slot),
                    flat: a.channel,
                })
                .collect(),
            channels: self.channel_count(),
        }
    }

    pub fn from_json(json: &LayoutJson) -> Result<Self> {
        let assignment = json
            .assignment
            .iter()
            .map(|a| {
                let id = match (a.depth, a.cls, a.slot) {
                    (Some(depth), Some(cls), Some(slot)) => Some(ChannelId { depth, cls, slot }),
                    _ => None,
                };
                EdgeAssignment {
                    edge: (a.u, a.v),
                    channel: a.flat,
                    id,
                }
            })
            .collect();
        LinearLayout::new(json.kind, json.order.clone(), assignment)
    }
}

/// Serialized layout: `{kind, order, assignment:[{u,v,depth,cls,slot,flat}], channels}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub kind: LayoutKind,
    pub order: Vec<usize>,
    pub assignment: Vec<AssignmentJson>,
    pub channels: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cls: Option<ChannelClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<usize>,
    pub flat: usize,
}

/// Per-layer vertex orders, keyed by layer index.
pub type LayeredOrder = BTreeMap<usize, Vec<usize>>;

pub fn flatten_order(layers: &LayeredOrder) -> Vec<usize> {
    layers.values().flatten().copied().collect()
}

/// Per layer: `ρ_i`, then the children's blocks for that layer, ascending
/// when `descending_on_odd` is off or the layer is even, descending otherwise.
pub(crate) fn merge_layers(rho: &LayeredOrder, children: &[LayeredOrder], descending_on_odd: bool) -> LayeredOrder {
    let layers: BTreeSet<usize> = rho.keys().chain(children.iter().flat_map(|c| c.keys())).copied().collect();
    let mut out = LayeredOrder::new();
    for i in layers {
        let mut block: Vec<usize> = rho.get(&i).cloned().unwrap_or_default();
        let mut push = |c: &LayeredOrder| {
            if let Some(vs) = c.get(&i) {
                block.extend_from_slice(vs);
            }
        };
        if descending_on_odd && i % 2 == 1 {
            children.iter().rev().for_each(&mut push);
        } else {
            children.iter().for_each(&mut push);
        }
        out.insert(i, block);
    }
    out
}

/// One node of a separator decomposition. Leaves hold a single vertex and
/// an empty certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionNode {
    pub depth: usize,
    pub vertices: Vec<usize>,
    pub cert: SeparatorCert,
    pub children: Vec<usize>,
}

/// Recursion tree of separators, in ids of the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub nodes: Vec<DecompositionNode>,
    /// For each vertex, the node whose separator (or leaf) contains it.
    pub home: Vec<usize>,
}

impl Decomposition {
    /// Largest number of separator vertices any certificate puts in one layer.
    pub fn max_ell(&self) -> usize {
        self.nodes.iter().map(|nd| nd.cert.max_per_layer()).max().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(|nd| nd.depth + 1).max().unwrap_or(0)
    }

    pub fn root(&self) -> Option<&DecompositionNode> {
        self.nodes.first()
    }
}

/// Separator decomposition of `g`. Every certificate is checked before use.
pub fn decompose(g: &Graph, layering: &Layering, provider: &dyn SeparatorProvider) -> Result<Decomposition> {
    if layering.len() != g.n() {
        return Err(Error::LayeringSize {
            expected: g.n(),
            got: layering.len(),
        });
    }
    if let Some(&(u, v)) = validate_layering(g, layering).first() {
        return Err(Error::InvalidLayering(u, v));
    }
    let mut dec = Decomposition {
        nodes: Vec::new(),
        home: vec![usize::MAX; g.n()],
    };
    if g.n() > 0 {
        let all: Vec<usize> = (0..g.n()).collect();
        decompose_rec(g, layering, provider, all, 0, &mut dec)?;
    }
    Ok(dec)
}

fn decompose_rec(
    g: &Graph,
    layering: &Layering,
    provider: &dyn SeparatorProvider,
    vertices: Vec<usize>,
    depth: usize,
    dec: &mut Decomposition,
) -> Result<usize> {
    let id = dec.nodes.len();
    if vertices.len() == 1 {
        dec.home[vertices[0]] = id;
        dec.nodes.push(DecompositionNode {
            depth,
            vertices,
            cert: SeparatorCert::empty(),
            children: Vec::new(),
        });
        return Ok(id);
    }
    let (sub, map) = induced_subgraph(g, &vertices)?;
    let sub_layering = layering.restrict(&map);
    let local = provider.find(&sub, &sub_layering, &map)?;
    let problems = verify_separator(&sub, &sub_layering, &local);
    if !problems.is_empty() {
        return Err(Error::BadCertificate(
            serde_json::to_string(&problems).unwrap_or_else(|_| format!("{problems:?}")),
        ));
    }
    let mut removed = vec![false; sub.n()];
    for &v in &local.separator {
        removed[v] = true;
    }
    let components: Vec<Vec<usize>> = components_avoiding(&sub, &removed)
        .into_iter()
        .map(|c| c.into_iter().map(|v| map.to_parent(v)).collect())
        .collect();
    let cert = local.to_parent(&map);
    for &v in &cert.separator {
        dec.home[v] = id;
    }
    dec.nodes.push(DecompositionNode {
        depth,
        vertices,
        cert,
        children: Vec::new(),
    });
    let mut children = Vec::with_capacity(components.len());
    for comp in components {
        children.push(decompose_rec(g, layering, provider, comp, depth + 1, dec)?);
    }
    dec.nodes[id].children = children;
    Ok(id)
}

/// Channel for an edge with at least one endpoint in the node's separator.
pub(crate) fn assign_separator_edge(
    kind: LayoutKind,
    edge: Edge,
    layering: &Layering,
    cert: &SeparatorCert,
    depth: usize,
) -> Result<ChannelId> {
    let (a, b) = edge;
    let (la, lb) = (layering.layer(a), layering.layer(b));
    if la.abs_diff(lb) > 1 {
        return Err(Error::InvalidLayering(a, b));
    }
    let (ra, rb) = (cert.rank(a, la), cert.rank(b, lb));
    if la == lb {
        // Separator vertices lead their layer, so the earlier endpoint is
        // the separator one, or the lower-ranked when both are.
        let x = match (ra, rb) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => return Err(Error::EdgeNotIncidentToSeparator(a, b)),
        };
        return Ok(ChannelId::new(depth, ChannelClass::Intra, x));
    }
    let ((lower, rl), (_, ru)) = if la < lb { ((la, ra), (lb, rb)) } else { ((lb, rb), (la, ra)) };
    let slot = match (rl, ru) {
        (Some(x), _) => x,
        (None, Some(y)) => cert.ell + y,
        (None, None) => return Err(Error::EdgeNotIncidentToSeparator(a, b)),
    };
    let cls = match kind {
        LayoutKind::Queue => ChannelClass::Inter,
        LayoutKind::Stack if lower % 2 == 0 => ChannelClass::EvenInter,
        LayoutKind::Stack => ChannelClass::OddInter,
    };
    Ok(ChannelId::new(depth, cls, slot))
}

/// Builds the layout described by a decomposition with channel budget `ell`.
pub fn layout_from_decomposition(
    kind: LayoutKind,
    g: &Graph,
    layering: &Layering,
    dec: &Decomposition,
    ell: usize,
) -> Result<LinearLayout> {
    if dec.max_ell() > ell {
        return Err(Error::BadCertificate(format!(
            "a separator puts {} vertices in one layer, budget is {ell}",
            dec.max_ell()
        )));
    }
    let mut assignment = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        let (hu, hv) = (&dec.nodes[dec.home[u]], &dec.nodes[dec.home[v]]);
        let owner = if hu.depth <= hv.depth { hu } else { hv };
        let mut cert = owner.cert.clone();
        cert.ell = ell;
        let id = assign_separator_edge(kind, (u, v), layering, &cert, owner.depth)?;
        assignment.push(EdgeAssignment {
            edge: (u, v),
            channel: id.flatten(kind, ell),
            id: Some(id),
        });
    }
    let order = match dec.root() {
        Some(_) => flatten_order(&node_order(kind, layering, dec, 0)),
        None => Vec::new(),
    };
    LinearLayout::new(kind, order, assignment)
}

fn node_order(kind: LayoutKind, layering: &Layering, dec: &Decomposition, id: usize) -> LayeredOrder {
    let node = &dec.nodes[id];
    if node.children.is_empty() && node.cert.separator.is_empty() {
        return node.vertices.iter().map(|&v| (layering.layer(v), vec![v])).collect();
    }
    let children: Vec<LayeredOrder> = node
        .children
        .iter()
        .map(|&c| node_order(kind, layering, dec, c))
        .collect();
    merge_layers(&node.cert.per_layer, &children, kind == LayoutKind::Stack)
}

/// Result of a construction together with the separator bound it used.
#[derive(Debug, Clone)]
pub struct Construction {
    pub layout: LinearLayout,
    pub ell: usize,
    pub decomposition: Decomposition,
}

/// Runs the construction, taking ℓ from `ell` or, when absent, from the
/// widest certificate the provider returned.
pub fn construct(
    kind: LayoutKind,
    g: &Graph,
    layering: &Layering,
    provider: &dyn SeparatorProvider,
    ell: Option<usize>,
) -> Result<Construction> {
    let decomposition = decompose(g, layering, provider)?;
    let widest = decomposition.max_ell();
    let ell = ell.unwrap_or(widest);
    if widest > ell {
        return Err(Error::BadCertificate(format!(
            "a separator has {widest} vertices in one layer, more than ℓ = {ell}"
        )));
    }
    let layout = layout_from_decomposition(kind, g, layering, &decomposition, ell)?;
    Ok(Construction {
        layout,
        ell,
        decomposition,
    })
}

/// `⌊log₂ n⌋`, zero for `n <= 1`.
pub fn floor_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - 1 - n.leading_zeros()) as usize
    }
}

/// Channel bound `w·ℓ·⌊log₂ n⌋` with `w` = 5 for stacks and 3 for queues.
pub fn channel_bound(kind: LayoutKind, ell: usize, n: usize) -> usize {
    kind.width_factor() * ell * floor_log2(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_is_injective_within_budget() {
        for kind in [LayoutKind::Stack, LayoutKind::Queue] {
            for ell in 1..4 {
                let mut seen = BTreeSet::new();
                for depth in 0..4 {
                    for &cls in kind.classes() {
                        for slot in 1..=cls.capacity_factor() * ell {
                            let f = ChannelId::new(depth, cls, slot).flatten(kind, ell);
                            assert!(f < (depth + 1) * kind.width_factor() * ell);
                            assert!(seen.insert(f));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn floor_log2_values() {
        let got: Vec<_> = [0, 1, 2, 3, 4, 15, 16, 17, 1024].iter().map(|&n| floor_log2(n)).collect();
        assert_eq!(got, vec![0, 0, 1, 1, 2, 3, 4, 4, 10]);
        assert_eq!(channel_bound(LayoutKind::Stack, 2, 16), 40);
        assert_eq!(channel_bound(LayoutKind::Queue, 2, 16), 24);
    }

    #[test]
    fn layout_rejects_bad_orders() {
        assert!(LinearLayout::new(LayoutKind::Stack, vec![0, 0], vec![]).is_err());
        assert!(LinearLayout::new(LayoutKind::Stack, vec![0, 2], vec![]).is_err());
    }

    #[test]
    fn json_shape() {
        let layout = LinearLayout::new(
            LayoutKind::Stack,
            vec![1, 0],
            vec![EdgeAssignment {
                edge: (1, 0),
                channel: 2,
                id: Some(ChannelId::new(0, ChannelClass::EvenInter, 2)),
            }],
        )
        .unwrap();
        let json = serde_json::to_string(&layout.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"stack","order":[1,0],"assignment":[{"u":0,"v":1,"depth":0,"cls":"EVEN_INTER","slot":2,"flat":2}],"channels":1}"#
        );
        let back: LayoutJson = serde_json::from_str(&json).unwrap();
        assert_eq!(LinearLayout::from_json(&back).unwrap(), layout);
    }
}
