//! Simple undirected graphs, layerings, and the handful of traversals the
//! layout constructions need.
//!
//! Vertices are dense ids `0..n`. Edges are stored canonically as `(u, v)`
//! with `u < v`, sorted, and mirrored into sorted adjacency lists.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Canonical undirected edge, smaller endpoint first.
pub type Edge = (usize, usize);

#[inline]
pub fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push(canonical(u, v));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, canon))
    }

    /// Like [`Graph::new`] but silently drops duplicate edges.
    pub fn new_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon: Vec<Edge> = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push(canonical(u, v));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self::from_sorted(n, canon))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Parses the text format: first line `n m`, then `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header line \"n m\"".into(),
        })?;
        let nums = parse_usizes(hline, header)?;
        let [n, m] = nums[..] else {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be \"n m\"".into(),
            });
        };
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let nums = parse_usizes(line, l)?;
            let [u, v] = nums[..] else {
                return Err(Error::Parse {
                    line,
                    msg: "edge line must be \"u v\"".into(),
                });
            };
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_usizes(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|e| Error::Parse {
                line,
                msg: format!("{t:?}: {e}"),
            })
        })
        .collect()
}

/// Vertex to layer assignment.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Layering {
    layer_of: Vec<usize>,
}

impl Layering {
    pub fn new(layer_of: Vec<usize>) -> Self {
        Layering { layer_of }
    }

    /// Builds a layering for `g`, requiring the edge-span constraint and
    /// that every layer index up to the maximum is used.
    pub fn for_graph(g: &Graph, layer_of: Vec<usize>) -> Result<Self> {
        if layer_of.len() != g.n() {
            return Err(Error::LayeringSize {
                expected: g.n(),
                got: layer_of.len(),
            });
        }
        let l = Layering { layer_of };
        if let Some(&(u, v)) = validate_layering(g, &l).first() {
            return Err(Error::InvalidLayering(u, v));
        }
        let mut seen = vec![false; l.num_layers()];
        for &i in &l.layer_of {
            seen[i] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::EmptyLayer(i));
        }
        Ok(l)
    }

    #[inline]
    pub fn layer(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.layer_of
    }

    pub fn len(&self) -> usize {
        self.layer_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layer_of.is_empty()
    }

    /// `p + 1`, one past the largest layer index.
    pub fn num_layers(&self) -> usize {
        self.layer_of.iter().max().map_or(0, |&p| p + 1)
    }

    /// The layering seen by a subgraph; indices are kept, so gaps may appear.
    pub fn restrict(&self, map: &VertexSubsetMap) -> Layering {
        Layering {
            layer_of: map.to_parent.iter().map(|&v| self.layer_of[v]).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut layer_of = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() {
                continue;
            }
            layer_of.push(l.parse::<usize>().map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("{l:?}: {e}"),
            })?);
        }
        Ok(Layering { layer_of })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.layer_of {
            let _ = writeln!(out, "{l}");
        }
        out
    }
}

/// Bidirectional id translation between a subgraph and its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubsetMap {
    to_parent: Vec<usize>,
    to_sub: Vec<Option<usize>>,
}

impl VertexSubsetMap {
    pub fn identity(n: usize) -> Self {
        VertexSubsetMap {
            to_parent: (0..n).collect(),
            to_sub: (0..n).map(Some).collect(),
        }
    }

    #[inline]
    pub fn to_parent(&self, v: usize) -> usize {
        self.to_parent[v]
    }

    #[inline]
    pub fn to_sub(&self, parent: usize) -> Option<usize> {
        self.to_sub.get(parent).copied().flatten()
    }

    /// Parent ids in subgraph order (ascending).
    pub fn parent_ids(&self) -> &[usize] {
        &self.to_parent
    }

    pub fn len(&self) -> usize {
        self.to_parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_parent.is_empty()
    }
}

/// BFS spanning tree: parent pointers plus the layering by distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub layering: Layering,
}

/// Breadth-first search from `root`, visiting neighbors in ascending order.
pub fn bfs_tree(g: &Graph, root: usize) -> Result<BfsTree> {
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut queue = VecDeque::from([root]);
    dist[root] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    if let Some(unreached) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Disconnected { root, unreached });
    }
    Ok(BfsTree {
        root,
        parent,
        layering: Layering { layer_of: dist },
    })
}

/// Layers by BFS distance from `root`. Fails on disconnected graphs.
pub fn bfs_layering(g: &Graph, root: usize) -> Result<Layering> {
    bfs_tree(g, root).map(|t| t.layering)
}

/// Every edge whose endpoints lie two or more layers apart.
pub fn validate_layering(g: &Graph, layering: &Layering) -> Vec<Edge> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| layering.layer(u).abs_diff(layering.layer(v)) > 1)
        .collect()
}

/// Subgraph induced by `subset`. Subgraph ids follow ascending parent id.
pub fn induced_subgraph(g: &Graph, subset: &[usize]) -> Result<(Graph, VertexSubsetMap)> {
    let mut to_parent = subset.to_vec();
    to_parent.sort_unstable();
    to_parent.dedup();
    let mut to_sub = vec![None; g.n()];
    for (i, &v) in to_parent.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        to_sub[v] = Some(i);
    }
    let mut edges = Vec::new();
    for (i, &v) in to_parent.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(j) = to_sub[w] {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();
    let sub = Graph::from_sorted(to_parent.len(), edges);
    Ok((sub, VertexSubsetMap { to_parent, to_sub }))
}

/// Connected components, each sorted ascending, ordered by minimum vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    components_avoiding(g, &vec![false; g.n()])
}

/// Components of `g` minus the vertices flagged in `removed`.
pub fn components_avoiding(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || connected_components(g).len() == 1
}
