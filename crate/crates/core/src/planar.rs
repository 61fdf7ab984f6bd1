//! Combinatorial embeddings and the two-path layered separator for planar
//! graphs.
//!
//! With a BFS tree `T` of a connected plane graph, every root path of `T`
//! meets each BFS layer at most once. The separator is the union of the two
//! root paths closing a fundamental cycle of `T` in a triangulation of the
//! embedding, so it has at most two vertices per layer. Because the tree
//! belongs to the whole graph, the same paths serve every subgraph met
//! during a recursive construction: the separator of a subgraph is the part
//! of such a cycle lying inside it.
//!
//! Components must be at most half the subgraph, and two paths do not always
//! achieve that. The provider then searches exhaustively for any set with two
//! vertices per layer (small subgraphs only) and finally uses the three root
//! paths of a face, which always works and has three vertices per layer.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{bfs_tree, canonical, components_avoiding, validate_layering, BfsTree, Edge, Graph, Layering, VertexSubsetMap};
use crate::separator::{find_layered_separator_exact, SeparatorCert, SeparatorProvider, EXACT_MAX_VERTICES};

/// Counter-clockwise cyclic order of neighbors around each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(rot: Vec<Vec<usize>>) -> Self {
        RotationSystem { rot }
    }

    pub fn around(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn len(&self) -> usize {
        self.rot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rot.is_empty()
    }

    /// Every rotation must be a permutation of the vertex's neighbors.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.rot.len() != g.n() {
            return Err(Error::BadRotation(format!(
                "{} rotations for {} vertices",
                self.rot.len(),
                g.n()
            )));
        }
        for v in 0..g.n() {
            let mut sorted = self.rot[v].clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(Error::BadRotation(format!(
                    "rotation at vertex {v} is not a permutation of its neighbors"
                )));
            }
        }
        Ok(())
    }

    /// Position of `u` in the rotation at `v`.
    fn index(&self, v: usize, u: usize) -> usize {
        self.rot[v]
            .iter()
            .position(|&w| w == u)
            .expect("rotation validated against the graph")
    }

    /// Face boundary walks. The face to the left of dart `u -> v` continues
    /// with `v -> w`, `w` being the clockwise successor of `u` around `v`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.rot.len();
        let mut used: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for s in 0..n {
            for si in 0..self.rot[s].len() {
                if used[s][si] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut u, mut ui) = (s, si);
                while !used[u][ui] {
                    used[u][ui] = true;
                    face.push(u);
                    let v = self.rot[u][ui];
                    let back = self.index(v, u);
                    let deg = self.rot[v].len();
                    let vi = (back + deg - 1) % deg;
                    u = v;
                    ui = vi;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// `V - E + F` for the embedding, counting one face for an edgeless graph.
    pub fn euler_characteristic(&self, g: &Graph) -> Result<i64> {
        self.validate(g)?;
        let f = if g.m() == 0 { 1 } else { self.faces().len() };
        Ok(g.n() as i64 - g.m() as i64 + f as i64)
    }

    /// Validates the rotations and checks Euler's formula for a connected graph.
    pub fn check_planar(&self, g: &Graph) -> Result<()> {
        if g.n() == 0 {
            return Ok(());
        }
        let euler = self.euler_characteristic(g)?;
        if euler != 2 {
            return Err(Error::NotPlanar { euler });
        }
        Ok(())
    }

    /// One line per vertex listing its neighbors counter-clockwise.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rot = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let mut r = Vec::new();
            for t in l.split_whitespace() {
                r.push(t.parse::<usize>().map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: format!("{t:?}: {e}"),
                })?);
            }
            rot.push(r);
        }
        Ok(RotationSystem { rot })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rot {
            let line: Vec<String> = r.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Chords added fan-style inside every face longer than a triangle.
pub fn fan_chords(rotation: &RotationSystem) -> Vec<Edge> {
    let mut chords = Vec::new();
    for face in rotation.faces() {
        if face.len() <= 3 {
            continue;
        }
        let hub = face[0];
        for &w in &face[2..face.len() - 1] {
            if w != hub {
                chords.push(canonical(hub, w));
            }
        }
    }
    chords.sort_unstable();
    chords.dedup();
    chords
}

fn check_tree(g: &Graph, layering: &Layering, tree: &BfsTree) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidArgument(msg));
    if tree.parent.len() != g.n() || layering.len() != g.n() {
        return bad("BFS tree or layering does not cover the graph".into());
    }
    if let Some(&(u, v)) = validate_layering(g, layering).first() {
        return Err(Error::InvalidLayering(u, v));
    }
    for v in 0..g.n() {
        match tree.parent[v] {
            None if v == tree.root && layering.layer(v) == 0 => {}
            None => return bad(format!("vertex {v} has no BFS parent")),
            Some(p) if g.has_edge(p, v) && layering.layer(p) + 1 == layering.layer(v) => {}
            Some(p) => return bad(format!("parent {p} of {v} disagrees with the layering")),
        }
    }
    Ok(())
}

/// Two-path separators of a fixed connected plane graph and its subgraphs.
#[derive(Debug, Clone)]
pub struct PlanarProvider {
    n: usize,
    tree: BfsTree,
    candidates: Vec<Edge>,
    triangles: Vec<[usize; 3]>,
}

impl PlanarProvider {
    /// Builds the provider for `g` with the BFS tree rooted at `root`.
    pub fn new(g: &Graph, rotation: &RotationSystem, root: usize) -> Result<Self> {
        rotation.check_planar(g)?;
        let tree = bfs_tree(g, root)?;
        Self::from_parts(g, rotation, tree)
    }

    /// Uses a caller-supplied BFS tree, which must agree with its layering.
    pub fn with_tree(g: &Graph, rotation: &RotationSystem, layering: &Layering, tree: BfsTree) -> Result<Self> {
        rotation.check_planar(g)?;
        if g.n() > 0 {
            if let Some(unreached) = tree.parent.iter().enumerate().position(|(v, p)| p.is_none() && v != tree.root) {
                return Err(Error::Disconnected { root: tree.root, unreached });
            }
        }
        check_tree(g, layering, &tree)?;
        if layering != &tree.layering {
            let mut tree = tree;
            tree.layering = layering.clone();
            return Self::from_parts(g, rotation, tree);
        }
        Self::from_parts(g, rotation, tree)
    }

    fn from_parts(g: &Graph, rotation: &RotationSystem, tree: BfsTree) -> Result<Self> {
        let is_tree_edge = |(u, v): Edge| tree.parent[u] == Some(v) || tree.parent[v] == Some(u);
        let mut candidates: Vec<Edge> = g.edges().iter().copied().filter(|&e| !is_tree_edge(e)).collect();
        candidates.extend(fan_chords(rotation).into_iter().filter(|&e| !is_tree_edge(e)));
        candidates.sort_unstable();
        candidates.dedup();
        // faces of the fan triangulation
        let mut triangles = Vec::new();
        for face in rotation.faces() {
            for w in face.get(1..).unwrap_or_default().windows(2) {
                triangles.push([face[0], w[0], w[1]]);
            }
        }
        Ok(PlanarProvider {
            n: g.n(),
            tree,
            candidates,
            triangles,
        })
    }

    pub fn tree(&self) -> &BfsTree {
        &self.tree
    }

    pub fn layering(&self) -> &Layering {
        &self.tree.layering
    }

    /// Non-tree edges of the triangulated embedding, in canonical order.
    pub fn candidates(&self) -> &[Edge] {
        &self.candidates
    }

    /// Sub-vertices on the root paths of `starts`, in subgraph ids.
    fn paths_in_sub(&self, starts: &[usize], map: &VertexSubsetMap, out: &mut Vec<usize>) {
        out.clear();
        for &start in starts {
            let mut cur = Some(start);
            while let Some(v) = cur {
                if let Some(local) = map.to_sub(v) {
                    out.push(local);
                }
                cur = self.tree.parent[v];
            }
        }
        out.sort_unstable();
        out.dedup();
    }

    /// Separator of the subgraph described by `map`, in subgraph ids.
    fn separate(&self, sub: &Graph, layering: &Layering, map: &VertexSubsetMap) -> Result<SeparatorCert> {
        let n = sub.n();
        if n <= 1 {
            return Ok(SeparatorCert::build(sub, layering, &[], 2));
        }
        let mut removed = vec![false; n];
        let mut s = Vec::new();
        let mut balanced = |s: &[usize]| {
            for &v in s {
                removed[v] = true;
            }
            let ok = components_avoiding(sub, &removed).iter().all(|c| 2 * c.len() <= n);
            for &v in s {
                removed[v] = false;
            }
            ok
        };
        if balanced(&[]) {
            return Ok(SeparatorCert::build(sub, layering, &[], 2));
        }
        for &(a, b) in &self.candidates {
            self.paths_in_sub(&[a, b], map, &mut s);
            if !s.is_empty() && balanced(&s) {
                return Ok(SeparatorCert::build(sub, layering, &s, 2));
            }
        }
        // Any pair of root paths keeps at most two vertices per layer.
        let ids = map.parent_ids();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i..] {
                self.paths_in_sub(&[a, b], map, &mut s);
                if balanced(&s) {
                    return Ok(SeparatorCert::build(sub, layering, &s, 2));
                }
            }
        }
        // Half balance is stronger than what a fundamental cycle promises:
        // where three heavy regions meet at a face, no two root paths
        // suffice. Other sets with two vertices per layer may still exist.
        if n <= EXACT_MAX_VERTICES {
            match find_layered_separator_exact(sub, layering, 2) {
                Ok(Some(cert)) => return Ok(cert),
                Ok(None) => {}
                Err(e) if e.is_size_guard() => {}
                Err(e) => return Err(e),
            }
        }
        // The face at the weighted centroid of the dual spanning tree has
        // every region beyond it at most half heavy, so its three root
        // paths always separate.
        for t in &self.triangles {
            self.paths_in_sub(t, map, &mut s);
            if balanced(&s) {
                return Ok(SeparatorCert::build(sub, layering, &s, 3));
            }
        }
        Err(Error::NoBalancedCycle(n))
    }
}

impl SeparatorProvider for PlanarProvider {
    fn find(&self, sub: &Graph, layering: &Layering, map: &VertexSubsetMap) -> Result<SeparatorCert> {
        if let Some(&v) = map.parent_ids().last() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        self.separate(sub, layering, map)
    }
}

/// Layered 2-separator of a connected plane graph from two BFS-tree paths.
pub fn planar_two_path_separator(
    g: &Graph,
    rotation: &RotationSystem,
    layering: &Layering,
    tree: &BfsTree,
) -> Result<SeparatorCert> {
    let provider = PlanarProvider::with_tree(g, rotation, layering, tree.clone())?;
    provider.separate(g, layering, &VertexSubsetMap::identity(g.n()))
}
