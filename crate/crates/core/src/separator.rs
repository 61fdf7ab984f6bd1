//! Layered separators: certificates, their verification, and exhaustive
//! search for small graphs.
//!
//! A layered ℓ-separator of a graph `G` (for a fixed layering) is a vertex
//! set `S` meeting every layer in at most ℓ vertices such that every
//! component of `G - S` has at most `|V(G)| / 2` vertices. Balance is tested
//! in integers as `2 * c <= n`; graphs with at most one vertex need no
//! separator and the balance test is waived for them.

use std::cell::Cell;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components_avoiding, Graph, Layering, VertexSubsetMap};

/// Largest graph accepted by the exhaustive finder.
pub const EXACT_MAX_VERTICES: usize = 64;
/// Candidate sets the exhaustive finder may test in one call before giving
/// up with a size-guard error.
pub const EXACT_MAX_STEPS: u64 = 30_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorCert {
    pub ell: usize,
    /// Sorted separator vertices.
    #[serde(rename = "S")]
    pub separator: Vec<usize>,
    /// Layer index to the separator vertices in that layer, ascending by id.
    pub per_layer: BTreeMap<usize, Vec<usize>>,
    /// Sizes of the components of `G - S`, ordered by minimum vertex.
    pub component_sizes: Vec<usize>,
}

impl SeparatorCert {
    /// Assembles a certificate for `separator`, filling in the per-layer
    /// lists and component sizes. No validity checks are made.
    pub fn build(g: &Graph, layering: &Layering, separator: &[usize], ell: usize) -> Self {
        let mut separator = separator.to_vec();
        separator.sort_unstable();
        separator.dedup();
        let mut per_layer: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut removed = vec![false; g.n()];
        for &v in &separator {
            per_layer.entry(layering.layer(v)).or_default().push(v);
            removed[v] = true;
        }
        let component_sizes = components_avoiding(g, &removed)
            .iter()
            .map(Vec::len)
            .collect();
        SeparatorCert {
            ell,
            separator,
            per_layer,
            component_sizes,
        }
    }

    pub fn empty() -> Self {
        SeparatorCert {
            ell: 0,
            separator: Vec::new(),
            per_layer: BTreeMap::new(),
            component_sizes: Vec::new(),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.separator.binary_search(&v).is_ok()
    }

    /// 1-based position of `v` within its layer's list `ρ_i`.
    pub fn rank(&self, v: usize, layer: usize) -> Option<usize> {
        self.per_layer
            .get(&layer)?
            .iter()
            .position(|&w| w == v)
            .map(|p| p + 1)
    }

    /// Largest number of separator vertices in a single layer.
    pub fn max_per_layer(&self) -> usize {
        self.per_layer.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Re-expresses a subgraph certificate in parent ids. The map is
    /// monotone, so sortedness is preserved.
    pub fn to_parent(&self, map: &VertexSubsetMap) -> SeparatorCert {
        SeparatorCert {
            ell: self.ell,
            separator: self.separator.iter().map(|&v| map.to_parent(v)).collect(),
            per_layer: self
                .per_layer
                .iter()
                .map(|(&i, vs)| (i, vs.iter().map(|&v| map.to_parent(v)).collect()))
                .collect(),
            component_sizes: self.component_sizes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeparatorViolation {
    NotAVertex { vertex: usize },
    /// A vertex listed under a layer it does not belong to.
    WrongLayer { vertex: usize, listed: usize, actual: usize },
    /// `S` and the union of the per-layer lists disagree, or a list repeats a vertex.
    Membership { vertex: usize },
    LayerOverflow { layer: usize, count: usize, ell: usize },
    Unbalanced { component_size: usize, n: usize },
    ComponentSizes { expected: Vec<usize>, listed: Vec<usize> },
}

/// Checks a certificate against the definition. Empty iff valid.
pub fn verify_separator(g: &Graph, layering: &Layering, cert: &SeparatorCert) -> Vec<SeparatorViolation> {
    use SeparatorViolation::*;
    let n = g.n();
    let mut out = Vec::new();
    let mut in_s = vec![false; n];
    for &v in &cert.separator {
        if v >= n {
            out.push(NotAVertex { vertex: v });
        } else if in_s[v] {
            out.push(Membership { vertex: v });
        } else {
            in_s[v] = true;
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut listed = vec![false; n];
    for (&layer, vs) in &cert.per_layer {
        if vs.len() > cert.ell {
            out.push(LayerOverflow {
                layer,
                count: vs.len(),
                ell: cert.ell,
            });
        }
        for &v in vs {
            if v >= n {
                out.push(NotAVertex { vertex: v });
                continue;
            }
            if layering.layer(v) != layer {
                out.push(WrongLayer {
                    vertex: v,
                    listed: layer,
                    actual: layering.layer(v),
                });
            }
            if !in_s[v] || listed[v] {
                out.push(Membership { vertex: v });
            }
            listed[v] = true;
        }
    }
    for &v in &cert.separator {
        if !listed[v] {
            out.push(Membership { vertex: v });
        }
    }

    let sizes: Vec<usize> = components_avoiding(g, &in_s).iter().map(Vec::len).collect();
    if n > 1 {
        for &c in &sizes {
            if 2 * c > n {
                out.push(Unbalanced { component_size: c, n });
            }
        }
    }
    if sizes != cert.component_sizes {
        out.push(ComponentSizes {
            expected: sizes,
            listed: cert.component_sizes.clone(),
        });
    }
    out
}

/// Bitset view of a small graph for the exhaustive search.
struct BitGraph {
    n: usize,
    adj: Vec<u64>,
    layer: Vec<usize>,
    num_layers: usize,
    steps: Cell<u64>,
}

impl BitGraph {
    fn new(g: &Graph, layering: &Layering) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect();
        BitGraph {
            n: g.n(),
            adj,
            layer: layering.as_slice().to_vec(),
            num_layers: layering.num_layers(),
            steps: Cell::new(0),
        }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Every component of `G - removed` has at most half the vertices.
    fn balanced(&self, removed: u64) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut rest = self.full() & !removed;
        if 2 * rest.count_ones() as usize <= self.n {
            return true;
        }
        while rest != 0 {
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                next &= rest & !comp;
                comp |= next;
                frontier = next;
            }
            if 2 * comp.count_ones() as usize > self.n {
                return false;
            }
            rest &= !comp;
        }
        true
    }

    /// Lexicographically first `size`-subset respecting the per-layer cap
    /// whose removal balances the graph.
    fn search(&self, size: usize, ell: usize) -> Result<Option<u64>> {
        let mut counts = vec![0usize; self.num_layers];
        self.extend(0, size, 0, ell, &mut counts)
    }

    fn extend(&self, start: usize, left: usize, chosen: u64, ell: usize, counts: &mut [usize]) -> Result<Option<u64>> {
        if left == 0 {
            let steps = self.steps.get() + 1;
            if steps > EXACT_MAX_STEPS {
                return Err(Error::TooLarge {
                    what: "separator search steps",
                    got: steps as usize,
                    limit: EXACT_MAX_STEPS as usize,
                });
            }
            self.steps.set(steps);
            return Ok(self.balanced(chosen).then_some(chosen));
        }
        for v in start..=(self.n - left) {
            let l = self.layer[v];
            if counts[l] >= ell {
                continue;
            }
            counts[l] += 1;
            let found = self.extend(v + 1, left - 1, chosen | (1 << v), ell, counts);
            counts[l] -= 1;
            if !matches!(found, Ok(None)) {
                return found;
            }
        }
        Ok(None)
    }

    fn find(&self, g: &Graph, layering: &Layering, ell: usize) -> Result<Option<SeparatorCert>> {
        let max_size = (ell * self.num_layers).min(self.n);
        for size in 0..=max_size {
            if let Some(mask) = self.search(size, ell)? {
                return Ok(Some(SeparatorCert::build(g, layering, &mask_to_vec(mask), ell)));
            }
        }
        Ok(None)
    }
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask & (1 << v) != 0).collect()
}

fn exact_guard(g: &Graph, layering: &Layering) -> Result<()> {
    if g.n() > EXACT_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count",
            got: g.n(),
            limit: EXACT_MAX_VERTICES,
        });
    }
    if layering.len() != g.n() {
        return Err(Error::LayeringSize {
            expected: g.n(),
            got: layering.len(),
        });
    }
    Ok(())
}

/// Smallest layered separator with at most `ell` vertices per layer, ties
/// broken lexicographically. `Ok(None)` when none exists.
pub fn find_layered_separator_exact(g: &Graph, layering: &Layering, ell: usize) -> Result<Option<SeparatorCert>> {
    exact_guard(g, layering)?;
    BitGraph::new(g, layering).find(g, layering, ell)
}

/// Smallest `ell` admitting a separator, together with its certificate.
pub fn find_min_ell_separator(g: &Graph, layering: &Layering) -> Result<(usize, SeparatorCert)> {
    exact_guard(g, layering)?;
    if g.n() == 0 {
        return Ok((0, SeparatorCert::empty()));
    }
    let widest = {
        let mut sizes = vec![0usize; layering.num_layers()];
        for &l in layering.as_slice() {
            sizes[l] += 1;
        }
        sizes.into_iter().max().unwrap_or(0)
    };
    let bits = BitGraph::new(g, layering);
    for ell in 0..=widest {
        if let Some(cert) = bits.find(g, layering, ell)? {
            return Ok((ell, cert));
        }
    }
    unreachable!("removing every vertex is always a valid separator")
}

/// Supplies separators for the subgraphs met during the recursive layout
/// constructions. `map` translates subgraph ids to ids of the graph the
/// construction started from; the returned certificate uses subgraph ids.
pub trait SeparatorProvider {
    fn find(&self, sub: &Graph, layering: &Layering, map: &VertexSubsetMap) -> Result<SeparatorCert>;
}

/// Exhaustive search. With `ell` set every subgraph must be separable with
/// that bound; otherwise each subgraph gets its own minimum.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactProvider {
    pub ell: Option<usize>,
}

impl SeparatorProvider for ExactProvider {
    fn find(&self, sub: &Graph, layering: &Layering, _map: &VertexSubsetMap) -> Result<SeparatorCert> {
        match self.ell {
            Some(ell) => find_layered_separator_exact(sub, layering, ell)?.ok_or(Error::NoSeparator { ell }),
            None => find_min_ell_separator(sub, layering).map(|(_, c)| c),
        }
    }
}
