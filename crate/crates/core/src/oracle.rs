//! Brute-force stack and queue numbers for tiny graphs.
//!
//! For a fixed vertex order the minimum number of stacks (queues) equals the
//! chromatic number of the conflict graph on the edges, two edges being
//! adjacent when they cross (nest). Global optima enumerate vertex orders.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::layout::{EdgeAssignment, LayoutKind, LinearLayout};

/// Fixed-order colouring handles at most this many edges.
pub const ORACLE_MAX_EDGES: usize = 28;
/// Order enumeration handles at most this many vertices.
pub const ORACLE_MAX_VERTICES: usize = 8;

fn conflicts(kind: LayoutKind, a: (usize, usize), b: (usize, usize)) -> bool {
    match kind {
        LayoutKind::Stack => (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1),
        LayoutKind::Queue => (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1),
    }
}

fn conflict_graph(kind: LayoutKind, edges: &[Edge], position: &[usize]) -> Vec<u32> {
    let spans: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (p, q) = (position[u], position[v]);
            (p.min(q), p.max(q))
        })
        .collect();
    let mut adj = vec![0u32; edges.len()];
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            if conflicts(kind, spans[i], spans[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

/// Greedy clique; a lower bound on the chromatic number.
fn clique_lower_bound(adj: &[u32]) -> usize {
    let mut best = usize::from(!adj.is_empty());
    for start in 0..adj.len() {
        let mut cand = adj[start];
        let mut size = 1;
        while cand != 0 {
            // pick the candidate with the most neighbours among the candidates
            let mut pick = cand.trailing_zeros() as usize;
            let mut pick_deg = 0;
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                let d = (adj[v] & cand).count_ones();
                if d > pick_deg {
                    pick = v;
                    pick_deg = d;
                }
            }
            size += 1;
            cand &= adj[pick];
        }
        best = best.max(size);
    }
    best
}

fn greedy_colouring(adj: &[u32], order: &[usize]) -> Vec<usize> {
    let mut colour = vec![usize::MAX; adj.len()];
    for &v in order {
        let mut used = 0u64;
        let mut nb = adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if colour[w] != usize::MAX {
                used |= 1 << colour[w];
            }
        }
        colour[v] = (!used).trailing_zeros() as usize;
    }
    colour
}

fn try_colour(adj: &[u32], order: &[usize], k: usize, idx: usize, used: usize, colour: &mut [usize]) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    // a fresh colour is only tried once, as all unused colours are symmetric
    for c in 0..k.min(used + 1) {
        let mut nb = adj[v];
        let mut clash = false;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if colour[w] == c {
                clash = true;
                break;
            }
        }
        if clash {
            continue;
        }
        colour[v] = c;
        if try_colour(adj, order, k, idx + 1, used.max(c + 1), colour) {
            return true;
        }
        colour[v] = usize::MAX;
    }
    false
}

/// Exact chromatic number with an optimal colouring, by branch and bound
/// between a clique lower bound and a greedy upper bound.
fn chromatic(adj: &[u32]) -> (usize, Vec<usize>) {
    if adj.is_empty() {
        return (0, Vec::new());
    }
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    let greedy = greedy_colouring(adj, &order);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let lower = clique_lower_bound(adj);
    for k in lower..upper {
        let mut colour = vec![usize::MAX; adj.len()];
        if try_colour(adj, &order, k, 0, 0, &mut colour) {
            return (k, colour);
        }
    }
    (upper, greedy)
}

fn edge_guard(g: &Graph) -> Result<()> {
    if g.m() > ORACLE_MAX_EDGES {
        return Err(Error::TooLarge {
            what: "edge count",
            got: g.m(),
            limit: ORACLE_MAX_EDGES,
        });
    }
    Ok(())
}

fn position_of(g: &Graph, order: &[usize]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; g.n()];
    if order.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "order has {} vertices, graph has {}",
            order.len(),
            g.n()
        )));
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= g.n() || pos[v] != usize::MAX {
            return Err(Error::InvalidArgument("order is not a permutation".into()));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// Optimal layout for a fixed vertex order.
pub fn fixed_order_layout(kind: LayoutKind, g: &Graph, order: &[usize]) -> Result<LinearLayout> {
    edge_guard(g)?;
    let pos = position_of(g, order)?;
    let (_, colour) = chromatic(&conflict_graph(kind, g.edges(), &pos));
    let assignment = g
        .edges()
        .iter()
        .zip(colour)
        .map(|(&edge, channel)| EdgeAssignment { edge, channel, id: None })
        .collect();
    LinearLayout::new(kind, order.to_vec(), assignment)
}

pub fn fixed_order_stack_number(g: &Graph, order: &[usize]) -> Result<usize> {
    edge_guard(g)?;
    let pos = position_of(g, order)?;
    Ok(chromatic(&conflict_graph(LayoutKind::Stack, g.edges(), &pos)).0)
}

pub fn fixed_order_queue_number(g: &Graph, order: &[usize]) -> Result<usize> {
    edge_guard(g)?;
    let pos = position_of(g, order)?;
    Ok(chromatic(&conflict_graph(LayoutKind::Queue, g.edges(), &pos)).0)
}

/// Global optimum with a witness layout (the first optimal order found).
#[derive(Debug, Clone)]
pub struct Optimum {
    pub value: usize,
    pub witness: LinearLayout,
}

/// Advances `v` to the next lexicographic permutation; false after the last.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a larger successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Which vertex orders to visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// All `n!` orders.
    Full,
    /// One representative per equivalence class: rotations and reflections
    /// for stacks, reflections for queues.
    Reduced,
}

fn keep(kind: LayoutKind, order: &[usize]) -> bool {
    let n = order.len();
    match kind {
        LayoutKind::Stack => order[0] == 0 && (n < 3 || order[1] < order[n - 1]),
        LayoutKind::Queue => n < 2 || order[0] < order[n - 1],
    }
}

/// Minimum over vertex orders of the fixed-order stack or queue number.
pub fn min_layout_number(kind: LayoutKind, g: &Graph, mode: Enumeration) -> Result<Optimum> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count",
            got: g.n(),
            limit: ORACLE_MAX_VERTICES,
        });
    }
    edge_guard(g)?;
    let floor = usize::from(g.m() > 0);
    let mut order: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut pos = vec![0; g.n()];
    loop {
        if mode == Enumeration::Full || g.n() == 0 || keep(kind, &order) {
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let (k, colour) = chromatic(&conflict_graph(kind, g.edges(), &pos));
            if best.as_ref().is_none_or(|b| k < b.0) {
                best = Some((k, order.clone(), colour));
                if k == floor {
                    break;
                }
            }
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    let (value, order, colour) = best.expect("at least one order is visited");
    let assignment = g
        .edges()
        .iter()
        .zip(colour)
        .map(|(&edge, channel)| EdgeAssignment { edge, channel, id: None })
        .collect();
    Ok(Optimum {
        value,
        witness: LinearLayout::new(kind, order, assignment)?,
    })
}

pub fn min_stack_number(g: &Graph) -> Result<Optimum> {
    min_layout_number(LayoutKind::Stack, g, Enumeration::Reduced)
}

pub fn min_queue_number(g: &Graph) -> Result<Optimum> {
    min_layout_number(LayoutKind::Queue, g, Enumeration::Reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::check_validity;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn fixed_order_examples() {
        let natural = [0, 1, 2, 3];
        assert_eq!(fixed_order_stack_number(&c4(), &natural).unwrap(), 1);
        assert_eq!(fixed_order_stack_number(&complete(4), &natural).unwrap(), 2);
        assert_eq!(fixed_order_stack_number(&Graph::empty(0), &[]).unwrap(), 0);
        // 12 nests inside 03
        assert_eq!(fixed_order_queue_number(&c4(), &natural).unwrap(), 2);
        assert_eq!(fixed_order_queue_number(&c4(), &[0, 1, 3, 2]).unwrap(), 1);
        assert_eq!(fixed_order_queue_number(&complete(4), &natural).unwrap(), 2);
        assert_eq!(fixed_order_queue_number(&Graph::empty(0), &[]).unwrap(), 0);
    }

    #[test]
    fn global_examples() {
        let tree = Graph::new(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        assert_eq!(min_stack_number(&tree).unwrap().value, 1);
        assert_eq!(min_queue_number(&tree).unwrap().value, 1);
        assert_eq!(min_stack_number(&complete(4)).unwrap().value, 2);
        assert_eq!(min_stack_number(&complete(5)).unwrap().value, 3);
    }

    #[test]
    fn witness_is_valid() {
        for kind in [LayoutKind::Stack, LayoutKind::Queue] {
            let g = complete(5);
            let opt = min_layout_number(kind, &g, Enumeration::Reduced).unwrap();
            assert!(check_validity(&g, &opt.witness).is_empty());
            assert_eq!(opt.witness.channel_count(), opt.value);
        }
    }

    #[test]
    fn reduced_matches_full() {
        let graphs = [complete(5), c4(), Graph::new(6, [(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3), (0, 5)]).unwrap()];
        for g in &graphs {
            for kind in [LayoutKind::Stack, LayoutKind::Queue] {
                let a = min_layout_number(kind, g, Enumeration::Reduced).unwrap().value;
                let b = min_layout_number(kind, g, Enumeration::Full).unwrap().value;
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn guards() {
        assert!(min_stack_number(&Graph::empty(9)).unwrap_err().is_size_guard());
        assert!(fixed_order_stack_number(&complete(8), &[0, 1, 2, 3, 4, 5, 6, 7]).is_ok());
        let big = Graph::new(30, (1..30).map(|i| (i - 1, i))).unwrap();
        let order: Vec<usize> = (0..30).collect();
        assert!(fixed_order_stack_number(&big, &order).unwrap_err().is_size_guard());
    }
}
