//! The exact separator finder against a deliberately naive enumerator that
//! shares no code with it: every vertex subset, flood fill on adjacency
//! lists rebuilt here.

use layersep::generators::{connected_graphs, cycle, random_connected_graph};
use layersep::graph::bfs_layering;
use layersep::separator::{find_layered_separator_exact, verify_separator};
use layersep::Graph;

fn naive_feasible(g: &Graph, layer: &[usize], ell: usize) -> bool {
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
        for v in 0..n {
            if mask >> v & 1 == 1 {
                per_layer[layer[v]] += 1;
                if per_layer[layer[v]] > ell {
                    continue 'subsets;
                }
            }
        }
        let mut seen = mask;
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut stack = vec![s];
            seen |= 1 << s;
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

fn agree_on(g: &Graph) {
    for root in 0..g.n() {
        let layering = bfs_layering(g, root).unwrap();
        for ell in 0..=3 {
            let found = find_layered_separator_exact(g, &layering, ell).unwrap();
            assert_eq!(
                found.is_some(),
                naive_feasible(g, layering.as_slice(), ell),
                "graph {:?} root {root} ell {ell}",
                g.edges()
            );
            if let Some(cert) = found {
                assert!(cert.max_per_layer() <= ell);
                assert_eq!(verify_separator(g, &layering, &cert), vec![]);
            }
        }
    }
}

#[test]
fn all_small_connected_graphs() {
    for n in 1..=6 {
        for g in connected_graphs(n).unwrap() {
            agree_on(&g);
        }
    }
}

#[test]
fn random_graphs_up_to_eight_vertices() {
    for seed in 0..120 {
        let n = 7 + (seed as usize % 2);
        let p = [0.2, 0.35, 0.5][seed as usize % 3];
        agree_on(&random_connected_graph(n, p, seed));
    }
    agree_on(&cycle(8));
}
