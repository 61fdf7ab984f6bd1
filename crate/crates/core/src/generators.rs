//! Graph families: grids, the `n × n × 2` grid, stacked triangulations,
//! map graphs over grid hosts, and small exhaustive or random families.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{canonical, is_connected, Edge, Graph};
use crate::planar::RotationSystem;

fn build(n: usize, edges: Vec<Edge>) -> Graph {
    Graph::new_dedup(n, edges).expect("generator produced a valid edge list")
}

/// `rows × cols` grid, vertex `r * cols + c`, with its straight-line embedding.
pub fn grid(rows: usize, cols: usize) -> (Graph, RotationSystem) {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    let mut rot = vec![Vec::new(); rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
            // counter-clockwise with row 0 on top: right, up, left, down
            let around = &mut rot[id(r, c)];
            if c + 1 < cols {
                around.push(id(r, c + 1));
            }
            if r > 0 {
                around.push(id(r - 1, c));
            }
            if c > 0 {
                around.push(id(r, c - 1));
            }
            if r + 1 < rows {
                around.push(id(r + 1, c));
            }
        }
    }
    (build(rows * cols, edges), RotationSystem::new(rot))
}

/// `P_n □ P_n □ P_2`: two `n × n` grids joined by a perfect matching.
/// Vertex `z * n² + r * n + c`.
pub fn grid_nn2(n: usize) -> Graph {
    let id = |z: usize, r: usize, c: usize| z * n * n + r * n + c;
    let mut edges = Vec::new();
    for z in 0..2 {
        for r in 0..n {
            for c in 0..n {
                if c + 1 < n {
                    edges.push((id(z, r, c), id(z, r, c + 1)));
                }
                if r + 1 < n {
                    edges.push((id(z, r, c), id(z, r + 1, c)));
                }
                if z == 0 {
                    edges.push((id(0, r, c), id(1, r, c)));
                }
            }
        }
    }
    build(2 * n * n, edges)
}

/// Random maximal planar graph: start from a triangle and repeatedly put a
/// new vertex inside a uniformly chosen inner face.
pub fn stacked_triangulation(n: usize, seed: u64) -> Result<(Graph, RotationSystem)> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("a triangulation needs at least 3 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let insert_after = |rot: &mut Vec<Vec<usize>>, at: usize, after: usize, v: usize| {
        let i = rot[at].iter().position(|&w| w == after).expect("face corner is a neighbor");
        rot[at].insert(i + 1, v);
    };
    for v in 3..n {
        let fi = rng.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        insert_after(&mut rot, a, b, v);
        insert_after(&mut rot, b, c, v);
        insert_after(&mut rot, c, a, v);
        rot.push(vec![a, b, c]);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    Ok((build(n, edges), RotationSystem::new(rot)))
}

/// Host vertices are `(x, y)` with `x < w`, `y < h`; unit face `(fx, fy)`
/// has id `fy * (w - 1) + fx`.
pub fn grid_host_faces(w: usize, h: usize) -> usize {
    w.saturating_sub(1) * h.saturating_sub(1)
}

/// Map graph of a grid host: one vertex per nation (ascending face id), two
/// nations adjacent when their faces share a host vertex.
pub fn map_graph_from_grid_host(w: usize, h: usize, nations: &[usize], d_cap: usize) -> Result<Graph> {
    let faces = grid_host_faces(w, h);
    let nations: Vec<usize> = nations.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(&bad) = nations.iter().find(|&&f| f >= faces) {
        return Err(Error::InvalidArgument(format!("face {bad} is not an internal face of a {w}x{h} host")));
    }
    let fw = w - 1;
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); w * h];
    for (i, &f) in nations.iter().enumerate() {
        let (fx, fy) = (f % fw, f / fw);
        for (x, y) in [(fx, fy), (fx + 1, fy), (fx, fy + 1), (fx + 1, fy + 1)] {
            at_vertex[y * w + x].push(i);
        }
    }
    let mut edges = Vec::new();
    for (hv, incident) in at_vertex.iter().enumerate() {
        if incident.len() > d_cap {
            return Err(Error::NationCap {
                x: hv % w,
                y: hv / w,
                count: incident.len(),
                cap: d_cap,
            });
        }
        for (i, &a) in incident.iter().enumerate() {
            for &b in &incident[i + 1..] {
                edges.push(canonical(a, b));
            }
        }
    }
    Ok(build(nations.len(), edges))
}

/// Grows a corner-connected set of up to `count` nations on a `w × h` host,
/// never letting a host vertex touch more than `d_cap` nations.
pub fn random_map_nations(w: usize, h: usize, count: usize, d_cap: usize, seed: u64) -> Result<Vec<usize>> {
    let faces = grid_host_faces(w, h);
    if faces == 0 || count == 0 || d_cap == 0 {
        return Ok(Vec::new());
    }
    let fw = w - 1;
    let fh = h - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut load = vec![0usize; w * h];
    let corners = |f: usize| {
        let (fx, fy) = (f % fw, f / fw);
        [fy * w + fx, fy * w + fx + 1, (fy + 1) * w + fx, (fy + 1) * w + fx + 1]
    };
    let touching = |f: usize| {
        let (fx, fy) = ((f % fw) as isize, (f / fw) as isize);
        let mut out = Vec::new();
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (x, y) = (fx + dx, fy + dy);
                if (dx, dy) != (0, 0) && x >= 0 && y >= 0 && (x as usize) < fw && (y as usize) < fh {
                    out.push(y as usize * fw + x as usize);
                }
            }
        }
        out
    };
    let mut chosen = BTreeSet::new();
    let mut frontier = BTreeSet::from([rng.random_range(0..faces)]);
    while chosen.len() < count {
        let options: Vec<usize> = frontier.iter().copied().collect();
        let Some(&f) = options.choose(&mut rng) else { break };
        frontier.remove(&f);
        if corners(f).iter().any(|&c| load[c] >= d_cap) {
            continue;
        }
        for c in corners(f) {
            load[c] += 1;
        }
        chosen.insert(f);
        frontier.extend(touching(f).into_iter().filter(|g| !chosen.contains(g)));
    }
    Ok(chosen.into_iter().collect())
}

pub fn path(n: usize) -> (Graph, RotationSystem) {
    grid(1, n)
}

pub fn cycle(n: usize) -> Graph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)).filter(|&(a, b)| a != b).collect())
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect())
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> (Graph, RotationSystem) {
    let g = build(leaves + 1, (1..=leaves).map(|v| (0, v)).collect());
    let mut rot = vec![(1..=leaves).collect::<Vec<_>>()];
    rot.extend((1..=leaves).map(|_| vec![0]));
    (g, RotationSystem::new(rot))
}

/// Connected graph: a random recursive tree plus each other pair with probability `p`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// All connected graphs on `n` vertices up to isomorphism (`n <= 7`).
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 7 {
        return Err(Error::TooLarge {
            what: "vertex count",
            got: n,
            limit: 7,
        });
    }
    let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| pairs.binary_search(&canonical(u, v)).expect("pair exists");
    let mut perms = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        perms.push(pairs.iter().map(|&(u, v)| index(perm[u], perm[v])).collect::<Vec<_>>());
        let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else { break };
        let j = perm.iter().rposition(|&x| x > perm[i]).expect("pivot has a larger successor");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    let mut out = Vec::new();
    'mask: for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<Edge> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = build(n, edges);
        if !is_connected(&g) {
            continue;
        }
        for p in &perms {
            let image = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).fold(0u64, |m, i| m | 1 << p[i]);
            if image < mask {
                continue 'mask;
            }
        }
        out.push(g);
    }
    Ok(out)
}
