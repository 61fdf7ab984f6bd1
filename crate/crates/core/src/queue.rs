//! Queue layouts from layered separators.
//!
//! Same recursion as the stack variant, but component blocks are ascending
//! on every layer, so edges of distinct components between layers `i` and
//! `i + 1` interleave instead of nesting. There is no even/odd split: per
//! depth `ℓ` queues for intra-layer and `2ℓ` for inter-layer separator
//! edges, at most `3ℓ⌊log₂ n⌋` queues overall.

use crate::error::Result;
use crate::graph::{Edge, Graph, Layering};
use crate::layout::{self, ChannelId, LayeredOrder, LayoutKind, LinearLayout};
use crate::separator::{SeparatorCert, SeparatorProvider};

pub fn construct_queue_layout(
    g: &Graph,
    layering: &Layering,
    provider: &dyn SeparatorProvider,
    ell: usize,
) -> Result<LinearLayout> {
    layout::construct(LayoutKind::Queue, g, layering, provider, Some(ell)).map(|c| c.layout)
}

pub fn assign_separator_edge_queue(edge: Edge, layering: &Layering, cert: &SeparatorCert, depth: usize) -> Result<ChannelId> {
    layout::assign_separator_edge(LayoutKind::Queue, edge, layering, cert, depth)
}

pub fn ascending_merge(rho: &LayeredOrder, children: &[LayeredOrder]) -> LayeredOrder {
    layout::merge_layers(rho, children, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs_layering;
    use crate::layout::ChannelClass;
    use crate::separator::ExactProvider;

    fn lo(entries: &[(usize, &[usize])]) -> LayeredOrder {
        entries.iter().map(|&(i, vs)| (i, vs.to_vec())).collect()
    }

    fn cert(per_layer: &[(usize, &[usize])], ell: usize) -> SeparatorCert {
        let per_layer = lo(per_layer);
        let mut separator: Vec<usize> = per_layer.values().flatten().copied().collect();
        separator.sort_unstable();
        SeparatorCert { ell, separator, per_layer, component_sizes: vec![] }
    }

    #[test]
    fn merge_is_ascending_everywhere() {
        let rho = lo(&[(0, &[0]), (1, &[1])]);
        let c1 = lo(&[(0, &[2]), (1, &[3])]);
        let c2 = lo(&[(0, &[4]), (1, &[5])]);
        let merged = ascending_merge(&rho, &[c1.clone(), c2]);
        assert_eq!(layout::flatten_order(&merged), vec![0, 2, 4, 1, 3, 5]);
        assert_eq!(layout::flatten_order(&ascending_merge(&rho, &[c1])), vec![0, 2, 1, 3]);
        let gap = ascending_merge(&lo(&[(3, &[])]), &[]);
        assert_eq!(gap[&3], Vec::<usize>::new());
    }

    #[test]
    fn separator_edge_slots() {
        let layering = Layering::new(vec![0, 0, 1, 1, 2]);
        let c = cert(&[(0, &[0]), (2, &[4]), (1, &[2, 3])], 2);
        assert_eq!(
            assign_separator_edge_queue((0, 1), &layering, &c, 0).unwrap(),
            ChannelId::new(0, ChannelClass::Intra, 1)
        );
        // lower endpoint 1 not in S, upper endpoint 3 second of ρ_1, ℓ = 2 -> Q'_{ℓ+2}
        assert_eq!(
            assign_separator_edge_queue((1, 3), &layering, &c, 0).unwrap(),
            ChannelId::new(0, ChannelClass::Inter, 4)
        );
        assert_eq!(
            assign_separator_edge_queue((0, 2), &layering, &c, 1).unwrap(),
            ChannelId::new(1, ChannelClass::Inter, 1)
        );
    }

    #[test]
    fn single_vertex() {
        let layout =
            construct_queue_layout(&Graph::empty(1), &Layering::new(vec![0]), &ExactProvider::default(), 1).unwrap();
        assert_eq!(layout.channel_count(), 0);
    }

    #[test]
    fn star() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = bfs_layering(&g, 0).unwrap();
        let layout = construct_queue_layout(&g, &l, &ExactProvider { ell: Some(1) }, 1).unwrap();
        assert_eq!(layout.order(), &[0, 1, 2, 3]);
        assert_eq!(layout.channel_count(), 1);
        for a in layout.assignment() {
            assert_eq!(a.id, Some(ChannelId::new(0, ChannelClass::Inter, 1)));
        }
    }
}
