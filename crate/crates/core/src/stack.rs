//! Stack layouts from layered separators.
//!
//! Within each layer the separator vertices `ρ_i` come first, followed by
//! the component blocks: ascending on even layers, descending on odd ones.
//! Two blocks of distinct components on layers `i` and `i + 1` are therefore
//! nested rather than interleaved, which lets all components at one depth
//! share channels. Per depth, intra-layer separator edges use `ℓ` stacks
//! and inter-layer ones `2ℓ` each for even and odd lower layers, giving at
//! most `5ℓ⌊log₂ n⌋` stacks.

use crate::error::Result;
use crate::graph::{Edge, Graph, Layering};
use crate::layout::{self, ChannelId, LayeredOrder, LayoutKind, LinearLayout};
use crate::separator::{SeparatorCert, SeparatorProvider};

/// Stack layout of `g` using separators with at most `ell` vertices per layer.
pub fn construct_stack_layout(
    g: &Graph,
    layering: &Layering,
    provider: &dyn SeparatorProvider,
    ell: usize,
) -> Result<LinearLayout> {
    layout::construct(LayoutKind::Stack, g, layering, provider, Some(ell)).map(|c| c.layout)
}

/// Stack for an edge with an endpoint in `cert`'s separator; slot ranges use `cert.ell`.
pub fn assign_separator_edge_stack(edge: Edge, layering: &Layering, cert: &SeparatorCert, depth: usize) -> Result<ChannelId> {
    layout::assign_separator_edge(LayoutKind::Stack, edge, layering, cert, depth)
}

/// `ρ_i` then the children, ascending on even layers and descending on odd ones.
pub fn boustrophedon_merge(rho: &LayeredOrder, children: &[LayeredOrder]) -> LayeredOrder {
    layout::merge_layers(rho, children, true)
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
    fn merge_alternates_direction() {
        // vertices: ρ0 = [0], ρ1 = [1]; child 1 = {2 (L0), 3 (L1)}, child 2 = {4 (L0), 5 (L1)}
        let rho = lo(&[(0, &[0]), (1, &[1])]);
        let c1 = lo(&[(0, &[2]), (1, &[3])]);
        let c2 = lo(&[(0, &[4]), (1, &[5])]);
        let merged = boustrophedon_merge(&rho, &[c1.clone(), c2]);
        assert_eq!(layout::flatten_order(&merged), vec![0, 2, 4, 1, 5, 3]);

        let single = boustrophedon_merge(&rho, &[c1]);
        assert_eq!(layout::flatten_order(&single), vec![0, 2, 1, 3]);

        let gap = boustrophedon_merge(&lo(&[(2, &[7])]), &[lo(&[(0, &[1])]), lo(&[(0, &[2])])]);
        assert_eq!(gap[&2], vec![7]);
        assert_eq!(gap[&0], vec![1, 2]);
    }

    #[test]
    fn separator_edge_slots() {
        // intra edge (s, v) with s the second vertex of ρ_4
        let layering = Layering::new(vec![4, 4, 4, 2, 3, 3, 1, 2]);
        let c = cert(&[(4, &[0, 1]), (3, &[5]), (1, &[6])], 3);
        assert_eq!(
            assign_separator_edge_stack((1, 2), &layering, &c, 0).unwrap(),
            ChannelId::new(0, ChannelClass::Intra, 2)
        );
        // u in V_2 not in S, v first of ρ_3, ℓ = 3 -> P'_{ℓ+1}
        assert_eq!(
            assign_separator_edge_stack((3, 5), &layering, &c, 1).unwrap(),
            ChannelId::new(1, ChannelClass::EvenInter, 4)
        );
        // odd lower layer, lower endpoint first of ρ_1
        assert_eq!(
            assign_separator_edge_stack((6, 7), &layering, &c, 2).unwrap(),
            ChannelId::new(2, ChannelClass::OddInter, 1)
        );
        assert!(assign_separator_edge_stack((3, 4), &layering, &c, 0).is_err());
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let layout = construct_stack_layout(&g, &Layering::new(vec![0]), &ExactProvider::default(), 1).unwrap();
        assert_eq!(layout.order(), &[0]);
        assert_eq!(layout.channel_count(), 0);
    }

    #[test]
    fn star() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = bfs_layering(&g, 0).unwrap();
        let layout = construct_stack_layout(&g, &l, &ExactProvider { ell: Some(1) }, 1).unwrap();
        // layer 1 is odd, so the leaf components appear in descending order
        assert_eq!(layout.order(), &[0, 3, 2, 1]);
        assert_eq!(layout.channel_count(), 1);
        for a in layout.assignment() {
            assert_eq!(a.id, Some(ChannelId::new(0, ChannelClass::EvenInter, 1)));
        }
    }

    #[test]
    fn rejects_invalid_layering() {
        let g = Graph::new(3, [(0, 2)]).unwrap();
        let err = construct_stack_layout(&g, &Layering::new(vec![0, 1, 2]), &ExactProvider::default(), 1);
        assert!(err.is_err());
    }
}
