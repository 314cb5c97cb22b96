mod common;

use common::*;
use excond::fundcut::fundamental_cuts;
use excond::io::{parse_metis, parse_partition, write_metis, write_partition};
use excond::mcv::{comm_volumes, edge_cut, mcv, mcv_postprocess};
use excond::multilevel::{balance_bound, contract, fm_refine, greedy_matching, Partition};
use excond::rating::{cond_all_edges, ex_cond, expansion_star2};
use excond::tree_sampling::{contrast, sample_bft};
use excond::{EdgeValues, Graph, VertexSet};
use proptest::prelude::*;

/// Connected graph: a random tree (vertex `i` hangs below some `j < i`) plus
/// extra edges, integer weights.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents = (1..n).map(|i| 0..i).collect::<Vec<_>>();
            let extra = prop::collection::vec((0..n, 0..n, 1u32..=10), 0..=2 * n);
            let tree_w = prop::collection::vec(1u32..=10, n - 1);
            let vw = prop::collection::vec(1u64..=3, n);
            (Just(n), parents, tree_w, extra, vw)
        })
        .prop_map(|(_, parents, tree_w, extra, vw)| {
            let mut edges: Vec<(usize, usize, f64)> =
                parents.iter().enumerate().map(|(i, &p)| (i + 1, p, tree_w[i] as f64)).collect();
            edges.extend(extra.into_iter().filter(|(a, b, _)| a != b).map(|(a, b, w)| (a, b, w as f64)));
            Graph::from_edges(vw, edges).unwrap()
        })
}

fn graph_and_seed(max_n: usize) -> impl Strategy<Value = (Graph, u64)> {
    (connected_graph(max_n), any::<u64>())
}

/// Smallest ε of at least 0.03 under which `p` is balanced.
fn feasible_epsilon(g: &Graph, p: &Partition) -> f64 {
    let half = g.total_vertex_weight().div_ceil(2) as f64;
    (p.max_block_weight() as f64 / half - 1.0).max(0.03) + 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn metis_round_trip(g in connected_graph(15)) {
        let text = write_metis(&g);
        let back = parse_metis(text.as_bytes()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.edge_weights(), g.edge_weights());
        prop_assert_eq!(back.vertex_weights(), g.vertex_weights());
    }

    #[test]
    fn partition_round_trip(blocks in prop::collection::vec(0u8..=1, 1..50)) {
        let text = write_partition(&blocks);
        prop_assert_eq!(parse_partition(text.as_bytes(), blocks.len()).unwrap(), blocks);
    }

    #[test]
    fn volume_is_additive((g, seed) in graph_and_seed(15)) {
        let mut r = rng(seed);
        let side = random_balanced_blocks(&mut r, g.n());
        let a = VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| side[v] == 1));
        let b = VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| side[v] == 0));
        prop_assert_eq!(g.volume(&a) + g.volume(&b), g.total_volume());
        prop_assert_eq!(g.total_volume(), 2.0 * g.total_edge_weight());
        prop_assert_eq!(g.volume(&VertexSet::full(g.n())), g.total_volume());
    }

    #[test]
    fn lca_matches_ancestor_chains((g, seed) in graph_and_seed(14)) {
        let mut r = rng(seed);
        let t = random_spanning_tree(&mut r, &g);
        for a in 0..g.n() {
            for b in 0..g.n() {
                prop_assert_eq!(t.lca(a, b), naive_lca(&t, a, b));
                prop_assert_eq!(t.is_descendant(a, b), ancestors(&t, a).contains(&b));
            }
        }
    }

    #[test]
    fn cut_attributes_match_definitions((g, seed) in graph_and_seed(12)) {
        let mut r = rng(seed);
        let t = random_spanning_tree(&mut r, &g);
        let fc = fundamental_cuts(&g, &t).unwrap();
        prop_assert!(fc.edge_visits <= 2 * g.m() + g.n());
        for u in 0..g.n() {
            let (vol, intra, inter) = attributes_by_definition(&g, &t, u);
            prop_assert_eq!(fc.attributes.subtree_vol[u], vol);
            prop_assert_eq!(fc.attributes.intra_weight[u], intra);
            if let Some(inter) = inter {
                prop_assert_eq!(fc.attributes.inter_weight[u], inter);
            }
        }
        let cond = cond_all_edges(&g, &t, &fc.conductances);
        let expected = cond_by_enumeration(&g, &t);
        for e in 0..g.m() {
            prop_assert!((cond[e] - expected[e]).abs() <= 1e-12);
        }
    }

    #[test]
    fn bft_depths_are_distances((g, seed) in graph_and_seed(15)) {
        let t = sample_bft(&g, seed).unwrap();
        let mut dist = vec![usize::MAX; g.n()];
        dist[t.root()] = 0;
        let mut queue = std::collections::VecDeque::from([t.root()]);
        while let Some(u) = queue.pop_front() {
            for &x in g.neighbor_ids(u) {
                if dist[x] == usize::MAX {
                    dist[x] = dist[u] + 1;
                    queue.push_back(x);
                }
            }
        }
        for (v, &d) in dist.iter().enumerate() {
            prop_assert_eq!(t.depth(v), d);
        }
    }

    #[test]
    fn contrast_is_bounded_by_tree_count((g, seed) in graph_and_seed(15), trees in 1usize..8) {
        let gamma = contrast(&g, trees, seed).unwrap();
        for e in 0..g.m() {
            prop_assert!(gamma[e] >= 0.0 && gamma[e] <= trees as f64 / 2.0);
        }
    }

    #[test]
    fn ratings_scale_with_cond((g, seed) in graph_and_seed(12)) {
        let mut r = rng(seed);
        let t = random_spanning_tree(&mut r, &g);
        let tc = excond::fundcut::all_fundamental_conductances(&g, &t).unwrap();
        let cond = cond_all_edges(&g, &t, &tc);
        let ones = EdgeValues::filled(g.m(), 1.0);
        let base = ex_cond(&g, &ones);
        let rated = ex_cond(&g, &cond);
        let exp2 = expansion_star2(&g);
        for e in 0..g.m() {
            let (a, b) = g.endpoints(e);
            let cc = (g.vertex_weight(a) * g.vertex_weight(b)) as f64;
            prop_assert_eq!(base[e], g.edge_weight(e) / cc);
            prop_assert!((rated[e] - base[e] * cond[e]).abs() <= 1e-12 * rated[e].abs().max(1.0));
            prop_assert_eq!(exp2[e], g.edge_weight(e).powi(2) / cc);
        }
    }

    #[test]
    fn matching_is_half_optimal((g, seed) in graph_and_seed(10)) {
        let mut r = rng(seed);
        let w = EdgeValues::new((0..g.m()).map(|_| rand::Rng::random_range(&mut r, 1..100) as f64).collect());
        let m = greedy_matching(&g, &w, u64::MAX);
        let mut value = 0.0;
        let mut used = vec![false; g.n()];
        for (a, b) in m.pairs() {
            prop_assert!(!used[a] && !used[b]);
            used[a] = true;
            used[b] = true;
            value += w[g.find_edge(a, b).unwrap()];
        }
        prop_assert!(2.0 * value >= max_weight_matching_value(&g, &w));
    }

    #[test]
    fn contraction_preserves_weights_and_cuts((g, seed) in graph_and_seed(15)) {
        let mut r = rng(seed);
        let w = EdgeValues::new((0..g.m()).map(|_| rand::Rng::random::<f64>(&mut r)).collect());
        let m = greedy_matching(&g, &w, u64::MAX);
        let (coarse, map) = contract(&g, &m);
        prop_assert_eq!(coarse.n(), g.n() - m.len());
        prop_assert_eq!(coarse.total_vertex_weight(), g.total_vertex_weight());
        let inner: f64 = m.pairs().map(|(a, b)| g.edge_weight(g.find_edge(a, b).unwrap())).sum();
        prop_assert_eq!(coarse.total_edge_weight() + inner, g.total_edge_weight());
        let coarse_blocks = random_balanced_blocks(&mut r, coarse.n());
        let cp = Partition::new(&coarse, coarse_blocks.clone()).unwrap();
        let fine = Partition::new(&g, map.iter().map(|&c| coarse_blocks[c]).collect()).unwrap();
        prop_assert_eq!(edge_cut(&coarse, &cp), edge_cut(&g, &fine));
        prop_assert_eq!(cp.block_weights(), fine.block_weights());
    }

    #[test]
    fn fm_never_worsens_a_balanced_cut((g, seed) in graph_and_seed(15)) {
        let mut r = rng(seed);
        let p = Partition::new(&g, random_balanced_blocks(&mut r, g.n())).unwrap();
        let eps = feasible_epsilon(&g, &p);
        let before = edge_cut(&g, &p);
        let out = fm_refine(&g, p, eps, 5);
        prop_assert!(out.is_balanced(eps));
        prop_assert!(edge_cut(&g, &out) <= before);
        let scratch = Partition::new(&g, out.blocks().to_vec()).unwrap();
        prop_assert_eq!(scratch.external_degrees(), out.external_degrees());
        prop_assert_eq!(scratch.block_weights(), out.block_weights());
    }

    #[test]
    fn postprocessing_is_monotone_and_balanced((g, seed) in graph_and_seed(15)) {
        let mut r = rng(seed);
        let p = Partition::new(&g, random_balanced_blocks(&mut r, g.n())).unwrap();
        let eps = feasible_epsilon(&g, &p);
        let before = mcv(&g, &p);
        let out = mcv_postprocess(&g, p, 5, eps, seed).unwrap();
        prop_assert!(mcv(&g, &out) <= before);
        prop_assert!(out.max_block_weight() as f64 <= balance_bound(g.total_vertex_weight(), eps));
        let [c0, c1] = comm_volumes(&g, &out);
        prop_assert_eq!(c0.max(c1), mcv(&g, &out));
    }
}
