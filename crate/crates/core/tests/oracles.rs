//! Exhaustive comparisons between the determinant-based counts and
//! brute-force enumeration over small graph catalogues.

use std::collections::BTreeSet;

use burnoff_core::enumeration::count_length_ell_pairs_by_subtree;
use burnoff_core::families::{self, connected_graphs_up_to_isomorphism, connected_labeled_graphs};
use burnoff_core::graph::connected_sets_containing;
use burnoff_core::{
    burn, config_to_tree, config_to_tree_traced, count_length_ell_pairs, count_r, distribution_analytic,
    distribution_oracle, enumerate_r_bruteforce, enumerate_rooted_subtrees, enumerate_spanning_trees, tree_count,
    tree_to_config, Configuration, Graph,
};
use num_bigint::BigUint;

fn all_small_graphs() -> Vec<Graph> {
    (1..=6)
        .flat_map(|n| connected_graphs_up_to_isomorphism(n).unwrap())
        .collect()
}

#[test]
fn spanning_tree_stream_matches_determinant() {
    for g in all_small_graphs() {
        let trees: Vec<_> = enumerate_spanning_trees(&g).collect();
        assert_eq!(tree_count(&g), trees.len() as u64, "{g}");
        for t in &trees {
            t.validate(&g).unwrap();
        }
        let distinct: BTreeSet<_> = trees.iter().collect();
        assert_eq!(distinct.len(), trees.len());
    }
}

#[test]
fn r_size_matches_cone_tree_count() {
    for g in all_small_graphs() {
        let r = enumerate_r_bruteforce(&g).unwrap();
        assert_eq!(count_r(&g), r.len() as u64, "{g}");
    }
}

#[test]
fn r_size_on_disconnected_graphs_is_a_product() {
    // All labeled graphs on up to 5 vertices, connected or not.
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::new(n, edges).unwrap();
            let brute = enumerate_r_bruteforce(&g).unwrap().len() as u64;
            assert_eq!(count_r(&g), brute);
            let product: BigUint = g
                .components()
                .iter()
                .map(|comp| count_r(&g.induced(comp)).into_inner())
                .product();
            assert_eq!(product, BigUint::from(brute));
            if !g.is_connected() {
                assert_eq!(tree_count(&g), 0u64);
            }
        }
    }
}

#[test]
fn analytic_distribution_matches_played_games() {
    for g in all_small_graphs() {
        let analytic = distribution_analytic(&g).unwrap();
        let oracle = distribution_oracle(&g).unwrap();
        assert_eq!(analytic, oracle, "{g}");
        let expected_total = count_r(&g).into_inner() * BigUint::from(g.n());
        assert_eq!(analytic.total(), &expected_total);
        assert_eq!(oracle.counts().iter().sum::<BigUint>(), expected_total);
    }
}

#[test]
fn per_set_and_per_subtree_sums_agree() {
    for g in all_small_graphs() {
        for ell in 1..=g.n() {
            assert_eq!(
                count_length_ell_pairs(&g, ell).unwrap(),
                count_length_ell_pairs_by_subtree(&g, ell).unwrap(),
                "{g} ell={ell}"
            );
        }
    }
}

#[test]
fn rooted_subtrees_group_by_vertex_set() {
    for g in all_small_graphs() {
        for v in 0..g.n() {
            for ell in 1..=g.n() {
                let subtrees = enumerate_rooted_subtrees(&g, v, ell).unwrap().count() as u64;
                let by_set: BigUint = connected_sets_containing(&g, v, ell)
                    .unwrap()
                    .iter()
                    .map(|s| tree_count(&g.induced(s)).into_inner())
                    .sum();
                assert_eq!(BigUint::from(subtrees), by_set, "{g} v={v} ell={ell}");
            }
        }
    }
}

#[test]
fn bijection_round_trips_on_labeled_graphs() {
    for n in 1..=5 {
        for g in connected_labeled_graphs(n).unwrap() {
            let cone = g.cone();
            let configs = enumerate_r_bruteforce(&g).unwrap();
            let mut images = BTreeSet::new();
            for c in &configs {
                let t = config_to_tree(c).unwrap();
                t.validate(cone.graph()).unwrap();
                assert_eq!(&tree_to_config(&g, &t).unwrap(), c, "{g} {c}");
                images.insert(t);
            }
            assert_eq!(count_r(&g), images.len() as u64);
            let mut trees = 0u64;
            for t in enumerate_spanning_trees(cone.graph()) {
                let c = tree_to_config(&g, &t).unwrap();
                assert!(c.is_relaxed_legal());
                assert_eq!(config_to_tree(&c).unwrap(), t, "{g}");
                trees += 1;
            }
            assert_eq!(trees, configs.len() as u64);
        }
    }
}

#[test]
fn apex_edges_mark_critical_vertices_and_layers_are_distances() {
    for g in all_small_graphs() {
        let apex = g.n();
        for c in enumerate_r_bruteforce(&g).unwrap() {
            let (t, trace) = config_to_tree_traced(&c).unwrap();
            for v in 0..g.n() {
                assert_eq!(t.contains(v, apex), c.is_critical(v), "{g} {c} v={v}");
            }
            let distance = tree_distances(apex, t.edges());
            for layer in &trace.layers {
                for &v in &layer.members {
                    assert_eq!(distance[v], layer.depth, "{g} {c} v={v}");
                }
            }
        }
    }
}

fn tree_distances(root: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let n = root + 1;
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[test]
fn burning_witness_and_restriction() {
    for n in 1..=5 {
        for g in connected_labeled_graphs(n).unwrap() {
            for c in enumerate_r_bruteforce(&g).unwrap() {
                let witness = burn(&c).witness().unwrap();
                let mut position = vec![0; n];
                for (i, &w) in witness.iter().enumerate() {
                    position[w] = i;
                }
                for (i, &w) in witness.iter().enumerate() {
                    let earlier = g.neighbors(w).iter().filter(|&&u| position[u] < i).count();
                    assert!(c.get(w) as usize >= earlier, "{g} {c}");
                }
                for mask in 1u32..(1 << n) {
                    let keep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    let h = g.induced(&keep);
                    let restricted = c.restrict(&keep, &h).unwrap();
                    assert!(burn(&restricted).legal, "{g} {c} on {keep:?}");
                }
            }
        }
    }
}

#[test]
fn table_values_for_the_pendant_triangle() {
    let g = families::k3_pendant();
    let d = distribution_analytic(&g).unwrap();
    let counts: Vec<u64> = d.counts().iter().map(|c| c.try_into().unwrap()).collect();
    assert_eq!(counts, vec![82, 35, 16, 15, 12]);
    assert_eq!(d.total(), &BigUint::from(160u32));
    let percents: Vec<String> = (0..5).map(|l| d.percent(l)).collect();
    assert_eq!(percents, ["51.25", "21.875", "10", "9.375", "7.5"]);
}

#[test]
fn relabeling_preserves_counts() {
    let g = families::k3_pendant();
    let reference = distribution_analytic(&g).unwrap();
    for perm in [[3, 2, 1, 0], [1, 0, 3, 2], [2, 3, 0, 1]] {
        let h = g.relabel(&perm).unwrap();
        assert_eq!(tree_count(h.cone().graph()), tree_count(g.cone().graph()));
        assert_eq!(distribution_analytic(&h).unwrap(), reference);
    }
    // A configuration stays legal under the matching relabeling.
    let c = Configuration::new(&g, vec![2, 1, 2, 0]).unwrap();
    let h = g.relabel(&[3, 2, 1, 0]).unwrap();
    let mut moved = vec![0; 4];
    for v in 0..4 {
        moved[[3, 2, 1, 0][v]] = c.get(v);
    }
    assert!(Configuration::new(&h, moved).unwrap().is_relaxed_legal());
}
