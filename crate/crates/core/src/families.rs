//! Built-in graph families and small-graph catalogues.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Path on `n` vertices, `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    at_least("path order", n, 1)?;
    Graph::new(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    at_least("cycle order", n, 3)?;
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    at_least("complete graph order", n, 1)?;
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Star on `n` vertices: center 0 joined to `1..n`.
pub fn star(n: usize) -> Result<Graph> {
    at_least("star order", n, 1)?;
    Graph::new(n, (1..n).map(|v| (0, v)))
}

/// Triangle `0-1-2` with pendant vertex 3 attached to 0.
pub fn k3_pendant() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).expect("fixed edge list")
}

fn at_least(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::OutOfRange {
            what,
            value: n,
            min,
            max: usize::MAX,
        });
    }
    Ok(())
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> Graph {
    Graph::new(
        n,
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e),
    )
    .expect("pairs are distinct and in range")
}

const LABELED_LIMIT: usize = 7;
const ISOMORPHISM_LIMIT: usize = 6;

/// Every connected labeled graph on `n` vertices (`n <= 7`), in order of
/// edge bitmask.
pub fn connected_labeled_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > LABELED_LIMIT {
        return Err(Error::ScaleExceeded {
            what: "labeled graph catalogue order",
            size: n.to_string(),
            limit: LABELED_LIMIT.to_string(),
        });
    }
    let pairs = all_pairs(n);
    Ok((0u32..1 << pairs.len())
        .map(|mask| from_mask(n, &pairs, mask))
        .filter(Graph::is_connected)
        .collect())
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices (`n <= 6`). Each representative is the labeling whose edge
/// bitmask is smallest.
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Result<Vec<Graph>> {
    if n > ISOMORPHISM_LIMIT {
        return Err(Error::ScaleExceeded {
            what: "isomorphism catalogue order",
            size: n.to_string(),
            limit: ISOMORPHISM_LIMIT.to_string(),
        });
    }
    let pairs = all_pairs(n);
    let mut index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let g = from_mask(n, &pairs, mask);
        if !g.is_connected() {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << index[p[u]][p[v]])
            })
            .min()
            .unwrap_or(mask);
        if seen.insert(canonical) {
            reps.push(from_mask(n, &pairs, canonical));
        }
    }
    Ok(reps)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut current, &mut out);
    out
}

fn heap_permute(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, items, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, items, out);
}

/// Erdős–Rényi `G(n, p)` conditioned on connectivity (by rejection).
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let pairs = all_pairs(n);
    loop {
        let edges: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.random_bool(p)).collect();
        let g = Graph::new(n, edges).expect("pairs are distinct and in range");
        if g.is_connected() {
            return g;
        }
    }
}
