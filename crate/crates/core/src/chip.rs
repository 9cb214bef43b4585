//! Burn-off chip firing: configurations, firing, relaxation and the burning
//! algorithm that decides legality.
//!
//! A firing vertex sends one chip to each neighbor and destroys one more,
//! so every firing lowers the total chip count by exactly one.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{tree_count, Graph};

/// Chip counts on the vertices of a specific graph.
#[derive(Debug, Clone)]
pub struct Configuration<'g> {
    graph: &'g Graph,
    chips: Vec<u32>,
}

impl<'g> Configuration<'g> {
    pub fn new(graph: &'g Graph, chips: Vec<u32>) -> Result<Self> {
        if chips.len() != graph.n() {
            return Err(Error::LengthMismatch {
                expected: graph.n(),
                got: chips.len(),
            });
        }
        Ok(Configuration { graph, chips })
    }

    pub fn zeros(graph: &'g Graph) -> Self {
        Configuration {
            graph,
            chips: vec![0; graph.n()],
        }
    }

    /// Every vertex holds exactly its degree. Always relaxed and legal.
    pub fn all_critical(graph: &'g Graph) -> Self {
        Configuration {
            graph,
            chips: (0..graph.n()).map(|v| graph.degree(v) as u32).collect(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn chips(&self) -> &[u32] {
        &self.chips
    }

    pub fn into_chips(self) -> Vec<u32> {
        self.chips
    }

    pub fn get(&self, v: usize) -> u32 {
        self.chips[v]
    }

    pub fn total(&self) -> u64 {
        self.chips.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn is_critical(&self, v: usize) -> bool {
        self.chips[v] as usize == self.graph.degree(v)
    }

    pub fn is_supercritical(&self, v: usize) -> bool {
        self.chips[v] as usize > self.graph.degree(v)
    }

    pub fn is_relaxed(&self) -> bool {
        self.first_supercritical().is_none()
    }

    fn first_supercritical(&self) -> Option<usize> {
        (0..self.chips.len()).find(|&v| self.is_supercritical(v))
    }

    fn ensure_relaxed(&self) -> Result<()> {
        match self.first_supercritical() {
            None => Ok(()),
            Some(v) => Err(Error::NotRelaxed {
                vertex: v,
                chips: self.chips[v],
                degree: self.graph.degree(v),
            }),
        }
    }

    /// Relaxed and legal, i.e. a member of the recurrent state space.
    pub fn is_relaxed_legal(&self) -> bool {
        self.is_relaxed() && burn(self).legal
    }

    pub fn with_chip_added(&self, v: usize) -> Result<Self> {
        self.graph.check_vertex(v)?;
        let mut next = self.clone();
        next.chips[v] += 1;
        Ok(next)
    }

    /// Restriction to `vertices`, placed on `induced`, which must be
    /// `self.graph().induced(vertices)`.
    pub fn restrict<'h>(&self, vertices: &[usize], induced: &'h Graph) -> Result<Configuration<'h>> {
        let mut selected = vertices.to_vec();
        selected.sort_unstable();
        selected.dedup();
        for &v in &selected {
            self.graph.check_vertex(v)?;
        }
        Configuration::new(induced, selected.iter().map(|&v| self.chips[v]).collect())
    }

    pub fn same_graph(&self, other: &Configuration<'_>) -> bool {
        std::ptr::eq(self.graph, other.graph) || self.graph == other.graph
    }
}

impl PartialEq for Configuration<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.chips == other.chips && self.same_graph(other)
    }
}

impl Eq for Configuration<'_> {}

impl Hash for Configuration<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.chips.hash(state);
    }
}

impl PartialOrd for Configuration<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Configuration<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.chips.cmp(&other.chips)
    }
}

impl fmt::Display for Configuration<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.chips.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Fires a supercritical vertex.
pub fn fire<'g>(c: &Configuration<'g>, v: usize) -> Result<Configuration<'g>> {
    let g = c.graph;
    g.check_vertex(v)?;
    if !c.is_supercritical(v) {
        return Err(Error::NotSupercritical {
            vertex: v,
            chips: c.chips[v],
            degree: g.degree(v),
        });
    }
    let mut next = c.clone();
    fire_in_place(g, &mut next.chips, v);
    Ok(next)
}

fn fire_in_place(g: &Graph, chips: &mut [u32], v: usize) {
    chips[v] -= g.degree(v) as u32 + 1;
    for &w in g.neighbors(v) {
        chips[w] += 1;
    }
}

/// Undoes a firing of `v`: takes one chip from every neighbor and gives `v`
/// its degree plus one.
pub fn reverse_fire<'g>(c: &Configuration<'g>, v: usize) -> Result<Configuration<'g>> {
    let g = c.graph;
    g.check_vertex(v)?;
    if let Some(&u) = g.neighbors(v).iter().find(|&&u| c.chips[u] == 0) {
        return Err(Error::ReverseFireBlocked { vertex: v, neighbor: u });
    }
    let mut next = c.clone();
    next.chips[v] += g.degree(v) as u32 + 1;
    for &u in g.neighbors(v) {
        next.chips[u] -= 1;
    }
    Ok(next)
}

/// Which supercritical vertex fires next during relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FiringOrder {
    /// First-in first-out; vertices that become supercritical together are
    /// queued by index.
    #[default]
    Fifo,
    /// A uniformly random supercritical vertex, from a ChaCha8 stream.
    Random { seed: u64 },
}

/// Outcome of one relaxation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameResult<'g> {
    /// Total number of firings.
    pub length: u64,
    /// Vertices that fired at least once, ascending.
    pub fired: Vec<usize>,
    pub final_config: Configuration<'g>,
}

/// Fires supercritical vertices until none is left.
pub fn relax<'g>(c: &Configuration<'g>, order: FiringOrder) -> GameResult<'g> {
    let g = c.graph;
    let mut chips = c.chips.clone();
    let mut fired = vec![false; g.n()];
    let mut length = 0u64;
    let supercritical = |chips: &[u32], v: usize| chips[v] as usize > g.degree(v);

    match order {
        FiringOrder::Fifo => {
            let mut queued: Vec<bool> = (0..g.n()).map(|v| supercritical(&chips, v)).collect();
            let mut queue: VecDeque<usize> = (0..g.n()).filter(|&v| queued[v]).collect();
            while let Some(v) = queue.pop_front() {
                queued[v] = false;
                fire_in_place(g, &mut chips, v);
                fired[v] = true;
                length += 1;
                for &w in g.neighbors(v) {
                    if !queued[w] && supercritical(&chips, w) {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
                if supercritical(&chips, v) {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
        FiringOrder::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pending: Vec<usize> = (0..g.n()).filter(|&v| supercritical(&chips, v)).collect();
            let mut member = vec![false; g.n()];
            for &v in &pending {
                member[v] = true;
            }
            while !pending.is_empty() {
                let v = pending.swap_remove(rng.random_range(0..pending.len()));
                member[v] = false;
                fire_in_place(g, &mut chips, v);
                fired[v] = true;
                length += 1;
                for &w in g.neighbors(v).iter().chain(std::iter::once(&v)) {
                    if !member[w] && supercritical(&chips, w) {
                        member[w] = true;
                        pending.push(w);
                    }
                }
            }
        }
    }

    GameResult {
        length,
        fired: (0..g.n()).filter(|&v| fired[v]).collect(),
        final_config: Configuration { graph: g, chips },
    }
}

/// Adds a chip at `v` to a relaxed configuration and relaxes the result.
pub fn seed_and_relax<'g>(c: &Configuration<'g>, v: usize, order: FiringOrder) -> Result<GameResult<'g>> {
    c.ensure_relaxed()?;
    let seeded = c.with_chip_added(v)?;
    let game = relax(&seeded, order);
    debug_assert!(
        !c.is_relaxed_legal() || game.length as usize == game.fired.len(),
        "a vertex fired twice in a game started from a relaxed legal configuration"
    );
    Ok(game)
}

/// Result of running the burning algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Burn {
    pub legal: bool,
    /// Vertices in deletion order. Each holds at least as many chips as it
    /// has neighbors deleted after it.
    pub order: Vec<usize>,
    /// Vertices left when the algorithm stopped; empty when `legal`.
    pub remaining: Vec<usize>,
}

impl Burn {
    /// The deletion order reversed: a labeling `w_1, ..., w_n` in which each
    /// `w_i` holds at least as many chips as it has neighbors among
    /// `w_1, ..., w_{i-1}`. `None` when the configuration is not legal.
    pub fn witness(&self) -> Option<Vec<usize>> {
        self.legal.then(|| self.order.iter().rev().copied().collect())
    }
}

/// Burning algorithm: repeatedly delete a vertex whose chips are at least
/// its degree in the remaining graph. The configuration is legal iff every
/// vertex gets deleted. Ties go to the smallest index.
pub fn burn(c: &Configuration<'_>) -> Burn {
    let g = c.graph;
    let n = g.n();
    let mut remaining_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut deleted = vec![false; n];
    let mut queued = vec![false; n];
    let mut eligible = BinaryHeap::new();
    for v in 0..n {
        if c.chips[v] as usize >= remaining_degree[v] {
            queued[v] = true;
            eligible.push(Reverse(v));
        }
    }
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = eligible.pop() {
        deleted[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if deleted[w] {
                continue;
            }
            remaining_degree[w] -= 1;
            if !queued[w] && c.chips[w] as usize >= remaining_degree[w] {
                queued[w] = true;
                eligible.push(Reverse(w));
            }
        }
    }
    let remaining: Vec<usize> = (0..n).filter(|&v| !deleted[v]).collect();
    Burn {
        legal: remaining.is_empty(),
        order,
        remaining,
    }
}

pub fn is_legal(c: &Configuration<'_>) -> bool {
    burn(c).legal
}

/// Largest graph accepted by [`is_recurrent_reachable`].
pub const REACHABILITY_MAX_VERTICES: usize = 4;

/// Whether `to` can be reached from `from` by seeding vertices and firing.
///
/// Breadth-first search over seed choices, capped at `|R| * n * 4` seeding
/// steps. A non-relaxed `from` is relaxed first. Only graphs with at most
/// four vertices are accepted.
pub fn is_recurrent_reachable(from: &Configuration<'_>, to: &Configuration<'_>) -> Result<bool> {
    if !from.same_graph(to) {
        return Err(Error::GraphMismatch);
    }
    let g = from.graph;
    if g.n() > REACHABILITY_MAX_VERTICES {
        return Err(Error::ScaleExceeded {
            what: "reachability search graph order",
            size: g.n().to_string(),
            limit: REACHABILITY_MAX_VERTICES.to_string(),
        });
    }
    if from.chips == to.chips {
        return Ok(true);
    }
    let start = relax(from, FiringOrder::Fifo).final_config;
    let r = tree_count(g.cone().graph()).value().to_u64().expect("small graph");
    let max_depth = r * g.n() as u64 * 4;

    let mut seen = HashSet::from([start.chips.clone()]);
    let mut frontier = vec![start];
    let mut depth = 0u64;
    while !frontier.is_empty() {
        if frontier.iter().any(|c| c.chips == to.chips) {
            return Ok(true);
        }
        if depth == max_depth {
            break;
        }
        depth += 1;
        let mut next = Vec::new();
        for c in &frontier {
            for v in 0..g.n() {
                let reached = seed_and_relax(c, v, FiringOrder::Fifo)?.final_config;
                if seen.insert(reached.chips.clone()) {
                    next.push(reached);
                }
            }
        }
        frontier = next;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn cfg<'g>(g: &'g Graph, chips: &[u32]) -> Configuration<'g> {
        Configuration::new(g, chips.to_vec()).unwrap()
    }

    #[test]
    fn fire_examples() {
        let k1 = families::complete(1).unwrap();
        let k2 = families::complete(2).unwrap();
        let k3 = families::complete(3).unwrap();
        assert_eq!(fire(&cfg(&k2, &[2, 0]), 0).unwrap().chips(), &[0, 1]);
        assert_eq!(fire(&cfg(&k1, &[1]), 0).unwrap().chips(), &[0]);
        assert_eq!(fire(&cfg(&k3, &[3, 0, 0]), 0).unwrap().chips(), &[0, 1, 1]);
        assert!(matches!(
            fire(&cfg(&k2, &[1, 0]), 0),
            Err(Error::NotSupercritical { vertex: 0, .. })
        ));
        assert!(matches!(fire(&cfg(&k2, &[1, 0]), 2), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn reverse_fire_examples() {
        let k1 = families::complete(1).unwrap();
        let k2 = families::complete(2).unwrap();
        let k3 = families::complete(3).unwrap();
        assert_eq!(reverse_fire(&cfg(&k2, &[0, 1]), 0).unwrap().chips(), &[2, 0]);
        assert_eq!(reverse_fire(&cfg(&k3, &[0, 1, 1]), 0).unwrap().chips(), &[3, 0, 0]);
        assert_eq!(reverse_fire(&cfg(&k1, &[0]), 0).unwrap().chips(), &[1]);
        assert_eq!(
            reverse_fire(&cfg(&k2, &[0, 0]), 0),
            Err(Error::ReverseFireBlocked { vertex: 0, neighbor: 1 })
        );
    }

    #[test]
    fn seed_and_relax_examples() {
        let k2 = families::complete(2).unwrap();
        let game = seed_and_relax(&cfg(&k2, &[1, 1]), 0, FiringOrder::Fifo).unwrap();
        assert_eq!(game.length, 2);
        assert_eq!(game.fired, vec![0, 1]);
        assert_eq!(game.final_config.chips(), &[1, 0]);

        let game = seed_and_relax(&cfg(&k2, &[0, 1]), 0, FiringOrder::Fifo).unwrap();
        assert_eq!(game.length, 0);
        assert_eq!(game.final_config.chips(), &[1, 1]);

        assert!(matches!(
            seed_and_relax(&cfg(&k2, &[2, 0]), 1, FiringOrder::Fifo),
            Err(Error::NotRelaxed { vertex: 0, .. })
        ));
    }

    #[test]
    fn k1_always_fires_once() {
        let k1 = families::complete(1).unwrap();
        let game = seed_and_relax(&cfg(&k1, &[0]), 0, FiringOrder::Fifo).unwrap();
        assert_eq!(game.length, 1);
        assert_eq!(game.final_config.chips(), &[0]);
    }

    #[test]
    fn relaxation_from_illegal_start_can_refire() {
        // Non-legal relaxed starts are outside the fire-at-most-once regime.
        let p3 = families::path(3).unwrap();
        let game = relax(&cfg(&p3, &[5, 0, 0]), FiringOrder::Fifo);
        assert!(game.final_config.is_relaxed());
        assert_eq!(game.final_config.total(), 5 - game.length);
    }

    #[test]
    fn burning_examples() {
        let k2 = families::complete(2).unwrap();
        assert!(!is_legal(&cfg(&k2, &[0, 0])));
        let b = burn(&cfg(&k2, &[1, 0]));
        assert!(b.legal);
        assert_eq!(b.order, vec![0, 1]);
        assert_eq!(b.witness(), Some(vec![1, 0]));
        let b = burn(&cfg(&k2, &[0, 0]));
        assert_eq!(b.remaining, vec![0, 1]);

        let g = families::k3_pendant();
        assert!(is_legal(&Configuration::all_critical(&g)));
        let empty = Graph::empty(0);
        assert!(is_legal(&Configuration::zeros(&empty)));
    }

    #[test]
    fn reachability_examples() {
        let k2 = families::complete(2).unwrap();
        assert!(is_recurrent_reachable(&cfg(&k2, &[0, 0]), &cfg(&k2, &[0, 0])).unwrap());
        assert!(is_recurrent_reachable(&cfg(&k2, &[0, 0]), &cfg(&k2, &[1, 1])).unwrap());
        assert!(!is_recurrent_reachable(&cfg(&k2, &[1, 1]), &cfg(&k2, &[0, 0])).unwrap());

        let k5 = families::complete(5).unwrap();
        let c = Configuration::all_critical(&k5);
        assert!(matches!(
            is_recurrent_reachable(&c, &c),
            Err(Error::ScaleExceeded { .. })
        ));
        let k3 = families::complete(3).unwrap();
        assert_eq!(
            is_recurrent_reachable(&cfg(&k2, &[0, 0]), &cfg(&k3, &[0, 0, 0])),
            Err(Error::GraphMismatch)
        );
    }

    #[test]
    fn restriction() {
        let g = families::k3_pendant();
        let c = cfg(&g, &[3, 1, 2, 0]);
        let h = g.induced(&[1, 2, 3]);
        let r = c.restrict(&[3, 1, 2], &h).unwrap();
        assert_eq!(r.chips(), &[1, 2, 0]);
    }
}
