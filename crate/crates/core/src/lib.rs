//! Exact and simulated length distributions of burn-off chip-firing games.
//!
//! The relaxed legal configurations of a graph `G` are in bijection with the
//! spanning trees of its cone `G*` (`G` plus an apex joined to every
//! vertex). This crate implements both directions of that bijection, counts
//! seed/configuration pairs by game length through spanning-tree
//! determinants, and simulates the random seeding chain for comparison.
//!
//! ```
//! use burnoff_core::{distribution_analytic, families, run_simulation};
//!
//! let g = families::k3_pendant();
//! let exact = distribution_analytic(&g)?;
//! assert_eq!(exact.percent(0), "51.25");
//!
//! let report = run_simulation(&g, 2_000, 1, 0.1)?;
//! assert_eq!(report.length_histogram.iter().sum::<u64>(), 2_000);
//! # Ok::<(), burnoff_core::Error>(())
//! ```

pub mod bijection;
pub mod chart;
pub mod chi_square;
pub mod chip;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod format;
pub mod graph;
pub mod markov;

pub use bijection::{config_to_tree, config_to_tree_traced, tree_to_config, tree_to_config_traced, BijectionTrace};
pub use chi_square::{goodness_of_fit, ChiSquareTest};
pub use chip::{
    burn, fire, is_legal, is_recurrent_reachable, relax, reverse_fire, seed_and_relax, Burn, Configuration,
    FiringOrder, GameResult,
};
pub use enumeration::{
    count_length_ell_pairs, count_length_ell_pairs_by_subtree, count_length_zero_pairs, count_r, distribution_analytic,
    distribution_oracle, enumerate_r_bruteforce, LengthDistribution,
};
pub use error::{Error, Result};
pub use graph::{
    connected_sets, enumerate_rooted_subtrees, enumerate_spanning_trees, tree_count, tree_count_minus_edge, ConeGraph,
    Graph, SpanningTree, Subtree, TreeCount,
};
pub use markov::{
    chain_init, chain_step, run_simulation, simulate, visitation_uniformity, ChainState, SimulationOptions,
    SimulationReport,
};
