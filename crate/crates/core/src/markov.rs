//! The random seeding chain on relaxed legal configurations.
//!
//! Each transition picks a seed vertex uniformly at random, adds a chip
//! there and relaxes. The chain's stationary distribution is uniform on
//! `R`, so long runs reproduce the exact length distribution.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit integer; vertex
//! draws use rand's unbiased range sampling on `u32`. Both are
//! platform-independent, so a seed fixes the whole trajectory.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chi_square::{critical_value, goodness_of_fit, survival, ChiSquareTest};
use crate::chip::{seed_and_relax, Configuration, FiringOrder, GameResult};
use crate::enumeration::{count_r, distribution_analytic};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph for which simulations compute the analytic distribution
/// to test against.
pub const ANALYTIC_MAX_VERTICES: usize = 12;
/// Largest state space for which visits are tracked per configuration.
pub const VISITATION_MAX_STATES: u64 = 10_000;

#[derive(Debug, Clone)]
pub struct ChainState<'g> {
    current: Configuration<'g>,
    step_count: u64,
    rng: ChaCha8Rng,
}

/// Starts a chain at `start`, or at the all-critical configuration.
pub fn chain_init<'g>(g: &'g Graph, seed: u64, start: Option<Configuration<'g>>) -> Result<ChainState<'g>> {
    if g.n() == 0 {
        return Err(Error::InvalidGraph("the chain needs at least one vertex".into()));
    }
    if g.n() > u32::MAX as usize {
        return Err(Error::ScaleExceeded {
            what: "graph order",
            size: g.n().to_string(),
            limit: u32::MAX.to_string(),
        });
    }
    let current = match start {
        Some(c) => {
            if !std::ptr::eq(c.graph(), g) && c.graph() != g {
                return Err(Error::GraphMismatch);
            }
            if !c.is_relaxed() {
                let v = (0..g.n()).find(|&v| c.is_supercritical(v)).unwrap_or(0);
                return Err(Error::NotRelaxed {
                    vertex: v,
                    chips: c.get(v),
                    degree: g.degree(v),
                });
            }
            let burnt = crate::chip::burn(&c);
            if !burnt.legal {
                return Err(Error::NotLegal {
                    remaining: burnt.remaining,
                });
            }
            c
        }
        None => Configuration::all_critical(g),
    };
    Ok(ChainState {
        current,
        step_count: 0,
        rng: ChaCha8Rng::seed_from_u64(seed),
    })
}

impl<'g> ChainState<'g> {
    pub fn current(&self) -> &Configuration<'g> {
        &self.current
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    /// One transition. Returns the seed vertex and the game it started.
    pub fn step(&mut self) -> (usize, GameResult<'g>) {
        let n = self.current.graph().n() as u32;
        let v = self.rng.random_range(0..n) as usize;
        let game = seed_and_relax(&self.current, v, FiringOrder::Fifo).expect("chain states are relaxed");
        debug_assert!(game.final_config.is_relaxed_legal(), "chain left R");
        debug_assert_eq!(game.length as usize, game.fired.len(), "a vertex fired twice");
        self.current = game.final_config.clone();
        self.step_count += 1;
        (v, game)
    }
}

pub fn chain_step<'g>(state: &mut ChainState<'g>) -> GameResult<'g> {
    state.step().1
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VisitCount {
    pub configuration: Vec<u32>,
    pub visits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Visitation {
    /// `|R|`.
    pub states: u64,
    pub distinct_visited: usize,
    /// Visit counts of visited states, by configuration.
    pub counts: Vec<VisitCount>,
    /// `max |N_m(C)/m - 1/|R||` over all of `R`, unvisited states included.
    pub max_deviation: Option<f64>,
    pub uniformity: Option<ChiSquareTest>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub vertices: usize,
    pub games_played: u64,
    pub seed: u64,
    /// Observed number of games of each length `0..=n`.
    pub length_histogram: Vec<u64>,
    /// Analytic probability of each length, when computed.
    pub expected_probabilities: Option<Vec<f64>>,
    pub chi_square: Option<ChiSquareTest>,
    /// Why `chi_square` is absent, when it is.
    pub chi_square_skipped: Option<String>,
    pub visitation: Option<Visitation>,
}

impl SimulationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Histogram CSV: `length,observed,expected_probability`.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("length,observed,expected_probability\n");
        for (length, &observed) in self.length_histogram.iter().enumerate() {
            let expected = self
                .expected_probabilities
                .as_ref()
                .map(|p| p[length].to_string())
                .unwrap_or_default();
            out.push_str(&format!("{length},{observed},{expected}\n"));
        }
        out
    }

    /// Observed relative frequency of each length.
    pub fn empirical_probabilities(&self) -> Vec<f64> {
        let m = self.games_played.max(1) as f64;
        self.length_histogram.iter().map(|&c| c as f64 / m).collect()
    }
}

fn analytic_probabilities(g: &Graph) -> std::result::Result<Vec<f64>, String> {
    if !g.is_connected() {
        return Err("graph is disconnected".into());
    }
    if g.n() > ANALYTIC_MAX_VERTICES {
        return Err(format!(
            "analytic distribution skipped above {ANALYTIC_MAX_VERTICES} vertices"
        ));
    }
    distribution_analytic(g)
        .map(|d| d.probabilities_f64())
        .map_err(|e| e.to_string())
}

/// Settings for [`simulate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions {
    pub games: u64,
    pub seed: u64,
    pub alpha: f64,
    /// Track visits per configuration (needs `|R| <= 10^4`).
    pub track_visits: bool,
}

/// Plays `m >= 1` games from the all-critical start and tests the length
/// histogram against the analytic distribution at level `alpha`.
pub fn run_simulation(g: &Graph, m: u64, seed: u64, alpha: f64) -> Result<SimulationReport> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "game count",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    simulate(
        g,
        SimulationOptions {
            games: m,
            seed,
            alpha,
            track_visits: false,
        },
    )
}

/// Runs `m` transitions tracking how often each state is visited (the state
/// after each transition counts once). Requires `|R| <= 10^4`. The
/// uniformity test uses level 0.05.
pub fn visitation_uniformity(g: &Graph, m: u64, seed: u64) -> Result<SimulationReport> {
    simulate(
        g,
        SimulationOptions {
            games: m,
            seed,
            alpha: 0.05,
            track_visits: true,
        },
    )
}

/// One chain from the all-critical start; `games` may be zero.
pub fn simulate(g: &Graph, options: SimulationOptions) -> Result<SimulationReport> {
    let SimulationOptions {
        games: m,
        seed,
        alpha,
        track_visits,
    } = options;
    let states = if track_visits {
        let states = count_r(g);
        match states.value().to_u64() {
            Some(s) if s <= VISITATION_MAX_STATES => Some(s),
            _ => {
                return Err(Error::ScaleExceeded {
                    what: "state space for visitation tracking",
                    size: states.to_string(),
                    limit: VISITATION_MAX_STATES.to_string(),
                })
            }
        }
    } else {
        None
    };

    let mut state = chain_init(g, seed, None)?;
    let mut histogram = vec![0u64; g.n() + 1];
    let mut visits: HashMap<Vec<u32>, u64> = HashMap::new();
    for _ in 0..m {
        let game = chain_step(&mut state);
        histogram[game.length as usize] += 1;
        if track_visits {
            *visits.entry(state.current().chips().to_vec()).or_default() += 1;
        }
    }

    let (expected, chi, skipped) = match analytic_probabilities(g) {
        Ok(_) if m == 0 => (None, None, Some("no games played".to_string())),
        Ok(p) => {
            let test = goodness_of_fit(&histogram, &p, alpha);
            (Some(p), Some(test), None)
        }
        Err(reason) => (None, None, Some(reason)),
    };
    Ok(SimulationReport {
        vertices: g.n(),
        games_played: m,
        seed,
        length_histogram: histogram,
        expected_probabilities: expected,
        chi_square: chi,
        chi_square_skipped: skipped,
        visitation: states.map(|states| visitation_summary(states, visits, m, alpha)),
    })
}

fn visitation_summary(states: u64, visits: HashMap<Vec<u32>, u64>, m: u64, alpha: f64) -> Visitation {
    let mut counts: Vec<VisitCount> = visits
        .into_iter()
        .map(|(configuration, visits)| VisitCount { configuration, visits })
        .collect();
    counts.sort_by(|a, b| a.configuration.cmp(&b.configuration));
    if m == 0 {
        return Visitation {
            states,
            distinct_visited: 0,
            counts,
            max_deviation: None,
            uniformity: None,
        };
    }

    let share = 1.0 / states as f64;
    let unvisited = states - counts.len() as u64;
    let mut worst = counts
        .iter()
        .map(|c| (c.visits as f64 / m as f64 - share).abs())
        .fold(0.0f64, f64::max);
    if unvisited > 0 {
        worst = worst.max(share);
    }
    let expected = m as f64 / states as f64;
    let statistic = counts
        .iter()
        .map(|c| {
            let d = c.visits as f64 - expected;
            d * d / expected
        })
        .sum::<f64>()
        + unvisited as f64 * expected;
    let df = (states - 1) as usize;
    let critical = critical_value(df, alpha);
    Visitation {
        states,
        distinct_visited: counts.len(),
        counts,
        max_deviation: Some(worst),
        uniformity: Some(ChiSquareTest {
            statistic,
            degrees_of_freedom: df,
            alpha,
            critical_value: critical,
            p_value: survival(df, statistic),
            reject: df > 0 && statistic > critical,
            bins: Vec::new(),
        }),
    }
}

/// Total-variation distance between two distributions on the same support.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    (0..len)
        .map(|i| (p.get(i).copied().unwrap_or(0.0) - q.get(i).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
        / 2.0
}
