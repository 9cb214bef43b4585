//! Exact counts of (configuration, seed) pairs by game length.
//!
//! Length zero: seeding `v` fires nothing exactly when `v` is not critical,
//! and non-critical `v` correspond to cone spanning trees avoiding the apex
//! edge at `v`. So the count is the sum over `v` of the spanning-tree count
//! of the cone minus that edge.
//!
//! Length `ell > 0`: the fired vertices span a subtree `T` of order `ell`
//! containing the seed, and the remaining vertices carry an arbitrary
//! relaxed legal configuration of `G - T`. The count is the sum over seeds
//! `v` and such subtrees `T` of `r(G - T)`, where `r(H)` is the number of
//! spanning trees of the cone of `H`. Since `r(G - T)` only depends on the
//! vertex set of `T`, the sum is evaluated per connected vertex set `S` as
//! `|S| * tau(G[S]) * r(G - S)`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::chip::{burn, seed_and_relax, Configuration, FiringOrder};
use crate::error::{Error, Result};
use crate::format::format_decimal;
use crate::graph::{connected_sets, enumerate_rooted_subtrees, tree_count, tree_count_minus_edge, Graph, TreeCount};

/// Largest candidate box (product of `deg(v) + 1`) scanned by brute force.
pub const BRUTE_FORCE_BOX_LIMIT: u64 = 10_000_000;
/// Largest number of games the oracle will play.
pub const ORACLE_GAME_LIMIT: u64 = 1_000_000;

/// Exact number of pairs `(C, v)` per game length `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthDistribution {
    counts: Vec<BigUint>,
    total: BigUint,
}

impl LengthDistribution {
    /// `counts[ell]` is the number of pairs with game length `ell`.
    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        let total = counts.iter().sum();
        LengthDistribution { counts, total }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, length: usize) -> BigUint {
        self.counts.get(length).cloned().unwrap_or_default()
    }

    /// `|R| * n`.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn max_length(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Zero for every length when there are no pairs at all (empty graph).
    pub fn probability(&self, length: usize) -> BigRational {
        if self.total.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(self.count(length).into(), self.total.clone().into())
    }

    pub fn probabilities_f64(&self) -> Vec<f64> {
        (0..self.counts.len())
            .map(|l| self.probability(l).to_f64().unwrap_or(0.0))
            .collect()
    }

    /// `100 * count / total` as an exact decimal when it terminates.
    pub fn percent(&self, length: usize) -> String {
        if self.total.is_zero() {
            return "0".to_string();
        }
        format_decimal(&(self.count(length) * 100u32), &self.total, 6)
    }

    pub fn probability_decimal(&self, length: usize) -> String {
        if self.total.is_zero() {
            return "0".to_string();
        }
        format_decimal(&self.count(length), &self.total, 6)
    }

    /// CSV with header `length,count,total,probability`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,count,total,probability\n");
        for (length, count) in self.counts.iter().enumerate() {
            out.push_str(&format!(
                "{length},{count},{},{}\n",
                self.total,
                self.probability_decimal(length)
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .counts
            .iter()
            .enumerate()
            .map(|(length, count)| {
                let reduced = self.probability(length);
                json!({
                    "length": length,
                    "count": big_number(count),
                    "fraction": format!("{count}/{}", self.total),
                    "probability": format!("{}/{}", reduced.numer(), reduced.denom()),
                    "percent": self.percent(length),
                })
            })
            .collect();
        json!({ "total": big_number(&self.total), "lengths": rows })
    }
}

/// A JSON number carrying every digit of `value`.
pub fn big_number(value: &BigUint) -> Value {
    Value::Number(value.to_string().parse().expect("decimal digits form a JSON number"))
}

fn box_size(g: &Graph) -> Option<u64> {
    (0..g.n()).try_fold(1u64, |acc, v| acc.checked_mul(g.degree(v) as u64 + 1))
}

/// All relaxed legal configurations, found by scanning every `C` with
/// `0 <= C(v) <= deg(v)` and running the burning algorithm. Lexicographic
/// order.
pub fn enumerate_r_bruteforce(g: &Graph) -> Result<Vec<Configuration<'_>>> {
    let size = box_size(g);
    if size.is_none_or(|s| s > BRUTE_FORCE_BOX_LIMIT) {
        return Err(Error::ScaleExceeded {
            what: "brute-force configuration box",
            size: size.map_or_else(|| "overflow".to_string(), |s| s.to_string()),
            limit: BRUTE_FORCE_BOX_LIMIT.to_string(),
        });
    }
    let n = g.n();
    if n == 0 {
        return Ok(vec![Configuration::zeros(g)]);
    }
    // Split on the leading coordinate so chunks concatenate in order.
    let chunks: Vec<Vec<Configuration<'_>>> = (0..=g.degree(0) as u32)
        .into_par_iter()
        .map(|lead| {
            let mut found = Vec::new();
            let mut chips = vec![0u32; n];
            chips[0] = lead;
            loop {
                let c = Configuration::new(g, chips.clone()).expect("length matches");
                if burn(&c).legal {
                    found.push(c);
                }
                // Odometer over coordinates 1..n, last coordinate fastest.
                let mut i = n - 1;
                loop {
                    if i == 0 {
                        return found;
                    }
                    if (chips[i] as usize) < g.degree(i) {
                        chips[i] += 1;
                        break;
                    }
                    chips[i] = 0;
                    i -= 1;
                }
            }
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `|R(G)|`, as the number of spanning trees of the cone. Valid for
/// disconnected graphs too, where it factors over components.
pub fn count_r(g: &Graph) -> TreeCount {
    tree_count(g.cone().graph())
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Pairs whose game has length zero.
pub fn count_length_zero_pairs(g: &Graph) -> Result<TreeCount> {
    require_connected(g)?;
    let cone = g.cone();
    let per_vertex = (0..g.n())
        .into_par_iter()
        .map(|v| tree_count_minus_edge(&cone, v).map(TreeCount::into_inner))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeCount(per_vertex.into_iter().sum()))
}

fn check_length(g: &Graph, ell: usize) -> Result<()> {
    if ell == 0 || ell > g.n() {
        return Err(Error::OutOfRange {
            what: "game length",
            value: ell,
            min: 1,
            max: g.n(),
        });
    }
    Ok(())
}

/// Pairs whose game has length `ell >= 1`.
pub fn count_length_ell_pairs(g: &Graph, ell: usize) -> Result<TreeCount> {
    require_connected(g)?;
    check_length(g, ell)?;
    let sets = connected_sets(g, ell)?;
    let total: BigUint = sets
        .par_iter()
        .map(|set| {
            let inside = tree_count(&g.induced(set)).into_inner();
            let outside = count_r(&g.without_vertices(set)).into_inner();
            inside * outside * BigUint::from(ell)
        })
        .sum();
    Ok(TreeCount(total))
}

/// The same count as [`count_length_ell_pairs`], summed literally over
/// seeds `v` and subtrees `T` containing `v`, one `r(G - T)` per subtree.
/// Much slower; kept as a cross-check.
pub fn count_length_ell_pairs_by_subtree(g: &Graph, ell: usize) -> Result<TreeCount> {
    require_connected(g)?;
    check_length(g, ell)?;
    let mut total = BigUint::zero();
    for v in 0..g.n() {
        for subtree in enumerate_rooted_subtrees(g, v, ell)? {
            total += count_r(&g.without_vertices(&subtree.vertices)).into_inner();
        }
    }
    Ok(TreeCount(total))
}

/// Exact length distribution from spanning-tree counts.
pub fn distribution_analytic(g: &Graph) -> Result<LengthDistribution> {
    require_connected(g)?;
    let mut counts = vec![count_length_zero_pairs(g)?.into_inner()];
    for ell in 1..=g.n() {
        counts.push(count_length_ell_pairs(g, ell)?.into_inner());
    }
    let dist = LengthDistribution::from_counts(counts);
    assert_eq!(
        dist.total(),
        &(count_r(g).into_inner() * BigUint::from(g.n())),
        "length counts must add up to |R| * n"
    );
    Ok(dist)
}

/// Length distribution by playing every game: each relaxed legal
/// configuration (found by brute force) seeded at each vertex.
pub fn distribution_oracle(g: &Graph) -> Result<LengthDistribution> {
    let games = count_r(g).value().to_u64().and_then(|r| r.checked_mul(g.n() as u64));
    if games.is_none_or(|games| games > ORACLE_GAME_LIMIT) {
        return Err(Error::ScaleExceeded {
            what: "oracle game count",
            size: (count_r(g).into_inner() * BigUint::from(g.n())).to_string(),
            limit: ORACLE_GAME_LIMIT.to_string(),
        });
    }
    let n = g.n();
    let configs = enumerate_r_bruteforce(g)?;
    let tally = configs
        .par_iter()
        .map(|c| {
            let mut local = vec![0u64; n + 1];
            for v in 0..n {
                let game = seed_and_relax(c, v, FiringOrder::Fifo).expect("members of R are relaxed");
                let length = game.length as usize;
                assert!(
                    length <= n,
                    "a game from a relaxed legal start fired {length} > {n} times"
                );
                local[length] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(LengthDistribution::from_counts(
        tally.into_iter().map(BigUint::from).collect(),
    ))
}
