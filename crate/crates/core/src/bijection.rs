//! The bijection between relaxed legal configurations on a connected graph
//! `G` and spanning trees of its cone `G*`.
//!
//! Both directions grow the tree outward from the apex in layers. A vertex
//! in layer `i` looks at its `G`-neighbors in layers `1..i`, concatenated
//! layer by layer with each layer in index order; call that sequence `N`.
//! Its chip count is `deg(u) - t` exactly when its tree parent is the
//! `t`-th entry of `N`. Layer-1 vertices hang off the apex and are critical.

use std::collections::VecDeque;
use std::fmt;

use crate::chip::{burn, Configuration};
use crate::error::{Error, Result};
use crate::graph::{Graph, SpanningTree};

/// What happened to one vertex while a layer was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Placement {
    /// Critical vertex joined to the apex.
    Apex,
    /// Too few earlier neighbors so far; the vertex waits for a later layer.
    Deferred,
    /// Joined to `parent`, the `position`-th (1-based) entry of `N`.
    Attached { position: usize, parent: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStep {
    pub vertex: usize,
    pub chips: u32,
    pub degree: usize,
    /// Earlier-layer neighbors, concatenated layer by layer.
    pub earlier_neighbors: Vec<usize>,
    pub placement: Placement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerStep {
    /// 1-based distance from the apex.
    pub depth: usize,
    pub steps: Vec<VertexStep>,
    /// Final layer contents, in index order.
    pub members: Vec<usize>,
}

/// Layer-by-layer record of one run of either direction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BijectionTrace {
    pub layers: Vec<LayerStep>,
}

impl fmt::Display for BijectionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in &self.layers {
            writeln!(f, "layer {}: {:?}", layer.depth, layer.members)?;
            for step in &layer.steps {
                write!(
                    f,
                    "  vertex {}: chips {} degree {} N={:?} s={} -> ",
                    step.vertex,
                    step.chips,
                    step.degree,
                    step.earlier_neighbors,
                    step.earlier_neighbors.len()
                )?;
                match step.placement {
                    Placement::Apex => writeln!(f, "edge to x")?,
                    Placement::Deferred => writeln!(f, "deferred")?,
                    Placement::Attached { position, parent } => writeln!(f, "position {position}, edge to {parent}")?,
                }
            }
        }
        Ok(())
    }
}

/// `G`-neighbors of `u` whose layer is below `below`, grouped by layer in
/// increasing depth. Layers are index-ordered, so within a group the
/// neighbor order is the index order.
fn earlier_neighbors(g: &Graph, layer_of: &[Option<usize>], u: usize, below: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for depth in 1..below {
        out.extend(g.neighbors(u).iter().copied().filter(|&w| layer_of[w] == Some(depth)));
    }
    out
}

/// Maps a relaxed legal configuration on a connected graph to a spanning
/// tree of the cone. The apex has index `n`.
pub fn config_to_tree(c: &Configuration<'_>) -> Result<SpanningTree> {
    build_tree(c, None)
}

pub fn config_to_tree_traced(c: &Configuration<'_>) -> Result<(SpanningTree, BijectionTrace)> {
    let mut trace = BijectionTrace::default();
    let tree = build_tree(c, Some(&mut trace))?;
    Ok((tree, trace))
}

fn build_tree(c: &Configuration<'_>, mut trace: Option<&mut BijectionTrace>) -> Result<SpanningTree> {
    let g = c.graph();
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for v in 0..n {
        if c.is_supercritical(v) {
            return Err(Error::NotRelaxed {
                vertex: v,
                chips: c.get(v),
                degree: g.degree(v),
            });
        }
    }
    let burnt = burn(c);
    if !burnt.legal {
        return Err(Error::NotLegal {
            remaining: burnt.remaining,
        });
    }

    let apex = n;
    let mut layer_of: Vec<Option<usize>> = vec![None; n];
    let mut edges = Vec::with_capacity(n);

    let first: Vec<usize> = (0..n).filter(|&v| c.is_critical(v)).collect();
    for &v in &first {
        layer_of[v] = Some(1);
        edges.push((v, apex));
    }
    if let Some(t) = trace.as_deref_mut() {
        t.layers.push(LayerStep {
            depth: 1,
            steps: first
                .iter()
                .map(|&v| VertexStep {
                    vertex: v,
                    chips: c.get(v),
                    degree: g.degree(v),
                    earlier_neighbors: Vec::new(),
                    placement: Placement::Apex,
                })
                .collect(),
            members: first.clone(),
        });
    }
    let mut placed = first.len();
    let mut previous = first;
    let mut depth = 1;

    while placed < n {
        depth += 1;
        let mut is_candidate = vec![false; n];
        for &w in &previous {
            for &u in g.neighbors(w) {
                if layer_of[u].is_none() {
                    is_candidate[u] = true;
                }
            }
        }
        // The candidate list is fixed before any vertex is processed.
        let candidates: Vec<usize> = (0..n).filter(|&u| is_candidate[u]).collect();
        let mut members = Vec::new();
        let mut steps = Vec::new();
        for &u in &candidates {
            let earlier = earlier_neighbors(g, &layer_of, u, depth);
            let degree = g.degree(u);
            let chips = c.get(u) as usize;
            let placement = if chips + earlier.len() < degree {
                Placement::Deferred
            } else {
                let position = degree - chips;
                let parent = earlier[position - 1];
                edges.push((u, parent));
                members.push(u);
                Placement::Attached { position, parent }
            };
            if trace.is_some() {
                steps.push(VertexStep {
                    vertex: u,
                    chips: c.get(u),
                    degree,
                    earlier_neighbors: earlier,
                    placement,
                });
            }
        }
        if members.is_empty() {
            // Unreachable for legal input; kept as a guard against looping.
            return Err(Error::NotLegal {
                remaining: (0..n).filter(|&v| layer_of[v].is_none()).collect(),
            });
        }
        for &u in &members {
            layer_of[u] = Some(depth);
        }
        placed += members.len();
        if let Some(t) = trace.as_deref_mut() {
            t.layers.push(LayerStep {
                depth,
                steps,
                members: members.clone(),
            });
        }
        previous = members;
    }
    Ok(SpanningTree::from_edges(edges))
}

/// Maps a spanning tree of the cone of a connected graph `g` (apex index
/// `n`) to a relaxed legal configuration on `g`.
pub fn tree_to_config<'g>(g: &'g Graph, t: &SpanningTree) -> Result<Configuration<'g>> {
    build_config(g, t, None)
}

pub fn tree_to_config_traced<'g>(g: &'g Graph, t: &SpanningTree) -> Result<(Configuration<'g>, BijectionTrace)> {
    let mut trace = BijectionTrace::default();
    let c = build_config(g, t, Some(&mut trace))?;
    Ok((c, trace))
}

fn build_config<'g>(
    g: &'g Graph,
    t: &SpanningTree,
    mut trace: Option<&mut BijectionTrace>,
) -> Result<Configuration<'g>> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let cone = g.cone();
    t.validate(cone.graph())?;
    let apex = n;

    let mut tree_adjacency = vec![Vec::new(); n + 1];
    for &(u, v) in t.edges() {
        tree_adjacency[u].push(v);
        tree_adjacency[v].push(u);
    }
    let mut depth_of = vec![usize::MAX; n + 1];
    let mut parent = vec![usize::MAX; n + 1];
    depth_of[apex] = 0;
    let mut queue = VecDeque::from([apex]);
    while let Some(u) = queue.pop_front() {
        for &w in &tree_adjacency[u] {
            if depth_of[w] == usize::MAX {
                depth_of[w] = depth_of[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let max_depth = (0..n).map(|v| depth_of[v]).max().unwrap_or(0);
    let mut layers = vec![Vec::new(); max_depth + 1];
    for v in 0..n {
        layers[depth_of[v]].push(v);
    }

    let layer_of: Vec<Option<usize>> = (0..n).map(|v| Some(depth_of[v])).collect();
    let mut chips = vec![0u32; n];
    for (depth, members) in layers.iter().enumerate().skip(1) {
        let mut steps = Vec::new();
        for &u in members {
            let degree = g.degree(u);
            let (value, earlier, placement) = if depth == 1 {
                (degree, Vec::new(), Placement::Apex)
            } else {
                let earlier = earlier_neighbors(g, &layer_of, u, depth);
                let position = earlier
                    .iter()
                    .position(|&w| w == parent[u])
                    .map(|i| i + 1)
                    .expect("tree parent is a graph neighbor one layer closer to the apex");
                (
                    degree - position,
                    earlier,
                    Placement::Attached {
                        position,
                        parent: parent[u],
                    },
                )
            };
            chips[u] = value as u32;
            if trace.is_some() {
                steps.push(VertexStep {
                    vertex: u,
                    chips: value as u32,
                    degree,
                    earlier_neighbors: earlier,
                    placement,
                });
            }
        }
        if let Some(t) = trace.as_deref_mut() {
            t.layers.push(LayerStep {
                depth,
                steps,
                members: members.clone(),
            });
        }
    }
    Configuration::new(g, chips)
}
