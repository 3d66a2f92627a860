//! Face lattice of a simple matroid polytope from its graph alone.
//!
//! Every acyclic orientation is scored by `sum_v 2^{indeg(v)}`, where the
//! in-degree of `v` counts its later neighbours. In a simple polytope each
//! set of `k` in-arcs at `v` spans exactly one rank-`(k+1)` face with sink
//! `v`, so the score counts (face, sink) pairs and is minimal exactly for
//! the good orientations, with minimum `f_0 + .. + f_{r-1}`. A connected
//! `k`-regular induced subgraph is then a face iff it is an initial set of
//! some good orientation.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::face_lattice::{Face, FaceLattice};
use crate::orderings::LinearOrdering;
use crate::polytope_graph::PolytopeGraph;
use crate::sign_vector::ElementSet;

/// Rank implied by a connected regular graph: degree + 1.
pub fn claimed_rank(graph: &PolytopeGraph) -> Result<usize> {
    if !graph.is_connected() {
        return Err(Error::NotSimple("graph is not connected".into()));
    }
    let d = graph.regular_degree().ok_or_else(|| Error::NotSimple("graph is not regular".into()))?;
    Ok(d + 1)
}

pub fn orientation_score(graph: &PolytopeGraph, ord: &LinearOrdering) -> Result<u64> {
    if graph.regular_degree().is_none() {
        return Err(Error::NotSimple("graph is not regular".into()));
    }
    if ord.len() != graph.vertex_count() {
        return Err(Error::BadOrdering("ordering does not match the graph".into()));
    }
    Ok((0..graph.vertex_count())
        .map(|v| {
            let indeg = graph.neighbors(v).iter().filter(|&&w| ord.precedes(v, w)).count();
            1u64 << indeg
        })
        .sum())
}

/// One acyclic orientation, represented by the first linear extension
/// the search reached for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodOrientation {
    pub ordering: LinearOrdering,
    pub score: u64,
}

impl GoodOrientation {
    /// Arcs `(u, v)` meaning `u -> v`, i.e. `v` before `u`.
    pub fn arcs(&self, graph: &PolytopeGraph) -> BTreeSet<(usize, usize)> {
        graph
            .edges()
            .iter()
            .map(|&(a, b)| if self.ordering.precedes(a, b) { (b, a) } else { (a, b) })
            .collect()
    }

    /// Every edge leaving `set` ends at a later vertex.
    pub fn is_initial(&self, graph: &PolytopeGraph, set: &ElementSet) -> bool {
        set.iter()
            .all(|v| graph.neighbors(v).iter().all(|&w| set.contains(w) || self.ordering.precedes(v, w)))
    }
}

#[derive(Clone, Debug)]
pub struct GoodOrientations {
    pub min_score: u64,
    pub orientations: Vec<GoodOrientation>,
    /// Search nodes expanded.
    pub nodes: u64,
    pub partial: bool,
}

/// All score-minimizing acyclic orientations.
///
/// Each acyclic orientation is visited once, through its
/// lexicographically smallest topological order: after placing `v`, every
/// unplaced `w < v` that is not adjacent to `v` owes a neighbour that must
/// be placed before `w` itself. Branches whose partial score already
/// exceeds the best score found are cut.
pub fn find_good_orientations(graph: &PolytopeGraph, budget: Option<u64>) -> Result<GoodOrientations> {
    claimed_rank(graph)?;
    let n = graph.vertex_count();
    let identity = LinearOrdering::identity(n);
    let mut search = OrientationSearch {
        graph,
        n,
        placed: vec![false; n],
        debt: vec![false; n],
        sequence: Vec::with_capacity(n),
        best: orientation_score(graph, &identity)?,
        found: Vec::new(),
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
        partial: false,
    };
    search.walk(0);
    let min_score = search.best;
    let orientations = search
        .found
        .into_iter()
        .filter(|(s, _)| *s == min_score)
        .map(|(score, seq)| GoodOrientation {
            ordering: LinearOrdering::from_sequence(seq).expect("permutation"),
            score,
        })
        .collect();
    Ok(GoodOrientations { min_score, orientations, nodes: search.nodes, partial: search.partial })
}

struct OrientationSearch<'a> {
    graph: &'a PolytopeGraph,
    n: usize,
    placed: Vec<bool>,
    debt: Vec<bool>,
    sequence: Vec<usize>,
    best: u64,
    found: Vec<(u64, Vec<usize>)>,
    nodes: u64,
    budget: u64,
    partial: bool,
}

impl OrientationSearch<'_> {
    fn walk(&mut self, score: u64) {
        if self.partial {
            return;
        }
        if self.sequence.len() == self.n {
            if score < self.best {
                self.best = score;
                self.found.retain(|(s, _)| *s <= score);
            }
            if score <= self.best {
                self.found.push((score, self.sequence.clone()));
            }
            return;
        }
        if self.nodes >= self.budget {
            self.partial = true;
            return;
        }
        self.nodes += 1;
        let remaining = (self.n - self.sequence.len()) as u64;
        for v in 0..self.n {
            if self.placed[v] || self.debt[v] {
                continue;
            }
            let later = self.graph.neighbors(v).iter().filter(|&&w| !self.placed[w]).count();
            let next = score + (1u64 << later);
            // every vertex still to come adds at least 1
            if next + remaining - 1 > self.best {
                continue;
            }
            let mut paid = Vec::new();
            for &w in self.graph.neighbors(v) {
                if self.debt[w] {
                    self.debt[w] = false;
                    paid.push(w);
                }
            }
            let mut owed = Vec::new();
            for w in 0..v {
                if !self.placed[w] && !self.debt[w] && !self.graph.has_edge(v, w) {
                    self.debt[w] = true;
                    owed.push(w);
                }
            }
            self.placed[v] = true;
            self.sequence.push(v);
            // a debtor whose neighbours are all placed can never pay
            let dead = owed.iter().any(|&w| self.graph.neighbors(w).iter().all(|&u| self.placed[u]));
            if !dead {
                self.walk(next);
            }
            self.sequence.pop();
            self.placed[v] = false;
            for w in owed {
                self.debt[w] = false;
            }
            for w in paid {
                self.debt[w] = true;
            }
            if self.partial {
                return;
            }
        }
    }
}

/// Vertex sets inducing a connected `k`-regular subgraph, for `k < rank`.
/// Connected sets are grown from their smallest vertex, adding only larger
/// vertices from the current frontier; each connected set is produced
/// exactly once.
pub fn regular_connected_subgraphs(graph: &PolytopeGraph, rank: usize) -> Vec<(usize, ElementSet)> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    for root in 0..n {
        let mut set = ElementSet::from_indices(n, [root]);
        let mut excluded = ElementSet::empty(n);
        for w in 0..root {
            excluded.insert(w);
        }
        let frontier: Vec<usize> = graph.neighbors(root).iter().copied().filter(|&w| w > root).collect();
        grow(graph, rank, &mut set, &mut excluded, frontier, &mut out);
    }
    out
}

fn grow(
    graph: &PolytopeGraph,
    rank: usize,
    set: &mut ElementSet,
    excluded: &mut ElementSet,
    frontier: Vec<usize>,
    out: &mut Vec<(usize, ElementSet)>,
) {
    if let Some(k) = induced_regular_degree(graph, set) {
        if k < rank {
            out.push((k, set.clone()));
        }
    }
    // branch on each frontier vertex in turn; later branches exclude the
    // earlier choices so no set is produced twice
    let mut newly_excluded = Vec::new();
    for (i, &v) in frontier.iter().enumerate() {
        if excluded.contains(v) || set.contains(v) {
            continue;
        }
        set.insert(v);
        let mut next: Vec<usize> =
            frontier[i + 1..].iter().copied().filter(|&w| !excluded.contains(w)).collect();
        for &w in graph.neighbors(v) {
            if !set.contains(w) && !excluded.contains(w) && !next.contains(&w) {
                next.push(w);
            }
        }
        grow(graph, rank, set, excluded, next, out);
        set.remove(v);
        excluded.insert(v);
        newly_excluded.push(v);
    }
    for v in newly_excluded {
        excluded.remove(v);
    }
}

fn induced_regular_degree(graph: &PolytopeGraph, set: &ElementSet) -> Option<usize> {
    let mut degrees = set.iter().map(|v| graph.neighbor_set(v).intersection(set).count());
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// Faces recovered from the graph and a set of good orientations.
pub fn reconstruct_faces(graph: &PolytopeGraph, good: &GoodOrientations) -> Result<FaceLattice> {
    let rank = claimed_rank(graph)?;
    if good.orientations.is_empty() {
        return Err(Error::ReconstructionFailed("no good orientations supplied".into()));
    }
    let faces: Vec<Face> = regular_connected_subgraphs(graph, rank)
        .into_iter()
        .filter(|(_, set)| good.orientations.iter().any(|o| o.is_initial(graph, set)))
        .map(|(k, elements)| Face { rank: k + 1, elements })
        .collect();
    let lattice = FaceLattice::from_faces(graph.labels().to_vec(), rank, faces)?;
    validate(graph, &lattice, good)?;
    Ok(lattice)
}

fn validate(graph: &PolytopeGraph, lat: &FaceLattice, good: &GoodOrientations) -> Result<()> {
    let n = graph.vertex_count();
    let rank = lat.rank();
    if lat.faces_of_rank(rank).count() != 1 {
        return Err(Error::ReconstructionFailed("more than one top face".into()));
    }
    if lat.faces_of_rank(1).count() != n || lat.faces_of_rank(2).count() != graph.edges().len() {
        return Err(Error::ReconstructionFailed("vertices or edges are missing".into()));
    }
    if !lat.euler_check() {
        return Err(Error::ReconstructionFailed(format!(
            "Euler-Poincare check fails for f = {:?}",
            lat.f_vector()
        )));
    }
    let total: u64 = lat.f_vector()[1..].iter().sum();
    if good.min_score != total && !good.partial {
        return Err(Error::ReconstructionFailed(format!(
            "minimum score {} differs from the number of nonempty faces {total}",
            good.min_score
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionSummary {
    pub rank: usize,
    pub min_score: u64,
    pub good_orientations: usize,
    pub search_nodes: u64,
    pub partial: bool,
}

impl ReconstructionSummary {
    pub fn new(rank: usize, good: &GoodOrientations) -> Self {
        ReconstructionSummary {
            rank,
            min_score: good.min_score,
            good_orientations: good.orientations.len(),
            search_nodes: good.nodes,
            partial: good.partial,
        }
    }
}
