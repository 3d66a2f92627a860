//! The graph of a matroid polytope and its orientations under linear orderings.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face_lattice::FaceLattice;
use crate::orderings::LinearOrdering;
use crate::sign_vector::ElementSet;

/// Undirected simple graph on labelled vertices `0..n`.
#[derive(Clone, Debug)]
pub struct PolytopeGraph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    neighbor_sets: Vec<ElementSet>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl PolytopeGraph {
    /// Vertices are the rank-1 faces, edges the rank-2 faces.
    pub fn from_lattice(lat: &FaceLattice) -> Result<Self> {
        let mut edges = Vec::new();
        for f in lat.faces_of_rank(2) {
            let members = f.elements.to_vec();
            if members.len() != 2 {
                return Err(Error::CollinearFace(lat.face_labels(&f.elements)));
            }
            edges.push((members[0], members[1]));
        }
        let rank_one: BTreeSet<Vec<usize>> = lat.faces_of_rank(1).map(|f| f.elements.to_vec()).collect();
        let singletons: BTreeSet<Vec<usize>> = (0..lat.ground_size()).map(|i| vec![i]).collect();
        if rank_one != singletons {
            return Err(Error::NotMatroidPolytope(
                "rank-1 faces are not the singletons of the ground set".into(),
            ));
        }
        Self::from_edges(lat.labels().to_vec(), edges)
    }

    pub fn from_edges(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), len: n });
            }
            if a == b {
                return Err(Error::Invalid(format!("loop at vertex {}", labels[a])));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Invalid(format!("repeated edge {}-{}", labels[a], labels[b])));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let neighbor_sets =
            adjacency.iter().map(|adj| ElementSet::from_indices(n, adj.iter().copied())).collect();
        Ok(PolytopeGraph { labels, adjacency, neighbor_sets, edges: seen.into_iter().collect() })
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let labels = json.vertices.clone();
        let index =
            |l: &str| labels.iter().position(|x| x == l).ok_or_else(|| Error::UnknownLabel(l.to_string()));
        let mut distinct = BTreeSet::new();
        if !labels.iter().all(|l| distinct.insert(l)) {
            return Err(Error::Invalid("duplicate vertex label".into()));
        }
        let edges = json.edges.iter().map(|[a, b]| Ok((index(a)?, index(b)?))).collect::<Result<Vec<_>>>()?;
        Self::from_edges(labels, edges)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                .collect(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &ElementSet {
        &self.neighbor_sets[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbor_sets[a].contains(b)
    }

    /// Every vertex has degree exactly `rank - 1`.
    pub fn is_simple(&self, rank: usize) -> bool {
        rank >= 1 && (0..self.vertex_count()).all(|v| self.degree(v) == rank - 1)
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first()?.len();
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || self.component_of(0, &ElementSet::full(n)).count() == n
    }

    /// Connected component of `start` inside the vertex subset `within`.
    pub fn component_of(&self, start: usize, within: &ElementSet) -> ElementSet {
        let mut seen = ElementSet::empty(self.vertex_count());
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if within.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn degree_sum(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

/// The graph oriented by a linear ordering, optionally restricted to a
/// vertex subset. Arcs run from the larger to the smaller end and are
/// never materialized.
#[derive(Clone, Copy, Debug)]
pub struct OrderedDigraph<'a> {
    graph: &'a PolytopeGraph,
    ordering: &'a LinearOrdering,
    vertices: Option<&'a ElementSet>,
}

impl<'a> OrderedDigraph<'a> {
    pub fn new(graph: &'a PolytopeGraph, ordering: &'a LinearOrdering) -> Result<Self> {
        if ordering.len() != graph.vertex_count() {
            return Err(Error::BadOrdering(format!(
                "ordering has {} elements, graph has {} vertices",
                ordering.len(),
                graph.vertex_count()
            )));
        }
        Ok(OrderedDigraph { graph, ordering, vertices: None })
    }

    /// The induced digraph on a face of `lat`.
    pub fn induced(&self, lat: &FaceLattice, face: &'a ElementSet) -> Result<OrderedDigraph<'a>> {
        if !lat.is_face(face) {
            return Err(Error::NotAFace(lat.face_labels(face)));
        }
        Ok(OrderedDigraph { vertices: Some(face), ..*self })
    }

    fn contains(&self, v: usize) -> bool {
        self.vertices.is_none_or(|s| s.contains(v))
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self.vertices {
            Some(s) => s.to_vec(),
            None => (0..self.graph.vertex_count()).collect(),
        }
    }

    /// Arcs `(u, v)` meaning `u -> v` with `v` before `u` in the ordering.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .filter(|&&(a, b)| self.contains(a) && self.contains(b))
            .map(|&(a, b)| if self.ordering.precedes(a, b) { (b, a) } else { (a, b) })
            .collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.graph.neighbors(v).iter().filter(|&&w| self.contains(w) && self.ordering.precedes(w, v)).count()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_degree(v) == 0
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.vertices().into_iter().filter(|&v| self.is_sink(v)).collect()
    }

    /// Number of sinks, stopping as soon as `limit` is reached.
    pub fn count_sinks_up_to(&self, limit: usize) -> usize {
        let mut count = 0;
        for v in self.vertices() {
            if self.is_sink(v) {
                count += 1;
                if count >= limit {
                    break;
                }
            }
        }
        count
    }

    /// The unique sink found by reachability: `e` such that every vertex
    /// has a directed path to `e`.
    pub fn unique_sink_by_reachability(&self) -> Option<usize> {
        let verts = self.vertices();
        let n = self.graph.vertex_count();
        verts.iter().copied().find(|&e| {
            // walk arcs backwards from e
            let mut seen = ElementSet::empty(n);
            seen.insert(e);
            let mut stack = vec![e];
            while let Some(v) = stack.pop() {
                for &u in self.graph.neighbors(v) {
                    if self.contains(u) && !seen.contains(u) && self.ordering.precedes(v, u) {
                        seen.insert(u);
                        stack.push(u);
                    }
                }
            }
            verts.iter().all(|&v| seen.contains(v))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PointConfiguration;
    use crate::oriented_matroid::OrientedMatroid;

    fn lattice(dim: usize, points: Vec<Vec<i64>>) -> FaceLattice {
        let cfg = PointConfiguration::new("t", dim, points).unwrap();
        FaceLattice::from_oriented_matroid(&OrientedMatroid::from_points(&cfg).unwrap()).unwrap()
    }

    fn square() -> (FaceLattice, PolytopeGraph) {
        let lat = lattice(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let g = PolytopeGraph::from_lattice(&lat).unwrap();
        (lat, g)
    }

    fn ord(g: &PolytopeGraph, s: &str) -> LinearOrdering {
        LinearOrdering::parse(g.labels(), s).unwrap()
    }

    #[test]
    fn square_is_a_four_cycle() {
        let (_, g) = square();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(g.is_simple(3));
        assert!(g.is_connected());
        assert_eq!(g.degree_sum(), 8);
    }

    #[test]
    fn triangle_is_complete() {
        let lat = lattice(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let g = PolytopeGraph::from_lattice(&lat).unwrap();
        assert_eq!(g.edges().len(), 3);
        assert!(g.is_simple(3));
    }

    #[test]
    fn square_pyramid_is_not_simple() {
        let lat = lattice(3, vec![vec![0, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![2, 2, 0], vec![1, 1, 2]]);
        let g = PolytopeGraph::from_lattice(&lat).unwrap();
        assert_eq!(lat.rank(), 4);
        assert_eq!(g.degree(4), 4);
        assert!(!g.is_simple(4));
    }

    #[test]
    fn collinear_rank_two_face_is_rejected() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let bad = FaceLattice::from_faces(
            labels.clone(),
            2,
            vec![crate::face_lattice::Face { rank: 1, elements: ElementSet::from_indices(3, [0]) }],
        )
        .unwrap();
        // E itself has rank 2 with three elements
        assert!(matches!(PolytopeGraph::from_lattice(&bad), Err(Error::CollinearFace(_))));
    }

    #[test]
    fn sinks_examples() {
        let (_, g) = square();
        let o = ord(&g, "e1,e2,e3,e4");
        let d = OrderedDigraph::new(&g, &o).unwrap();
        assert_eq!(d.sinks(), vec![0]);
        assert_eq!(d.unique_sink_by_reachability(), Some(0));
        let o = ord(&g, "e1,e4,e2,e3");
        let d = OrderedDigraph::new(&g, &o).unwrap();
        assert_eq!(d.sinks(), vec![0, 3]);
        assert_eq!(d.count_sinks_up_to(2), 2);
        assert_eq!(d.unique_sink_by_reachability(), None);

        let single = PolytopeGraph::from_edges(vec!["x".into()], vec![]).unwrap();
        let o = LinearOrdering::identity(1);
        assert_eq!(OrderedDigraph::new(&single, &o).unwrap().sinks(), vec![0]);
    }

    #[test]
    fn induced_digraphs() {
        let (lat, g) = square();
        let o = ord(&g, "e1,e2,e3,e4");
        let d = OrderedDigraph::new(&g, &o).unwrap();
        let edge = ElementSet::from_indices(4, [0, 1]);
        let sub = d.induced(&lat, &edge).unwrap();
        assert_eq!(sub.arcs(), vec![(1, 0)]);
        let single = ElementSet::from_indices(4, [2]);
        let sub = d.induced(&lat, &single).unwrap();
        assert!(sub.arcs().is_empty());
        assert_eq!(sub.sinks(), vec![2]);
        let all = ElementSet::full(4);
        assert_eq!(d.induced(&lat, &all).unwrap().arcs(), d.arcs());
        let diagonal = ElementSet::from_indices(4, [0, 3]);
        assert!(matches!(d.induced(&lat, &diagonal), Err(Error::NotAFace(_))));
    }

    #[test]
    fn json_round_trip() {
        let (_, g) = square();
        let j = g.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = PolytopeGraph::from_json_str(&text).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert!(PolytopeGraph::from_json_str(r#"{"vertices":["a"],"edges":[["a","b"]]}"#).is_err());
    }
}
