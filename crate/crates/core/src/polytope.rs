//! A validated matroid polytope with everything the ordering checks need.

use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::face_lattice::FaceLattice;
use crate::oriented_matroid::OrientedMatroid;
use crate::polytope_graph::PolytopeGraph;
use crate::sign_vector::ElementSet;

/// Point configuration, oriented matroid, face lattice and graph of one
/// matroid polytope, plus a face-to-adjacency index for ordering checks.
#[derive(Debug)]
pub struct MatroidPolytope {
    config: PointConfiguration,
    om: OrientedMatroid,
    lattice: FaceLattice,
    graph: PolytopeGraph,
    index: FaceIndex,
}

impl MatroidPolytope {
    pub fn new(config: PointConfiguration) -> Result<Self> {
        let om = OrientedMatroid::from_points(&config)?;
        let lattice = FaceLattice::from_oriented_matroid(&om)?;
        let graph = PolytopeGraph::from_lattice(&lattice)?;
        let index = FaceIndex::new(&lattice, &graph);
        Ok(MatroidPolytope { config, om, lattice, graph, index })
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn oriented_matroid(&self) -> &OrientedMatroid {
        &self.om
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn graph(&self) -> &PolytopeGraph {
        &self.graph
    }

    pub fn face_index(&self) -> &FaceIndex {
        &self.index
    }

    pub fn labels(&self) -> &[String] {
        self.lattice.labels()
    }

    pub fn ground_size(&self) -> usize {
        self.lattice.ground_size()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn is_simple(&self) -> bool {
        self.graph.is_simple(self.rank())
    }

    pub fn require_simple(&self) -> Result<()> {
        if self.is_simple() {
            return Ok(());
        }
        let bad: Vec<String> = (0..self.ground_size())
            .filter(|&v| self.graph.degree(v) != self.rank() - 1)
            .map(|v| format!("{} (degree {})", self.labels()[v], self.graph.degree(v)))
            .collect();
        Err(Error::NotSimple(format!(
            "{}: expected every vertex to have degree {}, found {}",
            self.config.name,
            self.rank() - 1,
            bad.join(", ")
        )))
    }
}

/// Per-face adjacency lists, flattened. Face ids follow the lattice order
/// restricted to nonempty faces.
#[derive(Debug, Clone)]
pub struct FaceIndex {
    faces: Vec<IndexedFace>,
    /// For each vertex, the ids of faces of rank >= 3 containing it, with
    /// the vertex's neighbours inside that face.
    vertex_faces: Vec<Vec<(usize, Vec<usize>)>>,
}

#[derive(Debug, Clone)]
pub struct IndexedFace {
    pub rank: usize,
    pub elements: ElementSet,
    pub members: Vec<usize>,
    /// `neighbors[k]` are the face-neighbours of `members[k]`.
    pub neighbors: Vec<Vec<usize>>,
}

impl FaceIndex {
    pub fn new(lat: &FaceLattice, graph: &PolytopeGraph) -> Self {
        let faces: Vec<IndexedFace> = lat
            .faces()
            .iter()
            .filter(|f| f.rank >= 1)
            .map(|f| {
                let members = f.elements.to_vec();
                let neighbors = members
                    .iter()
                    .map(|&v| {
                        graph.neighbors(v).iter().copied().filter(|&w| f.elements.contains(w)).collect()
                    })
                    .collect();
                IndexedFace { rank: f.rank, elements: f.elements.clone(), members, neighbors }
            })
            .collect();
        let mut vertex_faces = vec![Vec::new(); lat.ground_size()];
        for (id, face) in faces.iter().enumerate() {
            if face.rank < 3 {
                continue;
            }
            for (k, &v) in face.members.iter().enumerate() {
                vertex_faces[v].push((id, face.neighbors[k].clone()));
            }
        }
        FaceIndex { faces, vertex_faces }
    }

    pub fn faces(&self) -> &[IndexedFace] {
        &self.faces
    }

    pub fn vertex_faces(&self, v: usize) -> &[(usize, Vec<usize>)] {
        &self.vertex_faces[v]
    }
}
