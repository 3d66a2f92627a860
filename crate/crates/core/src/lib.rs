//! Matroid polytopes of integer point configurations: covectors, face
//! lattices, f- and h*-vectors, K-orderings and shelling orderings of the
//! polytope graph, and face-lattice reconstruction from the graph alone.

pub mod config;
pub mod cube_models;
pub mod error;
pub mod face_lattice;
pub mod linalg;
pub mod orderings;
pub mod oriented_matroid;
pub mod polytope;
pub mod polytope_graph;
pub mod reconstruction;
pub mod sign_vector;

pub use config::PointConfiguration;
pub use error::{Error, Result};
pub use face_lattice::{Face, FaceLattice};
pub use orderings::{LinearOrdering, OrderingReport};
pub use oriented_matroid::OrientedMatroid;
pub use polytope::MatroidPolytope;
pub use polytope_graph::{OrderedDigraph, PolytopeGraph};
pub use sign_vector::{ElementSet, Sign, SignVector};
