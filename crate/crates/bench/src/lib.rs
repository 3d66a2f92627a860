//! Shared fixtures for the criterion benches.

use mpoly_core::cube_models::{cube, prism};
use mpoly_core::MatroidPolytope;

pub fn cube_polytope(d: usize) -> MatroidPolytope {
    MatroidPolytope::new(cube(d).expect("cube")).expect("cube is a matroid polytope")
}

pub fn prism_polytope() -> MatroidPolytope {
    MatroidPolytope::new(prism()).expect("prism is a matroid polytope")
}
