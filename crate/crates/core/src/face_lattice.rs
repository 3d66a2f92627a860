//! Faces of a matroid polytope, f-vector and h*-vector.
//!
//! A proper subset `F` of the ground set is a face iff the sign vector that
//! is zero on `F` and positive elsewhere is a covector.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oriented_matroid::OrientedMatroid;
use crate::sign_vector::{ElementSet, SignVector};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    /// Ordering key is (rank, elements) so sorted faces read bottom-up.
    pub rank: usize,
    pub elements: ElementSet,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    labels: Vec<String>,
    rank: usize,
    faces: Vec<Face>,
    f_vector: Vec<u64>,
}

impl FaceLattice {
    pub fn from_oriented_matroid(om: &OrientedMatroid) -> Result<Self> {
        if !om.is_matroid_polytope() {
            return Err(Error::NotMatroidPolytope(
                "the configuration is not acyclic or has a non-extreme element".into(),
            ));
        }
        let zero_sets: BTreeSet<ElementSet> =
            om.nonnegative_covectors().iter().map(SignVector::zero_set).collect();
        let faces =
            zero_sets.into_iter().map(|elements| Face { rank: om.rank_of(&elements), elements }).collect();
        Self::from_faces(om.labels().to_vec(), om.rank(), faces)
    }

    /// Assembles a lattice from an explicit face list. Both trivial faces
    /// are added if missing.
    pub fn from_faces(labels: Vec<String>, rank: usize, faces: Vec<Face>) -> Result<Self> {
        let n = labels.len();
        let mut set: BTreeSet<Face> = faces.into_iter().collect();
        set.insert(Face { rank: 0, elements: ElementSet::empty(n) });
        set.insert(Face { rank, elements: ElementSet::full(n) });
        let faces: Vec<Face> = set.into_iter().collect();
        let mut f_vector = vec![0u64; rank + 1];
        for f in &faces {
            if f.rank > rank || f.elements.universe() != n {
                return Err(Error::Invalid(format!("face of rank {} outside rank {rank}", f.rank)));
            }
            f_vector[f.rank] += 1;
        }
        Ok(FaceLattice { labels, rank, faces, f_vector })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All faces sorted by rank, then by element set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_rank(&self, rank: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.rank == rank)
    }

    pub fn is_face(&self, elements: &ElementSet) -> bool {
        self.faces.iter().any(|f| &f.elements == elements)
    }

    pub fn face_labels(&self, face: &ElementSet) -> Vec<String> {
        face.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `(f_{-1}, f_0, .., f_{r-1})`, where `f_l` counts faces of rank `l + 1`.
    pub fn f_vector(&self) -> &[u64] {
        &self.f_vector
    }

    pub fn h_star(&self) -> Vec<i64> {
        let f: Vec<i64> = self.f_vector.iter().map(|&x| x as i64).collect();
        h_star_from_f(&f, self.rank).expect("face counts fit in i64")
    }

    pub fn euler_check(&self) -> bool {
        let f: Vec<i64> = self.f_vector.iter().map(|&x| x as i64).collect();
        euler_sum(&f) == 0
    }

    /// Same family of (element labels, rank) pairs.
    pub fn same_faces_as(&self, other: &FaceLattice) -> bool {
        self.labelled_faces() == other.labelled_faces()
    }

    pub fn labelled_faces(&self) -> BTreeSet<(usize, BTreeSet<String>)> {
        self.faces
            .iter()
            .map(|f| (f.rank, f.elements.iter().map(|i| self.labels[i].clone()).collect()))
            .collect()
    }

    pub fn to_json(&self) -> FacesJson {
        FacesJson {
            faces: self
                .faces
                .iter()
                .map(|f| FaceJson { elements: self.face_labels(&f.elements), rank: f.rank })
                .collect(),
            f: self.f_vector.clone(),
            h_star: self.h_star(),
            euler_ok: self.euler_check(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceJson {
    pub elements: Vec<String>,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacesJson {
    pub faces: Vec<FaceJson>,
    pub f: Vec<u64>,
    pub h_star: Vec<i64>,
    pub euler_ok: bool,
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn to_i64(x: BigInt, what: &'static str) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow(what))
}

/// `h*_l = sum_{i=0}^{l} (-1)^{l-i} C(r-1-i, l-i) f_{r-1-i}` for `l = 0..r-1`.
/// `f` is the full vector `(f_{-1}, .., f_{r-1})` of length `r + 1`.
pub fn h_star_from_f(f: &[i64], rank: usize) -> Result<Vec<i64>> {
    if f.len() != rank + 1 {
        return Err(Error::Invalid(format!("f-vector of length {} for rank {rank}", f.len())));
    }
    // f_j lives at index j + 1
    let f_at = |j: usize| BigInt::from(f[j + 1]);
    (0..rank)
        .map(|l| {
            let mut acc = BigInt::zero();
            for i in 0..=l {
                let term = binomial(rank - 1 - i, l - i) * f_at(rank - 1 - i);
                if (l - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            to_i64(acc, "h*-vector entry")
        })
        .collect()
}

/// `f_l = sum_{i=0}^{r-1-l} C(r-1-i, l) h*_i` for `l = 0..r-1`.
pub fn f_from_h_star(h: &[i64], rank: usize) -> Result<Vec<i64>> {
    if h.len() != rank {
        return Err(Error::Invalid(format!("h*-vector of length {} for rank {rank}", h.len())));
    }
    (0..rank)
        .map(|l| {
            let acc: BigInt = (0..rank - l).map(|i| binomial(rank - 1 - i, l) * BigInt::from(h[i])).sum();
            to_i64(acc, "f-vector entry")
        })
        .collect()
}

/// `sum_{i=-1}^{r-1} (-1)^i f_i` over the full f-vector.
pub fn euler_sum(f: &[i64]) -> i64 {
    f.iter().enumerate().map(|(idx, &x)| if idx % 2 == 0 { -x } else { x }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PointConfiguration;
    use proptest::prelude::*;

    fn lattice(dim: usize, points: Vec<Vec<i64>>) -> FaceLattice {
        let cfg = PointConfiguration::new("t", dim, points).unwrap();
        FaceLattice::from_oriented_matroid(&OrientedMatroid::from_points(&cfg).unwrap()).unwrap()
    }

    fn face_sets(lat: &FaceLattice) -> Vec<Vec<usize>> {
        lat.faces().iter().map(|f| f.elements.to_vec()).collect()
    }

    #[test]
    fn triangle_faces() {
        let lat = lattice(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(
            face_sets(&lat),
            vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
        assert_eq!(lat.f_vector(), &[1, 3, 3, 1]);
        assert_eq!(lat.h_star(), vec![1, 1, 1]);
        assert!(lat.euler_check());
    }

    #[test]
    fn square_faces_exclude_diagonals() {
        let lat = lattice(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let edges: Vec<Vec<usize>> = lat.faces_of_rank(2).map(|f| f.elements.to_vec()).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(lat.f_vector(), &[1, 4, 4, 1]);
        assert_eq!(lat.h_star(), vec![1, 2, 1]);
    }

    #[test]
    fn cube3_counts() {
        let pts: Vec<Vec<i64>> = (0..8).map(|i| (0..3).map(|b| (i >> (2 - b)) & 1).collect()).collect();
        let lat = lattice(3, pts);
        assert_eq!(lat.f_vector(), &[1, 8, 12, 6, 1]);
        assert_eq!(lat.h_star(), vec![1, 3, 3, 1]);
        assert!(lat.euler_check());
    }

    #[test]
    fn segment() {
        let lat = lattice(1, vec![vec![0], vec![1]]);
        assert_eq!(lat.f_vector(), &[1, 2, 1]);
        assert!(lat.euler_check());
    }

    #[test]
    fn not_a_matroid_polytope() {
        let cfg = PointConfiguration::new("line", 1, vec![vec![0], vec![1], vec![2]]).unwrap();
        let om = OrientedMatroid::from_points(&cfg).unwrap();
        assert!(matches!(FaceLattice::from_oriented_matroid(&om), Err(Error::NotMatroidPolytope(_))));
    }

    #[test]
    fn transforms_match_worked_values() {
        assert_eq!(f_from_h_star(&[1, 3, 3, 1], 4).unwrap(), vec![8, 12, 6, 1]);
        assert_eq!(f_from_h_star(&[1], 1).unwrap(), vec![1]);
        assert_eq!(h_star_from_f(&[1, 4, 4, 1], 3).unwrap(), vec![1, 2, 1]);
        assert_eq!(euler_sum(&[1, 8, 12, 6, 1]), 0);
        assert_eq!(euler_sum(&[1, 2, 1]), 0);
        assert!(h_star_from_f(&[1, 2], 3).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    proptest! {
        #[test]
        fn h_and_f_are_inverse(h in prop::collection::vec(-50i64..50, 1..8)) {
            let r = h.len();
            let f = f_from_h_star(&h, r).unwrap();
            let mut full = vec![1];
            full.extend(f);
            prop_assert_eq!(h_star_from_f(&full, r).unwrap(), h);
        }
    }
}
