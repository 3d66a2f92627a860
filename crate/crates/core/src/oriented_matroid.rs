//! The oriented matroid of a lifted point configuration.
//!
//! Points `b_i` are lifted to `e_i = (b_i, 1)`. Cocircuits come from the
//! hyperplanes spanned by `r - 1` of the lifted vectors; covectors are the
//! closure of the cocircuits under composition.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::sign_vector::{ElementSet, Sign, SignVector};

#[derive(Debug)]
pub struct OrientedMatroid {
    labels: Vec<String>,
    rank: usize,
    /// Lifted vectors projected onto `rank` coordinates that preserve
    /// their linear dependencies.
    vectors: Matrix,
    cocircuits: Vec<SignVector>,
    covectors: OnceLock<HashSet<SignVector>>,
    nonnegative: OnceLock<HashSet<SignVector>>,
}

impl Clone for OrientedMatroid {
    fn clone(&self) -> Self {
        OrientedMatroid {
            labels: self.labels.clone(),
            rank: self.rank,
            vectors: self.vectors.clone(),
            cocircuits: self.cocircuits.clone(),
            covectors: OnceLock::new(),
            nonnegative: OnceLock::new(),
        }
    }
}

impl OrientedMatroid {
    pub fn from_points(config: &PointConfiguration) -> Result<Self> {
        let lifted = linalg::to_matrix(&config.lifted());
        Self::from_vectors(config.labels.clone(), lifted)
    }

    /// Builds the oriented matroid of arbitrary integer vectors (one row per element).
    pub fn from_vectors(labels: Vec<String>, rows: Matrix) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Degenerate("empty vector configuration".into()));
        }
        let cols = linalg::independent_columns(&rows);
        let rank = cols.len();
        if rank == 0 {
            return Err(Error::Degenerate("all vectors are zero (rank 0)".into()));
        }
        let vectors: Matrix = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let cocircuits = enumerate_cocircuits(&vectors, rank);
        Ok(OrientedMatroid {
            labels,
            rank,
            vectors,
            cocircuits,
            covectors: OnceLock::new(),
            nonnegative: OnceLock::new(),
        })
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// All cocircuits, both signs, sorted under `- < 0 < +`.
    pub fn cocircuits(&self) -> &[SignVector] {
        &self.cocircuits
    }

    /// One representative of each `±c` pair: the lexicographically first.
    pub fn canonical_cocircuits(&self) -> Vec<SignVector> {
        self.cocircuits.iter().filter(|c| **c <= c.negate()).cloned().collect()
    }

    /// Linear rank of the lifted vectors indexed by `set`.
    pub fn rank_of(&self, set: &ElementSet) -> usize {
        linalg::subset_rank(&self.vectors, set.iter())
    }

    /// The covector set, computed once on first use.
    pub fn covectors(&self) -> &HashSet<SignVector> {
        self.covectors.get_or_init(|| composition_closure(self.ground_size(), &self.cocircuits))
    }

    /// Covectors with no negative entry. These are exactly the
    /// compositions of nonnegative cocircuits, since every covector is a
    /// composition of cocircuits conformal to it.
    pub fn nonnegative_covectors(&self) -> &HashSet<SignVector> {
        self.nonnegative.get_or_init(|| {
            let gens: Vec<SignVector> =
                self.cocircuits.iter().filter(|c| c.is_nonnegative()).cloned().collect();
            composition_closure(self.ground_size(), &gens)
        })
    }

    pub fn is_covector(&self, v: &SignVector) -> bool {
        if v.is_nonnegative() {
            self.nonnegative_covectors().contains(v)
        } else {
            self.covectors().contains(v)
        }
    }

    /// Covector membership without the closure: `v` is a covector iff the
    /// composition of all cocircuits conformal to `v` equals `v`.
    pub fn is_covector_by_conformal_cocircuits(&self, v: &SignVector) -> bool {
        let mut acc = SignVector::zero(self.ground_size());
        for c in &self.cocircuits {
            if c.is_face_of(v).unwrap_or(false) {
                acc = acc.compose_unchecked(c);
            }
        }
        &acc == v
    }

    pub fn topes(&self) -> impl Iterator<Item = &SignVector> {
        let n = self.ground_size();
        self.covectors().iter().filter(move |v| v.support().count() == n)
    }

    pub fn is_acyclic(&self) -> bool {
        self.is_covector(&SignVector::all_plus(self.ground_size()))
    }

    pub fn is_extreme(&self, label: &str) -> Result<bool> {
        let e = self.index_of(label)?;
        Ok(self.is_extreme_index(e))
    }

    pub fn is_extreme_index(&self, e: usize) -> bool {
        let n = self.ground_size();
        self.is_covector(&SignVector::plus_off(&ElementSet::from_indices(n, [e])))
    }

    /// Acyclic with every element extreme.
    pub fn is_matroid_polytope(&self) -> bool {
        self.is_acyclic() && (0..self.ground_size()).all(|e| self.is_extreme_index(e))
    }

    /// Reorientation on `set`: every cocircuit is sign-flipped there, and
    /// the underlying vectors are negated to keep the realization in sync.
    pub fn reorient(&self, set: &ElementSet) -> Result<OrientedMatroid> {
        if set.universe() != self.ground_size() {
            return Err(Error::LengthMismatch { left: set.universe(), right: self.ground_size() });
        }
        let mut cocircuits: Vec<SignVector> =
            self.cocircuits.iter().map(|c| c.reorient_unchecked(set)).collect();
        cocircuits.sort();
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| if set.contains(i) { v.iter().map(|x| -x).collect() } else { v.clone() })
            .collect();
        Ok(OrientedMatroid {
            labels: self.labels.clone(),
            rank: self.rank,
            vectors,
            cocircuits,
            covectors: OnceLock::new(),
            nonnegative: OnceLock::new(),
        })
    }

    /// Flips the first `k` elements of `ordering` (element indices).
    pub fn reorient_initial(&self, ordering: &[usize], k: usize) -> Result<OrientedMatroid> {
        let n = self.ground_size();
        if ordering.len() != n {
            return Err(Error::BadOrdering(format!(
                "ordering has {} elements, ground set has {n}",
                ordering.len()
            )));
        }
        if k > n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        if let Some(&bad) = ordering.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        self.reorient(&ElementSet::from_indices(n, ordering[..k].iter().copied()))
    }

    /// Removes one element, recomputing everything from the vectors.
    pub fn delete(&self, e: usize) -> Result<OrientedMatroid> {
        let n = self.ground_size();
        if e >= n {
            return Err(Error::IndexOutOfRange { index: e, len: n });
        }
        let labels = (0..n).filter(|&i| i != e).map(|i| self.labels[i].clone()).collect();
        let rows = (0..n).filter(|&i| i != e).map(|i| self.vectors[i].clone()).collect();
        Self::from_vectors(labels, rows)
    }

    /// Signed circuits (both signs) of the vector configuration, from
    /// kernel vectors of minimal dependent subsets.
    pub fn circuits(&self) -> Vec<SignVector> {
        let n = self.ground_size();
        let mut out = HashSet::new();
        for size in 1..=(self.rank + 1).min(n) {
            for subset in (0..n).combinations(size) {
                let k = size - 1;
                if linalg::subset_rank(&self.vectors, subset.iter().copied()) != k {
                    continue;
                }
                let minimal = (0..size).all(|skip| {
                    let rest = subset.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i);
                    linalg::subset_rank(&self.vectors, rest) == k
                });
                if !minimal {
                    continue;
                }
                let rows: Matrix = subset.iter().map(|&i| self.vectors[i].clone()).collect();
                let coords = linalg::independent_columns(&rows);
                let columns: Vec<Vec<BigInt>> =
                    rows.iter().map(|r| coords.iter().map(|&c| r[c].clone()).collect()).collect();
                let signs = if k == 0 { vec![Sign::Plus] } else { linalg::kernel_signs(&columns) };
                let mut v = SignVector::zero(n);
                for (&i, &s) in subset.iter().zip(&signs) {
                    v.set(i, s);
                }
                out.insert(v.negate());
                out.insert(v);
            }
        }
        let mut out: Vec<SignVector> = out.into_iter().collect();
        out.sort();
        out
    }

    /// Acyclicity decided from circuits alone: no circuit is positive.
    pub fn is_acyclic_by_circuits(&self) -> bool {
        !self.circuits().iter().any(|c| c.is_nonnegative() && !c.is_zero())
    }
}

fn enumerate_cocircuits(vectors: &Matrix, rank: usize) -> Vec<SignVector> {
    let n = vectors.len();
    let mut found = HashSet::new();
    for subset in (0..n).combinations(rank - 1) {
        let columns: Vec<&[BigInt]> = subset.iter().map(|&i| vectors[i].as_slice()).collect();
        let normal = linalg::cofactor_normal(&columns);
        let mut v = SignVector::zero(n);
        for (j, e) in vectors.iter().enumerate() {
            v.set(j, Sign::of(&linalg::dot(&normal, e)));
        }
        if v.is_zero() {
            // the subset is rank deficient
            continue;
        }
        found.insert(v.negate());
        found.insert(v);
    }
    let mut out: Vec<SignVector> = found.into_iter().collect();
    out.sort();
    out
}

/// Smallest set containing the zero vector and `generators`, closed under
/// composition. Right-composing with generators reaches every finite
/// composition because composition is associative.
fn composition_closure(n: usize, generators: &[SignVector]) -> HashSet<SignVector> {
    let zero = SignVector::zero(n);
    let mut seen: HashSet<SignVector> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(x) = queue.pop_front() {
        let full = x.support().count() == n;
        if full {
            continue;
        }
        for g in generators {
            let y = x.compose_unchecked(g);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen
}
