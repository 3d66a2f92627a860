//! Linear orderings of the ground set: K-orderings, shelling orderings,
//! condition (sh.1'), outdegree histograms and the h*-identity.
//!
//! "Non-singular face" in condition (sh.1') is read as "face of rank at
//! least 2"; on smaller faces the condition is vacuous.

mod enumerate;

pub use enumerate::{enumerate_orderings, Enumeration, EnumerationOptions, Filter, Mode, Summary};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::face_lattice::FaceLattice;
use crate::oriented_matroid::OrientedMatroid;
use crate::polytope::{FaceIndex, MatroidPolytope};
use crate::polytope_graph::{OrderedDigraph, PolytopeGraph};
use crate::sign_vector::{ElementSet, SignVector};

/// A permutation of element indices; position 0 is the least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOrdering {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl LinearOrdering {
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (p, &v) in sequence.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::BadOrdering(format!("{sequence:?} is not a permutation of 0..{n}")));
            }
            position[v] = p;
        }
        Ok(LinearOrdering { sequence, position })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrdering { sequence: (0..n).collect(), position: (0..n).collect() }
    }

    /// Parses a comma-separated list of labels, least element first.
    pub fn parse(labels: &[String], text: &str) -> Result<Self> {
        let seq = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| labels.iter().position(|x| x == l).ok_or_else(|| Error::UnknownLabel(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if seq.len() != labels.len() {
            return Err(Error::BadOrdering(format!(
                "{} labels given, ground set has {}",
                seq.len(),
                labels.len()
            )));
        }
        Self::from_sequence(seq)
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// `a` comes strictly before `b`.
    #[inline]
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    pub fn reverse(&self) -> LinearOrdering {
        let sequence: Vec<usize> = self.sequence.iter().rev().copied().collect();
        let n = sequence.len();
        let position = self.position.iter().map(|&p| n - 1 - p).collect();
        LinearOrdering { sequence, position }
    }

    pub fn labels(&self, labels: &[String]) -> Vec<String> {
        self.sequence.iter().map(|&v| labels[v].clone()).collect()
    }

    /// The induced ordering on a subset, as a sequence of element indices.
    pub fn restricted_to(&self, set: &ElementSet) -> Vec<usize> {
        self.sequence.iter().copied().filter(|&v| set.contains(v)).collect()
    }
}

fn check_len(n: usize, ord: &LinearOrdering) -> Result<()> {
    if ord.len() == n {
        Ok(())
    } else {
        Err(Error::BadOrdering(format!("ordering has {} elements, ground set has {n}", ord.len())))
    }
}

fn face_sink_count(index: &FaceIndex, id: usize, ord: &LinearOrdering, limit: usize) -> usize {
    let face = &index.faces()[id];
    let mut sinks = 0;
    for (k, &v) in face.members.iter().enumerate() {
        if face.neighbors[k].iter().all(|&w| ord.precedes(v, w)) {
            sinks += 1;
            if sinks >= limit {
                break;
            }
        }
    }
    sinks
}

/// Unique sink on every nonempty face. Faces of rank at most 2 always
/// pass and are skipped.
pub fn is_k_ordering(poly: &MatroidPolytope, ord: &LinearOrdering) -> Result<bool> {
    check_len(poly.ground_size(), ord)?;
    let index = poly.face_index();
    Ok((0..index.faces().len())
        .filter(|&id| index.faces()[id].rank >= 3)
        .all(|id| face_sink_count(index, id, ord, 2) == 1))
}

/// Sink count of every nonempty face, in face-index order.
pub fn sink_counts(poly: &MatroidPolytope, ord: &LinearOrdering) -> Result<Vec<usize>> {
    check_len(poly.ground_size(), ord)?;
    let index = poly.face_index();
    Ok((0..index.faces().len()).map(|id| face_sink_count(index, id, ord, usize::MAX)).collect())
}

/// K-ordering test straight from the definition: build each induced
/// digraph and count its sinks, with no index and no skipped ranks.
pub fn is_k_ordering_by_definition(
    lat: &FaceLattice,
    graph: &PolytopeGraph,
    ord: &LinearOrdering,
) -> Result<bool> {
    let whole = OrderedDigraph::new(graph, ord)?;
    for f in lat.faces().iter().filter(|f| f.rank >= 1) {
        if whole.induced(lat, &f.elements)?.sinks().len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Condition (sh.1'): on every face of rank >= 2, for every pair
/// `e_i < e_j` of its elements, `e_j` has a smaller neighbour in the face.
pub fn check_sh1_prime(lat: &FaceLattice, graph: &PolytopeGraph, ord: &LinearOrdering) -> Result<bool> {
    check_len(lat.ground_size(), ord)?;
    for f in lat.faces().iter().filter(|f| f.rank >= 2) {
        let members = ord.restricted_to(&f.elements);
        for (j, &ej) in members.iter().enumerate() {
            for _ei in &members[..j] {
                let has_lower =
                    graph.neighbors(ej).iter().any(|&l| f.elements.contains(l) && ord.precedes(l, ej));
                if !has_lower {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Unique sink on every rank-3 face.
pub fn check_rank3_criterion(poly: &MatroidPolytope, ord: &LinearOrdering) -> Result<bool> {
    check_len(poly.ground_size(), ord)?;
    let index = poly.face_index();
    Ok((0..index.faces().len())
        .filter(|&id| index.faces()[id].rank == 3)
        .all(|id| face_sink_count(index, id, ord, 2) == 1))
}

/// `(d+, d-)` histograms; `d+(e)` counts neighbours before `e`. Both have
/// length `max(rank, max degree + 1)`.
pub fn degree_histograms(
    graph: &PolytopeGraph,
    ord: &LinearOrdering,
    rank: usize,
) -> (Vec<usize>, Vec<usize>) {
    let n = graph.vertex_count();
    let max_deg = (0..n).map(|v| graph.degree(v)).max().unwrap_or(0);
    let len = rank.max(max_deg + 1);
    let mut plus = vec![0; len];
    let mut minus = vec![0; len];
    for v in 0..n {
        let out = graph.neighbors(v).iter().filter(|&&w| ord.precedes(w, v)).count();
        plus[out] += 1;
        minus[graph.degree(v) - out] += 1;
    }
    (plus, minus)
}

/// Checks `d+` histogram = h*-vector. Only defined for K-orderings.
pub fn verify_h_star_theorem(poly: &MatroidPolytope, ord: &LinearOrdering) -> Result<bool> {
    if !is_k_ordering(poly, ord)? {
        return Err(Error::Precondition("the ordering is not a K-ordering".into()));
    }
    let (plus, _) = degree_histograms(poly.graph(), ord, poly.rank());
    let h = poly.lattice().h_star();
    Ok(plus.len() == h.len() && plus.iter().zip(&h).all(|(&a, &b)| a as i64 == b))
}

/// Shelling ordering by definition: reorient every initial segment and
/// test the result for acyclicity.
pub fn is_shelling_ordering(om: &OrientedMatroid, ord: &LinearOrdering) -> Result<bool> {
    check_len(om.ground_size(), ord)?;
    for k in 1..=ord.len() {
        if !om.reorient_initial(ord.sequence(), k)?.is_acyclic() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same verdict via topes: reorienting on `A` is acyclic iff the vector
/// that is negative on `A` and positive elsewhere is a tope.
pub fn is_shelling_ordering_fast(om: &OrientedMatroid, ord: &LinearOrdering) -> Result<bool> {
    check_len(om.ground_size(), ord)?;
    let mut tope = SignVector::all_plus(ord.len());
    for &v in ord.sequence() {
        tope.set(v, crate::sign_vector::Sign::Minus);
        if !om.covectors().contains(&tope) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same verdict via circuits: no initial reorientation makes a circuit positive.
pub fn is_shelling_ordering_by_circuits(circuits: &[SignVector], ord: &LinearOrdering) -> Result<bool> {
    let n = ord.len();
    if let Some(c) = circuits.iter().find(|c| c.len() != n) {
        return Err(Error::LengthMismatch { left: n, right: c.len() });
    }
    let mut prefix = ElementSet::empty(n);
    for &v in ord.sequence() {
        prefix.insert(v);
        if circuits.iter().any(|c| c.reorient_unchecked(&prefix).is_nonnegative()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FaceSinks {
    pub face: Vec<String>,
    pub rank: usize,
    pub sinks: usize,
}

/// Everything known about one ordering of one matroid polytope.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrderingReport {
    pub ordering: Vec<String>,
    pub is_k: bool,
    pub is_shelling: bool,
    pub sh1_prime: bool,
    pub rank3_criterion: bool,
    pub sink_counts: Vec<FaceSinks>,
    pub d_plus_hist: Vec<usize>,
    pub d_minus_hist: Vec<usize>,
    pub h_star: Vec<i64>,
    /// `d+` histogram equals h*; present only for K-orderings.
    pub h_star_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl OrderingReport {
    pub fn build(poly: &MatroidPolytope, ord: &LinearOrdering, seed: Option<u64>) -> Result<Self> {
        let counts = sink_counts(poly, ord)?;
        let labels = poly.labels();
        let sink_counts: Vec<FaceSinks> = poly
            .face_index()
            .faces()
            .iter()
            .zip(&counts)
            .map(|(f, &sinks)| FaceSinks {
                face: f.members.iter().map(|&v| labels[v].clone()).collect(),
                rank: f.rank,
                sinks,
            })
            .collect();
        let is_k = counts.iter().all(|&c| c == 1);
        let (d_plus_hist, d_minus_hist) = degree_histograms(poly.graph(), ord, poly.rank());
        let h_star = poly.lattice().h_star();
        let h_star_matches = if is_k { Some(verify_h_star_theorem(poly, ord)?) } else { None };
        Ok(OrderingReport {
            ordering: ord.labels(labels),
            is_k,
            is_shelling: is_shelling_ordering_fast(poly.oriented_matroid(), ord)?,
            sh1_prime: check_sh1_prime(poly.lattice(), poly.graph(), ord)?,
            rank3_criterion: check_rank3_criterion(poly, ord)?,
            sink_counts,
            d_plus_hist,
            d_minus_hist,
            h_star,
            h_star_matches,
            seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PointConfiguration;
    use itertools::Itertools;

    fn poly(dim: usize, points: Vec<Vec<i64>>) -> MatroidPolytope {
        MatroidPolytope::new(PointConfiguration::new("t", dim, points).unwrap()).unwrap()
    }

    fn square() -> MatroidPolytope {
        poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
    }

    fn triangle() -> MatroidPolytope {
        poly(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]])
    }

    fn ord(p: &MatroidPolytope, s: &str) -> LinearOrdering {
        LinearOrdering::parse(p.labels(), s).unwrap()
    }

    fn all_orderings(n: usize) -> Vec<LinearOrdering> {
        (0..n).permutations(n).map(|p| LinearOrdering::from_sequence(p).unwrap()).collect()
    }

    #[test]
    fn parse_and_reverse() {
        let p = square();
        let o = ord(&p, "e3, e1,e2,e4");
        assert_eq!(o.sequence(), &[2, 0, 1, 3]);
        assert_eq!(o.reverse().sequence(), &[3, 1, 0, 2]);
        assert_eq!(o.reverse().reverse(), o);
        assert!(o.reverse().precedes(3, 2));
        assert!(matches!(LinearOrdering::parse(p.labels(), "e1,e2,e3"), Err(Error::BadOrdering(_))));
        assert!(matches!(LinearOrdering::parse(p.labels(), "e1,e1,e2,e3"), Err(Error::BadOrdering(_))));
        assert!(matches!(LinearOrdering::parse(p.labels(), "e1,e2,e3,x"), Err(Error::UnknownLabel(_))));
        assert!(is_k_ordering(&p, &LinearOrdering::identity(3)).is_err());
    }

    #[test]
    fn square_k_orderings() {
        let p = square();
        assert!(is_k_ordering(&p, &ord(&p, "e1,e2,e3,e4")).unwrap());
        assert!(!is_k_ordering(&p, &ord(&p, "e1,e4,e2,e3")).unwrap());
        let k: Vec<_> = all_orderings(4).into_iter().filter(|o| is_k_ordering(&p, o).unwrap()).collect();
        assert_eq!(k.len(), 16);
        // the failures put an antipodal pair first
        for o in all_orderings(4) {
            let first: Vec<usize> = o.sequence()[..2].iter().copied().sorted().collect();
            let antipodal = first == [0, 3] || first == [1, 2];
            assert_eq!(is_k_ordering(&p, &o).unwrap(), !antipodal);
        }
    }

    #[test]
    fn triangle_every_ordering_is_k() {
        let p = triangle();
        for o in all_orderings(3) {
            assert!(is_k_ordering(&p, &o).unwrap());
            assert_eq!(degree_histograms(p.graph(), &o, 3).0, vec![1, 1, 1]);
            assert!(verify_h_star_theorem(&p, &o).unwrap());
        }
    }

    #[test]
    fn sh1_prime_agrees_on_square() {
        let p = square();
        assert!(check_sh1_prime(p.lattice(), p.graph(), &ord(&p, "e1,e2,e3,e4")).unwrap());
        assert!(!check_sh1_prime(p.lattice(), p.graph(), &ord(&p, "e1,e4,e2,e3")).unwrap());
        for o in all_orderings(4) {
            assert_eq!(check_sh1_prime(p.lattice(), p.graph(), &o).unwrap(), is_k_ordering(&p, &o).unwrap());
            assert_eq!(
                is_k_ordering_by_definition(p.lattice(), p.graph(), &o).unwrap(),
                is_k_ordering(&p, &o).unwrap()
            );
        }
    }

    #[test]
    fn square_histograms_and_theorem() {
        let p = square();
        let o = ord(&p, "e1,e2,e3,e4");
        let (plus, minus) = degree_histograms(p.graph(), &o, 3);
        assert_eq!(plus, vec![1, 2, 1]);
        assert_eq!(minus, vec![1, 2, 1]);
        assert!(verify_h_star_theorem(&p, &o).unwrap());
        assert!(matches!(verify_h_star_theorem(&p, &ord(&p, "e1,e4,e2,e3")), Err(Error::Precondition(_))));
    }

    #[test]
    fn square_shelling_orderings() {
        let p = square();
        let om = p.oriented_matroid();
        let circuits = om.circuits();
        assert!(is_shelling_ordering(om, &ord(&p, "e1,e2,e4,e3")).unwrap());
        assert!(is_shelling_ordering(om, &ord(&p, "e1,e2,e3,e4")).unwrap());
        assert!(!is_shelling_ordering(om, &ord(&p, "e1,e4,e2,e3")).unwrap());
        for o in all_orderings(4) {
            let slow = is_shelling_ordering(om, &o).unwrap();
            assert_eq!(slow, is_shelling_ordering_fast(om, &o).unwrap());
            assert_eq!(slow, is_shelling_ordering_by_circuits(&circuits, &o).unwrap());
            // the square's K-orderings and shelling orderings coincide
            assert_eq!(slow, is_k_ordering(&p, &o).unwrap());
        }
    }

    #[test]
    fn reverse_closure_on_square() {
        let p = square();
        for o in all_orderings(4) {
            assert_eq!(is_k_ordering(&p, &o).unwrap(), is_k_ordering(&p, &o.reverse()).unwrap());
        }
    }

    #[test]
    fn rank3_criterion_on_square_is_whole_graph() {
        let p = square();
        for o in all_orderings(4) {
            let whole = OrderedDigraph::new(p.graph(), &o).unwrap();
            assert_eq!(check_rank3_criterion(&p, &o).unwrap(), whole.sinks().len() == 1);
        }
    }

    #[test]
    fn report_for_bad_square_ordering() {
        let p = square();
        let r = OrderingReport::build(&p, &ord(&p, "e1,e4,e2,e3"), None).unwrap();
        assert!(!r.is_k && !r.is_shelling && !r.sh1_prime);
        assert_eq!(r.h_star_matches, None);
        let top = r.sink_counts.iter().find(|f| f.rank == 3).unwrap();
        assert_eq!(top.sinks, 2);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["is_k"], false);
        assert!(json.get("seed").is_none());
    }
}
