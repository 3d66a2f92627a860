//! Cube matroid polytopes, the test corpus, and the cube experiments.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::orderings::{
    degree_histograms, enumerate_orderings, is_k_ordering, is_k_ordering_by_definition, is_shelling_ordering,
    is_shelling_ordering_by_circuits, EnumerationOptions, Filter, LinearOrdering, Mode, OrderingReport,
    Summary,
};
use crate::polytope::MatroidPolytope;

/// Largest dimension generated without complaint.
pub const DESK_MAX_DIM: usize = 6;

/// `{0,1}^d` in binary counting order (first coordinate least
/// significant), labelled `e1 .. e(2^d)`. For `d = 2` this is the square
/// `(0,0), (1,0), (0,1), (1,1)`.
pub fn cube(d: usize) -> Result<PointConfiguration> {
    if d < 1 {
        return Err(Error::Invalid("cube dimension must be at least 1".into()));
    }
    if d >= 24 {
        return Err(Error::Invalid(format!("cube dimension {d} is far beyond desk scale")));
    }
    let points = (0..1i64 << d).map(|i| (0..d).map(|b| (i >> b) & 1).collect()).collect();
    PointConfiguration::new(format!("cube-{d}"), d, points)
}

/// Origin plus the unit vectors of `Z^d`: `d + 1` affinely independent points.
pub fn simplex(d: usize) -> Result<PointConfiguration> {
    if d < 1 {
        return Err(Error::Invalid("simplex dimension must be at least 1".into()));
    }
    let points = std::iter::once(vec![0; d])
        .chain((0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()))
        .collect();
    PointConfiguration::new(format!("simplex-{d}"), d, points)
}

/// Triangle times segment.
pub fn prism() -> PointConfiguration {
    PointConfiguration::new(
        "prism",
        3,
        vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1]],
    )
    .expect("valid prism")
}

/// Square base with an apex over its centre; the apex has degree 4.
pub fn square_pyramid() -> PointConfiguration {
    PointConfiguration::new(
        "square-pyramid",
        3,
        vec![vec![0, 0, 0], vec![2, 0, 0], vec![0, 2, 0], vec![2, 2, 0], vec![1, 1, 2]],
    )
    .expect("valid pyramid")
}

/// Simplices up to dimension 5, cubes up to dimension 4, the prism, and
/// the square pyramid as a non-simple control.
pub fn corpus() -> Vec<PointConfiguration> {
    let mut out: Vec<PointConfiguration> = (1..=5).map(|d| simplex(d).expect("simplex")).collect();
    out.extend((1..=4).map(|d| cube(d).expect("cube")));
    out.push(prism());
    out.push(square_pyramid());
    out
}

fn binomial_row(d: usize) -> Vec<i64> {
    let mut row = vec![BigInt::from(1)];
    for k in 1..=d {
        let next = &row[k - 1] * BigInt::from(d + 1 - k) / BigInt::from(k);
        row.push(next);
    }
    row.iter().map(|b| i64::try_from(b).expect("small binomial")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CubeIdentityReport {
    pub dim: usize,
    pub h_star: Vec<i64>,
    pub expected: Vec<i64>,
    pub h_star_ok: bool,
    /// K-orderings whose in-degree counts were checked.
    pub orderings_checked: u64,
    pub in_degree_ok: bool,
}

/// Checks `h*(C^d) = (C(d,0), .., C(d,d))` and, over K-orderings, that
/// exactly `C(d,l)` vertices have in-degree `d - l`. For `d <= 3` every
/// ordering is examined; above that, orderings are drawn from generic
/// linear functionals (which are always K-orderings) with a fixed seed.
pub fn cube_h_star_identity(d: usize) -> Result<CubeIdentityReport> {
    let poly = MatroidPolytope::new(cube(d)?)?;
    let h_star = poly.lattice().h_star();
    let expected = binomial_row(d);
    let check = |ord: &LinearOrdering| {
        let (_, minus) = degree_histograms(poly.graph(), ord, poly.rank());
        (0..=d).all(|l| minus[d - l] as i64 == expected[l])
    };
    let mut checked = 0u64;
    let mut in_degree_ok = true;
    if d <= 3 {
        let opts = EnumerationOptions { filter: Filter::K, ..Default::default() };
        for report in enumerate_orderings(&poly, &opts)?.reports {
            let ord = LinearOrdering::parse(poly.labels(), &report.ordering.join(","))?;
            in_degree_ok &= check(&ord);
            checked += 1;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        let points = &poly.config().points;
        while checked < 200 {
            let weights: Vec<i64> = (0..d).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
            let values: Vec<i64> =
                points.iter().map(|p| p.iter().zip(&weights).map(|(a, b)| a * b).sum()).collect();
            let mut seq: Vec<usize> = (0..points.len()).collect();
            seq.sort_by_key(|&i| values[i]);
            if seq.windows(2).any(|w| values[w[0]] == values[w[1]]) {
                continue;
            }
            let ord = LinearOrdering::from_sequence(seq)?;
            if !is_k_ordering(&poly, &ord)? {
                return Err(Error::Precondition("a generic linear functional gave a non-K ordering".into()));
            }
            in_degree_ok &= check(&ord);
            checked += 1;
        }
    }
    Ok(CubeIdentityReport {
        dim: d,
        h_star_ok: h_star == expected,
        h_star,
        expected,
        orderings_checked: checked,
        in_degree_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub report: OrderingReport,
    pub k_by_definition: bool,
    pub shelling_by_definition: bool,
    pub shelling_by_circuits: bool,
}

impl Witness {
    pub fn confirmed(&self) -> bool {
        self.k_by_definition && !self.shelling_by_definition && !self.shelling_by_circuits
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub dim: usize,
    pub summary: Summary,
    /// Only for `d = 2`: K-orderings and shelling orderings coincide.
    pub coincide: Option<bool>,
    pub witnesses: Vec<Witness>,
    /// Candidates the unpruned checkers did not confirm.
    pub rejected: Vec<Witness>,
}

/// Counts K-orderings, shelling orderings and K-orderings that are not
/// shelling orderings of `C^d`. Every K-not-shelling candidate is
/// re-checked from scratch before it is reported as a witness.
pub fn problem_experiment(
    d: usize,
    mode: Mode,
    seed: u64,
    budget: Option<u128>,
    workers: usize,
) -> Result<ExperimentReport> {
    let poly = MatroidPolytope::new(cube(d)?)?;
    let opts = EnumerationOptions { filter: Filter::KNotShelling, mode, seed, limit: budget, workers };
    let run = enumerate_orderings(&poly, &opts)?;
    let circuits = poly.oriented_matroid().circuits();
    let (mut witnesses, mut rejected) = (Vec::new(), Vec::new());
    for report in run.reports {
        let ord = LinearOrdering::parse(poly.labels(), &report.ordering.join(","))?;
        let w = Witness {
            k_by_definition: is_k_ordering_by_definition(poly.lattice(), poly.graph(), &ord)?,
            shelling_by_definition: is_shelling_ordering(poly.oriented_matroid(), &ord)?,
            shelling_by_circuits: is_shelling_ordering_by_circuits(&circuits, &ord)?,
            report,
        };
        if w.confirmed() {
            witnesses.push(w);
        } else {
            rejected.push(w);
        }
    }
    let c = &run.summary.counts;
    let coincide = (d == 2).then_some(c.k_not_shelling == 0 && c.shelling_not_k == 0);
    Ok(ExperimentReport { dim: d, summary: run.summary, coincide, witnesses, rejected })
}

/// A uniformly random ordering from a seeded generator.
pub fn random_ordering(n: usize, seed: u64) -> LinearOrdering {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(&mut rng);
    LinearOrdering::from_sequence(seq).expect("permutation")
}
