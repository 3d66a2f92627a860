//! Exhaustive and sampled search over linear orderings.
//!
//! Exhaustive mode walks permutations in lexicographic order. Placing an
//! element updates both verdicts incrementally: a face gets a second sink
//! exactly when a vertex is placed with no earlier face-neighbour while the
//! face already holds a placed vertex, and the initial reorientation on the
//! current prefix must stay acyclic. A prefix that has already failed both
//! tests is counted in bulk instead of being expanded, unless the filter
//! asks for orderings that fail both.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{is_k_ordering, is_shelling_ordering_fast, LinearOrdering, OrderingReport};
use crate::error::{Error, Result};
use crate::polytope::MatroidPolytope;
use crate::sign_vector::{Sign, SignVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    All,
    K,
    Shelling,
    Both,
    Neither,
    KNotShelling,
    ShellingNotK,
}

impl Filter {
    pub fn matches(self, is_k: bool, is_shelling: bool) -> bool {
        match self {
            Filter::All => true,
            Filter::K => is_k,
            Filter::Shelling => is_shelling,
            Filter::Both => is_k && is_shelling,
            Filter::Neither => !is_k && !is_shelling,
            Filter::KNotShelling => is_k && !is_shelling,
            Filter::ShellingNotK => is_shelling && !is_k,
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Filter::All,
            "k" => Filter::K,
            "shelling" => Filter::Shelling,
            "both" => Filter::Both,
            "neither" => Filter::Neither,
            "k-not-shelling" => Filter::KNotShelling,
            "shelling-not-k" => Filter::ShellingNotK,
            other => return Err(Error::Parse(format!("unknown filter {other:?}"))),
        })
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("filter serializes");
        write!(f, "{}", s.as_str().unwrap_or_default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sample,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sample" => Ok(Mode::Sample),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub filter: Filter,
    pub mode: Mode,
    pub seed: u64,
    /// Exhaustive: maximum number of orderings classified. Sample: number
    /// of orderings drawn (required).
    pub limit: Option<u128>,
    pub workers: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { filter: Filter::All, mode: Mode::Exhaustive, seed: 0, limit: None, workers: 1 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub total: u128,
    pub k: u128,
    pub shelling: u128,
    pub both: u128,
    pub k_not_shelling: u128,
    pub shelling_not_k: u128,
    pub neither: u128,
}

impl Counts {
    fn record(&mut self, is_k: bool, is_shelling: bool, times: u128) {
        self.total += times;
        match (is_k, is_shelling) {
            (true, true) => {
                self.k += times;
                self.shelling += times;
                self.both += times;
            }
            (true, false) => {
                self.k += times;
                self.k_not_shelling += times;
            }
            (false, true) => {
                self.shelling += times;
                self.shelling_not_k += times;
            }
            (false, false) => self.neither += times,
        }
    }

    fn add(&mut self, o: &Counts) {
        self.total += o.total;
        self.k += o.k;
        self.shelling += o.shelling;
        self.both += o.both;
        self.k_not_shelling += o.k_not_shelling;
        self.shelling_not_k += o.shelling_not_k;
        self.neither += o.neither;
    }

    /// `both <= min(k, shelling)`, `max(k, shelling) <= total` and the four
    /// classes partition the total.
    pub fn is_consistent(&self) -> bool {
        self.both <= self.k.min(self.shelling)
            && self.k.max(self.shelling) <= self.total
            && self.both + self.k_not_shelling == self.k
            && self.both + self.shelling_not_k == self.shelling
            && self.both + self.k_not_shelling + self.shelling_not_k + self.neither == self.total
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Summary {
    pub mode: Mode,
    pub filter: Filter,
    pub seed: u64,
    #[serde(flatten)]
    pub counts: Counts,
    pub emitted: usize,
    /// `n!`
    pub space: u128,
    /// Exhaustive mode stopped at the limit before covering the space.
    pub partial: bool,
    pub coverage: f64,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub reports: Vec<OrderingReport>,
    pub summary: Summary,
}

fn factorials(n: usize) -> Vec<u128> {
    let mut f = vec![1u128; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1].saturating_mul(i as u128);
    }
    f
}

pub fn enumerate_orderings(poly: &MatroidPolytope, opts: &EnumerationOptions) -> Result<Enumeration> {
    let n = poly.ground_size();
    let space = factorials(n)[n];
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    // make sure the shared lazy caches are filled before workers fan out
    poly.oriented_matroid().covectors();
    let (counts, reports) = match opts.mode {
        Mode::Exhaustive => pool.install(|| exhaustive(poly, opts)),
        Mode::Sample => pool.install(|| sample(poly, opts))?,
    };
    let partial = opts.mode == Mode::Exhaustive && counts.total < space;
    let coverage = (counts.total as f64 / space as f64).min(1.0);
    Ok(Enumeration {
        summary: Summary {
            mode: opts.mode,
            filter: opts.filter,
            seed: opts.seed,
            counts,
            emitted: reports.len(),
            space,
            partial,
            coverage,
        },
        reports,
    })
}

fn exhaustive(poly: &MatroidPolytope, opts: &EnumerationOptions) -> (Counts, Vec<OrderingReport>) {
    let n = poly.ground_size();
    let fact = factorials(n);
    let budget = opts.limit.unwrap_or(u128::MAX);
    if opts.workers <= 1 || n < 2 {
        let mut w = Walker::new(poly, opts.filter, budget);
        w.walk_from(&[]);
        return (w.counts, w.reports);
    }
    // One subtree per first element, each of size (n-1)!. Subtrees that
    // fit in the budget entirely run in parallel; the one straddling the
    // budget boundary runs alone afterwards. This reproduces the
    // sequential result exactly.
    let subtree = fact[n - 1];
    let whole = (budget / subtree).min(n as u128) as usize;
    let mut parts: Vec<(Counts, Vec<OrderingReport>)> = (0..whole)
        .into_par_iter()
        .map(|first| {
            let mut w = Walker::new(poly, opts.filter, subtree);
            w.walk_from(&[first]);
            (w.counts, w.reports)
        })
        .collect();
    let rest = budget - whole as u128 * subtree;
    if whole < n && rest > 0 {
        let mut w = Walker::new(poly, opts.filter, rest);
        w.walk_from(&[whole]);
        parts.push((w.counts, w.reports));
    }
    let mut counts = Counts::default();
    let mut reports = Vec::new();
    for (c, r) in parts {
        counts.add(&c);
        reports.extend(r);
    }
    (counts, reports)
}

struct Walker<'a> {
    poly: &'a MatroidPolytope,
    filter: Filter,
    prune: bool,
    n: usize,
    fact: Vec<u128>,
    sequence: Vec<usize>,
    placed: Vec<bool>,
    face_placed: Vec<u32>,
    tope: SignVector,
    budget: u128,
    counts: Counts,
    reports: Vec<OrderingReport>,
}

impl<'a> Walker<'a> {
    fn new(poly: &'a MatroidPolytope, filter: Filter, budget: u128) -> Self {
        let n = poly.ground_size();
        Walker {
            poly,
            filter,
            prune: !matches!(filter, Filter::All | Filter::Neither),
            n,
            fact: factorials(n),
            sequence: Vec::with_capacity(n),
            placed: vec![false; n],
            face_placed: vec![0; poly.face_index().faces().len()],
            tope: SignVector::all_plus(n),
            budget,
            counts: Counts::default(),
            reports: Vec::new(),
        }
    }

    fn walk_from(&mut self, prefix: &[usize]) {
        let (mut k_ok, mut s_ok) = (true, true);
        for &v in prefix {
            let (k, s) = self.place(v, k_ok, s_ok);
            k_ok = k;
            s_ok = s;
        }
        self.walk(k_ok, s_ok);
    }

    /// Places `v` and returns the updated (K, shelling) verdicts of the prefix.
    fn place(&mut self, v: usize, k_ok: bool, s_ok: bool) -> (bool, bool) {
        let mut k_now = k_ok;
        for (fid, nbrs) in self.poly.face_index().vertex_faces(v) {
            if k_now && self.face_placed[*fid] > 0 && nbrs.iter().all(|&w| !self.placed[w]) {
                k_now = false;
            }
            self.face_placed[*fid] += 1;
        }
        self.placed[v] = true;
        self.sequence.push(v);
        self.tope.set(v, Sign::Minus);
        let s_now = s_ok && self.poly.oriented_matroid().covectors().contains(&self.tope);
        (k_now, s_now)
    }

    fn unplace(&mut self, v: usize) {
        for (fid, _) in self.poly.face_index().vertex_faces(v) {
            self.face_placed[*fid] -= 1;
        }
        self.placed[v] = false;
        self.sequence.pop();
        self.tope.set(v, Sign::Plus);
    }

    /// Returns false once the budget is spent.
    fn walk(&mut self, k_ok: bool, s_ok: bool) -> bool {
        let depth = self.sequence.len();
        if depth == self.n {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            self.counts.record(k_ok, s_ok, 1);
            if self.filter.matches(k_ok, s_ok) {
                let ord = LinearOrdering::from_sequence(self.sequence.clone()).expect("permutation");
                let report = OrderingReport::build(self.poly, &ord, None).expect("valid ordering");
                debug_assert_eq!((report.is_k, report.is_shelling), (k_ok, s_ok));
                self.reports.push(report);
            }
            return true;
        }
        for v in 0..self.n {
            if self.placed[v] {
                continue;
            }
            let (k_now, s_now) = self.place(v, k_ok, s_ok);
            let subtree = self.fact[self.n - depth - 1];
            let keep_going = if self.prune && !k_now && !s_now && self.budget >= subtree {
                self.budget -= subtree;
                self.counts.record(false, false, subtree);
                true
            } else {
                self.walk(k_now, s_now)
            };
            self.unplace(v);
            if !keep_going || self.budget == 0 {
                return false;
            }
        }
        true
    }
}

fn sample(poly: &MatroidPolytope, opts: &EnumerationOptions) -> Result<(Counts, Vec<OrderingReport>)> {
    let draws =
        opts.limit.ok_or_else(|| Error::Invalid("sample mode needs a limit (number of draws)".into()))?;
    let draws = usize::try_from(draws).map_err(|_| Error::Overflow("sample limit"))?;
    let n = poly.ground_size();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let orderings: Vec<Vec<usize>> = (0..draws)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    let classified: Vec<(bool, bool, Option<OrderingReport>)> = orderings
        .into_par_iter()
        .map(|seq| {
            let ord = LinearOrdering::from_sequence(seq)?;
            let k = is_k_ordering(poly, &ord)?;
            let s = is_shelling_ordering_fast(poly.oriented_matroid(), &ord)?;
            let report = if opts.filter.matches(k, s) {
                Some(OrderingReport::build(poly, &ord, Some(opts.seed))?)
            } else {
                None
            };
            Ok((k, s, report))
        })
        .collect::<Result<_>>()?;
    let mut counts = Counts::default();
    let mut reports = Vec::new();
    for (k, s, r) in classified {
        counts.record(k, s, 1);
        reports.extend(r);
    }
    Ok((counts, reports))
}
