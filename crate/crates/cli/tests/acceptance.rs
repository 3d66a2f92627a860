//! Acceptance suite, run without the libtest harness so every PASS/FAIL
//! line reaches the terminal. Exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use mpoly_core::cube_models::{
    corpus, cube, cube_h_star_identity, prism, problem_experiment, simplex, square_pyramid,
};
use mpoly_core::orderings::{
    check_rank3_criterion, check_sh1_prime, degree_histograms, enumerate_orderings, is_k_ordering,
    is_k_ordering_by_definition, is_shelling_ordering, is_shelling_ordering_by_circuits,
    is_shelling_ordering_fast, EnumerationOptions, Filter, Mode,
};
use mpoly_core::reconstruction::{find_good_orientations, reconstruct_faces};
use mpoly_core::{LinearOrdering, MatroidPolytope, PointConfiguration, PolytopeGraph};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

/// Verdicts of every checker on one ordering.
#[derive(Clone, Debug)]
struct Row {
    seq: Vec<usize>,
    k: bool,
    k_def: bool,
    shelling: bool,
    shelling_circuits: bool,
    sh1: bool,
    rank3: bool,
    d_plus_is_h_star: bool,
}

struct Table {
    name: String,
    simple: bool,
    rows: Vec<Row>,
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn classify(poly: &MatroidPolytope, seq: Vec<usize>, circuits: &[mpoly_core::SignVector]) -> Row {
    let ord = LinearOrdering::from_sequence(seq.clone()).unwrap();
    let (d_plus, _) = degree_histograms(poly.graph(), &ord, poly.rank());
    let h = poly.lattice().h_star();
    let d_plus: Vec<i64> = d_plus.iter().map(|&x| x as i64).collect();
    Row {
        k: is_k_ordering(poly, &ord).unwrap(),
        k_def: is_k_ordering_by_definition(poly.lattice(), poly.graph(), &ord).unwrap(),
        shelling: is_shelling_ordering_fast(poly.oriented_matroid(), &ord).unwrap(),
        shelling_circuits: is_shelling_ordering_by_circuits(circuits, &ord).unwrap(),
        sh1: check_sh1_prime(poly.lattice(), poly.graph(), &ord).unwrap(),
        rank3: check_rank3_criterion(poly, &ord).unwrap(),
        d_plus_is_h_star: d_plus == h,
        seq,
    }
}

fn exhaustive(config: PointConfiguration) -> Table {
    let poly = MatroidPolytope::new(config).unwrap();
    let circuits = poly.oriented_matroid().circuits();
    let mut p: Vec<usize> = (0..poly.ground_size()).collect();
    let mut rows = Vec::new();
    loop {
        rows.push(classify(&poly, p.clone(), &circuits));
        if !next_permutation(&mut p) {
            break;
        }
    }
    Table { name: poly.config().name.clone(), simple: poly.is_simple(), rows }
}

/// Every corpus polytope small enough for all n! orderings.
fn tables() -> &'static [Table] {
    static T: OnceLock<Vec<Table>> = OnceLock::new();
    T.get_or_init(|| corpus().into_iter().filter(|c| c.len() <= 8).map(exhaustive).collect())
}

fn table(name: &str) -> &'static Table {
    tables().iter().find(|t| t.name == name).unwrap()
}

/// Orderings of `C^4` from linear functionals with weights `±2^k`; all
/// subset sums differ, so every one is generic and hence a K-ordering.
fn c4_functional_orderings() -> Vec<Vec<usize>> {
    let c = cube(4).unwrap();
    let mut out = Vec::new();
    let mut perm = vec![0, 1, 2, 3];
    loop {
        for signs in 0..16u32 {
            let w: Vec<i64> =
                (0..4).map(|j| (1i64 << perm[j]) * if signs >> j & 1 == 1 { -1 } else { 1 }).collect();
            let mut seq: Vec<usize> = (0..16).collect();
            seq.sort_by_key(|&i| c.points[i].iter().zip(&w).map(|(a, b)| a * b).sum::<i64>());
            out.push(seq);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn c4_rows() -> &'static [Row] {
    static R: OnceLock<Vec<Row>> = OnceLock::new();
    R.get_or_init(|| {
        let poly = MatroidPolytope::new(cube(4).unwrap()).unwrap();
        let circuits = poly.oriented_matroid().circuits();
        let mut seqs = c4_functional_orderings();
        seqs.extend((0..2000).map(|s| mpoly_core::cube_models::random_ordering(16, s).sequence().to_vec()));
        seqs.into_iter().map(|s| classify(&poly, s, &circuits)).collect()
    })
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (d, limit) in [(2, Duration::from_secs(1)), (3, Duration::from_secs(1)), (4, Duration::from_secs(30))]
    {
        let t = Instant::now();
        let poly = MatroidPolytope::new(cube(d).unwrap()).unwrap();
        let h = poly.lattice().h_star();
        let elapsed = t.elapsed();
        let expected: Vec<i64> = match d {
            2 => vec![1, 2, 1],
            3 => vec![1, 3, 3, 1],
            _ => vec![1, 4, 6, 4, 1],
        };
        if h != expected {
            return Err(format!("h*(C^{d}) = {h:?}, expected {expected:?}"));
        }
        if elapsed > limit {
            return Err(format!("C^{d} took {elapsed:?}, limit {limit:?}"));
        }
        let report = cube_h_star_identity(d).unwrap();
        if !(report.h_star_ok && report.in_degree_ok) {
            return Err(format!("in-degree counts fail for C^{d}: {report:?}"));
        }
        notes.push(format!("C^{d} {h:?} in {elapsed:.2?}"));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for name in ["cube-2", "cube-3", "simplex-1", "simplex-2", "simplex-3", "simplex-4", "prism"] {
        let bad = table(name).rows.iter().filter(|r| r.k && !r.d_plus_is_h_star).count();
        if bad > 0 {
            return Err(format!("{name}: {bad} K-orderings with d+ != h*"));
        }
        checked += table(name).rows.iter().filter(|r| r.k).count();
    }
    let c4 = c4_rows().iter().filter(|r| r.k).collect::<Vec<_>>();
    if c4.iter().any(|r| !r.d_plus_is_h_star) {
        return Err("C^4: a sampled K-ordering has d+ != h*".into());
    }
    Ok(format!("{checked} K-orderings exhaustively, plus {} sampled on C^4", c4.len()))
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    for t in tables().iter().filter(|t| t.simple) {
        if let Some(r) = t.rows.iter().find(|r| r.shelling && !r.k) {
            return Err(format!("{}: shelling ordering {:?} is not K", t.name, r.seq));
        }
        if let Some(r) = t.rows.iter().find(|r| r.shelling != r.shelling_circuits) {
            return Err(format!("{}: shelling checkers disagree on {:?}", t.name, r.seq));
        }
        total += t.rows.iter().filter(|r| r.shelling).count();
    }
    if c4_rows().iter().any(|r| r.shelling && !r.k) {
        return Err("C^4: sampled shelling ordering is not K".into());
    }
    Ok(format!("{total} shelling orderings, all K"))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for t in tables() {
        let k: HashSet<&[usize]> = t.rows.iter().filter(|r| r.k).map(|r| r.seq.as_slice()).collect();
        for s in &k {
            let rev: Vec<usize> = s.iter().rev().copied().collect();
            if !k.contains(rev.as_slice()) {
                return Err(format!("{}: reverse of {s:?} is not K", t.name));
            }
        }
        notes.push(format!("{}:{}", t.name, k.len()));
    }
    let poly = MatroidPolytope::new(cube(4).unwrap()).unwrap();
    for r in c4_rows().iter().filter(|r| r.k) {
        let rev = LinearOrdering::from_sequence(r.seq.clone()).unwrap().reverse();
        if !is_k_ordering(&poly, &rev).unwrap() {
            return Err(format!("C^4: reverse of {:?} is not K", r.seq));
        }
    }
    Ok(notes.join(" "))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for t in tables().iter().filter(|t| t.simple) {
        if let Some(r) = t.rows.iter().find(|r| r.sh1 != r.k || r.k != r.k_def) {
            return Err(format!("{}: verdicts differ on {:?}: {r:?}", t.name, r.seq));
        }
        n += t.rows.len();
    }
    if let Some(r) = c4_rows().iter().find(|r| r.sh1 != r.k || r.k != r.k_def) {
        return Err(format!("C^4: verdicts differ on {:?}", r.seq));
    }
    Ok(format!("{n} orderings exhaustively, {} sampled on C^4", c4_rows().len()))
}

fn criterion_6() -> Outcome {
    let mut configs = corpus();
    configs.push(cube(5).unwrap());
    configs.push(simplex(6).unwrap());
    for c in configs {
        let poly = MatroidPolytope::new(c).unwrap();
        let f = poly.lattice().f_vector();
        let sum: i64 =
            f.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { -(x as i64) } else { x as i64 }).sum();
        if sum != 0 || !poly.lattice().euler_check() {
            return Err(format!("{}: f = {f:?}", poly.config().name));
        }
    }
    Ok("14 polytopes".into())
}

fn criterion_7() -> Outcome {
    let t = table("cube-3");
    let rank3: BTreeSet<&Vec<usize>> = t.rows.iter().filter(|r| r.rank3).map(|r| &r.seq).collect();
    let k: BTreeSet<&Vec<usize>> = t.rows.iter().filter(|r| r.k_def).map(|r| &r.seq).collect();
    if rank3 != k {
        return Err(format!("{} rank-3 orderings vs {} K-orderings", rank3.len(), k.len()));
    }
    Ok(format!("{} orderings of 40320 on C^3", k.len()))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for c in [cube(2).unwrap(), simplex(2).unwrap(), simplex(3).unwrap(), prism(), cube(3).unwrap()] {
        let t = Instant::now();
        let poly = MatroidPolytope::new(c).unwrap();
        let text = serde_json::to_string(&poly.graph().to_json()).unwrap();
        let graph = PolytopeGraph::from_json_str(&text).unwrap();
        let good = find_good_orientations(&graph, None).unwrap();
        let lat = reconstruct_faces(&graph, &good).map_err(|e| e.to_string())?;
        if lat.labelled_faces() != poly.lattice().labelled_faces()
            || lat.f_vector() != poly.lattice().f_vector()
        {
            return Err(format!("{}: reconstruction differs", poly.config().name));
        }
        notes.push(format!("{} in {:.2?}", poly.config().name, t.elapsed()));
    }
    Ok(notes.join(", "))
}

fn criterion_9() -> Outcome {
    let poly = MatroidPolytope::new(cube(2).unwrap()).unwrap();
    let set = |filter| -> BTreeSet<Vec<String>> {
        let opts = EnumerationOptions { filter, ..Default::default() };
        enumerate_orderings(&poly, &opts).unwrap().reports.into_iter().map(|r| r.ordering).collect()
    };
    let (k, sh) = (set(Filter::K), set(Filter::Shelling));
    if k != sh || k.len() != 16 {
        return Err(format!("{} K-orderings, {} shelling orderings", k.len(), sh.len()));
    }
    let t = table("cube-2");
    if t.rows.iter().any(|r| r.k != r.shelling) {
        return Err("square: per-ordering verdicts differ".into());
    }
    Ok("16 = 16".into())
}

fn criterion_10() -> Outcome {
    let report = problem_experiment(3, Mode::Exhaustive, 0, None, 4).unwrap();
    let c = report.summary.counts;
    if !(c.is_consistent() && c.shelling <= c.k && c.k <= c.total && c.total == 40320) {
        return Err(format!("inconsistent counts {c:?}"));
    }
    if !report.rejected.is_empty() || report.witnesses.len() as u128 != c.k_not_shelling {
        return Err(format!("{} rejected, {} witnesses", report.rejected.len(), report.witnesses.len()));
    }
    let t = table("cube-3");
    let tally = |f: fn(&Row) -> bool| t.rows.iter().filter(|r| f(r)).count() as u128;
    if tally(|r| r.k_def) != c.k || tally(|r| r.shelling_circuits) != c.shelling {
        return Err("counts differ from the independent tally".into());
    }
    let poly = MatroidPolytope::new(cube(3).unwrap()).unwrap();
    for w in &report.witnesses {
        let ord = LinearOrdering::parse(poly.labels(), &w.report.ordering.join(",")).unwrap();
        let k = is_k_ordering_by_definition(poly.lattice(), poly.graph(), &ord).unwrap();
        let sh = is_shelling_ordering(poly.oriented_matroid(), &ord).unwrap();
        if !k || sh || !w.confirmed() {
            return Err(format!("witness {:?} fails re-verification", w.report.ordering));
        }
    }
    Ok(format!(
        "total {} k {} shelling {} k_not_shelling {} (all re-verified)",
        c.total, c.k, c.shelling, c.k_not_shelling
    ))
}

fn criterion_11() -> Outcome {
    let poly = MatroidPolytope::new(square_pyramid()).unwrap();
    if poly.is_simple() || poly.require_simple().is_ok() {
        return Err("pyramid reported simple".into());
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pyramid.json");
    std::fs::write(&path, square_pyramid().to_json()).unwrap();
    let input = path.to_str().unwrap();
    let runs: [&[&str]; 2] = [
        &["check-ordering", "--input", input, "--ordering", "e1,e2,e3,e4,e5"],
        &["enumerate", "--input", input],
    ];
    for args in runs {
        let out = Command::new(env!("CARGO_BIN_EXE_mpoly")).args(args).output().unwrap();
        if out.status.code() != Some(2) {
            return Err(format!("{args:?} exited with {:?}", out.status.code()));
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_mpoly")).args(["faces", "--input", input]).output().unwrap();
    if out.status.code() != Some(0) {
        return Err("faces should still work on the pyramid".into());
    }
    Ok("exit code 2 for check-ordering and enumerate".into())
}

fn main() {
    let criteria: [Check; 11] = [
        ("cube h*-identity", criterion_1),
        ("d+ histogram equals h* for K-orderings", criterion_2),
        ("shelling implies K", criterion_3),
        ("K-orderings closed under reversal", criterion_4),
        ("(sh.1') iff K", criterion_5),
        ("Euler-Poincare", criterion_6),
        ("rank-3 criterion on C^3", criterion_7),
        ("reconstruction from the graph", criterion_8),
        ("C^2 K = shelling", criterion_9),
        ("C^3 experiment integrity", criterion_10),
        ("square pyramid negative control", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
