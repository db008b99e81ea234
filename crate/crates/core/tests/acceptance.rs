//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use kohn_lens::arith::units;
use kohn_lens::asymptotics::{
    sweep_bounds, universal_constant, weyl_ratio_series, QuadratureConfig,
};
use kohn_lens::genfunc::{genfunc_closed, genfunc_series, independence_probe, sample_points};
use kohn_lens::invariant::{dim_invariant_bruteforce, dim_invariant_recurrence, InvariantCounter};
use kohn_lens::isospectral::{
    c_matrix, condition4_witness, dims_equal, is_symmetric, span_dimension, symmetric_dimension,
    t_inverse,
};
use kohn_lens::spectrum::{build_spectrum, multiplicity, SpectrumTable};
use kohn_lens::{gcd_invariant, Bidegree, LensSpace};
use num_bigint::BigUint;
use rayon::prelude::*;

type Outcome = Result<String, String>;

const GRID: u64 = 15;
const ORACLE_BUDGET: u64 = 10_000_000;
const SWEEP_LAMBDA: u64 = 500;

fn lens(k: u64, w: &[u64]) -> LensSpace {
    let w: Vec<i64> = w.iter().map(|&x| x as i64).collect();
    LensSpace::from_weights(k as i64, &w).unwrap()
}

/// Every tuple in `(Z/k)^x` of length `n`, lexicographic.
fn all_tuples(k: u64, n: usize) -> Vec<Vec<u64>> {
    let us = units(k);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                us.iter().map(move |&u| {
                    let mut t = t.clone();
                    t.push(u);
                    t
                })
            })
            .collect();
    }
    out
}

/// One tuple per orbit of `w -> a * sigma(w)`: the least sorted image.
fn orbit_representatives(k: u64, n: usize) -> Vec<Vec<u64>> {
    let us = units(k);
    let mut reps: Vec<Vec<u64>> = all_tuples(k, n)
        .into_iter()
        .map(|w| {
            us.iter()
                .map(|&a| {
                    let mut img: Vec<u64> = w.iter().map(|&l| a * l % k).collect();
                    img.sort_unstable();
                    img
                })
                .min()
                .unwrap()
        })
        .collect();
    reps.sort();
    reps.dedup();
    reps
}

fn grid_spaces() -> Vec<LensSpace> {
    let mut spaces = Vec::new();
    for n in [2, 3] {
        for k in 1..=12 {
            spaces.extend(orbit_representatives(k, n).iter().map(|w| lens(k, w)));
        }
    }
    spaces
}

fn criterion_1() -> Outcome {
    let spaces = grid_spaces();
    let failures: Vec<String> = spaces
        .par_iter()
        .flat_map_iter(|l| {
            let counter = InvariantCounter::new(l, GRID);
            let mut bad = Vec::new();
            for p in 0..=GRID {
                for q in 0..=GRID {
                    let b = Bidegree::new(p, q);
                    let brute = dim_invariant_bruteforce(l, b, ORACLE_BUDGET).unwrap();
                    let dp = counter.dim(b);
                    if brute != dp {
                        bad.push(format!("{l} ({p},{q}): brute {brute} dp {dp}"));
                    }
                    if l.n() == 2 {
                        let rec = dim_invariant_recurrence(l, b).unwrap();
                        if rec != brute {
                            bad.push(format!("{l} ({p},{q}): brute {brute} recurrence {rec}"));
                        }
                    }
                }
            }
            bad
        })
        .collect();
    let cells = spaces.len() as u64 * (GRID + 1) * (GRID + 1);
    match failures.first() {
        None => Ok(format!("{} spaces, {cells} bidegrees", spaces.len())),
        Some(f) => Err(format!("{} mismatches, first {f}", failures.len())),
    }
}

fn criterion_2() -> Outcome {
    let spaces = grid_spaces();
    let failures: Vec<String> = spaces
        .par_iter()
        .flat_map_iter(|l| {
            let k = l.k();
            let counter = InvariantCounter::new(l, GRID + k);
            let brute =
                |p, q| dim_invariant_bruteforce(l, Bidegree::new(p, q), ORACLE_BUDGET).unwrap();
            let mut bad = Vec::new();
            for p in 0..=GRID {
                for q in 0..=GRID {
                    let (b, s) = (Bidegree::new(p, q), Bidegree::new(q, p));
                    if counter.dim(b) != counter.dim(s) || brute(p, q) != brute(q, p) {
                        bad.push(format!("{l} symmetry at ({p},{q})"));
                    }
                    if l.n() != 2 {
                        continue;
                    }
                    if dim_invariant_recurrence(l, b).unwrap()
                        != dim_invariant_recurrence(l, s).unwrap()
                    {
                        bad.push(format!("{l} recurrence symmetry at ({p},{q})"));
                    }
                    let d = gcd_invariant(l).unwrap() as i64;
                    let diff = p as i64 - q as i64;
                    let here = counter.dim(b);
                    if diff % d != 0 {
                        if here != BigUint::ZERO || brute(p, q) != BigUint::ZERO {
                            bad.push(format!("{l} nonvanishing at ({p},{q}) with d = {d}"));
                        }
                        continue;
                    }
                    let shifted = &here + BigUint::from(d as u64);
                    if counter.dim(Bidegree::new(p + k, q)) != shifted
                        || counter.dim(Bidegree::new(p, q + k)) != shifted
                    {
                        bad.push(format!("{l} shift law at ({p},{q})"));
                    }
                }
            }
            bad
        })
        .collect();
    match failures.first() {
        None => Ok(format!("{} spaces, p, q <= {GRID}", spaces.len())),
        Some(f) => Err(format!("{} violations, first {f}", failures.len())),
    }
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    for (k, w) in [(2, [1, 1]), (3, [1, 1]), (3, [1, 2]), (5, [1, 2])] {
        let l = lens(k, &w);
        let series = weyl_ratio_series(&l, 2000, 200).map_err(|e| e.to_string())?;
        let target = 1.0 / k as f64;
        let early = (series[0].ratio_f64 - target).abs();
        let late = (series.last().unwrap().ratio_f64 - target).abs();
        details.push(format!("{l}: {early:.2e} -> {late:.2e}"));
        if late >= 0.02 || late >= early {
            return Err(format!("{l}: error {early:.3e} at 200, {late:.3e} at 2000"));
        }
    }
    Ok(details.join("; "))
}

fn criterion_4() -> Outcome {
    let u2 = universal_constant(2, &QuadratureConfig::default()).map_err(|e| e.to_string())?;
    if (u2 - 1.0 / 48.0).abs() >= 1e-9 {
        return Err(format!("u_2 = {u2}"));
    }
    let sphere = LensSpace::sphere(2).unwrap();
    let lambda = 4000u64;
    let table = build_spectrum(&sphere, lambda).map_err(|e| e.to_string())?;
    let empirical =
        table.counting(lambda).to_string().parse::<f64>().unwrap() / (lambda as f64).powi(2);
    let predicted = 2.0 * PI * PI / 48.0;
    let rel = (empirical / predicted - 1.0).abs();
    if rel >= 0.10 {
        return Err(format!("N/lambda^2 = {empirical}, predicted {predicted}"));
    }
    Ok(format!(
        "u_2 error {:.1e}; N/lambda^2 = {empirical:.6} vs {predicted:.6}",
        (u2 - 1.0 / 48.0).abs()
    ))
}

fn criterion_5() -> Outcome {
    let sweep = sweep_bounds(30, 6, &[3, 4, 5]).map_err(|e| e.to_string())?;
    if sweep.violations.is_empty() {
        Ok(format!("{} exact comparisons", sweep.checked))
    } else {
        Err(format!(
            "{} violations, first {:?}",
            sweep.violations.len(),
            sweep.violations[0]
        ))
    }
}

/// One compared pair from the equivalence sweep.
struct PairResult {
    left: LensSpace,
    right: LensSpace,
    witness: bool,
    dims: bool,
    spectra: bool,
}

fn equivalence_sweep() -> Vec<PairResult> {
    let mut out = Vec::new();
    for k in [3u64, 5, 7, 11] {
        let spaces: Vec<LensSpace> = all_tuples(k, 2).iter().map(|w| lens(k, w)).collect();
        let tables: Vec<SpectrumTable> = spaces
            .par_iter()
            .map(|l| build_spectrum(l, SWEEP_LAMBDA).unwrap())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..spaces.len())
            .flat_map(|i| (0..spaces.len()).map(move |j| (i, j)))
            .collect();
        out.par_extend(pairs.par_iter().map(|&(i, j)| {
            let (a, b) = (&spaces[i], &spaces[j]);
            PairResult {
                left: a.clone(),
                right: b.clone(),
                witness: condition4_witness(a, b).unwrap().is_some(),
                dims: dims_equal(a, b, GRID, GRID).unwrap(),
                spectra: tables[i].same_multiplicities(&tables[j]),
            }
        }));
    }
    out
}

fn criterion_6(sweep: &[PairResult]) -> Outcome {
    let bad: Vec<&PairResult> = sweep
        .iter()
        .filter(|r| r.witness != r.dims || r.dims != r.spectra)
        .collect();
    let isometric = sweep.iter().filter(|r| r.witness).count();
    match bad.first() {
        None => Ok(format!(
            "{} ordered pairs, {isometric} isometric",
            sweep.len()
        )),
        Some(r) => Err(format!(
            "{} disagreements, first {} vs {}: witness {} dims {} spectra {}",
            bad.len(),
            r.left,
            r.right,
            r.witness,
            r.dims,
            r.spectra
        )),
    }
}

fn criterion_7() -> Outcome {
    let mut details = Vec::new();
    for (k, lambda_max) in [(3u64, 200u64), (5, 600), (7, 1200)] {
        let lambdas: Vec<u64> = (2..=lambda_max).step_by(2).collect();
        for &lambda in &lambdas {
            let c = c_matrix(k, lambda).map_err(|e| e.to_string())?;
            if !is_symmetric(&t_inverse(&c.entries)) {
                return Err(format!("T^-1 C^{lambda} not symmetric for k = {k}"));
            }
        }
        let rank = span_dimension(k, &lambdas).map_err(|e| e.to_string())?;
        if rank != symmetric_dimension(k) {
            return Err(format!(
                "k = {k}: rank {rank}, expected {}",
                symmetric_dimension(k)
            ));
        }
        details.push(format!("k={k}: {rank}"));
    }
    Ok(details.join(", "))
}

fn unit_matrix(k: u64, cells: &[(u64, u64)]) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0; k as usize]; k as usize];
    for &(i, j) in cells {
        m[i as usize][j as usize] += 1;
    }
    m
}

fn criterion_8() -> Outcome {
    for k in [3u64, 5, 7] {
        let small = c_matrix(k, 2 * k).map_err(|e| e.to_string())?;
        if small.entries != unit_matrix(k, &[(0, 0), (k - 1, 1)]) {
            return Err(format!("C^{} for k = {k}: {:?}", 2 * k, small.entries));
        }
        let large = c_matrix(k, 2 * k * k).map_err(|e| e.to_string())?;
        if large.entries != unit_matrix(k, &[(0, 0), (k - 1, 0), (k - 1, 1)]) {
            return Err(format!("C^{} for k = {k}: {:?}", 2 * k * k, large.entries));
        }
    }
    Ok("k = 3, 5, 7".into())
}

fn criterion_9() -> Outcome {
    let points = sample_points(20, 0.5, 20_240_917);
    let mut spaces: Vec<LensSpace> = (1..=7u64)
        .flat_map(|k| all_tuples(k, 2).into_iter().map(move |w| lens(k, &w)))
        .collect();
    spaces.push(lens(3, &[1, 1, 2]));
    let worst = spaces
        .par_iter()
        .map(|l| {
            points
                .iter()
                .map(|&pt| {
                    let closed = genfunc_closed(l, pt).unwrap();
                    let series = genfunc_series(l, pt, 60, 60).unwrap();
                    ((closed - series).norm(), l.clone())
                })
                .fold((0.0f64, l.clone()), |a, b| if b.0 > a.0 { b } else { a })
        })
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a })
        .unwrap();
    if worst.0 >= 1e-9 {
        return Err(format!("deviation {:.3e} on {}", worst.0, worst.1));
    }
    let mut ranks = Vec::new();
    for k in [2u64, 3, 5] {
        let expected = symmetric_dimension(k);
        let rank = independence_probe(k, &sample_points(2 * expected, 0.5, k))
            .map_err(|e| e.to_string())?;
        if rank != expected {
            return Err(format!(
                "independence rank {rank} for k = {k}, expected {expected}"
            ));
        }
        ranks.push(format!("k={k}: {rank}"));
    }
    Ok(format!(
        "{} spaces x 20 points, max deviation {:.1e}; ranks {}",
        spaces.len(),
        worst.0,
        ranks.join(", ")
    ))
}

fn criterion_10(sweep: &[PairResult]) -> Outcome {
    let mut equal_pairs = 0;
    for r in sweep.iter().filter(|r| r.spectra) {
        equal_pairs += 1;
        if gcd_invariant(&r.left).unwrap() != gcd_invariant(&r.right).unwrap() {
            return Err(format!(
                "{} and {} share a spectrum but not d",
                r.left, r.right
            ));
        }
    }
    let (a, b) = (lens(5, &[1, 1]), lens(5, &[1, 2]));
    let (da, db) = (gcd_invariant(&a).unwrap(), gcd_invariant(&b).unwrap());
    let distinct = (2..=SWEEP_LAMBDA as i64)
        .step_by(2)
        .map(|lambda| {
            (
                lambda,
                multiplicity(&a, lambda).unwrap(),
                multiplicity(&b, lambda).unwrap(),
            )
        })
        .find(|(_, x, y)| x != y);
    match distinct {
        Some((lambda, x, y)) if da != db => Ok(format!(
            "{equal_pairs} isospectral pairs share d; {a} (d={da}) vs {b} (d={db}) differ at lambda={lambda}: {x} vs {y}"
        )),
        _ => Err(format!("no differing multiplicity found for {a} vs {b}")),
    }
}

fn main() {
    let limits: BTreeMap<u32, Duration> = [(1, 300), (3, 120), (5, 60), (6, 600)]
        .into_iter()
        .map(|(c, s)| (c, Duration::from_secs(s)))
        .collect();
    let mut failed = 0;
    let mut report = |id: u32, name: &str, start: Instant, outcome: Outcome| {
        let elapsed = start.elapsed();
        let outcome = match (outcome, limits.get(&id)) {
            (Ok(_), Some(limit)) if elapsed > *limit => {
                Err(format!("took {elapsed:.1?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("[{tag}] criterion {id:>2} {name}: {detail} ({elapsed:.1?})");
    };

    let t = Instant::now();
    report(1, "oracle equivalence", t, criterion_1());
    let t = Instant::now();
    report(2, "invariant dimension lemmas", t, criterion_2());
    let t = Instant::now();
    report(3, "Weyl ratio", t, criterion_3());
    let t = Instant::now();
    report(4, "universal constant", t, criterion_4());
    let t = Instant::now();
    report(5, "counting bounds", t, criterion_5());
    let t = Instant::now();
    let sweep = equivalence_sweep();
    report(6, "isometry equivalence sweep", t, criterion_6(&sweep));
    let t = Instant::now();
    report(7, "span of C matrices", t, criterion_7());
    let t = Instant::now();
    report(8, "C matrix anchors", t, criterion_8());
    let t = Instant::now();
    report(9, "generating function", t, criterion_9());
    let t = Instant::now();
    report(10, "d invariant", t, criterion_10(&sweep));

    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
