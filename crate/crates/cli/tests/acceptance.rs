//! Acceptance gate for the whole workspace: nine end-to-end checks, one test
//! per criterion.  Each prints a single `criterion N: pass/fail` line with its
//! runtime against a pinned wall-clock budget, so a plain
//! `cargo test --test acceptance -- --nocapture` reads as a checklist.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use antisym::{
    coefficient_window, decomposition_pattern, exhaustive_ramsey, f_code, max_decompositions,
    recover_pair, scan_all_unions, verify_antisymmetric, verify_thm3, CodingContext,
    DifferenceColoring, IntervalSystem, LevelColoring, Rational, VectorCode, VectorQ,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ============================================================================
// Verdict plumbing
// ============================================================================

/// Prints exactly one verdict line per criterion, pass or fail, even when an
/// assertion unwinds mid-check.
struct Criterion {
    index: u32,
    budget: Option<Duration>,
    started: Instant,
    done: bool,
}

impl Criterion {
    fn start(index: u32, budget_secs: Option<u64>) -> Self {
        Criterion {
            index,
            budget: budget_secs.map(Duration::from_secs),
            started: Instant::now(),
            done: false,
        }
    }

    fn finish(mut self) {
        self.done = true;
        let elapsed = self.started.elapsed();
        match self.budget {
            Some(budget) if elapsed > budget => {
                println!(
                    "criterion {}: fail (over budget: {elapsed:.2?} > {budget:?})",
                    self.index
                );
                panic!("criterion {} exceeded its {budget:?} budget", self.index);
            }
            Some(budget) => {
                println!(
                    "criterion {}: pass ({elapsed:.2?} within {budget:?})",
                    self.index
                );
            }
            None => println!("criterion {}: pass ({elapsed:.2?})", self.index),
        }
    }
}

impl Drop for Criterion {
    fn drop(&mut self) {
        if !self.done {
            println!(
                "criterion {}: fail (after {:.2?})",
                self.index,
                self.started.elapsed()
            );
        }
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}

fn worker_count() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

// ============================================================================
// 1 — interval systems color every point set antisymmetrically
// ============================================================================

#[test]
fn criterion_1_interval_systems() {
    let c = Criterion::start(1, Some(10));
    let check = |points: &[Rational]| {
        let system = IntervalSystem::build(points).expect("system builds");
        system.check_invariants().expect("all five invariants hold");
        let coloring = system.color().expect("the orbit graph is bipartite");
        let violations = verify_antisymmetric(&coloring);
        assert!(
            violations.is_empty(),
            "mirror collision on {points:?}: {violations:?}"
        );
    };
    check(&[q(0, 1), q(-1, 1), q(1, 1)]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let size = rng.random_range(1usize..=200);
        let mut seen = HashSet::new();
        let mut points = Vec::with_capacity(size);
        while points.len() < size {
            let den = rng.random_range(1i64..=40);
            let num = rng.random_range(-(10 * den - 1)..=(10 * den - 1));
            let point = q(num, den);
            if seen.insert(point.clone()) {
                points.push(point);
            }
        }
        check(&points);
    }
    c.finish();
}

// ============================================================================
// 2 — the size-12 pair model checks out exhaustively
// ============================================================================

#[test]
fn criterion_2_pair_model_exhaustive() {
    let c = Criterion::start(2, Some(60));
    let ctx = CodingContext::build(12).expect("model builds");
    ctx.check_conditions().expect("coloring conditions hold");
    ctx.check_claim1(4).expect("equal fingerprints overlap initially");
    ctx.check_claim2().expect("no forbidden color swap");
    let report = scan_all_unions(&ctx, worker_count()).expect("every union splits at most once");
    assert_eq!(report.unions_scanned, 1 << 12);
    c.finish();
}

// ============================================================================
// 3 — coded-pair sums split at most one way, and recovery finds the split
// ============================================================================

/// Checks one window: no sum is realized by two code-equal pairs, and the
/// constructive recovery agrees with exhaustive search over the window on
/// every pairwise sum.
fn check_window(window: &[VectorQ], ctx: &CodingContext) {
    let report = verify_thm3(window, ctx).expect("window scans");
    assert!(report.max <= 1, "a sum split two ways: {report:?}");

    let codes: Vec<VectorCode> = window
        .iter()
        .map(|v| f_code(v, ctx).expect("window vectors encode"))
        .collect();
    let mut by_sum: BTreeMap<VectorQ, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..window.len() {
        for j in (i + 1)..window.len() {
            by_sum
                .entry(window[i].add(&window[j]))
                .or_default()
                .push((i, j));
        }
    }
    for (sum, pairs) in &by_sum {
        let matching: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(i, j)| codes[i] == codes[j])
            .collect();
        let recovered = recover_pair(sum, ctx).expect("recovery runs");
        match matching.as_slice() {
            [] => {
                // Recovery verifies its own output, so anything it returns is
                // a genuine code-equal pair; with no window pair matching, it
                // can only live outside the window.
                if let Some((x, y)) = &recovered {
                    assert!(
                        !(window.contains(x) && window.contains(y)),
                        "recovery found a window pair the scan missed for {sum:?}"
                    );
                }
            }
            [(i, j)] => {
                let (x, y) = recovered.expect("recovery finds the coded pair");
                let (a, b) = (&window[*i], &window[*j]);
                assert!(
                    (x == *a && y == *b) || (x == *b && y == *a),
                    "recovery returned a different pair for {sum:?}"
                );
            }
            more => panic!("sum {sum:?} splits {} ways", more.len()),
        }
    }
}

#[test]
fn criterion_3_sum_collision_windows() {
    let c = Criterion::start(3, Some(30));
    let ctx4 = CodingContext::build(4).expect("context builds");
    let window = coefficient_window(4, &[q(1, 1), q(1, 2)]).expect("window enumerates");
    assert_eq!(window.len(), 3usize.pow(4) - 1);
    check_window(&window, &ctx4);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let dims = rng.random_range(2usize..=4);
        let count = rng.random_range(1usize..=2);
        let mut coeffs: Vec<Rational> = Vec::with_capacity(count);
        while coeffs.len() < count {
            let num = rng.random_range(-3i64..=3);
            if num == 0 {
                continue;
            }
            let value = q(num, rng.random_range(1i64..=3));
            if !coeffs.contains(&value) {
                coeffs.push(value);
            }
        }
        let window = coefficient_window(dims, &coeffs).expect("window enumerates");
        let ctx = CodingContext::build(dims).expect("context builds");
        check_window(&window, &ctx);
    }
    c.finish();
}

// ============================================================================
// 4 — the factorial-level coloring and its collision windows
// ============================================================================

#[test]
fn criterion_4_level_coloring() {
    let c = Criterion::start(4, Some(60));
    let coloring = LevelColoring::new();
    assert_eq!(coloring.members(1).expect("level 1"), vec![q(1, 1)]);
    assert_eq!(coloring.members(2).expect("level 2").len(), 7);
    for n in 1..=5 {
        let graph = coloring.edges_in_slice(n).expect("slice graph builds");
        for &(i, j) in &graph.edges {
            let li = coloring.level(&graph.vertices[i]).expect("vertex level");
            let lj = coloring.level(&graph.vertices[j]).expect("vertex level");
            assert_eq!(li, n + 1, "edge endpoint off its slice");
            assert_eq!(lj, n + 1, "edge endpoint off its slice");
        }
        graph
            .bipartition_bits()
            .expect("no odd cycle in the slice graph");
    }
    let max_h = q(8, 1);
    for x in coloring.members(4).expect("level 4") {
        coloring
            .s_x_window(&x, &max_h, 720)
            .expect("every equal-color radius certifies");
    }
    c.finish();
}

// ============================================================================
// 5 — the doubling pattern yields 2^n - 1 decompositions of one union
// ============================================================================

#[test]
fn criterion_5_doubling_pattern() {
    let c = Criterion::start(5, Some(1));
    for n in 1..=10 {
        let pattern = decomposition_pattern(n).expect("pattern builds");
        assert_eq!(pattern.pairs().len() as u64, (1u64 << n) - 1);
        let all: BTreeSet<(u32, u8)> = pattern
            .points()
            .iter()
            .map(|s| (s.index, s.branch))
            .collect();
        let mut seen = HashSet::new();
        for (left, right) in pattern.pairs() {
            let a: BTreeSet<(u32, u8)> = left.iter().map(|s| (s.index, s.branch)).collect();
            let b: BTreeSet<(u32, u8)> = right.iter().map(|s| (s.index, s.branch)).collect();
            // Sides share their doubled prefix by design; they must still be
            // two different sets.
            assert_ne!(a, b, "a decomposition needs two distinct sides");
            let union: BTreeSet<(u32, u8)> = a.union(&b).copied().collect();
            assert_eq!(union, all, "every decomposition covers the same union");
            let key = if a <= b { (a, b) } else { (b, a) };
            assert!(seen.insert(key), "decompositions repeat");
        }
    }
    c.finish();
}

// ============================================================================
// 6 — the vector form of the pattern sums exactly
// ============================================================================

#[test]
fn criterion_6_vector_pattern() {
    let c = Criterion::start(6, Some(1));
    for n in 1..=8 {
        let vectors = decomposition_pattern(n)
            .expect("pattern builds")
            .instantiate_vectors()
            .expect("vector instantiation");
        assert_eq!(vectors.pairs().len() as u64, (1u64 << n) - 1);
        let mut seen = HashSet::new();
        for (a, b) in vectors.pairs() {
            assert_eq!(a.add(b), *vectors.total(), "sides must sum to the total");
            let key = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            assert!(seen.insert(key), "vector decompositions repeat");
        }
    }
    c.finish();
}

// ============================================================================
// 7 — monochromatic chains: forced at six points, avoidable at five
// ============================================================================

#[test]
fn criterion_7_chain_scan() {
    let c = Criterion::start(7, Some(30));
    let six = exhaustive_ramsey(6, 2, 3).expect("scan runs");
    assert_eq!(six.colorings, 1 << 15, "2^15 two-colorings of 15 pairs");
    assert!(six.universal(), "some 6-point coloring dodged every 3-chain");
    assert_eq!(six.without_chain, 0);

    let five = exhaustive_ramsey(5, 2, 3).expect("scan runs");
    assert!(!five.universal(), "five points cannot force a 3-chain");
    let witness = five
        .counterexample
        .as_ref()
        .expect("a chain-free 5-point coloring exists");
    assert!(witness.find_monochromatic_chain(3).is_none());

    let constant = DifferenceColoring::new(6, 1, |_, _| 1).expect("coloring builds");
    let chain = constant
        .find_monochromatic_chain(3)
        .expect("constant colorings hold every chain");
    assert_eq!(
        constant.count_sx_from_chain(&chain).expect("chain counts"),
        2,
        "a 3-chain witnesses two collisions"
    );
    let pair = constant
        .find_monochromatic_chain(2)
        .expect("constant colorings hold every chain");
    assert_eq!(
        constant.count_sx_from_chain(&pair).expect("chain counts"),
        1,
        "a 2-chain witnesses one collision"
    );
    c.finish();
}

// ============================================================================
// 8 — the fingerprint oracle never lets a union decompose twice
// ============================================================================

#[test]
fn criterion_8_decomposition_maximum() {
    let c = Criterion::start(8, Some(60));
    let ctx = CodingContext::build(10).expect("model builds");
    let max = max_decompositions(|s: &[usize]| ctx.type_of(s).expect("sets in range"), 10, 3)
        .expect("search runs");
    assert!(
        max.count <= 1,
        "union {:?} decomposed {} ways",
        max.witness,
        max.count
    );
    c.finish();
}

// ============================================================================
// 9 — every CLI command reports byte-identically across reruns
// ============================================================================

#[test]
fn criterion_9_report_determinism() {
    let c = Criterion::start(9, None);
    let dir = tempfile::tempdir().expect("tempdir");
    let points = dir.path().join("points.txt");
    fs::write(&points, "0\n-1\n1\n").expect("point file writes");
    let points = points.display().to_string();

    let commands: Vec<Vec<&str>> = vec![
        vec!["thm1", "--points", &points],
        vec!["thm1", "--random", "25", "--seed", "9"],
        vec!["thm2", "--size", "8", "--exhaustive"],
        vec!["thm3", "--dims", "3", "--coeffs", "1,1/2"],
        vec!["thm6", "color", "--x", "-3/4"],
        vec!["thm6", "sx", "--x", "0/1", "--max-h", "4", "--max-den", "24"],
        vec!["pattern", "--n", "6", "--vectors"],
        vec!["ramsey", "--m", "5", "--colors", "2", "--chain", "3", "--exhaustive"],
        vec!["ramsey", "--m", "6", "--colors", "2", "--chain", "3", "--seed", "4"],
    ];
    for args in &commands {
        let first = run_cli(args);
        let second = run_cli(args);
        assert_eq!(first.0, Some(0), "command {args:?} failed: {}", first.2);
        assert_eq!(
            first, second,
            "command {args:?} reported differently across reruns"
        );
    }
    c.finish();
}

fn run_cli(args: &[&str]) -> (Option<i32>, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_antisym"))
        .args(args)
        .env_remove("ANTISYM_THREADS")
        .output()
        .expect("binary runs");
    (
        output.status.code(),
        String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    )
}
