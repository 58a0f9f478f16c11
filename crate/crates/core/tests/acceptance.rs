//! Acceptance gate: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultracenter::explore::random::{random_center_set, random_space};
use ultracenter::explore::{
    check_conjecture_1, check_conjecture_2, enumerate_classes, max_center_table, ExploreConfig,
};
use ultracenter::{
    add_point, binary_word_space, build_representing_tree, canonical_form, center_bruteforce,
    center_from_tree, center_recursive, diametrical_partition, double,
    is_complete_multipartite_certificate, parse_canonical, realize_center_set, realize_space,
    CanonicalMode, DistanceValue, PointBudget, UltrametricSpace,
};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const X4_JSON: &str = r#"{
  "points": ["a", "b", "c", "d"],
  "matrix": [["0","3","1","3"],["3","0","3","2"],["1","3","0","3"],["3","2","3","0"]]
}"#;

const Y4_JSON: &str = r#"{
  "points": ["a", "b", "c", "d"],
  "matrix": [["0","3","2","3"],["3","0","3","2"],["2","3","0","3"],["3","2","3","0"]]
}"#;

fn x4_and_y4() -> Outcome {
    let cases = [
        (X4_JSON, "{0, 3}", "3(1(0,0),2(0,0))"),
        (Y4_JSON, "{0, 2, 3}", "3(2(0,0),2(0,0))"),
    ];
    for (text, center, tree) in cases {
        let space = UltrametricSpace::from_json(text).map_err(fail)?;
        let c = center_bruteforce(&space);
        ensure!(c.to_string() == center, "center {c}, expected {center}");
        let built = build_representing_tree(&space).map_err(fail)?;
        let drawn = parse_canonical(tree).map_err(fail)?;
        let got = canonical_form(&built, CanonicalMode::Isometry).map_err(fail)?;
        let want = canonical_form(&drawn, CanonicalMode::Isometry).map_err(fail)?;
        ensure!(got == want, "tree {got}, expected {want}");
    }
    Ok("C(X4) = {0, 3}, C(Y4) = {0, 2, 3}, trees match".into())
}

fn random_spaces(count: usize, max_points: usize, seed: u64) -> Vec<UltrametricSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_points);
            random_space(&mut rng, n)
        })
        .collect()
}

fn triple_agreement() -> Outcome {
    let mut largest = 0;
    for space in random_spaces(1000, 64, 0xA2) {
        let brute = center_bruteforce(&space);
        let recursive = center_recursive(&space).map_err(fail)?;
        let tree = if space.len() == 1 {
            brute.clone()
        } else {
            center_from_tree(build_representing_tree(&space).map_err(fail)?.labeled())
                .map_err(fail)?
        };
        ensure!(
            brute == recursive && brute == tree,
            "{brute} / {recursive} / {tree} on {space:?}"
        );
        largest = largest.max(brute.len());
    }
    Ok(format!("1000 spaces, largest center {largest}"))
}

fn bound_reproduction() -> Outcome {
    let table = max_center_table(8, &ExploreConfig::default()).map_err(fail)?;
    let column: Vec<usize> = table.rows.iter().map(|r| r.max_center_size).collect();
    ensure!(column == [1, 2, 2, 3, 3, 3, 3, 4], "M column {column:?}");
    for row in &table.rows {
        ensure!(
            row.max_center_size == 1 + row.n.ilog2() as usize,
            "row {row:?}"
        );
    }
    for l in 1..=3u32 {
        let m = |n: usize| table.max_center_size(n).unwrap_or(0);
        ensure!(m(1 << l) == l as usize + 1, "M(2^{l}) = {}", m(1 << l));
        ensure!(
            m((1 << l) - 1) == l as usize,
            "M(2^{l} - 1) = {}",
            m((1 << l) - 1)
        );
    }
    Ok(format!("M(1..8) = {column:?}"))
}

fn extremality() -> Outcome {
    for n in 1..=10u32 {
        let space = binary_word_space(n, PointBudget::DEFAULT).map_err(fail)?;
        let c = center_bruteforce(&space);
        ensure!(
            c.len() == n as usize + 1,
            "binary words n = {n}: |C| = {}",
            c.len()
        );
    }
    let mut space =
        UltrametricSpace::new(vec!["s".into()], vec![vec![DistanceValue::ZERO]]).map_err(fail)?;
    for step in 1..=10u64 {
        let before = center_bruteforce(&space).len();
        space = double(&space, DistanceValue::from(step)).map_err(fail)?;
        let after = center_bruteforce(&space).len();
        ensure!(
            after == before + 1,
            "double step {step}: {before} -> {after}"
        );
    }
    Ok("binary words n = 1..10 and 10 doublings".into())
}

fn center_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA5);
    for _ in 0..100 {
        let n = rng.gen_range(2..=40);
        let mut space = random_space(&mut rng, n);
        let center = center_bruteforce(&space);
        for step in 0..5 {
            let next = add_point(&space).map_err(fail)?;
            ensure!(
                next.len() == space.len() + 1,
                "size {} -> {}",
                space.len(),
                next.len()
            );
            let c = center_bruteforce(&next);
            ensure!(c == center, "step {step}: {center} -> {c}");
            space = next;
        }
    }
    Ok("100 spaces x 5 additions".into())
}

fn center_set_witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA6);
    for _ in 0..50 {
        let set = random_center_set(&mut rng, 5);
        let space = realize_center_set(&set, PointBudget::DEFAULT).map_err(fail)?;
        let expected: BTreeSet<DistanceValue> = set.iter().copied().collect();
        ensure!(all_distances(&space) == expected, "D differs for {set}");
        ensure!(
            center_by_definition(&space) == expected,
            "C differs for {set}"
        );
        ensure!(
            center_bruteforce(&space) == set,
            "brute-force C differs for {set}"
        );
    }
    Ok("50 sets".into())
}

fn structure_invariants() -> Outcome {
    let mut all = random_spaces(500, 64, 0xA7);
    for n in 1..=8 {
        all.push(binary_word_space(n, PointBudget::DEFAULT).map_err(fail)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xA8);
    for _ in 0..20 {
        let set = random_center_set(&mut rng, 5);
        let space = realize_center_set(&set, PointBudget::DEFAULT).map_err(fail)?;
        all.push(add_point(&space).unwrap_or(space));
    }
    for space in &all {
        let n = space.len();
        let c = center_bruteforce(space);
        let d = space.distance_set(None).map_err(fail)?;
        ensure!(
            c.contains(&DistanceValue::ZERO) && c.contains(&space.full_diameter()),
            "{{0, diam}} not in {c}"
        );
        ensure!(d.len() <= n, "|D| = {} > {n}", d.len());
        ensure!(
            n >= 1 << (c.len() - 1),
            "n = {n} < 2^(|C| - 1), |C| = {}",
            c.len()
        );
        if n > 1 {
            let partition = diametrical_partition(space).map_err(fail)?;
            ensure!(
                is_complete_multipartite_certificate(space, &partition).map_err(fail)?,
                "partition certificate fails on {space:?}"
            );
        }
    }
    Ok(format!("{} spaces", all.len()))
}

fn enumeration_completeness() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=5usize {
        let matrices = if n == 1 {
            vec![vec![vec![0]]]
        } else {
            ultrametric_matrices(n, n as u64 - 1)
        };
        let oracle: BTreeSet<Vec<u64>> = matrices.iter().map(|m| matrix_class_key(m)).collect();
        let classes = enumerate_classes(n, &ExploreConfig::default()).map_err(fail)?;
        let ours: BTreeSet<Vec<u64>> = classes
            .iter()
            .map(|c| {
                realize_space(&c.canonical_tree, None)
                    .map(|s| matrix_class_key(&integer_matrix(&s)))
            })
            .collect::<Result<_, _>>()
            .map_err(fail)?;
        ensure!(
            classes.len() == oracle.len(),
            "n = {n}: {} classes, oracle {}",
            classes.len(),
            oracle.len()
        );
        ensure!(ours == oracle, "n = {n}: class keys differ from the oracle");
        counts.push(classes.len());
    }
    Ok(format!("class counts {counts:?}"))
}

fn conjecture_smoke() -> Outcome {
    let config = ExploreConfig::default();
    let one = check_conjecture_1(2, &config).map_err(fail)?;
    ensure!(
        one.reverify().map_err(fail)?,
        "conjecture 1 verdict does not reverify"
    );
    let two = check_conjecture_2(2, 4, &config).map_err(fail)?;
    ensure!(
        two.reverify().map_err(fail)?,
        "conjecture 2 verdict does not reverify"
    );
    let name = |r: &ultracenter::explore::ConjectureReport| {
        serde_json::to_value(&r.verdict)
            .map(|v| v["verdict"].to_string())
            .unwrap_or_default()
    };
    Ok(format!(
        "conjecture 1: {}, conjecture 2: {} (exhaustive {})",
        name(&one),
        name(&two),
        two.exhaustive
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 four-point spaces X4 and Y4", 1, x4_and_y4),
        ("2 triple agreement", 30, triple_agreement),
        ("3 bound reproduction", 60, bound_reproduction),
        ("4 extremality", 60, extremality),
        ("5 center preservation", 60, center_preservation),
        ("6 center set witnesses", 60, center_set_witnesses),
        ("7 structure invariants", 60, structure_invariants),
        ("8 enumeration completeness", 60, enumeration_completeness),
        ("9 conjecture harnesses", 60, conjecture_smoke),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => {
                Err(format!("took {elapsed:.2?}, limit {limit}s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  criterion {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
