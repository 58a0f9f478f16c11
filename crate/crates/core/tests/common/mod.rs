//! Independent oracles. Nothing here goes through representing trees.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ultracenter::explore::random::random_space;
use ultracenter::{DistanceValue, UltrametricSpace};

pub fn dv(v: u64) -> DistanceValue {
    DistanceValue::from(v)
}

pub fn seeded_space(points: usize, seed: u64) -> UltrametricSpace {
    random_space(&mut ChaCha8Rng::seed_from_u64(seed), points)
}

pub fn spaces(max_points: usize) -> impl Strategy<Value = UltrametricSpace> {
    (1..=max_points, any::<u64>()).prop_map(|(n, seed)| seeded_space(n, seed))
}

pub fn space_from(points: &[&str], rows: &[&[u64]]) -> UltrametricSpace {
    UltrametricSpace::new(
        points.iter().map(|p| p.to_string()).collect(),
        rows.iter()
            .map(|r| r.iter().map(|&v| dv(v)).collect())
            .collect(),
    )
    .unwrap()
}

pub fn x4() -> UltrametricSpace {
    space_from(
        &["a", "b", "c", "d"],
        &[&[0, 3, 1, 3], &[3, 0, 3, 2], &[1, 3, 0, 3], &[3, 2, 3, 0]],
    )
}

pub fn y4() -> UltrametricSpace {
    space_from(
        &["a", "b", "c", "d"],
        &[&[0, 3, 2, 3], &[3, 0, 3, 2], &[2, 3, 0, 3], &[3, 2, 3, 0]],
    )
}

pub fn all_distances(space: &UltrametricSpace) -> BTreeSet<DistanceValue> {
    let n = space.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| space.distance(i, j))
        .collect()
}

/// `t` is in the center when every point has a partner at distance `t`.
pub fn center_by_definition(space: &UltrametricSpace) -> BTreeSet<DistanceValue> {
    let n = space.len();
    all_distances(space)
        .into_iter()
        .filter(|&t| (0..n).all(|p| (0..n).any(|q| space.distance(p, q) == t)))
        .collect()
}

/// Tries every bijection. With `weak`, distances may be transformed by any
/// strictly increasing map; otherwise they must be equal.
pub fn similar_by_bijection(x: &UltrametricSpace, y: &UltrametricSpace, weak: bool) -> bool {
    let n = x.len();
    if y.len() != n {
        return false;
    }
    (0..n).permutations(n).any(|phi| {
        let mut f: BTreeMap<DistanceValue, DistanceValue> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let (dy, dx) = (y.distance(phi[i], phi[j]), x.distance(i, j));
                if !weak && dx != dy {
                    return false;
                }
                if *f.entry(dy).or_insert(dx) != dx {
                    return false;
                }
            }
        }
        f.values().tuple_windows().all(|(a, b)| a < b)
    })
}

pub fn is_ultrametric(m: &[Vec<u64>]) -> bool {
    let n = m.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            m[i][j] == m[j][i]
                && ((i == j) == (m[i][j] == 0))
                && (0..n).all(|k| m[i][j] <= m[i][k].max(m[k][j]))
        })
    })
}

/// Every ultrametric matrix on `n` points with off-diagonal entries drawn from
/// `1..=alphabet`.
pub fn ultrametric_matrices(n: usize, alphabet: u64) -> Vec<Vec<Vec<u64>>> {
    let pairs: Vec<[usize; 2]> = (0..n).array_combinations().collect();
    let mut out = Vec::new();
    let mut values = vec![1u64; pairs.len()];
    loop {
        let mut m = vec![vec![0u64; n]; n];
        for (&[i, j], &v) in pairs.iter().zip(&values) {
            m[i][j] = v;
            m[j][i] = v;
        }
        if is_ultrametric(&m) {
            out.push(m);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == values.len() {
                return out;
            }
            if values[k] < alphabet {
                values[k] += 1;
                break;
            }
            values[k] = 1;
            k += 1;
        }
    }
}

/// Replaces each value by its rank among the distinct values, then takes the
/// smallest upper triangle over all point orders. Two matrices get the same
/// key exactly when some bijection and increasing map carry one to the other.
pub fn matrix_class_key(m: &[Vec<u64>]) -> Vec<u64> {
    let n = m.len();
    let distinct: BTreeSet<u64> = m.iter().flatten().copied().collect();
    let rank: BTreeMap<u64, u64> = distinct.into_iter().zip(0..).collect();
    (0..n)
        .permutations(n)
        .map(|p| {
            (0..n)
                .array_combinations()
                .map(|[i, j]| rank[&m[p[i]][p[j]]])
                .collect::<Vec<u64>>()
        })
        .min()
        .unwrap_or_default()
}

pub fn integer_matrix(space: &UltrametricSpace) -> Vec<Vec<u64>> {
    let n = space.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = space.distance(i, j);
                    assert_eq!(d.denominator(), 1, "integer distances expected");
                    d.numerator()
                })
                .collect()
        })
        .collect()
}

pub fn matrix_space(m: &[Vec<u64>]) -> UltrametricSpace {
    let names = (1..=m.len()).map(|i| format!("p{i}")).collect();
    UltrametricSpace::new(
        names,
        m.iter()
            .map(|r| r.iter().map(|&v| dv(v)).collect())
            .collect(),
    )
    .unwrap()
}
