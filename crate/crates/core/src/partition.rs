//! The diametrical graph of a finite ultrametric space, kept as its list of
//! parts. Two points are adjacent exactly when they realize the diameter, and
//! the graph is complete multipartite, so the parts carry all of it.

use serde::Serialize;

use crate::distance::DistanceValue;
use crate::error::{Error, Result};
use crate::space::UltrametricSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Point indices, each part ascending, parts ordered by smallest member.
    pub parts: Vec<Vec<usize>>,
    /// The diameter of the partitioned set.
    pub separation: DistanceValue,
}

/// `{"separation": "3", "parts": [["a","c"],["b","d"]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedPartition {
    pub separation: DistanceValue,
    pub parts: Vec<Vec<String>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn named(&self, space: &UltrametricSpace) -> NamedPartition {
        NamedPartition {
            separation: self.separation,
            parts: self
                .parts
                .iter()
                .map(|part| {
                    part.iter()
                        .map(|&i| space.point_name(i).to_owned())
                        .collect()
                })
                .collect(),
        }
    }

    /// Edges of the diametrical graph, as index pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (a, left) in self.parts.iter().enumerate() {
            for right in &self.parts[a + 1..] {
                for &u in left {
                    for &v in right {
                        edges.push((u.min(v), u.max(v)));
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// Parts of the diametrical graph of the whole space.
pub fn diametrical_partition(space: &UltrametricSpace) -> Result<Partition> {
    if space.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: space.len(),
        });
    }
    let members: Vec<usize> = (0..space.len()).collect();
    partition_members(space, &members)
}

/// Diametrical partition of the subspace on `members` (at least two points,
/// ascending). Groups points by the relation `d(u, v) < diam`, checking while
/// grouping that the relation really is an equivalence.
pub(crate) fn partition_members(space: &UltrametricSpace, members: &[usize]) -> Result<Partition> {
    debug_assert!(members.len() >= 2);
    let separation = space.diameter_unchecked(members);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &p in members {
        let row = space.row(p);
        let mut home = None;
        for (idx, part) in parts.iter().enumerate() {
            if row[part[0]] < separation {
                if home.is_some() {
                    return Err(Error::internal(
                        "diametrical relation is transitive",
                        format!("point {p} is close to two different parts"),
                    ));
                }
                home = Some(idx);
            }
        }
        match home {
            Some(idx) => {
                if let Some(&q) = parts[idx].iter().find(|&&q| row[q] >= separation) {
                    return Err(Error::internal(
                        "diametrical relation is transitive",
                        format!("points {p} and {q} share a part but realize the diameter"),
                    ));
                }
                parts[idx].push(p);
            }
            None => parts.push(vec![p]),
        }
    }
    if parts.len() < 2 {
        return Err(Error::internal(
            "diametrical graph has at least two parts",
            format!("{} points collapsed into one part", members.len()),
        ));
    }
    Ok(Partition { parts, separation })
}

/// Independent check that `partition` is the part structure of a complete
/// multipartite diametrical graph: cross-part distances equal the diameter,
/// within-part distances are strictly smaller.
pub fn is_complete_multipartite_certificate(
    space: &UltrametricSpace,
    partition: &Partition,
) -> Result<bool> {
    let n = space.len();
    let mut owner = vec![None; n];
    for (idx, part) in partition.parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::PartitionMismatch(format!("part {idx} is empty")));
        }
        for &p in part {
            if p >= n {
                return Err(Error::PartitionMismatch(format!(
                    "point index {p} out of range"
                )));
            }
            if owner[p].replace(idx).is_some() {
                return Err(Error::PartitionMismatch(format!("point {p} appears twice")));
            }
        }
    }
    if let Some(p) = owner.iter().position(Option::is_none) {
        return Err(Error::PartitionMismatch(format!(
            "point {p} is not covered"
        )));
    }
    let diam = space.full_diameter();
    for u in 0..n {
        for v in u + 1..n {
            let d = space.distance(u, v);
            let ok = if owner[u] == owner[v] {
                d < diam
            } else {
                d == diam
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
