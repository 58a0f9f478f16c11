//! Center of distances `C(X)`: the distances `t` such that every point has a
//! partner at distance exactly `t`.
//!
//! Three interchangeable algorithms implement [`CenterAlgorithm`] and are
//! looked up by name in a [`CenterRegistry`]:
//!
//! - `bruteforce`: intersection of the per-point distance sets `D_p(X)`;
//! - `recursive`: `C(X) = {diam X} ∪ ⋂ C(X_i)` over the diametrical parts;
//! - `tree`: intersection of the label sets along leaf-to-root paths of the
//!   representing tree.

use indexmap::IndexMap;
use serde::Serialize;

use crate::distance::DistanceValue;
use crate::distance_set::DistanceSet;
use crate::error::{Error, Result};
use crate::partition::partition_members;
use crate::space::UltrametricSpace;
use crate::tree::{build_representing_tree, ensure_valid, LabeledRootedTree};

pub trait CenterAlgorithm: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn center(&self, space: &UltrametricSpace) -> Result<DistanceSet>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct BruteForce;

#[derive(Debug, Default, Clone, Copy)]
pub struct Recursive;

#[derive(Debug, Default, Clone, Copy)]
pub struct TreePaths;

impl CenterAlgorithm for BruteForce {
    fn name(&self) -> &'static str {
        "bruteforce"
    }

    fn description(&self) -> &'static str {
        "intersection of the per-point distance sets"
    }

    fn center(&self, space: &UltrametricSpace) -> Result<DistanceSet> {
        Ok(center_bruteforce(space))
    }
}

impl CenterAlgorithm for Recursive {
    fn name(&self) -> &'static str {
        "recursive"
    }

    fn description(&self) -> &'static str {
        "diameter joined with the intersection of the diametrical parts' centers"
    }

    fn center(&self, space: &UltrametricSpace) -> Result<DistanceSet> {
        center_recursive(space)
    }
}

impl CenterAlgorithm for TreePaths {
    fn name(&self) -> &'static str {
        "tree"
    }

    fn description(&self) -> &'static str {
        "intersection of leaf-to-root label sets of the representing tree"
    }

    fn center(&self, space: &UltrametricSpace) -> Result<DistanceSet> {
        if space.len() == 1 {
            return Ok(DistanceSet::singleton(DistanceValue::ZERO));
        }
        center_from_tree(build_representing_tree(space)?.labeled())
    }
}

/// Center algorithms by name, in registration order.
pub struct CenterRegistry {
    algorithms: Vec<Box<dyn CenterAlgorithm>>,
}

impl CenterRegistry {
    pub fn empty() -> Self {
        CenterRegistry {
            algorithms: Vec::new(),
        }
    }

    /// Fails if the name is already taken.
    pub fn register(&mut self, algorithm: Box<dyn CenterAlgorithm>) -> Result<()> {
        if self.get(algorithm.name()).is_some() {
            return Err(Error::InvalidParameter(format!(
                "center algorithm {:?} is already registered",
                algorithm.name()
            )));
        }
        self.algorithms.push(algorithm);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn CenterAlgorithm> {
        self.algorithms
            .iter()
            .find(|a| a.name() == name)
            .map(|a| a.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.algorithms.iter().map(|a| a.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CenterAlgorithm> {
        self.algorithms.iter().map(|a| a.as_ref())
    }

    /// Runs every registered algorithm and fails unless all results agree.
    pub fn run_all(&self, space: &UltrametricSpace) -> Result<Vec<(&'static str, DistanceSet)>> {
        let results = self
            .iter()
            .map(|a| a.center(space).map(|c| (a.name(), c)))
            .collect::<Result<Vec<_>>>()?;
        if let Some((first_name, first)) = results.first() {
            if let Some((name, other)) = results.iter().find(|(_, c)| c != first) {
                return Err(Error::internal(
                    "center algorithms agree",
                    format!("{first_name} gives {first} but {name} gives {other}"),
                ));
            }
        }
        Ok(results)
    }
}

impl Default for CenterRegistry {
    fn default() -> Self {
        let mut registry = CenterRegistry::empty();
        for algorithm in [
            Box::new(BruteForce) as Box<dyn CenterAlgorithm>,
            Box::new(Recursive),
            Box::new(TreePaths),
        ] {
            registry
                .register(algorithm)
                .expect("default names are distinct");
        }
        registry
    }
}

pub fn center_bruteforce(space: &UltrametricSpace) -> DistanceSet {
    let mut center = space.point_distance_set(0);
    for p in 1..space.len() {
        if center.len() == 1 {
            break;
        }
        center = center.intersection(&space.point_distance_set(p));
    }
    center
}

/// Evaluated bottom up over the diametrical partitions with an explicit stack.
pub fn center_recursive(space: &UltrametricSpace) -> Result<DistanceSet> {
    enum Frame {
        Enter(Vec<usize>),
        Combine {
            diameter: DistanceValue,
            parts: usize,
        },
    }
    let mut frames = vec![Frame::Enter((0..space.len()).collect())];
    let mut results: Vec<DistanceSet> = Vec::new();
    while let Some(frame) = frames.pop() {
        match frame {
            Frame::Enter(members) if members.len() == 1 => {
                results.push(DistanceSet::singleton(DistanceValue::ZERO));
            }
            Frame::Enter(members) => {
                let partition = partition_members(space, &members)?;
                frames.push(Frame::Combine {
                    diameter: partition.separation,
                    parts: partition.parts.len(),
                });
                frames.extend(partition.parts.into_iter().map(Frame::Enter));
            }
            Frame::Combine { diameter, parts } => {
                let start = results.len() - parts;
                let mut combined = results.drain(start..).reduce(|a, b| a.intersection(&b));
                let center = combined.get_or_insert_with(DistanceSet::new);
                center.insert(diameter);
                results.push(std::mem::take(center));
            }
        }
    }
    results
        .pop()
        .ok_or_else(|| Error::internal("recursion yields one center", "no result"))
}

/// Intersection over the leaves of the label sets on each leaf-to-root path.
pub fn center_from_tree(tree: &LabeledRootedTree) -> Result<DistanceSet> {
    ensure_valid(tree)?;
    let parents = tree.parents();
    let mut center: Option<DistanceSet> = None;
    for leaf in tree.leaves() {
        let path = tree.path_labels(leaf, &parents);
        center = Some(match center {
            None => path,
            Some(c) => c.intersection(&path),
        });
    }
    center.ok_or_else(|| Error::internal("tree has a leaf", "no leaves"))
}

/// `1 + floor(log2 n)`, the largest possible center size on `n` points.
pub fn center_size_bound(n: usize) -> usize {
    assert!(n >= 1, "bound is defined for nonempty spaces");
    1 + n.ilog2() as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub center: DistanceSet,
    pub distance_set: DistanceSet,
    pub per_point: IndexMap<String, DistanceSet>,
    pub n: usize,
    pub bound: usize,
    pub lower_floor: DistanceSet,
}

/// Center, distance sets and the size bounds, with every bound checked.
pub fn center_report(space: &UltrametricSpace) -> Result<CenterReport> {
    let n = space.len();
    let center = center_bruteforce(space);
    let distance_set = space.distance_set(None)?;
    let per_point = (0..n)
        .map(|p| (space.point_name(p).to_owned(), space.point_distance_set(p)))
        .collect();
    let lower_floor: DistanceSet = [DistanceValue::ZERO, space.full_diameter()]
        .into_iter()
        .collect();
    let report = CenterReport {
        bound: center_size_bound(n),
        center,
        distance_set,
        per_point,
        n,
        lower_floor,
    };
    report.check()?;
    Ok(report)
}

impl CenterReport {
    pub fn check(&self) -> Result<()> {
        let breach = |invariant, detail: String| Err(Error::internal(invariant, detail));
        if !self.center.is_subset(&self.distance_set) {
            return breach(
                "C(X) ⊆ D(X)",
                format!("{} ⊄ {}", self.center, self.distance_set),
            );
        }
        if self.n >= 2 && !self.lower_floor.is_subset(&self.center) {
            return breach(
                "{0, diam X} ⊆ C(X)",
                format!("{} ⊄ {}", self.lower_floor, self.center),
            );
        }
        if self.center.len() > self.bound {
            return breach(
                "|C(X)| ≤ 1 + ⌊log2 n⌋",
                format!(
                    "|C| = {} > {} for n = {}",
                    self.center.len(),
                    self.bound,
                    self.n
                ),
            );
        }
        let m = self.center.len() as u32;
        if m == 0 || (self.n as u128) < (1u128 << (m - 1)) {
            return breach(
                "|X| ≥ 2^(|C(X)| - 1)",
                format!("n = {} with |C| = {}", self.n, self.center.len()),
            );
        }
        if self.distance_set.len() > self.n {
            return breach(
                "|D(X)| ≤ |X|",
                format!("|D| = {} > n = {}", self.distance_set.len(), self.n),
            );
        }
        Ok(())
    }
}
