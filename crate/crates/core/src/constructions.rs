//! Generators for extremal and center-preserving ultrametric spaces.
//!
//! Each construction kind parses its own parameters and is registered by name
//! in a [`ConstructionRegistry`]; a JSON spec such as
//! `{"kind": "binary_word", "n": 3}` selects one at run time.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::center::center_bruteforce;
use crate::distance::DistanceValue;
use crate::distance_set::DistanceSet;
use crate::error::{Error, Result};
use crate::space::UltrametricSpace;
use crate::tree::{
    build_representing_tree, node_encodings, realize_space, CanonicalMode, LabeledNode,
    LabeledRootedTree, NodeId,
};

/// Largest number of points a constructor may produce. The dense distance
/// matrix makes memory grow with the square of this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointBudget(pub usize);

impl PointBudget {
    pub const DEFAULT: PointBudget = PointBudget(1 << 12);

    fn check(&self, points: u128, what: &str) -> Result<()> {
        if points > self.0 as u128 {
            Err(Error::Resource(format!(
                "{what} needs {points} points, budget is {}",
                self.0
            )))
        } else {
            Ok(())
        }
    }
}

impl Default for PointBudget {
    fn default() -> Self {
        PointBudget::DEFAULT
    }
}

/// All `n`-bit words, `d(x, y) = 2^-m` where `m` is the first (1-based)
/// position at which `x` and `y` differ.
pub fn binary_word_space(n: u32, budget: PointBudget) -> Result<UltrametricSpace> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "word length must be at least 1".into(),
        ));
    }
    if n >= 64 {
        return Err(Error::Resource(format!("2^{n} points")));
    }
    budget.check(1u128 << n, "binary word space")?;
    let width = n as usize;
    let points = (0..1u64 << n).map(|w| format!("{w:0width$b}")).collect();
    Ok(UltrametricSpace::from_fn_unchecked(points, |i, j| {
        let highest = 63 - ((i ^ j) as u64).leading_zeros();
        let first_difference = n - highest;
        DistanceValue::inverse_power_of_two(first_difference).expect("n < 64")
    }))
}

/// Two disjoint copies of `base` at mutual distance `t_star`. Copies are
/// named by suffixing `·0` and `·1`.
pub fn double(base: &UltrametricSpace, t_star: DistanceValue) -> Result<UltrametricSpace> {
    let diam = base.full_diameter();
    if t_star <= diam {
        return Err(Error::InvalidParameter(format!(
            "t* = {t_star} must exceed diam = {diam}"
        )));
    }
    let n = base.len();
    let points = (0..2)
        .flat_map(|copy| base.points().iter().map(move |p| format!("{p}·{copy}")))
        .collect();
    Ok(UltrametricSpace::from_fn_unchecked(points, |i, j| {
        if i / n == j / n {
            base.distance(i % n, j % n)
        } else {
            t_star
        }
    }))
}

/// Adds one point without changing the center: a new zero-labeled leaf is
/// hung under an internal vertex `v0` of the representing tree that already
/// has a leaf child. `v0` is the deepest such vertex, ties going to the
/// smallest canonical encoding.
///
/// The new point is named after that leaf child with a `'` appended.
pub fn add_point(base: &UltrametricSpace) -> Result<UltrametricSpace> {
    if base.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: base.len(),
        });
    }
    let rep = build_representing_tree(base)?;
    let enc = node_encodings(&rep, CanonicalMode::Isometry);
    let anchor = (0..rep.len())
        .filter(|&id| rep.node(id).children.iter().any(|&c| rep.node(c).is_leaf()))
        .min_by(|&a, &b| {
            rep.depth(b)
                .cmp(&rep.depth(a))
                .then_with(|| enc[a].cmp(&enc[b]))
                .then(a.cmp(&b))
        })
        .ok_or_else(|| Error::internal("some vertex has a leaf child", "none found"))?;
    let twin = rep
        .node(anchor)
        .children
        .iter()
        .find(|&&c| rep.node(c).is_leaf())
        .and_then(|&c| rep.node(c).point.clone())
        .expect("anchor has a named leaf child");

    let taken: HashSet<&str> = base.points().iter().map(String::as_str).collect();
    let mut name = format!("{twin}'");
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    let mut order = base.points().to_vec();
    order.push(name.clone());
    let mut tree = rep.into_labeled();
    tree.attach_leaf(anchor, Some(name));
    tree.set_point_order_unchecked(Some(order));
    realize_space(&tree, None)
}

/// Perfect binary tree over `A = {0 = a_0 < ... < a_m}` with every level-`i`
/// vertex labeled `a_(m-i)`, realized on `2^m` points named by bit strings.
/// The result has `D(X) = C(X) = A`, which is verified before returning.
pub fn realize_center_set(set: &DistanceSet, budget: PointBudget) -> Result<UltrametricSpace> {
    if !set.contains(&DistanceValue::ZERO) {
        return Err(Error::InvalidParameter(format!("{set} does not contain 0")));
    }
    let levels = set.len() - 1;
    if levels >= 64 {
        return Err(Error::Resource(format!("2^{levels} points")));
    }
    budget.check(1u128 << levels, "center set realization")?;
    let space = if levels == 0 {
        UltrametricSpace::from_fn_unchecked(vec!["x1".into()], |_, _| DistanceValue::ZERO)
    } else {
        let labels = set.as_slice();
        let mut nodes = Vec::new();
        let mut words: Vec<String> = Vec::new();
        let mut frontier: Vec<(NodeId, String)> = vec![(0, String::new())];
        nodes.push(LabeledNode::internal(labels[levels], Vec::new()));
        for level in 1..=levels {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (parent, word) in frontier {
                for bit in ['0', '1'] {
                    let id = nodes.len();
                    let child_word = format!("{word}{bit}");
                    let node = if level == levels {
                        words.push(child_word.clone());
                        LabeledNode::leaf(Some(child_word.clone()))
                    } else {
                        LabeledNode::internal(labels[levels - level], Vec::new())
                    };
                    nodes.push(node);
                    nodes[parent].children.push(id);
                    next.push((id, child_word));
                }
            }
            frontier = next;
        }
        let tree = LabeledRootedTree::new(nodes, 0)?.with_point_order(words)?;
        realize_space(&tree, None)?
    };
    let distances = space.distance_set(None)?;
    let center = center_bruteforce(&space);
    if &distances != set || &center != set {
        return Err(Error::internal(
            "D(X) = C(X) = A",
            format!("A = {set}, D = {distances}, C = {center}"),
        ));
    }
    Ok(space)
}

/// A parsed, parameter-checked construction ready to run.
pub trait Construction: Send + Sync + fmt::Debug {
    fn kind(&self) -> &'static str;

    fn build(&self, budget: PointBudget) -> Result<UltrametricSpace>;
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinaryWord {
    n: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Double {
    base: UltrametricSpace,
    t_star: DistanceValue,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AddPoint {
    base: UltrametricSpace,
    #[serde(default = "one")]
    times: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RealizeSet {
    set: DistanceSet,
}

impl Construction for BinaryWord {
    fn kind(&self) -> &'static str {
        "binary_word"
    }

    fn build(&self, budget: PointBudget) -> Result<UltrametricSpace> {
        binary_word_space(self.n, budget)
    }
}

impl Construction for Double {
    fn kind(&self) -> &'static str {
        "double"
    }

    fn build(&self, budget: PointBudget) -> Result<UltrametricSpace> {
        budget.check(2 * self.base.len() as u128, "double")?;
        double(&self.base, self.t_star)
    }
}

impl Construction for AddPoint {
    fn kind(&self) -> &'static str {
        "add_point"
    }

    fn build(&self, budget: PointBudget) -> Result<UltrametricSpace> {
        budget.check((self.base.len() + self.times) as u128, "add_point")?;
        let mut space = self.base.clone();
        for _ in 0..self.times {
            space = add_point(&space)?;
        }
        Ok(space)
    }
}

impl Construction for RealizeSet {
    fn kind(&self) -> &'static str {
        "realize_set"
    }

    fn build(&self, budget: PointBudget) -> Result<UltrametricSpace> {
        realize_center_set(&self.set, budget)
    }
}

type Parser = fn(Value) -> Result<Box<dyn Construction>>;

fn parse_params<T: DeserializeOwned + Construction + 'static>(
    params: Value,
) -> Result<Box<dyn Construction>> {
    let parsed: T = serde_json::from_value(params)?;
    Ok(Box::new(parsed))
}

/// Construction kinds by name.
pub struct ConstructionRegistry {
    parsers: IndexMap<&'static str, Parser>,
}

impl ConstructionRegistry {
    pub fn empty() -> Self {
        ConstructionRegistry {
            parsers: IndexMap::new(),
        }
    }

    pub fn register(&mut self, kind: &'static str, parser: Parser) -> Result<()> {
        if self.parsers.contains_key(kind) {
            return Err(Error::InvalidParameter(format!(
                "construction {kind:?} is already registered"
            )));
        }
        self.parsers.insert(kind, parser);
        Ok(())
    }

    pub fn kinds(&self) -> Vec<&'static str> {
        self.parsers.keys().copied().collect()
    }

    /// Parses `{"kind": ..., <parameters>}`.
    pub fn parse(&self, text: &str) -> Result<Box<dyn Construction>> {
        self.parse_value(serde_json::from_str(text)?)
    }

    pub fn parse_value(&self, spec: Value) -> Result<Box<dyn Construction>> {
        let Value::Object(mut fields) = spec else {
            return Err(Error::Structural(
                "construction spec must be a JSON object".into(),
            ));
        };
        let kind = match fields.remove("kind") {
            Some(Value::String(kind)) => kind,
            _ => {
                return Err(Error::Structural(
                    "construction spec needs a string \"kind\"".into(),
                ))
            }
        };
        let parser = self.parsers.get(kind.as_str()).ok_or_else(|| {
            Error::Structural(format!(
                "unknown construction {kind:?}; known: {}",
                self.kinds().join(", ")
            ))
        })?;
        parser(Value::Object(fields))
    }
}

impl Default for ConstructionRegistry {
    fn default() -> Self {
        let mut registry = ConstructionRegistry::empty();
        let builtin: [(&'static str, Parser); 4] = [
            ("binary_word", parse_params::<BinaryWord>),
            ("double", parse_params::<Double>),
            ("add_point", parse_params::<AddPoint>),
            ("realize_set", parse_params::<RealizeSet>),
        ];
        for (kind, parser) in builtin {
            registry
                .register(kind, parser)
                .expect("builtin kinds are distinct");
        }
        registry
    }
}
