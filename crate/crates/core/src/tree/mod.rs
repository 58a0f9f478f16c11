//! Labeled rooted trees and representing trees of finite ultrametric spaces.
//!
//! Trees are index based: every node lists its children by [`NodeId`], and
//! traversals use explicit stacks so deep trees never exhaust the call stack.

mod build;
mod canonical;
mod io;

pub use build::{build_representing_tree, realize_space, RepresentingTree};
pub(crate) use canonical::node_encodings;
pub use canonical::{canonical_form, parse_canonical, CanonicalMode};
pub use io::NestedNode;

use std::fmt;

use serde::Serialize;

use crate::distance::DistanceValue;
use crate::distance_set::DistanceSet;
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledNode {
    pub label: DistanceValue,
    pub children: Vec<NodeId>,
    /// Point carried by a leaf, when known.
    pub point: Option<String>,
}

impl LabeledNode {
    pub fn internal(label: DistanceValue, children: Vec<NodeId>) -> Self {
        LabeledNode {
            label,
            children,
            point: None,
        }
    }

    pub fn leaf(point: Option<String>) -> Self {
        LabeledNode {
            label: DistanceValue::ZERO,
            children: Vec::new(),
            point,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// A finite rooted tree whose vertices carry nonnegative rational labels.
///
/// Construction only checks that the node graph is a tree hanging from
/// `root`; the realizability conditions are checked by [`validate_tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledRootedTree {
    nodes: Vec<LabeledNode>,
    root: NodeId,
    /// Preferred point order when the tree is realized as a space.
    point_order: Option<Vec<String>>,
}

/// A failed clause of the realizability conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum TreeViolation {
    /// A vertex with exactly one child.
    OutDegreeOne { vertex: NodeId },
    /// A leaf whose label is not zero.
    LeafLabelNonZero { vertex: NodeId },
    /// An internal vertex labeled zero.
    InternalLabelZero { vertex: NodeId },
    /// A child whose label is not strictly below its parent's.
    LabelNotDecreasing { parent: NodeId, child: NodeId },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::OutDegreeOne { vertex } => write!(f, "vertex {vertex} has out-degree 1"),
            TreeViolation::LeafLabelNonZero { vertex } => {
                write!(f, "leaf {vertex} has a nonzero label")
            }
            TreeViolation::InternalLabelZero { vertex } => {
                write!(f, "internal vertex {vertex} is labeled 0")
            }
            TreeViolation::LabelNotDecreasing { parent, child } => {
                write!(f, "child {child} is not labeled below its parent {parent}")
            }
        }
    }
}

impl LabeledRootedTree {
    /// Checks that `nodes` form a single rooted tree: every vertex except the
    /// root has exactly one parent and every vertex is reachable from `root`.
    pub fn new(nodes: Vec<LabeledNode>, root: NodeId) -> Result<Self> {
        let n = nodes.len();
        if root >= n {
            return Err(Error::Structural(format!("root {root} is not a node")));
        }
        let mut parent = vec![None; n];
        let mut edges = 0usize;
        for (id, node) in nodes.iter().enumerate() {
            for &child in &node.children {
                if child >= n {
                    return Err(Error::Structural(format!(
                        "node {id} has unknown child {child}"
                    )));
                }
                if child == root {
                    return Err(Error::Structural(format!(
                        "root {root} has a parent ({id})"
                    )));
                }
                if let Some(other) = parent[child].replace(id) {
                    return Err(Error::Structural(format!(
                        "node {child} has two parents ({other} and {id})"
                    )));
                }
                edges += 1;
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        let mut reached = 0;
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::Structural(format!("cycle through node {id}")));
            }
            reached += 1;
            stack.extend(&nodes[id].children);
        }
        if reached != n || edges + 1 != n {
            return Err(Error::Structural(format!(
                "{} of {n} nodes are not connected to the root",
                n - reached
            )));
        }
        Ok(LabeledRootedTree {
            nodes,
            root,
            point_order: None,
        })
    }

    /// Records the point order to use when realizing; it must list every leaf
    /// point exactly once.
    pub fn with_point_order(mut self, order: Vec<String>) -> Result<Self> {
        let mut leaf_points: Vec<&str> = self
            .leaves()
            .into_iter()
            .map(|id| self.nodes[id].point.as_deref())
            .collect::<Option<_>>()
            .ok_or_else(|| {
                Error::Structural("point order given but some leaves are unnamed".into())
            })?;
        let mut listed: Vec<&str> = order.iter().map(String::as_str).collect();
        leaf_points.sort_unstable();
        listed.sort_unstable();
        if leaf_points != listed {
            return Err(Error::Structural(
                "point order does not match the leaf points".into(),
            ));
        }
        self.point_order = Some(order);
        Ok(self)
    }

    pub fn point_order(&self) -> Option<&[String]> {
        self.point_order.as_deref()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn nodes(&self) -> &[LabeledNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &LabeledNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn out_degree(&self, id: NodeId) -> usize {
        self.nodes[id].children.len()
    }

    pub fn parents(&self) -> Vec<Option<NodeId>> {
        let mut parent = vec![None; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                parent[c] = Some(id);
            }
        }
        parent
    }

    /// Vertices in depth-first preorder, children in stored order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            order.push(id);
            stack.extend(self.nodes[id].children.iter().rev());
        }
        order
    }

    /// Every vertex appears after all of its descendants.
    pub fn postorder(&self) -> Vec<NodeId> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.preorder()
            .into_iter()
            .filter(|&id| self.nodes[id].is_leaf())
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    /// Level of each vertex: 0 at the root, parent + 1 below.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.nodes.len()];
        for id in self.preorder() {
            for &c in &self.nodes[id].children {
                depth[c] = depth[id] + 1;
            }
        }
        depth
    }

    pub fn label_set(&self) -> DistanceSet {
        self.nodes.iter().map(|n| n.label).collect()
    }

    /// Labels on the path from `id` up to the root, `id` included.
    pub fn path_labels(&self, id: NodeId, parents: &[Option<NodeId>]) -> DistanceSet {
        let mut labels = Vec::new();
        let mut cur = Some(id);
        while let Some(v) = cur {
            labels.push(self.nodes[v].label);
            cur = parents[v];
        }
        labels.into_iter().collect()
    }

    /// Applies `relabel` to every label; the shape and points are unchanged.
    pub fn map_labels(&self, mut relabel: impl FnMut(DistanceValue) -> DistanceValue) -> Self {
        let mut out = self.clone();
        for node in &mut out.nodes {
            node.label = relabel(node.label);
        }
        out
    }

    /// Same tree with every child list reversed.
    pub fn with_reversed_children(&self) -> Self {
        let mut out = self.clone();
        for node in &mut out.nodes {
            node.children.reverse();
        }
        out
    }

    /// Adds a leaf below `parent`, returning its id.
    pub(crate) fn attach_leaf(&mut self, parent: NodeId, point: Option<String>) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(LabeledNode::leaf(point));
        self.nodes[parent].children.push(id);
        id
    }

    pub(crate) fn set_point_order_unchecked(&mut self, order: Option<Vec<String>>) {
        self.point_order = order;
    }
}

/// Checks the three realizability clauses on every vertex: no out-degree 1,
/// zero labels exactly at leaves, labels strictly decreasing toward leaves.
pub fn validate_tree(tree: &LabeledRootedTree) -> ValidationReport<TreeViolation> {
    let mut violations = Vec::new();
    for (id, node) in tree.nodes.iter().enumerate() {
        match node.children.len() {
            0 if !node.label.is_zero() => {
                violations.push(TreeViolation::LeafLabelNonZero { vertex: id })
            }
            0 => {}
            deg => {
                if deg == 1 {
                    violations.push(TreeViolation::OutDegreeOne { vertex: id });
                }
                if node.label.is_zero() {
                    violations.push(TreeViolation::InternalLabelZero { vertex: id });
                }
            }
        }
        for &child in &node.children {
            if tree.nodes[child].label >= node.label {
                violations.push(TreeViolation::LabelNotDecreasing { parent: id, child });
            }
        }
    }
    ValidationReport::from_violations(violations)
}

pub(crate) fn ensure_valid(tree: &LabeledRootedTree) -> Result<()> {
    let report = validate_tree(tree);
    if report.valid {
        Ok(())
    } else {
        Err(Error::InvalidTree(report))
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn two_cherry_tree_is_valid() {
        let report = validate_tree(&two_cherries(3, 1, 2));
        assert!(report.valid, "{:?}", report.violations);
    }

    #[test]
    fn out_degree_one_is_rejected() {
        let nodes = vec![
            LabeledNode::internal(dv(3), vec![1, 2]),
            LabeledNode::internal(dv(2), vec![3]),
            LabeledNode::leaf(None),
            LabeledNode::leaf(None),
        ];
        let tree = LabeledRootedTree::new(nodes, 0).unwrap();
        let report = validate_tree(&tree);
        assert!(!report.valid);
        assert_eq!(
            report.violations,
            vec![TreeViolation::OutDegreeOne { vertex: 1 }]
        );
    }

    #[test]
    fn equal_child_label_is_rejected() {
        let report = validate_tree(&two_cherries(3, 3, 2));
        assert_eq!(
            report.violations,
            vec![TreeViolation::LabelNotDecreasing {
                parent: 0,
                child: 1
            }]
        );
    }

    #[test]
    fn zero_label_must_mark_leaves_exactly() {
        let mut tree = two_cherries(3, 1, 2);
        tree.nodes[3].label = dv(1);
        tree.nodes[2].label = DistanceValue::ZERO;
        let report = validate_tree(&tree);
        assert!(report
            .violations
            .contains(&TreeViolation::LeafLabelNonZero { vertex: 3 }));
        assert!(report
            .violations
            .contains(&TreeViolation::InternalLabelZero { vertex: 2 }));
        assert!(report
            .violations
            .contains(&TreeViolation::LabelNotDecreasing {
                parent: 1,
                child: 3
            }));
    }

    #[test]
    fn structural_problems_are_caught_at_construction() {
        let cycle = vec![
            LabeledNode::internal(dv(2), vec![1, 2]),
            LabeledNode::internal(dv(1), vec![2]),
            LabeledNode::leaf(None),
        ];
        assert!(matches!(
            LabeledRootedTree::new(cycle, 0),
            Err(Error::Structural(_))
        ));
        let disconnected = vec![
            LabeledNode::internal(dv(2), vec![1, 2]),
            LabeledNode::leaf(None),
            LabeledNode::leaf(None),
            LabeledNode::leaf(None),
        ];
        assert!(matches!(
            LabeledRootedTree::new(disconnected, 0),
            Err(Error::Structural(_))
        ));
        let back_edge = vec![
            LabeledNode::internal(dv(2), vec![1]),
            LabeledNode::internal(dv(1), vec![0]),
        ];
        assert!(LabeledRootedTree::new(back_edge, 0).is_err());
    }

    #[test]
    fn traversals_and_levels() {
        let tree = two_cherries(3, 1, 2);
        assert_eq!(tree.preorder(), vec![0, 1, 3, 4, 2, 5, 6]);
        assert_eq!(tree.leaves(), vec![3, 4, 5, 6]);
        assert_eq!(tree.depths(), vec![0, 1, 1, 2, 2, 2, 2]);
        let parents = tree.parents();
        assert_eq!(tree.path_labels(3, &parents).to_string(), "{0, 1, 3}");
    }

    #[test]
    fn single_leaf_is_a_valid_tree() {
        let tree = LabeledRootedTree::new(vec![LabeledNode::leaf(None)], 0).unwrap();
        assert!(validate_tree(&tree).valid);
    }
}
