//! Nested JSON and Graphviz DOT forms of labeled rooted trees.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceValue;
use crate::error::{Error, Result};

use super::{LabeledNode, LabeledRootedTree};

/// `{"label": "3", "children": [...]}` with leaves `{"label": "0", "point": "a"}`.
///
/// The root may also carry `"points"`, the point order used when the tree is
/// realized as a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NestedNode {
    pub label: DistanceValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NestedNode>,
}

impl LabeledRootedTree {
    pub fn to_nested(&self) -> NestedNode {
        let mut built: Vec<Option<NestedNode>> = vec![None; self.len()];
        for id in self.postorder() {
            let node = self.node(id);
            let children = node
                .children
                .iter()
                .map(|&c| built[c].take().expect("children are built first"))
                .collect();
            built[id] = Some(NestedNode {
                label: node.label,
                point: node.point.clone(),
                points: None,
                children,
            });
        }
        let mut root = built[self.root()].take().expect("root built last");
        root.points = self.point_order().map(<[_]>::to_vec);
        root
    }

    pub fn from_nested(root: NestedNode) -> Result<Self> {
        let mut root = root;
        let order = root.points.take();
        let mut nodes: Vec<LabeledNode> = Vec::new();
        let mut stack = vec![(None, root)];
        while let Some((parent, nested)) = stack.pop() {
            if nested.points.is_some() {
                return Err(Error::Structural(
                    "\"points\" is only allowed on the root".into(),
                ));
            }
            if nested.point.is_some() && !nested.children.is_empty() {
                return Err(Error::Structural("only leaves may carry a point".into()));
            }
            let id = nodes.len();
            nodes.push(LabeledNode {
                label: nested.label,
                children: Vec::new(),
                point: nested.point,
            });
            if let Some(p) = parent {
                let parent_node: &mut LabeledNode = &mut nodes[p];
                parent_node.children.push(id);
            }
            for child in nested.children.into_iter().rev() {
                stack.push((Some(id), child));
            }
        }
        let tree = LabeledRootedTree::new(nodes, 0)?;
        match order {
            Some(order) => tree.with_point_order(order),
            None => Ok(tree),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_nested()).expect("tree serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        LabeledRootedTree::from_nested(serde_json::from_str(text)?)
    }

    /// Internal vertices show their labels, leaves their point names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph representing_tree {\n  node [shape=circle];\n");
        for id in self.preorder() {
            let node = self.node(id);
            let text = match (&node.point, node.is_leaf()) {
                (Some(p), true) => p.clone(),
                _ => node.label.to_string(),
            };
            let shape = if node.is_leaf() {
                ", shape=plaintext"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{id} [label={}{shape}];", quote(&text));
        }
        for id in self.preorder() {
            for &c in &self.node(id).children {
                let _ = writeln!(out, "  n{id} -> n{c};");
            }
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}
