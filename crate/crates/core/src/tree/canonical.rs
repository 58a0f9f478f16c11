//! Canonical encodings of labeled rooted trees.
//!
//! A vertex is encoded as its label token followed, for internal vertices, by
//! the sorted encodings of its children in parentheses: `3(1(0,0),2(0,0))`.
//! Sorting the child encodings makes the result independent of child order
//! and of point names, so two trees get equal encodings exactly when they are
//! isomorphic as labeled rooted trees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceValue;
use crate::error::{Error, Result};

use super::{ensure_valid, LabeledNode, LabeledRootedTree, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalMode {
    /// Labels compared by exact value.
    Isometry,
    /// Labels replaced by their ascending rank in the tree's label set.
    WeakSimilarity,
}

impl fmt::Display for CanonicalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalMode::Isometry => "isometry",
            CanonicalMode::WeakSimilarity => "weak_similarity",
        })
    }
}

impl FromStr for CanonicalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "isometry" => Ok(CanonicalMode::Isometry),
            "weak_similarity" | "weak-similarity" => Ok(CanonicalMode::WeakSimilarity),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// Encoding of every vertex's subtree, indexed by node id. Does not validate.
pub(crate) fn node_encodings(tree: &LabeledRootedTree, mode: CanonicalMode) -> Vec<String> {
    let labels = tree.label_set();
    let token = |label: DistanceValue| match mode {
        CanonicalMode::Isometry => label.to_string(),
        CanonicalMode::WeakSimilarity => labels
            .rank_of(&label)
            .expect("label is in the tree's label set")
            .to_string(),
    };
    let mut enc = vec![String::new(); tree.len()];
    for id in tree.postorder() {
        let node = tree.node(id);
        let mut out = token(node.label);
        if !node.is_leaf() {
            let mut kids: Vec<&str> = node.children.iter().map(|&c| enc[c].as_str()).collect();
            kids.sort_unstable();
            out.push('(');
            out.push_str(&kids.join(","));
            out.push(')');
        }
        enc[id] = out;
    }
    enc
}

/// Canonical string of a valid tree in the chosen mode.
pub fn canonical_form(tree: &LabeledRootedTree, mode: CanonicalMode) -> Result<String> {
    ensure_valid(tree)?;
    Ok(node_encodings(tree, mode).swap_remove(tree.root()))
}

/// Rebuilds a tree from an encoding, children in encoded (sorted) order.
/// Leaves are left unnamed.
pub fn parse_canonical(encoding: &str) -> Result<LabeledRootedTree> {
    let bad = |msg: &str| Error::Structural(format!("bad canonical encoding {encoding:?}: {msg}"));
    let bytes = encoding.as_bytes();
    let mut nodes: Vec<LabeledNode> = Vec::new();
    let mut open: Vec<NodeId> = Vec::new();
    let mut pos = 0;
    let mut root = None;
    loop {
        let start = pos;
        while pos < bytes.len() && !matches!(bytes[pos], b'(' | b')' | b',') {
            pos += 1;
        }
        let label: DistanceValue = encoding[start..pos].parse().map_err(|_| bad("bad label"))?;
        let id = nodes.len();
        nodes.push(LabeledNode::internal(label, Vec::new()));
        match open.last() {
            Some(&parent) => nodes[parent].children.push(id),
            None if root.is_none() => root = Some(id),
            None => return Err(bad("more than one root")),
        }
        if pos < bytes.len() && bytes[pos] == b'(' {
            open.push(id);
            pos += 1;
            continue;
        }
        loop {
            match bytes.get(pos) {
                None => {
                    if !open.is_empty() {
                        return Err(bad("unbalanced parentheses"));
                    }
                    let tree = LabeledRootedTree::new(nodes, root.ok_or_else(|| bad("empty"))?)?;
                    return Ok(tree);
                }
                Some(b')') => {
                    open.pop().ok_or_else(|| bad("unbalanced parentheses"))?;
                    pos += 1;
                }
                Some(b',') => {
                    if open.is_empty() {
                        return Err(bad("sibling at top level"));
                    }
                    pos += 1;
                    break;
                }
                Some(_) => return Err(bad("unexpected character")),
            }
        }
    }
}
