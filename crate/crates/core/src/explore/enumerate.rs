//! One representative per weak-similarity class of `n`-point spaces.
//!
//! Every shape is crossed with every rank labeling that strictly decreases
//! toward the leaves; labelings are deduplicated by their weak-similarity
//! encoding, which is the class key.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::center::center_bruteforce;
use crate::distance::DistanceValue;
use crate::error::Result;
use crate::tree::{
    node_encodings, parse_canonical, realize_space, CanonicalMode, LabeledNode, LabeledRootedTree,
};

use super::shapes::{shape_table, Shape};
use super::ExploreConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationClass {
    /// Weak-similarity encoding; unique per class.
    pub key: String,
    /// Internal labels are ranks `1..=L`, leaves `0`.
    pub canonical_tree: LabeledRootedTree,
    pub n: usize,
    pub center_size: usize,
}

impl Serialize for EnumerationClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EnumerationClass", 4)?;
        s.serialize_field("key", &self.key)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("center_size", &self.center_size)?;
        s.serialize_field("tree", &self.canonical_tree.to_nested())?;
        s.end()
    }
}

/// Classes sorted by key. The order does not depend on the thread count.
pub fn enumerate_classes(n: usize, config: &ExploreConfig) -> Result<Vec<EnumerationClass>> {
    config.check(n)?;
    let shapes = shape_table(n).swap_remove(n);
    let keys: BTreeSet<String> =
        shapes
            .par_iter()
            .map(labelings_of)
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
    keys.into_par_iter()
        .map(|key| {
            let canonical_tree = parse_canonical(&key)?;
            let space = realize_space(&canonical_tree, None)?;
            Ok(EnumerationClass {
                center_size: center_bruteforce(&space).len(),
                n,
                canonical_tree,
                key,
            })
        })
        .collect()
}

/// Shape flattened into parent-before-child order.
struct Arena {
    children: Vec<Vec<usize>>,
    internal: Vec<usize>,
    parent: Vec<Option<usize>>,
    /// Longest downward path to a leaf, in edges.
    height: Vec<u64>,
}

impl Arena {
    fn new(shape: &Shape) -> Self {
        let mut queue: Vec<&Shape> = vec![shape];
        let mut children = Vec::new();
        let mut parent = vec![None];
        let mut head = 0;
        while head < queue.len() {
            let node = queue[head];
            let mut ids = Vec::with_capacity(node.children.len());
            for child in &node.children {
                ids.push(queue.len());
                parent.push(Some(head));
                queue.push(child);
            }
            children.push(ids);
            head += 1;
        }
        let mut height = vec![0u64; children.len()];
        for id in (0..children.len()).rev() {
            height[id] = children[id]
                .iter()
                .map(|&c| height[c] + 1)
                .max()
                .unwrap_or(0);
        }
        let internal = (0..children.len())
            .filter(|&id| !children[id].is_empty())
            .collect();
        Arena {
            children,
            internal,
            parent,
            height,
        }
    }

    fn tree(&self, labels: &[u64]) -> LabeledRootedTree {
        let nodes = self
            .children
            .iter()
            .zip(labels)
            .map(|(kids, &label)| {
                if kids.is_empty() {
                    LabeledNode::leaf(None)
                } else {
                    LabeledNode::internal(DistanceValue::from_integer(label), kids.clone())
                }
            })
            .collect();
        LabeledRootedTree::new(nodes, 0).expect("arena is a tree")
    }
}

fn labelings_of(shape: &Shape) -> BTreeSet<String> {
    let arena = Arena::new(shape);
    let mut keys = BTreeSet::new();
    let mut labels = vec![0u64; arena.children.len()];
    if arena.internal.is_empty() {
        keys.insert("0".to_owned());
        return keys;
    }
    let top = arena.internal.len() as u64;
    assign(&arena, 0, top, &mut labels, &mut keys);
    keys
}

/// Labels internal vertices in parent-before-child order. A vertex of height
/// `h` needs `h` distinct labels below and including itself, so its label is
/// at least `h` and below its parent's.
fn assign(arena: &Arena, k: usize, top: u64, labels: &mut [u64], keys: &mut BTreeSet<String>) {
    let Some(&id) = arena.internal.get(k) else {
        let tree = arena.tree(labels);
        keys.insert(node_encodings(&tree, CanonicalMode::WeakSimilarity).swap_remove(0));
        return;
    };
    let upper = match arena.parent[id] {
        Some(p) => labels[p] - 1,
        None => top,
    };
    for label in arena.height[id]..=upper {
        labels[id] = label;
        assign(arena, k + 1, top, labels, keys);
    }
}
