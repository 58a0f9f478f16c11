use std::collections::VecDeque;
use std::ops::Deref;

use crate::distance::DistanceValue;
use crate::error::{Error, Result};
use crate::partition::partition_members;
use crate::space::UltrametricSpace;

use super::{ensure_valid, node_encodings, CanonicalMode, LabeledNode, LabeledRootedTree, NodeId};

/// Representing tree of a space: the root is the whole space, the children
/// of a node are the parts of its diametrical graph, and each node is labeled
/// with the diameter of the points below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentingTree {
    tree: LabeledRootedTree,
    members: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl RepresentingTree {
    /// Point indices represented by `id`, ascending.
    pub fn members(&self, id: NodeId) -> &[usize] {
        &self.members[id]
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.depth[id]
    }

    pub fn labeled(&self) -> &LabeledRootedTree {
        &self.tree
    }

    pub fn into_labeled(self) -> LabeledRootedTree {
        self.tree
    }
}

impl Deref for RepresentingTree {
    type Target = LabeledRootedTree;

    fn deref(&self) -> &LabeledRootedTree {
        &self.tree
    }
}

/// Recursive diametrical partitioning of `space`, breadth first, so node ids
/// increase with level.
pub fn build_representing_tree(space: &UltrametricSpace) -> Result<RepresentingTree> {
    let n = space.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut nodes = vec![LabeledNode::internal(DistanceValue::ZERO, Vec::new())];
    let mut members = vec![(0..n).collect::<Vec<_>>()];
    let mut depth = vec![0];
    let mut queue = VecDeque::from([0]);
    while let Some(id) = queue.pop_front() {
        if members[id].len() == 1 {
            nodes[id].point = Some(space.point_name(members[id][0]).to_owned());
            continue;
        }
        let partition = partition_members(space, &members[id])?;
        nodes[id].label = partition.separation;
        for part in partition.parts {
            let child = nodes.len();
            nodes.push(LabeledNode::internal(DistanceValue::ZERO, Vec::new()));
            members.push(part);
            depth.push(depth[id] + 1);
            nodes[id].children.push(child);
            queue.push_back(child);
        }
    }
    let mut tree = LabeledRootedTree::new(nodes, 0)?;
    tree.set_point_order_unchecked(Some(space.points().to_vec()));
    Ok(RepresentingTree {
        tree,
        members,
        depth,
    })
}

/// Leaves in canonical child order: siblings sorted by their isometry
/// encoding, ties kept in stored order.
fn canonical_leaf_order(tree: &LabeledRootedTree) -> Vec<NodeId> {
    let enc = node_encodings(tree, CanonicalMode::Isometry);
    let mut order = Vec::with_capacity(tree.leaf_count());
    let mut stack = vec![tree.root()];
    while let Some(id) = stack.pop() {
        let node = tree.node(id);
        if node.is_leaf() {
            order.push(id);
            continue;
        }
        let mut children = node.children.clone();
        children.sort_by(|a, b| enc[*a].cmp(&enc[*b]));
        stack.extend(children.into_iter().rev());
    }
    order
}

/// Space whose points are the leaves of `tree` and whose distance between two
/// leaves is the largest label on the path joining them.
///
/// Point names come from `leaf_names` (assigned in canonical leaf order) when
/// supplied, otherwise from the leaves themselves, otherwise `x1, x2, ...` in
/// canonical leaf order. Named leaves follow the tree's recorded point order
/// when it has one.
pub fn realize_space(
    tree: &LabeledRootedTree,
    leaf_names: Option<&[String]>,
) -> Result<UltrametricSpace> {
    ensure_valid(tree)?;
    let leaf_count = tree.leaf_count();
    let leaf_points: Option<Vec<&str>> = tree
        .leaves()
        .into_iter()
        .map(|id| tree.node(id).point.as_deref())
        .collect();

    let (order, names): (Vec<NodeId>, Vec<String>) = match (leaf_names, leaf_points) {
        (Some(names), _) => {
            if names.len() != leaf_count {
                return Err(Error::InvalidParameter(format!(
                    "{} leaf names for {leaf_count} leaves",
                    names.len()
                )));
            }
            (canonical_leaf_order(tree), names.to_vec())
        }
        (None, Some(_)) => {
            let order = match tree.point_order() {
                Some(points) => {
                    let by_name: std::collections::HashMap<&str, NodeId> = tree
                        .leaves()
                        .into_iter()
                        .map(|id| (tree.node(id).point.as_deref().unwrap_or_default(), id))
                        .collect();
                    points.iter().map(|p| by_name[p.as_str()]).collect()
                }
                None => tree.leaves(),
            };
            let names = order
                .iter()
                .map(|&id| tree.node(id).point.clone().unwrap_or_default())
                .collect();
            (order, names)
        }
        (None, None) => {
            let order = canonical_leaf_order(tree);
            let names = (1..=order.len()).map(|i| format!("x{i}")).collect();
            (order, names)
        }
    };

    let mut seen = std::collections::HashSet::with_capacity(names.len());
    if let Some(bad) = names
        .iter()
        .find(|name| name.is_empty() || !seen.insert(name.as_str()))
    {
        return Err(Error::Structural(format!(
            "leaf point names must be nonempty and distinct, offending name {bad:?}"
        )));
    }

    let mut position = vec![usize::MAX; tree.len()];
    for (pos, &id) in order.iter().enumerate() {
        position[id] = pos;
    }
    let n = order.len();
    let mut flat = vec![DistanceValue::ZERO; n * n];
    // Leaves below each vertex, collected bottom up. Two leaves meet at their
    // lowest common ancestor, which carries the largest label on their path.
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); tree.len()];
    for id in tree.postorder() {
        let node = tree.node(id);
        if node.is_leaf() {
            below[id].push(position[id]);
            continue;
        }
        let mut gathered: Vec<usize> = Vec::new();
        for &child in &node.children {
            let child_leaves = std::mem::take(&mut below[child]);
            for &p in &gathered {
                for &q in &child_leaves {
                    flat[p * n + q] = node.label;
                    flat[q * n + p] = node.label;
                }
            }
            gathered.extend(child_leaves);
        }
        below[id] = gathered;
    }
    let space = UltrametricSpace::from_fn_unchecked(names, |i, j| flat[i * n + j]);
    if space.len() != leaf_count {
        return Err(Error::internal("one point per leaf", "leaf count mismatch"));
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::fixtures::*;
    use crate::tree::fixtures::{star, two_cherries};
    use crate::tree::{canonical_form, validate_tree};

    #[test]
    fn x4_tree_has_two_cherries() {
        let x = x4();
        let t = build_representing_tree(&x).unwrap();
        assert_eq!(t.node(t.root()).label, DistanceValue::from(3));
        let kids = &t.node(t.root()).children;
        assert_eq!(kids.len(), 2);
        assert_eq!(t.node(kids[0]).label, DistanceValue::from(1));
        assert_eq!(t.node(kids[1]).label, DistanceValue::from(2));
        assert_eq!(t.members(kids[0]), [0, 2]);
        assert_eq!(t.members(kids[1]), [1, 3]);
        assert_eq!(t.depth(kids[0]), 1);
        assert!(validate_tree(&t).valid);
        let leaf_points: Vec<_> = t
            .leaves()
            .iter()
            .map(|&l| t.node(l).point.clone().unwrap())
            .collect();
        assert_eq!(leaf_points, ["a", "c", "b", "d"]);
    }

    #[test]
    fn y4_tree_has_two_equal_children() {
        let t = build_representing_tree(&y4()).unwrap();
        let labels: Vec<_> = t
            .node(t.root())
            .children
            .iter()
            .map(|&c| t.node(c).label)
            .collect();
        assert_eq!(labels, vec![DistanceValue::from(2); 2]);
    }

    #[test]
    fn two_point_space() {
        let s = space(&["p", "q"], &[&[0, 4], &[4, 0]]);
        let t = build_representing_tree(&s).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.node(0).label, DistanceValue::from(4));
        assert!(build_representing_tree(&space(&["s"], &[&[0]])).is_err());
    }

    #[test]
    fn realizing_the_x4_tree_gives_x4() {
        let tree = two_cherries(3, 1, 2)
            .with_point_order(vec!["a".into(), "b".into(), "c".into(), "d".into()])
            .unwrap();
        assert_eq!(realize_space(&tree, None).unwrap(), x4());
    }

    #[test]
    fn star_realizes_equilateral() {
        let s = realize_space(&star(5, 4), None).unwrap();
        assert_eq!(s.points(), ["x1", "x2", "x3", "x4"]);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 0 } else { 5 };
                assert_eq!(s.distance(i, j), DistanceValue::from(expect));
            }
        }
    }

    #[test]
    fn invalid_tree_is_refused() {
        let bad = two_cherries(3, 3, 1);
        assert!(matches!(
            realize_space(&bad, None),
            Err(Error::InvalidTree(_))
        ));
    }

    #[test]
    fn round_trip_preserves_matrix_and_tree() {
        for space in [x4(), y4(), equilateral(5, 2)] {
            let t = build_representing_tree(&space).unwrap();
            let back = realize_space(&t, None).unwrap();
            assert_eq!(back, space);
            let t2 = build_representing_tree(&back).unwrap();
            assert_eq!(
                canonical_form(&t, CanonicalMode::Isometry).unwrap(),
                canonical_form(&t2, CanonicalMode::Isometry).unwrap()
            );
        }
    }

    #[test]
    fn explicit_leaf_names_use_canonical_order() {
        let names: Vec<String> = ["w", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let s = realize_space(&two_cherries(3, 2, 1), Some(&names)).unwrap();
        // the cherry labeled 1 sorts first, so w and x are at distance 1
        assert_eq!(s.distance(0, 1), DistanceValue::from(1));
        assert_eq!(s.distance(2, 3), DistanceValue::from(2));
        assert!(realize_space(&two_cherries(3, 2, 1), Some(&names[..3])).is_err());
    }
}
