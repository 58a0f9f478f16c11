//! Seeded random trees, spaces and candidate center sets for property tests.
//!
//! Labels are small integers over a random common denominator. Sibling
//! subtrees are sometimes copies of each other, which is what gives a space a
//! center larger than `{0, diam X}`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::distance::DistanceValue;
use crate::distance_set::DistanceSet;
use crate::tree::{realize_space, LabeledRootedTree, NestedNode};
use crate::UltrametricSpace;

/// Largest numerator used for labels.
const MAX_LABEL: u64 = 12;

fn node(label: DistanceValue, children: Vec<NestedNode>) -> NestedNode {
    NestedNode {
        label,
        point: None,
        points: None,
        children,
    }
}

/// Subtree with `leaves` leaves and labels below `bound / den`.
fn subtree<R: Rng + ?Sized>(rng: &mut R, leaves: usize, bound: u64, den: u64) -> NestedNode {
    if leaves == 1 {
        return node(DistanceValue::ZERO, Vec::new());
    }
    let label = rng.gen_range(1..bound);
    let value = DistanceValue::new(label, den).expect("denominator is positive");
    if label == 1 {
        return node(
            value,
            (0..leaves)
                .map(|_| node(DistanceValue::ZERO, Vec::new()))
                .collect(),
        );
    }
    if leaves.is_multiple_of(2) && rng.gen_bool(0.4) {
        let half = subtree(rng, leaves / 2, label, den);
        return node(value, vec![half.clone(), half]);
    }
    let parts = rng.gen_range(2..=leaves.min(4));
    let mut sizes = vec![1; parts];
    for _ in parts..leaves {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    let children = sizes
        .into_iter()
        .map(|s| subtree(rng, s, label, den))
        .collect();
    node(value, children)
}

/// A valid labeled tree with `leaves` unnamed leaves.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, leaves: usize) -> LabeledRootedTree {
    assert!(leaves >= 1, "a tree has at least one leaf");
    let den = rng.gen_range(1..=4);
    let bound = rng.gen_range(3..=MAX_LABEL + 1);
    LabeledRootedTree::from_nested(subtree(rng, leaves, bound, den))
        .expect("generated tree is well formed")
}

/// Realization of a random tree with its points in shuffled order.
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, points: usize) -> UltrametricSpace {
    let tree = random_tree(rng, points);
    let space = realize_space(&tree, None).expect("generated tree is valid");
    let mut order: Vec<usize> = (0..points).collect();
    order.shuffle(rng);
    space.subspace(&order).expect("order is a permutation")
}

/// `{0}` plus up to `max_len - 1` distinct positive rationals.
pub fn random_center_set<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> DistanceSet {
    assert!(max_len >= 1, "the set holds at least 0");
    let target = rng.gen_range(1..=max_len);
    let mut set = DistanceSet::singleton(DistanceValue::ZERO);
    while set.len() < target {
        let value = DistanceValue::new(rng.gen_range(1..=20), rng.gen_range(1..=4))
            .expect("positive denominator");
        set.insert(value);
    }
    set
}
