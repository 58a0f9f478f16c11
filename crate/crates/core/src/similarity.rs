//! Isometries and weak similarities between finite ultrametric spaces, found
//! by matching representing trees through their canonical encodings.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::distance::DistanceValue;
use crate::error::Result;
use crate::space::UltrametricSpace;
use crate::tree::{build_representing_tree, node_encodings, CanonicalMode, NodeId};

/// A bijection `phi: X -> Y` together with the increasing map `f` on
/// distances such that `d_X(x, x') = f(d_Y(phi x, phi x'))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimilarityWitness {
    /// `(x, phi(x))` for every point of X, by point index, in X's order.
    pub point_bijection: Vec<(usize, usize)>,
    /// Pairs `(d_X, d_Y)`: `f` sends the second coordinate to the first.
    /// Both coordinates strictly increase along the list.
    pub scale_map: Vec<(DistanceValue, DistanceValue)>,
}

impl SimilarityWitness {
    /// Checks the witness invariants against both spaces.
    pub fn verify(&self, x: &UltrametricSpace, y: &UltrametricSpace, mode: CanonicalMode) -> bool {
        let n = x.len();
        if y.len() != n || self.point_bijection.len() != n {
            return false;
        }
        let mut phi = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for &(a, b) in &self.point_bijection {
            if a >= n || b >= n || phi[a] != usize::MAX || hit[b] {
                return false;
            }
            phi[a] = b;
            hit[b] = true;
        }
        let increasing = self
            .scale_map
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        if !increasing {
            return false;
        }
        if mode == CanonicalMode::Isometry && self.scale_map.iter().any(|(a, b)| a != b) {
            return false;
        }
        let f: HashMap<DistanceValue, DistanceValue> =
            self.scale_map.iter().map(|&(dx, dy)| (dy, dx)).collect();
        (0..n)
            .all(|i| (0..n).all(|j| f.get(&y.distance(phi[i], phi[j])) == Some(&x.distance(i, j))))
    }

    /// `phi` by point names.
    pub fn named_bijection(
        &self,
        x: &UltrametricSpace,
        y: &UltrametricSpace,
    ) -> Vec<(String, String)> {
        self.point_bijection
            .iter()
            .map(|&(a, b)| (x.point_name(a).to_owned(), y.point_name(b).to_owned()))
            .collect()
    }
}

/// Finds an isometry or weak similarity `X -> Y`, or `None` when the
/// representing trees are not isomorphic in the chosen mode. Every returned
/// witness has been checked against both distance matrices.
pub fn find_similarity(
    x: &UltrametricSpace,
    y: &UltrametricSpace,
    mode: CanonicalMode,
) -> Result<Option<SimilarityWitness>> {
    if x.len() != y.len() {
        return Ok(None);
    }
    if x.len() == 1 {
        return Ok(Some(SimilarityWitness {
            point_bijection: vec![(0, 0)],
            scale_map: vec![(DistanceValue::ZERO, DistanceValue::ZERO)],
        }));
    }
    let tx = build_representing_tree(x)?;
    let ty = build_representing_tree(y)?;
    let ex = node_encodings(&tx, mode);
    let ey = node_encodings(&ty, mode);
    if ex[tx.root()] != ey[ty.root()] {
        return Ok(None);
    }

    let mut bijection = Vec::with_capacity(x.len());
    let mut scale: BTreeMap<DistanceValue, DistanceValue> = BTreeMap::new();
    let mut stack: Vec<(NodeId, NodeId)> = vec![(tx.root(), ty.root())];
    while let Some((u, v)) = stack.pop() {
        scale.insert(tx.node(u).label, ty.node(v).label);
        if tx.node(u).is_leaf() {
            bijection.push((tx.members(u)[0], ty.members(v)[0]));
            continue;
        }
        let mut pool: HashMap<&str, Vec<NodeId>> = HashMap::new();
        for &c in &ty.node(v).children {
            pool.entry(ey[c].as_str()).or_default().push(c);
        }
        for &c in &tx.node(u).children {
            let partner = pool.get_mut(ex[c].as_str()).and_then(Vec::pop);
            match partner {
                Some(d) => stack.push((c, d)),
                None => return Ok(None),
            }
        }
    }
    bijection.sort_unstable();
    let witness = SimilarityWitness {
        point_bijection: bijection,
        scale_map: scale.into_iter().collect(),
    };
    if witness.verify(x, y, mode) {
        Ok(Some(witness))
    } else {
        Err(crate::error::Error::internal(
            "similarity witness verifies",
            "matched representing trees produced a bad witness",
        ))
    }
}
