use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceValue;

/// Strictly increasing list of distances.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "Vec<DistanceValue>", into = "Vec<DistanceValue>")]
pub struct DistanceSet(Vec<DistanceValue>);

impl DistanceSet {
    pub fn new() -> Self {
        DistanceSet(Vec::new())
    }

    pub fn singleton(value: DistanceValue) -> Self {
        DistanceSet(vec![value])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, value: &DistanceValue) -> bool {
        self.0.binary_search(value).is_ok()
    }

    pub fn insert(&mut self, value: DistanceValue) -> bool {
        match self.0.binary_search(&value) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, value);
                true
            }
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DistanceValue> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[DistanceValue] {
        &self.0
    }

    pub fn min(&self) -> Option<DistanceValue> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<DistanceValue> {
        self.0.last().copied()
    }

    pub fn intersection(&self, other: &DistanceSet) -> DistanceSet {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        let mut out = Vec::new();
        while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
            match x.cmp(y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    out.push(**x);
                    a.next();
                    b.next();
                }
            }
        }
        DistanceSet(out)
    }

    pub fn union(&self, other: &DistanceSet) -> DistanceSet {
        self.iter().chain(other.iter()).copied().collect()
    }

    pub fn is_subset(&self, other: &DistanceSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Position of `value` in ascending order.
    pub fn rank_of(&self, value: &DistanceValue) -> Option<usize> {
        self.0.binary_search(value).ok()
    }
}

impl FromIterator<DistanceValue> for DistanceSet {
    fn from_iter<I: IntoIterator<Item = DistanceValue>>(iter: I) -> Self {
        let mut values: Vec<_> = iter.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        DistanceSet(values)
    }
}

impl From<Vec<DistanceValue>> for DistanceSet {
    fn from(values: Vec<DistanceValue>) -> Self {
        values.into_iter().collect()
    }
}

impl From<DistanceSet> for Vec<DistanceValue> {
    fn from(set: DistanceSet) -> Self {
        set.0
    }
}

impl<'a> IntoIterator for &'a DistanceSet {
    type Item = &'a DistanceValue;
    type IntoIter = std::slice::Iter<'a, DistanceValue>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
