//! Unlabeled rooted trees with a given number of leaves in which no vertex
//! has exactly one child (the shapes of representing trees).

/// A tree shape: a leaf, or an internal vertex with at least two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub children: Vec<Shape>,
}

impl Shape {
    pub fn leaf() -> Self {
        Shape {
            children: Vec::new(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(Shape::leaf_count).sum()
        }
    }
}

/// Every shape with `1..=n` leaves, indexed by leaf count. Each shape appears
/// once: children are chosen as a non-increasing sequence of
/// (leaf count, index) pairs.
pub(crate) fn shape_table(n: usize) -> Vec<Vec<Shape>> {
    let mut table: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::leaf()]];
    for size in 2..=n {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        extend(&table, size, (size - 1, usize::MAX), &mut chosen, &mut out);
        table.push(out);
    }
    table.truncate(n + 1);
    table
}

fn extend(
    table: &[Vec<Shape>],
    remaining: usize,
    max: (usize, usize),
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Shape>,
) {
    if remaining == 0 {
        if chosen.len() >= 2 {
            out.push(Shape {
                children: chosen.iter().map(|&(s, i)| table[s][i].clone()).collect(),
            });
        }
        return;
    }
    for size in (1..=remaining.min(max.0)).rev() {
        let top = if size == max.0 {
            max.1.min(table[size].len() - 1)
        } else {
            table[size].len() - 1
        };
        for idx in (0..=top).rev() {
            chosen.push((size, idx));
            extend(table, remaining - size, (size, idx), chosen, out);
            chosen.pop();
        }
    }
}

pub fn count_shapes(n: usize) -> usize {
    shape_table(n)[n].len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_reduced_tree_counts() {
        // number of rooted trees with n unlabeled leaves and no unary vertex
        let expect = [1, 1, 2, 5, 12, 33, 90, 261, 766];
        for (i, &count) in expect.iter().enumerate() {
            assert_eq!(count_shapes(i + 1), count, "n = {}", i + 1);
        }
    }

    #[test]
    fn shapes_have_requested_leaf_count() {
        for shape in &shape_table(6)[6] {
            assert_eq!(shape.leaf_count(), 6);
        }
    }
}
