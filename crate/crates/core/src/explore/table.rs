//! `M(n)`, the largest center size over all `n`-point spaces, tabulated by
//! exhaustive enumeration.

use std::fmt::Write as _;

use serde::Serialize;

use crate::center::center_size_bound;
use crate::error::{Error, Result};

use super::{enumerate_classes, ExploreConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub max_center_size: usize,
    /// `1 + floor(log2 n)`.
    pub formula_value: usize,
    pub class_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    /// `M(n)` for a tabulated `n`.
    pub fn max_center_size(&self, n: usize) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.n == n)
            .map(|r| r.max_center_size)
    }

    /// Rows must match the formula and never decrease.
    pub fn check(&self) -> Result<()> {
        let mut previous = 0;
        for row in &self.rows {
            if row.max_center_size != row.formula_value {
                return Err(Error::internal(
                    "M(n) = 1 + ⌊log2 n⌋",
                    format!(
                        "n = {}: M = {}, formula {}",
                        row.n, row.max_center_size, row.formula_value
                    ),
                ));
            }
            if row.max_center_size < previous {
                return Err(Error::internal(
                    "M is nondecreasing",
                    format!("M({}) = {} after {previous}", row.n, row.max_center_size),
                ));
            }
            previous = row.max_center_size;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let header = ["n", "max |C|", "1+floor(log2 n)", "classes"];
        let cells: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.n.to_string(),
                    r.max_center_size.to_string(),
                    r.formula_value.to_string(),
                    r.class_count.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, row: &[&str]| {
            let padded: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  "));
        };
        line(&mut out, &header);
        for row in &cells {
            line(&mut out, &row.each_ref().map(String::as_str));
        }
        out
    }
}

pub fn max_center_table(n_max: usize, config: &ExploreConfig) -> Result<BoundTable> {
    config.check(n_max)?;
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let classes = enumerate_classes(n, config)?;
        let max_center_size = classes.iter().map(|c| c.center_size).max().unwrap_or(0);
        rows.push(BoundRow {
            n,
            max_center_size,
            formula_value: center_size_bound(n),
            class_count: classes.len(),
        });
    }
    let table = BoundTable { rows };
    table.check()?;
    Ok(table)
}
