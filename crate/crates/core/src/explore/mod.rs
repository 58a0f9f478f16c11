//! Exhaustive enumeration of small ultrametric spaces up to weak similarity,
//! the table of largest center sizes, and search harnesses for conjectures
//! about extremal spaces.

mod conjectures;
mod enumerate;
pub mod random;
mod shapes;
mod table;

pub use conjectures::{
    check_conjecture_1, check_conjecture_2, check_conjecture_3, ConjectureReport, Scope,
    SpaceEvidence, Verdict,
};
pub use enumerate::{enumerate_classes, EnumerationClass};
pub use shapes::{count_shapes, Shape};
pub use table::{max_center_table, BoundRow, BoundTable};

use crate::error::{Error, Result};

/// Knobs shared by the enumeration-based operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreConfig {
    /// Largest number of points to enumerate.
    pub cap: usize,
}

impl ExploreConfig {
    pub const DEFAULT_CAP: usize = 9;

    pub fn with_cap(cap: usize) -> Self {
        ExploreConfig { cap }
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "spaces have at least one point".into(),
            ));
        }
        if n > self.cap {
            return Err(Error::Resource(format!(
                "enumeration of {n}-point spaces exceeds the cap of {}",
                self.cap
            )));
        }
        Ok(())
    }
}

impl Default for ExploreConfig {
    fn default() -> Self {
        ExploreConfig {
            cap: Self::DEFAULT_CAP,
        }
    }
}
