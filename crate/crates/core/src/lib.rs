//! Centers of distances of finite ultrametric spaces.
//!
//! A finite ultrametric space is stored as a validated distance matrix of
//! exact rationals ([`UltrametricSpace`]). From it the crate builds the
//! diametrical partition, the representing tree, and the center of distances
//! `C(X)` (three independent algorithms, see [`center`]). [`constructions`]
//! produces extremal and center-preserving spaces, and [`explore`] enumerates
//! all small spaces up to weak similarity to tabulate the largest possible
//! center size and to search for counterexamples to open conjectures.
//!
//! ```
//! use ultracenter::{center_bruteforce, UltrametricSpace};
//!
//! let y4 = UltrametricSpace::from_json(r#"{
//!     "points": ["a", "b", "c", "d"],
//!     "matrix": [["0","3","2","3"],["3","0","3","2"],["2","3","0","3"],["3","2","3","0"]]
//! }"#).unwrap();
//! assert_eq!(center_bruteforce(&y4).to_string(), "{0, 2, 3}");
//! ```

pub mod center;
pub mod constructions;
pub mod distance;
pub mod distance_set;
pub mod error;
pub mod explore;
pub mod partition;
pub mod similarity;
pub mod space;
pub mod tree;
pub mod validation;

pub use center::{
    center_bruteforce, center_from_tree, center_recursive, center_report, center_size_bound,
    CenterAlgorithm, CenterRegistry, CenterReport,
};
pub use constructions::{
    add_point, binary_word_space, double, realize_center_set, Construction, ConstructionRegistry,
    PointBudget,
};
pub use distance::DistanceValue;
pub use distance_set::DistanceSet;
pub use error::{Error, ErrorCategory, Result};
pub use partition::{diametrical_partition, is_complete_multipartite_certificate, Partition};
pub use similarity::{find_similarity, SimilarityWitness};
pub use space::{validate_space, RawSpace, SpaceViolation, UltrametricSpace};
pub use tree::{
    build_representing_tree, canonical_form, parse_canonical, realize_space, validate_tree,
    CanonicalMode, LabeledNode, LabeledRootedTree, RepresentingTree, TreeViolation,
};
pub use validation::ValidationReport;
