//! Evidence gathering for three open questions about extremal spaces, those
//! with `2^l` points and a center of the largest possible size `l + 1`:
//!
//! 1. an extremal `X` and any `Y` of the same size have equally large centers
//!    exactly when they are weakly similar;
//! 2. two extremal spaces have equal centers exactly when they are isometric;
//! 3. every finite `A ∋ 0` is `D(X) = C(X)` for some finite space `X`.
//!
//! The harnesses search small cases; they do not settle the questions.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::center::{center_bruteforce, center_report, CenterReport};
use crate::constructions::{realize_center_set, PointBudget};
use crate::distance::DistanceValue;
use crate::distance_set::DistanceSet;
use crate::error::{Error, Result};
use crate::similarity::find_similarity;
use crate::space::{RawSpace, UltrametricSpace};
use crate::tree::{build_representing_tree, canonical_form, realize_space, CanonicalMode};

use super::{enumerate_classes, ExploreConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    /// Spaces on `2^l` points.
    Exponent {
        l: u32,
        points: usize,
    },
    /// As above, with labels drawn from `{1, ..., alphabet}`.
    ExponentAlphabet {
        l: u32,
        points: usize,
        alphabet: u64,
    },
    CenterSet {
        set: DistanceSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceEvidence {
    /// Weak-similarity key of the space's class.
    pub class_key: String,
    pub space: RawSpace,
    pub report: CenterReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NoCounterexample,
    Counterexample {
        reason: String,
        first: Box<SpaceEvidence>,
        second: Box<SpaceEvidence>,
    },
    WitnessVerified {
        space: RawSpace,
        report: CenterReport,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture: u8,
    pub scope: Scope,
    pub verdict: Verdict,
    /// Whether every case in scope was examined.
    pub exhaustive: bool,
    pub spaces_examined: usize,
    pub extremal_spaces: usize,
    pub pairs_checked: usize,
}

struct Candidate {
    key: String,
    space: UltrametricSpace,
    center: DistanceSet,
}

impl Candidate {
    fn new(key: String, space: UltrametricSpace) -> Self {
        Candidate {
            center: center_bruteforce(&space),
            key,
            space,
        }
    }

    fn evidence(&self) -> Result<Box<SpaceEvidence>> {
        Ok(Box::new(SpaceEvidence {
            class_key: self.key.clone(),
            space: self.space.to_raw(),
            report: center_report(&self.space)?,
        }))
    }
}

fn points_for(l: u32, config: &ExploreConfig) -> Result<usize> {
    let points = 1usize
        .checked_shl(l)
        .filter(|_| l < usize::BITS - 1)
        .ok_or_else(|| Error::Resource(format!("2^{l} points")))?;
    config.check(points)?;
    Ok(points)
}

/// Extremal `X` against every other class `Y` on `2^l` points: equal center
/// sizes must coincide with weak similarity.
pub fn check_conjecture_1(l: u32, config: &ExploreConfig) -> Result<ConjectureReport> {
    let points = points_for(l, config)?;
    let extremal_size = l as usize + 1;
    let candidates: Vec<Candidate> = enumerate_classes(points, config)?
        .into_iter()
        .map(|class| {
            Ok(Candidate::new(
                class.key,
                realize_space(&class.canonical_tree, None)?,
            ))
        })
        .collect::<Result<_>>()?;
    let extremal = candidates
        .iter()
        .filter(|c| c.center.len() == extremal_size)
        .count();
    let mut pairs = 0;
    for (i, x) in candidates.iter().enumerate() {
        for y in &candidates[i + 1..] {
            if x.center.len() != extremal_size && y.center.len() != extremal_size {
                continue;
            }
            pairs += 1;
            let equal = x.center.len() == y.center.len();
            let similar =
                find_similarity(&x.space, &y.space, CanonicalMode::WeakSimilarity)?.is_some();
            if equal != similar {
                let reason = if equal {
                    "equal center sizes but not weakly similar"
                } else {
                    "weakly similar but center sizes differ"
                };
                return Ok(ConjectureReport {
                    conjecture: 1,
                    scope: Scope::Exponent { l, points },
                    verdict: Verdict::Counterexample {
                        reason: reason.into(),
                        first: x.evidence()?,
                        second: y.evidence()?,
                    },
                    exhaustive: false,
                    spaces_examined: candidates.len(),
                    extremal_spaces: extremal,
                    pairs_checked: pairs,
                });
            }
        }
    }
    Ok(ConjectureReport {
        conjecture: 1,
        scope: Scope::Exponent { l, points },
        verdict: Verdict::NoCounterexample,
        exhaustive: true,
        spaces_examined: candidates.len(),
        extremal_spaces: extremal,
        pairs_checked: pairs,
    })
}

/// Every class on `2^l` points realized with each strictly increasing
/// assignment of values from `{1, ..., alphabet}` to its ranks; among the
/// extremal realizations, equal centers must coincide with isometry.
pub fn check_conjecture_2(
    l: u32,
    alphabet: u64,
    config: &ExploreConfig,
) -> Result<ConjectureReport> {
    if alphabet == 0 {
        return Err(Error::InvalidParameter(
            "label alphabet must be nonempty".into(),
        ));
    }
    let points = points_for(l, config)?;
    let scope = Scope::ExponentAlphabet {
        l,
        points,
        alphabet,
    };
    let extremal_size = l as usize + 1;
    let mut examined = 0;
    let mut extremal: Vec<Candidate> = Vec::new();
    for class in enumerate_classes(points, config)? {
        let ranks = class.canonical_tree.label_set().len() - 1;
        for values in (1..=alphabet).combinations(ranks) {
            let tree = class.canonical_tree.map_labels(|rank| {
                if rank.is_zero() {
                    rank
                } else {
                    DistanceValue::from_integer(values[rank.numerator() as usize - 1])
                }
            });
            let candidate = Candidate::new(class.key.clone(), realize_space(&tree, None)?);
            examined += 1;
            if candidate.center.len() == extremal_size {
                extremal.push(candidate);
            }
        }
    }
    let mut pairs = 0;
    for (i, x) in extremal.iter().enumerate() {
        for y in &extremal[i + 1..] {
            pairs += 1;
            let equal = x.center == y.center;
            let isometric = find_similarity(&x.space, &y.space, CanonicalMode::Isometry)?.is_some();
            if equal != isometric {
                let reason = if equal {
                    "equal centers but not isometric"
                } else {
                    "isometric but centers differ"
                };
                return Ok(ConjectureReport {
                    conjecture: 2,
                    scope,
                    verdict: Verdict::Counterexample {
                        reason: reason.into(),
                        first: x.evidence()?,
                        second: y.evidence()?,
                    },
                    exhaustive: false,
                    spaces_examined: examined,
                    extremal_spaces: extremal.len(),
                    pairs_checked: pairs,
                });
            }
        }
    }
    Ok(ConjectureReport {
        conjecture: 2,
        scope,
        verdict: Verdict::NoCounterexample,
        exhaustive: true,
        spaces_examined: examined,
        extremal_spaces: extremal.len(),
        pairs_checked: pairs,
    })
}

/// Builds and checks a space with `D(X) = C(X) = A`.
pub fn check_conjecture_3(set: &DistanceSet, budget: PointBudget) -> Result<ConjectureReport> {
    let space = realize_center_set(set, budget)?;
    let report = center_report(&space)?;
    Ok(ConjectureReport {
        conjecture: 3,
        scope: Scope::CenterSet { set: set.clone() },
        verdict: Verdict::WitnessVerified {
            space: space.to_raw(),
            report,
        },
        exhaustive: true,
        spaces_examined: 1,
        extremal_spaces: 0,
        pairs_checked: 0,
    })
}

fn encoding(space: &UltrametricSpace, mode: CanonicalMode) -> Result<String> {
    if space.len() == 1 {
        return Ok("0".into());
    }
    canonical_form(build_representing_tree(space)?.labeled(), mode)
}

impl ConjectureReport {
    /// Recomputes the verdict's attached data from scratch: a counterexample
    /// must still refute, a witness must still have `D = C = A`. Comparisons
    /// use canonical encodings rather than the search's tree matching.
    pub fn reverify(&self) -> Result<bool> {
        match &self.verdict {
            Verdict::NoCounterexample => Ok(true),
            Verdict::WitnessVerified { space, report } => {
                let Scope::CenterSet { set } = &self.scope else {
                    return Ok(false);
                };
                let space = UltrametricSpace::try_from(space.clone())?;
                let distances = space.distance_set(None)?;
                let center = center_bruteforce(&space);
                Ok(&distances == set && &center == set && report.center == center)
            }
            Verdict::Counterexample { first, second, .. } => {
                let x = UltrametricSpace::try_from(first.space.clone())?;
                let y = UltrametricSpace::try_from(second.space.clone())?;
                let cx = center_bruteforce(&x);
                let cy = center_bruteforce(&y);
                if cx != first.report.center || cy != second.report.center {
                    return Ok(false);
                }
                match self.scope {
                    Scope::Exponent { l, points } => {
                        let extremal = l as usize + 1;
                        if x.len() != points || y.len() != points {
                            return Ok(false);
                        }
                        if cx.len() != extremal && cy.len() != extremal {
                            return Ok(false);
                        }
                        let mode = CanonicalMode::WeakSimilarity;
                        let similar = encoding(&x, mode)? == encoding(&y, mode)?;
                        Ok((cx.len() == cy.len()) != similar)
                    }
                    Scope::ExponentAlphabet { l, points, .. } => {
                        let extremal = l as usize + 1;
                        if x.len() != points || y.len() != points {
                            return Ok(false);
                        }
                        if cx.len() != extremal || cy.len() != extremal {
                            return Ok(false);
                        }
                        let mode = CanonicalMode::Isometry;
                        let isometric = encoding(&x, mode)? == encoding(&y, mode)?;
                        Ok((cx == cy) != isometric)
                    }
                    Scope::CenterSet { .. } => Ok(false),
                }
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let scope = match &self.scope {
            Scope::Exponent { l, points } => format!("l = {l} ({points} points)"),
            Scope::ExponentAlphabet {
                l,
                points,
                alphabet,
            } => {
                format!("l = {l} ({points} points), labels from 1..={alphabet}")
            }
            Scope::CenterSet { set } => format!("A = {set}"),
        };
        let _ = writeln!(out, "conjecture {}: {scope}", self.conjecture);
        match &self.verdict {
            Verdict::NoCounterexample => {
                let _ = writeln!(out, "verdict: no counterexample");
            }
            Verdict::Counterexample {
                reason,
                first,
                second,
            } => {
                let _ = writeln!(out, "verdict: counterexample ({reason})");
                for e in [first, second] {
                    let _ = writeln!(out, "  class {}: C = {}", e.class_key, e.report.center);
                }
            }
            Verdict::WitnessVerified { space, report } => {
                let _ = writeln!(
                    out,
                    "verdict: witness verified on {} points, D = C = {}",
                    space.points.len(),
                    report.center
                );
            }
        }
        let _ = writeln!(out, "exhaustive: {}", self.exhaustive);
        let _ = writeln!(
            out,
            "spaces examined: {}, extremal: {}, pairs checked: {}",
            self.spaces_examined, self.extremal_spaces, self.pairs_checked
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(values: &[u64]) -> DistanceSet {
        values.iter().map(|&v| DistanceValue::from(v)).collect()
    }

    #[test]
    fn two_point_cases_hold() {
        let config = ExploreConfig::default();
        let one = check_conjecture_1(1, &config).unwrap();
        assert_eq!(one.verdict, Verdict::NoCounterexample);
        assert!(one.exhaustive);
        let two = check_conjecture_2(1, 2, &config).unwrap();
        assert_eq!(two.verdict, Verdict::NoCounterexample);
        assert_eq!(two.spaces_examined, 2);
        assert_eq!(two.extremal_spaces, 2);
        assert_eq!(two.pairs_checked, 1);
    }

    #[test]
    fn center_set_witnesses() {
        let report = check_conjecture_3(&set(&[0, 3]), PointBudget::DEFAULT).unwrap();
        let Verdict::WitnessVerified { space, .. } = &report.verdict else {
            panic!()
        };
        assert_eq!(space.points.len(), 2);
        assert!(report.reverify().unwrap());
        let big = check_conjecture_3(&set(&[0, 1, 2, 5, 9]), PointBudget::DEFAULT).unwrap();
        assert!(big.reverify().unwrap());
        assert!(check_conjecture_3(&set(&[1, 2]), PointBudget::DEFAULT).is_err());
    }

    #[test]
    fn cap_applies() {
        let config = ExploreConfig::with_cap(4);
        assert!(matches!(
            check_conjecture_1(3, &config),
            Err(Error::Resource(_))
        ));
        assert!(check_conjecture_2(2, 0, &config).is_err());
    }

    #[test]
    fn tampered_counterexample_does_not_reverify() {
        let config = ExploreConfig::default();
        let classes = enumerate_classes(2, &config).unwrap();
        let space = realize_space(&classes[0].canonical_tree, None).unwrap();
        let evidence = Candidate::new(classes[0].key.clone(), space)
            .evidence()
            .unwrap();
        let report = ConjectureReport {
            conjecture: 1,
            scope: Scope::Exponent { l: 1, points: 2 },
            verdict: Verdict::Counterexample {
                reason: "made up".into(),
                first: evidence.clone(),
                second: evidence,
            },
            exhaustive: false,
            spaces_examined: 1,
            extremal_spaces: 1,
            pairs_checked: 1,
        };
        assert!(!report.reverify().unwrap());
    }
}
