//! Finite ultrametric spaces: storage, axiom validation, diameters, distance
//! sets and open balls, plus the JSON and CSV file formats.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceValue;
use crate::distance_set::DistanceSet;
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// Space file contents before any axiom has been checked.
///
/// JSON form: `{"points": ["a", ...], "matrix": [["0", "3", ...], ...]}`.
/// CSV form: a header row of point names followed by the matrix rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpace {
    pub points: Vec<String>,
    pub matrix: Vec<Vec<DistanceValue>>,
}

/// One failed axiom. Indices refer to the declared point order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum SpaceViolation {
    /// `d(i, i) != 0`.
    ZeroDiagonal { indices: [usize; 1] },
    /// `d(i, j) != d(j, i)`.
    Symmetry { indices: [usize; 2] },
    /// `d(i, j) = 0` for `i != j`.
    Positivity { indices: [usize; 2] },
    /// `d(i, j) > max(d(i, k), d(k, j))`, reported as `[i, j, k]`.
    StrongTriangle { indices: [usize; 3] },
}

impl fmt::Display for SpaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceViolation::ZeroDiagonal { indices: [i] } => {
                write!(f, "zero diagonal fails at ({i},{i})")
            }
            SpaceViolation::Symmetry { indices: [i, j] } => {
                write!(f, "symmetry fails at ({i},{j})")
            }
            SpaceViolation::Positivity { indices: [i, j] } => {
                write!(f, "positivity fails at ({i},{j})")
            }
            SpaceViolation::StrongTriangle { indices: [i, j, k] } => {
                write!(f, "strong triangle inequality fails at ({i},{j}) via {k}")
            }
        }
    }
}

impl RawSpace {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let points: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        let mut matrix = Vec::with_capacity(points.len());
        for (row_no, record) in reader.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    cell.parse::<DistanceValue>()
                        .map_err(|e| Error::Structural(format!("row {row_no}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            matrix.push(row);
        }
        Ok(RawSpace { points, matrix })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("space serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.points).expect("in-memory write");
        for row in &self.matrix {
            writer
                .write_record(row.iter().map(ToString::to_string))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    /// Shape and naming checks that precede axiom validation.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.points.len();
        if n == 0 {
            return Err(Error::Structural("space has no points".into()));
        }
        if self.matrix.len() != n {
            return Err(Error::Structural(format!(
                "matrix has {} rows for {n} points",
                self.matrix.len()
            )));
        }
        if let Some((i, row)) = self.matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Structural(format!(
                "matrix row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, name) in self.points.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Structural(format!("point {i} has an empty name")));
            }
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::Structural(format!(
                    "duplicate point name {name:?} at positions {j} and {i}"
                )));
            }
        }
        Ok(())
    }

    /// Checks all ultrametric axioms and lists every violation.
    #[allow(clippy::needless_range_loop)]
    pub fn validate(&self) -> Result<ValidationReport<SpaceViolation>> {
        self.check_structure()?;
        let m = &self.matrix;
        let n = m.len();
        let mut violations = Vec::new();
        for i in 0..n {
            if !m[i][i].is_zero() {
                violations.push(SpaceViolation::ZeroDiagonal { indices: [i] });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if m[i][j] != m[j][i] {
                    violations.push(SpaceViolation::Symmetry { indices: [i, j] });
                }
                if m[i][j].is_zero() || m[j][i].is_zero() {
                    violations.push(SpaceViolation::Positivity { indices: [i, j] });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let dij = m[i][j];
                for k in (0..n).filter(|&k| k != i && k != j) {
                    if dij > m[i][k].max(m[k][j]) {
                        violations.push(SpaceViolation::StrongTriangle { indices: [i, j, k] });
                    }
                }
            }
        }
        Ok(ValidationReport::from_violations(violations))
    }
}

/// Validates a point list and distance matrix. Shape problems are returned as
/// structural errors; axiom failures are listed in the report.
pub fn validate_space(
    points: &[String],
    matrix: &[Vec<DistanceValue>],
) -> Result<ValidationReport<SpaceViolation>> {
    RawSpace {
        points: points.to_vec(),
        matrix: matrix.to_vec(),
    }
    .validate()
}

/// A validated finite ultrametric space.
///
/// Points are addressed by their position in the declared order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct UltrametricSpace {
    points: Vec<String>,
    matrix: Vec<DistanceValue>,
}

impl TryFrom<RawSpace> for UltrametricSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        let report = raw.validate()?;
        if !report.valid {
            return Err(Error::NotUltrametric(report));
        }
        let matrix = raw.matrix.into_iter().flatten().collect();
        Ok(UltrametricSpace {
            points: raw.points,
            matrix,
        })
    }
}

impl From<UltrametricSpace> for RawSpace {
    fn from(space: UltrametricSpace) -> Self {
        space.to_raw()
    }
}

impl fmt::Debug for UltrametricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UltrametricSpace")
            .field("points", &self.points)
            .field("matrix", &self.to_raw().matrix)
            .finish()
    }
}

impl UltrametricSpace {
    pub fn new(points: Vec<String>, matrix: Vec<Vec<DistanceValue>>) -> Result<Self> {
        RawSpace { points, matrix }.try_into()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        RawSpace::from_json(text)?.try_into()
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        RawSpace::from_csv(text)?.try_into()
    }

    /// Builds a space from a distance function without checking the axioms.
    /// Callers guarantee ultrametricity (for example by realizing a valid tree).
    pub(crate) fn from_fn_unchecked(
        points: Vec<String>,
        mut distance: impl FnMut(usize, usize) -> DistanceValue,
    ) -> Self {
        let n = points.len();
        let mut matrix = vec![DistanceValue::ZERO; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = distance(i, j);
                matrix[i * n + j] = d;
                matrix[j * n + i] = d;
            }
        }
        let space = UltrametricSpace { points, matrix };
        debug_assert!(
            space.len() > 24 || space.to_raw().validate().map(|r| r.valid).unwrap_or(false),
            "from_fn_unchecked produced an invalid space"
        );
        space
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: a space has at least one point.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, index: usize) -> &str {
        &self.points[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    /// Resolves point names to indices.
    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|name| {
                self.index_of(name.as_ref())
                    .ok_or_else(|| Error::UnknownPoint(name.as_ref().to_owned()))
            })
            .collect()
    }

    /// Panics if an index is out of range.
    pub fn distance(&self, i: usize, j: usize) -> DistanceValue {
        let n = self.len();
        assert!(i < n && j < n, "point index out of range");
        self.matrix[i * n + j]
    }

    pub fn row(&self, i: usize) -> &[DistanceValue] {
        let n = self.len();
        &self.matrix[i * n..(i + 1) * n]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange(i))
        }
    }

    /// Largest distance between two points of `subset`; zero for singletons.
    pub fn diameter(&self, subset: &[usize]) -> Result<DistanceValue> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &i in subset {
            self.check_index(i)?;
        }
        Ok(self.diameter_unchecked(subset))
    }

    pub(crate) fn diameter_unchecked(&self, subset: &[usize]) -> DistanceValue {
        let mut diam = DistanceValue::ZERO;
        for (pos, &i) in subset.iter().enumerate() {
            let row = self.row(i);
            for &j in &subset[pos + 1..] {
                diam = diam.max(row[j]);
            }
        }
        diam
    }

    pub fn full_diameter(&self) -> DistanceValue {
        self.matrix
            .iter()
            .copied()
            .max()
            .unwrap_or(DistanceValue::ZERO)
    }

    /// `D(X)` without a focus, `D_p(X)` with focus `p`.
    pub fn distance_set(&self, focus: Option<usize>) -> Result<DistanceSet> {
        match focus {
            None => Ok(self.matrix.iter().copied().collect()),
            Some(p) => {
                self.check_index(p)?;
                Ok(self.point_distance_set(p))
            }
        }
    }

    pub(crate) fn point_distance_set(&self, p: usize) -> DistanceSet {
        self.row(p).iter().copied().collect()
    }

    /// Points at distance strictly less than `radius` from `center`.
    pub fn open_ball(&self, center: usize, radius: DistanceValue) -> Result<Vec<usize>> {
        self.check_index(center)?;
        if radius.is_zero() {
            return Err(Error::NonPositiveRadius);
        }
        Ok(self
            .row(center)
            .iter()
            .enumerate()
            .filter(|(_, d)| **d < radius)
            .map(|(i, _)| i)
            .collect())
    }

    /// Restriction of the metric to `subset`, in the given order.
    pub fn subspace(&self, subset: &[usize]) -> Result<UltrametricSpace> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = vec![false; self.len()];
        for &i in subset {
            self.check_index(i)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!("point {i} listed twice")));
            }
        }
        let points = subset.iter().map(|&i| self.points[i].clone()).collect();
        Ok(UltrametricSpace::from_fn_unchecked(points, |a, b| {
            self.distance(subset[a], subset[b])
        }))
    }

    /// Same metric under new point names.
    pub fn renamed(&self, names: Vec<String>) -> Result<UltrametricSpace> {
        let raw = RawSpace {
            points: names,
            matrix: self.to_raw().matrix,
        };
        raw.check_structure()?;
        Ok(UltrametricSpace {
            points: raw.points,
            matrix: self.matrix.clone(),
        })
    }

    pub fn to_raw(&self) -> RawSpace {
        let n = self.len();
        RawSpace {
            points: self.points.clone(),
            matrix: self.matrix.chunks(n).map(<[_]>::to_vec).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_raw().to_json()
    }

    pub fn to_csv(&self) -> String {
        self.to_raw().to_csv()
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn dv(s: &str) -> DistanceValue {
        s.parse().unwrap()
    }

    #[test]
    fn x4_is_valid() {
        let report = x4().to_raw().validate().unwrap();
        assert!(report.valid);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn zero_off_diagonal_breaks_positivity() {
        let raw = RawSpace {
            points: vec!["p".into(), "q".into()],
            matrix: vec![vec![dv("0"), dv("0")], vec![dv("0"), dv("0")]],
        };
        let report = raw.validate().unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.violations,
            vec![SpaceViolation::Positivity { indices: [0, 1] }]
        );
    }

    #[test]
    fn metric_but_not_ultrametric() {
        let raw = RawSpace {
            points: vec!["p".into(), "q".into(), "r".into()],
            matrix: vec![
                vec![dv("0"), dv("3/2"), dv("1")],
                vec![dv("3/2"), dv("0"), dv("1")],
                vec![dv("1"), dv("1"), dv("0")],
            ],
        };
        let report = raw.validate().unwrap();
        assert!(!report.valid);
        assert_eq!(
            report.violations,
            vec![SpaceViolation::StrongTriangle { indices: [0, 1, 2] }]
        );
        assert!(matches!(
            UltrametricSpace::try_from(raw),
            Err(Error::NotUltrametric(_))
        ));
    }

    #[test]
    fn lists_every_violation() {
        let raw = RawSpace {
            points: vec!["p".into(), "q".into(), "r".into()],
            matrix: vec![
                vec![dv("1"), dv("0"), dv("5")],
                vec![dv("2"), dv("0"), dv("1")],
                vec![dv("5"), dv("1"), dv("0")],
            ],
        };
        let report = raw.validate().unwrap();
        let kinds: Vec<_> = report.violations.iter().map(|v| v.to_string()).collect();
        assert!(kinds.iter().any(|k| k.starts_with("zero diagonal")));
        assert!(kinds.iter().any(|k| k.starts_with("symmetry")));
        assert!(kinds.iter().any(|k| k.starts_with("positivity")));
        assert!(kinds.iter().any(|k| k.starts_with("strong triangle")));
    }

    #[test]
    fn structural_errors_are_not_axiom_violations() {
        let ragged = RawSpace {
            points: vec!["p".into(), "q".into()],
            matrix: vec![vec![dv("0"), dv("1")], vec![dv("1")]],
        };
        assert!(matches!(ragged.validate(), Err(Error::Structural(_))));
        let dup = RawSpace {
            points: vec!["p".into(), "p".into()],
            matrix: vec![vec![dv("0"), dv("1")], vec![dv("1"), dv("0")]],
        };
        assert!(matches!(dup.validate(), Err(Error::Structural(_))));
        assert!(matches!(
            RawSpace::from_json(r#"{"points":["a"],"matrix":[["zero"]]}"#),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            RawSpace::from_json(r#"{"points":["a","b"],"matrix":[[0, 0.5],[0.5, 0]]}"#),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn diameters() {
        let x = x4();
        assert_eq!(x.diameter(&[0, 1, 2, 3]).unwrap(), dv("3"));
        assert_eq!(x.diameter(&[0]).unwrap(), DistanceValue::ZERO);
        let ac = x.indices_of(&["a", "c"]).unwrap();
        assert_eq!(x.diameter(&ac).unwrap(), dv("1"));
        assert!(matches!(x.diameter(&[]), Err(Error::EmptySubset)));
        assert!(matches!(x.diameter(&[7]), Err(Error::PointOutOfRange(7))));
    }

    #[test]
    fn distance_sets() {
        let x = x4();
        assert_eq!(x.distance_set(None).unwrap().to_string(), "{0, 1, 2, 3}");
        assert_eq!(x.distance_set(Some(0)).unwrap().to_string(), "{0, 1, 3}");
        assert!(x.distance_set(Some(4)).is_err());
        let single = space(&["s"], &[&[0]]);
        assert_eq!(single.distance_set(None).unwrap().to_string(), "{0}");
    }

    #[test]
    fn open_balls() {
        let x = x4();
        let a = x.index_of("a").unwrap();
        let c = x.index_of("c").unwrap();
        assert_eq!(x.open_ball(a, dv("3")).unwrap(), vec![a, c]);
        assert_eq!(
            x.open_ball(a, dv("3")).unwrap(),
            x.open_ball(c, dv("3")).unwrap()
        );
        assert_eq!(x.open_ball(a, dv("7/2")).unwrap(), vec![0, 1, 2, 3]);
        assert!(matches!(
            x.open_ball(a, DistanceValue::ZERO),
            Err(Error::NonPositiveRadius)
        ));
    }

    #[test]
    fn json_and_csv_round_trip() {
        let x = x4();
        let json = x.to_json();
        assert_eq!(UltrametricSpace::from_json(&json).unwrap(), x);
        let csv = x.to_csv();
        assert!(csv.starts_with("a,b,c,d\n"));
        assert_eq!(UltrametricSpace::from_csv(&csv).unwrap(), x);
        let decimal = r#"{"points":["u","v"],"matrix":[["0","0.25"],["1/4","0"]]}"#;
        let s = UltrametricSpace::from_json(decimal).unwrap();
        assert_eq!(s.distance(0, 1), DistanceValue::new(1, 4).unwrap());
    }

    #[test]
    fn subspace_restricts_metric() {
        let x = x4();
        let bd = x.subspace(&[1, 3]).unwrap();
        assert_eq!(bd.points(), ["b", "d"]);
        assert_eq!(bd.distance(0, 1), dv("2"));
    }
}
