//! Periodic tiling instances and the `.tile` text format.
//!
//! An instance describes an `L`-periodic family of unit cubes `[0,1)^n + t`
//! by the finitely many translation classes `t` lying in the fundamental box
//! `[0, L_1) x ... x [0, L_n)`. Coordinates are indexed from 0 in the library
//! API and from 1 in every text format.

use std::collections::BTreeSet;
use std::fmt;

use crate::rational::{ParseRationalError, Rational};

/// A translation vector `x: x_1 ... x_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileVector(pub Vec<Rational>);

impl TileVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        TileVector(coords)
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        TileVector(coords.iter().map(|&(p, q)| Rational::new(p, q)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, j: usize) -> Rational {
        self.0[j]
    }

    /// Reduces each coordinate into `[0, L_j)`.
    pub fn normalized(&self, period: &[u64]) -> TileVector {
        TileVector(
            self.0
                .iter()
                .zip(period)
                .map(|(x, &l)| x.rem_euclid(l))
                .collect(),
        )
    }
}

impl fmt::Display for TileVector {
    /// Space separated `p/q` coordinates.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, x) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TileVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("expected {expected} period entries, got {actual}")]
    PeriodArity { expected: usize, actual: usize },
    #[error("period entries must be positive")]
    NonPositivePeriod,
    #[error("tile {tile:?} has {actual} coordinates, expected {expected}")]
    TileArity {
        tile: TileVector,
        expected: usize,
        actual: usize,
    },
    #[error("duplicate tile {0:?}")]
    DuplicateTile(TileVector),
}

/// A malformed `.tile` document. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {detail}")]
pub struct ParseError {
    pub line: usize,
    pub detail: String,
}

impl ParseError {
    fn new(line: usize, detail: impl Into<String>) -> Self {
        ParseError {
            line,
            detail: detail.into(),
        }
    }
}

/// An `L`-periodic cube family given by its translation classes.
///
/// Tiles are normalized into the fundamental box, deduplicated and kept in
/// lexicographic order. Instances are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TilingInstance {
    period: Vec<u64>,
    tiles: Vec<TileVector>,
}

impl TilingInstance {
    /// Normalizes every tile mod `period`; two tiles landing on the same
    /// class are rejected as duplicates.
    pub fn new(period: Vec<u64>, tiles: Vec<TileVector>) -> Result<Self, InstanceError> {
        if period.is_empty() {
            return Err(InstanceError::ZeroDimension);
        }
        if period.contains(&0) {
            return Err(InstanceError::NonPositivePeriod);
        }
        let n = period.len();
        let mut set = BTreeSet::new();
        for t in tiles {
            if t.dim() != n {
                return Err(InstanceError::TileArity {
                    expected: n,
                    actual: t.dim(),
                    tile: t,
                });
            }
            let t = t.normalized(&period);
            if !set.insert(t.clone()) {
                return Err(InstanceError::DuplicateTile(t));
            }
        }
        Ok(TilingInstance {
            period,
            tiles: set.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.period.len()
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Tiles in lexicographic order.
    pub fn tiles(&self) -> &[TileVector] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, t: &TileVector) -> bool {
        self.tiles.binary_search(t).is_ok()
    }

    /// `prod_j L_j`, or `None` on overflow.
    pub fn volume(&self) -> Option<u64> {
        self.period
            .iter()
            .try_fold(1u64, |acc, &l| acc.checked_mul(l))
    }

    /// Renders the instance in `.tile` format, tiles in lexicographic order.
    pub fn to_tile_string(&self) -> String {
        let mut out = format!("dim {}\nperiod", self.dim());
        for l in &self.period {
            out.push_str(&format!(" {l}"));
        }
        out.push('\n');
        for t in &self.tiles {
            out.push_str(&format!("tile {t}\n"));
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a `.tile` document.
///
/// ```text
/// # half-offset bricks
/// dim 2
/// period 1 2
/// tile 0/1 0/1
/// tile 1/2 1/1
/// ```
pub fn parse_instance(text: &str) -> Result<TilingInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                strip_comment(l).split_whitespace().collect::<Vec<_>>(),
            )
        })
        .filter(|(_, words)| !words.is_empty());

    let (dim_line, words) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `dim` line"))?;
    let n = match words.as_slice() {
        ["dim", n] => n
            .parse::<usize>()
            .map_err(|_| ParseError::new(dim_line, format!("invalid dimension `{n}`")))?,
        _ => return Err(ParseError::new(dim_line, "expected `dim <n>`")),
    };
    if n == 0 {
        return Err(ParseError::new(dim_line, "dimension must be positive"));
    }

    let (period_line, words) = lines
        .next()
        .ok_or_else(|| ParseError::new(dim_line + 1, "missing `period` line"))?;
    if words.first() != Some(&"period") {
        return Err(ParseError::new(
            period_line,
            "expected `period <L_1> ... <L_n>`",
        ));
    }
    if words.len() - 1 != n {
        return Err(ParseError::new(
            period_line,
            format!("expected {n} period entries, got {}", words.len() - 1),
        ));
    }
    let mut period = Vec::with_capacity(n);
    for w in &words[1..] {
        let l: i64 = w
            .parse()
            .map_err(|_| ParseError::new(period_line, format!("invalid period `{w}`")))?;
        if l <= 0 {
            return Err(ParseError::new(
                period_line,
                format!("nonpositive period `{w}`"),
            ));
        }
        period.push(l as u64);
    }

    let mut seen = BTreeSet::new();
    for (line, words) in lines {
        if words[0] != "tile" {
            return Err(ParseError::new(
                line,
                format!("unexpected keyword `{}`", words[0]),
            ));
        }
        if words.len() - 1 != n {
            return Err(ParseError::new(
                line,
                format!("expected {n} coordinates, got {}", words.len() - 1),
            ));
        }
        let coords = words[1..]
            .iter()
            .map(|w| w.parse::<Rational>())
            .collect::<Result<Vec<_>, ParseRationalError>>()
            .map_err(|e| ParseError::new(line, e.to_string()))?;
        let t = TileVector(coords).normalized(&period);
        if !seen.insert(t.clone()) {
            return Err(ParseError::new(line, format!("duplicate tile {t:?}")));
        }
    }
    Ok(TilingInstance {
        period,
        tiles: seen.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_z1() {
        let x = parse_instance("dim 1\nperiod 1\ntile 0/1\n").unwrap();
        assert_eq!(x.dim(), 1);
        assert_eq!(x.period(), &[1]);
        assert_eq!(x.tiles(), &[TileVector::from_fractions(&[(0, 1)])]);
    }

    #[test]
    fn parses_brick_with_comments() {
        let text = "# bricks\n\ndim 2\nperiod 1 2   # two rows\ntile 0/1 0/1\ntile 1/2 1/1\n";
        let x = parse_instance(text).unwrap();
        assert_eq!(x.period(), &[1, 2]);
        assert_eq!(
            x.tiles(),
            &[
                TileVector::from_fractions(&[(0, 1), (0, 1)]),
                TileVector::from_fractions(&[(1, 2), (1, 1)]),
            ]
        );
    }

    #[test]
    fn rejects_duplicates() {
        let err = parse_instance("dim 2\nperiod 1 1\ntile 0/1 0/1\ntile 0/1 0/1\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.detail.contains("duplicate"));
    }

    #[test]
    fn duplicate_after_normalization() {
        let err = parse_instance("dim 1\nperiod 1\ntile 0/1\ntile 1/1\n").unwrap_err();
        assert_eq!(err.line, 4);
    }

    #[test]
    fn malformed_lines_report_numbers() {
        assert_eq!(parse_instance("dim 2\nperiod 1 0\n").unwrap_err().line, 2);
        assert_eq!(parse_instance("dim 2\nperiod 1\n").unwrap_err().line, 2);
        assert_eq!(
            parse_instance("dim 1\nperiod 1\ntile 0\n")
                .unwrap_err()
                .line,
            3
        );
        assert_eq!(
            parse_instance("dim 1\nperiod 1\ntile 0/1 0/1\n")
                .unwrap_err()
                .line,
            3
        );
        assert_eq!(
            parse_instance("dim 1\nperiod 1\ntile 1/0\n")
                .unwrap_err()
                .line,
            3
        );
        assert_eq!(
            parse_instance("dim 1\nperiod 1\ntile 2/4\n")
                .unwrap_err()
                .line,
            3
        );
        assert_eq!(parse_instance("period 1\n").unwrap_err().line, 1);
        assert_eq!(parse_instance("dim 0\n").unwrap_err().line, 1);
        assert_eq!(
            parse_instance("\n\ndim 1\nperiod -1\n").unwrap_err().line,
            4
        );
        assert!(parse_instance("").is_err());
    }

    #[test]
    fn serializer_sorts_and_normalizes() {
        let x = TilingInstance::new(
            vec![1, 2],
            vec![
                TileVector::from_fractions(&[(-1, 2), (3, 1)]),
                TileVector::from_fractions(&[(0, 1), (0, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(
            x.to_tile_string(),
            "dim 2\nperiod 1 2\ntile 0/1 0/1\ntile 1/2 1/1\n"
        );
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            TilingInstance::new(vec![], vec![]),
            Err(InstanceError::ZeroDimension)
        );
        assert_eq!(
            TilingInstance::new(vec![0], vec![]),
            Err(InstanceError::NonPositivePeriod)
        );
        assert!(matches!(
            TilingInstance::new(vec![1], vec![TileVector::from_fractions(&[(0, 1), (0, 1)])]),
            Err(InstanceError::TileArity { .. })
        ));
    }
}
