//! Columns, l-columns and twin faces.
//!
//! A column in direction `i` is a chain of classes `b, b + e_i, ...,
//! b + (L_i - 1) e_i` that are all tiles; its periodic lifts are the
//! infinite column `{[0,1)^n + b + k e_i : k in Z}`. With `L_i = 1` a single
//! class already is one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::instance::{TileVector, TilingInstance};
use crate::rational::Rational;
use crate::verify::{verify, VerifyFailure};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DetectError {
    #[error("instance is not a tiling: {0:?}")]
    NotATiling(VerifyFailure),
    #[error("l = {l} must be below the dimension {dim}")]
    LevelOutOfRange { l: usize, dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColumnWitness {
    pub direction: usize,
    /// The member with the smallest coordinate-`direction` value.
    pub base: TileVector,
    /// Members by increasing coordinate-`direction` value.
    pub members: Vec<TileVector>,
    /// Coordinates other than `direction` on which all members agree.
    pub constant_coords: Vec<usize>,
}

impl fmt::Display for ColumnWitness {
    /// `column dir=<i> base=<p/q ...> members=<count>`, `i` 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "column dir={} base={} members={}",
            self.direction + 1,
            self.base,
            self.members.len()
        )
    }
}

/// Two classes whose cubes share a complete (n-1)-face orthogonal to
/// `direction`; `u == v` when `L_direction = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceWitness {
    pub direction: usize,
    pub u: TileVector,
    pub v: TileVector,
}

impl fmt::Display for FaceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "face dir={} u={} v={}",
            self.direction + 1,
            self.u,
            self.v
        )
    }
}

fn require_tiling(instance: &TilingInstance) -> Result<(), DetectError> {
    match verify(instance).failure {
        None => Ok(()),
        Some(f) => Err(DetectError::NotATiling(f)),
    }
}

fn with_coord(t: &TileVector, j: usize, x: Rational) -> TileVector {
    let mut c = t.coords().to_vec();
    c[j] = x;
    TileVector(c)
}

/// Every column, sorted by `(direction, base)`.
pub fn find_columns(instance: &TilingInstance) -> Result<Vec<ColumnWitness>, DetectError> {
    require_tiling(instance)?;
    let n = instance.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let l = instance.period()[i] as i64;
        for base in instance.tiles() {
            let start = base.get(i);
            if start.floor() != 0 {
                continue;
            }
            let members: Vec<TileVector> = (0..l)
                .map(|k| with_coord(base, i, start + Rational::from_integer(k)))
                .collect();
            if members.iter().all(|m| instance.contains(m)) {
                out.push(ColumnWitness {
                    direction: i,
                    base: base.clone(),
                    members,
                    constant_coords: (0..n).filter(|&j| j != i).collect(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every l-column, read as "at least `l` constant coordinates".
///
/// For each direction `i`, each set `C` of at least `l` other coordinates,
/// each value assignment on `C` and each coset of coordinate `i`, the
/// tiles matching the assignment and the coset are collected; when they
/// reach every value of the coset's chain, one tile per chain value (the
/// lexicographically smallest) forms the witness. Witnesses with the same
/// direction and member set are reported once. With `exact`, only
/// witnesses whose members agree on exactly `l` coordinates besides `i`
/// are kept.
pub fn find_l_columns(
    instance: &TilingInstance,
    l: usize,
    exact: bool,
) -> Result<Vec<ColumnWitness>, DetectError> {
    require_tiling(instance)?;
    let n = instance.dim();
    if l >= n {
        return Err(DetectError::LevelOutOfRange { l, dim: n });
    }
    let mut found: BTreeSet<ColumnWitness> = BTreeSet::new();
    for i in 0..n {
        let chain_len = instance.period()[i] as usize;
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for mask in 0u32..(1 << others.len()) {
            if (mask.count_ones() as usize) < l {
                continue;
            }
            let fixed: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &j)| j)
                .collect();
            // (assignment on C, coset) -> chain value -> smallest tile
            let mut groups: BTreeMap<(Vec<Rational>, Rational), BTreeMap<Rational, &TileVector>> =
                BTreeMap::new();
            for t in instance.tiles() {
                let key = (fixed.iter().map(|&j| t.get(j)).collect(), t.get(i).fract());
                groups.entry(key).or_default().entry(t.get(i)).or_insert(t);
            }
            for chain in groups.values() {
                if chain.len() != chain_len {
                    continue;
                }
                let members: Vec<TileVector> = chain.values().map(|&t| t.clone()).collect();
                let constant_coords: Vec<usize> = others
                    .iter()
                    .copied()
                    .filter(|&j| members.iter().all(|m| m.get(j) == members[0].get(j)))
                    .collect();
                found.insert(ColumnWitness {
                    direction: i,
                    base: members[0].clone(),
                    members,
                    constant_coords,
                });
            }
        }
    }
    Ok(found
        .into_iter()
        .filter(|w| !exact || w.constant_coords.len() == l)
        .collect())
}

/// All twin-face pairs, sorted by `(direction, u, v)` with `u <= v`.
pub fn find_twin_faces(instance: &TilingInstance) -> Result<Vec<FaceWitness>, DetectError> {
    require_tiling(instance)?;
    let n = instance.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let l = instance.period()[i] as i64;
        for (a, u) in instance.tiles().iter().enumerate() {
            if l == 1 {
                out.push(FaceWitness {
                    direction: i,
                    u: u.clone(),
                    v: u.clone(),
                });
                continue;
            }
            for v in &instance.tiles()[a + 1..] {
                let rest_equal = (0..n).all(|j| j == i || u.get(j) == v.get(j));
                let adjacent = u
                    .get(i)
                    .integer_difference(&v.get(i))
                    .map(|d| d.rem_euclid(l))
                    .is_some_and(|r| r == 1 || r == l - 1);
                if rest_equal && adjacent {
                    out.push(FaceWitness {
                        direction: i,
                        u: u.clone(),
                        v: v.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Number of columns per direction.
pub fn column_census(instance: &TilingInstance) -> Result<Vec<usize>, DetectError> {
    let mut census = vec![0; instance.dim()];
    for w in find_columns(instance)? {
        census[w.direction] += 1;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn tv(c: &[(i64, i64)]) -> TileVector {
        TileVector::from_fractions(c)
    }

    fn z2() -> TilingInstance {
        parse_instance("dim 2\nperiod 1 1\ntile 0/1 0/1\n").unwrap()
    }

    fn brick() -> TilingInstance {
        parse_instance("dim 2\nperiod 1 2\ntile 0/1 0/1\ntile 1/2 1/1\n").unwrap()
    }

    fn four() -> TilingInstance {
        parse_instance(
            "dim 2\nperiod 2 2\ntile 0/1 0/1\ntile 1/1 0/1\ntile 1/2 1/1\ntile 3/2 1/1\n",
        )
        .unwrap()
    }

    #[test]
    fn z2_columns() {
        let cols = find_columns(&z2()).unwrap();
        assert_eq!(cols.len(), 2);
        assert_eq!(cols[0].direction, 0);
        assert_eq!(cols[1].direction, 1);
        assert!(cols.iter().all(|c| c.base == tv(&[(0, 1), (0, 1)])));
        assert_eq!(column_census(&z2()).unwrap(), vec![1, 1]);
    }

    #[test]
    fn brick_columns() {
        let cols = find_columns(&brick()).unwrap();
        let bases: Vec<_> = cols.iter().map(|c| (c.direction, c.base.clone())).collect();
        assert_eq!(
            bases,
            vec![(0, tv(&[(0, 1), (0, 1)])), (0, tv(&[(1, 2), (1, 1)]))]
        );
        assert_eq!(column_census(&brick()).unwrap(), vec![2, 0]);
        assert_eq!(cols[0].to_string(), "column dir=1 base=0/1 0/1 members=1");
    }

    #[test]
    fn four_tile_columns() {
        let cols = find_columns(&four()).unwrap();
        assert_eq!(cols.len(), 2);
        assert_eq!(
            cols[0].members,
            vec![tv(&[(0, 1), (0, 1)]), tv(&[(1, 1), (0, 1)])]
        );
        assert_eq!(
            cols[1].members,
            vec![tv(&[(1, 2), (1, 1)]), tv(&[(3, 2), (1, 1)])]
        );
        assert_eq!(column_census(&four()).unwrap(), vec![2, 0]);
    }

    #[test]
    fn rejects_non_tilings() {
        let bad = parse_instance("dim 2\nperiod 2 1\ntile 0/1 0/1\ntile 1/2 0/1\n").unwrap();
        assert!(matches!(
            find_columns(&bad),
            Err(DetectError::NotATiling(_))
        ));
        assert!(matches!(
            find_twin_faces(&bad),
            Err(DetectError::NotATiling(_))
        ));
        assert!(matches!(
            find_l_columns(&bad, 0, false),
            Err(DetectError::NotATiling(_))
        ));
    }

    #[test]
    fn top_level_l_columns_are_columns() {
        for x in [z2(), brick(), four()] {
            assert_eq!(
                find_l_columns(&x, x.dim() - 1, false).unwrap(),
                find_columns(&x).unwrap()
            );
        }
    }

    #[test]
    fn l_zero_includes_direction_one_chains() {
        let ws = find_l_columns(&brick(), 0, false).unwrap();
        for base in [tv(&[(0, 1), (0, 1)]), tv(&[(1, 2), (1, 1)])] {
            assert!(ws.iter().any(|w| w.direction == 0 && w.base == base));
        }
    }

    #[test]
    fn four_tile_one_column() {
        let ws = find_l_columns(&four(), 1, false).unwrap();
        assert!(ws
            .iter()
            .any(|w| w.direction == 0
                && w.members == vec![tv(&[(0, 1), (0, 1)]), tv(&[(1, 1), (0, 1)])]));
        assert!(matches!(
            find_l_columns(&four(), 2, false),
            Err(DetectError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn exact_level_filter() {
        // Direction 2 chains of the four-tile instance: coordinate 1 varies.
        let ws = find_l_columns(&four(), 0, true).unwrap();
        assert!(!ws.is_empty());
        assert!(ws.iter().all(|w| w.constant_coords.is_empty()));
        assert!(ws.iter().all(|w| w.direction == 1));
    }

    #[test]
    fn faces() {
        let f = find_twin_faces(&z2()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|w| w.u == w.v));

        let f = find_twin_faces(&brick()).unwrap();
        assert_eq!(
            f,
            vec![
                FaceWitness {
                    direction: 0,
                    u: tv(&[(0, 1), (0, 1)]),
                    v: tv(&[(0, 1), (0, 1)])
                },
                FaceWitness {
                    direction: 0,
                    u: tv(&[(1, 2), (1, 1)]),
                    v: tv(&[(1, 2), (1, 1)])
                },
            ]
        );

        let f = find_twin_faces(&four()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|w| w.direction == 0));
    }

    #[test]
    fn faces_with_longer_period() {
        let x = parse_instance("dim 1\nperiod 3\ntile 0/1\ntile 1/1\ntile 2/1\n").unwrap();
        // 0-1, 1-2 and the wrap-around 0-2.
        assert_eq!(find_twin_faces(&x).unwrap().len(), 3);
    }
}
