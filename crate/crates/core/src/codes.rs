//! Natural codes on a torus instance.
//!
//! Along coordinate `j` the occurring values split into cosets `c + Z`
//! (identified by their fractional part `c`). A code assigns to every
//! occurring value an index so that distinct values of one coset get
//! distinct indices. In a tiling every coset that occurs along `j` occurs
//! with all `L_j` values `c, c+1, ..., c+L_j-1`, so indices run over
//! `1..=L_j`.

use std::collections::{BTreeMap, BTreeSet};

use crate::instance::{InstanceError, TileVector, TilingInstance};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("coordinate {coord}: coset {coset} does not carry a full chain")]
    ChainIncomplete { coord: usize, coset: Rational },
    #[error("coordinate {coord} out of range for dimension {dim}")]
    CoordinateOutOfRange { coord: usize, dim: usize },
    #[error("coordinate {coord} has no coset {coset}")]
    UnknownCoset { coord: usize, coset: Rational },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("permutation of length {actual} does not match index range 1..={expected}")]
    PermutationArity { expected: usize, actual: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u32>),
    #[error("slicing needs dimension at least 2")]
    DimensionTooSmall,
    #[error("value {value} in coordinate {coord} is not covered by the code table")]
    UncodedValue { coord: usize, value: Rational },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Code of one coset `c + Z` along one coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCode {
    pub class: Rational,
    pub indices: BTreeMap<Rational, u32>,
}

/// Finite restriction of a natural code to the values of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable {
    coords: Vec<Vec<CosetCode>>,
}

impl CodeTable {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Cosets of coordinate `j`, by increasing fractional part.
    pub fn cosets(&self, j: usize) -> &[CosetCode] {
        &self.coords[j]
    }

    pub fn coset(&self, j: usize, class: Rational) -> Option<&CosetCode> {
        self.coords.get(j)?.iter().find(|c| c.class == class)
    }

    pub fn index_of(&self, j: usize, value: Rational) -> Option<u32> {
        self.coset(j, value.fract())?.indices.get(&value).copied()
    }

    /// Code of a whole vector.
    pub fn code(&self, t: &TileVector) -> Option<Vec<u32>> {
        t.coords()
            .iter()
            .enumerate()
            .map(|(j, &x)| self.index_of(j, x))
            .collect()
    }
}

/// Occurring values of coordinate `j`, grouped by coset.
fn values_by_coset(instance: &TilingInstance, j: usize) -> BTreeMap<Rational, BTreeSet<Rational>> {
    let mut groups: BTreeMap<Rational, BTreeSet<Rational>> = BTreeMap::new();
    for t in instance.tiles() {
        let x = t.get(j);
        groups.entry(x.fract()).or_default().insert(x);
    }
    groups
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainViolation {
    pub coord: usize,
    pub coset: Rational,
    pub present: Vec<Rational>,
    pub missing: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainReport {
    pub violations: Vec<ChainViolation>,
}

impl ChainReport {
    pub fn is_full(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For each coordinate and occurring coset, compares the occurring values
/// against the full chain `c, c+1, ..., c+L_j-1`.
pub fn chain_fullness_check(instance: &TilingInstance) -> ChainReport {
    let mut violations = Vec::new();
    for (j, &l) in instance.period().iter().enumerate() {
        for (coset, present) in values_by_coset(instance, j) {
            let missing: Vec<Rational> = (0..l as i64)
                .map(|k| coset + Rational::from_integer(k))
                .filter(|x| !present.contains(x))
                .collect();
            if !missing.is_empty() {
                violations.push(ChainViolation {
                    coord: j,
                    coset,
                    present: present.into_iter().collect(),
                    missing,
                });
            }
        }
    }
    ChainReport { violations }
}

/// The default code: cosets by increasing fractional part, and value
/// `c + k` of coset `c` gets index `k + 1`.
pub fn build_code_table(instance: &TilingInstance) -> Result<CodeTable, CodeError> {
    if let Some(v) = chain_fullness_check(instance).violations.first() {
        return Err(CodeError::ChainIncomplete {
            coord: v.coord,
            coset: v.coset,
        });
    }
    let coords = (0..instance.dim())
        .map(|j| {
            values_by_coset(instance, j)
                .into_iter()
                .map(|(class, values)| CosetCode {
                    class,
                    indices: values
                        .into_iter()
                        .map(|x| (x, (x - class).numer() as u32 + 1))
                        .collect(),
                })
                .collect()
        })
        .collect();
    Ok(CodeTable { coords })
}

/// Composes the indices of coordinate `j` with `perm`, where old index `i`
/// becomes `perm[i - 1]`. With `coset = None` every coset of the
/// coordinate is recoded.
pub fn recode(
    table: &CodeTable,
    j: usize,
    coset: Option<Rational>,
    perm: &[u32],
) -> Result<CodeTable, CodeError> {
    if j >= table.dim() {
        return Err(CodeError::CoordinateOutOfRange {
            coord: j,
            dim: table.dim(),
        });
    }
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted.iter().enumerate().any(|(i, &p)| p as usize != i + 1) {
        return Err(CodeError::NotAPermutation(perm.to_vec()));
    }
    if let Some(class) = coset {
        if table.coset(j, class).is_none() {
            return Err(CodeError::UnknownCoset {
                coord: j,
                coset: class,
            });
        }
    }

    let mut out = table.clone();
    for code in out.coords[j]
        .iter_mut()
        .filter(|c| coset.is_none_or(|class| c.class == class))
    {
        if code.indices.len() != perm.len() {
            return Err(CodeError::PermutationArity {
                expected: code.indices.len(),
                actual: perm.len(),
            });
        }
        for idx in code.indices.values_mut() {
            let i = *idx as usize;
            if i == 0 || i > perm.len() {
                return Err(CodeError::IndexOutOfRange {
                    index: *idx,
                    max: perm.len() as u32,
                });
            }
            *idx = perm[i - 1];
        }
    }
    Ok(out)
}

/// The instance whose default code is `table`: every value of coset `c`
/// with index `i` is replaced by `c + i - 1`.
///
/// Values of one coset are only permuted among themselves, so equality and
/// integer-difference relations are kept and the result is isomorphic to
/// the input.
pub fn apply_code(
    instance: &TilingInstance,
    table: &CodeTable,
) -> Result<TilingInstance, CodeError> {
    if table.dim() != instance.dim() {
        return Err(CodeError::CoordinateOutOfRange {
            coord: table.dim(),
            dim: instance.dim(),
        });
    }
    let tiles = instance
        .tiles()
        .iter()
        .map(|t| {
            t.coords()
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    let idx = table
                        .index_of(j, x)
                        .ok_or(CodeError::UncodedValue { coord: j, value: x })?;
                    Ok(x.fract() + Rational::from_integer(idx as i64 - 1))
                })
                .collect::<Result<Vec<_>, CodeError>>()
                .map(TileVector)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TilingInstance::new(instance.period().to_vec(), tiles)?)
}

/// Tiles whose coordinate-`j` index is `k`, with coordinate `j` dropped.
///
/// On a tiling the result is again a tiling, of the torus with `L_j`
/// removed from the period.
pub fn slice(
    instance: &TilingInstance,
    table: &CodeTable,
    j: usize,
    k: u32,
) -> Result<TilingInstance, CodeError> {
    let n = instance.dim();
    if n < 2 {
        return Err(CodeError::DimensionTooSmall);
    }
    if j >= n || table.dim() != n {
        return Err(CodeError::CoordinateOutOfRange { coord: j, dim: n });
    }
    let max = instance.period()[j] as u32;
    if k == 0 || k > max {
        return Err(CodeError::IndexOutOfRange { index: k, max });
    }
    let mut tiles = Vec::new();
    for t in instance.tiles() {
        let x = t.get(j);
        let idx = table
            .index_of(j, x)
            .ok_or(CodeError::UncodedValue { coord: j, value: x })?;
        if idx == k {
            let mut coords = t.coords().to_vec();
            coords.remove(j);
            tiles.push(TileVector(coords));
        }
    }
    let mut period = instance.period().to_vec();
    period.remove(j);
    Ok(TilingInstance::new(period, tiles)?)
}
