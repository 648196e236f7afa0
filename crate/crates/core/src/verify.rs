//! The pairwise tiling criterion and a rasterizing ground-truth oracle.
//!
//! Two classes `u`, `v` of an `L`-periodic family are disjoint in every lift
//! iff some coordinate difference `u_j - v_j` is an integer that is not a
//! multiple of `L_j`: only then can no choice of lifts zero it out. A family
//! with `prod L_j` pairwise disjoint classes has the volume of the torus and
//! therefore covers it.

use num_integer::Integer;

use crate::instance::{TileVector, TilingInstance};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// `true` iff the periodic lifts of `u` and `v` never overlap.
pub fn check_distinguishable(
    u: &TileVector,
    v: &TileVector,
    period: &[u64],
) -> Result<bool, GeometryError> {
    for w in [u, v] {
        if w.dim() != period.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: period.len(),
                actual: w.dim(),
            });
        }
    }
    Ok(distinguishable_unchecked(u.coords(), v.coords(), period))
}

pub(crate) fn distinguishable_unchecked(u: &[Rational], v: &[Rational], period: &[u64]) -> bool {
    u.iter().zip(v).zip(period).any(|((a, b), &l)| {
        a.integer_difference(b)
            .is_some_and(|d| d.rem_euclid(l as i64) != 0)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    CountMismatch { expected: u64, actual: u64 },
    OverlapPair(TileVector, TileVector),
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    fn ok() -> Self {
        VerifyReport {
            valid: true,
            failure: None,
        }
    }

    fn fail(failure: VerifyFailure) -> Self {
        VerifyReport {
            valid: false,
            failure: Some(failure),
        }
    }
}

/// Checks that the instance is a tiling of the torus.
///
/// The tile count is compared against the torus volume before any pair is
/// examined; an overlap is reported for the lexicographically first pair.
pub fn verify(instance: &TilingInstance) -> VerifyReport {
    let Some(volume) = instance.volume() else {
        return VerifyReport::fail(VerifyFailure::Malformed("torus volume overflows".into()));
    };
    let actual = instance.len() as u64;
    if actual != volume {
        return VerifyReport::fail(VerifyFailure::CountMismatch {
            expected: volume,
            actual,
        });
    }
    let tiles = instance.tiles();
    let period = instance.period();
    for (i, u) in tiles.iter().enumerate() {
        for v in &tiles[i + 1..] {
            if !distinguishable_unchecked(u.coords(), v.coords(), period) {
                return VerifyReport::fail(VerifyFailure::OverlapPair(u.clone(), v.clone()));
            }
        }
    }
    VerifyReport::ok()
}

pub fn is_valid(instance: &TilingInstance) -> bool {
    verify(instance).valid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Upper bound on the number of raster cells `D^n * prod L_j`.
    pub cell_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cell_budget: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("raster needs {cells} cells, budget is {budget}")]
    BudgetExceeded { cells: u128, budget: u64 },
}

/// A raster cell whose cover count differs from one. `corner` is the lower
/// corner of the cell, side `1/D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellViolation {
    pub corner: TileVector,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub exact: bool,
    pub violation: Option<CellViolation>,
}

/// Brute-force cover test.
///
/// With `D` the lcm of all coordinate denominators, every cube is a union of
/// cells of side `1/D`. Each class is stamped onto the raster of the
/// fundamental box through its lifts `t + k L`, `k in {-1, 0, 1}^n`, and the
/// raster is then scanned in lexicographic order for a cell not covered
/// exactly once.
pub fn exact_cover_oracle(
    instance: &TilingInstance,
    config: OracleConfig,
) -> Result<OracleReport, OracleError> {
    let n = instance.dim();
    let period = instance.period();
    let d: i64 = instance
        .tiles()
        .iter()
        .flat_map(|t| t.coords().iter().map(|x| x.denom()))
        .fold(1, |acc, q| acc.lcm(&q));

    let mut cells: u128 = 1;
    for &l in period {
        cells = cells.saturating_mul(d as u128 * l as u128);
    }
    if cells > config.cell_budget as u128 {
        return Err(OracleError::BudgetExceeded {
            cells,
            budget: config.cell_budget,
        });
    }

    let extent: Vec<i64> = period.iter().map(|&l| d * l as i64).collect();
    let mut stride = vec![1usize; n];
    for j in (0..n.saturating_sub(1)).rev() {
        stride[j] = stride[j + 1] * extent[j + 1] as usize;
    }
    let mut count = vec![0u8; cells as usize];

    for t in instance.tiles() {
        // Flat-index contributions of the covered cells along each axis.
        let axes: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                let x = t.get(j);
                let start = x.numer() * (d / x.denom());
                let mut hits = Vec::new();
                for k in -1..=1 {
                    let lo = start + k * extent[j];
                    for c in lo.max(0)..(lo + d).min(extent[j]) {
                        hits.push(c as usize * stride[j]);
                    }
                }
                hits
            })
            .collect();
        stamp(&axes, 0, 0, &mut count);
    }

    let violation = count.iter().position(|&c| c != 1).map(|flat| {
        let mut rest = flat;
        let corner = (0..n)
            .map(|j| {
                let c = rest / stride[j];
                rest %= stride[j];
                Rational::new(c as i64, d)
            })
            .collect();
        CellViolation {
            corner: TileVector(corner),
            count: count[flat] as u32,
        }
    });
    Ok(OracleReport {
        exact: violation.is_none(),
        violation,
    })
}

fn stamp(axes: &[Vec<usize>], j: usize, base: usize, count: &mut [u8]) {
    if j == axes.len() {
        count[base] = count[base].saturating_add(1);
        return;
    }
    for &off in &axes[j] {
        stamp(axes, j + 1, base + off, count);
    }
}
