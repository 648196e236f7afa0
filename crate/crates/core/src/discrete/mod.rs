//! The period-2 discrete model.
//!
//! At resolution `s` a tile position is a vector of integers `c_j` in
//! `0..2s`, standing for the translation `c / s` on the torus `(R / 2Z)^n`.
//! Two positions are compatible (their cubes are disjoint) iff some
//! coordinate differs by exactly `s` modulo `2s`; a tiling is a set of
//! `2^n` pairwise compatible positions, i.e. a maximum clique of the
//! Keller compatibility graph.
//!
//! Positions are packed one byte per coordinate into a `u64`, coordinate 0
//! in the most significant used byte, so integer order is lexicographic
//! order.

mod dimacs;
mod enumerate;
mod sample;

pub use dimacs::export_dimacs;
pub use enumerate::{enumerate_parallel, enumerate_tilings, EnumerateOptions, TilingStream};
pub use sample::{sample_tiling, MAX_SAMPLE_DIM};

use crate::instance::{TileVector, TilingInstance};
use crate::rational::Rational;

pub const MAX_DIM: usize = 8;
pub const MAX_RES: u32 = 127;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("dimension {dim} and resolution {res} are outside 1..={max_dim} x 1..={max_res}", max_dim = MAX_DIM, max_res = MAX_RES)]
    ModelOutOfRange { dim: usize, res: u32 },
    #[error("model needs {needed} vertices, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("not representable at resolution {res}: {detail}")]
    NotRepresentable { res: u32, detail: String },
    #[error("not a discrete tiling: {0}")]
    InvalidTiling(String),
}

/// Resource limits for the search operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Limit on `(2s)^n`, the number of graph vertices (or raster cells).
    pub max_vertices: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_vertices: 4096 }
    }
}

/// Geometry of the discrete torus for one `(n, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KellerModel {
    dim: usize,
    res: u32,
}

impl KellerModel {
    pub fn new(dim: usize, res: u32) -> Result<Self, SearchError> {
        if dim == 0 || dim > MAX_DIM || res == 0 || res > MAX_RES {
            return Err(SearchError::ModelOutOfRange { dim, res });
        }
        Ok(KellerModel { dim, res })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn res(&self) -> u32 {
        self.res
    }

    /// `2s`, the number of positions per coordinate.
    pub fn side(&self) -> u32 {
        2 * self.res
    }

    pub fn vertex_count(&self) -> u128 {
        (self.side() as u128).pow(self.dim as u32)
    }

    pub fn tiling_size(&self) -> usize {
        1 << self.dim
    }

    pub(crate) fn check_budget(&self, budget: SearchBudget) -> Result<usize, SearchError> {
        let needed = self.vertex_count();
        if needed > budget.max_vertices as u128 {
            return Err(SearchError::BudgetExceeded {
                needed,
                budget: budget.max_vertices,
            });
        }
        Ok(needed as usize)
    }

    pub fn pack(&self, coords: &[u32]) -> u64 {
        coords
            .iter()
            .fold(0u64, |acc, &c| (acc << 8) | (c as u64 & 0xff))
    }

    pub fn unpack(&self, packed: u64) -> Vec<u32> {
        (0..self.dim)
            .map(|j| ((packed >> (8 * (self.dim - 1 - j))) & 0xff) as u32)
            .collect()
    }

    /// Mixed-radix index of a position, coordinate 0 most significant.
    pub fn index_of(&self, packed: u64) -> usize {
        let side = self.side() as usize;
        self.unpack(packed)
            .into_iter()
            .fold(0usize, |acc, c| acc * side + c as usize)
    }

    pub fn vertex_at(&self, mut index: usize) -> u64 {
        let side = self.side() as usize;
        let mut coords = vec![0u32; self.dim];
        for c in coords.iter_mut().rev() {
            *c = (index % side) as u32;
            index /= side;
        }
        self.pack(&coords)
    }

    /// Each coordinate moved by `s` modulo `2s`.
    pub fn antipode(&self, packed: u64) -> u64 {
        let coords: Vec<u32> = self
            .unpack(packed)
            .into_iter()
            .map(|c| (c + self.res) % self.side())
            .collect();
        self.pack(&coords)
    }

    /// Bytes above the model's dimension, all set.
    fn padding(&self) -> u64 {
        if self.dim == 8 {
            0
        } else {
            !0u64 << (8 * self.dim)
        }
    }

    /// `true` iff some byte lane of `antipode(u)` equals that of `v`.
    pub fn compatible(&self, u: u64, v: u64) -> bool {
        has_zero_byte((self.antipode(u) ^ v) | self.padding())
    }

    /// Compatibility given a precomputed antipode of `u`.
    #[inline]
    pub(crate) fn compatible_with_antipode(&self, antipode_u: u64, v: u64) -> bool {
        has_zero_byte((antipode_u ^ v) | self.padding())
    }
}

#[inline]
fn has_zero_byte(x: u64) -> bool {
    const LO: u64 = 0x0101_0101_0101_0101;
    const HI: u64 = 0x8080_8080_8080_8080;
    x.wrapping_sub(LO) & !x & HI != 0
}

/// A set of `2^n` pairwise compatible positions, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteTiling {
    model: KellerModel,
    vertices: Vec<u64>,
}

impl DiscreteTiling {
    /// Validates ranges, size and pairwise compatibility.
    pub fn new(model: KellerModel, mut vertices: Vec<u64>) -> Result<Self, SearchError> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() != model.tiling_size() {
            return Err(SearchError::InvalidTiling(format!(
                "{} distinct positions, expected {}",
                vertices.len(),
                model.tiling_size()
            )));
        }
        for &v in &vertices {
            if v & model.padding() != 0 || model.unpack(v).iter().any(|&c| c >= model.side()) {
                return Err(SearchError::InvalidTiling(format!(
                    "position {:?} out of range",
                    model.unpack(v)
                )));
            }
        }
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if !model.compatible(u, v) {
                    return Err(SearchError::InvalidTiling(format!(
                        "positions {:?} and {:?} overlap",
                        model.unpack(u),
                        model.unpack(v)
                    )));
                }
            }
        }
        Ok(DiscreteTiling { model, vertices })
    }

    /// Builds from unpacked coordinates.
    pub fn from_coords(model: KellerModel, coords: &[Vec<u32>]) -> Result<Self, SearchError> {
        Self::new(model, coords.iter().map(|c| model.pack(c)).collect())
    }

    pub(crate) fn from_sorted_unchecked(model: KellerModel, vertices: Vec<u64>) -> Self {
        DiscreteTiling { model, vertices }
    }

    pub fn model(&self) -> KellerModel {
        self.model
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn coords(&self) -> Vec<Vec<u32>> {
        self.vertices
            .iter()
            .map(|&v| self.model.unpack(v))
            .collect()
    }
}

/// Tiles `c / s` with period 2 in every coordinate.
pub fn to_exact(d: &DiscreteTiling) -> TilingInstance {
    let s = d.model.res as i64;
    let tiles = d
        .coords()
        .into_iter()
        .map(|c| TileVector(c.into_iter().map(|x| Rational::new(x as i64, s)).collect()))
        .collect();
    TilingInstance::new(vec![2; d.model.dim], tiles).expect("distinct in-range positions")
}

/// Inverse of [`to_exact`] at resolution `res`.
pub fn from_discrete(instance: &TilingInstance, res: u32) -> Result<DiscreteTiling, SearchError> {
    let model = KellerModel::new(instance.dim(), res)?;
    if let Some(j) = instance.period().iter().position(|&l| l != 2) {
        return Err(SearchError::NotRepresentable {
            res,
            detail: format!("coordinate {} has period {}", j + 1, instance.period()[j]),
        });
    }
    let mut coords = Vec::with_capacity(instance.len());
    for t in instance.tiles() {
        let mut c = Vec::with_capacity(t.dim());
        for x in t.coords() {
            let num = x.numer() * res as i64;
            if num % x.denom() != 0 {
                return Err(SearchError::NotRepresentable {
                    res,
                    detail: format!("coordinate {x} is not a multiple of 1/{res}"),
                });
            }
            c.push((num / x.denom()) as u32);
        }
        coords.push(c);
    }
    DiscreteTiling::from_coords(model, &coords)
}
