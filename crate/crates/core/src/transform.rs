//! Tiling-preserving transformations.

use crate::instance::{InstanceError, TileVector, TilingInstance};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("coordinate {coord} out of range for dimension {dim}")]
    CoordinateOutOfRange { coord: usize, dim: usize },
    #[error("coset {0} is not a fractional part in [0, 1)")]
    InvalidCoset(Rational),
    #[error("not a permutation of 0..{dim}: {sigma:?}")]
    InvalidPermutation { sigma: Vec<usize>, dim: usize },
    #[error("target dimension {target} must exceed {dim}")]
    NotAnExtension { target: usize, dim: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// `T - t`, renormalized into the fundamental box.
pub fn translate(
    instance: &TilingInstance,
    t: &TileVector,
) -> Result<TilingInstance, TransformError> {
    if t.dim() != instance.dim() {
        return Err(TransformError::DimensionMismatch {
            expected: instance.dim(),
            actual: t.dim(),
        });
    }
    let tiles = instance
        .tiles()
        .iter()
        .map(|x| {
            TileVector(
                x.coords()
                    .iter()
                    .zip(t.coords())
                    .map(|(&a, &b)| a - b)
                    .collect(),
            )
        })
        .collect();
    Ok(TilingInstance::new(instance.period().to_vec(), tiles)?)
}

/// Shifts the slab of tiles whose coordinate-`k` value lies in `coset + Z`
/// by `m e_k`.
///
/// Every line parallel to axis `k` that meets a cube of the slab is covered
/// by the slab alone, so moving the slab along that axis keeps the tiling.
/// This is the single step of Keller's argument that pushes the ascent
/// index `i(x) = max{i : |x_j| < 1 for j <= i}` of a hypothetical
/// undistinguished pair upwards; a coset that does not occur leaves the
/// instance unchanged.
pub fn slab_shift(
    instance: &TilingInstance,
    k: usize,
    coset: Rational,
    m: i64,
) -> Result<TilingInstance, TransformError> {
    let n = instance.dim();
    if k >= n {
        return Err(TransformError::CoordinateOutOfRange { coord: k, dim: n });
    }
    if coset.floor() != 0 {
        return Err(TransformError::InvalidCoset(coset));
    }
    let shift = Rational::from_integer(m);
    let tiles = instance
        .tiles()
        .iter()
        .map(|x| {
            let mut c = x.coords().to_vec();
            if c[k].fract() == coset {
                c[k] = c[k] + shift;
            }
            TileVector(c)
        })
        .collect();
    Ok(TilingInstance::new(instance.period().to_vec(), tiles)?)
}

/// Moves coordinate `j` to position `sigma[j]` (0-based), period included.
pub fn permute_coords(
    instance: &TilingInstance,
    sigma: &[usize],
) -> Result<TilingInstance, TransformError> {
    let n = instance.dim();
    let mut seen = vec![false; n];
    let valid = sigma.len() == n
        && sigma
            .iter()
            .all(|&s| s < n && !std::mem::replace(&mut seen[s], true));
    if !valid {
        return Err(TransformError::InvalidPermutation {
            sigma: sigma.to_vec(),
            dim: n,
        });
    }
    let mut period = vec![0u64; n];
    place(sigma, instance.period(), &mut period);
    let tiles = instance
        .tiles()
        .iter()
        .map(|x| {
            let mut c = vec![Rational::ZERO; n];
            place(sigma, x.coords(), &mut c);
            TileVector(c)
        })
        .collect();
    Ok(TilingInstance::new(period, tiles)?)
}

fn place<T: Copy>(sigma: &[usize], src: &[T], dst: &mut [T]) {
    for (j, &s) in sigma.iter().enumerate() {
        dst[s] = src[j];
    }
}

/// Appends coordinates with value 0 and period 1 up to dimension `m`.
pub fn extrude(instance: &TilingInstance, m: usize) -> Result<TilingInstance, TransformError> {
    let n = instance.dim();
    if m <= n {
        return Err(TransformError::NotAnExtension { target: m, dim: n });
    }
    let mut period = instance.period().to_vec();
    period.resize(m, 1);
    let tiles = instance
        .tiles()
        .iter()
        .map(|x| {
            let mut c = x.coords().to_vec();
            c.resize(m, Rational::ZERO);
            TileVector(c)
        })
        .collect();
    Ok(TilingInstance::new(period, tiles)?)
}
