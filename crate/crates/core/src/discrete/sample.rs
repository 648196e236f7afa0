//! Seeded random tilings by randomized exact-cover backtracking.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{DiscreteTiling, KellerModel, SearchBudget, SearchError};

pub const MAX_SAMPLE_DIM: usize = 8;

/// Raster cells of the discrete torus coincide with positions: the cube at
/// position `p` covers the cells `p + r (mod 2s)`, `r in 0..s` per
/// coordinate. Two cubes are disjoint exactly when their positions are
/// compatible.
struct Cover {
    model: KellerModel,
    side: usize,
    covered: Vec<bool>,
    /// Offsets `r in 0..s` per coordinate, as index vectors.
    offsets: Vec<Vec<u32>>,
}

impl Cover {
    fn new(model: KellerModel, cells: usize) -> Self {
        let s = model.res();
        let mut offsets = vec![Vec::new()];
        for _ in 0..model.dim() {
            offsets = offsets
                .into_iter()
                .flat_map(|o: Vec<u32>| {
                    (0..s).map(move |r| {
                        let mut o = o.clone();
                        o.push(r);
                        o
                    })
                })
                .collect();
        }
        Cover {
            model,
            side: model.side() as usize,
            covered: vec![false; cells],
            offsets,
        }
    }

    fn cell_index(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .fold(0, |acc, &c| acc * self.side + c as usize)
    }

    fn cells_of(&self, position: &[u32]) -> impl Iterator<Item = usize> + '_ {
        let side = self.side as u32;
        let position = position.to_vec();
        self.offsets.iter().map(move |o| {
            let c: Vec<u32> = position
                .iter()
                .zip(o)
                .map(|(&p, &r)| (p + r) % side)
                .collect();
            self.cell_index(&c)
        })
    }

    /// Positions whose cube contains cell `cell`.
    fn covering(&self, cell: usize) -> Vec<Vec<u32>> {
        let side = self.side as u32;
        let c = self.model.unpack(self.model.vertex_at(cell));
        self.offsets
            .iter()
            .map(|o| {
                c.iter()
                    .zip(o)
                    .map(|(&x, &r)| (x + side - r) % side)
                    .collect()
            })
            .collect()
    }

    fn set(&mut self, position: &[u32], value: bool) {
        let cells: Vec<usize> = self.cells_of(position).collect();
        for c in cells {
            self.covered[c] = value;
        }
    }

    fn fits(&self, position: &[u32]) -> bool {
        self.cells_of(position).all(|c| !self.covered[c])
    }
}

/// A random tiling of the `(n, s)` model, a pure function of the seed.
///
/// Repeatedly picks the first uncovered cell and tries the cubes that could
/// cover it in a seeded random order, backtracking on dead ends. The search
/// is complete, so it always returns (the lattice tiling exists).
pub fn sample_tiling(
    n: usize,
    s: u32,
    seed: u64,
    budget: SearchBudget,
) -> Result<DiscreteTiling, SearchError> {
    if n > MAX_SAMPLE_DIM {
        return Err(SearchError::ModelOutOfRange { dim: n, res: s });
    }
    let model = KellerModel::new(n, s)?;
    let cells = model.check_budget(budget)?;
    let mut cover = Cover::new(model, cells);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<u64> = Vec::with_capacity(model.tiling_size());
    let complete = fill(&mut cover, &mut rng, &mut chosen, 0);
    debug_assert!(complete, "exact-cover search is complete");
    chosen.sort_unstable();
    DiscreteTiling::new(model, chosen)
}

fn fill(cover: &mut Cover, rng: &mut ChaCha8Rng, chosen: &mut Vec<u64>, from: usize) -> bool {
    let Some(cell) = (from..cover.covered.len()).find(|&c| !cover.covered[c]) else {
        return true;
    };
    let mut options = cover.covering(cell);
    options.shuffle(rng);
    for p in options {
        if !cover.fits(&p) {
            continue;
        }
        cover.set(&p, true);
        chosen.push(cover.model.pack(&p));
        if fill(cover, rng, chosen, cell + 1) {
            return true;
        }
        chosen.pop();
        cover.set(&p, false);
    }
    false
}
