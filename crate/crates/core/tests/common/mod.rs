#![allow(dead_code)]

use cubetile::{Rational, TileVector, TilingInstance};
use rand::Rng;

/// Moves one tile by a non-integer multiple of `1 / (2 res)` in one
/// coordinate, retrying when the move lands on another class.
pub fn mutate(x: &TilingInstance, res: i64, rng: &mut impl Rng) -> TilingInstance {
    let q = 2 * res;
    loop {
        let victim = rng.gen_range(0..x.len());
        let j = rng.gen_range(0..x.dim());
        let a = loop {
            let a = rng.gen_range(1..2 * q);
            if a % q != 0 {
                break a;
            }
        };
        let mut tiles = x.tiles().to_vec();
        let mut c = tiles[victim].coords().to_vec();
        c[j] = c[j] + Rational::new(a, q);
        tiles[victim] = TileVector::new(c);
        if let Ok(y) = TilingInstance::new(x.period().to_vec(), tiles) {
            return y;
        }
    }
}

/// Lattice tiling `Z^n` with the given period: all integer classes.
pub fn lattice(period: &[u64]) -> TilingInstance {
    let mut tiles = vec![Vec::<Rational>::new()];
    for &l in period {
        tiles = tiles
            .into_iter()
            .flat_map(|t| {
                (0..l as i64).map(move |k| {
                    let mut t = t.clone();
                    t.push(Rational::from_integer(k));
                    t
                })
            })
            .collect();
    }
    TilingInstance::new(
        period.to_vec(),
        tiles.into_iter().map(TileVector::new).collect(),
    )
    .unwrap()
}

/// Moves every class whose coordinate-`k` value lies in `coset + Z` by an
/// arbitrary rational amount along axis `k`. The moved classes cover whole
/// axis-parallel lines, so the result is again a tiling.
pub fn rational_slab_move(
    x: &TilingInstance,
    k: usize,
    coset: Rational,
    by: Rational,
) -> TilingInstance {
    let tiles = x
        .tiles()
        .iter()
        .map(|t| {
            let mut c = t.coords().to_vec();
            if c[k].fract() == coset {
                c[k] = c[k] + by;
            }
            TileVector::new(c)
        })
        .collect();
    TilingInstance::new(x.period().to_vec(), tiles).unwrap()
}

/// A random tiling of the given period, grown from the lattice by random
/// rational slab moves with denominators dividing `den`.
pub fn random_tiling(period: &[u64], den: i64, moves: usize, rng: &mut impl Rng) -> TilingInstance {
    let mut x = lattice(period);
    for _ in 0..moves {
        let k = rng.gen_range(0..x.dim());
        let t = &x.tiles()[rng.gen_range(0..x.len())];
        let coset = t.get(k).fract();
        let by = Rational::new(rng.gen_range(1..2 * den), den);
        x = rational_slab_move(&x, k, coset, by);
    }
    x
}

/// Counts all tilings of the discrete model by exact-cover search over
/// raster cells, independent of the clique enumerator.
pub fn exact_cover_count(n: usize, s: u32) -> usize {
    let side = 2 * s as usize;
    let cells = side.pow(n as u32);
    let digits = |mut i: usize| {
        let mut d = vec![0usize; n];
        for x in d.iter_mut().rev() {
            *x = i % side;
            i /= side;
        }
        d
    };
    let index = |d: &[usize]| d.iter().fold(0, |acc, &c| acc * side + c);
    // cells covered by the cube at each position
    let footprint: Vec<Vec<usize>> = (0..cells)
        .map(|p| {
            let pd = digits(p);
            (0..(s as usize).pow(n as u32))
                .map(|mut r| {
                    let mut c = pd.clone();
                    for x in c.iter_mut().rev() {
                        *x = (*x + r % s as usize) % side;
                        r /= s as usize;
                    }
                    index(&c)
                })
                .collect()
        })
        .collect();
    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for (p, f) in footprint.iter().enumerate() {
        for &c in f {
            covering[c].push(p);
        }
    }
    fn go(
        covered: &mut Vec<bool>,
        footprint: &[Vec<usize>],
        covering: &[Vec<usize>],
        from: usize,
    ) -> usize {
        let Some(cell) = (from..covered.len()).find(|&c| !covered[c]) else {
            return 1;
        };
        let mut total = 0;
        for &p in &covering[cell] {
            if footprint[p].iter().all(|&c| !covered[c]) {
                for &c in &footprint[p] {
                    covered[c] = true;
                }
                total += go(covered, footprint, covering, cell + 1);
                for &c in &footprint[p] {
                    covered[c] = false;
                }
            }
        }
        total
    }
    go(&mut vec![false; cells], &footprint, &covering, 0)
}

/// A random rational vector with denominators dividing `den`.
pub fn random_vector(n: usize, den: i64, rng: &mut impl Rng) -> TileVector {
    TileVector::new(
        (0..n)
            .map(|_| Rational::new(rng.gen_range(-4 * den..4 * den), den))
            .collect(),
    )
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
