//! Isomorphism of tiling systems and canonical keys.
//!
//! Two instances are isomorphic when a tile bijection `f` and a coordinate
//! permutation `sigma` preserve, for every pair of tiles and coordinate `j`,
//! whether `x_j = y_j` and whether `x_j - y_j` is a nonzero integer (mod
//! `L_j`). Per coordinate this is the same as saying that `f` carries the
//! partition of occurring values into cosets onto the corresponding
//! partition of coordinate `sigma(j)`.

use std::collections::BTreeMap;

use crate::instance::{TileVector, TilingInstance};

/// Relation of two tiles along one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    Equal,
    IntegerApart,
    Other,
}

/// Value and coset ids of every tile along every coordinate.
struct Structure {
    tiles: usize,
    dim: usize,
    /// `value[t * dim + j]`: dense id of tile `t`'s coordinate-`j` value.
    value: Vec<u32>,
    /// `coset[j][v]`: coset id of value id `v` in coordinate `j`.
    coset: Vec<Vec<u32>>,
    values_per_coord: Vec<usize>,
    cosets_per_coord: Vec<usize>,
}

impl Structure {
    fn new(x: &TilingInstance) -> Self {
        let n = x.dim();
        let tiles = x.len();
        let mut value = vec![0u32; tiles * n];
        let mut coset = Vec::with_capacity(n);
        let mut values_per_coord = Vec::with_capacity(n);
        let mut cosets_per_coord = Vec::with_capacity(n);
        for j in 0..n {
            let mut vals: BTreeMap<_, u32> = x.tiles().iter().map(|t| (t.get(j), 0)).collect();
            let mut classes: BTreeMap<_, u32> = vals.keys().map(|v| (v.fract(), 0)).collect();
            for (id, slot) in classes.values_mut().enumerate() {
                *slot = id as u32;
            }
            let mut coset_of = Vec::with_capacity(vals.len());
            for (id, (v, slot)) in vals.iter_mut().enumerate() {
                *slot = id as u32;
                coset_of.push(classes[&v.fract()]);
            }
            for (t, tile) in x.tiles().iter().enumerate() {
                value[t * n + j] = vals[&tile.get(j)];
            }
            values_per_coord.push(vals.len());
            cosets_per_coord.push(classes.len());
            coset.push(coset_of);
        }
        Structure {
            tiles,
            dim: n,
            value,
            coset,
            values_per_coord,
            cosets_per_coord,
        }
    }

    fn val(&self, t: usize, j: usize) -> u32 {
        self.value[t * self.dim + j]
    }

    fn cos(&self, t: usize, j: usize) -> u32 {
        self.coset[j][self.val(t, j) as usize]
    }

    fn relation(&self, s: usize, t: usize, j: usize) -> Relation {
        if self.val(s, j) == self.val(t, j) {
            Relation::Equal
        } else if self.cos(s, j) == self.cos(t, j) {
            Relation::IntegerApart
        } else {
            Relation::Other
        }
    }

    /// Per tile and coordinate: how many tiles share its value, and its coset.
    fn tile_profile(&self) -> Vec<(u32, u32)> {
        let n = self.dim;
        let mut same_value = vec![vec![0u32; 0]; n];
        let mut same_coset = vec![vec![0u32; 0]; n];
        for j in 0..n {
            same_value[j] = vec![0; self.values_per_coord[j]];
            same_coset[j] = vec![0; self.cosets_per_coord[j]];
            for t in 0..self.tiles {
                same_value[j][self.val(t, j) as usize] += 1;
                same_coset[j][self.cos(t, j) as usize] += 1;
            }
        }
        let mut out = Vec::with_capacity(self.tiles * n);
        for t in 0..self.tiles {
            for j in 0..n {
                out.push((
                    same_value[j][self.val(t, j) as usize],
                    same_coset[j][self.cos(t, j) as usize],
                ));
            }
        }
        out
    }

    /// Sorted `(coset size, sorted value multiplicities)` for coordinate `j`.
    fn coord_invariant(&self, j: usize) -> Vec<Vec<u32>> {
        let mut per_value = vec![0u32; self.values_per_coord[j]];
        for t in 0..self.tiles {
            per_value[self.val(t, j) as usize] += 1;
        }
        let mut per_coset: Vec<Vec<u32>> = vec![Vec::new(); self.cosets_per_coord[j]];
        for (v, &m) in per_value.iter().enumerate() {
            per_coset[self.coset[j][v] as usize].push(m);
        }
        for c in &mut per_coset {
            c.sort_unstable();
        }
        per_coset.sort();
        per_coset
    }
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let k = (i..n).rev().find(|&k| p[k] > p[i - 1]).unwrap();
        p.swap(i - 1, k);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// A tile bijection together with a coordinate permutation; coordinate `j`
/// of the source corresponds to coordinate `sigma[j]` of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub tile_map: Vec<(TileVector, TileVector)>,
    pub sigma: Vec<usize>,
}

impl IsoWitness {
    pub fn inverse(&self) -> IsoWitness {
        let mut sigma = vec![0; self.sigma.len()];
        for (j, &s) in self.sigma.iter().enumerate() {
            sigma[s] = j;
        }
        let mut tile_map: Vec<_> = self
            .tile_map
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        tile_map.sort();
        IsoWitness { tile_map, sigma }
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &IsoWitness) -> Option<IsoWitness> {
        let lookup: BTreeMap<_, _> = other.tile_map.iter().cloned().collect();
        let tile_map = self
            .tile_map
            .iter()
            .map(|(x, y)| lookup.get(y).map(|z| (x.clone(), z.clone())))
            .collect::<Option<Vec<_>>>()?;
        let sigma = self
            .sigma
            .iter()
            .map(|&s| other.sigma.get(s).copied())
            .collect::<Option<Vec<_>>>()?;
        Some(IsoWitness { tile_map, sigma })
    }

    /// Re-checks both isomorphism conditions pair by pair.
    pub fn certifies(&self, a: &TilingInstance, b: &TilingInstance) -> bool {
        let n = a.dim();
        if b.dim() != n
            || a.len() != b.len()
            || self.sigma.len() != n
            || self.tile_map.len() != a.len()
        {
            return false;
        }
        if (0..n).any(|j| self.sigma[j] >= n || a.period()[j] != b.period()[self.sigma[j]]) {
            return false;
        }
        let mut seen_sigma = self.sigma.clone();
        seen_sigma.sort_unstable();
        seen_sigma.dedup();
        if seen_sigma.len() != n {
            return false;
        }
        let mut images: Vec<_> = self.tile_map.iter().map(|(_, y)| y.clone()).collect();
        images.sort();
        images.dedup();
        if images.len() != b.len() || !images.iter().all(|y| b.contains(y)) {
            return false;
        }
        let mut sources: Vec<_> = self.tile_map.iter().map(|(x, _)| x.clone()).collect();
        sources.sort();
        sources.dedup();
        if sources.len() != a.len() || !sources.iter().all(|x| a.contains(x)) {
            return false;
        }
        let rel = |u: &TileVector, v: &TileVector, j: usize| {
            if u.get(j) == v.get(j) {
                Relation::Equal
            } else if u.get(j).integer_difference(&v.get(j)).is_some() {
                Relation::IntegerApart
            } else {
                Relation::Other
            }
        };
        for (x, fx) in &self.tile_map {
            for (y, fy) in &self.tile_map {
                for j in 0..n {
                    if rel(x, y, j) != rel(fx, fy, self.sigma[j]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Searches for an isomorphism, trying coordinate permutations in
/// lexicographic order and, for each, matching tiles of `a` (in order) to
/// the smallest consistent tiles of `b`. Returns the first witness found.
pub fn are_isomorphic(a: &TilingInstance, b: &TilingInstance) -> Option<IsoWitness> {
    let n = a.dim();
    if b.dim() != n || a.len() != b.len() {
        return None;
    }
    let sa = Structure::new(a);
    let sb = Structure::new(b);
    let pa = sa.tile_profile();
    let pb = sb.tile_profile();
    let tiles = a.len();

    for sigma in permutations(n) {
        if (0..n).any(|j| a.period()[j] != b.period()[sigma[j]]) {
            continue;
        }
        if (0..n).any(|j| sa.coord_invariant(j) != sb.coord_invariant(sigma[j])) {
            continue;
        }
        let sig_a = |t: usize| (0..n).map(|j| pa[t * n + j]).collect::<Vec<_>>();
        let sig_b = |t: usize| (0..n).map(|j| pb[t * n + sigma[j]]).collect::<Vec<_>>();
        let candidates: Vec<Vec<usize>> = (0..tiles)
            .map(|x| {
                let sx = sig_a(x);
                (0..tiles).filter(|&y| sig_b(y) == sx).collect()
            })
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut image = vec![usize::MAX; tiles];
        let mut used = vec![false; tiles];
        if match_tiles(&sa, &sb, &sigma, &candidates, 0, &mut image, &mut used) {
            let tile_map = (0..tiles)
                .map(|x| (a.tiles()[x].clone(), b.tiles()[image[x]].clone()))
                .collect();
            return Some(IsoWitness { tile_map, sigma });
        }
    }
    None
}

fn match_tiles(
    sa: &Structure,
    sb: &Structure,
    sigma: &[usize],
    candidates: &[Vec<usize>],
    x: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if x == image.len() {
        return true;
    }
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = (0..x).all(|w| {
            let fw = image[w];
            (0..sa.dim).all(|j| sa.relation(x, w, j) == sb.relation(y, fw, sigma[j]))
        });
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if match_tiles(sa, sb, sigma, candidates, x + 1, image, used) {
            return true;
        }
        used[y] = false;
    }
    image[x] = usize::MAX;
    false
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("canonical form supports dimension at most {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
}

/// Byte string equal for two instances exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

pub const MAX_CANON_DIM: usize = 8;

/// Lexicographically least relation encoding over all coordinate orders
/// and all relabelings of cosets and values.
///
/// For a coordinate order and a tile order, each tile is written as one
/// `(coset label, value label)` pair per coordinate, where labels are handed
/// out in order of first appearance (value labels counted per coset). The
/// key is the minimum of that sequence over all tile orders and over all
/// coordinate orders that sort the per-coordinate invariants, and is found
/// by depth-first search that only follows tiles attaining the least next
/// entry and abandons prefixes already above the best sequence.
pub fn canonical_form(instance: &TilingInstance) -> Result<CanonicalKey, CanonError> {
    let n = instance.dim();
    if n > MAX_CANON_DIM {
        return Err(CanonError::DimensionTooLarge {
            dim: n,
            max: MAX_CANON_DIM,
        });
    }
    let s = Structure::new(instance);
    let invariants: Vec<_> = (0..n)
        .map(|j| (instance.period()[j], s.coord_invariant(j)))
        .collect();
    let mut sorted = invariants.clone();
    sorted.sort();

    let mut best: Option<Vec<u32>> = None;
    for order in permutations(n) {
        if (0..n).any(|p| invariants[order[p]] != sorted[p]) {
            continue;
        }
        let mut search = CanonSearch::new(&s, &order);
        search.run(&mut best);
    }

    let mut bytes = Vec::new();
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for (l, _) in &sorted {
        bytes.extend_from_slice(&(*l as u32).to_be_bytes());
    }
    bytes.extend_from_slice(&(instance.len() as u32).to_be_bytes());
    for code in best.unwrap_or_default() {
        bytes.extend_from_slice(&code.to_be_bytes());
    }
    Ok(CanonicalKey(bytes))
}

const UNSET: u32 = u32::MAX;

struct CanonSearch<'a> {
    s: &'a Structure,
    order: &'a [usize],
    used: Vec<bool>,
    /// Per output position: label of each coset id / value id.
    coset_label: Vec<Vec<u32>>,
    value_label: Vec<Vec<u32>>,
    next_coset: Vec<u32>,
    /// Per output position and coset id: next value label.
    next_value: Vec<Vec<u32>>,
    current: Vec<u32>,
}

impl<'a> CanonSearch<'a> {
    fn new(s: &'a Structure, order: &'a [usize]) -> Self {
        CanonSearch {
            s,
            order,
            used: vec![false; s.tiles],
            coset_label: order
                .iter()
                .map(|&j| vec![UNSET; s.cosets_per_coord[j]])
                .collect(),
            value_label: order
                .iter()
                .map(|&j| vec![UNSET; s.values_per_coord[j]])
                .collect(),
            next_coset: vec![0; order.len()],
            next_value: order
                .iter()
                .map(|&j| vec![0; s.cosets_per_coord[j]])
                .collect(),
            current: Vec::with_capacity(s.tiles * order.len() * 2),
        }
    }

    fn width(&self) -> usize {
        2 * self.order.len()
    }

    fn code_into(&self, t: usize, out: &mut Vec<u32>) {
        out.clear();
        for (p, &j) in self.order.iter().enumerate() {
            let v = self.s.val(t, j) as usize;
            let c = self.s.coset[j][v] as usize;
            let cl = self.coset_label[p][c];
            let (cl, vl) = if cl == UNSET {
                (self.next_coset[p], 0)
            } else if self.value_label[p][v] == UNSET {
                (cl, self.next_value[p][c])
            } else {
                (cl, self.value_label[p][v])
            };
            out.push(cl);
            out.push(vl);
        }
    }

    fn assign(&mut self, t: usize) -> Vec<(bool, bool)> {
        let mut undo = Vec::with_capacity(self.order.len());
        for (p, &j) in self.order.iter().enumerate() {
            let v = self.s.val(t, j) as usize;
            let c = self.s.coset[j][v] as usize;
            let new_coset = self.coset_label[p][c] == UNSET;
            if new_coset {
                self.coset_label[p][c] = self.next_coset[p];
                self.next_coset[p] += 1;
            }
            let new_value = self.value_label[p][v] == UNSET;
            if new_value {
                self.value_label[p][v] = self.next_value[p][c];
                self.next_value[p][c] += 1;
            }
            undo.push((new_coset, new_value));
        }
        self.used[t] = true;
        undo
    }

    fn unassign(&mut self, t: usize, undo: &[(bool, bool)]) {
        for (p, &j) in self.order.iter().enumerate() {
            let v = self.s.val(t, j) as usize;
            let c = self.s.coset[j][v] as usize;
            let (new_coset, new_value) = undo[p];
            if new_value {
                self.value_label[p][v] = UNSET;
                self.next_value[p][c] -= 1;
            }
            if new_coset {
                self.coset_label[p][c] = UNSET;
                self.next_coset[p] -= 1;
            }
        }
        self.used[t] = false;
    }

    fn run(&mut self, best: &mut Option<Vec<u32>>) {
        self.descend(0, best);
    }

    fn descend(&mut self, level: usize, best: &mut Option<Vec<u32>>) {
        let w = self.width();
        if level == self.s.tiles {
            let better = match best {
                None => true,
                Some(b) => self.current < *b,
            };
            if better {
                *best = Some(self.current.clone());
            }
            return;
        }

        let mut least: Option<Vec<u32>> = None;
        let mut ties = Vec::new();
        let mut code = Vec::with_capacity(w);
        for t in 0..self.s.tiles {
            if self.used[t] {
                continue;
            }
            self.code_into(t, &mut code);
            match &least {
                Some(m) if code > *m => {}
                Some(m) if code == *m => ties.push(t),
                _ => {
                    least = Some(code.clone());
                    ties.clear();
                    ties.push(t);
                }
            }
        }
        let least = least.expect("unused tile remains");

        for t in ties {
            // Compare the extended prefix with the best sequence found so far.
            if let Some(b) = best.as_ref() {
                let start = level * w;
                match self.current[..].cmp(&b[..start]) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Equal => {
                        if least[..] > b[start..start + w] {
                            return;
                        }
                    }
                    std::cmp::Ordering::Less => {}
                }
            }
            let undo = self.assign(t);
            self.current.extend_from_slice(&least);
            self.descend(level + 1, best);
            self.current.truncate(level * w);
            self.unassign(t, &undo);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn brick() -> TilingInstance {
        parse_instance("dim 2\nperiod 1 2\ntile 0/1 0/1\ntile 1/2 1/1\n").unwrap()
    }

    fn swapped_brick() -> TilingInstance {
        parse_instance("dim 2\nperiod 2 1\ntile 0/1 0/1\ntile 1/1 1/2\n").unwrap()
    }

    fn z2() -> TilingInstance {
        parse_instance("dim 2\nperiod 1 1\ntile 0/1 0/1\n").unwrap()
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(
            permutations(3),
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn brick_and_swapped_brick() {
        let w = are_isomorphic(&brick(), &swapped_brick()).expect("isomorphic");
        assert_eq!(w.sigma, vec![1, 0]);
        assert!(w.certifies(&brick(), &swapped_brick()));
        assert!(w.inverse().certifies(&swapped_brick(), &brick()));
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let b = brick();
        let w = are_isomorphic(&b, &b).unwrap();
        assert_eq!(w.sigma, vec![0, 1]);
        assert!(w.tile_map.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        assert!(are_isomorphic(&z2(), &brick()).is_none());
    }

    #[test]
    fn canonical_keys() {
        let kb = canonical_form(&brick()).unwrap();
        assert_eq!(kb, canonical_form(&swapped_brick()).unwrap());
        assert_ne!(canonical_form(&z2()).unwrap(), kb);
        assert!(kb
            .to_hex()
            .chars()
            .all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    }

    #[test]
    fn canonical_key_ignores_actual_values() {
        let a = parse_instance(
            "dim 2\nperiod 2 2\ntile 0/1 0/1\ntile 1/1 0/1\ntile 1/2 1/1\ntile 3/2 1/1\n",
        )
        .unwrap();
        let b = parse_instance(
            "dim 2\nperiod 2 2\ntile 1/3 1/1\ntile 4/3 1/1\ntile 1/5 0/1\ntile 6/5 0/1\n",
        )
        .unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(are_isomorphic(&a, &b).is_some());
    }

    #[test]
    fn lattice_and_shifted_rows_differ() {
        let lattice = parse_instance(
            "dim 2\nperiod 2 2\ntile 0/1 0/1\ntile 1/1 0/1\ntile 0/1 1/1\ntile 1/1 1/1\n",
        )
        .unwrap();
        let rows = parse_instance(
            "dim 2\nperiod 2 2\ntile 0/1 0/1\ntile 1/1 0/1\ntile 1/2 1/1\ntile 3/2 1/1\n",
        )
        .unwrap();
        assert!(are_isomorphic(&lattice, &rows).is_none());
        assert_ne!(
            canonical_form(&lattice).unwrap(),
            canonical_form(&rows).unwrap()
        );
    }

    #[test]
    fn dimension_guard() {
        let x =
            TilingInstance::new(vec![1; 9], vec![TileVector(vec![Default::default(); 9])]).unwrap();
        assert_eq!(
            canonical_form(&x),
            Err(CanonError::DimensionTooLarge { dim: 9, max: 8 })
        );
    }
}
