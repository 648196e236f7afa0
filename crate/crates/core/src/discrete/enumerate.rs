//! Exhaustive enumeration of discrete tilings as maximum cliques.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{DiscreteTiling, KellerModel, SearchBudget, SearchError};
use crate::iso::{canonical_form, CanonicalKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerateOptions {
    /// Emit only the first tiling of every isomorphism class.
    pub dedup_canonical: bool,
    pub limit: Option<usize>,
}

type Bits = Vec<u64>;

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Compatibility graph with one adjacency bitset per vertex; vertex `i` is
/// the position with mixed-radix index `i`.
struct KellerGraph {
    model: KellerModel,
    vertices: Vec<u64>,
    adjacency: Vec<Bits>,
    words: usize,
}

impl KellerGraph {
    fn new(model: KellerModel, budget: SearchBudget) -> Result<Self, SearchError> {
        let count = model.check_budget(budget)?;
        let words = count.div_ceil(64);
        let vertices: Vec<u64> = (0..count).map(|i| model.vertex_at(i)).collect();
        let antipodes: Vec<u64> = vertices.iter().map(|&v| model.antipode(v)).collect();
        let adjacency = (0..count)
            .map(|i| {
                let mut row = vec![0u64; words];
                for (k, &v) in vertices.iter().enumerate() {
                    if k != i && model.compatible_with_antipode(antipodes[i], v) {
                        row[k / 64] |= 1 << (k % 64);
                    }
                }
                row
            })
            .collect();
        Ok(KellerGraph {
            model,
            vertices,
            adjacency,
            words,
        })
    }

    /// `bits & adj[v]`, keeping only indices above `v`.
    fn extend(&self, bits: &[u64], v: usize) -> Bits {
        let mut out: Bits = bits
            .iter()
            .zip(&self.adjacency[v])
            .map(|(a, b)| a & b)
            .collect();
        let w = v / 64;
        for word in out.iter_mut().take(w) {
            *word = 0;
        }
        let keep = if v % 64 == 63 {
            0
        } else {
            !0u64 << (v % 64 + 1)
        };
        out[w] &= keep;
        out
    }
}

fn next_bit(bits: &[u64], from: usize) -> Option<usize> {
    let mut w = from / 64;
    if w >= bits.len() {
        return None;
    }
    let mut word = bits[w] & (!0u64 << (from % 64));
    loop {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
        w += 1;
        if w == bits.len() {
            return None;
        }
        word = bits[w];
    }
}

struct Frame {
    candidates: Bits,
    next: usize,
}

/// Depth-first stream of all tilings, in lexicographic order of their
/// sorted vertex lists.
pub struct TilingStream {
    graph: std::sync::Arc<KellerGraph>,
    target: usize,
    chosen: Vec<usize>,
    stack: Vec<Frame>,
    /// Length of a fixed prefix that the search never backtracks past.
    floor: usize,
}

impl TilingStream {
    fn with_prefix(graph: std::sync::Arc<KellerGraph>, prefix: &[usize]) -> Self {
        let target = graph.model.tiling_size();
        let mut candidates = vec![!0u64; graph.words];
        let count = graph.vertices.len();
        if !count.is_multiple_of(64) {
            candidates[graph.words - 1] = (1u64 << (count % 64)) - 1;
        }
        let mut ok = true;
        for &v in prefix {
            if candidates[v / 64] >> (v % 64) & 1 == 0 {
                ok = false;
                break;
            }
            candidates = graph.extend(&candidates, v);
        }
        let stack = if ok {
            vec![Frame {
                candidates,
                next: 0,
            }]
        } else {
            Vec::new()
        };
        TilingStream {
            target,
            chosen: prefix.to_vec(),
            stack,
            floor: prefix.len(),
            graph,
        }
    }

    fn emit(&self) -> DiscreteTiling {
        let vertices = self
            .chosen
            .iter()
            .map(|&i| self.graph.vertices[i])
            .collect();
        DiscreteTiling::from_sorted_unchecked(self.graph.model, vertices)
    }
}

impl Iterator for TilingStream {
    type Item = DiscreteTiling;

    fn next(&mut self) -> Option<DiscreteTiling> {
        while let Some(frame) = self.stack.last_mut() {
            let Some(v) = next_bit(&frame.candidates, frame.next) else {
                self.stack.pop();
                if self.chosen.len() > self.floor {
                    self.chosen.pop();
                }
                continue;
            };
            frame.next = v + 1;
            let remaining = self.graph.extend(&frame.candidates, v);
            let depth = self.chosen.len() + 1;
            if depth + popcount(&remaining) < self.target {
                continue;
            }
            self.chosen.push(v);
            if depth == self.target {
                let out = self.emit();
                self.chosen.pop();
                return Some(out);
            }
            self.stack.push(Frame {
                candidates: remaining,
                next: 0,
            });
        }
        None
    }
}

/// All tilings of the `(n, s)` model in lexicographic order, optionally
/// reduced to one per isomorphism class and truncated to `limit`.
pub fn enumerate_tilings(
    n: usize,
    s: u32,
    options: EnumerateOptions,
    budget: SearchBudget,
) -> Result<Box<dyn Iterator<Item = DiscreteTiling>>, SearchError> {
    let model = KellerModel::new(n, s)?;
    let graph = std::sync::Arc::new(KellerGraph::new(model, budget)?);
    let stream = TilingStream::with_prefix(graph, &[]);
    let iter: Box<dyn Iterator<Item = DiscreteTiling>> = if options.dedup_canonical {
        let mut seen: HashSet<CanonicalKey> = HashSet::new();
        Box::new(stream.filter(move |d| {
            let key = canonical_form(&super::to_exact(d)).expect("dimension within canon bound");
            seen.insert(key)
        }))
    } else {
        Box::new(stream)
    };
    Ok(match options.limit {
        Some(limit) => Box::new(iter.take(limit)),
        None => iter,
    })
}

/// Same stream as [`enumerate_tilings`] without options, computed by
/// splitting on the first vertex and merging subtrees in order.
pub fn enumerate_parallel(
    n: usize,
    s: u32,
    budget: SearchBudget,
) -> Result<Vec<DiscreteTiling>, SearchError> {
    let model = KellerModel::new(n, s)?;
    let graph = std::sync::Arc::new(KellerGraph::new(model, budget)?);
    let parts: Vec<Vec<DiscreteTiling>> = (0..graph.vertices.len())
        .into_par_iter()
        .map(|v| TilingStream::with_prefix(graph.clone(), &[v]).collect())
        .collect();
    Ok(parts.into_iter().flatten().collect())
}
