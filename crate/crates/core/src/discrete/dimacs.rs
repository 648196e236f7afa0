//! DIMACS export of the compatibility graph.

use std::fmt::Write;

use super::{KellerModel, SearchBudget, SearchError};

/// `p edge <V> <E>` followed by `e i j` (`i < j`, both ascending), with
/// vertices numbered from 1 in lexicographic position order.
pub fn export_dimacs(n: usize, s: u32, budget: SearchBudget) -> Result<String, SearchError> {
    let model = KellerModel::new(n, s)?;
    let count = model.check_budget(budget)?;
    let vertices: Vec<u64> = (0..count).map(|i| model.vertex_at(i)).collect();
    let mut edges = String::new();
    let mut e = 0usize;
    for (i, &u) in vertices.iter().enumerate() {
        let antipode = model.antipode(u);
        for (k, &v) in vertices.iter().enumerate().skip(i + 1) {
            if model.compatible_with_antipode(antipode, v) {
                writeln!(edges, "e {} {}", i + 1, k + 1).unwrap();
                e += 1;
            }
        }
    }
    Ok(format!("p edge {count} {e}\n{edges}"))
}
