use crate::fincat::FinPoset;
use crate::sset::{nerve_exact, SimplicialSet};

use super::{ManifoldError, ManifoldModel};

/// Closed cells of a one-dimensional model: vertices, then edges.
fn cells(model: &ManifoldModel) -> Vec<Vec<u32>> {
    let n = model.num_points() as u32;
    let mut out: Vec<Vec<u32>> = (0..n).map(|v| vec![v]).collect();
    for v in 0..n {
        for w in model.neighbors(v) {
            if w > v {
                out.push(vec![v, w]);
            }
        }
    }
    out
}

/// Configurations of `j` pairwise separated closed cells, each a cube of the
/// discretized unordered configuration space, ordered by the face relation.
pub fn configuration_cells(model: &ManifoldModel, j: usize) -> Vec<Vec<Vec<u32>>> {
    let cells = cells(model);
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(j);
    fn go(model: &ManifoldModel, cells: &[Vec<u32>], j: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<Vec<u32>>>) {
        if cur.len() == j {
            out.push(cur.iter().map(|&c| cells[c].clone()).collect());
            return;
        }
        for i in from..cells.len() {
            if cur.iter().all(|&c| model.separated(&cells[c], &cells[i])) {
                cur.push(i);
                go(model, cells, j, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(model, &cells, j, 0, &mut cur, &mut out);
    out
}

/// The order complex of the cube complex of `j` separated points moving along
/// the graph: its homology stands in for that of the unordered configuration
/// space of `j` points. Requires a one-dimensional model with at least `3j`
/// vertices.
pub fn config_complex(model: &ManifoldModel, j: usize) -> Result<SimplicialSet, ManifoldError> {
    model.validate()?;
    if model.dimension() != 1 {
        return Err(ManifoldError::Unsupported(format!("configuration complexes need a one-dimensional model, got {model}")));
    }
    if model.num_points() < 3 * j {
        return Err(ManifoldError::TooSmallForJ { model: model.to_string(), j });
    }
    let confs = configuration_cells(model, j);
    let labels = confs.iter().map(|c| format!("{c:?}")).collect();
    // each cell of a face lies in a cell of the larger configuration; cells of
    // a configuration are separated, so the matching is automatically injective
    let poset = FinPoset::from_leq(labels, |a, b| {
        confs[a].iter().all(|x| confs[b].iter().any(|y| x.iter().all(|p| y.contains(p))))
    })?;
    Ok(nerve_exact(&poset.to_category(), j)?.sset)
}
