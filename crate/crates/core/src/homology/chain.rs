use crate::sset::SimplicialSet;

use super::{HomologyError, IntMatrix};

/// A finite chain complex of free abelian groups in degrees `0..=top`.
///
/// `boundary(n)` maps `C_n -> C_{n-1}`; `boundary(0)` is the zero map to the
/// zero group. Homology is trustworthy through `valid_through`; above it the
/// complex is a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    valid_through: Option<usize>,
}

impl ChainComplex {
    /// Checks shapes and `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>, valid_through: Option<usize>) -> Result<Self, HomologyError> {
        if ranks.is_empty() || boundaries.len() != ranks.len() {
            return Err(HomologyError::Malformed("one boundary matrix per degree expected".into()));
        }
        for n in 0..ranks.len() {
            let rows = if n == 0 { 0 } else { ranks[n - 1] };
            if boundaries[n].rows() != rows || boundaries[n].cols() != ranks[n] {
                return Err(HomologyError::Malformed(format!("boundary in degree {n} has the wrong shape")));
            }
        }
        if valid_through.is_some_and(|v| v >= ranks.len()) {
            return Err(HomologyError::Malformed("validity range beyond the top degree".into()));
        }
        let cc = Self { ranks, boundaries, valid_through };
        if let Some(n) = cc.first_nonzero_square() {
            return Err(HomologyError::NotAComplex(n));
        }
        Ok(cc)
    }

    pub(crate) fn from_parts_unchecked(ranks: Vec<usize>, boundaries: Vec<IntMatrix>, valid_through: Option<usize>) -> Self {
        Self { ranks, boundaries, valid_through }
    }

    /// Lowest `n` with `∂_{n-1} ∂_n != 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (2..self.ranks.len()).find(|&n| {
            self.boundaries[n - 1].checked_mul(&self.boundaries[n]).is_none_or(|m| !m.is_zero())
        })
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }

    pub fn valid_through(&self) -> Option<usize> {
        self.valid_through
    }

    /// True when nothing was dropped above the top degree.
    pub fn is_complete(&self) -> bool {
        self.valid_through == Some(self.top())
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }
}

/// Normalized chains of `x` in degrees `0..=top`: nondegenerate simplices as
/// generators, alternating face sums with degenerate faces dropped.
pub fn normalized_chains(x: &SimplicialSet, top: usize) -> Result<ChainComplex, HomologyError> {
    if top > x.top() {
        return Err(HomologyError::InsufficientTop { requested: top, available: x.top() });
    }
    let ranks: Vec<usize> = (0..=top).map(|n| x.count(n)).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=top {
        let mut cols = Vec::with_capacity(ranks[n]);
        for row in x.face_table(n).chunks_exact(n + 1) {
            let mut col: Vec<(u32, i64)> = Vec::with_capacity(n + 1);
            for (i, f) in row.iter().enumerate() {
                if f.degeneracy == 0 {
                    col.push((f.target, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for (r, v) in col {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            cols.push(merged);
        }
        boundaries.push(IntMatrix::from_columns(ranks[n - 1], cols));
    }
    let valid = if top == x.top() && x.is_complete() { Some(top) } else { top.checked_sub(1) };
    let cc = ChainComplex::from_parts_unchecked(ranks, boundaries, valid);
    assert!(cc.first_nonzero_square().is_none(), "normalized chains must square to zero");
    Ok(cc)
}
