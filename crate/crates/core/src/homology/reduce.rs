use serde::Serialize;

use super::{ChainComplex, IntMatrix};

/// Kind of an elimination step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// The lower cell has exactly one coface.
    FreeFace,
    /// The upper cell has exactly one face.
    Coreduction,
    /// A unit entry with fill-in elsewhere.
    Gaussian,
}

/// One eliminated pair: `lower` in degree `degree`, `upper` in `degree + 1`,
/// both by their index in the input complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub degree: usize,
    pub lower: u32,
    pub upper: u32,
    pub kind: StepKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionLog {
    pub steps: Vec<ReductionStep>,
    pub ranks_before: Vec<usize>,
    pub ranks_after: Vec<usize>,
}

impl ReductionLog {
    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }
}

type Column = Vec<(u32, i64)>;

struct State {
    top: usize,
    alive: Vec<Vec<bool>>,
    /// boundary of each cell (degree >= 1)
    bd: Vec<Vec<Column>>,
    /// cells of degree n+1 whose boundary contains the cell
    cof: Vec<Vec<Vec<u32>>>,
    log: Vec<ReductionStep>,
    work: Vec<(usize, u32)>,
    queued: Vec<Vec<bool>>,
}

fn coef(col: &[(u32, i64)], r: u32) -> Option<i64> {
    col.binary_search_by_key(&r, |&(x, _)| x).ok().map(|i| col[i].1)
}

fn remove_from(list: &mut Vec<u32>, x: u32) {
    if let Some(i) = list.iter().position(|&y| y == x) {
        list.swap_remove(i);
    }
}

impl State {
    fn new(cc: &ChainComplex) -> Self {
        let top = cc.top();
        let alive = (0..=top).map(|n| vec![true; cc.rank(n)]).collect();
        let mut bd: Vec<Vec<Column>> = vec![Vec::new()];
        let mut cof: Vec<Vec<Vec<u32>>> = (0..=top).map(|n| vec![Vec::new(); cc.rank(n)]).collect();
        for n in 1..=top {
            let cols: Vec<Column> = cc.boundary(n).columns().to_vec();
            for (t, col) in cols.iter().enumerate() {
                for &(s, _) in col {
                    cof[n - 1][s as usize].push(t as u32);
                }
            }
            bd.push(cols);
        }
        let queued = (0..=top).map(|n| vec![false; cc.rank(n)]).collect();
        Self { top, alive, bd, cof, log: Vec::new(), work: Vec::new(), queued }
    }

    fn push(&mut self, n: usize, x: u32) {
        if !self.queued[n][x as usize] {
            self.queued[n][x as usize] = true;
            self.work.push((n, x));
        }
    }

    /// A zero-fill pair involving `x` of degree `n`, if any.
    fn cheap_pair(&self, n: usize, x: u32) -> Option<(usize, u32, u32, StepKind)> {
        if !self.alive[n][x as usize] {
            return None;
        }
        // x as the lower cell of a free face
        if n < self.top {
            if let [t] = self.cof[n][x as usize][..] {
                if coef(&self.bd[n + 1][t as usize], x).is_some_and(|c| c.abs() == 1) {
                    return Some((n, x, t, StepKind::FreeFace));
                }
            }
        }
        // x as the upper cell of a coreduction
        if n >= 1 {
            if let [(s, c)] = self.bd[n][x as usize][..] {
                if c.abs() == 1 {
                    return Some((n - 1, s, x, StepKind::Coreduction));
                }
            }
        }
        None
    }

    /// Fill-in estimate for eliminating `(s, t)`.
    fn cost(&self, n: usize, s: u32, t: u32) -> usize {
        (self.bd[n + 1][t as usize].len() - 1) * (self.cof[n][s as usize].len() - 1)
    }

    /// Eliminates the unit pair `s` (degree `n`) / `t` (degree `n + 1`).
    /// Returns false and changes nothing if fill-in would overflow.
    fn eliminate(&mut self, n: usize, s: u32, t: u32, kind: StepKind) -> bool {
        let u = coef(&self.bd[n + 1][t as usize], s).expect("pivot entry present");
        debug_assert!(u.abs() == 1);
        let dt = self.bd[n + 1][t as usize].clone();
        // new boundaries of the other cofaces of s
        let mut updates: Vec<(u32, Column)> = Vec::new();
        for &t2 in &self.cof[n][s as usize] {
            if t2 == t {
                continue;
            }
            let old = &self.bd[n + 1][t2 as usize];
            let a = coef(old, s).expect("coface lists are exact");
            let factor = match a.checked_mul(u) {
                Some(f) => f,
                None => return false,
            };
            match combine(old, &dt, factor, s) {
                Some(col) => updates.push((t2, col)),
                None => return false,
            }
        }
        for (t2, col) in updates {
            let old = std::mem::replace(&mut self.bd[n + 1][t2 as usize], col);
            let new = &self.bd[n + 1][t2 as usize];
            let (mut i, mut j) = (0, 0);
            let mut removed = Vec::new();
            let mut added = Vec::new();
            while i < old.len() || j < new.len() {
                match (old.get(i), new.get(j)) {
                    (Some(&(a, _)), Some(&(b, _))) if a == b => {
                        i += 1;
                        j += 1;
                    }
                    (Some(&(a, _)), Some(&(b, _))) if a < b => {
                        removed.push(a);
                        i += 1;
                    }
                    (Some(_), Some(&(b, _))) => {
                        added.push(b);
                        j += 1;
                    }
                    (Some(&(a, _)), None) => {
                        removed.push(a);
                        i += 1;
                    }
                    (None, Some(&(b, _))) => {
                        added.push(b);
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            for r in removed {
                if r != s {
                    remove_from(&mut self.cof[n][r as usize], t2);
                    self.push(n, r);
                }
            }
            for a in added {
                self.cof[n][a as usize].push(t2);
            }
            self.push(n + 1, t2);
        }
        // drop t from the boundaries of its cofaces
        if n + 2 <= self.top {
            let rhos = std::mem::take(&mut self.cof[n + 1][t as usize]);
            for rho in rhos {
                let col = &mut self.bd[n + 2][rho as usize];
                if let Ok(i) = col.binary_search_by_key(&t, |&(x, _)| x) {
                    col.remove(i);
                }
                self.push(n + 2, rho);
            }
        }
        // unlink t from its faces
        for &(s2, _) in &dt {
            if s2 != s {
                remove_from(&mut self.cof[n][s2 as usize], t);
                self.push(n, s2);
            }
        }
        // unlink s from its faces
        if n >= 1 {
            let ds = std::mem::take(&mut self.bd[n][s as usize]);
            for &(r, _) in &ds {
                remove_from(&mut self.cof[n - 1][r as usize], s);
                self.push(n - 1, r);
            }
        }
        self.bd[n + 1][t as usize].clear();
        self.cof[n][s as usize].clear();
        self.alive[n][s as usize] = false;
        self.alive[n + 1][t as usize] = false;
        self.log.push(ReductionStep { degree: n, lower: s, upper: t, kind });
        true
    }

    fn drain(&mut self) {
        while let Some((n, x)) = self.work.pop() {
            self.queued[n][x as usize] = false;
            if let Some((d, s, t, kind)) = self.cheap_pair(n, x) {
                self.eliminate(d, s, t, kind);
            }
        }
    }

    /// One pass of general unit pivots, cheapest first. Returns whether
    /// anything was eliminated.
    fn gaussian_pass(&mut self) -> bool {
        let mut cands: Vec<(usize, usize, u32, u32)> = Vec::new();
        for n in 0..self.top {
            for t in 0..self.bd[n + 1].len() as u32 {
                if !self.alive[n + 1][t as usize] {
                    continue;
                }
                for &(s, c) in &self.bd[n + 1][t as usize] {
                    if c.abs() == 1 {
                        cands.push((self.cost(n, s, t), n, s, t));
                    }
                }
            }
        }
        cands.sort_unstable();
        let mut any = false;
        for (cost, n, s, t) in cands {
            if !self.alive[n][s as usize] || !self.alive[n + 1][t as usize] {
                continue;
            }
            if !coef(&self.bd[n + 1][t as usize], s).is_some_and(|c| c.abs() == 1) || self.cost(n, s, t) > cost {
                continue;
            }
            if self.eliminate(n, s, t, StepKind::Gaussian) {
                any = true;
                self.drain();
            }
        }
        any
    }
}

/// `old - factor * dt`, with the pivot row `s` dropped. `None` on overflow.
fn combine(old: &[(u32, i64)], dt: &[(u32, i64)], factor: i64, s: u32) -> Option<Column> {
    let mut out = Vec::with_capacity(old.len() + dt.len());
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < dt.len() {
        let (r, v) = match (old.get(i), dt.get(j)) {
            (Some(&(a, x)), Some(&(b, y))) if a == b => {
                i += 1;
                j += 1;
                (a, x.checked_sub(factor.checked_mul(y)?)?)
            }
            (Some(&(a, x)), Some(&(b, _))) if a < b => {
                i += 1;
                (a, x)
            }
            (Some(_), Some(&(b, y))) | (None, Some(&(b, y))) => {
                j += 1;
                (b, factor.checked_mul(y)?.checked_neg()?)
            }
            (Some(&(a, x)), None) => {
                i += 1;
                (a, x)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 && r != s {
            out.push((r, v));
        }
    }
    Some(out)
}

/// Shrinks a chain complex by eliminating pairs of cells joined by a unit
/// incidence, keeping homology in every degree. Zero-fill pairs (free faces
/// and coreductions) are taken first; general unit pivots follow in order of
/// estimated fill-in.
pub fn coreduce(cc: &ChainComplex) -> (ChainComplex, ReductionLog) {
    let mut st = State::new(cc);
    for n in (0..=st.top).rev() {
        for x in (0..cc.rank(n) as u32).rev() {
            st.push(n, x);
        }
    }
    st.drain();
    while st.gaussian_pass() {}

    let top = st.top;
    let index: Vec<Vec<u32>> = st
        .alive
        .iter()
        .map(|a| {
            let mut next = 0u32;
            a.iter()
                .map(|&live| {
                    let i = if live { next } else { u32::MAX };
                    next += live as u32;
                    i
                })
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = st.alive.iter().map(|a| a.iter().filter(|&&x| x).count()).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=top {
        let cols: Vec<Column> = st.bd[n]
            .iter()
            .zip(&st.alive[n])
            .filter(|(_, &live)| live)
            .map(|(col, _)| {
                let mut c: Column = col.iter().map(|&(r, v)| (index[n - 1][r as usize], v)).collect();
                c.sort_unstable_by_key(|&(r, _)| r);
                c
            })
            .collect();
        boundaries.push(IntMatrix::from_columns(ranks[n - 1], cols));
    }
    let log = ReductionLog { steps: st.log, ranks_before: cc.ranks().to_vec(), ranks_after: ranks.clone() };
    let out = ChainComplex::from_parts_unchecked(ranks, boundaries, cc.valid_through());
    debug_assert!(out.first_nonzero_square().is_none());
    (out, log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, normalized_chains};
    use crate::sset::SimplicialSet;

    #[test]
    fn cone_reduces_to_a_point() {
        let cc = normalized_chains(&SimplicialSet::simplex(3), 3).unwrap();
        let (r, log) = coreduce(&cc);
        assert_eq!(r.ranks(), &[1, 0, 0, 0]);
        assert_eq!(log.steps.len(), 7);
        assert_eq!(homology(&r, 3).unwrap(), homology(&cc, 3).unwrap());
    }

    #[test]
    fn triangle_keeps_its_homology() {
        let cc = normalized_chains(&SimplicialSet::boundary_of_simplex(2), 1).unwrap();
        let (r, _) = coreduce(&cc);
        assert_eq!(r.ranks(), &[1, 1]);
        assert_eq!(homology(&r, 1).unwrap().betti, vec![1, 1]);
    }

    #[test]
    fn torsion_survives() {
        use crate::fincat::FinCategory;
        use crate::sset::nerve;
        let n = nerve(&FinCategory::cyclic_group(4), 4);
        let cc = normalized_chains(&n.sset, 4).unwrap();
        let (r, _) = coreduce(&cc);
        assert!(r.total_rank() <= cc.total_rank());
        assert_eq!(homology(&r, 3).unwrap(), homology(&cc, 3).unwrap());
    }
}
