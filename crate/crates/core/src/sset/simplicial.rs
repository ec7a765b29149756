use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::SsetError;

/// Face of a nondegenerate `n`-simplex: an `(n-1)`-simplex written as a
/// degeneracy of a nondegenerate base.
///
/// `degeneracy` has bit `j` set when vertices `j` and `j+1` of the face
/// coincide, i.e. the face lies in the image of `s_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceRef {
    pub target: u32,
    pub degeneracy: u32,
}

/// An arbitrary simplex in Eilenberg–Zilber normal form: a degeneracy
/// (bitmask over `dim` positions) applied to a nondegenerate base simplex of
/// dimension `dim - degeneracy.count_ones()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub dim: usize,
    pub base: u32,
    pub degeneracy: u32,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, base: u32) -> Self {
        Self { dim, base, degeneracy: 0 }
    }

    pub fn base_dim(&self) -> usize {
        self.dim - self.degeneracy.count_ones() as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy != 0
    }

    /// The vertex `v` degenerated to dimension `dim`.
    pub fn totally_degenerate(v: u32, dim: usize) -> Self {
        Self { dim, base: v, degeneracy: full_mask(dim) }
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// The monotone surjection `[n] -> [n - popcount]` described by `mask`.
pub fn surjection(n: usize, mask: u32) -> Vec<usize> {
    let mut sigma = Vec::with_capacity(n + 1);
    let mut v = 0;
    sigma.push(0);
    for j in 0..n {
        if mask & (1 << j) == 0 {
            v += 1;
        }
        sigma.push(v);
    }
    sigma
}

/// Inverse of [`surjection`] for a monotone surjection.
pub fn mask_of(sigma: &[usize]) -> u32 {
    let mut mask = 0;
    for j in 0..sigma.len().saturating_sub(1) {
        if sigma[j] == sigma[j + 1] {
            mask |= 1 << j;
        }
    }
    mask
}

/// The coface map `[n-1] -> [n]` skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&v| v != i).collect()
}

/// Largest value of `[m]` not hit by `theta`, if any.
pub(crate) fn largest_missing(theta: &[usize], m: usize) -> Option<usize> {
    let mut hit = vec![false; m + 1];
    for &v in theta {
        hit[v] = true;
    }
    (0..=m).rev().find(|&v| !hit[v])
}

/// `sigma . shift_j(theta)`: theta skips value `j`; shift it into `[m-1]` and
/// compose with the face's own degeneracy.
pub(crate) fn pull_through_face(theta: &[usize], j: usize, face_dim: usize, face_mask: u32) -> Vec<usize> {
    let sigma = surjection(face_dim, face_mask);
    theta.iter().map(|&v| sigma[if v < j { v } else { v - 1 }]).collect()
}

/// A simplicial set given by its nondegenerate simplices up to a top
/// dimension and the face maps on them.
///
/// `complete` records that no nondegenerate simplices exist above `top`; when
/// it is false the value is a truncation and homology is only trustworthy
/// below `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    top: usize,
    complete: bool,
    counts: Vec<usize>,
    faces: Vec<Vec<FaceRef>>,
}

impl SimplicialSet {
    /// `faces[n]` lists the `n+1` faces of each nondegenerate `n`-simplex in
    /// order; `faces[0]` is empty.
    pub fn new(counts: Vec<usize>, faces: Vec<Vec<FaceRef>>, complete: bool) -> Result<Self, SsetError> {
        if counts.is_empty() || faces.len() != counts.len() {
            return Err(SsetError::Malformed("need one face table per dimension, starting at 0".into()));
        }
        let top = counts.len() - 1;
        for n in 1..=top {
            if faces[n].len() != counts[n] * (n + 1) {
                return Err(SsetError::Malformed(format!("dimension {n}: face table has wrong length")));
            }
            for f in &faces[n] {
                let sub = (n - 1).checked_sub(f.degeneracy.count_ones() as usize);
                let ok = match sub {
                    Some(d) => f.degeneracy >> (n - 1) == 0 && (f.target as usize) < counts[d],
                    None => false,
                };
                if !ok {
                    return Err(SsetError::Malformed(format!("dimension {n}: face reference {f:?} is invalid")));
                }
            }
        }
        if !faces[0].is_empty() {
            return Err(SsetError::Malformed("vertices have no faces".into()));
        }
        Ok(Self { top, complete, counts, faces })
    }

    pub(crate) fn from_raw(counts: Vec<usize>, faces: Vec<Vec<FaceRef>>, complete: bool) -> Self {
        let top = counts.len() - 1;
        Self { top, complete, counts, faces }
    }

    pub fn point() -> Self {
        Self::from_raw(vec![1], vec![Vec::new()], true)
    }

    /// `k` isolated points.
    pub fn points(k: usize) -> Self {
        Self::from_raw(vec![k], vec![Vec::new()], true)
    }

    /// The simplicial set of an ordered simplicial complex given by facets
    /// (vertex lists, sorted internally). Simplices are ordered by dimension,
    /// then lexicographically.
    pub fn from_complex(facets: &[Vec<usize>]) -> Self {
        use std::collections::BTreeSet;
        let mut all: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            let k = f.len();
            for bits in 1u64..(1u64 << k) {
                let s: Vec<usize> = (0..k).filter(|&i| bits & (1 << i) != 0).map(|i| f[i]).collect();
                let d = s.len() - 1;
                if all.len() <= d {
                    all.resize_with(d + 1, BTreeSet::new);
                }
                all[d].insert(s);
            }
        }
        if all.is_empty() {
            return Self::from_raw(vec![0], vec![Vec::new()], true);
        }
        let lists: Vec<Vec<Vec<usize>>> = all.into_iter().map(|s| s.into_iter().collect()).collect();
        let counts = lists.iter().map(Vec::len).collect();
        let mut faces = vec![Vec::new()];
        for n in 1..lists.len() {
            let mut table = Vec::with_capacity(lists[n].len() * (n + 1));
            for s in &lists[n] {
                for i in 0..=n {
                    let mut f = s.clone();
                    f.remove(i);
                    let idx = lists[n - 1].binary_search(&f).expect("faces of a complex are present");
                    table.push(FaceRef { target: idx as u32, degeneracy: 0 });
                }
            }
            faces.push(table);
        }
        Self::from_raw(counts, faces, true)
    }

    /// The standard `n`-simplex.
    pub fn simplex(n: usize) -> Self {
        Self::from_complex(&[(0..=n).collect()])
    }

    /// The boundary of the standard `n`-simplex (`n >= 1`).
    pub fn boundary_of_simplex(n: usize) -> Self {
        let facets: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).filter(|&v| v != i).collect()).collect();
        Self::from_complex(&facets)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Highest degree in which homology computed from this value is exact.
    pub fn valid_through(&self) -> Option<usize> {
        if self.complete {
            Some(self.top)
        } else {
            self.top.checked_sub(1)
        }
    }

    /// Number of nondegenerate `n`-simplices (0 above the top dimension).
    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_simplices(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Face `i` of the nondegenerate `n`-simplex `x`.
    pub fn face_ref(&self, n: usize, x: u32, i: usize) -> FaceRef {
        self.faces[n][x as usize * (n + 1) + i]
    }

    pub fn face_table(&self, n: usize) -> &[FaceRef] {
        &self.faces[n]
    }

    /// Applies the simplicial operator `theta: [k] -> [x.dim]` to `x`.
    pub fn apply(&self, x: Simplex, theta: &[usize]) -> Simplex {
        let sigma = surjection(x.dim, x.degeneracy);
        let rho: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
        self.apply_to_base(x.base, x.base_dim(), rho)
    }

    fn apply_to_base(&self, mut base: u32, mut m: usize, mut rho: Vec<usize>) -> Simplex {
        while let Some(j) = largest_missing(&rho, m) {
            let f = self.face_ref(m, base, j);
            rho = pull_through_face(&rho, j, m - 1, f.degeneracy);
            m = m - 1 - f.degeneracy.count_ones() as usize;
            base = f.target;
        }
        Simplex { dim: rho.len() - 1, base, degeneracy: mask_of(&rho) }
    }

    /// `d_i x` for an arbitrary simplex.
    pub fn face(&self, x: Simplex, i: usize) -> Simplex {
        self.apply(x, &coface(x.dim, i))
    }

    /// The vertices of a simplex, in order.
    pub fn vertices(&self, x: Simplex) -> Vec<u32> {
        (0..=x.dim).map(|v| self.apply(x, &[v]).base).collect()
    }

    /// Exhaustive check of `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn check_identities(&self) -> Result<(), SsetError> {
        for n in 2..=self.top {
            for x in 0..self.counts[n] as u32 {
                let s = Simplex::nondegenerate(n, x);
                for j in 1..=n {
                    let dj = self.face(s, j);
                    for i in 0..j {
                        if self.face(dj, i) != self.face(self.face(s, i), j - 1) {
                            return Err(SsetError::IdentityViolation { dim: n, simplex: x, i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The nondegenerate simplices of dimension at most `top`, marked
    /// incomplete if anything was dropped.
    pub fn truncate(&self, top: usize) -> Self {
        if top >= self.top {
            return self.clone();
        }
        let dropped = self.counts[top + 1..].iter().any(|&c| c > 0);
        Self::from_raw(
            self.counts[..=top].to_vec(),
            self.faces[..=top].to_vec(),
            !dropped && self.complete,
        )
    }

    /// Connected components via union-find on the 1-skeleton.
    pub fn pi0(&self) -> usize {
        let n0 = self.count(0);
        if n0 == 0 {
            return 0;
        }
        let mut uf = UnionFind::<usize>::new(n0);
        if self.top >= 1 {
            for e in 0..self.counts[1] as u32 {
                let a = self.face_ref(1, e, 0).target as usize;
                let b = self.face_ref(1, e, 1).target as usize;
                uf.union(a, b);
            }
        }
        let mut labels = uf.into_labeling();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    /// Sub-simplicial set on the nondegenerate simplices accepted by `keep`,
    /// which must be closed under taking faces. Returns the new set and, per
    /// dimension, the old index of each kept simplex.
    pub fn subset(&self, mut keep: impl FnMut(usize, u32) -> bool) -> Result<(Self, Vec<Vec<u32>>), SsetError> {
        let mut kept: Vec<Vec<u32>> = Vec::with_capacity(self.top + 1);
        let mut new_index: Vec<Vec<u32>> = Vec::with_capacity(self.top + 1);
        for n in 0..=self.top {
            let mut k = Vec::new();
            let mut idx = vec![u32::MAX; self.counts[n]];
            for x in 0..self.counts[n] as u32 {
                if keep(n, x) {
                    idx[x as usize] = k.len() as u32;
                    k.push(x);
                }
            }
            kept.push(k);
            new_index.push(idx);
        }
        let mut faces = vec![Vec::new()];
        for n in 1..=self.top {
            let mut table = Vec::with_capacity(kept[n].len() * (n + 1));
            for &x in &kept[n] {
                for i in 0..=n {
                    let f = self.face_ref(n, x, i);
                    let d = n - 1 - f.degeneracy.count_ones() as usize;
                    let t = new_index[d][f.target as usize];
                    if t == u32::MAX {
                        return Err(SsetError::Malformed(format!(
                            "selection not closed under faces at dimension {n}"
                        )));
                    }
                    table.push(FaceRef { target: t, degeneracy: f.degeneracy });
                }
            }
            faces.push(table);
        }
        let counts = kept.iter().map(Vec::len).collect();
        Ok((Self::from_raw(counts, faces, self.complete), kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_masks_round_trip() {
        for n in 0..6 {
            for mask in 0..(1u32 << n) {
                let s = surjection(n, mask);
                assert_eq!(s.len(), n + 1);
                assert_eq!(mask_of(&s), mask);
                assert_eq!(*s.last().unwrap(), n - mask.count_ones() as usize);
            }
        }
    }

    #[test]
    fn boundary_of_triangle() {
        let x = SimplicialSet::boundary_of_simplex(2);
        assert_eq!(x.counts(), &[3, 3]);
        assert_eq!(x.pi0(), 1);
        x.check_identities().unwrap();
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let x = SimplicialSet::simplex(1);
        // s_0 of the edge [0,1] is the 2-simplex (0,0,1)
        let s0 = Simplex { dim: 2, base: 0, degeneracy: 0b01 };
        assert_eq!(x.vertices(s0), vec![0, 0, 1]);
        assert_eq!(x.face(s0, 0), Simplex::nondegenerate(1, 0));
        assert_eq!(x.face(s0, 1), Simplex::nondegenerate(1, 0));
        assert_eq!(x.face(s0, 2), Simplex { dim: 1, base: 0, degeneracy: 1 });
    }

    #[test]
    fn simplices_satisfy_identities() {
        for n in 0..5 {
            SimplicialSet::simplex(n).check_identities().unwrap();
        }
    }

    #[test]
    fn point_counts() {
        assert_eq!(SimplicialSet::point().pi0(), 1);
        assert_eq!(SimplicialSet::points(2).pi0(), 2);
        assert_eq!(SimplicialSet::from_complex(&[]).pi0(), 0);
    }

    #[test]
    fn truncation_marks_incomplete() {
        let x = SimplicialSet::simplex(3);
        let t = x.truncate(1);
        assert!(!t.is_complete());
        assert_eq!(t.valid_through(), Some(0));
        assert_eq!(x.valid_through(), Some(3));
    }
}
