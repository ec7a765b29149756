use std::collections::HashMap;

use super::simplicial::{coface, full_mask, largest_missing, mask_of, pull_through_face, surjection, FaceRef, SimplicialSet};
use super::SsetError;

/// A face of a nondegenerate `(p, q)`-cell: a cell written as a horizontal
/// and a vertical degeneracy of a nondegenerate base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiFace {
    pub target: u32,
    pub hmask: u32,
    pub vmask: u32,
}

/// An arbitrary `(p, q)`-cell in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiSimplex {
    pub p: usize,
    pub q: usize,
    pub base: u32,
    pub hmask: u32,
    pub vmask: u32,
}

impl BiSimplex {
    pub fn base_dims(&self) -> (usize, usize) {
        (self.p - self.hmask.count_ones() as usize, self.q - self.vmask.count_ones() as usize)
    }
}

/// A bisimplicial set given by nondegenerate cells in bidegrees `(p, q)` with
/// `p, q <= top`, with horizontal faces (`p + 1` per cell) and vertical faces
/// (`q + 1` per cell).
#[derive(Clone, Debug)]
pub struct BisimplicialSet {
    top: usize,
    complete: bool,
    counts: Vec<Vec<usize>>,
    hfaces: Vec<Vec<Vec<BiFace>>>,
    vfaces: Vec<Vec<Vec<BiFace>>>,
}

impl BisimplicialSet {
    pub fn new(
        counts: Vec<Vec<usize>>,
        hfaces: Vec<Vec<Vec<BiFace>>>,
        vfaces: Vec<Vec<Vec<BiFace>>>,
        complete: bool,
    ) -> Result<Self, SsetError> {
        let t = counts.len();
        if t == 0 || hfaces.len() != t || vfaces.len() != t {
            return Err(SsetError::Malformed("bisimplicial tables must be square".into()));
        }
        for p in 0..t {
            if counts[p].len() != t || hfaces[p].len() != t || vfaces[p].len() != t {
                return Err(SsetError::Malformed("bisimplicial tables must be square".into()));
            }
            for q in 0..t {
                let hn = if p == 0 { 0 } else { counts[p][q] * (p + 1) };
                let vn = if q == 0 { 0 } else { counts[p][q] * (q + 1) };
                if hfaces[p][q].len() != hn || vfaces[p][q].len() != vn {
                    return Err(SsetError::Malformed(format!("bidegree ({p}, {q}): face table has wrong length")));
                }
                let check = |f: &BiFace, dp: usize, dq: usize| {
                    let bp = dp.checked_sub(f.hmask.count_ones() as usize);
                    let bq = dq.checked_sub(f.vmask.count_ones() as usize);
                    matches!((bp, bq), (Some(a), Some(b)) if (f.target as usize) < counts[a][b]
                        && f.hmask >> dp == 0 && f.vmask >> dq == 0)
                };
                if p > 0 && !hfaces[p][q].iter().all(|f| check(f, p - 1, q)) {
                    return Err(SsetError::Malformed(format!("bidegree ({p}, {q}): bad horizontal face")));
                }
                if q > 0 && !vfaces[p][q].iter().all(|f| check(f, p, q - 1)) {
                    return Err(SsetError::Malformed(format!("bidegree ({p}, {q}): bad vertical face")));
                }
            }
        }
        Ok(Self { top: t - 1, complete, counts, hfaces, vfaces })
    }

    /// `X` placed in horizontal degree 0, constant in the horizontal direction.
    pub fn constant(x: &SimplicialSet) -> Self {
        let t = x.top();
        let mut counts = vec![vec![0; t + 1]; t + 1];
        let hfaces = vec![vec![Vec::new(); t + 1]; t + 1];
        let mut vfaces = vec![vec![Vec::new(); t + 1]; t + 1];
        for q in 0..=t {
            counts[0][q] = x.count(q);
            if q > 0 {
                vfaces[0][q] = x
                    .face_table(q)
                    .iter()
                    .map(|f| BiFace { target: f.target, hmask: 0, vmask: f.degeneracy })
                    .collect();
            }
        }
        Self { top: t, complete: x.is_complete(), counts, hfaces, vfaces }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.counts[p][q]
    }

    pub fn hface(&self, p: usize, q: usize, x: u32, i: usize) -> BiFace {
        self.hfaces[p][q][x as usize * (p + 1) + i]
    }

    pub fn vface(&self, p: usize, q: usize, x: u32, j: usize) -> BiFace {
        self.vfaces[p][q][x as usize * (q + 1) + j]
    }

    /// Applies `theta_h: [a] -> [p]` and `theta_v: [b] -> [q]` to the
    /// nondegenerate `(p, q)`-cell `base`.
    pub fn apply(&self, mut p: usize, mut q: usize, mut base: u32, mut th: Vec<usize>, mut tv: Vec<usize>) -> BiSimplex {
        loop {
            if let Some(j) = largest_missing(&th, p) {
                let f = self.hface(p, q, base, j);
                th = pull_through_face(&th, j, p - 1, f.hmask);
                let sv = surjection(q, f.vmask);
                tv = tv.iter().map(|&v| sv[v]).collect();
                p = p - 1 - f.hmask.count_ones() as usize;
                q -= f.vmask.count_ones() as usize;
                base = f.target;
            } else if let Some(j) = largest_missing(&tv, q) {
                let f = self.vface(p, q, base, j);
                tv = pull_through_face(&tv, j, q - 1, f.vmask);
                let sh = surjection(p, f.hmask);
                th = th.iter().map(|&v| sh[v]).collect();
                q = q - 1 - f.vmask.count_ones() as usize;
                p -= f.hmask.count_ones() as usize;
                base = f.target;
            } else {
                return BiSimplex { p: th.len() - 1, q: tv.len() - 1, base, hmask: mask_of(&th), vmask: mask_of(&tv) };
            }
        }
    }

    /// Horizontal face `i` of an arbitrary cell.
    pub fn dh(&self, x: BiSimplex, i: usize) -> BiSimplex {
        let (bp, bq) = x.base_dims();
        let sh = surjection(x.p, x.hmask);
        let th = coface(x.p, i).into_iter().map(|v| sh[v]).collect();
        self.apply(bp, bq, x.base, th, surjection(x.q, x.vmask))
    }

    /// Vertical face `j` of an arbitrary cell.
    pub fn dv(&self, x: BiSimplex, j: usize) -> BiSimplex {
        let (bp, bq) = x.base_dims();
        let sv = surjection(x.q, x.vmask);
        let tv = coface(x.q, j).into_iter().map(|v| sv[v]).collect();
        self.apply(bp, bq, x.base, surjection(x.p, x.hmask), tv)
    }

    /// Exhaustive check of the horizontal and vertical simplicial identities and
    /// of commutation between the two directions.
    pub fn check_identities(&self) -> Result<(), SsetError> {
        for p in 0..=self.top {
            for q in 0..=self.top {
                for x in 0..self.counts[p][q] as u32 {
                    let c = BiSimplex { p, q, base: x, hmask: 0, vmask: 0 };
                    let fail = |i, j| Err(SsetError::BiIdentityViolation { p, q, cell: x, i, j });
                    for j in 1..=(if p >= 2 { p } else { 0 }) {
                        for i in 0..j {
                            if self.dh(self.dh(c, j), i) != self.dh(self.dh(c, i), j - 1) {
                                return fail(i, j);
                            }
                        }
                    }
                    for j in 1..=(if q >= 2 { q } else { 0 }) {
                        for i in 0..j {
                            if self.dv(self.dv(c, j), i) != self.dv(self.dv(c, i), j - 1) {
                                return fail(i, j);
                            }
                        }
                    }
                    if p > 0 && q > 0 {
                        for i in 0..=p {
                            for j in 0..=q {
                                if self.dh(self.dv(c, j), i) != self.dv(self.dh(c, i), j) {
                                    return fail(i, j);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The diagonal simplicial set with, for each nondegenerate `n`-simplex, the
/// `(n, n)`-cell it stands for.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub sset: SimplicialSet,
    keys: Vec<Vec<BiSimplex>>,
}

impl Diagonal {
    pub fn key(&self, n: usize, x: u32) -> BiSimplex {
        self.keys[n][x as usize]
    }
}

/// Masks over `n` positions with exactly `k` bits, ascending.
fn masks_with(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0..=full_mask(n)).filter(move |m| m.count_ones() as usize == k)
}

/// Drops the positions in `common` from `mask`, compacting the rest.
fn compress(mask: u32, common: u32, n: usize) -> u32 {
    let mut out = 0;
    let mut k = 0;
    for j in 0..n {
        if common & (1 << j) == 0 {
            if mask & (1 << j) != 0 {
                out |= 1 << k;
            }
            k += 1;
        }
    }
    out
}

/// The diagonal `n -> B_{n,n}`. A diagonal simplex is nondegenerate exactly
/// when its horizontal and vertical degeneracies share no position.
pub fn diagonal(b: &BisimplicialSet) -> Diagonal {
    let top = b.top;
    let mut keys: Vec<Vec<BiSimplex>> = Vec::with_capacity(top + 1);
    let mut lookup: Vec<HashMap<BiSimplex, u32>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut list = Vec::new();
        for p in 0..=n {
            for q in 0..=n {
                if (n - p) + (n - q) > n {
                    continue;
                }
                for x in 0..b.counts[p][q] as u32 {
                    for hm in masks_with(n, n - p) {
                        for vm in masks_with(n, n - q).filter(|vm| vm & hm == 0) {
                            list.push(BiSimplex { p: n, q: n, base: x, hmask: hm, vmask: vm });
                        }
                    }
                }
            }
        }
        lookup.push(list.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect());
        keys.push(list);
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let mut table = Vec::with_capacity(keys[n].len() * (n + 1));
        for key in &keys[n] {
            for i in 0..=n {
                let (bp, bq) = key.base_dims();
                let (sh, sv) = (surjection(n, key.hmask), surjection(n, key.vmask));
                let th = coface(n, i).into_iter().map(|v| sh[v]).collect();
                let tv = coface(n, i).into_iter().map(|v| sv[v]).collect();
                let f = b.apply(bp, bq, key.base, th, tv);
                let common = f.hmask & f.vmask;
                let m = n - 1 - common.count_ones() as usize;
                let reduced = BiSimplex {
                    p: m,
                    q: m,
                    base: f.base,
                    hmask: compress(f.hmask, common, n - 1),
                    vmask: compress(f.vmask, common, n - 1),
                };
                let target = lookup[m][&reduced];
                table.push(FaceRef { target, degeneracy: common });
            }
        }
        faces.push(table);
    }
    let counts: Vec<usize> = keys.iter().map(Vec::len).collect();
    let beyond = (0..=top).any(|p| (0..=top).any(|q| p + q > top && b.counts[p][q] > 0));
    let complete = b.complete && !beyond;
    Diagonal { sset: SimplicialSet::from_raw(counts, faces, complete), keys }
}
