use crate::fincat::{CatValuedFunctor, FinCategory, MorId};

use super::bisimplicial::{diagonal, BiFace, BisimplicialSet, Diagonal};
use super::map::SimplicialMap;
use super::nerve::{nerve, nerve_map, Nerve};
use super::simplicial::{Simplex, SimplicialSet};
use super::SsetError;

/// A functor from a finite category to simplicial sets.
#[derive(Clone, Debug)]
pub struct SimplicialFunctor {
    pub base: FinCategory,
    pub values: Vec<SimplicialSet>,
    /// `actions[f]` is `F(f): F(source f) -> F(target f)`.
    pub actions: Vec<SimplicialMap>,
}

impl SimplicialFunctor {
    /// The constant functor at `x`.
    pub fn constant(base: FinCategory, x: SimplicialSet) -> Self {
        let id = SimplicialMap::identity(&x);
        let values = vec![x; base.num_objects()];
        let actions = vec![id; base.num_morphisms()];
        Self { base, values, actions }
    }

    /// Object `c` goes to `N(F(c))` through dimension `top`.
    pub fn nerve_of(functor: &CatValuedFunctor, top: usize) -> Self {
        let nerves: Vec<Nerve> = functor.values.iter().map(|v| nerve(v, top)).collect();
        let actions = (0..functor.base.num_morphisms())
            .map(|f| {
                let (s, t) = (functor.base.source(f), functor.base.target(f));
                nerve_map(&functor.actions[f], &nerves[s], &functor.values[t], &nerves[t])
            })
            .collect();
        Self { base: functor.base.clone(), values: nerves.into_iter().map(|n| n.sset).collect(), actions }
    }

    /// Checks that every action is a simplicial map, identities act as
    /// identities and composites act as composites.
    pub fn validate(&self) -> Result<(), SsetError> {
        let b = &self.base;
        if self.values.len() != b.num_objects() || self.actions.len() != b.num_morphisms() {
            return Err(SsetError::NotAFunctor("one value per object and one action per morphism expected".into()));
        }
        for f in 0..b.num_morphisms() {
            let (s, t) = (b.source(f), b.target(f));
            self.actions[f]
                .validate(&self.values[s], &self.values[t])
                .map_err(|e| SsetError::NotAFunctor(format!("action of morphism {f}: {e}")))?;
            if b.is_identity(f) && self.actions[f] != SimplicialMap::identity(&self.values[s]) {
                return Err(SsetError::NotAFunctor(format!("identity {f} does not act as the identity")));
            }
        }
        for (g, f) in b.composable_pairs() {
            let h = b.comp(g, f);
            let composite = self.actions[f].then(&self.actions[g], &self.values[b.target(f)]);
            if composite != self.actions[h] {
                return Err(SsetError::NotAFunctor(format!("F({g} . {f}) differs from F({g}) . F({f})")));
            }
        }
        Ok(())
    }
}

/// The simplicial replacement of a functor, with the (string, simplex) pair
/// behind every cell.
///
/// The `(p, q)` cells are pairs `(a, x)` with `a = c_0 -> ... -> c_p` a
/// nondegenerate string of the nerve and `x` a nondegenerate `q`-simplex of
/// `F(c_0)`. Horizontal face `0` drops `c_0` and pushes `x` forward along the
/// first morphism; the other horizontal faces act on the string alone.
#[derive(Clone, Debug)]
pub struct Srep {
    pub bisimplicial: BisimplicialSet,
    pub nerve: Nerve,
    cells: Vec<Vec<Vec<(u32, u32)>>>,
    starts: Vec<Vec<Vec<u32>>>,
}

impl Srep {
    /// `(string index, simplex index)` of the nondegenerate `(p, q)`-cell `x`.
    pub fn cell(&self, p: usize, q: usize, x: u32) -> (u32, u32) {
        self.cells[p][q][x as usize]
    }

    pub fn cell_index(&self, p: usize, q: usize, string: u32, simplex: u32) -> u32 {
        self.starts[p][q][string as usize] + simplex
    }
}

pub fn srep(functor: &SimplicialFunctor, top: usize) -> Result<Srep, SsetError> {
    let base = &functor.base;
    if let Some(v) = functor.values.iter().position(|v| v.top() < top && !v.is_complete()) {
        return Err(SsetError::Malformed(format!("value at object {v} is truncated below dimension {top}")));
    }
    let nerve = nerve(base, top);
    let n = &nerve.sset;
    let first = |p: usize, a: u32| nerve.first_object(base, p, a);

    let mut cells = vec![vec![Vec::new(); top + 1]; top + 1];
    let mut starts = vec![vec![Vec::new(); top + 1]; top + 1];
    for p in 0..=top {
        for q in 0..=top {
            for a in 0..n.count(p) as u32 {
                starts[p][q].push(cells[p][q].len() as u32);
                for x in 0..functor.values[first(p, a)].count(q) as u32 {
                    cells[p][q].push((a, x));
                }
            }
        }
    }
    let counts: Vec<Vec<usize>> = cells.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
    let mut hfaces = vec![vec![Vec::new(); top + 1]; top + 1];
    let mut vfaces = vec![vec![Vec::new(); top + 1]; top + 1];
    for p in 0..=top {
        for q in 0..=top {
            let mut hs = Vec::with_capacity(if p > 0 { counts[p][q] * (p + 1) } else { 0 });
            let mut vs = Vec::with_capacity(if q > 0 { counts[p][q] * (q + 1) } else { 0 });
            for &(a, x) in &cells[p][q] {
                let c0 = first(p, a);
                for i in 0..(if p > 0 { p + 1 } else { 0 }) {
                    let nf = n.face_ref(p, a, i);
                    let pp = p - 1 - nf.degeneracy.count_ones() as usize;
                    let moved = if i == 0 {
                        let f1 = nerve.string(p, a)[0] as MorId;
                        functor.actions[f1].image_of_nondegenerate(q, x)
                    } else {
                        Simplex::nondegenerate(q, x)
                    };
                    let qq = moved.base_dim();
                    hs.push(BiFace {
                        target: starts[pp][qq][nf.target as usize] + moved.base,
                        hmask: nf.degeneracy,
                        vmask: moved.degeneracy,
                    });
                }
                for j in 0..(if q > 0 { q + 1 } else { 0 }) {
                    let vf = functor.values[c0].face_ref(q, x, j);
                    let qq = q - 1 - vf.degeneracy.count_ones() as usize;
                    vs.push(BiFace { target: starts[p][qq][a as usize] + vf.target, hmask: 0, vmask: vf.degeneracy });
                }
            }
            hfaces[p][q] = hs;
            vfaces[p][q] = vs;
        }
    }
    let complete = n.is_complete() && functor.values.iter().all(|v| v.is_complete() && v.top() <= top);
    let bisimplicial = BisimplicialSet::new(counts, hfaces, vfaces, complete)?;
    Ok(Srep { bisimplicial, nerve, cells, starts })
}

/// The homotopy colimit model `diag(srep F)`.
#[derive(Clone, Debug)]
pub struct Hocolim {
    pub srep: Srep,
    pub diagonal: Diagonal,
}

impl Hocolim {
    pub fn sset(&self) -> &SimplicialSet {
        &self.diagonal.sset
    }

    /// The projection to the nerve of the indexing category, forgetting the
    /// simplex coordinate.
    pub fn projection(&self) -> SimplicialMap {
        let d = &self.diagonal.sset;
        let images = (0..=d.top())
            .map(|n| {
                (0..d.count(n) as u32)
                    .map(|x| {
                        let key = self.diagonal.key(n, x);
                        let (bp, bq) = key.base_dims();
                        let (a, _) = self.srep.cell(bp, bq, key.base);
                        Simplex { dim: n, base: a, degeneracy: key.hmask }
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(images)
    }
}

pub fn hocolim(functor: &SimplicialFunctor, top: usize) -> Result<Hocolim, SsetError> {
    let srep = srep(functor, top)?;
    let diagonal = diagonal(&srep.bisimplicial);
    Ok(Hocolim { srep, diagonal })
}

/// The sub-simplicial set of `source` lying over the totally degenerate
/// simplices on the vertex `v`.
pub fn vertex_fiber(
    map: &SimplicialMap,
    source: &SimplicialSet,
    target: &SimplicialSet,
    v: u32,
) -> Result<SimplicialSet, SsetError> {
    if v as usize >= target.count(0) {
        return Err(SsetError::VertexNotInTarget(v));
    }
    let (fiber, _) = source.subset(|n, x| map.image_of_nondegenerate(n, x) == Simplex::totally_degenerate(v, n))?;
    Ok(fiber)
}

/// Components of a colimit of sets, computed by union-find over the
/// components of each value.
pub fn pi0_colimit(functor: &SimplicialFunctor) -> usize {
    use petgraph::unionfind::UnionFind;
    let b = &functor.base;
    let mut offsets = Vec::with_capacity(b.num_objects());
    let mut total = 0;
    for v in &functor.values {
        offsets.push(total);
        total += v.count(0);
    }
    let mut uf = UnionFind::<usize>::new(total);
    for (c, v) in functor.values.iter().enumerate() {
        if v.top() >= 1 {
            for e in 0..v.count(1) as u32 {
                let a = v.face_ref(1, e, 0).target as usize;
                let z = v.face_ref(1, e, 1).target as usize;
                uf.union(offsets[c] + a, offsets[c] + z);
            }
        }
    }
    for f in 0..b.num_morphisms() {
        let (s, t) = (b.source(f), b.target(f));
        for x in 0..functor.values[s].count(0) as u32 {
            let y = functor.actions[f].image_of_nondegenerate(0, x).base as usize;
            uf.union(offsets[s] + x as usize, offsets[t] + y);
        }
    }
    let mut labels = uf.into_labeling();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}
