use std::cmp::Ordering;

use crate::fincat::{CatFunctor, FinCategory, MorId, ObjId};

use super::map::SimplicialMap;
use super::simplicial::{FaceRef, Simplex, SimplicialSet};
use super::SsetError;

/// The nerve of a finite category truncated at a top dimension, together with
/// the morphism strings its simplices stand for.
///
/// Nondegenerate `n`-simplices (`n >= 1`) are strings `f_1, ..., f_n` of
/// composable non-identity morphisms (`f_{i+1}` after `f_i`), in
/// lexicographic order of morphism ids. Vertices are objects.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: SimplicialSet,
    strings: Vec<Vec<u32>>,
    objects: usize,
}

impl Nerve {
    /// Morphism string of the nondegenerate `n`-simplex `x` (`n >= 1`).
    pub fn string(&self, n: usize, x: u32) -> &[u32] {
        &self.strings[n][x as usize * n..(x as usize + 1) * n]
    }

    /// Index of a string of non-identity morphisms; a string of length 0 is not
    /// accepted here, use the object id instead.
    pub fn find(&self, string: &[u32]) -> Option<u32> {
        let n = string.len();
        if n == 0 || n >= self.strings.len() {
            return None;
        }
        let flat = &self.strings[n];
        let (mut lo, mut hi) = (0usize, flat.len() / n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * n..(mid + 1) * n].cmp(string) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid as u32),
            }
        }
        None
    }

    /// First object of a simplex of the nerve.
    pub fn first_object(&self, cat: &FinCategory, n: usize, x: u32) -> ObjId {
        if n == 0 {
            x as ObjId
        } else {
            cat.source(self.string(n, x)[0] as MorId)
        }
    }

    /// Last object of a simplex of the nerve.
    pub fn last_object(&self, cat: &FinCategory, n: usize, x: u32) -> ObjId {
        if n == 0 {
            x as ObjId
        } else {
            cat.target(self.string(n, x)[n - 1] as MorId)
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects
    }
}

/// The nerve of `cat` through dimension `top`. The result is marked complete
/// when no nondegenerate simplex of dimension `top + 1` exists.
pub fn nerve(cat: &FinCategory, top: usize) -> Nerve {
    let non_id: Vec<Vec<u32>> = (0..cat.num_objects())
        .map(|o| {
            let mut v: Vec<u32> = cat
                .out_morphisms(o)
                .iter()
                .filter(|&&m| !cat.is_identity(m))
                .map(|&m| m as u32)
                .collect();
            v.sort_unstable();
            v
        })
        .collect();
    let mut strings: Vec<Vec<u32>> = vec![Vec::new()];
    let mut counts = vec![cat.num_objects()];
    for n in 1..=top {
        let mut level = Vec::new();
        if n == 1 {
            level = (0..cat.num_morphisms()).filter(|&m| !cat.is_identity(m)).map(|m| m as u32).collect();
        } else {
            let prev = &strings[n - 1];
            for s in prev.chunks_exact(n - 1) {
                let last = cat.target(s[n - 2] as MorId);
                for &g in &non_id[last] {
                    level.extend_from_slice(s);
                    level.push(g);
                }
            }
        }
        counts.push(level.len() / n);
        strings.push(level);
    }
    let complete = match top {
        0 => cat.num_morphisms() == cat.num_objects(),
        _ => strings[top]
            .chunks_exact(top)
            .all(|s| non_id[cat.target(s[top - 1] as MorId)].is_empty()),
    };
    let mut nerve = Nerve { sset: SimplicialSet::point(), strings, objects: cat.num_objects() };
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let mut table = Vec::with_capacity(counts[n] * (n + 1));
        for x in 0..counts[n] as u32 {
            let s = nerve.string(n, x).to_vec();
            for i in 0..=n {
                table.push(nerve_face(&nerve, cat, &s, i));
            }
        }
        faces.push(table);
    }
    nerve.sset = SimplicialSet::from_raw(counts, faces, complete);
    nerve
}

/// Like [`nerve`], but fails when simplices above `top` would be dropped.
pub fn nerve_exact(cat: &FinCategory, top: usize) -> Result<Nerve, SsetError> {
    let n = nerve(cat, top);
    if n.sset.is_complete() {
        Ok(n)
    } else {
        Err(SsetError::Truncated { top })
    }
}

fn nerve_face(nerve: &Nerve, cat: &FinCategory, s: &[u32], i: usize) -> FaceRef {
    let n = s.len();
    let nondeg = |t: u32| FaceRef { target: t, degeneracy: 0 };
    if n == 1 {
        let m = s[0] as MorId;
        return nondeg(if i == 0 { cat.target(m) } else { cat.source(m) } as u32);
    }
    if i == 0 || i == n {
        let rest = if i == 0 { &s[1..] } else { &s[..n - 1] };
        return nondeg(nerve.find(rest).expect("truncated strings are present"));
    }
    let h = cat.comp(s[i] as MorId, s[i - 1] as MorId);
    if cat.is_identity(h) {
        let mut rest: Vec<u32> = Vec::with_capacity(n - 2);
        rest.extend_from_slice(&s[..i - 1]);
        rest.extend_from_slice(&s[i + 1..]);
        let target = if rest.is_empty() {
            cat.source(s[i - 1] as MorId) as u32
        } else {
            nerve.find(&rest).expect("shorter strings are present")
        };
        FaceRef { target, degeneracy: 1 << (i - 1) }
    } else {
        let mut c: Vec<u32> = s.to_vec();
        c[i - 1] = h as u32;
        c.remove(i);
        nondeg(nerve.find(&c).expect("composed strings are present"))
    }
}

/// The simplicial map `N(F): N(C) -> N(D)` induced by a functor.
pub fn nerve_map(functor: &CatFunctor, source: &Nerve, target_cat: &FinCategory, target: &Nerve) -> SimplicialMap {
    let top = source.sset.top();
    let mut images = Vec::with_capacity(top + 1);
    images.push((0..source.num_objects() as u32).map(|o| Simplex::nondegenerate(0, functor.on_object(o as usize) as u32)).collect());
    for n in 1..=top {
        let mut row = Vec::with_capacity(source.sset.count(n));
        for x in 0..source.sset.count(n) as u32 {
            let s = source.string(n, x);
            let mut kept = Vec::with_capacity(n);
            let mut mask = 0u32;
            for (i, &m) in s.iter().enumerate() {
                let fm = functor.on_morphism(m as MorId);
                if target_cat.is_identity(fm) {
                    mask |= 1 << i;
                } else {
                    kept.push(fm as u32);
                }
            }
            let base = if kept.is_empty() {
                target_cat.source(functor.on_morphism(s[0] as MorId)) as u32
            } else {
                target.find(&kept).expect("target nerve must reach the image dimension")
            };
            row.push(Simplex { dim: n, base, degeneracy: mask });
        }
        images.push(row);
    }
    SimplicialMap::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPoset;

    #[test]
    fn nerve_of_arrow_is_interval() {
        let c = FinPoset::chain(2).to_category();
        let n = nerve(&c, 3);
        assert_eq!(n.sset.counts(), &[2, 1, 0, 0]);
        assert!(n.sset.is_complete());
        n.sset.check_identities().unwrap();
    }

    #[test]
    fn nerve_of_z2_has_one_simplex_per_dimension() {
        let n = nerve(&FinCategory::cyclic_group(2), 4);
        assert_eq!(n.sset.counts(), &[1, 1, 1, 1, 1]);
        assert!(!n.sset.is_complete());
        n.sset.check_identities().unwrap();
        // d_1 of (g, g) is the degenerate vertex
        assert_eq!(n.sset.face_ref(2, 0, 1), FaceRef { target: 0, degeneracy: 1 });
        assert!(nerve_exact(&FinCategory::cyclic_group(2), 4).is_err());
    }

    #[test]
    fn nerve_of_chain_is_simplex() {
        let n = nerve(&FinPoset::chain(4).to_category(), 4);
        assert_eq!(n.sset.counts()[..4], *SimplicialSet::simplex(3).counts());
        assert_eq!(n.sset.count(4), 0);
        assert!(n.sset.is_complete());
    }

    #[test]
    fn string_lookup() {
        let c = FinPoset::chain(3).to_category();
        let n = nerve(&c, 2);
        for d in 1..=2 {
            for x in 0..n.sset.count(d) as u32 {
                assert_eq!(n.find(n.string(d, x)), Some(x));
            }
        }
    }

    #[test]
    fn functor_to_terminal_gives_degenerate_images() {
        let c = FinPoset::chain(3).to_category();
        let t = FinCategory::terminal();
        let f = CatFunctor::new(vec![0; 3], vec![0; c.num_morphisms()]);
        let (nc, nt) = (nerve(&c, 2), nerve(&t, 2));
        let m = nerve_map(&f, &nc, &t, &nt);
        m.validate(&nc.sset, &nt.sset).unwrap();
    }
}
