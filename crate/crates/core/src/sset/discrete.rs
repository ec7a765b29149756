use std::collections::HashMap;

use crate::fincat::{FinCategory, MorId, ObjId};

use super::SsetError;

/// A functor from a finite category to finite sets `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    pub sizes: Vec<usize>,
    /// `maps[f][x]` is `F(f)(x)`.
    pub maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn constant(cat: &FinCategory, size: usize) -> Self {
        Self { sizes: vec![size; cat.num_objects()], maps: vec![(0..size).collect(); cat.num_morphisms()] }
    }

    pub fn validate(&self, cat: &FinCategory) -> Result<(), SsetError> {
        if self.sizes.len() != cat.num_objects() || self.maps.len() != cat.num_morphisms() {
            return Err(SsetError::NotAFunctor("one set per object and one map per morphism expected".into()));
        }
        for f in 0..cat.num_morphisms() {
            let (s, t) = (cat.source(f), cat.target(f));
            if self.maps[f].len() != self.sizes[s] || self.maps[f].iter().any(|&y| y >= self.sizes[t]) {
                return Err(SsetError::NotAFunctor(format!("map of morphism {f} has the wrong shape")));
            }
            if cat.is_identity(f) && self.maps[f].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(SsetError::NotAFunctor(format!("identity {f} does not act as the identity")));
            }
        }
        for (g, f) in cat.composable_pairs() {
            let h = cat.comp(g, f);
            if (0..self.sizes[cat.source(f)]).any(|x| self.maps[g][self.maps[f][x]] != self.maps[h][x]) {
                return Err(SsetError::NotAFunctor(format!("F({g} . {f}) differs from F({g}) . F({f})")));
            }
        }
        Ok(())
    }
}

/// The limit of a set-valued functor: all families `(x_c)` with
/// `F(f)(x_c) = x_{c'}` for every `f: c -> c'`, in lexicographic order.
pub fn limit_discrete(cat: &FinCategory, functor: &SetFunctor) -> Vec<Vec<usize>> {
    let n = cat.num_objects();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    // constraints checked when the later of the two endpoints is assigned
    let mut checks: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for f in 0..cat.num_morphisms() {
        let (s, t) = (cat.source(f), cat.target(f));
        checks[s.max(t)].push(f);
    }
    let mut family = vec![0usize; n];
    let mut next = vec![0usize; n];
    let mut i = 0usize;
    loop {
        let mut found = false;
        while next[i] < functor.sizes[i] {
            family[i] = next[i];
            next[i] += 1;
            if checks[i].iter().all(|&f| functor.maps[f][family[cat.source(f)]] == family[cat.target(f)]) {
                found = true;
                break;
            }
        }
        if found {
            if i + 1 == n {
                out.push(family.clone());
            } else {
                i += 1;
                next[i] = 0;
            }
        } else {
            if i == 0 {
                return out;
            }
            i -= 1;
        }
    }
}

/// One factor of a codegree of the cosimplicial replacement: a string
/// `c_0 -> ... -> c_q` (identities allowed) whose factor is `F(c_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl Factor {
    pub fn object(&self) -> ObjId {
        *self.objects.last().expect("strings have at least one object")
    }
}

/// Where a coordinate of a coface or codegeneracy comes from: coordinate
/// `source` of the domain, moved along `morphism`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub source: usize,
    pub morphism: MorId,
}

/// The cosimplicial replacement of a functor on `cat`, described by its
/// factors and the coordinate assignments of its structure maps.
#[derive(Clone, Debug)]
pub struct CosimplicialDescriptor {
    pub factors: Vec<Vec<Factor>>,
    /// `cofaces[q][i][a]` for `d^i: X^{q-1} -> X^q`; `cofaces[0]` is empty.
    pub cofaces: Vec<Vec<Vec<Assignment>>>,
    /// `codegeneracies[q][j][a]` for `s^j: X^{q+1} -> X^q`, present for
    /// `q < top`.
    pub codegeneracies: Vec<Vec<Vec<Assignment>>>,
}

/// Enumerates codegrees `0..=top`.
pub fn crep_describe(cat: &FinCategory, top: usize) -> CosimplicialDescriptor {
    let mut factors: Vec<Vec<Factor>> = Vec::with_capacity(top + 1);
    factors.push((0..cat.num_objects()).map(|c| Factor { objects: vec![c], morphisms: Vec::new() }).collect());
    for q in 1..=top {
        let mut level = Vec::new();
        for s in &factors[q - 1] {
            for &g in cat.out_morphisms(s.object()) {
                let mut t = s.clone();
                t.objects.push(cat.target(g));
                t.morphisms.push(g);
                level.push(t);
            }
        }
        factors.push(level);
    }
    let index: Vec<HashMap<&Factor, usize>> =
        factors.iter().map(|l| l.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
    let face = |s: &Factor, i: usize| -> Factor {
        let q = s.morphisms.len();
        let mut t = s.clone();
        t.objects.remove(i);
        if i == 0 {
            t.morphisms.remove(0);
        } else if i == q {
            t.morphisms.pop();
        } else {
            let h = cat.comp(s.morphisms[i], s.morphisms[i - 1]);
            t.morphisms[i - 1] = h;
            t.morphisms.remove(i);
        }
        t
    };
    let degen = |s: &Factor, j: usize| -> Factor {
        let mut t = s.clone();
        t.objects.insert(j, s.objects[j]);
        t.morphisms.insert(j, cat.identity(s.objects[j]));
        t
    };
    let mut cofaces = vec![Vec::new()];
    for q in 1..=top {
        let maps = (0..=q)
            .map(|i| {
                factors[q]
                    .iter()
                    .map(|s| {
                        let morphism = if i == q { s.morphisms[q - 1] } else { cat.identity(s.object()) };
                        Assignment { source: index[q - 1][&face(s, i)], morphism }
                    })
                    .collect()
            })
            .collect();
        cofaces.push(maps);
    }
    let mut codegeneracies = Vec::new();
    for q in 0..top {
        let maps = (0..=q)
            .map(|j| {
                factors[q]
                    .iter()
                    .map(|s| Assignment { source: index[q + 1][&degen(s, j)], morphism: cat.identity(s.object()) })
                    .collect()
            })
            .collect();
        codegeneracies.push(maps);
    }
    CosimplicialDescriptor { factors, cofaces, codegeneracies }
}

impl CosimplicialDescriptor {
    pub fn top(&self) -> usize {
        self.factors.len() - 1
    }

    /// Composite assignment of `second . first`: `first` lands in the codegree
    /// `second` starts from.
    fn compose(cat: &FinCategory, first: &[Assignment], second: &[Assignment]) -> Vec<Assignment> {
        second
            .iter()
            .map(|b| {
                let a = first[b.source];
                Assignment { source: a.source, morphism: cat.comp(b.morphism, a.morphism) }
            })
            .collect()
    }

    /// Exhaustive check of the cosimplicial identities on the assignments.
    pub fn check_identities(&self, cat: &FinCategory) -> Result<(), SsetError> {
        let top = self.top();
        let d = |q: usize, i: usize| &self.cofaces[q][i];
        let s = |q: usize, j: usize| &self.codegeneracies[q][j];
        let bad = |what: &str, q: usize, i: usize, j: usize| {
            Err(SsetError::Malformed(format!("cosimplicial identity {what} fails in codegree {q} for ({i}, {j})")))
        };
        // d^j d^i = d^i d^{j-1}, i < j, both X^{q-2} -> X^q
        for q in 2..=top {
            for j in 1..=q {
                for i in 0..j {
                    if Self::compose(cat, d(q - 1, i), d(q, j)) != Self::compose(cat, d(q - 1, j - 1), d(q, i)) {
                        return bad("d d", q, i, j);
                    }
                }
            }
        }
        // s^j s^i = s^i s^{j+1}, i <= j, both X^{q+2} -> X^q
        for q in 0..top.saturating_sub(1) {
            for j in 0..=q {
                for i in 0..=j {
                    if Self::compose(cat, s(q + 1, i), s(q, j)) != Self::compose(cat, s(q + 1, j + 1), s(q, i)) {
                        return bad("s s", q, i, j);
                    }
                }
            }
        }
        // s^j d^i, both X^q -> X^q (through X^{q+1})
        for q in 0..top {
            let identity: Vec<Assignment> = self.factors[q]
                .iter()
                .enumerate()
                .map(|(a, f)| Assignment { source: a, morphism: cat.identity(f.object()) })
                .collect();
            for j in 0..=q {
                for i in 0..=q + 1 {
                    let lhs = Self::compose(cat, d(q + 1, i), s(q, j));
                    let rhs = if i < j {
                        Self::compose(cat, s(q - 1, j - 1), d(q, i))
                    } else if i == j || i == j + 1 {
                        identity.clone()
                    } else {
                        Self::compose(cat, s(q - 1, j), d(q, i - 1))
                    };
                    if lhs != rhs {
                        return bad("s d", q, i, j);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Families in the equalizer of `d^0, d^1: X^0 -> X^1` for a set-valued
/// functor, found by enumerating all of `X^0`. This is the totalization of the
/// cosimplicial replacement when every factor is discrete.
pub fn tot_discrete(cat: &FinCategory, functor: &SetFunctor, crep: &CosimplicialDescriptor) -> Vec<Vec<usize>> {
    let n = cat.num_objects();
    let total: usize = functor.sizes.iter().product();
    let mut out = Vec::new();
    if crep.top() < 1 {
        return out;
    }
    let act = |asg: &Assignment, x: &[usize]| functor.maps[asg.morphism][x[asg.source]];
    let mut x = vec![0usize; n];
    for mut code in 0..total {
        for c in (0..n).rev() {
            x[c] = code % functor.sizes[c];
            code /= functor.sizes[c];
        }
        let ok = (0..crep.factors[1].len()).all(|a| act(&crep.cofaces[1][0][a], &x) == act(&crep.cofaces[1][1][a], &x));
        if ok {
            out.push(x.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPoset;
    use crate::sset::nerve;

    #[test]
    fn limit_over_initial_object() {
        let cat = FinPoset::chain(3).to_category();
        // 0 -> 1 -> 2 with sizes 3, 2, 2
        let mut maps = vec![Vec::new(); cat.num_morphisms()];
        for m in 0..cat.num_morphisms() {
            maps[m] = match (cat.source(m), cat.target(m)) {
                (0, 0) => vec![0, 1, 2],
                (1, 1) | (2, 2) => vec![0, 1],
                (0, 1) | (0, 2) => vec![0, 1, 1],
                (1, 2) => vec![0, 1],
                _ => unreachable!(),
            };
        }
        let f = SetFunctor { sizes: vec![3, 2, 2], maps };
        f.validate(&cat).unwrap();
        let lim = limit_discrete(&cat, &f);
        assert_eq!(lim, vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 1, 1]]);
        let crep = crep_describe(&cat, 2);
        assert_eq!(tot_discrete(&cat, &f, &crep), lim);
    }

    #[test]
    fn constant_over_connected() {
        let cat = FinPoset::from_leq(vec!["a".into(), "b".into(), "c".into()], |x, y| x == y || (x != 1 && y == 1))
            .unwrap()
            .to_category();
        let f = SetFunctor::constant(&cat, 3);
        assert_eq!(limit_discrete(&cat, &f).len(), 3);
    }

    #[test]
    fn crep_counts_match_nerve() {
        for cat in [FinPoset::chain(3).to_category(), FinCategory::cyclic_group(2), FinCategory::discrete(2)] {
            let top = 3;
            let crep = crep_describe(&cat, top);
            crep.check_identities(&cat).unwrap();
            let n = nerve(&cat, top);
            for q in 0..=top {
                // each q-string is a unique degeneracy of a nondegenerate m-string
                let expected: usize = (0..=q).map(|m| n.sset.count(m) * binomial(q, m)).sum();
                assert_eq!(crep.factors[q].len(), expected, "codegree {q}");
            }
        }
    }

    #[test]
    fn terminal_has_one_factor_per_codegree() {
        let crep = crep_describe(&FinCategory::terminal(), 4);
        assert!(crep.factors.iter().all(|l| l.len() == 1));
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
