use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{smith, ChainComplex, HomologyError, IntMatrix};

/// A torsion coefficient. Serialized as a JSON number when it fits in 64
/// bits, as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coefficient(pub BigUint);

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Coefficient(BigUint::from(v))),
            Raw::Text(t) => t.parse().map(Coefficient).map_err(serde::de::Error::custom),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Integral homology in degrees `0..=through`, with higher requested
/// degrees listed as unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<Coefficient>>,
    /// Highest degree computed; `None` when nothing is valid.
    pub valid_through: Option<usize>,
    /// Requested degrees left uncomputed because of truncation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unknown: Vec<usize>,
}

impl HomologySummary {
    /// `H_n` in the form `Z^b + Z/t1 + ...`; `?` when unknown.
    pub fn degree_string(&self, n: usize) -> String {
        if n >= self.betti.len() {
            return "?".into();
        }
        let mut parts = Vec::new();
        match self.betti[n] {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion[n].iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Betti numbers as `(b0,b1,...)`.
    pub fn betti_string(&self) -> String {
        let b: Vec<String> = self.betti.iter().map(usize::to_string).collect();
        format!("({})", b.join(","))
    }

    /// Equal Betti numbers and torsion in degrees `0..=through`.
    pub fn agrees_through(&self, other: &HomologySummary, through: usize) -> bool {
        self.betti.len() > through
            && other.betti.len() > through
            && self.betti[..=through] == other.betti[..=through]
            && self.torsion[..=through] == other.torsion[..=through]
    }

    /// Checks `d_0 | d_1 | ...` and `d > 1` for each degree.
    pub fn torsion_is_normalized(&self) -> bool {
        self.torsion.iter().all(|ts| {
            ts.iter().all(|t| t.0 > BigUint::one()) && ts.windows(2).all(|w| (&w[1].0 % &w[0].0).is_zero())
        })
    }

    /// `dim H_n(F_2) = b_n + #even torsion in degree n + #even torsion in degree n-1`.
    pub fn f2_consistent(&self, f2: &[usize]) -> bool {
        let even = |n: usize| self.torsion[n].iter().filter(|t| (&t.0 % 2u32).is_zero()).count();
        f2.len() <= self.betti.len()
            && (0..f2.len()).all(|n| f2[n] == self.betti[n] + even(n) + if n > 0 { even(n - 1) } else { 0 })
    }
    /// Degreewise direct sum over the common validity range, with torsion
    /// brought back to invariant-factor form.
    pub fn direct_sum(&self, other: &HomologySummary) -> HomologySummary {
        let valid_through = match (self.valid_through, other.valid_through) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        let len = valid_through.map_or(0, |v| v + 1);
        let betti = (0..len).map(|n| self.betti[n] + other.betti[n]).collect();
        let torsion = (0..len)
            .map(|n| {
                let all: Vec<BigUint> = self.torsion[n].iter().chain(&other.torsion[n]).map(|c| c.0.clone()).collect();
                invariant_factors(all).into_iter().map(Coefficient).collect()
            })
            .collect();
        let max = self.betti.len().max(other.betti.len()) + self.unknown.len().max(other.unknown.len());
        HomologySummary { betti, torsion, valid_through, unknown: (len..max).collect() }
    }

    /// All groups zero through `through`; the unit of [`direct_sum`](Self::direct_sum).
    pub fn zero(through: usize) -> HomologySummary {
        HomologySummary { betti: vec![0; through + 1], torsion: vec![Vec::new(); through + 1], valid_through: Some(through), unknown: Vec::new() }
    }
}

/// Invariant factors of a direct sum of cyclic groups `Z/d`.
fn invariant_factors(mut ds: Vec<BigUint>) -> Vec<BigUint> {
    // pairwise (gcd, lcm) replacement until each entry divides the next
    let n = ds.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = ds[i].gcd(&ds[j]);
            let l = ds[i].lcm(&ds[j]);
            ds[i] = g;
            ds[j] = l;
        }
    }
    ds.retain(|d| !d.is_one());
    ds
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.betti.len() + self.unknown.len();
        let parts: Vec<String> = (0..n).map(|d| format!("H{d} = {}", self.degree_string(d))).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Invariant factors of each boundary map that homology through `through`
/// needs, with `∂_{top+1} = 0`.
fn factors_through(cc: &ChainComplex, through: usize, cache: &mut HashMap<usize, Vec<BigUint>>) {
    for n in 1..=through + 1 {
        if n <= cc.top() {
            cache.entry(n).or_insert_with(|| smith(cc.boundary(n)));
        } else {
            cache.entry(n).or_default();
        }
    }
}

/// Integral homology in degrees `0..=through`.
pub fn homology(cc: &ChainComplex, through: usize) -> Result<HomologySummary, HomologyError> {
    match cc.valid_through() {
        Some(v) if through <= v => {}
        v => return Err(HomologyError::DegreeBeyondValidity { requested: through, valid: v }),
    }
    let mut factors = HashMap::new();
    factors_through(cc, through, &mut factors);
    let rank = |n: usize| if n == 0 { 0 } else { factors[&n].len() };
    let mut betti = Vec::with_capacity(through + 1);
    let mut torsion = Vec::with_capacity(through + 1);
    for n in 0..=through {
        betti.push(cc.rank(n) - rank(n) - rank(n + 1));
        torsion.push(factors[&(n + 1)].iter().filter(|d| !d.is_one()).cloned().map(Coefficient).collect());
    }
    Ok(HomologySummary { betti, torsion, valid_through: Some(through), unknown: Vec::new() })
}

/// Homology through `max_degree`. A complete complex has zero homology above
/// its top degree; a truncated one is computed through its validity range,
/// with the remaining degrees marked unknown.
pub fn homology_upto(cc: &ChainComplex, max_degree: usize) -> HomologySummary {
    match cc.valid_through() {
        Some(v) => {
            let through = v.min(max_degree);
            let mut s = homology(cc, through).expect("within the validity range");
            if cc.is_complete() {
                // nothing above the top degree
                for _ in through + 1..=max_degree {
                    s.betti.push(0);
                    s.torsion.push(Vec::new());
                }
                s.valid_through = Some(s.betti.len() - 1);
            } else {
                s.unknown = (through + 1..=max_degree).collect();
            }
            s
        }
        None => HomologySummary {
            betti: Vec::new(),
            torsion: Vec::new(),
            valid_through: None,
            unknown: (0..=max_degree).collect(),
        },
    }
}

/// Rank over the two-element field by column reduction on odd entries.
pub fn rank_f2(m: &IntMatrix) -> usize {
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut rank = 0;
    for col in m.columns() {
        let mut v: Vec<u32> = col.iter().filter(|(_, x)| x % 2 != 0).map(|&(r, _)| r).collect();
        while let Some(&low) = v.last() {
            match pivots.get(&low) {
                Some(p) => v = xor_sorted(&v, p),
                None => {
                    pivots.insert(low, v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Dimensions of homology with coefficients in the two-element field.
pub fn betti_f2(cc: &ChainComplex, through: usize) -> Result<Vec<usize>, HomologyError> {
    match cc.valid_through() {
        Some(v) if through <= v => {}
        v => return Err(HomologyError::DegreeBeyondValidity { requested: through, valid: v }),
    }
    let ranks: Vec<usize> = (0..=through + 1)
        .map(|n| if n == 0 || n > cc.top() { 0 } else { rank_f2(cc.boundary(n)) })
        .collect();
    Ok((0..=through).map(|n| cc.rank(n) - ranks[n] - ranks[n + 1]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{FinCategory, FinPoset};
    use crate::homology::normalized_chains;
    use crate::sset::{nerve, SimplicialSet};

    fn h(x: &SimplicialSet, through: usize) -> HomologySummary {
        homology(&normalized_chains(x, x.top()).unwrap(), through).unwrap()
    }

    #[test]
    fn circle_and_point() {
        assert_eq!(h(&SimplicialSet::boundary_of_simplex(2), 1).betti, vec![1, 1]);
        assert_eq!(h(&SimplicialSet::point(), 0).betti, vec![1]);
    }

    #[test]
    fn z2_group_homology() {
        let n = nerve(&FinCategory::cyclic_group(2), 3);
        let s = h(&n.sset, 2);
        assert_eq!(s.betti, vec![1, 0, 0]);
        assert_eq!(s.torsion[1], vec![Coefficient(2u32.into())]);
        assert!(s.torsion[2].is_empty());
        assert_eq!(s.to_string(), "H0 = Z, H1 = Z/2, H2 = 0");
        let cc = normalized_chains(&n.sset, 3).unwrap();
        let f2 = betti_f2(&cc, 2).unwrap();
        assert_eq!(f2, vec![1, 1, 1]);
        assert!(s.f2_consistent(&f2));
        assert!(homology(&cc, 3).is_err());
    }

    #[test]
    fn cone_is_acyclic() {
        let poset = FinPoset::from_leq((0..4).map(|i| i.to_string()).collect(), |a, b| a == b || b == 3).unwrap();
        let n = nerve(&poset.to_category(), 3);
        assert_eq!(h(&n.sset, 2).betti, vec![1, 0, 0]);
    }

    #[test]
    fn unknown_degrees_are_marked() {
        let n = nerve(&FinCategory::cyclic_group(2), 2);
        let cc = normalized_chains(&n.sset, 2).unwrap();
        let s = homology_upto(&cc, 4);
        assert_eq!(s.valid_through, Some(1));
        assert_eq!(s.unknown, vec![2, 3, 4]);
        assert_eq!(s.to_string(), "H0 = Z, H1 = Z/2, H2 = ?, H3 = ?, H4 = ?");
    }

    #[test]
    fn direct_sums_normalize_torsion() {
        let t = |v: &[u32]| v.iter().map(|&x| Coefficient(x.into())).collect::<Vec<_>>();
        let a = HomologySummary { betti: vec![1, 0], torsion: vec![t(&[]), t(&[2])], valid_through: Some(1), unknown: vec![] };
        let b = HomologySummary { betti: vec![1, 1], torsion: vec![t(&[]), t(&[3, 6])], valid_through: Some(1), unknown: vec![] };
        let s = a.direct_sum(&b);
        assert_eq!(s.betti, vec![2, 1]);
        assert_eq!(s.torsion[1], t(&[6, 6]));
        assert!(s.torsion_is_normalized());
        assert_eq!(HomologySummary::zero(1).direct_sum(&a), a);
    }

    #[test]
    fn big_coefficients_serialize_as_strings() {
        let big = Coefficient(BigUint::from(u64::MAX) * 3u32);
        let s = HomologySummary { betti: vec![0], torsion: vec![vec![Coefficient(6u32.into()), big]], valid_through: Some(0), unknown: vec![] };
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("[6,\"55340232221128654845\"]"));
        let back: HomologySummary = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
