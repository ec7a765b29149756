use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Entries beyond this magnitude trigger the arbitrary-precision path.
const I64_HEADROOM: u64 = 1 << 62;

trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// `q` with `self - q * p` in `[0, |p|)`.
    fn quotient(&self, p: &Self) -> Self;
    /// `self - q * b`, `None` when the result would leave the safe range.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn abs_big(&self) -> BigUint;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quotient(&self, p: &Self) -> Self {
        self.div_euclid(*p)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        let r = self.checked_sub(q.checked_mul(*b)?)?;
        (r.unsigned_abs() <= I64_HEADROOM).then_some(r)
    }
    fn abs_big(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quotient(&self, p: &Self) -> Self {
        let (q, r) = self.div_mod_floor(p);
        // div_mod_floor gives r with the sign of p; shift into [0, |p|)
        if r.is_negative() {
            q + BigInt::one()
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn abs_big(&self) -> BigUint {
        self.magnitude().clone()
    }
}

struct Sparse<T> {
    rows: Vec<BTreeMap<u32, T>>,
    col_rows: Vec<BTreeSet<u32>>,
}

impl<T: Entry> Sparse<T> {
    fn new(m: &IntMatrix, conv: impl Fn(i64) -> T) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows()];
        let mut col_rows = vec![BTreeSet::new(); m.cols()];
        for (c, col) in m.columns().iter().enumerate() {
            for &(r, v) in col {
                rows[r as usize].insert(c as u32, conv(v));
                col_rows[c].insert(r);
            }
        }
        Self { rows, col_rows }
    }

    fn pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<(u32, u32, &T)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                let better = match best {
                    None => true,
                    Some((_, _, b)) => v.cmp_abs(b) == Ordering::Less,
                };
                if better {
                    best = Some((r as u32, c, v));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// `row_i -= q * row_r`.
    fn row_op(&mut self, i: u32, r: u32, q: &T) -> Option<()> {
        let src: Vec<(u32, T)> = self.rows[r as usize].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src {
            let row = &mut self.rows[i as usize];
            let new = match row.get(&c) {
                Some(a) => a.sub_mul(q, &v)?,
                None => T::zero().sub_mul(q, &v)?,
            };
            if new.is_zero() {
                row.remove(&c);
                self.col_rows[c as usize].remove(&i);
            } else {
                row.insert(c, new);
                self.col_rows[c as usize].insert(i);
            }
        }
        Some(())
    }

    fn get(&self, r: u32, c: u32) -> &T {
        &self.rows[r as usize][&c]
    }
}

/// Eliminates to a diagonal; `None` on overflow.
fn diagonalize<T: Entry>(mut a: Sparse<T>) -> Option<Vec<BigUint>> {
    let mut diag = Vec::new();
    while let Some((mut r, mut c)) = a.pivot() {
        loop {
            let p = a.get(r, c).clone();
            // clear the pivot column by row operations
            let others: Vec<u32> = a.col_rows[c as usize].iter().copied().filter(|&i| i != r).collect();
            let mut smaller: Option<(T, u32)> = None;
            for i in others {
                let q = a.get(i, c).quotient(&p);
                if !q.is_zero() {
                    a.row_op(i, r, &q)?;
                }
                if let Some(rem) = a.rows[i as usize].get(&c) {
                    if smaller.as_ref().is_none_or(|(s, _)| rem.cmp_abs(s) == Ordering::Less) {
                        smaller = Some((rem.clone(), i));
                    }
                }
            }
            if let Some((_, i)) = smaller {
                r = i;
                continue;
            }
            // the column is now just the pivot; column operations only touch row r
            let entries: Vec<(u32, T)> =
                a.rows[r as usize].iter().filter(|(&j, _)| j != c).map(|(&j, v)| (j, v.clone())).collect();
            let mut smaller: Option<(T, u32)> = None;
            for (j, v) in entries {
                let q = v.quotient(&p);
                let rem = v.sub_mul(&q, &p)?;
                if rem.is_zero() {
                    a.rows[r as usize].remove(&j);
                    a.col_rows[j as usize].remove(&r);
                } else {
                    a.rows[r as usize].insert(j, rem.clone());
                    if smaller.as_ref().is_none_or(|(s, _)| rem.cmp_abs(s) == Ordering::Less) {
                        smaller = Some((rem, j));
                    }
                }
            }
            if let Some((_, j)) = smaller {
                c = j;
                continue;
            }
            diag.push(p.abs_big());
            a.rows[r as usize].clear();
            a.col_rows[c as usize].clear();
            break;
        }
    }
    Some(diag)
}

/// Turns a diagonal into the divisibility chain `d_1 | d_2 | ...`.
fn normalize(mut diag: Vec<BigUint>) -> Vec<BigUint> {
    let ones = diag.iter().filter(|d| d.is_one()).count();
    diag.retain(|d| !d.is_one());
    diag.sort();
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    let mut out = vec![BigUint::one(); ones];
    out.extend(diag);
    out
}

/// Invariant factors of `m`: the nonzero diagonal of its Smith normal form,
/// each dividing the next. Machine integers are used until an entry grows
/// too large, then the computation restarts in arbitrary precision.
pub fn smith(m: &IntMatrix) -> Vec<BigUint> {
    let fits = m.columns().iter().flatten().all(|&(_, v)| v.unsigned_abs() <= I64_HEADROOM);
    match fits.then(|| diagonalize(Sparse::new(m, |v| v))).flatten() {
        Some(d) => normalize(d),
        None => smith_bigint(m),
    }
}

/// Same as [`smith`] but always in arbitrary precision.
pub fn smith_bigint(m: &IntMatrix) -> Vec<BigUint> {
    normalize(diagonalize(Sparse::new(m, BigInt::from)).expect("arbitrary precision cannot overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(smith(&IntMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])), small(&[1, 1, 1]));
        assert_eq!(smith(&IntMatrix::zeros(3, 2)), small(&[]));
    }

    #[test]
    fn two_by_two() {
        assert_eq!(smith(&IntMatrix::from_dense(&[vec![2, 4], vec![0, 4]])), small(&[2, 4]));
        assert_eq!(smith(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]])), small(&[1, 6]));
        assert_eq!(smith(&IntMatrix::from_dense(&[vec![4, 0], vec![0, 6]])), small(&[2, 12]));
    }

    #[test]
    fn negative_entries() {
        assert_eq!(smith(&IntMatrix::from_dense(&[vec![-3, 0], vec![0, -5]])), small(&[1, 15]));
        assert_eq!(smith(&IntMatrix::from_dense(&[vec![6, -4], vec![4, 6]])), small(&[2, 26]));
    }

    #[test]
    fn overflow_falls_back() {
        let big = 1i64 << 61;
        let m = IntMatrix::from_dense(&[vec![big, big - 1], vec![big - 1, big]]);
        // det = 2^62 - 1, well past the i64 headroom once eliminated
        assert_eq!(smith(&m), smith_bigint(&m));
        let prod: BigUint = smith(&m).iter().product();
        let b = BigInt::from(big);
        let one = BigInt::from(1);
        let det = (&b * &b - (&b - &one) * (&b - &one)).magnitude().clone();
        assert_eq!(prod, det);
    }
}
