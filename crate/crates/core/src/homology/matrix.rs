use std::fmt::Write;

use super::HomologyError;

/// Sparse integer matrix stored by columns. Each column is sorted by row
/// and never holds an explicit zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self, HomologyError> {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(HomologyError::Malformed(format!("entry ({r}, {c}) outside a {rows}x{cols} matrix")));
            }
            m.cols[c].push((r as u32, v));
        }
        for col in &mut m.cols {
            col.sort_unstable_by_key(|&(r, _)| r);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => {
                        *lv = lv.checked_add(v).ok_or_else(|| HomologyError::Malformed("entry overflow".into()))?
                    }
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            *col = merged;
        }
        Ok(m)
    }

    /// From already sorted, zero-free columns.
    pub(crate) fn from_columns(rows: usize, cols: Vec<Vec<(u32, i64)>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|&(r, v)| v != 0 && (r as usize) < rows)));
        Self { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        Self::from_triplets(nrows, ncols, trip).expect("dense input is in range")
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols.len()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                d[r as usize][c] = v;
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let col = &self.cols[c];
        col.binary_search_by_key(&(r as u32), |&(x, _)| x).map_or(0, |i| col[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `self * rhs`, or `None` on overflow.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let mut out = Vec::with_capacity(rhs.cols());
        let mut acc: std::collections::BTreeMap<u32, i64> = std::collections::BTreeMap::new();
        for col in &rhs.cols {
            acc.clear();
            for &(k, b) in col {
                for &(r, a) in &self.cols[k as usize] {
                    let e = acc.entry(r).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            out.push(acc.iter().filter(|(_, &v)| v != 0).map(|(&r, &v)| (r, v)).collect());
        }
        Some(IntMatrix { rows: self.rows, cols: out })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                t[r as usize].push((c as u32, v));
            }
        }
        IntMatrix { rows: self.cols.len(), cols: t }
    }

    /// Coordinate format: a `rows cols nnz` header, then `row col value` lines
    /// in column-major order.
    pub fn write_triplets(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {} {}", self.rows, self.cols(), self.nnz()).unwrap();
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                writeln!(s, "{r} {c} {v}").unwrap();
            }
        }
        s
    }

    pub fn parse_triplets(text: &str) -> Result<IntMatrix, HomologyError> {
        let bad = |line: usize, msg: &str| HomologyError::Parse { line: line + 1, message: msg.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('%') && !t.starts_with('#')
        });
        let (ln, header) = lines.next().ok_or_else(|| bad(0, "missing header"))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| bad(ln, "bad header")))
            .collect::<Result<_, _>>()?;
        let [rows, cols, nnz] = h[..] else {
            return Err(bad(ln, "header must be `rows cols nnz`"));
        };
        let mut trip = Vec::with_capacity(nnz);
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else {
                return Err(bad(ln, "expected `row col value`"));
            };
            let r: usize = r.parse().map_err(|_| bad(ln, "bad row"))?;
            let c: usize = c.parse().map_err(|_| bad(ln, "bad column"))?;
            let v: i64 = v.parse().map_err(|_| bad(ln, "bad value"))?;
            trip.push((r, c, v));
        }
        if trip.len() != nnz {
            return Err(HomologyError::Malformed(format!("header promises {nnz} entries, found {}", trip.len())));
        }
        Self::from_triplets(rows, cols, trip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_dropped_and_duplicates_summed() {
        let m = IntMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 1, 3)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 5);
        assert_eq!(m.get(0, 0), 0);
    }

    #[test]
    fn triplet_round_trip() {
        let m = IntMatrix::from_dense(&[vec![2, 4], vec![0, 4], vec![-1, 0]]);
        let back = IntMatrix::parse_triplets(&m.write_triplets()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.transpose().transpose(), m);
    }

    #[test]
    fn product() {
        let a = IntMatrix::from_dense(&[vec![1, 1], vec![0, 1]]);
        let b = IntMatrix::from_dense(&[vec![1, -1], vec![0, 1]]);
        assert_eq!(a.checked_mul(&b).unwrap().to_dense(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn bad_triplets() {
        assert!(IntMatrix::parse_triplets("2 2 1\n0 0 1\n1 1 1\n").is_err());
        assert!(IntMatrix::parse_triplets("2 2 1\n5 0 1\n").is_err());
    }
}
