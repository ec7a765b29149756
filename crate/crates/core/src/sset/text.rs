//! Plain-text simplicial set format.
//!
//! ```text
//! top 1 complete
//! dim 0 3
//! dim 1 3
//! 1:0 0:0
//! 2:0 0:0
//! 2:0 1:0
//! ```
//!
//! After each `dim n count` header come `count` lines, one per nondegenerate
//! simplex, listing its `n + 1` faces as `target:degeneracy`. The header
//! says `truncated` instead of `complete` when higher simplices were dropped.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::simplicial::{FaceRef, SimplicialSet};
use super::SsetError;

pub fn write_sset(x: &SimplicialSet) -> String {
    let mut s = String::new();
    let tag = if x.is_complete() { "complete" } else { "truncated" };
    writeln!(s, "top {} {tag}", x.top()).unwrap();
    for n in 0..=x.top() {
        writeln!(s, "dim {n} {}", x.count(n)).unwrap();
        if n == 0 {
            continue;
        }
        for row in x.face_table(n).chunks_exact(n + 1) {
            let line: Vec<String> = row.iter().map(|f| format!("{}:{}", f.target, f.degeneracy)).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
    }
    s
}

pub fn parse_sset(text: &str) -> Result<SimplicialSet, SsetError> {
    let bad = |line: usize, msg: &str| SsetError::Parse { line: line + 1, message: msg.to_string() };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or_else(|| bad(0, "empty input"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let (top, complete) = match parts.as_slice() {
        ["top", t, tag @ ("complete" | "truncated")] => {
            (t.parse::<usize>().map_err(|_| bad(ln, "bad top dimension"))?, *tag == "complete")
        }
        _ => return Err(bad(ln, "expected `top N complete|truncated`")),
    };
    let mut counts = Vec::with_capacity(top + 1);
    let mut faces = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let (ln, h) = lines.next().ok_or_else(|| bad(usize::MAX - 1, "missing dimension header"))?;
        let count = match h.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["dim", d, c] if d.parse::<usize>() == Ok(n) => c.parse::<usize>().map_err(|_| bad(ln, "bad count"))?,
            _ => return Err(bad(ln, &format!("expected `dim {n} COUNT`"))),
        };
        counts.push(count);
        let mut table = Vec::new();
        if n > 0 {
            for _ in 0..count {
                let (ln, row) = lines.next().ok_or_else(|| bad(ln, "missing face rows"))?;
                let entries: Vec<&str> = row.split_whitespace().collect();
                if entries.len() != n + 1 {
                    return Err(bad(ln, &format!("expected {} faces", n + 1)));
                }
                for e in entries {
                    let (t, d) = e.split_once(':').ok_or_else(|| bad(ln, "expected target:degeneracy"))?;
                    let target = t.parse().map_err(|_| bad(ln, "bad face target"))?;
                    let degeneracy = d.parse().map_err(|_| bad(ln, "bad degeneracy word"))?;
                    table.push(FaceRef { target, degeneracy });
                }
            }
        }
        faces.push(table);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(bad(ln, "trailing content"));
    }
    SimplicialSet::new(counts, faces, complete)
}

/// Hex SHA-256 of the canonical text form.
pub fn content_hash(x: &SimplicialSet) -> String {
    hex_digest(write_sset(x).as_bytes())
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::sset::nerve;

    #[test]
    fn round_trip() {
        for x in [
            SimplicialSet::boundary_of_simplex(2),
            nerve(&FinCategory::cyclic_group(3), 3).sset,
            SimplicialSet::from_complex(&[]),
        ] {
            let t = write_sset(&x);
            let back = parse_sset(&t).unwrap();
            assert_eq!(back, x);
            assert_eq!(content_hash(&back), content_hash(&x));
        }
    }

    #[test]
    fn hashes_differ() {
        let a = content_hash(&SimplicialSet::simplex(1));
        let b = content_hash(&SimplicialSet::simplex(2));
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(parse_sset("top 1 complete\ndim 0 1\ndim 1 1\n0:0\n").is_err());
        assert!(parse_sset("top 0 maybe\n").is_err());
    }
}
