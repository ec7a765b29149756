//! Plain-text category format.
//!
//! ```text
//! objects
//! 0 a
//! 1 b
//! morphisms
//! 0: 0 -> 0
//! 1: 0 -> 1
//! 2: 1 -> 1
//! composition
//! 0 . 0 = 0
//! ...
//! ```
//!
//! Composition lines are sorted by `(g, f)`, so equal categories serialize
//! identically. Identities are not marked; the parser recovers them as the
//! unique two-sided units.

use std::fmt::Write;

use super::{FinCatError, FinCategory};

pub fn write_category(cat: &FinCategory) -> String {
    let mut s = String::from("objects\n");
    for o in 0..cat.num_objects() {
        writeln!(s, "{o} {}", cat.label(o)).unwrap();
    }
    s.push_str("morphisms\n");
    for m in 0..cat.num_morphisms() {
        writeln!(s, "{m}: {} -> {}", cat.source(m), cat.target(m)).unwrap();
    }
    s.push_str("composition\n");
    let mut pairs: Vec<_> = cat.composable_pairs().collect();
    pairs.sort_unstable();
    for (g, f) in pairs {
        if let Some(h) = cat.compose(g, f) {
            writeln!(s, "{g} . {f} = {h}").unwrap();
        }
    }
    s
}

pub fn parse_category(text: &str) -> Result<FinCategory, FinCatError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Objects,
        Morphisms,
        Composition,
    }
    let bad = |line: usize, msg: &str| FinCatError::Parse { line: line + 1, message: msg.to_string() };
    let mut section = Section::None;
    let mut labels = Vec::new();
    let mut morphisms = Vec::new();
    let mut triples = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line {
            "objects" => section = Section::Objects,
            "morphisms" => section = Section::Morphisms,
            "composition" => section = Section::Composition,
            _ => match section {
                Section::None => return Err(bad(ln, "content before the first section")),
                Section::Objects => {
                    let (id, label) = line.split_once(' ').unwrap_or((line, ""));
                    let id: usize = id.parse().map_err(|_| bad(ln, "bad object id"))?;
                    if id != labels.len() {
                        return Err(bad(ln, "object ids must be consecutive from 0"));
                    }
                    labels.push(if label.is_empty() { id.to_string() } else { label.to_string() });
                }
                Section::Morphisms => {
                    let (id, rest) = line.split_once(':').ok_or_else(|| bad(ln, "expected `id: src -> dst`"))?;
                    let (s, t) = rest.split_once("->").ok_or_else(|| bad(ln, "expected `->`"))?;
                    let id: usize = id.trim().parse().map_err(|_| bad(ln, "bad morphism id"))?;
                    if id != morphisms.len() {
                        return Err(bad(ln, "morphism ids must be consecutive from 0"));
                    }
                    let s: usize = s.trim().parse().map_err(|_| bad(ln, "bad source"))?;
                    let t: usize = t.trim().parse().map_err(|_| bad(ln, "bad target"))?;
                    morphisms.push((s, t));
                }
                Section::Composition => {
                    let (lhs, h) = line.split_once('=').ok_or_else(|| bad(ln, "expected `g . f = h`"))?;
                    let (g, f) = lhs.split_once('.').ok_or_else(|| bad(ln, "expected `g . f`"))?;
                    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| bad(ln, "bad morphism id"));
                    triples.push((parse(g)?, parse(f)?, parse(h)?));
                }
            },
        }
    }
    let n_mor = morphisms.len();
    let mut table = std::collections::HashMap::new();
    for &(g, f, h) in &triples {
        if g >= n_mor || f >= n_mor || h >= n_mor {
            return Err(FinCatError::Malformed(format!("composition {g} . {f} = {h} out of range")));
        }
        table.insert((g, f), h);
    }
    let mut identities = Vec::with_capacity(labels.len());
    for o in 0..labels.len() {
        let unit = (0..n_mor).find(|&e| {
            morphisms[e] == (o, o)
                && (0..n_mor).all(|m| {
                    (morphisms[m].1 != o || table.get(&(e, m)) == Some(&m))
                        && (morphisms[m].0 != o || table.get(&(m, e)) == Some(&m))
                })
        });
        identities.push(unit.ok_or_else(|| FinCatError::Malformed(format!("object {o} has no identity")))?);
    }
    FinCategory::from_parts(labels, morphisms, identities, triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinPoset;

    #[test]
    fn round_trip() {
        for cat in [FinPoset::chain(3).to_category(), FinCategory::cyclic_group(3), FinCategory::empty()] {
            let text = write_category(&cat);
            let back = parse_category(&text).unwrap();
            assert_eq!(write_category(&back), text);
            assert!(back.validate().is_ok());
        }
    }

    #[test]
    fn thin_and_dense_tables_serialize_alike() {
        let thin = FinPoset::chain(3).to_category();
        let dense = parse_category(&write_category(&thin)).unwrap();
        assert_eq!(write_category(&thin), write_category(&dense));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_category("objects\n0\nmorphisms\nzero: 0 -> 0\n").unwrap_err();
        assert!(matches!(err, FinCatError::Parse { line: 4, .. }));
    }
}
