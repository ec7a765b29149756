use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::Rng;
use serde_json::json;

use super::random::instance_rng;
use super::{CheckReport, TheoremError, Verdict};

/// Absolute tolerance for every barycentric comparison.
pub const TOLERANCE: f64 = 1e-12;

/// A point of a simplex of the nerve, with the index `q` of the first vertex
/// of its string that covers the chosen configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct BarycentricPoint {
    coords: Vec<f64>,
    q: usize,
}

impl BarycentricPoint {
    pub fn new(coords: Vec<f64>, q: usize) -> Result<Self, TheoremError> {
        let sum: f64 = coords.iter().sum();
        if coords.is_empty() || q >= coords.len() {
            return Err(TheoremError::InvalidPoint(format!("flag index {q} outside {} coordinates", coords.len())));
        }
        if coords.iter().any(|&c| c < 0.0 || !c.is_finite()) || (sum - 1.0).abs() > TOLERANCE {
            return Err(TheoremError::InvalidPoint(format!("coordinates {coords:?} are not barycentric")));
        }
        Ok(Self { coords, q })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len()
            && self.coords.iter().zip(&other.coords).all(|(a, b)| (a - b).abs() <= TOLERANCE)
    }
}

/// Zeroes the coordinates before `q` and renormalizes the rest.
pub fn bary_retract(x: &BarycentricPoint) -> Result<BarycentricPoint, TheoremError> {
    let tail: f64 = x.coords[x.q..].iter().sum();
    if tail <= TOLERANCE {
        return Err(TheoremError::ZeroTail);
    }
    let coords = x.coords.iter().enumerate().map(|(i, &c)| if i < x.q { 0.0 } else { c / tail }).collect();
    Ok(BarycentricPoint { coords, q: x.q })
}

/// `(1 - t) x + t bary_retract(x)`.
pub fn bary_homotopy(x: &BarycentricPoint, t: f64) -> Result<BarycentricPoint, TheoremError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(TheoremError::InvalidPoint(format!("time {t} outside [0, 1]")));
    }
    let bar = bary_retract(x)?;
    let coords = x.coords.iter().zip(&bar.coords).map(|(a, b)| (1.0 - t) * a + t * b).collect();
    Ok(BarycentricPoint { coords, q: x.q })
}

/// A point on a string of object ids given by its nonzero coordinates.
fn point_on(string: &[usize], weights: &BTreeMap<usize, f64>, covers: impl Fn(usize) -> bool) -> BarycentricPoint {
    let coords: Vec<f64> = string.iter().map(|id| weights.get(id).copied().unwrap_or(0.0)).collect();
    let q = string.iter().position(|&id| covers(id)).expect("some vertex covers");
    BarycentricPoint { coords, q }
}

fn by_id(string: &[usize], x: &BarycentricPoint) -> BTreeMap<usize, f64> {
    string.iter().zip(&x.coords).filter(|(_, &c)| c > 0.0).map(|(&id, &c)| (id, c)).collect()
}

fn maps_agree(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> bool {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    keys.into_iter().all(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs() <= TOLERANCE)
}

/// Idempotence, endpoint identities and agreement on shared faces for
/// `count` seeded random instances.
pub fn verify_bary(seed: u64, count: usize) -> CheckReport {
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut first_failure = None;
    for i in 0..count {
        let mut rng = instance_rng(seed, 7, i as u64);
        // object ids 0..m, ordered along strings; ids >= threshold cover y
        let m = rng.gen_range(3..12);
        let threshold = rng.gen_range(0..m);
        let covers = |id: usize| id >= threshold;
        let shared_len = rng.gen_range(1..=m.min(4));
        let mut shared: Vec<usize> = sample(&mut rng, m, shared_len).into_vec();
        if !shared.iter().any(|&id| covers(id)) {
            shared[0] = rng.gen_range(threshold..m);
        }
        shared.sort_unstable();
        shared.dedup();
        let raw: Vec<f64> = shared.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let weights: BTreeMap<usize, f64> = shared.iter().zip(&raw).map(|(&id, &w)| (id, w / total)).collect();
        let extend = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut s = shared.clone();
            for id in 0..m {
                if !s.contains(&id) && rng.gen_bool(0.4) {
                    s.push(id);
                }
            }
            s.sort_unstable();
            s
        };
        let a = extend(&mut rng);
        let b = extend(&mut rng);
        let xa = point_on(&a, &weights, covers);
        let xb = point_on(&b, &weights, covers);
        let t: f64 = rng.gen_range(0.0..=1.0);

        let mut fail = |what: &'static str| {
            *failures.entry(what).or_insert(0) += 1;
            if first_failure.is_none() {
                first_failure = Some(json!({"instance": i, "property": what, "a": a, "b": b}));
            }
        };
        let (ra, rb) = match (bary_retract(&xa), bary_retract(&xb)) {
            (Ok(ra), Ok(rb)) => (ra, rb),
            _ => {
                fail("zero tail");
                continue;
            }
        };
        let sum_ok = |p: &BarycentricPoint| (p.coords.iter().sum::<f64>() - 1.0).abs() <= TOLERANCE;
        if !bary_retract(&ra).is_ok_and(|rr| rr.approx_eq(&ra)) {
            fail("idempotence");
        }
        if !bary_homotopy(&xa, 0.0).is_ok_and(|h| h.approx_eq(&xa)) || !bary_homotopy(&xa, 1.0).is_ok_and(|h| h.approx_eq(&ra)) {
            fail("endpoints");
        }
        if !bary_homotopy(&xa, t).is_ok_and(|h| sum_ok(&h)) || !sum_ok(&ra) {
            fail("coordinate sum");
        }
        if !maps_agree(&by_id(&a, &ra), &by_id(&b, &rb)) {
            fail("shared face");
        }
        if !bary_homotopy(&xa, t)
            .and_then(|ha| bary_homotopy(&xb, t).map(|hb| maps_agree(&by_id(&a, &ha), &by_id(&b, &hb))))
            .unwrap_or(false)
        {
            fail("shared face homotopy");
        }
        // q recharacterized as the first covering index with nonzero coordinate
        let q2 = (0..a.len()).find(|&j| covers(a[j]) && xa.coords[j] > 0.0).expect("a covering vertex carries weight");
        if !bary_retract(&BarycentricPoint { coords: xa.coords.clone(), q: q2 }).is_ok_and(|r| r.approx_eq(&ra)) {
            fail("recharacterized q");
        }
    }
    let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
    CheckReport::new("bary", verdict)
        .param("seed", seed)
        .param("count", count)
        .param("tolerance", TOLERANCE)
        .witness(json!({"instances": count, "failures": failures, "first_failure": first_failure}))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64], q: usize) -> BarycentricPoint {
        BarycentricPoint::new(c.to_vec(), q).unwrap()
    }

    #[test]
    fn formula() {
        let x = pt(&[0.5, 0.3, 0.2], 1);
        assert!(bary_retract(&x).unwrap().approx_eq(&pt(&[0.0, 0.6, 0.4], 1)));
        assert!(bary_homotopy(&x, 0.5).unwrap().approx_eq(&pt(&[0.25, 0.45, 0.3], 1)));
        let y = pt(&[0.5, 0.3, 0.2], 0);
        assert!(bary_retract(&y).unwrap().approx_eq(&y));
    }

    #[test]
    fn zero_tail_and_bad_points() {
        assert!(matches!(bary_retract(&pt(&[1.0, 0.0], 1)), Err(TheoremError::ZeroTail)));
        assert!(BarycentricPoint::new(vec![0.5, 0.4], 0).is_err());
        assert!(BarycentricPoint::new(vec![1.0], 1).is_err());
        assert!(bary_homotopy(&pt(&[1.0], 0), 1.5).is_err());
    }

    #[test]
    fn random_batch_passes() {
        let r = verify_bary(3, 2000);
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
    }
}
