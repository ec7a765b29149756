use serde_json::json;

use crate::homology::{Engine, HomologySummary};
use crate::manifolds::{build_bk, config_complex, enumerate_balls, ManifoldModel};
use crate::sset::nerve;

use super::{CheckReport, Stabilization, SweepEntry, TheoremError, Verdict, ISOTOPY_NOTE};

fn sides(engine: &Engine, model: &ManifoldModel, k: usize, through: usize) -> Result<(HomologySummary, HomologySummary, usize), TheoremError> {
    let bundle = build_bk(model, &enumerate_balls(model), k)?;
    let a = bundle.a_category()?;
    let left = engine.homology(&nerve(&a, through + 1).sset, through)?;
    let mut right = HomologySummary::zero(through);
    for j in 0..=k {
        right = right.direct_sum(&engine.homology(&config_complex(model, j)?, through)?);
    }
    Ok((left, right, bundle.len()))
}

/// Compares the nerve of `A_k` with the disjoint union of unordered
/// configuration spaces of at most `k` points, at the model's resolution and
/// at `sweep` further resolutions.
pub fn verify_nerve_ak(
    engine: &Engine,
    model: &ManifoldModel,
    k: usize,
    through: usize,
    sweep: usize,
) -> Result<CheckReport, TheoremError> {
    if model.dimension() != 1 {
        return Err(TheoremError::Unsupported(format!("nerve-ak needs a one-dimensional model, got {model}")));
    }
    model.validate()?;
    if model.size() < 3 * k {
        return Err(TheoremError::TooSmall(format!("{model} needs at least {} vertices for k = {k}", 3 * k)));
    }
    let (left, right, objects) = sides(engine, model, k, through)?;
    let mut report = CheckReport::new("nerve-ak", Verdict::Fail)
        .param("model", model.to_string())
        .param("k", k)
        .param("max_degree", through)
        .param("sweep", sweep)
        .witness(json!({ "objects": objects }))
        .note(ISOTOPY_NOTE)
        .compare(left.clone(), right.clone(), through);
    if report.verdict == Verdict::InconclusiveTruncation {
        return Err(TheoremError::Truncation(format!("homology known only through {:?}", report.degrees_valid)));
    }
    if sweep > 0 {
        let mut entries = vec![SweepEntry { model: model.to_string(), pass: report.verdict.is_pass(), left, right }];
        for n in model.size() + 1..=model.size() + sweep {
            let m = model.resized(n);
            let (l, r, _) = sides(engine, &m, k, through)?;
            let pass = l.agrees_through(&r, through);
            entries.push(SweepEntry { model: m.to_string(), left: l, right: r, pass });
        }
        let stab = Stabilization::from_sweep(entries);
        if !stab.is_stable() {
            report.verdict = Verdict::Fail;
        }
        report.stabilization = Some(stab);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti(r: &CheckReport) -> (Vec<usize>, Vec<usize>) {
        (r.left.as_ref().unwrap().betti.clone(), r.right.as_ref().unwrap().betti.clone())
    }

    #[test]
    fn k0_is_a_point() {
        let r = verify_nerve_ak(&Engine::default(), &ManifoldModel::Cycle(4), 0, 1, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(betti(&r), (vec![1, 0], vec![1, 0]));
    }

    #[test]
    fn circle_k1() {
        let r = verify_nerve_ak(&Engine::default(), &ManifoldModel::Cycle(6), 1, 1, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_json_line());
        assert_eq!(betti(&r), (vec![2, 1], vec![2, 1]));
        assert!(r.stabilization.unwrap().is_stable());
    }

    #[test]
    fn preconditions() {
        let e = Engine::default();
        assert!(matches!(verify_nerve_ak(&e, &ManifoldModel::Interval(5), 2, 1, 0), Err(TheoremError::TooSmall(_))));
        assert!(matches!(verify_nerve_ak(&e, &ManifoldModel::Grid(2, 2), 1, 1, 0), Err(TheoremError::Unsupported(_))));
    }
}
