use serde::{Deserialize, Serialize};

use crate::homology::Engine;
use crate::manifolds::{build_bk, enumerate_balls, family_from_spec, ManifoldModel, OpenSetRep};

use super::{
    fiber_instance, thomason_instance, verify_bary, verify_engine, verify_grothendieck_decomposition,
    verify_homotopy_terminal_j, verify_nerve_ak, verify_refinement, verify_semidirect, CheckReport, TheoremError,
};

/// One schedulable check with all of its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum CheckSpec {
    NerveAk { model: String, k: usize, max_degree: usize, sweep: usize },
    Thomason { seed: u64, instance: u64, max_degree: usize },
    Semidirect { max_degree: usize },
    Fiber { seed: u64, instance: u64 },
    TerminalJ { model: String, k: usize, q: usize, region: String },
    Decomposition { model: String, k: usize, p: usize, region: String },
    Refinement { model: String, k: usize, p: usize, region: String, subbasis: String, max_degree: usize },
    Bary { seed: u64, count: usize },
    Engine { seed: u64, count: usize },
}

/// A check of the acceptance plan and the criterion it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannedCheck {
    pub criterion: u8,
    pub spec: CheckSpec,
}

fn model(spec: &str) -> Result<ManifoldModel, TheoremError> {
    Ok(spec.parse::<ManifoldModel>()?)
}

pub fn run(spec: &CheckSpec, engine: &Engine) -> Result<CheckReport, TheoremError> {
    match spec {
        CheckSpec::NerveAk { model: m, k, max_degree, sweep } => verify_nerve_ak(engine, &model(m)?, *k, *max_degree, *sweep),
        CheckSpec::Thomason { seed, instance, max_degree } => thomason_instance(engine, *seed, *instance, *max_degree),
        CheckSpec::Semidirect { max_degree } => verify_semidirect(engine, *max_degree),
        CheckSpec::Fiber { seed, instance } => fiber_instance(*seed, *instance),
        CheckSpec::TerminalJ { model: m, k, q, region } => {
            let m = model(m)?;
            let bundle = build_bk(&m, &enumerate_balls(&m), *k)?;
            verify_homotopy_terminal_j(&bundle, *q, &OpenSetRep::parse(&m, region)?)
        }
        CheckSpec::Decomposition { model: m, k, p, region } => {
            let m = model(m)?;
            let bundle = build_bk(&m, &enumerate_balls(&m), *k)?;
            verify_grothendieck_decomposition(&bundle, *p, &OpenSetRep::parse(&m, region)?)
        }
        CheckSpec::Refinement { model: m, k, p, region, subbasis, max_degree } => {
            let m = model(m)?;
            let sub = family_from_spec(&m, subbasis)?;
            Ok(verify_refinement(engine, &m, *k, *p, &OpenSetRep::parse(&m, region)?, &sub, *max_degree)?
                .param("subbasis", subbasis.as_str()))
        }
        CheckSpec::Bary { seed, count } => Ok(verify_bary(*seed, *count)),
        CheckSpec::Engine { seed, count } => Ok(verify_engine(*seed, *count)),
    }
}

/// Every check of the acceptance criteria, in a fixed order.
pub fn acceptance_plan(seed: u64) -> Vec<PlannedCheck> {
    use CheckSpec::*;
    let mut plan = Vec::new();
    let mut add = |criterion: u8, spec: CheckSpec| plan.push(PlannedCheck { criterion, spec });
    let s = String::from;
    add(1, NerveAk { model: s("cycle:6"), k: 1, max_degree: 1, sweep: 0 });
    add(2, NerveAk { model: s("interval:6"), k: 2, max_degree: 1, sweep: 2 });
    add(3, NerveAk { model: s("cycle:6"), k: 2, max_degree: 1, sweep: 2 });
    for instance in 0..20 {
        add(4, Thomason { seed, instance, max_degree: 2 });
    }
    add(5, Semidirect { max_degree: 1 });
    for k in 1..=2 {
        for p in 1..=2 {
            add(6, Decomposition { model: s("interval:4"), k, p, region: s("all") });
        }
    }
    for m in ["interval:4", "cycle:5"] {
        for k in 1..=2 {
            for q in 1..=2 {
                add(7, TerminalJ { model: s(m), k, q, region: s("all") });
            }
        }
    }
    for k in 1..=2 {
        for p in 0..=1 {
            add(8, Refinement { model: s("cycle:8"), k, p, region: s("all"), subbasis: s("stride:2"), max_degree: 1 });
        }
    }
    for instance in 0..50 {
        add(9, Fiber { seed, instance });
    }
    add(10, Bary { seed, count: 10_000 });
    add(11, Engine { seed, count: 300 });
    plan
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_covers_every_computational_criterion() {
        let plan = acceptance_plan(0);
        let mut crit: Vec<u8> = plan.iter().map(|c| c.criterion).collect();
        crit.dedup();
        assert_eq!(crit, (1..=11).collect::<Vec<_>>());
        assert_eq!(plan.iter().filter(|c| c.criterion == 9).count(), 50);
    }

    #[test]
    fn specs_serialize_with_a_tag() {
        let s = serde_json::to_string(&CheckSpec::Bary { seed: 1, count: 2 }).unwrap();
        assert_eq!(s, r#"{"check":"bary","seed":1,"count":2}"#);
    }

    #[test]
    fn runs_small_specs() {
        let e = Engine::default();
        let r = run(&CheckSpec::TerminalJ { model: "cycle:5".into(), k: 2, q: 1, region: "all".into() }, &e).unwrap();
        assert!(r.verdict.is_pass(), "{}", r.to_json_line());
        assert!(run(&CheckSpec::NerveAk { model: "cycle:2".into(), k: 1, max_degree: 1, sweep: 0 }, &e).is_err());
    }
}
