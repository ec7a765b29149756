use std::fmt;

use super::{parse_ball_list, ManifoldError, ManifoldModel};

/// An open set of a model, stored extensionally as its sorted point set with
/// its connected components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenSetRep {
    points: Vec<u32>,
    components: Vec<Vec<u32>>,
}

impl OpenSetRep {
    pub fn new(model: &ManifoldModel, mut points: Vec<u32>) -> Self {
        points.sort_unstable();
        points.dedup();
        let components = model.components(&points);
        Self { points, components }
    }

    pub fn empty() -> Self {
        Self { points: Vec::new(), components: Vec::new() }
    }

    pub fn whole(model: &ManifoldModel) -> Self {
        Self::new(model, (0..model.num_points() as u32).collect())
    }

    /// `all`, `empty`, or balls joined by `+` (for example `0..2+4`).
    pub fn parse(model: &ManifoldModel, spec: &str) -> Result<Self, ManifoldError> {
        match spec.trim() {
            "all" => Ok(Self::whole(model)),
            "empty" | "∅" => Ok(Self::empty()),
            s => {
                let balls = parse_ball_list(model, &s.replace('+', "\n"))?;
                Ok(Self::new(model, balls.iter().flat_map(|b| b.points().iter().copied()).collect()))
            }
        }
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: u32) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &OpenSetRep) -> bool {
        self.points.len() <= other.points.len() && self.points.iter().all(|&p| other.contains(p))
    }
}

impl fmt::Display for OpenSetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        f.write_str(&parts.join("+"))
    }
}

/// The inclusion `U ⊆ V` induces a bijection on components, each component
/// of `V` containing exactly one component of `U`.
pub fn is_isotopy_equiv(u: &OpenSetRep, v: &OpenSetRep) -> Result<bool, ManifoldError> {
    if !u.is_subset_of(v) {
        return Err(ManifoldError::NotASubset(format!("{u} ⊄ {v}")));
    }
    Ok(u.num_components() == v.num_components()
        && v.components.iter().all(|vc| {
            u.components.iter().filter(|uc| vc.binary_search(&uc[0]).is_ok()).count() == 1
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotopy_examples() {
        let m = ManifoldModel::Interval(3);
        let set = |p: &[u32]| OpenSetRep::new(&m, p.to_vec());
        assert!(is_isotopy_equiv(&set(&[1]), &set(&[0, 1, 2])).unwrap());
        assert!(!is_isotopy_equiv(&set(&[0, 2]), &set(&[0, 1, 2])).unwrap());
        assert!(is_isotopy_equiv(&OpenSetRep::empty(), &OpenSetRep::empty()).unwrap());
        assert!(!is_isotopy_equiv(&OpenSetRep::empty(), &set(&[0])).unwrap());
        assert!(matches!(is_isotopy_equiv(&set(&[0]), &set(&[1])), Err(ManifoldError::NotASubset(_))));
    }

    #[test]
    fn parse_regions() {
        let m = ManifoldModel::Cycle(6);
        assert_eq!(OpenSetRep::parse(&m, "all").unwrap(), OpenSetRep::whole(&m));
        let r = OpenSetRep::parse(&m, "0..1+3").unwrap();
        assert_eq!(r.points(), &[0, 1, 3]);
        assert_eq!(r.num_components(), 2);
        assert_eq!(r.to_string(), "{0,1}+{3}");
        assert!(OpenSetRep::parse(&m, "banana").is_err());
    }
}
