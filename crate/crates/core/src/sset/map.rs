use std::collections::HashMap;

use super::simplicial::{surjection, Simplex, SimplicialSet};
use super::SsetError;

/// A simplicial map, stored as the image of every nondegenerate simplex of
/// the source. Images of degenerate simplices follow by applying the
/// degeneracy in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    /// `images[n][x]` is the image of the nondegenerate `n`-simplex `x`; it must
    /// have dimension `n`.
    pub fn new(images: Vec<Vec<Simplex>>) -> Self {
        Self { images }
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        Self {
            images: (0..=x.top())
                .map(|n| (0..x.count(n) as u32).map(|i| Simplex::nondegenerate(n, i)).collect())
                .collect(),
        }
    }

    /// The map to the one-point set.
    pub fn to_point(x: &SimplicialSet) -> Self {
        Self {
            images: (0..=x.top())
                .map(|n| vec![Simplex::totally_degenerate(0, n); x.count(n)])
                .collect(),
        }
    }

    pub fn images(&self) -> &[Vec<Simplex>] {
        &self.images
    }

    pub fn image_of_nondegenerate(&self, n: usize, x: u32) -> Simplex {
        self.images[n][x as usize]
    }

    /// Image of an arbitrary simplex of the source.
    pub fn image(&self, target: &SimplicialSet, x: Simplex) -> Simplex {
        image_in(&self.images, target, x)
    }

    /// Checks shapes and that the map commutes with every face map on
    /// nondegenerate simplices.
    pub fn validate(&self, source: &SimplicialSet, target: &SimplicialSet) -> Result<(), SsetError> {
        if self.images.len() != source.top() + 1 {
            return Err(SsetError::NotAMap("one image list per source dimension expected".into()));
        }
        for n in 0..=source.top() {
            if self.images[n].len() != source.count(n) {
                return Err(SsetError::NotAMap(format!("dimension {n}: wrong number of images")));
            }
            for y in &self.images[n] {
                if y.dim != n || y.degeneracy >> n != 0 {
                    return Err(SsetError::NotAMap(format!("dimension {n}: image {y:?} has the wrong shape")));
                }
                if y.base as usize >= target.count(y.base_dim()) {
                    return Err(SsetError::NotAMap(format!("dimension {n}: image {y:?} is not in the target")));
                }
            }
        }
        for n in 1..=source.top() {
            for x in 0..source.count(n) as u32 {
                let s = Simplex::nondegenerate(n, x);
                let fx = self.images[n][x as usize];
                for i in 0..=n {
                    let lhs = self.image(target, source.face(s, i));
                    let rhs = target.face(fx, i);
                    if lhs != rhs {
                        return Err(SsetError::NotAMap(format!(
                            "face {i} of {n}-simplex {x}: f(d x) = {lhs:?} but d f(x) = {rhs:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `second . self`.
    pub fn then(&self, second: &SimplicialMap, middle: &SimplicialSet) -> Self {
        Self {
            images: self
                .images
                .iter()
                .map(|row| row.iter().map(|&y| second.image(middle, y)).collect())
                .collect(),
        }
    }

    /// True when the map is a bijection on nondegenerate simplices in every
    /// dimension (and hence an isomorphism).
    pub fn is_isomorphism(&self, source: &SimplicialSet, target: &SimplicialSet) -> bool {
        if self.validate(source, target).is_err() || source.top() != target.top() {
            return false;
        }
        (0..=source.top()).all(|n| {
            if source.count(n) != target.count(n) {
                return false;
            }
            let mut seen = vec![false; target.count(n)];
            self.images[n]
                .iter()
                .all(|y| y.degeneracy == 0 && !std::mem::replace(&mut seen[y.base as usize], true))
        })
    }
}

fn image_in(images: &[Vec<Simplex>], target: &SimplicialSet, x: Simplex) -> Simplex {
    let b = images[x.base_dim()][x.base as usize];
    if x.degeneracy == 0 {
        b
    } else {
        target.apply(b, &surjection(x.dim, x.degeneracy))
    }
}

/// Searches for an isomorphism `X -> Y`, assigning simplices dimension by
/// dimension. Higher simplices are matched through their face tuples, so
/// only vertices are genuinely guessed.
pub fn find_isomorphism(x: &SimplicialSet, y: &SimplicialSet, budget: u64) -> Result<Option<SimplicialMap>, SsetError> {
    if x.top() != y.top() || (0..=x.top()).any(|n| x.count(n) != y.count(n)) {
        return Ok(None);
    }
    // face tuple of each nondegenerate simplex of Y, for candidate lookup
    let mut y_index: Vec<HashMap<Vec<Simplex>, Vec<u32>>> = vec![HashMap::new()];
    for n in 1..=y.top() {
        let mut m: HashMap<Vec<Simplex>, Vec<u32>> = HashMap::new();
        for s in 0..y.count(n) as u32 {
            let faces = (0..=n).map(|i| y.face(Simplex::nondegenerate(n, s), i)).collect();
            m.entry(faces).or_default().push(s);
        }
        y_index.push(m);
    }
    let order: Vec<(usize, u32)> =
        (0..=x.top()).flat_map(|n| (0..x.count(n) as u32).map(move |s| (n, s))).collect();
    let total = order.len();
    let mut images: Vec<Vec<Simplex>> = (0..=x.top()).map(|n| vec![Simplex::nondegenerate(n, 0); x.count(n)]).collect();
    let mut used: Vec<Vec<bool>> = (0..=y.top()).map(|n| vec![false; y.count(n)]).collect();
    let mut cands: Vec<Vec<u32>> = vec![Vec::new(); total];
    let mut pos = vec![0usize; total];
    let partial = |images: &Vec<Vec<Simplex>>, n: usize, s: u32| -> Vec<u32> {
        if n == 0 {
            return (0..y.count(0) as u32).collect();
        }
        let faces: Vec<Simplex> =
            (0..=n).map(|i| image_in(images, y, x.face(Simplex::nondegenerate(n, s), i))).collect();
        y_index[n].get(&faces).cloned().unwrap_or_default()
    };
    if total == 0 {
        return Ok(Some(SimplicialMap { images }));
    }
    let mut nodes = 0u64;
    let mut i = 0usize;
    cands[0] = partial(&images, order[0].0, order[0].1);
    loop {
        let (n, s) = order[i];
        let mut found = false;
        while pos[i] < cands[i].len() {
            let c = cands[i][pos[i]];
            pos[i] += 1;
            nodes += 1;
            if nodes > budget {
                return Err(SsetError::BudgetExceeded(budget));
            }
            if !used[n][c as usize] {
                used[n][c as usize] = true;
                images[n][s as usize] = Simplex::nondegenerate(n, c);
                found = true;
                break;
            }
        }
        if found {
            i += 1;
            if i == total {
                let map = SimplicialMap { images };
                return Ok(map.is_isomorphism(x, y).then_some(map));
            }
            pos[i] = 0;
            cands[i] = partial(&images, order[i].0, order[i].1);
        } else {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            let (n, s) = order[i];
            used[n][images[n][s as usize].base as usize] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_point_maps_are_valid() {
        let x = SimplicialSet::boundary_of_simplex(2);
        SimplicialMap::identity(&x).validate(&x, &x).unwrap();
        SimplicialMap::to_point(&x).validate(&x, &SimplicialSet::point()).unwrap();
        assert!(SimplicialMap::identity(&x).is_isomorphism(&x, &x));
    }

    #[test]
    fn broken_map_is_rejected() {
        let x = SimplicialSet::simplex(1);
        // send both vertices to 0 but keep the edge nondegenerate
        let bad = SimplicialMap::new(vec![
            vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 0)],
            vec![Simplex::nondegenerate(1, 0)],
        ]);
        assert!(bad.validate(&x, &x).is_err());
    }

    #[test]
    fn rotated_triangle_is_found() {
        let a = SimplicialSet::boundary_of_simplex(2);
        let b = SimplicialSet::from_complex(&[vec![5, 7], vec![7, 9], vec![5, 9]]);
        let iso = find_isomorphism(&a, &b, 10_000).unwrap().unwrap();
        assert!(iso.is_isomorphism(&a, &b));
        let disk = SimplicialSet::simplex(2);
        assert!(find_isomorphism(&a, &disk, 10_000).unwrap().is_none());
    }
}
