use std::fmt;
use std::str::FromStr;

use super::ManifoldError;

/// A combinatorial manifold: a path or cycle graph (dimension 1) or a
/// rectangle of unit cells (dimension 2).
///
/// Points are numbered `0..num_points()`; grid cell `(r, c)` is `r * cols + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ManifoldModel {
    Interval(usize),
    Cycle(usize),
    Grid(usize, usize),
}

impl ManifoldModel {
    pub fn dimension(&self) -> usize {
        match self {
            Self::Interval(_) | Self::Cycle(_) => 1,
            Self::Grid(..) => 2,
        }
    }

    pub fn num_points(&self) -> usize {
        match *self {
            Self::Interval(n) | Self::Cycle(n) => n,
            Self::Grid(m, n) => m * n,
        }
    }

    /// The resolution parameter swept by stabilization checks.
    pub fn size(&self) -> usize {
        match *self {
            Self::Interval(n) | Self::Cycle(n) => n,
            Self::Grid(m, n) => m.min(n),
        }
    }

    /// The same kind of model at resolution `n` (grids grow both sides).
    pub fn resized(&self, n: usize) -> Self {
        match *self {
            Self::Interval(_) => Self::Interval(n),
            Self::Cycle(_) => Self::Cycle(n),
            Self::Grid(a, b) => {
                let d = n as isize - a.min(b) as isize;
                Self::Grid((a as isize + d) as usize, (b as isize + d) as usize)
            }
        }
    }

    pub fn validate(&self) -> Result<(), ManifoldError> {
        match *self {
            Self::Interval(0) | Self::Grid(0, _) | Self::Grid(_, 0) => {
                Err(ManifoldError::TooSmall(format!("{self} has no points")))
            }
            Self::Cycle(n) if n < 3 => Err(ManifoldError::TooSmall(format!("{self} needs at least 3 vertices"))),
            _ => Ok(()),
        }
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        let (a, b) = (a as usize, b as usize);
        match *self {
            Self::Interval(_) => a.abs_diff(b) == 1,
            Self::Cycle(n) => (a + 1) % n == b || (b + 1) % n == a,
            Self::Grid(_, cols) => {
                let (ra, ca, rb, cb) = (a / cols, a % cols, b / cols, b % cols);
                ra.abs_diff(rb) + ca.abs_diff(cb) == 1
            }
        }
    }

    pub fn neighbors(&self, p: u32) -> Vec<u32> {
        let p = p as usize;
        let mut out = Vec::with_capacity(4);
        match *self {
            Self::Interval(n) => {
                if p > 0 {
                    out.push(p - 1);
                }
                if p + 1 < n {
                    out.push(p + 1);
                }
            }
            Self::Cycle(n) => {
                out.push((p + n - 1) % n);
                out.push((p + 1) % n);
            }
            Self::Grid(rows, cols) => {
                let (r, c) = (p / cols, p % cols);
                if r > 0 {
                    out.push(p - cols);
                }
                if c > 0 {
                    out.push(p - 1);
                }
                if c + 1 < cols {
                    out.push(p + 1);
                }
                if r + 1 < rows {
                    out.push(p + cols);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out.into_iter().map(|q| q as u32).collect()
    }

    /// Connected components of a sorted point set, each sorted, ordered by
    /// their smallest point.
    pub fn components(&self, points: &[u32]) -> Vec<Vec<u32>> {
        let mut seen = vec![false; points.len()];
        let mut out = Vec::new();
        for start in 0..points.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![points[start]];
            let mut stack = vec![points[start]];
            while let Some(p) = stack.pop() {
                for q in self.neighbors(p) {
                    if let Ok(i) = points.binary_search(&q) {
                        if !seen[i] {
                            seen[i] = true;
                            comp.push(q);
                            stack.push(q);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// No shared point and no adjacent pair of points.
    pub fn separated(&self, a: &[u32], b: &[u32]) -> bool {
        a.iter().all(|&p| b.binary_search(&p).is_err() && self.neighbors(p).iter().all(|q| b.binary_search(q).is_err()))
    }
}

impl fmt::Display for ManifoldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Interval(n) => write!(f, "interval:{n}"),
            Self::Cycle(n) => write!(f, "cycle:{n}"),
            Self::Grid(m, n) => write!(f, "grid:{m}x{n}"),
        }
    }
}

impl FromStr for ManifoldModel {
    type Err = ManifoldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ManifoldError::Parse(format!("unknown model `{s}` (expected interval:N, cycle:N or grid:MxN)"));
        let (kind, size) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let model = match kind {
            "interval" => Self::Interval(num(size)?),
            "cycle" => Self::Cycle(num(size)?),
            "grid" => {
                let (m, n) = size.split_once('x').ok_or_else(bad)?;
                Self::Grid(num(m)?, num(n)?)
            }
            _ => return Err(bad()),
        };
        model.validate()?;
        Ok(model)
    }
}
