use std::fmt;

use super::{ManifoldError, ManifoldModel};

/// Shape of a basis ball: an arc of consecutive vertices or an axis-aligned
/// rectangle of cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BallShape {
    Arc { start: usize, len: usize },
    Rect { row: usize, col: usize, height: usize, width: usize },
}

/// A connected, convex point set of a model. Points are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ball {
    pub shape: BallShape,
    points: Vec<u32>,
}

impl Ball {
    pub fn new(model: &ManifoldModel, shape: BallShape) -> Result<Self, ManifoldError> {
        let outside = || ManifoldError::BallOutside(format!("{shape:?} in {model}"));
        let mut points: Vec<u32> = match (*model, shape) {
            (ManifoldModel::Interval(n), BallShape::Arc { start, len }) => {
                if len == 0 || start + len > n {
                    return Err(outside());
                }
                (start..start + len).map(|p| p as u32).collect()
            }
            (ManifoldModel::Cycle(n), BallShape::Arc { start, len }) => {
                if len == 0 || len >= n || start >= n {
                    return Err(outside());
                }
                (0..len).map(|i| ((start + i) % n) as u32).collect()
            }
            (ManifoldModel::Grid(rows, cols), BallShape::Rect { row, col, height, width }) => {
                if height == 0 || width == 0 || row + height > rows || col + width > cols {
                    return Err(outside());
                }
                let mut v = Vec::with_capacity(height * width);
                for r in row..row + height {
                    for c in col..col + width {
                        v.push((r * cols + c) as u32);
                    }
                }
                v
            }
            _ => return Err(outside()),
        };
        points.sort_unstable();
        Ok(Self { shape, points })
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn contains(&self, p: u32) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &Ball) -> bool {
        self.points.iter().all(|&p| other.contains(p))
    }

    /// The coordinate the `stride:s` sub-basis filters on.
    fn start(&self) -> (usize, usize) {
        match self.shape {
            BallShape::Arc { start, .. } => (start, 0),
            BallShape::Rect { row, col, .. } => (row, col),
        }
    }

    fn is_minimal(&self) -> bool {
        self.points.len() == 1
    }
}

/// `a..b` for arcs (wrapping on cycles), `a` for single vertices,
/// `r,c..r2,c2` for rectangles and `r,c` for single cells.
impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            BallShape::Arc { start, len: 1 } => write!(f, "{start}"),
            BallShape::Arc { start, len } => {
                // a wrapped arc on a cycle ends just below its start
                let wrapped = self.points.iter().filter(|&&p| (p as usize) < start).count();
                let end = if wrapped > 0 { wrapped - 1 } else { start + len - 1 };
                write!(f, "{start}..{end}")
            }
            BallShape::Rect { row, col, height: 1, width: 1 } => write!(f, "{row},{col}"),
            BallShape::Rect { row, col, height, width } => {
                write!(f, "{row},{col}..{},{}", row + height - 1, col + width - 1)
            }
        }
    }
}

/// All arcs (dimension 1) or all rectangles (dimension 2), in order of start
/// coordinate and then size.
pub fn enumerate_balls(model: &ManifoldModel) -> Vec<Ball> {
    let mut shapes = Vec::new();
    match *model {
        ManifoldModel::Interval(n) => {
            for start in 0..n {
                for len in 1..=n - start {
                    shapes.push(BallShape::Arc { start, len });
                }
            }
        }
        ManifoldModel::Cycle(n) => {
            for start in 0..n {
                for len in 1..n {
                    shapes.push(BallShape::Arc { start, len });
                }
            }
        }
        ManifoldModel::Grid(rows, cols) => {
            for row in 0..rows {
                for col in 0..cols {
                    for height in 1..=rows - row {
                        for width in 1..=cols - col {
                            shapes.push(BallShape::Rect { row, col, height, width });
                        }
                    }
                }
            }
        }
    }
    shapes.into_iter().map(|s| Ball::new(model, s).expect("enumerated shapes fit")).collect()
}

/// For every point `p` and every ball `B` of the model containing it, some
/// member `B'` of the family has `p ∈ B' ⊆ B`.
pub fn validate_basis(model: &ManifoldModel, family: &[Ball]) -> bool {
    let all = enumerate_balls(model);
    (0..model.num_points() as u32).all(|p| {
        all.iter()
            .filter(|b| b.contains(p))
            .all(|b| family.iter().any(|m| m.contains(p) && m.is_subset_of(b)))
    })
}

/// Balls whose start coordinates are divisible by `s`, plus every single
/// point so that the family stays a basis.
pub fn stride_family(model: &ManifoldModel, s: usize) -> Result<Vec<Ball>, ManifoldError> {
    if s == 0 {
        return Err(ManifoldError::Parse("stride must be positive".into()));
    }
    Ok(enumerate_balls(model)
        .into_iter()
        .filter(|b| {
            let (a, c) = b.start();
            b.is_minimal() || (a % s == 0 && c % s == 0)
        })
        .collect())
}

/// Parses one ball per line in the [`Display`](Ball#impl-Display-for-Ball)
/// format. Blank lines and `#` comments are skipped.
pub fn parse_ball_list(model: &ManifoldModel, text: &str) -> Result<Vec<Ball>, ManifoldError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: &str| ManifoldError::Parse(format!("line {}: {m}", ln + 1));
        let (a, b) = match line.split_once("..") {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (line, line),
        };
        let shape = match *model {
            ManifoldModel::Interval(_) | ManifoldModel::Cycle(_) => {
                let x: usize = a.parse().map_err(|_| bad("bad vertex"))?;
                let y: usize = b.parse().map_err(|_| bad("bad vertex"))?;
                let n = model.num_points();
                let len = if y >= x { y - x + 1 } else if matches!(model, ManifoldModel::Cycle(_)) { n - x + y + 1 } else { 0 };
                BallShape::Arc { start: x, len }
            }
            ManifoldModel::Grid(..) => {
                let cell = |t: &str| -> Result<(usize, usize), ManifoldError> {
                    let (r, c) = t.split_once(',').ok_or_else(|| bad("expected r,c"))?;
                    Ok((r.trim().parse().map_err(|_| bad("bad row"))?, c.trim().parse().map_err(|_| bad("bad column"))?))
                };
                let ((r0, c0), (r1, c1)) = (cell(a)?, cell(b)?);
                if r1 < r0 || c1 < c0 {
                    return Err(bad("empty rectangle"));
                }
                BallShape::Rect { row: r0, col: c0, height: r1 - r0 + 1, width: c1 - c0 + 1 }
            }
        };
        out.push(Ball::new(model, shape).map_err(|e| bad(&e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_balls(&ManifoldModel::Interval(3)).len(), 6);
        assert_eq!(enumerate_balls(&ManifoldModel::Cycle(4)).len(), 12);
        assert_eq!(enumerate_balls(&ManifoldModel::Grid(1, 1)).len(), 1);
        assert_eq!(enumerate_balls(&ManifoldModel::Grid(2, 2)).len(), 9);
    }

    #[test]
    fn basis_criterion() {
        let m = ManifoldModel::Interval(5);
        let all = enumerate_balls(&m);
        assert!(validate_basis(&m, &all));
        let singles: Vec<Ball> = all.iter().filter(|b| b.points().len() == 1).cloned().collect();
        assert!(validate_basis(&m, &singles));
        let holey: Vec<Ball> = all.iter().filter(|b| !(b.contains(2) && b.points().len() <= 2)).cloned().collect();
        assert!(!validate_basis(&m, &holey));
    }

    #[test]
    fn display_round_trips() {
        for m in [ManifoldModel::Interval(4), ManifoldModel::Cycle(5), ManifoldModel::Grid(2, 3)] {
            let all = enumerate_balls(&m);
            let text: Vec<String> = all.iter().map(Ball::to_string).collect();
            let back = parse_ball_list(&m, &text.join("\n")).unwrap();
            assert_eq!(back, all, "{m}");
        }
        let c = ManifoldModel::Cycle(5);
        assert_eq!(Ball::new(&c, BallShape::Arc { start: 4, len: 3 }).unwrap().to_string(), "4..1");
    }

    #[test]
    fn stride_keeps_singletons() {
        let m = ManifoldModel::Cycle(8);
        let f = stride_family(&m, 2).unwrap();
        assert!(validate_basis(&m, &f));
        assert_eq!(f.len(), 8 + 4 * 6);
    }
}
