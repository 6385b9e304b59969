//! Depth-based statistics: population ranking, grid depth fields, grid medians, and
//! constructed counterexamples for properties depth does not have.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DepthError, Result};
use crate::exact::{curve_depth, ExactOptions};
use crate::geom::{convex_hull, Point, Polyline};
use crate::scalar::Scalar;
use crate::stabbing::point_depth;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RankEntry<T = f64> {
    pub index: usize,
    pub depth: T,
    pub normalized: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankResult<T = f64> {
    /// Deepest first; equal depths keep index order.
    pub entries: Vec<RankEntry<T>>,
    pub include_self: bool,
}

impl<T: Scalar> RankResult<T> {
    pub fn order(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.index).collect()
    }
}

/// Ranks every curve by its exact depth relative to the population, without itself
/// unless `include_self`.
pub fn rank_curves<T: Scalar>(c: &[Polyline<T>], include_self: bool, opts: &ExactOptions) -> Result<RankResult<T>> {
    if c.is_empty() {
        return Err(DepthError::domain("cannot rank an empty population"));
    }
    let mut entries = Vec::with_capacity(c.len());
    for (i, q) in c.iter().enumerate() {
        let r = if include_self {
            curve_depth(q, c, opts)?
        } else {
            let others: Vec<Polyline<T>> = c
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            curve_depth(q, &others, opts)?
        };
        entries.push(RankEntry {
            index: i,
            depth: r.depth,
            normalized: r.normalized,
        });
    }
    entries.sort_by(|a, b| b.depth.partial_cmp(&a.depth).unwrap().then(a.index.cmp(&b.index)));
    Ok(RankResult { entries, include_self })
}

/// Axis-aligned box `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BBox<T = f64> {
    pub x0: T,
    pub y0: T,
    pub x1: T,
    pub y1: T,
}

impl<T: Scalar> BBox<T> {
    pub fn new(x0: T, y0: T, x1: T, y1: T) -> Result<Self> {
        let finite = [x0, y0, x1, y1].iter().all(|v| v.is_finite());
        if !finite || !(x1 > x0) || !(y1 > y0) {
            return Err(DepthError::domain("bounding box needs finite x0 < x1 and y0 < y1"));
        }
        Ok(Self { x0, y0, x1, y1 })
    }
}

/// Grid of nodes `x_i = x0 + (x1 − x0)·i/(nx − 1)`, `y_j` likewise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid<T = f64> {
    pub bbox: BBox<T>,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Scalar> Grid<T> {
    pub fn new(bbox: BBox<T>, nx: usize, ny: usize) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(DepthError::domain("grid resolution must be at least 2 x 2"));
        }
        Ok(Self { bbox, nx, ny })
    }

    // Endpoint-weighted so both ends and the centre of a symmetric box come out exact.
    fn coord(lo: T, hi: T, i: usize, n: usize) -> T {
        let (a, b) = (T::from_usize(n - 1 - i).unwrap(), T::from_usize(i).unwrap());
        (lo * a + hi * b) / T::from_usize(n - 1).unwrap()
    }

    /// Node in row `row` (y index) and column `col` (x index).
    pub fn node(&self, row: usize, col: usize) -> Point<T> {
        Point {
            x: Self::coord(self.bbox.x0, self.bbox.x1, col, self.nx),
            y: Self::coord(self.bbox.y0, self.bbox.y1, row, self.ny),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthField<T = f64> {
    pub grid: Grid<T>,
    /// Normalized point depths, row-major (`values[row * nx + col]`).
    pub values: Vec<T>,
}

impl<T: Scalar> DepthField<T> {
    pub fn at(&self, row: usize, col: usize) -> T {
        self.values[row * self.grid.nx + col]
    }
}

pub fn depth_field<T: Scalar>(c: &[Polyline<T>], grid: &Grid<T>) -> DepthField<T> {
    let rows: Vec<Vec<T>> = (0..grid.ny)
        .into_par_iter()
        .map(|r| {
            (0..grid.nx)
                .map(|col| point_depth(grid.node(r, col), c, true))
                .collect()
        })
        .collect();
    DepthField {
        grid: *grid,
        values: rows.into_iter().flatten().collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridMedian<T = f64> {
    pub point: Point<T>,
    pub row: usize,
    pub col: usize,
    /// Normalized point depth at the node.
    pub depth: T,
}

/// Grid node of largest normalized point depth among nodes in the population hull;
/// the first in row-major order wins ties (depths within 1e-12 count as equal).
pub fn median_point_grid<T: Scalar>(c: &[Polyline<T>], grid: &Grid<T>) -> Result<GridMedian<T>> {
    if c.is_empty() {
        return Err(DepthError::domain("median of an empty population"));
    }
    let all: Vec<Point<T>> = c.iter().flat_map(|p| p.vertices().iter().copied()).collect();
    let hull = convex_hull(&all)?;
    let field = depth_field(c, grid);
    let tie = T::incidence_eps();
    let mut best: Option<GridMedian<T>> = None;
    for row in 0..grid.ny {
        for col in 0..grid.nx {
            let p = grid.node(row, col);
            if !hull.contains(p) {
                continue;
            }
            let d = field.at(row, col);
            if best.is_none_or(|b| d > b.depth + tie) {
                best = Some(GridMedian {
                    point: p,
                    row,
                    col,
                    depth: d,
                });
            }
        }
    }
    best.ok_or_else(|| DepthError::domain("no grid node lies inside the population hull"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShearCase {
    pub depth_before: f64,
    pub depth_after: f64,
    pub delta: f64,
    pub order_before: Vec<usize>,
    pub order_after: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecreasingCase {
    pub median: Point,
    pub query: Point,
    pub depth_median: f64,
    pub depth_query: f64,
    /// `(α, D(m + α(Q − m)))` for α = 0.1, …, 0.9.
    pub path: Vec<(f64, f64)>,
    /// First α whose depth falls below `D(Q)`.
    pub violation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustnessCase {
    pub d: f64,
    pub median_before: Point,
    pub median_after: Point,
    pub displacement: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub shear: ShearCase,
    pub decreasing: DecreasingCase,
    pub robustness: Vec<RobustnessCase>,
}

fn horizontal(x0: f64, x1: f64, y: f64) -> Polyline {
    Polyline::from_xy(&[(x0, y), (x1, y)])
}

/// Three stacked unit-gap segments; the shear `x ↦ x + 2y` slides them apart.
pub fn shear_case(opts: &ExactOptions) -> Result<ShearCase> {
    let c: Vec<Polyline> = [-1.0, 0.0, 1.0].iter().map(|&y| horizontal(-1.0, 1.0, y)).collect();
    let sheared: Vec<Polyline> = c.iter().map(|p| p.map(|v| Point::new(v.x + 2.0 * v.y, v.y))).collect();
    let before = rank_curves(&c, false, opts)?;
    let after = rank_curves(&sheared, false, opts)?;
    let mid = |r: &RankResult| r.entries.iter().find(|e| e.index == 1).unwrap().depth;
    let (b, a) = (mid(&before), mid(&after));
    Ok(ShearCase {
        depth_before: b,
        depth_after: a,
        delta: (b - a).abs(),
        order_before: before.order(),
        order_after: after.order(),
    })
}

/// Two separated clusters of three segments. The straight path from the grid median
/// (in one cluster) to a deep point of the other crosses the empty gap.
pub fn decreasing_case() -> Result<DecreasingCase> {
    let mut c: Vec<Polyline> = [-1.0, 0.1, 1.0].iter().map(|&y| horizontal(-1.0, 1.0, y)).collect();
    c.extend([-1.0, 0.2, 1.1].iter().map(|&y| horizontal(9.0, 11.0, y)));
    let grid = Grid::new(BBox::new(-2.0, -2.0, 12.0, 2.0)?, 141, 41)?;
    let m = median_point_grid(&c, &grid)?;
    let q = Point::new(10.0, 0.65);
    let d = |p: Point| point_depth(p, &c, true);
    let dq = d(q);
    let path: Vec<(f64, f64)> = (1..=9)
        .map(|k| {
            let a = k as f64 / 10.0;
            (a, d(m.point.lerp(q, a)))
        })
        .collect();
    let violation = path.iter().find(|&&(_, v)| v < dq).map(|&(a, _)| a);
    Ok(DecreasingCase {
        median: m.point,
        query: q,
        depth_median: m.depth,
        depth_query: dq,
        path,
        violation,
    })
}

/// The eight edges of a regular octagon of circumradius 1, as separate curves.
pub fn octagon_edges() -> Vec<Polyline> {
    let v: Vec<Point> = (0..8)
        .map(|k| {
            let a = std::f64::consts::PI / 8.0 + k as f64 * std::f64::consts::PI / 4.0;
            Point::new(a.cos(), a.sin())
        })
        .collect();
    (0..8).map(|k| Polyline::new(vec![v[k], v[(k + 1) % 8]])).collect()
}

/// Replaces one octagon edge with a closed square loop of side 2 centred at `(d + 3, 0)`.
/// Inside the loop every direction meets it both ways, so the grid median jumps there.
pub fn robustness_case(d: f64) -> Result<RobustnessCase> {
    let base = octagon_edges();
    let (cx, half) = (d + 3.0, 1.0);
    let lp = Polyline::from_xy(&[
        (cx - half, -half),
        (cx + half, -half),
        (cx + half, half),
        (cx - half, half),
        (cx - half, -half),
    ]);
    let mut corrupted = base.clone();
    corrupted[4] = lp;
    let bbox = BBox::new(-2.0, -2.0, d + 5.0, 2.0)?;
    let nx = (2.0 * (d + 7.0)).ceil() as usize + 1;
    let grid = Grid::new(bbox, nx, 9)?;
    let before = median_point_grid(&base, &grid)?;
    let after = median_point_grid(&corrupted, &grid)?;
    Ok(RobustnessCase {
        d,
        median_before: before.point,
        median_after: after.point,
        displacement: before.point.distance(after.point),
    })
}

pub fn counterexample_suite() -> Result<CounterexampleReport> {
    let opts = ExactOptions::default();
    Ok(CounterexampleReport {
        shear: shear_case(&opts)?,
        decreasing: decreasing_case()?,
        robustness: vec![robustness_case(10.0)?, robustness_case(100.0)?],
    })
}
