//! Direction sets, stabbing numbers and circular arrangements around a root point.
//!
//! The direction set of a curve from a root `q` is the set of angles whose rays meet
//! the curve. For a connected polyline that misses `q` it is a single closed arc (the
//! continuous image of a connected set on the circle) or the whole circle when the
//! curve winds around `q`. A curve passing through `q` sees every direction.
//!
//! The arrangement cuts the circle at every arc endpoint and at its antipode, so
//! cells pair up under `θ ↦ θ + π` and the per-direction minimum in the depth
//! integrand becomes a per-cell comparison.

use serde::Serialize;

use crate::error::Result;
use crate::geom::{angle_to, point_on_segment, ray_segment_intersects, Point, Polyline, Ray, Segment};
use crate::scalar::{normalize_angle, CompensatedSum, Scalar};

/// Closed counterclockwise arc `[start, start + width]`. `width == 2π` is the full circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngularArc<T = f64> {
    pub start: T,
    pub width: T,
}

impl<T: Scalar> AngularArc<T> {
    pub fn full() -> Self {
        Self {
            start: T::zero(),
            width: T::two_pi(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.width >= T::two_pi()
    }

    pub fn end(&self) -> T {
        normalize_angle(self.start + self.width)
    }

    pub fn contains(&self, theta: T) -> bool {
        self.is_full() || normalize_angle(theta - self.start) <= self.width
    }
}

/// An arc of a direction set together with the curve vertices that bound it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirectionArc<T = f64> {
    pub arc: AngularArc<T>,
    /// Exact polar angle of the end vertex (equals `arc.end()` up to rounding).
    pub end_angle: T,
    pub start_vertex: usize,
    pub end_vertex: usize,
}

/// Union of disjoint closed arcs of directions from a root, or the full circle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionSet<T = f64> {
    arcs: Vec<DirectionArc<T>>,
    full: bool,
}

impl<T: Scalar> DirectionSet<T> {
    pub fn full() -> Self {
        Self {
            arcs: Vec::new(),
            full: true,
        }
    }

    pub fn empty() -> Self {
        Self {
            arcs: Vec::new(),
            full: false,
        }
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn arcs(&self) -> &[DirectionArc<T>] {
        &self.arcs
    }

    pub fn contains(&self, theta: T) -> bool {
        self.full || self.arcs.iter().any(|a| a.arc.contains(theta))
    }

    pub fn total_width(&self) -> T {
        if self.full {
            T::two_pi()
        } else {
            self.arcs.iter().fold(T::zero(), |acc, a| acc + a.arc.width)
        }
    }

    /// Circular union of arbitrary arcs; arcs closer than the angular tolerance merge.
    pub fn union(mut arcs: Vec<DirectionArc<T>>) -> Self {
        let tau = T::two_pi();
        let eps = T::angle_eps();
        if arcs.iter().any(|a| a.arc.is_full()) {
            return Self::full();
        }
        if arcs.is_empty() {
            return Self::empty();
        }
        arcs.sort_by(|a, b| a.arc.start.partial_cmp(&b.arc.start).unwrap());
        // Linear sweep on the unrolled interval [s0, s0 + 2π).
        let mut merged: Vec<DirectionArc<T>> = Vec::new();
        for a in arcs {
            if let Some(last) = merged.last_mut() {
                let last_end = last.arc.start + last.arc.width;
                if a.arc.start <= last_end + eps {
                    let a_end = a.arc.start + a.arc.width;
                    if a_end > last_end {
                        last.arc.width = a_end - last.arc.start;
                        last.end_angle = a.end_angle;
                        last.end_vertex = a.end_vertex;
                    }
                    continue;
                }
            }
            merged.push(a);
        }
        // Close the circle: the last arc may wrap onto the first ones.
        loop {
            if merged.len() < 2 {
                break;
            }
            let first = merged[0];
            let last = *merged.last().unwrap();
            let last_end = last.arc.start + last.arc.width;
            if last_end + eps < first.arc.start + tau {
                break;
            }
            merged.pop();
            let first_end = first.arc.start + first.arc.width + tau;
            let m = &mut merged[0];
            m.arc.start = last.arc.start;
            m.start_vertex = last.start_vertex;
            if last_end > first_end {
                m.arc.width = last.arc.width;
                m.end_angle = last.end_angle;
                m.end_vertex = last.end_vertex;
            } else {
                m.arc.width = first_end - last.arc.start;
            }
        }
        if merged.len() == 1 && merged[0].arc.width >= tau - eps {
            return Self::full();
        }
        for m in &mut merged {
            m.arc.start = normalize_angle(m.arc.start);
        }
        merged.sort_by(|a, b| a.arc.start.partial_cmp(&b.arc.start).unwrap());
        Self {
            arcs: merged,
            full: false,
        }
    }
}

/// Directions from `q` that meet the closed segment.
pub fn segment_arc<T: Scalar>(q: Point<T>, s: &Segment<T>) -> AngularArc<T> {
    segment_direction_arc(q, s.a, s.b, 0, 1).arc
}

fn segment_direction_arc<T: Scalar>(q: Point<T>, a: Point<T>, b: Point<T>, ia: usize, ib: usize) -> DirectionArc<T> {
    if point_on_segment(q, a, b) {
        return DirectionArc {
            arc: AngularArc::full(),
            end_angle: T::zero(),
            start_vertex: ia,
            end_vertex: ia,
        };
    }
    let da = a.sub(q);
    let db = b.sub(q);
    let turn = da.cross(db);
    let (s, e, is, ie) = if turn > T::zero() {
        (a, b, ia, ib)
    } else if turn < T::zero() {
        (b, a, ib, ia)
    } else {
        // Collinear with q but not containing it: only the nearer endpoint's direction.
        let (n, i) = if da.norm() <= db.norm() { (a, ia) } else { (b, ib) };
        let ang = angle_to(q, n).unwrap();
        return DirectionArc {
            arc: AngularArc {
                start: ang,
                width: T::zero(),
            },
            end_angle: ang,
            start_vertex: i,
            end_vertex: i,
        };
    };
    let start = angle_to(q, s).unwrap();
    let end = angle_to(q, e).unwrap();
    let width = turn.abs().atan2(da.dot(db));
    DirectionArc {
        arc: AngularArc { start, width },
        end_angle: end,
        start_vertex: is,
        end_vertex: ie,
    }
}

/// Union of the segment arcs of every edge, computed arc by arc.
pub fn segment_arc_union<T: Scalar>(q: Point<T>, p: &Polyline<T>) -> DirectionSet<T> {
    let v = p.vertices();
    if v.len() == 1 {
        return curve_direction_set(q, p);
    }
    DirectionSet::union(
        v.windows(2)
            .enumerate()
            .map(|(i, w)| segment_direction_arc(q, w[0], w[1], i, i + 1))
            .collect(),
    )
}

/// Directions from `q` whose rays meet `p`.
///
/// Tracks the continuous (lifted) polar angle along the polyline; the set is the
/// arc between the lowest and highest lifted angle, or the full circle once that
/// span reaches `2π` or the curve passes through `q`.
pub fn curve_direction_set<T: Scalar>(q: Point<T>, p: &Polyline<T>) -> DirectionSet<T> {
    let v = p.vertices();
    if v.len() == 1 {
        if v[0] == q {
            return DirectionSet::full();
        }
        let ang = angle_to(q, v[0]).unwrap();
        return DirectionSet {
            arcs: vec![DirectionArc {
                arc: AngularArc {
                    start: ang,
                    width: T::zero(),
                },
                end_angle: ang,
                start_vertex: 0,
                end_vertex: 0,
            }],
            full: false,
        };
    }
    if v.windows(2).any(|w| point_on_segment(q, w[0], w[1])) {
        return DirectionSet::full();
    }
    let mut prev = v[0].sub(q);
    let mut lifted = prev.y.atan2(prev.x);
    let (mut lo, mut hi) = (lifted, lifted);
    let (mut ilo, mut ihi) = (0usize, 0usize);
    for (i, &w) in v.iter().enumerate().skip(1) {
        let d = w.sub(q);
        lifted = lifted + prev.cross(d).atan2(prev.dot(d));
        if lifted < lo {
            lo = lifted;
            ilo = i;
        }
        if lifted > hi {
            hi = lifted;
            ihi = i;
        }
        prev = d;
    }
    let width = hi - lo;
    if width >= T::two_pi() - T::angle_eps() {
        return DirectionSet::full();
    }
    DirectionSet {
        arcs: vec![DirectionArc {
            arc: AngularArc {
                start: angle_to(q, v[ilo]).unwrap(),
                width,
            },
            end_angle: angle_to(q, v[ihi]).unwrap(),
            start_vertex: ilo,
            end_vertex: ihi,
        }],
        full: false,
    }
}

/// Number of curves met by the closed ray, each curve counted once.
pub fn stab_count<T: Scalar>(r: &Ray<T>, curves: &[Polyline<T>]) -> usize {
    curves.iter().filter(|c| ray_meets_curve(r, c)).count()
}

pub(crate) fn ray_meets_curve<T: Scalar>(r: &Ray<T>, c: &Polyline<T>) -> bool {
    let v = c.vertices();
    if v.len() == 1 {
        let seg_degenerate = v[0].sub(r.root);
        if seg_degenerate.norm() == T::zero() {
            return true;
        }
        let d = r.direction();
        return d.cross(seg_degenerate).abs() <= T::incidence_eps() * seg_degenerate.norm()
            && d.dot(seg_degenerate) >= T::zero();
    }
    c.segments().any(|s| ray_segment_intersects(r, &s))
}

/// Which population vertex defines a boundary ray (possibly through its antipode).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoundaryRef {
    pub curve: usize,
    pub vertex: usize,
    pub antipodal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Boundary<T = f64> {
    pub angle: T,
    pub source: BoundaryRef,
    /// Coordinates of the defining vertex, in the same frame as the root.
    pub point: Point<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cell<T = f64> {
    pub start: T,
    pub width: T,
    pub stab: usize,
    /// Index of the cell containing this cell's directions rotated by π.
    pub antipode: usize,
    /// `stab <= stab(antipode)`.
    pub min_indicator: bool,
}

/// Sorted decomposition of the circle of directions around a root.
///
/// Cell `i` runs counterclockwise from `boundaries[i]` to `boundaries[i + 1]`
/// (wrapping); with no boundaries there is one full-circle cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircularArrangement<T = f64> {
    pub root: Point<T>,
    boundaries: Vec<Boundary<T>>,
    cells: Vec<Cell<T>>,
}

impl<T: Scalar> CircularArrangement<T> {
    pub fn boundaries(&self) -> &[Boundary<T>] {
        &self.boundaries
    }

    pub fn cells(&self) -> &[Cell<T>] {
        &self.cells
    }

    /// Lower and upper boundary of cell `i`; `None` for the boundary-free full circle.
    pub fn cell_bounds(&self, i: usize) -> Option<(&Boundary<T>, &Boundary<T>)> {
        let n = self.boundaries.len();
        if n == 0 {
            None
        } else {
            Some((&self.boundaries[i], &self.boundaries[(i + 1) % n]))
        }
    }

    /// Share of cell `i` in the depth sum: among each antipodal pair exactly one cell
    /// carrying the minimum is selected (the lower index on ties); a self-paired cell
    /// counts half since its directions cover both θ and θ + π.
    pub fn selection_weight(&self, i: usize) -> T {
        let c = &self.cells[i];
        if c.antipode == i {
            return T::lit(0.5);
        }
        let o = &self.cells[c.antipode];
        let chosen = c.stab < o.stab || (c.stab == o.stab && i < c.antipode);
        if chosen {
            T::one()
        } else {
            T::zero()
        }
    }

    /// `∫₀^π min(stab(θ), stab(θ + π)) dθ` from the cells.
    pub fn raw_depth(&self) -> T {
        let mut s = CompensatedSum::new();
        for (i, c) in self.cells.iter().enumerate() {
            if c.stab == 0 {
                continue;
            }
            let w = self.selection_weight(i);
            if w > T::zero() {
                s.add(w * T::from_usize(c.stab).unwrap() * c.width);
            }
        }
        s.value()
    }

    /// Index of the cell containing direction `theta`.
    pub fn locate(&self, theta: T) -> usize {
        let n = self.boundaries.len();
        if n == 0 {
            return 0;
        }
        let t = normalize_angle(theta);
        // Last boundary with angle <= t; before the first boundary means the wrapping cell.
        match self.boundaries.partition_point(|b| b.angle <= t) {
            0 => n - 1,
            k => k - 1,
        }
    }
}

/// Direction sets of every curve seen from `q`.
pub fn direction_sets<T: Scalar>(q: Point<T>, curves: &[Polyline<T>]) -> Vec<DirectionSet<T>> {
    curves.iter().map(|c| curve_direction_set(q, c)).collect()
}

pub fn build_arrangement<T: Scalar>(q: Point<T>, curves: &[Polyline<T>]) -> CircularArrangement<T> {
    let sets = direction_sets(q, curves);
    arrangement_from_sets(q, curves, &sets)
}

pub(crate) fn arrangement_from_sets<T: Scalar>(
    q: Point<T>,
    curves: &[Polyline<T>],
    sets: &[DirectionSet<T>],
) -> CircularArrangement<T> {
    let pi = T::PI();
    let tau = T::two_pi();
    let eps = T::angle_eps();

    let mut raw: Vec<Boundary<T>> = Vec::new();
    for (ci, set) in sets.iter().enumerate() {
        for a in set.arcs() {
            let v = curves[ci].vertices();
            for (vi, ang) in [(a.start_vertex, a.arc.start), (a.end_vertex, a.end_angle)] {
                for antipodal in [false, true] {
                    let angle = if antipodal { normalize_angle(ang + pi) } else { ang };
                    raw.push(Boundary {
                        angle,
                        source: BoundaryRef {
                            curve: ci,
                            vertex: vi,
                            antipodal,
                        },
                        point: v[vi],
                    });
                }
            }
        }
    }
    raw.sort_by(|a, b| a.angle.partial_cmp(&b.angle).unwrap().then(a.source.cmp(&b.source)));

    // Merge clusters of (nearly) coincident rays, keeping the smallest source as representative.
    let mut boundaries: Vec<Boundary<T>> = Vec::new();
    let mut cluster_tail = T::neg_infinity();
    for b in raw {
        if let Some(last) = boundaries.last_mut() {
            if b.angle - cluster_tail <= eps {
                cluster_tail = b.angle;
                if b.source < last.source {
                    *last = b;
                }
                continue;
            }
        }
        cluster_tail = b.angle;
        boundaries.push(b);
    }
    if boundaries.len() > 1 {
        let first = boundaries[0];
        let last = *boundaries.last().unwrap();
        if first.angle + tau - cluster_tail <= eps {
            boundaries.pop();
            if last.source < first.source {
                boundaries[0] = Boundary {
                    angle: first.angle,
                    ..last
                };
            }
        }
    }

    let n = boundaries.len();
    let mut cells: Vec<Cell<T>> = if n == 0 {
        vec![Cell {
            start: T::zero(),
            width: tau,
            stab: 0,
            antipode: 0,
            min_indicator: true,
        }]
    } else {
        (0..n)
            .map(|i| {
                let start = boundaries[i].angle;
                let width = if i + 1 < n {
                    boundaries[i + 1].angle - start
                } else {
                    boundaries[0].angle + tau - start
                };
                Cell {
                    start,
                    width,
                    stab: 0,
                    antipode: i,
                    min_indicator: true,
                }
            })
            .collect()
    };

    for c in cells.iter_mut() {
        let mid = c.start + c.width / (T::one() + T::one());
        c.stab = sets.iter().filter(|s| s.contains(mid)).count();
    }
    let arr = CircularArrangement {
        root: q,
        boundaries,
        cells: cells.clone(),
    };
    for (i, c) in cells.iter_mut().enumerate() {
        let mid = c.start + c.width / (T::one() + T::one());
        c.antipode = if n == 0 { 0 } else { arr.locate(mid + pi) };
        let _ = i;
    }
    let stabs: Vec<usize> = cells.iter().map(|c| c.stab).collect();
    for c in cells.iter_mut() {
        c.min_indicator = c.stab <= stabs[c.antipode];
    }
    CircularArrangement {
        root: q,
        boundaries: arr.boundaries,
        cells,
    }
}

/// `∫₀^π min(stab(q_θ), stab(q_{θ+π})) dθ`, without the `1/π` factor.
pub fn point_depth_raw<T: Scalar>(q: Point<T>, curves: &[Polyline<T>]) -> T {
    build_arrangement(q, curves).raw_depth()
}

/// Point depth `raw / π`, further divided by the population size when `normalized`.
pub fn point_depth<T: Scalar>(q: Point<T>, curves: &[Polyline<T>], normalized: bool) -> T {
    let d = point_depth_raw(q, curves) / T::PI();
    if normalized {
        if curves.is_empty() {
            T::zero()
        } else {
            d / T::from_usize(curves.len()).unwrap()
        }
    } else {
        d
    }
}

/// Checked variant of [`point_depth`] for untrusted roots.
pub fn try_point_depth<T: Scalar>(q: Point<T>, curves: &[Polyline<T>], normalized: bool) -> Result<T> {
    Point::try_new(q.x, q.y)?;
    Ok(point_depth(q, curves, normalized))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn plates() -> Vec<Polyline> {
        vec![
            Polyline::from_xy(&[(-1., 1.), (1., 1.)]),
            Polyline::from_xy(&[(-1., -1.), (1., -1.)]),
        ]
    }

    fn brute_raw(q: Point, c: &[Polyline], k: usize) -> f64 {
        (0..k)
            .map(|j| {
                let th = (j as f64 + 0.5) * PI / k as f64;
                let a = stab_count(&Ray::new(q, th), c);
                let b = stab_count(&Ray::new(q, th + PI), c);
                a.min(b) as f64
            })
            .sum::<f64>()
            * PI
            / k as f64
    }

    #[test]
    fn segment_arc_examples() {
        let a = segment_arc(p(0.5, 0.), &Segment::new(p(0., 1.), p(1., 1.)));
        assert_abs_diff_eq!(a.start, 1.0_f64.atan2(0.5), epsilon = 1e-14);
        assert_abs_diff_eq!(a.end(), 1.0_f64.atan2(-0.5), epsilon = 1e-14);
        assert_abs_diff_eq!(a.width, 2.0 * 0.5_f64.atan(), epsilon = 1e-14);
        assert_abs_diff_eq!(a.width, 0.92730, epsilon = 1e-5);

        let s = Segment::new(p(-1., 1.), p(1., 1.));
        assert!(segment_arc(p(0., 1.), &s).is_full());
        let z = segment_arc(p(2., 1.), &s);
        assert_eq!(z.width, 0.0);
        assert_abs_diff_eq!(z.start, PI, epsilon = 1e-15);
    }

    #[test]
    fn direction_set_examples() {
        let one = curve_direction_set(p(0., 0.), &Polyline::from_xy(&[(-1., 1.), (1., 1.)]));
        assert_eq!(one.arcs().len(), 1);
        assert_abs_diff_eq!(one.arcs()[0].arc.start, PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(one.arcs()[0].arc.end(), 0.75 * PI, epsilon = 1e-15);

        let v = Polyline::from_xy(&[(-1., 1.), (0., -1.), (1., 1.)]);
        let set = curve_direction_set(p(0., 0.), &v);
        assert!(!set.contains(PI / 2.0));
        assert!(set.contains(1.5 * PI));
        // Brute-force ray casting at 10^4 angles agrees with membership.
        for j in 0..10_000 {
            let th = (j as f64 + 0.37) * 2.0 * PI / 10_000.0;
            let hit = stab_count(&Ray::new(p(0., 0.), th), std::slice::from_ref(&v)) == 1;
            assert_eq!(hit, set.contains(th), "theta = {th}");
        }

        let square = Polyline::from_xy(&[(-1., -1.), (1., -1.), (1., 1.), (-1., 1.), (-1., -1.)]);
        assert!(curve_direction_set(p(0.2, 0.1), &square).is_full());
        // Open square (three sides) does not surround the root.
        let u = Polyline::from_xy(&[(-1., 1.), (-1., -1.), (1., -1.), (1., 1.)]);
        let set = curve_direction_set(p(0., 0.), &u);
        assert!(!set.is_full());
        assert_abs_diff_eq!(set.total_width(), 1.5 * PI, epsilon = 1e-14);
    }

    #[test]
    fn lifted_and_union_routes_agree() {
        let curves = [
            Polyline::from_xy(&[(-1., 1.), (0., -1.), (1., 1.)]),
            Polyline::from_xy(&[(2., 0.), (3., 1.), (2., 2.), (4., 3.), (1., 2.5)]),
            Polyline::from_xy(&[(-3., -3.), (3., -3.), (3., 3.), (-3., 3.), (-3., -2.)]),
        ];
        for q in [p(0., 0.), p(2.5, 1.0), p(-2., 2.), p(0.3, -0.2)] {
            for c in &curves {
                let a = curve_direction_set(q, c);
                let b = segment_arc_union(q, c);
                assert_eq!(a.is_full(), b.is_full(), "q = {q:?}");
                assert_abs_diff_eq!(a.total_width(), b.total_width(), epsilon = 1e-12);
                for j in 0..720 {
                    let th = (j as f64 + 0.5) * PI / 360.0;
                    assert_eq!(a.contains(th), b.contains(th));
                }
            }
        }
    }

    #[test]
    fn stab_count_examples() {
        let q = p(0., 0.);
        assert_eq!(stab_count(&Ray::new(q, PI / 2.0), &plates()), 1);
        let c = vec![
            Polyline::from_xy(&[(-1., 1.), (1., 1.)]),
            Polyline::from_xy(&[(-1., 2.), (0.5, 2.)]),
        ];
        assert_eq!(stab_count(&Ray::new(q, PI / 2.0), &c), 2);
        assert_eq!(stab_count::<f64>(&Ray::new(q, 1.0), &[]), 0);
        // A curve met by two of its edges still counts once.
        let zig = vec![Polyline::from_xy(&[(-1., 1.), (0., 2.), (1., 1.), (0., 3.)])];
        assert_eq!(stab_count(&Ray::new(q, PI / 2.0), &zig), 1);
    }

    #[test]
    fn plates_arrangement() {
        let arr = build_arrangement(p(0., 0.), &plates());
        // π/4, 3π/4, 5π/4, 7π/4: antipodes coincide with the other plate's endpoints.
        assert_eq!(arr.boundaries().len(), 4);
        let expect = [PI / 4.0, 0.75 * PI, 1.25 * PI, 1.75 * PI];
        for (b, e) in arr.boundaries().iter().zip(expect) {
            assert_abs_diff_eq!(b.angle, e, epsilon = 1e-14);
        }
        let stabs: Vec<usize> = arr.cells().iter().map(|c| c.stab).collect();
        assert_eq!(stabs, vec![1, 0, 1, 0]);
        for (i, c) in arr.cells().iter().enumerate() {
            assert_eq!(c.antipode, (i + 2) % 4);
        }
        let total: f64 = arr.cells().iter().map(|c| c.width).sum();
        assert_abs_diff_eq!(total, 2.0 * PI, epsilon = 1e-14);

        let empty = build_arrangement::<f64>(p(0., 0.), &[]);
        assert_eq!(empty.cells().len(), 1);
        assert_eq!(empty.cells()[0].stab, 0);
        assert_abs_diff_eq!(empty.cells()[0].width, 2.0 * PI);
    }

    #[test]
    fn boundary_count_bounded_for_one_sided_curves() {
        let curves: Vec<Polyline> = (0..5)
            .map(|i| {
                let x = i as f64 * 3.0;
                Polyline::from_xy(&[(x, 1.0 + i as f64), (x + 1.0, 2.0 + i as f64), (x + 2.0, 1.5)])
            })
            .collect();
        let arr = build_arrangement(p(0.0, -1.0), &curves);
        assert!(arr.boundaries().len() <= 4 * curves.len());
        assert_eq!(arr.boundaries().len() % 2, 0);
    }

    #[test]
    fn point_depth_examples() {
        assert_abs_diff_eq!(point_depth_raw(p(0., 0.), &plates()), PI / 2.0, epsilon = 1e-14);
        assert_eq!(point_depth_raw(p(1.5, 0.), &plates()), 0.0);
        let expect = PI - 2.0 * 2.0_f64.atan();
        assert_abs_diff_eq!(point_depth_raw(p(0.5, 0.), &plates()), expect, epsilon = 1e-14);
        assert_abs_diff_eq!(expect, 0.92730, epsilon = 1e-5);
        assert_abs_diff_eq!(
            brute_raw(p(0.5, 0.), &plates(), 100_000),
            expect,
            epsilon = 2.0 * PI * 2.0 / 100_000.0
        );

        assert_abs_diff_eq!(point_depth(p(0., 0.), &plates(), false), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(point_depth(p(0., 0.), &plates(), true), 0.25, epsilon = 1e-15);
        assert_eq!(point_depth(p(5., 5.), &plates(), true), 0.0);
        let single = vec![Polyline::from_xy(&[(-1., 0.), (1., 0.)])];
        assert_abs_diff_eq!(point_depth(p(0.25, 0.), &single, false), 1.0, epsilon = 1e-15);
        assert_eq!(point_depth::<f64>(p(0., 0.), &[], true), 0.0);
    }

    #[test]
    fn point_curves_and_f32() {
        let c = vec![Polyline::from_xy(&[(0., 1.)]), Polyline::from_xy(&[(0., -1.)])];
        // Zero-width arcs carry no measure.
        assert_eq!(point_depth_raw(p(0., 0.), &c), 0.0);
        let plates32: Vec<Polyline<f32>> = plates().iter().map(|c| c.cast()).collect();
        let d = point_depth(Point::new(0.0_f32, 0.0), &plates32, false);
        assert!((d - 0.5).abs() < 1e-6);
    }
}
