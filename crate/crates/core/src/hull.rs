//! Convex hull hierarchy of a population relative to a query, and the common-tangent
//! line set whose crossings with the query mark where stabbing counts can change.

use serde::Serialize;

use crate::geom::{
    common_tangents, convex_hull, line_crossing_param, point_on_segment, ConvexHull, Point, Polyline, Segment,
    TangentLine,
};
use crate::scalar::Scalar;

/// Hulls of the pieces of one curve after cutting it with one query segment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InnerHulls<T = f64> {
    pub curve: usize,
    pub segment: usize,
    /// Subpaths of the curve between consecutive crossings, in curve order.
    pub components: Vec<Vec<Point<T>>>,
    pub hulls: Vec<ConvexHull<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullHierarchy<T = f64> {
    pub outer: Vec<ConvexHull<T>>,
    /// One entry per (curve, query segment), ordered by curve then segment.
    pub inner: Vec<InnerHulls<T>>,
    segment_count: usize,
}

impl<T: Scalar> HullHierarchy<T> {
    pub fn inner(&self, curve: usize, segment: usize) -> &InnerHulls<T> {
        &self.inner[curve * self.segment_count + segment]
    }

    pub fn segment_count(&self) -> usize {
        self.segment_count
    }
}

/// Parameters along `a → b` where the curve meets the closed query segment `s`,
/// together with the meeting points. Collinear overlaps are not cut.
fn curve_cuts<T: Scalar>(p: &Polyline<T>, s: &Segment<T>) -> Vec<(usize, T, Point<T>)> {
    let mut cuts = Vec::new();
    for (ei, w) in p.vertices().windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let Some(u) = line_crossing_param(s.a, s.b, a, b) else {
            continue;
        };
        let eps = T::incidence_eps();
        if u < -eps || u > T::one() + eps {
            continue;
        }
        let u = u.max(T::zero()).min(T::one());
        let x = a.lerp(b, u);
        if point_on_segment(x, s.a, s.b) {
            cuts.push((ei, u, x));
        }
    }
    cuts
}

/// Splits a curve at its crossings with `s`. Cuts at the curve's own endpoints and
/// repeated cuts at a shared vertex are dropped.
pub fn split_curve<T: Scalar>(p: &Polyline<T>, s: &Segment<T>) -> Vec<Vec<Point<T>>> {
    let v = p.vertices();
    if v.len() == 1 {
        return vec![v.to_vec()];
    }
    let cuts = curve_cuts(p, s);
    let mut out: Vec<Vec<Point<T>>> = Vec::new();
    let mut cur: Vec<Point<T>> = vec![v[0]];
    let mut ci = 0;
    for ei in 0..v.len() - 1 {
        while ci < cuts.len() && cuts[ci].0 == ei {
            let x = cuts[ci].2;
            ci += 1;
            let at_last = *cur.last().unwrap() == x;
            let at_curve_end = x == v[v.len() - 1] || x == v[0];
            if at_last || at_curve_end {
                continue;
            }
            cur.push(x);
            out.push(std::mem::replace(&mut cur, vec![x]));
        }
        let next = v[ei + 1];
        if *cur.last().unwrap() != next {
            cur.push(next);
        }
    }
    out.push(cur);
    out
}

pub fn build_hierarchy<T: Scalar>(curves: &[Polyline<T>], query: &Polyline<T>) -> HullHierarchy<T> {
    let outer: Vec<ConvexHull<T>> = curves
        .iter()
        .map(|c| convex_hull(c.vertices()).expect("polyline has at least one vertex"))
        .collect();
    let segs: Vec<Segment<T>> = query.segments().collect();
    let mut inner = Vec::with_capacity(curves.len() * segs.len());
    for (ci, c) in curves.iter().enumerate() {
        for (si, s) in segs.iter().enumerate() {
            let components = split_curve(c, s);
            let hulls = components
                .iter()
                .map(|comp| convex_hull(comp).expect("component has at least one vertex"))
                .collect();
            inner.push(InnerHulls {
                curve: ci,
                segment: si,
                components,
                hulls,
            });
        }
    }
    HullHierarchy {
        outer,
        inner,
        segment_count: segs.len(),
    }
}

/// A tangent line between the outer hulls of curves `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HullTangent<T = f64> {
    pub a: usize,
    pub b: usize,
    pub line: TangentLine<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentEventSet<T = f64> {
    pub lines: Vec<HullTangent<T>>,
    /// Per query segment, sorted parameters in `[0, 1]` where some line crosses it.
    pub s_points: Vec<Vec<T>>,
}

pub fn outer_tangents<T: Scalar>(outer: &[ConvexHull<T>]) -> Vec<HullTangent<T>> {
    let mut lines = Vec::new();
    for i in 0..outer.len() {
        for j in i + 1..outer.len() {
            for line in common_tangents(&outer[i], &outer[j]) {
                lines.push(HullTangent { a: i, b: j, line });
            }
        }
    }
    lines
}

/// Sorted crossing parameters of the lines `(p, r)` with `s`, merged within the event tolerance.
pub(crate) fn line_params<T: Scalar>(lines: impl Iterator<Item = (Point<T>, Point<T>)>, s: &Segment<T>) -> Vec<T> {
    let eps = T::event_eps();
    let mut ts: Vec<T> = lines
        .filter_map(|(p, r)| line_crossing_param(p, r, s.a, s.b))
        .filter(|&t| t >= -eps && t <= T::one() + eps)
        .map(|t| t.max(T::zero()).min(T::one()))
        .collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|b, a| *b - *a <= eps);
    ts
}

pub fn tangent_event_set<T: Scalar>(h: &HullHierarchy<T>, query: &Polyline<T>) -> TangentEventSet<T> {
    let lines = outer_tangents(&h.outer);
    let s_points = query
        .segments()
        .map(|s| line_params(lines.iter().map(|l| (l.line.p, l.line.r)), &s))
        .collect();
    TangentEventSet { lines, s_points }
}
