//! Planar primitives: points, segments, polylines, rays, convex hulls,
//! common tangents and the per-segment frame used for integration.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::scalar::{normalize_angle, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    /// Panics on non-finite coordinates; use [`Point::try_new`] for untrusted input.
    pub fn new(x: T, y: T) -> Self {
        assert!(x.is_finite() && y.is_finite(), "point coordinates must be finite");
        Self { x, y }
    }

    pub fn try_new(x: T, y: T) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(DepthError::domain(format!("non-finite point ({x}, {y})")))
        }
    }

    pub fn origin() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
        }
    }

    #[inline]
    pub fn sub(self, o: Self) -> Self {
        Self {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }

    #[inline]
    pub fn add(self, o: Self) -> Self {
        Self {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Self {
            x: self.x * s,
            y: self.y * s,
        }
    }

    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, o: Self) -> T {
        self.sub(o).norm()
    }

    /// Linear interpolation `self + t (o - self)`.
    #[inline]
    pub fn lerp(self, o: Self, t: T) -> Self {
        Self {
            x: self.x + (o.x - self.x) * t,
            y: self.y + (o.y - self.y) * t,
        }
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point {
            x: U::from_f64(self.x.to_f64().unwrap()).unwrap(),
            y: U::from_f64(self.y.to_f64().unwrap()).unwrap(),
        }
    }

    /// Lexicographic (x, then y) comparison; total for finite coordinates.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap_or(Ordering::Equal)
            .then(self.y.partial_cmp(&o.y).unwrap_or(Ordering::Equal))
    }
}

/// Sign of `(b - a) × (c - a)`: `+1` counterclockwise, `-1` clockwise, `0` collinear.
pub fn orientation<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> i8 {
    let v = b.sub(a).cross(c.sub(a));
    if v > T::zero() {
        1
    } else if v < T::zero() {
        -1
    } else {
        0
    }
}

/// Polar angle of `p - q` in `[0, 2π)`.
pub fn angle_to<T: Scalar>(q: Point<T>, p: Point<T>) -> Result<T> {
    if p == q {
        return Err(DepthError::domain("angle between coincident points"));
    }
    let d = p.sub(q);
    Ok(normalize_angle(d.y.atan2(d.x)))
}

/// `true` when `q` lies on the closed segment `ab`, up to the incidence tolerance.
pub fn point_on_segment<T: Scalar>(q: Point<T>, a: Point<T>, b: Point<T>) -> bool {
    let ab = b.sub(a);
    let aq = q.sub(a);
    let len = ab.norm();
    if len == T::zero() {
        return aq.norm() == T::zero();
    }
    let eps = T::incidence_eps();
    // Distance from the supporting line, relative to the segment scale.
    if ab.cross(aq).abs() > eps * len * len.max(aq.norm()) {
        return false;
    }
    let t = ab.dot(aq) / (len * len);
    t >= -eps && t <= T::one() + eps
}

/// Parameter `t` along `a → b` at which the line through `p` and `r` crosses the
/// supporting line of `ab`, or `None` when they are parallel.
pub fn line_crossing_param<T: Scalar>(p: Point<T>, r: Point<T>, a: Point<T>, b: Point<T>) -> Option<T> {
    let d = b.sub(a);
    let e = r.sub(p);
    let denom = d.cross(e);
    if denom.abs() <= T::incidence_eps() * d.norm() * e.norm() {
        return None;
    }
    Some(p.sub(a).cross(e) / denom)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment<T = f64> {
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn try_new(a: Point<T>, b: Point<T>) -> Result<Self> {
        if a == b {
            return Err(DepthError::domain("degenerate segment with coincident endpoints"));
        }
        Ok(Self { a, b })
    }

    pub fn new(a: Point<T>, b: Point<T>) -> Self {
        Self::try_new(a, b).expect("segment endpoints must differ")
    }

    pub fn length(&self) -> T {
        self.a.distance(self.b)
    }

    pub fn point_at(&self, t: T) -> Point<T> {
        self.a.lerp(self.b, t)
    }

    pub fn contains(&self, q: Point<T>) -> bool {
        point_on_segment(q, self.a, self.b)
    }
}

/// Ordered vertex list with distinct consecutive vertices. A single vertex is a point curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline<T = f64> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn try_new(vertices: Vec<Point<T>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(DepthError::domain("polyline needs at least one vertex"));
        }
        if let Some(p) = vertices.iter().find(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(DepthError::domain(format!("non-finite vertex ({}, {})", p.x, p.y)));
        }
        if let Some(i) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(DepthError::domain(format!(
                "consecutive vertices {i} and {} coincide",
                i + 1
            )));
        }
        Ok(Self { vertices })
    }

    pub fn new(vertices: Vec<Point<T>>) -> Self {
        Self::try_new(vertices).expect("invalid polyline")
    }

    /// Builds a polyline after collapsing runs of repeated points; returns how many were dropped.
    pub fn collapsing(mut vertices: Vec<Point<T>>) -> Result<(Self, usize)> {
        let before = vertices.len();
        vertices.dedup();
        let removed = before - vertices.len();
        Ok((Self::try_new(vertices)?, removed))
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment<T>> + '_ {
        self.vertices.windows(2).map(|w| Segment { a: w[0], b: w[1] })
    }

    pub fn arc_length(&self) -> T {
        arc_length(self)
    }

    /// Applies `f` to every vertex.
    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
        }
    }

    pub fn cast<U: Scalar>(&self) -> Polyline<U> {
        Polyline {
            vertices: self.vertices.iter().map(|p| p.cast()).collect(),
        }
    }
}

impl Polyline<f64> {
    /// Convenience constructor from coordinate pairs; panics on invalid input.
    pub fn from_xy(coords: &[(f64, f64)]) -> Self {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }
}

pub fn arc_length<T: Scalar>(p: &Polyline<T>) -> T {
    p.segments().fold(T::zero(), |acc, s| acc + s.length())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ray<T = f64> {
    pub root: Point<T>,
    angle: T,
}

impl<T: Scalar> Ray<T> {
    pub fn new(root: Point<T>, angle: T) -> Self {
        Self {
            root,
            angle: normalize_angle(angle),
        }
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn direction(&self) -> Point<T> {
        Point {
            x: self.angle.cos(),
            y: self.angle.sin(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.root, self.angle + T::PI())
    }
}

/// Closed ray (root included) against closed segment; touching endpoints count.
pub fn ray_segment_intersects<T: Scalar>(r: &Ray<T>, s: &Segment<T>) -> bool {
    ray_hits(r.direction(), s.a.sub(r.root), s.b.sub(r.root))
}

/// Ray test on root-relative endpoints `a`, `b` and unit direction `d`.
#[inline]
pub(crate) fn ray_hits<T: Scalar>(d: Point<T>, a: Point<T>, b: Point<T>) -> bool {
    let eps = T::incidence_eps();
    let ab = b.sub(a);
    let scale = a.norm().max(b.norm());
    if scale == T::zero() {
        return true;
    }
    let oa = d.cross(a);
    let ob = d.cross(b);
    let tol = eps * scale;
    if (oa > tol && ob > tol) || (oa < -tol && ob < -tol) {
        return false;
    }
    let denom = d.cross(ab);
    if denom.abs() <= eps * ab.norm() {
        // Parallel: hit only if collinear and some endpoint lies ahead of the root.
        if oa.abs() > tol {
            return false;
        }
        return d.dot(a) >= -tol || d.dot(b) >= -tol;
    }
    // Distance along the ray to the supporting line of the segment.
    let t = a.cross(ab) / denom;
    t >= -tol
}

/// Counterclockwise convex hull; 1 or 2 vertices for degenerate inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexHull<T = f64> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> ConvexHull<T> {
    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Closed membership test with the incidence tolerance applied to edges.
    pub fn contains(&self, q: Point<T>) -> bool {
        match self.vertices.len() {
            1 => q.distance(self.vertices[0]) <= T::incidence_eps() * T::one().max(q.norm()),
            2 => point_on_segment(q, self.vertices[0], self.vertices[1]),
            n => (0..n).all(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                let ab = b.sub(a);
                let aq = q.sub(a);
                ab.cross(aq) >= -T::incidence_eps() * ab.norm() * ab.norm().max(aq.norm())
            }),
        }
    }

    /// `true` iff the closed hull meets the closed segment `ab`.
    pub fn intersects_segment(&self, a: Point<T>, b: Point<T>) -> bool {
        if self.contains(a) || self.contains(b) {
            return true;
        }
        let n = self.vertices.len();
        if n == 1 {
            return point_on_segment(self.vertices[0], a, b);
        }
        let edges = if n == 2 { 1 } else { n };
        (0..edges).any(|i| segments_intersect(self.vertices[i], self.vertices[(i + 1) % n], a, b))
    }
}

/// Closed segment–segment intersection test.
pub fn segments_intersect<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>, d: Point<T>) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    point_on_segment(c, a, b) || point_on_segment(d, a, b) || point_on_segment(a, c, d) || point_on_segment(b, c, d)
}

/// Andrew's monotone chain. Collinear points on the boundary are dropped.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Result<ConvexHull<T>> {
    if points.is_empty() {
        return Err(DepthError::domain("convex hull of an empty point set"));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(ConvexHull { vertices: pts });
    }
    let mut lower: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All points collinear: keep the two extremes.
        lower = vec![pts[0], pts[pts.len() - 1]];
    }
    Ok(ConvexHull { vertices: lower })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangentKind {
    /// Both hulls on the same side of the line.
    Outer,
    /// Hulls on opposite sides (separating line).
    Inner,
}

/// A line touching one vertex of each of two hulls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentLine<T = f64> {
    /// Touching point on the first hull.
    pub p: Point<T>,
    /// Touching point on the second hull.
    pub r: Point<T>,
    pub kind: TangentKind,
}

/// Side of every vertex of `hull` relative to the directed line `p → r`, skipping `skip`.
/// Vertices on the line are ignored; returns `None` when vertices lie strictly on both sides.
fn strict_side<T: Scalar>(hull: &[Point<T>], p: Point<T>, r: Point<T>, skip: Point<T>) -> Option<i8> {
    let mut side = 0i8;
    let dir = r.sub(p);
    let len = dir.norm();
    for &v in hull.iter().filter(|&&v| v != skip) {
        let c = dir.cross(v.sub(p));
        let tol = T::incidence_eps() * len * len.max(v.sub(p).norm());
        let s = if c > tol {
            1
        } else if c < -tol {
            -1
        } else {
            continue;
        };
        if side == 0 {
            side = s;
        } else if side != s {
            return None;
        }
    }
    Some(side)
}

fn on_line<T: Scalar>(a: Point<T>, b: Point<T>, v: Point<T>) -> bool {
    let d = b.sub(a);
    let len = d.norm();
    d.cross(v.sub(a)).abs() <= T::incidence_eps() * len * len.max(v.sub(a).norm())
}

/// All lines through a vertex of `a` and a vertex of `b` leaving each hull on one
/// side. Brute force over vertex pairs; collinear duplicates (a line supporting an
/// edge of either hull through several vertex pairs) are reported once.
///
/// Disjoint hulls yield four lines (two outer, two inner); hulls with crossing boundaries
/// yield at most the two outer ones; nested hulls yield none.
pub fn common_tangents<T: Scalar>(a: &ConvexHull<T>, b: &ConvexHull<T>) -> Vec<TangentLine<T>> {
    let mut out = Vec::new();
    for &p in a.vertices() {
        for &r in b.vertices() {
            if p == r {
                continue;
            }
            let (Some(sa), Some(sb)) = (strict_side(a.vertices(), p, r, p), strict_side(b.vertices(), p, r, r)) else {
                continue;
            };
            if out
                .iter()
                .any(|t: &TangentLine<T>| on_line(t.p, t.r, p) && on_line(t.p, t.r, r))
            {
                continue;
            }
            let kind = if sa == 0 || sb == 0 || sa == sb {
                TangentKind::Outer
            } else {
                TangentKind::Inner
            };
            out.push(TangentLine { p, r, kind });
        }
    }
    out
}

/// Rigid frame sending a segment's start to the origin and its direction to +x.
///
/// `apply(p) = R p + t` with `R = [[ux, uy], [-uy, ux]]` and `t = -R a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineFrame<T = f64> {
    /// Unit direction `(ux, uy)` of the source segment.
    pub ux: T,
    pub uy: T,
    pub tx: T,
    pub ty: T,
}

impl<T: Scalar> AffineFrame<T> {
    pub fn apply(&self, p: Point<T>) -> Point<T> {
        Point {
            x: self.ux * p.x + self.uy * p.y + self.tx,
            y: -self.uy * p.x + self.ux * p.y + self.ty,
        }
    }

    pub fn invert(&self, p: Point<T>) -> Point<T> {
        let x = p.x - self.tx;
        let y = p.y - self.ty;
        Point {
            x: self.ux * x - self.uy * y,
            y: self.uy * x + self.ux * y,
        }
    }
}

pub fn to_frame<T: Scalar>(seg: &Segment<T>) -> AffineFrame<T> {
    let d = seg.b.sub(seg.a);
    let len = d.norm();
    let (ux, uy) = (d.x / len, d.y / len);
    let a = seg.a;
    AffineFrame {
        ux,
        uy,
        tx: -(ux * a.x + uy * a.y),
        ty: -(-uy * a.x + ux * a.y),
    }
}

pub fn apply_frame<T: Scalar>(f: &AffineFrame<T>, p: Point<T>) -> Point<T> {
    f.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(0., 1.)), 1);
        assert_eq!(orientation(p(0., 0.), p(1., 1.), p(2., 2.)), 0);
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(1., -1.)), -1);
    }

    #[test]
    fn angles() {
        assert_abs_diff_eq!(angle_to(p(0., 0.), p(0., 1.)).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            angle_to(p(0.5, 0.), p(1., 1.)).unwrap(),
            1.0_f64.atan2(0.5),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(angle_to(p(0.5, 0.), p(1., 1.)).unwrap(), 1.10715, epsilon = 1e-5);
        assert_abs_diff_eq!(angle_to(p(0., 0.), p(-1., -1.)).unwrap(), 1.25 * PI, epsilon = 1e-15);
        assert!(matches!(angle_to(p(1., 1.), p(1., 1.)), Err(DepthError::Domain(_))));
    }

    #[test]
    fn lengths() {
        assert_eq!(Polyline::<f64>::from_xy(&[(0., 0.), (3., 4.)]).arc_length(), 5.0);
        assert_eq!(Polyline::<f64>::from_xy(&[(0., 0.)]).arc_length(), 0.0);
        assert_eq!(
            Polyline::<f64>::from_xy(&[(0., 0.), (1., 0.), (1., 1.)]).arc_length(),
            2.0
        );
    }

    #[test]
    fn polyline_validation() {
        assert!(Polyline::<f64>::try_new(vec![]).is_err());
        assert!(Polyline::try_new(vec![p(0., 0.), p(0., 0.)]).is_err());
        assert!(Polyline::try_new(vec![p(0., 0.), Point { x: f64::NAN, y: 0. }]).is_err());
        let (pl, removed) = Polyline::collapsing(vec![p(0., 0.), p(0., 0.), p(1., 0.)]).unwrap();
        assert_eq!(pl.vertices().len(), 2);
        assert_eq!(removed, 1);
        assert!(Point::try_new(f64::INFINITY, 0.0).is_err());
        assert!(Segment::try_new(p(1., 1.), p(1., 1.)).is_err());
    }

    #[test]
    fn ray_segment_cases() {
        let s = Segment::new(p(-1., 1.), p(1., 1.));
        assert!(ray_segment_intersects(&Ray::new(p(0., 0.), PI / 2.0), &s));
        assert!(!ray_segment_intersects(&Ray::new(p(0., 0.), 0.0), &s));
        assert!(ray_segment_intersects(&Ray::new(p(0., 1.), 0.0), &s));
        // Pointing away.
        assert!(!ray_segment_intersects(&Ray::new(p(0., 0.), 1.5 * PI), &s));
        // Touching an endpoint.
        assert!(ray_segment_intersects(&Ray::new(p(0., 0.), PI / 4.0), &s));
        // Collinear, segment ahead / behind.
        let c = Segment::new(p(2., 0.), p(3., 0.));
        assert!(ray_segment_intersects(&Ray::new(p(0., 0.), 0.0), &c));
        assert!(!ray_segment_intersects(&Ray::new(p(0., 0.), PI), &c));
    }

    #[test]
    fn hull_cases() {
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(0., 1.), p(0.2, 0.2)]).unwrap();
        assert_eq!(h.vertices(), &[p(0., 0.), p(1., 0.), p(0., 1.)]);
        let h = convex_hull(&[p(0., 0.), p(1., 1.), p(2., 2.)]).unwrap();
        assert_eq!(h.vertices(), &[p(0., 0.), p(2., 2.)]);
        let h = convex_hull(&[p(0., 0.)]).unwrap();
        assert_eq!(h.len(), 1);
        assert!(convex_hull::<f64>(&[]).is_err());
        // Collinear boundary points are removed.
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(2., 0.), p(2., 2.), p(0., 2.)]).unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn hull_membership() {
        let h = convex_hull(&[p(0., 0.), p(2., 0.), p(2., 2.), p(0., 2.)]).unwrap();
        assert!(h.contains(p(1., 1.)));
        assert!(h.contains(p(2., 1.)));
        assert!(!h.contains(p(2.1, 1.)));
        assert!(h.intersects_segment(p(-1., 1.), p(3., 1.)));
        assert!(!h.intersects_segment(p(-1., 3.), p(3., 3.)));
    }

    fn triangle(dx: f64, dy: f64) -> ConvexHull {
        convex_hull(&[p(dx, dy), p(dx + 1., dy), p(dx, dy + 1.)]).unwrap()
    }

    #[test]
    fn tangents_of_disjoint_triangles() {
        let t = common_tangents(&triangle(0., 0.), &triangle(5., 0.));
        assert_eq!(t.len(), 4);
        assert_eq!(t.iter().filter(|l| l.kind == TangentKind::Outer).count(), 2);
    }

    #[test]
    fn tangents_of_nested_triangles() {
        let outer = triangle(0., 0.);
        let c = p(1. / 3., 1. / 3.);
        let inner_pts: Vec<_> = outer.vertices().iter().map(|&v| c.add(v.sub(c).scale(0.3))).collect();
        let inner = convex_hull(&inner_pts).unwrap();
        assert!(common_tangents(&outer, &inner).is_empty());
        assert!(common_tangents(&inner, &outer).is_empty());
    }

    #[test]
    fn tangents_of_overlapping_squares() {
        let a = convex_hull(&[p(0., 0.), p(2., 0.), p(2., 2.), p(0., 2.)]).unwrap();
        let b = convex_hull(&[p(1., 1.), p(3., 1.), p(3., 3.), p(1., 3.)]).unwrap();
        let t = common_tangents(&a, &b);
        // Brute-force oracle: every vertex-pair line that keeps all vertices of both hulls
        // weakly on one side and touches each hull in a single vertex.
        let mut oracle = 0;
        for &u in a.vertices() {
            for &v in b.vertices() {
                let side = |h: &ConvexHull, skip: Point| {
                    let s: Vec<i8> = h
                        .vertices()
                        .iter()
                        .filter(|&&w| w != skip)
                        .map(|&w| orientation(u, v, w))
                        .collect();
                    if s.contains(&0) {
                        None
                    } else if s.iter().all(|&x| x == s[0]) {
                        Some(s[0])
                    } else {
                        None
                    }
                };
                if let (Some(_), Some(_)) = (side(&a, u), side(&b, v)) {
                    oracle += 1;
                }
            }
        }
        assert_eq!(t.len(), oracle);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|l| l.kind == TangentKind::Outer));
    }

    #[test]
    fn frame_maps_segment_onto_axis() {
        let seg = Segment::new(p(0., 0.), p(0., 2.));
        let f = to_frame(&seg);
        assert_abs_diff_eq!(apply_frame(&f, p(1., 0.)).norm(), 1.0, epsilon = 1e-12);
        let a = apply_frame(&f, seg.a);
        assert_abs_diff_eq!(a.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.y, 0.0, epsilon = 1e-12);
        let b = apply_frame(&f, seg.b);
        assert_abs_diff_eq!(b.x, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.y, 0.0, epsilon = 1e-12);
        let q = p(0.3, -4.5);
        let back = f.invert(f.apply(q));
        assert_abs_diff_eq!(back.x, q.x, epsilon = 1e-12);
        assert_abs_diff_eq!(back.y, q.y, epsilon = 1e-12);
    }
}
