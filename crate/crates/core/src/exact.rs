//! Exact curve depth.
//!
//! Each query segment is cut at every parameter where the angular arrangement seen
//! from a point of the segment can change combinatorially. Boundary rays are
//! defined by population vertices, and two boundaries (or a boundary and the
//! antipode of another) can only swap when the root is collinear with their two
//! vertices, so the crossings of the segment with every line through two population
//! vertices are enough. On each resulting interval the arrangement is rebuilt once,
//! and every cell's width is integrated in closed form in the segment's own frame,
//! where the root runs along the x-axis.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DepthError, Result};
use crate::geom::{convex_hull, line_crossing_param, point_on_segment, to_frame, ConvexHull, Point, Polyline, Segment};
use crate::hull::outer_tangents;
use crate::scalar::{CompensatedSum, Scalar};
use crate::stabbing::{build_arrangement, point_depth_raw, BoundaryRef, CircularArrangement};

const MAX_BISECTION_DEPTH: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventSource {
    QueryVertex,
    /// A population edge or vertex meets the query here.
    CurveCrossing,
    HullTangent,
    VertexPairLine,
    /// Caller-supplied cut with no geometric meaning.
    Refinement,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EventPoint<T = f64> {
    pub segment_index: usize,
    pub t: T,
    pub source: EventSource,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExactOptions {
    /// Use the hull-pruned event set instead of every vertex-pair line.
    pub hull_prune: bool,
    /// Evaluate intervals on the rayon pool. Results are bit-identical to serial runs.
    pub parallel: bool,
}

/// A piece of a query segment on which the arrangement is combinatorially fixed.
///
/// The snapshot is built at the midpoint in the segment frame (segment start at the
/// origin, direction along +x), so boundary points are frame coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantInterval<T = f64> {
    pub segment_index: usize,
    pub t_lo: T,
    pub t_hi: T,
    /// The interval in frame x-coordinates.
    pub x_lo: T,
    pub x_hi: T,
    pub arrangement: CircularArrangement<T>,
}

impl<T: Scalar> InvariantInterval<T> {
    pub fn len(&self) -> T {
        self.x_hi - self.x_lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntervalContribution<T = f64> {
    pub segment_index: usize,
    pub t_lo: T,
    pub t_hi: T,
    pub contribution: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthResult<T = f64> {
    /// `∫_Q ∫₀^π min(stab(θ), stab(θ+π)) dθ dq` (for a point query: the point value).
    pub raw: T,
    pub depth: T,
    pub normalized: T,
    pub length: T,
    pub n: usize,
    pub per_interval: Vec<IntervalContribution<T>>,
}

fn merge_events<T: Scalar>(mut ev: Vec<EventPoint<T>>) -> Vec<EventPoint<T>> {
    let eps = T::event_eps();
    ev.sort_by(|a, b| {
        a.segment_index
            .cmp(&b.segment_index)
            .then(a.t.partial_cmp(&b.t).unwrap())
            .then(a.source.cmp(&b.source))
    });
    let mut out: Vec<EventPoint<T>> = Vec::with_capacity(ev.len());
    let mut cluster_tail = T::zero();
    for e in ev {
        if let Some(last) = out.last_mut() {
            if last.segment_index == e.segment_index && e.t - cluster_tail <= eps {
                cluster_tail = e.t;
                // Query vertices pin the cluster to exactly 0 or 1.
                if e.source < last.source {
                    *last = e;
                }
                continue;
            }
        }
        cluster_tail = e.t;
        out.push(e);
    }
    out
}

fn clamp_unit<T: Scalar>(t: T) -> Option<T> {
    let eps = T::event_eps();
    if t < -eps || t > T::one() + eps {
        None
    } else {
        Some(t.max(T::zero()).min(T::one()))
    }
}

/// Parameter of the projection of `v` onto `s` when `v` lies on the segment.
fn vertex_on_segment<T: Scalar>(v: Point<T>, s: &Segment<T>) -> Option<T> {
    if !point_on_segment(v, s.a, s.b) {
        return None;
    }
    let d = s.b.sub(s.a);
    clamp_unit(v.sub(s.a).dot(d) / d.dot(d))
}

struct Vertex<T> {
    curve: usize,
    index: usize,
    p: Point<T>,
}

fn flat_vertices<T: Scalar>(c: &[Polyline<T>]) -> Vec<Vertex<T>> {
    c.iter()
        .enumerate()
        .flat_map(|(ci, pl)| {
            pl.vertices().iter().enumerate().map(move |(vi, &p)| Vertex {
                curve: ci,
                index: vi,
                p,
            })
        })
        .collect()
}

fn base_events<T: Scalar>(si: usize, s: &Segment<T>, verts: &[Vertex<T>], out: &mut Vec<EventPoint<T>>) {
    for t in [T::zero(), T::one()] {
        out.push(EventPoint {
            segment_index: si,
            t,
            source: EventSource::QueryVertex,
        });
    }
    for v in verts {
        if let Some(t) = vertex_on_segment(v.p, s) {
            out.push(EventPoint {
                segment_index: si,
                t,
                source: EventSource::CurveCrossing,
            });
        }
    }
}

fn push_line<T: Scalar>(
    si: usize,
    s: &Segment<T>,
    p: Point<T>,
    r: Point<T>,
    source: EventSource,
    out: &mut Vec<EventPoint<T>>,
) {
    if p == r {
        return;
    }
    if let Some(t) = line_crossing_param(p, r, s.a, s.b).and_then(clamp_unit) {
        out.push(EventPoint {
            segment_index: si,
            t,
            source,
        });
    }
}

/// Sorted, merged event parameters along every segment of `q`.
///
/// The full set cuts at every line through two distinct population vertices. The
/// pruned set keeps only lines that can carry a boundary swap: supporting lines of
/// population edges, common tangents and edges of outer hulls, and vertex-pair lines
/// whose crossing lies inside the hull of one of the two curves, restricted to
/// vertices that can define a boundary from there (hull vertices, or any vertex when
/// the crossing is inside that curve's hull).
pub fn generate_events<T: Scalar>(q: &Polyline<T>, c: &[Polyline<T>], use_hull_prune: bool) -> Vec<EventPoint<T>> {
    if q.is_point() {
        return Vec::new();
    }
    let verts = flat_vertices(c);
    let mut out = Vec::new();
    let hulls: Vec<ConvexHull<T>> = if use_hull_prune {
        c.iter().map(|pl| convex_hull(pl.vertices()).unwrap()).collect()
    } else {
        Vec::new()
    };
    let tangents = if use_hull_prune {
        outer_tangents(&hulls)
    } else {
        Vec::new()
    };
    let on_hull: Vec<Vec<bool>> = if use_hull_prune {
        c.iter()
            .zip(&hulls)
            .map(|(pl, h)| pl.vertices().iter().map(|v| h.vertices().contains(v)).collect())
            .collect()
    } else {
        Vec::new()
    };

    for (si, s) in q.segments().enumerate() {
        base_events(si, &s, &verts, &mut out);
        for (i, a) in verts.iter().enumerate() {
            for b in &verts[i + 1..] {
                let edge = a.curve == b.curve && b.index == a.index + 1;
                if !use_hull_prune {
                    let source = if edge {
                        EventSource::CurveCrossing
                    } else {
                        EventSource::VertexPairLine
                    };
                    push_line(si, &s, a.p, b.p, source, &mut out);
                    continue;
                }
                if edge {
                    push_line(si, &s, a.p, b.p, EventSource::CurveCrossing, &mut out);
                    continue;
                }
                if a.p == b.p {
                    continue;
                }
                let Some(t) = line_crossing_param(a.p, b.p, s.a, s.b).and_then(clamp_unit) else {
                    continue;
                };
                let x = s.point_at(t);
                let in_a = hulls[a.curve].contains(x);
                let in_b = hulls[b.curve].contains(x);
                let a_ok = on_hull[a.curve][a.index] || in_a;
                let b_ok = on_hull[b.curve][b.index] || in_b;
                if a_ok && b_ok && (in_a || in_b) {
                    out.push(EventPoint {
                        segment_index: si,
                        t,
                        source: EventSource::VertexPairLine,
                    });
                }
            }
        }
        if use_hull_prune {
            for h in &hulls {
                let hv = h.vertices();
                for k in 0..hv.len() {
                    push_line(
                        si,
                        &s,
                        hv[k],
                        hv[(k + 1) % hv.len()],
                        EventSource::HullTangent,
                        &mut out,
                    );
                }
            }
            for tl in &tangents {
                push_line(si, &s, tl.line.p, tl.line.r, EventSource::HullTangent, &mut out);
            }
        }
    }
    merge_events(out)
}

/// Adds caller-chosen cut parameters `(segment_index, t)` to an event list.
pub fn refine_events<T: Scalar>(events: &[EventPoint<T>], extra: &[(usize, T)]) -> Vec<EventPoint<T>> {
    let mut all = events.to_vec();
    all.extend(extra.iter().filter_map(|&(segment_index, t)| {
        clamp_unit(t).map(|t| EventPoint {
            segment_index,
            t,
            source: EventSource::Refinement,
        })
    }));
    merge_events(all)
}

#[derive(PartialEq, Debug)]
struct Signature {
    ids: Vec<BoundaryRef>,
    stabs: Vec<usize>,
    indicators: Vec<bool>,
}

/// Combinatorial description of an arrangement, rotated to start at its smallest boundary id.
fn signature<T: Scalar>(arr: &CircularArrangement<T>) -> Signature {
    let b = arr.boundaries();
    let cells = arr.cells();
    let r = (0..b.len()).min_by_key(|&i| b[i].source).unwrap_or(0);
    let n = cells.len();
    let rot = |i: usize| (i + r) % n;
    Signature {
        ids: (0..b.len()).map(|i| b[(i + r) % b.len()].source).collect(),
        stabs: (0..n).map(|i| cells[rot(i)].stab).collect(),
        indicators: (0..n).map(|i| cells[rot(i)].min_indicator).collect(),
    }
}

struct SegmentContext<T> {
    index: usize,
    len: T,
    population: Vec<Polyline<T>>,
}

impl<T: Scalar> SegmentContext<T> {
    fn new(index: usize, s: &Segment<T>, c: &[Polyline<T>]) -> Self {
        let f = to_frame(s);
        Self {
            index,
            len: s.length(),
            population: c.iter().map(|pl| pl.map(|p| f.apply(p))).collect(),
        }
    }

    fn arrangement_at(&self, t: T) -> CircularArrangement<T> {
        build_arrangement(Point::new(t * self.len, T::zero()), &self.population)
    }

    fn validate(&self, t_lo: T, t_hi: T, depth: usize, out: &mut Vec<InvariantInterval<T>>) -> Result<()> {
        let at = |f: f64| t_lo + (t_hi - t_lo) * T::lit(f);
        let mid = self.arrangement_at(at(0.5));
        let sig = signature(&mid);
        let ok = signature(&self.arrangement_at(at(0.25))) == sig && signature(&self.arrangement_at(at(0.75))) == sig;
        if ok {
            out.push(InvariantInterval {
                segment_index: self.index,
                t_lo,
                t_hi,
                x_lo: t_lo * self.len,
                x_hi: t_hi * self.len,
                arrangement: mid,
            });
            return Ok(());
        }
        if depth >= MAX_BISECTION_DEPTH {
            return Err(DepthError::Degeneracy {
                segment_index: self.index,
                t_lo: t_lo.to_f64().unwrap(),
                t_hi: t_hi.to_f64().unwrap(),
            });
        }
        let m = at(0.5);
        self.validate(t_lo, m, depth + 1, out)?;
        self.validate(m, t_hi, depth + 1, out)
    }
}

fn interval_jobs<T: Scalar>(events: &[EventPoint<T>]) -> Vec<(usize, T, T)> {
    events
        .windows(2)
        .filter(|w| w[0].segment_index == w[1].segment_index && w[1].t > w[0].t)
        .map(|w| (w[0].segment_index, w[0].t, w[1].t))
        .collect()
}

fn partition_impl<T: Scalar>(
    q: &Polyline<T>,
    c: &[Polyline<T>],
    events: &[EventPoint<T>],
    parallel: bool,
) -> Result<Vec<InvariantInterval<T>>> {
    let segs: Vec<Segment<T>> = q.segments().collect();
    let ctx: Vec<SegmentContext<T>> = segs
        .iter()
        .enumerate()
        .map(|(i, s)| SegmentContext::new(i, s, c))
        .collect();
    let jobs = interval_jobs(events);
    let run = |&(si, lo, hi): &(usize, T, T)| -> Result<Vec<InvariantInterval<T>>> {
        let mut out = Vec::new();
        ctx[si].validate(lo, hi, 0, &mut out)?;
        Ok(out)
    };
    let parts: Vec<Result<Vec<InvariantInterval<T>>>> = if parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    Ok(all)
}

/// Validated invariant intervals between consecutive events of each segment.
pub fn partition_into_invariant_intervals<T: Scalar>(
    q: &Polyline<T>,
    c: &[Polyline<T>],
    events: &[EventPoint<T>],
) -> Result<Vec<InvariantInterval<T>>> {
    partition_impl(q, c, events, false)
}

fn antiderivative_unchecked<T: Scalar>(p: Point<T>, x: T) -> T {
    let u = p.x - x;
    let y = p.y;
    let a = if u == T::zero() { T::zero() } else { u * y.atan2(u) };
    let b = if y == T::zero() { T::zero() } else { y * u.hypot(y).ln() };
    -(a + b)
}

/// `G_p(x)` with `G_p'(x) = atan2(p.y, p.x − x)`, the root being `(x, 0)`:
/// `G_p(x) = −[u·atan2(p.y, u) + (p.y/2)·ln(u² + p.y²)]` with `u = p.x − x`.
pub fn boundary_antiderivative<T: Scalar>(p: Point<T>, x: T) -> Result<T> {
    if p.y == T::zero() && p.x == x {
        return Err(DepthError::domain("antiderivative evaluated at its singular point"));
    }
    Ok(antiderivative_unchecked(p, x))
}

/// Boundary angle function in the frame: polar angle of the defining vertex seen from
/// `(x, 0)`, shifted by π for antipodal boundaries.
fn boundary_angle<T: Scalar>(p: Point<T>, antipodal: bool, x: T) -> T {
    let a = p.y.atan2(p.x - x);
    if antipodal {
        a + T::PI()
    } else {
        a
    }
}

/// `∫ width(cell)(x) dx` over the interval.
pub fn cell_area_integral<T: Scalar>(iv: &InvariantInterval<T>, cell: usize) -> Result<T> {
    let arr = &iv.arrangement;
    let len = iv.len();
    let Some((lo, hi)) = arr.cell_bounds(cell) else {
        return Ok(T::two_pi() * len);
    };
    let pi = T::PI();
    let tau = T::two_pi();
    let sgn = |b: bool| if b { T::one() } else { T::zero() };
    let mid = iv.x_lo + len / (T::one() + T::one());
    let width_mid = arr.cells()[cell].width;
    let diff =
        |x: T| boundary_angle(hi.point, hi.source.antipodal, x) - boundary_angle(lo.point, lo.source.antipodal, x);
    let k = ((width_mid - diff(mid)) / tau).round();

    let tol = T::angle_eps() * T::lit(1000.0);
    for f in [0.25, 0.5, 0.75] {
        let x = iv.x_lo + len * T::lit(f);
        let w = diff(x) + k * tau;
        if w < -tol || w > tau + tol {
            return Err(DepthError::Consistency(format!(
                "cell width {w} out of range on segment {} at x = {x}",
                iv.segment_index
            )));
        }
    }
    let g = |p: Point<T>| antiderivative_unchecked(p, iv.x_hi) - antiderivative_unchecked(p, iv.x_lo);
    let constant = pi * (sgn(hi.source.antipodal) - sgn(lo.source.antipodal)) + k * tau;
    let area = g(hi.point) - g(lo.point) + constant * len;
    if area < -tol * (T::one() + len) {
        return Err(DepthError::Consistency(format!(
            "negative cell area {area} on segment {}",
            iv.segment_index
        )));
    }
    Ok(area.max(T::zero()))
}

/// `∫ over the interval of point_depth_raw`, before the `1/(πL)` scaling.
pub fn interval_depth<T: Scalar>(iv: &InvariantInterval<T>) -> Result<T> {
    let arr = &iv.arrangement;
    let mut s = CompensatedSum::new();
    for (i, c) in arr.cells().iter().enumerate() {
        if c.stab == 0 {
            continue;
        }
        let w = arr.selection_weight(i);
        if w == T::zero() {
            continue;
        }
        s.add(w * T::from_usize(c.stab).unwrap() * cell_area_integral(iv, i)?);
    }
    Ok(s.value())
}

fn assemble<T: Scalar>(raw: T, length: T, n: usize, per_interval: Vec<IntervalContribution<T>>) -> DepthResult<T> {
    let depth = if length > T::zero() {
        raw / (T::PI() * length)
    } else {
        raw / T::PI()
    };
    let normalized = if n == 0 {
        T::zero()
    } else {
        depth / T::from_usize(n).unwrap()
    };
    DepthResult {
        raw,
        depth,
        normalized,
        length,
        n,
        per_interval,
    }
}

/// Exact depth from a caller-supplied event list (which must contain the full or
/// pruned event set; extra cuts are harmless).
pub fn curve_depth_from_events<T: Scalar>(
    q: &Polyline<T>,
    c: &[Polyline<T>],
    events: &[EventPoint<T>],
    opts: &ExactOptions,
) -> Result<DepthResult<T>> {
    if q.is_point() {
        let raw = point_depth_raw(q.vertices()[0], c);
        return Ok(assemble(raw, T::zero(), c.len(), Vec::new()));
    }
    let intervals = partition_impl(q, c, events, opts.parallel)?;
    let eval = |iv: &InvariantInterval<T>| -> Result<IntervalContribution<T>> {
        Ok(IntervalContribution {
            segment_index: iv.segment_index,
            t_lo: iv.t_lo,
            t_hi: iv.t_hi,
            contribution: interval_depth(iv)?,
        })
    };
    let parts: Vec<Result<IntervalContribution<T>>> = if opts.parallel {
        intervals.par_iter().map(eval).collect()
    } else {
        intervals.iter().map(eval).collect()
    };
    let per_interval = parts.into_iter().collect::<Result<Vec<_>>>()?;
    let raw = per_interval
        .iter()
        .map(|p| p.contribution)
        .collect::<CompensatedSum<T>>()
        .value();
    Ok(assemble(raw, q.arc_length(), c.len(), per_interval))
}

/// Exact curve stabbing depth of `q` relative to `c`.
pub fn curve_depth<T: Scalar>(q: &Polyline<T>, c: &[Polyline<T>], opts: &ExactOptions) -> Result<DepthResult<T>> {
    let events = generate_events(q, c, opts.hull_prune);
    curve_depth_from_events(q, c, &events, opts)
}
