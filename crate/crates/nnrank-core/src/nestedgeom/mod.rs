//! Exact planar convex geometry: orientation predicates, half-plane
//! intersections, and the greedy supporting-polygon construction for nested
//! convex polygons.
//!
//! All predicates are decided by exact sign computations in the working
//! field; there is no epsilon anywhere.  That matters because the
//! interesting inputs sit exactly on the degenerate locus — the threshold
//! start point of the supporting-polygon lemmas makes the closing
//! orientation test exactly zero, which floating arithmetic cannot resolve.
//!
//! The certificate-specific geometry (the two outer polygons, the threshold
//! lemmas, the infeasibility and uniqueness checks) lives in [`lemmas`].

mod lemmas;

pub use lemmas::*;

use thiserror::Error;

use crate::exactnum::{Field, Sign};

/// A point of F².
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point2<F> {
    pub x: F,
    pub y: F,
}

impl<F: Field> Point2<F> {
    pub fn new(x: F, y: F) -> Self {
        Point2 { x, y }
    }
}

impl<F: Field> std::fmt::Debug for Point2<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The 3×3 orientation determinant of the point triple, as a field value:
/// positive iff `a, b, c` wind counter-clockwise, zero iff collinear.
pub fn orient_value<F: Field>(a: &Point2<F>, b: &Point2<F>, c: &Point2<F>) -> F {
    let abx = b.x.clone() - a.x.clone();
    let aby = b.y.clone() - a.y.clone();
    let acx = c.x.clone() - a.x.clone();
    let acy = c.y.clone() - a.y.clone();
    abx * acy - aby * acx
}

/// Exact sign of the orientation determinant.
pub fn orient<F: Field>(a: &Point2<F>, b: &Point2<F>, c: &Point2<F>) -> Sign {
    orient_value(a, b, c).sign()
}

/// The closed half-plane `a·x + b·y >= c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane<F> {
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: Field> HalfPlane<F> {
    pub fn new(a: F, b: F, c: F) -> Self {
        HalfPlane { a, b, c }
    }

    /// `a·x + b·y − c`; nonnegative inside the half-plane.
    pub fn eval(&self, p: &Point2<F>) -> F {
        self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() - self.c.clone()
    }

    pub fn contains(&self, p: &Point2<F>) -> bool {
        self.eval(p).sign().is_nonnegative()
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("a convex polygon needs at least 3 vertices")]
    TooFewVertices,
    #[error("vertices are not strictly convex in counter-clockwise order (triple at index {0})")]
    NotStrictlyConvex(usize),
    #[error("start point is not on the outer polygon boundary")]
    StartNotOnBoundary,
    #[error("inner polygon is not contained in the outer polygon")]
    InnerNotInsideOuter,
    #[error("tangency degenerate: the supporting direction at the start point is not unique")]
    TangencyDegenerate,
    #[error("half-plane system is infeasible")]
    InfeasibleHalfPlanes,
    #[error("half-plane intersection is not a full-dimensional polygon")]
    DegenerateRegion,
    #[error("parameter u = {u} outside [0,1]")]
    DomainError { u: String },
    #[error("pole: denominator {denominator} vanishes at u = {u}")]
    Pole { denominator: String, u: String },
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),
}

/// Where a point sits relative to a convex polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    OnBoundary,
    Outside,
}

/// A strictly convex polygon with vertices in counter-clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon<F> {
    vertices: Vec<Point2<F>>,
}

impl<F: Field> ConvexPolygon<F> {
    /// Validates strict convexity: every cyclic vertex triple must wind
    /// counter-clockwise.
    pub fn new(vertices: Vec<Point2<F>>) -> Result<Self, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices);
        }
        let n = vertices.len();
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            if orient(a, b, c) != Sign::Positive {
                return Err(GeomError::NotStrictlyConvex(i));
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point2<F>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least 3 vertices by construction
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point2<F>, &Point2<F>)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// The supporting half-plane of each edge (polygon = their intersection).
    pub fn halfplanes(&self) -> Vec<HalfPlane<F>> {
        self.edges()
            .map(|(u, v)| {
                let dx = v.x.clone() - u.x.clone();
                let dy = v.y.clone() - u.y.clone();
                let a = -dy.clone();
                let b = dx.clone();
                let c = a.clone() * u.x.clone() + b.clone() * u.y.clone();
                HalfPlane { a, b, c }
            })
            .collect()
    }

    pub fn contains(&self, p: &Point2<F>) -> Containment {
        let mut on_boundary = false;
        for (u, v) in self.edges() {
            match orient(u, v, p) {
                Sign::Negative => return Containment::Outside,
                Sign::Zero => on_boundary = true,
                Sign::Positive => {}
            }
        }
        if on_boundary {
            Containment::OnBoundary
        } else {
            Containment::Inside
        }
    }

    pub fn contains_polygon(&self, inner: &ConvexPolygon<F>) -> bool {
        inner
            .vertices()
            .iter()
            .all(|p| self.contains(p) != Containment::Outside)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ConvexPolygon<G> {
        ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point2 { x: f(&p.x), y: f(&p.y) })
                .collect(),
        }
    }

    /// Builds the polygon bounded by a finite set of half-planes.
    ///
    /// Vertices are enumerated as feasible pairwise boundary intersections,
    /// deduplicated and sorted counter-clockwise around the vertex centroid.
    /// Only bounded full-dimensional intersections are accepted.
    pub fn from_halfplanes(halfplanes: &[HalfPlane<F>]) -> Result<Self, GeomError> {
        let mut active: Vec<&HalfPlane<F>> = Vec::new();
        for hp in halfplanes {
            if hp.is_trivial() {
                if hp.c.sign() == Sign::Positive {
                    return Err(GeomError::InfeasibleHalfPlanes);
                }
                continue;
            }
            active.push(hp);
        }
        let mut candidates: Vec<Point2<F>> = Vec::new();
        for (i, hi) in active.iter().enumerate() {
            for hj in active.iter().skip(i + 1) {
                let det = hi.a.clone() * hj.b.clone() - hj.a.clone() * hi.b.clone();
                if det.is_zero() {
                    continue;
                }
                let x = (hi.c.clone() * hj.b.clone() - hj.c.clone() * hi.b.clone())
                    .checked_div(&det)
                    .expect("nonzero determinant");
                let y = (hi.a.clone() * hj.c.clone() - hj.a.clone() * hi.c.clone())
                    .checked_div(&det)
                    .expect("nonzero determinant");
                let p = Point2 { x, y };
                if active.iter().all(|hp| hp.contains(&p)) && !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
        }
        if candidates.len() < 3 {
            return Err(GeomError::DegenerateRegion);
        }
        let vertices = sort_ccw(candidates)?;
        ConvexPolygon::new(vertices)
    }
}

/// Sorts a set of distinct extreme points counter-clockwise around their
/// centroid (which is interior for a full-dimensional point set).
fn sort_ccw<F: Field>(points: Vec<Point2<F>>) -> Result<Vec<Point2<F>>, GeomError> {
    let n = F::from_rational(crate::exactnum::rat(&points.len().to_string()));
    let mut cx = F::zero();
    let mut cy = F::zero();
    for p in &points {
        cx = cx + p.x.clone();
        cy = cy + p.y.clone();
    }
    let center = Point2 {
        x: cx.checked_div(&n).expect("nonzero point count"),
        y: cy.checked_div(&n).expect("nonzero point count"),
    };
    let half = |p: &Point2<F>| -> u8 {
        match p.y.clone().sub_sign(&center.y) {
            Sign::Positive => 0,
            Sign::Negative => 1,
            Sign::Zero => {
                if p.x.clone().sub_sign(&center.x) == Sign::Positive {
                    0
                } else {
                    1
                }
            }
        }
    };
    let mut sorted = points;
    sorted.sort_by(|p, q| {
        let (hp, hq) = (half(p), half(q));
        if hp != hq {
            return hp.cmp(&hq);
        }
        match orient(&center, p, q) {
            Sign::Positive => std::cmp::Ordering::Less,
            Sign::Negative => std::cmp::Ordering::Greater,
            Sign::Zero => std::cmp::Ordering::Equal,
        }
    });
    Ok(sorted)
}

trait SubSign<F> {
    fn sub_sign(self, other: &F) -> Sign;
}

impl<F: Field> SubSign<F> for F {
    fn sub_sign(self, other: &F) -> Sign {
        (self - other.clone()).sign()
    }
}

/// Clips a counter-clockwise convex polygon (given as a vertex list) against
/// one half-plane.  The result may be empty or lower-dimensional; duplicates
/// are removed.
pub fn clip<F: Field>(points: &[Point2<F>], hp: &HalfPlane<F>) -> Vec<Point2<F>> {
    if points.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<Point2<F>> = Vec::new();
    let n = points.len();
    for i in 0..n {
        let cur = &points[i];
        let next = &points[(i + 1) % n];
        let cur_val = hp.eval(cur);
        let next_val = hp.eval(next);
        let cur_in = cur_val.sign().is_nonnegative();
        let next_in = next_val.sign().is_nonnegative();
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != next_in {
            // The boundary crossing of the segment cur→next.
            let denom = cur_val.clone() - next_val.clone();
            let t = cur_val.checked_div(&denom).expect("strict sign change");
            let x = cur.x.clone() + t.clone() * (next.x.clone() - cur.x.clone());
            let y = cur.y.clone() + t * (next.y.clone() - cur.y.clone());
            out.push(Point2 { x, y });
        }
    }
    let mut dedup: Vec<Point2<F>> = Vec::new();
    for p in out {
        if !dedup.contains(&p) {
            dedup.push(p);
        }
    }
    dedup
}

/// The greedy supporting chain from a boundary start point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportResult<F> {
    /// Chain vertices in counter-clockwise order, starting at the given
    /// start point.
    pub vertices: Vec<Point2<F>>,
    /// Whether the closing segment (last → first) keeps the inner polygon on
    /// its left, i.e. the chain is a nested polygon.
    pub closed: bool,
}

impl<F: Field> SupportResult<F> {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// Constructs the supporting polygon of `inner` inside `outer` started at a
/// boundary point of `outer`.
///
/// Each step takes the tangent from the current vertex that keeps `inner`
/// weakly to the left (the supporting direction), extends it to the boundary
/// of `outer`, and appends the exit point.  The chain closes as soon as the
/// segment back to the start has `inner` weakly on its left; a vertex budget
/// of `|outer| + |inner| + 3` converts non-closure into `closed = false`
/// instead of divergence.
pub fn supporting_polygon<F: Field>(
    inner: &ConvexPolygon<F>,
    outer: &ConvexPolygon<F>,
    start: &Point2<F>,
) -> Result<SupportResult<F>, GeomError> {
    if outer.contains(start) != Containment::OnBoundary {
        return Err(GeomError::StartNotOnBoundary);
    }
    if !outer.contains_polygon(inner) {
        return Err(GeomError::InnerNotInsideOuter);
    }
    if inner.contains(start) != Containment::Outside {
        // The tangent cone at a point of the inner polygon is degenerate.
        return Err(GeomError::TangencyDegenerate);
    }
    let outer_halfplanes = outer.halfplanes();
    let budget = outer.len() + inner.len() + 3;
    let mut vertices = vec![start.clone()];
    let mut closed = false;
    while vertices.len() < budget {
        let current = vertices.last().expect("chain is nonempty").clone();
        let tangent = tangent_vertex(inner, &current)?;
        let exit = extend_to_boundary(&outer_halfplanes, &current, &tangent)?;
        if exit == *start {
            closed = true;
            break;
        }
        vertices.push(exit);
        if vertices.len() >= 3 {
            let last = vertices.last().expect("chain is nonempty");
            let closes = inner
                .vertices()
                .iter()
                .all(|p| orient(last, start, p).is_nonnegative());
            if closes {
                closed = true;
                break;
            }
        }
    }
    Ok(SupportResult { vertices, closed })
}

/// The inner vertex `t` whose tangent line from `from` keeps the whole inner
/// polygon weakly left of `from → t`.  A collinear inner edge yields two
/// candidates; the farther one along the direction gives the maximal
/// supporting segment.
fn tangent_vertex<F: Field>(
    inner: &ConvexPolygon<F>,
    from: &Point2<F>,
) -> Result<Point2<F>, GeomError> {
    let mut candidates: Vec<&Point2<F>> = Vec::new();
    'vertex: for t in inner.vertices() {
        if t == from {
            continue;
        }
        for p in inner.vertices() {
            if orient(from, t, p) == Sign::Negative {
                continue 'vertex;
            }
        }
        candidates.push(t);
    }
    match candidates.len() {
        1 => Ok(candidates[0].clone()),
        2 => {
            let (a, b) = (candidates[0], candidates[1]);
            if orient(from, a, b) != Sign::Zero {
                return Err(GeomError::TangencyDegenerate);
            }
            // Farthest tangent vertex along the common direction.
            let da = sq_dist(from, a);
            let db = sq_dist(from, b);
            if (da - db).sign() == Sign::Negative {
                Ok(b.clone())
            } else {
                Ok(a.clone())
            }
        }
        _ => Err(GeomError::TangencyDegenerate),
    }
}

fn sq_dist<F: Field>(a: &Point2<F>, b: &Point2<F>) -> F {
    let dx = b.x.clone() - a.x.clone();
    let dy = b.y.clone() - a.y.clone();
    dx.clone() * dx + dy.clone() * dy
}

/// Exit point of the ray `from → through` (extended beyond `through`) on the
/// boundary of the convex region cut out by `halfplanes`; `from` must lie in
/// the region.
fn extend_to_boundary<F: Field>(
    halfplanes: &[HalfPlane<F>],
    from: &Point2<F>,
    through: &Point2<F>,
) -> Result<Point2<F>, GeomError> {
    let dx = through.x.clone() - from.x.clone();
    let dy = through.y.clone() - from.y.clone();
    let mut s_exit: Option<F> = None;
    for hp in halfplanes {
        let slope = hp.a.clone() * dx.clone() + hp.b.clone() * dy.clone();
        if slope.sign() == Sign::Negative {
            let s = hp
                .eval(from)
                .checked_div(&(-slope))
                .expect("slope is nonzero");
            let smaller = match &s_exit {
                None => true,
                Some(cur) => (s.clone() - cur.clone()).sign() == Sign::Negative,
            };
            if smaller {
                s_exit = Some(s);
            }
        }
    }
    let s = s_exit.ok_or(GeomError::CrossCheckFailed(
        "ray never exits the outer polygon".to_string(),
    ))?;
    debug_assert!(s.sign() == Sign::Positive, "tangent point is interior");
    Ok(Point2 {
        x: from.x.clone() + s.clone() * dx,
        y: from.y.clone() + s * dy,
    })
}

/// Is the directed segment `u → v` supporting for `inner` inside `outer`?
/// Both endpoints must lie on the boundary of `outer`, every inner vertex
/// weakly left of the segment, and some inner vertex on the segment itself.
pub fn is_supporting_segment<F: Field>(
    u: &Point2<F>,
    v: &Point2<F>,
    inner: &ConvexPolygon<F>,
    outer: &ConvexPolygon<F>,
) -> bool {
    if outer.contains(u) != Containment::OnBoundary
        || outer.contains(v) != Containment::OnBoundary
    {
        return false;
    }
    let mut touches = false;
    for p in inner.vertices() {
        match orient(u, v, p) {
            Sign::Negative => return false,
            Sign::Zero => {
                // On the line; touching requires a point of the segment.
                let along = (p.x.clone() - u.x.clone()) * (v.x.clone() - u.x.clone())
                    + (p.y.clone() - u.y.clone()) * (v.y.clone() - u.y.clone());
                let len = sq_dist(u, v);
                if along.sign().is_nonnegative() && (len - along).sign().is_nonnegative() {
                    touches = true;
                }
            }
            Sign::Positive => {}
        }
    }
    touches
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{quad, rat, Quad, Rational};

    fn rp(x: &str, y: &str) -> Point2<Rational> {
        Point2::new(rat(x), rat(y))
    }

    fn qp(x: &str, y: &str) -> Point2<Quad> {
        Point2::new(quad(x), quad(y))
    }

    fn unit_square() -> ConvexPolygon<Rational> {
        ConvexPolygon::new(vec![rp("0", "0"), rp("1", "0"), rp("1", "1"), rp("0", "1")]).unwrap()
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&rp("0", "0"), &rp("1", "0"), &rp("0", "1")), Sign::Positive);
        assert_eq!(orient(&rp("0", "0"), &rp("1", "1"), &rp("2", "2")), Sign::Zero);
        assert_eq!(orient(&rp("0", "0"), &rp("0", "1"), &rp("1", "0")), Sign::Negative);
    }

    #[test]
    fn orient_antisymmetric_under_swaps() {
        let (a, b, c) = (rp("1/3", "2"), rp("-5", "1/7"), rp("2", "9/4"));
        let v = orient_value(&a, &b, &c);
        assert_eq!(orient_value(&b, &a, &c), -v.clone());
        assert_eq!(orient_value(&a, &c, &b), -v);
    }

    #[test]
    fn polygon_validation() {
        assert!(matches!(
            ConvexPolygon::new(vec![rp("0", "0"), rp("1", "0")]),
            Err(GeomError::TooFewVertices)
        ));
        // Clockwise input is rejected.
        assert!(matches!(
            ConvexPolygon::new(vec![rp("0", "0"), rp("0", "1"), rp("1", "0")]),
            Err(GeomError::NotStrictlyConvex(_))
        ));
        // Collinear triple is rejected.
        assert!(matches!(
            ConvexPolygon::new(vec![rp("0", "0"), rp("1", "0"), rp("2", "0"), rp("0", "1")]),
            Err(GeomError::NotStrictlyConvex(_))
        ));
    }

    #[test]
    fn containment_cases() {
        let square = unit_square();
        assert_eq!(square.contains(&rp("1/2", "1/2")), Containment::Inside);
        assert_eq!(square.contains(&rp("1/2", "0")), Containment::OnBoundary);
        assert_eq!(square.contains(&rp("1", "1")), Containment::OnBoundary);
        assert_eq!(square.contains(&rp("3/2", "1/2")), Containment::Outside);
    }

    #[test]
    fn halfplane_reconstruction_round_trips() {
        let square = unit_square();
        let rebuilt = ConvexPolygon::from_halfplanes(&square.halfplanes()).unwrap();
        assert_eq!(rebuilt.len(), 4);
        for v in square.vertices() {
            assert!(rebuilt.vertices().contains(v));
        }
    }

    #[test]
    fn from_halfplanes_handles_redundancy_and_infeasibility() {
        let mut hps = unit_square().halfplanes();
        // A redundant half-plane touching only the vertex (1,1).
        hps.push(HalfPlane::new(rat("-1"), rat("-1"), rat("-2")));
        let poly = ConvexPolygon::from_halfplanes(&hps).unwrap();
        assert_eq!(poly.len(), 4);
        // x >= 2 empties the square.
        hps.push(HalfPlane::new(rat("1"), rat("0"), rat("2")));
        assert!(matches!(
            ConvexPolygon::from_halfplanes(&hps),
            Err(GeomError::DegenerateRegion)
        ));
    }

    #[test]
    fn clip_square() {
        let square = unit_square();
        // Keep x >= 1/2.
        let region = clip(square.vertices(), &HalfPlane::new(rat("1"), rat("0"), rat("1/2")));
        assert_eq!(region.len(), 4);
        assert!(region.contains(&rp("1/2", "0")));
        assert!(region.contains(&rp("1", "1")));
        // x >= 2 gives the empty region.
        assert!(clip(square.vertices(), &HalfPlane::new(rat("1"), rat("0"), rat("2"))).is_empty());
        // x >= 1 degenerates to the right edge.
        let edge = clip(square.vertices(), &HalfPlane::new(rat("1"), rat("0"), rat("1")));
        assert_eq!(edge.len(), 2);
    }

    #[test]
    fn supporting_polygon_square_in_square() {
        // Inner diamond inside the unit square, start at a boundary corner.
        let outer = unit_square().map(|r| Quad::from_rational(r.clone()));
        let inner = ConvexPolygon::new(vec![
            qp("1/2", "1/4"),
            qp("3/4", "1/2"),
            qp("1/2", "3/4"),
            qp("1/4", "1/2"),
        ])
        .unwrap();
        let result = supporting_polygon(&inner, &outer, &qp("0", "0")).unwrap();
        assert!(result.closed);
        // Every consecutive chain segment is supporting.
        for i in 0..result.vertices.len() - 1 {
            assert!(is_supporting_segment(
                &result.vertices[i],
                &result.vertices[i + 1],
                &inner,
                &outer
            ));
        }
        // The closed chain nests between inner and outer.
        let nested = ConvexPolygon::new(result.vertices.clone()).unwrap();
        assert!(nested.contains_polygon(&inner));
        assert!(outer.contains_polygon(&nested));
    }

    #[test]
    fn supporting_polygon_rejects_bad_starts() {
        let outer = unit_square().map(|r| Quad::from_rational(r.clone()));
        let inner = ConvexPolygon::new(vec![
            qp("1/2", "1/4"),
            qp("3/4", "1/2"),
            qp("1/2", "3/4"),
            qp("1/4", "1/2"),
        ])
        .unwrap();
        assert!(matches!(
            supporting_polygon(&inner, &outer, &qp("1/2", "1/2")),
            Err(GeomError::StartNotOnBoundary)
        ));
        let tiny = ConvexPolygon::new(vec![qp("0", "0"), qp("1", "0"), qp("0", "1")]).unwrap();
        // Inner touching the start corner degenerates the tangent cone.
        let outer2 = outer.clone();
        assert!(matches!(
            supporting_polygon(&tiny, &outer2, &qp("0", "0")),
            Err(GeomError::TangencyDegenerate)
        ));
        // Inner sticking out of the outer polygon is rejected.
        let big = ConvexPolygon::new(vec![qp("-1", "0"), qp("2", "0"), qp("1/2", "1/2")]).unwrap();
        assert!(matches!(
            supporting_polygon(&big, &outer, &qp("0", "0")),
            Err(GeomError::InnerNotInsideOuter)
        ));
    }

    #[test]
    fn tangent_tie_takes_farthest_vertex() {
        // Inner square has its left edge collinear with the start point, so
        // the tangent from (0,0) through x = 1/4 is ambiguous between the two
        // left vertices; the chain must use the farther one.
        let outer = unit_square().map(|r| Quad::from_rational(r.clone()));
        let inner = ConvexPolygon::new(vec![
            qp("1/4", "1/4"),
            qp("3/4", "1/4"),
            qp("3/4", "3/4"),
            qp("1/4", "3/4"),
        ])
        .unwrap();
        let start = qp("1/4", "0");
        let result = supporting_polygon(&inner, &outer, &start).unwrap();
        assert!(result.closed);
        // First segment runs up the x = 1/4 line through BOTH inner left
        // vertices to the top boundary.
        assert_eq!(result.vertices[1], qp("1/4", "1"));
    }
}
