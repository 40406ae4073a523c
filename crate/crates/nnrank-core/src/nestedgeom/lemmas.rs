//! Certificate-specific geometry: the two coordinate-plane cross sections of
//! the polytope, the supporting-polygon threshold lemmas with their
//! eliminated polynomials, the type-2/3 infeasibility certificates, and the
//! supporting-triangle uniqueness checks.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::{
    clip, orient_value, supporting_polygon, ConvexPolygon, GeomError, HalfPlane, Point2,
    SupportResult,
};
use crate::exactnum::{quad, rat, Field, Quad, Rational, Sign};
use crate::paperdata::PaperConstants;

/// The two polytope facets carrying the inner triangles: the `z = 0` plane
/// (coordinates `(x, y)`) and the `y = 0` plane (coordinates `(x, z)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    Xy,
    Xz,
}

impl Plane {
    pub fn token(self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Xz => "xz",
        }
    }

    pub fn parse(s: &str) -> Option<Plane> {
        match s {
            "xy" => Some(Plane::Xy),
            "xz" => Some(Plane::Xz),
            _ => None,
        }
    }

    /// Index of the in-plane coordinate paired with `x` in ℝ³.
    fn coord(self) -> usize {
        match self {
            Plane::Xy => 1,
            Plane::Xz => 2,
        }
    }

    /// 0-based indices (into the `r` points) of the inner triangle vertices.
    fn triangle_indices(self) -> [usize; 3] {
        match self {
            Plane::Xy => [0, 1, 2],
            Plane::Xz => [3, 4, 5],
        }
    }

    /// 0-based indices (into the `q*` points) of the supporting triangle in
    /// chain order from `q1*`.
    fn qstar_indices(self) -> [usize; 3] {
        match self {
            Plane::Xy => [0, 2, 1], // q1*, q3*, q2*
            Plane::Xz => [0, 4, 3], // q1*, q5*, q4*
        }
    }
}

/// The half-planes cutting the plane cross-section out of the polytope
/// (one per row of `C`; rows trivial on the plane drop out downstream).
fn restricted_halfplanes(plane: Plane) -> Vec<HalfPlane<Rational>> {
    let k = PaperConstants::get();
    let coord = plane.coord();
    (0..k.map.c.rows())
        .map(|i| HalfPlane {
            a: k.map.c[(i, 0)].clone(),
            b: k.map.c[(i, coord)].clone(),
            c: -k.map.d[(i, 0)].clone(),
        })
        .collect()
}

/// The outer polygon of the plane, over the rationals.
pub fn plane_polygon_rational(plane: Plane) -> &'static ConvexPolygon<Rational> {
    static XY: OnceLock<ConvexPolygon<Rational>> = OnceLock::new();
    static XZ: OnceLock<ConvexPolygon<Rational>> = OnceLock::new();
    let cell = match plane {
        Plane::Xy => &XY,
        Plane::Xz => &XZ,
    };
    cell.get_or_init(|| {
        ConvexPolygon::from_halfplanes(&restricted_halfplanes(plane))
            .expect("the plane cross-sections are full-dimensional")
    })
}

/// The outer polygon of the plane, embedded into Q(√2) for the supporting
/// chain (whose vertices are irrational at the threshold).
pub fn plane_polygon(plane: Plane) -> &'static ConvexPolygon<Quad> {
    static XY: OnceLock<ConvexPolygon<Quad>> = OnceLock::new();
    static XZ: OnceLock<ConvexPolygon<Quad>> = OnceLock::new();
    let cell = match plane {
        Plane::Xy => &XY,
        Plane::Xz => &XZ,
    };
    cell.get_or_init(|| {
        plane_polygon_rational(plane).map(|r| Quad::from_rational(r.clone()))
    })
}

fn project<F: Field>(point: &[F; 3], plane: Plane) -> Point2<F> {
    Point2 {
        x: point[0].clone(),
        y: point[plane.coord()].clone(),
    }
}

/// The inner triangle of the plane (`r1 r2 r3` or `r4 r5 r6`), over Q(√2).
pub fn inner_triangle(plane: Plane) -> &'static ConvexPolygon<Quad> {
    static XY: OnceLock<ConvexPolygon<Quad>> = OnceLock::new();
    static XZ: OnceLock<ConvexPolygon<Quad>> = OnceLock::new();
    let cell = match plane {
        Plane::Xy => &XY,
        Plane::Xz => &XZ,
    };
    cell.get_or_init(|| {
        let k = PaperConstants::get();
        let vertices = plane
            .triangle_indices()
            .iter()
            .map(|&i| {
                let p = project(&k.r[i], plane);
                Point2 {
                    x: Quad::from_rational(p.x),
                    y: Quad::from_rational(p.y),
                }
            })
            .collect();
        ConvexPolygon::new(vertices).expect("the inner triangles are ccw")
    })
}

/// The in-plane `r` points, over Q(√2).
pub fn r_points_in_plane(plane: Plane) -> [Point2<Quad>; 3] {
    let k = PaperConstants::get();
    plane.triangle_indices().map(|i| {
        let p = project(&k.r[i], plane);
        Point2 {
            x: Quad::from_rational(p.x),
            y: Quad::from_rational(p.y),
        }
    })
}

/// The supporting-triangle vertices `q*` of the plane, in chain order from
/// `q1*`.
pub fn qstar_in_plane(plane: Plane) -> [Point2<Quad>; 3] {
    let k = PaperConstants::get();
    plane.qstar_indices().map(|i| project(&k.qstar[i], plane))
}

/// `2 − √2`, the threshold abscissa of both lemmas.
pub fn threshold() -> Quad {
    quad("2-1s")
}

/// Exact comparison of a rational `u` against `2 − √2`.
pub fn is_at_least_threshold(u: &Rational) -> bool {
    (Quad::from_rational(u.clone()) - threshold()).sign().is_nonnegative()
}

// ---------------------------------------------------------------------------
// Threshold lemmas
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdOutcome {
    ThreeVertices,
    MoreThanThree,
}

/// Result of one lemma evaluation at a start abscissa `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdCheck {
    pub outcome: ThresholdOutcome,
    pub support: SupportResult<Quad>,
    /// The collinearity parameters `(v, w)` solved from the two tangency
    /// equations.
    pub params: (Quad, Quad),
    /// The closing orientation determinant at the parameterized vertices.
    pub closing_det: Quad,
    /// The eliminated closed form; zero exactly at `u = 2 − √2`.
    pub eliminated: Quad,
}

fn in_unit_interval(v: &Quad) -> bool {
    v.sign().is_nonnegative() && (Quad::one() - v.clone()).sign().is_nonnegative()
}

/// Root of the affine function `f`, with the vanishing-coefficient case
/// reported as a pole named `denominator`.
fn solve_linear(
    f: impl Fn(&Quad) -> Quad,
    denominator: &str,
    u: &Quad,
) -> Result<Quad, GeomError> {
    let at_zero = f(&Quad::zero());
    let at_one = f(&Quad::one());
    let slope = at_one - at_zero.clone();
    if slope.is_zero() {
        return Err(GeomError::Pole {
            denominator: denominator.to_string(),
            u: u.to_string(),
        });
    }
    Ok((-at_zero).checked_div(&slope).expect("slope is nonzero"))
}

fn check_domain(u: &Quad) -> Result<(), GeomError> {
    if !in_unit_interval(u) {
        return Err(GeomError::DomainError { u: u.to_string() });
    }
    Ok(())
}

fn threshold_check(
    plane: Plane,
    u: &Quad,
    params: (Quad, Quad),
    closing_det: Quad,
    eliminated: Quad,
) -> Result<ThresholdCheck, GeomError> {
    // The stepwise elimination and the closed form are the same rational
    // function; a mismatch would mean a transcription bug.
    if !(closing_det.clone() - eliminated.clone()).is_zero_value() {
        return Err(GeomError::CrossCheckFailed(format!(
            "elimination mismatch at u = {u}: determinant {closing_det} vs closed form {eliminated}"
        )));
    }
    let start = Point2 {
        x: u.clone(),
        y: Quad::from_rational(rat("0")),
    };
    let support = supporting_polygon(inner_triangle(plane), plane_polygon(plane), &start)?;
    let three = support.closed && support.vertex_count() <= 3;
    // Inside the parameter regime of the lemma derivation, the closing
    // determinant decides the vertex count; cross-check the geometry.
    if in_unit_interval(&params.0) && in_unit_interval(&params.1) {
        let algebraic_three = closing_det.sign().is_nonnegative();
        if algebraic_three != three {
            return Err(GeomError::CrossCheckFailed(format!(
                "vertex count {} disagrees with the closing determinant {} at u = {u}",
                support.vertex_count(),
                closing_det
            )));
        }
    }
    Ok(ThresholdCheck {
        outcome: if three {
            ThresholdOutcome::ThreeVertices
        } else {
            ThresholdOutcome::MoreThanThree
        },
        support,
        params,
        closing_det,
        eliminated,
    })
}

/// Stepwise elimination for the `z = 0` plane: solve the two collinearity
/// equations for the edge parameters `v`, `w`, then evaluate the closing
/// orientation determinant.  Returns `(v, w, determinant)`.
pub fn lemma41_step_by_step(u: &Quad) -> Result<(Quad, Quad, Quad), GeomError> {
    let r = r_points_in_plane(Plane::Xy);
    let q1 = Point2 { x: u.clone(), y: Quad::from_rational(rat("0")) };
    let q3 = |v: &Quad| Point2 {
        x: Quad::one_value(),
        y: v.clone().checked_div(&Quad::from_rational(rat("2"))).unwrap(),
    };
    let q2 = |w: &Quad| Point2 {
        x: Quad::one_value() - w.clone(),
        y: Quad::from_rational(rat("1/2"))
            + w.clone().checked_div(&Quad::from_rational(rat("2"))).unwrap(),
    };
    // Segment q1 q3 passes through r1.
    let v = solve_linear(|t| orient_value(&q1, &q3(t), &r[0]), "4u-3", u)?;
    // Segment q3 q2 passes through r2.
    let w = solve_linear(|t| orient_value(&q3(&v), &q2(t), &r[1]), "8u-5", u)?;
    // Closing orientation: q2, q1, r3 counter-clockwise.
    let det = orient_value(&q2(&w), &q1, &r[2]);
    Ok((v, w, det))
}

/// The eliminated closed form of the `z = 0` lemma:
/// `15 / (22(8u−5)) · (u² − 4u + 2)`.
pub fn lemma41_closed_form(u: &Quad) -> Result<Quad, GeomError> {
    let denom = Quad::from_rational(rat("176")) * u.clone()
        - Quad::from_rational(rat("110"));
    if denom.is_zero_value() {
        return Err(GeomError::Pole { denominator: "8u-5".to_string(), u: u.to_string() });
    }
    let poly = u.clone() * u.clone() - Quad::from_rational(rat("4")) * u.clone()
        + Quad::from_rational(rat("2"));
    Ok((Quad::from_rational(rat("15")) * poly)
        .checked_div(&denom)
        .expect("denominator checked nonzero"))
}

/// Threshold check on `(R0, P0)`: three supporting vertices only at or above
/// `u = 2 − √2` (within the lemma's parameter regime).
pub fn lemma41_threshold_check(u: &Quad) -> Result<ThresholdCheck, GeomError> {
    check_domain(u)?;
    let (v, w, det) = lemma41_step_by_step(u)?;
    let eliminated = lemma41_closed_form(u)?;
    threshold_check(Plane::Xy, u, (v, w), det, eliminated)
}

/// Stepwise elimination for the `y = 0` plane; returns `(v, w, determinant)`.
pub fn lemma42_step_by_step(u: &Quad) -> Result<(Quad, Quad, Quad), GeomError> {
    let r = r_points_in_plane(Plane::Xz);
    let q1 = Point2 { x: u.clone(), y: Quad::from_rational(rat("0")) };
    let q5 = |v: &Quad| Point2 {
        x: (Quad::from_rational(rat("9")) - Quad::from_rational(rat("9")) * v.clone())
            .checked_div(&Quad::from_rational(rat("4")))
            .unwrap(),
        y: (Quad::from_rational(rat("7")) + Quad::from_rational(rat("9")) * v.clone())
            .checked_div(&Quad::from_rational(rat("14")))
            .unwrap(),
    };
    let q4 = |w: &Quad| Point2 {
        x: Quad::from_rational(rat("0")),
        y: (Quad::from_rational(rat("8")) - Quad::from_rational(rat("8")) * w.clone())
            .checked_div(&Quad::from_rational(rat("7")))
            .unwrap(),
    };
    // Segment q1 q5 passes through r4.
    let v = solve_linear(|t| orient_value(&q1, &q5(t), &r[0]), "36u-135", u)?;
    // Segment q5 q4 passes through r5.
    let w = solve_linear(|t| orient_value(&q5(&v), &q4(t), &r[1]), "9v-7", u)?;
    // Closing orientation: q4, q1, r6 counter-clockwise.
    let det = orient_value(&q4(&w), &q1, &r[2]);
    Ok((v, w, det))
}

/// The eliminated closed form of the `y = 0` lemma:
/// `−10 / (21(2u−7)) · (u² − 4u + 2)`.
pub fn lemma42_closed_form(u: &Quad) -> Result<Quad, GeomError> {
    let denom = Quad::from_rational(rat("42")) * u.clone()
        - Quad::from_rational(rat("147"));
    if denom.is_zero_value() {
        return Err(GeomError::Pole { denominator: "2u-7".to_string(), u: u.to_string() });
    }
    let poly = u.clone() * u.clone() - Quad::from_rational(rat("4")) * u.clone()
        + Quad::from_rational(rat("2"));
    Ok((Quad::from_rational(rat("-10")) * poly)
        .checked_div(&denom)
        .expect("denominator checked nonzero"))
}

/// Threshold check on `(R1, P1)`: three supporting vertices only at or below
/// `u = 2 − √2`.
pub fn lemma42_threshold_check(u: &Quad) -> Result<ThresholdCheck, GeomError> {
    check_domain(u)?;
    let (v, w, det) = lemma42_step_by_step(u)?;
    let eliminated = lemma42_closed_form(u)?;
    threshold_check(Plane::Xz, u, (v, w), det, eliminated)
}

/// One sample of a bottom-edge sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub u: Rational,
    pub vertex_count: usize,
    pub closed: bool,
}

/// Supporting-chain vertex counts for `steps + 1` equally spaced start
/// abscissas in `[a, b]` on the bottom edge of the plane.
pub fn sweep_bottom_edge(
    plane: Plane,
    a: &Rational,
    b: &Rational,
    steps: usize,
) -> Result<Vec<SweepEntry>, GeomError> {
    let inner = inner_triangle(plane);
    let outer = plane_polygon(plane);
    let n = rat(&steps.max(1).to_string());
    let mut out = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = rat(&i.to_string()).checked_div(&n).expect("steps >= 1");
        let u = a.clone() + t * (b.clone() - a.clone());
        let start = Point2 {
            x: Quad::from_rational(u.clone()),
            y: Quad::from_rational(rat("0")),
        };
        let support = supporting_polygon(inner, outer, &start)?;
        out.push(SweepEntry {
            u,
            vertex_count: support.vertex_count(),
            closed: support.closed,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Type-2 / type-3 infeasibility
// ---------------------------------------------------------------------------

/// Nonnegative multipliers certifying that a subsystem of half-planes has
/// empty intersection: the combined normal vanishes while the combined
/// offset stays positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    /// Indices into the constraint list.
    pub indices: Vec<usize>,
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, constraints: &[HalfPlane<Rational>]) -> bool {
        if self.indices.len() != self.multipliers.len() || self.indices.is_empty() {
            return false;
        }
        let mut a = Rational::zero_value();
        let mut b = Rational::zero_value();
        let mut c = Rational::zero_value();
        let mut positive = false;
        for (&i, lambda) in self.indices.iter().zip(&self.multipliers) {
            if lambda.sign() == Sign::Negative || i >= constraints.len() {
                return false;
            }
            if lambda.sign() == Sign::Positive {
                positive = true;
            }
            a = a + lambda.clone() * constraints[i].a.clone();
            b = b + lambda.clone() * constraints[i].b.clone();
            c = c + lambda.clone() * constraints[i].c.clone();
        }
        positive && a.is_zero() && b.is_zero() && c.sign() == Sign::Positive
    }
}

trait ZeroValue {
    fn zero_value() -> Rational;
    fn is_zero(&self) -> bool;
}

impl ZeroValue for Rational {
    fn zero_value() -> Rational {
        rat("0")
    }
    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }
}

fn cross2(p: &HalfPlane<Rational>, q: &HalfPlane<Rational>) -> Rational {
    p.a.clone() * q.b.clone() - q.a.clone() * p.b.clone()
}

/// Searches pairs and triples for a Farkas certificate (by Helly's theorem an
/// infeasible planar system always has one of size at most three).
pub fn find_farkas(constraints: &[HalfPlane<Rational>]) -> Option<FarkasCertificate> {
    let n = constraints.len();
    // Antiparallel pairs.
    for i in 0..n {
        for j in (i + 1)..n {
            let (p, q) = (&constraints[i], &constraints[j]);
            if !cross2(p, q).is_zero() {
                continue;
            }
            // p.normal = -t · q.normal with t > 0.
            let t = if !q.a.is_zero() {
                -p.a.clone().checked_div(&q.a).ok()?
            } else if !q.b.is_zero() {
                -p.b.clone().checked_div(&q.b).ok()?
            } else {
                continue;
            };
            if t.sign() != Sign::Positive {
                continue;
            }
            if p.b != -(t.clone() * q.b.clone()) || p.a != -(t.clone() * q.a.clone()) {
                continue;
            }
            let total = p.c.clone() + t.clone() * q.c.clone();
            if total.sign() == Sign::Positive {
                let cert = FarkasCertificate {
                    indices: vec![i, j],
                    multipliers: vec![rat("1"), t],
                };
                debug_assert!(cert.verify(constraints));
                return Some(cert);
            }
        }
    }
    // Triples: the kernel vector of the 2×3 normal matrix is the cross trio.
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (p, q, r) = (&constraints[i], &constraints[j], &constraints[k]);
                let mut lambda = [cross2(q, r), cross2(r, p), cross2(p, q)];
                if lambda.iter().all(|l| l.is_zero()) {
                    continue;
                }
                let has_pos = lambda.iter().any(|l| l.sign() == Sign::Positive);
                let has_neg = lambda.iter().any(|l| l.sign() == Sign::Negative);
                if has_pos && has_neg {
                    continue;
                }
                if has_neg {
                    for l in &mut lambda {
                        *l = -l.clone();
                    }
                }
                let cert = FarkasCertificate {
                    indices: vec![i, j, k],
                    multipliers: lambda.to_vec(),
                };
                if cert.verify(constraints) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

/// Feasibility of placing an apex `q3` in the plane polygon so that the
/// triangle `(0,0) (1,0) q3` covers the listed `r` points (global 0-based
/// indices).  Containment of a target is two linear half-plane constraints
/// on `q3`, so the search is an exact planar feasibility problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCoverCheck {
    pub plane: Plane,
    pub targets: Vec<usize>,
    /// Plane-polygon edges first, then per-target containment constraints.
    pub constraints: Vec<HalfPlane<Rational>>,
    /// The exact feasible region for `q3` (empty iff infeasible).
    pub region: Vec<Point2<Rational>>,
    /// Present iff the region is empty.
    pub farkas: Option<FarkasCertificate>,
}

impl TriangleCoverCheck {
    pub fn is_infeasible(&self) -> bool {
        self.region.is_empty()
    }

    pub fn witness(&self) -> Option<&Point2<Rational>> {
        self.region.first()
    }
}

pub fn triangle_cover_check(plane: Plane, targets: &[usize]) -> TriangleCoverCheck {
    let k = PaperConstants::get();
    let polygon = plane_polygon_rational(plane);
    let mut constraints = polygon.halfplanes();
    for &idx in targets {
        let r = project(&k.r[idx], plane);
        // r left of (1,0) → q3:  r_y·x − (r_x − 1)·y >= r_y.
        constraints.push(HalfPlane {
            a: r.y.clone(),
            b: -(r.x.clone() - rat("1")),
            c: r.y.clone(),
        });
        // r left of q3 → (0,0):  −r_y·x + r_x·y >= 0.
        constraints.push(HalfPlane {
            a: -r.y.clone(),
            b: r.x.clone(),
            c: rat("0"),
        });
    }
    let mut region: Vec<Point2<Rational>> = polygon.vertices().to_vec();
    for hp in &constraints[polygon.len()..] {
        region = clip(&region, hp);
        if region.is_empty() {
            break;
        }
    }
    let farkas = if region.is_empty() {
        let cert = find_farkas(&constraints);
        debug_assert!(cert.is_some(), "empty region must have a Farkas certificate");
        cert
    } else {
        None
    };
    TriangleCoverCheck {
        plane,
        targets: targets.to_vec(),
        constraints,
        region,
        farkas,
    }
}

/// The two exclusion instances: no triangle with base `(0,0)–(1,0)` inside
/// either plane polygon covers the far inner vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionReport {
    pub type2: TriangleCoverCheck,
    pub type3: TriangleCoverCheck,
}

impl ExclusionReport {
    pub fn both_infeasible(&self) -> bool {
        self.type2.is_infeasible() && self.type3.is_infeasible()
    }

    pub fn certificates_verified(&self) -> bool {
        let ok = |check: &TriangleCoverCheck| {
            check
                .farkas
                .as_ref()
                .is_some_and(|cert| cert.verify(&check.constraints))
        };
        ok(&self.type2) && ok(&self.type3)
    }
}

pub fn exclude_types_2_3() -> ExclusionReport {
    ExclusionReport {
        type2: triangle_cover_check(Plane::Xy, &[1, 2]),
        type3: triangle_cover_check(Plane::Xz, &[3, 5]),
    }
}

// ---------------------------------------------------------------------------
// Type-1 uniqueness
// ---------------------------------------------------------------------------

/// Why a perturbed triangle fails to nest the inner triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingWitness {
    /// 0: edge `q1* → q3`, 1: edge `q3 → q2`, 2: edge `q2 → q1*`.
    pub edge: usize,
    /// Index of the inner vertex found strictly right of the edge.
    pub point: usize,
    pub orientation: String,
}

/// Checks whether the triangle `q1* q3 q2` (counter-clockwise) contains all
/// three inner vertices of the `z = 0` plane; returns the first failure.
pub fn nesting_failure_witness(q3: &Point2<Quad>, q2: &Point2<Quad>) -> Option<NestingWitness> {
    let q1 = qstar_in_plane(Plane::Xy)[0].clone();
    let r = r_points_in_plane(Plane::Xy);
    let edges = [(q1.clone(), q3.clone()), (q3.clone(), q2.clone()), (q2.clone(), q1)];
    for (e, (from, to)) in edges.iter().enumerate() {
        for (i, p) in r.iter().enumerate() {
            let value = orient_value(from, to, p);
            if value.sign() == Sign::Negative {
                return Some(NestingWitness {
                    edge: e,
                    point: i,
                    orientation: value.to_string(),
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    /// Supporting chain from `q1*` in the `z = 0` plane equals
    /// `(q1*, q3*, q2*)`.
    pub xy_support_matches: bool,
    /// Supporting chain from `q1*` in the `y = 0` plane equals
    /// `(q1*, q5*, q4*)`.
    pub xz_support_matches: bool,
    pub grid_pairs_checked: usize,
    pub grid_pairs_failing: usize,
}

impl UniquenessReport {
    pub fn holds(&self) -> bool {
        self.xy_support_matches
            && self.xz_support_matches
            && self.grid_pairs_checked > 0
            && self.grid_pairs_checked == self.grid_pairs_failing
    }
}

/// Verifies the supporting-triangle identities at `q1*` on both planes, and
/// that every grid-sampled alternative apex pair on the right and upper
/// facets fails to nest the inner triangle (the exact pair is irrational, so
/// no rational grid point can reproduce it).
pub fn verify_type1_uniqueness() -> Result<UniquenessReport, GeomError> {
    let mut report = UniquenessReport {
        xy_support_matches: false,
        xz_support_matches: false,
        grid_pairs_checked: 0,
        grid_pairs_failing: 0,
    };

    for plane in [Plane::Xy, Plane::Xz] {
        let expected = qstar_in_plane(plane);
        let support =
            supporting_polygon(inner_triangle(plane), plane_polygon(plane), &expected[0])?;
        let matches = support.closed
            && support.vertex_count() == 3
            && support.vertices == expected.to_vec();
        match plane {
            Plane::Xy => report.xy_support_matches = matches,
            Plane::Xz => report.xz_support_matches = matches,
        }
    }

    // Rational grid of candidate vertices: q3 on the right facet, q2 on the
    // upper facet of the z = 0 polygon.
    let step = rat("1/8");
    let mut v = rat("0");
    while v <= rat("1") {
        let q3 = Point2 {
            x: Quad::one_value(),
            y: Quad::from_rational(v.clone() * rat("1/2")),
        };
        let mut w = rat("0");
        while w <= rat("1") {
            let q2 = Point2 {
                x: Quad::from_rational(rat("1") - w.clone()),
                y: Quad::from_rational(rat("1/2") + w.clone() * rat("1/2")),
            };
            report.grid_pairs_checked += 1;
            if nesting_failure_witness(&q3, &q2).is_some() {
                report.grid_pairs_failing += 1;
            }
            w = w + step.clone();
        }
        v = v + step.clone();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::quad;

    fn vertex_set_eq(poly: &ConvexPolygon<Rational>, expected: &[(&str, &str)]) {
        assert_eq!(poly.len(), expected.len());
        for (x, y) in expected {
            let p = Point2 { x: rat(x), y: rat(y) };
            assert!(
                poly.vertices().contains(&p),
                "vertex ({x},{y}) missing from {:?}",
                poly.vertices()
            );
        }
    }

    #[test]
    fn plane_polygons_have_the_expected_vertices() {
        vertex_set_eq(
            plane_polygon_rational(Plane::Xy),
            &[("0", "0"), ("1", "0"), ("1", "1/2"), ("0", "1")],
        );
        vertex_set_eq(
            plane_polygon_rational(Plane::Xz),
            &[("0", "0"), ("1", "0"), ("9/4", "1/2"), ("0", "8/7")],
        );
    }

    #[test]
    fn supporting_triangle_at_the_threshold_xy() {
        let check = lemma41_threshold_check(&threshold()).unwrap();
        assert_eq!(check.outcome, ThresholdOutcome::ThreeVertices);
        assert_eq!(check.support.vertices, qstar_in_plane(Plane::Xy).to_vec());
        assert!(check.eliminated.sign() == Sign::Zero);
        // v = (3+√2)/7: twice the second coordinate of q3*.
        assert_eq!(check.params.0, quad("3/7+1/7s"));
    }

    #[test]
    fn supporting_triangle_at_the_threshold_xz() {
        let check = lemma42_threshold_check(&threshold()).unwrap();
        assert_eq!(check.outcome, ThresholdOutcome::ThreeVertices);
        assert_eq!(check.support.vertices, qstar_in_plane(Plane::Xz).to_vec());
        assert!(check.eliminated.sign() == Sign::Zero);
    }

    #[test]
    fn quadrilateral_samples() {
        let check = lemma41_threshold_check(&quad("1/8")).unwrap();
        assert_eq!(check.outcome, ThresholdOutcome::MoreThanThree);
        assert_eq!(check.support.vertex_count(), 4);
        assert!(check.support.closed);

        let check = lemma42_threshold_check(&quad("7/8")).unwrap();
        assert_eq!(check.outcome, ThresholdOutcome::MoreThanThree);
        assert_eq!(check.support.vertex_count(), 4);
        assert!(check.support.closed);
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(
            lemma41_threshold_check(&quad("3/4")),
            Err(GeomError::Pole { .. })
        ));
        assert!(matches!(
            lemma41_threshold_check(&quad("5/8")),
            Err(GeomError::Pole { .. })
        ));
        assert!(matches!(
            lemma41_threshold_check(&quad("2")),
            Err(GeomError::DomainError { .. })
        ));
    }

    #[test]
    fn elimination_identity_on_samples() {
        // Twenty rational points avoiding the poles 5/8 and 3/4.
        for i in 0..20 {
            let u = quad(&format!("{}/129", 3 + 6 * i));
            let (_, _, det) = lemma41_step_by_step(&u).unwrap();
            assert_eq!(det, lemma41_closed_form(&u).unwrap(), "lemma 4.1 at {u}");
            let (_, _, det) = lemma42_step_by_step(&u).unwrap();
            assert_eq!(det, lemma42_closed_form(&u).unwrap(), "lemma 4.2 at {u}");
        }
        assert!(lemma41_closed_form(&threshold()).unwrap().sign() == Sign::Zero);
        assert!(lemma42_closed_form(&threshold()).unwrap().sign() == Sign::Zero);
    }

    #[test]
    fn exclusions_are_infeasible_with_verified_certificates() {
        let report = exclude_types_2_3();
        assert!(report.both_infeasible());
        assert!(report.certificates_verified());
    }

    #[test]
    fn single_target_cover_is_feasible() {
        // Requiring only r1 in the triangle leaves a nonempty exact region.
        let check = triangle_cover_check(Plane::Xy, &[0]);
        assert!(!check.is_infeasible());
        let witness = check.witness().unwrap();
        for hp in &check.constraints {
            assert!(hp.contains(witness));
        }
    }

    #[test]
    fn uniqueness_report_holds() {
        let report = verify_type1_uniqueness().unwrap();
        assert!(report.xy_support_matches);
        assert!(report.xz_support_matches);
        assert_eq!(report.grid_pairs_checked, 81);
        assert!(report.holds());
    }

    #[test]
    fn perturbed_upper_vertex_returns_witness() {
        // q2 = q2* + (-1/100, 1/200) stays on the upper facet but breaks the
        // nesting; q3 stays exact.
        let qstar = qstar_in_plane(Plane::Xy);
        let q3 = qstar[1].clone();
        let q2 = Point2 {
            x: qstar[2].x.clone() - quad("1/100"),
            y: qstar[2].y.clone() + quad("1/200"),
        };
        let witness = nesting_failure_witness(&q3, &q2).expect("nesting must fail");
        assert_eq!(witness.edge, 2, "failure on the closing edge");
        // The exact pair nests (r3 sits exactly on the closing edge).
        assert!(nesting_failure_witness(&qstar[1], &qstar[2]).is_none());
    }

    #[test]
    fn sweep_respects_the_lemma_predicates() {
        let entries = sweep_bottom_edge(Plane::Xy, &rat("0"), &rat("1"), 64).unwrap();
        assert_eq!(entries.len(), 65);
        for e in &entries {
            assert!(e.closed, "every grid start closes within budget");
            if e.vertex_count <= 3 {
                assert!(
                    is_at_least_threshold(&e.u),
                    "three vertices below the threshold at u = {}",
                    e.u
                );
            }
        }
        let entries = sweep_bottom_edge(Plane::Xz, &rat("0"), &rat("1"), 64).unwrap();
        for e in &entries {
            if e.vertex_count <= 3 {
                assert!(
                    !is_at_least_threshold(&e.u) || e.u == rat("1") && false,
                    "three vertices above the threshold at u = {}",
                    e.u
                );
            }
        }
    }
}
