//! Recipes for the named graphs, from the 7-vertex hexagon wheel up to the
//! 20425-vertex aggregate. Every recipe is deterministic and emits canonical
//! (sorted) vertex order, so two builds of the same id are bit-identical.
//!
//! The assembly chain: H tiles into J (13 translated copies), K twists J
//! against itself by 2·arcsin(1/4), L twists K about (−2,0) by 2·arcsin(1/8).
//! T extends the Moser spindle by two collinear points, U is its threefold
//! rotation. V fans out 30 unit vectors, W sums them pairwise, M surrounds W
//! with six translates, and N plants a copy of M on every hexagon of L. S_A,
//! Y and G follow the point-table orbit route.

use std::fmt;
use std::str::FromStr;

use crate::field::{rat, FieldElement};
use crate::geometry::{Point, Rotation};
use crate::graph::UnitDistanceGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionId {
    H,
    J,
    K,
    L,
    T,
    U,
    V,
    W,
    M,
    N,
    SA,
    Y,
    G,
    Moser,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 14] = [
        ConstructionId::H,
        ConstructionId::J,
        ConstructionId::K,
        ConstructionId::L,
        ConstructionId::T,
        ConstructionId::U,
        ConstructionId::V,
        ConstructionId::W,
        ConstructionId::M,
        ConstructionId::N,
        ConstructionId::SA,
        ConstructionId::Y,
        ConstructionId::G,
        ConstructionId::Moser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::H => "H",
            ConstructionId::J => "J",
            ConstructionId::K => "K",
            ConstructionId::L => "L",
            ConstructionId::T => "T",
            ConstructionId::U => "U",
            ConstructionId::V => "V",
            ConstructionId::W => "W",
            ConstructionId::M => "M",
            ConstructionId::N => "N",
            ConstructionId::SA => "S_A",
            ConstructionId::Y => "Y",
            ConstructionId::G => "G",
            ConstructionId::Moser => "MOSER",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown construction {0:?}; valid names: H, J, K, L, T, U, V, W, M, N, S_A, Y, G, MOSER")]
pub struct UnknownConstruction(pub String);

impl FromStr for ConstructionId {
    type Err = UnknownConstruction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "H" => Ok(ConstructionId::H),
            "J" => Ok(ConstructionId::J),
            "K" => Ok(ConstructionId::K),
            "L" => Ok(ConstructionId::L),
            "T" => Ok(ConstructionId::T),
            "U" => Ok(ConstructionId::U),
            "V" => Ok(ConstructionId::V),
            "W" => Ok(ConstructionId::W),
            "M" => Ok(ConstructionId::M),
            "N" => Ok(ConstructionId::N),
            "S_A" | "SA" => Ok(ConstructionId::SA),
            "Y" => Ok(ConstructionId::Y),
            "G" => Ok(ConstructionId::G),
            "MOSER" => Ok(ConstructionId::Moser),
            _ => Err(UnknownConstruction(s.to_string())),
        }
    }
}

pub fn build(id: ConstructionId) -> UnitDistanceGraph {
    match id {
        ConstructionId::H => build_h(),
        ConstructionId::J => build_j(),
        ConstructionId::K => build_k(),
        ConstructionId::L => build_l(),
        ConstructionId::T => build_t(),
        ConstructionId::U => build_u(),
        ConstructionId::V => build_v(),
        ConstructionId::W => build_w(),
        ConstructionId::M => build_m(),
        ConstructionId::N => build_n(),
        ConstructionId::SA => build_sa(),
        ConstructionId::Y => build_y(),
        ConstructionId::G => build_g(),
        ConstructionId::Moser => build_moser(),
    }
}

fn fe(n: i64, d: i64) -> FieldElement {
    FieldElement::from_rational(rat(n, d))
}

/// Σ (n/d)·√r over the terms; r = 1 contributes the rational part.
fn lc(terms: &[(i64, i64, u64)]) -> FieldElement {
    let mut acc = FieldElement::zero();
    for &(n, d, r) in terms {
        acc += &FieldElement::rational_times_radical(rat(n, d), r).unwrap();
    }
    acc
}

fn pt(x: FieldElement, y: FieldElement) -> Point {
    Point::new(x, y)
}

fn add(a: &Point, b: &Point) -> Point {
    Point::new(&a.x + &b.x, &a.y + &b.y)
}

fn scale(p: &Point, n: i64, d: i64) -> Point {
    let q = rat(n, d);
    Point::new(p.x.mul_rational(&q), p.y.mul_rational(&q))
}

/// The six unit vectors at k·60°, anticlockwise from (1, 0).
fn unit_hexagon() -> [Point; 6] {
    let rot = Rotation::sixth_turn(Point::origin());
    let mut dirs = Vec::with_capacity(6);
    let mut p = pt(fe(1, 1), fe(0, 1));
    for _ in 0..6 {
        dirs.push(p.clone());
        p = rot.apply(&p);
    }
    dirs.try_into().unwrap()
}

/// The six √3-length vectors at 30° + k·60°.
fn sqrt3_ring() -> [Point; 6] {
    let u = unit_hexagon();
    let mut out = Vec::with_capacity(6);
    for k in 0..6 {
        out.push(add(&u[k], &u[(k + 1) % 6]));
    }
    out.try_into().unwrap()
}

/// Collects points and point-identified annotations, then builds the
/// canonical graph and resolves the annotations by exact lookup.
struct Assembly {
    points: Vec<Point>,
    marks: Vec<(&'static str, Vec<Point>)>,
}

impl Assembly {
    fn new() -> Self {
        Assembly {
            points: Vec::new(),
            marks: Vec::new(),
        }
    }

    fn add(&mut self, p: Point) {
        self.points.push(p);
    }

    fn extend<I: IntoIterator<Item = Point>>(&mut self, iter: I) {
        self.points.extend(iter);
    }

    fn mark(&mut self, name: &'static str, pts: Vec<Point>) {
        self.marks.push((name, pts));
    }

    fn build(self) -> UnitDistanceGraph {
        let mut g = UnitDistanceGraph::from_points_canonical(self.points);
        let resolved: Vec<(&'static str, Vec<u32>)> = {
            let idx = g.point_index();
            self.marks
                .iter()
                .map(|(name, pts)| {
                    let ids = pts
                        .iter()
                        .map(|p| *idx.get(p).unwrap_or_else(|| panic!("{name} point missing")))
                        .collect();
                    (*name, ids)
                })
                .collect()
        };
        for (name, ids) in resolved {
            g.set_annotation(name, ids);
        }
        g
    }
}

fn h_assembly() -> Assembly {
    let u = unit_hexagon();
    let mut a = Assembly::new();
    a.add(Point::origin());
    a.extend(u.iter().cloned());
    a.mark("centre", vec![Point::origin()]);
    a.mark("hexagon", u.to_vec());
    a.mark(
        "initialising",
        std::iter::once(Point::origin())
            .chain(u.iter().cloned())
            .collect(),
    );
    a
}

fn build_h() -> UnitDistanceGraph {
    h_assembly().build()
}

fn j_assembly() -> Assembly {
    let u = unit_hexagon();
    let ring = sqrt3_ring();
    let mut centres = vec![Point::origin()];
    centres.extend(u.iter().cloned());
    centres.extend(ring.iter().cloned());
    let mut a = Assembly::new();
    for c in &centres {
        a.add(c.clone());
        for d in &u {
            a.add(add(c, d));
        }
    }
    a.mark("centre", vec![Point::origin()]);
    a.mark("hexagon", u.to_vec());
    // linking vertices are at distance 2; clockwise enumeration from (2, 0)
    let linking: Vec<Point> = [0, 5, 4, 3, 2, 1]
        .iter()
        .map(|&k| scale(&u[k], 2, 1))
        .collect();
    a.mark("a", vec![scale(&u[3], 2, 1)]);
    a.mark("b", vec![scale(&u[0], 2, 1)]);
    a.mark("linking", linking);
    a
}

fn build_j() -> UnitDistanceGraph {
    j_assembly().build()
}

fn k_assembly() -> Assembly {
    // J twisted clockwise against itself by 2·arcsin(1/4)
    let twist = Rotation::double_arcsin(&rat(-1, 4), Point::origin()).unwrap();
    let j = j_assembly();
    let mut a = Assembly::new();
    let mut linking_2 = Vec::new();
    for (name, pts) in &j.marks {
        match *name {
            "linking" => {
                a.mark("linking_1", pts.clone());
                linking_2 = pts.iter().map(|p| twist.apply(p)).collect();
            }
            _ => a.mark(name, pts.clone()),
        }
    }
    a.mark("linking_2", linking_2);
    for p in &j.points {
        a.add(twist.apply(p));
    }
    a.extend(j.points);
    a
}

fn build_k() -> UnitDistanceGraph {
    k_assembly().build()
}

fn build_l() -> UnitDistanceGraph {
    let k = k_assembly();
    let hinge = pt(fe(-2, 1), fe(0, 1));
    let b = pt(fe(2, 1), fe(0, 1));
    let twist = Rotation::double_arcsin(&rat(1, 8), hinge.clone()).unwrap();
    let mut a = Assembly::new();
    a.mark("a", vec![hinge]);
    a.mark("b", vec![b.clone()]);
    a.mark("b_prime", vec![twist.apply(&b)]);
    for p in &k.points {
        a.add(twist.apply(p));
    }
    a.extend(k.points);
    a.build()
}

/// Two unit rhombi hang off the segment a-b (squared length 3): the common
/// neighbours of a and b sit at the midpoint ± (√3/6)·rot90(b − a).
fn rhombus_mids(a: &Point, b: &Point) -> [Point; 2] {
    let mid = Point::midpoint(a, b);
    let vx = &b.x - &a.x;
    let vy = &b.y - &a.y;
    let c = FieldElement::sqrt_rational(&rat(1, 12)).unwrap(); // √3/6
    let ox = -&(&vy * &c);
    let oy = &vx * &c;
    [
        pt(&mid.x + &ox, &mid.y + &oy),
        pt(&mid.x - &ox, &mid.y - &oy),
    ]
}

/// Spindle in the frame used by T and U: tips on the x-axis, apex above.
fn moser_points() -> Vec<Point> {
    let apex = pt(fe(0, 1), FieldElement::sqrt_rational(&rat(11, 4)).unwrap());
    let tip_l = pt(fe(-1, 2), fe(0, 1));
    let tip_r = pt(fe(1, 2), fe(0, 1));
    let mut pts = vec![apex.clone(), tip_l.clone(), tip_r.clone()];
    pts.extend(rhombus_mids(&apex, &tip_l));
    pts.extend(rhombus_mids(&apex, &tip_r));
    pts
}

fn build_moser() -> UnitDistanceGraph {
    let mut a = Assembly::new();
    a.extend(moser_points());
    a.build()
}

fn t_points() -> Vec<Point> {
    let mut pts = moser_points();
    let q = FieldElement::sqrt_rational(&rat(33, 36)).unwrap(); // √33/6
    pts.push(pt(-&q, fe(0, 1)));
    pts.push(pt(q, fe(0, 1)));
    pts
}

fn build_t() -> UnitDistanceGraph {
    let mut a = Assembly::new();
    a.extend(t_points());
    a.build()
}

fn build_u() -> UnitDistanceGraph {
    // threefold rotation about the centroid of the equilateral apex triangle
    let centre = pt(fe(0, 1), FieldElement::sqrt_rational(&rat(11, 36)).unwrap());
    let third = Rotation::try_new(
        fe(-1, 2),
        FieldElement::sqrt_rational(&rat(3, 4)).unwrap(),
        centre,
    )
    .unwrap();
    let t = t_points();
    let mut a = Assembly::new();
    for p in &t {
        a.add(p.clone());
        a.add(third.apply(p));
        a.add(third.apply(&third.apply(p)));
    }
    a.build()
}

/// The 30 unit vectors at i·60° + j·arcsin(1/√12), i ∈ 0…5, j ∈ −2…2.
fn v_directions() -> Vec<Point> {
    let wobble = Rotation::from_sin(
        FieldElement::sqrt_rational(&rat(1, 12)).unwrap(),
        false,
        Point::origin(),
    )
    .unwrap();
    let base = pt(fe(1, 1), fe(0, 1));
    let mut tilted = Vec::with_capacity(5);
    for j in -2i32..=2 {
        let rot = if j < 0 { wobble.inverse() } else { wobble.clone() };
        tilted.push(rot.apply_times(&base, j.unsigned_abs()));
    }
    let sixth = Rotation::sixth_turn(Point::origin());
    let mut dirs = Vec::with_capacity(30);
    for i in 0..6 {
        for d in &tilted {
            dirs.push(sixth.apply_times(d, i));
        }
    }
    dirs
}

fn build_v() -> UnitDistanceGraph {
    let mut a = Assembly::new();
    a.add(Point::origin());
    a.extend(v_directions());
    a.build()
}

fn w_points() -> Vec<Point> {
    let dirs = v_directions();
    let origin = Point::origin();
    let radius2 = fe(3, 1);
    let mut pts = Vec::new();
    for (i, a) in dirs.iter().enumerate() {
        for b in &dirs[i..] {
            let s = add(a, b);
            if origin.within_radius2(&s, &radius2) {
                pts.push(s);
            }
        }
    }
    pts
}

fn w_assembly() -> Assembly {
    let u = unit_hexagon();
    let mut a = Assembly::new();
    a.extend(w_points());
    a.mark("centre", vec![Point::origin()]);
    a.mark("hexagon", u.to_vec());
    a.mark(
        "initialising",
        std::iter::once(Point::origin())
            .chain(u.iter().cloned())
            .collect(),
    );
    a
}

fn build_w() -> UnitDistanceGraph {
    w_assembly().build()
}

fn build_m() -> UnitDistanceGraph {
    let w = w_points();
    let mut a = w_assembly();
    for d in unit_hexagon() {
        for p in &w {
            a.add(add(p, &d));
        }
    }
    a.build()
}

fn build_n() -> UnitDistanceGraph {
    let l = build_l();
    let m = build_m();
    let mut a = Assembly::new();
    for copy in l.h_copies() {
        let centre = l.vertex(copy.centre);
        let first = l.vertex(copy.ring[0]);
        let spin = Rotation::try_new(
            &first.x - &centre.x,
            &first.y - &centre.y,
            Point::origin(),
        )
        .expect("hexagon offset is a unit vector");
        for p in m.vertices() {
            a.add(add(centre, &spin.apply(p)));
        }
    }
    a.build()
}

/// The point table feeding the orbit construction. First coordinate batch is
/// rational or involves √33; the y-coordinates mix √3 and √11.
pub fn s_point_table() -> Vec<Point> {
    let table: [(&[(i64, i64, u64)], &[(i64, i64, u64)]); 39] = [
        (&[(0, 1, 1)], &[(0, 1, 1)]),
        (&[(1, 3, 1)], &[(0, 1, 1)]),
        (&[(1, 1, 1)], &[(0, 1, 1)]),
        (&[(2, 1, 1)], &[(0, 1, 1)]),
        (&[(-1, 2, 1), (1, 6, 33)], &[(0, 1, 1)]),
        (&[(1, 2, 1)], &[(1, 6, 3)]),
        (&[(1, 1, 1)], &[(1, 3, 3)]),
        (&[(3, 2, 1)], &[(1, 2, 3)]),
        (&[(7, 6, 1)], &[(1, 6, 11)]),
        (&[(1, 6, 1)], &[(1, 3, 3), (-1, 6, 11)]),
        (&[(5, 6, 1)], &[(1, 3, 3), (-1, 6, 11)]),
        (&[(2, 3, 1)], &[(1, 6, 11), (-1, 6, 3)]),
        (&[(2, 3, 1)], &[(1, 2, 3), (-1, 6, 11)]),
        (&[(1, 6, 33)], &[(1, 6, 3)]),
        (&[(1, 2, 1), (1, 6, 33)], &[(1, 3, 3)]),
        (&[(1, 6, 1), (1, 6, 33)], &[(1, 2, 3), (-1, 6, 11)]),
        (&[(-1, 6, 1), (1, 6, 33)], &[(1, 2, 3), (-1, 6, 11)]),
        (&[(1, 6, 1), (1, 6, 33)], &[(1, 6, 11), (-1, 6, 3)]),
        (&[(-1, 6, 1), (1, 6, 33)], &[(1, 6, 11), (-1, 6, 3)]),
        (&[(-1, 3, 1), (1, 6, 33)], &[(1, 3, 3), (-1, 6, 11)]),
        (&[(-2, 3, 1), (1, 6, 33)], &[(1, 3, 3), (-1, 6, 11)]),
        (&[(13, 12, 1), (1, 12, 33)], &[(1, 12, 11), (-1, 12, 3)]),
        (&[(11, 12, 1), (1, 12, 33)], &[(1, 12, 3), (1, 12, 11)]),
        (&[(3, 4, 1), (1, 12, 33)], &[(1, 4, 11), (-1, 4, 3)]),
        (&[(3, 4, 1), (1, 12, 33)], &[(1, 4, 3), (1, 12, 11)]),
        (&[(7, 12, 1), (1, 12, 33)], &[(1, 12, 3), (1, 12, 11)]),
        (&[(7, 12, 1), (1, 12, 33)], &[(1, 4, 3), (-1, 12, 11)]),
        (&[(5, 12, 1), (1, 12, 33)], &[(5, 12, 3), (-1, 12, 11)]),
        (&[(5, 12, 1), (1, 12, 33)], &[(1, 12, 11), (-1, 12, 3)]),
        (&[(1, 4, 1), (1, 12, 33)], &[(1, 4, 11), (-5, 12, 3)]),
        (&[(1, 4, 1), (1, 12, 33)], &[(1, 12, 3), (1, 12, 11)]),
        (&[(1, 4, 1), (1, 12, 33)], &[(1, 4, 3), (-1, 12, 11)]),
        (&[(1, 12, 1), (1, 12, 33)], &[(1, 12, 11), (-1, 12, 3)]),
        (&[(-1, 12, 1), (1, 12, 33)], &[(1, 4, 3), (-1, 12, 11)]),
        (&[(-1, 4, 1), (1, 12, 33)], &[(1, 12, 11), (-1, 12, 3)]),
        (&[(5, 4, 1), (-1, 12, 33)], &[(1, 4, 11), (-1, 4, 3)]),
        (&[(5, 4, 1), (-1, 12, 33)], &[(7, 12, 3), (-1, 4, 11)]),
        (&[(13, 12, 1), (-1, 12, 33)], &[(1, 4, 3), (-1, 12, 11)]),
        (&[(11, 12, 1), (-1, 12, 33)], &[(1, 12, 11), (-1, 12, 3)]),
    ];
    table
        .iter()
        .map(|(x, y)| pt(lc(x), lc(y)))
        .collect()
}

fn sa_points() -> Vec<Point> {
    let sixth = Rotation::sixth_turn(Point::origin());
    let mut pts = Vec::with_capacity(39 * 12);
    for p in s_point_table() {
        let mut q = p;
        for _ in 0..6 {
            pts.push(q.clone());
            pts.push(pt(q.x.clone(), -&q.y));
            q = sixth.apply(&q);
        }
    }
    pts
}

fn build_sa() -> UnitDistanceGraph {
    let mut a = Assembly::new();
    a.extend(sa_points());
    a.build()
}

fn y_points() -> Vec<Point> {
    let twist = Rotation::double_arcsin(&rat(1, 4), Point::origin()).unwrap();
    let sa = sa_points();
    let mut pts: Vec<Point> = sa.iter().map(|p| twist.apply(p)).collect();
    pts.extend(sa);
    let cut = [pt(fe(1, 3), fe(0, 1)), pt(fe(-1, 3), fe(0, 1))];
    pts.retain(|p| !cut.contains(p));
    pts
}

fn build_y() -> UnitDistanceGraph {
    let mut a = Assembly::new();
    a.extend(y_points());
    a.build()
}

/// The two rotations of Y about (−2, 0), by π/2 ± arcsin(1/8). The cosine of
/// π/2 + arcsin(1/8) is −1/8 and the shared sine is cos(arcsin(1/8)) = 3√7/8.
fn g_rotations() -> [Rotation; 2] {
    let hinge = pt(fe(-2, 1), fe(0, 1));
    let sin = FieldElement::sqrt_rational(&rat(63, 64)).unwrap();
    [
        Rotation::try_new(fe(-1, 8), sin.clone(), hinge.clone()).unwrap(),
        Rotation::try_new(fe(1, 8), sin, hinge).unwrap(),
    ]
}

fn build_g() -> UnitDistanceGraph {
    let y = y_points();
    let [r1, r2] = g_rotations();
    let mut a = Assembly::new();
    for p in &y {
        a.add(r1.apply(p));
        a.add(r2.apply(p));
    }
    a.build()
}
