//! Unit-distance graphs over exact points, plus detection of the structural
//! features the colouring arguments count: hexagon-with-centre copies, Moser
//! spindles, unit triangles.
//!
//! Edges are never stored as input: they are always recomputed from geometry,
//! because the constructions rely on incidental unit pairs between assembled
//! parts. Candidate pairs come from a float grid prefilter; the exact
//! distance test is authoritative, so the prefilter only has to be generous
//! enough never to drop a true pair (float error on these coordinates is
//! around 1e-14 against a 1e-6 window).

use std::collections::{BTreeMap, HashMap};

use crate::field::FieldElement;
use crate::geometry::{Isometry, Point, Rotation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("annotation {name:?} references vertex {index} out of range")]
    AnnotationOutOfRange { name: String, index: u32 },
    #[error("stored edge list disagrees with recomputed unit pairs")]
    EdgeMismatch,
    #[error("malformed graph data: {0}")]
    Malformed(String),
}

/// A hexagon-plus-centre copy. `ring` is in cyclic order (consecutive members
/// at unit distance), starting at the member with the smallest vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HexCopy {
    pub centre: u32,
    pub ring: [u32; 6],
}

impl HexCopy {
    /// The two alternating ring triples; each is an equilateral √3 triangle,
    /// and these are the only places a monochromatic triple can appear in a
    /// properly coloured copy.
    pub fn triples(&self) -> [[u32; 3]; 2] {
        let r = &self.ring;
        [[r[0], r[2], r[4]], [r[1], r[3], r[5]]]
    }

    pub fn members(&self) -> [u32; 7] {
        let r = &self.ring;
        [self.centre, r[0], r[1], r[2], r[3], r[4], r[5]]
    }
}

/// Two unit rhombi sharing `apex`, far tips joined by a unit edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Spindle {
    pub apex: u32,
    pub tips: [u32; 2],
    /// Rhombus midpoints: `mids[i]` are the common neighbours of apex and
    /// tips[i].
    pub mids: [[u32; 2]; 2],
}

impl Spindle {
    pub fn members(&self) -> [u32; 7] {
        [
            self.apex,
            self.tips[0],
            self.tips[1],
            self.mids[0][0],
            self.mids[0][1],
            self.mids[1][0],
            self.mids[1][1],
        ]
    }
}

/// Graph total plus per-vertex membership counts for a feature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCount {
    pub total: usize,
    pub per_vertex: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub h_copies: usize,
    pub spindles: usize,
    pub triangles: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitDistanceGraph {
    vertices: Vec<Point>,
    coords: Vec<(f64, f64)>,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    annotations: BTreeMap<String, Vec<u32>>,
}

impl UnitDistanceGraph {
    /// Build from points, deduplicating by exact equality. First occurrence
    /// wins, so input order is preserved.
    pub fn from_points(points: Vec<Point>) -> Self {
        let mut seen: HashMap<Point, ()> = HashMap::with_capacity(points.len());
        let mut vertices = Vec::with_capacity(points.len());
        for p in points {
            if !seen.contains_key(&p) {
                seen.insert(p.clone(), ());
                vertices.push(p);
            }
        }
        Self::assemble(vertices)
    }

    /// Deduplicate, then sort by the structural coefficient order. Two builds
    /// of the same point set are bit-identical regardless of input order.
    pub fn from_points_canonical(mut points: Vec<Point>) -> Self {
        points.sort_unstable();
        points.dedup();
        Self::assemble(points)
    }

    fn assemble(vertices: Vec<Point>) -> Self {
        let coords: Vec<(f64, f64)> = vertices.iter().map(Point::to_f64_pair).collect();
        let edges = pairs_at_distance2(&vertices, &coords, &FieldElement::one());
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        UnitDistanceGraph {
            vertices,
            coords,
            edges,
            adj,
            annotations: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, v: u32) -> &Point {
        &self.vertices[v as usize]
    }

    pub fn coords_f64(&self) -> &[(f64, f64)] {
        &self.coords
    }

    /// Sorted list of (u, v) with u < v.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Exact point → index lookup, borrowed from the vertex list.
    pub fn point_index(&self) -> HashMap<&Point, u32> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u32))
            .collect()
    }

    pub fn annotations(&self) -> &BTreeMap<String, Vec<u32>> {
        &self.annotations
    }

    pub fn annotation(&self, name: &str) -> Option<&[u32]> {
        self.annotations.get(name).map(Vec::as_slice)
    }

    pub fn set_annotation(&mut self, name: &str, indices: Vec<u32>) {
        let n = self.vertex_count() as u32;
        assert!(
            indices.iter().all(|&i| i < n),
            "annotation {name:?} index out of range"
        );
        self.annotations.insert(name.to_string(), indices);
    }

    /// Deduplicated union: self's vertices keep their indices, the other
    /// graph's new vertices follow; edges recomputed globally so cross pairs
    /// appear. Annotations are carried over from both sides (remapped; on a
    /// name collision the index lists are merged).
    pub fn union(&self, other: &Self) -> Self {
        let mut points = self.vertices.clone();
        points.extend(other.vertices.iter().cloned());
        let mut g = Self::from_points(points);
        let idx = {
            let map = g.point_index();
            other
                .vertices
                .iter()
                .map(|p| map[p])
                .collect::<Vec<u32>>()
        };
        let mut merged = self.annotations.clone();
        for (name, list) in &other.annotations {
            let remapped: Vec<u32> = list.iter().map(|&v| idx[v as usize]).collect();
            let entry = merged.entry(name.clone()).or_default();
            for v in remapped {
                if !entry.contains(&v) {
                    entry.push(v);
                }
            }
        }
        g.annotations = merged;
        g
    }

    /// Pointwise image under an isometry. Distinct points stay distinct, so
    /// indices are preserved and annotations carry over verbatim; the edge
    /// set is unchanged by distance preservation.
    pub fn transform(&self, iso: &Isometry) -> Self {
        let points: Vec<Point> = self.vertices.iter().map(|p| iso.apply(p)).collect();
        let mut g = Self::assemble(points);
        debug_assert_eq!(g.edges, self.edges);
        g.annotations = self.annotations.clone();
        g
    }

    /// All hexagon-plus-centre copies: for each vertex c, each unit
    /// neighbour is walked around c by exact 60° steps; a copy is reported
    /// when all six stops are vertices. Keyed by (centre, minimal ring
    /// member) so each copy appears once.
    pub fn h_copies(&self) -> Vec<HexCopy> {
        let idx = self.point_index();
        let mut out = Vec::new();
        for c in 0..self.vertex_count() as u32 {
            let rot = Rotation::sixth_turn(self.vertices[c as usize].clone());
            'nbr: for &u in self.neighbours(c) {
                let mut ring = [0u32; 6];
                ring[0] = u;
                let mut p = self.vertices[u as usize].clone();
                for slot in ring.iter_mut().skip(1) {
                    p = rot.apply(&p);
                    match idx.get(&p) {
                        Some(&v) => *slot = v,
                        None => continue 'nbr,
                    }
                }
                if ring.iter().min() == Some(&u) {
                    out.push(HexCopy { centre: c, ring });
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All embedded Moser spindles. A rhombus is a vertex pair at squared
    /// distance 3 with two common unit neighbours; a spindle is two rhombi
    /// sharing an apex whose far tips are joined by a unit edge.
    pub fn spindles(&self) -> Vec<Spindle> {
        let three = FieldElement::from_integer(3);
        let sqrt3_pairs = pairs_at_distance2(&self.vertices, &self.coords, &three);
        let mut partners: Vec<Vec<(u32, [u32; 2])>> = vec![Vec::new(); self.vertex_count()];
        for (x, y) in sqrt3_pairs {
            let common = sorted_intersection(self.neighbours(x), self.neighbours(y));
            if let [m0, m1] = common[..] {
                partners[x as usize].push((y, [m0, m1]));
                partners[y as usize].push((x, [m0, m1]));
            }
        }
        let mut out = Vec::new();
        for apex in 0..self.vertex_count() as u32 {
            let ps = &partners[apex as usize];
            for (a, &(t0, m0)) in ps.iter().enumerate() {
                for &(t1, m1) in &ps[a + 1..] {
                    if self.has_edge(t0.min(t1), t0.max(t1)) {
                        out.push(Spindle {
                            apex,
                            tips: [t0.min(t1), t0.max(t1)],
                            mids: if t0 < t1 { [m0, m1] } else { [m1, m0] },
                        });
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn spindle_counts(&self) -> FeatureCount {
        let spindles = self.spindles();
        let mut per_vertex = vec![0u32; self.vertex_count()];
        for s in &spindles {
            for v in s.members() {
                per_vertex[v as usize] += 1;
            }
        }
        FeatureCount {
            total: spindles.len(),
            per_vertex,
        }
    }

    /// All 3-cliques, each listed once with ascending indices.
    pub fn triangles(&self) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            for &w in sorted_intersection(self.neighbours(u), self.neighbours(v)).iter() {
                if w > v {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    pub fn triangle_counts(&self) -> FeatureCount {
        let triangles = self.triangles();
        let mut per_vertex = vec![0u32; self.vertex_count()];
        for t in &triangles {
            for &v in t {
                per_vertex[v as usize] += 1;
            }
        }
        FeatureCount {
            total: triangles.len(),
            per_vertex,
        }
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            max_degree: self.max_degree(),
            h_copies: self.h_copies().len(),
            spindles: self.spindles().len(),
            triangles: self.triangles().len(),
        }
    }

    /// Full O(n²) exact recheck of the edge set: sound (every stored edge is
    /// a unit pair) and complete (no unit pair is missing). Test support.
    pub fn verify_edges_exhaustive(&self) -> bool {
        let one = FieldElement::one();
        let mut count = 0usize;
        for u in 0..self.vertex_count() as u32 {
            for v in u + 1..self.vertex_count() as u32 {
                let is_unit = self.vertices[u as usize].dist2(&self.vertices[v as usize]) == one;
                if is_unit != self.has_edge(u, v) {
                    return false;
                }
                count += is_unit as usize;
            }
        }
        count == self.edge_count()
    }
}

/// On-disk JSON shape: each vertex is [coeffs_x, coeffs_y, approx_x,
/// approx_y] with the coefficient arrays in interchange order. The float
/// approximations are for human inspection only and are never read back.
#[derive(serde::Serialize, serde::Deserialize)]
struct GraphFile {
    vertices: Vec<(Vec<String>, Vec<String>, f64, f64)>,
    edges: Vec<(u32, u32)>,
    annotations: BTreeMap<String, Vec<u32>>,
}

impl UnitDistanceGraph {
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            vertices: self
                .vertices
                .iter()
                .zip(&self.coords)
                .map(|(p, &(x, y))| (p.x.serial_coeffs(), p.y.serial_coeffs(), x, y))
                .collect(),
            edges: self.edges.clone(),
            annotations: self.annotations.clone(),
        };
        serde_json::to_string(&file).expect("graph serialisation cannot fail")
    }

    /// Parse and validate. The stored edge list is advisory: edges are
    /// recomputed from the exact coordinates and any disagreement rejects the
    /// file, as do duplicate vertices and out-of-range annotations.
    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(s).map_err(|e| GraphError::Malformed(e.to_string()))?;
        let mut points = Vec::with_capacity(file.vertices.len());
        for (cx, cy, _, _) in &file.vertices {
            let x = FieldElement::from_serial_coeffs(cx).map_err(GraphError::Malformed)?;
            let y = FieldElement::from_serial_coeffs(cy).map_err(GraphError::Malformed)?;
            points.push(Point::new(x, y));
        }
        let mut seen: HashMap<&Point, ()> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if seen.insert(p, ()).is_some() {
                return Err(GraphError::DuplicateVertex(i));
            }
        }
        let n = points.len() as u32;
        let mut listed = file.edges;
        for e in listed.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        listed.sort_unstable();
        let g = Self::assemble(points);
        if g.edges != listed {
            return Err(GraphError::EdgeMismatch);
        }
        for (name, list) in &file.annotations {
            if let Some(&bad) = list.iter().find(|&&i| i >= n) {
                return Err(GraphError::AnnotationOutOfRange {
                    name: name.clone(),
                    index: bad,
                });
            }
        }
        let mut g = g;
        g.annotations = file.annotations;
        Ok(g)
    }
}

/// All vertex pairs (u < v) at exact squared distance `target`, via a unit
/// grid on the float coordinates. The neighbourhood reach covers the target
/// distance plus one spare cell: a float approximation sitting an ulp across
/// an integer boundary shifts a cell index by one, and a pair straddling two
/// such boundaries would escape the tight reach. Any candidate surviving the
/// float window faces the exact test, so the result is exactly the true set.
fn pairs_at_distance2(
    vertices: &[Point],
    coords: &[(f64, f64)],
    target: &FieldElement,
) -> Vec<(u32, u32)> {
    let t = target.to_f64();
    assert!(t > 0.0);
    let reach = t.sqrt().ceil() as i64 + 1;
    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    for (i, &(x, y)) in coords.iter().enumerate() {
        grid.entry((x.floor() as i64, y.floor() as i64))
            .or_default()
            .push(i as u32);
    }
    let mut out = Vec::new();
    for (i, &(x, y)) in coords.iter().enumerate() {
        let i = i as u32;
        let (cx, cy) = (x.floor() as i64, y.floor() as i64);
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                let Some(cell) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &j in cell {
                    if j <= i {
                        continue;
                    }
                    let (jx, jy) = coords[j as usize];
                    let d2 = (jx - x) * (jx - x) + (jy - y) * (jy - y);
                    if (d2 - t).abs() <= 1e-6
                        && vertices[i as usize].dist2(&vertices[j as usize]) == *target
                    {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, FieldElement};

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::from_rational(rat(n, d))
    }

    fn pt(x: FieldElement, y: FieldElement) -> Point {
        Point::new(x, y)
    }

    fn hexagon_with_centre() -> Vec<Point> {
        let rot = Rotation::sixth_turn(Point::origin());
        let mut pts = vec![Point::origin()];
        let mut p = pt(fe(1, 1), fe(0, 1));
        for _ in 0..6 {
            pts.push(p.clone());
            p = rot.apply(&p);
        }
        pts
    }

    #[test]
    fn unit_segment_and_triangle_edges() {
        let g = UnitDistanceGraph::from_points(vec![
            Point::origin(),
            pt(fe(1, 1), fe(0, 1)),
            pt(fe(1, 2), FieldElement::sqrt_rational(&rat(3, 4)).unwrap()),
            pt(fe(5, 1), fe(5, 1)), // far away
        ]);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.triangles(), vec![[0, 1, 2]]);
        assert_eq!(g.degree(3), 0);
        assert!(g.verify_edges_exhaustive());
    }

    #[test]
    fn duplicate_points_are_merged_stably() {
        let a = Point::origin();
        let b = pt(fe(1, 1), fe(0, 1));
        let g = UnitDistanceGraph::from_points(vec![a.clone(), b.clone(), a.clone(), b.clone()]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.vertices()[0], a);
        assert_eq!(g.vertices()[1], b);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn canonical_build_ignores_input_order() {
        let mut pts = hexagon_with_centre();
        let g1 = UnitDistanceGraph::from_points_canonical(pts.clone());
        pts.reverse();
        pts.extend(hexagon_with_centre()); // duplicates too
        let g2 = UnitDistanceGraph::from_points_canonical(pts);
        assert_eq!(g1.vertices(), g2.vertices());
        assert_eq!(g1.edges(), g2.edges());
    }

    #[test]
    fn hexagon_graph_features() {
        let g = UnitDistanceGraph::from_points(hexagon_with_centre());
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.max_degree(), 6);
        let copies = g.h_copies();
        assert_eq!(copies.len(), 1);
        let copy = copies[0];
        assert_eq!(copy.centre, 0);
        assert_eq!(copy.ring[0], 1);
        // ring is cyclically unit-adjacent and centred
        for k in 0..6 {
            assert!(g.has_edge(copy.centre.min(copy.ring[k]), copy.centre.max(copy.ring[k])));
            let a = copy.ring[k];
            let b = copy.ring[(k + 1) % 6];
            assert!(g.has_edge(a.min(b), a.max(b)));
        }
        // the two triples are pairwise at squared distance 3
        let three = FieldElement::from_integer(3);
        for triple in copy.triples() {
            for i in 0..3 {
                for j in i + 1..3 {
                    assert_eq!(
                        g.vertex(triple[i]).dist2(g.vertex(triple[j])),
                        three
                    );
                }
            }
        }
        assert_eq!(g.spindles().len(), 0);
        assert_eq!(g.triangles().len(), 6);
        let tc = g.triangle_counts();
        assert_eq!(tc.total, 6);
        assert_eq!(tc.per_vertex.iter().sum::<u32>(), 18);
        assert_eq!(tc.per_vertex[0], 6);
    }

    #[test]
    fn union_is_idempotent_and_finds_cross_edges() {
        let g = UnitDistanceGraph::from_points(hexagon_with_centre());
        let again = g.union(&g);
        assert_eq!(again.vertex_count(), g.vertex_count());
        assert_eq!(again.edges(), g.edges());

        // two unit segments that only touch across the union
        let left = UnitDistanceGraph::from_points(vec![
            pt(fe(-1, 1), fe(0, 1)),
            Point::origin(),
        ]);
        let right = UnitDistanceGraph::from_points(vec![
            pt(fe(1, 1), fe(0, 1)),
            pt(fe(2, 1), fe(0, 1)),
        ]);
        let joined = left.union(&right);
        assert_eq!(joined.vertex_count(), 4);
        // cross edge 0-? : (0,0) to (1,0)
        assert_eq!(joined.edge_count(), 3);
    }

    #[test]
    fn union_remaps_annotations() {
        let mut left = UnitDistanceGraph::from_points(vec![
            Point::origin(),
            pt(fe(1, 1), fe(0, 1)),
        ]);
        left.set_annotation("mark", vec![1]);
        let mut right = UnitDistanceGraph::from_points(vec![
            pt(fe(1, 1), fe(0, 1)),
            pt(fe(2, 1), fe(0, 1)),
        ]);
        right.set_annotation("mark", vec![0, 1]);
        right.set_annotation("own", vec![1]);
        let joined = left.union(&right);
        // right's (1,0) is left's index 1; right's (2,0) becomes index 2
        assert_eq!(joined.annotation("mark"), Some(&[1, 2][..]));
        assert_eq!(joined.annotation("own"), Some(&[2][..]));
    }

    #[test]
    fn transform_preserves_structure() {
        let g = UnitDistanceGraph::from_points(hexagon_with_centre());
        let ident = Isometry::Sequence(vec![]);
        let same = g.transform(&ident);
        assert_eq!(same.vertices(), g.vertices());

        let rot = Isometry::Rotate(Rotation::sixth_turn(Point::origin()));
        let turned = g.transform(&rot);
        // same point set up to order: centre fixed, ring permuted
        let mut a: Vec<Point> = g.vertices().to_vec();
        let mut b: Vec<Point> = turned.vertices().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(turned.stats(), g.stats());
    }

    #[test]
    fn sqrt3_pair_scan_matches_exhaustive() {
        let pts = hexagon_with_centre();
        let coords: Vec<(f64, f64)> = pts.iter().map(Point::to_f64_pair).collect();
        let three = FieldElement::from_integer(3);
        let scanned = pairs_at_distance2(&pts, &coords, &three);
        let mut expect = Vec::new();
        for i in 0..pts.len() as u32 {
            for j in i + 1..pts.len() as u32 {
                if pts[i as usize].dist2(&pts[j as usize]) == three {
                    expect.push((i, j));
                }
            }
        }
        assert_eq!(scanned, expect);
        assert_eq!(scanned.len(), 6); // alternating hexagon chords
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn annotation_bounds_are_enforced() {
        let mut g = UnitDistanceGraph::from_points(vec![Point::origin()]);
        g.set_annotation("bad", vec![7]);
    }

    #[test]
    fn json_roundtrip_preserves_everything() {
        let mut g = UnitDistanceGraph::from_points(hexagon_with_centre());
        g.set_annotation("centre", vec![0]);
        g.set_annotation("hexagon", vec![1, 2, 3, 4, 5, 6]);
        let text = g.to_json();
        let back = UnitDistanceGraph::from_json(&text).unwrap();
        assert_eq!(back.vertices(), g.vertices());
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.annotations(), g.annotations());
    }

    #[test]
    fn json_load_rejects_corruption() {
        let mut g = UnitDistanceGraph::from_points(hexagon_with_centre());
        g.set_annotation("centre", vec![0]);
        let text = g.to_json();

        // tampered edge list: drop one edge
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        let edges = file["edges"].as_array_mut().unwrap();
        edges.pop();
        let tampered = serde_json::to_string(&file).unwrap();
        assert_eq!(
            UnitDistanceGraph::from_json(&tampered),
            Err(GraphError::EdgeMismatch)
        );

        // duplicated vertex
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        let verts = file["vertices"].as_array_mut().unwrap();
        let first = verts[0].clone();
        verts.push(first);
        let tampered = serde_json::to_string(&file).unwrap();
        assert_eq!(
            UnitDistanceGraph::from_json(&tampered),
            Err(GraphError::DuplicateVertex(7))
        );

        // annotation out of range
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        file["annotations"]["centre"] = serde_json::json!([99]);
        let tampered = serde_json::to_string(&file).unwrap();
        assert!(matches!(
            UnitDistanceGraph::from_json(&tampered),
            Err(GraphError::AnnotationOutOfRange { .. })
        ));

        // not JSON at all
        assert!(matches!(
            UnitDistanceGraph::from_json("]["),
            Err(GraphError::Malformed(_))
        ));

        // unordered edge pairs are normalised, not rejected
        let mut file: serde_json::Value = serde_json::from_str(&text).unwrap();
        let edges = file["edges"].as_array_mut().unwrap();
        for e in edges.iter_mut() {
            let pair = e.as_array().unwrap();
            *e = serde_json::json!([pair[1], pair[0]]);
        }
        let reordered = serde_json::to_string(&file).unwrap();
        assert!(UnitDistanceGraph::from_json(&reordered).is_ok());
    }
}
