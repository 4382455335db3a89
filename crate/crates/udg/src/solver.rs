//! Depth-first k-colouring search with forced-colour propagation, and the
//! property checks built on top of it.
//!
//! The kernel keeps one count per (vertex, colour): how many active sources
//! currently forbid that colour. Sources are coloured neighbours and the lazy
//! constraint rules (two of a triple sharing a colour forbid it on the third;
//! either end of a non-mono pair forbids its colour on the other end).
//! Assignments and undos touch the counts symmetrically, which works because
//! undo happens in strict reverse assignment order, so every condition that
//! guarded an increment holds again at decrement time.
//!
//! After propagation reaches a fixpoint without conflict, every uncoloured
//! vertex has at least two free colours (one free would have been forced), so
//! a fresh decision never starts exhausted.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::constructions::{self, ConstructionId};
use crate::field::FieldElement;
use crate::graph::UnitDistanceGraph;

/// Total or partial vertex colouring; values are 1-based colour indices
/// aligned with the graph's vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Colouring(pub Vec<u8>);

impl Colouring {
    pub fn get(&self, v: u32) -> u8 {
        self.0[v as usize]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// Pin a vertex to a colour before the search starts.
    FixColour { vertex: u32, colour: u8 },
    /// The three vertices must not all receive the same colour.
    ForbidMonoTriple { vertices: [u32; 3] },
    /// The two vertices must not receive the same colour (a virtual edge).
    RequireNonMono { vertices: [u32; 2] },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub decisions: u64,
    pub propagations: u64,
    pub backtracks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "colouring")]
pub enum SearchOutcome {
    Satisfiable(Colouring),
    Unsatisfiable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Satisfiable(_))
    }

    pub fn colouring(&self) -> Option<&Colouring> {
        match &self.outcome {
            SearchOutcome::Satisfiable(c) => Some(c),
            SearchOutcome::Unsatisfiable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColouringError {
    #[error("colouring has {got} entries for a graph with {want} vertices")]
    LengthMismatch { got: usize, want: usize },
    #[error("vertex {vertex} has colour {colour}, outside 1..={k}")]
    ColourOutOfRange { vertex: u32, colour: u8, k: u8 },
    #[error("edge ({u}, {v}) is monochromatic in colour {colour}")]
    ImproperEdge { u: u32, v: u32, colour: u8 },
    #[error("constraint {index} is violated")]
    ConstraintViolated { index: usize },
}

/// Re-checks a colouring from scratch: total, in range, proper on every
/// edge, and consistent with every constraint.
pub fn validate_colouring(
    g: &UnitDistanceGraph,
    k: u8,
    colouring: &Colouring,
    constraints: &[Constraint],
) -> Result<(), ColouringError> {
    let cols = &colouring.0;
    if cols.len() != g.vertex_count() {
        return Err(ColouringError::LengthMismatch {
            got: cols.len(),
            want: g.vertex_count(),
        });
    }
    for (v, &c) in cols.iter().enumerate() {
        if c < 1 || c > k {
            return Err(ColouringError::ColourOutOfRange {
                vertex: v as u32,
                colour: c,
                k,
            });
        }
    }
    for &(u, v) in g.edges() {
        if cols[u as usize] == cols[v as usize] {
            return Err(ColouringError::ImproperEdge {
                u,
                v,
                colour: cols[u as usize],
            });
        }
    }
    for (index, con) in constraints.iter().enumerate() {
        let ok = match con {
            Constraint::FixColour { vertex, colour } => cols[*vertex as usize] == *colour,
            Constraint::ForbidMonoTriple { vertices: [a, b, c] } => {
                !(cols[*a as usize] == cols[*b as usize] && cols[*b as usize] == cols[*c as usize])
            }
            Constraint::RequireNonMono { vertices: [a, b] } => {
                cols[*a as usize] != cols[*b as usize]
            }
        };
        if !ok {
            return Err(ColouringError::ConstraintViolated { index });
        }
    }
    Ok(())
}

/// Static search order: fixed vertices first in the given order, then the
/// rest by spindle membership, degree, and triangle membership, all
/// descending, with the vertex index as the final tie-break.
pub fn order_vertices(g: &UnitDistanceGraph, fixed: &[u32]) -> Vec<u32> {
    let n = g.vertex_count() as u32;
    let spindle = g.spindle_counts().per_vertex;
    let triangle = g.triangle_counts().per_vertex;
    let mut seen = vec![false; n as usize];
    let mut order = Vec::with_capacity(n as usize);
    for &v in fixed {
        assert!(v < n, "fixed vertex {v} out of range");
        if !seen[v as usize] {
            seen[v as usize] = true;
            order.push(v);
        }
    }
    let mut rest: Vec<u32> = (0..n).filter(|&v| !seen[v as usize]).collect();
    rest.sort_unstable_by(|&a, &b| {
        spindle[b as usize]
            .cmp(&spindle[a as usize])
            .then_with(|| g.degree(b).cmp(&g.degree(a)))
            .then_with(|| triangle[b as usize].cmp(&triangle[a as usize]))
            .then_with(|| a.cmp(&b))
    });
    order.extend(rest);
    order
}

#[derive(Clone, Copy)]
enum Compiled {
    Triple([u32; 3]),
    Pair([u32; 2]),
}

struct Kernel<'a> {
    g: &'a UnitDistanceGraph,
    k: u8,
    colour: Vec<u8>,
    /// counts[v·k + c−1]: active sources forbidding colour c at v.
    counts: Vec<u32>,
    trail: Vec<u32>,
    compiled: Vec<Compiled>,
    member_of: Vec<Vec<u32>>,
    queue: VecDeque<u32>,
    stats: SearchStats,
}

struct Frame {
    vertex: u32,
    cursor: usize,
    mark: usize,
    next_colour: u8,
    taken: u8,
}

impl<'a> Kernel<'a> {
    fn new(g: &'a UnitDistanceGraph, k: u8, constraints: &[Constraint]) -> Self {
        assert!(k >= 1, "at least one colour required");
        assert!(k <= 64, "colour count {k} unreasonably large");
        let n = g.vertex_count();
        let mut compiled = Vec::new();
        let mut member_of = vec![Vec::new(); n];
        for con in constraints {
            match con {
                Constraint::FixColour { vertex, colour } => {
                    assert!((*vertex as usize) < n, "constraint vertex out of range");
                    assert!(
                        *colour >= 1 && *colour <= k,
                        "fixed colour {colour} outside 1..={k}"
                    );
                }
                Constraint::ForbidMonoTriple { vertices } => {
                    let [a, b, c] = *vertices;
                    assert!(
                        a != b && b != c && a != c,
                        "triple constraint vertices must be distinct"
                    );
                    for v in *vertices {
                        assert!((v as usize) < n, "constraint vertex out of range");
                        member_of[v as usize].push(compiled.len() as u32);
                    }
                    compiled.push(Compiled::Triple(*vertices));
                }
                Constraint::RequireNonMono { vertices } => {
                    let [a, b] = *vertices;
                    assert!(a != b, "pair constraint vertices must be distinct");
                    for v in *vertices {
                        assert!((v as usize) < n, "constraint vertex out of range");
                        member_of[v as usize].push(compiled.len() as u32);
                    }
                    compiled.push(Compiled::Pair(*vertices));
                }
            }
        }
        Kernel {
            g,
            k,
            colour: vec![0; n],
            counts: vec![0; n * k as usize],
            trail: Vec::with_capacity(n),
            compiled,
            member_of,
            queue: VecDeque::new(),
            stats: SearchStats::default(),
        }
    }

    #[inline]
    fn slot(&self, v: u32, c: u8) -> usize {
        v as usize * self.k as usize + (c - 1) as usize
    }

    #[inline]
    fn inc(&mut self, v: u32, c: u8) {
        let slot = self.slot(v, c);
        self.counts[slot] += 1;
        if self.counts[slot] == 1 {
            self.queue.push_back(v);
        }
    }

    #[inline]
    fn dec(&mut self, v: u32, c: u8) {
        let slot = self.slot(v, c);
        self.counts[slot] -= 1;
    }

    fn assign(&mut self, v: u32, c: u8) {
        debug_assert_eq!(self.colour[v as usize], 0);
        debug_assert_eq!(self.counts[self.slot(v, c)], 0);
        self.colour[v as usize] = c;
        self.trail.push(v);
        for i in 0..self.g.neighbours(v).len() {
            let w = self.g.neighbours(v)[i];
            if self.colour[w as usize] == 0 {
                self.inc(w, c);
            }
        }
        for i in 0..self.member_of[v as usize].len() {
            let con = self.compiled[self.member_of[v as usize][i] as usize];
            match con {
                Compiled::Triple(t) => {
                    let [p, q] = other_two(t, v);
                    let pc = self.colour[p as usize];
                    let qc = self.colour[q as usize];
                    debug_assert!(!(pc == c && qc == c), "completed a forbidden triple");
                    if pc == c && qc == 0 {
                        self.inc(q, c);
                    } else if qc == c && pc == 0 {
                        self.inc(p, c);
                    }
                }
                Compiled::Pair(pair) => {
                    let o = if pair[0] == v { pair[1] } else { pair[0] };
                    debug_assert_ne!(self.colour[o as usize], c, "completed a forbidden pair");
                    if self.colour[o as usize] == 0 {
                        self.inc(o, c);
                    }
                }
            }
        }
    }

    fn unassign(&mut self, v: u32) {
        let c = self.colour[v as usize];
        debug_assert_ne!(c, 0);
        for i in 0..self.g.neighbours(v).len() {
            let w = self.g.neighbours(v)[i];
            if self.colour[w as usize] == 0 {
                self.dec(w, c);
            }
        }
        for i in 0..self.member_of[v as usize].len() {
            let con = self.compiled[self.member_of[v as usize][i] as usize];
            match con {
                Compiled::Triple(t) => {
                    let [p, q] = other_two(t, v);
                    let pc = self.colour[p as usize];
                    let qc = self.colour[q as usize];
                    if pc == c && qc == 0 {
                        self.dec(q, c);
                    } else if qc == c && pc == 0 {
                        self.dec(p, c);
                    }
                }
                Compiled::Pair(pair) => {
                    let o = if pair[0] == v { pair[1] } else { pair[0] };
                    if self.colour[o as usize] == 0 {
                        self.dec(o, c);
                    }
                }
            }
        }
        self.colour[v as usize] = 0;
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.unassign(v);
        }
        self.queue.clear();
    }

    /// Assigns forced colours until the queue drains; false on a wipe-out.
    fn propagate(&mut self) -> bool {
        while let Some(w) = self.queue.pop_front() {
            if self.colour[w as usize] != 0 {
                continue;
            }
            let mut free = 0u8;
            let mut only = 0u8;
            for c in 1..=self.k {
                if self.counts[self.slot(w, c)] == 0 {
                    free += 1;
                    only = c;
                    if free > 1 {
                        break;
                    }
                }
            }
            match free {
                0 => return false,
                1 => {
                    self.stats.propagations += 1;
                    self.assign(w, only);
                }
                _ => {}
            }
        }
        true
    }

    /// Applies the fix constraints as a level-0 batch; false on conflict.
    fn apply_fixes(&mut self, constraints: &[Constraint]) -> bool {
        for con in constraints {
            if let Constraint::FixColour { vertex, colour } = con {
                let current = self.colour[*vertex as usize];
                if current == *colour {
                    continue;
                }
                if current != 0 || self.counts[self.slot(*vertex, *colour)] > 0 {
                    return false;
                }
                self.assign(*vertex, *colour);
            }
        }
        self.propagate()
    }

    /// Exhaustive DFS over the given static order. Calls the visitor on
    /// every solution; a false return stops the enumeration early.
    fn solve(mut self, constraints: &[Constraint], visit: &mut dyn FnMut(&[u8]) -> bool) -> (u64, SearchStats) {
        if !self.apply_fixes(constraints) {
            return (0, self.stats);
        }
        let fixed: Vec<u32> = constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::FixColour { vertex, .. } => Some(*vertex),
                _ => None,
            })
            .collect();
        let order = order_vertices(self.g, &fixed);
        let n = order.len();
        let mut frames: Vec<Frame> = Vec::new();
        let mut solutions = 0u64;
        let mut cursor = 0usize;
        loop {
            while cursor < n && self.colour[order[cursor] as usize] != 0 {
                cursor += 1;
            }
            if cursor == n {
                solutions += 1;
                if !visit(&self.colour) {
                    return (solutions, self.stats);
                }
                let Some(f) = frames.last_mut() else {
                    return (solutions, self.stats);
                };
                let mark = f.mark;
                f.next_colour = f.taken + 1;
                cursor = f.cursor;
                self.stats.backtracks += 1;
                self.undo_to(mark);
            } else {
                frames.push(Frame {
                    vertex: order[cursor],
                    cursor,
                    mark: self.trail.len(),
                    next_colour: 1,
                    taken: 0,
                });
            }
            'attempt: loop {
                let f = frames.last_mut().unwrap();
                let v = f.vertex;
                let mut chosen = 0u8;
                for c in f.next_colour..=self.k {
                    if self.counts[v as usize * self.k as usize + (c - 1) as usize] == 0 {
                        chosen = c;
                        break;
                    }
                }
                if chosen == 0 {
                    frames.pop();
                    let Some(parent) = frames.last_mut() else {
                        return (solutions, self.stats);
                    };
                    let mark = parent.mark;
                    parent.next_colour = parent.taken + 1;
                    cursor = parent.cursor;
                    self.stats.backtracks += 1;
                    self.undo_to(mark);
                    continue 'attempt;
                }
                f.taken = chosen;
                let mark = f.mark;
                self.stats.decisions += 1;
                self.assign(v, chosen);
                if self.propagate() {
                    cursor += 1;
                    break 'attempt;
                }
                self.undo_to(mark);
                let f = frames.last_mut().unwrap();
                f.next_colour = chosen + 1;
                self.stats.backtracks += 1;
            }
        }
    }
}

fn other_two(t: [u32; 3], v: u32) -> [u32; 2] {
    if t[0] == v {
        [t[1], t[2]]
    } else if t[1] == v {
        [t[0], t[2]]
    } else {
        [t[0], t[1]]
    }
}

/// First solution or UNSAT, with statistics.
pub fn search(g: &UnitDistanceGraph, k: u8, constraints: &[Constraint]) -> SearchResult {
    let mut found: Option<Colouring> = None;
    let (_, stats) = Kernel::new(g, k, constraints).solve(constraints, &mut |cols| {
        found = Some(Colouring(cols.to_vec()));
        false
    });
    let outcome = match found {
        Some(c) => {
            debug_assert!(validate_colouring(g, k, &c, constraints).is_ok());
            SearchOutcome::Satisfiable(c)
        }
        None => SearchOutcome::Unsatisfiable,
    };
    SearchResult { outcome, stats }
}

/// Visits every solution (1-based colours, vertex order). The visitor's
/// return value decides whether enumeration continues. Returns the number
/// of solutions visited and the search statistics.
pub fn search_all(
    g: &UnitDistanceGraph,
    k: u8,
    constraints: &[Constraint],
    mut visit: impl FnMut(&[u8]) -> bool,
) -> (u64, SearchStats) {
    Kernel::new(g, k, constraints).solve(constraints, &mut visit)
}

/// Unconstrained search; the colouring half of a chromatic-number question.
pub fn find_colouring(g: &UnitDistanceGraph, k: u8) -> SearchResult {
    search(g, k, &[])
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PropertyError {
    #[error("graph lacks required annotation {0:?}")]
    MissingAnnotation(&'static str),
    #[error("annotation {name:?} has {got} vertices; expected {want}")]
    BadAnnotation {
        name: &'static str,
        got: usize,
        want: usize,
    },
    #[error("graph too large for exhaustive enumeration: {0} vertices (limit 40)")]
    TooLarge(usize),
}

fn annotation_exact(
    g: &UnitDistanceGraph,
    name: &'static str,
    want: usize,
) -> Result<Vec<u32>, PropertyError> {
    let ids = g
        .annotation(name)
        .ok_or(PropertyError::MissingAnnotation(name))?;
    if ids.len() != want {
        return Err(PropertyError::BadAnnotation {
            name,
            got: ids.len(),
            want,
        });
    }
    Ok(ids.to_vec())
}

/// Both alternating triples of every H-copy in the graph, as constraints.
pub fn triple_free_constraints(g: &UnitDistanceGraph) -> Vec<Constraint> {
    let mut out = Vec::new();
    for copy in g.h_copies() {
        for triple in copy.triples() {
            out.push(Constraint::ForbidMonoTriple { vertices: triple });
        }
    }
    out
}

/// One orbit of proper colourings under geometric symmetry and colour
/// permutation. The representative is the lexicographically smallest member.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColouringClass {
    pub representative: Colouring,
    pub orbit_size: u64,
    pub contains_triple: bool,
}

/// All vertex permutations preserving every exact pairwise squared distance.
/// By rigidity these are exactly the plane isometries fixing the point set.
fn geometric_symmetries(g: &UnitDistanceGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut class_ids: HashMap<FieldElement, u16> = HashMap::new();
    let mut matrix = vec![0u16; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d2 = g.vertex(i as u32).dist2(g.vertex(j as u32));
            let next = class_ids.len() as u16 + 1;
            let id = *class_ids.entry(d2).or_insert(next);
            matrix[i * n + j] = id;
            matrix[j * n + i] = id;
        }
    }
    let mut out = Vec::new();
    let mut perm: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(
        perm: &mut Vec<u32>,
        used: &mut [bool],
        matrix: &[u16],
        n: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        let v = perm.len();
        if v == n {
            out.push(perm.clone());
            return;
        }
        for w in 0..n as u32 {
            if used[w as usize] {
                continue;
            }
            if (0..v).all(|u| matrix[u * n + v] == matrix[perm[u] as usize * n + w as usize]) {
                perm.push(w);
                used[w as usize] = true;
                extend(perm, used, matrix, n, out);
                perm.pop();
                used[w as usize] = false;
            }
        }
    }
    extend(&mut perm, &mut used, &matrix, n, &mut out);
    out
}

fn colour_permutations(k: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(k as usize);
    let mut used = vec![false; k as usize + 1];
    fn extend(current: &mut Vec<u8>, used: &mut [bool], k: u8, out: &mut Vec<Vec<u8>>) {
        if current.len() == k as usize {
            out.push(current.clone());
            return;
        }
        for c in 1..=k {
            if !used[c as usize] {
                used[c as usize] = true;
                current.push(c);
                extend(current, used, k, out);
                current.pop();
                used[c as usize] = false;
            }
        }
    }
    extend(&mut current, &mut used, k, &mut out);
    out
}

fn has_mono_triple(copies: &[crate::graph::HexCopy], cols: &[u8]) -> bool {
    copies.iter().any(|copy| {
        copy.triples().iter().any(|t| {
            let c = cols[t[0] as usize];
            c == cols[t[1] as usize] && c == cols[t[2] as usize]
        })
    })
}

/// Groups all proper colourings with palette {1..k} into orbits under the
/// graph's geometric symmetries combined with colour permutations.
pub fn enumerate_classes(
    g: &UnitDistanceGraph,
    k: u8,
) -> Result<Vec<ColouringClass>, PropertyError> {
    let n = g.vertex_count();
    if n > 40 {
        return Err(PropertyError::TooLarge(n));
    }
    let mut solutions: Vec<Vec<u8>> = Vec::new();
    search_all(g, k, &[], |cols| {
        solutions.push(cols.to_vec());
        true
    });
    solutions.sort_unstable();
    let solution_set: HashSet<&[u8]> = solutions.iter().map(|s| s.as_slice()).collect();
    let symmetries = geometric_symmetries(g);
    let sigmas = colour_permutations(k);
    let copies = g.h_copies();
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    let mut classes = Vec::new();
    for f in &solutions {
        if visited.contains(f) {
            continue;
        }
        let mut orbit: HashSet<Vec<u8>> = HashSet::new();
        for pi in &symmetries {
            for sigma in &sigmas {
                let image: Vec<u8> = (0..n)
                    .map(|v| sigma[(f[pi[v] as usize] - 1) as usize])
                    .collect();
                orbit.insert(image);
            }
        }
        for member in &orbit {
            debug_assert!(solution_set.contains(member.as_slice()));
            visited.insert(member.clone());
        }
        classes.push(ColouringClass {
            representative: Colouring(f.clone()),
            orbit_size: orbit.len() as u64,
            contains_triple: has_mono_triple(&copies, f),
        });
    }
    Ok(classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkingPattern {
    A,
    B,
    C,
    Other,
}

impl LinkingPattern {
    pub fn name(self) -> &'static str {
        match self {
            LinkingPattern::A => "a",
            LinkingPattern::B => "b",
            LinkingPattern::C => "c",
            LinkingPattern::Other => "other",
        }
    }
}

impl std::fmt::Display for LinkingPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn classify_cols(cols: &[u8], centre: u32, linking: &[u32]) -> LinkingPattern {
    let cc = cols[centre as usize];
    let mask: Vec<bool> = linking
        .iter()
        .map(|&v| cols[v as usize] == cc)
        .collect();
    let on = mask.iter().filter(|&&b| b).count();
    match on {
        6 => LinkingPattern::A,
        4 => {
            let off: Vec<usize> = (0..6).filter(|&i| !mask[i]).collect();
            let adjacent = off[1] - off[0] == 1 || (off[0] == 0 && off[1] == 5);
            let same =
                cols[linking[off[0]] as usize] == cols[linking[off[1]] as usize];
            if adjacent && same {
                LinkingPattern::B
            } else {
                LinkingPattern::Other
            }
        }
        2 => {
            let on_pos: Vec<usize> = (0..6).filter(|&i| mask[i]).collect();
            let opposite = on_pos[1] - on_pos[0] == 3;
            let second: Vec<u8> = (0..6)
                .filter(|&i| !mask[i])
                .map(|i| cols[linking[i] as usize])
                .collect();
            let uniform = second.windows(2).all(|w| w[0] == w[1]);
            if opposite && uniform {
                LinkingPattern::C
            } else {
                LinkingPattern::Other
            }
        }
        _ => LinkingPattern::Other,
    }
}

/// Classifies how the six linking vertices relate to the centre colour.
/// Requires a total colouring and the "centre"/"linking" annotations.
pub fn classify_linking(
    g: &UnitDistanceGraph,
    colouring: &Colouring,
) -> Result<LinkingPattern, PropertyError> {
    let centre = annotation_exact(g, "centre", 1)?[0];
    let linking = annotation_exact(g, "linking", 6)?;
    Ok(classify_cols(&colouring.0, centre, &linking))
}

#[derive(Debug, Clone, Serialize)]
pub struct HClassesReport {
    pub classes: usize,
    pub with_triple: usize,
    pub orbit_sizes: Vec<u64>,
    pub total_colourings: u64,
}

impl HClassesReport {
    pub fn pass(&self) -> bool {
        self.classes == 4 && self.with_triple == 2
    }
}

/// Enumerates the colouring classes of the 7-vertex hexagon wheel at k=4.
pub fn check_h_classes() -> HClassesReport {
    let h = constructions::build(ConstructionId::H);
    let classes = enumerate_classes(&h, 4).expect("the wheel is small enough");
    HClassesReport {
        classes: classes.len(),
        with_triple: classes.iter().filter(|c| c.contains_triple).count(),
        orbit_sizes: classes.iter().map(|c| c.orbit_size).collect(),
        total_colourings: classes.iter().map(|c| c.orbit_size).sum(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JLinkingReport {
    pub solutions: u64,
    pub a_count: u64,
    pub b_count: u64,
    pub c_count: u64,
    pub other_count: u64,
    pub witness_other: Option<Colouring>,
    pub stats: SearchStats,
}

impl JLinkingReport {
    /// Every triple-free colouring matches one of the three patterns.
    pub fn subset_ok(&self) -> bool {
        self.other_count == 0
    }

    pub fn all_patterns_seen(&self) -> bool {
        self.a_count > 0 && self.b_count > 0 && self.c_count > 0
    }

    pub fn pass(&self) -> bool {
        self.subset_ok() && self.all_patterns_seen()
    }
}

/// Enumerates every triple-free 4-colouring and classifies its linking
/// pattern. Extra constraints (possibly making the run infeasible) can be
/// appended for experiments.
pub fn check_j_linking(g: &UnitDistanceGraph) -> Result<JLinkingReport, PropertyError> {
    check_j_linking_with(g, &[])
}

pub fn check_j_linking_with(
    g: &UnitDistanceGraph,
    extra: &[Constraint],
) -> Result<JLinkingReport, PropertyError> {
    let centre = annotation_exact(g, "centre", 1)?[0];
    let linking = annotation_exact(g, "linking", 6)?;
    let mut constraints = triple_free_constraints(g);
    constraints.extend_from_slice(extra);
    let mut counts = [0u64; 4];
    let mut witness: Option<Colouring> = None;
    let (solutions, stats) = search_all(g, 4, &constraints, |cols| {
        let pattern = classify_cols(cols, centre, &linking);
        counts[pattern as usize] += 1;
        if pattern == LinkingPattern::Other && witness.is_none() {
            witness = Some(Colouring(cols.to_vec()));
        }
        true
    });
    Ok(JLinkingReport {
        solutions,
        a_count: counts[0],
        b_count: counts[1],
        c_count: counts[2],
        other_count: counts[3],
        witness_other: witness,
        stats,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalRun {
    pub diagonal: [u32; 2],
    pub unsat: bool,
    pub stats: SearchStats,
    pub witness: Option<Colouring>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KDiagonalsReport {
    pub runs: Vec<DiagonalRun>,
}

impl KDiagonalsReport {
    pub fn all_unsat(&self) -> bool {
        !self.runs.is_empty() && self.runs.iter().all(|r| r.unsat)
    }
}

/// For every linking diagonal: triple-free colourings must make the
/// diagonal monochromatic, so adding a non-mono requirement is UNSAT.
pub fn check_k_diagonals(g: &UnitDistanceGraph, k: u8) -> Result<KDiagonalsReport, PropertyError> {
    let linking_1 = annotation_exact(g, "linking_1", 6)?;
    let linking_2 = annotation_exact(g, "linking_2", 6)?;
    let base = triple_free_constraints(g);
    let mut runs = Vec::new();
    for set in [&linking_1, &linking_2] {
        for i in 0..3 {
            let diagonal = [set[i], set[i + 3]];
            let mut constraints = base.clone();
            constraints.push(Constraint::RequireNonMono { vertices: diagonal });
            let result = search(g, k, &constraints);
            runs.push(DiagonalRun {
                diagonal,
                unsat: !result.is_sat(),
                witness: result.colouring().cloned(),
                stats: result.stats,
            });
        }
    }
    Ok(KDiagonalsReport { runs })
}

#[derive(Debug, Clone, Serialize)]
pub struct LPropertyReport {
    pub copies: usize,
    pub unsat: bool,
    pub stats: SearchStats,
    pub witness: Option<Colouring>,
}

impl LPropertyReport {
    pub fn pass(&self) -> bool {
        self.unsat
    }
}

/// No k-colouring leaves every H-copy free of monochromatic triples.
pub fn check_l_property(g: &UnitDistanceGraph, k: u8) -> LPropertyReport {
    let constraints = triple_free_constraints(g);
    let copies = constraints.len() / 2;
    let result = search(g, k, &constraints);
    LPropertyReport {
        copies,
        unsat: !result.is_sat(),
        witness: result.colouring().cloned(),
        stats: result.stats,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MRun {
    pub fixes: Vec<Constraint>,
    pub unsat: bool,
    pub stats: SearchStats,
    pub witness: Option<Colouring>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MPropertyReport {
    pub runs: Vec<MRun>,
}

impl MPropertyReport {
    pub fn property_holds(&self) -> bool {
        !self.runs.is_empty() && self.runs.iter().all(|r| r.unsat)
    }
}

/// Fixes the central wheel to each triple-containing colouring class and
/// expects both searches to come back UNSAT.
pub fn check_m_property(m: &UnitDistanceGraph, k: u8) -> Result<MPropertyReport, PropertyError> {
    let centre = annotation_exact(m, "centre", 1)?[0];
    let hexagon = annotation_exact(m, "hexagon", 6)?;
    let h = constructions::build(ConstructionId::H);
    let h_centre = annotation_exact(&h, "centre", 1)?[0];
    let h_hexagon = annotation_exact(&h, "hexagon", 6)?;
    let classes = enumerate_classes(&h, 4)?;
    let mut runs = Vec::new();
    for class in classes.iter().filter(|c| c.contains_triple) {
        let rep = &class.representative.0;
        let mut fixes = vec![Constraint::FixColour {
            vertex: centre,
            colour: rep[h_centre as usize],
        }];
        for j in 0..6 {
            fixes.push(Constraint::FixColour {
                vertex: hexagon[j],
                colour: rep[h_hexagon[j] as usize],
            });
        }
        let result = search(m, k, &fixes);
        runs.push(MRun {
            fixes,
            unsat: !result.is_sat(),
            witness: result.colouring().cloned(),
            stats: result.stats,
        });
    }
    Ok(MPropertyReport { runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, ConstructionId};

    #[test]
    fn moser_chromatic_number_is_four() {
        let g = build(ConstructionId::Moser);
        let unsat = search(&g, 3, &[]);
        assert!(!unsat.is_sat());
        assert!(unsat.stats.backtracks > 0);
        let sat = search(&g, 4, &[]);
        let colouring = sat.colouring().expect("spindle is 4-colourable");
        validate_colouring(&g, 4, colouring, &[]).unwrap();
    }

    #[test]
    fn wheel_with_fixed_centre_and_spoke() {
        let g = build(ConstructionId::H);
        let centre = g.annotation("centre").unwrap()[0];
        let spoke = g.annotation("hexagon").unwrap()[0];
        let constraints = vec![
            Constraint::FixColour { vertex: centre, colour: 1 },
            Constraint::FixColour { vertex: spoke, colour: 2 },
        ];
        let result = search(&g, 4, &constraints);
        let c = result.colouring().expect("wheel is 4-colourable");
        assert_eq!(c.get(centre), 1);
        assert_eq!(c.get(spoke), 2);
        validate_colouring(&g, 4, c, &constraints).unwrap();
        assert!(!search(&g, 2, &[]).is_sat());
    }

    #[test]
    fn contradictory_fixes_are_unsat() {
        let g = build(ConstructionId::H);
        let centre = g.annotation("centre").unwrap()[0];
        let both = vec![
            Constraint::FixColour { vertex: centre, colour: 1 },
            Constraint::FixColour { vertex: centre, colour: 2 },
        ];
        assert!(!search(&g, 4, &both).is_sat());
        // fixing two adjacent vertices to one colour is equally impossible
        let spoke = g.annotation("hexagon").unwrap()[0];
        let clash = vec![
            Constraint::FixColour { vertex: centre, colour: 3 },
            Constraint::FixColour { vertex: spoke, colour: 3 },
        ];
        assert!(!search(&g, 4, &clash).is_sat());
    }

    #[test]
    fn search_order_prefers_spindle_then_degree() {
        let g = build(ConstructionId::Moser);
        let spindle = g.spindle_counts();
        assert!(spindle.per_vertex.iter().all(|&c| c == 1));
        let order = order_vertices(&g, &[]);
        assert_eq!(order.len(), 7);
        // the degree-4 apex leads; everyone else has degree 3
        assert_eq!(g.degree(order[0]), 4);
        // the remaining ties fall to triangle count, then index
        let triangles = g.triangle_counts().per_vertex;
        for pair in order[1..].windows(2) {
            let (a, b) = (pair[0], pair[1]);
            assert!(
                triangles[a as usize] > triangles[b as usize]
                    || (triangles[a as usize] == triangles[b as usize] && a < b)
            );
        }

        let empty = UnitDistanceGraph::from_points(vec![]);
        assert!(order_vertices(&empty, &[]).is_empty());
    }

    #[test]
    fn fixed_vertices_lead_the_order() {
        let g = build(ConstructionId::H);
        let order = order_vertices(&g, &[3, 1, 3]);
        assert_eq!(&order[..2], &[3, 1]);
        assert_eq!(order.len(), 7);
    }

    #[test]
    fn enumeration_counts_triangle_colourings() {
        let g = UnitDistanceGraph::from_points(crate::constructions::build(ConstructionId::H)
            .vertices()[..1]
            .to_vec());
        assert_eq!(g.vertex_count(), 1);
        let (count, _) = search_all(&g, 4, &[], |_| true);
        assert_eq!(count, 4);
        let classes = enumerate_classes(&g, 4).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].orbit_size, 4);
    }

    #[test]
    fn triangle_has_one_class() {
        use crate::field::{rat, FieldElement};
        use crate::geometry::Point;
        let g = UnitDistanceGraph::from_points(vec![
            Point::origin(),
            Point::new(
                FieldElement::from_rational(rat(1, 1)),
                FieldElement::from_rational(rat(0, 1)),
            ),
            Point::new(
                FieldElement::from_rational(rat(1, 2)),
                FieldElement::sqrt_rational(&rat(3, 4)).unwrap(),
            ),
        ]);
        assert_eq!(g.edge_count(), 3);
        let (count, _) = search_all(&g, 4, &[], |_| true);
        assert_eq!(count, 24);
        let classes = enumerate_classes(&g, 4).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].orbit_size, 24);
    }

    #[test]
    fn wheel_classes_match_brute_force() {
        let h = build(ConstructionId::H);
        let classes = enumerate_classes(&h, 4).unwrap();
        assert_eq!(classes.len(), 4);
        assert_eq!(classes.iter().filter(|c| c.contains_triple).count(), 2);
        // orbit sizes partition the full solution set
        let (total, _) = search_all(&h, 4, &[], |_| true);
        let orbit_sum: u64 = classes.iter().map(|c| c.orbit_size).sum();
        assert_eq!(orbit_sum, total);
        let report = check_h_classes();
        assert!(report.pass());
        assert_eq!(report.total_colourings, total);
    }

    #[test]
    fn enumeration_rejects_large_graphs() {
        let g = build(ConstructionId::K);
        assert_eq!(
            enumerate_classes(&g, 4),
            Err(PropertyError::TooLarge(61))
        );
    }

    #[test]
    fn wheel_independent_triples_are_the_two_alternating_ones() {
        // oracle for the stored triples: independent 3-sets of the wheel
        let h = build(ConstructionId::H);
        let n = h.vertex_count() as u32;
        let mut independent = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !h.has_edge(a, b) && !h.has_edge(a, c) && !h.has_edge(b, c) {
                        independent.push([a, b, c]);
                    }
                }
            }
        }
        independent.sort_unstable();
        let mut stored: Vec<[u32; 3]> = h.h_copies()[0]
            .triples()
            .iter()
            .map(|t| {
                let mut t = *t;
                t.sort_unstable();
                t
            })
            .collect();
        stored.sort_unstable();
        assert_eq!(independent, stored);
    }

    #[test]
    fn classify_patterns_directly() {
        let j = build(ConstructionId::J);
        let centre = j.annotation("centre").unwrap()[0];
        let linking = j.annotation("linking").unwrap().to_vec();
        let mut cols = vec![0u8; j.vertex_count()];
        cols[centre as usize] = 1;
        // all six linking vertices share the centre colour
        for &v in &linking {
            cols[v as usize] = 1;
        }
        assert_eq!(classify_cols(&cols, centre, &linking), LinkingPattern::A);
        // four consecutive (positions 2..5), the other two equal
        for (pos, &v) in linking.iter().enumerate() {
            cols[v as usize] = if pos == 0 || pos == 1 { 2 } else { 1 };
        }
        assert_eq!(classify_cols(&cols, centre, &linking), LinkingPattern::B);
        // wrap-around consecutive run
        for (pos, &v) in linking.iter().enumerate() {
            cols[v as usize] = if pos == 2 || pos == 3 { 2 } else { 1 };
        }
        assert_eq!(classify_cols(&cols, centre, &linking), LinkingPattern::B);
        // two opposite with uniform second colour
        for (pos, &v) in linking.iter().enumerate() {
            cols[v as usize] = if pos == 1 || pos == 4 { 1 } else { 3 };
        }
        assert_eq!(classify_cols(&cols, centre, &linking), LinkingPattern::C);
        // three colours on the ring match nothing
        for (pos, &v) in linking.iter().enumerate() {
            cols[v as usize] = [1, 1, 2, 2, 3, 3][pos];
        }
        assert_eq!(classify_cols(&cols, centre, &linking), LinkingPattern::Other);
        // four centre-coloured but not consecutive
        for (pos, &v) in linking.iter().enumerate() {
            cols[v as usize] = if pos == 0 || pos == 3 { 2 } else { 1 };
        }
        assert_eq!(classify_cols(&cols, centre, &linking), LinkingPattern::Other);

        let c = Colouring(cols);
        assert!(classify_linking(&j, &c).is_ok());
        let h = build(ConstructionId::H);
        let short = Colouring(vec![1; 7]);
        assert_eq!(
            classify_linking(&h, &short),
            Err(PropertyError::MissingAnnotation("linking"))
        );
    }

    #[test]
    fn j_linking_requires_annotations() {
        let h = build(ConstructionId::H);
        assert_eq!(
            check_j_linking(&h),
            Err(PropertyError::MissingAnnotation("linking"))
        );
    }

    impl PartialEq for JLinkingReport {
        fn eq(&self, other: &Self) -> bool {
            self.solutions == other.solutions
        }
    }

    #[test]
    fn infeasible_linking_run_is_vacuous() {
        let j = build(ConstructionId::J);
        let centre = j.annotation("centre").unwrap()[0];
        let impossible = vec![
            Constraint::FixColour { vertex: centre, colour: 1 },
            Constraint::RequireNonMono {
                vertices: [centre, centre + 1],
            },
            Constraint::FixColour { vertex: centre + 1, colour: 1 },
        ];
        let report = check_j_linking_with(&j, &impossible).unwrap();
        assert_eq!(report.solutions, 0);
        assert!(!report.all_patterns_seen());
        assert!(report.subset_ok());
    }

    #[test]
    fn pair_constraint_acts_as_virtual_edge() {
        // two far-apart points, forced apart by the constraint
        use crate::field::{rat, FieldElement};
        use crate::geometry::Point;
        let g = UnitDistanceGraph::from_points(vec![
            Point::origin(),
            Point::new(
                FieldElement::from_rational(rat(5, 1)),
                FieldElement::from_rational(rat(0, 1)),
            ),
        ]);
        assert_eq!(g.edge_count(), 0);
        let pair = [0u32, 1u32];
        let constraints = vec![Constraint::RequireNonMono { vertices: pair }];
        assert!(!search(&g, 1, &constraints).is_sat());
        let two = search(&g, 2, &constraints);
        let c = two.colouring().unwrap();
        assert_ne!(c.get(0), c.get(1));
        let (count, _) = search_all(&g, 2, &constraints, |_| true);
        assert_eq!(count, 2);
    }

    #[test]
    fn triple_constraint_blocks_only_full_monochromes() {
        use crate::field::{rat, FieldElement};
        use crate::geometry::Point;
        let far = |i: i64| {
            Point::new(
                FieldElement::from_rational(rat(10 * i, 1)),
                FieldElement::from_rational(rat(0, 1)),
            )
        };
        let g = UnitDistanceGraph::from_points(vec![far(0), far(1), far(2)]);
        assert_eq!(g.edge_count(), 0);
        let constraints = vec![Constraint::ForbidMonoTriple { vertices: [0, 1, 2] }];
        let (count, _) = search_all(&g, 2, &constraints, |_| true);
        // 2^3 total minus the two monochromes
        assert_eq!(count, 6);
        let (unconstrained, _) = search_all(&g, 2, &[], |_| true);
        assert_eq!(unconstrained, 8);
    }

    #[test]
    fn search_is_deterministic() {
        let g = build(ConstructionId::U);
        let a = search(&g, 4, &[]);
        let b = search(&g, 4, &[]);
        assert_eq!(a, b);
        assert!(a.is_sat());
    }

    #[test]
    fn colour_permutation_preserves_verdicts() {
        let g = build(ConstructionId::Moser);
        // swap colours 1 and 2 in the fixed constraints
        let original = vec![Constraint::FixColour { vertex: 0, colour: 1 }];
        let swapped = vec![Constraint::FixColour { vertex: 0, colour: 2 }];
        let a = search(&g, 4, &original);
        let b = search(&g, 4, &swapped);
        assert_eq!(a.is_sat(), b.is_sat());
        validate_colouring(&g, 4, a.colouring().unwrap(), &original).unwrap();
        validate_colouring(&g, 4, b.colouring().unwrap(), &swapped).unwrap();
        // and at k=3 both remain unsatisfiable
        let a3 = search(&g, 3, &original);
        let b3 = search(&g, 3, &swapped);
        assert!(!a3.is_sat() && !b3.is_sat());
    }

    #[test]
    fn validator_rejects_bad_colourings() {
        let g = build(ConstructionId::H);
        let n = g.vertex_count();
        assert!(matches!(
            validate_colouring(&g, 4, &Colouring(vec![1; n - 1]), &[]),
            Err(ColouringError::LengthMismatch { .. })
        ));
        assert!(matches!(
            validate_colouring(&g, 4, &Colouring(vec![5; n]), &[]),
            Err(ColouringError::ColourOutOfRange { .. })
        ));
        assert!(matches!(
            validate_colouring(&g, 4, &Colouring(vec![1; n]), &[]),
            Err(ColouringError::ImproperEdge { .. })
        ));
        let proper = search(&g, 4, &[]).colouring().unwrap().clone();
        let wrong_fix = vec![Constraint::FixColour {
            vertex: 0,
            colour: if proper.get(0) == 4 { 1 } else { proper.get(0) + 1 },
        }];
        assert!(matches!(
            validate_colouring(&g, 4, &proper, &wrong_fix),
            Err(ColouringError::ConstraintViolated { index: 0 })
        ));
    }

    #[test]
    fn empty_graph_has_one_empty_solution() {
        let g = UnitDistanceGraph::from_points(vec![]);
        let result = search(&g, 4, &[]);
        assert_eq!(result.colouring().unwrap().len(), 0);
        let (count, _) = search_all(&g, 4, &[], |_| true);
        assert_eq!(count, 1);
    }

    #[test]
    fn solver_verdicts_match_brute_force_on_small_graphs() {
        // exhaustive k^n oracle on U and the spindle, with and without
        // constraints
        for (id, k) in [
            (ConstructionId::Moser, 3),
            (ConstructionId::Moser, 4),
            (ConstructionId::T, 3),
            (ConstructionId::U, 4),
        ] {
            let g = build(id);
            let n = g.vertex_count();
            let mut brute = 0u64;
            let mut assignment = vec![1u8; n];
            'outer: loop {
                let proper = g
                    .edges()
                    .iter()
                    .all(|&(u, v)| assignment[u as usize] != assignment[v as usize]);
                if proper {
                    brute += 1;
                }
                for i in 0..n {
                    if assignment[i] < k {
                        assignment[i] += 1;
                        continue 'outer;
                    }
                    assignment[i] = 1;
                }
                break;
            }
            let (count, _) = search_all(&g, k, &[], |_| true);
            assert_eq!(count, brute, "{id:?} at k={k}");
        }
    }
}
