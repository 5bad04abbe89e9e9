//! Plabic fences and plabic graphs on the disk.
//!
//! A [`PlabicGraph`] is stored as a rotation system: every vertex keeps the
//! clockwise cyclic order of its outgoing darts.  Edge `e` owns the darts
//! `2e` (from `edges[e].0` to `edges[e].1`) and `2e + 1` (reverse).  Boundary
//! vertices carry labels `1..=N` that increase clockwise around the disk; the
//! boundary arcs between them are implicit and only materialise while faces
//! are traced.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::braid::BraidWord;
use crate::linalg::{q, Matrix, Q};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Internal(Color),
    Boundary(usize),
}

impl VertexKind {
    pub fn color(self) -> Option<Color> {
        match self {
            VertexKind::Internal(c) => Some(c),
            VertexKind::Boundary(_) => None,
        }
    }
}

/// A face of the disk cut along the graph, as the cyclic list of darts that
/// bound it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Interior darts bounding the face, in traversal order.
    pub darts: Vec<usize>,
    /// Vertices visited, aligned with `darts` (tail of each dart).
    pub vertices: Vec<usize>,
    /// True when part of the face boundary is the boundary circle.
    pub touches_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlabicGraph {
    kinds: Vec<VertexKind>,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
}

fn dart_edge(d: usize) -> usize {
    d / 2
}

fn dart_rev(d: usize) -> usize {
    d ^ 1
}

impl PlabicGraph {
    /// Builds a graph from an explicit rotation system (`rotation[v]` lists
    /// edge ids around `v` clockwise).  Validates the structure and the Euler
    /// characteristic of the disk closure.
    pub fn new(kinds: Vec<VertexKind>, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != kinds.len() {
            return Err(Error::InvalidGraph("rotation list length differs from vertex count".into()));
        }
        let mut rot_darts = Vec::with_capacity(kinds.len());
        let mut seen = vec![0u8; 2 * edges.len()];
        for (v, list) in rotation.iter().enumerate() {
            let mut darts = Vec::with_capacity(list.len());
            for &e in list {
                let (a, b) = *edges.get(e).ok_or_else(|| Error::InvalidGraph(format!("unknown edge {e}")))?;
                let d = if a == v && seen[2 * e] == 0 {
                    2 * e
                } else if b == v && seen[2 * e + 1] == 0 {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidGraph(format!("edge {e} listed at vertex {v} which is not a free endpoint")));
                };
                seen[d] = 1;
                darts.push(d);
            }
            rot_darts.push(darts);
        }
        if seen.contains(&0) {
            return Err(Error::InvalidGraph("some edge end is missing from the rotation system".into()));
        }
        let g = PlabicGraph { kinds, edges, rotation: rot_darts };
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from integer coordinates; the rotation system is read
    /// off the straight-line embedding (y axis pointing up).
    pub fn from_embedding(kinds: Vec<VertexKind>, positions: &[(i64, i64)], edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut around: Vec<Vec<(usize, (i64, i64))>> = vec![Vec::new(); kinds.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            let (pa, pb) = (positions[a], positions[b]);
            around[a].push((e, (pb.0 - pa.0, pb.1 - pa.1)));
            around[b].push((e, (pa.0 - pb.0, pa.1 - pb.1)));
        }
        let rotation = around
            .into_iter()
            .map(|mut list| {
                list.sort_by(|x, y| clockwise_cmp(x.1, y.1));
                list.into_iter().map(|(e, _)| e).collect()
            })
            .collect();
        Self::new(kinds, edges, rotation)
    }

    fn validate(&self) -> Result<()> {
        let mut labels: Vec<usize> = Vec::new();
        for (v, k) in self.kinds.iter().enumerate() {
            if let VertexKind::Boundary(l) = k {
                if self.rotation[v].len() != 1 {
                    return Err(Error::InvalidGraph(format!("boundary vertex {l} must have degree 1")));
                }
                labels.push(*l);
            }
        }
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| l != i + 1) {
            return Err(Error::InvalidGraph("boundary labels must be exactly 1..N".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidGraph("a plabic graph needs at least one boundary vertex".into()));
        }
        if !self.is_connected() {
            return Err(Error::InvalidGraph("graph is disconnected".into()));
        }
        let v = self.kinds.len() as i64;
        let e = (self.edges.len() + labels.len()) as i64;
        let f = self.trace_faces().len() as i64 + 1;
        if v - e + f != 2 {
            return Err(Error::InvalidGraph(format!("rotation system is not planar (V - E + F = {})", v - e + f)));
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        if self.kinds.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.kinds.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rotation[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Clockwise edge ids around `v`.
    pub fn rotation_edges(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&d| dart_edge(d)).collect()
    }

    pub fn boundary_count(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, VertexKind::Boundary(_))).count()
    }

    pub fn boundary_vertex(&self, label: usize) -> Option<usize> {
        self.kinds.iter().position(|k| *k == VertexKind::Boundary(label))
    }

    pub fn tail(&self, d: usize) -> usize {
        let (a, b) = self.edges[dart_edge(d)];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(dart_rev(d))
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&d| self.head(d)).collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.edges.iter().all(|&(a, b)| match (self.kinds[a], self.kinds[b]) {
            (VertexKind::Internal(x), VertexKind::Internal(y)) => x != y,
            _ => true,
        })
    }

    fn position_in_rotation(&self, v: usize, d: usize) -> usize {
        self.rotation[v].iter().position(|&x| x == d).expect("dart not at vertex")
    }

    /// Traces the inner faces (null regions).  The boundary arcs are virtual
    /// darts numbered from `2·|E|`; the face outside the disk is dropped.
    fn trace_faces(&self) -> Vec<Face> {
        let nb = self.kinds.iter().filter(|k| matches!(k, VertexKind::Boundary(_))).count();
        let base = 2 * self.edges.len();
        let mut bv = vec![0; nb + 1];
        for (v, k) in self.kinds.iter().enumerate() {
            if let VertexKind::Boundary(l) = k {
                bv[*l] = v;
            }
        }
        // arc a goes from label a+1 to label a+2 (mod N); darts base+2a (forward) and base+2a+1.
        let arc_next = |label: usize| base + 2 * (label - 1);
        let arc_prev = |label: usize| base + 2 * ((label + nb - 2) % nb) + 1;
        let ext_rot = |v: usize| -> Vec<usize> {
            match self.kinds[v] {
                VertexKind::Boundary(l) => {
                    let mut r = vec![arc_next(l)];
                    r.extend(self.rotation[v].iter().copied());
                    r.push(arc_prev(l));
                    r
                }
                VertexKind::Internal(_) => self.rotation[v].clone(),
            }
        };
        let ext_head = |d: usize| -> usize {
            if d < base {
                self.head(d)
            } else {
                let a = (d - base) / 2;
                let label = if (d - base).is_multiple_of(2) { a % nb + 2 } else { a + 1 };
                let label = if label > nb { label - nb } else { label };
                bv[label]
            }
        };
        let total = base + 2 * nb;
        let mut used = vec![false; total];
        // the outside face is the orbit of the forward arcs
        for a in 0..nb {
            used[base + 2 * a] = true;
        }
        let rots: Vec<Vec<usize>> = (0..self.kinds.len()).map(ext_rot).collect();
        let ext_tail = |d: usize| -> usize { ext_head(d ^ 1) };
        let mut faces = Vec::new();
        for start in 0..total {
            if used[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut vertices = Vec::new();
            let mut touches = false;
            let mut d = start;
            loop {
                used[d] = true;
                if d < base {
                    darts.push(d);
                    vertices.push(ext_tail(d));
                } else {
                    touches = true;
                }
                let v = ext_head(d);
                let r = &rots[v];
                let p = r.iter().position(|&x| x == (d ^ 1)).expect("rotation misses reverse dart");
                d = r[(p + 1) % r.len()];
                if d == start {
                    break;
                }
            }
            faces.push(Face { darts, vertices, touches_boundary: touches });
        }
        faces
    }

    /// The null regions of the graph.
    pub fn faces(&self) -> Vec<Face> {
        self.trace_faces()
    }

    /// Follows the alternating strand from every boundary vertex: at a black
    /// vertex the strand leaves along the next edge clockwise, at a white
    /// vertex along the next edge counterclockwise.  Returns `π` with
    /// `π[i-1] = j` when the strand entering at `i` exits at `j`.
    pub fn strand_permutation(&self) -> Result<Vec<usize>> {
        if !self.is_bipartite() {
            return Err(Error::InvalidGraph("strand permutation needs a bipartite graph".into()));
        }
        let nb = self.boundary_count();
        let mut pi = vec![0; nb];
        for label in 1..=nb {
            let b = self.boundary_vertex(label).unwrap();
            let mut d = self.rotation[b][0];
            let mut steps = 0;
            loop {
                let v = self.head(d);
                match self.kinds[v] {
                    VertexKind::Boundary(out) => {
                        pi[label - 1] = out;
                        break;
                    }
                    VertexKind::Internal(c) => {
                        let r = &self.rotation[v];
                        let p = self.position_in_rotation(v, dart_rev(d));
                        d = match c {
                            Color::Black => r[(p + 1) % r.len()],
                            Color::White => r[(p + r.len() - 1) % r.len()],
                        };
                    }
                }
                steps += 1;
                if steps > 4 * self.edges.len() + 4 {
                    return Err(Error::InvalidGraph("strand does not reach the boundary".into()));
                }
            }
        }
        Ok(pi)
    }

    /// Removes the degree-2 internal vertex `v`, fusing its two edges.
    pub fn vertex_reduction(&self, v: usize) -> Result<PlabicGraph> {
        let mut m = Mutable::from(self);
        m.reduce_vertex(v)?;
        Ok(m.finish())
    }

    /// Inverse of [`vertex_reduction`](Self::vertex_reduction): subdivides
    /// edge `e` with a new degree-2 vertex of the given colour.
    pub fn insert_vertex(&self, e: usize, color: Color) -> PlabicGraph {
        let mut m = Mutable::from(self);
        m.subdivide(e, color);
        m.finish()
    }

    /// Merges adjacent internal vertices of the same colour and removes
    /// internal vertices of degree 2 until neither applies.
    pub fn contracted(&self) -> PlabicGraph {
        let mut m = Mutable::from(self);
        m.normalize();
        m.finish()
    }

    /// Inner faces eligible for the strict square move: four distinct
    /// trivalent internal vertices of alternating colours.
    pub fn square_faces(&self) -> Vec<usize> {
        self.faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| self.is_square(f, true))
            .map(|(i, _)| i)
            .collect()
    }

    fn is_square(&self, f: &Face, trivalent: bool) -> bool {
        if f.touches_boundary || f.darts.len() != 4 {
            return false;
        }
        let vs = &f.vertices;
        let distinct: HashSet<_> = vs.iter().collect();
        if distinct.len() != 4 {
            return false;
        }
        let colors: Vec<Option<Color>> = vs.iter().map(|&v| self.kinds[v].color()).collect();
        if colors.iter().any(|c| c.is_none()) {
            return false;
        }
        let alternating = (0..4).all(|k| colors[k] != colors[(k + 1) % 4]);
        let degrees_ok = vs.iter().all(|&v| if trivalent { self.degree(v) == 3 } else { self.degree(v) >= 3 });
        alternating && degrees_ok
    }

    /// The square move on a trivalent alternating square: the colours of the
    /// four square vertices are exchanged.  Involutive.
    pub fn square_move(&self, face: usize) -> Result<PlabicGraph> {
        let faces = self.faces();
        let f = faces.get(face).ok_or(Error::NotSquareEligible(face))?;
        if !self.is_square(f, true) {
            return Err(Error::NotSquareEligible(face));
        }
        let mut g = self.clone();
        for &v in &f.vertices {
            if let VertexKind::Internal(c) = g.kinds[v] {
                g.kinds[v] = VertexKind::Internal(c.flip());
            }
        }
        Ok(g)
    }

    /// Faces of a contracted graph on which [`square_move_contracted`] acts.
    ///
    /// [`square_move_contracted`]: Self::square_move_contracted
    pub fn contracted_square_faces(&self) -> Vec<usize> {
        self.faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| self.is_square(f, false))
            .map(|(i, _)| i)
            .collect()
    }

    /// Square move in contracted normal form: each square vertex is expanded
    /// into a trivalent vertex on the square, the square colours are swapped
    /// and the result is contracted again.
    pub fn square_move_contracted(&self, face: usize) -> Result<PlabicGraph> {
        let faces = self.faces();
        let f = faces.get(face).ok_or(Error::NotSquareEligible(face))?;
        if !self.is_square(f, false) {
            return Err(Error::NotSquareEligible(face));
        }
        let mut m = Mutable::from(self);
        for k in 0..4 {
            let v = f.vertices[k];
            let out_dart = f.darts[k];
            let in_dart = dart_rev(f.darts[(k + 3) % 4]);
            m.split_pair(v, out_dart, in_dart);
        }
        m.normalize();
        Ok(m.finish())
    }

    /// Canonical encoding: breadth-first traversal from boundary vertex 1,
    /// reading every rotation from the dart it was entered by.  Two graphs
    /// have equal codes iff they are isomorphic by a map preserving colours,
    /// boundary labels and rotations.
    pub fn canonical_code(&self) -> Vec<u32> {
        let start = self.boundary_vertex(1).expect("boundary vertex 1");
        let mut id = vec![u32::MAX; self.kinds.len()];
        let mut entry = vec![0usize; self.kinds.len()];
        let mut order = Vec::with_capacity(self.kinds.len());
        let mut queue = VecDeque::new();
        id[start] = 0;
        entry[start] = self.rotation[start][0];
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let r = &self.rotation[v];
            let p = self.position_in_rotation(v, entry[v]);
            for k in 0..r.len() {
                let d = r[(p + k) % r.len()];
                let w = self.head(d);
                if id[w] == u32::MAX {
                    id[w] = order.len() as u32 + queue.len() as u32;
                    entry[w] = dart_rev(d);
                    queue.push_back(w);
                }
            }
        }
        let mut code = Vec::new();
        for &v in &order {
            code.push(match self.kinds[v] {
                VertexKind::Internal(Color::Black) => 0,
                VertexKind::Internal(Color::White) => 1,
                VertexKind::Boundary(l) => 1 + l as u32,
            });
            let r = &self.rotation[v];
            code.push(r.len() as u32);
            let p = self.position_in_rotation(v, entry[v]);
            for k in 0..r.len() {
                code.push(id[self.head(r[(p + k) % r.len()])]);
            }
        }
        code
    }

    /// Face boundaries as 1-chains on the interior edges, with the sum and
    /// rank checks of the cellular chain complex.
    pub fn face_cycle_relation(&self) -> FaceCycleReport {
        let faces = self.faces();
        let m = self.edges.len();
        let chain = |f: &Face| -> Vec<i64> {
            let mut v = vec![0i64; m];
            for &d in &f.darts {
                v[dart_edge(d)] += if d % 2 == 0 { 1 } else { -1 };
            }
            v
        };
        let chains: Vec<Vec<i64>> = faces.iter().map(chain).collect();
        let total: Vec<i64> = (0..m).map(|e| chains.iter().map(|c| c[e]).sum()).collect();
        let closed: Vec<&Vec<i64>> = faces.iter().zip(&chains).filter(|(f, _)| !f.touches_boundary).map(|(_, c)| c).collect();
        let rank = if closed.is_empty() {
            0
        } else {
            Matrix::from_rows(closed.iter().map(|c| c.iter().map(|&x| q(x)).collect::<Vec<Q>>()).collect()).rank()
        };
        FaceCycleReport {
            faces: faces.len(),
            closed_faces: closed.len(),
            sum_is_zero: total.iter().all(|&x| x == 0),
            closed_rank: rank,
            zero_classes: chains.iter().filter(|c| c.iter().all(|&x| x == 0)).count(),
        }
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plabic {\n  node [shape=circle, label=\"\", width=0.2];\n");
        for (v, k) in self.kinds.iter().enumerate() {
            match k {
                VertexKind::Internal(Color::Black) => writeln!(s, "  v{v} [style=filled, fillcolor=black];").unwrap(),
                VertexKind::Internal(Color::White) => writeln!(s, "  v{v} [style=filled, fillcolor=white];").unwrap(),
                VertexKind::Boundary(l) => writeln!(s, "  v{v} [shape=plaintext, label=\"{l}\"];").unwrap(),
            }
        }
        for &(a, b) in &self.edges {
            writeln!(s, "  v{a} -- v{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> PlabicJson {
        PlabicJson {
            schema: "plabic.v1".into(),
            n: None,
            levels: None,
            vertices: Some(
                self.kinds
                    .iter()
                    .map(|k| match k {
                        VertexKind::Internal(c) => VertexJson { color: Some(*c), boundary: None },
                        VertexKind::Boundary(l) => VertexJson { color: None, boundary: Some(*l) },
                    })
                    .collect(),
            ),
            edges: Some(self.edges.clone()),
            rotation: Some((0..self.kinds.len()).map(|v| self.rotation_edges(v)).collect()),
        }
    }

    pub fn from_json(j: &PlabicJson) -> Result<PlabicGraph> {
        if let (Some(n), Some(levels)) = (j.n, &j.levels) {
            return Ok(PlabicFence::from_levels(n, levels.clone())?.graph());
        }
        let (Some(vs), Some(es), Some(rot)) = (&j.vertices, &j.edges, &j.rotation) else {
            return Err(Error::InvalidGraph("plabic.v1 needs either n/levels or vertices/edges/rotation".into()));
        };
        let kinds = vs
            .iter()
            .map(|v| match (v.color, v.boundary) {
                (Some(c), None) => Ok(VertexKind::Internal(c)),
                (None, Some(l)) => Ok(VertexKind::Boundary(l)),
                _ => Err(Error::InvalidGraph("vertex needs exactly one of color/boundary".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        PlabicGraph::new(kinds, es.clone(), rot.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCycleReport {
    pub faces: usize,
    pub closed_faces: usize,
    pub sum_is_zero: bool,
    pub closed_rank: usize,
    pub zero_classes: usize,
}

impl FaceCycleReport {
    pub fn holds(&self) -> bool {
        self.sum_is_zero && self.closed_rank == self.closed_faces
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub color: Option<Color>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boundary: Option<usize>,
}

/// Wire format `plabic.v1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlabicJson {
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub levels: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vertices: Option<Vec<VertexJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rotation: Option<Vec<Vec<usize>>>,
}

/// Clockwise angular order of direction vectors starting from the positive
/// y axis.
fn clockwise_cmp(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    // half 0: angle in [90°, -90°) going clockwise, i.e. x > 0 or (x == 0, y > 0)
    let half = |p: (i64, i64)| if p.0 > 0 || (p.0 == 0 && p.1 > 0) { 0 } else { 1 };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // within a half-plane, clockwise means negative cross product
    let cross = (a.0 as i128) * (b.1 as i128) - (a.1 as i128) * (b.0 as i128);
    cross.cmp(&0)
}

/// Editable copy used by the local moves; vertices and edges are tombstoned
/// and compacted in [`Mutable::finish`].
struct Mutable {
    kinds: Vec<Option<VertexKind>>,
    edges: Vec<Option<(usize, usize)>>,
    rotation: Vec<Vec<usize>>,
}

impl From<&PlabicGraph> for Mutable {
    fn from(g: &PlabicGraph) -> Self {
        Mutable {
            kinds: g.kinds.iter().map(|&k| Some(k)).collect(),
            edges: g.edges.iter().map(|&e| Some(e)).collect(),
            rotation: g.rotation.clone(),
        }
    }
}

impl Mutable {
    fn tail(&self, d: usize) -> usize {
        let (a, b) = self.edges[d / 2].expect("dead edge");
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    fn set_tail(&mut self, d: usize, v: usize) {
        let e = self.edges[d / 2].as_mut().expect("dead edge");
        if d.is_multiple_of(2) {
            e.0 = v;
        } else {
            e.1 = v;
        }
    }

    fn add_vertex(&mut self, k: VertexKind) -> usize {
        self.kinds.push(Some(k));
        self.rotation.push(Vec::new());
        self.kinds.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push(Some((a, b)));
        self.edges.len() - 1
    }

    fn reduce_vertex(&mut self, v: usize) -> Result<()> {
        let deg = self.rotation[v].len();
        if deg != 2 || !matches!(self.kinds[v], Some(VertexKind::Internal(_))) {
            return Err(Error::NotDegreeTwo { vertex: v, degree: deg });
        }
        let d1 = self.rotation[v][0];
        let d2 = self.rotation[v][1];
        let a = self.head(d1);
        let b = self.head(d2);
        if a == v || b == v || d1 / 2 == d2 / 2 {
            return Err(Error::InvalidGraph(format!("vertex {v} carries a loop")));
        }
        // keep edge of d1 (now a–b); replace dart d2^1 at b with the reverse of d1's a-side
        self.set_tail(d1, b);
        let pos = self.rotation[b].iter().position(|&x| x == d2 ^ 1).unwrap();
        self.rotation[b][pos] = d1;
        self.edges[d2 / 2] = None;
        self.kinds[v] = None;
        self.rotation[v].clear();
        Ok(())
    }

    fn subdivide(&mut self, e: usize, color: Color) {
        let (a, b) = self.edges[e].unwrap();
        let w = self.add_vertex(VertexKind::Internal(color));
        // edge e becomes a–w, new edge w–b
        self.edges[e] = Some((a, w));
        let f = self.add_edge(w, b);
        let pos = self.rotation[b].iter().position(|&x| x == 2 * e + 1).unwrap();
        self.rotation[b][pos] = 2 * f + 1;
        self.rotation[w] = vec![2 * e + 1, 2 * f];
    }

    /// Merges `v` into `u` along the edge of dart `d` (from `u` to `v`).
    fn merge(&mut self, d: usize) {
        let u = self.tail(d);
        let v = self.head(d);
        let ru = self.rotation[u].clone();
        let rv = self.rotation[v].clone();
        let pu = ru.iter().position(|&x| x == d).unwrap();
        let pv = rv.iter().position(|&x| x == d ^ 1).unwrap();
        let mut merged = Vec::with_capacity(ru.len() + rv.len() - 2);
        for k in 1..ru.len() {
            merged.push(ru[(pu + k) % ru.len()]);
        }
        for k in 1..rv.len() {
            let x = rv[(pv + k) % rv.len()];
            merged.push(x);
        }
        for k in 1..rv.len() {
            let x = rv[(pv + k) % rv.len()];
            self.set_tail(x, u);
        }
        self.rotation[u] = merged;
        self.rotation[v].clear();
        self.kinds[v] = None;
        self.edges[d / 2] = None;
    }

    /// Splits vertex `v`: the two consecutive darts `a`, `b` move to a new
    /// vertex of the opposite colour joined to `v` by a new edge.
    fn split_pair(&mut self, v: usize, a: usize, b: usize) {
        let color = self.kinds[v].and_then(|k| k.color()).expect("internal vertex");
        let r = self.rotation[v].clone();
        let len = r.len();
        let pa = r.iter().position(|&x| x == a).unwrap();
        let pb = r.iter().position(|&x| x == b).unwrap();
        let (first, second, p) = if (pa + 1) % len == pb {
            (a, b, pa)
        } else {
            assert_eq!((pb + 1) % len, pa, "square darts must be consecutive");
            (b, a, pb)
        };
        let w = self.add_vertex(VertexKind::Internal(color.flip()));
        let link = self.add_edge(v, w);
        let mut nr = Vec::with_capacity(len - 1);
        for k in 2..len {
            nr.push(r[(p + k) % len]);
        }
        nr.push(2 * link);
        self.rotation[v] = nr;
        self.set_tail(first, w);
        self.set_tail(second, w);
        self.rotation[w] = vec![first, second, 2 * link + 1];
    }

    fn normalize(&mut self) {
        loop {
            let mut changed = false;
            for v in 0..self.kinds.len() {
                if matches!(self.kinds[v], Some(VertexKind::Internal(_))) && self.rotation[v].len() == 2 {
                    let d1 = self.rotation[v][0];
                    let d2 = self.rotation[v][1];
                    if d1 / 2 != d2 / 2 && self.head(d1) != v && self.head(d2) != v {
                        self.reduce_vertex(v).unwrap();
                        changed = true;
                    }
                }
            }
            for e in 0..self.edges.len() {
                let Some((a, b)) = self.edges[e] else { continue };
                if a == b {
                    continue;
                }
                if let (Some(VertexKind::Internal(x)), Some(VertexKind::Internal(y))) = (self.kinds[a], self.kinds[b]) {
                    let parallel = self.rotation[a].iter().filter(|&&d| self.head(d) == b).count();
                    if x == y && parallel == 1 {
                        self.merge(2 * e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn finish(self) -> PlabicGraph {
        let mut vmap = vec![usize::MAX; self.kinds.len()];
        let mut kinds = Vec::new();
        for (v, k) in self.kinds.iter().enumerate() {
            if let Some(k) = k {
                vmap[v] = kinds.len();
                kinds.push(*k);
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, ed) in self.edges.iter().enumerate() {
            if let Some((a, b)) = ed {
                emap[e] = edges.len();
                edges.push((vmap[*a], vmap[*b]));
            }
        }
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .filter(|(v, _)| self.kinds[*v].is_some())
            .map(|(_, r)| r.iter().map(|&d| 2 * emap[d / 2] + d % 2).collect())
            .collect();
        PlabicGraph { kinds, edges, rotation }
    }
}

/// The plabic fence of a braid word: `n` horizontal lines and one vertical
/// edge per letter, on its level, at column `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlabicFence {
    /// Number of horizontal lines (braid strands).
    pub n: usize,
    /// Columns of the vertical edges on each level `1..n`.
    pub crossings: Vec<Vec<usize>>,
    /// Total number of columns.
    pub width: usize,
}

/// A face of a fence: the region on a level between two vertical edges, or
/// the half-open region after the last one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FenceFace {
    pub level: usize,
    pub left: usize,
    pub right: usize,
    pub closed: bool,
}

impl PlabicFence {
    pub fn from_levels(n: usize, crossings: Vec<Vec<usize>>) -> Result<Self> {
        if n < 2 || crossings.len() != n - 1 {
            return Err(Error::InvalidGraph(format!("a fence on {n} lines needs {} levels", n.saturating_sub(1))));
        }
        let mut cols = HashSet::new();
        for level in &crossings {
            if level.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph("columns must be strictly increasing per level".into()));
            }
            for &c in level {
                if c == 0 || !cols.insert(c) {
                    return Err(Error::InvalidGraph(format!("column {c} is zero or used twice")));
                }
            }
        }
        let width = cols.iter().copied().max().unwrap_or(0);
        Ok(PlabicFence { n, crossings, width })
    }

    pub fn levels(&self) -> usize {
        self.n - 1
    }

    /// Closed faces per level, left to right, then the half-open ones.
    pub fn faces(&self) -> Vec<FenceFace> {
        let mut out = Vec::new();
        for (i, cols) in self.crossings.iter().enumerate() {
            for w in cols.windows(2) {
                out.push(FenceFace { level: i + 1, left: w[0], right: w[1], closed: true });
            }
            if let Some(&last) = cols.last() {
                out.push(FenceFace { level: i + 1, left: last, right: self.width + 1, closed: false });
            }
        }
        out
    }

    pub fn closed_faces(&self) -> Vec<FenceFace> {
        self.faces().into_iter().filter(|f| f.closed).collect()
    }

    /// Every region between two adjacent lines that is not closed: the
    /// half-open faces after the last crossing and the ones before the first.
    pub fn half_open_face_count(&self) -> usize {
        self.crossings.iter().map(|c| if c.is_empty() { 0 } else { 2 }).sum()
    }

    /// The fence drawn as a bipartite plabic graph: black vertex at the top
    /// of each vertical edge, white at the bottom, and degree-2 vertices
    /// inserted between equal colours along the lines.  Boundary labels run
    /// clockwise: right ends top to bottom, then left ends bottom to top.
    pub fn graph(&self) -> PlabicGraph {
        let n = self.n;
        // (column, line) -> colour of the vertex there
        let mut on_line: Vec<BTreeMap<usize, Color>> = vec![BTreeMap::new(); n];
        for (i, cols) in self.crossings.iter().enumerate() {
            for &c in cols {
                on_line[i].insert(c, Color::Black);
                on_line[i + 1].insert(c, Color::White);
            }
        }
        let mut kinds = Vec::new();
        let mut pos = Vec::new();
        let mut edges = Vec::new();
        let right_x = 2 * (self.width as i64 + 1);
        let mut at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (j, line) in on_line.iter().enumerate() {
            let y = -2 * j as i64;
            let right = kinds.len();
            kinds.push(VertexKind::Boundary(j + 1));
            pos.push((right_x, y));
            let left = kinds.len();
            kinds.push(VertexKind::Boundary(2 * n - j));
            pos.push((0, y));
            let mut prev: (usize, Option<Color>) = (left, None);
            let mut prev_x = 0i64;
            for (&c, &color) in line {
                let x = 2 * c as i64;
                if prev.1 == Some(color) {
                    let mid = kinds.len();
                    kinds.push(VertexKind::Internal(color.flip()));
                    pos.push(((prev_x + x) / 2, y));
                    edges.push((prev.0, mid));
                    prev = (mid, Some(color.flip()));
                }
                let v = kinds.len();
                kinds.push(VertexKind::Internal(color));
                pos.push((x, y));
                at.insert((c, j), v);
                edges.push((prev.0, v));
                prev = (v, Some(color));
                prev_x = x;
            }
            edges.push((prev.0, right));
        }
        for (i, cols) in self.crossings.iter().enumerate() {
            for &c in cols {
                edges.push((at[&(c, i)], at[&(c, i + 1)]));
            }
        }
        PlabicGraph::from_embedding(kinds, &pos, edges).expect("fence embedding is planar")
    }

    pub fn to_json(&self) -> PlabicJson {
        PlabicJson {
            schema: "plabic.v1".into(),
            n: Some(self.n),
            levels: Some(self.crossings.clone()),
            vertices: None,
            edges: None,
            rotation: None,
        }
    }
}

/// One vertical edge per letter, on its level, at column `t` for letter `t`.
pub fn fence_from_braid(beta: &BraidWord) -> PlabicFence {
    let mut crossings = vec![Vec::new(); beta.strands() - 1];
    for (t, &i) in beta.letters().iter().enumerate() {
        crossings[i - 1].push(t + 1);
    }
    PlabicFence { n: beta.strands(), crossings, width: beta.len() }
}

/// Plabic graph of a triangulated `m`-gon: a white vertex for every polygon
/// vertex (joined to its boundary point) and a black vertex for every
/// triangle, joined to its three corners.  Polygon vertices `0..m` run
/// clockwise; polygon vertex `p` carries boundary label `p + 1`.
pub fn triangulation_graph(m: usize, triangles: &[[usize; 3]]) -> Result<PlabicGraph> {
    validate_triangulation(m, triangles)?;
    let mut kinds = Vec::new();
    for p in 0..m {
        kinds.push(VertexKind::Boundary(p + 1));
    }
    for _ in 0..m {
        kinds.push(VertexKind::Internal(Color::White));
    }
    for _ in triangles {
        kinds.push(VertexKind::Internal(Color::Black));
    }
    let white = |p: usize| m + p;
    let black = |t: usize| 2 * m + t;
    let mut edges = Vec::new();
    let mut rotation = vec![Vec::new(); kinds.len()];
    for p in 0..m {
        rotation[p].push(edges.len());
        rotation[white(p)].push(edges.len());
        edges.push((p, white(p)));
    }
    let mut corner_edge = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        let mut s = *tri;
        s.sort_unstable();
        for &p in &s {
            corner_edge.insert((t, p), edges.len());
            edges.push((black(t), white(p)));
        }
        // corners in increasing label order are clockwise
        rotation[black(t)] = s.iter().map(|&p| corner_edge[&(t, p)]).collect();
    }
    for p in 0..m {
        // triangles at p, clockwise from the outward direction: by the first
        // other corner in cyclic order after p
        let mut at: Vec<(usize, usize)> = triangles
            .iter()
            .enumerate()
            .filter(|(_, tri)| tri.contains(&p))
            .map(|(t, tri)| {
                let first = tri.iter().filter(|&&x| x != p).map(|&x| (x + m - p) % m).min().unwrap();
                (first, t)
            })
            .collect();
        at.sort_unstable();
        for (_, t) in at {
            rotation[white(p)].push(corner_edge[&(t, p)]);
        }
    }
    PlabicGraph::new(kinds, edges, rotation)
}

fn validate_triangulation(m: usize, triangles: &[[usize; 3]]) -> Result<()> {
    if m < 3 || triangles.len() != m - 2 {
        return Err(Error::InvalidGraph(format!("a triangulation of a {m}-gon has {} triangles", m.saturating_sub(2))));
    }
    let mut diag_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for tri in triangles {
        let mut s = *tri;
        s.sort_unstable();
        if s[0] == s[1] || s[1] == s[2] || s[2] >= m {
            return Err(Error::InvalidGraph(format!("bad triangle {tri:?}")));
        }
        for (a, b) in [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])] {
            *diag_count.entry((a, b)).or_default() += 1;
        }
    }
    for (&(a, b), &c) in &diag_count {
        let side = b == a + 1 || (a == 0 && b == m - 1);
        if (side && c != 1) || (!side && c != 2) {
            return Err(Error::InvalidGraph("triangles do not form a triangulation".into()));
        }
    }
    // diagonals must not cross
    let diags: Vec<(usize, usize)> = diag_count.keys().copied().collect();
    for &(a, b) in &diags {
        for &(c, d) in &diags {
            if a < c && c < b && b < d {
                return Err(Error::InvalidGraph("crossing diagonals".into()));
            }
        }
    }
    Ok(())
}

/// Fan triangulation of the `m`-gon from vertex 0.
pub fn fan_triangulation(m: usize) -> Vec<[usize; 3]> {
    (1..m - 1).map(|k| [0, k, k + 1]).collect()
}

/// Zig-zag triangulation of the `m`-gon.
pub fn zigzag_triangulation(m: usize) -> Vec<[usize; 3]> {
    let mut lo = 0usize;
    let mut hi = m - 1;
    let mut next_lo = true;
    let mut out = Vec::new();
    let (mut a, mut b) = (lo, hi);
    lo += 1;
    while out.len() < m - 2 {
        let c = if next_lo {
            let c = lo;
            lo += 1;
            c
        } else {
            let c = hi - 1;
            hi -= 1;
            c
        };
        out.push([a, b, c]);
        if next_lo {
            a = c;
        } else {
            b = c;
        }
        next_lo = !next_lo;
    }
    out
}

/// Le-diagram graph of the top cell of `Gr(k, m)`: a `k × (m − k)` grid of
/// boxes, each resolved into a white–black pair, with row lines exiting on
/// the right (labels `1..=k`, top to bottom) and column lines exiting at the
/// bottom (labels `k+1..=m`, right to left).
pub fn le_graph(k: usize, m: usize) -> Result<PlabicGraph> {
    if k == 0 || k >= m {
        return Err(Error::OutOfRange(format!("need 0 < k < m, got k={k}, m={m}")));
    }
    let cols = m - k;
    let mut kinds = Vec::new();
    let mut pos = Vec::new();
    let mut edges = Vec::new();
    // box (r, c): upper-right vertex U (white) holding up/right, lower-left L
    // (black) holding down/left.
    let mut upper = vec![vec![0; cols]; k];
    let mut lower = vec![vec![0; cols]; k];
    for r in 0..k {
        for c in 0..cols {
            let (x, y) = (4 * c as i64, -4 * r as i64);
            upper[r][c] = kinds.len();
            kinds.push(VertexKind::Internal(Color::White));
            pos.push((x + 1, y + 1));
            lower[r][c] = kinds.len();
            kinds.push(VertexKind::Internal(Color::Black));
            pos.push((x - 1, y - 1));
            edges.push((upper[r][c], lower[r][c]));
        }
    }
    for r in 0..k {
        for c in 0..cols {
            // right neighbour: this box's U to next box's L (horizontal line)
            if c + 1 < cols {
                edges.push((upper[r][c], lower[r][c + 1]));
            }
            // down neighbour: this box's L to lower box's U
            if r + 1 < k {
                edges.push((lower[r][c], upper[r + 1][c]));
            }
        }
    }
    for r in 0..k {
        let b = kinds.len();
        kinds.push(VertexKind::Boundary(r + 1));
        pos.push((4 * cols as i64, -4 * r as i64 + 1));
        edges.push((upper[r][cols - 1], b));
    }
    for c in 0..cols {
        let b = kinds.len();
        kinds.push(VertexKind::Boundary(k + cols - c));
        pos.push((4 * c as i64 - 1, -4 * k as i64));
        edges.push((lower[k - 1][c], b));
    }
    PlabicGraph::from_embedding(kinds, &pos, edges)
}

/// Size of the closure of `g` under square moves, computed on contracted
/// normal forms and compared by canonical code.
pub fn plabic_orbit_count(g: &PlabicGraph, limit: usize) -> Result<usize> {
    Ok(plabic_orbit(g, limit)?.len())
}

/// The square-move orbit of `g` (contracted normal forms).
pub fn plabic_orbit(g: &PlabicGraph, limit: usize) -> Result<Vec<PlabicGraph>> {
    let start = g.contracted();
    let mut seen = HashSet::new();
    seen.insert(start.canonical_code());
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        for f in h.contracted_square_faces() {
            let next = h.square_move_contracted(f)?;
            if seen.insert(next.canonical_code()) {
                if seen.len() > limit {
                    return Err(Error::BudgetExceeded(format!("square-move orbit exceeds {limit} graphs")));
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}
