//! Weaves compiled from plabic fences, their strings, cycles and the
//! intersection form.
//!
//! Block `t` of the fence weave is `c_{i_t}^↑(w_0)`: a sequence of braid
//! moves on the vertical slice word `Δ` that brings an `s_1`-edge to the top
//! with colour `i_t`, a trivalent vertex there, and the mirror image of the
//! moves.  Slice words are read bottom to top.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

use crate::braid::BraidWord;
use crate::linalg::{q, Matrix, Q};
use crate::plabic::PlabicFence;
use crate::{Error, Result};

/// A segment of a level line between two consecutive nodes (closed), or
/// from the last node to the right end (half-open).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringSeg {
    pub level: usize,
    /// Position of the node where the string starts (1-based letter index).
    pub left: usize,
    /// Position of the node where it ends, or `ℓ + 1` for a half-open string.
    pub right: usize,
    pub closed: bool,
}

impl StringSeg {
    /// Slices `j` (after letter `j`) that the string crosses.
    pub fn slices(&self) -> std::ops::Range<usize> {
        self.left..self.right
    }

    pub fn crosses(&self, j: usize) -> bool {
        self.left <= j && j < self.right
    }
}

/// Level lines cut by one node per letter.  Strings are ordered level by
/// level; on each level the closed strings come first, left to right, then
/// the half-open one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringDiagram {
    pub n: usize,
    pub length: usize,
    pub strings: Vec<StringSeg>,
}

impl StringDiagram {
    pub fn new(beta: &BraidWord) -> Self {
        let mut strings = Vec::new();
        for (i, pos) in beta.positions_by_level().iter().enumerate() {
            for w in pos.windows(2) {
                strings.push(StringSeg { level: i + 1, left: w[0], right: w[1], closed: true });
            }
            if let Some(&last) = pos.last() {
                strings.push(StringSeg { level: i + 1, left: last, right: beta.len() + 1, closed: false });
            }
        }
        StringDiagram { n: beta.strands(), length: beta.len(), strings }
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn closed_indices(&self) -> Vec<usize> {
        (0..self.strings.len()).filter(|&a| self.strings[a].closed).collect()
    }

    pub fn frozen_indices(&self) -> Vec<usize> {
        (0..self.strings.len()).filter(|&a| !self.strings[a].closed).collect()
    }

    /// The skew form `ε` on all strings.
    ///
    /// Consecutive strings on one level: `ε(p, q) = 1` when `p` ends where
    /// `q` starts.  A string `F = (l, r)` on level `i` against `G = (l', r')`
    /// on level `i + 1`: `ε(F, G) = [l < r' < r] − [l < l' < r]`.  Strings on
    /// levels two or more apart do not interact.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.strings.len();
        let mut e = vec![vec![0i64; m]; m];
        for (p, f) in self.strings.iter().enumerate() {
            for (qi, g) in self.strings.iter().enumerate() {
                if f.level == g.level && f.right == g.left {
                    e[p][qi] = 1;
                    e[qi][p] = -1;
                }
                if g.level == f.level + 1 {
                    let inside = |x: usize| (f.left < x && x < f.right) as i64;
                    let v = inside(g.right) - inside(g.left);
                    e[p][qi] = v;
                    e[qi][p] = -v;
                }
            }
        }
        e
    }

    /// `⟨η_{a,j}, γ_c⟩` for the relative cycle of string `a` at slice `j`
    /// and the closed cycle of string `c`, summed over the strand pieces
    /// `ξ_{a,j,r}`, `r ≤ level(a)`.
    pub fn relative_pairing(&self, a: usize, j: usize, c: usize) -> i64 {
        let sa = self.strings[a];
        let sc = self.strings[c];
        if !sc.closed || !sc.crosses(j) {
            return 0;
        }
        (1..=sa.level)
            .map(|r| (r == sc.level) as i64 - (r == sc.level + 1) as i64)
            .sum()
    }

    /// Pairing matrix `P[a][c] = ⟨η_a, γ_c⟩` for all strings `a` (at their
    /// leftmost slice) against closed strings `c`.
    pub fn duality_matrix(&self) -> Vec<Vec<i64>> {
        let closed = self.closed_indices();
        (0..self.strings.len())
            .map(|a| closed.iter().map(|&c| self.relative_pairing(a, self.strings[a].left, c)).collect())
            .collect()
    }
}

/// A braid move on a slice word, at 0-based position `at`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SliceMove {
    /// `aba → bab` at positions `at..at+3` (hexavalent vertex).
    Braid { at: usize },
    /// `ab → ba` with `|a − b| ≥ 2` at `at..at+2` (tetravalent vertex).
    Commute { at: usize },
}

impl SliceMove {
    fn apply(self, word: &mut [usize], marked: usize) -> usize {
        match self {
            SliceMove::Braid { at } => {
                let (a, b) = (word[at], word[at + 1]);
                word[at] = b;
                word[at + 1] = a;
                word[at + 2] = b;
                match marked {
                    m if m == at => at + 2,
                    m if m == at + 2 => at,
                    m => m,
                }
            }
            SliceMove::Commute { at } => {
                word.swap(at, at + 1);
                match marked {
                    m if m == at => at + 1,
                    m if m == at + 1 => at,
                    m => m,
                }
            }
        }
    }
}

/// Shortest sequence of slice moves taking `Δ` to a word whose top letter is
/// an original `s_1`-edge now coloured `level`.
pub fn push_up_moves(n: usize, level: usize) -> Vec<SliceMove> {
    let delta = BraidWord::half_twist(n).letters().to_vec();
    let top = delta.len() - 1;
    let mut prev: HashMap<(Vec<usize>, usize), Option<((Vec<usize>, usize), SliceMove)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for (p, &x) in delta.iter().enumerate().rev() {
        if x == 1 {
            let s = (delta.clone(), p);
            prev.insert(s.clone(), None);
            queue.push_back(s);
        }
    }
    while let Some(state) = queue.pop_front() {
        let (word, marked) = &state;
        if *marked == top && word[top] == level {
            let mut moves = Vec::new();
            let mut cur = state.clone();
            while let Some(Some((p, mv))) = prev.get(&cur).cloned() {
                moves.push(mv);
                cur = p;
            }
            moves.reverse();
            return moves;
        }
        let mut candidates = Vec::new();
        for at in 0..word.len().saturating_sub(1) {
            if word[at].abs_diff(word[at + 1]) >= 2 {
                candidates.push(SliceMove::Commute { at });
            }
            if at + 2 < word.len() && word[at] == word[at + 2] && word[at].abs_diff(word[at + 1]) == 1 {
                candidates.push(SliceMove::Braid { at });
            }
        }
        for mv in candidates {
            let mut w = word.clone();
            let mk = mv.apply(&mut w, *marked);
            let next = (w, mk);
            if !prev.contains_key(&next) {
                prev.insert(next.clone(), Some((state.clone(), mv)));
                queue.push_back(next);
            }
        }
    }
    unreachable!("every level is reachable from the half twist")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    /// Letter position `t` (1-based).
    pub position: usize,
    pub level: usize,
    /// Moves of `n_i^↑(w_0)`; the block then applies them in reverse.
    pub push_up: Vec<SliceMove>,
    pub hexavalent: usize,
    pub tetravalent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cycle {
    /// Closed cycle between two consecutive trivalent vertices on a level.
    LongI { string: usize, level: usize, from_block: usize, to_block: usize },
    /// Relative cycle of a string at a slice, descending through the first
    /// `depth` sheets.
    Relative { string: usize, slice: usize, depth: usize },
    /// Cycle around three trivalent vertices of a 3-sheet weave.
    Y { blocks: [usize; 3] },
}

impl Cycle {
    pub fn string(&self) -> Option<usize> {
        match self {
            Cycle::LongI { string, .. } | Cycle::Relative { string, .. } => Some(*string),
            Cycle::Y { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleBasis {
    pub closed: Vec<Cycle>,
    pub relative: Vec<Cycle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeaveBlueprint {
    pub n: usize,
    pub braid: BraidWord,
    pub blocks: Vec<BlockSpec>,
    /// Slice words `0..=ℓ`, bottom to top.
    pub slices: Vec<Vec<usize>>,
    pub strings: StringDiagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCounts {
    pub trivalent: usize,
    pub hexavalent: usize,
    pub tetravalent: usize,
    pub horizontal_edges_per_slice: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryWord {
    /// Cyclic boundary word: the braid along the top, the right slice read
    /// downwards, the left slice read upwards.
    pub letters: Vec<usize>,
    /// Whether this equals `βΔ²` as a positive braid.
    pub matches: bool,
}

/// `c_{i_1}^↑(w_0) ⋯ c_{i_ℓ}^↑(w_0)`.
pub fn compile_fence_weave(fence: &PlabicFence) -> WeaveBlueprint {
    let mut letters = vec![0; fence.width];
    for (i, cols) in fence.crossings.iter().enumerate() {
        for &c in cols {
            letters[c - 1] = i + 1;
        }
    }
    let letters: Vec<usize> = letters.into_iter().filter(|&x| x != 0).collect();
    let beta = BraidWord::new(fence.n, letters).expect("fence letters are valid");
    compile_braid_weave(&beta)
}

pub fn compile_braid_weave(beta: &BraidWord) -> WeaveBlueprint {
    let n = beta.strands();
    let delta = BraidWord::half_twist(n).letters().to_vec();
    let mut cache: HashMap<usize, Vec<SliceMove>> = HashMap::new();
    let blocks = beta
        .letters()
        .iter()
        .enumerate()
        .map(|(t, &i)| {
            let push_up = cache.entry(i).or_insert_with(|| push_up_moves(n, i)).clone();
            let hex = push_up.iter().filter(|m| matches!(m, SliceMove::Braid { .. })).count();
            let tet = push_up.len() - hex;
            BlockSpec { position: t + 1, level: i, push_up, hexavalent: 2 * hex, tetravalent: 2 * tet }
        })
        .collect();
    WeaveBlueprint {
        n,
        braid: beta.clone(),
        blocks,
        slices: vec![delta; beta.len() + 1],
        strings: StringDiagram::new(beta),
    }
}

impl WeaveBlueprint {
    pub fn vertex_counts(&self) -> VertexCounts {
        VertexCounts {
            trivalent: self.blocks.len(),
            hexavalent: self.blocks.iter().map(|b| b.hexavalent).sum(),
            tetravalent: self.blocks.iter().map(|b| b.tetravalent).sum(),
            horizontal_edges_per_slice: self.slices.first().map_or(0, |s| s.len()),
        }
    }

    /// Replays every block on its slice word and checks that the slice
    /// before and after each block is `Δ` and that the pushed-up edge has the
    /// block's colour.
    pub fn check_blocks(&self) -> bool {
        let delta = BraidWord::half_twist(self.n).letters().to_vec();
        self.blocks.iter().all(|b| {
            let mut w = delta.clone();
            for mv in &b.push_up {
                mv.apply(&mut w, usize::MAX);
            }
            let top_ok = w.last() == Some(&b.level);
            for mv in b.push_up.iter().rev() {
                undo(*mv, &mut w);
            }
            top_ok && w == delta
        }) && self.slices.iter().all(|s| *s == delta)
    }

    pub fn boundary_word(&self) -> BoundaryWord {
        let mut letters = self.braid.letters().to_vec();
        let right = self.slices.last().cloned().unwrap_or_default();
        let left = self.slices.first().cloned().unwrap_or_default();
        letters.extend(right.iter().rev());
        letters.extend(left.iter());
        let is_w0 = |w: &[usize]| BraidWord::new(self.n, w.to_vec()).map(|b| b.is_reduced_longest()).unwrap_or(false);
        let rev_right: Vec<usize> = right.iter().rev().copied().collect();
        let matches = letters.len() == self.braid.len() + 2 * left.len()
            && letters[..self.braid.len()] == *self.braid.letters()
            && is_w0(&rev_right)
            && is_w0(&left);
        BoundaryWord { letters, matches }
    }

    pub fn cycle_basis(&self) -> CycleBasis {
        let mut closed = Vec::new();
        let mut relative = Vec::new();
        for (a, s) in self.strings.strings.iter().enumerate() {
            if s.closed {
                closed.push(Cycle::LongI { string: a, level: s.level, from_block: s.left, to_block: s.right });
            }
            relative.push(Cycle::Relative { string: a, slice: s.left, depth: s.level });
        }
        CycleBasis { closed, relative }
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        self.strings.intersection_matrix()
    }

    /// `⟨η_a, γ_c⟩ = δ_{ac}` on closed strings, checked with every slice the
    /// relative cycle may use.
    pub fn check_duality(&self) -> bool {
        let d = &self.strings;
        let closed = d.closed_indices();
        closed.iter().all(|&a| {
            d.strings[a].slices().all(|j| closed.iter().all(|&c| d.relative_pairing(a, j, c) == (a == c) as i64))
        })
    }

    /// The chain identity `γ_a = Σ_c ⟨a, c⟩ η_c`, paired against every closed
    /// cycle: `ε_closed = ε_{closed × all} · P`, plus recovery of the
    /// coefficients by solving `C · P_closed = ε_closed`.
    pub fn check_chain_identity(&self) -> bool {
        let d = &self.strings;
        let e = d.intersection_matrix();
        let p = d.duality_matrix();
        let closed = d.closed_indices();
        if closed.is_empty() {
            return true;
        }
        let all = d.len();
        let lhs: Vec<Vec<i64>> = closed.iter().map(|&a| closed.iter().map(|&c| e[a][c]).collect()).collect();
        let rhs: Vec<Vec<i64>> = closed
            .iter()
            .map(|&a| (0..closed.len()).map(|col| (0..all).map(|c| e[a][c] * p[c][col]).sum()).collect())
            .collect();
        let to_q = |m: &[Vec<i64>]| Matrix::from_rows(m.iter().map(|r| r.iter().map(|&x| q(x)).collect::<Vec<Q>>()).collect());
        let p_closed: Vec<Vec<i64>> = closed.iter().map(|&a| p[a].clone()).collect();
        let Some(inv) = to_q(&p_closed).inverse() else { return false };
        let coeffs = to_q(&lhs).mul(&inv);
        lhs == rhs && coeffs == to_q(&lhs)
    }

    /// Plain geometry for renderers: vertex coordinates and coloured edges.
    pub fn geometry(&self) -> WeaveGeometry {
        WeaveGeometry::build(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "weave.v1",
            "n": self.n,
            "braid": self.braid.to_string(),
            "blocks": self.blocks,
            "slices": self.slices,
            "vertices": self.vertex_counts(),
            "strings": self.strings.strings,
            "cycles": self.cycle_basis(),
            "intersection": self.intersection_matrix(),
        })
    }
}

fn undo(mv: SliceMove, word: &mut [usize]) {
    // both moves are involutive on the word
    mv.apply(word, usize::MAX);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoVertex {
    pub id: usize,
    /// `boundary`, `trivalent`, `hexavalent` or `tetravalent`.
    pub kind: String,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoEdge {
    pub from: usize,
    pub to: usize,
    /// Generator index `i` of the edge colour `s_i`.
    pub color: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeaveGeometry {
    pub width: i64,
    pub height: i64,
    pub vertices: Vec<GeoVertex>,
    pub edges: Vec<GeoEdge>,
}

impl WeaveGeometry {
    fn build(w: &WeaveBlueprint) -> Self {
        let mut g = WeaveGeometry { width: 0, height: 0, vertices: Vec::new(), edges: Vec::new() };
        let delta = BraidWord::half_twist(w.n).letters().to_vec();
        let h = delta.len() as i64;
        let add = |g: &mut WeaveGeometry, kind: &str, x: i64, y: i64| {
            g.vertices.push(GeoVertex { id: g.vertices.len(), kind: kind.into(), x, y });
            g.vertices.len() - 1
        };
        let mut word = delta.clone();
        let mut tracks: Vec<usize> = (0..word.len()).map(|p| add(&mut g, "boundary", 0, 2 * p as i64)).collect();
        let mut x = 0i64;
        for b in &w.blocks {
            enum Step {
                Move(SliceMove),
                Trivalent,
            }
            let steps = b
                .push_up
                .iter()
                .map(|&m| Step::Move(m))
                .chain(std::iter::once(Step::Trivalent))
                .chain(b.push_up.iter().rev().map(|&m| Step::Move(m)));
            for step in steps {
                x += 2;
                match step {
                    Step::Trivalent => {
                        let top = word.len() - 1;
                        let v = add(&mut g, "trivalent", x, 2 * top as i64);
                        let t = add(&mut g, "boundary", x, 2 * h);
                        g.edges.push(GeoEdge { from: tracks[top], to: v, color: word[top] });
                        g.edges.push(GeoEdge { from: v, to: t, color: b.level });
                        tracks[top] = v;
                    }
                    Step::Move(mv @ SliceMove::Braid { at }) => {
                        let v = add(&mut g, "hexavalent", x, 2 * at as i64 + 2);
                        for p in at..at + 3 {
                            g.edges.push(GeoEdge { from: tracks[p], to: v, color: word[p] });
                            tracks[p] = v;
                        }
                        mv.apply(&mut word, usize::MAX);
                    }
                    Step::Move(mv @ SliceMove::Commute { at }) => {
                        let v = add(&mut g, "tetravalent", x, 2 * at as i64 + 1);
                        for p in at..at + 2 {
                            g.edges.push(GeoEdge { from: tracks[p], to: v, color: word[p] });
                            tracks[p] = v;
                        }
                        mv.apply(&mut word, usize::MAX);
                    }
                }
            }
        }
        x += 2;
        for p in 0..word.len() {
            let v = add(&mut g, "boundary", x, 2 * p as i64);
            g.edges.push(GeoEdge { from: tracks[p], to: v, color: word[p] });
        }
        g.width = x;
        g.height = 2 * h;
        g
    }
}

impl WeaveGeometry {
    /// Standalone SVG drawing, one stroke colour per generator.
    pub fn to_svg(&self) -> String {
        const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
        let scale = 20;
        let (w, h) = (self.width * scale + 2 * scale, self.height * scale + 2 * scale);
        let at = |v: usize| {
            let p = &self.vertices[v];
            (p.x * scale + scale, h - (p.y * scale + scale))
        };
        let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
        for e in &self.edges {
            let ((x1, y1), (x2, y2)) = (at(e.from), at(e.to));
            let c = PALETTE[(e.color - 1) % PALETTE.len()];
            out += &format!("  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{c}\" stroke-width=\"3\"/>\n");
        }
        for v in self.vertices.iter().filter(|v| v.kind != "boundary") {
            let (x, y) = at(v.id);
            out += &format!("  <circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"black\"><title>{}</title></circle>\n", v.kind);
        }
        out.push_str("</svg>\n");
        out
    }
}

/// The 2-weave of a polygon triangulation: one trivalent vertex per
/// triangle, one edge per interior diagonal (dual graph).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonWeave {
    pub polygon: usize,
    pub triangles: Vec<[usize; 3]>,
    /// `(t, u, diagonal)` for triangles `t`, `u` sharing an interior diagonal.
    pub edges: Vec<(usize, usize, (usize, usize))>,
}

impl PolygonWeave {
    pub fn trivalent_count(&self) -> usize {
        self.triangles.len()
    }

    /// True when the dual graph is a path.
    pub fn is_path(&self) -> bool {
        let t = self.triangles.len();
        if t <= 1 {
            return self.edges.is_empty();
        }
        let mut deg = vec![0; t];
        for &(a, b, _) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        self.edges.len() == t - 1 && deg.iter().all(|&d| d <= 2)
    }

    /// Triangle indices in path order, starting at a leaf with the smaller
    /// index.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_path() {
            return None;
        }
        let t = self.triangles.len();
        let mut nb = vec![Vec::new(); t];
        for &(a, b, _) in &self.edges {
            nb[a].push(b);
            nb[b].push(a);
        }
        let start = (0..t).find(|&v| nb[v].len() <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = nb[cur].iter().find(|&&x| x != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }
}

pub fn triangulation_weave(m: usize, triangles: &[[usize; 3]]) -> Result<PolygonWeave> {
    // reuse the plabic validation
    crate::plabic::triangulation_graph(m, triangles)?;
    let mut by_diag: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        let mut s = *tri;
        s.sort_unstable();
        for d in [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])] {
            by_diag.entry(d).or_default().push(t);
        }
    }
    let mut edges: Vec<(usize, usize, (usize, usize))> = by_diag
        .into_iter()
        .filter(|(_, ts)| ts.len() == 2)
        .map(|(d, ts)| (ts[0].min(ts[1]), ts[0].max(ts[1]), d))
        .collect();
    edges.sort_unstable();
    if m < 3 {
        return Err(Error::InvalidGraph("polygon needs at least 3 vertices".into()));
    }
    Ok(PolygonWeave { polygon: m, triangles: triangles.to_vec(), edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_up_for_three_strands() {
        assert!(push_up_moves(3, 1).is_empty());
        assert_eq!(push_up_moves(3, 2), vec![SliceMove::Braid { at: 0 }]);
    }

    #[test]
    fn push_up_reaches_every_level() {
        for n in 2..=5 {
            for i in 1..n {
                let mut w = BraidWord::half_twist(n).letters().to_vec();
                for mv in push_up_moves(n, i) {
                    mv.apply(&mut w, usize::MAX);
                }
                assert_eq!(*w.last().unwrap(), i);
                assert!(BraidWord::new(n, w).unwrap().is_reduced_longest());
            }
        }
    }
}
