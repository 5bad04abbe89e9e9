//! Decorated flag chains over a positive braid, generalized minors,
//! merodromies along relative cycles, and the cross / triple ratio formulas
//! for monodromies along closed cycles.
//!
//! A chain is `M_0 = Id`, `M_t = M_{t-1} · τ_{i_t}(z_t)`; the flag at slice
//! `t` is spanned by the leading columns of `M_t` and its decoration is
//! `ω_j = m_1 ∧ … ∧ m_j`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::braid::BraidWord;
use crate::linalg::{det_fraction_free, q, wedge, Matrix, Q};
use crate::weave::{Cycle, StringDiagram};
use crate::{Error, Result};

/// Placement of the `−1` in the `2 × 2` block of `τ_i(z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauConvention {
    /// `[[z, −1], [1, 0]]`.
    #[default]
    Standard,
    /// `[[z, 1], [−1, 0]]`.
    Mirrored,
}

/// Identity except the block at rows/columns `(i, i+1)`.
pub fn tau(n: usize, i: usize, z: &Q) -> Matrix {
    tau_with(n, i, z, TauConvention::Standard)
}

pub fn tau_with(n: usize, i: usize, z: &Q, convention: TauConvention) -> Matrix {
    assert!(1 <= i && i < n, "level {i} out of range for n = {n}");
    let mut m = Matrix::identity(n);
    let k = i - 1;
    let s = match convention {
        TauConvention::Standard => q(1),
        TauConvention::Mirrored => q(-1),
    };
    m[(k, k)] = z.clone();
    m[(k, k + 1)] = -s.clone();
    m[(k + 1, k)] = s;
    m[(k + 1, k + 1)] = Q::zero();
    m
}

/// Leading `i × i` minor, computed fraction-free.
pub fn principal_minor(m: &Matrix, i: usize) -> Q {
    assert!(i <= m.rows() && i <= m.cols());
    if i == 0 {
        return Q::one();
    }
    det_fraction_free(&m.submatrix(0..i, 0..i))
}

/// `e_k` in `ℚ^n` (1-based).
pub fn basis_vector(n: usize, k: usize) -> Vec<Q> {
    (1..=n).map(|r| if r == k { Q::one() } else { Q::zero() }).collect()
}

/// The bottom reference decoration: columns `e_n, e_{n−1}, …, e_1`.
pub fn bottom_flag(n: usize) -> Vec<Vec<Q>> {
    (1..=n).rev().map(|k| basis_vector(n, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedFlagChain {
    pub n: usize,
    pub letters: Vec<usize>,
    pub z: Vec<Q>,
    matrices: Vec<Matrix>,
    pub convention: TauConvention,
    /// RNG seed the parameters were drawn with, if sampled.
    pub seed: Option<u64>,
}

/// Wire format `conf.v1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfJson {
    pub schema: String,
    pub n: usize,
    pub letters: Vec<usize>,
    pub z: Vec<String>,
}

impl DecoratedFlagChain {
    pub fn new(beta: &BraidWord, z: Vec<Q>) -> Result<Self> {
        Self::with_convention(beta, z, TauConvention::Standard)
    }

    pub fn with_convention(beta: &BraidWord, z: Vec<Q>, convention: TauConvention) -> Result<Self> {
        if z.len() != beta.len() {
            return Err(Error::OutOfRange(format!("{} parameters for a word of length {}", z.len(), beta.len())));
        }
        let n = beta.strands();
        let mut matrices = vec![Matrix::identity(n)];
        for (&i, zt) in beta.letters().iter().zip(&z) {
            let next = matrices.last().unwrap().mul(&tau_with(n, i, zt, convention));
            matrices.push(next);
        }
        Ok(DecoratedFlagChain { n, letters: beta.letters().to_vec(), z, matrices, convention, seed: None })
    }

    pub fn braid(&self) -> BraidWord {
        BraidWord::new(self.n, self.letters.clone()).expect("chain letters are valid")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `M_t` for `t ∈ 0..=ℓ`.
    pub fn matrix(&self, t: usize) -> &Matrix {
        &self.matrices[t]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `ω_j(t)` as its spanning vectors (leading `j` columns of `M_t`).
    pub fn decoration(&self, t: usize, j: usize) -> Vec<Vec<Q>> {
        self.matrices[t].leading_columns(j)
    }

    pub fn to_json(&self) -> ConfJson {
        ConfJson { schema: "conf.v1".into(), n: self.n, letters: self.letters.clone(), z: self.z.iter().map(|v| v.to_string()).collect() }
    }

    pub fn from_json(c: &ConfJson) -> Result<Self> {
        let beta = BraidWord::new(c.n, c.letters.clone())?;
        let z = c
            .z
            .iter()
            .map(|s| s.parse::<Q>().map_err(|_| Error::OutOfRange(format!("not a rational: {s}"))))
            .collect::<Result<Vec<Q>>>()?;
        Self::new(&beta, z)
    }

    /// Every minor the in-scope operations divide by is nonzero: all leading
    /// minors of all `M_t`, and the wedges entering the closed-cycle
    /// monodromies.
    pub fn is_generic(&self) -> bool {
        let n = self.n;
        for m in &self.matrices {
            for i in 1..n {
                if principal_minor(m, i).is_zero() {
                    return false;
                }
            }
        }
        let strings = StringDiagram::new(&self.braid());
        strings.strings.iter().filter(|s| s.closed).all(|s| {
            let (i, t, tp) = (s.level, s.left, s.right);
            let a = self.matrices[t - 1].column(i - 1);
            let b = self.matrices[t].column(i - 1);
            let c = self.matrices[tp].column(i - 1);
            !level_pair(&self.matrices[t - 1], i, &a, &b).is_zero() && !level_pair(&self.matrices[t], i, &b, &c).is_zero()
        })
    }
}

/// Draws `z_t` uniformly from `{±1, …, ±9}` until the chain is generic
/// (at most 64 attempts).
pub fn sample_conf(beta: &BraidWord, seed: u64) -> Result<DecoratedFlagChain> {
    sample_conf_with(beta, seed, TauConvention::Standard)
}

pub fn sample_conf_with(beta: &BraidWord, seed: u64, convention: TauConvention) -> Result<DecoratedFlagChain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let z: Vec<Q> = (0..beta.len()).map(|_| sample_z(&mut rng)).collect();
        let mut chain = DecoratedFlagChain::with_convention(beta, z, convention)?;
        if chain.is_generic() {
            chain.seed = Some(seed);
            return Ok(chain);
        }
    }
    Err(Error::Degenerate(format!("no generic chain for {beta} after 64 draws (seed {seed})")))
}

pub fn sample_z<R: Rng>(rng: &mut R) -> Q {
    let v: i64 = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        q(v)
    } else {
        q(-v)
    }
}

/// `A_a = Δ_i(M_j)` for every string `a` on level `i`, with `j` the node
/// where the string starts; the value is checked to be the same for every
/// slice the string crosses.
pub fn initial_seed_values(chain: &DecoratedFlagChain, strings: &StringDiagram) -> Result<Vec<Q>> {
    strings
        .strings
        .iter()
        .map(|s| {
            let v = principal_minor(chain.matrix(s.left), s.level);
            for j in s.slices() {
                if principal_minor(chain.matrix(j), s.level) != v {
                    return Err(Error::CheckFailed(format!("minor of string {s:?} changes at slice {j}")));
                }
            }
            if v.is_zero() {
                return Err(Error::Degenerate(format!("string {s:?} has value 0")));
            }
            Ok(v)
        })
        .collect()
}

/// Decorations propagated from the standard decoration of `B_0` through
/// every crossing by the unique compatible choice.  At a crossing on level
/// `i` only `v_i, v_{i+1}` change: the new line `V'_i / V_{i−1}` is read off
/// the next flag, its vector `v'_i` is normalised so that
/// `ω_{i−1} ∧ v_i ∧ v'_i = ω_{i+1}`, and `v'_{i+1} = −v_i` keeps
/// `ω'_{i+1} = ω_{i+1}`.  Only the flags (spans of leading columns) of the
/// chain are used.
pub fn propagate_decorations(chain: &DecoratedFlagChain) -> Result<Vec<Vec<Vec<Q>>>> {
    let n = chain.n;
    let mut v: Vec<Vec<Q>> = (1..=n).map(|k| basis_vector(n, k)).collect();
    let mut out = vec![v.clone()];
    for (t, &i) in chain.letters.iter().enumerate() {
        let k = i - 1;
        // any representative of the new line; only its class mod V_{i-1} matters
        let u = chain.matrix(t + 1).column(k);
        let coords = Matrix::from_columns(&v).solve(&u).expect("decoration is a basis");
        if coords[k + 1].is_zero() {
            return Err(Error::Degenerate(format!("flags at crossing {} are not in position s_{i}", t + 1)));
        }
        let lambda = coords[k + 1].recip();
        let new_i: Vec<Q> = u.iter().map(|x| x * &lambda).collect();
        let new_next: Vec<Q> = v[k].iter().map(|x| -x).collect();
        v[k] = new_i;
        v[k + 1] = new_next;
        out.push(v.clone());
    }
    Ok(out)
}

/// Strand transport factors `t_r`, `r = 1..=depth`: the coefficient of
/// `e_r` when `v_r` is written in the basis `v_1, …, v_{r−1}, e_r, …, e_n`
/// (top decoration against the bottom reference decoration).
pub fn transport_factors(decoration: &[Vec<Q>], depth: usize) -> Result<Vec<Q>> {
    let n = decoration.len();
    (1..=depth)
        .map(|r| {
            let mut cols: Vec<Vec<Q>> = decoration[..r - 1].to_vec();
            cols.extend((r..=n).map(|k| basis_vector(n, k)));
            let sol = Matrix::from_columns(&cols)
                .solve(&decoration[r - 1])
                .ok_or_else(|| Error::Degenerate(format!("strand {r} is not transverse to the bottom flag")))?;
            Ok(sol[r - 1].clone())
        })
        .collect()
}

/// Merodromy along the relative cycle `η_{a,j}` of depth `i`: the product
/// `t_1 ⋯ t_i` of strand transports at slice `j`.
pub fn merodromy_transport(chain: &DecoratedFlagChain, cycle: &Cycle) -> Result<Q> {
    let Cycle::Relative { slice, depth, .. } = *cycle else {
        return Err(Error::OutOfRange("merodromy needs a relative cycle".into()));
    };
    let decorations = propagate_decorations(chain)?;
    let deco = decorations.get(slice).ok_or_else(|| Error::OutOfRange(format!("slice {slice}")))?;
    Ok(transport_factors(deco, depth)?.into_iter().fold(Q::one(), |acc, t| acc * t))
}

/// Report for the minor identity: merodromy of `η_{a,j}` against
/// `Δ_i(M_j)` for every string and every slice it crosses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl MinorCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_minor_identity(chain: &DecoratedFlagChain) -> Result<MinorCheck> {
    let strings = StringDiagram::new(&chain.braid());
    let decorations = propagate_decorations(chain)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for (a, s) in strings.strings.iter().enumerate() {
        for j in s.slices() {
            let t = transport_factors(&decorations[j], s.level)?.into_iter().fold(Q::one(), |acc, x| acc * x);
            let m = principal_minor(chain.matrix(j), s.level);
            checked += 1;
            if t != m {
                failures.push(format!("string {a} at slice {j}: merodromy {t} vs minor {m}"));
            }
        }
    }
    Ok(MinorCheck { checked, failures })
}

/// `(a ∧ b)(c ∧ d) / ((b ∧ c)(d ∧ a))` for four vectors in a plane.
pub fn cross_ratio(a: &[Q], b: &[Q], c: &[Q], d: &[Q]) -> Result<Q> {
    let w = |x: &[Q], y: &[Q]| wedge(&[x.to_vec(), y.to_vec()]);
    let den = w(b, c) * w(d, a);
    if den.is_zero() {
        return Err(Error::Degenerate("consecutive lines are not transverse".into()));
    }
    Ok(w(a, b) * w(c, d) / den)
}

/// The same cross ratio obtained by composing the quotient transports
/// `l_a → V/l_b → l_c → V/l_d → l_a` as explicit linear maps.
pub fn cross_ratio_by_transport(a: &[Q], b: &[Q], c: &[Q], d: &[Q]) -> Result<Q> {
    // x ≡ λ y (mod l_w): solve [y, w] (λ, μ) = x
    let lift = |x: &[Q], y: &[Q], w: &[Q]| -> Result<Q> {
        Matrix::from_columns(&[y.to_vec(), w.to_vec()])
            .solve(x)
            .map(|s| s[0].clone())
            .ok_or_else(|| Error::Degenerate("lines are not transverse".into()))
    };
    let l1 = lift(a, c, b)?;
    let cx: Vec<Q> = c.iter().map(|x| x * &l1).collect();
    lift(&cx, a, d)
}

/// A decorated line together with a decorated plane containing it, in a
/// 3-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedFlag3 {
    pub line: Vec<Q>,
    pub plane: [Vec<Q>; 2],
}

impl DecoratedFlag3 {
    pub fn new(line: Vec<Q>, second: Vec<Q>) -> Self {
        DecoratedFlag3 { plane: [line.clone(), second], line }
    }

    /// `ω_plane ∧ x`.
    fn plane_wedge(&self, x: &[Q]) -> Q {
        wedge(&[self.plane[0].clone(), self.plane[1].clone(), x.to_vec()])
    }
}

/// `(ω_B∧ω_a)(ω_C∧ω_b)(ω_A∧ω_c) / ((ω_B∧ω_c)(ω_C∧ω_a)(ω_A∧ω_b))`.
pub fn triple_ratio(a: &DecoratedFlag3, b: &DecoratedFlag3, c: &DecoratedFlag3) -> Result<Q> {
    let num = b.plane_wedge(&a.line) * c.plane_wedge(&b.line) * a.plane_wedge(&c.line);
    let den = b.plane_wedge(&c.line) * c.plane_wedge(&a.line) * a.plane_wedge(&b.line);
    if den.is_zero() {
        return Err(Error::Degenerate("flags are not pairwise transverse".into()));
    }
    Ok(num / den)
}

/// Monodromy around a Y-cycle by composing
/// `l_a → V/l_B → l_c → V/l_A → l_b → V/l_C → l_a` as linear maps.
pub fn triple_ratio_by_transport(a: &DecoratedFlag3, b: &DecoratedFlag3, c: &DecoratedFlag3) -> Result<Q> {
    let lift = |x: &[Q], target: &[Q], modulo: &[Vec<Q>; 2]| -> Result<Q> {
        Matrix::from_columns(&[target.to_vec(), modulo[0].clone(), modulo[1].clone()])
            .solve(x)
            .map(|s| s[0].clone())
            .ok_or_else(|| Error::Degenerate("flags are not pairwise transverse".into()))
    };
    let scale = |v: &[Q], s: &Q| -> Vec<Q> { v.iter().map(|x| x * s).collect() };
    let l1 = lift(&a.line, &c.line, &b.plane)?;
    let l2 = lift(&scale(&c.line, &l1), &b.line, &a.plane)?;
    lift(&scale(&b.line, &l2), &a.line, &c.plane)
}

/// `ω_{i−1}(F)` paired with the bottom flag: `det[f_1, …, f_{i−1}, e_n, …, e_i]`.
/// Dividing by it turns wedges in `V_{i+1}(F)/V_{i−1}(F)` into values
/// independent of how `V_{i−1}(F)` is decorated.
fn level_volume(f: &Matrix, i: usize) -> Q {
    let n = f.rows();
    let mut cols = f.leading_columns(i - 1);
    cols.extend((i..=n).rev().map(|k| basis_vector(n, k)));
    wedge(&cols)
}

/// `x ∧ y` in `V_{i+1}(F)/V_{i−1}(F)`:
/// `det[f_1, …, f_{i−1}, x, y, e_n, …, e_{i+2}] / det[f_1, …, f_{i−1}, e_n, …, e_i]`.
fn level_pair(f: &Matrix, i: usize, x: &[Q], y: &[Q]) -> Q {
    let n = f.rows();
    let mut cols = f.leading_columns(i - 1);
    cols.push(x.to_vec());
    cols.push(y.to_vec());
    cols.extend((i + 2..=n).rev().map(|k| basis_vector(n, k)));
    wedge(&cols) / level_volume(f, i)
}

/// `x ∧ b_0` in `V_{i+1}(F)/V_{i−1}(F)`, `b_0 = e_{i+1}` being the line the
/// bottom flag cuts out.
fn level_pair_bottom(f: &Matrix, i: usize, x: &[Q]) -> Q {
    let n = f.rows();
    let mut cols = f.leading_columns(i - 1);
    cols.push(x.to_vec());
    cols.extend((i + 1..=n).rev().map(|k| basis_vector(n, k)));
    wedge(&cols) / level_volume(f, i)
}

/// Monodromy along a closed cycle.
///
/// For the long I-cycle of a string `(t, t')` on level `i`, the four lines
/// are `ℓ_{t−1}`, `ℓ_t`, `ℓ_{t'}` (the `i`-th columns of the chain) and the
/// bottom line `b_0`, each pair wedged in the level-`i` quotient of the
/// flag where the two lines meet; composing the four edge transports gives
/// `(ℓ_{t−1}∧ℓ_t)(ℓ_{t'}∧b_0) / ((ℓ_{t−1}∧b_0)(ℓ_t∧ℓ_{t'}))`.  A cycle
/// traversed backwards (`from > to`) has the reciprocal monodromy.  Y-cycles
/// are supported on 3-sheet weaves.
pub fn cycle_monodromy(chain: &DecoratedFlagChain, cycle: &Cycle) -> Result<Q> {
    match *cycle {
        Cycle::LongI { level, from_block, to_block, .. } => {
            if from_block > to_block {
                let forward = Cycle::LongI { string: 0, level, from_block: to_block, to_block: from_block };
                return cycle_monodromy(chain, &forward).map(|v| v.recip());
            }
            let (i, t, tp) = (level, from_block, to_block);
            if t == 0 || tp > chain.len() || t >= tp {
                return Err(Error::OutOfRange(format!("blocks {t}..{tp}")));
            }
            let a = chain.matrix(t - 1).column(i - 1);
            let b = chain.matrix(t).column(i - 1);
            let c = chain.matrix(tp).column(i - 1);
            let num = level_pair(chain.matrix(t - 1), i, &a, &b) * level_pair_bottom(chain.matrix(tp), i, &c);
            let den = level_pair_bottom(chain.matrix(t - 1), i, &a) * level_pair(chain.matrix(t), i, &b, &c);
            if den.is_zero() {
                return Err(Error::Degenerate("adjacent lines along the cycle are not transverse".into()));
            }
            Ok(num / den)
        }
        Cycle::Y { blocks } => {
            if chain.n != 3 {
                return Err(Error::OutOfRange("Y-cycles are evaluated on 3-sheet weaves".into()));
            }
            let f: Vec<DecoratedFlag3> = blocks
                .iter()
                .map(|&t| {
                    let m = chain.matrix(t);
                    DecoratedFlag3::new(m.column(0), m.column(1))
                })
                .collect();
            triple_ratio_by_transport(&f[0], &f[1], &f[2])
        }
        Cycle::Relative { .. } => Err(Error::OutOfRange("monodromy needs a closed cycle".into())),
    }
}

/// The three flags a Y-cycle on blocks `t_1, t_2, t_3` meets.
pub fn y_cycle_flags(chain: &DecoratedFlagChain, blocks: [usize; 3]) -> [DecoratedFlag3; 3] {
    blocks.map(|t| {
        let m = chain.matrix(t);
        DecoratedFlag3::new(m.column(0), m.column(1))
    })
}

/// `X_a = ∏_c A_c^{ε_{ac}}` over all strings `c`.
pub fn x_from_a_values(epsilon: &[Vec<i64>], a_values: &[Q], a: usize) -> Q {
    epsilon[a].iter().zip(a_values).fold(Q::one(), |acc, (&e, v)| acc * pow(v, e))
}

pub fn pow(v: &Q, e: i64) -> Q {
    let mut out = Q::one();
    let base = if e < 0 { v.recip() } else { v.clone() };
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Closed-cycle monodromy against the A-variables of the same chain.
pub fn check_x_duality(chain: &DecoratedFlagChain) -> Result<DualityCheck> {
    let strings = StringDiagram::new(&chain.braid());
    let eps = strings.intersection_matrix();
    let a_values = initial_seed_values(chain, &strings)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (a, s) in strings.strings.iter().enumerate().filter(|(_, s)| s.closed) {
        let cycle = Cycle::LongI { string: a, level: s.level, from_block: s.left, to_block: s.right };
        let m = cycle_monodromy(chain, &cycle)?;
        let x = x_from_a_values(&eps, &a_values, a);
        checked += 1;
        if m != x {
            failures.push(format!("string {a}: monodromy {m} vs product {x}"));
        }
    }
    Ok(DualityCheck { checked, failures })
}

/// Polygon-scale configuration for the square-move law: nine decorated
/// lines in `ℚ²` at the vertices of a 9-gon whose triangulation contains the
/// square `(0, 3, 5, 7)` with diagonal `(0, 5)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareConfig {
    pub lines: Vec<Vec<Q>>,
}

pub const SQUARE_BEFORE: [[usize; 3]; 7] = [[0, 1, 2], [0, 2, 3], [3, 4, 5], [5, 6, 7], [0, 7, 8], [0, 3, 5], [0, 5, 7]];
pub const SQUARE_AFTER: [[usize; 3]; 7] = [[0, 1, 2], [0, 2, 3], [3, 4, 5], [5, 6, 7], [0, 7, 8], [0, 3, 7], [3, 5, 7]];
pub const SQUARE_DIAGONAL: (usize, usize) = (0, 5);
pub const SQUARE_FLIPPED: (usize, usize) = (3, 7);

impl SquareConfig {
    /// Lines with integer coordinates in `[-9, 9]`, redrawn until every
    /// cross ratio before and after the move is defined and nonzero.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let lines: Vec<Vec<Q>> = (0..9).map(|_| (0..2).map(|_| q(rng.gen_range(-9..=9))).collect()).collect();
            let config = SquareConfig { lines };
            if config.is_generic() {
                return config;
            }
        }
    }

    pub fn is_generic(&self) -> bool {
        [&SQUARE_BEFORE[..], &SQUARE_AFTER[..]].iter().all(|tris| {
            polygon_monodromies(&self.lines, tris).is_ok_and(|m| m.values().all(|v| !v.is_zero()))
        })
    }
}

/// For each interior diagonal `(a, c)` with triangles `(a, b, c)`,
/// `(a, c, d)`: the quadrilateral `(a, b, c, d)` in cyclic order.
pub fn diagonal_quadrilaterals(triangles: &[[usize; 3]]) -> BTreeMap<(usize, usize), [usize; 4]> {
    let mut opposite: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for t in triangles {
        let mut s = *t;
        s.sort_unstable();
        for (x, y, o) in [(s[0], s[1], s[2]), (s[1], s[2], s[0]), (s[0], s[2], s[1])] {
            opposite.entry((x, y)).or_default().push(o);
        }
    }
    opposite
        .into_iter()
        .filter(|(_, o)| o.len() == 2)
        .map(|((a, c), o)| {
            let inside = |x: usize| a < x && x < c;
            let b = *o.iter().find(|&&x| inside(x)).unwrap();
            let d = *o.iter().find(|&&x| !inside(x)).unwrap();
            ((a, c), [a, b, c, d])
        })
        .collect()
}

/// The skew form on interior diagonals: inside each triangle `x < y < z`
/// the sides `xy → yz → xz → xy` each pair `+1` with the next.
pub fn triangulation_form(triangles: &[[usize; 3]]) -> BTreeMap<((usize, usize), (usize, usize)), i64> {
    let mut e = BTreeMap::new();
    for t in triangles {
        let mut s = *t;
        s.sort_unstable();
        let sides = [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])];
        for k in 0..3 {
            let (p, r) = (sides[k], sides[(k + 1) % 3]);
            *e.entry((p, r)).or_insert(0) += 1;
            *e.entry((r, p)).or_insert(0) -= 1;
        }
    }
    e
}

/// Monodromy of every interior diagonal: minus the cross ratio of its
/// quadrilateral.
pub fn polygon_monodromies(lines: &[Vec<Q>], triangles: &[[usize; 3]]) -> Result<BTreeMap<(usize, usize), Q>> {
    diagonal_quadrilaterals(triangles)
        .into_iter()
        .map(|(d, [a, b, c, e])| Ok((d, -cross_ratio(&lines[a], &lines[b], &lines[c], &lines[e])?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareMoveReport {
    /// `m_F` before the move.
    pub m_f: String,
    /// True when `m_F = −1` and the move degenerates.
    pub degenerate: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SquareMoveReport {
    pub fn holds(&self) -> bool {
        self.degenerate || self.failures.is_empty()
    }
}

/// Recomputes all monodromies after the square move directly from the
/// lines and checks `m'_F = m_F^{-1}` and, for `C ≠ F`,
/// `m'(γ_C + [⟨γ_C, γ_F⟩]_+ γ_F) = m_C (1 + m_F)^{⟨γ_F, γ_C⟩}`: the cycle of
/// `C` after the move is the image of `γ_C`, which picks up copies of `γ_F`
/// where the two cycles meet positively.
pub fn square_move_check(config: &SquareConfig) -> Result<SquareMoveReport> {
    let before = polygon_monodromies(&config.lines, &SQUARE_BEFORE)?;
    let after = polygon_monodromies(&config.lines, &SQUARE_AFTER)?;
    let form = triangulation_form(&SQUARE_BEFORE);
    let m_f = before[&SQUARE_DIAGONAL].clone();
    if m_f == q(-1) {
        return Ok(SquareMoveReport { m_f: m_f.to_string(), degenerate: true, checked: 0, failures: vec![] });
    }
    let m_f_new = after[&SQUARE_FLIPPED].clone();
    let mut failures = Vec::new();
    let mut checked = 1;
    if m_f_new != m_f.recip() {
        failures.push(format!("flipped diagonal: {m_f_new} vs 1/{m_f}"));
    }
    for (d, m_c) in &before {
        if *d == SQUARE_DIAGONAL {
            continue;
        }
        let pairing = form.get(&(SQUARE_DIAGONAL, *d)).copied().unwrap_or(0);
        let lhs = &after[d] * pow(&m_f_new, (-pairing).max(0));
        let rhs = m_c * pow(&(q(1) + &m_f), pairing);
        checked += 1;
        if lhs != rhs {
            failures.push(format!("diagonal {d:?}: {lhs} vs {rhs}"));
        }
    }
    Ok(SquareMoveReport { m_f: m_f.to_string(), degenerate: false, checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_block() {
        let t = tau(2, 1, &q(5));
        assert_eq!(t, Matrix::from_i64(&[&[5, -1], &[1, 0]]));
        assert_eq!(t.det(), q(1));
    }

    #[test]
    fn single_crossing_transport() {
        let beta = BraidWord::parse("s1").unwrap();
        let chain = DecoratedFlagChain::new(&beta, vec![q(3)]).unwrap();
        let eta = Cycle::Relative { string: 0, slice: 1, depth: 1 };
        assert_eq!(merodromy_transport(&chain, &eta).unwrap(), q(3));
    }
}
