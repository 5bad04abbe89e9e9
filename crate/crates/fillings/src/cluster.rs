//! Seeds with numerically evaluated cluster variables, mutation, and the
//! exchange graph.
//!
//! A seed carries its cluster variables as exact values at a handful of
//! independent generic points.  Two seeds are the same cluster when the
//! multisets of per-vertex value vectors of their mutable variables agree.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::braid::BraidWord;
use crate::flags::{initial_seed_values, pow, sample_conf};
use crate::linalg::Q;
use crate::weave::StringDiagram;
use crate::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 3;
pub const ESCALATED_SAMPLES: usize = 5;
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    /// Exchange matrix over all vertices (mutable and frozen).
    pub epsilon: Vec<Vec<i64>>,
    pub frozen: Vec<bool>,
    /// `samples[s][v]`: value of the variable at vertex `v` at point `s`.
    pub samples: Vec<Vec<Q>>,
    /// Parameters `z` of the chain each sample was evaluated at.
    pub points: Vec<Vec<Q>>,
    /// Mutation word from the initial seed.
    pub history: Vec<usize>,
}

/// Unordered multiset of mutable value vectors, sorted.
pub type Fingerprint = Vec<Vec<Q>>;

impl Seed {
    pub fn new(epsilon: Vec<Vec<i64>>, frozen: Vec<bool>, samples: Vec<Vec<Q>>) -> Result<Self> {
        let m = frozen.len();
        if epsilon.len() != m || epsilon.iter().any(|r| r.len() != m) || samples.iter().any(|s| s.len() != m) {
            return Err(Error::OutOfRange("seed dimensions disagree".into()));
        }
        let mutable: Vec<usize> = (0..m).filter(|&v| !frozen[v]).collect();
        if mutable.iter().any(|&a| mutable.iter().any(|&b| epsilon[a][b] != -epsilon[b][a])) {
            return Err(Error::OutOfRange("exchange matrix is not skew on mutable vertices".into()));
        }
        if samples.iter().flatten().any(Q::is_zero) {
            return Err(Error::Degenerate("cluster variable vanishes at a sample".into()));
        }
        Ok(Seed { epsilon, frozen, samples, points: Vec::new(), history: Vec::new() })
    }

    /// Initial seed of the fence of `beta`: vertices are strings, values the
    /// minors `A_a` at `s` chains sampled with seeds `rng_seed, rng_seed+1, …`.
    pub fn from_braid(beta: &BraidWord, s: usize, rng_seed: u64) -> Result<Self> {
        let strings = StringDiagram::new(beta);
        let mut samples = Vec::with_capacity(s);
        let mut points = Vec::with_capacity(s);
        for k in 0..s as u64 {
            let chain = sample_conf(beta, rng_seed.wrapping_add(k))?;
            samples.push(initial_seed_values(&chain, &strings)?);
            points.push(chain.z.clone());
        }
        let frozen = strings.strings.iter().map(|x| !x.closed).collect();
        let mut seed = Seed::new(strings.intersection_matrix(), frozen, samples)?;
        seed.points = points;
        Ok(seed)
    }

    pub fn len(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frozen.is_empty()
    }

    pub fn mutable(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.frozen[v]).collect()
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut fp: Vec<Vec<Q>> =
            self.mutable().into_iter().map(|v| self.samples.iter().map(|s| s[v].clone()).collect()).collect();
        fp.sort();
        fp
    }

    /// `X_a = ∏_c A_c^{ε_{ac}}` at every sample.
    pub fn x_from_a(&self, a: usize) -> Vec<Q> {
        self.samples
            .iter()
            .map(|s| self.epsilon[a].iter().zip(s).fold(Q::one(), |acc, (&e, v)| acc * pow(v, e)))
            .collect()
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            schema: "seed.v1".into(),
            epsilon: self.epsilon.clone(),
            frozen: self.frozen.clone(),
            samples: self.samples.iter().map(|s| s.iter().map(|v| v.to_string()).collect()).collect(),
            history: self.history.clone(),
        }
    }
}

/// Wire format `seed.v1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub schema: String,
    pub epsilon: Vec<Vec<i64>>,
    pub frozen: Vec<bool>,
    pub samples: Vec<Vec<String>>,
    pub history: Vec<usize>,
}

/// Mutation at a mutable vertex `k`: the exchange relation per sample and
/// the standard matrix mutation.
pub fn mutate_seed(seed: &Seed, k: usize) -> Result<Seed> {
    if k >= seed.len() || seed.frozen[k] {
        return Err(Error::NotMutable(k));
    }
    let m = seed.len();
    let e = &seed.epsilon;
    let mut samples = Vec::with_capacity(seed.samples.len());
    for s in &seed.samples {
        let mut up = Q::one();
        let mut down = Q::one();
        for u in 0..m {
            match e[u][k] {
                x if x > 0 => up *= pow(&s[u], x),
                x if x < 0 => down *= pow(&s[u], -x),
                _ => {}
            }
        }
        let new = (up + down) / &s[k];
        if new.is_zero() {
            return Err(Error::Degenerate(format!("mutation at {k} produces a zero value")));
        }
        let mut s2 = s.clone();
        s2[k] = new;
        samples.push(s2);
    }
    let epsilon = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == k || j == k {
                        -e[i][j]
                    } else {
                        e[i][j] + (e[i][k].abs() * e[k][j] + e[i][k] * e[k][j].abs()) / 2
                    }
                })
                .collect()
        })
        .collect();
    let mut history = seed.history.clone();
    history.push(k);
    Ok(Seed { epsilon, frozen: seed.frozen.clone(), samples, points: seed.points.clone(), history })
}

pub fn seeds_equal(a: &Seed, b: &Seed) -> bool {
    a.fingerprint() == b.fingerprint()
}

/// Whether two seeds with equal fingerprints also carry the same exchange
/// matrix once their mutable vertices are matched by value.
fn same_quiver(a: &Seed, b: &Seed) -> bool {
    let key = |s: &Seed, v: usize| -> Vec<Q> { s.samples.iter().map(|x| x[v].clone()).collect() };
    let bm: HashMap<Vec<Q>, usize> = b.mutable().into_iter().map(|v| (key(b, v), v)).collect();
    let am = a.mutable();
    let Some(map) = am.iter().map(|&v| bm.get(&key(a, v)).copied()).collect::<Option<Vec<usize>>>() else {
        return false;
    };
    am.iter().enumerate().all(|(x, &u)| am.iter().enumerate().all(|(y, &v)| a.epsilon[u][v] == b.epsilon[map[x]][map[y]]))
}

#[derive(Clone, Debug)]
pub struct ExchangeNode {
    pub seed: Seed,
    /// Shortest mutation word reaching this cluster.
    pub word: Vec<usize>,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub nodes: Vec<ExchangeNode>,
    /// `(from, to, vertex)`, one entry per unordered edge.
    pub edges: Vec<(usize, usize, usize)>,
    /// False when exploration stopped at the depth cap.
    pub complete: bool,
    /// Samples per seed actually used (after any escalation).
    pub samples: usize,
}

impl ExchangeGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, seed: &Seed) -> Option<usize> {
        let fp = seed.fingerprint();
        self.nodes.iter().position(|n| n.seed.fingerprint() == fp)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", digest(&n.seed.fingerprint()));
        }
        for (a, b, v) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b} [label=\"{v}\"];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "exchange.v1",
            "count": self.nodes.len(),
            "complete": self.complete,
            "samples": self.samples,
            "nodes": self.nodes.iter().enumerate().map(|(i, n)| serde_json::json!({
                "id": i,
                "fingerprint": digest(&n.seed.fingerprint()),
                "word": n.word,
                "depth": n.depth,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b, v)| serde_json::json!({"from": a, "to": b, "vertex": v})).collect::<Vec<_>>(),
        })
    }
}

/// Short stable hex digest of a fingerprint (64-bit FNV-1a of its text).
pub fn digest(fp: &Fingerprint) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for vector in fp {
        for v in vector {
            for b in v.to_string().bytes().chain(*b",") {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h ^= b';' as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// Breadth-first closure under mutation, up to `budget` clusters and
/// (optionally) a depth cap.
pub fn explore(root: &Seed, budget: usize, max_depth: Option<usize>) -> Result<ExchangeGraph> {
    let mut index: HashMap<Fingerprint, usize> = HashMap::new();
    let mut nodes = vec![ExchangeNode { seed: root.clone(), word: Vec::new(), depth: 0 }];
    index.insert(root.fingerprint(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut complete = true;
    while let Some(i) = queue.pop_front() {
        if max_depth.is_some_and(|d| nodes[i].depth >= d) {
            complete = false;
            continue;
        }
        for k in nodes[i].seed.mutable() {
            let next = mutate_seed(&nodes[i].seed, k)?;
            let fp = next.fingerprint();
            match index.get(&fp) {
                Some(&j) => {
                    if !same_quiver(&next, &nodes[j].seed) {
                        return Err(Error::CheckFailed("fingerprint collision between different quivers".into()));
                    }
                    if i < j && !edges.contains(&(i, j, k)) {
                        edges.push((i, j, k));
                    }
                }
                None => {
                    if nodes.len() >= budget {
                        return Err(Error::BudgetExceeded(format!(
                            "more than {budget} clusters; the seed is probably of infinite type"
                        )));
                    }
                    let j = nodes.len();
                    index.insert(fp, j);
                    let mut word = nodes[i].word.clone();
                    word.push(k);
                    let depth = nodes[i].depth + 1;
                    nodes.push(ExchangeNode { seed: next, word, depth });
                    edges.push((i, j, k));
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(ExchangeGraph { nodes, edges, complete, samples: root.sample_count() })
}

/// Full exchange graph of the fence seed of `beta`, starting with
/// `DEFAULT_SAMPLES` points and escalating once to `ESCALATED_SAMPLES` if
/// two different quivers share a fingerprint.  A sample point where some
/// cluster variable vanishes is not generic; the points are then redrawn,
/// at most `RESAMPLE_LIMIT` times.
pub fn exchange_graph(beta: &BraidWord, rng_seed: u64, budget: usize) -> Result<ExchangeGraph> {
    with_resampling(rng_seed, |seed| {
        let root = Seed::from_braid(beta, DEFAULT_SAMPLES, seed)?;
        match explore(&root, budget, None) {
            Err(Error::CheckFailed(_)) => explore(&Seed::from_braid(beta, ESCALATED_SAMPLES, seed)?, budget, None),
            other => other,
        }
    })
}

pub const RESAMPLE_LIMIT: u64 = 8;

/// Runs `f` with `rng_seed`, then with fresh seeds while it reports a
/// degenerate sample.
pub fn with_resampling<T>(rng_seed: u64, mut f: impl FnMut(u64) -> Result<T>) -> Result<T> {
    let mut attempt = 0;
    loop {
        match f(rng_seed.wrapping_add(attempt * 1_000_003)) {
            Err(Error::Degenerate(_)) if attempt + 1 < RESAMPLE_LIMIT => attempt += 1,
            other => return other,
        }
    }
}

pub fn exchange_graph_count(root: &Seed, budget: usize) -> Result<usize> {
    explore(root, budget, None).map(|g| g.len())
}

/// Report for the mutation law of X-variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XLawCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl XLawCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Mutates at `k` and checks, at every sample, `X'_k = X_k^{-1}` and for
/// every other mutable `ξ`
/// `X'_ξ · X'_k^{[ε_{ξk}]_+} = X_ξ (1 + X_k)^{ε_{kξ}}`: the cycle `ξ` after
/// the mutation is the image `ξ + [⟨ξ, γ⟩]_+ γ` of the old one.
pub fn check_x_mutation_law(seed: &Seed, k: usize) -> Result<XLawCheck> {
    let next = mutate_seed(seed, k)?;
    let xk = seed.x_from_a(k);
    let xk2 = next.x_from_a(k);
    let mut failures = Vec::new();
    let mut checked = 0;
    for s in 0..seed.sample_count() {
        checked += 1;
        if xk2[s] != xk[s].recip() {
            failures.push(format!("sample {s}: X'_{k} = {} vs 1/{}", xk2[s], xk[s]));
        }
    }
    for xi in seed.mutable().into_iter().filter(|&v| v != k) {
        let before = seed.x_from_a(xi);
        let after = next.x_from_a(xi);
        let e = seed.epsilon[xi][k];
        for s in 0..seed.sample_count() {
            let lhs = &after[s] * pow(&xk2[s], e.max(0));
            let rhs = &before[s] * pow(&(Q::one() + &xk[s]), seed.epsilon[k][xi]);
            checked += 1;
            if lhs != rhs {
                failures.push(format!("sample {s}, vertex {xi}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(XLawCheck { checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn a2() -> Seed {
        Seed::new(
            vec![vec![0, 1], vec![-1, 0]],
            vec![false, false],
            vec![vec![q(2), q(3)], vec![q(5), q(7)], vec![q(-4), q(9)]],
        )
        .unwrap()
    }

    #[test]
    fn involution() {
        let s = a2();
        let back = mutate_seed(&mutate_seed(&s, 0).unwrap(), 0).unwrap();
        assert_eq!(back.epsilon, s.epsilon);
        assert_eq!(back.samples, s.samples);
    }

    #[test]
    fn a2_has_five_clusters() {
        assert_eq!(exchange_graph_count(&a2(), 100).unwrap(), 5);
    }

    #[test]
    fn frozen_vertex_is_rejected() {
        let mut s = a2();
        s.frozen[1] = true;
        assert!(matches!(mutate_seed(&s, 1), Err(Error::NotMutable(1))));
    }
}
