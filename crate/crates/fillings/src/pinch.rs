//! Pinching sequences of positive braids.
//!
//! Pinching the crossings of `β` in the order `σ` produces a filling; its
//! cluster chart is computed by factoring the flag chain crossing by
//! crossing.  At each pinch the current parameter `w` of the pinched
//! crossing is recorded as a chart coordinate, and the lower-unipotent /
//! diagonal remainder of `τ_i(w)` is pushed through the crossings to its
//! left and right, which updates their parameters.  The recorded
//! coordinates of a full order are monomials in one cluster of the fence
//! seed; the cluster is recognised by the lattice of exponent vectors they
//! span.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};

use crate::braid::BraidWord;
use crate::cluster::{exchange_graph, explore, with_resampling, ExchangeGraph, Seed, ESCALATED_SAMPLES};
use crate::flags::tau;
use crate::linalg::{hermite_normal_form, Matrix, Q};
use crate::{Error, Result};

const LATTICE_CLASH: &str = "two clusters span the same lattice";

/// `σ(t)` = 1-based position pinched at step `t`.
pub type PinchOrder = Vec<usize>;

/// All permutations of `1..=k` in lexicographic order.
pub fn all_orders(k: usize) -> Vec<PinchOrder> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Whether slots `j, j+1` of `σ` may be exchanged: some crossing pinched
/// after both lies strictly between the two positions.
pub fn swap_allowed(order: &[usize], j: usize) -> bool {
    let (a, b) = (order[j].min(order[j + 1]), order[j].max(order[j + 1]));
    order[j + 2..].iter().any(|&p| a < p && p < b)
}

/// Equivalence classes of pinching orders of the 2-strand braid `s1^k`.
pub fn two_braid_class_list(k: usize) -> Result<Vec<Vec<PinchOrder>>> {
    if !(1..=8).contains(&k) {
        return Err(Error::OutOfRange(format!("k = {k}, need 1 <= k <= 8")));
    }
    let orders = all_orders(k);
    let index: HashMap<&PinchOrder, usize> = orders.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut seen = vec![false; orders.len()];
    let mut classes = Vec::new();
    for start in 0..orders.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut class = vec![orders[start].clone()];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..k.saturating_sub(1) {
                if swap_allowed(&orders[i], j) {
                    let mut o = orders[i].clone();
                    o.swap(j, j + 1);
                    let t = index[&o];
                    if !seen[t] {
                        seen[t] = true;
                        class.push(o);
                        stack.push(t);
                    }
                }
            }
        }
        class.sort();
        classes.push(class);
    }
    Ok(classes)
}

pub fn two_braid_classes(k: usize) -> Result<usize> {
    if !(2..=8).contains(&k) {
        return Err(Error::OutOfRange(format!("k = {k}, need 2 <= k <= 8")));
    }
    two_braid_class_list(k).map(|c| c.len())
}

/// Number of permutations of `1..=k` with no pattern `i < j < l`,
/// `p_i < p_l < p_j`, by direct search.
pub fn count_132_avoiding(k: usize) -> usize {
    all_orders(k)
        .iter()
        .filter(|p| {
            !(0..k).any(|i| {
                (i + 1..k).any(|j| p[j] > p[i] && (j + 1..k).any(|l| p[i] < p[l] && p[l] < p[j]))
            })
        })
        .count()
}

pub fn catalan(k: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..k as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn tau_inverse(n: usize, i: usize, z: &Q) -> Matrix {
    let mut m = Matrix::identity(n);
    let k = i - 1;
    m[(k, k)] = Q::zero();
    m[(k, k + 1)] = Q::one();
    m[(k + 1, k)] = -Q::one();
    m[(k + 1, k + 1)] = z.clone();
    m
}

#[derive(Clone, Debug)]
struct Crossing {
    position: usize,
    level: usize,
    value: Q,
}

/// Pinches the crossing at index `idx` of `cur`, pushing the remainder of
/// its factor through the other crossings, and returns the chart value.
fn pinch_at(n: usize, cur: &mut Vec<Crossing>, idx: usize) -> Option<Q> {
    let Crossing { level, value: w, .. } = cur[idx].clone();
    if w.is_zero() {
        return None;
    }
    let k = level - 1;
    let mut g = Matrix::identity(n);
    g[(k + 1, k)] = w.recip();
    let mut b = Matrix::identity(n);
    b[(k, k)] = w.clone();
    b[(k + 1, k + 1)] = w.recip();
    b[(k, k + 1)] = -Q::one();
    for c in cur[..idx].iter_mut().rev() {
        let m = tau(n, c.level, &c.value).mul(&g);
        let kk = c.level - 1;
        let wt = m[(kk, kk)].clone();
        g = m.mul(&tau_inverse(n, c.level, &wt));
        c.value = wt;
    }
    for c in cur[idx + 1..].iter_mut() {
        let m = b.mul(&tau(n, c.level, &c.value));
        let kk = c.level - 1;
        if m[(kk + 1, kk)].is_zero() {
            return None;
        }
        let wt = &m[(kk, kk)] / &m[(kk + 1, kk)];
        b = tau_inverse(n, c.level, &wt).mul(&m);
        c.value = wt;
    }
    cur.remove(idx);
    Some(w)
}

/// Chart values `ζ_1, …, ζ_ℓ` of the filling pinched in order `σ`, for the
/// chain with parameters `z`.
pub fn pinch_chart(beta: &BraidWord, order: &[usize], z: &[Q]) -> Result<Vec<Q>> {
    check_order(beta, order)?;
    let mut cur = initial_crossings(beta, z);
    order
        .iter()
        .map(|&p| {
            let idx = cur.iter().position(|c| c.position == p).expect("position not yet pinched");
            pinch_at(beta.strands(), &mut cur, idx).ok_or_else(|| Error::Degenerate(format!("pinch at {p} hits a zero")))
        })
        .collect()
}

fn initial_crossings(beta: &BraidWord, z: &[Q]) -> Vec<Crossing> {
    beta.letters()
        .iter()
        .zip(z)
        .enumerate()
        .map(|(t, (&level, v))| Crossing { position: t + 1, level, value: v.clone() })
        .collect()
}

fn check_order(beta: &BraidWord, order: &[usize]) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=beta.len()).collect::<Vec<_>>() {
        return Err(Error::OutOfRange(format!("{order:?} is not a permutation of the crossings")));
    }
    Ok(())
}

/// Pairwise coprime integers `> 1` such that every input factors over them.
pub fn coprime_base(values: impl IntoIterator<Item = BigInt>) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = Vec::new();
    let one = BigInt::one();
    for v in values {
        let mut pending = vec![v.abs()];
        while let Some(x) = pending.pop() {
            if x <= one {
                continue;
            }
            match base.iter().position(|b| !b.gcd(&x).is_one()) {
                None => base.push(x),
                Some(i) => {
                    let b = base.swap_remove(i);
                    let g = b.gcd(&x);
                    pending.push(&b / &g);
                    pending.push(&x / &g);
                    pending.push(g);
                }
            }
        }
    }
    base.sort();
    base
}

/// Exponents of `|x|` over a coprime base, or `None` if `x` does not
/// factor over it.
pub fn exponents(x: &Q, base: &[BigInt]) -> Option<Vec<i64>> {
    let mut num = x.numer().abs();
    let mut den = x.denom().abs();
    let mut out = Vec::with_capacity(base.len());
    for b in base {
        let mut e = 0i64;
        while (&num % b).is_zero() {
            num /= b;
            e += 1;
        }
        while (&den % b).is_zero() {
            den /= b;
            e -= 1;
        }
        out.push(e);
    }
    (num.is_one() && den.is_one()).then_some(out)
}

/// Lookup table from the exponent lattice of a cluster (all variables,
/// frozen included, concatenated over samples) to the exchange-graph node.
pub struct ClusterAtlas<'g> {
    graph: &'g ExchangeGraph,
    bases: Vec<Vec<BigInt>>,
    keys: HashMap<Vec<Vec<i64>>, usize>,
}

impl<'g> ClusterAtlas<'g> {
    pub fn new(graph: &'g ExchangeGraph) -> Result<Self> {
        let s = graph.samples;
        let bases: Vec<Vec<BigInt>> = (0..s)
            .map(|k| {
                let mut vals: BTreeSet<BigInt> = BTreeSet::new();
                for node in &graph.nodes {
                    for v in &node.seed.samples[k] {
                        vals.insert(v.numer().clone());
                        vals.insert(v.denom().clone());
                    }
                }
                coprime_base(vals)
            })
            .collect();
        let mut atlas = ClusterAtlas { graph, bases, keys: HashMap::new() };
        for (i, node) in graph.nodes.iter().enumerate() {
            let rows: Vec<Vec<Q>> = (0..node.seed.len()).map(|v| node.seed.samples.iter().map(|s| s[v].clone()).collect()).collect();
            let key = atlas.lattice_key(&rows).ok_or_else(|| Error::CheckFailed("cluster value outside its own base".into()))?;
            if atlas.keys.insert(key, i).is_some() {
                return Err(Error::CheckFailed(LATTICE_CLASH.into()));
            }
        }
        Ok(atlas)
    }

    /// `rows[v][s]`: value of coordinate `v` at sample `s`.
    fn lattice_key(&self, rows: &[Vec<Q>]) -> Option<Vec<Vec<i64>>> {
        let vecs = rows
            .iter()
            .map(|r| {
                let mut e = Vec::new();
                for (x, base) in r.iter().zip(&self.bases) {
                    e.extend(exponents(x, base)?);
                }
                Some(e)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(hermite_normal_form(&vecs))
    }

    /// Exchange-graph node whose cluster the chart values (per sample)
    /// generate, if any.
    pub fn locate(&self, chart: &[Vec<Q>]) -> Option<usize> {
        let len = chart.first().map_or(0, |c| c.len());
        let rows: Vec<Vec<Q>> = (0..len).map(|v| chart.iter().map(|s| s[v].clone()).collect()).collect();
        self.keys.get(&self.lattice_key(&rows)?).copied()
    }

    pub fn graph(&self) -> &'g ExchangeGraph {
        self.graph
    }
}

/// Seed of the filling pinched in order `σ`, as a node of the exchange
/// graph of the fence seed.
pub fn pinch_seed<'g>(beta: &BraidWord, order: &[usize], atlas: &ClusterAtlas<'g>) -> Result<&'g Seed> {
    let root = &atlas.graph().nodes[0].seed;
    let chart = root.points.iter().map(|z| pinch_chart(beta, order, z)).collect::<Result<Vec<_>>>()?;
    atlas
        .locate(&chart)
        .map(|i| &atlas.graph().nodes[i].seed)
        .ok_or_else(|| Error::CheckFailed(format!("pinch order {order:?} does not give a cluster of the fence seed")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchReport {
    pub braid: String,
    pub orders: usize,
    /// Distinct clusters reached.
    pub clusters: usize,
    /// Size of the full exchange graph.
    pub exchange: usize,
    /// Every pinch cluster is a node of the exchange graph.
    pub all_members: bool,
}

/// Distinct clusters over all `ℓ!` pinching orders.  Orders sharing a
/// prefix share the work for that prefix.
pub fn pinch_cluster_set(beta: &BraidWord, atlas: &ClusterAtlas) -> Result<(usize, HashSet<usize>)> {
    if beta.len() > 9 {
        return Err(Error::BudgetExceeded(format!("{} crossings; full enumeration is limited to 9", beta.len())));
    }
    let n = beta.strands();
    let root = &atlas.graph().nodes[0].seed;
    let states: Vec<Vec<Crossing>> = root.points.iter().map(|z| initial_crossings(beta, z)).collect();
    let mut found = HashSet::new();
    let mut orders = 0;
    let mut chart: Vec<Vec<Q>> = vec![Vec::new(); states.len()];
    fn dfs(
        n: usize,
        states: &[Vec<Crossing>],
        chart: &mut Vec<Vec<Q>>,
        atlas: &ClusterAtlas,
        found: &mut HashSet<usize>,
        orders: &mut usize,
    ) -> Result<()> {
        if states[0].is_empty() {
            *orders += 1;
            let node = atlas
                .locate(chart)
                .ok_or_else(|| Error::CheckFailed("a pinch chart is not a cluster of the fence seed".into()))?;
            found.insert(node);
            return Ok(());
        }
        for idx in 0..states[0].len() {
            let mut next = Vec::with_capacity(states.len());
            for (s, st) in states.iter().enumerate() {
                let mut st = st.clone();
                let w = pinch_at(n, &mut st, idx).ok_or_else(|| Error::Degenerate("pinch hits a zero".into()))?;
                chart[s].push(w);
                next.push(st);
            }
            let r = dfs(n, &next, chart, atlas, found, orders);
            for c in chart.iter_mut() {
                c.pop();
            }
            r?;
        }
        Ok(())
    }
    dfs(n, &states, &mut chart, atlas, &mut found, &mut orders)?;
    Ok((orders, found))
}

pub fn pinch_cluster_count(beta: &BraidWord, graph: &ExchangeGraph) -> Result<PinchReport> {
    let atlas = ClusterAtlas::new(graph)?;
    let (orders, found) = pinch_cluster_set(beta, &atlas)?;
    Ok(PinchReport {
        braid: beta.to_string(),
        orders,
        clusters: found.len(),
        exchange: graph.len(),
        all_members: found.iter().all(|&i| i < graph.len()),
    })
}

/// Pinch count from scratch: the exchange graph of the fence seed at the
/// default number of samples, escalated once to more samples when small
/// sample values make two clusters' lattices coincide, and redrawn when a
/// pinch hits a zero.
pub fn pinch_count(beta: &BraidWord, rng_seed: u64, budget: usize) -> Result<(PinchReport, ExchangeGraph)> {
    with_resampling(rng_seed, |seed| {
        let graph = exchange_graph(beta, seed, budget)?;
        match pinch_cluster_count(beta, &graph) {
            Err(Error::CheckFailed(msg)) if msg == LATTICE_CLASH => {
                let graph = explore(&Seed::from_braid(beta, ESCALATED_SAMPLES, seed)?, budget, None)?;
                pinch_cluster_count(beta, &graph).map(|r| (r, graph))
            }
            other => other.map(|r| (r, graph)),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_order() {
        assert_eq!(all_orders(3).len(), 6);
        assert_eq!(all_orders(3)[1], vec![1, 3, 2]);
    }

    #[test]
    fn coprime_base_refines() {
        let b = coprime_base([12, 18, 35].map(BigInt::from));
        for (i, x) in b.iter().enumerate() {
            for y in &b[i + 1..] {
                assert!(x.gcd(y).is_one());
            }
        }
        let x = Q::new(BigInt::from(12), BigInt::from(35));
        assert!(exponents(&x, &b).is_some());
    }
}
