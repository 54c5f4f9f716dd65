//! Entropy-based graph indices.
//!
//! An information functional `f` on the vertices induces the distribution
//! `p_i = f_i / sum_j f_j`, whose Shannon entropy (in bits) is the index. The
//! Dehmer functionals used here are exponentials, so densities are carried
//! as their natural logarithms `a_i = ln f_i` and normalized with a
//! log-sum-exp.

use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::patch::{DijkstraTree, PatchGraph, PatchStructure};
use crate::{Error, Result};

/// Per-vertex natural logarithms of an information functional.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationDensity {
    pub logvalues: Vec<f64>,
}

impl InformationDensity {
    pub fn new(logvalues: Vec<f64>) -> Result<Self> {
        if logvalues.is_empty() {
            return Err(Error::InvalidParameter("density over zero vertices".into()));
        }
        if logvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite log density".into()));
        }
        Ok(InformationDensity { logvalues })
    }

    pub fn len(&self) -> usize {
        self.logvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logvalues.is_empty()
    }

    /// The normalized probabilities `p_i`.
    pub fn probabilities(&self) -> Vec<f64> {
        let l = log_sum_exp(&self.logvalues);
        self.logvalues.iter().map(|a| (a - l).exp()).collect()
    }
}

fn log_sum_exp(a: &[f64]) -> f64 {
    let max = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    max + a.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// Shannon entropy in bits of the distribution `exp(a_i) / sum_j exp(a_j)`.
pub fn entropy_from_logdensity(a: &InformationDensity) -> f64 {
    let l = log_sum_exp(&a.logvalues);
    let nats: f64 = a
        .logvalues
        .iter()
        .map(|&v| {
            let shifted = v - l;
            let p = shifted.exp();
            // 0 log 0 = 0
            if p == 0.0 {
                0.0
            } else {
                -p * shifted
            }
        })
        .sum();
    (nats / std::f64::consts::LN_2).max(0.0)
}

/// Anything the indices can be evaluated on.
pub trait IndexGraph {
    fn vertex_count(&self) -> usize;
    fn is_weighted(&self) -> bool;
    fn adjacency(&self) -> Vec<Vec<(usize, f64)>>;
}

impl IndexGraph for PatchGraph {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    fn is_weighted(&self) -> bool {
        self.weighted
    }
    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        PatchGraph::adjacency(self)
    }
}

impl IndexGraph for DijkstraTree {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    fn is_weighted(&self) -> bool {
        self.weighted
    }
    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        DijkstraTree::adjacency(self)
    }
}

impl IndexGraph for PatchStructure {
    fn vertex_count(&self) -> usize {
        self.vertices().len()
    }
    fn is_weighted(&self) -> bool {
        PatchStructure::is_weighted(self)
    }
    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        PatchStructure::adjacency(self)
    }
}

/// All-pairs shortest-path distances, row-major `n x n`. Unweighted graphs
/// get hop counts. Unreachable pairs are reported as an error.
pub fn distance_matrix(g: &impl IndexGraph) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut out = vec![f64::INFINITY; n * n];
    for s in 0..n {
        let row = &mut out[s * n..(s + 1) * n];
        if g.is_weighted() {
            weighted_sssp(&adj, s, row);
        } else {
            hop_sssp(&adj, s, row);
        }
    }
    if out.iter().any(|d| d.is_infinite()) {
        return Err(Error::Disconnected);
    }
    Ok(out)
}

fn hop_sssp(adj: &[Vec<(usize, f64)>], s: usize, dist: &mut [f64]) {
    dist[s] = 0.0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v] {
            if dist[w].is_infinite() {
                dist[w] = dist[v] + 1.0;
                queue.push_back(w);
            }
        }
    }
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn weighted_sssp(adj: &[Vec<(usize, f64)>], s: usize, dist: &mut [f64]) {
    let mut done = vec![false; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    heap.push(Entry(0.0, s));
    while let Some(Entry(d, v)) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(w, wt) in &adj[v] {
            let cand = d + wt;
            if cand < dist[w] {
                dist[w] = cand;
                heap.push(Entry(cand, w));
            }
        }
    }
}

/// Bonchev–Trinajstić mean information on distances, in bits.
///
/// Pairs `i < j` are grouped by hop distance; the index is the entropy of
/// the class frequencies. Needs an unweighted connected graph.
pub fn mean_information_on_distances(g: &impl IndexGraph) -> Result<f64> {
    if g.is_weighted() {
        return Err(Error::WeightedDistanceIndex);
    }
    let n = g.vertex_count();
    if n < 2 {
        return Ok(0.0);
    }
    let d = distance_matrix(g)?;
    let counts = distance_class_counts(&d, n);
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(counts
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| {
            let p = k as f64 / pairs;
            -p * p.log2()
        })
        .sum())
}

/// `k_d` for `d = 1..=D(G)`, stored at index `d - 1`.
pub fn distance_class_counts(dist: &[f64], n: usize) -> Vec<usize> {
    let mut counts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = dist[i * n + j] as usize;
            if counts.len() < d {
                counts.resize(d, 0);
            }
            counts[d - 1] += 1;
        }
    }
    counts
}

fn check_weighting(q: f64, m: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("q = {q} outside (0, 1)")));
    }
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidParameter(format!("M = {m} must be positive")));
    }
    Ok(())
}

/// `ln f^V(v_i) = M * sum_j q^d(v_i, v_j)`, self term included.
pub fn dehmer_fv(g: &impl IndexGraph, q: f64, m: f64) -> Result<InformationDensity> {
    check_weighting(q, m)?;
    let n = g.vertex_count();
    let d = distance_matrix(g)?;
    let lnq = q.ln();
    let a = (0..n)
        .map(|i| m * d[i * n..(i + 1) * n].iter().map(|&x| (x * lnq).exp()).sum::<f64>())
        .collect();
    InformationDensity::new(a)
}

/// `ln f^P(v_i) = M * sum_j q^d(v_i, v_j) d(v_i, v_j)`; the self term is 0.
pub fn dehmer_fp(g: &impl IndexGraph, q: f64, m: f64) -> Result<InformationDensity> {
    check_weighting(q, m)?;
    let n = g.vertex_count();
    let d = distance_matrix(g)?;
    let lnq = q.ln();
    let a = (0..n)
        .map(|i| {
            m * d[i * n..(i + 1) * n]
                .iter()
                .map(|&x| (x * lnq).exp() * x)
                .sum::<f64>()
        })
        .collect();
    InformationDensity::new(a)
}

/// Which entropy index to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexKind {
    /// Dehmer entropy on the sphere-cardinality functional.
    IfV { q: f64, m: f64 },
    /// Dehmer entropy on the distance-sum functional.
    IfP { q: f64, m: f64 },
    /// Mean information on distances (unweighted graphs only).
    Ide,
}

/// `M = 1 / (1 - q)`, which makes `M q^d` the infinite-horizon reverse
/// partial sum of `c_d = q^d`.
pub fn default_m(q: f64) -> f64 {
    1.0 / (1.0 - q)
}

impl IndexKind {
    pub fn ifv(q: f64) -> Self {
        IndexKind::IfV { q, m: default_m(q) }
    }

    pub fn ifp(q: f64) -> Self {
        IndexKind::IfP { q, m: default_m(q) }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IndexKind::IfV { .. } => "IfV",
            IndexKind::IfP { .. } => "IfP",
            IndexKind::Ide => "IDE",
        }
    }

    /// Parses `IfV`, `IfP` or `IDE`; `m = None` selects the default `M`.
    pub fn parse(name: &str, q: f64, m: Option<f64>) -> Result<Self> {
        let m = m.unwrap_or_else(|| default_m(q));
        let kind = match name.to_ascii_lowercase().as_str() {
            "ifv" => IndexKind::IfV { q, m },
            "ifp" => IndexKind::IfP { q, m },
            "ide" => IndexKind::Ide,
            _ => return Err(Error::InvalidParameter(format!("unknown index kind {name:?}"))),
        };
        kind.validate()?;
        Ok(kind)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            IndexKind::IfV { q, m } | IndexKind::IfP { q, m } => check_weighting(q, m),
            IndexKind::Ide => Ok(()),
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    /// Uses the default `q = 0.1` and `M = 1 / (1 - q)`.
    fn from_str(s: &str) -> Result<Self> {
        IndexKind::parse(s, 0.1, None)
    }
}

/// Evaluates `kind` on `g` (bits).
pub fn evaluate_index(g: &impl IndexGraph, kind: IndexKind) -> Result<f64> {
    match kind {
        IndexKind::IfV { q, m } => Ok(entropy_from_logdensity(&dehmer_fv(g, q, m)?)),
        IndexKind::IfP { q, m } => Ok(entropy_from_logdensity(&dehmer_fp(g, q, m)?)),
        IndexKind::Ide => {
            if g.is_weighted() {
                return Err(Error::Incompatible(
                    "IDE requires unweighted graph (use TuE or TuA)".into(),
                ));
            }
            mean_information_on_distances(g)
        }
    }
}
