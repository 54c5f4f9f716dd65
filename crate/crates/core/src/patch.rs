//! Pixel graphs and the six per-pixel graph settings.
//!
//! Neighbouring pixels `p`, `q` are joined by an edge of weight
//! `sqrt(|p - q|^2 + beta^2 |u_p - u_q|^2)`. Around every pixel we cut out
//! either a Euclidean disc (`GwE`) or a morphological amoeba (`GwA`, all
//! pixels reachable by paths of total weight at most `rho`), and optionally
//! reduce it to its Dijkstra search tree, weighted (`TwE`, `TwA`) or with
//! the weights dropped (`TuE`, `TuA`).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::image::{Image, Pixel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Neighborhood {
    Four,
    #[default]
    Eight,
}

const FOUR: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const EIGHT: [(i64, i64); 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (-1, -1),
    (1, -1),
    (-1, 1),
];
// one representative of each undirected neighbour pair
const FOUR_FORWARD: [(i64, i64); 2] = [(1, 0), (0, 1)];
const EIGHT_FORWARD: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (-1, 1)];

impl Neighborhood {
    pub fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            Neighborhood::Four => &FOUR,
            Neighborhood::Eight => &EIGHT,
        }
    }

    fn forward_offsets(self) -> &'static [(i64, i64)] {
        match self {
            Neighborhood::Four => &FOUR_FORWARD,
            Neighborhood::Eight => &EIGHT_FORWARD,
        }
    }
}

impl FromStr for Neighborhood {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "4" | "four" => Ok(Neighborhood::Four),
            "8" | "eight" => Ok(Neighborhood::Eight),
            _ => Err(Error::InvalidParameter(format!("unknown neighbourhood {s:?}"))),
        }
    }
}

/// Weight of the pixel-graph edge between neighbours `p` and `q` (channel 0).
#[inline]
pub fn edge_weight(p: Pixel, q: Pixel, u: &Image, beta: f64) -> f64 {
    let dx = p.x as f64 - q.x as f64;
    let dy = p.y as f64 - q.y as f64;
    let du = u.at(p) - u.at(q);
    (dx * dx + dy * dy + beta * beta * du * du).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// A simple undirected graph on pixel coordinates, center first.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchGraph {
    pub center: Pixel,
    pub vertices: Vec<Pixel>,
    pub edges: Vec<Edge>,
    pub weighted: bool,
}

impl PatchGraph {
    /// Abstract graph on `n` vertices; vertex `i` gets coordinate `(i, 0)`,
    /// so row-major tie-breaking follows vertex indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)], weighted: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs a vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b, w) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidParameter(format!("bad edge ({a}, {b})")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({a}, {b})")));
            }
            let weight = if weighted { w } else { 1.0 };
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(Error::InvalidParameter(format!("edge weight {weight}")));
            }
            out.push(Edge { a, b, weight });
        }
        Ok(PatchGraph {
            center: Pixel::new(0, 0),
            vertices: (0..n).map(|i| Pixel::new(i, 0)).collect(),
            edges: out,
            weighted,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            let w = if self.weighted { e.weight } else { 1.0 };
            adj[e.a].push((e.b, w));
            adj[e.b].push((e.a, w));
        }
        adj
    }

    /// Same topology with every weight set to 1.
    pub fn unweighted(&self) -> PatchGraph {
        PatchGraph {
            center: self.center,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { weight: 1.0, ..*e })
                .collect(),
            weighted: false,
        }
    }

    /// Text dump, one edge per line: `x1 y1 x2 y2 weight` with the weight
    /// printed to 9 significant digits.
    pub fn dump_edge_list(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            let (p, q) = (self.vertices[e.a], self.vertices[e.b]);
            let _ = writeln!(s, "{} {} {} {} {}", p.x, p.y, q.x, q.y, sig9(e.weight));
        }
        s
    }
}

fn sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..9).contains(&exp) {
        format!("{:.*}", (8 - exp).max(0) as usize, v)
    } else {
        format!("{v:.8e}")
    }
}

/// Shortest-path tree rooted at vertex 0.
///
/// Vertices are stored in settle order, so every parent index is smaller
/// than its child's.
#[derive(Debug, Clone, PartialEq)]
pub struct DijkstraTree {
    pub vertices: Vec<Pixel>,
    pub parent: Vec<Option<usize>>,
    pub dist: Vec<f64>,
    /// Weight of the edge to the parent (0 at the root).
    pub parent_weight: Vec<f64>,
    pub weighted: bool,
}

impl DijkstraTree {
    pub const ROOT: usize = 0;

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (v, parent) in self.parent.iter().enumerate() {
            if let Some(p) = *parent {
                let w = if self.weighted {
                    self.parent_weight[v]
                } else {
                    1.0
                };
                adj[p].push((v, w));
                adj[v].push((p, w));
            }
        }
        adj
    }

    /// Sum of edge weights along the tree path from the root to `v`.
    pub fn path_length(&self, mut v: usize) -> f64 {
        let mut len = 0.0;
        let mut steps = Vec::new();
        while let Some(p) = self.parent[v] {
            steps.push(if self.weighted {
                self.parent_weight[v]
            } else {
                1.0
            });
            v = p;
        }
        // accumulate root-first to reproduce Dijkstra's summation order
        for w in steps.iter().rev() {
            len += w;
        }
        len
    }
}

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    dist: f64,
    pixel: Pixel,
    index: usize,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    // reversed: BinaryHeap is a max-heap and we want the smallest
    // (distance, row-major pixel) on top
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.pixel.cmp(&self.pixel))
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from vertex 0 of `g`. With a `limit`, only vertices at distance
/// at most `limit` are kept.
pub fn dijkstra(g: &PatchGraph, limit: Option<f64>) -> DijkstraTree {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let limit = limit.unwrap_or(f64::INFINITY);
    let mut best = vec![f64::INFINITY; n];
    let mut via: Vec<Option<(usize, f64)>> = vec![None; n];
    let mut settled_at: Vec<Option<usize>> = vec![None; n];
    let mut tree = DijkstraTree {
        vertices: Vec::new(),
        parent: Vec::new(),
        dist: Vec::new(),
        parent_weight: Vec::new(),
        weighted: g.weighted,
    };
    let mut heap = BinaryHeap::new();
    best[0] = 0.0;
    heap.push(QueueEntry {
        dist: 0.0,
        pixel: g.vertices[0],
        index: 0,
    });
    while let Some(QueueEntry { dist, index, .. }) = heap.pop() {
        if settled_at[index].is_some() || dist > best[index] {
            continue;
        }
        if dist > limit {
            break;
        }
        let slot = tree.vertices.len();
        settled_at[index] = Some(slot);
        tree.vertices.push(g.vertices[index]);
        tree.dist.push(dist);
        match via[index] {
            Some((p, w)) => {
                tree.parent.push(settled_at[p]);
                tree.parent_weight.push(w);
            }
            None => {
                tree.parent.push(None);
                tree.parent_weight.push(0.0);
            }
        }
        for &(nb, w) in &adj[index] {
            if settled_at[nb].is_some() {
                continue;
            }
            let cand = dist + w;
            if cand < best[nb] && cand <= limit {
                best[nb] = cand;
                via[nb] = Some((index, w));
                heap.push(QueueEntry {
                    dist: cand,
                    pixel: g.vertices[nb],
                    index: nb,
                });
            }
        }
    }
    tree
}

/// Subgraph of the weighted pixel graph on `{q : |q - p| <= rho}`.
///
/// The center comes first, the remaining pixels follow in row-major order.
pub fn euclidean_patch_graph(
    u: &Image,
    p: Pixel,
    rho: f64,
    beta: f64,
    nbhd: Neighborhood,
) -> PatchGraph {
    assert!(u.contains(p), "center outside the image");
    let (w, h) = u.dims();
    let r = rho.floor() as i64;
    let side = (2 * r + 1) as usize;
    let mut local = vec![usize::MAX; side * side];
    let mut vertices = vec![p];
    local[(r as usize) * side + r as usize] = 0;
    for dy in -r..=r {
        for dx in -r..=r {
            if (dx == 0 && dy == 0) || ((dx * dx + dy * dy) as f64) > rho * rho {
                continue;
            }
            if let Some(q) = p.offset(dx, dy, w, h) {
                local[(dy + r) as usize * side + (dx + r) as usize] = vertices.len();
                vertices.push(q);
            }
        }
    }
    let lookup = |dx: i64, dy: i64| -> Option<usize> {
        if dx.abs() > r || dy.abs() > r {
            return None;
        }
        let i = local[(dy + r) as usize * side + (dx + r) as usize];
        (i != usize::MAX).then_some(i)
    };
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by_key(|&i| vertices[i]);
    let mut edges = Vec::new();
    for &a in &order {
        let q = vertices[a];
        let (qx, qy) = (q.x as i64 - p.x as i64, q.y as i64 - p.y as i64);
        for &(ox, oy) in nbhd.forward_offsets() {
            if let Some(b) = lookup(qx + ox, qy + oy) {
                edges.push(Edge {
                    a,
                    b,
                    weight: edge_weight(q, vertices[b], u, beta),
                });
            }
        }
    }
    PatchGraph {
        center: p,
        vertices,
        edges,
        weighted: true,
    }
}

/// The amoeba `A_rho(p)` as the subgraph of the weighted pixel graph it
/// induces, together with the Dijkstra tree that discovered it.
///
/// The search runs on the full pixel graph with a distance cutoff. Since
/// every edge weighs at least its spatial length, the amoeba never leaves
/// the Euclidean disc of radius `rho`.
pub fn adaptive_patch_graph(
    u: &Image,
    p: Pixel,
    rho: f64,
    beta: f64,
    nbhd: Neighborhood,
) -> (PatchGraph, DijkstraTree) {
    assert!(u.contains(p), "center outside the image");
    let (w, h) = u.dims();
    let r = rho.floor().max(0.0) as i64;
    let side = (2 * r + 1) as usize;
    let slot_of = |q: Pixel| -> usize {
        let lx = (q.x as i64 - p.x as i64 + r) as usize;
        let ly = (q.y as i64 - p.y as i64 + r) as usize;
        ly * side + lx
    };
    let mut best = vec![f64::INFINITY; side * side];
    let mut via: Vec<Option<(usize, f64)>> = vec![None; side * side];
    let mut settled: Vec<usize> = vec![usize::MAX; side * side];

    let mut tree = DijkstraTree {
        vertices: Vec::new(),
        parent: Vec::new(),
        dist: Vec::new(),
        parent_weight: Vec::new(),
        weighted: true,
    };
    let mut heap = BinaryHeap::new();
    let s0 = slot_of(p);
    best[s0] = 0.0;
    heap.push(QueueEntry {
        dist: 0.0,
        pixel: p,
        index: s0,
    });
    while let Some(QueueEntry { dist, pixel, index }) = heap.pop() {
        if settled[index] != usize::MAX || dist > best[index] {
            continue;
        }
        let order = tree.vertices.len();
        settled[index] = order;
        tree.vertices.push(pixel);
        tree.dist.push(dist);
        match via[index] {
            Some((ps, wt)) => {
                tree.parent.push(Some(settled[ps]));
                tree.parent_weight.push(wt);
            }
            None => {
                tree.parent.push(None);
                tree.parent_weight.push(0.0);
            }
        }
        for &(dx, dy) in nbhd.offsets() {
            let Some(q) = pixel.offset(dx, dy, w, h) else {
                continue;
            };
            if (q.x as i64 - p.x as i64).abs() > r || (q.y as i64 - p.y as i64).abs() > r {
                continue;
            }
            let qs = slot_of(q);
            if settled[qs] != usize::MAX {
                continue;
            }
            let wt = edge_weight(pixel, q, u, beta);
            let cand = dist + wt;
            if cand <= rho && cand < best[qs] {
                best[qs] = cand;
                via[qs] = Some((index, wt));
                heap.push(QueueEntry {
                    dist: cand,
                    pixel: q,
                    index: qs,
                });
            }
        }
    }

    // induced subgraph on the amoeba, edges in row-major order of their
    // first endpoint
    let mut order: Vec<usize> = (0..tree.vertices.len()).collect();
    order.sort_by_key(|&i| tree.vertices[i]);
    let mut edges = Vec::new();
    for &a in &order {
        let q = tree.vertices[a];
        for &(dx, dy) in nbhd.forward_offsets() {
            let Some(nq) = q.offset(dx, dy, w, h) else {
                continue;
            };
            if (nq.x as i64 - p.x as i64).abs() > r || (nq.y as i64 - p.y as i64).abs() > r {
                continue;
            }
            let b = settled[slot_of(nq)];
            if b != usize::MAX {
                edges.push(Edge {
                    a,
                    b,
                    weight: edge_weight(q, nq, u, beta),
                });
            }
        }
    }
    let graph = PatchGraph {
        center: p,
        vertices: tree.vertices.clone(),
        edges,
        weighted: true,
    };
    (graph, tree)
}

/// Drops the weights of a tree; distances become hop counts.
pub fn strip_weights(t: &DijkstraTree) -> DijkstraTree {
    let mut dist = vec![0.0; t.vertex_count()];
    for v in 0..t.vertex_count() {
        if let Some(p) = t.parent[v] {
            debug_assert!(p < v);
            dist[v] = dist[p] + 1.0;
        }
    }
    DijkstraTree {
        vertices: t.vertices.clone(),
        parent: t.parent.clone(),
        dist,
        parent_weight: t.parent.iter().map(|p| if p.is_some() { 1.0 } else { 0.0 }).collect(),
        weighted: false,
    }
}

/// The six graph collections: patch graphs and Dijkstra trees in Euclidean
/// (`E`) or adaptive (`A`) patches, weighted (`w`) or unweighted (`u`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphSetting {
    GwE,
    GwA,
    TwE,
    TwA,
    TuE,
    TuA,
}

impl GraphSetting {
    pub const ALL: [GraphSetting; 6] = [
        GraphSetting::GwE,
        GraphSetting::GwA,
        GraphSetting::TwE,
        GraphSetting::TwA,
        GraphSetting::TuE,
        GraphSetting::TuA,
    ];

    pub fn is_unweighted_tree(self) -> bool {
        matches!(self, GraphSetting::TuE | GraphSetting::TuA)
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphSetting::GwE => "GwE",
            GraphSetting::GwA => "GwA",
            GraphSetting::TwE => "TwE",
            GraphSetting::TwA => "TwA",
            GraphSetting::TuE => "TuE",
            GraphSetting::TuA => "TuA",
        }
    }
}

impl fmt::Display for GraphSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphSetting::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown graph setting {s:?}")))
    }
}

/// Either kind of per-pixel structure.
#[derive(Debug, Clone, PartialEq)]
pub enum PatchStructure {
    Graph(PatchGraph),
    Tree(DijkstraTree),
}

impl PatchStructure {
    pub fn vertices(&self) -> &[Pixel] {
        match self {
            PatchStructure::Graph(g) => &g.vertices,
            PatchStructure::Tree(t) => &t.vertices,
        }
    }

    pub fn is_weighted(&self) -> bool {
        match self {
            PatchStructure::Graph(g) => g.weighted,
            PatchStructure::Tree(t) => t.weighted,
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        match self {
            PatchStructure::Graph(g) => g.adjacency(),
            PatchStructure::Tree(t) => t.adjacency(),
        }
    }
}

/// Builds the graph of `setting` around pixel `p`.
pub fn build_setting(
    u: &Image,
    p: Pixel,
    setting: GraphSetting,
    rho: f64,
    beta: f64,
    nbhd: Neighborhood,
) -> PatchStructure {
    match setting {
        GraphSetting::GwE => PatchStructure::Graph(euclidean_patch_graph(u, p, rho, beta, nbhd)),
        GraphSetting::GwA => PatchStructure::Graph(adaptive_patch_graph(u, p, rho, beta, nbhd).0),
        GraphSetting::TwE | GraphSetting::TuE => {
            let tree = dijkstra(&euclidean_patch_graph(u, p, rho, beta, nbhd), None);
            if setting == GraphSetting::TuE {
                PatchStructure::Tree(strip_weights(&tree))
            } else {
                PatchStructure::Tree(tree)
            }
        }
        GraphSetting::TwA | GraphSetting::TuA => {
            let tree = adaptive_patch_graph(u, p, rho, beta, nbhd).1;
            if setting == GraphSetting::TuA {
                PatchStructure::Tree(strip_weights(&tree))
            } else {
                PatchStructure::Tree(tree)
            }
        }
    }
}
