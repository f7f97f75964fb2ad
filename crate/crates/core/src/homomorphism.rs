//! Homomorphism counts and densities.
//!
//! `hom(F, G)` counts all maps `V(F) → V(G)` that send edges to edges,
//! injective or not. For a cycle `C_k` this equals `trace(A^k)`, the number
//! of closed walks of length `k`, which is computed exactly in integers.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{bail, Error, Result};
use crate::graph::GrowingGraph;
use crate::sampler::ProcessState;

/// Largest motif accepted.
pub const MAX_MOTIF_VERTICES: usize = 10;

/// Default work budget for brute-force counting, in candidate checks.
pub const DEFAULT_BUDGET: f64 = 2e9;

/// A small simple graph used as the pattern `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotifGraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    num_edges: usize,
}

impl MotifGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > MAX_MOTIF_VERTICES {
            bail!(
                Domain,
                "motifs need 1..={MAX_MOTIF_VERTICES} vertices, got {n}"
            );
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                bail!(Domain, "motif edge ({u}, {v}) out of range");
            }
            if u == v {
                bail!(Domain, "motif has a self-loop at {u}");
            }
            if adjacency[u].contains(&v) {
                bail!(Domain, "motif edge ({u}, {v}) repeated");
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self {
            n,
            adjacency,
            num_edges: edges.len(),
        })
    }

    /// The cycle `C_k`, `k ≥ 3`.
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            bail!(Domain, "cycles need k >= 3, got {k}");
        }
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Self::new(k, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    /// Length of the cycle if this motif is one.
    pub fn cycle_length(&self) -> Option<usize> {
        if self.n < 3 || self.num_edges != self.n || self.adjacency.iter().any(|l| l.len() != 2) {
            return None;
        }
        // 2-regular with n edges: a cycle iff connected.
        let mut seen = vec![false; self.n];
        let (mut prev, mut cur, mut steps) = (usize::MAX, 0, 0);
        while !seen[cur] {
            seen[cur] = true;
            let next = if self.adjacency[cur][0] != prev {
                self.adjacency[cur][0]
            } else {
                self.adjacency[cur][1]
            };
            prev = cur;
            cur = next;
            steps += 1;
        }
        (steps == self.n).then_some(self.n)
    }

    /// Vertex order in which every vertex after the first of its component
    /// has an earlier neighbour.
    fn search_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n];
        for root in 0..self.n {
            if placed[root] {
                continue;
            }
            placed[root] = true;
            order.push(root);
            let mut head = order.len() - 1;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &w in &self.adjacency[v] {
                    if !placed[w] {
                        placed[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        order
    }
}

/// `hom(F, G)`. Cycles take the exact closed-walk path; other motifs are
/// counted by backtracking within [`DEFAULT_BUDGET`].
pub fn hom_count(f: &MotifGraph, g: &GrowingGraph) -> Result<u128> {
    match f.cycle_length() {
        Some(k) => closed_walks(g, k),
        None => hom_count_brute(f, g, DEFAULT_BUDGET),
    }
}

/// Backtracking count of homomorphisms. Fails with a budget error when the
/// estimated number of candidate checks exceeds `budget`.
pub fn hom_count_brute(f: &MotifGraph, g: &GrowingGraph, budget: f64) -> Result<u128> {
    let n = g.num_vertices();
    let order = f.search_order();
    // Each vertex after the first in its component ranges over the
    // neighbours of an earlier one; component roots range over all of V(G).
    let dmax = g.max_degree() as f64;
    let mut estimate = 1.0;
    let mut seen = vec![false; f.n];
    for &v in &order {
        let anchored = f.adjacency[v].iter().any(|&w| seen[w]);
        estimate *= if anchored { dmax.max(1.0) } else { n as f64 };
        seen[v] = true;
    }
    if estimate > budget {
        return Err(Error::Budget {
            what: "brute-force homomorphism count",
            needed: estimate,
            budget,
            hint: "use closed_walks for cycle motifs",
        });
    }
    if n == 0 {
        return Ok(0);
    }
    // For each position, the earlier positions it must be adjacent to.
    let mut position = vec![0; f.n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let constraints: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            f.adjacency[v]
                .iter()
                .map(|&w| position[w])
                .filter(|&p| p < i)
                .collect()
        })
        .collect();
    let mut image = vec![0usize; f.n];
    Ok(extend(g, &constraints, &mut image, 0))
}

fn extend(g: &GrowingGraph, constraints: &[Vec<usize>], image: &mut [usize], depth: usize) -> u128 {
    if depth == constraints.len() {
        return 1;
    }
    let cons = &constraints[depth];
    let last = depth + 1 == constraints.len();
    let fits = |x: usize, image: &[usize]| cons[1..].iter().all(|&p| g.has_edge(image[p], x));
    let mut total = 0u128;
    if cons.is_empty() {
        for x in 0..g.num_vertices() {
            image[depth] = x;
            total += extend(g, constraints, image, depth + 1);
        }
        return total;
    }
    let anchor = image[cons[0]];
    for &x in g.neighbors(anchor) {
        let x = x as usize;
        if !fits(x, image) {
            continue;
        }
        if last {
            total += 1;
        } else {
            image[depth] = x;
            total += extend(g, constraints, image, depth + 1);
        }
    }
    total
}

/// Dense bitset rows of the adjacency matrix.
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(g: &GrowingGraph) -> Self {
        let n = g.num_vertices();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for u in 0..n {
            for &v in g.neighbors(u) {
                bits[u * words + v as usize / 64] |= 1 << (v % 64);
            }
        }
        Self { words, bits }
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    fn common(&self, u: usize, v: usize) -> u64 {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }
}

/// Graphs up to this size use bitset rows for walk counting.
const BITSET_LIMIT: usize = 20_000;

/// `trace(A^k)`, the number of closed walks of length `k`, exactly.
pub fn closed_walks(g: &GrowingGraph, k: usize) -> Result<u128> {
    let n = g.num_vertices();
    if k == 0 {
        return Ok(n as u128);
    }
    if n == 0 || g.num_edges() == 0 {
        return Ok(0);
    }
    match k {
        1 => Ok(0),
        2 => Ok(2 * g.num_edges() as u128),
        3 => Ok(walks3(g)),
        4 => Ok(walks4(g)),
        _ => walks_dense(g, k),
    }
}

fn walks3(g: &GrowingGraph) -> u128 {
    let n = g.num_vertices();
    let mut total = 0u128;
    if n <= BITSET_LIMIT {
        let rows = BitRows::new(g);
        for u in 0..n {
            for &v in g.neighbors(u) {
                total += rows.common(u, v as usize) as u128;
            }
        }
    } else {
        for u in 0..n {
            for &v in g.neighbors(u) {
                total += sorted_common(g.neighbors(u), g.neighbors(v as usize)) as u128;
            }
        }
    }
    total
}

fn sorted_common(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// `trace(A⁴) = Σ_{i,j} (A²)_{ij}²`.
fn walks4(g: &GrowingGraph) -> u128 {
    let n = g.num_vertices();
    let bitset_cost = (n as f64) * (n as f64) * (n.div_ceil(64) as f64);
    let wedge_cost: f64 = (0..n).map(|w| (g.degree(w) as f64).powi(2)).sum();
    let mut total = 0u128;
    if n <= BITSET_LIMIT && bitset_cost < 4.0 * wedge_cost {
        let rows = BitRows::new(g);
        for i in 0..n {
            let d = g.degree(i) as u128;
            total += d * d;
            for j in i + 1..n {
                let c = rows.common(i, j) as u128;
                total += 2 * c * c;
            }
        }
    } else {
        // Row i of A² by scattering over paths i – w – j.
        let mut row = vec![0u64; n];
        let mut touched = Vec::new();
        for i in 0..n {
            for &w in g.neighbors(i) {
                for &j in g.neighbors(w as usize) {
                    let j = j as usize;
                    if row[j] == 0 {
                        touched.push(j);
                    }
                    row[j] += 1;
                }
            }
            for &j in &touched {
                total += (row[j] as u128) * (row[j] as u128);
                row[j] = 0;
            }
            touched.clear();
        }
    }
    total
}

/// `trace(A^k) = Σ_{i,j} (A^a)_{ij} (A^b)_{ij}` with `a = ⌊k/2⌋`,
/// `b = ⌈k/2⌉`, both powers held densely.
fn walks_dense(g: &GrowingGraph, k: usize) -> Result<u128> {
    let n = g.num_vertices();
    let nf = n as f64;
    let b = k.div_ceil(2);
    let entry_bound = nf.powi(b as i32 - 1);
    let dense_cost = nf * nf * 8.0;
    if entry_bound > 9.0e18 || nf.powi(k as i32) > 1.0e38 {
        return Err(Error::Budget {
            what: "closed-walk count",
            needed: nf.powi(k as i32),
            budget: 1.0e38,
            hint: "walk counts overflow 128 bits; use the spectral power sum",
        });
    }
    if dense_cost > 2.0e9 {
        return Err(Error::Budget {
            what: "closed-walk count (dense powers)",
            needed: dense_cost,
            budget: 2.0e9,
            hint: "use the spectral power sum for long cycles on large graphs",
        });
    }
    // A² from bitset popcounts, then multiply by A until reaching b.
    let rows = BitRows::new(g);
    let mut sq = vec![0u64; n * n];
    for i in 0..n {
        sq[i * n + i] = g.degree(i) as u64;
        for j in i + 1..n {
            let c = rows.common(i, j);
            sq[i * n + j] = c;
            sq[j * n + i] = c;
        }
    }
    let times_a = |m: &[u64]| {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            let dst = &mut out[i * n..(i + 1) * n];
            for &w in g.neighbors(i) {
                let src = &m[w as usize * n..(w as usize + 1) * n];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += *s;
                }
            }
        }
        out
    };
    let a_mat = |m: usize| -> Vec<u64> {
        if m == 1 {
            let mut out = vec![0u64; n * n];
            for i in 0..n {
                for &w in g.neighbors(i) {
                    out[i * n + w as usize] = 1;
                }
            }
            out
        } else {
            let mut p = sq.clone();
            for _ in 2..m {
                p = times_a(&p);
            }
            p
        }
    };
    let a = k / 2;
    let pa = a_mat(a);
    let pb = if b == a { pa.clone() } else { times_a(&pa) };
    Ok(pa
        .iter()
        .zip(&pb)
        .map(|(&x, &y)| x as u128 * y as u128)
        .sum())
}

/// `h(F, G) = hom(F, G) / (2 |E(G)|)^{|V(F)|/2}`.
pub fn h_density_graph(f: &MotifGraph, g: &GrowingGraph) -> Result<f64> {
    if g.num_edges() == 0 {
        bail!(Degenerate, "homomorphism density needs at least one edge");
    }
    let hom = hom_count(f, g)? as f64;
    Ok(hom / (2.0 * g.num_edges() as f64).powf(f.num_vertices() as f64 / 2.0))
}

/// `Σ_j (λ_j / sqrt(2|E|))^k` over a full adjacency spectrum; equals
/// `h(C_k, G)`.
pub fn cycle_density_from_spectrum(eigenvalues: &[f64], num_edges: usize, k: u32) -> Result<f64> {
    if num_edges == 0 {
        bail!(Degenerate, "homomorphism density needs at least one edge");
    }
    let norm = (2.0 * num_edges as f64).sqrt();
    Ok(eigenvalues.iter().map(|l| (l / norm).powi(k as i32)).sum())
}

/// One point of a density trajectory. `h` is `None` when the pruned
/// snapshot has no edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityPoint {
    pub t: f64,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub k: usize,
    pub h: Option<f64>,
}

/// Grow the process through `times` and record `h(C_k, G_t)` on each pruned
/// snapshot.
pub fn density_convergence_trace(
    state: &mut ProcessState,
    times: &[f64],
    k: usize,
) -> Result<Vec<DensityPoint>> {
    if times.windows(2).any(|w| !(w[0] <= w[1])) {
        bail!(Domain, "times must be ascending");
    }
    let cycle = MotifGraph::cycle(k)?;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let g = state.grow(t)?.prune_isolated();
        let h = if g.num_edges() == 0 {
            None
        } else {
            Some(h_density_graph(&cycle, &g)?)
        };
        out.push(DensityPoint {
            t,
            num_vertices: g.num_vertices(),
            num_edges: g.num_edges(),
            k,
            h,
        });
    }
    Ok(out)
}
