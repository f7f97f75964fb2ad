//! The graphon process and the growing-clique sparse family.
//!
//! Vertices arrive as a Poisson process on `ℝ₊ × [0, L_eff)` with unit
//! intensity with respect to `dt × μ`. Time is cut into slots of width
//! `1 / μ(support)`; each slot draws its own points from a stream keyed by
//! `(seed, slot)`, so the vertex set up to `t` depends only on `(seed, t)` and
//! not on how growth was scheduled. An edge between ids `i < j` is present
//! iff `pair_uniform(seed, i, j) < W(x_i, x_j)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::error::{bail, Error, Result};
use crate::graph::{GrowingGraph, VertexPoint};
use crate::graphon::{GeneralizedGraphon, Kernel};
use crate::rng::{self, DOMAIN_BLOCKED, DOMAIN_EDGE, DOMAIN_SLOT};

/// Single-writer state of one realization of the process.
#[derive(Debug, Clone)]
pub struct ProcessState {
    graphon: GeneralizedGraphon,
    seed: u64,
    edge_seed: u64,
    slot_width: f64,
    support: f64,
    current_time: f64,
    points: Vec<VertexPoint>,
    /// Step block of each vertex, when the kernel is a step kernel.
    blocks: Vec<u32>,
    adjacency: Vec<Vec<u32>>,
}

impl ProcessState {
    /// Fresh state at time 0.
    pub fn new(graphon: GeneralizedGraphon, seed: u64) -> Result<Self> {
        let measure = graphon.effective_measure();
        if !measure.is_finite() {
            bail!(
                Config,
                "cannot sample on a feature space of infinite measure; configured support ends at {}",
                graphon.support_length()
            );
        }
        Ok(Self {
            support: graphon.support_length(),
            slot_width: 1.0 / measure,
            edge_seed: rng::derive_seed(seed, DOMAIN_EDGE, 0),
            graphon,
            seed,
            current_time: 0.0,
            points: Vec::new(),
            blocks: Vec::new(),
            adjacency: Vec::new(),
        })
    }

    pub fn graphon(&self) -> &GeneralizedGraphon {
        &self.graphon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn current_time(&self) -> f64 {
        self.current_time
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    /// Back to time 0 with the same graphon and seed.
    pub fn reset(&mut self) {
        self.current_time = 0.0;
        self.points.clear();
        self.blocks.clear();
        self.adjacency.clear();
    }

    /// Points of the process in `(current_time, t_new]`, in birth order.
    /// Does not modify the state.
    pub fn sample_vertices(&self, t_new: f64) -> Result<Vec<VertexPoint>> {
        self.check_time(t_new)?;
        Ok(self.points_between(self.current_time, t_new))
    }

    fn check_time(&self, t_new: f64) -> Result<()> {
        if !t_new.is_finite() || t_new < self.current_time {
            bail!(
                Domain,
                "time {t_new} is before the current time {}",
                self.current_time
            );
        }
        Ok(())
    }

    fn points_between(&self, t0: f64, t1: f64) -> Vec<VertexPoint> {
        let mut out = Vec::new();
        if t1 <= t0 {
            return out;
        }
        let w = self.slot_width;
        let first = (t0 / w).floor() as u64;
        let last = (t1 / w).floor() as u64;
        let poisson = Poisson::new(1.0).expect("unit mean is valid");
        for slot in first..=last {
            let mut r = rng::stream(self.seed, DOMAIN_SLOT, slot);
            let count = poisson.sample(&mut r) as usize;
            let start = out.len();
            for _ in 0..count {
                let birth_time = (slot as f64 + r.random::<f64>()) * w;
                let feature = r.random::<f64>() * self.support;
                if birth_time > t0 && birth_time <= t1 {
                    out.push(VertexPoint {
                        birth_time,
                        feature,
                    });
                }
            }
            out[start..].sort_by(|a, b| a.birth_time.total_cmp(&b.birth_time));
        }
        out
    }

    fn block_of(&self, p: &VertexPoint) -> u32 {
        match self.graphon.kernel() {
            Kernel::Step(s) => s.block_of(p.feature).map_or(u32::MAX, |b| b as u32),
            Kernel::Analytic(_) => 0,
        }
    }

    #[inline]
    fn edge_probability(&self, i: usize, j: usize) -> f64 {
        match self.graphon.kernel() {
            Kernel::Step(s) => {
                let (a, b) = (self.blocks[i], self.blocks[j]);
                if a == u32::MAX || b == u32::MAX {
                    0.0
                } else {
                    s.value(a as usize, b as usize)
                }
            }
            Kernel::Analytic(_) => self
                .graphon
                .eval_unchecked(self.points[i].feature, self.points[j].feature),
        }
    }

    /// Advance to `t_new` and return `G̃_{t_new}`, isolated vertices included.
    ///
    /// Every pair involving a new vertex is decided once; the graph at an
    /// earlier time is the induced subgraph on the vertices born by then.
    pub fn grow(&mut self, t_new: f64) -> Result<GrowingGraph> {
        self.check_time(t_new)?;
        let fresh = self.points_between(self.current_time, t_new);
        let old = self.points.len();
        if old + fresh.len() > u32::MAX as usize {
            return Err(Error::Budget {
                what: "vertex count",
                needed: (old + fresh.len()) as f64,
                budget: u32::MAX as f64,
                hint: "grow to an earlier time",
            });
        }
        for p in &fresh {
            let b = self.block_of(p);
            self.points.push(*p);
            self.blocks.push(b);
            self.adjacency.push(Vec::new());
        }
        for j in old..self.points.len() {
            for i in 0..j {
                let w = self.edge_probability(i, j);
                if w > 0.0 && rng::pair_uniform(self.edge_seed, i as u64, j as u64) < w {
                    self.adjacency[i].push(j as u32);
                    self.adjacency[j].push(i as u32);
                }
            }
        }
        self.current_time = t_new;
        Ok(self.graph())
    }

    /// `G̃` at the current time.
    pub fn graph(&self) -> GrowingGraph {
        let n = self.points.len();
        GrowingGraph::from_parts(
            (0..n as u64).collect(),
            Some(self.points.clone()),
            self.adjacency.clone(),
            true,
        )
    }

    /// Block-wise edge sampler for step kernels: the same vertices as
    /// [`ProcessState::grow`] at `t_new`, with edges drawn per block pair as
    /// a binomial count placed uniformly without replacement.
    ///
    /// Equal in distribution to `grow`, not pairwise identical to it, and not
    /// consistent across different `t_new`. The state is not modified.
    pub fn sample_edges_blocked(&self, t_new: f64) -> Result<GrowingGraph> {
        let Kernel::Step(step) = self.graphon.kernel() else {
            return Err(Error::UnsupportedKernel(
                "blocked sampling needs a step kernel",
            ));
        };
        if !t_new.is_finite() || t_new < 0.0 {
            bail!(Domain, "time {t_new} must be finite and >= 0");
        }
        let points = self.points_between(0.0, t_new);
        let m = step.num_blocks();
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); m];
        for (id, p) in points.iter().enumerate() {
            if let Some(b) = step.block_of(p.feature) {
                members[b].push(id as u32);
            }
        }
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); points.len()];
        for a in 0..m {
            for b in a..m {
                let w = step.value(a, b);
                let (na, nb) = (members[a].len() as u64, members[b].len() as u64);
                let pairs = if a == b {
                    na * na.saturating_sub(1) / 2
                } else {
                    na * nb
                };
                if pairs == 0 || w == 0.0 {
                    continue;
                }
                let mut r = rng::stream(self.seed, DOMAIN_BLOCKED, (a * m + b) as u64);
                let count = Binomial::new(pairs, w)
                    .map_err(|e| Error::Computation(alloc::format!("binomial draw: {e}")))?
                    .sample(&mut r);
                let pairs = usize::try_from(pairs).map_err(|_| Error::Budget {
                    what: "block pair count",
                    needed: pairs as f64,
                    budget: usize::MAX as f64,
                    hint: "grow to an earlier time",
                })?;
                for r_idx in index::sample(&mut r, pairs, count as usize) {
                    let (u, v) = if a == b {
                        let (i, j) = unrank_pair(r_idx as u64);
                        (members[a][i as usize], members[a][j as usize])
                    } else {
                        let r_idx = r_idx as u64;
                        (
                            members[a][(r_idx / nb) as usize],
                            members[b][(r_idx % nb) as usize],
                        )
                    };
                    adjacency[u as usize].push(v);
                    adjacency[v as usize].push(u);
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let n = points.len();
        Ok(GrowingGraph::from_parts(
            (0..n as u64).collect(),
            Some(points),
            adjacency,
            true,
        ))
    }
}

/// The `r`-th unordered pair `(i, j)`, `i < j`, in the order
/// `(0,1), (0,2), (1,2), (0,3), …`.
fn unrank_pair(r: u64) -> (u64, u64) {
    let mut j = ((1.0 + (1.0 + 8.0 * r as f64).sqrt()) / 2.0) as u64;
    while j * (j - 1) / 2 > r {
        j -= 1;
    }
    while (j + 1) * j / 2 <= r {
        j += 1;
    }
    (r - j * (j - 1) / 2, j)
}

/// Clique size `m = ⌊n^{(1+α)/2}⌋` of the growing-clique family.
pub fn example1_clique_size(n: usize, alpha: f64) -> Result<usize> {
    if !(alpha > 0.0 && alpha < 1.0) {
        bail!(Domain, "alpha must lie in (0, 1), got {alpha}");
    }
    if n < 2 {
        bail!(Domain, "need n >= 2, got {n}");
    }
    let x = (n as f64).powf((1.0 + alpha) / 2.0);
    // Guard exact powers such as 10000^0.75 = 1000 against rounding down.
    let m = ((x * (1.0 + 1e-12)).floor() as usize).min(n);
    if m < 2 {
        bail!(
            Degenerate,
            "clique size {m} < 2 for n = {n}, alpha = {alpha}"
        );
    }
    Ok(m)
}

/// Growing clique: `n` vertices, the first `m = ⌊n^{(1+α)/2}⌋` forming a clique,
/// the rest isolated.
pub fn example1_graph(n: usize, alpha: f64) -> Result<GrowingGraph> {
    let m = example1_clique_size(n, alpha)?;
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, list) in adjacency.iter_mut().enumerate().take(m) {
        list.extend((0..m as u32).filter(|&j| j as usize != i));
    }
    Ok(GrowingGraph::from_parts(
        (0..n as u64).collect(),
        None,
        adjacency,
        true,
    ))
}

/// A variant of the growing-clique family whose dense core is a blow-up of `core` instead
/// of a clique: the first `m` vertices are split round-robin into
/// `|V(core)|` groups, and two vertices are adjacent iff their groups are
/// adjacent in `core`. The remaining `n − m` vertices are isolated.
///
/// A clique core has only one nonzero positive eigenvalue; a core such as
/// `C₁₀` gives several of each sign, all growing linearly in `m`.
pub fn example1_blowup_graph(n: usize, alpha: f64, core: &GrowingGraph) -> Result<GrowingGraph> {
    let m = example1_clique_size(n, alpha)?;
    let h = core.num_vertices();
    if h == 0 {
        bail!(Domain, "core graph is empty");
    }
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (u, list) in adjacency.iter_mut().enumerate().take(m) {
        let gu = u % h;
        list.extend((0..m as u32).filter(|&v| core.has_edge(gu, v as usize % h)));
    }
    Ok(GrowingGraph::from_parts(
        (0..n as u64).collect(),
        None,
        adjacency,
        true,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lists_sorted(adj: &[Vec<u32>]) -> bool {
        adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1]))
    }

    fn constant(p: f64) -> GeneralizedGraphon {
        GeneralizedGraphon::constant(p).unwrap()
    }

    #[test]
    fn empty_window() {
        let s = ProcessState::new(constant(0.5), 3).unwrap();
        assert!(s.sample_vertices(0.0).unwrap().is_empty());
    }

    #[test]
    fn full_kernel_gives_complete_graph() {
        let mut s = ProcessState::new(constant(1.0), 11).unwrap();
        let g = s.grow(30.0).unwrap();
        let n = g.num_vertices();
        assert!(n > 5);
        assert_eq!(g.num_edges(), n * (n - 1) / 2);
        let b = s.sample_edges_blocked(30.0).unwrap();
        assert_eq!(b, g);
    }

    #[test]
    fn zero_kernel_gives_no_edges() {
        let mut s = ProcessState::new(constant(0.0), 11).unwrap();
        assert_eq!(s.grow(50.0).unwrap().num_edges(), 0);
        assert_eq!(s.sample_edges_blocked(50.0).unwrap().num_edges(), 0);
    }

    #[test]
    fn schedule_independent() {
        let g = GeneralizedGraphon::step(vec![0.0, 0.5, 1.0], vec![0.8, 0.2, 0.2, 0.6]).unwrap();
        let mut a = ProcessState::new(g.clone(), 5).unwrap();
        let one = a.grow(80.0).unwrap();
        let mut b = ProcessState::new(g, 5).unwrap();
        for t in [3.0, 17.5, 40.0, 80.0] {
            b.grow(t).unwrap();
        }
        assert_eq!(b.graph(), one);
        assert!(lists_sorted(&b.adjacency));
    }

    #[test]
    fn time_cannot_go_back() {
        let mut s = ProcessState::new(constant(0.5), 1).unwrap();
        s.grow(5.0).unwrap();
        assert!(matches!(s.grow(4.0), Err(Error::Domain(_))));
        assert!(s.sample_vertices(1.0).is_err());
    }

    #[test]
    fn blocked_rejects_analytic() {
        use crate::graphon::{AnalyticFamily, AnalyticKernel, MeasureSpace};
        let g = GeneralizedGraphon::new(
            MeasureSpace::unit(),
            Kernel::Analytic(AnalyticKernel::new(AnalyticFamily::Min, 1.0)),
        )
        .unwrap();
        let s = ProcessState::new(g, 0).unwrap();
        assert!(matches!(
            s.sample_edges_blocked(1.0),
            Err(Error::UnsupportedKernel(_))
        ));
    }

    #[test]
    fn unrank_covers_pairs_in_order() {
        let mut r = 0;
        for j in 1..60u64 {
            for i in 0..j {
                assert_eq!(unrank_pair(r), (i, j));
                r += 1;
            }
        }
    }

    #[test]
    fn example1_sizes() {
        assert_eq!(example1_clique_size(100, 0.5).unwrap(), 31);
        assert_eq!(example1_clique_size(10_000, 0.5).unwrap(), 1000);
        let g = example1_graph(100, 0.5).unwrap();
        assert_eq!(g.num_vertices(), 100);
        assert_eq!(g.num_edges(), 465);
        // n^{(1+α)/2} < n for every α < 1, so the clique never covers all
        // vertices; 16^{0.75} = 8 exercises the exact-power guard.
        let g = example1_graph(16, 0.5).unwrap();
        assert_eq!(g.num_edges(), 28);
        assert_eq!(example1_clique_size(4, 0.99).unwrap(), 3);
        assert!(matches!(example1_graph(2, 0.1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn blowup_of_cycle() {
        let c4 = GrowingGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let g = example1_blowup_graph(100, 0.5, &c4).unwrap();
        // 31 vertices in groups of sizes 8, 8, 8, 7.
        assert_eq!(g.num_edges(), 8 * 8 + 8 * 8 + 8 * 7 + 7 * 8);
        assert_eq!(g.prune_isolated().num_vertices(), 31);
    }
}
