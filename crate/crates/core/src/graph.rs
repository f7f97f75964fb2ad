//! Simple undirected graphs with stable vertex ids.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};

/// A vertex of the graphon process: arrival time and feature coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexPoint {
    pub birth_time: f64,
    pub feature: f64,
}

/// A simple undirected graph whose vertices carry stable integer ids.
///
/// Local indices `0..num_vertices()` address vertices inside this value;
/// [`GrowingGraph::id`] maps them to ids that survive restriction and
/// pruning. Ids are strictly ascending in local order. Neighbour lists are
/// sorted and hold local indices.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowingGraph {
    ids: Vec<u64>,
    points: Option<Vec<VertexPoint>>,
    adjacency: Vec<Vec<u32>>,
    num_edges: usize,
    includes_isolated: bool,
}

impl GrowingGraph {
    /// Build from local-index edges. Self-loops are dropped and duplicate or
    /// reversed pairs collapsed.
    pub fn from_edges(
        num_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let ids = (0..num_vertices as u64).collect();
        Self::with_ids(ids, None, edges)
    }

    /// Build from explicit ids (strictly ascending), optional vertex points and
    /// local-index edges.
    pub fn with_ids(
        ids: Vec<u64>,
        points: Option<Vec<VertexPoint>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = ids.len();
        if n > u32::MAX as usize {
            bail!(Domain, "{n} vertices exceed the u32 index range");
        }
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            bail!(Domain, "vertex ids must be strictly ascending");
        }
        if let Some(p) = &points {
            if p.len() != n {
                bail!(Domain, "{} vertex points for {n} vertices", p.len());
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                bail!(Domain, "edge ({u}, {v}) out of range for {n} vertices");
            }
            if u != v {
                adjacency[u].push(v as u32);
                adjacency[v].push(u as u32);
            }
        }
        let mut twice = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Ok(Self {
            ids,
            points,
            adjacency,
            num_edges: twice / 2,
            includes_isolated: true,
        })
    }

    /// `n` vertices, no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            ids: (0..n as u64).collect(),
            points: None,
            adjacency: vec![Vec::new(); n],
            num_edges: 0,
            includes_isolated: true,
        }
    }

    pub(crate) fn from_parts(
        ids: Vec<u64>,
        points: Option<Vec<VertexPoint>>,
        adjacency: Vec<Vec<u32>>,
        includes_isolated: bool,
    ) -> Self {
        let num_edges = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            ids,
            points,
            adjacency,
            num_edges,
            includes_isolated,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// `false` once isolated vertices have been pruned.
    pub fn includes_isolated(&self) -> bool {
        self.includes_isolated
    }

    pub fn id(&self, local: usize) -> u64 {
        self.ids[local]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn points(&self) -> Option<&[VertexPoint]> {
        self.points.as_deref()
    }

    pub fn neighbors(&self, local: usize) -> &[u32] {
        &self.adjacency[local]
    }

    pub fn degree(&self, local: usize) -> usize {
        self.adjacency[local].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges as local pairs `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| (v as usize) <= u);
            list[start..].iter().map(move |&v| (u, v as usize))
        })
    }

    /// Edges as stable-id pairs `(a, b)` with `a < b`, ascending.
    pub fn id_edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.edges().map(|(u, v)| (self.ids[u], self.ids[v]))
    }

    /// `y = A x` for the 0/1 adjacency matrix.
    pub fn adjacency_matvec(&self, x: &[f64], y: &mut [f64]) {
        for (yi, list) in y.iter_mut().zip(&self.adjacency) {
            *yi = list.iter().map(|&v| x[v as usize]).sum();
        }
    }

    /// Row-major dense 0/1 adjacency matrix.
    pub fn dense_adjacency(&self) -> Vec<f64> {
        let n = self.num_vertices();
        let mut a = vec![0.0; n * n];
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                a[u * n + v as usize] = 1.0;
            }
        }
        a
    }

    /// Subgraph induced on the local vertices where `keep` is true.
    pub fn induced(&self, keep: &[bool]) -> Self {
        let n = self.num_vertices();
        let mut remap = vec![u32::MAX; n];
        let mut ids = Vec::new();
        let mut points = self.points.as_ref().map(|_| Vec::new());
        for i in 0..n {
            if keep[i] {
                remap[i] = ids.len() as u32;
                ids.push(self.ids[i]);
                if let (Some(out), Some(src)) = (points.as_mut(), self.points.as_ref()) {
                    out.push(src[i]);
                }
            }
        }
        let adjacency = (0..n)
            .filter(|&i| keep[i])
            .map(|i| {
                self.adjacency[i]
                    .iter()
                    .filter_map(|&v| {
                        let r = remap[v as usize];
                        (r != u32::MAX).then_some(r)
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(ids, points, adjacency, self.includes_isolated)
    }

    /// Restriction to vertices born at or before `t`. Requires vertex points.
    pub fn restrict_to_time(&self, t: f64) -> Result<Self> {
        let Some(points) = &self.points else {
            bail!(Domain, "graph has no birth times to restrict on");
        };
        let keep: Vec<bool> = points.iter().map(|p| p.birth_time <= t).collect();
        Ok(self.induced(&keep))
    }

    /// The graph with every degree-0 vertex removed. Edges are unchanged.
    pub fn prune_isolated(&self) -> Self {
        let keep: Vec<bool> = self.adjacency.iter().map(|l| !l.is_empty()).collect();
        let mut g = self.induced(&keep);
        g.includes_isolated = false;
        g
    }

    /// Relabel so that local order follows `order` (a permutation of local
    /// indices); ids become `0..n` in the new order.
    pub fn relabel(&self, order: &[usize]) -> Result<Self> {
        let n = self.num_vertices();
        if order.len() != n {
            bail!(
                Domain,
                "relabeling has {} entries for {n} vertices",
                order.len()
            );
        }
        let mut position = vec![usize::MAX; n];
        for (new, &old) in order.iter().enumerate() {
            if old >= n || position[old] != usize::MAX {
                bail!(Domain, "relabeling is not a permutation");
            }
            position[old] = new;
        }
        let edges = self.edges().map(|(u, v)| (position[u], position[v]));
        let mut g = Self::from_edges(n, edges)?;
        g.includes_isolated = self.includes_isolated;
        Ok(g)
    }
}
