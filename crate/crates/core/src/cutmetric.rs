//! Cut norms of step functions and upper bounds on the stretched cut
//! distance.
//!
//! The cut distance is an infimum over couplings and is NP-hard to compute.
//! Everything here reports a value that is certified from above: a concrete
//! coupling (block rearrangement) is fixed, and the cut norm of the aligned
//! difference is then either computed exactly or bounded above. Heuristic
//! cut-norm searches only ever supply lower bounds for that fixed coupling.
//!
//! For a step function the supremum over measurable `U, V` is attained at
//! unions of blocks: `∫_{U×V} f` is bilinear in the fractions of each block
//! that `U` and `V` cover, so it is maximized at a vertex of the unit box.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{bail, Error, Result};
use crate::graphon::{GeneralizedGraphon, Kernel};
use crate::rng::{self, DOMAIN_ALIGN_RESTART, DOMAIN_CUT_RESTART};

/// Largest block count for exhaustive cut-norm enumeration.
pub const MAX_EXACT_BLOCKS: usize = 22;

/// Default number of random starts for [`cut_norm_approx`].
pub const DEFAULT_CUT_RESTARTS: usize = 20;

/// Default number of restarts of the alignment local search.
pub const DEFAULT_ALIGN_RESTARTS: usize = 50;

/// Boundaries closer than this (relative to the total length) are merged
/// when overlaying two partitions.
const SNAP: f64 = 1e-12;

/// A signed step function on `[0, L)` with Lebesgue measure.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    boundaries: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    /// `values` is the row-major `m × m` matrix for `m = boundaries.len() - 1`.
    pub fn new(boundaries: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if boundaries.len() < 2 || boundaries[0] != 0.0 {
            bail!(Domain, "a step function needs boundaries starting at 0");
        }
        if boundaries.windows(2).any(|w| !(w[0] < w[1]))
            || !boundaries.iter().all(|b| b.is_finite())
        {
            bail!(Domain, "boundaries must be finite and strictly ascending");
        }
        let m = boundaries.len() - 1;
        if values.len() != m * m {
            bail!(
                Domain,
                "{m} blocks need {} values, got {}",
                m * m,
                values.len()
            );
        }
        if values.iter().any(|v| !v.is_finite()) {
            bail!(Domain, "step values must be finite");
        }
        Ok(Self { boundaries, values })
    }

    /// The kernel of a step graphon, with block measures taken at unit scale.
    pub fn from_graphon(g: &GeneralizedGraphon) -> Result<Self> {
        let g = g.to_unit_scale();
        let Kernel::Step(s) = g.kernel() else {
            return Err(Error::UnsupportedKernel(
                "cut norms need a step kernel; discretize first",
            ));
        };
        Ok(Self {
            boundaries: s.boundaries().to_vec(),
            values: s.values().to_vec(),
        })
    }

    pub fn num_blocks(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn measures(&self) -> Vec<f64> {
        self.boundaries.windows(2).map(|w| w[1] - w[0]).collect()
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.num_blocks() + j]
    }

    /// `∫_{U×V} f` for block sets `u` and `v`.
    pub fn block_sum(&self, u: &[usize], v: &[usize]) -> f64 {
        let mu = self.measures();
        u.iter()
            .map(|&i| mu[i] * v.iter().map(|&j| self.value(i, j) * mu[j]).sum::<f64>())
            .sum()
    }

    /// `(∫ f⁺, ∫ f⁻)`; the larger is an upper bound on the cut norm.
    pub fn signed_mass(&self) -> (f64, f64) {
        let mu = self.measures();
        let m = self.num_blocks();
        let (mut pos, mut neg) = (0.0, 0.0);
        for i in 0..m {
            for j in 0..m {
                let w = self.values[i * m + j] * mu[i] * mu[j];
                if w > 0.0 {
                    pos += w;
                } else {
                    neg -= w;
                }
            }
        }
        (pos, neg)
    }

    /// `∫∫ f²`.
    pub fn l2_squared(&self) -> f64 {
        let mu = self.measures();
        let m = self.num_blocks();
        let mut total = 0.0;
        for i in 0..m {
            for j in 0..m {
                let v = self.values[i * m + j];
                total += v * v * mu[i] * mu[j];
            }
        }
        total
    }

    /// Merge adjacent blocks whose rows and columns agree exactly. The
    /// function itself is unchanged.
    pub fn coarsen(&self) -> Self {
        let m = self.num_blocks();
        let same = |a: usize, b: usize| {
            (0..m).all(|k| {
                self.value(a, k) == self.value(b, k) && self.value(k, a) == self.value(k, b)
            })
        };
        let mut keep = vec![0usize];
        for i in 1..m {
            if !same(*keep.last().unwrap_or(&0), i) {
                keep.push(i);
            }
        }
        if keep.len() == m {
            return self.clone();
        }
        let mut boundaries: Vec<f64> = keep.iter().map(|&i| self.boundaries[i]).collect();
        boundaries.push(self.boundaries[m]);
        let r = keep.len();
        let mut values = vec![0.0; r * r];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                values[a * r + b] = self.value(i, j);
            }
        }
        Self { boundaries, values }
    }

    fn weighted(&self) -> Vec<f64> {
        let mu = self.measures();
        let m = self.num_blocks();
        let mut w = self.values.clone();
        for i in 0..m {
            for j in 0..m {
                w[i * m + j] *= mu[i] * mu[j];
            }
        }
        w
    }
}

/// A cut-norm value with the block sets that attain its lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct CutNormEstimate {
    pub value: f64,
    pub witness_u: Vec<usize>,
    pub witness_v: Vec<usize>,
    /// The witness attains the supremum.
    pub exact: bool,
}

fn witness_from(f: &StepFunction, u: Vec<usize>, v: Vec<usize>, exact: bool) -> CutNormEstimate {
    let value = f.block_sum(&u, &v).abs();
    CutNormEstimate {
        value,
        witness_u: u,
        witness_v: v,
        exact,
    }
}

/// Best `V` for fixed column sums `c`: the positive or the negative support.
fn best_response(c: &[f64]) -> (f64, bool) {
    let (mut pos, mut neg) = (0.0, 0.0);
    for &x in c {
        if x > 0.0 {
            pos += x;
        } else {
            neg -= x;
        }
    }
    if pos >= neg {
        (pos, true)
    } else {
        (neg, false)
    }
}

fn support(c: &[f64], positive: bool) -> Vec<usize> {
    (0..c.len())
        .filter(|&j| if positive { c[j] > 0.0 } else { c[j] < 0.0 })
        .collect()
}

/// Exact cut norm by enumerating every block subset `U` (Gray-code order)
/// and choosing the optimal `V` for it.
pub fn cut_norm_exact(f: &StepFunction) -> Result<CutNormEstimate> {
    let m = f.num_blocks();
    if m > MAX_EXACT_BLOCKS {
        return Err(Error::Budget {
            what: "exact cut norm",
            needed: (m as f64).exp2(),
            budget: (MAX_EXACT_BLOCKS as f64).exp2(),
            hint: "use cut_norm_approx for a lower bound or signed_mass for an upper bound",
        });
    }
    let w = f.weighted();
    let mut c = vec![0.0; m];
    let mut in_u = vec![false; m];
    let (mut best, mut best_mask, mut best_sign) = (0.0, 0u32, true);
    for step in 1u32..(1u32 << m) {
        let flip = step.trailing_zeros() as usize;
        let sign = if in_u[flip] { -1.0 } else { 1.0 };
        in_u[flip] = !in_u[flip];
        for (cj, wj) in c.iter_mut().zip(&w[flip * m..(flip + 1) * m]) {
            *cj += sign * wj;
        }
        let (val, positive) = best_response(&c);
        if val > best {
            best = val;
            best_mask = step ^ (step >> 1);
            best_sign = positive;
        }
    }
    if best_mask == 0 {
        return Ok(CutNormEstimate {
            value: 0.0,
            witness_u: Vec::new(),
            witness_v: Vec::new(),
            exact: true,
        });
    }
    // Recompute the column sums of the winning set from scratch so that the
    // witness is not polluted by accumulated rounding.
    let u: Vec<usize> = (0..m).filter(|&i| best_mask >> i & 1 == 1).collect();
    let mut c = vec![0.0; m];
    for &i in &u {
        for j in 0..m {
            c[j] += w[i * m + j];
        }
    }
    let v = support(&c, best_sign);
    Ok(witness_from(f, u, v, true))
}

/// Alternating maximization from the full set, the best single row and
/// `restarts` random sets. Returns the best attained witness, a lower bound.
pub fn cut_norm_approx(f: &StepFunction, restarts: usize, seed: u64) -> CutNormEstimate {
    let m = f.num_blocks();
    let w = f.weighted();
    let mut starts: Vec<Vec<bool>> = vec![vec![true; m]];
    let single = (0..m)
        .map(|i| (best_response(&w[i * m..(i + 1) * m]).0, i))
        .fold((0.0, 0), |a, b| if b.0 > a.0 { b } else { a });
    let mut row = vec![false; m];
    row[single.1] = true;
    starts.push(row);
    for r in 0..restarts {
        let mut gen = rng::stream(seed, DOMAIN_CUT_RESTART, r as u64);
        starts.push((0..m).map(|_| gen.random::<bool>()).collect());
    }

    let mut best = (0.0, Vec::new(), Vec::new());
    for start in starts {
        for positive in [true, false] {
            let (val, u, v) = alternate(&w, m, start.clone(), positive);
            if val > best.0 {
                best = (val, u, v);
            }
        }
    }
    witness_from(f, best.1, best.2, false)
}

/// Alternate `V ← argmax`, `U ← argmax` for the signed objective
/// `±∫_{U×V} f` until it stops improving.
fn alternate(
    w: &[f64],
    m: usize,
    mut u: Vec<bool>,
    positive: bool,
) -> (f64, Vec<usize>, Vec<usize>) {
    let s = if positive { 1.0 } else { -1.0 };
    let mut last = f64::NEG_INFINITY;
    let mut v = vec![false; m];
    for _ in 0..200 {
        let mut c = vec![0.0; m];
        for i in (0..m).filter(|&i| u[i]) {
            for (cj, wj) in c.iter_mut().zip(&w[i * m..(i + 1) * m]) {
                *cj += wj;
            }
        }
        for j in 0..m {
            v[j] = s * c[j] > 0.0;
        }
        let mut r = vec![0.0; m];
        for i in 0..m {
            r[i] = (0..m).filter(|&j| v[j]).map(|j| w[i * m + j]).sum();
        }
        let mut val = 0.0;
        for i in 0..m {
            u[i] = s * r[i] > 0.0;
            if u[i] {
                val += s * r[i];
            }
        }
        if val <= last * (1.0 + 1e-15) {
            break;
        }
        last = val;
    }
    let u_set: Vec<usize> = (0..m).filter(|&i| u[i]).collect();
    let v_set: Vec<usize> = (0..m).filter(|&j| v[j]).collect();
    (last.max(0.0), u_set, v_set)
}

/// A measure-preserving alignment between the blocks of two step graphons,
/// as a sparse transport matrix `(row block, column block, mass)`.
///
/// Each side carries one extra padding block (index `num_blocks`) covering
/// the length by which it falls short of the other, so marginals always
/// match the block measures.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingPlan {
    pub row_measures: Vec<f64>,
    pub col_measures: Vec<f64>,
    pub entries: Vec<(usize, usize, f64)>,
}

impl CouplingPlan {
    pub fn row_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.row_measures.len()];
        for &(a, _, m) in &self.entries {
            s[a] += m;
        }
        s
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.col_measures.len()];
        for &(_, b, m) in &self.entries {
            s[b] += m;
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlignStrategy {
    /// Overlay the stretched graphons as they are.
    Identity,
    /// Reorder the blocks of each graphon by decreasing degree.
    DegreeSorted,
    /// Pairwise-swap hill climbing on the block order of the second
    /// graphon, restarted from identity, degree order and random orders.
    LocalSearch,
}

impl AlignStrategy {
    pub fn id(&self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::DegreeSorted => "degree-sorted",
            Self::LocalSearch => "local-search",
        }
    }
}

impl core::str::FromStr for AlignStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Self::Identity),
            "degree-sorted" => Ok(Self::DegreeSorted),
            "local-search" => Ok(Self::LocalSearch),
            other => Err(Error::Config(alloc::format!(
                "unknown strategy {other:?}; expected identity, degree-sorted or local-search"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DistanceOptions {
    pub strategy: AlignStrategy,
    pub seed: u64,
    pub cut_restarts: usize,
    pub align_restarts: usize,
    /// Work budget of the local search, in step-function cell updates.
    pub search_budget: f64,
}

impl DistanceOptions {
    pub fn new(strategy: AlignStrategy, seed: u64) -> Self {
        Self {
            strategy,
            seed,
            cut_restarts: DEFAULT_CUT_RESTARTS,
            align_restarts: DEFAULT_ALIGN_RESTARTS,
            search_budget: 2e8,
        }
    }
}

/// Upper bound on the stretched cut distance together with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub strategy: AlignStrategy,
    /// Certified upper bound on `δ^s_□(g1, g2)`.
    pub value: f64,
    /// Cut norm lower bound for the chosen coupling (attained by the witness).
    pub lower: f64,
    /// The cut norm of the aligned difference was computed exactly, so
    /// `value == lower`.
    pub exact: bool,
    pub witness_u: Vec<usize>,
    pub witness_v: Vec<usize>,
    /// Block order applied to the first and second stretched graphon.
    pub order_first: Vec<usize>,
    pub order_second: Vec<usize>,
    /// Number of cells of the coarsened common refinement.
    pub refinement_size: usize,
    pub coupling: CouplingPlan,
}

/// Stretched step kernel in unit-scale coordinates.
fn stretched_step(g: &GeneralizedGraphon, cells: usize) -> Result<StepFunction> {
    let step = g.discretize(cells)?.to_unit_scale();
    if !(step.l1_norm()? > 0.0) {
        bail!(Degenerate, "cannot stretch a graphon with zero L1 norm");
    }
    StepFunction::from_graphon(&step.stretch()?)
}

fn reorder(f: &StepFunction, order: &[usize]) -> StepFunction {
    let mu = f.measures();
    let m = f.num_blocks();
    let mut boundaries = Vec::with_capacity(m + 1);
    boundaries.push(0.0);
    let mut acc = 0.0;
    for &i in order {
        acc += mu[i];
        boundaries.push(acc);
    }
    let mut values = vec![0.0; m * m];
    for (a, &i) in order.iter().enumerate() {
        for (b, &j) in order.iter().enumerate() {
            values[a * m + b] = f.value(i, j);
        }
    }
    StepFunction { boundaries, values }
}

/// Common refinement of the two partitions (after extending the shorter one
/// with zero) and, per cell, the block of each function (`None` past its end).
struct Overlay {
    boundaries: Vec<f64>,
    first: Vec<Option<usize>>,
    second: Vec<Option<usize>>,
}

fn overlay(a: &StepFunction, b: &StepFunction) -> Overlay {
    let total = a.boundaries[a.num_blocks()].max(b.boundaries[b.num_blocks()]);
    let tol = SNAP * total;
    let mut all: Vec<f64> = a.boundaries.iter().chain(&b.boundaries).copied().collect();
    all.sort_by(f64::total_cmp);
    let mut boundaries: Vec<f64> = Vec::with_capacity(all.len());
    for x in all {
        match boundaries.last() {
            Some(&last) if x - last <= tol => {}
            _ => boundaries.push(x),
        }
    }
    let locate = |f: &StepFunction, x: f64| {
        let end = f.boundaries[f.num_blocks()];
        (x < end).then(|| f.boundaries.partition_point(|&b| b <= x) - 1)
    };
    let mids: Vec<f64> = boundaries.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    Overlay {
        first: mids.iter().map(|&x| locate(a, x)).collect(),
        second: mids.iter().map(|&x| locate(b, x)).collect(),
        boundaries,
    }
}

fn difference(a: &StepFunction, b: &StepFunction, ov: &Overlay) -> StepFunction {
    let r = ov.first.len();
    let get = |f: &StepFunction, i: Option<usize>, j: Option<usize>| match (i, j) {
        (Some(i), Some(j)) => f.value(i, j),
        _ => 0.0,
    };
    let mut values = vec![0.0; r * r];
    for p in 0..r {
        for q in 0..r {
            values[p * r + q] =
                get(a, ov.first[p], ov.first[q]) - get(b, ov.second[p], ov.second[q]);
        }
    }
    StepFunction {
        boundaries: ov.boundaries.clone(),
        values,
    }
}

fn coupling(a: &StepFunction, b: &StepFunction, ov: &Overlay) -> CouplingPlan {
    let widths: Vec<f64> = ov.boundaries.windows(2).map(|w| w[1] - w[0]).collect();
    let total = ov.boundaries[ov.boundaries.len() - 1];
    let pad = |f: &StepFunction| {
        let mut mu = f.measures();
        mu.push(total - f.boundaries[f.num_blocks()]);
        mu
    };
    let (ma, mb) = (a.num_blocks(), b.num_blocks());
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    for (p, w) in widths.iter().enumerate() {
        let key = (ov.first[p].unwrap_or(ma), ov.second[p].unwrap_or(mb));
        match entries.last_mut() {
            Some(e) if (e.0, e.1) == key => e.2 += w,
            _ => entries.push((key.0, key.1, *w)),
        }
    }
    CouplingPlan {
        row_measures: pad(a),
        col_measures: pad(b),
        entries,
    }
}

/// Certified cut norm of an aligned difference.
struct Certified {
    value: f64,
    lower: CutNormEstimate,
    exact: bool,
    size: usize,
}

fn certify(d: &StepFunction, restarts: usize, seed: u64) -> Result<Certified> {
    let d = d.coarsen();
    let size = d.num_blocks();
    if size <= MAX_EXACT_BLOCKS {
        let e = cut_norm_exact(&d)?;
        return Ok(Certified {
            value: e.value,
            lower: e,
            exact: true,
            size,
        });
    }
    let (pos, neg) = d.signed_mass();
    let lower = cut_norm_approx(&d, restarts, seed);
    Ok(Certified {
        value: pos.max(neg).max(lower.value),
        lower,
        exact: false,
        size,
    })
}

fn degree_order(f: &StepFunction) -> Vec<usize> {
    let mu = f.measures();
    let m = f.num_blocks();
    let deg: Vec<f64> = (0..m)
        .map(|i| (0..m).map(|j| f.value(i, j) * mu[j]).sum())
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| deg[y].total_cmp(&deg[x]).then(x.cmp(&y)));
    order
}

/// Groups of block indices with equal measure; swaps stay inside a group.
fn width_groups(f: &StepFunction) -> Vec<usize> {
    let mu = f.measures();
    let scale = mu.iter().fold(0.0_f64, |a, &x| a.max(x));
    let mut group = vec![usize::MAX; mu.len()];
    let mut next = 0;
    for i in 0..mu.len() {
        if group[i] != usize::MAX {
            continue;
        }
        group[i] = next;
        for j in i + 1..mu.len() {
            if group[j] == usize::MAX && (mu[i] - mu[j]).abs() <= SNAP * scale {
                group[j] = next;
            }
        }
        next += 1;
    }
    group
}

/// Hill-climb over block orders of `b` (pairwise swaps between equal-width
/// blocks, first improvement) minimizing `‖a − b∘π‖₂²`.
fn local_search(a: &StepFunction, b: &StepFunction, opts: &DistanceOptions) -> Vec<usize> {
    let m = b.num_blocks();
    let group = width_groups(b);
    let cost_of = |order: &[usize]| {
        let bb = reorder(b, order);
        let ov = overlay(a, &bb);
        (
            difference(a, &bb, &ov).l2_squared(),
            (ov.first.len() * ov.first.len()) as f64,
        )
    };
    let mut spent = 0.0;
    let mut best_order: Vec<usize> = (0..m).collect();
    let (mut best_cost, unit) = cost_of(&best_order);
    spent += unit;

    for r in 0..opts.align_restarts.max(1) {
        let mut order: Vec<usize> = match r {
            0 => (0..m).collect(),
            1 => degree_order(b),
            _ => {
                let mut gen = rng::stream(opts.seed, DOMAIN_ALIGN_RESTART, r as u64);
                let mut order: Vec<usize> = (0..m).collect();
                for g in 0..=group.iter().copied().max().unwrap_or(0) {
                    let slots: Vec<usize> = (0..m).filter(|&p| group[order[p]] == g).collect();
                    let mut members: Vec<usize> = slots.iter().map(|&p| order[p]).collect();
                    members.shuffle(&mut gen);
                    for (p, v) in slots.into_iter().zip(members) {
                        order[p] = v;
                    }
                }
                order
            }
        };
        let (mut cost, unit) = cost_of(&order);
        spent += unit;
        let mut improved = true;
        while improved && spent < opts.search_budget {
            improved = false;
            'scan: for p in 0..m {
                for q in p + 1..m {
                    if group[order[p]] != group[order[q]] {
                        continue;
                    }
                    order.swap(p, q);
                    let (c, unit) = cost_of(&order);
                    spent += unit;
                    if c < cost - 1e-15 * cost.max(1.0) {
                        cost = c;
                        improved = true;
                        break 'scan;
                    }
                    order.swap(p, q);
                    if spent >= opts.search_budget {
                        break 'scan;
                    }
                }
            }
        }
        if cost < best_cost {
            best_cost = cost;
            best_order = order;
        }
        if best_cost == 0.0 || spent >= opts.search_budget {
            break;
        }
    }
    best_order
}

/// Upper bound on `δ^s_□(g1, g2)`: stretch both graphons, align them with
/// the chosen strategy, and bound the cut norm of the difference.
///
/// Analytic kernels are first discretized on a grid matching the finer step
/// kernel (at least 64 cells).
pub fn stretched_cut_distance_upper(
    g1: &GeneralizedGraphon,
    g2: &GeneralizedGraphon,
    opts: &DistanceOptions,
) -> Result<DistanceReport> {
    let cells = [g1, g2]
        .iter()
        .filter_map(|g| g.as_step().map(|s| s.num_blocks()))
        .max()
        .unwrap_or(0)
        .max(64);
    let a = stretched_step(g1, cells)?;
    let b = stretched_step(g2, cells)?;
    let identity_a: Vec<usize> = (0..a.num_blocks()).collect();
    let identity_b: Vec<usize> = (0..b.num_blocks()).collect();

    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    match opts.strategy {
        AlignStrategy::Identity => candidates.push((identity_a, identity_b)),
        AlignStrategy::DegreeSorted => candidates.push((degree_order(&a), degree_order(&b))),
        AlignStrategy::LocalSearch => {
            candidates.push((identity_a.clone(), identity_b));
            candidates.push((identity_a, local_search(&a, &b, opts)));
        }
    }

    let mut best: Option<DistanceReport> = None;
    for (oa, ob) in candidates {
        let ra = reorder(&a, &oa);
        let rb = reorder(&b, &ob);
        let ov = overlay(&ra, &rb);
        let d = difference(&ra, &rb, &ov);
        let cert = certify(&d, opts.cut_restarts, opts.seed)?;
        if best.as_ref().is_some_and(|r| r.value <= cert.value) {
            continue;
        }
        best = Some(DistanceReport {
            strategy: opts.strategy,
            value: cert.value,
            lower: cert.lower.value,
            exact: cert.exact,
            witness_u: cert.lower.witness_u,
            witness_v: cert.lower.witness_v,
            order_first: oa,
            order_second: ob,
            refinement_size: cert.size,
            coupling: coupling(&ra, &rb, &ov),
        });
    }
    best.ok_or_else(|| Error::Computation(String::from("no alignment candidate")))
}

/// `I_{[0,1]²}`, the limit of the growing-clique family.
pub fn unit_square_indicator() -> GeneralizedGraphon {
    GeneralizedGraphon::constant(1.0).expect("constant 1 is a valid graphon")
}

/// Cut norm of `W^{G_n,s} − I_{[0,1]²}` under the identity overlay, for the
/// growing-clique graph with clique size `m`, in closed form.
///
/// The stretched clique occupies `[0, s)` with `s = sqrt(m/(m−1))` in blocks
/// of side `a = 1/sqrt(m(m−1))`. Inside the unit square the difference is
/// `−1` on the diagonal blocks (the last one clipped to width
/// `p = 1 − sqrt((m−1)/m)`); outside it is `+1` between `[1, s)` and the
/// first `m − 1` blocks. The negative part dominates:
/// `‖·‖_□ = max(p, 1/m + p²) = 1/m + p²`.
pub fn example1_overlay_cut_norm(m: usize) -> Result<f64> {
    if m < 2 {
        bail!(Degenerate, "clique size {m} < 2");
    }
    let mf = m as f64;
    let p = 1.0 - ((mf - 1.0) / mf).sqrt();
    Ok((1.0 / mf + p * p).max(p))
}
