//! Generalized graphons on interval feature spaces.
//!
//! A feature space is `[0, L)` (possibly `L = ∞`) carrying `scale × Lebesgue`
//! measure. Kernels are either step functions over an explicit partition or
//! one of a small registry of named analytic families, cut off at a
//! truncation length.
//!
//! Canonical graphons of finite graphs depend on the vertex labeling. This
//! module always uses the graph's stored order; comparisons that should be
//! labeling-invariant go through the alignment search in
//! [`crate::cutmetric`].

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{bail, Error, Result};
use crate::graph::GrowingGraph;
use crate::linalg;
use crate::quadrature::Rule;

/// Largest vertex count accepted by [`canonical_graphon`]; its step matrix
/// is dense.
pub const MAX_CANONICAL_BLOCKS: usize = 4096;

/// Nyström refinement starts at this many grid points and doubles.
pub const NYSTROM_START: usize = 64;
/// Refinement gives up beyond this many grid points.
pub const NYSTROM_MAX: usize = 4096;
/// Above this grid size, discretized spectra use the Krylov solver.
const NYSTROM_DENSE_LIMIT: usize = 512;

/// `[0, length)` with measure `scale · dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpace {
    length: f64,
    scale: f64,
}

impl MeasureSpace {
    /// `length` may be `f64::INFINITY`.
    pub fn new(length: f64, scale: f64) -> Result<Self> {
        if !(length > 0.0) || length.is_nan() {
            bail!(Config, "space length must be > 0, got {length}");
        }
        if !(scale > 0.0) || !scale.is_finite() {
            bail!(
                Config,
                "space scale must be a positive finite number, got {scale}"
            );
        }
        Ok(Self { length, scale })
    }

    /// `[0, 1)` with Lebesgue measure.
    pub fn unit() -> Self {
        Self {
            length: 1.0,
            scale: 1.0,
        }
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn total_measure(&self) -> f64 {
        self.scale * self.length
    }

    pub fn is_finite(&self) -> bool {
        self.length.is_finite()
    }
}

/// Piecewise-constant kernel on a partition `0 = b₀ < b₁ < … < b_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepKernel {
    boundaries: Vec<f64>,
    values: Vec<f64>,
}

impl StepKernel {
    /// `values` is the symmetric `m × m` block matrix, row-major, for
    /// `m = boundaries.len() - 1` blocks.
    pub fn new(boundaries: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let k = Self { boundaries, values };
        k.validate()?;
        Ok(k)
    }

    fn validate(&self) -> Result<()> {
        let b = &self.boundaries;
        if b.len() < 2 {
            bail!(Config, "step kernel needs at least two boundaries");
        }
        if b[0] != 0.0 {
            bail!(Config, "step boundaries must start at 0, got {}", b[0]);
        }
        if b.iter().any(|x| !x.is_finite()) {
            bail!(Config, "step boundaries must be finite");
        }
        if let Some(i) = b.windows(2).position(|w| !(w[0] < w[1])) {
            bail!(
                Config,
                "step boundaries must be strictly ascending (at index {})",
                i + 1
            );
        }
        let m = b.len() - 1;
        if self.values.len() != m * m {
            bail!(
                Config,
                "{m} blocks need a {m}×{m} value matrix, got {} entries",
                self.values.len()
            );
        }
        for i in 0..m {
            for j in 0..m {
                let v = self.values[i * m + j];
                if !(0.0..=1.0).contains(&v) {
                    bail!(Config, "kernel value at ({i}, {j}) is {v}, outside [0, 1]");
                }
                if v != self.values[j * m + i] {
                    bail!(Config, "value matrix is not symmetric at ({i}, {j})");
                }
            }
        }
        Ok(())
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

    pub fn value(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.num_blocks() + b]
    }

    pub fn support_length(&self) -> f64 {
        self.boundaries[self.boundaries.len() - 1]
    }

    pub fn widths(&self) -> Vec<f64> {
        self.boundaries.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Block containing `x`, or `None` past the last boundary.
    pub fn block_of(&self, x: f64) -> Option<usize> {
        if x >= self.support_length() {
            return None;
        }
        Some(self.boundaries.partition_point(|&b| b <= x) - 1)
    }
}

/// Registry of analytic kernel families, evaluated in dilated coordinates
/// `u = dilation · x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticFamily {
    /// `W ≡ p`.
    Constant { p: f64 },
    /// `W(u, v) = amplitude · exp(−rate · (u + v))`, a separable rank-one
    /// kernel that is integrable on `ℝ₊`.
    ExpDecay { amplitude: f64, rate: f64 },
    /// `W(u, v) = min(u, v)`; needs `dilation · support ≤ 1`.
    Min,
}

impl AnalyticFamily {
    pub fn id(&self) -> &'static str {
        match self {
            Self::Constant { .. } => "constant",
            Self::ExpDecay { .. } => "exp_decay",
            Self::Min => "min",
        }
    }

    #[inline]
    fn eval(&self, u: f64, v: f64) -> f64 {
        match *self {
            Self::Constant { p } => p,
            Self::ExpDecay { amplitude, rate } => amplitude * (-rate * (u + v)).exp(),
            Self::Min => u.min(v),
        }
    }

    /// `∫₀^a ∫₀^a f(u, v) du dv` for the untruncated family.
    fn square_mass(&self, a: f64) -> f64 {
        match *self {
            Self::Constant { p } => p * a * a,
            Self::ExpDecay { amplitude, rate } => {
                let one = (1.0 - (-rate * a).exp()) / rate;
                amplitude * one * one
            }
            Self::Min => a * a * a / 3.0,
        }
    }

    /// Length scale on which the integrand varies, in dilated coordinates.
    fn decay_length(&self) -> Option<f64> {
        match *self {
            Self::ExpDecay { rate, .. } => Some(1.0 / rate),
            _ => None,
        }
    }
}

/// An analytic kernel, identically zero once either coordinate reaches
/// `truncation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticKernel {
    pub family: AnalyticFamily,
    pub truncation: f64,
    pub dilation: f64,
}

impl AnalyticKernel {
    pub fn new(family: AnalyticFamily, truncation: f64) -> Self {
        Self {
            family,
            truncation,
            dilation: 1.0,
        }
    }

    pub fn with_dilation(mut self, dilation: f64) -> Self {
        self.dilation = dilation;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    Step(StepKernel),
    Analytic(AnalyticKernel),
}

/// A symmetric kernel `W: S × S → [0, 1]` on an interval feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedGraphon {
    space: MeasureSpace,
    kernel: Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    ExactStep,
    Discretized { grid: usize },
}

/// Two-tailed eigenvalues of the integral operator `T_W`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpectrum {
    /// `λ₁ ≥ λ₂ ≥ … ≥ 0`, zero-padded to the requested length.
    pub positive_tail: Vec<f64>,
    /// `λ₋₁ ≤ λ₋₂ ≤ … ≤ 0`, zero-padded to the requested length.
    pub negative_tail: Vec<f64>,
    pub method: SpectrumMethod,
    pub discretization_error_estimate: f64,
}

impl OperatorSpectrum {
    pub fn power_sum(&self, k: u32) -> f64 {
        self.positive_tail
            .iter()
            .chain(&self.negative_tail)
            .map(|l| l.powi(k as i32))
            .sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.power_sum(2)
    }
}

/// `h(C_k, W)` with the bound on the eigenvalues missing from the tails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleDensity {
    pub value: f64,
    pub truncation_bound: f64,
}

impl GeneralizedGraphon {
    pub fn new(space: MeasureSpace, kernel: Kernel) -> Result<Self> {
        match &kernel {
            Kernel::Step(step) => {
                step.validate()?;
                let end = step.support_length();
                if space.is_finite() && (end - space.length).abs() > 1e-12 * space.length.max(1.0) {
                    bail!(
                        Config,
                        "step boundaries end at {end} but the space has length {}",
                        space.length
                    );
                }
            }
            Kernel::Analytic(a) => {
                if !(a.truncation > 0.0) || !a.truncation.is_finite() {
                    bail!(
                        Config,
                        "analytic kernels need a finite truncation > 0, got {}",
                        a.truncation
                    );
                }
                if !(a.dilation > 0.0) || !a.dilation.is_finite() {
                    bail!(
                        Config,
                        "dilation must be a positive finite number, got {}",
                        a.dilation
                    );
                }
                match a.family {
                    AnalyticFamily::Constant { p } => {
                        if !(0.0..=1.0).contains(&p) {
                            bail!(Config, "constant kernel value {p} outside [0, 1]");
                        }
                    }
                    AnalyticFamily::ExpDecay { amplitude, rate } => {
                        if !(0.0..=1.0).contains(&amplitude) {
                            bail!(Config, "exp_decay amplitude {amplitude} outside [0, 1]");
                        }
                        if !(rate > 0.0) || !rate.is_finite() {
                            bail!(Config, "exp_decay rate must be > 0, got {rate}");
                        }
                    }
                    AnalyticFamily::Min => {
                        let top = a.dilation * a.truncation.min(space.length);
                        if top > 1.0 + 1e-12 {
                            bail!(Config, "min kernel reaches {top} > 1 on its support; shrink truncation or dilation");
                        }
                    }
                }
            }
        }
        Ok(Self { space, kernel })
    }

    /// `W ≡ p` on `[0, 1)` as a one-block step kernel.
    pub fn constant(p: f64) -> Result<Self> {
        Self::new(
            MeasureSpace::unit(),
            Kernel::Step(StepKernel::new(vec![0.0, 1.0], vec![p])?),
        )
    }

    /// Step graphon on `[0, last boundary)` with unit scale.
    pub fn step(boundaries: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let step = StepKernel::new(boundaries, values)?;
        let space = MeasureSpace::new(step.support_length(), 1.0)?;
        Self::new(space, Kernel::Step(step))
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn as_step(&self) -> Option<&StepKernel> {
        match &self.kernel {
            Kernel::Step(s) => Some(s),
            Kernel::Analytic(_) => None,
        }
    }

    /// Coordinates beyond this are outside the kernel's support.
    pub fn support_length(&self) -> f64 {
        match &self.kernel {
            Kernel::Step(s) => s.support_length(),
            Kernel::Analytic(a) => a.truncation.min(self.space.length),
        }
    }

    /// `μ` of the support, the measure that vertex sampling sees.
    pub fn effective_measure(&self) -> f64 {
        self.space.scale * self.support_length()
    }

    /// Block measures `μ_i = scale · width_i` of a step kernel.
    pub fn block_measures(&self) -> Option<Vec<f64>> {
        self.as_step().map(|s| {
            s.widths()
                .into_iter()
                .map(|w| w * self.space.scale)
                .collect()
        })
    }

    fn check_coordinate(&self, x: f64) -> Result<()> {
        if !(x >= 0.0) || !x.is_finite() || x >= self.space.length {
            bail!(Domain, "coordinate {x} outside [0, {})", self.space.length);
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: f64, y: f64) -> f64 {
        match &self.kernel {
            Kernel::Step(s) => match (s.block_of(x), s.block_of(y)) {
                (Some(a), Some(b)) => s.value(a, b),
                _ => 0.0,
            },
            Kernel::Analytic(a) => {
                if x >= a.truncation || y >= a.truncation {
                    0.0
                } else {
                    a.family.eval(a.dilation * x, a.dilation * y)
                }
            }
        }
    }

    /// `W(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.check_coordinate(x)?;
        self.check_coordinate(y)?;
        Ok(self.eval_unchecked(x, y))
    }

    /// `∫∫ f(W(x, y)) dμ dμ` over the support, for analytic kernels.
    fn integrate_analytic(&self, a: &AnalyticKernel, f: impl Fn(f64) -> f64) -> Result<f64> {
        let support = self.support_length();
        // Past ~50 decay lengths the integrand is below e^-50 of its peak.
        let limit = match a.family.decay_length() {
            Some(l) => support.min(50.0 * l / a.dilation),
            None => support,
        };
        let scale_len = a.family.decay_length().map_or(limit, |l| l / a.dilation);
        let panels = ((4.0 * limit / scale_len).ceil() as usize).clamp(16, 128);
        let rule = Rule::new(16);
        // W is symmetric and smooth off the diagonal for every family, so
        // integrate the lower triangle and double it.
        let lower = rule.integrate(0.0, limit, panels, |y| {
            let inner = ((panels as f64 * y / limit).ceil() as usize).max(1);
            rule.integrate(0.0, y, inner, |x| {
                f(a.family.eval(a.dilation * x, a.dilation * y))
            })
        });
        let s = self.space.scale;
        let value = 2.0 * s * s * lower;
        if !value.is_finite() {
            bail!(
                Computation,
                "kernel integral is not finite after truncation"
            );
        }
        Ok(value)
    }

    /// `‖W‖₁ = ∫∫ W dμ dμ`; exact for step kernels, quadrature otherwise.
    pub fn l1_norm(&self) -> Result<f64> {
        match &self.kernel {
            Kernel::Step(s) => {
                let mu = self.block_measures().unwrap_or_default();
                let m = s.num_blocks();
                let mut total = 0.0;
                for i in 0..m {
                    for j in 0..m {
                        total += s.values[i * m + j] * mu[i] * mu[j];
                    }
                }
                Ok(total)
            }
            Kernel::Analytic(a) => self.integrate_analytic(a, |w| w),
        }
    }

    /// `‖W‖₂² = ∫∫ W² dμ dμ`.
    pub fn l2_norm_squared(&self) -> Result<f64> {
        match &self.kernel {
            Kernel::Step(s) => {
                let mu = self.block_measures().unwrap_or_default();
                let m = s.num_blocks();
                let mut total = 0.0;
                for i in 0..m {
                    for j in 0..m {
                        let v = s.values[i * m + j];
                        total += v * v * mu[i] * mu[j];
                    }
                }
                Ok(total)
            }
            Kernel::Analytic(a) => self.integrate_analytic(a, |w| w * w),
        }
    }

    /// L1 mass that truncation removed from the untruncated family:
    /// `∫∫ W` over `S² \ [0, T)²`. Zero for step kernels; infinite when the
    /// family is not integrable on the full space.
    pub fn truncation_tail_bound(&self) -> f64 {
        match &self.kernel {
            Kernel::Step(_) => 0.0,
            Kernel::Analytic(a) => {
                if a.truncation >= self.space.length {
                    return 0.0;
                }
                let d = a.dilation;
                let s = self.space.scale;
                let full = if self.space.length.is_finite() {
                    a.family.square_mass(d * self.space.length)
                } else {
                    match a.family {
                        AnalyticFamily::Constant { p: 0.0 } => 0.0,
                        AnalyticFamily::ExpDecay { amplitude, rate } => amplitude / (rate * rate),
                        _ => f64::INFINITY,
                    }
                };
                let kept = a.family.square_mass(d * a.truncation);
                (s * s / (d * d)) * (full - kept).max(0.0)
            }
        }
    }

    /// Degree function `D_W(x) = ∫ W(x, y) dμ(y)`.
    pub fn degree_function(&self, x: f64) -> Result<f64> {
        self.check_coordinate(x)?;
        Ok(self.degree_unchecked(x))
    }

    fn degree_unchecked(&self, x: f64) -> f64 {
        match &self.kernel {
            Kernel::Step(s) => {
                let Some(a) = s.block_of(x) else { return 0.0 };
                let m = s.num_blocks();
                let widths = s.widths();
                (0..m).map(|b| s.values[a * m + b] * widths[b]).sum::<f64>() * self.space.scale
            }
            Kernel::Analytic(a) => {
                let support = self.support_length();
                if x >= support {
                    return 0.0;
                }
                let limit = match a.family.decay_length() {
                    Some(l) => support.min(x + 50.0 * l / a.dilation),
                    None => support,
                };
                let rule = Rule::new(16);
                let f = |y: f64| a.family.eval(a.dilation * x, a.dilation * y);
                let panels = |len: f64| ((64.0 * len / limit).ceil() as usize).max(1);
                let left = rule.integrate(0.0, x, panels(x), f);
                let right = rule.integrate(x, limit, panels(limit - x), f);
                (left + right) * self.space.scale
            }
        }
    }

    /// `(∫ D_W(x)^p dμ(x))^{1/p}`.
    pub fn degree_p_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            bail!(Domain, "p-norm needs p >= 1, got {p}");
        }
        let total = match &self.kernel {
            Kernel::Step(s) => {
                let mu = self.block_measures().unwrap_or_default();
                (0..s.num_blocks())
                    .map(|a| {
                        self.degree_unchecked(0.5 * (s.boundaries[a] + s.boundaries[a + 1]))
                            .powf(p)
                            * mu[a]
                    })
                    .sum::<f64>()
            }
            Kernel::Analytic(_) => {
                let support = self.support_length();
                Rule::new(16).integrate(0.0, support, 64, |x| self.degree_unchecked(x).powf(p))
                    * self.space.scale
            }
        };
        Ok(total.powf(1.0 / p))
    }

    /// Eigenvalues of `T_W`, the `k_pos` largest positive and `k_neg`
    /// most negative, zero-padded.
    ///
    /// Step kernels are exact: the nonzero spectrum of `T_W` equals that of
    /// `M_ij = W_ij · sqrt(μ_i μ_j)`. Analytic kernels are discretized on a
    /// midpoint grid that doubles from [`NYSTROM_START`] until the requested
    /// eigenvalues move by less than `tol`.
    pub fn operator_spectrum(
        &self,
        k_pos: usize,
        k_neg: usize,
        tol: f64,
    ) -> Result<OperatorSpectrum> {
        if !(tol > 0.0) {
            bail!(Domain, "tolerance must be > 0, got {tol}");
        }
        match &self.kernel {
            Kernel::Step(s) => {
                let m = s.num_blocks();
                let mu = self.block_measures().unwrap_or_default();
                let mut a = vec![0.0; m * m];
                for i in 0..m {
                    for j in 0..m {
                        a[i * m + j] = s.values[i * m + j] * (mu[i] * mu[j]).sqrt();
                    }
                }
                let values = linalg::symmetric_eigenvalues(a, m)?;
                let (positive_tail, negative_tail) = split_tails(&values, k_pos, k_neg);
                Ok(OperatorSpectrum {
                    positive_tail,
                    negative_tail,
                    method: SpectrumMethod::ExactStep,
                    discretization_error_estimate: 0.0,
                })
            }
            Kernel::Analytic(_) => self.discretized_spectrum(k_pos, k_neg, tol),
        }
    }

    fn discretized_spectrum(
        &self,
        k_pos: usize,
        k_neg: usize,
        tol: f64,
    ) -> Result<OperatorSpectrum> {
        let support = self.support_length();
        let mut previous: Option<(Vec<f64>, Vec<f64>)> = None;
        let mut n = NYSTROM_START;
        loop {
            let h = support / n as f64;
            let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
            let w = self.space.scale * h;
            let mut a = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let v = w * self.eval_unchecked(xs[i], xs[j]);
                    a[i * n + j] = v;
                    a[j * n + i] = v;
                }
            }
            let (pos, neg) = extremal_eigenvalues(a, n, k_pos, k_neg, tol)?;
            if let Some((pp, pn)) = &previous {
                let change = pos
                    .iter()
                    .zip(pp)
                    .chain(neg.iter().zip(pn))
                    .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()));
                if change < tol {
                    return Ok(OperatorSpectrum {
                        positive_tail: pos,
                        negative_tail: neg,
                        method: SpectrumMethod::Discretized { grid: n },
                        discretization_error_estimate: change,
                    });
                }
                if n >= NYSTROM_MAX {
                    let mut last = pos;
                    last.extend(neg);
                    return Err(Error::ToleranceNotMet {
                        context: "discretized operator spectrum",
                        achieved: change,
                        requested: tol,
                        last_estimate: last,
                    });
                }
            }
            previous = Some((pos, neg));
            n *= 2;
        }
    }

    /// `h(C_k, W) = ‖W‖₁^{-k/2} Σ_j λ_j^k` from a computed spectrum.
    ///
    /// The eigenvalues missing from the tails are bounded through
    /// `Σ_rest |λ|^k ≤ max_rest |λ|^{k-2} · (‖W‖₂² − Σ_tails λ²)`; an error is
    /// returned when that bound exceeds `tol`.
    pub fn h_density_graphon(
        &self,
        k: u32,
        spectrum: &OperatorSpectrum,
        tol: f64,
    ) -> Result<CycleDensity> {
        if k < 3 {
            bail!(Domain, "cycle length must be >= 3, got {k}");
        }
        let l1 = self.l1_norm()?;
        if !(l1 > 0.0) {
            bail!(Degenerate, "graphon has zero L1 norm");
        }
        let norm = l1.powf(-(k as f64) / 2.0);
        let value = spectrum.power_sum(k) * norm;

        let l2 = self.l2_norm_squared()?;
        let rest = (l2 - spectrum.sum_of_squares()).max(0.0);
        let edge = |tail: &[f64]| match tail.last() {
            // A zero in the padded tail means every eigenvalue of that sign
            // was captured.
            Some(&l) if l != 0.0 => l.abs(),
            Some(_) => 0.0,
            None => f64::INFINITY,
        };
        let max_rest = edge(&spectrum.positive_tail)
            .max(edge(&spectrum.negative_tail))
            .min(rest.sqrt());
        let discretization = if spectrum.discretization_error_estimate > 0.0 {
            let n_eigs = (spectrum.positive_tail.len() + spectrum.negative_tail.len()) as f64;
            let lmax = spectrum
                .positive_tail
                .first()
                .copied()
                .unwrap_or(0.0)
                .abs()
                .max(spectrum.negative_tail.first().copied().unwrap_or(0.0).abs());
            n_eigs * k as f64 * lmax.powi(k as i32 - 1) * spectrum.discretization_error_estimate
        } else {
            0.0
        };
        let truncation_bound = (max_rest.powi(k as i32 - 2) * rest + discretization) * norm;
        if truncation_bound > tol {
            return Err(Error::ToleranceNotMet {
                context: "cycle density from truncated spectrum",
                achieved: truncation_bound,
                requested: tol,
                last_estimate: vec![value],
            });
        }
        Ok(CycleDensity {
            value,
            truncation_bound,
        })
    }

    /// The stretched graphon in coordinate form: `W(c x, c y)` on
    /// `[0, L / c)` with `c = sqrt(‖W‖₁)`, so that its L1 norm is 1.
    pub fn stretch(&self) -> Result<Self> {
        let l1 = self.l1_norm()?;
        if !(l1 > 0.0) {
            bail!(Degenerate, "cannot stretch a graphon with zero L1 norm");
        }
        Ok(self.dilate(l1.sqrt()))
    }

    /// Same graphon with coordinates rescaled so that the measure is plain
    /// Lebesgue (`scale = 1`).
    pub fn to_unit_scale(&self) -> Self {
        let s = self.space.scale;
        if s == 1.0 {
            return self.clone();
        }
        let mut g = self.dilate(1.0 / s);
        g.space.scale = 1.0;
        g
    }

    /// `W(c x, c y)` on `[0, L / c)`, measure scale unchanged.
    fn dilate(&self, c: f64) -> Self {
        let space = MeasureSpace {
            length: self.space.length / c,
            scale: self.space.scale,
        };
        let kernel = match &self.kernel {
            Kernel::Step(s) => Kernel::Step(StepKernel {
                boundaries: s.boundaries.iter().map(|b| b / c).collect(),
                values: s.values.clone(),
            }),
            Kernel::Analytic(a) => Kernel::Analytic(AnalyticKernel {
                family: a.family,
                truncation: a.truncation / c,
                dilation: a.dilation * c,
            }),
        };
        Self { space, kernel }
    }

    /// Step approximation with `cells` equal blocks over the support, taking
    /// the kernel value at cell midpoints. Step kernels are returned as is.
    pub fn discretize(&self, cells: usize) -> Result<Self> {
        if self.as_step().is_some() {
            return Ok(self.clone());
        }
        if cells == 0 {
            bail!(Domain, "discretization needs at least one cell");
        }
        let support = self.support_length();
        let h = support / cells as f64;
        let boundaries: Vec<f64> = (0..=cells)
            .map(|i| if i == cells { support } else { i as f64 * h })
            .collect();
        let mids: Vec<f64> = (0..cells).map(|i| (i as f64 + 0.5) * h).collect();
        let mut values = vec![0.0; cells * cells];
        for i in 0..cells {
            for j in 0..=i {
                let v = self.eval_unchecked(mids[i], mids[j]).clamp(0.0, 1.0);
                values[i * cells + j] = v;
                values[j * cells + i] = v;
            }
        }
        let space = MeasureSpace::new(
            if self.space.is_finite() {
                support
            } else {
                self.space.length
            },
            self.space.scale,
        )?;
        Ok(Self {
            space,
            kernel: Kernel::Step(StepKernel { boundaries, values }),
        })
    }
}

/// Canonical graphon of `g` in its stored vertex order: `n` blocks of width
/// `1/n` on `[0, 1)`, value 1 on `(i, j)` iff `{v_i, v_j}` is an edge.
pub fn canonical_graphon(g: &GrowingGraph) -> Result<GeneralizedGraphon> {
    let n = g.num_vertices();
    if n == 0 {
        bail!(Domain, "canonical graphon of an empty graph");
    }
    if n > MAX_CANONICAL_BLOCKS {
        return Err(Error::Budget {
            what: "canonical graphon",
            needed: (n as f64) * (n as f64),
            budget: (MAX_CANONICAL_BLOCKS as f64) * (MAX_CANONICAL_BLOCKS as f64),
            hint: "the step matrix is dense; compare large graphs through their spectra",
        });
    }
    let boundaries = (0..=n).map(|i| i as f64 / n as f64).collect();
    let mut values = vec![0.0; n * n];
    for (u, v) in g.edges() {
        values[u * n + v] = 1.0;
        values[v * n + u] = 1.0;
    }
    Ok(GeneralizedGraphon {
        space: MeasureSpace::unit(),
        kernel: Kernel::Step(StepKernel { boundaries, values }),
    })
}

/// Eigenvalues within this distance of zero (relative to the spectral
/// radius) are treated as zero.
const ZERO_RELATIVE: f64 = 1e-12;

fn split_tails(ascending: &[f64], k_pos: usize, k_neg: usize) -> (Vec<f64>, Vec<f64>) {
    let radius = ascending.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let cut = ZERO_RELATIVE * radius.max(f64::MIN_POSITIVE);
    let mut pos: Vec<f64> = ascending
        .iter()
        .rev()
        .copied()
        .filter(|&x| x > cut)
        .take(k_pos)
        .collect();
    let mut neg: Vec<f64> = ascending
        .iter()
        .copied()
        .filter(|&x| x < -cut)
        .take(k_neg)
        .collect();
    pos.resize(k_pos, 0.0);
    neg.resize(k_neg, 0.0);
    (pos, neg)
}

/// `tol` is the absolute eigenvalue accuracy the caller needs; Ritz
/// residuals are driven a hundred times below it.
fn extremal_eigenvalues(
    a: Vec<f64>,
    n: usize,
    k_pos: usize,
    k_neg: usize,
    tol: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if n <= NYSTROM_DENSE_LIMIT {
        let values = linalg::symmetric_eigenvalues(a, n)?;
        return Ok(split_tails(&values, k_pos, k_neg));
    }
    let frobenius = linalg::norm(&a);
    let defaults = linalg::KrylovOptions::default();
    let opts = linalg::KrylovOptions {
        norm_hint: Some(frobenius),
        tol: defaults
            .tol
            .max(1e-2 * tol / frobenius.max(f64::MIN_POSITIVE)),
        ..defaults
    };
    let matvec = |sign: f64| {
        let a = &a;
        move |x: &[f64], y: &mut [f64]| {
            for (r, yr) in y.iter_mut().enumerate() {
                *yr = sign * linalg::dot(&a[r * n..(r + 1) * n], x);
            }
        }
    };
    let top = linalg::largest_eigenvalues(n, k_pos, matvec(1.0), &opts)?.values;
    let bottom: Vec<f64> = linalg::largest_eigenvalues(n, k_neg, matvec(-1.0), &opts)?
        .values
        .into_iter()
        .map(|x| -x)
        .collect();
    let radius = top
        .first()
        .copied()
        .unwrap_or(0.0)
        .abs()
        .max(bottom.first().copied().unwrap_or(0.0).abs());
    let cut = ZERO_RELATIVE * radius.max(f64::MIN_POSITIVE);
    let mut pos: Vec<f64> = top.into_iter().filter(|&x| x > cut).collect();
    let mut neg: Vec<f64> = bottom.into_iter().filter(|&x| x < -cut).collect();
    pos.resize(k_pos, 0.0);
    neg.resize(k_neg, 0.0);
    Ok((pos, neg))
}

impl core::fmt::Display for GeneralizedGraphon {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match &self.kernel {
            Kernel::Step(s) => write!(
                f,
                "step graphon, {} blocks on [0, {})",
                s.num_blocks(),
                self.space.length
            ),
            Kernel::Analytic(a) => write!(
                f,
                "{} graphon on [0, {}) truncated at {}",
                a.family.id(),
                self.space.length,
                a.truncation
            ),
        }
    }
}
