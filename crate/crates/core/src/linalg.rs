//! Symmetric eigenvalue solvers.
//!
//! Two routes, used by both the graphon operator spectra and the adjacency
//! spectra:
//!
//! * [`symmetric_eigenvalues`] / [`symmetric_eigen`]: Householder reduction to
//!   tridiagonal form followed by implicit QL with Wilkinson-style shifts
//!   (the EISPACK `tred2`/`tql2` pair). Dense, `O(n³)`.
//! * [`largest_eigenvalues`]: a restarted block Lanczos / Rayleigh–Ritz
//!   iteration with full reorthogonalization that only needs a matrix-vector
//!   product. The block size is at least the number of wanted eigenvalues, so
//!   repeated eigenvalues among the wanted ones are resolved.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng;

const MAX_QL_ITERATIONS: usize = 64;

/// Eigenvalues of a symmetric `n × n` matrix given row-major, ascending.
///
/// Only the lower triangle is read.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    check_square(&a, n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut a, n, &mut d, &mut e, false);
    drop(a);
    tql(&mut d, &mut e, None, n)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.
///
/// Eigenvectors are returned column-major: vector `i` occupies
/// `vectors[i * n .. (i + 1) * n]`.
pub fn symmetric_eigen(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_square(&a, n)?;
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut a, n, &mut d, &mut e, true);
    tql(&mut d, &mut e, Some(&mut a), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| d[x].total_cmp(&d[y]));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (dst, &src) in order.iter().enumerate() {
        vectors[dst * n..(dst + 1) * n].copy_from_slice(&a[src * n..(src + 1) * n]);
    }
    Ok((values, vectors))
}

fn check_square(a: &[f64], n: usize) -> Result<()> {
    if a.len() != n * n {
        return Err(Error::Domain(alloc::format!(
            "matrix buffer has {} entries, expected {n}×{n}",
            a.len()
        )));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    Ok(())
}

// The buffer is addressed column-major, `v[c * n + r]`. For the symmetric
// input this is the same as row-major, and it keeps every O(n³) inner loop on
// contiguous memory.
fn tridiagonalize(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64], accumulate: bool) {
    let at = |r: usize, c: usize| c * n + r;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);

            for j in 0..i {
                let f = d[j];
                v[at(j, i)] = f;
                let col = &v[at(0, j)..at(0, j) + n];
                let mut g = e[j] + col[j] * f;
                for k in j + 1..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                let col = &mut v[at(0, j)..at(0, j) + n];
                for k in j..i {
                    col[k] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    if !accumulate {
        for j in 0..n {
            d[j] = v[at(j, j)];
        }
        e[0] = 0.0;
        return;
    }

    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

fn tql(d: &mut [f64], e: &mut [f64], mut v: Option<&mut [f64]>, n: usize) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iterations = 0;
            loop {
                iterations += 1;
                if iterations > MAX_QL_ITERATIONS {
                    return Err(Error::ToleranceNotMet {
                        context: "tridiagonal QL iteration",
                        achieved: e[l].abs(),
                        requested: eps * tst1,
                        last_estimate: d.to_vec(),
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..n] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = v.as_deref_mut() {
                        let (left, right) = v.split_at_mut((i + 1) * n);
                        let ci = &mut left[i * n..];
                        let ci1 = &mut right[..n];
                        for (a, b) in ci.iter_mut().zip(ci1.iter_mut()) {
                            let hb = *b;
                            *b = s * *a + c * hb;
                            *a = c * *a - s * hb;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Controls for [`largest_eigenvalues`].
#[derive(Debug, Clone, Copy)]
pub struct KrylovOptions {
    /// Convergence when every wanted Ritz residual is below `tol · ‖A‖`.
    pub tol: f64,
    /// Lower bound on `‖A‖` used in the tolerance. Without it the largest
    /// Ritz value magnitude is used, which is too strict when the wanted
    /// end of the spectrum sits near zero.
    pub norm_hint: Option<f64>,
    pub max_restarts: usize,
    /// Number of expanded basis vectors per restart cycle; `None` picks
    /// `max(60, 10k)`.
    pub max_basis: Option<usize>,
    pub seed: u64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            tol: 1e-11,
            max_restarts: 400,
            norm_hint: None,
            max_basis: None,
            seed: 0x5EED,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrylovResult {
    /// Wanted eigenvalues, descending.
    pub values: Vec<f64>,
    /// Residual norm `‖A x − θ x‖` of each returned Ritz pair.
    pub residuals: Vec<f64>,
    pub matvecs: usize,
}

/// The `k` algebraically largest eigenvalues of the symmetric operator
/// `apply` (writing `A·x` into its second argument).
///
/// The smallest eigenvalues are obtained by calling this on `−A`.
pub fn largest_eigenvalues<F>(
    n: usize,
    k: usize,
    mut apply: F,
    opts: &KrylovOptions,
) -> Result<KrylovResult>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let k = k.min(n);
    if k == 0 {
        return Ok(KrylovResult {
            values: Vec::new(),
            residuals: Vec::new(),
            matvecs: 0,
        });
    }
    let block = k.max(2).min(n);
    let cap = opts
        .max_basis
        .unwrap_or((10 * k).max(60))
        .max(2 * k + block)
        .min(n);
    let keep = (2 * k + 2).min(cap.saturating_sub(block)).max(k);

    let mut gen = rng::stream(opts.seed, rng::DOMAIN_KRYLOV, n as u64);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(cap + block);
    let mut images: Vec<Vec<f64>> = Vec::with_capacity(cap);
    let mut h = vec![0.0; cap * cap];
    for _ in 0..block {
        let w = random_vector(&mut gen, n);
        push_orthonormal(&mut basis, w, &mut gen, n);
    }

    let mut matvecs = 0;
    let mut restarts = 0;
    loop {
        while images.len() < cap && images.len() < basis.len() {
            let j = images.len();
            let mut w = vec![0.0; n];
            apply(&basis[j], &mut w);
            matvecs += 1;
            for i in 0..=j {
                let hij = dot(&basis[i], &w);
                h[i * cap + j] = hij;
                h[j * cap + i] = hij;
            }
            if basis.len() < n {
                push_orthonormal(&mut basis, w.clone(), &mut gen, n);
            }
            images.push(w);
        }

        let m = images.len();
        let mut hm = vec![0.0; m * m];
        for i in 0..m {
            hm[i * m..(i + 1) * m].copy_from_slice(&h[i * cap..i * cap + m]);
        }
        let (theta, y) = symmetric_eigen(hm, m)?;
        let norm_est = theta
            .iter()
            .fold(0.0_f64, |acc, t| acc.max(t.abs()))
            .max(opts.norm_hint.unwrap_or(0.0))
            .max(f64::MIN_POSITIVE);

        let wanted = keep.min(m);
        let mut ritz = Vec::with_capacity(wanted);
        let mut ritz_images = Vec::with_capacity(wanted);
        let mut residuals = Vec::with_capacity(k);
        for t in 0..wanted {
            let col = m - 1 - t;
            let yc = &y[col * m..(col + 1) * m];
            let x = combine(&basis[..m], yc, n);
            let ax = combine(&images, yc, n);
            if t < k {
                let r: f64 = x
                    .iter()
                    .zip(&ax)
                    .map(|(xi, ai)| {
                        let d = ai - theta[col] * xi;
                        d * d
                    })
                    .sum::<f64>()
                    .sqrt();
                residuals.push(r);
            }
            ritz.push(x);
            ritz_images.push(ax);
        }

        let worst = residuals.iter().fold(0.0_f64, |a, &r| a.max(r));
        let values: Vec<f64> = (0..k).map(|t| theta[m - 1 - t]).collect();
        if m == n || worst <= opts.tol * norm_est {
            return Ok(KrylovResult {
                values,
                residuals,
                matvecs,
            });
        }
        if restarts >= opts.max_restarts {
            return Err(Error::ToleranceNotMet {
                context: "block Lanczos eigenvalues",
                achieved: worst / norm_est,
                requested: opts.tol,
                last_estimate: values,
            });
        }
        restarts += 1;

        // Thick restart: keep the leading Ritz vectors and the not yet
        // expanded tail, which carries the residual directions.
        let tail: Vec<Vec<f64>> = basis.drain(m..).collect();
        basis.clear();
        images.clear();
        h.fill(0.0);
        for (t, (x, ax)) in ritz.into_iter().zip(ritz_images).enumerate() {
            h[t * cap + t] = theta[m - 1 - t];
            basis.push(x);
            images.push(ax);
        }
        for w in tail {
            push_orthonormal(&mut basis, w, &mut gen, n);
        }
        if basis.len() == images.len() && basis.len() < n {
            let w = random_vector(&mut gen, n);
            push_orthonormal(&mut basis, w, &mut gen, n);
        }
    }
}

fn random_vector(gen: &mut rng::StreamRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| gen.random::<f64>() - 0.5).collect()
}

/// Orthonormalize `w` against `basis` (two Gram–Schmidt passes) and append
/// it; falls back to fresh random directions if `w` lies in the span.
fn push_orthonormal(
    basis: &mut Vec<Vec<f64>>,
    mut w: Vec<f64>,
    gen: &mut rng::StreamRng,
    n: usize,
) {
    for _attempt in 0..8 {
        let before = norm(&w);
        if before > 0.0 {
            for _pass in 0..2 {
                for b in basis.iter() {
                    let c = dot(b, &w);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi -= c * bi;
                    }
                }
            }
            let after = norm(&w);
            if after > 1e-10 * before {
                let inv = 1.0 / after;
                w.iter_mut().for_each(|x| *x *= inv);
                basis.push(w);
                return;
            }
        }
        w = random_vector(gen, n);
    }
}

fn combine(vectors: &[Vec<f64>], coeffs: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for (v, &c) in vectors.iter().zip(coeffs) {
        if c != 0.0 {
            for (o, vi) in out.iter_mut().zip(v) {
                *o += c * vi;
            }
        }
    }
    out
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
