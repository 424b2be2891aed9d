//! Maximin-eigenvalue search over an affine space of symmetric matrices by
//! projected subgradient ascent.

use super::{GramSpace, SosError};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Floating acceptance threshold for the minimum eigenvalue.
pub const PSD_TOLERANCE: f64 = -1e-9;

#[derive(Debug, Clone)]
pub struct PsdOptions {
    pub seed: u64,
    pub max_iters: usize,
    /// Stop after this many iterations without improvement.
    pub patience: usize,
    pub deadline: Option<Instant>,
}

impl Default for PsdOptions {
    fn default() -> Self {
        PsdOptions { seed: 0, max_iters: 4000, patience: 400, deadline: None }
    }
}

impl PsdOptions {
    pub fn with_seed(seed: u64) -> Self {
        PsdOptions { seed, ..Default::default() }
    }
}

/// A floating point of the Gram space.
#[derive(Debug, Clone)]
pub struct FloatGram {
    pub matrix: DMatrix<f64>,
    pub min_eigenvalue: f64,
    pub iterations: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub enum PsdOutcome {
    Feasible(FloatGram),
    /// Best point found, whose minimum eigenvalue is below tolerance.
    Infeasible { max_min_eigenvalue: f64, best: FloatGram },
}

impl PsdOutcome {
    pub fn best(&self) -> &FloatGram {
        match self {
            PsdOutcome::Feasible(g) | PsdOutcome::Infeasible { best: g, .. } => g,
        }
    }
}

fn frob(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.component_mul(b).sum()
}

/// Frobenius-orthonormal basis of the span of `mats`.
fn orthonormalize(mats: Vec<DMatrix<f64>>) -> Vec<DMatrix<f64>> {
    let mut out: Vec<DMatrix<f64>> = Vec::new();
    for mut m in mats {
        for b in &out {
            let c = frob(&m, b);
            m -= b * c;
        }
        let n = frob(&m, &m).sqrt();
        if n > 1e-12 {
            out.push(m / n);
        }
    }
    out
}

/// Minimum eigenvalue and the averaged outer product of the eigenvectors
/// whose eigenvalue is within `bundle` of it (a subgradient of λ_min).
fn min_eig_subgradient(m: &DMatrix<f64>, bundle: f64) -> (f64, DMatrix<f64>) {
    let e = SymmetricEigen::new(m.clone());
    let lmin = e.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let n = m.nrows();
    let mut g = DMatrix::zeros(n, n);
    let mut count = 0.0;
    for (k, &l) in e.eigenvalues.iter().enumerate() {
        if l <= lmin + bundle {
            let v = e.eigenvectors.column(k);
            g += v * v.transpose();
            count += 1.0;
        }
    }
    (lmin, g / count)
}

pub fn psd_feasible_point(space: &GramSpace, opts: &PsdOptions) -> Result<PsdOutcome, SosError> {
    let n = space.basis().len();
    let x0 = space.particular.matrix.to_f64();
    let basis = orthonormalize(space.kernel.iter().map(|k| k.to_f64()).collect());
    let finish = |matrix: DMatrix<f64>, lmin: f64, iterations: usize| {
        let g = FloatGram { matrix, min_eigenvalue: lmin, iterations, seed: Some(opts.seed) };
        if lmin >= PSD_TOLERANCE {
            PsdOutcome::Feasible(g)
        } else {
            PsdOutcome::Infeasible { max_min_eigenvalue: lmin, best: g }
        }
    };
    if n == 0 {
        return Ok(finish(x0, f64::INFINITY, 0));
    }
    // centre: the point of the space closest to the origin
    let mut centre = x0.clone();
    for b in &basis {
        let c = frob(&centre, b);
        centre -= b * c;
    }
    if basis.is_empty() {
        let (l, _) = min_eig_subgradient(&centre, 0.0);
        return Ok(finish(centre, l, 0));
    }
    let scale = frob(&centre, &centre).sqrt().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t: Vec<f64> = basis.iter().map(|_| rng.gen_range(-0.01..0.01) * scale).collect();
    let point = |t: &[f64]| {
        let mut m = centre.clone();
        for (b, c) in basis.iter().zip(t) {
            m += b * *c;
        }
        m
    };
    let mut best = (f64::NEG_INFINITY, point(&t));
    let mut since_best = 0;
    let mut iters = 0;
    let step0 = 0.5 * scale;
    for it in 0..opts.max_iters {
        iters = it + 1;
        if let Some(d) = opts.deadline {
            if it % 32 == 0 && Instant::now() > d {
                return Err(SosError::Budget(it));
            }
        }
        let m = point(&t);
        let bundle = 1e-3 * scale / (1.0 + it as f64).sqrt();
        let (lmin, g) = min_eig_subgradient(&m, bundle);
        if lmin > best.0 + 1e-12 * scale {
            best = (lmin, m);
            since_best = 0;
        } else {
            since_best += 1;
            if since_best > opts.patience {
                break;
            }
        }
        let grad: Vec<f64> = basis.iter().map(|b| frob(b, &g)).collect();
        let norm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-14 {
            break;
        }
        let step = step0 / (1.0 + it as f64).sqrt();
        for (ti, gi) in t.iter_mut().zip(&grad) {
            *ti += step * gi / norm;
        }
    }
    Ok(finish(best.1, best.0, iters))
}
