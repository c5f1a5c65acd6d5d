//! Bayesian linear regression over real or complex targets with
//! heteroscedastic log-space noise, the log marginal likelihood, sparsity
//! (alpha) and noise updates, the fast-sequential relevance vector machine,
//! and a deterministic hyperparameter grid search.
//!
//! Real targets use the Gaussian marginal likelihood with its 1/2 prefactor;
//! complex targets use the Hermitian forms with the prefactor dropped.

use crate::error::{Error, Result};
use crate::C64;
use nalgebra::{ComplexField, DMatrix, DVector};

/// Scalar abstraction over the two regression target types.
pub trait RegScalar: ComplexField<RealField = f64> + Copy {
    /// 1/2 for real targets, 1 for complex targets.
    const LOG_ML_PREFACTOR: f64;
    fn of(v: f64) -> Self;
}

impl RegScalar for f64 {
    const LOG_ML_PREFACTOR: f64 = 0.5;
    fn of(v: f64) -> Self {
        v
    }
}

impl RegScalar for C64 {
    const LOG_ML_PREFACTOR: f64 = 1.0;
    fn of(v: f64) -> Self {
        C64::new(v, 0.0)
    }
}

/// Prior precision treated as infinite (feature pruned).
pub const PRUNE_THRESHOLD: f64 = 1e12;

/// Design matrix, targets and per-point noise precisions.
#[derive(Clone)]
pub struct RegressionData<T: RegScalar> {
    pub phi: DMatrix<T>,
    pub y: DVector<T>,
    /// Diagonal of the noise-precision matrix B.
    pub precisions: DVector<f64>,
}

impl<T: RegScalar> RegressionData<T> {
    pub fn new(phi: DMatrix<T>, y: DVector<T>, precisions: DVector<f64>) -> Result<Self> {
        if phi.nrows() != y.len() || phi.nrows() != precisions.len() {
            return Err(Error::invalid("regression data dimensions disagree"));
        }
        if !precisions.iter().all(|&b| b.is_finite() && b > 0.0) {
            return Err(Error::invalid("noise precisions must be positive and finite"));
        }
        Ok(RegressionData { phi, y, precisions })
    }

    pub fn num_points(&self) -> usize {
        self.phi.nrows()
    }

    pub fn num_features(&self) -> usize {
        self.phi.ncols()
    }
}

/// Noise specification for a fit.
#[derive(Clone, Debug)]
pub enum NoiseModel {
    /// Per-point precisions given directly.
    FixedPerPoint(Vec<f64>),
    /// One precision for every data point.
    Homoscedastic { beta: f64 },
    /// Log-space mapping of an amplitude-space variance: each point carries a
    /// reference squared amplitude `r_i` (|psi_i|^2 divided by its sampling
    /// weight when present) and gets `sigma^2_i = ln(sigma_tilde^2 / r_i + 1)`.
    LogSpace { sigma_tilde_sq: f64, ref_amp_sq: Vec<f64> },
}

impl NoiseModel {
    pub fn precisions(&self) -> Result<Vec<f64>> {
        match self {
            NoiseModel::FixedPerPoint(b) => Ok(b.clone()),
            NoiseModel::Homoscedastic { beta } => {
                if *beta <= 0.0 {
                    return Err(Error::invalid("beta must be positive"));
                }
                Ok(vec![*beta])
            }
            NoiseModel::LogSpace { sigma_tilde_sq, ref_amp_sq } => {
                log_space_precisions(*sigma_tilde_sq, ref_amp_sq, None)
            }
        }
    }
}

/// Per-point precisions `1 / ln(sigma_tilde^2 p_i / r_i + 1)` from reference
/// squared amplitudes `r_i` and optional sampling probabilities `p_i`.
pub fn log_space_precisions(
    sigma_tilde_sq: f64,
    ref_amp_sq: &[f64],
    sampling_prob: Option<&[f64]>,
) -> Result<Vec<f64>> {
    if sigma_tilde_sq <= 0.0 || !sigma_tilde_sq.is_finite() {
        return Err(Error::invalid("sigma_tilde^2 must be positive"));
    }
    let mut out = Vec::with_capacity(ref_amp_sq.len());
    for (i, &r) in ref_amp_sq.iter().enumerate() {
        let p = sampling_prob.map_or(1.0, |ps| ps[i]);
        let var = (sigma_tilde_sq * p / r + 1.0).ln();
        if !(var.is_finite() && var > 0.0) {
            return Err(Error::Numerical(format!(
                "log-space variance degenerate for point {i}: {var}"
            )));
        }
        out.push(var.recip());
    }
    Ok(out)
}

/// Same mapping starting from reference log amplitudes `omega_i`.
pub fn log_space_precisions_from_log_amps(
    sigma_tilde_sq: f64,
    log_amps: &[C64],
    sampling_prob: Option<&[f64]>,
) -> Result<Vec<f64>> {
    let amp_sq: Vec<f64> = log_amps.iter().map(|w| (2.0 * w.re).exp()).collect();
    log_space_precisions(sigma_tilde_sq, &amp_sq, sampling_prob)
}

fn cholesky_with_jitter<T: RegScalar>(
    mut m: DMatrix<T>,
) -> Result<nalgebra::linalg::Cholesky<T, nalgebra::Dyn>> {
    let scale = m.diagonal().iter().map(|d| d.modulus()).fold(0.0f64, f64::max).max(1.0);
    let mut jitter = 0.0;
    for attempt in 0..4 {
        if attempt > 0 {
            let add = scale * 1e-12 * 100f64.powi(attempt - 1);
            for i in 0..m.nrows() {
                m[(i, i)] += T::of(add - jitter);
            }
            jitter = add;
        }
        if let Some(chol) = nalgebra::linalg::Cholesky::new(m.clone()) {
            return Ok(chol);
        }
    }
    Err(Error::IllConditioned { cond: scale / (scale * 1e-8) })
}

/// Posterior mean and covariance for the active-feature design matrix:
/// `Sigma = (Phi^H B Phi + diag(alpha))^-1`, `mu = Sigma Phi^H B y`.
pub fn posterior<T: RegScalar>(
    data: &RegressionData<T>,
    alpha: &[f64],
) -> Result<(DVector<T>, DMatrix<T>)> {
    if alpha.len() != data.num_features() {
        return Err(Error::invalid("alpha length does not match feature count"));
    }
    let bphi = scale_rows(&data.phi, &data.precisions);
    let mut gram = data.phi.ad_mul(&bphi);
    for (i, &a) in alpha.iter().enumerate() {
        gram[(i, i)] += T::of(a);
    }
    let chol = cholesky_with_jitter(gram)?;
    let sigma = chol.inverse();
    let rhs = data.phi.ad_mul(&component_mul(&data.y, &data.precisions));
    let mu = &sigma * rhs;
    Ok((mu, sigma))
}

fn scale_rows<T: RegScalar>(m: &DMatrix<T>, d: &DVector<f64>) -> DMatrix<T> {
    let mut out = m.clone();
    for (i, mut row) in out.row_iter_mut().enumerate() {
        for v in row.iter_mut() {
            *v *= T::of(d[i]);
        }
    }
    out
}

fn component_mul<T: RegScalar>(v: &DVector<T>, d: &DVector<f64>) -> DVector<T> {
    DVector::from_iterator(v.len(), v.iter().zip(d.iter()).map(|(x, &s)| *x * T::of(s)))
}

/// Log marginal likelihood of the data under prior precisions `alpha`.
pub fn log_marginal_likelihood<T: RegScalar>(
    data: &RegressionData<T>,
    alpha: &[f64],
) -> Result<f64> {
    let (mu, _) = posterior(data, alpha)?;
    log_ml_with_posterior(data, alpha, &mu)
}

fn log_ml_with_posterior<T: RegScalar>(
    data: &RegressionData<T>,
    alpha: &[f64],
    mu: &DVector<T>,
) -> Result<f64> {
    let bphi = scale_rows(&data.phi, &data.precisions);
    let mut gram = data.phi.ad_mul(&bphi);
    for (i, &a) in alpha.iter().enumerate() {
        gram[(i, i)] += T::of(a);
    }
    let chol = cholesky_with_jitter(gram)?;
    // log det Sigma = -log det (Phi^H B Phi + A)
    let logdet_sigma_inv: f64 = 2.0 * chol.l().diagonal().iter().map(|d| d.modulus().ln()).sum::<f64>();
    let logdet_a: f64 = alpha.iter().map(|a| a.ln()).sum();
    let logdet_2pib_inv: f64 = data
        .precisions
        .iter()
        .map(|&b| (2.0 * std::f64::consts::PI / b).ln())
        .sum();
    let ybyy: f64 = data
        .y
        .iter()
        .zip(data.precisions.iter())
        .map(|(y, &b)| y.modulus_squared() * b)
        .sum();
    // mu^H Sigma^-1 mu = mu^H Phi^H B y
    let rhs = data.phi.ad_mul(&component_mul(&data.y, &data.precisions));
    let quad: f64 = mu
        .iter()
        .zip(rhs.iter())
        .map(|(m, r)| (m.conjugate() * *r).real())
        .sum();
    Ok(T::LOG_ML_PREFACTOR * (logdet_a - logdet_2pib_inv - logdet_sigma_inv - ybyy + quad))
}

// ---------------------------------------------------------------------------
// Sparsity and noise hyperparameter updates
// ---------------------------------------------------------------------------

/// One synchronized dense update of all active prior precisions:
/// `alpha_i <- (1 - alpha_i Sigma_ii) / |mu_i|^2`.
pub fn update_alpha_per_feature<T: RegScalar>(
    alpha: &[f64],
    mu: &DVector<T>,
    sigma: &DMatrix<T>,
) -> Vec<f64> {
    alpha
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let msq = mu[i].modulus_squared();
            if msq <= 0.0 {
                PRUNE_THRESHOLD
            } else {
                let gamma = 1.0 - a * sigma[(i, i)].real();
                (gamma / msq).clamp(1e-12, PRUNE_THRESHOLD)
            }
        })
        .collect()
}

/// Shared-alpha variant used by the sweeping fits:
/// `alpha <- sum_i (1 - alpha Sigma_ii) / |mu|^2`.
pub fn update_alpha_shared<T: RegScalar>(alpha: f64, mu: &DVector<T>, sigma: &DMatrix<T>) -> f64 {
    let msq: f64 = mu.iter().map(|m| m.modulus_squared()).sum();
    if msq <= 0.0 {
        return PRUNE_THRESHOLD;
    }
    let gamma: f64 = (0..mu.len()).map(|i| 1.0 - alpha * sigma[(i, i)].real()).sum();
    (gamma / msq).clamp(1e-12, PRUNE_THRESHOLD)
}

/// Homoscedastic noise-precision update
/// `beta <- (N - tr(1 - A Sigma)) / |y - Phi mu|^2`, capped at 1e12 for
/// vanishing residuals.
pub fn update_beta_homoscedastic<T: RegScalar>(
    data: &RegressionData<T>,
    alpha: &[f64],
    mu: &DVector<T>,
    sigma: &DMatrix<T>,
) -> f64 {
    let n = data.num_points() as f64;
    let gamma: f64 = alpha
        .iter()
        .enumerate()
        .map(|(i, &a)| 1.0 - a * sigma[(i, i)].real())
        .sum();
    let resid = &data.y - &data.phi * mu;
    let rss: f64 = resid.iter().map(|r| r.modulus_squared()).sum();
    if rss <= 0.0 || !(n - gamma).is_finite() {
        return 1e12;
    }
    ((n - gamma) / rss).clamp(1e-12, 1e12)
}

/// Derivative of the log marginal likelihood with respect to the log-space
/// noise scale `sigma_tilde^2`, with `B'_ii = -B_ii^2 / (r_i + sigma_tilde^2)`.
pub fn log_ml_noise_gradient<T: RegScalar>(
    data: &RegressionData<T>,
    mu: &DVector<T>,
    sigma: &DMatrix<T>,
    ref_amp_sq: &[f64],
    sigma_tilde_sq: f64,
) -> f64 {
    let pred = &data.phi * mu;
    let mut acc = 0.0;
    for n in 0..data.num_points() {
        let b = data.precisions[n];
        let bprime = -b * b / (ref_amp_sq[n] + sigma_tilde_sq);
        // (Phi Sigma Phi^H)_nn
        let row = data.phi.row(n);
        let mut smoother = 0.0;
        for a in 0..mu.len() {
            let mut t = T::of(0.0);
            for c in 0..mu.len() {
                t += sigma[(a, c)] * row[c].conjugate();
            }
            smoother += (row[a] * t).real();
        }
        let resid = (data.y[n] - pred[n]).modulus_squared();
        acc += bprime * (1.0 / b - smoother - resid);
    }
    T::LOG_ML_PREFACTOR * acc
}

/// One capped gradient-ascent update of `sigma_tilde^2` in log space.
pub fn noise_grad_step(sigma_tilde_sq: f64, grad: f64, eta: f64, cap: f64) -> f64 {
    (sigma_tilde_sq.ln() + eta * grad * sigma_tilde_sq).exp().min(cap)
}

// ---------------------------------------------------------------------------
// Fast sequential RVM
// ---------------------------------------------------------------------------

/// Action applied in one fast-RVM iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RvmAction {
    Add,
    Reestimate,
    Delete,
}

/// One line of the fit trace.
#[derive(Clone, Debug)]
pub struct FitRecord {
    pub iteration: usize,
    pub action: RvmAction,
    pub feature: usize,
    pub log_ml: f64,
    pub active_count: usize,
}

/// Result of a sparse Bayesian fit.
#[derive(Clone)]
pub struct PosteriorFit<T: RegScalar> {
    /// Indices of active features, ascending.
    pub active: Vec<usize>,
    /// Posterior mean over the active features (same order as `active`).
    pub mu: DVector<T>,
    /// Posterior covariance over the active features.
    pub sigma: DMatrix<T>,
    /// Per-feature prior precisions; pruned features hold `f64::INFINITY`.
    pub alpha: Vec<f64>,
    pub log_ml: f64,
    pub converged: bool,
    pub trace: Vec<FitRecord>,
    /// Noise precisions the fit was performed with.
    pub precisions: Vec<f64>,
}

impl<T: RegScalar> PosteriorFit<T> {
    /// Weights over the full feature set, zeros at pruned features.
    pub fn full_weights(&self, num_features: usize) -> Vec<T> {
        let mut w = vec![T::of(0.0); num_features];
        for (k, &i) in self.active.iter().enumerate() {
            w[i] = self.mu[k];
        }
        w
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RvmOptions {
    /// Maximum iterations; default 10x the number of candidate features.
    pub max_iters: Option<usize>,
    /// Stop when the best marginal-likelihood gain drops below this.
    pub tol: f64,
    /// ... and no active alpha would move by more than this in log space.
    pub alpha_tol: f64,
}

impl Default for RvmOptions {
    fn default() -> Self {
        RvmOptions { max_iters: None, tol: 1e-6, alpha_tol: 1e-3 }
    }
}

/// Marginal-likelihood contribution of a single feature with precision
/// `alpha` given its sparsity and quality factors.
fn ml_contribution<T: RegScalar>(alpha: f64, s: f64, q_sq: f64) -> f64 {
    T::LOG_ML_PREFACTOR * (alpha.ln() - (alpha + s).ln() + q_sq / (alpha + s))
}

/// Fast sequential relevance vector machine.
///
/// Starts from the candidate with the largest normalized projection onto the
/// targets and then adds, re-estimates or deletes one feature per iteration,
/// always applying the action with the largest marginal-likelihood gain.
pub fn rvm_fast_fit<T: RegScalar>(
    data: &RegressionData<T>,
    options: &RvmOptions,
) -> Result<PosteriorFit<T>> {
    let n = data.num_points();
    let f = data.num_features();
    if f == 0 {
        return Err(Error::invalid("no candidate features"));
    }
    let max_iters = options.max_iters.unwrap_or(10 * f.max(10));

    let bphi = scale_rows(&data.phi, &data.precisions);
    // g[i] = phi_i^H B phi_i, t[i] = phi_i^H B y
    let g: Vec<f64> = (0..f)
        .map(|i| {
            data.phi
                .column(i)
                .iter()
                .zip(bphi.column(i).iter())
                .map(|(a, b)| (a.conjugate() * *b).real())
                .sum()
        })
        .collect();
    let by = component_mul(&data.y, &data.precisions);
    let t: Vec<T> = (0..f).map(|i| data.phi.column(i).dotc(&by)).collect();
    let _ = n;

    let mut alpha = vec![f64::INFINITY; f];
    let mut active: Vec<usize> = Vec::new();
    let mut trace = Vec::new();

    // Seed with the largest normalized projection |t_i|^2 / g_i whose
    // quality exceeds its sparsity factor.
    let mut seed: Option<usize> = None;
    let mut best_proj = 0.0;
    for i in 0..f {
        if g[i] <= 0.0 {
            continue;
        }
        let proj = t[i].modulus_squared() / g[i];
        if t[i].modulus_squared() > g[i] && proj > best_proj {
            best_proj = proj;
            seed = Some(i);
        }
    }
    let empty_fit = |trace: Vec<FitRecord>, converged| -> Result<PosteriorFit<T>> {
        let logdet_2pib_inv: f64 = data
            .precisions
            .iter()
            .map(|&b| (2.0 * std::f64::consts::PI / b).ln())
            .sum();
        let ybyy: f64 =
            data.y.iter().zip(data.precisions.iter()).map(|(y, &b)| y.modulus_squared() * b).sum();
        Ok(PosteriorFit {
            active: Vec::new(),
            mu: DVector::from_vec(vec![]),
            sigma: DMatrix::from_vec(0, 0, vec![]),
            alpha: vec![f64::INFINITY; f],
            log_ml: T::LOG_ML_PREFACTOR * (-logdet_2pib_inv - ybyy),
            converged,
            trace,
            precisions: data.precisions.iter().copied().collect(),
        })
    };
    let Some(seed) = seed else {
        return empty_fit(trace, true);
    };
    let s0 = g[seed];
    let q0 = t[seed].modulus_squared();
    alpha[seed] = (s0 * s0 / (q0 - s0)).clamp(1e-12, PRUNE_THRESHOLD);
    active.push(seed);

    // K[:, a] = Phi^H B phi_active_a restricted to all candidates
    let mut k_cols: Vec<DVector<T>> = vec![data.phi.ad_mul(&bphi.column(seed).clone_owned())];

    let mut last_log_ml = f64::NEG_INFINITY;
    let mut converged = false;
    for iteration in 0..max_iters {
        let a_count = active.len();
        // Active-set posterior.
        let mut gram = DMatrix::from_fn(a_count, a_count, |r, c| k_cols[c][active[r]]);
        for (r, &i) in active.iter().enumerate() {
            gram[(r, r)] += T::of(alpha[i]);
        }
        let chol = cholesky_with_jitter(gram)?;
        let sigma = chol.inverse();
        let t_active = DVector::from_iterator(a_count, active.iter().map(|&i| t[i]));
        let mu = &sigma * &t_active;

        // Current full-model log marginal likelihood.
        let log_ml = {
            let phi_a = DMatrix::from_fn(data.num_points(), a_count, |r, c| {
                data.phi[(r, active[c])]
            });
            let sub = RegressionData {
                phi: phi_a,
                y: data.y.clone(),
                precisions: data.precisions.clone(),
            };
            let alphas: Vec<f64> = active.iter().map(|&i| alpha[i]).collect();
            log_ml_with_posterior(&sub, &alphas, &mu)?
        };
        debug_assert!(
            log_ml >= last_log_ml - 1e-9 * (1.0 + log_ml.abs()),
            "log marginal likelihood decreased: {last_log_ml} -> {log_ml}"
        );
        last_log_ml = log_ml;

        // Sparsity and quality factors for every candidate.
        let kmat = DMatrix::from_fn(f, a_count, |r, c| k_cols[c][r]);
        let ks = &kmat * &sigma; // F x A
        let kmu = &kmat * &mu; // F
        let mut best: Option<(f64, usize, RvmAction, f64)> = None; // (gain, i, action, alpha_new)
        let mut max_dlnalpha = 0.0f64;
        let mut best_realpha: Option<(f64, usize, f64)> = None; // (|dln|, i, alpha_new)
        for i in 0..f {
            let mut ss = 0.0;
            for a in 0..a_count {
                ss += (ks[(i, a)] * kmat[(i, a)].conjugate()).real();
            }
            let s_cap = (g[i] - ss).max(0.0);
            let q_cap = t[i] - kmu[i];
            let (s_i, q_sq) = if alpha[i].is_finite() {
                let denom = alpha[i] - s_cap;
                if denom.abs() < 1e-12 * alpha[i] {
                    continue;
                }
                let s_i = alpha[i] * s_cap / denom;
                let q_i_sq = (alpha[i] / denom) * (alpha[i] / denom) * q_cap.modulus_squared();
                (s_i, q_i_sq)
            } else {
                (s_cap, q_cap.modulus_squared())
            };
            if s_i <= 0.0 {
                continue;
            }
            let theta = q_sq - s_i;
            if alpha[i].is_finite() {
                if theta > 0.0 {
                    let alpha_new = (s_i * s_i / theta).clamp(1e-12, PRUNE_THRESHOLD);
                    let gain = ml_contribution::<T>(alpha_new, s_i, q_sq)
                        - ml_contribution::<T>(alpha[i], s_i, q_sq);
                    let dln = (alpha_new.ln() - alpha[i].ln()).abs();
                    max_dlnalpha = max_dlnalpha.max(dln);
                    if best_realpha.map_or(true, |(d, _, _)| dln > d) {
                        best_realpha = Some((dln, i, alpha_new));
                    }
                    if best.map_or(true, |(g0, ..)| gain > g0) {
                        best = Some((gain, i, RvmAction::Reestimate, alpha_new));
                    }
                } else if active.len() > 1 {
                    let gain = -ml_contribution::<T>(alpha[i], s_i, q_sq);
                    if best.map_or(true, |(g0, ..)| gain > g0) {
                        best = Some((gain, i, RvmAction::Delete, f64::INFINITY));
                    }
                }
            } else if theta > 0.0 {
                let alpha_new = (s_i * s_i / theta).clamp(1e-12, PRUNE_THRESHOLD);
                let gain = ml_contribution::<T>(alpha_new, s_i, q_sq);
                if best.map_or(true, |(g0, ..)| gain > g0) {
                    best = Some((gain, i, RvmAction::Add, alpha_new));
                }
            }
        }

        let Some((gain, feat, mut action, alpha_new)) = best else {
            converged = true;
            trace.push(FitRecord {
                iteration,
                action: RvmAction::Reestimate,
                feature: active[0],
                log_ml,
                active_count: active.len(),
            });
            break;
        };
        let (gain, feat, alpha_new) = if gain < options.tol {
            if max_dlnalpha < options.alpha_tol {
                converged = true;
                break;
            }
            // keep tightening the dominant alpha until it settles
            let (_, i, a_new) = best_realpha.expect("max_dlnalpha > 0 implies a re-estimate");
            action = RvmAction::Reestimate;
            (gain, i, a_new)
        } else {
            (gain, feat, alpha_new)
        };
        let _ = gain;

        match action {
            RvmAction::Add => {
                alpha[feat] = alpha_new;
                active.push(feat);
                active.sort_unstable();
                let pos = active.iter().position(|&i| i == feat).unwrap();
                k_cols.insert(pos, data.phi.ad_mul(&bphi.column(feat).clone_owned()));
            }
            RvmAction::Reestimate => {
                alpha[feat] = alpha_new;
            }
            RvmAction::Delete => {
                alpha[feat] = f64::INFINITY;
                let pos = active.iter().position(|&i| i == feat).unwrap();
                active.remove(pos);
                k_cols.remove(pos);
            }
        }
        trace.push(FitRecord {
            iteration,
            action,
            feature: feat,
            log_ml,
            active_count: active.len(),
        });
    }

    if active.is_empty() {
        return empty_fit(trace, converged);
    }

    // Final posterior on the converged active set.
    let a_count = active.len();
    let phi_a =
        DMatrix::from_fn(data.num_points(), a_count, |r, c| data.phi[(r, active[c])]);
    let sub =
        RegressionData { phi: phi_a, y: data.y.clone(), precisions: data.precisions.clone() };
    let alphas: Vec<f64> = active.iter().map(|&i| alpha[i]).collect();
    let (mu, sigma) = posterior(&sub, &alphas)?;
    let log_ml = log_ml_with_posterior(&sub, &alphas, &mu)?;
    Ok(PosteriorFit {
        active,
        mu,
        sigma,
        alpha,
        log_ml,
        converged,
        trace,
        precisions: data.precisions.iter().copied().collect(),
    })
}

// ---------------------------------------------------------------------------
// Hyperparameter grid search
// ---------------------------------------------------------------------------

/// Exhaustive search over `(theta, gamma, sigma_tilde^2)` grids, maximizing
/// the fit closure's returned log marginal likelihood. Ties break toward
/// larger theta, then larger gamma.
pub fn hyperparameter_grid_search<F>(
    thetas: &[f64],
    gammas: &[f64],
    noise_levels: &[f64],
    mut fit: F,
) -> Result<(f64, f64, f64, f64)>
where
    F: FnMut(f64, f64, f64) -> Result<f64>,
{
    if thetas.is_empty() || gammas.is_empty() || noise_levels.is_empty() {
        return Err(Error::invalid("hyperparameter grids must be nonempty"));
    }
    let mut best: Option<(f64, f64, f64, f64)> = None;
    for &s in noise_levels {
        for &th in thetas {
            for &ga in gammas {
                let ml = fit(th, ga, s)?;
                let better = match best {
                    None => true,
                    Some((b_ml, b_th, b_ga, _)) => {
                        ml > b_ml
                            || (ml == b_ml && (th > b_th || (th == b_th && ga > b_ga)))
                    }
                };
                if better {
                    best = Some((ml, th, ga, s));
                }
            }
        }
    }
    let (ml, th, ga, s) = best.expect("grids nonempty");
    Ok((th, ga, s, ml))
}
