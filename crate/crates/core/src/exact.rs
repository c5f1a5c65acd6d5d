//! Exact diagonalization and full-state utilities.
//!
//! Ground states are found either by a dense symmetric eigensolve (small
//! sectors) or by restarted Lanczos with full reorthogonalization on the
//! sparse sector matrix. Overlap, mean squared error and exact Rayleigh
//! quotients provide the ground truth for every stochastic estimator in the
//! crate.

use crate::config::{enumerate_sector, BasisConfig};
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::C64;
use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use std::collections::HashMap;
use std::io::Write;

/// Sector basis with the sparse Hamiltonian restricted to it (CSR layout).
pub struct SectorMatrix {
    pub basis: Vec<BasisConfig>,
    pub index: HashMap<BasisConfig, usize>,
    row_ptr: Vec<usize>,
    col: Vec<u32>,
    val: Vec<f64>,
}

impl SectorMatrix {
    pub fn build(ham: &dyn Hamiltonian) -> Result<Self> {
        let basis = enumerate_sector(ham.num_sites(), &ham.sector());
        Self::build_on_basis(ham, basis)
    }

    pub fn build_on_basis(ham: &dyn Hamiltonian, basis: Vec<BasisConfig>) -> Result<Self> {
        let index: HashMap<BasisConfig, usize> =
            basis.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut row_ptr = Vec::with_capacity(basis.len() + 1);
        let mut col = Vec::new();
        let mut val = Vec::new();
        row_ptr.push(0);
        for x in &basis {
            for e in ham.connected_elements(x)? {
                let j = *index.get(&e.target).ok_or_else(|| {
                    Error::invalid(format!("target {} outside enumerated sector", e.target))
                })?;
                col.push(j as u32);
                val.push(e.amplitude);
            }
            row_ptr.push(col.len());
        }
        Ok(SectorMatrix { basis, index, row_ptr, col, val })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matvec(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.val[k] * v[self.col[k] as usize];
            }
            *o = acc;
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.col[k] as usize)] += self.val[k];
            }
        }
        m
    }
}

/// A state with explicit amplitudes on a sector basis.
#[derive(Clone)]
pub struct FullState {
    pub basis: Vec<BasisConfig>,
    pub amplitudes: Vec<C64>,
    pub energy: Option<f64>,
    index: HashMap<BasisConfig, usize>,
}

impl FullState {
    pub fn new(basis: Vec<BasisConfig>, amplitudes: Vec<C64>, energy: Option<f64>) -> Result<Self> {
        if basis.len() != amplitudes.len() {
            return Err(Error::invalid("basis and amplitude lengths differ"));
        }
        if !amplitudes.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::Numerical("non-finite amplitude in full state".into()));
        }
        if amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() <= 0.0 {
            return Err(Error::Numerical("zero-norm state".into()));
        }
        let index = basis.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(FullState { basis, amplitudes, energy, index })
    }

    pub fn amplitude(&self, x: &BasisConfig) -> C64 {
        self.index.get(x).map_or(C64::new(0.0, 0.0), |&i| self.amplitudes[i])
    }

    pub fn index_of(&self, x: &BasisConfig) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Columnar text export: `config  re  im` per line.
    pub fn write_columnar(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "# config re im")?;
        for (x, a) in self.basis.iter().zip(&self.amplitudes) {
            writeln!(w, "{x} {:.17e} {:.17e}", a.re, a.im)?;
        }
        Ok(())
    }
}

/// Eigensolver configuration.
#[derive(Clone, Copy, Debug)]
pub struct EdOptions {
    pub dense_cap: usize,
    pub iterative_cap: usize,
    /// Force the dense path (still subject to `dense_cap`).
    pub force_dense: bool,
    /// Residual tolerance on the normalized eigenvector.
    pub tol: f64,
    pub max_matvecs: usize,
    pub seed: u64,
}

impl Default for EdOptions {
    fn default() -> Self {
        EdOptions {
            dense_cap: 20_000,
            iterative_cap: 5_000_000,
            force_dense: false,
            tol: 1e-9,
            max_matvecs: 200_000,
            seed: 1,
        }
    }
}

/// Lowest eigenpair of the sector-restricted Hamiltonian.
pub fn ground_state(ham: &dyn Hamiltonian, opts: &EdOptions) -> Result<FullState> {
    let matrix = SectorMatrix::build(ham)?;
    ground_state_of_matrix(&matrix, opts)
}

pub fn ground_state_of_matrix(matrix: &SectorMatrix, opts: &EdOptions) -> Result<FullState> {
    let dim = matrix.dim();
    if dim == 0 {
        return Err(Error::invalid("empty sector"));
    }
    let use_dense = opts.force_dense || dim <= 400;
    if use_dense {
        if dim > opts.dense_cap {
            return Err(Error::DimensionCap { dim, cap: opts.dense_cap });
        }
        let (energy, vector) = dense_lowest(&matrix.to_dense());
        return finish_state(matrix, energy, vector, opts.tol);
    }
    if dim > opts.iterative_cap {
        return Err(Error::DimensionCap { dim, cap: opts.iterative_cap });
    }
    let (energy, vector) = lanczos_lowest(matrix, opts)?;
    finish_state(matrix, energy, vector, opts.tol)
}

fn finish_state(matrix: &SectorMatrix, energy: f64, v: Vec<f64>, tol: f64) -> Result<FullState> {
    let mut hv = vec![0.0; v.len()];
    matrix.matvec(&v, &mut hv);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let resid = hv
        .iter()
        .zip(&v)
        .map(|(h, x)| (h - energy * x) * (h - energy * x))
        .sum::<f64>()
        .sqrt()
        / norm;
    let scale = 1.0_f64.max(energy.abs());
    if resid > tol * scale * 10.0 {
        return Err(Error::Numerical(format!(
            "eigenpair residual {resid:.3e} exceeds tolerance"
        )));
    }
    let amps = v.iter().map(|&x| C64::new(x / norm, 0.0)).collect();
    FullState::new(matrix.basis.clone(), amps, Some(energy))
}

/// Lowest eigenpair of a dense symmetric matrix.
pub fn dense_lowest(m: &DMatrix<f64>) -> (f64, Vec<f64>) {
    let eig = m.clone().symmetric_eigen();
    let (mut best, mut best_val) = (0, f64::INFINITY);
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l < best_val {
            best_val = l;
            best = i;
        }
    }
    (best_val, eig.eigenvectors.column(best).iter().copied().collect())
}

/// Restarted Lanczos with full reorthogonalization and a seed-deterministic
/// start vector.
fn lanczos_lowest(matrix: &SectorMatrix, opts: &EdOptions) -> Result<(f64, Vec<f64>)> {
    let dim = matrix.dim();
    let block = 120.min(dim);
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    let mut v0 = DVector::from_fn(dim, |_, _| rng.random::<f64>() - 0.5);
    v0 /= v0.norm();

    let mut matvecs = 0usize;
    let mut scratch = vec![0.0; dim];
    loop {
        let mut basis: Vec<DVector<f64>> = vec![v0.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        for j in 0..block {
            let vj = basis[j].clone();
            matrix.matvec(vj.as_slice(), &mut scratch);
            matvecs += 1;
            let mut w = DVector::from_column_slice(&scratch);
            let alpha = vj.dot(&w);
            alphas.push(alpha);
            w -= &vj * alpha;
            if j > 0 {
                let prev = &basis[j - 1];
                w -= prev * betas[j - 1];
            }
            // full reorthogonalization, two passes
            for _ in 0..2 {
                for b in &basis {
                    let c = b.dot(&w);
                    w -= b * c;
                }
            }
            let beta = w.norm();
            if beta < 1e-13 || j + 1 == block {
                betas.push(beta);
                break;
            }
            betas.push(beta);
            basis.push(w / beta);
        }

        // Ritz problem on the tridiagonal matrix
        let m = alphas.len();
        let mut t = DMatrix::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alphas[i];
            if i + 1 < m {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let (theta, s) = dense_lowest(&t);
        let mut y = DVector::zeros(dim);
        for (i, b) in basis.iter().enumerate() {
            y += b * s[i];
        }
        y /= y.norm();

        matrix.matvec(y.as_slice(), &mut scratch);
        matvecs += 1;
        let hv = DVector::from_column_slice(&scratch);
        let resid = (&hv - &y * theta).norm();
        let scale = 1.0_f64.max(theta.abs());
        if resid <= opts.tol * scale {
            return Ok((theta, y.as_slice().to_vec()));
        }
        if matvecs >= opts.max_matvecs {
            return Err(Error::NonConvergence(matvecs));
        }
        v0 = y;
    }
}

/// Exact Rayleigh quotient `<psi|H|psi> / <psi|psi>` by full contraction over
/// the sector basis.
pub fn variational_energy_exact(
    ham: &dyn Hamiltonian,
    basis: &[BasisConfig],
    amplitudes: &[C64],
) -> Result<f64> {
    if basis.len() != amplitudes.len() {
        return Err(Error::invalid("basis and amplitude lengths differ"));
    }
    let index: HashMap<&BasisConfig, usize> =
        basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if norm <= 0.0 || !norm.is_finite() {
        return Err(Error::Numerical("zero-norm model".into()));
    }
    let mut acc = C64::new(0.0, 0.0);
    for (i, x) in basis.iter().enumerate() {
        for e in ham.connected_elements(x)? {
            let j = index[&e.target];
            acc += amplitudes[i].conj() * e.amplitude * amplitudes[j];
        }
    }
    Ok(acc.re / norm)
}

/// Normalized overlap `|<a|b>| / (||a|| ||b||)` in `[0, 1]`.
pub fn overlap(a: &[C64], b: &[C64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid("overlap between states of different dimension"));
    }
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    if na <= 0.0 || nb <= 0.0 {
        return Err(Error::Numerical("zero-norm state in overlap".into()));
    }
    let dot: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    Ok(dot.norm() / (na * nb).sqrt())
}

/// Result of [`mse`]: the error together with the rescaling that was applied.
#[derive(Clone, Copy, Debug)]
pub struct MseReport {
    pub mse: f64,
    /// False when a zero amplitude forced the fallback to norm-1 scaling.
    pub log_rescaled: bool,
}

/// Mean squared amplitude error between two states on the same basis.
///
/// Both states are first rescaled so their log amplitudes have zero mean
/// over the comparison set, then the global phase of `model` is aligned to
/// `target`. States containing exact zeros fall back to norm-1 scaling.
pub fn mse(model: &[C64], target: &[C64]) -> Result<MseReport> {
    if model.len() != target.len() || model.is_empty() {
        return Err(Error::invalid("mse requires two equal-length nonempty states"));
    }
    let log_rescaled = model.iter().chain(target).all(|a| a.norm() > 0.0);
    let rescale = |v: &[C64]| -> Vec<C64> {
        if log_rescaled {
            let mean: C64 =
                v.iter().map(|a| C64::new(a.norm().ln(), a.arg())).sum::<C64>() / v.len() as f64;
            let scale = (-mean).exp();
            v.iter().map(|a| a * scale).collect()
        } else {
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            v.iter().map(|a| a / norm).collect()
        }
    };
    let m = rescale(model);
    let t = rescale(target);
    let cross: C64 = m.iter().zip(&t).map(|(a, b)| a.conj() * b).sum();
    let phase = if cross.norm() > 0.0 { cross / cross.norm() } else { C64::new(1.0, 0.0) };
    let err: f64 =
        m.iter().zip(&t).map(|(a, b)| (a * phase - b).norm_sqr()).sum::<f64>() / m.len() as f64;
    Ok(MseReport { mse: err, log_rescaled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Boundary, Lattice, SectorSpec};
    use crate::hamiltonian::{parse_fcidump, hubbard_fcidump, HeisenbergSpec, HubbardSpec};
    use approx::assert_relative_eq;

    fn heisenberg_chain(l: usize, boundary: Boundary) -> HeisenbergSpec {
        let lat = Lattice::chain(l, boundary).unwrap();
        HeisenbergSpec::new(lat, 1.0, 0.0, l / 2, false).unwrap()
    }

    #[test]
    fn two_site_heisenberg_singlet() {
        let ham = heisenberg_chain(2, Boundary::Open);
        let gs = ground_state(&ham, &EdOptions::default()).unwrap();
        assert_relative_eq!(gs.energy.unwrap(), -0.75, epsilon = 1e-12);
        let a = gs.amplitude(&BasisConfig::new(vec![0, 1]));
        let b = gs.amplitude(&BasisConfig::new(vec![1, 0]));
        assert_relative_eq!(a.norm(), 1.0 / 2.0_f64.sqrt(), epsilon = 1e-10);
        assert_relative_eq!((a + b).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn two_site_hubbard_analytic() {
        let lat = Lattice::chain(2, Boundary::Open).unwrap();
        let ham = HubbardSpec::new(lat, 1.0, 8.0, 1, 1).unwrap();
        let gs = ground_state(&ham, &EdOptions::default()).unwrap();
        let expect = 4.0 - 20.0_f64.sqrt();
        assert_relative_eq!(gs.energy.unwrap(), expect, epsilon = 1e-10);
    }

    #[test]
    fn lanczos_matches_dense() {
        // 10-site chain, Sz = 0: 252 states, computed both ways
        let ham = heisenberg_chain(10, Boundary::Periodic);
        let matrix = SectorMatrix::build(&ham).unwrap();
        let dense = ground_state_of_matrix(
            &matrix,
            &EdOptions { force_dense: true, ..EdOptions::default() },
        )
        .unwrap();
        // force the Lanczos path by lowering the auto-dense threshold via a
        // direct call
        let (e_lanczos, _) = super::lanczos_lowest(&matrix, &EdOptions::default()).unwrap();
        assert_relative_eq!(dense.energy.unwrap(), e_lanczos, epsilon = 1e-8);

        // 12-site chain, Sz = 0: 924 states, auto path = Lanczos
        let ham = heisenberg_chain(12, Boundary::Periodic);
        let matrix = SectorMatrix::build(&ham).unwrap();
        let lcz = ground_state_of_matrix(&matrix, &EdOptions::default()).unwrap();
        let dns = ground_state_of_matrix(
            &matrix,
            &EdOptions { force_dense: true, ..EdOptions::default() },
        )
        .unwrap();
        assert_relative_eq!(lcz.energy.unwrap(), dns.energy.unwrap(), epsilon = 1e-8);
        assert_relative_eq!(
            overlap(&lcz.amplitudes, &dns.amplitudes).unwrap(),
            1.0,
            epsilon = 1e-7
        );
    }

    #[test]
    fn eigenvalue_invariant_under_basis_shuffle() {
        let ham = heisenberg_chain(8, Boundary::Periodic);
        let e1 = ground_state(&ham, &EdOptions::default()).unwrap().energy.unwrap();
        let mut basis = enumerate_sector(8, &ham.sector());
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        basis.shuffle(&mut rng);
        let matrix = SectorMatrix::build_on_basis(&ham, basis).unwrap();
        let e2 = ground_state_of_matrix(&matrix, &EdOptions::default()).unwrap().energy.unwrap();
        assert_relative_eq!(e1, e2, epsilon = 1e-8);
    }

    #[test]
    fn rayleigh_quotient_of_eigenvector_is_eigenvalue() {
        let ham = heisenberg_chain(8, Boundary::Periodic);
        let gs = ground_state(&ham, &EdOptions::default()).unwrap();
        let e = variational_energy_exact(&ham, &gs.basis, &gs.amplitudes).unwrap();
        assert_relative_eq!(e, gs.energy.unwrap(), epsilon = 1e-10);
    }

    #[test]
    fn uniform_state_on_two_site_heisenberg() {
        // Hand contraction over the full 4x4 space: H (1,1,1,1)^T =
        // (1/4, 1/4, 1/4, 1/4)^T, so the uniform state is a pure triplet
        // mixture with energy +1/4. Contract block-wise over the three
        // magnetization sectors.
        let basis = vec![
            BasisConfig::new(vec![0, 0]),
            BasisConfig::new(vec![0, 1]),
            BasisConfig::new(vec![1, 0]),
            BasisConfig::new(vec![1, 1]),
        ];
        let mut acc = 0.0;
        for (sub, n_up) in [(vec![0], 2), (vec![1, 2], 1), (vec![3], 0)] {
            let ham = HeisenbergSpec::new(
                Lattice::chain(2, Boundary::Open).unwrap(),
                1.0,
                0.0,
                n_up,
                false,
            )
            .unwrap();
            let b: Vec<_> = sub.iter().map(|&i: &usize| basis[i].clone()).collect();
            let amps = vec![C64::new(1.0, 0.0); b.len()];
            let e = variational_energy_exact(&ham, &b, &amps).unwrap();
            acc += e * b.len() as f64;
        }
        assert_relative_eq!(acc / 4.0, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn variational_bound_on_random_models() {
        let ham = heisenberg_chain(6, Boundary::Periodic);
        let gs = ground_state(&ham, &EdOptions::default()).unwrap();
        let e0 = gs.energy.unwrap();
        let basis = gs.basis.clone();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..100 {
            let amps: Vec<C64> = (0..basis.len())
                .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let e = variational_energy_exact(&ham, &basis, &amps).unwrap();
            assert!(e >= e0 - 1e-10, "variational bound violated: {e} < {e0}");
        }
    }

    #[test]
    fn overlap_basics() {
        let a = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let b = vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        assert_relative_eq!(overlap(&a, &a).unwrap(), 1.0);
        assert_relative_eq!(overlap(&a, &b).unwrap(), 0.0);
        let scaled: Vec<C64> = a.iter().map(|x| x * 7e3).collect();
        assert_relative_eq!(overlap(&a, &scaled).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn mse_basics() {
        let a = vec![C64::new(0.5, 0.0), C64::new(2.0, 0.0)];
        let r = mse(&a, &a).unwrap();
        assert!(r.log_rescaled);
        assert_relative_eq!(r.mse, 0.0, epsilon = 1e-14);

        let b: Vec<C64> = a.iter().map(|x| x * C64::new(0.0, -3.0)).collect();
        let r = mse(&b, &a).unwrap();
        assert_relative_eq!(r.mse, 0.0, epsilon = 1e-14);

        // zero amplitude triggers the norm-1 fallback
        let c = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let r = mse(&c, &c).unwrap();
        assert!(!r.log_rescaled);
        assert_relative_eq!(r.mse, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn hubbard_equivalent_fcidump_energy() {
        // 2-site Hubbard written as an FCIDUMP round-trips to the analytic
        // ground energy U/2 - sqrt((U/2)^2 + 4 t^2)
        let text = hubbard_fcidump(2, 1.0, 8.0, 1, 1, false);
        let spec = parse_fcidump(&text).unwrap();
        let gs = ground_state(&spec, &EdOptions::default()).unwrap();
        assert_relative_eq!(gs.energy.unwrap(), 4.0 - 20.0_f64.sqrt(), epsilon = 1e-9);

        // and agrees with the native Hubbard Hamiltonian on 4 sites
        let text = hubbard_fcidump(4, 1.0, 4.0, 2, 2, false);
        let spec = parse_fcidump(&text).unwrap();
        let lat = Lattice::chain(4, Boundary::Open).unwrap();
        let hub = HubbardSpec::new(lat, 1.0, 4.0, 2, 2).unwrap();
        let e_fci = ground_state(&spec, &EdOptions::default()).unwrap().energy.unwrap();
        let e_hub = ground_state(&hub, &EdOptions::default()).unwrap().energy.unwrap();
        assert_relative_eq!(e_fci, e_hub, epsilon = 1e-9);
    }

    #[test]
    fn sector_cap_is_enforced() {
        let ham = heisenberg_chain(8, Boundary::Periodic);
        let err = ground_state(
            &ham,
            &EdOptions { force_dense: true, dense_cap: 10, ..EdOptions::default() },
        );
        assert!(matches!(err, Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn full_state_export_format() {
        let basis =
            vec![BasisConfig::new(vec![0, 1]), BasisConfig::new(vec![1, 0])];
        let amps = vec![C64::new(0.5, 0.0), C64::new(-0.5, 0.25)];
        let st = FullState::new(basis, amps, None).unwrap();
        let mut buf = Vec::new();
        st.write_columnar(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# config re im");
        assert!(lines.next().unwrap().starts_with("01 5.0"));
    }

    #[test]
    fn sector_spec_reexport_paths() {
        // guards the SectorSpec helper used across modules
        let sec = SectorSpec::Fermion { n_up: 2, n_down: 1 };
        assert_eq!(sec.dimension(4), 24);
    }
}
