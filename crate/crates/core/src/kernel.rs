//! Classical Gaussian process states: plaquette, p-body and exponential
//! kernels, kernel symmetrization, amplitude evaluation and feature-matrix
//! construction for the Bayesian fits. Kernels may be range-restricted to a
//! graph-distance radius around the reference site, which also enables
//! evaluation across lattices of different size.

use crate::config::{apply_symmetry, BasisConfig, Boundary, Lattice, SymmetryGroup};
use crate::error::{Error, Result};
use crate::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Kernel family and hyperparameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum KernelVariant {
    /// Product of per-site deltas over an explicit site set.
    Plaquette { sites: Vec<usize> },
    /// Correlations of up to `p` sites, weighted by `theta` (order weighting)
    /// and `gamma` (distance-decay exponent). `p = 1` is the bare
    /// reference-site delta.
    PBody { p: u32, theta: f64, gamma: f64 },
    /// The p -> infinity limit: delta at the reference site times
    /// `exp(-h / theta)` with the distance-weighted Hamming distance `h`.
    Exponential { theta: f64, gamma: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelSpec {
    pub variant: KernelVariant,
    pub ref_site: usize,
    /// Graph-distance radius restricting the site sum; `None` sums over the
    /// whole lattice and requires equal lattices on both sides.
    pub range_cutoff: Option<u32>,
}

impl KernelSpec {
    pub fn exponential(theta: f64, gamma: f64) -> Result<Self> {
        if theta <= 0.0 || !theta.is_finite() {
            return Err(Error::invalid("exponential kernel requires theta > 0"));
        }
        if !gamma.is_finite() {
            return Err(Error::invalid("gamma must be finite"));
        }
        Ok(KernelSpec {
            variant: KernelVariant::Exponential { theta, gamma },
            ref_site: 0,
            range_cutoff: None,
        })
    }

    pub fn p_body(p: u32, theta: f64, gamma: f64) -> Result<Self> {
        if p < 1 {
            return Err(Error::invalid("p must be at least 1"));
        }
        if theta < 0.0 || !theta.is_finite() || !gamma.is_finite() {
            return Err(Error::invalid("p-body kernel requires theta >= 0 and finite gamma"));
        }
        Ok(KernelSpec {
            variant: KernelVariant::PBody { p, theta, gamma },
            ref_site: 0,
            range_cutoff: None,
        })
    }

    pub fn plaquette(sites: Vec<usize>, ref_site: usize) -> Result<Self> {
        if !sites.contains(&ref_site) {
            return Err(Error::invalid("plaquette site set must contain the reference site"));
        }
        Ok(KernelSpec { variant: KernelVariant::Plaquette { sites }, ref_site, range_cutoff: None })
    }

    pub fn with_ref_site(mut self, r0: usize) -> Self {
        self.ref_site = r0;
        self
    }

    pub fn with_cutoff(mut self, radius: u32) -> Self {
        self.range_cutoff = Some(radius);
        self
    }

    fn gamma(&self) -> f64 {
        match self.variant {
            KernelVariant::PBody { gamma, .. } | KernelVariant::Exponential { gamma, .. } => gamma,
            KernelVariant::Plaquette { .. } => 0.0,
        }
    }
}

/// Signed minimal-image displacement of `site` relative to `origin`.
fn displacement(lattice: &Lattice, origin: usize, site: usize) -> (isize, isize) {
    let (r0, c0) = lattice.coords(origin);
    let (r, c) = lattice.coords(site);
    let mut d = [r as isize - r0 as isize, c as isize - c0 as isize];
    for (axis, delta) in d.iter_mut().enumerate() {
        let ext = lattice.dims[axis] as isize;
        if lattice.boundary[axis].wraps() {
            if *delta > ext / 2 {
                *delta -= ext;
            } else if *delta < -(ext - 1) / 2 {
                *delta += ext;
            }
        }
    }
    (d[0], d[1])
}

/// Precomputed site pairing for kernel evaluation between a test lattice and
/// a support lattice: for each non-reference plaquette site, the site index
/// on either side and the distance weight `f = dist^gamma`.
pub struct KernelPlan {
    pub ref_x: usize,
    pub ref_xp: usize,
    /// (site in x, site in x', 1 / f(dist))
    pub pairs: Vec<(usize, usize, f64)>,
    /// 1 / N normalization base for the p-body kernel: theta + sum_i 1/f_i
    inv_f_sum: f64,
}

impl KernelPlan {
    pub fn build(spec: &KernelSpec, lat_x: &Lattice, lat_xp: &Lattice) -> Result<KernelPlan> {
        let gamma = spec.gamma();
        let r0 = spec.ref_site;
        if r0 >= lat_x.num_sites() || r0 >= lat_xp.num_sites() {
            return Err(Error::invalid("reference site outside lattice"));
        }
        let mut pairs = Vec::new();
        match spec.range_cutoff {
            None => {
                if lat_x.dims != lat_xp.dims || lat_x.boundary != lat_xp.boundary {
                    return Err(Error::invalid(
                        "full-range kernels require equal lattices on both sides",
                    ));
                }
                if let KernelVariant::Plaquette { sites } = &spec.variant {
                    for &s in sites {
                        if s >= lat_x.num_sites() {
                            return Err(Error::invalid("plaquette site outside lattice"));
                        }
                        if s != r0 {
                            pairs.push((s, s, 1.0));
                        }
                    }
                } else {
                    for s in 0..lat_x.num_sites() {
                        if s != r0 {
                            let dist = lat_x.distance(r0, s) as f64;
                            pairs.push((s, s, dist.powf(gamma).recip()));
                        }
                    }
                }
            }
            Some(radius) => {
                let side = |lat: &Lattice| -> Vec<((isize, isize), usize, u32)> {
                    let mut v: Vec<_> = (0..lat.num_sites())
                        .filter_map(|s| {
                            let d = lat.distance(r0, s);
                            (d > 0 && d <= radius)
                                .then(|| (displacement(lat, r0, s), s, d))
                        })
                        .collect();
                    v.sort();
                    v
                };
                let a = side(lat_x);
                let b = side(lat_xp);
                if a.len() != b.len()
                    || a.iter().zip(&b).any(|(x, y)| x.0 != y.0 || x.2 != y.2)
                {
                    return Err(Error::invalid(
                        "lattices do not share the cutoff plaquette around the reference site",
                    ));
                }
                for ((_, sx, d), (_, sxp, _)) in a.into_iter().zip(b) {
                    pairs.push((sx, sxp, (d as f64).powf(gamma).recip()));
                }
            }
        }
        let inv_f_sum = pairs.iter().map(|p| p.2).sum();
        Ok(KernelPlan { ref_x: r0, ref_xp: r0, pairs, inv_f_sum })
    }

    /// Evaluate the kernel for a prepared plan.
    pub fn eval(&self, spec: &KernelSpec, x: &[u8], xp: &[u8]) -> f64 {
        if x[self.ref_x] != xp[self.ref_xp] {
            return 0.0;
        }
        match &spec.variant {
            KernelVariant::Plaquette { .. } => {
                for &(sx, sxp, _) in &self.pairs {
                    if x[sx] != xp[sxp] {
                        return 0.0;
                    }
                }
                1.0
            }
            KernelVariant::PBody { p, theta, .. } => {
                if *p == 1 || self.pairs.is_empty() {
                    return 1.0;
                }
                let pm1 = (*p - 1) as f64;
                let mut acc = 0.0;
                for &(sx, sxp, invf) in &self.pairs {
                    if x[sx] == xp[sxp] {
                        acc += invf;
                    }
                }
                ((theta + acc / pm1) / (theta + self.inv_f_sum / pm1)).powi(*p as i32 - 1)
            }
            KernelVariant::Exponential { theta, .. } => {
                let mut h = 0.0;
                for &(sx, sxp, invf) in &self.pairs {
                    if x[sx] != xp[sxp] {
                        h += invf;
                    }
                }
                (-h / theta).exp()
            }
        }
    }
}

/// Kernel value between configurations on (possibly different) lattices.
pub fn kernel_value(
    spec: &KernelSpec,
    lat_x: &Lattice,
    x: &BasisConfig,
    lat_xp: &Lattice,
    xp: &BasisConfig,
) -> Result<f64> {
    if x.len() != lat_x.num_sites() || xp.len() != lat_xp.num_sites() {
        return Err(Error::invalid("configuration length does not match its lattice"));
    }
    let plan = KernelPlan::build(spec, lat_x, lat_xp)?;
    Ok(plan.eval(spec, &x.0, &xp.0))
}

/// Symmetrized kernel `sum_S k(S[x], x')` with both configurations on the
/// same lattice.
pub fn symmetrized_kernel(
    spec: &KernelSpec,
    group: &SymmetryGroup,
    lattice: &Lattice,
    x: &BasisConfig,
    xp: &BasisConfig,
) -> Result<f64> {
    let plan = KernelPlan::build(spec, lattice, lattice)?;
    let mut acc = 0.0;
    for op in &group.ops {
        let sx = apply_symmetry(op, x)?;
        acc += plan.eval(spec, &sx.0, &xp.0);
    }
    Ok(acc)
}

/// A classical GPS: kernel, weighted support configurations, symmetry group
/// and the lattice the support configurations live on.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GPSModel {
    pub kernel: KernelSpec,
    pub supports: Vec<BasisConfig>,
    pub weights: Vec<C64>,
    pub group: SymmetryGroup,
    pub dims: [usize; 2],
    pub boundary: [Boundary; 2],
}

impl GPSModel {
    pub fn new(
        kernel: KernelSpec,
        supports: Vec<BasisConfig>,
        weights: Vec<C64>,
        group: SymmetryGroup,
        lattice: &Lattice,
    ) -> Result<Self> {
        if supports.len() != weights.len() {
            return Err(Error::invalid("support and weight counts differ"));
        }
        if supports.iter().any(|s| s.len() != lattice.num_sites()) {
            return Err(Error::invalid("support configuration length does not match lattice"));
        }
        Ok(GPSModel {
            kernel,
            supports,
            weights,
            group,
            dims: lattice.dims,
            boundary: lattice.boundary,
        })
    }

    pub fn support_lattice(&self) -> Lattice {
        Lattice::rectangle(self.dims, self.boundary).expect("stored lattice is valid")
    }

    pub fn support_dim(&self) -> usize {
        self.supports.len()
    }

    /// Log amplitude `omega(x) = sum_i w_i sum_S k(S[x], x'_i)` for a test
    /// configuration on `lat_x` (usually the support lattice itself).
    pub fn log_amplitude_on(&self, lat_x: &Lattice, x: &BasisConfig) -> Result<C64> {
        let support_lat = self.support_lattice();
        let plan = KernelPlan::build(&self.kernel, lat_x, &support_lat)?;
        let mut acc = C64::new(0.0, 0.0);
        for op in &self.group.ops {
            let sx = apply_symmetry(op, x)?;
            for (w, xp) in self.weights.iter().zip(&self.supports) {
                acc += w * plan.eval(&self.kernel, &sx.0, &xp.0);
            }
        }
        Ok(acc)
    }

    pub fn log_amplitude(&self, x: &BasisConfig) -> Result<C64> {
        self.log_amplitude_on(&self.support_lattice(), x)
    }

    pub fn amplitude(&self, x: &BasisConfig) -> Result<C64> {
        Ok(self.log_amplitude(x)?.exp())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&VersionedGps { format: GPS_FORMAT_VERSION, model: self })
            .expect("GPS model serializes")
    }

    pub fn from_json(text: &str) -> Result<GPSModel> {
        let v: VersionedGpsOwned = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: 0, msg: format!("GPS model: {e}") })?;
        if v.format != GPS_FORMAT_VERSION {
            return Err(Error::invalid(format!("unsupported GPS model format {}", v.format)));
        }
        Ok(v.model)
    }
}

const GPS_FORMAT_VERSION: u32 = 1;

#[derive(Serialize)]
struct VersionedGps<'a> {
    format: u32,
    model: &'a GPSModel,
}

#[derive(Deserialize)]
struct VersionedGpsOwned {
    format: u32,
    model: GPSModel,
}

/// Design matrix `Phi[n][m] = sum_S k(S[x_n], x'_m)`.
///
/// Rows follow `data` order, columns follow `supports` order. Row blocks are
/// evaluated in parallel and assembled in deterministic order.
pub fn feature_matrix(
    spec: &KernelSpec,
    group: &SymmetryGroup,
    lattice: &Lattice,
    supports: &[BasisConfig],
    data: &[BasisConfig],
) -> Result<Vec<Vec<f64>>> {
    let plan = KernelPlan::build(spec, lattice, lattice)?;
    data.par_iter()
        .map(|x| {
            let mut row = vec![0.0; supports.len()];
            for op in &group.ops {
                let sx = apply_symmetry(op, x)?;
                for (m, xp) in supports.iter().enumerate() {
                    row[m] += plan.eval(spec, &sx.0, &xp.0);
                }
            }
            Ok(row)
        })
        .collect()
}
