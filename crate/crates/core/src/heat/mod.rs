//! Continuous-time heat kernels of graph Dirichlet forms.
//!
//! The generator is `-M⁻¹(D - W)`; the kernel is taken with respect to the
//! vertex measure, so `P_t f(x) = Σ_y p_t(x, y) f(y) m(y)`.

mod chaining;
mod exit;
mod fit;
mod gasket;

pub use chaining::{chaining_lower_bound, chaining_scan, ChainingBound, ChainingScan, NearDiagonal};
pub use exit::{exit_time_walk_dimension, exit_times, ExitTimeReport};
pub use fit::{sub_gaussian_fit, FitConfig, SubGaussianFit};
pub use gasket::{sierpinski_gasket_graph, GasketGraph};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::epsilon_of_t_detail;
use crate::dirichlet::GraphDirichletForm;
use crate::error::{Error, Result};
use crate::scale::{PhiTransform, ScaleFunction};
use crate::space::FiniteMetricMeasureSpace;

#[derive(Clone, Debug)]
struct Block {
    vertices: Vec<usize>,
    eigenvalues: DVector<f64>,
    // columns: eigenvectors of M^{-1/2}(D-W)M^{-1/2} divided by sqrt(m)
    modes: DMatrix<f64>,
}

/// Spectral decomposition of a graph form, evaluated at any time on demand.
#[derive(Clone, Debug)]
pub struct HeatKernel {
    n: usize,
    measure: Vec<f64>,
    blocks: Vec<Block>,
}

impl HeatKernel {
    pub fn new(form: &GraphDirichletForm) -> Result<Self> {
        if form.is_empty() {
            return Err(Error::Domain("heat kernel of an empty graph".into()));
        }
        if !form.is_connected() {
            log::warn!(
                "graph has {} components; kernels vanish across components",
                form.n_components()
            );
        }
        let measure = form.measure().to_vec();
        let blocks = form
            .component_vertices()
            .into_par_iter()
            .map(|vertices| {
                let l = form.laplacian_block(&vertices);
                let s = DMatrix::from_fn(vertices.len(), vertices.len(), |i, j| {
                    l[(i, j)] / (measure[vertices[i]] * measure[vertices[j]]).sqrt()
                });
                let eig = s.symmetric_eigen();
                let mut modes = eig.eigenvectors;
                for (i, &v) in vertices.iter().enumerate() {
                    let scale = measure[v].sqrt().recip();
                    modes.row_mut(i).scale_mut(scale);
                }
                let eigenvalues = eig.eigenvalues.map(|l| l.max(0.0));
                Block {
                    vertices,
                    eigenvalues,
                    modes,
                }
            })
            .collect();
        Ok(Self {
            n: form.len(),
            measure,
            blocks,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    /// Eigenvalues of `M⁻¹(D - W)`, ascending, all components merged.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.blocks.iter().flat_map(|b| b.eigenvalues.iter().copied()).collect();
        all.sort_by(f64::total_cmp);
        all
    }

    /// The full matrix `p_t`.
    pub fn kernel(&self, t: f64) -> Result<DMatrix<f64>> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("time must be positive, got {t}")));
        }
        let mut p = DMatrix::zeros(self.n, self.n);
        for b in &self.blocks {
            let weights = b.eigenvalues.map(|l| (-l * t).exp());
            let mut scaled = b.modes.clone();
            for (k, w) in weights.iter().enumerate() {
                scaled.column_mut(k).scale_mut(*w);
            }
            let local = &scaled * b.modes.transpose();
            for (i, &u) in b.vertices.iter().enumerate() {
                for (j, &v) in b.vertices.iter().enumerate() {
                    p[(u, v)] = local[(i, j)];
                }
            }
        }
        Ok(p)
    }

    pub fn value(&self, t: f64, x: usize, y: usize) -> Result<f64> {
        if x >= self.n || y >= self.n {
            return Err(Error::UnknownPoint { id: x.max(y), n: self.n });
        }
        let Some(b) = self.blocks.iter().find(|b| b.vertices.contains(&x)) else {
            return Err(Error::Internal("vertex missing from every component".into()));
        };
        let Some(j) = b.vertices.iter().position(|&v| v == y) else {
            return Ok(0.0);
        };
        let i = b.vertices.iter().position(|&v| v == x).expect("x in block");
        Ok((0..b.eigenvalues.len())
            .map(|k| (-b.eigenvalues[k] * t).exp() * b.modes[(i, k)] * b.modes[(j, k)])
            .sum())
    }
}

/// Kernels at a fixed list of times.
#[derive(Clone, Debug)]
pub struct HeatKernelTable {
    pub spectral: HeatKernel,
    pub times: Vec<f64>,
    pub kernels: Vec<DMatrix<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub time: f64,
    pub symmetry_error: f64,
    pub stochastic_error: f64,
    pub min_value: f64,
    /// `max |p_{2t} - p_t M p_t|`.
    pub semigroup_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantSummary {
    pub rows: Vec<InvariantReport>,
    pub symmetry_ok: bool,
    pub stochastic_ok: bool,
    pub positivity_ok: bool,
    pub semigroup_ok: bool,
}

impl InvariantSummary {
    pub fn ok(&self) -> bool {
        self.symmetry_ok && self.stochastic_ok && self.positivity_ok && self.semigroup_ok
    }
}

pub const SYMMETRY_TOL: f64 = 1e-10;
pub const STOCHASTIC_TOL: f64 = 1e-10;
pub const SEMIGROUP_TOL: f64 = 1e-9;
/// Entries that underflow to roundoff may come out slightly negative.
pub const POSITIVITY_TOL: f64 = 1e-12;

pub fn heat_kernel(form: &GraphDirichletForm, times: &[f64]) -> Result<HeatKernelTable> {
    let spectral = HeatKernel::new(form)?;
    let mut times = times.to_vec();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let kernels = times.iter().map(|&t| spectral.kernel(t)).collect::<Result<_>>()?;
    Ok(HeatKernelTable {
        spectral,
        times,
        kernels,
    })
}

impl HeatKernelTable {
    pub fn len(&self) -> usize {
        self.spectral.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spectral.is_empty()
    }

    pub fn at(&self, t: f64) -> Option<&DMatrix<f64>> {
        self.times.iter().position(|&s| s == t).map(|k| &self.kernels[k])
    }

    /// Kernel at `t`, from the table when present.
    pub fn kernel(&self, t: f64) -> Result<DMatrix<f64>> {
        match self.at(t) {
            Some(k) => Ok(k.clone()),
            None => self.spectral.kernel(t),
        }
    }

    pub fn check_invariants(&self) -> Result<InvariantSummary> {
        let m = &self.spectral.measure;
        let n = self.len();
        let rows = self
            .times
            .iter()
            .zip(&self.kernels)
            .map(|(&t, p)| {
                let mut sym = 0.0f64;
                let mut stoch = 0.0f64;
                let mut min = f64::INFINITY;
                for x in 0..n {
                    let mut row = 0.0;
                    for y in 0..n {
                        sym = sym.max((p[(x, y)] - p[(y, x)]).abs());
                        min = min.min(p[(x, y)]);
                        row += p[(x, y)] * m[y];
                    }
                    stoch = stoch.max((row - 1.0).abs());
                }
                let mut pm = p.clone();
                for (j, &w) in m.iter().enumerate() {
                    pm.column_mut(j).scale_mut(w);
                }
                let composed = pm * p;
                let direct = self.spectral.kernel(2.0 * t)?;
                let semigroup_error = (composed - direct).abs().max();
                Ok(InvariantReport {
                    time: t,
                    symmetry_error: sym,
                    stochastic_error: stoch,
                    min_value: min,
                    semigroup_error,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InvariantSummary {
            symmetry_ok: rows.iter().all(|r| r.symmetry_error <= SYMMETRY_TOL),
            stochastic_ok: rows.iter().all(|r| r.stochastic_error <= STOCHASTIC_TOL),
            positivity_ok: rows.iter().all(|r| r.min_value >= -POSITIVITY_TOL),
            semigroup_ok: rows.iter().all(|r| r.semigroup_error <= SEMIGROUP_TOL),
            rows,
        })
    }

    /// Writes `t,x,y,p` rows.
    pub fn write_csv(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["t", "x", "y", "p"])?;
        for (t, p) in self.times.iter().zip(&self.kernels) {
            for x in 0..self.len() {
                for y in 0..self.len() {
                    w.write_record([
                        format!("{t:.16e}"),
                        x.to_string(),
                        y.to_string(),
                        format!("{:.16e}", p[(x, y)]),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateRow {
    pub x: usize,
    pub y: usize,
    pub t: f64,
    pub p: f64,
    pub epsilon: f64,
    pub d_eps: f64,
    /// `V(x, Ψ⁻¹(t))`.
    pub volume: f64,
    /// `t Φ(d_ε / t)`.
    pub exponent: f64,
    /// `log(p V)`.
    pub log_scaled: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub rows: Vec<EstimateRow>,
    /// Least-squares slope `c` in `log(p V) ≈ a - c tΦ(d_ε/t)`.
    pub rate: f64,
    /// `min / max` of `p V exp(rate · tΦ)`: the bracketing prefactors.
    pub c_lower: f64,
    pub c_upper: f64,
    /// Largest `c` with `p V <= max(p V) exp(-c tΦ)` on every row.
    pub pure_upper_rate: f64,
    /// Smallest `C` with `p V >= min_diag(p V) exp(-C tΦ)` on every row.
    pub pure_lower_rate: f64,
    pub skipped: usize,
}

/// Both structural pieces of the chain-metric heat kernel estimate with
/// `ε = ε(t, x, y)`, and the constants that make them bracket `p_t`.
pub fn generalized_estimate_eval(
    heat: &HeatKernel,
    space: &FiniteMetricMeasureSpace,
    psi: &ScaleFunction,
    pairs: &[(usize, usize)],
    times: &[f64],
) -> Result<EstimateReport> {
    let phi = PhiTransform::new(psi.clone());
    let jobs: Vec<(usize, usize, f64)> = pairs
        .iter()
        .flat_map(|&(x, y)| times.iter().map(move |&t| (x, y, t)))
        .collect();
    let results: Vec<Result<Option<EstimateRow>>> = jobs
        .par_iter()
        .map(|&(x, y, t)| {
            let p = heat.value(t, x, y)?;
            let volume = space.volume(x, psi.eval_inverse(t)?);
            let (epsilon, d_eps, exponent) = if x == y {
                (f64::NAN, 0.0, 0.0)
            } else {
                let (e, d_eps) = match epsilon_of_t_detail(space, psi, x, y, t) {
                    Ok(r) => r,
                    Err(Error::TimeBelowChainResolution { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                };
                (e, d_eps, t * phi.eval(d_eps / t)?)
            };
            if !(p > 0.0) {
                return Ok(None);
            }
            Ok(Some(EstimateRow {
                x,
                y,
                t,
                p,
                epsilon,
                d_eps,
                volume,
                exponent,
                log_scaled: (p * volume).ln(),
            }))
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = 0;
    for r in results {
        match r? {
            Some(row) => rows.push(row),
            None => skipped += 1,
        }
    }
    if rows.is_empty() {
        return Err(Error::FitQuality("no usable (x, y, t) triples".into()));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.exponent).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.log_scaled).collect();
    let (_, slope) = fit::least_squares(&xs, &ys);
    let rate = (-slope).max(0.0);
    let adjusted: Vec<f64> = rows.iter().map(|r| r.log_scaled + rate * r.exponent).collect();
    let c_lower = adjusted.iter().copied().fold(f64::INFINITY, f64::min).exp();
    let c_upper = adjusted.iter().copied().fold(f64::NEG_INFINITY, f64::max).exp();
    let max_diag = rows.iter().map(|r| r.log_scaled).fold(f64::NEG_INFINITY, f64::max);
    let min_diag = rows
        .iter()
        .filter(|r| r.exponent == 0.0)
        .map(|r| r.log_scaled)
        .fold(f64::INFINITY, f64::min)
        .min(max_diag);
    let pure_upper_rate = rows
        .iter()
        .filter(|r| r.exponent > 0.0)
        .map(|r| (max_diag - r.log_scaled) / r.exponent)
        .fold(f64::INFINITY, f64::min);
    let pure_lower_rate = rows
        .iter()
        .filter(|r| r.exponent > 0.0)
        .map(|r| (min_diag - r.log_scaled) / r.exponent)
        .fold(0.0, f64::max);
    Ok(EstimateReport {
        rows,
        rate,
        c_lower,
        c_upper,
        pure_upper_rate,
        pure_lower_rate,
        skipped,
    })
}
