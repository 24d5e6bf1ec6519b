//! Sub-Gaussian envelope fitting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::FiniteMetricMeasureSpace;

use super::HeatKernelTable;

/// Ordinary least squares `y ≈ a + b x`; returns `(a, b)`.
pub fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - b * mx, b)
}

#[derive(Clone, Debug, Serialize)]
pub struct FitConfig {
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_step: f64,
    /// Keep pairs with `p_t(x, y) >= near_ratio · p_t(x, x)`.
    pub near_ratio: f64,
    /// Drop pairs farther than `(1 - f)` times the center's eccentricity.
    pub boundary_fraction: f64,
    /// Drop kernel values below this fraction of the largest one.
    pub floor: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            beta_min: 1.8,
            beta_max: 3.2,
            beta_step: 0.01,
            near_ratio: 1e-4,
            boundary_fraction: 0.1,
            floor: 1e-12,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubGaussianFit {
    pub beta: f64,
    /// Slope `b` in `log(p V) ≈ a - b (d^β/t)^{1/(β-1)}`.
    pub rate: f64,
    /// `c` in `exp(-(d^β / (c t))^{1/(β-1)})`, i.e. `b^{-(β-1)}`.
    pub c_exponent: f64,
    /// Bracketing prefactors: `c_lower <= p V exp(b X) <= c_upper` on all points.
    pub c_lower: f64,
    pub c_upper: f64,
    pub residual: f64,
    pub residual_curve: Vec<(f64, f64)>,
    /// Slope of `log p_t(x,x)` against `log t`, averaged over centers.
    pub diag_slope: f64,
    /// Slope of `log V(x, r)` against `log r` over the radii probed.
    pub volume_dimension: f64,
    /// `volume_dimension / (-diag_slope)`.
    pub beta_diag: f64,
    pub points: usize,
}

struct Candidate {
    beta: f64,
    mse: f64,
    slope: f64,
    pts: Vec<(f64, f64)>,
}

struct Sample {
    x: usize,
    t: f64,
    d: f64,
    p: f64,
}

/// Two-stage fit of `p_t(x,y) ≍ V(x,t^{1/β})⁻¹ exp(-c (d^β/t)^{1/(β-1)})`.
pub fn sub_gaussian_fit(
    table: &HeatKernelTable,
    space: &FiniteMetricMeasureSpace,
    centers: &[usize],
    config: &FitConfig,
) -> Result<SubGaussianFit> {
    if table.len() != space.len() {
        return Err(Error::Domain("kernel table and space differ in size".into()));
    }
    let (t_min, t_max) = match (table.times.first(), table.times.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::FitQuality("empty time grid".into())),
    };
    if t_max / t_min < 100.0 * (1.0 - 1e-12) {
        return Err(Error::FitQuality(format!(
            "times span {:.3} decades, need 2",
            (t_max / t_min).log10()
        )));
    }
    for &x in centers {
        space.check_id(x)?;
    }
    let pmax = table.kernels.iter().map(|k| k.max()).fold(0.0, f64::max);
    let mut samples = Vec::new();
    let mut reach = 0.0f64;
    let mut closest = f64::INFINITY;
    for &x in centers {
        let ecc = space.row(x).iter().copied().fold(0.0, f64::max);
        let limit = (1.0 - config.boundary_fraction) * ecc;
        for (&t, k) in table.times.iter().zip(&table.kernels) {
            for y in 0..space.len() {
                let d = space.d(x, y);
                let p = k[(x, y)];
                if d > limit || !(p > config.floor * pmax) || !(p >= config.near_ratio * k[(x, x)]) {
                    continue;
                }
                if d > 0.0 {
                    reach = reach.max(d);
                    closest = closest.min(d);
                }
                samples.push(Sample { x, t, d, p });
            }
        }
    }
    if !(reach / closest >= 10.0) {
        return Err(Error::FitQuality(format!(
            "distances span {:.3} decades, need 1",
            (reach / closest).log10()
        )));
    }
    // per center: sorted distances with cumulative mass, for V(x, r) lookups
    let profiles: Vec<(usize, Vec<f64>, Vec<f64>)> = centers
        .iter()
        .map(|&x| {
            let mut order: Vec<usize> = (0..space.len()).collect();
            order.sort_by(|&a, &b| space.d(x, a).total_cmp(&space.d(x, b)));
            let dist = order.iter().map(|&y| space.d(x, y)).collect();
            let cum = order
                .iter()
                .scan(0.0, |acc, &y| {
                    *acc += space.mass(y);
                    Some(*acc)
                })
                .collect();
            (x, dist, cum)
        })
        .collect();
    let volume = |x: usize, r: f64| {
        let (_, dist, cum) = profiles.iter().find(|p| p.0 == x).expect("center profiled");
        let k = dist.partition_point(|&d| d < r);
        if k == 0 {
            0.0
        } else {
            cum[k - 1]
        }
    };
    let steps = ((config.beta_max - config.beta_min) / config.beta_step).round() as usize;
    let mut best: Option<Candidate> = None;
    let mut curve = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let beta = ((config.beta_min + k as f64 * config.beta_step) * 1e10).round() / 1e10;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for s in &samples {
            let v = volume(s.x, s.t.powf(1.0 / beta));
            xs.push((s.d.powf(beta) / s.t).powf(1.0 / (beta - 1.0)));
            ys.push((s.p * v).ln());
        }
        if xs.len() < 3 {
            continue;
        }
        let (a, b) = least_squares(&xs, &ys);
        let mse = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - a - b * x).powi(2))
            .sum::<f64>()
            / xs.len() as f64;
        curve.push((beta, mse));
        let pts: Vec<(f64, f64)> = xs.into_iter().zip(ys).collect();
        if best.as_ref().is_none_or(|c| mse < c.mse) {
            best = Some(Candidate { beta, mse, slope: b, pts });
        }
    }
    let Some(Candidate { beta, mse: residual, slope, pts }) = best else {
        return Err(Error::FitQuality("no candidate exponent had enough points".into()));
    };
    let rate = -slope;
    let adjusted: Vec<f64> = pts.iter().map(|(x, y)| y + rate * x).collect();
    let c_lower = adjusted.iter().copied().fold(f64::INFINITY, f64::min).exp();
    let c_upper = adjusted.iter().copied().fold(f64::NEG_INFINITY, f64::max).exp();

    let mut diag_slopes = Vec::new();
    let mut dims = Vec::new();
    for &x in centers {
        let (lt, lp): (Vec<f64>, Vec<f64>) = table
            .times
            .iter()
            .zip(&table.kernels)
            .map(|(t, k)| (t.ln(), k[(x, x)].ln()))
            .unzip();
        diag_slopes.push(least_squares(&lt, &lp).1);
        let radii: Vec<f64> = table.times.iter().map(|t| t.powf(1.0 / beta)).collect();
        let (lr, lv): (Vec<f64>, Vec<f64>) = radii
            .iter()
            .map(|&r| (r.ln(), space.volume(x, r).ln()))
            .unzip();
        dims.push(least_squares(&lr, &lv).1);
    }
    let diag_slope = diag_slopes.iter().sum::<f64>() / diag_slopes.len() as f64;
    let volume_dimension = dims.iter().sum::<f64>() / dims.len() as f64;
    Ok(SubGaussianFit {
        beta,
        rate,
        c_exponent: if rate > 0.0 { rate.powf(-(beta - 1.0)) } else { f64::INFINITY },
        c_lower,
        c_upper,
        residual,
        residual_curve: curve,
        diag_slope,
        volume_dimension,
        beta_diag: volume_dimension / -diag_slope,
        points: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_squares_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|v| 1.5 - 2.0 * v).collect();
        let (a, b) = least_squares(&x, &y);
        assert!((a - 1.5).abs() < 1e-14 && (b + 2.0).abs() < 1e-14);
    }
}
