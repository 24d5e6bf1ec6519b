//! Mean exit times from balls and the walk dimension they imply.

use nalgebra::DVector;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirichlet::{same_size, GraphDirichletForm};
use crate::error::{Error, Result};
use crate::space::FiniteMetricMeasureSpace;

use super::fit::least_squares;

#[derive(Clone, Debug, Serialize)]
pub struct ExitRow {
    pub x: usize,
    pub radius: f64,
    pub ball_size: usize,
    pub mean_exit: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExitTimeReport {
    pub beta_hat: f64,
    pub rows: Vec<ExitRow>,
    /// `(x, r)` whose ball is the whole graph.
    pub excluded: Vec<(usize, f64)>,
    /// Slope of `log E_x τ` against `log r` per center.
    pub per_center: Vec<(usize, f64)>,
}

/// `E_x τ_{B(x, r)}` for the walk with generator `M⁻¹(W - D)`: the solution
/// of `(D - W) u = m` on the ball, zero outside, evaluated at `x`.
pub fn exit_times(
    form: &GraphDirichletForm,
    space: &FiniteMetricMeasureSpace,
    x: usize,
    r: f64,
) -> Result<(Vec<usize>, DVector<f64>)> {
    same_size(form, space)?;
    let ball = space.ball(x, r)?;
    if ball.len() == space.len() {
        return Err(Error::Domain(format!("B({x}, {r}) is the whole graph")));
    }
    let l = form.laplacian_block(&ball);
    let rhs = DVector::from_iterator(ball.len(), ball.iter().map(|&v| space.mass(v)));
    let u = l
        .cholesky()
        .ok_or_else(|| Error::Linalg(format!("exit problem on B({x}, {r}) is singular")))?
        .solve(&rhs);
    Ok((ball, u))
}

/// Slope of the mean (over centers) of `log E_x τ_{B(x,r)}` against `log r`.
pub fn exit_time_walk_dimension(
    form: &GraphDirichletForm,
    space: &FiniteMetricMeasureSpace,
    centers: &[usize],
    radii: &[f64],
) -> Result<ExitTimeReport> {
    let jobs: Vec<(usize, f64)> = centers
        .iter()
        .flat_map(|&x| radii.iter().map(move |&r| (x, r)))
        .collect();
    let solved: Vec<Result<Option<ExitRow>>> = jobs
        .par_iter()
        .map(|&(x, r)| match exit_times(form, space, x, r) {
            Ok((ball, u)) => {
                let k = ball.iter().position(|&v| v == x).expect("center in ball");
                Ok(Some(ExitRow {
                    x,
                    radius: r,
                    ball_size: ball.len(),
                    mean_exit: u[k],
                }))
            }
            Err(Error::Domain(_)) if space.check_id(x).is_ok() && r > 0.0 => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for (job, res) in jobs.iter().zip(solved) {
        match res? {
            Some(row) => rows.push(row),
            None => excluded.push(*job),
        }
    }
    let mut per_center = Vec::new();
    for &x in centers {
        let (lr, le): (Vec<f64>, Vec<f64>) = rows
            .iter()
            .filter(|r| r.x == x)
            .map(|r| (r.radius.ln(), r.mean_exit.ln()))
            .unzip();
        if lr.len() >= 2 {
            per_center.push((x, least_squares(&lr, &le).1));
        }
    }
    let mut lr = Vec::new();
    let mut le = Vec::new();
    for &r in radii {
        let vals: Vec<f64> = rows
            .iter()
            .filter(|row| row.radius == r)
            .map(|row| row.mean_exit.ln())
            .collect();
        if !vals.is_empty() {
            lr.push(r.ln());
            le.push(vals.iter().sum::<f64>() / vals.len() as f64);
        }
    }
    if lr.len() < 2 {
        return Err(Error::FitQuality("exit times need at least two usable radii".into()));
    }
    Ok(ExitTimeReport {
        beta_hat: least_squares(&lr, &le).1,
        rows,
        excluded,
        per_center,
    })
}
