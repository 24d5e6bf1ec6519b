//! Chapman–Kolmogorov chaining of near-diagonal kernel bounds.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::chain::resample_chain;
use crate::error::{Error, Result};
use crate::space::FiniteMetricMeasureSpace;

use super::HeatKernel;

/// Near-diagonal regime `d(u, v) <= c s^{1/β}` at time `s`, and intermediate
/// balls of radius `factor · c s^{1/β}` around the chain points.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NearDiagonal {
    pub c: f64,
    pub factor: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainingBound {
    pub n: usize,
    pub t: f64,
    pub bound: f64,
    pub true_value: f64,
    pub ball_sizes: Vec<usize>,
    pub below_true: bool,
}

/// Solver tolerance for `bound <= p_t(x, y)`.
pub const CHAINING_TOL: f64 = 1e-12;

/// `Σ_{y_i ∈ B(x_i, ρ)} Π p̃_{t/n}(y_i, y_{i+1}) m(y_1)⋯m(y_{n-1})`, where
/// `p̃_s` is the kernel cut off outside the near-diagonal regime and the
/// chain `x_0 = x, …, x_n = y` is supplied by the caller.
pub fn chaining_lower_bound(
    heat: &HeatKernel,
    space: &FiniteMetricMeasureSpace,
    chain: &[usize],
    t: f64,
    near: NearDiagonal,
) -> Result<ChainingBound> {
    let (Some(&x), Some(&y)) = (chain.first(), chain.last()) else {
        return Err(Error::Domain("chain is empty".into()));
    };
    let n = chain.len() - 1;
    if n == 0 {
        return Err(Error::Domain("chain needs at least one hop".into()));
    }
    let true_value = heat.value(t, x, y)?;
    let s = t / n as f64;
    let window = near.c * s.powf(1.0 / near.beta);
    let radius = near.factor * window;
    let kernel = heat.kernel(s)?;
    let cut = |u: usize, v: usize, k: &DMatrix<f64>| {
        if space.d(u, v) <= window {
            k[(u, v)].max(0.0)
        } else {
            0.0
        }
    };
    let balls: Vec<Vec<usize>> = chain[1..n]
        .iter()
        .map(|&c| {
            if radius > 0.0 {
                space.ball(c, radius)
            } else {
                Ok(Vec::new())
            }
        })
        .collect::<Result<_>>()?;
    let bound = if n == 1 {
        cut(x, y, &kernel)
    } else if balls.iter().any(Vec::is_empty) {
        log::debug!("empty intermediate ball, chained bound is 0");
        0.0
    } else {
        let mut v: Vec<f64> = balls[0].iter().map(|&b| cut(x, b, &kernel) * space.mass(b)).collect();
        for w in balls.windows(2) {
            let (prev, next) = (&w[0], &w[1]);
            v = next
                .iter()
                .map(|&b| {
                    let s: f64 = prev.iter().zip(&v).map(|(&a, &va)| va * cut(a, b, &kernel)).sum();
                    s * space.mass(b)
                })
                .collect();
        }
        let last = balls.last().expect("n >= 2");
        last.iter().zip(&v).map(|(&a, &va)| va * cut(a, y, &kernel)).sum()
    };
    Ok(ChainingBound {
        n,
        t,
        bound,
        true_value,
        ball_sizes: balls.iter().map(Vec::len).collect(),
        below_true: bound <= true_value + CHAINING_TOL,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainingScan {
    pub t: f64,
    pub rows: Vec<ChainingBound>,
    pub best_n: usize,
    pub best_bound: f64,
    /// The `n = 1` bound.
    pub single_step: f64,
    /// `best_bound / single_step`; infinite when only chaining gives a positive bound.
    pub gain: f64,
    pub all_below_true: bool,
}

/// Chained bounds for each `n` in `ns`, with the base chain resampled to `n` hops.
pub fn chaining_scan(
    heat: &HeatKernel,
    space: &FiniteMetricMeasureSpace,
    base_chain: &[usize],
    t: f64,
    ns: &[usize],
    near: NearDiagonal,
) -> Result<ChainingScan> {
    use rayon::prelude::*;
    let rows: Vec<ChainingBound> = ns
        .par_iter()
        .map(|&n| chaining_lower_bound(heat, space, &resample_chain(base_chain, n), t, near))
        .collect::<Result<_>>()?;
    let best = rows
        .iter()
        .max_by(|a, b| a.bound.total_cmp(&b.bound).then(b.n.cmp(&a.n)))
        .ok_or_else(|| Error::Domain("no chain lengths requested".into()))?;
    let single_step = match rows.iter().find(|r| r.n == 1) {
        Some(r) => r.bound,
        None => chaining_lower_bound(heat, space, &resample_chain(base_chain, 1), t, near)?.bound,
    };
    let gain = if best.bound == 0.0 {
        0.0
    } else if single_step == 0.0 {
        f64::INFINITY
    } else {
        best.bound / single_step
    };
    Ok(ChainingScan {
        t,
        best_n: best.n,
        best_bound: best.bound,
        single_step,
        gain,
        all_below_true: rows.iter().all(|r| r.below_true),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::GraphDirichletForm;
    use crate::space::{build_space, MetricSpec, SpaceSpec};

    #[test]
    fn single_hop_is_the_kernel_when_near() {
        let g = GraphDirichletForm::cycle(20);
        let s = build_space(SpaceSpec::new(MetricSpec::GraphGeodesic(g.clone()))).unwrap();
        let h = HeatKernel::new(&g).unwrap();
        let near = NearDiagonal { c: 100.0, factor: 0.5, beta: 2.0 };
        let b = chaining_lower_bound(&h, &s, &[0, 3], 2.0, near).unwrap();
        assert_eq!(b.bound, b.true_value);
        let far = NearDiagonal { c: 1.0, factor: 0.5, beta: 2.0 };
        assert_eq!(chaining_lower_bound(&h, &s, &[0, 3], 2.0, far).unwrap().bound, 0.0);
    }

    #[test]
    fn chained_bounds_stay_below() {
        let g = GraphDirichletForm::cycle(40);
        let s = build_space(SpaceSpec::new(MetricSpec::GraphGeodesic(g.clone()))).unwrap();
        let h = HeatKernel::new(&g).unwrap();
        let base: Vec<usize> = (0..=20).collect();
        let near = NearDiagonal { c: 4.0, factor: 0.5, beta: 2.0 };
        let ns: Vec<usize> = (1..=12).collect();
        let scan = chaining_scan(&h, &s, &base, 8.0, &ns, near).unwrap();
        assert!(scan.all_below_true);
        assert!(scan.best_bound > 0.0);
    }
}
