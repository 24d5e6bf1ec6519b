//! Named verification suites bundling the library's end-to-end checks.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::{
    chain_condition_estimate, chain_metric, main_inequality_scan, ProximityIndex,
};
use crate::dirichlet::{Edge, GraphDirichletForm};
use crate::error::{Error, Result};
use crate::heat::{
    chaining_scan, exit_time_walk_dimension, heat_kernel, sierpinski_gasket_graph,
    sub_gaussian_fit, FitConfig, GasketGraph, HeatKernel, NearDiagonal,
};
use crate::net::proof_replay;
use crate::scale::{log_grid, PhiTransform, ScaleFunction};
use crate::space::{build_space, line_coords, FiniteMetricMeasureSpace, MetricSpec, SpaceSpec};

pub const SUITES: [&str; 5] = ["geodesic", "snowflake", "scale", "gasket", "replay"];

/// ε grid for spaces with unit nearest-neighbour spacing.
pub const INTEGER_EPS_GRID: [f64; 10] = [1.5, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0, 34.0, 55.0, 89.0];
pub const SNOWFLAKE_RATIO_WINDOW: (f64, f64) = (0.5, 2.0);
pub const SNOWFLAKE_MIN_SEPARATION: f64 = 10.0;
pub const CYCLE_BETA_WINDOW: (f64, f64) = (1.8, 2.2);
pub const GASKET_BETA_WINDOW: (f64, f64) = (2.09, 2.55);
pub const ESTIMATOR_AGREEMENT: f64 = 0.10;
pub const PHI_C2_MAX: f64 = 1.01;
pub const PHI_REL_TOL: f64 = 1e-6;
pub const REPLAY_C3_GOLDEN: f64 = 18.0;
pub const REPLAY_C3_MAX: f64 = 50.0;
pub const CHAINING_GAIN_MIN: f64 = 2.0;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    #[serde(skip)]
    pub seconds: f64,
    pub checks: Vec<Check>,
}

struct Collector(Vec<Check>);

impl Collector {
    fn push(&mut self, name: &str, passed: bool, detail: Value) {
        log::info!("{name}: {}", if passed { "pass" } else { "FAIL" });
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut c = Collector(Vec::new());
    match name {
        "geodesic" => geodesic(&mut c)?,
        "snowflake" => snowflake(&mut c)?,
        "scale" => scale(&mut c)?,
        "gasket" => gasket(&mut c)?,
        "replay" => replay(&mut c)?,
        other => {
            return Err(Error::Domain(format!(
                "unknown suite `{other}`; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        passed: c.0.iter().all(|k| k.passed),
        seconds: start.elapsed().as_secs_f64(),
        checks: c.0,
    })
}

pub fn geodesic_space(form: &GraphDirichletForm) -> Result<FiniteMetricMeasureSpace> {
    build_space(SpaceSpec::new(MetricSpec::GraphGeodesic(form.clone())))
}

pub fn unit_line(n: usize) -> Result<FiniteMetricMeasureSpace> {
    build_space(SpaceSpec::new(MetricSpec::Euclidean(line_coords(n, 1.0))))
}

/// Snowflaked grid `{0, h, …, 1}` with `d = |Δ|^{2/β}`.
pub fn snowflake_grid(h: f64, beta: f64) -> Result<FiniteMetricMeasureSpace> {
    let n = (1.0 / h).round() as usize + 1;
    build_space(SpaceSpec::new(MetricSpec::Snowflake {
        coords: line_coords(n, h),
        beta,
    }))
}

pub fn geometric(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| lo * (hi / lo).powf(i as f64 / (k - 1) as f64))
        .collect()
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GeodesicCheck {
    pub pairs_checked: usize,
    pub mismatches: usize,
    pub sandwich_violations: usize,
    pub max_sandwich_ratio: f64,
}

/// `d_ε = d` and the chain sandwich over all pairs and every ε.
pub fn geodesic_identity(space: &FiniteMetricMeasureSpace, epsilons: &[f64]) -> Result<GeodesicCheck> {
    let mut out = GeodesicCheck {
        pairs_checked: 0,
        mismatches: 0,
        sandwich_violations: 0,
        max_sandwich_ratio: 0.0,
    };
    let n = space.len();
    for &eps in epsilons {
        let index = ProximityIndex::new(space, eps)?;
        for x in 0..n {
            let sc = index.shortest_from(x)?;
            let hc = index.hops_from(x)?;
            for y in x + 1..n {
                out.pairs_checked += 1;
                if sc.dist[y] != space.d(x, y) {
                    out.mismatches += 1;
                }
                let lower = (sc.dist[y] / eps).ceil();
                match hc.hops[y] {
                    Some(h) if lower <= h as f64 && h as f64 <= 9.0 * lower => {
                        out.max_sandwich_ratio = out.max_sandwich_ratio.max(h as f64 / lower);
                    }
                    _ => out.sandwich_violations += 1,
                }
            }
        }
    }
    Ok(out)
}

fn geodesic(c: &mut Collector) -> Result<()> {
    let line = unit_line(101)?;
    let r = geodesic_identity(&line, &INTEGER_EPS_GRID)?;
    c.push("line-101 d_eps = d", r.mismatches == 0, json!(r));
    c.push("line-101 sandwich", r.sandwich_violations == 0, json!(r));
    for (label, form) in [
        ("cycle-60", GraphDirichletForm::cycle(60)),
        ("gasket-3", sierpinski_gasket_graph(3)?.form),
        ("path-40", GraphDirichletForm::path(40)),
    ] {
        let s = geodesic_space(&form)?;
        let r = geodesic_identity(&s, &INTEGER_EPS_GRID)?;
        c.push(&format!("{label} d_eps = d"), r.mismatches == 0, json!(r));
        c.push(&format!("{label} sandwich"), r.sandwich_violations == 0, json!(r));
    }
    Ok(())
}

fn snowflake(c: &mut Collector) -> Result<()> {
    let psi = ScaleFunction::power(3.0)?;
    let small = snowflake_grid(0.1, 3.0)?;
    let (d, _) = chain_metric(&small, 0.22, 0, 10)?;
    c.push(
        "0.1-grid d_eps at ε = 0.22",
        (d - 10.0 * 0.1f64.powf(2.0 / 3.0)).abs() < 1e-12,
        json!({ "d_eps": d }),
    );
    let cc = chain_condition_estimate(&small, &[0.5, 0.3, 0.22])?;
    let k: Vec<f64> = cc.per_epsilon.iter().map(|p| p.1).collect();
    c.push(
        "chain condition degrades as ε shrinks",
        k.windows(2).all(|w| w[0] <= w[1]) && k[0] < k[2],
        json!(cc),
    );

    let space = snowflake_grid(0.01, 3.0)?;
    let eps = geometric(0.05, 0.5, 10);
    let pairs = all_pairs(space.len());
    let scan = main_inequality_scan(&space, &psi, &pairs, &eps, SNOWFLAKE_MIN_SEPARATION)?;
    let (lo, hi) = SNOWFLAKE_RATIO_WINDOW;
    c.push(
        "main inequality ratio window",
        scan.scanned > 0 && scan.min_ratio >= lo && scan.worst_ratio <= hi,
        json!({
            "scanned": scan.scanned,
            "min_ratio": scan.min_ratio,
            "max_ratio": scan.worst_ratio,
            "argmax": scan.argmax,
            "skipped_close": scan.skipped_close,
            "trend": scan.trend,
        }),
    );
    let all = main_inequality_scan(&space, &psi, &pairs, &eps, 1.0)?;
    c.push(
        "snowflake sandwich",
        all.sandwich_violations == 0 && all.skipped_infinite == 0,
        json!({
            "scanned": all.scanned,
            "violations": all.sandwich_violations,
            "max_sandwich_ratio": all.max_sandwich_ratio,
        }),
    );
    Ok(())
}

fn scale(c: &mut Collector) -> Result<()> {
    for (beta, expect_ok) in [(1.5, false), (2.0, true), (2.32, true)] {
        let psi = ScaleFunction::power(beta)?;
        let mut verdicts = Vec::new();
        for window in [(1e-3, 1e-2), (0.1, 1.0), (1.0, 10.0), (10.0, 100.0)] {
            let cert = psi.walk_dimension_lower_check(1e3, window, 64, 1e6)?;
            verdicts.push(cert.ok);
        }
        c.push(
            &format!("walk dimension check r^{beta}"),
            verdicts.iter().all(|&v| v == expect_ok),
            json!({ "verdicts": verdicts, "expected": expect_ok }),
        );
    }
    for beta in [2.0, 2.5, 3.0] {
        let phi = PhiTransform::new(ScaleFunction::power(beta)?);
        let cert = phi.verify_regularity((1e-3, 1e3), 32, PHI_C2_MAX)?;
        c.push(&format!("Phi regularity beta {beta}"), cert.ok, json!(cert));
    }
    let mut worst = 0.0f64;
    for beta in [1.5, 2.0, 2.5, 3.0] {
        let psi = ScaleFunction::power(beta)?;
        let closed = PhiTransform::new(psi.clone());
        let numeric = PhiTransform::numeric(psi);
        for s in log_grid((1e-3, 1e3), 16)? {
            let (a, b) = (closed.eval(s)?, numeric.eval(s)?);
            worst = worst.max((a - b).abs() / a);
        }
    }
    c.push("numeric Phi = closed form", worst <= PHI_REL_TOL, json!({ "max_rel_error": worst }));
    let phi = PhiTransform::new(ScaleFunction::power(2.0)?);
    let mut worst = 0.0f64;
    for &(d, t) in &[(1.0, 1.0), (10.0, 3.0), (0.5, 20.0), (100.0, 7.0)] {
        let lhs = t * phi.eval(d / t)?;
        worst = worst.max((lhs - d * d / (4.0 * t)).abs() / (d * d / (4.0 * t)));
    }
    c.push("Gaussian reduction tΦ(d/t) = d²/4t", worst <= 1e-10, json!({ "max_rel_error": worst }));
    Ok(())
}

/// Interior reference vertices at lattice points `(s/4, s/4)`, `(s/2, s/4)`,
/// `(s/4, s/2)`, `(s/8, s/8)`, `(3s/8, s/8)` with side `s = 2^level`.
pub fn gasket_centers(g: &GasketGraph) -> Vec<usize> {
    let s = 1i64 << g.level;
    let mut out: Vec<usize> = [(2, 2), (4, 2), (2, 4), (1, 1), (3, 1)]
        .iter()
        .map(|&(a, b)| (a * s / 8, b * s / 8))
        .filter_map(|v| g.lattice.iter().position(|w| *w == v))
        .filter(|&i| !g.corners.contains(&i))
        .collect();
    out.dedup();
    out
}

fn gasket(c: &mut Collector) -> Result<()> {
    let times = [0.1, 1.0, 10.0, 100.0];
    let cycle = GraphDirichletForm::cycle(200);
    let g5 = sierpinski_gasket_graph(5)?;
    for (label, form) in [("cycle-200", &cycle), ("gasket-5", &g5.form)] {
        let inv = heat_kernel(form, &times)?.check_invariants()?;
        c.push(&format!("{label} heat kernel invariants"), inv.ok(), json!(inv));
    }

    let g4 = sierpinski_gasket_graph(4)?;
    let s4 = geodesic_space(&g4.form)?;
    let r = geodesic_identity(&s4, &[1.5, 2.5, 4.0, 6.0, 10.0])?;
    c.push("gasket-4 sandwich", r.sandwich_violations == 0, json!(r));

    let cs = geodesic_space(&cycle)?;
    let ctab = heat_kernel(&cycle, &geometric(4.0, 400.0, 9))?;
    let cfit = sub_gaussian_fit(&ctab, &cs, &[0], &FitConfig::default())?;
    let cexit = exit_time_walk_dimension(&cycle, &cs, &[0], &[2.0, 4.0, 8.0, 16.0, 32.0])?;
    let g6 = sierpinski_gasket_graph(6)?;
    let s6 = geodesic_space(&g6.form)?;
    let centers = gasket_centers(&g6);
    let gtab = heat_kernel(&g6.form, &geometric(5.0, 600.0, 9))?;
    let gfit = sub_gaussian_fit(&gtab, &s6, &centers, &FitConfig::default())?;
    let gexit = exit_time_walk_dimension(&g6.form, &s6, &centers, &[2.0, 4.0, 8.0, 16.0])?;
    for (label, fit, exit, (lo, hi)) in [
        ("cycle-200", cfit.beta, cexit.beta_hat, CYCLE_BETA_WINDOW),
        ("gasket-6", gfit.beta, gexit.beta_hat, GASKET_BETA_WINDOW),
    ] {
        let inside = |b: f64| (lo..=hi).contains(&b);
        let agree = (fit - exit).abs() <= ESTIMATOR_AGREEMENT * fit.min(exit);
        c.push(
            &format!("{label} walk exponent"),
            inside(fit) && inside(exit) && agree,
            json!({ "fit_beta": fit, "exit_beta": exit, "window": [lo, hi] }),
        );
    }

    let h = HeatKernel::new(&cycle)?;
    let (_, base) = chain_metric(&cs, 1.5, 0, 100)?;
    let near = NearDiagonal {
        c: 8.0,
        factor: 0.5,
        beta: 2.0,
    };
    let ns: Vec<usize> = (1..=32).collect();
    let mut below = true;
    let mut best_gain = 0.0f64;
    let mut rows = Vec::new();
    for t in [1.0, 4.0, 16.0] {
        let scan = chaining_scan(&h, &cs, &base, t, &ns, near)?;
        below &= scan.all_below_true;
        best_gain = best_gain.max(scan.gain);
        rows.push(json!({
            "t": t, "best_n": scan.best_n, "best_bound": scan.best_bound,
            "single_step": scan.single_step, "gain": scan.gain,
        }));
    }
    c.push(
        "chaining lower bound",
        below && best_gain >= CHAINING_GAIN_MIN,
        json!({ "scans": rows, "best_gain": best_gain }),
    );
    Ok(())
}

fn replay(c: &mut Collector) -> Result<()> {
    let path = GraphDirichletForm::path(101);
    let space = geodesic_space(&path)?;
    let psi = ScaleFunction::power(2.0)?;
    let r = proof_replay(&path, &space, &psi, 0, 100, 6.0, None)?;
    c.push(
        "replay unit-Lipschitz û",
        r.lipschitz_ok && r.plateau_ok,
        json!({ "pairs": r.lipschitz_pairs }),
    );
    c.push(
        "replay maximal-function constant",
        r.c3 <= REPLAY_C3_MAX && (r.c3 - REPLAY_C3_GOLDEN).abs() <= 1e-9,
        json!({ "c3": r.c3, "golden": REPLAY_C3_GOLDEN }),
    );
    c.push(
        "replay recovered inequality",
        r.recovered_ok,
        json!({ "n_eps": r.n_eps, "c_direct": r.c_direct, "c_chain": r.c_chain }),
    );

    let p3 = GraphDirichletForm::path(3);
    let series = p3.capacity(&[0], &[2])?.value;
    let parallel = GraphDirichletForm::new(
        2,
        vec![
            Edge { u: 0, v: 1, conductance: 0.75, length: 1.0 },
            Edge { u: 0, v: 1, conductance: 2.5, length: 1.0 },
        ],
        None,
    )?
    .capacity(&[0], &[1])?
    .value;
    c.push(
        "capacity series/parallel",
        (series - 0.5).abs() <= 1e-12 && (parallel - 3.25).abs() <= 1e-12,
        json!({ "series": series, "parallel": parallel }),
    );
    Ok(())
}
