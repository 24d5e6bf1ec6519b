//! Space-time scale functions `Psi`, their regularity certificates, and the
//! Legendre-type transform `Phi(s) = sup_{r>0} (s/r - 1/Psi(r))`.
//!
//! Certificates produced here are grid-verified: they scan a geometric grid
//! of scales and report the smallest constant that works on that grid. They
//! are not proofs.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_POINTS_PER_DECADE: usize = 64;
pub const DEFAULT_WALK_DIM_CAP: f64 = 1e6;

const INVPHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Debug, PartialEq)]
pub enum PsiKind {
    Power { beta: f64 },
    /// `r^{exponents[0]}` on `(0, breaks[0]]`, then continued with
    /// `exponents[i]` on `(breaks[i-1], breaks[i]]`, last segment unbounded.
    Piecewise { breaks: Vec<f64>, exponents: Vec<f64> },
    /// Monotone samples, log-log linear interpolation inside the table.
    Tabulated { r: Vec<f64>, psi: Vec<f64> },
}

/// A continuous increasing bijection `Psi` with claimed regularity
/// `C^-1 (R/r)^beta1 <= Psi(R)/Psi(r) <= C (R/r)^beta2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleFunction {
    kind: PsiKind,
    pub beta1: f64,
    pub beta2: f64,
    pub c_reg: f64,
    // Psi at the piecewise breakpoints, for continuity and inversion.
    anchors: Vec<f64>,
}

impl ScaleFunction {
    pub fn power(beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::Domain(format!("power exponent must be positive, got {beta}")));
        }
        Ok(Self {
            kind: PsiKind::Power { beta },
            beta1: beta,
            beta2: beta,
            c_reg: 1.0,
            anchors: Vec::new(),
        })
    }

    /// Segments as `(start, exponent)`; the first start is ignored (the
    /// first segment runs from 0) and later starts must increase.
    pub fn piecewise(segments: &[(f64, f64)]) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Domain("piecewise Psi needs at least one segment".into()));
        }
        if let Some(&(_, b)) = segments.iter().find(|(_, b)| !(*b > 0.0)) {
            return Err(Error::Domain(format!("piecewise exponent must be positive, got {b}")));
        }
        let breaks: Vec<f64> = segments[1..].iter().map(|&(r, _)| r).collect();
        if breaks.iter().any(|&r| !(r > 0.0))
            || breaks.windows(2).any(|w| !(w[1] > w[0]))
        {
            return Err(Error::Domain("piecewise breakpoints must be positive and increasing".into()));
        }
        let exponents: Vec<f64> = segments.iter().map(|&(_, b)| b).collect();
        let mut anchors = Vec::with_capacity(breaks.len());
        let mut prev_r = 1.0;
        let mut prev_v = 1.0;
        for (i, &r) in breaks.iter().enumerate() {
            let v = prev_v * (r / prev_r).powf(exponents[i]);
            anchors.push(v);
            prev_r = r;
            prev_v = v;
        }
        let beta1 = exponents.iter().copied().fold(f64::INFINITY, f64::min);
        let beta2 = exponents.iter().copied().fold(0.0, f64::max);
        Ok(Self {
            kind: PsiKind::Piecewise { breaks, exponents },
            beta1,
            beta2,
            c_reg: 1.0,
            anchors,
        })
    }

    /// Tabulated `Psi` from strictly increasing samples.
    pub fn tabulated(r: Vec<f64>, psi: Vec<f64>) -> Result<Self> {
        if r.len() != psi.len() || r.len() < 2 {
            return Err(Error::Domain("table needs at least two (r, Psi(r)) rows".into()));
        }
        if r.iter().chain(&psi).any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::Domain("table entries must be positive and finite".into()));
        }
        if r.windows(2).any(|w| !(w[1] > w[0])) || psi.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("tabulated Psi must be strictly increasing".into()));
        }
        let slopes: Vec<f64> = r
            .windows(2)
            .zip(psi.windows(2))
            .map(|(a, b)| (b[1] / b[0]).ln() / (a[1] / a[0]).ln())
            .collect();
        let beta1 = slopes.iter().copied().fold(f64::INFINITY, f64::min);
        let beta2 = slopes.iter().copied().fold(0.0, f64::max);
        Ok(Self {
            kind: PsiKind::Tabulated { r, psi },
            beta1,
            beta2,
            c_reg: 1.0,
            anchors: Vec::new(),
        })
    }

    /// Reads a two-column CSV `r,Psi(r)` (an optional non-numeric header is skipped).
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_path(path)?;
        let mut r = Vec::new();
        let mut v = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let a = rec.get(0).unwrap_or("").parse::<f64>();
            let b = rec.get(1).unwrap_or("").parse::<f64>();
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    r.push(a);
                    v.push(b);
                }
                _ if line == 0 => continue,
                _ => return Err(Error::Parse(format!("bad table row {}", line + 1))),
            }
        }
        Self::tabulated(r, v)
    }

    /// Parses `power:BETA`, `piecewise:r1,b1;r2,b2;...` or `table:PATH.csv`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("Psi spec `{spec}` has no `kind:` prefix")))?;
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number `{s}` in Psi spec")))
        };
        match kind {
            "power" => Self::power(num(rest)?),
            "piecewise" => {
                let segments = rest
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(|seg| {
                        let (r, b) = seg
                            .split_once(',')
                            .ok_or_else(|| Error::Parse(format!("segment `{seg}` is not `r,b`")))?;
                        Ok((num(r)?, num(b)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::piecewise(&segments)
            }
            "table" => Self::from_csv(rest),
            other => Err(Error::Parse(format!("unknown Psi kind `{other}`"))),
        }
    }

    /// Overrides the claimed regularity triple.
    pub fn with_regularity(mut self, beta1: f64, beta2: f64, c_reg: f64) -> Self {
        self.beta1 = beta1;
        self.beta2 = beta2;
        self.c_reg = c_reg;
        self
    }

    pub fn kind(&self) -> &PsiKind {
        &self.kind
    }

    pub fn power_exponent(&self) -> Option<f64> {
        match self.kind {
            PsiKind::Power { beta } => Some(beta),
            _ => None,
        }
    }

    /// Range of `r` on which `Psi` is represented.
    pub fn domain(&self) -> (f64, f64) {
        match &self.kind {
            PsiKind::Tabulated { r, .. } => (r[0], r[r.len() - 1]),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("Psi needs r > 0, got {r}")));
        }
        match &self.kind {
            PsiKind::Power { beta } => Ok(r.powf(*beta)),
            PsiKind::Piecewise { breaks, exponents } => {
                let k = breaks.partition_point(|&b| b < r);
                Ok(if k == 0 {
                    r.powf(exponents[0])
                } else {
                    self.anchors[k - 1] * (r / breaks[k - 1]).powf(exponents[k])
                })
            }
            PsiKind::Tabulated { r: xs, psi } => log_interp(xs, psi, r),
        }
    }

    pub fn eval_inverse(&self, v: f64) -> Result<f64> {
        if !(v > 0.0) {
            return Err(Error::Domain(format!("Psi inverse needs v > 0, got {v}")));
        }
        match &self.kind {
            PsiKind::Power { beta } => Ok(v.powf(1.0 / beta)),
            PsiKind::Piecewise { breaks, exponents } => {
                let k = self.anchors.partition_point(|&a| a < v);
                Ok(if k == 0 {
                    v.powf(1.0 / exponents[0])
                } else {
                    breaks[k - 1] * (v / self.anchors[k - 1]).powf(1.0 / exponents[k])
                })
            }
            PsiKind::Tabulated { r, psi } => log_interp(psi, r, v),
        }
    }

    /// Smallest `C` with both regularity bounds holding on a geometric grid.
    pub fn verify_regularity(
        &self,
        window: (f64, f64),
        points_per_decade: usize,
    ) -> Result<RegularityCertificate> {
        let grid = log_grid(window, points_per_decade)?;
        let vals = grid.iter().map(|&r| self.eval(r)).collect::<Result<Vec<_>>>()?;
        let best_c = pair_scan(&grid, &vals, self.beta1, self.beta2);
        Ok(RegularityCertificate {
            ok: best_c <= self.c_reg * (1.0 + 1e-12),
            best_c,
            grid_points: grid.len(),
            grid_verified: true,
        })
    }

    /// Checks `Psi(r)/Psi(s) >= C1^-1 (r/s)^2` for `s <= r` in the window.
    ///
    /// Fails when no `C1` below `cap` works, or when the growth exponent of
    /// `Psi` across some full decade inside the window is below 2.
    pub fn walk_dimension_lower_check(
        &self,
        space_diam: f64,
        window: (f64, f64),
        points_per_decade: usize,
        cap: f64,
    ) -> Result<WalkDimensionCertificate> {
        if !(window.1 < space_diam) {
            return Err(Error::Domain(format!(
                "window [{}, {}] must lie inside (0, diam = {space_diam})",
                window.0, window.1
            )));
        }
        let grid = log_grid(window, points_per_decade)?;
        let vals = grid.iter().map(|&r| self.eval(r)).collect::<Result<Vec<_>>>()?;
        let mut c1 = 1.0f64;
        for i in 0..grid.len() {
            for j in i..grid.len() {
                let need = (grid[j] / grid[i]).powi(2) * vals[i] / vals[j];
                c1 = c1.max(need);
            }
        }
        let mut min_decade_exponent: Option<f64> = None;
        for &r in &grid {
            if r * 10.0 <= window.1 * (1.0 + 1e-12) {
                let e = (self.eval(r * 10.0)? / self.eval(r)?).log10();
                min_decade_exponent = Some(min_decade_exponent.map_or(e, |m| m.min(e)));
            }
        }
        let sub_quadratic = min_decade_exponent.is_some_and(|e| e < 2.0 - 1e-9);
        Ok(WalkDimensionCertificate {
            ok: c1 <= cap && !sub_quadratic,
            c1,
            min_decade_exponent,
            grid_verified: true,
        })
    }
}

fn log_interp(xs: &[f64], ys: &[f64], x: f64) -> Result<f64> {
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    if x < lo || x > hi {
        return Err(Error::OutOfRange { value: x, min: lo, max: hi });
    }
    let k = xs.partition_point(|&a| a <= x).clamp(1, xs.len() - 1);
    let (x0, x1, y0, y1) = (xs[k - 1], xs[k], ys[k - 1], ys[k]);
    if x == x0 {
        return Ok(y0);
    }
    let slope = (y1 / y0).ln() / (x1 / x0).ln();
    Ok(y0 * (x / x0).powf(slope))
}

/// Geometric grid covering `[lo, hi]` inclusive.
pub fn log_grid(window: (f64, f64), points_per_decade: usize) -> Result<Vec<f64>> {
    let (lo, hi) = window;
    if !(lo > 0.0) || !(hi >= lo) || !hi.is_finite() {
        return Err(Error::Domain(format!("scale window [{lo}, {hi}] must satisfy 0 < lo <= hi")));
    }
    if points_per_decade == 0 {
        return Err(Error::Domain("grid density must be positive".into()));
    }
    if hi == lo {
        return Ok(vec![lo]);
    }
    let decades = (hi / lo).log10();
    let steps = ((decades * points_per_decade as f64).ceil() as usize).max(1);
    let step = (hi / lo).ln() / steps as f64;
    let mut g: Vec<f64> = (0..=steps).map(|i| lo * (i as f64 * step).exp()).collect();
    g[steps] = hi;
    Ok(g)
}

/// Smallest `C >= 1` with `C^-1 (S/s)^e_lo <= f(S)/f(s) <= C (S/s)^e_hi` on all grid pairs.
fn pair_scan(grid: &[f64], vals: &[f64], e_lo: f64, e_hi: f64) -> f64 {
    let mut c = 1.0f64;
    for i in 0..grid.len() {
        for j in i..grid.len() {
            let ratio = grid[j] / grid[i];
            let q = vals[j] / vals[i];
            c = c.max(ratio.powf(e_lo) / q).max(q / ratio.powf(e_hi));
        }
    }
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityCertificate {
    pub ok: bool,
    pub best_c: f64,
    pub grid_points: usize,
    pub grid_verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkDimensionCertificate {
    pub ok: bool,
    pub c1: f64,
    /// Smallest `log10(Psi(10 r) / Psi(r))` over full decades in the window.
    pub min_decade_exponent: Option<f64>,
    pub grid_verified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhiMethod {
    ClosedForm,
    NumericSup,
}

/// `Phi(s) = sup_{r>0} (s/r - 1/Psi(r))`.
#[derive(Clone, Debug)]
pub struct PhiTransform {
    source: ScaleFunction,
    method: PhiMethod,
}

impl PhiTransform {
    /// Closed form for power `Psi`, numeric sup otherwise.
    pub fn new(source: ScaleFunction) -> Self {
        let method = match source.kind {
            PsiKind::Power { .. } => PhiMethod::ClosedForm,
            _ => PhiMethod::NumericSup,
        };
        Self { source, method }
    }

    /// Always uses the numeric sup, whatever the kind of `Psi`.
    pub fn numeric(source: ScaleFunction) -> Self {
        Self {
            source,
            method: PhiMethod::NumericSup,
        }
    }

    pub fn method(&self) -> PhiMethod {
        self.method
    }

    pub fn source(&self) -> &ScaleFunction {
        &self.source
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("Phi needs s > 0, got {s}")));
        }
        match (self.method, &self.source.kind) {
            (PhiMethod::ClosedForm, PsiKind::Power { beta }) => power_phi(*beta, s),
            _ => self.numeric_sup(s),
        }
    }

    fn objective(&self, s: f64, r: f64) -> f64 {
        match self.source.eval(r) {
            Ok(p) => s / r - 1.0 / p,
            Err(_) => f64::NEG_INFINITY,
        }
    }

    fn numeric_sup(&self, s: f64) -> Result<f64> {
        let (b1, b2) = (self.source.beta1, self.source.beta2);
        if !(b1 > 1.0) {
            return Err(Error::Hypothesis(format!(
                "Phi is finite only for beta1 > 1, got beta1 = {b1}"
            )));
        }
        // Stationary point of s/r - r^-b sits at (b/s)^{1/(b-1)}.
        let guesses = [
            (b1 / s).powf(1.0 / (b1 - 1.0)),
            (b2 / s).powf(1.0 / (b2 - 1.0)),
        ];
        let spread = self.source.c_reg.max(1.0).powf(1.0 / (b1 - 1.0));
        let mut lo = guesses[0].min(guesses[1]) / (1e3 * spread);
        let mut hi = guesses[0].max(guesses[1]) * 1e3 * spread;
        let (dlo, dhi) = self.source.domain();
        lo = lo.max(dlo);
        hi = hi.min(dhi);
        if lo > hi || lo <= 0.0 {
            return Err(Error::OutOfRange { value: s, min: dlo, max: dhi });
        }
        let grid = log_grid((lo, hi), 48)?;
        let vals: Vec<f64> = grid.iter().map(|&r| self.objective(s, r)).collect();
        let (k, &best) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("grid is nonempty");
        let a = grid[k.saturating_sub(1)].ln();
        let b = grid[(k + 1).min(grid.len() - 1)].ln();
        let refined = golden_max(|lr| self.objective(s, lr.exp()), a, b, 1e-12);
        Ok(best.max(refined).max(0.0))
    }

    /// Grid certificate for `C2^-1 (S/s)^{b2/(b2-1)} <= Phi(S)/Phi(s) <= C2 (S/s)^{b1/(b1-1)}`.
    pub fn verify_regularity(
        &self,
        window: (f64, f64),
        points_per_decade: usize,
        claimed_c2: f64,
    ) -> Result<RegularityCertificate> {
        let (b1, b2) = (self.source.beta1, self.source.beta2);
        if !(b1 > 1.0) {
            return Err(Error::Hypothesis(format!(
                "Phi regularity requires 1 < beta1, got beta1 = {b1}"
            )));
        }
        let grid = log_grid(window, points_per_decade)?;
        let vals = grid.iter().map(|&s| self.eval(s)).collect::<Result<Vec<_>>>()?;
        let best_c = pair_scan(&grid, &vals, b2 / (b2 - 1.0), b1 / (b1 - 1.0));
        Ok(RegularityCertificate {
            ok: best_c <= claimed_c2,
            best_c,
            grid_points: grid.len(),
            grid_verified: true,
        })
    }
}

/// Closed-form `Phi` for `Psi(r) = r^beta`, optimizer `r* = (beta/s)^{1/(beta-1)}`.
pub fn power_phi(beta: f64, s: f64) -> Result<f64> {
    if !(beta > 1.0) {
        return Err(Error::Hypothesis(format!(
            "Phi is infinite for Psi = r^{beta}; needs beta > 1"
        )));
    }
    let q = 1.0 / (beta - 1.0);
    Ok(s.powf(beta * q) * beta.powf(-q) * (1.0 - 1.0 / beta))
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, rel_tol: f64) -> f64 {
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd).max(f(0.5 * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn power_eval_and_inverse() {
        let p = ScaleFunction::power(2.0).unwrap();
        assert_eq!(p.eval(3.0).unwrap(), 9.0);
        assert_eq!(p.eval_inverse(9.0).unwrap(), 3.0);
        let g = ScaleFunction::power(5f64.ln() / 2f64.ln()).unwrap();
        assert!(rel(g.eval(2.0).unwrap(), 5.0) < 1e-14);
        for v in [1e-6, 0.3, 1.0, 42.0, 1e9] {
            assert!(rel(g.eval(g.eval_inverse(v).unwrap()).unwrap(), v) < 1e-12);
        }
        assert!(p.eval(0.0).is_err());
    }

    #[test]
    fn piecewise_is_continuous_and_invertible() {
        let p = ScaleFunction::parse("piecewise:0,2;1,3").unwrap();
        assert_eq!(p.eval(0.5).unwrap(), 0.25);
        assert_eq!(p.eval(1.0).unwrap(), 1.0);
        assert!(rel(p.eval(2.0).unwrap(), 8.0) < 1e-15);
        for v in [0.01, 0.9, 1.0, 5.0, 1e4] {
            assert!(rel(p.eval(p.eval_inverse(v).unwrap()).unwrap(), v) < 1e-12);
        }
        let cert = p.verify_regularity((0.01, 100.0), 64).unwrap();
        assert!(cert.ok, "{cert:?}");
        assert!(rel(cert.best_c, 1.0) < 1e-9);
    }

    #[test]
    fn tabulated_interpolation_and_range() {
        let r: Vec<f64> = (0..=20).map(|k| 10f64.powf(-2.0 + 0.2 * k as f64)).collect();
        let v: Vec<f64> = r.iter().map(|x| x.powf(2.5)).collect();
        let t = ScaleFunction::tabulated(r, v).unwrap();
        assert!(rel(t.eval(0.37).unwrap(), 0.37f64.powf(2.5)) < 1e-9);
        for v in [1e-4, 0.2, 3.0, 9e4] {
            assert!(rel(t.eval(t.eval_inverse(v).unwrap()).unwrap(), v) < 1e-9);
        }
        assert!(matches!(t.eval(1e-3), Err(Error::OutOfRange { .. })));
        assert!(ScaleFunction::tabulated(vec![1.0, 2.0, 3.0], vec![1.0, 3.0, 2.0]).is_err());
    }

    #[test]
    fn regularity_examples() {
        let p = ScaleFunction::power(2.0).unwrap();
        let c = p.verify_regularity((0.01, 100.0), 64).unwrap();
        assert!(c.ok);
        assert!(rel(c.best_c, 1.0) < 1e-9);
        let bad = p.clone().with_regularity(2.5, 2.5, 2.0);
        assert!(!bad.verify_regularity((0.01, 100.0), 64).unwrap().ok);
    }

    #[test]
    fn phi_closed_form_examples() {
        let phi2 = PhiTransform::new(ScaleFunction::power(2.0).unwrap());
        assert!(rel(phi2.eval(1.0).unwrap(), 0.25) < 1e-15);
        let phi3 = PhiTransform::new(ScaleFunction::power(3.0).unwrap());
        assert!(rel(phi3.eval(3.0).unwrap(), 2.0) < 1e-14);
        for (d, t) in [(1.0, 1.0), (10.0, 0.5), (3.0, 7.0)] {
            let lhs = t * phi2.eval(d / t).unwrap();
            assert!(rel(lhs, d * d / (4.0 * t)) < 1e-12);
        }
        assert!(phi2.eval(0.0).is_err());
        assert!(phi2.eval(-1.0).is_err());
    }

    #[test]
    fn phi_numeric_matches_closed_form() {
        for beta in [1.5, 2.0, 2.5, 3.0, 5f64.ln() / 2f64.ln()] {
            let psi = ScaleFunction::power(beta).unwrap();
            let exact = PhiTransform::new(psi.clone());
            let num = PhiTransform::numeric(psi);
            for k in 0..=30 {
                let s = 10f64.powf(-3.0 + 0.2 * k as f64);
                let e = exact.eval(s).unwrap();
                let n = num.eval(s).unwrap();
                assert!(rel(n, e) < 1e-6, "beta {beta} s {s}: {n} vs {e}");
            }
        }
    }

    #[test]
    fn phi_of_piecewise_is_between_power_bounds() {
        // r^2 below 1 and r^3 above: Phi is the sup of the two-piece objective,
        // so it lies between the closed forms of each single power.
        let psi = ScaleFunction::parse("piecewise:0,2;1,3").unwrap();
        let phi = PhiTransform::new(psi);
        assert_eq!(phi.method(), PhiMethod::NumericSup);
        for s in [0.1, 1.0, 10.0] {
            let v = phi.eval(s).unwrap();
            let a = power_phi(2.0, s).unwrap();
            let b = power_phi(3.0, s).unwrap();
            assert!(v >= a.min(b) * (1.0 - 1e-9) && v <= a.max(b) * (1.0 + 1e-9));
        }
    }

    #[test]
    fn phi_regularity_certificate() {
        for (beta, exp) in [(2.0, 2.0), (3.0, 1.5)] {
            let phi = PhiTransform::new(ScaleFunction::power(beta).unwrap());
            let a = phi.eval(2.0).unwrap() / phi.eval(1.0).unwrap();
            assert!(rel(a, 2f64.powf(exp)) < 1e-12);
            let cert = phi.verify_regularity((0.01, 100.0), 32, 1.01).unwrap();
            assert!(cert.ok && cert.best_c < 1.0 + 1e-9);
        }
        let phi = PhiTransform::new(ScaleFunction::power(2.0).unwrap());
        let single = phi.verify_regularity((3.0, 3.0), 32, 1.0).unwrap();
        assert_eq!(single.best_c, 1.0);
        let weak = PhiTransform::new(ScaleFunction::power(0.8).unwrap());
        assert!(matches!(weak.verify_regularity((1.0, 2.0), 8, 2.0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn walk_dimension_examples() {
        let check = |beta: f64| {
            ScaleFunction::power(beta)
                .unwrap()
                .walk_dimension_lower_check(1e3, (0.1, 1.0), 64, DEFAULT_WALK_DIM_CAP)
                .unwrap()
        };
        let c = check(2.0);
        assert!(c.ok && rel(c.c1, 1.0) < 1e-9);
        let c = check(2.32);
        assert!(c.ok && c.c1 == 1.0);
        assert!(!check(1.5).ok);
        let p = ScaleFunction::power(2.0).unwrap();
        assert!(p.walk_dimension_lower_check(1.0, (0.1, 2.0), 8, 1e6).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(ScaleFunction::parse("power").is_err());
        assert!(ScaleFunction::parse("cubic:3").is_err());
        assert!(ScaleFunction::parse("power:abc").is_err());
        assert!(ScaleFunction::parse("piecewise:0,2;0.5,3;0.4,4").is_err());
    }
}
