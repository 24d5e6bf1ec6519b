//! Finite metric measure spaces.
//!
//! A space is a dense set of point ids `0..n` with a symmetric distance
//! matrix and a strictly positive measure. Balls are open: `B(x, r)` is the
//! set of points with `d(x, y) < r`. Every step function of `r` used here
//! (volumes, annuli, maximal functions) changes only at pairwise distances,
//! so scans over the critical radii are exact.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dirichlet::GraphDirichletForm;
use crate::error::{Error, Result};

/// Above this size the O(n³) triangle check may be skipped on request.
pub const TRIANGLE_CHECK_SKIP_MIN: usize = 1500;

const TRIANGLE_REL_TOL: f64 = 1e-12;

/// How the distance matrix of a space was produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Explicit,
    Euclidean { coords: Vec<Vec<f64>> },
    /// `d(x, y) = |x - y|^(2 / beta)`.
    Snowflake { coords: Vec<Vec<f64>>, beta: f64 },
    GraphGeodesic,
}

/// Metric-construction descriptor accepted by [`build_space`].
#[derive(Clone, Debug)]
pub enum MetricSpec {
    Explicit(Vec<Vec<f64>>),
    Euclidean(Vec<Vec<f64>>),
    Snowflake { coords: Vec<Vec<f64>>, beta: f64 },
    GraphGeodesic(GraphDirichletForm),
}

#[derive(Clone, Debug)]
pub struct SpaceSpec {
    pub metric: MetricSpec,
    /// Per-point weights; uniform unit mass when `None`.
    pub measure: Option<Vec<f64>>,
    /// Run the O(n³) triangle check. Only honoured as `false` for spaces
    /// with more than [`TRIANGLE_CHECK_SKIP_MIN`] points.
    pub verify_triangle: bool,
}

impl SpaceSpec {
    pub fn new(metric: MetricSpec) -> Self {
        Self {
            metric,
            measure: None,
            verify_triangle: true,
        }
    }

    pub fn with_measure(mut self, measure: Vec<f64>) -> Self {
        self.measure = Some(measure);
        self
    }
}

/// A finite metric measure space `(X, d, m)`.
#[derive(Clone, Debug)]
pub struct FiniteMetricMeasureSpace {
    n: usize,
    dist: Vec<f64>,
    measure: Vec<f64>,
    provenance: Provenance,
}

/// Builds a space from a descriptor, verifying the metric axioms.
pub fn build_space(spec: SpaceSpec) -> Result<FiniteMetricMeasureSpace> {
    let (dist, n, provenance, default_measure) = match spec.metric {
        MetricSpec::Explicit(rows) => {
            let n = rows.len();
            let mut dist = Vec::with_capacity(n * n);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::InvalidMatrix(format!(
                        "row {i} has {} entries, expected {n}",
                        row.len()
                    )));
                }
                dist.extend_from_slice(row);
            }
            (dist, n, Provenance::Explicit, None)
        }
        MetricSpec::Euclidean(coords) => {
            let dist = euclidean_matrix(&coords, 1.0)?;
            let n = coords.len();
            (dist, n, Provenance::Euclidean { coords }, None)
        }
        MetricSpec::Snowflake { coords, beta } => {
            if !(beta >= 2.0) || !beta.is_finite() {
                return Err(Error::Domain(format!(
                    "snowflake exponent 2/beta must lie in (0, 1]; got beta = {beta}"
                )));
            }
            let dist = euclidean_matrix(&coords, 2.0 / beta)?;
            let n = coords.len();
            (dist, n, Provenance::Snowflake { coords, beta }, None)
        }
        MetricSpec::GraphGeodesic(form) => {
            let n = form.len();
            let dist = form.geodesic_distances();
            (
                dist,
                n,
                Provenance::GraphGeodesic,
                Some(form.measure().to_vec()),
            )
        }
    };
    let measure = spec
        .measure
        .or(default_measure)
        .unwrap_or_else(|| vec![1.0; n]);
    let verify = spec.verify_triangle || n <= TRIANGLE_CHECK_SKIP_MIN;
    if !spec.verify_triangle && verify {
        log::debug!("triangle check kept on: n = {n} is below the skip threshold");
    }
    if !verify {
        log::warn!("skipping triangle-inequality verification for n = {n}");
    }
    FiniteMetricMeasureSpace::from_parts(n, dist, measure, provenance, verify)
}

fn euclidean_matrix(coords: &[Vec<f64>], power: f64) -> Result<Vec<f64>> {
    let n = coords.len();
    if let Some(first) = coords.first() {
        let dim = first.len();
        if let Some((i, _)) = coords.iter().enumerate().find(|(_, c)| c.len() != dim) {
            return Err(Error::InvalidMatrix(format!(
                "coordinate {i} has dimension {}, expected {dim}",
                coords[i].len()
            )));
        }
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let sq: f64 = coords[i]
                .iter()
                .zip(&coords[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let e = sq.sqrt();
            let d = if power == 1.0 { e } else { e.powf(power) };
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    Ok(dist)
}

impl FiniteMetricMeasureSpace {
    fn from_parts(
        n: usize,
        dist: Vec<f64>,
        measure: Vec<f64>,
        provenance: Provenance,
        verify_triangle: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("space must contain at least one point".into()));
        }
        if measure.len() != n {
            return Err(Error::InvalidMatrix(format!(
                "measure has {} entries, expected {n}",
                measure.len()
            )));
        }
        if let Some((index, &value)) = measure
            .iter()
            .enumerate()
            .find(|(_, &w)| !(w > 0.0) || !w.is_finite())
        {
            return Err(Error::NonPositiveMeasure { index, value });
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("d({i},{i}) must be 0")));
            }
            for j in (i + 1)..n {
                let a = dist[i * n + j];
                let b = dist[j * n + i];
                if a != b {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric entries d({i},{j}) = {a}, d({j},{i}) = {b}"
                    )));
                }
                if !(a > 0.0) || !a.is_finite() {
                    return Err(Error::InvalidMatrix(format!(
                        "d({i},{j}) = {a} must be positive and finite"
                    )));
                }
            }
        }
        let space = Self {
            n,
            dist,
            measure,
            provenance,
        };
        if verify_triangle {
            space.check_triangle()?;
        }
        Ok(space)
    }

    fn check_triangle(&self) -> Result<()> {
        let n = self.n;
        let scale = self.diameter();
        for i in 0..n {
            for j in 0..n {
                let dij = self.dist[i * n + j];
                for k in 0..n {
                    let direct = self.dist[i * n + k];
                    let via = dij + self.dist[j * n + k];
                    if direct > via + TRIANGLE_REL_TOL * scale {
                        return Err(Error::TriangleViolation {
                            i,
                            j,
                            k,
                            direct,
                            via,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.measure[i]
    }

    pub fn total_mass(&self) -> f64 {
        self.measure.iter().sum()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    pub fn check_id(&self, id: usize) -> Result<()> {
        if id < self.n {
            Ok(())
        } else {
            Err(Error::UnknownPoint { id, n: self.n })
        }
    }

    /// Sorted distinct positive pairwise distances.
    pub fn distinct_distances(&self) -> Vec<f64> {
        let mut v: Vec<f64> = (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.d(i, j))
            .collect();
        sort_dedup(&mut v);
        v
    }

    /// Sorted distinct distances from `x`, starting with 0.
    pub fn distances_from(&self, x: usize) -> Vec<f64> {
        let mut v = self.row(x).to_vec();
        sort_dedup(&mut v);
        v
    }

    /// The open ball `B(x, r) = {y : d(x, y) < r}`.
    pub fn ball(&self, x: usize, r: f64) -> Result<Vec<usize>> {
        self.check_id(x)?;
        if !(r > 0.0) {
            return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
        }
        Ok(self.ball_unchecked(x, r))
    }

    pub(crate) fn ball_unchecked(&self, x: usize, r: f64) -> Vec<usize> {
        self.row(x)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < r)
            .map(|(y, _)| y)
            .collect()
    }

    /// `m(B(x, r))`.
    pub fn volume(&self, x: usize, r: f64) -> f64 {
        self.row(x)
            .iter()
            .zip(&self.measure)
            .filter(|(&d, _)| d < r)
            .map(|(_, &w)| w)
            .sum()
    }

    /// `nu(B(x, r))` for an arbitrary per-point mass `nu`.
    pub fn mass_in_ball(&self, nu: &[f64], x: usize, r: f64) -> f64 {
        self.row(x)
            .iter()
            .zip(nu)
            .filter(|(&d, _)| d < r)
            .map(|(_, &w)| w)
            .sum()
    }

    pub fn volume_profile(&self, x: usize) -> Result<VolumeProfile> {
        self.check_id(x)?;
        let mut order: Vec<usize> = (0..self.n).collect();
        let row = self.row(x);
        order.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
        let mut radii = Vec::new();
        let mut volumes: Vec<f64> = Vec::new();
        let mut acc = 0.0;
        for (k, &y) in order.iter().enumerate() {
            acc += self.measure[y];
            let last_of_level = k + 1 == order.len() || row[order[k + 1]] != row[y];
            if last_of_level {
                radii.push(row[y]);
                volumes.push(acc);
            }
        }
        Ok(VolumeProfile {
            center: x,
            radii,
            volumes,
        })
    }

    /// Sup over `x` and `r` of `m(B(x, 2r)) / m(B(x, r))`.
    ///
    /// Both volumes are constant between consecutive points of
    /// `{delta} ∪ {delta / 2}`, so evaluating at those points and at the
    /// midpoints between them is exact.
    pub fn doubling_constant(&self) -> f64 {
        (0..self.n)
            .map(|x| {
                let profile = self
                    .volume_profile(x)
                    .expect("center id is in range by construction");
                let mut cands: Vec<f64> = profile
                    .radii
                    .iter()
                    .filter(|&&d| d > 0.0)
                    .flat_map(|&d| [d, d / 2.0])
                    .collect();
                sort_dedup(&mut cands);
                let mut probes = cands.clone();
                probes.extend(cands.windows(2).map(|w| 0.5 * (w[0] + w[1])));
                if let Some(&first) = cands.first() {
                    probes.push(0.5 * first);
                }
                probes
                    .into_iter()
                    .map(|r| profile.volume_at(2.0 * r) / profile.volume_at(r))
                    .fold(1.0, f64::max)
            })
            .fold(1.0, f64::max)
    }

    /// Checks `B(x, r) \ B(x, r/2) ≠ ∅` whenever `B(x, r) ≠ X`, for `r` in
    /// `(min positive distance from x, max distance from x]`.
    pub fn uniform_perfectness(&self) -> Result<PerfectnessReport> {
        if self.n < 2 {
            return Err(Error::Domain("uniform perfectness needs at least two points".into()));
        }
        let mut first_failure = None;
        let mut worst = None::<(f64, usize, f64)>;
        for x in 0..self.n {
            let levels: Vec<f64> = self
                .distances_from(x)
                .into_iter()
                .filter(|&d| d > 0.0)
                .collect();
            // On (levels[j], levels[j+1]] the largest distance below r is
            // levels[j]; the annulus at ratio C is nonempty iff r <= C levels[j].
            for w in levels.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let need = hi / lo;
                if first_failure.is_none() && need > 2.0 {
                    first_failure = Some(Scale { x, r: hi });
                }
                if worst.is_none_or(|(c, _, _)| need > c) {
                    worst = Some((need, x, hi));
                }
            }
        }
        let (best_c, worst_scale) = match worst {
            Some((c, x, r)) => (c.max(1.0), Some(Scale { x, r })),
            None => (1.0, None),
        };
        Ok(PerfectnessReport {
            holds_at_2: first_failure.is_none(),
            first_failure,
            worst_scale,
            best_c,
        })
    }

    /// Whether `B(x, r) \ B(x, r / c)` is nonempty.
    pub fn annulus_nonempty(&self, x: usize, r: f64, c: f64) -> bool {
        self.row(x).iter().any(|&d| d >= r / c && d < r)
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: SpaceFile = serde_json::from_str(text)?;
        build_space(file.into_spec()?)
    }

    pub fn to_space_file(&self) -> SpaceFile {
        let (kind, coords, beta, matrix) = match &self.provenance {
            Provenance::Euclidean { coords } => ("euclidean", Some(coords.clone()), None, None),
            Provenance::Snowflake { coords, beta } => {
                ("snowflake", Some(coords.clone()), Some(*beta), None)
            }
            Provenance::Explicit | Provenance::GraphGeodesic => {
                let rows = (0..self.n).map(|i| self.row(i).to_vec()).collect();
                ("explicit", None, None, Some(rows))
            }
        };
        SpaceFile {
            points: self.n,
            metric: MetricFile {
                kind: kind.to_string(),
                coords,
                beta,
                matrix,
            },
            measure: Some(self.measure.clone()),
        }
    }
}

fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(f64::total_cmp);
    v.dedup();
}

/// Step-exact volume function around a center.
///
/// `volumes[j]` is `V(x, r)` for every `r` in `(radii[j], radii[j + 1]]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeProfile {
    pub center: usize,
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
}

impl VolumeProfile {
    /// `V(x, r)` for `r > 0`.
    pub fn volume_at(&self, r: f64) -> f64 {
        let k = self.radii.partition_point(|&d| d < r);
        if k == 0 {
            0.0
        } else {
            self.volumes[k - 1]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Scale {
    pub x: usize,
    pub r: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectnessReport {
    pub holds_at_2: bool,
    pub first_failure: Option<Scale>,
    /// Scale that demands the largest annulus ratio.
    pub worst_scale: Option<Scale>,
    /// Smallest `C` for which every scanned annulus `B(x,r) \ B(x,r/C)` is nonempty.
    pub best_c: f64,
}

/// On-disk JSON layout of a space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: usize,
    pub metric: MetricFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricFile {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

impl SpaceFile {
    pub fn into_spec(self) -> Result<SpaceSpec> {
        let missing = |what: &str| Error::Parse(format!("metric type {} needs `{what}`", self.metric.kind));
        let metric = match self.metric.kind.as_str() {
            "euclidean" => MetricSpec::Euclidean(self.metric.coords.clone().ok_or_else(|| missing("coords"))?),
            "snowflake" => MetricSpec::Snowflake {
                coords: self.metric.coords.clone().ok_or_else(|| missing("coords"))?,
                beta: self.metric.beta.ok_or_else(|| missing("beta"))?,
            },
            "explicit" => MetricSpec::Explicit(self.metric.matrix.clone().ok_or_else(|| missing("matrix"))?),
            other => return Err(Error::Parse(format!("unknown metric type `{other}`"))),
        };
        let n = match &metric {
            MetricSpec::Euclidean(c) | MetricSpec::Snowflake { coords: c, .. } => c.len(),
            MetricSpec::Explicit(m) => m.len(),
            MetricSpec::GraphGeodesic(g) => g.len(),
        };
        if n != self.points {
            return Err(Error::Parse(format!(
                "`points` = {} disagrees with the metric's {n} points",
                self.points
            )));
        }
        Ok(SpaceSpec {
            metric,
            measure: self.measure,
            verify_triangle: true,
        })
    }
}

/// Points `0, spacing, 2 spacing, ...` on a line.
pub fn line_coords(n: usize, spacing: f64) -> Vec<Vec<f64>> {
    (0..n).map(|i| vec![i as f64 * spacing]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> FiniteMetricMeasureSpace {
        build_space(SpaceSpec::new(MetricSpec::Euclidean(line_coords(n, 1.0)))).unwrap()
    }

    #[test]
    fn euclidean_line_distance() {
        let s = line(3);
        assert_eq!(s.d(0, 2), 2.0);
    }

    #[test]
    fn snowflake_powers() {
        let s = build_space(SpaceSpec::new(MetricSpec::Snowflake {
            coords: vec![vec![0.0], vec![1.0]],
            beta: 3.0,
        }))
        .unwrap();
        assert_eq!(s.d(0, 1), 1.0);
        let s = build_space(SpaceSpec::new(MetricSpec::Snowflake {
            coords: vec![vec![0.0], vec![8.0]],
            beta: 3.0,
        }))
        .unwrap();
        assert_eq!(s.d(0, 1), 8f64.powf(2.0 / 3.0));
        assert!((s.d(0, 1) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn snowflake_rejects_small_beta() {
        let err = build_space(SpaceSpec::new(MetricSpec::Snowflake {
            coords: line_coords(3, 1.0),
            beta: 1.5,
        }));
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn explicit_triangle_violation_names_triple() {
        let m = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        match build_space(SpaceSpec::new(MetricSpec::Explicit(m))) {
            Err(Error::TriangleViolation { i, j, k, .. }) => {
                assert_eq!((i, k), (0, 2));
                assert_eq!(j, 1);
            }
            other => panic!("expected triangle violation, got {other:?}"),
        }
    }

    #[test]
    fn nonpositive_weight_rejected() {
        let spec = SpaceSpec::new(MetricSpec::Euclidean(line_coords(3, 1.0)))
            .with_measure(vec![1.0, 0.0, 1.0]);
        assert!(matches!(
            build_space(spec),
            Err(Error::NonPositiveMeasure { index: 1, .. })
        ));
    }

    #[test]
    fn balls_are_open() {
        let s = line(3);
        assert_eq!(s.ball(0, 1.0).unwrap(), vec![0]);
        assert_eq!(s.ball(0, 2.5).unwrap(), vec![0, 1, 2]);
        assert_eq!(s.ball(0, 1.0000001).unwrap(), vec![0, 1]);
        assert!(matches!(s.ball(7, 1.0), Err(Error::UnknownPoint { id: 7, n: 3 })));
        assert!(s.ball(0, 0.0).is_err());
    }

    #[test]
    fn doubling_single_point_and_star() {
        let s = line(1);
        assert_eq!(s.doubling_constant(), 1.0);
        for leaves in [3usize, 6, 10] {
            let n = leaves + 1;
            let m: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match (i, j) {
                            _ if i == j => 0.0,
                            (0, _) | (_, 0) => 1.0,
                            _ => 2.0,
                        })
                        .collect()
                })
                .collect();
            let s = build_space(SpaceSpec::new(MetricSpec::Explicit(m))).unwrap();
            assert_eq!(s.doubling_constant(), (leaves + 1) as f64);
        }
    }

    #[test]
    fn doubling_line_matches_brute_force() {
        let s = line(11);
        let c = s.doubling_constant();
        // Independent scan on a fine radius grid.
        let mut brute = 1.0f64;
        for x in 0..11 {
            for k in 1..2400 {
                let r = k as f64 * 0.005;
                brute = brute.max(s.volume(x, 2.0 * r) / s.volume(x, r));
            }
        }
        assert_eq!(c, brute);
        assert!((1.0..=3.0).contains(&c));
    }

    #[test]
    fn perfectness_examples() {
        assert!(line(11).uniform_perfectness().unwrap().holds_at_2);

        let two = build_space(SpaceSpec::new(MetricSpec::Euclidean(vec![
            vec![0.0],
            vec![0.1],
            vec![100.0],
            vec![100.1],
        ])))
        .unwrap();
        let rep = two.uniform_perfectness().unwrap();
        assert!(!rep.holds_at_2);
        assert_eq!(rep.first_failure.unwrap().x, 0);
        assert_ne!(two.ball(0, 50.0).unwrap().len(), 4);
        assert!(!two.annulus_nonempty(0, 50.0, 2.0));
        assert!(rep.best_c >= 1000.0 - 1e-9);

        let pair = line(2);
        assert!(pair.uniform_perfectness().unwrap().holds_at_2);
    }

    #[test]
    fn volume_profiles() {
        let s = line(1);
        let p = s.volume_profile(0).unwrap();
        assert_eq!(p.radii, vec![0.0]);
        assert_eq!(p.volume_at(1e-9), 1.0);

        let s = line(3);
        let p = s.volume_profile(1).unwrap();
        assert_eq!(p.volume_at(1.0), 1.0);
        assert_eq!(p.volume_at(1.5), 3.0);
    }

    #[test]
    fn snowflake_profile_is_transformed_line_profile() {
        let coords = line_coords(21, 0.05);
        let e = build_space(SpaceSpec::new(MetricSpec::Euclidean(coords.clone()))).unwrap();
        let s = build_space(SpaceSpec::new(MetricSpec::Snowflake { coords, beta: 3.0 })).unwrap();
        for x in [0, 7, 20] {
            let pe = e.volume_profile(x).unwrap();
            let ps = s.volume_profile(x).unwrap();
            assert_eq!(pe.volumes, ps.volumes);
            for (a, b) in pe.radii.iter().zip(&ps.radii) {
                assert!((a.powf(2.0 / 3.0) - b).abs() <= 1e-14 * b.max(1.0));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"points": 3, "metric": {"type": "snowflake", "coords": [[0],[1],[8]], "beta": 3}}"#;
        let s = FiniteMetricMeasureSpace::from_json_str(text).unwrap();
        assert_eq!(s.len(), 3);
        let back = serde_json::to_string(&s.to_space_file()).unwrap();
        let s2 = FiniteMetricMeasureSpace::from_json_str(&back).unwrap();
        assert_eq!(s.row(2), s2.row(2));
        let bad = r#"{"points": 2, "metric": {"type": "euclidean", "coords": [[0],[1],[2]]}}"#;
        assert!(FiniteMetricMeasureSpace::from_json_str(bad).is_err());
    }
}
