//! Dirichlet forms on finite weighted graphs.
//!
//! The form is `E(f, g) = 1/2 Σ_{x,y} w_xy (f(x) - f(y)) (g(x) - g(y))`, the
//! sum running over ordered pairs, i.e. one full term per edge. Its energy
//! measure puts `γ_f(x) = 1/2 Σ_y w_xy (f(x) - f(y))²` at each vertex, the
//! unique vertex density satisfying `Σ g γ_f = E(f, fg) - E(f², g)/2`.
//!
//! Graph forms are jump forms, not strongly local ones; they are used as
//! quantitative analogues only.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scale::ScaleFunction;
use crate::space::FiniteMetricMeasureSpace;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub conductance: f64,
    pub length: f64,
}

/// A weighted graph with vertex measure.
#[derive(Clone, Debug)]
pub struct GraphDirichletForm {
    n: usize,
    edges: Vec<Edge>,
    // (neighbor, conductance, length); parallel edges kept separate
    adj: Vec<Vec<(usize, f64, f64)>>,
    measure: Vec<f64>,
    component: Vec<usize>,
    n_components: usize,
}

impl GraphDirichletForm {
    pub fn new(n: usize, edges: Vec<Edge>, measure: Option<Vec<f64>>) -> Result<Self> {
        let measure = measure.unwrap_or_else(|| vec![1.0; n]);
        if measure.len() != n {
            return Err(Error::InvalidMatrix(format!(
                "vertex measure has {} entries, expected {n}",
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
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::UnknownPoint { id: e.u.max(e.v), n });
            }
            if e.u == e.v {
                return Err(Error::InvalidMatrix(format!("self-loop at vertex {}", e.u)));
            }
            if !(e.conductance >= 0.0) || !e.conductance.is_finite() {
                return Err(Error::InvalidMatrix(format!(
                    "edge ({}, {}) has invalid conductance {}",
                    e.u, e.v, e.conductance
                )));
            }
            if !(e.length > 0.0) || !e.length.is_finite() {
                return Err(Error::InvalidMatrix(format!(
                    "edge ({}, {}) has invalid length {}",
                    e.u, e.v, e.length
                )));
            }
            if e.conductance > 0.0 {
                adj[e.u].push((e.v, e.conductance, e.length));
                adj[e.v].push((e.u, e.conductance, e.length));
            }
        }
        let (component, n_components) = components(&adj);
        Ok(Self {
            n,
            edges,
            adj,
            measure,
            component,
            n_components,
        })
    }

    /// Unit conductances and lengths.
    pub fn unweighted(n: usize, pairs: &[(usize, usize)], measure: Option<Vec<f64>>) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(u, v)| Edge {
                u,
                v,
                conductance: 1.0,
                length: 1.0,
            })
            .collect();
        Self::new(n, edges, measure)
    }

    /// Path graph `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::unweighted(n, &pairs, None).expect("path edges are valid")
    }

    /// Cycle graph on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::unweighted(n, &pairs, None).expect("cycle edges are valid")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, f64, f64)] {
        &self.adj[x]
    }

    pub fn degree(&self, x: usize) -> f64 {
        self.adj[x].iter().map(|&(_, w, _)| w).sum()
    }

    pub fn component_of(&self, x: usize) -> usize {
        self.component[x]
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn is_connected(&self) -> bool {
        self.n_components <= 1
    }

    /// Vertex lists of the connected components, in order of smallest vertex.
    pub fn component_vertices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_components];
        for (v, &c) in self.component.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// All-pairs geodesic distances (row-major), infinite across components.
    pub fn geodesic_distances(&self) -> Vec<f64> {
        use rayon::prelude::*;
        let rows: Vec<Vec<f64>> = (0..self.n)
            .into_par_iter()
            .map(|s| self.geodesic_from(s))
            .collect();
        rows.concat()
    }

    pub fn geodesic_from(&self, s: usize) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.n];
        let mut heap = BinaryHeap::new();
        dist[s] = 0.0;
        heap.push(Reverse((OrdF64(0.0), s)));
        while let Some(Reverse((OrdF64(d), u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, _, len) in &self.adj[u] {
                let nd = d + len;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((OrdF64(nd), v)));
                }
            }
        }
        dist
    }

    pub fn energy(&self, f: &[f64]) -> f64 {
        self.bilinear(f, f)
    }

    /// `E(f, g)`.
    pub fn bilinear(&self, f: &[f64], g: &[f64]) -> f64 {
        self.edges
            .iter()
            .map(|e| e.conductance * (f[e.u] - f[e.v]) * (g[e.u] - g[e.v]))
            .sum()
    }

    pub fn energy_measure(&self, f: &[f64]) -> EnergyMeasure {
        let mut density = vec![0.0; self.n];
        for e in &self.edges {
            let half = 0.5 * e.conductance * (f[e.u] - f[e.v]).powi(2);
            density[e.u] += half;
            density[e.v] += half;
        }
        let total = density.iter().sum();
        EnergyMeasure { density, total }
    }

    /// Dense `D - W`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            let w = e.conductance;
            l[(e.u, e.u)] += w;
            l[(e.v, e.v)] += w;
            l[(e.u, e.v)] -= w;
            l[(e.v, e.u)] -= w;
        }
        l
    }

    /// `D - W` restricted to `idx × idx` (boundary conductances kept on the diagonal).
    pub fn laplacian_block(&self, idx: &[usize]) -> DMatrix<f64> {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &v) in idx.iter().enumerate() {
            pos[v] = k;
        }
        let mut l = DMatrix::zeros(idx.len(), idx.len());
        for (k, &v) in idx.iter().enumerate() {
            for &(u, w, _) in &self.adj[v] {
                l[(k, k)] += w;
                if pos[u] != usize::MAX {
                    l[(k, pos[u])] -= w;
                }
            }
        }
        l
    }

    /// Capacity between disjoint vertex sets: energy of the equilibrium
    /// potential, which is 1 on `a`, 0 on `b` and harmonic elsewhere.
    pub fn capacity(&self, a: &[usize], b: &[usize]) -> Result<Capacity> {
        let mut label = vec![0u8; self.n];
        for &v in a {
            self.check(v)?;
            label[v] = 1;
        }
        for &v in b {
            self.check(v)?;
            if label[v] == 1 {
                return Err(Error::Domain(format!("vertex {v} lies in both A and B")));
            }
            label[v] = 2;
        }
        if a.is_empty() {
            return Err(Error::Domain("capacity needs a nonempty set A".into()));
        }
        let mut potential = vec![0.0; self.n];
        for &v in a {
            potential[v] = 1.0;
        }
        if b.is_empty() {
            // f ≡ 1 is admissible.
            return Ok(Capacity {
                value: 0.0,
                potential: vec![1.0; self.n],
            });
        }
        let mut has_boundary = vec![false; self.n_components];
        for v in 0..self.n {
            if label[v] != 0 {
                has_boundary[self.component[v]] = true;
            }
        }
        // Free vertices in components without boundary keep f = 0 (zero energy).
        let free: Vec<usize> = (0..self.n)
            .filter(|&v| label[v] == 0 && has_boundary[self.component[v]])
            .collect();
        if !free.is_empty() {
            let lff = self.laplacian_block(&free);
            let rhs = DVector::from_iterator(
                free.len(),
                free.iter().map(|&v| {
                    self.adj[v]
                        .iter()
                        .filter(|&&(u, _, _)| label[u] == 1)
                        .map(|&(_, w, _)| w)
                        .sum::<f64>()
                }),
            );
            let sol = lff
                .cholesky()
                .ok_or_else(|| Error::Linalg("Dirichlet block is not positive definite".into()))?
                .solve(&rhs);
            for (k, &v) in free.iter().enumerate() {
                potential[v] = sol[k];
            }
        }
        Ok(Capacity {
            value: self.energy(&potential),
            potential,
        })
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::UnknownPoint { id: v, n: self.n })
        }
    }

    /// Reads an edge list `u,v,conductance[,length]` and an optional vertex
    /// file `id,measure`. Blank lines, `#` comments and a non-numeric header
    /// row are ignored.
    pub fn load_csv(edges: impl AsRef<Path>, vertices: Option<&Path>) -> Result<Self> {
        let rows = read_numeric_rows(edges.as_ref())?;
        let mut list = Vec::with_capacity(rows.len());
        let mut n = 0usize;
        for (line, row) in rows {
            if row.len() < 3 || row.len() > 4 {
                return Err(Error::Parse(format!(
                    "edge row {line}: expected u,v,conductance[,length]"
                )));
            }
            let u = as_index(row[0], line)?;
            let v = as_index(row[1], line)?;
            n = n.max(u + 1).max(v + 1);
            list.push(Edge {
                u,
                v,
                conductance: row[2],
                length: row.get(3).copied().unwrap_or(1.0),
            });
        }
        let measure = match vertices {
            None => None,
            Some(p) => {
                let rows = read_numeric_rows(p)?;
                let max_id = rows
                    .iter()
                    .map(|(line, r)| as_index(r[0], *line))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .max()
                    .map_or(0, |m| m + 1);
                n = n.max(max_id);
                let mut m = vec![1.0; n];
                for (line, r) in rows {
                    if r.len() != 2 {
                        return Err(Error::Parse(format!("vertex row {line}: expected id,measure")));
                    }
                    m[as_index(r[0], line)?] = r[1];
                }
                Some(m)
            }
        };
        Self::new(n, list, measure)
    }

    /// Writes the edge list in the format read by [`Self::load_csv`].
    pub fn write_edges_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        for e in &self.edges {
            w.write_record([
                e.u.to_string(),
                e.v.to_string(),
                fmt_num(e.conductance),
                fmt_num(e.length),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_vertices_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        for (i, m) in self.measure.iter().enumerate() {
            w.write_record([i.to_string(), fmt_num(*m)])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.16e}")
    }
}

fn as_index(v: f64, line: usize) -> Result<usize> {
    if v >= 0.0 && v.fract() == 0.0 && v < u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(Error::Parse(format!("row {line}: `{v}` is not a vertex id")))
    }
}

fn read_numeric_rows(path: &Path) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = k + 1;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) if !row.is_empty() => out.push((line, row)),
            Ok(_) => {}
            Err(_) if k == 0 => {}
            Err(_) => {
                return Err(Error::Parse(format!(
                    "{}: row {line} is not numeric",
                    path.display()
                )))
            }
        }
    }
    Ok(out)
}

fn components(adj: &[Vec<(usize, f64, f64)>]) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &(v, _, _) in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct OrdF64(pub f64);

impl PartialEq for OrdF64 {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Vertex density of `Γ(f, f)`.
#[derive(Clone, Debug, Serialize)]
pub struct EnergyMeasure {
    pub density: Vec<f64>,
    pub total: f64,
}

impl EnergyMeasure {
    pub fn of_set(&self, set: &[usize]) -> f64 {
        set.iter().map(|&v| self.density[v]).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Capacity {
    pub value: f64,
    pub potential: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CapacityRow {
    pub x: usize,
    pub radius: f64,
    pub capacity: f64,
    pub volume: f64,
    /// `Cap · Psi(R) / m(B(x, R))`.
    pub constant: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CapacityScan {
    pub c1: f64,
    pub a1: f64,
    pub a2: f64,
    pub excluded_radii: Vec<f64>,
    pub rows: Vec<CapacityRow>,
}

/// Exact `Cap(B(x,R), B(x,A1 R)^c)` for every center and admissible radius.
///
/// Radii outside `(0, diam / a2)` are excluded from the scan.
pub fn capacity_upper_scan(
    form: &GraphDirichletForm,
    space: &FiniteMetricMeasureSpace,
    psi: &ScaleFunction,
    centers: &[usize],
    radii: &[f64],
    a1: f64,
    a2: f64,
) -> Result<CapacityScan> {
    use rayon::prelude::*;
    same_size(form, space)?;
    let limit = space.diameter() / a2;
    let (kept, excluded): (Vec<f64>, Vec<f64>) =
        radii.iter().partition(|&&r| r > 0.0 && r < limit);
    let jobs: Vec<(usize, f64)> = centers
        .iter()
        .flat_map(|&x| kept.iter().map(move |&r| (x, r)))
        .collect();
    for &x in centers {
        space.check_id(x)?;
    }
    let rows = jobs
        .par_iter()
        .map(|&(x, r)| {
            let inner = space.ball_unchecked(x, r);
            let outer: Vec<usize> = space
                .row(x)
                .iter()
                .enumerate()
                .filter(|(_, &d)| d >= a1 * r)
                .map(|(y, _)| y)
                .collect();
            let cap = form.capacity(&inner, &outer)?.value;
            let volume: f64 = inner.iter().map(|&v| space.mass(v)).sum();
            Ok(CapacityRow {
                x,
                radius: r,
                capacity: cap,
                volume,
                constant: cap * psi.eval(r)? / volume,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let c1 = rows.iter().map(|r| r.constant).fold(0.0, f64::max);
    Ok(CapacityScan {
        c1,
        a1,
        a2,
        excluded_radii: excluded,
        rows,
    })
}

/// `M_R ν(x) = sup_{0<r<R} ν(B(x,r)) / m(B(x,r))`, exact over the critical radii.
pub fn truncated_maximal(
    space: &FiniteMetricMeasureSpace,
    nu: &[f64],
    x: usize,
    big_r: f64,
) -> Result<f64> {
    space.check_id(x)?;
    if !(big_r > 0.0) {
        return Err(Error::Domain(format!("maximal function needs R > 0, got {big_r}")));
    }
    if nu.len() != space.len() {
        return Err(Error::Domain("measure nu has the wrong length".into()));
    }
    let row = space.row(x);
    let mut order: Vec<usize> = (0..space.len()).collect();
    order.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
    // Balls {d <= delta} for each level delta < R.
    let mut best = 0.0f64;
    let (mut num, mut den) = (0.0, 0.0);
    for (k, &y) in order.iter().enumerate() {
        if row[y] >= big_r {
            break;
        }
        num += nu[y];
        den += space.mass(y);
        let end_of_level = k + 1 == order.len() || row[order[k + 1]] != row[y];
        if end_of_level {
            best = best.max(num / den);
        }
    }
    Ok(best)
}

/// Optimal constant `C` in
/// `∫_{B(x,r)} (f - f̄)² dm <= C Psi(r) Γ(f,f)(B(x, A r))` over all `f`.
///
/// Values of `f` outside `B(x, A r)` enter only through the boundary edges;
/// they are eliminated exactly, and the result is the top generalized
/// eigenvalue of the variance form against the effective energy form on the
/// constant-free subspace.
pub fn poincare_constant(
    form: &GraphDirichletForm,
    space: &FiniteMetricMeasureSpace,
    psi: &ScaleFunction,
    x: usize,
    r: f64,
    dilation: f64,
) -> Result<f64> {
    same_size(form, space)?;
    let inner = space.ball(x, r)?;
    if inner.len() <= 1 {
        return Ok(0.0);
    }
    let outer = space.ball(x, dilation * r)?;
    let k = outer.len();
    let mut pos = vec![usize::MAX; form.len()];
    for (i, &v) in outer.iter().enumerate() {
        pos[v] = i;
    }
    // Effective numerator Γ(f,f)(B') after minimizing over outside values.
    let mut kmat = DMatrix::<f64>::zeros(k, k);
    let mut outside: std::collections::BTreeMap<usize, Vec<(usize, f64)>> = Default::default();
    for (i, &v) in outer.iter().enumerate() {
        for &(u, w, _) in form.neighbors(v) {
            if pos[u] != usize::MAX {
                // internal edge: half at each endpoint, visited from both sides
                let j = pos[u];
                kmat[(i, i)] += 0.5 * w;
                kmat[(j, j)] += 0.5 * w;
                kmat[(i, j)] -= 0.5 * w;
                kmat[(j, i)] -= 0.5 * w;
            } else {
                outside.entry(u).or_default().push((i, w));
            }
        }
    }
    for links in outside.values() {
        // min over c of 1/2 Σ w_i (f_i - c)² = 1/2 (Σ w_i f_i² - (Σ w_i f_i)² / Σ w_i)
        let s: f64 = links.iter().map(|&(_, w)| w).sum();
        for &(i, wi) in links {
            kmat[(i, i)] += 0.5 * wi;
            for &(j, wj) in links {
                kmat[(i, j)] -= 0.5 * wi * wj / s;
            }
        }
    }
    // Denominator: variance over B(x, r).
    let m_in: f64 = inner.iter().map(|&v| space.mass(v)).sum();
    let mut dmat = DMatrix::<f64>::zeros(k, k);
    for &a in &inner {
        let (i, ma) = (pos[a], space.mass(a));
        dmat[(i, i)] += ma;
        for &b in &inner {
            dmat[(i, pos[b])] -= ma * space.mass(b) / m_in;
        }
    }
    // Basis of the complement of constants: e_i - e_{k-1}.
    let q = DMatrix::<f64>::from_fn(k, k - 1, |row, col| {
        if row == col {
            1.0
        } else if row == k - 1 {
            -1.0
        } else {
            0.0
        }
    });
    let kt = q.transpose() * &kmat * &q;
    let dt = q.transpose() * &dmat * &q;
    let chol = kt.clone().cholesky().ok_or_else(|| {
        Error::Hypothesis(format!("ball B({x}, {}) is not connected in the graph", dilation * r))
    })?;
    let l = chol.l();
    let linv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Linalg("singular Cholesky factor".into()))?;
    let sym = &linv * dt * linv.transpose();
    let sym = (&sym + sym.transpose()) * 0.5;
    let mu = sym
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(0.0, f64::max);
    Ok(mu / psi.eval(r)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoPointReport {
    pub lhs: f64,
    pub maximal_x: f64,
    pub maximal_y: f64,
    /// `Psi(R) (M_R Γ(u,u)(x) + M_R Γ(u,u)(y))`.
    pub rhs_core: f64,
    /// `lhs / rhs_core`; infinite when the right side vanishes but the left does not.
    pub ratio: f64,
}

/// Both sides of `|u(x) - u(y)|² <= C Psi(R) (M_R Γ(u,u)(x) + M_R Γ(u,u)(y))`.
pub fn two_point_check(
    form: &GraphDirichletForm,
    space: &FiniteMetricMeasureSpace,
    psi: &ScaleFunction,
    u: &[f64],
    x: usize,
    y: usize,
    big_r: f64,
) -> Result<TwoPointReport> {
    same_size(form, space)?;
    let gamma = form.energy_measure(u);
    let maximal_x = truncated_maximal(space, &gamma.density, x, big_r)?;
    let maximal_y = truncated_maximal(space, &gamma.density, y, big_r)?;
    let lhs = (u[x] - u[y]).powi(2);
    let rhs_core = psi.eval(big_r)? * (maximal_x + maximal_y);
    let ratio = if lhs == 0.0 {
        0.0
    } else if rhs_core == 0.0 {
        f64::INFINITY
    } else {
        lhs / rhs_core
    };
    Ok(TwoPointReport {
        lhs,
        maximal_x,
        maximal_y,
        rhs_core,
        ratio,
    })
}

pub(crate) fn same_size(form: &GraphDirichletForm, space: &FiniteMetricMeasureSpace) -> Result<()> {
    if form.len() == space.len() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "graph has {} vertices but the space has {} points",
            form.len(),
            space.len()
        )))
    }
}
