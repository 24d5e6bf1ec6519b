//! ε-nets, Voronoi cells, partitions of unity and the replay of the main
//! chain estimate on graph-backed spaces.

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ProximityIndex;
use crate::dirichlet::{same_size, truncated_maximal, two_point_check, GraphDirichletForm, TwoPointReport};
use crate::error::{Error, Result};
use crate::scale::ScaleFunction;
use crate::space::FiniteMetricMeasureSpace;

/// A maximal ε-separated set with its Voronoi assignment.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonNet {
    pub epsilon: f64,
    pub members: Vec<usize>,
    pub include: Vec<usize>,
    /// Owning member of each point; ties go to the smallest member id.
    pub voronoi: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NetCertificate {
    pub separated: bool,
    pub covering: bool,
    pub voronoi_inclusion: bool,
    pub min_separation: f64,
    pub max_cover_distance: f64,
}

impl NetCertificate {
    pub fn ok(&self) -> bool {
        self.separated && self.covering && self.voronoi_inclusion
    }
}

/// Greedy net: the include set first, then every point in ascending id order
/// that is at distance `>= ε` from all current members.
pub fn build_net(space: &FiniteMetricMeasureSpace, epsilon: f64, include: &[usize]) -> Result<EpsilonNet> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("ε must be positive, got {epsilon}")));
    }
    let mut members: Vec<usize> = Vec::new();
    for &a in include {
        space.check_id(a)?;
        if members.contains(&a) {
            continue;
        }
        if let Some(&b) = members.iter().find(|&&b| space.d(a, b) < epsilon) {
            return Err(Error::IncludeNotSeparated {
                a: b,
                b: a,
                dist: space.d(a, b),
                eps: epsilon,
            });
        }
        members.push(a);
    }
    let include = members.clone();
    for p in 0..space.len() {
        if members.iter().all(|&m| space.d(p, m) >= epsilon) {
            members.push(p);
        }
    }
    members.sort_unstable();
    let voronoi = voronoi_assign(space, &members);
    Ok(EpsilonNet {
        epsilon,
        members,
        include,
        voronoi,
    })
}

/// Nearest member of each point, ties to the smallest member id.
pub fn voronoi_assign(space: &FiniteMetricMeasureSpace, members: &[usize]) -> Vec<usize> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    (0..space.len())
        .into_par_iter()
        .map(|p| {
            let mut best = (f64::INFINITY, usize::MAX);
            for &z in &sorted {
                let d = space.d(p, z);
                if d < best.0 {
                    best = (d, z);
                }
            }
            best.1
        })
        .collect()
}

impl EpsilonNet {
    pub fn is_member(&self, p: usize) -> bool {
        self.members.binary_search(&p).is_ok()
    }

    /// Points of the Voronoi cell `R_z`.
    pub fn cell(&self, z: usize) -> Vec<usize> {
        (0..self.voronoi.len()).filter(|&p| self.voronoi[p] == z).collect()
    }

    /// Exhaustive check of separation, covering and `B(z,ε/2) ⊆ R_z ⊆ B̄(z,ε)`.
    pub fn certify(&self, space: &FiniteMetricMeasureSpace) -> NetCertificate {
        let eps = self.epsilon;
        let mut min_sep = f64::INFINITY;
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                min_sep = min_sep.min(space.d(a, b));
            }
        }
        let max_cover = (0..space.len())
            .map(|p| space.d(p, self.voronoi[p]))
            .fold(0.0, f64::max);
        let inclusion = (0..space.len()).all(|p| {
            let owner = self.voronoi[p];
            let inner_ok = self
                .members
                .iter()
                .all(|&z| space.d(p, z) >= eps / 2.0 || z == owner);
            inner_ok && space.d(p, owner) <= eps
        });
        NetCertificate {
            separated: min_sep >= eps,
            covering: max_cover < eps,
            voronoi_inclusion: inclusion,
            min_separation: min_sep,
            max_cover_distance: max_cover,
        }
    }
}

/// The family `ψ_z = φ_z / Σ_w φ_w` with
/// `φ_z(p) = max(0, 1 - dist(p, R_z) / (ε/4))`.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionOfUnity {
    pub epsilon: f64,
    pub members: Vec<usize>,
    /// `psi[k][p] = ψ_{members[k]}(p)`.
    pub psi: Vec<Vec<f64>>,
    pub energies: Vec<f64>,
    /// `E(ψ_z, ψ_z) Ψ(ε) / m(B(z, ε))` per member.
    pub energy_ratios: Vec<f64>,
    pub max_energy_ratio: f64,
    pub sum_error: f64,
    pub plateau_ok: bool,
    pub support_ok: bool,
    pub disjoint_ok: bool,
}

impl PartitionOfUnity {
    pub fn holds(&self) -> bool {
        self.sum_error <= 1e-12 && self.plateau_ok && self.support_ok && self.disjoint_ok
    }

    pub fn value(&self, k: usize, p: usize) -> f64 {
        self.psi[k][p]
    }
}

pub fn build_partition(
    form: &GraphDirichletForm,
    space: &FiniteMetricMeasureSpace,
    net: &EpsilonNet,
    psi_scale: &ScaleFunction,
) -> Result<PartitionOfUnity> {
    same_size(form, space)?;
    let n = space.len();
    let eps = net.epsilon;
    let quarter = eps / 4.0;
    let phi: Vec<Vec<f64>> = net
        .members
        .par_iter()
        .map(|&z| {
            let cell = net.cell(z);
            (0..n)
                .map(|p| {
                    let dist = cell.iter().map(|&q| space.d(p, q)).fold(f64::INFINITY, f64::min);
                    (1.0 - dist / quarter).max(0.0)
                })
                .collect()
        })
        .collect();
    let mut total = vec![0.0; n];
    for row in &phi {
        for (t, v) in total.iter_mut().zip(row) {
            *t += v;
        }
    }
    if let Some(p) = total.iter().position(|&t| !(t > 0.0)) {
        return Err(Error::Internal(format!("partition denominator vanishes at point {p}")));
    }
    let psi: Vec<Vec<f64>> = phi
        .iter()
        .map(|row| row.iter().zip(&total).map(|(v, t)| v / t).collect())
        .collect();
    let sum_error = (0..n)
        .map(|p| (psi.iter().map(|row| row[p]).sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    let mut plateau_ok = true;
    let mut support_ok = true;
    let mut disjoint_ok = true;
    for (k, &z) in net.members.iter().enumerate() {
        for (p, &v) in psi[k].iter().enumerate() {
            let d = space.d(p, z);
            if d < quarter && v != 1.0 {
                plateau_ok = false;
            }
            if d >= 1.25 * eps && v != 0.0 {
                support_ok = false;
            }
        }
        for (j, _) in net.members.iter().enumerate().filter(|&(j, _)| j != k) {
            if (0..n).any(|p| space.d(p, z) < quarter && psi[j][p] != 0.0) {
                disjoint_ok = false;
            }
        }
    }
    let scale = psi_scale.eval(eps)?;
    let energies: Vec<f64> = psi.iter().map(|row| form.energy(row)).collect();
    let energy_ratios: Vec<f64> = net
        .members
        .iter()
        .zip(&energies)
        .map(|(&z, &e)| e * scale / space.volume(z, eps))
        .collect();
    Ok(PartitionOfUnity {
        epsilon: eps,
        members: net.members.clone(),
        max_energy_ratio: energy_ratios.iter().copied().fold(0.0, f64::max),
        psi,
        energies,
        energy_ratios,
        sum_error,
        plateau_ok,
        support_ok,
        disjoint_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub x: usize,
    pub y: usize,
    pub epsilon: f64,
    pub epsilon_prime: f64,
    pub d: f64,
    pub big_r: f64,
    pub net_size: usize,
    pub n_eps: usize,
    /// `(z, û(z))` with `û(z) = N_ε(x, z)`.
    pub u_hat: Vec<(usize, usize)>,
    pub u_hat_x: usize,
    pub u_hat_y: usize,
    pub lipschitz_pairs: usize,
    pub lipschitz_ok: bool,
    /// `u ≡ û(z)` on every `B(z, ε'/4)`.
    pub plateau_ok: bool,
    /// `max_z Γ(u,u)(B(z, ε'/4))`; zero only for strongly local forms.
    pub plateau_energy_max: f64,
    pub partition_energy_ratio: f64,
    pub u: Vec<f64>,
    pub energy_measure: Vec<f64>,
    /// `max_{z in V} M_R Γ(u,u)(z)`.
    pub max_maximal: f64,
    pub argmax_member: usize,
    /// `Ψ(ε) · max_{z in V} M_R Γ(u,u)(z)`.
    pub c3: f64,
    pub two_point: TwoPointReport,
    /// `N_ε² Ψ(ε) / Ψ(d)`.
    pub c_direct: f64,
    /// `2 · two-point ratio · c3 · Ψ(R) / Ψ(d)`, the constant recovered through the chain of estimates.
    pub c_chain: f64,
    pub recovered_ok: bool,
}

/// Rebuilds the test function `u = Σ_z N_ε(x, z) ψ_z` over an `ε/3`-net
/// containing `x` and `y` and evaluates each bound along the way.
/// `big_r` defaults to `2 d(x, y)`.
pub fn proof_replay(
    form: &GraphDirichletForm,
    space: &FiniteMetricMeasureSpace,
    psi: &ScaleFunction,
    x: usize,
    y: usize,
    epsilon: f64,
    big_r: Option<f64>,
) -> Result<ReplayReport> {
    same_size(form, space)?;
    space.check_id(x)?;
    space.check_id(y)?;
    let d = space.d(x, y);
    if !(epsilon > 0.0) || epsilon > d {
        return Err(Error::Hypothesis(format!(
            "replay needs 0 < ε <= d(x, y) = {d}, got ε = {epsilon}"
        )));
    }
    let eps_prime = epsilon / 3.0;
    let big_r = big_r.unwrap_or(2.0 * d);
    let net = build_net(space, eps_prime, &[x, y])?;
    let hops = ProximityIndex::new(space, epsilon)?.hops_from(x)?;
    let mut u_hat = Vec::with_capacity(net.members.len());
    for &z in &net.members {
        let h = hops.hops[z].ok_or_else(|| {
            Error::Disconnected(format!("no ε-chain from {x} to net member {z} at ε = {epsilon}"))
        })?;
        u_hat.push((z, h));
    }
    let mut lipschitz_pairs = 0;
    for (i, &(a, ua)) in u_hat.iter().enumerate() {
        for &(b, ub) in &u_hat[i + 1..] {
            if space.d(a, b) < epsilon {
                lipschitz_pairs += 1;
                if ua.abs_diff(ub) > 1 {
                    return Err(Error::Internal(format!(
                        "|û({a}) - û({b})| = {} > 1 for d < ε",
                        ua.abs_diff(ub)
                    )));
                }
            }
        }
    }
    let partition = build_partition(form, space, &net, psi)?;
    let n = space.len();
    let mut u = vec![0.0; n];
    for (k, &(_, h)) in u_hat.iter().enumerate() {
        for (up, &w) in u.iter_mut().zip(&partition.psi[k]) {
            *up += h as f64 * w;
        }
    }
    let gamma = form.energy_measure(&u);
    let mut plateau_ok = true;
    let mut plateau_energy_max = 0.0f64;
    for &(z, h) in &u_hat {
        let ball = space.ball(z, eps_prime / 4.0)?;
        plateau_ok &= ball.iter().all(|&p| u[p] == h as f64);
        plateau_energy_max = plateau_energy_max.max(gamma.of_set(&ball));
    }
    let maximal: Vec<f64> = net
        .members
        .par_iter()
        .map(|&z| truncated_maximal(space, &gamma.density, z, big_r))
        .collect::<Result<_>>()?;
    let (k_max, &max_maximal) = maximal
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("net is nonempty");
    let psi_eps = psi.eval(epsilon)?;
    let psi_d = psi.eval(d)?;
    let c3 = psi_eps * max_maximal;
    let two_point = two_point_check(form, space, psi, &u, x, y, big_r)?;
    let n_eps = hops.hops[y].expect("y is a net member");
    let c_direct = (n_eps as f64).powi(2) * psi_eps / psi_d;
    let c_chain = 2.0 * two_point.ratio * c3 * psi.eval(big_r)? / psi_d;
    Ok(ReplayReport {
        x,
        y,
        epsilon,
        epsilon_prime: eps_prime,
        d,
        big_r,
        net_size: net.members.len(),
        n_eps,
        u_hat_x: 0,
        u_hat_y: n_eps,
        u_hat,
        lipschitz_pairs,
        lipschitz_ok: true,
        plateau_ok,
        plateau_energy_max,
        partition_energy_ratio: partition.max_energy_ratio,
        u,
        energy_measure: gamma.density,
        max_maximal,
        argmax_member: net.members[k_max],
        c3,
        two_point,
        recovered_ok: c_direct <= c_chain * (1.0 + 1e-12),
        c_direct,
        c_chain,
    })
}
