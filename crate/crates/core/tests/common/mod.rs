#![allow(dead_code, clippy::too_many_arguments)]

use std::collections::VecDeque;

/// Exhaustive search over simple ε-chains from `x`: `(min length sum, min hops)` per endpoint.
pub fn brute_force_chains(dist: &[Vec<f64>], eps: f64, x: usize) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = dist.len();
    let mut best_len = vec![f64::INFINITY; n];
    let mut best_hops: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    fn walk(
        dist: &[Vec<f64>],
        eps: f64,
        at: usize,
        len: f64,
        hops: usize,
        used: &mut [bool],
        best_len: &mut [f64],
        best_hops: &mut [Option<usize>],
    ) {
        if len < best_len[at] {
            best_len[at] = len;
        }
        if best_hops[at].is_none_or(|h| hops < h) {
            best_hops[at] = Some(hops);
        }
        for next in 0..dist.len() {
            if !used[next] && dist[at][next] < eps {
                used[next] = true;
                walk(dist, eps, next, len + dist[at][next], hops + 1, used, best_len, best_hops);
                used[next] = false;
            }
        }
    }
    used[x] = true;
    walk(dist, eps, x, 0.0, 0, &mut used, &mut best_len, &mut best_hops);
    (best_len, best_hops)
}

/// Hop distances by breadth-first search on an adjacency list.
pub fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; adj.len()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if d[v].is_none() {
                d[v] = Some(d[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    d
}

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// `ln(e^{-z} I_n(z))` from the power series, summed in log space.
pub fn ln_scaled_bessel_i(n: usize, z: f64) -> f64 {
    let lh = (z / 2.0).ln();
    let term = |j: usize| (2 * j + n) as f64 * lh - ln_factorial(j) - ln_factorial(j + n);
    let peak = ((-(n as f64) + ((n * n) as f64 + z * z).sqrt()) / 2.0).floor() as usize;
    let top = term(peak);
    let mut s = 0.0;
    for j in 0..peak + 60 + (4.0 * z) as usize {
        let t = term(j) - top;
        if t > -745.0 {
            s += t.exp();
        }
    }
    top + s.ln() - z
}

/// Heat kernel of the unit-conductance cycle `C_n` with unit measure:
/// `p_t(0, d) = Σ_k e^{-2t} I_{|d + k n|}(2t)`.
pub fn cycle_kernel(n: usize, t: f64, d: usize) -> f64 {
    let mut s = 0.0;
    for k in -3i64..=3 {
        let m = (d as i64 + k * n as i64).unsigned_abs() as usize;
        s += ln_scaled_bessel_i(m, 2.0 * t).exp();
    }
    s
}

/// Array-based Dijkstra on the strict proximity graph `d < eps`.
pub fn dense_dijkstra(dist: &[Vec<f64>], eps: f64, s: usize) -> Vec<f64> {
    let n = dist.len();
    let mut d = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    d[s] = 0.0;
    for _ in 0..n {
        let Some(u) = (0..n).filter(|&i| !done[i] && d[i].is_finite()).min_by(|&a, &b| d[a].total_cmp(&d[b]))
        else {
            break;
        };
        done[u] = true;
        for v in 0..n {
            if dist[u][v] < eps && d[u] + dist[u][v] < d[v] {
                d[v] = d[u] + dist[u][v];
            }
        }
    }
    d
}

/// Hop counts on the strict proximity graph `d < eps`.
pub fn proximity_hops(dist: &[Vec<f64>], eps: f64, s: usize) -> Vec<Option<usize>> {
    let adj: Vec<Vec<usize>> = dist
        .iter()
        .enumerate()
        .map(|(i, row)| (0..row.len()).filter(|&j| j != i && row[j] < eps).collect())
        .collect();
    bfs(&adj, s)
}

pub fn matrix(space: &chainkit::space::FiniteMetricMeasureSpace) -> Vec<Vec<f64>> {
    (0..space.len()).map(|i| space.row(i).to_vec()).collect()
}

/// Random Euclidean or snowflaked point sets with 2 to 9 points.
pub fn random_small_space(rng: &mut rand::rngs::StdRng) -> chainkit::space::FiniteMetricMeasureSpace {
    use chainkit::space::{build_space, MetricSpec, SpaceSpec};
    use rand::Rng;
    let n = rng.gen_range(2..=9);
    let dim = rng.gen_range(1..=3);
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(0.0..10.0)).collect())
        .collect();
    let metric = if rng.gen_bool(0.5) {
        MetricSpec::Euclidean(coords)
    } else {
        MetricSpec::Snowflake {
            coords,
            beta: rng.gen_range(2.0..4.0),
        }
    };
    build_space(SpaceSpec::new(metric)).expect("random points are distinct")
}

/// Checks Dijkstra and BFS chain quantities against [`brute_force_chains`]
/// on `instances` random spaces; returns the number of compared pairs.
pub fn brute_force_campaign(seed: u64, instances: usize) -> Result<usize, String> {
    use chainkit::chain::ProximityIndex;
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut compared = 0usize;
    for k in 0..instances {
        let space = random_small_space(&mut rng);
        let dist = matrix(&space);
        let distances = space.distinct_distances();
        let eps = [
            distances[rng.gen_range(0..distances.len())],
            rng.gen_range(0.5..space.diameter() * 1.1 + 1.0),
            space.diameter() * 2.0,
        ];
        for &e in &eps {
            let index = ProximityIndex::new(&space, e).map_err(|err| err.to_string())?;
            for x in 0..space.len() {
                let (len, hops) = brute_force_chains(&dist, e, x);
                let sc = index.shortest_from(x).map_err(|err| err.to_string())?;
                let hc = index.hops_from(x).map_err(|err| err.to_string())?;
                for y in 0..space.len() {
                    compared += 1;
                    if hc.hops[y] != hops[y] {
                        return Err(format!("instance {k}: N_eps({x},{y}) at eps={e}: {:?} vs {:?}", hc.hops[y], hops[y]));
                    }
                    let same = if len[y].is_finite() {
                        (sc.dist[y] - len[y]).abs() <= 1e-12 * len[y].max(1e-300) || sc.dist[y] == len[y]
                    } else {
                        sc.dist[y].is_infinite()
                    };
                    if !same {
                        return Err(format!("instance {k}: d_eps({x},{y}) at eps={e}: {} vs {}", sc.dist[y], len[y]));
                    }
                }
            }
        }
    }
    Ok(compared)
}
