use chainkit::chain::ProximityIndex;
use chainkit::dirichlet::{Edge, GraphDirichletForm};
use chainkit::scale::{PhiTransform, ScaleFunction};
use chainkit::space::{build_space, FiniteMetricMeasureSpace, MetricSpec, SpaceSpec};
use proptest::prelude::*;

fn points(max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=3).prop_flat_map(move |dim| {
        prop::collection::vec(prop::collection::vec(-5.0f64..5.0, dim), 2..=max)
    })
}

fn space_strategy() -> impl Strategy<Value = FiniteMetricMeasureSpace> {
    let distinct = points(12).prop_filter("distinct points", |pts| {
        pts.iter().enumerate().all(|(i, p)| pts[..i].iter().all(|q| p != q))
    });
    (distinct, prop::option::of(2.0f64..4.0)).prop_map(|(coords, beta)| {
        let metric = match beta {
            Some(beta) => MetricSpec::Snowflake { coords, beta },
            None => MetricSpec::Euclidean(coords),
        };
        build_space(SpaceSpec::new(metric)).expect("valid space")
    })
}

/// Connected graph: a random spanning path plus extra random edges.
fn graph_strategy() -> impl Strategy<Value = GraphDirichletForm> {
    (3usize..10)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(0.2f64..4.0, n - 1),
                prop::collection::vec((0..n, 0..n, 0.2f64..4.0), 0..8),
                prop::collection::vec(0.5f64..3.0, n),
            )
        })
        .prop_map(|(n, path, extra, measure)| {
            let mut edges: Vec<Edge> = path
                .iter()
                .enumerate()
                .map(|(i, &c)| Edge { u: i, v: i + 1, conductance: c, length: 1.0 })
                .collect();
            edges.extend(
                extra
                    .into_iter()
                    .filter(|(u, v, _)| u != v)
                    .map(|(u, v, c)| Edge { u, v, conductance: c, length: 1.0 }),
            );
            GraphDirichletForm::new(n, edges, Some(measure)).expect("valid form")
        })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_axioms(space in space_strategy()) {
        let n = space.len();
        for x in 0..n {
            prop_assert_eq!(space.d(x, x), 0.0);
            for y in 0..n {
                prop_assert!(space.d(x, y) >= 0.0);
                prop_assert_eq!(space.d(x, y), space.d(y, x));
                for z in 0..n {
                    prop_assert!(space.d(x, z) <= (space.d(x, y) + space.d(y, z)) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn chain_metric_dominates_and_decreases_in_eps(space in space_strategy(), a in 0.1f64..3.0, b in 0.1f64..3.0) {
        let (e1, e2) = if a < b { (a, b) } else { (b, a) };
        let small = ProximityIndex::new(&space, e1).unwrap();
        let large = ProximityIndex::new(&space, e2).unwrap();
        for x in 0..space.len() {
            let ds = small.shortest_from(x).unwrap().dist;
            let dl = large.shortest_from(x).unwrap().dist;
            for y in 0..space.len() {
                prop_assert!(dl[y] >= space.d(x, y) * (1.0 - 1e-12));
                prop_assert!(dl[y] <= ds[y] * (1.0 + 1e-12) || ds[y].is_infinite());
            }
        }
    }

    #[test]
    fn chain_metric_is_a_metric_on_components(space in space_strategy(), eps in 0.5f64..4.0) {
        let index = ProximityIndex::new(&space, eps).unwrap();
        let n = space.len();
        let rows: Vec<Vec<f64>> = (0..n).map(|x| index.shortest_from(x).unwrap().dist).collect();
        for x in 0..n {
            prop_assert_eq!(rows[x][x], 0.0);
            for y in 0..n {
                prop_assert!(close(rows[x][y], rows[y][x], 1e-12) || (rows[x][y].is_infinite() && rows[y][x].is_infinite()));
                for z in 0..n {
                    if rows[x][y].is_finite() && rows[y][z].is_finite() {
                        prop_assert!(rows[x][z] <= (rows[x][y] + rows[y][z]) * (1.0 + 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn phi_scaling_and_convexity(beta in 1.3f64..4.0, s in 1e-2f64..1e2, lambda in 0.1f64..10.0) {
        let phi = PhiTransform::new(ScaleFunction::power(beta).unwrap());
        let q = beta / (beta - 1.0);
        let scaled = phi.eval(lambda * s).unwrap();
        prop_assert!(close(scaled, lambda.powf(q) * phi.eval(s).unwrap(), 1e-10));
        let (a, b) = (s, lambda * s);
        let mid = phi.eval(0.5 * (a + b)).unwrap();
        prop_assert!(mid <= 0.5 * (phi.eval(a).unwrap() + phi.eval(b).unwrap()) * (1.0 + 1e-12));
    }

    #[test]
    fn numeric_phi_matches_power_closed_form(beta in 1.3f64..4.0, s in 1e-3f64..1e3) {
        let psi = ScaleFunction::power(beta).unwrap();
        let numeric = PhiTransform::numeric(psi).eval(s).unwrap();
        let exact = (beta - 1.0) * (s / beta).powf(beta / (beta - 1.0));
        prop_assert!((numeric - exact).abs() <= 1e-6 * exact);
    }

    #[test]
    fn energy_measure_product_rule(form in graph_strategy(), seed in prop::collection::vec(-2.0f64..2.0, 20)) {
        let n = form.len();
        let f: Vec<f64> = seed[..n].to_vec();
        let g: Vec<f64> = seed[seed.len() - n..].to_vec();
        let gamma = form.energy_measure(&f);
        let lhs: f64 = g.iter().zip(&gamma.density).map(|(a, b)| a * b).sum();
        let fg: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a * b).collect();
        let f2: Vec<f64> = f.iter().map(|a| a * a).collect();
        let rhs = form.bilinear(&f, &fg) - 0.5 * form.bilinear(&f2, &g);
        prop_assert!(close(lhs, rhs, 1e-10));
        prop_assert!(close(gamma.total, form.energy(&f), 1e-12));
    }

    #[test]
    fn capacity_grows_with_conductance_and_sets(form in graph_strategy(), bump in 1.0f64..3.0) {
        let n = form.len();
        let base = form.capacity(&[0], &[n - 1]).unwrap();
        for &u in &base.potential {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&u));
        }
        let wider = form.capacity(&[0, 1], &[n - 1]).unwrap();
        prop_assert!(wider.value >= base.value * (1.0 - 1e-12));
        let wider_b = form.capacity(&[0], &[n - 2, n - 1]).unwrap();
        prop_assert!(wider_b.value >= base.value * (1.0 - 1e-12));
        let edges: Vec<Edge> = form
            .edges()
            .iter()
            .map(|e| Edge { conductance: e.conductance * bump, ..*e })
            .collect();
        let stiffer = GraphDirichletForm::new(n, edges, Some(form.measure().to_vec())).unwrap();
        let c = stiffer.capacity(&[0], &[n - 1]).unwrap();
        prop_assert!(close(c.value, bump * base.value, 1e-10));
    }

    #[test]
    fn capacity_potential_is_harmonic_inside(form in graph_strategy()) {
        let n = form.len();
        let cap = form.capacity(&[0], &[n - 1]).unwrap();
        let u = &cap.potential;
        for x in 1..n - 1 {
            let avg: f64 = form.neighbors(x).iter().map(|&(y, c, _)| c * u[y]).sum::<f64>() / form.degree(x);
            prop_assert!((avg - u[x]).abs() <= 1e-10);
        }
    }
}
