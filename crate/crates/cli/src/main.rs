mod args;

use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use chainkit::chain::{chain_sandwich_check, main_inequality_scan, ChainAnalysis, ProximityIndex};
use chainkit::dirichlet::GraphDirichletForm;
use chainkit::heat::{
    exit_time_walk_dimension, heat_kernel, sierpinski_gasket_graph, sub_gaussian_fit, FitConfig,
};
use chainkit::net::{build_net, build_partition, proof_replay};
use chainkit::report::{to_json_string, write_json};
use chainkit::scale::{PhiTransform, ScaleFunction};
use chainkit::space::FiniteMetricMeasureSpace;
use chainkit::suites::{gasket_centers, geodesic_space, geometric, run_suite, SUITES};

use args::*;

const EXIT_INPUT: u8 = 1;
const EXIT_VERIFY: u8 = 2;

enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Self::Passed
        } else {
            Self::Failed
        }
    }
}

struct Out {
    json_only: bool,
}

impl Out {
    fn say(&self, line: impl AsRef<str>) {
        if !self.json_only {
            println!("{}", line.as_ref());
        }
    }

    /// Writes `{config, result}` to `path`; prints it in JSON-only mode.
    fn emit(&self, path: Option<&Path>, config: &Value, result: Value) -> Result<()> {
        let report = json!({ "config": config, "result": result });
        if let Some(p) = path {
            write_json(p, &report).with_context(|| format!("cannot write report `{}`", p.display()))?;
            self.say(format!("report written to {}", p.display()));
        }
        if self.json_only {
            print!("{}", to_json_string(&report)?);
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_INPUT);
    }
    match run(&cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let threads = match flag {
        Some(n) => Some(n),
        None => match std::env::var("CHAINKIT_THREADS") {
            Ok(v) => Some(v.trim().parse().with_context(|| format!("CHAINKIT_THREADS=`{v}` is not a count"))?),
            Err(_) => None,
        },
    };
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    let out = Out {
        json_only: cli.json_only,
    };
    let config = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": serde_json::to_value(&cli.command)?,
    });
    match &cli.command {
        Command::Chain(a) => chain(&out, &config, a),
        Command::Net(a) => net(&out, &config, a),
        Command::Replay(a) => replay(&out, &config, a),
        Command::Dirichlet(DirichletCommand::Cap(a)) => capacity(&out, &config, a),
        Command::Heat(a) => heat(&out, &config, a),
        Command::Gasket(a) => gasket(&out, &config, a),
        Command::Scale(c) => scale(&out, &config, c),
        Command::VerifyAll(a) => verify(&out, &config, a),
    }
}

fn load_graph(path: &Path, vertices: Option<&Path>) -> Result<GraphDirichletForm> {
    GraphDirichletForm::load_csv(path, vertices)
        .with_context(|| format!("cannot load graph `{}`", path.display()))
}

fn load_space(src: &SpaceSource) -> Result<(FiniteMetricMeasureSpace, Option<GraphDirichletForm>)> {
    match (&src.space, &src.graph) {
        (Some(p), _) => {
            let s = FiniteMetricMeasureSpace::load_json(p)
                .with_context(|| format!("cannot load space `{}`", p.display()))?;
            Ok((s, None))
        }
        (None, Some(g)) => {
            let form = load_graph(g, src.vertices.as_deref())?;
            Ok((geodesic_space(&form)?, Some(form)))
        }
        (None, None) => anyhow::bail!("either --space or --graph is required"),
    }
}

fn parse_psi(spec: &str) -> Result<ScaleFunction> {
    ScaleFunction::parse(spec).with_context(|| format!("invalid Ψ spec `{spec}`"))
}

fn fmt(x: f64) -> String {
    format!("{x:.10}")
        .trim_end_matches('0')
        .trim_end_matches('.')
        .to_string()
}

fn chain(out: &Out, config: &Value, a: &ChainArgs) -> Result<Outcome> {
    let (space, _) = load_space(&a.source)?;
    let n = space.len();
    let pairs: Vec<(usize, usize)> = match &a.pairs {
        PairSelector::All => (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect(),
        PairSelector::List(p) => p.clone(),
    };
    for &(x, y) in &pairs {
        space.check_id(x)?;
        space.check_id(y)?;
    }
    let explicit = matches!(a.pairs, PairSelector::List(_));
    let mut ok = true;
    let mut analyses: Vec<ChainAnalysis> = Vec::new();
    let mut sandwich_violations = 0usize;
    for &eps in &a.eps {
        let index = ProximityIndex::new(&space, eps)?;
        for &(x, y) in &pairs {
            let an = index.analyze(x, y)?;
            if !an.verify_witnesses(&space) {
                ok = false;
            }
            if an.is_finite() && !chain_sandwich_check(&an)? {
                sandwich_violations += 1;
            }
            if explicit {
                let n_eps = an.n_eps.map_or("∞".into(), |k| k.to_string());
                out.say(format!(
                    "ε={} ({x},{y}): d={} d_ε={} N_ε={n_eps}",
                    fmt(eps),
                    fmt(an.d),
                    fmt(an.d_eps)
                ));
            }
            if explicit || a.witnesses {
                analyses.push(an);
            }
        }
    }
    ok &= sandwich_violations == 0;
    out.say(format!(
        "{} pair(s) × {} ε: sandwich violations {sandwich_violations}",
        pairs.len(),
        a.eps.len()
    ));
    let scan = match &a.psi {
        Some(spec) => {
            let psi = parse_psi(spec)?;
            let scan = main_inequality_scan(&space, &psi, &pairs, &a.eps, a.min_separation)?;
            out.say(format!(
                "main inequality: {} scanned, ratio in [{}, {}]",
                scan.scanned,
                fmt(scan.min_ratio),
                fmt(scan.worst_ratio)
            ));
            for row in &scan.trend {
                out.say(format!(
                    "  ε={} max Ψ(ε)d_ε/ε = {} over {} pair(s)",
                    fmt(row.epsilon),
                    fmt(row.functional),
                    row.pairs
                ));
            }
            Some(scan)
        }
        None => None,
    };
    out.emit(
        a.report.as_deref(),
        config,
        json!({
            "passed": ok,
            "sandwich_violations": sandwich_violations,
            "analyses": analyses,
            "scan": scan,
        }),
    )?;
    Ok(Outcome::from_ok(ok))
}

fn net(out: &Out, config: &Value, a: &NetArgs) -> Result<Outcome> {
    let (space, form) = load_space(&a.source)?;
    let net = build_net(&space, a.eps, &a.include)?;
    out.say(format!("{} member(s): {:?}", net.members.len(), net.members));
    let mut ok = true;
    let certificate = if a.certify {
        let c = net.certify(&space);
        out.say(format!("certificate: {}", if c.ok() { "ok" } else { "FAILED" }));
        ok &= c.ok();
        Some(c)
    } else {
        None
    };
    let partition = match (&form, &a.psi) {
        (Some(form), Some(spec)) => {
            let p = build_partition(form, &space, &net, &parse_psi(spec)?)?;
            out.say(format!(
                "partition of unity: sum error {:e}, max energy ratio {}",
                p.sum_error,
                fmt(p.max_energy_ratio)
            ));
            ok &= p.holds();
            Some(p)
        }
        _ => None,
    };
    out.emit(
        a.report.as_deref(),
        config,
        json!({ "passed": ok, "net": net, "certificate": certificate, "partition": partition }),
    )?;
    Ok(Outcome::from_ok(ok))
}

fn replay(out: &Out, config: &Value, a: &ReplayArgs) -> Result<Outcome> {
    let form = load_graph(&a.source.graph, a.source.vertices.as_deref())?;
    let space = geodesic_space(&form)?;
    let psi = parse_psi(&a.psi)?;
    let r = proof_replay(&form, &space, &psi, a.x, a.y, a.eps, a.radius)?;
    let ok = r.lipschitz_ok && r.recovered_ok;
    out.say(format!("net size {} at ε' = {}", r.net_size, fmt(r.epsilon_prime)));
    out.say(format!("unit-Lipschitz û over {} pair(s): {}", r.lipschitz_pairs, r.lipschitz_ok));
    out.say(format!("Ψ(ε)·max M_R Γ(u,u) = {}", fmt(r.c3)));
    out.say(format!(
        "N_ε = {}; N_ε² ≤ C Ψ(d)/Ψ(ε) with C = {} (chain of estimates gives {})",
        r.n_eps,
        fmt(r.c_direct),
        fmt(r.c_chain)
    ));
    out.emit(a.report.as_deref(), config, json!({ "passed": ok, "replay": r }))?;
    Ok(Outcome::from_ok(ok))
}

fn capacity(out: &Out, config: &Value, a: &CapArgs) -> Result<Outcome> {
    let form = load_graph(&a.source.graph, a.source.vertices.as_deref())?;
    let cap = form.capacity(&a.a, &a.b)?;
    out.say(format!("capacity {}", fmt(cap.value)));
    out.emit(a.report.as_deref(), config, json!({ "capacity": cap }))?;
    Ok(Outcome::Passed)
}

fn heat(out: &Out, config: &Value, a: &HeatArgs) -> Result<Outcome> {
    let form = load_graph(&a.source.graph, a.source.vertices.as_deref())?;
    let table = heat_kernel(&form, &a.times)?;
    if let Some(p) = &a.out {
        table
            .write_csv(p)
            .with_context(|| format!("cannot write `{}`", p.display()))?;
        out.say(format!("kernels written to {}", p.display()));
    }
    let inv = table.check_invariants()?;
    for row in &inv.rows {
        out.say(format!(
            "t={}: symmetry {:e} stochasticity {:e} semigroup {:e} min {:e}",
            fmt(row.time),
            row.symmetry_error,
            row.stochastic_error,
            row.semigroup_error,
            row.min_value
        ));
    }
    let ok = inv.ok();
    out.emit(a.report.as_deref(), config, json!({ "passed": ok, "invariants": inv }))?;
    Ok(Outcome::from_ok(ok))
}

fn gasket(out: &Out, config: &Value, a: &GasketArgs) -> Result<Outcome> {
    let g = sierpinski_gasket_graph(a.level)?;
    out.say(format!(
        "level {}: {} vertices, {} edges",
        a.level,
        g.form.len(),
        g.form.edges().len()
    ));
    if let Some(p) = &a.out {
        g.form
            .write_edges_csv(p)
            .with_context(|| format!("cannot write `{}`", p.display()))?;
    }
    if let Some(p) = &a.vertices_out {
        g.form
            .write_vertices_csv(p)
            .with_context(|| format!("cannot write `{}`", p.display()))?;
    }
    let mut result = json!({
        "level": a.level,
        "vertices": g.form.len(),
        "edges": g.form.edges().len(),
        "corners": g.corners,
    });
    if a.fit {
        let space = geodesic_space(&g.form)?;
        let times = if a.times.is_empty() { geometric(5.0, 600.0, 9) } else { a.times.clone() };
        let centers = if a.centers.is_empty() { gasket_centers(&g) } else { a.centers.clone() };
        let radii = if a.radii.is_empty() {
            let s = (1u64 << a.level) as f64 / 32.0;
            [1.0, 2.0, 4.0, 8.0].iter().map(|k| k * s).filter(|&r| r >= 1.0).collect()
        } else {
            a.radii.clone()
        };
        let table = heat_kernel(&g.form, &times)?;
        let fit = sub_gaussian_fit(&table, &space, &centers, &FitConfig::default())?;
        let exit = exit_time_walk_dimension(&g.form, &space, &centers, &radii)?;
        out.say(format!(
            "sub-Gaussian fit β = {} (c = {}, prefactors [{}, {}])",
            fmt(fit.beta),
            fmt(fit.c_exponent),
            fmt(fit.c_lower),
            fmt(fit.c_upper)
        ));
        out.say(format!("exit-time β = {}", fmt(exit.beta_hat)));
        if let Some(p) = &a.curve {
            let mut w = String::from("beta,residual\n");
            for (b, r) in &fit.residual_curve {
                w.push_str(&format!("{b:.16e},{r:.16e}\n"));
            }
            std::fs::write(p, w).with_context(|| format!("cannot write `{}`", p.display()))?;
        }
        result["centers"] = json!(centers);
        result["fit"] = json!(fit);
        result["exit"] = json!(exit);
    }
    out.emit(a.report.as_deref(), config, result)?;
    Ok(Outcome::Passed)
}

fn scale(out: &Out, config: &Value, c: &ScaleCommand) -> Result<Outcome> {
    let mut ok = true;
    let result = match c {
        ScaleCommand::Phi { psi, s, numeric } => {
            let f = parse_psi(psi)?;
            let phi = if *numeric { PhiTransform::numeric(f) } else { PhiTransform::new(f) };
            let vals = s.iter().map(|&v| phi.eval(v)).collect::<chainkit::Result<Vec<_>>>()?;
            vals.iter().for_each(|v| out.say(fmt(*v)));
            json!({ "s": s, "phi": vals, "method": phi.method() })
        }
        ScaleCommand::Psi { psi, r } => {
            let f = parse_psi(psi)?;
            let vals = r.iter().map(|&v| f.eval(v)).collect::<chainkit::Result<Vec<_>>>()?;
            vals.iter().for_each(|v| out.say(fmt(*v)));
            json!({ "r": r, "psi": vals })
        }
        ScaleCommand::Inverse { psi, v } => {
            let f = parse_psi(psi)?;
            let vals = v.iter().map(|&x| f.eval_inverse(x)).collect::<chainkit::Result<Vec<_>>>()?;
            vals.iter().for_each(|x| out.say(fmt(*x)));
            json!({ "v": v, "inverse": vals })
        }
        ScaleCommand::Regularity { psi, window, ppd, c2 } => {
            let phi = PhiTransform::new(parse_psi(psi)?);
            let cert = phi.verify_regularity((window.0, window.1), *ppd, *c2)?;
            out.say(format!("Φ regularity: best C₂ = {} ({})", fmt(cert.best_c), if cert.ok { "ok" } else { "FAILED" }));
            ok = cert.ok;
            json!(cert)
        }
        ScaleCommand::Walkdim { psi, diam, window, ppd, cap } => {
            let f = parse_psi(psi)?;
            let cert = f.walk_dimension_lower_check(*diam, (window.0, window.1), *ppd, *cap)?;
            out.say(format!(
                "walk dimension ≥ 2: {} (C₁ = {})",
                if cert.ok { "accepted" } else { "rejected" },
                fmt(cert.c1)
            ));
            ok = cert.ok;
            json!(cert)
        }
    };
    out.emit(None, config, result)?;
    Ok(Outcome::from_ok(ok))
}

fn verify(out: &Out, config: &Value, a: &VerifyArgs) -> Result<Outcome> {
    let names: Vec<String> = if a.suite.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        a.suite.clone()
    };
    for name in &names {
        if !SUITES.contains(&name.as_str()) {
            anyhow::bail!("unknown suite `{name}`; expected one of {}", SUITES.join(", "));
        }
    }
    let mut reports = Vec::new();
    for name in &names {
        let r = run_suite(name)?;
        out.say(format!(
            "[{}] {name} ({:.1} s)",
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds
        ));
        for check in &r.checks {
            out.say(format!("  [{}] {}", if check.passed { "pass" } else { "FAIL" }, check.name));
        }
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.passed);
    out.emit(a.report.as_deref(), config, json!({ "passed": ok, "suites": reports }))?;
    Ok(Outcome::from_ok(ok))
}
