//! Acceptance run: one pass/fail line per criterion, non-zero exit on failure.

use dimlift::fields::{
    bump_spacetime, caloric_from_grid, caloric_polynomial, circle_map, equator_map, half_space_pair, harmonic_phase,
    harmonic_polynomial, heat_kernel_translate, quadratic, radial_bump, random_points, CaloricKind, GraphSurface,
    HalfSpace, HarmonicKind, NonhomTerm, ScalarField, SpaceTimeField,
};
use dimlift::functionals::*;
use dimlift::integrate::pushforward::{pushforward_check_ball_many, pushforward_check_sphere_many};
use dimlift::integrate::sampling::MonteCarloSpec;
use dimlift::integrate::QuadratureSpec;
use dimlift::weights::weight_limit_report;
use dimlift::{chain_rule_check, LiftConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

type Check = Result<String, String>;

/// Collects failures; the first few go into the criterion line.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn ok(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond {
            self.failures.push(msg());
        }
    }

    fn within(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.ok((got - want).abs() <= tol, || format!("{what}: {got} vs {want} (tol {tol:e})"));
    }

    fn finish(self, summary: String) -> Check {
        if self.failures.is_empty() {
            Ok(format!("{} checks; {summary}", self.checks))
        } else {
            let n = self.failures.len();
            let head: Vec<_> = self.failures.into_iter().take(3).collect();
            Err(format!("{n} of {} checks failed: {}", self.checks, head.join("; ")))
        }
    }
}

fn lib<T>(r: dimlift::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const PHI_NAMES: [&str; 5] = ["1", "x1", "x1^2", "x1^4", "exp(-|x|^2)"];

fn phis() -> Vec<fn(&[f64]) -> f64> {
    vec![
        |_| 1.0,
        |x| x[0],
        |x| x[0] * x[0],
        |x| x[0].powi(4),
        |x| (-x.iter().map(|a| a * a).sum::<f64>()).exp(),
    ]
}

fn criterion_1() -> Check {
    let quad = QuadratureSpec::default();
    let phis = phis();
    let ball_phis: Vec<_> = phis.iter().map(|f| move |x: &[f64], _t: f64| f(x)).collect();
    let mut tally = Tally::default();
    let mut worst_fraction = 1.0f64;
    for ball in [false, true] {
        for d in [1usize, 2] {
            for n in [1usize, 2, 5, 20] {
                let cfg = lib(LiftConfig::new(d, n))?;
                for t in [0.5, 1.0] {
                    let mut agree = [0usize; 5];
                    let mut quad_values = [0.0; 5];
                    for seed in 0..20u64 {
                        let mc = MonteCarloSpec::new(seed, 100_000);
                        let reps = if ball {
                            lib(pushforward_check_ball_many(&ball_phis, cfg, t, &mc, &quad))?
                        } else {
                            lib(pushforward_check_sphere_many(&phis, cfg, t, &mc, &quad))?
                        };
                        for (k, r) in reps.iter().enumerate() {
                            agree[k] += usize::from(r.discrepancy <= 3.0);
                            quad_values[k] = r.quad.value;
                        }
                    }
                    let region = if ball { "ball" } else { "sphere" };
                    for k in 0..5 {
                        let frac = agree[k] as f64 / 20.0;
                        worst_fraction = worst_fraction.min(frac);
                        tally.ok(frac >= 0.95, || {
                            format!("{region} d={d} n={n} t={t} φ={}: {frac} of seeds agree", PHI_NAMES[k])
                        });
                    }
                    let label = format!("{region} d={d} n={n} t={t}");
                    let (one, second) = if ball { (t, t * t) } else { (1.0, 2.0 * t) };
                    tally.within(&format!("{label} φ=1"), quad_values[0], one, 1e-8);
                    tally.within(&format!("{label} φ=x1²"), quad_values[2], second, 1e-8);
                }
            }
        }
    }
    tally.finish(format!("lowest per-configuration agreement {worst_fraction}"))
}

fn criterion_2() -> Check {
    let grid: Vec<Vec<f64>> = (0..201).map(|k| vec![-2.0 + 0.02 * k as f64]).collect();
    let rep = lib(weight_limit_report(1, 1.0, &grid, &[8, 16, 32, 64, 128]))?;
    let mut tally = Tally::default();
    tally.ok(rep.strictly_decreasing(), || format!("errors not decreasing: {:?}", rep.rows));
    tally.ok(rep.ratios_within(1.6, 2.4), || format!("ratios {:?} outside [1.6, 2.4]", rep.ratios));
    tally.finish(format!("ratios {:.3?}", rep.ratios))
}

fn spacetime_catalog(d: usize) -> Result<Vec<Box<dyn SpaceTimeField>>, String> {
    let mut out: Vec<Box<dyn SpaceTimeField>> = [CaloricKind::X1, CaloricKind::X1Sq, CaloricKind::X1Cube, CaloricKind::Radial]
        .into_iter()
        .map(|k| Box::new(caloric_polynomial(k)) as Box<dyn SpaceTimeField>)
        .collect();
    out.push(Box::new(lib(heat_kernel_translate(vec![0.3; d], 8.0))?));
    out.push(Box::new(lib(bump_spacetime(0.5, 2.5, 0.2, 3.0, 4, 0.3))?));
    let axis: Vec<f64> = (0..9).map(|k| -2.0 + 0.5 * k as f64).collect();
    let nodes: Vec<Vec<f64>> = if d == 1 {
        axis.iter().map(|&a| vec![a]).collect()
    } else {
        axis.iter().flat_map(|&a| axis.iter().map(move |&b| vec![a, b])).collect()
    };
    let values = nodes.iter().map(|p| (1.0 + p[0]) * (-p.iter().map(|c| c * c).sum::<f64>()).exp()).collect();
    out.push(Box::new(lib(caloric_from_grid(nodes, values, 8.0))?));
    Ok(out)
}

fn criterion_3() -> Check {
    let mut tally = Tally::default();
    let (mut first, mut second) = (0.0f64, 0.0f64);
    for (d, ns) in [(1usize, vec![1usize, 2, 3, 6, 12]), (2, vec![1, 2, 3, 6])] {
        let fields = spacetime_catalog(d)?;
        for n in ns {
            let cfg = lib(LiftConfig::new(d, n))?;
            let pts = lib(random_points(cfg.big_n(), 0.6, 100, 11 * n as u64 + d as u64))?;
            for u in &fields {
                let c = lib(chain_rule_check(cfg, u.as_ref(), &pts))?;
                first = first.max(c.max_first_order);
                second = second.max(c.max_laplacian);
                tally.ok(c.max_first_order < 1e-6, || format!("{} d={d} n={n}: first order {:e}", u.name(), c.max_first_order));
                tally.ok(c.max_laplacian < 1e-4, || format!("{} d={d} n={n}: Laplacian {:e}", u.name(), c.max_laplacian));
            }
        }
    }
    tally.finish(format!("worst first-order {first:.1e}, worst Laplacian {second:.1e}"))
}

fn criterion_4() -> Check {
    let spec = QuadratureSpec::default();
    let mut tally = Tally::default();
    for (kind, dim) in [(HarmonicKind::X1, 3), (HarmonicKind::X1X2, 3), (HarmonicKind::ReZk(3), 2), (HarmonicKind::ReZk(5), 3)] {
        let v = harmonic_polynomial(kind);
        for r in [0.5, 1.0, 2.0] {
            let l = lib(almgren(&v, dim, r, &spec))?.l;
            tally.within(&format!("L({kind:?}, r={r})"), l, v.degree() as f64, 1e-8);
        }
    }
    for (kind, want) in [(CaloricKind::X1, 0.5), (CaloricKind::X1Sq, 1.0)] {
        for t in [0.25, 1.0, 4.0] {
            let l = lib(poon(&caloric_polynomial(kind), 1, t, &spec))?.l;
            tally.within(&format!("Poon({kind:?}, t={t})"), l, want, 1e-8);
        }
    }
    let hk = lib(heat_kernel_translate(vec![0.5], 2.0))?;
    let ts: Vec<f64> = (0..16).map(|k| 0.1 * 10f64.powf(k as f64 / 15.0)).collect();
    let rep = lib(monotonicity_sweep(|t| Ok(poon(&hk, 1, t, &spec)?.l), &ts, Tolerance::Relative(1e-8)))?;
    tally.ok(rep.is_monotone(), || format!("Poon sweep: {} violations", rep.violations));
    let target = 2.0 * lib(poon(&hk, 1, 1.0, &spec))?.l;
    let mut errs = Vec::new();
    for n in [10, 40, 160] {
        errs.push((lib(lifted_frequency(&hk, lib(LiftConfig::new(1, n))?, 1.0, &spec))? - target).abs());
    }
    tally.ok(errs[0] > errs[1] && errs[1] > errs[2], || format!("lifted frequency errors {errs:?}"));
    tally.ok(errs[2] < 0.05 * target.abs(), || format!("lifted frequency error {} at n=160", errs[2]));
    tally.finish(format!("lifted frequency errors {errs:?}"))
}

fn criterion_5() -> Check {
    let spec = QuadratureSpec::default();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let gamma: f64 = rng.gen_range(-4.0..4.0);
        let dim: usize = rng.gen_range(1..=9);
        let h = dim as f64 / 2.0;
        let brute = (0..1000)
            .map(|l| ((h + l as f64 + gamma - 2.0) * (h + l as f64 - gamma)).abs())
            .fold(f64::INFINITY, f64::min);
        let c = carleman_elliptic_constant(gamma, dim);
        tally.ok(c == brute, || format!("c({gamma}, {dim}) = {c}, scan {brute}"));
    }
    for (a, b, k, m) in [(1.0, 2.0, 3, 0.0), (0.5, 2.5, 4, 0.4), (0.8, 1.6, 5, -0.3)] {
        let v = lib(radial_bump(a, b, k, m))?;
        for g in [0.25, 1.3, -0.7] {
            let rep = lib(carleman_elliptic_check(&v, 3, g, v.support(), &spec))?;
            tally.ok(rep.satisfied, || format!("elliptic bump ({a},{b}) γ={g}: {rep:?}"));
        }
    }
    for (a, b, s, e, k, m) in [(1.0, 2.0, 1.0, 2.0, 3, 0.0), (0.5, 2.5, 0.5, 1.5, 4, 0.3), (0.8, 1.6, 1.0, 3.0, 5, -0.3)] {
        let u = lib(bump_spacetime(a, b, s, e, k, m))?;
        for alpha in [1.0, 1.4, 2.1] {
            let rep = lib(carleman_parabolic_check(&u, 1, alpha, u.space_window(), u.time_window(), &spec))?;
            tally.ok(rep.satisfied, || format!("parabolic bump ({a},{b}) α={alpha}: {rep:?}"));
        }
    }
    tally.finish("constants exact, 18 inequalities hold".into())
}

fn criterion_6() -> Check {
    let spec = QuadratureSpec::default();
    let mut tally = Tally::default();
    let (p, m) = half_space_pair();
    for r in [0.25, 0.5, 1.0, 2.0, 4.0] {
        tally.within(&format!("φ(r={r})"), lib(acf_phi(&p, &m, 2, r, &spec))?.value, PI * PI / 4.0, 1e-6);
    }
    for tau in [0.1, 0.5, 1.0, 4.0] {
        tally.within(&format!("Φ(τ={tau})"), lib(caffarelli_phi(&p, &m, 1, tau, &spec))?.value, 0.25, 1e-8);
        for n in [3, 5, 20, 80, 160] {
            let v = lib(lifted_two_phase(&p, &m, lib(LiftConfig::new(1, n))?, tau, &spec))?.value;
            tally.within(&format!("Φ_n(τ={tau}, n={n})"), v, 0.25, 1e-8);
        }
    }
    for (s, want) in [(0.5, 1.0), (0.25, 1.5), (1.0, 0.0)] {
        let v = lib(psi(s))?;
        tally.ok(v == want, || format!("ψ({s}) = {v}"));
    }
    let v1 = HalfSpace::positive().with_delta(0.3);
    let v2 = HalfSpace::negative();
    let h1 = NonhomTerm::scalar(move |y| v1.source(y));
    let mut margin = f64::INFINITY;
    for r in [0.5, 1.0, 2.0] {
        let bound = lib(acf_dphi_lower_bound((&v1, &h1), (&v2, &NonhomTerm::Zero), 2, r, &spec))?;
        let dr = 1e-4;
        let fd = (lib(acf_phi(&v1, &v2, 2, r + dr, &spec))?.value - lib(acf_phi(&v1, &v2, 2, r - dr, &spec))?.value) / (2.0 * dr);
        margin = margin.min(fd - bound);
        tally.ok(fd >= bound - 1e-4, || format!("perturbed pair r={r}: φ' {fd} < bound {bound}"));
    }
    tally.finish(format!("smallest φ' - bound {margin:.3e}"))
}

fn fd(f: impl Fn(f64) -> dimlift::Result<f64>, r: f64) -> Result<f64, String> {
    let h = 1e-4;
    Ok((lib(f(r + h))? - lib(f(r - h))?) / (2.0 * h))
}

fn criterion_7() -> Check {
    let spec = QuadratureSpec::default();
    let mut tally = Tally::default();
    let rs: Vec<f64> = (0..10).map(|k| 0.25 + 0.4 * k as f64).collect();
    for (dim, want) in [(3usize, 8.0 * PI), (4, 3.0 * PI * PI)] {
        let v = lib(equator_map(dim))?;
        let c = vec![0.0; dim];
        let rep = lib(monotonicity_sweep(|r| hm_phi(&v, &c, r, &spec), &rs, Tolerance::Relative(1e-8)))?;
        for (r, val) in rs.iter().zip(&rep.values) {
            tally.within(&format!("equator N={dim} r={r}"), *val, want, 1e-6);
        }
        tally.ok(rep.is_monotone(), || format!("equator N={dim}: {} violations", rep.violations));
    }
    // Inhomogeneous case: v = (cos f, sin f), f = y₁ + εy₁²/2, H = ε(sin f, -cos f).
    let eps = 0.4;
    let f = Arc::new(lib(quadratic(2, &[eps, 0.0, 0.0, 0.0], &[1.0, 0.0], 0.0))?);
    let v = harmonic_phase(f.clone(), 1.0);
    let h = NonhomTerm::vector(move |y| {
        let p = f.value(y).unwrap();
        vec![eps * p.sin(), -eps * p.cos()]
    });
    for r in [0.5, 0.9, 1.3] {
        let b = lib(hm_dphi_lower_bound(&v, &h, &[0.0; 2], r, &spec))?;
        let slope = fd(|s| hm_phi(&v, &[0.0; 2], s, &spec), r)?;
        tally.ok(slope >= b - 1e-4, || format!("phase map r={r}: φ' {slope} < bound {b}"));
    }
    let circle = circle_map(1.0);
    for t in [0.1, 0.5, 1.0, 3.0] {
        tally.within(&format!("Φ(t={t})"), lib(struwe_phi(&circle, 1, t, &spec))?, t, 1e-8 * t);
    }
    let lifted = lib(lifted_hm_phi(&circle, lib(LiftConfig::new(1, 160))?, 1.0, &spec))?;
    tally.ok((lifted - 1.0).abs() < 0.05, || format!("lifted circle map {lifted}"));
    let u = harmonic_phase(Arc::new(harmonic_polynomial(HarmonicKind::X1X2)), 1.0);
    let mut errs = Vec::new();
    for n in [10, 40, 160] {
        errs.push((lib(lifted_hm_phi(&u, lib(LiftConfig::new(2, n))?, 0.5, &spec))? - 1.0).abs());
    }
    tally.ok(errs[0] > errs[1] && errs[1] > errs[2], || format!("lifted phase-map errors {errs:?}"));
    tally.finish(format!("lifted circle map {lifted}, phase-map errors {errs:?}"))
}

fn criterion_8() -> Check {
    let spec = QuadratureSpec::default();
    let mut tally = Tally::default();
    let plane = GraphSurface::plane(0.0);
    let tilted = GraphSurface::linear(vec![0.5, 0.2], 0.0);
    for r in [0.3, 1.0, 2.5] {
        tally.within(&format!("Θ plane r={r}"), lib(ms_density(&plane, &[0.0; 3], r, &spec))?, 1.0, 1e-8);
        tally.within(&format!("Θ tilted r={r}"), lib(ms_density(&tilted, &[0.0; 3], r, &spec))?, 1.0, 1e-8);
    }
    let delta: f64 = 0.4;
    for big_n in [2usize, 3] {
        let mut w0 = vec![0.0; big_n + 1];
        w0[big_n] = -delta;
        for r in [0.5, 1.0, 2.0] {
            let want = (1.0 - delta * delta / (r * r)).powf(big_n as f64 / 2.0);
            tally.within(&format!("offset Θ N={big_n} r={r}"), lib(ms_density(&plane, &w0, r, &spec))?, want, 1e-6);
            let m = lib(ms_density_tilde(&plane, &NonhomTerm::Zero, &w0, r, &spec))?;
            let slope = fd(|s| Ok(ms_density_tilde(&plane, &NonhomTerm::Zero, &w0, s, &spec)?.theta_tilde), r)?;
            tally.within(&format!("offset derivative N={big_n} r={r}"), slope, m.derivative_rhs, 1e-4);
        }
    }
    for d in [1usize, 2] {
        let c = (4.0 * PI).powf(d as f64 / 2.0);
        let flow_tilted = GraphSurface::linear(vec![0.7; d], 0.0);
        for t in [0.1, 1.0, 5.0] {
            tally.within(&format!("ϑ plane d={d} t={t}"), lib(huisken_density(&plane, d, t, &spec))?, c, 1e-8);
            tally.within(&format!("ϑ tilted d={d} t={t}"), lib(huisken_density(&flow_tilted, d, t, &spec))?, c, 1e-8);
        }
        for u in [GraphSurface::plane(0.0), GraphSurface::plane(1.5), flow_tilted] {
            for x in lib(random_points(d, 3.0, 20, 3))? {
                let res = lib(mcf_residual(&u, &x, 0.7))?;
                tally.ok(res == 0.0, || format!("residual {res} for {}", u.name()));
            }
        }
    }
    let shifted = GraphSurface::plane(0.8);
    let target = lib(huisken_density(&shifted, 1, 0.5, &spec))?;
    let mut errs = Vec::new();
    for n in [10, 40, 160] {
        errs.push((lib(lifted_mcf_density(&shifted, lib(LiftConfig::new(1, n))?, 0.5, &spec))? - target).abs());
    }
    tally.ok(errs[0] > errs[1] && errs[1] > errs[2], || format!("lifted density errors {errs:?}"));
    tally.finish(format!("lifted density errors {errs:?}"))
}

const SUBCOMMANDS: [&[&str]; 9] = [
    &["gn-limit"],
    &["pushforward", "--samples", "20000", "--seeds", "2", "--n", "2,5", "--min-fraction", "0.5"],
    &["frequency", "--parabolic", "--field", "heat-kernel"],
    &["frequency"],
    &["carleman"],
    &["two-phase"],
    &["harmonic-map"],
    &["mcf"],
    &["lift-demo", "--which", "frequency", "--field", "heat-kernel"],
];

// Exit code 2 is a failed check; only byte equality matters here.
fn run_cli(args: &[&str], out: &Path, threads: &str) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_dimlift"))
        .args(args)
        .args(["--threads", threads, "--seed", "9", "--out-dir"])
        .arg(out)
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    if !matches!(status.code(), Some(0 | 2)) {
        return Err(format!("`{}` exited with {status}", args.join(" ")));
    }
    Ok(())
}

fn criterion_9() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut tally = Tally::default();
    for args in SUBCOMMANDS {
        let name = args[0];
        let mut outputs = Vec::new();
        for (k, threads) in ["1", "1", "4", "4"].iter().enumerate() {
            let out = dir.path().join(format!("{name}-{}-{k}", args.len()));
            run_cli(args, &out, threads)?;
            let read = |ext: &str| std::fs::read(out.join(format!("{name}.{ext}"))).map_err(|e| e.to_string());
            outputs.push((read("csv")?, read("json")?));
        }
        for (k, o) in outputs.iter().enumerate().skip(1) {
            tally.ok(o == &outputs[0], || format!("`{}` run {k} differs from run 0", args.join(" ")));
        }
    }
    tally.finish(format!("{} subcommand configurations, 4 runs each at --threads 1 and 4", SUBCOMMANDS.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("push-forward identities", criterion_1),
        ("weight limit", criterion_2),
        ("chain-rule lifting", criterion_3),
        ("frequency constancy and monotonicity", criterion_4),
        ("Carleman inequalities", criterion_5),
        ("two-phase functionals", criterion_6),
        ("harmonic maps", criterion_7),
        ("minimal surfaces and graph flow", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("criterion {} PASS {name} ({secs:.1} s): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({secs:.1} s): {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
