//! Acceptance run: ten numbered criteria, one PASS/FAIL line each. Reference
//! values come from small oracles written here, independent of the library's
//! own Hausdorff and coefficient code.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use metric_svf::analysis::BuiltinOracle;
use metric_svf::random::{self, UnionShape};
use metric_svf::svf::{eval_artstein_pl, eval_metric_pl, MetricPl, ProbeGrid, SetFunction};
use metric_svf::{
    apply_metric_operator, apply_minkowski_operator, metric_average, metric_linear_combination, CompactSet,
    IntervalUnion, OperatorSpec, Partition, SampledSvf, Tolerance,
};
use rand::Rng;

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("metric-average identities", c1_metric_property),
        ("linear combination axioms", c2_axioms),
        ("exact vs discrete engine", c3_engines),
        ("piecewise-linear suite", c4_pl),
        ("parabolic reproduction", c5_lagrange),
        ("Schoenberg Lipschitz bound", c6_schoenberg),
        ("Bernstein rate", c7_bernstein),
        ("convexification", c8_convexification),
        ("singleton consistency", c9_singletons),
        ("CLI determinism", c10_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---- independent distance oracles ----

/// Components of a one-dimensional set as sorted `(lo, hi)` pairs; cloud
/// points become degenerate pairs.
fn pairs(s: &CompactSet) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = match s {
        CompactSet::Intervals(u) => u.components().iter().map(|c| (c.lo(), c.hi())).collect(),
        CompactSet::Cloud(c) => c.points().iter().map(|p| (p[0], p[0])).collect(),
    };
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v
}

fn dist_to(p: f64, b: &[(f64, f64)]) -> f64 {
    b.iter()
        .map(|&(lo, hi)| (lo - p).max(p - hi).max(0.0))
        .fold(f64::INFINITY, f64::min)
}

/// `sup_{a∈A} dist(a, B)`: attained at an endpoint of A or at a gap
/// midpoint of B lying in A.
fn directed_1d(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let mut cands: Vec<f64> = a.iter().flat_map(|&(lo, hi)| [lo, hi]).collect();
    for w in b.windows(2) {
        let m = (w[0].1 + w[1].0) / 2.0;
        if a.iter().any(|&(lo, hi)| lo <= m && m <= hi) {
            cands.push(m);
        }
    }
    cands.into_iter().map(|p| dist_to(p, b)).fold(0.0, f64::max)
}

fn haus(a: &CompactSet, b: &CompactSet) -> f64 {
    if a.dim() == 1 && b.dim() == 1 {
        let (pa, pb) = (pairs(a), pairs(b));
        return directed_1d(&pa, &pb).max(directed_1d(&pb, &pa));
    }
    let (ca, cb) = (a.as_cloud().expect("cloud"), b.as_cloud().expect("cloud"));
    let d = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let dir = |x: &[Vec<f64>], y: &[Vec<f64>]| {
        x.iter()
            .map(|p| y.iter().map(|q| d(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    dir(ca.points(), cb.points()).max(dir(cb.points(), ca.points()))
}

fn grid_points(u: &IntervalUnion, g: f64) -> CompactSet {
    let mut pts = Vec::new();
    for c in u.components() {
        pts.push(vec![c.lo()]);
        pts.push(vec![c.hi()]);
        let mut k = (c.lo() / g).ceil() as i64;
        while k as f64 * g <= c.hi() {
            pts.push(vec![k as f64 * g]);
            k += 1;
        }
    }
    CompactSet::points(pts, &Tolerance::default()).unwrap()
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1)) as f64
}

fn scalar_bernstein(vals: &[f64], x: f64) -> f64 {
    let n = vals.len() - 1;
    vals.iter()
        .enumerate()
        .map(|(i, v)| v * binom(n, i) * x.powi(i as i32) * (1.0 - x).powi((n - i) as i32))
        .sum()
}

/// Quadratic cardinal B-spline on `[0, 3)`.
fn b3(t: f64) -> f64 {
    if (0.0..1.0).contains(&t) {
        t * t / 2.0
    } else if (1.0..2.0).contains(&t) {
        (-2.0 * t * t + 6.0 * t - 3.0) / 2.0
    } else if (2.0..3.0).contains(&t) {
        (3.0 - t).powi(2) / 2.0
    } else {
        0.0
    }
}

fn scalar_schoenberg3(vals: &[f64], x: f64) -> f64 {
    let n = (vals.len() - 1) as f64;
    vals.iter()
        .enumerate()
        .map(|(i, v)| v * b3(n * x - i as f64))
        .sum()
}

fn scalar_lagrange(knots: &[f64], vals: &[f64], x: f64) -> f64 {
    (0..knots.len())
        .map(|i| {
            let l: f64 = (0..knots.len())
                .filter(|&j| j != i)
                .map(|j| (x - knots[j]) / (knots[i] - knots[j]))
                .product();
            vals[i] * l
        })
        .sum()
}

fn fit_slope(ns: &[usize], errs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(errs)
        .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn union_of(rng: &mut impl Rng, shape: &UnionShape) -> CompactSet {
    random::interval_union(rng, shape).into()
}

// ---- criteria ----

fn c1_metric_property() -> Outcome {
    let tol = Tolerance::default();
    let start = Instant::now();
    let mut r = random::rng(SEED);
    let shape = UnionShape::default();
    let mut worst = [0.0_f64; 2];
    for k in 0..250 {
        let (a, b): (CompactSet, CompactSet) = if k < 200 {
            (union_of(&mut r, &shape), union_of(&mut r, &shape))
        } else {
            (
                random::point_cloud(&mut r, 2, 6, -5.0, 5.0).into(),
                random::point_cloud(&mut r, 2, 6, -5.0, 5.0).into(),
            )
        };
        let (t, s): (f64, f64) = (r.gen_range(0.0..=1.0), r.gen_range(0.0..=1.0));
        let h = haus(&a, &b);
        let mt = metric_average(&a, &b, t, &tol).unwrap();
        let ms = metric_average(&a, &b, s, &tol).unwrap();
        let dev = (haus(&mt, &ms) - (t - s).abs() * h)
            .abs()
            .max((haus(&mt, &a) - (1.0 - t) * h).abs())
            .max((haus(&mt, &b) - t * h).abs());
        let w = &mut worst[usize::from(k >= 200)];
        *w = w.max(dev);
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst[0] <= 1e-9 && worst[1] <= 1e-9 && secs < 10.0,
        format!(
            "200 interval pairs max dev {:.2e}, 50 cloud pairs max dev {:.2e}, {secs:.2} s",
            worst[0], worst[1]
        ),
    )
}

fn c2_axioms() -> Outcome {
    let tol = Tolerance::default();
    let mut r = random::rng(SEED ^ 2);
    let shape = UnionShape::default();
    let (mut rev, mut constant, mut reduce) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut with_negative = 0;
    for k in 0..100 {
        let n = r.gen_range(2..=6);
        let c = random::affine_coefficients(&mut r, n, k % 2 == 0);
        if c.iter().any(|&v| v < 0.0) {
            with_negative += 1;
        }
        let sets: Vec<CompactSet> = (0..n).map(|_| union_of(&mut r, &shape)).collect();
        let fwd = metric_linear_combination(&c, &sets, &tol).unwrap();
        let (rc, rs): (Vec<f64>, Vec<CompactSet>) = (
            c.iter().rev().copied().collect(),
            sets.iter().rev().cloned().collect(),
        );
        rev = rev.max(haus(&fwd, &metric_linear_combination(&rc, &rs, &tol).unwrap()));
        let same = vec![sets[0].clone(); n];
        constant = constant.max(haus(
            &metric_linear_combination(&c, &same, &tol).unwrap(),
            &sets[0],
        ));
    }
    for _ in 0..100 {
        let (a, b) = (union_of(&mut r, &shape), union_of(&mut r, &shape));
        let t: f64 = r.gen_range(0.0..=1.0);
        let lin = metric_linear_combination(&[t, 1.0 - t], &[a.clone(), b.clone()], &tol).unwrap();
        reduce = reduce.max(haus(&lin, &metric_average(&a, &b, t, &tol).unwrap()));
    }
    let eps = tol.merge_eps;
    verdict(
        rev <= eps && constant <= eps && reduce <= eps && with_negative > 0,
        format!(
            "reversal {rev:.2e}, constants {constant:.2e} ({with_negative} vectors with negatives), two-set reduction {reduce:.2e}"
        ),
    )
}

fn c3_engines() -> Outcome {
    let tol = Tolerance::default();
    let mut r = random::rng(SEED ^ 3);
    let shape = UnionShape {
        max_components: 3,
        lo: 0.0,
        hi: 5.0,
        step: Some(0.1),
    };
    let instances: Vec<(Vec<f64>, Vec<IntervalUnion>)> = (0..50)
        .map(|k| {
            let n = r.gen_range(2..=6);
            let c = random::affine_coefficients(&mut r, n, k % 3 == 0);
            (
                c,
                (0..n).map(|_| random::interval_union(&mut r, &shape)).collect(),
            )
        })
        .collect();
    let mut detail = Vec::new();
    let mut ok = true;
    for g in [1e-2, 1e-3] {
        let mut worst = 0.0_f64;
        for (c, sets) in &instances {
            let exact: Vec<CompactSet> = sets.iter().cloned().map(CompactSet::from).collect();
            let discrete: Vec<CompactSet> = sets.iter().map(|u| grid_points(u, g)).collect();
            let e = metric_linear_combination(c, &exact, &tol).unwrap();
            let d = metric_linear_combination(c, &discrete, &tol).unwrap();
            let scale = c.iter().map(|v| v.abs()).sum::<f64>() * g;
            worst = worst.max(haus(&e, &d) / scale);
        }
        ok &= worst <= 1.0;
        detail.push(format!("g = {g}: max gap/(Σ|λ|g) {worst:.3}"));
    }
    verdict(ok, format!("50 instances, {}", detail.join(", ")))
}

fn random_svf(r: &mut impl Rng, tol: &Tolerance) -> SampledSvf {
    let mut knots: Vec<f64> = (0..r.gen_range(1..=5)).map(|_| r.gen_range(0.05..0.95)).collect();
    knots.extend([0.0, 1.0]);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let shape = UnionShape::default();
    let values = knots.iter().map(|_| union_of(r, &shape)).collect();
    SampledSvf::with_tolerance(Partition::new(knots).unwrap(), values, *tol).unwrap()
}

fn c4_pl() -> Outcome {
    let tol = Tolerance::default();
    let mut r = random::rng(SEED ^ 4);
    let mut knot_miss = 0;
    let mut equiv = 0.0_f64;
    for _ in 0..100 {
        let f = random_svf(&mut r, &tol);
        for (x, v) in f.partition().knots().iter().zip(f.values()) {
            if haus(&eval_metric_pl(&f, *x, &tol).unwrap(), v) != 0.0 {
                knot_miss += 1;
            }
        }
        let x = r.gen_range(0.0..=1.0);
        equiv = equiv.max(haus(
            &eval_metric_pl(&f, x, &tol).unwrap(),
            &eval_artstein_pl(&f, x, &tol).unwrap(),
        ));
    }

    // error against twice the probed modulus, with 1% slack
    let mut bound_margin = f64::INFINITY;
    let mut factor5_margin = f64::INFINITY;
    for o in [BuiltinOracle::a(), BuiltinOracle::b(), BuiltinOracle::c()] {
        let probe = ProbeGrid::new(&o, 2048).unwrap();
        for n in [4, 8, 16] {
            let f = SampledSvf::sample(&o, Partition::uniform(0.0, 1.0, n).unwrap(), tol).unwrap();
            let w = probe.modulus(1.0 / n as f64).unwrap();
            for k in 0..=128 {
                let x = k as f64 / 128.0;
                let err = haus(&o.eval(x).unwrap(), &eval_artstein_pl(&f, x, &tol).unwrap());
                bound_margin = bound_margin.min(2.0 * w * 1.01 - err);
            }
        }
        let f = SampledSvf::sample(&o, Partition::uniform(0.0, 1.0, 8).unwrap(), tol).unwrap();
        let s = ProbeGrid::new(&MetricPl { svf: &f, tol }, 512).unwrap();
        let g = ProbeGrid::new(&o, 512).unwrap();
        for d in [1.0 / 64.0, 1.0 / 16.0, 0.25] {
            factor5_margin = factor5_margin.min(5.0 * g.modulus(d).unwrap() * 1.01 - s.modulus(d).unwrap());
        }
    }
    verdict(
        knot_miss == 0 && equiv <= 1e-9 && bound_margin >= 0.0 && factor5_margin >= 0.0,
        format!(
            "knot mismatches {knot_miss}, chain vs average form {equiv:.2e}, 2ω margin {bound_margin:.3e}, factor-5 margin {factor5_margin:.3e}"
        ),
    )
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metric-svf"))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("metric-svf-acceptance-{}-{name}", std::process::id()))
}

fn c5_lagrange() -> Outcome {
    let tol = Tolerance::default();
    let want = CompactSet::intervals(&[(4.0, 6.0)]).unwrap();
    let outer = CompactSet::intervals(&[(2.0, 4.0), (6.0, 8.0)]).unwrap();
    let ex1 = SampledSvf::new(
        Partition::new(vec![0.0, 2.0, 6.0]).unwrap(),
        vec![
            CompactSet::intervals(&[(2.0, 8.0)]).unwrap(),
            CompactSet::intervals(&[(5.0, 5.0)]).unwrap(),
            CompactSet::intervals(&[(5.0, 5.0)]).unwrap(),
        ],
    )
    .unwrap();
    let ex2 = SampledSvf::new(
        Partition::new(vec![0.0, 4.0, 8.0]).unwrap(),
        vec![
            outer.clone(),
            CompactSet::intervals(&[(4.5, 5.5)]).unwrap(),
            outer,
        ],
    )
    .unwrap();
    let spec = OperatorSpec::lagrange();

    // brute force on a 1e-3 grid first
    let c = spec.coefficients(ex1.partition(), 4.0).unwrap();
    let grid: Vec<CompactSet> = ex1
        .values()
        .iter()
        .map(|v| grid_points(v.as_intervals().unwrap(), 1e-3))
        .collect();
    let brute = metric_linear_combination(&c, &grid, &tol).unwrap();
    let brute_gap = haus(&brute, &want);
    let bp = pairs(&brute);
    let brute_span = format!("{} points in [{}, {}]", bp.len(), bp[0].0, bp[bp.len() - 1].1);
    let brute_ok = brute_gap <= c.iter().map(|v| v.abs()).sum::<f64>() * 1e-3;

    let exact = apply_metric_operator(&spec, &ex1, 4.0, &tol).unwrap();
    let exact_gap = haus(&exact, &want);

    let mut node_miss = 0;
    for f in [&ex1, &ex2] {
        for (x, v) in f.partition().knots().iter().zip(f.values()) {
            if haus(&apply_metric_operator(&spec, f, *x, &tol).unwrap(), v) != 0.0 {
                node_miss += 1;
            }
        }
    }

    let mut figures_ok = true;
    for name in ["parabolic-1", "parabolic-2"] {
        let path = scratch(&format!("{name}.svg"));
        let status = cli()
            .args(["figure", name, "--output"])
            .arg(&path)
            .status()
            .unwrap();
        let svg = std::fs::read_to_string(&path).unwrap_or_default();
        figures_ok &= status.success() && svg.starts_with("<svg") && svg.contains("<polyline");
        let _ = std::fs::remove_file(path);
    }
    verdict(
        brute_ok && exact_gap <= 1e-9 && node_miss == 0 && figures_ok,
        format!(
            "grid 1e-3 gives {brute_span} (gap {brute_gap:.1e}), exact gives {exact} (gap {exact_gap:.1e}), node mismatches {node_miss}, figures ok {figures_ok}"
        ),
    )
}

fn c6_schoenberg() -> Outcome {
    let tol = Tolerance::default();
    let start = Instant::now();
    let o = BuiltinOracle::b();
    let l = o.lipschitz().unwrap();
    let ns = [8, 16, 32, 64];
    let mut ok = true;
    let mut detail = Vec::new();
    for m in [2u32, 3] {
        let spec = OperatorSpec::schoenberg(m).unwrap();
        let bound_factor = 2.0 + m.div_ceil(2) as f64;
        let mut errs = Vec::new();
        for &n in &ns {
            let p = Partition::uniform(0.0, 1.0, n).unwrap();
            let f = SampledSvf::sample(&o, p.clone(), tol).unwrap();
            let d = spec.valid_domain(&p).unwrap();
            let err = (0..=256)
                .map(|k| {
                    let x = d.lo() + d.len() * k as f64 / 256.0;
                    haus(
                        &o.eval(x).unwrap(),
                        &apply_metric_operator(&spec, &f, x, &tol).unwrap(),
                    )
                })
                .fold(0.0, f64::max);
            ok &= err <= bound_factor * l / n as f64;
            errs.push(err);
        }
        let slope = fit_slope(&ns, &errs);
        ok &= (slope + 1.0).abs() <= 0.2;
        detail.push(format!(
            "m = {m}: errors {} vs bound {:.4}/N, slope {slope:.3}",
            errs.iter()
                .map(|e| format!("{e:.4e}"))
                .collect::<Vec<_>>()
                .join(" "),
            bound_factor * l
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(ok && secs < 60.0, format!("{}; {secs:.2} s", detail.join("; ")))
}

/// Errors at `x = 1/2` of the metric Bernstein operator for each `N`.
fn bernstein_errors(o: &BuiltinOracle, ns: &[usize]) -> Vec<f64> {
    let tol = Tolerance::default();
    ns.iter()
        .map(|&n| {
            let f = SampledSvf::sample(o, Partition::uniform(0.0, 1.0, n).unwrap(), tol).unwrap();
            haus(
                &o.eval(0.5).unwrap(),
                &apply_metric_operator(&OperatorSpec::bernstein(), &f, 0.5, &tol).unwrap(),
            )
        })
        .collect()
}

/// Largest `error/(L √(x(1−x)/N))` over the levels of each member.
fn rate_constant(members: &[BuiltinOracle], ns: &[usize]) -> f64 {
    members
        .iter()
        .flat_map(|o| {
            let l = o.lipschitz().unwrap();
            bernstein_errors(o, ns)
                .into_iter()
                .zip(ns)
                .map(move |(e, &n)| e / (l * (0.25 / n as f64).sqrt()))
        })
        .fold(0.0, f64::max)
}

fn c7_bernstein() -> Outcome {
    let ns = [8, 16, 32, 64];
    let o = BuiltinOracle::b();
    let errs = bernstein_errors(&o, &ns);
    let monotone = errs.windows(2).all(|w| w[1] <= w[0]);
    let slope = if errs.iter().all(|&e| e > 0.0) {
        fit_slope(&ns, &errs)
    } else {
        f64::NAN
    };
    let family: Vec<BuiltinOracle> = [0.1, 0.2, 0.3, 0.4]
        .map(|k| BuiltinOracle::NonconvexShift { k })
        .to_vec();
    let (c1, c2) = (rate_constant(&family[..2], &ns), rate_constant(&family[2..], &ns));
    let spread = (c1 - c2).abs() / c1.max(c2);
    let stable = c1 > 0.0 && c2 > 0.0 && spread <= 0.25;

    // same measurement on the convex kink family, where the rate is visible
    let kink: Vec<BuiltinOracle> = [0.5, 0.75, 1.0, 1.25]
        .map(|s| BuiltinOracle::ConvexKink { s })
        .to_vec();
    let kink_errs = bernstein_errors(&kink[2], &ns);
    let (k1, k2) = (rate_constant(&kink[..2], &ns), rate_constant(&kink[2..], &ns));
    verdict(
        monotone && (slope + 0.5).abs() <= 0.15 && stable,
        format!(
            "oracle (b) errors {} slope {slope:.3}, C {c1:.3e} vs {c2:.3e}; convex kink companion slope {:.3}, C {k1:.4} vs {k2:.4}",
            errs.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>().join(" "),
            fit_slope(&ns, &kink_errs)
        ),
    )
}

/// All subset sums of the weights, sorted.
fn subset_sums(w: &[f64]) -> Vec<f64> {
    let mut sums: Vec<f64> = (0u32..1 << w.len())
        .map(|mask| (0..w.len()).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).sum())
        .collect();
    sums.sort_by(f64::total_cmp);
    sums
}

fn c8_convexification() -> Outcome {
    let tol = Tolerance::default();
    let a = CompactSet::intervals(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
    let hull = CompactSet::intervals(&[(0.0, 1.0)]).unwrap();
    let mut rows = Vec::new();
    let mut brute_ok = true;
    let mut closed_form_ok = true;
    let mut metric_ok = true;
    for n in 1..=8usize {
        let p = Partition::uniform(0.0, 1.0, n).unwrap();
        let f = SampledSvf::new(p, vec![a.clone(); n + 1]).unwrap();
        let mink = apply_minkowski_operator(&OperatorSpec::bernstein(), &f, 0.5, &tol).unwrap();
        let got = haus(&mink, &hull);
        let w: Vec<f64> = (0..=n).map(|i| binom(n, i) / 2f64.powi(n as i32)).collect();
        let brute = subset_sums(&w)
            .windows(2)
            .map(|s| (s[1] - s[0]) / 2.0)
            .fold(0.0, f64::max);
        brute_ok &= (got - brute).abs() <= 1e-12;
        closed_form_ok &= (got - 1.0 / (2.0 * n as f64)).abs() <= 1e-12;
        let metric = apply_metric_operator(&OperatorSpec::bernstein(), &f, 0.5, &tol).unwrap();
        metric_ok &= haus(&metric, &a) == 0.0;
        rows.push(format!("N={n}:{got}"));
    }
    verdict(
        brute_ok && closed_form_ok && metric_ok,
        format!(
            "haus to [0,1] {} (brute force agrees {brute_ok}, equals 1/(2N) {closed_form_ok}), metric column is A {metric_ok}",
            rows.join(" ")
        ),
    )
}

type Scalar<'a> = Box<dyn Fn(f64) -> f64 + 'a>;

fn c9_singletons() -> Outcome {
    let tol = Tolerance::default();
    let mut r = random::rng(SEED ^ 9);
    let mut worst = [0.0_f64; 3];
    for _ in 0..20 {
        let n = r.gen_range(3..=8);
        let p = Partition::uniform(0.0, 1.0, n).unwrap();
        let vals: Vec<f64> = (0..=n).map(|_| r.gen_range(-5.0..5.0)).collect();
        let f = SampledSvf::with_tolerance(
            p.clone(),
            vals.iter()
                .map(|&v| CompactSet::intervals(&[(v, v)]).unwrap())
                .collect(),
            tol,
        )
        .unwrap();
        let families: [(OperatorSpec, Scalar); 3] = [
            (
                OperatorSpec::bernstein(),
                Box::new(|x| scalar_bernstein(&vals, x)),
            ),
            (
                OperatorSpec::schoenberg(3).unwrap(),
                Box::new(|x| scalar_schoenberg3(&vals, x)),
            ),
            (
                OperatorSpec::lagrange(),
                Box::new(|x| scalar_lagrange(p.knots(), &vals, x)),
            ),
        ];
        for (slot, (spec, scalar)) in families.iter().enumerate() {
            let d = spec.valid_domain(&p).unwrap();
            for k in 0..=16 {
                let x = d.lo() + d.len() * k as f64 / 16.0;
                let got = apply_metric_operator(spec, &f, x, &tol).unwrap();
                let want = scalar(x);
                let gap = pairs(&got)
                    .iter()
                    .map(|&(lo, hi)| (lo - want).abs().max((hi - want).abs()))
                    .fold(0.0, f64::max);
                worst[slot] = worst[slot].max(gap);
            }
        }
    }
    verdict(
        worst.iter().all(|&w| w <= 1e-12),
        format!(
            "20 datasets: Bernstein {:.2e}, Schoenberg {:.2e}, Lagrange {:.2e}",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn c10_cli() -> Outcome {
    let run = || {
        cli()
            .args(["verify", "--suite", "all", "--seed", "12345"])
            .output()
            .unwrap()
    };
    let (first, second) = (run(), run());
    let same = first.stdout == second.stdout;
    let codes = (first.status.code(), second.status.code());
    verdict(
        same && codes == (Some(0), Some(0)) && !first.stdout.is_empty(),
        format!(
            "{} bytes, identical {same}, exit codes {codes:?}",
            first.stdout.len()
        ),
    )
}
