//! Seeded invariant suites with a deterministic plain-text report.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::analysis::{
    bound_check, convexification_demo, cross_validate_constant, error_curve, error_curve_on,
    estimate_lipschitz, fit_constant, Approximant, BoundKind, BuiltinOracle, ConvergenceReport, ErrorModel,
    EvalGrid, FitMode, Phi, LIPSCHITZ_PAIRS,
};
use crate::chains::{metric_average, metric_chains, metric_linear_combination};
use crate::error::{Error, Result};
use crate::operators::{
    apply_metric_operator, apply_minkowski_operator, bernstein_coeffs, decasteljau_ma_bernstein, OperatorSpec,
};
use crate::random::{self, UnionShape};
use crate::sets::{CompactSet, IntervalUnion, PointCloud};
use crate::svf::{
    eval_artstein_pl, eval_metric_pl, selections, total_variation, MetricPl, Partition, ProbeGrid, SampledSvf,
};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    MetricProps,
    Pl,
    Operators,
    Bounds,
    Convexification,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "metric-props",
        "pl",
        "operators",
        "bounds",
        "convexification",
        "all",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::MetricProps => "metric-props",
            Suite::Pl => "pl",
            Suite::Operators => "operators",
            Suite::Bounds => "bounds",
            Suite::Convexification => "convexification",
            Suite::All => "all",
        }
    }

    fn members(&self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::MetricProps,
                Suite::Pl,
                Suite::Operators,
                Suite::Bounds,
                Suite::Convexification,
            ],
            s => vec![*s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "metric-props" => Suite::MetricProps,
            "pl" => Suite::Pl,
            "operators" => Suite::Operators,
            "bounds" => Suite::Bounds,
            "convexification" => Suite::Convexification,
            "all" => Suite::All,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Named CSV tables emitted by the suites.
    pub tables: Vec<(String, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}/{}: {}", c.suite, c.name, c.detail)?;
        }
        for (name, csv) in &self.tables {
            writeln!(f, "table {name}")?;
            write!(f, "{csv}")?;
        }
        writeln!(
            f,
            "summary: {} checks, {} failed",
            self.checks.len(),
            self.failures()
        )
    }
}

/// Runs `suite` with the given seed.
pub fn run(suite: Suite, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        seed,
        checks: Vec::new(),
        tables: Vec::new(),
    };
    for s in suite.members() {
        let mut ctx = Ctx {
            suite: s.name(),
            seed,
            report: &mut report,
        };
        match s {
            Suite::MetricProps => metric_props(&mut ctx)?,
            Suite::Pl => pl(&mut ctx)?,
            Suite::Operators => operators(&mut ctx)?,
            Suite::Bounds => bounds(&mut ctx)?,
            Suite::Convexification => convexification(&mut ctx)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(report)
}

struct Ctx<'a> {
    suite: &'static str,
    seed: u64,
    report: &'a mut VerifyReport,
}

impl Ctx<'_> {
    fn rng(&self, salt: u64) -> rand_chacha::ChaCha8Rng {
        random::rng(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.report.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn table(&mut self, name: &str, csv: String) {
        self.report.tables.push((name.to_string(), csv));
    }
}

/// Grid points `k·step` inside each component plus the component
/// endpoints, as a one-dimensional cloud.
pub fn discretize(u: &IntervalUnion, step: f64, tol: &Tolerance) -> Result<PointCloud> {
    let mut pts = Vec::new();
    for c in u.components() {
        pts.push(c.lo());
        pts.push(c.hi());
        let first = (c.lo() / step).ceil() as i64;
        let last = (c.hi() / step).floor() as i64;
        for k in first..=last {
            pts.push(k as f64 * step);
        }
    }
    PointCloud::from_scalars(&pts, tol)
}

/// Subset sums of `C(N, i)/2^N`: the Minkowski Bernstein operator of the
/// constant `{0, 1}` at `x = 1/2`, enumerated without set arithmetic.
pub fn binomial_subset_sums(n: usize) -> Vec<f64> {
    let w = bernstein_coeffs(n, 0.5).expect("degree in range");
    let mut sums = vec![0.0_f64];
    for wi in w {
        let mut next: Vec<f64> = sums.iter().flat_map(|&s| [s, s + wi]).collect();
        next.sort_by(f64::total_cmp);
        next.dedup_by(|a, b| (*a - *b).abs() <= 1e-13);
        sums = next;
    }
    sums
}

/// Hausdorff distance from a finite subset of `[0, 1]` containing both
/// ends to `[0, 1]`: half the largest gap.
pub fn gap_to_unit_interval(points: &[f64]) -> f64 {
    points.windows(2).map(|w| (w[1] - w[0]) / 2.0).fold(0.0, f64::max)
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

fn random_svf(rng: &mut impl Rng, tol: &Tolerance) -> Result<SampledSvf> {
    let n = rng.gen_range(2..=6);
    let mut knots: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.05..0.95)).collect();
    knots.push(0.0);
    knots.push(1.0);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let shape = UnionShape::default();
    let values = (0..knots.len())
        .map(|_| CompactSet::Intervals(random::interval_union(rng, &shape)))
        .collect();
    SampledSvf::with_tolerance(Partition::new(knots)?, values, *tol)
}

fn metric_props(ctx: &mut Ctx) -> Result<()> {
    let tol = Tolerance::default();

    // metric property on interval unions and clouds
    let mut r = ctx.rng(1);
    let shape = UnionShape::default();
    let mut cases: Vec<(CompactSet, CompactSet, f64, f64)> = (0..200)
        .map(|_| {
            (
                random::interval_union(&mut r, &shape).into(),
                random::interval_union(&mut r, &shape).into(),
                r.gen_range(0.0..=1.0),
                r.gen_range(0.0..=1.0),
            )
        })
        .collect();
    let interval_cases = cases.len();
    cases.extend((0..50).map(|_| {
        (
            random::point_cloud(&mut r, 2, 6, -5.0, 5.0).into(),
            random::point_cloud(&mut r, 2, 6, -5.0, 5.0).into(),
            r.gen_range(0.0..=1.0),
            r.gen_range(0.0..=1.0),
        )
    }));
    let devs = cases
        .par_iter()
        .map(|(a, b, t, s)| metric_property_deviation(a, b, *t, *s, &tol))
        .collect::<Result<Vec<f64>>>()?;
    let (di, dc) = devs.split_at(interval_cases);
    let (wi, wc) = (
        di.iter().fold(0.0, |m: f64, v| m.max(*v)),
        dc.iter().fold(0.0, |m: f64, v| m.max(*v)),
    );
    ctx.check(
        "metric-property-intervals",
        wi <= 1e-9,
        format!("{} pairs, max deviation {}", di.len(), sci(wi)),
    );
    ctx.check(
        "metric-property-clouds",
        wc <= 1e-9,
        format!("{} pairs, max deviation {}", dc.len(), sci(wc)),
    );

    // A ∩ B ⊆ MA(A, B, t)
    let mut r = ctx.rng(2);
    let mut worst = 0.0_f64;
    let mut tested = 0;
    for _ in 0..100 {
        let a = random::interval_union(&mut r, &shape);
        let b = random::interval_union(&mut r, &shape);
        let t = r.gen_range(0.0..=1.0);
        if let Some(i) = a.intersection(&b) {
            tested += 1;
            let ma = metric_average(&a.into(), &b.into(), t, &tol)?;
            worst = worst.max(CompactSet::from(i).directed_hausdorff(&ma)?);
        }
    }
    ctx.check(
        "intersection-in-average",
        worst <= 1e-9,
        format!("{tested} intersecting pairs, max excess {}", sci(worst)),
    );

    // reversal and constant reproduction
    let mut r = ctx.rng(3);
    let mut rev = 0.0_f64;
    let mut constant = 0.0_f64;
    for k in 0..100 {
        let n = r.gen_range(2..=5);
        let c = random::affine_coefficients(&mut r, n, k % 2 == 0);
        let sets: Vec<CompactSet> = (0..n)
            .map(|_| random::interval_union(&mut r, &shape).into())
            .collect();
        let fwd = metric_linear_combination(&c, &sets, &tol)?;
        let (mut rc, mut rs) = (c.clone(), sets.clone());
        rc.reverse();
        rs.reverse();
        rev = rev.max(fwd.hausdorff(&metric_linear_combination(&rc, &rs, &tol)?)?);
        let a = &sets[0];
        let same = vec![a.clone(); n];
        constant = constant.max(metric_linear_combination(&c, &same, &tol)?.hausdorff(a)?);
    }
    ctx.check(
        "reversal",
        rev <= tol.merge_eps,
        format!("100 coefficient vectors, max deviation {}", sci(rev)),
    );
    ctx.check(
        "constant-reproduction",
        constant <= tol.merge_eps,
        format!(
            "100 coefficient vectors with negatives, max deviation {}",
            sci(constant)
        ),
    );

    // two sets reduce to the metric average
    let mut r = ctx.rng(4);
    let mut two = 0.0_f64;
    for _ in 0..100 {
        let a: CompactSet = random::interval_union(&mut r, &shape).into();
        let b: CompactSet = random::interval_union(&mut r, &shape).into();
        let t = r.gen_range(0.0..=1.0);
        let lin = metric_linear_combination(&[t, 1.0 - t], &[a.clone(), b.clone()], &tol)?;
        two = two.max(lin.hausdorff(&metric_average(&a, &b, t, &tol)?)?);
    }
    ctx.check(
        "two-set-reduction",
        two <= tol.merge_eps,
        format!("100 pairs, max deviation {}", sci(two)),
    );

    // every point of every set appears in some chain: the combination
    // with a unit vector is the set of i-th chain coordinates
    let mut r = ctx.rng(5);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let n = r.gen_range(2..=5);
        let sets: Vec<CompactSet> = (0..n)
            .map(|_| random::interval_union(&mut r, &shape).into())
            .collect();
        let chains = metric_chains(&sets, &tol)?;
        for (i, s) in sets.iter().enumerate() {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            worst = worst.max(chains.combine(&e, &tol)?.hausdorff(s)?);
        }
    }
    ctx.check(
        "chain-coverage",
        worst == 0.0,
        format!("20 sequences, max distance of coordinate sets {}", sci(worst)),
    );

    // exact engine against the discrete engine on grids
    let mut r = ctx.rng(6);
    let grid_shape = UnionShape {
        max_components: 3,
        lo: 0.0,
        hi: 5.0,
        step: Some(0.1),
    };
    let instances: Vec<(Vec<f64>, Vec<IntervalUnion>)> = (0..50)
        .map(|k| {
            let n = r.gen_range(2..=5);
            let c = random::affine_coefficients(&mut r, n, k % 3 == 0);
            let sets = (0..n)
                .map(|_| random::interval_union(&mut r, &grid_shape))
                .collect();
            (c, sets)
        })
        .collect();
    for g in [1e-2, 1e-3] {
        let ratios = instances
            .par_iter()
            .map(|(c, sets)| oracle_gap_ratio(c, sets, g, &tol))
            .collect::<Result<Vec<f64>>>()?;
        let worst = ratios.iter().fold(0.0_f64, |m, v| m.max(*v));
        ctx.check(
            &format!("oracle-equivalence-g{g}"),
            worst <= 1.0,
            format!("50 instances, max gap/(Σ|λ|·g) {}", sci(worst)),
        );
    }

    // swapping non-adjacent sets changes the result for some instance
    let mut r = ctx.rng(7);
    let w = [0.25; 4];
    let mut witness = None;
    for attempt in 0..200 {
        let sets: Vec<CompactSet> = (0..4)
            .map(|_| random::interval_union(&mut r, &shape).into())
            .collect();
        let mut swapped = sets.clone();
        swapped.swap(0, 2);
        let d = metric_linear_combination(&w, &sets, &tol)?
            .hausdorff(&metric_linear_combination(&w, &swapped, &tol)?)?;
        if d > 1e-6 {
            witness = Some((attempt, d));
            break;
        }
    }
    ctx.check(
        "order-sensitivity-witness",
        witness.is_some(),
        match witness {
            Some((k, d)) => format!("instance {k} differs by {}", sci(d)),
            None => "no witness in 200 instances".into(),
        },
    );
    Ok(())
}

/// Largest deviation among the three metric-property equalities.
pub fn metric_property_deviation(
    a: &CompactSet,
    b: &CompactSet,
    t: f64,
    s: f64,
    tol: &Tolerance,
) -> Result<f64> {
    let h = a.hausdorff(b)?;
    let mt = metric_average(a, b, t, tol)?;
    let ms = metric_average(a, b, s, tol)?;
    Ok([
        (mt.hausdorff(&ms)? - (t - s).abs() * h).abs(),
        (mt.hausdorff(a)? - (1.0 - t) * h).abs(),
        (mt.hausdorff(b)? - t * h).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max))
}

/// `haus(exact, discrete)/(Σ|λ_i| g)` for one instance.
pub fn oracle_gap_ratio(c: &[f64], sets: &[IntervalUnion], g: f64, tol: &Tolerance) -> Result<f64> {
    let exact: Vec<CompactSet> = sets.iter().cloned().map(CompactSet::from).collect();
    let discrete = sets
        .iter()
        .map(|u| discretize(u, g, tol).map(CompactSet::from))
        .collect::<Result<Vec<_>>>()?;
    let e = metric_linear_combination(c, &exact, tol)?;
    let d = metric_linear_combination(c, &discrete, tol)?;
    let d_pts: Vec<f64> = d
        .as_cloud()
        .expect("cloud")
        .points()
        .iter()
        .map(|p| p[0])
        .collect();
    let d = CompactSet::from(IntervalUnion::from_points(&d_pts, tol)?);
    let scale: f64 = c.iter().map(|v| v.abs()).sum::<f64>() * g;
    Ok(e.hausdorff(&d)? / scale)
}

fn pl(ctx: &mut Ctx) -> Result<()> {
    let tol = Tolerance::default();

    let mut r = ctx.rng(11);
    let mut knot_failures = 0;
    let mut equiv = 0.0_f64;
    for _ in 0..100 {
        let f = random_svf(&mut r, &tol)?;
        for (x, v) in f.partition().knots().iter().zip(f.values()) {
            if eval_metric_pl(&f, *x, &tol)? != *v {
                knot_failures += 1;
            }
        }
        let x = r.gen_range(0.0..=1.0);
        let m = eval_metric_pl(&f, x, &tol)?;
        equiv = equiv.max(m.hausdorff(&eval_artstein_pl(&f, x, &tol)?)?);
    }
    ctx.check(
        "knot-interpolation",
        knot_failures == 0,
        format!("100 functions, {knot_failures} mismatches"),
    );
    ctx.check(
        "chain-vs-average-form",
        equiv <= 1e-9,
        format!("100 (F, x), max distance {}", sci(equiv)),
    );

    // interpolation error against twice the modulus at the mesh size
    let ns = [4, 8, 16];
    for o in [BuiltinOracle::a(), BuiltinOracle::b(), BuiltinOracle::c()] {
        let report = error_curve(&o, &Approximant::MetricPl, &ns, &EvalGrid::Uniform(128), &tol)?;
        let deltas: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
        let model = ErrorModel::new(o.lipschitz(), 0.0, Phi::Linear)?.with_omega(&o, &deltas, 2048)?;
        let chk = bound_check(&report, &model, &BoundKind::PlInterpolation, 0.01)?;
        ctx.check(
            &format!("pl-bound-{}", o.name()),
            chk.passed,
            format!("worst margin {}", sci(chk.worst_margin)),
        );
        ctx.table(&format!("pl-bound-{}", o.name()), chk.to_csv());
    }

    // modulus of the interpolant within five times the modulus of G, and
    // Lipschitz constants carried over
    for o in [BuiltinOracle::a(), BuiltinOracle::b(), BuiltinOracle::c()] {
        let f = SampledSvf::sample(&o, Partition::uniform(0.0, 1.0, 8)?, tol)?;
        let s = MetricPl { svf: &f, tol };
        let gs = ProbeGrid::new(&s, 512)?;
        let go = ProbeGrid::new(&o, 512)?;
        let mut worst = f64::INFINITY;
        for d in [1.0 / 64.0, 1.0 / 16.0, 0.25] {
            worst = worst.min(5.0 * go.modulus(d)? * 1.01 - gs.modulus(d)?);
        }
        ctx.check(
            &format!("modulus-factor-5-{}", o.name()),
            worst >= 0.0,
            format!("min margin {}", sci(worst)),
        );
        if let Some(l) = o.lipschitz() {
            let est = estimate_lipschitz(&s, LIPSCHITZ_PAIRS, ctx.seed ^ 12)?;
            ctx.check(
                &format!("lipschitz-preserved-{}", o.name()),
                est <= l * (1.0 + 1e-9),
                format!("estimate {} vs L {}", sci(est), sci(l)),
            );
        }
    }

    // selections vary within twice the modulus on each knot interval
    for o in [BuiltinOracle::a(), BuiltinOracle::b(), BuiltinOracle::c()] {
        let f = SampledSvf::sample(&o, Partition::uniform(0.0, 1.0, 8)?, tol)?;
        let go = ProbeGrid::new(&o, 1024)?;
        let h = 1.0 / 8.0;
        let (w_full, w_half) = (go.modulus(h)?, go.modulus(h / 2.0)?);
        let sel = selections(&f, &tol)?.sample(2);
        let mut worst = f64::INFINITY;
        for s in &sel {
            for w in s.knot_values().windows(2) {
                let jump = (w[1][0] - w[0][0]).abs();
                worst = worst
                    .min(2.0 * w_full * 1.01 - jump)
                    .min(2.0 * w_half * 1.01 - jump / 2.0);
            }
        }
        ctx.check(
            &format!("selection-modulus-{}", o.name()),
            worst >= 0.0,
            format!("{} selections, min margin {}", sel.len(), sci(worst)),
        );
    }
    Ok(())
}

fn operators(ctx: &mut Ctx) -> Result<()> {
    let tol = Tolerance::default();

    let mut worst = 0.0_f64;
    let specs = [
        (OperatorSpec::bernstein(), Partition::uniform(0.0, 1.0, 20)?),
        (OperatorSpec::bernstein(), Partition::uniform(0.0, 1.0, 64)?),
        (OperatorSpec::schoenberg(2)?, Partition::uniform(0.0, 1.0, 16)?),
        (OperatorSpec::schoenberg(3)?, Partition::uniform(0.0, 1.0, 16)?),
        (OperatorSpec::schoenberg(4)?, Partition::uniform(0.0, 1.0, 16)?),
        (
            OperatorSpec::lagrange(),
            Partition::new(vec![0.0, 0.2, 0.3, 0.7, 1.0])?,
        ),
    ];
    for (spec, p) in &specs {
        let d = spec.valid_domain(p)?;
        for k in 0..=50 {
            let x = d.lo() + d.len() * k as f64 / 50.0;
            let s: f64 = spec.coefficients(p, x)?.iter().sum();
            worst = worst.max((s - 1.0).abs());
        }
    }
    ctx.check(
        "partition-of-unity",
        worst <= 1e-12,
        format!("{} families, max deviation {}", specs.len(), sci(worst)),
    );

    // singleton data reproduce the scalar operators
    let mut r = ctx.rng(21);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let n = r.gen_range(3..=8);
        let p = Partition::uniform(0.0, 1.0, n)?;
        let vals: Vec<f64> = (0..=n).map(|_| r.gen_range(-5.0..5.0)).collect();
        let f = SampledSvf::with_tolerance(
            p.clone(),
            vals.iter()
                .map(|&v| CompactSet::intervals(&[(v, v)]))
                .collect::<Result<_>>()?,
            tol,
        )?;
        let scalar: Vec<Vec<f64>> = vals.iter().map(|&v| vec![v]).collect();
        for spec in [
            OperatorSpec::bernstein(),
            OperatorSpec::schoenberg(3)?,
            OperatorSpec::lagrange(),
        ] {
            let d = spec.valid_domain(&p)?;
            for k in 0..=8 {
                let x = d.lo() + d.len() * k as f64 / 8.0;
                let want = spec.apply_scalar(&p, &scalar, x)?[0];
                let got = apply_metric_operator(&spec, &f, x, &tol)?;
                worst = worst.max(singleton_gap(&got, want));
                if matches!(spec.kind, crate::operators::OperatorKind::Bernstein) {
                    worst = worst.max(singleton_gap(&decasteljau_ma_bernstein(&f, x, &tol)?, want));
                }
            }
        }
    }
    ctx.check(
        "singleton-consistency",
        worst <= 1e-12,
        format!("20 datasets, max deviation {}", sci(worst)),
    );

    // parabolic interpolation examples
    let ex1 = example_one()?;
    let at4 = apply_metric_operator(&OperatorSpec::lagrange(), &ex1, 4.0, &tol)?;
    let want = CompactSet::intervals(&[(4.0, 6.0)])?;
    let d = at4.hausdorff(&want)?;
    ctx.check("lagrange-example", d <= 1e-9, format!("x = 4 gives {at4}"));
    let brute = lagrange_example_on_grid(1e-3, &tol)?;
    let db = brute.hausdorff(&want)?;
    ctx.check(
        "lagrange-example-grid",
        db <= 1e-3 * 5.0 / 3.0 + 1e-12,
        format!("grid 1e-3 gives {brute}"),
    );
    let mut node_failures = 0;
    for f in [example_one()?, example_two()?] {
        for (x, v) in f.partition().knots().iter().zip(f.values()) {
            let got = apply_metric_operator(&OperatorSpec::lagrange(), &f, *x, &tol)?;
            if got.hausdorff(v)? > 0.0 {
                node_failures += 1;
            }
        }
    }
    ctx.check(
        "lagrange-node-interpolation",
        node_failures == 0,
        format!("6 nodes, {node_failures} mismatches"),
    );
    let gate = apply_minkowski_operator(&OperatorSpec::lagrange(), &ex1, 4.0, &tol);
    ctx.check(
        "minkowski-negative-gate",
        matches!(gate, Err(Error::UnsupportedOperator(_))),
        "Lagrange off the nodes is rejected".into(),
    );
    Ok(())
}

fn singleton_gap(set: &CompactSet, v: f64) -> f64 {
    match set.as_intervals() {
        Some(u) => (u.min() - v).abs().max((u.max() - v).abs()),
        None => f64::INFINITY,
    }
}

/// Knots `0, 2, 6` with values `[2, 8], {5}, {5}`.
pub fn example_one() -> Result<SampledSvf> {
    SampledSvf::new(
        Partition::new(vec![0.0, 2.0, 6.0])?,
        vec![
            CompactSet::intervals(&[(2.0, 8.0)])?,
            CompactSet::intervals(&[(5.0, 5.0)])?,
            CompactSet::intervals(&[(5.0, 5.0)])?,
        ],
    )
}

/// Knots `0, 4, 8` with values `[2, 4] ∪ [6, 8], [4.5, 5.5], [2, 4] ∪ [6, 8]`.
pub fn example_two() -> Result<SampledSvf> {
    let outer = CompactSet::intervals(&[(2.0, 4.0), (6.0, 8.0)])?;
    SampledSvf::new(
        Partition::new(vec![0.0, 4.0, 8.0])?,
        vec![outer.clone(), CompactSet::intervals(&[(4.5, 5.5)])?, outer],
    )
}

/// The first example at `x = 4` through the discrete engine on a grid.
pub fn lagrange_example_on_grid(step: f64, tol: &Tolerance) -> Result<CompactSet> {
    let f = example_one()?;
    let c = OperatorSpec::lagrange().coefficients(f.partition(), 4.0)?;
    let sets = f
        .values()
        .iter()
        .map(|v| discretize(v.as_intervals().expect("intervals"), step, tol).map(CompactSet::from))
        .collect::<Result<Vec<_>>>()?;
    let pts = metric_linear_combination(&c, &sets, tol)?;
    let xs: Vec<f64> = pts
        .as_cloud()
        .expect("cloud")
        .points()
        .iter()
        .map(|p| p[0])
        .collect();
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    CompactSet::intervals(&[(lo, hi)])
}

fn bounds(ctx: &mut Ctx) -> Result<()> {
    let tol = Tolerance::default();
    let ns = [8, 16, 32, 64];

    // Schoenberg on a nonconvex Lipschitz family
    let o = BuiltinOracle::b();
    for m in [2, 3] {
        let report = error_curve(
            &o,
            &Approximant::Metric(OperatorSpec::schoenberg(m)?),
            &ns,
            &EvalGrid::Uniform(256),
            &tol,
        )?;
        let model = ErrorModel::new(o.lipschitz(), 0.0, Phi::Linear)?;
        let chk = bound_check(&report, &model, &BoundKind::SchoenbergLipschitz { m }, 0.0)?;
        let slope = report.slope.unwrap_or(f64::NAN);
        ctx.check(
            &format!("schoenberg-lipschitz-m{m}"),
            chk.passed && (slope + 1.0).abs() <= 0.2,
            format!("worst margin {}, slope {slope:.4}", sci(chk.worst_margin)),
        );
        ctx.table(&format!("schoenberg-lipschitz-m{m}"), chk.to_csv());
    }

    // Schoenberg on a continuous oracle, uniform partitions only
    let o = BuiltinOracle::c();
    let deltas: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
    let model = ErrorModel::new(None, 0.0, Phi::Linear)?.with_omega(&o, &deltas, 4096)?;
    for m in [2, 3] {
        let report = error_curve(
            &o,
            &Approximant::Metric(OperatorSpec::schoenberg(m)?),
            &ns,
            &EvalGrid::Uniform(256),
            &tol,
        )?;
        let chk = bound_check(&report, &model, &BoundKind::SchoenbergContinuous { m }, 0.01)?;
        ctx.check(
            &format!("schoenberg-continuous-m{m}"),
            chk.passed,
            format!("worst margin {}", sci(chk.worst_margin)),
        );
    }
    let nonuniform = error_curve_on(
        &o,
        &Approximant::MetricPl,
        vec![Partition::new(vec![0.0, 0.3, 1.0])?],
        &EvalGrid::Uniform(4),
        &tol,
    )?;
    let gate = bound_check(&nonuniform, &model, &BoundKind::ContinuousTheorem, 0.0);
    ctx.check(
        "uniformity-gate",
        gate == Err(Error::NonUniformPartition),
        "continuity-only bound refuses a nonuniform partition".into(),
    );

    // Bernstein rate at x = 1/2 on the convex kink family
    let family = [0.5, 0.75, 1.0, 1.25, 1.5, 2.0];
    let grid = EvalGrid::Points(vec![0.5]);
    let curves = family
        .iter()
        .map(|&s| {
            let o = BuiltinOracle::ConvexKink { s };
            let r = error_curve(
                &o,
                &Approximant::Metric(OperatorSpec::bernstein()),
                &ns,
                &grid,
                &tol,
            )?;
            Ok((r, ErrorModel::new(o.lipschitz(), 0.0, Phi::Bernstein)?))
        })
        .collect::<Result<Vec<(ConvergenceReport, ErrorModel)>>>()?;
    let monotone = curves.iter().all(|(r, _)| r.is_nonincreasing());
    let slopes: Vec<f64> = curves.iter().map(|(r, _)| r.slope.unwrap_or(f64::NAN)).collect();
    let slope_ok = slopes.iter().all(|s| (s + 0.5).abs() <= 0.15);
    let pairs: Vec<(&ConvergenceReport, &ErrorModel)> = curves.iter().map(|(r, m)| (r, m)).collect();
    let (first, second) = pairs.split_at(pairs.len() / 2);
    let cv = cross_validate_constant(first, second, &BoundKind::BernsteinLipschitz, FitMode::Rate)?;
    ctx.check(
        "bernstein-rate",
        monotone && slope_ok,
        format!(
            "slopes {}",
            slopes
                .iter()
                .map(|s| format!("{s:.4}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    );
    ctx.check(
        "bernstein-constant-split",
        cv.relative_spread() <= 0.25 && cv.margin >= -1e-12,
        format!(
            "C {:.4} vs {:.4}, margin {}",
            cv.c_first,
            cv.c_second,
            sci(cv.margin)
        ),
    );
    let mut csv = String::from("n,error\n");
    for l in &curves[2].0.levels {
        let _ = writeln!(csv, "{},{}", l.n, l.max_error());
    }
    ctx.table("bernstein-rate-a", csv);

    // Lipschitz theorem form, constant fitted on half of a family
    let family = [0.1, 0.2, 0.3, 0.4];
    let curves = family
        .iter()
        .map(|&k| {
            let o = BuiltinOracle::NonconvexShift { k };
            let r = error_curve(
                &o,
                &Approximant::Metric(OperatorSpec::schoenberg(3)?),
                &ns,
                &EvalGrid::Uniform(64),
                &tol,
            )?;
            Ok((r, ErrorModel::new(o.lipschitz(), 0.0, Phi::Linear)?))
        })
        .collect::<Result<Vec<(ConvergenceReport, ErrorModel)>>>()?;
    let pairs: Vec<(&ConvergenceReport, &ErrorModel)> = curves.iter().map(|(r, m)| (r, m)).collect();
    let (first, second) = pairs.split_at(2);
    let cv = cross_validate_constant(first, second, &BoundKind::LipschitzTheorem, FitMode::Tight)?;
    ctx.check(
        "lipschitz-theorem-form",
        cv.margin >= -1e-12,
        format!("C {:.4}, held-out margin {}", cv.c_first, sci(cv.margin)),
    );

    // bounded-variation form on the square-root oracle: a constant fitted
    // on coarse levels holds on fine levels
    let o = BuiltinOracle::c();
    let profile = total_variation(&o, &Partition::uniform(0.0, 1.0, 4096)?)?;
    let all_ns = [4, 8, 16, 32, 64];
    let deltas: Vec<f64> = all_ns.iter().map(|&n| 1.0 / n as f64).collect();
    let model = ErrorModel::new(None, 0.0, Phi::Bernstein)?
        .with_omega(&o, &deltas, 4096)?
        .with_variation(profile);
    let grid = EvalGrid::Points((1..16).map(|k| k as f64 / 16.0).collect());
    let coarse = error_curve(
        &o,
        &Approximant::Metric(OperatorSpec::bernstein()),
        &all_ns[..3],
        &grid,
        &tol,
    )?;
    let fine = error_curve(
        &o,
        &Approximant::Metric(OperatorSpec::bernstein()),
        &all_ns[3..],
        &grid,
        &tol,
    )?;
    let c = fit_constant(&[&coarse], &model, &BoundKind::BernsteinCbv, FitMode::Tight)?;
    let chk = bound_check(&fine, &model.clone().with_c(c), &BoundKind::BernsteinCbv, 0.05)?;
    ctx.check(
        "cbv-theorem-form",
        chk.passed,
        format!("C {c:.4}, held-out margin {}", sci(chk.worst_margin)),
    );

    // the harness rejects a bound with a halved constant
    let o = BuiltinOracle::b();
    let report = error_curve(
        &o,
        &Approximant::Metric(OperatorSpec::schoenberg(3)?),
        &ns,
        &EvalGrid::Uniform(64),
        &tol,
    )?;
    let model = ErrorModel::new(o.lipschitz(), 0.0, Phi::Linear)?;
    let halved = BoundKind::Scaled {
        inner: Box::new(BoundKind::SchoenbergLipschitz { m: 3 }),
        factor: 0.25,
    };
    let chk = bound_check(&report, &model, &halved, 0.0)?;
    ctx.check(
        "harness-self-test",
        !chk.passed && chk.worst_margin < 0.0,
        format!("scaled bound violated by {}", sci(-chk.worst_margin)),
    );
    Ok(())
}

fn convexification(ctx: &mut Ctx) -> Result<()> {
    let tol = Tolerance::default();
    let a = CompactSet::intervals(&[(0.0, 0.0), (1.0, 1.0)])?;
    let ns: Vec<usize> = (1..=12).collect();
    let table = convexification_demo(&a, &ns, &tol)?;
    let mut oracle_gap = 0.0_f64;
    for row in &table.rows {
        let want = gap_to_unit_interval(&binomial_subset_sums(row.n));
        oracle_gap = oracle_gap.max((row.minkowski - want).abs());
    }
    let monotone = table.rows.windows(2).all(|w| w[1].minkowski <= w[0].minkowski);
    let metric_zero = table.rows.iter().all(|r| r.metric == 0.0);
    ctx.check(
        "two-point-minkowski",
        oracle_gap <= 1e-12 && monotone,
        format!("N = 1..12, max deviation from subset sums {}", sci(oracle_gap)),
    );
    ctx.check(
        "two-point-metric",
        metric_zero,
        "metric Bernstein of a constant is the constant".into(),
    );
    ctx.table("convexification-two-points", table.to_csv());

    let b = CompactSet::intervals(&[(2.0, 4.0), (6.0, 8.0)])?;
    let table = convexification_demo(&b, &[1, 2, 4, 8], &tol)?;
    let metric_zero = table.rows.iter().all(|r| r.metric <= tol.merge_eps);
    ctx.check(
        "two-interval-hull-gap",
        table.hull_gap == 1.0 && metric_zero,
        format!("initial gap {}", table.hull_gap),
    );
    ctx.table("convexification-two-intervals", table.to_csv());
    Ok(())
}
