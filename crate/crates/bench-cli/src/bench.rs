//! Verification pass and single-threaded timing of one method over a batch.

use std::collections::BTreeMap;
use std::hint::black_box;
use std::time::Instant;

use circumsphere::{
    circumsphere3_projective, circumsphere3_standard, circumsphere_facet_projective, circumsphere_simplex_linear,
    circumsphere_tetrahedron_closed, equidistance_residual, Coords, GeometryError, SimplexN, Sphere, Tetrahedron3,
    Triangle3,
};

use crate::config::{BenchConfig, Family, Method};
use crate::dispatch::{compute, error_kind, prepare, Prepared};
use crate::generate::{generate_inputs, Batch};
use crate::report::{BenchReport, ReportRow};
use crate::HarnessError;

pub const WARMUP_PASSES: usize = 3;
pub const REPETITIONS: usize = 9;
/// Minimum number of method calls per timed repetition.
pub const MIN_OPS_PER_REP: usize = 100_000;

/// Per-op wall time over the timed repetitions, in nanoseconds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingStats {
    pub median: f64,
    pub p10: f64,
    pub p90: f64,
}

impl TimingStats {
    fn from_samples(mut samples: Vec<f64>) -> Self {
        samples.sort_by(f64::total_cmp);
        let at = |q: f64| samples[((samples.len() - 1) as f64 * q).round() as usize];
        Self {
            median: at(0.5),
            p10: at(0.1),
            p90: at(0.9),
        }
    }
}

/// Everything measured for one method on one batch.
#[derive(Clone, Debug)]
pub struct MethodRun {
    pub report: BenchReport,
    /// Failed instances keyed by error kind.
    pub failure_kinds: BTreeMap<&'static str, usize>,
    /// Uniform draws rejected by the conditioning filter.
    pub rejected: usize,
}

#[derive(Default)]
struct ResidualStats {
    max: f64,
    sum: f64,
    n: usize,
    failures: usize,
}

impl ResidualStats {
    fn push(&mut self, r: f64) {
        self.max = self.max.max(r);
        self.sum += r;
        self.n += 1;
    }

    fn max(&self) -> Option<f64> {
        (self.n > 0).then_some(self.max)
    }

    fn mean(&self) -> Option<f64> {
        (self.n > 0).then(|| self.sum / self.n as f64)
    }
}

enum Timed {
    Triangles(Vec<Triangle3>),
    Tetrahedra(Vec<Tetrahedron3>),
    Simplices(Vec<SimplexN>),
}

impl Timed {
    fn len(&self) -> usize {
        match self {
            Timed::Triangles(v) => v.len(),
            Timed::Tetrahedra(v) => v.len(),
            Timed::Simplices(v) => v.len(),
        }
    }
}

#[inline(always)]
fn consume<V: Coords, const SQRT: bool>(s: &Sphere<V>) -> f64 {
    let c: f64 = s.center.as_slice().iter().sum();
    if SQRT {
        c + s.radius()
    } else {
        c + s.radius_sq
    }
}

fn sweep<T, V: Coords, const SQRT: bool>(inputs: &[T], f: fn(&T) -> Result<Sphere<V>, GeometryError>) -> f64 {
    let mut acc = 0.0;
    for t in inputs {
        if let Ok(s) = f(black_box(t)) {
            acc += consume::<V, SQRT>(&s);
        }
    }
    acc
}

fn one_pass<const SQRT: bool>(method: Method, timed: &Timed) -> f64 {
    match (method, timed) {
        (Method::Standard, Timed::Triangles(v)) => sweep::<_, _, SQRT>(v, circumsphere3_standard),
        (Method::Projective, Timed::Triangles(v)) => sweep::<_, _, SQRT>(v, circumsphere3_projective),
        (Method::TetraClosed, Timed::Tetrahedra(v)) => sweep::<_, _, SQRT>(v, circumsphere_tetrahedron_closed),
        (Method::Linear, Timed::Simplices(v)) => sweep::<_, _, SQRT>(v, circumsphere_simplex_linear),
        (Method::FacetProjective, Timed::Simplices(v)) => sweep::<_, _, SQRT>(v, circumsphere_facet_projective),
        _ => unreachable!("timed inputs are built for the method"),
    }
}

fn time_rep<const SQRT: bool>(method: Method, timed: &Timed, inner: usize) -> f64 {
    let start = Instant::now();
    let mut acc = 0.0;
    for _ in 0..inner {
        acc += one_pass::<SQRT>(method, timed);
    }
    black_box(acc);
    start.elapsed().as_nanos() as f64 / (inner * timed.len()) as f64
}

/// Times the `r²` path and, if asked, the `r` path. With both, repetitions
/// alternate so that slow drifts affect the two modes alike.
fn time_method(method: Method, timed: &Timed, with_sqrt: bool) -> (TimingStats, Option<TimingStats>) {
    let inner = MIN_OPS_PER_REP.div_ceil(timed.len());
    for _ in 0..WARMUP_PASSES {
        time_rep::<false>(method, timed, inner);
        if with_sqrt {
            time_rep::<true>(method, timed, inner);
        }
    }
    let mut plain = Vec::with_capacity(REPETITIONS);
    let mut rooted = Vec::with_capacity(REPETITIONS);
    for _ in 0..REPETITIONS {
        plain.push(time_rep::<false>(method, timed, inner));
        if with_sqrt {
            rooted.push(time_rep::<true>(method, timed, inner));
        }
    }
    (
        TimingStats::from_samples(plain),
        with_sqrt.then(|| TimingStats::from_samples(rooted)),
    )
}

fn verify_batch(
    method: Method,
    batch: &Batch,
) -> (
    ResidualStats,
    BTreeMap<u32, ResidualStats>,
    BTreeMap<&'static str, usize>,
    Vec<Prepared>,
) {
    let mut total = ResidualStats::default();
    let mut by_exponent: BTreeMap<u32, ResidualStats> = BTreeMap::new();
    let mut kinds = BTreeMap::new();
    let mut ok = Vec::new();
    for (i, coords) in batch.iter().enumerate() {
        let bucket = batch.exponents.get(i).map(|e| by_exponent.entry(*e).or_default());
        let outcome = compute(method, coords, batch.dim).and_then(|s| {
            if s.is_finite() {
                Ok(s)
            } else {
                Err(GeometryError::NonFinite { index: i })
            }
        });
        match outcome {
            Ok(s) => {
                let rows: Vec<&[f64]> = coords.chunks_exact(batch.dim).collect();
                let r = equidistance_residual(&s, &rows);
                total.push(r);
                if let Some(b) = bucket {
                    b.push(r);
                }
                ok.push(prepare(method, coords, batch.dim).expect("already solved once"));
            }
            Err(e) => {
                total.failures += 1;
                if let Some(b) = bucket {
                    b.failures += 1;
                }
                *kinds.entry(error_kind(&e)).or_insert(0) += 1;
            }
        }
    }
    (total, by_exponent, kinds, ok)
}

fn to_timed(prepared: Vec<Prepared>) -> Option<Timed> {
    let first = prepared.first()?;
    Some(match first {
        Prepared::Triangle(_) => Timed::Triangles(
            prepared
                .into_iter()
                .map(|p| match p {
                    Prepared::Triangle(t) => t,
                    _ => unreachable!(),
                })
                .collect(),
        ),
        Prepared::Tetrahedron(_) => Timed::Tetrahedra(
            prepared
                .into_iter()
                .map(|p| match p {
                    Prepared::Tetrahedron(t) => t,
                    _ => unreachable!(),
                })
                .collect(),
        ),
        Prepared::Simplex(_) => Timed::Simplices(
            prepared
                .into_iter()
                .map(|p| match p {
                    Prepared::Simplex(s) => s,
                    _ => unreachable!(),
                })
                .collect(),
        ),
    })
}

/// Generates the batch, verifies every instance, then times the method over
/// the instances that succeeded.
pub fn bench_method(cfg: &BenchConfig) -> Result<MethodRun, HarnessError> {
    let batch = generate_inputs(cfg)?;
    let (total, by_exponent, failure_kinds, ok) = verify_batch(cfg.method, &batch);
    let timing = to_timed(ok).map(|t| time_method(cfg.method, &t, cfg.compute_radius));

    let row = |method: String, family: String, count: usize, stats: &ResidualStats, t: Option<TimingStats>| ReportRow {
        method,
        family,
        dim: cfg.dim,
        count,
        seed: cfg.seed,
        ns_op_median: t.map(|t| t.median),
        ns_op_p10: t.map(|t| t.p10),
        ns_op_p90: t.map(|t| t.p90),
        max_resid: stats.max(),
        mean_resid: stats.mean(),
        failures: stats.failures,
        speedup_vs_standard: None,
    };

    let family = cfg.family.name().to_string();
    let mut rows = vec![row(
        cfg.method.name().into(),
        family.clone(),
        cfg.count,
        &total,
        timing.map(|t| t.0),
    )];
    if cfg.compute_radius {
        rows.push(row(
            format!("{}+sqrt", cfg.method),
            family.clone(),
            cfg.count,
            &total,
            timing.and_then(|t| t.1),
        ));
    }
    for (e, stats) in &by_exponent {
        rows.push(row(
            cfg.method.name().into(),
            format!("{family}:{e}"),
            stats.n + stats.failures,
            stats,
            None,
        ));
    }
    Ok(MethodRun {
        report: BenchReport { rows },
        failure_kinds,
        rejected: batch.rejected,
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, HarnessError> {
    Ok(bench_method(cfg)?.report)
}

/// Runs several methods on the same family and fills in the speedup of each
/// timed row over the matching `standard` row.
pub fn run_suite(
    methods: &[Method],
    family: Family,
    count: usize,
    dim: usize,
    seed: u64,
    compute_radius: bool,
) -> Result<(BenchReport, Vec<MethodRun>), HarnessError> {
    let mut runs = Vec::new();
    for &m in methods {
        runs.push(bench_method(
            &BenchConfig::new(m, family, count, dim, seed).with_radius(compute_radius),
        )?);
    }
    let mut rows: Vec<ReportRow> = runs.iter().flat_map(|r| r.report.rows.clone()).collect();
    fill_speedups(&mut rows);
    Ok((BenchReport { rows }, runs))
}

fn fill_speedups(rows: &mut [ReportRow]) {
    let baseline = |suffix: &str, family: &str, rows: &[ReportRow]| {
        rows.iter()
            .find(|r| r.method == format!("standard{suffix}") && r.family == family)
            .and_then(|r| r.ns_op_median)
    };
    // only methods that consume the same triangles as `standard` are comparable
    let comparable = |r: &ReportRow| {
        r.method
            .trim_end_matches("+sqrt")
            .parse::<Method>()
            .is_ok_and(|m| r.dim == 3 && m.vertex_count(r.dim) == 3)
    };
    let bases: Vec<Option<f64>> = rows
        .iter()
        .map(|r| {
            let suffix = if r.method.ends_with("+sqrt") { "+sqrt" } else { "" };
            baseline(suffix, &r.family, rows).filter(|_| comparable(r))
        })
        .collect();
    for (r, base) in rows.iter_mut().zip(bases) {
        if let (Some(b), Some(t)) = (base, r.ns_op_median) {
            r.speedup_vs_standard = Some(b / t);
        }
    }
}

/// Fraction of the `r` path's time spent beyond the `r²` path, from the
/// medians of `method` and `method+sqrt`.
pub fn sqrt_share(report: &BenchReport, method: &str, family: &str) -> Option<f64> {
    let plain = report.row(method, family)?.ns_op_median?;
    let rooted = report.row(&format!("{method}+sqrt"), family)?.ns_op_median?;
    Some((rooted - plain) / rooted)
}
