//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Seeds are fixed up front; a failing statistical check is reported as is.

use std::f64::consts::{PI, SQRT_2};
use std::process::{Command, ExitCode};
use std::time::Instant;

use firewatch_core::analytic::{
    grid_moments, grid_td_cdf, grid_td_law, random_ad_exact_law, random_ad_limit_law,
    random_td_law, random_td_moments,
};
use firewatch_core::geometry::{burned_union_area, ellipse_reach_time, Ellipse, EllipseGrowth};
use firewatch_core::montecarlo::{
    ks_critical_value, ks_distance, run_trials, summarize, Placement, ScenarioConfig,
};
use firewatch_core::planning::compare_random_sweep;
use firewatch_core::{Point, RectRegion, SpreadModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIALS: usize = 100_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn grid_constant() -> f64 {
    SQRT_2 + (1.0 + SQRT_2).ln()
}

fn grid_closed_forms() -> Outcome {
    let m = grid_moments(1.0, 1.0).unwrap();
    let c = grid_constant();
    let mean_ok = (m.mean_td - c / 6.0).abs() <= 1e-9;
    let var_ok =
        (m.var_td - (1.0 / 6.0 - c * c / 36.0)).abs() <= 1e-9 && (m.var_td - 0.0203).abs() < 5e-5;
    let ad_ok = (m.mean_ad - PI / 6.0).abs() <= 1e-9;
    let cdf = grid_td_cdf(0.5, 1.0, 1.0).unwrap();
    let cdf_ok = (cdf - PI / 4.0).abs() <= 1e-12;
    Outcome::new(
        mean_ok && var_ok && ad_ok && cdf_ok,
        format!(
            "mean_td={:.12} var_td={:.12} mean_ad={:.12} F(D/2)-pi/4={:.1e}",
            m.mean_td,
            m.var_td,
            m.mean_ad,
            cdf - PI / 4.0
        ),
    )
}

fn grid_quadrature() -> Outcome {
    let law = grid_td_law(1.0, 1.0).unwrap();
    let (mean, second) = law.quadrature_moments(1e-12);
    let m = grid_moments(1.0, 1.0).unwrap();
    let var = second - mean * mean;
    let errs = [
        (mean - m.mean_td).abs(),
        (second - m.second_moment_td).abs(),
        (var - m.var_td).abs(),
    ];
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    Outcome::new(
        worst <= 1e-6,
        format!("mean={mean:.10} second={second:.10} var={var:.10} worst_err={worst:.1e}"),
    )
}

fn grid_simulation() -> Outcome {
    let mut cfg = ScenarioConfig::new(
        RectRegion::new(10.0, 10.0).unwrap(),
        Placement::Grid { spacing: 1.0 },
        SpreadModel::circular(1.0).unwrap(),
    );
    cfg.trials = TRIALS;
    cfg.master_seed = 301;
    let out = run_trials(&cfg).unwrap();
    let s = summarize(&out).unwrap();
    let target = grid_constant() / 6.0;
    let max_td = s.ecdf_td.last().copied().unwrap();
    let ks = ks_distance(&s.ecdf_td, &grid_td_law(1.0, 1.0).unwrap()).unwrap();
    let mean_ok = (s.mean_td - target).abs() <= 3.0 * s.se_td;
    let max_ok = max_td <= 1.0 / SQRT_2;
    let ks_ok = ks < 0.005;
    Outcome::new(
        mean_ok && max_ok && ks_ok,
        format!(
            "mean_td={:.5} (target {target:.5}, 3se={:.5}) max_td={max_td:.6} ks={ks:.5}",
            s.mean_td,
            3.0 * s.se_td
        ),
    )
}

fn random_config(n: usize, model: SpreadModel, ignitions: usize, seed: u64) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::new(
        RectRegion::square_with_area(n as f64).unwrap(),
        Placement::Random { count: n },
        model,
    );
    cfg.trials = TRIALS;
    cfg.master_seed = seed;
    cfg.ignition_count = ignitions;
    cfg.clip_to_region = true;
    cfg.resample_layout_each_trial = true;
    cfg
}

fn exact_finite_law() -> Outcome {
    let band = ks_critical_value(TRIALS, 0.01);
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, n) in [10usize, 100, 1000].into_iter().enumerate() {
        let cfg = random_config(n, SpreadModel::circular(1.0).unwrap(), 1, 401 + i as u64);
        let s = summarize(&run_trials(&cfg).unwrap()).unwrap();
        let law = random_ad_exact_law(cfg.region.area(), n).unwrap();
        let ks = ks_distance(&s.ecdf_ad, &law).unwrap();
        pass &= ks < band;
        parts.push(format!("N={n} ks={ks:.5}"));
    }
    Outcome::new(pass, format!("{} (99% band {band:.5})", parts.join(" ")))
}

fn limit_law_cases() -> Outcome {
    let band = ks_critical_value(TRIALS, 0.01);
    let law = random_ad_limit_law(1.0).unwrap();
    let cases = [
        ("circular", SpreadModel::circular(1.0).unwrap(), 1),
        (
            "elliptical",
            SpreadModel::elliptical(1.0, 2.0, 2.0, 0.0).unwrap(),
            1,
        ),
        ("circular x3", SpreadModel::circular(1.0).unwrap(), 3),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (name, model, ignitions)) in cases.into_iter().enumerate() {
        let cfg = random_config(10_000, model, ignitions, 501 + i as u64);
        let s = summarize(&run_trials(&cfg).unwrap()).unwrap();
        let ks = ks_distance(&s.ecdf_ad, &law).unwrap();
        let ok =
            ks < band && (s.mean_ad - 1.0).abs() <= 3.0 * s.se_ad && (s.var_ad - 1.0).abs() <= 0.1;
        pass &= ok;
        parts.push(format!(
            "[{name}: ks={ks:.5} mean={:.4}±{:.4} var={:.4}]",
            s.mean_ad,
            3.0 * s.se_ad,
            s.var_ad
        ));
    }
    Outcome::new(pass, format!("{} (99% band {band:.5})", parts.join(" ")))
}

fn sweep_convergence() -> Outcome {
    let model = SpreadModel::circular(1.0).unwrap();
    let template = random_config(10, model, 1, 601);
    let cmp = compare_random_sweep(&template, 1.0, &[10, 100, 1000, 10_000], 0).unwrap();
    let theory = random_td_moments(&model, 1.0).unwrap();
    let mean_gap: Vec<f64> = cmp
        .rows
        .iter()
        .map(|r| (r.mean_td - theory.mean_td).abs())
        .collect();
    let var_gap: Vec<f64> = cmp
        .rows
        .iter()
        .map(|r| (r.var_td - theory.var_td).abs())
        .collect();
    let decreasing = |g: &[f64]| g.windows(2).all(|w| w[1] < w[0]);
    let last = cmp.rows.last().unwrap();
    let mean_ok = mean_gap[3] <= 3.0 * last.se_td;
    let var_ok = var_gap[3] <= 3.0 * last.se_var_td;
    let pass = decreasing(&mean_gap) && decreasing(&var_gap) && mean_ok && var_ok;
    let fmt = |g: &[f64]| {
        g.iter()
            .map(|x| format!("{x:.5}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    Outcome::new(
        pass,
        format!(
            "|mean-{:.4}|=[{}] |var-{:.5}|=[{}]; N=1e4: mean {:.5} (3se {:.5}), var {:.5} (3se {:.5})",
            theory.mean_td,
            fmt(&mean_gap),
            theory.var_td,
            fmt(&var_gap),
            last.mean_td,
            3.0 * last.se_td,
            last.var_td,
            3.0 * last.se_var_td
        ),
    )
}

fn elliptical_moments() -> Outcome {
    let (hb, lb) = (2.0f64, 2.0f64);
    let model = SpreadModel::elliptical(1.0, hb, lb, 0.0).unwrap();
    let (mean, _) = random_td_law(&model, 1.0)
        .unwrap()
        .quadrature_moments(1e-12);
    let closed = 2.0 * lb.sqrt() / (1.0 + 1.0 / hb) * 0.5;
    let ell_ok = (mean - closed).abs() <= 1e-6;

    let unit = random_td_law(&SpreadModel::elliptical(1.0, 1.0, 1.0, 0.7).unwrap(), 1.0).unwrap();
    let circ = random_td_law(&SpreadModel::circular(1.0).unwrap(), 1.0).unwrap();
    let same_law = (0..200).all(|i| {
        let t = i as f64 * 0.01;
        unit.survival(t) == circ.survival(t)
    });
    let um = random_td_moments(&SpreadModel::elliptical(1.0, 1.0, 1.0, 0.7).unwrap(), 1.0).unwrap();
    let cm = random_td_moments(&SpreadModel::circular(1.0).unwrap(), 1.0).unwrap();
    let same_moments = um == cm;
    Outcome::new(
        ell_ok && same_law && same_moments,
        format!(
            "quadrature mean={mean:.10} closed={closed:.10} err={:.1e}; HB=LB=1 identical to circular: {}",
            (mean - closed).abs(),
            same_law && same_moments
        ),
    )
}

fn simulate_csv(threads: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_firewatch"))
        .args(["--threads", &threads.to_string(), "simulate"])
        .args([
            "--region",
            "40x30",
            "--sensors",
            "600",
            "--trials",
            "3000",
            "--seed",
            "801",
        ])
        .args([
            "--model",
            "elliptical",
            "--hb",
            "2.5",
            "--lb",
            "1.8",
            "--heading",
            "0.4",
        ])
        .args(["--ignitions", "2", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let runs: Result<Vec<_>, _> = [1, 2, 4].into_iter().map(simulate_csv).collect();
    match runs {
        Err(e) => Outcome::new(false, format!("simulate failed: {e}")),
        Ok(runs) => {
            let same = runs.windows(2).all(|w| w[0] == w[1]);
            let lines = runs[0].iter().filter(|&&b| b == b'\n').count();
            Outcome::new(
                same && lines == 3001,
                format!(
                    "threads 1/2/4, {lines} lines, {} bytes each, identical: {same}",
                    runs[0].len()
                ),
            )
        }
    }
}

/// Smallest `t` with `target` inside the front, by bisection on membership.
fn bisect_reach(growth: &EllipseGrowth, ign: Point, target: Point) -> f64 {
    let inside = |t: f64| growth.front(ign, t).contains(&target);
    let mut hi = 1e-6;
    while !inside(hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn geometry_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let rate = rng.gen_range(0.1..5.0);
        let hb = rng.gen_range(1.0..6.0);
        let lb = rng.gen_range(1.0..5.0);
        let heading = rng.gen_range(-PI..PI);
        let ign = Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let tgt = Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let t = ellipse_reach_time(rate, hb, lb, heading, &ign, &tgt).unwrap();
        let oracle = bisect_reach(
            &EllipseGrowth::new(rate, hb, lb, heading).unwrap(),
            ign,
            tgt,
        );
        worst = worst.max((t - oracle).abs() / oracle.max(1.0));
    }
    let region = RectRegion::new(50.0, 50.0).unwrap();
    let mut worst_area = 0.0f64;
    for r in [0.5, 2.0, 8.0] {
        let fronts = [
            Ellipse::circle(Point::new(25.0, 25.0), r),
            Ellipse::circle(Point::new(25.0 + r, 25.0), r),
        ];
        let lens = 2.0 * r * r * 0.5f64.acos() - 0.5 * r * (3.0 * r * r).sqrt();
        let expected = 2.0 * PI * r * r - lens;
        let area = burned_union_area(&fronts, &region, 1e-3).unwrap();
        worst_area = worst_area.max((area / expected - 1.0).abs());
    }
    Outcome::new(
        worst <= 1e-9 && worst_area <= 1e-3,
        format!(
            "reach time worst err={worst:.1e} over 1000 cases; lens worst rel err={worst_area:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("grid closed forms", grid_closed_forms),
        ("grid law quadrature", grid_quadrature),
        ("grid simulation", grid_simulation),
        ("exact finite-N burned area law", exact_finite_law),
        ("exponential limit, model independence", limit_law_cases),
        ("random-placement detection time sweep", sweep_convergence),
        ("elliptical detection-time moments", elliptical_moments),
        ("thread-count determinism", determinism),
        ("geometry oracles", geometry_oracles),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "{tag} [{}] {name} ({:.1}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
