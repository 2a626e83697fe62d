//! Self-checks of the library against its numeric anchors and
//! properties. Each criterion returns a deterministic report (timings are
//! kept separately) and any data files it produced.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derivatives::{
    a_derivative_bounds, bound_sweep, dq_db_at_b0, fd_derivative, FdTarget, DEFAULT_FD_STEP,
};
use crate::error::Result;
use crate::geometry::{
    self, fixed_data, lozi_apply, lozi_apply_n, lyapunov_delta, polygon_invariance, polygon_p,
    scan_zero_entropy, signed_distance, AnalyticCase, MapParams, PlanePoint, ScanGrid,
    ZeroEntropyVerdict,
};
use crate::io::{fmt_f64, header_text, pgm_bytes, Table};
use crate::pruning::{
    classify_cylinder, closed_form_q, entropy_estimate, eval_q, pruned_region_raster, Params,
    Raster, Verdict, DEFAULT_CELL_LIMIT,
};
use crate::symbolic::{Symbol, Word};
use crate::tent::{
    check_identity_shifted, check_identity_sum, identity_shifted_bound, identity_sum_bound,
    kneading, kneading_exact, tent_entropy_lap_ratio, BOUNDARY_TOL,
};

/// Sizes and budgets of the checks. [`Default`] gives the full-size suite.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Series depth.
    pub depth: usize,
    /// Side of the parameter grid for the closed-form check.
    pub grid: usize,
    pub random_heads: usize,
    /// Symbols per side of the `(2, 0)` raster.
    pub word_len: usize,
    pub bound_tail: usize,
    pub bound_head: usize,
    pub n_max: usize,
    /// Evenly spaced `a` values in `[1.4, 2.0]` for the monotonicity sweep.
    pub monotone_points: usize,
    pub lyapunov_points: usize,
    /// Side of the zero-entropy scan.
    pub scan: usize,
    pub arc_budget: f64,
    pub windows: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            depth: 40,
            grid: 50,
            random_heads: 500,
            word_len: 10,
            bound_tail: 14,
            bound_head: 200,
            n_max: 16,
            monotone_points: 13,
            lyapunov_points: 1000,
            scan: 100,
            arc_budget: 60.0,
            windows: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// One line per check, deterministic for a given config.
    pub details: Vec<String>,
    pub elapsed: Duration,
    pub artifacts: Vec<Artifact>,
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "closed-form q"),
    (2, "q maximum at (2, 0)"),
    (3, "empty pruned region at (2, 0)"),
    (4, "derivative anchors"),
    (5, "derivative bound lemmas"),
    (6, "kneading identities"),
    (7, "entropy brackets"),
    (8, "monotone entropy"),
    (9, "geometry at (1, 0.5)"),
    (10, "zero-entropy classifier"),
    (11, "orbit windows are not pruned"),
];

/// Accumulates named checks.
#[derive(Default)]
struct Checks {
    ok: bool,
    lines: Vec<String>,
    artifacts: Vec<Artifact>,
}

impl Checks {
    fn new() -> Self {
        Self {
            ok: true,
            ..Self::default()
        }
    }

    fn check(&mut self, passed: bool, line: String) {
        self.ok &= passed;
        self.lines
            .push(format!("[{}] {line}", if passed { "ok" } else { "FAIL" }));
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(
            elapsed <= limit,
            format!("runtime under {}s", limit.as_secs()),
        );
    }
}

fn special_head(len: usize) -> Vec<Symbol> {
    (0..len)
        .map(|i| if i == 0 { Symbol::Plus } else { Symbol::Minus })
        .collect()
}

fn random_symbols(rng: &mut ChaCha8Rng, len: usize) -> Vec<Symbol> {
    (0..len).map(|_| Symbol::from_sign(rng.gen())).collect()
}

fn closed_form(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    let start = Instant::now();
    let n = cfg.grid;
    let w = Word::new(vec![], special_head(cfg.depth + 1));
    let (mut worst, mut bad, mut tight, mut worst_tight) = (0.0f64, 0usize, 0usize, 0.0f64);
    for j in 0..n {
        let b = -0.9 + 1.8 * (j as f64 + 0.5) / n as f64;
        for i in 0..n {
            let a = 1.0 + b.abs() + 1.5 * (i + 1) as f64 / n as f64;
            let params = Params::new(a, b);
            let q = eval_q(&w, cfg.depth, &params)?;
            let d = (q.value - closed_form_q(&params)?).abs();
            worst = worst.max(d);
            bad += usize::from(d > q.err);
            if q.err <= 1e-10 {
                tight += 1;
                worst_tight = worst_tight.max(d);
            }
        }
    }
    c.check(
        bad == 0,
        format!(
            "{} grid points, {bad} outside the reported error, largest gap {:.3e}",
            n * n,
            worst
        ),
    );
    c.lines.push(format!(
        "{tight} points with error below 1e-10, largest gap there {worst_tight:.3e}"
    ));
    c.within(start.elapsed(), Duration::from_secs(10));
    Ok(())
}

fn q_maximum(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    let params = Params::new(2.0f64, 0.0);
    let len = cfg.depth + 1;
    let special = special_head(len);
    let q = eval_q(&Word::new(vec![], special.clone()), cfg.depth, &params)?;
    c.check(
        (q.value - 1.0).abs() <= 1e-10,
        format!("q(+,-,-,…) = {}", fmt_f64(q.value)),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut tested, mut largest) = (0usize, f64::NEG_INFINITY);
    while tested < cfg.random_heads {
        let head = random_symbols(&mut rng, len);
        if head == special {
            continue;
        }
        tested += 1;
        largest = largest.max(eval_q(&Word::new(vec![], head), cfg.depth, &params)?.value);
    }
    c.check(
        largest < 1.0,
        format!("{tested} random heads, largest q = {}", fmt_f64(largest)),
    );
    Ok(())
}

/// PGM of a pruned-region raster with its sidecar header.
pub fn raster_artifacts(r: &Raster, stem: &str) -> Vec<Artifact> {
    let levels: Vec<u8> = r.cells.iter().map(|v| v.pgm_level()).collect();
    let header = header_text(&[
        ("a", fmt_f64(r.a)),
        ("b", fmt_f64(r.b)),
        ("word_len", r.word_len.to_string()),
        ("depth", r.depth.to_string()),
        ("width", r.width.to_string()),
        ("height", r.height.to_string()),
        ("columns", "heads in <_s order".into()),
        ("rows", "tails in <_u order".into()),
        (
            "level_pruned",
            Verdict::CertifiedPruned.pgm_level().to_string(),
        ),
        ("level_unknown", Verdict::Unknown.pgm_level().to_string()),
        (
            "level_admissible",
            Verdict::CertifiedAdmissibleWindow.pgm_level().to_string(),
        ),
        ("pruned", r.count(Verdict::CertifiedPruned).to_string()),
        ("unknown", r.count(Verdict::Unknown).to_string()),
        (
            "admissible",
            r.count(Verdict::CertifiedAdmissibleWindow).to_string(),
        ),
    ]);
    vec![
        Artifact {
            name: format!("{stem}.pgm"),
            bytes: pgm_bytes(r.width, r.height, &levels),
        },
        Artifact {
            name: format!("{stem}.txt"),
            bytes: header.into_bytes(),
        },
    ]
}

fn empty_region(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    let start = Instant::now();
    let r = pruned_region_raster(
        &Params::new(2.0, 0.0),
        cfg.word_len,
        cfg.depth,
        DEFAULT_CELL_LIMIT,
    )?;
    let pruned = r.count(Verdict::CertifiedPruned);
    c.check(
        pruned == 0,
        format!(
            "{} cells with {} symbols per side, {pruned} pruned, {} unknown",
            r.cells.len(),
            cfg.word_len,
            r.count(Verdict::Unknown)
        ),
    );
    c.within(start.elapsed(), Duration::from_secs(120));
    c.artifacts
        .extend(raster_artifacts(&r, "pruned_region_2_0"));
    Ok(())
}

fn derivative_anchors(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    let params = Params::new(2.0, 0.0);
    let head = kneading_exact(2.0, cfg.depth + 2)?.symbols;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst_p = 0.0f64;
    for _ in 0..20 {
        let w = Word::new(random_symbols(&mut rng, cfg.depth + 2), head.clone());
        let want = 0.5 * f64::from(w.get(-2).expect("long tail").sign());
        let d = fd_derivative(FdTarget::P, &w, &params, (0.0, 1.0), DEFAULT_FD_STEP)?;
        worst_p = worst_p.max((d.value - want).abs());
    }
    c.check(
        worst_p <= 1e-4,
        format!("dp/db at (2, 0) vs ±1/2: largest gap {worst_p:.3e}"),
    );
    let w = Word::new(vec![Symbol::Plus; 2], head);
    let dq = fd_derivative(FdTarget::Q, &w, &params, (0.0, 1.0), DEFAULT_FD_STEP)?.value;
    c.check(dq.abs() <= 1e-4, format!("dq/db at (2, 0) = {dq:.3e}"));
    let v = dq_db_at_b0(1.5f64);
    c.check(
        (v + 8.0 / 9.0).abs() <= 1e-10,
        format!("dq/db at (1.5, 0) = {}", fmt_f64(v)),
    );
    Ok(())
}

fn bound_lemmas(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    for a in [1.3, 1.5, 1.7, 2.0] {
        let s = bound_sweep(a, cfg.bound_tail, cfg.bound_head, DEFAULT_FD_STEP)?;
        c.check(
            s.within(1e-3),
            format!(
                "a = {a}: {} words, d/da in [{:.6}, {:.6}], d/db in [{:.6}, {:.6}], excess {:.2e} / {:.2e}",
                s.words, s.range_a.0, s.range_a.1, s.range_b.0, s.range_b.1, s.excess_a, s.excess_b
            ),
        );
    }
    let da = a_derivative_bounds(2.0f64)?;
    c.check(
        (da.lo - 0.75).abs() < 1e-12 && (da.hi - 1.0).abs() < 1e-12,
        format!("a-bounds at 2: [{}, {}]", fmt_f64(da.lo), fmt_f64(da.hi)),
    );
    Ok(())
}

fn identities(c: &mut Checks) -> Result<()> {
    let n = 40;
    let mut failures = 0;
    let mut count = 0;
    for k in 1..=20 {
        let a = 1.0 + 0.05 * k as f64;
        let syms = kneading(&a, n + 8, &BOUNDARY_TOL)?.symbols;
        count += 1;
        failures += usize::from(check_identity_sum(&a, &syms, n) > identity_sum_bound(&a, n));
        for i in 0..=5 {
            count += 1;
            let r = check_identity_shifted(&a, &syms, i, n);
            failures += usize::from(r > identity_shifted_bound(&a, i, n) + 1e-15);
        }
    }
    c.check(
        failures == 0,
        format!("{count} residuals over a = 1.05..2.00, {failures} above their bound"),
    );
    Ok(())
}

fn entropy_brackets(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    let start = Instant::now();
    let depth = 32;
    for (a, b, target) in [(2.1, 0.05, 2f64.ln()), (1.7, 0.0, 1.7f64.ln())] {
        let e = entropy_estimate(&Params::new(a, b), cfg.n_max, depth)?;
        let ok = e.h_lower - 0.05 <= target && target <= e.h_upper + 0.05;
        c.check(
            ok,
            format!(
                "({a}, {b}): [{:.6}, {:.6}] vs {:.6}",
                e.h_lower, e.h_upper, target
            ),
        );
    }
    let lap = tent_entropy_lap_ratio(1.7, 2 * cfg.n_max)?;
    c.check(
        (lap - 1.7f64.ln()).abs() <= 0.05,
        format!("lap-count estimate at 1.7: {lap:.6}"),
    );
    c.within(start.elapsed(), Duration::from_secs(300));
    Ok(())
}

fn monotone(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    let m = cfg.monotone_points.max(2);
    let mut prev: Option<f64> = None;
    let mut worst_drop = 0.0f64;
    let mut values = Vec::new();
    for i in 0..m {
        let a = 1.4 + 0.6 * i as f64 / (m - 1) as f64;
        let h = entropy_estimate(&Params::new(a, 0.02), cfg.n_max, 32)?.h_upper;
        if let Some(p) = prev {
            worst_drop = worst_drop.max(p - h);
        }
        prev = Some(h);
        values.push(format!("{h:.4}"));
    }
    c.check(
        worst_drop <= 0.02,
        format!(
            "h_upper along a = 1.4..2.0: {}; largest drop {worst_drop:.4}",
            values.join(" ")
        ),
    );
    Ok(())
}

fn geometry_anchors(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    let params = MapParams::new(1.0, 0.5);
    let data = fixed_data(&params)?;
    let mut residual = 0.0f64;
    for p in [data.p1, data.p2].into_iter().flatten() {
        residual = residual.max(lozi_apply(&params, &p.point).dist(&p.point));
    }
    for n in [data.n1, data.n2].into_iter().flatten() {
        residual = residual.max(lozi_apply_n(&params, &n, 2).dist(&n));
    }
    c.check(
        residual <= 1e-12,
        format!("fixed and period-two residual {residual:.3e}"),
    );
    let n1 = data.n1.unwrap_or(PlanePoint::new(f64::NAN, f64::NAN));
    c.check(
        n1.dist(&PlanePoint::new(1.2, -0.4)) <= 1e-12,
        format!("n1 = ({}, {})", fmt_f64(n1.x), fmt_f64(n1.y)),
    );
    let poly = polygon_p(&params)?;
    let (lo, hi) = poly.iter().fold(
        (
            PlanePoint::new(f64::MAX, f64::MAX),
            PlanePoint::new(f64::MIN, f64::MIN),
        ),
        |(l, h), p| {
            (
                PlanePoint::new(l.x.min(p.x), l.y.min(p.y)),
                PlanePoint::new(h.x.max(p.x), h.y.max(p.y)),
            )
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut taken, mut worst) = (0usize, 0.0f64);
    while taken < cfg.lyapunov_points {
        let q = PlanePoint::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if signed_distance(&poly, &q) <= 0.0 {
            continue;
        }
        taken += 1;
        let target = -15.0 / 16.0 * (q - n1).norm2();
        worst = worst.max((lyapunov_delta(&params, &q)? - target).abs());
    }
    c.check(
        worst <= 1e-12,
        format!("Lyapunov identity on {taken} points of P, residual {worst:.3e}"),
    );
    match polygon_invariance(&params) {
        Ok(r) => {
            c.check(
                r.l8z.dist(&PlanePoint::new(1.223, -0.375)) <= 1e-3,
                format!("L^8(Z) = ({:.6}, {:.6})", r.l8z.x, r.l8z.y),
            );
            c.check(
                r.l8z_margin > 0.0 && r.boundary_margin >= -1e-12,
                format!("L^2(P) in P; L^8(Z) margin {:.6}", r.l8z_margin),
            );
        }
        Err(e) => c.check(false, format!("polygon invariance: {e}")),
    }
    Ok(())
}

/// PGM, header and CSV of a zero-entropy scan.
pub fn scan_artifacts(scan: &geometry::ZeroScan, arc_budget: f64, stem: &str) -> Vec<Artifact> {
    let g = scan.grid;
    let levels: Vec<u8> = scan.cells.iter().map(|v| v.pgm_level()).collect();
    let mut pairs = vec![
        ("a_lo", fmt_f64(g.a_lo)),
        ("a_hi", fmt_f64(g.a_hi)),
        ("b_lo", fmt_f64(g.b_lo)),
        ("b_hi", fmt_f64(g.b_hi)),
        ("width", g.width.to_string()),
        ("height", g.height.to_string()),
        ("arc_budget", fmt_f64(arc_budget)),
        ("rows", "row 0 is the largest b".into()),
    ];
    let verdicts = [
        ZeroEntropyVerdict::AnalyticZero(AnalyticCase::I),
        ZeroEntropyVerdict::NumericZero,
        ZeroEntropyVerdict::Unknown,
        ZeroEntropyVerdict::Homoclinic,
    ];
    let names = [
        "level_analytic_zero",
        "level_numeric_zero",
        "level_unknown",
        "level_homoclinic",
    ];
    for (v, n) in verdicts.iter().zip(names) {
        pairs.push((n, v.pgm_level().to_string()));
    }
    let mut table = Table::new(&["a", "b", "verdict", "witness_x", "witness_y"]);
    for row in 0..g.height {
        for col in 0..g.width {
            let i = row * g.width + col;
            let (wx, wy) = scan.witnesses[i].map_or((String::new(), String::new()), |p| {
                (fmt_f64(p.x), fmt_f64(p.y))
            });
            table.row([
                fmt_f64(g.a_at(col)),
                fmt_f64(g.b_at(row)),
                scan.cells[i].label().into(),
                wx,
                wy,
            ]);
        }
    }
    vec![
        Artifact {
            name: format!("{stem}.pgm"),
            bytes: pgm_bytes(g.width, g.height, &levels),
        },
        Artifact {
            name: format!("{stem}.txt"),
            bytes: header_text(&pairs).into_bytes(),
        },
        Artifact {
            name: format!("{stem}.csv"),
            bytes: table.into_bytes(),
        },
    ]
}

fn classifier(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    use ZeroEntropyVerdict as V;
    let verdict =
        |a: f64, b: f64| geometry::classify_zero_entropy(&MapParams::new(a, b), cfg.arc_budget);
    for (a, b, want) in [
        (1.0, 0.5, V::NumericZero),
        (0.2, 0.5, V::AnalyticZero(AnalyticCase::II)),
        (1.7, 0.5, V::Homoclinic),
    ] {
        let got = verdict(a, b)?;
        c.check(got == want, format!("({a}, {b}) -> {}", got.label()));
    }
    let start = Instant::now();
    let grid = ScanGrid {
        a_lo: 0.0,
        a_hi: 2.5,
        b_lo: 0.0,
        b_hi: 1.0,
        width: cfg.scan,
        height: cfg.scan,
    };
    let scan = scan_zero_entropy(grid, cfg.arc_budget)?;
    c.within(start.elapsed(), Duration::from_secs(600));
    let (mut strip, mut strip_bad, mut block, mut block_bad, mut right, mut right_bad) =
        (0, 0, 0, 0, 0, 0);
    for row in 0..grid.height {
        for col in 0..grid.width {
            let (a, b) = (grid.a_at(col), grid.b_at(row));
            let v = scan.get(row, col);
            if a < 1.0 - b {
                strip += 1;
                strip_bad += usize::from(v != V::AnalyticZero(AnalyticCase::II));
            }
            if (a - 1.0).abs() <= 0.05 && (b - 0.5).abs() <= 0.05 {
                block += 1;
                block_bad += usize::from(v != V::NumericZero);
            }
            if a >= 2.0 {
                right += 1;
                right_bad += usize::from(v != V::Homoclinic);
            }
        }
    }
    c.check(
        strip_bad == 0,
        format!("strip a < 1 - b: {strip} cells, {strip_bad} not analytic"),
    );
    c.check(
        block_bad == 0,
        format!("block around (1, 0.5): {block} cells, {block_bad} not numeric zero"),
    );
    c.check(
        right_bad == 0,
        format!("a >= 2: {right} cells, {right_bad} not homoclinic"),
    );
    c.lines.push(format!(
        "counts: analytic {}, numeric {}, homoclinic {}, unknown {}",
        scan.cells
            .iter()
            .filter(|v| matches!(v, V::AnalyticZero(_)))
            .count(),
        scan.count(V::NumericZero),
        scan.count(V::Homoclinic),
        scan.count(V::Unknown)
    ));
    c.artifacts
        .extend(scan_artifacts(&scan, cfg.arc_budget, "zero_scan"));
    Ok(())
}

fn orbit_windows(cfg: &VerifyConfig, c: &mut Checks) -> Result<()> {
    const SIDE: usize = 12;
    const TRANSIENT: usize = 1000;
    const STRIDE: usize = 7;
    let map = MapParams::new(1.7f64, 0.5);
    let params = Params::new(1.7, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut tested, mut pruned, mut skipped) = (0usize, 0usize, 0usize);
    let mut attempts = 0;
    while tested < cfg.windows && attempts < 1000 {
        attempts += 1;
        let mut q = PlanePoint::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let mut escaped = false;
        for _ in 0..TRANSIENT {
            q = lozi_apply(&map, &q);
            escaped |= q.x.abs() > 10.0;
        }
        if escaped {
            continue;
        }
        let xs: Vec<f64> = (0..2 * SIDE + 100 * STRIDE)
            .map(|_| {
                let x = q.x;
                q = lozi_apply(&map, &q);
                x
            })
            .collect();
        if xs.iter().any(|x| x.abs() > 10.0) {
            continue;
        }
        for t in (SIDE..xs.len() - SIDE).step_by(STRIDE) {
            if tested == cfg.windows {
                break;
            }
            let window = &xs[t - SIDE..t + SIDE];
            if window.iter().any(|x| x.abs() < 1e-9) {
                skipped += 1;
                continue;
            }
            let syms: Vec<Symbol> = window.iter().map(|&x| Symbol::from_sign(x > 0.0)).collect();
            let w = Word::from_symbols(&syms, SIDE);
            tested += 1;
            pruned +=
                usize::from(classify_cylinder(&w, 32, 0, &params)? == Verdict::CertifiedPruned);
        }
    }
    c.check(
        tested == cfg.windows && pruned == 0,
        format!(
            "{tested} windows of {} symbols, {pruned} pruned, {skipped} skipped near x = 0",
            2 * SIDE
        ),
    );
    Ok(())
}

/// Runs one criterion (1 to 11). Errors from the library count as failures.
pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> Outcome {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown criterion", |(_, n)| n);
    let start = Instant::now();
    let mut c = Checks::new();
    let result = match id {
        1 => closed_form(cfg, &mut c),
        2 => q_maximum(cfg, &mut c),
        3 => empty_region(cfg, &mut c),
        4 => derivative_anchors(cfg, &mut c),
        5 => bound_lemmas(cfg, &mut c),
        6 => identities(&mut c),
        7 => entropy_brackets(cfg, &mut c),
        8 => monotone(cfg, &mut c),
        9 => geometry_anchors(cfg, &mut c),
        10 => classifier(cfg, &mut c),
        11 => orbit_windows(cfg, &mut c),
        _ => {
            c.check(false, format!("no criterion {id}"));
            Ok(())
        }
    };
    if let Err(e) = result {
        c.check(false, format!("error: {e}"));
    }
    Outcome {
        id,
        name,
        passed: c.ok,
        details: c.lines,
        elapsed: start.elapsed(),
        artifacts: c.artifacts,
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .map(|&(id, _)| run_criterion(id, cfg))
        .collect()
}

/// Plain-text report without timings.
pub fn report_text(outcomes: &[Outcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        s.push_str(&format!(
            "{} criterion {}: {}\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name
        ));
        for line in &o.details {
            s.push_str(&format!("    {line}\n"));
        }
    }
    s
}
