mod config;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use lozi_core::derivatives::{bound_sweep, cone_table, DEFAULT_CONE_MARGIN, DEFAULT_FD_STEP};
use lozi_core::geometry::{
    fixed_data, scan_zero_entropy, stable_manifold, unstable_manifold, Growth, MapParams, ScanGrid,
    Seed, StableSeed,
};
use lozi_core::io::{fmt_f64, header_text, write_atomic, Table};
use lozi_core::pruning::{
    entropy_estimate, pruned_region_raster, Params, Verdict, DEFAULT_CELL_LIMIT,
};
use lozi_core::verify::{self, raster_artifacts, scan_artifacts, Artifact, VerifyConfig};

use config::{Flags, RunConfig};

#[derive(Parser)]
#[command(
    name = "lozi",
    version,
    about = "Pruning fronts, entropy and plane geometry of Lozi maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rasters of the primary pruned region (five reference panels unless
    /// --a and --b are given).
    PrunedRegion(Flags),
    /// Admissible-word counts and the entropy bracket at (a, b).
    Entropy(Flags),
    /// Finite-difference derivatives of p - q at b = 0 against the bound
    /// formulas, over all tails of --word-len symbols and --depth symbols
    /// of the kneading head.
    Derivatives(Flags),
    /// Derivative bounds and monotone cones at --grid points of a in
    /// (--a, 2].
    Cones(Flags),
    /// Zero-entropy classification over (0, 2.5] x (0, 1].
    ZeroScan(Flags),
    /// Stable and unstable manifold polylines of the first-quadrant saddle.
    Manifolds(Flags),
    /// Runs the acceptance checks and writes their report and data.
    Verify(Flags),
}

const PANELS: [(f64, f64); 5] = [(2.0, 0.0), (2.0, 0.1), (1.95, 0.0), (1.95, 0.1), (1.7, 0.5)];

struct Writer {
    dir: std::path::PathBuf,
    force: bool,
}

impl Writer {
    fn new(cfg: &RunConfig) -> Result<Self> {
        Ok(Self {
            dir: cfg.out()?,
            force: cfg.force()?,
        })
    }

    fn write(&self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        write_atomic(&path, bytes, self.force)
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
        Ok(())
    }

    fn artifacts(&self, list: &[Artifact]) -> Result<()> {
        list.iter().try_for_each(|a| self.write(&a.name, &a.bytes))
    }
}

fn tag(a: f64, b: f64) -> String {
    format!("{}_{}", fmt_f64(a), fmt_f64(b))
}

fn point(cfg: &RunConfig, default: (f64, f64)) -> Result<(f64, f64)> {
    Ok((cfg.a()?.unwrap_or(default.0), cfg.b()?.unwrap_or(default.1)))
}

fn pruned_region(cfg: &RunConfig) -> Result<()> {
    let word_len = cfg.word_len(10)?;
    let depth = cfg.depth(40)?;
    let panels = match (cfg.a()?, cfg.b()?) {
        (Some(a), Some(b)) => vec![(a, b)],
        (None, None) => PANELS.to_vec(),
        _ => anyhow::bail!("give both --a and --b, or neither"),
    };
    let out = Writer::new(cfg)?;
    cfg.finish()?;
    for (a, b) in panels {
        let r = pruned_region_raster(&Params::new(a, b), word_len, depth, DEFAULT_CELL_LIMIT)?;
        println!(
            "({a}, {b}): pruned {}, unknown {}, admissible {}",
            r.count(Verdict::CertifiedPruned),
            r.count(Verdict::Unknown),
            r.count(Verdict::CertifiedAdmissibleWindow)
        );
        out.artifacts(&raster_artifacts(
            &r,
            &format!("pruned_region_{}", tag(a, b)),
        ))?;
    }
    Ok(())
}

fn entropy(cfg: &RunConfig) -> Result<()> {
    let (a, b) = point(cfg, (2.1, 0.05))?;
    let n_max = cfg.n_max(16)?;
    let depth = cfg.depth(32)?;
    let out = Writer::new(cfg)?;
    cfg.finish()?;
    let e = entropy_estimate(&Params::new(a, b), n_max, depth)?;
    let mut t = Table::new(&[
        "a",
        "b",
        "n",
        "lower_count",
        "upper_count",
        "log_lower_over_n",
        "log_upper_over_n",
    ]);
    for c in &e.counts {
        let rate = |k: u64| {
            if k == 0 {
                String::new()
            } else {
                fmt_f64((k as f64).ln() / c.n as f64)
            }
        };
        t.row([
            fmt_f64(a),
            fmt_f64(b),
            c.n.to_string(),
            c.lower.to_string(),
            c.upper.to_string(),
            rate(c.lower),
            rate(c.upper),
        ]);
    }
    println!(
        "h_top({a}, {b}) in [{}, {}]",
        fmt_f64(e.h_lower),
        fmt_f64(e.h_upper)
    );
    out.write(&format!("entropy_{}.csv", tag(a, b)), &t.into_bytes())?;
    out.write(
        &format!("entropy_{}.txt", tag(a, b)),
        header_text(&[
            ("a", fmt_f64(a)),
            ("b", fmt_f64(b)),
            ("n_max", n_max.to_string()),
            ("depth", depth.to_string()),
            ("h_lower", fmt_f64(e.h_lower)),
            ("h_upper", fmt_f64(e.h_upper)),
        ])
        .as_bytes(),
    )
}

fn derivatives(cfg: &RunConfig) -> Result<()> {
    let a_values = match cfg.a()? {
        Some(a) => vec![a],
        None => vec![1.3, 1.5, 1.7, 2.0],
    };
    if cfg.b()?.is_some_and(|b| b != 0.0) {
        anyhow::bail!("derivative bounds are stated at b = 0");
    }
    let tail = cfg.word_len(14)?;
    let head = cfg.depth(200)?;
    let out = Writer::new(cfg)?;
    cfg.finish()?;
    let mut t = Table::new(&[
        "a",
        "words",
        "fd_da_min",
        "fd_da_max",
        "excess_a",
        "fd_db_min",
        "fd_db_max",
        "excess_b",
    ]);
    for a in a_values {
        let s = bound_sweep(a, tail, head, DEFAULT_FD_STEP)?;
        println!(
            "a = {a}: {} words, largest excess {:.3e} / {:.3e}",
            s.words, s.excess_a, s.excess_b
        );
        t.row([
            fmt_f64(a),
            s.words.to_string(),
            fmt_f64(s.range_a.0),
            fmt_f64(s.range_a.1),
            fmt_f64(s.excess_a),
            fmt_f64(s.range_b.0),
            fmt_f64(s.range_b.1),
            fmt_f64(s.excess_b),
        ]);
    }
    out.write("derivatives.csv", &t.into_bytes())
}

fn cones(cfg: &RunConfig) -> Result<()> {
    let a_min = cfg.a()?.unwrap_or(1.2);
    let n = cfg.grid(80)?;
    let out = Writer::new(cfg)?;
    cfg.finish()?;
    let rows = cone_table(a_min, n, DEFAULT_CONE_MARGIN)?;
    let mut t = Table::new(&[
        "a",
        "lo_a",
        "hi_a",
        "lo_b_plus",
        "hi_b_plus",
        "lo_b_minus",
        "hi_b_minus",
        "n1",
        "n2",
    ]);
    for r in &rows {
        let (n1, n2) = r.cone.map_or((String::new(), String::new()), |(x, y)| {
            (fmt_f64(x), fmt_f64(y))
        });
        t.row([
            fmt_f64(r.a),
            fmt_f64(r.lo_a),
            fmt_f64(r.hi_a),
            fmt_f64(r.lo_b_plus),
            fmt_f64(r.hi_b_plus),
            fmt_f64(r.lo_b_minus),
            fmt_f64(r.hi_b_minus),
            n1,
            n2,
        ]);
    }
    let degenerate = rows.iter().filter(|r| r.cone.is_none()).count();
    println!(
        "{} rows, {degenerate} without a cone (a-derivative lower bound not positive)",
        rows.len()
    );
    out.write("cones.csv", &t.into_bytes())
}

fn zero_scan(cfg: &RunConfig) -> Result<()> {
    let n = cfg.grid(100)?;
    let arc_budget = cfg.arc_budget(60.0)?;
    let out = Writer::new(cfg)?;
    cfg.finish()?;
    let grid = ScanGrid {
        a_lo: 0.0,
        a_hi: 2.5,
        b_lo: 0.0,
        b_hi: 1.0,
        width: n,
        height: n,
    };
    let scan = scan_zero_entropy(grid, arc_budget)?;
    out.artifacts(&scan_artifacts(&scan, arc_budget, "zero_scan"))
}

fn manifolds(cfg: &RunConfig) -> Result<()> {
    let (a, b) = point(cfg, (1.7, 0.5))?;
    let arc_budget = cfg.arc_budget(60.0)?;
    let out = Writer::new(cfg)?;
    cfg.finish()?;
    let params = MapParams::new(a, b);
    let growth = Growth::new(arc_budget);
    let mut branches = vec![
        unstable_manifold(&params, Seed::P1Right, &growth)?,
        unstable_manifold(&params, Seed::P1Left, &growth)?,
    ];
    if b != 0.0 {
        branches.push(stable_manifold(&params, StableSeed::P1Upper, &growth)?);
        branches.push(stable_manifold(&params, StableSeed::P1Lower, &growth)?);
    }
    let mut t = Table::new(&["branch", "piece", "index", "x", "y"]);
    for br in &branches {
        let kind = format!("{:?}", br.kind);
        for (pi, piece) in br.pieces.iter().enumerate() {
            for (vi, v) in piece.iter().enumerate() {
                t.row([
                    kind.clone(),
                    pi.to_string(),
                    vi.to_string(),
                    fmt_f64(v.x),
                    fmt_f64(v.y),
                ]);
            }
        }
        println!(
            "{kind}: {} segments, arc length {:.3}, truncated {}",
            br.segment_count(),
            br.arc_length(),
            br.truncated
        );
    }
    let data = fixed_data(&params)?;
    let mut pairs = vec![
        ("a", fmt_f64(a)),
        ("b", fmt_f64(b)),
        ("arc_budget", fmt_f64(arc_budget)),
    ];
    if let Some(p1) = data.p1 {
        pairs.push(("p1_x", fmt_f64(p1.point.x)));
        pairs.push(("p1_y", fmt_f64(p1.point.y)));
    }
    out.write(&format!("manifolds_{}.csv", tag(a, b)), &t.into_bytes())?;
    out.write(
        &format!("manifolds_{}.txt", tag(a, b)),
        header_text(&pairs).as_bytes(),
    )
}

fn verify_cmd(cfg: &RunConfig) -> Result<bool> {
    let d = VerifyConfig::default();
    let vc = VerifyConfig {
        seed: cfg.seed(d.seed)?,
        depth: cfg.depth(d.depth)?,
        grid: cfg.extra("closed_form_grid")?.unwrap_or(d.grid),
        random_heads: cfg.extra("random_heads")?.unwrap_or(d.random_heads),
        word_len: cfg.word_len(d.word_len)?,
        bound_tail: cfg.extra("bound_tail")?.unwrap_or(d.bound_tail),
        bound_head: cfg.extra("bound_head")?.unwrap_or(d.bound_head),
        n_max: cfg.n_max(d.n_max)?,
        monotone_points: cfg.extra("monotone_points")?.unwrap_or(d.monotone_points),
        lyapunov_points: cfg.extra("lyapunov_points")?.unwrap_or(d.lyapunov_points),
        scan: cfg.grid(d.scan)?,
        arc_budget: cfg.arc_budget(d.arc_budget)?,
        windows: cfg.extra("windows")?.unwrap_or(d.windows),
    };
    let ids: Vec<u8> = match cfg.extra::<String>("criteria")? {
        Some(list) => list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u8>()
                    .with_context(|| format!("criterion id {s:?}"))
            })
            .collect::<Result<_>>()?,
        None => verify::CRITERIA.iter().map(|c| c.0).collect(),
    };
    let out = Writer::new(cfg)?;
    cfg.finish()?;
    let report = out.dir.join("report.txt");
    if !out.force && report.exists() {
        anyhow::bail!("{} exists (use --force to overwrite)", report.display());
    }
    let mut outcomes = Vec::new();
    for id in ids {
        let o = verify::run_criterion(id, &vc);
        eprintln!("criterion {id}: {:.2?}", o.elapsed);
        print!("{}", verify::report_text(std::slice::from_ref(&o)));
        outcomes.push(o);
    }
    for o in &outcomes {
        out.artifacts(&o.artifacts)?;
    }
    out.write("report.txt", verify::report_text(&outcomes).as_bytes())?;
    Ok(outcomes.iter().all(|o| o.passed))
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("LOZI_THREADS") {
        let n: usize = v.parse().with_context(|| format!("LOZI_THREADS={v}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    init_threads()?;
    let (flags, f): (Flags, fn(&RunConfig) -> Result<bool>) = match cli.command {
        Command::PrunedRegion(x) => (x, |c| pruned_region(c).map(|_| true)),
        Command::Entropy(x) => (x, |c| entropy(c).map(|_| true)),
        Command::Derivatives(x) => (x, |c| derivatives(c).map(|_| true)),
        Command::Cones(x) => (x, |c| cones(c).map(|_| true)),
        Command::ZeroScan(x) => (x, |c| zero_scan(c).map(|_| true)),
        Command::Manifolds(x) => (x, |c| manifolds(c).map(|_| true)),
        Command::Verify(x) => (x, verify_cmd),
    };
    f(&RunConfig::load(flags)?)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
