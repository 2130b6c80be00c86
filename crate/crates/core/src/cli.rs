//! Command-line front end: scenario files, traces, patterns and plots.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::perception::PerceptKind;
use crate::physiology::InternalField;
use crate::sim::{
    action_pattern, batch, mann_whitney_u, run, PatternSegment, RunResult, Scenario, TraceEvent,
    ValidationError, Variant,
};

/// Scenario files shipped with the crate, addressable by name.
pub const BUNDLED: [(&str, &str); 5] = [
    ("exp_4_1", include_str!("../scenarios/exp_4_1.toml")),
    ("exp_4_2", include_str!("../scenarios/exp_4_2.toml")),
    ("exp_4_3", include_str!("../scenarios/exp_4_3.toml")),
    ("deprivation", include_str!("../scenarios/deprivation.toml")),
    ("search", include_str!("../scenarios/search.toml")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read scenario {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed scenario {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(#[from] ValidationError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            _ => 2,
        }
    }
}

/// Parses and validates scenario text.
pub fn parse_scenario(text: &str, origin: &Path) -> Result<Scenario, CliError> {
    let scenario: Scenario = toml::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_path_buf(),
        message: e.to_string().trim_end().to_string(),
    })?;
    scenario.validate()?;
    Ok(scenario)
}

/// Loads a scenario from `path`, or from the bundled fixture of that name
/// when no such file exists.
pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse_scenario(&text, path),
        Err(e) => match path.to_str().and_then(bundled) {
            Some(text) if e.kind() == std::io::ErrorKind::NotFound => parse_scenario(text, path),
            _ => Err(CliError::Read {
                path: path.to_path_buf(),
                source: e,
            }),
        },
    }
}

/// Normalized form of the effective configuration, defaults filled in.
pub fn echo(scenario: &Scenario) -> Result<String, CliError> {
    toml::to_string_pretty(scenario).map_err(|e| CliError::Internal(e.to_string()))
}

pub const TRACE_HEADER: [&str; 22] = [
    "tick",
    "z",
    "x",
    "theta",
    "action",
    "drive",
    "drive_activation",
    "strength",
    "lucidity",
    "security",
    "fatigue",
    "thirst",
    "hunger",
    "water",
    "food",
    "grass",
    "blob",
    "red_spot",
    "yellow_spot",
    "food_and_water",
    "obstacle",
    "collision",
];

fn csv_error(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

/// Trace as CSV, one row per tick in [`TRACE_HEADER`] order.
pub fn write_trace<W: Write>(events: &[TraceEvent], out: W) -> std::io::Result<()> {
    debug_assert_eq!(PerceptKind::ALL.len(), 8);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER).map_err(csv_error)?;
    for e in events {
        let mut row = vec![
            e.tick.to_string(),
            e.pose.position.z.to_string(),
            e.pose.position.x.to_string(),
            e.pose.theta.to_string(),
            e.action.label().to_string(),
            e.drive.map_or(String::new(), |d| d.0.label().to_string()),
            e.drive.map_or(String::new(), |d| d.1.to_string()),
        ];
        row.extend(
            [
                InternalField::Strength,
                InternalField::Lucidity,
                InternalField::Security,
                InternalField::Fatigue,
                InternalField::Thirst,
                InternalField::Hunger,
            ]
            .map(|f| e.internal.get(f).to_string()),
        );
        row.extend(e.percepts.iter().map(|v| v.to_string()));
        row.push(u8::from(e.collision).to_string());
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()
}

pub fn write_pattern<W: Write>(pattern: &[PatternSegment], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["action", "start_tick", "end_tick"])
        .map_err(csv_error)?;
    for s in pattern {
        w.write_record([
            s.action.label().to_string(),
            s.start_tick.to_string(),
            s.end_tick.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()
}

const SVG_WIDTH: f64 = 1000.0;
const SVG_LEFT: f64 = 170.0;
const BAND_HEIGHT: f64 = 18.0;
const CURVE_HEIGHT: f64 = 200.0;

/// Timeline plot: one band per action over time, internal-state curves
/// underneath.
pub fn render_svg(result: &RunResult) -> String {
    use crate::ibenet::ExternalAction;
    let events = &result.events;
    let ticks = events.len().max(1) as f64;
    let plot_w = SVG_WIDTH - SVG_LEFT - 20.0;
    let x_of = |t: f64| SVG_LEFT + t / ticks * plot_w;
    let bands_h = BAND_HEIGHT * ExternalAction::ALL.len() as f64;
    let curve_top = 20.0 + bands_h + 30.0;
    let height = curve_top + CURVE_HEIGHT + 40.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (row, action) in ExternalAction::ALL.iter().enumerate() {
        let y = 20.0 + row as f64 * BAND_HEIGHT;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            SVG_LEFT - 6.0,
            y + 13.0,
            action.label()
        );
        let _ = writeln!(
            s,
            r##"<line x1="{SVG_LEFT}" y1="{0}" x2="{1}" y2="{0}" stroke="#ddd"/>"##,
            y + BAND_HEIGHT,
            SVG_LEFT + plot_w
        );
    }
    for seg in action_pattern(events) {
        let row = ExternalAction::ALL
            .iter()
            .position(|a| *a == seg.action)
            .unwrap_or(0);
        let y = 20.0 + row as f64 * BAND_HEIGHT + 2.0;
        let x0 = x_of(seg.start_tick as f64);
        let x1 = x_of(seg.end_tick as f64 + 1.0);
        let _ = writeln!(
            s,
            r##"<rect x="{x0:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="#3b6ea5"/>"##,
            (x1 - x0).max(0.5),
            BAND_HEIGHT - 4.0
        );
    }

    let curves = [
        (InternalField::Thirst, "#1f77b4"),
        (InternalField::Hunger, "#d62728"),
        (InternalField::Fatigue, "#2ca02c"),
        (InternalField::Strength, "#000000"),
        (InternalField::Lucidity, "#9467bd"),
        (InternalField::Security, "#ff7f0e"),
    ];
    let _ = writeln!(
        s,
        r##"<rect x="{SVG_LEFT}" y="{curve_top}" width="{plot_w}" height="{CURVE_HEIGHT}" fill="none" stroke="#999"/>"##
    );
    for (i, (field, colour)) in curves.iter().enumerate() {
        let points: Vec<String> = events
            .iter()
            .map(|e| {
                let y = curve_top + (1.0 - e.internal.get(*field)) * CURVE_HEIGHT;
                format!("{:.2},{:.2}", x_of(e.tick as f64 + 0.5), y)
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        let ly = curve_top + 14.0 + i as f64 * 14.0;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" text-anchor="end" fill="{colour}">{}</text>"#,
            SVG_LEFT - 6.0,
            field.label()
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{SVG_LEFT}" y="{}">tick 0</text><text x="{}" y="{}" text-anchor="end">tick {}</text>"#,
        curve_top + CURVE_HEIGHT + 16.0,
        SVG_LEFT + plot_w,
        curve_top + CURVE_HEIGHT + 16.0,
        events.len()
    );
    s.push_str("</svg>\n");
    s
}

/// Human-readable run summary.
pub fn summary(scenario: &Scenario, result: &RunResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scenario: {}", scenario.name);
    let _ = writeln!(s, "seed: {}", scenario.seed);
    let _ = writeln!(s, "ticks: {}", result.events.len());
    let _ = writeln!(s, "termination: {}", result.termination.label());
    let _ = writeln!(
        s,
        "first_drive: {}",
        result.first_drive().map_or("none", |d| d.label())
    );
    let fin = &result.final_state.internal;
    for f in InternalField::ALL {
        let _ = writeln!(s, "final_{}: {}", f.label(), fin.get(f));
    }
    let _ = writeln!(s, "pattern:");
    for seg in action_pattern(&result.events) {
        let _ = writeln!(
            s,
            "  {} {}..{}",
            seg.action.label(),
            seg.start_tick,
            seg.end_tick
        );
    }
    s
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub ticks: Option<u64>,
    pub trace: Option<PathBuf>,
    pub pattern: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// `run`: returns the summary text. Nothing is written unless the
/// scenario loads and validates.
pub fn cmd_run(path: &Path, opts: &RunOptions) -> Result<String, CliError> {
    let mut scenario = load_scenario(path)?;
    if let Some(seed) = opts.seed {
        scenario.seed = seed;
    }
    if let Some(ticks) = opts.ticks {
        scenario.max_ticks = ticks;
    }
    let result = run(&scenario)?;

    if let Some(p) = &opts.trace {
        let mut buf = Vec::new();
        write_trace(&result.events, &mut buf).map_err(|e| CliError::Internal(e.to_string()))?;
        write_file(p, &buf)?;
    }
    if let Some(p) = &opts.pattern {
        let mut buf = Vec::new();
        write_pattern(&action_pattern(&result.events), &mut buf)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        write_file(p, &buf)?;
    }
    if let Some(p) = &opts.svg {
        write_file(p, render_svg(&result).as_bytes())?;
    }
    Ok(summary(&scenario, &result))
}

/// `batch`: per-seed rows followed by the variant summary.
pub fn cmd_batch(
    path: &Path,
    runs: u64,
    seed_base: u64,
    variant: Variant,
) -> Result<String, CliError> {
    if runs == 0 {
        return Err(CliError::Usage("--runs must be >= 1".into()));
    }
    let scenario = load_scenario(path)?;
    let report = batch(&scenario, runs, seed_base, variant)?;
    let mut s = String::new();
    let _ = writeln!(s, "seed,first_drink,termination");
    for r in &report.runs {
        let first = r
            .first_drink
            .map_or("censored".to_string(), |t| t.to_string());
        let _ = writeln!(s, "{},{},{}", r.seed, first, r.termination.label());
    }
    let _ = writeln!(s, "variant: {}", variant.label());
    let _ = writeln!(s, "runs: {}", report.runs.len());
    let _ = writeln!(s, "censored: {}", report.censored());
    let _ = writeln!(s, "mean_ticks_to_first_drink: {}", report.mean());
    let _ = writeln!(s, "median_ticks_to_first_drink: {}", report.median());
    if report.censored() > 0 {
        let _ = writeln!(
            s,
            "note: censored runs enter mean and median at max_ticks ({})",
            report.max_ticks
        );
    }
    Ok(s)
}

/// Compares the two variants on the same seeds.
pub fn compare_variants(
    scenario: &Scenario,
    runs: u64,
    seed_base: u64,
) -> Result<(f64, f64, f64), CliError> {
    let explore = batch(scenario, runs, seed_base, Variant::Explore)?;
    let wander = batch(scenario, runs, seed_base, Variant::Wander)?;
    let test = mann_whitney_u(&explore.response_times(), &wander.response_times());
    Ok((explore.mean(), wander.mean(), test.p_less))
}

/// `validate`: the normalized echo.
pub fn cmd_validate(path: &Path) -> Result<String, CliError> {
    echo(&load_scenario(path)?)
}
