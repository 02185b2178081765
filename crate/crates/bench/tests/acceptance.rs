//! One PASS/FAIL line per acceptance criterion. Tolerances and run sizes are
//! pinned below. Exits non-zero when any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use maidr::extraction;
use maidr::fixtures::{build, FixtureData, Kind, Layer};
use maidr::highlight::{self, strip_injected, structural_difference};
use maidr::interception::with_internal_context;
use maidr::plotkit::{pyplot, ArtistClass, Figure};
use maidr_bench::samples::read_csv_file;
use maidr_bench::stats::{round2, Summary};
use maidr_bench::{Overall, Report, Row};

const OVERHEAD_LIMIT: f64 = 0.10;
const BENCH_TRIALS: usize = 30;
const BENCH_WARMUP: usize = 3;
const BENCH_BUDGET: Duration = Duration::from_secs(300);

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(name: &'static str, problems: Vec<String>, ok_detail: String) -> Outcome {
    let pass = problems.is_empty();
    let detail = if pass { ok_detail } else { problems.join("; ") };
    Outcome { name, pass, detail }
}

fn each_fixture(mut f: impl FnMut(Kind, Layer, &Figure, &mut Vec<String>)) -> Vec<String> {
    let data = FixtureData::corpus();
    let mut problems = Vec::new();
    for kind in Kind::ALL {
        for layer in Layer::ALL {
            let fig = build(kind, layer, &data).expect("fixture builds");
            f(kind, layer, &fig, &mut problems);
            pyplot::close_figure(&fig);
        }
    }
    problems
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0;
    let problems = each_fixture(|kind, layer, fig, problems| {
        let expected = oracle::read_figure(fig, &kind.expected_layers());
        let doc = maidr::render_document(fig).expect("renders");
        let got = oracle::from_payload(doc.schema_json.as_deref().unwrap_or("{\"subplots\":[]}"));
        compared += got.iter().map(|l| l.points.len()).sum::<usize>();
        if let Some(d) = oracle::compare(&expected, &got) {
            problems.push(format!("{kind}/{layer} vs artists: {d}"));
        }
        match oracle::load_oracle(kind, layer) {
            Some(file) => {
                if let Some(d) = oracle::compare(&file.layers, &got) {
                    problems.push(format!("{kind}/{layer} vs oracle file: {d}"));
                }
            }
            None => problems.push(format!("{kind}/{layer}: oracle file missing")),
        }
    });
    outcome(
        "oracle equivalence",
        problems,
        format!("24 fixtures, {compared} points, exact labels/counts, rel tol {:e}", oracle::REL_TOL),
    )
}

fn drawn_primitives(fig: &Figure) -> usize {
    fig.read(|f| f.axes.iter().flat_map(|ax| &ax.artists).filter(|a| a.class() != ArtistClass::Text).count())
}

fn suppression() -> Outcome {
    let data = FixtureData::corpus();
    let mut problems = Vec::new();
    let mut shown = Vec::new();
    for kind in [Kind::HorizontalBox, Kind::VerticalBox, Kind::Multiline, Kind::Dodged, Kind::Stacked, Kind::Heatmap] {
        let fig = build(kind, Layer::Wrapper, &data).expect("fixture builds");
        let layers = extraction::registered_layers(fig.id());
        let drawn = drawn_primitives(&fig);
        pyplot::close_figure(&fig);
        if layers.len() != 1 {
            problems.push(format!("{kind}: {} layers registered for 1 call", layers.len()));
        }
        shown.push(format!("{kind}: 1 call, {drawn} primitives, {} layer", layers.len()));
    }
    outcome("suppression", problems, shown.join(", "))
}

fn cross_modal() -> Outcome {
    let mut checked = 0;
    let problems = each_fixture(|kind, layer, fig, problems| {
        let doc = maidr::render_document(fig).expect("renders");
        let Some(schema) = &doc.schema else {
            problems.push(format!("{kind}/{layer}: not instrumented"));
            return;
        };
        for (s, l) in schema.subplots.iter().flat_map(|s| s.layers.iter().map(move |l| (s, l))) {
            match highlight::select(&doc.svg, &l.selector) {
                Ok(hits) if !hits.is_empty() => {}
                other => problems.push(format!("{kind}/{layer} ({}, {}) {}: selector resolves to {other:?}", s.row, s.col, l.plot_type())),
            }
        }
        if matches!(kind, Kind::Bar | Kind::Stacked | Kind::Dodged | Kind::Histogram) {
            let points: usize = schema.subplots.iter().flat_map(|s| &s.layers).map(|l| l.data.len()).sum();
            let tagged = highlight::select(&doc.svg, "[maidr=\"true\"]").expect("valid selector").len();
            checked += 1;
            if tagged != points {
                problems.push(format!("{kind}/{layer}: {tagged} tagged elements, {points} points"));
            }
        }
    });
    outcome("cross-modal correspondence", problems, format!("{checked} bar-like documents, all selectors resolve"))
}

fn visual_fidelity() -> Outcome {
    let data = FixtureData::corpus();
    let mut problems = Vec::new();
    for kind in Kind::ALL {
        for layer in Layer::ALL {
            let plain = with_internal_context(|| {
                let fig = build(kind, layer, &data).expect("fixture builds");
                let svg = fig.to_svg();
                pyplot::close_figure(&fig);
                svg
            });
            let fig = build(kind, layer, &data).expect("fixture builds");
            let doc = maidr::render_document(&fig).expect("renders");
            pyplot::close_figure(&fig);
            match strip_injected(&doc.svg).and_then(|s| structural_difference(&s, &plain)) {
                Ok(None) => {}
                Ok(Some(d)) => problems.push(format!("{kind}/{layer}: {d}")),
                Err(e) => problems.push(format!("{kind}/{layer}: {e}")),
            }
        }
    }
    outcome("visual fidelity", problems, "24 fixtures structurally identical after stripping".into())
}

fn round_trip() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut bytes = 0;
    let problems = each_fixture(|kind, layer, fig, problems| {
        let path = dir.path().join(format!("{kind}-{layer}.html"));
        if let Err(e) = maidr::save_html(fig, &path) {
            problems.push(format!("{kind}/{layer}: {e}"));
            return;
        }
        let html = std::fs::read_to_string(&path).expect("saved file");
        let Some(payload) = maidr::render::extract_payload(&html) else {
            problems.push(format!("{kind}/{layer}: no payload"));
            return;
        };
        bytes += payload.len();
        let parsed = match maidr::parse_schema(&payload) {
            Ok(s) => s,
            Err(e) => {
                problems.push(format!("{kind}/{layer}: {e}"));
                return;
            }
        };
        if !maidr::validate_schema(&parsed).is_empty() {
            problems.push(format!("{kind}/{layer}: parsed schema invalid"));
        }
        let in_memory = maidr::finalize_figure(fig).expect("finalizes");
        let canonical = maidr::serialize_schema(&in_memory).expect("serializes");
        if parsed != in_memory || canonical != payload || maidr::serialize_schema(&parsed).ok().as_ref() != Some(&payload) {
            problems.push(format!("{kind}/{layer}: payload differs from in-memory schema"));
        }
    });
    outcome("round-trip", problems, format!("24 saved documents, {bytes} payload bytes byte-identical"))
}

fn overhead() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let csv = dir.path().join("results.csv");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_bench"))
        .args(["run", "--types", "all", "--layer", "both"])
        .args(["--trials", &BENCH_TRIALS.to_string(), "--warmup", &BENCH_WARMUP.to_string()])
        .arg("--out")
        .arg(&csv)
        .stderr(std::process::Stdio::null())
        .stdout(std::process::Stdio::null())
        .status()
        .expect("bench runs");
    let elapsed = start.elapsed();
    if !status.success() {
        return outcome("overhead", vec![format!("bench run failed: {status}")], String::new());
    }
    let samples = read_csv_file(&csv).expect("results readable");
    let report = Report::from_samples(&samples).expect("complete report");
    print!("{}", report.to_text());
    let mut problems = Vec::new();
    let mut shown = Vec::new();
    for t in &report.tables {
        let o = t.overall();
        shown.push(format!("{} {:.2}±{:.2} ms = {:.1}%", t.layer, round2(o.delta_mean), round2(o.delta_std), o.relative * 100.0));
        if t.rows.len() != Kind::ALL.len() {
            problems.push(format!("{}: {} of 12 rows", t.layer, t.rows.len()));
        }
        if o.relative > OVERHEAD_LIMIT {
            problems.push(format!("{} relative overhead {:.1}% > {:.0}%", t.layer, o.relative * 100.0, OVERHEAD_LIMIT * 100.0));
        }
    }
    if elapsed > BENCH_BUDGET {
        problems.push(format!("run took {:.0?}", elapsed));
    }
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let mut o = outcome("overhead", problems, String::new());
    o.detail = format!("{}; {} build, {:.1?}{}", shown.join(", "), profile, elapsed, if o.pass { String::new() } else { format!("; {}", o.detail) });
    o
}

// Table 1 rows as printed: (with mean, with std, without mean, without std, delta).
const DIRECT: [(f64, f64, f64, f64, f64); 12] = [
    (41.5, 8.3, 40.3, 9.2, 1.2),
    (38.9, 11.9, 38.3, 10.7, 0.6),
    (40.6, 12.1, 39.8, 11.2, 0.8),
    (33.9, 4.7, 32.8, 4.7, 1.1),
    (15.5, 6.9, 14.9, 4.9, 0.6),
    (42.4, 14.4, 41.4, 19.9, 1.0),
    (85.1, 20.7, 83.1, 34.8, 2.0),
    (19.2, 4.7, 17.8, 4.6, 1.4),
    (99.1, 39.8, 94.2, 11.7, 4.9),
    (24.1, 6.4, 22.4, 5.6, 1.7),
    (41.6, 1.7, 40.4, 3.4, 1.2),
    (21.5, 1.5, 20.3, 6.4, 1.2),
];
const WRAPPER: [(f64, f64, f64, f64, f64); 12] = [
    (49.9, 9.6, 47.5, 12.2, 2.4),
    (657.0, 20.0, 654.0, 19.0, 3.0),
    (658.0, 20.0, 653.0, 22.0, 5.0),
    (135.0, 13.0, 135.0, 15.0, 0.0),
    (276.0, 15.0, 272.0, 19.0, 4.0),
    (245.0, 16.0, 238.0, 27.0, 7.0),
    (178.0, 21.0, 171.0, 40.0, 7.0),
    (41.6, 2.4, 39.3, 2.8, 2.3),
    (254.0, 83.0, 253.0, 10.0, 1.0),
    (73.0, 8.8, 71.6, 5.4, 1.4),
    (171.0, 13.0, 167.0, 17.0, 4.0),
    (431.0, 21.0, 429.0, 23.0, 2.0),
];
// Overall rows as printed: with, without, delta as (mean, std).
const DIRECT_OVERALL: [f64; 6] = [41.95, 11.09, 40.47, 10.59, 1.48, 1.15];
const WRAPPER_OVERALL: [f64; 6] = [264.13, 20.23, 260.87, 17.70, 3.26, 2.23];

fn published(rows: &[(f64, f64, f64, f64, f64); 12]) -> Vec<Row> {
    Kind::ALL
        .iter()
        .zip(rows)
        .map(|(&kind, &(wm, ws, om, os, d))| Row {
            kind,
            with: Summary { mean: wm, std: ws, n: 0 },
            without: Summary { mean: om, std: os, n: 0 },
            delta: d,
        })
        .collect()
}

fn arithmetic() -> Outcome {
    let mut problems = Vec::new();
    let mut shown = Vec::new();
    for (name, rows, expect) in [("direct", &DIRECT, DIRECT_OVERALL), ("wrapper", &WRAPPER, WRAPPER_OVERALL)] {
        let o = Overall::of(&published(rows));
        let got = [o.with_mean, o.with_std, o.without_mean, o.without_std, o.delta_mean, o.delta_std].map(round2);
        if got[4..] != expect[4..] {
            problems.push(format!("{name} delta {:.2}±{:.2} != {:.2}±{:.2}", got[4], got[5], expect[4], expect[5]));
        }
        if got[..4] != expect[..4] {
            problems.push(format!("{name} timing columns {got:?} != {expect:?}"));
        }
        shown.push(format!("{name} {:.2}±{:.2} ({:.1}%)", got[4], got[5], o.relative * 100.0));
    }
    outcome("benchmark arithmetic", problems, format!("{}; all Overall cells match", shown.join(", ")))
}

fn main() -> ExitCode {
    maidr::install().expect("install");
    let checks: [fn() -> Outcome; 7] =
        [oracle_equivalence, suppression, cross_modal, visual_fidelity, round_trip, overhead, arithmetic];
    let mut failed = 0;
    let results: Vec<Outcome> = checks.iter().map(|c| c()).collect();
    println!();
    for r in &results {
        println!("{} {:<28} {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
