#[path = "support/oracle.rs"]
mod oracle;

use maidr::fixtures::{build, FixtureData, Kind, Layer};
use maidr::plotkit::pyplot;
use maidr::render_document;
use oracle::{bless_requested, compare, from_payload, load_oracle, read_figure, write_oracle, OracleFile};

#[test]
fn extraction_matches_values_read_from_artists() {
    maidr::install().unwrap();
    let data = FixtureData::corpus();
    let mut failures = Vec::new();
    for kind in Kind::ALL {
        for layer in Layer::ALL {
            let fig = build(kind, layer, &data).unwrap();
            let expected = read_figure(&fig, &kind.expected_layers());
            let doc = render_document(&fig).unwrap();
            let got = from_payload(doc.schema_json.as_deref().unwrap());
            pyplot::close_figure(&fig);
            if let Some(diff) = compare(&expected, &got) {
                failures.push(format!("{kind}/{layer}: {diff}"));
            }
            for l in &expected {
                assert!(!l.points.is_empty(), "{kind}/{layer}: oracle read nothing for {}", l.plot_type);
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

// Oracle files are written from the artist reader. Regenerate with
// MAIDR_BLESS_ORACLES=1 after an intended change to the fixtures.
#[test]
fn extraction_matches_checked_in_oracles() {
    maidr::install().unwrap();
    let data = FixtureData::corpus();
    let bless = bless_requested();
    let mut failures = Vec::new();
    for kind in Kind::ALL {
        for layer in Layer::ALL {
            let fig = build(kind, layer, &data).unwrap();
            let from_artists = read_figure(&fig, &kind.expected_layers());
            let doc = render_document(&fig).unwrap();
            pyplot::close_figure(&fig);
            let got = from_payload(doc.schema_json.as_deref().unwrap());
            if bless {
                let file = OracleFile { fixture: kind.slug().into(), layer: layer.to_string(), layers: from_artists };
                write_oracle(&file, kind, layer);
                continue;
            }
            let Some(file) = load_oracle(kind, layer) else {
                failures.push(format!("{kind}/{layer}: oracle file missing"));
                continue;
            };
            if let Some(diff) = compare(&file.layers, &got) {
                failures.push(format!("{kind}/{layer}: {diff}"));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
