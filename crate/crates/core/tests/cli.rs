use std::process::Command;

fn maidr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maidr"))
}

#[test]
fn render_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("box.html");
    let status = maidr()
        .args(["render", "horizontal-box", "--layer", "wrapper", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let html = std::fs::read_to_string(&out).unwrap();
    assert!(html.contains("maidr-data="));
    assert!(html.contains("<script>"));

    let check = maidr().arg("validate").arg(&out).output().unwrap();
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stderr));
    assert_eq!(String::from_utf8_lossy(&check.stdout).trim(), "ok: 1 subplot(s), 1 layer(s)");
}

#[test]
fn json_output_parses() {
    let out = maidr().args(["render", "multipanel", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let schema = maidr::parse_schema(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(schema.subplots.len(), 2);
}

#[test]
fn bad_input_is_reported() {
    let out = maidr().args(["render", "pie"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown fixture"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"id":"x","subplots":[{"row":0,"col":0,"layers":[{"type":"pie","axes":{"x_label":"","y_label":"","title":""},"data":[],"selector":"[a]"}]}]}"#).unwrap();
    let out = maidr().arg("validate").arg(&path).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("pie"));
}
