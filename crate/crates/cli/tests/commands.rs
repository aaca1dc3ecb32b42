use std::process::Command;

fn iwr(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_iwr")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn chars_reports_gauss_identity() {
    let (code, out, _) = iwr(&["chars", "--char", "quad-23", "--char", "teich11^2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["gauss_identity"], true);
    }
}

#[test]
fn configuration_errors_exit_with_2() {
    assert_eq!(iwr(&["padic-l", "--newform", "11.2.a.a"]).0, 2);
    assert_eq!(iwr(&["padic-l", "--prime", "9", "--newform", "11.2.a.a"]).0, 2);
    assert_eq!(iwr(&["modsym-table", "--prime", "5", "--newform", "/no/such/file.json"]).0, 2);
    assert_eq!(iwr(&["chars", "--char", "bogus"]).0, 2);
    assert_eq!(iwr(&["padic-l", "--prime", "5", "--precision", "0,3", "--newform", "11.2.a.a"]).0, 2);
}

#[test]
fn modsym_table_for_example_three() {
    let (code, out, _) = iwr(&["modsym-table", "--prime", "5", "--newform", "19.2.a.a"]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["values"].as_array().unwrap().len(), 4);
}

#[test]
fn padic_l_report_fields() {
    let (code, out, err) = iwr(&["padic-l", "--prime", "5", "--newform", "19.2.a.a", "--branches", "1..2", "--sigma0", "11"]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        for key in ["form", "twist", "j", "alpha", "value_at_trivial", "mu", "lambda", "sigma0_factors", "verdict"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["lambda"], 0);
    }
}

#[test]
fn iwasawa_and_out_file() {
    let dir = std::env::temp_dir().join(format!("iwr-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inv.txt");
    let (code, _, _) = iwr(&["--out", path.to_str().unwrap(), "iwasawa", "5, 4, 3, [1:1, 0:1, 4:0]"]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains(r#""lambda":1"#));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_example_three_passes() {
    let (code, out, _) = iwr(&["verify-example", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.contains("check_id")).all(|l| l.contains(r#""status":"pass""#)));
}

#[test]
fn exit_code_tracks_failed_records() {
    let (code, out, _) = iwr(&["verify-example", "2"]);
    assert!(out.contains(r#""check_id":"ex2.lambda.j2""#));
    assert_eq!(code == 1, out.contains(r#""status":"fail""#));
}
