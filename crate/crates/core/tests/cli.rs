use toricmirror::cli;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toricmirror").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn chain3_delta_text() {
    let fan = fixture("chain3");
    let (code, out, _) = run(&["delta", "--fan", &fan, "--order", "10", "--ray", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "delta_1 = q1 + q1 q2 + q1 q2 q3");
    let (_, by_label, _) = run(&["delta", "--fan", &fan, "--order", "10", "--ray", "D3"]);
    assert_eq!(by_label.trim(), "delta_3 = q3 + q2 q3 + q1 q2 q3");
}

#[test]
fn fano_g_vanishes() {
    let (code, out, _) = run(&["g", "--fan", &fixture("p2"), "--order", "8", "--ray", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "g_1 = 0");
}

#[test]
fn check_all_passes_on_f2() {
    let (code, out, _) = run(&["check-all", "--fan", &fixture("f2"), "--order", "8"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.len() >= 10);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn rational_order_and_json_output() {
    let (code, out, _) = run(&[
        "g",
        "--fan",
        &fixture("f2"),
        "--order",
        "5/2",
        "--ray",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["name"], "g_2");
    let terms = v["series"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[1]["exponent"], serde_json::json!([2, 0]));
    assert_eq!(terms[1]["num"].to_string(), "3");
    assert_eq!(terms[1]["den"].to_string(), "2");
}

#[test]
fn min_classes_raises_the_order() {
    let fan = fixture("f2");
    let (code, out, _) = run(&[
        "g",
        "--fan",
        &fan,
        "--order",
        "1",
        "--ray",
        "2",
        "--min-classes",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "g_2 = qv1 + 3/2·qv1^2 + 10/3·qv1^3");
}

#[test]
fn open_invariants() {
    let fan = fixture("f2");
    let (_, out, _) = run(&[
        "gw", "--fan", &fan, "--order", "4", "--ray", "2", "--alpha", "1,0",
    ]);
    assert_eq!(out.trim(), "n1 = 1");
    let (_, out, _) = run(&[
        "gw", "--fan", &fan, "--order", "4", "--ray", "2", "--alpha", "2,0",
    ]);
    assert_eq!(out.trim(), "n1 = 0");
    let (code, _, err) = run(&[
        "gw", "--fan", &fan, "--order", "4", "--ray", "2", "--alpha", "0,1",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("Maslov"), "{err}");
}

#[test]
fn inverse_mirror_map_text() {
    let (code, out, _) = run(&["inverse-mirror", "--fan", &fixture("f2"), "--order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().collect::<Vec<_>>(),
        ["qv1 = q1·(1 - 2·q1 + 3·q1^2 - 4·q1^3)", "qv2 = q2·(1 + q1)"]
    );
}

#[test]
fn permutation_is_reported_on_request() {
    let (code, out, _) = run(&[
        "validate",
        "--fan",
        &fixture("chain3"),
        "--basis-cone",
        "3",
        "--show-permutation",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().next(),
        Some("permutation: D4 D5 D1 D2 D3 D6 D7 D8")
    );
}

#[test]
fn seidel_fan_is_a_valid_document() {
    let (code, out, _) = run(&[
        "seidel-fan",
        "--fan",
        &fixture("p1xp1"),
        "--ray",
        "1",
        "--sign",
        "plus",
    ]);
    assert_eq!(code, 0);
    let fan = toricmirror::parse_fan(&out).unwrap();
    assert_eq!(fan.dim(), 3);
    assert_eq!(fan.num_rays(), 6);
}

#[test]
fn errors_exit_with_one() {
    let (code, _, err) = run(&[
        "g",
        "--fan",
        "/nonexistent.json",
        "--order",
        "2",
        "--ray",
        "1",
    ]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
    let (code, _, _) = run(&["g", "--fan", &fixture("f2"), "--order", "-1", "--ray", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["g", "--fan", &fixture("f2"), "--order", "2", "--ray", "9"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["frobnicate", "--fan", &fixture("f2")]);
    assert_eq!(code, 1);
}

#[test]
fn non_semi_fano_is_an_error_for_series() {
    let dir = std::env::temp_dir().join(format!("toricmirror-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f3.json");
    std::fs::write(
        &path,
        r#"{"dim": 2, "rays": [[1,0],[0,1],[-1,3],[0,-1]], "max_cones": [[0,1],[1,2],[2,3],[3,0]]}"#,
    )
    .unwrap();
    let fan = path.to_str().unwrap();
    let (code, out, _) = run(&["semifano", "--fan", fan]);
    assert_eq!(code, 0);
    assert!(out.starts_with("semi-Fano: no"), "{out}");
    let (code, _, err) = run(&["delta", "--fan", fan, "--order", "3", "--ray", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("semi-Fano"), "{err}");
    let (code, out, _) = run(&["check-all", "--fan", fan]);
    assert_eq!(code, 0, "{out}");
    std::fs::remove_dir_all(dir).unwrap();
}
