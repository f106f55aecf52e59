use std::process::Command;

fn schubert(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .env_remove("SCHUBERT_FIXTURES")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn g2_pullback_json() {
    let (code, out, _) = schubert(&["pullback", "--type", "G2", "--p", "2", "--degree", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quotient_dim"], 1);
    let labels: Vec<_> = v["classes"].as_array().unwrap().iter().map(|c| c["label"].clone()).collect();
    assert_eq!(labels, vec!["+x6^1", "+x6^1"]);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["pullback", "--type", "F4", "--p", "3", "--degree", "2-16"][..],
        &["pullback", "--type", "E6", "--p", "3", "--lattice", "sc", "--degree", "8"][..],
        &["comodule", "--type", "F4", "--p", "3", "--word", "4 3 2 1 2 3", "--format", "json"][..],
        &["dims", "--type", "E7", "--p", "2", "--format", "json"][..],
        &["verify", "--case", "f4_p3_x8", "--format", "json"][..],
    ] {
        let (code, out, _) = schubert(args);
        assert_eq!(code, 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out, "{args:?}");
    }
}

#[test]
fn output_is_independent_of_threads() {
    let base = ["pullback", "--type", "E6", "--p", "3", "--lattice", "sc", "--degree", "2-12"];
    let (_, one, _) = schubert(&[&base[..], &["--threads", "1"]].concat());
    let (_, four, _) = schubert(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
}

#[test]
fn g2_comodule_of_longest_element() {
    let (code, out, _) = schubert(&["comodule", "--type", "G2", "--p", "2", "--word", "s t s t s t"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "μ*[Σ_s1s2s1s2s1s2] = (1) ⊗ [Σ_s1s2s1s2s1s2] + (+x6^1) ⊗ [Σ_s2s1s2] + (+x6^1) ⊗ [Σ_s1s2s1]"
    );
}

#[test]
fn verify_all_passes() {
    let (code, out, _) = schubert(&["verify", "--all"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn corrupted_fixture_fails_with_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    std::fs::write(
        dir.join("f4_p2_x6.txt"),
        "type=F4 p=2 degree=6 label=x6 lattice=adjoint\n1 2 3\n2 3 1\n2 3 2\n3 1 2\n3 2 1\n",
    )
    .unwrap();
    let (code, out, _) = schubert(&["verify", "--all", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL f4_p2_x6"));
    assert!(out.contains("missing from table: 3 2 3"), "{out}");

    std::fs::write(dir.join("f4_p2_x6.txt"), "type=F4 p=2 degree=6 label=x6\n1 2\n").unwrap();
    let (code, _, err) = schubert(&["verify", "--all", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("f4_p2_x6:2"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(schubert(&["pullback", "--type", "H3", "--p", "2", "--degree", "2"]).0, 2);
    assert_eq!(schubert(&["pullback", "--type", "G2", "--p", "4", "--degree", "2"]).0, 2);
    assert_eq!(schubert(&["pullback", "--type", "G2", "--p", "2", "--degree", "5"]).0, 2);
    assert_eq!(schubert(&["comodule", "--type", "G2", "--p", "2", "--word", "1 1"]).0, 2);
    assert_eq!(schubert(&["frobnicate"]).0, 2);
    assert_eq!(schubert(&["--help"]).0, 0);
}

#[test]
fn trivial_center_warns() {
    let (code, out, err) = schubert(&["pullback", "--type", "F4", "--p", "3", "--lattice", "sc", "--degree", "8"]);
    assert_eq!(code, 0);
    assert!(err.contains("lattice flag ignored"), "{err}");
    assert!(out.contains("\"lattice\": \"adjoint\""));
}
