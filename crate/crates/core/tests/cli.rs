mod common;

use std::process::Command;

use common::data_path;

fn fqg(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args
        .iter()
        .map(|a| if !a.starts_with('/') && (a.ends_with(".qg") || a.ends_with(".cov")) { data_path(a) } else { a.to_string() })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_fqg")).args(&args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fqg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn irr_block_dimensions() {
    for (file, blocks) in [
        ("c_s3.qg", "blocks: 1,1,2"),
        ("group_z2.qg", "blocks: 1,1"),
        ("kac_paljutkin.qg", "blocks: 1,1,1,1,2"),
    ] {
        let (code, out, err) = fqg(&["irr", file]);
        assert_eq!(code, 0, "{err}");
        assert!(out.lines().any(|l| l == blocks), "{file}: {out}");
    }
}

#[test]
fn irr_writes_table() {
    let path = tmp("kp.irr");
    let (code, _, _) = fqg(&["irr", "kac_paljutkin.qg", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("# F convention"));
    assert!(text.contains("block pi4 n 2"));
}

#[test]
fn hull_running_example() {
    let (code, out, _) = fqg(&["hull", "group_z2.qg", "z2_generator.cov"]);
    assert_eq!(code, 0);
    assert!(out.contains("E: [0,1]; dim I(E)=1; synthesis: OK"), "{out}");
}

#[test]
fn hull_trivial_cases() {
    // the principal ideal at the counit is everything
    let (code, out, _) = fqg(&["hull", "c_s3.qg", "counit_s3.cov"]);
    assert_eq!(code, 0);
    assert!(out.contains("E: [0,0,0]; dim I(E)=6; synthesis: OK"), "{out}");
    let (code, out, _) = fqg(&["hull", "c_s3.qg", "zero.cov"]);
    assert_eq!(code, 0);
    assert!(out.contains("E: [1,1,2]; dim I(E)=0; synthesis: OK"), "{out}");
}

#[test]
fn hull_out_file_parses_back() {
    let path = tmp("z2.hull");
    let (code, _, _) = fqg(&["hull", "group_z2.qg", "z2_generator.cov", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("hull "));
}

#[test]
fn quasi_from_file() {
    let (code, out, _) = fqg(&["quasi", "group_s3.qg", "--omega", "a3.cov"]);
    assert_eq!(code, 0);
    assert!(out.contains("N dim 3; right-unit OK; cosets: 3×EqualsN, 3×Zero"), "{out}");
    let (code, out, _) = fqg(&["quasi", "group_z2.qg", "--omega", "haar_z2.cov"]);
    assert_eq!(code, 0);
    assert!(out.contains("N = C1"), "{out}");
}

#[test]
fn quasi_search_lists_subgroups() {
    let (code, out, _) = fqg(&["quasi", "c_s3.qg", "--search"]);
    assert_eq!(code, 0);
    assert!(out.contains("found 6 idempotent states (exhaustive)"), "{out}");
    assert_eq!(out.matches("right-unit OK").count(), 6);
}

#[test]
fn quasi_rejects_non_idempotent() {
    let path = tmp("half.cov");
    std::fs::write(&path, "0 1\n1 1\n").unwrap();
    // indicator of {e, (12)} in C[S3] is idempotent; of {e, 3-cycle} it is not
    let (code, _, _) = fqg(&["quasi", "group_s3.qg", "--omega", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    std::fs::write(&path, "0 1\n3 1\n").unwrap();
    let (code, _, err) = fqg(&["quasi", "group_s3.qg", "--omega", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn coset_report() {
    let (code, out, _) = fqg(&["coset", "group_s3.qg", "--omega", "a3.cov", "--x", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("xN ∩ N: Zero"), "{out}");
    assert!(out.contains("rank 3 = dim N, OK"), "{out}");
    let (code, _, _) = fqg(&["coset", "group_s3.qg", "--omega", "a3.cov", "--x", "9"]);
    assert_eq!(code, 1);
}

#[test]
fn crossed_trivial_actions() {
    let path = tmp("z2z2.qg");
    let (code, out, _) = fqg(&["crossed", "group_z2.qg", "--group", "Z2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("irr: 1,1,1,1 OK"), "{out}");
    // the written product is a valid definition
    let (code, out, _) = fqg(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("axioms: OK"));
    let (code, out, _) = fqg(&["crossed", "c_s3.qg", "--group", "Z2", "--out", tmp("s3z2.qg").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("irr: duplicated OK"), "{out}");
}

#[test]
fn crossed_rejects_non_automorphism() {
    let (code, _, err) = fqg(&["crossed", "group_z4.qg", "--group", "Z2", "--perm", "0,2,1,3"]);
    assert_eq!(code, 2);
    assert!(err.contains("multiplicative"), "{err}");
}

#[test]
fn exit_codes() {
    let bad = tmp("bad.qg");
    std::fs::write(&bad, "name x\ndim 1\nbasis a\n[MULT]\n0 0 0 one 0\n").unwrap();
    assert_eq!(fqg(&["irr", bad.to_str().unwrap()]).0, 1);
    assert_eq!(fqg(&["irr", "/nonexistent/file.qg"]).0, 1);
    assert_eq!(fqg(&["frobnicate"]).0, 1);
    assert_eq!(fqg(&["--help"]).0, 0);

    // break the antipode of C[Z2]
    let text = std::fs::read_to_string(data_path("group_z2.qg")).unwrap();
    let broken = text.replace("[ANTIPODE]\n0 0 1 0", "[ANTIPODE]\n0 0 2 0");
    assert_ne!(broken, text);
    let path = tmp("broken.qg");
    std::fs::write(&path, broken).unwrap();
    let (code, _, err) = fqg(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("antipode"), "{err}");
}

#[test]
fn structured_output_is_json() {
    let (code, out, _) = fqg(&["irr", "c_s3.qg", "--format", "structured"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "irr");
    assert_eq!(v["dims"], serde_json::json!([1, 1, 2]));
    let (_, out, _) = fqg(&["quasi", "group_s3.qg", "--omega", "a3.cov", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["states"][0]["coideal_dim"], 3);
    assert_eq!(v["states"][0]["cosets"]["zero"], 3);
}
