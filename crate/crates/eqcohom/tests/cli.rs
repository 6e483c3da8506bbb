//! End-to-end tests of the command-line binary: flag handling, output
//! shapes, exit codes, caching, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_eqcohom")
}

fn run_with(args: &[&str], envs: &[(&str, &Path)]) -> (i32, String, String) {
    let mut cmd = Command::new(bin());
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().expect("binary runs");
    (
        status.code().unwrap_or(-1),
        String::from_utf8_lossy(&stdout).into_owned(),
        String::from_utf8_lossy(&stderr).into_owned(),
    )
}

/// Plain run with the cache redirected to a throwaway directory so tests
/// never touch the user's real cache.
fn run(args: &[&str]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    run_with(args, &[("EQCOHOM_CACHE_DIR", dir.path())])
}

#[test]
fn compute_lens_4_gives_the_cyclic_group_of_order_four() {
    let (code, out, _) = run(&[
        "compute",
        "--space",
        "lens-4",
        "--theory",
        "bredon",
        "--coeff",
        "0~Ztilde",
        "--deg",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("H^2 = Z/4"), "{out}");
}

#[test]
fn compute_point_borel_twist_one_vanishes_in_degree_two() {
    let (code, out, _) = run(&[
        "compute", "--space", "point", "--theory", "borel", "--twist", "1", "--deg", "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("H^2 = 0"), "{out}");
}

#[test]
fn compute_free_pair_degree_zero_is_z() {
    let (code, out, _) = run(&[
        "compute",
        "--space",
        "free-pair",
        "--theory",
        "bredon",
        "--coeff",
        "0~Ztilde",
        "--deg",
        "0",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("H^0 = Z"), "{out}");
}

#[test]
fn compute_json_has_the_documented_shape() {
    let (code, out, _) = run(&[
        "compute",
        "--space",
        "lens-2",
        "--theory",
        "borel-relative",
        "--twist",
        "1",
        "--deg",
        "2,0,2,1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["space"], "lens-2");
    assert_eq!(doc["theory"], "borel-relative");
    assert_eq!(doc["twist"], 1);
    // Degrees are sorted and deduplicated.
    let degs: Vec<u64> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degs, vec![0, 1, 2]);
    assert_eq!(doc["results"][2]["rendered"], "Z/2");
}

#[test]
fn classify_matches_the_published_counts() {
    let (code, out, _) = run(&["classify", "lens-4"]);
    assert_eq!(code, 0);
    assert!(out.contains("group: Z/4"), "{out}");
    assert!(out.contains("phases: 4"), "{out}");

    let (code, out, _) = run(&["classify", "tr-sphere-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("group: 0"), "{out}");
    assert!(out.contains("phases: 1"), "{out}");

    let (code, out, _) = run(&["classify", "tr-torus-3"]);
    assert_eq!(code, 0);
    assert!(out.contains("group: Z/2 + Z/2 + Z/2 + Z/2"), "{out}");
    assert!(out.contains("phases: 16"), "{out}");
}

#[test]
fn classify_dimension_limits() {
    // Dimension 4: allowed, with the one-to-one caveat.
    let (code, out, _) = run(&["classify", "sphere-antipodal-4"]);
    assert_eq!(code, 0);
    assert!(out.contains("not established to be one-to-one"), "{out}");

    // Dimension 5: refused.
    let (code, _, err) = run(&["classify", "sphere-antipodal-5"]);
    assert_eq!(code, 1);
    assert!(err.contains("refused"), "{err}");
}

#[test]
fn classify_notes_the_free_involution() {
    let (code, out, _) = run(&["classify", "circle-antipodal"]);
    assert_eq!(code, 0);
    assert!(out.contains("odd-rank"), "{out}");
}

#[test]
fn list_shows_spaces_and_systems() {
    let (code, out, _) = run(&["list"]);
    assert_eq!(code, 0);
    assert!(out.contains("lens-2"));
    assert!(out.contains("tr-torus-3"));

    let (code, out, _) = run(&["list", "--systems"]);
    assert_eq!(code, 0);
    assert!(out.contains("0~Ztilde"));

    let (code, out, _) = run(&["list", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
    let names: Vec<&str> = doc
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"lens-4"));
}

#[test]
fn export_then_validate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lens2.json");
    let (code, _, _) = run(&["export", "--space", "lens-2", "--out", file.to_str().unwrap()]);
    assert_eq!(code, 0);

    let (code, out, _) = run(&["validate", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("valid:"), "{out}");

    // Exports are deterministic byte for byte.
    let file2 = dir.path().join("lens2-again.json");
    let (code, _, _) = run(&["export", "--space", "lens-2", "--out", file2.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read(&file).unwrap(),
        std::fs::read(&file2).unwrap()
    );
}

#[test]
fn validate_rejects_bad_files_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();

    let malformed = dir.path().join("broken.json");
    std::fs::write(&malformed, "{this is not json").unwrap();
    let (code, out, _) = run(&["validate", malformed.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("parse error"), "{out}");

    // Export a valid complex, then break equivariance by editing a boundary
    // entry; the validator must name the offending cells.
    let good = dir.path().join("good.json");
    run(&["export", "--space", "circle-reflection", "--out", good.to_str().unwrap()]);
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    doc["boundary"][1][0][2] = serde_json::json!(3);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, out, _) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("invalid"), "{out}");

    // Missing file is a usage error, not a validation verdict.
    let (code, _, _) = run(&["validate", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = run(&[
        "compute", "--space", "nowhere", "--theory", "bredon", "--coeff", "0~Z", "--deg", "0",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown space"), "{err}");

    let (code, _, err) = run(&[
        "compute", "--space", "point", "--theory", "bredon", "--twist", "1", "--deg", "0",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("--coeff"), "{err}");

    let (code, _, err) = run(&[
        "compute", "--space", "point", "--theory", "borel", "--coeff", "0~Z", "--deg", "0",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("--twist"), "{err}");

    let (code, _, err) = run(&[
        "compute", "--space", "point", "--theory", "bredon", "--coeff", "bogus", "--deg", "0",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown system"), "{err}");

    let (code, _, _) = run(&["verify", "everything"]);
    assert_eq!(code, 1);

    // No subcommand at all.
    let (code, _, _) = run(&[]);
    assert_eq!(code, 1);

    // Help is not an error.
    let (code, _, _) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn cached_and_fresh_outputs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let envs: &[(&str, &Path)] = &[("EQCOHOM_CACHE_DIR", dir.path())];
    let args = [
        "compute",
        "--space",
        "tr-sphere-2",
        "--theory",
        "borel-relative",
        "--twist",
        "1",
        "--deg",
        "0,1,2,3",
        "--format",
        "json",
    ];
    let (code1, out1, _) = run_with(&args, envs);
    assert_eq!(code1, 0);
    // The first run populated the cache.
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let (code2, out2, _) = run_with(&args, envs);
    assert_eq!(code2, 0);
    assert_eq!(out1, out2);

    // And --no-cache agrees too.
    let mut args_nc: Vec<&str> = args.to_vec();
    args_nc.push("--no-cache");
    let (code3, out3, _) = run_with(&args_nc, envs);
    assert_eq!(code3, 0);
    assert_eq!(out1, out3);
}

#[test]
fn verify_catches_a_corrupted_cache() {
    let dir = tempfile::tempdir().unwrap();
    let envs: &[(&str, &Path)] = &[("EQCOHOM_CACHE_DIR", dir.path())];

    // Populate one cache entry the cross-validation suite audits.
    let (code, _, _) = run_with(
        &[
            "compute",
            "--space",
            "tr-sphere-2",
            "--theory",
            "bredon",
            "--coeff",
            "0~Ztilde",
            "--deg",
            "2",
        ],
        envs,
    );
    assert_eq!(code, 0);

    // Overwrite every cached record with a wrong group.
    let mut corrupted = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        std::fs::write(
            &path,
            r#"{"schema_version":1,"free_rank":9,"torsion":[]}"#,
        )
        .unwrap();
        corrupted += 1;
    }
    assert!(corrupted > 0);

    let (code, out, _) = run_with(&["verify", "theorem-3-3"], envs);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("FAIL  cache audit"), "{out}");

    // The same suite with the cache ignored passes.
    let (code, out, _) = run_with(&["verify", "theorem-3-3", "--no-cache"], envs);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("checks passed"), "{out}");
}
