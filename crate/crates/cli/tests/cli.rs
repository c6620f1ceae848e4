use std::path::PathBuf;
use std::process::Command;

use grcat::{run, Outcome};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.display().to_string()
}

/// Runs with fixture names expanded to paths.
fn grcat(args: &[&str]) -> Outcome {
    let args = args.iter().map(|a| {
        if a.ends_with(".json") {
            fixture(a)
        } else {
            a.to_string()
        }
    });
    run(std::iter::once("grcat".to_string()).chain(args))
}

fn ok(args: &[&str]) -> String {
    let out = grcat(args);
    assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
    out.stdout
}

const VALID: &[&str] = &[
    "z2.json",
    "s3_permutations.json",
    "z2_carrier.json",
    "z4_carrier.json",
    "z2_trivial.json",
    "z2_z4_negation.json",
    "z3_trivial.json",
    "trivial_module.json",
    "cocycle_z2.json",
    "type_zero.json",
    "type_nonzero.json",
    "type_negation.json",
    "identity_functor.json",
    "identity_negation.json",
    "obstructed_functor.json",
    "monoidal_zero.json",
    "monoidal_twisted.json",
    "kernel_z4.json",
    "kernel_s3.json",
];

#[test]
fn valid_fixtures_validate() {
    for f in VALID {
        let out = ok(&["validate", f]);
        assert!(out.starts_with("valid"), "{f}: {out}");
    }
}

#[test]
fn invalid_fixtures_are_rejected() {
    for (f, needle) in [
        ("bad_latin_square.json", "not a Latin square"),
        ("bad_syntax.json", "line 4 column 1"),
        ("bad_pentagon.json", "not a cocycle"),
        ("unnormalized_cochain.json", "not normalized"),
    ] {
        let out = grcat(&["validate", f]);
        assert_eq!(out.code, 1, "{f}");
        assert!(
            out.stdout.contains(needle) || out.stderr.contains(needle),
            "{f}: {out:?}"
        );
    }
    assert_eq!(grcat(&["validate", "missing.json"]).code, 1);
}

#[test]
fn cohomology_of_small_modules() {
    let out = ok(&[
        "cohomology",
        "z2_trivial.json",
        "--degree",
        "2",
        "--method",
        "both",
    ]);
    assert!(out.starts_with("H^2 ≅ Z/2\n"));
    assert!(out.contains("methods agree"));
    assert!(ok(&["cohomology", "z2_trivial.json", "--degree", "3"]).starts_with("H^3 ≅ Z/2\n"));
    assert!(ok(&["cohomology", "z2_z4_negation.json", "--degree", "3"]).starts_with("H^3 ≅ Z/2\n"));
    assert!(ok(&["cohomology", "z3_trivial.json", "--degree", "1"]).starts_with("H^1 ≅ Z/3\n"));
}

#[test]
fn functor_commands() {
    assert!(ok(&["obstruction", "identity_functor.json"]).contains("realizable: yes"));
    assert!(ok(&["obstruction", "obstructed_functor.json"]).contains("realizable: no"));
    assert!(ok(&["classify", "identity_functor.json"]).starts_with("2 congruence classes\n"));
    assert!(
        ok(&["automorphisms", "identity_functor.json"]).starts_with("2 monoidal automorphisms\n")
    );
    assert!(
        ok(&["automorphisms", "identity_negation.json"]).starts_with("4 monoidal automorphisms\n")
    );
    assert_eq!(
        ok(&["congruent", "monoidal_zero.json", "monoidal_twisted.json"]),
        "congruent: no\n"
    );
    assert!(
        ok(&["congruent", "monoidal_zero.json", "monoidal_zero.json"])
            .starts_with("congruent: yes")
    );
}

#[test]
fn group_and_kernel_commands() {
    assert!(ok(&["reduce", "catalog:Z4"]).contains("agrees with strict reduction: yes"));
    assert!(ok(&["reduce", "catalog:S3"]).contains("agrees with strict reduction: yes"));
    assert!(ok(&["aut-category", "catalog:Z3"]).starts_with("objects: 2; arrows: 6\n"));
    assert!(
        ok(&["strictify", "kernel_z4.json"]).starts_with("strictification checks: PASS (3/3)\n")
    );
    assert!(ok(&["extension", "kernel_z4.json"]).contains("isomorphic to D8"));
    assert!(ok(&["extension", "kernel_s3.json"]).contains("isomorphic to D12"));
    let found = ok(&["kernel-search", "type_nonzero.json"]);
    assert!(found.starts_with("2 realizations\n"), "{found}");
    assert!(found.contains("D16") && found.contains("Q16"));
    let found = ok(&["kernel-search", "type_negation.json", "--max-order", "8"]);
    assert!(found.contains("G = Z4"), "{found}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(grcat(&["classify", "z2.json"]).code, 2);
    assert_eq!(grcat(&["no-such-command"]).code, 2);
    assert_eq!(grcat(&["cohomology", "z2_trivial.json"]).code, 2);
}

#[test]
fn json_output_parses() {
    let out = ok(&["--json", "obstruction", "identity_functor.json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["realizable"], true);
    let out = ok(&["--json", "classify", "identity_negation.json"]);
    serde_json::from_str::<serde_json::Value>(&out).unwrap();
}

#[test]
fn seeded_runs_repeat() {
    for args in [
        &["--seed", "7", "strictify", "kernel_s3.json"][..],
        &["--seed", "7", "reduce", "catalog:D8"],
        &["--seed", "11", "--json", "extension", "kernel_z4.json"],
    ] {
        assert_eq!(grcat(args), grcat(args), "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_grcat");
    let status = |args: &[String]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["validate".into(), fixture("z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "valid group of order 2 (abelian)\n"
    );
    assert_eq!(
        status(&["validate".into(), fixture("bad_pentagon.json")])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        status(&["classify".into(), fixture("z2.json")])
            .status
            .code(),
        Some(2)
    );
}
