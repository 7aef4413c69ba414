use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn coxlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxlift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn tsv_rows(text: &str) -> Vec<(Vec<i64>, usize)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let cells: Vec<&str> = l.split('\t').collect();
            let (dim, c) = cells.split_last().unwrap();
            (c.iter().map(|x| x.parse().unwrap()).collect(), dim.parse().unwrap())
        })
        .collect()
}

fn klifting_law(c: &[i64]) -> usize {
    let a = c[0] <= 0 && c[2] <= 0 && c[1] == 0 && c[3] == 0;
    let b = c[0] == 0 && c[2] == 0 && c[1] <= 0 && c[3] <= 0;
    usize::from(a || b)
}

#[test]
fn residue_field_table_follows_the_law() {
    let cone = data("cone_over_square.json");
    let module = data("residue_field.json");
    let o = coxlift(&["lift-table", "--cone", p(&cone), "--module", p(&module), "--box", "-2..2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("c1\tc2\tc3\tc4\tdim"));
    let rows = tsv_rows(&text);
    assert_eq!(rows.len(), 625);
    let degrees: Vec<&Vec<i64>> = rows.iter().map(|r| &r.0).collect();
    let mut sorted = degrees.clone();
    sorted.sort();
    assert_eq!(degrees, sorted);
    for (c, dim) in &rows {
        assert_eq!(*dim, klifting_law(c), "at {c:?}");
    }
}

#[test]
fn maximal_ideal_table_is_the_monomial_ideal() {
    let o = coxlift(&[
        "lift-table",
        "--cone",
        p(&data("cone_over_square.json")),
        "--module",
        p(&data("maximal_ideal.json")),
        "--box",
        "-2..2",
    ]);
    assert!(o.status.success());
    for (c, dim) in tsv_rows(&stdout(&o)) {
        let expected = c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x != 0);
        assert_eq!(dim, usize::from(expected), "at {c:?}");
    }
}

#[test]
fn orthant_table_is_reindexing() {
    let dir = tempfile::tempdir().unwrap();
    let module = dir.path().join("shifted_ring.json");
    fs::write(
        &module,
        r#"{"type": "shift", "by": [1, 0, -1],
            "base": {"type": "indicator", "style": "submodule",
                     "constraints": [{"ray": 0, "op": ">=", "bound": 0},
                                     {"ray": 1, "op": ">=", "bound": 0},
                                     {"ray": 2, "op": ">=", "bound": 0}]}}"#,
    )
    .unwrap();
    let o = coxlift(&["lift-table", "--cone", p(&data("orthant3.json")), "--module", p(&module), "--box", "-2..2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for (c, dim) in tsv_rows(&stdout(&o)) {
        let expected = c[0] + 1 >= 0 && c[1] >= 0 && c[2] >= 1;
        assert_eq!(dim, usize::from(expected), "at {c:?}");
    }
}

#[test]
fn output_is_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cone = data("cone_over_square.json");
    let module = data("codivisorial.json");
    for format in ["tsv", "json"] {
        let outputs: Vec<Vec<u8>> = ["1", "2", "5"]
            .iter()
            .map(|jobs| {
                let out = dir.path().join(format!("t{jobs}.{format}"));
                let o = coxlift(&[
                    "lift-table",
                    "--cone",
                    p(&cone),
                    "--module",
                    p(&module),
                    "--box",
                    "-2..1",
                    "--format",
                    format,
                    "--jobs",
                    jobs,
                    "--out",
                    p(&out),
                ]);
                assert!(o.status.success());
                fs::read(&out).unwrap()
            })
            .collect();
        assert!(!outputs[0].is_empty());
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{format} output depends on --jobs");
    }
}

#[test]
fn json_table_lists_components() {
    let o = coxlift(&[
        "lift-table",
        "--cone",
        p(&data("cone_over_square.json")),
        "--module",
        p(&data("codivisorial.json")),
        "--box",
        "-1..-1,0..0,-1..-1,0..0",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lc = &v[0];
    assert_eq!(lc["degree"], serde_json::json!([-1, 0, -1, 0]));
    assert_eq!(lc["dim"], 3);
    assert_eq!(lc["minimal_elements"], serde_json::json!([[-1, 0, 0], [0, 0, 0], [1, 0, 0]]));
    assert_eq!(lc["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn check_suites_report_and_exit() {
    let o = coxlift(&["check", "klifting"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("[PASS] klifting"));
    assert!(text.contains("expected 2401/2401 agree, actual 2401/2401 agree"));
    let o = coxlift(&["check", "roos"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("crown lim^0, lim^1: expected [1, 1], actual [1, 1]"));
    let o = coxlift(&["check", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown check suite"));
}

#[test]
fn suites_lists_every_criterion() {
    let o = coxlift(&["suites"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);
}

#[test]
fn roos_on_diagrams() {
    let o = coxlift(&["roos", "--diagram", p(&data("crown.json")), "--imax", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lim"], serde_json::json!([1, 1, 0]));

    let dir = tempfile::tempdir().unwrap();
    let discrete = dir.path().join("discrete.json");
    fs::write(&discrete, r#"{"elements": ["x", "y"], "leq": [], "dims": {"x": 1, "y": 1}}"#).unwrap();
    let o = coxlift(&["roos", "--diagram", p(&discrete)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lim"], serde_json::json!([2, 0]));

    let minimum = dir.path().join("minimum.json");
    fs::write(
        &minimum,
        r#"{"elements": ["0", "a", "b"], "leq": [["0", "a"], ["0", "b"]],
            "dims": {"0": 2, "a": 1, "b": 1},
            "maps": {"0->a": [[1, 0]], "0->b": [["1/2", 3]]}}"#,
    )
    .unwrap();
    let o = coxlift(&["roos", "--diagram", p(&minimum), "--imax", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lim"], serde_json::json!([2, 0, 0]));
}

#[test]
fn class_group_of_projective_plane() {
    let o = coxlift(&["class-group", "--fan", p(&data("projective_plane.json"))]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["torsion"], serde_json::json!([]));
    assert_eq!(v["degree_map"], serde_json::json!([[1, 1, 1]]));
}

#[test]
fn global_lift_intersects_filtrations() {
    let o = coxlift(&[
        "global-lift",
        "--fan",
        p(&data("projective_plane.json")),
        "--module",
        p(&data("tangent_like.json")),
        "--box",
        "0..1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = tsv_rows(&stdout(&o));
    assert_eq!(rows.len(), 8);
    // three distinct lines: any two levels at 0 meet in zero
    for (c, dim) in rows {
        let zeros = c.iter().filter(|&&x| x == 0).count();
        let expected = match zeros {
            0 => 2,
            1 => 1,
            _ => 0,
        };
        assert_eq!(dim, expected, "at {c:?}");
    }
}

#[test]
fn input_errors_exit_with_two_and_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad_cone = dir.path().join("bad_cone.json");
    fs::write(&bad_cone, r#"{"lattice_rank": 2, "rays": [[1, 0], [-1, 0]]}"#).unwrap();
    let o = coxlift(&["lift-table", "--cone", p(&bad_cone), "--module", p(&data("residue_field.json")), "--box", "0..0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad_cone.json"));

    let bad_module = dir.path().join("bad_module.json");
    fs::write(&bad_module, r#"{"type": "indicator", "style": "quotient", "constraints": [{"ray": 9, "op": "<=", "bound": 0}]}"#)
        .unwrap();
    let o = coxlift(&["lift-table", "--cone", p(&data("cone_over_square.json")), "--module", p(&bad_module), "--box", "0..0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("module.constraints[0].ray"), "{err}");

    let o = coxlift(&[
        "lift-table",
        "--cone",
        p(&data("cone_over_square.json")),
        "--module",
        p(&data("residue_field.json")),
        "--box",
        "2..1",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let o = coxlift(&["roos", "--diagram", p(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
    let o = coxlift(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
