use std::path::PathBuf;
use std::process::{Command, Output};

use lmc_core::generate::fixture;
use lmc_core::lifting::{self, EdgeLabeling};
use serde_json::Value;

fn lmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmc"))
        .args(args)
        .env_remove("LMC_MAX_NODES")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lmc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn check_exit_codes() {
    let ok = lmc(&["check", "--fixture", "fig3", "-x", "011"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(report(&ok)["result"]["feasible"], true);

    let bad = lmc(&["check", "--fixture", "fig3", "-x", "001"]);
    assert_eq!(code(&bad), 1);
    let r = report(&bad);
    assert_eq!(r["result"]["violated"][0]["tag"], "path(f=1,2;P=1-0-2)");

    let f = temp("malformed.json", "{\"nodes\": 3,");
    let out = lmc(&["check", f.to_str().unwrap(), "-x", "011"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    assert_eq!(code(&lmc(&["check", "--fixture", "fig3", "-x", "01"])), 2);
    assert_eq!(code(&lmc(&["check", "--fixture", "nope", "-x", "011"])), 2);
}

#[test]
fn check_matches_library_on_fixtures() {
    for name in ["fig3", "fig4a", "c4-k4"] {
        let pair = fixture(name).unwrap().pair;
        for v in 0..1u128 << pair.dim() {
            let x = EdgeLabeling::from_value(v, pair.dim());
            let out = lmc(&["check", "--fixture", name, "-x", &x.to_string()]);
            let expected = if lifting::is_lifted_multicut(&pair, &x) {
                0
            } else {
                1
            };
            assert_eq!(code(&out), expected, "{name} {x}");
        }
    }
}

#[test]
fn solve_fixtures() {
    let exact = report(&lmc(&["solve", "--fixture", "fig6"]));
    assert_eq!(exact["result"]["objective"], 0);
    assert_eq!(exact["result"]["labeling"], "000");
    assert_eq!(exact["result"]["certificate"], "optimal");

    let multicut = report(&lmc(&[
        "solve",
        "--fixture",
        "fig6-multicut",
        "--method",
        "bnb",
    ]));
    assert_eq!(multicut["result"]["objective"], -2);

    let greedy = report(&lmc(&["solve", "--fixture", "fig6", "--method", "greedy"]));
    assert_eq!(greedy["result"]["certificate"], "heuristic");
    assert!(greedy["result"]["objective"].as_i64().unwrap() >= 0);
}

#[test]
fn solve_instance_file_and_guard() {
    let inst = temp(
        "inst.json",
        r#"{"nodes": 3, "base_edges": [[0,1],[0,2]], "lifted_edges": [[0,1],[0,2],[1,2]], "costs": {"0,1": -1, "0,2": -1, "1,2": 3}}"#,
    );
    let r = report(&lmc(&["solve", inst.to_str().unwrap()]));
    assert_eq!(r["result"]["objective"], 0);

    let pair_only = temp(
        "pair.json",
        r#"{"nodes": 3, "base_edges": [[0,1],[0,2]], "lifted_edges": [[0,1],[0,2],[1,2]]}"#,
    );
    assert_eq!(code(&lmc(&["solve", pair_only.to_str().unwrap()])), 2);

    let big = lmc(&["gen", "path n=14", "--costs", "3"]);
    let big = temp("big.json", std::str::from_utf8(&big.stdout).unwrap());
    assert_eq!(code(&lmc(&["solve", big.to_str().unwrap()])), 3);
    assert_eq!(code(&lmc(&["enumerate", big.to_str().unwrap()])), 3);
    assert_eq!(
        code(&lmc(&[
            "solve",
            big.to_str().unwrap(),
            "--method",
            "greedy"
        ])),
        0
    );
    let forced = lmc(&["solve", big.to_str().unwrap(), "--force"]);
    assert_eq!(code(&forced), 0);
}

#[test]
fn gen_emits_valid_pairs() {
    let out = lmc(&["gen", "path n=3 extra=0-2"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(
        r["result"]["lifted_edges"],
        serde_json::json!([[0, 1], [0, 2], [1, 2]])
    );

    let k3 = report(&lmc(&["gen", "complete n=3"]));
    assert_eq!(k3["result"]["base_edges"], k3["result"]["lifted_edges"]);

    let grid = report(&lmc(&["gen", "grid rows=3 cols=4 lift=0"]));
    assert_eq!(grid["result"]["nodes"], 12);
    assert_eq!(grid["result"]["base_edges"].as_array().unwrap().len(), 17);

    assert_eq!(code(&lmc(&["gen", "hexagon n=3"])), 2);
}

#[test]
fn deterministic_payload() {
    let args = [
        "gen",
        "random n=6 p=0.5 lift=0.4",
        "--seed",
        "11",
        "--costs",
        "5",
    ];
    let a = report(&lmc(&args));
    let b = report(&lmc(&args));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["input_digest"], b["input_digest"]);
    assert_eq!(a["seed"], 11);
    let c = report(&lmc(&[
        "gen",
        "random n=6 p=0.5 lift=0.4",
        "--seed",
        "12",
        "--costs",
        "5",
    ]));
    assert_eq!(a["input_digest"], c["input_digest"]);
    assert_ne!(a["result"], c["result"]);

    let s1 = report(&lmc(&[
        "solve",
        "--gen",
        "random n=6 p=0.5 lift=0.4",
        "--seed",
        "3",
    ]));
    let s2 = report(&lmc(&[
        "solve",
        "--gen",
        "random n=6 p=0.5 lift=0.4",
        "--seed",
        "3",
    ]));
    assert_eq!(s1["result"], s2["result"]);
}

#[test]
fn generated_report_is_accepted_as_input() {
    let out = lmc(&["gen", "random n=5 p=0.6 lift=0.5 seed=7"]);
    let f = temp("gen.json", std::str::from_utf8(&out.stdout).unwrap());
    let v = lmc(&["verify", f.to_str().unwrap(), "--suite", "dimension"]);
    assert_eq!(code(&v), 0);
    let r = report(&v);
    assert_eq!(r["result"]["passed"], true);
}

#[test]
fn verify_suites() {
    let out = lmc(&[
        "verify",
        "--gen",
        "random n=5 p=0.6 lift=0.5 seed=7",
        "--suite",
        "dimension",
    ]);
    assert_eq!(code(&out), 0);

    let out = lmc(&["verify", "--fixture", "fig7a", "--suite", "cuts-necessary"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert!(
        r["result"]["suites"][0]["counts"]["conditions_failed"]
            .as_u64()
            .unwrap()
            >= 1
    );

    let out = lmc(&["verify", "--fixture", "fig3", "--suite", "lemma8"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["suites"][0]["checks"], 8);

    assert_eq!(
        code(&lmc(&["verify", "--fixture", "fig3", "--suite", "bogus"])),
        2
    );
}

#[test]
fn facet_check_reports() {
    let out = lmc(&[
        "facet-check",
        "--fixture",
        "fig3",
        "--tag",
        "path(f=1,2;P=1-0-2)",
    ]);
    assert_eq!(code(&out), 0);
    let r = &report(&out)["result"];
    assert_eq!(r["theorem_verdict"], "facet");
    assert_eq!(r["oracle_verdict"], "facet");
    for key in ["inequality", "violated_conditions", "witnesses"] {
        assert!(r.get(key).is_some(), "{key}");
    }

    let k4 = lmc(&[
        "facet-check",
        "--gen",
        "complete n=4",
        "--tag",
        "cycle(e=0,1;C=0,1|0,3|1,2|2,3)",
    ]);
    assert_eq!(code(&k4), 1);
    let r = &report(&k4)["result"];
    assert_eq!(r["theorem_verdict"], "not-facet");
    assert_eq!(r["oracle_verdict"], "not-facet");

    let tsv = lmc(&[
        "facet-check",
        "--fixture",
        "fig3",
        "--tag",
        "box_lower(e=1,2)",
        "--format",
        "tsv",
    ]);
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("tag\ttheorem_verdict"));
}

#[test]
fn dim_and_enumerate_and_lift() {
    let d = report(&lmc(&["dim", "--fixture", "fig3"]));
    assert_eq!(d["result"]["dimension"], 3);
    assert_eq!(d["result"]["vertices"], 4);

    let face = report(&lmc(&[
        "dim",
        "--fixture",
        "fig3",
        "--tag",
        "path(f=1,2;P=1-0-2)",
    ]));
    assert_eq!(face["result"]["face_dimension"], 2);

    let e = report(&lmc(&["enumerate", "--gen", "complete n=3"]));
    assert_eq!(e["result"]["count"], 5);

    let l = report(&lmc(&["lift", "--fixture", "fig3", "-m", "10"]));
    assert_eq!(l["result"]["labeling"], "101");
    assert_eq!(code(&lmc(&["lift", "--gen", "cycle n=3", "-m", "100"])), 2);
}
