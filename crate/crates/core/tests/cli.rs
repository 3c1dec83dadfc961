use std::path::PathBuf;
use std::process::{Command, Output};

use ppgf::algebra::{RationalFunction, RationalJson};
use ppgf::families::Family;
use ppgf::oracle;

fn ppgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppgf"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ppgf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn rf(o: &Output) -> RationalFunction {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    RationalFunction::parse(stdout(o).lines().next().unwrap()).unwrap()
}

#[test]
fn gfun_diamond_and_chain() {
    let d = rf(&ppgf(&["gfun", "--family", "diamond"]));
    let want = RationalFunction::parse(
        "(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3)*(1 - x1*x2*x3)*(1 - x1*x2*x3*x4))",
    )
    .unwrap();
    assert!(d.rf_eq(&want));
    let c = rf(&ppgf(&["gfun", "--family", "chain", "--n", "3"]));
    let want = RationalFunction::parse("1/((1 - x1)*(1 - x1*x2)*(1 - x1*x2*x3))").unwrap();
    assert!(c.rf_eq(&want));
}

#[test]
fn gfun_of_empty_file_is_one() {
    let p = scratch("empty.poset", "# nothing here\n");
    let o = ppgf(&["gfun", p.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn strategies_agree_on_the_command_line() {
    let outs: Vec<_> = ["default", "reversed", "ple-first"]
        .iter()
        .map(|s| {
            rf(&ppgf(&[
                "gfun",
                "--family",
                "zigzag",
                "--n",
                "3",
                "--strategy",
                s,
            ]))
        })
        .collect();
    assert!(outs[0].rf_eq(&outs[1]) && outs[0].rf_eq(&outs[2]));
}

#[test]
fn qgfun_examples() {
    let f = rf(&ppgf(&["qgfun", "--family", "chain", "--n", "1"]));
    assert!(f.rf_eq(&RationalFunction::parse("1/(1 - q)").unwrap()));

    let f = rf(&ppgf(&["qgfun", "--family", "two_rowed_dd", "--n", "3"]));
    let want = RationalFunction::parse(
        "(1 + q^2)*(1 + q^4)/((1 - q)*(1 - q^2)*(1 - q^3)*(1 - q^4)*(1 - q^5)*(1 - q^6))",
    )
    .unwrap();
    assert!(f.rf_eq(&want));

    let f = rf(&ppgf(&["qgfun", "--family", "multicube", "--n", "2"]));
    assert!(oracle::verify(&Family::Multicube.poset(2).unwrap(), &f, 10).passed());
}

#[test]
fn qgfun_series_and_json() {
    let o = ppgf(&["qgfun", "--family", "diamond", "--series", "4"]);
    assert!(
        stdout(&o).contains("series: 1*q^0 + 1*q^1 + 3*q^2 + 4*q^3 + 7*q^4"),
        "{}",
        stdout(&o)
    );
    let o = ppgf(&["qgfun", "--family", "diamond", "--series", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["series"], serde_json::json!(["1", "1", "3", "4"]));
    let back: RationalJson = serde_json::from_value(v["result"].clone()).unwrap();
    let f = RationalFunction::from_json(&back).unwrap();
    assert!(f.rf_eq(&ppgf::engine::gfun_q(&ppgf::families::diamond())));
}

#[test]
fn eval_matches_qgfun() {
    let a = rf(&ppgf(&["eval", "--family", "zigzag", "--n", "5"]));
    let b = rf(&ppgf(&["qgfun", "--family", "zigzag", "--n", "5"]));
    assert!(a.rf_eq(&b));
    let a = rf(&ppgf(&[
        "eval",
        "--family",
        "three_rowed",
        "--n",
        "2",
        "--multivariate",
    ]));
    let b = rf(&ppgf(&["gfun", "--family", "three_rowed", "--n", "2"]));
    assert!(a.rf_eq(&b));
    let a = rf(&ppgf(&["eval", "--family", "two_rowed_dd", "--n", "1"]));
    assert!(a.rf_eq(&RationalFunction::parse("1/((1 - q)*(1 - q^2))").unwrap()));
}

#[test]
fn recurrence_text_and_json() {
    let o = ppgf(&["recurrence", "--family", "three_rowed"]);
    let text = stdout(&o);
    assert!(text.contains("F0: chain 1 [(1,2) (1,3)]"), "{text}");
    let o = ppgf(&["recurrence", "--family", "multicube", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["states"].as_array().unwrap().len(), 1);
    assert_eq!(v["transitions"][0]["terms"].as_array().unwrap().len(), 12);
}

#[test]
fn rpower_from_block_file() {
    let block = scratch("zz.poset", "elements: 1 2\ncover: 2 1\nrel: 2 1\n");
    let b = block.to_str().unwrap();
    let a = rf(&ppgf(&["eval", "--family", "rpower", b, "--n", "4"]));
    let z = rf(&ppgf(&["qgfun", "--family", "zigzag", "--n", "4"]));
    assert!(a.rf_eq(&z));
    let o = ppgf(&["recurrence", "--family", "rpower", b]);
    assert!(o.status.success());
}

#[test]
fn verify_pass_and_fail() {
    let o = ppgf(&["verify", "--family", "diamond", "--bound", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass"));
    let o = ppgf(&["verify", "--family", "zigzag", "--n", "3", "--bound", "8"]);
    assert_eq!(o.status.code(), Some(0));

    let bad = scratch(
        "bad.txt",
        "(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3)*(1 - x1*x2*x3))\n",
    );
    let o = ppgf(&[
        "verify",
        "--family",
        "diamond",
        "--against",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL at"), "{}", stdout(&o));

    let f = ppgf::engine::gfun(&ppgf::families::diamond());
    let good = scratch("good.json", &serde_json::to_string(&f.to_json()).unwrap());
    let o = ppgf(&[
        "verify",
        "--family",
        "diamond",
        "--against",
        good.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_two() {
    let cyclic = scratch(
        "cyc.poset",
        "elements: 1 2 3\ncover: 1 2\ncover: 2 3\ncover: 3 1\n",
    );
    let o = ppgf(&["gfun", cyclic.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    for args in [
        &["gfun"][..],
        &["gfun", "--family", "hexagon"],
        &["gfun", "--family", "chain", "--n", "0"],
        &["gfun", "/no/such/file"],
        &["recurrence", "--family", "diamond"],
        &["frobnicate"],
        &["qgfun", "--family", "rpower"],
    ] {
        assert_eq!(ppgf(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("ppgf-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ppgf"))
            .args(["qgfun", "--family", "zigzag", "--n", "3"])
            .env("PPGF_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = rf(&run());
    let entry = dir.join("qgfun-zigzag-3.json");
    let text = std::fs::read_to_string(&entry).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert!(first.rf_eq(&rf(&run())));

    // entries from another version are recomputed
    let mut stale = v.clone();
    stale["version"] = "0.0.0".into();
    stale["result"] = serde_json::to_value(RationalFunction::one().to_json()).unwrap();
    std::fs::write(&entry, stale.to_string()).unwrap();
    assert!(first.rf_eq(&rf(&run())));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn threads_flag_is_accepted() {
    let a = rf(&ppgf(&["--threads", "1", "qgfun", "--family", "diamond"]));
    let b = rf(&ppgf(&["qgfun", "--family", "diamond", "--threads", "3"]));
    assert!(a.rf_eq(&b));
}
