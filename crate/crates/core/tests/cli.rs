use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_electroid-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("electroid-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const Y3: &str = r#"{"n":3,"shape":[[1],[2],[3]],"interior":1,"edges":[{"u":{"b":1},"v":{"v":1},"w":"1/1"},{"u":{"b":2},"v":{"v":1},"w":"1/1"},{"u":{"b":3},"v":{"v":1},"w":"1/1"}],"rotation":{"b1":[0],"b2":[1],"b3":[2],"v1":[0,1,2]}}"#;

#[test]
fn verify_counts_reports_the_sequences() {
    let o = bin(&["verify", "counts", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("|NC| = 14"), "{out}");
    assert!(out.contains("|P| = 105"), "{out}");
    assert!(out.contains("unique-concordance subsets = 32"), "{out}");
}

#[test]
fn covers_of_the_top_matching() {
    let o = bin(&["poset", "covers", "--matching", "(1,4)(2,5)(3,6)"]);
    assert_eq!(o.status.code(), Some(0));
    let covers: Vec<String> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(covers, ["(1,3)(2,5)(4,6)", "(1,4)(2,6)(3,5)", "(1,5)(2,4)(3,6)"]);
}

#[test]
fn embed_the_unit_y() {
    let y = scratch("y3.json", Y3);
    let o = bin(&["net", "embed", y.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(r#""2,4":"3/1""#) && out.contains(r#""1,4":"2/1""#), "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap() + "\n", out);

    // realize the point and embed the result again
    let p = scratch("p.json", &out);
    let net = stdout(&bin(&["net", "realize", p.to_str().unwrap()]));
    let back = scratch("back.json", &net);
    assert_eq!(stdout(&bin(&["net", "embed", back.to_str().unwrap()])), out);
}

#[test]
fn network_commands() {
    let y = scratch("y3b.json", Y3);
    let y = y.to_str().unwrap();
    let groves = stdout(&bin(&["net", "groves", y]));
    assert_eq!(groves.trim(), r#"{"n":3,"coords":{"1 2 3":"1/1","1 2|3":"1/1","1 3|2":"1/1","1|2 3":"1/1","1|2|3":"3/1"}}"#);
    let response = stdout(&bin(&["net", "response", y]));
    assert!(response.contains(r#"["-1/3","2/3","-1/3"]"#), "{response}");
    let medial = stdout(&bin(&["net", "medial", y]));
    assert!(medial.contains(r#""matching":"(1,4)(2,5)(3,6)""#), "{medial}");
    let dot = stdout(&bin(&["net", "medial", y, "--dot"]));
    assert!(dot.starts_with("graph medial {"));
    let dot = stdout(&bin(&["net", "embed", y, "--dot"]));
    assert!(dot.starts_with("graph temperley {"));
}

#[test]
fn combinatorial_commands() {
    assert_eq!(stdout(&bin(&["nc", "enumerate", "--n", "3", "--format", "text"])).lines().count(), 5);
    assert_eq!(stdout(&bin(&["nc", "dual", "1 2|3", "--format", "text"])).trim(), "1|2 3");
    assert_eq!(stdout(&bin(&["nc", "matching", "1 2|3", "--format", "text"])).trim(), "(1,4)(2,3)(5,6)");
    let perm = stdout(&bin(&["perm", "of-matching", "--matching", "(1,7)(2,9)(3,8)(4,10)(5,6)"]));
    assert_eq!(perm.trim(), r#"{"g":"[7,9,8,10,6,15,11,13,12,14]","f":"[6,8,7,9,5,14,10,12,11,13]"}"#);
    let neck = stdout(&bin(&["necklace", "partitions", "--matching", "(1,4)(2,6)(3,7)(5,8)"]));
    assert_eq!(neck.trim(), r#"["1 4|2|3","1|2 4|3","1 2|3 4","1 3|2|4","1|2 3|4","1|2 4|3","1 2|3 4","1 3|2|4"]"#);
    let top = stdout(&bin(&["electroid", "of-matching", "--matching", "(1,4)(2,5)(3,6)"]));
    assert_eq!(top, stdout(&bin(&["electroid", "oh", "--matching", "(1,4)(2,5)(3,6)"])));
    let members: Vec<String> = serde_json::from_str(&top).unwrap();
    assert_eq!(members.len(), 5);
    let leq = stdout(&bin(&["poset", "leq", "--matching", "(1,2)(3,4)", "--upper", "(1,3)(2,4)"]));
    assert_eq!(leq.trim(), "true");
    assert!(stdout(&bin(&["poset", "hasse", "--n", "3"])).starts_with("digraph hasse {"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("electroid-lab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("nc.json");
    let o = bin(&["nc", "enumerate", "--n", "2", "--output", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(target).unwrap(), "[\"1 2\",\"1|2\"]\n");
}

#[test]
fn malformed_input_exits_2() {
    let bad = scratch("bad.json", r#"{"n":3}"#);
    for args in [
        vec!["net", "groves", bad.to_str().unwrap()],
        vec!["net", "groves", "/definitely/not/here.json"],
        vec!["nc", "dual", "1 3|2 4"],
        vec!["poset", "covers", "--matching", "(1,2)(2,3)"],
        vec!["verify", "nonsense"],
        vec!["frobnicate"],
    ] {
        let o = bin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn realize_rejects_points_outside_the_image() {
    let p = scratch("off.json", r#"{"m":6,"k":2,"coords":{"1,2":"1/1","3,4":"1/1"}}"#);
    assert_eq!(bin(&["net", "realize", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_all_is_reproducible() {
    for n in ["3", "4"] {
        let a = bin(&["verify", "all", "--n", n, "--seed", "9", "--trials", "8"]);
        let b = bin(&["verify", "all", "--n", n, "--seed", "9", "--trials", "8"]);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
    }
    let json = stdout(&bin(&["verify", "counts", "--n", "3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["passed"], true);
}
