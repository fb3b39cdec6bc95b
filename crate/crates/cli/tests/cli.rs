use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rp2_depends_on_the_characteristic() {
    let rp2 = fixture("rp2.ideal");
    let rp2 = rp2.to_str().unwrap();
    let gf2 = run(&["check-lattice-linear", rp2, "--field", "gf:2"]);
    assert_eq!(gf2.status.code(), Some(1));
    assert!(stdout(&gf2).contains("total:  1 10 15  7  1"));
    assert!(stdout(&gf2).contains("witness"));
    let q = run(&["check-lattice-linear", rp2, "--field", "q", "--variant", "both"]);
    assert_eq!(q.status.code(), Some(0));
    assert!(stdout(&q).contains("total:  1 10 15  6"));
    assert_eq!(run(&["check-lattice-linear", rp2, "--field", "gf:3"]).status.code(), Some(0));
}

#[test]
fn koszul_betti_numbers() {
    let o = run(&["betti", fixture("koszul3.ideal").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("total: 1 3 3 1"));
}

#[test]
fn json_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = fixture("staircase.ideal");
    let mut reports = Vec::new();
    for (k, mode) in [("a", None), ("b", Some("--sequential"))] {
        let path = dir.path().join(format!("{k}.json"));
        let mut args = vec!["resolve", ideal.to_str().unwrap(), "--json", path.to_str().unwrap()];
        args.extend(mode);
        assert!(run(&args).status.success());
        reports.push(fs::read_to_string(&path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let r = posetres::io::ReportJson::from_json(&reports[0]).unwrap();
    assert_eq!(r.flags.is_resolution, Some(true));
    assert_eq!(r.betti.unwrap().totals, vec![1, 3, 2]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ideal");
    fs::write(&bad, "vars: x y\nx*z\n").unwrap();
    let o = run(&["resolve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("undeclared variable"));

    let big = dir.path().join("big.ideal");
    fs::write(&big, "vars: x y\nx^4\nx^3*y\nx^2*y^2\nx*y^3\ny^4\n").unwrap();
    assert_eq!(run(&["resolve", big.to_str().unwrap(), "--max-gens", "3"]).status.code(), Some(4));

    assert_eq!(run(&["resolve"]).status.code(), Some(2));
    assert_eq!(run(&["betti", "x", "--field", "gf:4"]).status.code(), Some(2));
    assert_eq!(run(&["scarf", fixture("triangle.ideal").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn lattice_dot_and_rank_completion() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h.dot");
    let o = run(&["lattice", fixture("shared_x.ideal").to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph hasse"));
    assert_eq!(text.matches("->").count(), 4);

    let poset = dir.path().join("p.poset");
    fs::write(&poset, "elements: 0 a b c\n0 < a\na < b\n0 < c\nc < b\n0 < b\n").unwrap();
    let out = dir.path().join("q.poset");
    let o = run(&["rank-complete", poset.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let q = posetres::io::parse_poset(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(q.is_ranked());
}

#[test]
fn variants_and_selftest() {
    assert!(run(&["compare-variants", fixture("rp2.ideal").to_str().unwrap()]).status.success());
    assert!(run(&["taylor", fixture("path4.ideal").to_str().unwrap()]).status.success());
    let o = run(&["selftest", "--seed", "11", "--rounds", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failures"));
}
