use std::path::Path;
use std::process::{Command, Output};

fn gosper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gosper")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn seq_writes_the_turn_sequence() {
    let o = gosper(&["seq", "--word", "+-+"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("word=+-+"));
    let turns: Vec<i8> = lines.next().unwrap().split(' ').map(|t| t.parse().unwrap()).collect();
    assert_eq!(turns.len(), 342);
    assert!(turns.iter().all(|t| (-2..=2).contains(t)));
}

#[test]
fn seq_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.txt");
    assert!(gosper(&["seq", "--word", "-+", "--out", path(&f)]).status.success());
    assert_eq!(std::fs::read_to_string(&f).unwrap(), stdout(&gosper(&["seq", "--word", "-+"])));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(gosper(&["seq", "--word", "+x"]).status.code(), Some(2));
    assert_eq!(gosper(&["bogus"]).status.code(), Some(2));
    assert_eq!(gosper(&["render", "--in", "/nonexistent/w.json"]).status.code(), Some(2));
    assert_eq!(gosper(&["render", "--target", "tiling"]).status.code(), Some(2));
    assert_eq!(gosper(&["render", "--target", "tiling", "--word", "+", "--scale", "0"]).status.code(), Some(2));
}

#[test]
fn malformed_window_file_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.json");
    std::fs::write(&f, "{\"depth\": 1}").unwrap();
    assert_eq!(gosper(&["render", "--in", path(&f)]).status.code(), Some(2));
}

#[test]
fn passing_and_failing_checks() {
    let o = gosper(&["verify", "prop3", "--word", "+", "--word", "--"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("prop3 word=+ 6 oriented / 3 nonoriented"));
    assert!(text.contains("prop3 word=-- 6 oriented / 3 nonoriented"));
    assert!(text.ends_with("overall=ok\n"));

    let o = gosper(&["verify", "census", "--word", "++"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("overall=FAIL\n"));
}

#[test]
fn runtime_failures_exit_with_one() {
    let o = Command::new(env!("CARGO_BIN_EXE_gosper"))
        .args(["enum", "--word", "++", "--oriented"])
        .env("GOSPER_NODE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    // a side anchor whose hexagons are not adjacent
    assert_eq!(gosper(&["plane", "--anchor", "side", "--at", "0,0", "--to", "5,5"]).status.code(), Some(1));
}

#[test]
fn enum_and_cover_agree() {
    let e = stdout(&gosper(&["enum", "--word", "+-", "--oriented"]));
    let c = stdout(&gosper(&["cover", "--word", "+-", "--oriented"]));
    assert!(e.starts_with("coverings=6 oriented=true\n"));
    let sorted = |s: &str| {
        let mut v: Vec<String> = s.lines().skip(1).map(String::from).collect();
        v.sort();
        v
    };
    assert_eq!(sorted(&e), sorted(&c));
}

#[test]
fn plane_window_renders_the_same_twice() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let o = gosper(&["plane", "--anchor", "vertex", "--word", "+-+", "--oriented", "--out", path(&w)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("anchor=vertex"));
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    assert!(gosper(&["render", "--in", path(&w), "--out", path(&a)]).status.success());
    assert!(gosper(&["render", "--in", path(&w), "--out", path(&b)]).status.success());
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<polygon").count(), 21);
    // three regions, three fills
    let fills: std::collections::BTreeSet<&str> =
        svg.lines().filter(|l| l.starts_with("<polygon")).filter_map(|l| l.split("fill=\"").nth(1)).collect();
    assert_eq!(fills.len(), 3);
}

#[test]
fn cover_index_writes_a_window() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    assert!(gosper(&["cover", "--word", "++", "--oriented", "--index", "2", "--out", path(&w)]).status.success());
    let text = std::fs::read_to_string(&w).unwrap();
    assert!(text.contains("\"lambda\":\"++\""));
    let census = gosper(&["render", "--target", "census", "--in", path(&w)]);
    assert!(census.status.success());
    assert_eq!(gosper(&["cover", "--word", "++", "--index", "9", "--out", path(&w)]).status.code(), Some(2));
}

#[test]
fn render_targets() {
    let t = stdout(&gosper(&["render", "--target", "tiling", "--word", "++", "--outline", "1"]));
    assert_eq!(t.matches("<polygon").count(), 49);
    let c = stdout(&gosper(&["render", "--target", "covering", "--word", "+", "--scale", "10/3", "--no-orientation"]));
    assert_eq!(c.matches("<polyline").count(), 1);
    assert!(!c.contains("marker-end"));
}
