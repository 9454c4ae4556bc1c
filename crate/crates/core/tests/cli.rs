use std::path::Path;
use std::process::{Command, Output};

use simplex_cover::cover::build_cover;
use simplex_cover::record::{read_cover_jsonl, CoverRecord};
use simplex_cover::svg::UNIT_PX;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplex-cover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_command() {
    let o = cli(&["count", "--d", "2", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("6"));
    let o = cli(&["count", "--d", "3", "--n", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("20"));
    assert_eq!(code(&cli(&["count", "--d", "1", "--n", "2"])), 2);
    assert_eq!(code(&cli(&["count", "--d", "2", "--n", "0"])), 2);
    assert_eq!(code(&cli(&["count", "--d", "2"])), 2);
    assert_eq!(code(&cli(&["frobnicate"])), 2);
}

#[test]
fn cover_command_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let p = path.to_str().unwrap();

    assert_eq!(code(&cli(&["cover", "--d", "2", "--n", "1", "--out", p])), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    let first: CoverRecord = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first.kind, "base_a");
    assert_eq!(first.anchor, vec!["0", "0"]);

    assert_eq!(code(&cli(&["cover", "--d", "2", "--n", "2", "--out", p])), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.matches(r#""kind":"top""#).count(), 1);

    let back = read_cover_jsonl(text.as_bytes()).unwrap();
    assert_eq!(back.as_slice(), build_cover(2, 2).unwrap().elements());
}

#[test]
fn cover_command_reports_io_failure() {
    let o = cli(&["cover", "--d", "2", "--n", "1", "--out", "/nonexistent/dir/c.jsonl"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn witness_command() {
    let o = cli(&["witness", "--d", "2", "--n", "2", "--point", "9/8,9/8"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["route"], "base_b");
    assert_eq!(v["element"]["anchor"], serde_json::json!(["1", "1/4"]));
    assert_eq!(v["element"]["pi"], serde_json::json!([2, 1]));
    assert_eq!(v["w"], serde_json::json!(["3/8", "9/8"]));

    let o = cli(&["witness", "--d", "2", "--n", "2", "--point", "9/4,9/4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["route"], "top");

    assert_eq!(code(&cli(&["witness", "--d", "2", "--n", "2", "--point", "3,0"])), 1);
    assert_eq!(code(&cli(&["witness", "--d", "2", "--n", "2", "--point", "1/2"])), 2);
    assert_eq!(code(&cli(&["witness", "--d", "2", "--n", "2", "--point", "1/0,0"])), 2);
}

#[test]
fn verify_command() {
    let o = cli(&["verify", "--d", "2", "--n", "2", "--mode", "lattice", "--q", "4"]);
    assert_eq!(code(&o), 0);
    let raw = stdout(&o);
    let pos: Vec<usize> = ["\"total\"", "\"covered\"", "\"routes\"", "\"failures\"", "\"elapsed_ms\""]
        .iter()
        .map(|k| raw.find(k).expect("field present"))
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "field order in {raw}");
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(v["total"], v["covered"]);
    assert_eq!(v["routes"]["fallback"], 0);
    let routes = &v["routes"];
    let sum: u64 = ["top", "base_a", "base_b"]
        .iter()
        .map(|k| routes[*k].as_u64().unwrap())
        .sum();
    assert_eq!(serde_json::json!(sum), v["total"]);

    let o = cli(&["verify", "--d", "4", "--n", "3", "--mode", "random", "--samples", "20000", "--seed", "1"]);
    assert_eq!(code(&o), 0);

    assert_eq!(code(&cli(&["verify", "--d", "2", "--n", "2", "--eps", "1/2"])), 2);
    assert_eq!(code(&cli(&["verify", "--d", "2", "--n", "2", "--eps", "-1/8"])), 2);
    assert_eq!(code(&cli(&["verify", "--d", "2", "--n", "2", "--mode", "sideways"])), 2);
    let o = cli(&["verify", "--d", "2", "--n", "1", "--eps", "0", "--mode", "boundary"]);
    assert_eq!(code(&o), 0);
}

fn polygons(svg: &str, class: &str) -> Vec<Vec<(f64, f64)>> {
    let tag = format!(r#"class="{class}"#);
    svg.lines()
        .filter(|l| l.starts_with("<polygon") && l.contains(&tag))
        .map(|l| {
            let start = l.find(r#"points=""#).unwrap() + 8;
            let end = start + l[start..].find('"').unwrap();
            l[start..end]
                .split(' ')
                .map(|pair| {
                    let (x, y) = pair.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect()
        })
        .collect()
}

fn render(n: &str, extra: &[&str], dir: &Path) -> String {
    let path = dir.join(format!("r{n}{}.svg", extra.len()));
    let mut args = vec!["render", "--n", n, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    assert_eq!(code(&cli(&args)), 0);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn render_command() {
    let dir = tempfile::tempdir().unwrap();
    let svg = render("2", &[], dir.path());
    assert_eq!(polygons(&svg, "cover ").len(), 6);
    assert_eq!(polygons(&svg, "target").len(), 1);
    assert!(svg.contains("<!-- d=2 n=2 delta=1/4 equilateral=false -->"));

    let svg = render("1", &[], dir.path());
    assert_eq!(polygons(&svg, "cover ").len(), 3);

    let svg = render("2", &["--equilateral", "--labels"], dir.path());
    let polys = polygons(&svg, "cover ");
    assert_eq!(polys.len(), 6);
    for poly in polys {
        for i in 0..3 {
            let (a, b) = (poly[i], poly[(i + 1) % 3]);
            let side = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() / UNIT_PX;
            assert!((side - 1.0).abs() < 1e-9, "side {side}");
        }
    }
    assert_eq!(svg.matches("<text").count(), 6);

    assert_eq!(code(&cli(&["render", "--n", "0", "--out", "/tmp/x.svg"])), 2);
    assert_eq!(code(&cli(&["render", "--n", "2", "--out", "/nonexistent/x.svg"])), 1);
}
