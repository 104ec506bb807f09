use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use copspace::construct::counterexample_one;
use copspace::discrete::DiscreteGraph;
use copspace::format::parse_space;
use copspace::game::{read_trace, write_trace};
use copspace::metric::PointRef;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_examples() {
    assert!(ok(&["solve", "--gen", "petersen"]).contains("cop number: 3"));
    assert!(ok(&["solve", "--gen", "cycle:4"]).contains("cop number: 2"));
    assert!(ok(&["solve", "--gen", "path:5"]).contains("cop number: 1"));
    let out = ok(&["solve", "--gen", "petersen", "--k-max", "2"]);
    assert!(out.contains("cop number: > 2"));
}

#[test]
fn solve_from_an_edge_list() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "c5.txt");
    std::fs::write(&file, "# five-cycle\na b\nb c\nc d\nd e\ne a\n").unwrap();
    assert!(ok(&["solve", "--graph", s(&file)]).contains("cop number: 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["solve", "--gen", "grid:6x6", "--k", "3", "--budget", "1000"]).status.code(), Some(3));
    assert_eq!(run(&["solve", "--gen", "hexagon"]).status.code(), Some(2));
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn wedge_run_verifies_and_replays() {
    let dir = TempDir::new().unwrap();
    let space = path(&dir, "w.json");
    ok(&["build", "wedge", "--components", "path:5,cycle:8,petersen", "--out", s(&space)]);
    let traces: Vec<PathBuf> = (0..2).map(|i| path(&dir, &format!("t{i}.jsonl"))).collect();
    for t in &traces {
        ok(&[
            "simulate", "--space", s(&space), "--robber", "pretend", "--cops", "random", "--k", "2",
            "--steps", "500", "--seed", "9", "--out", s(t),
        ]);
    }
    assert_eq!(std::fs::read(&traces[0]).unwrap(), std::fs::read(&traces[1]).unwrap());
    let out = ok(&["verify", "--space", s(&space), "--trace", s(&traces[0]), "--floor", "0.0555555"]);
    assert!(out.contains("legality") && out.contains("pret") && out.contains("distance-floor"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn built_spaces_reload_with_identical_distances() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "w.json");
    ok(&["build", "wedge", "--components", "cycle:4,petersen", "--truncate", "2", "--out", s(&file)]);
    let loaded = parse_space(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let family: Vec<_> = [DiscreteGraph::cycle(4).unwrap(), DiscreteGraph::petersen()]
        .iter()
        .map(|g| (g.to_metric(1.0).unwrap(), None))
        .collect();
    let direct = counterexample_one(&family, 2).unwrap();
    assert_eq!(loaded.graph.labels(), direct.graph.labels());
    for u in direct.graph.vertices() {
        for v in direct.graph.vertices() {
            assert_eq!(
                loaded.graph.vertex_distance(u, v).to_bits(),
                direct.graph.vertex_distance(u, v).to_bits()
            );
        }
    }
}

#[test]
fn lifted_cops_from_a_solved_table() {
    let dir = TempDir::new().unwrap();
    let space = path(&dir, "p.json");
    let table = path(&dir, "t.json");
    let trace = path(&dir, "l.jsonl");
    ok(&["build", "wedge", "--components", "petersen", "--out", s(&space)]);
    ok(&["solve", "--gen", "petersen", "--k", "2", "--out", s(&table)]);
    ok(&[
        "simulate", "--space", s(&space), "--cops", "lifted", "--table", s(&table), "--k", "2",
        "--steps", "300", "--out", s(&trace),
    ]);
    let out = ok(&["verify", "--space", s(&space), "--trace", s(&trace), "--floor", "0.0333333"]);
    assert!(!out.contains("FAIL"), "{out}");
}

#[test]
fn shadow_run_passes_and_a_teleported_shadow_fails() {
    let dir = TempDir::new().unwrap();
    let space = path(&dir, "hat.json");
    let trace = path(&dir, "h.jsonl");
    let out = ok(&[
        "build", "hat", "--base", "petersen", "--subspace", "0,1,2,3,4", "--levels", "8", "--out", s(&space),
    ]);
    assert!(out.contains("height 4.000000 (required 4.000000)"), "{out}");
    ok(&[
        "simulate", "--space", s(&space), "--robber", "shadow", "--cops", "random", "--k", "2",
        "--steps", "200", "--seed", "4", "--out", s(&trace),
    ]);
    let out = ok(&["verify", "--space", s(&space), "--trace", s(&trace)]);
    assert!(out.contains("sce") && out.contains("eps3") && !out.contains("FAIL"), "{out}");

    let mut t = read_trace(std::fs::read(&trace).unwrap().as_slice()).unwrap();
    let far = PointRef::Vertex(copspace::metric::VertexId(9));
    t.steps[100].shadows.as_mut().unwrap()[0] = far;
    let bad = path(&dir, "bad.jsonl");
    let mut buf = Vec::new();
    write_trace(&t, &mut buf).unwrap();
    std::fs::write(&bad, buf).unwrap();
    let o = run(&["verify", "--space", s(&space), "--trace", s(&bad), "--checks", "legality"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("shadow 0"), "{}", stdout(&o));
}

#[test]
fn metric_and_chart_checks_on_a_space() {
    let dir = TempDir::new().unwrap();
    let space = path(&dir, "cyl.json");
    ok(&["build", "cylinder", "--base", "cycle:4", "--h", "2", "--levels", "8", "--out", s(&space)]);
    let out = ok(&["verify", "--space", s(&space), "--checks", "metric", "--samples", "300"]);
    assert!(out.contains("metric") && out.contains("PASS"));
    let top = path(&dir, "top.json");
    ok(&["build", "top", "--base", "cycle:4", "--h", "2", "--levels", "8", "--out", s(&top)]);
    assert!(ok(&["verify", "--space", s(&top)]).contains("metric"));
}

#[test]
fn schedule_is_rejected_for_the_pretend_robber() {
    let dir = TempDir::new().unwrap();
    let space = path(&dir, "w.json");
    ok(&["build", "wedge", "--components", "petersen", "--out", s(&space)]);
    let o = run(&["simulate", "--space", s(&space), "--k", "2", "--schedule", "const:0.5"]);
    assert_eq!(o.status.code(), Some(2));
}
