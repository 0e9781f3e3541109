use std::fs;
use std::process::{Command, Output};

use qga_maxcut::graph::{brute_force_maxcut, cut_value, generate_erdos_renyi, parse_edge_list, CutAssignment};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qga-bench")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a results CSV, split into fields.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn run_brute_on_k5() {
    let o = cli(&["run", "--method", "brute", "--graph", "complete:5"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][3], "6");
    assert_eq!(rows[0][5], "1.0000");
}

#[test]
fn run_qga_matches_brute_force() {
    let o = cli(&["run", "--method", "qga", "--graph", "er:6:0.5:3", "--seed", "9"]);
    assert!(o.status.success());
    let value: u64 = csv_rows(&stdout(&o))[0][3].parse().unwrap();
    let g = generate_erdos_renyi(6, 0.5, 3).unwrap();
    assert_eq!(value, brute_force_maxcut(&g).unwrap().1);
}

#[test]
fn budget_formula() {
    let o = cli(&["budget", "--vertices", "8", "--fitness-bits", "5", "--iters", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("= 29"));
    let o = cli(&["budget", "--bound", "5"]);
    assert_eq!(stdout(&o).trim(), "g(5) = 92");
}

#[test]
fn gen_writes_a_readable_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = cli(&["gen", "--graph", "er:10:0.4:2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let g = parse_edge_list(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g, generate_erdos_renyi(10, 0.4, 2).unwrap());

    let spec = format!("file:{}", path.display());
    let o = cli(&["run", "--method", "brute", "--graph", &spec]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(csv_rows(&stdout(&o))[0][0], spec);
}

#[test]
fn bench_output_is_deterministic_and_recomputable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = cli(&[
            "bench", "--suite", "er", "--graph", "er:14:0.5:1", "--graph", "er:18:0.3:2", "--repeats", "3", "--seed",
            "7", "--max-part-size", "6", "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("| median/gw |"));
        let without_wall: Vec<String> = csv_rows(&fs::read_to_string(&out).unwrap())
            .into_iter()
            .map(|mut f| {
                f[8].clear();
                f.join(",")
            })
            .collect();
        (without_wall, out)
    };
    let (a, out) = run("a.csv");
    let (b, _) = run("b.csv");
    assert_eq!(a, b);
    assert_eq!(a.len(), 2 * 2 * 3);

    let sidecar = fs::read_to_string(out.with_extension("assignments.csv")).unwrap();
    for line in sidecar.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let (n, p, s) = if f[0] == "er:14:0.5:1" { (14, 0.5, 1) } else { (18, 0.3, 2) };
        let g = generate_erdos_renyi(n, p, s).unwrap();
        let a: CutAssignment = f[4].parse().unwrap();
        assert_eq!(cut_value(&g, &a).unwrap().to_string(), f[3]);
    }
}

#[test]
fn bench_reads_toml_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.toml");
    fs::write(&cfg, "suite = \"complete\"\ncomplete = [4, 10]\nrepeats = 2\nseed = 3\n").unwrap();
    let o = cli(&["bench", "--config", cfg.to_str().unwrap(), "--format", "md"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("| complete:10 | 10 | 45 | 25 | 25 | 25 |"), "{text}");
    assert_eq!(text.matches("| complete:4 | dnc |").count(), 2);

    fs::write(&cfg, "suite = \"complete\"\nrepeatz = 2\n").unwrap();
    assert_eq!(cli(&["bench", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn markdown_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.md");
    let o = cli(&["run", "--method", "gw", "--graph", "complete:6", "--format", "md", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("| instance | method |"));
    assert!(text.contains("| complete:6 | gw | 0 | 9 | 9 |"));
}

#[test]
fn iteration_mode_and_polish_flags() {
    let o = cli(&["run", "--method", "qga", "--graph", "complete:5", "--iteration-mode", "paper"]);
    assert_eq!(csv_rows(&stdout(&o))[0][3], "6");
    let o = cli(&["run", "--method", "dnc", "--graph", "er:24:0.4:1", "--max-part-size", "6", "--polish"]);
    assert!(o.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
    assert_eq!(cli(&["--version"]).status.code(), Some(0));
    assert_eq!(cli(&[]).status.code(), Some(1));
    assert_eq!(cli(&["run", "--method", "sa", "--graph", "complete:3"]).status.code(), Some(1));
    assert_eq!(cli(&["run", "--method", "qga", "--graph", "complete"]).status.code(), Some(1));
    assert_eq!(cli(&["run", "--method", "qga", "--graph", "er:5:1.5"]).status.code(), Some(1));
    assert_eq!(cli(&["run", "--method", "qga", "--graph", "file:/nonexistent/g.txt"]).status.code(), Some(1));
    assert_eq!(cli(&["run", "--method", "dnc", "--graph", "complete:6", "--max-part-size", "1"]).status.code(), Some(1));
    assert_eq!(cli(&["budget", "--vertices", "3"]).status.code(), Some(1));

    let o = cli(&["run", "--method", "qga", "--graph", "complete:5", "--qubit-cap", "15"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("needs 17, limit is 15") && err.contains("short by 2"), "{err}");
    assert_eq!(cli(&["run", "--method", "brute", "--graph", "complete:30"]).status.code(), Some(2));
}
