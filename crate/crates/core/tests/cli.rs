use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use grasshopper::io::read_instance;
use grasshopper::Instance;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grasshopper"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const SMALL: &str = r#"{ "jumps": [1,2,4], "forbidden": [1,3], "mode": "classic" }"#;

#[test]
fn solve_prints_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "a.json", SMALL);
    let out = dir.path().join("out.json");
    let o = run(&["solve", file.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("solve_small.txt"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["outcome"]["witness"], serde_json::json!([2, 1, 0]));
    assert_eq!(report["outcome"]["strategy"], "hill_climb");
}

#[test]
fn solve_accepts_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "a.txt", "jumps: 1 2 4\nforbidden: 1 3\nmode: classic\n");
    assert_eq!(run(&["solve", file.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn solve_rejections_name_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"jumps":[1,1,4],"forbidden":[2,3]}"#, "ha_inj"),
        (r#"{"jumps":[1,2,4],"forbidden":[1,7]}"#, "hS"),
        (r#"{"jumps":[0,2]}"#, "ha_pos"),
        (r#"{"jumps":[1,2,4],"forbidden":[1],"mode":"classic"}"#, "hM_card"),
    ];
    for (i, (text, name)) in cases.iter().enumerate() {
        let file = write(dir.path(), &format!("bad{i}.json"), text);
        let o = run(&["solve", file.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{text}");
        assert!(stderr(&o).contains(name), "{}", stderr(&o));
    }
    let o = run(&["solve", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_unsolved_exits_2() {
    // n = 3 above an exhaustive bound of 2, with every climb stuck: no restarts
    // and a zero budget from the unsafe descending seed (4,2,1 lands on 4)
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "u.json", r#"{"jumps":[1,2,4],"forbidden":[4,6],"mode":"classic"}"#);
    let o = run(&[
        "solve",
        file.to_str().unwrap(),
        "--exhaustive-bound",
        "2",
        "--restarts",
        "0",
        "--budget",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unsolved"));
}

#[test]
fn check_lemmas_on_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "a.json", SMALL);
    let o = run(&["check-lemmas", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("lemmas_small.txt"));

    let one = write(dir.path(), "one.json", r#"{"jumps":[5],"mode":"classic"}"#);
    let o = run(&["check-lemmas", one.to_str().unwrap()]);
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("maximizer_swap_in_M")).unwrap();
    assert!(row.ends_with("vacuous"), "{row}");
}

#[test]
fn check_lemmas_random_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = run(&["check-lemmas", "--random", "1000", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn census_small_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, csv) = (dir.path().join("a.json"), dir.path().join("b.json"), dir.path().join("h.csv"));
    let o = run(&["census", "--n-max", "3", "--v-offset", "3", "--out", a.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("census_n3.txt"));
    let o = run(&["census", "--n-max", "3", "--v-offset", "3", "--jobs", "3", "--out", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read_to_string(&csv).unwrap(), golden("census_n3_histogram.csv"));

    let o = run(&["census", "--n-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("counterexamples       0"));
}

#[test]
fn census_budget_exit_3() {
    let o = run(&["census", "--n-max", "4", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn census_jobs_from_env() {
    let o = bin().args(["census", "--n-max", "2"]).env("GRASSHOPPER_JOBS", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn closure_modes() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "a.json", SMALL);
    let f = file.to_str().unwrap();
    let out = dir.path().join("c.json");

    let o = run(&["closure", f, "--strict", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v[0]["verdict"]["forced_count"], 0);

    let o = run(&["closure", f, "--exploratory", "--start", "0,1,2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v[0]["forced_values"], serde_json::json!([1, 3]));

    let o = run(&["closure", f, "--strict", "--start", "0,1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("certificate"));

    let one = write(dir.path(), "one.json", r#"{"jumps":[5]}"#);
    let o = run(&["closure", one.to_str().unwrap(), "--exploratory"]);
    assert!(stdout(&o).contains("visited        1"));
}

#[test]
fn gen_writes_valid_deterministic_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let o = run(&["gen", "--n", "3", "--max-jump", "6", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(Instance::validate(&read_instance(&a).unwrap()).is_ok());

    let o = run(&["gen", "--n", "3", "--max-jump", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("infeasible"));

    let many = dir.path().join("many");
    let o = run(&["gen", "--n", "4", "--max-jump", "9", "--mode", "classic", "--policy", "adversarial",
        "--count", "5", "--format", "text", "--out", many.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<_> = fs::read_dir(&many).unwrap().collect();
    assert_eq!(files.len(), 5);
    for f in files {
        assert!(Instance::validate(&read_instance(&f.unwrap().path()).unwrap()).is_ok());
    }
}
