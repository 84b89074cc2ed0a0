use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn jobs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs")
}

fn unicover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unicover")).args(args).output().expect("binary runs")
}

fn write_job(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("job.txt");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(dir: &tempfile::TempDir, job: &str, extra: &[&str]) -> serde_json::Value {
    let out = dir.path().join("report.json");
    let mut args = vec!["--job", job, "--quiet", "--report", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = unicover(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap()
}

#[test]
fn simples_table() {
    let o = unicover(&["--job", jobs().join("a5_simples.job").to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("module  dim  k  r"), "{text}");
    let rows: Vec<Vec<usize>> = text
        .lines()
        .filter_map(|l| {
            let v: Vec<usize> = l.split_whitespace().filter_map(|x| x.parse().ok()).collect();
            (v.len() == 4).then_some(v)
        })
        .collect();
    let mut dr: Vec<(usize, usize)> = rows.iter().map(|v| (v[1], v[3])).collect();
    dr.sort();
    assert_eq!(dr, vec![(1, 1), (4, 2), (4, 4)]);
}

#[test]
fn cover_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let job = jobs().join("a5_cover.job");
    let job = job.to_str().unwrap();
    let a = report(&dir, job, &["--verify"]);
    let b = report(&dir, job, &["--verify"]);
    assert_eq!(a, b);
    assert_eq!(a["covers"][0]["order"], "480");
    assert_eq!(a["covers"][0]["structure"], "2^3.A5");
    assert!(a["verification"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn heineken_first_rounds() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(jobs().join("heineken.job")).unwrap().replace("rounds=8", "rounds=2");
    let job = write_job(&dir, &text);
    let r = report(&dir, &job, &[]);
    let rounds = r["rounds"].as_array().unwrap();
    assert_eq!(rounds[0]["order"], "1920");
    assert_eq!(rounds[0]["structure"], "(2×2^4).A5");
    assert_eq!(rounds[1]["order"], "3840");
    assert_eq!(rounds[1]["structure"], "2.(2×2^4).A5");
}

#[test]
fn lift_task_reports_each_module() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(jobs().join("heineken.job"))
        .unwrap()
        .replace("task iterate p=2 rounds=8 maxdim=4", "task lift p=2");
    let job = write_job(&dir, &text);
    let r = report(&dir, &job, &[]);
    let orders: Vec<Option<&str>> = r["lifts"].as_array().unwrap().iter().map(|l| l["order"].as_str()).collect();
    assert_eq!(orders, vec![Some("120"), Some("960"), None]);
    assert_eq!(r["rounds"][0]["order"], "1920");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(&dir, "group C2\n  gens a\n  perm a (1,2\ntask simples p=2\n");
    let o = unicover(&["--job", &job]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 10"));

    // images that do not satisfy the relators
    let bad = "group G\n  gens a\n  rel a^3\ngroup C2\n  gens x\n  rel x^2\n  perm x (1,2)\nmap f G -> C2\n  a -> x\ntask lift p=2\n";
    let job = write_job(&dir, bad);
    assert_eq!(unicover(&["--job", &job]).status.code(), Some(3));

    let o = unicover(&["--job", dir.path().join("missing.job").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
