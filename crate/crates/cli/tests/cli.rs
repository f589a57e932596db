use std::fs;
use std::io::BufReader;
use std::path::Path;
use std::process::{Command, Output};

use motif_swarm_cli::{exit, parse_trace, read_motifs, stop_when_within_reference, StopMode};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_motif-swarm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_periodic(dir: &Path, n: usize) -> std::path::PathBuf {
    let p = dir.join("periodic.csv");
    let body: String = (0..n).map(|i| format!("{}\n", (i % 10) as f64)).collect();
    fs::write(&p, format!("value\n{body}")).unwrap();
    p
}

#[test]
fn random_walk_run_writes_monotone_trace_and_five_motifs() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = dir.path().join("motifs.csv");
    let o = run(&[
        "run", "--random-walk", "10000", "--wmin", "50", "--wmax", "100", "--k", "5",
        "--iterations", "5000", "--seed", "3", "--trace", path(&trace), "--out", path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let text = fs::read_to_string(&trace).unwrap();
    assert!(text.starts_with("iteration,elapsed_ms,evals,a_1,w_a_1,b_1,w_b_1,d_1,"));
    let records = parse_trace(text.as_bytes()).unwrap();
    assert_eq!(records.len(), 50);
    assert_eq!(records.last().unwrap().iteration, 5000);
    for pair in records.windows(2) {
        assert!(pair[0].iteration < pair[1].iteration);
        assert!(pair[1].dissimilarities[0] <= pair[0].dissimilarities[0]);
        assert!(pair[0].evaluations <= pair[1].evaluations);
    }

    let set = read_motifs(&out).unwrap();
    assert_eq!(set.len(), 5);
    for (i, m) in set.motifs.iter().enumerate() {
        for other in &set.motifs[i + 1..] {
            assert!(m.d <= other.d);
            assert!(!motif_swarm::overlaps(&m.coords, &other.coords, 0.0));
        }
    }
}

#[test]
fn inverted_lengths_are_a_usage_error_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = dir.path().join("motifs.csv");
    let o = run(&[
        "run", "--random-walk", "1000", "--wmin", "60", "--wmax", "50", "--iterations", "10",
        "--trace", path(&trace), "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(exit::USAGE));
    assert!(!trace.exists() && !out.exists());
}

#[test]
fn missing_budget_is_a_usage_error() {
    let o = run(&["run", "--random-walk", "1000", "--wmin", "10", "--wmax", "20"]);
    assert_eq!(o.status.code(), Some(exit::USAGE));
}

#[test]
fn infeasible_task_has_its_own_exit_code() {
    let o = run(&["run", "--random-walk", "100", "--wmin", "60", "--wmax", "60", "--iterations", "5"]);
    assert_eq!(o.status.code(), Some(exit::INFEASIBLE));
}

#[test]
fn oracle_on_periodic_series_finds_exact_repeats() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("periodic.csv");
    let body: String = (0..200).map(|i| format!("{}\n", (i % 4) as f64)).collect();
    fs::write(&input, body).unwrap();
    let out = dir.path().join("mstar.csv");
    let o = run(&[
        "oracle", "--input", path(&input), "--wmin", "10", "--wmax", "10", "--k", "3", "--out", path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let set = read_motifs(&out).unwrap();
    assert_eq!(set.len(), 3);
    assert_eq!(set.motifs[0].d, 0.0);

    let meta: serde_json::Value =
        serde_json::from_reader(BufReader::new(fs::File::open(dir.path().join("mstar.csv.meta.json")).unwrap())).unwrap();
    assert!(meta["evaluations"].as_u64().unwrap() > 0);
    assert_eq!(meta["n"], 200);
}

#[test]
fn oracle_over_budget_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mstar.csv");
    let o = run(&[
        "oracle", "--random-walk", "2000", "--wmin", "10", "--wmax", "20", "--budget", "1000", "--out", path(&out),
    ]);
    assert_eq!(o.status.code(), Some(exit::BUDGET));
    assert!(!out.exists());
    assert!(!dir.path().join("mstar.csv.meta.json").exists());
}

#[test]
fn oracle_output_gates_a_run_and_matches_offline_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_periodic(dir.path(), 300);
    let mstar = dir.path().join("mstar.csv");
    let o = run(&[
        "oracle", "--input", path(&input), "--wmin", "12", "--wmax", "16", "--k", "3", "--out", path(&mstar),
    ]);
    assert!(o.status.success());

    let trace = dir.path().join("trace.csv");
    let out = dir.path().join("motifs.csv");
    let o = run(&[
        "run", "--input", path(&input), "--wmin", "12", "--wmax", "16", "--k", "3",
        "--iterations", "20000", "--trace-interval", "10", "--reference", path(&mstar),
        "--trace", path(&trace), "--out", path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let reference = read_motifs(&mstar).unwrap().dissimilarities();
    let records = parse_trace(fs::read_to_string(&trace).unwrap().as_bytes()).unwrap();
    let last = records.last().unwrap();
    assert!(last.iteration <= 20000);
    let stopped_at = records
        .iter()
        .position(|r| stop_when_within_reference(&r.dissimilarities, 3, &reference, 0.95, StopMode::Band).unwrap());
    // The run stops at the first snapshot satisfying the criterion.
    assert_eq!(stopped_at, Some(records.len() - 1));
}

#[test]
fn sample_report_defaults_to_n_draws_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = run(&[
            "sample", "--random-walk", "800", "--walk-seed", "2", "--wmin", "20", "--wmax", "30",
            "--seed", "9", "--out", path(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("count,min,p5,p50,p95,max"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[0], 800.0);
    assert!(row[1..].windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn landscape_slice_has_requested_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("slice.csv");
    let o = run(&[
        "landscape", "--random-walk", "400", "--fix-lengths", "10,10",
        "--rows", "1..20", "--cols", "100..130", "--out", path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 21);
    assert!(lines.iter().all(|l| l.split(',').count() == 32));
}

#[test]
fn csv_column_and_missing_values() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("two.csv");
    let mut body = String::from("t,value\n");
    for i in 0..300 {
        let v = if i == 17 { String::from("NA") } else { format!("{}", ((i * 7) % 13) as f64) };
        body.push_str(&format!("{i},{v}\n"));
    }
    fs::write(&input, body).unwrap();
    let strict = run(&["sample", "--input", path(&input), "--column", "1", "--wmin", "10", "--wmax", "12"]);
    assert_eq!(strict.status.code(), Some(exit::FAILURE));
    let ok = run(&[
        "sample", "--input", path(&input), "--column", "1", "--missing", "interpolate", "--wmin", "10", "--wmax", "12",
    ]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("count,min,p5,p50,p95,max\n300,"));
}
