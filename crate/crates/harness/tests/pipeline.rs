use std::path::{Path, PathBuf};
use std::process::Command;

use polybound::csv_io::{read_report, read_report_file, write_report};
use polybound::experiment::BoundCell;
use polybound::{exit, run_experiment, verify, BoundId, ExperimentConfig, HarnessError, Verdict};

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> ExperimentConfig {
    ExperimentConfig::load(&configs_dir().join(name)).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polybound"))
}

#[test]
fn membrane_square_has_no_violations() {
    let cfg = load("membrane_square.toml");
    let (report, code) = verify(&cfg).unwrap();
    assert_eq!(code, exit::OK);
    assert_eq!(report.rows.len(), 100);
    assert!(report.rows.windows(2).all(|w| w[0].k < w[1].k));
    let col = report.bounds.iter().position(|b| *b == BoundId::TheoremUpper).unwrap();
    assert!(report.rows.iter().any(|r| r.cells[col].verdict == Verdict::Ok));
}

#[test]
fn clamped_interval_has_no_violations() {
    let (report, code) = verify(&load("clamped_interval.toml")).unwrap();
    assert_eq!(code, exit::OK);
    // ppw and yang skip k = 1 only
    let ppw = report.bounds.iter().position(|b| *b == BoundId::Ppw).unwrap();
    assert_eq!(report.rows[0].cells[ppw].verdict, Verdict::Skip);
    assert!(report.rows[1..].iter().all(|r| r.cells[ppw].verdict == Verdict::Ok));
}

#[test]
fn degenerate_sigma0_gives_its_own_exit_code() {
    let (report, code) = verify(&load("degenerate_fixed.toml")).unwrap();
    assert_eq!(code, exit::NO_USABLE_SIGMA0);
    assert!(report.rows.iter().all(|r| r.cells[0].degenerate && r.theta == Some(1.0)));
    assert!(report.violations().is_empty());
}

#[test]
fn corrupted_spectrum_is_caught() {
    let cfg = load("corrupted_membrane.toml");
    let (report, code) = verify(&cfg).unwrap();
    assert_eq!(code, exit::VIOLATIONS);
    let v = report.violations();
    assert!(!v.is_empty());
    assert!(v.iter().all(|x| x.bound == BoundId::LiYau));

    let out = bin().args(["verify", "--config"]).arg(configs_dir().join("corrupted_membrane.toml")).output().unwrap();
    assert_eq!(out.status.code(), Some(exit::VIOLATIONS));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("violation k=")).count(), v.len());
}

#[test]
fn exit_code_contract() {
    for name in [
        "membrane_square.toml",
        "clamped_interval.toml",
        "corrupted_membrane.toml",
        "plate_square.toml",
    ] {
        let (report, code) = verify(&load(name)).unwrap();
        assert_eq!(code == exit::OK, report.violations().is_empty(), "{name}");
    }
}

#[test]
fn plate_square_with_monte_carlo_collar() {
    let (report, code) = verify(&load("plate_square.toml")).unwrap();
    assert_eq!(code, exit::OK);
    for r in &report.rows {
        if let (Some(t), Some(mc)) = (r.theta, r.theta_mc) {
            assert!((t - mc).abs() < 0.02, "k={}: {t} vs {mc}", r.k);
        }
    }
    assert!(report.has_theta_mc());
}

#[test]
fn csv_is_deterministic_and_round_trips() {
    let mut cfg = load("plate_square.toml");
    let render = |cfg: &ExperimentConfig| {
        let mut buf = Vec::new();
        write_report(&run_experiment(cfg).unwrap(), &mut buf).unwrap();
        buf
    };
    let a = render(&cfg);
    let b = render(&cfg);
    assert_eq!(a, b);
    assert!(!a.contains(&b'\r'));

    let report = run_experiment(&cfg).unwrap();
    let parsed = read_report(a.as_slice()).unwrap();
    assert!(parsed.same_as(&report));

    cfg.seed += 1;
    assert_ne!(render(&cfg), a, "seed feeds the Monte Carlo column");
}

#[test]
fn report_subcommand_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs_dir().join("membrane_square.toml");
    let mut bytes = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let run = bin()
            .args(["report", "--seed", "9", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        assert!(run.status.success());
        bytes.push(std::fs::read(out.join("membrane_square.csv")).unwrap());
        let script = std::fs::read_to_string(out.join("membrane_square.gp")).unwrap();
        assert!(script.contains("'membrane_square.csv'"));
    }
    assert_eq!(bytes[0], bytes[1]);
    let parsed = read_report_file(&dir.path().join("a/membrane_square.csv")).unwrap();
    assert_eq!(parsed.rows.len(), 100);
}

#[test]
fn proof_form_shifts_the_index() {
    let mut cfg = load("membrane_square.toml");
    cfg.proof_form = true;
    let (report, code) = verify(&cfg).unwrap();
    assert_eq!(code, exit::OK);
    let col = report.bounds.iter().position(|b| *b == BoundId::TheoremUpper).unwrap();
    // row 1 would need k = 0
    assert!(report.rows[0].cells[col].value.is_nan());
}

#[test]
fn error_classes_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // solver: interval Rayleigh-Ritz with a basis too small to converge
    let mut cfg = load("clamped_interval.toml");
    cfg.solver.method = "rayleigh-ritz".parse().unwrap();
    cfg.solver.basis = Some(22);
    let err = run_experiment(&cfg).unwrap_err();
    assert!(matches!(err, HarnessError::NotConverged { .. }), "{err}");
    assert_eq!(err.exit_code(), exit::SOLVER);

    // config
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "bounds = [\"nope\"]\n").unwrap();
    let out = bin().args(["verify", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(exit::CONFIG));

    // io: output directory is a regular file
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = bin()
        .args(["report", "--config"])
        .arg(configs_dir().join("clamped_interval.toml"))
        .arg("--out")
        .arg(blocker.join("sub"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(exit::IO));

    let out = bin().args(["verify", "--config"]).arg(dir.path().join("missing.toml")).output().unwrap();
    assert_eq!(out.status.code(), Some(exit::IO));

    // ball spectra are not available
    let ball = "bounds = []\n[problem]\nl = 1\ndomain = { shape = \"ball\", dim = 2, radius = 1.0 }\n[k_range]\nstart = 1\nend = 3\n";
    let cfg = ExperimentConfig::from_toml_str(ball).unwrap();
    assert_eq!(run_experiment(&cfg).unwrap_err().exit_code(), exit::CONFIG);
}

#[test]
fn empty_bound_set_plots_spectrum_only() {
    let mut cfg = load("clamped_interval.toml");
    cfg.bounds.clear();
    let report = run_experiment(&cfg).unwrap();
    let s = polybound::plot::plot_script(&report, "x.csv", false);
    assert_eq!(s.matches("using").count(), 2);
    assert!(report.rows.iter().all(|r| r.cells.is_empty()));
}

#[test]
fn nan_cells_survive_round_trip() {
    let report = polybound::BoundReport {
        bounds: vec![BoundId::Yang],
        rows: vec![polybound::experiment::ReportRow {
            k: 1,
            lambda_k: 1.0,
            running_avg: 1.0,
            sigma0: None,
            theta: None,
            theta_mc: None,
            cells: vec![BoundCell { value: f64::NAN, valid: false, degenerate: false, verdict: Verdict::Skip }],
        }],
    };
    let mut buf = Vec::new();
    write_report(&report, &mut buf).unwrap();
    assert!(read_report(buf.as_slice()).unwrap().same_as(&report));
}

#[test]
fn cli_table1_and_bounds() {
    let out = bin().arg("table1").output().unwrap();
    assert_eq!(out.status.code(), Some(exit::OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cells matching: 39/39"));

    let out = bin()
        .args(["bounds", "--shape", "box", "--sides", "1,1", "--l", "1", "--k", "16", "--sigma0", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("theorem_upper") && text.contains("theta = 0.750000"));

    let out = bin()
        .args(["spectrum", "--shape", "interval", "--length", "1", "--l", "2", "--count", "2"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("beam-roots"));
    assert!(text.lines().nth(1).unwrap().starts_with("1 5.0056"));
}
