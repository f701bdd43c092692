use std::fs;
use std::path::Path;
use std::process::Command;

const TINY: &str = "domain = (-0.5, 0.5)
s = 0.8
n_x = 9
T = 1
n_t = 8
u_d = profile_t2:10
u_b = profile_decay4:0.1
gamma_schedule = pow4:5
seed = 3
";

fn fracopt(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fracopt")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.conf");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn assemble_writes_both_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), TINY);
    let out = dir.path().join("out");
    let (code, _, _) = fracopt(&["assemble", &cfg, "--output-dir", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let a = fs::read_to_string(out.join("stiffness.csv")).unwrap();
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("# stiffness n=9 s=0.8 a=-0.5 b=0.5"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.split(',').count() == 9));
    let first: f64 = rows[0].split(',').next().unwrap().parse().unwrap();
    assert!(first > 0.0);
    assert!(fs::read_to_string(out.join("mass.csv")).unwrap().starts_with("# mass n=9"));
}

#[test]
fn zero_data_state_dump_is_all_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &format!("{TINY}z = zero\nf = zero\n"));
    let out = dir.path().join("state");
    let (code, _, _) = fracopt(&["solve-state", &cfg, "--output-dir", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dump = fs::read_to_string(out.join("state.csv")).unwrap();
    let mut lines = dump.lines();
    assert_eq!(lines.next(), Some("# field T=1 nt=8 n=9 s=0.8"));
    assert_eq!(lines.next(), Some("t,x,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9 * 9);
    for row in &rows {
        let value: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(value, 0.0);
    }
    // time-major: the first nine rows share t = 0
    assert!(rows[..9].iter().all(|r| r.starts_with("0.0000000000000000e0,")));
    assert!(fs::read_to_string(out.join("norms.csv")).unwrap().starts_with("p,r,linf_q,l2_q,lr_lp\n"));
}

#[test]
fn sweep_outputs_are_complete_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), TINY);
    let first = dir.path().join("a");
    let second = dir.path().join("b");
    for out in [&first, &second] {
        let (code, stdout, _) = fracopt(&["sweep", &cfg, "--output-dir", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(stdout.contains("violation rate"));
    }
    let results = fs::read_to_string(first.join("results.csv")).unwrap();
    assert!(results.starts_with("gamma,J_track,J_ctrl,J_pen,violation,grad_norm,iterations,complementarity\n"));
    assert_eq!(results.lines().count(), 7);
    for g in ["1", "4", "16", "64", "256", "1024"] {
        for kind in ["state", "control", "adjoint", "multiplier"] {
            assert!(first.join(format!("{kind}_g{g}.csv")).exists(), "{kind}_g{g}");
        }
    }
    let rate = fs::read_to_string(first.join("rate.csv")).unwrap();
    assert!(rate.lines().last().unwrap().starts_with("# slope="));

    let mut names: Vec<_> = fs::read_dir(&first).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    for name in names {
        assert_eq!(fs::read(first.join(&name)).unwrap(), fs::read(second.join(&name)).unwrap(), "{name:?}");
    }
}

#[test]
fn verify_passes_on_a_small_problem() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), TINY);
    let (code, stdout, stderr) = fracopt(&["verify", &cfg, "--output-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}{stderr}");
    assert!(!stdout.contains("FAIL"));
    assert!(stdout.contains("assembly oracle s=0.8"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &TINY.replace("s = 0.8", "s = 1.2"));
    let (code, _, stderr) = fracopt(&["assemble", &cfg]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2") && stderr.contains("s must lie in (0,1)"), "{stderr}");

    let cfg = config(dir.path(), &format!("{TINY}colour = blue\n"));
    let (code, _, stderr) = fracopt(&["sweep", &cfg]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 10") && stderr.contains("colour"));

    let (code, _, _) = fracopt(&["verify", "/nonexistent/run.conf"]);
    assert_eq!(code, 2);
}

#[test]
fn iteration_cap_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &format!("{TINY}max_iter = 1\n"));
    let out = dir.path().join("capped");
    let (code, _, stderr) = fracopt(&["sweep", &cfg, "--output-dir", out.to_str().unwrap()]);
    assert_eq!(code, 3, "{stderr}");
    assert!(out.join("results.csv").exists());
}

#[test]
fn output_dir_comes_from_config_unless_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from_config");
    let cfg = config(dir.path(), &format!("{TINY}output_dir = {}\n", target.display()));
    assert_eq!(fracopt(&["assemble", &cfg]).0, 0);
    assert!(target.join("stiffness.csv").exists());
}
