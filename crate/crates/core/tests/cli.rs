use std::process::Command;

fn fdsym(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fdsym")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn verify_operators() {
    let (code, out, _) = fdsym(&["verify-operators", "thm1.*"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("24/24 passed"), "{out}");
    assert_eq!(fdsym(&["verify-operators", "lie.A1.*"]).0, 0);
    assert_eq!(fdsym(&["verify-operators", "thm1.case9"]).0, 2);
}

#[test]
fn verify_solutions() {
    let (code, out, _) = fdsym(&["verify-solutions", "nonlie.*"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("6/6 passed"), "{out}");
    let (code, out, _) = fdsym(&["verify-solutions", "lie.4", "--eps=0"]);
    assert_eq!(code, 0);
    assert!(out.contains("1/1 passed"), "{out}");
    assert_eq!(fdsym(&["verify-solutions", "lie.9*"]).0, 2);
}

#[test]
fn derive() {
    let (code, out, _) = fdsym(&["derive", "1/vx"]);
    assert_eq!(code, 0);
    assert!(out.contains("matches reference system: yes"), "{out}");
    let (code, out, _) = fdsym(&["derive", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("theta_t/2 - theta_xx/2 + theta*xi_x"), "{out}");
    assert_eq!(fdsym(&["derive", "exp(vx)"]).0, 2);
    assert_eq!(fdsym(&["derive", "1/(vx"]).0, 2);
}

#[test]
fn arrows_all() {
    let (code, out, _) = fdsym(&["arrows", "--all"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("15/15 passed"), "{out}");
    assert_eq!(fdsym(&["arrows", "arrow.lie.99"]).0, 2);
}

#[test]
fn reduce_prints_odes() {
    let (code, out, _) = fdsym(&["reduce", "reduce.stationary"]);
    assert_eq!(code, 0);
    assert!(out.contains("reduce.stationary: -phi_ww = 0"), "{out}");
}

#[test]
fn simulate() {
    let (code, out, err) = fdsym(&["simulate", "--oracle", "lie.6", "--t0=-2", "--t1=-1", "--n=201"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("level,h,dt,max_err,l2_err,order\n"), "{out}");
    let (code, _, err) = fdsym(&["simulate", "--oracle", "lie.5", "--t0=-1", "--t1=1"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("≤ 0"), "{err}");
    let (code, out, _) =
        fdsym(&["simulate", "--oracle", "lie.4.eps=1", "--t0", "1", "--t1", "2", "--n", "11", "--levels", "3"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().skip(1).filter(|l| l.contains(',')).count(), 3);
    assert_eq!(fdsym(&["simulate", "--oracle", "lie.4", "--t0=1", "--t1=2"]).0, 2);
}

#[test]
fn json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let code = fdsym(&["--seed", "9", "--no-timestamps", "--json", p.to_str().unwrap(), "verify-solutions", "lie.*"]).0;
        assert_eq!(code, 0);
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 9);
    assert!(v.get("timestamp").is_none());
    let s = &v["summary"];
    assert_eq!(s["total"], v["records"].as_array().unwrap().len());
    assert_eq!(s["failed"], 0);
}
