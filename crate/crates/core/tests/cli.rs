use std::path::PathBuf;
use std::process::Command;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn spinfoam(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_spinfoam"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn machine(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in {out}"))
        .to_string()
}

#[test]
fn sphere_from_a_file() {
    let r = spinfoam(&["cy", "--manifold", &fixture("s4.tri"), "--level", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "Z0 = 1.000000000000+0.000000000000i\n");
}

#[test]
fn symbol_and_oracle_agree() {
    let a = spinfoam(&[
        "symbol", "theta", "--labels", "2,1,1", "--level", "5", "--format", "machine",
    ]);
    let b = spinfoam(&[
        "oracle", "theta", "--labels", "2,1,1", "--level", "5", "--format", "machine",
    ]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, "theta 1.618033988750+0.000000000000i\n");
}

#[test]
fn oracle_reads_network_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.net");
    std::fs::write(&path, "edge a 2\nedge b 1\nedge c 1\nvertex u a b c\nvertex v a c b\n").unwrap();
    let r = spinfoam(&["oracle", "--network", path.to_str().unwrap(), "--level", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "network = 1.618033988750+0.000000000000i\n");
}

#[test]
fn dilute_gas_example() {
    let p = spinfoam(&[
        "perturb", "--level", "5", "--g", "0.3", "--z0", "1", "--format", "machine",
    ]);
    assert_eq!(p.code, 0, "{}", p.stderr);
    let z2: f64 = machine(&p.stdout, "z2").split('+').next().unwrap().parse().unwrap();
    let z: f64 = machine(&p.stdout, "Z").split('+').next().unwrap().parse().unwrap();
    assert!((z - (-0.3 * z2).exp()).abs() < 1e-11, "{}", p.stdout);
}

#[test]
fn pachner_writes_a_new_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s4.tri");
    std::fs::copy(fixture("s4.tri"), &input).unwrap();
    let original = std::fs::read_to_string(&input).unwrap();
    let output = dir.path().join("s4-moved.tri");
    let (i, o) = (input.to_str().unwrap(), output.to_str().unwrap());

    let r = spinfoam(&[
        "pachner",
        "--manifold",
        i,
        "--move",
        "1-5",
        "--site",
        "0,1,2,3,4",
        "--output",
        o,
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(machine(&r.stdout.replace(" = ", " "), "f-vector"), "7,20,30,25,10");
    assert_eq!(std::fs::read_to_string(&input).unwrap(), original);

    let before = spinfoam(&["cy", "--manifold", i, "--level", "4"]);
    let after = spinfoam(&["cy", "--manifold", o, "--level", "4"]);
    assert_eq!(before.stdout, after.stdout);

    let clobber = spinfoam(&[
        "pachner",
        "--manifold",
        i,
        "--move",
        "1-5",
        "--site",
        "0,1,2,3,4",
        "--output",
        i,
    ]);
    assert_eq!(clobber.code, 2);
    assert!(clobber.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&input).unwrap(), original);
}

#[test]
fn errors_write_nothing_to_stdout() {
    let cases: [(&[&str], i32); 6] = [
        (&["frobnicate"], 2),
        (&["cy", "--level", "3"], 2),
        (&["cy", "--manifold", "/nonexistent.tri", "--level", "3"], 2),
        (&["symbol", "theta", "--labels", "1,1", "--level", "5"], 2),
        (&["symbol", "theta", "--labels", "9,1,1", "--level", "5"], 1),
        (&["perturb", "--level", "3"], 1),
    ];
    for (args, code) in cases {
        let r = spinfoam(args);
        assert_eq!(r.code, code, "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty(), "{args:?}");
        assert_eq!(r.stderr.trim_end().lines().count(), 1, "{args:?}: {}", r.stderr);
    }
    let missing = spinfoam(&["cy", "--level", "3"]);
    assert!(missing.stderr.contains("--manifold"), "{}", missing.stderr);
    let unreadable = spinfoam(&["cy", "--manifold", "/nonexistent.tri", "--level", "3"]);
    assert!(unreadable.stderr.contains("/nonexistent.tri"), "{}", unreadable.stderr);
}

#[test]
fn output_is_deterministic() {
    let args = ["cy", "--manifold", "s4-refined", "--level", "4", "--precision", "15"];
    assert_eq!(spinfoam(&args).stdout, spinfoam(&args).stdout);
}

#[test]
fn signature_check_reports() {
    let r = spinfoam(&[
        "check-signature",
        "--manifold",
        &fixture("s4.tri"),
        "--level",
        "4",
        "--format",
        "machine",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(machine(&r.stdout, "pass"), "true");
    assert_eq!(machine(&r.stdout, "sigma"), "0");
}
