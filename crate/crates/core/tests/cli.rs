use std::process::{Command, Output};

fn gaussalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_prints_canonical_form() {
    let o = gaussalg(&["eval", "conv(gauss(1,0,0,1),gauss(1,0,0,1))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "gauss(y=1/2, a=0, b=0, c=1/2)\n");

    let o = gaussalg(&["eval", "fourierA(gauss(1,0,0,1))"]);
    assert_eq!(stdout(&o), "gauss(y=1, a=0, b=0, c=1)\n");

    let o = gaussalg(&["eval", "norm(1, gauss(1,1))"]);
    assert_eq!(stdout(&o), "root(1, 2)*pi^0 = 1\n");
}

#[test]
fn eval_output_parses_back() {
    let first = stdout(&gaussalg(&["eval", "modulate(1/2, translate(-1, hermite(3))) + gauss(2, 1, i, 3+i)"]));
    let second = stdout(&gaussalg(&["eval", first.trim()]));
    assert_eq!(first, second);
}

#[test]
fn parse_errors_exit_1_with_position() {
    let o = gaussalg(&["eval", "gauss(1,0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("column 12"), "{}", stderr(&o));

    assert_eq!(gaussalg(&["eval", "nope(1)"]).status.code(), Some(1));
    assert_eq!(gaussalg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gaussalg(&["check-laws", "--law", "no-such-law"]).status.code(), Some(1));
}

#[test]
fn domain_errors_exit_2() {
    let o = gaussalg(&["eval", "conv(gauss(1,0,0,-1), gauss(1,0,0,1))"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("divergent: Re(c0+c1) ≤ 0"), "{}", stderr(&o));
    assert!(stderr(&o).contains("conv at 1:1"));

    assert_eq!(gaussalg(&["eval", "shrink(0, gauss(1,1))"]).status.code(), Some(2));
    assert_eq!(gaussalg(&["norms", "gauss(1,-1)"]).status.code(), Some(2));
}

#[test]
fn sample_writes_csv() {
    let o = gaussalg(&["sample", "hermite(2)", "--from", "-3", "--to", "3", "--count", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,re,im");
    assert_eq!(lines.len(), 8);
    for row in &lines[1..] {
        let fields: Vec<f64> = row.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 3);
        assert_eq!(fields[2], 0.0);
    }

    let dir = std::env::temp_dir().join(format!("gaussalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h2.csv");
    let o = gaussalg(&["sample", "hermite(2)", "--from", "-3", "--to", "3", "--count", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn io_errors_exit_4() {
    let o = gaussalg(&["sample", "gauss(1,1)", "--from", "0", "--to", "1", "--count", "2", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(gaussalg(&["dft", "/nonexistent-dir/in.csv"]).status.code(), Some(4));
}

#[test]
fn check_laws_runs_and_is_deterministic() {
    let args = ["check-laws", "--law", "convolution-theorem", "--cases", "100", "--seed", "1"];
    let a = gaussalg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&gaussalg(&args)));

    let o = gaussalg(&["check-laws", "--law", "add-comm", "--cases", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["law"], "add-comm");
    assert_eq!(v[0]["cases"], 5);
}

#[test]
fn norms_prints_every_functional() {
    let o = gaussalg(&["norms", "gauss(1,1)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("norm(1) = root(1, 2)*pi^0 = 1"));
    assert!(text.contains("norm(inf) = root(1, 2)*pi^0 = 1"));
    assert!(text.contains("variance = root(1/2, 1)*pi^-1"));
}

#[test]
fn dft_round_trips_through_files() {
    let dir = std::env::temp_dir().join(format!("gaussalg-dft-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("x.csv");
    let spectrum = dir.join("fx.csv");
    let back = dir.join("x2.csv");
    std::fs::write(&input, "# rate=2\nindex,re,im\n0,1,0\n1,2,0\n2,0,1\n3,-1,0\n").unwrap();
    let o = gaussalg(&["dft", input.to_str().unwrap(), "--out", spectrum.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = gaussalg(&["dft", spectrum.to_str().unwrap(), "--inverse", "--out", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&back).unwrap();
    assert!(text.starts_with("# rate=2\n"), "{text}");
    let values: Vec<(f64, f64)> = text
        .lines()
        .skip(2)
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[1], f[2])
        })
        .collect();
    let expected = [(1.0, 0.0), (2.0, 0.0), (0.0, 1.0), (-1.0, 0.0)];
    for (v, e) in values.iter().zip(expected) {
        assert!((v.0 - e.0).abs() < 1e-12 && (v.1 - e.1).abs() < 1e-12, "{values:?}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_states_units() {
    let o = gaussalg(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pi^(-1/2)"));
}
