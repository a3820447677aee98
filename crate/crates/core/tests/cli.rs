use std::process::{Command, Output};

fn quatreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatreg"))
        .args(args)
        .env("QUATREG_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_shows_ids_and_flags() {
    let out = quatreg(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = |id: &str| {
        text.lines()
            .find(|l| l.split_whitespace().next() == Some(id))
            .unwrap_or_else(|| panic!("no line for {id} in\n{text}"))
            .to_string()
    };
    assert!(line("iota").contains("expected-regular"));
    let arctan = line("arctan_ex:1");
    assert!(arctan.contains("expected-regular") && arctan.contains("expected-hyperholomorphic"));
    assert!(line("conj").contains("control"));
    assert!(!line("conj").contains("expected-regular"));
    assert!(line("power:-3").contains("expected-regular"));
}

#[test]
fn run_writes_report_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("small.cfg");
    let report = dir.path().join("report.txt");
    std::fs::write(
        &config,
        format!(
            "# small run\nfunctions = power:2 iota conj\nsuites = theorem1 lemma1\nsamples = 20\nseed = 7\noutput = {}\n",
            report.display()
        ),
    )
    .unwrap();
    let out = quatreg(&["run", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("0 unexpected"));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("# quatreg report v1"));
    let row = text
        .lines()
        .find(|l| l.starts_with("function=conj suite=theorem1 item=item1 "))
        .expect("conj item1 row");
    assert!(row.contains("expected=fail") && row.contains("status=ok"), "{row}");
    assert!(row.contains("anchor=\"Theorem 1 item 1\""), "{row}");
}

#[test]
fn unknown_function_is_a_config_error() {
    let out = quatreg(&["check", "theorem1", "powr:2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("powr"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.cfg");
    std::fs::write(&config, "samples = many\n").unwrap();
    let out = quatreg(&["run", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn check_runs_one_suite() {
    let out = quatreg(&["check", "lemma1", "arctan_ex:2", "--seed", "3", "--backend", "both"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("function=arctan_ex:2 suite=lemma1 item=lemma1 "));
    assert!(text.contains("backend=jets") && text.contains("backend=fd"));
    assert!(!text.contains("status=UNEXPECTED"));
}

#[test]
fn check_reports_failing_control_as_expected() {
    let out = quatreg(&["check", "integral", "conj", "--res", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("item=theorem2_all") && text.contains("outcome=fail"));
}
