use std::io::Write;
use std::process::{Command, Stdio};

fn polarmult(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polarmult"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn polar_from_stdin() {
    let (code, out) = polarmult(&["polar", "--json", "--no-timings"], Some(r#"{"base_vars":["u"],"poly_vars":["x"]}"#));
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["vectors"]["polar"], serde_json::json!([0, 1]));
}

#[test]
fn human_output_and_selftest() {
    let (code, out) = polarmult(&["selftest"], None);
    assert_eq!(code, 0, "{out}");
    assert!(!out.is_empty());
}

#[test]
fn exit_codes() {
    let (code, _) = polarmult(&["polar"], Some("{"));
    assert_eq!(code, 2);
    let (code, _) = polarmult(&["polar", "--vmax", "12"], Some(r#"{"base_vars":["u"],"poly_vars":["x"],"relations":["x^9"]}"#));
    assert_eq!(code, 1);
    let (code, _) = polarmult(&["polar", "--budget", "3"], Some(r#"{"base_vars":["u"],"poly_vars":["x","y"],"relations":["x*y-u*x^2"]}"#));
    assert_eq!(code, 3);
}
