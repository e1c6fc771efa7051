use std::process::Command;

fn couplings(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_couplings"))
        .args(args)
        .output()
        .unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn selftest_passes_and_is_reproducible() {
    let args = ["selftest", "--size", "5", "--count", "40", "--seed", "9"];
    let (first, code) = couplings(&args);
    assert_eq!(code, 0, "{first}");
    assert!(first.contains("\"passed\": true"));
    assert_eq!(couplings(&args).0, first);
}

#[test]
fn selftest_size_cap_is_an_error() {
    let (out, code) = couplings(&["selftest", "--size", "21"]);
    assert_eq!(code, 2);
    assert!(out.contains("SubsetCapExceeded"));
}

#[test]
fn missing_file_is_an_error() {
    let (out, code) = couplings(&["check", "--input", "/nonexistent/instance.json"]);
    assert_eq!(code, 2);
    assert!(out.contains("\"kind\": \"ParseError\""));
}

#[test]
fn bad_epsilon_is_a_usage_error() {
    let (_, code) = couplings(&["couple", "--input", "x.json", "--epsilon", "half"]);
    assert_eq!(code, 2);
}
