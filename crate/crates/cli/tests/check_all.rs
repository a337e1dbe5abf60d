use std::process::Command;

#[test]
fn check_all_passes_with_one_line_per_suite() {
    let out = Command::new(env!("CARGO_BIN_EXE_planar"))
        .args(["check", "all", "--max-degree", "6"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|l| l.starts_with("PASS ")), "{text}");
}
