//! Byte-for-byte comparison of CLI output against `tests/golden`.
//! Set `EFC_BLESS=1` to rewrite the expected files.

mod common;

#[test]
fn golden_transcripts() {
    let bless = std::env::var_os("EFC_BLESS").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in common::GOLDEN {
        let got = common::transcript(args, None);
        let path = common::golden_path(name);
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if got != want {
            mismatches.push(format!("{name}:\n--- expected\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn thread_count_does_not_change_output() {
    for (name, args) in common::GOLDEN
        .iter()
        .filter(|(n, _)| n.starts_with("hrushovski") || n.starts_with("sc_") || n.starts_with("zform_orbits"))
    {
        let one = common::transcript(args, Some(1));
        let many = common::transcript(args, Some(4));
        assert_eq!(one, many, "{name}");
    }
}

#[test]
fn repeated_runs_agree() {
    let (_, args) = common::GOLDEN.iter().find(|(n, _)| *n == "forge_kernel").unwrap();
    let first = common::transcript(args, None);
    for _ in 0..2 {
        assert_eq!(common::transcript(args, None), first);
    }
}

#[test]
fn errors_exit_with_two() {
    let (code, out) = common::run(&["delta", "-f", "fixtures/missing.json", "--subset", "x1"], None);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let (code, _) = common::run(&["zform", "check", "--g", "1", "--l", "4", "--basis", "1,0;0,1"], None);
    assert_eq!(code, 2);
}

#[test]
fn budget_flag_limits_enumeration() {
    let (code, _) = common::run(
        &["--budget", "1", "check", "hrushovski", "-f", "fixtures/twocycle.json"],
        None,
    );
    assert_eq!(code, 2);
}
