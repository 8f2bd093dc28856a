#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn tests_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> PathBuf {
    tests_dir().join("fixtures").join(name)
}

/// Golden cases: name and arguments, run from the `tests` directory.
pub const GOLDEN: &[(&str, &[&str])] = &[
    (
        "delta_twocycle",
        &["delta", "-f", "fixtures/twocycle.json", "--subset", "x1,x2"],
    ),
    ("delta_free", &["delta", "-f", "fixtures/free.json", "--subset", "x1"]),
    (
        "delta_collapse",
        &["delta", "-f", "fixtures/collapse.json", "--subset", "x1"],
    ),
    (
        "dmin_twocycle",
        &["dmin", "-f", "fixtures/twocycle.json", "--subset", "x1"],
    ),
    (
        "hull_twocycle",
        &["hull", "-f", "fixtures/twocycle.json", "--subset", "x1"],
    ),
    (
        "hrushovski_collapse",
        &["check", "hrushovski", "-f", "fixtures/collapse.json"],
    ),
    (
        "hrushovski_twocycle",
        &["check", "hrushovski", "-f", "fixtures/twocycle.json"],
    ),
    (
        "strong_free_twocycle",
        &[
            "strong",
            "--source",
            "fixtures/free.json",
            "--target",
            "fixtures/twocycle.json",
        ],
    ),
    ("validate_division", &["validate", "-f", "fixtures/division.json"]),
    (
        "amalgamate_free",
        &[
            "amalgamate",
            "--base",
            "fixtures/free.json",
            "--left",
            "fixtures/twocycle_ext.json",
            "--right",
            "fixtures/free_ext.json",
        ],
    ),
    (
        "forge_kernel",
        &[
            "forge",
            "-f",
            "fixtures/kernel.json",
            "--steps",
            "free,div:x1:2,kdiv:3,exiter:*,div:*:2",
            "--seed",
            "11",
        ],
    ),
    (
        "forge_kernel_json",
        &[
            "--json",
            "forge",
            "-f",
            "fixtures/kernel.json",
            "--steps",
            "free,free,exiter:*",
            "--seed",
            "3",
        ],
    ),
    (
        "autcount_division",
        &["autcount", "-f", "fixtures/division.json", "--fixed", "x"],
    ),
    ("autcount_free", &["autcount", "-f", "fixtures/free.json"]),
    (
        "kummer_2_3",
        &["kummer", "-f", "fixtures/kummer_base.json", "--n", "2", "--m", "3"],
    ),
    (
        "qftp_twocycle",
        &[
            "qftp",
            "--left",
            "fixtures/twocycle.json",
            "--a",
            "x1",
            "--right",
            "fixtures/twocycle.json",
            "--b",
            "x2",
        ],
    ),
    (
        "qftp_free_kernel",
        &[
            "qftp",
            "--left",
            "fixtures/free.json",
            "--a",
            "x1",
            "--right",
            "fixtures/kernel.json",
            "--b",
            "tau",
        ],
    ),
    ("sc_fixed_point", &["sc", "screen", "-f", "fixtures/fixed_point.json"]),
    (
        "sc_algebraic",
        &["--json", "sc", "screen", "-f", "fixtures/algebraic_e.json"],
    ),
    ("sc_predim", &["sc", "predim", "-f", "fixtures/algebraic_e.json"]),
    (
        "poly_groebner",
        &["poly", "groebner", "--vars", "x,y", "x^2 - y", "y^2 - x"],
    ),
    (
        "poly_eliminate",
        &[
            "poly",
            "eliminate",
            "--vars",
            "x,y,z",
            "--keep",
            "y,z",
            "x - y",
            "x - z^2",
        ],
    ),
    (
        "zform_check",
        &["zform", "check", "--g", "1", "--l", "2", "--basis", "1,1;0,1"],
    ),
    (
        "zform_complete",
        &[
            "zform",
            "complete",
            "--g",
            "2",
            "--l",
            "3",
            "--k",
            "2",
            "--partial",
            "1,2,0,5;0,1,3,1",
        ],
    ),
    (
        "zform_transport",
        &["zform", "transport", "--g", "1", "--l", "5", "--to", "3,0;0,3"],
    ),
    ("zform_orbits", &["zform", "orbits", "--g", "2", "--l", "2"]),
    (
        "zform_nondeg",
        &[
            "zform", "nondeg", "--g", "1", "--l", "3", "--k", "2", "--rows", "1,0;0,3",
        ],
    ),
    (
        "pi1_lift",
        &[
            "pi1",
            "lift",
            "--level",
            "12",
            "--u",
            "1",
            "--cover",
            "3",
            "--winding",
            "1",
        ],
    ),
    ("pi1_xi", &["pi1", "xi", "--level", "12", "--u", "5"]),
    (
        "pi1_axioms",
        &["pi1", "axioms", "--level", "6", "--u", "5", "--r-max", "2"],
    ),
    (
        "pi1_compare",
        &["--json", "pi1", "compare", "--level", "12", "--u", "1", "--u2", "5"],
    ),
];

/// Exit code and standard output of one run.
pub fn run(args: &[&str], threads: Option<usize>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_efc"));
    cmd.args(args).current_dir(tests_dir()).env_remove("EFC_BUDGET");
    match threads {
        Some(n) => cmd.env("RAYON_NUM_THREADS", n.to_string()),
        None => cmd.env_remove("RAYON_NUM_THREADS"),
    };
    let out = cmd.output().expect("efc runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

/// What a golden file stores: the exit code line followed by stdout.
pub fn transcript(args: &[&str], threads: Option<usize>) -> String {
    let (code, out) = run(args, threads);
    format!("exit = {code}\n{out}")
}

pub fn golden_path(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.txt"))
}
