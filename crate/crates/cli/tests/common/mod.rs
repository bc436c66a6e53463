//! Golden cases shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "residue_sqrt2", args: &["realize", "@residue_sqrt2.type"], exit: 0 },
    Case { name: "contradiction", args: &["realize", "@contradiction.type"], exit: 2 },
    Case { name: "pseudo_sum_tiny", args: &["--mode", "field", "--prefix", "4", "realize", "@pseudo_sum.type"], exit: 3 },
    Case { name: "value_sqrt_t", args: &["realize", "@value_sqrt_t.type"], exit: 0 },
    Case { name: "pseudo_sum", args: &["--mode", "field", "--prefix", "20", "realize", "@pseudo_sum.type"], exit: 0 },
    Case { name: "beta", args: &["--prefix", "60", "realize", "@beta.type"], exit: 0 },
    Case { name: "interval", args: &["--prefix", "60", "realize", "@interval.type"], exit: 0 },
    Case { name: "above", args: &["--prefix", "60", "realize", "@above.type"], exit: 0 },
    Case { name: "field_scaled", args: &["--mode", "field", "--prefix", "40", "realize", "@field_scaled.type"], exit: 0 },
    Case { name: "nonlinear", args: &["--mode", "field", "realize", "@nonlinear.type"], exit: 1 },
    Case { name: "qe", args: &["qe", "exists x (a < x and x < b)"], exit: 0 },
    Case { name: "basis", args: &["basis", "t + t^2, t"], exit: 0 },
    Case { name: "pseudo_limit", args: &["pseudo-limit", "1, 1 + t^(1/2), 1 + t^(1/2) + t^(2/3)"], exit: 0 },
    Case { name: "tree_interval_root", args: &["tree", "interval", ""], exit: 0 },
    Case { name: "tree_interval", args: &["tree", "interval", "101"], exit: 0 },
    Case { name: "tree_path", args: &["tree", "path", "@path.tree", "3/8", "--depth", "4"], exit: 0 },
    Case { name: "tree_search", args: &["tree", "search", "seeded:7", "--depth", "10"], exit: 0 },
    Case { name: "eval", args: &["eval", "x < 2*g", "x=alg[-2,0,1;1,2]*t", "g=t"], exit: 0 },
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn run(case: &Case) -> (i32, String) {
    let dir = fixtures();
    let args: Vec<String> = case.args.iter().map(|a| match a.strip_prefix('@') {
        Some(f) => dir.join(f).to_string_lossy().into_owned(),
        None => a.to_string(),
    }).collect();
    let out = Command::new(env!("CARGO_BIN_EXE_recsat")).args(&args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}
