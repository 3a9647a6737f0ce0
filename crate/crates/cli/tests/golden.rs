//! Byte-exact reports for the fixture corpus, one golden file per monomial
//! order. `UPDATE_GOLDEN=1` rewrites them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

const ORDERS: [&str; 3] = ["grevlex", "lex", "grlex"];

struct Case {
    fixture: String,
    command: String,
    exit: i32,
    flags: Vec<String>,
}

impl Case {
    fn name(&self) -> String {
        let mut n = format!("{}.{}", self.fixture, self.command);
        for f in &self.flags {
            n.push('_');
            n.push_str(f.trim_start_matches('-'));
        }
        let ext = if self.flags.iter().any(|f| f == "--text") {
            "txt"
        } else {
            "json"
        };
        format!("{n}.{ext}")
    }
}

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(dir().join("fixtures/cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace().map(String::from);
            Case {
                fixture: it.next().unwrap(),
                command: it.next().unwrap(),
                exit: it.next().unwrap().parse().unwrap(),
                flags: it.collect(),
            }
        })
        .collect()
}

fn invoke(case: &Case, order: &str) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_koszul-lab"))
        .arg(&case.command)
        .arg("--input")
        .arg(dir().join("fixtures").join(format!("{}.json", case.fixture)))
        .args(["--order", order])
        .args(&case.flags)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn verdict(report: &str, text: bool) -> String {
    if text {
        report.lines().find(|l| l.starts_with("verdict: ")).unwrap().to_string()
    } else {
        let v: serde_json::Value = serde_json::from_str(report).unwrap();
        v["verdict"].to_string()
    }
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let mut verdicts = BTreeMap::new();
        for order in ORDERS {
            let (code, first) = invoke(&case, order);
            let (_, second) = invoke(&case, order);
            let name = format!("{order}/{}", case.name());
            if code != case.exit {
                failures.push(format!("{name}: exit {code}, expected {}", case.exit));
            }
            if first != second {
                failures.push(format!("{name}: output differs between runs"));
            }
            let path = dir().join("golden").join(order).join(case.name());
            if update {
                std::fs::create_dir_all(path.parent().unwrap()).unwrap();
                std::fs::write(&path, &first).unwrap();
            } else {
                match std::fs::read_to_string(&path) {
                    Ok(golden) if golden == first => {}
                    Ok(_) => failures.push(format!("{name}: differs from golden file")),
                    Err(e) => failures.push(format!("{name}: {e}")),
                }
            }
            verdicts.insert(order, verdict(&first, case.name().ends_with(".txt")));
        }
        let distinct: std::collections::BTreeSet<_> = verdicts.values().collect();
        if distinct.len() != 1 {
            failures.push(format!("{}: verdicts depend on the order: {verdicts:?}", case.name()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
