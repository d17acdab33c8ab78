//! Driving the command-line front end from code, on every bundled system.

use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/systems");
    let mut names: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    for path in names {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args = ["torus-zeta", "check", "--config", path.to_str().unwrap(), "--format", "json"];
        let code = torus_zeta::cli::run(args, &mut out, &mut err);
        let name = path.file_name().unwrap().to_string_lossy();
        if code == 2 {
            println!("{name}: {}", String::from_utf8_lossy(&err).trim());
            continue;
        }
        let report: torus_zeta::cli::Report = serde_json::from_slice(&out).unwrap();
        println!("{name}: exit {code}");
        for c in &report.checks {
            println!("  {:<40} {:?}", c.name, c.status);
        }
    }
}
