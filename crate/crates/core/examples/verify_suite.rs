//! Runs every check with the default settings and prints one line per suite.

use ito_frft::verify::{run_all, RunConfig};

fn main() -> ito_frft::Result<()> {
    let suites = run_all(&RunConfig::default())?;
    for s in &suites {
        let failed: Vec<&str> = s.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        if failed.is_empty() {
            println!("ok      {:<24} {} checks", s.suite, s.checks.len());
        } else {
            println!("FAILED  {:<24} {}", s.suite, failed.join(", "));
        }
    }
    Ok(())
}
