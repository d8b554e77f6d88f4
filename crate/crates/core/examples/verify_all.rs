//! Run the acceptance suite with a configuration read from TOML and print the
//! summary table.

use alexinv::checks::{render_table, verify_all, SuiteConfig};
use alexinv::Result;

pub fn run_example() -> Result<()> {
    let cfg = SuiteConfig::from_toml(include_str!("verify_g2.toml"))?;
    let reports = verify_all(&cfg);
    print!("{}", render_table(&reports));
    assert!(reports.iter().all(|r| r.ok()));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
