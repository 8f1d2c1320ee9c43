//! Run a suite from code and print the JSON report, as the command line does.
use qdeform::cli::suites::{run_suite, shipped, Options};

fn main() {
    let opts = Options::default();
    let report = run_suite("pentagon", &shipped(), &opts).unwrap();
    print!("{}", report.to_json());
    eprintln!("pass: {}, worst defect {:.1e}", report.pass(), report.worst());
}
