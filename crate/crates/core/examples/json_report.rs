//! Full report for a spec file, printed as text and written as JSON.
//!
//!     cargo run --example json_report -- specs/quartic.weil out.json

use weilaut::cli::report_for;
use weilaut::solver::SolverOptions;
use weilaut::weil::parse_specs;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "specs/quartic.weil".into());
    let text = std::fs::read_to_string(&path).expect("readable spec file");
    for spec in parse_specs(&text).expect("valid spec file") {
        let report = report_for(&spec, &SolverOptions::default()).unwrap();
        print!("{}", report.render_full());
        if let Some(out) = args.next() {
            std::fs::write(&out, report.to_json()).unwrap();
        }
    }
}
