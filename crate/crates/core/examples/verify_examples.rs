//! Runs the reproduction battery on the three reference webs; exits with
//! status 1 if a derived check fails.

use linweb::report::verify_reference;

fn main() {
    let report = verify_reference();
    print!("{report}");
    if !report.derived_ok {
        std::process::exit(1);
    }
}
