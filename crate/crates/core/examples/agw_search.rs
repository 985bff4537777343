//! Looks for almost Grassmannizable webs among small integer matrices and
//! evaluates condition 7 at each witness.

use linweb::agw::{agw_search, agw_test, condition7_residual, Condition7, SearchOptions};
use linweb::coframe::basis_affinors;
use linweb::ratlin::format_rational;
use linweb::web::build_web;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..4 {
        let opts = SearchOptions {
            seed,
            ..SearchOptions::default()
        };
        match agw_search(&opts) {
            Some(a) => {
                let web = build_web(&a)?;
                let c7 = match condition7_residual(&basis_affinors(&web)) {
                    Condition7::Residual(r) => format!("residual {}", format_rational(&r)),
                    Condition7::NotApplicable(why) => format!("not applicable ({why})"),
                };
                println!(
                    "seed {seed}: {a} is {}; condition 7 {c7}",
                    agw_test(&web).verdict
                );
            }
            None => println!("seed {seed}: nothing within {} candidates", opts.budget),
        }
    }
    Ok(())
}
