//! The construction for larger orders: every property is checked on a
//! random web of order 4 and 5.

use linweb::abelian::relation_space;
use linweb::agw::agw_test;
use linweb::families::{sample_family, FamilySpec};
use linweb::parallel::parallelizability_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [4, 5] {
        let web = sample_family(&FamilySpec::generic(n), 5)?;
        println!("W({}, {n}, 2) from A = {}", 2 * n, web.a());
        println!(
            "  parallelizable: {:?}",
            parallelizability_report(&web).verdict
        );
        println!("  AGW verdict:    {}", agw_test(&web).verdict);
        println!("  relation dim:   {}", relation_space(&web).dimension);
    }
    Ok(())
}
