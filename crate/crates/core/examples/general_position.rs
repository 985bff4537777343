//! General-position audit: which sets of foliations have dependent forms.

use linweb::families::example_web;
use linweb::web::general_position_audit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=3 {
        let web = example_web(k)?;
        println!("A = {}", web.a());
        print!("{}", general_position_audit(&web));
        println!();
    }
    Ok(())
}
