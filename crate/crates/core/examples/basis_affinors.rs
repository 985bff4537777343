//! Adapted coframe, expansion of the remaining foliations, and the basis
//! affinors of a web.

use linweb::coframe::{adapted_coframe, basis_affinors, expand_foliation};
use linweb::ratlin::{format_rational, RatMatrix};
use linweb::web::build_web;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let web = build_web(&RatMatrix::from_ints(&[[1, 1, 0], [1, 1, 1], [1, 2, 1]]))?;
    let cof = adapted_coframe(&web);
    println!("gauge: {:?}, coframe: {}", cof.status(), cof.is_coframe());
    for a in web.n() + 2..=2 * web.n() {
        let e = expand_foliation(&web, &cof, a)?;
        let show = |v: &[_]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
        println!("foliation {a}: u = ({}), v = ({})", show(&e.u), show(&e.v));
    }
    print!("{}", basis_affinors(&web));
    Ok(())
}
