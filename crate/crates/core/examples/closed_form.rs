//! Closed-form equations of a web, and recovering the matrix from them.

use linweb::ratlin::RatMatrix;
use linweb::web::{build_web, closed_form, ClosedFormEquations};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = RatMatrix::from_ints(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]);
    let web = build_web(&a)?;
    let text = closed_form(&web).render_text();
    print!("{text}");

    let (a2, b2) = ClosedFormEquations::parse_text(&text)?.matrices()?;
    assert_eq!(a2, a);
    assert_eq!(&b2, web.b());
    println!("\nparsed back: A = {a2}, A^-1 = {b2}");
    Ok(())
}
