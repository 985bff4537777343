//! Full analysis of a web. Pass a matrix file, or run without arguments to
//! analyze `[[1,1,0],[1,1,1],[1,2,1]]`.
//!
//!     cargo run --example analyze_matrix -- path/to/matrix.json

use std::path::Path;

use linweb::families::example_matrix;
use linweb::input::read_matrix_file;
use linweb::report::analyze;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = match std::env::args().nth(1) {
        Some(path) => read_matrix_file(Path::new(&path))?,
        None => example_matrix(1)?,
    };
    let bundle = analyze(&a)?;
    println!("{bundle}");
    Ok(())
}
