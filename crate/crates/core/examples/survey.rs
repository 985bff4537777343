//! Seeded statistics over the generic family and the three constrained
//! families.

use linweb::families::{survey, Family, FamilySpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count: usize = std::env::args().nth(1).map_or(Ok(200), |s| s.parse())?;
    for family in [Family::Generic, Family::B8, Family::B7, Family::B6] {
        let spec = FamilySpec::new(family, 3, 9)?;
        println!("{}", survey(&spec, count, 7, None)?);
    }
    Ok(())
}
