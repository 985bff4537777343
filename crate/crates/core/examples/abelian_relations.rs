//! Normals of the foliations and the space of constant abelian 2-equations
//! for a few orders.

use linweb::abelian::{normals, relation_space};
use linweb::families::{sample_family, FamilySpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=5 {
        let web = sample_family(&FamilySpec::generic(n), 42)?;
        let nonzero = normals(&web).iter().filter(|w| !w.is_zero()).count();
        let rank = relation_space(&web);
        println!(
            "n = {n}: A = {}, {nonzero}/{} normals nonzero, relation dim {} ({:?}), all-ones present: {}",
            web.a(),
            web.size(),
            rank.dimension,
            rank.verdict,
            rank.contains_all_ones
        );
    }
    Ok(())
}
