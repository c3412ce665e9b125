//! Classes of mutually cyclically reducible words of a fixed length.

use cyclic_srs::conjugacy::tilde_classes;
use cyclic_srs::cyclic::ExploreBudget;
use cyclic_srs::format::parse_system;
use cyclic_srs::Result;

const HM: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hermiller_meier.rsys"));

fn main() -> Result<()> {
    let system = parse_system(HM)?;
    let al = system.alphabet();
    let classes = tilde_classes(&system, 2, None, ExploreBudget::default())?;
    for class in classes.classes.iter().filter(|c| c.has_cycle) {
        let members: Vec<String> = class.members.iter().map(|m| al.render(m)).collect();
        let note = if class.has_irreducible { "" } else { " (no irreducible member)" };
        println!("{}{note}", members.join(" | "));
    }
    Ok(())
}
