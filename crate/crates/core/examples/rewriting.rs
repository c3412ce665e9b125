//! Words, rotations and ordinary normal forms in the braid monoid.

use cyclic_srs::format::parse_system;
use cyclic_srs::Result;

const BRAID: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/braid.rsys"));

fn main() -> Result<()> {
    let system = parse_system(BRAID)?;
    let al = system.alphabet();

    for rule in system.rules() {
        println!("{}  {}", rule.id, system.render_rule(rule));
    }

    let w = al.parse_word("a^3 b a")?;
    println!("rotations of {}:", al.render(&w));
    for r in w.cyclic_conjugates() {
        println!("  {}", al.render(&r));
    }
    println!("least rotation: {}", al.render(&w.canonical_rotation()));

    let (nf, trace) = system.normal_form(&al.parse_word("b a b")?)?;
    println!("b a b reduces to {} in {} step(s)", al.render(&nf), trace.steps.len());

    let equal = system.equal_in_monoid(&al.parse_word("b a b a")?, &al.parse_word("a b a a")?)?;
    println!("b a b a = a b a a in the monoid: {equal}");
    Ok(())
}
