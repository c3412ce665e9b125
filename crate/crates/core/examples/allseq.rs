//! Every cyclic-reduction sequence from a word: nontermination witnesses and
//! cyclically irreducible forms.

use cyclic_srs::cyclic::{explore_allseq, rho, ExploreBudget, Rho};
use cyclic_srs::format::parse_system;
use cyclic_srs::Result;

const EX22: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ex22.rsys"));
const BRAID: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/braid.rsys"));

fn main() -> Result<()> {
    let budget = ExploreBudget::default();

    let system = parse_system(EX22)?;
    let al = system.alphabet();
    let report = explore_allseq(&system, &al.parse_word("b c d")?, budget);
    println!("b c d terminates: {}", report.terminates.as_str());
    if let Some(witness) = &report.nontermination_witness {
        println!("  witness: {}", witness.render(&system));
    }
    if let Rho::Unique { reached, chain, .. } = rho(&system, &al.parse_word("a c d")?, budget) {
        println!("a c d has the form {}", al.render(&reached));
        for step in &chain {
            println!("  {}", step.render(&system));
        }
    }

    let braid = parse_system(BRAID)?;
    let al = braid.alphabet();
    for n in 2..=4 {
        let w = al.parse_word(&format!("b a^{n} b a"))?;
        let report = explore_allseq(&braid, &w, budget);
        let forms: Vec<String> = report.irreducible_forms.iter().map(|f| al.render(f)).collect();
        println!(
            "{}: terminates {}, converges {}, forms {:?}",
            al.render(&w),
            report.terminates.as_str(),
            report.converges.as_str(),
            forms
        );
    }
    Ok(())
}
