//! Cyclical completion of a presentation of the braid monoid on five
//! generators, followed by a look at a word without a cyclically irreducible form.

use cyclic_srs::completion::{cyclical_completion, verify_cyclically_complete, CompletionBudget};
use cyclic_srs::cyclic::{rho, ExploreBudget, Rho};
use cyclic_srs::format::{parse_system, write_system};
use cyclic_srs::Result;

const HM: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hermiller_meier.rsys"));

fn main() -> Result<()> {
    let system = parse_system(HM)?;
    let outcome = cyclical_completion(&system, CompletionBudget::default())?;
    print!("{}", outcome.log_text());
    println!();
    print!("{}", write_system(&outcome.system));

    let completed = &outcome.system;
    let check = verify_cyclically_complete(completed, ExploreBudget::default(), 3);
    println!(
        "\nwords up to length 3: {} checked, {} with a unique form, {} with none",
        check.checked,
        check.unique,
        check.no_form.len()
    );
    let al = completed.alphabet();
    let delta_a = al.parse_word("D a")?;
    if let Rho::NoForm { exhaustive: true } = rho(completed, &delta_a, ExploreBudget::default()) {
        println!("D a cycles forever without reaching a cyclically irreducible word");
    }
    Ok(())
}
