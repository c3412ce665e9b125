//! Conjugacy queries with certificates that can be checked on their own.

use cyclic_srs::conjugacy::{conjugacy_test, Certificate, DEFAULT_CONGRUENCE_BUDGET};
use cyclic_srs::cyclic::ExploreBudget;
use cyclic_srs::format::parse_system;
use cyclic_srs::Result;

const BRAID: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/braid.rsys"));

fn main() -> Result<()> {
    let system = parse_system(BRAID)?;
    let al = system.alphabet();
    let budget = ExploreBudget::default();

    let u = al.parse_word("b a^2 b a")?;
    let v = al.parse_word("a^2 b a b")?;
    let verdict = conjugacy_test(&system, &u, &v, budget)?;
    println!("{} vs {}: {}", al.render(&u), al.render(&v), verdict.label());
    println!("{}", verdict.semantics_note);

    if let Some(cert) = verdict.certificate() {
        let text = cert.serialize(&system);
        print!("{text}");
        // A certificate read back from text is re-checked from scratch.
        let reread = Certificate::parse(&system, &text)?;
        reread.verify(&system, DEFAULT_CONGRUENCE_BUDGET)?;
        println!("re-verified: x = {}, y = {}", al.render(&reread.x), al.render(&reread.y));
    }

    // Here the certificate is built from the reduction chain to a^3 b a.
    let w = al.parse_word("a b a^3")?;
    let verdict = conjugacy_test(&system, &u, &w, budget)?;
    if let Some(cert) = verdict.certificate() {
        println!(
            "{} vs {}: {}, x = {}, y = {}",
            al.render(&u),
            al.render(&w),
            verdict.label(),
            al.render(&cert.x),
            al.render(&cert.y)
        );
    }

    let verdict = conjugacy_test(&system, &al.parse_word("a")?, &al.parse_word("b")?, budget)?;
    println!("a vs b: {}", verdict.label());
    println!("{}", verdict.semantics_note);
    Ok(())
}
