//! Static analysis: c̃-defined triples, pre/suf intersections and the
//! cyclic confluence audit.

use cyclic_srs::analysis::{cyclic_confluence_verdict, is_c_defined, presuf_intersections};
use cyclic_srs::cyclic::ExploreBudget;
use cyclic_srs::format::parse_system;
use cyclic_srs::{Result, RuleId};

const TREFOIL: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/trefoil.rsys"));
const HM: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hermiller_meier.rsys"));

fn main() -> Result<()> {
    let trefoil = parse_system(TREFOIL)?;
    let al = trefoil.alphabet();
    // r1 is x y -> z x; r4 and r5 are the n = 2 and n = 3 schema instances.
    let (xy, xz2x, xz3x) = (RuleId(0), RuleId(3), RuleId(4));
    let w = al.parse_word("y x z^2 x")?;
    match is_c_defined(&trefoil, &w, xz2x, xy)? {
        Some(c) => println!("{} is c-defined via {}", al.render(&w), al.render(&c)),
        None => println!("{} is not c-defined", al.render(&w)),
    }
    let w = al.parse_word("x z^2 x z^3")?;
    println!("{} c-defined: {}", al.render(&w), is_c_defined(&trefoil, &w, xz2x, xz3x)?.is_some());
    let (a, b) = presuf_intersections(&trefoil, xz2x, xz3x)?;
    let show = |ws: &[cyclic_srs::Word]| ws.iter().map(|w| al.render(w)).collect::<Vec<_>>();
    println!("pre/suf intersections: {:?} and {:?}", show(&a), show(&b));

    let hm = parse_system(HM)?;
    println!("critical pairs: {}", hm.check_local_confluence()?.len());
    let report = cyclic_confluence_verdict(&hm, ExploreBudget::default());
    print!("{}", report.render_text(&hm));
    Ok(())
}
