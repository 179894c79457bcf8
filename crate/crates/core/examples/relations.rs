//! The defining relations, their tiers, and one rewrite step by hand.
//!
//! ```bash
//! cargo run --example relations
//! ```

use threepage::relations::{apply, enumerate_relations, redundant_relations, Direction, Family, Tier};
use threepage::word::parse_word;

fn main() {
    for tier in [Tier::Classical, Tier::Singular, Tier::Full] {
        println!("{:<9} {} relations", tier.name(), enumerate_relations(tier).len());
    }
    let full = enumerate_relations(Tier::Full);
    for f in Family::ALL {
        let of: Vec<_> = full.iter().filter(|r| r.family == f).collect();
        println!("family {f}: {:>2}, e.g. {}", of.len(), of[0]);
    }
    println!("derivable, left out:");
    for r in redundant_relations() {
        println!("  {r}");
    }

    // b0 d0 = 1, used right to left inside a longer word
    let r = &full[0];
    let w = parse_word("a1 c1").expect("valid");
    let grown = apply(&w, r, 1, Direction::RtoL).expect("the empty side matches anywhere");
    println!("{w}  ->  {grown}  by  {r}");
}
