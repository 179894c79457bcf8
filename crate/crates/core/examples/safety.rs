//! Relation safety: random contexts around every relation, and a corrupted
//! letter table being caught.
//!
//! ```bash
//! cargo run --release --example safety
//! ```

use threepage::cli::corrupted_table;
use threepage::pages::PictureTable;
use threepage::relations::{enumerate_relations, Tier};
use threepage::safety::{check_relations, SafetyOptions};

fn main() {
    let opts = SafetyOptions {
        contexts: 20,
        ..SafetyOptions::default()
    };
    let rep = check_relations(PictureTable::standard(), enumerate_relations(Tier::Full), &opts);
    println!(
        "standard table: {} cases, {} admissibility and {} bracket comparisons, {} violations",
        rep.cases,
        rep.admissibility_compared,
        rep.bracket_compared,
        rep.violations.len()
    );

    let quick = SafetyOptions {
        contexts: 10,
        semantic: false,
        ..SafetyOptions::default()
    };
    let rep = check_relations(&corrupted_table(), enumerate_relations(Tier::Full), &quick);
    println!("corrupted table: {} violations", rep.violations.len());
    for v in rep.violations.iter().take(3) {
        println!("  {} [{}]: {}", v.relation, v.check, v.detail);
        println!("    lhs {}", v.lhs_word);
    }
}
