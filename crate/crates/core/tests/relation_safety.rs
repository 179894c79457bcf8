//! Every relation in random closing contexts, against every invariant it
//! must preserve; and a corrupted letter table being caught.

use threepage::cli::corrupted_table;
use threepage::pages::PictureTable;
use threepage::relations::{enumerate_relations, redundant_relations, Tier};
use threepage::safety::{check_relations, SafetyOptions};

#[test]
fn canonical_relations_are_safe() {
    let rep = check_relations(PictureTable::standard(), enumerate_relations(Tier::Full), &SafetyOptions::default());
    assert!(rep.passed(), "{:#?}", &rep.violations[..rep.violations.len().min(5)]);
    assert_eq!(rep.cases, 96 * 200);
    assert_eq!(rep.undecodable, 0);
    assert!(rep.bracket_compared > 0 && rep.admissibility_compared > 0);
}

#[test]
fn derivable_relations_are_safe() {
    let opts = SafetyOptions {
        contexts: 50,
        ..SafetyOptions::default()
    };
    let rep = check_relations(PictureTable::standard(), redundant_relations(), &opts);
    assert!(rep.passed(), "{:?}", rep.violations.first());
}

#[test]
fn corrupted_table_is_named() {
    let opts = SafetyOptions {
        contexts: 20,
        semantic: false,
        ..SafetyOptions::default()
    };
    let rep = check_relations(&corrupted_table(), enumerate_relations(Tier::Full), &opts);
    assert!(!rep.passed());
    // every violation involves the corrupted letter
    assert!(rep.violations.iter().all(|v| v.relation.contains("b1")), "{:?}", rep.violations);
}
