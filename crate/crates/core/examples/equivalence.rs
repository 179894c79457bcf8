//! Bounded search for rewrite proofs, and invariants that rule them out.
//!
//! ```bash
//! cargo run --release --example equivalence
//! ```

use threepage::fixtures::{TREFOIL, UNKNOT};
use threepage::relations::{RuleSet, Tier};
use threepage::search::{equivalent, SearchBudget, Verdict};
use threepage::word::{parse_word, Word};

fn show(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn main() {
    let budget = SearchBudget::default();
    let cases = [
        ("a1 x1", "a1", Tier::Full),
        ("a1 b1 x1 d1 c1", "", Tier::Full),
        ("d0 b0", "", Tier::Classical),
        (TREFOIL, UNKNOT, Tier::Classical),
        ("a1 x1 c1", "a1 c1", Tier::Singular),
    ];
    for (a, b, tier) in cases {
        let (w1, w2) = (parse_word(a).unwrap(), parse_word(b).unwrap());
        print!("[{}] {} = {}?  ", tier.name(), show(&w1), show(&w2));
        match equivalent(&w1, &w2, RuleSet::from(tier), &budget) {
            Verdict::Proved(p) => {
                println!("proved in {} steps", p.len());
                for (s, w) in p.steps.iter().zip(p.trace(&w1).unwrap().iter().skip(1)) {
                    println!("    {s:?}  =>  {}", show(w));
                }
            }
            Verdict::Refuted(wit) => println!("refuted by {}: {} vs {}", wit.invariant, wit.left, wit.right),
            Verdict::Unknown(e) => println!("unknown after {} states", e.states),
        }
    }
}
