//! Does a closed word commute with every generator?
//!
//! Each commutation is either proved by a replayable rewrite, refuted by an
//! invariant, or left open by the budget.
//!
//! ```bash
//! cargo run --release --example centrality
//! ```

use threepage::fixtures::{UNKNOT, W_G};
use threepage::relations::{RuleSet, Tier};
use threepage::search::{is_central, SearchBudget, Verdict};
use threepage::word::{parse_word, Word};

fn main() {
    let budget = SearchBudget::default().with_max_states(20_000);
    for text in [UNKNOT, W_G] {
        let w = parse_word(text).unwrap();
        let rep = is_central(&w, RuleSet::from(Tier::Singular), &budget);
        println!("{w}: {}", rep.outcome());
        for (g, v) in &rep.commutations {
            match v {
                Verdict::Proved(p) => {
                    let lhs = w.concat(&Word::new(vec![*g]));
                    assert_eq!(p.replay(&lhs).unwrap(), Word::new(vec![*g]).concat(&w));
                    println!("  {g}: proved, {} steps", p.len());
                }
                Verdict::Refuted(wit) => println!("  {g}: refuted by {}", wit.invariant),
                Verdict::Unknown(e) => println!("  {g}: unknown after {} states", e.states),
            }
        }
    }
}
