//! Shortlex simplification of a word within its class.
//!
//! ```bash
//! cargo run --release --example simplify
//! ```

use threepage::relations::{RuleSet, Tier};
use threepage::search::{simplify, SearchBudget};
use threepage::word::parse_word;

fn main() {
    let budget = SearchBudget::default().with_max_states(200_000);
    for text in ["a1 b1 d1 c1", "a0 a1 b2 b0 d0 c2 c1", "a1 d1 x1 b1 c1", "b2 a1 c1 d2"] {
        let w = parse_word(text).unwrap();
        let s = simplify(&w, RuleSet::from(Tier::Full), &budget);
        println!("{w}  ~>  {}  ({} steps)", if s.word.is_empty() { "1".into() } else { s.word.to_string() }, s.proof.len());
    }
}
