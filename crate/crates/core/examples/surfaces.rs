//! Resolutions, Euler characteristic and admissibility of a marked graph.
//!
//! ```bash
//! cargo run --release --example surfaces
//! ```

use threepage::fixtures::W_G;
use threepage::search::SearchBudget;
use threepage::surface::{admissible, euler_characteristic, resolve, resolve_mixed, ResolutionSign, Triviality};
use threepage::word::parse_word;

fn main() {
    let w = parse_word(W_G).unwrap();
    println!("w      {w}");
    for sign in [ResolutionSign::Positive, ResolutionSign::Negative] {
        let r = resolve(&w, sign);
        println!("{sign}    {r}  ({} letters)", r.len());
    }
    let mixed = resolve_mixed(&w, &[ResolutionSign::Positive, ResolutionSign::Negative]);
    println!("mixed  {mixed}");
    println!("chi    {}", euler_characteristic(&w).unwrap());

    let rep = admissible(&w, &SearchBudget::default()).unwrap();
    println!("{}", rep.overall);
    for (sign, t) in [("pos", &rep.positive), ("neg", &rep.negative)] {
        match t {
            Triviality::CertifiedTrivial(p) => println!("  {sign}: unlink, {} rewrite steps", p.len()),
            other => println!("  {sign}: {}", other.label()),
        }
    }
}
