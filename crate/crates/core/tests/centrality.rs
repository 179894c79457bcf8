//! Closed words against centrality, on samples: closed words should commute
//! with every generator, words with open ends should not be provably central.

use threepage::fixtures::{unlink, UNKNOT};
use threepage::pages::decode;
use threepage::relations::{RuleSet, Tier};
use threepage::search::{is_central, Outcome, SearchBudget, Verdict};
use threepage::word::{parse_word, Word};

fn budget() -> SearchBudget {
    SearchBudget::default().with_max_states(20_000)
}

#[test]
fn closed_samples_are_central() {
    let mut words = vec![parse_word(UNKNOT).unwrap(), unlink(2)];
    words.extend((1..3).map(|k| parse_word(UNKNOT).unwrap().rotate(k)));
    for w in words {
        assert!(decode(&w).is_ok());
        let rep = is_central(&w, RuleSet::from(Tier::Singular), &budget());
        assert_eq!(rep.outcome(), Outcome::Proved, "{w}");
        for (g, v) in &rep.commutations {
            let Verdict::Proved(p) = v else { unreachable!() };
            let gw = Word::new(vec![*g]);
            assert_eq!(p.replay(&w.concat(&gw)).unwrap(), gw.concat(&w), "{w} {g}");
        }
    }
}

#[test]
fn open_samples_are_not_proved_central() {
    for text in ["a0", "b1", "a1 b1", "d2 d2"] {
        let w = parse_word(text).unwrap();
        assert!(decode(&w).is_err());
        let rep = is_central(&w, RuleSet::from(Tier::Singular), &budget());
        assert_ne!(rep.outcome(), Outcome::Proved, "{w}");
    }
}
