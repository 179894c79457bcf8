//! Relation safety: every relation, placed in random closing contexts,
//! must leave the invariants it is supposed to preserve unchanged.
//!
//! Which invariants a relation must preserve depends on its tier:
//!
//! | checked on both sides      | relations                       |
//! |----------------------------|---------------------------------|
//! | decodes or not             | all                             |
//! | curve and singular counts  | singular tier (isotopies)       |
//! | `χ`, admissibility         | all (surface isotopies)         |
//! | linking matrix, bracket    | classical tier, classical words |
//!
//! Contexts come from [`crate::random::context`]; each relation gets its
//! own seed, so reports do not depend on thread scheduling.

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::pages::{decode_with, to_link_diagram, PictureTable};
use crate::relations::{RelationInstance, Tier};
use crate::search::SearchBudget;
use crate::surface::{
    admissible, linking_equivalent, linking_matrix, normalized_bracket, resolve, same_up_to_orientation,
    Admissibility, ResolutionSign,
};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct SafetyOptions {
    /// Contexts per relation.
    pub contexts: usize,
    /// Random letters on each side of the relation, at most.
    pub noise: usize,
    pub seed: u64,
    /// Also compare `χ`, admissibility, linking and bracket. These use the
    /// standard letter table whatever table is being checked.
    pub semantic: bool,
    /// Budget for each triviality check behind admissibility.
    pub budget: SearchBudget,
}

impl Default for SafetyOptions {
    fn default() -> SafetyOptions {
        SafetyOptions {
            contexts: 200,
            noise: 4,
            seed: 0x5eed,
            semantic: true,
            budget: SearchBudget::default().with_max_states(300),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// The relation, as printed by `relations --list`.
    pub relation: String,
    pub check: &'static str,
    pub lhs_word: String,
    pub rhs_word: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SafetyReport {
    pub relations: usize,
    pub cases: usize,
    /// Cases where both sides failed to decode with the checked table.
    pub undecodable: usize,
    /// Admissibility comparisons with a definite verdict on both sides.
    pub admissibility_compared: usize,
    /// Admissibility comparisons left open by the search budget.
    pub admissibility_unknown: usize,
    pub bracket_compared: usize,
    pub violations: Vec<Violation>,
}

impl SafetyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn absorb(&mut self, other: SafetyReport) {
        self.relations += other.relations;
        self.cases += other.cases;
        self.undecodable += other.undecodable;
        self.admissibility_compared += other.admissibility_compared;
        self.admissibility_unknown += other.admissibility_unknown;
        self.bracket_compared += other.bracket_compared;
        self.violations.extend(other.violations);
    }
}

/// Check `relations` against `table`.
pub fn check_relations(table: &PictureTable, relations: &[RelationInstance], opts: &SafetyOptions) -> SafetyReport {
    let parts: Vec<SafetyReport> = relations
        .par_iter()
        .enumerate()
        .map(|(k, r)| check_one(table, r, opts, opts.seed.wrapping_add(k as u64 * 0x9e37_79b9)))
        .collect();
    let mut report = SafetyReport::default();
    for p in parts {
        report.absorb(p);
    }
    report
}

fn check_one(table: &PictureTable, r: &RelationInstance, opts: &SafetyOptions, seed: u64) -> SafetyReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rep = SafetyReport {
        relations: 1,
        ..SafetyReport::default()
    };
    let isotopy = r.in_tier(Tier::Singular);
    let classical = r.in_tier(Tier::Classical);
    for case in 0..opts.contexts {
        let noise = case % (opts.noise + 1);
        // classical relations get classical contexts half of the time
        let singular = !(classical && case % 2 == 0);
        let (u, v) = crate::random::context(&mut rng, &r.lhs, noise, singular);
        let lw = u.concat(&r.lhs).concat(&v);
        let rw = u.concat(&r.rhs).concat(&v);
        rep.cases += 1;
        let mut fail = |check: &'static str, detail: String| {
            rep.violations.push(Violation {
                relation: r.to_string(),
                check,
                lhs_word: lw.to_string(),
                rhs_word: rw.to_string(),
                detail,
            });
        };
        let (dl, dr) = (decode_with(table, &lw), decode_with(table, &rw));
        let (gl, gr) = match (dl, dr) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(_), Err(_)) => {
                rep.undecodable += 1;
                continue;
            }
            (a, b) => {
                fail("decode", format!("lhs: {:?}, rhs: {:?}", a.err(), b.err()));
                continue;
            }
        };
        if isotopy {
            if gl.component_count() != gr.component_count() {
                fail(
                    "components",
                    format!("{} vs {}", gl.component_count(), gr.component_count()),
                );
            }
            if gl.singular_count() != gr.singular_count() {
                fail("singular points", format!("{} vs {}", gl.singular_count(), gr.singular_count()));
            }
        }
        let chi = |w: &Word| -> Option<i64> {
            let c = |s| decode_with(table, &resolve(w, s)).ok().map(|g| g.component_count() as i64);
            Some(c(ResolutionSign::Positive)? + c(ResolutionSign::Negative)? - w.singular_count() as i64)
        };
        let (xl, xr) = (chi(&lw), chi(&rw));
        if xl != xr {
            fail("euler characteristic", format!("{xl:?} vs {xr:?}"));
        }
        if !opts.semantic {
            continue;
        }
        match (admissible(&lw, &opts.budget), admissible(&rw, &opts.budget)) {
            (Ok(a), Ok(b)) => match (a.overall, b.overall) {
                (Admissibility::Unknown, _) | (_, Admissibility::Unknown) => rep.admissibility_unknown += 1,
                (x, y) if x == y => rep.admissibility_compared += 1,
                (x, y) => fail("admissibility", format!("{x} vs {y}")),
            },
            (a, b) => fail("admissibility", format!("lhs: {:?}, rhs: {:?}", a.err(), b.err())),
        }
        if classical && lw.is_classical() {
            let (Ok(pl), Ok(pr)) = (to_link_diagram(&lw), to_link_diagram(&rw)) else {
                fail("projection", "classical words failed to project".into());
                continue;
            };
            if !linking_equivalent(&linking_matrix(&pl), &linking_matrix(&pr)) {
                fail("linking matrix", format!("{:?} vs {:?}", linking_matrix(&pl), linking_matrix(&pr)));
            }
            if let (Ok(bl), Ok(br)) = (normalized_bracket(&pl), normalized_bracket(&pr)) {
                rep.bracket_compared += 1;
                if !same_up_to_orientation(&bl, &br) {
                    fail("bracket", format!("{bl} vs {br}"));
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pages::{ArcEnd, LocalPicture, Page, Side};
    use crate::relations::enumerate_relations;
    use crate::word::{Kind, Letter};

    fn quick() -> SafetyOptions {
        SafetyOptions {
            contexts: 8,
            semantic: false,
            ..SafetyOptions::default()
        }
    }

    #[test]
    fn standard_table_is_safe() {
        let rep = check_relations(PictureTable::standard(), enumerate_relations(Tier::Full), &quick());
        assert!(rep.passed(), "{:?}", rep.violations.first());
        assert_eq!(rep.cases, 96 * 8);
    }

    #[test]
    fn corrupted_table_is_caught_by_name() {
        // b1 drawn like d1, running the other way along the axis
        let b1 = Letter::new(Kind::B, 1);
        let bad = LocalPicture {
            ends: vec![
                ArcEnd {
                    page: Page::P2,
                    side: Side::Left,
                },
                ArcEnd {
                    page: Page::P0,
                    side: Side::Right,
                },
            ],
            branches: None,
        };
        let table = PictureTable::standard().with_entry(b1, bad);
        let rep = check_relations(&table, enumerate_relations(Tier::Full), &quick());
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|v| v.relation.contains("b1")), "{:?}", rep.violations[0]);
    }
}
