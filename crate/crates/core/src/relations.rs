//! The defining relations of the semigroup, grouped into eight families.
//!
//! Families (1)-(3) move classical links, (4)-(5) extend them to singular
//! links and (6)-(8) realise the marked-graph moves that change the surface
//! only up to isotopy in 4-space. Every instance is stored with all indices
//! instantiated, so a relation is just an ordered pair of concrete words.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::ApplyError;
use crate::word::{Kind, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::R1,
        Family::R2,
        Family::R3,
        Family::R4,
        Family::R5,
        Family::R6,
        Family::R7,
        Family::R8,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.number())
    }
}

/// Which sub-presentation to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tier {
    /// Families (1)-(3) without the letter `x`: isotopy of classical links.
    Classical,
    /// Families (1)-(5): isotopy of singular links.
    Singular,
    /// Families (1)-(8): isotopy of 2-links.
    Full,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Classical => "classical",
            Tier::Singular => "singular",
            Tier::Full => "full",
        }
    }
}

impl std::str::FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Tier, String> {
        match s {
            "classical" => Ok(Tier::Classical),
            "singular" => Ok(Tier::Singular),
            "full" => Ok(Tier::Full),
            other => Err(format!("unknown tier {other:?} (classical|singular|full)")),
        }
    }
}

/// A tier plus whether the derivable shortcut relations are included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleSet {
    pub tier: Tier,
    pub redundant: bool,
}

impl RuleSet {
    /// The canonical presentation of `tier`, without shortcuts.
    pub fn canonical(tier: Tier) -> RuleSet {
        RuleSet {
            tier,
            redundant: false,
        }
    }

    /// The canonical relations of `tier` plus the derivable ones.
    pub fn with_redundant(tier: Tier) -> RuleSet {
        RuleSet {
            tier,
            redundant: true,
        }
    }

    pub fn instances(self) -> Vec<&'static RelationInstance> {
        let mut out: Vec<_> = enumerate_relations(self.tier).iter().collect();
        if self.redundant {
            out.extend(redundant_relations().iter().filter(|r| r.in_tier(self.tier)));
        }
        out
    }
}

impl From<Tier> for RuleSet {
    fn from(tier: Tier) -> RuleSet {
        RuleSet::with_redundant(tier)
    }
}

/// One concrete relation `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationInstance {
    pub family: Family,
    /// The index `i` the family template was instantiated with.
    pub index: u8,
    /// Which template inside the family (e.g. the `(u, v)` pair in family (3)).
    pub variant: u8,
    pub lhs: Word,
    pub rhs: Word,
    /// True for relations outside the canonical 96 that follow from them.
    pub redundant: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    LtoR,
    RtoL,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::LtoR => Direction::RtoL,
            Direction::RtoL => Direction::LtoR,
        }
    }
}

impl RelationInstance {
    fn new(family: Family, index: u8, variant: u8, lhs: Word, rhs: Word) -> RelationInstance {
        debug_assert_ne!(lhs, rhs);
        RelationInstance {
            family,
            index,
            variant,
            lhs,
            rhs,
            redundant: false,
        }
    }

    /// `(pattern, replacement)` when applied in `dir`.
    pub fn sides(&self, dir: Direction) -> (&Word, &Word) {
        match dir {
            Direction::LtoR => (&self.lhs, &self.rhs),
            Direction::RtoL => (&self.rhs, &self.lhs),
        }
    }

    pub fn rotate(&self, k: u8) -> RelationInstance {
        RelationInstance {
            family: self.family,
            index: (self.index + k) % 3,
            variant: self.variant,
            lhs: self.lhs.rotate(k),
            rhs: self.rhs.rotate(k),
            redundant: self.redundant,
        }
    }

    pub fn in_tier(&self, tier: Tier) -> bool {
        match tier {
            Tier::Full => true,
            Tier::Singular => self.family <= Family::R5,
            Tier::Classical => {
                self.family <= Family::R3 && self.lhs.is_classical() && self.rhs.is_classical()
            }
        }
    }
}

fn side(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.to_string()
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}  [{}, {}]",
            side(&self.lhs),
            side(&self.rhs),
            self.family.number(),
            self.index
        )
    }
}

impl fmt::Debug for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if self.redundant {
            f.write_str(" (redundant)")?;
        }
        Ok(())
    }
}

// Shorthand for letters with indices taken mod 3.
fn l(kind: Kind, i: i32) -> Letter {
    Letter::new(kind, i.rem_euclid(3) as u8)
}
fn a(i: i32) -> Letter {
    l(Kind::A, i)
}
fn b(i: i32) -> Letter {
    l(Kind::B, i)
}
fn c(i: i32) -> Letter {
    l(Kind::C, i)
}
fn d(i: i32) -> Letter {
    l(Kind::D, i)
}
fn x(i: i32) -> Letter {
    l(Kind::X, i)
}

fn w(letters: &[Letter]) -> Word {
    Word::new(letters.to_vec())
}

fn cat(parts: &[&[Letter]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// The `u` and `v` templates of family (3). The first three `u` and first
/// four `v` contain no `x`.
fn commutation_templates(i: i32) -> (Vec<Vec<Letter>>, Vec<Vec<Letter>>) {
    let u = vec![
        vec![a(i), b(i)],
        vec![d(i), c(i)],
        vec![b(i - 1), d(i), d(i - 1), b(i)],
        vec![d(i), x(i), b(i)],
    ];
    let v = vec![
        vec![a(i + 1)],
        vec![b(i + 1)],
        vec![c(i + 1)],
        vec![b(i), d(i + 1), d(i)],
        vec![x(i + 1)],
    ];
    (u, v)
}

/// `d_i c_i` commuting with `a_{i+1}` or `b_{i+1}`: derivable, so left out
/// of the canonical presentation.
fn is_derivable_commutation(ui: usize, vi: usize) -> bool {
    ui == 1 && (vi == 0 || vi == 1)
}

fn build_full() -> Vec<RelationInstance> {
    let mut out = Vec::new();

    // (1)
    out.push(RelationInstance::new(Family::R1, 0, 0, w(&[d(0), d(1), d(2)]), Word::empty()));
    for i in 0..3 {
        out.push(RelationInstance::new(Family::R1, i as u8, 1, w(&[b(i), d(i)]), Word::empty()));
        if i != 0 {
            out.push(RelationInstance::new(Family::R1, i as u8, 2, w(&[d(i), b(i)]), Word::empty()));
        }
    }

    // (2)
    for i in 0..3 {
        let k = i as u8;
        out.push(RelationInstance::new(Family::R2, k, 0, w(&[a(i)]), w(&[a(i + 1), d(i - 1)])));
        out.push(RelationInstance::new(Family::R2, k, 1, w(&[b(i)]), w(&[a(i - 1), c(i + 1)])));
        out.push(RelationInstance::new(Family::R2, k, 2, w(&[c(i)]), w(&[b(i - 1), c(i + 1)])));
        out.push(RelationInstance::new(Family::R2, k, 3, w(&[d(i)]), w(&[a(i + 1), c(i - 1)])));
    }

    // (3)
    for i in 0..3 {
        let (us, vs) = commutation_templates(i);
        for (ui, u) in us.iter().enumerate() {
            for (vi, v) in vs.iter().enumerate() {
                if is_derivable_commutation(ui, vi) {
                    continue;
                }
                out.push(RelationInstance::new(
                    Family::R3,
                    i as u8,
                    (ui * 5 + vi) as u8,
                    cat(&[u, v]),
                    cat(&[v, u]),
                ));
            }
        }
    }

    // (4)
    for i in 0..3 {
        let k = i as u8;
        out.push(RelationInstance::new(
            Family::R4,
            k,
            0,
            w(&[x(i - 1)]),
            w(&[b(i + 1), x(i), d(i + 1)]),
        ));
        out.push(RelationInstance::new(
            Family::R4,
            k,
            1,
            w(&[b(i), x(i), b(i)]),
            w(&[a(i), b(i), x(i), b(i), c(i)]),
        ));
        out.push(RelationInstance::new(
            Family::R4,
            k,
            2,
            w(&[d(i), x(i), d(i)]),
            w(&[a(i), d(i), x(i), d(i), c(i)]),
        ));
    }

    // (5)
    for i in 0..3 {
        let core = [d(i), x(i), b(i)];
        let squares = [d(i), d(i), d(i + 1), d(i + 1), d(i - 1), d(i - 1)];
        out.push(RelationInstance::new(
            Family::R5,
            i as u8,
            0,
            cat(&[&core, &squares]),
            cat(&[&squares, &core]),
        ));
    }

    // (6)
    for i in 0..3 {
        let k = i as u8;
        out.push(RelationInstance::new(Family::R6, k, 0, w(&[a(i), x(i)]), w(&[a(i)])));
        out.push(RelationInstance::new(
            Family::R6,
            k,
            1,
            w(&[a(i), b(i), x(i), d(i), c(i)]),
            Word::empty(),
        ));
    }

    // (7)
    for i in 0..3 {
        out.push(RelationInstance::new(
            Family::R7,
            i as u8,
            0,
            w(&[d(i), x(i), b(i), c(i), x(i)]),
            w(&[b(i), x(i), d(i), c(i), x(i)]),
        ));
    }

    // (8), with w_i = a_i b_i x_i b_i c_i written out.
    for i in 0..3 {
        let wi = [a(i), b(i), x(i), b(i), c(i)];
        let lhs_tail = [
            d(i + 1),
            d(i),
            d(i),
            d(i - 1),
            a(i + 1),
            b(i + 1),
            x(i),
            b(i),
            d(i + 1),
            b(i),
            b(i),
            b(i + 1),
            d(i),
            d(i),
        ];
        let rhs_tail = [
            b(i - 1),
            b(i),
            a(i),
            b(i + 1),
            a(i + 1),
            d(i),
            d(i),
            c(i - 1),
            b(i),
            x(i),
            b(i),
        ];
        out.push(RelationInstance::new(
            Family::R8,
            i as u8,
            0,
            cat(&[&wi, &lhs_tail]),
            cat(&[&wi, &rhs_tail]),
        ));
    }

    out
}

fn build_redundant() -> Vec<RelationInstance> {
    let mut out = vec![RelationInstance {
        redundant: true,
        ..RelationInstance::new(Family::R1, 0, 2, w(&[d(0), b(0)]), Word::empty())
    }];
    for i in 0..3 {
        let (us, vs) = commutation_templates(i);
        for (ui, u) in us.iter().enumerate() {
            for (vi, v) in vs.iter().enumerate() {
                if is_derivable_commutation(ui, vi) {
                    out.push(RelationInstance {
                        redundant: true,
                        ..RelationInstance::new(
                            Family::R3,
                            i as u8,
                            (ui * 5 + vi) as u8,
                            cat(&[u, v]),
                            cat(&[v, u]),
                        )
                    });
                }
            }
        }
    }
    out
}

fn full_table() -> &'static [RelationInstance] {
    static TABLE: OnceLock<Vec<RelationInstance>> = OnceLock::new();
    TABLE.get_or_init(build_full)
}

fn tier_tables() -> &'static [Vec<RelationInstance>; 3] {
    static TABLES: OnceLock<[Vec<RelationInstance>; 3]> = OnceLock::new();
    TABLES.get_or_init(|| {
        let pick = |t: Tier| full_table().iter().filter(|r| r.in_tier(t)).cloned().collect();
        [pick(Tier::Classical), pick(Tier::Singular), pick(Tier::Full)]
    })
}

/// The canonical relations of a tier: 48 classical, 84 singular, 96 in all.
pub fn enumerate_relations(tier: Tier) -> &'static [RelationInstance] {
    let t = tier_tables();
    match tier {
        Tier::Classical => &t[0],
        Tier::Singular => &t[1],
        Tier::Full => &t[2],
    }
}

/// The seven relations that follow from the canonical ones: `d_0 b_0 = 1`
/// and the commutations of `d_i c_i` with `a_{i+1}` and `b_{i+1}`.
pub fn redundant_relations() -> &'static [RelationInstance] {
    static TABLE: OnceLock<Vec<RelationInstance>> = OnceLock::new();
    TABLE.get_or_init(build_redundant)
}

/// Replace the occurrence of one side of `r` at `pos` by the other side.
pub fn apply(
    w: &Word,
    r: &RelationInstance,
    pos: usize,
    dir: Direction,
) -> Result<Word, ApplyError> {
    let (from, to) = r.sides(dir);
    if pos > w.len() || !w.matches_at(from, pos) {
        return Err(ApplyError::NoMatch {
            side: side(from),
            pos,
        });
    }
    Ok(w.splice(pos, from.len(), to))
}

/// A single rewrite: which relation, where, and which way.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub relation: &'static RelationInstance,
    pub pos: usize,
    pub dir: Direction,
}

impl Step {
    pub fn apply(&self, w: &Word) -> Result<Word, ApplyError> {
        apply(w, self.relation, self.pos, self.dir)
    }

    /// The step that undoes this one on the result word.
    pub fn inverse(&self) -> Step {
        Step {
            relation: self.relation,
            pos: self.pos,
            dir: self.dir.reverse(),
        }
    }
}

impl fmt::Debug for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.dir {
            Direction::LtoR => "->",
            Direction::RtoL => "<-",
        };
        write!(f, "{arrow} @{} {}", self.pos, self.relation)
    }
}

/// Directed rewrite rules compiled from a rule set, indexed for matching.
pub struct Rewriter {
    /// Rules whose pattern starts with a given letter code.
    by_first: Vec<Vec<(Vec<Letter>, Step)>>,
    /// Rules with an empty pattern (insertions of a word equal to 1).
    insertions: Vec<Step>,
}

impl Rewriter {
    pub fn new(rules: RuleSet) -> Rewriter {
        Rewriter::from_instances(rules.instances())
    }

    /// Rules from an explicit list of relations.
    pub fn from_instances(relations: Vec<&'static RelationInstance>) -> Rewriter {
        let mut by_first = vec![Vec::new(); 15];
        let mut insertions = Vec::new();
        for r in relations {
            for dir in [Direction::LtoR, Direction::RtoL] {
                let (from, _) = r.sides(dir);
                let step = Step {
                    relation: r,
                    pos: 0,
                    dir,
                };
                match from.first() {
                    None => insertions.push(step),
                    Some(first) => by_first[first.code() as usize].push((from.to_vec(), step)),
                }
            }
        }
        Rewriter {
            by_first,
            insertions,
        }
    }

    /// Every single-step rewrite of `w`, with the step that produced it.
    /// Words longer than `max_len` are skipped.
    pub fn successors(&self, w: &Word, max_len: usize, mut f: impl FnMut(Word, Step)) {
        let n = w.len();
        for pos in 0..=n {
            for s in &self.insertions {
                let (_, to) = s.relation.sides(s.dir);
                if n + to.len() <= max_len {
                    f(w.splice(pos, 0, to), Step { pos, ..s.clone() });
                }
            }
            if pos == n {
                break;
            }
            for (pattern, s) in &self.by_first[w[pos].code() as usize] {
                if w.matches_at(pattern, pos) {
                    let (_, to) = s.relation.sides(s.dir);
                    if n - pattern.len() + to.len() <= max_len {
                        f(w.splice(pos, pattern.len(), to), Step { pos, ..s.clone() });
                    }
                }
            }
        }
    }
}

/// All words one relation application away from `w`, in shortlex order.
pub fn neighbors(w: &Word, rules: impl Into<RuleSet>) -> Vec<Word> {
    let rw = Rewriter::new(rules.into());
    let mut set = BTreeSet::new();
    rw.successors(w, usize::MAX, |v, _| {
        set.insert(v);
    });
    let mut v: Vec<Word> = set.into_iter().collect();
    v.sort_by(|p, q| p.shortlex_cmp(q));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word;

    fn count(tier: Tier, fam: Family) -> usize {
        enumerate_relations(tier).iter().filter(|r| r.family == fam).count()
    }

    #[test]
    fn every_relation_preserves_page_balance() {
        use crate::pages::page_balance;
        for r in enumerate_relations(Tier::Full).iter().chain(redundant_relations()) {
            assert_eq!(page_balance(&r.lhs), page_balance(&r.rhs), "{r}");
        }
    }

    #[test]
    fn census() {
        assert_eq!(enumerate_relations(Tier::Full).len(), 96);
        let breakdown: Vec<usize> = Family::ALL.iter().map(|&f| count(Tier::Full, f)).collect();
        assert_eq!(breakdown, vec![6, 12, 54, 9, 3, 6, 3, 3]);
        assert_eq!(enumerate_relations(Tier::Singular).len(), 84);
        assert_eq!(enumerate_relations(Tier::Classical).len(), 48);
        assert_eq!(redundant_relations().len(), 7);
    }

    #[test]
    fn tiers_are_nested() {
        let classical: BTreeSet<String> =
            enumerate_relations(Tier::Classical).iter().map(|r| format!("{r}")).collect();
        let singular: BTreeSet<String> =
            enumerate_relations(Tier::Singular).iter().map(|r| format!("{r}")).collect();
        let full: BTreeSet<String> =
            enumerate_relations(Tier::Full).iter().map(|r| format!("{r}")).collect();
        assert!(classical.is_subset(&singular));
        assert!(singular.is_subset(&full));
    }

    #[test]
    fn sides_differ_and_are_unique() {
        let mut seen = BTreeSet::new();
        for r in enumerate_relations(Tier::Full).iter().chain(redundant_relations()) {
            assert_ne!(r.lhs, r.rhs);
            assert!(seen.insert((r.lhs.clone(), r.rhs.clone())), "duplicate {r}");
        }
    }

    #[test]
    fn excluded_relation_is_d0_b0() {
        let full = enumerate_relations(Tier::Full);
        assert!(!full.iter().any(|r| r.lhs == word!("d0 b0")));
        assert!(full.iter().any(|r| r.lhs == word!("d1 b1")));
        assert!(redundant_relations().iter().any(|r| r.lhs == word!("d0 b0")));
    }

    fn find(lhs: &str, rhs: &str) -> &'static RelationInstance {
        let (lhs, rhs) = (word!(lhs), word!(rhs));
        enumerate_relations(Tier::Full)
            .iter()
            .find(|r| r.lhs == lhs && r.rhs == rhs)
            .unwrap_or_else(|| panic!("no relation {lhs} = {rhs}"))
    }

    #[test]
    fn apply_cancellation() {
        let r = find("b0 d0", "");
        assert_eq!(apply(&word!("b0 d0 a1"), r, 0, Direction::LtoR).unwrap(), word!("a1"));
    }

    #[test]
    fn apply_insertion_of_x() {
        let r = find("a1 x1", "a1");
        assert_eq!(apply(&word!("a1"), r, 0, Direction::RtoL).unwrap(), word!("a1 x1"));
    }

    #[test]
    fn apply_relation_seven() {
        let r = find("d1 x1 b1 c1 x1", "b1 x1 d1 c1 x1");
        assert_eq!(
            apply(&word!("d1 x1 b1 c1 x1"), r, 0, Direction::LtoR).unwrap(),
            word!("b1 x1 d1 c1 x1")
        );
    }

    #[test]
    fn apply_rejects_mismatch() {
        let r = find("b0 d0", "");
        assert!(apply(&word!("a1 b0 d0"), r, 0, Direction::LtoR).is_err());
        assert!(apply(&word!("b0"), r, 0, Direction::LtoR).is_err());
        assert!(apply(&word!("b0"), r, 5, Direction::RtoL).is_err());
    }

    #[test]
    fn relation_eight_has_expected_shape() {
        let r8: Vec<_> =
            enumerate_relations(Tier::Full).iter().filter(|r| r.family == Family::R8).collect();
        let one = r8.iter().find(|r| r.index == 1).unwrap();
        assert_eq!(
            one.lhs,
            word!("a1 b1 x1 b1 c1 d2 d1 d1 d0 a2 b2 x1 b1 d2 b1 b1 b2 d1 d1")
        );
        assert_eq!(one.rhs, word!("a1 b1 x1 b1 c1 b0 b1 a1 b2 a2 d1 d1 c0 b1 x1 b1"));
    }

    #[test]
    fn empty_word_neighbors_are_insertions() {
        let ns = neighbors(&Word::empty(), Tier::Classical);
        for expect in ["b0 d0", "d0 b0", "d0 d1 d2", "b1 d1", "d2 b2"] {
            assert!(ns.contains(&word!(expect)), "{expect}");
        }
        // every neighbour of the identity is an inserted relator
        let relators: BTreeSet<Word> = RuleSet::with_redundant(Tier::Classical)
            .instances()
            .into_iter()
            .filter(|r| r.rhs.is_empty())
            .map(|r| r.lhs.clone())
            .collect();
        assert_eq!(ns.iter().cloned().collect::<BTreeSet<_>>(), relators);
    }

    #[test]
    fn a_x_reduces_in_full_tier() {
        assert!(neighbors(&word!("a1 x1"), Tier::Full).contains(&word!("a1")));
        assert!(!neighbors(&word!("a1 x1"), Tier::Singular).contains(&word!("a1")));
    }

    #[test]
    fn neighbors_are_monotone_in_tier() {
        for text in ["a0 b0 c1", "d1 x1 b1 c1 x1", "b2 x2 b2", ""] {
            let w = word!(text);
            let c: BTreeSet<_> = neighbors(&w, Tier::Classical).into_iter().collect();
            let s: BTreeSet<_> = neighbors(&w, Tier::Singular).into_iter().collect();
            let f: BTreeSet<_> = neighbors(&w, Tier::Full).into_iter().collect();
            assert!(c.is_subset(&s) && s.is_subset(&f), "{text}");
        }
    }

    #[test]
    fn rotation_equivariance_of_apply() {
        let w = word!("a0 b0 a1 d2 x1 b1 c1");
        for r in enumerate_relations(Tier::Full) {
            for dir in [Direction::LtoR, Direction::RtoL] {
                for pos in 0..=w.len() {
                    if let Ok(v) = apply(&w, r, pos, dir) {
                        let rotated = apply(&w.rotate(1), &r.rotate(1), pos, dir).unwrap();
                        assert_eq!(v.rotate(1), rotated);
                    }
                }
            }
        }
    }

    #[test]
    fn families_two_to_eight_are_closed_under_rotation() {
        let all: BTreeSet<(Word, Word)> = enumerate_relations(Tier::Full)
            .iter()
            .chain(redundant_relations())
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect();
        for r in enumerate_relations(Tier::Full).iter().chain(redundant_relations()) {
            if r.family == Family::R1 && r.variant == 0 {
                continue;
            }
            let s = r.rotate(1);
            assert!(all.contains(&(s.lhs.clone(), s.rhs.clone())), "{r} rotated");
        }
    }
}
