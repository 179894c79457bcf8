//! Bounded search in the congruence generated by a rule set.
//!
//! Equality in the semigroup is only semi-decidable here: a search either
//! finds a chain of relation applications (which is replayed before it is
//! reported), finds an invariant that the rule set is known to preserve and
//! that differs, or gives up when the budget runs out.

use std::cmp::Reverse;
use std::cell::RefCell;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::commute::{block_form, commute_via_blocks, BlockForm};
use crate::error::ApplyError;
use crate::pages::{decode, page_balance, to_link_diagram};
use crate::relations::{enumerate_relations, Direction, RelationInstance, Rewriter, RuleSet, Step, Tier};
use crate::surface::{euler_characteristic, linking_equivalent, linking_matrix, normalized_bracket};
use crate::word::{Letter, Word};

/// Environment variable overriding the default state budget.
pub const MAX_STATES_ENV: &str = "THREEPAGE_MAX_STATES";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Longest word ever enqueued; `None` means the longest input plus 8.
    pub max_word_length: Option<usize>,
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_word_length: None,
            max_states: 2_000_000,
            max_depth: 24,
        }
    }
}

impl SearchBudget {
    /// The default budget, with `THREEPAGE_MAX_STATES` applied if set.
    pub fn from_env() -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(n) = std::env::var(MAX_STATES_ENV).ok().and_then(|v| v.parse().ok()) {
            b.max_states = n;
        }
        b
    }

    pub fn with_max_states(self, n: usize) -> SearchBudget {
        SearchBudget {
            max_states: n,
            ..self
        }
    }

    pub fn with_max_word_length(self, n: usize) -> SearchBudget {
        SearchBudget {
            max_word_length: Some(n),
            ..self
        }
    }

    pub fn with_max_depth(self, n: usize) -> SearchBudget {
        SearchBudget {
            max_depth: n,
            ..self
        }
    }

    fn length_cap(&self, inputs: &[&Word]) -> usize {
        self.max_word_length
            .unwrap_or_else(|| inputs.iter().map(|w| w.len()).max().unwrap_or(0) + 8)
    }
}

/// A chain of rewrites.
#[derive(Clone, Default, PartialEq, Eq, Serialize)]
pub struct Proof {
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Apply every step in turn, failing at the first one that does not match.
    pub fn replay(&self, from: &Word) -> Result<Word, ApplyError> {
        self.steps.iter().try_fold(from.clone(), |w, s| s.apply(&w))
    }

    /// Every intermediate word, starting with `from`.
    pub fn trace(&self, from: &Word) -> Result<Vec<Word>, ApplyError> {
        let mut out = vec![from.clone()];
        for s in &self.steps {
            let next = s.apply(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// The proof read backwards.
    pub fn inverse(&self) -> Proof {
        Proof {
            steps: self.steps.iter().rev().map(Step::inverse).collect(),
        }
    }

    /// The same rewrites inside a word with `offset` letters in front.
    pub fn shifted(&self, offset: usize) -> Proof {
        Proof {
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    pos: s.pos + offset,
                    ..s.clone()
                })
                .collect(),
        }
    }

    pub fn then(mut self, other: Proof) -> Proof {
        self.steps.extend(other.steps);
        self
    }
}

impl fmt::Debug for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.steps).finish()
    }
}

/// An invariant that separates two words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Exhausted {
    pub states: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Proved(Proof),
    Refuted(Witness),
    Unknown(Exhausted),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Proved(_) => Outcome::Proved,
            Verdict::Refuted(_) => Outcome::Refuted,
            Verdict::Unknown(_) => Outcome::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Proved,
    Refuted,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Proved => "proved",
            Outcome::Refuted => "refuted",
            Outcome::Unknown => "unknown",
        })
    }
}

/// Look for an invariant preserved by every relation of `tier` on which the
/// two words differ.
///
/// * page balance: both sides of every relation have the same balance;
///
/// and, when both words decode to closed diagrams,
///
/// * curve and singular-point counts: equal closed words of the classical
///   and singular tiers are isotopic singular links;
/// * Euler characteristic: isotopy of the represented surface preserves it;
/// * linking matrix and normalized bracket of classical words, outside the
///   full tier: every relation of the singular tier keeps the number of `x`
///   letters, so a path between classical words is a classical isotopy.
pub fn separating_invariant(w1: &Word, w2: &Word, tier: Tier) -> Option<Witness> {
    let wit = |name: &str, a: String, b: String| {
        Some(Witness {
            invariant: name.to_string(),
            left: a,
            right: b,
        })
    };
    let (p1, p2) = (page_balance(w1), page_balance(w2));
    if p1 != p2 {
        return wit("page balance", format!("{p1:?}"), format!("{p2:?}"));
    }
    let (Ok(g1), Ok(g2)) = (decode(w1), decode(w2)) else {
        return None;
    };
    if tier != Tier::Full {
        if g1.component_count() != g2.component_count() {
            return wit(
                "components",
                g1.component_count().to_string(),
                g2.component_count().to_string(),
            );
        }
        if g1.singular_count() != g2.singular_count() {
            return wit(
                "singular points",
                g1.singular_count().to_string(),
                g2.singular_count().to_string(),
            );
        }
    }
    let (c1, c2) = (euler_characteristic(w1).ok()?, euler_characteristic(w2).ok()?);
    if c1 != c2 {
        return wit("euler characteristic", c1.to_string(), c2.to_string());
    }
    if tier == Tier::Full || !w1.is_classical() || !w2.is_classical() {
        return None;
    }
    let (d1, d2) = (to_link_diagram(w1).ok()?, to_link_diagram(w2).ok()?);
    let (m1, m2) = (linking_matrix(&d1), linking_matrix(&d2));
    if !linking_equivalent(&m1, &m2) {
        return wit("linking matrix", format!("{m1:?}"), format!("{m2:?}"));
    }
    if let (Ok(b1), Ok(b2)) = (normalized_bracket(&d1), normalized_bracket(&d2)) {
        // orientation reversal does not change the bracket, mirror does
        if b1 != b2 {
            return wit("normalized bracket", b1.to_string(), b2.to_string());
        }
    }
    None
}

/// Visited words of one search direction, stored as a tree of steps.
struct Tree {
    words: Vec<Word>,
    parent: Vec<Option<(u32, Step)>>,
    index: HashMap<Word, u32>,
}

impl Tree {
    fn new(root: &Word) -> Tree {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Tree {
            words: vec![root.clone()],
            parent: vec![None],
            index,
        }
    }

    fn insert(&mut self, w: Word, from: u32, step: Step) -> Option<u32> {
        if self.index.contains_key(&w) {
            return None;
        }
        let id = self.words.len() as u32;
        self.index.insert(w.clone(), id);
        self.words.push(w);
        self.parent.push(Some((from, step)));
        Some(id)
    }

    /// Steps from the root to node `id`.
    fn path_to(&self, mut id: u32) -> Proof {
        let mut steps = Vec::new();
        while let Some((p, s)) = &self.parent[id as usize] {
            steps.push(s.clone());
            id = *p;
        }
        steps.reverse();
        Proof { steps }
    }
}

fn expand(rw: &Rewriter, tree: &Tree, frontier: &[u32], cap: usize) -> Vec<Vec<(Word, Step)>> {
    frontier
        .par_iter()
        .map(|&id| {
            let mut out = Vec::new();
            rw.successors(&tree.words[id as usize], cap, |w, s| out.push((w, s)));
            out
        })
        .collect()
}

/// Bidirectional breadth-first search. Each round expands a whole layer of
/// the smaller side; the layer is generated in parallel and merged in order,
/// so the result does not depend on scheduling.
pub(crate) fn bidirectional(rw: &Rewriter, w1: &Word, w2: &Word, budget: &SearchBudget) -> Result<Proof, Exhausted> {
    let cap = budget.length_cap(&[w1, w2]);
    let mut sides = [Tree::new(w1), Tree::new(w2)];
    let mut frontiers: [Vec<u32>; 2] = [vec![0], vec![0]];
    let mut depth = [0usize; 2];
    loop {
        let states = sides[0].words.len() + sides[1].words.len();
        let exhausted = Exhausted {
            states,
            depth: depth[0] + depth[1],
        };
        if depth[0] + depth[1] >= budget.max_depth || states >= budget.max_states {
            return Err(exhausted);
        }
        let s = if frontiers[0].len() <= frontiers[1].len() { 0 } else { 1 };
        if frontiers[s].is_empty() {
            // everything reachable under the length cap has been seen
            return Err(exhausted);
        }
        let layer = expand(rw, &sides[s], &frontiers[s], cap);
        let mut next = Vec::new();
        let mut meet: Option<(u32, u32)> = None;
        for (&from, succ) in frontiers[s].iter().zip(layer) {
            for (w, step) in succ {
                let other = sides[1 - s].index.get(&w).copied();
                if let Some(id) = sides[s].insert(w, from, step) {
                    next.push(id);
                    if let Some(o) = other {
                        let better = meet.map_or(true, |(m, _)| {
                            sides[s].words[id as usize].shortlex_cmp(&sides[s].words[m as usize]).is_lt()
                        });
                        if better {
                            meet = Some((id, o));
                        }
                    }
                }
            }
            if sides[0].words.len() + sides[1].words.len() >= budget.max_states && meet.is_none() {
                break;
            }
        }
        depth[s] += 1;
        if let Some((mine, theirs)) = meet {
            let (a, b) = if s == 0 { (mine, theirs) } else { (theirs, mine) };
            let fwd = sides[0].path_to(a);
            let bwd = sides[1].path_to(b);
            return Ok(fwd.then(bwd.inverse()));
        }
        next.sort_by(|&x, &y| sides[s].words[x as usize].shortlex_cmp(&sides[s].words[y as usize]));
        frontiers[s] = next;
    }
}

/// Decide `w1 = w2` within the budget.
///
/// Tries, in order: literal equality, a separating invariant, bidirectional
/// search, and finally simplifying both words and searching between the
/// simplified forms. Any proof is replayed before it is returned.
pub fn equivalent(w1: &Word, w2: &Word, rules: RuleSet, budget: &SearchBudget) -> Verdict {
    // search from the shortlex-smaller word so that the verdict is symmetric
    if w2.shortlex_cmp(w1).is_lt() {
        return match equivalent(w2, w1, rules, budget) {
            Verdict::Proved(p) => Verdict::Proved(p.inverse()),
            Verdict::Refuted(w) => Verdict::Refuted(Witness {
                invariant: w.invariant,
                left: w.right,
                right: w.left,
            }),
            other => other,
        };
    }
    if w1 == w2 {
        return Verdict::Proved(Proof::default());
    }
    if let Some(w) = separating_invariant(w1, w2, rules.tier) {
        return Verdict::Refuted(w);
    }
    let rw = Rewriter::new(rules);
    let verdict = match bidirectional(&rw, w1, w2, budget) {
        Ok(p) => Verdict::Proved(p),
        Err(ex) => match via_normal_forms(&rw, w1, w2, budget) {
            Some(p) => Verdict::Proved(p),
            None => Verdict::Unknown(ex),
        },
    };
    checked(verdict, w1, w2)
}

fn via_normal_forms(rw: &Rewriter, w1: &Word, w2: &Word, budget: &SearchBudget) -> Option<Proof> {
    let (s1, p1) = best_first(rw, w1, budget);
    let (s2, p2) = best_first(rw, w2, budget);
    if (s1.len(), s2.len()) == (w1.len(), w2.len()) {
        return None;
    }
    let middle = if s1 == s2 {
        Proof::default()
    } else {
        bidirectional(rw, &s1, &s2, budget).ok()?
    };
    Some(p1.then(middle).then(p2.inverse()))
}

/// Refuse to report a proof that does not replay.
pub(crate) fn checked(v: Verdict, from: &Word, to: &Word) -> Verdict {
    if let Verdict::Proved(p) = &v {
        let end = p.replay(from).expect("search produced a step that does not apply");
        assert_eq!(&end, to, "search produced a proof ending at the wrong word");
    }
    v
}

/// Best-first exploration by shortlex order; returns the smallest word seen
/// and a proof reaching it.
pub(crate) fn best_first(rw: &Rewriter, w: &Word, budget: &SearchBudget) -> (Word, Proof) {
    best_first_to(rw, w, budget, 0)
}

/// As [`best_first`], but stops at the first word of length `floor` or less.
pub(crate) fn best_first_to(rw: &Rewriter, w: &Word, budget: &SearchBudget, floor: usize) -> (Word, Proof) {
    let cap = budget.length_cap(&[w]);
    let mut tree = Tree::new(w);
    let mut depth = vec![0usize];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((w.len(), w.clone(), 0u32)));
    let mut best = 0u32;
    while let Some(Reverse((_, cur, id))) = heap.pop() {
        if cur.shortlex_cmp(&tree.words[best as usize]).is_lt() {
            best = id;
        }
        if cur.len() <= floor {
            break;
        }
        let d = depth[id as usize];
        if d >= budget.max_depth.max(1) * 4 {
            continue;
        }
        let mut succ = Vec::new();
        rw.successors(&cur, cap, |v, s| succ.push((v, s)));
        for (v, s) in succ {
            if let Some(nid) = tree.insert(v.clone(), id, s) {
                depth.push(d + 1);
                heap.push(Reverse((v.len(), v, nid)));
            }
        }
        if tree.words.len() >= budget.max_states {
            break;
        }
    }
    // a popped word is never smaller than one still queued, but a queued
    // word may beat the best popped one when the budget cuts the search
    for Reverse((_, v, id)) in heap.into_iter() {
        if v.shortlex_cmp(&tree.words[best as usize]).is_lt() {
            best = id;
        }
    }
    (tree.words[best as usize].clone(), tree.path_to(best))
}

/// A shortlex-minimal word among those visited, with a proof from `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Simplified {
    pub word: Word,
    pub proof: Proof,
}

/// Explore the class of `w` in shortlex order and return the smallest word
/// found. Deterministic for a fixed budget.
pub fn simplify(w: &Word, rules: RuleSet, budget: &SearchBudget) -> Simplified {
    let rw = Rewriter::new(rules);
    let (word, proof) = best_first(&rw, w, budget);
    debug_assert_eq!(proof.replay(w).as_ref(), Ok(&word));
    Simplified { word, proof }
}

/// Commutation of a word with each of the 15 generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    pub word: Word,
    /// `w g = g w` for every generator `g`, in code order.
    pub commutations: Vec<(Letter, Verdict)>,
}

impl CentralityReport {
    pub fn outcome(&self) -> Outcome {
        let outcomes: Vec<Outcome> = self.commutations.iter().map(|(_, v)| v.outcome()).collect();
        if outcomes.iter().all(|&o| o == Outcome::Proved) {
            Outcome::Proved
        } else if outcomes.contains(&Outcome::Refuted) {
            Outcome::Refuted
        } else {
            Outcome::Unknown
        }
    }
}

/// Commutation proofs for closed words, with block forms cached per word.
pub(crate) struct Commuter<'a> {
    rw: &'a Rewriter,
    budget: SearchBudget,
    forms: RefCell<HashMap<(Word, u8), Option<BlockForm>>>,
}

impl<'a> Commuter<'a> {
    pub(crate) fn new(rw: &'a Rewriter, budget: &SearchBudget) -> Commuter<'a> {
        Commuter {
            rw,
            budget: *budget,
            forms: RefCell::new(HashMap::new()),
        }
    }

    fn form(&self, w: &Word, i: u8) -> Option<BlockForm> {
        let key = (w.clone(), i);
        if let Some(f) = self.forms.borrow().get(&key) {
            return f.clone();
        }
        let states = self.budget.max_states.min(BLOCK_FORM_STATES);
        let f = block_form(self.rw, w, i, w.len() + 12, states);
        self.forms.borrow_mut().insert(key, f.clone());
        f
    }

    /// `w g = g w` for a closed word `w`.
    ///
    /// A closed factor `z` of `w = l z r` is handled on its own: `z` moves
    /// to the right end, `g` passes `z` and then `l r`, and `z` moves back.
    /// Words without closed factors slide `g` across a block form, or fall
    /// back to search.
    pub(crate) fn commute(&self, w: &Word, g: Letter) -> Result<Proof, Exhausted> {
        let gw = Word::new(vec![g]);
        let (l, r) = (w.concat(&gw), gw.concat(w));
        if l == r {
            return Ok(Proof::default());
        }
        if let Some((a, b)) = closed_factor(w) {
            let z = Word::new(w.letters()[a..b].to_vec());
            let rest = w.splice(a, b - a, &[]);
            let out = self.move_right(&z, a, &w.letters()[b..])?;
            let pass_z = self.commute(&z, g)?.shifted(rest.len());
            let pass_rest = self.commute(&rest, g)?;
            return Ok(out.clone().then(pass_z).then(pass_rest).then(out.inverse().shifted(1)));
        }
        if let Some(p) = commute_via_blocks(self.rw, w, g, |i| self.form(w, i)) {
            return Ok(p);
        }
        bidirectional(self.rw, &l, &r, &self.budget)
    }

    /// Move the closed word `z`, sitting at `at`, to the right across `ys`.
    pub(crate) fn move_right(&self, z: &Word, at: usize, ys: &[Letter]) -> Result<Proof, Exhausted> {
        let mut proof = Proof::default();
        for (j, &y) in ys.iter().enumerate() {
            proof = proof.then(self.commute(z, y)?.shifted(at + j));
        }
        Ok(proof)
    }
}

/// The shortest proper contiguous subword that is a closed diagram,
/// rightmost among equals.
pub(crate) fn closed_factor(w: &Word) -> Option<(usize, usize)> {
    factor_where(w, w.len().saturating_sub(1), |z| decode(z).is_ok())
}

pub(crate) fn factor_where(w: &Word, max_len: usize, ok: impl Fn(&Word) -> bool) -> Option<(usize, usize)> {
    for len in (2..=max_len.min(w.len())).step_by(2) {
        for a in (0..=w.len() - len).rev() {
            let z = Word::new(w.letters()[a..a + len].to_vec());
            if page_balance(&z) == [0; 3] && ok(&z) {
                return Some((a, a + len));
            }
        }
    }
    None
}

/// Word length above which a word is simplified before commuting.
const SIMPLIFY_ABOVE: usize = 4;
/// Cap on the states spent looking for one block form.
const BLOCK_FORM_STATES: usize = 200_000;

/// Is `w` central? Checks `w g = g w` for all 15 generators.
///
/// Long words are simplified first. Each generator is slid across a block
/// form of the (simplified) word where one can be found, and searched for
/// otherwise; the proof is then conjugated back along the simplification,
/// so every proof replays on the original words.
pub fn is_central(w: &Word, rules: RuleSet, budget: &SearchBudget) -> CentralityReport {
    let rw = Rewriter::new(rules);
    let (short, to_short) = if w.len() > SIMPLIFY_ABOVE {
        best_first(&rw, w, budget)
    } else {
        (w.clone(), Proof::default())
    };
    let commuter = Commuter::new(&rw, budget);
    let commutations = Letter::all()
        .map(|g| {
            let gw = Word::new(vec![g]);
            let (lhs, rhs) = (w.concat(&gw), gw.concat(w));
            if let Some(wit) = separating_invariant(&lhs, &rhs, rules.tier) {
                return (g, Verdict::Refuted(wit));
            }
            let v = match commuter.commute(&short, g) {
                Ok(p) => Verdict::Proved(to_short.clone().then(p).then(to_short.inverse().shifted(1))),
                Err(ex) => Verdict::Unknown(ex),
            };
            (g, checked(v, &lhs, &rhs))
        })
        .collect();
    CentralityReport {
        word: w.clone(),
        commutations,
    }
}

/// Replace every step through one of `lemmas` by that lemma's proof, so the
/// result uses only the relations the lemmas were proved from.
fn expand_lemmas(p: &Proof, lemmas: &[(&'static RelationInstance, Proof)]) -> Proof {
    let mut out = Proof::default();
    for s in &p.steps {
        match lemmas.iter().find(|(r, _)| std::ptr::eq(*r, s.relation)) {
            Some((_, q)) => {
                let q = match s.dir {
                    Direction::LtoR => q.clone(),
                    Direction::RtoL => q.inverse(),
                };
                out = out.then(q.shifted(s.pos));
            }
            None => out.steps.push(s.clone()),
        }
    }
    out
}

/// Proofs of the derivable relations from the canonical relations of
/// `tier`. Relations already derived serve as lemmas for the others, and
/// the length cap grows one letter at a time so that small spaces are
/// exhausted first. Returned proofs use canonical relations only.
pub fn derive_redundant(tier: Tier, budget: &SearchBudget) -> Vec<(&'static RelationInstance, Verdict)> {
    let targets: Vec<&'static RelationInstance> =
        crate::relations::redundant_relations().iter().filter(|r| r.in_tier(tier)).collect();
    let mut lemmas: Vec<(&'static RelationInstance, Proof)> = Vec::new();
    let mut last: Vec<Option<Exhausted>> = vec![None; targets.len()];
    let cap = budget.max_word_length.unwrap_or(usize::MAX);
    loop {
        let mut progress = false;
        for (k, &r) in targets.iter().enumerate() {
            if lemmas.iter().any(|(l, _)| std::ptr::eq(*l, r)) {
                continue;
            }
            let mut rules: Vec<&'static RelationInstance> = enumerate_relations(tier).iter().collect();
            rules.extend(lemmas.iter().map(|(l, _)| *l));
            let rw = Rewriter::from_instances(rules);
            let base = r.lhs.len().max(r.rhs.len());
            let top = budget.length_cap(&[&r.lhs, &r.rhs]).min(cap);
            for len in base + 1..=top {
                let b = budget.with_max_word_length(len);
                match bidirectional(&rw, &r.lhs, &r.rhs, &b) {
                    Ok(p) => {
                        let p = expand_lemmas(&p, &lemmas);
                        lemmas.push((r, p));
                        progress = true;
                        break;
                    }
                    Err(e) => {
                        last[k] = Some(e);
                        // the state budget ran out: longer caps only get bigger
                        if e.states >= budget.max_states {
                            break;
                        }
                    }
                }
            }
        }
        if !progress {
            break;
        }
    }
    targets
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let v = match lemmas.iter().find(|(l, _)| std::ptr::eq(*l, r)) {
                Some((_, p)) => checked(Verdict::Proved(p.clone()), &r.lhs, &r.rhs),
                None => Verdict::Unknown(last[k].unwrap_or(Exhausted { states: 0, depth: 0 })),
            };
            (r, v)
        })
        .collect()
}
