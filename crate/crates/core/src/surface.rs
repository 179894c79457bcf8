//! Resolutions, Euler characteristic and classical link invariants.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{BracketError, DecodeError, DiagramError};
use crate::fixtures::unlink;
use crate::pages::{component_count, to_link_diagram, LinkDiagram};
use crate::relations::{Rewriter, RuleSet, Tier};
use crate::search::{best_first_to, bidirectional, checked, equivalent, Commuter, factor_where, Proof, SearchBudget, Verdict, Witness};
use crate::poly::LaurentPoly;
use crate::word::{Kind, Letter, Word};

/// Default crossing cap for [`kauffman_bracket`].
pub const BRACKET_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ResolutionSign {
    Positive,
    Negative,
}

impl FromStr for ResolutionSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pos" | "+" | "positive" => Ok(ResolutionSign::Positive),
            "neg" | "-" | "negative" => Ok(ResolutionSign::Negative),
            _ => Err(format!("unknown sign {s:?} (expected pos or neg)")),
        }
    }
}

impl fmt::Display for ResolutionSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResolutionSign::Positive => "pos",
            ResolutionSign::Negative => "neg",
        })
    }
}

/// Resolve every singular point with the same sign: `x_i` is deleted
/// (positive) or replaced by `c_i a_i` (negative).
pub fn resolve(w: &Word, sign: ResolutionSign) -> Word {
    let n = w.singular_count();
    resolve_mixed(w, &vec![sign; n])
}

/// Resolve the `k`-th singular letter with `signs[k]`.
///
/// Experimental: nothing guarantees that a mixed resolution is a
/// cross-section of the surface.
pub fn resolve_mixed(w: &Word, signs: &[ResolutionSign]) -> Word {
    assert_eq!(signs.len(), w.singular_count(), "one sign per singular letter");
    let mut out = Vec::with_capacity(w.len() + signs.len());
    let mut k = 0;
    for &l in w.iter() {
        if !l.is_singular() {
            out.push(l);
            continue;
        }
        if signs[k] == ResolutionSign::Negative {
            out.push(Letter::new(Kind::C, l.index()));
            out.push(Letter::new(Kind::A, l.index()));
        }
        k += 1;
    }
    Word::new(out)
}

/// `c_- + c_+ - s`: minima and maxima cap the two resolutions, each
/// singular point is a saddle. For a classical word this is twice the
/// component count.
pub fn euler_characteristic(w: &Word) -> Result<i64, DecodeError> {
    crate::pages::decode(w)?;
    let neg = component_count(&resolve(w, ResolutionSign::Negative))?;
    let pos = component_count(&resolve(w, ResolutionSign::Positive))?;
    Ok(neg as i64 + pos as i64 - w.singular_count() as i64)
}

/// Pairwise linking numbers, components oriented as listed in the diagram.
pub fn linking_matrix(d: &LinkDiagram) -> Vec<Vec<i64>> {
    let n = d.component_count();
    let owner = d.component_of_edges();
    let mut twice = vec![vec![0i64; n]; n];
    for c in &d.crossings {
        let (i, j) = (owner[c.ends[0]], owner[c.ends[1]]);
        if i != j {
            twice[i][j] += c.sign as i64;
            twice[j][i] += c.sign as i64;
        }
    }
    twice
        .into_iter()
        .map(|row| row.into_iter().map(|v| v / 2).collect())
        .collect()
}

/// Compare linking matrices up to relabelling components and reversing
/// orientations (which flips the signs of a row and column together).
pub fn linking_equivalent(m1: &[Vec<i64>], m2: &[Vec<i64>]) -> bool {
    if m1.len() != m2.len() {
        return false;
    }
    // the absolute values must match under some permutation; the sign
    // pattern must match up to a diagonal +-1 conjugation
    linking_canonical(m1) == linking_canonical(m2)
}

/// A canonical form under simultaneous permutation and orientation flips.
/// Exhaustive over permutations for small matrices, falls back to sorted
/// row multisets of absolute values beyond 7 components.
fn linking_canonical(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n > 7 {
        let mut rows: Vec<Vec<i64>> = m
            .iter()
            .map(|r| {
                let mut r: Vec<i64> = r.iter().map(|v| v.abs()).collect();
                r.sort();
                r
            })
            .collect();
        rows.sort();
        return rows;
    }
    let mut best: Option<Vec<Vec<i64>>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        for flips in 0u32..(1 << n) {
            let s = |i: usize| if flips >> i & 1 == 1 { -1 } else { 1 };
            let cand: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| s(i) * s(j) * m[p[i]][p[j]]).collect())
                .collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    });
    best.unwrap_or_default()
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Kauffman bracket `<D>` with `<O> = 1`, computed by contracting crossings
/// one at a time while tracking how the open strands are connected.
///
/// The empty diagram has bracket 1.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly, BracketError> {
    kauffman_bracket_capped(d, BRACKET_CAP)
}

pub fn kauffman_bracket_capped(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly, BracketError> {
    let n = d.crossing_count();
    if n > cap {
        return Err(BracketError::TooManyCrossings { crossings: n, cap });
    }
    if d.component_count() == 0 {
        return Ok(LaurentPoly::one());
    }
    let delta = LaurentPoly::loop_value();
    let free = d
        .components
        .iter()
        .filter(|c| c.len() == 1 && !d.crossings.iter().any(|x| x.ends.contains(&c[0])))
        .count();

    // state: sorted list of (edge, partner) for every half-finished strand
    type State = Vec<(usize, usize)>;
    let mut states: HashMap<State, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one());
    for k in contraction_order(d) {
        let [a, b, c, e] = d.crossings[k].ends;
        let mut next: HashMap<State, LaurentPoly> = HashMap::new();
        for (state, poly) in &states {
            for (pairs, exp) in [([(a, b), (c, e)], 1i64), ([(a, e), (b, c)], -1)] {
                let mut m: HashMap<usize, usize> = state.iter().copied().collect();
                let mut loops = 0u32;
                for (p, q) in pairs {
                    loops += join(&mut m, p, q);
                }
                let mut key: State = m.into_iter().collect();
                key.sort_unstable();
                let term = (poly * &delta.pow(loops)).shift(exp);
                let slot = next.entry(key).or_default();
                *slot = &*slot + &term;
            }
        }
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_default();
    debug_assert!(states.values().all(LaurentPoly::is_zero));
    // every loop was counted with a factor delta; <O> = 1 removes one
    Ok(divide_by_loop(&(&total * &delta.pow(free as u32))))
}

/// Connect the strand ends at edges `p` and `q`; returns 1 if a loop closed.
fn join(m: &mut HashMap<usize, usize>, p: usize, q: usize) -> u32 {
    if p == q {
        // an edge running from this crossing straight back to it
        return 1;
    }
    if m.get(&p) == Some(&q) {
        m.remove(&p);
        m.remove(&q);
        return 1;
    }
    let x = match m.remove(&p) {
        Some(other) => {
            m.remove(&other);
            other
        }
        None => p,
    };
    let y = match m.remove(&q) {
        Some(other) => {
            m.remove(&other);
            other
        }
        None => q,
    };
    m.insert(x, y);
    m.insert(y, x);
    0
}

/// Greedy order: always take the crossing touching the most open strands.
fn contraction_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut done = vec![false; n];
    let mut seen = vec![0u8; d.edge_count()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let k = (0..n)
            .filter(|&k| !done[k])
            .max_by_key(|&k| {
                let touching = d.crossings[k].ends.iter().filter(|&&e| seen[e] == 1).count();
                (touching, std::cmp::Reverse(k))
            })
            .expect("a crossing remains");
        done[k] = true;
        for &e in &d.crossings[k].ends {
            seen[e] += 1;
        }
        order.push(k);
    }
    order
}

/// Exact division by `-A^2 - A^-2`. Panics if the division is not exact.
fn divide_by_loop(p: &LaurentPoly) -> LaurentPoly {
    let delta = LaurentPoly::loop_value();
    let mut rem = p.clone();
    let mut quot = LaurentPoly::zero();
    while let Some((top, c)) = rem.terms().last().map(|(e, c)| (e, c.clone())) {
        // leading term of delta is -A^2
        let t = LaurentPoly::monomial(-c, top - 2);
        rem = &rem - &(&t * &delta);
        quot = &quot + &t;
        assert!(
            rem.terms().last().map_or(true, |(e, _)| e < top),
            "bracket state sum not divisible by the loop value"
        );
    }
    quot
}

/// Writhe-normalized bracket `(-A^3)^(-w) <D>`; an isotopy invariant.
pub fn normalized_bracket(d: &LinkDiagram) -> Result<LaurentPoly, BracketError> {
    let b = kauffman_bracket(d)?;
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(LaurentPoly::monomial(sign, -3 * w) * b)
}

/// Equality of normalized brackets of unoriented links. Reversing one
/// component multiplies the normalized bracket by `A^(12 lk)`, where `lk` is
/// its total linking number with the others.
pub fn same_up_to_orientation(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    match (p.min_degree(), q.min_degree()) {
        (Some(a), Some(b)) => (a - b) % 12 == 0 && *p == q.shift(a - b),
        (None, None) => true,
        _ => false,
    }
}

/// Normalized bracket of the `k`-component unlink.
pub fn unlink_bracket(k: usize) -> LaurentPoly {
    LaurentPoly::loop_value().pow(k.saturating_sub(1) as u32)
}

/// Outcome of a triviality check on a classical link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Triviality {
    /// A replayable rewrite to `k` copies of the unknot word.
    CertifiedTrivial(Proof),
    CertifiedNontrivial(Witness),
    Unknown,
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Triviality::CertifiedTrivial(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Triviality::CertifiedTrivial(_) => "trivial",
            Triviality::CertifiedNontrivial(_) => "nontrivial",
            Triviality::Unknown => "unknown",
        }
    }
}

/// Is the classical word `w` an unlink?
///
/// Nontriviality is certified by a nonzero linking matrix or a normalized
/// bracket other than the unlink's. Triviality is certified by a classical
/// rewrite to `k` concatenated unknot words: the word is simplified, then
/// its closed circles are peeled off one at a time, moved to the right end
/// and put into the standard shape. If that fails, a direct search for the
/// target is tried.
pub fn is_trivial_link(w: &Word, budget: &SearchBudget) -> Result<Triviality, DiagramError> {
    let d = to_link_diagram(w)?;
    let k = d.component_count();
    let witness = |invariant: &str, left: String, right: String| {
        Triviality::CertifiedNontrivial(Witness {
            invariant: invariant.to_string(),
            left,
            right,
        })
    };
    let m = linking_matrix(&d);
    if m.iter().flatten().any(|&x| x != 0) {
        return Ok(witness("linking matrix", format!("{m:?}"), format!("{:?}", vec![vec![0; k]; k])));
    }
    if let Ok(b) = normalized_bracket(&d) {
        let u = unlink_bracket(k);
        if b != u {
            return Ok(witness("normalized bracket", b.to_string(), u.to_string()));
        }
    }
    let target = unlink(k);
    let rw = Rewriter::new(RuleSet::from(Tier::Classical));
    let found = peel_circles(&rw, w, k, budget).or_else(|| bidirectional(&rw, w, &target, budget).ok());
    Ok(match found {
        Some(p) => {
            debug_assert_eq!(p.replay(w).as_ref(), Ok(&target));
            match checked(Verdict::Proved(p), w, &target) {
                Verdict::Proved(p) => Triviality::CertifiedTrivial(p),
                _ => unreachable!(),
            }
        }
        None => Triviality::Unknown,
    })
}

/// Rewrite a closed classical word into concatenated unknot words.
fn peel_circles(rw: &Rewriter, w: &Word, k: usize, budget: &SearchBudget) -> Option<Proof> {
    let unknot = unlink(1);
    // every curve meets the axis at least twice
    let (mut cur, mut proof) = if w.len() > 2 * k {
        best_first_to(rw, w, budget, 2 * k)
    } else {
        (w.clone(), Proof::default())
    };
    let commuter = Commuter::new(rw, budget);
    // cur = rest · unknot^done
    let mut done = 0;
    loop {
        let rest_len = cur.len() - 2 * done;
        if rest_len == 0 {
            return Some(proof);
        }
        let rest = Word::new(cur.letters()[..rest_len].to_vec());
        let (a, b) = factor_where(&rest, rest.len(), |z| component_count(z) == Ok(1))?;
        let z = Word::new(rest.letters()[a..b].to_vec());
        let out = commuter.move_right(&z, a, &rest.letters()[b..]).ok()?;
        cur = out.replay(&cur).ok()?;
        proof = proof.then(out);
        let at = rest_len - z.len();
        let shape = if z == unknot {
            Proof::default()
        } else {
            match equivalent(&z, &unknot, RuleSet::from(Tier::Classical), budget) {
                Verdict::Proved(p) => p,
                _ => return None,
            }
        };
        let shape = shape.shifted(at);
        cur = shape.replay(&cur).ok()?;
        proof = proof.then(shape);
        done += 1;
    }
}

/// Triviality of both resolutions, combined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub positive: Triviality,
    pub negative: Triviality,
    pub overall: Admissibility,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Admissibility {
    Admissible,
    NotAdmissible,
    Unknown,
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Admissibility::Admissible => "admissible",
            Admissibility::NotAdmissible => "not admissible",
            Admissibility::Unknown => "unknown",
        })
    }
}

/// Are both resolutions of `w` unlinks?
pub fn admissible(w: &Word, budget: &SearchBudget) -> Result<AdmissibilityReport, DecodeError> {
    crate::pages::decode(w)?;
    let check = |sign| match is_trivial_link(&resolve(w, sign), budget) {
        Ok(t) => t,
        Err(DiagramError::Decode(e)) => panic!("resolution of a closed word failed to decode: {e}"),
        Err(e) => unreachable!("resolutions are classical: {e}"),
    };
    let (positive, negative) = rayon::join(|| check(ResolutionSign::Positive), || check(ResolutionSign::Negative));
    let overall = if positive.is_trivial() && negative.is_trivial() {
        Admissibility::Admissible
    } else if matches!(positive, Triviality::CertifiedNontrivial(_))
        || matches!(negative, Triviality::CertifiedNontrivial(_))
    {
        Admissibility::NotAdmissible
    } else {
        Admissibility::Unknown
    };
    Ok(AdmissibilityReport {
        positive,
        negative,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word;

    fn naive(d: &LinkDiagram) -> LaurentPoly {
        let n = d.crossing_count();
        let delta = LaurentPoly::loop_value();
        let m = d.edge_count();
        let mut total = LaurentPoly::zero();
        for s in 0u32..(1 << n) {
            let mut parent: Vec<usize> = (0..m).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut exp = 0i64;
            for (k, c) in d.crossings.iter().enumerate() {
                let [a, b, cc, e] = c.ends;
                let pairs = if s >> k & 1 == 0 {
                    exp += 1;
                    [(a, b), (cc, e)]
                } else {
                    exp -= 1;
                    [(a, e), (b, cc)]
                };
                for (x, y) in pairs {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    parent[rx] = ry;
                }
            }
            let loops = (0..m).filter(|&x| find(&mut parent, x) == x).count();
            total = &total + &delta.pow(loops as u32 - 1).shift(exp);
        }
        total
    }

    fn curl() -> LinkDiagram {
        LinkDiagram::from_pd(&[[0, 0, 1, 1]], vec![vec![0, 1]])
    }

    #[test]
    fn resolutions() {
        let w = word!("a1 x1 b1 x2 c1");
        assert_eq!(resolve(&w, ResolutionSign::Positive), word!("a1 b1 c1"));
        assert_eq!(resolve(&w, ResolutionSign::Negative), word!("a1 c1 a1 b1 c2 a2 c1"));
        let classical = word!("a0 b1 d2");
        assert_eq!(resolve(&classical, ResolutionSign::Negative), classical);
    }

    #[test]
    fn positive_curl_normalizes_to_one() {
        let d = curl();
        assert_eq!(d.writhe(), 1);
        assert_eq!(kauffman_bracket(&d).unwrap(), LaurentPoly::monomial(-1, 3));
        assert_eq!(normalized_bracket(&d).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn contraction_matches_state_sum_on_curl() {
        assert_eq!(kauffman_bracket(&curl()).unwrap(), naive(&curl()));
    }

    #[test]
    fn unlinks() {
        let d = LinkDiagram::from_pd(&[], vec![vec![0], vec![1], vec![2]]);
        assert_eq!(normalized_bracket(&d).unwrap(), unlink_bracket(3));
        assert_eq!(linking_matrix(&d), vec![vec![0; 3]; 3]);
    }

    #[test]
    fn cap_is_enforced() {
        let d = curl();
        assert_eq!(
            kauffman_bracket_capped(&d, 0),
            Err(BracketError::TooManyCrossings { crossings: 1, cap: 0 })
        );
    }

    #[test]
    fn linking_comparison_ignores_order_and_orientation() {
        let a = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]];
        let b = vec![vec![0, 0, 0], vec![0, 0, -1], vec![0, -1, 0]];
        assert!(linking_equivalent(&a, &b));
        let c = vec![vec![0, 2, 0], vec![2, 0, 0], vec![0, 0, 0]];
        assert!(!linking_equivalent(&a, &c));
    }

    #[test]
    fn unknot_word_has_chi_two() {
        assert_eq!(euler_characteristic(&word!("a1 c1")).unwrap(), 2);
        assert_eq!(euler_characteristic(&Word::empty()).unwrap(), 0);
    }
}
