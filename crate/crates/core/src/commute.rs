//! Constructive commutation of closed words with generators.
//!
//! Family (3) says that each block
//!
//! ```text
//! a_i b_i,  d_i c_i,  b_{i-1} d_i d_{i-1} b_i,  d_i x_i b_i
//! ```
//!
//! commutes with `a_{i+1}`, `b_{i+1}`, `c_{i+1}` and `x_{i+1}`. So once a word
//! is rewritten as a product of index-`i` blocks, such a generator slides
//! across it one block at a time. The `d` letters are split with relation
//! (2), `d_k = a_{k+1} c_{k-1}`, and each half slides separately.
//!
//! Block products only describe nested, split unions of two-strand
//! closures, so this does not cover every closed word. Callers fall back to
//! plain search when no block form is found.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::relations::{Rewriter, Step};
use crate::search::Proof;
use crate::word::{Kind, Letter, Word};

fn blocks(i: u8) -> [Vec<Letter>; 4] {
    let l = |k: Kind, j: u8| Letter::new(k, j % 3);
    let prev = (i + 2) % 3;
    [
        vec![l(Kind::A, i), l(Kind::B, i)],
        vec![l(Kind::D, i), l(Kind::C, i)],
        vec![l(Kind::B, prev), l(Kind::D, i), l(Kind::D, prev), l(Kind::B, i)],
        vec![l(Kind::D, i), l(Kind::X, i), l(Kind::B, i)],
    ]
}

/// Split `w` into index-`i` blocks; the parse is unique when it exists.
/// Returns the block lengths, or the number of letters no block covers.
fn parse_blocks(w: &Word, i: u8) -> Result<Vec<usize>, usize> {
    let bl = blocks(i);
    let mut k = 0;
    let mut lens = Vec::new();
    let mut stray = 0;
    'next: while k < w.len() {
        for b in &bl {
            if w.matches_at(b, k) {
                lens.push(b.len());
                k += b.len();
                continue 'next;
            }
        }
        stray += 1;
        k += 1;
    }
    if stray == 0 {
        Ok(lens)
    } else {
        Err(stray)
    }
}

/// A rewrite of a word into index-`i` blocks.
#[derive(Clone, Debug)]
pub struct BlockForm {
    pub word: Word,
    pub blocks: Vec<usize>,
    /// From the original word to `word`.
    pub proof: Proof,
}

/// Look for a block form by best-first search on the number of stray
/// letters, visiting at most `max_states` words no longer than `max_len`.
pub fn block_form(rw: &Rewriter, w: &Word, i: u8, max_len: usize, max_states: usize) -> Option<BlockForm> {
    let mut words = vec![w.clone()];
    let mut parent: Vec<Option<(u32, Step)>> = vec![None];
    let mut index: HashMap<Word, u32> = HashMap::from([(w.clone(), 0)]);
    let mut heap = BinaryHeap::new();
    let score = |v: &Word| parse_blocks(v, i).err().unwrap_or(0);
    heap.push(Reverse((score(w), w.len(), w.clone(), 0u32)));
    while let Some(Reverse((stray, _, cur, id))) = heap.pop() {
        if stray == 0 {
            let mut steps = Vec::new();
            let mut at = id;
            while let Some((p, s)) = &parent[at as usize] {
                steps.push(s.clone());
                at = *p;
            }
            steps.reverse();
            return Some(BlockForm {
                blocks: parse_blocks(&cur, i).expect("parsed"),
                word: cur,
                proof: Proof { steps },
            });
        }
        if words.len() >= max_states {
            return None;
        }
        let mut succ = Vec::new();
        rw.successors(&cur, max_len, |v, s| succ.push((v, s)));
        for (v, s) in succ {
            if index.contains_key(&v) {
                continue;
            }
            let nid = words.len() as u32;
            index.insert(v.clone(), nid);
            words.push(v.clone());
            parent.push(Some((id, s)));
            heap.push(Reverse((score(&v), v.len(), v, nid)));
        }
    }
    None
}

/// The single step turning `from` into `to`, if there is one.
pub fn find_step(rw: &Rewriter, from: &Word, to: &Word) -> Option<Step> {
    let mut found = None;
    rw.successors(from, to.len(), |v, s| {
        if found.is_none() && &v == to {
            found = Some(s);
        }
    });
    found
}

/// The letters a generator is split into before sliding: itself, or
/// `a_{k+1} c_{k-1}` for `d_k`.
fn pieces(g: Letter) -> Vec<Letter> {
    match g.kind() {
        Kind::D => vec![
            Letter::new(Kind::A, (g.index() + 1) % 3),
            Letter::new(Kind::C, (g.index() + 2) % 3),
        ],
        _ => vec![g],
    }
}

/// Block index a letter of kind `a`, `b`, `c` or `x` slides across.
fn slide_index(g: Letter) -> u8 {
    (g.index() + 2) % 3
}

/// Proof of `w g = g w`, built by sliding `g` (or its two halves) across
/// block forms of `w`. `forms` supplies a block form for a given index.
pub fn commute_via_blocks(
    rw: &Rewriter,
    w: &Word,
    g: Letter,
    mut forms: impl FnMut(u8) -> Option<BlockForm>,
) -> Option<Proof> {
    let gw = Word::new(vec![g]);
    let mut cur = w.concat(&gw);
    let mut proof = Proof::default();
    let parts = pieces(g);
    if parts.len() > 1 {
        let next = w.concat(&Word::new(parts.clone()));
        proof.steps.push(find_step(rw, &cur, &next)?);
        cur = next;
    }
    // after `k` pieces have moved, `w` sits at offset `k` with the next
    // piece right behind it
    for (k, &p) in parts.iter().enumerate() {
        let form = forms(slide_index(p))?;
        let off = k;
        let into = form.proof.shifted(off);
        cur = into.replay(&cur).ok()?;
        proof = proof.then(into);
        // the piece sits right after the block form
        let mut pos = off + form.word.len();
        for &len in form.blocks.iter().rev() {
            let start = pos - len;
            let mut letters = cur.letters().to_vec();
            let piece = letters.remove(pos);
            letters.insert(start, piece);
            let next = Word::new(letters);
            proof.steps.push(find_step(rw, &cur, &next)?);
            cur = next;
            pos = start;
        }
        let back = form.proof.inverse().shifted(off + 1);
        cur = back.replay(&cur).ok()?;
        proof = proof.then(back);
        debug_assert_eq!(cur.letters()[off], p);
    }
    if parts.len() > 1 {
        let next = gw.concat(w);
        proof.steps.push(find_step(rw, &cur, &next)?);
        cur = next;
    }
    debug_assert_eq!(cur, gw.concat(w));
    Some(proof)
}
