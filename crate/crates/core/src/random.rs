//! Random closed words and random closing contexts for partial words.
//!
//! A word decodes exactly when, in every page, reading its half-arcs from
//! left to right balances like parentheses (right-going ends open,
//! left-going ends close). A piece of word reduces in each page to some
//! closings followed by some openings; it is closed by anything that
//! supplies those openings on its left and closings on its right.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::pages::{local_picture, Side};
use crate::word::{Kind, Letter, Word};

/// Per page: half-arcs closing something to the left of the word, and
/// half-arcs left open to its right.
pub fn boundary(w: &Word) -> ([usize; 3], [usize; 3]) {
    let mut need = [0; 3];
    let mut open = [0; 3];
    for &l in w.iter() {
        for e in &local_picture(l).ends {
            let p = e.page.index() as usize;
            match e.side {
                Side::Left if open[p] > 0 => open[p] -= 1,
                Side::Left => need[p] += 1,
                Side::Right => open[p] += 1,
            }
        }
    }
    (need, open)
}

fn fits(l: Letter, open: &[usize; 3]) -> bool {
    let mut o = *open;
    for e in &local_picture(l).ends {
        let p = e.page.index() as usize;
        match e.side {
            Side::Left if o[p] == 0 => return false,
            Side::Left => o[p] -= 1,
            Side::Right => o[p] += 1,
        }
    }
    true
}

fn push(l: Letter, open: &mut [usize; 3], out: &mut Vec<Letter>) {
    for e in &local_picture(l).ends {
        let p = e.page.index() as usize;
        match e.side {
            Side::Left => open[p] -= 1,
            Side::Right => open[p] += 1,
        }
    }
    out.push(l);
}

/// The letter of `kind` (`a` or `c`) with half-arcs in the two given pages.
fn letter_on(kind: Kind, pages: (usize, usize)) -> Letter {
    let (a, b) = pages;
    let i = (3 - a - b) as u8;
    Letter::new(kind, i)
}

/// The letter closing an arc in page `from` and opening one in page `to`.
fn mover(from: usize, to: usize) -> Letter {
    // d_i closes in P_{i+1} and opens in P_{i+2}; b_i the other way round
    let i = (3 - from - to) as u8;
    if from == (i as usize + 1) % 3 {
        Letter::new(Kind::D, i)
    } else {
        Letter::new(Kind::B, i)
    }
}

/// A word with no unmatched closing half-arcs and exactly `target[p]`
/// opening ones in page `p`: about `noise` random letters, then the
/// shortest fix-up. `singular` allows `x` letters among the random ones.
/// `target` must have an even sum.
pub fn opener<R: Rng>(rng: &mut R, target: [usize; 3], noise: usize, singular: bool) -> Word {
    assert!(target.iter().sum::<usize>() % 2 == 0, "openings come in pairs");
    let letters: Vec<Letter> = Letter::all().filter(|l| singular || !l.is_singular()).collect();
    let mut open = [0usize; 3];
    let mut out = Vec::new();
    for _ in 0..noise {
        let choices: Vec<Letter> = letters.iter().copied().filter(|&l| fits(l, &open)).collect();
        let &l = choices.choose(rng).expect("an `a` letter always fits");
        push(l, &mut open, &mut out);
    }
    loop {
        let d: [i64; 3] = [0, 1, 2].map(|p| target[p] as i64 - open[p] as i64);
        let neg: Vec<usize> = (0..3).filter(|&p| d[p] < 0).collect();
        let pos: Vec<usize> = (0..3).filter(|&p| d[p] > 0).collect();
        let l = match (neg.as_slice(), pos.as_slice()) {
            ([], []) => break,
            ([p, q, ..], _) => letter_on(Kind::C, (*p, *q)),
            (_, [p, q, ..]) => letter_on(Kind::A, (*p, *q)),
            ([p], [q]) => mover(*p, *q),
            ([p], []) => mover(*p, (*p + 1) % 3),
            ([], [p]) => letter_on(Kind::A, (*p, (*p + 1) % 3)),
        };
        push(l, &mut open, &mut out);
    }
    Word::new(out)
}

/// The mirror image in the axis' normal: reversed, left and right swapped.
pub fn mirror(w: &Word) -> Word {
    Word::new(
        w.iter()
            .rev()
            .map(|&l| {
                let k = match l.kind() {
                    Kind::A => Kind::C,
                    Kind::C => Kind::A,
                    Kind::B => Kind::D,
                    Kind::D => Kind::B,
                    Kind::X => Kind::X,
                };
                Letter::new(k, l.index())
            })
            .collect(),
    )
}

/// A random closed word of roughly `noise` letters or more.
pub fn closed_word<R: Rng>(rng: &mut R, noise: usize, singular: bool) -> Word {
    opener(rng, [0; 3], noise, singular)
}

/// Random words `u`, `v` with `u w v` closed, each carrying about `noise`
/// random letters. When `w` leaves an odd number of ends on each side, one
/// extra arc runs from `u` over `w` into `v`.
pub fn context<R: Rng>(rng: &mut R, w: &Word, noise: usize, singular: bool) -> (Word, Word) {
    let (mut need, mut open) = boundary(w);
    if need.iter().sum::<usize>() % 2 != 0 {
        let p = rng.gen_range(0..3);
        need[p] += 1;
        open[p] += 1;
    }
    let u = opener(rng, need, noise, singular);
    let v = mirror(&opener(rng, open, noise, singular));
    (u, v)
}
