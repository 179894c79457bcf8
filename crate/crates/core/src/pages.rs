//! Geometric meaning of words: the local picture of every letter, decoding
//! of a word into a marked graph in the 3-page book, and the planar link
//! diagram obtained by projecting the book onto a plane.
//!
//! The book is three half-planes `P0`, `P1`, `P2` glued along the binding
//! axis. A word lists the points where the graph meets the axis, from left
//! to right. At each point the graph leaves into two pages (four half-arcs
//! for a singular point), and every half-arc runs either to the left or to
//! the right along the axis before coming back to it.

use std::fmt;

use serde::Serialize;

use crate::error::{DecodeError, DiagramError};
use crate::word::{Kind, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Page {
    P0,
    P1,
    P2,
}

impl Page {
    pub const ALL: [Page; 3] = [Page::P0, Page::P1, Page::P2];

    pub fn from_index(i: u8) -> Page {
        Page::ALL[(i % 3) as usize]
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn rotate(self, k: u8) -> Page {
        Page::from_index(self.index() + k % 3)
    }
}

impl fmt::Display for Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.index())
    }
}

/// Which way a half-arc runs along the axis from its axis point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    /// The arc closes an arc opened further left.
    Left,
    /// The arc opens and ends further right.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ArcEnd {
    pub page: Page,
    pub side: Side,
}

/// The germ of the graph at one axis point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalPicture {
    /// Half-arcs, `Left` ones first within each page.
    pub ends: Vec<ArcEnd>,
    /// For a singular point: the two transversal branches as index pairs
    /// into `ends`. The bridge lies along the axis.
    pub branches: Option<[(usize, usize); 2]>,
}

impl LocalPicture {
    pub fn is_singular(&self) -> bool {
        self.branches.is_some()
    }

    /// The half-arc joined to `end` through this point.
    pub fn partner(&self, end: usize) -> usize {
        match self.branches {
            None => 1 - end,
            Some(br) => br
                .iter()
                .find_map(|&(p, q)| {
                    if p == end {
                        Some(q)
                    } else if q == end {
                        Some(p)
                    } else {
                        None
                    }
                })
                .expect("end index within picture"),
        }
    }

    fn rotate(&self, k: u8) -> LocalPicture {
        LocalPicture {
            ends: self
                .ends
                .iter()
                .map(|e| ArcEnd {
                    page: e.page.rotate(k),
                    side: e.side,
                })
                .collect(),
            branches: self.branches,
        }
    }
}

/// Local pictures of the 15 letters.
///
/// Letters with index `i` never touch page `P_i`; with `p = P_{i+1}` and
/// `q = P_{i+2}`:
///
/// | letter | half-arcs                               | shape            |
/// |--------|-----------------------------------------|------------------|
/// | `a_i`  | `p` right, `q` right                    | leftmost point   |
/// | `b_i`  | `q` left, `p` right                     | strand `q -> p`  |
/// | `c_i`  | `p` left, `q` left                      | rightmost point  |
/// | `d_i`  | `p` left, `q` right                     | strand `p -> q`  |
/// | `x_i`  | `p` left/right, `q` left/right; a cross | singular point   |
///
/// The branches of `x_i` are (`p` left, `q` right) and (`q` left, `p` right);
/// deleting the letter joins the two `p` half-arcs and the two `q` half-arcs,
/// which is the resolution along the bridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PictureTable {
    entries: Vec<LocalPicture>,
}

fn end(page: u8, side: Side) -> ArcEnd {
    ArcEnd {
        page: Page::from_index(page),
        side,
    }
}

impl PictureTable {
    /// The table used throughout the crate.
    pub fn standard() -> &'static PictureTable {
        static TABLE: std::sync::OnceLock<PictureTable> = std::sync::OnceLock::new();
        TABLE.get_or_init(|| {
            use Side::{Left as L, Right as R};
            let mut entries = Vec::with_capacity(15);
            for kind in Kind::ALL {
                for i in 0..3u8 {
                    let (p, q) = (i + 1, i + 2);
                    let pic = match kind {
                        Kind::A => LocalPicture {
                            ends: vec![end(p, R), end(q, R)],
                            branches: None,
                        },
                        Kind::B => LocalPicture {
                            ends: vec![end(q, L), end(p, R)],
                            branches: None,
                        },
                        Kind::C => LocalPicture {
                            ends: vec![end(p, L), end(q, L)],
                            branches: None,
                        },
                        Kind::D => LocalPicture {
                            ends: vec![end(p, L), end(q, R)],
                            branches: None,
                        },
                        Kind::X => LocalPicture {
                            ends: vec![end(p, L), end(p, R), end(q, L), end(q, R)],
                            branches: Some([(0, 3), (2, 1)]),
                        },
                    };
                    entries.push(pic);
                }
            }
            PictureTable { entries }
        })
    }

    pub fn get(&self, letter: Letter) -> &LocalPicture {
        &self.entries[letter.code() as usize]
    }

    /// Replace one entry; used to check that the consistency suites notice
    /// a wrong table.
    pub fn with_entry(&self, letter: Letter, picture: LocalPicture) -> PictureTable {
        let mut t = self.clone();
        t.entries[letter.code() as usize] = picture;
        t
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, &LocalPicture)> {
        Letter::all().map(move |l| (l, self.get(l)))
    }

    /// Structural checks on every entry: ends in exactly two distinct pages,
    /// two ends for regular letters and a left/right pair in each page for
    /// singular ones, and the index shift acting as the page rotation.
    pub fn validate(&self) -> Result<(), String> {
        for (letter, pic) in self.iter() {
            let mut pages: Vec<Page> = pic.ends.iter().map(|e| e.page).collect();
            pages.sort();
            pages.dedup();
            if pages.len() != 2 {
                return Err(format!("{letter}: ends must lie in exactly two pages"));
            }
            if pic.is_singular() {
                if pic.ends.len() != 4 {
                    return Err(format!("{letter}: a cross has four ends"));
                }
                for &p in &pages {
                    let sides: Vec<Side> =
                        pic.ends.iter().filter(|e| e.page == p).map(|e| e.side).collect();
                    if sides != [Side::Left, Side::Right] {
                        return Err(format!("{letter}: page {p} must hold one left and one right end"));
                    }
                }
                let br = pic.branches.unwrap();
                for (u, v) in br {
                    let (eu, ev) = (pic.ends[u], pic.ends[v]);
                    if eu.page == ev.page || eu.side == ev.side {
                        return Err(format!("{letter}: branches must cross the axis"));
                    }
                }
            } else if pic.ends.len() != 2 || pic.ends[0].page == pic.ends[1].page {
                return Err(format!("{letter}: two ends in two different pages"));
            }
            let next = self.get(letter.rotate(1));
            if *next != pic.rotate(1) {
                return Err(format!("{letter}: rotation does not shift pages"));
            }
        }
        Ok(())
    }
}

/// Same as `PictureTable::standard().get(letter)`.
pub fn local_picture(letter: Letter) -> &'static LocalPicture {
    PictureTable::standard().get(letter)
}

/// A half-arc at an axis point: `(position in word, end index in picture)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EndRef {
    pub point: usize,
    pub end: usize,
}

/// An arc of the graph inside one page, between two axis points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PageArc {
    pub page: Page,
    pub left: EndRef,
    pub right: EndRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub point: usize,
    /// The branches as pairs of half-arcs at this point.
    pub branches: [(EndRef, EndRef); 2],
}

/// A closed curve of the graph, listed as the axis points it passes through
/// in traversal order. At singular points the curve goes straight through.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub points: Vec<usize>,
    /// Arcs in traversal order, each with `true` when traversed left to right.
    pub arcs: Vec<(usize, bool)>,
}

/// A decoded word: a marked graph sitting in the 3-page book.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedGraphDiagram {
    pub word: Word,
    pub arcs: Vec<PageArc>,
    pub singular_points: Vec<SingularPoint>,
    pub components: Vec<Component>,
    /// For each point, for each end, the index of its arc in `arcs`.
    #[serde(skip)]
    arc_of: Vec<Vec<usize>>,
}

impl MarkedGraphDiagram {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn singular_count(&self) -> usize {
        self.singular_points.len()
    }

    pub fn arc_at(&self, e: EndRef) -> &PageArc {
        &self.arcs[self.arc_of[e.point][e.end]]
    }

    /// Index into `arcs` of the arc containing `e`.
    pub fn arc_index(&self, e: EndRef) -> usize {
        self.arc_of[e.point][e.end]
    }
}

/// Decode with the standard letter table.
pub fn decode(w: &Word) -> Result<MarkedGraphDiagram, DecodeError> {
    decode_with(PictureTable::standard(), w)
}

/// Decode `w` using an explicit letter table.
///
/// In each page the half-arcs form a bracket sequence (`Right` opens,
/// `Left` closes); arcs in a half-plane that project monotonically to the
/// axis cannot cross, so the matching is the nested one.
pub fn decode_with(table: &PictureTable, w: &Word) -> Result<MarkedGraphDiagram, DecodeError> {
    let mut stacks: [Vec<EndRef>; 3] = Default::default();
    let mut arcs = Vec::new();
    let mut arc_of: Vec<Vec<usize>> = Vec::with_capacity(w.len());
    let mut singular_points = Vec::new();

    for (point, &letter) in w.iter().enumerate() {
        let pic = table.get(letter);
        arc_of.push(vec![usize::MAX; pic.ends.len()]);
        // closing half-arcs first so that a cross can close and reopen in one page
        let mut order: Vec<usize> = (0..pic.ends.len()).collect();
        order.sort_by_key(|&i| pic.ends[i].side);
        for i in order {
            let e = pic.ends[i];
            let here = EndRef { point, end: i };
            let stack = &mut stacks[e.page.index() as usize];
            match e.side {
                Side::Right => stack.push(here),
                Side::Left => {
                    let left = stack.pop().ok_or(DecodeError::Unbalanced {
                        page: e.page,
                        position: point,
                    })?;
                    let id = arcs.len();
                    arcs.push(PageArc {
                        page: e.page,
                        left,
                        right: here,
                    });
                    arc_of[left.point][left.end] = id;
                    arc_of[point][i] = id;
                }
            }
        }
        if let Some(br) = pic.branches {
            let r = |i| EndRef { point, end: i };
            singular_points.push(SingularPoint {
                point,
                branches: [(r(br[0].0), r(br[0].1)), (r(br[1].0), r(br[1].1))],
            });
        }
    }
    for page in Page::ALL {
        if let Some(open) = stacks[page.index() as usize].last() {
            return Err(DecodeError::Unbalanced {
                page,
                position: open.point,
            });
        }
    }

    let components = trace_components(table, w, &arcs, &arc_of);
    Ok(MarkedGraphDiagram {
        word: w.clone(),
        arcs,
        singular_points,
        components,
        arc_of,
    })
}

fn trace_components(
    table: &PictureTable,
    w: &Word,
    arcs: &[PageArc],
    arc_of: &[Vec<usize>],
) -> Vec<Component> {
    let mut used = vec![false; arcs.len()];
    let mut components = Vec::new();
    for start in 0..arcs.len() {
        if used[start] {
            continue;
        }
        // leave from the left end of the first unused arc
        let mut points = Vec::new();
        let mut seq = Vec::new();
        let mut from = arcs[start].left;
        let mut arc = start;
        loop {
            used[arc] = true;
            let a = arcs[arc];
            let (to, forward) = if a.left == from {
                (a.right, true)
            } else {
                (a.left, false)
            };
            seq.push((arc, forward));
            points.push(to.point);
            let pic = table.get(w[to.point]);
            let next_end = EndRef {
                point: to.point,
                end: pic.partner(to.end),
            };
            arc = arc_of[next_end.point][next_end.end];
            from = next_end;
            if arc == start {
                break;
            }
        }
        components.push(Component { points, arcs: seq });
    }
    components
}

/// Openers minus closers in each page. Every relation preserves it, so
/// it separates words that are not equal in the semigroup; a word that
/// decodes has balance zero everywhere.
pub fn page_balance(w: &Word) -> [i64; 3] {
    let table = PictureTable::standard();
    let mut out = [0i64; 3];
    for &l in w.iter() {
        for e in &table.get(l).ends {
            out[e.page.index() as usize] += match e.side {
                Side::Right => 1,
                Side::Left => -1,
            };
        }
    }
    out
}

/// Number of closed curves of the decoded graph.
pub fn component_count(w: &Word) -> Result<usize, DecodeError> {
    decode(w).map(|d| d.component_count())
}

/// A planar link diagram in PD form.
///
/// Edges are numbered `0..edge_count`; a crossing lists its four edges
/// counterclockwise starting from the incoming under-strand. Components
/// without crossings appear as a single edge used by no crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    /// Each component as its edges in traversal order.
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub ends: [usize; 4],
    /// `+1` or `-1` for the orientation given by `components`.
    pub sign: i8,
}

impl LinkDiagram {
    /// Build from PD quadruples whose edge labels increase along each
    /// component (the usual convention). `components` lists the edge labels
    /// of each component in order; signs are inferred from the labels.
    pub fn from_pd(pd: &[[usize; 4]], components: Vec<Vec<usize>>) -> LinkDiagram {
        let mut next = std::collections::HashMap::new();
        for comp in &components {
            for (i, &e) in comp.iter().enumerate() {
                next.insert(e, comp[(i + 1) % comp.len()]);
            }
        }
        let crossings = pd
            .iter()
            .map(|&[a, b, c, d]| {
                // the over strand runs d -> b on a positive crossing
                let sign = if next.get(&d) == Some(&b) && d != b { 1 } else { -1 };
                Crossing {
                    ends: [a, b, c, d],
                    sign,
                }
            })
            .collect();
        LinkDiagram {
            crossings,
            components,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Component containing each edge.
    pub fn component_of_edges(&self) -> Vec<usize> {
        let mut out = vec![0; self.edge_count()];
        for (ci, comp) in self.components.iter().enumerate() {
            for &e in comp {
                out[e] = ci;
            }
        }
        out
    }

    /// Every edge label is used by exactly one component and, apart from
    /// crossingless components, by exactly two crossing slots.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.edge_count();
        let mut seen = vec![0usize; n];
        for c in &self.crossings {
            for &e in &c.ends {
                if e >= n {
                    return Err(format!("edge {e} out of range"));
                }
                seen[e] += 1;
            }
        }
        let mut owner = vec![false; n];
        for comp in &self.components {
            for &e in comp {
                if e >= n || owner[e] {
                    return Err(format!("edge {e} listed twice"));
                }
                owner[e] = true;
            }
            let expect = if comp.len() == 1 && seen[comp[0]] == 0 { 0 } else { 2 };
            for &e in comp {
                if seen[e] != expect {
                    return Err(format!("edge {e} appears {} times in crossings", seen[e]));
                }
            }
        }
        Ok(())
    }
}

/// Project a classical word to a planar diagram.
///
/// `P0` and `P1` fold onto the upper half-plane with `P1` in front, `P2`
/// becomes the lower half-plane. Arcs are drawn as semicircles, so a `P1`
/// arc crosses over a `P0` arc exactly when their axis intervals interleave.
pub fn to_link_diagram(w: &Word) -> Result<LinkDiagram, DiagramError> {
    if let Some((position, l)) = w.iter().enumerate().find(|(_, l)| l.is_singular()) {
        return Err(DiagramError::Singular {
            letter: l.to_string(),
            position,
        });
    }
    let g = decode(w)?;
    Ok(project(&g))
}

pub(crate) fn interleave(p: &PageArc, q: &PageArc) -> bool {
    let (a, b) = (p.left.point, p.right.point);
    let (c, d) = (q.left.point, q.right.point);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// `x` coordinate where two interleaving semicircles meet, as a fraction.
pub(crate) fn meet_x(p: &PageArc, q: &PageArc) -> (i64, i64) {
    let (l1, r1) = (p.left.point as i64, p.right.point as i64);
    let (l2, r2) = (q.left.point as i64, q.right.point as i64);
    let num = l2 * r2 - l1 * r1;
    let den = l2 + r2 - l1 - r1;
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

fn project(g: &MarkedGraphDiagram) -> LinkDiagram {
    // crossings between P1 (over) and P0 (under) arcs
    struct Meet {
        over: usize,
        under: usize,
        x: (i64, i64),
    }
    let mut meets = Vec::new();
    for (i, p) in g.arcs.iter().enumerate() {
        if p.page != Page::P1 {
            continue;
        }
        for (j, q) in g.arcs.iter().enumerate() {
            if q.page == Page::P0 && interleave(p, q) {
                meets.push(Meet {
                    over: i,
                    under: j,
                    x: meet_x(p, q),
                });
            }
        }
    }
    let mut on_arc: Vec<Vec<usize>> = vec![Vec::new(); g.arcs.len()];
    for (k, m) in meets.iter().enumerate() {
        on_arc[m.over].push(k);
        on_arc[m.under].push(k);
    }
    for list in &mut on_arc {
        list.sort_by(|&s, &t| {
            let (a, b) = meets[s].x;
            let (c, d) = meets[t].x;
            (a * d).cmp(&(c * b))
        });
    }

    // walk each component, cutting it into edges at every crossing passage
    let mut arc_dir = vec![true; g.arcs.len()];
    let mut components = Vec::new();
    // (incoming edge, outgoing edge) of each strand at each crossing
    let mut over_edges = vec![(usize::MAX, usize::MAX); meets.len()];
    let mut under_edges = vec![(usize::MAX, usize::MAX); meets.len()];
    let mut edge = 0usize;
    for comp in &g.components {
        let first_edge = edge;
        let mut edges = vec![edge];
        let mut passages = Vec::new();
        for &(arc, forward) in &comp.arcs {
            arc_dir[arc] = forward;
            let list = &on_arc[arc];
            let ordered: Box<dyn Iterator<Item = &usize>> = if forward {
                Box::new(list.iter())
            } else {
                Box::new(list.iter().rev())
            };
            for &k in ordered {
                passages.push((k, meets[k].over == arc));
            }
        }
        let n = passages.len();
        for (idx, &(k, is_over)) in passages.iter().enumerate() {
            let incoming = edge;
            let outgoing = if idx + 1 == n { first_edge } else { edge + 1 };
            if is_over {
                over_edges[k] = (incoming, outgoing);
            } else {
                under_edges[k] = (incoming, outgoing);
            }
            if idx + 1 < n {
                edge += 1;
                edges.push(edge);
            }
        }
        edge += 1;
        components.push(edges);
    }

    let crossings = meets
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let (o, u) = (&g.arcs[m.over], &g.arcs[m.under]);
            let eps_o: i64 = if arc_dir[m.over] { 1 } else { -1 };
            let eps_u: i64 = if arc_dir[m.under] { 1 } else { -1 };
            // centres, doubled to stay integral
            let mo = (o.left.point + o.right.point) as i64;
            let mu = (u.left.point + u.right.point) as i64;
            let sign = (eps_o * eps_u * (mu - mo).signum()) as i8;
            let (ui, uo) = under_edges[k];
            let (oi, oo) = over_edges[k];
            let ends = if sign > 0 {
                [ui, oo, uo, oi]
            } else {
                [ui, oi, uo, oo]
            };
            Crossing { ends, sign }
        })
        .collect();
    LinkDiagram {
        crossings,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{W_G, W_G_PRINTED};
    use crate::word;

    #[test]
    fn standard_table_is_consistent() {
        let t = PictureTable::standard();
        assert_eq!(t.iter().count(), 15);
        t.validate().unwrap();
        for (l, pic) in t.iter() {
            let n = if l.is_singular() { 4 } else { 2 };
            assert_eq!(pic.ends.len(), n, "{l}");
            assert!(pic.ends.iter().all(|e| e.page.index() != l.index()), "{l}");
        }
    }

    #[test]
    fn validate_flags_broken_entries() {
        let t = PictureTable::standard();
        let l = Letter::new(Kind::B, 1);
        let same_page = LocalPicture {
            ends: vec![end(0, Side::Left), end(0, Side::Right)],
            branches: None,
        };
        assert!(t.with_entry(l, same_page).validate().is_err());
        let unrotated = t.get(Letter::new(Kind::B, 0)).clone();
        assert!(t.with_entry(l, unrotated).validate().is_err());
    }

    #[test]
    fn empty_word_is_empty_diagram() {
        let g = decode(&Word::empty()).unwrap();
        assert_eq!(g.component_count(), 0);
        assert_eq!(g.singular_count(), 0);
    }

    #[test]
    fn lone_letter_is_unbalanced() {
        assert!(matches!(decode(&word!("a0")), Err(DecodeError::Unbalanced { .. })));
        assert!(matches!(
            decode(&word!("c1")),
            Err(DecodeError::Unbalanced { position: 0, .. })
        ));
    }

    #[test]
    fn two_letter_circles() {
        // a balanced two-letter word must open both pages and close them again
        let mut found = Vec::new();
        for p in Letter::all() {
            for q in Letter::all() {
                let w = Word::new(vec![p, q]);
                if let Ok(g) = decode(&w) {
                    assert_eq!(g.component_count(), 1, "{w}");
                    found.push(w.to_string());
                }
            }
        }
        assert_eq!(found, vec!["a0 c0", "a1 c1", "a2 c2"]);
    }

    #[test]
    fn printed_fixture_is_unbalanced() {
        let w = word!(W_G_PRINTED);
        assert_eq!(page_balance(&w), [-1, 0, 1]);
        assert!(matches!(decode(&w), Err(DecodeError::Unbalanced { .. })));
    }

    #[test]
    fn fixture_decodes_with_two_singular_points() {
        let g = decode(&word!(W_G)).unwrap();
        assert_eq!(g.singular_count(), 2);
        assert!(g.component_count() >= 1);
    }

    #[test]
    fn arcs_never_interleave_within_a_page() {
        let g = decode(&word!(W_G)).unwrap();
        for p in &g.arcs {
            for q in &g.arcs {
                if p.page == q.page {
                    assert!(!interleave(p, q));
                }
            }
        }
    }

    #[test]
    fn page_balance_counts_ends() {
        assert_eq!(page_balance(&word!("a1 c1")), [0; 3]);
        assert_eq!(page_balance(&word!("c1 a1")), [0; 3]);
        assert_eq!(page_balance(&word!("a0")), [0, 1, 1]);
        assert_eq!(page_balance(&word!("c2 c2")), [-2, -2, 0]);
    }

    #[test]
    fn unknot_projects_without_crossings() {
        let d = to_link_diagram(&word!("a1 c1")).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
        d.validate().unwrap();
    }

    #[test]
    fn singular_words_have_no_link_diagram() {
        assert!(matches!(
            to_link_diagram(&word!("a1 x1 c1")),
            Err(DiagramError::Singular { position: 1, .. })
        ));
    }
}
