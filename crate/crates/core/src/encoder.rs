//! From a planar marked diagram to a word.
//!
//! A path `α` is drawn in the plane from infinity back to infinity. It runs
//! through every vertex once: through a crossing between opposite corners,
//! so that the under-strand changes sides, and through a singular vertex
//! along its bridge. Elsewhere it only cuts edges transversally. Loops at a
//! vertex are cut as well, so no arc starts and ends at the same vertex.
//!
//! Straightening `α` into the axis, the half-plane on its left becomes `P0`
//! and the one on its right `P2`. The over-strand of each crossing is
//! pushed into `P1`, which splits the crossing into three axis points. A
//! singular point needs one left and one right half-arc in each page; when
//! both go the same way, a pair of extra points is added beside it, as in a
//! Reidemeister II move between `α` and the offending arc.
//!
//! `α` is built greedily: vertices are visited in id order, each reached by
//! a breadth-first search over faces that cuts the fewest edges. The plane
//! minus the path drawn so far stays connected, so the search never fails.

use std::collections::{HashMap, VecDeque};

use crate::error::EncodeError;
use crate::pages::{decode, ArcEnd, Page, PictureTable, Side};
use crate::planar::{Graph, PlanarMarkedDiagram, VertexType};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Vertex(usize),
    Cut,
    Infinity,
}

#[derive(Clone, Copy, Debug)]
struct Half {
    from: usize,
    to: usize,
    twin: usize,
    alpha: bool,
}

/// A plane map growing as `α` is drawn. Rotations are counterclockwise
/// lists of outgoing half-edges; the face of a half-edge is on its left.
struct Map {
    node: Vec<Node>,
    rot: Vec<Vec<usize>>,
    half: Vec<Half>,
}

/// Where `α` currently ends, and the corner it leaves through: the one
/// following `after` counterclockwise (`None` while at infinity, alone in
/// the outer face).
#[derive(Clone, Copy)]
struct Tip {
    node: usize,
    after: Option<usize>,
}

impl Map {
    fn pos(&self, h: usize) -> usize {
        let n = self.half[h].from;
        self.rot[n].iter().position(|&x| x == h).expect("half-edge in its rotation")
    }

    /// The half-edge after `h` around its face.
    fn next(&self, h: usize) -> usize {
        let t = self.half[h].twin;
        let r = &self.rot[self.half[h].to];
        let i = self.pos(t);
        r[(i + r.len() - 1) % r.len()]
    }

    fn faces(&self) -> (Vec<usize>, usize) {
        let mut face = vec![usize::MAX; self.half.len()];
        let mut count = 0;
        for h in 0..self.half.len() {
            if face[h] != usize::MAX {
                continue;
            }
            let mut g = h;
            while face[g] == usize::MAX {
                face[g] = count;
                g = self.next(g);
            }
            count += 1;
        }
        (face, count)
    }

    fn add_pair(&mut self, a: usize, b: usize, alpha: bool) -> usize {
        let h = self.half.len();
        self.half.push(Half {
            from: a,
            to: b,
            twin: h + 1,
            alpha,
        });
        self.half.push(Half {
            from: b,
            to: a,
            twin: h,
            alpha,
        });
        h
    }

    /// Put a new point on the edge of `h`. Returns the point and its two
    /// outgoing half-edges `(back, on)`: `back` runs against `h`, `on` along
    /// it, so the corner after `on` is in the face of `h`.
    fn split(&mut self, h: usize) -> (usize, usize, usize) {
        let p = self.node.len();
        self.node.push(Node::Cut);
        let t = self.half[h].twin;
        let (u, v) = (self.half[h].from, self.half[h].to);
        let back = self.half.len();
        let on = back + 1;
        self.half.push(Half {
            from: p,
            to: u,
            twin: h,
            alpha: false,
        });
        self.half.push(Half {
            from: p,
            to: v,
            twin: t,
            alpha: false,
        });
        self.half[h].to = p;
        self.half[h].twin = back;
        self.half[t].to = p;
        self.half[t].twin = on;
        self.rot.push(vec![back, on]);
        (p, back, on)
    }

    /// Draw an `α` edge from the tip to `b`, entering `b` through the corner
    /// after `b_after`. Returns the half-edge from the tip.
    fn connect(&mut self, tip: Tip, b: usize, b_after: usize) -> usize {
        let h = self.add_pair(tip.node, b, true);
        let i = match tip.after {
            Some(a) => self.pos(a) + 1,
            None => 0,
        };
        self.rot[tip.node].insert(i, h);
        let j = self.pos(b_after) + 1;
        self.rot[b].insert(j, h + 1);
        h
    }
}

/// Encode a planar marked diagram as a word.
pub fn encode_diagram(d: &PlanarMarkedDiagram) -> Result<Word, EncodeError> {
    let g = d.graph().map_err(|e| EncodeError::NoPath(e.to_string()))?;
    let mut letters = Vec::new();
    for comp in g.vertex_components() {
        letters.extend(encode_component(&g, &comp)?.into_letters());
    }
    for _ in 0..g.free_loops {
        letters.extend(crate::fixtures::unlink(1).into_letters());
    }
    let w = Word::new(letters);
    decode(&w).map_err(|e| EncodeError::NoPath(format!("constructed word does not decode: {e}")))?;
    Ok(w)
}

fn encode_component(g: &Graph, comp: &[usize]) -> Result<Word, EncodeError> {
    let mut map = Map {
        node: Vec::new(),
        rot: Vec::new(),
        half: Vec::new(),
    };
    let mut node_of = HashMap::new();
    for &v in comp {
        node_of.insert(v, map.node.len());
        map.node.push(Node::Vertex(v));
        map.rot.push(vec![usize::MAX; 4]);
    }
    // original half-edge leaving each vertex slot
    let mut slot_half: HashMap<(usize, usize), usize> = HashMap::new();
    let mut seen_edges = vec![false; g.edges.len()];
    for &v in comp {
        for s in 0..4 {
            let e = g.rot[v][s];
            if seen_edges[e] {
                continue;
            }
            seen_edges[e] = true;
            let [(a, sa), (b, sb)] = g.edges[e];
            let h = map.add_pair(node_of[&a], node_of[&b], false);
            map.rot[node_of[&a]][sa] = h;
            map.rot[node_of[&b]][sb] = h + 1;
            slot_half.insert((a, sa), h);
            slot_half.insert((b, sb), h + 1);
        }
    }
    let outer = {
        let (face, count) = map.faces();
        let mut size = vec![0usize; count];
        for &f in &face {
            size[f] += 1;
        }
        let best = (0..count).max_by_key(|&f| (size[f], std::cmp::Reverse(f))).expect("a face");
        face.iter().position(|&f| f == best).expect("face has a half-edge")
    };
    let inf = map.node.len();
    map.node.push(Node::Infinity);
    map.rot.push(Vec::new());

    let mut tip = Tip { node: inf, after: None };
    let mut entry = HashMap::new();

    for &v in comp {
        // loops at v are cut first
        for s in 0..4 {
            let h = slot_half[&(v, s)];
            let vn = node_of[&v];
            if map.half[h].to != vn || map.half[h].from != vn || g.across(v, s).1 < s {
                continue;
            }
            let th = map.half[h].twin;
            walk(&mut map, &mut tip, outer, |face, m| face[h] == m || face[th] == m)?;
            let (face, _) = map.faces();
            let f = tip_face(&map, &face, tip, outer);
            let side = if face[h] == f { h } else { map.half[h].twin };
            let (p, back, on) = map.split(side);
            map.connect(tip, p, on);
            tip = Tip { node: p, after: Some(back) };
        }
        let vn = node_of[&v];
        let corners: Vec<usize> = match g.kind[v] {
            VertexType::Crossing => vec![0, 1, 2, 3],
            VertexType::Singular => g.mark[v].to_vec(),
        };
        let halves: Vec<usize> = (0..4).map(|s| slot_half[&(v, s)]).collect();
        walk(&mut map, &mut tip, outer, |face, f| {
            corners.iter().any(|&j| face[halves[j]] == f)
        })?;
        let (face, _) = map.faces();
        let f = tip_face(&map, &face, tip, outer);
        let j = *corners.iter().find(|&&j| face[halves[j]] == f).expect("reached corner");
        map.connect(tip, vn, halves[j]);
        entry.insert(v, j);
        tip = Tip {
            node: vn,
            after: Some(halves[(j + 2) % 4]),
        };
    }
    let home = map.rot[inf][0];
    walk(&mut map, &mut tip, outer, |face, f| face[home] == f)?;
    map.connect(tip, inf, home);
    // the older of the two α edges at infinity is where α starts
    let first_alpha = *map.rot[inf].iter().min().expect("α has edges");

    // sides: faces left of α are P0
    let (face, count) = map.faces();
    let mut side: Vec<Option<Page>> = vec![None; count];
    side[face[first_alpha]] = Some(Page::P0);
    let mut queue = VecDeque::from([face[first_alpha]]);
    let mut by_face: Vec<Vec<usize>> = vec![Vec::new(); count];
    for h in 0..map.half.len() {
        by_face[face[h]].push(h);
    }
    while let Some(f) = queue.pop_front() {
        let here = side[f].expect("assigned");
        for &h in &by_face[f] {
            let t = map.half[h].twin;
            let there = if map.half[h].alpha { flip(here) } else { here };
            match side[face[t]] {
                None => {
                    side[face[t]] = Some(there);
                    queue.push_back(face[t]);
                }
                Some(s) if s != there => {
                    return Err(EncodeError::NoPath("α does not separate the plane".into()));
                }
                _ => {}
            }
        }
    }

    // points of α in order
    let mut seq = Vec::new();
    let mut cur = first_alpha;
    loop {
        let n = map.half[cur].to;
        if n == inf {
            break;
        }
        let back = map.half[cur].twin;
        let fwd = *map.rot[n]
            .iter()
            .find(|&&h| map.half[h].alpha && h != back)
            .ok_or_else(|| EncodeError::NoPath("α ends inside the plane".into()))?;
        seq.push((n, back, fwd));
        cur = fwd;
    }

    let mut b = Builder::default();
    let mut event_of_half = HashMap::new();
    for &(n, back, fwd) in &seq {
        match map.node[n] {
            Node::Cut => {
                let e = b.event(None);
                for &h in &map.rot[n] {
                    if !map.half[h].alpha {
                        event_of_half.insert(h, e);
                    }
                }
            }
            Node::Vertex(v) if g.kind[v] == VertexType::Crossing => {
                let j = entry[&v];
                let over = g.mark[v];
                let is_over = |s: usize| s % 2 == over[0] % 2;
                let in_over = if is_over(j) { j } else { (j + 1) % 4 };
                let out_over = (in_over + 2) % 4;
                let u = b.event(None);
                let m = b.event(None);
                let w = b.event(None);
                for s in 0..4 {
                    let e = if s == in_over {
                        u
                    } else if s == out_over {
                        w
                    } else {
                        m
                    };
                    event_of_half.insert(slot_half[&(v, s)], e);
                }
                b.arc(Page::P1, u, w);
            }
            Node::Vertex(_) => {
                // counterclockwise from the outgoing direction: upper right,
                // upper left, then lower left, lower right
                let r = &map.rot[n];
                let k = r.iter().position(|&h| h == fwd).expect("fwd at node");
                let around: Vec<usize> = (1..r.len()).map(|i| r[(k + i) % r.len()]).collect();
                if around.len() != 5 || around[2] != back {
                    return Err(EncodeError::NoPath("α does not follow the bridge".into()));
                }
                let e = b.event(None);
                for &h in &around {
                    if h != back {
                        event_of_half.insert(h, e);
                    }
                }
                b.pending.push((e, [around[0], around[1], around[3], around[4]]));
            }
            Node::Infinity => unreachable!("infinity is not inside α"),
        }
    }
    let mut arc_of_half = HashMap::new();
    for h in 0..map.half.len() {
        let t = map.half[h].twin;
        if map.half[h].alpha || h > t {
            continue;
        }
        let page = side[face[h]].expect("all faces have a side");
        if side[face[t]] != Some(page) {
            return Err(EncodeError::NoPath("an edge borders both sides of α".into()));
        }
        let k = b.arc(page, event_of_half[&h], event_of_half[&t]);
        arc_of_half.insert(h, k);
        arc_of_half.insert(t, k);
    }
    let pending = std::mem::take(&mut b.pending);
    for &(e, halves) in &pending {
        b.events[e].singular = Some(halves.map(|h| arc_of_half[&h]));
    }
    for &(e, _) in &pending {
        let [ur, ul, ll, lr] = b.events[e].singular.expect("set above");
        b.straighten(e, ul, ur)?;
        let [_, _, ll2, lr2] = b.events[e].singular.expect("set above");
        debug_assert_eq!((ll, lr), (ll2, lr2));
        b.straighten(e, ll, lr)?;
    }
    b.word()
}

fn flip(p: Page) -> Page {
    match p {
        Page::P0 => Page::P2,
        _ => Page::P0,
    }
}

fn tip_face(map: &Map, face: &[usize], tip: Tip, outer: usize) -> usize {
    match tip.after {
        Some(h) => face[h],
        None => {
            debug_assert!(map.rot[tip.node].is_empty());
            face[outer]
        }
    }
}

/// Extend `α` from the tip, one transversal cut at a time, until the tip's
/// face satisfies `goal`.
fn walk(
    map: &mut Map,
    tip: &mut Tip,
    outer: usize,
    goal: impl Fn(&[usize], usize) -> bool,
) -> Result<(), EncodeError> {
    loop {
        let (face, _) = map.faces();
        let start = tip_face(map, &face, *tip, outer);
        let ok = |f: usize| goal(&face, f);
        if ok(start) {
            return Ok(());
        }
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([start]);
        let mut seen = std::collections::HashSet::from([start]);
        let mut found = None;
        'bfs: while let Some(f) = queue.pop_front() {
            for h in 0..map.half.len() {
                if face[h] != f || map.half[h].alpha {
                    continue;
                }
                let t = map.half[h].twin;
                let n = face[t];
                if seen.insert(n) {
                    parent.insert(n, h);
                    if ok(n) {
                        found = Some(n);
                        break 'bfs;
                    }
                    queue.push_back(n);
                }
            }
        }
        let mut f = found.ok_or_else(|| EncodeError::NoPath("target face unreachable".into()))?;
        let mut h = parent[&f];
        while face[h] != start {
            f = face[h];
            h = parent[&f];
        }
        let (p, back, on) = map.split(h);
        map.connect(*tip, p, on);
        *tip = Tip { node: p, after: Some(back) };
    }
}

#[derive(Clone, Debug)]
struct Event {
    arcs: Vec<usize>,
    /// Upper right, upper left, lower left, lower right.
    singular: Option<[usize; 4]>,
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    page: Page,
    ends: [usize; 2],
}

#[derive(Default)]
struct Builder {
    events: Vec<Event>,
    arcs: Vec<Arc>,
    order: Vec<usize>,
    pending: Vec<(usize, [usize; 4])>,
}

impl Builder {
    fn event(&mut self, singular: Option<[usize; 4]>) -> usize {
        let e = self.events.len();
        self.events.push(Event {
            arcs: Vec::new(),
            singular,
        });
        self.order.push(e);
        e
    }

    fn arc(&mut self, page: Page, a: usize, b: usize) -> usize {
        let k = self.arcs.len();
        self.arcs.push(Arc { page, ends: [a, b] });
        self.events[a].arcs.push(k);
        self.events[b].arcs.push(k);
        k
    }

    fn other(&self, k: usize, e: usize) -> usize {
        let [a, b] = self.arcs[k].ends;
        if a == e {
            b
        } else {
            a
        }
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.events.len()];
        for (i, &e) in self.order.iter().enumerate() {
            pos[e] = i;
        }
        pos
    }

    /// Make the arc `left` leave `e` to the left and `right` to the right,
    /// adding a pair of points next to `e` when both leave the same way.
    fn straighten(&mut self, e: usize, left: usize, right: usize) -> Result<(), EncodeError> {
        let pos = self.positions();
        let tl = pos[self.other(left, e)];
        let tr = pos[self.other(right, e)];
        let pe = pos[e];
        match (tl < pe, tr < pe) {
            (true, false) => Ok(()),
            (false, false) => {
                self.detour(e, left, Side::Left);
                Ok(())
            }
            (true, true) => {
                self.detour(e, right, Side::Right);
                Ok(())
            }
            (false, true) => Err(EncodeError::NoPath("half-arcs cross at a singular point".into())),
        }
    }

    /// Reroute arc `k` from `e`: first to a new point `p` on the given side,
    /// then through the opposite page to a new point `q` beyond `p`, then on
    /// to where it went.
    fn detour(&mut self, e: usize, k: usize, side: Side) {
        let t = self.other(k, e);
        let page = self.arcs[k].page;
        let p = self.events.len();
        let q = p + 1;
        for _ in 0..2 {
            self.events.push(Event {
                arcs: Vec::new(),
                singular: None,
            });
        }
        let at = self.order.iter().position(|&x| x == e).expect("event placed");
        match side {
            Side::Left => {
                self.order.insert(at, p);
                self.order.insert(at, q);
            }
            Side::Right => {
                self.order.insert(at + 1, q);
                self.order.insert(at + 1, p);
            }
        }
        self.arcs[k].ends = [e, p];
        self.events[p].arcs.push(k);
        let n1 = self.arcs.len();
        self.arcs.push(Arc {
            page: flip(page),
            ends: [p, q],
        });
        self.arcs.push(Arc { page, ends: [q, t] });
        self.events[p].arcs.push(n1);
        self.events[q].arcs.extend([n1, n1 + 1]);
        let slot = self.events[t].arcs.iter().position(|&x| x == k).expect("arc at target");
        self.events[t].arcs[slot] = n1 + 1;
        if let Some(arcs) = &mut self.events[t].singular {
            for x in arcs.iter_mut().filter(|x| **x == k) {
                *x = n1 + 1;
            }
        }
    }

    fn word(&self) -> Result<Word, EncodeError> {
        let pos = self.positions();
        let table = PictureTable::standard();
        let mut letters = Vec::with_capacity(self.order.len());
        for &e in &self.order {
            let ev = &self.events[e];
            let end = |k: usize| {
                let o = self.other(k, e);
                ArcEnd {
                    page: self.arcs[k].page,
                    side: if pos[o] < pos[e] { Side::Left } else { Side::Right },
                }
            };
            let ends: Vec<ArcEnd> = ev.arcs.iter().map(|&k| end(k)).collect();
            let letter = table
                .iter()
                .find_map(|(l, pic)| {
                    if pic.ends.len() != ends.len() {
                        return None;
                    }
                    // index in the picture of each of our ends
                    let idx: Option<Vec<usize>> = ends
                        .iter()
                        .map(|x| pic.ends.iter().position(|y| y == x))
                        .collect();
                    let idx = idx?;
                    let mut sorted = idx.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != ends.len() {
                        return None;
                    }
                    if let Some([ur, ul, ll, lr]) = ev.singular {
                        let at = |k: usize| idx[ev.arcs.iter().position(|&x| x == k).expect("own arc")];
                        if pic.partner(at(ur)) != at(ll) || pic.partner(at(ul)) != at(lr) {
                            return None;
                        }
                    }
                    Some(l)
                })
                .ok_or_else(|| EncodeError::NoPath(format!("no letter has half-arcs {ends:?}")))?;
            letters.push(letter);
        }
        Ok(Word::new(letters))
    }
}
