//! Planar marked-graph diagrams: 4-valent plane graphs given by a rotation
//! system, whose vertices are classical crossings or marked singular points.
//!
//! JSON layout:
//!
//! ```json
//! {"vertices": [{"id": 0, "type": "crossing", "rotation": [0, 1, 2, 3], "over": [0, 2]},
//!               {"id": 1, "type": "singular", "rotation": [4, 5, 6, 7], "bridge": [1, 3]}],
//!  "edges": [{"id": 0, "ends": [[0, 0], [1, 2]]}, {"id": 9, "ends": []}]}
//! ```
//!
//! `rotation` lists edge ids counterclockwise; position `k` in it is slot
//! `k`. `over` names the two opposite slots of the over-strand. `bridge`
//! names two opposite corners, corner `k` lying between slots `k` and
//! `k + 1`: the bridge leaves the vertex through them. Resolving with the
//! positive sign joins the two edge-ends on each side of the bridge.
//! An edge's `ends` are `[vertex id, slot]` pairs; an edge with no ends is a
//! circle without vertices.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{DiagramError, InputError};
use crate::pages::{decode, interleave, meet_x, Crossing, EndRef, LinkDiagram, Page, PictureTable};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexType {
    Crossing,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: usize,
    #[serde(rename = "type")]
    pub kind: VertexType,
    pub rotation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridge: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: usize,
    pub ends: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanarMarkedDiagram {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

/// A validated diagram with dense indices. Vertices are sorted by id.
#[derive(Clone, Debug)]
pub(crate) struct Graph {
    pub kind: Vec<VertexType>,
    /// Edge index at each slot.
    pub rot: Vec<[usize; 4]>,
    /// Over slots of a crossing, bridge corners of a singular vertex.
    pub mark: Vec<[usize; 2]>,
    /// `(vertex, slot)` at both ends of each edge with ends.
    pub edges: Vec<[(usize, usize); 2]>,
    pub free_loops: usize,
}

impl Graph {
    /// The far end of the edge leaving `v` at slot `s`.
    pub fn across(&self, v: usize, s: usize) -> (usize, usize) {
        let [p, q] = self.edges[self.rot[v][s]];
        if p == (v, s) {
            q
        } else {
            p
        }
    }

    /// Connected components of the vertex graph, each sorted.
    pub fn vertex_components(&self) -> Vec<Vec<usize>> {
        let n = self.kind.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![start];
            comp[start] = c;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for s in 0..4 {
                    let (w, _) = self.across(v, s);
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Number of face cycles of the rotation system.
    fn face_count(&self) -> usize {
        let n = self.kind.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = 0;
        for v in 0..n {
            for s in 0..4 {
                if seen[v][s] {
                    continue;
                }
                faces += 1;
                let (mut a, mut b) = (v, s);
                while !seen[a][b] {
                    seen[a][b] = true;
                    let (w, t) = self.across(a, b);
                    a = w;
                    b = (t + 3) % 4;
                }
            }
        }
        faces
    }

    /// Strands, going straight through every vertex: each as a list of
    /// `(vertex, slot)` arrivals. Free loops are not included.
    pub fn strands(&self) -> Vec<Vec<(usize, usize)>> {
        self.strands_with(|_, t| (t + 2) % 4)
    }

    /// Closed curves after smoothing every singular vertex: the positive
    /// sign joins the two ends on each side of the bridge, the negative one
    /// the two ends beside each bridge corner.
    pub fn resolution_curves(&self, positive: bool) -> usize {
        self.strands_with(|v, t| {
            if self.kind[v] == VertexType::Crossing {
                return (t + 2) % 4;
            }
            let j = self.mark[v][0];
            // slot t sits at offset k from corner j
            let k = (t + 4 - j) % 4;
            let partner = match (positive, k) {
                (true, 1) => 2,
                (true, 2) => 1,
                (true, 3) => 0,
                (true, _) => 3,
                (false, 0) => 1,
                (false, 1) => 0,
                (false, 2) => 3,
                (false, _) => 2,
            };
            (j + partner) % 4
        })
        .len()
            + self.free_loops
    }

    fn strands_with(&self, through: impl Fn(usize, usize) -> usize) -> Vec<Vec<(usize, usize)>> {
        let mut used = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            if used[e] {
                continue;
            }
            let mut arrivals = Vec::new();
            let (mut v, mut s) = self.edges[e][0];
            loop {
                let edge = self.rot[v][s];
                if used[edge] {
                    break;
                }
                used[edge] = true;
                let (w, t) = self.across(v, s);
                arrivals.push((w, t));
                v = w;
                s = through(w, t);
            }
            out.push(arrivals);
        }
        out
    }
}

impl PlanarMarkedDiagram {
    pub fn from_json(text: &str) -> Result<PlanarMarkedDiagram, InputError> {
        let d: PlanarMarkedDiagram = serde_json::from_str(text)?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    /// Check the structure and planarity of the rotation system.
    pub fn validate(&self) -> Result<(), InputError> {
        self.graph().map(|_| ())
    }

    pub(crate) fn graph(&self) -> Result<Graph, InputError> {
        let bad = |m: String| Err(InputError::Invalid(m));
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&i| self.vertices[i].id);
        let mut vindex = HashMap::new();
        for (k, &i) in order.iter().enumerate() {
            if vindex.insert(self.vertices[i].id, k).is_some() {
                return bad(format!("duplicate vertex id {}", self.vertices[i].id));
            }
        }
        let mut eindex = HashMap::new();
        let mut edges = Vec::new();
        let mut free_loops = 0;
        for e in &self.edges {
            if eindex.contains_key(&e.id) {
                return bad(format!("duplicate edge id {}", e.id));
            }
            match e.ends.len() {
                0 => {
                    eindex.insert(e.id, usize::MAX);
                    free_loops += 1;
                }
                2 => {
                    let mut ends = [(0, 0); 2];
                    for (k, &(v, s)) in e.ends.iter().enumerate() {
                        let Some(&vi) = vindex.get(&v) else {
                            return bad(format!("edge {} ends at unknown vertex {v}", e.id));
                        };
                        if s >= 4 {
                            return bad(format!("edge {} uses slot {s}", e.id));
                        }
                        ends[k] = (vi, s);
                    }
                    if ends[0] == ends[1] {
                        return bad(format!("edge {} has both ends at one slot", e.id));
                    }
                    eindex.insert(e.id, edges.len());
                    edges.push(ends);
                }
                n => return bad(format!("edge {} has {n} ends (expected 0 or 2)", e.id)),
            }
        }
        let mut kind = Vec::new();
        let mut rot = Vec::new();
        let mut mark = Vec::new();
        for &i in &order {
            let v = &self.vertices[i];
            if v.rotation.len() != 4 {
                return bad(format!("vertex {} has degree {}", v.id, v.rotation.len()));
            }
            let mut r = [0; 4];
            for (s, eid) in v.rotation.iter().enumerate() {
                match eindex.get(eid) {
                    Some(&e) if e != usize::MAX => r[s] = e,
                    _ => return bad(format!("vertex {} lists unknown or endless edge {eid}", v.id)),
                }
                if !edges[r[s]].contains(&(vindex[&v.id], s)) {
                    return bad(format!("edge {eid} does not end at vertex {} slot {s}", v.id));
                }
            }
            let m = match (v.kind, v.over, v.bridge) {
                (VertexType::Crossing, Some(o), None) => o,
                (VertexType::Singular, None, Some(b)) => b,
                _ => {
                    return bad(format!(
                        "vertex {}: a crossing needs `over`, a singular vertex needs `bridge`",
                        v.id
                    ))
                }
            };
            let (lo, hi) = (m[0].min(m[1]), m[0].max(m[1]));
            if hi >= 4 || hi - lo != 2 {
                return bad(format!("vertex {}: marked positions {m:?} are not opposite", v.id));
            }
            kind.push(v.kind);
            rot.push(r);
            mark.push([lo, hi]);
        }
        let g = Graph {
            kind,
            rot,
            mark,
            edges,
            free_loops,
        };
        // every vertex-graph component is a sphere: V - E + F = 2
        let v = g.kind.len();
        let components = g.vertex_components().len();
        let f = g.face_count();
        if v + f != 2 * v + 2 * components {
            return bad(format!(
                "rotation system is not planar: V - E + F = {} over {components} components",
                v as i64 - 2 * v as i64 + f as i64
            ));
        }
        Ok(g)
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexType::Crossing).count()
    }

    pub fn singular_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexType::Singular).count()
    }

    /// Closed curves, passing straight through every vertex.
    pub fn component_count(&self) -> Result<usize, InputError> {
        let g = self.graph()?;
        Ok(g.strands().len() + g.free_loops)
    }

    /// Euler characteristic of the surface: minima and maxima cap the two
    /// resolutions, each singular vertex is a saddle.
    pub fn euler_characteristic(&self) -> Result<i64, InputError> {
        let g = self.graph()?;
        let s = self.singular_count() as i64;
        Ok(g.resolution_curves(true) as i64 + g.resolution_curves(false) as i64 - s)
    }

    /// The classical link diagram, for diagrams without singular vertices.
    pub fn to_link_diagram(&self) -> Result<LinkDiagram, InputError> {
        let g = self.graph()?;
        if g.kind.contains(&VertexType::Singular) {
            return Err(InputError::Invalid("diagram has singular vertices".into()));
        }
        let strands = g.strands();
        let mut label = 0;
        let mut components = Vec::new();
        // edge label entering and leaving each slot
        let mut at = vec![[usize::MAX; 4]; g.kind.len()];
        let mut arrive = vec![Vec::new(); g.kind.len()];
        for strand in &strands {
            let first = label;
            let mut comp = Vec::new();
            for (k, &(w, t)) in strand.iter().enumerate() {
                comp.push(label);
                at[w][t] = label;
                arrive[w].push(t);
                let out = if k + 1 == strand.len() { first } else { label + 1 };
                at[w][(t + 2) % 4] = out;
                label += 1;
            }
            components.push(comp);
        }
        for _ in 0..g.free_loops {
            components.push(vec![label]);
            label += 1;
        }
        // arrival slots are listed in traversal order, so the over-strand's
        // arrival tells its direction; labels alone can be ambiguous (curls)
        let crossings = (0..g.kind.len())
            .map(|v| {
                let [o, _] = g.mark[v];
                let s = *arrive[v].iter().find(|&&t| t % 2 != o % 2).expect("under-strand passes");
                let over_in = *arrive[v].iter().find(|&&t| t % 2 == o % 2).expect("over-strand passes");
                // positive when the over-strand runs from slot s+3 to slot s+1
                let sign = if over_in == (s + 3) % 4 { 1 } else { -1 };
                Crossing {
                    ends: [0, 1, 2, 3].map(|k| at[v][(s + k) % 4]),
                    sign,
                }
            })
            .collect();
        Ok(LinkDiagram { crossings, components })
    }
}

/// The planar marked diagram obtained by projecting a word's embedding.
///
/// `P0` and `P1` fold onto the upper half-plane with `P1` in front, `P2`
/// becomes the lower half-plane, arcs are semicircles and the bridges lie
/// along the axis. Fails for singular letters whose four half-arcs leave
/// into the same half-plane (`x2`), which project to a tangency.
pub fn planar_diagram(w: &Word) -> Result<PlanarMarkedDiagram, DiagramError> {
    let g = decode(w)?;
    let table = PictureTable::standard();

    struct Meet {
        over: usize,
        under: usize,
        x: f64,
        y: f64,
    }
    let centre = |arc: usize| {
        let a = &g.arcs[arc];
        (a.left.point + a.right.point) as f64 / 2.0
    };
    let mut meets = Vec::new();
    for (i, p) in g.arcs.iter().enumerate() {
        if p.page != Page::P1 {
            continue;
        }
        for (j, q) in g.arcs.iter().enumerate() {
            if q.page == Page::P0 && interleave(p, q) {
                let (num, den) = meet_x(p, q);
                let x = num as f64 / den as f64;
                let r = (p.right.point - p.left.point) as f64 / 2.0;
                let y = (r * r - (x - centre(i)).powi(2)).max(0.0).sqrt();
                meets.push(Meet { over: i, under: j, x, y });
            }
        }
    }
    let mut on_arc: Vec<Vec<usize>> = vec![Vec::new(); g.arcs.len()];
    for (k, m) in meets.iter().enumerate() {
        on_arc[m.over].push(k);
        on_arc[m.under].push(k);
    }
    for list in &mut on_arc {
        list.sort_by(|&s, &t| meets[s].x.total_cmp(&meets[t].x));
    }

    #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
    enum Port {
        Sing { point: usize, end: usize },
        Meet { k: usize, arc: usize, right: bool },
    }
    let singular: Vec<usize> = g.singular_points.iter().map(|s| s.point).collect();
    let is_singular = |p: usize| w.letters()[p].is_singular();

    // walk along `arc` in direction `right`, past position `after` in its
    // list of meets, until the next vertex
    let advance = |mut arc: usize, mut right: bool, mut after: Option<usize>| -> Port {
        loop {
            let list = &on_arc[arc];
            let next = match (right, after) {
                (true, None) => (!list.is_empty()).then_some(0),
                (true, Some(i)) => (i + 1 < list.len()).then_some(i + 1),
                (false, None) => list.len().checked_sub(1),
                (false, Some(i)) => i.checked_sub(1),
            };
            if let Some(j) = next {
                return Port::Meet {
                    k: list[j],
                    arc,
                    right: !right,
                };
            }
            let a = &g.arcs[arc];
            let end = if right { a.right } else { a.left };
            if is_singular(end.point) {
                return Port::Sing {
                    point: end.point,
                    end: end.end,
                };
            }
            let other = EndRef {
                point: end.point,
                end: table.get(w.letters()[end.point]).partner(end.end),
            };
            arc = g.arc_index(other);
            right = g.arcs[arc].left == other;
            after = None;
        }
    };

    // direction in which a port leaves its vertex
    let angle = |port: Port| -> f64 {
        let (dx, dy) = match port {
            Port::Meet { k, arc, right } => {
                let m = &meets[k];
                let (tx, ty) = (m.y, -(m.x - centre(arc)));
                if right {
                    (tx, ty)
                } else {
                    (-tx, -ty)
                }
            }
            Port::Sing { point, end } => {
                let a = g.arc_at(EndRef { point, end });
                let r = (a.right.point - a.left.point) as f64 / 2.0;
                let phi = 1e-3 / r;
                let theta = if a.left.point == point { PI - phi } else { phi };
                let lift = match a.page {
                    Page::P0 => 1.0,
                    Page::P1 => 1.001,
                    Page::P2 => -1.0,
                };
                (
                    centre(g.arc_index(EndRef { point, end })) + r * theta.cos() - point as f64,
                    lift * r * theta.sin(),
                )
            }
        };
        dy.atan2(dx).rem_euclid(2.0 * PI)
    };

    let mut vertices = Vec::new();
    let mut slot_of: BTreeMap<Port, (usize, usize)> = BTreeMap::new();
    for &point in &singular {
        let id = vertices.len();
        let mut ports: Vec<Port> = (0..4).map(|end| Port::Sing { point, end }).collect();
        ports.sort_by(|&p, &q| angle(p).total_cmp(&angle(q)));
        let angles: Vec<f64> = ports.iter().map(|&p| angle(p)).collect();
        let flat = || DiagramError::FlatSingular {
            letter: w.letters()[point].to_string(),
            position: point,
        };
        // corner 3 always contains the east direction
        if !(angles[1] < PI && PI < angles[2]) {
            return Err(flat());
        }
        let pic = table.get(w.letters()[point]);
        for (s, &p) in ports.iter().enumerate() {
            let Port::Sing { end, .. } = p else { unreachable!() };
            let partner = Port::Sing {
                point,
                end: pic.partner(end),
            };
            if ports[(s + 2) % 4] != partner {
                return Err(flat());
            }
            slot_of.insert(p, (id, s));
        }
        vertices.push((VertexType::Singular, [1, 3]));
    }
    for (k, m) in meets.iter().enumerate() {
        let id = vertices.len();
        let mut ports: Vec<Port> = [(m.over, true), (m.over, false), (m.under, true), (m.under, false)]
            .map(|(arc, right)| Port::Meet { k, arc, right })
            .to_vec();
        ports.sort_by(|&p, &q| angle(p).total_cmp(&angle(q)));
        let mut over = Vec::new();
        for (s, &p) in ports.iter().enumerate() {
            if let Port::Meet { arc, .. } = p {
                if arc == m.over {
                    over.push(s);
                }
            }
            slot_of.insert(p, (id, s));
        }
        vertices.push((VertexType::Crossing, [over[0], over[1]]));
    }

    let mut rotation = vec![[usize::MAX; 4]; vertices.len()];
    let mut edges = Vec::new();
    let ports: Vec<Port> = slot_of.keys().copied().collect();
    for p in ports {
        let (v, s) = slot_of[&p];
        if rotation[v][s] != usize::MAX {
            continue;
        }
        let q = match p {
            Port::Meet { k, arc, right } => {
                let pos = on_arc[arc].iter().position(|&j| j == k).expect("meet on arc");
                advance(arc, right, Some(pos))
            }
            Port::Sing { point, end } => {
                let e = EndRef { point, end };
                let arc = g.arc_index(e);
                advance(arc, g.arcs[arc].left == e, None)
            }
        };
        let (w2, t) = slot_of[&q];
        let id = edges.len();
        rotation[v][s] = id;
        rotation[w2][t] = id;
        edges.push(EdgeSpec {
            id,
            ends: vec![(v, s), (w2, t)],
        });
    }
    // closed curves that meet no vertex
    for comp in &g.components {
        let bare = comp.points.iter().all(|&p| !is_singular(p))
            && comp.arcs.iter().all(|&(a, _)| on_arc[a].is_empty());
        if bare {
            edges.push(EdgeSpec {
                id: edges.len(),
                ends: vec![],
            });
        }
    }
    let vertices = vertices
        .into_iter()
        .enumerate()
        .map(|(id, (kind, m))| VertexSpec {
            id,
            kind,
            rotation: rotation[id].to_vec(),
            over: (kind == VertexType::Crossing).then_some(m),
            bridge: (kind == VertexType::Singular).then_some(m),
        })
        .collect();
    Ok(PlanarMarkedDiagram { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{TREFOIL, W_G};
    use crate::pages::to_link_diagram;
    use crate::surface::{kauffman_bracket, normalized_bracket};
    use crate::word;

    #[test]
    fn projection_matches_word_diagram() {
        for text in ["a1 c1", "a1 c1 a1 c1", TREFOIL, "a1 a1 c1 c1"] {
            let w = word!(text);
            let link = to_link_diagram(&w).unwrap();
            let d = planar_diagram(&w).unwrap();
            d.validate().unwrap();
            assert_eq!(d.crossing_count(), link.crossing_count(), "{text}");
            assert_eq!(d.component_count().unwrap(), link.component_count(), "{text}");
            let ours = d.to_link_diagram().unwrap();
            ours.validate().unwrap();
            assert_eq!(kauffman_bracket(&ours).unwrap(), kauffman_bracket(&link).unwrap(), "{text}");
            assert_eq!(normalized_bracket(&ours).unwrap(), normalized_bracket(&link).unwrap(), "{text}");
        }
    }

    #[test]
    fn spun_trefoil_projects() {
        let d = planar_diagram(&word!(W_G)).unwrap();
        d.validate().unwrap();
        assert_eq!(d.singular_count(), 2);
        let back = PlanarMarkedDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn rejects_broken_input() {
        let bad = r#"{"vertices":[{"id":0,"type":"crossing","rotation":[0,0,1,1],"over":[0,1]}],
                      "edges":[{"id":0,"ends":[[0,0],[0,1]]},{"id":1,"ends":[[0,2],[0,3]]}]}"#;
        assert!(PlanarMarkedDiagram::from_json(bad).is_err());
        let nonplanar = r#"{"vertices":[{"id":0,"type":"crossing","rotation":[0,1,0,1],"over":[0,2]}],
                      "edges":[{"id":0,"ends":[[0,0],[0,2]]},{"id":1,"ends":[[0,1],[0,3]]}]}"#;
        assert!(PlanarMarkedDiagram::from_json(nonplanar).is_err());
    }
}
