//! Medial graphs, medial pairings, the lensless test, and a critical network for any matching.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};

use crate::combinat::{Matching, NCPartition};
use crate::map::Kind;
use crate::network::{CactusNetwork, Edge, Vertex};
use crate::rat::{frac, q, Q};

/// One wire of the medial graph. `crossings` lists edge indices in the order met.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub ends: Option<(usize, usize)>,
    pub crossings: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedialGraph {
    pub n: usize,
    /// One crossing per network edge, same indices.
    pub crossings: usize,
    /// Boundary strands first (by smaller endpoint), then closed strands.
    pub strands: Vec<Strand>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedialPairing {
    pub tau: Matching,
    pub closed_strands: usize,
}

/// Port of crossing `e`: side `s` is the left of dart `2e+s`, `j` the end it points to.
fn port(e: usize, s: usize, j: usize) -> usize {
    4 * e + 2 * s + j
}

pub fn medial_graph(net: &CactusNetwork) -> MedialGraph {
    let map = net.to_map();
    let n = net.n;
    let m = 2 * n;
    let base = 4 * map.kinds.len();
    let boundary = |t: usize| base + (t - 1) % m;
    let faces = map.faces();
    let mut link: HashMap<usize, usize> = HashMap::new();
    for (f, cycle) in faces.cycles.iter().enumerate() {
        if f == faces.outer {
            continue;
        }
        for (k, &d) in cycle.iter().enumerate() {
            let d2 = cycle[(k + 1) % cycle.len()];
            let a = match &map.kinds[d / 2] {
                Some(Kind::Arc(i)) => boundary(2 * i),
                _ => port(d / 2, d % 2, 1 - d % 2),
            };
            let b = match &map.kinds[d2 / 2] {
                Some(Kind::Arc(i)) => boundary(2 * i + 1),
                _ => port(d2 / 2, d2 % 2, d2 % 2),
            };
            link.insert(a, b);
            link.insert(b, a);
        }
    }
    let straight = |p: usize| {
        let e = p / 4;
        let (s, j) = ((p / 2) % 2, p % 2);
        port(e, 1 - s, 1 - j)
    };
    let mut used = HashSet::new();
    let mut strands = Vec::new();
    for t in 1..=m {
        let start = boundary(t);
        if used.contains(&start) {
            continue;
        }
        used.insert(start);
        let mut crossings = Vec::new();
        let mut cur = start;
        let end = loop {
            let nxt = link[&cur];
            used.insert(nxt);
            if nxt >= base {
                break nxt - base + 1;
            }
            crossings.push(nxt / 4);
            cur = straight(nxt);
            used.insert(cur);
        };
        strands.push(Strand { ends: Some((t.min(end), t.max(end))), crossings });
    }
    let mut all: Vec<usize> = link.keys().copied().filter(|&p| p < base).collect();
    all.sort_unstable();
    for p in all {
        if used.contains(&p) {
            continue;
        }
        let mut crossings = Vec::new();
        let mut cur = p;
        loop {
            used.insert(cur);
            let out = straight(cur);
            used.insert(out);
            crossings.push(cur / 4);
            cur = link[&out];
            if cur == p {
                break;
            }
        }
        strands.push(Strand { ends: None, crossings });
    }
    MedialGraph { n, crossings: net.edges.len(), strands }
}

pub fn medial_pairing(net: &CactusNetwork) -> MedialPairing {
    let g = medial_graph(net);
    let pairs: Vec<(usize, usize)> = g.strands.iter().filter_map(|s| s.ends).collect();
    let tau = Matching::from_pairs(net.n, &pairs).expect("boundary strands pair up the 2n endpoints");
    MedialPairing { tau, closed_strands: g.strands.iter().filter(|s| s.ends.is_none()).count() }
}

/// No closed strands, no self-crossings, and no two strands crossing twice.
pub fn is_lensless(g: &MedialGraph) -> bool {
    if g.strands.iter().any(|s| s.ends.is_none()) {
        return false;
    }
    let sets: Vec<HashSet<usize>> = g.strands.iter().map(|s| s.crossings.iter().copied().collect()).collect();
    if g.strands.iter().zip(&sets).any(|(s, set)| set.len() != s.crossings.len()) {
        return false;
    }
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a].intersection(&sets[b]).count() > 1 {
                return false;
            }
        }
    }
    true
}

/// Graphviz rendering: boundary endpoints, one node per crossing, strands as coloured paths.
pub fn medial_dot(g: &MedialGraph) -> String {
    const COLOURS: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];
    let mut out = String::from("graph medial {\n");
    for t in 1..=2 * g.n {
        out.push_str(&format!("  t{t} [shape=point, xlabel=\"t{t}\"];\n"));
    }
    for x in 0..g.crossings {
        out.push_str(&format!("  c{x} [shape=circle, label=\"{}\"];\n", x + 1));
    }
    for (k, s) in g.strands.iter().enumerate() {
        let mut path: Vec<String> = s.crossings.iter().map(|x| format!("c{x}")).collect();
        match s.ends {
            Some((a, b)) => {
                path.insert(0, format!("t{a}"));
                path.push(format!("t{b}"));
            }
            None => {
                if let Some(first) = path.first().cloned() {
                    path.push(first);
                }
            }
        }
        if path.len() > 1 {
            out.push_str(&format!("  {} [color={}];\n", path.join(" -- "), COLOURS[k % COLOURS.len()]));
        }
    }
    out.push_str("}\n");
    out
}

type Pt = (Q, Q);

fn sub(a: &Pt, b: &Pt) -> Pt {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cross(a: &Pt, b: &Pt) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Counterclockwise angular order of direction vectors.
fn angle_cmp(a: &Pt, b: &Pt) -> Ordering {
    let half = |p: &Pt| if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Straight chords on convex rational points; `None` if three chords meet at a point.
struct Arrangement {
    points: Vec<Pt>,
    /// `(from, to, chord)`. The first `m` are boundary halves `t_j -> mid_j`, then
    /// `mid_j -> t_{j+1}`, then chord pieces. Each `mid_j` sits just outside the hull.
    segs: Vec<(usize, usize, Option<usize>)>,
    crossing_count: usize,
}

fn arrangement(tau: &Matching, attempt: u64) -> Option<Arrangement> {
    let m = 2 * tau.n();
    let mut points: Vec<Pt> = (1..=m as i64)
        .map(|j| {
            let x = q(j) + frac(((j * j * (attempt as i64 + 1)) % 13) * (attempt.min(1) as i64), 29);
            let y = -(&x * &x);
            (x, y)
        })
        .collect();
    let chords = tau.pairs();
    // points along each chord with their parameter
    let mut along: Vec<Vec<(Q, usize)>> =
        chords.iter().map(|&(a, b)| vec![(q(0), a - 1), (q(1), b - 1)]).collect();
    let mut seen: HashSet<Pt> = HashSet::new();
    for x in 0..chords.len() {
        for y in x + 1..chords.len() {
            let (a, b) = chords[x];
            let (c, d) = chords[y];
            let interleaved = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if !interleaved {
                continue;
            }
            let (pa, pb, pc, pd) = (&points[a - 1], &points[b - 1], &points[c - 1], &points[d - 1]);
            let r = sub(pb, pa);
            let s = sub(pd, pc);
            let denom = cross(&r, &s);
            let t = cross(&sub(pc, pa), &s) / &denom;
            let u = cross(&sub(pc, pa), &r) / &denom;
            let pt = (&pa.0 + &r.0 * &t, &pa.1 + &r.1 * &t);
            if !seen.insert(pt.clone()) {
                return None;
            }
            let id = points.len();
            points.push(pt);
            along[x].push((t, id));
            along[y].push((u, id));
        }
    }
    let crossing_count = points.len() - m;
    let mut segs = Vec::new();
    for j in 0..m {
        let (a, b) = (&points[j], &points[(j + 1) % m]);
        let push = if j + 1 < m { q(1) } else { q(-1) };
        let mid = ((&a.0 + &b.0) / q(2), (&a.1 + &b.1) / q(2) + push);
        points.push(mid);
        segs.push((j, points.len() - 1, None));
    }
    for j in 0..m {
        segs.push((m + crossing_count + j, (j + 1) % m, None));
    }
    for (c, list) in along.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.cmp(&b.0));
        for w in list.windows(2) {
            segs.push((w[0].1, w[1].1, Some(c)));
        }
    }
    Some(Arrangement { points, segs, crossing_count })
}

enum Item {
    Bar(usize),
    Corner(usize),
}

/// A critical cactus network, all weights 1, whose medial pairing is `tau`.
pub fn network_of_matching(tau: &Matching) -> CactusNetwork {
    let n = tau.n();
    let m = 2 * n;
    let arr = (0..).find_map(|attempt| arrangement(tau, attempt)).expect("some abscissae avoid concurrency");
    let pts = &arr.points;
    let dart_count = 2 * arr.segs.len();
    let tail = |d: usize| if d % 2 == 0 { arr.segs[d / 2].0 } else { arr.segs[d / 2].1 };
    let head = |d: usize| tail(d ^ 1);
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
    for d in 0..dart_count {
        rot[tail(d)].push(d);
    }
    for (v, r) in rot.iter_mut().enumerate() {
        // clockwise = reverse of counterclockwise
        r.sort_by(|&a, &b| angle_cmp(&sub(&pts[head(b)], &pts[v]), &sub(&pts[head(a)], &pts[v])));
    }
    let mut pos = vec![(0, 0); dart_count];
    for (v, r) in rot.iter().enumerate() {
        for (k, &d) in r.iter().enumerate() {
            pos[d] = (v, k);
        }
    }
    let next = |d: usize| {
        let (v, k) = pos[d ^ 1];
        rot[v][(k + 1) % rot[v].len()]
    };
    let mut face_of = vec![usize::MAX; dart_count];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for s in 0..dart_count {
        if face_of[s] != usize::MAX {
            continue;
        }
        let mut c = Vec::new();
        let mut d = s;
        loop {
            face_of[d] = cycles.len();
            c.push(d);
            d = next(d);
            if d == s {
                break;
            }
        }
        cycles.push(c);
    }
    // the region inside boundary segment j lies left of its reversed first half
    let inner_of_segment = |j: usize| face_of[2 * j + 1];
    let mut white: Vec<Option<bool>> = vec![None; cycles.len()];
    let mut queue = Vec::new();
    for p in 0..n {
        let f = inner_of_segment(2 * p);
        white[f] = Some(true);
        queue.push(f);
    }
    while let Some(f) = queue.pop() {
        for &d in &cycles[f] {
            if arr.segs[d / 2].2.is_none() {
                continue;
            }
            let g = face_of[d ^ 1];
            let want = !white[f].unwrap();
            match white[g] {
                None => {
                    white[g] = Some(want);
                    queue.push(g);
                }
                Some(c) => assert_eq!(c, want, "regions of a chord arrangement are 2-colourable"),
            }
        }
    }
    let outer = face_of[0];

    // items of each white face in clockwise order
    let mut items: HashMap<usize, Vec<Item>> = HashMap::new();
    let mut white_faces = Vec::new();
    for (f, cycle) in cycles.iter().enumerate() {
        if f == outer || white[f] != Some(true) {
            continue;
        }
        white_faces.push(f);
        let mut list = Vec::new();
        for &d in cycle {
            if d / 2 < m && d % 2 == 1 && (d / 2) % 2 == 0 {
                list.push(Item::Bar(d / 4 + 1));
            }
            let h = head(d);
            if h >= m && h < m + arr.crossing_count {
                list.push(Item::Corner(h - m));
            }
        }
        list.reverse();
        items.insert(f, list);
    }
    let bars_of = |f: usize| -> Vec<usize> {
        items[&f].iter().filter_map(|it| if let Item::Bar(p) = it { Some(*p) } else { None }).collect()
    };
    let mut parts = Vec::new();
    let mut inner_index = HashMap::new();
    for &f in &white_faces {
        let bars = bars_of(f);
        if bars.is_empty() {
            inner_index.insert(f, inner_index.len());
        } else {
            parts.push(bars);
        }
    }
    let shape = NCPartition::new(n, parts).expect("white regions give a non-crossing shape");
    let mut bar_rotation = vec![Vec::new(); n];
    let mut inner_rotation = vec![Vec::new(); inner_index.len()];
    // endpoint label of crossing x in face f
    let mut label: HashMap<(usize, usize), Vertex> = HashMap::new();
    for &f in &white_faces {
        let list = &items[&f];
        if let Some(&j) = inner_index.get(&f) {
            for it in list {
                if let Item::Corner(x) = it {
                    inner_rotation[j].push(*x);
                    label.insert((f, *x), Vertex::Inner(j));
                }
            }
        } else {
            let start = list.iter().position(|it| matches!(it, Item::Bar(_))).unwrap();
            let mut cur = 0;
            for k in 0..list.len() {
                match &list[(start + k) % list.len()] {
                    Item::Bar(p) => cur = *p,
                    Item::Corner(x) => {
                        bar_rotation[cur - 1].push(*x);
                        label.insert((f, *x), Vertex::Bar(cur));
                    }
                }
            }
        }
    }
    let mut edges = Vec::with_capacity(arr.crossing_count);
    for x in 0..arr.crossing_count {
        let v = m + x;
        let mut ws: Vec<usize> = rot[v].iter().map(|&d| face_of[d]).filter(|&f| white[f] == Some(true)).collect();
        ws.sort_unstable();
        ws.dedup();
        assert_eq!(ws.len(), 2, "each crossing touches two white regions");
        edges.push(Edge { u: label[&(ws[0], x)].clone(), v: label[&(ws[1], x)].clone(), w: q(1) });
    }
    CactusNetwork { n, shape, interior: inner_index.len(), edges, bar_rotation, inner_rotation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{all_matchings, enumerate_nc, matching_of_partition};
    use crate::network::{example_network, y_network, GroveVector};

    fn m(s: &str) -> Matching {
        Matching::parse(s).unwrap()
    }

    #[test]
    fn pairings_of_examples() {
        assert_eq!(medial_pairing(&example_network()).tau, m("(1,7)(2,9)(3,8)(4,10)(5,6)"));
        assert!(is_lensless(&medial_graph(&example_network())));
        assert_eq!(medial_pairing(&y_network(q(1), q(1), q(1))).tau, m("(1,4)(2,5)(3,6)"));
        assert_eq!(medial_graph(&y_network(q(1), q(1), q(1))).crossings, 3);
        let hollow = CactusNetwork::hollow(NCPartition::singletons(4));
        assert_eq!(medial_pairing(&hollow).tau, m("(1,2)(3,4)(5,6)(7,8)"));
    }

    #[test]
    fn pairing_survives_star_triangle() {
        use crate::network::StarTriangle;
        let y = y_network(q(1), q(2), q(3));
        let d = y.star_triangle(&StarTriangle::YToDelta(0)).unwrap();
        assert_eq!(d.edges.len(), 3);
        assert_eq!(medial_pairing(&d).tau, medial_pairing(&y).tau);
        let back = d.star_triangle(&StarTriangle::DeltaToY([0, 1, 2])).unwrap();
        assert_eq!(medial_pairing(&back).tau, medial_pairing(&y).tau);
    }

    #[test]
    fn dot_lists_every_strand() {
        let dot = medial_dot(&medial_graph(&example_network()));
        assert!(dot.starts_with("graph medial {"));
        assert!(dot.matches(" -- ").count() >= medial_graph(&example_network()).strands.len());
        assert!(dot.contains("t1 -- "));
    }

    #[test]
    fn lenses_are_detected() {
        let empty = CactusNetwork::hollow(NCPartition::singletons(2));
        let doubled = empty.apply_generator(2, &q(1)).unwrap().apply_generator(2, &q(1)).unwrap();
        assert!(!is_lensless(&medial_graph(&doubled)));
        let looped = CactusNetwork {
            n: 1,
            shape: NCPartition::singletons(1),
            interior: 0,
            edges: vec![Edge { u: Vertex::Bar(1), v: Vertex::Bar(1), w: q(1) }],
            bar_rotation: vec![vec![0, 0]],
            inner_rotation: vec![],
        };
        looped.validate().unwrap();
        assert!(!is_lensless(&medial_graph(&looped)));
    }

    #[test]
    fn realizes_every_small_matching() {
        for n in 1..=5 {
            for tau in all_matchings(n) {
                let net = network_of_matching(&tau);
                net.validate().unwrap();
                assert_eq!(net.edges.len(), tau.crossing_number());
                let g = medial_graph(&net);
                assert!(is_lensless(&g), "{tau}");
                assert_eq!(medial_pairing(&net).tau, tau);
            }
        }
    }

    #[test]
    fn noncrossing_matchings_give_hollow_cacti() {
        for s in enumerate_nc(4).unwrap() {
            let net = network_of_matching(&matching_of_partition(&s));
            assert!(net.edges.is_empty());
            assert_eq!(net.shape, s);
            assert_eq!(net.grove_vector(), GroveVector::indicator(&s));
        }
    }
}
