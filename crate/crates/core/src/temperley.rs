//! From cactus networks to bipartite graphs, and from grove coordinates to Plücker coordinates.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::combinat::{catalan_subset, dual, k_subsets, NCPartition};
use crate::error::{Error, Result};
use crate::grassmann::{plucker_check, BEdge, Color, PlanarBipartiteGraph, PluckerVector};
use crate::map::{Kind, Map};
use crate::network::{nc_index, CactusNetwork, GroveVector};
use crate::rat::{Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// `b_v` or a glued `b_i`: node of the network map.
    Node(usize),
    /// `b_F` for an inner face.
    Face(usize),
    /// `w_e` for network edge `e`.
    EdgeMid(usize),
}

/// `N(Γ)` together with the network data each interior vertex came from.
#[derive(Clone, Debug)]
pub struct TemperleyGraph {
    pub n: usize,
    pub graph: PlanarBipartiteGraph,
    /// Role of interior vertex `j`.
    pub roles: Vec<Role>,
    /// Map node of each bar.
    bar_node: Vec<usize>,
    /// Inner face holding each tilde vertex.
    tilde_face: Vec<usize>,
    /// Map nodes at the two ends and inner faces on the two sides of each kept edge.
    edge_ends: HashMap<usize, ([usize; 2], [usize; 2])>,
    weights: Vec<Q>,
    nodes: usize,
    faces: usize,
}

pub fn temperley(net: &CactusNetwork) -> TemperleyGraph {
    let n = net.n;
    let m = 2 * n;
    let mut map: Map = net.to_map();
    let loops: Vec<usize> = map.real_edges().filter(|&e| map.ends[e][0] == map.ends[e][1]).collect();
    for e in loops {
        map.delete_edge(e);
    }
    let faces = map.faces();
    let mut face_index = vec![usize::MAX; faces.cycles.len()];
    let mut inner = Vec::new();
    for f in 0..faces.cycles.len() {
        if f != faces.outer {
            face_index[f] = inner.len();
            inner.push(f);
        }
    }
    let nodes = map.rot.len();
    let kept: Vec<usize> = map.real_edges().collect();
    let mut roles: Vec<Role> = (0..nodes).map(Role::Node).collect();
    roles.extend((0..inner.len()).map(Role::Face));
    roles.extend(kept.iter().map(|&e| Role::EdgeMid(e)));
    let colors = roles.iter().map(|r| if matches!(r, Role::EdgeMid(_)) { Color::White } else { Color::Black }).collect();
    let node_id = |x: usize| m + x;
    let face_id = |f: usize| m + nodes + face_index[f];

    let mut edges = Vec::new();
    let add = |edges: &mut Vec<BEdge>, u: usize, v: usize, w: Q| {
        edges.push(BEdge { u, v, w });
        edges.len() - 1
    };
    let bar_node: Vec<usize> = (1..=n).map(|p| map.tail(map.arc_out(p))).collect();
    let bar_pendant: Vec<usize> = (1..=n).map(|p| add(&mut edges, 2 * p - 2, node_id(bar_node[p - 1]), Q::one())).collect();
    let tilde_face: Vec<usize> = (1..=n).map(|i| faces.face_of[map.arc_in(i % n + 1)]).collect();
    let tilde_pendant: Vec<usize> =
        (1..=n).map(|i| add(&mut edges, 2 * i - 1, face_id(tilde_face[i - 1]), Q::one())).collect();
    let mut node_edge = HashMap::new();
    let mut face_edge = HashMap::new();
    let mut edge_ends = HashMap::new();
    let mut weights = vec![Q::zero(); map.kinds.len()];
    for (k, &e) in kept.iter().enumerate() {
        let w_id = m + nodes + inner.len() + k;
        let w = map.weight(e).unwrap().clone();
        weights[e] = w.clone();
        for b in 0..2 {
            node_edge.insert(2 * e + b, add(&mut edges, node_id(map.ends[e][b]), w_id, w.clone()));
            face_edge.insert(2 * e + b, add(&mut edges, face_id(faces.face_of[2 * e + b]), w_id, Q::one()));
        }
        let sides = [face_index[faces.face_of[2 * e]], face_index[faces.face_of[2 * e + 1]]];
        edge_ends.insert(e, (map.ends[e], sides));
    }
    let mut rotation = Vec::with_capacity(roles.len());
    for x in 0..nodes {
        let mut r = Vec::new();
        for &d in map.rotation(x) {
            match &map.kinds[d / 2] {
                Some(Kind::Arc(i)) if d % 2 == 0 => r.push(bar_pendant[i - 1]),
                Some(Kind::Arc(_)) => {}
                _ => r.push(node_edge[&d]),
            }
        }
        rotation.push(r);
    }
    for &f in &inner {
        let mut r = Vec::new();
        for &d in faces.cycles[f].iter().rev() {
            match &map.kinds[d / 2] {
                Some(Kind::Arc(i)) => r.push(tilde_pendant[i - 1]),
                _ => r.push(face_edge[&d]),
            }
        }
        rotation.push(r);
    }
    for &e in &kept {
        let (a, b) = (2 * e, 2 * e + 1);
        rotation.push(vec![node_edge[&b], face_edge[&b], node_edge[&a], face_edge[&a]]);
    }
    let graph = PlanarBipartiteGraph { m, colors, edges, rotation };
    let tilde_face = tilde_face.iter().map(|&f| face_index[f]).collect();
    TemperleyGraph { n, graph, roles, bar_node, tilde_face, edge_ends, weights, nodes, faces: inner.len() }
}

/// Grove, dual grove and boundary partition read off an almost perfect matching of `N(Γ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroveOfMatching {
    pub forest: Vec<usize>,
    pub dual_forest: Vec<usize>,
    pub sigma: NCPartition,
    pub weight: Q,
}

fn find(p: &mut [usize], x: usize) -> usize {
    if p[x] != x {
        let r = find(p, p[x]);
        p[x] = r;
    }
    p[x]
}

/// Joins `a` and `b`; false if they were already connected.
fn union(p: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(p, a), find(p, b));
    p[ra] = rb;
    ra != rb
}

fn groups(p: &mut [usize], reps: &[usize]) -> Vec<Vec<usize>> {
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &x) in reps.iter().enumerate() {
        by_root.entry(find(p, x)).or_default().push(i + 1);
    }
    by_root.into_values().collect()
}

pub fn grove_of_matching(t: &TemperleyGraph, matching: &[usize]) -> Result<GroveOfMatching> {
    let g = &t.graph;
    let mut forest = Vec::new();
    let mut dual_forest = Vec::new();
    for &e in matching {
        let BEdge { u, v, .. } = &g.edges[e];
        let (white, black) = if g.color(*u) == Color::White { (*u, *v) } else { (*v, *u) };
        if white < g.m || black < g.m {
            continue;
        }
        let Role::EdgeMid(ne) = t.roles[white - g.m] else {
            return Err(Error::Inconsistent("matched pair has no white edge vertex".into()));
        };
        match t.roles[black - g.m] {
            Role::Node(_) => forest.push(ne),
            Role::Face(_) => dual_forest.push(ne),
            Role::EdgeMid(_) => return Err(Error::Inconsistent("two white vertices matched".into())),
        }
    }
    forest.sort_unstable();
    dual_forest.sort_unstable();
    if forest.len() + dual_forest.len() != t.edge_ends.len() {
        return Err(Error::Inconsistent("some edge vertex is unmatched".into()));
    }
    let mut comp: Vec<usize> = (0..t.nodes).collect();
    for &e in &forest {
        let ([a, b], _) = t.edge_ends[&e];
        if !union(&mut comp, a, b) {
            return Err(Error::Inconsistent("grove contains a cycle".into()));
        }
    }
    let mut dcomp: Vec<usize> = (0..t.faces).collect();
    for &e in &dual_forest {
        let (_, [a, b]) = t.edge_ends[&e];
        if !union(&mut dcomp, a, b) {
            return Err(Error::Inconsistent("dual grove contains a cycle".into()));
        }
    }
    let sigma = NCPartition::new(t.n, groups(&mut comp, &t.bar_node))?;
    let tilde = NCPartition::new(t.n, groups(&mut dcomp, &t.tilde_face))?;
    if tilde != dual(&sigma) {
        return Err(Error::Inconsistent("dual grove does not have the dual partition".into()));
    }
    let subset = g.boundary_subset(matching);
    if !is_concordant(&subset, &sigma) {
        return Err(Error::Inconsistent("grove partition is not concordant with the matching".into()));
    }
    let weight = forest.iter().fold(Q::one(), |acc, &e| acc * &t.weights[e]);
    Ok(GroveOfMatching { forest, dual_forest, sigma, weight })
}

/// Every part of `σ` (odd positions) and of `σ̃` (even positions) misses `I` exactly once.
pub fn is_concordant(subset: &[usize], sigma: &NCPartition) -> bool {
    let n = sigma.n();
    if subset.len() + 1 != n {
        return false;
    }
    let outside = |pos: usize| !subset.contains(&pos);
    sigma.parts().iter().all(|p| p.iter().filter(|&&i| outside(2 * i - 1)).count() == 1)
        && dual(sigma).parts().iter().all(|p| p.iter().filter(|&&i| outside(2 * i)).count() == 1)
}

/// The 0/1 matrix `A = (a_{Iσ})` stored both ways, with `σ` in canonical order.
pub struct Concordance {
    pub n: usize,
    /// `(n-1)`-subsets of `[2n]`, lexicographic.
    pub subsets: Vec<Vec<usize>>,
    /// `𝓔(I)` as partition indices.
    pub of_subset: Vec<Vec<usize>>,
    /// `𝓜(σ)` as subset indices.
    pub of_partition: Vec<Vec<usize>>,
    /// Partition indices sorted by `I_1(σ)`, which refines dominance.
    pub catalan_order: Vec<usize>,
    /// Subset index of `I_1(σ)`.
    pub catalan_row: Vec<usize>,
}

pub fn concordance(n: usize) -> Arc<Concordance> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Concordance>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let built = Arc::new(build_concordance(n));
    cache.lock().unwrap().entry(n).or_insert(built).clone()
}

fn build_concordance(n: usize) -> Concordance {
    let m = 2 * n;
    let shape = PluckerVector::zero(m, n - 1);
    let subsets = k_subsets(m, n - 1);
    let idx = nc_index(n);
    let mut of_subset = vec![Vec::new(); subsets.len()];
    let mut of_partition = Vec::with_capacity(idx.list.len());
    for (s, sigma) in idx.list.iter().enumerate() {
        // choose the one excluded position in every part of σ and of σ̃
        let mut blocks: Vec<Vec<usize>> = sigma.parts().iter().map(|p| p.iter().map(|&i| 2 * i - 1).collect()).collect();
        blocks.extend(dual(sigma).parts().iter().map(|p| p.iter().map(|&i| 2 * i).collect()));
        let mut rows = Vec::new();
        let mut choice = vec![0usize; blocks.len()];
        loop {
            let mut keep = vec![true; m + 1];
            for (b, &c) in blocks.iter().zip(&choice) {
                keep[b[c]] = false;
            }
            let set: Vec<usize> = (1..=m).filter(|&x| keep[x]).collect();
            rows.push(shape.index_of(&set));
            let mut k = 0;
            while k < blocks.len() {
                choice[k] += 1;
                if choice[k] < blocks[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == blocks.len() {
                break;
            }
        }
        rows.sort_unstable();
        for &r in &rows {
            of_subset[r].push(s);
        }
        of_partition.push(rows);
    }
    let catalan_row: Vec<usize> = idx.list.iter().map(|s| shape.index_of(&catalan_subset(s, 1).elements)).collect();
    let mut catalan_order: Vec<usize> = (0..idx.list.len()).collect();
    catalan_order.sort_by_key(|&s| catalan_row[s]);
    Concordance { n, subsets, of_subset, of_partition, catalan_order, catalan_row }
}

/// `𝓔(I)`.
pub fn concordant_partitions(subset: &[usize], n: usize) -> Vec<NCPartition> {
    let c = concordance(n);
    let shape = PluckerVector::zero(2 * n, n - 1);
    if subset.len() + 1 != n {
        return Vec::new();
    }
    let idx = nc_index(n);
    c.of_subset[shape.index_of(subset)].iter().map(|&s| idx.list[s].clone()).collect()
}

/// `𝓜(σ)`.
pub fn concordant_subsets(sigma: &NCPartition) -> Vec<Vec<usize>> {
    let c = concordance(sigma.n());
    let s = nc_index(sigma.n()).index[sigma];
    c.of_partition[s].iter().map(|&r| c.subsets[r].clone()).collect()
}

/// `Δ_I = Σ_{σ ∈ 𝓔(I)} L_σ`.
pub fn embed(l: &GroveVector) -> PluckerVector {
    let c = concordance(l.n);
    let mut p = PluckerVector::zero(2 * l.n, l.n - 1);
    for (r, parts) in c.of_subset.iter().enumerate() {
        p.coords[r] = parts.iter().fold(Q::zero(), |acc, &s| acc + &l.coords[s]);
    }
    p
}

fn grove_n(p: &PluckerVector) -> Result<usize> {
    if p.m % 2 != 0 || p.m == 0 || p.k + 1 != p.m / 2 {
        return Err(Error::InvalidArgument(format!("expected a point of Gr(n-1, 2n), got Gr({}, {})", p.k, p.m)));
    }
    Ok(p.m / 2)
}

/// Inverse of [`embed`] by the triangular solve on Catalan rows.
pub fn recover_groves(p: &PluckerVector) -> Result<GroveVector> {
    let n = grove_n(p)?;
    let c = concordance(n);
    let mut l = GroveVector::zero(n);
    for &s in &c.catalan_order {
        let row = c.catalan_row[s];
        let mut v = p.coords[row].clone();
        for &other in &c.of_subset[row] {
            if other != s {
                v -= &l.coords[other];
            }
        }
        l.coords[s] = v;
    }
    if embed(&l) != *p {
        return Err(Error::NotInImage("vector is not in the span of the concordance matrix".into()));
    }
    Ok(l)
}

/// Membership in the column space of `A` by exact rank.
pub fn in_column_space(p: &PluckerVector) -> Result<bool> {
    let n = grove_n(p)?;
    let c = concordance(n);
    let cols = c.of_partition.len();
    let mut a = Matrix::zeros(c.subsets.len(), cols + 1);
    for (s, rows) in c.of_partition.iter().enumerate() {
        for &r in rows {
            a[(r, s)] = Q::one();
        }
    }
    let base = a.submatrix(&(0..c.subsets.len()).collect::<Vec<_>>(), &(0..cols).collect::<Vec<_>>()).rank();
    for (r, v) in p.coords.iter().enumerate() {
        a[(r, cols)] = v.clone();
    }
    Ok(a.rank() == base)
}

#[derive(Clone, Debug)]
pub enum Point {
    Plucker(PluckerVector),
    Grove(GroveVector),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub in_h: bool,
    pub in_x: bool,
    pub in_x_nonneg: bool,
    pub is_grove_point: bool,
}

pub fn classify_point(point: &Point) -> Result<Classification> {
    match point {
        Point::Grove(l) => {
            let p = embed(l);
            let in_x = !p.is_zero() && plucker_check(&p);
            Ok(Classification {
                in_h: true,
                in_x,
                in_x_nonneg: in_x && p.is_nonnegative(),
                is_grove_point: !l.coords.iter().all(|v| v.is_zero())
                    && l.is_nonnegative()
                    && quadratic_check(l, 1)?,
            })
        }
        Point::Plucker(p) => {
            let in_h = !p.is_zero() && in_column_space(p)?;
            let in_x = in_h && plucker_check(p);
            let grove = if in_h { Some(recover_groves(p)?) } else { None };
            Ok(Classification {
                in_h,
                in_x,
                in_x_nonneg: in_x && p.is_nonnegative(),
                is_grove_point: grove.is_some_and(|l| l.is_nonnegative() && quadratic_check(&l, 1).unwrap_or(false)),
            })
        }
    }
}

/// The grove-coordinate Plücker relations obtained by swapping the first `k` entries of `J`
/// with any `k` entries of `I`.
pub fn quadratic_check(l: &GroveVector, k: usize) -> Result<bool> {
    let n = l.n;
    if k == 0 || (k != 1 && k + 1 >= n) {
        return Err(Error::InvalidArgument(format!("swap size {k} outside [1, n-2]")));
    }
    let size = n - 1;
    if size < k {
        return Ok(true);
    }
    let p = embed(l);
    let subsets = k_subsets(2 * n, size);
    let picks = k_subsets(size, k);
    for i in &subsets {
        for j in &subsets {
            let lhs = p.get(i) * p.get(j);
            let mut rhs = Q::zero();
            for pick in &picks {
                let mut i2 = i.clone();
                let mut j2 = j.clone();
                for (t, &pos) in pick.iter().enumerate() {
                    std::mem::swap(&mut i2[pos - 1], &mut j2[t]);
                }
                rhs += p.signed(&i2) * p.signed(&j2);
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nonzero entries of `A` as `(row subset, column partition)` pairs.
pub fn concordance_triplets(n: usize) -> Vec<(Vec<usize>, NCPartition)> {
    let c = concordance(n);
    let idx = nc_index(n);
    let mut out = Vec::new();
    for (r, parts) in c.of_subset.iter().enumerate() {
        for &s in parts {
            out.push((c.subsets[r].clone(), idx.list[s].clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::affine_of_matching;
    use crate::combinat::{enumerate_nc, matching_of_partition, Matching};
    use crate::grassmann::{boundary_measurements, perm_of_point, positroid_of, trip_permutation};
    use crate::medial::medial_pairing;
    use crate::network::{example_network, y_network};
    use crate::rat::q;
    use num_traits::Signed;

    fn p(s: &str) -> NCPartition {
        NCPartition::parse(s).unwrap()
    }

    #[test]
    fn y_graph_shape() {
        let t = temperley(&y_network(q(2), q(3), q(5)));
        let g = &t.graph;
        g.validate().unwrap();
        assert_eq!(g.m, 6);
        assert_eq!(g.colors.len(), 10);
        assert_eq!(g.colors.iter().filter(|&&c| c == Color::White).count(), 3);
        assert_eq!(g.k(), 2);
        assert!((0..6).all(|b| g.color(b) == Color::White));
    }

    #[test]
    fn y_measurements() {
        let (a, b, c) = (q(2), q(3), q(5));
        let pv = boundary_measurements(&temperley(&y_network(a.clone(), b.clone(), c.clone())).graph).unwrap();
        let d = |s: [usize; 2]| pv.get(&s).clone();
        assert_eq!(d([1, 2]), &a * &c);
        assert_eq!(d([4, 5]), &a * &c);
        assert_eq!(d([2, 3]), &b * &c);
        assert_eq!(d([5, 6]), &b * &c);
        assert_eq!(d([3, 4]), &a * &b);
        assert_eq!(d([1, 6]), &a * &b);
        for s in [[1, 3], [3, 5], [1, 5]] {
            assert_eq!(d(s), &a * &b * &c);
        }
        for s in [[2, 4], [4, 6], [2, 6]] {
            assert_eq!(d(s), &a + &b + &c);
        }
        assert_eq!(d([1, 4]), &a * &b + &a * &c);
        assert_eq!(d([2, 5]), &a * &c + &b * &c);
        assert_eq!(d([3, 6]), &a * &b + &b * &c);
    }

    #[test]
    fn single_vertex() {
        let t = temperley(&CactusNetwork::hollow(NCPartition::singletons(1)));
        let pv = boundary_measurements(&t.graph).unwrap();
        assert_eq!((pv.m, pv.k), (2, 0));
        assert_eq!(pv.coords, vec![q(1)]);
    }

    #[test]
    fn concordance_examples() {
        let sigma = p("1 4 6|2 3|5");
        assert!(is_concordant(&[2, 5, 7, 8, 11], &sigma));
        assert!(!is_concordant(&[2, 5, 7, 8, 12], &sigma));
        assert!(is_concordant(&[], &p("1")));
        for n in 1..=5 {
            let c = concordance(n);
            for (r, s) in c.subsets.iter().enumerate() {
                assert!(!c.of_subset[r].is_empty());
                for (t, sigma) in nc_index(n).list.iter().enumerate() {
                    assert_eq!(c.of_subset[r].contains(&t), is_concordant(s, sigma));
                }
            }
            assert!(c.of_partition.iter().all(|rows| !rows.is_empty()));
        }
    }

    #[test]
    fn unique_concordance_count() {
        for (n, want) in [(1, 1), (2, 4), (3, 12), (4, 32), (5, 80)] {
            let c = concordance(n);
            assert_eq!(c.of_subset.iter().filter(|v| v.len() == 1).count(), want, "n={n}");
        }
    }

    #[test]
    fn concordance_is_a_positroid() {
        for n in 1..=5 {
            for sigma in enumerate_nc(n).unwrap() {
                let (_, f) = affine_of_matching(&matching_of_partition(&sigma));
                assert_eq!(concordant_subsets(&sigma), positroid_of(&f), "{sigma}");
                for a in 1..=2 * n {
                    assert!(is_concordant(&catalan_subset(&sigma, a).elements, &sigma));
                }
            }
        }
    }

    #[test]
    fn embed_y_ones() {
        let l = y_network(q(1), q(1), q(1)).grove_vector();
        assert_eq!(*l.get(&p("1|2|3")), q(3));
        let pv = embed(&l);
        assert_eq!(*pv.get(&[1, 2]), q(1));
        assert_eq!(*pv.get(&[2, 4]), q(3));
        assert_eq!(*pv.get(&[1, 4]), q(2));
        assert_eq!(*pv.get(&[1, 3]), q(1));
        assert_eq!(recover_groves(&pv).unwrap(), l);
    }

    #[test]
    fn embed_matches_measurements() {
        for net in [y_network(q(2), q(3), q(7)), example_network()] {
            let t = temperley(&net);
            assert_eq!(boundary_measurements(&t.graph).unwrap(), embed(&net.grove_vector()));
        }
    }

    #[test]
    fn indicator_embeds_to_its_positroid() {
        for sigma in enumerate_nc(4).unwrap() {
            let pv = embed(&GroveVector::indicator(&sigma));
            assert_eq!(pv.support(), concordant_subsets(&sigma));
            assert!(pv.coords.iter().all(|v| v.is_zero() || *v == q(1)));
            assert_eq!(recover_groves(&pv).unwrap(), GroveVector::indicator(&sigma));
        }
    }

    #[test]
    fn example_embeds_into_its_cell() {
        let net = example_network();
        let tau = Matching::parse("(1,7)(2,9)(3,8)(4,10)(5,6)").unwrap();
        assert_eq!(medial_pairing(&net).tau, tau);
        let pv = embed(&net.grove_vector());
        assert_eq!(perm_of_point(&pv).unwrap(), affine_of_matching(&tau).1);
        assert_eq!(trip_permutation(&temperley(&net).graph).unwrap(), affine_of_matching(&tau).1);
    }

    #[test]
    fn glued_hollow_cactus_trips() {
        let net = CactusNetwork::hollow(p("1|2 3 5|4"));
        let t = temperley(&net);
        t.graph.validate().unwrap();
        let trip = t.graph.trip(9);
        assert_eq!(*trip.last().unwrap() + 1, 5);
        let f = trip_permutation(&t.graph).unwrap();
        assert_eq!(f.eval(9), 15);
        let tau = medial_pairing(&net).tau;
        assert_eq!(f, affine_of_matching(&tau).1);
        assert_eq!(perm_of_point(&boundary_measurements(&t.graph).unwrap()).unwrap(), f);
    }

    #[test]
    fn matchings_biject_with_groves() {
        let net = example_network();
        let t = temperley(&net);
        let l = net.grove_vector();
        let mut by_subset: HashMap<Vec<usize>, Q> = HashMap::new();
        let mut total = 0;
        t.graph.for_each_matching(|edges, subset, w| {
            let g = grove_of_matching(&t, edges).unwrap();
            assert_eq!(g.weight, w);
            *by_subset.entry(subset.to_vec()).or_insert_with(Q::zero) += w;
            total += 1;
        });
        assert!(total > 0);
        for (subset, w) in by_subset {
            let want = concordant_partitions(&subset, 5).iter().fold(Q::zero(), |acc, s| acc + l.get(s));
            assert_eq!(w, want);
        }
    }

    #[test]
    fn y_grove_for_first_pair() {
        let t = temperley(&y_network(q(2), q(3), q(5)));
        let mut seen = Vec::new();
        t.graph.for_each_matching(|edges, subset, _| {
            if subset == [1, 2] {
                seen.push(grove_of_matching(&t, edges).unwrap());
            }
        });
        assert_eq!(seen.len(), 1);
        assert_eq!(seen[0].forest, vec![0, 2]);
        assert_eq!(seen[0].sigma, p("1 3|2"));
        assert_eq!(seen[0].weight, q(10));
        let hollow = temperley(&CactusNetwork::hollow(p("1 2|3")));
        hollow.graph.for_each_matching(|edges, _, _| {
            assert!(grove_of_matching(&hollow, edges).unwrap().forest.is_empty());
        });
    }

    #[test]
    fn classification() {
        let l = y_network(q(1), q(2), q(3)).grove_vector();
        let c = classify_point(&Point::Grove(l.clone())).unwrap();
        assert_eq!(c, Classification { in_h: true, in_x: true, in_x_nonneg: true, is_grove_point: true });
        let c = classify_point(&Point::Plucker(embed(&l))).unwrap();
        assert!(c.in_x_nonneg && c.is_grove_point);
        let mut neg = l.clone();
        neg.coords[0] = q(-1);
        assert!(!classify_point(&Point::Grove(neg)).unwrap().is_grove_point);
        // a totally positive point of Gr(2,6) from a Vandermonde matrix
        let mut a = Matrix::zeros(2, 6);
        for j in 0..6 {
            a[(0, j)] = q(1);
            a[(1, j)] = q(j as i64 + 1);
        }
        let generic = crate::grassmann::plucker_of_matrix(&a);
        assert!(generic.coords.iter().all(|v| v.is_positive()));
        assert!(!in_column_space(&generic).unwrap());
        assert!(recover_groves(&generic).is_err());
        let c = classify_point(&Point::Plucker(generic)).unwrap();
        assert!(!c.in_h && !c.in_x);
    }

    #[test]
    fn quadratic_relations() {
        assert!(quadratic_check(&y_network(q(1), q(2), q(3)).grove_vector(), 1).unwrap());
        for sigma in enumerate_nc(3).unwrap() {
            assert!(quadratic_check(&GroveVector::indicator(&sigma), 1).unwrap());
        }
        let mut bad = GroveVector::zero(3);
        for (i, v) in bad.coords.iter_mut().enumerate() {
            *v = q(i as i64 + 1);
        }
        assert!(!quadratic_check(&bad, 1).unwrap());
        assert!(quadratic_check(&example_network().grove_vector(), 2).unwrap());
        assert!(quadratic_check(&bad, 0).is_err());
    }
}
