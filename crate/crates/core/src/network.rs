//! Circular planar and cactus electrical networks: groves, response matrices, the
//! generators `v_i(t)`, star-triangle, local reductions and contraction/deletion.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::combinat::{enumerate_nc, NCPartition};
use crate::error::{invalid, Error, Result};
use crate::map::{twin, Map};
use crate::rat::{normalize_projective, projectively_equal, Matrix, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// Boundary vertex `b_p`, `p` in `1..=n`.
    Bar(usize),
    /// Interior vertex, 0-based (printed 1-based as `v1`, `v2`, ...).
    Inner(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Bar(p) => write!(f, "b{p}"),
            Vertex::Inner(j) => write!(f, "v{}", j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Q,
}

/// A network in a disk with boundary vertices glued along `shape`.
///
/// `bar_rotation[p-1]` lists the edges at `b_p` clockwise, starting just after the boundary
/// arc towards `b_{p+1}`. When `b_p` is glued to later bars, these are the edges in the
/// petal between `b_p` and the next bar of its class. `inner_rotation[j]` is the cyclic
/// clockwise order at interior vertex `j`. A loop is listed twice.
#[derive(Clone, Debug, PartialEq)]
pub struct CactusNetwork {
    pub n: usize,
    pub shape: NCPartition,
    pub interior: usize,
    pub edges: Vec<Edge>,
    pub bar_rotation: Vec<Vec<usize>>,
    pub inner_rotation: Vec<Vec<usize>>,
}

pub type ResponseMatrix = Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Contract,
    Delete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarTriangle {
    /// Replace the degree-3 interior vertex by a triangle.
    YToDelta(usize),
    /// Replace the triangle on these three edges (bounding an inner face) by a star.
    DeltaToY([usize; 3]),
}

impl CactusNetwork {
    pub fn hollow(shape: NCPartition) -> Self {
        let n = shape.n();
        CactusNetwork {
            n,
            shape,
            interior: 0,
            edges: Vec::new(),
            bar_rotation: vec![Vec::new(); n],
            inner_rotation: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidNetwork(m));
        if self.n == 0 || self.shape.n() != self.n {
            return bad("shape size does not match n".into());
        }
        if self.bar_rotation.len() != self.n || self.inner_rotation.len() != self.interior {
            return bad("rotation system has the wrong number of vertices".into());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !e.w.is_positive() {
                return bad(format!("edge {i} has nonpositive weight"));
            }
            for end in [&e.u, &e.v] {
                let ok = match *end {
                    Vertex::Bar(p) => (1..=self.n).contains(&p),
                    Vertex::Inner(j) => j < self.interior,
                };
                if !ok {
                    return bad(format!("edge {i} has endpoint {end} out of range"));
                }
            }
        }
        let map = Map::from_network(self)?;
        if !map.is_connected() {
            return bad("disconnected interior vertex".into());
        }
        if !map.is_planar() {
            return bad("rotation system is not planar".into());
        }
        Ok(())
    }

    /// Edges as `(node, node, weight)` on the quotient graph: classes first, then interior.
    pub fn quotient_edges(&self) -> Vec<(usize, usize, Q)> {
        let b = self.shape.block_ids();
        let c = self.shape.len();
        let node = |v: &Vertex| match *v {
            Vertex::Bar(p) => b[p],
            Vertex::Inner(j) => c + j,
        };
        self.edges.iter().map(|e| (node(&e.u), node(&e.v), e.w.clone())).collect()
    }

    pub fn node_count(&self) -> usize {
        self.shape.len() + self.interior
    }

    pub fn to_map(&self) -> Map {
        Map::from_network(self).expect("validated network")
    }

    pub fn grove_vector(&self) -> GroveVector {
        let nodes = self.node_count();
        let classes = self.shape.len();
        let edges: Vec<(usize, usize, Q)> = self.quotient_edges().into_iter().filter(|(a, b, _)| a != b).collect();
        let mut out = GroveVector::zero(self.n);
        let mut parent: Vec<usize> = (0..nodes).collect();
        let mut acc: HashMap<Vec<usize>, Q> = HashMap::new();
        grove_search(&edges, 0, &mut parent, Q::one(), classes, &mut acc);
        let parts = self.shape.parts();
        for (roots, w) in acc {
            let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
            for (c, part) in parts.iter().enumerate() {
                groups.entry(roots[c]).or_default().extend_from_slice(part);
            }
            let sigma = NCPartition::new(self.n, groups.into_values().collect()).expect("planar groves are non-crossing");
            let idx = out.index_of(&sigma);
            out.coords[idx] += w;
        }
        out
    }

    pub fn response_matrix(&self) -> ResponseMatrix {
        let c = self.shape.len();
        let m = self.node_count();
        let mut k = Matrix::zeros(m, m);
        for (a, b, w) in self.quotient_edges() {
            if a == b {
                continue;
            }
            k[(a, a)] += &w;
            k[(b, b)] += &w;
            k[(a, b)] -= &w;
            k[(b, a)] -= &w;
        }
        let bnd: Vec<usize> = (0..c).collect();
        let int: Vec<usize> = (c..m).collect();
        let kbb = k.submatrix(&bnd, &bnd);
        if int.is_empty() {
            return kbb;
        }
        let kbi = k.submatrix(&bnd, &int);
        let kib = k.submatrix(&int, &bnd);
        let kii = k.submatrix(&int, &int);
        let x = kii.solve(&kib).expect("interior Laplacian block is nonsingular for connected networks");
        let corr = kbi.mul(&x);
        let mut out = kbb;
        for (o, v) in out.data.iter_mut().zip(corr.data) {
            *o -= v;
        }
        out
    }

    /// `v_i(t)`: odd `i = 2k-1` adds a spike of conductance `1/t` at `b_k`; even `i = 2k`
    /// adds an edge `b_k - b_{k+1}` of conductance `t`. `t = 0` is the identity.
    pub fn apply_generator(&self, i: usize, t: &Q) -> Result<CactusNetwork> {
        let n = self.n;
        if i == 0 || i > 2 * n {
            return Err(invalid(format!("generator index {i} outside 1..={}", 2 * n)));
        }
        if t.is_negative() {
            return Err(invalid("generator parameter must be nonnegative"));
        }
        if t.is_zero() {
            return Ok(self.clone());
        }
        let mut map = self.to_map();
        let k = (i + 1) / 2;
        if i % 2 == 1 {
            let a_in = map.arc_in(k);
            let a_out = map.arc_out(k);
            let c = map.tail(a_out);
            let new_node = map.add_node(Vec::new());
            let e = map.add_edge(c, new_node, t.recip());
            // the arc pair at k is adjacent in the class rotation: [.., ArcIn(k), ArcOut(k), ..]
            map.replace_dart(a_in, &[]);
            map.replace_dart(a_out, &[2 * e]);
            map.ends[a_out / 2][0] = new_node;
            map.ends[a_in / 2][1] = new_node;
            map.rot[new_node] = Some(vec![a_out, 2 * e + 1, a_in]);
        } else {
            let a_out = map.arc_out(k);
            let a_in = map.arc_in(k % n + 1);
            let e = map.add_edge(map.tail(a_out), map.tail(a_in), t.clone());
            map.insert_after(a_out, 2 * e);
            map.insert_before(a_in, 2 * e + 1);
        }
        map.to_network()
    }

    /// Applies `word[0]` first.
    pub fn apply_word(&self, word: &[(usize, Q)]) -> Result<CactusNetwork> {
        let mut net = self.clone();
        for (i, t) in word {
            net = net.apply_generator(*i, t)?;
        }
        Ok(net)
    }

    pub fn star_triangle(&self, site: &StarTriangle) -> Result<CactusNetwork> {
        let mut map = self.to_map();
        match site {
            StarTriangle::YToDelta(j) => {
                if *j >= self.interior {
                    return Err(Error::BadSite(format!("no interior vertex v{}", j + 1)));
                }
                let v = self.shape.len() + j;
                let r = map.rotation(v).to_vec();
                if r.len() != 3 {
                    return Err(Error::BadSite(format!("v{} has degree {}", j + 1, r.len())));
                }
                let nb: Vec<usize> = r.iter().map(|&d| map.head(d)).collect();
                if nb.contains(&v) || nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2] {
                    return Err(Error::BadSite("star needs three distinct neighbours".into()));
                }
                let w: Vec<Q> = r.iter().map(|&d| map.weight(d / 2).unwrap().clone()).collect();
                let s = &w[0] + &w[1] + &w[2];
                // edge x_i x_{i+1}, weight w_i w_{i+1} / s
                let mut tri = Vec::new();
                for a in 0..3 {
                    let b = (a + 1) % 3;
                    tri.push(map.add_edge(nb[a], nb[b], &w[a] * &w[b] / &s));
                }
                // at x_a: [to x_{a+1}, to x_{a-1}] in place of the dart to v
                for a in 0..3 {
                    let to_next = 2 * tri[a];
                    let to_prev = 2 * tri[(a + 2) % 3] + 1;
                    map.replace_dart(twin(r[a]), &[to_next, to_prev]);
                }
                for &d in &r {
                    map.kinds[d / 2] = None;
                }
                map.rot[v] = Some(Vec::new());
                map.delete_node(v);
            }
            StarTriangle::DeltaToY(es) => {
                let faces = map.faces();
                let target: Vec<usize> = {
                    let mut t = es.to_vec();
                    t.sort_unstable();
                    t
                };
                let face = faces
                    .cycles
                    .iter()
                    .find(|c| {
                        let mut ids: Vec<usize> = c.iter().map(|d| d / 2).collect();
                        ids.sort_unstable();
                        c.len() == 3 && ids == target && !c.iter().any(|&d| map.is_arc(d))
                    })
                    .cloned()
                    .ok_or_else(|| Error::BadSite("edges do not bound a triangular inner face".into()))?;
                let xs: Vec<usize> = face.iter().map(|&d| map.tail(d)).collect();
                if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
                    return Err(Error::BadSite("triangle needs three distinct vertices".into()));
                }
                // face darts h_a: x_a -> x_{a+1}; weight opposite x_a is that of h_{a+1}
                let wt: Vec<Q> = face.iter().map(|&d| map.weight(d / 2).unwrap().clone()).collect();
                let opp: Vec<Q> = (0..3).map(|a| wt[(a + 1) % 3].clone()).collect();
                let sum = &opp[0] * &opp[1] + &opp[0] * &opp[2] + &opp[1] * &opp[2];
                let v = map.add_node(Vec::new());
                let mut spokes = Vec::new();
                for a in 0..3 {
                    spokes.push(map.add_edge(xs[a], v, &sum / &opp[a]));
                }
                for a in 0..3 {
                    // at x_a the face lies between twin(h_{a-1}) and h_a
                    let incoming = twin(face[(a + 2) % 3]);
                    map.replace_dart(face[a], &[]);
                    map.replace_dart(incoming, &[2 * spokes[a]]);
                }
                for &d in &face {
                    map.kinds[d / 2] = None;
                }
                map.rot[v] = Some(vec![2 * spokes[0] + 1, 2 * spokes[2] + 1, 2 * spokes[1] + 1]);
            }
        }
        map.to_network()
    }

    /// Removes loops, merges parallel edges, removes interior pendants and reduces series pairs,
    /// scanning edges in index order and restarting after each rewrite.
    pub fn reduce_local(&self) -> CactusNetwork {
        let mut net = self.clone();
        while let Some(next) = net.reduce_once() {
            net = next;
        }
        net
    }

    fn reduce_once(&self) -> Option<CactusNetwork> {
        let q = self.quotient_edges();
        let c = self.shape.len();
        let mut degree = vec![0usize; self.node_count()];
        for (a, b, _) in &q {
            degree[*a] += 1;
            degree[*b] += 1;
        }
        for e in 0..q.len() {
            let (a, b, _) = &q[e];
            let mut map = self.to_map();
            if a == b {
                map.delete_edge(e);
                return map.to_network().ok();
            }
            let key = |x: usize, y: usize| (x.min(y), x.max(y));
            if let Some(f) = (e + 1..q.len()).find(|&f| key(q[f].0, q[f].1) == key(*a, *b)) {
                let sum = &q[e].2 + &q[f].2;
                map.delete_edge(f);
                map.kinds[e] = Some(crate::map::Kind::Real(sum));
                return map.to_network().ok();
            }
            for &x in &[*a, *b] {
                if x >= c && degree[x] == 1 {
                    map.delete_edge(e);
                    map.delete_node(x);
                    return map.to_network().ok();
                }
            }
            for &x in &[*a, *b] {
                if x >= c && degree[x] == 2 {
                    let r = map.rotation(x).to_vec();
                    let other = r.iter().map(|d| d / 2).find(|&f| f != e)?;
                    if map.ends[other][0] == map.ends[other][1] {
                        continue;
                    }
                    let (wa, wb) = (q[e].2.clone(), q[other].2.clone());
                    let series = &wa * &wb / (&wa + &wb);
                    map.contract_edge(e);
                    map.kinds[other] = Some(crate::map::Kind::Real(series));
                    return map.to_network().ok();
                }
            }
        }
        None
    }

    pub fn contract_delete(&self, e: usize, mode: Mode) -> Result<CactusNetwork> {
        if e >= self.edges.len() {
            return Err(invalid(format!("no edge {e}")));
        }
        let mut map = self.to_map();
        match mode {
            Mode::Contract => map.contract_edge(e),
            Mode::Delete => {
                map.delete_edge(e);
                map.remove_floating();
            }
        }
        map.to_network()
    }
}

/// Adds groves with edges chosen from `edges[k..]`; `acc` maps the root of each class to weights.
fn grove_search(
    edges: &[(usize, usize, Q)],
    k: usize,
    parent: &mut Vec<usize>,
    weight: Q,
    classes: usize,
    acc: &mut HashMap<Vec<usize>, Q>,
) {
    fn find(p: &[usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    if k == edges.len() {
        let nodes = parent.len();
        let roots: Vec<usize> = (0..nodes).map(|x| find(parent, x)).collect();
        let rooted: Vec<bool> = {
            let mut r = vec![false; nodes];
            for &root in &roots[..classes] {
                r[root] = true;
            }
            r
        };
        if roots[classes..].iter().all(|&r| rooted[r]) {
            *acc.entry(roots[..classes].to_vec()).or_insert_with(Q::zero) += weight;
        }
        return;
    }
    let (a, b, w) = &edges[k];
    grove_search(edges, k + 1, parent, weight.clone(), classes, acc);
    let (ra, rb) = (find(parent, *a), find(parent, *b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
        grove_search(edges, k + 1, parent, weight * w, classes, acc);
        parent[hi] = hi;
    }
}

/// `NC_n` in canonical order together with its index.
pub struct NcIndex {
    pub list: Vec<NCPartition>,
    pub index: HashMap<NCPartition, usize>,
}

pub fn nc_index(n: usize) -> Arc<NcIndex> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<NcIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| {
            let list = enumerate_nc(n).expect("n >= 1");
            let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
            Arc::new(NcIndex { list, index })
        })
        .clone()
}

/// Grove coordinates `(L_σ)` indexed by `NC_n` in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroveVector {
    pub n: usize,
    pub coords: Vec<Q>,
}

impl GroveVector {
    pub fn zero(n: usize) -> Self {
        GroveVector { n, coords: vec![Q::zero(); nc_index(n).list.len()] }
    }

    pub fn indicator(sigma: &NCPartition) -> Self {
        let mut g = GroveVector::zero(sigma.n());
        let i = g.index_of(sigma);
        g.coords[i] = Q::one();
        g
    }

    pub fn index_of(&self, sigma: &NCPartition) -> usize {
        nc_index(self.n).index[sigma]
    }

    pub fn get(&self, sigma: &NCPartition) -> &Q {
        &self.coords[self.index_of(sigma)]
    }

    pub fn set(&mut self, sigma: &NCPartition, v: Q) {
        let i = self.index_of(sigma);
        self.coords[i] = v;
    }

    pub fn partitions(&self) -> Arc<NcIndex> {
        nc_index(self.n)
    }

    pub fn support(&self) -> Vec<NCPartition> {
        let idx = nc_index(self.n);
        idx.list.iter().zip(&self.coords).filter(|(_, v)| !v.is_zero()).map(|(s, _)| s.clone()).collect()
    }

    pub fn normalized(&self) -> Self {
        let mut g = self.clone();
        normalize_projective(&mut g.coords);
        g
    }

    pub fn projectively_equal(&self, other: &GroveVector) -> bool {
        self.n == other.n && projectively_equal(&self.coords, &other.coords)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|v| !v.is_negative())
    }
}

/// The network with one interior vertex joined to `b_1, b_2, b_3` by weights `a, b, c`.
pub fn y_network(a: Q, b: Q, c: Q) -> CactusNetwork {
    CactusNetwork {
        n: 3,
        shape: NCPartition::singletons(3),
        interior: 1,
        edges: vec![
            Edge { u: Vertex::Bar(1), v: Vertex::Inner(0), w: a },
            Edge { u: Vertex::Bar(2), v: Vertex::Inner(0), w: b },
            Edge { u: Vertex::Bar(3), v: Vertex::Inner(0), w: c },
        ],
        bar_rotation: vec![vec![0], vec![1], vec![2]],
        inner_rotation: vec![vec![0, 1, 2]],
    }
}

/// The five-terminal network with two interior vertices used as a running example.
pub fn example_network() -> CactusNetwork {
    use crate::rat::q;
    CactusNetwork {
        n: 5,
        shape: NCPartition::singletons(5),
        interior: 2,
        edges: vec![
            Edge { u: Vertex::Bar(1), v: Vertex::Inner(0), w: q(2) },
            Edge { u: Vertex::Inner(0), v: Vertex::Inner(1), w: q(5) },
            Edge { u: Vertex::Inner(0), v: Vertex::Bar(5), w: q(1) },
            Edge { u: Vertex::Inner(1), v: Vertex::Bar(2), w: q(1) },
            Edge { u: Vertex::Inner(1), v: Vertex::Bar(4), w: q(1) },
        ],
        bar_rotation: vec![vec![0], vec![3], vec![], vec![4], vec![2]],
        inner_rotation: vec![vec![1, 2, 0], vec![4, 1, 3]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, q};

    fn p(s: &str) -> NCPartition {
        NCPartition::parse(s).unwrap()
    }

    #[test]
    fn examples_validate() {
        example_network().validate().unwrap();
        y_network(q(1), q(2), q(3)).validate().unwrap();
        let mut bad = y_network(q(1), q(2), q(3));
        bad.edges[0].w = q(0);
        assert!(bad.validate().is_err());
        let mut floating = CactusNetwork::hollow(NCPartition::singletons(2));
        floating.interior = 1;
        floating.inner_rotation.push(vec![]);
        assert!(matches!(floating.validate(), Err(Error::InvalidNetwork(m)) if m.contains("disconnected")));
    }

    #[test]
    fn y_groves() {
        let (a, b, c) = (q(2), q(3), q(5));
        let g = y_network(a.clone(), b.clone(), c.clone()).grove_vector();
        assert_eq!(g.get(&p("1|2|3")), &(&a + &b + &c));
        assert_eq!(g.get(&p("1 2|3")), &(&a * &b));
        assert_eq!(g.get(&p("1|2 3")), &(&b * &c));
        assert_eq!(g.get(&p("1 3|2")), &(&a * &c));
        assert_eq!(g.get(&p("1 2 3")), &(&a * &b * &c));
    }

    /// Oracle: every edge subset, acyclic iff `|F| = V - components`, each component rooted.
    fn groves_by_subsets(net: &CactusNetwork) -> GroveVector {
        let q_edges = net.quotient_edges();
        let nodes = net.node_count();
        let classes = net.shape.len();
        let mut out = GroveVector::zero(net.n);
        for mask in 0u32..(1 << q_edges.len()) {
            let chosen: Vec<&(usize, usize, Q)> =
                q_edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
            let mut comp = vec![usize::MAX; nodes];
            let mut count = 0;
            for s in 0..nodes {
                if comp[s] != usize::MAX {
                    continue;
                }
                let mut stack = vec![s];
                while let Some(x) = stack.pop() {
                    if comp[x] != usize::MAX {
                        continue;
                    }
                    comp[x] = count;
                    for (a, b, _) in &chosen {
                        if *a == x {
                            stack.push(*b);
                        }
                        if *b == x {
                            stack.push(*a);
                        }
                    }
                }
                count += 1;
            }
            if chosen.len() + count != nodes || (0..count).any(|c| !comp[..classes].contains(&c)) {
                continue;
            }
            let mut parts: Vec<Vec<usize>> = vec![Vec::new(); count];
            for (ci, part) in net.shape.parts().iter().enumerate() {
                parts[comp[ci]].extend_from_slice(part);
            }
            let sigma = NCPartition::new(net.n, parts.into_iter().filter(|p| !p.is_empty()).collect()).unwrap();
            let w: Q = chosen.iter().map(|e| e.2.clone()).product();
            let i = out.index_of(&sigma);
            out.coords[i] += w;
        }
        out
    }

    #[test]
    fn edgeless_and_example_groves() {
        let g = CactusNetwork::hollow(NCPartition::singletons(2)).grove_vector();
        assert_eq!(g.get(&p("1|2")), &q(1));
        assert_eq!(g.get(&p("1 2")), &q(0));
        let ex = example_network();
        let g = ex.grove_vector();
        assert_eq!(g.get(&p("1 5|2 4|3")), &q(2));
        assert_eq!(g, groves_by_subsets(&ex));
        let y = y_network(q(2), q(3), q(7));
        assert_eq!(y.grove_vector(), groves_by_subsets(&y));
    }

    #[test]
    fn y_response() {
        let l = y_network(q(1), q(1), q(1)).response_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l[(i, j)], if i == j { frac(2, 3) } else { frac(-1, 3) });
            }
        }
    }

    #[test]
    fn series_edges_match_single_edge() {
        let (a, b) = (q(2), q(3));
        let series = CactusNetwork {
            n: 2,
            shape: NCPartition::singletons(2),
            interior: 1,
            edges: vec![
                Edge { u: Vertex::Bar(1), v: Vertex::Inner(0), w: a.clone() },
                Edge { u: Vertex::Inner(0), v: Vertex::Bar(2), w: b.clone() },
            ],
            bar_rotation: vec![vec![0], vec![1]],
            inner_rotation: vec![vec![0, 1]],
        };
        series.validate().unwrap();
        let single = CactusNetwork::hollow(NCPartition::singletons(2)).apply_generator(2, &(&a * &b / (&a + &b))).unwrap();
        assert_eq!(series.response_matrix(), single.response_matrix());
        assert_eq!(series.reduce_local().edges, single.edges);
    }

    #[test]
    fn generators() {
        let empty = CactusNetwork::hollow(NCPartition::singletons(2));
        assert_eq!(empty.response_matrix(), Matrix::zeros(2, 2));
        let t = frac(3, 7);
        let g = empty.apply_generator(2, &t).unwrap().grove_vector();
        assert_eq!(g.get(&p("1|2")), &q(1));
        assert_eq!(g.get(&p("1 2")), &t);
        let y = y_network(q(1), q(2), q(3));
        for i in 1..=6 {
            assert_eq!(y.apply_generator(i, &q(0)).unwrap(), y);
            let ab = y.apply_generator(i, &q(2)).unwrap().apply_generator(i, &frac(1, 3)).unwrap();
            let direct = y.apply_generator(i, &frac(7, 3)).unwrap();
            ab.validate().unwrap();
            assert_eq!(ab.response_matrix(), direct.response_matrix(), "i={i}");
        }
    }

    #[test]
    fn star_triangle_round_trip() {
        let y = y_network(q(1), q(1), q(1));
        let d = y.star_triangle(&StarTriangle::YToDelta(0)).unwrap();
        d.validate().unwrap();
        assert_eq!(d.interior, 0);
        assert!(d.edges.iter().all(|e| e.w == frac(1, 3)));
        assert_eq!(d.response_matrix(), y.response_matrix());
        let y2 = y_network(q(2), q(3), q(5));
        let d2 = y2.star_triangle(&StarTriangle::YToDelta(0)).unwrap();
        assert!(d2.grove_vector().projectively_equal(&y2.grove_vector()));
        let back = d2.star_triangle(&StarTriangle::DeltaToY([0, 1, 2])).unwrap();
        back.validate().unwrap();
        assert_eq!(back.response_matrix(), y2.response_matrix());
        let mut ws: Vec<Q> = back.edges.iter().map(|e| e.w.clone()).collect();
        ws.sort();
        assert_eq!(ws, vec![q(2), q(3), q(5)]);
        assert!(matches!(y2.star_triangle(&StarTriangle::YToDelta(3)), Err(Error::BadSite(_))));
    }

    #[test]
    fn contract_and_delete_single_edge() {
        let one = CactusNetwork::hollow(NCPartition::singletons(2)).apply_generator(2, &q(1)).unwrap();
        let del = one.contract_delete(0, Mode::Delete).unwrap();
        assert!(del.edges.is_empty());
        assert_eq!(del.grove_vector().coords, GroveVector::indicator(&p("1|2")).coords);
        let con = one.contract_delete(0, Mode::Contract).unwrap();
        con.validate().unwrap();
        assert_eq!(con.shape, p("1 2"));
        assert_eq!(con.grove_vector().get(&p("1 2")), &q(1));
    }

    #[test]
    fn hollow_cactus_is_indicator() {
        for s in enumerate_nc(4).unwrap() {
            let h = CactusNetwork::hollow(s.clone());
            h.validate().unwrap();
            assert_eq!(h.grove_vector(), GroveVector::indicator(&s));
        }
    }
}
