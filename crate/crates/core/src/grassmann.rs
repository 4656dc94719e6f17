//! Planar bipartite graphs in a disk, their boundary measurements, trips and local moves,
//! together with positroid data and the Chevalley and cyclic actions on Plücker vectors.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::affine::{affine_of_necklace, grassmann_necklace, BoundedAffinePermutation, GrassmannNecklace};
use crate::combinat::{dominance_leq, k_subsets, lex_cmp_from};
use crate::error::{Error, Result};
use crate::rat::{normalize_projective, projectively_equal, Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Black => "black",
            Color::White => "white",
        })
    }
}

/// Edge between node ids. Ids `0..m` are boundary vertices `1..=m`; ids `m..` are interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BEdge {
    pub u: usize,
    pub v: usize,
    pub w: Q,
}

impl BEdge {
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarBipartiteGraph {
    pub m: usize,
    /// Colours of the interior vertices; interior `j` has node id `m + j`.
    pub colors: Vec<Color>,
    pub edges: Vec<BEdge>,
    /// Clockwise edge order around each interior vertex.
    pub rotation: Vec<Vec<usize>>,
}

impl PlanarBipartiteGraph {
    pub fn interior_id(&self, j: usize) -> usize {
        self.m + j
    }

    pub fn node_count(&self) -> usize {
        self.m + self.colors.len()
    }

    pub fn is_boundary(&self, x: usize) -> bool {
        x < self.m
    }

    pub fn boundary_edge(&self, i: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.u == i - 1 || e.v == i - 1)
    }

    /// Colour of any node; a boundary vertex is opposite to its neighbour.
    pub fn color(&self, x: usize) -> Color {
        if x >= self.m {
            return self.colors[x - self.m];
        }
        let e = self.boundary_edge(x + 1).expect("validated boundary vertex has an edge");
        self.color(self.edges[e].other(x)).flip()
    }

    /// `d' + d`: white boundary vertices plus interior white minus interior black.
    pub fn k(&self) -> i64 {
        let white_boundary = (0..self.m).filter(|&x| self.color(x) == Color::White).count() as i64;
        let white = self.colors.iter().filter(|&&c| c == Color::White).count() as i64;
        white_boundary + 2 * white - self.colors.len() as i64
    }

    fn dart_at(&self, e: usize, x: usize) -> usize {
        if self.edges[e].u == x {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn dart_head(&self, d: usize) -> usize {
        let e = &self.edges[d / 2];
        if d % 2 == 0 {
            e.v
        } else {
            e.u
        }
    }

    /// Clockwise dart rotation at every node, boundary vertices on the circle included.
    /// Boundary arcs are darts `2E..2E+2m`, arc `i` running from boundary `i` to `i+1`.
    fn full_rotation(&self) -> Vec<Vec<usize>> {
        let ne = self.edges.len();
        let m = self.m;
        let mut rot = vec![Vec::new(); self.node_count()];
        for x in 0..m {
            let prev = (x + m - 1) % m;
            rot[x].push(2 * ne + 2 * x);
            if let Some(e) = self.boundary_edge(x + 1) {
                rot[x].push(self.dart_at(e, x));
            }
            rot[x].push(2 * ne + 2 * prev + 1);
        }
        for (j, r) in self.rotation.iter().enumerate() {
            rot[m + j] = r.iter().map(|&e| self.dart_at(e, m + j)).collect();
        }
        rot
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidNetwork(s));
        if self.m == 0 {
            return bad("no boundary vertices".into());
        }
        if self.rotation.len() != self.colors.len() {
            return bad("one rotation per interior vertex".into());
        }
        let n = self.node_count();
        let mut degree = vec![0usize; n];
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= n || e.v >= n || e.u == e.v {
                return bad(format!("edge {i} has bad endpoints"));
            }
            if e.u < self.m && e.v < self.m {
                return bad(format!("edge {i} joins two boundary vertices"));
            }
            if e.u >= self.m && e.v >= self.m && self.colors[e.u - self.m] == self.colors[e.v - self.m] {
                return bad(format!("edge {i} joins two vertices of the same colour"));
            }
            if e.w.is_negative() {
                return bad(format!("edge {i} has negative weight"));
            }
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        if let Some(x) = (0..self.m).find(|&x| degree[x] != 1) {
            return bad(format!("boundary vertex {} must have degree 1", x + 1));
        }
        let mut seen = vec![0usize; self.edges.len()];
        for (j, r) in self.rotation.iter().enumerate() {
            if r.len() != degree[self.m + j] {
                return bad(format!("rotation of interior vertex {} has the wrong length", j + 1));
            }
            for &e in r {
                if e >= self.edges.len() || (self.edges[e].u != self.m + j && self.edges[e].v != self.m + j) {
                    return bad(format!("rotation of interior vertex {} lists a foreign edge", j + 1));
                }
                seen[e] += 1;
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let want = (e.u >= self.m) as usize + (e.v >= self.m) as usize;
            if seen[i] != want {
                return bad(format!("edge {i} is missing from a rotation"));
            }
        }
        // genus zero: V - E + F = 2C with the boundary circle drawn in
        let rot = self.full_rotation();
        let darts = 2 * (self.edges.len() + self.m);
        let mut pos = vec![(0, 0); darts];
        for (x, r) in rot.iter().enumerate() {
            for (k, &d) in r.iter().enumerate() {
                pos[d] = (x, k);
            }
        }
        let mut visited = vec![false; darts];
        let mut faces = 0i64;
        for s in 0..darts {
            if visited[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !visited[d] {
                visited[d] = true;
                let (x, k) = pos[d ^ 1];
                d = rot[x][(k + 1) % rot[x].len()];
            }
        }
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for x in 0..self.m {
            let (a, b) = (find(&mut comp, x), find(&mut comp, (x + 1) % self.m));
            comp[a] = b;
        }
        for e in &self.edges {
            let (a, b) = (find(&mut comp, e.u), find(&mut comp, e.v));
            comp[a] = b;
        }
        let components = (0..n).filter(|&x| find(&mut comp, x) == x).count() as i64;
        let euler = n as i64 - (self.edges.len() + self.m) as i64 + faces;
        if euler != 2 * components {
            return bad("rotation system is not planar".into());
        }
        Ok(())
    }

    /// Sum of weights of almost perfect matchings, grouped by boundary subset.
    pub fn matching_sums(&self) -> HashMap<Vec<usize>, Q> {
        let mut out: HashMap<Vec<usize>, Q> = HashMap::new();
        self.for_each_matching(|_, subset, w| {
            *out.entry(subset.to_vec()).or_insert_with(Q::zero) += w;
        });
        out
    }

    /// Boundary subset `I(Π)` of a set of matching edges.
    pub fn boundary_subset(&self, matching: &[usize]) -> Vec<usize> {
        let mut used = vec![false; self.m];
        for &e in matching {
            for x in [self.edges[e].u, self.edges[e].v] {
                if x < self.m {
                    used[x] = true;
                }
            }
        }
        (0..self.m).filter(|&b| used[b] == (self.color(b) == Color::Black)).map(|b| b + 1).collect()
    }

    /// Visits every almost perfect matching with its boundary subset and weight.
    pub fn for_each_matching(&self, mut visit: impl FnMut(&[usize], &[usize], Q)) {
        let n = self.node_count();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push(i);
            adj[e.v].push(i);
        }
        let black: Vec<bool> = (0..self.m).map(|b| self.color(b) == Color::Black).collect();
        let mut used = vec![false; n];
        let mut chosen = Vec::new();
        self.match_rec(&adj, &black, &mut used, &mut chosen, Q::one(), &mut visit);
    }

    fn match_rec(
        &self,
        adj: &[Vec<usize>],
        black: &[bool],
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        weight: Q,
        visit: &mut dyn FnMut(&[usize], &[usize], Q),
    ) {
        // most constrained unmatched interior vertex
        let mut best: Option<(usize, usize)> = None;
        for x in self.m..self.node_count() {
            if used[x] {
                continue;
            }
            let free = adj[x].iter().filter(|&&e| !used[self.edges[e].other(x)]).count();
            if free == 0 {
                return;
            }
            if best.is_none_or(|(_, b)| free < b) {
                best = Some((x, free));
            }
        }
        let Some((x, _)) = best else {
            let subset: Vec<usize> = (0..self.m).filter(|&b| used[b] == black[b]).map(|b| b + 1).collect();
            visit(chosen, &subset, weight);
            return;
        };
        used[x] = true;
        for &e in &adj[x] {
            let y = self.edges[e].other(x);
            if used[y] || self.edges[e].w.is_zero() {
                continue;
            }
            used[y] = true;
            chosen.push(e);
            self.match_rec(adj, black, used, chosen, &weight * &self.edges[e].w, visit);
            chosen.pop();
            used[y] = false;
        }
        used[x] = false;
    }

    /// Trip from boundary `i`: turn maximally right at black vertices and left at white ones.
    pub fn trip(&self, i: usize) -> Vec<usize> {
        let rot = self.full_rotation();
        let mut pos = HashMap::new();
        for (x, r) in rot.iter().enumerate() {
            for (k, &d) in r.iter().enumerate() {
                pos.insert(d, (x, k));
            }
        }
        let start = self.boundary_edge(i).expect("boundary vertex has an edge");
        let mut d = self.dart_at(start, i - 1);
        let mut path = vec![i - 1];
        loop {
            let x = self.dart_head(d);
            path.push(x);
            if x < self.m {
                return path;
            }
            let (_, k) = pos[&(d ^ 1)];
            let deg = rot[x].len();
            d = match self.colors[x - self.m] {
                Color::Black => rot[x][(k + deg - 1) % deg],
                Color::White => rot[x][(k + 1) % deg],
            };
        }
    }
}

pub fn boundary_measurements(g: &PlanarBipartiteGraph) -> Result<PluckerVector> {
    g.validate()?;
    let sums = g.matching_sums();
    if sums.is_empty() {
        return Err(Error::Degenerate);
    }
    let k = g.k();
    if k < 0 || k as usize > g.m {
        return Err(Error::Degenerate);
    }
    let mut p = PluckerVector::zero(g.m, k as usize);
    for (subset, w) in sums {
        p.set(&subset, w);
    }
    Ok(p)
}

pub fn trip_permutation(g: &PlanarBipartiteGraph) -> Result<BoundedAffinePermutation> {
    g.validate()?;
    let m = g.m as i64;
    let window = (1..=g.m)
        .map(|i| {
            let path = g.trip(i);
            let end = *path.last().unwrap() as i64 + 1;
            let i = i as i64;
            if end == i {
                if g.color(path[1]) == Color::Black {
                    i
                } else {
                    i + m
                }
            } else if end > i {
                end
            } else {
                end + m
            }
        })
        .collect();
    BoundedAffinePermutation::new(window)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Plücker coordinates indexed by `k`-subsets of `[m]` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector {
    pub m: usize,
    pub k: usize,
    pub coords: Vec<Q>,
}

impl PluckerVector {
    pub fn zero(m: usize, k: usize) -> Self {
        PluckerVector { m, k, coords: vec![Q::zero(); binomial(m, k)] }
    }

    pub fn subsets(&self) -> Vec<Vec<usize>> {
        k_subsets(self.m, self.k)
    }

    /// Lexicographic rank of a sorted subset.
    pub fn index_of(&self, subset: &[usize]) -> usize {
        let mut rank = 0;
        let mut prev = 0;
        for (r, &c) in subset.iter().enumerate() {
            for x in prev + 1..c {
                rank += binomial(self.m - x, self.k - r - 1);
            }
            prev = c;
        }
        rank
    }

    pub fn get(&self, subset: &[usize]) -> &Q {
        &self.coords[self.index_of(subset)]
    }

    pub fn set(&mut self, subset: &[usize], v: Q) {
        let i = self.index_of(subset);
        self.coords[i] = v;
    }

    /// Coordinate of an unsorted index tuple, with the sign of the sorting permutation.
    pub fn signed(&self, tuple: &[usize]) -> Q {
        let mut t = tuple.to_vec();
        let mut sign = false;
        for i in 0..t.len() {
            for j in 0..t.len() - 1 - i {
                match t[j].cmp(&t[j + 1]) {
                    std::cmp::Ordering::Greater => {
                        t.swap(j, j + 1);
                        sign = !sign;
                    }
                    std::cmp::Ordering::Equal => return Q::zero(),
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        let v = self.get(&t).clone();
        if sign {
            -v
        } else {
            v
        }
    }

    pub fn support(&self) -> Vec<Vec<usize>> {
        self.subsets().into_iter().zip(&self.coords).filter(|(_, c)| !c.is_zero()).map(|(s, _)| s).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        normalize_projective(&mut out.coords);
        out
    }

    pub fn projectively_equal(&self, other: &PluckerVector) -> bool {
        self.m == other.m && self.k == other.k && projectively_equal(&self.coords, &other.coords)
    }
}

/// Every three-term relation `Δ_{Sac}Δ_{Sbd} = Δ_{Sab}Δ_{Scd} + Δ_{Sad}Δ_{Sbc}` holds.
pub fn plucker_check(p: &PluckerVector) -> bool {
    if p.k < 2 || p.k + 2 > p.m {
        return true;
    }
    for s in k_subsets(p.m, p.k - 2) {
        let rest: Vec<usize> = (1..=p.m).filter(|x| !s.contains(x)).collect();
        for quad in k_subsets(rest.len(), 4) {
            let [a, b, c, d] = [rest[quad[0] - 1], rest[quad[1] - 1], rest[quad[2] - 1], rest[quad[3] - 1]];
            let t = |x: usize, y: usize| {
                let mut v = s.clone();
                v.push(x);
                v.push(y);
                p.signed(&v)
            };
            if t(a, c) * t(b, d) != t(a, b) * t(c, d) + t(a, d) * t(b, c) {
                return false;
            }
        }
    }
    true
}

fn necklace_of_point(p: &PluckerVector) -> Result<Vec<Vec<usize>>> {
    let support = p.support();
    if support.is_empty() {
        return Err(Error::NotInImage("zero vector".into()));
    }
    Ok((1..=p.m)
        .map(|a| support.iter().min_by(|x, y| lex_cmp_from(x, y, a, p.m)).unwrap().clone())
        .collect())
}

/// `f_X` through the necklace of `≤_a`-minimal nonvanishing coordinates.
pub fn perm_of_point(p: &PluckerVector) -> Result<BoundedAffinePermutation> {
    let subsets = necklace_of_point(p)?;
    let neck = GrassmannNecklace::new(p.m, subsets).map_err(|e| Error::NotInImage(e.to_string()))?;
    affine_of_necklace(&neck).map_err(|e| Error::NotInImage(e.to_string()))
}

/// A `k × m` matrix whose maximal minors are proportional to `p`, for `p` satisfying the relations.
pub fn matrix_of_point(p: &PluckerVector) -> Result<Matrix> {
    let support = p.support();
    let Some(base) = support.first() else {
        return Err(Error::NotInImage("zero vector".into()));
    };
    let scale = p.get(base).clone();
    let mut a = Matrix::zeros(p.k, p.m);
    for (r, _) in base.iter().enumerate() {
        for j in 1..=p.m {
            let mut t = base.clone();
            t[r] = j;
            a[(r, j - 1)] = p.signed(&t) / &scale;
        }
    }
    Ok(a)
}

/// `f_X(i) = min { j ≥ i : v_i ∈ span(v_{i+1}, ..., v_j) }` on a matrix representative.
pub fn perm_of_point_by_span(p: &PluckerVector) -> Result<BoundedAffinePermutation> {
    let a = matrix_of_point(p)?;
    let m = p.m;
    let rank_of = |cols: &[usize]| {
        let rows: Vec<usize> = (0..a.rows).collect();
        a.submatrix(&rows, cols).rank()
    };
    let window = (1..=m)
        .map(|i| {
            if rank_of(&[i - 1]) == 0 {
                return i as i64;
            }
            let mut cols = Vec::new();
            for j in i + 1..=i + m {
                cols.push((j - 1) % m);
                let r = rank_of(&cols);
                cols.push(i - 1);
                let with = rank_of(&cols);
                cols.pop();
                if with == r {
                    return j as i64;
                }
            }
            unreachable!("v_i lies in the span of all columns")
        })
        .collect();
    BoundedAffinePermutation::new(window)
}

/// `{J : I_a ≤_a J for every a}` in lexicographic order.
pub fn positroid_of(f: &BoundedAffinePermutation) -> Vec<Vec<usize>> {
    let neck = grassmann_necklace(f);
    let m = f.period();
    k_subsets(m, f.k())
        .into_iter()
        .filter(|j| (1..=m).all(|a| dominance_leq(neck.get(a), j, a, m).unwrap_or(false)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chevalley {
    X,
    Y,
}

/// Action of `x_i(a)` or `y_i(a)` on Plücker coordinates; `i = m` wraps through `χ`.
pub fn apply_chevalley(p: &PluckerVector, kind: Chevalley, i: usize, a: &Q) -> Result<PluckerVector> {
    if i == 0 || i > p.m {
        return Err(Error::InvalidArgument(format!("index {i} outside [1, {}]", p.m)));
    }
    let j = i % p.m + 1;
    let (gain, lose) = match kind {
        Chevalley::X => (j, i),
        Chevalley::Y => (i, j),
    };
    let mut out = p.clone();
    for s in p.subsets() {
        if s.contains(&gain) && !s.contains(&lose) {
            let mut t: Vec<usize> = s.iter().map(|&x| if x == gain { lose } else { x }).collect();
            t.sort_unstable();
            let idx = p.index_of(&s);
            out.coords[idx] = &p.coords[idx] + a * p.get(&t);
        }
    }
    Ok(out)
}

/// `u_i(a) = x_i(a) y_{i-1}(a)` on Plücker coordinates.
pub fn apply_u(p: &PluckerVector, i: usize, a: &Q) -> Result<PluckerVector> {
    let prev = if i == 1 { p.m } else { i - 1 };
    let y = apply_chevalley(p, Chevalley::Y, prev, a)?;
    apply_chevalley(&y, Chevalley::X, i, a)
}

/// Cyclic shift of columns with the sign that keeps coordinates unsigned: `Δ'_I = Δ_{I+1}`.
pub fn apply_chi(p: &PluckerVector) -> PluckerVector {
    let mut out = p.clone();
    for s in p.subsets() {
        let mut t: Vec<usize> = s.iter().map(|&x| x % p.m + 1).collect();
        t.sort_unstable();
        out.set(&s, p.get(&t).clone());
    }
    out
}

/// Elementary matrices in `GL_m`: `x_i` has `a` at `(i, i+1)`, `y_i` at `(i+1, i)`, indices mod `m`.
pub fn chevalley_matrix(kind: Chevalley, i: usize, a: &Q, m: usize) -> Matrix {
    let j = i % m + 1;
    let mut out = Matrix::identity(m);
    match kind {
        Chevalley::X => out[(i - 1, j - 1)] = a.clone(),
        Chevalley::Y => out[(j - 1, i - 1)] = a.clone(),
    }
    out
}

pub fn u_matrix(i: usize, a: &Q, m: usize) -> Matrix {
    let prev = if i == 1 { m } else { i - 1 };
    chevalley_matrix(Chevalley::X, i, a, m).mul(&chevalley_matrix(Chevalley::Y, prev, a, m))
}

/// Maximal minors of a `k × m` matrix.
pub fn plucker_of_matrix(a: &Matrix) -> PluckerVector {
    let mut p = PluckerVector::zero(a.cols, a.rows);
    let rows: Vec<usize> = (0..a.rows).collect();
    for (idx, s) in p.subsets().into_iter().enumerate() {
        let cols: Vec<usize> = s.iter().map(|x| x - 1).collect();
        p.coords[idx] = a.submatrix(&rows, &cols).det();
    }
    p
}

/// Local rewrites; each keeps the point `M(N)` fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// M1 on the square through two trivalent black vertices (interior indices).
    Square { blacks: [usize; 2] },
    /// M2: remove an interior vertex of degree two.
    ValentTwo { vertex: usize },
    /// R1: merge two parallel edges bounding a digon.
    Parallel { edges: [usize; 2] },
    /// R2: remove an interior leaf together with its neighbour.
    Leaf { vertex: usize },
    /// R3: remove an isolated edge between two interior vertices.
    Dipole { edge: usize },
}

struct Draft {
    m: usize,
    colors: Vec<Option<Color>>,
    edges: Vec<Option<BEdge>>,
    rot: Vec<Vec<usize>>,
}

impl Draft {
    fn new(g: &PlanarBipartiteGraph) -> Self {
        Draft {
            m: g.m,
            colors: g.colors.iter().map(|&c| Some(c)).collect(),
            edges: g.edges.iter().cloned().map(Some).collect(),
            rot: g.rotation.clone(),
        }
    }

    fn rot_of(&mut self, x: usize) -> &mut Vec<usize> {
        &mut self.rot[x - self.m]
    }

    /// Rotation of `x` read cyclically from edge `e`.
    fn from_edge(&self, x: usize, e: usize) -> Vec<usize> {
        let r = &self.rot[x - self.m];
        let k = r.iter().position(|&f| f == e).unwrap();
        r[k..].iter().chain(&r[..k]).copied().collect()
    }

    fn follows(&self, x: usize, first: usize, second: usize) -> bool {
        let r = self.from_edge(x, first);
        r.len() > 1 && r[1] == second
    }

    fn remove_from_rot(&mut self, x: usize, e: usize) {
        if x >= self.m {
            self.rot_of(x).retain(|&f| f != e);
        }
    }

    fn push_edge(&mut self, u: usize, v: usize, w: Q) -> usize {
        self.edges.push(Some(BEdge { u, v, w }));
        self.edges.len() - 1
    }

    fn delete_vertex(&mut self, x: usize) {
        self.colors[x - self.m] = None;
        self.rot_of(x).clear();
    }

    fn finish(self) -> Result<PlanarBipartiteGraph> {
        let mut vmap = vec![usize::MAX; self.m + self.colors.len()];
        for (x, slot) in vmap.iter_mut().enumerate().take(self.m) {
            *slot = x;
        }
        let mut colors = Vec::new();
        for (j, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                vmap[self.m + j] = self.m + colors.len();
                colors.push(*c);
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                emap[i] = edges.len();
                edges.push(BEdge { u: vmap[e.u], v: vmap[e.v], w: e.w.clone() });
            }
        }
        let rotation = self
            .colors
            .iter()
            .zip(&self.rot)
            .filter(|(c, _)| c.is_some())
            .map(|(_, r)| r.iter().map(|&e| emap[e]).collect())
            .collect();
        let g = PlanarBipartiteGraph { m: self.m, colors, edges, rotation };
        g.validate()?;
        Ok(g)
    }
}

pub fn apply_move(g: &PlanarBipartiteGraph, mv: &Move) -> Result<PlanarBipartiteGraph> {
    g.validate()?;
    let bad = |s: &str| Err(Error::BadSite(s.to_string()));
    let interior = |j: usize| -> Result<usize> {
        if j < g.colors.len() {
            Ok(g.m + j)
        } else {
            Err(Error::BadSite(format!("no interior vertex {}", j + 1)))
        }
    };
    let mut dr = Draft::new(g);
    match mv {
        Move::Square { blacks } => {
            let (b1, b2) = (interior(blacks[0])?, interior(blacks[1])?);
            if g.color(b1) != Color::Black || g.color(b2) != Color::Black || b1 == b2 {
                return bad("square move needs two distinct black vertices");
            }
            let r1 = &g.rotation[b1 - g.m];
            let r2 = &g.rotation[b2 - g.m];
            if r1.len() != 3 || r2.len() != 3 {
                return bad("square move needs trivalent black vertices");
            }
            let nb2: Vec<usize> = r2.iter().map(|&e| g.edges[e].other(b2)).collect();
            let Some(k) = (0..3).find(|&k| {
                let o = |t: usize| g.edges[r1[(k + t) % 3]].other(b1);
                !nb2.contains(&o(0)) && nb2.contains(&o(1)) && nb2.contains(&o(2))
            }) else {
                return bad("black vertices do not share exactly two neighbours");
            };
            let (e_t, e_r, e_l) = (r1[k], r1[(k + 1) % 3], r1[(k + 2) % 3]);
            let (t, r, l) = (g.edges[e_t].other(b1), g.edges[e_r].other(b1), g.edges[e_l].other(b1));
            let k2 = nb2.iter().position(|&x| x == r).unwrap();
            let (e_r2, e_bm, e_l2) = (r2[k2], r2[(k2 + 1) % 3], r2[(k2 + 2) % 3]);
            let bm = g.edges[e_bm].other(b2);
            if r == l || g.edges[e_l2].other(b2) != l || bm == r || bm == l {
                return bad("neighbours of the black vertices are not in square position");
            }
            if g.is_boundary(t) || g.is_boundary(bm) || t == bm || g.is_boundary(r) || g.is_boundary(l) {
                return bad("square move needs four distinct interior white vertices");
            }
            if !dr.follows(l, e_l, e_l2) || !dr.follows(r, e_r2, e_r) {
                return bad("the four vertices do not bound a face");
            }
            let l1 = g.edges[e_t].w.clone();
            let l2 = g.edges[e_bm].w.clone();
            if l1.is_zero() || l2.is_zero() {
                return bad("leg weights must be nonzero");
            }
            let a = &g.edges[e_l].w / &l1;
            let b = &g.edges[e_r].w / &l1;
            let c = &g.edges[e_r2].w / &l2;
            let d = &g.edges[e_l2].w / &l2;
            let s = &a * &c + &b * &d;
            if s.is_zero() {
                return bad("square weights are degenerate");
            }
            let (a2, b2w, c2, d2) = (&a / &s, &b / &s, &c / &s, &d / &s);
            // b1 becomes the right black vertex, b2 the left one
            dr.edges[e_r].as_mut().unwrap().w = Q::one();
            dr.edges[e_l2].as_mut().unwrap().w = Q::one();
            dr.edges[e_t].as_mut().unwrap().w = d2;
            dr.edges[e_bm].as_mut().unwrap().w = b2w;
            dr.edges[e_l] = None;
            dr.edges[e_r2] = None;
            dr.remove_from_rot(l, e_l);
            dr.remove_from_rot(r, e_r2);
            let e_c = dr.push_edge(b2, t, c2);
            let e_a = dr.push_edge(b1, bm, a2);
            let rt = dr.rot_of(t);
            let kt = rt.iter().position(|&e| e == e_t).unwrap();
            rt.insert(kt + 1, e_c);
            let rb = dr.rot_of(bm);
            let kb = rb.iter().position(|&e| e == e_bm).unwrap();
            rb.insert(kb + 1, e_a);
            *dr.rot_of(b1) = vec![e_r, e_a, e_t];
            *dr.rot_of(b2) = vec![e_c, e_bm, e_l2];
        }
        Move::ValentTwo { vertex } => {
            let v = interior(*vertex)?;
            let rv = g.rotation[v - g.m].clone();
            if rv.len() != 2 {
                return bad("vertex does not have degree two");
            }
            let (mut e1, mut e2) = (rv[0], rv[1]);
            let (mut u, mut u2) = (g.edges[e1].other(v), g.edges[e2].other(v));
            if u == u2 {
                return bad("both edges go to the same vertex");
            }
            if g.is_boundary(u2) {
                std::mem::swap(&mut u, &mut u2);
                std::mem::swap(&mut e1, &mut e2);
            }
            if g.is_boundary(u2) {
                return bad("both neighbours are boundary vertices");
            }
            let (w1, w2) = (g.edges[e1].w.clone(), g.edges[e2].w.clone());
            if g.is_boundary(u) {
                // b joins u' directly and changes colour
                for &e in &g.rotation[u2 - g.m] {
                    if e != e2 {
                        dr.edges[e].as_mut().unwrap().w *= &w1;
                    }
                }
                let e = dr.edges[e2].as_mut().unwrap();
                *e = BEdge { u, v: u2, w: w2 };
                dr.edges[e1] = None;
            } else {
                let xs: Vec<usize> = dr.from_edge(u, e1)[1..].to_vec();
                let ys: Vec<usize> = dr.from_edge(u2, e2)[1..].to_vec();
                for &e in &xs {
                    dr.edges[e].as_mut().unwrap().w *= &w2;
                }
                for &e in &ys {
                    let edge = dr.edges[e].as_mut().unwrap();
                    edge.w *= &w1;
                    if edge.u == u2 {
                        edge.u = u;
                    } else {
                        edge.v = u;
                    }
                }
                *dr.rot_of(u) = xs.into_iter().chain(ys).collect();
                dr.delete_vertex(u2);
                dr.edges[e1] = None;
                dr.edges[e2] = None;
            }
            dr.delete_vertex(v);
        }
        Move::Parallel { edges } => {
            let [e1, e2] = *edges;
            if e1 == e2 || e1 >= g.edges.len() || e2 >= g.edges.len() {
                return bad("need two distinct edges");
            }
            let (a, b) = (&g.edges[e1], &g.edges[e2]);
            if !((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u)) {
                return bad("edges are not parallel");
            }
            for x in [a.u, a.v] {
                if !dr.follows(x, e1, e2) && !dr.follows(x, e2, e1) {
                    return bad("parallel edges do not bound a digon");
                }
            }
            let w = &a.w + &b.w;
            dr.edges[e1].as_mut().unwrap().w = w;
            dr.edges[e2] = None;
            dr.remove_from_rot(a.u, e2);
            dr.remove_from_rot(a.v, e2);
        }
        Move::Leaf { vertex } => {
            let v = interior(*vertex)?;
            let rv = &g.rotation[v - g.m];
            if rv.len() != 1 {
                return bad("vertex is not a leaf");
            }
            let ev = rv[0];
            let u = g.edges[ev].other(v);
            if g.is_boundary(u) {
                return bad("leaf hangs off the boundary");
            }
            let leaf_color = g.color(v);
            for &e in &g.rotation[u - g.m] {
                if e == ev {
                    continue;
                }
                let x = g.edges[e].other(u);
                if g.is_boundary(x) {
                    dr.colors.push(Some(leaf_color));
                    dr.rot.push(vec![e]);
                    let w = g.m + dr.colors.len() - 1;
                    *dr.edges[e].as_mut().unwrap() = BEdge { u: x, v: w, w: Q::one() };
                } else {
                    dr.remove_from_rot(x, e);
                    dr.edges[e] = None;
                }
            }
            dr.edges[ev] = None;
            dr.delete_vertex(u);
            dr.delete_vertex(v);
        }
        Move::Dipole { edge } => {
            let e = *edge;
            if e >= g.edges.len() {
                return bad("no such edge");
            }
            let (u, v) = (g.edges[e].u, g.edges[e].v);
            if g.is_boundary(u) || g.is_boundary(v) || g.rotation[u - g.m].len() != 1 || g.rotation[v - g.m].len() != 1 {
                return bad("edge is not a dipole");
            }
            dr.edges[e] = None;
            dr.delete_vertex(u);
            dr.delete_vertex(v);
        }
    }
    dr.finish()
}
