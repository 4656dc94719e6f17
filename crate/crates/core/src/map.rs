//! Combinatorial map of a cactus network: the network's edges plus one arc per boundary
//! segment, with a clockwise rotation of darts at every node.
//!
//! Dart `2e` leaves end 0 of edge `e`, dart `2e+1` leaves end 1. Arc `i` runs clockwise
//! from bar `i` to bar `i+1`, so its dart 0 is `ArcOut(i)` and its dart 1 is `ArcIn(i+1)`.
//! The face of a dart is the one on its left; the outer face is exactly the `ArcOut` darts.

use crate::error::{Error, Result};
use crate::network::{CactusNetwork, Edge, Vertex};
use crate::rat::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Real(Q),
    Arc(usize),
}

#[derive(Clone, Debug)]
pub struct Map {
    pub n: usize,
    /// `None` marks a deleted edge.
    pub kinds: Vec<Option<Kind>>,
    pub ends: Vec<[usize; 2]>,
    /// Clockwise darts per node; `None` marks a deleted node.
    pub rot: Vec<Option<Vec<usize>>>,
    /// Edge index of arc `i` at position `i - 1`.
    pub arcs: Vec<usize>,
}

pub fn twin(d: usize) -> usize {
    d ^ 1
}

impl Map {
    pub fn arc_out(&self, i: usize) -> usize {
        2 * self.arcs[i - 1]
    }

    pub fn arc_in(&self, i: usize) -> usize {
        let prev = if i == 1 { self.n } else { i - 1 };
        2 * self.arcs[prev - 1] + 1
    }

    pub fn tail(&self, d: usize) -> usize {
        self.ends[d / 2][d % 2]
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(twin(d))
    }

    pub fn is_arc(&self, d: usize) -> bool {
        matches!(self.kinds[d / 2], Some(Kind::Arc(_)))
    }

    pub fn weight(&self, e: usize) -> Option<&Q> {
        match &self.kinds[e] {
            Some(Kind::Real(w)) => Some(w),
            _ => None,
        }
    }

    pub fn real_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.kinds.len()).filter(|&e| matches!(self.kinds[e], Some(Kind::Real(_))))
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rot.len()).filter(|&v| self.rot[v].is_some())
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        self.rot[v].as_deref().expect("live node")
    }

    fn rotation_mut(&mut self, v: usize) -> &mut Vec<usize> {
        self.rot[v].as_mut().expect("live node")
    }

    /// `(node, index)` of every live dart.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); 2 * self.kinds.len()];
        for v in self.nodes() {
            for (k, &d) in self.rotation(v).iter().enumerate() {
                pos[d] = (v, k);
            }
        }
        pos
    }

    /// The dart after `d` along the face on its left.
    pub fn next_in_face(&self, d: usize, pos: &[(usize, usize)]) -> usize {
        let (v, k) = pos[twin(d)];
        let r = self.rotation(v);
        r[(k + 1) % r.len()]
    }

    pub fn faces(&self) -> Faces {
        let pos = self.positions();
        let mut face_of = vec![usize::MAX; pos.len()];
        let mut cycles = Vec::new();
        for v in self.nodes() {
            for &start in self.rotation(v) {
                if face_of[start] != usize::MAX {
                    continue;
                }
                let id = cycles.len();
                let mut cycle = Vec::new();
                let mut d = start;
                loop {
                    face_of[d] = id;
                    cycle.push(d);
                    d = self.next_in_face(d, &pos);
                    if d == start {
                        break;
                    }
                }
                cycles.push(cycle);
            }
        }
        let outer = face_of[self.arc_out(1)];
        Faces { cycles, face_of, outer }
    }

    pub fn from_network(net: &CactusNetwork) -> Result<Map> {
        let n = net.n;
        let parts = net.shape.parts();
        let class_of = net.shape.block_ids();
        let e_count = net.edges.len();
        let node_of = |v: &Vertex| -> usize {
            match *v {
                Vertex::Bar(p) => class_of[p],
                Vertex::Inner(j) => parts.len() + j,
            }
        };
        let mut kinds: Vec<Option<Kind>> = net.edges.iter().map(|e| Some(Kind::Real(e.w.clone()))).collect();
        let mut ends: Vec<[usize; 2]> = net.edges.iter().map(|e| [node_of(&e.u), node_of(&e.v)]).collect();
        let mut arcs = Vec::with_capacity(n);
        for i in 1..=n {
            arcs.push(kinds.len());
            kinds.push(Some(Kind::Arc(i)));
            ends.push([class_of[i], class_of[i % n + 1]]);
        }
        let mut map = Map { n, kinds, ends, rot: vec![None; parts.len() + net.interior], arcs };

        let mut seen = vec![[false; 2]; e_count];
        let mut take = |e: usize, at: &Vertex| -> Result<usize> {
            let edge = net.edges.get(e).ok_or_else(|| Error::InvalidNetwork(format!("rotation names unknown edge {e}")))?;
            for b in 0..2 {
                let endpoint = if b == 0 { &edge.u } else { &edge.v };
                if endpoint == at && !seen[e][b] {
                    seen[e][b] = true;
                    return Ok(2 * e + b);
                }
            }
            Err(Error::InvalidNetwork(format!("edge {e} listed too often at {at}")))
        };
        for (c, part) in parts.iter().enumerate() {
            let mut r = Vec::new();
            for (idx, &p) in part.iter().enumerate() {
                if idx > 0 {
                    r.push(map.arc_in(p));
                }
                r.push(map.arc_out(p));
                for &e in &net.bar_rotation[p - 1] {
                    r.push(take(e, &Vertex::Bar(p))?);
                }
            }
            r.push(map.arc_in(part[0]));
            map.rot[c] = Some(r);
        }
        for j in 0..net.interior {
            let mut r = Vec::new();
            for &e in &net.inner_rotation[j] {
                r.push(take(e, &Vertex::Inner(j))?);
            }
            map.rot[parts.len() + j] = Some(r);
        }
        if let Some(e) = (0..e_count).find(|&e| !(seen[e][0] && seen[e][1])) {
            return Err(Error::InvalidNetwork(format!("edge {e} missing from the rotation system")));
        }
        Ok(map)
    }

    /// Reads the map back as a network. Class nodes must have the cactus rotation shape.
    pub fn to_network(&self) -> Result<CactusNetwork> {
        let n = self.n;
        let pos = self.positions();
        let mut bar_node = vec![0; n + 1];
        for i in 1..=n {
            bar_node[i] = self.tail(self.arc_out(i));
            if self.head(self.arc_out(i)) != self.tail(self.arc_out(i % n + 1)) {
                return Err(Error::Inconsistent("arc endpoints disagree".into()));
            }
        }
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut node_class = vec![usize::MAX; self.rot.len()];
        for i in 1..=n {
            let v = bar_node[i];
            if node_class[v] == usize::MAX {
                node_class[v] = parts.len();
                parts.push(Vec::new());
            }
            parts[node_class[v]].push(i);
        }
        let shape = crate::combinat::NCPartition::new(n, parts)
            .map_err(|e| Error::InvalidNetwork(format!("shape: {e}")))?;

        let mut inner_index = vec![usize::MAX; self.rot.len()];
        let mut interior = 0;
        for v in self.nodes() {
            if node_class[v] == usize::MAX {
                inner_index[v] = interior;
                interior += 1;
            }
        }
        let mut new_index = vec![usize::MAX; self.kinds.len()];
        let mut weights = Vec::new();
        for e in self.real_edges() {
            new_index[e] = weights.len();
            weights.push(self.weight(e).unwrap().clone());
        }

        // endpoint label of every real dart
        let mut label: Vec<Option<Vertex>> = vec![None; 2 * self.kinds.len()];
        let mut bar_rotation = vec![Vec::new(); n];
        for i in 1..=n {
            let v = bar_node[i];
            let r = self.rotation(v);
            let start = pos[self.arc_out(i)].1;
            let mut k = (start + 1) % r.len();
            loop {
                let d = r[k];
                if self.is_arc(d) {
                    let members: Vec<usize> = (1..=n).filter(|&p| bar_node[p] == v).collect();
                    let at = members.iter().position(|&p| p == i).unwrap();
                    let expected = members[(at + 1) % members.len()];
                    if d != self.arc_in(expected) {
                        return Err(Error::InvalidNetwork(format!("rotation at bar {i} is not a cactus rotation")));
                    }
                    break;
                }
                label[d] = Some(Vertex::Bar(i));
                bar_rotation[i - 1].push(d);
                k = (k + 1) % r.len();
            }
        }
        let mut inner_rotation = vec![Vec::new(); interior];
        for v in self.nodes() {
            if inner_index[v] == usize::MAX {
                continue;
            }
            for &d in self.rotation(v) {
                if self.is_arc(d) {
                    return Err(Error::Inconsistent("arc at interior node".into()));
                }
                label[d] = Some(Vertex::Inner(inner_index[v]));
                inner_rotation[inner_index[v]].push(d);
            }
        }

        // For loops at one vertex label the first occurrence as end 0.
        let mut flip = vec![false; self.kinds.len()];
        let check_order = |list: &[usize], flip: &mut Vec<bool>| {
            let mut first_seen = std::collections::HashSet::new();
            for &d in list {
                let e = d / 2;
                if label[2 * e] == label[2 * e + 1] && first_seen.insert(e) && d % 2 == 1 {
                    flip[e] = true;
                }
            }
        };
        for list in bar_rotation.iter().chain(inner_rotation.iter()) {
            check_order(list, &mut flip);
        }
        let mut edges = Vec::with_capacity(weights.len());
        for e in self.real_edges() {
            let (a, b) = if flip[e] { (2 * e + 1, 2 * e) } else { (2 * e, 2 * e + 1) };
            edges.push(Edge {
                u: label[a].clone().ok_or_else(|| Error::Inconsistent("unplaced dart".into()))?,
                v: label[b].clone().ok_or_else(|| Error::Inconsistent("unplaced dart".into()))?,
                w: weights[new_index[e]].clone(),
            });
        }
        let relabel = |list: Vec<usize>| list.into_iter().map(|d| new_index[d / 2]).collect::<Vec<_>>();
        Ok(CactusNetwork {
            n,
            shape,
            interior,
            edges,
            bar_rotation: bar_rotation.into_iter().map(relabel).collect(),
            inner_rotation: inner_rotation.into_iter().map(relabel).collect(),
        })
    }

    pub fn add_node(&mut self, rotation: Vec<usize>) -> usize {
        self.rot.push(Some(rotation));
        self.rot.len() - 1
    }

    /// New real edge between `a` and `b` with no rotation entries yet; returns its index.
    pub fn add_edge(&mut self, a: usize, b: usize, w: Q) -> usize {
        self.kinds.push(Some(Kind::Real(w)));
        self.ends.push([a, b]);
        self.kinds.len() - 1
    }

    pub fn insert_after(&mut self, anchor: usize, d: usize) {
        let v = self.tail(anchor);
        let r = self.rotation_mut(v);
        let k = r.iter().position(|&x| x == anchor).expect("anchor placed");
        r.insert(k + 1, d);
    }

    pub fn insert_before(&mut self, anchor: usize, d: usize) {
        let v = self.tail(anchor);
        let r = self.rotation_mut(v);
        let k = r.iter().position(|&x| x == anchor).expect("anchor placed");
        r.insert(k, d);
    }

    /// Replaces dart `d` in its rotation by `with` (darts whose tails must already point here).
    pub fn replace_dart(&mut self, d: usize, with: &[usize]) {
        let v = self.tail(d);
        let r = self.rotation_mut(v);
        let k = r.iter().position(|&x| x == d).expect("dart placed");
        r.splice(k..=k, with.iter().copied());
    }

    pub fn delete_edge(&mut self, e: usize) {
        for d in [2 * e, 2 * e + 1] {
            let v = self.tail(d);
            self.rotation_mut(v).retain(|&x| x != d);
        }
        self.kinds[e] = None;
    }

    /// Glues the endpoints of `e`; a loop is simply deleted.
    pub fn contract_edge(&mut self, e: usize) {
        let [x, y] = self.ends[e];
        if x == y {
            self.delete_edge(e);
            return;
        }
        let ry = self.rot[y].take().expect("live node");
        let k = ry.iter().position(|&d| d == 2 * e + 1).unwrap();
        let spliced: Vec<usize> = (1..ry.len()).map(|s| ry[(k + s) % ry.len()]).collect();
        for &d in &spliced {
            self.ends[d / 2][d % 2] = x;
        }
        let rx = self.rotation_mut(x);
        let kx = rx.iter().position(|&d| d == 2 * e).unwrap();
        rx.splice(kx..=kx, spliced);
        self.kinds[e] = None;
    }

    pub fn delete_node(&mut self, v: usize) {
        debug_assert!(self.rotation(v).is_empty());
        self.rot[v] = None;
    }

    /// Drops every node and edge not connected to a boundary arc.
    pub fn remove_floating(&mut self) {
        let mut reach = vec![false; self.rot.len()];
        let mut stack: Vec<usize> = (1..=self.n).map(|i| self.tail(self.arc_out(i))).collect();
        while let Some(v) = stack.pop() {
            if reach[v] {
                continue;
            }
            reach[v] = true;
            for &d in self.rotation(v) {
                stack.push(self.head(d));
            }
        }
        for v in 0..self.rot.len() {
            if self.rot[v].is_some() && !reach[v] {
                for d in self.rot[v].take().unwrap() {
                    self.kinds[d / 2] = None;
                }
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.nodes().next() else { return true };
        let mut reach = vec![false; self.rot.len()];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if reach[v] {
                continue;
            }
            reach[v] = true;
            for &d in self.rotation(v) {
                stack.push(self.head(d));
            }
        }
        self.nodes().all(|v| reach[v])
    }

    /// Euler characteristic check for a connected map on the sphere.
    pub fn is_planar(&self) -> bool {
        let v = self.nodes().count() as i64;
        let e = self.kinds.iter().filter(|k| k.is_some()).count() as i64;
        let f = self.faces().cycles.len() as i64;
        v - e + f == 2
    }
}

pub struct Faces {
    pub cycles: Vec<Vec<usize>>,
    pub face_of: Vec<usize>,
    pub outer: usize,
}
