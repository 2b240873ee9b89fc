//! Bruhat order, lower intervals and the Bruhat graph.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::{coessential_set, CoessBox};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// `r_w(p,q) = #{k <= q : w(k) >= p}`, stored for `1 <= p, q <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankGrid {
    n: usize,
    values: Vec<u8>,
}

impl RankGrid {
    pub fn new(w: &Perm) -> Self {
        let n = w.degree();
        let mut values = vec![0u8; n * n];
        for q in 1..=n {
            let wq = w.get(q);
            for p in 1..=n {
                let prev = if q > 1 { values[(p - 1) * n + q - 2] } else { 0 };
                values[(p - 1) * n + q - 1] = prev + u8::from(wq >= p);
            }
        }
        RankGrid { n, values }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Rank value; `p = N+1` or `q = 0` give 0.
    #[inline]
    pub fn get(&self, p: usize, q: usize) -> usize {
        if q == 0 || p > self.n {
            return 0;
        }
        self.values[(p - 1) * self.n + q - 1] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.n).map(|p| (1..=self.n).map(|q| self.get(p, q)).collect()).collect()
    }

    /// Entrywise `self <= other`.
    pub fn dominated_by(&self, other: &RankGrid) -> bool {
        self.n == other.n && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

/// Single rank value in `O(q)`.
#[inline]
pub fn rank_at(w: &Perm, p: usize, q: usize) -> usize {
    w.window()[..q].iter().filter(|&&v| v as usize >= p).count()
}

/// `r_id(p,q) = max(0, q-p+1)`, the least value any permutation attains.
#[inline]
pub fn identity_rank(p: usize, q: usize) -> usize {
    (q + 1).saturating_sub(p)
}

/// Tableau criterion over the whole grid.
pub fn bruhat_leq_full(u: &Perm, w: &Perm) -> bool {
    u.degree() == w.degree() && RankGrid::new(u).dominated_by(&RankGrid::new(w))
}

/// Tableau criterion restricted to the coessential set of `w`.
pub fn bruhat_leq(u: &Perm, w: &Perm) -> bool {
    u.degree() == w.degree() && LowerInterval::new(w).contains(u)
}

/// Membership test for `[id, w]`, checking only the boxes of `E(w)`.
#[derive(Clone, Debug)]
pub struct LowerInterval {
    top: Perm,
    boxes: Vec<CoessBox>,
}

impl LowerInterval {
    pub fn new(w: &Perm) -> Self {
        LowerInterval { top: w.clone(), boxes: coessential_set(w) }
    }

    /// Uses only the given subset of rank conditions.
    pub fn with_boxes(w: &Perm, boxes: Vec<CoessBox>) -> Self {
        LowerInterval { top: w.clone(), boxes }
    }

    pub fn top(&self) -> &Perm {
        &self.top
    }

    pub fn boxes(&self) -> &[CoessBox] {
        &self.boxes
    }

    #[inline]
    pub fn contains(&self, u: &Perm) -> bool {
        self.boxes.iter().all(|b| rank_at(u, b.p, b.q) <= b.r)
    }
}

/// Upper bound on the number of group elements the table will enumerate.
pub const MAX_TABLE_ORDER: usize = 50_000;

/// All elements of a group, sorted by `(length, window)`, with lengths and
/// an index.
#[derive(Clone, Debug)]
pub struct GroupTable {
    group: Group,
    elements: Vec<Perm>,
    lengths: Vec<usize>,
    index: HashMap<Perm, usize>,
}

impl GroupTable {
    pub fn new(group: &Group) -> Result<Self> {
        let order = group.order();
        if order > MAX_TABLE_ORDER {
            return Err(Error::RankTooLarge { rank: group.rank(), bound: max_rank(group) });
        }
        let mut pairs: Vec<(usize, Perm)> = group.elements().into_iter().map(|w| (group.length(&w), w)).collect();
        pairs.sort();
        let lengths = pairs.iter().map(|(l, _)| *l).collect();
        let elements: Vec<Perm> = pairs.into_iter().map(|(_, w)| w).collect();
        let index = elements.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        Ok(GroupTable { group: group.clone(), elements, lengths, index })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn length(&self, idx: usize) -> usize {
        self.lengths[idx]
    }

    pub fn index_of(&self, w: &Perm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn lower_interval(&self, w: &Perm) -> Vec<usize> {
        let test = LowerInterval::new(w);
        (0..self.len()).filter(|&k| test.contains(&self.elements[k])).collect()
    }

    /// `s(w) = #[id, w]` by scanning the whole group.
    pub fn interval_size(&self, w: &Perm) -> usize {
        let test = LowerInterval::new(w);
        self.elements.iter().filter(|u| test.contains(u)).count()
    }
}

fn max_rank(group: &Group) -> usize {
    let g = |r| Group::new(group.family(), r).map(|g| g.order()).unwrap_or(usize::MAX);
    (1..).take_while(|&r| g(r) <= MAX_TABLE_ORDER).last().unwrap_or(0)
}

/// Directed Bruhat graph: an edge `u -> ut` for each reflection `t` with
/// `l(ut) > l(u)`. Vertices are indices into a [`GroupTable`].
#[derive(Clone, Debug)]
pub struct BruhatGraph {
    out_edges: Vec<Vec<u32>>,
    in_edges: Vec<Vec<u32>>,
}

impl BruhatGraph {
    pub fn new(table: &GroupTable) -> Self {
        let n = table.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (k, u) in table.elements().iter().enumerate() {
            for t in table.group().reflections() {
                if t.is_inversion_of(u) {
                    continue;
                }
                let v = table.index_of(&(u * &t.perm)).expect("group closed under multiplication");
                out_edges[k].push(v as u32);
                in_edges[v].push(k as u32);
            }
        }
        BruhatGraph { out_edges, in_edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.out_edges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_edges.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, u: usize) -> &[u32] {
        &self.out_edges[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[u32] {
        &self.in_edges[u]
    }

    /// `l_D(u, target)` for every vertex `u` via one reverse breadth-first
    /// search; `None` marks unreachable vertices.
    pub fn distances_to(&self, target: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[target] = Some(0);
        let mut queue = VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap() + 1;
            for &u in &self.in_edges[v] {
                let u = u as usize;
                if dist[u].is_none() {
                    dist[u] = Some(d);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn directed_distance(&self, u: usize, w: usize) -> Option<u32> {
        self.distances_to(w)[u]
    }

    /// Shortest paths ignoring edge direction. Only used to cross-check the
    /// cycle formula for `l_T`.
    pub fn undirected_distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v] + 1;
            for &u in self.out_edges[v].iter().chain(&self.in_edges[v]) {
                let u = u as usize;
                if dist[u] == u32::MAX {
                    dist[u] = d;
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}

/// `l_T(u, w) = l_T(w^{-1} u)`.
pub fn undirected_distance(group: &Group, u: &Perm, w: &Perm) -> usize {
    group.absolute_length(&(&w.inverse() * u))
}

/// An element `u <= w` whose directed distance to `w` exceeds the
/// undirected one. `directed` is `None` if no directed path exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceWitness {
    pub u: Perm,
    #[serde(rename = "lD")]
    pub directed: Option<u32>,
    #[serde(rename = "lT")]
    pub undirected: u32,
}

/// All `u <= w` with `l_D(u, w) != l_T(u, w)`, in `(length, window)` order.
pub fn distance_witnesses(table: &GroupTable, graph: &BruhatGraph, w: &Perm) -> Vec<DistanceWitness> {
    collect_witnesses(table, graph, w, false)
}

/// Distance condition: `l_D(u, w) = l_T(u, w)` for every `u <= w`. Returns
/// a witness of least length on failure.
pub fn is_hultman(table: &GroupTable, graph: &BruhatGraph, w: &Perm) -> (bool, Option<DistanceWitness>) {
    let first = collect_witnesses(table, graph, w, true).into_iter().next();
    (first.is_none(), first)
}

fn collect_witnesses(table: &GroupTable, graph: &BruhatGraph, w: &Perm, stop_at_first: bool) -> Vec<DistanceWitness> {
    let target = table.index_of(w).expect("element of the tabulated group");
    let dist = graph.distances_to(target);
    let below = LowerInterval::new(w);
    let w_inv = w.inverse();
    let mut out = Vec::new();
    for (k, u) in table.elements().iter().enumerate() {
        if !below.contains(u) {
            continue;
        }
        let undirected = table.group().absolute_length(&(&w_inv * u)) as u32;
        if dist[k] != Some(undirected) {
            out.push(DistanceWitness { u: u.clone(), directed: dist[k], undirected });
            if stop_at_first {
                break;
            }
        }
    }
    out
}
