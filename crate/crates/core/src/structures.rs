//! Graphs, 3-graphs, bigraphs, trigraphs, triads and vertex partitions.
//!
//! Vertices are dense ids `0..n`. Bigraph and trigraph parts are ordered lists of
//! vertex ids; two parts may share vertices, and all adjacency is indexed by
//! position inside the part.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{precondition, structural, Error, Result};

/// Original vertex name kept alongside the dense id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl Label {
    pub fn name(s: impl Into<String>) -> Label {
        Label::Name(s.into())
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

pub fn default_labels(n: usize) -> Vec<Label> {
    (0..n as i64).map(Label::Int).collect()
}

fn check_labels(n: usize, labels: &[Label]) -> Result<()> {
    if labels.len() != n {
        return structural(format!("{} labels for {} vertices", labels.len(), n));
    }
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return structural(format!("duplicate vertex label {l}"));
        }
    }
    Ok(())
}

/// Position of each vertex inside a part (parts may be arbitrary id lists).
pub(crate) fn position_map(part: &[usize]) -> HashMap<usize, usize> {
    part.iter().enumerate().map(|(i, &v)| (v, i)).collect()
}

#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<Bits>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { labels: default_labels(n), adj: vec![Bits::new(n); n], m: 0 }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            if a >= n || b >= n {
                return structural(format!("edge ({a},{b}) outside 0..{n}"));
            }
            if a == b {
                return structural(format!("loop at vertex {a}"));
            }
            if !g.adj[a].get(b) {
                g.adj[a].set(b);
                g.adj[b].set(a);
                g.m += 1;
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges(n, edges).expect("complete graph is well formed")
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Graph> {
        check_labels(self.n(), &labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].get(b)
    }

    pub fn neighbors(&self, v: usize) -> &Bits {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Edges as sorted `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for a in 0..self.n() {
            out.extend(self.adj[a].ones().filter(|&b| b > a).map(|b| (a, b)));
        }
        out
    }

    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut edges = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        let labels = vs.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::from_edges(vs.len(), edges)
            .and_then(|g| g.with_labels(labels))
            .expect("induced subgraph of a valid graph")
    }
}

/// A 3-uniform hypergraph with unordered edges stored as sorted triples.
#[derive(Debug)]
pub struct Hypergraph3 {
    labels: Vec<Label>,
    edges: Vec<[usize; 3]>,
    fibers: OnceLock<Vec<Bits>>,
}

impl Clone for Hypergraph3 {
    fn clone(&self) -> Self {
        Hypergraph3 { labels: self.labels.clone(), edges: self.edges.clone(), fibers: OnceLock::new() }
    }
}

fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

impl Hypergraph3 {
    pub fn from_edges<I: IntoIterator<Item = [usize; 3]>>(n: usize, edges: I) -> Result<Hypergraph3> {
        let mut es = Vec::new();
        for e in edges {
            let s = sort3(e);
            if s[2] >= n {
                return structural(format!("edge {e:?} outside 0..{n}"));
            }
            if s[0] == s[1] || s[1] == s[2] {
                return structural(format!("edge {e:?} repeats a vertex"));
            }
            es.push(s);
        }
        es.sort_unstable();
        es.dedup();
        Ok(Hypergraph3 { labels: default_labels(n), edges: es, fibers: OnceLock::new() })
    }

    pub fn empty(n: usize) -> Hypergraph3 {
        Hypergraph3 { labels: default_labels(n), edges: Vec::new(), fibers: OnceLock::new() }
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Hypergraph3> {
        check_labels(self.n(), &labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, a: usize, b: usize, c: usize) -> bool {
        if a == b || b == c || a == c {
            return false;
        }
        self.edges.binary_search(&sort3([a, b, c])).is_ok()
    }

    /// `{z : xyz ∈ E}` as a bit vector over all vertices. Built lazily (n² vectors).
    pub fn fiber(&self, x: usize, y: usize) -> &Bits {
        let n = self.n();
        &self.fibers.get_or_init(|| {
            let mut f = vec![Bits::new(n); n * n];
            for &[a, b, c] in &self.edges {
                for (p, q, r) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    f[p * n + q].set(r);
                }
            }
            f
        })[x * n + y]
    }

    pub fn induced(&self, vs: &[usize]) -> Hypergraph3 {
        let pos = position_map(vs);
        let edges = self.edges.iter().filter_map(|e| {
            Some([*pos.get(&e[0])?, *pos.get(&e[1])?, *pos.get(&e[2])?])
        });
        let labels = vs.iter().map(|&v| self.labels[v].clone()).collect();
        Hypergraph3::from_edges(vs.len(), edges.collect::<Vec<_>>())
            .and_then(|h| h.with_labels(labels))
            .expect("induced sub-3-graph of a valid 3-graph")
    }
}

/// `(V1, V2; E)` with `E ⊆ V1 × V2`; rows are indexed by left position over right positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigraph {
    left: Vec<usize>,
    right: Vec<usize>,
    rows: Vec<Bits>,
}

impl Bigraph {
    pub fn from_rows(left: Vec<usize>, right: Vec<usize>, rows: Vec<Bits>) -> Result<Bigraph> {
        if rows.len() != left.len() || rows.iter().any(|r| r.len() != right.len()) {
            return structural("bigraph rows do not match part sizes");
        }
        Ok(Bigraph { left, right, rows })
    }

    pub fn empty(left: Vec<usize>, right: Vec<usize>) -> Bigraph {
        let rows = vec![Bits::new(right.len()); left.len()];
        Bigraph { left, right, rows }
    }

    pub fn complete(left: Vec<usize>, right: Vec<usize>) -> Bigraph {
        let rows = vec![Bits::full(right.len()); left.len()];
        Bigraph { left, right, rows }
    }

    /// Builds from positional pairs `(i, j)`, `i` indexing `left`, `j` indexing `right`.
    pub fn from_positions<I>(left: Vec<usize>, right: Vec<usize>, pairs: I) -> Result<Bigraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = Bigraph::empty(left, right);
        for (i, j) in pairs {
            if i >= b.left.len() || j >= b.right.len() {
                return structural(format!("pair position ({i},{j}) outside the parts"));
            }
            b.rows[i].set(j);
        }
        Ok(b)
    }

    /// Builds from vertex-id pairs; every pair must lie in `left × right`.
    pub fn from_pairs<I>(left: Vec<usize>, right: Vec<usize>, pairs: I) -> Result<Bigraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let lp = position_map(&left);
        let rp = position_map(&right);
        let mut b = Bigraph::empty(left, right);
        for (x, y) in pairs {
            match (lp.get(&x), rp.get(&y)) {
                (Some(&i), Some(&j)) => b.rows[i].set(j),
                _ => return structural(format!("pair ({x},{y}) not in left × right")),
            }
        }
        Ok(b)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Bits {
        &self.rows[i]
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(Bits::count).sum()
    }

    /// Pairs as vertex ids, in row-major position order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            out.extend(r.ones().map(|j| (self.left[i], self.right[j])));
        }
        out
    }

    /// Sub-bigraph on the given left and right positions.
    pub fn restrict(&self, xs: &[usize], ys: &[usize]) -> Bigraph {
        let rows = xs.iter().map(|&i| self.rows[i].gather(ys)).collect();
        Bigraph {
            left: xs.iter().map(|&i| self.left[i]).collect(),
            right: ys.iter().map(|&j| self.right[j]).collect(),
            rows,
        }
    }

    pub fn transpose(&self) -> Bigraph {
        let mut t = Bigraph::empty(self.right.clone(), self.left.clone());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i);
            }
        }
        t
    }

    /// Pairs of `left × right` not in this bigraph.
    pub fn complement(&self) -> Bigraph {
        Bigraph {
            left: self.left.clone(),
            right: self.right.clone(),
            rows: self.rows.iter().map(Bits::complement).collect(),
        }
    }
}

/// `(X, Y, Z; E)` with ordered triples; `fib[i * |Y| + j]` holds the `z` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trigraph {
    parts: [Vec<usize>; 3],
    fib: Vec<Bits>,
}

impl Trigraph {
    pub fn empty(parts: [Vec<usize>; 3]) -> Trigraph {
        let fib = vec![Bits::new(parts[2].len()); parts[0].len() * parts[1].len()];
        Trigraph { parts, fib }
    }

    pub fn complete(parts: [Vec<usize>; 3]) -> Trigraph {
        let fib = vec![Bits::full(parts[2].len()); parts[0].len() * parts[1].len()];
        Trigraph { parts, fib }
    }

    pub fn from_positions<I>(parts: [Vec<usize>; 3], triples: I) -> Result<Trigraph>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut t = Trigraph::empty(parts);
        let (a, b, c) = t.sizes();
        for (i, j, k) in triples {
            if i >= a || j >= b || k >= c {
                return structural(format!("triple position ({i},{j},{k}) outside the parts"));
            }
            t.fib[i * b + j].set(k);
        }
        Ok(t)
    }

    pub fn from_triples<I>(parts: [Vec<usize>; 3], triples: I) -> Result<Trigraph>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let maps = [position_map(&parts[0]), position_map(&parts[1]), position_map(&parts[2])];
        let mut pos = Vec::new();
        for (x, y, z) in triples {
            match (maps[0].get(&x), maps[1].get(&y), maps[2].get(&z)) {
                (Some(&i), Some(&j), Some(&k)) => pos.push((i, j, k)),
                _ => return structural(format!("triple ({x},{y},{z}) not in X × Y × Z")),
            }
        }
        Trigraph::from_positions(parts, pos)
    }

    /// The ordered edge set of `h` restricted to `X × Y × Z`.
    pub fn from_hypergraph(h: &Hypergraph3, parts: [Vec<usize>; 3]) -> Result<Trigraph> {
        let n = h.n();
        if parts.iter().flatten().any(|&v| v >= n) {
            return structural("trigraph part contains a vertex outside the 3-graph");
        }
        let mut t = Trigraph::empty(parts);
        let nb = t.parts[1].len();
        for (i, &x) in t.parts[0].iter().enumerate() {
            for (j, &y) in t.parts[1].iter().enumerate() {
                let f = h.fiber(x, y);
                if !f.is_empty() {
                    t.fib[i * nb + j] = f.gather(&t.parts[2]);
                }
            }
        }
        Ok(t)
    }

    pub fn parts(&self) -> &[Vec<usize>; 3] {
        &self.parts
    }

    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.parts[0].len(), self.parts[1].len(), self.parts[2].len())
    }

    /// `z` positions with `(x_i, y_j, z) ∈ E`.
    pub fn fiber(&self, i: usize, j: usize) -> &Bits {
        &self.fib[i * self.parts[1].len() + j]
    }

    pub fn has(&self, i: usize, j: usize, k: usize) -> bool {
        self.fiber(i, j).get(k)
    }

    pub fn triple_count(&self) -> u64 {
        self.fib.iter().map(Bits::count).sum()
    }

    /// Triples as vertex ids in lexicographic position order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let (_, b, _) = self.sizes();
        let mut out = Vec::new();
        for (idx, f) in self.fib.iter().enumerate() {
            let (i, j) = (idx / b, idx % b);
            out.extend(f.ones().map(|k| (self.parts[0][i], self.parts[1][j], self.parts[2][k])));
        }
        out
    }

    pub fn restrict(&self, xs: &[usize], ys: &[usize], zs: &[usize]) -> Trigraph {
        let b = self.parts[1].len();
        let parts = [
            xs.iter().map(|&i| self.parts[0][i]).collect(),
            ys.iter().map(|&j| self.parts[1][j]).collect(),
            zs.iter().map(|&k| self.parts[2][k]).collect(),
        ];
        let mut fib = Vec::with_capacity(xs.len() * ys.len());
        for &i in xs {
            for &j in ys {
                fib.push(self.fib[i * b + j].gather(zs));
            }
        }
        Trigraph { parts, fib }
    }
}

/// Three bigraphs on a shared triple of parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triad {
    parts: [Vec<usize>; 3],
    xy: Bigraph,
    xz: Bigraph,
    yz: Bigraph,
}

impl Triad {
    pub fn new(xy: Bigraph, xz: Bigraph, yz: Bigraph) -> Result<Triad> {
        if xy.left != xz.left || xy.right != yz.left || xz.right != yz.right {
            return structural("triad components do not share parts (X,Y), (X,Z), (Y,Z)");
        }
        let parts = [xy.left.clone(), xy.right.clone(), xz.right.clone()];
        Ok(Triad { parts, xy, xz, yz })
    }

    pub fn complete(parts: [Vec<usize>; 3]) -> Triad {
        let [x, y, z] = parts;
        Triad::new(
            Bigraph::complete(x.clone(), y.clone()),
            Bigraph::complete(x, z.clone()),
            Bigraph::complete(y, z),
        )
        .expect("parts agree")
    }

    pub fn parts(&self) -> &[Vec<usize>; 3] {
        &self.parts
    }

    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.parts[0].len(), self.parts[1].len(), self.parts[2].len())
    }

    pub fn xy(&self) -> &Bigraph {
        &self.xy
    }

    pub fn xz(&self) -> &Bigraph {
        &self.xz
    }

    pub fn yz(&self) -> &Bigraph {
        &self.yz
    }

    /// `z` positions closing a triangle over `(x_i, y_j)`; empty when `x_i y_j ∉ E_XY`.
    pub fn k3_fiber(&self, i: usize, j: usize) -> Bits {
        if self.xy.has(i, j) {
            self.xz.rows[i].and(&self.yz.rows[j])
        } else {
            Bits::new(self.parts[2].len())
        }
    }

    pub fn k3_count(&self) -> u64 {
        let mut total = 0;
        for (i, r) in self.xy.rows.iter().enumerate() {
            for j in r.ones() {
                total += self.xz.rows[i].and_count(&self.yz.rows[j]);
            }
        }
        total
    }

    pub fn restrict(&self, xs: &[usize], ys: &[usize], zs: &[usize]) -> Triad {
        Triad::new(self.xy.restrict(xs, ys), self.xz.restrict(xs, zs), self.yz.restrict(ys, zs))
            .expect("restriction keeps parts aligned")
    }
}

/// Ordered lift of a graph: the bigraph `(V, V; Ē)` with both orderings of every edge.
pub fn lift_graph(g: &Graph) -> Bigraph {
    let v: Vec<usize> = (0..g.n()).collect();
    Bigraph { left: v.clone(), right: v, rows: g.adj.clone() }
}

/// Ordered lift of a 3-graph: the trigraph `(V, V, V; Ē)` with all six orderings.
pub fn lift_hypergraph(h: &Hypergraph3) -> Trigraph {
    let v: Vec<usize> = (0..h.n()).collect();
    Trigraph::from_hypergraph(h, [v.clone(), v.clone(), v]).expect("full parts are in range")
}

fn part_positions(outer: &[usize], inner: &[usize], what: &str) -> Result<Vec<usize>> {
    let map = position_map(outer);
    inner
        .iter()
        .map(|v| {
            map.get(v)
                .copied()
                .ok_or_else(|| Error::Structural(format!("{what}: vertex {v} not in the enclosing part")))
        })
        .collect()
}

/// `H|G`: the triples of `h` lying in `K₃(G)`, on the parts of `g`.
pub fn restrict_trigraph(h: &Trigraph, g: &Triad) -> Result<Trigraph> {
    let xs = part_positions(&h.parts[0], &g.parts[0], "X")?;
    let ys = part_positions(&h.parts[1], &g.parts[1], "Y")?;
    let zs = part_positions(&h.parts[2], &g.parts[2], "Z")?;
    let sub = h.restrict(&xs, &ys, &zs);
    let (a, b, _) = g.sizes();
    let mut fib = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            fib.push(sub.fiber(i, j).and(&g.k3_fiber(i, j)));
        }
    }
    Ok(Trigraph { parts: g.parts.clone(), fib })
}

/// True when the trigraph's triples all lie in `K₃(G)` and the parts coincide.
pub fn underlies(g: &Triad, h: &Trigraph) -> bool {
    if g.parts != h.parts {
        return false;
    }
    let (a, b, _) = g.sizes();
    (0..a).all(|i| (0..b).all(|j| h.fiber(i, j).is_subset(&g.k3_fiber(i, j))))
}

/// `K₃(G) ∖ F` for a trigraph underlied by `g`.
pub fn complement_within_triad(h: &Trigraph, g: &Triad) -> Result<Trigraph> {
    if !underlies(g, h) {
        return precondition("triad does not underlie the trigraph");
    }
    let (a, b, _) = g.sizes();
    let mut fib = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            fib.push(g.k3_fiber(i, j).and_not(h.fiber(i, j)));
        }
    }
    Ok(Trigraph { parts: g.parts.clone(), fib })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct VertexPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
    #[serde(skip)]
    part_of: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl TryFrom<RawPartition> for VertexPartition {
    type Error = Error;
    fn try_from(r: RawPartition) -> Result<Self> {
        VertexPartition::new(r.n, r.parts)
    }
}

impl VertexPartition {
    /// Parts are sorted internally; part order is kept as given.
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<VertexPartition> {
        let mut part_of = vec![usize::MAX; n];
        let mut parts = parts;
        for (pi, p) in parts.iter_mut().enumerate() {
            if p.is_empty() {
                return structural(format!("part {pi} is empty"));
            }
            p.sort_unstable();
            for &v in p.iter() {
                if v >= n {
                    return structural(format!("vertex {v} outside 0..{n}"));
                }
                if part_of[v] != usize::MAX {
                    return structural(format!("vertex {v} in two parts"));
                }
                part_of[v] = pi;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return structural(format!("vertex {v} is in no part"));
        }
        Ok(VertexPartition { n, parts, part_of })
    }

    pub fn trivial(n: usize) -> VertexPartition {
        VertexPartition::new(n, vec![(0..n).collect()]).expect("nonempty ground set")
    }

    /// Consecutive blocks with sizes differing by at most one.
    pub fn equipartition(n: usize, k: usize) -> Result<VertexPartition> {
        if k == 0 || k > n {
            return Err(Error::Capacity(format!("cannot split {n} vertices into {k} nonempty parts")));
        }
        let mut parts = Vec::with_capacity(k);
        let mut start = 0;
        for i in 0..k {
            let size = n / k + usize::from(i < n % k);
            parts.push((start..start + size).collect());
            start += size;
        }
        VertexPartition::new(n, parts)
    }

    pub fn from_assignment(assign: &[usize]) -> Result<VertexPartition> {
        let k = assign.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); k];
        for (v, &p) in assign.iter().enumerate() {
            parts[p].push(v);
        }
        parts.retain(|p| !p.is_empty());
        VertexPartition::new(assign.len(), parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn is_equipartition(&self) -> bool {
        let s = self.sizes();
        match (s.iter().min(), s.iter().max()) {
            (Some(a), Some(b)) => b - a <= 1,
            _ => true,
        }
    }

    /// Every part of `self` lies inside a part of `coarse`.
    pub fn refines(&self, coarse: &VertexPartition) -> bool {
        self.n == coarse.n
            && self.parts.iter().all(|p| {
                let c = coarse.part_of(p[0]);
                p.iter().all(|&v| coarse.part_of(v) == c)
            })
    }

    /// For each part of `self`, the index of the enclosing coarse part.
    pub fn parent_map(&self, coarse: &VertexPartition) -> Option<Vec<usize>> {
        self.refines(coarse).then(|| self.parts.iter().map(|p| coarse.part_of(p[0])).collect())
    }

    /// Nonempty intersections, ordered by (self part, other part).
    pub fn common_refinement(&self, other: &VertexPartition) -> Result<VertexPartition> {
        if self.n != other.n {
            return structural("partitions of different ground sets");
        }
        let mut cells: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for v in 0..self.n {
            cells.entry((self.part_of(v), other.part_of(v))).or_default().push(v);
        }
        VertexPartition::new(self.n, cells.into_values().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_single_edge_is_symmetric() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let b = lift_graph(&g);
        assert_eq!(b.pairs(), vec![(0, 1), (1, 0)]);
        let e = Graph::empty(3);
        assert_eq!(lift_graph(&e).edge_count(), 0);
    }

    #[test]
    fn lift_single_triple_has_six_orderings() {
        let h = Hypergraph3::from_edges(3, [[2, 0, 1]]).unwrap();
        let t = lift_hypergraph(&h);
        assert_eq!(t.triple_count(), 6);
        assert!(t.has(1, 2, 0) && !t.has(0, 0, 1));
    }

    #[test]
    fn hypergraph_rejects_bad_edges() {
        assert!(Hypergraph3::from_edges(3, [[0, 0, 1]]).is_err());
        assert!(Hypergraph3::from_edges(3, [[0, 1, 3]]).is_err());
        let h = Hypergraph3::from_edges(4, [[0, 1, 2], [2, 1, 0]]).unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn restrict_complete_and_empty_component() {
        let parts = [vec![0, 1], vec![2, 3], vec![4, 5]];
        let h = Trigraph::complete(parts.clone());
        let g = Triad::complete(parts.clone());
        assert_eq!(restrict_trigraph(&h, &g).unwrap().triple_count(), 8);
        let g0 = Triad::new(
            Bigraph::empty(parts[0].clone(), parts[1].clone()),
            Bigraph::complete(parts[0].clone(), parts[2].clone()),
            Bigraph::complete(parts[1].clone(), parts[2].clone()),
        )
        .unwrap();
        assert_eq!(restrict_trigraph(&h, &g0).unwrap().triple_count(), 0);
    }

    #[test]
    fn complement_extremes() {
        let parts = [vec![0, 1], vec![2, 3], vec![4]];
        let g = Triad::complete(parts.clone());
        let full = Trigraph::complete(parts.clone());
        assert_eq!(complement_within_triad(&full, &g).unwrap().triple_count(), 0);
        let none = Trigraph::empty(parts);
        assert_eq!(complement_within_triad(&none, &g).unwrap().triple_count(), g.k3_count());
    }

    #[test]
    fn complement_rejects_non_underlied() {
        let parts = [vec![0], vec![1], vec![2]];
        let g = Triad::new(
            Bigraph::empty(vec![0], vec![1]),
            Bigraph::complete(vec![0], vec![2]),
            Bigraph::complete(vec![1], vec![2]),
        )
        .unwrap();
        let h = Trigraph::complete(parts);
        assert!(matches!(complement_within_triad(&h, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn overlapping_parts_are_allowed() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let b = lift_graph(&g);
        assert_eq!(b.left(), b.right());
        assert_eq!(b.edge_count(), 4);
    }

    #[test]
    fn partitions() {
        let p = VertexPartition::equipartition(10, 3).unwrap();
        assert_eq!(p.sizes(), vec![4, 3, 3]);
        assert!(p.is_equipartition());
        let q = VertexPartition::equipartition(10, 2).unwrap();
        let r = p.common_refinement(&q).unwrap();
        assert!(r.refines(&p) && r.refines(&q));
        assert_eq!(r.len(), 4);
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
    }
}
