//! Shattering dimensions: VC of set systems and graphs, VC₂ of 3-graphs, slicewise VC.
//!
//! Both searches refine the ground set into pattern classes one coordinate at a time and
//! abandon a prefix as soon as some class empties, so only shattered prefixes are extended.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{structural, Result};
use crate::par;
use crate::structures::{Graph, Hypergraph3};

pub const DEFAULT_VC_CAP: usize = 4;
pub const DEFAULT_VC2_CAP: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShatterWitness {
    Vc {
        dimension: usize,
        /// The search stopped at the cap; the true dimension may be larger.
        saturated: bool,
        set: Vec<usize>,
        /// `realizers[S]` is a member whose trace on `set` is the subset with bitmask `S`.
        realizers: Vec<usize>,
    },
    Vc2 {
        dimension: usize,
        saturated: bool,
        a: Vec<usize>,
        b: Vec<usize>,
        /// `c[S]` for each `S ⊆ [k]²`, with `(i, j)` at bit `i·k + j`.
        c: Vec<usize>,
    },
    Svc {
        dimension: usize,
        saturated: bool,
        pivot: Option<usize>,
        set: Vec<usize>,
        realizers: Vec<usize>,
    },
}

impl ShatterWitness {
    pub fn dimension(&self) -> usize {
        match self {
            ShatterWitness::Vc { dimension, .. }
            | ShatterWitness::Vc2 { dimension, .. }
            | ShatterWitness::Svc { dimension, .. } => *dimension,
        }
    }

    pub fn saturated(&self) -> bool {
        match self {
            ShatterWitness::Vc { saturated, .. }
            | ShatterWitness::Vc2 { saturated, .. }
            | ShatterWitness::Svc { saturated, .. } => *saturated,
        }
    }
}

/// Splits every class by `col`; `None` if some half is empty.
fn split(classes: &[Bits], col: &Bits) -> Option<Vec<Bits>> {
    let mut out = Vec::with_capacity(classes.len() * 2);
    for c in classes {
        let inside = c.and(col);
        let outside = c.and_not(col);
        if inside.is_empty() || outside.is_empty() {
            return None;
        }
        out.push(outside);
        out.push(inside);
    }
    Some(out)
}

/// `cols[a]` = members containing element `a`. Returns the lexicographically first shattered
/// set of maximum size ≤ cap.
fn vc_search(cols: &[Bits], members: usize, cap: usize) -> Vec<usize> {
    fn dfs(cols: &[Bits], classes: &[Bits], start: usize, set: &mut Vec<usize>, best: &mut Vec<usize>, cap: usize) {
        if set.len() > best.len() {
            *best = set.clone();
        }
        if set.len() == cap {
            return;
        }
        for a in start..cols.len() {
            if let Some(next) = split(classes, &cols[a]) {
                set.push(a);
                dfs(cols, &next, a + 1, set, best, cap);
                set.pop();
                if best.len() == cap {
                    return;
                }
            }
        }
    }
    let mut best = Vec::new();
    if members == 0 {
        return best;
    }
    dfs(cols, &[Bits::full(members)], 0, &mut Vec::new(), &mut best, cap);
    best
}

fn realizers(sets: &[Bits], set: &[usize]) -> Vec<usize> {
    (0..1usize << set.len())
        .map(|mask| {
            (0..sets.len())
                .find(|&m| set.iter().enumerate().all(|(i, &a)| sets[m].get(a) == (mask >> i & 1 == 1)))
                .expect("shattered set realizes every trace")
        })
        .collect()
}

/// VC dimension of a family of subsets of `0..ground`.
pub fn vc_dimension_sets(ground: usize, sets: &[Bits], cap: usize) -> ShatterWitness {
    let mut cols = vec![Bits::new(sets.len()); ground];
    for (m, s) in sets.iter().enumerate() {
        for a in s.ones() {
            cols[a].set(m);
        }
    }
    let set = vc_search(&cols, sets.len(), cap);
    let realizers = realizers(sets, &set);
    ShatterWitness::Vc { dimension: set.len(), saturated: set.len() == cap, set, realizers }
}

/// VC dimension of the neighborhood family `{N(v)}` of a graph.
pub fn vc_dimension(g: &Graph, cap: usize) -> ShatterWitness {
    let sets: Vec<Bits> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
    vc_dimension_sets(g.n(), &sets, cap)
}

/// Slicegraph at `x`: the graph on `V` with edges `{yz : xyz ∈ E}`.
pub fn slicegraph(h: &Hypergraph3, x: usize) -> Result<Graph> {
    if x >= h.n() {
        return structural(format!("vertex {x} not in the 3-graph"));
    }
    let edges = h.edges().iter().filter_map(|e| match e.iter().position(|&v| v == x) {
        Some(0) => Some((e[1], e[2])),
        Some(1) => Some((e[0], e[2])),
        Some(_) => Some((e[0], e[1])),
        None => None,
    });
    Graph::from_edges(h.n(), edges.collect::<Vec<_>>())?.with_labels(h.labels().to_vec())
}

/// Slicewise VC: the maximum VC dimension over all slicegraphs, with the first maximizing pivot.
pub fn svc(h: &Hypergraph3, cap: usize) -> ShatterWitness {
    let per = par::map_range(h.n(), |x| vc_dimension(&slicegraph(h, x).expect("pivot in range"), cap));
    let mut best: Option<(usize, ShatterWitness)> = None;
    for (x, w) in per.into_iter().enumerate() {
        if best.as_ref().is_none_or(|(_, b)| w.dimension() > b.dimension()) {
            best = Some((x, w));
        }
    }
    match best {
        Some((x, ShatterWitness::Vc { dimension, saturated, set, realizers })) => {
            ShatterWitness::Svc { dimension, saturated, pivot: Some(x), set, realizers }
        }
        _ => ShatterWitness::Svc { dimension: 0, saturated: cap == 0, pivot: None, set: vec![], realizers: vec![] },
    }
}

struct Vc2Search<'a> {
    h: &'a Hypergraph3,
    cap: usize,
}

impl Vc2Search<'_> {
    /// Extends a grid with `k` a's and `k` (or `k − 1`) b's. The order of growth is
    /// a₁, b₁, a₂, b₂, …; adding a vertex adds its pairs with the opposite side.
    fn dfs(&self, a: &mut Vec<usize>, b: &mut Vec<usize>, classes: &[Bits], best: &mut (Vec<usize>, Vec<usize>)) {
        let k = b.len();
        if a.len() == k && k > best.0.len() {
            *best = (a.clone(), b.clone());
        }
        if best.0.len() == self.cap || (a.len() == k && k == self.cap) {
            return;
        }
        let n = self.h.n();
        // distinct a's (or b's) would give identical rows, so require strict increase
        let adding_a = a.len() == k;
        let lo = if adding_a { a.last() } else { b.last() }.map_or(0, |&v| v + 1);
        let need_classes = 1usize << ((k + usize::from(!adding_a)) * (a.len() + usize::from(adding_a)));
        if need_classes > n {
            return;
        }
        for v in lo..n {
            let mut cur = classes.to_vec();
            let others: Vec<usize> = if adding_a { b.clone() } else { a.clone() };
            let mut ok = true;
            for &o in &others {
                match split(&cur, self.h.fiber(v, o)) {
                    Some(next) => cur = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            if adding_a {
                a.push(v);
            } else {
                b.push(v);
            }
            self.dfs(a, b, &cur, best);
            if adding_a {
                a.pop();
            } else {
                b.pop();
            }
            if best.0.len() == self.cap {
                return;
            }
        }
    }
}

/// VC₂ dimension: the largest `k ≤ cap` with `a₁..a_k, b₁..b_k` and `c_S` for every
/// `S ⊆ [k]²` such that `a_i b_j c_S ∈ E` iff `(i, j) ∈ S`.
pub fn vc2_dimension(h: &Hypergraph3, cap: usize) -> ShatterWitness {
    let n = h.n();
    let search = Vc2Search { h, cap };
    let runs = par::map_range(n, |a1| {
        let mut best = (Vec::new(), Vec::new());
        if cap > 0 {
            search.dfs(&mut vec![a1], &mut Vec::new(), &[Bits::full(n)], &mut best);
        }
        best
    });
    let mut best = (Vec::new(), Vec::new());
    for r in runs {
        if r.0.len() > best.0.len() {
            best = r;
        }
    }
    let (a, b) = best;
    let k = a.len();
    let c = (0..1usize << (k * k))
        .map(|mask| {
            (0..n)
                .find(|&z| (0..k).all(|i| (0..k).all(|j| h.contains(a[i], b[j], z) == (mask >> (i * k + j) & 1 == 1))))
                .expect("grid realizes every pattern")
        })
        .collect();
    ShatterWitness::Vc2 { dimension: k, saturated: k == cap, a, b, c }
}

/// Re-checks a witness by direct membership tests.
pub fn verify_vc2(h: &Hypergraph3, w: &ShatterWitness) -> bool {
    match w {
        ShatterWitness::Vc2 { dimension: k, a, b, c, .. } => {
            a.len() == *k
                && b.len() == *k
                && c.len() == 1 << (k * k)
                && c.iter().enumerate().all(|(mask, &z)| {
                    (0..*k).all(|i| (0..*k).all(|j| h.contains(a[i], b[j], z) == (mask >> (i * k + j) & 1 == 1)))
                })
        }
        _ => false,
    }
}

/// Re-checks a VC or SVC witness against a set family.
pub fn verify_vc(sets: &[Bits], w: &ShatterWitness) -> bool {
    let (set, realizers) = match w {
        ShatterWitness::Vc { set, realizers, .. } | ShatterWitness::Svc { set, realizers, .. } => (set, realizers),
        _ => return false,
    };
    realizers.len() == 1 << set.len()
        && realizers.iter().enumerate().all(|(mask, &m)| {
            m < sets.len() && set.iter().enumerate().all(|(i, &a)| sets[m].get(a) == (mask >> i & 1 == 1))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powerset_graph(k: usize) -> Graph {
        // a_i = i, b_S = k + S
        let edges = (0..1usize << k).flat_map(|s| (0..k).filter(move |&i| s >> i & 1 == 1).map(move |i| (i, k + s)));
        Graph::from_edges(k + (1 << k), edges.collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn edgeless_dimensions_are_zero() {
        assert_eq!(vc_dimension(&Graph::empty(5), 4).dimension(), 0);
        assert_eq!(vc2_dimension(&Hypergraph3::empty(6), 2).dimension(), 0);
        assert_eq!(svc(&Hypergraph3::empty(4), 3).dimension(), 0);
    }

    #[test]
    fn powerset_graph_shatters_its_base() {
        let g = powerset_graph(2);
        let w = vc_dimension(&g, 4);
        assert_eq!(w.dimension(), 2);
        let sets: Vec<Bits> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
        assert!(verify_vc(&sets, &w));
    }

    #[test]
    fn slice_of_single_triple() {
        let h = Hypergraph3::from_edges(4, [[0, 1, 2]]).unwrap();
        assert_eq!(slicegraph(&h, 0).unwrap().edges(), vec![(1, 2)]);
        assert_eq!(slicegraph(&h, 3).unwrap().edge_count(), 0);
        assert!(slicegraph(&h, 4).is_err());
    }

    #[test]
    fn single_edge_has_vc2_one() {
        let h = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        let w = vc2_dimension(&h, 2);
        assert_eq!(w.dimension(), 1);
        assert!(verify_vc2(&h, &w));
    }

    #[test]
    fn grid_configuration_gives_vc2_two() {
        // a = {0,1}, b = {2,3}, c_S = 4 + S with a_i b_j c_S ∈ E iff (i,j) ∈ S
        let mut edges = Vec::new();
        for s in 0..16usize {
            for i in 0..2 {
                for j in 0..2 {
                    if s >> (i * 2 + j) & 1 == 1 {
                        edges.push([i, 2 + j, 4 + s]);
                    }
                }
            }
        }
        let h = Hypergraph3::from_edges(20, edges).unwrap();
        let w = vc2_dimension(&h, 2);
        assert_eq!(w.dimension(), 2);
        assert!(w.saturated());
        assert!(verify_vc2(&h, &w));
    }
}
