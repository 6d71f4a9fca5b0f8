//! Weak one-sided regularity: link bigraphs of tripartite 3-graphs, witness-based audits of
//! ⟨δ⟩-regular decompositions, and a decomposer for 3-graphs whose edges are the triangles of
//! a tripartite graph.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::bound::{eval_bound, BoundExpr, BoundValue, DEFAULT_DIGIT_CAP};
use crate::error::{capacity, precondition, structural, Error, Result};
use crate::graphreg::{szemeredi_partition, PartitionStatus};
use crate::hyperreg::Decomposition;
use crate::par;
use crate::quasi::{delta_regular_bigraph, dev2, rat, rat_of, RegularityMode};
use crate::structures::{lift_graph, position_map, Bigraph, Graph, Hypergraph3, Triad, Trigraph, VertexPartition};

/// For pivot `i`, the two remaining sides in increasing order.
const OTHERS: [(usize, usize); 3] = [(1, 2), (0, 2), (0, 1)];

/// Tripartite view of `h`; every edge must meet each of the three disjoint parts once.
pub fn tripartite(h: &Hypergraph3, parts: [Vec<usize>; 3]) -> Result<Trigraph> {
    let mut side = vec![usize::MAX; h.n()];
    for (s, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= h.n() {
                return structural(format!("part vertex {v} outside the 3-graph"));
            }
            if side[v] != usize::MAX {
                return precondition(format!("vertex {v} lies in two parts"));
            }
            side[v] = s;
        }
    }
    for e in h.edges() {
        let mut seen = [false; 3];
        for &v in e {
            if side[v] == usize::MAX || seen[side[v]] {
                return precondition(format!("edge {e:?} does not meet all three parts"));
            }
            seen[side[v]] = true;
        }
    }
    Trigraph::from_hypergraph(h, parts)
}

/// `G_H^{i}`: left side `V_i`, right side `V_{i₂} × V_{i₃}` (`i₂ < i₃`), with `(u, (v, w))`
/// present iff the triple is an edge.
#[derive(Clone, Debug)]
pub struct LinkBigraph {
    pub pivot: usize,
    /// Composite right vertex `k` is the pair `right[k]`, row-major over the two sides.
    pub right: Vec<(usize, usize)>,
    /// Right ids are composite indices `0..right.len()`.
    pub bigraph: Bigraph,
}

impl LinkBigraph {
    pub fn left(&self) -> &[usize] {
        self.bigraph.left()
    }

    pub fn pair_count(&self) -> u64 {
        self.bigraph.edge_count()
    }
}

/// Triple positions `[x, y, z]` mapped to (row, composite column) of the pivot's link.
fn link_coords(pivot: usize, pos: [usize; 3], sizes: [usize; 3]) -> (usize, usize) {
    let (q, r) = OTHERS[pivot];
    (pos[pivot], pos[q] * sizes[r] + pos[r])
}

fn sizes_of(h: &Trigraph) -> [usize; 3] {
    let (a, b, c) = h.sizes();
    [a, b, c]
}

fn link_rows(h: &Trigraph, pivot: usize) -> Vec<Bits> {
    let s = sizes_of(h);
    let (q, r) = OTHERS[pivot];
    let mut rows = vec![Bits::new(s[q] * s[r]); s[pivot]];
    for i in 0..s[0] {
        for j in 0..s[1] {
            for k in h.fiber(i, j).ones() {
                let (row, col) = link_coords(pivot, [i, j, k], s);
                rows[row].set(col);
            }
        }
    }
    rows
}

pub fn link_bigraph(h: &Trigraph, pivot: usize) -> Result<LinkBigraph> {
    if pivot > 2 {
        return precondition(format!("pivot {pivot} is not a side index"));
    }
    let parts = h.parts();
    let (q, r) = OTHERS[pivot];
    let right: Vec<(usize, usize)> = parts[q].iter().flat_map(|&v| parts[r].iter().map(move |&w| (v, w))).collect();
    let ids: Vec<usize> = (0..right.len()).collect();
    let bigraph = Bigraph::from_rows(parts[pivot].clone(), ids, link_rows(h, pivot))?;
    Ok(LinkBigraph { pivot, right, bigraph })
}

// ---------------------------------------------------------------------------
// triangle-generated inputs

fn certificate(h: &Trigraph, i: usize, j: usize, k: usize, extra: bool) -> Error {
    let p = h.parts();
    let (x, y, z) = (p[0][i], p[1][j], p[2][k]);
    if extra {
        Error::Precondition(format!("not triangle-generated: ({x},{y},{z}) closes a triangle but is not an edge"))
    } else {
        Error::Precondition(format!("not triangle-generated: edge ({x},{y},{z}) is not a triangle"))
    }
}

/// Checks that the edges of `h` are exactly the triangles of `g`.
pub fn check_triangle_generated(h: &Trigraph, g: &Triad) -> Result<()> {
    if g.parts() != h.parts() {
        return precondition("the triad and the 3-graph have different parts");
    }
    let (a, b, _) = h.sizes();
    for i in 0..a {
        for j in 0..b {
            let k3 = g.k3_fiber(i, j);
            let f = h.fiber(i, j);
            if let Some(k) = k3.and_not(f).ones().next() {
                return Err(certificate(h, i, j, k, true));
            }
            if let Some(k) = f.and_not(&k3).ones().next() {
                return Err(certificate(h, i, j, k, false));
            }
        }
    }
    Ok(())
}

/// The smallest triad whose triangles could generate `h` (pairs covered by some edge), verified
/// to generate exactly `h`.
pub fn detect_triad(h: &Trigraph) -> Result<Triad> {
    let [a, b, c] = sizes_of(h);
    let mut xy = vec![Bits::new(b); a];
    let mut xz = vec![Bits::new(c); a];
    let mut yz = vec![Bits::new(c); b];
    for i in 0..a {
        for j in 0..b {
            let f = h.fiber(i, j);
            if !f.is_empty() {
                xy[i].set(j);
                xz[i].or_assign(f);
                yz[j].or_assign(f);
            }
        }
    }
    let p = h.parts();
    let g = Triad::new(
        Bigraph::from_rows(p[0].clone(), p[1].clone(), xy)?,
        Bigraph::from_rows(p[0].clone(), p[2].clone(), xz)?,
        Bigraph::from_rows(p[1].clone(), p[2].clone(), yz)?,
    )?;
    check_triangle_generated(h, &g)?;
    Ok(g)
}

/// `G₀` as a simple graph on `0..n`.
fn triad_graph(g: &Triad, n: usize) -> Result<Graph> {
    let edges = [g.xy(), g.xz(), g.yz()].into_iter().flat_map(|b| b.pairs());
    Graph::from_edges(n, edges)
}

// ---------------------------------------------------------------------------
// audit

/// Subset-pair search for the ⟨δ⟩ checks: exhaustive when one side has at most `exact_cap`
/// vertices and the other at most `exact_other_cap`, sampled otherwise.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DeltaCheck {
    pub exact_cap: usize,
    pub exact_other_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for DeltaCheck {
    fn default() -> Self {
        DeltaCheck { exact_cap: 8, exact_other_cap: 2048, samples: 256, seed: 0 }
    }
}

impl DeltaCheck {
    fn verdict(&self, b: &Bigraph, delta: f64, salt: u64) -> Result<(bool, bool, Option<(Vec<usize>, Vec<usize>)>)> {
        let (nx, ny) = (b.left().len(), b.right().len());
        let mode = if nx.min(ny) <= self.exact_cap && nx.max(ny) <= self.exact_other_cap {
            RegularityMode::Exact { cap: self.exact_cap }
        } else {
            RegularityMode::Sampled { samples: self.samples, seed: self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15) }
        };
        let v = delta_regular_bigraph(b, delta, mode)?;
        Ok((v.holds, v.probabilistic, v.witness))
    }
}

/// Modified link edge set `E′` for one pivot, given as edits to `F`. Triples are `(x, y, z)`
/// with one vertex from each side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaWitness {
    pub pivot: usize,
    pub removed: Vec<[usize; 3]>,
    #[serde(default)]
    pub added: Vec<[usize; 3]>,
    /// `|E Δ E′|`.
    pub sym_diff: u64,
    /// `|E|`.
    pub edges: u64,
    /// `|E Δ E′| ≤ δ|E|`, decided exactly.
    pub within_budget: bool,
    /// Part-pair verdicts under `E′`, filled in by the decomposer's own audit.
    #[serde(default)]
    pub verdicts: Vec<PairVerdict>,
}

/// Link pair `(A, P^α_{BC})` of the induced partition: `left` is a vertex-part index, `right`
/// is `[b, c, α]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub left: usize,
    pub right: [usize; 3],
    pub edges: u64,
    pub holds: bool,
    pub probabilistic: bool,
    /// A sub-pair below half density, right side as vertex pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Vec<usize>, Vec<(usize, usize)>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellVerdict {
    /// `[i, j, α]`.
    pub cell: [usize; 3],
    pub holds: bool,
    pub probabilistic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PivotAudit {
    pub pivot: usize,
    /// `|P₁^{i}|`: vertex parts on the pivot side plus cells over the other two sides.
    pub induced_parts: usize,
    /// `t + t²ℓ` with `t` the largest per-side part count.
    pub induced_bound: usize,
    pub edges: u64,
    pub sym_diff: u64,
    pub within_budget: bool,
    pub pairs_checked: usize,
    pub pairs: Vec<PairVerdict>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaAudit {
    pub delta: f64,
    /// Every cell of the decomposition is a ⟨δ⟩-regular bigraph.
    pub good: bool,
    pub cells_checked: usize,
    pub cell_failures: Vec<CellVerdict>,
    pub pivots: Vec<PivotAudit>,
    /// `None` when no witnesses were supplied.
    pub regular: Option<bool>,
    /// Some verdict rests on sampling.
    pub probabilistic: bool,
}

impl DeltaAudit {
    pub fn passes(&self) -> bool {
        self.good && self.regular == Some(true)
    }
}

/// Side index of every vertex; the three parts must partition `0..n`.
fn sides(h: &Trigraph) -> Result<Vec<usize>> {
    let n: usize = h.parts().iter().map(Vec::len).sum();
    let mut side = vec![usize::MAX; n];
    for (s, part) in h.parts().iter().enumerate() {
        for &v in part {
            if v >= n || side[v] != usize::MAX {
                return precondition("the three parts must partition the vertex ids 0..n");
            }
            side[v] = s;
        }
    }
    Ok(side)
}

/// Side of each vertex part; fails unless `p` refines the tripartition.
fn part_sides(p: &VertexPartition, side: &[usize]) -> Result<Vec<usize>> {
    if p.n() != side.len() {
        return structural(format!("partition covers {} vertices, the 3-graph has {}", p.n(), side.len()));
    }
    p.parts()
        .iter()
        .enumerate()
        .map(|(a, part)| {
            let s = side[part[0]];
            if part.iter().any(|&v| side[v] != s) {
                precondition(format!("vertex part {a} meets two sides"))
            } else {
                Ok(s)
            }
        })
        .collect()
}

/// Link rows of `E′ = (E ∖ removed) ∪ added`.
fn witness_rows(h: &Trigraph, w: &DeltaWitness) -> Result<Vec<Bits>> {
    let mut rows = link_rows(h, w.pivot);
    let s = sizes_of(h);
    let maps: Vec<HashMap<usize, usize>> = h.parts().iter().map(|p| position_map(p)).collect();
    let pos = |t: &[usize; 3]| -> Result<[usize; 3]> {
        match (maps[0].get(&t[0]), maps[1].get(&t[1]), maps[2].get(&t[2])) {
            (Some(&i), Some(&j), Some(&k)) => Ok([i, j, k]),
            _ => structural(format!("witness triple {t:?} is not in X × Y × Z")),
        }
    };
    let mut seen = HashSet::new();
    for t in &w.removed {
        let p = pos(t)?;
        if !h.has(p[0], p[1], p[2]) || !seen.insert(*t) {
            return structural(format!("witness removes {t:?}, which is not an edge or is repeated"));
        }
        let (r, c) = link_coords(w.pivot, p, s);
        rows[r].unset(c);
    }
    for t in &w.added {
        let p = pos(t)?;
        if h.has(p[0], p[1], p[2]) || !seen.insert(*t) {
            return structural(format!("witness adds {t:?}, which is already an edge or is repeated"));
        }
        let (r, c) = link_coords(w.pivot, p, s);
        rows[r].set(c);
    }
    Ok(rows)
}

fn budget_holds(sym_diff: u64, edges: u64, delta: f64) -> bool {
    rat(sym_diff, 1u64) <= rat_of(delta) * rat(edges, 1u64)
}

fn audit_pivot(
    h: &Trigraph,
    p: &Decomposition,
    psides: &[usize],
    delta: f64,
    w: &DeltaWitness,
    check: &DeltaCheck,
) -> Result<PivotAudit> {
    let rows = witness_rows(h, w)?;
    let s = sizes_of(h);
    let (q, r) = OTHERS[w.pivot];
    let maps: Vec<HashMap<usize, usize>> = h.parts().iter().map(|p| position_map(p)).collect();
    let vp = p.partition();
    let on = |side: usize| -> Vec<usize> { (0..vp.len()).filter(|&a| psides[a] == side).collect() };
    let (lefts, bs, cs) = (on(w.pivot), on(q), on(r));
    // composite columns of every cell over V_q × V_r
    let mut cells: Vec<([usize; 3], Vec<usize>)> = Vec::new();
    for &b in &bs {
        for &c in &cs {
            let (vb, vc) = (vp.part(b), vp.part(c));
            let table = p.cell_table(b, c);
            let mut cols = vec![Vec::new(); p.cell_count(b, c)];
            for (x, &v) in vb.iter().enumerate() {
                for (y, &u) in vc.iter().enumerate() {
                    cols[table[x * vc.len() + y] as usize].push(maps[q][&v] * s[r] + maps[r][&u]);
                }
            }
            for (alpha, col) in cols.into_iter().enumerate() {
                if !col.is_empty() {
                    cells.push(([b, c, alpha], col));
                }
            }
        }
    }
    let jobs: Vec<(usize, usize)> = lefts.iter().flat_map(|&a| (0..cells.len()).map(move |k| (a, k))).collect();
    let right_of = |col: usize| {
        let parts = h.parts();
        (parts[q][col / s[r]], parts[r][col % s[r]])
    };
    let verdicts = par::map_slice(&jobs, |&(a, k)| -> Result<PairVerdict> {
        let (cell, cols) = &cells[k];
        let left = vp.part(a).to_vec();
        let sub: Vec<Bits> = left.iter().map(|v| rows[maps[w.pivot][v]].gather(cols)).collect();
        let b = Bigraph::from_rows(left, cols.clone(), sub)?;
        let edges = b.edge_count();
        let salt = ((w.pivot * vp.len() + a) * cells.len() + k) as u64;
        let (holds, probabilistic, witness) = check.verdict(&b, delta, salt)?;
        let witness = witness.filter(|_| !holds).map(|(xs, ys)| (xs, ys.into_iter().map(right_of).collect()));
        Ok(PairVerdict { left: a, right: *cell, edges, holds, probabilistic, witness })
    });
    let pairs: Vec<PairVerdict> = verdicts.into_iter().collect::<Result<_>>()?;
    let sym_diff = (w.removed.len() + w.added.len()) as u64;
    let edges = h.triple_count();
    let within_budget = budget_holds(sym_diff, edges, delta);
    let t = [0, 1, 2].map(|side| on(side).len()).into_iter().max().unwrap_or(0);
    let induced_parts = lefts.len() + cells.len();
    let induced_bound = t + t * t * p.ell();
    let holds = within_budget && pairs.iter().all(|v| v.holds) && induced_parts <= induced_bound;
    Ok(PivotAudit {
        pivot: w.pivot,
        induced_parts,
        induced_bound,
        edges,
        sym_diff,
        within_budget,
        pairs_checked: pairs.len(),
        pairs,
        holds,
    })
}

/// Checks that every cell of `p` is ⟨δ⟩-regular and, per supplied witness, that the induced
/// partition of the pivot's link bigraph is ⟨δ⟩-regular under the witness edge set.
pub fn delta_audit(
    h: &Trigraph,
    p: &Decomposition,
    delta: f64,
    witnesses: Option<&[DeltaWitness]>,
    check: &DeltaCheck,
) -> Result<DeltaAudit> {
    if !(delta > 0.0 && delta < 1.0) {
        return precondition(format!("δ = {delta} outside (0, 1)"));
    }
    let side = sides(h)?;
    let psides = part_sides(p.partition(), &side)?;
    let t = p.t();
    let cell_jobs: Vec<[usize; 3]> =
        (0..t * t).flat_map(|idx| (0..p.cell_count(idx / t, idx % t)).map(move |a| [idx / t, idx % t, a])).collect();
    let verdicts = par::map_slice(&cell_jobs, |&[i, j, a]| -> Result<CellVerdict> {
        let b = p.cell_bigraph(i, j, a);
        let (holds, probabilistic, witness) = check.verdict(&b, delta, ((i * t + j) * p.ell() + a) as u64 + (1 << 40))?;
        Ok(CellVerdict { cell: [i, j, a], holds, probabilistic, witness: witness.filter(|_| !holds) })
    });
    let verdicts: Vec<CellVerdict> = verdicts.into_iter().collect::<Result<_>>()?;
    let mut probabilistic = verdicts.iter().any(|v| v.probabilistic);
    let cell_failures: Vec<CellVerdict> = verdicts.iter().filter(|v| !v.holds).cloned().collect();
    let good = cell_failures.is_empty();
    let (pivots, regular) = match witnesses {
        None => (Vec::new(), None),
        Some(ws) => {
            let mut out = Vec::new();
            for pivot in 0..3 {
                let w = match ws.iter().find(|w| w.pivot == pivot) {
                    Some(w) => w,
                    None => return precondition(format!("no witness for pivot {pivot}")),
                };
                out.push(audit_pivot(h, p, &psides, delta, w, check)?);
            }
            probabilistic |= out.iter().flat_map(|a| &a.pairs).any(|v| v.probabilistic);
            let ok = out.iter().all(|a| a.holds);
            (out, Some(ok))
        }
    };
    Ok(DeltaAudit { delta, good, cells_checked: verdicts.len(), cell_failures, pivots, regular, probabilistic })
}

// ---------------------------------------------------------------------------
// decomposer

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaOptions {
    /// Replaces `ρ¹⁰⁰δ¹⁰⁰/C`, which is far too small to run.
    pub eps_override: Option<f64>,
    /// Largest admissible `|V₀|`.
    pub v0_cap: BoundExpr,
    pub check: DeltaCheck,
    pub digit_cap: u64,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        DeltaOptions {
            eps_override: None,
            v0_cap: BoundExpr::pow(BoundExpr::int(3u32), BoundExpr::int(200u32)),
            check: DeltaCheck::default(),
            digit_cap: DEFAULT_DIGIT_CAP,
        }
    }
}

/// Ordered pairs of vertex parts on different sides, by reason for exclusion. A pair may count
/// under several reasons.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BadPairs {
    pub irregular: usize,
    pub sparse: usize,
    pub undersized: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaReport {
    pub delta: f64,
    pub rho: f64,
    pub rho_exact: String,
    /// `|V₀|`.
    pub v0_parts: usize,
    /// `log₁₀(ρ¹⁰⁰δ¹⁰⁰/C)`.
    pub literal_eps_log10: f64,
    pub eps: f64,
    pub literal_eps_used: bool,
    /// The graph partition `Q` at regularity `ε²`.
    pub q_parts: usize,
    pub q_status: PartitionStatus,
    pub q_rounds: usize,
    pub p1_parts: usize,
    /// `|V₀| · |Q|`.
    pub structural_bound: usize,
    pub bad_pairs: BadPairs,
    /// Edges of `G₀` inside bad pairs.
    pub err_edges: u64,
    /// `(9ε² + 3δρ + √ε) m²` with `m` the largest side.
    pub err_edges_bound: f64,
    /// Triples dropped from every link.
    pub deleted: u64,
    /// `Σ |X||Y||third side|` over unordered bad pairs; the deletion count never exceeds it.
    pub deletion_bound: u64,
    /// `δ|E|`.
    pub budget: f64,
    /// `3(9ε² + 3δρ) < δρ`, the closing inequality of the counting argument.
    pub counting_closes: bool,
    pub symbolic_bound: String,
    pub symbolic_value: BoundValue,
    pub within_symbolic_bound: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaDecomposition {
    pub decomposition: Decomposition,
    pub witnesses: Vec<DeltaWitness>,
    pub report: DeltaReport,
    pub audit: DeltaAudit,
}

/// Nonempty intersections `X ∩ Y`, ordered by first vertex.
fn meet(p: &VertexPartition, q: &VertexPartition) -> Result<VertexPartition> {
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for v in 0..p.n() {
        groups.entry((p.part_of(v), q.part_of(v))).or_default().push(v);
    }
    let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
    parts.sort_by_key(|part| part[0]);
    VertexPartition::new(p.n(), parts)
}

fn tower_bound(v0_cap: &BoundExpr, delta: f64, rho: f64) -> BoundExpr {
    let base = (1.0 / (delta * rho) - 1e-9).ceil().max(1.0) as u64;
    BoundExpr::mul(
        v0_cap.clone(),
        BoundExpr::tower(BoundExpr::int(3u32), BoundExpr::pow(BoundExpr::int(base), BoundExpr::int(1000u32))),
    )
}

/// Builds a decomposition with `P₁ ⪯ V₀` that is ⟨δ⟩-regular for `h`, plus one edge-deletion
/// witness per pivot, when the edges of `h` are the triangles of a triad `g0` (detected from
/// `h` when not given). The result carries its own audit.
pub fn delta_decompose(
    h: &Trigraph,
    g0: Option<&Triad>,
    delta: f64,
    v0: Option<&VertexPartition>,
    opts: &DeltaOptions,
) -> Result<DeltaDecomposition> {
    if !(delta > 0.0 && delta < 0.125) {
        return precondition(format!("δ = {delta} outside (0, 1/8)"));
    }
    let side = sides(h)?;
    let n = side.len();
    let g = match g0 {
        Some(g) => {
            check_triangle_generated(h, g)?;
            g.clone()
        }
        None => detect_triad(h)?,
    };
    let s = sizes_of(h);
    let edges = h.triple_count();
    let volume = (s[0] * s[1] * s[2]) as u64;
    if edges == 0 {
        return precondition("ρ = 0: the 3-graph has no edges");
    }
    let rho_exact = rat(edges, volume);
    let rho = rho_exact.to_f64().unwrap_or(0.0);
    let tri = VertexPartition::new(n, h.parts().to_vec())?;
    let v0 = match v0 {
        Some(v) => {
            if v.n() != n {
                return structural("V₀ does not cover the vertex set");
            }
            if !v.refines(&tri) {
                return precondition("V₀ must refine the three sides");
            }
            v.clone()
        }
        None => tri.clone(),
    };
    let c = v0.len();
    if !eval_bound(&opts.v0_cap, opts.digit_cap)?.at_least(&BigUint::from(c)) {
        return precondition(format!("|V₀| = {c} exceeds the admissible size {}", opts.v0_cap));
    }
    let literal_eps_log10 = 100.0 * rho.log10() + 100.0 * delta.log10() - (c as f64).log10();
    let eps = match opts.eps_override {
        Some(e) if e > 0.0 && e < 1.0 => e,
        Some(e) => return precondition(format!("ε override {e} outside (0, 1)")),
        None => {
            let e = 10f64.powf(literal_eps_log10);
            if e < 1e-3 {
                return capacity(format!("literal ε = 10^{literal_eps_log10:.1} is too small to run; supply an override"));
            }
            e
        }
    };

    // Q: ε²-regular partition of G₀, cut back to the sides.
    let graph = triad_graph(&g, n)?;
    let (q, ledger) = szemeredi_partition(&graph, eps * eps, &tri, None)?;
    let q = if q.refines(&tri) { q } else { meet(&q, &tri)? };
    let p1 = meet(&q, &v0)?;
    let t = p1.len();
    let qpar = p1.parent_map(&q).expect("meet refines Q");
    let psides = part_sides(&p1, &side)?;

    // bad pairs among parts on different sides; symmetric, so decided on a < b
    let lifted = lift_graph(&graph);
    let qn = q.len();
    let q_flags = par::map_range(qn * qn, |idx| {
        let (a, b) = (idx / qn, idx % qn);
        if a >= b {
            return (false, false);
        }
        let sub = lifted.restrict(q.part(a), q.part(b));
        let e = sub.edge_count();
        let irregular = e > 0 && !dev2(&sub, None).passes(eps * eps);
        let sparse = rat(e, (q.part(a).len() * q.part(b).len()) as u64) < rat_of(delta) * &rho_exact;
        (irregular, sparse)
    });
    let qflag = |a: usize, b: usize| q_flags[a.min(b) * qn + a.max(b)];
    let small = |a: usize| p1.part(a).len() as f64 <= eps.sqrt() * q.part(qpar[a]).len() as f64 / c as f64;
    let mut bad = vec![false; t * t];
    let mut counts = BadPairs::default();
    let mut err_edges = 0u64;
    let mut deletion_bound = 0u64;
    for a in 0..t {
        for b in 0..t {
            if psides[a] == psides[b] {
                continue;
            }
            let (irr, sparse) = qflag(qpar[a], qpar[b]);
            let under = small(a) || small(b);
            counts.irregular += usize::from(irr);
            counts.sparse += usize::from(sparse);
            counts.undersized += usize::from(under);
            if irr || sparse || under {
                counts.total += 1;
                bad[a * t + b] = true;
                if a < b {
                    err_edges += p1.part(a).iter().map(|&x| graph.neighbors(x).gather(p1.part(b)).count()).sum::<u64>();
                    let third = s[3 - psides[a] - psides[b]];
                    deletion_bound += (p1.part(a).len() * p1.part(b).len() * third) as u64;
                }
            }
        }
    }

    // cells: label 1 = pairs of G₀ on a good pair, 0 = everything else
    let cells: Vec<Vec<u32>> = par::map_range(t * t, |idx| {
        let (a, b) = (idx / t, idx % t);
        let split = psides[a] != psides[b] && !bad[idx];
        let mut c = Vec::with_capacity(p1.part(a).len() * p1.part(b).len());
        for &x in p1.part(a) {
            for &y in p1.part(b) {
                c.push(u32::from(split && graph.has_edge(x, y)));
            }
        }
        c
    });
    let decomposition = Decomposition::new(p1.clone(), 2, cells)?;

    // E′ drops every triple whose part triple contains a bad pair
    let parts = h.parts();
    let mut removed = Vec::new();
    for (x, y, z) in h.triples() {
        let (a, b, cc) = (p1.part_of(x), p1.part_of(y), p1.part_of(z));
        if bad[a * t + b] || bad[a * t + cc] || bad[b * t + cc] {
            removed.push([x, y, z]);
        }
    }
    debug_assert!(parts.iter().all(|p| !p.is_empty()) || removed.is_empty());
    let deleted = removed.len() as u64;
    let within_budget = budget_holds(deleted, edges, delta);
    if !within_budget {
        return Err(Error::Infeasible(format!(
            "deleting {deleted} of {edges} triples exceeds δ|E| = {:.1} (ρ = {rho:.4}, ε = {eps})",
            delta * edges as f64
        )));
    }
    let mut witnesses: Vec<DeltaWitness> = (0..3)
        .map(|pivot| DeltaWitness {
            pivot,
            removed: removed.clone(),
            added: Vec::new(),
            sym_diff: deleted,
            edges,
            within_budget,
            verdicts: Vec::new(),
        })
        .collect();
    let audit = delta_audit(h, &decomposition, delta, Some(&witnesses), &opts.check)?;
    for (w, a) in witnesses.iter_mut().zip(&audit.pivots) {
        w.verdicts = a.pairs.clone();
    }

    let m = *s.iter().max().expect("three sides") as f64;
    let symbolic = tower_bound(&opts.v0_cap, delta, rho);
    let symbolic_value = eval_bound(&symbolic, opts.digit_cap)?;
    let report = DeltaReport {
        delta,
        rho,
        rho_exact: rho_exact.to_string(),
        v0_parts: c,
        literal_eps_log10,
        eps,
        literal_eps_used: opts.eps_override.is_none(),
        q_parts: q.len(),
        q_status: ledger.status,
        q_rounds: ledger.refinements(),
        p1_parts: t,
        structural_bound: c * q.len(),
        bad_pairs: counts,
        err_edges,
        err_edges_bound: (9.0 * eps * eps + 3.0 * delta * rho + eps.sqrt()) * m * m,
        deleted,
        deletion_bound,
        budget: delta * edges as f64,
        counting_closes: 3.0 * (9.0 * eps * eps + 3.0 * delta * rho) < delta * rho,
        symbolic_bound: symbolic.to_string(),
        within_symbolic_bound: symbolic_value.at_least(&BigUint::from(t)),
        symbolic_value,
    };
    Ok(DeltaDecomposition { decomposition, witnesses, report, audit })
}

/// The `K₃(G₀)` trigraph.
pub fn triangle_trigraph(g: &Triad) -> Trigraph {
    let (a, b, _) = g.sizes();
    let triples: Vec<(usize, usize, usize)> =
        (0..a).flat_map(|i| (0..b).flat_map(move |j| g.k3_fiber(i, j).ones().map(move |k| (i, j, k)).collect::<Vec<_>>())).collect();
    Trigraph::from_positions(g.parts().clone(), triples).expect("positions inside the parts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{disjoint_parts, random_triad};

    fn complete_instance(m: usize) -> (Triad, Trigraph) {
        let g = Triad::complete(disjoint_parts([m, m, m]));
        let h = triangle_trigraph(&g);
        (g, h)
    }

    #[test]
    fn link_of_one_triple() {
        let parts = disjoint_parts([2, 2, 2]);
        let h = Trigraph::from_triples(parts, [(1, 2, 5)]).unwrap();
        for pivot in 0..3 {
            let l = link_bigraph(&h, pivot).unwrap();
            assert_eq!(l.pair_count(), 1);
            let (row, col) = l.bigraph.pairs()[0];
            let want = [(1, (2, 5)), (2, (1, 5)), (5, (1, 2))][pivot];
            assert_eq!((row, l.right[col]), want);
        }
    }

    #[test]
    fn link_counts_match_edges() {
        let g = random_triad([5, 6, 4], 0.6, 3).unwrap();
        let h = triangle_trigraph(&g);
        for pivot in 0..3 {
            assert_eq!(link_bigraph(&h, pivot).unwrap().pair_count(), h.triple_count());
        }
    }

    #[test]
    fn tripartite_rejects_inner_edges() {
        let h = Hypergraph3::from_edges(6, [[0, 1, 2], [0, 2, 4]]).unwrap();
        assert!(tripartite(&h, disjoint_parts([2, 2, 2])).is_err());
        let ok = Hypergraph3::from_edges(6, [[0, 2, 4], [1, 3, 5]]).unwrap();
        assert_eq!(tripartite(&ok, disjoint_parts([2, 2, 2])).unwrap().triple_count(), 2);
    }

    #[test]
    fn detection_and_certificates() {
        let g = random_triad([4, 4, 4], 0.7, 9).unwrap();
        let h = triangle_trigraph(&g);
        let found = detect_triad(&h).unwrap();
        assert_eq!(triangle_trigraph(&found), h);
        // a 3-graph with all edges of K₃ except one triangle cannot be triangle-generated
        let (_, full) = complete_instance(2);
        let triples: Vec<_> = full.triples().into_iter().filter(|&t| t != (0, 2, 4)).collect();
        let bad = Trigraph::from_triples(disjoint_parts([2, 2, 2]), triples).unwrap();
        let err = detect_triad(&bad).unwrap_err();
        assert!(err.to_string().contains("(0,2,4)"), "{err}");
    }

    #[test]
    fn edgeless_passes_vacuously() {
        let parts = disjoint_parts([3, 3, 3]);
        let h = Trigraph::empty(parts.clone());
        let p = Decomposition::from_products(VertexPartition::new(9, parts.to_vec()).unwrap());
        let ws: Vec<DeltaWitness> = (0..3)
            .map(|pivot| DeltaWitness {
                pivot,
                removed: vec![],
                added: vec![],
                sym_diff: 0,
                edges: 0,
                within_budget: true,
                verdicts: vec![],
            })
            .collect();
        let a = delta_audit(&h, &p, 0.1, Some(&ws), &DeltaCheck::default()).unwrap();
        assert!(a.passes());
        assert_eq!(a.pivots[0].induced_parts, 1 + 1);
        let un = delta_audit(&h, &p, 0.1, None, &DeltaCheck::default()).unwrap();
        assert_eq!(un.regular, None);
    }

    #[test]
    fn complete_triad_needs_no_deletions() {
        let (g, h) = complete_instance(6);
        let out = delta_decompose(&h, Some(&g), 0.1, None, &DeltaOptions { eps_override: Some(0.05), ..Default::default() })
            .unwrap();
        assert_eq!(out.report.bad_pairs.total, 0);
        assert_eq!(out.report.deleted, 0);
        assert!(out.audit.passes());
        assert!(out.report.within_symbolic_bound);
    }

    #[test]
    fn random_instance_links_hold_and_cell_failures_are_genuine() {
        let g = random_triad([40, 40, 40], 0.7, 5).unwrap();
        let h = triangle_trigraph(&g);
        let opts = DeltaOptions { eps_override: Some(0.05), ..Default::default() };
        let out = delta_decompose(&h, None, 0.1, None, &opts).unwrap();
        assert_eq!(out.audit.regular, Some(true));
        assert!(out.report.p1_parts <= out.report.structural_bound);
        // small sampled sub-pairs of the sparser non-edge cells can dip below half density
        for f in &out.audit.cell_failures {
            let [i, j, a] = f.cell;
            let cell = out.decomposition.cell_bigraph(i, j, a);
            let (xs, ys) = f.witness.clone().unwrap();
            let lp = position_map(cell.left());
            let rp = position_map(cell.right());
            let xi: Vec<usize> = xs.iter().map(|v| lp[v]).collect();
            let yi: Vec<usize> = ys.iter().map(|v| rp[v]).collect();
            let sub = cell.restrict(&xi, &yi).edge_count() as f64 / (xi.len() * yi.len()) as f64;
            let full = cell.edge_count() as f64 / (cell.left().len() * cell.right().len()) as f64;
            assert!(sub < full / 2.0);
        }
        let again = delta_audit(&h, &out.decomposition, 0.1, Some(&out.witnesses), &opts.check).unwrap();
        assert_eq!(again.cell_failures, out.audit.cell_failures);
    }

    #[test]
    fn audit_flags_isolated_link_vertex() {
        // x0 is in no triple, so the link pair (X, Y × Z) has a zero-density sub-pair
        let parts = disjoint_parts([4, 2, 2]);
        let triples: Vec<_> = (1..4).flat_map(|x| [(x, 4, 6), (x, 5, 7)]).collect();
        let h = Trigraph::from_triples(parts.clone(), triples).unwrap();
        let p = Decomposition::from_products(VertexPartition::new(8, parts.to_vec()).unwrap());
        let ws: Vec<DeltaWitness> = (0..3)
            .map(|pivot| DeltaWitness {
                pivot,
                removed: vec![],
                added: vec![],
                sym_diff: 0,
                edges: 6,
                within_budget: true,
                verdicts: vec![],
            })
            .collect();
        let a = delta_audit(&h, &p, 0.25, Some(&ws), &DeltaCheck::default()).unwrap();
        assert_eq!(a.regular, Some(false));
        let fail = a.pivots[0].pairs.iter().find(|v| !v.holds).unwrap();
        assert_eq!(fail.witness.as_ref().unwrap().0, vec![0]);
    }

    #[test]
    fn literal_constant_is_refused() {
        let (g, h) = complete_instance(3);
        assert!(matches!(delta_decompose(&h, Some(&g), 0.1, None, &DeltaOptions::default()), Err(Error::Capacity(_))));
        assert!(delta_decompose(&h, Some(&g), 0.2, None, &DeltaOptions::default()).is_err());
    }
}
