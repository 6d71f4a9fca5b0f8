//! Generators: power-set graphs, dummy extensions, Bip/Trip, blowups, duplication gadgets,
//! seeded random models and the tripartite hard instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{capacity, precondition, structural, Error, Result};
use crate::io::Instance;
use crate::hyperreg::Decomposition;
use crate::structures::{Bigraph, Graph, Hypergraph3, Label, Triad, Trigraph, VertexPartition};

pub const MAX_POWERSET_K: usize = 16;

/// `U(k)`: vertices `a_1..a_k` (ids `0..k`) and `b_S` for `S ⊆ [k]` (id `k + S`), edges `a_i b_S` for `i ∈ S`.
pub fn power_set_graph(k: usize) -> Result<Graph> {
    if !(1..=MAX_POWERSET_K).contains(&k) {
        return capacity(format!("power-set graph needs 1 ≤ k ≤ {MAX_POWERSET_K}, got {k}"));
    }
    let edges: Vec<(usize, usize)> =
        (0..1usize << k).flat_map(|s| (0..k).filter(move |&i| s >> i & 1 == 1).map(move |i| (i, k + s))).collect();
    let mut labels: Vec<Label> = (1..=k).map(|i| Label::name(format!("a{i}"))).collect();
    for s in 0..1usize << k {
        let members: Vec<String> = (0..k).filter(|&i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        labels.push(Label::name(format!("b{{{}}}", members.join(","))));
    }
    Graph::from_edges(k + (1 << k), edges)?.with_labels(labels)
}

fn tagged(prefix: &str, l: &Label) -> Label {
    Label::name(format!("{prefix}{l}"))
}

/// `n ⊗ G`: `n` fresh dummy vertices `C` (ids after `V(G)`), triples `xyz` for `xy ∈ E(G)`, `z ∈ C`.
pub fn dummy_extend(g: &Graph, n: usize) -> Result<Hypergraph3> {
    if n == 0 {
        return precondition("dummy extension needs at least one dummy vertex");
    }
    let base = g.n();
    let edges: Vec<[usize; 3]> = g.edges().into_iter().flat_map(|(x, y)| (0..n).map(move |c| [x, y, base + c])).collect();
    let mut labels = g.labels().to_vec();
    labels.extend((0..n).map(|c| Label::name(format!("c{c}"))));
    Hypergraph3::from_edges(base + n, edges)?.with_labels(labels)
}

/// `Bip(G)`: `a_v = v`, `b_v = |V| + v`; each edge `vv′` gives both `a_v b_v′` and `a_v′ b_v`.
pub fn bip(g: &Graph) -> Graph {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().into_iter().flat_map(|(u, v)| [(u, n + v), (v, n + u)]).collect();
    let mut labels: Vec<Label> = g.labels().iter().map(|l| tagged("a:", l)).collect();
    labels.extend(g.labels().iter().map(|l| tagged("b:", l)));
    Graph::from_edges(2 * n, edges).and_then(|b| b.with_labels(labels)).expect("Bip of a valid graph")
}

/// `Trip(H)`: `a_v, b_v, c_v` at `v, |V| + v, 2|V| + v`; each edge gives one triple per ordering.
pub fn trip(h: &Hypergraph3) -> Hypergraph3 {
    let n = h.n();
    let edges: Vec<[usize; 3]> = h
        .edges()
        .iter()
        .flat_map(|&[x, y, z]| {
            [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]].map(|[p, q, r]| [p, n + q, 2 * n + r])
        })
        .collect();
    let mut labels: Vec<Label> = h.labels().iter().map(|l| tagged("a:", l)).collect();
    labels.extend(h.labels().iter().map(|l| tagged("b:", l)));
    labels.extend(h.labels().iter().map(|l| tagged("c:", l)));
    Hypergraph3::from_edges(3 * n, edges).and_then(|t| t.with_labels(labels)).expect("Trip of a valid 3-graph")
}

/// `n`-blowup: vertex `v` becomes the class `v·n .. v·n + n`; triples across three classes follow `H`.
pub fn blowup(h: &Hypergraph3, n: usize) -> Result<Hypergraph3> {
    if n == 0 {
        return precondition("blowup factor must be positive");
    }
    let mut edges = Vec::with_capacity(h.edge_count() * n * n * n);
    for &[x, y, z] in h.edges() {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    edges.push([x * n + i, y * n + j, z * n + k]);
                }
            }
        }
    }
    let labels = h.labels().iter().flat_map(|l| (0..n).map(move |i| Label::name(format!("{l}#{i}")))).collect();
    Hypergraph3::from_edges(h.n() * n, edges)?.with_labels(labels)
}

/// Class index of every blowup vertex, for contraction back to the base.
pub fn blowup_classes(base_n: usize, n: usize) -> Vec<usize> {
    (0..base_n * n).map(|v| v / n).collect()
}

// ---------------------------------------------------------------------------
// duplication gadgets

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GadgetBlock {
    pub name: String,
    /// Index (0, 1, 2) of the base part this block copies.
    pub base_part: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GadgetTriad {
    /// Blocks in base-part order.
    pub blocks: [usize; 3],
    /// The ternary fill copies the alternate pattern `K₃(G′) ∖ F` instead of `F`.
    pub alternate: bool,
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub blocks: Vec<GadgetBlock>,
    /// `(base vertex, block)` for every gadget vertex.
    pub provenance: Vec<(usize, usize)>,
    pub triads: Vec<GadgetTriad>,
    pub hypergraph: Hypergraph3,
}

impl Gadget {
    /// The copied triad and trigraph for entry `idx` of `triads`.
    pub fn block_triad(&self, idx: usize, base: &Triad, alt_xy: Option<&Bigraph>) -> Result<(Triad, Trigraph)> {
        let t = &self.triads[idx];
        let parts = t.blocks.map(|b| self.blocks[b].vertices.clone());
        let xy = if t.alternate { alt_xy.unwrap_or(base.xy()) } else { base.xy() };
        let copy = |src: &Bigraph, l: &[usize], r: &[usize]| Bigraph::from_rows(l.to_vec(), r.to_vec(), src.rows().to_vec());
        let triad = Triad::new(
            copy(xy, &parts[0], &parts[1])?,
            copy(base.xz(), &parts[0], &parts[2])?,
            copy(base.yz(), &parts[1], &parts[2])?,
        )?;
        let tri = Trigraph::from_hypergraph(&self.hypergraph, parts)?;
        let tri = crate::structures::restrict_trigraph(&tri, &triad)?;
        Ok((triad, tri))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetShape {
    /// Blocks `A_1..A_k`, `B_1..B_k`, `C_S` for `S ⊆ [k]²`; every block triple copies `F`.
    Grid,
    /// Blocks `U_1..U_k`, `V_S` for `S ⊆ [k]`, `W_1..W_k`; the `U_i V_S` pair copies `E_UV`
    /// when `i ∈ S` and the alternate `E′_UV` otherwise, with the ternary fill switching
    /// from `F ∩ K₃(G)` to `K₃(G′) ∖ F` accordingly.
    Alternating,
}

/// Builds a duplication gadget from a base triad `g` and base trigraph `f` on the same parts.
/// `alt_xy` is required for the alternating shape and must live on the XY parts of `g`.
pub fn duplication_gadget(
    g: &Triad,
    f: &Trigraph,
    k: usize,
    shape: GadgetShape,
    alt_xy: Option<&Bigraph>,
) -> Result<Gadget> {
    if f.parts() != g.parts() {
        return structural("gadget trigraph and triad must share parts");
    }
    if k == 0 {
        return structural("gadget needs k ≥ 1");
    }
    let grid_bits = match shape {
        GadgetShape::Grid => k * k,
        GadgetShape::Alternating => k,
    };
    if grid_bits > 12 {
        return capacity(format!("gadget would need 2^{grid_bits} third-part blocks"));
    }
    let alt = match (shape, alt_xy) {
        (GadgetShape::Alternating, Some(b)) => {
            if b.left() != g.xy().left() || b.right() != g.xy().right() {
                return structural("alternate pair set must live on the base XY parts");
            }
            Some(Triad::new(b.clone(), g.xz().clone(), g.yz().clone())?)
        }
        (GadgetShape::Alternating, None) => return structural("alternating gadget needs the alternate pair set"),
        (GadgetShape::Grid, _) => None,
    };
    let parts = g.parts();
    let mut blocks = Vec::new();
    let mut provenance = Vec::new();
    let mut add = |name: String, base_part: usize, blocks: &mut Vec<GadgetBlock>| {
        let start = provenance.len();
        let id = blocks.len();
        provenance.extend(parts[base_part].iter().map(|&v| (v, id)));
        blocks.push(GadgetBlock { name, base_part, vertices: (start..provenance.len()).collect() });
        id
    };
    let (first, second, third): (Vec<usize>, Vec<usize>, Vec<usize>);
    let mut triads = Vec::new();
    match shape {
        GadgetShape::Grid => {
            first = (1..=k).map(|u| add(format!("A{u}"), 0, &mut blocks)).collect();
            second = (1..=k).map(|v| add(format!("B{v}"), 1, &mut blocks)).collect();
            third = (0..1usize << grid_bits).map(|s| add(format!("C{s}"), 2, &mut blocks)).collect();
            for &a in &first {
                for &b in &second {
                    for &c in &third {
                        triads.push(GadgetTriad { blocks: [a, b, c], alternate: false });
                    }
                }
            }
        }
        GadgetShape::Alternating => {
            first = (1..=k).map(|i| add(format!("U{i}"), 0, &mut blocks)).collect();
            second = (0..1usize << grid_bits).map(|s| add(format!("V{s}"), 1, &mut blocks)).collect();
            third = (1..=k).map(|j| add(format!("W{j}"), 2, &mut blocks)).collect();
            for (i, &u) in first.iter().enumerate() {
                for (s, &v) in second.iter().enumerate() {
                    for &w in &third {
                        triads.push(GadgetTriad { blocks: [u, v, w], alternate: s >> i & 1 == 0 });
                    }
                }
            }
        }
    }
    // ternary fill per block triple, by positions in the base parts
    let (na, nb, _) = g.sizes();
    let base_fill: Vec<Bits> = (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| f.fiber(i, j).and(&g.k3_fiber(i, j))).collect();
    let alt_fill: Option<Vec<Bits>> = alt.as_ref().map(|a| {
        (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| a.k3_fiber(i, j).and_not(f.fiber(i, j))).collect()
    });
    let mut edges = Vec::new();
    for t in &triads {
        let fill = if t.alternate { alt_fill.as_ref().expect("alternating shape") } else { &base_fill };
        let [bx, by, bz] = t.blocks.map(|b| &blocks[b].vertices);
        for i in 0..na {
            for j in 0..nb {
                edges.extend(fill[i * nb + j].ones().map(|z| [bx[i], by[j], bz[z]]));
            }
        }
    }
    let n = provenance.len();
    let labels = provenance.iter().map(|&(v, b)| Label::name(format!("{}:{v}", blocks[b].name))).collect();
    let hypergraph = Hypergraph3::from_edges(n, edges)?.with_labels(labels)?;
    Ok(Gadget { blocks, provenance, triads, hypergraph })
}

// ---------------------------------------------------------------------------
// random models

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        precondition(format!("edge probability {p} outside [0, 1]"))
    }
}

/// Seed for the `index`-th task labelled `label` in a run seeded with `seed`. Runs fork one
/// stream per task this way so results do not depend on scheduling.
pub fn task_seed(seed: u64, label: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3);
    }
    seed ^ h ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_p(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn random_bigraph(left: Vec<usize>, right: Vec<usize>, p: f64, seed: u64) -> Result<Bigraph> {
    check_p(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..left.len()).map(|_| Bits::from_ones(right.len(), (0..right.len()).filter(|_| rng.gen_bool(p)))).collect();
    Bigraph::from_rows(left, right, rows)
}

/// Disjoint consecutive parts of the given sizes.
pub fn disjoint_parts(sizes: [usize; 3]) -> [Vec<usize>; 3] {
    let [a, b, c] = sizes;
    [(0..a).collect(), (a..a + b).collect(), (a + b..a + b + c).collect()]
}

/// Triad on disjoint parts with each component pair present independently with probability `p`.
pub fn random_triad(sizes: [usize; 3], p: f64, seed: u64) -> Result<Triad> {
    random_triad_densities(sizes, [p; 3], seed)
}

/// Like [`random_triad`] with its own edge probability per component, in XY, XZ, YZ order.
pub fn random_triad_densities(sizes: [usize; 3], p: [f64; 3], seed: u64) -> Result<Triad> {
    for q in p {
        check_p(q)?;
    }
    let parts = disjoint_parts(sizes);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comp = |l: &[usize], r: &[usize], p: f64| {
        let rows = (0..l.len()).map(|_| Bits::from_ones(r.len(), (0..r.len()).filter(|_| rng.gen_bool(p)))).collect();
        Bigraph::from_rows(l.to_vec(), r.to_vec(), rows)
    };
    let xy = comp(&parts[0], &parts[1], p[0])?;
    let xz = comp(&parts[0], &parts[2], p[1])?;
    let yz = comp(&parts[1], &parts[2], p[2])?;
    Triad::new(xy, xz, yz)
}

/// Trigraph underlied by `g`: each triangle kept independently with probability `p`.
pub fn random_fill(g: &Triad, p: f64, seed: u64) -> Result<Trigraph> {
    check_p(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, _) = g.sizes();
    let mut triples = Vec::new();
    for i in 0..a {
        for j in 0..b {
            for k in g.k3_fiber(i, j).ones() {
                if rng.gen_bool(p) {
                    triples.push((i, j, k));
                }
            }
        }
    }
    Trigraph::from_positions(g.parts().clone(), triples)
}

pub fn random_3graph(n: usize, p: f64, seed: u64) -> Result<Hypergraph3> {
    check_p(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if rng.gen_bool(p) {
                    edges.push([a, b, c]);
                }
            }
        }
    }
    Hypergraph3::from_edges(n, edges)
}

/// 3-graph whose edges are exactly the triangles of a triad on disjoint parts.
pub fn triangle_hypergraph(g: &Triad) -> Result<Hypergraph3> {
    let n = g.parts().iter().flatten().copied().max().map_or(0, |m| m + 1);
    let (triangles, _) = crate::count::k3_triangles(g);
    Hypergraph3::from_edges(n, triangles.into_iter().map(|(x, y, z)| [x, y, z]))
}

/// `t` nonempty parts; each vertex beyond the first `t` (after shuffling) joins a uniform part.
pub fn random_partition(n: usize, t: usize, seed: u64) -> Result<VertexPartition> {
    if t == 0 || t > n {
        return precondition(format!("cannot split {n} vertices into {t} nonempty parts"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut parts: Vec<Vec<usize>> = order[..t].iter().map(|&v| vec![v]).collect();
    for &v in &order[t..] {
        parts[rng.gen_range(0..t)].push(v);
    }
    VertexPartition::new(n, parts)
}

/// Uniformly shuffled equipartition into `t` parts.
pub fn random_equipartition(n: usize, t: usize, seed: u64) -> Result<VertexPartition> {
    if t == 0 || t > n {
        return precondition(format!("cannot split {n} vertices into {t} nonempty parts"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut parts = Vec::with_capacity(t);
    let mut start = 0;
    for i in 0..t {
        let size = n / t + usize::from(i < n % t);
        parts.push(order[start..start + size].to_vec());
        start += size;
    }
    VertexPartition::new(n, parts)
}

/// Splits every part of `p` into `k` near-equal random pieces.
pub fn random_refinement(p: &VertexPartition, k: usize, seed: u64) -> Result<VertexPartition> {
    if k == 0 || p.parts().iter().any(|part| part.len() < k) {
        return precondition(format!("every part needs at least {k} vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::with_capacity(p.len() * k);
    for part in p.parts() {
        let mut order = part.clone();
        order.shuffle(&mut rng);
        let mut start = 0;
        for i in 0..k {
            let size = order.len() / k + usize::from(i < order.len() % k);
            parts.push(order[start..start + size].to_vec());
            start += size;
        }
    }
    VertexPartition::new(p.n(), parts)
}

/// Random `(t, ℓ)` decomposition: a random partition into `t` parts and independent uniform
/// cell labels in `0..ℓ` for every ordered pair.
pub fn random_decomposition(n: usize, t: usize, ell: usize, seed: u64) -> Result<Decomposition> {
    if ell == 0 {
        return precondition("a decomposition needs at least one cell per pair");
    }
    let p = random_partition(n, t, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5DEE_CE66);
    let sizes = p.sizes();
    let cells = (0..t * t).map(|idx| (0..sizes[idx / t] * sizes[idx % t]).map(|_| rng.gen_range(0..ell as u32)).collect()).collect();
    Decomposition::new(p, ell, cells)
}

// ---------------------------------------------------------------------------
// hard instance

#[derive(Clone, Debug)]
pub struct HardInstance {
    pub hypergraph: Hypergraph3,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// `n ⊗ Bip(G)` with its three sides recorded.
pub fn hard_instance(g: &Graph, n: usize) -> Result<HardInstance> {
    let v = g.n();
    let hypergraph = dummy_extend(&bip(g), n)?;
    Ok(HardInstance { hypergraph, a: (0..v).collect(), b: (v..2 * v).collect(), c: (2 * v..2 * v + n).collect() })
}

// ---------------------------------------------------------------------------
// recipes

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceRecipe {
    Powerset { k: usize },
    DummyExtend { base: Box<InstanceRecipe>, n: usize },
    Bip { base: Box<InstanceRecipe> },
    Trip { base: Box<InstanceRecipe> },
    Blowup { base: Box<InstanceRecipe>, n: usize },
    /// Grid gadget of a triad instance (its trigraph, or `K₃` when none is attached).
    Duplication {
        base: Box<InstanceRecipe>,
        k: usize,
        /// Triad recipe whose XY component is the alternate pair set; selects the alternating shape.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alternate: Option<Box<InstanceRecipe>>,
    },
    RandomGraph { n: usize, p: f64, seed: u64 },
    RandomTriad {
        sizes: [usize; 3],
        p: f64,
        seed: u64,
        /// Keep each triangle with this probability as the attached trigraph.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fill: Option<f64>,
    },
    Random3graph { n: usize, p: f64, seed: u64 },
    HardInstance { base: Box<InstanceRecipe>, n: usize },
    /// An instance file, resolved by the caller's loader.
    File { path: String },
}

impl InstanceRecipe {
    pub fn build(&self) -> Result<Instance> {
        self.build_with(&|p: &str| Err(Error::Parse(format!("no loader for instance file {p}"))))
    }

    pub fn build_with(&self, load: &dyn Fn(&str) -> Result<Instance>) -> Result<Instance> {
        use InstanceRecipe as R;
        let graph_of = |r: &InstanceRecipe| match r.build_with(load)? {
            Instance::Graph(g) => Ok(g),
            _ => structural("this construction needs a graph base"),
        };
        let hyper_of = |r: &InstanceRecipe| match r.build_with(load)? {
            Instance::Hypergraph(h) => Ok(h),
            _ => structural("this construction needs a 3-graph base"),
        };
        Ok(match self {
            R::Powerset { k } => Instance::Graph(power_set_graph(*k)?),
            R::DummyExtend { base, n } => Instance::Hypergraph(dummy_extend(&graph_of(base)?, *n)?),
            R::Bip { base } => Instance::Graph(bip(&graph_of(base)?)),
            R::Trip { base } => Instance::Hypergraph(trip(&hyper_of(base)?)),
            R::Blowup { base, n } => Instance::Hypergraph(blowup(&hyper_of(base)?, *n)?),
            R::Duplication { base, k, alternate } => {
                let (g, f) = match base.build_with(load)? {
                    Instance::Triad { triad, trigraph } => {
                        let f = match trigraph {
                            Some(f) => f,
                            None => random_fill(&triad, 1.0, 0)?,
                        };
                        (triad, f)
                    }
                    _ => return structural("duplication needs a triad base"),
                };
                let alt = match alternate {
                    Some(r) => match r.build_with(load)? {
                        Instance::Triad { triad, .. } => Some(triad.xy().clone()),
                        _ => return structural("alternate pair set must come from a triad"),
                    },
                    None => None,
                };
                let shape = if alt.is_some() { GadgetShape::Alternating } else { GadgetShape::Grid };
                Instance::Hypergraph(duplication_gadget(&g, &f, *k, shape, alt.as_ref())?.hypergraph)
            }
            R::RandomGraph { n, p, seed } => Instance::Graph(random_graph(*n, *p, *seed)?),
            R::RandomTriad { sizes, p, seed, fill } => {
                let triad = random_triad(*sizes, *p, *seed)?;
                let trigraph = match fill {
                    Some(q) => Some(random_fill(&triad, *q, seed.wrapping_add(1))?),
                    None => None,
                };
                Instance::Triad { triad, trigraph }
            }
            R::Random3graph { n, p, seed } => Instance::Hypergraph(random_3graph(*n, *p, *seed)?),
            R::HardInstance { base, n } => Instance::Hypergraph(hard_instance(&graph_of(base)?, *n)?.hypergraph),
            R::File { path } => load(path)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powerset_sizes() {
        let u1 = power_set_graph(1).unwrap();
        assert_eq!((u1.n(), u1.edge_count()), (3, 1));
        let u2 = power_set_graph(2).unwrap();
        assert_eq!((u2.n(), u2.edge_count()), (6, 4));
        for k in 1..=10 {
            assert_eq!(power_set_graph(k).unwrap().edge_count(), k << (k - 1));
        }
        assert!(matches!(power_set_graph(0), Err(Error::Capacity(_))));
        assert!(matches!(power_set_graph(17), Err(Error::Capacity(_))));
    }

    #[test]
    fn dummy_extension_counts() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let h = dummy_extend(&g, 3).unwrap();
        assert_eq!((h.n(), h.edge_count()), (5, 3));
        assert_eq!(dummy_extend(&Graph::empty(4), 2).unwrap().edge_count(), 0);
    }

    #[test]
    fn bip_and_trip_orderings() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(bip(&g).edges(), vec![(0, 3), (1, 2)]);
        let h = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        assert_eq!(trip(&h).edge_count(), 6);
        assert_eq!(trip(&Hypergraph3::empty(2)).n(), 6);
    }

    #[test]
    fn blowup_of_single_triple() {
        let h = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        assert_eq!(blowup(&h, 2).unwrap().edge_count(), 8);
        assert_eq!(blowup(&h, 1).unwrap().edges(), h.edges());
    }

    #[test]
    fn random_extremes_and_replay() {
        assert_eq!(random_graph(10, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(random_graph(10, 1.0, 3).unwrap().edge_count(), 45);
        assert_eq!(random_graph(30, 0.4, 9).unwrap().edges(), random_graph(30, 0.4, 9).unwrap().edges());
        assert!(random_graph(3, 1.5, 0).is_err());
    }

    #[test]
    fn grid_gadget_with_k1_complete_base() {
        let g = Triad::complete(disjoint_parts([2, 2, 2]));
        let f = Trigraph::complete(g.parts().clone());
        let gad = duplication_gadget(&g, &f, 1, GadgetShape::Grid, None).unwrap();
        assert_eq!(gad.blocks.len(), 4);
        assert_eq!(gad.triads.len(), 2);
        assert_eq!(gad.hypergraph.edge_count(), 16);
    }

    #[test]
    fn hard_instance_is_tripartite() {
        let g = random_graph(6, 0.5, 1).unwrap();
        let hi = hard_instance(&g, 3).unwrap();
        assert_eq!(hi.hypergraph.edge_count(), 3 * bip(&g).edge_count());
        for e in hi.hypergraph.edges() {
            assert!(hi.a.contains(&e[0]) && hi.b.contains(&e[1]) && hi.c.contains(&e[2]));
        }
    }
}
