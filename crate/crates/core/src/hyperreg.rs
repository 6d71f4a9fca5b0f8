//! `(t, ℓ)`-decompositions of 3-graphs: triads, audits, mean-square density, the iterative
//! strong decomposer, homogeneity bridges and a small-instance homogeneous partition probe.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{capacity, precondition, structural, Error, Result};
use crate::graphreg::szemeredi_partition;
use crate::par;
use crate::quasi::{dev2, dev23, rat};
use crate::structures::{restrict_trigraph, Bigraph, Graph, Hypergraph3, Triad, Trigraph, VertexPartition};

/// `ε₂ : ℕ → (0, 1]`, evaluated at the current `ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Eps2Schedule {
    Constant { value: f64 },
    /// `ℓ ↦ scale · ℓ^{-exponent}`.
    Power { scale: f64, exponent: f64 },
    /// `values[ℓ − 1]`, repeating the last entry.
    Table { values: Vec<f64> },
}

impl Eps2Schedule {
    pub fn eval(&self, ell: usize) -> f64 {
        let ell = ell.max(1);
        let v = match self {
            Eps2Schedule::Constant { value } => *value,
            Eps2Schedule::Power { scale, exponent } => scale * (ell as f64).powf(-exponent),
            Eps2Schedule::Table { values } => values.get(ell - 1).or(values.last()).copied().unwrap_or(1.0),
        };
        v.clamp(f64::MIN_POSITIVE, 1.0)
    }

    /// Parses `const:0.1`, `power:1:2` (scale, exponent) or `table:0.5,0.2,0.1`.
    pub fn parse(text: &str) -> Result<Eps2Schedule> {
        let bad = || Error::Parse(format!("bad ε₂ schedule {text:?}"));
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
        let (family, rest) = text.split_once(':').ok_or_else(bad)?;
        let s = match family {
            "const" | "constant" => Eps2Schedule::Constant { value: num(rest)? },
            "power" => {
                let (a, b) = rest.split_once(':').ok_or_else(bad)?;
                Eps2Schedule::Power { scale: num(a)?, exponent: num(b)? }
            }
            "table" => Eps2Schedule::Table { values: rest.split(',').map(num).collect::<Result<_>>()? },
            _ => return Err(bad()),
        };
        Ok(s)
    }
}

impl Default for Eps2Schedule {
    fn default() -> Self {
        Eps2Schedule::Power { scale: 1.0, exponent: 1.0 }
    }
}

#[derive(Deserialize)]
struct RawDecomposition {
    partition: VertexPartition,
    ell: usize,
    eps1: f64,
    eps2: Eps2Schedule,
    cells: Vec<Vec<u32>>,
}

/// Vertex partition `V_1, …, V_t` plus, for every ordered `(i, j)`, a labelling of `V_i × V_j`
/// (row-major over positions within the parts) by cell indices `0..ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDecomposition")]
pub struct Decomposition {
    partition: VertexPartition,
    ell: usize,
    eps1: f64,
    eps2: Eps2Schedule,
    cells: Vec<Vec<u32>>,
}

impl TryFrom<RawDecomposition> for Decomposition {
    type Error = Error;
    fn try_from(r: RawDecomposition) -> Result<Decomposition> {
        Decomposition::new(r.partition, r.ell, r.cells).map(|d| d.with_params(r.eps1, r.eps2))
    }
}

/// Position of every vertex inside its part.
fn positions(p: &VertexPartition) -> Vec<usize> {
    let mut pos = vec![0; p.n()];
    for part in p.parts() {
        for (i, &v) in part.iter().enumerate() {
            pos[v] = i;
        }
    }
    pos
}

impl Decomposition {
    pub fn new(partition: VertexPartition, ell: usize, cells: Vec<Vec<u32>>) -> Result<Decomposition> {
        let t = partition.len();
        if cells.len() != t * t {
            return structural(format!("{} cell tables for {t} parts", cells.len()));
        }
        let sizes = partition.sizes();
        for (idx, c) in cells.iter().enumerate() {
            if c.len() != sizes[idx / t] * sizes[idx % t] {
                return structural(format!("cell table {idx} does not cover its product"));
            }
            if c.iter().any(|&a| a as usize >= ell) {
                return structural(format!("cell table {idx} uses more than ℓ = {ell} cells"));
            }
        }
        Ok(Decomposition { partition, ell: ell.max(1), eps1: 0.0, eps2: Eps2Schedule::default(), cells })
    }

    /// `P₁ = {V}`, `P₂ = {V × V}`.
    pub fn trivial(n: usize) -> Decomposition {
        Decomposition::from_products(VertexPartition::trivial(n))
    }

    /// The `(t, 1)` decomposition whose cells are the full products `X × Y`.
    pub fn from_products(p: VertexPartition) -> Decomposition {
        let sizes = p.sizes();
        let t = p.len();
        let cells = (0..t * t).map(|idx| vec![0; sizes[idx / t] * sizes[idx % t]]).collect();
        Decomposition { partition: p, ell: 1, eps1: 0.0, eps2: Eps2Schedule::default(), cells }
    }

    pub fn with_params(mut self, eps1: f64, eps2: Eps2Schedule) -> Decomposition {
        self.eps1 = eps1;
        self.eps2 = eps2;
        self
    }

    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn t(&self) -> usize {
        self.partition.len()
    }

    /// Nominal complexity `ℓ`; pairs may use fewer cells.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    pub fn eps2(&self) -> &Eps2Schedule {
        &self.eps2
    }

    pub fn cell_table(&self, i: usize, j: usize) -> &[u32] {
        &self.cells[i * self.t() + j]
    }

    /// Cells actually used on `V_i × V_j`.
    pub fn cell_count(&self, i: usize, j: usize) -> usize {
        self.cell_table(i, j).iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// `(i, j, α)` of the cell holding `(x, y)`.
    pub fn cell_of(&self, x: usize, y: usize) -> (usize, usize, usize) {
        let (i, j) = (self.partition.part_of(x), self.partition.part_of(y));
        let pos = |v: usize, part: usize| self.partition.part(part).iter().position(|&u| u == v).expect("vertex in its part");
        let ny = self.partition.part(j).len();
        (i, j, self.cell_table(i, j)[pos(x, i) * ny + pos(y, j)] as usize)
    }

    /// `rows[α][x]` = positions `y` in `V_j` with `(x, y) ∈ P_ij^α`.
    pub fn cell_rows(&self, i: usize, j: usize) -> Vec<Vec<Bits>> {
        let (nx, ny) = (self.partition.part(i).len(), self.partition.part(j).len());
        let table = self.cell_table(i, j);
        let mut rows = vec![vec![Bits::new(ny); nx]; self.cell_count(i, j)];
        for x in 0..nx {
            for y in 0..ny {
                rows[table[x * ny + y] as usize][x].set(y);
            }
        }
        rows
    }

    pub fn cell_bigraph(&self, i: usize, j: usize, alpha: usize) -> Bigraph {
        let rows = self.cell_rows(i, j).swap_remove(alpha);
        Bigraph::from_rows(self.partition.part(i).to_vec(), self.partition.part(j).to_vec(), rows).expect("rows match parts")
    }

    /// Every cell as a pair set on `V × V`.
    pub fn colors(&self) -> Vec<Bigraph> {
        let n = self.n();
        let all: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        for i in 0..self.t() {
            for j in 0..self.t() {
                let (vi, vj) = (self.partition.part(i), self.partition.part(j));
                for rows in self.cell_rows(i, j) {
                    let mut full = vec![Bits::new(n); n];
                    for (x, r) in rows.iter().enumerate() {
                        full[vi[x]] = Bits::from_ones(n, r.ones().map(|y| vj[y]));
                    }
                    out.push(Bigraph::from_rows(all.clone(), all.clone(), full).expect("square pair set"));
                }
            }
        }
        out
    }

    /// `P₁′ = split` with cells `P ∩ (X × Y)`; each old part may split into at most `max_pieces`.
    pub fn refine_vertices(&self, split: &VertexPartition, max_pieces: Option<usize>) -> Result<Decomposition> {
        let parent = match split.parent_map(&self.partition) {
            Some(m) => m,
            None => return precondition("the split does not refine the vertex partition"),
        };
        if let Some(c) = max_pieces {
            let mut pieces = vec![0usize; self.t()];
            for &a in &parent {
                pieces[a] += 1;
            }
            if let Some(a) = pieces.iter().position(|&k| k > c) {
                return precondition(format!("part {a} splits into {} pieces, more than {c}", pieces[a]));
            }
        }
        let pos = positions(&self.partition);
        let t2 = split.len();
        let mut cells = Vec::with_capacity(t2 * t2);
        for a in 0..t2 {
            for b in 0..t2 {
                let (i, j) = (parent[a], parent[b]);
                let table = self.cell_table(i, j);
                let ny = self.partition.part(j).len();
                let mut c = Vec::with_capacity(split.part(a).len() * split.part(b).len());
                for &x in split.part(a) {
                    for &y in split.part(b) {
                        c.push(table[pos[x] * ny + pos[y]]);
                    }
                }
                cells.push(c);
            }
        }
        Ok(Decomposition { partition: split.clone(), ell: self.ell, eps1: self.eps1, eps2: self.eps2.clone(), cells })
    }

    fn compact(mut self) -> Decomposition {
        for c in &mut self.cells {
            let mut ids: HashMap<u32, u32> = HashMap::new();
            for a in c.iter_mut() {
                let next = ids.len() as u32;
                *a = *ids.entry(*a).or_insert(next);
            }
        }
        self
    }
}

/// Index `G^{ijk}_{αβγ}` of a triad of a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriadIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

/// All triads `(V_i, V_j, V_k; P_ij^α, P_ik^β, P_jk^γ)`, empty ones included.
pub fn triads_of(p: &Decomposition) -> Vec<(TriadIndex, Triad)> {
    let t = p.t();
    let rows: Vec<Vec<Vec<Bits>>> = (0..t * t).map(|idx| p.cell_rows(idx / t, idx % t)).collect();
    let big = |i: usize, j: usize, a: usize| {
        Bigraph::from_rows(p.partition.part(i).to_vec(), p.partition.part(j).to_vec(), rows[i * t + j][a].clone())
            .expect("rows match parts")
    };
    let mut out = Vec::new();
    for i in 0..t {
        for j in 0..t {
            for k in 0..t {
                for alpha in 0..rows[i * t + j].len() {
                    for beta in 0..rows[i * t + k].len() {
                        for gamma in 0..rows[j * t + k].len() {
                            let g = Triad::new(big(i, j, alpha), big(i, k, beta), big(j, k, gamma)).expect("parts agree");
                            out.push((TriadIndex { i, j, k, alpha, beta, gamma }, g));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `|K₃(G)|` and `|H̄ ∩ K₃(G)|` for every triad with nonempty `K₃`, sorted by index.
fn triad_volumes(h: &Hypergraph3, p: &Decomposition) -> Vec<(TriadIndex, u64, u64)> {
    let t = p.t();
    let rows: Vec<Vec<Vec<Bits>>> = (0..t * t).map(|idx| p.cell_rows(idx / t, idx % t)).collect();
    let per = par::map_range(t * t * t, |idx| {
        let (i, j, k) = (idx / (t * t), (idx / t) % t, idx % t);
        let (vi, vj, vk) = (p.partition.part(i), p.partition.part(j), p.partition.part(k));
        let tab = p.cell_table(i, j);
        let (rik, rjk) = (&rows[i * t + k], &rows[j * t + k]);
        let mut acc: HashMap<(usize, usize, usize), (u64, u64)> = HashMap::new();
        for (x, &vx) in vi.iter().enumerate() {
            for (y, &vy) in vj.iter().enumerate() {
                let alpha = tab[x * vj.len() + y] as usize;
                let fib = h.fiber(vx, vy).gather(vk);
                for (beta, rb) in rik.iter().enumerate() {
                    for (gamma, rg) in rjk.iter().enumerate() {
                        let kc = rb[x].and_count(&rg[y]);
                        if kc > 0 {
                            let e = acc.entry((alpha, beta, gamma)).or_insert((0, 0));
                            e.0 += kc;
                            e.1 += rb[x].and3_count(&rg[y], &fib);
                        }
                    }
                }
            }
        }
        let mut v: Vec<(TriadIndex, u64, u64)> = acc
            .into_iter()
            .map(|((alpha, beta, gamma), (kc, fc))| (TriadIndex { i, j, k, alpha, beta, gamma }, kc, fc))
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    });
    per.into_iter().flatten().collect()
}

/// `msd_H(P) = Σ_G (|K₃(G)|/n³) d_H(G)²` over the triads of `P`.
pub fn msd(h: &Hypergraph3, p: &Decomposition) -> BigRational {
    let n = h.n() as u64;
    let mut total = BigRational::zero();
    for (_, k, f) in triad_volumes(h, p) {
        if f > 0 {
            total += rat(BigInt::from(f) * BigInt::from(f), BigInt::from(k));
        }
    }
    if n == 0 {
        total
    } else {
        total / BigRational::from_integer(BigInt::from(n * n * n))
    }
}

/// `msd_f` of a trigraph relative to the triads of partitions of `X₁×X₂`, `X₁×X₃`, `X₂×X₃`,
/// given as row-major label tables over positions.
pub fn msd_trigraph(f: &Trigraph, ab: &[u32], ac: &[u32], bc: &[u32]) -> Result<BigRational> {
    let (nx, ny, nz) = f.sizes();
    if ab.len() != nx * ny || ac.len() != nx * nz || bc.len() != ny * nz {
        return structural("label tables do not match the trigraph's parts");
    }
    let mut acc: HashMap<(u32, u32, u32), (u64, u64)> = HashMap::new();
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                let e = acc.entry((ab[x * ny + y], ac[x * nz + z], bc[y * nz + z])).or_insert((0, 0));
                e.0 += 1;
                e.1 += u64::from(f.has(x, y, z));
            }
        }
    }
    let total = (nx * ny * nz) as u64;
    if total == 0 {
        return Ok(BigRational::zero());
    }
    let sum = acc.values().filter(|e| e.1 > 0).fold(BigRational::zero(), |s, &(k, c)| s + rat(BigInt::from(c) * BigInt::from(c), BigInt::from(k)));
    Ok(sum / BigRational::from_integer(BigInt::from(total)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomClass {
    Zero,
    One,
    Neither,
}

/// `[0, ε)` → zero side, `(1 − ε, 1]` → one side; the endpoints themselves are neither.
pub fn hom_class(d: f64, eps: f64) -> HomClass {
    if d < eps {
        HomClass::Zero
    } else if d > 1.0 - eps {
        HomClass::One
    } else {
        HomClass::Neither
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriadAudit {
    pub index: TriadIndex,
    pub k3: u64,
    pub edges: u64,
    pub density: f64,
    pub nontrivial: bool,
    pub components_pass: [bool; 3],
    pub dev23_pass: bool,
    pub normalized_dev23: f64,
    pub class: HomClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionAudit {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub eps1: f64,
    pub eps2: f64,
    pub mu: f64,
    /// Fraction of `V²` in cells with `dev₂(ε₂)`.
    pub pair_pass: f64,
    pub is_tl_decomposition: bool,
    /// Fraction of `V²` in cells with `dev₂(ε₂, 1/ℓ)`.
    pub equitable_pair_pass: f64,
    pub is_equitable: bool,
    /// Fraction of `V³` in triads with `dev₂,₃(ε₁, ε₂)`.
    pub triple_pass: f64,
    pub is_regular: bool,
    /// Fraction of `V³` in μ-non-trivial triads.
    pub nontrivial_cover: f64,
    pub coverage_floor: f64,
    pub coverage_holds: bool,
    /// Fraction of `V³` in ε₁-homogeneous triads.
    pub homogeneous_cover: f64,
    pub msd: f64,
    pub msd_exact: String,
    pub triads: Vec<TriadAudit>,
}

impl DecompositionAudit {
    pub fn passes(&self) -> bool {
        self.is_tl_decomposition && self.is_regular && self.coverage_holds
    }
}

/// μ-non-triviality of every nonempty triad, with the part and cell size floors.
fn nontrivial_flags(p: &Decomposition, vols: &[(TriadIndex, u64, u64)], mu: f64) -> Vec<bool> {
    let (n, t, ell) = (p.n() as f64, p.t() as f64, p.ell() as f64);
    let sizes = p.partition.sizes();
    let tt = p.t();
    let mut cell_sizes: Vec<Vec<usize>> = Vec::with_capacity(tt * tt);
    for i in 0..tt {
        for j in 0..tt {
            let mut c = vec![0usize; p.cell_count(i, j)];
            for &a in p.cell_table(i, j) {
                c[a as usize] += 1;
            }
            cell_sizes.push(c);
        }
    }
    let part_ok = |i: usize| sizes[i] as f64 >= mu * n / t;
    let cell_ok = |i: usize, j: usize, a: usize| cell_sizes[i * tt + j][a] as f64 >= mu * (sizes[i] * sizes[j]) as f64 / ell;
    vols.iter()
        .map(|(ix, _, _)| {
            part_ok(ix.i) && part_ok(ix.j) && part_ok(ix.k) && cell_ok(ix.i, ix.j, ix.alpha) && cell_ok(ix.i, ix.k, ix.beta) && cell_ok(ix.j, ix.k, ix.gamma)
        })
        .collect()
}

struct TriadContext<'a> {
    p: &'a Decomposition,
    bigraphs: Vec<Vec<Bigraph>>,
    trigraphs: HashMap<(usize, usize, usize), Trigraph>,
}

impl<'a> TriadContext<'a> {
    fn new(h: &'a Hypergraph3, p: &'a Decomposition) -> Result<TriadContext<'a>> {
        let t = p.t();
        let bigraphs = (0..t * t)
            .map(|idx| (0..p.cell_count(idx / t, idx % t)).map(|a| p.cell_bigraph(idx / t, idx % t, a)).collect())
            .collect();
        let mut trigraphs = HashMap::new();
        for i in 0..t {
            for j in 0..t {
                for k in 0..t {
                    let parts = [p.partition.part(i).to_vec(), p.partition.part(j).to_vec(), p.partition.part(k).to_vec()];
                    trigraphs.insert((i, j, k), Trigraph::from_hypergraph(h, parts)?);
                }
            }
        }
        Ok(TriadContext { p, bigraphs, trigraphs })
    }

    fn triad(&self, ix: &TriadIndex) -> Triad {
        let t = self.p.t();
        Triad::new(
            self.bigraphs[ix.i * t + ix.j][ix.alpha].clone(),
            self.bigraphs[ix.i * t + ix.k][ix.beta].clone(),
            self.bigraphs[ix.j * t + ix.k][ix.gamma].clone(),
        )
        .expect("parts agree")
    }

    fn restricted(&self, ix: &TriadIndex, g: &Triad) -> Result<Trigraph> {
        restrict_trigraph(&self.trigraphs[&(ix.i, ix.j, ix.k)], g)
    }
}

fn classify_triads(
    ctx: &TriadContext,
    vols: &[(TriadIndex, u64, u64)],
    nontrivial: &[bool],
    eps1: f64,
    eps2: f64,
) -> Result<Vec<TriadAudit>> {
    let results = par::map_range(vols.len(), |idx| -> Result<TriadAudit> {
        let (ix, k3, f) = vols[idx];
        let g = ctx.triad(&ix);
        let r = dev23(&ctx.restricted(&ix, &g)?, &g)?;
        let density = f as f64 / k3 as f64;
        Ok(TriadAudit {
            index: ix,
            k3,
            edges: f,
            density,
            nontrivial: nontrivial[idx],
            components_pass: [r.components[0].passes(eps2), r.components[1].passes(eps2), r.components[2].passes(eps2)],
            dev23_pass: r.passes(eps1, eps2),
            normalized_dev23: r.normalized,
            class: hom_class(density, eps1),
        })
    });
    results.into_iter().collect()
}

/// Pair-level, triple-level and coverage checks of a decomposition against `H`.
pub fn decomposition_audit(h: &Hypergraph3, p: &Decomposition, eps1: f64, eps2: f64, mu: f64) -> Result<DecompositionAudit> {
    if h.n() != p.n() {
        return structural("decomposition and 3-graph have different vertex counts");
    }
    let n = p.n();
    let t = p.t();
    let (n2, n3) = ((n * n) as f64, (n * n * n) as f64);
    let inv_ell = rat(1, p.ell() as u64);
    let mut pair_pass = 0usize;
    let mut eq_pass = 0usize;
    for i in 0..t {
        for j in 0..t {
            for a in 0..p.cell_count(i, j) {
                let b = p.cell_bigraph(i, j, a);
                let size = b.edge_count() as usize;
                if dev2(&b, None).passes(eps2) {
                    pair_pass += size;
                }
                if dev2(&b, Some(&inv_ell)).passes(eps2) {
                    eq_pass += size;
                }
            }
        }
    }
    let vols = triad_volumes(h, p);
    let flags = nontrivial_flags(p, &vols, mu);
    let ctx = TriadContext::new(h, p)?;
    let triads = classify_triads(&ctx, &vols, &flags, eps1, eps2)?;
    let vol = |pred: &dyn Fn(&TriadAudit) -> bool| triads.iter().filter(|a| pred(a)).map(|a| a.k3).sum::<u64>() as f64 / n3;
    let triple_pass = vol(&|a| a.dev23_pass);
    let nontrivial_cover = vol(&|a| a.nontrivial);
    let homogeneous_cover = vol(&|a| a.class != HomClass::Neither);
    let m = msd(h, p);
    let frac = |c: usize| if n2 > 0.0 { c as f64 / n2 } else { 1.0 };
    let (pp, ep) = (frac(pair_pass), frac(eq_pass));
    let (triple_pass, nontrivial_cover, homogeneous_cover) =
        if n == 0 { (1.0, 1.0, 1.0) } else { (triple_pass, nontrivial_cover, homogeneous_cover) };
    Ok(DecompositionAudit {
        n,
        t,
        ell: p.ell(),
        eps1,
        eps2,
        mu,
        pair_pass: pp,
        is_tl_decomposition: pp >= 1.0 - eps1 - 1e-12,
        equitable_pair_pass: ep,
        is_equitable: p.partition.is_equipartition() && ep >= 1.0 - eps1 - 1e-12,
        triple_pass,
        is_regular: triple_pass >= 1.0 - eps1 - 1e-12,
        nontrivial_cover,
        coverage_floor: 1.0 - 2.0 * mu,
        coverage_holds: nontrivial_cover >= 1.0 - 2.0 * mu - 1e-12,
        homogeneous_cover,
        msd: m.to_f64().unwrap_or(0.0),
        msd_exact: m.to_string(),
        triads,
    })
}

/// Exact μ-non-trivial coverage `|⋃ K₃(G)|` (in triples) over μ-non-trivial triads.
pub fn nontrivial_coverage(p: &Decomposition, mu: f64) -> u64 {
    let h = Hypergraph3::empty(p.n());
    let vols = triad_volumes(&h, p);
    let flags = nontrivial_flags(p, &vols, mu);
    vols.iter().zip(flags).filter(|(_, f)| *f).map(|(v, _)| v.1).sum()
}

// ---------------------------------------------------------------------------
// pair refinement oracle

#[derive(Clone, Debug, Serialize)]
pub struct OracleSplit {
    /// Sub-cell labels for the `ab`, `ac`, `bc` cells, aligned with row-major order of the
    /// pairs in each cell.
    pub labels: [Vec<u32>; 3],
    pub pairs: [Vec<(usize, usize)>; 3],
    pub buckets: usize,
    pub fallback: [bool; 3],
    pub density: f64,
    pub msd_after: f64,
    pub msd_delta: f64,
    pub msd_delta_exact: String,
}

/// Triples of `K₃(G)` as `(x, y, z)` positions with membership in `H̄`.
fn k3_triples(g: &Triad, f: &Trigraph) -> Vec<(usize, usize, usize, bool)> {
    let (nx, ny, _) = g.sizes();
    let mut out = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            for z in g.k3_fiber(x, y).ones() {
                out.push((x, y, z, f.has(x, y, z)));
            }
        }
    }
    out
}

/// `msd` of `H̄` on `K₃(G)` relative to the split given by per-role label lookups.
fn split_msd(triples: &[(usize, usize, usize, bool)], lab: [&HashMap<(usize, usize), u32>; 3]) -> BigRational {
    let mut acc: HashMap<(u32, u32, u32), (u64, u64)> = HashMap::new();
    for &(x, y, z, e) in triples {
        let key = (lab[0].get(&(x, y)).copied().unwrap_or(0), lab[1].get(&(x, z)).copied().unwrap_or(0), lab[2].get(&(y, z)).copied().unwrap_or(0));
        let a = acc.entry(key).or_insert((0, 0));
        a.0 += 1;
        a.1 += u64::from(e);
    }
    let total = triples.len() as u64;
    if total == 0 {
        return BigRational::zero();
    }
    let sum = acc.values().filter(|a| a.1 > 0).fold(BigRational::zero(), |s, &(k, c)| s + rat(BigInt::from(c) * BigInt::from(c), BigInt::from(k)));
    sum / BigRational::from_integer(BigInt::from(total))
}

/// Splits each cell of a triad by the density of `H̄` over the co-cell fiber, quantized into
/// `⌈ε₁⁻¹⌉` buckets (pairs with an empty fiber get their own bucket). When a cell would need more
/// than `budget` pieces it is instead bisected at the bucket threshold maximizing the msd gain.
pub fn pair_refinement_oracle(f: &Trigraph, g: &Triad, eps1: f64, budget: usize) -> Result<(OracleSplit, [HashMap<(usize, usize), u32>; 3])> {
    let triples = k3_triples(g, f);
    let buckets = (1.0 / eps1 - 1e-9).ceil().max(1.0) as usize;
    // role 0: (x, y) over z; role 1: (x, z) over y; role 2: (y, z) over x
    let mut num: [HashMap<(usize, usize), (u64, u64)>; 3] = Default::default();
    for &(x, y, z, e) in &triples {
        for (r, key) in [(x, y), (x, z), (y, z)].into_iter().enumerate() {
            let a = num[r].entry(key).or_insert((0, 0));
            a.0 += 1;
            a.1 += u64::from(e);
        }
    }
    let comps = [g.xy(), g.xz(), g.yz()];
    let mut pairs: [Vec<(usize, usize)>; 3] = Default::default();
    let mut raw: [Vec<u32>; 3] = Default::default();
    for r in 0..3 {
        let b = comps[r];
        for (i, row) in b.rows().iter().enumerate() {
            for j in row.ones() {
                pairs[r].push((i, j));
                raw[r].push(match num[r].get(&(i, j)) {
                    Some(&(k, c)) => ((c as f64 / k as f64 * buckets as f64).floor() as usize).min(buckets - 1) as u32,
                    None => buckets as u32,
                });
            }
        }
    }
    let to_map = |r: usize, labels: &[u32]| -> HashMap<(usize, usize), u32> { pairs[r].iter().copied().zip(labels.iter().copied()).collect() };
    let mut labels: [Vec<u32>; 3] = Default::default();
    let mut fallback = [false; 3];
    for r in 0..3 {
        let mut distinct: Vec<u32> = raw[r].clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() <= budget.max(1) {
            labels[r] = raw[r].iter().map(|b| distinct.binary_search(b).expect("present") as u32).collect();
            continue;
        }
        fallback[r] = true;
        let empty = HashMap::new();
        let mut best: Option<(BigRational, Vec<u32>)> = None;
        for &cut in &distinct[..distinct.len() - 1] {
            let trial: Vec<u32> = raw[r].iter().map(|&b| u32::from(b > cut)).collect();
            let m = to_map(r, &trial);
            let mut lab = [&empty, &empty, &empty];
            lab[r] = &m;
            let gain = split_msd(&triples, lab);
            if best.as_ref().is_none_or(|(b, _)| gain > *b) {
                best = Some((gain, trial));
            }
        }
        labels[r] = best.map(|b| b.1).unwrap_or_else(|| vec![0; raw[r].len()]);
    }
    let maps = [to_map(0, &labels[0]), to_map(1, &labels[1]), to_map(2, &labels[2])];
    let empty = HashMap::new();
    let before = split_msd(&triples, [&empty, &empty, &empty]);
    let after = split_msd(&triples, [&maps[0], &maps[1], &maps[2]]);
    let fcount = triples.iter().filter(|t| t.3).count();
    let delta = &after - &before;
    let split = OracleSplit {
        labels,
        pairs,
        buckets,
        fallback,
        density: if triples.is_empty() { 0.0 } else { fcount as f64 / triples.len() as f64 },
        msd_after: after.to_f64().unwrap_or(0.0),
        msd_delta: delta.to_f64().unwrap_or(0.0),
        msd_delta_exact: delta.to_string(),
    };
    Ok((split, maps))
}

// ---------------------------------------------------------------------------
// strong decomposer

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MsdRound {
    pub round: usize,
    pub t: usize,
    pub ell: usize,
    pub eps2: f64,
    pub msd: f64,
    pub msd_exact: String,
    /// Fraction of `V³` covered by good (non-trivial, `dev₂,₃`-regular) triads.
    pub good_cover: f64,
    pub bad_triads: usize,
    pub action: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum DecomposeStatus {
    Complete,
    Incomplete(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MsdLedger {
    pub eps1: f64,
    pub mu: f64,
    pub round_cap: usize,
    pub rounds: Vec<MsdRound>,
    pub status: DecomposeStatus,
}

impl MsdLedger {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("round,t,ell,eps2,msd,good_cover,bad_triads,action\n");
        for r in &self.rounds {
            s += &format!("{},{},{},{},{},{},{},{}\n", r.round, r.t, r.ell, r.eps2, r.msd, r.good_cover, r.bad_triads, r.action);
        }
        s
    }

    pub fn is_complete(&self) -> bool {
        self.status == DecomposeStatus::Complete
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeCaps {
    pub max_t: usize,
    pub max_ell: usize,
    pub max_rounds: usize,
    /// Pieces allowed per cell from one bad triad before the oracle bisects instead.
    pub oracle_budget: Option<usize>,
}

impl Default for DecomposeCaps {
    fn default() -> Self {
        DecomposeCaps { max_t: 16, max_ell: 64, max_rounds: 16, oracle_budget: None }
    }
}

/// `⌈2¹⁰ ε₁⁻²⌉`.
pub fn msd_round_cap(eps1: f64) -> usize {
    (1024.0 / (eps1 * eps1) - 1e-9).ceil() as usize
}

/// The iterative decomposer: vertex refinement against the current cells, classification of
/// `ε₁/48`-non-trivial triads, and cell refinement of bad triads until good triads cover
/// `(1 − ε₁)n³`.
pub fn strong_decompose(h: &Hypergraph3, eps1: f64, eps2: &Eps2Schedule, caps: &DecomposeCaps) -> Result<(Decomposition, MsdLedger)> {
    if !(eps1 > 0.0 && eps1 < 1.0) {
        return precondition(format!("ε₁ = {eps1} outside (0, 1)"));
    }
    let n = h.n();
    if n == 0 {
        return precondition("empty 3-graph");
    }
    let n3 = (n * n * n) as f64;
    let mu = eps1 / 48.0;
    let cap = caps.max_rounds.min(msd_round_cap(eps1));
    let budget = caps.oracle_budget.unwrap_or(usize::MAX);
    let mut p = Decomposition::trivial(n).with_params(eps1, eps2.clone());
    let mut rounds: Vec<MsdRound> = Vec::new();
    let mut last_q = p.clone();
    let mut status = DecomposeStatus::Incomplete(format!("round cap {cap} reached"));
    for round in 0..cap.max(1) {
        let e2 = eps2.eval(p.ell());
        // (1) vertex refinement against the current cells
        let q = if e2 < 1.0 {
            match szemeredi_partition(&Graph::empty(n), e2, p.partition(), Some(&p.colors())) {
                Ok((split, _)) if split.len() <= caps.max_t => p.refine_vertices(&split, None)?,
                Ok((split, _)) => {
                    status = DecomposeStatus::Incomplete(format!("vertex partition needs {} parts, cap {}", split.len(), caps.max_t));
                    break;
                }
                Err(Error::Capacity(msg)) => {
                    status = DecomposeStatus::Incomplete(format!("vertex refinement: {msg}"));
                    break;
                }
                Err(e) => return Err(e),
            }
        } else {
            p.clone()
        };
        // (2)-(3) classify non-trivial triads
        let vols = triad_volumes(h, &q);
        let flags = nontrivial_flags(&q, &vols, mu);
        let ctx = TriadContext::new(h, &q)?;
        let audits = classify_triads(&ctx, &vols, &flags, eps1, e2)?;
        let good: u64 = audits.iter().filter(|a| a.nontrivial && a.dev23_pass).map(|a| a.k3).sum();
        let bad: Vec<&TriadAudit> = audits.iter().filter(|a| a.nontrivial && !a.dev23_pass).collect();
        let m = msd(h, &q);
        let good_cover = good as f64 / n3;
        rounds.push(MsdRound {
            round,
            t: q.t(),
            ell: q.ell(),
            eps2: e2,
            msd: m.to_f64().unwrap_or(0.0),
            msd_exact: m.to_string(),
            good_cover,
            bad_triads: bad.len(),
            action: String::new(),
        });
        last_q = q.clone();
        // (4) stop rule
        if good as f64 >= (1.0 - eps1) * n3 - 1e-9 {
            rounds.last_mut().expect("round recorded").action = "stop: good triads cover".into();
            status = DecomposeStatus::Complete;
            break;
        }
        // (5) refine cells of bad triads
        let next = refine_cells(&q, &ctx, &bad, eps1, budget)?;
        if next.ell() > caps.max_ell {
            rounds.last_mut().expect("round recorded").action = format!("stop: ℓ would reach {}", next.ell());
            status = DecomposeStatus::Incomplete(format!("cell count {} exceeds cap {}", next.ell(), caps.max_ell));
            break;
        }
        if next == q && q.partition() == p.partition() && q.ell() == p.ell() {
            rounds.last_mut().expect("round recorded").action = "stop: no refinement possible".into();
            status = DecomposeStatus::Incomplete("oracle produced no new cells".into());
            break;
        }
        rounds.last_mut().expect("round recorded").action = format!("refined {} bad triads", bad.len());
        p = next;
    }
    let ledger = MsdLedger { eps1, mu, round_cap: cap, rounds, status };
    Ok((last_q, ledger))
}

/// Common refinement of the oracle splits of all bad triads; `ℓ` becomes the largest number of
/// cells on any `V_a × V_b`.
fn refine_cells(q: &Decomposition, ctx: &TriadContext, bad: &[&TriadAudit], eps1: f64, budget: usize) -> Result<Decomposition> {
    let t = q.t();
    // signature per (a, b) table entry
    let mut sig: Vec<Vec<Vec<u32>>> = (0..t * t).map(|idx| vec![Vec::new(); q.cells[idx].len()]).collect();
    let pos = positions(q.partition());
    let splits = par::map_slice(bad, |a| -> Result<_> {
        let g = ctx.triad(&a.index);
        let f = ctx.restricted(&a.index, &g)?;
        Ok(pair_refinement_oracle(&f, &g, eps1, budget)?.0)
    });
    for (serial, (a, split)) in bad.iter().zip(splits).enumerate() {
        let split = split?;
        let ix = a.index;
        let roles = [(ix.i, ix.j), (ix.i, ix.k), (ix.j, ix.k)];
        for (r, &(pa, pb)) in roles.iter().enumerate() {
            let (va, vb) = (q.partition().part(pa), q.partition().part(pb));
            let nb = vb.len();
            for (&(x, y), &lab) in split.pairs[r].iter().zip(&split.labels[r]) {
                let (vx, vy) = (va[x], vb[y]);
                sig[pa * t + pb][pos[vx] * nb + pos[vy]].extend([serial as u32, r as u32, lab]);
            }
        }
    }
    let mut cells = Vec::with_capacity(t * t);
    let mut ell = 1;
    for (idx, table) in q.cells.iter().enumerate() {
        let mut ids: HashMap<(u32, &[u32]), u32> = HashMap::new();
        let mut out = Vec::with_capacity(table.len());
        for (e, &alpha) in table.iter().enumerate() {
            let next = ids.len() as u32;
            out.push(*ids.entry((alpha, sig[idx][e].as_slice())).or_insert(next));
        }
        ell = ell.max(ids.len());
        cells.push(out);
    }
    let ell = ell.max(q.ell());
    Ok(Decomposition { partition: q.partition().clone(), ell, eps1: q.eps1, eps2: q.eps2.clone(), cells }.compact())
}

// ---------------------------------------------------------------------------
// homogeneous partitions

/// `|H̄ ∩ (V_i × V_j × V_k)|` for all ordered part triples, flattened as `(i·t + j)·t + k`.
pub fn part_triple_counts(h: &Hypergraph3, p: &VertexPartition) -> Vec<u64> {
    let t = p.len();
    let mut c = vec![0u64; t * t * t];
    for &[a, b, d] in h.edges() {
        let (pa, pb, pd) = (p.part_of(a), p.part_of(b), p.part_of(d));
        for (x, y, z) in [(pa, pb, pd), (pa, pd, pb), (pb, pa, pd), (pb, pd, pa), (pd, pa, pb), (pd, pb, pa)] {
            c[(x * t + y) * t + z] += 1;
        }
    }
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct HomogeneityReport {
    pub eps: f64,
    /// Fraction of `V³` in ε-homogeneous part triples.
    pub cover: f64,
    pub homogeneous: bool,
    /// Infimum of the ε at which the partition is ε-homogeneous.
    pub measured: f64,
    /// Non-homogeneous triple whose density is farthest from 0 and 1.
    pub worst: Option<([usize; 3], f64)>,
}

pub fn partition_homogeneity(h: &Hypergraph3, p: &VertexPartition, eps: f64) -> HomogeneityReport {
    let t = p.len();
    let sizes = p.sizes();
    let counts = part_triple_counts(h, p);
    let n3 = (p.n() * p.n() * p.n()) as f64;
    let mut cover = 0usize;
    let mut worst: Option<([usize; 3], f64)> = None;
    let mut spread: Vec<(f64, usize)> = Vec::with_capacity(t * t * t);
    for i in 0..t {
        for j in 0..t {
            for k in 0..t {
                let vol = sizes[i] * sizes[j] * sizes[k];
                let d = counts[(i * t + j) * t + k] as f64 / vol as f64;
                spread.push((d.min(1.0 - d), vol));
                if hom_class(d, eps) != HomClass::Neither {
                    cover += vol;
                } else if worst.is_none_or(|w| d.min(1.0 - d) > w.1.min(1.0 - w.1)) {
                    worst = Some(([i, j, k], d));
                }
            }
        }
    }
    spread.sort_by(|a, b| a.0.total_cmp(&b.0));
    // On (m_k, m_{k+1}] the covered volume is the first k triples.
    let mut measured = 1.0f64;
    let mut covered = 0usize;
    for k in 0..=spread.len() {
        let lo = if k == 0 { 0.0 } else { spread[k - 1].0 };
        let hi = spread.get(k).map_or(1.0, |s| s.0);
        let need = 1.0 - covered as f64 / n3.max(1.0);
        let cand = lo.max(need);
        if cand <= hi && cand < measured {
            measured = cand;
        }
        if let Some(s) = spread.get(k) {
            covered += s.1;
        }
    }
    let cover = if n3 > 0.0 { cover as f64 / n3 } else { 1.0 };
    HomogeneityReport { eps, cover, homogeneous: cover >= 1.0 - eps - 1e-12, measured, worst }
}

/// Fraction of `V³` in μ-homogeneous triads of a decomposition.
pub fn decomposition_homogeneity(h: &Hypergraph3, p: &Decomposition, mu: f64) -> f64 {
    let n3 = (p.n() * p.n() * p.n()) as f64;
    let vols = triad_volumes(h, p);
    let hom: u64 = vols.iter().filter(|(_, k, f)| hom_class(*f as f64 / *k as f64, mu) != HomClass::Neither).map(|v| v.1).sum();
    if n3 > 0.0 {
        hom as f64 / n3
    } else {
        1.0
    }
}

/// Lifts an ε-homogeneous partition to the `(t, 1)` decomposition of full products and checks
/// that it is ε-homogeneous as a decomposition.
pub fn lift_homogeneous_partition(h: &Hypergraph3, q: &VertexPartition, eps: f64) -> Result<Decomposition> {
    let rep = partition_homogeneity(h, q, eps);
    if !rep.homogeneous {
        let detail = rep.worst.map(|(t, d)| format!("; densest violating triple {t:?} at density {d:.4}")).unwrap_or_default();
        return precondition(format!("partition is not {eps}-homogeneous (cover {:.4}){detail}", rep.cover));
    }
    let d = Decomposition::from_products(q.clone());
    let cover = decomposition_homogeneity(h, &d, eps);
    if cover < 1.0 - eps - 1e-12 {
        return Err(Error::Structural(format!("lifted decomposition covers only {cover:.4} homogeneously")));
    }
    Ok(d)
}

#[derive(Clone, Debug, Serialize)]
pub struct Extraction {
    pub partition: VertexPartition,
    /// `|S| / n³` for `S` the union of `K₃` over non-trivial regular triads.
    pub covered: f64,
    pub sigma: Vec<[usize; 3]>,
    /// Fraction of `V³` in part triples almost covered by `S`.
    pub sigma_cover: f64,
    /// Majority side (0 or 1) of the regular triads inside each triple of `sigma`.
    pub sides: Vec<u8>,
    pub measured_homogeneity: f64,
}

/// Reads the vertex partition off a regular decomposition and measures how homogeneous it is.
pub fn extract_homogeneous_partition(h: &Hypergraph3, p: &Decomposition, eps1: f64, eps2: f64) -> Result<Extraction> {
    let audit = decomposition_audit(h, p, eps1, eps2, eps1)?;
    let t = p.t();
    let n3 = (p.n() * p.n() * p.n()) as f64;
    let sizes = p.partition().sizes();
    let mut s_vol = vec![0u64; t * t * t];
    let mut one_vol = vec![0u64; t * t * t];
    for a in audit.triads.iter().filter(|a| a.nontrivial && a.dev23_pass) {
        let idx = (a.index.i * t + a.index.j) * t + a.index.k;
        s_vol[idx] += a.k3;
        if a.density >= 0.5 {
            one_vol[idx] += a.k3;
        }
    }
    let thr = 1.0 - 2.0 * eps1.sqrt();
    let mut sigma = Vec::new();
    let mut sides = Vec::new();
    let mut sigma_vol = 0usize;
    for i in 0..t {
        for j in 0..t {
            for k in 0..t {
                let idx = (i * t + j) * t + k;
                let vol = sizes[i] * sizes[j] * sizes[k];
                if s_vol[idx] as f64 >= thr * vol as f64 {
                    sigma.push([i, j, k]);
                    sides.push(u8::from(2 * one_vol[idx] >= s_vol[idx]));
                    sigma_vol += vol;
                }
            }
        }
    }
    let covered: u64 = s_vol.iter().sum();
    let hom = partition_homogeneity(h, p.partition(), eps1);
    Ok(Extraction {
        partition: p.partition().clone(),
        covered: covered as f64 / n3,
        sigma,
        sigma_cover: sigma_vol as f64 / n3,
        sides,
        measured_homogeneity: hom.measured,
    })
}

/// Parts `Y` with `|A ∩ Y| ≥ (1 − a)|Y|` and the size of their union.
pub fn averaging_cover(p: &VertexPartition, a_set: &Bits, a: f64) -> (Vec<usize>, usize) {
    let mut sigma = Vec::new();
    let mut covered = 0;
    for (i, part) in p.parts().iter().enumerate() {
        let inside = part.iter().filter(|&&v| a_set.get(v)).count();
        if inside as f64 >= (1.0 - a) * part.len() as f64 - 1e-12 {
            sigma.push(i);
            covered += part.len();
        }
    }
    (sigma, covered)
}

pub const HOM_PROBE_CAP: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct HomProbe {
    pub eps: f64,
    pub t_max: usize,
    /// Smallest part count admitting an ε-homogeneous partition, with a witness.
    pub found: Option<(usize, VertexPartition)>,
    pub partitions_checked: u64,
}

/// Exhaustive search over set partitions with at most `t_max` parts.
pub fn min_hom_partition_probe(h: &Hypergraph3, eps: f64, t_max: usize) -> Result<HomProbe> {
    let n = h.n();
    if n > HOM_PROBE_CAP {
        return capacity(format!("exhaustive probe limited to {HOM_PROBE_CAP} vertices, got {n}"));
    }
    let mut checked = 0u64;
    if n == 0 {
        return Ok(HomProbe { eps, t_max, found: Some((0, VertexPartition::trivial(0))), partitions_checked: 0 });
    }
    for t in 1..=t_max.min(n) {
        let mut assign = vec![0usize; n];
        let mut hit = None;
        set_partitions(&mut assign, 1, 1, t, &mut |a| {
            checked += 1;
            let p = VertexPartition::from_assignment(a).expect("restricted growth string");
            if partition_homogeneity(h, &p, eps).homogeneous {
                hit = Some(p);
                true
            } else {
                false
            }
        });
        if let Some(p) = hit {
            return Ok(HomProbe { eps, t_max, found: Some((t, p)), partitions_checked: checked });
        }
    }
    Ok(HomProbe { eps, t_max, found: None, partitions_checked: checked })
}

/// Restricted growth strings with exactly `t` blocks; stops when `visit` returns true.
fn set_partitions(a: &mut [usize], i: usize, used: usize, t: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let n = a.len();
    if i == n {
        return used == t && visit(a);
    }
    if t - used > n - i {
        return false;
    }
    for b in 0..=used.min(t - 1) {
        a[i] = b;
        let u = if b == used { used + 1 } else { used };
        if set_partitions(a, i + 1, u, t, visit) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::random_3graph;

    #[test]
    fn trivial_decomposition_has_one_triad() {
        let p = Decomposition::trivial(5);
        let ts = triads_of(&p);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].1.k3_count(), 125);
    }

    #[test]
    fn two_parts_give_eight_triads() {
        let p = Decomposition::from_products(VertexPartition::equipartition(6, 2).unwrap());
        let ts = triads_of(&p);
        assert_eq!(ts.len(), 8);
        assert_eq!(ts.iter().map(|t| t.1.k3_count()).sum::<u64>(), 216);
    }

    #[test]
    fn msd_of_trivial_is_density_squared() {
        let h = random_3graph(8, 0.5, 3).unwrap();
        let m = msd(&h, &Decomposition::trivial(8));
        let d = rat(6 * h.edge_count() as u64, 512);
        assert_eq!(m, &d * &d);
    }

    #[test]
    fn edgeless_stops_at_round_zero() {
        let h = Hypergraph3::empty(12);
        let (p, ledger) = strong_decompose(&h, 0.3, &Eps2Schedule::default(), &DecomposeCaps::default()).unwrap();
        assert!(ledger.is_complete());
        assert_eq!(ledger.rounds.len(), 1);
        assert_eq!(p.t(), 1);
    }

    #[test]
    fn probe_edgeless_is_one() {
        let r = min_hom_partition_probe(&Hypergraph3::empty(6), 0.1, 3).unwrap();
        assert_eq!(r.found.unwrap().0, 1);
    }

    #[test]
    fn homogeneity_measure_matches_verdicts() {
        let h = random_3graph(9, 0.3, 1).unwrap();
        let p = VertexPartition::equipartition(9, 3).unwrap();
        let r = partition_homogeneity(&h, &p, 0.5);
        assert!(partition_homogeneity(&h, &p, r.measured + 1e-9).homogeneous);
        if r.measured > 1e-6 {
            assert!(!partition_homogeneity(&h, &p, r.measured - 1e-6).homogeneous);
        }
    }

    #[test]
    fn set_partition_counts() {
        let mut c = 0;
        let mut a = vec![0; 5];
        set_partitions(&mut a, 1, 1, 2, &mut |_| {
            c += 1;
            false
        });
        assert_eq!(c, 15);
    }
}
