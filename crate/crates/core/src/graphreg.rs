//! Graph partitions: energy, an energy-increment partitioner (plain or multicolored),
//! conservative refinement checks and approximate common refinements.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{capacity, precondition, structural, Result};
use crate::par;
use crate::quasi::{dev2, rat, rat_of, size_floor};
use crate::structures::{lift_graph, Bigraph, Graph, VertexPartition};

fn part_masks(p: &VertexPartition) -> Vec<Bits> {
    p.parts().iter().map(|part| Bits::from_ones(p.n(), part.iter().copied())).collect()
}

/// Pair counts `|E_c ∩ (V_i × V_j)|` for an `n × n` pair set given by rows.
fn pair_counts(rows: &[Bits], p: &VertexPartition, masks: &[Bits]) -> Vec<u64> {
    let t = p.len();
    let mut out = vec![0u64; t * t];
    for (i, part) in p.parts().iter().enumerate() {
        for &u in part {
            for (j, m) in masks.iter().enumerate() {
                out[i * t + j] += rows[u].and_count(m);
            }
        }
    }
    out
}

/// `q_G(P) = Σ_{i<j} d²(V_i, V_j)|V_i||V_j| / |V|²`, exactly.
pub fn energy(g: &Graph, p: &VertexPartition) -> Result<BigRational> {
    if p.n() != g.n() {
        return structural("partition and graph have different vertex counts");
    }
    let rows: Vec<Bits> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
    let counts = pair_counts(&rows, p, &part_masks(p));
    let sizes = p.sizes();
    let t = p.len();
    let mut total = BigRational::zero();
    for i in 0..t {
        for j in i + 1..t {
            let c = counts[i * t + j];
            if c > 0 {
                total += rat(BigInt::from(c) * BigInt::from(c), BigInt::from(sizes[i] * sizes[j]));
            }
        }
    }
    let n = g.n() as u64;
    Ok(if n == 0 { total } else { total / BigRational::from_integer(BigInt::from(n * n)) })
}

/// Multicolor index `Σ_c Σ_{i,j} d_c²(V_i, V_j)|V_i||V_j| / |V|²` over all ordered part pairs.
pub fn colored_energy(colors: &[Bigraph], p: &VertexPartition) -> BigRational {
    let masks = part_masks(p);
    let sizes = p.sizes();
    let t = p.len();
    let per = par::map_slice(colors, |c| {
        let counts = pair_counts(c.rows(), p, &masks);
        let mut total = BigRational::zero();
        for i in 0..t {
            for j in 0..t {
                let k = counts[i * t + j];
                if k > 0 {
                    total += rat(BigInt::from(k) * BigInt::from(k), BigInt::from(sizes[i] * sizes[j]));
                }
            }
        }
        total
    });
    let n = p.n() as u64;
    let total: BigRational = per.into_iter().fold(BigRational::zero(), |a, b| a + b);
    if n == 0 {
        total
    } else {
        total / BigRational::from_integer(BigInt::from(n * n))
    }
}

/// Moves the fewest vertices needed to make `p` an equipartition with the same number of
/// parts. Larger parts keep the extra vertex; the lowest ids move first.
pub fn equitize(p: &VertexPartition) -> VertexPartition {
    if p.is_equipartition() {
        return p.clone();
    }
    let (n, t) = (p.n(), p.len());
    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by(|&a, &b| p.part(b).len().cmp(&p.part(a).len()).then(a.cmp(&b)));
    let mut target = vec![n / t; t];
    for &i in order.iter().take(n % t) {
        target[i] += 1;
    }
    let mut parts: Vec<Vec<usize>> = p.parts().to_vec();
    let mut pool = Vec::new();
    for (i, part) in parts.iter_mut().enumerate() {
        if part.len() > target[i] {
            let excess = part.len() - target[i];
            pool.extend(part.drain(..excess));
        }
    }
    pool.sort_unstable();
    let mut pool = pool.into_iter();
    for (i, part) in parts.iter_mut().enumerate() {
        while part.len() < target[i] {
            part.push(pool.next().expect("sizes balance"));
        }
    }
    VertexPartition::new(n, parts).expect("equitization keeps a partition")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionStatus {
    Regular,
    AuditFailedButNoIncrement,
    RoundCap,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub parts: usize,
    pub energy: f64,
    pub energy_exact: String,
    /// `Σ |V_i||V_j| / n²` over ordered pairs failing the audit.
    pub failing_fraction: f64,
    pub action: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnergyLedger {
    pub eps: f64,
    pub round_cap: usize,
    pub rounds: Vec<RoundRecord>,
    pub status: PartitionStatus,
    pub final_parts: usize,
}

impl EnergyLedger {
    /// Refinement rounds actually committed.
    pub fn refinements(&self) -> usize {
        self.rounds.len().saturating_sub(1)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("round,parts,energy,failing_fraction,action\n");
        for r in &self.rounds {
            s += &format!("{},{},{},{},{}\n", r.round, r.parts, r.energy, r.failing_fraction, r.action);
        }
        s
    }
}

/// `⌈8ε⁻⁵⌉`.
pub fn round_cap(eps: f64) -> usize {
    (8.0 * eps.powi(-5) - 1e-9).ceil() as usize
}

struct Failure {
    pair: (usize, usize),
    x_sub: Vec<usize>,
    y_sub: Vec<usize>,
}

/// For a failing restricted pair set, the row maximizing its deviation row-sum and the
/// resulting witness sets `X′ = {u : T(u*, u) > 0}`, `Y′ = N(u*) ∩ Y`.
fn deviation_witness(b: &Bigraph) -> (Vec<usize>, Vec<usize>) {
    let rows = b.rows();
    let (nx, ny) = (rows.len(), b.right().len());
    let d = b.edge_count() as f64 / (nx * ny) as f64;
    let deg: Vec<f64> = rows.iter().map(|r| r.count() as f64).collect();
    let t = |a: usize, c: usize| rows[a].and_count(&rows[c]) as f64 - d * (deg[a] + deg[c]) + d * d * ny as f64;
    let score = par::map_range(nx, |a| (0..nx).map(|c| t(a, c).powi(2)).sum::<f64>());
    let star = (0..nx).fold(0, |best, a| if score[a] > score[best] { a } else { best });
    let xs: Vec<usize> = (0..nx).filter(|&c| t(star, c) > 0.0).map(|c| b.left()[c]).collect();
    let ys: Vec<usize> = rows[star].ones().map(|j| b.right()[j]).collect();
    (xs, ys)
}

/// Ordered pairs `(i, j)` (diagonal included) where some color restricted to `V_i × V_j`
/// fails `dev₂(ε)` at its own density, with one witness per failing pair.
fn audit_pairs(colors: &[Bigraph], p: &VertexPartition, eps: f64) -> Vec<Failure> {
    let t = p.len();
    let masks = part_masks(p);
    // Supports let most (color, pair) combinations be skipped without restriction.
    let supports: Vec<(Bits, Bits)> = colors
        .iter()
        .map(|c| {
            let left = Bits::from_ones(p.n(), (0..c.rows().len()).filter(|&u| !c.row(u).is_empty()).map(|u| c.left()[u]));
            let mut right = Bits::new(p.n());
            for r in c.rows() {
                right.or_assign(r);
            }
            (left, right)
        })
        .collect();
    let found = par::map_range(t * t, |idx| {
        let (i, j) = (idx / t, idx % t);
        for (c, (l, r)) in colors.iter().zip(&supports) {
            if l.and_count(&masks[i]) == 0 || r.and_count(&masks[j]) == 0 {
                continue;
            }
            let sub = c.restrict(p.part(i), p.part(j));
            if sub.edge_count() == 0 {
                continue;
            }
            if !dev2(&sub, None).passes(eps) {
                let (x_sub, y_sub) = deviation_witness(&sub);
                return Some(Failure { pair: (i, j), x_sub, y_sub });
            }
        }
        None
    });
    found.into_iter().flatten().collect()
}

/// Splits every part into the same number of consecutive pieces after sorting its vertices by
/// witness atom, so the result stays an equipartition refining `p`.
fn refine_by_witnesses(p: &VertexPartition, failures: &[Failure]) -> Result<Option<VertexPartition>> {
    let n = p.n();
    let mut sig: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (w, f) in failures.iter().enumerate() {
        for &v in f.x_sub.iter().chain(&f.y_sub) {
            if sig[v].last() != Some(&(w as u32)) {
                sig[v].push(w as u32);
            }
        }
    }
    let mut atoms_of: Vec<Vec<usize>> = Vec::with_capacity(p.len());
    let mut k = 1;
    for part in p.parts() {
        let mut ids: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut atom = Vec::with_capacity(part.len());
        for &v in part {
            let next = ids.len();
            atom.push(*ids.entry(sig[v].clone()).or_insert(next));
        }
        k = k.max(ids.len());
        atoms_of.push(atom);
    }
    if k == 1 {
        return Ok(None);
    }
    let smallest = p.sizes().into_iter().min().unwrap_or(0);
    if k > smallest {
        return capacity(format!("refinement needs {k} pieces per part but the smallest part has {smallest} vertices"));
    }
    let mut parts = Vec::with_capacity(p.len() * k);
    for (part, atom) in p.parts().iter().zip(&atoms_of) {
        let mut order: Vec<(usize, usize)> = atom.iter().copied().zip(part.iter().copied()).collect();
        order.sort_unstable();
        let s = part.len();
        let mut start = 0;
        for piece in 0..k {
            let size = s / k + usize::from(piece < s % k);
            parts.push(order[start..start + size].iter().map(|&(_, v)| v).collect());
            start += size;
        }
    }
    Ok(Some(VertexPartition::new(n, parts)?))
}

/// Energy-increment partitioner. Without `colors` the graph's ordered pair set is the single
/// color and the ledger tracks the graph energy; with colors it tracks the multicolor index.
pub fn szemeredi_partition(
    g: &Graph,
    eps: f64,
    initial: &VertexPartition,
    colors: Option<&[Bigraph]>,
) -> Result<(VertexPartition, EnergyLedger)> {
    if !(eps > 0.0 && eps < 1.0) {
        return precondition(format!("ε = {eps} outside (0, 1)"));
    }
    if initial.n() != g.n() {
        return structural("initial partition does not cover the graph");
    }
    let own;
    let colors: &[Bigraph] = match colors {
        Some(c) => c,
        None => {
            own = [lift_graph(g)];
            &own
        }
    };
    for c in colors {
        if c.left().len() != g.n() || c.right().len() != g.n() {
            return structural("colors must be pair sets on V × V");
        }
    }
    let plain = colors.len() == 1 && colors[0] == lift_graph(g);
    let index = |p: &VertexPartition| -> Result<BigRational> {
        if plain {
            energy(g, p)
        } else {
            Ok(colored_energy(colors, p))
        }
    };
    let cap = round_cap(eps);
    let step = rat_of(eps.powi(5) / 8.0);
    let n2 = (g.n() * g.n()) as f64;
    let mut p = equitize(initial);
    let mut q = index(&p)?;
    let mut rounds = vec![RoundRecord {
        round: 0,
        parts: p.len(),
        energy: q.to_f64().unwrap_or(0.0),
        energy_exact: q.to_string(),
        failing_fraction: f64::NAN,
        action: if p == *initial { "initial".into() } else { "equitized".into() },
    }];
    let mut status = PartitionStatus::RoundCap;
    for round in 1..=cap + 1 {
        let failures = audit_pairs(colors, &p, eps);
        let vol: usize = failures.iter().map(|f| p.part(f.pair.0).len() * p.part(f.pair.1).len()).sum();
        let frac = if n2 > 0.0 { vol as f64 / n2 } else { 0.0 };
        rounds.last_mut().expect("ledger has round 0").failing_fraction = frac;
        if frac <= eps {
            status = PartitionStatus::Regular;
            break;
        }
        if round > cap {
            break;
        }
        let next = match refine_by_witnesses(&p, &failures)? {
            Some(next) => next,
            None => {
                status = PartitionStatus::AuditFailedButNoIncrement;
                break;
            }
        };
        let q_next = index(&next)?;
        if &q_next - &q < step {
            status = PartitionStatus::AuditFailedButNoIncrement;
            break;
        }
        p = next;
        q = q_next;
        rounds.push(RoundRecord {
            round,
            parts: p.len(),
            energy: q.to_f64().unwrap_or(0.0),
            energy_exact: q.to_string(),
            failing_fraction: f64::NAN,
            action: format!("split {} failing pairs", failures.len()),
        });
    }
    let ledger = EnergyLedger { eps, round_cap: cap, rounds, status, final_parts: p.len() };
    Ok((p, ledger))
}

// ---------------------------------------------------------------------------
// sampled audit

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionAudit {
    pub eps: f64,
    pub samples: usize,
    pub violations: usize,
    /// First violating `(part i, part j, X′, Y′)`.
    pub witness: Option<(usize, usize, Vec<usize>, Vec<usize>)>,
    pub worst: f64,
    pub probabilistic: bool,
}

/// Samples ordered part pairs with probability proportional to `|V_i||V_j|`, then subsets at the
/// ε-fraction size floor, and checks `|d(V_i, V_j) − d(X′, Y′)| ≤ ε`.
pub fn sampled_partition_audit(g: &Graph, p: &VertexPartition, eps: f64, samples: usize, seed: u64) -> PartitionAudit {
    let t = p.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let masks = part_masks(p);
    let rows: Vec<Bits> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
    let counts = pair_counts(&rows, p, &masks);
    let sizes = p.sizes();
    let weights: Vec<usize> = (0..t * t).map(|idx| sizes[idx / t] * sizes[idx % t]).collect();
    let total: usize = weights.iter().sum();
    let mut violations = 0;
    let mut witness = None;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let mut r = rng.gen_range(0..total.max(1));
        let mut idx = 0;
        while idx + 1 < weights.len() && r >= weights[idx] {
            r -= weights[idx];
            idx += 1;
        }
        let (i, j) = (idx / t, idx % t);
        let (xi, yj) = (p.part(i), p.part(j));
        let d = counts[idx] as f64 / (xi.len() * yj.len()) as f64;
        let mx = size_floor(eps, xi.len());
        let my = size_floor(eps, yj.len());
        let xs: Vec<usize> = sample(&mut rng, xi.len(), mx).into_iter().map(|a| xi[a]).collect();
        let ys: Vec<usize> = sample(&mut rng, yj.len(), my).into_iter().map(|b| yj[b]).collect();
        let ym = Bits::from_ones(g.n(), ys.iter().copied());
        let num: u64 = xs.iter().map(|&u| rows[u].and_count(&ym)).sum();
        let dev = (num as f64 / (mx * my) as f64 - d).abs();
        worst = worst.max(dev);
        if dev > eps {
            violations += 1;
            if witness.is_none() {
                let (mut xs, mut ys) = (xs, ys);
                xs.sort_unstable();
                ys.sort_unstable();
                witness = Some((i, j, xs, ys));
            }
        }
    }
    PartitionAudit { eps, samples, violations, witness, worst, probabilistic: violations == 0 }
}

// ---------------------------------------------------------------------------
// conservative refinements

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConservativeReport {
    pub eps: f64,
    /// Ordered fine pairs (diagonal included) whose density is within ε of the coarse pair's.
    pub matching_pairs: usize,
    pub total_pairs: usize,
    pub conservative: bool,
    pub fine_energy: f64,
    pub coarse_energy: f64,
    pub fine_energy_exact: String,
    pub coarse_energy_exact: String,
    /// `q(U) < q(Z) + 101ε`, checked exactly; `None` when the density condition fails.
    pub index_inequality: Option<bool>,
    pub index_gap: f64,
}

pub fn conservative_check(g: &Graph, fine: &VertexPartition, coarse: &VertexPartition, eps: f64) -> Result<ConservativeReport> {
    let parent = match fine.parent_map(coarse) {
        Some(m) => m,
        None => return precondition("the fine partition does not refine the coarse one"),
    };
    if !fine.is_equipartition() || !coarse.is_equipartition() {
        return precondition("both partitions must be equipartitions");
    }
    let rows: Vec<Bits> = (0..g.n()).map(|v| g.neighbors(v).clone()).collect();
    let fc = pair_counts(&rows, fine, &part_masks(fine));
    let cc = pair_counts(&rows, coarse, &part_masks(coarse));
    let (t, s) = (fine.len(), coarse.len());
    let (fs, cs) = (fine.sizes(), coarse.sizes());
    let e = rat_of(eps);
    let mut matching = 0;
    for i in 0..t {
        for j in 0..t {
            let (a, b) = (parent[i], parent[j]);
            let df = rat(fc[i * t + j], (fs[i] * fs[j]) as u64);
            let dc = rat(cc[a * s + b], (cs[a] * cs[b]) as u64);
            let diff = if df > dc { df - dc } else { dc - df };
            if diff <= e {
                matching += 1;
            }
        }
    }
    let total = t * t;
    let conservative = matching as f64 >= (1.0 - eps) * total as f64 - 1e-9;
    let qf = energy(g, fine)?;
    let qc = energy(g, coarse)?;
    let index_inequality = conservative.then(|| qf < &qc + rat_of(101.0 * eps));
    Ok(ConservativeReport {
        eps,
        matching_pairs: matching,
        total_pairs: total,
        conservative,
        fine_energy: qf.to_f64().unwrap_or(0.0),
        coarse_energy: qc.to_f64().unwrap_or(0.0),
        index_gap: (&qf - &qc).to_f64().unwrap_or(0.0),
        fine_energy_exact: qf.to_string(),
        coarse_energy_exact: qc.to_string(),
        index_inequality,
    })
}

// ---------------------------------------------------------------------------
// approximate common refinement

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RefinementRelation {
    pub eps: f64,
    /// For each fine part, the coarse part it is ε-contained in.
    pub assignment: Vec<usize>,
    /// `|X ∖ Y| / |X|` for each fine part `X` and its assigned `Y`.
    pub excess: Vec<f64>,
    pub holds: bool,
}

/// Assigns each part of `fine` to the coarse part it overlaps most and checks `|X ∖ Y| ≤ ε|X|`.
pub fn eps_containment(fine: &VertexPartition, coarse: &VertexPartition, eps: f64) -> RefinementRelation {
    let mut assignment = Vec::with_capacity(fine.len());
    let mut excess = Vec::with_capacity(fine.len());
    let mut holds = true;
    for part in fine.parts() {
        let mut overlap: HashMap<usize, usize> = HashMap::new();
        for &v in part {
            *overlap.entry(coarse.part_of(v)).or_insert(0) += 1;
        }
        let (best, inside) = overlap.into_iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))).expect("nonempty part");
        let out = part.len() - inside;
        holds &= (out as f64) <= eps * part.len() as f64 + 1e-9;
        assignment.push(best);
        excess.push(out as f64 / part.len() as f64);
    }
    RefinementRelation { eps, assignment, excess, holds }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommonRefinement {
    pub partition: VertexPartition,
    pub size_bound: f64,
    pub to_first: RefinementRelation,
    pub to_second: RefinementRelation,
}

/// Lays out `m` equal blocks so that each block draws at least `size − ⌊ε·size⌋` vertices from
/// one intersection `X_i ∩ Y_j`; the rest are pooled in (part of `P`, part of `P′`, id) order and
/// placed preferring blocks homed in the same part of `P`.
fn home_fill(cells: &[(usize, Vec<usize>)], n: usize, m: usize, eps: f64) -> Option<Vec<Vec<usize>>> {
    let sizes: Vec<usize> = (0..m).map(|v| n / m + usize::from(v < n % m)).collect();
    let need = |size: usize| size - (eps * size as f64 + 1e-9).floor() as usize;
    let mut remaining: Vec<usize> = cells.iter().map(|c| c.1.len()).collect();
    let mut owner = Vec::with_capacity(m);
    for &size in &sizes {
        let c = (0..cells.len()).fold(0, |b, c| if remaining[c] > remaining[b] { c } else { b });
        if remaining[c] < need(size) {
            return None;
        }
        remaining[c] -= need(size);
        owner.push(c);
    }
    let mut next = vec![0usize; cells.len()];
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (b, &c) in owner.iter().enumerate() {
        let k = need(sizes[b]);
        blocks[b].extend_from_slice(&cells[c].1[next[c]..next[c] + k]);
        next[c] += k;
    }
    for (b, &c) in owner.iter().enumerate() {
        let k = (sizes[b] - blocks[b].len()).min(cells[c].1.len() - next[c]);
        blocks[b].extend_from_slice(&cells[c].1[next[c]..next[c] + k]);
        next[c] += k;
    }
    for (c, (key, cell)) in cells.iter().enumerate() {
        for &v in &cell[next[c]..] {
            let open = |b: &usize| blocks[*b].len() < sizes[*b];
            let same = (0..m).filter(open).find(|&b| cells[owner[b]].0 == *key);
            let b = same.or_else(|| (0..m).find(open)).expect("block sizes sum to n");
            blocks[b].push(v);
        }
    }
    Some(blocks)
}

/// Equipartition `Q` with `|Q| ≤ ε⁻¹|P||P′|` that ε-refines both. Block counts are tried starting
/// from the one given by blocks of size `⌈εn/ts⌉`, then downward from the size bound.
pub fn approx_common_refinement(p: &VertexPartition, q: &VertexPartition, eps: f64) -> Result<CommonRefinement> {
    if p.n() != q.n() {
        return structural("partitions of different ground sets");
    }
    if !(eps > 0.0 && eps < 1.0) {
        return precondition(format!("ε = {eps} outside (0, 1)"));
    }
    let (n, s, t) = (p.n(), p.len(), q.len());
    let mut cells: Vec<(usize, Vec<usize>)> = (0..s * t).map(|c| (c / t, Vec::new())).collect();
    for v in 0..n {
        cells[p.part_of(v) * t + q.part_of(v)].1.push(v);
    }
    let bound = (s * t) as f64 / eps;
    let max_m = ((bound + 1e-9).floor() as usize).min(n);
    let block = ((eps * n as f64 / (s * t) as f64) - 1e-9).ceil().max(1.0) as usize;
    let first = cells.iter().map(|c| c.1.len() / block).sum::<usize>().min(max_m);
    let candidates = std::iter::once(first).chain((1..=max_m).rev()).filter(|&m| m > 0);
    for m in candidates {
        let Some(blocks) = home_fill(&cells, n, m, eps) else { continue };
        let partition = VertexPartition::new(n, blocks)?;
        let to_first = eps_containment(&partition, p, eps);
        let to_second = eps_containment(&partition, q, eps);
        if to_first.holds && to_second.holds {
            return Ok(CommonRefinement { partition, size_bound: bound, to_first, to_second });
        }
    }
    capacity(format!("no equipartition with at most {max_m} parts ε-refines both partitions"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::random_graph;

    #[test]
    fn energy_examples() {
        let g = random_graph(10, 0.5, 2).unwrap();
        assert!(energy(&g, &VertexPartition::trivial(10)).unwrap().is_zero());
        let kb = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let halves = VertexPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(energy(&kb, &halves).unwrap(), rat(1, 4));
    }

    #[test]
    fn complete_and_empty_graphs_need_no_rounds() {
        for g in [Graph::complete(24), Graph::empty(24)] {
            let init = VertexPartition::equipartition(24, 3).unwrap();
            let (p, ledger) = szemeredi_partition(&g, 0.05, &init, None).unwrap();
            assert_eq!(p, init);
            assert_eq!(ledger.refinements(), 0);
            assert_eq!(ledger.status, PartitionStatus::Regular);
        }
    }

    #[test]
    fn planted_bipartition_is_found() {
        // Complete bipartite between even and odd vertices; contiguous blocks mix both sides.
        let n = 40;
        let g = Graph::from_edges(n, (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x < y && (x + y) % 2 == 1)).unwrap();
        let init = VertexPartition::equipartition(n, 4).unwrap();
        let (p, ledger) = szemeredi_partition(&g, 0.05, &init, None).unwrap();
        assert!(ledger.refinements() >= 1, "{ledger:?}");
        assert_eq!(ledger.status, PartitionStatus::Regular);
        let q: Vec<BigRational> = ledger.rounds.iter().map(|r| r.energy_exact.parse().unwrap()).collect();
        assert!(q.windows(2).all(|w| w[1] > w[0]));
        for part in p.parts() {
            assert!(part.iter().all(|&v| v % 2 == part[0] % 2), "{:?}", p.parts());
        }
    }

    #[test]
    fn equitize_moves_lowest_ids() {
        let p = VertexPartition::new(6, vec![vec![0, 1, 2, 3], vec![4], vec![5]]).unwrap();
        let e = equitize(&p);
        assert!(e.is_equipartition());
        assert_eq!(e.parts(), &[vec![2, 3], vec![0, 4], vec![1, 5]]);
    }

    #[test]
    fn identical_partitions_are_conservative() {
        let g = random_graph(12, 0.5, 4).unwrap();
        let z = VertexPartition::equipartition(12, 3).unwrap();
        let r = conservative_check(&g, &z, &z, 0.01).unwrap();
        assert!(r.conservative);
        assert_eq!(r.index_gap, 0.0);
        assert_eq!(r.index_inequality, Some(true));
    }

    #[test]
    fn common_refinement_of_trivial_partitions() {
        let v = VertexPartition::trivial(20);
        let r = approx_common_refinement(&v, &v, 0.25).unwrap();
        assert!(r.partition.is_equipartition());
        assert!(r.partition.len() as f64 <= r.size_bound);
        assert!(r.to_first.holds && r.to_second.holds);
    }
}
