//! Quasirandomness functionals and regularity predicates.
//!
//! `dev2` and `dev23` are evaluated by factorization: the inner sum over the last
//! coordinate is a popcount expression, and squares are accumulated exactly in
//! 256-bit integers. The raw sums are scaled by a power of the density denominator
//! so that all intermediate values are integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::count::{full_density, DensityValue};
use crate::error::{capacity, precondition, Error, Result};
use crate::par;
use crate::structures::{position_map, underlies, Bigraph, Hypergraph3, Triad, Trigraph};
use crate::wide::SquareSum;

pub const DEFAULT_SAMPLES: usize = 2000;
pub const EXACT_REGULARITY_CAP: usize = 14;
pub const DISC_EXACT_CAP: usize = 10;
pub const CENSUS_CAP: usize = 6;

/// An exact rational with a floating rendering for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatValue {
    pub exact: String,
    pub value: f64,
}

impl From<&BigRational> for RatValue {
    fn from(r: &BigRational) -> Self {
        RatValue { exact: r.to_string(), value: r.to_f64().unwrap_or(f64::INFINITY) }
    }
}

pub(crate) fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub(crate) fn rat_of(eps: f64) -> BigRational {
    BigRational::from_float(eps).expect("thresholds must be finite")
}

/// Sum of squares; exact unless an intermediate overflowed 128-bit integers.
#[derive(Clone, Debug, PartialEq)]
pub enum RawSum {
    Exact(BigRational),
    Approx(f64),
}

impl RawSum {
    pub fn value(&self) -> f64 {
        match self {
            RawSum::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
            RawSum::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            RawSum::Exact(r) => Some(r),
            RawSum::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RawSum::Exact(r) => r.is_zero(),
            RawSum::Approx(x) => *x == 0.0,
        }
    }

    fn le(&self, bound: &BigRational) -> bool {
        match self {
            RawSum::Exact(r) => r <= bound,
            RawSum::Approx(x) => *x <= bound.to_f64().unwrap_or(f64::INFINITY) * (1.0 + 1e-12),
        }
    }
}

impl Serialize for RawSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            exact: Option<&'a str>,
            value: f64,
        }
        let e = self.exact().map(|r| r.to_string());
        Repr { exact: e.as_deref(), value: self.value() }.serialize(s)
    }
}

fn split_rational(d: &BigRational) -> (BigInt, BigInt) {
    (d.numer().clone(), d.denom().clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct DeviationReport {
    pub raw_sum: RawSum,
    /// `|U|²|W|²`.
    pub normalizer: String,
    pub normalized: f64,
    pub density: DensityValue,
    pub d_used: RatValue,
    pub degenerate: bool,
    pub verdict_at: Vec<(f64, bool)>,
    #[serde(skip)]
    d_exact: BigRational,
    #[serde(skip)]
    norm_exact: BigRational,
}

impl DeviationReport {
    /// The "has dev₂(ε, d)" predicate: `|d_B − d| ≤ ε` and `raw ≤ ε|U|²|W|²`.
    pub fn passes(&self, eps: f64) -> bool {
        if self.degenerate {
            return true;
        }
        let e = rat_of(eps);
        let gap = (self.density.ratio() - &self.d_exact).abs();
        gap <= e && self.raw_sum.le(&(e * &self.norm_exact))
    }

    /// Smallest float `ε` at which `passes(ε)` holds.
    pub fn measured_epsilon(&self) -> f64 {
        if self.degenerate {
            return 0.0;
        }
        let gap = (self.density.ratio() - &self.d_exact).abs().to_f64().unwrap_or(0.0);
        let mut e = gap.max(self.normalized);
        while !self.passes(e) {
            e = e.next_up();
        }
        e
    }

    pub fn with_thresholds(mut self, eps: &[f64]) -> Self {
        self.verdict_at = eps.iter().map(|&e| (e, self.passes(e))).collect();
        self
    }
}

fn dev2_exact(rows: &[Bits], w: usize, p: &BigInt, q: &BigInt) -> Option<BigRational> {
    let (p, q) = (p.to_i128()?, q.to_i128()?);
    let q2 = q.checked_mul(q)?;
    let pq = p.checked_mul(q)?;
    let p2w = p.checked_mul(p)?.checked_mul(w as i128)?;
    let deg: Vec<i128> = rows.iter().map(|r| r.count() as i128).collect();
    let n = rows.len();
    let parts = par::map_range(n, |u0| -> Option<SquareSum> {
        let mut acc = SquareSum::default();
        for u1 in u0..n {
            let c = rows[u0].and_count(&rows[u1]) as i128;
            let t = q2
                .checked_mul(c)?
                .checked_sub(pq.checked_mul(deg[u0] + deg[u1])?)?
                .checked_add(p2w)?;
            acc.add_square(t, if u0 == u1 { 1 } else { 2 });
        }
        Some(acc)
    });
    let mut total = SquareSum::default();
    for s in parts {
        total.merge(&s?);
    }
    let q4 = BigInt::from(q).pow(4);
    Some(BigRational::new(BigInt::from(total.to_biguint()), q4))
}

fn dev2_approx(rows: &[Bits], w: usize, d: f64) -> f64 {
    let deg: Vec<f64> = rows.iter().map(|r| r.count() as f64).collect();
    let n = rows.len();
    par::map_range(n, |u0| {
        (u0..n)
            .map(|u1| {
                let c = rows[u0].and_count(&rows[u1]) as f64;
                let t = c - d * (deg[u0] + deg[u1]) + d * d * w as f64;
                t * t * if u0 == u1 { 1.0 } else { 2.0 }
            })
            .sum::<f64>()
    })
    .into_iter()
    .sum()
}

/// `Σ_{u₀,u₁} (Σ_w g(u₀,w) g(u₁,w))²` with `g = 1 − d` on pairs and `−d` off them.
/// `d` defaults to the bigraph's own density.
pub fn dev2(b: &Bigraph, d: Option<&BigRational>) -> DeviationReport {
    let density = full_density(b);
    let d_exact = d.cloned().unwrap_or_else(|| density.ratio());
    let (u, w) = (b.left().len(), b.right().len());
    let norm = BigInt::from((u * u) as u128 * (w * w) as u128);
    let norm_exact = BigRational::from_integer(norm.clone());
    if u == 0 || w == 0 {
        return DeviationReport {
            raw_sum: RawSum::Exact(BigRational::zero()),
            normalizer: norm.to_string(),
            normalized: 0.0,
            density,
            d_used: RatValue::from(&d_exact),
            degenerate: true,
            verdict_at: Vec::new(),
            d_exact,
            norm_exact,
        };
    }
    let (p, q) = split_rational(&d_exact);
    let raw_sum = match dev2_exact(b.rows(), w, &p, &q) {
        Some(r) => RawSum::Exact(r),
        None => RawSum::Approx(dev2_approx(b.rows(), w, d_exact.to_f64().unwrap_or(0.0))),
    };
    let normalized = raw_sum.value() / norm_exact.to_f64().unwrap_or(f64::INFINITY);
    DeviationReport {
        raw_sum,
        normalizer: norm.to_string(),
        normalized,
        density,
        d_used: RatValue::from(&d_exact),
        degenerate: false,
        verdict_at: Vec::new(),
        d_exact,
        norm_exact,
    }
}

/// `has dev₂(ε, d)` with `d` the bigraph's own density.
pub fn has_dev2(b: &Bigraph, eps: f64) -> bool {
    dev2(b, None).passes(eps)
}

#[derive(Clone, Debug, Serialize)]
pub struct Dev23Report {
    pub raw_sum: RawSum,
    /// `d_XY⁴ d_YZ⁴ d_XZ⁴ |X|²|Y|²|Z|²`.
    pub normalizer: RatValue,
    pub normalized: f64,
    /// `d_H(G)`.
    pub density: DensityValue,
    /// Components in the order XY, XZ, YZ, each measured against its own density.
    pub components: [DeviationReport; 3],
    /// Set when `K₃(G)` is empty.
    pub degenerate: bool,
    pub verdict_at: Vec<((f64, f64), bool)>,
    #[serde(skip)]
    norm_exact: BigRational,
}

impl Dev23Report {
    /// `dev₂,₃(ε₁, ε₂)`: components have `dev₂(ε₂)` and `raw ≤ ε₁ · normalizer`.
    pub fn passes(&self, eps1: f64, eps2: f64) -> bool {
        if self.degenerate {
            return true;
        }
        self.components.iter().all(|c| c.passes(eps2)) && self.raw_sum.le(&(rat_of(eps1) * &self.norm_exact))
    }

    pub fn with_thresholds(mut self, pairs: &[(f64, f64)]) -> Self {
        self.verdict_at = pairs.iter().map(|&(a, b)| ((a, b), self.passes(a, b))).collect();
        self
    }
}

/// Per-pair fibers of a triad: `k` = third-part positions closing a triangle,
/// `f` = those also in the trigraph.
struct Fibers {
    b: usize,
    index: Vec<u32>,
    k: Vec<Bits>,
    f: Vec<Bits>,
}

const NONE: u32 = u32::MAX;

impl Fibers {
    fn build(h: &Trigraph, g: &Triad) -> Fibers {
        let (a, b, _) = g.sizes();
        let mut index = vec![NONE; a * b];
        let (mut k, mut f) = (Vec::new(), Vec::new());
        for i in 0..a {
            for j in g.xy().row(i).ones() {
                index[i * b + j] = k.len() as u32;
                let kf = g.k3_fiber(i, j);
                f.push(h.fiber(i, j).and(&kf));
                k.push(kf);
            }
        }
        Fibers { b, index, k, f }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        self.index[i * self.b + j] as usize
    }
}

/// Counts of `z` in `common` lying in exactly `a` of the four fibers, `a = 0..=4`.
#[inline]
fn pattern_counts(common: &[u64], f: [&[u64]; 4]) -> [u64; 5] {
    let mut n = [0u64; 5];
    for (w, &c) in common.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (f0, f1, f2, f3) = (f[0][w] & c, f[1][w] & c, f[2][w] & c, f[3][w] & c);
        // bit-sliced counter s2 s1 s0
        let mut s0 = f0;
        let mut s1 = s0 & f1;
        s0 ^= f1;
        let mut c0 = s0 & f2;
        s0 ^= f2;
        let mut s2 = s1 & c0;
        s1 ^= c0;
        c0 = s0 & f3;
        s0 ^= f3;
        s2 ^= s1 & c0;
        s1 ^= c0;
        n[0] += (c & !s0 & !s1 & !s2).count_ones() as u64;
        n[1] += (s0 & !s1 & !s2).count_ones() as u64;
        n[2] += (!s0 & s1 & !s2 & c).count_ones() as u64;
        n[3] += (s0 & s1).count_ones() as u64;
        n[4] += s2.count_ones() as u64;
    }
    n
}

/// Visits every `(u₀ ≤ u₁, w₀ ≤ w₁)` with all four `(uᵢ, wⱼ)` in `E_XY` and a nonempty
/// common triangle fiber, passing the pattern counts and the symmetry weight.
fn for_each_quad<F>(g: &Triad, fib: &Fibers, u0: usize, mut visit: F) -> bool
where
    F: FnMut([u64; 5], u8) -> bool,
{
    let a = g.sizes().0;
    let words = fib.k.first().map_or(0, |b| b.words().len());
    let mut common = vec![0u64; words];
    for u1 in u0..a {
        let cs: Vec<usize> = g.xy().row(u0).and(g.xy().row(u1)).ones().collect();
        for (wi, &w0) in cs.iter().enumerate() {
            for &w1 in &cs[wi..] {
                let ids = [fib.at(u0, w0), fib.at(u0, w1), fib.at(u1, w0), fib.at(u1, w1)];
                let mut any = false;
                for (w, c) in common.iter_mut().enumerate() {
                    *c = fib.k[ids[0]].words()[w]
                        & fib.k[ids[1]].words()[w]
                        & fib.k[ids[2]].words()[w]
                        & fib.k[ids[3]].words()[w];
                    any |= *c != 0;
                }
                if !any {
                    continue;
                }
                let n = pattern_counts(
                    &common,
                    [fib.f[ids[0]].words(), fib.f[ids[1]].words(), fib.f[ids[2]].words(), fib.f[ids[3]].words()],
                );
                let weight = (if u0 == u1 { 1 } else { 2 }) * (if w0 == w1 { 1 } else { 2 });
                if !visit(n, weight) {
                    return false;
                }
            }
        }
    }
    true
}

fn dev23_exact(g: &Triad, fib: &Fibers, p: &BigInt, q: &BigInt) -> Option<BigRational> {
    let (p, q) = (p.to_i128()?, q.to_i128()?);
    // weight of a z lying in exactly a of the four fibers: (q − p)^a (−p)^(4−a)
    let mut wts = [0i128; 5];
    for (a, w) in wts.iter_mut().enumerate() {
        let mut v: i128 = 1;
        for _ in 0..a {
            v = v.checked_mul(q - p)?;
        }
        for _ in a..4 {
            v = v.checked_mul(-p)?;
        }
        *w = v;
    }
    let a = g.sizes().0;
    let parts = par::map_range(a, |u0| -> Option<SquareSum> {
        let mut acc = SquareSum::default();
        let mut ok = true;
        for_each_quad(g, fib, u0, |n, weight| {
            let mut s: i128 = 0;
            for k in 0..5 {
                match wts[k].checked_mul(n[k] as i128).and_then(|t| s.checked_add(t)) {
                    Some(v) => s = v,
                    None => {
                        ok = false;
                        return false;
                    }
                }
            }
            acc.add_square(s, weight);
            true
        });
        ok.then_some(acc)
    });
    let mut total = SquareSum::default();
    for s in parts {
        total.merge(&s?);
    }
    Some(BigRational::new(BigInt::from(total.to_biguint()), BigInt::from(q).pow(8)))
}

fn dev23_approx(g: &Triad, fib: &Fibers, d: f64) -> f64 {
    let wts: Vec<f64> = (0..5).map(|a| (1.0 - d).powi(a) * (-d).powi(4 - a)).collect();
    let a = g.sizes().0;
    par::map_range(a, |u0| {
        let mut acc = 0.0;
        for_each_quad(g, fib, u0, |n, weight| {
            let s: f64 = (0..5).map(|k| wts[k] * n[k] as f64).sum();
            acc += s * s * weight as f64;
            true
        });
        acc
    })
    .into_iter()
    .sum()
}

/// `Σ_{u₀,u₁,w₀,w₁} (Σ_z Π_{i,j} h(uᵢ,wⱼ,z))²` for a trigraph underlied by the triad,
/// with `h = 1 − d` on `F`, `−d` on `K₃(G) ∖ F`, 0 elsewhere, `d = d_H(G)`.
pub fn dev23(h: &Trigraph, g: &Triad) -> Result<Dev23Report> {
    if !underlies(g, h) {
        return precondition("the triad does not underlie the trigraph");
    }
    let fib = Fibers::build(h, g);
    let k3: u64 = fib.k.iter().map(Bits::count).sum();
    let fc: u64 = fib.f.iter().map(Bits::count).sum();
    let density = DensityValue::new(fc, k3);
    let components = [dev2(g.xy(), None), dev2(g.xz(), None), dev2(g.yz(), None)];
    let (x, y, z) = g.sizes();
    let mut norm = BigRational::from_integer(BigInt::from((x * x) as u128 * (y * y) as u128 * (z * z) as u128));
    for c in &components {
        norm *= c.density.ratio().pow(4);
    }
    if k3 == 0 {
        return Ok(Dev23Report {
            raw_sum: RawSum::Exact(BigRational::zero()),
            normalizer: RatValue::from(&norm),
            normalized: 0.0,
            density,
            components,
            degenerate: true,
            verdict_at: Vec::new(),
            norm_exact: norm,
        });
    }
    let d = density.ratio();
    let raw_sum = if d.is_zero() || d.is_one() {
        RawSum::Exact(BigRational::zero())
    } else {
        let (p, q) = split_rational(&d);
        match dev23_exact(g, &fib, &p, &q) {
            Some(r) => RawSum::Exact(r),
            None => RawSum::Approx(dev23_approx(g, &fib, density.value)),
        }
    };
    let nf = norm.to_f64().unwrap_or(0.0);
    let normalized = if nf > 0.0 { raw_sum.value() / nf } else { 0.0 };
    Ok(Dev23Report {
        raw_sum,
        normalizer: RatValue::from(&norm),
        normalized,
        density,
        components,
        degenerate: false,
        verdict_at: Vec::new(),
        norm_exact: norm,
    })
}

/// `dev23` of `H̄|G` for a 3-graph and a triad on its vertices.
pub fn dev23_of(h: &Hypergraph3, g: &Triad) -> Result<Dev23Report> {
    let t = Trigraph::from_hypergraph(h, g.parts().clone())?;
    let r = crate::structures::restrict_trigraph(&t, g)?;
    dev23(&r, g)
}

// ---------------------------------------------------------------------------
// disc₂,₃

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, Serialize)]
pub struct Disc23Report {
    pub mode: DiscMode,
    /// Subgraph pairs `G′_XY, G′_XZ, G′_YZ` realizing the defect, as vertex ids.
    pub witness: [Vec<(usize, usize)>; 3],
    /// `| |F ∩ K₃(G′)| − d_H(G)|K₃(G′)| |`.
    pub defect_raw: RatValue,
    /// `d_XY d_XZ d_YZ |X||Y||Z|`.
    pub normalizer: RatValue,
    pub defect: f64,
    /// Heuristic results only bound the true maximum from below.
    pub lower_bound: bool,
}

/// Dense view of a triad and an underlied trigraph with coordinates permutable.
struct Cube {
    n: [usize; 3],
    parts: [Vec<usize>; 3],
    /// integer weight `q·f − p` on `K₃(G)`, scaled by the density denominator
    w: Vec<i64>,
    comp: [Vec<bool>; 3], // xy, xz, yz
    q: i64,
}

impl Cube {
    fn build(h: &Trigraph, g: &Triad) -> Result<Cube> {
        if !underlies(g, h) {
            return precondition("the triad does not underlie the trigraph");
        }
        let (a, b, c) = g.sizes();
        let k3 = g.k3_count();
        let fc = h.triple_count();
        let d = if k3 == 0 { BigRational::zero() } else { rat(fc, k3) };
        let p = d.numer().to_i64().unwrap_or(0);
        let q = d.denom().to_i64().unwrap_or(1);
        let mut w = vec![0i64; a * b * c];
        for i in 0..a {
            for j in 0..b {
                for k in g.k3_fiber(i, j).ones() {
                    w[(i * b + j) * c + k] = q * i64::from(h.has(i, j, k)) - p;
                }
            }
        }
        let grid = |bg: &Bigraph| -> Vec<bool> {
            let (r, s) = (bg.left().len(), bg.right().len());
            (0..r * s).map(|idx| bg.has(idx / s, idx % s)).collect()
        };
        Ok(Cube {
            n: [a, b, c],
            parts: g.parts().clone(),
            w,
            comp: [grid(g.xy()), grid(g.xz()), grid(g.yz())],
            q,
        })
    }

    /// Component membership for coordinate `s` index `i` and coordinate `t` index `j`.
    fn has(&self, s: usize, i: usize, t: usize, j: usize) -> bool {
        match (s, t) {
            (0, 1) => self.comp[0][i * self.n[1] + j],
            (1, 0) => self.comp[0][j * self.n[1] + i],
            (0, 2) => self.comp[1][i * self.n[2] + j],
            (2, 0) => self.comp[1][j * self.n[2] + i],
            (1, 2) => self.comp[2][i * self.n[2] + j],
            (2, 1) => self.comp[2][j * self.n[2] + i],
            _ => unreachable!("component coordinates must differ"),
        }
    }

    fn weight(&self, t: [usize; 3]) -> i64 {
        self.w[(t[0] * self.n[1] + t[1]) * self.n[2] + t[2]]
    }

    fn pair_list(&self, s: usize, t: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n[s] {
            for j in 0..self.n[t] {
                if self.has(s, i, t, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Witness as three positional pair sets in XY, XZ, YZ order.
type PosWitness = [Vec<(usize, usize)>; 3];

fn comp_slot(s: usize, t: usize) -> (usize, bool) {
    match (s, t) {
        (0, 1) => (0, false),
        (1, 0) => (0, true),
        (0, 2) => (1, false),
        (2, 0) => (1, true),
        (1, 2) => (2, false),
        (2, 1) => (2, true),
        _ => unreachable!(),
    }
}

fn exact_disc(cube: &Cube, work_budget: f64) -> Result<(i64, PosWitness)> {
    let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1], [1, 2, 0], [2, 1, 0]];
    // Role a: enumerated S side, b: greedy side, c: free coordinate; component (a,b) enumerated.
    let mut best: Option<(f64, [usize; 3])> = None;
    for r in perms {
        let [a, b, c] = r;
        let m = cube.pair_list(a, b).len();
        let per: f64 = (0..cube.n[c])
            .map(|ic| {
                let deg = (0..cube.n[a]).filter(|&ia| cube.has(a, ia, c, ic)).count();
                2f64.powi(deg as i32) * (cube.n[b] as f64 + 1.0)
            })
            .sum();
        let cost = 2f64.powi(m as i32) * per.max(1.0);
        if best.is_none_or(|(bc, _)| cost < bc) {
            best = Some((cost, r));
        }
    }
    let (cost, [a, b, c]) = best.expect("six role assignments");
    if cost > work_budget {
        return capacity(format!("exact disc search needs about {cost:.2e} steps (budget {work_budget:.0e})"));
    }
    let eab = cube.pair_list(a, b);
    let na = cube.n[a];
    let nbv = cube.n[b];
    let mut best_pos = (0i64, 0u64, Vec::<u64>::new());
    let mut best_neg = (0i64, 0u64, Vec::<u64>::new());
    let mut wmat = vec![0i64; na * nbv];
    for mask in 0u64..(1u64 << eab.len()) {
        let (mut tot_pos, mut tot_neg) = (0i64, 0i64);
        let (mut s_pos, mut s_neg) = (Vec::new(), Vec::new());
        for ic in 0..cube.n[c] {
            let sa: Vec<usize> = (0..na).filter(|&ia| cube.has(a, ia, c, ic)).collect();
            let tb: Vec<usize> = (0..nbv).filter(|&ib| cube.has(b, ib, c, ic)).collect();
            wmat.iter_mut().for_each(|x| *x = 0);
            for (e, &(ia, ib)) in eab.iter().enumerate() {
                if mask >> e & 1 == 1 {
                    let mut t = [0; 3];
                    t[a] = ia;
                    t[b] = ib;
                    t[c] = ic;
                    wmat[ia * nbv + ib] = cube.weight(t);
                }
            }
            // Gray-code walk over subsets of sa.
            let mut col = vec![0i64; tb.len()];
            let (mut bp, mut bn) = ((0i64, 0u64), (0i64, 0u64));
            let mut cur = 0u64;
            for step in 1u64..(1u64 << sa.len()) {
                let bit = step.trailing_zeros() as usize;
                cur ^= 1 << bit;
                let sign = if cur >> bit & 1 == 1 { 1 } else { -1 };
                let ia = sa[bit];
                let (mut pos, mut neg) = (0i64, 0i64);
                for (t, &ib) in tb.iter().enumerate() {
                    col[t] += sign * wmat[ia * nbv + ib];
                    if col[t] > 0 {
                        pos += col[t];
                    } else {
                        neg += col[t];
                    }
                }
                if pos > bp.0 {
                    bp = (pos, cur);
                }
                if neg < bn.0 {
                    bn = (neg, cur);
                }
            }
            tot_pos += bp.0;
            tot_neg += bn.0;
            s_pos.push(bp.1);
            s_neg.push(bn.1);
        }
        if tot_pos > best_pos.0 {
            best_pos = (tot_pos, mask, s_pos);
        }
        if tot_neg < best_neg.0 {
            best_neg = (tot_neg, mask, s_neg);
        }
    }
    let (value, mask, svec, positive) = if best_pos.0 >= -best_neg.0 {
        (best_pos.0, best_pos.1, best_pos.2, true)
    } else {
        (-best_neg.0, best_neg.1, best_neg.2, false)
    };
    // Rebuild the witness subgraph.
    let mut wit: PosWitness = [Vec::new(), Vec::new(), Vec::new()];
    let push = |wit: &mut PosWitness, s: usize, i: usize, t: usize, j: usize| {
        let (slot, flip) = comp_slot(s, t);
        wit[slot].push(if flip { (j, i) } else { (i, j) });
    };
    for (e, &(ia, ib)) in eab.iter().enumerate() {
        if mask >> e & 1 == 1 {
            push(&mut wit, a, ia, b, ib);
        }
    }
    if !svec.is_empty() {
        for ic in 0..cube.n[c] {
            let sa: Vec<usize> = (0..na).filter(|&ia| cube.has(a, ia, c, ic)).collect();
            let chosen: Vec<usize> =
                sa.iter().enumerate().filter(|(k, _)| svec[ic] >> k & 1 == 1).map(|(_, &ia)| ia).collect();
            for &ia in &chosen {
                push(&mut wit, a, ia, c, ic);
            }
            for ib in (0..nbv).filter(|&ib| cube.has(b, ib, c, ic)) {
                let col: i64 = chosen
                    .iter()
                    .filter(|&&ia| {
                        eab.iter().position(|&p| p == (ia, ib)).is_some_and(|e| mask >> e & 1 == 1)
                    })
                    .map(|&ia| {
                        let mut t = [0; 3];
                        t[a] = ia;
                        t[b] = ib;
                        t[c] = ic;
                        cube.weight(t)
                    })
                    .sum();
                if (positive && col > 0) || (!positive && col < 0) {
                    push(&mut wit, b, ib, c, ic);
                }
            }
        }
    }
    for w in wit.iter_mut() {
        w.sort_unstable();
    }
    Ok((value, wit))
}

/// Signed scaled defect `Σ_{K₃(G′)} (q f − p)` of a positional witness.
fn witness_sum(cube: &Cube, wit: &PosWitness) -> i64 {
    let [a, b, c] = cube.n;
    let s = a.max(b).max(c);
    let mk = |v: &Vec<(usize, usize)>| {
        let mut g = vec![false; s * s];
        for &(i, j) in v {
            g[i * s + j] = true;
        }
        g
    };
    let (xy, xz, yz) = (mk(&wit[0]), mk(&wit[1]), mk(&wit[2]));
    let mut total = 0;
    for i in 0..a {
        for j in 0..b {
            if !xy[i * s + j] {
                continue;
            }
            for k in 0..c {
                if xz[i * s + k] && yz[j * s + k] {
                    total += cube.weight([i, j, k]);
                }
            }
        }
    }
    total
}

fn heuristic_disc(cube: &Cube, restarts: usize, seed: u64) -> (i64, PosWitness) {
    use rand::Rng;
    let [a, b, c] = cube.n;
    let edges: [Vec<(usize, usize)>; 3] = [cube.pair_list(0, 1), cube.pair_list(0, 2), cube.pair_list(1, 2)];
    let total_edges: usize = edges.iter().map(Vec::len).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (0i64, [Vec::new(), Vec::new(), Vec::new()]);
    for r in 0..restarts {
        for sign in [1i64, -1] {
            // on[s][(i,j)] flags which pairs of component s are in G′
            let mut on: [Vec<bool>; 3] = [
                edges[0].iter().map(|_| r == 0 || rng.gen_bool(0.5)).collect(),
                edges[1].iter().map(|_| r == 0 || rng.gen_bool(0.5)).collect(),
                edges[2].iter().map(|_| r == 0 || rng.gen_bool(0.5)).collect(),
            ];
            let mut xy = vec![false; a * b];
            let mut xz = vec![false; a * c];
            let mut yz = vec![false; b * c];
            let sync = |on: &[Vec<bool>; 3], xy: &mut Vec<bool>, xz: &mut Vec<bool>, yz: &mut Vec<bool>| {
                xy.iter_mut().for_each(|v| *v = false);
                xz.iter_mut().for_each(|v| *v = false);
                yz.iter_mut().for_each(|v| *v = false);
                for (e, &(i, j)) in edges[0].iter().enumerate() {
                    xy[i * b + j] = on[0][e];
                }
                for (e, &(i, k)) in edges[1].iter().enumerate() {
                    xz[i * c + k] = on[1][e];
                }
                for (e, &(j, k)) in edges[2].iter().enumerate() {
                    yz[j * c + k] = on[2][e];
                }
            };
            sync(&on, &mut xy, &mut xz, &mut yz);
            for _ in 0..(4 * total_edges + 4) {
                let mut best_gain = 0i64;
                let mut best_move = None;
                for s in 0..3 {
                    for (e, &(i, j)) in edges[s].iter().enumerate() {
                        let contrib: i64 = match s {
                            0 => (0..c).filter(|&k| xz[i * c + k] && yz[j * c + k]).map(|k| cube.weight([i, j, k])).sum(),
                            1 => (0..b).filter(|&y| xy[i * b + y] && yz[y * c + j]).map(|y| cube.weight([i, y, j])).sum(),
                            _ => (0..a).filter(|&x| xy[x * b + i] && xz[x * c + j]).map(|x| cube.weight([x, i, j])).sum(),
                        };
                        let gain = sign * if on[s][e] { -contrib } else { contrib };
                        if gain > best_gain {
                            best_gain = gain;
                            best_move = Some((s, e));
                        }
                    }
                }
                match best_move {
                    Some((s, e)) => {
                        on[s][e] = !on[s][e];
                        sync(&on, &mut xy, &mut xz, &mut yz);
                    }
                    None => break,
                }
            }
            let wit: PosWitness = [
                edges[0].iter().zip(&on[0]).filter(|(_, &o)| o).map(|(&p, _)| p).collect(),
                edges[1].iter().zip(&on[1]).filter(|(_, &o)| o).map(|(&p, _)| p).collect(),
                edges[2].iter().zip(&on[2]).filter(|(_, &o)| o).map(|(&p, _)| p).collect(),
            ];
            let v = witness_sum(cube, &wit).abs();
            if v > best.0 {
                best = (v, wit);
            }
        }
    }
    best
}

/// Maximum over subgraphs `G′ ⊆ G` of `| |F ∩ K₃(G′)| − d_H(G)|K₃(G′)| |`, normalized by
/// `d_XY d_XZ d_YZ |X||Y||Z|`. Exact mode searches all subgraphs (parts ≤ `DISC_EXACT_CAP`,
/// work ≤ `work_budget`); heuristic mode runs greedy edge flips from `restarts` starts.
pub fn disc23(
    h: &Trigraph,
    g: &Triad,
    mode: DiscMode,
    work_budget: f64,
    restarts: usize,
    seed: u64,
) -> Result<Disc23Report> {
    let cube = Cube::build(h, g)?;
    let (value, pos) = match mode {
        DiscMode::Exact => {
            if cube.n.iter().any(|&s| s > DISC_EXACT_CAP) {
                return capacity(format!("exact disc search allows parts of size ≤ {DISC_EXACT_CAP}"));
            }
            exact_disc(&cube, work_budget)?
        }
        DiscMode::Heuristic => heuristic_disc(&cube, restarts.max(1), seed),
    };
    let defect = rat(value, cube.q);
    let (x, y, z) = g.sizes();
    let norm = full_density(g.xy()).ratio()
        * full_density(g.xz()).ratio()
        * full_density(g.yz()).ratio()
        * BigRational::from_integer(BigInt::from(x * y * z));
    let normalized = if norm.is_zero() { 0.0 } else { (&defect / &norm).to_f64().unwrap_or(0.0) };
    let to_ids = |slot: usize, s: usize, t: usize| -> Vec<(usize, usize)> {
        pos[slot].iter().map(|&(i, j)| (cube.parts[s][i], cube.parts[t][j])).collect()
    };
    Ok(Disc23Report {
        mode,
        witness: [to_ids(0, 0, 1), to_ids(1, 0, 2), to_ids(2, 1, 2)],
        defect_raw: RatValue::from(&defect),
        normalizer: RatValue::from(&norm),
        defect: normalized,
        lower_bound: mode == DiscMode::Heuristic,
    })
}

// ---------------------------------------------------------------------------
// subset regularity predicates

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum RegularityMode {
    Exact { cap: usize },
    Sampled { samples: usize, seed: u64 },
    Dev2Surrogate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub holds: bool,
    /// Sampled passes are probabilistic; failures always come with a witness.
    pub probabilistic: bool,
    /// Violating (or extremal) sub-pair as vertex ids.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    /// Largest deviation found (|d − d′| for ε-regularity, d/2 − d′ for ⟨δ⟩).
    pub worst: f64,
}

/// `⌈f · n⌉`, at least 1, robust to float noise in `f · n`.
pub(crate) fn size_floor(f: f64, n: usize) -> usize {
    ((f * n as f64 - 1e-9).ceil().max(1.0) as usize).min(n.max(1))
}

/// Exact extremes: for every left subset of size ≥ `mx`, the best right subsets of each size ≥ `my`.
/// `judge(num, xs, ys)` returns a badness (as rational num/den) and whether it violates.
fn scan_subsets<F>(b: &Bigraph, mx: usize, my: usize, mut judge: F)
where
    F: FnMut(u64, usize, usize, &[usize], &dyn Fn(usize, bool) -> Vec<usize>),
{
    let (nx, ny) = (b.left().len(), b.right().len());
    let mut deg = vec![0u64; ny];
    for mask in 1u64..(1u64 << nx) {
        let k = mask.count_ones() as usize;
        if k < mx {
            continue;
        }
        deg.iter_mut().for_each(|d| *d = 0);
        let xs: Vec<usize> = (0..nx).filter(|&i| mask >> i & 1 == 1).collect();
        for &i in &xs {
            for j in b.row(i).ones() {
                deg[j] += 1;
            }
        }
        let mut order: Vec<usize> = (0..ny).collect();
        order.sort_by(|&p, &q| deg[q].cmp(&deg[p]).then(p.cmp(&q)));
        let mut prefix = 0u64;
        let mut suffix = 0u64;
        let total: u64 = deg.iter().sum();
        let rev: Vec<usize> = order.iter().rev().copied().collect();
        let pick = |s: usize, top: bool| -> Vec<usize> {
            let mut v: Vec<usize> = if top { order[..s].to_vec() } else { rev[..s].to_vec() };
            v.sort_unstable();
            v
        };
        let _ = total;
        for s in 1..=ny {
            prefix += deg[order[s - 1]];
            suffix += deg[rev[s - 1]];
            if s < my {
                continue;
            }
            judge(prefix, k, s, &xs, &|s2, top| pick(s2, top));
            judge(suffix, k, s, &xs, &|s2, top| pick(s2, !top));
        }
    }
}

fn restrict_to(b: &Bigraph, xs: &[usize], ys: &[usize]) -> Result<Bigraph> {
    let lp = position_map(b.left());
    let rp = position_map(b.right());
    let xi: Option<Vec<usize>> = xs.iter().map(|v| lp.get(v).copied()).collect();
    let yi: Option<Vec<usize>> = ys.iter().map(|v| rp.get(v).copied()).collect();
    match (xi, yi) {
        (Some(xi), Some(yi)) => Ok(b.restrict(&xi, &yi)),
        _ => Err(Error::Structural("pair sets must lie in the bigraph's parts".into())),
    }
}

/// ε-regularity of `(X, Y)` inside `b`: every `X′ ⊆ X`, `Y′ ⊆ Y` with `|X′| ≥ ε|X|`,
/// `|Y′| ≥ ε|Y|` has `|d(X,Y) − d(X′,Y′)| ≤ ε`.
pub fn eps_regular_pair(b: &Bigraph, xs: &[usize], ys: &[usize], eps: f64, mode: RegularityMode) -> Result<RegularityVerdict> {
    let sub = restrict_to(b, xs, ys)?;
    let (nx, ny) = (xs.len(), ys.len());
    if nx == 0 || ny == 0 {
        return Ok(RegularityVerdict { holds: true, probabilistic: false, witness: None, worst: 0.0 });
    }
    let e_all = sub.edge_count();
    let n_all = (nx * ny) as u64;
    let (mx, my) = (size_floor(eps, nx), size_floor(eps, ny));
    let eps_r = rat_of(eps);
    match mode {
        RegularityMode::Exact { cap } => {
            if nx > cap || ny > cap {
                return capacity(format!("exact regularity check allows parts of size ≤ {cap}"));
            }
            let transpose = nx > ny;
            let work = if transpose { sub.transpose() } else { sub.clone() };
            let (mx, my) = if transpose { (my, mx) } else { (mx, my) };
            // worst deviation as exact fraction num/den
            let mut worst: (u128, u128) = (0, 1);
            let mut wit: Option<(Vec<usize>, Vec<usize>)> = None;
            scan_subsets(&work, mx, my, |num, k, s, xsp, pick| {
                let den = (k * s) as u128;
                let dev_num = (num as u128 * n_all as u128).abs_diff(e_all as u128 * den);
                let dev_den = den * n_all as u128;
                if dev_num * worst.1 > worst.0 * dev_den {
                    worst = (dev_num, dev_den);
                    let ysp = pick(s, true);
                    wit = Some((xsp.to_vec(), ysp));
                }
            });
            let holds = rat(BigInt::from(worst.0), BigInt::from(worst.1)) <= eps_r;
            let witness = wit.map(|(xp, yp)| {
                let (xp, yp) = if transpose { (yp, xp) } else { (xp, yp) };
                (xp.iter().map(|&i| xs[i]).collect(), yp.iter().map(|&j| ys[j]).collect())
            });
            Ok(RegularityVerdict { holds, probabilistic: false, witness, worst: worst.0 as f64 / worst.1 as f64 })
        }
        RegularityMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = 0.0;
            for _ in 0..samples {
                let xp = sample(&mut rng, nx, mx).into_vec();
                let yp = sample(&mut rng, ny, my).into_vec();
                let mask = Bits::from_ones(ny, yp.iter().copied());
                let num: u64 = xp.iter().map(|&i| sub.row(i).and_count(&mask)).sum();
                let den = (mx * my) as u128;
                let dev_num = (num as u128 * n_all as u128).abs_diff(e_all as u128 * den);
                let dev = rat(BigInt::from(dev_num), BigInt::from(den * n_all as u128));
                let devf = dev.to_f64().unwrap_or(0.0);
                if devf > worst {
                    worst = devf;
                }
                if dev > eps_r {
                    let mut xv: Vec<usize> = xp.iter().map(|&i| xs[i]).collect();
                    let mut yv: Vec<usize> = yp.iter().map(|&j| ys[j]).collect();
                    xv.sort_unstable();
                    yv.sort_unstable();
                    return Ok(RegularityVerdict { holds: false, probabilistic: false, witness: Some((xv, yv)), worst: devf });
                }
            }
            Ok(RegularityVerdict { holds: true, probabilistic: true, witness: None, worst })
        }
        RegularityMode::Dev2Surrogate => {
            let r = dev2(&sub, None);
            let holds = r.passes(eps.powi(12));
            Ok(RegularityVerdict { holds, probabilistic: false, witness: None, worst: r.normalized })
        }
    }
}

/// ⟨δ⟩-regularity: every `V₁′, V₂′` at the δ-fraction size floor keeps at least half the density.
pub fn delta_regular_bigraph(b: &Bigraph, delta: f64, mode: RegularityMode) -> Result<RegularityVerdict> {
    let (nx, ny) = (b.left().len(), b.right().len());
    let e_all = b.edge_count();
    if nx == 0 || ny == 0 || e_all == 0 {
        return Ok(RegularityVerdict { holds: true, probabilistic: false, witness: None, worst: 0.0 });
    }
    let n_all = (nx * ny) as u128;
    let (mx, my) = (size_floor(delta, nx), size_floor(delta, ny));
    // violation when 2·num·n_all < e_all·den
    match mode {
        RegularityMode::Exact { cap } => {
            if nx.min(ny) > cap {
                return capacity(format!("exact ⟨δ⟩ check needs a side of size ≤ {cap}"));
            }
            let transpose = nx > ny;
            let work = if transpose { b.transpose() } else { b.clone() };
            let (mx, my) = if transpose { (my, mx) } else { (mx, my) };
            // lowest density found, as num/den
            let mut low: (u128, u128) = (1, 0);
            let mut wit = None;
            scan_subsets(&work, mx, my, |num, k, s, xsp, pick| {
                let den = (k * s) as u128;
                if low.1 == 0 || (num as u128) * low.1 < low.0 * den {
                    low = (num as u128, den);
                    wit = Some((xsp.to_vec(), pick(s, false)));
                }
            });
            let holds = 2 * low.0 * n_all >= e_all as u128 * low.1;
            let half = e_all as f64 / n_all as f64 / 2.0;
            let witness = wit.filter(|_| !holds).map(|(xp, yp): (Vec<usize>, Vec<usize>)| {
                let (xp, yp) = if transpose { (yp, xp) } else { (xp, yp) };
                (xp.iter().map(|&i| b.left()[i]).collect(), yp.iter().map(|&j| b.right()[j]).collect())
            });
            Ok(RegularityVerdict { holds, probabilistic: false, witness, worst: half - low.0 as f64 / low.1 as f64 })
        }
        RegularityMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let half = e_all as f64 / n_all as f64 / 2.0;
            let mut worst = f64::NEG_INFINITY;
            let den = (mx * my) as u128;
            for _ in 0..samples {
                let xp = sample(&mut rng, nx, mx).into_vec();
                let yp = sample(&mut rng, ny, my).into_vec();
                let mask = Bits::from_ones(ny, yp.iter().copied());
                let num: u64 = xp.iter().map(|&i| b.row(i).and_count(&mask)).sum();
                worst = f64::max(worst, half - num as f64 / den as f64);
                if 2 * num as u128 * n_all < e_all as u128 * den {
                    let mut xv: Vec<usize> = xp.iter().map(|&i| b.left()[i]).collect();
                    let mut yv: Vec<usize> = yp.iter().map(|&j| b.right()[j]).collect();
                    xv.sort_unstable();
                    yv.sort_unstable();
                    return Ok(RegularityVerdict { holds: false, probabilistic: false, witness: Some((xv, yv)), worst });
                }
            }
            Ok(RegularityVerdict { holds: true, probabilistic: true, witness: None, worst })
        }
        RegularityMode::Dev2Surrogate => {
            precondition("⟨δ⟩-regularity has no dev₂ surrogate; use exact or sampled mode")
        }
    }
}

// ---------------------------------------------------------------------------
// counting audit

#[derive(Clone, Debug, Serialize)]
pub struct CountingAudit {
    pub triangles: u64,
    pub expected: f64,
    pub deviation: f64,
    /// `4 ε^{1/4} |A||B||C|`.
    pub bound: f64,
    pub holds: bool,
    /// `(bound − deviation) / |A||B||C|`.
    pub slack: f64,
    pub eps: f64,
}

/// Checks `| |K₃(G)| − d_XY d_YZ d_XZ |A||B||C| | ≤ 4ε^{1/4}|A||B||C|` after confirming each
/// component has `dev₂(ε, d_·)`. Densities are given in XY, XZ, YZ order.
pub fn counting_audit(g: &Triad, d: [&BigRational; 3], eps: f64) -> Result<CountingAudit> {
    let comps = [g.xy(), g.xz(), g.yz()];
    for (name, (c, dc)) in ["XY", "XZ", "YZ"].iter().zip(comps.iter().zip(d)) {
        let r = dev2(c, Some(dc));
        if !r.passes(eps) {
            return precondition(format!(
                "component {name} does not have dev2({eps}, {dc}); measured {:.3e}",
                r.measured_epsilon()
            ));
        }
    }
    let (a, b, c) = g.sizes();
    let vol = (a * b * c) as f64;
    let k3 = g.k3_count();
    let expected_exact = d[0] * d[1] * d[2] * BigRational::from_integer(BigInt::from(a * b * c));
    let dev = (BigRational::from_integer(BigInt::from(k3)) - &expected_exact).abs();
    let deviation = dev.to_f64().unwrap_or(f64::INFINITY);
    let bound = 4.0 * eps.powf(0.25) * vol;
    Ok(CountingAudit {
        triangles: k3,
        expected: expected_exact.to_f64().unwrap_or(0.0),
        deviation,
        bound,
        holds: deviation <= bound,
        slack: if vol > 0.0 { (bound - deviation) / vol } else { 0.0 },
        eps,
    })
}

/// Smallest float `ε` such that all three components have `dev₂(ε)` at their own density.
pub fn measured_triad_epsilon(g: &Triad) -> f64 {
    [g.xy(), g.xz(), g.yz()].iter().map(|c| dev2(c, None).measured_epsilon()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// induced pattern census

/// Number of `(v₁..v_t) ∈ V₁ × … × V_t` with `{vᵢ,vⱼ,v_k} ∈ E(H)` iff `ijk ∈ E(F)`, for all
/// `i < j < k`. `F` lives on `t` vertices; repeated vertices never form an edge.
pub fn pattern_census(f: &Hypergraph3, h: &Hypergraph3, windows: &[Vec<usize>]) -> Result<u128> {
    let t = f.n();
    if t > CENSUS_CAP {
        return capacity(format!("census patterns are limited to {CENSUS_CAP} vertices"));
    }
    if windows.len() != t {
        return Err(Error::Structural(format!("{} windows for a {t}-vertex pattern", windows.len())));
    }
    if windows.iter().flatten().any(|&v| v >= h.n()) {
        return Err(Error::Structural("window vertex outside the 3-graph".into()));
    }
    fn go(f: &Hypergraph3, h: &Hypergraph3, w: &[Vec<usize>], chosen: &mut Vec<usize>) -> u128 {
        let k = chosen.len();
        if k == w.len() {
            return 1;
        }
        let mut total = 0;
        for &v in &w[k] {
            let ok = (0..k).all(|i| {
                (i + 1..k).all(|j| f.contains(i, j, k) == h.contains(chosen[i], chosen[j], v))
            });
            if ok {
                chosen.push(v);
                total += go(f, h, w, chosen);
                chosen.pop();
            }
        }
        total
    }
    Ok(go(f, h, windows, &mut Vec::with_capacity(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Triad;

    fn naive_dev2(b: &Bigraph, d: f64) -> f64 {
        let (u, w) = (b.left().len(), b.right().len());
        let g = |i: usize, j: usize| if b.has(i, j) { 1.0 - d } else { -d };
        let mut s = 0.0;
        for u0 in 0..u {
            for u1 in 0..u {
                let t: f64 = (0..w).map(|x| g(u0, x) * g(u1, x)).sum();
                s += t * t;
            }
        }
        s
    }

    #[test]
    fn complete_bigraph_has_zero_deviation() {
        let b = Bigraph::complete(vec![0, 1, 2], vec![3, 4, 5]);
        let r = dev2(&b, None);
        assert!(r.raw_sum.is_zero());
        assert!(r.passes(1e-12));
    }

    #[test]
    fn single_pair_two_by_two() {
        let b = Bigraph::from_positions(vec![0, 1], vec![2, 3], [(0, 0)]).unwrap();
        let r = dev2(&b, None);
        assert_eq!(r.raw_sum.exact().unwrap(), &rat(7, 16));
        assert!(r.passes(7.0 / 256.0));
        assert!(!r.passes(7.0 / 256.0 - 1e-9));
        assert!((r.raw_sum.value() - naive_dev2(&b, 0.25)).abs() < 1e-12);
    }

    #[test]
    fn explicit_density_gap_counts() {
        let b = Bigraph::complete(vec![0], vec![1]);
        let r = dev2(&b, Some(&rat(1, 2)));
        assert!(!r.passes(0.4));
        assert!(r.passes(0.5));
    }

    #[test]
    fn empty_side_is_degenerate() {
        let b = Bigraph::empty(vec![], vec![1, 2]);
        let r = dev2(&b, None);
        assert!(r.degenerate && r.passes(0.0));
    }

    #[test]
    fn dev23_extremes_vanish() {
        let parts = [vec![0, 1], vec![2, 3], vec![4, 5]];
        let g = Triad::complete(parts.clone());
        let full = Trigraph::complete(parts.clone());
        assert!(dev23(&full, &g).unwrap().raw_sum.is_zero());
        let none = Trigraph::empty(parts);
        assert!(dev23(&none, &g).unwrap().raw_sum.is_zero());
    }

    #[test]
    fn dev23_requires_underlying() {
        let parts = [vec![0], vec![1], vec![2]];
        let g = Triad::new(
            Bigraph::empty(vec![0], vec![1]),
            Bigraph::complete(vec![0], vec![2]),
            Bigraph::complete(vec![1], vec![2]),
        )
        .unwrap();
        assert!(matches!(dev23(&Trigraph::complete(parts), &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn pattern_counts_match_direct() {
        let f = [0b1011u64, 0b0110, 0b1110, 0b0011];
        let c = [0b1111u64];
        let n = pattern_counts(&c, [&f[0..1], &f[1..2], &f[2..3], &f[3..4]]);
        let mut want = [0u64; 5];
        for z in 0..4 {
            let k = f.iter().filter(|&&m| m >> z & 1 == 1).count();
            want[k] += 1;
        }
        assert_eq!(n, want);
    }

    #[test]
    fn one_edge_is_irregular_with_expected_witness() {
        let b = Bigraph::from_positions(vec![0, 1], vec![2, 3], [(0, 0)]).unwrap();
        let v = eps_regular_pair(&b, &[0, 1], &[2, 3], 0.4, RegularityMode::Exact { cap: 14 }).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some((vec![0], vec![2])));
    }

    #[test]
    fn complete_pair_regular_in_all_modes() {
        let b = Bigraph::complete((0..5).collect(), (5..10).collect());
        let xs: Vec<usize> = (0..5).collect();
        let ys: Vec<usize> = (5..10).collect();
        for mode in [
            RegularityMode::Exact { cap: 14 },
            RegularityMode::Sampled { samples: 50, seed: 1 },
            RegularityMode::Dev2Surrogate,
        ] {
            assert!(eps_regular_pair(&b, &xs, &ys, 0.1, mode).unwrap().holds);
        }
    }

    #[test]
    fn isolated_vertex_breaks_delta_regularity() {
        // vertex 0 has no neighbors; with δ = 0.2 the singleton {0} is a legal subset
        let pairs = (1..5).flat_map(|i| (0..5).map(move |j| (i, j)));
        let b = Bigraph::from_positions((0..5).collect(), (5..10).collect(), pairs).unwrap();
        let v = delta_regular_bigraph(&b, 0.2, RegularityMode::Exact { cap: 14 }).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().0, vec![0]);
        let c = Bigraph::complete((0..5).collect(), (5..10).collect());
        assert!(delta_regular_bigraph(&c, 0.2, RegularityMode::Exact { cap: 14 }).unwrap().holds);
    }

    #[test]
    fn census_small_cases() {
        let f = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        let h = Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap();
        let w = vec![vec![0], vec![1], vec![2]];
        assert_eq!(pattern_census(&f, &h, &w).unwrap(), 1);
        assert_eq!(pattern_census(&f, &Hypergraph3::empty(3), &w).unwrap(), 0);
    }

    #[test]
    fn counting_audit_on_complete_triad() {
        let g = Triad::complete([vec![0, 1], vec![2, 3], vec![4, 5]]);
        let one = BigRational::one();
        let a = counting_audit(&g, [&one, &one, &one], 0.01).unwrap();
        assert_eq!(a.deviation, 0.0);
        assert!(a.holds);
        assert!(counting_audit(&g, [&rat(1, 2), &one, &one], 0.01).is_err());
    }
}
