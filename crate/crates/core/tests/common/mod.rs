//! Test-side reference computations. These share no code with the library's own reference
//! module: deviation sums are computed in scaled integers, counts by plain loops.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use hyperreg::hyperreg::Decomposition;
use hyperreg::structures::{Bigraph, Graph, Hypergraph3, Triad, Trigraph, VertexPartition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub fn big(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Bigraph deviation sum times `(|U||W|)⁴`, so every term is an integer.
pub fn dev2_scaled(b: &Bigraph) -> (i128, i128) {
    let (u, w) = (b.left().len(), b.right().len());
    let vol = (u * w) as i128;
    let e = b.edge_count() as i128;
    let g = |i: usize, j: usize| if b.has(i, j) { vol - e } else { -e };
    let mut total = 0i128;
    for a in 0..u {
        for c in 0..u {
            let inner: i128 = (0..w).map(|x| g(a, x) * g(c, x)).sum();
            total += inner * inner;
        }
    }
    (total, vol.pow(4))
}

pub fn dev2_exact(b: &Bigraph) -> BigRational {
    let (num, scale) = dev2_scaled(b);
    if scale == 0 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from(num), BigInt::from(scale))
}

fn in_k3(g: &Triad, i: usize, j: usize, k: usize) -> bool {
    g.xy().has(i, j) && g.xz().has(i, k) && g.yz().has(j, k)
}

pub fn triangles(g: &Triad) -> u64 {
    let (a, b, c) = g.sizes();
    let mut n = 0;
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                if in_k3(g, i, j, k) {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Octahedral deviation sum of `h` over `g`, scaled by `|K₃(G)|⁸`.
pub fn dev23_exact(h: &Trigraph, g: &Triad) -> BigRational {
    let (a, b, c) = g.sizes();
    let k3 = triangles(g) as i128;
    if k3 == 0 {
        return BigRational::zero();
    }
    let mut f = 0i128;
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                if in_k3(g, i, j, k) && h.has(i, j, k) {
                    f += 1;
                }
            }
        }
    }
    let val = |i: usize, j: usize, k: usize| -> i128 {
        match (in_k3(g, i, j, k), h.has(i, j, k)) {
            (false, _) => 0,
            (true, true) => k3 - f,
            (true, false) => -f,
        }
    };
    let mut total = BigInt::zero();
    for u0 in 0..a {
        for u1 in 0..a {
            for w0 in 0..b {
                for w1 in 0..b {
                    let inner: i128 = (0..c).map(|z| val(u0, w0, z) * val(u0, w1, z) * val(u1, w0, z) * val(u1, w1, z)).sum();
                    total += BigInt::from(inner) * BigInt::from(inner);
                }
            }
        }
    }
    BigRational::new(total, BigInt::from(k3).pow(8))
}

pub fn k22(b: &Bigraph) -> u128 {
    // Square of the common-neighbourhood sizes, summed over ordered left pairs.
    let (u, w) = (b.left().len(), b.right().len());
    let mut n = 0u128;
    for a in 0..u {
        for c in 0..u {
            let common = (0..w).filter(|&x| b.has(a, x) && b.has(c, x)).count() as u128;
            n += common * common;
        }
    }
    n
}

pub fn k222(t: &Trigraph) -> u128 {
    let (x, y, z) = t.sizes();
    let mut n = 0u128;
    for a0 in 0..x {
        for a1 in 0..x {
            for b0 in 0..y {
                for b1 in 0..y {
                    let common = (0..z)
                        .filter(|&c| t.has(a0, b0, c) && t.has(a0, b1, c) && t.has(a1, b0, c) && t.has(a1, b1, c))
                        .count() as u128;
                    n += common * common;
                }
            }
        }
    }
    n
}

/// Induced copies of `f` with vertex `i` drawn from `windows[i]`, by recursive choice.
pub fn census(f: &Hypergraph3, h: &Hypergraph3, windows: &[Vec<usize>]) -> u128 {
    let edges: HashSet<[usize; 3]> = h.edges().iter().copied().collect();
    let pattern: HashSet<[usize; 3]> = f.edges().iter().copied().collect();
    let is_edge = |a: usize, b: usize, c: usize| {
        let mut e = [a, b, c];
        e.sort_unstable();
        e[0] != e[1] && e[1] != e[2] && edges.contains(&e)
    };
    fn go(
        chosen: &mut Vec<usize>,
        windows: &[Vec<usize>],
        ok: &dyn Fn(&[usize]) -> bool,
    ) -> u128 {
        if chosen.len() == windows.len() {
            return 1;
        }
        let mut n = 0;
        for &v in &windows[chosen.len()] {
            chosen.push(v);
            if ok(chosen) {
                n += go(chosen, windows, ok);
            }
            chosen.pop();
        }
        n
    }
    // Only the triples that end at the newest coordinate need checking at each step.
    let ok = |c: &[usize]| {
        let k = c.len() - 1;
        (0..k).all(|i| (i + 1..k).all(|j| is_edge(c[i], c[j], c[k]) == pattern.contains(&[i, j, k])))
    };
    go(&mut Vec::new(), windows, &ok)
}

/// `Σ_{i<j} e(Vᵢ,Vⱼ)² / (|Vᵢ||Vⱼ|n²)`.
pub fn energy(g: &Graph, p: &VertexPartition) -> BigRational {
    let n = g.n() as i128;
    let mut total = BigRational::zero();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let mut e = 0i128;
            for &x in p.part(i) {
                for &y in p.part(j) {
                    e += i128::from(g.has_edge(x, y));
                }
            }
            let vol = (p.part(i).len() * p.part(j).len()) as i128;
            total += BigRational::new(BigInt::from(e * e), BigInt::from(vol));
        }
    }
    if n == 0 {
        total
    } else {
        total / big(n * n)
    }
}

pub fn is_equipartition(p: &VertexPartition) -> bool {
    let s = p.sizes();
    match (s.iter().min(), s.iter().max()) {
        (Some(a), Some(b)) => b - a <= 1,
        _ => true,
    }
}

/// Each fine part lies in some coarse part up to an ε-fraction of its vertices.
pub fn approx_refines(fine: &VertexPartition, coarse: &VertexPartition, eps: f64) -> bool {
    fine.parts().iter().all(|x| {
        let mut hits: HashMap<usize, usize> = HashMap::new();
        for &v in x {
            *hits.entry(coarse.part_of(v)).or_default() += 1;
        }
        let best = hits.values().copied().max().unwrap_or(0);
        (x.len() - best) as f64 <= eps * x.len() as f64 + 1e-9
    })
}

/// Table `cell[x][y] = (i, j, α)`.
fn cell_table(p: &Decomposition) -> Vec<Vec<(usize, usize, usize)>> {
    let n = p.n();
    let vp = p.partition();
    let mut pos = vec![0; n];
    for part in vp.parts() {
        for (k, &v) in part.iter().enumerate() {
            pos[v] = k;
        }
    }
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let (i, j) = (vp.part_of(x), vp.part_of(y));
                    (i, j, p.cell_table(i, j)[pos[x] * vp.part(j).len() + pos[y]] as usize)
                })
                .collect()
        })
        .collect()
}

/// Ordered triples of `V³` whose three parts and three cells clear the μ floors.
pub fn nontrivial_triples(p: &Decomposition, mu: f64) -> u64 {
    let (n, t, ell) = (p.n(), p.t(), p.ell());
    let cells = cell_table(p);
    let sizes = p.partition().sizes();
    let mut cell_sizes: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for row in &cells {
        for &c in row {
            *cell_sizes.entry(c).or_default() += 1;
        }
    }
    let big_part = |i: usize| sizes[i] as f64 >= mu * n as f64 / t as f64;
    let big_cell = |c: (usize, usize, usize)| cell_sizes[&c] as f64 >= mu * (sizes[c.0] * sizes[c.1]) as f64 / ell as f64;
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (cxy, cxz, cyz) = (cells[x][y], cells[x][z], cells[y][z]);
                if big_part(cxy.0) && big_part(cxy.1) && big_part(cyz.1) && big_cell(cxy) && big_cell(cxz) && big_cell(cyz) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Mean-square density over the cells of `p`, from a walk over `V³`.
pub fn msd(h: &Hypergraph3, p: &Decomposition) -> BigRational {
    let n = p.n();
    let cells = cell_table(p);
    let mut acc: HashMap<_, (i128, i128)> = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let e = acc.entry((cells[x][y], cells[x][z], cells[y][z])).or_default();
                e.0 += 1;
                e.1 += i128::from(x != y && y != z && x != z && h.contains(x, y, z));
            }
        }
    }
    let sum = acc.values().fold(BigRational::zero(), |s, &(k, f)| s + BigRational::new(BigInt::from(f * f), BigInt::from(k)));
    if n == 0 {
        sum
    } else {
        sum / big((n * n * n) as i128)
    }
}
