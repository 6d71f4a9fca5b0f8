//! Slow direct-definition reference implementations. The verification suites compare the fast
//! paths against these; nothing here is factorized, bit-parallel or pruned.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hyperreg::Decomposition;
use crate::structures::{Bigraph, Graph, Hypergraph3, Triad, Trigraph, VertexPartition};

fn frac(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn bigraph_density(b: &Bigraph) -> BigRational {
    let (u, w) = (b.left().len() as u64, b.right().len() as u64);
    if u * w == 0 {
        return BigRational::zero();
    }
    frac(b.edge_count(), u * w)
}

/// `Σ_{u₀,u₁} (Σ_w g(u₀,w) g(u₁,w))²`, `g = 1_E − d`, by four nested loops.
pub fn dev2_raw(b: &Bigraph, d: &BigRational) -> BigRational {
    let (u, w) = (b.left().len(), b.right().len());
    let one = BigRational::one();
    let g = |i: usize, j: usize| if b.has(i, j) { &one - d } else { -d.clone() };
    let mut total = BigRational::zero();
    for u0 in 0..u {
        for u1 in 0..u {
            let mut inner = BigRational::zero();
            for x in 0..w {
                inner += g(u0, x) * g(u1, x);
            }
            total += &inner * &inner;
        }
    }
    total
}

fn k3_member(g: &Triad, i: usize, j: usize, k: usize) -> bool {
    g.xy().has(i, j) && g.xz().has(i, k) && g.yz().has(j, k)
}

pub fn k3_count(g: &Triad) -> u64 {
    let (a, b, c) = g.sizes();
    let mut n = 0;
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                n += u64::from(k3_member(g, i, j, k));
            }
        }
    }
    n
}

/// `d_H(G)`; zero when `K₃(G)` is empty.
pub fn relative_density(h: &Trigraph, g: &Triad) -> BigRational {
    let (a, b, c) = g.sizes();
    let (mut k3, mut f) = (0u64, 0u64);
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                if k3_member(g, i, j, k) {
                    k3 += 1;
                    f += u64::from(h.has(i, j, k));
                }
            }
        }
    }
    if k3 == 0 {
        BigRational::zero()
    } else {
        frac(f, k3)
    }
}

/// `Σ_{u₀,u₁,w₀,w₁} (Σ_z Π h(uᵢ,wⱼ,z))²` with `h = 1 − d` on `F ∩ K₃(G)`, `−d` on
/// `K₃(G) ∖ F`, `0` off `K₃(G)`.
pub fn dev23_raw(h: &Trigraph, g: &Triad) -> BigRational {
    let d = relative_density(h, g);
    let (a, b, c) = g.sizes();
    let one = BigRational::one();
    let val = |i: usize, j: usize, k: usize| -> BigRational {
        if !k3_member(g, i, j, k) {
            BigRational::zero()
        } else if h.has(i, j, k) {
            &one - &d
        } else {
            -d.clone()
        }
    };
    let mut total = BigRational::zero();
    for u0 in 0..a {
        for u1 in 0..a {
            for w0 in 0..b {
                for w1 in 0..b {
                    let mut inner = BigRational::zero();
                    for z in 0..c {
                        inner += val(u0, w0, z) * val(u0, w1, z) * val(u1, w0, z) * val(u1, w1, z);
                    }
                    total += &inner * &inner;
                }
            }
        }
    }
    total
}

/// Ordered `(a₀, a₁, b₀, b₁)` with all four pairs present.
pub fn k22_count(b: &Bigraph) -> u128 {
    let (u, w) = (b.left().len(), b.right().len());
    let mut n = 0u128;
    for a0 in 0..u {
        for a1 in 0..u {
            for b0 in 0..w {
                for b1 in 0..w {
                    n += u128::from(b.has(a0, b0) && b.has(a0, b1) && b.has(a1, b0) && b.has(a1, b1));
                }
            }
        }
    }
    n
}

/// Ordered `(a₀, a₁, b₀, b₁, c₀, c₁)` with all eight triples present.
pub fn k222_count(t: &Trigraph) -> u128 {
    let (x, y, z) = t.sizes();
    let mut n = 0u128;
    for a0 in 0..x {
        for a1 in 0..x {
            for b0 in 0..y {
                for b1 in 0..y {
                    for c0 in 0..z {
                        for c1 in 0..z {
                            let all = [a0, a1]
                                .iter()
                                .all(|&a| [b0, b1].iter().all(|&b| t.has(a, b, c0) && t.has(a, b, c1)));
                            n += u128::from(all);
                        }
                    }
                }
            }
        }
    }
    n
}

/// Walks the full product `V₁ × … × V_t` and tests every triple of coordinates.
pub fn pattern_census(f: &Hypergraph3, h: &Hypergraph3, windows: &[Vec<usize>]) -> u128 {
    let t = windows.len();
    if windows.iter().any(Vec::is_empty) {
        return 0;
    }
    let mut idx = vec![0usize; t];
    let mut count = 0u128;
    loop {
        let v: Vec<usize> = (0..t).map(|i| windows[i][idx[i]]).collect();
        let mut ok = true;
        'check: for i in 0..t {
            for j in i + 1..t {
                for k in j + 1..t {
                    let distinct = v[i] != v[j] && v[i] != v[k] && v[j] != v[k];
                    let in_h = distinct && h.edges().contains(&sorted3(v[i], v[j], v[k]));
                    let in_f = f.edges().contains(&[i, j, k]);
                    if in_h != in_f {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        count += u128::from(ok);
        let mut pos = t;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < windows[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut e = [a, b, c];
    e.sort_unstable();
    e
}

/// `T_m(x)` by the recurrence, or `None` once a value passes `limit_bits` bits.
pub fn tower(m: u64, x: u64, limit_bits: u64) -> Option<BigUint> {
    if x == 0 {
        return None;
    }
    let mut v = BigUint::from(m);
    for _ in 1..x {
        let e = u64::try_from(&v).ok()?;
        if v.bits() + e > limit_bits {
            return None;
        }
        v = &v << e as usize;
    }
    Some(v)
}

/// `W(x)` with `W(1) = 1`, `W(x+1) = T_2(W(x))`.
pub fn wowzer(x: u64, limit_bits: u64) -> Option<BigUint> {
    if x == 0 {
        return None;
    }
    let mut v = BigUint::one();
    for _ in 1..x {
        let arg = u64::try_from(&v).ok()?;
        v = tower(2, arg, limit_bits)?;
    }
    Some(v)
}

/// Graph energy straight from the definition, summing over `i < j`.
pub fn energy(g: &Graph, p: &VertexPartition) -> BigRational {
    let n = g.n() as u64;
    let mut total = BigRational::zero();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let e = p.part(i).iter().flat_map(|&x| p.part(j).iter().map(move |&y| (x, y))).filter(|&(x, y)| g.has_edge(x, y)).count() as u64;
            let (a, b) = (p.part(i).len() as u64, p.part(j).len() as u64);
            total += frac(e * e, a * b);
        }
    }
    if n == 0 {
        total
    } else {
        total / frac(n * n, 1)
    }
}

/// Triples `(x, y, z) ∈ V³` whose triad is μ-non-trivial, by visiting every triple.
pub fn nontrivial_triples(p: &Decomposition, mu: f64) -> u64 {
    let vp = p.partition();
    let (n, t, ell) = (p.n(), p.t(), p.ell());
    let sizes = vp.sizes();
    let cell_size = |i: usize, j: usize, a: usize| p.cell_table(i, j).iter().filter(|&&c| c as usize == a).count();
    let part_ok = |i: usize| sizes[i] as f64 >= mu * n as f64 / t as f64;
    let cell_ok = |x: usize, y: usize| {
        let (i, j, a) = p.cell_of(x, y);
        cell_size(i, j, a) as f64 >= mu * (sizes[i] * sizes[j]) as f64 / ell as f64
    };
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let parts_ok = part_ok(vp.part_of(x)) && part_ok(vp.part_of(y)) && part_ok(vp.part_of(z));
                if parts_ok && cell_ok(x, y) && cell_ok(x, z) && cell_ok(y, z) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Every fine part has some coarse part containing all but an ε-fraction of it.
pub fn eps_refines(fine: &VertexPartition, coarse: &VertexPartition, eps: f64) -> bool {
    fine.parts().iter().all(|x| {
        coarse.parts().iter().any(|y| {
            let outside = x.iter().filter(|v| !y.contains(v)).count();
            outside as f64 <= eps * x.len() as f64 + 1e-9
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn towers_by_hand() {
        let t2: Vec<u64> = (1..=3).map(|x| u64::try_from(tower(2, x, 64).unwrap()).unwrap()).collect();
        assert_eq!(t2, [2, 8, 2048]);
        let w: Vec<u64> = (1..=3).map(|x| u64::try_from(wowzer(x, 64).unwrap()).unwrap()).collect();
        assert_eq!(w, [1, 2, 8]);
        assert!(tower(2, 5, 10_000).is_none());
    }

    #[test]
    fn k22_of_complete() {
        let b = Bigraph::complete(vec![0, 1], vec![2, 3, 4]);
        assert_eq!(k22_count(&b), 4 * 9);
    }
}
