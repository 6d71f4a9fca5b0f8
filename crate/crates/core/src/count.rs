//! Exact densities, ordered triangles, octahedral counts and codegree profiles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{structural, Result};
use crate::structures::{position_map, Bigraph, Hypergraph3, Triad, Trigraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityValue {
    pub numerator: u64,
    pub denominator: u64,
    pub value: f64,
    /// Set when the window is empty; the value is then 0 by convention.
    pub degenerate: bool,
}

impl DensityValue {
    pub fn new(numerator: u64, denominator: u64) -> DensityValue {
        if denominator == 0 {
            return DensityValue { numerator: 0, denominator: 0, value: 0.0, degenerate: true };
        }
        assert!(numerator <= denominator, "density numerator exceeds denominator");
        DensityValue { numerator, denominator, value: numerator as f64 / denominator as f64, degenerate: false }
    }

    pub fn ratio(&self) -> BigRational {
        if self.degenerate {
            BigRational::from_integer(BigInt::from(0))
        } else {
            BigRational::new(self.numerator.into(), self.denominator.into())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn is_one(&self) -> bool {
        !self.degenerate && self.numerator == self.denominator
    }
}

fn window_positions(part: &[usize], window: &[usize]) -> Result<Vec<usize>> {
    let map = position_map(part);
    window
        .iter()
        .map(|v| map.get(v).copied().ok_or(()))
        .collect::<std::result::Result<_, _>>()
        .or_else(|_| structural("density window is not contained in the part"))
}

/// `|E ∩ (X' × Y')| / |X'||Y'|` for vertex windows inside the bigraph's parts.
pub fn bigraph_density(b: &Bigraph, xs: &[usize], ys: &[usize]) -> Result<DensityValue> {
    let xp = window_positions(b.left(), xs)?;
    let yp = window_positions(b.right(), ys)?;
    let mask = Bits::from_ones(b.right().len(), yp.iter().copied());
    let num: u64 = xp.iter().map(|&i| b.row(i).and_count(&mask)).sum();
    Ok(DensityValue::new(num, (xp.len() * yp.len()) as u64))
}

pub fn full_density(b: &Bigraph) -> DensityValue {
    DensityValue::new(b.edge_count(), (b.left().len() * b.right().len()) as u64)
}

pub fn trigraph_density(t: &Trigraph, xs: &[usize], ys: &[usize], zs: &[usize]) -> Result<DensityValue> {
    let [px, py, pz] = t.parts();
    let xp = window_positions(px, xs)?;
    let yp = window_positions(py, ys)?;
    let zp = window_positions(pz, zs)?;
    let mask = Bits::from_ones(pz.len(), zp.iter().copied());
    let mut num = 0;
    for &i in &xp {
        for &j in &yp {
            num += t.fiber(i, j).and_count(&mask);
        }
    }
    Ok(DensityValue::new(num, (xp.len() * yp.len() * zp.len()) as u64))
}

/// Ordered triangles `(x, y, z)` of the triad, as vertex ids, with their count.
pub fn k3_triangles(g: &Triad) -> (Vec<(usize, usize, usize)>, u64) {
    let [px, py, pz] = g.parts();
    let mut out = Vec::new();
    for (i, row) in g.xy().rows().iter().enumerate() {
        for j in row.ones() {
            let f = g.xz().row(i).and(g.yz().row(j));
            out.extend(f.ones().map(|k| (px[i], py[j], pz[k])));
        }
    }
    let c = out.len() as u64;
    (out, c)
}

/// For every `(i, j) ∈ E_XY`: the `z` positions of `K₃(G)` and of `Ē ∩ K₃(G)` over `(x_i, y_j)`.
pub(crate) fn triad_fibers(h: &Hypergraph3, g: &Triad) -> Vec<(usize, usize, Bits, Bits)> {
    let [px, py, pz] = g.parts();
    let mut out = Vec::new();
    for (i, row) in g.xy().rows().iter().enumerate() {
        for j in row.ones() {
            let k = g.xz().row(i).and(g.yz().row(j));
            if k.is_empty() {
                continue;
            }
            let f = h.fiber(px[i], py[j]).gather(pz).and(&k);
            out.push((i, j, k, f));
        }
    }
    out
}

/// `d_H(G) = |Ē ∩ K₃(G)| / |K₃(G)|`.
pub fn relative_density(h: &Hypergraph3, g: &Triad) -> Result<DensityValue> {
    if g.parts().iter().flatten().any(|&v| v >= h.n()) {
        return structural("triad part contains a vertex outside the 3-graph");
    }
    let (mut k, mut f) = (0, 0);
    for (_, _, kb, fb) in triad_fibers(h, g) {
        k += kb.count();
        f += fb.count();
    }
    Ok(DensityValue::new(f, k))
}

/// Relative density for a trigraph whose parts contain the triad's parts.
pub fn relative_density_trigraph(h: &Trigraph, g: &Triad) -> Result<DensityValue> {
    let r = crate::structures::restrict_trigraph(h, g)?;
    Ok(DensityValue::new(r.triple_count(), g.k3_count()))
}

/// `Σ_{a₀,a₁} |N(a₀) ∩ N(a₁)|²`: ordered `K₂,₂` copies, repeats allowed.
pub fn k22_count(b: &Bigraph) -> u128 {
    let rows = b.rows();
    let mut total = 0u128;
    for r0 in rows {
        for r1 in rows {
            let c = r0.and_count(r1) as u128;
            total += c * c;
        }
    }
    total
}

/// Ordered `K₂,₂,₂` copies `(a₀,a₁,b₀,b₁,c₀,c₁)` with all eight triples present.
pub fn k222_count(t: &Trigraph) -> u128 {
    let (na, nb, _) = t.sizes();
    let mut total = 0u128;
    let mut g: Vec<Bits> = Vec::with_capacity(nb);
    for a0 in 0..na {
        for a1 in 0..na {
            g.clear();
            g.extend((0..nb).map(|b| t.fiber(a0, b).and(t.fiber(a1, b))));
            for g0 in &g {
                if g0.is_empty() {
                    continue;
                }
                for g1 in &g {
                    let c = g0.and_count(g1) as u128;
                    total += c * c;
                }
            }
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Xy,
    Xz,
    Yz,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodegreeProfile {
    pub side: Side,
    /// `(u, v, codegree)` per pair of the chosen component, vertex ids.
    pub codegrees: Vec<(usize, usize, u64)>,
    /// `d_UW · d_VW · |W|`.
    pub center: f64,
    pub tau: f64,
    pub inside: usize,
    pub fraction_inside: f64,
    /// codegree value -> number of pairs.
    pub histogram: BTreeMap<u64, usize>,
}

/// Codegrees of the chosen component's pairs into the third part, and the share of
/// pairs inside the window `(1 ± τ) d_UW d_VW |W|`.
pub fn codegree_profile(g: &Triad, side: Side, tau: f64) -> CodegreeProfile {
    // Arrange as (U, V; E_UV) with neighborhoods of U and V into W.
    let (uv, uw, vw) = match side {
        Side::Xy => (g.xy().clone(), g.xz().clone(), g.yz().clone()),
        Side::Xz => (g.xz().clone(), g.xy().clone(), g.yz().transpose()),
        Side::Yz => (g.yz().clone(), g.xy().transpose(), g.xz().transpose()),
    };
    let w = uw.right().len();
    let center = full_density(&uw).value * full_density(&vw).value * w as f64;
    let (lo, hi) = ((1.0 - tau) * center, (1.0 + tau) * center);
    let mut codegrees = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut inside = 0;
    for (i, row) in uv.rows().iter().enumerate() {
        for j in row.ones() {
            let c = uw.row(i).and_count(vw.row(j));
            codegrees.push((uv.left()[i], uv.right()[j], c));
            *histogram.entry(c).or_insert(0) += 1;
            let cf = c as f64;
            if cf >= lo - 1e-9 && cf <= hi + 1e-9 {
                inside += 1;
            }
        }
    }
    let fraction_inside = if codegrees.is_empty() { 1.0 } else { inside as f64 / codegrees.len() as f64 };
    CodegreeProfile { side, codegrees, center, tau, inside, fraction_inside, histogram }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Trigraph;

    fn parts(a: usize, b: usize, c: usize) -> [Vec<usize>; 3] {
        [(0..a).collect(), (a..a + b).collect(), (a + b..a + b + c).collect()]
    }

    #[test]
    fn complete_and_empty_densities() {
        let b = Bigraph::complete(vec![0, 1, 2], vec![3, 4]);
        assert!(bigraph_density(&b, &[0, 2], &[4]).unwrap().is_one());
        let t = Trigraph::empty(parts(2, 2, 2));
        assert!(trigraph_density(&t, &[0], &[2, 3], &[4]).unwrap().is_zero());
        let d = bigraph_density(&b, &[], &[3]).unwrap();
        assert!(d.degenerate && d.value == 0.0);
        assert!(bigraph_density(&b, &[3], &[3]).is_err());
    }

    #[test]
    fn complete_triad_counts() {
        let g = Triad::complete(parts(2, 3, 4));
        assert_eq!(k3_triangles(&g).1, 24);
        assert_eq!(g.k3_count(), 24);
        let p = codegree_profile(&g, Side::Xy, 0.0);
        assert!(p.codegrees.iter().all(|&(_, _, c)| c == 4));
        assert_eq!(p.fraction_inside, 1.0);
    }

    #[test]
    fn relative_density_degenerate_when_no_triangles() {
        let p = parts(2, 2, 2);
        let g = Triad::new(
            Bigraph::empty(p[0].clone(), p[1].clone()),
            Bigraph::complete(p[0].clone(), p[2].clone()),
            Bigraph::complete(p[1].clone(), p[2].clone()),
        )
        .unwrap();
        let h = Hypergraph3::from_edges(6, [[0, 2, 4]]).unwrap();
        let d = relative_density(&h, &g).unwrap();
        assert!(d.degenerate);
        let full = Hypergraph3::from_edges(
            6,
            [[0, 2, 4], [0, 2, 5], [0, 3, 4], [0, 3, 5], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]],
        )
        .unwrap();
        assert!(relative_density(&full, &Triad::complete(p)).unwrap().is_one());
    }

    #[test]
    fn octahedral_complete() {
        assert_eq!(k22_count(&Bigraph::complete(vec![0, 1], vec![2, 3])), 16);
        assert_eq!(k222_count(&Trigraph::complete(parts(2, 2, 2))), 64);
        assert_eq!(k222_count(&Trigraph::complete(parts(1, 2, 3))), 4 * 9);
    }

    #[test]
    fn empty_third_part_gives_zero_codegrees() {
        let p = parts(2, 2, 3);
        let g = Triad::new(
            Bigraph::complete(p[0].clone(), p[1].clone()),
            Bigraph::empty(p[0].clone(), p[2].clone()),
            Bigraph::empty(p[1].clone(), p[2].clone()),
        )
        .unwrap();
        let prof = codegree_profile(&g, Side::Xy, 0.5);
        assert!(prof.codegrees.iter().all(|&(_, _, c)| c == 0));
    }
}
