//! Acceptance run: fourteen criteria, each checked twice. First the library's own
//! verification suite runs; then this file regenerates its own instances and compares the
//! fast paths with the test-side oracles in `common`. One line per criterion, nonzero exit
//! if any fails.

mod common;

use std::collections::HashSet;
use std::time::Instant;

use hyperreg::bound::{eval_bound, BoundExpr, BoundValue};
use hyperreg::construct::{
    bip, dummy_extend, power_set_graph, random_3graph, random_bigraph, random_decomposition, random_equipartition,
    random_fill, random_graph, random_partition, random_refinement, random_triad, random_triad_densities,
};
use hyperreg::count;
use hyperreg::deltareg::{delta_decompose, triangle_trigraph, DeltaOptions};
use hyperreg::dims::{svc, vc2_dimension, DEFAULT_VC2_CAP};
use hyperreg::graphreg::{approx_common_refinement, conservative_check, szemeredi_partition, PartitionStatus};
use hyperreg::hyperreg::{decomposition_audit, nontrivial_coverage, strong_decompose, DecomposeCaps, Eps2Schedule};
use hyperreg::quasi::{counting_audit, dev2, dev23, pattern_census};
use hyperreg::structures::{complement_within_triad, Graph, Hypergraph3, Trigraph, VertexPartition};
use hyperreg::verify::{run_suite, SUITES};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0;

/// Instances here come from a stream unrelated to the suites' own.
fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xACCE_0000 + criterion)
}

struct Checks {
    cases: usize,
    failures: Vec<String>,
}

impl Checks {
    fn new() -> Checks {
        Checks { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

type Oracle = fn(&mut Checks) -> String;

struct Criterion {
    suite: &'static str,
    /// Wall-clock limit on the library suite, in seconds.
    limit: Option<f64>,
    oracle: Oracle,
}

fn rat(p: u128, q: u128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn factorization(c: &mut Checks) -> String {
    let mut r = rng(1);
    for case in 0..200 {
        let p = r.gen_range(0.05..0.95);
        if case % 2 == 0 {
            let (a, b) = (r.gen_range(1..=12), r.gen_range(1..=12));
            let g = random_bigraph((0..a).collect(), (a..a + b).collect(), p, r.gen()).unwrap();
            let got = dev2(&g, None).raw_sum;
            c.check(got.exact() == Some(&common::dev2_exact(&g)), || format!("bigraph {a}x{b} case {case}"));
        } else {
            let sizes = [r.gen_range(1..=6), r.gen_range(1..=6), r.gen_range(1..=6)];
            let g = random_triad(sizes, p, r.gen()).unwrap();
            let h = random_fill(&g, r.gen_range(0.05..0.95), r.gen()).unwrap();
            let got = dev23(&h, &g).unwrap().raw_sum;
            c.check(got.exact() == Some(&common::dev23_exact(&h, &g)), || format!("triad {sizes:?} case {case}"));
        }
    }
    "100 bigraphs, 100 triads".into()
}

fn counting(c: &mut Checks) -> String {
    let mut r = rng(2);
    let mut slack = Vec::new();
    for case in 0..50 {
        let p = [0.3, 0.5, 0.7][case % 3];
        let g = random_triad([100; 3], p, r.gen()).unwrap();
        let comps = [g.xy(), g.xz(), g.yz()];
        // dev₂ holds at ε = raw / (|U|²|W|²); the largest over the three components is the ε used.
        let eps = comps.iter().map(|b| num_traits::ToPrimitive::to_f64(&common::dev2_exact(b)).unwrap() / 1e8).fold(0.0, f64::max);
        let d: Vec<BigRational> = comps.iter().map(|b| rat(b.edge_count() as u128, 10_000)).collect();
        let expected = num_traits::ToPrimitive::to_f64(&(&d[0] * &d[1] * &d[2])).unwrap() * 1e6;
        let tri = common::triangles(&g);
        let bound = 4.0 * eps.powf(0.25) * 1e6;
        slack.push((bound - (tri as f64 - expected).abs()) / 1e6);
        // Nudged up so float rounding cannot put the exact sum just above ε.
        let lib = counting_audit(&g, [&d[0], &d[1], &d[2]], eps * (1.0 + 1e-12)).unwrap();
        c.check((tri as f64 - expected).abs() <= bound && lib.triangles == tri && lib.holds, || {
            format!("case {case}: {tri} triangles, expected {expected:.0}, bound {bound:.0}")
        });
    }
    slack.sort_by(f64::total_cmp);
    format!("slack min {:.4} median {:.4} max {:.4}", slack[0], slack[25], slack[49])
}

fn complement(c: &mut Checks) -> String {
    let mut r = rng(3);
    for case in 0..100 {
        let g = random_triad([5; 3], r.gen_range(0.2..0.95), r.gen()).unwrap();
        let h = random_fill(&g, r.gen_range(0.05..0.95), r.gen()).unwrap();
        let hc = complement_within_triad(&h, &g).unwrap();
        let (a, b) = (dev23(&h, &g).unwrap().raw_sum, dev23(&hc, &g).unwrap().raw_sum);
        let want = common::dev23_exact(&h, &g);
        c.check(a.exact() == Some(&want) && b.exact() == Some(&want) && common::dev23_exact(&hc, &g) == want, || {
            format!("case {case}")
        });
    }
    "100 instances at (5,5,5)".into()
}

fn extremes(c: &mut Checks) -> String {
    let mut r = rng(4);
    for case in 0..100 {
        let sizes = [r.gen_range(1..=7), r.gen_range(1..=7), r.gen_range(1..=7)];
        let g = random_triad(sizes, r.gen_range(0.1..1.0), r.gen()).unwrap();
        for h in [Trigraph::empty(g.parts().clone()), triangle_trigraph(&g)] {
            let got = dev23(&h, &g).unwrap().raw_sum;
            c.check(got.exact().is_some_and(Zero::is_zero) && common::dev23_exact(&h, &g).is_zero(), || {
                format!("case {case} {sizes:?}: {} triples", h.triple_count())
            });
        }
    }
    "100 empty and 100 full fills".into()
}

fn octahedral(c: &mut Checks) -> String {
    let mut r = rng(5);
    for case in 0..200 {
        let (a, b) = (r.gen_range(1..=9), r.gen_range(1..=9));
        let bg = random_bigraph((0..a).collect(), (a..a + b).collect(), r.gen_range(0.05..0.95), r.gen()).unwrap();
        let k22 = count::k22_count(&bg);
        // K22 ≥ d⁴a²b² with d = e/ab is K22·a²b² ≥ e⁴.
        let e = BigInt::from(bg.edge_count());
        let lhs = BigInt::from(k22) * BigInt::from(a * a * b * b);
        c.check(k22 == common::k22(&bg) && lhs >= e.pow(4), || format!("K22 case {case}: {k22}"));

        let sizes = [r.gen_range(1..=4), r.gen_range(1..=4), r.gen_range(1..=4)];
        let g = random_triad(sizes, r.gen_range(0.3..1.0), r.gen()).unwrap();
        let h = random_fill(&g, r.gen_range(0.1..1.0), r.gen()).unwrap();
        let k222 = count::k222_count(&h);
        // K222 ≥ d⁸v² with d = f/v is K222·v⁶ ≥ f⁸.
        let v = BigInt::from(sizes[0] * sizes[1] * sizes[2]);
        let f = BigInt::from(h.triple_count());
        c.check(k222 == common::k222(&h) && BigInt::from(k222) * v.pow(6) >= f.pow(8), || format!("K222 case {case}: {k222}"));
    }
    "200 bigraphs, 200 trigraphs".into()
}

/// Brute-force test for a VC₂ configuration of size 2: `a₁ < a₂`, `b₁ < b₂` and a `c` for each
/// of the sixteen incidence patterns on `{a₁,a₂} × {b₁,b₂}`.
fn has_vc2_grid_of_two(h: &Hypergraph3) -> bool {
    let n = h.n();
    assert!(n <= 64);
    let fib: Vec<Vec<u64>> =
        (0..n).map(|a| (0..n).map(|b| (0..n).filter(|&z| h.contains(a, b, z)).fold(0u64, |m, z| m | 1 << z)).collect()).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for a1 in 0..n {
        for a2 in a1 + 1..n {
            for b1 in 0..n {
                for b2 in b1 + 1..n {
                    let f = [fib[a1][b1], fib[a1][b2], fib[a2][b1], fib[a2][b2]];
                    let shattered = (0..16u32).all(|s| {
                        (0..4).fold(all, |acc, bit| acc & if s >> bit & 1 == 1 { f[bit] } else { !f[bit] }) != 0
                    });
                    if shattered {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Largest `k` such that some slicegraph `H_x` shatters a `k`-set, by subset enumeration.
fn slicewise_vc(h: &Hypergraph3) -> usize {
    let n = h.n();
    let mut best = 0;
    for x in 0..n {
        let nbhd: Vec<u64> = (0..n).map(|y| (0..n).filter(|&z| h.contains(x, y, z)).fold(0, |m, z| m | 1 << z)).collect();
        for set in 1u64..1 << n {
            let k = set.count_ones() as usize;
            if k <= best {
                continue;
            }
            let traces: HashSet<u64> = nbhd.iter().map(|m| m & set).collect();
            if traces.len() == 1 << k {
                best = k;
            }
        }
    }
    best
}

fn random_bipartite(r: &mut ChaCha8Rng, a: usize, b: usize) -> Graph {
    let p = r.gen_range(0.1..0.9);
    let edges: Vec<_> = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).filter(|_| r.gen_bool(p)).collect();
    Graph::from_edges(a + b, edges).unwrap()
}

fn vc2(c: &mut Checks) -> String {
    let mut r = rng(6);
    for case in 0..50 {
        let (a, b, n) = (r.gen_range(1..=8), r.gen_range(1..=8), r.gen_range(1..=5));
        let h = dummy_extend(&bip(&random_bipartite(&mut r, a, b)), n).unwrap();
        let lib = vc2_dimension(&h, DEFAULT_VC2_CAP).dimension();
        c.check(lib <= 1 && !has_vc2_grid_of_two(&h), || format!("case {case} ({a}+{b}, n={n}): library says {lib}"));
    }
    let mut svcs = Vec::new();
    for k in [2, 3] {
        let h = dummy_extend(&power_set_graph(k).unwrap(), k).unwrap();
        let (lib, mine) = (svc(&h, k + 1).dimension(), slicewise_vc(&h));
        c.check(lib >= k && mine >= k && lib == mine, || format!("k={k}: library {lib}, brute force {mine}"));
        svcs.push(mine);
    }
    format!("50 dummy-extended doubles, SVC {svcs:?}")
}

fn coverage(c: &mut Checks) -> String {
    let mut r = rng(7);
    let mut margin = f64::INFINITY;
    for case in 0..100 {
        let mu = if case % 2 == 0 { 0.1 } else { 0.25 };
        let n = r.gen_range(2..=15);
        let (t, ell) = (r.gen_range(1..=n.min(5)), r.gen_range(1..=4));
        let p = random_decomposition(n, t, ell, r.gen()).unwrap();
        let mine = common::nontrivial_triples(&p, mu);
        let cube = (n * n * n) as f64;
        margin = margin.min(mine as f64 / cube - (1.0 - 2.0 * mu));
        c.check(mine == nontrivial_coverage(&p, mu) && mine as f64 >= (1.0 - 2.0 * mu) * cube, || {
            format!("case {case} n={n} t={t} ℓ={ell} μ={mu}: {mine} of {cube}")
        });
    }
    format!("smallest margin {margin:.4}")
}

fn common_refinement(c: &mut Checks) -> String {
    let mut r = rng(8);
    for case in 0..200 {
        let (s, t) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let n = r.gen_range(s.max(t)..=64);
        let eps = if case % 2 == 0 { 0.5 } else { 0.25 };
        let p = random_partition(n, s, r.gen()).unwrap();
        let q = random_partition(n, t, r.gen()).unwrap();
        match approx_common_refinement(&p, &q, eps) {
            Ok(out) => {
                let w = &out.partition;
                let ok = w.len() as f64 <= (s * t) as f64 / eps
                    && common::is_equipartition(w)
                    && common::approx_refines(w, &p, eps)
                    && common::approx_refines(w, &q, eps);
                c.check(ok, || format!("case {case} n={n} s={s} t={t} ε={eps}: {} parts", w.len()));
            }
            Err(e) => c.check(false, || format!("case {case}: {e}")),
        }
    }
    "200 partition pairs".into()
}

fn conservative(c: &mut Checks) -> String {
    let mut r = rng(9);
    let eps = 0.2;
    let slack = rat(101, 5);
    let mut attempts = 0;
    let mut found = 0;
    while found < 100 && attempts < 5000 {
        attempts += 1;
        let n = r.gen_range(12..=24);
        let g = random_graph(n, r.gen_range(0.1..0.9), r.gen()).unwrap();
        let z = random_equipartition(n, r.gen_range(2..=4), r.gen()).unwrap();
        let u = random_refinement(&z, r.gen_range(2..=3), r.gen()).unwrap();
        let rep = conservative_check(&g, &u, &z, eps).unwrap();
        if !rep.conservative {
            continue;
        }
        found += 1;
        let (qu, qz) = (common::energy(&g, &u), common::energy(&g, &z));
        let lib_matches = rep.fine_energy_exact.parse::<BigRational>().ok() == Some(qu.clone());
        c.check(qu < qz + &slack && lib_matches && rep.index_inequality == Some(true), || format!("attempt {attempts}"));
    }
    if found < 100 {
        c.check(false, || format!("only {found} conservative instances in {attempts} attempts"));
    }
    format!("{found} conservative instances in {attempts} attempts")
}

/// Random subsets of at least an ε-fraction of two parts keep their density within ε.
fn sampled_regular(g: &Graph, p: &VertexPartition, eps: f64, samples: usize, r: &mut ChaCha8Rng) -> usize {
    let density = |xs: &[usize], ys: &[usize]| {
        let e = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).filter(|&(x, y)| g.has_edge(x, y)).count();
        e as f64 / (xs.len() * ys.len()) as f64
    };
    let mut bad = 0;
    for _ in 0..samples {
        let (i, j) = (r.gen_range(0..p.len()), r.gen_range(0..p.len()));
        let (vi, vj) = (p.part(i), p.part(j));
        let pick = |r: &mut ChaCha8Rng, v: &[usize]| {
            let lo = ((eps * v.len() as f64).ceil() as usize).max(1);
            let k = r.gen_range(lo..=v.len());
            rand::seq::index::sample(r, v.len(), k).into_iter().map(|x| v[x]).collect::<Vec<_>>()
        };
        let (xs, ys) = (pick(r, vi), pick(r, vj));
        if (density(&xs, &ys) - density(vi, vj)).abs() > eps {
            bad += 1;
        }
    }
    bad
}

fn partitioner(c: &mut Checks) -> String {
    let mut r = rng(10);
    let eps = 0.25;
    let g = random_graph(512, 0.5, r.gen()).unwrap();
    let (p, ledger) = szemeredi_partition(&g, eps, &VertexPartition::trivial(512), None).unwrap();
    let energies: Vec<BigRational> = ledger.rounds.iter().map(|x| x.energy_exact.parse().unwrap()).collect();
    c.check(ledger.rounds.len() - 1 <= 8 * 4usize.pow(5), || format!("{} rounds", ledger.rounds.len()));
    c.check(energies.windows(2).all(|w| w[0] <= w[1]), || "energy decreases".into());
    c.check(energies.last() == Some(&common::energy(&g, &p)), || "final energy differs from a direct count".into());
    c.check(common::is_equipartition(&p) && ledger.status == PartitionStatus::Regular, || format!("status {:?}", ledger.status));
    let bad = sampled_regular(&g, &p, eps, 2000, &mut r);
    c.check(bad == 0, || format!("{bad} of 2000 sampled subpairs deviate"));
    format!("{} part(s), {} ledger round(s)", p.len(), ledger.rounds.len())
}

fn decomposer(c: &mut Checks) -> String {
    let mut r = rng(11);
    let (eps1, sched): (f64, _) = (0.3, Eps2Schedule::default());
    let cap = (1024.0f64 / (eps1 * eps1)).ceil() as usize;
    let mut complete = 0;
    for case in 0..10 {
        let h = random_3graph(60, 0.5, r.gen()).unwrap();
        let (p, ledger) = strong_decompose(&h, eps1, &sched, &DecomposeCaps::default()).unwrap();
        let msds: Vec<BigRational> = ledger.rounds.iter().map(|x| x.msd_exact.parse().unwrap()).collect();
        c.check(msds.windows(2).all(|w| w[0] <= w[1]) && ledger.rounds.len() <= cap, || format!("case {case}: ledger"));
        c.check(msds.last() == Some(&common::msd(&h, &p)), || format!("case {case}: final msd differs from a direct walk"));
        if ledger.is_complete() {
            complete += 1;
            let a = decomposition_audit(&h, &p, eps1, sched.eval(p.ell()), eps1 / 48.0).unwrap();
            c.check(a.triple_pass >= 1.0 - eps1, || format!("case {case}: triple pass {}", a.triple_pass));
        }
    }
    format!("{complete} of 10 complete")
}

fn delta(c: &mut Checks) -> String {
    let mut r = rng(12);
    let opts = DeltaOptions { eps_override: Some(0.05), ..DeltaOptions::default() };
    let mut done = 0;
    let mut tries = 0;
    while done < 3 && tries < 30 {
        tries += 1;
        let g = random_triad_densities([90; 3], hyperreg::verify::DELTA_DENSITIES, r.gen()).unwrap();
        if (common::triangles(&g) as f64) < 0.2 * 90f64.powi(3) {
            continue;
        }
        done += 1;
        let h = triangle_trigraph(&g);
        let out = delta_decompose(&h, Some(&g), 0.1, None, &opts).unwrap();
        let e: HashSet<[usize; 3]> = h.triples().into_iter().map(|(x, y, z)| [x, y, z]).collect();
        for w in &out.witnesses {
            let mut e2 = e.clone();
            for t in &w.removed {
                e2.remove(t);
            }
            e2.extend(w.added.iter().copied());
            let sym = e.symmetric_difference(&e2).count() as u64;
            let edges = e.len() as u64;
            c.check(sym == w.sym_diff && 10 * sym <= edges, || format!("pivot {}: |EΔE′| = {sym} of {edges}", w.pivot));
        }
        let rep = &out.report;
        c.check(out.audit.passes(), || "audit fails".into());
        c.check(rep.p1_parts <= rep.v0_parts * rep.q_parts, || format!("|P1| = {}", rep.p1_parts));
        c.check(rep.symbolic_value.at_least(&BigUint::from(rep.p1_parts)), || "symbolic bound below |P1|".into());
    }
    c.check(done == 3, || format!("only {done} instances with ρ ≥ 0.2"));
    format!("{done} extra instances")
}

fn census(c: &mut Checks) -> String {
    let mut r = rng(13);
    let patterns = [Hypergraph3::empty(3), Hypergraph3::from_edges(3, [[0, 1, 2]]).unwrap()];
    for case in 0..50 {
        let n = r.gen_range(3..=10);
        let h = random_3graph(n, r.gen_range(0.1..0.9), r.gen()).unwrap();
        let windows: Vec<Vec<usize>> = (0..3)
            .map(|_| {
                let k = r.gen_range(1..=4.min(n));
                rand::seq::index::sample(&mut r, n, k).into_vec()
            })
            .collect();
        for f in &patterns {
            let (got, want) = (pattern_census(f, &h, &windows).unwrap(), common::census(f, &h, &windows));
            c.check(got == want, || format!("case {case}: {got} vs {want}"));
        }
    }
    "50 seeds, both 3-vertex patterns".into()
}

fn bounds(c: &mut Checks) -> String {
    let cap = 1000;
    let int = |v: u64| BoundExpr::int(v);
    let pow2 = |e: u32| BigUint::one() << e;
    // Each step maps v to v·2^v: 2, 8, 2048, 2048·2^2048.
    let towers = [Some(pow2(1)), Some(pow2(3)), Some(pow2(11)), Some(pow2(2059)), None];
    for (x, want) in (1..).zip(towers) {
        let got = eval_bound(&BoundExpr::tower(int(2), int(x)), cap).unwrap();
        c.check(got.exact() == want.as_ref(), || format!("T_2({x})"));
    }
    let wowzers = [Some(pow2(0)), Some(pow2(1)), Some(pow2(3)), None];
    for (x, want) in (1..).zip(wowzers) {
        let got = eval_bound(&BoundExpr::wowzer(int(x)), cap).unwrap();
        c.check(got.exact() == want.as_ref(), || format!("W({x})"));
    }
    let ten = |e: u64| BoundExpr::pow(int(10), int(e));
    c.check(eval_bound(&ten(cap - 1), cap).unwrap().exact().is_some(), || "10^(cap-1) overflows".into());
    let first = eval_bound(&ten(cap), cap).unwrap();
    c.check(matches!(first, BoundValue::Overflow { .. }), || "10^cap fits".into());
    c.check((0..3).all(|_| eval_bound(&ten(cap), cap).unwrap() == first), || "overflow differs between runs".into());
    format!("digit cap {cap}")
}

fn main() {
    let criteria = [
        Criterion { suite: "factorization", limit: Some(30.0), oracle: factorization },
        Criterion { suite: "counting", limit: Some(60.0), oracle: counting },
        Criterion { suite: "complement", limit: None, oracle: complement },
        Criterion { suite: "extremes", limit: None, oracle: extremes },
        Criterion { suite: "octahedral", limit: None, oracle: octahedral },
        Criterion { suite: "vc2", limit: None, oracle: vc2 },
        Criterion { suite: "coverage", limit: None, oracle: coverage },
        Criterion { suite: "common-refinement", limit: None, oracle: common_refinement },
        Criterion { suite: "conservative", limit: None, oracle: conservative },
        Criterion { suite: "partitioner", limit: Some(300.0), oracle: partitioner },
        Criterion { suite: "decomposer", limit: None, oracle: decomposer },
        Criterion { suite: "delta", limit: None, oracle: delta },
        Criterion { suite: "census", limit: None, oracle: census },
        Criterion { suite: "bounds", limit: None, oracle: bounds },
    ];
    assert_eq!(criteria.len(), SUITES.len());
    let mut failed = 0;
    for (i, crit) in criteria.iter().enumerate() {
        assert_eq!(crit.suite, SUITES[i].0);
        let report = run_suite(crit.suite, SEED).expect("suite runs");
        let in_time = crit.limit.is_none_or(|l| report.elapsed_secs < l);
        let start = Instant::now();
        let mut checks = Checks::new();
        let note = (crit.oracle)(&mut checks);
        let oracle_secs = start.elapsed().as_secs_f64();
        let ok = report.passed && in_time && checks.failures.is_empty() && checks.cases > 0;
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {:<18} {}  suite {}/{} in {:.2}s{}, oracle {}/{} in {:.2}s ({note})",
            i + 1,
            crit.suite,
            if ok { "PASS" } else { "FAIL" },
            report.cases - report.failures.len(),
            report.cases,
            report.elapsed_secs,
            if in_time { String::new() } else { format!(" over the {:.0}s limit", crit.limit.unwrap_or(0.0)) },
            checks.cases - checks.failures.len(),
            checks.cases,
            oracle_secs,
        );
        for f in report.failures.iter().take(3) {
            println!("    suite: {f}");
        }
        for f in checks.failures.iter().filter(|f| !f.is_empty()).take(3) {
            println!("    oracle: {f}");
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
