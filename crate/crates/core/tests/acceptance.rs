//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use gaugedim::acyclic::{plain_strong_dim_acyclic, weak_dim_acyclic};
use gaugedim::census::path_census;
use gaugedim::certs::{
    find_chi_certificate, find_edge_families, sink_free_bound, verify_certificate, z2_is_free, Certificate,
};
use gaugedim::families::*;
use gaugedim::outsplit::maximal_out_split;
use gaugedim::registry::Relation;
use gaugedim::report::{analyze, AnalyzeOptions};
use gaugedim::witness::{build_gauge_unitary, build_weak_witness, rank_obstruction_test, verify_witness};
use gaugedim::{DimKind, ExtNat, Group};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn matrix_weak(n: u64, k: u64) -> ExtNat {
    if k > n {
        ExtNat::Infinite
    } else {
        ExtNat::Finite(n.div_ceil(k).div_ceil(n / k) - 1)
    }
}

fn c1_matrix_table() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=12usize {
        for k in 2..=8usize {
            let g = path_graph(n);
            let plain = plain_strong_dim_acyclic(&g, k).map_err(|e| e.to_string())?.value;
            let want = if n % k == 0 { ExtNat::ZERO } else { ExtNat::Infinite };
            ensure(plain == want, || format!("plain n={n} k={k}: {plain} != {want}"))?;
            let weak = weak_dim_acyclic(&g, k).map_err(|e| e.to_string())?.value;
            let want = matrix_weak(n as u64, k as u64);
            ensure(weak == want, || format!("weak n={n} k={k}: {weak} != {want}"))?;
            cases += 1;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{cases} (n, k) pairs"))
}

fn c2_two_sided() -> Check {
    let start = Instant::now();
    let (mut witnesses, mut obstructions) = (0, 0);
    for seed in 0..200u64 {
        let g = random_acyclic(seed, 8, 14);
        let split = maximal_out_split(&g).map_err(|e| e.to_string())?;
        for k in [2usize, 3, 4] {
            for comp in &split.components {
                let u = build_gauge_unitary(&comp.graph, k).map_err(|e| e.to_string())?;
                let ExtNat::Finite(q) = u.quot() else {
                    continue;
                };
                let w = build_weak_witness(&comp.graph, k).map_err(|e| e.to_string())?;
                let r = verify_witness(&w, &u).map_err(|e| e.to_string())?;
                ensure(r.passed && r.max_defect() <= 1e-10 && r.lambda_min >= 1e-8, || {
                    format!("seed {seed} k {k} sink {}: {r:?}", comp.sink)
                })?;
                witnesses += 1;
                if q > 1 {
                    let d = q as usize - 2;
                    let o = rank_obstruction_test(&u, d, 100, seed).map_err(|e| e.to_string())?;
                    let worst = o.lambda_min.iter().copied().fold(0.0, f64::max);
                    ensure(o.all_singular && worst <= 1e-8, || {
                        format!("seed {seed} k {k} sink {}: obstruction lambda_min up to {worst:e}", comp.sink)
                    })?;
                    obstructions += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{witnesses} witnesses verified, {obstructions} obstruction tests x 100 trials"))
}

fn c3_freeness() -> Check {
    let mut sinks = 0;
    for seed in 0..200u64 {
        let g = random_acyclic(seed, 8, 14);
        for k in [2usize, 3, 4] {
            let censuses = path_census(&g, k).map_err(|e| e.to_string())?;
            for c in censuses {
                let has = g.has_path_of_length(&c.sink, k - 1).map_err(|e| e.to_string())?;
                ensure(c.quot().is_finite() == has, || format!("seed {seed} k {k} sink {}", c.sink))?;
                sinks += 1;
            }
        }
    }
    Ok(format!("{sinks} (graph, k, sink) cases"))
}

fn c4_strictness() -> Check {
    let mut pairs = 0;
    for n in 2..=4usize {
        for k in n + 1..=2 * n - 1 {
            let path = weak_dim_acyclic(&path_graph(n), k).map_err(|e| e.to_string())?.value;
            let tensor = weak_dim_acyclic(&tensor_path_graph(n), k).map_err(|e| e.to_string())?.value;
            ensure(path == ExtNat::Infinite, || format!("path({n}) k={k}: {path}"))?;
            ensure(tensor.is_finite(), || format!("tensor_path({n}) k={k}: {tensor}"))?;
            pairs += 1;
        }
    }
    let c = &path_census(&tensor_path_graph(3), 4).map_err(|e| e.to_string())?[0];
    ensure(c.counts_by_residue == [2, 2, 3, 2], || format!("census {:?}", c.counts_by_residue))?;
    ensure(c.quot() == ExtNat::Finite(2), || format!("quot {}", c.quot()))?;
    let w = weak_dim_acyclic(&tensor_path_graph(3), 4).map_err(|e| e.to_string())?.value;
    ensure(w == ExtNat::Finite(1), || format!("weak {w}"))?;
    Ok(format!("{pairs} (n, k) pairs, tensor_path(3) k=4 weak = 1"))
}

fn c5_certificates() -> Check {
    let start = Instant::now();
    for n in 2..=6usize {
        let g = cuntz_graph(n);
        let c = find_chi_certificate(&g).ok_or(format!("cuntz({n}): no certificate"))?;
        ensure(c.implied_bound == 2 * n as u64 - 1, || format!("cuntz({n}): bound {}", c.implied_bound))?;
        verify_certificate(&g, &Certificate::Chi(c)).map_err(|e| e.to_string())?;
    }
    for n in 1..=5usize {
        let g = odd_sphere_graph(n);
        let c = find_chi_certificate(&g).ok_or(format!("odd_sphere({n}): no certificate"))?;
        ensure(c.implied_bound == 2 * n as u64 - 1, || format!("odd_sphere({n}): bound {}", c.implied_bound))?;
        verify_certificate(&g, &Certificate::Chi(c)).map_err(|e| e.to_string())?;
        let t = sink_free_bound(&g).ok_or(format!("odd_sphere({n}): no sink-free bound"))?;
        ensure(t.value == ExtNat::Finite(2 * n as u64 - 1), || format!("odd_sphere({n}): {}", t.value))?;
        let f = find_edge_families(&g, 20).ok_or(format!("odd_sphere({n}): no families"))?;
        ensure(f.implied_bound == 1, || format!("odd_sphere({n}): family bound {}", f.implied_bound))?;
        verify_certificate(&g, &Certificate::EdgeFamily(f)).map_err(|e| e.to_string())?;
    }
    let g = toeplitz_graph();
    let f = find_edge_families(&g, 20).ok_or("toeplitz: no families")?;
    ensure(f.implied_bound == 1, || format!("toeplitz: family bound {}", f.implied_bound))?;
    verify_certificate(&g, &Certificate::EdgeFamily(f)).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(5))?;
    Ok("cuntz 2..6, odd_sphere 1..5, toeplitz".into())
}

fn c6_outsplit() -> Check {
    for seed in 0..100u64 {
        let g = random_acyclic(seed, 8, 14);
        let split = maximal_out_split(&g).map_err(|e| e.to_string())?;
        for (comp, t) in split.components.iter().zip(g.sink_indices()) {
            let hist = g.path_length_histogram(g.label(t)).map_err(|e| e.to_string())?;
            ensure(comp.graph.vertex_count() as u64 == hist.total(), || format!("seed {seed}: |F0| mismatch"))?;
            for k in 2..=4 {
                let direct = path_census(&g, k).map_err(|e| e.to_string())?;
                let direct = direct.iter().find(|c| c.sink == comp.sink).unwrap();
                let via = &path_census(&comp.graph, k).map_err(|e| e.to_string())?[0];
                ensure(via.counts_by_residue == direct.counts_by_residue, || {
                    format!("seed {seed} k {k}: census mismatch")
                })?;
            }
        }
    }
    for n in 1..=8usize {
        let p = path_graph(n);
        let split = maximal_out_split(&p).map_err(|e| e.to_string())?;
        ensure(split.components.len() == 1, || format!("path({n}): components"))?;
        let f = &split.components[0].graph;
        // v_i <-> the unique path of length n - i
        let lengths = split.components[0].lengths();
        let image = |x: usize| n - 1 - lengths[x];
        let mut mapped: Vec<(usize, usize)> = f.edges().iter().map(|e| (image(e.source), image(e.range))).collect();
        mapped.sort();
        let mut want: Vec<(usize, usize)> = p.edges().iter().map(|e| (e.source, e.range)).collect();
        want.sort();
        ensure(f.vertex_count() == n && mapped == want, || format!("path({n}) not edge-isomorphic"))?;
    }
    Ok("100 random graphs, path(1..8)".into())
}

fn c7_minimality() -> Check {
    let start = Instant::now();
    let mut compared = 0;
    for seed in 0..300u64 {
        let g = random_graph(seed, 6, 10);
        let brute = brute_force_family_cap(&g);
        let found = find_edge_families(&g, 20);
        ensure(found.is_some() == z2_is_free(&g), || format!("seed {seed}: existence"))?;
        ensure(found.as_ref().map(|c| c.classes.len()) == brute, || {
            format!("seed {seed}: {:?} vs brute force {brute:?}", found.as_ref().map(|c| c.classes.len()))
        })?;
        compared += 1;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{compared} graphs with |E1| <= 10"))
}

fn c8_registry() -> Check {
    let opts = AnalyzeOptions {
        obstruction_trials: 20,
        ..AnalyzeOptions::default()
    };
    let mut runs = 0;
    for family in Family::ALL {
        let params: Vec<Option<usize>> = if family.takes_parameter() {
            (family.min_parameter()..=6).map(Some).collect()
        } else {
            vec![None]
        };
        for n in params {
            let g = family.generate(n).map_err(|e| e.to_string())?;
            for k in 2..=8usize {
                let r = analyze(&g, k, &opts).map_err(|e| format!("{} k={k}: {e}", g.name()))?;
                ensure(r.witnesses_passed(), || format!("{} k={k}: witness check failed", g.name()))?;
                let known = |kind: DimKind, rel: Relation| {
                    r.registry
                        .iter()
                        .find(|h| h.group == Group::Cyclic(k) && h.kind == kind && h.relation == rel)
                        .map(|h| h.value)
                };
                match family {
                    Family::Cycle => {
                        let want = if n.unwrap() % k == 0 { ExtNat::ZERO } else { ExtNat::Finite(1) };
                        for kind in DimKind::ALL {
                            ensure(known(kind, Relation::Eq) == Some(want), || {
                                format!("{} k={k}: {kind} not {want}", g.name())
                            })?;
                        }
                    }
                    Family::Toeplitz => ensure(known(DimKind::Strong, Relation::Eq) == Some(ExtNat::Infinite), || {
                        format!("toeplitz k={k}: strong not inf")
                    })?,
                    Family::Cuntz => {
                        let weak = known(DimKind::Weak, Relation::Eq);
                        let want = [2, 4, 8].contains(&k).then_some(ExtNat::Finite(1));
                        ensure(weak == want, || format!("{} k={k}: weak {weak:?}", g.name()))?;
                    }
                    _ => {}
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} (family, k) analyses"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("matrix algebra table, n 1..12, k 2..8", c1_matrix_table),
        ("witness and rank obstruction on 200 random acyclic graphs", c2_two_sided),
        ("freeness equivalence on 200 random acyclic graphs", c3_freeness),
        ("strictness of path vs tensor path", c4_strictness),
        ("certificate reproduction for Cuntz, odd spheres, Toeplitz", c5_certificates),
        ("out-split oracle", c6_outsplit),
        ("edge-family minimality vs brute force", c7_minimality),
        ("registry regression over built-in families, k 2..8", c8_registry),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
