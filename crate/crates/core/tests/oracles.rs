mod common;

use common::*;
use gaugedim::acyclic::{is_free_gauge_acyclic, plain_strong_dim_acyclic, weak_dim_acyclic};
use gaugedim::census::path_census;
use gaugedim::certs::{find_chi_certificate, find_edge_families, verify_certificate, z2_is_free, Certificate};
use gaugedim::families::*;
use gaugedim::outsplit::maximal_out_split;
use gaugedim::ExtNat;

fn oracle_quot(r: &[u64]) -> ExtNat {
    let max = *r.iter().max().unwrap();
    let min = *r.iter().min().unwrap();
    if min == 0 {
        ExtNat::Infinite
    } else {
        ExtNat::Finite((max + min - 1) / min)
    }
}

#[test]
fn census_matches_enumeration() {
    for seed in 0..300 {
        let g = random_acyclic(seed, 8, 14);
        for k in 2..=5 {
            let censuses = path_census(&g, k).unwrap();
            let sinks = g.sink_indices();
            assert_eq!(censuses.len(), sinks.len());
            let mut weak = ExtNat::ZERO;
            let mut balanced = true;
            for (c, &t) in censuses.iter().zip(&sinks) {
                let lengths = enumerate_path_lengths(&g, t);
                let r = residues(&lengths, k);
                assert_eq!(c.counts_by_residue, r, "seed {seed} k {k}");
                assert_eq!(c.quot(), oracle_quot(&r));
                weak = weak.max(oracle_quot(&r).minus(1));
                balanced &= r.iter().all(|&x| x == r[0]);
            }
            assert_eq!(weak_dim_acyclic(&g, k).unwrap().value, weak);
            let plain = plain_strong_dim_acyclic(&g, k).unwrap().value;
            assert_eq!(plain, if balanced { ExtNat::ZERO } else { ExtNat::Infinite });
            let free = sinks.iter().all(|&t| enumerate_path_lengths(&g, t).contains_key(&(k - 1)));
            assert_eq!(is_free_gauge_acyclic(&g, k).unwrap(), free);
            assert_eq!(free, weak.is_finite());
        }
    }
}

#[test]
fn outsplit_component_sizes() {
    for seed in 0..100 {
        let g = random_acyclic(seed, 8, 14);
        let split = maximal_out_split(&g).unwrap();
        for (comp, t) in split.components.iter().zip(g.sink_indices()) {
            let total: u64 = enumerate_path_lengths(&g, t).values().sum();
            assert_eq!(comp.graph.vertex_count() as u64, total);
            assert_eq!(comp.graph.edge_count() as u64, total - 1);
        }
    }
}

#[test]
fn edge_families_match_brute_force() {
    for seed in 0..400 {
        let g = random_graph(seed, 6, 10);
        let brute = brute_force_family_cap(&g);
        let found = find_edge_families(&g, 20);
        assert_eq!(found.is_some(), z2_is_free(&g), "seed {seed}");
        assert_eq!(brute.is_some(), z2_is_free(&g));
        if let (Some(c), Some(t)) = (&found, brute) {
            assert_eq!(c.classes.len(), t, "seed {seed}");
            assert!(c.classes.len() <= g.edge_count());
            verify_certificate(&g, &Certificate::EdgeFamily(c.clone())).unwrap();
            let greedy = find_edge_families(&g, 0).unwrap();
            assert_eq!(greedy.classes.len(), t, "greedy, seed {seed}");
        }
    }
}

/// Optimal cap equals the largest number of edges entering one vertex
/// from vertices without incoming edges (at least 1).
#[test]
fn edge_family_cap_closed_form() {
    for seed in 0..300 {
        let g = random_graph(1000 + seed, 7, 12);
        let Some(c) = find_edge_families(&g, 20) else {
            continue;
        };
        let forced = (0..g.vertex_count())
            .map(|v| {
                g.edges()
                    .iter()
                    .filter(|e| e.range == v && g.in_degree(e.source) == 0)
                    .count()
            })
            .max()
            .unwrap_or(0)
            .max(1);
        assert_eq!(c.classes.len(), forced, "seed {seed}");
    }
}

#[test]
fn chi_feasibility_matches_basic_solutions() {
    for seed in 0..150 {
        let g = random_graph(5000 + seed, 4, 6);
        let non_sinks: Vec<usize> = (0..g.vertex_count()).filter(|&v| !g.is_sink(v)).collect();
        let found = find_chi_certificate(&g);
        let oracle = !non_sinks.is_empty() && {
            let (a, b) = chi_system(&g, &non_sinks);
            basic_solution_feasible(&a, &b)
        };
        assert_eq!(found.is_some(), oracle, "seed {seed}");
        if let Some(c) = found {
            verify_certificate(&g, &Certificate::Chi(c.clone())).unwrap();
            // smallest col_max over all feasible supports
            let s = non_sinks.len();
            let adj = g.adjacency();
            let mut best = u64::MAX;
            for mask in 1usize..(1 << s) {
                let sup: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| non_sinks[i]).collect();
                let (a, b) = chi_system(&g, &sup);
                if basic_solution_feasible(&a, &b) {
                    let col = (0..g.vertex_count())
                        .map(|w| sup.iter().map(|&v| adj.get(v, w)).sum::<u64>())
                        .max()
                        .unwrap();
                    best = best.min(col);
                }
            }
            assert_eq!(c.col_max, best, "seed {seed}");
        }
    }
}

#[test]
fn chi_bounds_never_undercut_exact_values() {
    for seed in 0..200 {
        let g = random_acyclic(seed, 6, 8);
        let plain = plain_strong_dim_acyclic(&g, 2).unwrap().value;
        if let Some(c) = find_chi_certificate(&g) {
            assert!(ExtNat::Finite(c.implied_bound) >= plain, "seed {seed}");
        }
        let weak = weak_dim_acyclic(&g, 2).unwrap().value;
        if let Some(c) = find_edge_families(&g, 20) {
            assert!(ExtNat::Finite(c.implied_bound) >= weak, "seed {seed}");
        }
    }
}

#[test]
fn family_census_values() {
    // paths of M_3 (x) M_3 into the sink: lengths 0..4 with multiplicities 1,2,3,2,1
    let c = &path_census(&tensor_path_graph(3), 4).unwrap()[0];
    assert_eq!(c.counts_by_residue, vec![2, 2, 3, 2]);
    assert_eq!(c.quot(), ExtNat::Finite(2));
    let c = &path_census(&path_graph(7), 3).unwrap()[0];
    assert_eq!(c.counts_by_residue, vec![3, 2, 2]);
}
