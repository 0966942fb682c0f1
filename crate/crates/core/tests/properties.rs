mod common;

use common::*;
use gaugedim::acyclic::{plain_strong_dim_acyclic, weak_dim_acyclic};
use gaugedim::census::path_census;
use gaugedim::certs::{find_chi_certificate, verify_certificate, Certificate};
use gaugedim::exec::Exec;
use gaugedim::outsplit::{maximal_out_split, maximal_out_split_with};
use gaugedim::report::{analyze, AnalyzeOptions, Report};
use gaugedim::witness::{build_gauge_unitary, build_weak_witness, verify_witness};
use gaugedim::{ExtNat, Graph};
use proptest::prelude::*;

fn quick() -> AnalyzeOptions {
    AnalyzeOptions {
        obstruction_trials: 5,
        ..AnalyzeOptions::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weak_never_exceeds_plain(seed in any::<u64>(), k in 2usize..6) {
        let g = random_acyclic(seed, 8, 14);
        let weak = weak_dim_acyclic(&g, k).unwrap().value;
        let plain = plain_strong_dim_acyclic(&g, k).unwrap().value;
        prop_assert!(weak <= plain);
        // weak is 0 exactly when plain is 0
        prop_assert_eq!(weak == ExtNat::ZERO, plain == ExtNat::ZERO);
    }

    #[test]
    fn census_total_matches_histogram(seed in any::<u64>(), k in 2usize..6) {
        let g = random_acyclic(seed, 8, 14);
        for c in path_census(&g, k).unwrap() {
            prop_assert_eq!(c.total(), c.histogram.total());
            prop_assert_eq!(c.histogram.count(0), 1);
        }
    }

    #[test]
    fn outsplit_census_agrees(seed in any::<u64>(), k in 2usize..5) {
        let g = random_acyclic(seed, 7, 12);
        let direct = path_census(&g, k).unwrap();
        let split = maximal_out_split(&g).unwrap();
        for (comp, c) in split.components.iter().zip(&direct) {
            let again = path_census(&comp.graph, k).unwrap();
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(&again[0].counts_by_residue, &c.counts_by_residue);
        }
        prop_assert_eq!(split, maximal_out_split_with(&g, Exec::Sequential).unwrap());
    }

    #[test]
    fn weak_witnesses_verify(seed in any::<u64>(), k in 2usize..5) {
        let g = random_acyclic(seed, 6, 9);
        for comp in maximal_out_split(&g).unwrap().components {
            let u = build_gauge_unitary(&comp.graph, k).unwrap();
            if let Ok(w) = build_weak_witness(&comp.graph, k) {
                prop_assert_eq!(ExtNat::Finite(w.matrices.len() as u64), u.quot());
                let r = verify_witness(&w, &u).unwrap();
                prop_assert!(r.passed, "{:?}", r);
            } else {
                prop_assert_eq!(u.quot(), ExtNat::Infinite);
            }
        }
    }

    #[test]
    fn chi_certificates_verify(seed in any::<u64>()) {
        let g = random_graph(seed, 6, 10);
        if let Some(c) = find_chi_certificate(&g) {
            prop_assert!(verify_certificate(&g, &Certificate::Chi(c)).is_ok());
        }
    }

    #[test]
    fn graph_json_round_trip(seed in any::<u64>()) {
        let g = random_graph(seed, 6, 10);
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_round_trip_and_are_deterministic(seed in any::<u64>(), k in 2usize..4) {
        let g = random_graph(seed, 5, 8);
        let a = analyze(&g, k, &quick()).unwrap();
        prop_assert_eq!(&Report::from_json(&a.to_json()).unwrap(), &a);
        let seq = AnalyzeOptions { exec: Exec::Sequential, ..quick() };
        prop_assert_eq!(analyze(&g, k, &seq).unwrap().to_json(), a.to_json());
    }

    #[test]
    fn acyclic_reports_round_trip(seed in any::<u64>(), k in 2usize..4) {
        let g = random_acyclic(seed, 6, 9);
        let a = analyze(&g, k, &quick()).unwrap();
        prop_assert!(a.witnesses_passed());
        prop_assert_eq!(&Report::from_json(&a.to_json()).unwrap(), &a);
    }
}
