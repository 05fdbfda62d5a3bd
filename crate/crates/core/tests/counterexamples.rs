//! Small instances pinned where alternative definitions give different
//! answers.

use cist::bounds::{check_treewidth_bounds, exact_treewidth, Verdict};
use cist::construct::{bipartite_max_ridst, bipartite_ridst_size};
use cist::darbor::{
    build_directed_r_minor, expand_cisa_to_rcist, find_cisa_partition, oracle_max_cisa, oracle_max_cisa_by,
};
use cist::solver::{oracle_max, oracle_max_ridst, OracleNotion, OracleOptions};
use cist::verify::{verify_cisa, verify_cisa_by};
use cist::{Arborescence, DiGraph, Error, InteriorRule, MultiGraph, TerminalSet, TreeFamily};

#[test]
fn doubled_terminal_edge_beats_treewidth_one() {
    let g = MultiGraph::new(["a", "b", "c"], [("ab1", "a", "b"), ("ab2", "a", "b"), ("bc", "b", "c")]).unwrap();
    let r = TerminalSet::new(&g, &["a", "b"]).unwrap();
    let f = TreeFamily::from_id_lists(&g, &[vec!["ab1"], vec!["ab2"]]).unwrap();
    assert_eq!(exact_treewidth(&g).unwrap(), 1);
    let reports = check_treewidth_bounds(&g, &r, &f).unwrap();
    let pendant = reports.iter().find(|b| b.bound == "treewidth-pendant").unwrap();
    assert_eq!((pendant.asserted, pendant.observed, pendant.verdict), (Some(1), 2, Verdict::Violation));
}

#[test]
fn shared_root_of_degree_one_is_interior() {
    // 3 -> 1 -> 2 and 3 -> 2 -> 1: the common root 3 has degree 1 in both
    let d = DiGraph::new(["1", "2", "3"], [("1->2", "1", "2"), ("2->1", "2", "1"), ("3->1", "3", "1"), ("3->2", "3", "2")])
        .unwrap();
    let pair = vec![
        Arborescence::from_ids(&d, "3", &["3->1", "1->2"], 0).unwrap(),
        Arborescence::from_ids(&d, "3", &["3->2", "2->1"], 1).unwrap(),
    ];
    assert!(verify_cisa_by(&d, &pair, InteriorRule::Degree).unwrap().valid);
    assert!(!verify_cisa(&d, &pair).unwrap().valid);
    assert_eq!(oracle_max_cisa_by(&d, false, InteriorRule::Degree).unwrap().len(), 2);
    assert_eq!(oracle_max_cisa(&d, false).unwrap().len(), 1);
    assert!(find_cisa_partition(&d, 2, false).unwrap().is_none());
}

#[test]
fn two_cycle_on_a_single_edge_does_not_expand() {
    let g = MultiGraph::new(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c"), ("ac", "a", "c")]).unwrap();
    let r = TerminalSet::new(&g, &["a", "b", "c"]).unwrap();
    let m = build_directed_r_minor(&g, &r, vec![vec![0], vec![1], vec![2]]).unwrap();
    let best = oracle_max_cisa(&m.minor, false).unwrap();
    assert_eq!(best.len(), 3);
    assert_eq!(oracle_max(&g, &r, OracleNotion::Rcist, &OracleOptions::default()).unwrap().size, 1);
    assert!(matches!(expand_cisa_to_rcist(&g, &r, &m, &best), Err(Error::Unsupported(_))));
}

#[test]
fn one_terminal_per_side_caps_at_the_smaller_side() {
    for (a, b) in [(4, 2), (2, 4), (3, 3), (4, 1)] {
        let (g, r) = cist::construct::complete_bipartite(a, b, 1, 1).unwrap();
        let expect = oracle_max_ridst(&g, &r, &OracleOptions::default()).unwrap().size;
        assert_eq!(bipartite_ridst_size(a, b, 1, 1).unwrap(), expect);
        assert_eq!(bipartite_max_ridst(a, b, 1, 1).unwrap().family.len(), expect);
    }
    assert_eq!(bipartite_ridst_size(4, 2, 1, 1).unwrap(), 2);
}
