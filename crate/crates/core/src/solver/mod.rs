//! Exact solvers: brute-force oracles, the template algorithm for fixed
//! terminal count and family size, and connected R-dominating set search.

pub mod bits;
pub mod domination;
pub mod enumerate;
pub mod oracle;
pub mod paths;
pub mod rcist;
pub mod template;

pub use domination::{
    connected_r_dominating_sets, enumerate_dominating_families, find_dominating_family, for_each_dominating_family,
    max_dominating_family,
};
pub use enumerate::{for_each_steiner_tree, steiner_trees};
pub use oracle::{
    oracle_max, oracle_max_rcist, oracle_max_rdst, oracle_max_ridst, OracleNotion, OracleOptions, OracleResult,
    TreeFilter,
};
pub use paths::disjoint_paths;
pub use rcist::{enumerate_candidates, label_templates, solve_rcist, twin_graph, CandidateSolution, LabelledTemplate, SolveOptions};
pub use template::{enumerate_templates, Color, Template};
