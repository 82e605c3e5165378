//! Dependency structure of sentences: which head atoms can pass support to
//! which body atoms, the loops this induces, and the syntactic classes
//! (tight, atomic-tight, bounded, semi-safe) that decide how much loop
//! machinery a sentence needs.

mod classify;
mod loops;
mod unify;

pub use classify::{
    is_atomic_tight, is_bounded, is_semi_safe, is_tight, restricted_vars, Verdict,
};
pub use loops::{enumerate_loops, LoopSetResult, LoopStatus};
pub use unify::{match_tuples, subsumes, unify_tuples, Substitution};

use crate::syntax::{strictly_positive_atoms, Atom, Formula, OccurrenceTable};

/// One head-body atom pair of a rule: the head atom occurs strictly
/// positively in the consequent, the body atom occurs positively in the
/// antecedent and outside every negative subformula of it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DependencyPair {
    pub head: Atom,
    pub body: Atom,
    /// Index of the originating rule in traversal order over `f`.
    pub rule_index: usize,
}

/// Collects the dependency pairs of every rule of `f`. Atoms are deduplicated
/// per rule; a pair appears once even when the body atom occurs twice.
///
/// `f` should be rectified first when pairs from different rules are compared
/// or composed, otherwise unrelated rules can appear to share variables.
pub fn dependency_pairs(f: &Formula) -> Vec<DependencyPair> {
    let table = OccurrenceTable::of(f);
    let mut pairs = Vec::new();
    for (rule_index, rule) in table.rules.iter().enumerate() {
        let heads = strictly_positive_atoms(&rule.consequent);
        let body_table = OccurrenceTable::of(&rule.antecedent);
        let mut bodies: Vec<Atom> = Vec::new();
        for occ in &body_table.atoms {
            if occ.is_positive() && !occ.in_negative_subformula && !bodies.contains(&occ.atom) {
                bodies.push(occ.atom.clone());
            }
        }
        for head in &heads {
            for body in &bodies {
                pairs.push(DependencyPair {
                    head: head.clone(),
                    body: body.clone(),
                    rule_index,
                });
            }
        }
    }
    pairs
}

/// Edges of the predicate-level dependency graph: `(p, q)` when some
/// dependency pair has head predicate `p` and body predicate `q`.
pub fn predicate_edges(f: &Formula) -> Vec<(String, String)> {
    let mut edges = Vec::new();
    for pair in dependency_pairs(f) {
        let edge = (pair.head.pred.clone(), pair.body.pred.clone());
        if !edges.contains(&edge) {
            edges.push(edge);
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn pairs_of(src: &str) -> Vec<(String, String)> {
        let program = parse_program(src).unwrap();
        let f = program.fol_representation().unwrap();
        dependency_pairs(&f)
            .into_iter()
            .map(|p| (p.head.to_string(), p.body.to_string()))
            .collect()
    }

    #[test]
    fn mutual_recursion_yields_two_pairs() {
        let pairs = pairs_of("p(X) :- q(X). q(Y) :- p(Y). p(Z) :- not r(Z).");
        assert_eq!(
            pairs,
            vec![
                ("p(X)".to_string(), "q(X)".to_string()),
                ("q(Y)".to_string(), "p(Y)".to_string()),
            ]
        );
    }

    #[test]
    fn negated_bodies_contribute_nothing() {
        assert!(pairs_of("p(a). q(X) :- not p(X).").is_empty());
    }

    #[test]
    fn disjunctive_heads_pair_each_disjunct() {
        let pairs = pairs_of("p(X, Y) ; p(Y, Z) :- q(X, Z).");
        assert_eq!(
            pairs,
            vec![
                ("p(X, Y)".to_string(), "q(X, Z)".to_string()),
                ("p(Y, Z)".to_string(), "q(X, Z)".to_string()),
            ]
        );
    }

    #[test]
    fn rule_indices_follow_traversal_order() {
        let program = parse_program("p(X) :- q(X). r(Y) :- p(Y).").unwrap();
        let f = program.fol_representation().unwrap();
        let pairs = dependency_pairs(&f);
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].rule_index, 0);
        assert_eq!(pairs[1].rule_index, 1);
    }

    #[test]
    fn duplicate_body_occurrences_collapse() {
        let pairs = pairs_of("p(X) :- q(X), q(X).");
        assert_eq!(pairs.len(), 1);
    }

    #[test]
    fn predicate_edges_dedup() {
        let program = parse_program("p(X) :- q(X). p(Y) :- q(Y), r(Y).").unwrap();
        let f = program.fol_representation().unwrap();
        let edges = predicate_edges(&f);
        assert_eq!(
            edges,
            vec![
                ("p".to_string(), "q".to_string()),
                ("p".to_string(), "r".to_string()),
            ]
        );
    }
}
