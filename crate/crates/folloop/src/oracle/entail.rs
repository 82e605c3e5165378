//! Bounded counter-model search for entailment claims. The claim "every
//! stable model of the program satisfies the query" is tested by sweeping
//! all interpretations over small universes; a sweep that finds nothing is
//! evidence for the claim, never a proof of it.

use std::fmt;

use crate::syntax::{Formula, Program, Signature};

use super::sm::{enumerate_stable_models_with, EnumOptions};
use super::{eval, Interpretation, OracleError};

/// Outcome of a bounded counter-model search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntailmentVerdict {
    /// A stable model of the program that falsifies the query.
    Refuted(Box<Interpretation>),
    /// No counter-model exists on any universe that was checked. Larger
    /// universes remain unexplored, so this does not certify entailment.
    ConsistentUpTo(usize),
}

impl fmt::Display for EntailmentVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntailmentVerdict::Refuted(m) => {
                writeln!(f, "refuted by a stable model over {} element(s):", m.size())?;
                write!(f, "{m}")
            }
            EntailmentVerdict::ConsistentUpTo(n) => {
                write!(f, "no counter-model over universes of up to {n} element(s)")
            }
        }
    }
}

/// Searches for a stable model of `gamma` (with intensional predicates `p`)
/// that falsifies `query`. Universe sizes 1..=max_universe are swept in
/// order; when the signature names more object constants than that and has
/// no positive-arity function constants, the Herbrand interpretations are
/// swept as well. With fewer constants the Herbrand pass is redundant,
/// because each Herbrand stable model is isomorphic to one already found on
/// a canonical universe of the same size.
pub fn check_entailment_finite(
    gamma: &Program,
    query: &Formula,
    p: &[String],
    max_universe: usize,
) -> Result<EntailmentVerdict, OracleError> {
    check_entailment_finite_with(gamma, query, p, max_universe, &EnumOptions::pruned())
}

/// As [`check_entailment_finite`], with explicit enumeration options.
pub fn check_entailment_finite_with(
    gamma: &Program,
    query: &Formula,
    p: &[String],
    max_universe: usize,
    opts: &EnumOptions,
) -> Result<EntailmentVerdict, OracleError> {
    // The query may mention symbols the program never uses. Conjoining a
    // vacuously true implication pulls them into the signature, so the sweep
    // assigns them denotations too. The conjunct and its reduct are both
    // tautological, hence which interpretations are stable does not change.
    let f = Formula::and(
        gamma.fol_representation()?,
        Formula::implies(query.clone(), Formula::top()),
    );
    let sig = Signature::of_formula(&f)?;
    for size in 1..=max_universe {
        if let Some(m) = refuting_model(&f, query, p, size, false, opts)? {
            return Ok(EntailmentVerdict::Refuted(Box::new(m)));
        }
    }
    let constants = sig.functions.values().filter(|a| **a == 0).count();
    let positive_arity = sig.functions.values().any(|a| *a > 0);
    if constants > max_universe && !positive_arity {
        if let Some(m) = refuting_model(&f, query, p, 0, true, opts)? {
            return Ok(EntailmentVerdict::Refuted(Box::new(m)));
        }
    }
    Ok(EntailmentVerdict::ConsistentUpTo(max_universe))
}

/// First enumerated stable model that falsifies the query, if any. The
/// universe size is ignored in herbrand mode.
fn refuting_model(
    f: &Formula,
    query: &Formula,
    p: &[String],
    size: usize,
    herbrand: bool,
    opts: &EnumOptions,
) -> Result<Option<Interpretation>, OracleError> {
    for m in enumerate_stable_models_with(f, p, size, herbrand, opts)? {
        if !eval(query, &m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::check_sm;
    use crate::oracle::sm::SmOptions;
    use crate::parse::{parse_formula, parse_interpretation, parse_program};
    use crate::syntax::SyntaxError;

    const MARRIAGE_RULES: &str = "hasWife(X) :- exists Y (spouse(X, Y)).\n\
        hasWife(X) :- man(X), married(X).\n\
        married(X) :- man(X), hasWife(X).\n\
        exists W (discount(X, W)) :- married(X), not exists Z (accident(X, Z)).\n\
        man(john).\n";

    fn marriage(extra: &str) -> (Program, Vec<String>) {
        let gamma = parse_program(&format!("{MARRIAGE_RULES}{extra}")).unwrap();
        let p = gamma
            .intensional()
            .unwrap()
            .into_iter()
            .map(|(name, _)| name)
            .collect();
        (gamma, p)
    }

    #[test]
    fn lone_man_stays_unmarried_up_to_three_elements() {
        let (gamma, p) = marriage("");
        let query = parse_formula("not exists X (married(X))").unwrap();
        let verdict = check_entailment_finite(&gamma, &query, &p, 3).unwrap();
        assert_eq!(verdict, EntailmentVerdict::ConsistentUpTo(3));
    }

    #[test]
    fn a_spouse_fact_makes_the_marriage_claim_refutable() {
        let (gamma, p) = marriage("exists Y (spouse(john, Y)).\n");
        let query = parse_formula("not exists X (married(X))").unwrap();
        let verdict = check_entailment_finite(&gamma, &query, &p, 3).unwrap();
        let m = match verdict {
            EntailmentVerdict::Refuted(m) => m,
            other => panic!("expected a refutation, got {other}"),
        };
        assert!(!eval(&query, &m).unwrap());
        let f = gamma.fol_representation().unwrap();
        assert!(check_sm(&f, &m, &p).unwrap());
    }

    #[test]
    fn an_accident_cancels_the_discount_up_to_two_elements() {
        let (gamma, p) = marriage(
            "exists Y (spouse(john, Y)).\nexists Z (accident(john, Z)).\n",
        );
        let query = parse_formula("not exists W (discount(john, W))").unwrap();
        let verdict = check_entailment_finite(&gamma, &query, &p, 2).unwrap();
        assert_eq!(verdict, EntailmentVerdict::ConsistentUpTo(2));
    }

    #[test]
    fn herbrand_pass_separates_constants_the_sweep_collapses() {
        let gamma = parse_program("p(a). q(b). r(X) :- p(X), not q(X).").unwrap();
        let p = vec!["p".to_string(), "q".to_string(), "r".to_string()];
        let query = parse_formula("a = b").unwrap();
        // Size 1 forces a and b onto the same element, so only the Herbrand
        // pass can exhibit a model where the equality fails.
        let verdict = check_entailment_finite(&gamma, &query, &p, 1).unwrap();
        let m = match verdict {
            EntailmentVerdict::Refuted(m) => m,
            other => panic!("expected a refutation, got {other}"),
        };
        assert_eq!(m.universe, vec!["a".to_string(), "b".to_string()]);
        assert!(!eval(&query, &m).unwrap());
    }

    #[test]
    fn query_symbols_outside_the_program_are_swept() {
        let gamma = parse_program("p(a).").unwrap();
        let p = vec!["p".to_string()];
        let query = parse_formula("exists X (s(X))").unwrap();
        let verdict = check_entailment_finite(&gamma, &query, &p, 1).unwrap();
        let m = match verdict {
            EntailmentVerdict::Refuted(m) => m,
            other => panic!("expected a refutation, got {other}"),
        };
        assert!(!eval(&query, &m).unwrap());
    }

    #[test]
    fn query_arity_clash_is_reported_not_panicked() {
        // Each input parses on its own; the clash only exists between them.
        let gamma = parse_program("p(a).").unwrap();
        let query = parse_formula("p(a, a)").unwrap();
        let err = check_entailment_finite(&gamma, &query, &["p".to_string()], 1).unwrap_err();
        assert!(matches!(
            err,
            OracleError::Syntax(SyntaxError::ArityClash { .. })
        ));
    }

    #[test]
    fn zero_bound_without_constants_checks_nothing() {
        let gamma = parse_program("q(X) :- p(X).").unwrap();
        let query = parse_formula("forall X (q(X) -> p(X))").unwrap();
        let p = vec!["q".to_string()];
        let verdict = check_entailment_finite(&gamma, &query, &p, 0).unwrap();
        assert_eq!(verdict, EntailmentVerdict::ConsistentUpTo(0));
    }

    #[test]
    fn tiny_budget_surfaces_from_the_sweep() {
        let gamma = parse_program("p(a).").unwrap();
        let query = parse_formula("p(a)").unwrap();
        let opts = EnumOptions {
            prune: true,
            sm: SmOptions { budget: 1 },
        };
        let err =
            check_entailment_finite_with(&gamma, &query, &["p".to_string()], 1, &opts).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { .. }));
    }

    #[test]
    fn verdicts_print_their_evidence() {
        let consistent = EntailmentVerdict::ConsistentUpTo(3);
        assert_eq!(
            consistent.to_string(),
            "no counter-model over universes of up to 3 element(s)"
        );
        let witness = parse_interpretation("universe a b. pred p = { (a) }.").unwrap();
        let refuted = EntailmentVerdict::Refuted(Box::new(witness));
        let text = refuted.to_string();
        assert!(text.starts_with("refuted by a stable model over 2 element(s):"));
        assert!(text.contains("universe a b."));
    }
}
