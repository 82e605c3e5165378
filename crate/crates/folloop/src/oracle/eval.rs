//! Tarskian evaluation over a finite interpretation, plus the two
//! second-order derived evaluators: the reduct-style star translation and the
//! no-external-support condition. Both read a [`SecondOrderAssignment`] in
//! place of (or alongside) the predicate tables.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::Formula;

use super::{Interpretation, OracleError};

/// Values for a tuple of set variables, keyed by the predicate each set
/// shadows. A predicate with a key present is covered: the assignment speaks
/// for it, even with an empty set. A predicate without a key is untouched
/// and keeps its interpretation-table meaning.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct SecondOrderAssignment {
    pub sets: BTreeMap<String, BTreeSet<Vec<usize>>>,
}

impl SecondOrderAssignment {
    /// Covers every listed predicate with the empty set.
    pub fn empty_over(preds: &[String]) -> SecondOrderAssignment {
        SecondOrderAssignment {
            sets: preds
                .iter()
                .map(|p| (p.clone(), BTreeSet::new()))
                .collect(),
        }
    }

    /// Covers every listed predicate with its full extension in `i`.
    pub fn from_extensions(i: &Interpretation, preds: &[String]) -> SecondOrderAssignment {
        SecondOrderAssignment {
            sets: preds
                .iter()
                .map(|p| (p.clone(), i.pred_extension(p)))
                .collect(),
        }
    }

    pub fn covers(&self, pred: &str) -> bool {
        self.sets.contains_key(pred)
    }

    pub fn holds(&self, pred: &str, tuple: &[usize]) -> bool {
        self.sets.get(pred).is_some_and(|s| s.contains(tuple))
    }

    pub fn insert(&mut self, pred: impl Into<String>, tuple: Vec<usize>) {
        self.sets.entry(pred.into()).or_default().insert(tuple);
    }

    pub fn remove(&mut self, pred: &str, tuple: &[usize]) {
        if let Some(s) = self.sets.get_mut(pred) {
            s.remove(tuple);
        }
    }

    /// Total number of tuples across all covered predicates.
    pub fn atom_count(&self) -> usize {
        self.sets.values().map(|s| s.len()).sum()
    }

    pub fn is_nonempty(&self) -> bool {
        self.sets.values().any(|s| !s.is_empty())
    }

    /// Every covered set is a subset of the predicate's extension in `i`.
    pub fn is_sub_extension_of(&self, i: &Interpretation) -> bool {
        self.sets
            .iter()
            .all(|(p, s)| s.is_subset(&i.pred_extension(p)))
    }

    /// Sub-extension with at least one covered set strictly smaller.
    pub fn is_proper_sub_extension_of(&self, i: &Interpretation) -> bool {
        self.is_sub_extension_of(i)
            && self
                .sets
                .iter()
                .any(|(p, s)| s.len() < i.pred_extension(p).len())
    }

    /// The atoms of the assignment in a fixed order, as (predicate, tuple).
    pub fn atoms(&self) -> Vec<(String, Vec<usize>)> {
        self.sets
            .iter()
            .flat_map(|(p, s)| s.iter().map(move |t| (p.clone(), t.clone())))
            .collect()
    }
}

/// Evaluates a sentence. Free variables are an error.
pub fn eval(f: &Formula, i: &Interpretation) -> Result<bool, OracleError> {
    eval_env(f, i, &mut Vec::new())
}

/// Evaluates a formula under explicit variable bindings, innermost last.
pub fn eval_with_env(
    f: &Formula,
    i: &Interpretation,
    env: &[(String, usize)],
) -> Result<bool, OracleError> {
    eval_env(f, i, &mut env.to_vec())
}

fn eval_env(
    f: &Formula,
    i: &Interpretation,
    env: &mut Vec<(String, usize)>,
) -> Result<bool, OracleError> {
    match f {
        Formula::Atom(a) => {
            let mut tuple = Vec::with_capacity(a.args.len());
            for t in &a.args {
                tuple.push(i.eval_term(t, env)?);
            }
            Ok(i.holds(&a.pred, &tuple))
        }
        Formula::Eq(t1, t2) => Ok(i.eval_term(t1, env)? == i.eval_term(t2, env)?),
        Formula::Bottom => Ok(false),
        Formula::And(a, b) => Ok(eval_env(a, i, env)? && eval_env(b, i, env)?),
        Formula::Or(a, b) => Ok(eval_env(a, i, env)? || eval_env(b, i, env)?),
        Formula::Implies(a, b) => Ok(!eval_env(a, i, env)? || eval_env(b, i, env)?),
        Formula::Forall(v, g) => {
            for e in 0..i.size() {
                env.push((v.clone(), e));
                let holds = eval_env(g, i, env)?;
                env.pop();
                if !holds {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(v, g) => {
            for e in 0..i.size() {
                env.push((v.clone(), e));
                let holds = eval_env(g, i, env)?;
                env.pop();
                if holds {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Evaluates the star translation of `f`: atoms over covered predicates read
/// the assignment, every implication additionally requires its plain
/// counterpart, and everything else commutes with the translation.
pub fn eval_star(
    f: &Formula,
    i: &Interpretation,
    u: &SecondOrderAssignment,
) -> Result<bool, OracleError> {
    eval_star_env(f, i, u, &mut Vec::new())
}

fn eval_star_env(
    f: &Formula,
    i: &Interpretation,
    u: &SecondOrderAssignment,
    env: &mut Vec<(String, usize)>,
) -> Result<bool, OracleError> {
    match f {
        Formula::Atom(a) => {
            if !u.covers(&a.pred) {
                return eval_env(f, i, env);
            }
            let mut tuple = Vec::with_capacity(a.args.len());
            for t in &a.args {
                tuple.push(i.eval_term(t, env)?);
            }
            Ok(u.holds(&a.pred, &tuple))
        }
        Formula::Eq(..) | Formula::Bottom => eval_env(f, i, env),
        Formula::And(a, b) => Ok(eval_star_env(a, i, u, env)? && eval_star_env(b, i, u, env)?),
        Formula::Or(a, b) => Ok(eval_star_env(a, i, u, env)? || eval_star_env(b, i, u, env)?),
        Formula::Implies(a, b) => {
            let star = !eval_star_env(a, i, u, env)? || eval_star_env(b, i, u, env)?;
            if !star {
                return Ok(false);
            }
            Ok(!eval_env(a, i, env)? || eval_env(b, i, env)?)
        }
        Formula::Forall(v, g) => {
            for e in 0..i.size() {
                env.push((v.clone(), e));
                let holds = eval_star_env(g, i, u, env)?;
                env.pop();
                if !holds {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(v, g) => {
            for e in 0..i.size() {
                env.push((v.clone(), e));
                let holds = eval_star_env(g, i, u, env)?;
                env.pop();
                if holds {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Evaluates the no-external-support condition of `f` against the set tuple
/// `u`: an atom over a covered predicate must hold while its `u`-set misses
/// it, implications again carry their plain counterpart, and the other
/// connectives commute. The sets in `u` are arbitrary; nothing requires them
/// to sit inside the extensions of `i`.
pub fn nses_eval(
    f: &Formula,
    i: &Interpretation,
    u: &SecondOrderAssignment,
) -> Result<bool, OracleError> {
    nses_env(f, i, u, &mut Vec::new())
}

fn nses_env(
    f: &Formula,
    i: &Interpretation,
    u: &SecondOrderAssignment,
    env: &mut Vec<(String, usize)>,
) -> Result<bool, OracleError> {
    match f {
        Formula::Atom(a) => {
            if !u.covers(&a.pred) {
                return eval_env(f, i, env);
            }
            let mut tuple = Vec::with_capacity(a.args.len());
            for t in &a.args {
                tuple.push(i.eval_term(t, env)?);
            }
            Ok(i.holds(&a.pred, &tuple) && !u.holds(&a.pred, &tuple))
        }
        Formula::Eq(..) | Formula::Bottom => eval_env(f, i, env),
        Formula::And(a, b) => Ok(nses_env(a, i, u, env)? && nses_env(b, i, u, env)?),
        Formula::Or(a, b) => Ok(nses_env(a, i, u, env)? || nses_env(b, i, u, env)?),
        Formula::Implies(a, b) => {
            let inner = !nses_env(a, i, u, env)? || nses_env(b, i, u, env)?;
            if !inner {
                return Ok(false);
            }
            Ok(!eval_env(a, i, env)? || eval_env(b, i, env)?)
        }
        Formula::Forall(v, g) => {
            for e in 0..i.size() {
                env.push((v.clone(), e));
                let holds = nses_env(g, i, u, env)?;
                env.pop();
                if !holds {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(v, g) => {
            for e in 0..i.size() {
                env.push((v.clone(), e));
                let holds = nses_env(g, i, u, env)?;
                env.pop();
                if holds {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_interpretation, parse_program};

    fn interp(src: &str) -> Interpretation {
        parse_interpretation(src).unwrap()
    }

    #[test]
    fn quantifiers_range_over_the_universe() {
        let i = interp("universe e0 e1. pred p = { (e0) }.");
        let all = parse_formula("forall X (p(X))").unwrap();
        let some = parse_formula("exists X (p(X))").unwrap();
        assert!(!eval(&all, &i).unwrap());
        assert!(eval(&some, &i).unwrap());
    }

    #[test]
    fn element_names_denote_their_elements() {
        let i = interp("universe e0 e1. const a = e1. pred p = { (e1) }.");
        assert!(eval(&parse_formula("p(a)").unwrap(), &i).unwrap());
        assert!(eval(&parse_formula("p(e1)").unwrap(), &i).unwrap());
        assert!(!eval(&parse_formula("p(e0)").unwrap(), &i).unwrap());
        assert!(eval(&parse_formula("a = e1").unwrap(), &i).unwrap());
    }

    #[test]
    fn free_variables_are_rejected() {
        let i = interp("universe e0.");
        assert!(matches!(
            eval(&parse_formula("X = X").unwrap(), &i),
            Err(OracleError::UnboundVariable(_))
        ));
        assert!(eval_with_env(
            &parse_formula("X = e0").unwrap(),
            &i,
            &[("X".to_string(), 0)]
        )
        .unwrap());
    }

    #[test]
    fn star_of_full_assignment_agrees_with_plain_evaluation() {
        let f = parse_program("p(X) :- q(X). q(Y) :- p(Y). p(Z) :- not r(Z).")
            .unwrap()
            .fol_representation()
            .unwrap();
        let i = interp("universe e0. pred p = { (e0) }. pred q = { (e0) }.");
        let preds = ["p".to_string(), "q".to_string(), "r".to_string()];
        let full = SecondOrderAssignment::from_extensions(&i, &preds);
        assert_eq!(eval(&f, &i).unwrap(), eval_star(&f, &i, &full).unwrap());
    }

    #[test]
    fn star_reads_the_assignment_for_covered_atoms() {
        // p holds, but its set value is empty: the starred atom is false
        // while the starred negation stays false too (negation carries the
        // plain implication conjunct).
        let i = interp("universe e0. pred p = { (e0) }.");
        let u = SecondOrderAssignment::empty_over(&["p".to_string()]);
        assert!(!eval_star(&parse_formula("p(e0)").unwrap(), &i, &u).unwrap());
        assert!(!eval_star(&parse_formula("not p(e0)").unwrap(), &i, &u).unwrap());
    }

    #[test]
    fn uncovered_predicates_keep_their_tables() {
        let i = interp("universe e0. pred p = { (e0) }. pred q = { (e0) }.");
        let u = SecondOrderAssignment::empty_over(&["p".to_string()]);
        assert!(eval_star(&parse_formula("q(e0)").unwrap(), &i, &u).unwrap());
    }

    #[test]
    fn support_condition_on_a_fact() {
        // For F = p(e0) and the singleton set holding p(e0), the condition
        // p(e0) and not-in-u fails; for the empty set it holds.
        let f = parse_formula("p(e0)").unwrap();
        let i = interp("universe e0. pred p = { (e0) }.");
        let mut with_atom = SecondOrderAssignment::empty_over(&["p".to_string()]);
        with_atom.insert("p", vec![0]);
        assert!(!nses_eval(&f, &i, &with_atom).unwrap());
        let empty = SecondOrderAssignment::empty_over(&["p".to_string()]);
        assert!(nses_eval(&f, &i, &empty).unwrap());
    }

    #[test]
    fn support_sets_may_exceed_extensions() {
        let f = parse_formula("p(e0)").unwrap();
        let i = interp("universe e0 e1. pred p = { (e0) }.");
        let mut u = SecondOrderAssignment::empty_over(&["p".to_string()]);
        u.insert("p", vec![1]);
        assert!(!u.is_sub_extension_of(&i));
        // The set misses p(e0), so the condition reduces to p(e0) itself.
        assert!(nses_eval(&f, &i, &u).unwrap());
    }

    #[test]
    fn proper_sub_extension_flags() {
        let i = interp("universe e0 e1. pred p = { (e0), (e1) }.");
        let preds = ["p".to_string()];
        let full = SecondOrderAssignment::from_extensions(&i, &preds);
        assert!(full.is_sub_extension_of(&i));
        assert!(!full.is_proper_sub_extension_of(&i));
        let mut smaller = full.clone();
        smaller.remove("p", &[1]);
        assert!(smaller.is_proper_sub_extension_of(&i));
    }
}
