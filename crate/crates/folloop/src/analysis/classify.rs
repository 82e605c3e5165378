//! Syntactic classes that control which reduction applies to a sentence:
//! tightness, atomic-tightness, boundedness, and semi-safety.

use std::collections::BTreeSet;

use crate::syntax::{Formula, Signature, SyntaxError, Term};

use super::loops::{ground_graph, LoopStatus};
use super::{dependency_pairs, enumerate_loops, predicate_edges};

/// Three-valued answer for properties that are undecidable in general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// The check cannot decide this input; the string says why.
    Unknown(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No => f.write_str("no"),
            Verdict::Unknown(reason) => write!(f, "unknown ({reason})"),
        }
    }
}

fn function_verdict(property: &str) -> Verdict {
    Verdict::Unknown(format!(
        "{property} is undecidable for inputs with function symbols of positive arity"
    ))
}

/// Whether every loop of `f` is finite, equivalently whether `f` has a finite
/// complete set of loops. Decided exactly on function-free inputs.
pub fn is_bounded(f: &Formula) -> Verdict {
    let sig = Signature::of_formula(f).expect("arity-consistent input");
    if sig.has_positive_arity_fn() {
        return function_verdict("boundedness");
    }
    match enumerate_loops(f, None).status {
        LoopStatus::Complete => Verdict::Yes,
        _ => Verdict::No,
    }
}

/// Whether the dependency graph of `f` has no infinite paths: `f` must be
/// bounded and its ground dependency graph over the sentence's constants
/// (one probe constant when there are none) must be acyclic.
pub fn is_atomic_tight(f: &Formula) -> Verdict {
    let f = crate::syntax::rectify(f);
    let sig = Signature::of_formula(&f).expect("arity-consistent input");
    if sig.has_positive_arity_fn() {
        return function_verdict("atomic-tightness");
    }
    if !is_bounded(&f).is_yes() {
        return Verdict::No;
    }
    let mut consts = sig.object_constants();
    if consts.is_empty() {
        consts.push(fresh_probe(&sig));
    }
    let pool: Vec<Term> = consts.iter().map(|c| Term::con(c)).collect();
    let graph = ground_graph(&dependency_pairs(&f), &pool);
    if graph.has_cycle() {
        Verdict::No
    } else {
        Verdict::Yes
    }
}

fn fresh_probe(sig: &Signature) -> String {
    let mut i = 1;
    loop {
        let name = format!("c{i}");
        if !sig.functions.contains_key(&name) {
            return name;
        }
        i += 1;
    }
}

/// Whether the predicate-level dependency graph of `f` is acyclic.
pub fn is_tight(f: &Formula) -> bool {
    let f = crate::syntax::rectify(f);
    let edges = predicate_edges(&f);
    let preds: BTreeSet<&String> = edges.iter().flat_map(|(a, b)| [a, b]).collect();
    let mut visiting: BTreeSet<&String> = BTreeSet::new();
    let mut done: BTreeSet<&String> = BTreeSet::new();
    fn dfs<'a>(
        node: &'a String,
        edges: &'a [(String, String)],
        visiting: &mut BTreeSet<&'a String>,
        done: &mut BTreeSet<&'a String>,
    ) -> bool {
        if done.contains(node) {
            return true;
        }
        if !visiting.insert(node) {
            return false;
        }
        for (from, to) in edges {
            if from == node && !dfs(to, edges, visiting, done) {
                return false;
            }
        }
        visiting.remove(node);
        done.insert(node);
        true
    }
    preds
        .iter()
        .all(|node| dfs(node, &edges, &mut visiting, &mut done))
}

/// The restricted variables of `f`: variables whose values are pinned down
/// by a positive atomic context. An equality between two variables pins
/// neither; an atom over a non-intensional predicate (when `p` is given)
/// pins nothing; a disjunction only keeps variables restricted on both
/// sides; an implication restricts nothing.
pub fn restricted_vars(f: &Formula, p: Option<&[String]>) -> BTreeSet<String> {
    match f {
        Formula::Atom(a) => {
            if p.is_some_and(|list| !list.contains(&a.pred)) {
                return BTreeSet::new();
            }
            let mut vars = Vec::new();
            for t in &a.args {
                t.collect_vars(&mut vars);
            }
            vars.into_iter().collect()
        }
        Formula::Eq(t1, t2) => {
            if matches!(t1, Term::Var(_)) && matches!(t2, Term::Var(_)) {
                return BTreeSet::new();
            }
            let mut vars = Vec::new();
            t1.collect_vars(&mut vars);
            t2.collect_vars(&mut vars);
            vars.into_iter().collect()
        }
        Formula::Bottom => BTreeSet::new(),
        Formula::And(a, b) => {
            let mut out = restricted_vars(a, p);
            out.extend(restricted_vars(b, p));
            out
        }
        Formula::Or(a, b) => restricted_vars(a, p)
            .intersection(&restricted_vars(b, p))
            .cloned()
            .collect(),
        Formula::Implies(_, _) => BTreeSet::new(),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let mut out = restricted_vars(g, p);
            out.remove(v);
            out
        }
    }
}

/// Whether every strictly positive occurrence of every variable sits inside
/// an implication whose antecedent restricts that variable. Rectifies the
/// input first.
pub fn is_semi_safe(f: &Formula, p: Option<&[String]>) -> Result<bool, SyntaxError> {
    let f = crate::syntax::rectify(f);
    let sig = Signature::of_formula(&f)?;
    if let Some(name) = sig
        .functions
        .iter()
        .find(|(_, &arity)| arity > 0)
        .map(|(n, _)| n)
    {
        return Err(SyntaxError::PositiveArityFunction(name.clone()));
    }
    Ok(safe_positive(&f, &BTreeSet::new(), p))
}

fn safe_positive(f: &Formula, restricted: &BTreeSet<String>, p: Option<&[String]>) -> bool {
    match f {
        Formula::Atom(_) | Formula::Eq(_, _) => {
            let mut vars = Vec::new();
            match f {
                Formula::Atom(a) => {
                    for t in &a.args {
                        t.collect_vars(&mut vars);
                    }
                }
                Formula::Eq(t1, t2) => {
                    t1.collect_vars(&mut vars);
                    t2.collect_vars(&mut vars);
                }
                _ => unreachable!(),
            }
            vars.iter().all(|v| restricted.contains(v))
        }
        Formula::Bottom => true,
        Formula::And(a, b) | Formula::Or(a, b) => {
            safe_positive(a, restricted, p) && safe_positive(b, restricted, p)
        }
        Formula::Implies(g, h) => {
            let mut inner = restricted.clone();
            inner.extend(restricted_vars(g, p));
            safe_positive(h, &inner, p)
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let mut inner = restricted.clone();
            inner.remove(v);
            safe_positive(g, &inner, p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_program};

    fn rep(src: &str) -> Formula {
        parse_program(src).unwrap().fol_representation().unwrap()
    }

    #[test]
    fn mutual_recursion_is_bounded_but_not_tight() {
        let f = rep("p(X) :- q(X). q(Y) :- p(Y). p(Z) :- not r(Z).");
        assert_eq!(is_bounded(&f), Verdict::Yes);
        assert!(!is_tight(&f));
        assert_eq!(is_atomic_tight(&f), Verdict::No);
    }

    #[test]
    fn widening_rule_is_unbounded() {
        let f = rep("p(X) :- p(Y).");
        assert_eq!(is_bounded(&f), Verdict::No);
        assert_eq!(is_atomic_tight(&f), Verdict::No);
    }

    #[test]
    fn constant_chain_is_atomic_tight_but_not_tight() {
        let f = rep("p(b) :- p(a). :- a != b.");
        assert_eq!(is_bounded(&f), Verdict::Yes);
        assert_eq!(is_atomic_tight(&f), Verdict::Yes);
        assert!(!is_tight(&f));
    }

    #[test]
    fn crossing_constants_stay_atomic_tight() {
        let f = rep("p(a) :- q(X). q(X) :- p(b).");
        assert_eq!(is_bounded(&f), Verdict::Yes);
        assert_eq!(is_atomic_tight(&f), Verdict::Yes);
    }

    #[test]
    fn acyclic_predicates_are_tight() {
        let f = rep("p(a). q(b). r(X) :- p(X), not q(X).");
        assert!(is_tight(&f));
        assert_eq!(is_atomic_tight(&f), Verdict::Yes);
    }

    #[test]
    fn functions_make_boundedness_unknown() {
        let f = rep("p(a). p(f(X)) :- p(X).");
        assert!(matches!(is_bounded(&f), Verdict::Unknown(_)));
        assert!(matches!(is_atomic_tight(&f), Verdict::Unknown(_)));
    }

    #[test]
    fn variable_equality_restricts_nothing() {
        let f = parse_formula("X = Y").unwrap();
        assert!(restricted_vars(&f, None).is_empty());
        let g = parse_formula("X = a").unwrap();
        assert_eq!(
            restricted_vars(&g, None),
            BTreeSet::from(["X".to_string()])
        );
    }

    #[test]
    fn conjunction_unions_and_disjunction_intersects() {
        let f = parse_formula("p(X) & q(Y)").unwrap();
        assert_eq!(
            restricted_vars(&f, None),
            BTreeSet::from(["X".to_string(), "Y".to_string()])
        );
        let g = parse_formula("p(X) | q(Y)").unwrap();
        assert!(restricted_vars(&g, None).is_empty());
    }

    #[test]
    fn non_intensional_atoms_restrict_nothing() {
        let f = parse_formula("man(X)").unwrap();
        assert!(restricted_vars(&f, Some(&[])).is_empty());
        assert_eq!(restricted_vars(&f, Some(&["man".to_string()])).len(), 1);
    }

    #[test]
    fn conjunction_body_is_semi_safe_disjunction_is_not() {
        let safe = parse_formula("p(a) & q(b) & forall X Y (p(X) & q(Y) -> p(Y))").unwrap();
        assert!(is_semi_safe(&safe, None).unwrap());
        let unsafe_ = parse_formula("p(a) & q(b) & forall X Y (p(X) | q(Y) -> p(Y))").unwrap();
        assert!(!is_semi_safe(&unsafe_, None).unwrap());
    }

    #[test]
    fn widening_rule_is_not_semi_safe() {
        let f = rep("p(X) :- p(Y).");
        assert!(!is_semi_safe(&f, None).unwrap());
    }

    #[test]
    fn bare_existential_is_not_semi_safe() {
        let f = parse_formula("exists X (p(X))").unwrap();
        assert!(!is_semi_safe(&f, None).unwrap());
    }

    #[test]
    fn unrestricted_head_variable_breaks_semi_safety() {
        let src = "hasWife(X) :- exists Y (spouse(X, Y)).\n\
                   hasWife(X) :- man(X), married(X).\n\
                   married(X) :- man(X), hasWife(X).\n\
                   exists W (discount(X, W)) :- married(X), not exists Z (accident(X, Z)).";
        assert!(!is_semi_safe(&rep(src), None).unwrap());
    }

    #[test]
    fn function_symbols_are_rejected_by_semi_safety() {
        let f = rep("p(f(X)) :- p(X).");
        assert!(is_semi_safe(&f, None).is_err());
    }
}
