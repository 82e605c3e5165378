//! Syntactic unification and matching over terms, used for composing
//! dependency pairs in the function case and for comparing loop candidates.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{Atom, Term};

/// An idempotent variable binding: no variable in the domain occurs in any
/// term of the range.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.map.iter()
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| self.apply_term(a)).collect(),
            ),
        }
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| self.apply_term(t)).collect(),
        }
    }

    /// Binds `var` to `term`, rewriting existing range terms so the result
    /// stays idempotent. The caller has already applied `self` to `term` and
    /// run the occurs check.
    fn bind(&mut self, var: String, term: Term) {
        let single = Substitution {
            map: BTreeMap::from([(var.clone(), term.clone())]),
        };
        for t in self.map.values_mut() {
            *t = single.apply_term(t);
        }
        self.map.insert(var, term);
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", crate::syntax::capitalize_var(v), t)?;
        }
        write!(f, "}}")
    }
}

fn occurs(var: &str, t: &Term) -> bool {
    match t {
        Term::Var(v) => v == var,
        Term::App(_, args) => args.iter().any(|a| occurs(var, a)),
    }
}

/// Most general unifier of two equal-length term tuples, or `None` when the
/// tuples do not unify. Bindings with a cyclic occurrence are rejected, so
/// `x` never unifies with `f(x)`.
pub fn unify_tuples(left: &[Term], right: &[Term]) -> Option<Substitution> {
    if left.len() != right.len() {
        return None;
    }
    let mut theta = Substitution::default();
    let mut work: Vec<(Term, Term)> = left
        .iter()
        .cloned()
        .zip(right.iter().cloned())
        .collect();
    while let Some((s, t)) = work.pop() {
        let s = theta.apply_term(&s);
        let t = theta.apply_term(&t);
        match (s, t) {
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if t == Term::Var(v.clone()) {
                    continue;
                }
                if occurs(&v, &t) {
                    return None;
                }
                theta.bind(v, t);
            }
            (Term::App(f, fargs), Term::App(g, gargs)) => {
                if f != g || fargs.len() != gargs.len() {
                    return None;
                }
                work.extend(fargs.into_iter().zip(gargs));
            }
        }
    }
    Some(theta)
}

/// Most general unifier of two atoms (same predicate, unifiable argument
/// tuples).
pub fn unify_atoms(a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.pred != b.pred {
        return None;
    }
    unify_tuples(&a.args, &b.args)
}

/// One-sided matching: extends `theta` so that every pattern term maps
/// exactly onto its target. Only pattern variables are bound; variables in
/// the target are rigid.
fn match_term(pattern: &Term, target: &Term, theta: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match theta.get(v) {
            Some(bound) => bound == target,
            None => {
                theta.map.insert(v.clone(), target.clone());
                true
            }
        },
        Term::App(f, fargs) => match target {
            Term::App(g, gargs) if f == g && fargs.len() == gargs.len() => fargs
                .iter()
                .zip(gargs)
                .all(|(p, t)| match_term(p, t, theta)),
            _ => false,
        },
    }
}

/// Matches a tuple of pattern terms onto a tuple of targets, binding only
/// pattern variables.
pub fn match_tuples(pattern: &[Term], target: &[Term]) -> Option<Substitution> {
    if pattern.len() != target.len() {
        return None;
    }
    let mut theta = Substitution::default();
    for (p, t) in pattern.iter().zip(target) {
        if !match_term(p, t, &mut theta) {
            return None;
        }
    }
    Some(theta)
}

/// Returns a substitution over the variables of `y1` whose image is exactly
/// the atom set `y2`, or `None` when no such substitution exists. Distinct
/// atoms of `y1` may map onto the same atom of `y2`, but every atom of `y2`
/// must be hit.
pub fn subsumes(y1: &[Atom], y2: &[Atom]) -> Option<Substitution> {
    let mut covered = vec![false; y2.len()];
    let mut theta = Substitution::default();
    if subsume_from(y1, y2, 0, &mut covered, &mut theta) {
        Some(theta)
    } else {
        None
    }
}

fn subsume_from(
    y1: &[Atom],
    y2: &[Atom],
    index: usize,
    covered: &mut [bool],
    theta: &mut Substitution,
) -> bool {
    if index == y1.len() {
        return covered.iter().all(|c| *c);
    }
    let atom = &y1[index];
    for (j, target) in y2.iter().enumerate() {
        if atom.pred != target.pred || atom.args.len() != target.args.len() {
            continue;
        }
        let saved = theta.clone();
        let ok = atom
            .args
            .iter()
            .zip(&target.args)
            .all(|(p, t)| match_term(p, t, theta));
        if ok {
            let was_covered = covered[j];
            covered[j] = true;
            if subsume_from(y1, y2, index + 1, covered, theta) {
                return true;
            }
            covered[j] = was_covered;
        }
        *theta = saved;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: &str) -> Term {
        Term::Var(v.to_string())
    }

    fn con(c: &str) -> Term {
        Term::con(c)
    }

    fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.to_string(), args)
    }

    #[test]
    fn binds_variable_to_compound() {
        let theta = unify_tuples(
            &[app("f", vec![var("x")]), con("a")],
            &[var("y"), con("a")],
        )
        .unwrap();
        assert_eq!(theta.get("y"), Some(&app("f", vec![var("x")])));
    }

    #[test]
    fn occurs_check_rejects_cyclic_binding() {
        assert!(unify_tuples(&[var("x")], &[app("f", vec![var("x")])]).is_none());
    }

    #[test]
    fn crosswise_constants() {
        let theta = unify_tuples(&[var("x"), con("b")], &[con("a"), var("y")]).unwrap();
        assert_eq!(theta.get("x"), Some(&con("a")));
        assert_eq!(theta.get("y"), Some(&con("b")));
    }

    #[test]
    fn result_is_idempotent() {
        let theta = unify_tuples(
            &[var("x"), var("y")],
            &[app("f", vec![var("y")]), con("a")],
        )
        .unwrap();
        assert_eq!(theta.get("x"), Some(&app("f", vec![con("a")])));
        assert_eq!(theta.get("y"), Some(&con("a")));
    }

    #[test]
    fn mismatched_functors_fail() {
        assert!(unify_tuples(&[app("f", vec![con("a")])], &[app("g", vec![con("a")])]).is_none());
    }

    fn atom(pred: &str, args: Vec<Term>) -> Atom {
        Atom {
            pred: pred.to_string(),
            args,
        }
    }

    #[test]
    fn renaming_subsumes() {
        let theta = subsumes(&[atom("p", vec![var("x")])], &[atom("p", vec![var("y")])]).unwrap();
        assert_eq!(theta.get("x"), Some(&var("y")));
    }

    #[test]
    fn collapsing_two_atoms_onto_one() {
        let theta = subsumes(
            &[atom("p", vec![var("x")]), atom("p", vec![var("y")])],
            &[atom("p", vec![var("z")])],
        )
        .unwrap();
        assert_eq!(theta.get("x"), Some(&var("z")));
        assert_eq!(theta.get("y"), Some(&var("z")));
    }

    #[test]
    fn distinct_constants_do_not_subsume() {
        assert!(subsumes(&[atom("p", vec![con("a")])], &[atom("p", vec![con("b")])]).is_none());
    }

    #[test]
    fn image_must_cover_target() {
        assert!(subsumes(
            &[atom("p", vec![var("x")])],
            &[atom("p", vec![var("y")]), atom("q", vec![var("y")])],
        )
        .is_none());
    }

    #[test]
    fn unifier_is_most_general() {
        let left = [var("x"), var("u")];
        let right = [app("f", vec![var("y")]), var("v")];
        let theta = unify_tuples(&left, &right).unwrap();
        let ground = Substitution {
            map: BTreeMap::from([
                ("x".to_string(), app("f", vec![con("a")])),
                ("y".to_string(), con("a")),
                ("u".to_string(), con("b")),
                ("v".to_string(), con("b")),
            ]),
        };
        let vars = ["x", "y", "u", "v"];
        let image: Vec<Term> = vars.iter().map(|v| theta.apply_term(&var(v))).collect();
        let target: Vec<Term> = vars.iter().map(|v| ground.apply_term(&var(v))).collect();
        assert!(match_tuples(&image, &target).is_some());
    }
}
