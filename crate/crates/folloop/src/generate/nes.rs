//! Negated-external-support construction for arbitrary formulas, plus the
//! atom-replacement variant that agrees with it when every implication
//! sits inside a negative subformula.

use super::{rename_bound_apart, tuple_neq, AtomSet, GenerateError, LoopBase, SupportStrategy};
use crate::syntax::{is_negative, Atom, Formula};

/// Negation of the external-support formula of `y` for `f`. Every atom
/// gains its distance from the same-predicate members of `y`, implications
/// double into the transformed and the original implication, and the other
/// connectives commute with the construction. Binders colliding with
/// variables of `y` are renamed first; free variables of `f` keep their
/// names.
pub fn nes(f: &Formula, y: &AtomSet) -> Formula {
    let f = rename_bound_apart(f, y);
    go(&f, y)
}

fn go(f: &Formula, y: &AtomSet) -> Formula {
    match f {
        Formula::Atom(a) => distanced(a, y),
        Formula::Eq(..) | Formula::Bottom => f.clone(),
        Formula::And(a, b) => Formula::and(go(a, y), go(b, y)),
        Formula::Or(a, b) => Formula::or(go(a, y), go(b, y)),
        Formula::Implies(a, b) => Formula::and(
            Formula::implies(go(a, y), go(b, y)),
            Formula::implies((**a).clone(), (**b).clone()),
        ),
        Formula::Forall(v, g) => Formula::forall(v.clone(), go(g, y)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), go(g, y)),
    }
}

/// Replaces every atom occurrence outside the negative subformulas of `f`
/// by the atom conjoined with its distance from the same-predicate members
/// of `y`. Total on all formulas; it agrees with the negated-support
/// construction only when every implication of `f` sits inside a negative
/// subformula.
pub fn f_sub_y(f: &Formula, y: &AtomSet) -> Formula {
    let f = rename_bound_apart(f, y);
    distance_atoms(&f, y)
}

/// The replacement walk behind [`f_sub_y`], for callers that have already
/// renamed their input apart from `y`.
pub(super) fn distance_atoms(f: &Formula, y: &AtomSet) -> Formula {
    go_sub(f, y)
}

fn go_sub(f: &Formula, y: &AtomSet) -> Formula {
    if is_negative(f) {
        return f.clone();
    }
    match f {
        Formula::Atom(a) => distanced(a, y),
        Formula::Eq(..) | Formula::Bottom => f.clone(),
        Formula::And(a, b) => Formula::and(go_sub(a, y), go_sub(b, y)),
        Formula::Or(a, b) => Formula::or(go_sub(a, y), go_sub(b, y)),
        Formula::Implies(a, b) => Formula::implies(go_sub(a, y), go_sub(b, y)),
        Formula::Forall(v, g) => Formula::forall(v.clone(), go_sub(g, y)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), go_sub(g, y)),
    }
}

/// The atom conjoined with one tuple inequality per same-predicate member
/// of `y`; unchanged when `y` has no member with its predicate.
fn distanced(a: &Atom, y: &AtomSet) -> Formula {
    let neqs: Vec<Formula> = y
        .with_pred(&a.pred, a.arity())
        .into_iter()
        .map(|m| tuple_neq(&a.args, &m.args))
        .collect();
    if neqs.is_empty() {
        Formula::Atom(a.clone())
    } else {
        Formula::and(Formula::Atom(a.clone()), Formula::conjoin(neqs))
    }
}

/// Support as the negation of [`nes`], usable against any target.
pub struct NegatedNes;

impl SupportStrategy for NegatedNes {
    fn name(&self) -> &'static str {
        "nes"
    }

    fn support(&self, base: &LoopBase, y: &AtomSet) -> Result<Formula, GenerateError> {
        let f = base.to_formula()?;
        Ok(Formula::not_(nes(&f, y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::loop_formula;
    use crate::parse::parse_formula;
    use crate::syntax::Term;

    fn atom(pred: &str, vars: &[&str]) -> Atom {
        Atom::new(pred, vars.iter().map(|v| Term::var(*v)).collect())
    }

    fn set(atoms: Vec<Atom>) -> AtomSet {
        AtomSet::new(atoms).unwrap()
    }

    #[test]
    fn bottom_is_fixed() {
        let y = set(vec![atom("p", &["U"])]);
        assert_eq!(nes(&Formula::Bottom, &y), Formula::Bottom);
    }

    #[test]
    fn atom_gains_distance_from_matching_members() {
        let y = set(vec![atom("p", &["U"])]);
        let f = parse_formula("p(X)").unwrap();
        assert_eq!(nes(&f, &y), parse_formula("p(X) & X != U").unwrap());
        let g = parse_formula("q(X)").unwrap();
        assert_eq!(nes(&g, &y), g);
    }

    #[test]
    fn implication_doubles_into_transformed_and_original() {
        let y = set(vec![atom("p", &["U"])]);
        let f = parse_formula("q(X) -> p(X)").unwrap();
        let expected = parse_formula("(q(X) -> p(X) & X != U) & (q(X) -> p(X))").unwrap();
        assert_eq!(nes(&f, &y), expected);
    }

    #[test]
    fn negative_subformulas_are_still_transformed() {
        let y = set(vec![atom("r", &["U"])]);
        let f = parse_formula("not r(Z)").unwrap();
        let expected = parse_formula("(r(Z) & Z != U -> #false) & not r(Z)").unwrap();
        assert_eq!(nes(&f, &y), expected);
    }

    #[test]
    fn clashing_binder_is_renamed_before_the_walk() {
        let y = set(vec![atom("p", &["X"])]);
        let f = parse_formula("exists X (p(X))").unwrap();
        let out = nes(&f, &y);
        let expected = parse_formula("exists V1 (p(V1) & V1 != X)").unwrap();
        assert!(out.alpha_eq(&expected));
    }

    #[test]
    fn replacement_skips_negative_subformulas() {
        let y = set(vec![atom("q", &["U"])]);
        assert_eq!(
            f_sub_y(&parse_formula("q(X)").unwrap(), &y),
            parse_formula("q(X) & X != U").unwrap()
        );
        let neg = parse_formula("not r(Z)").unwrap();
        assert_eq!(f_sub_y(&neg, &y), neg);
    }

    #[test]
    fn replacement_descends_through_conjunction() {
        let y = set(vec![atom("married", &["U"])]);
        let f = parse_formula("man(X) & married(X)").unwrap();
        let expected = parse_formula("man(X) & (married(X) & X != U)").unwrap();
        assert_eq!(f_sub_y(&f, &y), expected);
    }

    #[test]
    fn rule_bases_go_through_the_fol_representation() {
        let prog = crate::parse::parse_program("p(X) :- q(X).").unwrap();
        let f = prog.fol_representation().unwrap();
        let y = set(vec![atom("p", &["U"])]);
        let from_prog = loop_formula(&crate::generate::LoopBase::Program(&prog), &y, &NegatedNes)
            .unwrap();
        let from_formula = loop_formula(&LoopBase::Formula(&f), &y, &NegatedNes).unwrap();
        assert_eq!(from_prog, from_formula);
    }
}
