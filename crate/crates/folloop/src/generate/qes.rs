//! External support for programs with explicit quantifiers: one disjunct
//! per rule whose head mentions a predicate of the atom set strictly
//! positively, with body and denied head pushed to a distance from the
//! set.

use super::nes::distance_atoms;
use super::{rename_rule_apart, AtomSet, GenerateError, LoopBase, SupportStrategy};
use crate::syntax::{strictly_positive_atoms, Formula, Program};

/// External-support formula of `y` for a program with quantifiers. A rule
/// contributes iff its head has a strictly positive occurrence of a
/// predicate of `y`; the disjunct conjoins the distanced body with the
/// negated distanced head and closes existentially over the rule variables
/// outside `y`. No contributing rule gives `#false`.
pub fn qes(program: &Program, y: &AtomSet) -> Result<Formula, GenerateError> {
    let y_preds = y.predicates();
    let y_vars = y.vars();
    let mut disjuncts: Vec<Formula> = Vec::new();
    for rule in &program.rules {
        let (body, head) = rename_rule_apart(rule, y);
        let mentions = strictly_positive_atoms(&head)
            .iter()
            .any(|a| y_preds.contains(&(a.pred.clone(), a.arity())));
        if !mentions {
            continue;
        }
        let core = Formula::and(
            distance_atoms(&body, y),
            Formula::not_(distance_atoms(&head, y)),
        );
        let z: Vec<String> = Formula::implies(body, head)
            .free_vars()
            .into_iter()
            .filter(|v| !y_vars.iter().any(|u| u == v))
            .collect();
        let disjunct = z
            .into_iter()
            .rev()
            .fold(core, |acc, v| Formula::exists(v, acc));
        if !disjuncts.contains(&disjunct) {
            disjuncts.push(disjunct);
        }
    }
    Ok(Formula::disjoin(disjuncts))
}

/// Rule-structure support for programs with explicit quantifiers; accepts
/// every rule kind.
pub struct QuantifierEs;

impl SupportStrategy for QuantifierEs {
    fn name(&self) -> &'static str {
        "qes"
    }

    fn support(&self, base: &LoopBase, y: &AtomSet) -> Result<Formula, GenerateError> {
        qes(base.program(self.name())?, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::loop_formula;
    use crate::parse::{parse_formula, parse_program};
    use crate::syntax::{Atom, Term};

    fn atom(pred: &str, vars: &[&str]) -> Atom {
        Atom::new(pred, vars.iter().map(|v| Term::var(*v)).collect())
    }

    fn set(atoms: Vec<Atom>) -> AtomSet {
        AtomSet::new(atoms).unwrap()
    }

    const TWO_CYCLE_WITH_DEFAULT: &str = "p(X) :- q(X). q(Y) :- p(Y). p(Z) :- not r(Z).";

    #[test]
    fn singleton_sets_of_the_two_cycle_program() {
        let prog = parse_program(TWO_CYCLE_WITH_DEFAULT).unwrap();
        let base = LoopBase::Program(&prog);

        let y1 = set(vec![atom("p", &["U"])]);
        let lf1 = loop_formula(&base, &y1, &QuantifierEs).unwrap();
        let expected1 = parse_formula(
            "forall U (p(U) -> exists X (q(X) & not (p(X) & X != U)) \
             | exists Z (not r(Z) & not (p(Z) & Z != U)))",
        )
        .unwrap();
        assert_eq!(lf1, expected1);

        let y2 = set(vec![atom("q", &["U"])]);
        let lf2 = loop_formula(&base, &y2, &QuantifierEs).unwrap();
        let expected2 = parse_formula(
            "forall U (q(U) -> exists Y (p(Y) & not (q(Y) & Y != U)))",
        )
        .unwrap();
        assert_eq!(lf2, expected2);

        let y3 = set(vec![atom("r", &["U"])]);
        let lf3 = loop_formula(&base, &y3, &QuantifierEs).unwrap();
        assert_eq!(lf3, parse_formula("forall U (r(U) -> #false)").unwrap());
    }

    #[test]
    fn joint_set_distances_both_body_and_head() {
        let prog = parse_program(TWO_CYCLE_WITH_DEFAULT).unwrap();
        let base = LoopBase::Program(&prog);
        let y4 = set(vec![atom("p", &["U"]), atom("q", &["U"])]);
        let lf4 = loop_formula(&base, &y4, &QuantifierEs).unwrap();
        let expected = parse_formula(
            "forall U (p(U) & q(U) -> \
             exists X (q(X) & X != U & not (p(X) & X != U)) \
             | exists Y (p(Y) & Y != U & not (q(Y) & Y != U)) \
             | exists Z (not r(Z) & not (p(Z) & Z != U)))",
        )
        .unwrap();
        assert_eq!(lf4, expected);
    }

    #[test]
    fn head_mention_is_predicate_level() {
        let prog = parse_program("p(a) :- q(X).").unwrap();
        let y = set(vec![Atom::new("p", vec![Term::var("U")])]);
        let support = qes(&prog, &y).unwrap();
        let expected = parse_formula("exists X (q(X) & not (p(a) & a != U))").unwrap();
        assert_eq!(support, expected);
    }

    #[test]
    fn quantifier_rules_are_accepted() {
        let prog = parse_program("hasWife(X) :- exists Y (spouse(X, Y)).").unwrap();
        let y = set(vec![atom("hasWife", &["U"])]);
        let support = qes(&prog, &y).unwrap();
        let expected = parse_formula(
            "exists X (exists Y (spouse(X, Y)) & not (hasWife(X) & X != U))",
        )
        .unwrap();
        assert_eq!(support, expected);
    }
}
