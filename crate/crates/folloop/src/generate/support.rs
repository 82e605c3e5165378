//! External-support formulas computed from rule structure. Both builders
//! normalize the program first, rename each rule apart from the atom set,
//! and emit one disjunct per rule instance whose head lands in the set.

use indexmap::IndexMap;

use super::{rename_rule_apart, tuple_neq, AtomSet, GenerateError, LoopBase, SupportStrategy};
use crate::syntax::{normalize, Atom, Formula, Program, RuleKind, SyntaxError, Term};

/// External-support formula of `y` for a nondisjunctive program: for every
/// normalized rule and every member of `y` its head can be bound onto, the
/// instance body holds at a distance from `y`. No rule head matching any
/// member gives `#false`.
pub fn es_nondisjunctive(program: &Program, y: &AtomSet) -> Result<Formula, GenerateError> {
    if let Some(rule) = program
        .rules
        .iter()
        .find(|r| r.kind != RuleKind::Nondisjunctive)
    {
        return Err(SyntaxError::WrongRuleKind(rule.kind).into());
    }
    let norm = normalize(program);
    let mut disjuncts: Vec<Formula> = Vec::new();
    for rule in &norm.rules {
        let (body, head) = rename_rule_apart(rule, y);
        let head_atom = match head {
            Formula::Atom(a) => a,
            _ => continue,
        };
        for target in y.with_pred(&head_atom.pred, head_atom.arity()) {
            let theta = head_binding(&head_atom, target);
            let inst_body = body.substitute(&theta)?;
            let inst_head = Formula::Atom(subst_atom(&head_atom, &theta));
            let core = Formula::conjoin(
                body_conjuncts(&inst_body)
                    .into_iter()
                    .chain(body_pairs(&inst_body, y)),
            );
            let disjunct = close_instance(&inst_body, &inst_head, y, core);
            if !disjuncts.contains(&disjunct) {
                disjuncts.push(disjunct);
            }
        }
    }
    Ok(Formula::disjoin(disjuncts))
}

/// External-support formula of `y` for a disjunctive program. Head
/// variables range over themselves and the terms occurring in `y`; every
/// binding that lands some head atom in `y` contributes a disjunct, whose
/// last conjunct denies that the instance head settles inside `y`.
pub fn es_disjunctive(program: &Program, y: &AtomSet) -> Result<Formula, GenerateError> {
    if program
        .rules
        .iter()
        .any(|r| r.kind == RuleKind::Quantifier)
    {
        return Err(SyntaxError::WrongRuleKind(RuleKind::Quantifier).into());
    }
    let norm = normalize(program);
    let candidates = y.terms();
    let mut disjuncts: Vec<Formula> = Vec::new();
    for rule in &norm.rules {
        let (body, head) = rename_rule_apart(rule, y);
        let head_atoms: Vec<Atom> = head
            .disjuncts()
            .iter()
            .filter_map(|d| match d {
                Formula::Atom(a) => Some(a.clone()),
                _ => None,
            })
            .collect();
        if head_atoms.is_empty() {
            continue;
        }
        let mut head_vars: Vec<String> = Vec::new();
        for a in &head_atoms {
            for t in &a.args {
                t.collect_vars(&mut head_vars);
            }
        }
        let mut idx = vec![0usize; head_vars.len()];
        loop {
            let theta: IndexMap<String, Term> = head_vars
                .iter()
                .zip(&idx)
                .map(|(v, &i)| {
                    let image = if i == 0 {
                        Term::var(v.clone())
                    } else {
                        candidates[i - 1].clone()
                    };
                    (v.clone(), image)
                })
                .collect();
            let inst_heads: Vec<Atom> =
                head_atoms.iter().map(|a| subst_atom(a, &theta)).collect();
            if inst_heads.iter().any(|a| y.contains(a)) {
                let inst_body = body.substitute(&theta)?;
                let core = Formula::conjoin(
                    body_conjuncts(&inst_body)
                        .into_iter()
                        .chain(body_pairs(&inst_body, y))
                        .chain(std::iter::once(head_remainder(&inst_heads, y))),
                );
                let head_formula =
                    Formula::disjoin(inst_heads.iter().cloned().map(Formula::Atom));
                let disjunct = close_instance(&inst_body, &head_formula, y, core);
                if !disjuncts.contains(&disjunct) {
                    disjuncts.push(disjunct);
                }
            }
            if !bump(&mut idx, candidates.len() + 1) {
                break;
            }
        }
    }
    Ok(Formula::disjoin(disjuncts))
}

/// Binding of the pairwise distinct head variables onto the args of one
/// member of `y`.
fn head_binding(head: &Atom, target: &Atom) -> IndexMap<String, Term> {
    head.args
        .iter()
        .zip(&target.args)
        .filter_map(|(h, t)| match h {
            Term::Var(v) => Some((v.clone(), t.clone())),
            Term::App(..) => None,
        })
        .collect()
}

fn subst_term(t: &Term, map: &IndexMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(name, args) => Term::App(
            name.clone(),
            args.iter().map(|a| subst_term(a, map)).collect(),
        ),
    }
}

pub(super) fn subst_atom(a: &Atom, map: &IndexMap<String, Term>) -> Atom {
    Atom::new(
        a.pred.clone(),
        a.args.iter().map(|t| subst_term(t, map)).collect(),
    )
}

/// Conjuncts of an instance body; a `#true` body contributes none.
fn body_conjuncts(body: &Formula) -> Vec<Formula> {
    if body.is_top() {
        Vec::new()
    } else {
        body.conjuncts().into_iter().cloned().collect()
    }
}

/// Distance of the instance body from `y`: one tuple inequality per
/// positive body atom and same-predicate member of `y`, body-atom major.
fn body_pairs(body: &Formula, y: &AtomSet) -> Vec<Formula> {
    let mut out = Vec::new();
    if body.is_top() {
        return out;
    }
    for c in body.conjuncts() {
        if let Formula::Atom(a) = c {
            for m in y.with_pred(&a.pred, a.arity()) {
                out.push(tuple_neq(&a.args, &m.args));
            }
        }
    }
    out
}

/// Denial that the instance head settles inside `y`: no head atom both
/// holds and keeps its distance from every same-predicate member of `y`.
fn head_remainder(inst_heads: &[Atom], y: &AtomSet) -> Formula {
    let mut seen: Vec<&Atom> = Vec::new();
    let mut parts: Vec<Formula> = Vec::new();
    for a in inst_heads {
        if seen.contains(&a) {
            continue;
        }
        seen.push(a);
        let neqs: Vec<Formula> = y
            .with_pred(&a.pred, a.arity())
            .into_iter()
            .map(|m| tuple_neq(&a.args, &m.args))
            .collect();
        parts.push(if neqs.is_empty() {
            Formula::Atom(a.clone())
        } else {
            Formula::and(Formula::Atom(a.clone()), Formula::conjoin(neqs))
        });
    }
    Formula::not_(Formula::disjoin(parts))
}

/// Existential closure of `core` over the instance variables that are not
/// variables of `y`, outermost first in instance order, body before head.
fn close_instance(body: &Formula, head: &Formula, y: &AtomSet, core: Formula) -> Formula {
    let y_vars = y.vars();
    let inst = Formula::implies(body.clone(), head.clone());
    let z: Vec<String> = inst
        .free_vars()
        .into_iter()
        .filter(|v| !y_vars.iter().any(|u| u == v))
        .collect();
    z.into_iter()
        .rev()
        .fold(core, |acc, v| Formula::exists(v, acc))
}

fn bump(idx: &mut [usize], radix: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < radix {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Rule-structure support for nondisjunctive programs.
pub struct EsNondisjunctive;

impl SupportStrategy for EsNondisjunctive {
    fn name(&self) -> &'static str {
        "es"
    }

    fn support(&self, base: &LoopBase, y: &AtomSet) -> Result<Formula, GenerateError> {
        es_nondisjunctive(base.program(self.name())?, y)
    }
}

/// Rule-structure support for disjunctive programs.
pub struct EsDisjunctive;

impl SupportStrategy for EsDisjunctive {
    fn name(&self) -> &'static str {
        "es-disj"
    }

    fn support(&self, base: &LoopBase, y: &AtomSet) -> Result<Formula, GenerateError> {
        es_disjunctive(base.program(self.name())?, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::loop_formula;
    use crate::parse::{parse_formula, parse_program};
    use crate::syntax::Term;

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
        let lf1 = loop_formula(&base, &y1, &EsNondisjunctive).unwrap();
        assert_eq!(lf1, parse_formula("forall U (p(U) -> q(U) | not r(U))").unwrap());

        let y2 = set(vec![atom("q", &["U"])]);
        let lf2 = loop_formula(&base, &y2, &EsNondisjunctive).unwrap();
        assert_eq!(lf2, parse_formula("forall U (q(U) -> p(U))").unwrap());

        let y3 = set(vec![atom("r", &["U"])]);
        let lf3 = loop_formula(&base, &y3, &EsNondisjunctive).unwrap();
        assert_eq!(lf3, parse_formula("forall U (r(U) -> #false)").unwrap());
    }

    #[test]
    fn joint_set_keeps_vacuous_inequalities() {
        let prog = parse_program(TWO_CYCLE_WITH_DEFAULT).unwrap();
        let base = LoopBase::Program(&prog);
        let y4 = set(vec![atom("p", &["U"]), atom("q", &["U"])]);
        let lf4 = loop_formula(&base, &y4, &EsNondisjunctive).unwrap();
        let expected = parse_formula(
            "forall U (p(U) & q(U) -> q(U) & U != U | p(U) & U != U | not r(U))",
        )
        .unwrap();
        assert_eq!(lf4, expected);
    }

    #[test]
    fn self_feeding_rule_collapses_to_one_disjunct() {
        let prog = parse_program("p(X) :- p(Y).").unwrap();
        let base = LoopBase::Program(&prog);
        for k in 1..=3usize {
            let members: Vec<Atom> = (1..=k).map(|i| atom("p", &[&format!("X{i}")])).collect();
            let y = set(members);
            let lf = loop_formula(&base, &y, &EsNondisjunctive).unwrap();
            let antecedent = (1..=k)
                .map(|i| format!("p(X{i})"))
                .collect::<Vec<_>>()
                .join(" & ");
            let pairs = (1..=k)
                .map(|i| format!("Y != X{i}"))
                .collect::<Vec<_>>()
                .join(" & ");
            let vars = (1..=k)
                .map(|i| format!("X{i}"))
                .collect::<Vec<_>>()
                .join(" ");
            let expected = parse_formula(&format!(
                "forall {vars} ({antecedent} -> exists Y (p(Y) & {pairs}))"
            ))
            .unwrap();
            assert_eq!(lf, expected);
        }
    }

    #[test]
    fn ground_normal_form_program_against_a_ground_set() {
        let prog = parse_program("p(X) :- X = a, q(a). q(Y) :- p(b).").unwrap();
        let base = LoopBase::Program(&prog);
        let y = set(vec![
            Atom::new("p", vec![Term::con("b")]),
            Atom::new("q", vec![Term::con("a")]),
        ]);
        let lf = loop_formula(&base, &y, &EsNondisjunctive).unwrap();
        let expected = parse_formula(
            "p(b) & q(a) -> b = a & q(a) & a != a | p(b) & b != b",
        )
        .unwrap();
        assert_eq!(lf, expected);
    }

    #[test]
    fn normalization_orders_equalities_before_the_original_body() {
        let prog = parse_program("p(a) :- q(a). q(Y) :- p(b).").unwrap();
        let base = LoopBase::Program(&prog);
        let y_p = set(vec![atom("p", &["z"])]);
        let lf_p = loop_formula(&base, &y_p, &EsNondisjunctive).unwrap();
        let expected_p = parse_formula("forall Z (p(Z) -> Z = a & q(a))").unwrap();
        assert!(lf_p.alpha_eq(&expected_p));

        let y_q = set(vec![atom("q", &["z"])]);
        let lf_q = loop_formula(&base, &y_q, &EsNondisjunctive).unwrap();
        let expected_q = parse_formula("forall Z (q(Z) -> p(b))").unwrap();
        assert!(lf_q.alpha_eq(&expected_q));
    }

    #[test]
    fn disjunctive_builder_rejects_quantifier_rules() {
        let prog = parse_program("p(X) :- exists Y (q(X, Y)).").unwrap();
        let y = set(vec![atom("p", &["U"])]);
        let err = es_disjunctive(&prog, &y).unwrap_err();
        assert!(matches!(
            err,
            GenerateError::Syntax(SyntaxError::WrongRuleKind(RuleKind::Quantifier))
        ));
    }

    #[test]
    fn nondisjunctive_builder_rejects_disjunctive_heads() {
        let prog = parse_program("p(X) ; q(X) :- r(X).").unwrap();
        let y = set(vec![atom("p", &["U"])]);
        let err = es_nondisjunctive(&prog, &y).unwrap_err();
        assert!(matches!(
            err,
            GenerateError::Syntax(SyntaxError::WrongRuleKind(RuleKind::Disjunctive))
        ));
    }

    #[test]
    fn absent_predicate_gives_the_empty_disjunction() {
        let prog = parse_program("p(X) ; q(X) :- r(X).").unwrap();
        let y = set(vec![atom("s", &["U"])]);
        assert_eq!(es_disjunctive(&prog, &y).unwrap(), Formula::Bottom);
    }
}
