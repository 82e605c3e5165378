//! Structural transformations: rectification, normal form, Clark normal form,
//! completion, the extensional reduction, grounding, and simplification.

use super::occurrence::strictly_positive_atoms;
use super::{Atom, Formula, FreshVars, Program, Rule, RuleKind, Signature, SyntaxError, Term};
use indexmap::IndexMap;

/// True when no variable is both bound and free and all quantifiers bind
/// distinct variables.
pub fn is_rectified(f: &Formula) -> bool {
    let free = f.free_vars();
    let mut binders: Vec<String> = Vec::new();
    let mut duplicate = false;
    collect_binders(f, &mut binders, &mut duplicate);
    !duplicate && binders.iter().all(|b| !free.contains(b))
}

fn collect_binders(f: &Formula, out: &mut Vec<String>, duplicate: &mut bool) {
    match f {
        Formula::Atom(_) | Formula::Eq(..) | Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_binders(a, out, duplicate);
            collect_binders(b, out, duplicate);
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            if out.contains(v) {
                *duplicate = true;
            }
            out.push(v.clone());
            collect_binders(g, out, duplicate);
        }
    }
}

/// Renames bound variables so that no variable is both bound and free and
/// every quantifier binds a distinct variable. Only conflicted binders are
/// renamed, left to right, drawing fresh names from the reserved namespace.
pub fn rectify(f: &Formula) -> Formula {
    let free = f.free_vars();
    let mut binders = Vec::new();
    let mut duplicate = false;
    collect_binders(f, &mut binders, &mut duplicate);
    let conflicted: Vec<String> = binders
        .iter()
        .filter(|b| free.contains(b) || binders.iter().filter(|x| x == b).count() > 1)
        .cloned()
        .collect();
    let mut fresh = FreshVars::new(f.all_vars());
    let mut env: Vec<(String, String)> = Vec::new();
    rename(f, &conflicted, &mut fresh, &mut env)
}

fn rename(
    f: &Formula,
    conflicted: &[String],
    fresh: &mut FreshVars,
    env: &mut Vec<(String, String)>,
) -> Formula {
    fn rename_term(t: &Term, env: &[(String, String)]) -> Term {
        match t {
            Term::Var(v) => {
                let name = env
                    .iter()
                    .rev()
                    .find(|(old, _)| old == v)
                    .map(|(_, new)| new.clone())
                    .unwrap_or_else(|| v.clone());
                Term::Var(name)
            }
            Term::App(name, args) => Term::App(
                name.clone(),
                args.iter().map(|a| rename_term(a, env)).collect(),
            ),
        }
    }
    match f {
        Formula::Atom(a) => Formula::Atom(Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| rename_term(t, env)).collect(),
        }),
        Formula::Eq(l, r) => Formula::Eq(rename_term(l, env), rename_term(r, env)),
        Formula::Bottom => Formula::Bottom,
        Formula::And(a, b) => Formula::and(
            rename(a, conflicted, fresh, env),
            rename(b, conflicted, fresh, env),
        ),
        Formula::Or(a, b) => Formula::or(
            rename(a, conflicted, fresh, env),
            rename(b, conflicted, fresh, env),
        ),
        Formula::Implies(a, b) => Formula::implies(
            rename(a, conflicted, fresh, env),
            rename(b, conflicted, fresh, env),
        ),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let new = if conflicted.contains(v) {
                fresh.next()
            } else {
                v.clone()
            };
            env.push((v.clone(), new.clone()));
            let inner = rename(g, conflicted, fresh, env);
            env.pop();
            match f {
                Formula::Forall(..) => Formula::forall(new, inner),
                _ => Formula::exists(new, inner),
            }
        }
    }
}

/// Rewrites every strictly positive head atom so its arguments are pairwise
/// distinct variables. Atom-level heads move `v = t` equalities to the front
/// of the body; strictly positive atoms nested in quantifier-rule heads are
/// wrapped as `exists v (v = t & p(.., v, ..))` instead, one binder per
/// offending argument position.
pub fn normalize(program: &Program) -> Program {
    let mut out = program.clone();
    out.rules = program.rules.iter().map(normalize_rule).collect();
    out
}

fn normalize_rule(rule: &Rule) -> Rule {
    let mut taken = rule.head.all_vars();
    for v in rule.body.all_vars() {
        if !taken.contains(&v) {
            taken.push(v);
        }
    }
    let mut fresh = FreshVars::new(taken);
    match rule.kind {
        RuleKind::Nondisjunctive | RuleKind::Disjunctive => {
            let mut eqs = Vec::new();
            let head = match &rule.head {
                Formula::Bottom => Formula::Bottom,
                head => Formula::disjoin(head.disjuncts().into_iter().map(|d| match d {
                    Formula::Atom(a) => Formula::Atom(flatten_args(a, &mut fresh, &mut eqs)),
                    other => other.clone(),
                })),
            };
            if eqs.is_empty() {
                return rule.clone();
            }
            let mut conjuncts: Vec<Formula> = eqs;
            if !rule.body.is_top() {
                conjuncts.extend(rule.body.conjuncts().into_iter().cloned());
            }
            Rule::new(head, Formula::conjoin(conjuncts)).expect("same rule class after rewriting")
        }
        RuleKind::Quantifier => {
            let head = normalize_head_formula(&rule.head, &mut fresh);
            Rule::new(head, rule.body.clone()).expect("same rule class after rewriting")
        }
    }
}

/// Replaces offending argument positions with fresh variables, pushing the
/// defining equalities onto `eqs` in position order.
fn flatten_args(atom: &Atom, fresh: &mut FreshVars, eqs: &mut Vec<Formula>) -> Atom {
    let mut seen: Vec<String> = Vec::new();
    let mut args = Vec::new();
    for t in &atom.args {
        match t {
            Term::Var(v) if !seen.contains(v) => {
                seen.push(v.clone());
                args.push(t.clone());
            }
            _ => {
                let v = fresh.next();
                seen.push(v.clone());
                eqs.push(Formula::Eq(Term::var(v.clone()), t.clone()));
                args.push(Term::var(v));
            }
        }
    }
    Atom {
        pred: atom.pred.clone(),
        args,
    }
}

fn normalize_head_formula(f: &Formula, fresh: &mut FreshVars) -> Formula {
    match f {
        Formula::Atom(a) => {
            let mut eqs = Vec::new();
            let flat = flatten_args(a, fresh, &mut eqs);
            if eqs.is_empty() {
                return f.clone();
            }
            let binders: Vec<String> = eqs
                .iter()
                .map(|e| match e {
                    Formula::Eq(Term::Var(v), _) => v.clone(),
                    _ => unreachable!("flatten_args emits variable-led equalities"),
                })
                .collect();
            let mut conjuncts = eqs;
            conjuncts.push(Formula::Atom(flat));
            binders
                .into_iter()
                .rev()
                .fold(Formula::conjoin(conjuncts), |g, v| Formula::exists(v, g))
        }
        Formula::Eq(..) | Formula::Bottom => f.clone(),
        Formula::And(a, b) => Formula::and(
            normalize_head_formula(a, fresh),
            normalize_head_formula(b, fresh),
        ),
        Formula::Or(a, b) => Formula::or(
            normalize_head_formula(a, fresh),
            normalize_head_formula(b, fresh),
        ),
        // Implications in a quantifier-rule head are negative subformulas;
        // nothing inside them is strictly positive.
        Formula::Implies(..) => f.clone(),
        Formula::Forall(v, g) => Formula::forall(v.clone(), normalize_head_formula(g, fresh)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), normalize_head_formula(g, fresh)),
    }
}

/// True when every strictly positive atom occurrence in every rule head has
/// pairwise distinct variables as arguments.
pub fn is_normal_form(program: &Program) -> bool {
    program.rules.iter().all(|r| {
        strictly_positive_atoms(&r.head).iter().all(|a| {
            let mut seen = Vec::new();
            a.args.iter().all(|t| match t {
                Term::Var(v) if !seen.contains(v) => {
                    seen.push(v.clone());
                    true
                }
                _ => false,
            })
        })
    })
}

/// Builds the per-predicate conjunctive definition form: one conjunct
/// `forall x (G -> p(x))` for every predicate of the signature, where G
/// collects the rules defining p, plus one closed conjunct per constraint.
pub fn clark_normal_form(program: &Program) -> Result<Formula, SyntaxError> {
    if let Some(bad) = program
        .rules
        .iter()
        .find(|r| r.kind != RuleKind::Nondisjunctive)
    {
        return Err(SyntaxError::WrongRuleKind(bad.kind));
    }
    let sig = program.signature()?;
    let mut program_vars = Vec::new();
    for r in &program.rules {
        for v in r.head.all_vars().into_iter().chain(r.body.all_vars()) {
            if !program_vars.contains(&v) {
                program_vars.push(v);
            }
        }
    }
    let mut conjuncts = Vec::new();
    for (pred, &arity) in &sig.predicates {
        let mut fresh = FreshVars::new(program_vars.clone());
        let xs: Vec<String> = (0..arity).map(|_| fresh.next()).collect();
        let head_atom = Formula::atom(
            pred.clone(),
            xs.iter().map(|v| Term::var(v.clone())).collect(),
        );
        let mut disjuncts = Vec::new();
        for rule in &program.rules {
            let head = match &rule.head {
                Formula::Atom(a) if a.pred == *pred => a,
                _ => continue,
            };
            let mut parts: Vec<Formula> = xs
                .iter()
                .zip(&head.args)
                .map(|(x, t)| Formula::Eq(Term::var(x.clone()), t.clone()))
                .collect();
            if !rule.body.is_top() {
                parts.extend(rule.body.conjuncts().into_iter().cloned());
            }
            let inner = Formula::conjoin(parts);
            let zs: Vec<String> = inner
                .free_vars()
                .into_iter()
                .filter(|v| !xs.contains(v))
                .collect();
            disjuncts.push(zs.into_iter().rev().fold(inner, |g, z| Formula::exists(z, g)));
        }
        let g = Formula::disjoin(disjuncts);
        let conjunct = xs
            .into_iter()
            .rev()
            .fold(Formula::implies(g, head_atom), |f, x| Formula::forall(x, f));
        conjuncts.push(conjunct);
    }
    for rule in program.rules.iter().filter(|r| r.is_constraint()) {
        conjuncts.push(rule.fol_conjunct());
    }
    Ok(Formula::conjoin(conjuncts))
}

/// Turns each definition conjunct `forall x (G -> p(x))` into
/// `forall x (p(x) <-> G)`; constraint conjuncts pass through.
pub fn completion(cnf: &Formula) -> Result<Formula, SyntaxError> {
    let conjuncts: Result<Vec<Formula>, SyntaxError> = cnf
        .conjuncts()
        .into_iter()
        .map(complete_conjunct)
        .collect();
    Ok(Formula::conjoin(conjuncts?))
}

fn complete_conjunct(conjunct: &Formula) -> Result<Formula, SyntaxError> {
    // Strip the universal prefix, remembering the bound variables.
    let mut bound = Vec::new();
    let mut core = conjunct;
    while let Formula::Forall(v, g) = core {
        bound.push(v.clone());
        core = g;
    }
    let (g, h) = match core {
        Formula::Implies(g, h) => (g, h),
        _ => {
            return Err(SyntaxError::NotClarkNormalForm(format!(
                "conjunct `{conjunct}` is not a universally closed implication"
            )))
        }
    };
    let body = match &**h {
        // Constraint conjuncts keep their direction.
        Formula::Bottom => return Ok(conjunct.clone()),
        Formula::Atom(a) => {
            let distinct_bound_vars = a.args.len() == bound.len()
                && a.args
                    .iter()
                    .zip(&bound)
                    .all(|(t, v)| matches!(t, Term::Var(x) if x == v));
            if !distinct_bound_vars {
                return Err(SyntaxError::NotClarkNormalForm(format!(
                    "head of `{conjunct}` is not the bound variable tuple"
                )));
            }
            Formula::iff((**h).clone(), (**g).clone())
        }
        _ => {
            return Err(SyntaxError::NotClarkNormalForm(format!(
                "consequent of `{conjunct}` is neither an atom nor #false"
            )))
        }
    };
    Ok(bound
        .into_iter()
        .rev()
        .fold(body, |f, v| Formula::forall(v, f)))
}

/// Prepares a sentence for stable-model reasoning with non-minimized
/// predicates: atoms over predicates outside `p` are doubly negated, each
/// such predicate receives a choice conjunct `forall x (q(x) | not q(x))`,
/// and predicates of `p` that never occur get a falsifying conjunct.
pub fn extensional_transform(f: &Formula, p: &[(String, usize)]) -> Formula {
    let in_p = |name: &str| p.iter().any(|(n, _)| n == name);
    fn doubly_negate(f: &Formula, in_p: &dyn Fn(&str) -> bool) -> Formula {
        match f {
            Formula::Atom(a) if !in_p(&a.pred) => Formula::not_(Formula::not_(f.clone())),
            Formula::Atom(_) | Formula::Eq(..) | Formula::Bottom => f.clone(),
            Formula::And(a, b) => Formula::and(doubly_negate(a, in_p), doubly_negate(b, in_p)),
            Formula::Or(a, b) => Formula::or(doubly_negate(a, in_p), doubly_negate(b, in_p)),
            Formula::Implies(a, b) => {
                Formula::implies(doubly_negate(a, in_p), doubly_negate(b, in_p))
            }
            Formula::Forall(v, g) => Formula::forall(v.clone(), doubly_negate(g, in_p)),
            Formula::Exists(v, g) => Formula::exists(v.clone(), doubly_negate(g, in_p)),
        }
    }
    let occurring = Signature::of_formula(f)
        .map(|s| s.predicates)
        .unwrap_or_default();
    let mut conjuncts = vec![doubly_negate(f, &in_p)];
    for (pred, &arity) in &occurring {
        if in_p(pred) {
            continue;
        }
        let vars: Vec<String> = (1..=arity).map(|i| format!("v{i}")).collect();
        let atom = Formula::atom(
            pred.clone(),
            vars.iter().map(|v| Term::var(v.clone())).collect(),
        );
        let choice = Formula::or(atom.clone(), Formula::not_(atom));
        conjuncts.push(vars.into_iter().rev().fold(choice, |g, v| Formula::forall(v, g)));
    }
    for (pred, arity) in p {
        if occurring.contains_key(pred) {
            continue;
        }
        let vars: Vec<String> = (1..=*arity).map(|i| format!("v{i}")).collect();
        let atom = Formula::atom(
            pred.clone(),
            vars.iter().map(|v| Term::var(v.clone())).collect(),
        );
        conjuncts.push(
            vars.into_iter()
                .rev()
                .fold(Formula::not_(atom), |g, v| Formula::forall(v, g)),
        );
    }
    Formula::conjoin(conjuncts)
}

/// Expands quantifiers into finite conjunctions and disjunctions over the
/// given object constants.
pub fn ground_formula(f: &Formula, constants: &[String]) -> Result<Formula, SyntaxError> {
    if constants.is_empty() {
        return Err(SyntaxError::EmptyGroundingSet);
    }
    let sig = Signature::of_formula(f)?;
    if let Some((name, _)) = sig.functions.iter().find(|(_, &a)| a > 0) {
        return Err(SyntaxError::PositiveArityFunction(name.clone()));
    }
    fn expand(f: &Formula, constants: &[String]) -> Result<Formula, SyntaxError> {
        match f {
            Formula::Atom(_) | Formula::Eq(..) | Formula::Bottom => Ok(f.clone()),
            Formula::And(a, b) => Ok(Formula::and(expand(a, constants)?, expand(b, constants)?)),
            Formula::Or(a, b) => Ok(Formula::or(expand(a, constants)?, expand(b, constants)?)),
            Formula::Implies(a, b) => Ok(Formula::implies(
                expand(a, constants)?,
                expand(b, constants)?,
            )),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let inner = expand(g, constants)?;
                let mut instances = Vec::new();
                for c in constants {
                    let mut m = IndexMap::new();
                    m.insert(v.clone(), Term::con(c.clone()));
                    instances.push(inner.substitute(&m)?);
                }
                Ok(match f {
                    Formula::Forall(..) => Formula::conjoin(instances),
                    _ => Formula::disjoin(instances),
                })
            }
        }
    }
    expand(f, constants)
}

/// Truth-functional cleanup: drops `#true` conjuncts, `#false` disjuncts,
/// trivial implications, vacuous quantifiers, and `t = t`. Preserves
/// classical equivalence; applied only on request so that generated formulas
/// keep their raw shape by default.
pub fn simplify(f: &Formula) -> Formula {
    let mut current = f.clone();
    loop {
        let next = simplify_once(&current);
        if next == current {
            return next;
        }
        current = next;
    }
}

fn simplify_once(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Bottom => f.clone(),
        Formula::Eq(l, r) if l == r => Formula::top(),
        Formula::Eq(..) => f.clone(),
        Formula::And(a, b) => {
            let (a, b) = (simplify_once(a), simplify_once(b));
            if a.is_top() {
                b
            } else if b.is_top() {
                a
            } else if a == Formula::Bottom || b == Formula::Bottom {
                Formula::Bottom
            } else {
                Formula::and(a, b)
            }
        }
        Formula::Or(a, b) => {
            let (a, b) = (simplify_once(a), simplify_once(b));
            if a == Formula::Bottom {
                b
            } else if b == Formula::Bottom {
                a
            } else if a.is_top() || b.is_top() {
                Formula::top()
            } else {
                Formula::or(a, b)
            }
        }
        Formula::Implies(a, b) => {
            let (a, b) = (simplify_once(a), simplify_once(b));
            if a == Formula::Bottom && b == Formula::Bottom {
                // Keep `#true` in its canonical shape.
                Formula::top()
            } else if a == Formula::Bottom || b.is_top() {
                Formula::top()
            } else if a.is_top() {
                b
            } else {
                Formula::implies(a, b)
            }
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let inner = simplify_once(g);
            if inner.is_top() {
                Formula::top()
            } else if inner == Formula::Bottom || !inner.free_vars().contains(v) {
                // Universes are nonempty, so a vacuous binder can go.
                inner
            } else {
                match f {
                    Formula::Forall(..) => Formula::forall(v.clone(), inner),
                    _ => Formula::exists(v.clone(), inner),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn pvar(p: &str, v: &str) -> Formula {
        Formula::atom(p, vec![Term::var(v)])
    }

    #[test]
    fn rectify_renames_only_conflicted_binders() {
        // forall X (p(X)) -> forall X (q(X)): both binders share a name.
        let f = Formula::implies(
            Formula::forall("X", pvar("p", "X")),
            Formula::forall("X", pvar("q", "X")),
        );
        let r = rectify(&f);
        assert_eq!(r.to_string(), "forall V1 (p(V1)) -> forall V2 (q(V2))");
        assert!(is_rectified(&r));

        // A variable both free and bound: only the binding occurrence moves.
        let g = Formula::and(pvar("p", "X"), Formula::exists("X", pvar("q", "X")));
        assert_eq!(rectify(&g).to_string(), "p(X) & exists V1 (q(V1))");

        // An already rectified formula is untouched.
        let h = Formula::forall("X", Formula::implies(pvar("p", "X"), pvar("q", "X")));
        assert_eq!(rectify(&h), h);
    }

    #[test]
    fn rectify_is_idempotent() {
        let f = Formula::implies(
            Formula::forall("X", pvar("p", "X")),
            Formula::and(pvar("q", "X"), Formula::exists("X", pvar("r", "X"))),
        );
        let once = rectify(&f);
        assert_eq!(rectify(&once), once);
        assert!(is_rectified(&once));
    }

    #[test]
    fn normalize_rewrites_heads_with_fresh_variables() {
        let program = parse_program("p(a, b) :- q(a).").unwrap();
        let normal = normalize(&program);
        assert_eq!(
            normal.rules[0].to_string(),
            "p(V1, V2) :- V1 = a, V2 = b, q(a)."
        );
        assert!(is_normal_form(&normal));

        let same = parse_program("p(X) :- q(X).").unwrap();
        assert_eq!(normalize(&same), same);

        let repeated = parse_program("p(X, X).").unwrap();
        assert_eq!(normalize(&repeated).rules[0].to_string(), "p(X, V1) :- V1 = X.");
    }

    #[test]
    fn normalize_wraps_quantifier_rule_heads_in_place() {
        let program = parse_program("exists Y (r(f(X), Y)) :- q(X).").unwrap();
        let normal = normalize(&program);
        assert_eq!(
            normal.rules[0].to_string(),
            "exists Y V1 (V1 = f(X) & r(V1, Y)) :- q(X)."
        );
    }

    #[test]
    fn clark_normal_form_and_completion_of_single_rule() {
        let program = parse_program("p(b) :- p(a).").unwrap();
        let cnf = clark_normal_form(&program).unwrap();
        assert_eq!(cnf.to_string(), "forall V1 (V1 = b & p(a) -> p(V1))");
        let comp = completion(&cnf).unwrap();
        assert_eq!(comp.to_string(), "forall V1 (p(V1) <-> V1 = b & p(a))");
    }

    #[test]
    fn clark_normal_form_covers_defless_predicates_and_constraints() {
        let program = parse_program("p(b) :- p(a). :- a != b. q(a) :- not p(b).").unwrap();
        let cnf = clark_normal_form(&program).unwrap();
        let parts: Vec<String> = cnf.conjuncts().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            parts,
            vec![
                "forall V1 (V1 = b & p(a) -> p(V1))",
                "forall V1 (V1 = a & not p(b) -> q(V1))",
                "not a != b",
            ]
        );
        let comp = completion(&cnf).unwrap();
        let parts: Vec<String> = comp.conjuncts().iter().map(|c| c.to_string()).collect();
        assert_eq!(parts[2], "not a != b");
        assert!(parts[0].contains("<->"));

        let disj = parse_program("p(X) ; q(X) :- r(X).").unwrap();
        assert!(clark_normal_form(&disj).is_err());
    }

    #[test]
    fn completion_rejects_non_definition_conjuncts() {
        let not_cnf = Formula::forall(
            "X",
            Formula::implies(pvar("q", "X"), Formula::atom("p", vec![Term::con("a")])),
        );
        assert!(completion(&not_cnf).is_err());
    }

    #[test]
    fn extensional_transform_cases() {
        let f = Formula::atom("p", vec![Term::con("a")]);
        // Full list: identity.
        assert_eq!(
            extensional_transform(&f, &[("p".to_string(), 1)]),
            f.clone()
        );
        // Declared-but-absent predicate is forced empty.
        let g = extensional_transform(&f, &[("p".to_string(), 1), ("q".to_string(), 1)]);
        assert_eq!(g.to_string(), "p(a) & forall V1 (not q(V1))");
        // Predicate outside the list is doubly negated and gets a choice
        // conjunct.
        let h = extensional_transform(
            &Formula::implies(pvar("q", "X"), pvar("p", "X")),
            &[("p".to_string(), 1)],
        );
        assert_eq!(
            h.to_string(),
            "(not not q(X) -> p(X)) & forall V1 (q(V1) | not q(V1))"
        );
    }

    #[test]
    fn grounding_expands_quantifiers() {
        let f = Formula::forall("X", pvar("p", "X"));
        let g = ground_formula(&f, &["c".to_string()]).unwrap();
        assert_eq!(g.to_string(), "p(c)");
        let e = Formula::exists("X", pvar("p", "X"));
        let ge = ground_formula(&e, &["a".to_string(), "b".to_string()]).unwrap();
        assert_eq!(ge.to_string(), "p(a) | p(b)");
        let bad = Formula::atom("p", vec![Term::app("f", vec![Term::con("a")])]);
        assert!(ground_formula(&bad, &["a".to_string()]).is_err());
        assert!(ground_formula(&f, &[]).is_err());
    }

    #[test]
    fn simplify_drops_trivialities() {
        let f = Formula::and(
            Formula::top(),
            Formula::or(Formula::Bottom, pvar("p", "X")),
        );
        assert_eq!(simplify(&f), pvar("p", "X"));
        let eq = Formula::not_(Formula::Eq(Term::var("U"), Term::var("U")));
        assert_eq!(simplify(&eq), Formula::Bottom);
        let vacuous = Formula::forall("X", Formula::atom("p", vec![Term::con("a")]));
        assert_eq!(simplify(&vacuous), Formula::atom("p", vec![Term::con("a")]));
        assert_eq!(simplify(&Formula::top()), Formula::top());
    }
}
