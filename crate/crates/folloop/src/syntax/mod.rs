//! Core syntax: terms, atoms, formulas, signatures.
//!
//! The formula language is first-order logic with equality over a signature of
//! object/function constants and predicate constants. Negation and truth are
//! not primitive: `not F` abbreviates `F -> #false` and `#true` abbreviates
//! `#false -> #false`. Keeping the abbreviations out of the AST means every
//! transformation has exactly six connective cases to handle, at the cost of a
//! few pattern-recognizers in the printer.

mod occurrence;
mod pretty;
pub mod program;
pub mod transform;

pub use occurrence::{
    is_negative, strictly_positive_atoms, AtomOccurrence, FormulaRule, OccurrenceTable,
};
pub(crate) use pretty::{as_iff, capitalize_var};
pub use program::{Program, Rule, RuleKind};
pub use transform::{
    clark_normal_form, completion, extensional_transform, ground_formula, is_normal_form,
    is_rectified, normalize, rectify, simplify,
};

use indexmap::IndexMap;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// First-order term: a variable or a function constant applied to arguments.
/// Object constants are zero-ary function applications.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn con(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Collects variable names in first-occurrence order.
    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|x| x == v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// All subterms including the term itself, outermost first.
    pub fn subterms(&self, out: &mut Vec<Term>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        if let Term::App(_, args) = self {
            for a in args {
                a.subterms(out);
            }
        }
    }

    pub fn has_positive_arity_fn(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => !args.is_empty(),
        }
    }
}

/// A predicate constant applied to terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Atom {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// Formulas. `Bottom` is falsity; `top()` and `not_()` build the standard
/// abbreviations. Quantifiers bind a single variable each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Eq(Term, Term),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::new(pred, args))
    }

    pub fn top() -> Formula {
        Formula::Implies(Box::new(Formula::Bottom), Box::new(Formula::Bottom))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(a, b) if **a == Formula::Bottom && **b == Formula::Bottom)
    }

    pub fn not_(f: Formula) -> Formula {
        Formula::Implies(Box::new(f), Box::new(Formula::Bottom))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `a <-> b` as the conjunction of the two implications.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    /// Left-associated conjunction; the empty conjunction is `#true`.
    pub fn conjoin(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::top(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Left-associated disjunction; the empty disjunction is `#false`.
    pub fn disjoin(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::Bottom,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    /// Top-level conjuncts, flattening nested `And` nodes.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Top-level disjuncts, flattening nested `Or` nodes.
    pub fn disjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.free_vars_into(&mut bound, &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => {
                let mut vs = Vec::new();
                for t in &a.args {
                    t.collect_vars(&mut vs);
                }
                for v in vs {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula::Eq(l, r) => {
                let mut vs = Vec::new();
                l.collect_vars(&mut vs);
                r.collect_vars(&mut vs);
                for v in vs {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere (free, bound, or as a binder),
    /// in first-occurrence order.
    pub fn all_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        fn push(out: &mut Vec<String>, v: &str) {
            if !out.iter().any(|x| x == v) {
                out.push(v.to_string());
            }
        }
        fn walk(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    let mut vs = Vec::new();
                    for t in &a.args {
                        t.collect_vars(&mut vs);
                    }
                    for v in vs {
                        push(out, &v);
                    }
                }
                Formula::Eq(l, r) => {
                    let mut vs = Vec::new();
                    l.collect_vars(&mut vs);
                    r.collect_vars(&mut vs);
                    for v in vs {
                        push(out, &v);
                    }
                }
                Formula::Bottom => {}
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    push(out, v);
                    walk(g, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Universal closure over the free variables, outermost binder first in
    /// first-occurrence order.
    pub fn forall_closure(self) -> Formula {
        let vars = self.free_vars();
        vars.into_iter()
            .rev()
            .fold(self, |f, v| Formula::forall(v, f))
    }

    /// Number of AST nodes (terms excluded); used for size-bound checks.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Eq(_, _) | Formula::Bottom => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.node_count() + b.node_count()
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.node_count(),
        }
    }

    pub fn has_positive_arity_fn(&self) -> bool {
        match self {
            Formula::Atom(a) => a.args.iter().any(|t| t.has_positive_arity_fn()),
            Formula::Eq(l, r) => l.has_positive_arity_fn() || r.has_positive_arity_fn(),
            Formula::Bottom => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_positive_arity_fn() || b.has_positive_arity_fn()
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.has_positive_arity_fn(),
        }
    }

    /// Applies a variable substitution. The caller must ensure no variable in
    /// the range of the substitution is captured by a binder; this is checked
    /// and reported as an error rather than silently producing a wrong result.
    pub fn substitute(&self, map: &IndexMap<String, Term>) -> Result<Formula, SyntaxError> {
        fn subst_term(t: &Term, map: &IndexMap<String, Term>) -> Term {
            match t {
                Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
                Term::App(f, args) => Term::App(
                    f.clone(),
                    args.iter().map(|a| subst_term(a, map)).collect(),
                ),
            }
        }
        fn walk(f: &Formula, map: &IndexMap<String, Term>) -> Result<Formula, SyntaxError> {
            match f {
                Formula::Atom(a) => Ok(Formula::Atom(Atom {
                    pred: a.pred.clone(),
                    args: a.args.iter().map(|t| subst_term(t, map)).collect(),
                })),
                Formula::Eq(l, r) => Ok(Formula::Eq(subst_term(l, map), subst_term(r, map))),
                Formula::Bottom => Ok(Formula::Bottom),
                Formula::And(a, b) => Ok(Formula::and(walk(a, map)?, walk(b, map)?)),
                Formula::Or(a, b) => Ok(Formula::or(walk(a, map)?, walk(b, map)?)),
                Formula::Implies(a, b) => Ok(Formula::implies(walk(a, map)?, walk(b, map)?)),
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    let mut range_vars = Vec::new();
                    for (k, t) in map.iter() {
                        if k != v {
                            t.collect_vars(&mut range_vars);
                        }
                    }
                    if range_vars.iter().any(|x| x == v) {
                        return Err(SyntaxError::VariableCapture(v.clone()));
                    }
                    let inner = if map.contains_key(v) {
                        let mut narrowed = map.clone();
                        narrowed.shift_remove(v);
                        walk(g, &narrowed)?
                    } else {
                        walk(g, map)?
                    };
                    Ok(match f {
                        Formula::Forall(..) => Formula::forall(v.clone(), inner),
                        _ => Formula::exists(v.clone(), inner),
                    })
                }
            }
        }
        walk(self, map)
    }

    /// Structural equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn term_eq(a: &Term, b: &Term, la: &[(String, usize)], lb: &[(String, usize)]) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    let dx = la.iter().rev().find(|(n, _)| n == x).map(|(_, i)| *i);
                    let dy = lb.iter().rev().find(|(n, _)| n == y).map(|(_, i)| *i);
                    match (dx, dy) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::App(f, xs), Term::App(g, ys)) => {
                    f == g
                        && xs.len() == ys.len()
                        && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, la, lb))
                }
                _ => false,
            }
        }
        fn walk(
            a: &Formula,
            b: &Formula,
            la: &mut Vec<(String, usize)>,
            lb: &mut Vec<(String, usize)>,
            depth: usize,
        ) -> bool {
            match (a, b) {
                (Formula::Atom(x), Formula::Atom(y)) => {
                    x.pred == y.pred
                        && x.args.len() == y.args.len()
                        && x.args.iter().zip(&y.args).all(|(s, t)| term_eq(s, t, la, lb))
                }
                (Formula::Eq(l1, r1), Formula::Eq(l2, r2)) => {
                    term_eq(l1, l2, la, lb) && term_eq(r1, r2, la, lb)
                }
                (Formula::Bottom, Formula::Bottom) => true,
                (Formula::And(x1, y1), Formula::And(x2, y2))
                | (Formula::Or(x1, y1), Formula::Or(x2, y2))
                | (Formula::Implies(x1, y1), Formula::Implies(x2, y2)) => {
                    walk(x1, x2, la, lb, depth) && walk(y1, y2, la, lb, depth)
                }
                (Formula::Forall(v1, f1), Formula::Forall(v2, f2))
                | (Formula::Exists(v1, f1), Formula::Exists(v2, f2)) => {
                    la.push((v1.clone(), depth));
                    lb.push((v2.clone(), depth));
                    let r = walk(f1, f2, la, lb, depth + 1);
                    la.pop();
                    lb.pop();
                    r
                }
                _ => false,
            }
        }
        walk(self, other, &mut Vec::new(), &mut Vec::new(), 0)
    }
}

/// Function and predicate constants of a formula or program, with arities.
/// Symbols are kept in first-occurrence order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: IndexMap<String, usize>,
    pub functions: IndexMap<String, usize>,
}

impl Signature {
    pub fn of_formula(f: &Formula) -> Result<Signature, SyntaxError> {
        let mut sig = Signature::default();
        sig.absorb_formula(f)?;
        Ok(sig)
    }

    pub fn absorb_formula(&mut self, f: &Formula) -> Result<(), SyntaxError> {
        match f {
            Formula::Atom(a) => {
                self.note_pred(&a.pred, a.args.len())?;
                for t in &a.args {
                    self.absorb_term(t)?;
                }
                Ok(())
            }
            Formula::Eq(l, r) => {
                self.absorb_term(l)?;
                self.absorb_term(r)
            }
            Formula::Bottom => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.absorb_formula(a)?;
                self.absorb_formula(b)
            }
            Formula::Forall(_, g) | Formula::Exists(_, g) => self.absorb_formula(g),
        }
    }

    pub fn absorb_term(&mut self, t: &Term) -> Result<(), SyntaxError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                self.note_fn(f, args.len())?;
                for a in args {
                    self.absorb_term(a)?;
                }
                Ok(())
            }
        }
    }

    pub fn note_pred(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        match self.predicates.get(name) {
            Some(&n) if n != arity => Err(SyntaxError::ArityClash {
                symbol: name.to_string(),
                first: n,
                second: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.predicates.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn note_fn(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        match self.functions.get(name) {
            Some(&n) if n != arity => Err(SyntaxError::ArityClash {
                symbol: name.to_string(),
                first: n,
                second: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.functions.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    /// Object constants (zero-ary function constants) in first-occurrence order.
    pub fn object_constants(&self) -> Vec<String> {
        self.functions
            .iter()
            .filter(|(_, &a)| a == 0)
            .map(|(n, _)| n.clone())
            .collect()
    }

    pub fn has_positive_arity_fn(&self) -> bool {
        self.functions.values().any(|&a| a > 0)
    }

    pub fn max_pred_arity(&self) -> usize {
        self.predicates.values().copied().max().unwrap_or(0)
    }
}

/// Deterministic source of fresh variable names `v1, v2, ...`, skipping any
/// name already in use. The capitalized image (`V1`, ...) is also avoided so
/// that printing, which upper-cases variables, stays injective.
#[derive(Debug, Clone)]
pub struct FreshVars {
    taken: BTreeSet<String>,
    counter: usize,
}

impl FreshVars {
    pub fn new(taken: impl IntoIterator<Item = String>) -> FreshVars {
        FreshVars {
            taken: taken.into_iter().collect(),
            counter: 0,
        }
    }

    pub fn avoiding(f: &Formula) -> FreshVars {
        FreshVars::new(f.all_vars())
    }

    pub fn reserve(&mut self, name: impl Into<String>) {
        self.taken.insert(name.into());
    }

    pub fn next(&mut self) -> String {
        loop {
            self.counter += 1;
            let cand = format!("v{}", self.counter);
            let upper = format!("V{}", self.counter);
            if !self.taken.contains(&cand) && !self.taken.contains(&upper) {
                self.taken.insert(cand.clone());
                return cand;
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("symbol `{symbol}` used with arities {first} and {second}")]
    ArityClash {
        symbol: String,
        first: usize,
        second: usize,
    },
    #[error("substitution would capture variable `{0}`")]
    VariableCapture(String),
    #[error("grounding requires a nonempty set of object constants")]
    EmptyGroundingSet,
    #[error("cannot ground a formula containing function constant `{0}` of positive arity")]
    PositiveArityFunction(String),
    #[error("formula is not in conjunctive definition form: {0}")]
    NotClarkNormalForm(String),
    #[error("operation requires a nondisjunctive program, found a {0:?} rule")]
    WrongRuleKind(RuleKind),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Formula::Atom(self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("X")
    }

    #[test]
    fn conjoin_assoc_and_empty() {
        let a = Formula::atom("p", vec![x()]);
        let b = Formula::atom("q", vec![x()]);
        let c = Formula::atom("r", vec![x()]);
        let f = Formula::conjoin([a.clone(), b.clone(), c.clone()]);
        assert_eq!(f, Formula::and(Formula::and(a, b), c));
        assert!(Formula::conjoin([]).is_top());
        assert_eq!(Formula::disjoin([]), Formula::Bottom);
    }

    #[test]
    fn free_vars_respect_binders() {
        // p(X) & exists X (q(X, Y))
        let f = Formula::and(
            Formula::atom("p", vec![x()]),
            Formula::exists("X", Formula::atom("q", vec![x(), Term::var("Y")])),
        );
        assert_eq!(f.free_vars(), vec!["X".to_string(), "Y".to_string()]);
        assert_eq!(f.all_vars(), vec!["X".to_string(), "Y".to_string()]);
    }

    #[test]
    fn closure_binds_in_first_occurrence_order() {
        let f = Formula::implies(
            Formula::atom("q", vec![Term::var("Y")]),
            Formula::atom("p", vec![x()]),
        );
        let closed = f.forall_closure();
        match closed {
            Formula::Forall(ref v, ref inner) => {
                assert_eq!(v, "Y");
                assert!(matches!(**inner, Formula::Forall(ref w, _) if w == "X"));
            }
            other => panic!("expected quantifier, got {other:?}"),
        }
    }

    #[test]
    fn substitution_rejects_capture() {
        // forall X p(X, Y) with Y := X must not capture.
        let f = Formula::forall("X", Formula::atom("p", vec![x(), Term::var("Y")]));
        let mut m = IndexMap::new();
        m.insert("Y".to_string(), x());
        assert_eq!(f.substitute(&m), Err(SyntaxError::VariableCapture("X".into())));
        let mut ok = IndexMap::new();
        ok.insert("Y".to_string(), Term::con("a"));
        assert!(f.substitute(&ok).is_ok());
    }

    #[test]
    fn alpha_equivalence() {
        let f = Formula::forall("X", Formula::atom("p", vec![x()]));
        let g = Formula::forall("Y", Formula::atom("p", vec![Term::var("Y")]));
        assert!(f.alpha_eq(&g));
        let h = Formula::forall("Y", Formula::atom("p", vec![x()]));
        assert!(!f.alpha_eq(&h));
        // Free variables must match by name.
        let open1 = Formula::atom("p", vec![x()]);
        let open2 = Formula::atom("p", vec![Term::var("Y")]);
        assert!(!open1.alpha_eq(&open2));
    }

    #[test]
    fn signature_collects_in_order_and_rejects_clashes() {
        let f = Formula::and(
            Formula::atom("p", vec![Term::con("a")]),
            Formula::atom("q", vec![Term::app("f", vec![Term::con("b")])]),
        );
        let sig = Signature::of_formula(&f).unwrap();
        assert_eq!(
            sig.predicates.keys().cloned().collect::<Vec<_>>(),
            vec!["p", "q"]
        );
        assert_eq!(sig.object_constants(), vec!["a", "b"]);
        assert_eq!(sig.functions.get("f"), Some(&1));

        let clash = Formula::and(
            Formula::atom("p", vec![Term::con("a")]),
            Formula::atom("p", vec![Term::con("a"), Term::con("b")]),
        );
        assert!(Signature::of_formula(&clash).is_err());
    }

    #[test]
    fn fresh_names_skip_taken_and_capitalized() {
        let mut fresh = FreshVars::new(["v1".to_string(), "V2".to_string()]);
        assert_eq!(fresh.next(), "v3");
        assert_eq!(fresh.next(), "v4");
    }
}
