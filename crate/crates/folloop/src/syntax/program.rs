//! Rules, programs, and the FOL-representation.
//!
//! A program is a list of rules plus optional directives. Each rule stores its
//! head and body as plain formulas together with a classification that the
//! support-formula generators dispatch on. Facts carry `#true` bodies and
//! constraints carry `#false` heads, so a rule is always one implication.

use super::occurrence::is_negative;
use super::pretty::fmt_body;
use super::{Formula, Signature, SyntaxError};
use std::fmt;

/// Syntactic class of a rule, most specific first.
///
/// A constraint (head `#false`) with a conjunction of atoms and negative
/// formulas as body counts as nondisjunctive; the per-predicate machinery
/// (completion, support formulas) never consults constraint heads, and the
/// class keeps constraint-bearing programs inside the nondisjunctive
/// operations that handle them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// Head is one atom (or `#false`); body is a conjunction of atoms and
    /// negative formulas.
    Nondisjunctive,
    /// Head is a disjunction of two or more atoms; body as above.
    Disjunctive,
    /// Anything else; implications may appear in the head or body only inside
    /// negative subformulas.
    Quantifier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub head: Formula,
    pub body: Formula,
    pub kind: RuleKind,
}

impl Rule {
    /// Classifies and validates a head/body pair.
    pub fn new(head: Formula, body: Formula) -> Result<Rule, SyntaxError> {
        let kind = classify(&head, &body)?;
        Ok(Rule { head, body, kind })
    }

    pub fn fact(head: Formula) -> Result<Rule, SyntaxError> {
        Rule::new(head, Formula::top())
    }

    pub fn constraint(body: Formula) -> Result<Rule, SyntaxError> {
        Rule::new(Formula::Bottom, body)
    }

    pub fn is_constraint(&self) -> bool {
        self.head == Formula::Bottom
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_top()
    }

    /// The implication this rule contributes to the FOL-representation,
    /// universally closed over its free variables. A fact contributes its
    /// head alone rather than `#true -> head`.
    pub fn fol_conjunct(&self) -> Formula {
        let open = if self.is_fact() {
            self.head.clone()
        } else {
            Formula::implies(self.body.clone(), self.head.clone())
        };
        open.forall_closure()
    }
}

/// True when every conjunct is an atom or a negative formula, the body shape
/// shared by nondisjunctive and disjunctive rules.
fn simple_body(body: &Formula) -> bool {
    body.conjuncts()
        .iter()
        .all(|c| matches!(c, Formula::Atom(_)) || is_negative(c))
}

fn classify(head: &Formula, body: &Formula) -> Result<RuleKind, SyntaxError> {
    if simple_body(body) {
        match head {
            Formula::Atom(_) | Formula::Bottom => return Ok(RuleKind::Nondisjunctive),
            Formula::Or(..) if head.disjuncts().iter().all(|d| matches!(d, Formula::Atom(_))) => {
                return Ok(RuleKind::Disjunctive)
            }
            _ => {}
        }
    }
    check_implications_negative(head)?;
    check_implications_negative(body)?;
    Ok(RuleKind::Quantifier)
}

/// Rejects any implication that does not itself form (or sit inside) a
/// negative subformula. Keeps quantifier-rule heads and bodies free of
/// strictly positive implications, so each rule is exactly one rule of the
/// FOL-representation.
fn check_implications_negative(f: &Formula) -> Result<(), SyntaxError> {
    match f {
        Formula::Atom(_) | Formula::Eq(..) | Formula::Bottom => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) => {
            check_implications_negative(a)?;
            check_implications_negative(b)
        }
        Formula::Forall(_, g) | Formula::Exists(_, g) => check_implications_negative(g),
        Formula::Implies(..) => {
            if is_negative(f) {
                Ok(())
            } else {
                Err(SyntaxError::WrongRuleKind(RuleKind::Quantifier))
            }
        }
    }
}

/// A program: rules plus directives. `intensional_decl` and `extensional_decl`
/// mirror the `#intensional`/`#extensional` directives; the effective
/// intensional list is computed by [`Program::intensional`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub intensional_decl: Vec<(String, usize)>,
    pub extensional_decl: Vec<(String, usize)>,
    pub universe_hint: Option<usize>,
    pub queries: Vec<Formula>,
}

impl Program {
    pub fn from_rules(rules: Vec<Rule>) -> Program {
        Program {
            rules,
            ..Program::default()
        }
    }

    /// Function and predicate constants of the rules and directives, in
    /// first-occurrence order. Queries do not contribute.
    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        let mut sig = Signature::default();
        for r in &self.rules {
            sig.absorb_formula(&r.head)?;
            sig.absorb_formula(&r.body)?;
        }
        for (name, arity) in self.intensional_decl.iter().chain(&self.extensional_decl) {
            sig.note_pred(name, *arity)?;
        }
        Ok(sig)
    }

    /// The predicates the stable-model operator minimizes. An explicit
    /// `#intensional` directive fixes the list exactly (it may declare
    /// predicates that never occur in a rule); otherwise every occurring
    /// predicate is intensional except those declared `#extensional`.
    pub fn intensional(&self) -> Result<Vec<(String, usize)>, SyntaxError> {
        let sig = self.signature()?;
        if !self.intensional_decl.is_empty() {
            return Ok(self.intensional_decl.clone());
        }
        Ok(sig
            .predicates
            .iter()
            .filter(|(name, _)| !self.extensional_decl.iter().any(|(e, _)| e == *name))
            .map(|(n, &a)| (n.clone(), a))
            .collect())
    }

    /// Conjunction over rules of the universal closure of body -> head; the
    /// empty program is `#true`.
    pub fn fol_representation(&self) -> Result<Formula, SyntaxError> {
        self.signature()?;
        Ok(Formula::conjoin(
            self.rules.iter().map(|r| r.fol_conjunct()),
        ))
    }

    pub fn all_nondisjunctive(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.kind == RuleKind::Nondisjunctive)
    }

    pub fn all_disjunctive(&self) -> bool {
        self.rules
            .iter()
            .all(|r| matches!(r.kind, RuleKind::Nondisjunctive | RuleKind::Disjunctive))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constraint() {
            write!(f, ":- ")?;
            fmt_body(&self.body, f)?;
        } else {
            for (i, d) in self.head.disjuncts().iter().enumerate() {
                if i > 0 {
                    write!(f, " ; ")?;
                }
                write!(f, "{d}")?;
            }
            if !self.is_fact() {
                write!(f, " :- ")?;
                fmt_body(&self.body, f)?;
            }
        }
        write!(f, ".")
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        let fmt_decl = |list: &[(String, usize)]| {
            list.iter()
                .map(|(n, a)| format!("{n}/{a}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        if !self.intensional_decl.is_empty() {
            writeln!(f, "#intensional {}.", fmt_decl(&self.intensional_decl))?;
        }
        if !self.extensional_decl.is_empty() {
            writeln!(f, "#extensional {}.", fmt_decl(&self.extensional_decl))?;
        }
        if let Some(n) = self.universe_hint {
            writeln!(f, "#universe {n}.")?;
        }
        for q in &self.queries {
            writeln!(f, "#query {q}.")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Atom, Term};

    fn atom(p: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::new(p, args))
    }

    #[test]
    fn classification_covers_the_three_kinds() {
        let x = || Term::var("X");
        let nd = Rule::new(
            atom("r", vec![x()]),
            Formula::and(atom("p", vec![x()]), Formula::not_(atom("q", vec![x()]))),
        )
        .unwrap();
        assert_eq!(nd.kind, RuleKind::Nondisjunctive);

        let constraint = Rule::constraint(Formula::not_(Formula::Eq(
            Term::con("a"),
            Term::con("b"),
        )))
        .unwrap();
        assert_eq!(constraint.kind, RuleKind::Nondisjunctive);
        assert!(constraint.is_constraint());

        let disj = Rule::new(
            Formula::or(atom("p", vec![x()]), atom("q", vec![x()])),
            atom("r", vec![x()]),
        )
        .unwrap();
        assert_eq!(disj.kind, RuleKind::Disjunctive);

        let quant = Rule::new(
            atom("hasWife", vec![x()]),
            Formula::exists("Y", atom("spouse", vec![x(), Term::var("Y")])),
        )
        .unwrap();
        assert_eq!(quant.kind, RuleKind::Quantifier);
    }

    #[test]
    fn strictly_positive_implication_in_body_is_rejected() {
        let x = || Term::var("X");
        let bad = Rule::new(
            atom("p", vec![x()]),
            Formula::implies(atom("q", vec![x()]), atom("r", vec![x()])),
        );
        assert!(bad.is_err());
        // The same implication under `not` is a negative subformula, which a
        // plain rule body may contain.
        let ok = Rule::new(
            atom("p", vec![x()]),
            Formula::not_(Formula::implies(atom("q", vec![x()]), atom("r", vec![x()]))),
        );
        assert_eq!(ok.unwrap().kind, RuleKind::Nondisjunctive);
    }

    #[test]
    fn fol_representation_of_basic_program() {
        let x = || Term::var("X");
        let rules = vec![
            Rule::fact(atom("p", vec![Term::con("a")])).unwrap(),
            Rule::fact(atom("q", vec![Term::con("b")])).unwrap(),
            Rule::new(
                atom("r", vec![x()]),
                Formula::and(atom("p", vec![x()]), Formula::not_(atom("q", vec![x()]))),
            )
            .unwrap(),
        ];
        let f = Program::from_rules(rules).fol_representation().unwrap();
        assert_eq!(
            f.to_string(),
            "p(a) & q(b) & forall X (p(X) & not q(X) -> r(X))"
        );
        assert!(Program::default().fol_representation().unwrap().is_top());
    }

    #[test]
    fn rule_display_round_trip_shapes() {
        let x = || Term::var("X");
        let r = Rule::new(
            atom("r", vec![x()]),
            Formula::and(atom("p", vec![x()]), Formula::not_(atom("q", vec![x()]))),
        )
        .unwrap();
        assert_eq!(r.to_string(), "r(X) :- p(X), not q(X).");
        let c = Rule::constraint(Formula::not_(Formula::Eq(Term::con("a"), Term::con("b"))))
            .unwrap();
        assert_eq!(c.to_string(), ":- a != b.");
        let f = Rule::fact(atom("p", vec![Term::con("a")])).unwrap();
        assert_eq!(f.to_string(), "p(a).");
    }
}
