//! Support-formula generators. A support strategy turns a set of atoms and
//! a target (program or formula) into the claim that the set receives
//! support from outside itself; on top of the strategies sit the per-set
//! loop formula, the batch builders, and the reductions to first-order
//! theories.

mod nes;
mod pipeline;
mod qes;
mod sets;
mod support;

pub use nes::{f_sub_y, nes, NegatedNes};
pub use pipeline::{
    complete_loop_reduction, semi_safe_reduction, CompleteLoopOptions, SemiSafeReduction,
};
pub use qes::{qes, QuantifierEs};
pub use sets::{finite_universe_lf_set, slf, spp_axioms};
pub use support::{es_disjunctive, es_nondisjunctive, EsDisjunctive, EsNondisjunctive};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{rectify, Atom, Formula, FreshVars, Program, Rule, SyntaxError, Term};

/// Failure modes of the generators and reductions.
#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("atom set must be nonempty")]
    EmptyAtomSet,
    #[error("strategy `{strategy}` needs rule structure; give it a program")]
    ProgramRequired { strategy: &'static str },
    #[error("small-predicate axioms need at least one object constant")]
    NoObjectConstants,
    #[error("not semi-safe: {detail}")]
    NotSemiSafe { detail: String },
    #[error("no finite complete loop set: {detail}")]
    NotBounded { detail: String },
    #[error("grounding set for `{predicate}` holds {count} atoms, over the cap of {limit}")]
    AtomSetTooLarge {
        predicate: String,
        count: usize,
        limit: usize,
    },
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("predicate `{0}` does not occur in the target")]
    UnknownPredicate(String),
    #[error("universe bound must be positive")]
    ZeroBound,
    #[error("{count} predicates exceed the {limit}-predicate cap of the finite-universe scheme")]
    TooManyPredicates { count: usize, limit: usize },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Nonempty, deduplicated set of atoms measured for external support.
/// Member order is first-occurrence order of the constructing iterator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSet {
    atoms: Vec<Atom>,
}

impl AtomSet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Result<AtomSet, GenerateError> {
        let mut dedup: Vec<Atom> = Vec::new();
        for a in atoms {
            if !dedup.contains(&a) {
                dedup.push(a);
            }
        }
        if dedup.is_empty() {
            return Err(GenerateError::EmptyAtomSet);
        }
        Ok(AtomSet { atoms: dedup })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    /// Members matching `pred` and `arity`, in set order.
    pub fn with_pred(&self, pred: &str, arity: usize) -> Vec<&Atom> {
        self.atoms
            .iter()
            .filter(|a| a.pred == pred && a.arity() == arity)
            .collect()
    }

    /// Variables of the member atoms, first occurrence first.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for a in &self.atoms {
            for t in &a.args {
                t.collect_vars(&mut out);
            }
        }
        out
    }

    /// Predicate name and arity of every member, first occurrence first.
    pub fn predicates(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for a in &self.atoms {
            let key = (a.pred.clone(), a.arity());
            if !out.contains(&key) {
                out.push(key);
            }
        }
        out
    }

    /// Terms occurring in the member atoms, subterms included, first
    /// occurrence first.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for a in &self.atoms {
            for t in &a.args {
                t.subterms(&mut out);
            }
        }
        out
    }

    /// The conjunction of the member atoms, in set order.
    pub fn conjunction(&self) -> Formula {
        Formula::conjoin(self.atoms.iter().cloned().map(Formula::Atom))
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Target of a support computation: a program when the strategy consumes
/// rule structure, a bare formula for the syntactic strategies.
#[derive(Debug, Clone, Copy)]
pub enum LoopBase<'a> {
    Formula(&'a Formula),
    Program(&'a Program),
}

impl<'a> LoopBase<'a> {
    /// The target as one formula; a program contributes its
    /// FOL-representation.
    pub fn to_formula(&self) -> Result<Formula, SyntaxError> {
        match self {
            LoopBase::Formula(f) => Ok((*f).clone()),
            LoopBase::Program(p) => p.fol_representation(),
        }
    }

    pub(crate) fn program(&self, strategy: &'static str) -> Result<&'a Program, GenerateError> {
        match self {
            LoopBase::Program(p) => Ok(p),
            LoopBase::Formula(_) => Err(GenerateError::ProgramRequired { strategy }),
        }
    }
}

/// One construction of external support. The variables of the atom set
/// stay free in the result; [`loop_formula`] closes over them.
pub trait SupportStrategy: Sync {
    /// Registry key, also the name that selects the strategy on the command
    /// line.
    fn name(&self) -> &'static str;

    fn support(&self, base: &LoopBase, y: &AtomSet) -> Result<Formula, GenerateError>;
}

static REGISTRY: [&'static dyn SupportStrategy; 4] = [
    &EsNondisjunctive,
    &EsDisjunctive,
    &NegatedNes,
    &QuantifierEs,
];

/// Registered strategies, in registration order.
pub fn strategies() -> &'static [&'static dyn SupportStrategy] {
    &REGISTRY
}

/// Strategy lookup by registry key.
pub fn strategy_named(name: &str) -> Result<&'static dyn SupportStrategy, GenerateError> {
    REGISTRY
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| GenerateError::UnknownStrategy(name.to_string()))
}

/// Loop formula of `y` against `base`: the universal closure of "the
/// conjunction of `y` implies external support of `y`".
pub fn loop_formula(
    base: &LoopBase,
    y: &AtomSet,
    strategy: &dyn SupportStrategy,
) -> Result<Formula, GenerateError> {
    let support = strategy.support(base, y)?;
    Ok(Formula::implies(y.conjunction(), support).forall_closure())
}

/// A batch of loop formulas, with the base they were computed against and
/// a label naming the route that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopFormulaSet {
    pub base: Formula,
    pub formulas: Vec<Formula>,
    pub provenance: String,
}

/// Componentwise tuple distance: the negation of the conjunction of the
/// componentwise equalities. Tuples must have equal length; empty tuples
/// give the negated empty conjunction.
pub(crate) fn tuple_neq(left: &[Term], right: &[Term]) -> Formula {
    debug_assert_eq!(left.len(), right.len());
    Formula::not_(Formula::conjoin(
        left.iter()
            .zip(right)
            .map(|(l, r)| Formula::Eq(l.clone(), r.clone())),
    ))
}

/// Renames every occurrence of a mapped name, free and bound alike. Sound
/// only when no target name can be captured, so targets must be fresh for
/// the formula.
pub(crate) fn rename_names(f: &Formula, map: &BTreeMap<String, String>) -> Formula {
    fn term(t: &Term, map: &BTreeMap<String, String>) -> Term {
        match t {
            Term::Var(v) => match map.get(v) {
                Some(n) => Term::Var(n.clone()),
                None => t.clone(),
            },
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| term(a, map)).collect())
            }
        }
    }
    fn go(f: &Formula, map: &BTreeMap<String, String>) -> Formula {
        match f {
            Formula::Atom(a) => Formula::Atom(Atom::new(
                a.pred.clone(),
                a.args.iter().map(|t| term(t, map)).collect(),
            )),
            Formula::Eq(l, r) => Formula::Eq(term(l, map), term(r, map)),
            Formula::Bottom => Formula::Bottom,
            Formula::And(a, b) => Formula::and(go(a, map), go(b, map)),
            Formula::Or(a, b) => Formula::or(go(a, map), go(b, map)),
            Formula::Implies(a, b) => Formula::implies(go(a, map), go(b, map)),
            Formula::Forall(v, g) => {
                Formula::forall(map.get(v).cloned().unwrap_or_else(|| v.clone()), go(g, map))
            }
            Formula::Exists(v, g) => {
                Formula::exists(map.get(v).cloned().unwrap_or_else(|| v.clone()), go(g, map))
            }
        }
    }
    go(f, map)
}

fn binder_names(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Atom(_) | Formula::Eq(..) | Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            binder_names(a, out);
            binder_names(b, out);
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
            binder_names(g, out);
        }
    }
}

/// Rectifies `f` and renames the binders whose names collide with a
/// variable of `y`. Free variables keep their names, so a free occurrence
/// of a set variable in `f` keeps referring to that set variable.
pub(crate) fn rename_bound_apart(f: &Formula, y: &AtomSet) -> Formula {
    let f = rectify(f);
    let y_vars = y.vars();
    let mut binders = Vec::new();
    binder_names(&f, &mut binders);
    let clash: Vec<String> = binders
        .into_iter()
        .filter(|b| y_vars.iter().any(|v| v == b))
        .collect();
    if clash.is_empty() {
        return f;
    }
    let mut fresh = FreshVars::avoiding(&f);
    for v in &y_vars {
        fresh.reserve(v.clone());
    }
    let map: BTreeMap<String, String> = clash.into_iter().map(|v| (v, fresh.next())).collect();
    rename_names(&f, &map)
}

/// Rectifies a rule, read as `body -> head`, and renames every rule
/// variable colliding with a variable of `y`, free and bound alike.
/// Returns the renamed body and head.
pub(crate) fn rename_rule_apart(rule: &Rule, y: &AtomSet) -> (Formula, Formula) {
    let imp = rectify(&Formula::implies(rule.body.clone(), rule.head.clone()));
    let y_vars = y.vars();
    let clash: Vec<String> = imp
        .all_vars()
        .into_iter()
        .filter(|v| y_vars.iter().any(|u| u == v))
        .collect();
    let imp = if clash.is_empty() {
        imp
    } else {
        let mut fresh = FreshVars::avoiding(&imp);
        for v in &y_vars {
            fresh.reserve(v.clone());
        }
        let map: BTreeMap<String, String> = clash.into_iter().map(|v| (v, fresh.next())).collect();
        rename_names(&imp, &map)
    };
    match imp {
        Formula::Implies(body, head) => (*body, *head),
        _ => unreachable!("rectification keeps the implication shape"),
    }
}
