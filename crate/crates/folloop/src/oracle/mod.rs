//! Finite-model oracle: interpretations over named finite universes,
//! Tarskian evaluation, stable-model checking and enumeration, and the
//! dependency machinery evaluated relative to an interpretation.

mod entail;
mod eval;
mod graph;
mod sm;

pub use entail::{check_entailment_finite, check_entailment_finite_with, EntailmentVerdict};
pub use eval::{eval, eval_star, eval_with_env, nses_eval, SecondOrderAssignment};
pub use graph::{
    dependency_edge_eval, loop_predicate_eval, loops_and_unbounded_wrt, wrt_graph, GroundAtom,
    LoopPredicateEval, WrtAnalysis, WrtGraph,
};
pub use sm::{
    check_sm, check_sm_with, enumerate_stable_models, enumerate_stable_models_with,
    find_interpretation, herbrand_interpretations, EnumOptions, SmOptions,
};

use crate::syntax::{Signature, Term};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Total function table over universe element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FnTable {
    pub arity: usize,
    pub map: BTreeMap<Vec<usize>, usize>,
}

/// Predicate extension as a set of element-index tuples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PredTable {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

/// A finite interpretation. Universe elements are named; the name of an
/// element doubles as an object name, usable as an extra object constant that
/// denotes that element, which is how formulas talk about arbitrary elements
/// directly. A predicate absent from `pred_tables` has an empty extension;
/// constants and functions must be present to evaluate.
///
/// The derived ordering is the canonical one used to sort enumeration output.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interpretation {
    pub universe: Vec<String>,
    pub const_map: BTreeMap<String, usize>,
    pub fn_tables: BTreeMap<String, FnTable>,
    pub pred_tables: BTreeMap<String, PredTable>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("universe must not be empty")]
    EmptyUniverse,
    #[error("element `{0}` is not declared in the universe")]
    UndeclaredElement(String),
    #[error("function `{name}` is missing a value for ({tuple})")]
    NonTotalFunction { name: String, tuple: String },
    #[error("`{name}` used with arity {used}, declared with {declared}")]
    ArityMismatch {
        name: String,
        declared: usize,
        used: usize,
    },
    #[error("object constant `{0}` has no denotation")]
    MissingConstant(String),
    #[error("function constant `{0}` has no table")]
    MissingFunction(String),
    #[error("variable `{0}` is unbound")]
    UnboundVariable(String),
    #[error("search space of {size} candidates exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },
    #[error("{0} requires a signature without positive-arity function constants")]
    FunctionsUnsupported(&'static str),
    #[error(transparent)]
    Syntax(#[from] crate::syntax::SyntaxError),
}

impl Interpretation {
    /// An interpretation with the given universe and everything else empty.
    pub fn new(universe: Vec<String>) -> Interpretation {
        Interpretation {
            universe,
            const_map: BTreeMap::new(),
            fn_tables: BTreeMap::new(),
            pred_tables: BTreeMap::new(),
        }
    }

    /// A universe of `n` elements named e0..e(n-1).
    pub fn with_default_universe(n: usize) -> Interpretation {
        Interpretation::new((0..n).map(|i| format!("e{i}")).collect())
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|e| e == name)
    }

    pub fn set_const(&mut self, name: impl Into<String>, element: usize) {
        self.const_map.insert(name.into(), element);
    }

    pub fn set_pred(&mut self, name: impl Into<String>, arity: usize, tuples: BTreeSet<Vec<usize>>) {
        self.pred_tables.insert(name.into(), PredTable { arity, tuples });
    }

    pub fn pred_extension(&self, name: &str) -> BTreeSet<Vec<usize>> {
        self.pred_tables
            .get(name)
            .map(|t| t.tuples.clone())
            .unwrap_or_default()
    }

    pub fn holds(&self, name: &str, tuple: &[usize]) -> bool {
        self.pred_tables
            .get(name)
            .map(|t| t.tuples.contains(tuple))
            .unwrap_or(false)
    }

    /// Denotation of a ground term; element names act as object names.
    pub fn eval_ground_term(&self, t: &Term) -> Result<usize, OracleError> {
        self.eval_term(t, &[])
    }

    pub(crate) fn eval_term(
        &self,
        t: &Term,
        env: &[(String, usize)],
    ) -> Result<usize, OracleError> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(name, _)| name == v)
                .map(|(_, e)| *e)
                .ok_or_else(|| OracleError::UnboundVariable(v.clone())),
            Term::App(name, args) if args.is_empty() => self
                .const_map
                .get(name)
                .copied()
                .or_else(|| self.element_index(name))
                .ok_or_else(|| OracleError::MissingConstant(name.clone())),
            Term::App(name, args) => {
                let table = self
                    .fn_tables
                    .get(name)
                    .ok_or_else(|| OracleError::MissingFunction(name.clone()))?;
                if table.arity != args.len() {
                    return Err(OracleError::ArityMismatch {
                        name: name.clone(),
                        declared: table.arity,
                        used: args.len(),
                    });
                }
                let mut tuple = Vec::with_capacity(args.len());
                for a in args {
                    tuple.push(self.eval_term(a, env)?);
                }
                table
                    .map
                    .get(&tuple)
                    .copied()
                    .ok_or_else(|| OracleError::NonTotalFunction {
                        name: name.clone(),
                        tuple: self.tuple_names(&tuple).join(", "),
                    })
            }
        }
    }

    pub fn tuple_names(&self, tuple: &[usize]) -> Vec<String> {
        tuple.iter().map(|&i| self.universe[i].clone()).collect()
    }

    /// Structural well-formedness: nonempty universe, in-range constants,
    /// total in-range function tables, in-range predicate tuples.
    pub fn validate(&self) -> Result<(), OracleError> {
        let n = self.universe.len();
        if n == 0 {
            return Err(OracleError::EmptyUniverse);
        }
        for (name, &e) in &self.const_map {
            if e >= n {
                return Err(OracleError::UndeclaredElement(format!("{name} -> #{e}")));
            }
        }
        for (name, table) in &self.fn_tables {
            let mut expected: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut tuple = vec![0usize; table.arity];
            loop {
                expected.insert(tuple.clone());
                if !increment(&mut tuple, n) {
                    break;
                }
            }
            for t in &expected {
                match table.map.get(t) {
                    None => {
                        return Err(OracleError::NonTotalFunction {
                            name: name.clone(),
                            tuple: self.tuple_names(t).join(", "),
                        })
                    }
                    Some(&out) if out >= n => {
                        return Err(OracleError::UndeclaredElement(format!("{name} -> #{out}")))
                    }
                    Some(_) => {}
                }
            }
            for t in table.map.keys() {
                if t.len() != table.arity || t.iter().any(|&e| e >= n) {
                    return Err(OracleError::ArityMismatch {
                        name: name.clone(),
                        declared: table.arity,
                        used: t.len(),
                    });
                }
            }
        }
        for (name, table) in &self.pred_tables {
            for t in &table.tuples {
                if t.len() != table.arity {
                    return Err(OracleError::ArityMismatch {
                        name: name.clone(),
                        declared: table.arity,
                        used: t.len(),
                    });
                }
                if t.iter().any(|&e| e >= n) {
                    return Err(OracleError::UndeclaredElement(format!(
                        "{name}({})",
                        t.iter()
                            .map(|e| format!("#{e}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether the interpretation covers every constant of the signature.
    pub fn covers(&self, sig: &Signature) -> Result<(), OracleError> {
        for (name, &arity) in &sig.functions {
            if arity == 0 {
                if !self.const_map.contains_key(name) && self.element_index(name).is_none() {
                    return Err(OracleError::MissingConstant(name.clone()));
                }
            } else {
                match self.fn_tables.get(name) {
                    None => return Err(OracleError::MissingFunction(name.clone())),
                    Some(t) if t.arity != arity => {
                        return Err(OracleError::ArityMismatch {
                            name: name.clone(),
                            declared: t.arity,
                            used: arity,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }
}

/// Clark's equational theory on a finite interpretation: all object constants
/// denote pairwise distinct elements and no positive-arity function constant
/// is interpreted. The second condition is forced: the acyclicity axioms of
/// the theory are unsatisfiable over a finite universe containing any
/// positive-arity function.
pub fn cet_check(i: &Interpretation) -> bool {
    let mut seen = BTreeSet::new();
    i.fn_tables.is_empty() && i.const_map.values().all(|&e| seen.insert(e))
}

/// Advances a mixed-radix counter over `n` values per digit; false on wrap.
pub(crate) fn increment(tuple: &mut [usize], n: usize) -> bool {
    for d in tuple.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

/// All tuples of the given arity over a universe of size `n`, in
/// lexicographic order.
pub(crate) fn all_tuples(arity: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut tuple = vec![0usize; arity];
    loop {
        out.push(tuple.clone());
        if !increment(&mut tuple, n) {
            return out;
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {}.", self.universe.join(" "))?;
        for (name, &e) in &self.const_map {
            writeln!(f, "const {name} = {}.", self.universe[e])?;
        }
        for (name, table) in &self.fn_tables {
            for (tuple, &out) in &table.map {
                writeln!(
                    f,
                    "fn {name}({}) = {}.",
                    self.tuple_names(tuple).join(", "),
                    self.universe[out]
                )?;
            }
        }
        for (name, table) in &self.pred_tables {
            let tuples: Vec<String> = table
                .tuples
                .iter()
                .map(|t| format!("({})", self.tuple_names(t).join(", ")))
                .collect();
            if tuples.is_empty() {
                writeln!(f, "pred {name} = {{ }}.")?;
            } else {
                writeln!(f, "pred {name} = {{ {} }}.", tuples.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_evaluation_uses_constants_and_element_names() {
        let mut i = Interpretation::with_default_universe(2);
        i.set_const("a", 0);
        assert_eq!(i.eval_ground_term(&Term::con("a")), Ok(0));
        assert_eq!(i.eval_ground_term(&Term::con("e1")), Ok(1));
        assert!(matches!(
            i.eval_ground_term(&Term::con("b")),
            Err(OracleError::MissingConstant(_))
        ));
    }

    #[test]
    fn cet_requires_distinct_constants_and_no_functions() {
        let mut i = Interpretation::with_default_universe(2);
        i.set_const("a", 0);
        i.set_const("b", 1);
        assert!(cet_check(&i));
        i.set_const("b", 0);
        assert!(!cet_check(&i));

        let mut j = Interpretation::with_default_universe(1);
        j.set_const("a", 0);
        j.set_const("b", 0);
        assert!(!cet_check(&j));

        let mut k = Interpretation::with_default_universe(2);
        k.set_const("a", 0);
        k.set_const("b", 1);
        k.fn_tables.insert(
            "f".to_string(),
            FnTable {
                arity: 1,
                map: [(vec![0], 1), (vec![1], 0)].into_iter().collect(),
            },
        );
        assert!(!cet_check(&k));
    }

    #[test]
    fn validation_enforces_totality() {
        let mut i = Interpretation::with_default_universe(2);
        i.fn_tables.insert(
            "f".to_string(),
            FnTable {
                arity: 1,
                map: [(vec![0], 1)].into_iter().collect(),
            },
        );
        assert!(matches!(
            i.validate(),
            Err(OracleError::NonTotalFunction { .. })
        ));
        i.fn_tables.get_mut("f").unwrap().map.insert(vec![1], 0);
        assert!(i.validate().is_ok());
        assert!(Interpretation::new(Vec::new()).validate().is_err());
    }

    #[test]
    fn display_lists_tables_deterministically() {
        let mut i = Interpretation::with_default_universe(2);
        i.set_const("a", 0);
        i.set_pred("p", 1, [vec![0], vec![1]].into_iter().collect());
        i.set_pred("q", 0, BTreeSet::new());
        let text = i.to_string();
        assert_eq!(
            text,
            "universe e0 e1.\nconst a = e0.\npred p = { (e0), (e1) }.\npred q = { }.\n"
        );
    }
}
