//! Batch builders over atom sets: singleton loop formulas, small-predicate
//! axioms, and the loop formula family that covers every universe up to a
//! fixed size.

use super::{
    loop_formula, AtomSet, GenerateError, LoopBase, LoopFormulaSet, NegatedNes, SupportStrategy,
};
use crate::syntax::{Atom, Formula, FreshVars, Signature, SyntaxError, Term};

/// Loop formulas of the singleton sets, one per selected predicate, each
/// over fresh pairwise distinct variables. `preds` of `None` selects every
/// predicate of the target, a list is validated and kept in list order.
/// Uses the negated-support construction, so any target is accepted.
pub fn slf(base: &LoopBase, preds: Option<&[String]>) -> Result<LoopFormulaSet, GenerateError> {
    let f = base.to_formula()?;
    let sig = Signature::of_formula(&f)?;
    let chosen = select_preds(&sig, preds)?;
    let mut formulas = Vec::new();
    for (name, arity) in &chosen {
        let mut fresh = FreshVars::avoiding(&f);
        let args: Vec<Term> = (0..*arity).map(|_| Term::var(fresh.next())).collect();
        let y = AtomSet::new([Atom::new(name.clone(), args)])?;
        formulas.push(loop_formula(base, &y, &NegatedNes)?);
    }
    Ok(LoopFormulaSet {
        base: f,
        formulas,
        provenance: "singleton loop formulas".to_string(),
    })
}

/// Small-predicate axioms: every argument of a true tuple of a selected
/// predicate is one of the object constants of `f`. `preds` of `None`
/// selects every predicate of `f`; an empty selection gives `#true`.
/// Positive-arity functions are rejected, as is a nonempty selection when
/// `f` has no object constants.
pub fn spp_axioms(f: &Formula, preds: Option<&[String]>) -> Result<Formula, GenerateError> {
    let sig = Signature::of_formula(f)?;
    if let Some((name, _)) = sig.functions.iter().find(|(_, &a)| a > 0) {
        return Err(SyntaxError::PositiveArityFunction(name.clone()).into());
    }
    let chosen = select_preds(&sig, preds)?;
    if chosen.is_empty() {
        return Ok(Formula::top());
    }
    let consts = sig.object_constants();
    if consts.is_empty() {
        return Err(GenerateError::NoObjectConstants);
    }
    let mut axioms = Vec::new();
    for (name, arity) in &chosen {
        let mut fresh = FreshVars::avoiding(f);
        let vars: Vec<String> = (0..*arity).map(|_| fresh.next()).collect();
        let head = Formula::Atom(Atom::new(
            name.clone(),
            vars.iter().map(Term::var).collect(),
        ));
        let memberships = Formula::conjoin(vars.iter().map(|v| in_constants(v, &consts)));
        let axiom = vars
            .iter()
            .rev()
            .fold(Formula::implies(head, memberships), |acc, v| {
                Formula::forall(v.clone(), acc)
            });
        axioms.push(axiom);
    }
    Ok(Formula::conjoin(axioms))
}

/// `v` equals one of the object constants, as a disjunction in constant
/// order.
fn in_constants(v: &str, consts: &[String]) -> Formula {
    Formula::disjoin(
        consts
            .iter()
            .map(|c| Formula::Eq(Term::var(v), Term::con(c.clone()))),
    )
}

/// Loop formulas sufficient for every universe of size at most `n`: one
/// per nonempty subset `K` of the selected predicates, over the atom set
/// holding `n^r` atoms for each `K`-predicate of arity `r`, all variables
/// pairwise distinct across the set. Subsets are swept in ascending
/// bitmask order over the predicate list.
pub fn finite_universe_lf_set(
    base: &LoopBase,
    n: usize,
    strategy: &dyn SupportStrategy,
    preds: Option<&[String]>,
) -> Result<LoopFormulaSet, GenerateError> {
    const PRED_CAP: usize = 16;
    const ATOM_CAP: usize = 4096;
    if n == 0 {
        return Err(GenerateError::ZeroBound);
    }
    let f = base.to_formula()?;
    let sig = Signature::of_formula(&f)?;
    let chosen = select_preds(&sig, preds)?;
    if chosen.len() > PRED_CAP {
        return Err(GenerateError::TooManyPredicates {
            count: chosen.len(),
            limit: PRED_CAP,
        });
    }
    for (name, arity) in &chosen {
        let count = n.checked_pow(*arity as u32).unwrap_or(usize::MAX);
        if count > ATOM_CAP {
            return Err(GenerateError::AtomSetTooLarge {
                predicate: name.clone(),
                count,
                limit: ATOM_CAP,
            });
        }
    }
    let mut formulas = Vec::new();
    for mask in 1u32..(1u32 << chosen.len()) {
        let mut fresh = FreshVars::avoiding(&f);
        let mut members: Vec<Atom> = Vec::new();
        for (j, (name, arity)) in chosen.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            for _ in 0..n.pow(*arity as u32) {
                let args: Vec<Term> = (0..*arity).map(|_| Term::var(fresh.next())).collect();
                members.push(Atom::new(name.clone(), args));
            }
        }
        let y = AtomSet::new(members)?;
        formulas.push(loop_formula(base, &y, strategy)?);
    }
    Ok(LoopFormulaSet {
        base: f,
        formulas,
        provenance: format!("finite-universe loop formulas (n = {n})"),
    })
}

/// Resolves a predicate selection against the signature. `None` takes
/// every predicate in signature order; a list is validated name by name
/// and deduplicated in list order.
pub(super) fn select_preds(
    sig: &Signature,
    preds: Option<&[String]>,
) -> Result<Vec<(String, usize)>, GenerateError> {
    match preds {
        None => Ok(sig
            .predicates
            .iter()
            .map(|(n, &a)| (n.clone(), a))
            .collect()),
        Some(names) => {
            let mut out: Vec<(String, usize)> = Vec::new();
            for n in names {
                match sig.predicates.get(n) {
                    Some(&a) => {
                        let key = (n.clone(), a);
                        if !out.contains(&key) {
                            out.push(key);
                        }
                    }
                    None => return Err(GenerateError::UnknownPredicate(n.clone())),
                }
            }
            Ok(out)
        }
    }
}
