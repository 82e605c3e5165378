//! End-to-end reductions from the stable model operator to classical
//! first-order reasoning: the complete-loop route for targets with a
//! finite complete loop set, and the small-predicate route for semi-safe
//! targets.

use super::sets::{finite_universe_lf_set, select_preds, spp_axioms};
use super::{
    loop_formula, AtomSet, GenerateError, LoopBase, LoopFormulaSet, NegatedNes, QuantifierEs,
    SupportStrategy,
};
use crate::analysis::{enumerate_loops, is_bounded, is_semi_safe, LoopStatus, Verdict};
use crate::syntax::{
    extensional_transform, is_normal_form, Atom, Formula, Signature, SyntaxError,
};

/// Knobs for the complete-loop reduction. `assume_bounded` accepts targets
/// whose boundedness the analysis cannot confirm; `depth_bound` caps the
/// functional composition depth explored while searching for loops when
/// positive-arity functions are present.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompleteLoopOptions {
    pub assume_bounded: bool,
    pub depth_bound: Option<usize>,
}

/// Conjoining the base with every returned formula captures the stable
/// models of a bounded target in classical logic: for normal-form
/// programs outright, otherwise relative to Clark's equational theory.
/// Fails when boundedness cannot be established or the loop enumeration
/// does not terminate with a complete set.
pub fn complete_loop_reduction(
    base: &LoopBase,
    strategy: &dyn SupportStrategy,
    opts: &CompleteLoopOptions,
) -> Result<LoopFormulaSet, GenerateError> {
    let f = base.to_formula()?;
    gate_bounded(&f, opts.assume_bounded)?;
    let result = enumerate_loops(&f, opts.depth_bound);
    match result.status {
        LoopStatus::Complete => {}
        LoopStatus::CompleteWithCaveat if opts.assume_bounded => {}
        other => {
            return Err(GenerateError::NotBounded {
                detail: format!("loop enumeration ended with status: {other}"),
            })
        }
    }
    let formulas = loop_formulas_for(base, &result.loops, strategy)?;
    Ok(LoopFormulaSet {
        base: f,
        formulas,
        provenance: route_label(base).to_string(),
    })
}

/// The boundedness gate. A definite negative verdict is final; an
/// indefinite one can be overridden by the caller's assumption.
fn gate_bounded(f: &Formula, assume_bounded: bool) -> Result<(), GenerateError> {
    match is_bounded(f) {
        Verdict::Yes => Ok(()),
        Verdict::No => Err(GenerateError::NotBounded {
            detail: "the target has unbounded rule chains".to_string(),
        }),
        Verdict::Unknown(reason) => {
            if assume_bounded {
                Ok(())
            } else {
                Err(GenerateError::NotBounded {
                    detail: format!("{reason}; rerun with boundedness assumed to proceed"),
                })
            }
        }
    }
}

fn route_label(base: &LoopBase) -> &'static str {
    match base {
        LoopBase::Program(p) if is_normal_form(p) => "complete loop set (normal-form route)",
        _ => "complete loop set (requires Clark equality axioms)",
    }
}

fn loop_formulas_for(
    base: &LoopBase,
    loops: &[Vec<Atom>],
    strategy: &dyn SupportStrategy,
) -> Result<Vec<Formula>, GenerateError> {
    let mut formulas = Vec::new();
    for members in loops {
        let y = AtomSet::new(members.iter().cloned())?;
        formulas.push(loop_formula(base, &y, strategy)?);
    }
    Ok(formulas)
}

/// The pieces of the small-predicate reduction. On the semi-safe route
/// `spp` and `general` are both present; `complete` is present whenever
/// the loop enumeration found a finite complete set. At least one route
/// is always populated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiSafeReduction {
    pub base: Formula,
    pub spp: Option<Formula>,
    pub general: Option<LoopFormulaSet>,
    pub complete: Option<LoopFormulaSet>,
}

/// Reduces the stable model operator of a function-free target to
/// classical reasoning, relative to the selected intensional predicates.
/// Semi-safe targets get the small-predicate axioms plus a loop formula
/// family that covers every universe up to the number of object
/// constants; targets with a finite complete loop set get that set; a
/// target with neither is rejected.
pub fn semi_safe_reduction(
    base: &LoopBase,
    preds: Option<&[String]>,
) -> Result<SemiSafeReduction, GenerateError> {
    let f = base.to_formula()?;
    let sig = Signature::of_formula(&f)?;
    if let Some((name, _)) = sig.functions.iter().find(|(_, &a)| a > 0) {
        return Err(SyntaxError::PositiveArityFunction(name.clone()).into());
    }
    let chosen = select_preds(&sig, preds)?;
    let all = chosen.len() == sig.predicates.len();
    // Loops and boundedness are read off the target with the remaining
    // predicates made extensional; the loop formulas themselves stay
    // relative to the original target.
    let loop_source = if all {
        f.clone()
    } else {
        extensional_transform(&f, &chosen)
    };
    let strategy: &dyn SupportStrategy = match base {
        LoopBase::Program(_) => &QuantifierEs,
        LoopBase::Formula(_) => &NegatedNes,
    };
    let result = enumerate_loops(&loop_source, None);
    let intensional: Vec<Vec<Atom>> = result
        .loops
        .iter()
        .filter(|members| {
            members
                .iter()
                .all(|a| chosen.contains(&(a.pred.clone(), a.arity())))
        })
        .cloned()
        .collect();
    let complete = if result.status == LoopStatus::Complete {
        Some(LoopFormulaSet {
            base: f.clone(),
            formulas: loop_formulas_for(base, &intensional, strategy)?,
            provenance: route_label(base).to_string(),
        })
    } else {
        None
    };
    if is_semi_safe(&f, preds)? {
        let spp = spp_axioms(&f, preds)?;
        let n = sig.object_constants().len();
        let general = finite_universe_lf_set(base, n.max(1), strategy, preds)?;
        return Ok(SemiSafeReduction {
            base: f,
            spp: Some(spp),
            general: Some(general),
            complete,
        });
    }
    match complete {
        Some(set) => Ok(SemiSafeReduction {
            base: f,
            spp: None,
            general: None,
            complete: Some(set),
        }),
        None => Err(GenerateError::NotSemiSafe {
            detail: format!(
                "the target is not semi-safe and its loop enumeration ended with \
                 status: {}",
                result.status
            ),
        }),
    }
}
