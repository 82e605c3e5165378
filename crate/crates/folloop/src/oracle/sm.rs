//! Stable-model checking and enumeration. The checker sweeps every proper
//! sub-assignment of the intensional extensions and asks the star
//! translation to refute stability; the enumerator builds candidate
//! interpretations stage by stage and filters them through the checker.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{strictly_positive_atoms, Formula, Signature};

use super::eval::{eval, eval_star, nses_eval, SecondOrderAssignment};
use super::{all_tuples, increment, Interpretation, OracleError};

/// Cost cap for one stability check, counted in evaluated sub-assignments.
#[derive(Debug, Clone, Copy)]
pub struct SmOptions {
    pub budget: u64,
}

impl Default for SmOptions {
    fn default() -> SmOptions {
        SmOptions { budget: 1 << 22 }
    }
}

/// Options for model enumeration. `prune` turns on the sound shortcuts:
/// predicates without a strictly positive occurrence are pinned to the
/// empty extension, and candidate models lose their unsupported atoms
/// early through a per-atom support probe. With `prune` off the search is
/// the plain product of power sets, which is the reference route for
/// agreement tests.
#[derive(Debug, Clone, Copy, Default)]
pub struct EnumOptions {
    pub prune: bool,
    pub sm: SmOptions,
}

impl EnumOptions {
    pub fn pruned() -> EnumOptions {
        EnumOptions {
            prune: true,
            sm: SmOptions::default(),
        }
    }
}

/// Whether `i` is a stable model of `f` with the listed predicates treated
/// as intensional, by exhaustive refutation: `i` must satisfy `f`, and no
/// proper sub-assignment of the intensional extensions may satisfy the star
/// translation.
pub fn check_sm(f: &Formula, i: &Interpretation, p: &[String]) -> Result<bool, OracleError> {
    check_sm_with(f, i, p, &SmOptions::default())
}

pub fn check_sm_with(
    f: &Formula,
    i: &Interpretation,
    p: &[String],
    opts: &SmOptions,
) -> Result<bool, OracleError> {
    let preds: Vec<String> = p.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if !eval(f, i)? {
        return Ok(false);
    }
    let mut droppable: Vec<(String, Vec<usize>)> = Vec::new();
    for pred in &preds {
        for tuple in i.pred_extension(pred) {
            droppable.push((pred.clone(), tuple));
        }
    }
    let k = droppable.len();
    if k == 0 {
        return Ok(true);
    }
    if k >= 63 {
        return Err(OracleError::BudgetExceeded {
            size: format!("2^{k} sub-assignments"),
            budget: opts.budget,
        });
    }
    let full = (1u64 << k) - 1;
    let mut evals = 0u64;
    for mask in 0..full {
        evals += 1;
        if evals > opts.budget {
            return Err(OracleError::BudgetExceeded {
                size: format!("2^{k} sub-assignments"),
                budget: opts.budget,
            });
        }
        let mut u = SecondOrderAssignment::empty_over(&preds);
        for (j, (pred, tuple)) in droppable.iter().enumerate() {
            if mask & (1 << j) != 0 {
                u.insert(pred.clone(), tuple.clone());
            }
        }
        if eval_star(f, i, &u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Enumerates the stable models of `f` over one universe shape with the
/// default options (pruning on).
pub fn enumerate_stable_models(
    f: &Formula,
    p: &[String],
    universe_size: usize,
    herbrand: bool,
) -> Result<Vec<Interpretation>, OracleError> {
    enumerate_stable_models_with(f, p, universe_size, herbrand, &EnumOptions::pruned())
}

/// Enumerates the stable models of `f`. In Herbrand mode the universe is
/// the object constants of `f` naming themselves, and `universe_size` is
/// ignored; otherwise candidates range over all constant maps, total
/// function tables, and predicate extensions on a universe of
/// `universe_size` anonymous elements. Either way every candidate that
/// satisfies `f` conjunct by conjunct goes through `check_sm`, and the
/// survivors come back in canonical order.
pub fn enumerate_stable_models_with(
    f: &Formula,
    p: &[String],
    universe_size: usize,
    herbrand: bool,
    opts: &EnumOptions,
) -> Result<Vec<Interpretation>, OracleError> {
    let sig = Signature::of_formula(f).expect("arity-consistent input");
    let preds: Vec<(String, usize, Vec<Vec<usize>>)>;
    let scaffolds: Vec<Interpretation>;
    if herbrand {
        let consts = zero_arity_constants(&sig);
        if sig.functions.iter().any(|(_, &a)| a > 0) {
            return Err(OracleError::FunctionsUnsupported("herbrand enumeration"));
        }
        if consts.is_empty() {
            return Err(OracleError::EmptyUniverse);
        }
        let n = consts.len();
        let mut base = Interpretation::new(consts.clone());
        for (e, name) in consts.iter().enumerate() {
            base.set_const(name.clone(), e);
        }
        preds = atom_pool(&sig, n)?;
        scaffolds = vec![base];
    } else {
        if universe_size == 0 {
            return Err(OracleError::EmptyUniverse);
        }
        preds = atom_pool(&sig, universe_size)?;
        scaffolds = non_herbrand_scaffolds(&sig, universe_size)?;
    }

    let intensional: BTreeSet<String> = p.iter().cloned().collect();
    let sp_preds: BTreeSet<String> = strictly_positive_atoms(f)
        .into_iter()
        .map(|a| a.pred)
        .collect();
    let defless: BTreeSet<String> = intensional
        .iter()
        .filter(|q| !sp_preds.contains(*q))
        .cloned()
        .collect();

    let mut conjuncts = Vec::new();
    flatten_and(f, &mut conjuncts);
    let stage_of: BTreeMap<&str, usize> = preds
        .iter()
        .enumerate()
        .map(|(j, (name, _, _))| (name.as_str(), j))
        .collect();
    let mut pre_conjuncts: Vec<&Formula> = Vec::new();
    let mut by_stage: Vec<Vec<&Formula>> = vec![Vec::new(); preds.len()];
    for c in conjuncts {
        let csig = Signature::of_formula(c).expect("arity-consistent input");
        match csig.predicates.iter().map(|(q, _)| stage_of[q.as_str()]).max() {
            Some(stage) => by_stage[stage].push(c),
            None => pre_conjuncts.push(c),
        }
    }

    let p_sorted: Vec<String> = intensional.iter().cloned().collect();
    let mut ctx = EnumCtx {
        f,
        p: p_sorted,
        preds,
        by_stage,
        defless,
        opts: *opts,
        count: 0,
        out: Vec::new(),
    };
    'scaffolds: for scaffold in scaffolds {
        ctx.tick()?;
        for &c in &pre_conjuncts {
            if !eval(c, &scaffold)? {
                continue 'scaffolds;
            }
        }
        let mut candidate = scaffold;
        fill_stage(&mut ctx, 0, &mut candidate)?;
    }
    ctx.out.sort();
    Ok(ctx.out)
}

struct EnumCtx<'a> {
    f: &'a Formula,
    p: Vec<String>,
    preds: Vec<(String, usize, Vec<Vec<usize>>)>,
    by_stage: Vec<Vec<&'a Formula>>,
    defless: BTreeSet<String>,
    opts: EnumOptions,
    count: u64,
    out: Vec<Interpretation>,
}

impl EnumCtx<'_> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.count += 1;
        if self.count > self.opts.sm.budget {
            return Err(OracleError::BudgetExceeded {
                size: "candidate interpretations".to_string(),
                budget: self.opts.sm.budget,
            });
        }
        Ok(())
    }
}

fn fill_stage(
    ctx: &mut EnumCtx,
    stage: usize,
    candidate: &mut Interpretation,
) -> Result<(), OracleError> {
    if stage == ctx.preds.len() {
        ctx.tick()?;
        if ctx.opts.prune && !supported_atomwise(ctx.f, candidate, &ctx.p)? {
            return Ok(());
        }
        if check_sm_with(ctx.f, candidate, &ctx.p, &ctx.opts.sm)? {
            ctx.out.push(candidate.clone());
        }
        return Ok(());
    }
    let (name, arity, tuples) = ctx.preds[stage].clone();
    let forced_empty = ctx.opts.prune && ctx.defless.contains(&name);
    for mask in 0..(1u64 << tuples.len()) {
        ctx.tick()?;
        let ext: BTreeSet<Vec<usize>> = tuples
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, t)| t.clone())
            .collect();
        candidate.set_pred(name.clone(), arity, ext);
        let mut ok = true;
        for c in ctx.by_stage[stage].clone() {
            if !eval(c, candidate)? {
                ok = false;
                break;
            }
        }
        if ok {
            fill_stage(ctx, stage + 1, candidate)?;
        }
        if forced_empty {
            break;
        }
    }
    candidate.pred_tables.remove(&name);
    Ok(())
}

/// Necessary condition probed atom by atom: a stable model may not satisfy
/// the no-external-support condition for any nonempty sub-assignment, and
/// in particular not for the singleton of any single intensional atom it
/// contains.
fn supported_atomwise(
    f: &Formula,
    i: &Interpretation,
    p: &[String],
) -> Result<bool, OracleError> {
    for pred in p {
        for tuple in i.pred_extension(pred) {
            let mut u = SecondOrderAssignment::empty_over(p);
            u.insert(pred.clone(), tuple);
            if nses_eval(f, i, &u)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All Herbrand interpretations of a signature: the constants name
/// themselves and every subset of the ground atoms is one interpretation.
pub fn herbrand_interpretations(sig: &Signature) -> Result<Vec<Interpretation>, OracleError> {
    if sig.functions.iter().any(|(_, &a)| a > 0) {
        return Err(OracleError::FunctionsUnsupported("herbrand enumeration"));
    }
    let consts = zero_arity_constants(sig);
    if consts.is_empty() {
        return Err(OracleError::EmptyUniverse);
    }
    let n = consts.len();
    let pool = atom_pool(sig, n)?;
    let atoms: Vec<(String, usize, Vec<usize>)> = pool
        .iter()
        .flat_map(|(name, arity, tuples)| {
            tuples.iter().map(move |t| (name.clone(), *arity, t.clone()))
        })
        .collect();
    if atoms.len() > 16 {
        return Err(OracleError::BudgetExceeded {
            size: format!("2^{} interpretations", atoms.len()),
            budget: 1 << 16,
        });
    }
    let mut base = Interpretation::new(consts.clone());
    for (e, name) in consts.iter().enumerate() {
        base.set_const(name.clone(), e);
    }
    for (name, arity, _) in &pool {
        base.set_pred(name.clone(), *arity, BTreeSet::new());
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << atoms.len()) {
        let mut i = base.clone();
        for (j, (name, _, tuple)) in atoms.iter().enumerate() {
            if mask & (1 << j) != 0 {
                i.pred_tables.get_mut(name).unwrap().tuples.insert(tuple.clone());
            }
        }
        out.push(i);
    }
    out.sort();
    Ok(out)
}

/// First interpretation over `universe_size` anonymous elements that
/// satisfies `pred`, sweeping constant maps, function tables, and predicate
/// extensions in canonical order. `Ok(None)` means the sweep was exhaustive
/// and nothing matched.
pub fn find_interpretation<P>(
    sig: &Signature,
    universe_size: usize,
    mut pred: P,
) -> Result<Option<Interpretation>, OracleError>
where
    P: FnMut(&Interpretation) -> Result<bool, OracleError>,
{
    if universe_size == 0 {
        return Err(OracleError::EmptyUniverse);
    }
    let pool = atom_pool(sig, universe_size)?;
    let scaffolds = non_herbrand_scaffolds(sig, universe_size)?;
    let budget = 1u64 << 22;
    let mut count = 0u64;
    for scaffold in scaffolds {
        let mut masks: Vec<u64> = vec![0; pool.len()];
        loop {
            count += 1;
            if count > budget {
                return Err(OracleError::BudgetExceeded {
                    size: "candidate interpretations".to_string(),
                    budget,
                });
            }
            let mut candidate = scaffold.clone();
            for (mask, (name, arity, tuples)) in masks.iter().zip(&pool) {
                let ext: BTreeSet<Vec<usize>> = tuples
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask & (1 << j) != 0)
                    .map(|(_, t)| t.clone())
                    .collect();
                candidate.set_pred(name.clone(), *arity, ext);
            }
            if pred(&candidate)? {
                return Ok(Some(candidate));
            }
            let mut bumped = false;
            for (mask, (_, _, tuples)) in masks.iter_mut().zip(pool.iter()).rev() {
                let full = (1u64 << tuples.len()) - 1;
                if *mask < full {
                    *mask += 1;
                    bumped = true;
                    break;
                }
                *mask = 0;
            }
            if !bumped {
                break;
            }
        }
    }
    Ok(None)
}

fn zero_arity_constants(sig: &Signature) -> Vec<String> {
    sig.functions
        .iter()
        .filter(|(_, &a)| a == 0)
        .map(|(name, _)| name.clone())
        .collect()
}

/// Predicate atom universe: per predicate, every element tuple. Guarded so
/// the per-predicate subset sweep stays inside a u64 mask.
fn atom_pool(
    sig: &Signature,
    n: usize,
) -> Result<Vec<(String, usize, Vec<Vec<usize>>)>, OracleError> {
    let mut out = Vec::new();
    for (name, &arity) in &sig.predicates {
        let tuples = all_tuples(arity, n);
        if tuples.len() > 20 {
            return Err(OracleError::BudgetExceeded {
                size: format!("2^{} extensions of `{name}`", tuples.len()),
                budget: 1 << 20,
            });
        }
        out.push((name.clone(), arity, tuples));
    }
    Ok(out)
}

/// All universe/constant/function shapes of the signature over `n` unnamed
/// elements, in lexicographic order.
fn non_herbrand_scaffolds(
    sig: &Signature,
    n: usize,
) -> Result<Vec<Interpretation>, OracleError> {
    let consts = zero_arity_constants(sig);
    let fns: Vec<(String, usize, Vec<Vec<usize>>)> = sig
        .functions
        .iter()
        .filter(|(_, &a)| a > 0)
        .map(|(name, &a)| (name.clone(), a, all_tuples(a, n)))
        .collect();
    for (name, _, inputs) in &fns {
        if inputs.len() > 12 {
            return Err(OracleError::BudgetExceeded {
                size: format!("{n}^{} tables of `{name}`", inputs.len()),
                budget: 1 << 12,
            });
        }
    }
    let base = Interpretation::with_default_universe(n);
    let mut out = Vec::new();
    for const_choice in all_tuples(consts.len(), n) {
        let mut with_consts = base.clone();
        for (name, &e) in consts.iter().zip(&const_choice) {
            with_consts.set_const(name.clone(), e);
        }
        // Mixed-radix sweep over one output column per function.
        let mut columns: Vec<Vec<usize>> = fns.iter().map(|(_, _, inp)| vec![0; inp.len()]).collect();
        loop {
            let mut scaffold = with_consts.clone();
            for ((name, arity, inputs), column) in fns.iter().zip(&columns) {
                let map: BTreeMap<Vec<usize>, usize> = inputs
                    .iter()
                    .cloned()
                    .zip(column.iter().copied())
                    .collect();
                scaffold.fn_tables.insert(
                    name.clone(),
                    super::FnTable { arity: *arity, map },
                );
            }
            out.push(scaffold);
            let mut bumped = false;
            for column in columns.iter_mut().rev() {
                if increment(column, n) {
                    bumped = true;
                    break;
                }
            }
            if !bumped {
                break;
            }
        }
    }
    Ok(out)
}

fn flatten_and<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    if let Formula::And(a, b) = f {
        flatten_and(a, out);
        flatten_and(b, out);
    } else {
        out.push(f);
    }
}
