//! Loop enumeration. The finite ground dependency graph over a small
//! constant pool stands in for the infinite first-order graph: grounding with
//! two probe constants detects whether a finite complete loop set can exist
//! at all, and grounding with as many fresh constants as the widest predicate
//! carries every loop shape, which is then lifted back to variables.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{Atom, Formula, Signature, Term};

use super::unify::{subsumes, unify_atoms, unify_tuples, Substitution};
use super::{dependency_pairs, DependencyPair};

/// How much of the loop space the returned set covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopStatus {
    /// Every loop is subsumed by a listed one.
    Complete,
    /// The composition search saturated, but saturation is a heuristic and
    /// carries no completeness guarantee for function signatures.
    CompleteWithCaveat,
    /// The composition search was still producing loops when the depth bound
    /// cut it off.
    PartialDepthBounded,
    /// No finite set of loops subsumes all loops; the listed singletons are
    /// loops but cannot be complete.
    NoFiniteCompleteSet,
}

impl std::fmt::Display for LoopStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LoopStatus::Complete => "complete",
            LoopStatus::CompleteWithCaveat => "complete-with-caveat",
            LoopStatus::PartialDepthBounded => "partial-depth-bounded",
            LoopStatus::NoFiniteCompleteSet => "no-finite-complete-set",
        };
        f.write_str(s)
    }
}

/// A set of first-order loops together with its coverage status.
#[derive(Debug, Clone)]
pub struct LoopSetResult {
    pub status: LoopStatus,
    /// Canonically renamed, subsumption-reduced atom sets, sorted.
    pub loops: Vec<Vec<Atom>>,
}

impl LoopSetResult {
    pub fn display_loops(&self) -> Vec<String> {
        self.loops.iter().map(|l| display_loop(l)).collect()
    }
}

pub(super) fn display_loop(atoms: &[Atom]) -> String {
    let parts: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Enumerates a set of first-order loops of `f`.
///
/// Function-free signatures get the grounding procedure with an exact
/// completeness verdict. Signatures with positive-arity functions get an
/// iterative-deepening composition search over dependency pairs, bounded by
/// `depth_bound` (default 8); its verdict is at best heuristic.
pub fn enumerate_loops(f: &Formula, depth_bound: Option<usize>) -> LoopSetResult {
    let f = crate::syntax::rectify(f);
    let sig = Signature::of_formula(&f).expect("arity-consistent input");
    let pairs = dependency_pairs(&f);
    if sig.has_positive_arity_fn() {
        return function_case(&sig, &pairs, depth_bound.unwrap_or(8));
    }
    let consts: Vec<String> = sig.object_constants();

    let probes = fresh_constants(&sig, 2);
    let probe_pool: Vec<Term> = consts
        .iter()
        .chain(probes.iter())
        .map(|c| Term::con(c))
        .collect();
    let probe_graph = ground_graph(&pairs, &probe_pool);
    if !splits_cleanly(&probe_graph, &probes[0]) {
        return LoopSetResult {
            status: LoopStatus::NoFiniteCompleteSet,
            loops: reduce(singleton_loops(&sig)),
        };
    }

    let width = sig.max_pred_arity();
    let fresh = fresh_constants(&sig, width);
    let pool: Vec<Term> = consts
        .iter()
        .chain(fresh.iter())
        .map(|c| Term::con(c))
        .collect();
    let graph = ground_graph(&pairs, &pool);

    let mut found: BTreeSet<Vec<Atom>> = singleton_loops(&sig).into_iter().collect();
    for component in sccs(&graph.adj) {
        if component.len() < 2 {
            continue;
        }
        for subset in connected_subsets(&graph, &component) {
            let atoms: Vec<Atom> = subset.iter().map(|&v| graph.atoms[v].clone()).collect();
            found.insert(canonical_loop(lift(&atoms, &fresh)));
        }
    }
    LoopSetResult {
        status: LoopStatus::Complete,
        loops: reduce(found.into_iter().collect()),
    }
}

/// One singleton loop per predicate, over distinct variables.
fn singleton_loops(sig: &Signature) -> Vec<Vec<Atom>> {
    sig.predicates
        .iter()
        .map(|(pred, &arity)| {
            let args = (1..=arity).map(|i| Term::Var(format!("u{i}"))).collect();
            vec![Atom {
                pred: pred.clone(),
                args,
            }]
        })
        .collect()
}

/// Constant names not used by `sig`, for grounding probes.
fn fresh_constants(sig: &Signature, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 1;
    while out.len() < n {
        let name = format!("c{i}");
        if !sig.functions.contains_key(&name) {
            out.push(name);
        }
        i += 1;
    }
    out
}

/// A loop whose atoms disagree on mentioning the probe constant implies the
/// same disagreement recurs for every constant pool, so no finite loop set
/// can subsume all of them. Mixed loops exist exactly when some strongly
/// connected component is mixed.
fn splits_cleanly(graph: &GroundGraph, probe: &str) -> bool {
    for component in sccs(&graph.adj) {
        if component.len() < 2 {
            continue;
        }
        let mentions: Vec<bool> = component
            .iter()
            .map(|&v| mentions_constant(&graph.atoms[v], probe))
            .collect();
        if mentions.iter().any(|m| *m) && mentions.iter().any(|m| !*m) {
            return false;
        }
    }
    true
}

fn mentions_constant(atom: &Atom, name: &str) -> bool {
    fn in_term(t: &Term, name: &str) -> bool {
        match t {
            Term::Var(_) => false,
            Term::App(f, args) => {
                (f == name && args.is_empty()) || args.iter().any(|a| in_term(a, name))
            }
        }
    }
    atom.args.iter().any(|t| in_term(t, name))
}

/// Replaces the grounding constants by distinct variables, first occurrence
/// first.
fn lift(atoms: &[Atom], fresh: &[String]) -> Vec<Atom> {
    let mut mapping: BTreeMap<String, String> = BTreeMap::new();
    for name in fresh {
        mapping.insert(name.clone(), format!("u{}", mapping.len() + 1));
    }
    fn lift_term(t: &Term, mapping: &BTreeMap<String, String>) -> Term {
        match t {
            Term::Var(v) => Term::Var(v.clone()),
            Term::App(f, args) if args.is_empty() && mapping.contains_key(f) => {
                Term::Var(mapping[f].clone())
            }
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| lift_term(a, mapping)).collect(),
            ),
        }
    }
    atoms
        .iter()
        .map(|a| Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| lift_term(t, &mapping)).collect(),
        })
        .collect()
}

/// Renames the loop's variables to `u1, u2, ...` and sorts its atoms,
/// choosing the variable order that minimizes the result so equal loops get
/// equal representations.
pub(super) fn canonical_loop(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut vars: Vec<String> = Vec::new();
    for a in &atoms {
        for t in &a.args {
            for v in term_vars(t) {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
    }
    if vars.len() > 6 {
        return renamed_sorted(&atoms, &vars);
    }
    let mut best: Option<Vec<Atom>> = None;
    permute(&vars, &mut Vec::new(), &mut |order| {
        let candidate = renamed_sorted(&atoms, order);
        if best.as_ref().map_or(true, |b| candidate < *b) {
            best = Some(candidate);
        }
    });
    best.unwrap_or(atoms)
}

fn renamed_sorted(atoms: &[Atom], order: &[String]) -> Vec<Atom> {
    let mapping: BTreeMap<&String, Term> = order
        .iter()
        .enumerate()
        .map(|(i, v)| (v, Term::Var(format!("u{}", i + 1))))
        .collect();
    fn rename(t: &Term, mapping: &BTreeMap<&String, Term>) -> Term {
        match t {
            Term::Var(v) => mapping.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| rename(a, mapping)).collect(),
            ),
        }
    }
    let mut out: Vec<Atom> = atoms
        .iter()
        .map(|a| Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| rename(t, &mapping)).collect(),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn permute(rest: &[String], prefix: &mut Vec<String>, visit: &mut impl FnMut(&[String])) {
    if rest.is_empty() {
        visit(prefix);
        return;
    }
    for i in 0..rest.len() {
        let mut remaining = rest.to_vec();
        let item = remaining.remove(i);
        prefix.push(item);
        permute(&remaining, prefix, visit);
        prefix.pop();
    }
}

fn term_vars(t: &Term) -> Vec<String> {
    let mut out = Vec::new();
    t.collect_vars(&mut out);
    out
}

/// Drops every loop that another kept loop maps onto.
fn reduce(mut candidates: Vec<Vec<Atom>>) -> Vec<Vec<Atom>> {
    candidates.sort();
    candidates.dedup();
    let mut kept: Vec<Vec<Atom>> = Vec::new();
    for cand in candidates {
        if kept.iter().any(|k| subsumes(k, &cand).is_some()) {
            continue;
        }
        kept.retain(|k| subsumes(&cand, k).is_none());
        kept.push(cand);
    }
    kept.sort();
    kept
}

/// Ground dependency graph: one vertex per instantiated atom, one edge per
/// instantiated dependency pair, head to body.
pub(super) struct GroundGraph {
    pub(super) atoms: Vec<Atom>,
    pub(super) adj: Vec<BTreeSet<usize>>,
}

impl GroundGraph {
    fn intern(&mut self, index: &mut BTreeMap<Atom, usize>, atom: Atom) -> usize {
        if let Some(&i) = index.get(&atom) {
            return i;
        }
        let i = self.atoms.len();
        index.insert(atom.clone(), i);
        self.atoms.push(atom);
        self.adj.push(BTreeSet::new());
        i
    }

    pub(super) fn has_cycle(&self) -> bool {
        if (0..self.atoms.len()).any(|v| self.adj[v].contains(&v)) {
            return true;
        }
        sccs(&self.adj).iter().any(|c| c.len() >= 2)
    }
}

pub(super) fn ground_graph(pairs: &[DependencyPair], pool: &[Term]) -> GroundGraph {
    let mut graph = GroundGraph {
        atoms: Vec::new(),
        adj: Vec::new(),
    };
    let mut index = BTreeMap::new();
    for pair in pairs {
        let mut vars: Vec<String> = Vec::new();
        for t in pair.head.args.iter().chain(&pair.body.args) {
            for v in term_vars(t) {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        if !vars.is_empty() && pool.is_empty() {
            continue;
        }
        let mut choice = vec![0usize; vars.len()];
        loop {
            let theta = tuple_substitution(&vars, &choice, pool);
            let from = graph.intern(&mut index, theta.apply_atom(&pair.head));
            let to = graph.intern(&mut index, theta.apply_atom(&pair.body));
            graph.adj[from].insert(to);
            if !bump(&mut choice, pool.len()) {
                break;
            }
        }
    }
    graph
}

fn tuple_substitution(vars: &[String], choice: &[usize], pool: &[Term]) -> Substitution {
    let left: Vec<Term> = vars.iter().map(|v| Term::Var(v.clone())).collect();
    let right: Vec<Term> = choice.iter().map(|&i| pool[i].clone()).collect();
    unify_tuples(&left, &right).expect("grounding binds distinct variables to ground terms")
}

/// Advances a mixed-radix counter; false when it wraps around.
fn bump(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Tarjan's strongly connected components, returned with each component
/// sorted and components ordered by smallest vertex.
pub(super) fn sccs(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [BTreeSet<usize>],
        index: Vec<Option<usize>>,
        lowlink: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(v: usize, st: &mut State) {
        st.index[v] = Some(st.next);
        st.lowlink[v] = st.next;
        st.next += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in st.adj[v].iter() {
            match st.index[w] {
                None => {
                    visit(w, st);
                    st.lowlink[v] = st.lowlink[v].min(st.lowlink[w]);
                }
                Some(wi) if st.on_stack[w] => {
                    st.lowlink[v] = st.lowlink[v].min(wi);
                }
                _ => {}
            }
        }
        if st.lowlink[v] == st.index[v].unwrap() {
            let mut component = Vec::new();
            loop {
                let w = st.stack.pop().unwrap();
                st.on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            component.sort_unstable();
            st.out.push(component);
        }
    }
    let n = adj.len();
    let mut st = State {
        adj,
        index: vec![None; n],
        lowlink: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if st.index[v].is_none() {
            visit(v, &mut st);
        }
    }
    st.out.sort_by_key(|c| c[0]);
    st.out
}

/// All subsets of `component` with at least two vertices whose induced
/// subgraph is strongly connected. Components wider than 12 vertices are
/// reported as a single whole to keep the enumeration bounded.
fn connected_subsets(graph: &GroundGraph, component: &[usize]) -> Vec<Vec<usize>> {
    if component.len() > 12 {
        return vec![component.to_vec()];
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << component.len()) {
        if mask.count_ones() < 2 {
            continue;
        }
        let subset: Vec<usize> = component
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        if induced_strongly_connected(graph, &subset) {
            out.push(subset);
        }
    }
    out
}

fn induced_strongly_connected(graph: &GroundGraph, subset: &[usize]) -> bool {
    let inside = |v: usize| subset.contains(&v);
    let reach = |forward: bool| {
        let mut seen = vec![subset[0]];
        let mut work = vec![subset[0]];
        while let Some(v) = work.pop() {
            for &u in subset {
                let edge = if forward {
                    graph.adj[v].contains(&u)
                } else {
                    graph.adj[u].contains(&v)
                };
                if edge && inside(u) && !seen.contains(&u) {
                    seen.push(u);
                    work.push(u);
                }
            }
        }
        seen.len() == subset.len()
    };
    reach(true) && reach(false)
}

/// Composition chain through the dependency pairs: `visited` holds the cycle
/// candidate so far, `frontier` the atom the next pair's head must unify
/// with.
struct Chain {
    visited: Vec<Atom>,
    frontier: Atom,
}

const CHAIN_CAP: usize = 4096;

fn function_case(sig: &Signature, pairs: &[DependencyPair], bound: usize) -> LoopSetResult {
    let mut loops: BTreeSet<Vec<Atom>> = singleton_loops(sig).into_iter().collect();
    let mut rename_counter = 0usize;
    let mut chains: Vec<Chain> = pairs
        .iter()
        .map(|p| {
            let (head, body) = rename_pair(p, &mut rename_counter);
            Chain {
                visited: vec![head],
                frontier: body,
            }
        })
        .collect();
    let mut truncated = false;
    let mut exhausted = false;
    let mut new_at_last_depth = false;
    for depth in 1..=bound {
        new_at_last_depth = false;
        for chain in &chains {
            if let Some(theta) = unify_atoms(&chain.frontier, &chain.visited[0]) {
                let cycle: Vec<Atom> = chain.visited.iter().map(|a| theta.apply_atom(a)).collect();
                if loops.insert(canonical_loop(cycle)) {
                    new_at_last_depth = true;
                }
            }
        }
        if depth == bound {
            break;
        }
        let mut next: Vec<Chain> = Vec::new();
        let mut seen: BTreeSet<Vec<Atom>> = BTreeSet::new();
        for chain in &chains {
            for pair in pairs {
                let (head, body) = rename_pair(pair, &mut rename_counter);
                let Some(theta) = unify_atoms(&chain.frontier, &head) else {
                    continue;
                };
                let mut visited: Vec<Atom> =
                    chain.visited.iter().map(|a| theta.apply_atom(a)).collect();
                visited.push(theta.apply_atom(&chain.frontier));
                let frontier = theta.apply_atom(&body);
                let mut key = visited.clone();
                key.push(frontier.clone());
                if !seen.insert(chain_key(&key)) {
                    continue;
                }
                next.push(Chain { visited, frontier });
                if next.len() >= CHAIN_CAP {
                    truncated = true;
                    break;
                }
            }
            if truncated {
                break;
            }
        }
        if next.is_empty() {
            exhausted = true;
            break;
        }
        chains = next;
    }
    let status = if truncated || (new_at_last_depth && !exhausted) {
        LoopStatus::PartialDepthBounded
    } else {
        LoopStatus::CompleteWithCaveat
    };
    LoopSetResult {
        status,
        loops: reduce(loops.into_iter().collect()),
    }
}

/// Renames a pair's variables apart from everything produced before.
fn rename_pair(pair: &DependencyPair, counter: &mut usize) -> (Atom, Atom) {
    *counter += 1;
    let k = *counter;
    fn rename(t: &Term, k: usize) -> Term {
        match t {
            Term::Var(v) => Term::Var(format!("{v}_{k}")),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| rename(a, k)).collect())
            }
        }
    }
    let rename_atom = |a: &Atom| Atom {
        pred: a.pred.clone(),
        args: a.args.iter().map(|t| rename(t, k)).collect(),
    };
    (rename_atom(&pair.head), rename_atom(&pair.body))
}

/// Order-preserving canonical renaming used only for chain deduplication.
fn chain_key(atoms: &[Atom]) -> Vec<Atom> {
    let mut mapping: BTreeMap<String, String> = BTreeMap::new();
    fn rename(t: &Term, mapping: &mut BTreeMap<String, String>) -> Term {
        match t {
            Term::Var(v) => {
                let next = format!("k{}", mapping.len() + 1);
                Term::Var(mapping.entry(v.clone()).or_insert(next).clone())
            }
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| rename(a, mapping)).collect(),
            ),
        }
    }
    atoms
        .iter()
        .map(|a| Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| rename(t, &mut mapping)).collect(),
        })
        .collect()
}
