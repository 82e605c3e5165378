//! The dependency graph of a sentence relative to a finite interpretation,
//! and the set-level support predicates (nonempty, loop, unbounded,
//! extended loop) evaluated by direct quantification over sub-assignments.

use std::collections::{BTreeMap, BTreeSet};

use crate::analysis::{dependency_pairs, DependencyPair};
use crate::syntax::{rectify, Atom, Formula, Signature};

use super::eval::SecondOrderAssignment;
use super::{all_tuples, Interpretation, OracleError};

/// A vertex of the graph: a predicate applied to universe elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroundAtom {
    pub pred: String,
    pub tuple: Vec<usize>,
}

impl GroundAtom {
    pub fn display(&self, i: &Interpretation) -> String {
        if self.tuple.is_empty() {
            return self.pred.clone();
        }
        format!("{}({})", self.pred, i.tuple_names(&self.tuple).join(", "))
    }
}

/// Dependency graph relative to an interpretation. Vertices are all atoms
/// over the sentence's predicates and the universe; edges come from
/// instantiating dependency pairs with elements and evaluating the pair's
/// terms.
#[derive(Debug, Clone)]
pub struct WrtGraph {
    pub atoms: Vec<GroundAtom>,
    pub adj: Vec<BTreeSet<usize>>,
    index: BTreeMap<GroundAtom, usize>,
}

impl WrtGraph {
    pub fn vertex_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum()
    }

    pub fn vertex(&self, atom: &GroundAtom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&GroundAtom, &GroundAtom)> {
        self.adj.iter().enumerate().flat_map(move |(v, outs)| {
            outs.iter().map(move |&w| (&self.atoms[v], &self.atoms[w]))
        })
    }

    /// Whether `set` is a loop: nonempty, with a strongly connected induced
    /// subgraph. Singletons qualify with or without a self-edge.
    pub fn is_loop(&self, set: &BTreeSet<usize>) -> bool {
        if set.is_empty() {
            return false;
        }
        let start = *set.iter().next().unwrap();
        let reach = |forward: bool| {
            let mut seen = BTreeSet::from([start]);
            let mut work = vec![start];
            while let Some(v) = work.pop() {
                for &u in set {
                    let edge = if forward {
                        self.adj[v].contains(&u)
                    } else {
                        self.adj[u].contains(&v)
                    };
                    if edge && seen.insert(u) {
                        work.push(u);
                    }
                }
            }
            seen.len() == set.len()
        };
        reach(true) && reach(false)
    }

    /// Whether some edge leaves `from` into `rest`.
    fn has_edge_between(&self, from: &BTreeSet<usize>, rest: &BTreeSet<usize>) -> bool {
        from.iter().any(|&v| self.adj[v].iter().any(|w| rest.contains(w)))
    }

    /// Whether every loop inside `set` has an edge into the remainder of
    /// `set`. This can never hold for a nonempty set of a finite graph: a
    /// sink component of the induced subgraph is a loop with no way out, so
    /// callers on finite graphs always get false. The sweep spells the
    /// definition out anyway, with a direct answer above the subset limit.
    pub fn is_unbounded(&self, set: &BTreeSet<usize>) -> bool {
        if set.is_empty() || set.len() > 20 {
            return false;
        }
        let members: Vec<usize> = set.iter().copied().collect();
        for mask in 1u64..(1u64 << members.len()) {
            let sub: BTreeSet<usize> = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            if !self.is_loop(&sub) {
                continue;
            }
            let rest: BTreeSet<usize> = set.difference(&sub).copied().collect();
            if !self.has_edge_between(&sub, &rest) {
                return false;
            }
        }
        true
    }
}

/// Builds the dependency graph of `f` relative to `i`. The sentence is
/// rectified first; the interpretation must cover its constants.
pub fn wrt_graph(f: &Formula, i: &Interpretation) -> Result<WrtGraph, OracleError> {
    let f = rectify(f);
    let sig = Signature::of_formula(&f).expect("arity-consistent input");
    i.covers(&sig)?;
    let mut atoms = Vec::new();
    let mut index = BTreeMap::new();
    for (pred, &arity) in &sig.predicates {
        for tuple in all_tuples(arity, i.size()) {
            let atom = GroundAtom {
                pred: pred.clone(),
                tuple,
            };
            index.insert(atom.clone(), atoms.len());
            atoms.push(atom);
        }
    }
    let mut adj = vec![BTreeSet::new(); atoms.len()];
    for pair in dependency_pairs(&f) {
        for (from, to) in instantiate_pair(&pair, i)? {
            let v = index[&from];
            adj[v].insert(index[&to]);
        }
    }
    Ok(WrtGraph { atoms, adj, index })
}

/// All element instantiations of one dependency pair, with the pair's terms
/// evaluated down to element tuples.
fn instantiate_pair(
    pair: &DependencyPair,
    i: &Interpretation,
) -> Result<Vec<(GroundAtom, GroundAtom)>, OracleError> {
    let mut vars: Vec<String> = Vec::new();
    for t in pair.head.args.iter().chain(&pair.body.args) {
        t.collect_vars(&mut vars);
    }
    let mut seen = BTreeSet::new();
    vars.retain(|v| seen.insert(v.clone()));
    let mut out = Vec::new();
    for assignment in all_tuples(vars.len(), i.size()) {
        let env: Vec<(String, usize)> = vars
            .iter()
            .cloned()
            .zip(assignment.iter().copied())
            .collect();
        let eval_atom = |atom: &Atom| -> Result<GroundAtom, OracleError> {
            let mut tuple = Vec::with_capacity(atom.args.len());
            for t in &atom.args {
                tuple.push(i.eval_term(t, &env)?);
            }
            Ok(GroundAtom {
                pred: atom.pred.clone(),
                tuple,
            })
        };
        out.push((eval_atom(&pair.head)?, eval_atom(&pair.body)?));
    }
    Ok(out)
}

/// Loops and unbounded sets of the graph of `f` relative to `i`.
#[derive(Debug, Clone)]
pub struct WrtAnalysis {
    pub graph: WrtGraph,
    /// Every singleton, plus each strongly connected component with at
    /// least two vertices; vertex index sets. Larger strongly connected
    /// subsets live inside these components and can be probed with
    /// `WrtGraph::is_loop`.
    pub loops: Vec<BTreeSet<usize>>,
    /// All unbounded vertex sets, present only when the graph is small
    /// enough to sweep every subset.
    pub unbounded: Option<Vec<BTreeSet<usize>>>,
}

impl WrtAnalysis {
    pub fn loop_atoms(&self) -> Vec<Vec<GroundAtom>> {
        self.loops
            .iter()
            .map(|set| set.iter().map(|&v| self.graph.atoms[v].clone()).collect())
            .collect()
    }
}

const EXHAUSTIVE_VERTEX_LIMIT: usize = 12;

/// Computes the loops of the graph of `f` relative to `i`, reported through
/// the strongly connected components plus all singletons, and sweeps every
/// vertex subset for unbounded sets when the graph has at most 12 vertices.
pub fn loops_and_unbounded_wrt(
    f: &Formula,
    i: &Interpretation,
) -> Result<WrtAnalysis, OracleError> {
    let graph = wrt_graph(f, i)?;
    let n = graph.vertex_count();
    let mut loops: BTreeSet<BTreeSet<usize>> = (0..n).map(|v| BTreeSet::from([v])).collect();
    for component in components(&graph.adj) {
        if component.len() >= 2 {
            loops.insert(component.into_iter().collect());
        }
    }
    let unbounded = if n <= EXHAUSTIVE_VERTEX_LIMIT {
        let mut found = Vec::new();
        for mask in 1u64..(1u64 << n) {
            let set: BTreeSet<usize> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
            if graph.is_unbounded(&set) {
                found.push(set);
            }
        }
        Some(found)
    } else {
        None
    };
    Ok(WrtAnalysis {
        graph,
        loops: loops.into_iter().collect(),
        unbounded,
    })
}

fn components(adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
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
                Some(wi) if st.on_stack[w] => st.lowlink[v] = st.lowlink[v].min(wi),
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

/// Truth values of the set-level support predicates for one assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopPredicateEval {
    pub nonempty: bool,
    pub is_loop: bool,
    pub is_unbounded: bool,
    pub is_ext_loop: bool,
}

/// Whether the dependency relation of `f` over `i` leads from `v` into `u`
/// beyond `v`: some pair instance has its head in `v` and its body in `u`
/// but not in `v`.
pub fn dependency_edge_eval(
    f: &Formula,
    i: &Interpretation,
    v: &SecondOrderAssignment,
    u: &SecondOrderAssignment,
) -> Result<bool, OracleError> {
    let f = rectify(f);
    let edges = pair_edges(&dependency_pairs(&f), i)?;
    Ok(edge_out(&edges, v, u))
}

fn edge_out(
    edges: &[(GroundAtom, GroundAtom)],
    v: &SecondOrderAssignment,
    u: &SecondOrderAssignment,
) -> bool {
    edges.iter().any(|(from, to)| {
        v.holds(&from.pred, &from.tuple)
            && u.holds(&to.pred, &to.tuple)
            && !v.holds(&to.pred, &to.tuple)
    })
}

/// Evaluates the support predicates for `q` against `f` and `i` by direct
/// quantification: the set variables range over all sub-assignments of `q`.
/// A set is a loop when every nonempty proper sub-assignment leads onward
/// into the rest; it is unbounded when every sub-assignment that is a loop,
/// itself included, leads onward into the rest.
pub fn loop_predicate_eval(
    f: &Formula,
    i: &Interpretation,
    q: &SecondOrderAssignment,
) -> Result<LoopPredicateEval, OracleError> {
    let f = rectify(f);
    let atoms = q.atoms();
    let k = atoms.len();
    if k > 16 {
        return Err(OracleError::BudgetExceeded {
            size: format!("2^{k} sub-assignments"),
            budget: 1 << 16,
        });
    }
    let edges = pair_edges(&dependency_pairs(&f), i)?;
    let preds: Vec<String> = q.sets.keys().cloned().collect();
    let subset_assignment = |mask: u64| -> SecondOrderAssignment {
        let mut sub = SecondOrderAssignment::empty_over(&preds);
        for (j, (pred, tuple)) in atoms.iter().enumerate() {
            if mask & (1 << j) != 0 {
                sub.insert(pred.clone(), tuple.clone());
            }
        }
        sub
    };

    let full = (1u64 << k) - 1;
    let mut loop_table = vec![false; (full + 1) as usize];
    for mask in 1..=full {
        let u = subset_assignment(mask);
        let mut ok = true;
        let mut v_mask = (mask - 1) & mask;
        while v_mask != 0 {
            let v = subset_assignment(v_mask);
            if !edge_out(&edges, &v, &u) {
                ok = false;
                break;
            }
            v_mask = (v_mask - 1) & mask;
        }
        loop_table[mask as usize] = ok;
    }

    let nonempty = k > 0;
    let is_loop = nonempty && loop_table[full as usize];

    let is_unbounded = nonempty && {
        let u = subset_assignment(full);
        let mut ok = true;
        let mut v_mask = full;
        loop {
            if loop_table[v_mask as usize] && !edge_out(&edges, &subset_assignment(v_mask), &u) {
                ok = false;
                break;
            }
            if v_mask == 0 {
                break;
            }
            v_mask = (v_mask - 1) & full;
        }
        ok
    };

    Ok(LoopPredicateEval {
        nonempty,
        is_loop,
        is_unbounded,
        is_ext_loop: is_loop || is_unbounded,
    })
}

/// All ground edges induced by the dependency pairs over `i`, deduplicated.
fn pair_edges(
    pairs: &[DependencyPair],
    i: &Interpretation,
) -> Result<Vec<(GroundAtom, GroundAtom)>, OracleError> {
    let mut out = Vec::new();
    for pair in pairs {
        out.extend(instantiate_pair(pair, i)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}
