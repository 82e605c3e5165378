//! Occurrence analysis: polarity of atom occurrences, negative formulas, and
//! the strictly positive implications that act as the rules of a formula.

use super::{Atom, Formula};

/// One atom occurrence with its polarity data. `antecedent_depth` counts the
/// implications whose antecedent contains the occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomOccurrence {
    pub atom: Atom,
    pub antecedent_depth: usize,
    pub in_negative_subformula: bool,
}

impl AtomOccurrence {
    pub fn is_positive(&self) -> bool {
        self.antecedent_depth % 2 == 0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.antecedent_depth == 0
    }
}

/// A strictly positive implication occurrence, split into its two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaRule {
    pub antecedent: Formula,
    pub consequent: Formula,
}

/// Polarity information for every atom occurrence of a formula, plus its
/// rules. Occurrences are listed in left-to-right traversal order.
#[derive(Debug, Clone, Default)]
pub struct OccurrenceTable {
    pub atoms: Vec<AtomOccurrence>,
    pub rules: Vec<FormulaRule>,
}

impl OccurrenceTable {
    pub fn of(f: &Formula) -> OccurrenceTable {
        let mut table = OccurrenceTable::default();
        walk(f, 0, false, &mut table);
        table
    }
}

fn walk(f: &Formula, depth: usize, in_negative: bool, table: &mut OccurrenceTable) {
    // A subformula that is itself negative shades everything beneath it.
    let in_negative = in_negative || is_negative(f);
    match f {
        Formula::Atom(a) => table.atoms.push(AtomOccurrence {
            atom: a.clone(),
            antecedent_depth: depth,
            in_negative_subformula: in_negative,
        }),
        Formula::Eq(..) | Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) => {
            walk(a, depth, in_negative, table);
            walk(b, depth, in_negative, table);
        }
        Formula::Implies(a, b) => {
            if depth == 0 {
                table.rules.push(FormulaRule {
                    antecedent: (**a).clone(),
                    consequent: (**b).clone(),
                });
            }
            walk(a, depth + 1, in_negative, table);
            walk(b, depth, in_negative, table);
        }
        Formula::Forall(_, g) | Formula::Exists(_, g) => walk(g, depth, in_negative, table),
    }
}

/// A formula is negative when every atom occurrence in it lies in the
/// antecedent of some implication. Equalities and `#false` contain no atoms,
/// so they are negative outright, and so is any formula of the form `not F`.
pub fn is_negative(f: &Formula) -> bool {
    !has_strictly_positive_atom(f)
}

fn has_strictly_positive_atom(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Eq(..) | Formula::Bottom => false,
        Formula::And(a, b) | Formula::Or(a, b) => {
            has_strictly_positive_atom(a) || has_strictly_positive_atom(b)
        }
        // Crossing into an antecedent breaks strict positivity.
        Formula::Implies(_, b) => has_strictly_positive_atom(b),
        Formula::Forall(_, g) | Formula::Exists(_, g) => has_strictly_positive_atom(g),
    }
}

/// Atoms with a strictly positive occurrence, in traversal order, duplicates
/// removed.
pub fn strictly_positive_atoms(f: &Formula) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    for occ in OccurrenceTable::of(f).atoms {
        if occ.is_strictly_positive() && !out.contains(&occ.atom) {
            out.push(occ.atom);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Term;

    fn at(p: &str, v: &str) -> Formula {
        Formula::atom(p, vec![Term::var(v)])
    }

    #[test]
    fn negation_and_equality_are_negative() {
        assert!(is_negative(&Formula::not_(at("r", "Z"))));
        assert!(is_negative(&Formula::Eq(Term::con("a"), Term::con("b"))));
        assert!(is_negative(&Formula::not_(Formula::exists(
            "Z",
            at("accident", "Z")
        ))));
        assert!(!is_negative(&at("p", "X")));
        assert!(!is_negative(&Formula::exists("Y", at("spouse", "Y"))));
    }

    #[test]
    fn polarity_in_a_rule_conjunct() {
        // forall X (p(X) & not q(X) -> r(X))
        let f = Formula::forall(
            "X",
            Formula::implies(
                Formula::and(at("p", "X"), Formula::not_(at("q", "X"))),
                at("r", "X"),
            ),
        );
        let table = OccurrenceTable::of(&f);
        assert_eq!(table.rules.len(), 1);
        let by_pred = |name: &str| {
            table
                .atoms
                .iter()
                .find(|o| o.atom.pred == name)
                .expect("occurrence present")
        };
        // r is the head: strictly positive, not shaded.
        assert!(by_pred("r").is_strictly_positive());
        assert!(!by_pred("r").in_negative_subformula);
        // p sits in one antecedent: positive-but-not-strict once inside the
        // rule, depth 1 from the root.
        assert_eq!(by_pred("p").antecedent_depth, 1);
        assert!(!by_pred("p").in_negative_subformula);
        // q sits under `not`, which is a negative subformula.
        assert_eq!(by_pred("q").antecedent_depth, 2);
        assert!(by_pred("q").in_negative_subformula);
    }

    #[test]
    fn nested_strictly_positive_implications_are_all_rules() {
        // p(X) -> (q(X) -> r(X)) contributes two rules.
        let f = Formula::implies(at("p", "X"), Formula::implies(at("q", "X"), at("r", "X")));
        let table = OccurrenceTable::of(&f);
        assert_eq!(table.rules.len(), 2);
        assert_eq!(table.rules[0].antecedent, at("p", "X"));
        assert_eq!(table.rules[1].antecedent, at("q", "X"));
        // An implication inside an antecedent is not a rule.
        let g = Formula::implies(Formula::implies(at("p", "X"), at("q", "X")), at("r", "X"));
        assert_eq!(OccurrenceTable::of(&g).rules.len(), 1);
    }

    #[test]
    fn strictly_positive_atoms_deduplicate() {
        let f = Formula::and(at("p", "X"), Formula::and(at("p", "X"), at("q", "Y")));
        let sp = strictly_positive_atoms(&f);
        assert_eq!(sp.len(), 2);
    }
}
