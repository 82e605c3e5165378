//! Display for terms and formulas.
//!
//! Output is concrete syntax that the parser accepts, so printing and parsing
//! round-trip. Abbreviation patterns are recognized on the fly: `#false ->
//! #false` prints as `#true`, `F -> #false` as `not F`, `t = s -> #false` as
//! `t != s`, and a conjunction of two converse implications as `<->`.
//! Variables print with their first letter upper-cased; fresh-name generation
//! avoids collisions with both cases, which keeps the mapping injective.

use super::{Formula, Term};
use std::fmt;

/// Precedence levels, loosest first: `<->`, `->`, `|`, `&`, primary.
const IFF: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PRIMARY: u8 = 4;

pub(crate) fn capitalize_var(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_ascii_uppercase().to_string() + chars.as_str(),
        None => String::new(),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", capitalize_var(v)),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Splits `(A -> B) & (B -> A)` into its two sides when both directions match.
pub(crate) fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        if let (Formula::Implies(a1, b1), Formula::Implies(b2, a2)) = (&**l, &**r) {
            if a1 == a2 && b1 == b2 {
                return Some((a1, b1));
            }
        }
    }
    None
}

fn fmt_prec(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = printed_prec(f);
    if prec < min {
        write!(out, "(")?;
        fmt_prec(f, IFF, out)?;
        return write!(out, ")");
    }
    match f {
        _ if f.is_top() => write!(out, "#true"),
        Formula::Bottom => write!(out, "#false"),
        Formula::Atom(a) => {
            write!(out, "{}", a.pred)?;
            if !a.args.is_empty() {
                write!(out, "(")?;
                for (i, t) in a.args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "{t}")?;
                }
                write!(out, ")")?;
            }
            Ok(())
        }
        Formula::Eq(l, r) => write!(out, "{l} = {r}"),
        Formula::Implies(a, b) if **b == Formula::Bottom => {
            if let Formula::Eq(l, r) = &**a {
                write!(out, "{l} != {r}")
            } else {
                write!(out, "not ")?;
                fmt_prec(a, PRIMARY, out)
            }
        }
        Formula::And(..) if as_iff(f).is_some() => {
            let (a, b) = as_iff(f).expect("checked by guard");
            fmt_prec(a, IMPLIES, out)?;
            write!(out, " <-> ")?;
            fmt_prec(b, IMPLIES, out)
        }
        Formula::And(a, b) => {
            fmt_prec(a, AND, out)?;
            write!(out, " & ")?;
            fmt_prec(b, PRIMARY, out)
        }
        Formula::Or(a, b) => {
            fmt_prec(a, OR, out)?;
            write!(out, " | ")?;
            fmt_prec(b, AND, out)
        }
        Formula::Implies(a, b) => {
            fmt_prec(a, OR, out)?;
            write!(out, " -> ")?;
            fmt_prec(b, IMPLIES, out)
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let keyword = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            // Collapse a run of like quantifiers into one binder list.
            let mut vars = Vec::new();
            let mut body = f;
            loop {
                match (keyword, body) {
                    ("forall", Formula::Forall(v, g)) | ("exists", Formula::Exists(v, g)) => {
                        vars.push(capitalize_var(v));
                        body = g;
                    }
                    _ => break,
                }
            }
            write!(out, "{keyword} {} (", vars.join(" "))?;
            fmt_prec(body, IFF, out)?;
            write!(out, ")")
        }
    }
}

/// Precedence of the form a formula will print as, abbreviations included.
fn printed_prec(f: &Formula) -> u8 {
    match f {
        _ if f.is_top() => PRIMARY,
        Formula::Atom(_) | Formula::Eq(..) | Formula::Bottom => PRIMARY,
        Formula::Forall(..) | Formula::Exists(..) => PRIMARY,
        Formula::Implies(_, b) if **b == Formula::Bottom => PRIMARY,
        Formula::And(..) if as_iff(f).is_some() => IFF,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Implies(..) => IMPLIES,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, IFF, f)
    }
}

/// Prints a formula as it appears inside a rule body: top-level conjunctions
/// become comma-separated conjuncts.
pub(crate) fn fmt_body(body: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, c) in body.conjuncts().iter().enumerate() {
        if i > 0 {
            write!(out, ", ")?;
        }
        fmt_prec(c, IFF, out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::*;

    fn p(t: Term) -> Formula {
        Formula::atom("p", vec![t])
    }

    #[test]
    fn abbreviations_print() {
        assert_eq!(Formula::top().to_string(), "#true");
        assert_eq!(Formula::Bottom.to_string(), "#false");
        let f = Formula::not_(p(Term::var("X")));
        assert_eq!(f.to_string(), "not p(X)");
        let neq = Formula::not_(Formula::Eq(Term::var("X"), Term::con("a")));
        assert_eq!(neq.to_string(), "X != a");
        let nested = Formula::not_(Formula::and(p(Term::var("X")), p(Term::var("Y"))));
        assert_eq!(nested.to_string(), "not (p(X) & p(Y))");
    }

    #[test]
    fn precedence_and_associativity() {
        let a = || p(Term::con("a"));
        let b = || p(Term::con("b"));
        let c = || p(Term::con("c"));
        // Left-nested & is flat, right-nested needs parens.
        assert_eq!(
            Formula::and(Formula::and(a(), b()), c()).to_string(),
            "p(a) & p(b) & p(c)"
        );
        assert_eq!(
            Formula::and(a(), Formula::and(b(), c())).to_string(),
            "p(a) & (p(b) & p(c))"
        );
        // -> is right-associative and looser than | which is looser than &.
        assert_eq!(
            Formula::implies(a(), Formula::implies(b(), c())).to_string(),
            "p(a) -> p(b) -> p(c)"
        );
        assert_eq!(
            Formula::implies(Formula::implies(a(), b()), c()).to_string(),
            "(p(a) -> p(b)) -> p(c)"
        );
        assert_eq!(
            Formula::or(Formula::and(a(), b()), c()).to_string(),
            "p(a) & p(b) | p(c)"
        );
        assert_eq!(
            Formula::and(Formula::or(a(), b()), c()).to_string(),
            "(p(a) | p(b)) & p(c)"
        );
    }

    #[test]
    fn iff_pattern_prints_as_arrow_pair() {
        let a = p(Term::con("a"));
        let b = p(Term::con("b"));
        let f = Formula::iff(a, b);
        assert_eq!(f.to_string(), "p(a) <-> p(b)");
    }

    #[test]
    fn quantifier_runs_collapse() {
        let f = Formula::forall(
            "X",
            Formula::forall(
                "Y",
                Formula::atom("q", vec![Term::var("X"), Term::var("Y")]),
            ),
        );
        assert_eq!(f.to_string(), "forall X Y (q(X, Y))");
        let g = Formula::forall("X", Formula::exists("Y", Formula::top()));
        assert_eq!(g.to_string(), "forall X (exists Y (#true))");
    }

    #[test]
    fn fresh_variables_print_capitalized() {
        let f = p(Term::var("v1"));
        assert_eq!(f.to_string(), "p(V1)");
    }
}
