//! Parser for interpretation files.
//!
//! ```text
//! universe e0 e1 e2.
//! const a = e0.
//! fn f(e0) = e1.
//! pred p = { (e0), (e1, e2) }.
//! ```
//!
//! Function tables must be total; predicates not listed have empty
//! extensions, and `pred p = { }.` is equivalent to omitting the line.

use super::lexer::TokKind;
use super::{ParseError, Parser};
use crate::oracle::{FnTable, Interpretation, PredTable};
use std::collections::BTreeMap;

pub fn parse_interpretation(text: &str) -> Result<Interpretation, ParseError> {
    parse_interpretation_named(text, "<interpretation>")
}

pub fn parse_interpretation_named(text: &str, file: &str) -> Result<Interpretation, ParseError> {
    let mut p = Parser::new(text, file)?;

    let keyword = p.lident("`universe`")?;
    if keyword != "universe" {
        return p.err("an interpretation file must start with `universe`");
    }
    let mut universe = Vec::new();
    loop {
        if p.eat_if(TokKind::Dot) {
            break;
        }
        let name = p.lident("an element name")?;
        if universe.contains(&name) {
            return p.err(format!("element `{name}` declared twice"));
        }
        universe.push(name);
    }
    if universe.is_empty() {
        return p.err("the universe must contain at least one element");
    }
    let mut interp = Interpretation::new(universe);

    while p.remaining() {
        let entry = p.lident("`const`, `fn`, or `pred`")?;
        match entry.as_str() {
            "const" => {
                let name = p.lident("a constant name")?;
                p.expect(TokKind::Eq, "`=`")?;
                let e = element(&mut p, &interp)?;
                p.expect(TokKind::Dot, "`.`")?;
                interp.set_const(name, e);
            }
            "fn" => {
                let name = p.lident("a function name")?;
                p.expect(TokKind::LParen, "`(`")?;
                let mut args = Vec::new();
                if !p.eat_if(TokKind::RParen) {
                    loop {
                        args.push(element(&mut p, &interp)?);
                        if p.eat_if(TokKind::RParen) {
                            break;
                        }
                        p.expect(TokKind::Comma, "`,` or `)`")?;
                    }
                }
                p.expect(TokKind::Eq, "`=`")?;
                let out = element(&mut p, &interp)?;
                p.expect(TokKind::Dot, "`.`")?;
                if args.is_empty() {
                    interp.set_const(name, out);
                    continue;
                }
                let table = interp.fn_tables.entry(name.clone()).or_insert(FnTable {
                    arity: args.len(),
                    map: BTreeMap::new(),
                });
                if table.arity != args.len() {
                    return p.err(format!(
                        "function `{name}` used with arities {} and {}",
                        table.arity,
                        args.len()
                    ));
                }
                table.map.insert(args, out);
            }
            "pred" => {
                let name = p.lident("a predicate name")?;
                p.expect(TokKind::Eq, "`=`")?;
                p.expect(TokKind::LBrace, "`{`")?;
                let mut tuples = Vec::new();
                if !p.eat_if(TokKind::RBrace) {
                    loop {
                        p.expect(TokKind::LParen, "`(`")?;
                        let mut tuple = Vec::new();
                        if !p.eat_if(TokKind::RParen) {
                            loop {
                                tuple.push(element(&mut p, &interp)?);
                                if p.eat_if(TokKind::RParen) {
                                    break;
                                }
                                p.expect(TokKind::Comma, "`,` or `)`")?;
                            }
                        }
                        tuples.push(tuple);
                        if p.eat_if(TokKind::RBrace) {
                            break;
                        }
                        p.expect(TokKind::Comma, "`,` or `}`")?;
                    }
                }
                p.expect(TokKind::Dot, "`.`")?;
                if tuples.is_empty() {
                    continue;
                }
                let arity = tuples[0].len();
                if let Some(bad) = tuples.iter().find(|t| t.len() != arity) {
                    return p.err(format!(
                        "predicate `{name}` mixes tuple widths {} and {}",
                        arity,
                        bad.len()
                    ));
                }
                let table = interp.pred_tables.entry(name.clone()).or_insert(PredTable {
                    arity,
                    tuples: Default::default(),
                });
                if table.arity != arity {
                    return p.err(format!(
                        "predicate `{name}` used with arities {} and {}",
                        table.arity, arity
                    ));
                }
                table.tuples.extend(tuples);
            }
            other => return p.err(format!("unknown entry `{other}`")),
        }
    }
    if let Err(e) = interp.validate() {
        return p.err(e.to_string());
    }
    Ok(interp)
}

fn element(p: &mut Parser, interp: &Interpretation) -> Result<usize, ParseError> {
    let name = p.lident("an element name")?;
    match interp.element_index(&name) {
        Some(i) => Ok(i),
        None => p.err(format!("element `{name}` is not declared in the universe")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_two_element_collapse_interpretation() {
        let i = parse_interpretation(
            "universe e0.\nconst a = e0.\nconst b = e0.\npred p = { (e0) }.\npred q = { (e0) }.",
        )
        .unwrap();
        assert_eq!(i.size(), 1);
        assert_eq!(i.const_map["a"], 0);
        assert_eq!(i.const_map["b"], 0);
        assert!(i.holds("p", &[0]));
        assert!(!crate::oracle::cet_check(&i));
    }

    #[test]
    fn missing_predicates_default_to_empty() {
        let i = parse_interpretation("universe e0.").unwrap();
        assert!(i.pred_extension("p").is_empty());
    }

    #[test]
    fn totality_and_declaration_are_enforced() {
        let err = parse_interpretation("universe e0 e1.\nfn f(e0) = e1.").unwrap_err();
        assert!(err.message.contains("missing a value"), "{}", err.message);
        let err = parse_interpretation("universe e0.\nfn f(e0) = e1.").unwrap_err();
        assert!(err.message.contains("not declared"), "{}", err.message);
        let err = parse_interpretation("universe e0.\npred p = { (e0), (e0, e0) }.").unwrap_err();
        assert!(err.message.contains("mixes"), "{}", err.message);
    }

    #[test]
    fn round_trips_through_display() {
        let text = "universe e0 e1.\nconst a = e0.\nfn f(e0) = e1.\nfn f(e1) = e1.\npred p = { (e0, e1) }.\n";
        let i = parse_interpretation(text).unwrap();
        assert_eq!(parse_interpretation(&i.to_string()).unwrap(), i);
    }
}
