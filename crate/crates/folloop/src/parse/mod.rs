//! Parser for the concrete program language and interpretation files.
//!
//! The grammar in brief: rules are `Head :- Body.` with `;` separating head
//! disjuncts and `,` separating body conjuncts; formulas use `not`, `&`, `|`,
//! `->`, `<->`, `=`, `!=`, `#true`, `#false`, and `exists X Y (F)` /
//! `forall X (F)`. Variables start upper-case, other identifiers lower-case.
//! Directives: `#intensional p/1.`, `#extensional q/2.`, `#universe 3.`,
//! `#query F.`. Comments run from `%` to end of line.

mod interp;
mod lexer;

pub use interp::parse_interpretation;

use crate::syntax::{Atom, Formula, Program, Rule, Signature, Term};
use lexer::{lex, Pos, Tok, TokKind};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{file}:{line}:{col}: {message}")]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    parse_program_named(text, "<input>")
}

pub fn parse_program_named(text: &str, file: &str) -> Result<Program, ParseError> {
    let mut p = Parser::new(text, file)?;
    p.program()
}

/// Parses a single formula; a trailing `.` is allowed.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, "<formula>")?;
    let f = p.formula()?;
    p.eat_if(TokKind::Dot);
    p.expect_end()?;
    Ok(f)
}

pub(crate) struct Parser {
    toks: Vec<Tok>,
    i: usize,
    file: String,
}

impl Parser {
    pub(crate) fn new(text: &str, file: &str) -> Result<Parser, ParseError> {
        let toks = lex(text).map_err(|(pos, message)| ParseError {
            file: file.to_string(),
            line: pos.line,
            col: pos.col,
            message,
        })?;
        Ok(Parser {
            toks,
            i: 0,
            file: file.to_string(),
        })
    }

    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.i).map(|t| &t.kind)
    }

    pub(crate) fn remaining(&self) -> bool {
        self.i < self.toks.len()
    }

    fn pos(&self) -> Pos {
        self.toks
            .get(self.i)
            .or_else(|| self.toks.last())
            .map(|t| t.pos)
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    fn advance(&mut self) -> Option<TokKind> {
        let t = self.toks.get(self.i).map(|t| t.kind.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    pub(crate) fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let pos = self.pos();
        Err(ParseError {
            file: self.file.clone(),
            line: pos.line,
            col: pos.col,
            message: message.into(),
        })
    }

    fn err_at<T>(&self, pos: Pos, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            file: self.file.clone(),
            line: pos.line,
            col: pos.col,
            message: message.into(),
        })
    }

    pub(crate) fn eat_if(&mut self, kind: TokKind) -> bool {
        if self.peek() == Some(&kind) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, kind: TokKind, what: &str) -> Result<(), ParseError> {
        if self.eat_if(kind) {
            Ok(())
        } else {
            self.err(format!("expected {what}, found {}", self.describe_next()))
        }
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(k) => format!("`{k}`"),
        }
    }

    pub(crate) fn expect_end(&self) -> Result<(), ParseError> {
        if self.peek().is_none() {
            Ok(())
        } else {
            self.err(format!("expected end of input, found {}", self.describe_next()))
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut program = Program::default();
        // Arity clashes are caught as each item lands, with its position.
        let mut sig = Signature::default();
        while self.peek().is_some() {
            let start = self.pos();
            match self.peek() {
                Some(TokKind::DirIntensional) | Some(TokKind::DirExtensional) => {
                    let intensional = matches!(self.peek(), Some(TokKind::DirIntensional));
                    self.advance();
                    let decls = self.declaration_list()?;
                    self.expect(TokKind::Dot, "`.` after directive")?;
                    for (name, arity) in &decls {
                        if let Err(e) = sig.note_pred(name, *arity) {
                            return self.err_at(start, e.to_string());
                        }
                    }
                    if intensional {
                        program.intensional_decl.extend(decls);
                    } else {
                        program.extensional_decl.extend(decls);
                    }
                }
                Some(TokKind::DirUniverse) => {
                    self.advance();
                    let n = match self.advance() {
                        Some(TokKind::Int(n)) if n > 0 => n,
                        _ => return self.err_at(start, "expected a positive universe size"),
                    };
                    self.expect(TokKind::Dot, "`.` after directive")?;
                    program.universe_hint = Some(n);
                }
                Some(TokKind::DirQuery) => {
                    self.advance();
                    let f = self.formula()?;
                    self.expect(TokKind::Dot, "`.` after query")?;
                    if let Err(e) = sig.absorb_formula(&f) {
                        return self.err_at(start, e.to_string());
                    }
                    program.queries.push(f);
                }
                _ => {
                    let rule = self.rule()?;
                    let absorbed = sig
                        .absorb_formula(&rule.head)
                        .and_then(|_| sig.absorb_formula(&rule.body));
                    if let Err(e) = absorbed {
                        return self.err_at(start, e.to_string());
                    }
                    program.rules.push(rule);
                }
            }
        }
        Ok(program)
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let start = self.pos();
        let head = if self.eat_if(TokKind::ColonDash) {
            Formula::Bottom
        } else {
            let mut disjuncts = vec![self.formula()?];
            while self.eat_if(TokKind::Semi) {
                disjuncts.push(self.formula()?);
            }
            let head = Formula::disjoin(disjuncts);
            if self.eat_if(TokKind::Dot) {
                return match Rule::fact(head) {
                    Ok(r) => Ok(r),
                    Err(e) => self.err_at(start, e.to_string()),
                };
            }
            self.expect(TokKind::ColonDash, "`.` or `:-` after rule head")?;
            head
        };
        let mut conjuncts = vec![self.formula()?];
        while self.eat_if(TokKind::Comma) {
            conjuncts.push(self.formula()?);
        }
        self.expect(TokKind::Dot, "`.` after rule body")?;
        match Rule::new(head, Formula::conjoin(conjuncts)) {
            Ok(r) => Ok(r),
            Err(e) => self.err_at(start, e.to_string()),
        }
    }

    fn declaration_list(&mut self) -> Result<Vec<(String, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            let name = match self.advance() {
                Some(TokKind::LIdent(n)) => n,
                _ => return self.err("expected a predicate name"),
            };
            self.expect(TokKind::Slash, "`/` before arity")?;
            let arity = match self.advance() {
                Some(TokKind::Int(n)) => n,
                _ => return self.err("expected an arity"),
            };
            out.push((name, arity));
            if !self.eat_if(TokKind::Comma) {
                return Ok(out);
            }
        }
    }

    /// Full formula: `<->` chain, left-associative, loosest binding.
    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.implication()?;
        while self.eat_if(TokKind::Iff) {
            let rhs = self.implication()?;
            acc = Formula::iff(acc, rhs);
        }
        Ok(acc)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat_if(TokKind::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.eat_if(TokKind::Bar) {
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.primary()?;
        while self.eat_if(TokKind::Amp) {
            let rhs = self.primary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(TokKind::HashTrue) => {
                self.advance();
                Ok(Formula::top())
            }
            Some(TokKind::HashFalse) => {
                self.advance();
                Ok(Formula::Bottom)
            }
            Some(TokKind::KwNot) => {
                self.advance();
                Ok(Formula::not_(self.primary()?))
            }
            Some(TokKind::KwExists) | Some(TokKind::KwForall) => {
                let universal = matches!(self.peek(), Some(TokKind::KwForall));
                self.advance();
                let mut vars = Vec::new();
                while let Some(TokKind::UIdent(_)) = self.peek() {
                    match self.advance() {
                        Some(TokKind::UIdent(v)) => vars.push(v),
                        _ => unreachable!("peeked a variable"),
                    }
                }
                if vars.is_empty() {
                    return self.err("expected at least one variable after quantifier");
                }
                self.expect(TokKind::LParen, "`(` around quantified formula")?;
                let body = self.formula()?;
                self.expect(TokKind::RParen, "`)` closing quantified formula")?;
                Ok(vars.into_iter().rev().fold(body, |f, v| {
                    if universal {
                        Formula::forall(v, f)
                    } else {
                        Formula::exists(v, f)
                    }
                }))
            }
            Some(TokKind::LParen) => {
                self.advance();
                let f = self.formula()?;
                self.expect(TokKind::RParen, "`)`")?;
                Ok(f)
            }
            Some(TokKind::LIdent(_)) | Some(TokKind::UIdent(_)) => {
                let lhs = self.term()?;
                match self.peek() {
                    Some(TokKind::Eq) => {
                        self.advance();
                        Ok(Formula::Eq(lhs, self.term()?))
                    }
                    Some(TokKind::Neq) => {
                        self.advance();
                        Ok(Formula::not_(Formula::Eq(lhs, self.term()?)))
                    }
                    _ => match lhs {
                        Term::App(pred, args) => Ok(Formula::Atom(Atom::new(pred, args))),
                        Term::Var(v) => self.err(format!(
                            "variable `{v}` is not a formula; expected an atom or equality"
                        )),
                    },
                }
            }
            _ => self.err(format!("expected a formula, found {}", self.describe_next())),
        }
    }

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        match self.advance() {
            Some(TokKind::UIdent(v)) => Ok(Term::Var(v)),
            Some(TokKind::LIdent(name)) => {
                if self.eat_if(TokKind::LParen) {
                    let mut args = vec![self.term()?];
                    while self.eat_if(TokKind::Comma) {
                        args.push(self.term()?);
                    }
                    self.expect(TokKind::RParen, "`)` closing argument list")?;
                    Ok(Term::App(name, args))
                } else {
                    Ok(Term::App(name, Vec::new()))
                }
            }
            _ => {
                self.i = self.i.saturating_sub(1);
                self.err(format!("expected a term, found {}", self.describe_next()))
            }
        }
    }

    pub(crate) fn lident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.advance() {
            Some(TokKind::LIdent(n)) => Ok(n),
            _ => {
                self.i = self.i.saturating_sub(1);
                self.err(format!("expected {what}, found {}", self.describe_next()))
            }
        }
    }
}
