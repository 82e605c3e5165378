//! FOF token emission with deterministic symbol renaming, plus a minimal
//! grammar checker for the emitted subset. The emitter and the checker
//! share one token vocabulary; the checker re-emits what it parsed and
//! demands the identical token stream back.

use std::collections::BTreeSet;

use indexmap::IndexMap;

use crate::syntax::{as_iff, Formula, Signature, SyntaxError, Term};

use super::TptpError;

/// Deterministic renaming of source symbols into the FOF lexicon.
/// Variables get upper words, predicates and functions lower words, in a
/// single shared namespace per case so distinct source symbols never
/// collide after sanitizing.
pub(super) struct SymbolTable {
    vars: IndexMap<String, String>,
    preds: IndexMap<String, String>,
    funcs: IndexMap<String, String>,
    upper_taken: BTreeSet<String>,
    lower_taken: BTreeSet<String>,
}

impl SymbolTable {
    pub(super) fn build(formulas: &[&Formula]) -> Result<SymbolTable, SyntaxError> {
        let mut table = SymbolTable {
            vars: IndexMap::new(),
            preds: IndexMap::new(),
            funcs: IndexMap::new(),
            upper_taken: BTreeSet::new(),
            lower_taken: BTreeSet::new(),
        };
        for f in formulas {
            let sig = Signature::of_formula(f)?;
            for name in sig.predicates.keys() {
                table.intern_pred(name);
            }
            for name in sig.functions.keys() {
                table.intern_func(name);
            }
            for v in f.all_vars() {
                table.intern_var(&v);
            }
        }
        Ok(table)
    }

    fn intern_var(&mut self, name: &str) {
        if self.vars.contains_key(name) {
            return;
        }
        let mangled = claim(&mut self.upper_taken, upper_candidate(name));
        self.vars.insert(name.to_string(), mangled);
    }

    fn intern_pred(&mut self, name: &str) {
        if self.preds.contains_key(name) {
            return;
        }
        let mangled = claim(&mut self.lower_taken, lower_candidate(name));
        self.preds.insert(name.to_string(), mangled);
    }

    fn intern_func(&mut self, name: &str) {
        if self.funcs.contains_key(name) {
            return;
        }
        let mangled = claim(&mut self.lower_taken, lower_candidate(name));
        self.funcs.insert(name.to_string(), mangled);
    }

    fn var(&self, name: &str) -> String {
        self.vars
            .get(name)
            .cloned()
            .unwrap_or_else(|| upper_candidate(name))
    }

    fn pred(&self, name: &str) -> String {
        self.preds
            .get(name)
            .cloned()
            .unwrap_or_else(|| lower_candidate(name))
    }

    fn func(&self, name: &str) -> String {
        self.funcs
            .get(name)
            .cloned()
            .unwrap_or_else(|| lower_candidate(name))
    }
}

fn sanitize(name: &str) -> String {
    let kept: String = name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect();
    if kept.is_empty() {
        "s".to_string()
    } else {
        kept
    }
}

fn upper_candidate(name: &str) -> String {
    let kept = sanitize(name);
    let mut chars = kept.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => c.to_ascii_uppercase().to_string() + chars.as_str(),
        _ => format!("V{kept}"),
    }
}

fn lower_candidate(name: &str) -> String {
    let kept = sanitize(name);
    let mut chars = kept.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => c.to_ascii_lowercase().to_string() + chars.as_str(),
        _ => format!("s{kept}"),
    }
}

fn claim(taken: &mut BTreeSet<String>, cand: String) -> String {
    if taken.insert(cand.clone()) {
        return cand;
    }
    let mut k = 2usize;
    loop {
        let next = format!("{cand}_{k}");
        if taken.insert(next.clone()) {
            return next;
        }
        k += 1;
    }
}

/// Declaration names live in their own dedup space, sanitized to lower
/// words.
pub(super) fn claim_name(taken: &mut BTreeSet<String>, name: &str) -> String {
    claim(taken, lower_candidate(name))
}

pub(super) fn formula_tokens(f: &Formula, table: &SymbolTable, out: &mut Vec<String>) {
    if f.is_top() {
        out.push("$true".to_string());
        return;
    }
    if let Formula::Implies(l, r) = f {
        if let (Formula::Eq(a, b), Formula::Bottom) = (&**l, &**r) {
            term_tokens(a, table, out);
            out.push("!=".to_string());
            term_tokens(b, table, out);
            return;
        }
    }
    if let Some((a, b)) = as_iff(f) {
        chain_tokens("<=>", &[a, b], table, out);
        return;
    }
    match f {
        Formula::Bottom => out.push("$false".to_string()),
        Formula::Atom(a) => {
            out.push(table.pred(&a.pred));
            if !a.args.is_empty() {
                out.push("(".to_string());
                for (i, t) in a.args.iter().enumerate() {
                    if i > 0 {
                        out.push(",".to_string());
                    }
                    term_tokens(t, table, out);
                }
                out.push(")".to_string());
            }
        }
        Formula::Eq(a, b) => {
            term_tokens(a, table, out);
            out.push("=".to_string());
            term_tokens(b, table, out);
        }
        Formula::And(..) => chain_tokens("&", &f.conjuncts(), table, out),
        Formula::Or(..) => chain_tokens("|", &f.disjuncts(), table, out),
        Formula::Implies(a, b) => chain_tokens("=>", &[a.as_ref(), b.as_ref()], table, out),
        Formula::Forall(..) => quant_tokens("!", f, table, out),
        Formula::Exists(..) => quant_tokens("?", f, table, out),
    }
}

fn chain_tokens(op: &str, items: &[&Formula], table: &SymbolTable, out: &mut Vec<String>) {
    out.push("(".to_string());
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push(op.to_string());
        }
        formula_tokens(item, table, out);
    }
    out.push(")".to_string());
}

fn quant_tokens(q: &str, f: &Formula, table: &SymbolTable, out: &mut Vec<String>) {
    let mut vars = Vec::new();
    let mut body = f;
    loop {
        match (q, body) {
            ("!", Formula::Forall(v, inner)) => {
                vars.push(table.var(v));
                body = inner.as_ref();
            }
            ("?", Formula::Exists(v, inner)) => {
                vars.push(table.var(v));
                body = inner.as_ref();
            }
            _ => break,
        }
    }
    out.push(q.to_string());
    out.push("[".to_string());
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            out.push(",".to_string());
        }
        out.push(v.clone());
    }
    out.push("]".to_string());
    out.push(":".to_string());
    formula_tokens(body, table, out);
}

fn term_tokens(t: &Term, table: &SymbolTable, out: &mut Vec<String>) {
    match t {
        Term::Var(v) => out.push(table.var(v)),
        Term::App(name, args) => {
            out.push(table.func(name));
            if !args.is_empty() {
                out.push("(".to_string());
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(",".to_string());
                    }
                    term_tokens(a, table, out);
                }
                out.push(")".to_string());
            }
        }
    }
}

/// Renders a token stream with canonical spacing: space after commas and
/// colons, spaces around the binary connectives and the equality pair,
/// nothing elsewhere.
pub(super) fn render(tokens: &[String]) -> String {
    let mut text = String::new();
    for (i, tok) in tokens.iter().enumerate() {
        if i > 0 {
            let prev = &tokens[i - 1];
            let spaced = matches!(prev.as_str(), "," | ":" | "&" | "|" | "=>" | "<=>" | "=" | "!=")
                || matches!(tok.as_str(), "&" | "|" | "=>" | "<=>" | "=" | "!=");
            if spaced {
                text.push(' ');
            }
        }
        text.push_str(tok);
    }
    text
}

/// Checks emitted FOF text against the grammar the emitter targets: it
/// lexes, parses every declaration, re-emits the parse, and demands the
/// identical token stream back.
pub fn check_fof(text: &str) -> Result<(), TptpError> {
    let tokens = lex(text)?;
    let mut cur = Cursor {
        toks: &tokens,
        pos: 0,
    };
    let mut decls = Vec::new();
    while !cur.done() {
        decls.push(parse_decl(&mut cur)?);
    }
    if decls.is_empty() {
        return Err(TptpError::Malformed("no declarations".to_string()));
    }
    let mut reemit = Vec::new();
    for d in &decls {
        decl_tokens(d, &mut reemit);
    }
    if reemit != tokens {
        return Err(TptpError::Malformed(
            "re-emitted token stream diverges from the input".to_string(),
        ));
    }
    Ok(())
}

fn lex(text: &str) -> Result<Vec<String>, TptpError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '%' {
            while let Some(&n) = chars.peek() {
                if n == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c.is_ascii_alphanumeric() || c == '_' || c == '$' {
            let mut word = String::new();
            word.push(c);
            chars.next();
            while let Some(&n) = chars.peek() {
                if n.is_ascii_alphanumeric() || n == '_' {
                    word.push(n);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(word);
        } else {
            chars.next();
            match c {
                '(' | ')' | '[' | ']' | ',' | '.' | ':' | '&' | '|' | '?' => {
                    out.push(c.to_string())
                }
                '!' => {
                    if chars.peek() == Some(&'=') {
                        chars.next();
                        out.push("!=".to_string());
                    } else {
                        out.push("!".to_string());
                    }
                }
                '=' => {
                    if chars.peek() == Some(&'>') {
                        chars.next();
                        out.push("=>".to_string());
                    } else {
                        out.push("=".to_string());
                    }
                }
                '<' => {
                    if chars.peek() == Some(&'=') {
                        chars.next();
                        if chars.peek() == Some(&'>') {
                            chars.next();
                            out.push("<=>".to_string());
                        } else {
                            return Err(TptpError::Malformed(
                                "stray `<=` in FOF text".to_string(),
                            ));
                        }
                    } else {
                        return Err(TptpError::Malformed("stray `<` in FOF text".to_string()));
                    }
                }
                other => {
                    return Err(TptpError::Malformed(format!(
                        "unexpected character `{other}`"
                    )))
                }
            }
        }
    }
    Ok(out)
}

enum FofTerm {
    Var(String),
    App(String, Vec<FofTerm>),
}

enum FofNode {
    True,
    False,
    Atom(String, Vec<FofTerm>),
    Eq(FofTerm, FofTerm),
    Neq(FofTerm, FofTerm),
    Chain(String, Vec<FofNode>),
    Quant(String, Vec<String>, Box<FofNode>),
}

struct FofDecl {
    name: String,
    role: String,
    body: FofNode,
}

struct Cursor<'a> {
    toks: &'a [String],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).map(|s| s.as_str())
    }

    fn next(&mut self) -> Result<&'a str, TptpError> {
        let t = self
            .toks
            .get(self.pos)
            .ok_or_else(|| TptpError::Malformed("unexpected end of input".to_string()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: &str) -> Result<(), TptpError> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            Err(TptpError::Malformed(format!(
                "expected `{want}`, found `{got}`"
            )))
        }
    }
}

fn is_lower_word(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_upper_word(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_decl(cur: &mut Cursor) -> Result<FofDecl, TptpError> {
    cur.expect("fof")?;
    cur.expect("(")?;
    let name = cur.next()?.to_string();
    if !is_lower_word(&name) {
        return Err(TptpError::Malformed(format!(
            "declaration name `{name}` is not a lower word"
        )));
    }
    cur.expect(",")?;
    let role = cur.next()?.to_string();
    if role != "axiom" && role != "conjecture" {
        return Err(TptpError::Malformed(format!("unknown role `{role}`")));
    }
    cur.expect(",")?;
    let body = parse_formula(cur)?;
    cur.expect(")")?;
    cur.expect(".")?;
    Ok(FofDecl { name, role, body })
}

fn parse_formula(cur: &mut Cursor) -> Result<FofNode, TptpError> {
    match cur.peek() {
        Some("(") => {
            cur.next()?;
            let first = parse_formula(cur)?;
            let op = cur.next()?.to_string();
            if !matches!(op.as_str(), "&" | "|" | "=>" | "<=>") {
                return Err(TptpError::Malformed(format!(
                    "expected a connective, found `{op}`"
                )));
            }
            let mut items = vec![first, parse_formula(cur)?];
            while cur.peek() == Some(op.as_str()) {
                cur.next()?;
                items.push(parse_formula(cur)?);
            }
            cur.expect(")")?;
            if matches!(op.as_str(), "=>" | "<=>") && items.len() != 2 {
                return Err(TptpError::Malformed(format!(
                    "`{op}` chains are not associative"
                )));
            }
            Ok(FofNode::Chain(op, items))
        }
        Some(q @ ("!" | "?")) => {
            let q = q.to_string();
            cur.next()?;
            cur.expect("[")?;
            let mut vars = Vec::new();
            loop {
                let v = cur.next()?.to_string();
                if !is_upper_word(&v) {
                    return Err(TptpError::Malformed(format!(
                        "bound variable `{v}` is not an upper word"
                    )));
                }
                vars.push(v);
                match cur.next()? {
                    "," => continue,
                    "]" => break,
                    other => {
                        return Err(TptpError::Malformed(format!(
                            "expected `,` or `]`, found `{other}`"
                        )))
                    }
                }
            }
            cur.expect(":")?;
            let body = parse_formula(cur)?;
            Ok(FofNode::Quant(q, vars, Box::new(body)))
        }
        Some("$false") => {
            cur.next()?;
            Ok(FofNode::False)
        }
        Some("$true") => {
            cur.next()?;
            Ok(FofNode::True)
        }
        Some(tok) if is_upper_word(tok) => {
            let lhs = parse_term(cur)?;
            finish_equation(cur, lhs)
        }
        Some(tok) if is_lower_word(tok) => {
            let name = cur.next()?.to_string();
            let args = parse_args(cur)?;
            match cur.peek() {
                Some("=") | Some("!=") => finish_equation(cur, FofTerm::App(name, args)),
                _ => Ok(FofNode::Atom(name, args)),
            }
        }
        Some(other) => Err(TptpError::Malformed(format!(
            "unexpected token `{other}` in formula"
        ))),
        None => Err(TptpError::Malformed("unexpected end of input".to_string())),
    }
}

fn finish_equation(cur: &mut Cursor, lhs: FofTerm) -> Result<FofNode, TptpError> {
    match cur.next()? {
        "=" => Ok(FofNode::Eq(lhs, parse_term(cur)?)),
        "!=" => Ok(FofNode::Neq(lhs, parse_term(cur)?)),
        other => Err(TptpError::Malformed(format!(
            "expected `=` or `!=`, found `{other}`"
        ))),
    }
}

fn parse_args(cur: &mut Cursor) -> Result<Vec<FofTerm>, TptpError> {
    let mut args = Vec::new();
    if cur.peek() != Some("(") {
        return Ok(args);
    }
    cur.next()?;
    loop {
        args.push(parse_term(cur)?);
        match cur.next()? {
            "," => continue,
            ")" => break,
            other => {
                return Err(TptpError::Malformed(format!(
                    "expected `,` or `)`, found `{other}`"
                )))
            }
        }
    }
    Ok(args)
}

fn parse_term(cur: &mut Cursor) -> Result<FofTerm, TptpError> {
    let tok = cur.next()?.to_string();
    if is_upper_word(&tok) {
        Ok(FofTerm::Var(tok))
    } else if is_lower_word(&tok) {
        Ok(FofTerm::App(tok, parse_args(cur)?))
    } else {
        Err(TptpError::Malformed(format!(
            "expected a term, found `{tok}`"
        )))
    }
}

fn decl_tokens(d: &FofDecl, out: &mut Vec<String>) {
    out.push("fof".to_string());
    out.push("(".to_string());
    out.push(d.name.clone());
    out.push(",".to_string());
    out.push(d.role.clone());
    out.push(",".to_string());
    node_tokens(&d.body, out);
    out.push(")".to_string());
    out.push(".".to_string());
}

fn node_tokens(n: &FofNode, out: &mut Vec<String>) {
    match n {
        FofNode::True => out.push("$true".to_string()),
        FofNode::False => out.push("$false".to_string()),
        FofNode::Atom(name, args) => {
            out.push(name.clone());
            fof_args_tokens(args, out);
        }
        FofNode::Eq(a, b) => {
            fof_term_tokens(a, out);
            out.push("=".to_string());
            fof_term_tokens(b, out);
        }
        FofNode::Neq(a, b) => {
            fof_term_tokens(a, out);
            out.push("!=".to_string());
            fof_term_tokens(b, out);
        }
        FofNode::Chain(op, items) => {
            out.push("(".to_string());
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(op.clone());
                }
                node_tokens(item, out);
            }
            out.push(")".to_string());
        }
        FofNode::Quant(q, vars, body) => {
            out.push(q.clone());
            out.push("[".to_string());
            for (i, v) in vars.iter().enumerate() {
                if i > 0 {
                    out.push(",".to_string());
                }
                out.push(v.clone());
            }
            out.push("]".to_string());
            out.push(":".to_string());
            node_tokens(body, out);
        }
    }
}

fn fof_args_tokens(args: &[FofTerm], out: &mut Vec<String>) {
    if args.is_empty() {
        return;
    }
    out.push("(".to_string());
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(",".to_string());
        }
        fof_term_tokens(a, out);
    }
    out.push(")".to_string());
}

fn fof_term_tokens(t: &FofTerm, out: &mut Vec<String>) {
    match t {
        FofTerm::Var(v) => out.push(v.clone()),
        FofTerm::App(name, args) => {
            out.push(name.clone());
            fof_args_tokens(args, out);
        }
    }
}
