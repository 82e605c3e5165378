//! Tokenizer shared by the program, formula, and interpretation parsers.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Tok {
    pub kind: TokKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokKind {
    LIdent(String),
    UIdent(String),
    Int(usize),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Semi,
    ColonDash,
    Arrow,
    Iff,
    Bar,
    Amp,
    Eq,
    Neq,
    Slash,
    KwNot,
    KwExists,
    KwForall,
    HashTrue,
    HashFalse,
    DirIntensional,
    DirExtensional,
    DirUniverse,
    DirQuery,
}

impl fmt::Display for TokKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokKind::LIdent(s) | TokKind::UIdent(s) => write!(f, "{s}"),
            TokKind::Int(n) => write!(f, "{n}"),
            TokKind::LParen => write!(f, "("),
            TokKind::RParen => write!(f, ")"),
            TokKind::LBrace => write!(f, "{{"),
            TokKind::RBrace => write!(f, "}}"),
            TokKind::Comma => write!(f, ","),
            TokKind::Dot => write!(f, "."),
            TokKind::Semi => write!(f, ";"),
            TokKind::ColonDash => write!(f, ":-"),
            TokKind::Arrow => write!(f, "->"),
            TokKind::Iff => write!(f, "<->"),
            TokKind::Bar => write!(f, "|"),
            TokKind::Amp => write!(f, "&"),
            TokKind::Eq => write!(f, "="),
            TokKind::Neq => write!(f, "!="),
            TokKind::Slash => write!(f, "/"),
            TokKind::KwNot => write!(f, "not"),
            TokKind::KwExists => write!(f, "exists"),
            TokKind::KwForall => write!(f, "forall"),
            TokKind::HashTrue => write!(f, "#true"),
            TokKind::HashFalse => write!(f, "#false"),
            TokKind::DirIntensional => write!(f, "#intensional"),
            TokKind::DirExtensional => write!(f, "#extensional"),
            TokKind::DirUniverse => write!(f, "#universe"),
            TokKind::DirQuery => write!(f, "#query"),
        }
    }
}

/// Non-ASCII letters are admitted in identifiers but normalized to an ASCII
/// escape, so downstream output stays plain ASCII.
fn push_normalized(out: &mut String, c: char, first: bool) {
    if c.is_ascii() {
        out.push(c);
    } else if first && c.is_uppercase() {
        out.push_str(&format!("U{:04X}", c as u32));
    } else {
        out.push_str(&format!("u{:04x}", c as u32));
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<Tok>, (Pos, String)> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    loop {
        let pos = Pos { line, col };
        let c = match chars.peek().copied() {
            Some(c) => c,
            None => return Ok(toks),
        };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '%' {
            while let Some(&n) = chars.peek() {
                if n == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let kind = if c.is_alphabetic() {
            let mut name = String::new();
            let upper = c.is_uppercase();
            let mut first = true;
            while let Some(&n) = chars.peek() {
                if n.is_alphanumeric() || n == '_' {
                    push_normalized(&mut name, n, first);
                    first = false;
                    bump!();
                } else {
                    break;
                }
            }
            if upper {
                TokKind::UIdent(name)
            } else {
                match name.as_str() {
                    "not" => TokKind::KwNot,
                    "exists" => TokKind::KwExists,
                    "forall" => TokKind::KwForall,
                    _ => TokKind::LIdent(name),
                }
            }
        } else if c.is_ascii_digit() {
            let mut n = 0usize;
            while let Some(&d) = chars.peek() {
                match d.to_digit(10) {
                    Some(d) => {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(d as usize))
                            .ok_or((pos, "integer literal is too large".to_string()))?;
                        bump!();
                    }
                    None => break,
                }
            }
            TokKind::Int(n)
        } else {
            bump!();
            match c {
                '(' => TokKind::LParen,
                ')' => TokKind::RParen,
                '{' => TokKind::LBrace,
                '}' => TokKind::RBrace,
                ',' => TokKind::Comma,
                '.' => TokKind::Dot,
                ';' => TokKind::Semi,
                '|' => TokKind::Bar,
                '&' => TokKind::Amp,
                '=' => TokKind::Eq,
                '/' => TokKind::Slash,
                ':' => match bump!() {
                    Some('-') => TokKind::ColonDash,
                    _ => return Err((pos, "expected `:-`".to_string())),
                },
                '-' => match bump!() {
                    Some('>') => TokKind::Arrow,
                    _ => return Err((pos, "expected `->`".to_string())),
                },
                '<' => match (bump!(), bump!()) {
                    (Some('-'), Some('>')) => TokKind::Iff,
                    _ => return Err((pos, "expected `<->`".to_string())),
                },
                '!' => match bump!() {
                    Some('=') => TokKind::Neq,
                    _ => return Err((pos, "expected `!=`".to_string())),
                },
                '#' => {
                    let mut word = String::new();
                    while let Some(&n) = chars.peek() {
                        if n.is_ascii_alphabetic() {
                            word.push(n);
                            bump!();
                        } else {
                            break;
                        }
                    }
                    match word.as_str() {
                        "true" => TokKind::HashTrue,
                        "false" => TokKind::HashFalse,
                        "intensional" => TokKind::DirIntensional,
                        "extensional" => TokKind::DirExtensional,
                        "universe" => TokKind::DirUniverse,
                        "query" => TokKind::DirQuery,
                        other => return Err((pos, format!("unknown directive `#{other}`"))),
                    }
                }
                other => return Err((pos, format!("unexpected character `{other}`"))),
            }
        };
        toks.push(Tok { kind, pos });
    }
}
