//! Hand-rolled lexer and recursive-descent parser for the formula grammar.

use super::{Formula, Term};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at {line}:{col}: found {found}, expected {}", expected.join(", "))]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub found: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Dollar,
    One,
    LParen,
    RParen,
    Star,
    Caret,
    MinusOne,
    Comma,
    Colon,
    Dot,
    Equals,
    Exists,
    Forall,
    And,
    Or,
    Not,
    In,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Dollar => write!(f, "`$`"),
            Tok::One => write!(f, "`1`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::MinusOne => write!(f, "`-1`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::Exists => write!(f, "`exists`"),
            Tok::Forall => write!(f, "`forall`"),
            Tok::And => write!(f, "`and`"),
            Tok::Or => write!(f, "`or`"),
            Tok::Not => write!(f, "`not`"),
            Tok::In => write!(f, "`in`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexeme {
    tok: Tok,
    line: u32,
    col: u32,
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.pos];
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }
}

fn lex(text: &str) -> Result<Vec<Lexeme>, ParseError> {
    let mut s = Scanner {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(ch) = s.peek() {
        let (tline, tcol) = (s.line, s.col);
        if ch.is_whitespace() {
            s.bump();
            continue;
        }
        let tok = match ch {
            '$' => {
                s.bump();
                Tok::Dollar
            }
            '(' => {
                s.bump();
                Tok::LParen
            }
            ')' => {
                s.bump();
                Tok::RParen
            }
            '*' => {
                s.bump();
                Tok::Star
            }
            '^' => {
                s.bump();
                Tok::Caret
            }
            ',' => {
                s.bump();
                Tok::Comma
            }
            ':' => {
                s.bump();
                Tok::Colon
            }
            '.' => {
                s.bump();
                Tok::Dot
            }
            '=' => {
                s.bump();
                Tok::Equals
            }
            '1' => {
                s.bump();
                Tok::One
            }
            '-' => {
                s.bump();
                if s.peek() == Some('1') {
                    s.bump();
                    Tok::MinusOne
                } else {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        found: "`-`".into(),
                        expected: vec!["`-1`".into()],
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(c) = s.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(s.bump());
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "exists" => Tok::Exists,
                    "forall" => Tok::Forall,
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "not" => Tok::Not,
                    "in" => Tok::In,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    found: format!("`{other}`"),
                    expected: vec!["a token".into()],
                });
            }
        };
        out.push(Lexeme {
            tok,
            line: tline,
            col: tcol,
        });
    }
    out.push(Lexeme {
        tok: Tok::Eof,
        line: s.line,
        col: s.col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexeme>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (u32, u32) {
        (self.toks[self.pos].line, self.toks[self.pos].col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            found: self.peek().to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn ident(&mut self, label: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&[label])),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Exists | Tok::Forall => {
                let existential = matches!(self.peek(), Tok::Exists);
                self.bump();
                let mut binders = vec![self.binder()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    binders.push(self.binder()?);
                }
                self.expect(Tok::Dot, "`.`")?;
                let body = Box::new(self.formula()?);
                Ok(if existential {
                    Formula::Exists(binders, body)
                } else {
                    Formula::Forall(binders, body)
                })
            }
            _ => self.disj(),
        }
    }

    fn binder(&mut self) -> Result<(String, String), ParseError> {
        let var = self.ident("a variable name")?;
        self.expect(Tok::Colon, "`:`")?;
        let sort = self.ident("a sort name")?;
        Ok((var, sort))
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conj()?;
            acc = Formula::Or(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.lit()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.lit()?;
            acc = Formula::And(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn lit(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::Not(Box::new(self.lit()?)))
            }
            Tok::LParen => {
                // Either a parenthesized formula or a parenthesized term
                // starting an atom; try the formula reading first and fall
                // back on the atom, keeping whichever error got further.
                let start = self.pos;
                let formula_attempt = (|| {
                    self.bump(); // (
                    let inner = self.formula()?;
                    self.expect(Tok::RParen, "`)`")?;
                    // a parenthesized formula cannot continue as a term
                    match self.peek() {
                        Tok::Equals | Tok::In | Tok::Star | Tok::Caret => {
                            Err(self.error(&["`and`", "`or`", "end of formula"]))
                        }
                        _ => Ok(()),
                    }
                    .map(|_| inner)
                })();
                match formula_attempt {
                    Ok(f) => Ok(f),
                    Err(ferr) => {
                        let fpos = self.pos;
                        self.pos = start;
                        match self.atom() {
                            Ok(a) => Ok(a),
                            Err(aerr) => {
                                Err(if fpos > self.pos { ferr } else { aerr })
                            }
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Equals => {
                self.bump();
                let rhs = self.term()?;
                Ok(Formula::Eq(lhs, rhs))
            }
            Tok::In => {
                self.bump();
                let sort = self.ident("a sort name")?;
                Ok(Formula::InSort(lhs, sort))
            }
            _ => Err(self.error(&["`=`", "`in`"])),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = Term::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.base()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            if *self.peek() == Tok::MinusOne {
                self.bump();
                acc = Term::Inverse(Box::new(acc));
            } else {
                let by = self.base()?;
                acc = Term::Conj(Box::new(acc), Box::new(by));
            }
        }
        Ok(acc)
    }

    fn base(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Tok::Dollar => {
                self.bump();
                let name = self.ident("a parameter name")?;
                Ok(Term::Param(name))
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error(&["an identifier", "`$`", "`1`", "`(`"])),
        }
    }
}

/// Parses a formula in the concrete grammar. Errors carry line, column and
/// an expected-token set.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.formula()?;
    parser.expect(Tok::Eof, "end of input")?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        // ^ binds tighter than *
        let t = parse("x * y ^ z = 1").unwrap();
        assert_eq!(
            t,
            Formula::Eq(
                Term::Product(
                    Box::new(Term::Var("x".into())),
                    Box::new(Term::Conj(
                        Box::new(Term::Var("y".into())),
                        Box::new(Term::Var("z".into()))
                    ))
                ),
                Term::One
            )
        );
        // and binds tighter than or
        let f = parse("x = 1 or y = 1 and z = 1").unwrap();
        assert!(matches!(f, Formula::Or(..)));
    }

    #[test]
    fn conjugation_left_associates() {
        let f = parse("a ^ b ^ c = 1").unwrap();
        let Formula::Eq(lhs, _) = f else { panic!() };
        assert_eq!(
            lhs,
            Term::Conj(
                Box::new(Term::Conj(
                    Box::new(Term::Var("a".into())),
                    Box::new(Term::Var("b".into()))
                )),
                Box::new(Term::Var("c".into()))
            )
        );
    }

    #[test]
    fn inverse_postfix() {
        let f = parse("(x * y) ^-1 = x ^-1 ^ z").unwrap();
        let Formula::Eq(lhs, rhs) = f else { panic!() };
        assert_eq!(
            lhs,
            Term::Inverse(Box::new(Term::Product(
                Box::new(Term::Var("x".into())),
                Box::new(Term::Var("y".into()))
            )))
        );
        assert_eq!(
            rhs,
            Term::Conj(
                Box::new(Term::Inverse(Box::new(Term::Var("x".into())))),
                Box::new(Term::Var("z".into()))
            )
        );
    }

    #[test]
    fn paren_disambiguation() {
        // parenthesized formula
        assert!(matches!(
            parse("(x = y) or z = 1").unwrap(),
            Formula::Or(..)
        ));
        // parenthesized term
        assert!(matches!(
            parse("(x * y) = z").unwrap(),
            Formula::Eq(..)
        ));
        // nested both ways
        assert!(parse("((x = y) or (z * w = 1)) and q = 1").is_ok());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("exists . x = 1").is_err());
        assert!(parse("x = 1 extra").is_err());
        assert!(parse("x ^ - y = 1").is_err());
        assert!(parse("x @ y").is_err());
    }
}
