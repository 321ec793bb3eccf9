//! Text to [`Formula`]: a hand-rolled lexer and precedence-climbing parser.
//!
//! Errors carry 1-based line/column positions.

use crate::formula::{BinOp, Formula};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Parse error with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: u32,
    pub column: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Character outside the grammar (lexical error).
    UnexpectedChar(char),
    /// A well-lexed token in the wrong place.
    UnexpectedToken { found: String, expected: &'static str },
    /// Input ended while a construct was incomplete.
    UnexpectedEnd { expected: &'static str },
    /// Unmatched `(` or stray `)`.
    UnbalancedParen,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {c:?}")?;
            }
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found}")?;
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {expected}, found end of input")?;
            }
            ParseErrorKind::UnbalancedParen => {
                write!(f, "unbalanced parenthesis")?;
            }
        }
        write!(f, " at line {}, column {}", self.line, self.column)
    }
}

impl core::error::Error for ParseError {}

type Spanned = (Token, u32, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Const(bool),
    Not,
    Op(BinOp),
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => name.clone(),
            Token::Const(b) => if *b { "1" } else { "0" }.to_string(),
            Token::Not => "!".to_string(),
            Token::Op(op) => op.infix_symbol().to_string(),
            Token::LParen => "(".to_string(),
            Token::RParen => ")".to_string(),
        }
    }
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<(Vec<Spanned>, (u32, u32)), ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let Some(c) = self.bump() else {
                return Ok((out, (line, column)));
            };
            let token = match c {
                '(' => Token::LParen,
                ')' => Token::RParen,
                '&' => Token::Op(BinOp::And),
                '|' => Token::Op(BinOp::Or),
                '^' => Token::Op(BinOp::Xor),
                '!' => match self.chars.peek() {
                    Some('&') => {
                        self.bump();
                        Token::Op(BinOp::Nand)
                    }
                    Some('|') => {
                        self.bump();
                        Token::Op(BinOp::Nor)
                    }
                    _ => Token::Not,
                },
                '-' => match self.bump() {
                    Some('>') => Token::Op(BinOp::Impl),
                    _ => {
                        return Err(ParseError {
                            kind: ParseErrorKind::UnexpectedChar('-'),
                            line,
                            column,
                        })
                    }
                },
                '<' => match (self.bump(), self.bump()) {
                    (Some('-'), Some('>')) => Token::Op(BinOp::Equiv),
                    _ => {
                        return Err(ParseError {
                            kind: ParseErrorKind::UnexpectedChar('<'),
                            line,
                            column,
                        })
                    }
                },
                '0' => Token::Const(false),
                '1' => Token::Const(true),
                c if c.is_ascii_lowercase() => {
                    let mut name = String::new();
                    name.push(c);
                    while matches!(self.chars.peek(),
                        Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || *c == '_')
                    {
                        name.push(self.bump().unwrap());
                    }
                    match name.as_str() {
                        "true" => Token::Const(true),
                        "false" => Token::Const(false),
                        _ => Token::Ident(name),
                    }
                }
                other => {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnexpectedChar(other),
                        line,
                        column,
                    })
                }
            };
            out.push((token, line, column));
        }
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (u32, u32),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (u32, u32) {
        self.tokens
            .get(self.pos)
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.here();
        ParseError { kind, line, column }
    }

    fn expr(&mut self, min_prec: u8) -> Result<Formula, ParseError> {
        let mut lhs = self.prefix()?;
        while let Some(Token::Op(op)) = self.peek() {
            let op = *op;
            if op.precedence() < min_prec {
                break;
            }
            self.bump();
            let next_min = if op.is_right_assoc() {
                op.precedence()
            } else {
                op.precedence() + 1
            };
            let rhs = self.expr(next_min)?;
            lhs = Formula::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        let (line, column) = self.here();
        match self.bump() {
            Some(Token::Not) => Ok(Formula::not(self.prefix()?)),
            Some(Token::Ident(name)) => Ok(Formula::Var(name)),
            Some(Token::Const(b)) => Ok(Formula::Const(b)),
            Some(Token::LParen) => {
                let inner = self.expr(0)?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    // report the unmatched opener, not wherever we ran aground
                    _ => Err(ParseError {
                        kind: ParseErrorKind::UnbalancedParen,
                        line,
                        column,
                    }),
                }
            }
            Some(Token::RParen) => Err(ParseError {
                kind: ParseErrorKind::UnbalancedParen,
                line,
                column,
            }),
            Some(token) => Err(ParseError {
                kind: ParseErrorKind::UnexpectedToken {
                    found: token.describe(),
                    expected: "a formula",
                },
                line,
                column,
            }),
            None => Err(ParseError {
                kind: ParseErrorKind::UnexpectedEnd {
                    expected: "a formula",
                },
                line,
                column,
            }),
        }
    }
}

/// Parse a formula from UTF-8 text.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let (tokens, end) = Lexer::new(text).tokens()?;
    let mut parser = Parser { tokens, pos: 0, end };
    let formula = parser.expr(0)?;
    match parser.peek() {
        None => Ok(formula),
        Some(Token::RParen) => Err(parser.err_here(ParseErrorKind::UnbalancedParen)),
        Some(token) => {
            let found = token.describe();
            Err(parser.err_here(ParseErrorKind::UnexpectedToken {
                found,
                expected: "end of input",
            }))
        }
    }
}
