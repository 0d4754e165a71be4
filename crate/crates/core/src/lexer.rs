//! Tokenizer shared by the propositional and monadic predicate grammars.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    Dot,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("`{name}`"),
            TokenKind::Tilde => "`~`".into(),
            TokenKind::Amp => "`&`".into(),
            TokenKind::Bar => "`|`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub position: usize,
}

pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = source.char_indices().peekable();
    while let Some(&(position, c)) = chars.peek() {
        let kind = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '~' => TokenKind::Tilde,
            '&' => TokenKind::Amp,
            '|' => TokenKind::Bar,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '.' => TokenKind::Dot,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {}
                    other => {
                        return Err(Error::Syntax {
                            position: other.map_or(source.len(), |&(p, _)| p),
                            expected: "`>` after `-`".into(),
                            found: other.map_or("end of input".into(), |&(_, c)| format!("`{c}`")),
                        })
                    }
                }
                TokenKind::Arrow
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(name),
                    position,
                });
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    position,
                    expected: "a formula token".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        chars.next();
        tokens.push(Token { kind, position });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        position: source.len(),
    });
    Ok(tokens)
}

/// Cursor over a token stream with the small amount of lookahead both grammars need.
pub(crate) struct Cursor {
    tokens: Vec<Token>,
    index: usize,
}

impl Cursor {
    pub(crate) fn new(source: &str) -> Result<Self> {
        Ok(Cursor {
            tokens: tokenize(source)?,
            index: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.index]
    }

    pub(crate) fn bump(&mut self) -> Token {
        let token = self.tokens[self.index].clone();
        if token.kind != TokenKind::Eof {
            self.index += 1;
        }
        token
    }

    pub(crate) fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, kind: TokenKind) -> Result<Token> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&kind.describe()))
        }
    }

    pub(crate) fn unexpected(&self, expected: &str) -> Error {
        let token = self.peek();
        Error::Syntax {
            position: token.position,
            expected: expected.to_string(),
            found: token.kind.describe(),
        }
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.peek().kind == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.unexpected("an operator or end of input"))
        }
    }
}
