//! Propositional formulas over sentence letters, their concrete syntax and rendering.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! formula := implies
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | atom
//! atom    := LETTER | "(" formula ")"
//! LETTER  := [A-Z][0-9]*
//! ```

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lexer::{Cursor, TokenKind};

/// A sentence letter such as `A` or `B2`.
#[derive(Clone, Eq, PartialOrd, Ord)]
pub struct SentenceLetter(Arc<str>);

impl SentenceLetter {
    pub(crate) fn same_allocation(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Hash for SentenceLetter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl PartialEq for SentenceLetter {
    fn eq(&self, other: &Self) -> bool {
        // Letters cloned from one parse share their allocation.
        self.same_allocation(other) || self.0 == other.0
    }
}

impl SentenceLetter {
    pub fn new(name: &str) -> Result<Self> {
        if is_letter_token(name) {
            Ok(SentenceLetter(Arc::from(name)))
        } else {
            Err(Error::Syntax {
                position: 0,
                expected: "a sentence letter ([A-Z][0-9]*)".into(),
                found: format!("`{name}`"),
            })
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_letter_token(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase()) && chars.all(|c| c.is_ascii_digit())
}

impl fmt::Debug for SentenceLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for SentenceLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for SentenceLetter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// A propositional formula. Subtrees are shared, so cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Letter(SentenceLetter),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn letter(letter: SentenceLetter) -> Self {
        Formula::Letter(letter)
    }

    /// Builds a letter from its name.
    ///
    /// # Panics
    ///
    /// Panics if `name` is not a valid letter token; use [`SentenceLetter::new`] for fallible
    /// construction.
    pub fn atom(name: &str) -> Self {
        match SentenceLetter::new(name) {
            Ok(letter) => Formula::Letter(letter),
            Err(err) => panic!("{err}"),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Arc::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Arc::new(self), Arc::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Arc::new(self), Arc::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Arc::new(self), Arc::new(rhs))
    }

    /// Distinct letters in first-occurrence order (left to right).
    pub fn letters(&self) -> Vec<SentenceLetter> {
        let mut out = Vec::new();
        self.collect_letters(&mut out);
        out
    }

    pub(crate) fn collect_letters(&self, out: &mut Vec<SentenceLetter>) {
        match self {
            Formula::Letter(l) => {
                if !out.contains(l) {
                    out.push(l.clone());
                }
            }
            Formula::Not(x) => x.collect_letters(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
        }
    }

    /// Nesting depth of connectives; a letter has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Letter(_) => 0,
            Formula::Not(x) => 1 + x.depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, Precedence::Implies);
        out
    }

    fn render_into(&self, out: &mut String, context: Precedence) {
        let own = self.precedence();
        let wrap = own < context;
        if wrap {
            out.push('(');
        }
        match self {
            Formula::Letter(l) => out.push_str(l.name()),
            Formula::Not(x) => {
                out.push('~');
                x.render_into(out, Precedence::Unary);
            }
            // -> is right-associative; & and | are left-associative.
            Formula::Implies(l, r) => {
                l.render_into(out, Precedence::Or);
                out.push_str(" -> ");
                r.render_into(out, Precedence::Implies);
            }
            Formula::Or(l, r) => {
                l.render_into(out, Precedence::Or);
                out.push_str(" | ");
                r.render_into(out, Precedence::And);
            }
            Formula::And(l, r) => {
                l.render_into(out, Precedence::And);
                out.push_str(" & ");
                r.render_into(out, Precedence::Unary);
            }
        }
        if wrap {
            out.push(')');
        }
    }

    fn precedence(&self) -> Precedence {
        match self {
            Formula::Letter(_) | Formula::Not(_) => Precedence::Unary,
            Formula::And(..) => Precedence::And,
            Formula::Or(..) => Precedence::Or,
            Formula::Implies(..) => Precedence::Implies,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Precedence {
    Implies,
    Or,
    And,
    Unary,
}

pub fn parse(source: &str) -> Result<Formula> {
    let mut cursor = Cursor::new(source)?;
    let formula = parse_implies(&mut cursor)?;
    cursor.finish()?;
    Ok(formula)
}

pub fn render(formula: &Formula) -> String {
    formula.render()
}

pub fn letters(formula: &Formula) -> Vec<SentenceLetter> {
    formula.letters()
}

fn parse_implies(cursor: &mut Cursor) -> Result<Formula> {
    let lhs = parse_or(cursor)?;
    if cursor.eat(&TokenKind::Arrow) {
        let rhs = parse_implies(cursor)?;
        Ok(lhs.implies(rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_or(cursor: &mut Cursor) -> Result<Formula> {
    let mut lhs = parse_and(cursor)?;
    while cursor.eat(&TokenKind::Bar) {
        lhs = lhs.or(parse_and(cursor)?);
    }
    Ok(lhs)
}

fn parse_and(cursor: &mut Cursor) -> Result<Formula> {
    let mut lhs = parse_unary(cursor)?;
    while cursor.eat(&TokenKind::Amp) {
        lhs = lhs.and(parse_unary(cursor)?);
    }
    Ok(lhs)
}

fn parse_unary(cursor: &mut Cursor) -> Result<Formula> {
    if cursor.eat(&TokenKind::Tilde) {
        return Ok(parse_unary(cursor)?.not());
    }
    match cursor.peek().kind.clone() {
        TokenKind::LParen => {
            cursor.bump();
            let inner = parse_implies(cursor)?;
            cursor.expect(TokenKind::RParen)?;
            Ok(inner)
        }
        TokenKind::Ident(name) if is_letter_token(&name) => {
            cursor.bump();
            Ok(Formula::Letter(SentenceLetter(Arc::from(name.as_str()))))
        }
        _ => Err(cursor.unexpected("a sentence letter, `~` or `(`")),
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", self.render())
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("A")
    }
    fn b() -> Formula {
        Formula::atom("B")
    }
    fn c() -> Formula {
        Formula::atom("C")
    }

    #[test]
    fn parses_contradiction_shape() {
        assert_eq!(parse("A & ~A").unwrap(), a().and(a().not()));
    }

    #[test]
    fn implication_binds_loosest() {
        assert_eq!(parse("A -> B | C").unwrap(), a().implies(b().or(c())));
    }

    #[test]
    fn parses_fourth_alternative() {
        assert_eq!(parse("~(A | ~A)").unwrap(), a().or(a().not()).not());
    }

    #[test]
    fn associativity() {
        assert_eq!(parse("A -> B -> C").unwrap(), a().implies(b().implies(c())));
        assert_eq!(parse("A | B | C").unwrap(), a().or(b()).or(c()));
        assert_eq!(parse("A & B & C").unwrap(), a().and(b()).and(c()));
        assert_eq!(parse("A & B | C").unwrap(), a().and(b()).or(c()));
        assert_eq!(parse("~~A").unwrap(), a().not().not());
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse("  ~( A|~A )").unwrap(), parse("~(A | ~A)").unwrap());
        assert_eq!(parse("A->B").unwrap(), a().implies(b()));
    }

    #[test]
    fn letters_with_digits() {
        let f = parse("A1 & B22").unwrap();
        assert_eq!(
            f.letters().iter().map(|l| l.name()).collect::<Vec<_>>(),
            ["A1", "B22"]
        );
    }

    #[test]
    fn trailing_operator_is_an_error() {
        match parse("A &") {
            Err(Error::Syntax {
                position, found, ..
            }) => {
                assert_eq!(position, 3);
                assert_eq!(found, "end of input");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        for src in [
            "(A | B", "A | B)", "a & B", "AB", "A - B", "", "A B", "A & # B", "()",
        ] {
            assert!(parse(src).is_err(), "{src:?} should not parse");
        }
    }

    #[test]
    fn lowercase_identifier_reports_position() {
        let err = parse("A & b").unwrap_err();
        assert!(matches!(err, Error::Syntax { position: 4, .. }), "{err:?}");
    }

    #[test]
    fn renders_minimal_parentheses() {
        assert_eq!(a().and(a().not()).render(), "A & ~A");
        assert_eq!(a().or(a().not()).not().render(), "~(A | ~A)");
        assert_eq!(a().implies(b().or(c())).render(), "A -> B | C");
        assert_eq!(a().implies(b()).implies(c()).render(), "(A -> B) -> C");
        assert_eq!(a().or(b().or(c())).render(), "A | (B | C)");
        assert_eq!(a().and(b().and(c())).render(), "A & (B & C)");
        assert_eq!(a().or(b()).and(c()).render(), "(A | B) & C");
        assert_eq!(a().not().and(b().not()).render(), "~A & ~B");
        assert_eq!(a().and(b()).not().render(), "~(A & B)");
    }

    #[test]
    fn letters_in_first_occurrence_order() {
        assert_eq!(a().and(b().not()).letters(), vec![a_letter(), b_letter()]);
        assert_eq!(a().or(a().not()).letters(), vec![a_letter()]);
        assert_eq!(
            b().implies(a().implies(b())).letters(),
            vec![b_letter(), a_letter()]
        );
    }

    #[test]
    fn letter_validation() {
        assert!(SentenceLetter::new("Z9").is_ok());
        assert!(SentenceLetter::new("z").is_err());
        assert!(SentenceLetter::new("A9b").is_err());
        assert!(SentenceLetter::new("").is_err());
    }

    fn a_letter() -> SentenceLetter {
        SentenceLetter::new("A").unwrap()
    }
    fn b_letter() -> SentenceLetter {
        SentenceLetter::new("B").unwrap()
    }
}
