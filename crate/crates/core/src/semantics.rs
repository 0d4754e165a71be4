//! Two-valued semantics: valuations, evaluation, and decision procedures by exhaustive
//! enumeration of the valuations of the letters that occur.
//!
//! Every procedure that reports a witness or counterexample reports the first qualifying
//! valuation in binary-counting order (first letter most significant, 0 before 1).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::{Formula, SentenceLetter};

pub const DEFAULT_MAX_LETTERS: usize = 20;

/// A total assignment of truth values to a declared, ordered set of letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    entries: Vec<(SentenceLetter, bool)>,
}

impl Valuation {
    /// Builds a valuation; a letter declared twice is rejected.
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SentenceLetter, bool)>,
    {
        let mut out: Vec<(SentenceLetter, bool)> = Vec::new();
        for (letter, value) in entries {
            if out.iter().any(|(l, _)| *l == letter) {
                return Err(Error::InvalidValuation(format!(
                    "letter {letter} assigned twice"
                )));
            }
            out.push((letter, value));
        }
        Ok(Valuation { entries: out })
    }

    pub fn empty() -> Self {
        Valuation {
            entries: Vec::new(),
        }
    }

    pub fn get(&self, letter: &SentenceLetter) -> Result<bool> {
        // Pointer comparison first: letters usually come from the same parse.
        self.entries
            .iter()
            .find(|(l, _)| l.same_allocation(letter))
            .or_else(|| self.entries.iter().find(|(l, _)| l == letter))
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::UndeclaredLetter(letter.clone()))
    }

    pub fn letters(&self) -> impl Iterator<Item = &SentenceLetter> {
        self.entries.iter().map(|(l, _)| l)
    }

    pub fn entries(&self) -> &[(SentenceLetter, bool)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn covers(&self, formula: &Formula) -> Result<()> {
        for letter in formula.letters() {
            self.get(&letter)?;
        }
        Ok(())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (letter, value)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{letter}={}", u8::from(*value))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({self})")
    }
}

/// Parses `A=0,B=1`. The empty string is the empty valuation.
impl FromStr for Valuation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Valuation::empty());
        }
        let mut entries = Vec::new();
        for item in s.split(',') {
            let (name, bit) = item.split_once('=').ok_or_else(|| {
                Error::InvalidValuation(format!("`{}` is not LETTER=BIT", item.trim()))
            })?;
            let letter = SentenceLetter::new(name.trim()).map_err(|_| {
                Error::InvalidValuation(format!("`{}` is not a sentence letter", name.trim()))
            })?;
            let value = match bit.trim() {
                "0" => false,
                "1" => true,
                other => return Err(Error::InvalidValuation(format!("`{other}` is not 0 or 1"))),
            };
            entries.push((letter, value));
        }
        Valuation::new(entries)
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (letter, value) in &self.entries {
            map.serialize_entry(letter.name(), &u8::from(*value))?;
        }
        map.end()
    }
}

/// Classical truth value of `formula` under `valuation`.
pub fn eval(formula: &Formula, valuation: &Valuation) -> Result<bool> {
    Ok(match formula {
        Formula::Letter(l) => valuation.get(l)?,
        Formula::Not(x) => !eval(x, valuation)?,
        Formula::And(l, r) => eval(l, valuation)? & eval(r, valuation)?,
        Formula::Or(l, r) => eval(l, valuation)? | eval(r, valuation)?,
        Formula::Implies(l, r) => !eval(l, valuation)? | eval(r, valuation)?,
    })
}

/// All `2^n` valuations of `letters` in binary-counting order.
pub fn enumerate_valuations(letters: &[SentenceLetter], max_letters: usize) -> Result<Valuations> {
    if letters.len() > max_letters {
        return Err(Error::CapExceeded {
            what: "valuation enumeration",
            requested: letters.len(),
            cap: max_letters,
        });
    }
    // The cap is configurable, but a u64 counter bounds it regardless.
    if letters.len() >= 64 {
        return Err(Error::CapExceeded {
            what: "valuation enumeration",
            requested: letters.len(),
            cap: 63,
        });
    }
    Ok(Valuations {
        letters: letters.into(),
        next: 0,
        end: 1u64 << letters.len(),
    })
}

#[derive(Debug, Clone)]
pub struct Valuations {
    letters: Arc<[SentenceLetter]>,
    next: u64,
    end: u64,
}

impl Iterator for Valuations {
    type Item = Valuation;

    fn next(&mut self) -> Option<Valuation> {
        if self.next == self.end {
            return None;
        }
        let index = self.next;
        self.next += 1;
        let n = self.letters.len();
        let entries = self
            .letters
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), (index >> (n - 1 - i)) & 1 == 1))
            .collect();
        Some(Valuation { entries })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Valuations {}

/// Union of the letters of several formulas, in first-occurrence order.
pub fn joint_letters<'a, I>(formulas: I) -> Vec<SentenceLetter>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut out = Vec::new();
    for f in formulas {
        f.collect_letters(&mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SemanticStatus {
    Tautology,
    Contradiction,
    /// Neither; carries the first falsifying and first satisfying valuations.
    Generic {
        falsifying: Valuation,
        satisfying: Valuation,
    },
}

impl SemanticStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SemanticStatus::Tautology => "tautology",
            SemanticStatus::Contradiction => "contradiction",
            SemanticStatus::Generic { .. } => "generic",
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, SemanticStatus::Generic { .. })
    }
}

/// Outcome of a universally quantified check; a failing check names the first
/// valuation that refutes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub counterexample: Option<Valuation>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            holds: true,
            counterexample: None,
        }
    }

    pub fn refuted(counterexample: Valuation) -> Self {
        Verdict {
            holds: false,
            counterexample: Some(counterexample),
        }
    }
}

/// Valuations realizing `(a, b) = (0, 1)` and `(a, b) = (1, 0)` respectively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub v0: Valuation,
    pub v1: Valuation,
}

/// Decision procedures with a cap on the number of letters enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checker {
    pub max_letters: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            max_letters: DEFAULT_MAX_LETTERS,
        }
    }
}

impl Checker {
    pub fn with_max_letters(max_letters: usize) -> Self {
        Checker { max_letters }
    }

    pub fn valuations(&self, letters: &[SentenceLetter]) -> Result<Valuations> {
        enumerate_valuations(letters, self.max_letters)
    }

    pub fn status(&self, formula: &Formula) -> Result<SemanticStatus> {
        let mut falsifying = None;
        let mut satisfying = None;
        for v in self.valuations(&formula.letters())? {
            let slot = if eval(formula, &v)? {
                &mut satisfying
            } else {
                &mut falsifying
            };
            if slot.is_none() {
                *slot = Some(v);
            }
            if falsifying.is_some() && satisfying.is_some() {
                break;
            }
        }
        Ok(match (falsifying, satisfying) {
            (Some(falsifying), Some(satisfying)) => SemanticStatus::Generic {
                falsifying,
                satisfying,
            },
            (None, _) => SemanticStatus::Tautology,
            (Some(_), None) => SemanticStatus::Contradiction,
        })
    }

    pub fn is_tautology(&self, formula: &Formula) -> Result<bool> {
        Ok(self.status(formula)? == SemanticStatus::Tautology)
    }

    pub fn is_contradiction(&self, formula: &Formula) -> Result<bool> {
        Ok(self.status(formula)? == SemanticStatus::Contradiction)
    }

    /// First valuation on which `formula` evaluates to `target`, if any.
    pub fn find(&self, formula: &Formula, target: bool) -> Result<Option<Valuation>> {
        for v in self.valuations(&formula.letters())? {
            if eval(formula, &v)? == target {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    pub fn equivalent(&self, p: &Formula, q: &Formula) -> Result<Verdict> {
        for v in self.valuations(&joint_letters([p, q]))? {
            if eval(p, &v)? != eval(q, &v)? {
                return Ok(Verdict::refuted(v));
            }
        }
        Ok(Verdict::holds())
    }

    pub fn entails(&self, premises: &[Formula], conclusion: &Formula) -> Result<Verdict> {
        let letters = joint_letters(premises.iter().chain(std::iter::once(conclusion)));
        'valuations: for v in self.valuations(&letters)? {
            for p in premises {
                if !eval(p, &v)? {
                    continue 'valuations;
                }
            }
            if !eval(conclusion, &v)? {
                return Ok(Verdict::refuted(v));
            }
        }
        Ok(Verdict::holds())
    }

    /// `Some` iff `a` and `b` are separable (independent).
    pub fn separable(&self, a: &Formula, b: &Formula) -> Result<Option<WitnessPair>> {
        let mut v0 = None;
        let mut v1 = None;
        for v in self.valuations(&joint_letters([a, b]))? {
            match (eval(a, &v)?, eval(b, &v)?) {
                (false, true) if v0.is_none() => v0 = Some(v),
                (true, false) if v1.is_none() => v1 = Some(v),
                _ => {}
            }
            if v0.is_some() && v1.is_some() {
                break;
            }
        }
        Ok(v0.zip(v1).map(|(v0, v1)| WitnessPair { v0, v1 }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn v(s: &str) -> Valuation {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        for s in ["A=0", "A=1"] {
            assert!(eval(&f("A | ~A"), &v(s)).unwrap());
        }
        assert!(eval(&f("A & ~B"), &v("A=1,B=0")).unwrap());
        assert!(!eval(&f("A -> B"), &v("A=1,B=0")).unwrap());
    }

    #[test]
    fn eval_rejects_undeclared_letter() {
        let err = eval(&f("A & B"), &v("A=1")).unwrap_err();
        assert_eq!(
            err,
            Error::UndeclaredLetter(SentenceLetter::new("B").unwrap())
        );
    }

    #[test]
    fn enumeration_order() {
        let letters = f("A & B").letters();
        let all: Vec<String> = enumerate_valuations(&letters, 20)
            .unwrap()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(all, ["A=0,B=0", "A=0,B=1", "A=1,B=0", "A=1,B=1"]);

        let single: Vec<String> = enumerate_valuations(&f("A").letters(), 20)
            .unwrap()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(single, ["A=0", "A=1"]);

        let empty: Vec<Valuation> = enumerate_valuations(&[], 20).unwrap().collect();
        assert_eq!(empty, vec![Valuation::empty()]);
    }

    #[test]
    fn enumeration_cap() {
        let letters = f("A & B & C").letters();
        assert!(matches!(
            enumerate_valuations(&letters, 2),
            Err(Error::CapExceeded {
                requested: 3,
                cap: 2,
                ..
            })
        ));
        assert_eq!(enumerate_valuations(&letters, 3).unwrap().len(), 8);
    }

    #[test]
    fn status_examples() {
        let c = Checker::default();
        assert_eq!(
            c.status(&f("A")).unwrap(),
            SemanticStatus::Generic {
                falsifying: v("A=0"),
                satisfying: v("A=1")
            }
        );
        assert_eq!(c.status(&f("A | ~A")).unwrap(), SemanticStatus::Tautology);
        assert_eq!(
            c.status(&f("~(A | ~A)")).unwrap(),
            SemanticStatus::Contradiction
        );
        assert_eq!(
            c.status(&f("A & ~B")).unwrap(),
            SemanticStatus::Generic {
                falsifying: v("A=0,B=0"),
                satisfying: v("A=1,B=0")
            }
        );
    }

    #[test]
    fn status_respects_cap() {
        let c = Checker::with_max_letters(1);
        assert!(matches!(
            c.status(&f("A & B")),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn equivalence_examples() {
        let c = Checker::default();
        assert!(c.equivalent(&f("A & ~A"), &f("~(A | ~A)")).unwrap().holds);
        assert!(c.equivalent(&f("~(A & ~A)"), &f("A | ~A")).unwrap().holds);
        assert_eq!(
            c.equivalent(&f("A"), &f("B")).unwrap(),
            Verdict::refuted(v("A=0,B=1"))
        );
    }

    #[test]
    fn entailment_examples() {
        let c = Checker::default();
        assert!(c.entails(&[f("A & B")], &f("A | B")).unwrap().holds);
        assert!(
            c.entails(&[f("~A"), f("~B")], &f("~(A | B)"))
                .unwrap()
                .holds
        );
        assert_eq!(
            c.entails(&[f("A | B")], &f("A & B")).unwrap(),
            Verdict::refuted(v("A=0,B=1"))
        );
    }

    #[test]
    fn entailment_counterexample_is_first_in_order() {
        // Rows of {A,B} satisfying A|B but not A&B: (0,1) and (1,0); the first is (0,1).
        let c = Checker::default();
        let verdict = c.entails(&[f("A | B")], &f("A & B")).unwrap();
        assert_eq!(verdict.counterexample.unwrap().to_string(), "A=0,B=1");
        // Restricting to A rows only leaves (1,0).
        let verdict = c.entails(&[f("A | B"), f("A")], &f("A & B")).unwrap();
        assert_eq!(verdict.counterexample.unwrap().to_string(), "A=1,B=0");
    }

    #[test]
    fn entailment_without_premises_is_validity() {
        let c = Checker::default();
        assert!(c.entails(&[], &f("A | ~A")).unwrap().holds);
        assert!(!c.entails(&[], &f("A")).unwrap().holds);
    }

    #[test]
    fn separability_examples() {
        let c = Checker::default();
        let pair = c.separable(&f("A"), &f("B")).unwrap().unwrap();
        assert_eq!((pair.v0, pair.v1), (v("A=0,B=1"), v("A=1,B=0")));
        let pair = c.separable(&f("A"), &f("~A")).unwrap().unwrap();
        assert_eq!((pair.v0, pair.v1), (v("A=0"), v("A=1")));
        assert_eq!(c.separable(&f("A"), &f("A | B")).unwrap(), None);
    }

    #[test]
    fn valuation_parsing() {
        assert_eq!(v("A=0, B=1").to_string(), "A=0,B=1");
        assert_eq!(v("").len(), 0);
        for bad in ["A", "A=2", "a=1", "A=1,A=0", "A=1,,B=0"] {
            assert!(bad.parse::<Valuation>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn valuation_serializes_as_ordered_map() {
        assert_eq!(
            serde_json::to_string(&v("B=1,A=0")).unwrap(),
            r#"{"B":1,"A":0}"#
        );
    }
}
