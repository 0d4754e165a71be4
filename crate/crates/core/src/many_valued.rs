//! Four-valued semantics from pairs of classical valuations.
//!
//! A formula evaluated under two valuations `(v1, v2)` takes one of four bit pairs:
//!
//! | value | pair  |
//! |-------|-------|
//! | `t`   | (1,1) |
//! | `b`   | (1,0) |
//! | `n`   | (0,1) |
//! | `f`   | (0,0) |
//!
//! The pairing connectives act componentwise. Two other semantics are provided for
//! comparison: FDE (the told-true/told-false reading, whose negation fixes `b` and `n`)
//! and B4 (conventional-truth/ultimate-falsity labels, related to the pairing values by a
//! fixed relabeling).

use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::semantics::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FourValue {
    T,
    B,
    N,
    F,
}

impl FourValue {
    /// Row and column order of every rendered table.
    pub const ORDER: [FourValue; 4] = [FourValue::T, FourValue::B, FourValue::N, FourValue::F];

    pub fn from_pair(first: bool, second: bool) -> Self {
        match (first, second) {
            (true, true) => FourValue::T,
            (true, false) => FourValue::B,
            (false, true) => FourValue::N,
            (false, false) => FourValue::F,
        }
    }

    pub fn pair(self) -> (bool, bool) {
        match self {
            FourValue::T => (true, true),
            FourValue::B => (true, false),
            FourValue::N => (false, true),
            FourValue::F => (false, false),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FourValue::T => "t",
            FourValue::B => "b",
            FourValue::N => "n",
            FourValue::F => "f",
        }
    }
}

impl fmt::Display for FourValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for FourValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FourValue::ORDER
            .into_iter()
            .find(|v| v.symbol() == s)
            .ok_or_else(|| format!("unknown truth value `{s}` (expected t, b, n or f)"))
    }
}

impl Serialize for FourValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Not,
    And,
    Or,
    Implies,
}

impl Connective {
    pub const ALL: [Connective; 4] = [
        Connective::Not,
        Connective::Or,
        Connective::And,
        Connective::Implies,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Not => "~",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "->",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Connective::Not => 1,
            _ => 2,
        }
    }

    fn classical(self, x: bool, y: bool) -> bool {
        match self {
            Connective::Not => !x,
            Connective::And => x && y,
            Connective::Or => x || y,
            Connective::Implies => !x || y,
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Connective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "~" | "not" | "neg" => Ok(Connective::Not),
            "&" | "and" => Ok(Connective::And),
            "|" | "or" => Ok(Connective::Or),
            "->" | "implies" | "imp" => Ok(Connective::Implies),
            other => Err(format!(
                "unknown connective `{other}` (expected not, and, or, implies)"
            )),
        }
    }
}

impl Serialize for Connective {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsId {
    Pairing,
    Fde,
    B4,
}

impl SemanticsId {
    pub const ALL: [SemanticsId; 3] = [SemanticsId::Pairing, SemanticsId::Fde, SemanticsId::B4];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsId::Pairing => "pairing",
            SemanticsId::Fde => "fde",
            SemanticsId::B4 => "b4",
        }
    }

    pub fn supports(self, connective: Connective) -> bool {
        !(self == SemanticsId::Fde && connective == Connective::Implies)
    }
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemanticsId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SemanticsId::ALL
            .into_iter()
            .find(|sem| sem.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown semantics `{s}` (expected pairing, fde or b4)"))
    }
}

impl Serialize for SemanticsId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A B4 value: whether a proposition is conventionally true (CT) and whether it is
/// ultimately false (UF).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct B4Label {
    pub ct: bool,
    pub uf: bool,
}

impl B4Label {
    pub const ALL: [B4Label; 4] = [
        B4Label { ct: true, uf: true },
        B4Label {
            ct: true,
            uf: false,
        },
        B4Label {
            ct: false,
            uf: true,
        },
        B4Label {
            ct: false,
            uf: false,
        },
    ];

    /// The fixed correspondence onto pairing values.
    pub fn to_four_value(self) -> FourValue {
        match (self.ct, self.uf) {
            (true, true) => FourValue::B,
            (true, false) => FourValue::T,
            (false, true) => FourValue::F,
            (false, false) => FourValue::N,
        }
    }

    pub fn from_four_value(value: FourValue) -> Self {
        match value {
            FourValue::B => B4Label { ct: true, uf: true },
            FourValue::T => B4Label {
                ct: true,
                uf: false,
            },
            FourValue::F => B4Label {
                ct: false,
                uf: true,
            },
            FourValue::N => B4Label {
                ct: false,
                uf: false,
            },
        }
    }

    /// B4 connectives on labels. CT behaves classically; UF is the dual falsity condition.
    pub fn apply(connective: Connective, x: B4Label, y: B4Label) -> B4Label {
        match connective {
            Connective::Not => B4Label {
                ct: !x.ct,
                uf: !x.uf,
            },
            Connective::And => B4Label {
                ct: x.ct && y.ct,
                uf: x.uf || y.uf,
            },
            Connective::Or => B4Label {
                ct: x.ct || y.ct,
                uf: x.uf && y.uf,
            },
            Connective::Implies => B4Label {
                ct: !x.ct || y.ct,
                uf: !x.uf && y.uf,
            },
        }
    }
}

impl fmt::Display for B4Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", u8::from(self.ct), u8::from(self.uf))
    }
}

/// The encoding of an FDE value as (told true, told false).
fn told(value: FourValue) -> (bool, bool) {
    match value {
        FourValue::T => (true, false),
        FourValue::B => (true, true),
        FourValue::N => (false, false),
        FourValue::F => (false, true),
    }
}

fn untold(told_true: bool, told_false: bool) -> FourValue {
    match (told_true, told_false) {
        (true, false) => FourValue::T,
        (true, true) => FourValue::B,
        (false, false) => FourValue::N,
        (false, true) => FourValue::F,
    }
}

/// Applies `connective` in semantics `sem`. `y` must be present exactly for binary
/// connectives.
pub fn apply4(
    sem: SemanticsId,
    connective: Connective,
    x: FourValue,
    y: Option<FourValue>,
) -> Result<FourValue> {
    if !sem.supports(connective) {
        return Err(Error::ConnectiveNotInSemantics {
            connective: connective.symbol(),
            semantics: sem.name(),
        });
    }
    let y = match (connective.arity(), y) {
        (1, None) => x,
        (2, Some(y)) => y,
        (expected, _) => {
            return Err(Error::OperandCount {
                connective: connective.symbol(),
                expected,
            })
        }
    };
    Ok(match sem {
        SemanticsId::Pairing => {
            let (x1, x2) = x.pair();
            let (y1, y2) = y.pair();
            FourValue::from_pair(connective.classical(x1, y1), connective.classical(x2, y2))
        }
        SemanticsId::Fde => {
            let (xt, xf) = told(x);
            let (yt, yf) = told(y);
            match connective {
                Connective::Not => untold(xf, xt),
                Connective::And => untold(xt && yt, xf || yf),
                Connective::Or => untold(xt || yt, xf && yf),
                Connective::Implies => unreachable!("rejected above"),
            }
        }
        SemanticsId::B4 => {
            let label = B4Label::apply(
                connective,
                B4Label::from_four_value(x),
                B4Label::from_four_value(y),
            );
            label.to_four_value()
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub op: Connective,
    pub x: FourValue,
    pub y: Option<FourValue>,
    pub result: FourValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruthTable4 {
    pub semantics: SemanticsId,
    pub connective: Connective,
    /// Row-major in `t, b, n, f` order.
    pub entries: Vec<TableEntry>,
}

impl TruthTable4 {
    pub fn get(&self, x: FourValue, y: Option<FourValue>) -> Option<FourValue> {
        self.entries
            .iter()
            .find(|e| e.x == x && e.y == y)
            .map(|e| e.result)
    }

    /// Grid layout with a `t b n f` header.
    pub fn render_text(&self) -> String {
        let symbol = self.connective.symbol();
        let width = symbol.len();
        let mut out = String::new();
        let binary = self.connective.arity() == 2;
        if binary {
            out.push_str(&format!("{symbol:<width$} | t b n f\n"));
            out.push_str(&format!("{}+{}\n", "-".repeat(width + 1), "-".repeat(8)));
        } else {
            out.push_str(&format!("{symbol:<width$} |\n"));
            out.push_str(&format!("{}+{}\n", "-".repeat(width + 1), "-".repeat(2)));
        }
        for x in FourValue::ORDER {
            out.push_str(&format!("{:<width$} |", x.symbol()));
            if binary {
                for y in FourValue::ORDER {
                    let cell = self.get(x, Some(y)).expect("binary tables are total");
                    out.push_str(&format!(" {cell}"));
                }
            } else {
                let cell = self.get(x, None).expect("unary tables are total");
                out.push_str(&format!(" {cell}"));
            }
            out.push('\n');
        }
        out
    }

    /// One `(op, x, y, result)` tuple per line; `-` stands for the missing second operand.
    pub fn render_tuples(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                let y = e.y.map_or("-", FourValue::symbol);
                format!("({}, {}, {}, {})\n", e.op, e.x, y, e.result)
            })
            .collect()
    }
}

pub fn full_table(sem: SemanticsId, connective: Connective) -> Result<TruthTable4> {
    let mut entries = Vec::with_capacity(16);
    for x in FourValue::ORDER {
        if connective.arity() == 1 {
            entries.push(TableEntry {
                op: connective,
                x,
                y: None,
                result: apply4(sem, connective, x, None)?,
            });
        } else {
            for y in FourValue::ORDER {
                entries.push(TableEntry {
                    op: connective,
                    x,
                    y: Some(y),
                    result: apply4(sem, connective, x, Some(y))?,
                });
            }
        }
    }
    Ok(TruthTable4 {
        semantics: sem,
        connective,
        entries,
    })
}

/// Two valuations over the same letter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationPair {
    pub v1: Valuation,
    pub v2: Valuation,
}

impl ValuationPair {
    pub fn new(v1: Valuation, v2: Valuation) -> Result<Self> {
        let same = v1.len() == v2.len() && v1.letters().all(|l| v2.get(l).is_ok());
        if !same {
            return Err(Error::InvalidValuation(format!(
                "paired valuations must share their letters ({v1} vs {v2})"
            )));
        }
        Ok(ValuationPair { v1, v2 })
    }
}

pub fn pair_eval(f: &Formula, vp: &ValuationPair) -> Result<FourValue> {
    let (x, y) = eval_both(f, vp)?;
    Ok(FourValue::from_pair(x, y))
}

// Classical evaluation under both valuations in a single traversal.
fn eval_both(f: &Formula, vp: &ValuationPair) -> Result<(bool, bool)> {
    Ok(match f {
        Formula::Letter(l) => (vp.v1.get(l)?, vp.v2.get(l)?),
        Formula::Not(x) => {
            let (a, b) = eval_both(x, vp)?;
            (!a, !b)
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            let ((l1, l2), (r1, r2)) = (eval_both(l, vp)?, eval_both(r, vp)?);
            match f {
                Formula::And(..) => (l1 && r1, l2 && r2),
                Formula::Or(..) => (l1 || r1, l2 || r2),
                _ => (!l1 || r1, !l2 || r2),
            }
        }
    })
}

// Same cells as `apply4(SemanticsId::Pairing, ..)`, minus the operand validation.
fn pairing_cell(c: Connective, x: FourValue, y: FourValue) -> FourValue {
    let ((x1, x2), (y1, y2)) = (x.pair(), y.pair());
    FourValue::from_pair(c.classical(x1, y1), c.classical(x2, y2))
}

/// Evaluates leaves by [`pair_eval`] and folds connectives through the pairing tables.
pub fn table_eval(f: &Formula, vp: &ValuationPair) -> Result<FourValue> {
    fold(f, vp, &mut |g| table_eval(g, vp))
}

fn fold(
    f: &Formula,
    vp: &ValuationPair,
    child: &mut dyn FnMut(&Arc<Formula>) -> Result<FourValue>,
) -> Result<FourValue> {
    Ok(match f {
        Formula::Letter(_) => pair_eval(f, vp)?,
        Formula::Not(x) => {
            let x = child(x)?;
            pairing_cell(Connective::Not, x, x)
        }
        Formula::And(l, r) => pairing_cell(Connective::And, child(l)?, child(r)?),
        Formula::Or(l, r) => pairing_cell(Connective::Or, child(l)?, child(r)?),
        Formula::Implies(l, r) => pairing_cell(Connective::Implies, child(l)?, child(r)?),
    })
}

// Subtree addresses are already well distributed; hashing them again only costs time.
#[derive(Default)]
struct AddressHasher(u64);

impl Hasher for AddressHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = self.0.rotate_left(8) ^ u64::from(b);
        }
    }

    fn write_usize(&mut self, n: usize) {
        self.0 = (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
}

type SubtreeCache = HashMap<*const Formula, FourValue, BuildHasherDefault<AddressHasher>>;

// `table_eval` memoised on shared subtrees; keys are only valid while the corpus is borrowed.
fn table_eval_cached(
    f: &Formula,
    vp: &ValuationPair,
    cache: &mut SubtreeCache,
) -> Result<FourValue> {
    fold(f, vp, &mut |g| {
        if let Some(&v) = cache.get(&Arc::as_ptr(g)) {
            return Ok(v);
        }
        let v = table_eval_cached(g, vp, cache)?;
        cache.insert(Arc::as_ptr(g), v);
        Ok(v)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionalityMismatch {
    pub formula: Formula,
    pub direct: FourValue,
    pub folded: FourValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionalityReport {
    pub checked: usize,
    pub mismatch: Option<CompositionalityMismatch>,
}

impl CompositionalityReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares [`pair_eval`] with [`table_eval`] on every formula of the corpus.
pub fn verify_compositionality<'a, I>(
    corpus: I,
    vp: &ValuationPair,
) -> Result<CompositionalityReport>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut checked = 0;
    let mut cache = SubtreeCache::default();
    for formula in corpus {
        let direct = pair_eval(formula, vp)?;
        let folded = table_eval_cached(formula, vp, &mut cache)?;
        checked += 1;
        if direct != folded {
            return Ok(CompositionalityReport {
                checked,
                mismatch: Some(CompositionalityMismatch {
                    formula: formula.clone(),
                    direct,
                    folded,
                }),
            });
        }
    }
    Ok(CompositionalityReport {
        checked,
        mismatch: None,
    })
}

use FourValue::{B as b_, F as f_, N as n_, T as t_};

/// Transcription of the published pairing tables, rows and columns in `t, b, n, f` order.
pub const REFERENCE_NOT: [FourValue; 4] = [f_, n_, b_, t_];

pub const REFERENCE_OR: [[FourValue; 4]; 4] = [
    [t_, t_, t_, t_],
    [t_, b_, t_, b_],
    [t_, t_, n_, n_],
    [t_, b_, n_, f_],
];

pub const REFERENCE_AND: [[FourValue; 4]; 4] = [
    [t_, b_, n_, f_],
    [b_, b_, f_, f_],
    [n_, f_, n_, f_],
    [f_, f_, f_, f_],
];

pub const REFERENCE_IMPLIES: [[FourValue; 4]; 4] = [
    [t_, b_, n_, f_],
    [t_, t_, f_, f_],
    [t_, b_, t_, b_],
    [t_, t_, t_, t_],
];

pub fn reference_value(
    connective: Connective,
    x: FourValue,
    y: Option<FourValue>,
) -> Option<FourValue> {
    let row = FourValue::ORDER.iter().position(|&v| v == x)?;
    let col = |y: FourValue| FourValue::ORDER.iter().position(|&v| v == y);
    match (connective, y) {
        (Connective::Not, None) => Some(REFERENCE_NOT[row]),
        (Connective::Or, Some(y)) => Some(REFERENCE_OR[row][col(y)?]),
        (Connective::And, Some(y)) => Some(REFERENCE_AND[row][col(y)?]),
        (Connective::Implies, Some(y)) => Some(REFERENCE_IMPLIES[row][col(y)?]),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub x: FourValue,
    pub y: Option<FourValue>,
    pub printed: FourValue,
    pub computed: FourValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableAudit {
    pub connective: Connective,
    pub cells: usize,
    pub mismatches: Vec<CellMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub tables: Vec<TableAudit>,
}

impl AuditReport {
    pub fn mismatch_count(&self) -> usize {
        self.tables.iter().map(|t| t.mismatches.len()).sum()
    }

    pub fn table(&self, connective: Connective) -> Option<&TableAudit> {
        self.tables.iter().find(|t| t.connective == connective)
    }
}

/// Cell-by-cell comparison of the computed pairing tables with the transcribed ones.
pub fn audit_reference_tables() -> AuditReport {
    let tables = Connective::ALL
        .into_iter()
        .map(|connective| {
            let table = full_table(SemanticsId::Pairing, connective)
                .expect("pairing defines every connective");
            let mismatches = table
                .entries
                .iter()
                .filter_map(|e| {
                    let printed =
                        reference_value(connective, e.x, e.y).expect("reference tables are total");
                    (printed != e.result).then_some(CellMismatch {
                        x: e.x,
                        y: e.y,
                        printed,
                        computed: e.result,
                    })
                })
                .collect();
            TableAudit {
                connective,
                cells: table.entries.len(),
                mismatches,
            }
        })
        .collect();
    AuditReport { tables }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDifference {
    pub operands: Vec<FourValue>,
    pub left: FourValue,
    pub right: FourValue,
}

/// Operand combinations on which two semantics disagree, in table order.
pub fn diff_tables(
    left: SemanticsId,
    right: SemanticsId,
    connective: Connective,
) -> Result<Vec<TableDifference>> {
    let lhs = full_table(left, connective)?;
    let rhs = full_table(right, connective)?;
    Ok(lhs
        .entries
        .iter()
        .zip(&rhs.entries)
        .filter(|(l, r)| l.result != r.result)
        .map(|(l, r)| TableDifference {
            operands: std::iter::once(l.x).chain(l.y).collect(),
            left: l.result,
            right: r.result,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct B4Commutation {
    pub connective: Connective,
    pub cells: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct B4Report {
    pub bijective: bool,
    pub connectives: Vec<B4Commutation>,
}

impl B4Report {
    pub fn holds(&self) -> bool {
        self.bijective && self.connectives.iter().all(|c| c.mismatches == 0)
    }
}

/// Checks that relabeling B4 values onto pairing values is a bijection that commutes with
/// every connective.
pub fn b4_correspondence() -> B4Report {
    let images: Vec<FourValue> = B4Label::ALL.iter().map(|l| l.to_four_value()).collect();
    let bijective = FourValue::ORDER.iter().all(|v| images.contains(v))
        && B4Label::ALL
            .iter()
            .all(|&l| B4Label::from_four_value(l.to_four_value()) == l);
    let connectives = Connective::ALL
        .into_iter()
        .map(|connective| {
            let mut cells = 0;
            let mut mismatches = 0;
            let seconds: &[B4Label] = if connective.arity() == 1 {
                &B4Label::ALL[..1]
            } else {
                &B4Label::ALL
            };
            for &x in &B4Label::ALL {
                for &y in seconds {
                    let relabeled = B4Label::apply(connective, x, y).to_four_value();
                    let y_value = (connective.arity() == 2).then(|| y.to_four_value());
                    let pairing =
                        apply4(SemanticsId::Pairing, connective, x.to_four_value(), y_value)
                            .expect("pairing defines every connective");
                    cells += 1;
                    if relabeled != pairing {
                        mismatches += 1;
                    }
                }
            }
            B4Commutation {
                connective,
                cells,
                mismatches,
            }
        })
        .collect();
    B4Report {
        bijective,
        connectives,
    }
}
