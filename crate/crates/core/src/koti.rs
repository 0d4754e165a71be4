//! Tetralemma tuples: their constructions, the quadrant classification of formulas under a
//! pair of valuations, and the tuple-level checks (representatives, exclusivity,
//! exhaustiveness, duality).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::semantics::{eval, Checker, Valuation, Verdict};

/// The tuple constructions. One-generator kinds take `a`; two-generator kinds take `a, b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KotiKind {
    /// `a, ~a`
    Dilemma,
    /// `a, b, ~(a | b)`
    Trilemma10,
    /// `a, ~a, ~(a | ~a)`
    Trilemma11,
    /// `a, ~a, a | ~a, ~(a | ~a)`
    Modified3,
    /// `a, b, a | b, ~(a | b)`
    Modified7,
    /// `a, b, a & b, ~(a & b)`
    Dual12,
    /// `a, ~a, a & ~a, ~(a & ~a)`
    Dual13,
    /// `a & ~b, ~a & b, a & b, ~a & ~b`
    ///
    /// The traditional listing order swaps the last two alternatives; compare against it with
    /// [`TupleOrder::Unordered`].
    Proper14,
}

impl KotiKind {
    pub const ALL: [KotiKind; 8] = [
        KotiKind::Dilemma,
        KotiKind::Trilemma10,
        KotiKind::Trilemma11,
        KotiKind::Modified3,
        KotiKind::Modified7,
        KotiKind::Dual12,
        KotiKind::Dual13,
        KotiKind::Proper14,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KotiKind::Dilemma => "dilemma",
            KotiKind::Trilemma10 => "trilemma10",
            KotiKind::Trilemma11 => "trilemma11",
            KotiKind::Modified3 => "modified3",
            KotiKind::Modified7 => "modified7",
            KotiKind::Dual12 => "dual12",
            KotiKind::Dual13 => "dual13",
            KotiKind::Proper14 => "proper14",
        }
    }

    pub fn generator_count(self) -> usize {
        match self {
            KotiKind::Dilemma | KotiKind::Trilemma11 | KotiKind::Modified3 | KotiKind::Dual13 => 1,
            KotiKind::Trilemma10 | KotiKind::Modified7 | KotiKind::Dual12 | KotiKind::Proper14 => 2,
        }
    }

    pub fn alternative_count(self) -> usize {
        match self {
            KotiKind::Dilemma => 2,
            KotiKind::Trilemma10 | KotiKind::Trilemma11 => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for KotiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KotiKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        KotiKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = KotiKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown kind `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KotiTuple {
    pub kind: KotiKind,
    pub generators: Vec<Formula>,
    pub alternatives: Vec<Formula>,
}

impl KotiTuple {
    pub fn len(&self) -> usize {
        self.alternatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alternatives.is_empty()
    }
}

pub fn build_koti(kind: KotiKind, a: &Formula, b: Option<&Formula>) -> Result<KotiTuple> {
    let got = 1 + usize::from(b.is_some());
    if got != kind.generator_count() {
        return Err(Error::Arity {
            kind: kind.name(),
            expected: kind.generator_count(),
            got,
        });
    }
    let a = a.clone();
    let not_a = || a.clone().not();
    let alternatives = match (kind, b) {
        (KotiKind::Dilemma, None) => vec![a.clone(), not_a()],
        (KotiKind::Trilemma11, None) => vec![a.clone(), not_a(), a.clone().or(not_a()).not()],
        (KotiKind::Modified3, None) => vec![
            a.clone(),
            not_a(),
            a.clone().or(not_a()),
            a.clone().or(not_a()).not(),
        ],
        (KotiKind::Dual13, None) => vec![
            a.clone(),
            not_a(),
            a.clone().and(not_a()),
            a.clone().and(not_a()).not(),
        ],
        (KotiKind::Trilemma10, Some(b)) => {
            vec![a.clone(), b.clone(), a.clone().or(b.clone()).not()]
        }
        (KotiKind::Modified7, Some(b)) => vec![
            a.clone(),
            b.clone(),
            a.clone().or(b.clone()),
            a.clone().or(b.clone()).not(),
        ],
        (KotiKind::Dual12, Some(b)) => vec![
            a.clone(),
            b.clone(),
            a.clone().and(b.clone()),
            a.clone().and(b.clone()).not(),
        ],
        (KotiKind::Proper14, Some(b)) => vec![
            a.clone().and(b.clone().not()),
            not_a().and(b.clone()),
            a.clone().and(b.clone()),
            not_a().and(b.clone().not()),
        ],
        _ => unreachable!("arity checked above"),
    };
    let mut generators = vec![a];
    generators.extend(b.cloned());
    Ok(KotiTuple {
        kind,
        generators,
        alternatives,
    })
}

/// Class of a formula under a valuation pair `(v0, v1)` (`L1..L4`) or under a single
/// valuation (`LHalf1`, `LHalf2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    /// `(v0, v1) = (0, 1)`
    L1,
    /// `(1, 0)`
    L2,
    /// `(1, 1)`
    L3,
    /// `(0, 0)`
    L4,
    /// value 0
    LHalf1,
    /// value 1
    LHalf2,
}

impl Quadrant {
    pub const PAIRED: [Quadrant; 4] = [Quadrant::L1, Quadrant::L2, Quadrant::L3, Quadrant::L4];
    pub const SINGLE: [Quadrant; 2] = [Quadrant::LHalf1, Quadrant::LHalf2];

    pub fn from_pair(at_v0: bool, at_v1: bool) -> Self {
        match (at_v0, at_v1) {
            (false, true) => Quadrant::L1,
            (true, false) => Quadrant::L2,
            (true, true) => Quadrant::L3,
            (false, false) => Quadrant::L4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Quadrant::L1 => "L1",
            Quadrant::L2 => "L2",
            Quadrant::L3 => "L3",
            Quadrant::L4 => "L4",
            Quadrant::LHalf1 => "L1/2",
            Quadrant::LHalf2 => "L2/2",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Quadrant {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

pub fn classify_formula(p: &Formula, v0: &Valuation, v1: &Valuation) -> Result<Quadrant> {
    Ok(Quadrant::from_pair(eval(p, v0)?, eval(p, v1)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionClass {
    pub quadrant: Quadrant,
    pub members: Vec<Formula>,
}

/// Every input formula placed in exactly one class; classes are listed in label order and
/// members keep their input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub valuations: Vec<Valuation>,
    pub classes: Vec<PartitionClass>,
}

impl PartitionReport {
    pub fn members(&self, quadrant: Quadrant) -> &[Formula] {
        self.classes
            .iter()
            .find(|c| c.quadrant == quadrant)
            .map_or(&[], |c| &c.members)
    }

    fn with_classes(valuations: Vec<Valuation>, quadrants: &[Quadrant]) -> Self {
        PartitionReport {
            valuations,
            classes: quadrants
                .iter()
                .map(|&quadrant| PartitionClass {
                    quadrant,
                    members: Vec::new(),
                })
                .collect(),
        }
    }

    fn place(&mut self, quadrant: Quadrant, formula: Formula) {
        if let Some(class) = self.classes.iter_mut().find(|c| c.quadrant == quadrant) {
            class.members.push(formula);
        }
    }
}

pub fn partition_report(fs: &[Formula], v0: &Valuation, v1: &Valuation) -> Result<PartitionReport> {
    let mut report = PartitionReport::with_classes(vec![v0.clone(), v1.clone()], &Quadrant::PAIRED);
    for f in fs {
        report.place(classify_formula(f, v0, v1)?, f.clone());
    }
    Ok(report)
}

pub fn dilemma_partition(fs: &[Formula], v: &Valuation) -> Result<PartitionReport> {
    let mut report = PartitionReport::with_classes(vec![v.clone()], &Quadrant::SINGLE);
    for f in fs {
        let quadrant = if eval(f, v)? {
            Quadrant::LHalf2
        } else {
            Quadrant::LHalf1
        };
        report.place(quadrant, f.clone());
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentativeReport {
    pub quadrants: Vec<Quadrant>,
    pub distinct: bool,
}

/// Classifies each alternative under `(v0, v1)`.
///
/// The valuations must witness the construction's hypothesis: for one-generator kinds
/// `a` is 0 at `v0` and 1 at `v1`; for two-generator kinds `(a, b)` is `(0, 1)` at `v0` and
/// `(1, 0)` at `v1`. Anything else is an [`Error::Precondition`].
pub fn check_representatives(
    t: &KotiTuple,
    v0: &Valuation,
    v1: &Valuation,
) -> Result<RepresentativeReport> {
    let a = &t.generators[0];
    match t.generators.get(1) {
        None => {
            if eval(a, v0)? || !eval(a, v1)? {
                return Err(Error::Precondition(format!(
                    "{a} must be 0 at v0 ({v0}) and 1 at v1 ({v1})"
                )));
            }
        }
        Some(b) => {
            let at_v0 = (eval(a, v0)?, eval(b, v0)?);
            let at_v1 = (eval(a, v1)?, eval(b, v1)?);
            if at_v0 != (false, true) || at_v1 != (true, false) {
                return Err(Error::Precondition(format!(
                    "({a}, {b}) must be (0,1) at v0 ({v0}) and (1,0) at v1 ({v1})"
                )));
            }
        }
    }
    let quadrants = t
        .alternatives
        .iter()
        .map(|alt| classify_formula(alt, v0, v1))
        .collect::<Result<Vec<_>>>()?;
    let distinct = quadrants
        .iter()
        .enumerate()
        .all(|(i, q)| !quadrants[..i].contains(q));
    Ok(RepresentativeReport {
        quadrants,
        distinct,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionVerdict {
    pub holds: bool,
    /// First jointly satisfiable pair of alternatives, 1-based.
    pub offending: Option<(usize, usize)>,
    pub witness: Option<Valuation>,
}

/// Whether every pair of distinct alternatives is jointly unsatisfiable.
pub fn mutual_exclusion(t: &KotiTuple, checker: &Checker) -> Result<ExclusionVerdict> {
    let alts = &t.alternatives;
    for i in 0..alts.len() {
        for j in i + 1..alts.len() {
            let both = alts[i].clone().and(alts[j].clone());
            if let Some(witness) = checker.find(&both, true)? {
                return Ok(ExclusionVerdict {
                    holds: false,
                    offending: Some((i + 1, j + 1)),
                    witness: Some(witness),
                });
            }
        }
    }
    Ok(ExclusionVerdict {
        holds: true,
        offending: None,
        witness: None,
    })
}

/// Whether the disjunction of all alternatives is a tautology.
pub fn exhaustiveness(t: &KotiTuple, checker: &Checker) -> Result<Verdict> {
    let disjunction = t
        .alternatives
        .iter()
        .cloned()
        .reduce(Formula::or)
        .expect("tuples have at least two alternatives");
    Ok(match checker.find(&disjunction, false)? {
        Some(v) => Verdict::refuted(v),
        None => Verdict::holds(),
    })
}

/// Denial of every alternative, in order.
pub fn negate_tuple(t: &KotiTuple) -> Vec<Formula> {
    t.alternatives.iter().cloned().map(Formula::not).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleOrder {
    /// Component `i` against component `i`.
    Ordered,
    /// Some reordering of one side matches the other component-wise.
    Unordered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleVerdict {
    pub holds: bool,
    /// 1-based index of the first non-equivalent component (ordered comparison only).
    pub component: Option<usize>,
    pub counterexample: Option<Valuation>,
}

impl TupleVerdict {
    fn holds() -> Self {
        TupleVerdict {
            holds: true,
            component: None,
            counterexample: None,
        }
    }
}

/// Component-wise classical equivalence of two tuples.
pub fn tuples_equivalent(
    xs: &[Formula],
    ys: &[Formula],
    order: TupleOrder,
    checker: &Checker,
) -> Result<TupleVerdict> {
    if xs.len() != ys.len() {
        return Ok(TupleVerdict {
            holds: false,
            component: None,
            counterexample: None,
        });
    }
    match order {
        TupleOrder::Ordered => {
            for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
                let verdict = checker.equivalent(x, y)?;
                if !verdict.holds {
                    return Ok(TupleVerdict {
                        holds: false,
                        component: Some(i + 1),
                        counterexample: verdict.counterexample,
                    });
                }
            }
            Ok(TupleVerdict::holds())
        }
        TupleOrder::Unordered => {
            let mut matches = vec![vec![false; ys.len()]; xs.len()];
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    matches[i][j] = checker.equivalent(x, y)?.holds;
                }
            }
            let mut used = vec![false; ys.len()];
            Ok(TupleVerdict {
                holds: has_matching(&matches, 0, &mut used),
                component: None,
                counterexample: None,
            })
        }
    }
}

fn has_matching(matches: &[Vec<bool>], row: usize, used: &mut [bool]) -> bool {
    if row == matches.len() {
        return true;
    }
    for col in 0..used.len() {
        if matches[row][col] && !used[col] {
            used[col] = true;
            if has_matching(matches, row + 1, used) {
                return true;
            }
            used[col] = false;
        }
    }
    false
}

/// Whether denying every alternative of the dual tuple of `~a, ~b` gives, component-wise,
/// the modified tuple of `a, b`.
pub fn duality_check(a: &Formula, b: &Formula, checker: &Checker) -> Result<TupleVerdict> {
    let dual = build_koti(KotiKind::Dual12, &a.clone().not(), Some(&b.clone().not()))?;
    let modified = build_koti(KotiKind::Modified7, a, Some(b))?;
    tuples_equivalent(
        &negate_tuple(&dual),
        &modified.alternatives,
        TupleOrder::Ordered,
        checker,
    )
}
