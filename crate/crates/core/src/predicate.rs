//! Monadic predicate formulas evaluated over small finite models.
//!
//! Syntax extends the propositional grammar with unary atoms `F(x)` and quantifiers
//! `forall x. <body>` / `exists x. <body>`; a quantifier body extends as far right as
//! possible. Predicates are uppercase-initial, variables lowercase-initial.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::{Formula, SentenceLetter};
use crate::koti::{build_koti, KotiKind};
use crate::lexer::{Cursor, TokenKind};

pub const DEFAULT_MAX_DOMAIN: usize = 4;
pub const DEFAULT_MAX_CELLS: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MonadicFormula {
    Atom {
        predicate: Arc<str>,
        variable: Arc<str>,
    },
    Not(Arc<MonadicFormula>),
    And(Arc<MonadicFormula>, Arc<MonadicFormula>),
    Or(Arc<MonadicFormula>, Arc<MonadicFormula>),
    Implies(Arc<MonadicFormula>, Arc<MonadicFormula>),
    ForAll(Arc<str>, Arc<MonadicFormula>),
    Exists(Arc<str>, Arc<MonadicFormula>),
}

impl MonadicFormula {
    pub fn atom(predicate: &str, variable: &str) -> Self {
        MonadicFormula::Atom {
            predicate: Arc::from(predicate),
            variable: Arc::from(variable),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        MonadicFormula::Not(Arc::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        MonadicFormula::And(Arc::new(self), Arc::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        MonadicFormula::Or(Arc::new(self), Arc::new(rhs))
    }

    pub fn implies(self, rhs: Self) -> Self {
        MonadicFormula::Implies(Arc::new(self), Arc::new(rhs))
    }

    pub fn forall(variable: &str, body: Self) -> Self {
        MonadicFormula::ForAll(Arc::from(variable), Arc::new(body))
    }

    pub fn exists(variable: &str, body: Self) -> Self {
        MonadicFormula::Exists(Arc::from(variable), Arc::new(body))
    }

    /// Replaces each sentence letter of `f` by the formula bound to it.
    pub fn instantiate(f: &Formula, bindings: &[(SentenceLetter, MonadicFormula)]) -> Result<Self> {
        Ok(match f {
            Formula::Letter(l) => bindings
                .iter()
                .find(|(k, _)| k == l)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::UndeclaredLetter(l.clone()))?,
            Formula::Not(x) => Self::instantiate(x, bindings)?.not(),
            Formula::And(l, r) => {
                Self::instantiate(l, bindings)?.and(Self::instantiate(r, bindings)?)
            }
            Formula::Or(l, r) => {
                Self::instantiate(l, bindings)?.or(Self::instantiate(r, bindings)?)
            }
            Formula::Implies(l, r) => {
                Self::instantiate(l, bindings)?.implies(Self::instantiate(r, bindings)?)
            }
        })
    }

    /// Predicate names in first-occurrence order.
    pub fn predicates(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_predicates(&mut out);
        out
    }

    fn collect_predicates(&self, out: &mut Vec<String>) {
        match self {
            MonadicFormula::Atom { predicate, .. } => {
                if !out.iter().any(|p| **p == **predicate) {
                    out.push(predicate.to_string());
                }
            }
            MonadicFormula::Not(x)
            | MonadicFormula::ForAll(_, x)
            | MonadicFormula::Exists(_, x) => x.collect_predicates(out),
            MonadicFormula::And(l, r)
            | MonadicFormula::Or(l, r)
            | MonadicFormula::Implies(l, r) => {
                l.collect_predicates(out);
                r.collect_predicates(out);
            }
        }
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Arc<str>>, out: &mut BTreeSet<String>) {
        match self {
            MonadicFormula::Atom { variable, .. } => {
                if !bound.contains(variable) {
                    out.insert(variable.to_string());
                }
            }
            MonadicFormula::Not(x) => x.collect_free(bound, out),
            MonadicFormula::And(l, r)
            | MonadicFormula::Or(l, r)
            | MonadicFormula::Implies(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            MonadicFormula::ForAll(v, body) | MonadicFormula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_variables().is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, Level::Quantifier);
        out
    }

    fn level(&self) -> Level {
        match self {
            MonadicFormula::Atom { .. } | MonadicFormula::Not(_) => Level::Unary,
            MonadicFormula::And(..) => Level::And,
            MonadicFormula::Or(..) => Level::Or,
            MonadicFormula::Implies(..) => Level::Implies,
            MonadicFormula::ForAll(..) | MonadicFormula::Exists(..) => Level::Quantifier,
        }
    }

    fn render_into(&self, out: &mut String, context: Level) {
        let wrap = self.level() < context;
        if wrap {
            out.push('(');
        }
        match self {
            MonadicFormula::Atom {
                predicate,
                variable,
            } => {
                out.push_str(predicate);
                out.push('(');
                out.push_str(variable);
                out.push(')');
            }
            MonadicFormula::Not(x) => {
                out.push('~');
                x.render_into(out, Level::Unary);
            }
            MonadicFormula::Implies(l, r) => {
                l.render_into(out, Level::Or);
                out.push_str(" -> ");
                r.render_into(out, Level::Implies);
            }
            MonadicFormula::Or(l, r) => {
                l.render_into(out, Level::Or);
                out.push_str(" | ");
                r.render_into(out, Level::And);
            }
            MonadicFormula::And(l, r) => {
                l.render_into(out, Level::And);
                out.push_str(" & ");
                r.render_into(out, Level::Unary);
            }
            MonadicFormula::ForAll(v, body) | MonadicFormula::Exists(v, body) => {
                let keyword = if matches!(self, MonadicFormula::ForAll(..)) {
                    "forall"
                } else {
                    "exists"
                };
                out.push_str(keyword);
                out.push(' ');
                out.push_str(v);
                out.push_str(". ");
                body.render_into(out, Level::Quantifier);
            }
        }
        if wrap {
            out.push(')');
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Quantifier,
    Implies,
    Or,
    And,
    Unary,
}

impl fmt::Display for MonadicFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MonadicFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonadicFormula({})", self.render())
    }
}

impl Serialize for MonadicFormula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl FromStr for MonadicFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_monadic(s)
    }
}

pub fn parse_monadic(source: &str) -> Result<MonadicFormula> {
    let mut cursor = Cursor::new(source)?;
    let formula = parse_implies(&mut cursor)?;
    cursor.finish()?;
    Ok(formula)
}

fn parse_implies(cursor: &mut Cursor) -> Result<MonadicFormula> {
    let lhs = parse_or(cursor)?;
    if cursor.eat(&TokenKind::Arrow) {
        Ok(lhs.implies(parse_implies(cursor)?))
    } else {
        Ok(lhs)
    }
}

fn parse_or(cursor: &mut Cursor) -> Result<MonadicFormula> {
    let mut lhs = parse_and(cursor)?;
    while cursor.eat(&TokenKind::Bar) {
        lhs = lhs.or(parse_and(cursor)?);
    }
    Ok(lhs)
}

fn parse_and(cursor: &mut Cursor) -> Result<MonadicFormula> {
    let mut lhs = parse_unary(cursor)?;
    while cursor.eat(&TokenKind::Amp) {
        lhs = lhs.and(parse_unary(cursor)?);
    }
    Ok(lhs)
}

fn is_predicate_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "forall"
        && name != "exists"
}

fn parse_variable(cursor: &mut Cursor) -> Result<String> {
    match cursor.peek().kind.clone() {
        TokenKind::Ident(name) if is_variable_name(&name) => {
            cursor.bump();
            Ok(name)
        }
        _ => Err(cursor.unexpected("a variable")),
    }
}

fn parse_unary(cursor: &mut Cursor) -> Result<MonadicFormula> {
    if cursor.eat(&TokenKind::Tilde) {
        return Ok(parse_unary(cursor)?.not());
    }
    match cursor.peek().kind.clone() {
        TokenKind::Ident(word) if word == "forall" || word == "exists" => {
            cursor.bump();
            let variable = parse_variable(cursor)?;
            cursor.expect(TokenKind::Dot)?;
            let body = parse_implies(cursor)?;
            Ok(if word == "forall" {
                MonadicFormula::forall(&variable, body)
            } else {
                MonadicFormula::exists(&variable, body)
            })
        }
        TokenKind::Ident(name) if is_predicate_name(&name) => {
            cursor.bump();
            cursor.expect(TokenKind::LParen)?;
            let variable = parse_variable(cursor)?;
            cursor.expect(TokenKind::RParen)?;
            Ok(MonadicFormula::atom(&name, &variable))
        }
        TokenKind::LParen => {
            cursor.bump();
            let inner = parse_implies(cursor)?;
            cursor.expect(TokenKind::RParen)?;
            Ok(inner)
        }
        _ => Err(cursor.unexpected("an atom like `F(x)`, a quantifier, `~` or `(`")),
    }
}

/// A finite domain with an extension for each unary predicate.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteModel {
    domain: Vec<String>,
    /// Extensions as sorted element indices into `domain`.
    extensions: Vec<(String, BTreeSet<usize>)>,
}

impl FiniteModel {
    pub fn new(domain: Vec<String>, extensions: Vec<(String, Vec<String>)>) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::InvalidModel("the domain must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for element in &domain {
            if !seen.insert(element) {
                return Err(Error::InvalidModel(format!(
                    "element {element} listed twice"
                )));
            }
        }
        let mut resolved: Vec<(String, BTreeSet<usize>)> = Vec::new();
        for (predicate, members) in extensions {
            if resolved.iter().any(|(p, _)| *p == predicate) {
                return Err(Error::InvalidModel(format!(
                    "predicate {predicate} given twice"
                )));
            }
            let mut indices = BTreeSet::new();
            for member in members {
                let index = domain
                    .iter()
                    .position(|d| *d == member)
                    .ok_or_else(|| Error::InvalidModel(format!("{member} is not in the domain")))?;
                indices.insert(index);
            }
            resolved.push((predicate, indices));
        }
        Ok(FiniteModel {
            domain,
            extensions: resolved,
        })
    }

    /// Domain `d1..dn` with the given extensions.
    pub fn synthetic(n: usize, extensions: Vec<(String, Vec<String>)>) -> Result<Self> {
        FiniteModel::new(synthetic_domain(n), extensions)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn extension(&self, predicate: &str) -> Option<Vec<&str>> {
        self.extension_indices(predicate)
            .map(|set| set.iter().map(|&i| self.domain[i].as_str()).collect())
    }

    fn extension_indices(&self, predicate: &str) -> Option<&BTreeSet<usize>> {
        self.extensions
            .iter()
            .find(|(p, _)| p == predicate)
            .map(|(_, set)| set)
    }
}

fn synthetic_domain(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("d{i}")).collect()
}

impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "domain {{{}}}", self.domain.join(","))?;
        for (predicate, _) in &self.extensions {
            let members = self.extension(predicate).unwrap_or_default();
            write!(f, "; {predicate}={{{}}}", members.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModel({self})")
    }
}

impl Serialize for FiniteModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("domain", &self.domain)?;
        let extensions: serde_json::Map<String, serde_json::Value> = self
            .extensions
            .iter()
            .map(|(p, _)| {
                (
                    p.clone(),
                    serde_json::json!(self.extension(p).unwrap_or_default()),
                )
            })
            .collect();
        map.serialize_entry("extensions", &extensions)?;
        map.end()
    }
}

pub fn eval_model(f: &MonadicFormula, model: &FiniteModel) -> Result<bool> {
    if let Some(variable) = f.free_variables().into_iter().next() {
        return Err(Error::OpenFormula(variable));
    }
    for predicate in f.predicates() {
        if model.extension_indices(&predicate).is_none() {
            return Err(Error::UnknownPredicate(predicate));
        }
    }
    Ok(eval_in(f, model, &mut Vec::new()))
}

fn eval_in(f: &MonadicFormula, model: &FiniteModel, env: &mut Vec<(Arc<str>, usize)>) -> bool {
    match f {
        MonadicFormula::Atom {
            predicate,
            variable,
        } => {
            // Closedness and predicate coverage are checked before evaluation starts.
            let element = env
                .iter()
                .rev()
                .find(|(v, _)| v == variable)
                .map(|&(_, e)| e)
                .expect("closed formula");
            model
                .extension_indices(predicate)
                .expect("known predicate")
                .contains(&element)
        }
        MonadicFormula::Not(x) => !eval_in(x, model, env),
        MonadicFormula::And(l, r) => eval_in(l, model, env) && eval_in(r, model, env),
        MonadicFormula::Or(l, r) => eval_in(l, model, env) || eval_in(r, model, env),
        MonadicFormula::Implies(l, r) => !eval_in(l, model, env) || eval_in(r, model, env),
        MonadicFormula::ForAll(v, body) => (0..model.size()).all(|e| {
            env.push((v.clone(), e));
            let value = eval_in(body, model, env);
            env.pop();
            value
        }),
        MonadicFormula::Exists(v, body) => (0..model.size()).any(|e| {
            env.push((v.clone(), e));
            let value = eval_in(body, model, env);
            env.pop();
            value
        }),
    }
}

/// All models over `d1..dn` for the given predicates.
///
/// Model `k` puts element `e` in the extension of predicate `p` iff bit `p * n + e` of `k`
/// is set, so `d1` toggles fastest.
pub fn enumerate_models(predicates: &[String], n: usize, max_cells: usize) -> Result<Models> {
    if n == 0 {
        return Err(Error::InvalidModel("the domain must be nonempty".into()));
    }
    let cells = predicates.len() * n;
    if cells > max_cells || cells >= 64 {
        return Err(Error::CapExceeded {
            what: "model enumeration (predicates x domain size)",
            requested: cells,
            cap: max_cells.min(63),
        });
    }
    Ok(Models {
        predicates: predicates.to_vec(),
        domain: synthetic_domain(n),
        next: 0,
        end: 1u64 << cells,
    })
}

#[derive(Debug, Clone)]
pub struct Models {
    predicates: Vec<String>,
    domain: Vec<String>,
    next: u64,
    end: u64,
}

impl Iterator for Models {
    type Item = FiniteModel;

    fn next(&mut self) -> Option<FiniteModel> {
        if self.next == self.end {
            return None;
        }
        let k = self.next;
        self.next += 1;
        let n = self.domain.len();
        let extensions = self
            .predicates
            .iter()
            .enumerate()
            .map(|(p, name)| {
                let members = (0..n).filter(|e| (k >> (p * n + e)) & 1 == 1).collect();
                (name.clone(), members)
            })
            .collect();
        Some(FiniteModel {
            domain: self.domain.clone(),
            extensions,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Models {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinVerdict {
    pub holds: bool,
    pub countermodel: Option<FiniteModel>,
}

/// Exhaustive checks over every model with domain size `1..=max_domain`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelChecker {
    pub max_domain: usize,
    pub max_cells: usize,
}

impl Default for ModelChecker {
    fn default() -> Self {
        ModelChecker {
            max_domain: DEFAULT_MAX_DOMAIN,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

impl ModelChecker {
    pub fn with_max_domain(max_domain: usize) -> Self {
        ModelChecker {
            max_domain,
            ..ModelChecker::default()
        }
    }

    fn models(&self, predicates: &[String]) -> Result<impl Iterator<Item = FiniteModel>> {
        // Validate every size up front so a cap error is reported before any work.
        let per_size = (1..=self.max_domain)
            .map(|n| enumerate_models(predicates, n, self.max_cells))
            .collect::<Result<Vec<_>>>()?;
        Ok(per_size.into_iter().flatten())
    }

    fn require_closed(formulas: &[&MonadicFormula]) -> Result<Vec<String>> {
        let mut predicates = Vec::new();
        for f in formulas {
            if let Some(v) = f.free_variables().into_iter().next() {
                return Err(Error::OpenFormula(v));
            }
            f.collect_predicates(&mut predicates);
        }
        Ok(predicates)
    }

    pub fn equivalent(&self, p: &MonadicFormula, q: &MonadicFormula) -> Result<FinVerdict> {
        let predicates = Self::require_closed(&[p, q])?;
        for model in self.models(&predicates)? {
            if eval_model(p, &model)? != eval_model(q, &model)? {
                return Ok(FinVerdict {
                    holds: false,
                    countermodel: Some(model),
                });
            }
        }
        Ok(FinVerdict {
            holds: true,
            countermodel: None,
        })
    }

    /// First model of exactly `n` elements satisfying `f`.
    pub fn satisfying_model(&self, f: &MonadicFormula, n: usize) -> Result<Option<FiniteModel>> {
        let predicates = Self::require_closed(&[f])?;
        for model in enumerate_models(&predicates, n, self.max_cells)? {
            if eval_model(f, &model)? {
                return Ok(Some(model));
            }
        }
        Ok(None)
    }

    /// Every model in range makes at most one formula true (`exclusive`) and at least one
    /// true (`exhaustive`). Returns the first model violating each property.
    pub fn exclusive_and_exhaustive(
        &self,
        formulas: &[MonadicFormula],
    ) -> Result<(Option<FiniteModel>, Option<FiniteModel>)> {
        let refs: Vec<&MonadicFormula> = formulas.iter().collect();
        let predicates = Self::require_closed(&refs)?;
        let mut not_exclusive = None;
        let mut not_exhaustive = None;
        for model in self.models(&predicates)? {
            let true_count = formulas
                .iter()
                .map(|f| eval_model(f, &model))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|&v| v)
                .count();
            if true_count > 1 && not_exclusive.is_none() {
                not_exclusive = Some(model.clone());
            }
            if true_count == 0 && not_exhaustive.is_none() {
                not_exhaustive = Some(model);
            }
        }
        Ok((not_exclusive, not_exhaustive))
    }
}

pub fn equivalent_fin(p: &MonadicFormula, q: &MonadicFormula, max_n: usize) -> Result<FinVerdict> {
    ModelChecker::with_max_domain(max_n).equivalent(p, q)
}

/// The proper tuple generated by `exists x. F(x)` and `exists x. ~F(x)`, next to the
/// quantifier forms it reduces to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateKoti {
    pub proper: Vec<MonadicFormula>,
    pub reduced: Vec<MonadicFormula>,
}

pub fn predicate_koti() -> PredicateKoti {
    let some_f = MonadicFormula::exists("x", MonadicFormula::atom("F", "x"));
    let some_not_f = MonadicFormula::exists("x", MonadicFormula::atom("F", "x").not());
    let a = SentenceLetter::new("A").expect("valid letter");
    let b = SentenceLetter::new("B").expect("valid letter");
    let schema = build_koti(
        KotiKind::Proper14,
        &Formula::Letter(a.clone()),
        Some(&Formula::Letter(b.clone())),
    )
    .expect("two generators");
    let bindings = [(a, some_f.clone()), (b, some_not_f.clone())];
    let proper = schema
        .alternatives
        .iter()
        .map(|alt| MonadicFormula::instantiate(alt, &bindings).expect("letters are bound"))
        .collect();
    let fx = MonadicFormula::atom("F", "x");
    let reduced = vec![
        MonadicFormula::forall("x", fx.clone()),
        MonadicFormula::forall("x", fx.clone().not()),
        some_f.and(some_not_f),
        MonadicFormula::forall("x", fx.clone().and(fx.not())),
    ];
    PredicateKoti { proper, reduced }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub index: usize,
    pub proper: MonadicFormula,
    pub reduced: MonadicFormula,
    pub verdict: FinVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatisfiabilityAtSize {
    pub size: usize,
    pub witness: Option<FiniteModel>,
}

impl SatisfiabilityAtSize {
    pub fn satisfiable(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub verdict: FinVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateKotiReport {
    pub max_domain: usize,
    pub components: Vec<ComponentCheck>,
    pub fourth_satisfiable: Vec<SatisfiabilityAtSize>,
    pub third_satisfiable: Vec<SatisfiabilityAtSize>,
    pub exclusive_violation: Option<FiniteModel>,
    pub exhaustive_violation: Option<FiniteModel>,
    pub dualities: Vec<NamedCheck>,
    pub redundant_guard: Vec<ComponentCheck>,
}

impl PredicateKotiReport {
    pub fn components_hold(&self) -> bool {
        self.components.iter().all(|c| c.verdict.holds)
    }

    pub fn fourth_never_satisfiable(&self) -> bool {
        self.fourth_satisfiable.iter().all(|s| !s.satisfiable())
    }

    /// The third alternative is satisfiable exactly on domains with at least two elements.
    pub fn third_needs_two_elements(&self) -> bool {
        self.third_satisfiable
            .iter()
            .all(|s| s.satisfiable() == (s.size >= 2))
    }

    pub fn dualities_hold(&self) -> bool {
        self.dualities.iter().all(|d| d.verdict.holds)
    }

    pub fn redundant_guard_holds(&self) -> bool {
        self.redundant_guard.iter().all(|c| c.verdict.holds)
    }

    pub fn passed(&self) -> bool {
        self.components_hold()
            && self.fourth_never_satisfiable()
            && self.third_needs_two_elements()
            && self.exclusive_violation.is_none()
            && self.exhaustive_violation.is_none()
            && self.dualities_hold()
            && self.redundant_guard_holds()
    }
}

/// Runs every check on the predicate instance of the proper tuple over domains of size
/// `1..=max_n`.
pub fn predicate_koti_check(max_n: usize) -> Result<PredicateKotiReport> {
    if max_n < 2 {
        return Err(Error::Precondition(format!(
            "the predicate tuple needs domains of size 2 to separate its third alternative (got max {max_n})"
        )));
    }
    let checker = ModelChecker::with_max_domain(max_n);
    let koti = predicate_koti();

    let components = koti
        .proper
        .iter()
        .zip(&koti.reduced)
        .enumerate()
        .map(|(i, (proper, reduced))| {
            Ok(ComponentCheck {
                index: i + 1,
                proper: proper.clone(),
                reduced: reduced.clone(),
                verdict: checker.equivalent(proper, reduced)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let by_size = |f: &MonadicFormula| {
        (1..=max_n)
            .map(|size| {
                Ok(SatisfiabilityAtSize {
                    size,
                    witness: checker.satisfying_model(f, size)?,
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let third_satisfiable = by_size(&koti.proper[2])?;
    let fourth_satisfiable = by_size(&koti.proper[3])?;

    let (exclusive_violation, exhaustive_violation) =
        checker.exclusive_and_exhaustive(&koti.proper)?;

    let fx = MonadicFormula::atom("F", "x");
    let dualities = [
        (
            "~exists x. ~F(x) == forall x. F(x)",
            MonadicFormula::exists("x", fx.clone().not()).not(),
            MonadicFormula::forall("x", fx.clone()),
        ),
        (
            "~exists x. F(x) == forall x. ~F(x)",
            MonadicFormula::exists("x", fx.clone()).not(),
            MonadicFormula::forall("x", fx.clone().not()),
        ),
    ]
    .into_iter()
    .map(|(name, p, q)| {
        Ok(NamedCheck {
            name: name.to_string(),
            verdict: checker.equivalent(&p, &q)?,
        })
    })
    .collect::<Result<Vec<_>>>()?;

    let guarded = guard_alternatives(&koti.proper);
    let redundant_guard = guarded
        .iter()
        .zip(&koti.proper)
        .enumerate()
        .map(|(i, (g, c))| {
            Ok(ComponentCheck {
                index: i + 1,
                proper: c.clone(),
                reduced: g.clone(),
                verdict: checker.equivalent(g, c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PredicateKotiReport {
        max_domain: max_n,
        components,
        fourth_satisfiable,
        third_satisfiable,
        exclusive_violation,
        exhaustive_violation,
        dualities,
        redundant_guard,
    })
}

/// `C1, C2 & ~C1, C3 & ~C1 & ~C2, ...`: each alternative conjoined with the denial of
/// every earlier one.
pub fn guard_alternatives(alternatives: &[MonadicFormula]) -> Vec<MonadicFormula> {
    alternatives
        .iter()
        .enumerate()
        .map(|(i, c)| {
            alternatives[..i]
                .iter()
                .fold(c.clone(), |acc, earlier| acc.and(earlier.clone().not()))
        })
        .collect()
}
