//! A sorted first-order language over the group vocabulary, with named
//! parameters.
//!
//! Terms are built from variables, `$`-prefixed parameters, the identity
//! `1`, products, inverses (`^-1`) and conjugation (`a ^ b = b^-1 a b`).
//! Formulas are equations and sort-membership atoms closed under `not`,
//! `and`, `or` and sorted quantifiers whose ranges are explicit finite
//! carriers supplied by the caller in a [`SortEnv`].
//!
//! The concrete syntax is ASCII and whitespace-insensitive:
//!
//! ```text
//! formula := ("exists"|"forall") binder ("," binder)* "." formula | disj
//! binder  := ident ":" ident
//! disj    := conj ("or" conj)* ;  conj := lit ("and" lit)*
//! lit     := "not" lit | "(" formula ")" | atom
//! atom    := term "=" term | term "in" ident
//! term    := factor ("*" factor)*
//! factor  := base ("^" base | "^-1")*
//! base    := ident | "$" ident | "1" | "(" term ")"
//! ```

mod parse;

pub use parse::{parse, ParseError};

use crate::sl2::{GroupCtx, GroupElem};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Param(String),
    One,
    Product(Box<Term>, Box<Term>),
    Inverse(Box<Term>),
    /// `Conj(g, x)` denotes `x^-1 g x`.
    Conj(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(Term, Term),
    InSort(Term, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Vec<(String, String)>, Box<Formula>),
    Forall(Vec<(String, String)>, Box<Formula>),
}

/// Finite quantifier ranges, keyed by sort name. Sequences are deduplicated
/// at insertion, preserving first occurrence.
#[derive(Debug, Clone, Default)]
pub struct SortEnv {
    sorts: BTreeMap<String, Vec<GroupElem>>,
}

impl SortEnv {
    pub fn new() -> SortEnv {
        SortEnv::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, mut carrier: Vec<GroupElem>) {
        let mut seen = std::collections::HashSet::new();
        carrier.retain(|g| seen.insert(g.clone()));
        self.sorts.insert(name.into(), carrier);
    }

    pub fn get(&self, name: &str) -> Option<&[GroupElem]> {
        self.sorts.get(name).map(|v| v.as_slice())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sorts.keys().map(|s| s.as_str())
    }
}

/// Values for the `$name` parameters appearing in a formula.
pub type ParamEnv = BTreeMap<String, GroupElem>;

/// An assignment of group elements to (free or existential) variables.
pub type WitnessAssignment = BTreeMap<String, GroupElem>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
    #[error("unbound parameter `${0}`")]
    UnboundParam(String),
    #[error("unknown sort `{0}`")]
    UnboundSort(String),
    #[error("group operation failed: {0}")]
    Group(String),
}

struct Scope<'a> {
    ctx: &'a GroupCtx,
    sorts: &'a SortEnv,
    params: &'a ParamEnv,
    bindings: Vec<(String, GroupElem)>,
}

impl<'a> Scope<'a> {
    fn lookup(&self, name: &str) -> Option<&GroupElem> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }
}

fn eval_term(term: &Term, scope: &Scope) -> Result<GroupElem, EvalError> {
    match term {
        Term::Var(name) => scope
            .lookup(name)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVar(name.clone())),
        Term::Param(name) => scope
            .params
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::UnboundParam(name.clone())),
        Term::One => Ok(scope.ctx.identity()),
        Term::Product(l, r) => {
            let l = eval_term(l, scope)?;
            let r = eval_term(r, scope)?;
            scope
                .ctx
                .mul(&l, &r)
                .map_err(|e| EvalError::Group(e.to_string()))
        }
        Term::Inverse(t) => Ok(scope.ctx.inv(&eval_term(t, scope)?)),
        Term::Conj(g, x) => {
            let g = eval_term(g, scope)?;
            let x = eval_term(x, scope)?;
            scope
                .ctx
                .conj(&g, &x)
                .map_err(|e| EvalError::Group(e.to_string()))
        }
    }
}

fn eval_formula(f: &Formula, scope: &mut Scope) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(l, r) => Ok(eval_term(l, scope)? == eval_term(r, scope)?),
        Formula::InSort(t, sort) => {
            let value = eval_term(t, scope)?;
            let carrier = scope
                .sorts
                .get(sort)
                .ok_or_else(|| EvalError::UnboundSort(sort.clone()))?;
            Ok(carrier.contains(&value))
        }
        Formula::Not(inner) => Ok(!eval_formula(inner, scope)?),
        Formula::And(l, r) => Ok(eval_formula(l, scope)? && eval_formula(r, scope)?),
        Formula::Or(l, r) => Ok(eval_formula(l, scope)? || eval_formula(r, scope)?),
        Formula::Exists(binders, body) => eval_quantifier(binders, body, scope, false),
        Formula::Forall(binders, body) => eval_quantifier(binders, body, scope, true),
    }
}

fn eval_quantifier(
    binders: &[(String, String)],
    body: &Formula,
    scope: &mut Scope,
    universal: bool,
) -> Result<bool, EvalError> {
    if binders.is_empty() {
        return eval_formula(body, scope);
    }
    let (var, sort) = &binders[0];
    let carrier = scope
        .sorts
        .get(sort)
        .ok_or_else(|| EvalError::UnboundSort(sort.clone()))?
        .to_vec();
    for value in carrier {
        scope.bindings.push((var.clone(), value));
        let inner = eval_quantifier(&binders[1..], body, scope, universal)?;
        scope.bindings.pop();
        if universal != inner {
            return Ok(!universal);
        }
    }
    Ok(universal)
}

/// Tarskian truth over the finite carriers; quantifiers enumerate their sort
/// sequences in stored order, with early exit.
pub fn eval(
    ctx: &GroupCtx,
    f: &Formula,
    sorts: &SortEnv,
    params: &ParamEnv,
    free: &WitnessAssignment,
) -> Result<bool, EvalError> {
    let mut scope = Scope {
        ctx,
        sorts,
        params,
        bindings: free.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
    };
    eval_formula(f, &mut scope)
}

/// Deliberately naive reference evaluator: structural recursion with no
/// short-circuiting — quantifier domains and both operands of every
/// connective are always fully evaluated. Kept independent of [`eval`] so
/// the two can be compared.
pub fn reference_eval(
    ctx: &GroupCtx,
    f: &Formula,
    sorts: &SortEnv,
    params: &ParamEnv,
    free: &WitnessAssignment,
) -> Result<bool, EvalError> {
    fn go(f: &Formula, scope: &mut Scope) -> Result<bool, EvalError> {
        match f {
            Formula::Eq(l, r) => Ok(eval_term(l, scope)? == eval_term(r, scope)?),
            Formula::InSort(t, sort) => {
                let value = eval_term(t, scope)?;
                let carrier = scope
                    .sorts
                    .get(sort)
                    .ok_or_else(|| EvalError::UnboundSort(sort.clone()))?;
                Ok(carrier.contains(&value))
            }
            Formula::Not(inner) => Ok(!go(inner, scope)?),
            Formula::And(l, r) => {
                let lv = go(l, scope)?;
                let rv = go(r, scope)?;
                Ok(lv & rv)
            }
            Formula::Or(l, r) => {
                let lv = go(l, scope)?;
                let rv = go(r, scope)?;
                Ok(lv | rv)
            }
            Formula::Exists(binders, body) => {
                let values = quantifier_values(binders, body, scope)?;
                Ok(values.into_iter().any(|b| b))
            }
            Formula::Forall(binders, body) => {
                let values = quantifier_values(binders, body, scope)?;
                Ok(values.into_iter().all(|b| b))
            }
        }
    }

    fn quantifier_values(
        binders: &[(String, String)],
        body: &Formula,
        scope: &mut Scope,
    ) -> Result<Vec<bool>, EvalError> {
        if binders.is_empty() {
            return Ok(vec![go(body, scope)?]);
        }
        let (var, sort) = &binders[0];
        let carrier = scope
            .sorts
            .get(sort)
            .ok_or_else(|| EvalError::UnboundSort(sort.clone()))?
            .to_vec();
        let mut out = Vec::new();
        for value in carrier {
            scope.bindings.push((var.clone(), value));
            out.extend(quantifier_values(&binders[1..], body, scope)?);
            scope.bindings.pop();
        }
        Ok(out)
    }

    let mut scope = Scope {
        ctx,
        sorts,
        params,
        bindings: free.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
    };
    go(f, &mut scope)
}

/// If `f` is an existential prefix over a single equation `var = t(bound)`,
/// returns the flattened binder list and the image term.
fn image_shape<'f>(f: &'f Formula, var: &str) -> Option<(Vec<(String, String)>, &'f Term)> {
    let mut binders = Vec::new();
    let mut cursor = f;
    while let Formula::Exists(bs, body) = cursor {
        binders.extend(bs.iter().cloned());
        cursor = body;
    }
    if binders.is_empty() {
        return None;
    }
    let Formula::Eq(l, r) = cursor else {
        return None;
    };
    let bound: std::collections::HashSet<&str> =
        binders.iter().map(|(v, _)| v.as_str()).collect();
    let is_var = |t: &Term| matches!(t, Term::Var(v) if v == var);
    let closed = |t: &Term| {
        term_vars(t)
            .iter()
            .all(|v| bound.contains(v.as_str()) && v != var)
    };
    if is_var(l) && closed(r) {
        Some((binders, r))
    } else if is_var(r) && closed(l) {
        Some((binders, l))
    } else {
        None
    }
}

fn term_vars(t: &Term) -> Vec<String> {
    let mut out = Vec::new();
    fn walk(t: &Term, out: &mut Vec<String>) {
        match t {
            Term::Var(v) => out.push(v.clone()),
            Term::Param(_) | Term::One => {}
            Term::Product(l, r) | Term::Conj(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            Term::Inverse(inner) => walk(inner, out),
        }
    }
    walk(t, &mut out);
    out
}

/// Which strategy [`define_set`] used or should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetStrategy {
    /// Evaluate the formula once per candidate.
    Filter,
    /// Forward-enumerate the bound tuples of an existential image formula.
    Image,
}

/// The set `{g in candidates : f(g)}` for a formula with exactly one free
/// variable `var`.
///
/// When the formula is a purely existential prefix over an equation
/// `var = t(bound)`, the set is computed by forward enumeration of the
/// bound tuples instead of a per-candidate search; both strategies return
/// identical sets.
pub fn define_set(
    ctx: &GroupCtx,
    f: &Formula,
    var: &str,
    candidates: &[GroupElem],
    sorts: &SortEnv,
    params: &ParamEnv,
) -> Result<std::collections::BTreeSet<GroupElem>, EvalError> {
    if image_shape(f, var).is_some() {
        define_set_with(ctx, f, var, candidates, sorts, params, SetStrategy::Image)
    } else {
        define_set_with(ctx, f, var, candidates, sorts, params, SetStrategy::Filter)
    }
}

/// [`define_set`] with the strategy forced. Forcing [`SetStrategy::Image`]
/// on a formula that is not an existential image falls back to filtering.
pub fn define_set_with(
    ctx: &GroupCtx,
    f: &Formula,
    var: &str,
    candidates: &[GroupElem],
    sorts: &SortEnv,
    params: &ParamEnv,
    strategy: SetStrategy,
) -> Result<std::collections::BTreeSet<GroupElem>, EvalError> {
    if strategy == SetStrategy::Image {
        if let Some((binders, term)) = image_shape(f, var) {
            let mut image = std::collections::BTreeSet::new();
            let mut scope = Scope {
                ctx,
                sorts,
                params,
                bindings: Vec::new(),
            };
            enumerate_tuples(&binders, &mut scope, &mut |scope| {
                image.insert(eval_term(term, scope)?);
                Ok(())
            })?;
            let candidate_set: std::collections::BTreeSet<_> =
                candidates.iter().cloned().collect();
            return Ok(image.intersection(&candidate_set).cloned().collect());
        }
    }
    let mut out = std::collections::BTreeSet::new();
    for g in candidates {
        let mut free = WitnessAssignment::new();
        free.insert(var.to_string(), g.clone());
        if eval(ctx, f, sorts, params, &free)? {
            out.insert(g.clone());
        }
    }
    Ok(out)
}

fn enumerate_tuples(
    binders: &[(String, String)],
    scope: &mut Scope,
    visit: &mut impl FnMut(&Scope) -> Result<(), EvalError>,
) -> Result<(), EvalError> {
    if binders.is_empty() {
        return visit(scope);
    }
    let (var, sort) = &binders[0];
    let carrier = scope
        .sorts
        .get(sort)
        .ok_or_else(|| EvalError::UnboundSort(sort.clone()))?
        .to_vec();
    for value in carrier {
        scope.bindings.push((var.clone(), value));
        enumerate_tuples(&binders[1..], scope, visit)?;
        scope.bindings.pop();
    }
    Ok(())
}

/// First witness, in enumeration order, of the leading existential prefix
/// of `f`; `None` when the body is never satisfied.
pub fn find_witness(
    ctx: &GroupCtx,
    f: &Formula,
    sorts: &SortEnv,
    params: &ParamEnv,
    free: &WitnessAssignment,
) -> Result<Option<WitnessAssignment>, EvalError> {
    let mut binders = Vec::new();
    let mut cursor = f;
    while let Formula::Exists(bs, body) = cursor {
        binders.extend(bs.iter().cloned());
        cursor = body;
    }
    assert!(
        !binders.is_empty(),
        "find_witness requires an exists-rooted formula"
    );
    let mut scope = Scope {
        ctx,
        sorts,
        params,
        bindings: free.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
    };
    let free_len = scope.bindings.len();
    let mut found = None;
    let body = cursor;
    fn search(
        binders: &[(String, String)],
        body: &Formula,
        scope: &mut Scope,
        free_len: usize,
        found: &mut Option<WitnessAssignment>,
    ) -> Result<bool, EvalError> {
        if binders.is_empty() {
            if eval_formula(body, scope)? {
                *found = Some(
                    scope.bindings[free_len..]
                        .iter()
                        .cloned()
                        .collect::<WitnessAssignment>(),
                );
                return Ok(true);
            }
            return Ok(false);
        }
        let (var, sort) = &binders[0];
        let carrier = scope
            .sorts
            .get(sort)
            .ok_or_else(|| EvalError::UnboundSort(sort.clone()))?
            .to_vec();
        for value in carrier {
            scope.bindings.push((var.clone(), value));
            let hit = search(&binders[1..], body, scope, free_len, found)?;
            scope.bindings.pop();
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
    search(&binders, body, &mut scope, free_len, &mut found)?;
    Ok(found)
}

// ---------------------------------------------------------------------------
// printing

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f)
    }
}

fn write_term(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Product(l, r) => {
            write_term(l, f)?;
            write!(f, " * ")?;
            write_factor(r, f)
        }
        _ => write_factor(t, f),
    }
}

fn write_factor(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Conj(g, x) => {
            write_factor(g, f)?;
            write!(f, " ^ ")?;
            write_base(x, f)
        }
        Term::Inverse(inner) => {
            write_factor(inner, f)?;
            write!(f, " ^-1")
        }
        _ => write_base(t, f),
    }
}

fn write_base(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(v) => write!(f, "{v}"),
        Term::Param(p) => write!(f, "${p}"),
        Term::One => write!(f, "1"),
        _ => {
            write!(f, "(")?;
            write_term(t, f)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f)
    }
}

fn write_formula(fla: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match fla {
        Formula::Exists(binders, body) | Formula::Forall(binders, body) => {
            let kw = if matches!(fla, Formula::Exists(..)) {
                "exists"
            } else {
                "forall"
            };
            write!(f, "{kw} ")?;
            for (i, (v, s)) in binders.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}:{s}")?;
            }
            write!(f, " . ")?;
            write_formula(body, f)
        }
        _ => write_disj(fla, f),
    }
}

fn write_disj(fla: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match fla {
        Formula::Or(l, r) => {
            write_disj(l, f)?;
            write!(f, " or ")?;
            write_conj(r, f)
        }
        _ => write_conj(fla, f),
    }
}

fn write_conj(fla: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match fla {
        Formula::And(l, r) => {
            write_conj(l, f)?;
            write!(f, " and ")?;
            write_lit(r, f)
        }
        _ => write_lit(fla, f),
    }
}

fn write_lit(fla: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match fla {
        Formula::Not(inner) => {
            write!(f, "not ")?;
            write_lit(inner, f)
        }
        Formula::Eq(l, r) => {
            write_term(l, f)?;
            write!(f, " = ")?;
            write_term(r, f)
        }
        Formula::InSort(t, s) => {
            write_term(t, f)?;
            write!(f, " in {s}")
        }
        _ => {
            write!(f, "(")?;
            write_formula(fla, f)?;
            write!(f, ")")
        }
    }
}

// ---------------------------------------------------------------------------
// random generation (used by the round-trip and evaluator-agreement suites)

/// Vocabulary for random formula generation.
pub struct GenVocab {
    pub sorts: Vec<String>,
    pub params: Vec<String>,
    pub free_vars: Vec<String>,
}

/// Generates a random formula of quantifier/connective depth at most
/// `depth`, using only bound variables, the listed free variables and
/// parameters. Suitable both for print/parse round trips and, when paired
/// with an assignment of the free variables, for evaluator comparisons.
pub fn random_formula<R: Rng>(rng: &mut R, vocab: &GenVocab, depth: usize) -> Formula {
    let mut bound = vocab.free_vars.clone();
    gen_formula(rng, vocab, &mut bound, depth)
}

fn gen_formula<R: Rng>(
    rng: &mut R,
    vocab: &GenVocab,
    bound: &mut Vec<String>,
    depth: usize,
) -> Formula {
    let choice = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..6) };
    match choice {
        0 | 1 => {
            let l = gen_term(rng, vocab, bound, depth.min(2));
            if choice == 0 || vocab.sorts.is_empty() {
                let r = gen_term(rng, vocab, bound, depth.min(2));
                Formula::Eq(l, r)
            } else {
                let sort = vocab.sorts[rng.gen_range(0..vocab.sorts.len())].clone();
                Formula::InSort(l, sort)
            }
        }
        2 => Formula::Not(Box::new(gen_formula(rng, vocab, bound, depth - 1))),
        3 => Formula::And(
            Box::new(gen_formula(rng, vocab, bound, depth - 1)),
            Box::new(gen_formula(rng, vocab, bound, depth - 1)),
        ),
        4 => Formula::Or(
            Box::new(gen_formula(rng, vocab, bound, depth - 1)),
            Box::new(gen_formula(rng, vocab, bound, depth - 1)),
        ),
        _ => {
            let n_binders = rng.gen_range(1..=2);
            let mut binders = Vec::new();
            for i in 0..n_binders {
                let var = format!("q{}{}", depth, i);
                let sort = vocab.sorts[rng.gen_range(0..vocab.sorts.len())].clone();
                bound.push(var.clone());
                binders.push((var, sort));
            }
            let body = gen_formula(rng, vocab, bound, depth - 1);
            for _ in 0..n_binders {
                bound.pop();
            }
            if rng.gen_bool(0.5) {
                Formula::Exists(binders, Box::new(body))
            } else {
                Formula::Forall(binders, Box::new(body))
            }
        }
    }
}

fn gen_term<R: Rng>(
    rng: &mut R,
    vocab: &GenVocab,
    bound: &[String],
    depth: usize,
) -> Term {
    let atom_only = depth == 0;
    let choice = if atom_only { rng.gen_range(0..3) } else { rng.gen_range(0..6) };
    match choice {
        0 => {
            if bound.is_empty() {
                Term::One
            } else {
                Term::Var(bound[rng.gen_range(0..bound.len())].clone())
            }
        }
        1 => {
            if vocab.params.is_empty() {
                Term::One
            } else {
                Term::Param(vocab.params[rng.gen_range(0..vocab.params.len())].clone())
            }
        }
        2 => Term::One,
        3 => Term::Product(
            Box::new(gen_term(rng, vocab, bound, depth - 1)),
            Box::new(gen_term(rng, vocab, bound, depth - 1)),
        ),
        4 => Term::Inverse(Box::new(gen_term(rng, vocab, bound, depth - 1))),
        _ => Term::Conj(
            Box::new(gen_term(rng, vocab, bound, depth - 1)),
            Box::new(gen_term(rng, vocab, bound, depth - 1)),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ProductRing;
    use crate::sl2::QuotientKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5_ctx() -> GroupCtx {
        GroupCtx::new(
            ProductRing::from_primes(&[(5, 1)]).unwrap(),
            QuotientKind::Trivial,
        )
    }

    fn basic_envs(ctx: &GroupCtx) -> (SortEnv, ParamEnv) {
        let ring = ctx.ring();
        let group = ctx.enumerate().unwrap();
        let torus: Vec<_> = ring
            .units()
            .iter()
            .map(|l| ctx.h(l).unwrap())
            .collect();
        let unipotents: Vec<_> = ring.elements().iter().map(|l| ctx.u(l)).collect();
        let mut sorts = SortEnv::new();
        sorts.insert("G", group);
        sorts.insert("H", torus);
        sorts.insert("U", unipotents);
        let mut params = ParamEnv::new();
        params.insert("u".into(), ctx.u1().clone());
        params.insert("v".into(), ctx.v1().clone());
        params.insert("h".into(), ctx.h_tau().clone());
        params.insert("w".into(), ctx.weyl().clone());
        (sorts, params)
    }

    #[test]
    fn parse_examples() {
        let f = parse("exists x:H . g = $u ^ x").unwrap();
        assert_eq!(
            f,
            Formula::Exists(
                vec![("x".into(), "H".into())],
                Box::new(Formula::Eq(
                    Term::Var("g".into()),
                    Term::Conj(
                        Box::new(Term::Param("u".into())),
                        Box::new(Term::Var("x".into()))
                    )
                ))
            )
        );
        assert!(matches!(
            parse("forall g:G . $h * g = g * $h").unwrap(),
            Formula::Forall(..)
        ));
        let err = parse("g = ").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.found.contains("end of input"), "{err}");
    }

    #[test]
    fn parse_error_positions() {
        let err = parse("exists x:H\n. g = )").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(!err.expected.is_empty());
    }

    #[test]
    fn print_parse_is_identity_on_examples() {
        for text in [
            "exists x:H . g = $u ^ x",
            "forall g:G . $h * g = g * $h",
            "exists x:H, y:H, s:S . g = $u ^ x * ($u ^ y) ^-1 * s",
            "not x = 1 and (x = y or y = 1)",
            "x in U",
            "g = ($u * $v) ^-1",
            "(exists x:H . x = 1) or g = 1",
        ] {
            let ast = parse(text).unwrap();
            let printed = ast.to_string();
            let reparsed = parse(&printed).unwrap();
            assert_eq!(ast, reparsed, "text: {text} printed: {printed}");
        }
    }

    #[test]
    fn print_parse_roundtrip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let vocab = GenVocab {
            sorts: vec!["G".into(), "H".into(), "U".into()],
            params: vec!["u".into(), "h".into()],
            free_vars: vec!["g".into()],
        };
        for _ in 0..2000 {
            let ast = random_formula(&mut rng, &vocab, 4);
            let printed = ast.to_string();
            let reparsed =
                parse(&printed).unwrap_or_else(|e| panic!("{e} while parsing `{printed}`"));
            assert_eq!(ast, reparsed, "printed: {printed}");
        }
    }

    #[test]
    fn eval_examples() {
        let ctx = f5_ctx();
        let (sorts, mut params) = basic_envs(&ctx);
        let free = WitnessAssignment::new();

        // identity is central
        params.insert("h".into(), ctx.identity());
        let f = parse("forall g:G . $h * g = g * $h").unwrap();
        assert!(eval(&ctx, &f, &sorts, &params, &free).unwrap());

        // h(2) is not central
        params.insert("h".into(), ctx.h(&ctx.ring().scalar(2)).unwrap());
        assert!(!eval(&ctx, &f, &sorts, &params, &free).unwrap());

        // u is a member of U
        let f = parse("exists y:U . y = $u").unwrap();
        params.insert("u".into(), ctx.u1().clone());
        assert!(eval(&ctx, &f, &sorts, &params, &free).unwrap());
    }

    #[test]
    fn eval_binding_errors() {
        let ctx = f5_ctx();
        let (sorts, params) = basic_envs(&ctx);
        let free = WitnessAssignment::new();
        let f = parse("zz = 1").unwrap();
        assert_eq!(
            eval(&ctx, &f, &sorts, &params, &free).unwrap_err(),
            EvalError::UnboundVar("zz".into())
        );
        let f = parse("$nope = 1").unwrap();
        assert_eq!(
            eval(&ctx, &f, &sorts, &params, &free).unwrap_err(),
            EvalError::UnboundParam("nope".into())
        );
        let f = parse("exists x:NOSORT . x = 1").unwrap();
        assert_eq!(
            eval(&ctx, &f, &sorts, &params, &free).unwrap_err(),
            EvalError::UnboundSort("NOSORT".into())
        );
    }

    #[test]
    fn define_set_examples() {
        let ctx = f5_ctx();
        let (sorts, params) = basic_envs(&ctx);
        let group = ctx.enumerate().unwrap();

        // the singleton {1}
        let f = parse("g = 1").unwrap();
        let set = define_set(&ctx, &f, "g", &group, &sorts, &params).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.contains(&ctx.identity()));

        // commutation with h(tau) defines the torus: 4 elements over F5
        let f = parse("g * $h = $h * g").unwrap();
        let set = define_set(&ctx, &f, "g", &group, &sorts, &params).unwrap();
        assert_eq!(set.len(), 4);
        for lam in ctx.ring().units() {
            assert!(set.contains(&ctx.h(&lam).unwrap()));
        }
    }

    #[test]
    fn define_set_image_matches_filter() {
        let ctx = f5_ctx();
        let (sorts, params) = basic_envs(&ctx);
        let group = ctx.enumerate().unwrap();
        let f = parse("exists x:H, y:H . g = $u ^ x * ($u ^ y) ^-1").unwrap();
        let image =
            define_set_with(&ctx, &f, "g", &group, &sorts, &params, SetStrategy::Image)
                .unwrap();
        let filter =
            define_set_with(&ctx, &f, "g", &group, &sorts, &params, SetStrategy::Filter)
                .unwrap();
        assert_eq!(image, filter);
        assert!(!image.is_empty());
    }

    #[test]
    fn find_witness_examples() {
        let ctx = f5_ctx();
        let (sorts, params) = basic_envs(&ctx);

        // u(4) = u^x has first witness x = h(2): conj scales by 2^2 = 4
        let f = parse("exists x:H . g = $u ^ x").unwrap();
        let mut free = WitnessAssignment::new();
        free.insert("g".into(), ctx.u(&ctx.ring().scalar(4)));
        let w = find_witness(&ctx, &f, &sorts, &params, &free)
            .unwrap()
            .unwrap();
        assert_eq!(w["x"], ctx.h(&ctx.ring().scalar(2)).unwrap());

        // an element outside U has no witness
        free.insert("g".into(), ctx.v(&ctx.ring().scalar(1)));
        assert!(find_witness(&ctx, &f, &sorts, &params, &free)
            .unwrap()
            .is_none());

        // nested exists over an empty sort is absent
        let mut sorts2 = SortEnv::new();
        sorts2.insert("E", Vec::new());
        let f = parse("exists x:E . exists y:E . x = y").unwrap();
        assert!(
            find_witness(&ctx, &f, &sorts2, &params, &WitnessAssignment::new())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn evaluator_agrees_with_reference() {
        let ctx = f5_ctx();
        let (sorts, params) = basic_envs(&ctx);
        let group = sorts.get("G").unwrap().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vocab = GenVocab {
            sorts: vec!["H".into(), "U".into()],
            params: vec!["u".into(), "h".into(), "w".into()],
            free_vars: vec!["g".into()],
        };
        for _ in 0..500 {
            let f = random_formula(&mut rng, &vocab, 3);
            let mut free = WitnessAssignment::new();
            free.insert(
                "g".into(),
                group[rng.gen_range(0..group.len())].clone(),
            );
            let fast = eval(&ctx, &f, &sorts, &params, &free).unwrap();
            let slow = reference_eval(&ctx, &f, &sorts, &params, &free).unwrap();
            assert_eq!(fast, slow, "formula: {f}");
        }
    }

    #[test]
    fn quantifier_order_independent_for_prenex_independent_binders() {
        let ctx = f5_ctx();
        let (sorts, params) = basic_envs(&ctx);
        let free = WitnessAssignment::new();
        let f1 = parse("exists x:H, y:U . x * y = y * x").unwrap();
        let f2 = parse("exists y:U, x:H . x * y = y * x").unwrap();
        assert_eq!(
            eval(&ctx, &f1, &sorts, &params, &free).unwrap(),
            eval(&ctx, &f2, &sorts, &params, &free).unwrap()
        );
    }
}
