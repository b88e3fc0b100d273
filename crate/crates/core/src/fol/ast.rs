//! Function-free first-order syntax: individuals, predicates, terms and formulas.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::TheoryError;

/// A named domain element. Distinct names denote distinct elements
/// (unique-name assumption); names are non-empty and contain no whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Individual(String);

impl Individual {
    pub fn new(name: impl Into<String>) -> Result<Self, TheoryError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(TheoryError::BadIndividualName(name));
        }
        Ok(Individual(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Individual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A predicate symbol with its arity. `(name, arity)` pairs are unique
/// within a theory signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
}

impl Predicate {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Predicate { name: name.into(), arity }
    }
}

/// An argument position: a quantified variable or an individual constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => f.write_str(c),
        }
    }
}

/// A first-order formula over a function-free signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { pred: String, args: Vec<Term> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom { pred: pred.into(), args }
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::ForAll(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Conjunction of a non-empty sequence, folded left to right.
    ///
    /// Returns `None` on an empty iterator: the language has no boolean
    /// constants, so the empty conjunction is the caller's problem.
    pub fn conj(fs: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        fs.into_iter().reduce(Formula::and)
    }

    /// Disjunction of a non-empty sequence, folded left to right.
    pub fn disj(fs: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        fs.into_iter().reduce(Formula::or)
    }

    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Atom { args, .. } => {
                for t in args {
                    if let Term::Var(v) = t {
                        if !bound.iter().any(|b| b == v) && !out.iter().any(|o| o == v) {
                            out.push(v.clone());
                        }
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// True when the formula is a single positive ground atom.
    pub fn is_ground_atom(&self) -> bool {
        match self {
            Formula::Atom { args, .. } => args.iter().all(|t| matches!(t, Term::Const(_))),
            _ => false,
        }
    }

    /// Individual constants, in first-occurrence order (left to right,
    /// depth first). Used to harvest a puzzle's domain from its clues.
    pub fn constants(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom { args, .. } => {
                for t in args {
                    if let Term::Const(c) = t {
                        if !out.iter().any(|o| o == c) {
                            out.push(c.clone());
                        }
                    }
                }
            }
            Formula::Not(f) => f.collect_constants(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_constants(out);
                b.collect_constants(out);
            }
            Formula::ForAll(_, f) | Formula::Exists(_, f) => f.collect_constants(out),
        }
    }

    /// Predicate names used anywhere in the formula.
    pub fn predicates(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.collect_predicates(&mut out);
        out
    }

    fn collect_predicates(&self, out: &mut BTreeSet<(String, usize)>) {
        match self {
            Formula::Atom { pred, args } => {
                out.insert((pred.clone(), args.len()));
            }
            Formula::Not(f) => f.collect_predicates(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_predicates(out);
                b.collect_predicates(out);
            }
            Formula::ForAll(_, f) | Formula::Exists(_, f) => f.collect_predicates(out),
        }
    }

    /// Number of connective and quantifier nodes. The parse-disambiguation
    /// policy prefers the reading with the fewest.
    pub fn connective_count(&self) -> usize {
        match self {
            Formula::Atom { .. } => 0,
            Formula::Not(f) | Formula::ForAll(_, f) | Formula::Exists(_, f) => {
                1 + f.connective_count()
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.connective_count() + b.connective_count(),
        }
    }
}

// Precedence levels for the textual syntax: <-> is loosest, then ->, |, &,
// and unary constructs bind tightest. Quantified bodies always print with
// explicit parentheses so the output re-parses identically under both this
// reader and Prover9/Mace4.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..) | Formula::ForAll(..) | Formula::Exists(..) | Formula::Atom { .. } => 5,
    }
}

// Children on the non-canonical side of an associative operator keep their
// parentheses, so printing is structure-exact: the text re-parses to the
// identical tree. `&` and `|` chain to the left, `->` and `<->` to the
// right, matching the reader.
fn fmt_child(f: &Formula, parent: u8, strict: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(f) < parent || (strict && prec(f) == parent) {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { pred, args } => {
                if args.is_empty() {
                    f.write_str(pred)
                } else {
                    write!(f, "{pred}({})", args.iter().map(Term::to_string).collect::<Vec<_>>().join(","))
                }
            }
            Formula::Not(inner) => {
                f.write_str("-")?;
                fmt_child(inner, 5, false, f)
            }
            Formula::And(a, b) => {
                fmt_child(a, 4, false, f)?;
                f.write_str(" & ")?;
                fmt_child(b, 4, true, f)
            }
            Formula::Or(a, b) => {
                fmt_child(a, 3, false, f)?;
                f.write_str(" | ")?;
                fmt_child(b, 3, true, f)
            }
            Formula::Implies(a, b) => {
                fmt_child(a, 2, true, f)?;
                f.write_str(" -> ")?;
                fmt_child(b, 2, false, f)
            }
            Formula::Iff(a, b) => {
                fmt_child(a, 1, true, f)?;
                f.write_str(" <-> ")?;
                fmt_child(b, 1, false, f)
            }
            Formula::ForAll(v, body) => write!(f, "all {v} ({body})"),
            Formula::Exists(v, body) => write!(f, "exists {v} ({body})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn individual_names_are_validated() {
        assert!(Individual::new("Mike").is_ok());
        assert!(Individual::new("").is_err());
        assert!(Individual::new("two words").is_err());
    }

    #[test]
    fn free_vars_respect_binders() {
        let f = Formula::forall(
            "x",
            Formula::atom("taller", vec![Term::var("x"), Term::var("y")]),
        );
        assert_eq!(f.free_vars(), vec!["y".to_string()]);
        assert!(!f.is_closed());
    }

    #[test]
    fn display_uses_minimal_parens() {
        let f = Formula::and(
            Formula::or(
                Formula::atom("p", vec![Term::constant("a")]),
                Formula::atom("q", vec![Term::constant("a")]),
            ),
            Formula::not(Formula::atom("r", vec![Term::constant("a")])),
        );
        assert_eq!(f.to_string(), "(p(a) | q(a)) & -r(a)");
        let g = Formula::forall(
            "x",
            Formula::implies(
                Formula::atom("knight", vec![Term::var("x")]),
                Formula::atom("m", vec![Term::var("x")]),
            ),
        );
        assert_eq!(g.to_string(), "all x (knight(x) -> m(x))");
    }
}
