//! Error types shared across the library.

use thiserror::Error;

/// Violations of theory well-formedness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("individual name {0:?} is empty or contains whitespace")]
    BadIndividualName(String),
    #[error("duplicate individual {0:?} in domain")]
    DuplicateIndividual(String),
    #[error("duplicate predicate {0}/{1} in signature")]
    DuplicatePredicate(String, usize),
    #[error("theory domain is empty")]
    EmptyDomain,
    #[error("sentence is not closed: unbound variable {var:?} in {formula}")]
    UnboundVariable { var: String, formula: String },
    #[error("unknown predicate {name}/{arity} in {formula}")]
    UnknownPredicate { name: String, arity: usize, formula: String },
    #[error("unknown individual {name:?} in {formula}")]
    UnknownIndividual { name: String, formula: String },
}

/// Errors from the textual `.fol` reader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FolSyntaxError {
    pub line: usize,
    pub message: String,
}

/// Errors from classification over an enumerated model set.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("theory is inconsistent (no models)")]
    InconsistentTheory,
    #[error("model enumeration was truncated at cap {0}; refusing to classify")]
    Truncated(usize),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// Errors from lambda-term reduction and conversion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("beta reduction exceeded the step budget of {0}")]
    ReductionBudgetExceeded(usize),
    #[error("term is not a formula: residual lambda abstraction in {0}")]
    ResidualLambda(String),
    #[error("term is not a formula: unresolved feature variable {0}")]
    UnresolvedFeatureVar(String),
    #[error("term is not a formula: {0}")]
    NotAFormula(String),
}

/// Errors raised while loading a grammar file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("grammar syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate %start directive at line {line}")]
    DuplicateStartSymbol { line: usize },
    #[error("grammar file is empty")]
    EmptyGrammar,
}

/// Errors raised while parsing a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("no parse for sentence {sentence:?}{}", reason.as_ref().map(|r| format!(" ({r})")).unwrap_or_default())]
    NoParse { sentence: String, reason: Option<String> },
    #[error("chart grew past {0} items; grammar is likely cyclic")]
    ChartOverflow(usize),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
}

/// Errors from puzzle construction and verbalization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("sentence {index}: {source}")]
    Sentence {
        index: usize,
        #[source]
        source: ParseError,
    },
    #[error("sentence {index} {sentence:?} is ambiguous after disambiguation: {candidates:?}")]
    AmbiguousClue { index: usize, sentence: String, candidates: Vec<String> },
    #[error("puzzle has no declarative sentences")]
    EmptyPuzzle,
    #[error("no question template for predicate {0}")]
    MissingTemplate(String),
    #[error("category {category:?} must have exactly 5 predicates, got {got}")]
    CategoryArity { category: String, got: usize },
    #[error("clue index {index} out of range (puzzle has {len} clues)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// Errors from question generation and labeling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}
