//! Natural-language logic puzzles to labeled question-answer pairs.
//!
//! The pipeline has four stages: a feature grammar translates puzzle
//! sentences into first-order clauses ([`grammar`], [`domains`]); the
//! theory is grounded over its named individuals ([`fol`]); an embedded
//! all-solutions model finder enumerates every interpretation ([`solver`]);
//! and the exhaustive atomic-question set is labeled entailment,
//! contradiction or unknown against those models ([`pipeline`]).

pub mod domains;
pub mod error;
pub mod fol;
pub mod grammar;
pub mod lambda;
pub mod pipeline;
pub mod solver;
