//! Question generation, labeling, clue-removal variants and ambiguity
//! metrics.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::domains::{remove_clues, DomainProfile, PuzzleRecord};
use crate::error::{DomainError, PipelineError, SolveError};
use crate::fol::{ground, Formula, Term};
use crate::solver::{classify_with, enumerate_models, Label};

/// One labeled atomic question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledQuestion {
    pub question_text: String,
    pub query: Formula,
    pub label: Label,
    pub puzzle_id: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub entailment: usize,
    pub contradiction: usize,
    pub unknown: usize,
}

impl LabelCounts {
    pub fn total(&self) -> usize {
        self.entailment + self.contradiction + self.unknown
    }

    pub fn add(&mut self, label: Label) {
        match label {
            Label::Entailment => self.entailment += 1,
            Label::Contradiction => self.contradiction += 1,
            Label::Unknown => self.unknown += 1,
        }
    }
}

/// Histogram bins for the ambiguity level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AmbiguityBin {
    #[serde(rename = "<15%")]
    Below15,
    #[serde(rename = "15-25%")]
    From15To25,
    #[serde(rename = "25-50%")]
    From25To50,
    #[serde(rename = ">50%")]
    Above50,
}

impl AmbiguityBin {
    pub fn of(level: f64) -> AmbiguityBin {
        if level < 0.15 {
            AmbiguityBin::Below15
        } else if level < 0.25 {
            AmbiguityBin::From15To25
        } else if level < 0.50 {
            AmbiguityBin::From25To50
        } else {
            AmbiguityBin::Above50
        }
    }

    pub fn all() -> [AmbiguityBin; 4] {
        [
            AmbiguityBin::Below15,
            AmbiguityBin::From15To25,
            AmbiguityBin::From25To50,
            AmbiguityBin::Above50,
        ]
    }
}

impl fmt::Display for AmbiguityBin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmbiguityBin::Below15 => "<15%",
            AmbiguityBin::From15To25 => "15-25%",
            AmbiguityBin::From25To50 => "25-50%",
            AmbiguityBin::Above50 => ">50%",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmbiguityReport {
    pub puzzle_id: String,
    pub removed_clue_indices: Vec<usize>,
    pub model_count: usize,
    pub counts: LabelCounts,
    pub ambiguity_level: f64,
    pub bin: AmbiguityBin,
}

/// The exhaustive atomic-question set: every unary question predicate on
/// every individual, then every binary one on every ordered pair including
/// the reflexive pairs. Predicates follow profile order, individuals
/// first-mention order.
pub fn generate_questions(profile: &DomainProfile, record: &PuzzleRecord) -> Vec<Formula> {
    let individuals: Vec<&str> = record.theory.domain().iter().map(|i| i.name()).collect();
    let mut out = Vec::new();
    for pred in &profile.unary_questions {
        for ind in &individuals {
            out.push(Formula::atom(pred.clone(), vec![Term::constant(*ind)]));
        }
    }
    for pred in &profile.binary_questions {
        for a in &individuals {
            for b in &individuals {
                out.push(Formula::atom(
                    pred.clone(),
                    vec![Term::constant(*a), Term::constant(*b)],
                ));
            }
        }
    }
    out
}

/// A fully labeled puzzle: the memoized model set statistics plus one
/// labeled question per generated atom, in generation order.
#[derive(Debug, Clone)]
pub struct PuzzleAnalysis {
    pub record: PuzzleRecord,
    pub model_count: usize,
    pub questions: Vec<LabeledQuestion>,
    pub counts: LabelCounts,
    pub ambiguity_level: f64,
    pub bin: AmbiguityBin,
}

/// Labels every atomic question of the puzzle against one enumeration of
/// its models.
pub fn label_all(
    profile: &DomainProfile,
    record: &PuzzleRecord,
    cap: usize,
) -> Result<Vec<LabeledQuestion>, PipelineError> {
    Ok(analyze(profile, record, cap)?.questions)
}

pub fn analyze(
    profile: &DomainProfile,
    record: &PuzzleRecord,
    cap: usize,
) -> Result<PuzzleAnalysis, PipelineError> {
    let clauses = ground(&record.theory);
    let models = enumerate_models(&clauses, cap);
    if models.truncated() {
        return Err(PipelineError::Solve(SolveError::Truncated(cap)));
    }
    if models.is_empty() {
        return Err(PipelineError::Solve(SolveError::InconsistentTheory));
    }
    let mut questions = Vec::new();
    let mut counts = LabelCounts::default();
    for query in generate_questions(profile, record) {
        let label = classify_with(&models, &clauses, &query).map_err(PipelineError::Solve)?;
        counts.add(label);
        let (pred, args) = match &query {
            Formula::Atom { pred, args } => (
                pred.clone(),
                args.iter()
                    .map(|t| match t {
                        Term::Const(c) => c.as_str(),
                        Term::Var(v) => v.as_str(),
                    })
                    .collect::<Vec<_>>(),
            ),
            _ => unreachable!("questions are atomic"),
        };
        let question_text = profile
            .verbalize(&pred, &args)
            .map_err(PipelineError::Domain)?;
        questions.push(LabeledQuestion {
            question_text,
            query,
            label,
            puzzle_id: record.id.clone(),
        });
    }
    let total = counts.total();
    let ambiguity_level = if total == 0 {
        0.0
    } else {
        counts.unknown as f64 / total as f64
    };
    Ok(PuzzleAnalysis {
        record: record.clone(),
        model_count: models.len(),
        questions,
        counts,
        ambiguity_level,
        bin: AmbiguityBin::of(ambiguity_level),
    })
}

/// All variants of the puzzle with exactly `k` clues removed, one per
/// size-`k` subset in index order. Variants that lose every individual are
/// dropped (with a logged warning).
pub fn ambiguate(
    profile: &DomainProfile,
    record: &PuzzleRecord,
    k: usize,
) -> Result<Vec<PuzzleRecord>, DomainError> {
    let n = record.clues.len() - record.removed_clue_indices.len();
    if k == 0 || k >= n {
        return Ok(Vec::new());
    }
    let available: Vec<usize> = (0..record.clues.len())
        .filter(|i| !record.removed_clue_indices.contains(i))
        .collect();
    let mut out = Vec::new();
    for subset in available.into_iter().combinations(k) {
        if let Some(variant) = remove_clues(profile, record, &subset)? {
            out.push(variant);
        }
    }
    Ok(out)
}

/// A single variant with an explicit list of removed clue indices.
pub fn ambiguate_indices(
    profile: &DomainProfile,
    record: &PuzzleRecord,
    indices: &[usize],
) -> Result<Option<PuzzleRecord>, DomainError> {
    remove_clues(profile, record, indices)
}

/// Labels a puzzle and summarizes it: model count, label counts, ambiguity
/// level and histogram bin.
pub fn ambiguity_report(
    profile: &DomainProfile,
    record: &PuzzleRecord,
    cap: usize,
) -> Result<AmbiguityReport, PipelineError> {
    let analysis = analyze(profile, record, cap)?;
    Ok(AmbiguityReport {
        puzzle_id: record.id.clone(),
        removed_clue_indices: record.removed_clue_indices.clone(),
        model_count: analysis.model_count,
        counts: analysis.counts,
        ambiguity_level: analysis.ambiguity_level,
        bin: analysis.bin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{build_puzzle, builtin_profile, DomainName};
    use crate::solver::DEFAULT_CAP;

    const PUZZLE1: &str = "Mike is taller than Sally who is shorter than Katy. \
         Ted is taller than Bob but shorter than Sally. Katy is shorter than Mike. \
         Who is the tallest? Is Katy taller than Bob? Is Mike shorter than Ted?";

    #[test]
    fn question_grid_counts_follow_the_formula() {
        let p = builtin_profile(DomainName::Comparison);
        let record = build_puzzle(&p, "puzzle1", PUZZLE1).unwrap();
        // a*n + b*n^2 with a = 2, b = 2, n = 5
        assert_eq!(generate_questions(&p, &record).len(), 60);
    }

    #[test]
    fn ambiguate_enumerates_all_single_removals() {
        let p = builtin_profile(DomainName::Comparison);
        let record = build_puzzle(&p, "puzzle1", PUZZLE1).unwrap();
        let variants = ambiguate(&p, &record, 1).unwrap();
        assert_eq!(variants.len(), 3);
        assert_eq!(variants[0].id, "puzzle1-minus-1");
        assert_eq!(variants[0].removed_clue_indices, vec![0]);
        assert_eq!(variants[0].theory.clues().len(), 2);
    }

    #[test]
    fn out_of_range_removal_is_an_error() {
        let p = builtin_profile(DomainName::Comparison);
        let record = build_puzzle(&p, "puzzle1", PUZZLE1).unwrap();
        assert!(matches!(
            ambiguate_indices(&p, &record, &[7]),
            Err(DomainError::IndexOutOfRange { index: 7, len: 3 })
        ));
    }

    #[test]
    fn partition_identity_holds() {
        let p = builtin_profile(DomainName::Comparison);
        let record = build_puzzle(&p, "puzzle1", PUZZLE1).unwrap();
        let report = ambiguity_report(&p, &record, DEFAULT_CAP).unwrap();
        assert_eq!(report.counts.total(), 60);
        assert_eq!(report.model_count, 1);
        assert_eq!(report.counts.unknown, 0);
        assert_eq!(report.bin, AmbiguityBin::Below15);
    }

    #[test]
    fn bins_partition_the_unit_interval() {
        assert_eq!(AmbiguityBin::of(0.0), AmbiguityBin::Below15);
        assert_eq!(AmbiguityBin::of(0.10), AmbiguityBin::Below15);
        assert_eq!(AmbiguityBin::of(0.15), AmbiguityBin::From15To25);
        assert_eq!(AmbiguityBin::of(0.25), AmbiguityBin::From25To50);
        assert_eq!(AmbiguityBin::of(0.50), AmbiguityBin::Above50);
        assert_eq!(AmbiguityBin::of(1.0), AmbiguityBin::Above50);
    }
}
