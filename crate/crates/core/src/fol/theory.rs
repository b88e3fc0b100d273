//! Theories: a signature, a finite domain of named individuals, background
//! axioms and puzzle clues.

use std::collections::BTreeMap;

use crate::error::TheoryError;
use crate::fol::ast::{Formula, Individual, Predicate, Term};

/// A clue keeps its source sentence so clue removal stays addressable by
/// the sentence order of the original puzzle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clue {
    pub text: String,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    signature: Vec<Predicate>,
    domain: Vec<Individual>,
    axioms: Vec<Formula>,
    clues: Vec<Clue>,
}

impl Theory {
    /// Builds and validates a theory. Checks: non-empty domain, unique
    /// individual names, unique `(name, arity)` pairs, every sentence closed,
    /// every predicate and constant declared.
    pub fn new(
        signature: Vec<Predicate>,
        domain: Vec<Individual>,
        axioms: Vec<Formula>,
        clues: Vec<Clue>,
    ) -> Result<Self, TheoryError> {
        if domain.is_empty() {
            return Err(TheoryError::EmptyDomain);
        }
        let mut seen = BTreeMap::new();
        for ind in &domain {
            if seen.insert(ind.name().to_string(), ()).is_some() {
                return Err(TheoryError::DuplicateIndividual(ind.name().to_string()));
            }
        }
        let mut preds = BTreeMap::new();
        for p in &signature {
            if preds.insert((p.name.clone(), p.arity), ()).is_some() {
                return Err(TheoryError::DuplicatePredicate(p.name.clone(), p.arity));
            }
        }
        let theory = Theory { signature, domain, axioms, clues };
        for f in theory.sentences() {
            theory.check_sentence(f)?;
        }
        Ok(theory)
    }

    fn check_sentence(&self, f: &Formula) -> Result<(), TheoryError> {
        if let Some(var) = f.free_vars().into_iter().next() {
            return Err(TheoryError::UnboundVariable { var, formula: f.to_string() });
        }
        for (name, arity) in f.predicates() {
            if !self.signature.iter().any(|p| p.name == name && p.arity == arity) {
                return Err(TheoryError::UnknownPredicate { name, arity, formula: f.to_string() });
            }
        }
        for c in f.constants() {
            if !self.domain.iter().any(|i| i.name() == c) {
                return Err(TheoryError::UnknownIndividual { name: c, formula: f.to_string() });
            }
        }
        Ok(())
    }

    pub fn signature(&self) -> &[Predicate] {
        &self.signature
    }

    pub fn domain(&self) -> &[Individual] {
        &self.domain
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    pub fn clues(&self) -> &[Clue] {
        &self.clues
    }

    /// All sentences, background first, then clues in source order.
    pub fn sentences(&self) -> impl Iterator<Item = &Formula> {
        self.axioms.iter().chain(self.clues.iter().map(|c| &c.formula))
    }

    /// Validates a query against this theory's signature and domain.
    pub fn check_query(&self, query: &Formula) -> Result<(), TheoryError> {
        self.check_sentence(query)
    }

    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.signature.iter().find(|p| p.name == name)
    }
}

/// Convenience for tests and small programs: individuals from bare names.
pub fn individuals(names: &[&str]) -> Vec<Individual> {
    names
        .iter()
        .map(|n| Individual::new(*n).expect("valid individual name"))
        .collect()
}

/// Ground atom constructor used throughout: `atom("taller", &["Mike", "Sally"])`.
pub fn ground_atom(pred: &str, args: &[&str]) -> Formula {
    Formula::atom(pred, args.iter().map(|a| Term::constant(*a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_predicates_and_open_sentences() {
        let sig = vec![Predicate::new("p", 1)];
        let dom = individuals(&["a"]);
        let open = Formula::atom("p", vec![Term::var("x")]);
        assert!(matches!(
            Theory::new(sig.clone(), dom.clone(), vec![open], vec![]),
            Err(TheoryError::UnboundVariable { .. })
        ));
        let unknown = ground_atom("q", &["a"]);
        assert!(matches!(
            Theory::new(sig, dom, vec![unknown], vec![]),
            Err(TheoryError::UnknownPredicate { .. })
        ));
    }

    #[test]
    fn rejects_duplicate_names() {
        let sig = vec![Predicate::new("p", 1)];
        let dom = individuals(&["a", "a"]);
        assert!(matches!(
            Theory::new(sig, dom, vec![], vec![]),
            Err(TheoryError::DuplicateIndividual(_))
        ));
    }
}
