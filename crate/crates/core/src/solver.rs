//! All-solutions model enumeration for grounded theories, and the
//! entailment / contradiction / unknown classification built on it.
//!
//! The enumerator is DPLL with unit propagation and chronological
//! backtracking: on finding a model it records the assignment and backtracks
//! as if conflicted. Branching follows the fixed atom order (false before
//! true), so models come out in lexicographic order and runs are
//! reproducible byte for byte. Pure-literal elimination is deliberately
//! absent; it is sound for satisfiability but loses models.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::fol::{ground, Formula, GroundClauseSet, Theory};

pub const DEFAULT_CAP: usize = 100_000;

/// One total truth assignment over the atoms of a [`GroundClauseSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    bits: Vec<bool>,
}

impl Model {
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn truth(&self, atom: usize) -> bool {
        self.bits[atom]
    }

    /// The true atoms in atom order, e.g.
    /// `knave(Bart) knave(Dave) knight(Rex) knight(Sue)`.
    pub fn true_atoms(&self, clauses: &GroundClauseSet) -> String {
        let names: Vec<String> = clauses
            .atoms()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.bits[*i])
            .map(|(_, a)| a.to_string())
            .collect();
        names.join(" ")
    }
}

/// All models of a clause set, in lexicographic atom order (false < true).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    models: Vec<Model>,
    truncated: bool,
    cap: usize,
}

impl ModelSet {
    pub fn models(&self) -> &[Model] {
        &self.models
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// One model per line as sorted true atoms.
    pub fn render(&self, clauses: &GroundClauseSet) -> String {
        let mut out = String::new();
        for m in &self.models {
            out.push_str(&m.true_atoms(clauses));
            out.push('\n');
        }
        out
    }
}

/// The three answer labels. Serialized exactly as `entailment`,
/// `contradiction`, `unknown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Entailment,
    Contradiction,
    Unknown,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Entailment => "entailment",
            Label::Contradiction => "contradiction",
            Label::Unknown => "unknown",
        })
    }
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "entailment" => Some(Label::Entailment),
            "contradiction" => Some(Label::Contradiction),
            "unknown" => Some(Label::Unknown),
            _ => None,
        }
    }
}

struct Search<'a> {
    clauses: &'a [Vec<crate::fol::Lit>],
    assign: Vec<Option<bool>>,
    trail: Vec<usize>,
    models: Vec<Model>,
    cap: usize,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn set(&mut self, atom: usize, value: bool) {
        self.assign[atom] = Some(value);
        self.trail.push(atom);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let atom = self.trail.pop().expect("trail underflow");
            self.assign[atom] = None;
        }
    }

    /// Unit propagation to fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for clause in self.clauses {
                let mut satisfied = false;
                let mut unassigned = None;
                let mut unassigned_count = 0;
                for lit in clause {
                    match self.assign[lit.atom] {
                        Some(v) if v == lit.positive => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            unassigned_count += 1;
                            unassigned = Some(*lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match unassigned_count {
                    0 => return false,
                    1 => {
                        let lit = unassigned.expect("counted one unassigned literal");
                        self.set(lit.atom, lit.positive);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Depth-first all-solutions search. Returns false once the cap is hit.
    fn dfs(&mut self) -> bool {
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo_to(mark);
            return true;
        }
        let next = self.assign.iter().position(Option::is_none);
        match next {
            None => {
                if self.models.len() == self.cap {
                    self.truncated = true;
                    self.undo_to(mark);
                    return false;
                }
                let bits = self.assign.iter().map(|v| v.expect("total")).collect();
                self.models.push(Model { bits });
                self.undo_to(mark);
                true
            }
            Some(atom) => {
                for value in [false, true] {
                    let decision_mark = self.trail.len();
                    self.set(atom, value);
                    let keep_going = self.dfs();
                    self.undo_to(decision_mark);
                    if !keep_going {
                        self.undo_to(mark);
                        return false;
                    }
                }
                self.undo_to(mark);
                true
            }
        }
    }
}

/// Enumerates every satisfying assignment of the clause set, up to `cap`.
/// An unsatisfiable clause set yields an empty set; callers decide whether
/// that is an error.
pub fn enumerate_models(clauses: &GroundClauseSet, cap: usize) -> ModelSet {
    assert!(cap >= 1, "cap must be at least 1");
    if clauses.has_empty_clause() {
        return ModelSet { models: Vec::new(), truncated: false, cap };
    }
    let mut search = Search {
        clauses: clauses.clauses(),
        assign: vec![None; clauses.atom_count()],
        trail: Vec::new(),
        models: Vec::new(),
        cap,
        truncated: false,
    };
    search.dfs();
    ModelSet { models: search.models, truncated: search.truncated, cap }
}

/// Tarskian evaluation of a closed query against one model.
pub fn evaluate(
    model: &Model,
    query: &Formula,
    clauses: &GroundClauseSet,
) -> Result<bool, SolveError> {
    clauses
        .evaluate_with(query, &|atom| model.truth(atom))
        .map_err(SolveError::Theory)
}

fn classify_counts(truths: impl Iterator<Item = bool>) -> (usize, usize) {
    let mut true_in = 0;
    let mut total = 0;
    for t in truths {
        total += 1;
        if t {
            true_in += 1;
        }
    }
    (true_in, total)
}

/// Classifies a query over an already-enumerated model set: true in all
/// models is entailment, false in all is contradiction, mixed is unknown.
/// A truncated set is refused rather than silently misclassified.
pub fn classify_with(
    models: &ModelSet,
    clauses: &GroundClauseSet,
    query: &Formula,
) -> Result<Label, SolveError> {
    if models.truncated() {
        return Err(SolveError::Truncated(models.cap()));
    }
    if models.is_empty() {
        return Err(SolveError::InconsistentTheory);
    }
    let mut truths = Vec::with_capacity(models.len());
    for m in models.models() {
        truths.push(evaluate(m, query, clauses)?);
    }
    let (true_in, total) = classify_counts(truths.into_iter());
    Ok(if true_in == total {
        Label::Entailment
    } else if true_in == 0 {
        Label::Contradiction
    } else {
        Label::Unknown
    })
}

/// Grounds the theory, enumerates its models, and classifies the query.
pub fn classify(theory: &Theory, query: &Formula, cap: usize) -> Result<Label, SolveError> {
    theory.check_query(query)?;
    let clauses = ground(theory);
    let models = enumerate_models(&clauses, cap);
    classify_with(&models, &clauses, query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{ground_atom, individuals, GroundAtom, Lit, Predicate};

    fn tiny_atoms(n: usize) -> Vec<GroundAtom> {
        (0..n)
            .map(|i| GroundAtom { pred: format!("a{i}"), args: vec![] })
            .collect()
    }

    fn lit(atom: usize, positive: bool) -> Lit {
        Lit { atom, positive }
    }

    #[test]
    fn unconstrained_atoms_enumerate_all_assignments() {
        let cs = GroundClauseSet::from_parts(tiny_atoms(3), vec![]);
        let ms = enumerate_models(&cs, DEFAULT_CAP);
        assert_eq!(ms.len(), 8);
        // lexicographic with false < true
        assert_eq!(ms.models()[0].bits(), &[false, false, false]);
        assert_eq!(ms.models()[7].bits(), &[true, true, true]);
    }

    #[test]
    fn unsatisfiable_set_is_empty_not_an_error() {
        let cs = GroundClauseSet::from_parts(
            tiny_atoms(1),
            vec![vec![lit(0, true)], vec![lit(0, false)]],
        );
        assert!(enumerate_models(&cs, DEFAULT_CAP).is_empty());
    }

    #[test]
    fn cap_truncates_and_flags() {
        let cs = GroundClauseSet::from_parts(tiny_atoms(4), vec![]);
        let ms = enumerate_models(&cs, 5);
        assert_eq!(ms.len(), 5);
        assert!(ms.truncated());
        let full = enumerate_models(&cs, 16);
        assert_eq!(full.len(), 16);
        assert!(!full.truncated());
    }

    #[test]
    fn classify_refuses_truncated_sets() {
        let cs = GroundClauseSet::from_parts(tiny_atoms(2), vec![]);
        let ms = enumerate_models(&cs, 2);
        assert!(ms.truncated());
        let q = Formula::Atom { pred: "a0".into(), args: vec![] };
        assert!(matches!(
            classify_with(&ms, &cs, &q),
            Err(SolveError::Truncated(2))
        ));
    }

    #[test]
    fn tautology_true_in_every_model() {
        let sig = vec![Predicate::new("p", 1)];
        let dom = individuals(&["a"]);
        let theory = Theory::new(sig, dom, vec![], vec![]).unwrap();
        let cs = ground(&theory);
        let ms = enumerate_models(&cs, DEFAULT_CAP);
        assert_eq!(ms.len(), 2);
        let taut = Formula::or(
            ground_atom("p", &["a"]),
            Formula::not(ground_atom("p", &["a"])),
        );
        for m in ms.models() {
            assert!(evaluate(m, &taut, &cs).unwrap());
        }
    }

    #[test]
    fn classify_inconsistent_theory_is_an_error() {
        let sig = vec![Predicate::new("p", 1)];
        let dom = individuals(&["a"]);
        let theory = Theory::new(
            sig,
            dom,
            vec![
                ground_atom("p", &["a"]),
                Formula::not(ground_atom("p", &["a"])),
            ],
            vec![],
        )
        .unwrap();
        assert!(matches!(
            classify(&theory, &ground_atom("p", &["a"]), DEFAULT_CAP),
            Err(SolveError::InconsistentTheory)
        ));
    }

    #[test]
    fn classify_rejects_unknown_query_predicates() {
        let sig = vec![Predicate::new("p", 1)];
        let dom = individuals(&["a"]);
        let theory = Theory::new(sig, dom, vec![], vec![]).unwrap();
        assert!(matches!(
            classify(&theory, &ground_atom("q", &["a"]), DEFAULT_CAP),
            Err(SolveError::Theory(_))
        ));
    }

    #[test]
    fn model_rendering_is_deterministic() {
        let cs = GroundClauseSet::from_parts(
            tiny_atoms(2),
            vec![vec![lit(0, true), lit(1, true)]],
        );
        let a = enumerate_models(&cs, DEFAULT_CAP);
        let b = enumerate_models(&cs, DEFAULT_CAP);
        assert_eq!(a.render(&cs), b.render(&cs));
        assert_eq!(a.render(&cs), "a1\na0\na0 a1\n");
    }
}
