//! The three puzzle domains: grammars, background theories, unique-name
//! encodings, parse disambiguation and question verbalization.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::error::{DomainError, FolSyntaxError, GrammarError, ParseError};
use crate::fol::{parse_fol, Clue, Formula, Individual, Predicate, Term, Theory};
use crate::grammar::Grammar;

const COMPARISON_FCFG: &str = include_str!("../assets/comparison.fcfg");
const KNIGHTS_FCFG: &str = include_str!("../assets/knights.fcfg");
const ZEBRA_FCFG: &str = include_str!("../assets/zebra.fcfg");
const COMPARISON_FOL: &str = include_str!("../assets/comparison.fol");
const KNIGHTS_FOL: &str = include_str!("../assets/knights.fol");
const ZEBRA_FOL: &str = include_str!("../assets/zebra.fol");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainName {
    Comparison,
    KnightsKnaves,
    Zebra,
}

impl DomainName {
    pub fn as_str(&self) -> &'static str {
        match self {
            DomainName::Comparison => "comparison",
            DomainName::KnightsKnaves => "knights_knaves",
            DomainName::Zebra => "zebra",
        }
    }

    pub fn parse(s: &str) -> Option<DomainName> {
        match s {
            "comparison" => Some(DomainName::Comparison),
            "knights_knaves" | "knights" => Some(DomainName::KnightsKnaves),
            "zebra" => Some(DomainName::Zebra),
            _ => None,
        }
    }

    pub fn all() -> [DomainName; 3] {
        [DomainName::Comparison, DomainName::KnightsKnaves, DomainName::Zebra]
    }
}

impl fmt::Display for DomainName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Error)]
pub enum ProfileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error("in {path}: {source}")]
    Fol {
        path: String,
        #[source]
        source: FolSyntaxError,
    },
}

/// Everything needed to process one puzzle family: its grammar, background
/// axioms, question-facing predicates, auxiliary signature and question
/// templates.
#[derive(Debug, Clone)]
pub struct DomainProfile {
    pub name: DomainName,
    pub grammar: Grammar,
    background_axioms: Vec<Formula>,
    pub unary_questions: Vec<String>,
    pub binary_questions: Vec<String>,
    aux_predicates: Vec<Predicate>,
    templates: HashMap<String, String>,
    fixed_domain: Option<Vec<Individual>>,
    categories: Vec<(String, Vec<String>)>,
}

/// The five zebra house names, left to right.
pub const ZEBRA_HOUSES: [&str; 5] = ["A", "B", "C", "D", "E"];

fn zebra_categories() -> Vec<(String, Vec<String>)> {
    let mk = |name: &str, preds: &[&str]| {
        (name.to_string(), preds.iter().map(|p| p.to_string()).collect())
    };
    vec![
        mk("nationality", &["brit", "swede", "dane", "norwegian", "german"]),
        mk("color", &["red", "green", "white", "yellow", "blue"]),
        mk("drink", &["tea", "coffee", "milk", "beer", "water"]),
        mk("smoke", &["pallmall", "dunhill", "bluemaster", "prince", "blends"]),
        mk("pet", &["dog", "bird", "fish", "cat", "horse"]),
    ]
}

fn zebra_templates() -> HashMap<String, String> {
    let mut t = HashMap::new();
    for (nat, name) in [
        ("brit", "Brit"),
        ("swede", "Swede"),
        ("dane", "Dane"),
        ("norwegian", "Norwegian"),
        ("german", "German"),
    ] {
        t.insert(nat.to_string(), format!("{name} lives in house {{0}}."));
    }
    for color in ["red", "green", "white", "yellow", "blue"] {
        t.insert(color.to_string(), format!("The house {{0}} is {color}."));
    }
    for drink in ["tea", "coffee", "milk", "beer", "water"] {
        t.insert(drink.to_string(), format!("The man in house {{0}} drinks {drink}."));
    }
    for (smoke, name) in [
        ("pallmall", "Pall Mall"),
        ("dunhill", "Dunhill"),
        ("bluemaster", "BlueMaster"),
        ("prince", "Prince"),
        ("blends", "blends"),
    ] {
        t.insert(smoke.to_string(), format!("The man in house {{0}} smokes {name}."));
    }
    for pet in ["dog", "bird", "fish", "cat", "horse"] {
        t.insert(pet.to_string(), format!("The man in house {{0}} owns the {pet}."));
    }
    t
}

/// Loads a domain profile. With a directory, the grammar and background
/// files are read from `<dir>/<domain>.fcfg` and `<dir>/<domain>.fol`;
/// otherwise the embedded copies are used.
pub fn load_profile(name: DomainName, dir: Option<&Path>) -> Result<DomainProfile, ProfileError> {
    let (grammar_text, fol_text) = match dir {
        None => (
            match name {
                DomainName::Comparison => COMPARISON_FCFG.to_string(),
                DomainName::KnightsKnaves => KNIGHTS_FCFG.to_string(),
                DomainName::Zebra => ZEBRA_FCFG.to_string(),
            },
            match name {
                DomainName::Comparison => COMPARISON_FOL.to_string(),
                DomainName::KnightsKnaves => KNIGHTS_FOL.to_string(),
                DomainName::Zebra => ZEBRA_FOL.to_string(),
            },
        ),
        Some(dir) => {
            let base = match name {
                DomainName::Comparison => "comparison",
                DomainName::KnightsKnaves => "knights",
                DomainName::Zebra => "zebra",
            };
            let read = |ext: &str| -> Result<String, ProfileError> {
                let path = dir.join(format!("{base}.{ext}"));
                std::fs::read_to_string(&path).map_err(|e| ProfileError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })
            };
            (read("fcfg")?, read("fol")?)
        }
    };
    let grammar = Grammar::parse_str(&grammar_text)?;
    let fol_path = format!("{}.fol", name.as_str());
    let background_axioms = parse_fol(&fol_text)
        .map_err(|source| ProfileError::Fol { path: fol_path, source })?;

    let profile = match name {
        DomainName::Comparison => DomainProfile {
            name,
            grammar,
            background_axioms,
            unary_questions: vec!["tallest".into(), "shortest".into()],
            binary_questions: vec!["taller".into(), "shorter".into()],
            aux_predicates: vec![],
            templates: HashMap::from([
                ("taller".to_string(), "Is {0} taller than {1} ?".to_string()),
                ("shorter".to_string(), "Is {0} shorter than {1} ?".to_string()),
                ("tallest".to_string(), "Is {0} the tallest ?".to_string()),
                ("shortest".to_string(), "Is {0} the shortest ?".to_string()),
            ]),
            fixed_domain: None,
            categories: vec![],
        },
        DomainName::KnightsKnaves => DomainProfile {
            name,
            grammar,
            background_axioms,
            unary_questions: vec!["knight".into(), "knave".into()],
            binary_questions: vec![],
            aux_predicates: vec![Predicate::new("inhabitant", 1), Predicate::new("m", 1)],
            templates: HashMap::from([
                ("knight".to_string(), "{0} is a knight".to_string()),
                ("knave".to_string(), "{0} is a knave".to_string()),
            ]),
            fixed_domain: None,
            categories: vec![],
        },
        DomainName::Zebra => {
            let categories = zebra_categories();
            let unary_questions = categories
                .iter()
                .flat_map(|(_, preds)| preds.iter().cloned())
                .collect();
            DomainProfile {
                name,
                grammar,
                background_axioms,
                unary_questions,
                binary_questions: vec![],
                aux_predicates: vec![
                    Predicate::new("differentFrom", 2),
                    Predicate::new("neighbor", 2),
                    Predicate::new("rightneighbor", 2),
                    Predicate::new("first", 1),
                    Predicate::new("center", 1),
                ],
                templates: zebra_templates(),
                fixed_domain: Some(
                    ZEBRA_HOUSES
                        .iter()
                        .map(|h| Individual::new(*h).expect("house name"))
                        .collect(),
                ),
                categories,
            }
        }
    };
    debug_assert!(profile.templates_match_arities());
    Ok(profile)
}

/// The built-in profile for a domain; the embedded assets are known good.
pub fn builtin_profile(name: DomainName) -> DomainProfile {
    load_profile(name, None).expect("embedded assets are valid")
}

impl DomainProfile {
    /// Question-facing and auxiliary predicates together.
    pub fn signature(&self) -> Vec<Predicate> {
        let mut sig: Vec<Predicate> = self
            .unary_questions
            .iter()
            .map(|p| Predicate::new(p.clone(), 1))
            .chain(self.binary_questions.iter().map(|p| Predicate::new(p.clone(), 2)))
            .collect();
        sig.extend(self.aux_predicates.iter().cloned());
        sig
    }

    pub fn categories(&self) -> &[(String, Vec<String>)] {
        &self.categories
    }

    fn templates_match_arities(&self) -> bool {
        self.unary_questions.iter().all(|p| {
            self.templates
                .get(p)
                .is_some_and(|t| t.contains("{0}") && !t.contains("{1}"))
        }) && self.binary_questions.iter().all(|p| {
            self.templates
                .get(p)
                .is_some_and(|t| t.contains("{0}") && t.contains("{1}"))
        })
    }

    /// The background theory for a given domain of individuals.
    pub fn background(&self, domain: &[Individual]) -> Result<Vec<Formula>, DomainError> {
        match self.name {
            DomainName::Comparison => Ok(comparison_background_with(&self.background_axioms, domain)),
            DomainName::KnightsKnaves => Ok(knights_background_with(&self.background_axioms, domain)),
            DomainName::Zebra => zebra_background_with(&self.background_axioms, domain, &self.categories),
        }
    }

    /// Renders a question atom as text from the domain's templates.
    pub fn verbalize(&self, pred: &str, args: &[&str]) -> Result<String, DomainError> {
        let template = self
            .templates
            .get(pred)
            .ok_or_else(|| DomainError::MissingTemplate(pred.to_string()))?;
        let mut out = template.clone();
        for (i, arg) in args.iter().enumerate() {
            out = out.replace(&format!("{{{i}}}"), arg);
        }
        Ok(out)
    }

    pub fn fixed_domain(&self) -> Option<&[Individual]> {
        self.fixed_domain.as_deref()
    }
}

/// Comparison background: transitivity, irreflexivity, anti-symmetry and
/// the shorter/taller duality (quantified axioms), plus pairwise trichotomy
/// and the strict-dominance definitions of tallest/shortest over the given
/// individuals.
pub fn comparison_background(domain: &[Individual]) -> Vec<Formula> {
    let axioms = parse_fol(COMPARISON_FOL).expect("embedded axioms");
    comparison_background_with(&axioms, domain)
}

fn comparison_background_with(axioms: &[Formula], domain: &[Individual]) -> Vec<Formula> {
    let mut out = axioms.to_vec();
    let c = |i: &Individual| Term::constant(i.name());
    for (i, a) in domain.iter().enumerate() {
        for b in &domain[i + 1..] {
            out.push(Formula::or(
                Formula::atom("taller", vec![c(a), c(b)]),
                Formula::atom("taller", vec![c(b), c(a)]),
            ));
        }
    }
    for a in domain {
        let others: Vec<&Individual> = domain.iter().filter(|b| *b != a).collect();
        let dominates = Formula::conj(
            others
                .iter()
                .map(|b| Formula::atom("taller", vec![c(a), c(b)])),
        );
        let tallest = Formula::atom("tallest", vec![c(a)]);
        out.push(match dominates {
            Some(conj) => Formula::iff(tallest, conj),
            None => tallest,
        });
    }
    for a in domain {
        let others: Vec<&Individual> = domain.iter().filter(|b| *b != a).collect();
        let dominated = Formula::conj(
            others
                .iter()
                .map(|b| Formula::atom("taller", vec![c(b), c(a)])),
        );
        let shortest = Formula::atom("shortest", vec![c(a)]);
        out.push(match dominated {
            Some(conj) => Formula::iff(shortest, conj),
            None => shortest,
        });
    }
    out
}

/// Knights background: the island axioms plus an inhabitant fact per named
/// individual.
pub fn knights_background(domain: &[Individual]) -> Vec<Formula> {
    let axioms = parse_fol(KNIGHTS_FOL).expect("embedded axioms");
    knights_background_with(&axioms, domain)
}

fn knights_background_with(axioms: &[Formula], domain: &[Individual]) -> Vec<Formula> {
    let mut out = axioms.to_vec();
    for ind in domain {
        out.push(Formula::atom("inhabitant", vec![Term::constant(ind.name())]));
    }
    out
}

/// Zebra background over five houses: per-category exactly-one-per-house,
/// per-predicate uniqueness across houses, unique-name facts, the rigid
/// house chain, and the first/center position facts. Every auxiliary atom
/// is pinned in every model, so model counts reflect only the category
/// assignments.
pub fn zebra_background(
    houses: &[Individual],
    categories: &[(String, Vec<String>)],
) -> Result<Vec<Formula>, DomainError> {
    let axioms = parse_fol(ZEBRA_FOL).expect("embedded axioms");
    zebra_background_with(&axioms, houses, categories)
}

fn zebra_background_with(
    axioms: &[Formula],
    houses: &[Individual],
    categories: &[(String, Vec<String>)],
) -> Result<Vec<Formula>, DomainError> {
    assert_eq!(houses.len(), 5, "the street has five houses");
    for (category, preds) in categories {
        if preds.len() != 5 {
            return Err(DomainError::CategoryArity {
                category: category.clone(),
                got: preds.len(),
            });
        }
    }
    let mut out = axioms.to_vec();
    let var = || Term::var("x");
    let c = |i: &Individual| Term::constant(i.name());
    for (_, preds) in categories {
        out.push(Formula::forall(
            "x",
            Formula::disj(preds.iter().map(|p| Formula::atom(p.clone(), vec![var()])))
                .expect("five predicates"),
        ));
        // each value also occurs at some house; entailed by the bijection
        // structure, stated outright so unit propagation sees it early
        for p in preds {
            out.push(
                Formula::disj(houses.iter().map(|h| Formula::atom(p.clone(), vec![c(h)])))
                    .expect("five houses"),
            );
        }
        for (i, p) in preds.iter().enumerate() {
            for q in &preds[i + 1..] {
                out.push(Formula::forall(
                    "x",
                    Formula::not(Formula::and(
                        Formula::atom(p.clone(), vec![var()]),
                        Formula::atom(q.clone(), vec![var()]),
                    )),
                ));
            }
        }
        for p in preds {
            out.push(Formula::forall(
                "x",
                Formula::forall(
                    "y",
                    Formula::implies(
                        Formula::atom("differentFrom", vec![Term::var("x"), Term::var("y")]),
                        Formula::not(Formula::and(
                            Formula::atom(p.clone(), vec![Term::var("x")]),
                            Formula::atom(p.clone(), vec![Term::var("y")]),
                        )),
                    ),
                ),
            ));
        }
    }
    for a in houses {
        for b in houses {
            if a == b {
                out.push(Formula::not(Formula::atom("differentFrom", vec![c(a), c(b)])));
            } else {
                out.push(Formula::atom("differentFrom", vec![c(a), c(b)]));
            }
        }
    }
    for (i, a) in houses.iter().enumerate() {
        for (j, b) in houses.iter().enumerate() {
            let fact = Formula::atom("rightneighbor", vec![c(a), c(b)]);
            if i == j + 1 {
                out.push(fact);
            } else {
                out.push(Formula::not(fact));
            }
        }
    }
    for (i, h) in houses.iter().enumerate() {
        let first = Formula::atom("first", vec![c(h)]);
        out.push(if i == 0 { first } else { Formula::not(first) });
    }
    for (i, h) in houses.iter().enumerate() {
        let center = Formula::atom("center", vec![c(h)]);
        out.push(if i == 2 { center } else { Formula::not(center) });
    }
    Ok(out)
}

/// One puzzle: its text, clue sentences, derived theory, and which clues
/// (if any) were removed to make it ambiguous.
#[derive(Debug, Clone)]
pub struct PuzzleRecord {
    pub id: String,
    pub domain: DomainName,
    pub text: String,
    /// Declarative sentences of the source puzzle, in order.
    pub clues: Vec<String>,
    pub theory: Theory,
    /// Indices into `clues` that were removed (0-based, sorted).
    pub removed_clue_indices: Vec<usize>,
}

impl PuzzleRecord {
    pub fn removed_clue_texts(&self) -> Vec<String> {
        self.removed_clue_indices
            .iter()
            .map(|&i| self.clues[i].clone())
            .collect()
    }
}

/// Splits text into sentences at `.`, `?` and `!`. Interrogatives are
/// flagged so they can be excluded from the clue list.
pub fn split_sentences(text: &str) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '.' | '?' | '!' => {
                let s = current.trim();
                if !s.is_empty() {
                    out.push((s.to_string(), ch == '?'));
                }
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    let s = current.trim();
    if !s.is_empty() {
        out.push((s.to_string(), false));
    }
    out
}

/// Parses one declarative and applies the disambiguation policy: readings
/// must use only declared predicates; among those, the fewest connectives
/// wins; a tie between distinct formulas is an error.
fn clue_formula(
    profile: &DomainProfile,
    index: usize,
    sentence: &str,
) -> Result<Formula, DomainError> {
    let signature = profile.signature();
    let result = profile
        .grammar
        .parse(sentence)
        .map_err(|source| DomainError::Sentence { index, source })?;
    let mut candidates: Vec<Formula> = Vec::new();
    for f in result.formulas {
        if !candidates.contains(&f) {
            candidates.push(f);
        }
    }
    candidates.retain(|f| {
        f.predicates()
            .iter()
            .all(|(name, arity)| signature.iter().any(|p| p.name == *name && p.arity == *arity))
    });
    if candidates.is_empty() {
        return Err(DomainError::Sentence {
            index,
            source: ParseError::NoParse {
                sentence: sentence.to_string(),
                reason: Some("no reading uses only declared predicates".into()),
            },
        });
    }
    let best = candidates
        .iter()
        .map(Formula::connective_count)
        .min()
        .expect("non-empty");
    let mut winners: Vec<Formula> = candidates
        .into_iter()
        .filter(|f| f.connective_count() == best)
        .collect();
    if winners.len() > 1 {
        return Err(DomainError::AmbiguousClue {
            index,
            sentence: sentence.to_string(),
            candidates: winners.iter().map(Formula::to_string).collect(),
        });
    }
    Ok(winners.remove(0))
}

fn harvest_individuals(
    profile: &DomainProfile,
    clues: &[Clue],
) -> Result<Vec<Individual>, DomainError> {
    if let Some(fixed) = profile.fixed_domain() {
        return Ok(fixed.to_vec());
    }
    let mut out: Vec<Individual> = Vec::new();
    for clue in clues {
        for name in clue.formula.constants() {
            if !out.iter().any(|i| i.name() == name) {
                out.push(Individual::new(name).map_err(DomainError::Theory)?);
            }
        }
    }
    Ok(out)
}

fn assemble(
    profile: &DomainProfile,
    id: String,
    text: String,
    sentences: Vec<String>,
    kept: Vec<(usize, Formula)>,
    removed: Vec<usize>,
) -> Result<PuzzleRecord, DomainError> {
    let clues: Vec<Clue> = kept
        .into_iter()
        .map(|(i, formula)| Clue { text: sentences[i].clone(), formula })
        .collect();
    let domain = harvest_individuals(profile, &clues)?;
    let background = profile.background(&domain)?;
    let theory = Theory::new(profile.signature(), domain, background, clues)
        .map_err(DomainError::Theory)?;
    Ok(PuzzleRecord {
        id,
        domain: profile.name,
        text,
        clues: sentences,
        theory,
        removed_clue_indices: removed,
    })
}

/// Builds a puzzle from raw text: sentence-split, drop interrogatives,
/// parse and disambiguate each declarative, harvest the individuals, and
/// assemble the theory.
pub fn build_puzzle(
    profile: &DomainProfile,
    id: &str,
    text: &str,
) -> Result<PuzzleRecord, DomainError> {
    let declaratives: Vec<String> = split_sentences(text)
        .into_iter()
        .filter(|(_, q)| !q)
        .map(|(s, _)| s)
        .collect();
    if declaratives.is_empty() {
        return Err(DomainError::EmptyPuzzle);
    }
    let mut kept = Vec::with_capacity(declaratives.len());
    for (i, sentence) in declaratives.iter().enumerate() {
        kept.push((i, clue_formula(profile, i, sentence)?));
    }
    assemble(profile, id.to_string(), text.to_string(), declaratives, kept, Vec::new())
}

/// Rebuilds a complete puzzle with the given clue indices removed.
/// Individuals are re-harvested from the remaining clues (so the question
/// grid shrinks when a name disappears). Returns `None` when the variant
/// has no individuals left to ask about.
pub fn remove_clues(
    profile: &DomainProfile,
    record: &PuzzleRecord,
    indices: &[usize],
) -> Result<Option<PuzzleRecord>, DomainError> {
    let len = record.clues.len();
    for &i in indices {
        if i >= len {
            return Err(DomainError::IndexOutOfRange { index: i, len });
        }
    }
    let mut removed: Vec<usize> = record.removed_clue_indices.clone();
    removed.extend(indices.iter().copied());
    removed.sort_unstable();
    removed.dedup();

    // the record's theory clues are those not already removed
    let prior_kept: Vec<usize> = (0..len)
        .filter(|i| !record.removed_clue_indices.contains(i))
        .collect();
    let kept: Vec<(usize, Formula)> = prior_kept
        .iter()
        .zip(record.theory.clues())
        .filter(|(i, _)| !removed.contains(i))
        .map(|(i, clue)| (*i, clue.formula.clone()))
        .collect();

    let suffix: Vec<String> = removed.iter().map(|i| (i + 1).to_string()).collect();
    let id = format!("{}-minus-{}", record.id, suffix.join("-"));
    match assemble(
        profile,
        id,
        record.text.clone(),
        record.clues.clone(),
        kept,
        removed,
    ) {
        Ok(variant) => Ok(Some(variant)),
        Err(DomainError::Theory(crate::error::TheoryError::EmptyDomain)) => {
            log::warn!(
                "dropping variant of {}: no individuals left after clue removal",
                record.id
            );
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{ground, ground_atom};
    use crate::solver::{enumerate_models, DEFAULT_CAP};

    fn profile(name: DomainName) -> DomainProfile {
        builtin_profile(name)
    }

    #[test]
    fn grammar_sizes_match_the_published_listings() {
        let g = &profile(DomainName::Comparison).grammar;
        assert!(g.phrase_rule_count() >= 13, "{} phrase rules", g.phrase_rule_count());
        assert!(g.lexical_rule_count() >= 18, "{} lexical rules", g.lexical_rule_count());
    }

    #[test]
    fn single_individual_comparison_is_tallest_and_shortest() {
        let p = profile(DomainName::Comparison);
        let domain = crate::fol::individuals(&["Mike"]);
        let theory = Theory::new(
            p.signature(),
            domain.clone(),
            p.background(&domain).unwrap(),
            vec![],
        )
        .unwrap();
        let cs = ground(&theory);
        let models = enumerate_models(&cs, DEFAULT_CAP);
        assert_eq!(models.len(), 1);
        let m = &models.models()[0];
        assert!(crate::solver::evaluate(m, &ground_atom("tallest", &["Mike"]), &cs).unwrap());
        assert!(crate::solver::evaluate(m, &ground_atom("shortest", &["Mike"]), &cs).unwrap());
        assert!(!crate::solver::evaluate(m, &ground_atom("taller", &["Mike", "Mike"]), &cs).unwrap());
    }

    #[test]
    fn knights_paradox_has_no_models() {
        // one inhabitant whose message is "I am a knave"
        let p = profile(DomainName::KnightsKnaves);
        let domain = crate::fol::individuals(&["A"]);
        let mut axioms = p.background(&domain).unwrap();
        axioms.push(Formula::iff(
            ground_atom("m", &["A"]),
            ground_atom("knave", &["A"]),
        ));
        let theory = Theory::new(p.signature(), domain, axioms, vec![]).unwrap();
        let cs = ground(&theory);
        assert!(enumerate_models(&cs, DEFAULT_CAP).is_empty());
    }

    #[test]
    fn zebra_background_needs_five_predicates_per_category() {
        let houses = crate::fol::individuals(&ZEBRA_HOUSES);
        let bad = vec![("pet".to_string(), vec!["dog".to_string()])];
        assert!(matches!(
            zebra_background(&houses, &bad),
            Err(DomainError::CategoryArity { .. })
        ));
    }

    #[test]
    fn backgrounds_are_satisfiable_over_small_domains() {
        for n in 1..=5usize {
            let names: Vec<String> = (0..n).map(|i| format!("P{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let domain = crate::fol::individuals(&refs);
            for name in [DomainName::Comparison, DomainName::KnightsKnaves] {
                let p = profile(name);
                let theory =
                    Theory::new(p.signature(), domain.clone(), p.background(&domain).unwrap(), vec![])
                        .unwrap();
                let models = enumerate_models(&ground(&theory), 1);
                assert!(!models.is_empty(), "{name} background unsat over {n}");
            }
        }
        let p = profile(DomainName::Zebra);
        let houses = crate::fol::individuals(&ZEBRA_HOUSES);
        let theory =
            Theory::new(p.signature(), houses.clone(), p.background(&houses).unwrap(), vec![])
                .unwrap();
        assert!(!enumerate_models(&ground(&theory), 1).is_empty());
    }

    #[test]
    fn verbalize_matches_published_question_texts() {
        let comp = profile(DomainName::Comparison);
        assert_eq!(
            comp.verbalize("taller", &["Katy", "Bob"]).unwrap(),
            "Is Katy taller than Bob ?"
        );
        let kk = profile(DomainName::KnightsKnaves);
        assert_eq!(kk.verbalize("knight", &["Sue"]).unwrap(), "Sue is a knight");
        let z = profile(DomainName::Zebra);
        assert_eq!(z.verbalize("blue", &["B"]).unwrap(), "The house B is blue.");
        assert_eq!(
            z.verbalize("fish", &["D"]).unwrap(),
            "The man in house D owns the fish."
        );
        assert!(matches!(
            z.verbalize("zebra", &["A"]),
            Err(DomainError::MissingTemplate(_))
        ));
    }

    #[test]
    fn question_only_text_is_an_empty_puzzle() {
        let p = profile(DomainName::Comparison);
        assert!(matches!(
            build_puzzle(&p, "q", "Who is the tallest?"),
            Err(DomainError::EmptyPuzzle)
        ));
    }

    #[test]
    fn sentence_splitting_flags_interrogatives() {
        let s = split_sentences("Katy is shorter than Mike. Who is the tallest? Done");
        assert_eq!(
            s,
            vec![
                ("Katy is shorter than Mike".to_string(), false),
                ("Who is the tallest".to_string(), true),
                ("Done".to_string(), false),
            ]
        );
    }
}
