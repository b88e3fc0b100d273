//! Earley chart parsing with feature unification at completion. All
//! complete start-symbol edges are returned; each edge's SEM feature is
//! beta-reduced and converted to a formula.

use std::collections::HashSet;
use std::rc::Rc;

use crate::error::ParseError;
use crate::fol::Formula;
use crate::grammar::fcfg::{Grammar, Rule, Symbol};
use crate::grammar::feature::{Bindings, FeatValue, FeatureStructure};
use crate::grammar::tokenize;
use crate::lambda::{beta_reduce, to_formula, LambdaTerm};

const MAX_ITEMS: usize = 200_000;

/// One complete reading of a sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseTree {
    pub derivation: String,
    pub sem: LambdaTerm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseResult {
    pub sentence: String,
    pub trees: Vec<ParseTree>,
    pub formulas: Vec<Formula>,
}

#[derive(Debug)]
struct Completed {
    cat: String,
    fs: FeatureStructure,
    origin: usize,
    deriv: String,
}

#[derive(Debug, Clone)]
struct Active {
    rule: Rc<InstRule>,
    dot: usize,
    origin: usize,
    bindings: Bindings,
    children: Vec<String>,
}

#[derive(Debug)]
struct InstRule {
    lhs: String,
    lhs_fs: FeatureStructure,
    rhs: Vec<Symbol>,
}

fn instantiate(rule: &Rule, suffix: &str) -> InstRule {
    InstRule {
        lhs: rule.lhs.clone(),
        lhs_fs: rule.lhs_fs.instantiate(suffix),
        rhs: rule
            .rhs
            .iter()
            .map(|s| match s {
                Symbol::NonTerm(cat, fs) => Symbol::NonTerm(cat.clone(), fs.instantiate(suffix)),
                t => t.clone(),
            })
            .collect(),
    }
}

struct Chart {
    actives: Vec<Vec<Active>>,
    completed: Vec<Vec<Rc<Completed>>>,
    predicted: HashSet<(usize, usize)>,
    completed_seen: HashSet<String>,
    items: usize,
}

impl Chart {
    fn push(&mut self, item: Active, end: usize) -> Result<(), ParseError> {
        self.items += 1;
        if self.items > MAX_ITEMS {
            return Err(ParseError::ChartOverflow(MAX_ITEMS));
        }
        if item.dot == item.rule.rhs.len() {
            let fs = item.rule.lhs_fs.resolve(&item.bindings);
            let deriv = format!("({} {})", item.rule.lhs, item.children.join(" "));
            let key = format!("{}|{}|{}|{}|{}", item.rule.lhs, item.origin, end, fs, deriv);
            if self.completed_seen.insert(key) {
                self.completed[end].push(Rc::new(Completed {
                    cat: item.rule.lhs.clone(),
                    fs,
                    origin: item.origin,
                    deriv,
                }));
            }
        } else {
            self.actives[end].push(item);
        }
        Ok(())
    }
}

fn run_earley(
    rules: &[Rule],
    start: &str,
    tokens: &[String],
) -> Result<Vec<(FeatureStructure, String)>, ParseError> {
    let n = tokens.len();
    let mut chart = Chart {
        actives: vec![Vec::new(); n + 1],
        completed: vec![Vec::new(); n + 1],
        predicted: HashSet::new(),
        completed_seen: HashSet::new(),
        items: 0,
    };

    let predict = |chart: &mut Chart, cat: &str, pos: usize| -> Result<(), ParseError> {
        for (idx, rule) in rules.iter().enumerate() {
            if rule.lhs == cat && chart.predicted.insert((idx, pos)) {
                let inst = Rc::new(instantiate(rule, &format!("#{idx}@{pos}")));
                chart.push(
                    Active {
                        rule: inst,
                        dot: 0,
                        origin: pos,
                        bindings: Bindings::new(),
                        children: Vec::new(),
                    },
                    pos,
                )?;
            }
        }
        Ok(())
    };

    predict(&mut chart, start, 0)?;

    for pos in 0..=n {
        let mut ai = 0;
        let mut ci = 0;
        loop {
            if ci < chart.completed[pos].len() {
                let item = Rc::clone(&chart.completed[pos][ci]);
                ci += 1;
                // spans are non-empty, so actives at item.origin are final
                let candidates: Vec<Active> = chart.actives[item.origin]
                    .iter()
                    .filter(|a| {
                        matches!(&a.rule.rhs[a.dot], Symbol::NonTerm(cat, _) if *cat == item.cat)
                    })
                    .cloned()
                    .collect();
                for active in candidates {
                    let Symbol::NonTerm(_, slot_fs) = &active.rule.rhs[active.dot] else {
                        continue;
                    };
                    let mut bindings = active.bindings.clone();
                    if bindings.unify_structures(slot_fs, &item.fs) {
                        let mut children = active.children.clone();
                        children.push(item.deriv.clone());
                        chart.push(
                            Active {
                                rule: Rc::clone(&active.rule),
                                dot: active.dot + 1,
                                origin: active.origin,
                                bindings,
                                children,
                            },
                            pos,
                        )?;
                    }
                }
                continue;
            }
            if ai < chart.actives[pos].len() {
                let item = chart.actives[pos][ai].clone();
                ai += 1;
                match &item.rule.rhs[item.dot] {
                    Symbol::NonTerm(cat, _) => predict(&mut chart, cat, pos)?,
                    Symbol::Term(word) => {
                        if pos < n && tokens[pos] == *word {
                            let mut children = item.children.clone();
                            children.push(word.clone());
                            chart.push(
                                Active {
                                    rule: Rc::clone(&item.rule),
                                    dot: item.dot + 1,
                                    origin: item.origin,
                                    bindings: item.bindings.clone(),
                                    children,
                                },
                                pos + 1,
                            )?;
                        }
                    }
                }
                continue;
            }
            break;
        }
    }

    Ok(chart.completed[n]
        .iter()
        .filter(|c| c.cat == start && c.origin == 0)
        .map(|c| (c.fs.clone(), c.deriv.clone()))
        .collect())
}

/// True for a word that looks like a proper name: leading uppercase letter,
/// alphabetic tail.
fn is_name_like(word: &str) -> bool {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) if c.is_uppercase() => chars.all(|c| c.is_alphanumeric()),
        _ => false,
    }
}

impl Grammar {
    /// Parses a sentence: tokenize, fold case against the lexicon, promote
    /// unknown capitalized tokens to proper names, chart-parse, and reduce
    /// every complete reading's SEM to a formula.
    pub fn parse(&self, sentence: &str) -> Result<ParseResult, ParseError> {
        let raw = tokenize(sentence);
        if raw.is_empty() {
            return Err(ParseError::NoParse {
                sentence: sentence.to_string(),
                reason: Some("no tokens".into()),
            });
        }
        let mut tokens = Vec::with_capacity(raw.len());
        let mut promotions: Vec<String> = Vec::new();
        for tok in raw {
            if self.has_terminal(&tok) {
                tokens.push(tok);
                continue;
            }
            let lower = tok.to_lowercase();
            if self.has_terminal(&lower) {
                tokens.push(lower);
                continue;
            }
            if is_name_like(&tok) {
                if !promotions.contains(&tok) {
                    log::info!("promoting unknown capitalized token {tok:?} to a proper name");
                    promotions.push(tok.clone());
                }
                tokens.push(tok);
                continue;
            }
            return Err(ParseError::NoParse {
                sentence: sentence.to_string(),
                reason: Some(format!("unknown word {tok:?}")),
            });
        }

        let mut rules = self.rules.clone();
        for name in &promotions {
            let mut fs = FeatureStructure::new();
            fs.set("NUM", FeatValue::Atom("sg".into()));
            fs.set("SEM", FeatValue::Sem(LambdaTerm::Const(name.clone())));
            rules.push(Rule {
                lhs: "PropN".into(),
                lhs_fs: fs,
                rhs: vec![Symbol::Term(name.clone())],
            });
        }

        let edges = run_earley(&rules, &self.start, &tokens)?;
        if edges.is_empty() {
            return Err(ParseError::NoParse { sentence: sentence.to_string(), reason: None });
        }

        let mut trees = Vec::new();
        let mut formulas = Vec::new();
        for (fs, deriv) in edges {
            let Some(FeatValue::Sem(sem)) = fs.get("SEM") else {
                continue;
            };
            let reduced = beta_reduce(sem)?;
            if let Ok(formula) = to_formula(&reduced) {
                formulas.push(formula);
            }
            trees.push(ParseTree { derivation: deriv, sem: reduced });
        }
        if trees.is_empty() {
            return Err(ParseError::NoParse {
                sentence: sentence.to_string(),
                reason: Some("no reading carries a SEM".into()),
            });
        }
        Ok(ParseResult { sentence: sentence.to_string(), trees, formulas })
    }
}
