//! Grounding over a finite domain: quantifier expansion, NNF, CNF by
//! distribution, and the resulting propositional clause set.

use std::collections::HashMap;
use std::fmt;

use crate::error::TheoryError;
use crate::fol::ast::{Formula, Individual, Term};
use crate::fol::theory::Theory;

/// Replaces all free occurrences of `var` by the individual `ind`. Bound
/// occurrences are untouched; capture cannot occur because the substituent
/// is a constant.
pub fn substitute(formula: &Formula, var: &str, ind: &Individual) -> Formula {
    match formula {
        Formula::Atom { pred, args } => Formula::Atom {
            pred: pred.clone(),
            args: args
                .iter()
                .map(|t| match t {
                    Term::Var(v) if v == var => Term::Const(ind.name().to_string()),
                    other => other.clone(),
                })
                .collect(),
        },
        Formula::Not(f) => Formula::not(substitute(f, var, ind)),
        Formula::And(a, b) => Formula::and(substitute(a, var, ind), substitute(b, var, ind)),
        Formula::Or(a, b) => Formula::or(substitute(a, var, ind), substitute(b, var, ind)),
        Formula::Implies(a, b) => {
            Formula::implies(substitute(a, var, ind), substitute(b, var, ind))
        }
        Formula::Iff(a, b) => Formula::iff(substitute(a, var, ind), substitute(b, var, ind)),
        Formula::ForAll(v, f) if v == var => Formula::ForAll(v.clone(), f.clone()),
        Formula::Exists(v, f) if v == var => Formula::Exists(v.clone(), f.clone()),
        Formula::ForAll(v, f) => Formula::forall(v.clone(), substitute(f, var, ind)),
        Formula::Exists(v, f) => Formula::exists(v.clone(), substitute(f, var, ind)),
    }
}

/// Expands `ForAll` to a conjunction and `Exists` to a disjunction over the
/// domain. The domain is non-empty by theory invariant.
pub fn expand_quantifiers(formula: &Formula, domain: &[Individual]) -> Formula {
    match formula {
        Formula::Atom { .. } => formula.clone(),
        Formula::Not(f) => Formula::not(expand_quantifiers(f, domain)),
        Formula::And(a, b) => Formula::and(
            expand_quantifiers(a, domain),
            expand_quantifiers(b, domain),
        ),
        Formula::Or(a, b) => Formula::or(
            expand_quantifiers(a, domain),
            expand_quantifiers(b, domain),
        ),
        Formula::Implies(a, b) => Formula::implies(
            expand_quantifiers(a, domain),
            expand_quantifiers(b, domain),
        ),
        Formula::Iff(a, b) => Formula::iff(
            expand_quantifiers(a, domain),
            expand_quantifiers(b, domain),
        ),
        Formula::ForAll(v, body) => Formula::conj(
            domain
                .iter()
                .map(|ind| expand_quantifiers(&substitute(body, v, ind), domain)),
        )
        .expect("non-empty domain"),
        Formula::Exists(v, body) => Formula::disj(
            domain
                .iter()
                .map(|ind| expand_quantifiers(&substitute(body, v, ind), domain)),
        )
        .expect("non-empty domain"),
    }
}

/// Negation normal form: `->` and `<->` eliminated, negations pushed to
/// atoms. Equivalence-preserving.
pub fn to_nnf(formula: &Formula) -> Formula {
    nnf(formula, true)
}

fn nnf(f: &Formula, positive: bool) -> Formula {
    match (f, positive) {
        (Formula::Atom { .. }, true) => f.clone(),
        (Formula::Atom { .. }, false) => Formula::not(f.clone()),
        (Formula::Not(g), _) => nnf(g, !positive),
        (Formula::And(a, b), true) => Formula::and(nnf(a, true), nnf(b, true)),
        (Formula::And(a, b), false) => Formula::or(nnf(a, false), nnf(b, false)),
        (Formula::Or(a, b), true) => Formula::or(nnf(a, true), nnf(b, true)),
        (Formula::Or(a, b), false) => Formula::and(nnf(a, false), nnf(b, false)),
        (Formula::Implies(a, b), true) => Formula::or(nnf(a, false), nnf(b, true)),
        (Formula::Implies(a, b), false) => Formula::and(nnf(a, true), nnf(b, false)),
        (Formula::Iff(a, b), true) => Formula::and(
            Formula::or(nnf(a, false), nnf(b, true)),
            Formula::or(nnf(b, false), nnf(a, true)),
        ),
        (Formula::Iff(a, b), false) => Formula::or(
            Formula::and(nnf(a, true), nnf(b, false)),
            Formula::and(nnf(b, true), nnf(a, false)),
        ),
        (Formula::ForAll(v, g), true) => Formula::forall(v.clone(), nnf(g, true)),
        (Formula::ForAll(v, g), false) => Formula::exists(v.clone(), nnf(g, false)),
        (Formula::Exists(v, g), true) => Formula::exists(v.clone(), nnf(g, true)),
        (Formula::Exists(v, g), false) => Formula::forall(v.clone(), nnf(g, false)),
    }
}

/// One ground atom: a predicate applied to individual names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub pred: String,
    pub args: Vec<String>,
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            f.write_str(&self.pred)
        } else {
            write!(f, "{}({})", self.pred, self.args.join(","))
        }
    }
}

/// A signed reference into the atom table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lit {
    pub atom: usize,
    pub positive: bool,
}

/// The propositional image of a theory over its fixed domain.
///
/// The atom table is the full grid signature x domain^arity, ordered by
/// predicate `(name, arity)` and then by argument tuple in domain order, so
/// enumeration order and serialized output are reproducible run to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundClauseSet {
    atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, usize>,
    clauses: Vec<Vec<Lit>>,
    domain: Vec<Individual>,
}

impl GroundClauseSet {
    pub fn atoms(&self) -> &[GroundAtom] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn domain(&self) -> &[Individual] {
        &self.domain
    }

    pub fn atom_index(&self, atom: &GroundAtom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Vec::is_empty)
    }

    /// Builds a clause set directly from parts; used by tests that exercise
    /// the enumerator on hand-written propositional inputs.
    pub fn from_parts(atoms: Vec<GroundAtom>, clauses: Vec<Vec<Lit>>) -> Self {
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        GroundClauseSet { atoms, index, clauses, domain: Vec::new() }
    }

    /// Tarskian evaluation of a closed formula against a truth assignment
    /// over this grid. Quantifiers range over the grounding domain.
    pub fn evaluate_with(
        &self,
        formula: &Formula,
        assignment: &dyn Fn(usize) -> bool,
    ) -> Result<bool, TheoryError> {
        if let Some(var) = formula.free_vars().into_iter().next() {
            return Err(TheoryError::UnboundVariable { var, formula: formula.to_string() });
        }
        let ground = expand_quantifiers(formula, &self.domain);
        self.eval_ground(&ground, assignment)
    }

    fn eval_ground(
        &self,
        f: &Formula,
        assignment: &dyn Fn(usize) -> bool,
    ) -> Result<bool, TheoryError> {
        match f {
            Formula::Atom { pred, args } => {
                let atom = GroundAtom {
                    pred: pred.clone(),
                    args: args
                        .iter()
                        .map(|t| match t {
                            Term::Const(c) => c.clone(),
                            Term::Var(v) => v.clone(),
                        })
                        .collect(),
                };
                match self.atom_index(&atom) {
                    Some(i) => Ok(assignment(i)),
                    None => Err(TheoryError::UnknownPredicate {
                        name: pred.clone(),
                        arity: args.len(),
                        formula: f.to_string(),
                    }),
                }
            }
            Formula::Not(g) => Ok(!self.eval_ground(g, assignment)?),
            Formula::And(a, b) => {
                Ok(self.eval_ground(a, assignment)? && self.eval_ground(b, assignment)?)
            }
            Formula::Or(a, b) => {
                Ok(self.eval_ground(a, assignment)? || self.eval_ground(b, assignment)?)
            }
            Formula::Implies(a, b) => {
                Ok(!self.eval_ground(a, assignment)? || self.eval_ground(b, assignment)?)
            }
            Formula::Iff(a, b) => {
                Ok(self.eval_ground(a, assignment)? == self.eval_ground(b, assignment)?)
            }
            Formula::ForAll(..) | Formula::Exists(..) => unreachable!("expanded before eval"),
        }
    }
}

impl fmt::Display for GroundClauseSet {
    /// Deterministic textual form: the atom table, then one clause per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "atoms {}", self.atoms.len())?;
        for (i, a) in self.atoms.iter().enumerate() {
            writeln!(f, "  {i} {a}")?;
        }
        writeln!(f, "clauses {}", self.clauses.len())?;
        for c in &self.clauses {
            let lits: Vec<String> = c
                .iter()
                .map(|l| {
                    let sign = if l.positive { "" } else { "-" };
                    format!("{sign}{}", self.atoms[l.atom])
                })
                .collect();
            writeln!(f, "  {}", lits.join(" "))?;
        }
        Ok(())
    }
}

/// Grounds a theory: expands quantifiers over the domain, converts to NNF
/// then CNF by distribution (no fresh propositions), and runs a unit
/// closure that appends the empty clause when a direct contradiction is
/// derivable. The result is logically equivalent to the theory over its
/// domain under the unique-name assumption.
pub fn ground(theory: &Theory) -> GroundClauseSet {
    let mut preds: Vec<_> = theory.signature().to_vec();
    preds.sort_by(|a, b| (&a.name, a.arity).cmp(&(&b.name, b.arity)));

    let domain = theory.domain().to_vec();
    let names: Vec<String> = domain.iter().map(|i| i.name().to_string()).collect();
    let mut atoms = Vec::new();
    for p in &preds {
        let mut tuple = vec![0usize; p.arity];
        loop {
            atoms.push(GroundAtom {
                pred: p.name.clone(),
                args: tuple.iter().map(|&i| names[i].clone()).collect(),
            });
            // advance the tuple odometer, last position fastest
            let mut pos = p.arity;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < names.len() {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    let index: HashMap<GroundAtom, usize> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), i))
        .collect();

    let mut clauses = Vec::new();
    for sentence in theory.sentences() {
        let expanded = expand_quantifiers(sentence, &domain);
        let normal = to_nnf(&expanded);
        distribute(&normal, &index, &mut clauses);
    }

    if let Some(()) = unit_conflict(atoms.len(), &clauses) {
        clauses.push(Vec::new());
    }

    GroundClauseSet { atoms, index, clauses, domain }
}

fn literal(f: &Formula, index: &HashMap<GroundAtom, usize>) -> Option<Lit> {
    let (inner, positive) = match f {
        Formula::Not(g) => (g.as_ref(), false),
        other => (other, true),
    };
    if let Formula::Atom { pred, args } = inner {
        let atom = GroundAtom {
            pred: pred.clone(),
            args: args
                .iter()
                .map(|t| match t {
                    Term::Const(c) => c.clone(),
                    Term::Var(v) => v.clone(),
                })
                .collect(),
        };
        return index.get(&atom).map(|&i| Lit { atom: i, positive });
    }
    None
}

fn distribute(f: &Formula, index: &HashMap<GroundAtom, usize>, out: &mut Vec<Vec<Lit>>) {
    let mut local = cnf_clauses(f, index);
    for clause in &mut local {
        clause.sort();
        clause.dedup();
    }
    local.retain(|clause| {
        !clause
            .iter()
            .any(|l| clause.contains(&Lit { atom: l.atom, positive: !l.positive }))
    });
    out.extend(local);
}

fn cnf_clauses(f: &Formula, index: &HashMap<GroundAtom, usize>) -> Vec<Vec<Lit>> {
    if let Some(lit) = literal(f, index) {
        return vec![vec![lit]];
    }
    match f {
        Formula::And(a, b) => {
            let mut out = cnf_clauses(a, index);
            out.extend(cnf_clauses(b, index));
            out
        }
        Formula::Or(a, b) => {
            let left = cnf_clauses(a, index);
            let right = cnf_clauses(b, index);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    let mut c = l.clone();
                    c.extend(r.iter().copied());
                    out.push(c);
                }
            }
            out
        }
        other => unreachable!("not in ground NNF: {other}"),
    }
}

/// Unit-resolution closure; `Some(())` when complementary units are
/// derivable, i.e. the set is unsatisfiable without search.
fn unit_conflict(atom_count: usize, clauses: &[Vec<Lit>]) -> Option<()> {
    let mut forced: Vec<Option<bool>> = vec![None; atom_count];
    loop {
        let mut changed = false;
        for clause in clauses {
            let mut unassigned = Vec::new();
            let mut satisfied = false;
            for lit in clause {
                match forced[lit.atom] {
                    Some(v) if v == lit.positive => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => unassigned.push(*lit),
                }
            }
            if satisfied {
                continue;
            }
            match unassigned.len() {
                0 => return Some(()),
                1 => {
                    forced[unassigned[0].atom] = Some(unassigned[0].positive);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::ast::Predicate;
    use crate::fol::theory::{ground_atom, individuals, Theory};

    fn var(v: &str) -> Term {
        Term::var(v)
    }

    #[test]
    fn substitute_spec_examples() {
        let mike = Individual::new("Mike").unwrap();
        let bob = Individual::new("Bob").unwrap();
        let bart = Individual::new("Bart").unwrap();

        let f = Formula::atom("taller", vec![var("x"), Term::constant("Sally")]);
        assert_eq!(
            substitute(&f, "x", &mike),
            ground_atom("taller", &["Mike", "Sally"])
        );

        let g = Formula::forall("x", Formula::atom("taller", vec![var("x"), var("y")]));
        assert_eq!(
            substitute(&g, "y", &bob),
            Formula::forall(
                "x",
                Formula::atom("taller", vec![var("x"), Term::constant("Bob")])
            )
        );

        let h = ground_atom("knight", &["Sue"]);
        assert_eq!(substitute(&h, "x", &bart), h);
    }

    #[test]
    fn nnf_spec_examples() {
        let p = ground_atom("p", &["a"]);
        let q = ground_atom("q", &["a"]);
        assert_eq!(
            to_nnf(&Formula::not(Formula::and(p.clone(), q.clone()))),
            Formula::or(Formula::not(p.clone()), Formula::not(q.clone()))
        );
        assert_eq!(to_nnf(&Formula::not(Formula::not(p.clone()))), p);
        assert_eq!(
            to_nnf(&Formula::iff(p.clone(), q.clone())),
            Formula::and(
                Formula::or(Formula::not(p.clone()), q.clone()),
                Formula::or(Formula::not(q), p)
            )
        );
    }

    #[test]
    fn forall_expands_to_conjunction() {
        let dom = individuals(&["a", "b"]);
        let f = Formula::forall(
            "x",
            Formula::or(
                Formula::atom("knight", vec![var("x")]),
                Formula::atom("knave", vec![var("x")]),
            ),
        );
        let expanded = expand_quantifiers(&f, &dom);
        assert_eq!(
            expanded,
            Formula::and(
                Formula::or(ground_atom("knight", &["a"]), ground_atom("knave", &["a"])),
                Formula::or(ground_atom("knight", &["b"]), ground_atom("knave", &["b"])),
            )
        );
    }

    #[test]
    fn direct_contradiction_yields_empty_clause() {
        let sig = vec![Predicate::new("p", 1)];
        let dom = individuals(&["a"]);
        let theory = Theory::new(
            sig,
            dom,
            vec![ground_atom("p", &["a"]), Formula::not(ground_atom("p", &["a"]))],
            vec![],
        )
        .unwrap();
        let cs = ground(&theory);
        assert!(cs.has_empty_clause());
    }

    #[test]
    fn tautological_clauses_are_removed() {
        let sig = vec![Predicate::new("p", 1)];
        let dom = individuals(&["a"]);
        let theory = Theory::new(
            sig,
            dom,
            vec![Formula::or(
                ground_atom("p", &["a"]),
                Formula::not(ground_atom("p", &["a"])),
            )],
            vec![],
        )
        .unwrap();
        let cs = ground(&theory);
        assert!(cs.clauses().is_empty());
        assert!(!cs.has_empty_clause());
    }

    #[test]
    fn atom_grid_is_sorted_and_stable() {
        let sig = vec![Predicate::new("q", 1), Predicate::new("p", 2)];
        let dom = individuals(&["a", "b"]);
        let theory = Theory::new(sig, dom, vec![], vec![]).unwrap();
        let cs = ground(&theory);
        let listed: Vec<String> = cs.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(
            listed,
            vec!["p(a,a)", "p(a,b)", "p(b,a)", "p(b,b)", "q(a)", "q(b)"]
        );
        let cs2 = ground(&theory);
        assert_eq!(cs.to_string(), cs2.to_string());
    }
}
