//! Feature structures and unification. Features map names (NUM, SEM, GRD,
//! TNS, ...) to atomic values, variables, or lambda terms; unification is
//! symmetric, fails on atom clashes, and propagates variable bindings
//! within one rule application.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::lambda::{alpha_eq, LambdaTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatValue {
    Atom(String),
    Var(String),
    Sem(LambdaTerm),
}

impl fmt::Display for FeatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatValue::Atom(a) => f.write_str(a),
            FeatValue::Var(v) => write!(f, "?{v}"),
            FeatValue::Sem(t) => write!(f, "<{t}>"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureStructure {
    feats: BTreeMap<String, FeatValue>,
}

impl FeatureStructure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: FeatValue) {
        self.feats.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&FeatValue> {
        self.feats.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &FeatValue)> {
        self.feats.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.feats.is_empty()
    }

    /// Renames every variable (including feature variables inside SEM
    /// terms) with the given suffix, so each rule application draws from a
    /// private variable space.
    pub fn instantiate(&self, suffix: &str) -> FeatureStructure {
        let feats = self
            .feats
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    FeatValue::Var(name) => FeatValue::Var(format!("{name}{suffix}")),
                    FeatValue::Sem(term) => FeatValue::Sem(rename_feat_vars(term, suffix)),
                    atom => atom.clone(),
                };
                (k.clone(), v)
            })
            .collect();
        FeatureStructure { feats }
    }

    /// Substitutes bindings into every feature value. Unbound variables are
    /// left in place.
    pub fn resolve(&self, bindings: &Bindings) -> FeatureStructure {
        let feats = self
            .feats
            .iter()
            .map(|(k, v)| (k.clone(), bindings.resolve_deep(v)))
            .collect();
        FeatureStructure { feats }
    }
}

impl fmt::Display for FeatureStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .feats
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn rename_feat_vars(term: &LambdaTerm, suffix: &str) -> LambdaTerm {
    use LambdaTerm::*;
    match term {
        FeatVar(v) => FeatVar(format!("{v}{suffix}")),
        Var(_) | Const(_) => term.clone(),
        Abs(v, b) => Abs(v.clone(), Box::new(rename_feat_vars(b, suffix))),
        All(v, b) => All(v.clone(), Box::new(rename_feat_vars(b, suffix))),
        Exists(v, b) => Exists(v.clone(), Box::new(rename_feat_vars(b, suffix))),
        Not(b) => Not(Box::new(rename_feat_vars(b, suffix))),
        App(a, b) => App(
            Box::new(rename_feat_vars(a, suffix)),
            Box::new(rename_feat_vars(b, suffix)),
        ),
        And(a, b) => And(
            Box::new(rename_feat_vars(a, suffix)),
            Box::new(rename_feat_vars(b, suffix)),
        ),
        Or(a, b) => Or(
            Box::new(rename_feat_vars(a, suffix)),
            Box::new(rename_feat_vars(b, suffix)),
        ),
        Implies(a, b) => Implies(
            Box::new(rename_feat_vars(a, suffix)),
            Box::new(rename_feat_vars(b, suffix)),
        ),
        Iff(a, b) => Iff(
            Box::new(rename_feat_vars(a, suffix)),
            Box::new(rename_feat_vars(b, suffix)),
        ),
    }
}

/// Variable bindings accumulated while one rule application advances over
/// its children.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    map: HashMap<String, FeatValue>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    fn resolve<'a>(&'a self, value: &'a FeatValue) -> &'a FeatValue {
        let mut current = value;
        let mut hops = 0;
        while let FeatValue::Var(v) = current {
            match self.map.get(v) {
                Some(next) => current = next,
                None => break,
            }
            hops += 1;
            if hops > self.map.len() {
                break;
            }
        }
        current
    }

    /// Resolution that also substitutes feature variables inside SEM terms.
    pub fn resolve_deep(&self, value: &FeatValue) -> FeatValue {
        match self.resolve(value) {
            FeatValue::Sem(term) => FeatValue::Sem(self.resolve_sem(term)),
            other => other.clone(),
        }
    }

    pub fn resolve_sem(&self, term: &LambdaTerm) -> LambdaTerm {
        use LambdaTerm::*;
        match term {
            FeatVar(v) => match self.resolve(&FeatValue::Var(v.clone())) {
                FeatValue::Sem(t) => self.resolve_sem(t),
                FeatValue::Var(w) => FeatVar(w.clone()),
                FeatValue::Atom(_) => term.clone(),
            },
            Var(_) | Const(_) => term.clone(),
            Abs(v, b) => Abs(v.clone(), Box::new(self.resolve_sem(b))),
            All(v, b) => All(v.clone(), Box::new(self.resolve_sem(b))),
            Exists(v, b) => Exists(v.clone(), Box::new(self.resolve_sem(b))),
            Not(b) => Not(Box::new(self.resolve_sem(b))),
            App(a, b) => App(Box::new(self.resolve_sem(a)), Box::new(self.resolve_sem(b))),
            And(a, b) => And(Box::new(self.resolve_sem(a)), Box::new(self.resolve_sem(b))),
            Or(a, b) => Or(Box::new(self.resolve_sem(a)), Box::new(self.resolve_sem(b))),
            Implies(a, b) => Implies(Box::new(self.resolve_sem(a)), Box::new(self.resolve_sem(b))),
            Iff(a, b) => Iff(Box::new(self.resolve_sem(a)), Box::new(self.resolve_sem(b))),
        }
    }

    /// Unifies two values under these bindings. Returns false (leaving
    /// any partial bindings in place; callers clone first) on clash.
    pub fn unify_values(&mut self, a: &FeatValue, b: &FeatValue) -> bool {
        let ra = self.resolve(a).clone();
        let rb = self.resolve(b).clone();
        match (ra, rb) {
            (FeatValue::Var(v), other) => {
                if let FeatValue::Var(w) = &other {
                    if *w == v {
                        return true;
                    }
                }
                self.map.insert(v, other);
                true
            }
            (other, FeatValue::Var(v)) => {
                self.map.insert(v, other);
                true
            }
            (FeatValue::Atom(x), FeatValue::Atom(y)) => x == y,
            (FeatValue::Sem(x), FeatValue::Sem(y)) => {
                alpha_eq(&self.resolve_sem(&x), &self.resolve_sem(&y))
            }
            _ => false,
        }
    }

    /// Unifies the features shared by `slot` and `found`; features present
    /// on only one side pass through unconstrained.
    pub fn unify_structures(&mut self, slot: &FeatureStructure, found: &FeatureStructure) -> bool {
        for (name, sv) in slot.iter() {
            if let Some(fv) = found.get(name) {
                if !self.unify_values(sv, fv) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> FeatValue {
        FeatValue::Atom(s.into())
    }

    fn var(s: &str) -> FeatValue {
        FeatValue::Var(s.into())
    }

    #[test]
    fn atoms_clash_variables_bind() {
        let mut b = Bindings::new();
        assert!(b.unify_values(&atom("sg"), &atom("sg")));
        assert!(!b.unify_values(&atom("sg"), &atom("pl")));
        assert!(b.unify_values(&var("n"), &atom("sg")));
        assert!(b.unify_values(&var("n"), &atom("sg")));
        assert!(!b.unify_values(&var("n"), &atom("pl")));
    }

    #[test]
    fn unification_is_symmetric() {
        let mut b1 = Bindings::new();
        let mut b2 = Bindings::new();
        assert!(b1.unify_values(&var("n"), &atom("sg")));
        assert!(b2.unify_values(&atom("sg"), &var("n")));
        assert_eq!(
            b1.resolve_deep(&var("n")),
            b2.resolve_deep(&var("n"))
        );
    }

    #[test]
    fn bindings_propagate_through_shared_variables() {
        // NUM=?n on two slots forces agreement
        let mut b = Bindings::new();
        let mut np = FeatureStructure::new();
        np.set("NUM", atom("sg"));
        let mut slot = FeatureStructure::new();
        slot.set("NUM", var("n"));
        assert!(b.unify_structures(&slot, &np));
        let mut vp = FeatureStructure::new();
        vp.set("NUM", atom("pl"));
        assert!(!b.unify_structures(&slot, &vp));
    }
}
