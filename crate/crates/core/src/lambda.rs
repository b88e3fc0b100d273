//! Simply-applied lambda terms with logical connectives: the SEM values of
//! the feature grammar. Beta reduction is normal-order and capture-avoiding;
//! a step budget guards against pathological grammars.

use std::collections::HashMap;
use std::fmt;

use crate::error::LambdaError;
use crate::fol::{Formula, Term};

pub const REDUCTION_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LambdaTerm {
    /// A variable bound by `Abs`, `All` or `Exists` (or free: a FOL variable).
    Var(String),
    /// A predicate or individual constant.
    Const(String),
    /// A grammar feature variable (`?np`), substituted at rule application.
    FeatVar(String),
    Abs(String, Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
    Not(Box<LambdaTerm>),
    And(Box<LambdaTerm>, Box<LambdaTerm>),
    Or(Box<LambdaTerm>, Box<LambdaTerm>),
    Implies(Box<LambdaTerm>, Box<LambdaTerm>),
    Iff(Box<LambdaTerm>, Box<LambdaTerm>),
    All(String, Box<LambdaTerm>),
    Exists(String, Box<LambdaTerm>),
}

use LambdaTerm::*;

impl LambdaTerm {
    pub fn abs(v: impl Into<String>, body: LambdaTerm) -> Self {
        Abs(v.into(), Box::new(body))
    }

    pub fn app(f: LambdaTerm, a: LambdaTerm) -> Self {
        App(Box::new(f), Box::new(a))
    }

    /// `f(a, b, ...)` as nested applications.
    pub fn call(f: LambdaTerm, args: Vec<LambdaTerm>) -> Self {
        args.into_iter().fold(f, LambdaTerm::app)
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut bound = Vec::new();
        let mut out = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Var(v) => {
                if !bound.iter().any(|b| b == v) && !out.iter().any(|o| o == v) {
                    out.push(v.clone());
                }
            }
            Const(_) | FeatVar(_) => {}
            Abs(v, b) | All(v, b) | Exists(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            App(a, b) | And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Not(a) => a.collect_free(bound, out),
        }
    }

    pub fn feat_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let FeatVar(v) = t {
                if !out.iter().any(|o| o == v) {
                    out.push(v.clone());
                }
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&LambdaTerm)) {
        f(self);
        match self {
            Var(_) | Const(_) | FeatVar(_) => {}
            Abs(_, b) | All(_, b) | Exists(_, b) | Not(b) => b.walk(f),
            App(a, b) | And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    /// Replaces feature variables by their bound terms; names missing from
    /// the map are left in place.
    pub fn subst_feat_vars(&self, map: &HashMap<String, LambdaTerm>) -> LambdaTerm {
        match self {
            FeatVar(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Var(_) | Const(_) => self.clone(),
            Abs(v, b) => Abs(v.clone(), Box::new(b.subst_feat_vars(map))),
            All(v, b) => All(v.clone(), Box::new(b.subst_feat_vars(map))),
            Exists(v, b) => Exists(v.clone(), Box::new(b.subst_feat_vars(map))),
            Not(b) => Not(Box::new(b.subst_feat_vars(map))),
            App(a, b) => App(
                Box::new(a.subst_feat_vars(map)),
                Box::new(b.subst_feat_vars(map)),
            ),
            And(a, b) => And(
                Box::new(a.subst_feat_vars(map)),
                Box::new(b.subst_feat_vars(map)),
            ),
            Or(a, b) => Or(
                Box::new(a.subst_feat_vars(map)),
                Box::new(b.subst_feat_vars(map)),
            ),
            Implies(a, b) => Implies(
                Box::new(a.subst_feat_vars(map)),
                Box::new(b.subst_feat_vars(map)),
            ),
            Iff(a, b) => Iff(
                Box::new(a.subst_feat_vars(map)),
                Box::new(b.subst_feat_vars(map)),
            ),
        }
    }
}

fn rebuild1(t: &LambdaTerm, b: LambdaTerm) -> LambdaTerm {
    match t {
        Abs(v, _) => Abs(v.clone(), Box::new(b)),
        All(v, _) => All(v.clone(), Box::new(b)),
        Exists(v, _) => Exists(v.clone(), Box::new(b)),
        Not(_) => Not(Box::new(b)),
        _ => unreachable!(),
    }
}

fn rebuild2(t: &LambdaTerm, a: LambdaTerm, b: LambdaTerm) -> LambdaTerm {
    match t {
        App(..) => App(Box::new(a), Box::new(b)),
        And(..) => And(Box::new(a), Box::new(b)),
        Or(..) => Or(Box::new(a), Box::new(b)),
        Implies(..) => Implies(Box::new(a), Box::new(b)),
        Iff(..) => Iff(Box::new(a), Box::new(b)),
        _ => unreachable!(),
    }
}

/// Picks a name based on `base` that is free in neither term.
fn fresh_name(base: &str, avoid: &[&LambdaTerm]) -> String {
    let taken: Vec<String> = avoid.iter().flat_map(|t| t.free_vars()).collect();
    let mut n = 1;
    loop {
        let candidate = format!("{base}{n}");
        if !taken.iter().any(|t| *t == candidate) {
            return candidate;
        }
        n += 1;
    }
}

/// Capture-avoiding substitution of `value` for free `var`.
pub fn subst(term: &LambdaTerm, var: &str, value: &LambdaTerm) -> LambdaTerm {
    match term {
        Var(v) if v == var => value.clone(),
        Var(_) | Const(_) | FeatVar(_) => term.clone(),
        Abs(v, _) | All(v, _) | Exists(v, _) if v == var => term.clone(),
        Abs(v, b) | All(v, b) | Exists(v, b) => {
            if value.free_vars().iter().any(|f| f == v) {
                let renamed = fresh_name(v, &[b, value]);
                let body = subst(b, v, &Var(renamed.clone()));
                let body = subst(&body, var, value);
                match term {
                    Abs(..) => Abs(renamed, Box::new(body)),
                    All(..) => All(renamed, Box::new(body)),
                    _ => Exists(renamed, Box::new(body)),
                }
            } else {
                rebuild1(term, subst(b, var, value))
            }
        }
        Not(b) => rebuild1(term, subst(b, var, value)),
        App(a, b) | And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => {
            rebuild2(term, subst(a, var, value), subst(b, var, value))
        }
    }
}

struct Reducer {
    budget: usize,
}

impl Reducer {
    fn spend(&mut self) -> Result<(), LambdaError> {
        if self.budget == 0 {
            return Err(LambdaError::ReductionBudgetExceeded(REDUCTION_BUDGET));
        }
        self.budget -= 1;
        Ok(())
    }

    fn whnf(&mut self, mut t: LambdaTerm) -> Result<LambdaTerm, LambdaError> {
        loop {
            match t {
                App(f, a) => {
                    let f = self.whnf(*f)?;
                    if let Abs(v, body) = f {
                        self.spend()?;
                        t = subst(&body, &v, &a);
                    } else {
                        return Ok(App(Box::new(f), a));
                    }
                }
                other => return Ok(other),
            }
        }
    }

    fn normalize(&mut self, t: LambdaTerm) -> Result<LambdaTerm, LambdaError> {
        match self.whnf(t)? {
            App(f, a) => Ok(App(
                Box::new(self.normalize(*f)?),
                Box::new(self.normalize(*a)?),
            )),
            Abs(v, b) => Ok(Abs(v, Box::new(self.normalize(*b)?))),
            All(v, b) => Ok(All(v, Box::new(self.normalize(*b)?))),
            Exists(v, b) => Ok(Exists(v, Box::new(self.normalize(*b)?))),
            Not(b) => Ok(Not(Box::new(self.normalize(*b)?))),
            And(a, b) => Ok(And(
                Box::new(self.normalize(*a)?),
                Box::new(self.normalize(*b)?),
            )),
            Or(a, b) => Ok(Or(
                Box::new(self.normalize(*a)?),
                Box::new(self.normalize(*b)?),
            )),
            Implies(a, b) => Ok(Implies(
                Box::new(self.normalize(*a)?),
                Box::new(self.normalize(*b)?),
            )),
            Iff(a, b) => Ok(Iff(
                Box::new(self.normalize(*a)?),
                Box::new(self.normalize(*b)?),
            )),
            leaf => Ok(leaf),
        }
    }
}

/// Normal-order reduction to beta-normal form.
pub fn beta_reduce(term: &LambdaTerm) -> Result<LambdaTerm, LambdaError> {
    Reducer { budget: REDUCTION_BUDGET }.normalize(term.clone())
}

/// Alpha-equivalence: equal up to renaming of bound variables.
pub fn alpha_eq(a: &LambdaTerm, b: &LambdaTerm) -> bool {
    fn go(a: &LambdaTerm, b: &LambdaTerm, env: &mut Vec<(String, String)>) -> bool {
        match (a, b) {
            (Var(x), Var(y)) => {
                for (l, r) in env.iter().rev() {
                    if l == x || r == y {
                        return l == x && r == y;
                    }
                }
                x == y
            }
            (Const(x), Const(y)) | (FeatVar(x), FeatVar(y)) => x == y,
            (Abs(v1, b1), Abs(v2, b2))
            | (All(v1, b1), All(v2, b2))
            | (Exists(v1, b1), Exists(v2, b2)) => {
                env.push((v1.clone(), v2.clone()));
                let r = go(b1, b2, env);
                env.pop();
                r
            }
            (Not(x), Not(y)) => go(x, y, env),
            (App(a1, b1), App(a2, b2))
            | (And(a1, b1), And(a2, b2))
            | (Or(a1, b1), Or(a2, b2))
            | (Implies(a1, b1), Implies(a2, b2))
            | (Iff(a1, b1), Iff(a2, b2)) => go(a1, a2, env) && go(b1, b2, env),
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

/// Converts a beta-normal, lambda-free term into a [`Formula`]. Application
/// spines become atoms; a residual abstraction or feature variable is an
/// error.
pub fn to_formula(term: &LambdaTerm) -> Result<Formula, LambdaError> {
    match term {
        Not(b) => Ok(Formula::not(to_formula(b)?)),
        And(a, b) => Ok(Formula::and(to_formula(a)?, to_formula(b)?)),
        Or(a, b) => Ok(Formula::or(to_formula(a)?, to_formula(b)?)),
        Implies(a, b) => Ok(Formula::implies(to_formula(a)?, to_formula(b)?)),
        Iff(a, b) => Ok(Formula::iff(to_formula(a)?, to_formula(b)?)),
        All(v, b) => Ok(Formula::forall(v.clone(), to_formula(b)?)),
        Exists(v, b) => Ok(Formula::exists(v.clone(), to_formula(b)?)),
        App(..) => {
            let mut head = term;
            let mut args = Vec::new();
            while let App(f, a) = head {
                args.push(a.as_ref());
                head = f;
            }
            args.reverse();
            let pred = match head {
                Const(name) => name.clone(),
                other => return Err(LambdaError::NotAFormula(other.to_string())),
            };
            let mut terms = Vec::with_capacity(args.len());
            for a in args {
                match a {
                    Const(c) => terms.push(Term::constant(c.clone())),
                    Var(v) => terms.push(Term::var(v.clone())),
                    FeatVar(v) => return Err(LambdaError::UnresolvedFeatureVar(v.clone())),
                    other => return Err(LambdaError::NotAFormula(other.to_string())),
                }
            }
            Ok(Formula::atom(pred, terms))
        }
        Const(name) => Ok(Formula::atom(name.clone(), vec![])),
        Abs(..) => Err(LambdaError::ResidualLambda(term.to_string())),
        FeatVar(v) => Err(LambdaError::UnresolvedFeatureVar(v.clone())),
        Var(v) => Err(LambdaError::NotAFormula(format!("bare variable {v}"))),
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var(v) => f.write_str(v),
            Const(c) => f.write_str(c),
            FeatVar(v) => write!(f, "?{v}"),
            Abs(v, b) => write!(f, "\\{v}.{b}"),
            All(v, b) => write!(f, "all {v}.({b})"),
            Exists(v, b) => write!(f, "exists {v}.({b})"),
            Not(b) => write!(f, "-({b})"),
            App(a, b) => {
                // render spines as calls: f(a,b)
                let mut head = self;
                let mut args = Vec::new();
                while let App(x, y) = head {
                    args.push(y);
                    head = x;
                }
                args.reverse();
                let _ = (a, b);
                match head {
                    Const(_) | Var(_) | FeatVar(_) => write!(f, "{head}")?,
                    other => write!(f, "({other})")?,
                }
                let rendered: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "({})", rendered.join(","))
            }
            And(a, b) => write!(f, "({a} & {b})"),
            Or(a, b) => write!(f, "({a} | {b})"),
            Implies(a, b) => write!(f, "({a} -> {b})"),
            Iff(a, b) => write!(f, "({a} <-> {b})"),
        }
    }
}

/// Parses the lambda-term syntax used in grammar SEM values:
/// `\x.(inhabitant(x) & knight(x))`, `?vp(?np)`,
/// `all x.(knight(x) -> m(x))`. Lambda and quantifier bodies after the dot
/// extend as far right as possible.
pub fn parse_lambda(text: &str) -> Result<LambdaTerm, String> {
    let mut p = LParser { chars: text.chars().collect(), pos: 0, bound: Vec::new() };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!("trailing input at offset {} in {text:?}", p.pos));
    }
    Ok(t)
}

struct LParser {
    chars: Vec<char>,
    pos: usize,
    bound: Vec<String>,
}

impl LParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.chars[self.pos..]
            .iter()
            .zip(s.chars())
            .filter(|(a, b)| **a == *b)
            .count()
            == s.len()
    }

    fn bump(&mut self, s: &str) {
        self.skip_ws();
        self.pos += s.len();
    }

    fn ident(&mut self) -> Result<String, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected identifier at offset {start}"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn term(&mut self) -> Result<LambdaTerm, String> {
        if self.peek() == Some('\\') {
            self.bump("\\");
            let v = self.ident()?;
            if self.peek() != Some('.') {
                return Err("expected . after lambda binder".into());
            }
            self.bump(".");
            self.bound.push(v.clone());
            let body = self.term()?;
            self.bound.pop();
            return Ok(LambdaTerm::abs(v, body));
        }
        if self.starts_with("all ") || self.starts_with("exists ") {
            let kw = if self.starts_with("all ") { "all" } else { "exists" };
            self.bump(kw);
            let v = self.ident()?;
            if self.peek() != Some('.') {
                return Err("expected . after quantified variable".into());
            }
            self.bump(".");
            self.bound.push(v.clone());
            let body = self.term()?;
            self.bound.pop();
            return Ok(if kw == "all" {
                All(v, Box::new(body))
            } else {
                Exists(v, Box::new(body))
            });
        }
        self.iff()
    }

    fn iff(&mut self) -> Result<LambdaTerm, String> {
        let left = self.imp()?;
        if self.starts_with("<->") {
            self.bump("<->");
            let right = self.iff()?;
            return Ok(Iff(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<LambdaTerm, String> {
        let left = self.or()?;
        if self.starts_with("->") {
            self.bump("->");
            let right = self.imp()?;
            return Ok(Implies(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<LambdaTerm, String> {
        let mut t = self.and()?;
        while self.peek() == Some('|') {
            self.bump("|");
            t = Or(Box::new(t), Box::new(self.and()?));
        }
        Ok(t)
    }

    fn and(&mut self) -> Result<LambdaTerm, String> {
        let mut t = self.unary()?;
        while self.peek() == Some('&') {
            self.bump("&");
            t = And(Box::new(t), Box::new(self.unary()?));
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<LambdaTerm, String> {
        match self.peek() {
            Some('-') if !self.starts_with("->") => {
                self.bump("-");
                Ok(Not(Box::new(self.unary()?)))
            }
            _ => self.application(),
        }
    }

    fn application(&mut self) -> Result<LambdaTerm, String> {
        let mut t = self.primary()?;
        while self.peek() == Some('(') {
            self.bump("(");
            let mut args = vec![self.term()?];
            while self.peek() == Some(',') {
                self.bump(",");
                args.push(self.term()?);
            }
            if self.peek() != Some(')') {
                return Err("expected ) in application".into());
            }
            self.bump(")");
            t = LambdaTerm::call(t, args);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<LambdaTerm, String> {
        match self.peek() {
            Some('(') => {
                self.bump("(");
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return Err("unbalanced parenthesis".into());
                }
                self.bump(")");
                Ok(t)
            }
            Some('?') => {
                self.bump("?");
                Ok(FeatVar(self.ident()?))
            }
            Some('\\') => self.term(),
            _ => {
                let name = self.ident()?;
                if name == "all" || name == "exists" {
                    return Err(format!("misplaced quantifier {name}"));
                }
                if self.bound.iter().any(|b| *b == name) {
                    Ok(Var(name))
                } else {
                    Ok(Const(name))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::ground_atom;

    fn reduce_str(s: &str) -> LambdaTerm {
        beta_reduce(&parse_lambda(s).unwrap()).unwrap()
    }

    #[test]
    fn one_beta_step() {
        let t = reduce_str("(\\x.knight(x))(Sue)");
        assert_eq!(to_formula(&t).unwrap(), ground_atom("knight", &["Sue"]));
    }

    #[test]
    fn two_beta_steps() {
        let t = reduce_str("((\\P.\\x.P(x))(\\y.knave(y)))(Bart)");
        assert_eq!(to_formula(&t).unwrap(), ground_atom("knave", &["Bart"]));
    }

    #[test]
    fn conjunction_body_applies() {
        let t = reduce_str("(\\x.(inhabitant(x) & knight(x)))(Rex)");
        assert_eq!(
            to_formula(&t).unwrap(),
            Formula::and(
                ground_atom("inhabitant", &["Rex"]),
                ground_atom("knight", &["Rex"])
            )
        );
    }

    #[test]
    fn capture_is_avoided() {
        // (\x.\y.taller(x,y))(y) must not capture the free y
        let t = LambdaTerm::app(
            parse_lambda("\\x.\\y.taller(x,y)").unwrap(),
            Var("y".into()),
        );
        let r = beta_reduce(&t).unwrap();
        let expected = LambdaTerm::abs(
            "z",
            LambdaTerm::call(Const("taller".into()), vec![Var("y".into()), Var("z".into())]),
        );
        assert!(alpha_eq(&r, &expected), "got {r}");
    }

    #[test]
    fn alpha_equivalence() {
        let a = parse_lambda("\\x.knight(x)").unwrap();
        let b = parse_lambda("\\y.knight(y)").unwrap();
        assert!(alpha_eq(&a, &b));
        let c = parse_lambda("\\y.knave(y)").unwrap();
        assert!(!alpha_eq(&a, &c));
    }

    #[test]
    fn budget_guards_divergence() {
        // omega = (\x.x(x))(\x.x(x))
        let omega = LambdaTerm::app(
            parse_lambda("\\x.x(x)").unwrap(),
            parse_lambda("\\x.x(x)").unwrap(),
        );
        assert!(matches!(
            beta_reduce(&omega),
            Err(LambdaError::ReductionBudgetExceeded(_))
        ));
    }

    #[test]
    fn residual_lambda_is_not_a_formula() {
        let t = parse_lambda("\\x.knight(x)").unwrap();
        assert!(matches!(to_formula(&t), Err(LambdaError::ResidualLambda(_))));
    }

    #[test]
    fn quantifier_bodies_convert() {
        let t = parse_lambda("all x.(inhabitant(x) -> (knight(x) | knave(x)))").unwrap();
        let f = to_formula(&t).unwrap();
        assert_eq!(f.to_string(), "all x (inhabitant(x) -> knight(x) | knave(x))");
        assert!(f.is_closed());
    }
}
