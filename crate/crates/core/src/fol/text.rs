//! Textual FOL syntax: a strict subset of Prover9/Mace4 input syntax, so
//! exported files load unmodified. Sentences are terminated by `.`,
//! operators are `-`, `&`, `|`, `->`, `<->`, quantifiers `all x (...)` /
//! `exists x (...)` (the dot form `all x. ...` is also accepted on input
//! with maximal scope), and `%` starts a line comment.

use crate::error::FolSyntaxError;
use crate::fol::ast::{Formula, Term};
use crate::fol::theory::Theory;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Minus,
    Amp,
    Pipe,
    Arrow,
    Iff,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FolSyntaxError> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                toks.push((Tok::LParen, line));
                chars.next();
            }
            ')' => {
                toks.push((Tok::RParen, line));
                chars.next();
            }
            ',' => {
                toks.push((Tok::Comma, line));
                chars.next();
            }
            '.' => {
                toks.push((Tok::Dot, line));
                chars.next();
            }
            '&' => {
                toks.push((Tok::Amp, line));
                chars.next();
            }
            '|' => {
                toks.push((Tok::Pipe, line));
                chars.next();
            }
            '-' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    toks.push((Tok::Arrow, line));
                } else {
                    toks.push((Tok::Minus, line));
                }
            }
            '<' => {
                chars.next();
                if chars.peek() == Some(&'-') {
                    chars.next();
                    if chars.peek() == Some(&'>') {
                        chars.next();
                        toks.push((Tok::Iff, line));
                    } else {
                        return Err(FolSyntaxError { line, message: "expected <->".into() });
                    }
                } else {
                    return Err(FolSyntaxError { line, message: "expected <->".into() });
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(ident), line));
            }
            other => {
                return Err(FolSyntaxError {
                    line,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bound: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|(_, l)| *l)
            .unwrap_or(0)
    }

    fn err(&self, message: impl Into<String>) -> FolSyntaxError {
        FolSyntaxError { line: self.line(), message: message.into() }
    }

    fn eat(&mut self, tok: &Tok) -> Result<(), FolSyntaxError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {tok:?}, found {:?}", self.peek())))
        }
    }

    fn sentence(&mut self) -> Result<Formula, FolSyntaxError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula, FolSyntaxError> {
        let left = self.implication()?;
        if self.peek() == Some(&Tok::Iff) {
            self.pos += 1;
            let right = self.iff()?;
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, FolSyntaxError> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, FolSyntaxError> {
        let mut f = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, FolSyntaxError> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, FolSyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.sentence()?;
                self.eat(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(name)) if name == "all" || name == "exists" => {
                self.pos += 1;
                let var = match self.peek().cloned() {
                    Some(Tok::Ident(v)) => {
                        self.pos += 1;
                        v
                    }
                    _ => return Err(self.err("expected variable after quantifier")),
                };
                // `all x. F` takes maximal scope; `all x F` binds the next
                // unary formula, matching Prover9.
                let wide = self.peek() == Some(&Tok::Dot)
                    && !matches!(self.toks.get(self.pos + 1), None | Some((Tok::Dot, _)));
                if wide {
                    self.pos += 1;
                }
                self.bound.push(var.clone());
                let body = if wide { self.sentence()? } else { self.unary()? };
                self.bound.pop();
                Ok(if name == "all" {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    loop {
                        match self.peek().cloned() {
                            Some(Tok::Ident(arg)) => {
                                self.pos += 1;
                                if self.bound.iter().any(|b| *b == arg) {
                                    args.push(Term::var(arg));
                                } else {
                                    args.push(Term::constant(arg));
                                }
                            }
                            _ => return Err(self.err("expected term")),
                        }
                        match self.peek() {
                            Some(Tok::Comma) => {
                                self.pos += 1;
                            }
                            Some(Tok::RParen) => {
                                self.pos += 1;
                                break;
                            }
                            _ => return Err(self.err("expected , or ) in argument list")),
                        }
                    }
                }
                Ok(Formula::Atom { pred: name, args })
            }
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a `.fol` text: `.`-terminated sentences, `%` comments.
pub fn parse_fol(text: &str) -> Result<Vec<Formula>, FolSyntaxError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, bound: Vec::new() };
    let mut out = Vec::new();
    while parser.peek().is_some() {
        let f = parser.sentence()?;
        parser.eat(&Tok::Dot)?;
        out.push(f);
    }
    Ok(out)
}

/// Extracts and parses the `formulas(assumptions)` blocks of a
/// Prover9/Mace4 input file.
pub fn parse_mace4_assumptions(text: &str) -> Result<Vec<Formula>, FolSyntaxError> {
    let mut body = String::new();
    let mut inside = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with("formulas(assumptions)") {
            inside = true;
            continue;
        }
        if line.starts_with("formulas(") {
            inside = false;
            continue;
        }
        if line.starts_with("end_of_list") {
            inside = false;
            continue;
        }
        if inside {
            body.push_str(raw);
            body.push('\n');
        } else if line.starts_with("set(") || line.starts_with("assign(") {
            continue;
        } else if !line.is_empty() && !line.starts_with('%') && !inside {
            // tolerated: goals content and blank lines outside blocks
            let _ = idx;
        }
    }
    parse_fol(&body)
}

/// Renders a theory as a Mace4/Prover9 input file: all axioms and clues in
/// one assumptions block, an empty goals block.
pub fn write_mace4(theory: &Theory, header: &str) -> String {
    let mut out = String::new();
    if !header.is_empty() {
        for line in header.lines() {
            out.push_str("% ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str("formulas(assumptions).\n");
    out.push_str("  % background\n");
    for axiom in theory.axioms() {
        out.push_str(&format!("  {axiom}.\n"));
    }
    if !theory.clues().is_empty() {
        out.push_str("  % clues\n");
    }
    for (i, clue) in theory.clues().iter().enumerate() {
        out.push_str(&format!("  % {}. {}\n", i + 1, clue.text));
        out.push_str(&format!("  {}.\n", clue.formula));
    }
    out.push_str("end_of_list.\n\nformulas(goals).\nend_of_list.\n");
    out
}

/// Renders a single-goal companion file for one question atom.
pub fn write_mace4_goal(theory: &Theory, goal: &Formula, header: &str) -> String {
    let mut out = write_mace4(theory, header);
    let marker = "formulas(goals).\nend_of_list.\n";
    let replacement = format!("formulas(goals).\n  {goal}.\nend_of_list.\n");
    if let Some(pos) = out.rfind(marker) {
        out.replace_range(pos..pos + marker.len(), &replacement);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::theory::ground_atom;

    #[test]
    fn parses_operators_with_precedence() {
        let fs = parse_fol("p(a) & q(a) | r(a) -> s(a).").unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].to_string(), "p(a) & q(a) | r(a) -> s(a)");
        let back = parse_fol(&format!("{}.", fs[0])).unwrap();
        assert_eq!(back[0], fs[0]);
    }

    #[test]
    fn parses_both_quantifier_forms() {
        let a = parse_fol("all x (knight(x) <-> -knave(x)).").unwrap();
        let b = parse_fol("all x. knight(x) <-> -knave(x).").unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].to_string(), "all x (knight(x) <-> -knave(x))");
    }

    #[test]
    fn quantified_variables_are_vars_free_names_are_constants() {
        let f = &parse_fol("all x (taller(x,Mike)).").unwrap()[0];
        assert_eq!(f.free_vars(), Vec::<String>::new());
        assert_eq!(f.constants(), vec!["Mike".to_string()]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_fol("p(a).\nq(a) &.\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn comments_are_ignored() {
        let fs = parse_fol("% preamble\np(a). % trailing\n").unwrap();
        assert_eq!(fs, vec![ground_atom("p", &["a"])]);
    }

    #[test]
    fn formula_display_reparses_identically() {
        let texts = [
            "all x (all y (taller(x,y) -> -taller(y,x))).",
            "p(a) <-> q(a) & r(a).",
            "-(p(a) | q(a)) -> r(a).",
            "exists x (p(x) & -q(x)).",
        ];
        for t in texts {
            let f = &parse_fol(t).unwrap()[0];
            let round = &parse_fol(&format!("{f}.")).unwrap()[0];
            assert_eq!(round, f, "{t}");
        }
    }
}
