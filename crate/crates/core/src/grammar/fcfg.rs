//! The `.fcfg` grammar file format.
//!
//! Line oriented. `%start S` fixes the start symbol (default `S`), `#`
//! starts a comment. Phrase rules combine categories with feature blocks:
//!
//! ```text
//! S[SEM=<?vp(?np)>] -> NP[NUM=?n,SEM=?np] VP[NUM=?n,SEM=?vp]
//! ```
//!
//! Lexical rules have exactly one quoted terminal on the right-hand side:
//!
//! ```text
//! N[NUM=sg,SEM=<\x.knight(x)>] -> 'knight'
//! ```
//!
//! Alternatives may share a line with `|`. Terminals may be quoted with
//! `'...'` or `"..."` (the latter for words containing an apostrophe).

use std::collections::HashSet;

use crate::error::GrammarError;
use crate::grammar::feature::{FeatValue, FeatureStructure};
use crate::lambda::parse_lambda;

#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    NonTerm(String, FeatureStructure),
    Term(String),
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: String,
    pub lhs_fs: FeatureStructure,
    pub rhs: Vec<Symbol>,
}

impl Rule {
    /// A lexical rule has exactly one terminal on the right-hand side.
    pub fn is_lexical(&self) -> bool {
        matches!(self.rhs.as_slice(), [Symbol::Term(_)])
    }
}

#[derive(Debug, Clone)]
pub struct Grammar {
    pub start: String,
    pub rules: Vec<Rule>,
    terminals: HashSet<String>,
}

impl Grammar {
    /// Parses a grammar from text. The text's name only decorates errors.
    pub fn parse_str(text: &str) -> Result<Grammar, GrammarError> {
        let mut start: Option<String> = None;
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw);
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("%start") {
                if start.is_some() {
                    return Err(GrammarError::DuplicateStartSymbol { line: line_no });
                }
                let sym = rest.trim();
                if sym.is_empty() {
                    return Err(GrammarError::Syntax {
                        line: line_no,
                        message: "%start needs a symbol".into(),
                    });
                }
                start = Some(sym.to_string());
                continue;
            }
            for rule in parse_rule_line(line, line_no)? {
                rules.push(rule);
            }
        }
        if rules.is_empty() {
            return Err(GrammarError::EmptyGrammar);
        }
        let terminals = rules
            .iter()
            .flat_map(|r| r.rhs.iter())
            .filter_map(|s| match s {
                Symbol::Term(w) => Some(w.clone()),
                _ => None,
            })
            .collect();
        Ok(Grammar {
            start: start.unwrap_or_else(|| "S".to_string()),
            rules,
            terminals,
        })
    }

    pub fn has_terminal(&self, word: &str) -> bool {
        self.terminals.contains(word)
    }

    pub fn phrase_rule_count(&self) -> usize {
        self.rules.iter().filter(|r| !r.is_lexical()).count()
    }

    pub fn lexical_rule_count(&self) -> usize {
        self.rules.iter().filter(|r| r.is_lexical()).count()
    }
}

// `<` opens a SEM value unless it begins `<->`; `>` closes one unless it
// ends `->`. Both operators only occur inside SEM terms.
fn angle_open(chars: &[char], i: usize) -> bool {
    chars[i] == '<' && chars.get(i + 1) != Some(&'-')
}

fn angle_close(chars: &[char], i: usize) -> bool {
    chars[i] == '>' && (i == 0 || chars[i - 1] != '-')
}

fn strip_comment(line: &str) -> String {
    let chars: Vec<char> = line.chars().collect();
    let mut quote: Option<char> = None;
    let mut angle = 0usize;
    for i in 0..chars.len() {
        let c = chars[i];
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                }
            }
            None => {
                if c == '\'' || c == '"' {
                    quote = Some(c);
                } else if angle_open(&chars, i) {
                    angle += 1;
                } else if angle_close(&chars, i) {
                    angle = angle.saturating_sub(1);
                } else if c == '#' && angle == 0 {
                    return chars[..i].iter().collect();
                }
            }
        }
    }
    line.to_string()
}

/// Finds the rule arrow: the first `->` outside quotes, feature brackets
/// and SEM angle brackets.
fn find_arrow(line: &str) -> Option<usize> {
    let chars: Vec<char> = line.chars().collect();
    let mut quote: Option<char> = None;
    let mut depth = 0usize;
    let mut byte = 0usize;
    for i in 0..chars.len() {
        let c = chars[i];
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                }
            }
            None => {
                if c == '\'' || c == '"' {
                    quote = Some(c);
                } else if c == '[' || angle_open(&chars, i) {
                    depth += 1;
                } else if c == ']' || angle_close(&chars, i) {
                    depth = depth.saturating_sub(1);
                } else if c == '-' && depth == 0 && chars.get(i + 1) == Some(&'>') {
                    return Some(byte);
                }
            }
        }
        byte += c.len_utf8();
    }
    None
}

/// Splits the right-hand side on top-level `|` into alternatives.
fn parse_rule_line(line: &str, line_no: usize) -> Result<Vec<Rule>, GrammarError> {
    let err = |message: String| GrammarError::Syntax { line: line_no, message };
    let arrow = find_arrow(line).ok_or_else(|| err("rule is missing ->".into()))?;
    let lhs_text = line[..arrow].trim();
    let rhs_text = line[arrow + 2..].trim();
    let (lhs, lhs_fs, rest) = parse_category(lhs_text, line_no)?;
    if !rest.trim().is_empty() {
        return Err(err(format!("unexpected input after LHS: {rest:?}")));
    }
    let mut rules = Vec::new();
    for alt in split_alternatives(rhs_text) {
        let rhs = parse_symbols(alt.trim(), line_no)?;
        if rhs.is_empty() {
            return Err(err("empty right-hand side".into()));
        }
        rules.push(Rule { lhs: lhs.clone(), lhs_fs: lhs_fs.clone(), rhs });
    }
    Ok(rules)
}

fn split_alternatives(text: &str) -> Vec<&str> {
    let chars: Vec<char> = text.chars().collect();
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut quote: Option<char> = None;
    let mut start = 0usize;
    let mut byte = 0usize;
    for i in 0..chars.len() {
        let c = chars[i];
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                }
            }
            None => {
                if c == '\'' || c == '"' {
                    quote = Some(c);
                } else if c == '[' || angle_open(&chars, i) {
                    depth += 1;
                } else if c == ']' || angle_close(&chars, i) {
                    depth = depth.saturating_sub(1);
                } else if c == '|' && depth == 0 {
                    parts.push(&text[start..byte]);
                    start = byte + 1;
                }
            }
        }
        byte += c.len_utf8();
    }
    parts.push(&text[start..]);
    parts
}

fn parse_symbols(text: &str, line_no: usize) -> Result<Vec<Symbol>, GrammarError> {
    let err = |message: String| GrammarError::Syntax { line: line_no, message };
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let first = rest.chars().next().expect("non-empty");
        if first == '\'' || first == '"' {
            let close = rest[1..]
                .find(first)
                .ok_or_else(|| err("unterminated terminal quote".into()))?;
            out.push(Symbol::Term(rest[1..1 + close].to_string()));
            rest = rest[close + 2..].trim_start();
        } else if first.is_ascii_uppercase() {
            let (cat, fs, remainder) = parse_category(rest, line_no)?;
            out.push(Symbol::NonTerm(cat, fs));
            rest = remainder.trim_start();
        } else {
            return Err(err(format!("expected category or quoted terminal at {rest:?}")));
        }
    }
    Ok(out)
}

/// Parses `Cat` or `Cat[f=v, ...]`, returning the remainder of the input.
fn parse_category<'a>(
    text: &'a str,
    line_no: usize,
) -> Result<(String, FeatureStructure, &'a str), GrammarError> {
    let err = |message: String| GrammarError::Syntax { line: line_no, message };
    let name_len = text
        .char_indices()
        .take_while(|(_, c)| c.is_alphanumeric() || *c == '_')
        .map(|(i, c)| i + c.len_utf8())
        .last()
        .unwrap_or(0);
    if name_len == 0 {
        return Err(err(format!("expected category name at {text:?}")));
    }
    let name = &text[..name_len];
    if !name.chars().next().expect("non-empty").is_ascii_uppercase() {
        return Err(err(format!("category {name:?} must start uppercase")));
    }
    let rest = &text[name_len..];
    if !rest.starts_with('[') {
        return Ok((name.to_string(), FeatureStructure::new(), rest));
    }
    // find matching ] outside <...>
    let chars: Vec<char> = rest.chars().collect();
    let mut angle = 0usize;
    let mut close = None;
    let mut byte = 0usize;
    for i in 0..chars.len() {
        if i > 0 {
            if angle_open(&chars, i) {
                angle += 1;
            } else if angle_close(&chars, i) {
                angle = angle.saturating_sub(1);
            } else if chars[i] == ']' && angle == 0 {
                close = Some(byte);
                break;
            }
        }
        byte += chars[i].len_utf8();
    }
    let close = close.ok_or_else(|| err("unterminated feature block".into()))?;
    let fs = parse_features(&rest[1..close], line_no)?;
    Ok((name.to_string(), fs, &rest[close + 1..]))
}

fn parse_features(text: &str, line_no: usize) -> Result<FeatureStructure, GrammarError> {
    let err = |message: String| GrammarError::Syntax { line: line_no, message };
    let mut fs = FeatureStructure::new();
    for part in split_feature_list(text) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let eq = part
            .find('=')
            .ok_or_else(|| err(format!("feature {part:?} is missing =")))?;
        let name = part[..eq].trim();
        let value = part[eq + 1..].trim();
        let value = if let Some(var) = value.strip_prefix('?') {
            FeatValue::Var(var.to_string())
        } else if value.starts_with('<') && value.ends_with('>') {
            let term = parse_lambda(&value[1..value.len() - 1])
                .map_err(|e| err(format!("bad SEM term: {e}")))?;
            FeatValue::Sem(term)
        } else {
            FeatValue::Atom(value.to_string())
        };
        fs.set(name, value);
    }
    Ok(fs)
}

fn split_feature_list(text: &str) -> Vec<&str> {
    let chars: Vec<char> = text.chars().collect();
    let mut parts = Vec::new();
    let mut angle = 0usize;
    let mut start = 0usize;
    let mut byte = 0usize;
    for i in 0..chars.len() {
        if angle_open(&chars, i) {
            angle += 1;
        } else if angle_close(&chars, i) {
            angle = angle.saturating_sub(1);
        } else if chars[i] == ',' && angle == 0 {
            parts.push(&text[start..byte]);
            start = byte + 1;
        }
        byte += chars[i].len_utf8();
    }
    parts.push(&text[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_phrase_and_lexical_rules() {
        let g = Grammar::parse_str(
            "%start S\n\
             # toy grammar\n\
             S[SEM=<?vp(?np)>] -> NP[NUM=?n,SEM=?np] VP[NUM=?n,SEM=?vp]\n\
             NP[NUM=sg,SEM=<\\P.P(Mike)>] -> 'Mike'\n\
             VP[NUM=?n,SEM=?v] -> Cop[NUM=?n] Adj[SEM=?v]\n\
             Cop[NUM=sg] -> 'is' | 'was'\n",
        )
        .unwrap();
        assert_eq!(g.start, "S");
        assert_eq!(g.phrase_rule_count(), 2);
        assert_eq!(g.lexical_rule_count(), 3);
        assert!(g.has_terminal("was"));
    }

    #[test]
    fn empty_file_is_an_error() {
        assert!(matches!(
            Grammar::parse_str(""),
            Err(GrammarError::EmptyGrammar)
        ));
        assert!(matches!(
            Grammar::parse_str("# only comments\n"),
            Err(GrammarError::EmptyGrammar)
        ));
    }

    #[test]
    fn duplicate_start_is_an_error() {
        let err = Grammar::parse_str("%start S\n%start NP\nS -> 'x'\n").unwrap_err();
        assert!(matches!(err, GrammarError::DuplicateStartSymbol { line: 2 }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = Grammar::parse_str("S -> 'ok'\nNP NP\n").unwrap_err();
        match err {
            GrammarError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn vacuous_grammar_loads_without_error() {
        let g = Grammar::parse_str("S -> NP VP\n").unwrap();
        assert_eq!(g.phrase_rule_count(), 1);
        assert_eq!(g.lexical_rule_count(), 0);
    }

    #[test]
    fn double_quoted_terminals_allow_apostrophes() {
        let g = Grammar::parse_str("Poss -> \"'s\"\n").unwrap();
        assert!(g.has_terminal("'s"));
    }

    #[test]
    fn sem_values_may_contain_arrows() {
        let g = Grammar::parse_str(
            "S[SEM=<m(?sp) <-> ?body>] -> PropN[SEM=?sp] Claim[SEM=?body]\n\
             Q[SEM=<all x.(?np(x) -> ?vp(x))>] -> NPH[SEM=?np] VPH[SEM=?vp]\n",
        )
        .unwrap();
        assert_eq!(g.phrase_rule_count(), 2);
    }
}
