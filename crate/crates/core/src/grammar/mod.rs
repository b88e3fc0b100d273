//! Feature-based context-free grammars with lambda-calculus semantics:
//! the natural-language-to-logic front end.

mod chart;
mod fcfg;
mod feature;

pub use chart::{ParseResult, ParseTree};
pub use fcfg::{Grammar, Rule, Symbol};
pub use feature::{Bindings, FeatValue, FeatureStructure};

/// Function words that lose their sentence-initial capital during
/// tokenization. Proper names stay capitalized.
const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "and", "are", "but", "each", "eight", "every", "five", "for", "four", "he", "if",
    "in", "is", "it", "nine", "no", "of", "on", "one", "or", "she", "seven", "six", "that", "the",
    "there", "these", "they", "this", "three", "to", "two", "we", "when", "where", "while", "who",
    "with", "you",
];

/// Splits a sentence into word tokens. Punctuation is split off; terminal
/// sentence punctuation is dropped; possessive `'s` becomes its own token;
/// a sentence-initial capitalized function word is lowercased, proper
/// names are preserved.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut tokens: Vec<String> = Vec::new();
    let mut word = String::new();
    for c in sentence.chars() {
        if c.is_alphanumeric() || c == '-' || c == '_' {
            word.push(c);
        } else if c == '\'' {
            if !word.is_empty() {
                tokens.push(std::mem::take(&mut word));
            }
            word.push(c);
        } else {
            if !word.is_empty() {
                tokens.push(std::mem::take(&mut word));
            }
            match c {
                ',' | ':' | ';' => tokens.push(c.to_string()),
                _ => {}
            }
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    if let Some(first) = tokens.first_mut() {
        let lower = first.to_lowercase();
        if *first != lower && FUNCTION_WORDS.contains(&lower.as_str()) {
            *first = lower;
        }
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize(s)
    }

    #[test]
    fn splits_words_and_strips_final_punctuation() {
        assert_eq!(
            toks("Mike is taller than Sally."),
            vec!["Mike", "is", "taller", "than", "Sally"]
        );
        assert_eq!(
            toks("Dave says that Sue is a knave."),
            vec!["Dave", "says", "that", "Sue", "is", "a", "knave"]
        );
        assert_eq!(toks(""), Vec::<String>::new());
    }

    #[test]
    fn commas_colons_and_possessives_are_tokens() {
        assert_eq!(
            toks("You meet four inhabitants: Bart, Dave, Rex and Sue."),
            vec!["you", "meet", "four", "inhabitants", ":", "Bart", ",", "Dave", ",", "Rex", "and", "Sue"]
        );
        assert_eq!(
            toks("The green house's owner drinks coffee."),
            vec!["the", "green", "house", "'s", "owner", "drinks", "coffee"]
        );
    }

    #[test]
    fn sentence_initial_function_words_lose_their_capital() {
        assert_eq!(toks("The Brit lives.")[0], "the");
        assert_eq!(toks("Katy is shorter.")[0], "Katy");
    }
}
