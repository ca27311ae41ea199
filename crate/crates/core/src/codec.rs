//! JSON encodings of words and polynomials.
//!
//! A polynomial is a list of `{word: [symbol...], re: "p/q", im: "p/q"}`.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::ncpoly::{Alphabet, NCPoly, Sym, Word};
use crate::scalar::{parse_rational, Coefficient};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub word: Vec<String>,
    pub re: String,
    pub im: String,
}

pub fn word_to_tokens(w: &Word) -> Vec<String> {
    w.syms().iter().map(Sym::token).collect()
}

pub fn word_from_tokens(tokens: &[String]) -> Result<Word> {
    let syms = tokens.iter().map(|t| Sym::parse_token(t)).collect::<Result<Vec<_>>>()?;
    Ok(Word::from_syms(&syms))
}

pub fn poly_to_doc<S: Coefficient>(p: &NCPoly<S>) -> Vec<TermDoc> {
    p.terms()
        .map(|(w, c)| {
            let (re, im) = c.to_parts();
            TermDoc { word: word_to_tokens(w), re: re.to_string(), im: im.to_string() }
        })
        .collect()
}

pub fn poly_from_doc<S: Coefficient>(alphabet: Alphabet, doc: &[TermDoc]) -> Result<NCPoly<S>> {
    let mut terms = Vec::with_capacity(doc.len());
    for t in doc {
        let bad = || AlgebraError::Format(format!("bad coefficient `{}` / `{}`", t.re, t.im));
        let re = parse_rational(&t.re).ok_or_else(bad)?;
        let im = parse_rational(&t.im).ok_or_else(bad)?;
        let c = S::from_parts(re, im).ok_or_else(bad)?;
        terms.push((word_from_tokens(&t.word)?, c));
    }
    NCPoly::from_terms(alphabet, terms)
}
