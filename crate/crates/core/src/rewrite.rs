//! Oriented word rewriting modulo a set of monic rules, with degree-bounded
//! overlap completion in the style of the diamond lemma.

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashMap};


use crate::error::{AlgebraError, Result};
use crate::ncpoly::{Alphabet, NCPoly, Sym, Word};
use crate::scalar::Coefficient;

impl Borrow<[Sym]> for Word {
    fn borrow(&self) -> &[Sym] {
        self.syms()
    }
}

/// `lhs → rhs` with every word of `rhs` strictly smaller than `lhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule<S> {
    pub lhs: Word,
    pub rhs: NCPoly<S>,
}

impl<S: Coefficient> Rule<S> {
    /// Orients a nonzero polynomial by its leading word.
    pub fn from_poly(p: &NCPoly<S>) -> Option<Rule<S>> {
        let (lead, c) = p.leading()?;
        let lhs = lead.clone();
        let inv = S::one() / c.clone();
        let mut rhs = p.scale(&-inv);
        rhs.add_term(lhs.clone(), S::one());
        Some(Rule { lhs, rhs })
    }

    pub fn as_poly(&self) -> NCPoly<S> {
        let mut p = self.rhs.scale(&-S::one());
        p.add_term(self.lhs.clone(), S::one());
        p
    }

    pub fn is_oriented(&self) -> bool {
        self.rhs.terms().all(|(w, _)| *w < self.lhs)
    }

    fn check_oriented(&self) -> Result<()> {
        if self.is_oriented() {
            Ok(())
        } else {
            Err(AlgebraError::Orientation { lhs: self.lhs.token(), rhs: self.rhs.pretty() })
        }
    }
}

/// An overlap ambiguity whose two one-step reductions have different normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap<S> {
    pub word: Word,
    pub left: NCPoly<S>,
    pub right: NCPoly<S>,
}

/// A list of rules with a lookup index on left-hand sides.
#[derive(Clone, Debug)]
pub struct RuleSet<S> {
    alphabet: Alphabet,
    rules: Vec<Rule<S>>,
    index: HashMap<Word, usize>,
    lengths: Vec<usize>,
}

impl<S> RuleSet<S> {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    pub fn into_rules(self) -> Vec<Rule<S>> {
        self.rules
    }
}

impl<S: Coefficient> RuleSet<S> {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule<S>>) -> Result<Self> {
        let mut rs = RuleSet { alphabet, rules: Vec::new(), index: HashMap::new(), lengths: Vec::new() };
        for r in rules {
            r.check_oriented()?;
            alphabet.check(&r.rhs.alphabet())?;
            rs.push(r);
        }
        Ok(rs)
    }

    fn push(&mut self, r: Rule<S>) {
        self.index.insert(r.lhs.clone(), self.rules.len());
        self.rules.push(r);
        self.reindex_lengths();
    }

    fn reindex_lengths(&mut self) {
        let mut ls: Vec<usize> = self.rules.iter().map(|r| r.lhs.len()).collect();
        ls.sort_unstable();
        ls.dedup();
        self.lengths = ls;
    }

    fn rebuild(&mut self, rules: Vec<Rule<S>>) {
        self.rules = rules;
        self.index = self.rules.iter().enumerate().map(|(k, r)| (r.lhs.clone(), k)).collect();
        self.reindex_lengths();
    }

    /// Leftmost redex; at equal start, the shortest matching left-hand side.
    pub fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let syms = w.syms();
        for start in 0..syms.len() {
            for &l in &self.lengths {
                if start + l > syms.len() {
                    break;
                }
                if let Some(&k) = self.index.get(&syms[start..start + l]) {
                    return Some((start, k));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// One rewriting step at the given position.
    fn apply_at(&self, w: &Word, start: usize, k: usize) -> NCPoly<S> {
        let syms = w.syms();
        let r = &self.rules[k];
        r.rhs.sandwich(&syms[..start], &syms[start + r.lhs.len()..])
    }

    /// Reduces to the fixed point of rule application.
    pub fn reduce(&self, p: &NCPoly<S>) -> NCPoly<S> {
        let mut work: BTreeMap<Word, S> = BTreeMap::new();
        for (w, c) in p.terms() {
            work.insert(w.clone(), c.clone());
        }
        let mut out = NCPoly::zero(p.alphabet());
        // rewriting only produces smaller words, so the largest pending word
        // never reappears once popped
        while let Some((w, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&w) {
                None => out.add_term(w, c),
                Some((start, k)) => {
                    for (w2, c2) in self.apply_at(&w, start, k).into_terms() {
                        let e = work.entry(w2).or_insert_with(S::zero);
                        *e = e.clone() + c.clone() * c2;
                    }
                }
            }
        }
        out
    }

    pub fn reduce_word(&self, w: &Word) -> NCPoly<S> {
        self.reduce(&NCPoly::monomial(self.alphabet, w.clone(), S::one()))
    }

    /// All overlap words (suffix/prefix and inclusion) between pairs of rules
    /// with length at most `bound`, each with its two one-step reductions.
    pub fn ambiguities(&self, bound: usize) -> Vec<(Word, NCPoly<S>, NCPoly<S>)> {
        let mut out = Vec::new();
        for a in &self.rules {
            for b in &self.rules {
                out.extend(overlaps_between(a, b, bound));
                if let Some(pos) = inclusion(a, b) {
                    // b.lhs sits inside a.lhs at `pos`
                    let w = a.lhs.clone();
                    let left = a.rhs.clone();
                    let syms = w.syms();
                    let right = b.rhs.sandwich(&syms[..pos], &syms[pos + b.lhs.len()..]);
                    if w.len() <= bound {
                        out.push((w, left, right));
                    }
                }
            }
        }
        out
    }

    /// Overlaps of length ≤ `bound` whose two reductions disagree.
    pub fn unresolved(&self, bound: usize) -> Vec<Overlap<S>> {
        self.ambiguities(bound)
            .into_iter()
            .filter_map(|(word, l, r)| {
                let (left, right) = (self.reduce(&l), self.reduce(&r));
                (left != right).then_some(Overlap { word, left, right })
            })
            .collect()
    }

    /// Degree-bounded completion. Every relation must reduce to zero
    /// afterwards, and every overlap of length ≤ `bound` resolves.
    pub fn complete(&mut self, relations: &[NCPoly<S>], bound: usize) -> Result<()> {
        for r in &self.rules {
            r.check_oriented()?;
        }
        let mut pending: BTreeMap<(Word, u64), NCPoly<S>> = BTreeMap::new();
        let mut seq = 0u64;
        let mut enqueue = |pending: &mut BTreeMap<(Word, u64), NCPoly<S>>, p: NCPoly<S>| {
            if let Some((lead, _)) = p.leading() {
                pending.insert((lead.clone(), seq), p);
                seq += 1;
            }
        };
        for r in relations {
            enqueue(&mut pending, r.clone());
        }
        loop {
            while let Some((_, f)) = pending.pop_first() {
                let f = self.reduce(&f);
                let Some(rule) = Rule::from_poly(&f) else { continue };
                // drop rules made redundant by the new left-hand side
                let (keep, drop): (Vec<_>, Vec<_>) =
                    std::mem::take(&mut self.rules).into_iter().partition(|r| r.lhs.find(rule.lhs.syms()).is_none());
                self.rebuild(keep);
                for r in drop {
                    enqueue(&mut pending, r.as_poly());
                }
                self.push(rule);
                let new = self.rules.last().expect("just pushed").clone();
                for other in &self.rules {
                    for (_, l, r) in overlaps_between(&new, other, bound).into_iter().chain(
                        if other.lhs != new.lhs { overlaps_between(other, &new, bound) } else { Vec::new() },
                    ) {
                        enqueue(&mut pending, l.try_sub(&r)?);
                    }
                }
            }
            self.interreduce();
            let open = self.unresolved(bound);
            if open.is_empty() {
                break;
            }
            for o in open {
                enqueue(&mut pending, o.left.try_sub(&o.right)?);
            }
        }
        for r in relations {
            if !self.reduce(r).is_zero() {
                return Err(AlgebraError::Parameter(format!(
                    "relation {} does not reduce to zero after completion",
                    r.pretty()
                )));
            }
        }
        Ok(())
    }

    /// Fully reduces every right-hand side and sorts rules by left-hand side.
    pub fn interreduce(&mut self) {
        let mut rules = self.rules.clone();
        for r in rules.iter_mut() {
            r.rhs = self.reduce(&r.rhs);
        }
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        self.rebuild(rules);
    }
}

/// Suffix of `a.lhs` equal to a prefix of `b.lhs` (proper, nonempty).
fn overlaps_between<S: Coefficient>(a: &Rule<S>, b: &Rule<S>, bound: usize) -> Vec<(Word, NCPoly<S>, NCPoly<S>)> {
    let (x, y) = (a.lhs.syms(), b.lhs.syms());
    let mut out = Vec::new();
    for k in 1..x.len().min(y.len()) {
        if x.len() + y.len() - k > bound {
            continue;
        }
        if x[x.len() - k..] == y[..k] {
            let word = Word::concat3(x, &y[k..], &[]);
            let left = a.rhs.sandwich(&[], &y[k..]);
            let right = b.rhs.sandwich(&x[..x.len() - k], &[]);
            out.push((word, left, right));
        }
    }
    out
}

fn inclusion<S>(a: &Rule<S>, b: &Rule<S>) -> Option<usize> {
    if a.lhs == b.lhs || b.lhs.len() > a.lhs.len() {
        return None;
    }
    a.lhs.find(b.lhs.syms())
}
