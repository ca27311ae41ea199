//! Presented *-algebras: O_n⁺, U_n⁺, the circle algebra, SU₋₁(2) and the
//! free product H_n = Pol(S¹) ∗ Pol(O_n⁺).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::codec::{poly_from_doc, poly_to_doc, word_from_tokens, word_to_tokens, TermDoc};
use crate::error::{AlgebraError, Result};
use crate::ncpoly::{Alphabet, Family, NCPoly, Sym, Word};
use crate::rewrite::{Overlap, Rule, RuleSet};
use crate::scalar::Coefficient;

/// Completion bound used when none is given.
pub const DEFAULT_COMPLETION_BOUND: usize = 8;

/// Human-readable descriptor of the monomial order.
pub const MONOMIAL_ORDER: &str = "weighted-deglex(a=2,others=1; v<u<z<a<g; index-lex, plain<star; left-to-right)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    #[serde(rename = "O_plus", alias = "o+")]
    OPlus,
    #[serde(rename = "U_plus", alias = "u+")]
    UPlus,
    #[serde(rename = "S1", alias = "s1")]
    S1,
    #[serde(rename = "SU_minus1_2", alias = "su2")]
    SuMinus1_2,
    #[serde(rename = "H_n", alias = "h")]
    H,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::OPlus => "O_plus",
            AlgebraKind::UPlus => "U_plus",
            AlgebraKind::S1 => "S1",
            AlgebraKind::SuMinus1_2 => "SU_minus1_2",
            AlgebraKind::H => "H_n",
        }
    }

    pub fn needs_n(self) -> bool {
        matches!(self, AlgebraKind::OPlus | AlgebraKind::UPlus | AlgebraKind::H)
    }

    pub fn alphabet(self, n: u8) -> Alphabet {
        match self {
            AlgebraKind::OPlus => Alphabet::new(&[Family::V], n),
            AlgebraKind::UPlus => Alphabet::new(&[Family::U], n),
            AlgebraKind::S1 => Alphabet::new(&[Family::Z], 0),
            AlgebraKind::SuMinus1_2 => Alphabet::new(&[Family::A, Family::G], 0),
            AlgebraKind::H => Alphabet::new(&[Family::V, Family::Z], n),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraKind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "o_plus" | "o+" | "o" | "oplus" => AlgebraKind::OPlus,
            "u_plus" | "u+" | "u" | "uplus" => AlgebraKind::UPlus,
            "s1" | "circle" => AlgebraKind::S1,
            "su_minus1_2" | "su2" | "su-1(2)" => AlgebraKind::SuMinus1_2,
            "h_n" | "h" | "hn" => AlgebraKind::H,
            _ => return Err(AlgebraError::Parameter(format!("unknown algebra `{s}`"))),
        })
    }
}

fn delta<S: Coefficient>(i: u8, j: u8) -> S {
    if i == j {
        S::one()
    } else {
        S::zero()
    }
}

/// `Σ_k left(k)·right(k) − δ_ij`
fn quadratic_sum<S: Coefficient>(
    alphabet: Alphabet,
    n: u8,
    i: u8,
    j: u8,
    pair: impl Fn(u8) -> (Sym, Sym),
) -> NCPoly<S> {
    let mut p = NCPoly::constant(alphabet, -delta::<S>(i, j));
    for k in 1..=n {
        let (a, b) = pair(k);
        p.add_term(Word::from_syms(&[a, b]), S::one());
    }
    p
}

fn orthogonal_relations<S: Coefficient>(n: u8) -> Vec<NCPoly<S>> {
    let a = AlgebraKind::OPlus.alphabet(n);
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            rels.push(quadratic_sum(a, n, i, j, |k| (Sym::v(k, i), Sym::v(k, j))));
            rels.push(quadratic_sum(a, n, i, j, |k| (Sym::v(i, k), Sym::v(j, k))));
        }
    }
    rels
}

fn unitary_relations<S: Coefficient>(n: u8) -> Vec<NCPoly<S>> {
    let a = AlgebraKind::UPlus.alphabet(n);
    let u = |i, j| Sym::u(i, j);
    let us = |i, j| Sym::u(i, j).starred();
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            // u*u = 1, uu* = 1, and the same for ū = (u_ij*)
            rels.push(quadratic_sum(a, n, i, j, |k| (us(k, i), u(k, j))));
            rels.push(quadratic_sum(a, n, i, j, |k| (u(i, k), us(j, k))));
            rels.push(quadratic_sum(a, n, i, j, |k| (u(k, i), us(k, j))));
            rels.push(quadratic_sum(a, n, i, j, |k| (us(i, k), u(j, k))));
        }
    }
    rels
}

fn circle_relations<S: Coefficient>() -> Vec<NCPoly<S>> {
    let a = AlgebraKind::S1.alphabet(0);
    let (z, zs) = (Sym::z(), Sym::z().starred());
    [[z, zs], [zs, z]]
        .into_iter()
        .map(|w| {
            let mut p = NCPoly::constant(a, -S::one());
            p.add_term(Word::from_syms(&w), S::one());
            p
        })
        .collect()
}

fn su2_relations<S: Coefficient>() -> Vec<NCPoly<S>> {
    let a = AlgebraKind::SuMinus1_2.alphabet(0);
    let (al, als, ga, gas) = (Sym::alpha(), Sym::alpha().starred(), Sym::gamma(), Sym::gamma().starred());
    let rel = |terms: &[(&[Sym], i64)]| {
        NCPoly::from_terms(a, terms.iter().map(|(w, c)| (Word::from_syms(w), S::from_i64(*c))))
            .expect("symbols belong to the SU₋₁(2) alphabet")
    };
    vec![
        rel(&[(&[als, al], 1), (&[gas, ga], 1), (&[], -1)]),
        rel(&[(&[al, als], 1), (&[ga, gas], 1), (&[], -1)]),
        rel(&[(&[ga, gas], 1), (&[gas, ga], -1)]),
        rel(&[(&[al, ga], 1), (&[ga, al], 1)]),
        rel(&[(&[al, gas], 1), (&[gas, al], 1)]),
        // adjoints of the two anticommutation relations
        rel(&[(&[als, ga], 1), (&[ga, als], 1)]),
        rel(&[(&[als, gas], 1), (&[gas, als], 1)]),
    ]
}

/// A presented *-algebra with an oriented, inter-reduced rewriting system.
pub struct Presentation<S> {
    kind: AlgebraKind,
    n: u8,
    relations: Vec<NCPoly<S>>,
    rules: RuleSet<S>,
    certified_degree: usize,
    cache: RwLock<HashMap<Word, NCPoly<S>>>,
}

impl<S: Clone> Clone for Presentation<S> {
    fn clone(&self) -> Self {
        Presentation {
            kind: self.kind,
            n: self.n,
            relations: self.relations.clone(),
            rules: self.rules.clone(),
            certified_degree: self.certified_degree,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl<S> fmt::Debug for Presentation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("kind", &self.kind)
            .field("n", &self.n)
            .field("rules", &self.rules.rules().len())
            .field("certified_degree", &self.certified_degree)
            .finish()
    }
}

/// Result of a reduction together with whether uniqueness is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm<S> {
    pub poly: NCPoly<S>,
    pub certified: bool,
}

impl<S: Coefficient> Presentation<S> {
    fn build(kind: AlgebraKind, n: u8, relations: Vec<NCPoly<S>>) -> Result<Self> {
        let alphabet = kind.alphabet(n);
        // orient and inter-reduce without adding overlap consequences
        let mut rules = RuleSet::new(alphabet, Vec::new())?;
        rules.complete(&relations, 0)?;
        Ok(Presentation { kind, n, relations, rules, certified_degree: 0, cache: RwLock::new(HashMap::new()) })
    }

    /// Assembles a presentation from explicit rules (used when reloading).
    /// Rules must be oriented and must reduce every defining relation to zero.
    pub fn with_rules(kind: AlgebraKind, n: u8, rules: Vec<Rule<S>>, certified_degree: usize) -> Result<Self> {
        let base = match make_presentation::<S>(kind, n as usize)? {
            Algebra::Plain(p) => p,
            Algebra::FreeProduct(_) => {
                return Err(AlgebraError::Parameter("use FreeProductPresentation for H_n".into()))
            }
        };
        let rules = RuleSet::new(base.alphabet(), rules)?;
        for r in &base.relations {
            if !rules.reduce(r).is_zero() {
                return Err(AlgebraError::Format(format!("rules do not annihilate relation {}", r.pretty())));
            }
        }
        Ok(Presentation { rules, certified_degree, ..base })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.rules.alphabet()
    }

    pub fn relations(&self) -> &[NCPoly<S>] {
        &self.relations
    }

    pub fn rules(&self) -> &[Rule<S>] {
        self.rules.rules()
    }

    pub fn rule_set(&self) -> &RuleSet<S> {
        &self.rules
    }

    pub fn certified_degree(&self) -> usize {
        self.certified_degree
    }

    /// Adds overlap consequences until all ambiguities of length ≤ `bound`
    /// resolve. Idempotent at a fixed bound.
    pub fn complete(&self, bound: usize) -> Result<Self> {
        let max_rel = self.relations.iter().map(NCPoly::degree).max().unwrap_or(0);
        if bound < max_rel {
            return Err(AlgebraError::Parameter(format!(
                "completion bound {bound} is below the relation degree {max_rel}"
            )));
        }
        let mut rules = self.rules.clone();
        rules.complete(&self.relations, bound)?;
        Ok(Presentation {
            rules,
            certified_degree: bound.max(self.certified_degree),
            cache: RwLock::new(HashMap::new()),
            ..self.clone()
        })
    }

    /// Reduction of a single word, memoised.
    pub fn reduce_word(&self, w: &Word) -> NCPoly<S> {
        if let Some(p) = self.cache.read().get(w) {
            return p.clone();
        }
        let p = self.rules.reduce_word(w);
        self.cache.write().insert(w.clone(), p.clone());
        p
    }

    /// Normal form without the certification flag. Panics on alphabet mismatch.
    pub fn nf(&self, p: &NCPoly<S>) -> NCPoly<S> {
        self.alphabet().check(&p.alphabet()).expect("polynomial over the presentation alphabet");
        let mut out = NCPoly::zero(self.alphabet());
        for (w, c) in p.terms() {
            if self.rules.is_irreducible(w) {
                out.add_term(w.clone(), c.clone());
            } else {
                for (w2, c2) in self.reduce_word(w).into_terms() {
                    out.add_term(w2, c2 * c.clone());
                }
            }
        }
        out
    }

    pub fn normal_form(&self, p: &NCPoly<S>) -> Result<NormalForm<S>> {
        self.alphabet().check(&p.alphabet())?;
        Ok(NormalForm { poly: self.nf(p), certified: p.degree() <= self.certified_degree })
    }

    pub fn unresolved_overlaps(&self, bound: usize) -> Vec<Overlap<S>> {
        self.rules.unresolved(bound)
    }
}

/// Free product of two presentations with disjoint alphabets.
#[derive(Clone, Debug)]
pub struct FreeProductPresentation<S> {
    kind: AlgebraKind,
    factors: (Presentation<S>, Presentation<S>),
    alphabet: Alphabet,
    relations: Vec<NCPoly<S>>,
    union: RuleSet<S>,
}

impl<S: Coefficient> FreeProductPresentation<S> {
    pub fn new(kind: AlgebraKind, a: Presentation<S>, b: Presentation<S>) -> Result<Self> {
        let (fa, fb) = (a.alphabet().families(), b.alphabet().families());
        if fa.iter().any(|f| fb.contains(f)) {
            return Err(AlgebraError::Parameter("free product factors must have disjoint alphabets".into()));
        }
        let alphabet = a.alphabet().union(&b.alphabet())?;
        let mut relations = Vec::new();
        let mut rules = Vec::new();
        for f in [&a, &b] {
            for r in f.relations() {
                relations.push(r.lift(alphabet)?);
            }
            for r in f.rules() {
                rules.push(Rule { lhs: r.lhs.clone(), rhs: r.rhs.lift(alphabet)? });
            }
        }
        let union = RuleSet::new(alphabet, rules)?;
        Ok(FreeProductPresentation { kind, factors: (a, b), alphabet, relations, union })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn factors(&self) -> (&Presentation<S>, &Presentation<S>) {
        (&self.factors.0, &self.factors.1)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn relations(&self) -> &[NCPoly<S>] {
        &self.relations
    }

    /// Union of the factor rule sets; a valid rewriting system for the free
    /// product since no left-hand side mixes alphabets.
    pub fn union_rules(&self) -> &RuleSet<S> {
        &self.union
    }

    pub fn certified_degree(&self) -> usize {
        self.factors.0.certified_degree().min(self.factors.1.certified_degree())
    }

    pub fn complete(&self, bound: usize) -> Result<Self> {
        Self::new(self.kind, self.factors.0.complete(bound)?, self.factors.1.complete(bound)?)
    }

    fn factor_of(&self, s: &Sym) -> usize {
        if self.factors.0.alphabet().contains(s) {
            0
        } else {
            1
        }
    }

    fn factor(&self, k: usize) -> &Presentation<S> {
        if k == 0 {
            &self.factors.0
        } else {
            &self.factors.1
        }
    }

    /// Maximal runs of letters from one factor.
    fn blocks<'w>(&self, w: &'w [Sym]) -> Vec<(usize, &'w [Sym])> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=w.len() {
            if k == w.len() || self.factor_of(&w[k]) != self.factor_of(&w[start]) {
                out.push((self.factor_of(&w[start]), &w[start..k]));
                start = k;
            }
        }
        out
    }

    fn factor_nf(&self, k: usize, block: &[Sym]) -> NCPoly<S> {
        self.factor(k).reduce_word(&Word::from_syms(block))
    }

    /// Product of two reduced alternating words.
    fn mul_reduced(&self, a: &[Sym], b: &[Sym], coeff: S, out: &mut NCPoly<S>) {
        if a.is_empty() || b.is_empty() {
            out.add_term(Word::concat3(a, b, &[]), coeff);
            return;
        }
        let (fa, fb) = (self.factor_of(&a[a.len() - 1]), self.factor_of(&b[0]));
        if fa != fb {
            out.add_term(Word::concat3(a, b, &[]), coeff);
            return;
        }
        let a_cut = a.len() - self.blocks(a).last().map(|(_, blk)| blk.len()).unwrap_or(0);
        let b_cut = self.blocks(b).first().map(|(_, blk)| blk.len()).unwrap_or(0);
        let (a_rest, a_last) = a.split_at(a_cut);
        let (b_first, b_rest) = b.split_at(b_cut);
        let merged = self.factor_nf(fa, Word::concat3(a_last, b_first, &[]).syms());
        for (w, c) in merged.into_terms() {
            let c = c * coeff.clone();
            if w.is_empty() {
                // scalar block: neighbours become adjacent and may merge again
                self.mul_reduced(a_rest, b_rest, c, out);
            } else {
                out.add_term(Word::concat3(a_rest, w.syms(), b_rest), c);
            }
        }
    }

    /// Alternating-block normal form: each block reduced in its factor,
    /// scalar blocks absorbed and neighbouring blocks re-merged.
    pub fn free_product_normal_form(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        self.alphabet.check(&p.alphabet())?;
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in p.terms() {
            let mut acc = NCPoly::constant(self.alphabet, c.clone());
            for (k, blk) in self.blocks(w.syms()) {
                let block = self.factor_nf(k, blk);
                let mut next = NCPoly::zero(self.alphabet);
                for (wa, ca) in acc.terms() {
                    for (wb, cb) in block.terms() {
                        self.mul_reduced(wa.syms(), wb.syms(), ca.clone() * cb.clone(), &mut next);
                    }
                }
                acc = next;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }
}

/// Handle on any shipped algebra.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Algebra<S> {
    Plain(Presentation<S>),
    FreeProduct(FreeProductPresentation<S>),
}

impl<S: Coefficient> Algebra<S> {
    pub fn kind(&self) -> AlgebraKind {
        match self {
            Algebra::Plain(p) => p.kind(),
            Algebra::FreeProduct(f) => f.kind(),
        }
    }

    pub fn n(&self) -> u8 {
        self.alphabet().n()
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Algebra::Plain(p) => p.alphabet(),
            Algebra::FreeProduct(f) => f.alphabet(),
        }
    }

    pub fn relations(&self) -> &[NCPoly<S>] {
        match self {
            Algebra::Plain(p) => p.relations(),
            Algebra::FreeProduct(f) => f.relations(),
        }
    }

    pub fn rule_set(&self) -> &RuleSet<S> {
        match self {
            Algebra::Plain(p) => p.rule_set(),
            Algebra::FreeProduct(f) => f.union_rules(),
        }
    }

    pub fn certified_degree(&self) -> usize {
        match self {
            Algebra::Plain(p) => p.certified_degree(),
            Algebra::FreeProduct(f) => f.certified_degree(),
        }
    }

    pub fn complete(&self, bound: usize) -> Result<Self> {
        Ok(match self {
            Algebra::Plain(p) => Algebra::Plain(p.complete(bound)?),
            Algebra::FreeProduct(f) => Algebra::FreeProduct(f.complete(bound)?),
        })
    }

    /// Normal form; panics if `p` is over another alphabet.
    pub fn nf(&self, p: &NCPoly<S>) -> NCPoly<S> {
        match self {
            Algebra::Plain(pr) => pr.nf(p),
            Algebra::FreeProduct(f) => f.free_product_normal_form(p).expect("polynomial over the free product alphabet"),
        }
    }

    pub fn normal_form(&self, p: &NCPoly<S>) -> Result<NormalForm<S>> {
        self.alphabet().check(&p.alphabet())?;
        Ok(NormalForm { poly: self.nf(p), certified: p.degree() <= self.certified_degree() })
    }

    /// `nf(p·q)`.
    pub fn mul(&self, p: &NCPoly<S>, q: &NCPoly<S>) -> NCPoly<S> {
        self.nf(&(p * q))
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.rule_set().is_irreducible(w)
    }

    /// All irreducible words of length ≤ `max_len`, in monomial order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let letters = self.alphabet().symbols();
        let mut layer = vec![Word::empty()];
        let mut all = layer.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &s in &letters {
                    let mut x = w.clone();
                    x.push(s);
                    if self.is_normal_word(&x) {
                        next.push(x);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }

    pub fn sym(&self, s: Sym) -> NCPoly<S> {
        NCPoly::sym(self.alphabet(), s)
    }

    pub fn one(&self) -> NCPoly<S> {
        NCPoly::one(self.alphabet())
    }

    pub fn unresolved_overlaps(&self, bound: usize) -> Vec<Overlap<S>> {
        match self {
            Algebra::Plain(p) => p.unresolved_overlaps(bound),
            Algebra::FreeProduct(f) => f.union_rules().unresolved(bound),
        }
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            name: self.kind(),
            n: self.n(),
            order: MONOMIAL_ORDER.into(),
            rules: self
                .rule_set()
                .rules()
                .iter()
                .map(|r| RuleDoc { lhs: word_to_tokens(&r.lhs), rhs: poly_to_doc(&r.rhs) })
                .collect(),
            certified_degree: self.certified_degree(),
        }
    }

    /// Rebuilds a certified system from its JSON document.
    pub fn from_doc(doc: &PresentationDoc) -> Result<Self> {
        let rules_for = |alphabet: Alphabet| -> Result<Vec<Rule<S>>> {
            let mut out = Vec::new();
            for r in &doc.rules {
                let lhs = word_from_tokens(&r.lhs)?;
                if lhs.syms().iter().all(|s| alphabet.contains(s)) {
                    out.push(Rule { lhs, rhs: poly_from_doc(alphabet, &r.rhs)? });
                }
            }
            Ok(out)
        };
        match doc.name {
            AlgebraKind::H => {
                let s1 = AlgebraKind::S1.alphabet(0);
                let o = AlgebraKind::OPlus.alphabet(doc.n);
                let total = doc.rules.len();
                let (ra, rb) = (rules_for(s1)?, rules_for(o)?);
                if ra.len() + rb.len() != total {
                    return Err(AlgebraError::Format("rule over a foreign alphabet".into()));
                }
                let a = Presentation::with_rules(AlgebraKind::S1, 0, ra, doc.certified_degree)?;
                let b = Presentation::with_rules(AlgebraKind::OPlus, doc.n, rb, doc.certified_degree)?;
                Ok(Algebra::FreeProduct(FreeProductPresentation::new(AlgebraKind::H, a, b)?))
            }
            kind => {
                let alphabet = kind.alphabet(doc.n);
                let rules = rules_for(alphabet)?;
                if rules.len() != doc.rules.len() {
                    return Err(AlgebraError::Format("rule over a foreign alphabet".into()));
                }
                Ok(Algebra::Plain(Presentation::with_rules(kind, doc.n, rules, doc.certified_degree)?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub lhs: Vec<String>,
    pub rhs: Vec<TermDoc>,
}

/// JSON form of a (certified) presentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub name: AlgebraKind,
    pub n: u8,
    #[serde(default)]
    pub order: String,
    pub rules: Vec<RuleDoc>,
    pub certified_degree: usize,
}

/// Builds the *-closed defining relations of a named algebra and orients
/// them into an inter-reduced rule list. Overlaps are not yet resolved; see
/// [`Algebra::complete`].
pub fn make_presentation<S: Coefficient>(kind: AlgebraKind, n: usize) -> Result<Algebra<S>> {
    if kind.needs_n() && !(2..=15).contains(&n) {
        return Err(AlgebraError::Parameter(format!("{kind} needs 2 ≤ n ≤ 15, got {n}")));
    }
    let n8 = if kind.needs_n() { n as u8 } else { 0 };
    Ok(match kind {
        AlgebraKind::OPlus => Algebra::Plain(Presentation::build(kind, n8, orthogonal_relations(n8))?),
        AlgebraKind::UPlus => Algebra::Plain(Presentation::build(kind, n8, unitary_relations(n8))?),
        AlgebraKind::S1 => Algebra::Plain(Presentation::build(kind, 0, circle_relations())?),
        AlgebraKind::SuMinus1_2 => Algebra::Plain(Presentation::build(kind, 0, su2_relations())?),
        AlgebraKind::H => {
            let s1 = Presentation::build(AlgebraKind::S1, 0, circle_relations())?;
            let o = Presentation::build(AlgebraKind::OPlus, n8, orthogonal_relations(n8))?;
            Algebra::FreeProduct(FreeProductPresentation::new(AlgebraKind::H, s1, o)?)
        }
    })
}

/// `make_presentation` followed by completion at `bound`, shared behind an `Arc`.
pub fn certified<S: Coefficient>(kind: AlgebraKind, n: usize, bound: usize) -> Result<Arc<Algebra<S>>> {
    Ok(Arc::new(make_presentation::<S>(kind, n)?.complete(bound)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;
    use num_traits::One;

    fn w(s: &[Sym]) -> Word {
        Word::from_syms(s)
    }

    #[test]
    fn parameter_errors() {
        assert!(make_presentation::<Q>(AlgebraKind::OPlus, 1).is_err());
        assert!(make_presentation::<Q>(AlgebraKind::H, 0).is_err());
        assert!(make_presentation::<Q>(AlgebraKind::S1, 0).is_ok());
    }

    #[test]
    fn circle_relations_and_rules() {
        let alg = make_presentation::<Q>(AlgebraKind::S1, 0).unwrap().complete(4).unwrap();
        let (z, zs) = (Sym::z(), Sym::z().starred());
        let lhs: Vec<Word> = alg.rule_set().rules().iter().map(|r| r.lhs.clone()).collect();
        assert_eq!(lhs, vec![w(&[z, zs]), w(&[zs, z])]);
        for r in alg.rule_set().rules() {
            assert_eq!(r.rhs, alg.one());
        }
        assert_eq!(alg.relations().len(), 2);
    }

    #[test]
    fn orthogonal_relation_set() {
        let alg = make_presentation::<Q>(AlgebraKind::OPlus, 2).unwrap();
        let a = alg.alphabet();
        let mut first = NCPoly::<Q>::constant(a, -Q::one());
        first.add_term(w(&[Sym::v(1, 1), Sym::v(1, 1)]), Q::one());
        first.add_term(w(&[Sym::v(2, 1), Sym::v(2, 1)]), Q::one());
        assert!(alg.relations().contains(&first));
        assert_eq!(alg.relations().len(), 8);
        // the two sums of squares of all entries agree, so one dependency
        let mut index = std::collections::BTreeMap::new();
        let rows: Vec<_> = alg
            .relations()
            .iter()
            .map(|r| {
                r.terms()
                    .map(|(w, c)| {
                        let next = index.len();
                        (*index.entry(w.clone()).or_insert(next), c.clone())
                    })
                    .collect::<crate::linalg::SparseRow<Q>>()
            })
            .collect();
        assert_eq!(crate::linalg::rank_of(index.len(), rows), 7);
        // *-closed as a set
        for r in alg.relations() {
            assert!(alg.relations().contains(&r.adjoint()));
        }
    }

    #[test]
    fn su2_contains_anticommutation() {
        let alg = make_presentation::<Q>(AlgebraKind::SuMinus1_2, 0).unwrap();
        let mut p = NCPoly::<Q>::zero(alg.alphabet());
        p.add_term(w(&[Sym::alpha(), Sym::gamma()]), Q::one());
        p.add_term(w(&[Sym::gamma(), Sym::alpha()]), Q::one());
        assert!(alg.relations().contains(&p));
    }

    #[test]
    fn su2_normal_form_examples() {
        let alg = make_presentation::<Q>(AlgebraKind::SuMinus1_2, 0).unwrap().complete(6).unwrap();
        let a = alg.alphabet();
        let (al, als, ga, gas) = (Sym::alpha(), Sym::alpha().starred(), Sym::gamma(), Sym::gamma().starred());
        let ga_al = NCPoly::monomial(a, w(&[ga, al]), Q::one());
        assert_eq!(alg.nf(&ga_al), NCPoly::monomial(a, w(&[al, ga]), -Q::one()));
        let aas = NCPoly::monomial(a, w(&[al, als]), Q::one());
        let mut expect = NCPoly::one(a);
        expect.add_term(w(&[ga, gas]), -Q::one());
        assert_eq!(alg.nf(&aas), expect);
        assert!(alg.unresolved_overlaps(6).is_empty());
    }

    #[test]
    fn orthogonality_reduces_to_one() {
        let alg = make_presentation::<Q>(AlgebraKind::OPlus, 2).unwrap().complete(4).unwrap();
        let a = alg.alphabet();
        let mut p = NCPoly::<Q>::zero(a);
        p.add_term(w(&[Sym::v(1, 1), Sym::v(1, 1)]), Q::one());
        p.add_term(w(&[Sym::v(2, 1), Sym::v(2, 1)]), Q::one());
        assert_eq!(alg.nf(&p), alg.one());
        let mut off = NCPoly::<Q>::zero(a);
        off.add_term(w(&[Sym::v(1, 1), Sym::v(1, 2)]), Q::one());
        off.add_term(w(&[Sym::v(2, 1), Sym::v(2, 2)]), Q::one());
        assert!(alg.nf(&off).is_zero());
        let nf = alg.normal_form(&p).unwrap();
        assert!(nf.certified);
    }

    #[test]
    fn uncertified_degree_is_flagged() {
        let alg = make_presentation::<Q>(AlgebraKind::S1, 0).unwrap().complete(2).unwrap();
        let z = Sym::z();
        let p = NCPoly::monomial(alg.alphabet(), w(&[z, z, z]), Q::one());
        assert!(!alg.normal_form(&p).unwrap().certified);
    }

    #[test]
    fn completion_is_idempotent() {
        let alg = make_presentation::<Q>(AlgebraKind::OPlus, 2).unwrap().complete(4).unwrap();
        let again = alg.complete(4).unwrap();
        assert_eq!(alg.rule_set().rules(), again.rule_set().rules());
    }

    #[test]
    fn free_product_examples() {
        let alg = make_presentation::<Q>(AlgebraKind::H, 2).unwrap().complete(4).unwrap();
        let a = alg.alphabet();
        let (z, zs) = (Sym::z(), Sym::z().starred());
        let zvz = NCPoly::monomial(a, w(&[z, Sym::v(1, 1), z]), Q::one());
        assert_eq!(alg.nf(&zvz), zvz);

        let mut mid = NCPoly::<Q>::zero(a);
        mid.add_term(w(&[z, Sym::v(1, 1), Sym::v(1, 1), z]), Q::one());
        mid.add_term(w(&[z, Sym::v(2, 1), Sym::v(2, 1), z]), Q::one());
        assert_eq!(alg.nf(&mid), NCPoly::monomial(a, w(&[z, z]), Q::one()));

        // u12 u12* = z v12 v12 z*, whose middle block reduces further to 1 - v11 v11
        let u12 = NCPoly::monomial(a, w(&[z, Sym::v(1, 2)]), Q::one());
        let prod = alg.mul(&u12, &u12.adjoint());
        let word = NCPoly::monomial(a, w(&[z, Sym::v(1, 2), Sym::v(1, 2), zs]), Q::one());
        assert_eq!(prod, alg.nf(&word));
        let mut expect = alg.one();
        expect.add_term(w(&[z, Sym::v(1, 1), Sym::v(1, 1), zs]), -Q::one());
        assert_eq!(prod, expect);
    }

    #[test]
    fn doc_round_trip() {
        let alg = make_presentation::<Q>(AlgebraKind::H, 2).unwrap().complete(4).unwrap();
        let doc = alg.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: PresentationDoc = serde_json::from_str(&json).unwrap();
        let re = Algebra::<Q>::from_doc(&back).unwrap();
        assert_eq!(re.certified_degree(), 4);
        assert_eq!(re.rule_set().rules(), alg.rule_set().rules());
    }

    #[test]
    fn tampered_doc_is_rejected() {
        let alg = make_presentation::<Q>(AlgebraKind::S1, 0).unwrap().complete(4).unwrap();
        let mut doc = alg.to_doc();
        doc.rules.pop();
        assert!(Algebra::<Q>::from_doc(&doc).is_err());
        let mut doc = alg.to_doc();
        // z z* -> z z z is not oriented
        doc.rules[0].rhs = vec![TermDoc { word: vec!["z".into(); 3], re: "1".into(), im: "0".into() }];
        assert!(matches!(Algebra::<Q>::from_doc(&doc), Err(AlgebraError::Orientation { .. })));
    }
}
