//! Words, sparse noncommutative polynomials and tensor powers over the free
//! *-algebra on a generator alphabet. No relations live here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::scalar::Coefficient;

/// Generator families. The declaration order is the symbol order used by the
/// monomial order (`v < u < z < a < g`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Self-adjoint entries of an orthogonal matrix.
    V,
    /// Entries of a unitary matrix.
    U,
    /// The unitary generator of the circle algebra.
    Z,
    /// `α` of SU₋₁(2).
    A,
    /// `γ` of SU₋₁(2).
    G,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::V, Family::U, Family::Z, Family::A, Family::G];

    pub fn is_indexed(self) -> bool {
        matches!(self, Family::V | Family::U)
    }

    pub fn is_self_adjoint(self) -> bool {
        self == Family::V
    }

    /// Weight in the graded part of the monomial order.
    pub fn weight(self) -> usize {
        match self {
            Family::A => 2,
            _ => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::V => 'v',
            Family::U => 'u',
            Family::Z => 'z',
            Family::A => 'a',
            Family::G => 'g',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.letter() == c)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// A generator symbol: family, matrix indices (1-based, zero for unindexed
/// families) and a star flag.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    pub family: Family,
    pub i: u8,
    pub j: u8,
    pub star: bool,
}

impl Sym {
    pub fn v(i: u8, j: u8) -> Sym {
        Sym { family: Family::V, i, j, star: false }
    }

    pub fn u(i: u8, j: u8) -> Sym {
        Sym { family: Family::U, i, j, star: false }
    }

    pub fn plain(family: Family) -> Sym {
        Sym { family, i: 0, j: 0, star: false }
    }

    pub fn z() -> Sym {
        Sym::plain(Family::Z)
    }

    pub fn alpha() -> Sym {
        Sym::plain(Family::A)
    }

    pub fn gamma() -> Sym {
        Sym::plain(Family::G)
    }

    pub fn starred(self) -> Sym {
        Sym { star: !self.family.is_self_adjoint(), ..self }
    }

    pub fn adjoint(self) -> Sym {
        if self.family.is_self_adjoint() {
            self
        } else {
            Sym { star: !self.star, ..self }
        }
    }

    /// Text token: `u[1,2]`, `u*[1,2]`, `z`, `z'`.
    pub fn token(&self) -> String {
        let c = self.family.letter();
        match (self.family.is_indexed(), self.star) {
            (true, false) => format!("{c}[{},{}]", self.i, self.j),
            (true, true) => format!("{c}*[{},{}]", self.i, self.j),
            (false, false) => c.to_string(),
            (false, true) => format!("{c}'"),
        }
    }

    /// Parses a single token in any of the accepted spellings.
    pub fn parse_token(text: &str) -> Result<Sym> {
        let t = text.trim();
        let err = || AlgebraError::Format(format!("bad generator token `{t}`"));
        let mut chars = t.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(err)?;
        let mut rest: &str = chars.as_str();
        let mut star = false;
        if let Some(r) = rest.strip_prefix('*') {
            star = true;
            rest = r;
        }
        if let Some(r) = rest.strip_suffix('\'').or_else(|| rest.strip_suffix('*')) {
            if star {
                return Err(err());
            }
            star = true;
            rest = r;
        }
        let (i, j) = if family.is_indexed() {
            let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(err)?;
            let (a, b) = inner.split_once(',').ok_or_else(err)?;
            (a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?)
        } else if rest.is_empty() {
            (0, 0)
        } else {
            return Err(err());
        };
        let s = Sym { family, i, j, star: false };
        Ok(if star { s.starred() } else { s })
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// The generator alphabet of an algebra: a set of families together with the
/// matrix size `n` (zero when no indexed family is present).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    families: u8,
    n: u8,
}

impl Alphabet {
    pub fn new(families: &[Family], n: u8) -> Alphabet {
        let bits = families.iter().fold(0, |acc, f| acc | f.bit());
        let indexed = families.iter().any(|f| f.is_indexed());
        Alphabet { families: bits, n: if indexed { n } else { 0 } }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn families(&self) -> Vec<Family> {
        Family::ALL.into_iter().filter(|f| self.has(*f)).collect()
    }

    pub fn has(&self, f: Family) -> bool {
        self.families & f.bit() != 0
    }

    pub fn contains(&self, s: &Sym) -> bool {
        if !self.has(s.family) {
            return false;
        }
        if s.family.is_indexed() {
            (1..=self.n).contains(&s.i) && (1..=self.n).contains(&s.j)
        } else {
            s.i == 0 && s.j == 0
        }
    }

    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let indexed = |a: &Alphabet| a.families().iter().any(|f| f.is_indexed());
        if indexed(self) && indexed(other) && self.n != other.n {
            return Err(mismatch(self, other));
        }
        Ok(Alphabet { families: self.families | other.families, n: self.n.max(other.n) })
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.families & !other.families == 0 && (self.n == 0 || self.n == other.n)
    }

    /// All symbols, starred ones included, in symbol order.
    pub fn symbols(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        for f in self.families() {
            let base: Vec<Sym> = if f.is_indexed() {
                (1..=self.n)
                    .flat_map(|i| (1..=self.n).map(move |j| Sym { family: f, i, j, star: false }))
                    .collect()
            } else {
                vec![Sym::plain(f)]
            };
            for s in base {
                out.push(s);
                if !f.is_self_adjoint() {
                    out.push(s.starred());
                }
            }
        }
        out.sort();
        out
    }

    pub(crate) fn check(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(mismatch(self, other))
        }
    }
}

fn mismatch(a: &Alphabet, b: &Alphabet) -> AlgebraError {
    AlgebraError::AlphabetMismatch { left: a.to_string(), right: b.to_string() }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: String = self.families().iter().map(|f| f.letter()).collect();
        write!(f, "{{{letters}}}")?;
        if self.n > 0 {
            write!(f, "(n={})", self.n)?;
        }
        Ok(())
    }
}

/// A monomial of the free algebra. The empty word is the unit.
///
/// Words are ordered by the monomial order: weighted length first, then
/// lexicographically by symbol, left to right.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[Sym; 8]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_syms(syms: &[Sym]) -> Word {
        Word(SmallVec::from_slice(syms))
    }

    pub fn letter(s: Sym) -> Word {
        Word::from_syms(&[s])
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|s| s.family.weight()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(a: &[Sym], b: &[Sym], c: &[Sym]) -> Word {
        let mut v = SmallVec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v.extend_from_slice(c);
        Word(v)
    }

    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.adjoint()).collect())
    }

    pub fn push(&mut self, s: Sym) {
        self.0.push(s);
    }

    /// Position of the first occurrence of `pat` as a contiguous subword.
    pub fn find(&self, pat: &[Sym]) -> Option<usize> {
        if pat.is_empty() {
            return Some(0);
        }
        if pat.len() > self.len() {
            return None;
        }
        self.0.windows(pat.len()).position(|w| w == pat)
    }

    /// Text form: symbol tokens joined by `*`; `1` for the empty word.
    pub fn token(&self) -> String {
        if self.is_empty() {
            "1".into()
        } else {
            self.0.iter().map(Sym::token).collect::<Vec<_>>().join("*")
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

fn add_into<K: Ord, S: Coefficient>(terms: &mut BTreeMap<K, S>, key: K, c: S) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// A finitely supported linear combination of words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly<S> {
    alphabet: Alphabet,
    terms: BTreeMap<Word, S>,
}

impl<S: Coefficient> NCPoly<S> {
    pub fn zero(alphabet: Alphabet) -> Self {
        NCPoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::constant(alphabet, S::one())
    }

    pub fn constant(alphabet: Alphabet, c: S) -> Self {
        Self::monomial(alphabet, Word::empty(), c)
    }

    pub fn monomial(alphabet: Alphabet, word: Word, c: S) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(word, c);
        p
    }

    pub fn sym(alphabet: Alphabet, s: Sym) -> Self {
        Self::monomial(alphabet, Word::letter(s), S::one())
    }

    /// Builds a polynomial from words, checking every symbol against the alphabet.
    pub fn from_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, S)>) -> Result<Self> {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            if let Some(bad) = w.syms().iter().find(|s| !alphabet.contains(s)) {
                return Err(AlgebraError::AlphabetMismatch {
                    left: alphabet.to_string(),
                    right: bad.token(),
                });
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &S)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, S)> {
        self.terms.into_iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Constant term (coefficient of the empty word).
    pub fn constant_term(&self) -> S {
        self.coeff(&Word::empty())
    }

    /// Largest word under the monomial order, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &S)> {
        self.terms.iter().next_back()
    }

    /// Maximal word length; zero for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        add_into(&mut self.terms, w, c);
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.alphabet);
        }
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a.clone() * c.clone())).collect();
        NCPoly { alphabet: self.alphabet, terms }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.alphabet.check(&other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.alphabet.check(&other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Distributed concatenation product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.alphabet.check(&other.alphabet)?;
        let mut out = Self::zero(self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.alphabet), |acc, _| &acc * self)
    }

    /// Antilinear anti-automorphism: reverses words, flips stars, conjugates.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.adjoint(), c.conj());
        }
        out
    }

    /// Reinterprets the polynomial over a larger alphabet.
    pub fn lift(&self, alphabet: Alphabet) -> Result<Self> {
        Self::from_terms(alphabet, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    /// The unique unital homomorphism of free algebras sending each symbol
    /// to `image(sym)`, evaluated on `self`.
    pub fn substitute<F>(&self, target: Alphabet, mut image: F) -> Result<Self>
    where
        F: FnMut(Sym) -> Result<NCPoly<S>>,
    {
        let mut out = Self::zero(target);
        for (w, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for &s in w.syms() {
                acc = acc.try_mul(&image(s)?)?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Left/right multiplication by a single word, without alphabet checks.
    pub fn sandwich(&self, left: &[Sym], right: &[Sym]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (Word::concat3(left, w.syms(), right), c.clone()))
            .collect();
        NCPoly { alphabet: self.alphabet, terms }
    }

    /// Canonical text form, terms in ascending monomial order.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let (sep, c) = if idx > 0 && c.is_negative_real() {
                (" - ", -c.clone())
            } else if idx > 0 {
                (" + ", c.clone())
            } else {
                ("", c.clone())
            };
            out.push_str(sep);
            if w.is_empty() {
                out.push_str(&c.canonical());
            } else if c.is_one() {
                out.push_str(&w.token());
            } else {
                out.push_str(&c.canonical());
                out.push('*');
                out.push_str(&w.token());
            }
        }
        out
    }
}

impl<S: fmt::Debug> fmt::Debug for NCPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c:?}·{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<S: Coefficient> fmt::Display for NCPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

// Operator forms panic on alphabet mismatch; use the `try_*` methods to
// handle it as an error.
impl<S: Coefficient> Add for &NCPoly<S> {
    type Output = NCPoly<S>;
    fn add(self, rhs: Self) -> NCPoly<S> {
        self.try_add(rhs).expect("alphabet mismatch in +")
    }
}

impl<S: Coefficient> Sub for &NCPoly<S> {
    type Output = NCPoly<S>;
    fn sub(self, rhs: Self) -> NCPoly<S> {
        self.try_sub(rhs).expect("alphabet mismatch in -")
    }
}

impl<S: Coefficient> Mul for &NCPoly<S> {
    type Output = NCPoly<S>;
    fn mul(self, rhs: Self) -> NCPoly<S> {
        self.try_mul(rhs).expect("alphabet mismatch in *")
    }
}

impl<S: Coefficient> Neg for &NCPoly<S> {
    type Output = NCPoly<S>;
    fn neg(self) -> NCPoly<S> {
        self.scale(&-S::one())
    }
}

/// Element of the `K`-fold algebraic tensor power of the free algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor<S, const K: usize> {
    alphabet: Alphabet,
    terms: BTreeMap<[Word; K], S>,
}

/// Elements of the tensor square, the codomain of the comultiplication.
pub type TensorPoly<S> = Tensor<S, 2>;

impl<S: Coefficient, const K: usize> Tensor<S, K> {
    pub fn zero(alphabet: Alphabet) -> Self {
        Tensor { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        let mut t = Self::zero(alphabet);
        t.add_term(std::array::from_fn(|_| Word::empty()), S::one());
        t
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn add_term(&mut self, legs: [Word; K], c: S) {
        add_into(&mut self.terms, legs, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Word; K], &S)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.alphabet);
        for (legs, a) in &self.terms {
            out.add_term(legs.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.alphabet.check(&other.alphabet)?;
        let mut out = self.clone();
        for (legs, c) in &other.terms {
            out.add_term(legs.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-S::one()))
    }

    /// Leg-wise product `(a⊗b)(c⊗d) = ac⊗bd`, extended bilinearly.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.alphabet.check(&other.alphabet)?;
        let mut out = Self::zero(self.alphabet);
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                let legs = std::array::from_fn(|k| l1[k].concat(&l2[k]));
                out.add_term(legs, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Pure tensor of polynomials.
    pub fn pure(legs: [&NCPoly<S>; K]) -> Result<Self> {
        let alphabet = legs[0].alphabet();
        let mut out = Self::one(alphabet);
        for (k, p) in legs.iter().enumerate() {
            alphabet.check(&p.alphabet())?;
            let mut next = Self::zero(alphabet);
            for (l, c) in &out.terms {
                for (w, a) in p.terms() {
                    let mut legs = l.clone();
                    legs[k] = w.clone();
                    next.add_term(legs, c.clone() * a.clone());
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Applies a linear map to each leg independently (the map receives a
    /// single word and returns its image).
    pub fn map_legs<F>(&self, mut f: F) -> Self
    where
        F: FnMut(usize, &Word) -> NCPoly<S>,
    {
        let mut out = Self::zero(self.alphabet);
        for (legs, c) in &self.terms {
            let images: Vec<NCPoly<S>> = legs.iter().enumerate().map(|(k, w)| f(k, w)).collect();
            let refs: [&NCPoly<S>; K] = std::array::from_fn(|k| &images[k]);
            let t = Self::pure(refs).expect("leg images share the tensor alphabet");
            for (l, a) in t.terms {
                out.add_term(l, a * c.clone());
            }
        }
        out
    }

    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(legs, c)| {
                let body = legs.iter().map(Word::token).collect::<Vec<_>>().join(" ⊗ ");
                format!("{}·({body})", c.canonical())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<S: fmt::Debug, const K: usize> fmt::Debug for Tensor<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(legs, c)| format!("{c:?}·({})", legs.iter().map(Word::token).collect::<Vec<_>>().join(" ⊗ ")))
            .collect();
        f.write_str(if parts.is_empty() { "0" } else { "" })?;
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn u_alpha(n: u8) -> Alphabet {
        Alphabet::new(&[Family::U], n)
    }

    fn h_alpha() -> Alphabet {
        Alphabet::new(&[Family::Z, Family::U], 2)
    }

    #[test]
    fn mul_examples() {
        let a = Alphabet::new(&[Family::V], 2);
        let v11 = NCPoly::<Q>::sym(a, Sym::v(1, 1));
        let sq = &v11 * &v11;
        assert_eq!(sq.coeff(&Word::from_syms(&[Sym::v(1, 1), Sym::v(1, 1)])), Q::one());
        assert_eq!(sq.len(), 1);
        assert_eq!(&v11 * &NCPoly::one(a), v11);

        let zs = Alphabet::new(&[Family::Z], 0);
        let two_z = NCPoly::<Q>::monomial(zs, Word::letter(Sym::z()), Q::from_ints(2, 0));
        let three_zs = NCPoly::<Q>::monomial(zs, Word::letter(Sym::z().starred()), Q::from_ints(3, 0));
        let prod = &two_z * &three_zs;
        assert_eq!(prod.coeff(&Word::from_syms(&[Sym::z(), Sym::z().starred()])), Q::from_ints(6, 0));
    }

    #[test]
    fn mixing_alphabets_is_an_error() {
        let p = NCPoly::<Q>::one(u_alpha(2));
        let q = NCPoly::<Q>::one(u_alpha(3));
        assert!(matches!(p.try_mul(&q), Err(AlgebraError::AlphabetMismatch { .. })));
        assert!(p.try_add(&NCPoly::one(h_alpha())).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let a = u_alpha(2);
        let u12 = NCPoly::<Q>::sym(a, Sym::u(1, 2));
        assert_eq!(u12.adjoint(), NCPoly::sym(a, Sym::u(1, 2).starred()));

        let o = Alphabet::new(&[Family::V], 2);
        let v12 = NCPoly::<Q>::sym(o, Sym::v(1, 2));
        assert_eq!(v12.adjoint(), v12);
        assert_eq!(Sym::v(1, 2).starred(), Sym::v(1, 2));

        let h = h_alpha();
        let zu = NCPoly::<Q>::monomial(h, Word::from_syms(&[Sym::z(), Sym::u(1, 1)]), Q::i());
        let expect = NCPoly::monomial(
            h,
            Word::from_syms(&[Sym::u(1, 1).starred(), Sym::z().starred()]),
            -Q::i(),
        );
        assert_eq!(zu.adjoint(), expect);
    }

    #[test]
    fn tensor_mul_examples() {
        let a = u_alpha(2);
        let w = |s: Sym| Word::letter(s);
        let mut x = TensorPoly::<Q>::zero(a);
        x.add_term([w(Sym::u(1, 1)), w(Sym::u(1, 2))], Q::one());
        let mut y = TensorPoly::<Q>::zero(a);
        y.add_term([w(Sym::u(2, 1)), w(Sym::u(2, 2))], Q::one());
        let prod = x.try_mul(&y).unwrap();
        let mut expect = TensorPoly::zero(a);
        expect.add_term(
            [Word::from_syms(&[Sym::u(1, 1), Sym::u(2, 1)]), Word::from_syms(&[Sym::u(1, 2), Sym::u(2, 2)])],
            Q::one(),
        );
        assert_eq!(prod, expect);
        assert_eq!(TensorPoly::one(a).try_mul(&x).unwrap(), x);

        let two = TensorPoly::<Q>::one(a).scale(&Q::from_ints(2, 0));
        let three = TensorPoly::<Q>::one(a).scale(&Q::from_ints(3, 0));
        assert_eq!(two.try_mul(&three).unwrap(), TensorPoly::one(a).scale(&Q::from_ints(6, 0)));
        assert!(x.try_mul(&TensorPoly::one(u_alpha(3))).is_err());
    }

    #[test]
    fn symbol_tokens_round_trip() {
        for s in Alphabet::new(&[Family::U, Family::Z, Family::V], 3).symbols() {
            assert_eq!(Sym::parse_token(&s.token()).unwrap(), s);
        }
        assert_eq!(Sym::parse_token("u[1,2]*").unwrap(), Sym::u(1, 2).starred());
        assert_eq!(Sym::parse_token("z*").unwrap(), Sym::z().starred());
        assert!(Sym::parse_token("q").is_err());
        assert!(Sym::parse_token("u*[1,2]'").is_err());
    }

    #[test]
    fn monomial_order_is_weighted_then_lex() {
        let aa = Word::from_syms(&[Sym::alpha(), Sym::alpha().starred()]);
        let gg = Word::from_syms(&[Sym::gamma(), Sym::gamma().starred()]);
        let ga = Word::from_syms(&[Sym::gamma(), Sym::alpha()]);
        let ag = Word::from_syms(&[Sym::alpha(), Sym::gamma()]);
        assert!(aa > gg);
        assert!(ga > ag);
        let v = |i, j| Word::from_syms(&[Sym::v(i, 1), Sym::v(j, 1)]);
        assert!(v(2, 2) > v(1, 1));
        assert!(Word::letter(Sym::v(2, 2)) < v(1, 1));
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly<Q>> {
        let a = Alphabet::new(&[Family::U], 2);
        let syms = a.symbols();
        let word = proptest::collection::vec(0..syms.len(), 0..4)
            .prop_map(move |idx| Word(idx.into_iter().map(|k| syms[k]).collect()));
        proptest::collection::vec((word, -3i64..4, -2i64..3), 0..5).prop_map(move |ts| {
            NCPoly::from_terms(a, ts.into_iter().map(|(w, re, im)| (w, Q::from_ints(re, im)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            for (_, c) in (&p * &q).terms() {
                prop_assert!(!c.is_zero());
            }
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn adjoint_is_an_involutive_anti_homomorphism(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!((&p * &q).adjoint(), &q.adjoint() * &p.adjoint());
            prop_assert_eq!(p.adjoint().adjoint(), p);
        }
    }
}
