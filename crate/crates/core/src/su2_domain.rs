//! The linear basis `α^i γ^j γ*^k` of Pol(SU₋₁(2)) and its multiplication.
//!
//! `α^i` stands for `(α*)^{-i}` when `i < 0`. Products are computed in closed
//! form: moving `α^l` past `γ^j γ*^k` costs `(−1)^{(j+k)|l|}`, and
//! `α^i α^l = α^{i+l} p_{i,l}(γγ*)` with `p` from [`claim1_poly`].

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ncpoly::{Alphabet, NCPoly, Sym, Word};
use crate::presentations::AlgebraKind;
use crate::sample::{self, SeededRng};
use crate::scalar::Coefficient;

/// Exponents `(i, j, k)` of `α^i γ^j γ*^k`.
pub type Exponents = (i64, u32, u32);

#[derive(Clone, PartialEq, Eq)]
pub struct SU2Normal<S> {
    terms: BTreeMap<Exponents, S>,
}

fn sign<S: Coefficient>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, r| acc * (n - r) as i64 / (r + 1) as i64)
}

/// `p_{i,j}` with `α^i α^j = α^{i+j} p_{i,j}(t)`, `t = γγ*`, as coefficients
/// of `1, t, t², …`.
///
/// Same signs (or a zero exponent) give 1. For `i ≥ 0 > j` the result is
/// `(1−t)^{−j}` when `i > −j` and `(1−t)^{i}` when `i ≤ −j`; `i < 0 ≤ j` is
/// symmetric.
pub fn claim1_poly(i: i64, j: i64) -> Vec<i64> {
    let power = if i >= 0 && j < 0 {
        if i > -j {
            -j
        } else {
            i
        }
    } else if i < 0 && j >= 0 {
        if j > -i {
            -i
        } else {
            j
        }
    } else {
        0
    };
    let m = power as u64;
    (0..=m).map(|r| if r % 2 == 1 { -binomial(m, r) } else { binomial(m, r) }).collect()
}

/// Product of two basis monomials.
pub fn basis_mul<S: Coefficient>((i, j, k): Exponents, (l, m, n): Exponents) -> Vec<(Exponents, S)> {
    let s: S = sign((j + k) as u64 * l.unsigned_abs() % 2 == 1);
    claim1_poly(i, l)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(r, c)| ((i + l, j + m + r as u32, k + n + r as u32), s.clone() * S::from_i64(c)))
        .collect()
}

impl<S: Coefficient> SU2Normal<S> {
    pub fn zero() -> Self {
        SU2Normal { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), S::one())
    }

    pub fn monomial(e: Exponents, c: S) -> Self {
        let mut x = Self::zero();
        x.add_term(e, c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, S)>) -> Self {
        let mut x = Self::zero();
        for (e, c) in terms {
            x.add_term(e, c);
        }
        x
    }

    pub fn letter(s: Sym) -> Result<Self> {
        let e = match (s.family, s.star) {
            (crate::Family::A, false) => (1, 0, 0),
            (crate::Family::A, true) => (-1, 0, 0),
            (crate::Family::G, false) => (0, 1, 0),
            (crate::Family::G, true) => (0, 0, 1),
            _ => {
                return Err(AlgebraError::AlphabetMismatch {
                    left: AlgebraKind::SuMinus1_2.alphabet(0).to_string(),
                    right: s.token(),
                })
            }
        };
        Ok(Self::monomial(e, S::one()))
    }

    pub fn add_term(&mut self, e: Exponents, c: S) {
        let slot = self.terms.entry(e).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &S)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponents) -> S {
        self.terms.get(&e).cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, a)| (e, a.clone() * c.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, basis_mul)
    }

    /// Bilinear extension of an arbitrary basis product (used to run the
    /// domain test against deliberately wrong multiplications).
    pub fn mul_with<F>(&self, other: &Self, basis: F) -> Self
    where
        F: Fn(Exponents, Exponents) -> Vec<(Exponents, S)>,
    {
        let mut out = Self::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                for (e, c) in basis(a, b) {
                    out.add_term(e, c * x.clone() * y.clone());
                }
            }
        }
        out
    }

    /// `(λ α^i γ^j γ*^k)* = (−1)^{(j+k)|i|} conj(λ) α^{−i} γ^k γ*^j`.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j, k), c)| {
            let s: S = sign((j + k) as u64 * i.unsigned_abs() % 2 == 1);
            ((-i, k, j), s * c.conj())
        }))
    }

    pub fn deg_alpha(&self) -> Result<i64> {
        self.terms.keys().map(|e| e.0).max().ok_or(AlgebraError::UndefinedDegree)
    }

    pub fn deg_gamma(&self) -> Result<u32> {
        self.terms.keys().map(|e| e.1 + e.2).max().ok_or(AlgebraError::UndefinedDegree)
    }

    /// The same element as a polynomial in the letters α, α*, γ, γ*.
    pub fn to_poly(&self) -> NCPoly<S> {
        let a = su2_alphabet();
        let mut p = NCPoly::zero(a);
        for (&(i, j, k), c) in &self.terms {
            let al = if i >= 0 { Sym::alpha() } else { Sym::alpha().starred() };
            let mut w = Word::empty();
            (0..i.unsigned_abs()).for_each(|_| w.push(al));
            (0..j).for_each(|_| w.push(Sym::gamma()));
            (0..k).for_each(|_| w.push(Sym::gamma().starred()));
            p.add_term(w, c.clone());
        }
        p
    }

    pub fn pretty(&self) -> String {
        self.to_poly().pretty()
    }
}

impl<S: fmt::Debug> fmt::Debug for SU2Normal<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<S: Coefficient> fmt::Display for SU2Normal<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

pub fn su2_alphabet() -> Alphabet {
    AlgebraKind::SuMinus1_2.alphabet(0)
}

/// Basis expansion of a polynomial in α, α*, γ, γ*, folding letters in from
/// the right of the accumulated product.
pub fn su2_normal_form<S: Coefficient>(p: &NCPoly<S>) -> Result<SU2Normal<S>> {
    su2_alphabet().check(&p.alphabet())?;
    let mut out = SU2Normal::zero();
    for (w, c) in p.terms() {
        let mut acc = SU2Normal::one();
        for &s in w.syms() {
            acc = acc.mul(&SU2Normal::letter(s)?);
        }
        out = out.add(&acc.scale(c));
    }
    Ok(out)
}

/// `α^{i+j} p_{i,j}(γγ*)` expanded in the basis.
pub fn claim1_rhs<S: Coefficient>(i: i64, j: i64) -> SU2Normal<S> {
    SU2Normal::from_terms(
        claim1_poly(i, j).into_iter().enumerate().map(|(r, c)| ((i + j, r as u32, r as u32), S::from_i64(c))),
    )
}

/// A nonzero element with 1 to 5 basis monomials, `|i| ≤ max_alpha`,
/// `j + k ≤ max_gamma`, coefficients from the box −3..=3.
pub fn random_element<S: Coefficient>(rng: &mut SeededRng, max_alpha: i64, max_gamma: u32) -> SU2Normal<S> {
    loop {
        let mut x = SU2Normal::zero();
        for _ in 0..rng.gen_range(1..=5) {
            let i = rng.gen_range(-max_alpha..=max_alpha);
            let j = rng.gen_range(0..=max_gamma);
            let k = rng.gen_range(0..=max_gamma - j);
            x.add_term((i, j, k), sample::coefficient(rng));
        }
        if !x.is_zero() {
            return x;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainFailure {
    pub x: String,
    pub y: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DomainReport {
    pub samples: usize,
    pub seed: u64,
    pub max_alpha: i64,
    pub max_gamma: u32,
    pub failures: Vec<DomainFailure>,
    pub pass: bool,
}

/// Multiplies `samples` seeded random pairs and checks that every product is
/// nonzero with additive α-degree.
pub fn domain_test<S: Coefficient>(samples: usize, max_alpha: i64, max_gamma: u32, seed: u64) -> DomainReport {
    domain_test_with::<S, _>(samples, max_alpha, max_gamma, seed, basis_mul)
}

pub fn domain_test_with<S, F>(samples: usize, max_alpha: i64, max_gamma: u32, seed: u64, basis: F) -> DomainReport
where
    S: Coefficient,
    F: Fn(Exponents, Exponents) -> Vec<(Exponents, S)> + Copy,
{
    let mut rng = sample::rng(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let x = random_element::<S>(&mut rng, max_alpha, max_gamma);
        let y = random_element::<S>(&mut rng, max_alpha, max_gamma);
        let xy = x.mul_with(&y, basis);
        let reason = match xy.deg_alpha() {
            Err(_) => Some("zero product".to_string()),
            Ok(d) => {
                let expect = x.deg_alpha().unwrap() + y.deg_alpha().unwrap();
                (d != expect).then(|| format!("deg_alpha(xy) = {d}, expected {expect}"))
            }
        };
        if let Some(reason) = reason {
            failures.push(DomainFailure { x: x.pretty(), y: y.pretty(), reason });
        }
    }
    DomainReport { samples, seed, max_alpha, max_gamma, pass: failures.is_empty(), failures }
}
