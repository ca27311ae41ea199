//! Counit and comultiplication on the shipped compact quantum group algebras.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ncpoly::{Family, NCPoly, Sym, Tensor, TensorPoly, Word};
use crate::presentations::{Algebra, AlgebraKind};
use crate::sample;
use crate::scalar::Coefficient;

/// Counit and comultiplication tables on the generators of a presented algebra.
#[derive(Clone, Debug)]
pub struct HopfStructure<S> {
    algebra: Arc<Algebra<S>>,
    counit: BTreeMap<Sym, S>,
    comult: BTreeMap<Sym, TensorPoly<S>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfFailure {
    pub law: String,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HopfReport {
    pub algebra: String,
    pub n: u8,
    pub degree_bound: usize,
    pub samples: usize,
    pub seed: u64,
    pub elements_checked: usize,
    pub failures: Vec<HopfFailure>,
    pub pass: bool,
}

fn delta<S: Coefficient>(i: u8, j: u8) -> S {
    if i == j {
        S::one()
    } else {
        S::zero()
    }
}

impl<S: Coefficient> HopfStructure<S> {
    /// The standard structure: `Δ(x_ij) = Σ_k x_ik ⊗ x_kj`, `ε(x_ij) = δ_ij`
    /// for the matrix generators, `z` group-like. SU₋₁(2) carries no
    /// structure here.
    pub fn standard(algebra: Arc<Algebra<S>>) -> Result<Self> {
        if algebra.kind() == AlgebraKind::SuMinus1_2 {
            return Err(AlgebraError::Parameter("no Hopf structure is provided for SU_minus1_2".into()));
        }
        let alphabet = algebra.alphabet();
        let n = alphabet.n();
        let mut counit = BTreeMap::new();
        let mut comult = BTreeMap::new();
        for s in alphabet.symbols() {
            let (eps, d) = if s.family.is_indexed() {
                let mut t = TensorPoly::zero(alphabet);
                for k in 1..=n {
                    let left = Sym { j: k, ..s };
                    let right = Sym { i: k, ..s };
                    t.add_term([Word::letter(left), Word::letter(right)], S::one());
                }
                (delta(s.i, s.j), t)
            } else {
                debug_assert_eq!(s.family, Family::Z);
                let mut t = TensorPoly::zero(alphabet);
                t.add_term([Word::letter(s), Word::letter(s)], S::one());
                (S::one(), t)
            };
            counit.insert(s, eps);
            comult.insert(s, d);
        }
        Ok(HopfStructure { algebra, counit, comult })
    }

    /// Arbitrary tables, e.g. deliberately wrong ones for negative controls.
    /// Every symbol of the alphabet must have an entry.
    pub fn with_tables(
        algebra: Arc<Algebra<S>>,
        counit: BTreeMap<Sym, S>,
        comult: BTreeMap<Sym, TensorPoly<S>>,
    ) -> Result<Self> {
        let alphabet = algebra.alphabet();
        for s in alphabet.symbols() {
            if !counit.contains_key(&s) || !comult.contains_key(&s) {
                return Err(AlgebraError::Parameter(format!("no table entry for {}", s.token())));
            }
        }
        for t in comult.values() {
            alphabet.check(&t.alphabet())?;
        }
        Ok(HopfStructure { algebra, counit, comult })
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.algebra
    }

    pub fn counit_table(&self) -> &BTreeMap<Sym, S> {
        &self.counit
    }

    pub fn comult_table(&self) -> &BTreeMap<Sym, TensorPoly<S>> {
        &self.comult
    }

    pub fn counit_sym(&self, s: Sym) -> S {
        self.counit[&s].clone()
    }

    pub fn counit_word(&self, w: &[Sym]) -> S {
        let mut acc = S::one();
        for &s in w {
            acc = acc * self.counit_sym(s);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn counit(&self, p: &NCPoly<S>) -> S {
        self.algebra.alphabet().check(&p.alphabet()).expect("polynomial over the Hopf algebra alphabet");
        p.terms().fold(S::zero(), |acc, (w, c)| acc + c.clone() * self.counit_word(w.syms()))
    }

    fn reduce_legs<const K: usize>(&self, t: &Tensor<S, K>) -> Tensor<S, K> {
        let a = self.algebra.alphabet();
        t.map_legs(|_, w| self.algebra.nf(&NCPoly::monomial(a, w.clone(), S::one())))
    }

    pub fn comultiply_word(&self, w: &[Sym]) -> TensorPoly<S> {
        let mut acc = TensorPoly::one(self.algebra.alphabet());
        for s in w {
            acc = self.reduce_legs(&acc.try_mul(&self.comult[s]).expect("shared alphabet"));
        }
        acc
    }

    pub fn comultiply(&self, p: &NCPoly<S>) -> TensorPoly<S> {
        self.algebra.alphabet().check(&p.alphabet()).expect("polynomial over the Hopf algebra alphabet");
        let mut out = TensorPoly::zero(self.algebra.alphabet());
        for (w, c) in p.terms() {
            for (legs, a) in self.comultiply_word(w.syms()).terms() {
                out.add_term(legs.clone(), a.clone() * c.clone());
            }
        }
        out
    }

    /// `(ε⊗id)Δ(p)` and `(id⊗ε)Δ(p)`.
    fn counit_legs(&self, t: &TensorPoly<S>) -> (NCPoly<S>, NCPoly<S>) {
        let a = self.algebra.alphabet();
        let (mut left, mut right) = (NCPoly::zero(a), NCPoly::zero(a));
        for ([x, y], c) in t.terms() {
            left.add_term(y.clone(), self.counit_word(x.syms()) * c.clone());
            right.add_term(x.clone(), self.counit_word(y.syms()) * c.clone());
        }
        (left, right)
    }

    /// `(Δ⊗id)Δ(p)` and `(id⊗Δ)Δ(p)`.
    fn coassociativity_sides(&self, t: &TensorPoly<S>) -> (Tensor<S, 3>, Tensor<S, 3>) {
        let a = self.algebra.alphabet();
        let (mut left, mut right) = (Tensor::zero(a), Tensor::zero(a));
        for ([x, y], c) in t.terms() {
            for ([x1, x2], d) in self.comultiply_word(x.syms()).terms() {
                left.add_term([x1.clone(), x2.clone(), y.clone()], c.clone() * d.clone());
            }
            for ([y1, y2], d) in self.comultiply_word(y.syms()).terms() {
                right.add_term([x.clone(), y1.clone(), y2.clone()], c.clone() * d.clone());
            }
        }
        (left, right)
    }

    /// Defining relations (and adjoints) on which ε or Δ fails to vanish.
    pub fn relation_violations(&self) -> Vec<HopfFailure> {
        let mut out = Vec::new();
        for r in self.algebra.relations() {
            for r in [r.clone(), r.adjoint()] {
                let e = self.counit(&r);
                if !e.is_zero() {
                    out.push(HopfFailure {
                        law: "counit annihilates relation".into(),
                        element: r.pretty(),
                        lhs: e.canonical(),
                        rhs: "0".into(),
                    });
                }
                let d = self.comultiply(&r);
                if !d.is_zero() {
                    out.push(HopfFailure {
                        law: "comultiplication annihilates relation".into(),
                        element: r.pretty(),
                        lhs: d.pretty(),
                        rhs: "0".into(),
                    });
                }
            }
        }
        out
    }

    /// Counit laws and coassociativity on one element.
    pub fn axiom_failures(&self, p: &NCPoly<S>) -> Vec<HopfFailure> {
        let p = self.algebra.nf(p);
        let d = self.comultiply(&p);
        let mut out = Vec::new();
        let (l, r) = self.counit_legs(&d);
        for (law, side) in [("(ε⊗id)Δ(p) = p", l), ("(id⊗ε)Δ(p) = p", r)] {
            let side = self.algebra.nf(&side);
            if side != p {
                out.push(HopfFailure { law: law.into(), element: p.pretty(), lhs: side.pretty(), rhs: p.pretty() });
            }
        }
        let (l, r) = self.coassociativity_sides(&d);
        if l != r {
            out.push(HopfFailure {
                law: "(Δ⊗id)Δ(p) = (id⊗Δ)Δ(p)".into(),
                element: p.pretty(),
                lhs: l.pretty(),
                rhs: r.pretty(),
            });
        }
        out
    }
}

/// Checks well-definedness on the relations, then the counit laws and
/// coassociativity on every generator, on 1, and on `samples` seeded random
/// elements of degree ≤ `degree_bound`.
pub fn check_hopf_axioms<S: Coefficient>(
    h: &HopfStructure<S>,
    degree_bound: usize,
    samples: usize,
    seed: u64,
) -> Result<HopfReport> {
    let certified = h.algebra.certified_degree();
    if certified < 2 * degree_bound {
        return Err(AlgebraError::Uncertified { needed: 2 * degree_bound, certified });
    }
    let a = h.algebra.alphabet();
    let mut elements: Vec<NCPoly<S>> = vec![NCPoly::one(a)];
    elements.extend(a.symbols().into_iter().map(|s| NCPoly::sym(a, s)));
    let mut rng = sample::rng(seed);
    elements.extend((0..samples).map(|_| sample::poly(a, degree_bound, &mut rng)));
    let mut failures = h.relation_violations();
    for p in &elements {
        failures.extend(h.axiom_failures(p));
    }
    Ok(HopfReport {
        algebra: h.algebra.kind().name().into(),
        n: h.algebra.n(),
        degree_bound,
        samples,
        seed,
        elements_checked: elements.len(),
        pass: failures.is_empty(),
        failures,
    })
}
