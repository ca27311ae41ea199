//! 1-cocycles `c(ab) = a.c(b) + c(a)ε(b)` with values in a presented
//! algebra acting on itself by left multiplication (right action via ε).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::hopf::HopfStructure;
use crate::linalg::{SparseRow, SparseSystem};
use crate::ncpoly::{Family, NCPoly, Sym, Word};
use crate::presentations::{Algebra, AlgebraKind};
use crate::sample::{self, SeededRng};
use crate::scalar::Coefficient;

/// Attached to every "no witness" answer of [`solve_inner`].
pub const TRUNCATION_CAVEAT: &str = "a \"no witness up to degree d\" answer is NOT a proof of non-innerness: \
the coefficient module is a polynomial truncation, not the algebra of affiliated operators";

/// The coefficient module: the ambient algebra with left multiplication.
#[derive(Clone, Debug)]
pub struct ModuleSpec<S> {
    pub ambient: Arc<Algebra<S>>,
}

impl<S: Coefficient> ModuleSpec<S> {
    pub fn new(ambient: Arc<Algebra<S>>) -> Self {
        ModuleSpec { ambient }
    }

    /// `p.m`, normal-formed.
    pub fn act(&self, p: &NCPoly<S>, m: &NCPoly<S>) -> NCPoly<S> {
        self.ambient.mul(p, m)
    }
}

/// A cocycle on the Hopf algebra `domain`, valued in `module`. The domain
/// acts on the module through `action`, the image of each domain generator
/// in the ambient algebra (the identity when the domain is the ambient).
#[derive(Clone, Debug)]
pub struct Cocycle<S> {
    domain: Arc<HopfStructure<S>>,
    module: ModuleSpec<S>,
    action: BTreeMap<Sym, NCPoly<S>>,
    values: BTreeMap<Sym, NCPoly<S>>,
}

/// `u_ij ↦ z v_ij`, `u_ij* ↦ v_ij z*`: the copy of U_n⁺ inside H_n.
pub fn u_into_h<S: Coefficient>(n: u8) -> BTreeMap<Sym, NCPoly<S>> {
    let h = AlgebraKind::H.alphabet(n);
    let mut map = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let v = Sym::v(i, j);
            map.insert(Sym::u(i, j), NCPoly::monomial(h, Word::from_syms(&[Sym::z(), v]), S::one()));
            map.insert(Sym::u(i, j).starred(), NCPoly::monomial(h, Word::from_syms(&[v, Sym::z().starred()]), S::one()));
        }
    }
    map
}

/// How `domain` acts on `ambient`: the identity on shared generators, or
/// the embedding U_n⁺ → H_n.
pub fn standard_action<S: Coefficient>(domain: &Algebra<S>, ambient: &Algebra<S>) -> Result<BTreeMap<Sym, NCPoly<S>>> {
    let (d, a) = (domain.alphabet(), ambient.alphabet());
    if d.is_subset_of(&a) && (d.n() == a.n() || !d.families().iter().any(|f| f.is_indexed())) {
        return Ok(d.symbols().into_iter().map(|s| (s, NCPoly::sym(a, s))).collect());
    }
    if domain.kind() == AlgebraKind::UPlus && ambient.kind() == AlgebraKind::H && d.n() == a.n() {
        return Ok(u_into_h(d.n()));
    }
    Err(AlgebraError::Parameter(format!("no standard action of {} on {}", domain.kind(), ambient.kind())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub relation: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub violations: Vec<RelationViolation>,
    pub pass: bool,
}

impl<S: Coefficient> Cocycle<S> {
    pub fn new(
        domain: Arc<HopfStructure<S>>,
        module: ModuleSpec<S>,
        action: BTreeMap<Sym, NCPoly<S>>,
        values: BTreeMap<Sym, NCPoly<S>>,
    ) -> Result<Self> {
        let d = domain.algebra().alphabet();
        let a = module.ambient.alphabet();
        for s in d.symbols() {
            let img = action
                .get(&s)
                .ok_or_else(|| AlgebraError::Parameter(format!("no action given for {}", s.token())))?;
            a.check(&img.alphabet())?;
        }
        for (s, v) in &values {
            if !d.contains(s) {
                return Err(AlgebraError::AlphabetMismatch { left: d.to_string(), right: s.token() });
            }
            a.check(&v.alphabet())?;
        }
        let values = values.into_iter().map(|(s, v)| (s, module.ambient.nf(&v))).collect();
        Ok(Cocycle { domain, module, action, values })
    }

    /// Cocycle with the standard action of `domain` on `ambient`.
    pub fn with_values(
        domain: Arc<HopfStructure<S>>,
        ambient: Arc<Algebra<S>>,
        values: BTreeMap<Sym, NCPoly<S>>,
    ) -> Result<Self> {
        let action = standard_action(domain.algebra(), &ambient)?;
        Self::new(domain, ModuleSpec::new(ambient), action, values)
    }

    pub fn zero(domain: Arc<HopfStructure<S>>, ambient: Arc<Algebra<S>>) -> Result<Self> {
        let a = ambient.alphabet();
        let values = domain.algebra().alphabet().symbols().into_iter().map(|s| (s, NCPoly::zero(a))).collect();
        Self::with_values(domain, ambient, values)
    }

    pub fn domain(&self) -> &Arc<HopfStructure<S>> {
        &self.domain
    }

    pub fn module(&self) -> &ModuleSpec<S> {
        &self.module
    }

    pub fn ambient(&self) -> &Arc<Algebra<S>> {
        &self.module.ambient
    }

    pub fn action(&self) -> &BTreeMap<Sym, NCPoly<S>> {
        &self.action
    }

    pub fn values(&self) -> &BTreeMap<Sym, NCPoly<S>> {
        &self.values
    }

    pub fn value(&self, s: Sym) -> Option<&NCPoly<S>> {
        self.values.get(&s)
    }

    /// Image of a domain element in the ambient algebra.
    pub fn act(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        let img = p.substitute(self.ambient().alphabet(), |s| {
            self.action.get(&s).cloned().ok_or_else(|| AlgebraError::AlphabetMismatch {
                left: self.domain.algebra().alphabet().to_string(),
                right: s.token(),
            })
        })?;
        Ok(self.ambient().nf(&img))
    }

    fn require(&self, s: Sym) -> Result<&NCPoly<S>> {
        self.values
            .get(&s)
            .ok_or_else(|| AlgebraError::Underdetermined(s.token()))
    }

    /// Leibniz expansion over a word: `c(s_0…s_m) = Σ_t ρ(s_0…s_{t−1}) c(s_t) ε(s_{t+1}…s_m)`.
    pub fn eval_word(&self, w: &[Sym]) -> Result<NCPoly<S>> {
        let amb = self.ambient();
        let a = amb.alphabet();
        let mut suffix = vec![S::one(); w.len() + 1];
        for t in (0..w.len()).rev() {
            suffix[t] = self.domain.counit_sym(w[t]) * suffix[t + 1].clone();
        }
        let mut out = NCPoly::zero(a);
        let mut prefix = NCPoly::one(a);
        for (t, &s) in w.iter().enumerate() {
            let tail = &suffix[t + 1];
            if !tail.is_zero() {
                let term = amb.mul(&prefix, self.require(s)?).scale(tail);
                out = &out + &term;
            }
            if t + 1 < w.len() {
                prefix = amb.mul(&prefix, &self.action[&s]);
                if prefix.is_zero() {
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        self.domain.algebra().alphabet().check(&p.alphabet())?;
        let mut out = NCPoly::zero(self.ambient().alphabet());
        for (w, c) in p.terms() {
            out = &out + &self.eval_word(w.syms())?.scale(c);
        }
        Ok(out)
    }

    fn n(&self) -> u8 {
        self.domain.algebra().alphabet().n()
    }

    fn unitary_families(&self) -> impl Iterator<Item = Family> + '_ {
        self.domain.algebra().alphabet().families().into_iter().filter(|f| !f.is_self_adjoint())
    }

    /// Fills values on starred generators from the unstarred ones:
    /// `c(u_ji*) = −Σ_k u_ki* c(u_kj)` and `c(z*) = −z* c(z)`.
    pub fn derive_adjoint_values(&self) -> Result<Self> {
        let mut out = self.clone();
        let amb = self.ambient().clone();
        for f in self.unitary_families() {
            if f.is_indexed() {
                let n = self.n();
                for i in 1..=n {
                    for j in 1..=n {
                        let mut acc = NCPoly::zero(amb.alphabet());
                        for k in 1..=n {
                            let star = &self.action[&Sym { family: f, i: k, j: i, star: true }];
                            let val = self.require(Sym { family: f, i: k, j, star: false })?;
                            acc = &acc - &amb.mul(star, val);
                        }
                        out.values.insert(Sym { family: f, i: j, j: i, star: true }, acc);
                    }
                }
            } else {
                let s = Sym::plain(f);
                let val = self.require(s)?;
                out.values.insert(s.starred(), -&amb.mul(&self.action[&s.starred()], val));
            }
        }
        Ok(out)
    }

    /// Recovers unstarred values from starred ones:
    /// `c(u_ij) = −Σ_k u_ik c(u_jk*)` and `c(z) = −z c(z*)`.
    pub fn derive_values_from_adjoints(&self) -> Result<Self> {
        let mut out = self.clone();
        let amb = self.ambient().clone();
        for f in self.unitary_families() {
            if f.is_indexed() {
                let n = self.n();
                for i in 1..=n {
                    for j in 1..=n {
                        let mut acc = NCPoly::zero(amb.alphabet());
                        for k in 1..=n {
                            let g = &self.action[&Sym { family: f, i, j: k, star: false }];
                            let val = self.require(Sym { family: f, i: j, j: k, star: true })?;
                            acc = &acc - &amb.mul(g, val);
                        }
                        out.values.insert(Sym { family: f, i, j, star: false }, acc);
                    }
                }
            } else {
                let s = Sym::plain(f);
                let val = self.require(s.starred())?;
                out.values.insert(s, -&amb.mul(&self.action[&s], val));
            }
        }
        Ok(out)
    }

    /// Evaluates the cocycle on every defining relation of the domain and on
    /// its adjoint; a well-defined cocycle gives 0 throughout.
    pub fn check_relations(&self) -> Result<RelationReport> {
        let mut violations = Vec::new();
        let mut checked = 0;
        let mut seen: Vec<NCPoly<S>> = Vec::new();
        for r in self.domain.algebra().relations() {
            for r in [r.clone(), r.adjoint()] {
                if seen.contains(&r) {
                    continue;
                }
                seen.push(r.clone());
                checked += 1;
                let v = self.eval(&r)?;
                if !v.is_zero() {
                    violations.push(RelationViolation { relation: r.pretty(), value: v.pretty() });
                }
            }
        }
        Ok(RelationReport { checked, pass: violations.is_empty(), violations })
    }

    /// Equality of two cocycles with the same domain and module, compared on
    /// every generator including starred ones.
    pub fn agrees_on_generators(&self, other: &Self) -> Result<bool> {
        for s in self.domain.algebra().alphabet().symbols() {
            if self.eval_word(&[s])? != other.eval_word(&[s])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `a ↦ a.ξ − ε(a)ξ`, tabulated on every generator.
pub fn inner_cocycle<S: Coefficient>(
    domain: Arc<HopfStructure<S>>,
    ambient: Arc<Algebra<S>>,
    xi: &NCPoly<S>,
) -> Result<Cocycle<S>> {
    let xi = ambient.nf(xi);
    let action = standard_action(domain.algebra(), &ambient)?;
    let values = domain
        .algebra()
        .alphabet()
        .symbols()
        .into_iter()
        .map(|s| {
            let v = &ambient.mul(&action[&s], &xi) - &xi.scale(&domain.counit_sym(s));
            (s, v)
        })
        .collect();
    Cocycle::new(domain, ModuleSpec::new(ambient), action, values)
}

/// The cocycle on the free product `domain` that restricts to `c1` and `c2`
/// on the two factors.
pub fn free_product_cocycle<S: Coefficient>(
    c1: &Cocycle<S>,
    c2: &Cocycle<S>,
    domain: Arc<HopfStructure<S>>,
) -> Result<Cocycle<S>> {
    let Algebra::FreeProduct(fp) = domain.algebra().as_ref() else {
        return Err(AlgebraError::Parameter("free_product_cocycle needs a free-product domain".into()));
    };
    let (fa, fb) = fp.factors();
    if c1.domain.algebra().alphabet() != fa.alphabet() || c2.domain.algebra().alphabet() != fb.alphabet() {
        return Err(AlgebraError::Parameter("cocycle domains do not match the free-product factors".into()));
    }
    if c1.ambient().alphabet() != c2.ambient().alphabet() {
        return Err(AlgebraError::AlphabetMismatch {
            left: c1.ambient().alphabet().to_string(),
            right: c2.ambient().alphabet().to_string(),
        });
    }
    let (c1, c2) = (c1.derive_adjoint_values()?, c2.derive_adjoint_values()?);
    for (c, f) in [(&c1, fa.alphabet()), (&c2, fb.alphabet())] {
        for s in f.symbols() {
            if domain.counit_sym(s) != c.domain.counit_sym(s) {
                return Err(AlgebraError::Parameter(format!("counits disagree on {}", s.token())));
            }
        }
    }
    let action = c1.action.iter().chain(&c2.action).map(|(s, p)| (*s, p.clone())).collect();
    let values = c1.values.iter().chain(&c2.values).map(|(s, p)| (*s, p.clone())).collect();
    Cocycle::new(domain, c1.module.clone(), action, values)
}

/// Pulls `c` back along a *-homomorphism `target → domain(c)` given on the
/// unstarred and starred generators of `target`.
pub fn restrict_along<S: Coefficient>(
    c: &Cocycle<S>,
    target: Arc<HopfStructure<S>>,
    embedding: &BTreeMap<Sym, NCPoly<S>>,
) -> Result<Cocycle<S>> {
    let dom = c.domain.algebra();
    let t = target.algebra().alphabet();
    let image = |p: &NCPoly<S>| -> Result<NCPoly<S>> {
        let q = p.substitute(dom.alphabet(), |s| {
            embedding.get(&s).cloned().ok_or_else(|| AlgebraError::Closure(format!("{} has no image", s.token())))
        })?;
        Ok(dom.nf(&q))
    };
    for s in t.symbols() {
        let img = image(&NCPoly::sym(t, s))?;
        let adj = image(&NCPoly::sym(t, s.adjoint()))?;
        if dom.nf(&img.adjoint()) != adj {
            return Err(AlgebraError::Closure(format!("image of {} is not compatible with the involution", s.token())));
        }
        if c.domain.counit(&img) != target.counit_sym(s) {
            return Err(AlgebraError::Closure(format!("image of {} does not preserve the counit", s.token())));
        }
    }
    for r in target.algebra().relations() {
        if !image(r)?.is_zero() {
            return Err(AlgebraError::Closure(format!("relation {} does not map to zero", r.pretty())));
        }
    }
    let mut action = BTreeMap::new();
    let mut values = BTreeMap::new();
    for s in t.symbols() {
        let img = image(&NCPoly::sym(t, s))?;
        action.insert(s, c.act(&img)?);
        values.insert(s, c.eval(&img)?);
    }
    Cocycle::new(target, c.module.clone(), action, values)
}

/// A cocycle seen on the subalgebra generated by `gens`.
#[derive(Clone, Debug)]
pub struct Restriction<S> {
    pub cocycle: Cocycle<S>,
    pub gens: Vec<NCPoly<S>>,
    pub values: Vec<NCPoly<S>>,
}

impl<S: Coefficient> Restriction<S> {
    /// Value on the product `gens[w_0]·gens[w_1]⋯`.
    pub fn eval_word(&self, w: &[usize]) -> Result<NCPoly<S>> {
        let dom = self.cocycle.domain.algebra();
        let mut p = NCPoly::one(dom.alphabet());
        for &i in w {
            let g = self
                .gens
                .get(i)
                .ok_or_else(|| AlgebraError::Parameter(format!("generator index {i} out of range")))?;
            p = dom.mul(&p, g);
        }
        self.cocycle.eval(&p)
    }
}

fn span_contains<S: Coefficient>(vectors: &[NCPoly<S>], target: &NCPoly<S>) -> bool {
    // unknowns x_g with Σ_g x_g g = target, one equation per word
    let mut rows: BTreeMap<Word, SparseRow<S>> = BTreeMap::new();
    for (g, p) in vectors.iter().enumerate() {
        for (w, c) in p.terms() {
            rows.entry(w.clone()).or_default().insert(g, c.clone());
        }
    }
    for (w, _) in target.terms() {
        rows.entry(w.clone()).or_default();
    }
    let mut sys = SparseSystem::new(vectors.len());
    for (w, row) in rows {
        sys.push_row(row, target.coeff(&w));
    }
    sys.solve().is_some()
}

/// Restricts `c` to the subalgebra generated by `gens`, which must be closed
/// under the involution: each `g*` must lie in the span of `gens`.
pub fn restrict<S: Coefficient>(c: &Cocycle<S>, gens: &[NCPoly<S>]) -> Result<Restriction<S>> {
    let dom = c.domain.algebra();
    let gens: Vec<NCPoly<S>> = gens.iter().map(|g| dom.nf(g)).collect();
    for g in &gens {
        let adj = dom.nf(&g.adjoint());
        if !span_contains(&gens, &adj) {
            return Err(AlgebraError::Closure(format!("adjoint of {} is not in the span of the generators", g.pretty())));
        }
    }
    let values = gens.iter().map(|g| c.eval(g)).collect::<Result<Vec<_>>>()?;
    Ok(Restriction { cocycle: c.clone(), gens, values })
}

/// Outcome of a truncated innerness search.
#[derive(Clone, Debug)]
pub struct InnerSearch<S> {
    pub witness: Option<NCPoly<S>>,
    pub degree_bound: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub caveat: Option<&'static str>,
}

/// Looks for `ξ` of degree ≤ `degree_bound` with `g.ξ − ε(g)ξ = c(g)` for
/// every `g` in `gens`. A returned witness has been re-verified exactly.
pub fn solve_inner<S: Coefficient>(c: &Cocycle<S>, gens: &[Sym], degree_bound: usize) -> Result<InnerSearch<S>> {
    let amb = c.ambient();
    let max_gen = gens.iter().map(|g| c.action[g].degree()).max().unwrap_or(0);
    let certified = amb.certified_degree();
    if degree_bound + max_gen > certified {
        return Err(AlgebraError::Uncertified { needed: degree_bound + max_gen, certified });
    }
    let basis = amb.normal_words(degree_bound);
    let a = amb.alphabet();
    let mut rows: BTreeMap<(usize, Word), SparseRow<S>> = BTreeMap::new();
    let mut rhs: BTreeMap<(usize, Word), S> = BTreeMap::new();
    for (gi, g) in gens.iter().enumerate() {
        let eps = c.domain.counit_sym(*g);
        for (col, w) in basis.iter().enumerate() {
            let m = NCPoly::monomial(a, w.clone(), S::one());
            let image = &amb.mul(&c.action[g], &m) - &m.scale(&eps);
            for (x, coeff) in image.terms() {
                rows.entry((gi, x.clone())).or_default().insert(col, coeff.clone());
            }
        }
        for (x, coeff) in c.require(*g)?.terms() {
            rhs.insert((gi, x.clone()), coeff.clone());
            rows.entry((gi, x.clone())).or_default();
        }
    }
    let mut sys = SparseSystem::new(basis.len());
    let equations = rows.len();
    for (key, row) in rows {
        let b = rhs.remove(&key).unwrap_or_else(S::zero);
        sys.push_row(row, b);
    }
    let witness = match sys.solve() {
        None => None,
        Some(x) => {
            let xi = NCPoly::from_terms(a, basis.iter().cloned().zip(x))?;
            for g in gens {
                let lhs = &amb.mul(&c.action[g], &xi) - &xi.scale(&c.domain.counit_sym(*g));
                if &lhs != c.require(*g)? {
                    return Err(AlgebraError::Parameter(format!("witness failed re-verification on {}", g.token())));
                }
            }
            Some(xi)
        }
    };
    let caveat = witness.is_none().then_some(TRUNCATION_CAVEAT);
    Ok(InnerSearch { witness, degree_bound, unknowns: basis.len(), equations, caveat })
}

/// Seeded random values of degree ≤ `max_deg` on the listed generators.
pub fn random_values<S: Coefficient>(
    ambient: &Algebra<S>,
    gens: &[Sym],
    max_deg: usize,
    rng: &mut SeededRng,
) -> BTreeMap<Sym, NCPoly<S>> {
    gens.iter().map(|&g| (g, ambient.nf(&sample::poly(ambient.alphabet(), max_deg, rng)))).collect()
}

/// Unstarred matrix generators `x_ij` of a domain, plus `z` where present.
pub fn fundamental_generators<S: Coefficient>(domain: &Algebra<S>) -> Vec<Sym> {
    let set: BTreeSet<Sym> = domain.alphabet().symbols().into_iter().filter(|s| !s.star).collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{certified, DEFAULT_COMPLETION_BOUND};
    use crate::scalar::GaussRational as Q;

    fn alg(kind: AlgebraKind, n: usize) -> Arc<Algebra<Q>> {
        certified(kind, n, DEFAULT_COMPLETION_BOUND).unwrap()
    }

    fn hopf(a: &Arc<Algebra<Q>>) -> Arc<HopfStructure<Q>> {
        Arc::new(HopfStructure::standard(a.clone()).unwrap())
    }

    fn q(n: i64) -> Q {
        Q::from_ints(n, 0)
    }

    fn mono(a: &Algebra<Q>, s: &[Sym]) -> NCPoly<Q> {
        NCPoly::monomial(a.alphabet(), Word::from_syms(s), q(1))
    }

    /// c₁∗0 on H_n with c₁(z) = ξ.
    fn c_xi_star_zero(h: &Arc<Algebra<Q>>, xi: &NCPoly<Q>) -> Cocycle<Q> {
        let hh = hopf(h);
        let mut values = BTreeMap::new();
        values.insert(Sym::z(), xi.clone());
        for s in h.alphabet().symbols().into_iter().filter(|s| s.family == Family::V) {
            values.insert(s, NCPoly::zero(h.alphabet()));
        }
        Cocycle::with_values(hh, h.clone(), values).unwrap().derive_adjoint_values().unwrap()
    }

    #[test]
    fn eval_examples() {
        let h = alg(AlgebraKind::H, 2);
        let xi = &mono(&h, &[Sym::z()]) + &mono(&h, &[Sym::v(1, 2)]);
        let c = c_xi_star_zero(&h, &xi);
        assert!(c.eval(&mono(&h, &[Sym::z(), Sym::v(1, 2)])).unwrap().is_zero());
        assert_eq!(c.eval(&mono(&h, &[Sym::z(), Sym::v(1, 1)])).unwrap(), xi);
        assert!(c.eval(&NCPoly::one(h.alphabet())).unwrap().is_zero());
        assert!(c.check_relations().unwrap().pass);
    }

    #[test]
    fn underdetermined_generator() {
        let o = alg(AlgebraKind::OPlus, 2);
        let c = Cocycle::with_values(hopf(&o), o.clone(), BTreeMap::new()).unwrap();
        assert!(matches!(c.eval(&mono(&o, &[Sym::v(1, 1)])), Err(AlgebraError::Underdetermined(_))));
    }

    #[test]
    fn inner_formula_matches_leibniz() {
        let h = alg(AlgebraKind::H, 2);
        let mut rng = sample::rng(17);
        let xi = sample::poly::<Q>(h.alphabet(), 2, &mut rng);
        let c = inner_cocycle(hopf(&h), h.clone(), &xi).unwrap();
        assert!(c.check_relations().unwrap().pass);
        let xi = h.nf(&xi);
        for _ in 0..50 {
            let p = sample::poly::<Q>(h.alphabet(), 3, &mut rng);
            let closed = &h.mul(&p, &xi) - &xi.scale(&c.domain().counit(&p));
            assert_eq!(c.eval(&p).unwrap(), closed);
        }
    }

    #[test]
    fn inner_examples() {
        let u = alg(AlgebraKind::UPlus, 2);
        let c = inner_cocycle(hopf(&u), u.clone(), &NCPoly::one(u.alphabet())).unwrap();
        assert_eq!(c.value(Sym::u(1, 2)).unwrap(), &mono(&u, &[Sym::u(1, 2)]));
        let s1 = alg(AlgebraKind::S1, 0);
        let c = inner_cocycle(hopf(&s1), s1.clone(), &mono(&s1, &[Sym::z()])).unwrap();
        assert_eq!(c.value(Sym::z()).unwrap(), &(&mono(&s1, &[Sym::z(), Sym::z()]) - &mono(&s1, &[Sym::z()])));
        let c = inner_cocycle(hopf(&s1), s1.clone(), &NCPoly::zero(s1.alphabet())).unwrap();
        assert!(c.values().values().all(NCPoly::is_zero));
    }

    #[test]
    fn leibniz_on_samples() {
        let h = alg(AlgebraKind::H, 2);
        let mut rng = sample::rng(23);
        let xi = sample::poly::<Q>(h.alphabet(), 2, &mut rng);
        let constructions = [c_xi_star_zero(&h, &xi), inner_cocycle(hopf(&h), h.clone(), &xi).unwrap()];
        for c in &constructions {
            for _ in 0..40 {
                let p = sample::poly::<Q>(h.alphabet(), 3, &mut rng);
                let r = sample::poly::<Q>(h.alphabet(), 3, &mut rng);
                let lhs = c.eval(&(&p * &r)).unwrap();
                let rhs = &h.mul(&p, &c.eval(&r).unwrap()) + &c.eval(&p).unwrap().scale(&c.domain().counit(&r));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn adjoint_values_and_back() {
        let u = alg(AlgebraKind::UPlus, 2);
        let xi = &mono(&u, &[Sym::u(1, 2)]) + &NCPoly::one(u.alphabet());
        let values = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| (i, j)))
            .map(|(i, j)| (Sym::u(i, j), if i == j { xi.clone() } else { NCPoly::zero(u.alphabet()) }))
            .collect();
        let c = Cocycle::with_values(hopf(&u), u.clone(), values).unwrap().derive_adjoint_values().unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                let expect = -&u.mul(&mono(&u, &[Sym::u(j, i).starred()]), &xi);
                assert_eq!(c.value(Sym::u(j, i).starred()).unwrap(), &expect);
            }
        }
        assert!(c.check_relations().unwrap().pass);
        assert_eq!(c.derive_adjoint_values().unwrap().values(), c.values());
    }

    #[test]
    fn bad_table_fails_relations() {
        let o = alg(AlgebraKind::OPlus, 2);
        let values = o
            .alphabet()
            .symbols()
            .into_iter()
            .map(|s| (s, if s == Sym::v(1, 1) { NCPoly::one(o.alphabet()) } else { NCPoly::zero(o.alphabet()) }))
            .collect();
        let c = Cocycle::with_values(hopf(&o), o.clone(), values).unwrap();
        let report = c.check_relations().unwrap();
        assert!(!report.pass);
        assert!(Cocycle::zero(hopf(&o), o.clone()).unwrap().check_relations().unwrap().pass);
    }

    #[test]
    fn free_product_restricts_to_factors() {
        let h = alg(AlgebraKind::H, 2);
        let s1 = alg(AlgebraKind::S1, 0);
        let o = alg(AlgebraKind::OPlus, 2);
        let xi = &mono(&h, &[Sym::z(), Sym::v(2, 1)]) - &NCPoly::one(h.alphabet());
        let mut v1 = BTreeMap::new();
        v1.insert(Sym::z(), xi.clone());
        let c1 = Cocycle::new(
            hopf(&s1),
            ModuleSpec::new(h.clone()),
            standard_action_into(&s1, &h),
            v1,
        )
        .unwrap();
        let c2 = inner_cocycle_into(&o, &h, &xi);
        let c = free_product_cocycle(&c1, &c2, hopf(&h)).unwrap();
        assert!(c.check_relations().unwrap().pass);
        let mut rng = sample::rng(31);
        for _ in 0..20 {
            let p = sample::poly::<Q>(o.alphabet(), 3, &mut rng);
            assert_eq!(c.eval(&p.lift(h.alphabet()).unwrap()).unwrap(), c2.eval(&p).unwrap());
            let p = sample::poly::<Q>(s1.alphabet(), 3, &mut rng);
            assert_eq!(c.eval(&p.lift(h.alphabet()).unwrap()).unwrap(), c1.derive_adjoint_values().unwrap().eval(&p).unwrap());
        }
        // u_ij ↦ z v_ij: (c₁∗0)(u_ij) = δ_ij ξ
        let zero = Cocycle::new(hopf(&o), ModuleSpec::new(h.clone()), standard_action_into(&o, &h), zero_values(&o, &h)).unwrap();
        let c = free_product_cocycle(&c1, &zero, hopf(&h)).unwrap();
        let u = alg(AlgebraKind::UPlus, 2);
        let r = restrict_along(&c, hopf(&u), &u_into_h(2)).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                let expect = if i == j { xi.clone() } else { NCPoly::zero(h.alphabet()) };
                assert_eq!(r.value(Sym::u(i, j)).unwrap(), &expect);
            }
        }
        assert!(r.check_relations().unwrap().pass);
    }

    fn standard_action_into(d: &Algebra<Q>, a: &Algebra<Q>) -> BTreeMap<Sym, NCPoly<Q>> {
        d.alphabet().symbols().into_iter().map(|s| (s, NCPoly::sym(a.alphabet(), s))).collect()
    }

    fn zero_values(d: &Algebra<Q>, a: &Algebra<Q>) -> BTreeMap<Sym, NCPoly<Q>> {
        d.alphabet().symbols().into_iter().map(|s| (s, NCPoly::zero(a.alphabet()))).collect()
    }

    fn inner_cocycle_into(d: &Arc<Algebra<Q>>, a: &Arc<Algebra<Q>>, xi: &NCPoly<Q>) -> Cocycle<Q> {
        let hd = hopf(d);
        let values = d
            .alphabet()
            .symbols()
            .into_iter()
            .map(|s| (s, &a.mul(&NCPoly::sym(a.alphabet(), s), xi) - &xi.scale(&hd.counit_sym(s))))
            .collect();
        Cocycle::new(hd, ModuleSpec::new(a.clone()), standard_action_into(d, a), values).unwrap()
    }

    #[test]
    fn restriction_to_generated_subalgebras() {
        let h = alg(AlgebraKind::H, 2);
        let c = c_xi_star_zero(&h, &mono(&h, &[Sym::z(), Sym::z()]));
        // A_n generators v_ij v_kl: the restriction vanishes
        let mut gens = Vec::new();
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    for l in 1..=2 {
                        gens.push(mono(&h, &[Sym::v(i, j), Sym::v(k, l)]));
                    }
                }
            }
        }
        let r = restrict(&c, &gens).unwrap();
        assert!(r.values.iter().all(NCPoly::is_zero));
        assert!(r.eval_word(&[0, 3, 5]).unwrap().is_zero());
        // z v_ij alone is not star-closed
        let only_z = vec![mono(&h, &[Sym::z(), Sym::v(1, 1)])];
        assert!(matches!(restrict(&c, &only_z), Err(AlgebraError::Closure(_))));
        let zero = Cocycle::zero(hopf(&h), h.clone()).unwrap();
        let both = vec![mono(&h, &[Sym::z(), Sym::v(1, 1)]), mono(&h, &[Sym::v(1, 1), Sym::z().starred()])];
        assert!(restrict(&zero, &both).unwrap().values.iter().all(NCPoly::is_zero));
    }

    #[test]
    fn solve_inner_recovers_witness() {
        let h = alg(AlgebraKind::H, 2);
        let mut rng = sample::rng(41);
        let xi0 = sample::poly::<Q>(h.alphabet(), 2, &mut rng);
        let c = inner_cocycle(hopf(&h), h.clone(), &xi0).unwrap();
        let gens = fundamental_generators(h.as_ref());
        let found = solve_inner(&c, &gens, 4).unwrap();
        let xi = found.witness.expect("inner cocycle has a witness");
        let c2 = inner_cocycle(hopf(&h), h.clone(), &xi).unwrap();
        assert!(c2.agrees_on_generators(&c).unwrap());
        assert!(found.caveat.is_none());
    }

    #[test]
    fn solve_inner_negative_control() {
        let s1 = alg(AlgebraKind::S1, 0);
        let mut values = BTreeMap::new();
        values.insert(Sym::z(), NCPoly::one(s1.alphabet()));
        let c = Cocycle::with_values(hopf(&s1), s1.clone(), values).unwrap().derive_adjoint_values().unwrap();
        assert!(c.check_relations().unwrap().pass);
        let found = solve_inner(&c, &[Sym::z()], 5).unwrap();
        assert!(found.witness.is_none());
        assert_eq!(found.caveat, Some(TRUNCATION_CAVEAT));
        assert!(matches!(solve_inner(&c, &[Sym::z()], 8), Err(AlgebraError::Uncertified { .. })));
    }

    #[test]
    fn restricted_z_cocycle_is_not_inner_in_truncation() {
        // c₁ = inner(z) on the circle, extended by 0 and restricted to U₂⁺:
        // c(u_ij) = δ_ij(z² − z). ξ = z would give c(u_12) = z v_12 z ≠ 0.
        let h = alg(AlgebraKind::H, 2);
        let c = c_xi_star_zero(&h, &(&mono(&h, &[Sym::z(), Sym::z()]) - &mono(&h, &[Sym::z()])));
        let u = alg(AlgebraKind::UPlus, 2);
        let r = restrict_along(&c, hopf(&u), &u_into_h(2)).unwrap();
        let gens: Vec<Sym> = u.alphabet().symbols();
        let found = solve_inner(&r, &gens, 3).unwrap();
        assert!(found.witness.is_none());
    }

    #[test]
    fn determination_round_trip() {
        let u = alg(AlgebraKind::UPlus, 2);
        let h = alg(AlgebraKind::H, 2);
        let mut rng = sample::rng(7);
        let gens = fundamental_generators(u.as_ref());
        let values = random_values(h.as_ref(), &gens, 2, &mut rng);
        let c = Cocycle::with_values(hopf(&u), h.clone(), values.clone()).unwrap().derive_adjoint_values().unwrap();
        let starred_only = c.values().iter().filter(|(s, _)| s.star).map(|(s, p)| (*s, p.clone())).collect();
        let back = Cocycle::with_values(hopf(&u), h.clone(), starred_only).unwrap().derive_values_from_adjoints().unwrap();
        for (s, p) in &values {
            assert_eq!(back.value(*s).unwrap(), &h.nf(p));
        }
    }
}
