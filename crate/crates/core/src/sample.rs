//! Seeded random elements for property checks.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncpoly::{Alphabet, NCPoly, Word};
use crate::scalar::Coefficient;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero coefficient with real part in −3..=3 and imaginary part in
/// −1..=1 (real fields only get the real part).
pub fn coefficient<S: Coefficient>(rng: &mut SeededRng) -> S {
    loop {
        let re: i64 = rng.gen_range(-3..=3);
        let im: i64 = rng.gen_range(-1..=1);
        let c = S::from_parts(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
            .unwrap_or_else(|| S::from_i64(re));
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn word(alphabet: Alphabet, max_len: usize, rng: &mut SeededRng) -> Word {
    let letters = alphabet.symbols();
    let len = rng.gen_range(0..=max_len);
    let mut w = Word::empty();
    for _ in 0..len {
        w.push(letters[rng.gen_range(0..letters.len())]);
    }
    w
}

/// A nonzero element of the free algebra with 1 to 5 terms, each a word of
/// length ≤ `max_deg`.
pub fn poly<S: Coefficient>(alphabet: Alphabet, max_deg: usize, rng: &mut SeededRng) -> NCPoly<S> {
    loop {
        let mut p = NCPoly::zero(alphabet);
        for _ in 0..rng.gen_range(1..=5) {
            p.add_term(word(alphabet, max_deg, rng), coefficient(rng));
        }
        if !p.is_zero() {
            return p;
        }
    }
}
