//! The type-A Hecke algebra, Jones-Ocneanu Markov trace, and HOMFLYPT
//! polynomials of braid closures.
//!
//! This is the decategorified oracle used to validate the `t = -1`
//! specialization of the homology engine. It deliberately shares nothing
//! with the state recursion beyond the rational-function arithmetic: torus
//! HOMFLYPT values are computed by direct trace evaluation in the basis
//! `{T_sigma}`, not by any closed formula.
//!
//! Values live in the variables (a, q), mapped onto the first two monomial
//! slots; the third slot is unused. The trace constants are the standard
//! ones pinned by the Markov moves:
//!
//!   z  = chi(T_{s_i})      = (q - q^-1) / (1 - a^2)
//!   mu = closure scale     = (1 - a^2) / (a (q - q^-1))
//!
//! so that `P = a^writhe mu^{n-1} chi(beta)` satisfies `P(unknot) = 1` and
//! the skein relation `a^-1 P(L+) - a P(L-) = (q - q^-1) P(L0)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, VAR_A, VAR_Q};
use crate::ratfunc::RatFunc;
use crate::symmetric::Permutation;

/// An element of the Hecke algebra H_n in the standard basis: a finite map
/// from permutations to coefficients in Z[q, q^-1].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    strands: usize,
    terms: BTreeMap<Permutation, LaurentPoly>,
}

fn q_minus_q_inv() -> LaurentPoly {
    &LaurentPoly::monomial(Monomial::var(VAR_Q, 1), BigInt::one())
        - &LaurentPoly::monomial(Monomial::var(VAR_Q, -1), BigInt::one())
}

fn adjacent_transposition(n: usize, i: usize) -> Permutation {
    let mut images: Vec<u8> = (1..=n as u8).collect();
    images.swap(i - 1, i);
    Permutation::from_one_line(images).expect("transposition is a bijection")
}

impl HeckeElement {
    /// The identity `T_e` of H_n.
    pub fn identity(strands: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Permutation::identity(strands), LaurentPoly::one());
        HeckeElement { strands, terms }
    }

    /// The generator `T_{s_i}`.
    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        HeckeElement::identity(strands).mul_gen(i)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn basis(strands: usize, sigma: Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(sigma, LaurentPoly::one());
        HeckeElement { strands, terms }
    }

    fn from_terms(strands: usize, iter: impl IntoIterator<Item = (Permutation, LaurentPoly)>) -> Self {
        let mut terms: BTreeMap<Permutation, LaurentPoly> = BTreeMap::new();
        for (p, c) in iter {
            let entry = terms.entry(p).or_insert_with(LaurentPoly::zero);
            *entry = &*entry + &c;
        }
        terms.retain(|_, c| !c.is_zero());
        HeckeElement { strands, terms }
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        if self.strands != other.strands {
            return Err(Error::SizeMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(HeckeElement::from_terms(
            self.strands,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(p, c)| (p.clone(), c.clone())),
        ))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        HeckeElement::from_terms(
            self.strands,
            self.terms.iter().map(|(p, k)| (p.clone(), k * c)),
        )
    }

    /// Right multiplication by `T_{s_i}` in the standard basis: for a basis
    /// word `T_sigma`, if the length increases the product is `T_{sigma s_i}`,
    /// otherwise the quadratic relation contributes
    /// `(q - q^-1) T_sigma + T_{sigma s_i}`.
    pub fn mul_gen(&self, i: usize) -> Result<HeckeElement> {
        if i < 1 || i + 1 > self.strands {
            return Err(Error::IndexOutOfRange {
                index: i,
                strands: self.strands,
            });
        }
        let s_i = adjacent_transposition(self.strands, i);
        let qdiff = q_minus_q_inv();
        let mut out: Vec<(Permutation, LaurentPoly)> = Vec::new();
        for (sigma, c) in &self.terms {
            let longer = sigma.apply(i) < sigma.apply(i + 1);
            let moved = sigma.compose(&s_i)?;
            if longer {
                out.push((moved, c.clone()));
            } else {
                out.push((sigma.clone(), c * &qdiff));
                out.push((moved, c.clone()));
            }
        }
        Ok(HeckeElement::from_terms(self.strands, out))
    }

    /// Right multiplication by `T_{s_i}^{-1} = T_{s_i} - (q - q^-1)`.
    pub fn mul_gen_inv(&self, i: usize) -> Result<HeckeElement> {
        let positive = self.mul_gen(i)?;
        let correction = self.scale(&(-q_minus_q_inv()));
        positive.add(&correction)
    }

    /// Full product, expanding the right factor along reduced words.
    pub fn mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        if self.strands != other.strands {
            return Err(Error::SizeMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut out = HeckeElement::from_terms(self.strands, []);
        for (sigma, c) in &other.terms {
            let mut prod = self.scale(c);
            for i in reduced_word(sigma) {
                prod = prod.mul_gen(i)?;
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }
}

/// A reduced word for sigma: generator indices whose product (applied left
/// to right by right multiplication) rebuilds sigma from the identity.
fn reduced_word(sigma: &Permutation) -> Vec<usize> {
    // peel descents from the right: each swap shortens by one
    let mut current = sigma.clone();
    let mut suffix: Vec<usize> = Vec::new();
    loop {
        let n = current.size();
        let descent = (1..n).find(|&i| current.apply(i) > current.apply(i + 1));
        match descent {
            None => break,
            Some(i) => {
                current = current
                    .compose(&adjacent_transposition(n, i))
                    .expect("same size");
                suffix.push(i);
            }
        }
    }
    suffix.reverse();
    suffix
}

/// `z = (q - q^-1) / (1 - a^2)`, the trace of a single positive crossing.
pub fn trace_z() -> RatFunc {
    RatFunc::new(q_minus_q_inv(), [Monomial::var(VAR_A, 2)]).expect("nonzero factor")
}

/// `mu = (1 - a^2) / (a (q - q^-1))`, the per-strand closure normalization.
pub fn trace_mu() -> RatFunc {
    // 1/(q - q^-1) = -q/(1 - q^2), so mu = -a^-1 q (1 - a^2) / (1 - q^2)
    let num = &LaurentPoly::monomial(Monomial::new(-1, 1, 0), BigInt::from(-1))
        + &LaurentPoly::monomial(Monomial::new(1, 1, 0), BigInt::one());
    RatFunc::new(num, [Monomial::var(VAR_Q, 2)]).expect("nonzero factor")
}

/// The Jones-Ocneanu trace, linear over the basis. Basis values are peeled
/// one strand at a time: a basis word with `sigma(n) = n` restricts to
/// H_{n-1}; otherwise `T_sigma = T_{sigma'} T_{s_{n-1}} (T_{s_{n-2}} .. T_{s_j})`
/// along the canonical factorization, and the Markov property converts the
/// middle generator into a factor of `z`.
pub fn jones_trace(x: &HeckeElement) -> Result<RatFunc> {
    let mut memo: BTreeMap<Permutation, RatFunc> = BTreeMap::new();
    trace_element(x, &mut memo)
}

fn trace_element(x: &HeckeElement, memo: &mut BTreeMap<Permutation, RatFunc>) -> Result<RatFunc> {
    let mut out = RatFunc::zero();
    for (sigma, c) in x.terms() {
        let t = trace_basis(sigma, memo)?;
        out = out.add(&t.mul_poly(c));
    }
    Ok(out)
}

fn trace_basis(
    sigma: &Permutation,
    memo: &mut BTreeMap<Permutation, RatFunc>,
) -> Result<RatFunc> {
    let n = sigma.size();
    if n <= 1 {
        return Ok(RatFunc::one());
    }
    if let Some(hit) = memo.get(sigma) {
        return Ok(hit.clone());
    }
    let value = if sigma.apply(n) == n {
        // restriction to the first n-1 strands
        let restricted = sigma.partial_trace()?;
        trace_basis(&restricted, memo)?
    } else {
        // j is the position mapped to n; deleting that entry gives
        // sigma' in S_{n-1} with T_sigma = T_{sigma'} T_{s_{n-1}} .. T_{s_j}
        let j = sigma.inverse().apply(n);
        let mut images: Vec<u8> = Vec::with_capacity(n - 1);
        for i in 1..=n {
            if i != j {
                images.push(sigma.apply(i) as u8);
            }
        }
        let sigma_prime = Permutation::from_one_line(images)?;
        let mut rest = HeckeElement::basis(n - 1, sigma_prime);
        for i in (j..=n.saturating_sub(2)).rev() {
            rest = rest.mul_gen(i)?;
        }
        trace_z().mul(&trace_element(&rest, memo)?)
    };
    memo.insert(sigma.clone(), value.clone());
    Ok(value)
}

/// The closure value `a^writhe mu^{n-1} chi(beta)` as a rational function,
/// with no polynomiality requirement (multi-component closures genuinely
/// retain a power of `q - q^-1` in the denominator).
pub fn closure_value(word: &[i32], strands: usize) -> Result<RatFunc> {
    if strands == 0 {
        return Err(Error::InvalidState(
            alloc::string::String::from("a closure needs at least one strand"),
        ));
    }
    let mut x = HeckeElement::identity(strands);
    let mut writhe: i32 = 0;
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g > 0 {
            x = x.mul_gen(i)?;
            writhe += 1;
        } else if g < 0 {
            x = x.mul_gen_inv(i)?;
            writhe -= 1;
        } else {
            return Err(Error::Parse(alloc::string::String::from(
                "braid letters are nonzero signed generator indices",
            )));
        }
    }
    let mut value = jones_trace(&x)?.mul(&RatFunc::from_monomial(Monomial::var(VAR_A, writhe)));
    let mu = trace_mu();
    for _ in 1..strands {
        value = value.mul(&mu);
    }
    Ok(value)
}

/// Number of components of the braid closure: cycles of the underlying
/// permutation.
pub fn closure_components(word: &[i32], strands: usize) -> Result<usize> {
    let mut perm = Permutation::identity(strands);
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i < 1 || i + 1 > strands {
            return Err(Error::IndexOutOfRange { index: i, strands });
        }
        perm = perm.compose(&adjacent_transposition(strands, i))?;
    }
    let mut seen = alloc::vec![false; strands];
    let mut cycles = 0;
    for start in 1..=strands {
        if seen[start - 1] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i - 1] {
            seen[i - 1] = true;
            i = perm.apply(i);
        }
    }
    Ok(cycles)
}

/// The reduced HOMFLYPT polynomial of a braid closure. For knot closures the
/// value must simplify to a Laurent polynomial; failure to clear the
/// denominators is a tripwire for wrong trace constants.
pub fn homfly_braid_closure(word: &[i32], strands: usize) -> Result<RatFunc> {
    let value = closure_value(word, strands)?;
    if closure_components(word, strands)? == 1 && !value.is_polynomial() {
        return Err(Error::NonPolynomialResult);
    }
    Ok(value)
}

/// Parse a braid word from comma-separated signed generator indices:
/// "1,1,1" is three positive crossings of the first pair, "-2" a negative
/// crossing of the second.
pub fn parse_braid_word(text: &str) -> Result<Vec<i32>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let g: i32 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("invalid braid letter '{part}'")))?;
            if g == 0 {
                return Err(Error::Parse(alloc::string::String::from(
                    "braid letters are nonzero signed generator indices",
                )));
            }
            Ok(g)
        })
        .collect()
}

/// The braid word `(s_1 s_2 .. s_{m-1})^n` on `m` strands whose closure is
/// the torus link T(m, n).
pub fn torus_braid_word(m: usize, n: usize) -> Vec<i32> {
    let mut word = Vec::with_capacity((m.saturating_sub(1)) * n);
    for _ in 0..n {
        for i in 1..m {
            word.push(i as i32);
        }
    }
    word
}

/// HOMFLYPT polynomial of the torus link T(m, n) by direct trace.
pub fn homfly_torus(m: usize, n: usize) -> Result<RatFunc> {
    homfly_braid_closure(&torus_braid_word(m, n), m)
}
