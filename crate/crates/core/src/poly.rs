//! Sparse Laurent polynomials in three formal variables with arbitrary
//! precision integer coefficients.
//!
//! The three exponent slots are interpreted as (A, Q, T) by the homology
//! modules and as (a, q, unused) by the Hecke oracle. Monomials are totally
//! ordered lexicographically on their exponent triple; a polynomial stores
//! its terms sorted in that order with no zero coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent slot for the Hochschild variable A (the oracle's `a`).
pub const VAR_A: usize = 0;
/// Exponent slot for the quantum variable Q (the oracle's `q`).
pub const VAR_Q: usize = 1;
/// Exponent slot for the y-degree variable T.
pub const VAR_T: usize = 2;

const VAR_NAMES: [&str; 3] = ["A", "Q", "T"];

/// A Laurent monomial `A^e0 Q^e1 T^e2`; exponents may be negative.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub [i32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: i32, q: i32, t: i32) -> Self {
        Monomial([a, q, t])
    }

    /// The single variable `var` raised to `exp`.
    pub fn var(var: usize, exp: i32) -> Self {
        let mut e = [0i32; 3];
        e[var] = exp;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn inverse(&self) -> Self {
        Monomial([-self.0[0], -self.0[1], -self.0[2]])
    }

    /// Lexicographic sign of the exponent vector: sign of the first nonzero
    /// entry, or 0 for the unit monomial.
    pub fn lex_sign(&self) -> i32 {
        for &e in &self.0 {
            match e.cmp(&0) {
                Ordering::Greater => return 1,
                Ordering::Less => return -1,
                Ordering::Equal => {}
            }
        }
        0
    }

    /// Exponent-wise exchange of the Q and T slots.
    pub fn swap_qt(&self) -> Self {
        Monomial([self.0[0], self.0[2], self.0[1]])
    }

    /// Substitute `var := replacement` on the exponent level: the `var`
    /// exponent is redistributed onto the replacement monomial's exponents.
    pub fn subst(&self, var: usize, replacement: &Monomial) -> Self {
        let k = self.0[var];
        let mut e = self.0;
        e[var] = 0;
        for i in 0..3 {
            e[i] += k * replacement.0[i];
        }
        Monomial(e)
    }

    fn checked_sub(&self, other: &Monomial) -> Option<Monomial> {
        // Componentwise difference, used as monoid divisibility after shifting
        // exponents into the nonnegative range.
        let mut e = [0i32; 3];
        for i in 0..3 {
            if self.0[i] < other.0[i] {
                return None;
            }
            e[i] = self.0[i] - other.0[i];
        }
        Some(Monomial(e))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[i], e)?;
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial: terms sorted by monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Monomial::ONE, BigInt::one())
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(Monomial::ONE, BigInt::from(c))
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// The polynomial `1 - x^d`.
    pub fn one_minus(d: Monomial) -> Self {
        LaurentPoly::one() + LaurentPoly::monomial(d, BigInt::from(-1))
    }

    /// Build from arbitrary (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in iter {
            let entry = acc.entry(m).or_insert_with(BigInt::zero);
            *entry += c;
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    /// The lexicographically largest term.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        match self.terms.binary_search_by(|(t, _)| t.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Componentwise minimum of all exponent vectors (zero for the zero poly).
    fn min_exponents(&self) -> Monomial {
        let mut min = [i32::MAX; 3];
        if self.terms.is_empty() {
            return Monomial::ONE;
        }
        for (m, _) in &self.terms {
            for i in 0..3 {
                min[i] = min[i].min(m.0[i]);
            }
        }
        Monomial(min)
    }

    pub fn scale(&self, m: Monomial, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(t, k)| (*t * m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(t, k)| (*t * m, k.clone())).collect(),
        }
    }

    /// `true` if every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    pub fn swap_qt(&self) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.swap_qt(), c.clone()))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }

    pub fn subst(&self, var: usize, replacement: &Monomial) -> Self {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.subst(var, replacement), c.clone())),
        )
    }

    /// Exact division, `self = q * divisor` with `q` returned. Runs the
    /// single-divisor division algorithm after shifting both operands to
    /// nonnegative exponents; a remainder term signals failure.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let shift_a = self.min_exponents();
        let shift_p = divisor.min_exponents();

        let mut rem: BTreeMap<Monomial, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (*m * shift_a.inverse(), c.clone()))
            .collect();
        let (lead_m, lead_c) = {
            let (m, c) = divisor.leading().expect("divisor is nonzero");
            (*m * shift_p.inverse(), c.clone())
        };
        let div_shifted: Vec<(Monomial, BigInt)> = divisor
            .terms
            .iter()
            .map(|(m, c)| (*m * shift_p.inverse(), c.clone()))
            .collect();

        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((&m, _)) = rem.last_key_value() {
            let c = rem.get(&m).expect("present").clone();
            let qm = m.checked_sub(&lead_m).ok_or(Error::NotDivisible)?;
            let (qc, r) = num_integer_div_rem(&c, &lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (dm, dc) in &div_shifted {
                let key = qm * *dm;
                let entry = rem.entry(key).or_insert_with(BigInt::zero);
                *entry -= &qc * dc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        quot.sort_by(|a, b| a.0.cmp(&b.0));
        let unshift = shift_a * shift_p.inverse();
        Ok(LaurentPoly {
            terms: quot.into_iter().map(|(m, c)| (m * unshift, c)).collect(),
        })
    }

    /// Exact division by the binomial `1 - x^d` (with `d` lexicographically
    /// positive), in linear time. Terms are bucketed by their residue class
    /// modulo the rank-one lattice generated by `d`; within a bucket the
    /// quotient is a running prefix sum, and exactness means every bucket
    /// sums to zero.
    pub fn div_binomial_exact(&self, d: &Monomial) -> Result<LaurentPoly> {
        debug_assert!(d.lex_sign() > 0, "factor exponent must be canonical");
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let pivot = (0..3).find(|&i| d.0[i] != 0).ok_or(Error::ZeroDenominator)?;
        let step = d.0[pivot];

        // residue class representative and lattice coordinate of an exponent
        let decompose = |m: &Monomial| -> (Monomial, i32) {
            let k = m.0[pivot].div_euclid(step);
            let mut rep = m.0;
            for i in 0..3 {
                rep[i] -= k * d.0[i];
            }
            (Monomial(rep), k)
        };

        let mut buckets: BTreeMap<Monomial, Vec<(i32, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rep, k) = decompose(m);
            buckets.entry(rep).or_default().push((k, c.clone()));
        }

        let mut out: Vec<(Monomial, BigInt)> = Vec::new();
        for (rep, mut entries) in buckets {
            entries.sort_by_key(|(k, _)| *k);
            let mut acc = BigInt::zero();
            let mut iter = entries.into_iter().peekable();
            while let Some((k, c)) = iter.next() {
                acc += c;
                let upto = match iter.peek() {
                    Some((next_k, _)) => *next_k,
                    None => {
                        if !acc.is_zero() {
                            return Err(Error::NotDivisible);
                        }
                        break;
                    }
                };
                if !acc.is_zero() {
                    // quotient coefficient `acc` repeats on k, k+1, .., upto-1
                    for j in k..upto {
                        let mut e = rep.0;
                        for i in 0..3 {
                            e[i] += j * d.0[i];
                        }
                        out.push((Monomial(e), acc.clone()));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(LaurentPoly { terms: out })
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        // linear merge of two sorted term lists
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.terms[i].0.cmp(&rhs.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &rhs.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        LaurentPoly { terms: out }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let key = *m1 * *m2;
                let entry = acc.entry(key).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The product of the first `k` one-sided quantum integers,
/// `prod_{j=1}^{k} (1 + Q + .. + Q^{j-1})`. Agrees with the balanced
/// quantum factorial `[k]!` up to an overall monomial.
pub fn gaussian_factorial(k: u32) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for j in 1..=k {
        let factor = LaurentPoly::from_terms(
            (0..j).map(|i| (Monomial::var(VAR_Q, i as i32), BigInt::one())),
        );
        out = &out * &factor;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(VAR_A, 1), BigInt::one())
    }
    fn q(e: i32) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(VAR_Q, e), BigInt::one())
    }
    fn t(e: i32) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(VAR_T, e), BigInt::one())
    }

    #[test]
    fn monomial_order_is_lex() {
        let m1 = Monomial::new(0, 5, 5);
        let m2 = Monomial::new(1, 0, 0);
        assert!(m1 < m2);
        assert!(Monomial::new(0, 1, -3) > Monomial::new(0, 0, 9));
    }

    #[test]
    fn add_cancels() {
        let p = &a() + &q(2);
        let diff = &p - &p;
        assert!(diff.is_zero());
    }

    #[test]
    fn mul_difference_of_squares() {
        // (Q - T)(Q + T) = Q^2 - T^2
        let p = &(&q(1) - &t(1)) * &(&q(1) + &t(1));
        assert_eq!(p, &q(2) - &t(2));
    }

    #[test]
    fn div_exact_square() {
        // (1+A)^2 / (1+A) = 1+A
        let one_plus_a = &LaurentPoly::one() + &a();
        let sq = &one_plus_a * &one_plus_a;
        assert_eq!(sq.div_exact(&one_plus_a).unwrap(), one_plus_a);
    }

    #[test]
    fn div_exact_conjugate() {
        // (Q^2 - T^2) / (Q - T) = Q + T
        let num = &q(2) - &t(2);
        let den = &q(1) - &t(1);
        assert_eq!(num.div_exact(&den).unwrap(), &q(1) + &t(1));
    }

    #[test]
    fn div_exact_fails() {
        let num = &LaurentPoly::one() + &q(1);
        let den = &LaurentPoly::one() + &a();
        assert_eq!(num.div_exact(&den), Err(Error::NotDivisible));
    }

    #[test]
    fn div_exact_laurent_shifts() {
        // (Q^-1 + 1) / (1 + Q) = Q^-1
        let num = &q(-1) + &LaurentPoly::one();
        let den = &LaurentPoly::one() + &q(1);
        assert_eq!(num.div_exact(&den).unwrap(), q(-1));
    }

    #[test]
    fn div_binomial_geometric() {
        // (1 - Q^5) / (1 - Q) = 1 + Q + Q^2 + Q^3 + Q^4
        let num = LaurentPoly::one_minus(Monomial::var(VAR_Q, 5));
        let quot = num.div_binomial_exact(&Monomial::var(VAR_Q, 1)).unwrap();
        let expected = LaurentPoly::from_terms(
            (0..5).map(|i| (Monomial::var(VAR_Q, i), BigInt::one())),
        );
        assert_eq!(quot, expected);
    }

    #[test]
    fn div_binomial_mixed_direction() {
        // (1 - Q^2 T^-2) is 1 - x^d for d = (0,2,-2), lex positive
        let d = Monomial::new(0, 2, -2);
        let f = LaurentPoly::one_minus(d);
        let prod = &f * &(&a() + &q(3));
        let quot = prod.div_binomial_exact(&d).unwrap();
        assert_eq!(quot, &a() + &q(3));
        assert_eq!(f.div_binomial_exact(&Monomial::var(VAR_Q, 1)), Err(Error::NotDivisible));
    }

    #[test]
    fn div_binomial_matches_div_exact() {
        let d = Monomial::new(0, 1, -1);
        let f = LaurentPoly::one_minus(d);
        let g = LaurentPoly::from_terms([
            (Monomial::new(0, 0, 0), BigInt::from(2)),
            (Monomial::new(1, -2, 3), BigInt::from(-7)),
            (Monomial::new(0, 4, 1), BigInt::from(5)),
        ]);
        let prod = &f * &g;
        assert_eq!(prod.div_binomial_exact(&d).unwrap(), prod.div_exact(&f).unwrap());
    }

    #[test]
    fn subst_t_to_q_inverse() {
        // T^2 -> Q^-2, A T -> A Q^-1
        let p = &t(2) + &(&a() * &t(1));
        let s = p.subst(VAR_T, &Monomial::var(VAR_Q, -1));
        let expected = &q(-2)
            + &LaurentPoly::monomial(Monomial::new(1, -1, 0), BigInt::one());
        assert_eq!(s, expected);
    }

    #[test]
    fn subst_merges_terms() {
        // Q + T both map to Q under T -> Q
        let p = &q(1) + &t(1);
        let s = p.subst(VAR_T, &Monomial::var(VAR_Q, 1));
        assert_eq!(s, LaurentPoly::monomial(Monomial::var(VAR_Q, 1), BigInt::from(2)));
    }

    #[test]
    fn swap_qt_involution() {
        let p = LaurentPoly::from_terms([
            (Monomial::new(1, 2, -3), BigInt::from(4)),
            (Monomial::new(0, -1, 5), BigInt::from(-2)),
        ]);
        assert_eq!(p.swap_qt().swap_qt(), p);
    }

    #[test]
    fn gaussian_factorial_small() {
        assert_eq!(gaussian_factorial(1), LaurentPoly::one());
        assert_eq!(gaussian_factorial(2), &LaurentPoly::one() + &q(1));
        // (1+Q)(1+Q+Q^2) = 1 + 2Q + 2Q^2 + Q^3
        let k3 = gaussian_factorial(3);
        let expected = LaurentPoly::from_terms([
            (Monomial::var(VAR_Q, 0), BigInt::from(1)),
            (Monomial::var(VAR_Q, 1), BigInt::from(2)),
            (Monomial::var(VAR_Q, 2), BigInt::from(2)),
            (Monomial::var(VAR_Q, 3), BigInt::from(1)),
        ]);
        assert_eq!(k3, expected);
    }
}
