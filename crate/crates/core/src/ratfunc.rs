//! Rational functions whose denominators are multisets of binomial factors
//! `1 - x^d`.
//!
//! Every value produced by the state recursion lives in this ring: monomial
//! coefficients only ever introduce denominator factors of this shape, so the
//! class is closed under the recursion and equality is decidable by cross
//! multiplication.
//!
//! Invariants maintained by every constructor and operation:
//!   1. each stored factor exponent `d` is lexicographically positive
//!      (a factor `1 - x^-d` is rewritten as `-x^-d (1 - x^d)` and the unit
//!      absorbed into the numerator);
//!   2. after `simplify`, no stored factor exactly divides the numerator;
//!   3. zero is numerator 0 with an empty denominator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, VAR_Q, VAR_T};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// A unit `+/- x^m` relating two values up to overall normalization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Unit {
    pub sign: Sign,
    pub monomial: Monomial,
}

impl Unit {
    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Plus
    }

    pub fn is_trivial(&self) -> bool {
        self.sign == Sign::Plus && self.monomial.is_one()
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.monomial),
            Sign::Minus => write!(f, "-{}", self.monomial),
        }
    }
}

/// Numerator together with a multiset of denominator factors `1 - x^d`,
/// keyed by the canonically oriented exponent vector `d` with multiplicity.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: BTreeMap<Monomial, u32>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RatFunc {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        RatFunc::from_poly(LaurentPoly::monomial(m, BigInt::one()))
    }

    /// `num / prod (1 - x^d)` over the given factor exponents (repeats allowed,
    /// any orientation). Fails only on a zero exponent vector.
    pub fn new<I: IntoIterator<Item = Monomial>>(num: LaurentPoly, factors: I) -> Result<Self> {
        let mut rf = RatFunc {
            num,
            den: BTreeMap::new(),
        };
        for d in factors {
            rf.push_factor(d, 1)?;
        }
        rf.simplify();
        Ok(rf)
    }

    /// The reciprocal `1 / (1 - x^d)`.
    pub fn inverse_factor(d: Monomial) -> Result<Self> {
        RatFunc::new(LaurentPoly::one(), [d])
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator factors as (exponent vector, multiplicity), sorted.
    pub fn denominator(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.den.iter().map(|(d, &m)| (d, m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Multiply a single factor `1 - x^d` into the denominator, orienting it
    /// and absorbing the orientation unit into the numerator.
    fn push_factor(&mut self, d: Monomial, mult: u32) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        match d.lex_sign() {
            0 => Err(Error::ZeroDenominator),
            1 => {
                *self.den.entry(d).or_insert(0) += mult;
                Ok(())
            }
            _ => {
                // 1 - x^d = -x^d (1 - x^-d), so dividing by it multiplies the
                // numerator by -x^-d per multiplicity.
                let unit = LaurentPoly::monomial(d.inverse(), BigInt::from(-1));
                for _ in 0..mult {
                    self.num = &self.num * &unit;
                }
                *self.den.entry(d.inverse()).or_insert(0) += mult;
                Ok(())
            }
        }
    }

    /// Cancel denominator factors that exactly divide the numerator. Greedy
    /// and complete: cancelling one factor cannot make another factor newly
    /// divide, so a single pass per factor suffices.
    pub fn simplify(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<Monomial> = self.den.keys().copied().collect();
        for d in keys {
            loop {
                let mult = self.den.get(&d).copied().unwrap_or(0);
                if mult == 0 {
                    break;
                }
                match self.num.div_binomial_exact(&d) {
                    Ok(q) => {
                        self.num = q;
                        if mult == 1 {
                            self.den.remove(&d);
                        } else {
                            self.den.insert(d, mult - 1);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
    }

    /// The denominator expanded as a polynomial, `prod (1 - x^d)^mult`.
    pub fn denominator_poly(&self) -> LaurentPoly {
        denominator_product(self.den.iter().map(|(d, &m)| (*d, m)))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        // least common denominator: multiset max of multiplicities
        let mut lcd: BTreeMap<Monomial, u32> = self.den.clone();
        for (d, &m) in &other.den {
            let e = lcd.entry(*d).or_insert(0);
            *e = (*e).max(m);
        }
        let scale_left = denominator_product(
            lcd.iter()
                .map(|(d, &m)| (*d, m - self.den.get(d).copied().unwrap_or(0))),
        );
        let scale_right = denominator_product(
            lcd.iter()
                .map(|(d, &m)| (*d, m - other.den.get(d).copied().unwrap_or(0))),
        );
        let num = &(&self.num * &scale_left) + &(&other.num * &scale_right);
        let mut out = RatFunc { num, den: lcd };
        out.simplify();
        out
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let mut den = self.den.clone();
        for (d, &m) in &other.den {
            *den.entry(*d).or_insert(0) += m;
        }
        let mut out = RatFunc {
            num: &self.num * &other.num,
            den,
        };
        out.simplify();
        out
    }

    pub fn negate(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.negate())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunc {
        let mut out = RatFunc {
            num: &self.num * p,
            den: self.den.clone(),
        };
        out.simplify();
        out
    }

    /// Exact division of the numerator by a polynomial. `NotDivisible` is a
    /// correctness tripwire for the reduction step.
    pub fn div_exact(&self, p: &LaurentPoly) -> Result<RatFunc> {
        let num = self.num.div_exact(p)?;
        let mut out = RatFunc {
            num,
            den: self.den.clone(),
        };
        out.simplify();
        Ok(out)
    }

    /// Substitute `var := replacement` throughout. Fails with
    /// `ZeroDenominator` if a denominator factor collapses; callers should
    /// simplify (they always are, by construction) so that only genuine poles
    /// trip this.
    pub fn subst(&self, var: usize, replacement: &Monomial) -> Result<RatFunc> {
        let mut out = RatFunc {
            num: self.num.subst(var, replacement),
            den: BTreeMap::new(),
        };
        for (d, &mult) in &self.den {
            let d2 = d.subst(var, replacement);
            out.push_factor(d2, mult)?;
        }
        out.simplify();
        Ok(out)
    }

    /// Exchange the Q and T gradings everywhere; an involution.
    pub fn swap_qt(&self) -> RatFunc {
        let mut out = RatFunc {
            num: self.num.swap_qt(),
            den: BTreeMap::new(),
        };
        for (d, &mult) in &self.den {
            out.push_factor(d.swap_qt(), mult)
                .expect("swap of a nonzero vector is nonzero");
        }
        out.simplify();
        out
    }

    /// If `self = (+/- x^m) * other`, return that unit. The candidate is read
    /// off the leading terms after cross multiplying numerators against the
    /// opposite denominators (common factors cancelled first), then verified
    /// exactly.
    pub fn equal_up_to_monomial(&self, other: &RatFunc) -> Option<Unit> {
        if self.is_zero() && other.is_zero() {
            return Some(Unit {
                sign: Sign::Plus,
                monomial: Monomial::ONE,
            });
        }
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (left, right) = self.cross_numerators(other);
        let (lm, lc) = left.leading()?;
        let (rm, rc) = right.leading()?;
        if lc.abs() != rc.abs() {
            return None;
        }
        let sign = if (lc.is_negative()) == (rc.is_negative()) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let monomial = *lm * rm.inverse();
        let mut candidate = right.mul_monomial(monomial);
        if sign == Sign::Minus {
            candidate = -candidate;
        }
        if candidate == left {
            Some(Unit { sign, monomial })
        } else {
            None
        }
    }

    /// Numerators scaled to a common denominator with shared factors removed:
    /// `self == other` iff the two returned polynomials are equal.
    fn cross_numerators(&self, other: &RatFunc) -> (LaurentPoly, LaurentPoly) {
        let left_extra = other
            .den
            .iter()
            .map(|(d, &m)| (*d, m.saturating_sub(self.den.get(d).copied().unwrap_or(0))));
        let right_extra = self
            .den
            .iter()
            .map(|(d, &m)| (*d, m.saturating_sub(other.den.get(d).copied().unwrap_or(0))));
        let left = &self.num * &denominator_product(left_extra);
        let right = &other.num * &denominator_product(right_extra);
        (left, right)
    }
}

fn denominator_product<I: IntoIterator<Item = (Monomial, u32)>>(factors: I) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for (d, mult) in factors {
        // (1 - x^d)^m expanded directly via binomial coefficients
        if mult == 0 {
            continue;
        }
        let mut coeff = BigInt::one();
        let mut terms = Vec::with_capacity(mult as usize + 1);
        for j in 0..=mult {
            let mut e = [0i32; 3];
            for i in 0..3 {
                e[i] = d.0[i] * j as i32;
            }
            terms.push((Monomial(e), coeff.clone()));
            if j < mult {
                coeff = -coeff * BigInt::from(mult - j) / BigInt::from(j + 1);
            }
        }
        out = &out * &LaurentPoly::from_terms(terms);
    }
    out
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        let (left, right) = self.cross_numerators(other);
        left == right
    }
}

impl Eq for RatFunc {}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::add(&self, &rhs)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::mul(&self, &rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.negate()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (d, &mult)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let base = LaurentPoly::one_minus(*d);
            if mult == 1 {
                write!(f, "({base})")?;
            } else {
                write!(f, "({base})^{mult}")?;
            }
        }
        write!(f, ")")
    }
}

/// Convenience: the Q <-> T swap as a free function, matching how the mirror
/// statements are phrased.
pub fn swap_qt(value: &RatFunc) -> RatFunc {
    value.swap_qt()
}

/// Specialize `T := Q^{-1}`, the decategorification sending the graded
/// dimension to the HOMFLYPT specialization.
pub fn specialize_t_to_q_inverse(value: &RatFunc) -> Result<RatFunc> {
    value.subst(VAR_T, &Monomial::var(VAR_Q, -1))
}
