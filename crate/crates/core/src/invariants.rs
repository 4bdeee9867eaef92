//! Torus link invariants: state construction, colored prefactors, reduced
//! invariants, and the cross-validation checks (mirror symmetry, topological
//! invariance, HRW ratio, HOMFLYPT specialization).
//!
//! All equalities between invariants hold up to an overall normalization,
//! operationalized as `+/- 1` times a single Laurent monomial; verification
//! reports therefore carry the witnessing unit and pass only on sign `+`
//! (except for the HOMFLYPT comparison, whose sign is not pinned down by the
//! grading conventions).

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hecke;
use crate::poly::{LaurentPoly, Monomial, VAR_A, VAR_Q, VAR_T};
use crate::ratfunc::{specialize_t_to_q_inverse, RatFunc, Unit};
use crate::recursion::{evaluate, MemoTable};
use crate::symmetric::{Permutation, State, Theory, Word};

/// A positive torus link `T(m, n)` with the first component carrying color
/// `k` (all other components are colored 1).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TorusLinkSpec {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub theory: Theory,
}

impl TorusLinkSpec {
    pub fn new(m: u32, n: u32, k: u32, theory: Theory) -> Result<Self> {
        if m < 1 || n < 1 || k < 1 {
            return Err(Error::InvalidState(
                "torus link parameters must be positive".to_string(),
            ));
        }
        Ok(TorusLinkSpec { m, n, k, theory })
    }

    /// gcd(m, n), which is also the number of link components.
    pub fn components(&self) -> u32 {
        gcd(self.m, self.n)
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The recursion state whose value computes the invariant of `T(m, n)` with
/// the identity twist: words `1^k 0^{(m/d)(d-1) + k(m/d - 1)}` and likewise
/// for `n`, where `d = gcd(m, n)`.
pub fn torus_state(spec: &TorusLinkSpec) -> Result<State> {
    let d = spec.components();
    let zeros = |side: u32| ((side / d) * (d - 1) + spec.k * (side / d - 1)) as usize;
    let v = Word::ones_then_zeros(spec.k as usize, zeros(spec.m))?;
    let w = Word::ones_then_zeros(spec.k as usize, zeros(spec.n))?;
    State::new(spec.theory, v, w, Permutation::identity(spec.k as usize))
}

/// The colored prefactor `prod_{i=2}^k 1/(1 - X^{1-i} Y)` with `(X, Y)`
/// equal to `(Q, T)` in the column theory and `(T, Q)` in the row theory.
/// (The two are exact mirror images, as mirror symmetry requires.)
pub fn colored_prefactor(theory: Theory, k: u32) -> Result<RatFunc> {
    let mut out = RatFunc::one();
    for i in 2..=k as i32 {
        let d = match theory {
            Theory::Column => Monomial::new(0, 1 - i, 1),
            Theory::Row => Monomial::new(0, 1, 1 - i),
        };
        out = out.mul(&RatFunc::inverse_factor(d)?);
    }
    Ok(out)
}

/// Evaluate the invariant of the spec in its own theory.
pub fn invariant(spec: &TorusLinkSpec, memo: &mut MemoTable) -> Result<RatFunc> {
    let state = torus_state(spec)?;
    let body = evaluate(&state, memo)?;
    Ok(colored_prefactor(spec.theory, spec.k)?.mul(&body))
}

pub fn column_invariant(m: u32, n: u32, k: u32, memo: &mut MemoTable) -> Result<RatFunc> {
    invariant(&TorusLinkSpec::new(m, n, k, Theory::Column)?, memo)
}

pub fn row_invariant(m: u32, n: u32, k: u32, memo: &mut MemoTable) -> Result<RatFunc> {
    invariant(&TorusLinkSpec::new(m, n, k, Theory::Row)?, memo)
}

/// Strip the free sheet-algebra and y-variable actions from an unreduced
/// y-ified invariant of an `r`-component link: multiply by `(1-T)^r (1-Q)`,
/// then divide exactly by `(1 + A)`. A `NotDivisible` error here is a
/// correctness tripwire, not a recoverable condition.
pub fn reduced_invariant(value: &RatFunc, components: u32) -> Result<RatFunc> {
    let one_minus_t = LaurentPoly::one_minus(Monomial::var(VAR_T, 1));
    let one_minus_q = LaurentPoly::one_minus(Monomial::var(VAR_Q, 1));
    let one_plus_a =
        &LaurentPoly::one() + &LaurentPoly::monomial(Monomial::var(VAR_A, 1), BigInt::one());
    let mut out = value.clone();
    for _ in 0..components {
        out = out.mul_poly(&one_minus_t);
    }
    out = out.mul_poly(&one_minus_q);
    out.div_exact(&one_plus_a)
}

/// Outcome of an up-to-normalization comparison.
#[derive(Clone, Debug)]
pub struct UnitReport {
    pub unit: Option<Unit>,
    pub pass: bool,
}

impl UnitReport {
    fn positive(unit: Option<Unit>) -> Self {
        let pass = unit.as_ref().map(|u| u.is_positive()).unwrap_or(false);
        UnitReport { unit, pass }
    }

    fn any_sign(unit: Option<Unit>) -> Self {
        let pass = unit.is_some();
        UnitReport { unit, pass }
    }
}

/// Mirror symmetry: the Q <-> T swap of the row invariant must agree with
/// the column invariant up to a positive unit.
pub fn mirror_verify(m: u32, n: u32, k: u32, memo: &mut MemoTable) -> Result<UnitReport> {
    let row = row_invariant(m, n, k, memo)?;
    let col = column_invariant(m, n, k, memo)?;
    Ok(UnitReport::positive(
        row.swap_qt().equal_up_to_monomial(&col),
    ))
}

/// Topological invariance under `T(m, n) = T(n, m)`, exercised entirely
/// through the permutation bookkeeping of the rules.
pub fn invariance_verify(m: u32, n: u32, k: u32, memo: &mut MemoTable) -> Result<UnitReport> {
    let a = column_invariant(m, n, k, memo)?;
    let b = column_invariant(n, m, k, memo)?;
    Ok(UnitReport::positive(a.equal_up_to_monomial(&b)))
}

/// The HRW colored-unknot dimension `prod_{i=1}^k
/// (1 + A Q^{1-i}) / ((1 - Q^i)(1 - T Q^{1-i}))`.
fn hrw_unknot(k: u32) -> Result<RatFunc> {
    let mut out = RatFunc::one();
    for i in 1..=k as i32 {
        let num = &LaurentPoly::one()
            + &LaurentPoly::monomial(Monomial::new(1, 1 - i, 0), BigInt::one());
        let factor = RatFunc::new(num, [Monomial::var(VAR_Q, i), Monomial::new(0, 1 - i, 1)])?;
        out = out.mul(&factor);
    }
    Ok(out)
}

/// The column-colored unknot invariant differs from the HRW unknot invariant
/// by a Gaussian factorial times a pure monomial.
pub fn hrw_ratio_check(k: u32, memo: &mut MemoTable) -> Result<UnitReport> {
    let ours = column_invariant(1, 1, k, memo)?;
    let candidate = hrw_unknot(k)?.mul_poly(&crate::poly::gaussian_factorial(k));
    Ok(UnitReport::positive(ours.equal_up_to_monomial(&candidate)))
}

/// Specialize `T := Q^{-1}`, the homological-to-HOMFLYPT decategorification.
/// The input must be fully simplified (reduced first): a surviving factor
/// with equal Q and T exponents pins a genuine pole.
pub fn specialize_homfly(value: &RatFunc) -> Result<RatFunc> {
    specialize_t_to_q_inverse(value)
}

/// The global `A -> -A` twist used by the HOMFLYPT comparison: calibrated
/// once on the unknot and trefoil, then frozen for every other link. Only
/// valid when no denominator factor carries an odd A-exponent.
pub fn twist_a_sign(value: &RatFunc) -> Result<RatFunc> {
    for (d, _) in value.denominator() {
        if d.0[VAR_A] % 2 != 0 {
            return Err(Error::InvalidState(
                "A-sign twist on a denominator with odd A-exponent".to_string(),
            ));
        }
    }
    let num = LaurentPoly::from_terms(value.numerator().terms().map(|(m, c)| {
        let c = if m.0[VAR_A] % 2 != 0 { -c } else { c.clone() };
        (*m, c)
    }));
    let mut out = RatFunc::from_poly(num);
    for (d, mult) in value.denominator() {
        for _ in 0..mult {
            out = out.mul(&RatFunc::inverse_factor(*d).expect("existing factor is nonzero"));
        }
    }
    Ok(out)
}

/// Re-express a value of the Hecke oracle, whose torus-knot outputs have
/// only even exponents in both `a` and `q`, in the squared variables
/// `(a^2, q^2)` so that it shares monomial slots with the specialized
/// homology invariant.
pub fn halve_exponents(value: &RatFunc) -> Result<RatFunc> {
    let halve = |m: &Monomial| -> Result<Monomial> {
        let mut e = [0i32; 3];
        for i in 0..3 {
            if m.0[i] % 2 != 0 {
                return Err(Error::InvalidState(alloc::format!(
                    "odd exponent in {m} prevents re-expression in squared variables"
                )));
            }
            e[i] = m.0[i] / 2;
        }
        Ok(Monomial(e))
    };
    let mut num_terms = alloc::vec::Vec::new();
    for (m, c) in value.numerator().terms() {
        num_terms.push((halve(m)?, c.clone()));
    }
    let mut out = RatFunc::from_poly(LaurentPoly::from_terms(num_terms));
    for (d, mult) in value.denominator() {
        let hd = halve(d)?;
        for _ in 0..mult {
            out = out.mul(&RatFunc::inverse_factor(hd)?);
        }
    }
    Ok(out)
}

/// HOMFLYPT cross-validation for a torus knot: the reduced column invariant
/// specialized at `T = Q^{-1}` and twisted by `A -> -A` must agree with the
/// Jones-Ocneanu trace oracle, re-expressed in squared variables, up to a
/// unit of either sign.
pub fn homfly_compare(m: u32, n: u32, memo: &mut MemoTable) -> Result<UnitReport> {
    let spec = TorusLinkSpec::new(m, n, 1, Theory::Column)?;
    if !spec.is_knot() {
        return Err(Error::InvalidState(
            "the HOMFLYPT oracle comparison is defined for coprime (m, n)".to_string(),
        ));
    }
    let reduced = reduced_invariant(&invariant(&spec, memo)?, 1)?;
    let specialized = specialize_homfly(&reduced)?;
    let twisted = twist_a_sign(&specialized)?;
    let oracle = hecke::homfly_torus(m as usize, n as usize)?;
    let oracle_sq = halve_exponents(&oracle)?;
    Ok(UnitReport::any_sign(
        twisted.equal_up_to_monomial(&oracle_sq),
    ))
}

/// A computed invariant plus optional derived data, ready for serialization.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub spec: TorusLinkSpec,
    pub value: RatFunc,
    pub reduced: Option<RatFunc>,
    pub unit_vs_mirror: Option<Unit>,
    pub note: String,
}

/// Compute the invariant of a spec together with its reduced form (if
/// requested) and the witnessing mirror unit.
pub fn compute_report(
    spec: &TorusLinkSpec,
    with_reduced: bool,
    memo: &mut MemoTable,
) -> Result<InvariantReport> {
    let value = invariant(spec, memo)?;
    let reduced = if with_reduced {
        Some(reduced_invariant(&value, spec.components())?)
    } else {
        None
    };
    let unit_vs_mirror = mirror_verify(spec.m, spec.n, spec.k, memo)?.unit;
    Ok(InvariantReport {
        spec: *spec,
        value,
        reduced,
        unit_vs_mirror,
        note: "equalities hold up to an overall +/- monomial normalization".to_string(),
    })
}
