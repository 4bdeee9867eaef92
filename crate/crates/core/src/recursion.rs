//! The memoized state recursion computing graded dimensions.
//!
//! A state carries a pair of binary words and a permutation twist. Exactly
//! one rewriting rule applies to every valid non-base state, keyed on the
//! rightmost letter of each word:
//!
//!   rule  pattern          coefficient (column theory)     successor
//!   ----  ---------------  ------------------------------  -----------------------------
//!   R1    (0^m 1, 0^n 1)   (1+A) / ((1-Q)(1-T))            (0^m, 0^n), empty twist
//!   R2    (v1, w1), s(n)=n (Q^l+A) / (1-Q),  l = n-1       (v, w), partial trace of s
//!   R3    (v1, w1), else   (Q^l+A),          l = n-1       (v, w), partial trace of s
//!   R4    (v0, w1)         1                               (v, 1w), s * cyc(l)
//!   R5    (v1, w0)         1                               (1v, w), cyc(l)^-1 * s
//!   R6    (0^m, 0^n)       1                               (1 0^{m-1}, 1 0^{n-1}), e
//!   R7    (v0, w0)         Q^-l and Q^-l T,  l = ones      (1v, 1w) and (0v, 0w)
//!
//! The row theory is the same engine with Q and T exchanged in the R2, R3,
//! and R7 coefficients. The base value on a pair of empty words is 1.
//!
//! The relation system provably determines a unique value on every valid
//! state, so a state recurring on the active evaluation stack can only mean
//! a convention bug; the engine reports that as `CycleDetected` rather than
//! diverging.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Monomial, VAR_A, VAR_Q, VAR_T};
use crate::ratfunc::RatFunc;
use crate::symmetric::{Permutation, State, Theory};

use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleId {
    Base,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RuleId::Base => "base",
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
        };
        write!(f, "{name}")
    }
}

/// Fixed bookkeeping conventions of this engine, in one place. Cached values
/// computed under different conventions are unusable, so persisted caches are
/// stamped with a fingerprint of this string.
pub const CONVENTIONS: &str = "compose=right-first;cyc=i->i+1;r4=sigma*cyc;r5=cyc_inv*sigma;\
r7-embed=fix-first;trace=last-strand;base=1";

/// FNV-1a hash of the convention string, stable across builds.
pub fn convention_fingerprint() -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in CONVENTIONS.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    alloc::format!("{hash:016x}")
}

/// Decide which rule applies to a state. Total on valid states except for
/// the unreachable shape with exactly one empty word.
pub fn dispatch(state: &State) -> Result<RuleId> {
    let (v, w) = (state.v(), state.w());
    match (v.is_empty(), w.is_empty()) {
        (true, true) => return Ok(RuleId::Base),
        (true, false) | (false, true) => {
            return Err(Error::InvalidState(alloc::format!(
                "exactly one word empty in ({v}, {w})"
            )))
        }
        (false, false) => {}
    }
    let ones = state.ones();
    match (v.last().unwrap(), w.last().unwrap()) {
        (true, true) => {
            if ones == 1 {
                Ok(RuleId::R1)
            } else if state.sigma().fixes_last() {
                Ok(RuleId::R2)
            } else {
                Ok(RuleId::R3)
            }
        }
        (false, true) => Ok(RuleId::R4),
        (true, false) => Ok(RuleId::R5),
        (false, false) => {
            if ones >= 1 {
                Ok(RuleId::R7)
            } else {
                Ok(RuleId::R6)
            }
        }
    }
}

/// One rule application: the list of (coefficient, successor) pairs whose
/// coefficient-weighted sum gives the state's value.
pub fn expand(state: &State) -> Result<(RuleId, Vec<(RatFunc, State)>)> {
    let rule = dispatch(state)?;
    let theory = state.theory();
    let (v, w) = (state.v(), state.w());
    let succ = match rule {
        RuleId::Base => Vec::new(),
        RuleId::R1 => {
            let (v1, _) = v.split_last().unwrap();
            let (w1, _) = w.split_last().unwrap();
            let next = State::new(theory, v1, w1, Permutation::identity(0))?;
            alloc::vec![(coeff_r1(), next)]
        }
        RuleId::R2 | RuleId::R3 => {
            let (v1, _) = v.split_last().unwrap();
            let (w1, _) = w.split_last().unwrap();
            let l = state.ones() - 1;
            let sigma = state.sigma().partial_trace()?;
            let next = State::new(theory, v1, w1, sigma)?;
            let coeff = if rule == RuleId::R2 {
                coeff_r2(theory, l as i32)?
            } else {
                coeff_r3(theory, l as i32)
            };
            alloc::vec![(coeff, next)]
        }
        // Ones index projector strands left to right. Moving the trailing 1
        // of a word to its front relabels that side's strands cyclically;
        // the two sides rotate in opposite senses (validated against the
        // T(m,n) = T(n,m) and mirror suites, which pin both directions).
        RuleId::R4 => {
            let (v1, _) = v.split_last().unwrap();
            let (w1, _) = w.split_last().unwrap();
            let l = state.ones();
            let sigma = state.sigma().compose(&Permutation::cyclic(l))?;
            let next = State::new(theory, v1, w1.prepend(true)?, sigma)?;
            alloc::vec![(RatFunc::one(), next)]
        }
        RuleId::R5 => {
            let (v1, _) = v.split_last().unwrap();
            let (w1, _) = w.split_last().unwrap();
            let l = state.ones();
            let sigma = Permutation::cyclic(l).inverse().compose(state.sigma())?;
            let next = State::new(theory, v1.prepend(true)?, w1, sigma)?;
            alloc::vec![(RatFunc::one(), next)]
        }
        RuleId::R6 => {
            let (v1, _) = v.split_last().unwrap();
            let (w1, _) = w.split_last().unwrap();
            let next = State::new(
                theory,
                v1.prepend(true)?,
                w1.prepend(true)?,
                Permutation::identity(1),
            )?;
            alloc::vec![(RatFunc::one(), next)]
        }
        RuleId::R7 => {
            let (v1, _) = v.split_last().unwrap();
            let (w1, _) = w.split_last().unwrap();
            let l = state.ones() as i32;
            // the fresh strand is prepended to both words, so it carries the
            // lowest index and is untwisted
            let grown = State::new(
                theory,
                v1.prepend(true)?,
                w1.prepend(true)?,
                state.sigma().extend_fixing_first(),
            )?;
            let rotated = State::new(
                theory,
                v1.prepend(false)?,
                w1.prepend(false)?,
                state.sigma().clone(),
            )?;
            let (c_grow, c_rot) = coeff_r7(theory, l);
            alloc::vec![(c_grow, grown), (c_rot, rotated)]
        }
    };
    Ok((rule, succ))
}

// (1 + A) / ((1 - Q)(1 - T)), shared by both theories
fn coeff_r1() -> RatFunc {
    let num = &LaurentPoly::one() + &LaurentPoly::monomial(Monomial::var(VAR_A, 1), BigInt::one());
    RatFunc::new(num, [Monomial::var(VAR_Q, 1), Monomial::var(VAR_T, 1)])
        .expect("factors are nonzero")
}

fn theory_var(theory: Theory) -> usize {
    match theory {
        Theory::Column => VAR_Q,
        Theory::Row => VAR_T,
    }
}

// (X^l + A) / (1 - X) with X the theory's own grading variable
fn coeff_r2(theory: Theory, l: i32) -> Result<RatFunc> {
    let x = theory_var(theory);
    RatFunc::new(r2_numerator(x, l), [Monomial::var(x, 1)])
}

// X^l + A
fn coeff_r3(theory: Theory, l: i32) -> RatFunc {
    RatFunc::from_poly(r2_numerator(theory_var(theory), l))
}

fn r2_numerator(x: usize, l: i32) -> LaurentPoly {
    &LaurentPoly::monomial(Monomial::var(x, l), BigInt::one())
        + &LaurentPoly::monomial(Monomial::var(VAR_A, 1), BigInt::one())
}

// (X^-l, X^-l Y) with (X, Y) = (Q, T) in the column theory and (T, Q) in the row
fn coeff_r7(theory: Theory, l: i32) -> (RatFunc, RatFunc) {
    let x = theory_var(theory);
    let y = match theory {
        Theory::Column => VAR_T,
        Theory::Row => VAR_Q,
    };
    let grow = RatFunc::from_monomial(Monomial::var(x, -l));
    let rot = RatFunc::from_monomial(Monomial::var(x, -l) * Monomial::var(y, 1));
    (grow, rot)
}

/// Memo table keyed on the full state (theory, v, w, sigma). Entries are
/// immutable once written.
#[derive(Default, Clone)]
pub struct MemoTable {
    map: BTreeMap<State, RatFunc>,
}

impl MemoTable {
    pub fn new() -> Self {
        MemoTable::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, state: &State) -> Option<&RatFunc> {
        self.map.get(state)
    }

    pub fn insert(&mut self, state: State, value: RatFunc) {
        self.map.insert(state, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&State, &RatFunc)> {
        self.map.iter()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    /// Read and write the memo table. Disabled only by the memo-soundness
    /// oracle, which re-derives every value from scratch.
    pub memoize: bool,
    /// Override the default depth bound `(len(v) + len(w) + 1)^3`.
    pub depth_limit: Option<usize>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            memoize: true,
            depth_limit: None,
        }
    }
}

/// Evaluate a state with memoization.
pub fn evaluate(state: &State, memo: &mut MemoTable) -> Result<RatFunc> {
    evaluate_with(state, memo, EngineOptions::default())
}

/// Evaluate a state under explicit engine options.
pub fn evaluate_with(state: &State, memo: &mut MemoTable, opts: EngineOptions) -> Result<RatFunc> {
    let limit = opts.depth_limit.unwrap_or_else(|| {
        let n = state.v().len() + state.w().len() + 1;
        n * n * n
    });
    let mut engine = Engine {
        memo,
        memoize: opts.memoize,
        limit,
        stack: BTreeSet::new(),
    };
    engine.eval(state, 0)
}

struct Engine<'a> {
    memo: &'a mut MemoTable,
    memoize: bool,
    limit: usize,
    stack: BTreeSet<State>,
}

impl Engine<'_> {
    fn eval(&mut self, state: &State, depth: usize) -> Result<RatFunc> {
        if self.memoize {
            if let Some(hit) = self.memo.get(state) {
                return Ok(hit.clone());
            }
        }
        if depth > self.limit {
            return Err(Error::DepthExceeded { limit: self.limit });
        }
        if !self.stack.insert(state.clone()) {
            return Err(Error::CycleDetected(state.to_string()));
        }
        let (_, successors) = expand(state)?;
        let mut value = if successors.is_empty() {
            RatFunc::one()
        } else {
            RatFunc::zero()
        };
        for (coeff, next) in successors {
            let sub = self.eval(&next, depth + 1)?;
            value = &value + &(&coeff * &sub);
        }
        self.stack.remove(state);
        if self.memoize {
            self.memo.insert(state.clone(), value.clone());
        }
        Ok(value)
    }
}

/// The expansion tree of a state: each node records the rule applied and the
/// coefficient attached to each child. Subtrees are not shared, so this is
/// only suitable for small states.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub state: State,
    pub rule: RuleId,
    pub value: RatFunc,
    pub children: Vec<(RatFunc, Derivation)>,
}

pub fn explain(state: &State) -> Result<Derivation> {
    let n = state.v().len() + state.w().len() + 1;
    explain_depth(state, 0, n * n * n)
}

fn explain_depth(state: &State, depth: usize, limit: usize) -> Result<Derivation> {
    if depth > limit {
        return Err(Error::DepthExceeded { limit });
    }
    let (rule, successors) = expand(state)?;
    let mut children = Vec::with_capacity(successors.len());
    let mut value = if successors.is_empty() {
        RatFunc::one()
    } else {
        RatFunc::zero()
    };
    for (coeff, next) in successors {
        let sub = explain_depth(&next, depth + 1, limit)?;
        value = &value + &(&coeff * &sub.value);
        children.push((coeff, sub));
    }
    Ok(Derivation {
        state: state.clone(),
        rule,
        value,
        children,
    })
}

impl Derivation {
    /// Render the tree with two-space indentation, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize) {
        for _ in 0..indent {
            out.push_str("  ");
        }
        out.push_str(&alloc::format!(
            "{} [{}] = {}\n",
            self.state,
            self.rule,
            self.value
        ));
        for (coeff, child) in &self.children {
            for _ in 0..indent + 1 {
                out.push_str("  ");
            }
            out.push_str(&alloc::format!("coeff {coeff}\n"));
            child.render_into(out, indent + 1);
        }
    }
}
