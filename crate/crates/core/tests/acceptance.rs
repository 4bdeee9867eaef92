//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line and its runtime. All comparisons are exact; "up to
//! normalization" always means a single +/- monomial unit witnessed by
//! `equal_up_to_monomial`.
//!
//! Run with `cargo test -p torushom-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;

use torushom_core::hecke;
use torushom_core::invariants::{
    column_invariant, homfly_compare, hrw_ratio_check, invariance_verify, mirror_verify,
    reduced_invariant, row_invariant,
};
use torushom_core::poly::{LaurentPoly, Monomial, VAR_A, VAR_Q, VAR_T};
use torushom_core::ratfunc::RatFunc;
use torushom_core::recursion::{evaluate, evaluate_with, EngineOptions, MemoTable};
use torushom_core::symmetric::{Permutation, State, Theory, Word};

struct Criterion {
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget: Duration) -> Self {
        Criterion {
            name,
            budget,
            started: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        println!(
            "criterion {:<28} pass   ({: >8.2?} / budget {:?})",
            self.name, elapsed, self.budget
        );
        assert!(
            elapsed <= self.budget,
            "criterion {} exceeded its runtime budget: {elapsed:?} > {:?}",
            self.name,
            self.budget
        );
    }
}

fn a_plus(m: Monomial) -> LaurentPoly {
    &LaurentPoly::monomial(m, BigInt::one())
        + &LaurentPoly::monomial(Monomial::var(VAR_A, 1), BigInt::one())
}

fn q(e: i32) -> Monomial {
    Monomial::var(VAR_Q, e)
}

fn t(e: i32) -> Monomial {
    Monomial::var(VAR_T, e)
}

/// 1. Colored unknot, column theory: for k = 1..5 the invariant equals
///    `prod_{i=1}^k (Q^{i-1} + A) / ((1-Q)(1 - Q^{1-i} T))` exactly.
#[test]
fn criterion_01_colored_unknot_column() {
    let c = Criterion::start("1 colored-unknot-column", Duration::from_secs(1));
    let mut memo = MemoTable::new();
    for k in 1..=5u32 {
        let mut expected = RatFunc::one();
        for i in 1..=k as i32 {
            let factor =
                RatFunc::new(a_plus(q(i - 1)), [q(1), Monomial::new(0, 1 - i, 1)]).unwrap();
            expected = expected.mul(&factor);
        }
        let got = column_invariant(1, 1, k, &mut memo).unwrap();
        let unit = got
            .equal_up_to_monomial(&expected)
            .unwrap_or_else(|| panic!("k = {k}: no unit at all"));
        assert!(unit.is_trivial(), "k = {k}: unit {unit} instead of +1");
    }
    c.finish();
}

/// 2. Colored unknot, row theory: for k = 1..5 the invariant equals
///    `prod_{i=1}^k (T^{i-1} + A) / ((1-T)(1 - Q T^{1-i}))` exactly.
///    (The exponent is 1-i, the mirror image of the column closed form;
///    anything else would contradict criterion 3.)
#[test]
fn criterion_02_colored_unknot_row() {
    let c = Criterion::start("2 colored-unknot-row", Duration::from_secs(1));
    let mut memo = MemoTable::new();
    for k in 1..=5u32 {
        let mut expected = RatFunc::one();
        for i in 1..=k as i32 {
            let factor =
                RatFunc::new(a_plus(t(i - 1)), [t(1), Monomial::new(0, 1, 1 - i)]).unwrap();
            expected = expected.mul(&factor);
        }
        let got = row_invariant(1, 1, k, &mut memo).unwrap();
        let unit = got
            .equal_up_to_monomial(&expected)
            .unwrap_or_else(|| panic!("k = {k}: no unit at all"));
        assert!(unit.is_trivial(), "k = {k}: unit {unit} instead of +1");
    }
    c.finish();
}

/// 3. Mirror symmetry: swapping Q and T in the row invariant recovers the
///    column invariant up to a positive unit, for all m, n <= 4 and k <= 3.
#[test]
fn criterion_03_mirror_symmetry() {
    let c = Criterion::start("3 mirror-symmetry", Duration::from_secs(300));
    let mut memo = MemoTable::new();
    let mut failures = Vec::new();
    for m in 1..=4 {
        for n in 1..=4 {
            for k in 1..=3 {
                let report = mirror_verify(m, n, k, &mut memo).unwrap();
                if !report.pass {
                    failures.push((m, n, k, report.unit));
                }
            }
        }
    }
    assert!(failures.is_empty(), "mirror failures: {failures:?}");
    c.finish();
}

/// 4. Uncolored mirror symmetry: p_e(0^m, 0^n) is fixed by the Q <-> T swap
///    up to a positive unit, for all m, n <= 5.
#[test]
fn criterion_04_uncolored_mirror() {
    let c = Criterion::start("4 uncolored-mirror", Duration::from_secs(60));
    let mut memo = MemoTable::new();
    for m in 1..=5usize {
        for n in 1..=5usize {
            let state = State::new(
                Theory::Column,
                Word::ones_then_zeros(0, m).unwrap(),
                Word::ones_then_zeros(0, n).unwrap(),
                Permutation::identity(0),
            )
            .unwrap();
            let value = evaluate(&state, &mut memo).unwrap();
            let unit = value
                .swap_qt()
                .equal_up_to_monomial(&value)
                .unwrap_or_else(|| panic!("({m},{n}): no unit"));
            assert!(unit.is_positive(), "({m},{n}): unit {unit}");
        }
    }
    c.finish();
}

/// 5. Topological invariance: T(m, n) and T(n, m) have the same column
///    invariant up to a positive unit for m, n <= 5, k <= 2. This exercises
///    the permutation and cycle conventions of rules (2)-(5).
#[test]
fn criterion_05_topological_invariance() {
    let c = Criterion::start("5 topological-invariance", Duration::from_secs(300));
    let mut memo = MemoTable::new();
    let mut failures = Vec::new();
    for m in 1..=5 {
        for n in m..=5 {
            for k in 1..=2 {
                let report = invariance_verify(m, n, k, &mut memo).unwrap();
                if !report.pass {
                    failures.push((m, n, k, report.unit));
                }
            }
        }
    }
    assert!(failures.is_empty(), "invariance failures: {failures:?}");
    c.finish();
}

/// 6. HOMFLYPT specialization: for the listed coprime torus knots, the
///    reduced column invariant at T = Q^-1, with the frozen A -> -A twist,
///    matches the Hecke oracle (re-expressed in squared variables) up to a
///    unit of either sign. The twist itself is pinned by the unknot and
///    trefoil, where the unit must be positive.
#[test]
fn criterion_06_homfly_specialization() {
    let c = Criterion::start("6 homfly-specialization", Duration::from_secs(120));
    let mut memo = MemoTable::new();

    // calibration cases: positive unit required
    let unknot = homfly_compare(1, 1, &mut memo).unwrap();
    assert!(unknot.pass && unknot.unit.unwrap().is_positive());
    let trefoil = homfly_compare(2, 3, &mut memo).unwrap();
    assert!(trefoil.pass && trefoil.unit.unwrap().is_positive());

    for (m, n) in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7)] {
        let report = homfly_compare(m, n, &mut memo).unwrap();
        assert!(report.pass, "T({m},{n}): oracle mismatch");
    }
    c.finish();
}

/// 7. Knot positivity: for the same coprime pairs at k = 1 the reduced
///    invariant is a denominator-free Laurent polynomial with nonnegative
///    coefficients, and the (1 + A) division never trips.
#[test]
fn criterion_07_knot_positivity() {
    let c = Criterion::start("7 knot-positivity", Duration::from_secs(60));
    let mut memo = MemoTable::new();
    for (m, n) in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7)] {
        let value = column_invariant(m, n, 1, &mut memo).unwrap();
        let reduced = reduced_invariant(&value, 1)
            .unwrap_or_else(|e| panic!("T({m},{n}): reduction tripped: {e}"));
        assert!(reduced.is_polynomial(), "T({m},{n}): denominator survived");
        assert!(
            reduced.numerator().is_nonnegative(),
            "T({m},{n}): negative coefficient in {reduced}"
        );
    }
    c.finish();
}

/// 8. HRW ratio: the column unknot invariant equals the Gaussian factorial
///    times the HRW unknot invariant up to a positive monomial, k <= 5.
#[test]
fn criterion_08_hrw_ratio() {
    let c = Criterion::start("8 hrw-ratio", Duration::from_secs(1));
    let mut memo = MemoTable::new();
    for k in 1..=5 {
        let report = hrw_ratio_check(k, &mut memo).unwrap();
        assert!(report.pass, "k = {k}: unit {:?}", report.unit);
    }
    // spot value: the k = 2 unit is exactly Q
    let r2 = hrw_ratio_check(2, &mut memo).unwrap();
    assert_eq!(r2.unit.unwrap().monomial, q(1));
    c.finish();
}

/// 9. Engine oracle equivalence: memoized and non-memoized evaluation agree
///    on every valid state with word lengths <= 6 and |sigma| <= 3, in both
///    theories. Neither mode may ever report a cycle or blow the depth
///    bound. (States whose expansion reaches the one-empty-word shape fail
///    identically in both modes with `InvalidState`, per the dispatch
///    contract; the two modes must still agree.)
#[test]
fn criterion_09_memo_soundness() {
    let c = Criterion::start("9 memo-soundness", Duration::from_secs(120));
    let mut checked = 0usize;
    let mut evaluated = 0usize;
    for theory in [Theory::Column, Theory::Row] {
        let mut memo = MemoTable::new();
        for lv in 0..=6usize {
            for lw in 0..=6usize {
                if (lv == 0) != (lw == 0) {
                    continue; // exactly one empty word is not a valid state
                }
                for vbits in 0..(1u64 << lv) {
                    let v = word_from_mask(vbits, lv);
                    let ones = v.ones();
                    if ones > 3 {
                        continue;
                    }
                    for wbits in 0..(1u64 << lw) {
                        let w = word_from_mask(wbits, lw);
                        if w.ones() != ones {
                            continue;
                        }
                        for sigma in permutations(ones) {
                            let state = State::new(theory, v, w, sigma).unwrap();
                            let memoized = evaluate(&state, &mut memo);
                            let mut scratch = MemoTable::new();
                            let direct = evaluate_with(
                                &state,
                                &mut scratch,
                                EngineOptions {
                                    memoize: false,
                                    depth_limit: None,
                                },
                            );
                            for r in [&memoized, &direct] {
                                if let Err(e) = r {
                                    assert!(
                                        !matches!(
                                            e,
                                            torushom_core::Error::CycleDetected(_)
                                                | torushom_core::Error::DepthExceeded { .. }
                                        ),
                                        "{state}: {e}"
                                    );
                                }
                            }
                            assert_eq!(memoized, direct, "divergence at {state}");
                            if memoized.is_ok() {
                                evaluated += 1;
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    println!("  memo-soundness: {checked} states checked, {evaluated} evaluable");
    assert!(checked > 10_000 && evaluated > 9_000);
    c.finish();
}

/// 10. Hecke oracle self-validation: quadratic/braid relations, trace
///     symmetry, skein relation, and Markov stabilization on >= 50 random
///     cases each.
#[test]
fn criterion_10_hecke_self_validation() {
    let c = Criterion::start("10 hecke-self-validation", Duration::from_secs(60));
    let mut rng = Rng::new(0x7095_1d4a_9e3c_2b01);

    // braid relations, evaluated against random elements
    for _ in 0..50 {
        let n = 3 + (rng.next() % 2) as usize; // 3 or 4 strands
        let x = random_element(&mut rng, n, 6);
        let i = 1 + (rng.next() % (n as u64 - 2)) as usize;
        let lhs = x
            .mul_gen(i)
            .unwrap()
            .mul_gen(i + 1)
            .unwrap()
            .mul_gen(i)
            .unwrap();
        let rhs = x
            .mul_gen(i + 1)
            .unwrap()
            .mul_gen(i)
            .unwrap()
            .mul_gen(i + 1)
            .unwrap();
        assert_eq!(lhs, rhs);
        // quadratic relation: x s_i s_i = (q - q^-1) x s_i + x
        let twice = x.mul_gen(i).unwrap().mul_gen(i).unwrap();
        let qdiff = &LaurentPoly::monomial(q(1), BigInt::one())
            - &LaurentPoly::monomial(q(-1), BigInt::one());
        let expected = x.mul_gen(i).unwrap().scale(&qdiff).add(&x).unwrap();
        assert_eq!(twice, expected);
    }

    // trace symmetry chi(xy) = chi(yx) in H_3 and H_4
    for _ in 0..50 {
        let n = 3 + (rng.next() % 2) as usize;
        let x = random_element(&mut rng, n, 5);
        let y = random_element(&mut rng, n, 5);
        let xy = hecke::jones_trace(&x.mul(&y).unwrap()).unwrap();
        let yx = hecke::jones_trace(&y.mul(&x).unwrap()).unwrap();
        assert_eq!(xy, yx);
    }

    // skein relation at a random crossing of a random word
    for _ in 0..50 {
        let n = 2 + (rng.next() % 3) as usize; // 2..4 strands
        let word = random_word(&mut rng, n, 8);
        let pos = (rng.next() % (word.len() as u64 + 1)) as usize;
        let i = 1 + (rng.next() % (n as u64 - 1)) as i32;
        let mut plus = word.clone();
        plus.insert(pos, i);
        let mut minus = word.clone();
        minus.insert(pos, -i);
        let p_plus = hecke::closure_value(&plus, n).unwrap();
        let p_minus = hecke::closure_value(&minus, n).unwrap();
        let p_zero = hecke::closure_value(&word, n).unwrap();
        let a_inv = RatFunc::from_monomial(Monomial::var(VAR_A, -1));
        let a_mon = RatFunc::from_monomial(Monomial::var(VAR_A, 1));
        let qdiff = &LaurentPoly::monomial(q(1), BigInt::one())
            - &LaurentPoly::monomial(q(-1), BigInt::one());
        let lhs = a_inv.mul(&p_plus).sub(&a_mon.mul(&p_minus));
        assert_eq!(lhs, p_zero.mul_poly(&qdiff), "skein at {word:?} + {i}@{pos}");
    }

    // Markov stabilization, both signs
    for _ in 0..50 {
        let n = 2 + (rng.next() % 3) as usize;
        let word = random_word(&mut rng, n, 8);
        let base = hecke::closure_value(&word, n).unwrap();
        let mut pos = word.clone();
        pos.push(n as i32);
        let mut neg = word.clone();
        neg.push(-(n as i32));
        assert_eq!(base, hecke::closure_value(&pos, n + 1).unwrap());
        assert_eq!(base, hecke::closure_value(&neg, n + 1).unwrap());
    }

    // torus symmetry of the oracle itself
    for m in 1..=5usize {
        for n in m..=5usize {
            let a = hecke::closure_value(&hecke::torus_braid_word(m, n), m).unwrap();
            let b = hecke::closure_value(&hecke::torus_braid_word(n, m), n).unwrap();
            assert_eq!(a, b, "oracle torus symmetry T({m},{n})");
        }
    }
    c.finish();
}

fn word_from_mask(mask: u64, len: usize) -> Word {
    let bits: Vec<bool> = (0..len).map(|i| mask & (1 << i) != 0).collect();
    Word::from_bits(&bits).unwrap()
}

fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<u8> = (1..=n as u8).collect();
    heap_permute(&mut images, n, &mut out);
    out
}

fn heap_permute(images: &mut Vec<u8>, k: usize, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation::from_one_line(images.clone()).unwrap());
        return;
    }
    for i in 0..k {
        heap_permute(images, k - 1, out);
        if k % 2 == 0 {
            images.swap(i, k - 1);
        } else {
            images.swap(0, k - 1);
        }
    }
}

/// xorshift64*; deterministic and dependency-free
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }
}

fn random_word(rng: &mut Rng, strands: usize, max_len: usize) -> Vec<i32> {
    let len = (rng.next() % (max_len as u64 + 1)) as usize;
    (0..len)
        .map(|_| {
            let i = 1 + (rng.next() % (strands as u64 - 1)) as i32;
            if rng.next() % 2 == 0 {
                i
            } else {
                -i
            }
        })
        .collect()
}

fn random_element(rng: &mut Rng, strands: usize, max_len: usize) -> hecke::HeckeElement {
    let word = random_word(rng, strands, max_len);
    let mut x = hecke::HeckeElement::identity(strands);
    for g in word {
        x = if g > 0 {
            x.mul_gen(g as usize).unwrap()
        } else {
            x.mul_gen_inv(-g as usize).unwrap()
        };
    }
    x
}
