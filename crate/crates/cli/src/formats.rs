//! Text, JSON, and LaTeX renderings of values and reports.
//!
//! The text and JSON emitters round-trip: `parse_text(render_text(v)) == v`
//! and likewise through serde. Term and factor orderings are lexicographic
//! everywhere, so reruns are byte-identical. LaTeX output is one-way.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use torushom_core::invariants::InvariantReport;
use torushom_core::poly::{LaurentPoly, Monomial};
use torushom_core::ratfunc::{RatFunc, Sign, Unit};
use torushom_core::symmetric::{State, Theory};
use torushom_core::{Error, Result};

/// Wire form of a rational function:
/// `{"num": [[e1,e2,e3,"coeff"],..], "den": [[d1,d2,d3,mult],..]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RatFuncJson {
    pub num: Vec<(i32, i32, i32, String)>,
    pub den: Vec<(i32, i32, i32, u32)>,
}

impl From<&RatFunc> for RatFuncJson {
    fn from(value: &RatFunc) -> Self {
        RatFuncJson {
            num: value
                .numerator()
                .terms()
                .map(|(m, c)| (m.0[0], m.0[1], m.0[2], c.to_string()))
                .collect(),
            den: value
                .denominator()
                .map(|(d, mult)| (d.0[0], d.0[1], d.0[2], mult))
                .collect(),
        }
    }
}

impl RatFuncJson {
    pub fn into_ratfunc(&self) -> Result<RatFunc> {
        let mut terms = Vec::with_capacity(self.num.len());
        for (a, q, t, c) in &self.num {
            let coeff = BigInt::from_str(c)
                .map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))?;
            terms.push((Monomial::new(*a, *q, *t), coeff));
        }
        let mut factors = Vec::new();
        for (a, q, t, mult) in &self.den {
            for _ in 0..*mult {
                factors.push(Monomial::new(*a, *q, *t));
            }
        }
        RatFunc::new(LaurentPoly::from_terms(terms), factors)
    }
}

/// Wire form of a unit `+/- x^m`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct UnitJson {
    pub sign: String,
    pub monomial: (i32, i32, i32),
}

impl From<&Unit> for UnitJson {
    fn from(u: &Unit) -> Self {
        UnitJson {
            sign: match u.sign {
                Sign::Plus => "+".to_string(),
                Sign::Minus => "-".to_string(),
            },
            monomial: (u.monomial.0[0], u.monomial.0[1], u.monomial.0[2]),
        }
    }
}

/// Wire form of an invariant report.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ReportJson {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub theory: String,
    pub value: RatFuncJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<RatFuncJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_vs_mirror: Option<UnitJson>,
    pub note: String,
}

impl From<&InvariantReport> for ReportJson {
    fn from(r: &InvariantReport) -> Self {
        ReportJson {
            m: r.spec.m,
            n: r.spec.n,
            k: r.spec.k,
            theory: r.spec.theory.name().to_string(),
            value: (&r.value).into(),
            reduced: r.reduced.as_ref().map(|v| v.into()),
            unit_vs_mirror: r.unit_vs_mirror.as_ref().map(|u| u.into()),
            note: r.note.clone(),
        }
    }
}

/// One memo-cache line:
/// `{"theory":..,"v":..,"w":..,"sigma":..,"value":..}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MemoRecordJson {
    pub theory: String,
    pub v: String,
    pub w: String,
    pub sigma: String,
    pub value: RatFuncJson,
}

impl MemoRecordJson {
    pub fn from_entry(state: &State, value: &RatFunc) -> Self {
        MemoRecordJson {
            theory: state.theory().name().to_string(),
            v: state.v().to_string(),
            w: state.w().to_string(),
            sigma: state.sigma().to_string(),
            value: value.into(),
        }
    }

    pub fn into_entry(&self) -> Result<(State, RatFunc)> {
        let theory: Theory = self.theory.parse()?;
        let state = State::new(
            theory,
            self.v.parse()?,
            self.w.parse()?,
            self.sigma.parse()?,
        )?;
        Ok((state, self.value.into_ratfunc()?))
    }
}

pub fn render_json(value: &RatFunc) -> String {
    serde_json::to_string(&RatFuncJson::from(value)).expect("serialization cannot fail")
}

pub fn parse_json(text: &str) -> Result<RatFunc> {
    let dto: RatFuncJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad value JSON: {e}")))?;
    dto.into_ratfunc()
}

/// The canonical text rendering, identical to the core `Display` form:
/// `num` or `(num) / ((1 - Q)^2 (1 - T))`.
pub fn render_text(value: &RatFunc) -> String {
    value.to_string()
}

pub fn render_latex(value: &RatFunc) -> String {
    let num = latex_poly(value.numerator());
    let den: Vec<String> = value
        .denominator()
        .map(|(d, mult)| {
            let base = format!("\\left(1 - {}\\right)", latex_monomial(d, true));
            if mult == 1 {
                base
            } else {
                format!("{base}^{{{mult}}}")
            }
        })
        .collect();
    if den.is_empty() {
        num
    } else {
        format!("\\frac{{{num}}}{{{}}}", den.join(" "))
    }
}

fn latex_monomial(m: &Monomial, bare_one: bool) -> String {
    if m.is_one() {
        return if bare_one { "1".to_string() } else { String::new() };
    }
    let names = ["A", "Q", "T"];
    let mut out = String::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            out.push_str(names[i]);
        } else {
            out.push_str(&format!("{}^{{{e}}}", names[i]));
        }
    }
    out
}

fn latex_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c < &BigInt::from(0);
        let abs = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = latex_monomial(m, false);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs == BigInt::from(1) {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs} {mono}"));
        }
    }
    out
}

// ---- text parser ----

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn next(&mut self) -> Result<Tok> {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.input.len() {
            return Ok(Tok::End);
        }
        let c = self.input[self.pos];
        self.pos += 1;
        Ok(match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'A' => Tok::Var(0),
            b'Q' => Tok::Var(1),
            b'T' => Tok::Var(2),
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                Tok::Int(BigInt::from_str(text).unwrap())
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{}'",
                    other as char
                )))
            }
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    look: Tok,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Result<Self> {
        let mut lexer = Lexer::new(input);
        let look = lexer.next()?;
        Ok(Parser { lexer, look })
    }

    fn advance(&mut self) -> Result<Tok> {
        let mut tok = self.lexer.next()?;
        std::mem::swap(&mut self.look, &mut tok);
        Ok(tok)
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.look == tok {
            self.advance()?;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {tok:?}, found {:?}",
                self.look
            )))
        }
    }

    // signed exponent after '^'
    fn exponent(&mut self) -> Result<i32> {
        let neg = if self.look == Tok::Minus {
            self.advance()?;
            true
        } else {
            false
        };
        match self.advance()? {
            Tok::Int(v) => {
                let e: i32 = v
                    .to_string()
                    .parse()
                    .map_err(|_| Error::Parse("exponent overflow".into()))?;
                Ok(if neg { -e } else { e })
            }
            other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        }
    }

    // var ['^' int] ('*' var ['^' int])*
    fn monomial_tail(&mut self, first_var: usize) -> Result<Monomial> {
        let mut m = [0i32; 3];
        let mut var = first_var;
        loop {
            let e = if self.look == Tok::Caret {
                self.advance()?;
                self.exponent()?
            } else {
                1
            };
            m[var] += e;
            if self.look == Tok::Star {
                self.advance()?;
                match self.advance()? {
                    Tok::Var(v) => var = v,
                    other => {
                        return Err(Error::Parse(format!(
                            "expected variable after '*', found {other:?}"
                        )))
                    }
                }
            } else {
                break;
            }
        }
        Ok(Monomial(m))
    }

    // magnitude ['*' monomial] | monomial
    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        match self.advance()? {
            Tok::Int(c) => {
                if self.look == Tok::Star {
                    self.advance()?;
                    match self.advance()? {
                        Tok::Var(v) => Ok((self.monomial_tail(v)?, c)),
                        other => Err(Error::Parse(format!(
                            "expected variable after coefficient, found {other:?}"
                        ))),
                    }
                } else {
                    Ok((Monomial::ONE, c))
                }
            }
            Tok::Var(v) => Ok((self.monomial_tail(v)?, BigInt::from(1))),
            other => Err(Error::Parse(format!("expected term, found {other:?}"))),
        }
    }

    // [-] term (('+'|'-') term)*
    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
        let mut negate = false;
        if self.look == Tok::Minus {
            self.advance()?;
            negate = true;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { -c } else { c }));
            match self.look {
                Tok::Plus => {
                    self.advance()?;
                    negate = false;
                }
                Tok::Minus => {
                    self.advance()?;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    fn ratfunc(&mut self) -> Result<RatFunc> {
        if self.look != Tok::LParen {
            // bare polynomial
            let p = self.poly()?;
            self.expect(Tok::End)?;
            return Ok(RatFunc::from_poly(p));
        }
        // either "(num) / (factors)" or a parenthesized polynomial
        self.advance()?;
        let num = self.poly()?;
        self.expect(Tok::RParen)?;
        if self.look == Tok::End {
            return Ok(RatFunc::from_poly(num));
        }
        self.expect(Tok::Slash)?;
        self.expect(Tok::LParen)?;
        let mut factors: Vec<Monomial> = Vec::new();
        while self.look == Tok::LParen {
            self.advance()?;
            let base = self.poly()?;
            self.expect(Tok::RParen)?;
            let mult = if self.look == Tok::Caret {
                self.advance()?;
                let e = self.exponent()?;
                if e < 1 {
                    return Err(Error::Parse("factor multiplicity must be positive".into()));
                }
                e as u32
            } else {
                1
            };
            let d = binomial_exponent(&base)?;
            for _ in 0..mult {
                factors.push(d);
            }
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::End)?;
        RatFunc::new(num, factors)
    }
}

/// Recover `d` from a parsed denominator base `1 - x^d`.
fn binomial_exponent(base: &LaurentPoly) -> Result<Monomial> {
    let terms: Vec<_> = base.terms().collect();
    if terms.len() == 2 {
        let (m0, c0) = terms[0];
        let (m1, c1) = terms[1];
        if m0.is_one() && c0 == &BigInt::from(1) && c1 == &BigInt::from(-1) {
            return Ok(*m1);
        }
    }
    Err(Error::Parse(format!(
        "denominator factor is not of the form 1 - x^d: {base}"
    )))
}

pub fn parse_text(input: &str) -> Result<RatFunc> {
    Parser::new(input)?.ratfunc()
}

#[cfg(test)]
mod tests {
    use super::*;
    use torushom_core::poly::VAR_Q;

    fn sample() -> RatFunc {
        let num = LaurentPoly::from_terms([
            (Monomial::new(0, 0, 0), BigInt::from(1)),
            (Monomial::new(1, -2, 0), BigInt::from(-3)),
            (Monomial::new(2, 0, 1), BigInt::from(7)),
        ]);
        RatFunc::new(
            num,
            [
                Monomial::var(VAR_Q, 1),
                Monomial::var(VAR_Q, 1),
                Monomial::new(0, -1, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn text_roundtrip() {
        for value in [
            sample(),
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::from_monomial(Monomial::new(-1, 2, -3)),
        ] {
            let text = render_text(&value);
            let back = parse_text(&text).unwrap();
            assert_eq!(back, value, "text was: {text}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let value = sample();
        let json = render_json(&value);
        let back = parse_json(&json).unwrap();
        assert_eq!(back, value);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_text("1 +").is_err());
        assert!(parse_text("(1").is_err());
        assert!(parse_text("x + 1").is_err());
        assert!(parse_text("(1) / ((2 - Q))").is_err());
    }

    #[test]
    fn latex_shapes() {
        let value = sample();
        let latex = render_latex(&value);
        assert!(latex.starts_with("\\frac{"));
        assert!(latex.contains("\\left(1 - Q\\right)^{2}"));
        assert_eq!(render_latex(&RatFunc::one()), "1");
    }

    #[test]
    fn memo_record_roundtrip() {
        use torushom_core::recursion::{evaluate, MemoTable};
        use torushom_core::symmetric::Permutation;
        let state = State::new(
            Theory::Column,
            "110".parse().unwrap(),
            "1010".parse().unwrap(),
            Permutation::from_one_line(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let mut memo = MemoTable::new();
        let value = evaluate(&state, &mut memo).unwrap();
        let record = MemoRecordJson::from_entry(&state, &value);
        let line = serde_json::to_string(&record).unwrap();
        let parsed: MemoRecordJson = serde_json::from_str(&line).unwrap();
        let (state2, value2) = parsed.into_entry().unwrap();
        assert_eq!(state2, state);
        assert_eq!(value2, value);
    }
}
