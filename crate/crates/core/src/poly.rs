//! Sparse bivariate polynomials, ordinary in `x` and Laurent in `y`, with
//! arbitrary-precision integer coefficients.
//!
//! Terms are kept sorted by descending x-exponent, then ascending
//! y-exponent. Zero coefficients are never stored, so two polynomials are
//! equal exactly when their term vectors are equal.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::RationalValue;

/// One monomial `coeff * x^ex * y^ey`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub ex: u32,
    pub ey: i32,
    pub coeff: BigInt,
}

type Key = (Reverse<u32>, i32);

fn key(ex: u32, ey: i32) -> Key {
    (Reverse(ex), ey)
}

impl Term {
    fn key(&self) -> Key {
        key(self.ex, self.ey)
    }

    fn canonical_cmp(&self, other: &Term) -> Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentBiPoly {
    terms: Vec<Term>,
}

impl LaurentBiPoly {
    pub fn zero() -> Self {
        LaurentBiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var_x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn var_y() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    /// Single term with an already-valid exponent pair.
    pub fn monomial(ex: u32, ey: i32, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        LaurentBiPoly {
            terms: vec![Term { ex, ey, coeff }],
        }
    }

    /// Checked monomial constructor; rejects negative x-exponents.
    pub fn mono(ex: i64, ey: i64, coeff: impl Into<BigInt>) -> Result<Self> {
        let ex_u = u32::try_from(ex).map_err(|_| Error::NegativeExponent(ex))?;
        let ey_i = i32::try_from(ey).map_err(|_| Error::parse(format!("y-exponent {ey} out of range")))?;
        Ok(Self::monomial(ex_u, ey_i, coeff))
    }

    /// Builds a canonical polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let mut acc: BTreeMap<Key, BigInt> = BTreeMap::new();
        for t in terms {
            *acc.entry(t.key()).or_default() += t.coeff;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Key, BigInt>) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((Reverse(ex), ey), coeff)| Term { ex, ey, coeff })
            .collect();
        LaurentBiPoly { terms }
    }

    /// Re-sorts and merges; the identity on canonical input.
    pub fn normalized(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned())
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|t| !t.coeff.is_zero())
            && self
                .terms
                .windows(2)
                .all(|w| w[0].canonical_cmp(&w[1]) == Ordering::Less)
    }

    /// Highest x-exponent, `None` for the zero polynomial.
    pub fn degree_x(&self) -> Option<u32> {
        self.terms.first().map(|t| t.ex)
    }

    pub fn min_ey(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.ey).min()
    }

    pub fn has_negative_ey(&self) -> bool {
        self.terms.iter().any(|t| t.ey < 0)
    }

    pub fn coeff(&self, ex: u32, ey: i32) -> BigInt {
        self.terms
            .binary_search_by(|t| t.key().cmp(&key(ex, ey)))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        LaurentBiPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.canonical_cmp(b) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(Term {
                        coeff: fix(&b.coeff),
                        ..b.clone()
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a.coeff - &b.coeff
                    } else {
                        &a.coeff + &b.coeff
                    };
                    if !c.is_zero() {
                        out.push(Term { ex: a.ex, ey: a.ey, coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|b| Term {
            coeff: fix(&b.coeff),
            ..b.clone()
        }));
        LaurentBiPoly { terms: out }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentBiPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * &c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Multiplies by `x^ex * y^ey`; order is preserved so no re-sort is needed.
    pub fn shift(&self, ex: u32, ey: i32) -> Self {
        LaurentBiPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    ex: t.ex + ex,
                    ey: t.ey + ey,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: BTreeMap<Key, BigInt> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let k = key(a.ex + b.ex, a.ey + b.ey);
                let prod = &a.coeff * &b.coeff;
                match acc.get_mut(&k) {
                    Some(c) => *c += prod,
                    None => {
                        acc.insert(k, prod);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Divides every coefficient by `c`, failing on the first term that is
    /// not an exact multiple.
    pub fn div_exact_scalar(&self, c: impl Into<BigInt>) -> Result<Self> {
        let c = c.into();
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let (q, r) = t.coeff.div_rem(&c);
            if !r.is_zero() {
                return Err(Error::NonDivisible {
                    term: LaurentBiPoly { terms: vec![t.clone()] }.to_text(),
                    divisor: c.to_string(),
                });
            }
            terms.push(Term { coeff: q, ..t.clone() });
        }
        Ok(LaurentBiPoly { terms })
    }

    /// Exact division by a divisor whose leading x-coefficient is a unit
    /// `±y^k` of the Laurent ring. Returns `InexactDivision` with the
    /// quotient and remainder when the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_monic(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision {
                quotient: q,
                remainder: r,
            })
        }
    }

    /// Division with remainder by a divisor monic in x (up to a unit `±y^k`).
    /// The remainder has x-degree below the divisor's.
    pub fn div_rem_monic(&self, d: &Self) -> Result<(Self, Self)> {
        let lead = d.terms.first().ok_or(Error::DivisionByZero)?;
        let dx = lead.ex;
        if d.terms.get(1).is_some_and(|t| t.ex == dx) || !lead.coeff.abs().is_one() {
            return Err(Error::NonMonicDivisor(d.to_text()));
        }
        let lead_ey = lead.ey;
        let lead_sign = lead.coeff.clone();

        let mut rem: BTreeMap<Key, BigInt> = self.terms.iter().map(|t| (t.key(), t.coeff.clone())).collect();
        let mut quot: BTreeMap<Key, BigInt> = BTreeMap::new();
        while let Some((&k, c)) = rem.iter().next() {
            let (Reverse(ex), ey) = k;
            if ex < dx {
                break;
            }
            let qc = c * &lead_sign;
            let (qex, qey) = (ex - dx, ey - lead_ey);
            for t in &d.terms {
                let kk = key(qex + t.ex, qey + t.ey);
                let delta = &qc * &t.coeff;
                let entry = rem.entry(kk).or_default();
                *entry -= delta;
                if entry.is_zero() {
                    rem.remove(&kk);
                }
            }
            quot.insert(key(qex, qey), qc);
        }
        Ok((Self::from_map(quot), Self::from_map(rem)))
    }

    pub fn diff_x(&self) -> Self {
        LaurentBiPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.ex > 0)
                .map(|t| Term {
                    ex: t.ex - 1,
                    ey: t.ey,
                    coeff: &t.coeff * t.ex,
                })
                .collect(),
        }
    }

    pub fn diff_y(&self) -> Self {
        // Lowering every ey by one keeps the canonical order.
        LaurentBiPoly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.ey != 0)
                .map(|t| Term {
                    ex: t.ex,
                    ey: t.ey - 1,
                    coeff: &t.coeff * t.ey,
                })
                .collect(),
        }
    }

    pub fn diff_x_n(&self, r: u32) -> Self {
        (0..r).fold(self.clone(), |p, _| p.diff_x())
    }

    pub fn diff_y_n(&self, r: u32) -> Self {
        (0..r).fold(self.clone(), |p, _| p.diff_y())
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &RationalValue, y: &RationalValue) -> Result<RationalValue> {
        if y.is_zero() && self.has_negative_ey() {
            return Err(Error::EvalAtPole);
        }
        let mut sum = RationalValue::zero();
        for t in &self.terms {
            let ex = i32::try_from(t.ex).map_err(|_| Error::NegativeExponent(i64::from(t.ex)))?;
            let v = &(&x.pow(ex)? * &y.pow(t.ey)?) * &RationalValue::integer(t.coeff.clone());
            sum = &sum + &v;
        }
        Ok(sum)
    }

    /// Plain text, e.g. `x^4 + 3x^2 y + y^2`.
    pub fn to_text(&self) -> String {
        self.render(false)
    }

    /// LaTeX, e.g. `x^{4}+3x^{2}y+y^{2}`.
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg, latex) {
                (0, true, _) => out.push('-'),
                (0, false, _) => {}
                (_, true, false) => out.push_str(" - "),
                (_, false, false) => out.push_str(" + "),
                (_, true, true) => out.push('-'),
                (_, false, true) => out.push('+'),
            }
            let mag = t.coeff.abs();
            let unit = t.ex == 0 && t.ey == 0;
            if unit || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            let mut factors: Vec<String> = Vec::new();
            for (var, e) in [("x", i64::from(t.ex)), ("y", i64::from(t.ey))] {
                match (e, latex) {
                    (0, _) => {}
                    (1, _) => factors.push(var.to_string()),
                    (e, true) => factors.push(format!("{var}^{{{e}}}")),
                    (e, false) => factors.push(format!("{var}^{e}")),
                }
            }
            // LaTeX glues `x^{a}y^{b}` but keeps `x y` apart after a bare x.
            let sep = if latex && factors.first().is_some_and(|f| f.contains('^')) { "" } else { " " };
            out.push_str(&factors.join(sep));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

impl fmt::Display for LaurentBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<i64> for LaurentBiPoly {
    fn from(c: i64) -> Self {
        LaurentBiPoly::constant(c)
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<&LaurentBiPoly> for &LaurentBiPoly {
            type Output = LaurentBiPoly;
            fn $method(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
                LaurentBiPoly::$method(self, rhs)
            }
        }
        impl $imp<LaurentBiPoly> for LaurentBiPoly {
            type Output = LaurentBiPoly;
            fn $method(self, rhs: LaurentBiPoly) -> LaurentBiPoly {
                LaurentBiPoly::$method(&self, &rhs)
            }
        }
        impl $imp<&LaurentBiPoly> for LaurentBiPoly {
            type Output = LaurentBiPoly;
            fn $method(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
                LaurentBiPoly::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn neg(self) -> LaurentBiPoly {
        LaurentBiPoly::neg(self)
    }
}

impl Neg for LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn neg(self) -> LaurentBiPoly {
        LaurentBiPoly::neg(&self)
    }
}

// JSON form: {"terms":[{"ex":2,"ey":0,"c":"1"},...]}

struct TermRef<'a>(&'a Term);

impl Serialize for TermRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 3)?;
        st.serialize_field("ex", &self.0.ex)?;
        st.serialize_field("ey", &self.0.ey)?;
        st.serialize_field("c", &self.0.coeff.to_string())?;
        st.end()
    }
}

struct TermList<'a>(&'a [Term]);

impl Serialize for TermList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for t in self.0 {
            seq.serialize_element(&TermRef(t))?;
        }
        seq.end()
    }
}

impl Serialize for LaurentBiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentBiPoly", 1)?;
        st.serialize_field("terms", &TermList(&self.terms))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    ex: u32,
    ey: i32,
    #[serde(deserialize_with = "decimal_coeff")]
    c: BigInt,
}

fn decimal_coeff<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    let valid = {
        let digits = s.strip_prefix('-').unwrap_or(&s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid {
        return Err(de::Error::custom(format!("`{s}` is not a decimal integer")));
    }
    let c: BigInt = s.parse().map_err(de::Error::custom)?;
    if c.is_zero() {
        return Err(de::Error::custom("zero coefficient"));
    }
    Ok(c)
}

/// Reads the term array, rejecting anything out of canonical order as soon
/// as it appears so the parser can report where.
struct CanonicalTerms(Vec<Term>);

impl<'de> Deserialize<'de> for CanonicalTerms {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CanonicalTerms;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of terms in canonical order")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut terms: Vec<Term> = Vec::new();
                while let Some(raw) = seq.next_element::<RawTerm>()? {
                    let t = Term {
                        ex: raw.ex,
                        ey: raw.ey,
                        coeff: raw.c,
                    };
                    if let Some(prev) = terms.last() {
                        match prev.canonical_cmp(&t) {
                            Ordering::Less => {}
                            Ordering::Equal => {
                                return Err(de::Error::custom(format!(
                                    "duplicate exponent pair ({}, {})",
                                    t.ex, t.ey
                                )))
                            }
                            Ordering::Greater => {
                                return Err(de::Error::custom(format!(
                                    "term ({}, {}) out of canonical order",
                                    t.ex, t.ey
                                )))
                            }
                        }
                    }
                    terms.push(t);
                }
                Ok(CanonicalTerms(terms))
            }
        }
        d.deserialize_seq(V)
    }
}

impl<'de> Deserialize<'de> for LaurentBiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentBiPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object {\"terms\": [...]}")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
                let mut terms = None;
                while let Some(k) = map.next_key::<String>()? {
                    match k.as_str() {
                        "terms" if terms.is_none() => terms = Some(map.next_value::<CanonicalTerms>()?.0),
                        "terms" => return Err(de::Error::duplicate_field("terms")),
                        other => return Err(de::Error::unknown_field(other, &["terms"])),
                    }
                }
                let terms = terms.ok_or_else(|| de::Error::missing_field("terms"))?;
                Ok(LaurentBiPoly { terms })
            }
        }
        d.deserialize_struct("LaurentBiPoly", &["terms"], V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentBiPoly {
        LaurentBiPoly::var_x()
    }
    fn y() -> LaurentBiPoly {
        LaurentBiPoly::var_y()
    }
    fn m(ex: u32, ey: i32, c: i64) -> LaurentBiPoly {
        LaurentBiPoly::monomial(ex, ey, c)
    }

    #[test]
    fn constructors() {
        assert_eq!(LaurentBiPoly::mono(0, 0, 1).unwrap(), LaurentBiPoly::one());
        assert_eq!(LaurentBiPoly::mono(1, 0, 1).unwrap(), x());
        let inv = LaurentBiPoly::mono(0, -1, 1).unwrap();
        assert_eq!(inv.terms()[0].ey, -1);
        assert_eq!(LaurentBiPoly::mono(-1, 0, 1), Err(Error::NegativeExponent(-1)));
        assert!(LaurentBiPoly::mono(3, 3, 0).unwrap().is_zero());
    }

    #[test]
    fn ring_ops() {
        let p = m(2, 0, 1) + y();
        assert_eq!(p.to_text(), "x^2 + y");
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(p.scale(3).to_text(), "3x^2 + 3y");
        assert_eq!((x() * x()), m(2, 0, 1));
        assert_eq!(LaurentBiPoly::one() * &p, p);
        let f4 = x() * &p + y() * x();
        assert_eq!(f4.to_text(), "x^3 + 2x y");
    }

    #[test]
    fn canonical_order() {
        let p = LaurentBiPoly::from_terms([
            Term { ex: 0, ey: 2, coeff: 1.into() },
            Term { ex: 2, ey: 1, coeff: 3.into() },
            Term { ex: 4, ey: 0, coeff: 1.into() },
            Term { ex: 0, ey: -1, coeff: 5.into() },
            Term { ex: 2, ey: 1, coeff: (-3).into() },
        ]);
        let order: Vec<_> = p.terms().iter().map(|t| (t.ex, t.ey)).collect();
        assert_eq!(order, vec![(4, 0), (0, -1), (0, 2)]);
        assert!(p.is_canonical());
        assert_eq!(p.normalized(), p);
    }

    #[test]
    fn scalar_division() {
        assert_eq!(m(1, 0, 2).div_exact_scalar(2).unwrap(), x());
        let p = m(3, 0, 6) + m(1, 1, 12);
        assert_eq!(p.div_exact_scalar(3).unwrap(), m(3, 0, 2) + m(1, 1, 4));
        assert!(matches!(x().div_exact_scalar(2), Err(Error::NonDivisible { .. })));
        assert_eq!(x().div_exact_scalar(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn polynomial_division() {
        let d = m(2, 0, 1) + m(0, 1, 4);
        assert_eq!(d.div_exact(&d).unwrap(), LaurentBiPoly::one());
        // 3F3 + yF1 - 2xF2 = 3x^2 + 3y + y - 2x^2
        let num = (m(2, 0, 1) + y()).scale(3) + y() - (x() * x()).scale(2);
        assert_eq!(num, d);
        assert_eq!(num.div_exact(&d).unwrap(), LaurentBiPoly::one());
        match m(3, 0, 1).div_exact(&d) {
            Err(Error::InexactDivision { quotient, remainder }) => {
                assert_eq!(quotient, x());
                assert_eq!(remainder, m(1, 1, -4));
            }
            other => panic!("expected InexactDivision, got {other:?}"),
        }
        assert!(matches!(x().div_exact(&m(2, 0, 2)), Err(Error::NonMonicDivisor(_))));
        assert!(matches!(x().div_exact(&(m(1, 0, 1) + m(1, 1, 1))), Err(Error::NonMonicDivisor(_))));
        assert_eq!(x().div_exact(&LaurentBiPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn unit_leading_coefficient_in_y() {
        // divisor -y x + 1, leading coefficient is the Laurent unit -y
        let d = m(1, 1, -1) + LaurentBiPoly::one();
        let q = m(2, -3, 5) + m(0, 2, 1);
        let p = &q * &d;
        assert_eq!(p.div_exact(&d).unwrap(), q);
    }

    #[test]
    fn derivatives() {
        let f5 = m(4, 0, 1) + m(2, 1, 3) + m(0, 2, 1);
        assert_eq!(f5.diff_x(), m(3, 0, 4) + m(1, 1, 6));
        assert_eq!(f5.diff_y(), m(2, 0, 3) + m(0, 1, 2));
        assert_eq!(m(0, -1, 1).diff_y(), m(0, -2, -1));
        assert!(LaurentBiPoly::constant(7).diff_x().is_zero());
        assert_eq!(f5.diff_x_n(4), LaurentBiPoly::constant(24));
    }

    #[test]
    fn evaluation() {
        let one = RationalValue::one();
        let p = m(2, 0, 1) + y();
        assert_eq!(p.eval(&one, &one).unwrap(), RationalValue::integer(2));
        let f6 = m(5, 0, 1) + m(3, 1, 4) + m(1, 2, 3);
        assert_eq!(f6.eval(&one, &one).unwrap(), RationalValue::integer(8));
        assert_eq!(m(0, -1, 1).eval(&one, &RationalValue::zero()), Err(Error::EvalAtPole));
        let half: RationalValue = "1/2".parse().unwrap();
        assert_eq!(m(0, -2, 3).eval(&one, &half).unwrap(), RationalValue::integer(12));
    }

    #[test]
    fn text_and_latex() {
        let f5 = m(4, 0, 1) + m(2, 1, 3) + m(0, 2, 1);
        assert_eq!(f5.to_text(), "x^4 + 3x^2 y + y^2");
        assert_eq!(f5.to_latex(), "x^{4}+3x^{2}y+y^{2}");
        let fm2 = m(1, -2, -1);
        assert_eq!(fm2.to_text(), "-x y^-2");
        assert_eq!(fm2.to_latex(), "-x y^{-2}");
        assert_eq!((m(3, 0, 4) + m(1, 1, 6)).to_text(), "4x^3 + 6x y");
        assert_eq!((m(2, 0, 1) - LaurentBiPoly::constant(7)).to_latex(), "x^{2}-7");
        assert_eq!(LaurentBiPoly::zero().to_text(), "0");
        assert_eq!(LaurentBiPoly::constant(-1).to_text(), "-1");
    }

    #[test]
    fn json_exact_format() {
        let p = m(2, 0, 1) + y();
        assert_eq!(p.to_json(), r#"{"terms":[{"ex":2,"ey":0,"c":"1"},{"ex":0,"ey":1,"c":"1"}]}"#);
        assert_eq!(LaurentBiPoly::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(LaurentBiPoly::zero().to_json(), r#"{"terms":[]}"#);
    }

    #[test]
    fn json_rejects_invalid() {
        let bad = [
            r#"{"terms":[{"ex":-1,"ey":0,"c":"1"}]}"#,
            r#"{"terms":[{"ex":0,"ey":0,"c":"0"}]}"#,
            r#"{"terms":[{"ex":0,"ey":0,"c":"1.5"}]}"#,
            r#"{"terms":[{"ex":0,"ey":0,"c":1}]}"#,
            r#"{"terms":[{"ex":0,"ey":1,"c":"1"},{"ex":2,"ey":0,"c":"1"}]}"#,
            r#"{"terms":[{"ex":1,"ey":0,"c":"1"},{"ex":1,"ey":0,"c":"2"}]}"#,
            r#"{"terms":[{"ex":1,"ey":0,"c":"1","z":0}]}"#,
            r#"{"terms":[]"#,
            r#"{}"#,
        ];
        for s in bad {
            match LaurentBiPoly::from_json(s) {
                Err(Error::Parse { line, column, .. }) => assert!(line >= 1 && column >= 1, "{s}"),
                other => panic!("{s} parsed as {other:?}"),
            }
        }
    }
}
