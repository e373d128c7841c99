//! Exact arithmetic: arbitrary-precision rationals, Laurent polynomials in a
//! single variable `q`, and the q-series primitives built on them
//! (shifted q-factorials and hyper q-factorials).
//!
//! Every value in this crate that represents a generating function or a
//! formula side is a [`LaurentPoly`]. There is no floating point anywhere;
//! equality of polynomials is structural equality of their normalized term
//! maps.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Arbitrary-precision rational number. Stored reduced with positive
/// denominator; zero is `0/1`. These invariants are maintained by the
/// `num-rational` constructors.
pub type Rational = num_rational::BigRational;

/// Largest allowed |exponent| of `q`. Operations that would exceed this
/// return [`ExactError::ExponentOverflow`] instead of wrapping.
pub const MAX_QEXP: i64 = 1 << 30;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ExactError {
    #[error("polynomial division has nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("q-exponent {0} exceeds the configured bound")]
    ExponentOverflow(i64),
    #[error("invalid rational literal: {0}")]
    BadRational(String),
}

/// Parse a rational literal of the form `num`, `num/den` or `-num/den`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let mk_err = || ExactError::BadRational(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
        let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
        if d.is_zero() {
            return Err(mk_err());
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(Rational::from_integer(n))
    }
}

/// Render a rational as `num` or `num/den` with the reduced representation.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn check_exp(e: i64) -> Result<i64, ExactError> {
    if e.abs() > MAX_QEXP {
        Err(ExactError::ExponentOverflow(e))
    } else {
        Ok(e)
    }
}

/// A single term `coeff * q^qexp` with a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMonomial {
    pub coeff: Rational,
    pub qexp: i64,
}

impl LaurentMonomial {
    pub fn new(coeff: Rational, qexp: i64) -> Self {
        assert!(!coeff.is_zero(), "monomial coefficient must be nonzero");
        Self { coeff, qexp }
    }

    /// `c * q^0` for an integer constant.
    pub fn constant(c: i64) -> Self {
        Self::new(Rational::from_integer(BigInt::from(c)), 0)
    }

    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Self::new(Rational::one(), e)
    }

    pub fn one() -> Self {
        Self::q_power(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.qexp + other.qexp)
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self::new(self.coeff.clone(), self.qexp + e)
    }

    pub fn inv(&self) -> Self {
        Self::new(Rational::one() / &self.coeff, -self.qexp)
    }

    pub fn is_one(&self) -> bool {
        self.qexp == 0 && self.coeff.is_one()
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.coeff.clone(), self.qexp)
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

/// Exact Laurent polynomial in `q` over [`Rational`] coefficients.
///
/// Terms are a sorted map from exponent to nonzero coefficient; the zero
/// polynomial is the empty map. All constructors normalize, so structural
/// equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// The single term `c * q^e` (zero `c` yields the zero polynomial).
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            check_exp(e).expect("monomial exponent over bound");
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// Build from any (exponent, coefficient) pairs, merging duplicates and
    /// stripping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Result<Self, ExactError> {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in it {
            check_exp(e)?;
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        Ok(Self { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(Rational::is_one) == Some(true)
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Ascending-exponent iteration over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// If the polynomial is a single term, return it.
    pub fn as_monomial(&self) -> Option<LaurentMonomial> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some(LaurentMonomial::new(c.clone(), *e))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Self { terms }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            let entry = self.terms.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        poly_mul(self, other)
    }

    /// Add `c * q^e * other` in place.
    pub fn add_scaled(&mut self, other: &Self, c: &Rational, e: i64) {
        if c.is_zero() {
            return;
        }
        for (oe, oc) in &other.terms {
            let ne = check_exp(oe + e).expect("exponent over bound");
            let entry = self.terms.entry(ne).or_insert_with(Rational::zero);
            *entry += oc * c;
            if entry.is_zero() {
                self.terms.remove(&ne);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(oe, c)| (check_exp(oe + e).expect("exponent over bound"), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitute `q -> q^b`.
    pub fn substitute_power(&self, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (check_exp(e * b).expect("exponent over bound"), c.clone()))
                .collect(),
        }
    }

    /// Canonical text form: JSON array of `[exp, "num/den"]` pairs in
    /// ascending exponent order. Used verbatim by the CLI report schema.
    pub fn to_canonical_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    serde_json::Value::Array(vec![
                        serde_json::Value::from(*e),
                        serde_json::Value::from(rational_to_string(c)),
                    ])
                })
                .collect(),
        )
    }

    /// Parse the canonical `[[exp,"num/den"],...]` form.
    pub fn from_canonical_json(v: &serde_json::Value) -> Result<Self, ExactError> {
        let arr = v
            .as_array()
            .ok_or_else(|| ExactError::BadRational(v.to_string()))?;
        let mut pairs = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| ExactError::BadRational(item.to_string()))?;
            let e = pair[0]
                .as_i64()
                .ok_or_else(|| ExactError::BadRational(pair[0].to_string()))?;
            let c = parse_rational(
                pair[1]
                    .as_str()
                    .ok_or_else(|| ExactError::BadRational(pair[1].to_string()))?,
            )?;
            pairs.push((e, c));
        }
        Self::from_terms(pairs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = rational_to_string(&mag);
            match (*e, coeff_str.as_str()) {
                (0, _) => write!(f, "{coeff_str}")?,
                (1, "1") => write!(f, "q")?,
                (1, _) => write!(f, "{coeff_str}*q")?,
                (_, "1") => write!(f, "q^{e}")?,
                _ => write!(f, "{coeff_str}*q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Exact product of two Laurent polynomials.
pub fn poly_mul(p: &LaurentPoly, r: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in &p.terms {
        out.add_scaled(r, c, *e);
    }
    out
}

/// Exact quotient `p / d`; errors with [`ExactError::NotDivisible`] when the
/// division leaves a remainder, and [`ExactError::DivisionByZero`] for d = 0.
pub fn poly_exact_div(p: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, ExactError> {
    if d.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    // Normalize both sides to ordinary polynomials with nonzero constant
    // term; p/d is exact iff the normalized division leaves no remainder.
    let pmin = p.min_exp().unwrap();
    let dmin = d.min_exp().unwrap();
    let mut rem = p.shift(-pmin);
    let dd = d.shift(-dmin);
    let dmax = dd.max_exp().unwrap();
    let dlead = dd.coeff(dmax);
    let mut quot = LaurentPoly::zero();
    while !rem.is_zero() {
        let re = rem.max_exp().unwrap();
        if re < dmax {
            return Err(ExactError::NotDivisible);
        }
        let qc = rem.coeff(re) / &dlead;
        let qe = re - dmax;
        quot.add_scaled(&LaurentPoly::one(), &qc, qe);
        rem.add_scaled(&dd, &(-qc), qe);
    }
    Ok(quot.shift(pmin - dmin))
}

/// Shifted q-factorial `(x; q^b)_k = prod_{j=0..k-1} (1 - x * q^{b*j})`.
///
/// `base_exp` substitutes `q -> q^b` in the stepping, so `(x; q^2)_k` is
/// `qpoch(x, 2, k)`. By convention the empty product (k = 0) is 1.
pub fn qpoch(x: &LaurentMonomial, base_exp: i64, k: u64) -> LaurentPoly {
    assert!(base_exp >= 1, "base exponent must be positive");
    let mut out = LaurentPoly::one();
    for j in 0..k {
        let step = x.shift(base_exp * j as i64);
        let factor = LaurentPoly::one().sub(&step.to_poly());
        out = out.mul(&factor);
    }
    out
}

/// Hyper q-factorial `H_q(n) = prod_{k=1..n-1} (q; q)_k`, with `q -> q^b`
/// when `base_exp = b`; `H(1) = 1`.
pub fn hyperq(n: u64, base_exp: i64) -> LaurentPoly {
    assert!(n >= 1, "hyperq requires n >= 1");
    let qb = LaurentMonomial::q_power(base_exp);
    let mut out = LaurentPoly::one();
    for k in 1..n {
        out = out.mul(&qpoch(&qb, base_exp, k));
    }
    out
}

/// Exact value of `p` at a nonzero rational point.
pub fn eval_at(p: &LaurentPoly, q0: &Rational) -> Rational {
    assert!(!q0.is_zero(), "cannot evaluate a Laurent polynomial at 0");
    let mut acc = Rational::zero();
    for (e, c) in p.terms() {
        let pw = if e >= 0 {
            num_traits::pow::Pow::pow(q0.clone(), e as u64)
        } else {
            Rational::one() / num_traits::pow::Pow::pow(q0.clone(), (-e) as u64)
        };
        acc += c * pw;
    }
    acc
}

/// Binomial coefficient as i64 (small arguments only).
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_power(1)
    }

    fn int(n: i64) -> LaurentPoly {
        LaurentPoly::from_int(n)
    }

    #[test]
    fn mul_examples() {
        // (1-q)(1+q) = 1 - q^2
        let a = int(1).sub(&q());
        let b = int(1).add(&q());
        assert_eq!(a.mul(&b), int(1).sub(&LaurentPoly::q_power(2)));
        // p * 1 = p
        assert_eq!(a.mul(&LaurentPoly::one()), a);
        // q^-1 * q = 1
        assert_eq!(
            LaurentPoly::q_power(-1).mul(&LaurentPoly::q_power(1)),
            LaurentPoly::one()
        );
    }

    #[test]
    fn exact_div_examples() {
        let one_minus_q = int(1).sub(&q());
        let one_minus_q2 = int(1).sub(&LaurentPoly::q_power(2));
        assert_eq!(
            poly_exact_div(&one_minus_q2, &one_minus_q).unwrap(),
            int(1).add(&q())
        );
        let p = int(3).add(&LaurentPoly::q_power(-2)).mul(&one_minus_q2);
        assert_eq!(poly_exact_div(&p, &p).unwrap(), LaurentPoly::one());
        assert_eq!(
            poly_exact_div(&one_minus_q, &one_minus_q2),
            Err(ExactError::NotDivisible)
        );
        assert_eq!(
            poly_exact_div(&one_minus_q, &LaurentPoly::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn qpoch_examples() {
        let x = LaurentMonomial::q_power(5);
        assert_eq!(qpoch(&x, 1, 0), LaurentPoly::one());
        // (q; q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let p = qpoch(&LaurentMonomial::q_power(1), 1, 2);
        let expect = LaurentPoly::from_terms(vec![
            (0, Rational::one()),
            (1, -Rational::one()),
            (2, -Rational::one()),
            (3, Rational::one()),
        ])
        .unwrap();
        assert_eq!(p, expect);
        // (q^3; q^2)_2 = (1-q^3)(1-q^5)
        let p = qpoch(&LaurentMonomial::q_power(3), 2, 2);
        let expect = int(1)
            .sub(&LaurentPoly::q_power(3))
            .mul(&int(1).sub(&LaurentPoly::q_power(5)));
        assert_eq!(p, expect);
    }

    #[test]
    fn hyperq_examples() {
        assert_eq!(hyperq(1, 1), LaurentPoly::one());
        // H_q(3) = (q;q)_1 (q;q)_2 = (1-q)^2 (1-q^2)
        let expect = int(1)
            .sub(&q())
            .pow(2)
            .mul(&int(1).sub(&LaurentPoly::q_power(2)));
        assert_eq!(hyperq(3, 1), expect);
        // H_{q^2}(2) = 1 - q^2
        assert_eq!(hyperq(2, 2), int(1).sub(&LaurentPoly::q_power(2)));
    }

    #[test]
    fn eval_examples() {
        let p = int(1).add(&q()).pow(2);
        assert_eq!(
            eval_at(&p, &Rational::one()),
            Rational::from_integer(4.into())
        );
        assert_eq!(
            eval_at(
                &LaurentPoly::q_power(-1),
                &Rational::from_integer(2.into())
            ),
            Rational::new(1.into(), 2.into())
        );
        assert_eq!(
            eval_at(&LaurentPoly::zero(), &Rational::from_integer(7.into())),
            Rational::zero()
        );
    }

    #[test]
    fn canonical_json_roundtrip() {
        let p = LaurentPoly::from_terms(vec![
            (-2, Rational::new(3.into(), 7.into())),
            (5, -Rational::one()),
        ])
        .unwrap();
        let j = p.to_canonical_json();
        assert_eq!(j.to_string(), "[[-2,\"3/7\"],[5,\"-1\"]]");
        assert_eq!(LaurentPoly::from_canonical_json(&j).unwrap(), p);
    }

    #[test]
    fn pochhammer_recurrence() {
        let x = LaurentMonomial::new(Rational::new(2.into(), 3.into()), -1);
        for b in [1i64, 2] {
            for k in 0..5u64 {
                let step = x.shift(b * k as i64).to_poly();
                let lhs = qpoch(&x, b, k + 1);
                let rhs = qpoch(&x, b, k).mul(&LaurentPoly::one().sub(&step));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn hyperq_recurrence() {
        for b in [1i64, 2] {
            for n in 2..6u64 {
                let lhs = hyperq(n, b);
                let rhs = hyperq(n - 1, b).mul(&qpoch(&LaurentMonomial::q_power(b), b, n - 1));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
