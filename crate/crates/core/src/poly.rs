//! Exact sparse polynomials in the single variable `q`.
//!
//! Coefficients are arbitrary-precision signed integers, exponents are
//! nonnegative. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A sparse polynomial in `q` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    /// exponent -> nonzero coefficient
    terms: BTreeMap<u64, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `coeff * q^exp`; the zero polynomial if `coeff` is zero.
    pub fn monomial(exp: u64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_power(exp: u64) -> Self {
        Self::monomial(exp, BigInt::one())
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in descending exponent order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, exp: u64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_scalar(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let k = BigInt::from(k);
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * &k)).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: u64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `q^top * p(1/q)`: maps each exponent `e` to `top - e`.
    ///
    /// Requires `top >= degree(p)` so exponents stay nonnegative.
    pub fn reversed(&self, top: u64) -> Self {
        if let Some(d) = self.degree() {
            assert!(
                top >= d,
                "reversal degree {top} below polynomial degree {d}"
            );
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (top - e, c.clone()))
                .collect(),
        }
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in self.terms_desc() {
            acc += c * x.pow(e as u32);
        }
        acc
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// JSON per the polynomial wire format:
    /// `{"variable":"q","terms":[[exp,"coeff"],...]}` with terms in
    /// descending exponent order and coefficients as decimal strings.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"variable\":\"q\",\"terms\":[");
        let mut first = true;
        for (e, c) in self.terms_desc() {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("[{},\"{}\"]", e, c));
        }
        out.push_str("]}");
        out
    }
}

impl fmt::Display for IntPolynomial {
    /// Human form, e.g. `q^6 - 3q^5 + q^4 + 2q^3 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms_desc() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}
