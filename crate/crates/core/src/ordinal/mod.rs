//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An ordinal is a list of terms `ω^e·c` with strictly decreasing exponents and
//! nonzero coefficients; zero is the empty list. Because the exponents are
//! themselves ordinals in the same form, the derived lexicographic order on the
//! term list is the ordinal order.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use text::parse_ordinal;
pub(crate) use text::{exponent as text_exponent, sum as text_sum};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: BigUint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1u32)
    }

    pub fn nat(n: impl Into<BigUint>) -> Self {
        Self::term(Ordinal::zero(), n)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Ordinal::one())
    }

    pub fn omega_pow(exponent: Ordinal) -> Self {
        Self::term(exponent, 1u32)
    }

    /// `ω^exponent · coefficient`; zero when the coefficient is zero.
    pub fn term(exponent: Ordinal, coefficient: impl Into<BigUint>) -> Self {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Self::zero();
        }
        Self { terms: vec![Term { exponent, coefficient }] }
    }

    /// Builds an ordinal from terms, rejecting lists that are not in normal form.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            if t.coefficient.is_zero() {
                return Err(Error::InvalidSchedule("zero coefficient in normal form".into()));
            }
        }
        for w in terms.windows(2) {
            if w[0].exponent <= w[1].exponent {
                return Err(Error::InvalidSchedule("exponents must strictly decrease".into()));
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_nat().and_then(|n| n.to_u64())
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exponent.is_zero())
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent.is_zero())
    }

    /// The coefficient of `ω^0`.
    pub fn finite_part(&self) -> BigUint {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => t.coefficient.clone(),
            _ => BigUint::zero(),
        }
    }

    /// Drops the `ω^0` term, leaving zero or a limit.
    pub fn without_finite_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if terms.last().is_some_and(|t| t.exponent.is_zero()) {
            terms.pop();
        }
        Ordinal { terms }
    }

    pub fn leading_term(&self) -> Result<(Ordinal, BigUint)> {
        let t = self.terms.first().ok_or(Error::ZeroOrdinal)?;
        Ok((t.exponent.clone(), t.coefficient.clone()))
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    pub fn leading_coefficient(&self) -> Option<&BigUint> {
        self.terms.first().map(|t| &t.coefficient)
    }

    /// The normal-form terms `ω^e·c` as single-term ordinals, in order.
    pub fn indecomposable_parts(&self) -> Result<Vec<Ordinal>> {
        if self.is_zero() {
            return Err(Error::ZeroOrdinal);
        }
        Ok(self.terms.iter().map(|t| Ordinal { terms: vec![t.clone()] }).collect())
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Ordinal sum; absorbs the terms of `self` that are smaller than the head of `rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut rest = &rhs.terms[..];
        for t in &self.terms {
            match t.exponent.cmp(&head.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    terms.push(Term { exponent: t.exponent.clone(), coefficient: &t.coefficient + &head.coefficient });
                    rest = &rhs.terms[1..];
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rest.iter().cloned());
        Ordinal { terms }
    }

    /// Hessenberg sum: merge the normal forms, adding coefficients of equal exponents.
    pub fn natural_sum(&self, rhs: &Ordinal) -> Ordinal {
        let mut merged: BTreeMap<&Ordinal, BigUint> = BTreeMap::new();
        for t in self.terms.iter().chain(&rhs.terms) {
            *merged.entry(&t.exponent).or_default() += &t.coefficient;
        }
        let terms = merged.into_iter().rev().map(|(e, c)| Term { exponent: e.clone(), coefficient: c }).collect();
        Ordinal { terms }
    }

    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = self.terms.first() else {
            return Ordinal::zero();
        };
        let mut out = Ordinal::zero();
        for t in &rhs.terms {
            let piece = if t.exponent.is_zero() {
                self.mul_nat_big(&t.coefficient)
            } else {
                Ordinal::term(head.exponent.add(&t.exponent), t.coefficient.clone())
            };
            out = out.add(&piece);
        }
        out
    }

    pub fn mul_nat(&self, n: u64) -> Ordinal {
        self.mul_nat_big(&BigUint::from(n))
    }

    pub fn mul_nat_big(&self, n: &BigUint) -> Ordinal {
        if n.is_zero() || self.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.clone();
        terms[0].coefficient *= n;
        Ordinal { terms }
    }

    /// The unique `d` with `lhs + d == self`; `None` when `lhs > self`.
    pub fn left_sub(&self, lhs: &Ordinal) -> Option<Ordinal> {
        if lhs > self {
            return None;
        }
        let mut i = 0;
        while i < lhs.terms.len() && self.terms[i] == lhs.terms[i] {
            i += 1;
        }
        if i == lhs.terms.len() {
            return Some(Ordinal { terms: self.terms[i..].to_vec() });
        }
        let (mine, theirs) = (&self.terms[i], &lhs.terms[i]);
        if mine.exponent > theirs.exponent {
            return Some(Ordinal { terms: self.terms[i..].to_vec() });
        }
        let mut terms =
            vec![Term { exponent: mine.exponent.clone(), coefficient: &mine.coefficient - &theirs.coefficient }];
        terms.extend(self.terms[i + 1..].iter().cloned());
        Some(Ordinal { terms })
    }

    /// Largest `n` with `self·n <= target`, for nonzero `self`; `None` if unbounded.
    pub fn max_multiple_below_or_eq(&self, target: &Ordinal) -> Option<BigUint> {
        let head = self.terms.first()?;
        let Some(t0) = target.terms.first() else {
            return Some(BigUint::zero());
        };
        match t0.exponent.cmp(&head.exponent) {
            Ordering::Less => Some(BigUint::zero()),
            Ordering::Greater => None,
            Ordering::Equal => {
                let m = &t0.coefficient / &head.coefficient;
                if !m.is_zero() && self.mul_nat_big(&m) > *target {
                    Some(m - 1u32)
                } else {
                    Some(m)
                }
            }
        }
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}
