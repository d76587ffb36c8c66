//! A fixed bijection between a countable ordinal `α` and the naturals.
//!
//! `[0, α)` splits into the blocks `ω^e` of its normal form plus a finite
//! tail. Naturals below the tail size index the tail; the rest are dealt
//! round-robin to the infinite blocks. Inside a block `ω^e` with `e` finite
//! the digit vector is tupled by iterated Cantor pairing; for infinite `e`
//! an element is a finite multiset of exponents below `e`, coded through a
//! finite set of naturals and read in binary.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Alpha;
use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, Term};

pub fn b_encode(alpha: &Alpha, o: &Ordinal) -> Result<BigUint> {
    if !alpha.countable {
        return Err(Error::Uncountable);
    }
    encode_below(&alpha.length, o)
}

pub fn b_decode(alpha: &Alpha, n: &BigUint) -> Result<Ordinal> {
    if !alpha.countable {
        return Err(Error::Uncountable);
    }
    Ok(decode_below(&alpha.length, n))
}

fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    ((&s * (&s + 1u32)) >> 1) + b
}

fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) >> 1;
    let t = (&w * (&w + 1u32)) >> 1;
    let b = z - t;
    (w - &b, b)
}

fn tuple(digits: &[BigUint]) -> BigUint {
    let (first, rest) = digits.split_first().expect("nonempty digit vector");
    rest.iter().fold(first.clone(), |acc, d| pair(&acc, d))
}

fn untuple(mut z: BigUint, len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    for i in (1..len).rev() {
        let (a, b) = unpair(&z);
        out[i] = b;
        z = a;
    }
    out[0] = z;
    out
}

/// Splits `length` into its infinite blocks (one per copy of `ω^e`, `e ≥ 1`)
/// and the size of its finite tail.
fn blocks(length: &Ordinal) -> (Vec<Ordinal>, BigUint) {
    let mut infinite = Vec::new();
    let mut tail = BigUint::zero();
    for t in length.terms() {
        if t.exponent.is_zero() {
            tail = t.coefficient.clone();
        } else {
            let copies = t.coefficient.to_usize().expect("coefficient fits in memory");
            infinite.extend(std::iter::repeat_n(t.exponent.clone(), copies));
        }
    }
    (infinite, tail)
}

fn encode_below(length: &Ordinal, o: &Ordinal) -> Result<BigUint> {
    if o >= length {
        return Err(Error::OutOfRange(o.to_string()));
    }
    let (infinite, tail) = blocks(length);
    let m = BigUint::from(infinite.len());
    let mut start = Ordinal::zero();
    for (index, e) in infinite.iter().enumerate() {
        let end = start.add(&Ordinal::omega_pow(e.clone()));
        if *o < end {
            let inner = o.left_sub(&start).expect("o lies above the block start");
            return Ok(&tail + encode_power(e, &inner)? * &m + index);
        }
        start = end;
    }
    let offset = o.left_sub(&start).expect("o lies in the finite tail");
    Ok(offset.as_nat().expect("finite tail offset"))
}

fn decode_below(length: &Ordinal, n: &BigUint) -> Ordinal {
    let (infinite, tail) = blocks(length);
    let start_of =
        |k: usize| infinite[..k].iter().fold(Ordinal::zero(), |acc, e| acc.add(&Ordinal::omega_pow(e.clone())));
    if *n < tail {
        return start_of(infinite.len()).add(&Ordinal::nat(n.clone()));
    }
    let (q, r) = (n - &tail).div_rem(&BigUint::from(infinite.len()));
    let index = r.to_usize().expect("block index");
    start_of(index).add(&decode_power(&infinite[index], &q))
}

/// Codes `o < ω^e`.
fn encode_power(e: &Ordinal, o: &Ordinal) -> Result<BigUint> {
    if let Some(d) = e.as_u64() {
        let d = d as usize;
        let mut digits = vec![BigUint::zero(); d];
        for t in o.terms() {
            let p = t.exponent.as_u64().expect("finite exponent below a finite power") as usize;
            digits[d - 1 - p] = t.coefficient.clone();
        }
        return Ok(tuple(&digits));
    }
    let mut codes = Vec::new();
    for t in o.terms() {
        let c = encode_below(e, &t.exponent)?;
        let copies = t.coefficient.to_usize().ok_or_else(|| Error::OutOfRange(o.to_string()))?;
        codes.extend(std::iter::repeat_n(c, copies));
    }
    codes.sort();
    let mut n = BigUint::zero();
    for (i, c) in codes.iter().enumerate() {
        let bit = (c + i).to_u64().ok_or_else(|| Error::OutOfRange(o.to_string()))?;
        n.set_bit(bit, true);
    }
    Ok(n)
}

fn decode_power(e: &Ordinal, n: &BigUint) -> Ordinal {
    if let Some(d) = e.as_u64() {
        let d = d as usize;
        let terms = untuple(n.clone(), d)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Term { exponent: Ordinal::nat((d - 1 - i) as u64), coefficient: c })
            .collect();
        return Ordinal::from_terms(terms).expect("digits give a normal form");
    }
    let mut counts: BTreeMap<Ordinal, BigUint> = BTreeMap::new();
    let mut i = 0u64;
    for bit in 0..n.bits() {
        if n.bit(bit) {
            let exponent = decode_below(e, &BigUint::from(bit - i));
            *counts.entry(exponent).or_insert_with(BigUint::zero) += BigUint::one();
            i += 1;
        }
    }
    let terms = counts.into_iter().rev().map(|(exponent, coefficient)| Term { exponent, coefficient }).collect();
    Ordinal::from_terms(terms).expect("distinct exponents give a normal form")
}
