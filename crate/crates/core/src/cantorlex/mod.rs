//! Points of `^α2` with finite support, ordered lexicographically, together
//! with split heights, stems and the fixed bijection between `α` and `ω`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, ParseError, Result};
use crate::ordinal::{self, Ordinal};
use crate::text::Cursor;

mod bijection;
#[cfg(test)]
mod tests;

pub use bijection::{b_decode, b_encode};

/// Length of the ambient sequences.
///
/// An uncountable length is carried symbolically: `length` is then only a
/// placeholder and positions are not range-checked.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alpha {
    pub length: Ordinal,
    pub countable: bool,
}

impl Alpha {
    pub fn new(length: Ordinal) -> Result<Self> {
        if length.is_finite() {
            return Err(Error::OutOfRange(format!("length {length} must be at least w")));
        }
        Ok(Self { length, countable: true })
    }

    pub fn omega() -> Self {
        Self { length: Ordinal::omega(), countable: true }
    }

    /// A symbolic uncountable cardinal.
    pub fn kappa() -> Self {
        Self { length: Ordinal::omega(), countable: false }
    }

    pub fn contains(&self, position: &Ordinal) -> bool {
        !self.countable || *position < self.length
    }

    fn check(&self, position: &Ordinal) -> Result<()> {
        if self.contains(position) {
            Ok(())
        } else {
            Err(Error::OutOfRange(position.to_string()))
        }
    }

    pub(crate) fn parse_at(cur: &mut Cursor<'_>) -> Result<Self, ParseError> {
        let start = cur.pos();
        if cur.eat_word("k") || cur.eat_word("kappa") {
            return Ok(Self::kappa());
        }
        let length = ordinal::text_sum(cur)?;
        Self::new(length).map_err(|e| ParseError::new(start, e.to_string()))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.countable {
            self.length.fmt(f)
        } else {
            f.write_str("kappa")
        }
    }
}

/// A sequence of length `α` with bit 1 exactly on `support`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    ambient: Alpha,
    support: BTreeSet<Ordinal>,
}

impl Point {
    pub fn new(ambient: &Alpha, support: impl IntoIterator<Item = Ordinal>) -> Result<Self> {
        let support: BTreeSet<Ordinal> = support.into_iter().collect();
        for p in &support {
            ambient.check(p)?;
        }
        Ok(Self { ambient: ambient.clone(), support })
    }

    /// Builds a point whose support is already known to lie in range.
    pub(crate) fn from_set(ambient: &Alpha, support: BTreeSet<Ordinal>) -> Self {
        debug_assert!(support.iter().all(|p| ambient.contains(p)));
        Self { ambient: ambient.clone(), support }
    }

    pub fn ambient(&self) -> &Alpha {
        &self.ambient
    }

    pub fn support(&self) -> &BTreeSet<Ordinal> {
        &self.support
    }

    pub fn into_support(self) -> BTreeSet<Ordinal> {
        self.support
    }

    pub fn bit(&self, position: &Ordinal) -> bool {
        self.support.contains(position)
    }

    pub(crate) fn parse_at(cur: &mut Cursor<'_>, ambient: &Alpha) -> Result<Self, ParseError> {
        cur.expect_word("point")?;
        let start = cur.pos();
        let bits = ordinal_set(cur)?;
        Point::new(ambient, bits).map_err(|e| ParseError::new(start, e.to_string()))
    }
}

/// Lexicographic order; points from different ambients fall back to the
/// ambient order so that the relation stays total.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match first_difference(&self.support, &other.support) {
            None => self.ambient.cmp(&other.ambient),
            Some(d) if self.support.contains(d) => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("point")?;
        write_set(f, &self.support)
    }
}

/// An initial segment `s` of height `h(s)`, with 1-bits at `bits`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stem {
    ambient: Alpha,
    height: Ordinal,
    bits: BTreeSet<Ordinal>,
}

impl Stem {
    pub fn new(ambient: &Alpha, height: Ordinal, bits: impl IntoIterator<Item = Ordinal>) -> Result<Self> {
        if ambient.countable && height > ambient.length {
            return Err(Error::OutOfRange(height.to_string()));
        }
        let bits: BTreeSet<Ordinal> = bits.into_iter().collect();
        if let Some(b) = bits.iter().find(|b| **b >= height) {
            return Err(Error::OutOfRange(format!("bit {b} is not below the height {height}")));
        }
        Ok(Self { ambient: ambient.clone(), height, bits })
    }

    pub fn ambient(&self) -> &Alpha {
        &self.ambient
    }

    pub fn height(&self) -> &Ordinal {
        &self.height
    }

    pub fn bits(&self) -> &BTreeSet<Ordinal> {
        &self.bits
    }

    pub(crate) fn parse_at(cur: &mut Cursor<'_>, ambient: &Alpha) -> Result<Self, ParseError> {
        cur.expect_word("stem")?;
        cur.expect('(')?;
        cur.expect_word("h")?;
        cur.expect('=')?;
        let height = ordinal::text_sum(cur)?;
        cur.expect(')')?;
        let start = cur.pos();
        let bits = ordinal_set(cur)?;
        Stem::new(ambient, height, bits).map_err(|e| ParseError::new(start, e.to_string()))
    }
}

impl fmt::Display for Stem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stem(h={})", self.height)?;
        write_set(f, &self.bits)
    }
}

/// Parses `{a, b, ...}` into a set of ordinals.
pub(crate) fn ordinal_set(cur: &mut Cursor<'_>) -> Result<BTreeSet<Ordinal>, ParseError> {
    cur.expect('{')?;
    let mut out = BTreeSet::new();
    if cur.eat('}') {
        return Ok(out);
    }
    loop {
        out.insert(ordinal::text_sum(cur)?);
        if cur.eat('}') {
            return Ok(out);
        }
        cur.expect(',')?;
    }
}

pub(crate) fn write_set<'a>(f: &mut fmt::Formatter<'_>, set: impl IntoIterator<Item = &'a Ordinal>) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in set.into_iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

pub fn parse_point(src: &str, ambient: &Alpha) -> Result<Point> {
    let mut cur = Cursor::new(src);
    let p = Point::parse_at(&mut cur, ambient)?;
    cur.finish()?;
    Ok(p)
}

pub fn parse_stem(src: &str, ambient: &Alpha) -> Result<Stem> {
    let mut cur = Cursor::new(src);
    let s = Stem::parse_at(&mut cur, ambient)?;
    cur.finish()?;
    Ok(s)
}

/// Least element of the symmetric difference.
fn first_difference<'a>(a: &'a BTreeSet<Ordinal>, b: &'a BTreeSet<Ordinal>) -> Option<&'a Ordinal> {
    let (mut ia, mut ib) = (a.iter().peekable(), b.iter().peekable());
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return None,
            (Some(x), None) | (None, Some(x)) => return Some(x),
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Less => return Some(x),
                Ordering::Greater => return Some(y),
                Ordering::Equal => {
                    ia.next();
                    ib.next();
                }
            },
        }
    }
}

fn same_ambient(x: &Point, y: &Point) -> Result<()> {
    if x.ambient == y.ambient {
        Ok(())
    } else {
        Err(Error::AmbientMismatch)
    }
}

pub fn lex_cmp(x: &Point, y: &Point) -> Result<Ordering> {
    same_ambient(x, y)?;
    Ok(x.cmp(y))
}

/// Height of the split between two distinct points.
pub fn delta(x: &Point, y: &Point) -> Result<Ordinal> {
    same_ambient(x, y)?;
    first_difference(&x.support, &y.support).cloned().ok_or(Error::EqualPoints)
}

/// The longest common initial segment.
pub fn meet(x: &Point, y: &Point) -> Result<Stem> {
    let height = delta(x, y)?;
    let bits = x.support.range(..&height).cloned().collect();
    Ok(Stem { ambient: x.ambient.clone(), height, bits })
}

pub fn extends(x: &Point, s: &Stem) -> Result<bool> {
    if x.ambient != s.ambient {
        return Err(Error::AmbientMismatch);
    }
    Ok(x.support.range(..&s.height).eq(s.bits.iter()))
}

/// Least split height among the points of a finite set with at least two
/// elements; consecutive pairs suffice.
pub fn delta_min(points: &[Point]) -> Result<Ordinal> {
    let set: BTreeSet<&Point> = points.iter().collect();
    if set.len() < 2 {
        return Err(Error::Precondition("need at least two distinct points".into()));
    }
    let sorted: Vec<&Point> = set.into_iter().collect();
    let mut best: Option<Ordinal> = None;
    for w in sorted.windows(2) {
        let d = delta(w[0], w[1])?;
        if best.as_ref().is_none_or(|b| d < *b) {
            best = Some(d);
        }
    }
    Ok(best.expect("at least one pair"))
}

/// The natural number coding the split height of `x` and `y`.
pub fn script_n(alpha: &Alpha, x: &Point, y: &Point) -> Result<BigUint> {
    if x.ambient != *alpha {
        return Err(Error::AmbientMismatch);
    }
    b_encode(alpha, &delta(x, y)?)
}
