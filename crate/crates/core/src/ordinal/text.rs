use std::fmt;

use num_traits::One;

use super::Ordinal;
use crate::error::ParseError;
use crate::text::Cursor;

/// Parses ordinal notation such as `w^(w+1)*2 + w*3 + 5`.
///
/// `w` is omega, `^` takes a natural, `w` or a parenthesised exponent, and
/// `*`/`+` are ordinal product and sum. Whitespace is ignored.
pub fn parse_ordinal(src: &str) -> Result<Ordinal, ParseError> {
    let mut cur = Cursor::new(src);
    let o = sum(&mut cur)?;
    cur.finish()?;
    Ok(o)
}

pub(crate) fn sum(cur: &mut Cursor<'_>) -> Result<Ordinal, ParseError> {
    let mut acc = product(cur)?;
    while cur.eat('+') {
        acc = acc.add(&product(cur)?);
    }
    Ok(acc)
}

fn product(cur: &mut Cursor<'_>) -> Result<Ordinal, ParseError> {
    let mut acc = atom(cur)?;
    while cur.eat('*') {
        acc = acc.mul(&atom(cur)?);
    }
    Ok(acc)
}

fn atom(cur: &mut Cursor<'_>) -> Result<Ordinal, ParseError> {
    if let Some(n) = cur.nat() {
        return Ok(Ordinal::nat(n));
    }
    if cur.eat('(') {
        let inner = sum(cur)?;
        cur.expect(')')?;
        return Ok(inner);
    }
    if cur.eat_word("w") {
        if !cur.eat('^') {
            return Ok(Ordinal::omega());
        }
        return Ok(Ordinal::omega_pow(exponent(cur)?));
    }
    Err(cur.error("expected a natural, 'w' or '('"))
}

pub(crate) fn exponent(cur: &mut Cursor<'_>) -> Result<Ordinal, ParseError> {
    if let Some(n) = cur.nat() {
        return Ok(Ordinal::nat(n));
    }
    if cur.eat_word("w") {
        return Ok(Ordinal::omega());
    }
    if cur.eat('(') {
        let e = sum(cur)?;
        cur.expect(')')?;
        return Ok(e);
    }
    Err(cur.error("expected an exponent"))
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            if t.exponent.is_one() {
                f.write_str("w")?;
            } else if t.exponent.is_finite() {
                write!(f, "w^{}", t.exponent)?;
            } else {
                write!(f, "w^({})", t.exponent)?;
            }
            if !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl Ordinal {
    fn is_one(&self) -> bool {
        self.as_nat().is_some_and(|n| n.is_one())
    }
}

impl std::str::FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}
