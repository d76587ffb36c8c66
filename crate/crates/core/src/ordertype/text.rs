use std::fmt;

use super::{Direction, Entry, FiniteSumForm, TypeExpr};
use crate::error::ParseError;
use crate::ordinal::{self, Ordinal};
use crate::text::Cursor;

/// Parses a type such as `(w^2+w)~ + 3 + w*w~`.
///
/// Postfix `~` binds tightest, then `*` (right operand counts the copies),
/// then `+`.
pub fn parse_type(src: &str) -> Result<TypeExpr, ParseError> {
    let mut cur = Cursor::new(src);
    let e = sum(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn sum(cur: &mut Cursor<'_>) -> Result<TypeExpr, ParseError> {
    let mut parts = vec![product(cur)?];
    while cur.eat('+') {
        parts.push(product(cur)?);
    }
    Ok(TypeExpr::sum(parts))
}

fn product(cur: &mut Cursor<'_>) -> Result<TypeExpr, ParseError> {
    let mut acc = postfix(cur)?;
    while cur.eat('*') {
        let rhs = postfix(cur)?;
        acc = match (acc, rhs) {
            (TypeExpr::Fin(a), TypeExpr::Fin(b)) => TypeExpr::Fin(a * b),
            (TypeExpr::Ord(a), TypeExpr::Fin(b)) => TypeExpr::ordinal(a.mul_nat_big(&b)),
            (a, b) => TypeExpr::prod(a, b),
        };
    }
    Ok(acc)
}

fn postfix(cur: &mut Cursor<'_>) -> Result<TypeExpr, ParseError> {
    let mut e = atom(cur)?;
    while cur.eat('~') {
        e = TypeExpr::rev(e);
    }
    Ok(e)
}

fn atom(cur: &mut Cursor<'_>) -> Result<TypeExpr, ParseError> {
    if let Some(n) = cur.nat() {
        return Ok(TypeExpr::Fin(n));
    }
    if cur.eat('(') {
        let inner = sum(cur)?;
        cur.expect(')')?;
        return Ok(inner);
    }
    if cur.eat_word("eta") {
        return Ok(TypeExpr::Eta);
    }
    if cur.eat_word("zeta") {
        return Ok(TypeExpr::zeta());
    }
    if cur.eat_word("w") {
        if cur.eat('^') {
            return Ok(TypeExpr::Ord(Ordinal::omega_pow(ordinal::text_exponent(cur)?)));
        }
        return Ok(TypeExpr::omega());
    }
    Err(cur.error("expected a natural, 'w', 'eta', 'zeta' or '('"))
}

fn write_ordinal_atom(f: &mut fmt::Formatter<'_>, o: &Ordinal) -> fmt::Result {
    let simple = o.terms().len() == 1 && o.terms()[0].coefficient == 1u32.into();
    if simple || o.is_finite() {
        write!(f, "{o}")
    } else {
        write!(f, "({o})")
    }
}

impl TypeExpr {
    fn precedence(&self) -> u8 {
        match self {
            TypeExpr::Sum(_) => 0,
            TypeExpr::Prod(..) => 1,
            TypeExpr::Ord(o) if o.terms().len() > 1 => 0,
            TypeExpr::Ord(o) if o.terms()[0].coefficient != 1u32.into() => 1,
            _ => 2,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            TypeExpr::Fin(n) => write!(f, "{n}"),
            TypeExpr::Ord(o) => write!(f, "{o}"),
            TypeExpr::Eta => f.write_str("eta"),
            TypeExpr::Rev(inner) => {
                inner.write_at(f, 2)?;
                f.write_str("~")
            }
            TypeExpr::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    p.write_at(f, 1)?;
                }
                Ok(())
            }
            TypeExpr::Prod(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" * ")?;
                b.write_at(f, 2)
            }
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Display for FiniteSumForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries().is_empty() {
            return f.write_str("0");
        }
        for (i, Entry { dir, value }) in self.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match dir {
                Direction::Fwd => write!(f, "{value}")?,
                Direction::Rev => {
                    write_ordinal_atom(f, value)?;
                    f.write_str("~")?;
                }
            }
        }
        Ok(())
    }
}
