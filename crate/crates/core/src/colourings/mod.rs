//! Two-colourings of represented families, each paired with a move to a
//! subcopy (of the same type) that takes the other colour.
//!
//! The colourings are partial: each is defined on the families it can read
//! a witness from, and [`extend_total`] fills in the rest with a default.

use std::fmt;
use std::str::FromStr;

use crate::cantorlex::{delta, Point};
use crate::error::{Error, ParseError, Result};
use crate::families::{Block, Body, Kind, RawSequence, RepFamily, SymbolicClass};

mod affordable;
mod dyadic;
mod mutual;
mod registry;
#[cfg(test)]
mod tests;
mod tower;
mod zeta;

pub use affordable::{
    colour_affordable, flip_affordable_raw, kappa_g, polarise, polarised_split, split_at_cuts, xi_cuts,
    KappaSetColouring,
};
pub use dyadic::{colour_tausplit, dyadic_f, flip_tausplit, parse_dyadic, DyadicCopy, Node, View};
pub use mutual::{
    colour_mutual, colour_zeta_cc, flip_mutual, flip_zeta_cc, mutual_selectors, prepare_two_classes,
    prepare_zeta_classes, zeta_cc_case, ZetaCase,
};
pub use registry::{ColouringName, Subject};
pub use tower::{colour_c, flip_c};
pub use zeta::{colour_zeta, flip_zeta, flip_zeta_body, zeta_witness, ZetaWitness};

/// Most points any flip search removes before giving up.
pub const FLIP_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Zero,
    One,
}

impl Colour {
    pub fn value(self) -> u8 {
        match self {
            Colour::Zero => 0,
            Colour::One => 1,
        }
    }

    /// `One` exactly when `bit` holds.
    pub fn of(bit: bool) -> Self {
        if bit {
            Colour::One
        } else {
            Colour::Zero
        }
    }

    pub fn other(self) -> Self {
        Colour::of(self == Colour::Zero)
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl FromStr for Colour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Colour::Zero),
            "1" => Ok(Colour::One),
            other => Err(ParseError::new(0, format!("colour must be 0 or 1, got '{other}'")).into()),
        }
    }
}

/// `0` iff the first split is above the second.
pub fn colour_triple(x0: &Point, x1: &Point, x2: &Point) -> Result<Colour> {
    if !(x0 < x1 && x1 < x2) {
        return Err(Error::Precondition("triple must be increasing".into()));
    }
    Ok(Colour::of(delta(x0, x1)? < delta(x1, x2)?))
}

/// Points of the first zeta class probed by the triple colouring, per tail.
const TRIPLE_SAMPLE: usize = 3;

fn triple_host(a: &RepFamily) -> Result<Vec<Point>> {
    let body = a
        .condensation_classes()
        .iter()
        .filter_map(|cc| a.class_body(cc))
        .find(|body| body.kind() == Some(Kind::Zeta))
        .ok_or_else(|| Error::Precondition("no zeta class to draw triples from".into()))?;
    Ok(body.sample(a.ambient(), TRIPLE_SAMPLE))
}

fn finite_points(a: &RepFamily) -> Option<Vec<Point>> {
    let mut out = Vec::new();
    for b in a.blocks() {
        match b {
            Block::Finite(ps) => out.extend(ps.iter().cloned()),
            _ => return None,
        }
    }
    Some(out)
}

/// The triple colouring read off a family: a family of exactly three points
/// is coloured directly, anything with a zeta class by the least three of
/// its sampled points.
pub fn colour_triple_family(a: &RepFamily) -> Result<Colour> {
    let pts = match finite_points(a) {
        Some(ps) if ps.len() == 3 => ps,
        Some(_) => return Err(Error::Precondition("the triple colouring needs three points".into())),
        None => triple_host(a)?,
    };
    colour_triple(&pts[0], &pts[1], &pts[2])
}

/// A three-point subfamily of colour `target`, searched among the sampled
/// points of the first zeta class.
pub fn flip_triple(a: &RepFamily, target: Colour) -> Result<RepFamily> {
    if let Some(ps) = finite_points(a) {
        if ps.len() == 3 && colour_triple(&ps[0], &ps[1], &ps[2])? == target {
            return Ok(a.clone());
        }
        return Err(Error::Precondition("a finite family has no other triple to move to".into()));
    }
    let pts = triple_host(a)?;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if colour_triple(&pts[i], &pts[j], &pts[k])? == target {
                    let triple = vec![pts[i].clone(), pts[j].clone(), pts[k].clone()];
                    return a.with_blocks(vec![Block::Finite(triple)]);
                }
            }
        }
    }
    Err(Error::Unsupported(format!("no sampled triple has colour {target}")))
}

/// A partial colouring made total by `default` off its domain.
pub fn extend_total<F>(partial: F, default: Colour) -> impl Fn(&RepFamily) -> Colour
where
    F: Fn(&RepFamily) -> Result<Colour>,
{
    move |a| partial(a).unwrap_or(default)
}

/// `col ∘ sel`, defined where both are.
pub fn lift_selector<S, C>(sel: S, col: C) -> impl Fn(&RepFamily) -> Result<Colour>
where
    S: Fn(&RepFamily) -> Result<RepFamily>,
    C: Fn(&RepFamily) -> Result<Colour>,
{
    move |a| col(&sel(a)?)
}

/// The block of the same variety as `block` holding `body` instead.
fn rebuild(block: &Block, a: &RepFamily, body: Body) -> Result<Block> {
    let alpha = a.ambient();
    Ok(match block {
        Block::Raw(_) => Block::Raw(RawSequence::certified(alpha, body)?),
        Block::Class(c) => {
            let Body { left, middle, right } = body;
            Block::Class(match (c.kind(), left, right) {
                (Kind::Asc, None, Some(r)) => SymbolicClass::asc(alpha, r, middle)?,
                (Kind::Desc, Some(l), None) => SymbolicClass::desc(alpha, l, middle)?,
                (Kind::Zeta, Some(l), Some(r)) => {
                    SymbolicClass::zeta(alpha, c.root().expect("zeta root").clone(), l, r, middle)?
                }
                _ => return Err(Error::InvalidFamily("tails do not match the class kind".into())),
            })
        }
        _ => return Err(Error::Precondition("only classes and raw blocks carry a body".into())),
    })
}

/// `a` with block `i` replaced by one holding `body`.
pub(crate) fn replace_body(a: &RepFamily, i: usize, body: Body) -> Result<RepFamily> {
    let mut blocks = a.blocks().to_vec();
    blocks[i] = rebuild(&blocks[i], a, body)?;
    a.with_blocks(blocks)
}
