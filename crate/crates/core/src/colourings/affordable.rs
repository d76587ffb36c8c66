//! Colourings of finite sums of ordinals and reversed ordinals, driven by a
//! caller-supplied colouring of symbolic ordinal sets.

use std::fmt;
use std::sync::Arc;

use super::{replace_body, Colour, FLIP_BOUND};
use crate::canonise::{canonise_raw, n_map, n_prime, Component, SymbolicOrdinalSet};
use crate::cantorlex::{delta, Point};
use crate::error::{Error, Result};
use crate::families::{Block, Body, Kind, RawSequence, RepFamily, SymbolicClass};
use crate::ordertype::FiniteSumForm;
use crate::ordinal::Ordinal;

type Oracle = dyn Fn(&SymbolicOrdinalSet) -> Colour + Send + Sync;

/// A named two-colouring of symbolic ordinal sets. The oracle always sees
/// the normalised description, so equal sets get equal colours.
#[derive(Clone)]
pub struct KappaSetColouring {
    name: String,
    oracle: Arc<Oracle>,
}

impl KappaSetColouring {
    pub fn new(
        name: impl Into<String>,
        oracle: impl Fn(&SymbolicOrdinalSet) -> Colour + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), oracle: Arc::new(oracle) }
    }

    pub fn constant(c: Colour) -> Self {
        Self::new(format!("const{c}"), move |_| c)
    }

    /// Parity of the finite part of the least element.
    pub fn parity() -> Self {
        Self::new("parity", |set| {
            let least = match set.components().first() {
                None => return Colour::Zero,
                Some(Component::Finite(s)) => s.first().cloned().unwrap_or_else(Ordinal::zero),
                Some(Component::Shifted { offset, sched }) => offset.add(&sched.level(0)),
            };
            Colour::of(least.finite_part().bit(0))
        })
    }

    /// One of the reference oracles `const0`, `const1`, `parity`.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "const0" => Some(Self::constant(Colour::Zero)),
            "const1" => Some(Self::constant(Colour::One)),
            "parity" => Some(Self::parity()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, set: &SymbolicOrdinalSet) -> Colour {
        (self.oracle)(&set.normalized())
    }
}

impl fmt::Debug for KappaSetColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KappaSetColouring").field("name", &self.name).finish_non_exhaustive()
    }
}

/// `F` read through the split sets of a bare `ω` or `ω*` class.
pub fn kappa_g(f: &KappaSetColouring, c: &SymbolicClass) -> Result<Colour> {
    Ok(f.apply(&n_map(c)?))
}

/// Partial sums of the entries of `form`: the ends of the consecutive
/// intervals an index set of order type `ξ` is cut into.
pub fn xi_cuts(form: &FiniteSumForm) -> Result<Vec<Ordinal>> {
    if form.is_finite() {
        return Err(Error::FiniteType);
    }
    let mut acc = Ordinal::zero();
    Ok(form
        .entries()
        .iter()
        .map(|e| {
            acc = acc.add(&e.value);
            acc.clone()
        })
        .collect())
}

/// The pieces of `set` in `[0, cuts[0])`, `[cuts[0], cuts[1])`, and so on.
pub fn split_at_cuts(set: &SymbolicOrdinalSet, cuts: &[Ordinal]) -> Result<Vec<SymbolicOrdinalSet>> {
    let last = cuts.last().ok_or_else(|| Error::Precondition("no cut points".into()))?;
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("cut points must increase".into()));
    }
    if set.sup() > *last {
        return Err(Error::Precondition(format!("the set reaches past the last cut {last}")));
    }
    let mut lo = Ordinal::zero();
    let mut out = Vec::with_capacity(cuts.len());
    for cut in cuts {
        out.push(set.restrict(&lo, cut)?);
        lo = cut.clone();
    }
    Ok(out)
}

/// A colouring of sets obtained by cutting at `cuts` and colouring the tuple
/// of pieces.
pub fn polarised_split<P>(pieces: P, cuts: Vec<Ordinal>) -> impl Fn(&SymbolicOrdinalSet) -> Result<Colour>
where
    P: Fn(&[SymbolicOrdinalSet]) -> Colour,
{
    move |set| Ok(pieces(&split_at_cuts(set, &cuts)?))
}

/// A colouring of tuples of pieces obtained by reassembling them.
pub fn polarise(f: &KappaSetColouring) -> impl Fn(&[SymbolicOrdinalSet]) -> Result<Colour> + '_ {
    move |pieces| {
        let whole = pieces.iter().try_fold(SymbolicOrdinalSet::new(Vec::new())?, |acc, p| acc.concat(p))?;
        Ok(f.apply(&whole))
    }
}

fn leftmost_raw(a: &RepFamily) -> Option<(usize, &RawSequence)> {
    a.blocks().iter().enumerate().find_map(|(i, b)| match b {
        Block::Raw(r) => Some((i, r)),
        _ => None,
    })
}

fn raw_triple(r: &RawSequence) -> Result<[Point; 3]> {
    if r.kind() == Kind::Zeta {
        return Err(Error::Unsupported("a raw zeta block is not an indecomposable piece".into()));
    }
    Ok([r.decode(0), r.decode(1), r.decode(2)])
}

/// `0` iff the first split is above the second, for three points read in
/// sequence order.
fn sequence_colour(x: &[Point; 3]) -> Result<Colour> {
    Ok(Colour::of(delta(&x[0], &x[1])? < delta(&x[1], &x[2])?))
}

/// With a raw block present, the colour of its first three points; on a
/// canonised family, `F` read through [`n_prime`].
pub fn colour_affordable(f: &KappaSetColouring, a: &RepFamily) -> Result<Colour> {
    match leftmost_raw(a) {
        Some((_, r)) => sequence_colour(&raw_triple(r)?),
        None => Ok(f.apply(&n_prime(a)?)),
    }
}

/// Changes the colour of the leftmost raw block. Colour 1 is reached by
/// canonising it; colour 0 by thinning: for the least `ξ₀ < ξ₁ < ξ₂` whose
/// splits decrease, drop every earlier point except `x_ξ₀` and `x_ξ₁`.
pub fn flip_affordable_raw(a: &RepFamily) -> Result<RepFamily> {
    let (i, r) = leftmost_raw(a).ok_or_else(|| Error::Precondition("no raw block".into()))?;
    let alpha = a.ambient();
    let target = sequence_colour(&raw_triple(r)?)?.other();
    let body = match target {
        Colour::One => canonise_raw(r)?.body().clone(),
        Colour::Zero => thin(r)?,
    };
    let flipped = replace_body(a, i, body)?;
    let (_, fr) = leftmost_raw(&flipped).expect("raw block kept");
    if sequence_colour(&raw_triple(fr)?)? != target || flipped.shape() != a.shape() {
        return Err(Error::Unsupported("the rebuilt raw block does not change colour".into()));
    }
    debug_assert_eq!(fr.ambient(), alpha);
    Ok(flipped)
}

fn thin(r: &RawSequence) -> Result<Body> {
    let alpha = r.ambient();
    let horizon = FLIP_BOUND + 2;
    let pts: Vec<Point> = (0..=horizon).map(|n| r.decode(n)).collect();
    for x2 in 2..=horizon {
        for x1 in 1..x2 {
            for x0 in 0..x1 {
                if delta(&pts[x0], &pts[x1])? <= delta(&pts[x1], &pts[x2])? {
                    continue;
                }
                let body = r.body();
                let m = body.middle.len() as i64;
                let (lo, hi) = match r.kind() {
                    Kind::Asc => (0, x2 as i64 - 1),
                    _ => (m - x2 as i64, m - 1),
                };
                let mut out = body.without(alpha, lo, hi);
                out.middle.extend([pts[x0].clone(), pts[x1].clone()]);
                out.middle.sort();
                return Ok(out);
            }
        }
    }
    Err(Error::Unsupported(format!("no decreasing splits among the first {} points", horizon + 1)))
}
