//! The colouring of copies of `ζ` for countable ambients.

use num_bigint::BigUint;

use super::{replace_body, Colour, FLIP_BOUND};
use crate::cantorlex::{script_n, Alpha};
use crate::error::{Error, Result};
use crate::families::{Body, Kind, RepFamily, Slot};

/// `x` is the left end of the least consecutive split; `n0` codes the split
/// just below `x` and `n1` the one just above its successor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaWitness {
    pub x: Slot,
    pub n0: BigUint,
    pub n1: BigUint,
    pub colour: Colour,
}

fn zeta_body(a: &RepFamily) -> Result<(usize, &Body)> {
    match a.blocks() {
        [b] if b.body().is_some_and(|body| body.kind() == Some(Kind::Zeta)) => Ok((0, b.body().expect("body"))),
        _ => Err(Error::Precondition("the zeta colouring needs a single zeta class".into())),
    }
}

/// The left point of the least consecutive split of a zeta body.
pub(crate) fn zeta_min_slot(alpha: &Alpha, body: &Body) -> Slot {
    let profile = body.split_profile(alpha);
    let core = body.core_slots();
    let i = (0..profile.len()).min_by_key(|&i| &profile[i]).expect("nonempty profile");
    if i == 0 {
        Slot::Left(1)
    } else if i == profile.len() - 1 {
        Slot::Right(0)
    } else {
        core[i - 1]
    }
}

pub(crate) fn step(body: &Body, slot: Slot, by: i64) -> Slot {
    body.slot_at(body.position(slot) + by).expect("zeta bodies are unbounded both ways")
}

pub fn zeta_witness(alpha: &Alpha, body: &Body) -> Result<ZetaWitness> {
    if body.kind() != Some(Kind::Zeta) {
        return Err(Error::Precondition("not a zeta body".into()));
    }
    if !alpha.countable {
        return Err(Error::Uncountable);
    }
    let x = zeta_min_slot(alpha, body);
    let at = |by: i64| body.point(alpha, step(body, x, by));
    let n0 = script_n(alpha, &at(-1), &at(0))?;
    let n1 = script_n(alpha, &at(1), &at(2))?;
    let colour = Colour::of(n0 < n1);
    Ok(ZetaWitness { x, n0, n1, colour })
}

pub fn colour_zeta(a: &RepFamily) -> Result<Colour> {
    let (_, body) = zeta_body(a)?;
    Ok(zeta_witness(a.ambient(), body)?.colour)
}

/// Removes up to [`FLIP_BOUND`] points next to `x`: just above it to raise
/// `n1`, or `x` and the points just below it to raise `n0`.
pub fn flip_zeta_body(alpha: &Alpha, body: &Body, target: Colour) -> Result<Body> {
    let w = zeta_witness(alpha, body)?;
    if w.colour == target {
        return Ok(body.clone());
    }
    let p = body.position(w.x);
    for k in 1..=FLIP_BOUND as i64 {
        let (lo, hi) = match target {
            Colour::One => (p + 1, p + k),
            Colour::Zero => (p - k + 1, p),
        };
        let candidate = body.without(alpha, lo, hi);
        if zeta_witness(alpha, &candidate)?.colour == target {
            return Ok(candidate);
        }
    }
    Err(Error::Unsupported(format!("no flip within {FLIP_BOUND} removals")))
}

pub fn flip_zeta(a: &RepFamily, target: Colour) -> Result<RepFamily> {
    let (i, body) = zeta_body(a)?;
    let flipped = flip_zeta_body(a.ambient(), body, target)?;
    replace_body(a, i, flipped)
}
