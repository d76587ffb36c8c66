//! The colouring `C` for types embedding `ω*·ω`, and the rebuild of a
//! tower's final segment that forces colour 1.

use super::Colour;
use crate::canonise::canonise_family;
use crate::cantorlex::meet;
use crate::error::{Error, Result};
use crate::families::{Block, Count, RepFamily, SymbolicClass};

/// `1` iff two consecutive points of some infinite condensation class are
/// the only points of the family extending their meet.
///
/// Inside a canonised tail every meet of consecutive points is extended by
/// the rest of the tail, so only the core pairs of each class body matter.
pub fn colour_c(a: &RepFamily) -> Result<Colour> {
    let alpha = a.ambient();
    for cc in a.condensation_classes() {
        let Some(body) = a.class_body(&cc) else { continue };
        for w in body.core_slots().windows(2) {
            let s = meet(&body.point(alpha, w[0]), &body.point(alpha, w[1]))?;
            if a.count_extending(&s) == Count::Finite(2) {
                return Ok(Colour::One);
            }
        }
    }
    Ok(Colour::Zero)
}

/// A subfamily of the same shape with colour `target`.
///
/// Colour 0 is reached by canonising. For colour 1 the family must end in a
/// tower: with `x₀ < x₁` the top two points of interval 0 and `O` interval 1,
/// the result keeps everything below `x₁`, adds the top three points of `O`
/// and continues with intervals `2, 3, ...`. The two lower points added are
/// then the only points extending their meet.
pub fn flip_c(a: &RepFamily, target: Colour) -> Result<RepFamily> {
    if colour_c(a)? == target {
        return Ok(a.clone());
    }
    let canon = canonise_family(a)?;
    if target == Colour::Zero {
        return Ok(canon);
    }
    let blocks = canon.blocks();
    let Some((Block::Tower(t), prefix)) = blocks.split_last() else {
        return Err(Error::Precondition("colour 1 is built inside a final tower".into()));
    };
    let alpha = canon.ambient();
    let glued = vec![t.point(1, 2), t.point(1, 1), t.point(1, 0)];
    let lowered = SymbolicClass::desc(alpha, t.interval(0).drop_prefix(1), glued)?;
    let mut out = prefix.to_vec();
    out.push(Block::Class(lowered));
    out.push(Block::Tower(t.drop_intervals(2)));
    let flipped = canon.with_blocks(out)?;
    if flipped.shape() != a.shape() || colour_c(&flipped)? != Colour::One {
        return Err(Error::Unsupported("the rebuilt family does not take colour 1".into()));
    }
    Ok(flipped)
}
