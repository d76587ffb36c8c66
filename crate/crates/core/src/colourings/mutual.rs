//! Colourings that play two selected copies of `ω` or `ω*` against each
//! other: pairs of one-sided classes, and pairs of zeta classes compared
//! through their right halves.

use num_bigint::BigUint;

use super::zeta::{flip_zeta_body, step, zeta_min_slot, zeta_witness};
use super::{replace_body, Colour, FLIP_BOUND};
use crate::canonise::canonise_family;
use crate::cantorlex::{delta, script_n, Alpha, Point};
use crate::error::{Error, Result};
use crate::families::{Block, Body, ClassType, RepFamily, Slot, SymbolicClass};
use crate::ordinal::Ordinal;

/// Trimming steps tried on a zeta class before giving up.
const TRIM_BOUND: usize = 4096;

/// An infinite class of a family that lies in a single block.
struct Member {
    block: usize,
    body: Body,
}

fn members(a: &RepFamily, wanted: impl Fn(&ClassType) -> bool) -> Vec<Member> {
    a.condensation_classes()
        .into_iter()
        .filter(|cc| wanted(&cc.class_type))
        .filter_map(|cc| {
            let body = a.class_body(&cc)?;
            let block = *cc.blocks.iter().find(|&&i| a.blocks()[i].body().is_some())?;
            Some(Member { block, body })
        })
        .collect()
}

fn one_sided(a: &RepFamily) -> Vec<Member> {
    members(a, |t| matches!(t, ClassType::Omega | ClassType::OmegaStar))
}

fn seq_point(alpha: &Alpha, body: &Body, n: usize) -> Point {
    body.point(alpha, body.sequence_slot(n))
}

fn seq_split(alpha: &Alpha, body: &Body, n: usize) -> Result<Ordinal> {
    delta(&seq_point(alpha, body, n), &seq_point(alpha, body, n + 1))
}

fn seq_code(alpha: &Alpha, body: &Body, n: usize) -> Result<BigUint> {
    script_n(alpha, &seq_point(alpha, body, n), &seq_point(alpha, body, n + 1))
}

/// Positions of the sequence indices `from..=to`, as an interval.
fn seq_range(body: &Body, from: usize, to: usize) -> (i64, i64) {
    let a = body.position(body.sequence_slot(from));
    let b = body.position(body.sequence_slot(to));
    (a.min(b), a.max(b))
}

/// Indices into `values` of the two least entries when exactly two entries
/// are at most the second least value.
fn distinguished_pair<T: Ord>(values: &[T]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].cmp(&values[j]).then(i.cmp(&j)));
    if values.len() < 2 || (values.len() > 2 && values[order[2]] <= values[order[1]]) {
        return None;
    }
    Some((order[0].min(order[1]), order[0].max(order[1])))
}

/// The two distinguished one-sided classes, left to right.
fn mutual_pair(a: &RepFamily) -> Result<(Member, Member)> {
    let alpha = a.ambient();
    let mut classes = one_sided(a);
    if classes.len() < 2 {
        return Err(Error::Precondition("needs two classes ordered as w or w~".into()));
    }
    let mut firsts = Vec::new();
    for c in &classes {
        let d = seq_split(alpha, &c.body, 0)?;
        if c.body.split_profile(alpha).iter().any(|s| *s < d) {
            return Err(Error::Precondition("a class does not split least at its first pair".into()));
        }
        firsts.push(d);
    }
    let (i, j) = distinguished_pair(&firsts)
        .ok_or_else(|| Error::Precondition("more than two classes share the least first splits".into()))?;
    let second = classes.swap_remove(j);
    let first = classes.swap_remove(i);
    Ok((first, second))
}

/// Canonises, then trims every other one-sided class so that its first
/// split exceeds the larger first split of the chosen pair. The pair is the
/// leftmost one for which every other class can be trimmed.
pub fn prepare_two_classes(a: &RepFamily) -> Result<RepFamily> {
    let canon = canonise_family(a)?;
    let classes: Vec<(usize, SymbolicClass)> = canon
        .blocks()
        .iter()
        .enumerate()
        .filter_map(|(i, b)| match b {
            Block::Class(c) if c.root().is_none() => Some((i, c.clone())),
            _ => None,
        })
        .collect();
    if classes.len() < 2 {
        return Err(Error::Precondition("needs two classes ordered as w or w~".into()));
    }
    let sched = |c: &SymbolicClass| match (c.asc_part(), c.desc_part()) {
        (Some(r), _) => r.sched().clone(),
        (_, Some(l)) => l.sched().clone(),
        _ => unreachable!("one-sided class"),
    };
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let bound = sched(&classes[i].1).level(0).max(sched(&classes[j].1).level(0));
            let trims: Option<Vec<usize>> = classes
                .iter()
                .enumerate()
                .map(|(k, (_, c))| if k == i || k == j { Some(0) } else { sched(c).count_below(&bound.succ()) })
                .collect();
            let Some(trims) = trims else { continue };
            let mut blocks = canon.blocks().to_vec();
            for ((b, c), m) in classes.iter().zip(trims) {
                let trimmed = match (c.asc_part(), c.desc_part()) {
                    (Some(r), _) => c.with_parts(None, Some(r.drop_prefix(m)))?,
                    (_, Some(l)) => c.with_parts(Some(l.drop_prefix(m)), None)?,
                    _ => unreachable!("one-sided class"),
                };
                blocks[*b] = Block::Class(trimmed);
            }
            return canon.with_blocks(blocks);
        }
    }
    Err(Error::Unsupported("no pair of classes lets the others be trimmed".into()))
}

/// Each distinguished class without its first point.
pub fn mutual_selectors(a: &RepFamily) -> Result<(Body, Body)> {
    let (c0, c1) = mutual_pair(a)?;
    let alpha = a.ambient();
    let drop_first = |b: &Body| {
        let (lo, hi) = seq_range(b, 0, 0);
        b.without(alpha, lo, hi)
    };
    Ok((drop_first(&c0.body), drop_first(&c1.body)))
}

/// `0` iff the code of the first split of the left selector image is at
/// least that of the right one.
pub fn colour_mutual(a: &RepFamily) -> Result<Colour> {
    let (c0, c1) = mutual_pair(a)?;
    let alpha = a.ambient();
    Ok(Colour::of(seq_code(alpha, &c0.body, 1)? < seq_code(alpha, &c1.body, 1)?))
}

/// Removes the first few points of one selector image: the left one to
/// reach colour 0, the right one to reach colour 1.
pub fn flip_mutual(a: &RepFamily, target: Colour) -> Result<RepFamily> {
    let prepared = if mutual_pair(a).is_ok() { a.clone() } else { prepare_two_classes(a)? };
    if colour_mutual(&prepared)? == target {
        return Ok(prepared);
    }
    let (c0, c1) = mutual_pair(&prepared)?;
    let side = if target == Colour::Zero { c0 } else { c1 };
    for k in 1..=FLIP_BOUND {
        let (lo, hi) = seq_range(&side.body, 1, k);
        let body = side.body.without(prepared.ambient(), lo, hi);
        let candidate = replace_body(&prepared, side.block, body)?;
        if colour_mutual(&candidate)? == target {
            return Ok(candidate);
        }
    }
    Err(Error::Unsupported(format!("no flip within {FLIP_BOUND} removals")))
}

/// Which of the two readings of a family with zeta classes applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaCase {
    /// A single zeta class has the least internal split; its block index.
    Unique(usize),
    /// Exactly two of the classes with the least internal split have their
    /// split below the cut at most the second least such value.
    Pair(usize, usize),
}

struct ZetaStats {
    member: Member,
    x: Slot,
    least: Ordinal,
    below: Ordinal,
}

fn zeta_stats(a: &RepFamily) -> Result<Vec<ZetaStats>> {
    let alpha = a.ambient();
    let mut out = Vec::new();
    for member in members(a, |t| *t == ClassType::Zeta) {
        let body = &member.body;
        let x = zeta_min_slot(alpha, body);
        let at = |by: i64| body.point(alpha, step(body, x, by));
        let (least, below) = (delta(&at(0), &at(1))?, delta(&at(-1), &at(0))?);
        out.push(ZetaStats { member, x, least, below });
    }
    if out.is_empty() {
        return Err(Error::Precondition("no zeta class".into()));
    }
    Ok(out)
}

/// Positions in `stats` of the classes with the least internal split.
fn minimal(stats: &[ZetaStats]) -> Vec<usize> {
    let least = stats.iter().map(|s| &s.least).min().expect("nonempty");
    (0..stats.len()).filter(|&i| stats[i].least == *least).collect()
}

fn case_of(stats: &[ZetaStats]) -> Option<(usize, Option<usize>)> {
    let m = minimal(stats);
    if m.len() == 1 {
        return Some((m[0], None));
    }
    let below: Vec<&Ordinal> = m.iter().map(|&i| &stats[i].below).collect();
    distinguished_pair(&below).map(|(i, j)| (m[i], Some(m[j])))
}

pub fn zeta_cc_case(a: &RepFamily) -> Result<ZetaCase> {
    let stats = zeta_stats(a)?;
    match case_of(&stats) {
        Some((i, None)) => Ok(ZetaCase::Unique(stats[i].member.block)),
        Some((i, Some(j))) => Ok(ZetaCase::Pair(stats[i].member.block, stats[j].member.block)),
        None => Err(Error::Precondition("neither zeta case applies; prepare the family first".into())),
    }
}

/// Code of the split just above the successor of the cut point.
fn above_code(alpha: &Alpha, s: &ZetaStats) -> Result<BigUint> {
    let b = &s.member.body;
    script_n(alpha, &b.point(alpha, step(b, s.x, 1)), &b.point(alpha, step(b, s.x, 2)))
}

pub fn colour_zeta_cc(a: &RepFamily) -> Result<Colour> {
    let stats = zeta_stats(a)?;
    let alpha = a.ambient();
    match case_of(&stats) {
        Some((i, None)) => Ok(zeta_witness(alpha, &stats[i].member.body)?.colour),
        Some((i, Some(j))) => Ok(Colour::of(above_code(alpha, &stats[i])? < above_code(alpha, &stats[j])?)),
        None => Err(Error::Precondition("neither zeta case applies; prepare the family first".into())),
    }
}

/// Shrinks the competing zeta classes by removing the cut point and some
/// points just below it, until only two of them keep a low split below
/// the cut.
pub fn prepare_zeta_classes(a: &RepFamily) -> Result<RepFamily> {
    let stats = zeta_stats(a)?;
    if case_of(&stats).is_some() {
        return Ok(a.clone());
    }
    let alpha = a.ambient();
    let m = minimal(&stats);
    let mut below: Vec<&Ordinal> = m.iter().map(|&i| &stats[i].below).collect();
    below.sort();
    let bound = if below[0] == below[1] { below[0] } else { below[1] }.clone();
    let chosen: Vec<usize> = m.iter().copied().filter(|&i| stats[i].below <= bound).take(2).collect();
    let mut out = a.clone();
    for &i in m.iter().filter(|i| !chosen.contains(i)) {
        let s = &stats[i];
        let b = &s.member.body;
        let at = |by: i64| b.point(alpha, step(b, s.x, by));
        let n = (0..TRIM_BOUND as i64)
            .find(|&n| delta(&at(-n - 1), &at(-n)).is_ok_and(|d| d > bound))
            .ok_or_else(|| Error::Unsupported("zeta class cannot be trimmed".into()))?;
        let p = b.position(s.x);
        out = replace_body(&out, s.member.block, b.without(alpha, p - n + 1, p))?;
    }
    Ok(out)
}

/// Flips the unique class as a zeta copy, or removes points just above
/// the cut of one of the two distinguished classes.
pub fn flip_zeta_cc(a: &RepFamily, target: Colour) -> Result<RepFamily> {
    let prepared = prepare_zeta_classes(a)?;
    if colour_zeta_cc(&prepared)? == target {
        return Ok(prepared);
    }
    let alpha = prepared.ambient();
    let stats = zeta_stats(&prepared)?;
    match case_of(&stats).expect("prepared") {
        (i, None) => {
            let s = &stats[i];
            replace_body(&prepared, s.member.block, flip_zeta_body(alpha, &s.member.body, target)?)
        }
        (i, Some(j)) => {
            let s = if target == Colour::Zero { &stats[i] } else { &stats[j] };
            let p = s.member.body.position(s.x);
            for k in 1..=FLIP_BOUND as i64 {
                let body = s.member.body.without(alpha, p + 1, p + k);
                let candidate = replace_body(&prepared, s.member.block, body)?;
                if colour_zeta_cc(&candidate)? == target {
                    return Ok(candidate);
                }
            }
            Err(Error::Unsupported(format!("no flip within {FLIP_BOUND} removals")))
        }
    }
}
