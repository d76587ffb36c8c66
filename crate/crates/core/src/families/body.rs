//! Classes and raw sequences: a finite run of points flanked by at most one
//! descending tail on the left and one ascending tail on the right.

use std::collections::BTreeSet;

use super::part::{AscPart, Count, DescPart};
use super::schedule::{LevelSchedule, LevelSet};
use crate::cantorlex::{delta, Alpha, Point, Stem};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Asc,
    Desc,
    Zeta,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Asc => "asc",
            Kind::Desc => "desc",
            Kind::Zeta => "zeta",
        }
    }
}

/// Position of a point inside a body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Left(usize),
    Middle(usize),
    Right(usize),
}

/// Either end of a block: an attained extreme point, or a limit that the
/// block approaches without reaching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Point(Point),
    Limit(LevelSet),
}

/// The left tail decodes `left(0) > left(1) > ...`; the middle is
/// increasing; the right tail decodes `right(0) < right(1) < ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Body {
    pub left: Option<DescPart>,
    pub middle: Vec<Point>,
    pub right: Option<AscPart>,
}

impl Body {
    pub fn kind(&self) -> Option<Kind> {
        match (&self.left, &self.right) {
            (None, Some(_)) => Some(Kind::Asc),
            (Some(_), None) => Some(Kind::Desc),
            (Some(_), Some(_)) => Some(Kind::Zeta),
            (None, None) => None,
        }
    }

    pub fn point(&self, alpha: &Alpha, slot: Slot) -> Point {
        match slot {
            Slot::Left(k) => self.left.as_ref().expect("left tail").decode(alpha, k),
            Slot::Middle(i) => self.middle[i].clone(),
            Slot::Right(k) => self.right.as_ref().expect("right tail").decode(alpha, k),
        }
    }

    /// The slots of the middle together with the nearest tail point on each
    /// side, in increasing order.
    pub fn core_slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        if self.left.is_some() {
            out.push(Slot::Left(0));
        }
        out.extend((0..self.middle.len()).map(Slot::Middle));
        if self.right.is_some() {
            out.push(Slot::Right(0));
        }
        out
    }

    /// Up to `n` points from each tail plus the middle, in increasing order.
    pub fn sample(&self, alpha: &Alpha, n: usize) -> Vec<Point> {
        let mut out = Vec::new();
        if let Some(l) = &self.left {
            out.extend((0..n).rev().map(|k| l.decode(alpha, k)));
        }
        out.extend(self.middle.iter().cloned());
        if let Some(r) = &self.right {
            out.extend((0..n).map(|k| r.decode(alpha, k)));
        }
        out
    }

    pub fn validate(&self, alpha: &Alpha) -> Result<()> {
        if self.kind().is_none() {
            return Err(Error::InvalidFamily("a class needs at least one infinite tail".into()));
        }
        let core: Vec<Point> = self.core_slots().into_iter().map(|s| self.point(alpha, s)).collect();
        for p in &self.middle {
            if p.ambient() != alpha {
                return Err(Error::AmbientMismatch);
            }
        }
        if core.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFamily("points are not in increasing order".into()));
        }
        Ok(())
    }

    pub fn first(&self, alpha: &Alpha) -> Bound {
        match (&self.left, self.middle.first()) {
            (Some(l), _) => Bound::Limit(l.limit().clone()),
            (None, Some(p)) => Bound::Point(p.clone()),
            (None, None) => Bound::Point(self.point(alpha, Slot::Right(0))),
        }
    }

    pub fn last(&self, alpha: &Alpha) -> Bound {
        match (&self.right, self.middle.last()) {
            (Some(r), _) => Bound::Limit(r.limit().clone()),
            (None, Some(p)) => Bound::Point(p.clone()),
            (None, None) => Bound::Point(self.point(alpha, Slot::Left(0))),
        }
    }

    pub fn slot_of(&self, x: &Point) -> Option<Slot> {
        if let Some(i) = self.middle.iter().position(|p| p == x) {
            return Some(Slot::Middle(i));
        }
        if let Some(k) = self.left.as_ref().and_then(|l| l.index_of(x.support())) {
            return Some(Slot::Left(k));
        }
        self.right.as_ref().and_then(|r| r.index_of(x.support())).map(Slot::Right)
    }

    pub fn count_extending(&self, s: &Stem) -> Count {
        let middle = self.middle.iter().filter(|p| p.support().range(..s.height()).eq(s.bits().iter())).count();
        let left = self.left.as_ref().map_or(Count::Finite(0), |l| l.count_extending(s));
        let right = self.right.as_ref().map_or(Count::Finite(0), |r| r.count_extending(s));
        left + Count::Finite(middle) + right
    }

    /// Splits of consecutive core pairs, preceded by the first left-tail split
    /// and followed by the first right-tail split. The least split of the
    /// whole body is among these.
    pub fn split_profile(&self, alpha: &Alpha) -> Vec<Ordinal> {
        let mut out = Vec::new();
        if let Some(l) = &self.left {
            out.push(l.level(0));
        }
        let core = self.core_slots();
        for w in core.windows(2) {
            out.push(delta(&self.point(alpha, w[0]), &self.point(alpha, w[1])).expect("distinct points"));
        }
        if let Some(r) = &self.right {
            out.push(r.level(0));
        }
        out
    }

    /// Integer position of a slot: the middle occupies `0..m`, the left tail
    /// the negative numbers and the right tail `m..`.
    pub fn position(&self, slot: Slot) -> i64 {
        match slot {
            Slot::Left(k) => -1 - k as i64,
            Slot::Middle(i) => i as i64,
            Slot::Right(k) => (self.middle.len() + k) as i64,
        }
    }

    pub fn slot_at(&self, pos: i64) -> Option<Slot> {
        let m = self.middle.len() as i64;
        if pos < 0 {
            self.left.as_ref().map(|_| Slot::Left((-1 - pos) as usize))
        } else if pos < m {
            Some(Slot::Middle(pos as usize))
        } else {
            self.right.as_ref().map(|_| Slot::Right((pos - m) as usize))
        }
    }

    /// The slot `n` steps from the closed end of a one-sided body.
    pub fn sequence_slot(&self, n: usize) -> Slot {
        let m = self.middle.len();
        match self.kind() {
            Some(Kind::Desc) if n < m => Slot::Middle(m - 1 - n),
            Some(Kind::Desc) => Slot::Left(n - m),
            _ if n < m => Slot::Middle(n),
            _ => Slot::Right(n - m),
        }
    }

    /// The body with the points at positions `lo..=hi` removed. Tail points
    /// cut off from their tail by the gap become explicit middle points.
    pub fn without(&self, alpha: &Alpha, lo: i64, hi: i64) -> Body {
        if lo > hi {
            return self.clone();
        }
        let m = self.middle.len() as i64;
        let mut middle = Vec::new();
        let left = self.left.as_ref().map(|l| {
            if lo < 0 {
                for k in (0..(-1 - hi).max(0)).rev() {
                    middle.push(l.decode(alpha, k as usize));
                }
                l.drop_prefix((-lo) as usize)
            } else {
                l.clone()
            }
        });
        middle.extend(
            self.middle
                .iter()
                .enumerate()
                .filter(|(i, _)| (*i as i64) < lo || (*i as i64) > hi)
                .map(|(_, p)| p.clone()),
        );
        let right = self.right.as_ref().map(|r| {
            if hi >= m {
                for k in 0..(lo - m).max(0) {
                    middle.push(r.decode(alpha, k as usize));
                }
                r.drop_prefix((hi - m + 1) as usize)
            } else {
                r.clone()
            }
        });
        Body { left, middle, right }
    }

    /// Consecutive splits in sequence order: away from the tail for a
    /// descending body, left to right otherwise.
    pub fn sequence_splits(&self, alpha: &Alpha) -> Vec<Ordinal> {
        let mut profile = self.split_profile(alpha);
        if self.kind() == Some(Kind::Desc) {
            profile.reverse();
        }
        profile
    }
}

/// Builds the body whose consecutive splits, read left to right, are
/// `levels`, flanked by tails with the given schedules. Every point carries
/// `base`; otherwise a point has bit 1 exactly at the record minima met while
/// reading the splits to its left from right to left.
pub fn realise(
    alpha: &Alpha,
    base: &BTreeSet<Ordinal>,
    left: Option<&LevelSchedule>,
    levels: &[Ordinal],
    right: Option<&LevelSchedule>,
) -> Result<Body> {
    let forbidden =
        |b: &Ordinal| levels.contains(b) || left.is_some_and(|s| s.contains(b)) || right.is_some_and(|s| s.contains(b));
    if let Some(b) = base.iter().find(|b| forbidden(b)) {
        return Err(Error::InvalidFamily(format!("stem bit {b} is also a split level")));
    }
    let mut splits: Vec<Ordinal> = left.map(|s| s.level(0)).into_iter().collect();
    splits.extend(levels.iter().cloned());
    let records_before = |end: usize| {
        let mut out = BTreeSet::new();
        let mut floor: Option<&Ordinal> = None;
        for l in splits[..end].iter().rev() {
            if floor.is_none_or(|f| l < f) {
                out.insert(l.clone());
                floor = Some(l);
            }
        }
        out
    };
    let point = |bits: BTreeSet<Ordinal>| Point::new(alpha, base.iter().cloned().chain(bits));
    let offset = usize::from(left.is_some());
    let count = levels.len() + 1 - offset - usize::from(right.is_some());
    let mut middle = Vec::with_capacity(count);
    for i in 0..count {
        middle.push(point(records_before(offset + i + offset))?);
    }
    let left_part = match left {
        Some(s) => Some(DescPart::with_stem(base.clone(), s.clone())?),
        None => None,
    };
    let right_part = match right {
        Some(s) => {
            let records = records_before(splits.len());
            let t0 = s.level(0);
            let mut finite = base.clone();
            finite.extend(records.range(..&t0).cloned());
            let mut first: BTreeSet<Ordinal> =
                base.range((std::ops::Bound::Excluded(&t0), std::ops::Bound::Unbounded)).cloned().collect();
            first.extend(records.range((std::ops::Bound::Excluded(&t0), std::ops::Bound::Unbounded)).cloned());
            if records.contains(&t0) {
                return Err(Error::InvalidFamily("splits are not realisable".into()));
            }
            Some(AscPart::new(LevelSet::new(finite, vec![s.clone()]), s.clone(), vec![first])?)
        }
        None => None,
    };
    let body = Body { left: left_part, middle, right: right_part };
    body.validate(alpha)?;
    let expected: Vec<Ordinal> = {
        let mut e = Vec::new();
        if let Some(s) = left {
            e.push(s.level(0));
        }
        e.extend(levels.iter().cloned());
        if let Some(s) = right {
            e.push(s.level(0));
        }
        e
    };
    if body.split_profile(alpha) != expected {
        return Err(Error::InvalidFamily("splits are not realisable".into()));
    }
    Ok(body)
}

/// A canonised copy of `ω`, `ω*` or `ζ`, possibly with finitely many extra
/// points at its closed end (at the cut for `ζ`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicClass {
    ambient: Alpha,
    root: Option<Ordinal>,
    body: Body,
}

impl SymbolicClass {
    pub fn asc(alpha: &Alpha, part: AscPart, extras: Vec<Point>) -> Result<Self> {
        Self::build(alpha, None, Body { left: None, middle: extras, right: Some(part) })
    }

    pub fn desc(alpha: &Alpha, part: DescPart, extras: Vec<Point>) -> Result<Self> {
        Self::build(alpha, None, Body { left: Some(part), middle: extras, right: None })
    }

    /// A `ζ` class splitting at `r`: the left half has bit 0 at `r`, the right
    /// half bit 1. `r` is added to the right limit when missing.
    pub fn zeta(alpha: &Alpha, r: Ordinal, left: DescPart, right: AscPart, extras: Vec<Point>) -> Result<Self> {
        if left.limit().contains(&r) {
            return Err(Error::InvalidFamily(format!("left half must have bit 0 at {r}")));
        }
        let right = if right.limit().contains(&r) {
            right
        } else {
            let limit = right.limit().clone().with(r.clone());
            AscPart::new(limit, right.sched().clone(), right.upper().to_vec())?
        };
        if left.level(0) <= r || right.level(0) <= r {
            return Err(Error::InvalidFamily(format!("all levels must exceed {r}")));
        }
        if left.limit().below(&r) != right.limit().below(&r) {
            return Err(Error::InvalidFamily(format!("halves disagree below {r}")));
        }
        Self::build(alpha, Some(r), Body { left: Some(left), middle: extras, right: Some(right) })
    }

    fn build(alpha: &Alpha, root: Option<Ordinal>, body: Body) -> Result<Self> {
        body.validate(alpha)?;
        Ok(Self { ambient: alpha.clone(), root, body })
    }

    pub fn ambient(&self) -> &Alpha {
        &self.ambient
    }

    pub fn kind(&self) -> Kind {
        self.body.kind().expect("validated")
    }

    pub fn root(&self) -> Option<&Ordinal> {
        self.root.as_ref()
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn extras(&self) -> &[Point] {
        &self.body.middle
    }

    pub fn asc_part(&self) -> Option<&AscPart> {
        self.body.right.as_ref()
    }

    pub fn desc_part(&self) -> Option<&DescPart> {
        self.body.left.as_ref()
    }

    /// The class without its extras.
    pub fn bare(&self) -> SymbolicClass {
        let body = Body { middle: Vec::new(), ..self.body.clone() };
        Self { body, ..self.clone() }
    }

    /// The `n`-th point in the canonical enumeration: outward from the closed
    /// end, alternating left and right for `ζ` starting on the right.
    pub fn decode(&self, n: usize) -> Point {
        let slot = match self.kind() {
            Kind::Asc => Slot::Right(n),
            Kind::Desc => Slot::Left(n),
            Kind::Zeta if n.is_multiple_of(2) => Slot::Right(n / 2),
            Kind::Zeta => Slot::Left(n / 2),
        };
        self.body.point(&self.ambient, slot)
    }

    /// Replaces the tails, keeping the root and the extras.
    pub fn with_parts(&self, left: Option<DescPart>, right: Option<AscPart>) -> Result<SymbolicClass> {
        let extras = self.body.middle.clone();
        match (self.kind(), left, right) {
            (Kind::Asc, None, Some(r)) => Self::asc(&self.ambient, r, extras),
            (Kind::Desc, Some(l), None) => Self::desc(&self.ambient, l, extras),
            (Kind::Zeta, Some(l), Some(r)) => {
                Self::zeta(&self.ambient, self.root.clone().expect("zeta root"), l, r, extras)
            }
            _ => Err(Error::InvalidFamily("tails do not match the class kind".into())),
        }
    }

    pub fn with_extras(&self, extras: Vec<Point>) -> Result<SymbolicClass> {
        Self::build(&self.ambient, self.root.clone(), Body { middle: extras, ..self.body.clone() })
    }
}

/// An arbitrary (not necessarily canonised) copy of `ω`, `ω*` or `ζ`: a
/// finite run of explicit points followed by canonised tails. `window`
/// certifies that the least consecutive split is among the first `window`
/// splits in sequence order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawSequence {
    ambient: Alpha,
    body: Body,
    window: usize,
}

impl RawSequence {
    pub fn new(alpha: &Alpha, body: Body, window: usize) -> Result<Self> {
        body.validate(alpha)?;
        let splits = body.sequence_splits(alpha);
        if window == 0 || window > splits.len() {
            return Err(Error::Window(format!("window {window} outside 1..={}", splits.len())));
        }
        let inside = splits[..window].iter().min().expect("nonempty window");
        if let Some(out) = splits[window..].iter().find(|s| *s < inside) {
            return Err(Error::Window(format!("split {out} undercuts the window minimum {inside}")));
        }
        Ok(Self { ambient: alpha.clone(), body, window })
    }

    /// Wraps `body` with the smallest valid window.
    pub fn certified(alpha: &Alpha, body: Body) -> Result<Self> {
        body.validate(alpha)?;
        let splits = body.sequence_splits(alpha);
        let least = splits.iter().min().expect("at least one split");
        let window = splits.iter().position(|s| s == least).expect("present") + 1;
        Self::new(alpha, body, window)
    }

    pub fn ambient(&self) -> &Alpha {
        &self.ambient
    }

    pub fn kind(&self) -> Kind {
        self.body.kind().expect("validated")
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// The `n`-th point in sequence order (for `ζ`, the enumeration of
    /// [`SymbolicClass::decode`] started at the first middle point).
    pub fn decode(&self, n: usize) -> Point {
        let m = self.body.middle.len();
        let slot = match self.kind() {
            Kind::Asc | Kind::Desc => self.body.sequence_slot(n),
            Kind::Zeta if n < m => Slot::Middle(n),
            Kind::Zeta if (n - m).is_multiple_of(2) => Slot::Right((n - m) / 2),
            Kind::Zeta => Slot::Left((n - m) / 2),
        };
        self.body.point(&self.ambient, slot)
    }
}
