//! Canonisation of families, and the ordinal sets `N` and `N′` read off
//! canonised pieces.

use std::collections::BTreeSet;
use std::fmt;

use crate::cantorlex::{delta, Alpha, Point};
use crate::error::{Error, Result};
use crate::families::{
    AscPart, Block, Body, DescPart, IndexSchedule, Kind, LevelSchedule, RawSequence, RepFamily, SymbolicClass,
};
use crate::ordinal::Ordinal;


/// Greedy subsequence over the splits `s_0, s_1, ...` of a sequence whose
/// first `head.len()` splits are explicit and whose later splits
/// `tail(0) < tail(1) < ...` increase. Each pick is the earliest index
/// minimising the split among indices after the previous pick. Returns the
/// picks below `head.len()` and the index at which picking becomes
/// consecutive.
fn greedy(head: &[Ordinal], tail: impl Fn(usize) -> Ordinal) -> (Vec<usize>, usize) {
    let m = head.len();
    let mut picks = Vec::new();
    let mut from = 0;
    loop {
        let tail_index = from.max(m);
        let tail_value = tail(tail_index - m);
        let best = (from..m).min_by(|&a, &b| head[a].cmp(&head[b]).then(a.cmp(&b)));
        match best {
            Some(i) if head[i] <= tail_value => {
                picks.push(i);
                from = i + 1;
            }
            _ => return (picks, tail_index),
        }
    }
}

fn above(x: &Point, level: &Ordinal) -> BTreeSet<Ordinal> {
    x.support().range((std::ops::Bound::Excluded(level), std::ops::Bound::Unbounded)).cloned().collect()
}

fn glue_schedule(head: Vec<Ordinal>, tail: &LevelSchedule) -> Result<LevelSchedule> {
    let mut prefix = head;
    prefix.extend(tail.prefix().iter().cloned());
    LevelSchedule::new(prefix, tail.start().clone(), tail.step().clone())
}

/// Canonised subsequence of `head` (increasing) followed by `tail`.
fn canonise_asc(alpha: &Alpha, head: &[Point], tail: &AscPart) -> Result<AscPart> {
    let m = head.len();
    let split = |i: usize| {
        let next = if i + 1 < m { head[i + 1].clone() } else { tail.decode(alpha, 0) };
        delta(&head[i], &next)
    };
    let splits = (0..m).map(split).collect::<Result<Vec<_>>>()?;
    let (picks, t) = greedy(&splits, |k| tail.level(k));
    let rest = tail.drop_prefix(t - m);
    let levels = picks.iter().map(|&i| splits[i].clone()).collect();
    let mut upper: Vec<BTreeSet<Ordinal>> = picks.iter().map(|&i| above(&head[i], &splits[i])).collect();
    upper.extend(rest.upper().iter().cloned());
    let part = AscPart::new(tail.limit().clone(), glue_schedule(levels, rest.sched())?, upper)?;
    let expected = picks.iter().map(|&i| head[i].clone()).chain((0..2).map(|k| rest.decode(alpha, k)));
    if !expected.enumerate().all(|(k, x)| part.decode(alpha, k) == x) {
        return Err(Error::Unsupported("canonised tail does not reproduce the picked points".into()));
    }
    Ok(part)
}

/// Canonised subsequence of `tail` followed by `head` (increasing), read
/// from the right.
fn canonise_desc(alpha: &Alpha, tail: &DescPart, head: &[Point]) -> Result<DescPart> {
    let seq: Vec<Point> = head.iter().rev().cloned().collect();
    let m = seq.len();
    let split = |i: usize| {
        let next = if i + 1 < m { seq[i + 1].clone() } else { tail.decode(alpha, 0) };
        delta(&seq[i], &next)
    };
    let splits = (0..m).map(split).collect::<Result<Vec<_>>>()?;
    let (picks, t) = greedy(&splits, |k| tail.level(k));
    let rest = tail.drop_prefix(t - m);
    let levels = picks.iter().map(|&i| splits[i].clone()).collect();
    let mut upper: Vec<BTreeSet<Ordinal>> = picks.iter().map(|&i| above(&seq[i], &splits[i])).collect();
    upper.extend(rest.upper().iter().cloned());
    let part = DescPart::new(tail.limit().clone(), glue_schedule(levels, rest.sched())?, upper)?;
    let expected = picks.iter().map(|&i| seq[i].clone()).chain((0..2).map(|k| rest.decode(alpha, k)));
    if !expected.enumerate().all(|(k, x)| part.decode(alpha, k) == x) {
        return Err(Error::Unsupported("canonised tail does not reproduce the picked points".into()));
    }
    Ok(part)
}

/// A canonised subcopy of `r` of the same order type.
pub fn canonise_raw(r: &RawSequence) -> Result<SymbolicClass> {
    let alpha = r.ambient();
    let checked = RawSequence::new(alpha, r.body().clone(), r.window())?;
    canonise_body(alpha, checked.body())
}

fn canonise_body(alpha: &Alpha, body: &Body) -> Result<SymbolicClass> {
    match (&body.left, &body.right) {
        (None, Some(right)) => SymbolicClass::asc(alpha, canonise_asc(alpha, &body.middle, right)?, Vec::new()),
        (Some(left), None) => SymbolicClass::desc(alpha, canonise_desc(alpha, left, &body.middle)?, Vec::new()),
        (Some(left), Some(right)) => {
            let profile = body.split_profile(alpha);
            let (cut, r) = profile.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).expect("nonempty profile");
            let r = r.clone();
            let (l, a) = if cut == 0 {
                let mut head = vec![left.decode(alpha, 0)];
                head.extend(body.middle.iter().cloned());
                (left.drop_prefix(1), canonise_asc(alpha, &head, right)?)
            } else if cut == profile.len() - 1 {
                let mut head = body.middle.clone();
                head.push(right.decode(alpha, 0));
                (canonise_desc(alpha, left, &head)?, right.drop_prefix(1))
            } else {
                let (lo, hi) = body.middle.split_at(cut - 1);
                (canonise_desc(alpha, left, lo)?, canonise_asc(alpha, hi, right)?)
            };
            SymbolicClass::zeta(alpha, r, l, a, Vec::new())
        }
        (None, None) => Err(Error::InvalidFamily("a class needs at least one infinite tail".into())),
    }
}

/// Replaces every infinite condensation class (other than a tower) by a
/// canonised subcopy. Finite points glued to a class are absorbed into it.
pub fn canonise_family(a: &RepFamily) -> Result<RepFamily> {
    let alpha = a.ambient();
    let mut blocks = Vec::new();
    for cc in a.condensation_classes() {
        let bare_class = match cc.blocks.as_slice() {
            [i] => matches!(&a.blocks()[*i], Block::Class(c) if c.extras().is_empty()),
            _ => false,
        };
        match a.class_body(&cc) {
            Some(body) if !bare_class => blocks.push(Block::Class(canonise_body(alpha, &body)?)),
            _ => blocks.extend(cc.blocks.iter().map(|&i| a.blocks()[i].clone())),
        }
    }
    a.with_blocks(blocks)
}

pub fn is_canonised(a: &RepFamily) -> bool {
    canonise_family(a).is_ok_and(|c| c == *a)
}

/// One piece of a [`SymbolicOrdinalSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Finite(BTreeSet<Ordinal>),
    /// `{offset + level : level in sched}`.
    Shifted {
        offset: Ordinal,
        sched: LevelSchedule,
    },
}

impl Component {
    fn min(&self) -> Option<Ordinal> {
        match self {
            Component::Finite(s) => s.first().cloned(),
            Component::Shifted { offset, sched } => Some(offset.add(&sched.level(0))),
        }
    }

    /// Least ordinal above every element.
    fn sup(&self) -> Ordinal {
        match self {
            Component::Finite(s) => s.last().map_or(Ordinal::zero(), Ordinal::succ),
            Component::Shifted { offset, sched } => offset.add(&sched.sup()),
        }
    }

    /// The same set with offset zero and a normalised schedule.
    fn normalized(&self) -> Component {
        match self {
            Component::Finite(_) => self.clone(),
            Component::Shifted { offset, sched } => {
                let prefix = sched.prefix().iter().map(|p| offset.add(p)).collect();
                let shifted = LevelSchedule::new(prefix, offset.add(sched.start()), sched.step().clone())
                    .expect("left addition is strictly increasing");
                Component::Shifted { offset: Ordinal::zero(), sched: shifted.normalized() }
            }
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Finite(s) => crate::cantorlex::write_set(f, s),
            Component::Shifted { offset, sched } => write!(f, "{{{offset} + {sched}}}"),
        }
    }
}

/// A finite union of order-separated components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicOrdinalSet {
    components: Vec<Component>,
}

impl SymbolicOrdinalSet {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        let components: Vec<Component> =
            components.into_iter().filter(|c| !matches!(c, Component::Finite(s) if s.is_empty())).collect();
        for w in components.windows(2) {
            let next_min = w[1].min().expect("nonempty component");
            if w[0].sup() > next_min {
                return Err(Error::Precondition(format!("components {} and {} overlap", w[0], w[1])));
            }
        }
        Ok(Self { components })
    }

    pub fn schedule(sched: LevelSchedule) -> Self {
        Self { components: vec![Component::Shifted { offset: Ordinal::zero(), sched }] }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Description with offsets folded in, so that equal descriptions of
    /// one set compare equal.
    pub fn normalized(&self) -> SymbolicOrdinalSet {
        Self { components: self.components.iter().map(Component::normalized).collect() }
    }

    pub fn same_set(&self, other: &SymbolicOrdinalSet) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.components.iter().any(|c| match c {
            Component::Finite(s) => s.contains(x),
            Component::Shifted { offset, sched } => x.left_sub(offset).is_some_and(|d| sched.contains(&d)),
        })
    }

    pub fn sup(&self) -> Ordinal {
        self.components.last().map_or(Ordinal::zero(), Component::sup)
    }

    /// The elements in `[lo, hi)`, assuming both cuts fall between
    /// components.
    pub fn restrict(&self, lo: &Ordinal, hi: &Ordinal) -> Result<SymbolicOrdinalSet> {
        let mut out = Vec::new();
        for c in &self.components {
            let (min, sup) = (c.min().expect("nonempty"), c.sup());
            if min >= *lo && sup <= *hi {
                out.push(c.clone());
            } else if sup > *lo && min < *hi {
                return Err(Error::Precondition(format!("cut inside component {c}")));
            }
        }
        Self::new(out)
    }

    pub fn concat(&self, rhs: &SymbolicOrdinalSet) -> Result<SymbolicOrdinalSet> {
        Self::new(self.components.iter().chain(&rhs.components).cloned().collect())
    }
}

impl fmt::Display for SymbolicOrdinalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            c.fmt(f)?;
        }
        f.write_str("]")
    }
}

fn class_schedule(c: &SymbolicClass) -> Result<&LevelSchedule> {
    if !c.extras().is_empty() {
        return Err(Error::Precondition("the class has extra points".into()));
    }
    match c.kind() {
        Kind::Asc => Ok(c.asc_part().expect("asc").sched()),
        Kind::Desc => Ok(c.desc_part().expect("desc").sched()),
        Kind::Zeta => Err(Error::Precondition("a zeta class is not an indecomposable copy".into())),
    }
}

/// The splits of consecutive points of a bare `ω` or `ω*` class.
pub fn n_map(c: &SymbolicClass) -> Result<SymbolicOrdinalSet> {
    Ok(SymbolicOrdinalSet::schedule(class_schedule(c)?.clone()))
}

/// The subclass on the indices chosen by `sel`; its image under [`n_map`] is
/// the selected part of the image of `c`.
pub fn n_realize(c: &SymbolicClass, sel: &IndexSchedule) -> Result<SymbolicClass> {
    let sched = class_schedule(c)?;
    let out = match c.kind() {
        Kind::Asc => c.with_parts(None, Some(c.asc_part().expect("asc").select(sel)))?,
        _ => c.with_parts(Some(c.desc_part().expect("desc").select(sel)), None)?,
    };
    let target = SymbolicOrdinalSet::schedule(sched.compose(sel));
    if !n_map(&out)?.same_set(&target) {
        return Err(Error::Unsupported("selection did not realise the requested set".into()));
    }
    Ok(out)
}

/// A canonised copy of `ω` or `ω*` inside a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub block: usize,
    pub kind: Kind,
    pub sched: LevelSchedule,
}

impl Piece {
    /// Supremum of the consecutive splits.
    pub fn varsigma(&self) -> Ordinal {
        self.sched.sup()
    }
}

/// The indecomposable pieces of a canonised family of bare classes, left
/// to right. A zeta class contributes its two halves.
pub fn indecomposable_pieces(a: &RepFamily) -> Result<Vec<Piece>> {
    let mut out = Vec::new();
    for (i, b) in a.blocks().iter().enumerate() {
        match b {
            Block::Class(c) if c.extras().is_empty() => {
                if let Some(l) = c.desc_part() {
                    out.push(Piece { block: i, kind: Kind::Desc, sched: l.sched().clone() });
                }
                if let Some(r) = c.asc_part() {
                    out.push(Piece { block: i, kind: Kind::Asc, sched: r.sched().clone() });
                }
            }
            Block::Class(_) => return Err(Error::Precondition("classes must not carry extra points".into())),
            Block::Raw(_) => return Err(Error::Precondition("raw blocks are not canonised".into())),
            Block::Finite(_) => {
                return Err(Error::Unsupported("finite blocks have no indecomposable copy here".into()))
            }
            Block::Tower(_) => {
                return Err(Error::Unsupported("the type is not a finite sum of ordinals and reverses".into()))
            }
        }
    }
    if out.is_empty() {
        return Err(Error::FiniteType);
    }
    Ok(out)
}

/// `N′(A)`: the pieces' split sets shifted by the sums of the suprema of
/// the pieces before them. Every piece has length `ω`, so pieces are taken
/// left to right.
pub fn n_prime(a: &RepFamily) -> Result<SymbolicOrdinalSet> {
    let mut offset = Ordinal::zero();
    let mut components = Vec::new();
    for p in indecomposable_pieces(a)? {
        let sup = p.varsigma();
        components.push(Component::Shifted { offset: offset.clone(), sched: p.sched });
        offset = offset.add(&sup);
    }
    SymbolicOrdinalSet::new(components)
}
