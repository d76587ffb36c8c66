//! The two canonised `ω`-sequences.
//!
//! Both are described by their limit `Y` (the pointwise limit of the
//! sequence, possibly with infinite support), a level schedule `L`, and
//! optional explicit upper parts. Writing `U_k` for the upper part of the
//! `k`-th point:
//!
//! * ascending: `x_k = (Y ∩ [0, L(k))) ∪ U_k`, with every level in `Y`;
//! * descending: `x_k = (Y ∩ [0, L(k))) ∪ {L(k)} ∪ U_k`, with no level in `Y`.
//!
//! `U_k ⊆ (L(k), ∞)` is explicit for the first few `k` and otherwise
//! consists of the finite elements of `Y` above `L(k)` that are not levels.
//! In both cases `δ(x_j, x_k) = L(min(j, k))`.

use std::collections::BTreeSet;

use super::schedule::{IndexSchedule, LevelSchedule, LevelSet, WALK_CAP};
use crate::cantorlex::{Alpha, Point, Stem};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Number of points extending a stem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl std::ops::Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        match (self, rhs) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Infinite,
        }
    }
}

impl std::iter::Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Count {
        iter.fold(Count::Finite(0), |a, b| a + b)
    }
}

fn agrees_below(support: &BTreeSet<Ordinal>, s: &Stem) -> bool {
    support.range(..s.height()).eq(s.bits().iter())
}

fn check_runs(limit: &LevelSet, sched: &LevelSchedule) -> Result<()> {
    let sup = sched.sup();
    match limit.runs().iter().find(|r| r.sup() < sup) {
        Some(r) => Err(Error::InvalidFamily(format!("run {r} of the limit ends below the levels"))),
        None => Ok(()),
    }
}

fn check_uppers(sched: &LevelSchedule, upper: &[BTreeSet<Ordinal>]) -> Result<()> {
    for (k, u) in upper.iter().enumerate() {
        let l = sched.level(k);
        if u.first().is_some_and(|m| *m <= l) {
            return Err(Error::InvalidFamily(format!("upper part {k} must lie above level {l}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AscPart {
    limit: LevelSet,
    sched: LevelSchedule,
    upper: Vec<BTreeSet<Ordinal>>,
}

impl AscPart {
    pub fn new(limit: LevelSet, sched: LevelSchedule, upper: Vec<BTreeSet<Ordinal>>) -> Result<Self> {
        check_runs(&limit, &sched)?;
        for l in sched.prefix() {
            if !limit.contains(l) {
                return Err(Error::InvalidFamily(format!("level {l} is missing from the limit")));
            }
        }
        let tail = LevelSchedule::affine(sched.start().clone(), sched.step().clone())?;
        if !limit.runs().iter().any(|r| tail.is_subset_of(r)) {
            return Err(Error::InvalidFamily("the levels are not covered by the limit".into()));
        }
        check_uppers(&sched, &upper)?;
        let mut part = Self { limit, sched, upper };
        part.trim();
        Ok(part)
    }

    /// Every point carries `stem`; the `k`-th also carries levels `0..k`.
    pub fn with_stem(stem: BTreeSet<Ordinal>, sched: LevelSchedule) -> Result<Self> {
        if let Some(b) = stem.iter().find(|b| sched.contains(b)) {
            return Err(Error::InvalidFamily(format!("stem bit {b} is a level")));
        }
        Self::new(LevelSet::new(stem, vec![sched.clone()]), sched, Vec::new())
    }

    fn trim(&mut self) {
        while let Some(last) = self.upper.last() {
            if *last != self.default_upper(self.upper.len() - 1) {
                break;
            }
            self.upper.pop();
        }
    }

    pub fn limit(&self) -> &LevelSet {
        &self.limit
    }

    pub fn sched(&self) -> &LevelSchedule {
        &self.sched
    }

    pub fn upper(&self) -> &[BTreeSet<Ordinal>] {
        &self.upper
    }

    /// The stem when the limit is exactly stem bits plus the levels.
    pub fn stem(&self) -> Option<BTreeSet<Ordinal>> {
        let plain = self.upper.is_empty() && self.limit.runs() == std::slice::from_ref(&self.sched);
        let stem: BTreeSet<Ordinal> = self.limit.finite().iter().filter(|b| !self.sched.contains(b)).cloned().collect();
        (plain && stem.len() == self.limit.finite().len()).then_some(stem)
    }

    fn default_upper(&self, k: usize) -> BTreeSet<Ordinal> {
        let l = self.sched.level(k);
        let above = self.limit.finite().range((std::ops::Bound::Excluded(&l), std::ops::Bound::Unbounded));
        above.filter(|b| !self.sched.contains(b)).cloned().collect()
    }

    pub fn upper_at(&self, k: usize) -> BTreeSet<Ordinal> {
        self.upper.get(k).cloned().unwrap_or_else(|| self.default_upper(k))
    }

    pub fn level(&self, k: usize) -> Ordinal {
        self.sched.level(k)
    }

    pub fn support(&self, k: usize) -> BTreeSet<Ordinal> {
        let mut bits = self.limit.below(&self.sched.level(k)).expect("limit is finite below every level");
        bits.extend(self.upper_at(k));
        bits
    }

    pub fn decode(&self, alpha: &Alpha, k: usize) -> Point {
        Point::from_set(alpha, self.support(k))
    }

    pub fn select(&self, sel: &IndexSchedule) -> AscPart {
        let sched = self.sched.compose(sel);
        let level_bits: Vec<&Ordinal> = self.limit.finite().iter().filter(|b| self.sched.contains(b)).collect();
        let top = level_bits.last().copied();
        let mut upper = Vec::new();
        let mut n = 0;
        loop {
            let i = sel.apply(n);
            let explicit_before = i < self.upper.len();
            let shadowed = top.is_some_and(|t| sched.level(n) < *t);
            if !explicit_before && !shadowed {
                break;
            }
            upper.push(self.upper_at(i));
            n += 1;
        }
        let mut part = Self { limit: self.limit.clone(), sched, upper };
        part.trim();
        part
    }

    pub fn drop_prefix(&self, k: usize) -> AscPart {
        self.select(&IndexSchedule::tail(k))
    }

    /// Index `k` with `x_k = x`.
    pub fn index_of(&self, x: &BTreeSet<Ordinal>) -> Option<usize> {
        let k = (0..=x.len()).find(|&j| !x.contains(&self.sched.level(j)))?;
        (self.support(k) == *x).then_some(k)
    }

    /// How many points extend `s`.
    pub fn count_extending(&self, s: &Stem) -> Count {
        let h = s.height();
        let direct_bound = s.bits().len() + 1;
        let tail_from = self.sched.count_below(h);
        let direct = tail_from.map_or(direct_bound, |t| t.min(direct_bound));
        let hits = (0..direct).filter(|&k| agrees_below(&self.support(k), s)).count();
        let tail = match tail_from {
            Some(_) if self.limit.below(h).is_some_and(|b| b == *s.bits()) => Count::Infinite,
            _ => Count::Finite(0),
        };
        Count::Finite(hits) + tail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DescPart {
    limit: LevelSet,
    sched: LevelSchedule,
    upper: Vec<BTreeSet<Ordinal>>,
}

impl DescPart {
    pub fn new(limit: LevelSet, sched: LevelSchedule, upper: Vec<BTreeSet<Ordinal>>) -> Result<Self> {
        check_runs(&limit, &sched)?;
        if let Some(b) = limit.finite().iter().find(|b| sched.contains(b)) {
            return Err(Error::InvalidFamily(format!("limit bit {b} is a level")));
        }
        for r in limit.runs() {
            let clash = (0..WALK_CAP).map(|i| r.level(i)).find(|l| sched.contains(l));
            if let Some(l) = clash {
                return Err(Error::InvalidFamily(format!("limit run meets the levels at {l}")));
            }
        }
        check_uppers(&sched, &upper)?;
        let mut part = Self { limit, sched, upper };
        part.trim();
        Ok(part)
    }

    /// The `k`-th point is `stem` plus level `k`.
    pub fn with_stem(stem: BTreeSet<Ordinal>, sched: LevelSchedule) -> Result<Self> {
        Self::new(LevelSet::finite_set(stem), sched, Vec::new())
    }

    fn trim(&mut self) {
        while let Some(last) = self.upper.last() {
            if *last != self.default_upper(self.upper.len() - 1) {
                break;
            }
            self.upper.pop();
        }
    }

    pub fn limit(&self) -> &LevelSet {
        &self.limit
    }

    pub fn sched(&self) -> &LevelSchedule {
        &self.sched
    }

    pub fn upper(&self) -> &[BTreeSet<Ordinal>] {
        &self.upper
    }

    pub fn stem(&self) -> Option<BTreeSet<Ordinal>> {
        (self.upper.is_empty() && self.limit.is_finite()).then(|| self.limit.finite().clone())
    }

    fn default_upper(&self, k: usize) -> BTreeSet<Ordinal> {
        let l = self.sched.level(k);
        self.limit.finite().range((std::ops::Bound::Excluded(&l), std::ops::Bound::Unbounded)).cloned().collect()
    }

    pub fn upper_at(&self, k: usize) -> BTreeSet<Ordinal> {
        self.upper.get(k).cloned().unwrap_or_else(|| self.default_upper(k))
    }

    pub fn level(&self, k: usize) -> Ordinal {
        self.sched.level(k)
    }

    pub fn support(&self, k: usize) -> BTreeSet<Ordinal> {
        let l = self.sched.level(k);
        let mut bits = self.limit.below(&l).expect("limit is finite below every level");
        bits.insert(l);
        bits.extend(self.upper_at(k));
        bits
    }

    pub fn decode(&self, alpha: &Alpha, k: usize) -> Point {
        Point::from_set(alpha, self.support(k))
    }

    pub fn select(&self, sel: &IndexSchedule) -> DescPart {
        let sched = self.sched.compose(sel);
        let mut upper = Vec::new();
        let mut n = 0;
        while sel.apply(n) < self.upper.len() {
            upper.push(self.upper[sel.apply(n)].clone());
            n += 1;
        }
        let mut part = Self { limit: self.limit.clone(), sched, upper };
        part.trim();
        part
    }

    pub fn drop_prefix(&self, k: usize) -> DescPart {
        self.select(&IndexSchedule::tail(k))
    }

    pub fn index_of(&self, x: &BTreeSet<Ordinal>) -> Option<usize> {
        let k = x.iter().filter_map(|b| self.sched.index_of(b)).min()?;
        (self.support(k) == *x).then_some(k)
    }

    pub fn count_extending(&self, s: &Stem) -> Count {
        let h = s.height();
        let tail_from = self.sched.count_below(h);
        let mut candidates: BTreeSet<usize> = s.bits().iter().filter_map(|b| self.sched.index_of(b)).collect();
        if let Some(t) = tail_from {
            candidates.retain(|&k| k < t);
        }
        let hits = candidates.iter().filter(|&&k| agrees_below(&self.support(k), s)).count();
        let tail = match tail_from {
            Some(_) if self.limit.below(h).is_some_and(|b| b == *s.bits()) => Count::Infinite,
            _ => Count::Finite(0),
        };
        Count::Finite(hits) + tail
    }
}
