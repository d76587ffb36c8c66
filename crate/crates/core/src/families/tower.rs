//! `ω`-many consecutive canonised copies of `ω*`.

use std::collections::BTreeSet;

use super::body::Bound;
use super::part::{Count, DescPart};
use super::schedule::{LevelSchedule, LevelSet};
use crate::cantorlex::{Alpha, Point, Stem};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Point `(j, n)` carries `stem`, the roots `R(0), ..., R(j-1)` and the single
/// inner level `I_j(n) = inner(j) + step·n`. Interval `j` is a descending
/// copy splitting at `I_j(n)`; intervals `j < j'` split at `R(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    ambient: Alpha,
    stem: BTreeSet<Ordinal>,
    roots: LevelSchedule,
    inner: LevelSchedule,
    step: Ordinal,
}

/// Intervals checked one by one before the affine tails take over.
const EXPLICIT_INTERVALS: usize = 64;

impl Tower {
    pub fn new(
        alpha: &Alpha,
        stem: BTreeSet<Ordinal>,
        roots: LevelSchedule,
        inner: LevelSchedule,
        step: Ordinal,
    ) -> Result<Self> {
        if step.is_zero() {
            return Err(Error::InvalidSchedule("tower step must be at least 1".into()));
        }
        let r0 = roots.level(0);
        if let Some(b) = stem.iter().find(|b| **b >= r0) {
            return Err(Error::InvalidFamily(format!("tower stem bit {b} must lie below the first root {r0}")));
        }
        let j0 = EXPLICIT_INTERVALS.max(roots.prefix().len()).max(inner.prefix().len());
        for j in 0..=j0 {
            if inner.level(j) <= roots.level(j) {
                return Err(Error::InvalidFamily(format!("interval {j} starts below its root")));
            }
        }
        let gap = inner.level(j0).left_sub(&roots.level(j0)).expect("inner above root");
        let (a, b) = (inner.step(), roots.step());
        let keeps_above = a > b || (a == b && gap.leading_exponent() >= a.leading_exponent());
        if !keeps_above {
            return Err(Error::InvalidFamily("inner levels eventually fall to the roots".into()));
        }
        if let Some(b) = stem.iter().find(|b| !alpha.contains(b)) {
            return Err(Error::OutOfRange(b.to_string()));
        }
        if alpha.countable && inner.sup() > alpha.length {
            return Err(Error::OutOfRange(inner.sup().to_string()));
        }
        Ok(Self { ambient: alpha.clone(), stem, roots, inner, step })
    }

    pub fn ambient(&self) -> &Alpha {
        &self.ambient
    }

    pub fn stem(&self) -> &BTreeSet<Ordinal> {
        &self.stem
    }

    pub fn roots(&self) -> &LevelSchedule {
        &self.roots
    }

    pub fn inner(&self) -> &LevelSchedule {
        &self.inner
    }

    pub fn step(&self) -> &Ordinal {
        &self.step
    }

    pub fn interval(&self, j: usize) -> DescPart {
        let mut limit = self.stem.clone();
        limit.extend(self.roots.levels(j));
        let sched = LevelSchedule::affine(self.inner.level(j), self.step.clone()).expect("nonzero step");
        DescPart::with_stem(limit, sched).expect("tower intervals are valid")
    }

    pub fn point(&self, j: usize, n: usize) -> Point {
        self.interval(j).decode(&self.ambient, n)
    }

    /// The intervals from `k` on.
    pub fn drop_intervals(&self, k: usize) -> Tower {
        let mut stem = self.stem.clone();
        stem.extend(self.roots.levels(k));
        Tower {
            ambient: self.ambient.clone(),
            stem,
            roots: self.roots.drop(k),
            inner: self.inner.drop(k),
            step: self.step.clone(),
        }
    }

    pub fn first(&self) -> Bound {
        Bound::Limit(LevelSet::finite_set(self.stem.clone()))
    }

    pub fn last(&self) -> Bound {
        Bound::Limit(LevelSet::new(self.stem.clone(), vec![self.roots.clone()]))
    }

    /// `(j, n)` with `point(j, n) = x`.
    pub fn position_of(&self, x: &BTreeSet<Ordinal>) -> Option<(usize, usize)> {
        let j = (0..=x.len()).find(|&j| !x.contains(&self.roots.level(j)))?;
        self.interval(j).index_of(x).map(|n| (j, n))
    }

    pub fn count_extending(&self, s: &Stem) -> Count {
        let settled = self.roots.count_below(s.height());
        let last = settled.map_or(s.bits().len(), |j0| j0.min(s.bits().len()));
        let near: Count = (0..=last).map(|j| self.interval(j).count_extending(s)).sum();
        let far = match settled {
            Some(j0) => {
                let below: BTreeSet<Ordinal> =
                    self.stem.range(..s.height()).cloned().chain(self.roots.levels(j0)).collect();
                if below == *s.bits() {
                    Count::Infinite
                } else {
                    Count::Finite(0)
                }
            }
            None => Count::Finite(0),
        };
        near + far
    }
}
