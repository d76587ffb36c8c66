//! Increasing level sequences and finitely described sets of levels.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// How far a run is walked before giving up on a symbolic question.
pub(crate) const WALK_CAP: usize = 256;

/// A strictly increasing `ω`-sequence of ordinals: an explicit prefix
/// followed by `start + step·n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelSchedule {
    prefix: Vec<Ordinal>,
    start: Ordinal,
    step: Ordinal,
}

impl LevelSchedule {
    pub fn new(prefix: Vec<Ordinal>, start: Ordinal, step: Ordinal) -> Result<Self> {
        if step.is_zero() {
            return Err(Error::InvalidSchedule("step must be at least 1".into()));
        }
        for w in prefix.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidSchedule(format!("prefix not increasing at {}", w[1])));
            }
        }
        if prefix.last().is_some_and(|p| *p >= start) {
            return Err(Error::InvalidSchedule("prefix must stay below the start".into()));
        }
        Ok(Self { prefix, start, step })
    }

    pub fn affine(start: Ordinal, step: Ordinal) -> Result<Self> {
        Self::new(Vec::new(), start, step)
    }

    /// `start + n` for every `n`.
    pub fn from(start: u64) -> Self {
        Self { prefix: Vec::new(), start: Ordinal::nat(start), step: Ordinal::one() }
    }

    pub fn prefix(&self) -> &[Ordinal] {
        &self.prefix
    }

    pub fn start(&self) -> &Ordinal {
        &self.start
    }

    pub fn step(&self) -> &Ordinal {
        &self.step
    }

    pub fn level(&self, i: usize) -> Ordinal {
        match self.prefix.get(i) {
            Some(l) => l.clone(),
            None => self.start.add(&self.step.mul_nat((i - self.prefix.len()) as u64)),
        }
    }

    pub fn levels(&self, n: usize) -> Vec<Ordinal> {
        (0..n).map(|i| self.level(i)).collect()
    }

    /// `start + step·ω`, the least ordinal above every level.
    pub fn sup(&self) -> Ordinal {
        self.start.add(&self.step.mul(&Ordinal::omega()))
    }

    pub fn index_of(&self, x: &Ordinal) -> Option<usize> {
        if let Ok(i) = self.prefix.binary_search(x) {
            return Some(i);
        }
        let d = x.left_sub(&self.start)?;
        let m = self.step.max_multiple_below_or_eq(&d)?;
        let m = usize::try_from(m).ok()?;
        (self.step.mul_nat(m as u64) == d).then_some(self.prefix.len() + m)
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.index_of(x).is_some()
    }

    /// Number of levels below `x`, or `None` when all of them are.
    pub fn count_below(&self, x: &Ordinal) -> Option<usize> {
        let in_prefix = self.prefix.partition_point(|p| p < x);
        if in_prefix < self.prefix.len() || *x <= self.start {
            return Some(in_prefix);
        }
        let d = x.left_sub(&self.start).expect("x lies above the start");
        let m = self.step.max_multiple_below_or_eq(&d)?;
        let m = usize::try_from(m).ok()?;
        let tail = if self.step.mul_nat(m as u64) < d { m + 1 } else { m };
        Some(self.prefix.len() + tail)
    }

    /// The levels from index `k` on.
    pub fn drop(&self, k: usize) -> LevelSchedule {
        if k <= self.prefix.len() {
            return Self { prefix: self.prefix[k..].to_vec(), ..self.clone() };
        }
        Self { prefix: Vec::new(), start: self.level(k), step: self.step.clone() }
    }

    /// The levels at the indices chosen by `sel`, in order.
    pub fn compose(&self, sel: &IndexSchedule) -> LevelSchedule {
        let mut prefix: Vec<Ordinal> = sel.prefix.iter().map(|&i| self.level(i)).collect();
        let mut n = 0;
        while sel.start + sel.step * n < self.prefix.len() {
            prefix.push(self.level(sel.start + sel.step * n));
            n += 1;
        }
        let first = sel.start + sel.step * n;
        Self { prefix, start: self.level(first), step: self.step.mul_nat(sel.step as u64) }
    }

    /// Equal schedule with as many prefix entries as possible folded into the
    /// affine tail.
    pub fn normalized(&self) -> LevelSchedule {
        let mut out = self.clone();
        while let Some(last) = out.prefix.last() {
            if last.add(&out.step) != out.start {
                break;
            }
            out.start = out.prefix.pop().expect("nonempty prefix");
        }
        out
    }

    /// Whether every level of `self` is a level of `other`.
    pub fn is_subset_of(&self, other: &LevelSchedule) -> bool {
        if !self.prefix.iter().all(|p| other.contains(p)) {
            return false;
        }
        match other.index_of(&self.start) {
            Some(i) if i >= other.prefix.len() => {
                let j = other.step.max_multiple_below_or_eq(&self.step);
                j.is_some_and(|j| other.step.mul_nat_big(&j) == self.step)
            }
            _ => false,
        }
    }
}

impl fmt::Display for LevelSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("sched(prefix=[")?;
        for (i, p) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "], start={}, step={})", self.start, self.step)
    }
}

/// A strictly increasing `ω`-sequence of indices: an explicit prefix
/// followed by `start + step·n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSchedule {
    prefix: Vec<usize>,
    start: usize,
    step: usize,
}

impl IndexSchedule {
    pub fn new(prefix: Vec<usize>, start: usize, step: usize) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidSchedule("index step must be at least 1".into()));
        }
        let increasing = prefix.windows(2).all(|w| w[0] < w[1]);
        if !increasing || prefix.last().is_some_and(|&p| p >= start) {
            return Err(Error::InvalidSchedule("indices must increase".into()));
        }
        Ok(Self { prefix, start, step })
    }

    pub fn identity() -> Self {
        Self::tail(0)
    }

    /// Every index from `k` on.
    pub fn tail(k: usize) -> Self {
        Self { prefix: Vec::new(), start: k, step: 1 }
    }

    /// `start, start + step, ...`.
    pub fn affine(start: usize, step: usize) -> Result<Self> {
        Self::new(Vec::new(), start, step)
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn apply(&self, n: usize) -> usize {
        match self.prefix.get(n) {
            Some(&i) => i,
            None => self.start + self.step * (n - self.prefix.len()),
        }
    }

    pub fn position(&self, i: usize) -> Option<usize> {
        if let Ok(p) = self.prefix.binary_search(&i) {
            return Some(p);
        }
        (i >= self.start && (i - self.start).is_multiple_of(self.step))
            .then(|| self.prefix.len() + (i - self.start) / self.step)
    }

    pub fn is_identity(&self) -> bool {
        self.prefix.iter().enumerate().all(|(n, &i)| n == i) && self.start == self.prefix.len() && self.step == 1
    }

    /// `self` followed by `inner`: index `n` goes to `self(inner(n))`.
    pub fn then(&self, inner: &IndexSchedule) -> IndexSchedule {
        let mut prefix: Vec<usize> = inner.prefix.iter().map(|&n| self.apply(n)).collect();
        let mut n = inner.start;
        while n < self.prefix.len() {
            prefix.push(self.apply(n));
            n += inner.step;
        }
        Self { prefix, start: self.apply(n), step: self.step * inner.step }
    }
}

impl fmt::Display for IndexSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "select(prefix={:?}, start={}, step={})", self.prefix, self.start, self.step)
    }
}

/// A finite set of ordinals together with finitely many schedules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LevelSet {
    finite: BTreeSet<Ordinal>,
    runs: Vec<LevelSchedule>,
}

impl LevelSet {
    pub fn new(finite: BTreeSet<Ordinal>, runs: Vec<LevelSchedule>) -> Self {
        Self { finite, runs }
    }

    pub fn finite_set(finite: BTreeSet<Ordinal>) -> Self {
        Self { finite, runs: Vec::new() }
    }

    pub fn finite(&self) -> &BTreeSet<Ordinal> {
        &self.finite
    }

    pub fn runs(&self) -> &[LevelSchedule] {
        &self.runs
    }

    pub fn is_finite(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.finite.contains(x) || self.runs.iter().any(|r| r.contains(x))
    }

    pub fn insert(&mut self, x: Ordinal) {
        self.finite.insert(x);
    }

    pub fn with(mut self, x: Ordinal) -> Self {
        self.insert(x);
        self
    }

    /// The elements below `x`, or `None` when there are infinitely many.
    pub fn below(&self, x: &Ordinal) -> Option<BTreeSet<Ordinal>> {
        let mut out: BTreeSet<Ordinal> = self.finite.range(..x).cloned().collect();
        for r in &self.runs {
            let k = r.count_below(x)?;
            out.extend(r.levels(k));
        }
        Some(out)
    }

    /// Least element of `self` not in `other`, walking each run at most
    /// [`WALK_CAP`] steps unless containment is evident.
    fn least_outside(&self, other: &LevelSet) -> Result<Option<Ordinal>> {
        let mut best = self.finite.iter().find(|e| !other.contains(e)).cloned();
        for run in &self.runs {
            if other.runs.iter().any(|o| run.is_subset_of(o)) {
                continue;
            }
            let mut found = false;
            for i in 0..WALK_CAP {
                let l = run.level(i);
                if best.as_ref().is_some_and(|b| l >= *b) {
                    found = true;
                    break;
                }
                if !other.contains(&l) {
                    best = Some(l);
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::Unsupported(format!("cannot decide whether {run} is covered")));
            }
        }
        Ok(best)
    }

    /// Least element of the symmetric difference, `None` when the sets agree.
    pub fn first_difference(&self, other: &LevelSet) -> Result<Option<Ordinal>> {
        let a = self.least_outside(other)?;
        let b = other.least_outside(self)?;
        Ok(match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        })
    }
}

impl fmt::Display for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::cantorlex::write_set(f, &self.finite)?;
        for r in &self.runs {
            write!(f, " + {r}")?;
        }
        Ok(())
    }
}
