//! Finitely described infinite subsets of `^α2`, as ordered lists of blocks.

use std::fmt;

use crate::cantorlex::{Alpha, Point, Stem};
use crate::error::{Error, Result};
use crate::ordertype::{Entry, FiniteSumForm, TypeExpr};
use crate::ordinal::Ordinal;

mod body;
mod part;
mod schedule;
#[cfg(test)]
mod tests;
pub(crate) mod text;
mod tower;

pub use body::{realise, Body, Bound, Kind, RawSequence, Slot, SymbolicClass};
pub use part::{AscPart, Count, DescPart};
pub use schedule::{IndexSchedule, LevelSchedule, LevelSet};
pub use text::{parse_family, Check, FamilyDoc};
pub use tower::Tower;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Finite(Vec<Point>),
    Class(SymbolicClass),
    Raw(RawSequence),
    Tower(Tower),
}

/// How a block meets its neighbours' condensation classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Finite,
    /// Least element attained, no greatest.
    Asc,
    /// Greatest element attained, no least.
    Desc,
    /// Neither end attained.
    Open,
}

impl Block {
    fn role(&self) -> Role {
        match self.body().and_then(Body::kind) {
            _ if matches!(self, Block::Finite(_)) => Role::Finite,
            Some(Kind::Asc) => Role::Asc,
            Some(Kind::Desc) => Role::Desc,
            _ => Role::Open,
        }
    }

    pub fn body(&self) -> Option<&Body> {
        match self {
            Block::Class(c) => Some(c.body()),
            Block::Raw(r) => Some(r.body()),
            _ => None,
        }
    }

    pub fn ambient(&self) -> Option<&Alpha> {
        match self {
            Block::Finite(ps) => ps.first().map(Point::ambient),
            Block::Class(c) => Some(c.ambient()),
            Block::Raw(r) => Some(r.ambient()),
            Block::Tower(t) => Some(t.ambient()),
        }
    }

    pub fn order_type(&self) -> TypeExpr {
        let omega_star = || TypeExpr::rev(TypeExpr::omega());
        match self {
            Block::Finite(ps) => TypeExpr::fin(ps.len() as u64),
            Block::Tower(_) => TypeExpr::prod(omega_star(), TypeExpr::omega()),
            Block::Class(_) | Block::Raw(_) => {
                let b = self.body().expect("class body");
                let mut parts = Vec::new();
                if b.left.is_some() {
                    parts.push(omega_star());
                }
                if !b.middle.is_empty() {
                    parts.push(TypeExpr::fin(b.middle.len() as u64));
                }
                if b.right.is_some() {
                    parts.push(TypeExpr::omega());
                }
                TypeExpr::sum(parts)
            }
        }
    }

    fn entries(&self) -> Vec<Entry> {
        match self {
            Block::Finite(ps) => vec![Entry::fwd(Ordinal::nat(ps.len() as u64))],
            Block::Tower(_) => Vec::new(),
            _ => {
                let b = self.body().expect("class body");
                let mut out = Vec::new();
                if b.left.is_some() {
                    out.push(Entry::rev(Ordinal::omega()));
                }
                out.push(Entry::fwd(Ordinal::nat(b.middle.len() as u64)));
                if b.right.is_some() {
                    out.push(Entry::fwd(Ordinal::omega()));
                }
                out
            }
        }
    }

    pub fn first(&self) -> Bound {
        match self {
            Block::Finite(ps) => Bound::Point(ps[0].clone()),
            Block::Tower(t) => t.first(),
            _ => {
                let alpha = self.ambient().expect("ambient");
                self.body().expect("class body").first(alpha)
            }
        }
    }

    pub fn last(&self) -> Bound {
        match self {
            Block::Finite(ps) => Bound::Point(ps.last().expect("nonempty").clone()),
            Block::Tower(t) => t.last(),
            _ => {
                let alpha = self.ambient().expect("ambient");
                self.body().expect("class body").last(alpha)
            }
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self {
            Block::Finite(ps) => ps.contains(x),
            Block::Tower(t) => t.position_of(x.support()).is_some(),
            _ => self.body().expect("class body").slot_of(x).is_some(),
        }
    }

    pub fn count_extending(&self, s: &Stem) -> Count {
        match self {
            Block::Finite(ps) => {
                Count::Finite(ps.iter().filter(|p| p.support().range(..s.height()).eq(s.bits().iter())).count())
            }
            Block::Tower(t) => t.count_extending(s),
            _ => self.body().expect("class body").count_extending(s),
        }
    }

    /// Some points of the block in increasing order: the finite ones and up
    /// to `n` from each infinite tail (for a tower, `n` points from each of
    /// the first `n` intervals).
    pub fn sample(&self, n: usize) -> Vec<Point> {
        match self {
            Block::Finite(ps) => ps.clone(),
            Block::Tower(t) => (0..n).flat_map(|j| (0..n).rev().map(move |k| t.point(j, k))).collect(),
            _ => self.body().expect("class body").sample(self.ambient().expect("ambient"), n),
        }
    }
}

fn set_of(p: &Point) -> LevelSet {
    LevelSet::finite_set(p.support().clone())
}

/// Lexicographic comparison of two (possibly infinite) sets of positions.
fn cmp_sets(a: &LevelSet, b: &LevelSet) -> Result<std::cmp::Ordering> {
    use std::cmp::Ordering;
    Ok(match a.first_difference(b)? {
        None => Ordering::Equal,
        Some(d) if a.contains(&d) => Ordering::Greater,
        Some(_) => Ordering::Less,
    })
}

/// Whether everything up to `hi` lies strictly below everything from `lo`.
fn precedes(hi: &Bound, lo: &Bound) -> Result<bool> {
    use std::cmp::Ordering;
    Ok(match (hi, lo) {
        (Bound::Point(p), Bound::Point(q)) => p < q,
        (Bound::Point(p), Bound::Limit(y)) => cmp_sets(&set_of(p), y)? != Ordering::Greater,
        (Bound::Limit(x), Bound::Point(q)) => cmp_sets(x, &set_of(q))? != Ordering::Greater,
        (Bound::Limit(x), Bound::Limit(y)) => cmp_sets(x, y)? != Ordering::Greater,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockOrder {
    Less,
    Greater,
    Incomparable,
}

pub fn compare_blocks(a: &Block, b: &Block) -> Result<BlockOrder> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    if precedes(&a.last(), &b.first())? {
        Ok(BlockOrder::Less)
    } else if precedes(&b.last(), &a.first())? {
        Ok(BlockOrder::Greater)
    } else {
        Ok(BlockOrder::Incomparable)
    }
}

/// The order type of a condensation class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassType {
    Finite(usize),
    Omega,
    OmegaStar,
    Zeta,
    /// The `ω`-many `ω*`-classes of a tower, reported together.
    TowerIntervals,
}

impl fmt::Display for ClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassType::Finite(k) => write!(f, "{k}"),
            ClassType::Omega => f.write_str("w"),
            ClassType::OmegaStar => f.write_str("w~"),
            ClassType::Zeta => f.write_str("zeta"),
            ClassType::TowerIntervals => f.write_str("w~ * w"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationClass {
    pub class_type: ClassType,
    pub blocks: Vec<usize>,
}

/// One maximal stretch of an order shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeChunk {
    Form(FiniteSumForm),
    Tower,
}

/// The order type of a family in a form where equal types compare equal.
pub type OrderShape = Vec<ShapeChunk>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepFamily {
    ambient: Alpha,
    blocks: Vec<Block>,
}

impl RepFamily {
    pub fn new(ambient: Alpha, blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidFamily("a family needs at least one block".into()));
        }
        for b in &blocks {
            if let Block::Finite(ps) = b {
                if ps.is_empty() || ps.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidFamily("finite blocks must be nonempty and increasing".into()));
                }
            }
            if b.ambient() != Some(&ambient) {
                return Err(Error::AmbientMismatch);
            }
        }
        for (i, w) in blocks.windows(2).enumerate() {
            if compare_blocks(&w[0], &w[1])? != BlockOrder::Less {
                return Err(Error::InvalidFamily(format!("block {i} does not precede block {}", i + 1)));
            }
        }
        let mut open_desc = false;
        for b in &blocks {
            match b.role() {
                Role::Finite => {}
                Role::Asc if open_desc => {
                    return Err(Error::InvalidFamily(
                        "a descending block followed by an ascending one forms a zeta; declare it as one".into(),
                    ))
                }
                Role::Desc => open_desc = true,
                _ => open_desc = false,
            }
        }
        Ok(Self { ambient, blocks })
    }

    pub fn ambient(&self) -> &Alpha {
        &self.ambient
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    pub fn order_type(&self) -> TypeExpr {
        TypeExpr::sum(self.blocks.iter().map(Block::order_type).collect())
    }

    pub fn shape(&self) -> OrderShape {
        let mut chunks = Vec::new();
        let mut entries: Vec<Entry> = Vec::new();
        for b in &self.blocks {
            if let Block::Tower(_) = b {
                let mut form = FiniteSumForm::from_entries(std::mem::take(&mut entries));
                form = absorb_into_tower(form);
                if !form.is_empty() {
                    chunks.push(ShapeChunk::Form(form));
                }
                chunks.push(ShapeChunk::Tower);
            } else {
                entries.extend(b.entries());
            }
        }
        let form = FiniteSumForm::from_entries(entries);
        if !form.is_empty() {
            chunks.push(ShapeChunk::Form(form));
        }
        chunks
    }

    pub fn condensation_classes(&self) -> Vec<CondensationClass> {
        let mut out: Vec<CondensationClass> = Vec::new();
        let mut pending: Vec<usize> = Vec::new();
        let mut open_desc: Option<usize> = None;
        let flush = |out: &mut Vec<CondensationClass>, pending: &mut Vec<usize>| {
            if !pending.is_empty() {
                out.push(CondensationClass { class_type: ClassType::Finite(0), blocks: std::mem::take(pending) });
            }
        };
        for (i, b) in self.blocks.iter().enumerate() {
            match b.role() {
                Role::Finite => match open_desc {
                    Some(c) => out[c].blocks.push(i),
                    None => pending.push(i),
                },
                Role::Asc => {
                    let mut blocks = std::mem::take(&mut pending);
                    blocks.push(i);
                    out.push(CondensationClass { class_type: ClassType::Omega, blocks });
                    open_desc = None;
                }
                Role::Desc => {
                    flush(&mut out, &mut pending);
                    out.push(CondensationClass { class_type: ClassType::OmegaStar, blocks: vec![i] });
                    open_desc = Some(out.len() - 1);
                }
                Role::Open => {
                    flush(&mut out, &mut pending);
                    let class_type = match b {
                        Block::Tower(_) => ClassType::TowerIntervals,
                        _ => ClassType::Zeta,
                    };
                    out.push(CondensationClass { class_type, blocks: vec![i] });
                    open_desc = None;
                }
            }
        }
        flush(&mut out, &mut pending);
        for c in &mut out {
            if let ClassType::Finite(_) = c.class_type {
                let size = c
                    .blocks
                    .iter()
                    .map(|&i| match &self.blocks[i] {
                        Block::Finite(ps) => ps.len(),
                        _ => 0,
                    })
                    .sum();
                c.class_type = ClassType::Finite(size);
            }
        }
        out
    }

    /// The points of an infinite condensation class (other than a tower),
    /// gathered into one body with every finite point in the middle.
    pub fn class_body(&self, class: &CondensationClass) -> Option<Body> {
        let main = class.blocks.iter().find_map(|&i| self.blocks[i].body())?;
        let mut middle = Vec::new();
        for &i in &class.blocks {
            match &self.blocks[i] {
                Block::Finite(ps) => middle.extend(ps.iter().cloned()),
                b => middle.extend(b.body().expect("class body").middle.iter().cloned()),
            }
        }
        middle.sort();
        Some(Body { left: main.left.clone(), middle, right: main.right.clone() })
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.blocks.iter().any(|b| b.contains(x))
    }

    pub fn count_extending(&self, s: &Stem) -> Count {
        self.blocks.iter().map(|b| b.count_extending(s)).sum()
    }

    /// Whether the sampled points of `self` (see [`Block::sample`]) all lie
    /// in `other`.
    pub fn sample_within(&self, other: &RepFamily, n: usize) -> bool {
        self.blocks.iter().flat_map(|b| b.sample(n)).all(|p| other.contains(&p))
    }

    pub fn with_blocks(&self, blocks: Vec<Block>) -> Result<RepFamily> {
        RepFamily::new(self.ambient.clone(), blocks)
    }
}

/// `ω*·m + ω*·ω = ω*·ω`, also when finitely many points follow the `ω*·m`.
fn absorb_into_tower(form: FiniteSumForm) -> FiniteSumForm {
    let mut entries = form.entries().to_vec();
    if let Some(last) = entries.last() {
        let shallow = last.value.terms().iter().all(|t| t.exponent <= Ordinal::one());
        if last.dir == crate::ordertype::Direction::Rev && shallow {
            let k = last.value.finite_part();
            entries.pop();
            entries.push(Entry::fwd(Ordinal::nat(k)));
        }
    }
    FiniteSumForm::from_entries(entries)
}
