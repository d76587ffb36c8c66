//! Line-oriented text format for families.
//!
//! ```text
//! # comment
//! alpha w^2
//! finite[point{0}, point{1, 3}]
//! asc(stem={0}, sched=sched(prefix=[], start=1, step=1), extras=[point{}])
//! desc(limit={2} + sched(prefix=[], start=w, step=1), sched=sched(prefix=[], start=3, step=2), upper=[{w}])
//! zeta(r=0, left=desc(..), right=asc(..), extras=[..])
//! tower(stem={}, roots=sched(..), inner=sched(..), step=1)
//! raw(asc, head=[point{..}, ..], right=asc(..), window=2)
//! raw(asc, stem={}, levels=[5, 2, 7], tail=sched(prefix=[], start=9, step=1), window=2)
//! check type = w
//! ```
//!
//! The first non-comment line names the ambient length; every other line
//! is a block or a `check key = value` annotation. Keyword arguments may
//! come in any order. In the `levels=` form of `raw` the splits are listed
//! in sequence order (away from the tail for `desc`), and for `zeta` the
//! tails are `left=sched(..)` and `right=sched(..)`. A missing `window` is
//! replaced by the least valid one.

use std::collections::BTreeSet;
use std::fmt;

use super::body::{realise, Body, Kind, RawSequence, SymbolicClass};
use super::part::{AscPart, DescPart};
use super::schedule::{LevelSchedule, LevelSet};
use super::tower::Tower;
use super::{Block, RepFamily};
use crate::cantorlex::{ordinal_set, write_set, Alpha, Point};
use crate::error::{Error, ParseError, Result};
use crate::ordinal::{text_sum, Ordinal};
use crate::text::Cursor;

/// A `check key = value` line, kept verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDoc {
    pub family: RepFamily,
    pub checks: Vec<Check>,
}

impl FamilyDoc {
    pub fn check(&self, key: &str) -> Option<&str> {
        self.checks.iter().find(|c| c.key == key).map(|c| c.value.as_str())
    }
}

pub fn parse_family(src: &str) -> Result<FamilyDoc> {
    let doc = split_document(src)?;
    let mut blocks = Vec::new();
    for (line_start, line) in doc.lines {
        let shift = |e: ParseError| ParseError::new(line_start + e.offset, e.message);
        let mut cur = Cursor::new(line);
        let block = match block(&mut cur, &doc.alpha) {
            Err(Error::Parse(e)) => return Err(shift(e).into()),
            other => other?,
        };
        cur.finish().map_err(shift)?;
        blocks.push(block);
    }
    Ok(FamilyDoc { family: RepFamily::new(doc.alpha, blocks)?, checks: doc.checks })
}

/// A document cut into its ambient, its `check` lines and the remaining
/// content lines with their offsets.
pub(crate) struct RawDocument<'a> {
    pub(crate) alpha: Alpha,
    pub(crate) lines: Vec<(usize, &'a str)>,
    pub(crate) checks: Vec<Check>,
}

pub(crate) fn split_document(src: &str) -> Result<RawDocument<'_>> {
    let mut alpha: Option<Alpha> = None;
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    let mut offset = 0;
    for raw_line in src.split_inclusive('\n') {
        let line_start = offset;
        offset += raw_line.len();
        let line = raw_line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let shift = |e: ParseError| ParseError::new(line_start + e.offset, e.message);
        let mut cur = Cursor::new(line);
        if alpha.is_none() {
            cur.expect_word("alpha").map_err(shift)?;
            alpha = Some(Alpha::parse_at(&mut cur).map_err(shift)?);
            cur.finish().map_err(shift)?;
            continue;
        }
        if cur.eat_word("check") {
            let rest = cur.rest();
            let (key, value) = rest.split_once('=').ok_or_else(|| shift(cur.error("expected 'check key = value'")))?;
            checks.push(Check { key: key.trim().to_string(), value: value.trim().to_string() });
            continue;
        }
        lines.push((line_start, line));
    }
    let alpha = alpha.ok_or_else(|| ParseError::new(offset, "missing 'alpha' line"))?;
    Ok(RawDocument { alpha, lines, checks })
}

/// Runs `f` on each `name=value` argument up to the closing parenthesis.
pub(crate) fn args(cur: &mut Cursor<'_>, mut f: impl FnMut(&str, &mut Cursor<'_>) -> Result<()>) -> Result<()> {
    if cur.eat(')') {
        return Ok(());
    }
    loop {
        let at = cur.pos();
        let name = cur.ident().ok_or_else(|| cur.error("expected an argument name"))?.to_string();
        cur.expect('=')?;
        f(&name, cur).map_err(|e| match e {
            Error::Parse(p) if p.message == "unknown" => {
                ParseError::new(at, format!("unknown argument '{name}'")).into()
            }
            e => e,
        })?;
        if cur.eat(')') {
            return Ok(());
        }
        cur.expect(',')?;
    }
}

pub(crate) fn unknown() -> Error {
    ParseError::new(0, "unknown").into()
}

pub(crate) fn required<T>(cur: &Cursor<'_>, value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| cur.error(format!("missing argument '{name}'")).into())
}

pub(crate) fn list<T>(cur: &mut Cursor<'_>, mut item: impl FnMut(&mut Cursor<'_>) -> Result<T>) -> Result<Vec<T>> {
    cur.expect('[')?;
    let mut out = Vec::new();
    if cur.eat(']') {
        return Ok(out);
    }
    loop {
        out.push(item(cur)?);
        if cur.eat(']') {
            return Ok(out);
        }
        cur.expect(',')?;
    }
}

pub(crate) fn ordinal(cur: &mut Cursor<'_>) -> Result<Ordinal> {
    Ok(text_sum(cur)?)
}

fn set(cur: &mut Cursor<'_>) -> Result<BTreeSet<Ordinal>> {
    Ok(ordinal_set(cur)?)
}

fn points(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<Vec<Point>> {
    list(cur, |c| Ok(Point::parse_at(c, alpha)?))
}

fn schedule(cur: &mut Cursor<'_>) -> Result<LevelSchedule> {
    cur.expect_word("sched")?;
    cur.expect('(')?;
    let (mut prefix, mut start, mut step) = (Vec::new(), None, Ordinal::one());
    args(cur, |name, c| {
        match name {
            "prefix" => prefix = list(c, ordinal)?,
            "start" => start = Some(ordinal(c)?),
            "step" => step = ordinal(c)?,
            _ => return Err(unknown()),
        }
        Ok(())
    })?;
    LevelSchedule::new(prefix, required(cur, start, "start")?, step)
}

fn level_set(cur: &mut Cursor<'_>) -> Result<LevelSet> {
    let finite = set(cur)?;
    let mut runs = Vec::new();
    while cur.eat('+') {
        runs.push(schedule(cur)?);
    }
    Ok(LevelSet::new(finite, runs))
}

/// Arguments shared by `asc(..)` and `desc(..)`.
#[derive(Default)]
struct PartArgs {
    stem: Option<BTreeSet<Ordinal>>,
    limit: Option<LevelSet>,
    sched: Option<LevelSchedule>,
    upper: Vec<BTreeSet<Ordinal>>,
    extras: Vec<Point>,
}

fn part_args(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<PartArgs> {
    cur.expect('(')?;
    let mut a = PartArgs::default();
    args(cur, |name, c| {
        match name {
            "stem" => a.stem = Some(set(c)?),
            "limit" => a.limit = Some(level_set(c)?),
            "sched" => a.sched = Some(schedule(c)?),
            "upper" => a.upper = list(c, set)?,
            "extras" => a.extras = points(c, alpha)?,
            _ => return Err(unknown()),
        }
        Ok(())
    })?;
    if a.stem.is_some() == a.limit.is_some() {
        return Err(cur.error("give exactly one of 'stem' and 'limit'").into());
    }
    Ok(a)
}

fn asc_part(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<(AscPart, Vec<Point>)> {
    let a = part_args(cur, alpha)?;
    let sched = required(cur, a.sched, "sched")?;
    let part = match (a.stem, a.limit) {
        (Some(stem), _) if a.upper.is_empty() => AscPart::with_stem(stem, sched)?,
        (Some(stem), _) => AscPart::new(LevelSet::new(stem, vec![sched.clone()]), sched, a.upper)?,
        (None, limit) => AscPart::new(limit.expect("checked"), sched, a.upper)?,
    };
    Ok((part, a.extras))
}

fn desc_part(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<(DescPart, Vec<Point>)> {
    let a = part_args(cur, alpha)?;
    let sched = required(cur, a.sched, "sched")?;
    let part = match (a.stem, a.limit) {
        (Some(stem), _) if a.upper.is_empty() => DescPart::with_stem(stem, sched)?,
        (Some(stem), _) => DescPart::new(LevelSet::finite_set(stem), sched, a.upper)?,
        (None, limit) => DescPart::new(limit.expect("checked"), sched, a.upper)?,
    };
    Ok((part, a.extras))
}

fn bare_asc(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<AscPart> {
    cur.expect_word("asc")?;
    let (part, extras) = asc_part(cur, alpha)?;
    if !extras.is_empty() {
        return Err(cur.error("extras belong to the enclosing block").into());
    }
    Ok(part)
}

fn bare_desc(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<DescPart> {
    cur.expect_word("desc")?;
    let (part, extras) = desc_part(cur, alpha)?;
    if !extras.is_empty() {
        return Err(cur.error("extras belong to the enclosing block").into());
    }
    Ok(part)
}

fn block(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<Block> {
    if cur.eat_word("finite") {
        return Ok(Block::Finite(points(cur, alpha)?));
    }
    if cur.eat_word("asc") {
        let (part, extras) = asc_part(cur, alpha)?;
        return Ok(Block::Class(SymbolicClass::asc(alpha, part, extras)?));
    }
    if cur.eat_word("desc") {
        let (part, extras) = desc_part(cur, alpha)?;
        return Ok(Block::Class(SymbolicClass::desc(alpha, part, extras)?));
    }
    if cur.eat_word("zeta") {
        return zeta(cur, alpha);
    }
    if cur.eat_word("tower") {
        return tower(cur, alpha);
    }
    if cur.eat_word("raw") {
        return raw(cur, alpha);
    }
    Err(cur.error("expected finite, asc, desc, zeta, tower or raw").into())
}

fn zeta(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<Block> {
    cur.expect('(')?;
    let (mut r, mut left, mut right, mut extras) = (None, None, None, Vec::new());
    args(cur, |name, c| {
        match name {
            "r" => r = Some(ordinal(c)?),
            "left" => left = Some(bare_desc(c, alpha)?),
            "right" => right = Some(bare_asc(c, alpha)?),
            "extras" => extras = points(c, alpha)?,
            _ => return Err(unknown()),
        }
        Ok(())
    })?;
    let r = required(cur, r, "r")?;
    let left = required(cur, left, "left")?;
    let right = required(cur, right, "right")?;
    Ok(Block::Class(SymbolicClass::zeta(alpha, r, left, right, extras)?))
}

fn tower(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<Block> {
    cur.expect('(')?;
    let (mut stem, mut roots, mut inner, mut step) = (BTreeSet::new(), None, None, Ordinal::one());
    args(cur, |name, c| {
        match name {
            "stem" => stem = set(c)?,
            "roots" => roots = Some(schedule(c)?),
            "inner" => inner = Some(schedule(c)?),
            "step" => step = ordinal(c)?,
            _ => return Err(unknown()),
        }
        Ok(())
    })?;
    let roots = required(cur, roots, "roots")?;
    let inner = required(cur, inner, "inner")?;
    Ok(Block::Tower(Tower::new(alpha, stem, roots, inner, step)?))
}

enum Tail {
    Sched(LevelSchedule),
    Asc(AscPart),
    Desc(DescPart),
}

fn tail(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<Tail> {
    match cur.clone().ident() {
        Some("sched") => Ok(Tail::Sched(schedule(cur)?)),
        Some("asc") => Ok(Tail::Asc(bare_asc(cur, alpha)?)),
        Some("desc") => Ok(Tail::Desc(bare_desc(cur, alpha)?)),
        _ => Err(cur.error("expected sched(..), asc(..) or desc(..)").into()),
    }
}

fn raw(cur: &mut Cursor<'_>, alpha: &Alpha) -> Result<Block> {
    cur.expect('(')?;
    let kind = if cur.eat_word("asc") {
        Kind::Asc
    } else if cur.eat_word("desc") {
        Kind::Desc
    } else if cur.eat_word("zeta") {
        Kind::Zeta
    } else {
        return Err(cur.error("expected asc, desc or zeta").into());
    };
    let mut head = None;
    let mut stem = None;
    let mut levels = None;
    let (mut left, mut right, mut tail_sched, mut window) = (None, None, None, None);
    if !cur.eat(')') {
        cur.expect(',')?;
        args(cur, |name, c| {
            match name {
                "head" => head = Some(points(c, alpha)?),
                "stem" => stem = Some(set(c)?),
                "levels" => levels = Some(list(c, ordinal)?),
                "left" => left = Some(tail(c, alpha)?),
                "right" => right = Some(tail(c, alpha)?),
                "tail" => tail_sched = Some(schedule(c)?),
                "window" => window = Some(c.small_nat()?),
                _ => return Err(unknown()),
            }
            Ok(())
        })?;
    }
    let body = if let Some(levels) = levels {
        if head.is_some() {
            return Err(cur.error("give either 'head' or 'levels'").into());
        }
        let base = stem.unwrap_or_default();
        let as_sched = |t: Option<Tail>, side: &str| match t {
            None => Ok(None),
            Some(Tail::Sched(s)) => Ok(Some(s)),
            Some(_) => Err(Error::from(cur.error(format!("'{side}' must be a schedule in the levels form")))),
        };
        let (l, r) = (as_sched(left, "left")?, as_sched(right, "right")?);
        match kind {
            Kind::Asc => realise(alpha, &base, None, &levels, Some(&required(cur, tail_sched.or(r), "tail")?))?,
            Kind::Desc => {
                let rev: Vec<Ordinal> = levels.into_iter().rev().collect();
                realise(alpha, &base, Some(&required(cur, tail_sched.or(l), "tail")?), &rev, None)?
            }
            Kind::Zeta => {
                let l = required(cur, l, "left")?;
                let r = required(cur, r, "right")?;
                realise(alpha, &base, Some(&l), &levels, Some(&r))?
            }
        }
    } else {
        let as_part = |t: Option<Tail>| match t {
            Some(Tail::Sched(_)) => Err(Error::from(cur.error("a schedule needs the levels form"))),
            Some(Tail::Asc(_)) | Some(Tail::Desc(_)) | None => Ok(t),
        };
        let left = match as_part(left)? {
            Some(Tail::Desc(d)) => Some(d),
            None => None,
            _ => return Err(cur.error("'left' must be desc(..)").into()),
        };
        let right = match as_part(right)? {
            Some(Tail::Asc(a)) => Some(a),
            None => None,
            _ => return Err(cur.error("'right' must be asc(..)").into()),
        };
        Body { left, middle: head.unwrap_or_default(), right }
    };
    if body.kind() != Some(kind) {
        return Err(Error::InvalidFamily(format!("the tails do not make a {} sequence", kind.name())));
    }
    let raw = match window {
        Some(w) => RawSequence::new(alpha, body, w)?,
        None => RawSequence::certified(alpha, body)?,
    };
    Ok(Block::Raw(raw))
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

fn write_uppers(f: &mut fmt::Formatter<'_>, upper: &[BTreeSet<Ordinal>]) -> fmt::Result {
    if upper.is_empty() {
        return Ok(());
    }
    f.write_str(", upper=[")?;
    for (i, u) in upper.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write_set(f, u)?;
    }
    f.write_str("]")
}

fn write_extras(f: &mut fmt::Formatter<'_>, extras: &[Point]) -> fmt::Result {
    if extras.is_empty() {
        return Ok(());
    }
    f.write_str(", extras=")?;
    write_list(f, extras)
}

fn write_asc(f: &mut fmt::Formatter<'_>, p: &AscPart, extras: &[Point]) -> fmt::Result {
    match p.stem() {
        Some(stem) => {
            f.write_str("asc(stem=")?;
            write_set(f, &stem)?;
        }
        None => write!(f, "asc(limit={}", p.limit())?,
    }
    write!(f, ", sched={}", p.sched())?;
    write_uppers(f, p.upper())?;
    write_extras(f, extras)?;
    f.write_str(")")
}

fn write_desc(f: &mut fmt::Formatter<'_>, p: &DescPart, extras: &[Point]) -> fmt::Result {
    match p.stem() {
        Some(stem) => {
            f.write_str("desc(stem=")?;
            write_set(f, &stem)?;
        }
        None => write!(f, "desc(limit={}", p.limit())?,
    }
    write!(f, ", sched={}", p.sched())?;
    write_uppers(f, p.upper())?;
    write_extras(f, extras)?;
    f.write_str(")")
}

impl fmt::Display for AscPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_asc(f, self, &[])
    }
}

impl fmt::Display for DescPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_desc(f, self, &[])
    }
}

impl fmt::Display for SymbolicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.body();
        match (&b.left, &b.right, self.root()) {
            (None, Some(r), _) => write_asc(f, r, &b.middle),
            (Some(l), None, _) => write_desc(f, l, &b.middle),
            (Some(l), Some(r), Some(root)) => {
                write!(f, "zeta(r={root}, left={l}, right={r}")?;
                write_extras(f, &b.middle)?;
                f.write_str(")")
            }
            _ => unreachable!("validated class"),
        }
    }
}

impl fmt::Display for RawSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.body();
        write!(f, "raw({}", self.kind().name())?;
        if let Some(l) = &b.left {
            write!(f, ", left={l}")?;
        }
        if !b.middle.is_empty() {
            f.write_str(", head=")?;
            write_list(f, &b.middle)?;
        }
        if let Some(r) = &b.right {
            write!(f, ", right={r}")?;
        }
        write!(f, ", window={})", self.window())
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("tower(stem=")?;
        write_set(f, self.stem())?;
        write!(f, ", roots={}, inner={}, step={})", self.roots(), self.inner(), self.step())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Finite(ps) => {
                f.write_str("finite")?;
                write_list(f, ps)
            }
            Block::Class(c) => c.fmt(f),
            Block::Raw(r) => r.fmt(f),
            Block::Tower(t) => t.fmt(f),
        }
    }
}

impl fmt::Display for RepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha {}", self.ambient())?;
        for b in self.blocks() {
            writeln!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Display for FamilyDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family.fmt(f)?;
        for c in &self.checks {
            writeln!(f, "check {} = {}", c.key, c.value)?;
        }
        Ok(())
    }
}
