//! Dyadic copies of `η` and the colouring by the heights of the first two
//! splitting nodes below the root.
//!
//! A copy is a base tree rule composed with a [`View`]. The base rule sends
//! the string `t` to the root stem followed, for each bit `b` of `t`, by `b`
//! and `pad[b]` zeros. The point attached to a node is its stem followed by
//! a single 1.

use std::collections::BTreeSet;
use std::fmt;

use super::{Colour, FLIP_BOUND};
use crate::cantorlex::{Alpha, Point, Stem};
use crate::error::{Error, ParseError, Result};
use crate::families::text::{args, list, required, split_document, unknown};
use crate::ordinal::Ordinal;
use crate::text::Cursor;

/// A finite 0/1 string.
pub type Node = Vec<bool>;

fn cat(a: &[bool], b: &[bool]) -> Node {
    a.iter().chain(b).copied().collect()
}

fn repeat(bit: bool, n: usize) -> Node {
    vec![bit; n]
}

/// A map on finite 0/1 strings given by a complete prefix code: each rule
/// `p > q` sends `p·y` to `q·y`, and each proper prefix of a code word has an
/// explicit image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct View {
    inner: Vec<(Node, Node)>,
    frontier: Vec<(Node, Node)>,
}

impl View {
    pub fn identity() -> Self {
        Self { inner: Vec::new(), frontier: vec![(Node::new(), Node::new())] }
    }

    /// Root to `w`, the left subtree onto the one at `u`, the right onto
    /// the one at `v`.
    pub fn graft(w: Node, u: Node, v: Node) -> Result<Self> {
        Self::new(vec![(Node::new(), w)], vec![(vec![false], u), (vec![true], v)])
    }

    pub fn new(mut inner: Vec<(Node, Node)>, mut frontier: Vec<(Node, Node)>) -> Result<Self> {
        inner.sort();
        inner.dedup();
        frontier.sort();
        let bad = |m: &str| Err(Error::InvalidFamily(format!("view: {m}")));
        for (i, (p, _)) in frontier.iter().enumerate() {
            if frontier[i + 1..].iter().any(|(p2, _)| p2.starts_with(p) || p.starts_with(p2)) {
                return bad("code words must not extend each other");
            }
        }
        let mut mass = 0u128;
        for (p, _) in &frontier {
            if p.len() > 64 {
                return bad("code words longer than 64 bits");
            }
            mass += 1u128 << (64 - p.len());
        }
        if mass != 1u128 << 64 {
            return bad("the code is not complete");
        }
        let prefixes: BTreeSet<Node> =
            frontier.iter().flat_map(|(p, _)| (0..p.len()).map(move |l| p[..l].to_vec())).collect();
        if inner.iter().map(|(p, _)| p.clone()).collect::<BTreeSet<_>>() != prefixes {
            return bad("explicit images must cover exactly the proper prefixes of the code");
        }
        let view = Self { inner, frontier };
        for t in &prefixes {
            let image = view.apply(t);
            for bit in [false, true] {
                let child = view.apply(&cat(t, &[bit]));
                if !child.starts_with(&cat(&image, &[bit])) {
                    return bad("the map does not preserve the tree order");
                }
            }
        }
        Ok(view)
    }

    pub fn apply(&self, x: &[bool]) -> Node {
        if let Some((_, q)) = self.inner.iter().find(|(p, _)| p == x) {
            return q.clone();
        }
        let (p, q) = self.frontier.iter().find(|(p, _)| x.starts_with(p)).expect("complete prefix code");
        cat(q, &x[p.len()..])
    }

    /// The map `x ↦ self(first(x))`.
    pub fn after(&self, first: &View) -> View {
        let mut inner: Vec<(Node, Node)> = first.inner.iter().map(|(p, q)| (p.clone(), self.apply(q))).collect();
        let mut frontier = Vec::new();
        for (p, q) in &first.frontier {
            if let Some((p2, q2)) = self.frontier.iter().find(|(p2, _)| q.starts_with(p2)) {
                frontier.push((p.clone(), cat(q2, &q[p2.len()..])));
                continue;
            }
            for (p2, q2) in self.frontier.iter().filter(|(p2, _)| p2.starts_with(q)) {
                let z = &p2[q.len()..];
                frontier.push((cat(p, z), q2.clone()));
                for l in 0..z.len() {
                    inner.push((cat(p, &z[..l]), self.apply(&cat(q, &z[..l]))));
                }
            }
        }
        View::new(inner, frontier).expect("composition of views is a view")
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, n: &[bool]) -> fmt::Result {
    if n.is_empty() {
        return f.write_str("e");
    }
    n.iter().try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let rules = self.inner.iter().map(|r| (r, '=')).chain(self.frontier.iter().map(|r| (r, '>')));
        for (i, ((p, q), sep)) in rules.enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_node(f, p)?;
            write!(f, "{sep}")?;
            write_node(f, q)?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicCopy {
    ambient: Alpha,
    root: Stem,
    pad: [u64; 2],
    view: View,
}

impl DyadicCopy {
    pub fn new(root: Stem, pad_left: u64, pad_right: u64) -> Result<Self> {
        Self::with_view(root, [pad_left, pad_right], View::identity())
    }

    pub fn with_view(root: Stem, pad: [u64; 2], view: View) -> Result<Self> {
        let ambient = root.ambient().clone();
        if ambient.countable && root.height().add(&Ordinal::omega()) > ambient.length {
            return Err(Error::OutOfRange(format!("the tree above {} does not fit in {}", root.height(), ambient)));
        }
        Ok(Self { ambient, root, pad, view })
    }

    pub fn ambient(&self) -> &Alpha {
        &self.ambient
    }

    pub fn view(&self) -> &View {
        &self.view
    }

    fn base(&self, t: &[bool]) -> Stem {
        let mut height = self.root.height().clone();
        let mut bits = self.root.bits().clone();
        for &b in t {
            if b {
                bits.insert(height.clone());
            }
            height = height.add(&Ordinal::nat(1 + self.pad[b as usize]));
        }
        Stem::new(&self.ambient, height, bits).expect("bits lie below the height")
    }

    /// The stem at node `t` of the tree.
    pub fn node(&self, t: &[bool]) -> Stem {
        self.base(&self.view.apply(t))
    }

    /// The point of the copy attached to node `t`.
    pub fn point(&self, t: &[bool]) -> Point {
        let s = self.node(t);
        let support = s.bits().iter().cloned().chain([s.height().clone()]);
        Point::new(&self.ambient, support).expect("inside the ambient")
    }

    /// Points attached to the nodes of length below `depth`, in order.
    pub fn sample(&self, depth: usize) -> Vec<Point> {
        let mut out: Vec<Point> = (0..depth)
            .flat_map(|len| {
                (0..1u64 << len).map(move |code| (0..len).map(|i| code >> (len - 1 - i) & 1 == 1).collect::<Node>())
            })
            .map(|t| self.point(&t))
            .collect();
        out.sort();
        out
    }
}

/// The minimal-height splitting node at `t`; for a dyadic copy this is the
/// tree's own node.
pub fn dyadic_f(a: &DyadicCopy, t: &[bool]) -> Stem {
    a.node(t)
}

/// `0` iff the left child of the root sits at least as high as the right.
pub fn colour_tausplit(a: &DyadicCopy) -> Colour {
    Colour::of(dyadic_f(a, &[false]).height() < dyadic_f(a, &[true]).height())
}

/// The subcopy spanned by two incomparable nodes: to reach colour 1 the right
/// child moves down the rightmost branch until it sits higher than the left
/// child, to reach colour 0 the left child moves down the leftmost branch.
pub fn flip_tausplit(a: &DyadicCopy) -> Result<DyadicCopy> {
    let target = colour_tausplit(a).other();
    for j in 2..=FLIP_BOUND + 1 {
        let graft = match target {
            Colour::One => View::graft(Node::new(), vec![false], repeat(true, j))?,
            Colour::Zero => View::graft(Node::new(), repeat(false, j), vec![true])?,
        };
        let b = DyadicCopy { view: a.view.after(&graft), ..a.clone() };
        if colour_tausplit(&b) == target {
            return Ok(b);
        }
    }
    Err(Error::Unsupported(format!("no flip within {FLIP_BOUND} steps")))
}

fn node(cur: &mut Cursor<'_>) -> Result<Node> {
    let word = cur.take_while(|c| matches!(c, '0' | '1' | 'e'));
    match word {
        "e" => Ok(Node::new()),
        w if !w.is_empty() && !w.contains('e') => Ok(w.chars().map(|c| c == '1').collect()),
        _ => Err(cur.error("expected a 0/1 string or 'e'").into()),
    }
}

/// Reads `alpha X` followed by one line
/// `dyadic(root=stem(h=..){..}, left=N, right=N, view=[p=q, .., p>q, ..])`.
pub fn parse_dyadic(src: &str) -> Result<DyadicCopy> {
    let doc = split_document(src)?;
    let [(start, line)] = doc.lines[..] else {
        return Err(ParseError::new(src.len(), "expected exactly one 'dyadic(..)' line").into());
    };
    let shift = |e: Error| match e {
        Error::Parse(p) => ParseError::new(start + p.offset, p.message).into(),
        e => e,
    };
    let mut cur = Cursor::new(line);
    let parsed = (|| {
        cur.expect_word("dyadic")?;
        cur.expect('(')?;
        let (mut root, mut left, mut right, mut view) = (None, None, None, None);
        args(&mut cur, |name, cur| {
            match name {
                "root" => root = Some(Stem::parse_at(cur, &doc.alpha)?),
                "left" => left = Some(cur.small_nat()? as u64),
                "right" => right = Some(cur.small_nat()? as u64),
                "view" => {
                    let rules = list(cur, |cur| {
                        let p = node(cur)?;
                        let inner = if cur.eat('=') {
                            true
                        } else {
                            cur.expect('>')?;
                            false
                        };
                        Ok((inner, p, node(cur)?))
                    })?;
                    let (inner, frontier): (Vec<_>, Vec<_>) = rules.into_iter().partition(|r| r.0);
                    let strip = |v: Vec<(bool, Node, Node)>| v.into_iter().map(|(_, p, q)| (p, q)).collect();
                    view = Some(View::new(strip(inner), strip(frontier))?);
                }
                _ => return Err(unknown()),
            }
            Ok(())
        })?;
        cur.finish()?;
        let root = required(&cur, root, "root")?;
        let pad = [required(&cur, left, "left")?, required(&cur, right, "right")?];
        DyadicCopy::with_view(root, pad, view.unwrap_or_else(View::identity))
    })();
    parsed.map_err(shift)
}

impl fmt::Display for DyadicCopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha {}", self.ambient)?;
        writeln!(f, "dyadic(root={}, left={}, right={}, view={})", self.root, self.pad[0], self.pad[1], self.view)
    }
}
