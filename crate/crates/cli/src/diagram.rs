//! Splitting-type pictures: the binary tree of splitting levels spanned by
//! a sample of the family, drawn as indented text or as a Graphviz graph.

use std::fmt::Write;

use ordertype::cantorlex::{delta, Point};
use ordertype::families::{Block, RepFamily, Slot};
use ordertype::{Ordinal, Result};

/// Points drawn from each infinite tail, besides the one shown as `...`.
pub const TAIL_SAMPLE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Dot,
}

#[derive(Debug)]
enum Tree {
    Leaf(Option<usize>),
    Split(Ordinal, Box<Tree>, Box<Tree>),
}

/// Sampled points in increasing order, flagged when the point stands for
/// the rest of a tail that was cut off.
fn sample(a: &RepFamily) -> Vec<(Point, bool)> {
    let alpha = a.ambient();
    let mut out = Vec::new();
    for b in a.blocks() {
        match (b, b.body()) {
            (Block::Finite(_) | Block::Tower(_), _) | (_, None) => {
                out.extend(b.sample(TAIL_SAMPLE).into_iter().map(|p| (p, false)));
            }
            (_, Some(body)) => {
                if body.left.is_some() {
                    out.extend((0..=TAIL_SAMPLE).rev().map(|k| (body.point(alpha, Slot::Left(k)), k == TAIL_SAMPLE)));
                }
                out.extend(body.middle.iter().map(|p| (p.clone(), false)));
                if body.right.is_some() {
                    out.extend((0..=TAIL_SAMPLE).map(|k| (body.point(alpha, Slot::Right(k)), k == TAIL_SAMPLE)));
                }
            }
        }
    }
    out
}

/// The splitting tree of `points`: the root is the least split between
/// neighbours, which separates everything left of it from everything right.
fn build(splits: &[Ordinal], labels: &[Option<usize>]) -> Tree {
    if splits.is_empty() {
        return Tree::Leaf(labels[0]);
    }
    let (i, _) = splits.iter().enumerate().min_by(|x, y| x.1.cmp(y.1)).expect("non-empty");
    Tree::Split(
        splits[i].clone(),
        Box::new(build(&splits[..i], &labels[..=i])),
        Box::new(build(&splits[i + 1..], &labels[i + 1..])),
    )
}

pub fn render(a: &RepFamily, format: Format) -> Result<String> {
    let pts = sample(a);
    let mut next = 0;
    let labels: Vec<Option<usize>> = pts
        .iter()
        .map(|(_, cut)| {
            (!cut).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let splits = pts.windows(2).map(|w| delta(&w[0].0, &w[1].0)).collect::<Result<Vec<_>>>()?;
    let points: Vec<&Point> = pts.iter().filter(|(_, cut)| !cut).map(|(p, _)| p).collect();
    let mut out = String::new();
    if pts.is_empty() {
        return Ok(out);
    }
    let tree = build(&splits, &labels);
    match format {
        Format::Ascii => {
            writeln!(out, "alpha {}", a.ambient()).unwrap();
            ascii(&tree, &points, "", "", &mut out);
        }
        Format::Dot => {
            out.push_str("digraph splitting {\n  node [shape=plaintext];\n");
            dot(&tree, &points, &mut 0, &mut out);
            out.push_str("}\n");
        }
    }
    Ok(out)
}

fn leaf_label(label: Option<usize>, points: &[&Point]) -> String {
    match label {
        Some(i) => format!("x{i} {}", points[i]),
        None => "...".to_owned(),
    }
}

fn ascii(t: &Tree, points: &[&Point], lead: &str, rest: &str, out: &mut String) {
    match t {
        Tree::Leaf(l) => writeln!(out, "{lead}{}", leaf_label(*l, points)).unwrap(),
        Tree::Split(d, lo, hi) => {
            writeln!(out, "{lead}split {d}").unwrap();
            ascii(lo, points, &format!("{rest}+-0 "), &format!("{rest}|   "), out);
            ascii(hi, points, &format!("{rest}`-1 "), &format!("{rest}    "), out);
        }
    }
}

fn dot(t: &Tree, points: &[&Point], counter: &mut usize, out: &mut String) -> usize {
    let id = *counter;
    *counter += 1;
    match t {
        Tree::Leaf(l) => {
            writeln!(out, "  n{id} [label=\"{}\"];", leaf_label(*l, points)).unwrap();
        }
        Tree::Split(d, lo, hi) => {
            writeln!(out, "  n{id} [label=\"{d}\", shape=circle];").unwrap();
            for (bit, child) in [(0, lo), (1, hi)] {
                let c = dot(child, points, counter, out);
                writeln!(out, "  n{id} -> n{c} [label=\"{bit}\"];").unwrap();
            }
        }
    }
    id
}
