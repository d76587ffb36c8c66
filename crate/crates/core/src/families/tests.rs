use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::cantorlex::{delta, lex_cmp, parse_stem};
use crate::ordertype::normalize;
use crate::ordinal::parse_ordinal;

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

fn nat_set(xs: &[u64]) -> BTreeSet<Ordinal> {
    xs.iter().map(|&n| Ordinal::nat(n)).collect()
}

fn aff(start: u64, step: u64) -> LevelSchedule {
    LevelSchedule::affine(Ordinal::nat(start), Ordinal::nat(step)).unwrap()
}

fn family(src: &str) -> RepFamily {
    parse_family(src).unwrap().family
}

fn class(src: &str) -> SymbolicClass {
    match &family(src).blocks()[0] {
        Block::Class(c) => c.clone(),
        b => panic!("not a class: {b}"),
    }
}

/// The canonised split law on the first `n` decoded points.
fn split_law_holds(c: &SymbolicClass, n: usize) -> bool {
    let (asc, desc) = (c.asc_part(), c.desc_part());
    let pts: Vec<Point> = (0..n).map(|k| c.decode(k)).collect();
    let side = |k: usize| if c.kind() == Kind::Zeta { k % 2 } else { usize::from(c.kind() == Kind::Desc) };
    let idx = |k: usize| if c.kind() == Kind::Zeta { k / 2 } else { k };
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = delta(&pts[i], &pts[j]).unwrap();
            let expected = match (side(i), side(j)) {
                (0, 0) if c.kind() != Kind::Desc => asc.unwrap().level(idx(i).min(idx(j))),
                (0, 0) | (1, 1) => desc.unwrap().level(idx(i).min(idx(j))),
                _ => c.root().unwrap().clone(),
            };
            if d != expected {
                return false;
            }
        }
    }
    true
}

const DESC_ODD: &str = "alpha w\ndesc(stem={}, sched=sched(prefix=[], start=1, step=2))\n";
const ASC_NAT: &str = "alpha w\nasc(stem={0}, sched=sched(prefix=[], start=1, step=1))\n";
const ZETA: &str = "alpha w\nzeta(r=0, left=desc(stem={}, sched=sched(prefix=[], start=1, step=2)), right=asc(stem={0}, sched=sched(prefix=[], start=1, step=1)))\n";
const TOWER: &str = "alpha w\ntower(stem={}, roots=sched(prefix=[], start=0, step=2), inner=sched(prefix=[], start=1, step=2), step=1)\n";

#[test]
fn descending_decode_example() {
    let c = class(DESC_ODD);
    assert_eq!(c.decode(0).support(), &nat_set(&[1]));
    assert_eq!(c.decode(1).support(), &nat_set(&[3]));
    assert_eq!(c.decode(2).support(), &nat_set(&[5]));
    assert_eq!(delta(&c.decode(1), &c.decode(0)).unwrap(), o("1"));
    assert!(c.decode(0) > c.decode(1));
}

#[test]
fn ascending_decode_example() {
    let c = class(ASC_NAT);
    assert_eq!(c.decode(0).support(), &nat_set(&[0]));
    assert_eq!(c.decode(1).support(), &nat_set(&[0, 1]));
    assert_eq!(c.decode(2).support(), &nat_set(&[0, 1, 2]));
}

#[test]
fn zeta_halves_split_at_the_root() {
    let c = class(ZETA);
    let (left, right) = (c.desc_part().unwrap(), c.asc_part().unwrap());
    let alpha = Alpha::omega();
    for i in 0..6 {
        for j in 0..6 {
            let (l, r) = (left.decode(&alpha, i), right.decode(&alpha, j));
            assert!(l < r);
            assert_eq!(delta(&l, &r).unwrap(), o("0"));
        }
    }
    assert!(split_law_holds(&c, 8));
}

#[test]
fn split_law_on_symbolic_classes() {
    let sources = [
        DESC_ODD,
        ASC_NAT,
        ZETA,
        "alpha w^2\nasc(stem={3, w+5}, sched=sched(prefix=[1, 4], start=w, step=w))\n",
        "alpha w^2\ndesc(limit={2} + sched(prefix=[], start=w, step=1), sched=sched(prefix=[], start=3, step=2), upper=[{w}])\n",
        "alpha w^3\nzeta(r=w, left=desc(stem={}, sched=sched(prefix=[], start=w^2, step=w)), right=asc(stem={}, sched=sched(prefix=[w+1], start=w*2, step=1)))\n",
    ];
    for src in sources {
        let c = class(src);
        assert!(split_law_holds(&c, 8), "{src}");
        let samples = c.body().sample(c.ambient(), 8);
        assert!(samples.windows(2).all(|w| w[0] < w[1]), "{src}");
    }
}

#[test]
fn drop_prefix_shifts_the_decoding() {
    let c = class(ASC_NAT);
    let part = c.asc_part().unwrap().drop_prefix(2);
    assert_eq!(part.sched(), &aff(3, 1));
    let alpha = Alpha::omega();
    for n in 0..=5 {
        assert_eq!(part.decode(&alpha, n), c.decode(n + 2));
    }
    assert_eq!(c.asc_part().unwrap().drop_prefix(0), *c.asc_part().unwrap());
    let d = class(DESC_ODD);
    let dropped = d.desc_part().unwrap().drop_prefix(3);
    for n in 0..=7 {
        assert_eq!(dropped.decode(&alpha, n), d.decode(n + 3));
    }
}

#[test]
fn selection_composes_schedules() {
    let c = class(ASC_NAT);
    let evens = IndexSchedule::affine(0, 2).unwrap();
    let part = c.asc_part().unwrap().select(&evens);
    let alpha = Alpha::omega();
    for n in 0..8 {
        assert_eq!(part.decode(&alpha, n), c.decode(2 * n));
    }
    let sub = c.with_parts(None, Some(part)).unwrap();
    assert!(split_law_holds(&sub, 8));
}

#[test]
fn tower_points_are_ordered_interval_by_interval() {
    let fam = family(TOWER);
    let Block::Tower(t) = &fam.blocks()[0] else { panic!() };
    let mut pts = Vec::new();
    for j in 0..5 {
        for n in (0..5).rev() {
            pts.push(t.point(j, n));
        }
    }
    assert!(pts.windows(2).all(|w| lex_cmp(&w[0], &w[1]).unwrap().is_lt()));
    assert_eq!(t.point(2, 3).support(), &nat_set(&[0, 2, 8]));
    assert_eq!(t.position_of(&nat_set(&[0, 2, 8])), Some((2, 3)));
    let dropped = t.drop_intervals(2);
    for n in 0..4 {
        assert_eq!(dropped.point(0, n), t.point(2, n));
    }
}

#[test]
fn order_type_examples() {
    let zeta = family(ZETA);
    assert_eq!(normalize(&zeta.order_type()).form, normalize(&TypeExpr::zeta()).form);
    let fam = family("alpha w\nfinite[point{}, point{0}]\nasc(stem={0, 1}, sched=sched(prefix=[], start=2, step=1))\n");
    assert_eq!(normalize(&fam.order_type()).form, normalize(&TypeExpr::omega()).form);
    let tower = family(TOWER);
    assert_eq!(tower.order_type(), TypeExpr::prod(TypeExpr::rev(TypeExpr::omega()), TypeExpr::omega()));
    assert_eq!(tower.shape(), vec![ShapeChunk::Tower]);
}

#[test]
fn compare_blocks_examples() {
    let alpha = Alpha::omega();
    let a = Block::Class(
        SymbolicClass::asc(&alpha, AscPart::with_stem(BTreeSet::new(), aff(1, 1)).unwrap(), vec![]).unwrap(),
    );
    let b = Block::Class(
        SymbolicClass::asc(&alpha, AscPart::with_stem(nat_set(&[0]), aff(1, 1)).unwrap(), vec![]).unwrap(),
    );
    assert_eq!(compare_blocks(&a, &b).unwrap(), BlockOrder::Less);
    assert_eq!(compare_blocks(&b, &a).unwrap(), BlockOrder::Greater);
    let f = Block::Finite(vec![Point::new(&alpha, []).unwrap()]);
    assert_eq!(compare_blocks(&f, &b).unwrap(), BlockOrder::Less);
    assert_eq!(compare_blocks(&a, &a).unwrap(), BlockOrder::Incomparable);
    let z = class(ZETA);
    let left = Block::Class(SymbolicClass::desc(&alpha, z.desc_part().unwrap().clone(), vec![]).unwrap());
    let right = Block::Class(SymbolicClass::asc(&alpha, z.asc_part().unwrap().clone(), vec![]).unwrap());
    assert_eq!(compare_blocks(&left, &right).unwrap(), BlockOrder::Less);
}

#[test]
fn condensation_class_examples() {
    let one = family(ASC_NAT).condensation_classes();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].class_type, ClassType::Omega);
    let three = family(
        "alpha w\nfinite[point{}, point{2}, point{1}]\nzeta(r=3, left=desc(stem={0}, sched=sched(prefix=[], start=4, step=2)), right=asc(stem={0}, sched=sched(prefix=[], start=4, step=1)))\nfinite[point{0, 2}]\n",
    )
    .condensation_classes();
    let types: Vec<ClassType> = three.iter().map(|c| c.class_type).collect();
    assert_eq!(types, vec![ClassType::Finite(3), ClassType::Zeta, ClassType::Finite(1)]);
    let extras =
        family("alpha w\nasc(stem={5}, sched=sched(prefix=[], start=6, step=1), extras=[point{}, point{7}])\n");
    let cc = extras.condensation_classes();
    assert_eq!((cc.len(), cc[0].class_type), (1, ClassType::Omega));
    let glued = family("alpha w\ndesc(stem={}, sched=sched(prefix=[], start=1, step=2))\nfinite[point{0}]\n");
    let cc = glued.condensation_classes();
    assert_eq!((cc.len(), cc[0].class_type, cc[0].blocks.clone()), (1, ClassType::OmegaStar, vec![0, 1]));
    assert_eq!(glued.class_body(&cc[0]).unwrap().middle.len(), 1);
}

#[test]
fn families_reject_bad_layouts() {
    assert!(parse_family("alpha w\nasc(stem={0}, sched=sched(prefix=[], start=1, step=1))\nasc(stem={}, sched=sched(prefix=[], start=1, step=1))\n").is_err());
    let err = parse_family("alpha w\ndesc(stem={}, sched=sched(prefix=[], start=1, step=2))\nasc(stem={0}, sched=sched(prefix=[], start=1, step=1))\n").unwrap_err();
    assert_eq!(err.reason(), "invalid-family");
    assert!(parse_family("alpha 3\nfinite[point{0}]\n").is_err());
    assert!(parse_family("finite[point{0}]\n").is_err());
    assert!(parse_family("alpha w\nasc(stem={0}, sched=sched(prefix=[], start=1, step=1), bogus=1)\n")
        .unwrap_err()
        .is_parse());
    assert!(parse_family("alpha w\nfinite[point{0}, point{1}]\n").is_err());
}

#[test]
fn raw_sequences_from_levels() {
    let fam =
        family("alpha w\nraw(asc, stem={}, levels=[5, 2, 7], tail=sched(prefix=[], start=9, step=1), window=3)\n");
    let Block::Raw(r) = &fam.blocks()[0] else { panic!() };
    let splits: Vec<Ordinal> = (0..6).map(|n| delta(&r.decode(n), &r.decode(n + 1)).unwrap()).collect();
    let expected: Vec<Ordinal> = [5u64, 2, 7, 9, 10, 11].iter().map(|&n| Ordinal::nat(n)).collect();
    assert_eq!(splits, expected);
    assert!((0..8).all(|n| r.decode(n) < r.decode(n + 1)));
    let err = parse_family(
        "alpha w\nraw(asc, stem={}, levels=[5, 2, 7], tail=sched(prefix=[], start=9, step=1), window=1)\n",
    );
    assert_eq!(err.unwrap_err().reason(), "window");
    let desc = family("alpha w\nraw(desc, stem={}, levels=[5, 2, 7], tail=sched(prefix=[], start=9, step=1))\n");
    let Block::Raw(r) = &desc.blocks()[0] else { panic!() };
    assert_eq!(r.window(), 2);
    let splits: Vec<Ordinal> = (0..5).map(|n| delta(&r.decode(n), &r.decode(n + 1)).unwrap()).collect();
    assert_eq!(splits, expected[..5].to_vec());
    assert!((0..8).all(|n| r.decode(n) > r.decode(n + 1)));
}

#[test]
fn raw_zeta_from_levels() {
    let src = "alpha w\nraw(zeta, stem={}, left=sched(prefix=[], start=6, step=2), levels=[4, 1, 3], right=sched(prefix=[], start=5, step=1))\n";
    let fam = family(src);
    let Block::Raw(r) = &fam.blocks()[0] else { panic!() };
    let profile = r.body().split_profile(r.ambient());
    assert_eq!(profile, [6u64, 4, 1, 3, 5].iter().map(|&n| Ordinal::nat(n)).collect::<Vec<_>>());
    assert_eq!(r.window(), 3);
    let pts = r.body().sample(r.ambient(), 6);
    assert!(pts.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn count_extending_matches_enumeration() {
    let alpha = Alpha::omega();
    let fam = family(ZETA);
    let pts = fam.blocks()[0].sample(12);
    for (h, bits) in
        [(0u64, vec![]), (1, vec![0u64]), (1, vec![]), (2, vec![0, 1]), (3, vec![]), (4, vec![3]), (3, vec![0])]
    {
        let s = Stem::new(&alpha, Ordinal::nat(h), bits.iter().map(|&b| Ordinal::nat(b))).unwrap();
        let seen = pts.iter().filter(|p| p.support().range(..s.height()).eq(s.bits().iter())).count();
        match fam.count_extending(&s) {
            Count::Finite(k) => assert_eq!(k, seen, "{s}"),
            Count::Infinite => assert!(seen >= 6, "{s}"),
        }
    }
    let tower = family(TOWER);
    let s = parse_stem("stem(h=3){0, 2}", &alpha).unwrap();
    assert_eq!(tower.count_extending(&s), Count::Infinite);
    let s = parse_stem("stem(h=4){0, 3}", &alpha).unwrap();
    assert_eq!(tower.count_extending(&s), Count::Finite(1));
}

#[test]
fn text_round_trips() {
    let sources = [
        DESC_ODD,
        ASC_NAT,
        ZETA,
        TOWER,
        "alpha w^2\nfinite[point{}]\nasc(stem={0, 1}, sched=sched(prefix=[2], start=w, step=1), extras=[point{0}])\n",
        "alpha w^2\ndesc(limit={2} + sched(prefix=[], start=w, step=1), sched=sched(prefix=[], start=3, step=2), upper=[{w}])\n",
        "alpha kappa\nasc(stem={}, sched=sched(prefix=[], start=w^(w+1), step=w))\n",
        "alpha w\nraw(asc, stem={}, levels=[5, 2, 7], tail=sched(prefix=[], start=9, step=1), window=3)\n",
    ];
    for src in sources {
        let doc = parse_family(src).unwrap();
        let printed = doc.to_string();
        assert_eq!(parse_family(&printed).unwrap(), doc, "{printed}");
    }
    let doc = parse_family("# a comment\nalpha w  # trailing\n\nfinite[point{0}]\ncheck type = 1\n").unwrap();
    assert_eq!(doc.check("type"), Some("1"));
}

fn asc_class() -> impl Strategy<Value = SymbolicClass> {
    (prop::collection::btree_set(0u64..6, 0..3), 0u64..3, 1u64..4).prop_filter_map(
        "stem meets levels",
        |(stem, gap, step)| {
            let alpha = Alpha::omega();
            let start = stem.iter().max().map_or(0, |m| m + 1) + gap;
            let part = AscPart::with_stem(nat_set(&stem.into_iter().collect::<Vec<_>>()), aff(start, step)).ok()?;
            SymbolicClass::asc(&alpha, part, vec![]).ok()
        },
    )
}

proptest! {
    #[test]
    fn drop_and_select_keep_the_split_law(c in asc_class(), k in 0usize..6, a in 0usize..3, b in 1usize..4) {
        prop_assert!(split_law_holds(&c, 8));
        let alpha = c.ambient().clone();
        let part = c.asc_part().unwrap();
        let dropped = part.drop_prefix(k);
        for n in 0..8 {
            prop_assert_eq!(dropped.decode(&alpha, n), c.decode(n + k));
        }
        let sel = IndexSchedule::affine(a, b).unwrap();
        let picked = c.with_parts(None, Some(part.select(&sel))).unwrap();
        prop_assert!(split_law_holds(&picked, 8));
        for n in 0..8 {
            prop_assert_eq!(picked.decode(n), c.decode(a + b * n));
        }
        let fam = RepFamily::new(alpha.clone(), vec![Block::Class(picked)]).unwrap();
        prop_assert_eq!(normalize(&fam.order_type()).form, normalize(&TypeExpr::omega()).form);
    }

    #[test]
    fn index_of_inverts_decode(c in asc_class(), n in 0usize..10) {
        let part = c.asc_part().unwrap();
        prop_assert_eq!(part.index_of(c.decode(n).support()), Some(n));
    }
}
