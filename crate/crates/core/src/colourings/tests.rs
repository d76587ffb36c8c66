use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::canonise::{canonise_family, n_map, n_prime, n_realize, Component, SymbolicOrdinalSet};
use crate::cantorlex::{parse_point, parse_stem, Alpha};
use crate::families::{parse_family, IndexSchedule, Slot};
use crate::ordertype::{normalize, parse_type};
use crate::ordinal::{parse_ordinal, Ordinal};

fn family(src: &str) -> RepFamily {
    parse_family(src).unwrap().family
}

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

fn pt(s: &str) -> Point {
    parse_point(s, &Alpha::omega()).unwrap()
}

fn body_of(a: &RepFamily, i: usize) -> Body {
    a.blocks()[i].body().unwrap().clone()
}

const ZETA: &str = "alpha w\nzeta(r=0, left=desc(stem={}, sched=sched(prefix=[], start=1, step=2)), right=asc(stem={0}, sched=sched(prefix=[], start=1, step=1)))\n";
const TOWER: &str = "alpha w\ntower(stem={}, roots=sched(prefix=[], start=0, step=2), inner=sched(prefix=[], start=1, step=2), step=1)\n";
const TWO_ASC: &str = "alpha w\nasc(stem={}, sched=sched(prefix=[], start=1, step=5))\nasc(stem={0}, sched=sched(prefix=[], start=2, step=1))\n";
const TWO_ASC_STEADY: &str = "alpha w\nasc(stem={}, sched=sched(prefix=[], start=1, step=1))\nasc(stem={0}, sched=sched(prefix=[], start=2, step=1))\n";
const THREE_ASC: &str = "alpha w\nasc(stem={}, sched=sched(prefix=[], start=2, step=1))\nasc(stem={1}, sched=sched(prefix=[], start=2, step=3))\nasc(stem={0}, sched=sched(prefix=[], start=2, step=1))\n";
const RAW_ASC: &str =
    "alpha w\nraw(asc, stem={}, levels=[5, 2, 7], tail=sched(prefix=[], start=9, step=1), window=3)\n";
const RAW_RISING: &str =
    "alpha w\nraw(asc, stem={}, levels=[2, 5, 1, 7], tail=sched(prefix=[], start=9, step=1), window=3)\n";

#[test]
fn colour_text_round_trip() {
    for c in [Colour::Zero, Colour::One] {
        assert_eq!(c.to_string().parse::<Colour>().unwrap(), c);
        assert_eq!(c.other().other(), c);
    }
    assert!("2".parse::<Colour>().unwrap_err().is_parse());
}

#[test]
fn triple_reads_the_two_splits() {
    assert_eq!(colour_triple(&pt("point{}"), &pt("point{1}"), &pt("point{0}")).unwrap(), Colour::Zero);
    assert_eq!(colour_triple(&pt("point{1}"), &pt("point{0, 2}"), &pt("point{0, 1}")).unwrap(), Colour::One);
    let unordered = colour_triple(&pt("point{0, 1}"), &pt("point{0, 2}"), &pt("point{1}"));
    assert!(matches!(unordered, Err(Error::Precondition(_))));
}

#[test]
fn both_triple_colours_occur_in_zeta_classes() {
    for src in [ZETA, TWO_ZETA] {
        let a = family(src);
        for target in [Colour::Zero, Colour::One] {
            let t = flip_triple(&a, target).unwrap();
            assert_eq!(colour_triple_family(&t).unwrap(), target, "{src}");
            assert_eq!(flip_triple(&t, target).unwrap(), t);
            assert!(flip_triple(&t, target.other()).is_err());
        }
    }
}

#[test]
fn canonised_one_sided_classes_are_triple_homogeneous() {
    let alpha = Alpha::omega();
    let colours = |pts: Vec<Point>| {
        let mut seen = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    seen.insert(colour_triple(&pts[i], &pts[j], &pts[k]).unwrap());
                }
            }
        }
        seen
    };
    let asc = body_of(&family(TWO_ASC), 0).sample(&alpha, 6);
    assert_eq!(colours(asc), BTreeSet::from([Colour::One]));
    let desc = body_of(&family("alpha w\ndesc(stem={}, sched=sched(prefix=[], start=1, step=2))\n"), 0);
    assert_eq!(colours(desc.sample(&alpha, 6)), BTreeSet::from([Colour::Zero]));
    assert!(matches!(colour_triple_family(&family(TWO_ASC)), Err(Error::Precondition(_))));
}

#[test]
fn zeta_worked_family() {
    let a = family(ZETA);
    let w = zeta_witness(a.ambient(), &body_of(&a, 0)).unwrap();
    assert_eq!((w.n0.clone(), w.n1.clone(), w.colour), (1u32.into(), 1u32.into(), Colour::Zero));
    // x_A is the top of the left tail, just below the cross split at level 0.
    assert_eq!(w.x, Slot::Left(0));
    let dropped = replace_body(&a, 0, body_of(&a, 0).without(a.ambient(), 0, 0)).unwrap();
    let w = zeta_witness(dropped.ambient(), &body_of(&dropped, 0)).unwrap();
    assert_eq!((w.n0, w.n1, w.colour), (1u32.into(), 2u32.into(), Colour::One));
}

#[test]
fn zeta_flips_alternate_and_keep_the_type() {
    let a = family(ZETA);
    assert_eq!(flip_zeta(&a, Colour::Zero).unwrap(), a);
    let once = flip_zeta(&a, Colour::One).unwrap();
    let twice = flip_zeta(&once, Colour::Zero).unwrap();
    assert_eq!(colour_zeta(&once).unwrap(), Colour::One);
    assert_eq!(colour_zeta(&twice).unwrap(), Colour::Zero);
    for b in [&once, &twice] {
        assert_eq!(b.shape(), a.shape());
        assert!(b.sample_within(&a, 12));
    }
}

#[test]
fn zeta_needs_a_countable_ambient() {
    let a = family("alpha kappa\nzeta(r=w, left=desc(stem={}, sched=sched(prefix=[], start=w^2, step=w)), right=asc(stem={}, sched=sched(prefix=[w+1], start=w*2, step=1)))\n");
    assert!(matches!(colour_zeta(&a), Err(Error::Uncountable)));
    assert!(matches!(colour_zeta(&family(TWO_ASC)), Err(Error::Precondition(_))));
}

#[test]
fn canonised_families_have_colour_c_zero() {
    for src in [ZETA, TOWER, TWO_ASC, RAW_ASC, THREE_ASC] {
        let a = canonise_family(&family(src)).unwrap();
        assert_eq!(colour_c(&a).unwrap(), Colour::Zero, "{src}");
    }
    assert_eq!(colour_c(&family("alpha w\nfinite[point{}, point{0}]\n")).unwrap(), Colour::Zero);
}

#[test]
fn glued_pair_on_a_descending_class_has_colour_c_one() {
    let a = family("alpha w\ndesc(stem={}, sched=sched(prefix=[], start=3, step=1), extras=[point{0, 1, 2}, point{0, 1, 2, 5}, point{0, 1, 2, 4}])\n");
    assert_eq!(colour_c(&a).unwrap(), Colour::One);
}

#[test]
fn tower_flip_reaches_colour_one_and_canonising_undoes_it() {
    let a = family(TOWER);
    assert_eq!(colour_c(&a).unwrap(), Colour::Zero);
    let b = flip_c(&a, Colour::One).unwrap();
    assert_eq!(colour_c(&b).unwrap(), Colour::One);
    assert_eq!(b.shape(), a.shape());
    assert!(b.sample_within(&a, 24));
    let back = flip_c(&b, Colour::Zero).unwrap();
    assert_eq!(colour_c(&back).unwrap(), Colour::Zero);
    assert_eq!(back.shape(), a.shape());
    assert!(matches!(flip_c(&family(TWO_ASC), Colour::One), Err(Error::Precondition(_))));
}

#[test]
fn mutual_colour_compares_the_second_splits() {
    let steady = family(TWO_ASC_STEADY);
    assert_eq!(colour_mutual(&steady).unwrap(), Colour::One);
    let spread = family(TWO_ASC);
    assert_eq!(colour_mutual(&spread).unwrap(), Colour::Zero);
}

#[test]
fn mutual_flips_both_ways() {
    for src in [TWO_ASC, TWO_ASC_STEADY, THREE_ASC] {
        let a = family(src);
        for target in [Colour::Zero, Colour::One] {
            let b = flip_mutual(&a, target).unwrap();
            assert_eq!(colour_mutual(&b).unwrap(), target, "{src}");
            assert_eq!(b.shape(), a.shape());
            assert!(b.sample_within(&a, 12));
        }
    }
}

#[test]
fn preparing_three_classes_trims_the_outsider() {
    let a = family(THREE_ASC);
    assert!(colour_mutual(&a).is_err());
    let p = prepare_two_classes(&a).unwrap();
    assert_eq!(p.shape(), a.shape());
    let outsider = body_of(&p, 2);
    let head = outsider.sample(p.ambient(), 2);
    let first = delta(&head[0], &head[1]).unwrap();
    assert!(first > Ordinal::nat(2u32), "{p}");
    assert!(colour_mutual(&p).is_ok());
    assert_eq!(prepare_two_classes(&family(TWO_ASC)).unwrap(), canonise_family(&family(TWO_ASC)).unwrap());
    assert!(prepare_two_classes(&family(ZETA)).is_err());
}

#[test]
fn mutual_selectors_drop_the_first_point_of_each_class() {
    let a = family(TWO_ASC);
    let (s0, s1) = mutual_selectors(&a).unwrap();
    let alpha = a.ambient();
    let c0 = body_of(&a, 0).sample(alpha, 6);
    let c1 = body_of(&a, 1).sample(alpha, 6);
    assert_eq!(s0.sample(alpha, 5), c0[1..]);
    assert_eq!(s1.sample(alpha, 5), c1[1..]);
}

proptest! {
    #[test]
    fn mutual_selectors_are_coherent(k0 in 0usize..=5, k1 in 0usize..=5) {
        let a = family(TWO_ASC);
        let alpha = a.ambient().clone();
        let (s0, s1) = mutual_selectors(&a).unwrap();
        // Replacing each selected part by a tail of it keeps the first points.
        let c0 = body_of(&a, 0).without(&alpha, 1, k0 as i64);
        let c1 = body_of(&a, 1).without(&alpha, 1, k1 as i64);
        let replaced = replace_body(&replace_body(&a, 0, c0).unwrap(), 1, c1).unwrap();
        let (r0, r1) = mutual_selectors(&replaced).unwrap();
        prop_assert_eq!(r0.sample(&alpha, 6), s0.without(&alpha, 0, k0 as i64 - 1).sample(&alpha, 6));
        prop_assert_eq!(r1.sample(&alpha, 6), s1.without(&alpha, 0, k1 as i64 - 1).sample(&alpha, 6));
    }
}

const TWO_ZETA: &str = "alpha w\nzeta(r=2, left=desc(stem={}, sched=sched(prefix=[], start=3, step=2)), right=asc(stem={2}, sched=sched(prefix=[], start=3, step=1)))\nzeta(r=2, left=desc(stem={0}, sched=sched(prefix=[], start=4, step=2)), right=asc(stem={0, 2}, sched=sched(prefix=[], start=3, step=1)))\n";

#[test]
fn single_zeta_class_is_the_unique_case() {
    let a = family(ZETA);
    assert_eq!(zeta_cc_case(&a).unwrap(), ZetaCase::Unique(0));
    assert_eq!(colour_zeta_cc(&a).unwrap(), colour_zeta(&a).unwrap());
    let b = flip_zeta_cc(&a, Colour::One).unwrap();
    assert_eq!(colour_zeta_cc(&b).unwrap(), Colour::One);
    assert!(zeta_cc_case(&family(TWO_ASC)).is_err());
}

#[test]
fn equal_roots_give_the_pair_case() {
    let a = family(TWO_ZETA);
    assert_eq!(zeta_cc_case(&a).unwrap(), ZetaCase::Pair(0, 1));
    // Both classes split at 3 just above their cross pair.
    assert_eq!(colour_zeta_cc(&a).unwrap(), Colour::Zero);
    for target in [Colour::Zero, Colour::One] {
        let b = flip_zeta_cc(&a, target).unwrap();
        assert_eq!(colour_zeta_cc(&b).unwrap(), target);
        assert_eq!(b.shape(), a.shape());
        assert!(b.sample_within(&a, 12));
    }
}

#[test]
fn zeta_selector_lifts_colour_zeta() {
    let only_zeta = |a: &RepFamily| match zeta_cc_case(a)? {
        ZetaCase::Unique(i) => a.with_blocks(vec![a.blocks()[i].clone()]),
        ZetaCase::Pair(..) => Err(Error::Precondition("two candidate classes".into())),
    };
    let lifted = lift_selector(only_zeta, colour_zeta);
    let a = family(&ZETA.replacen("alpha w\n", "alpha w\nfinite[point{}]\n", 1));
    assert_eq!(lifted(&a).unwrap(), colour_zeta(&family(ZETA)).unwrap());
    assert!(lifted(&family(TWO_ZETA)).is_err());
}

#[test]
fn extend_total_uses_the_default_off_domain() {
    let total = extend_total(colour_zeta, Colour::One);
    assert_eq!(total(&family(ZETA)), Colour::Zero);
    assert_eq!(total(&family(TWO_ASC)), Colour::One);
    let canonised = extend_total(|a: &RepFamily| colour_c(&canonise_family(a)?), Colour::One);
    assert_eq!(canonised(&family(RAW_ASC)), Colour::Zero);
}

fn dyadic(left: u64, right: u64) -> DyadicCopy {
    DyadicCopy::new(parse_stem("stem(h=0){}", &Alpha::omega()).unwrap(), left, right).unwrap()
}

fn within(b: &DyadicCopy, a: &DyadicCopy) -> bool {
    let host = a.sample(10);
    b.sample(3).iter().all(|p| host.binary_search(p).is_ok())
}

#[test]
fn dyadic_nodes_extend_their_parents() {
    let a = dyadic(1, 2);
    assert_eq!(dyadic_f(&a, &[]).to_string(), "stem(h=0){}");
    assert_eq!(dyadic_f(&a, &[false]).to_string(), "stem(h=2){}");
    assert_eq!(dyadic_f(&a, &[true]).to_string(), "stem(h=3){0}");
    assert_eq!(dyadic_f(&a, &[true, false]).to_string(), "stem(h=5){0}");
    let pts = a.sample(4);
    assert!(pts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(pts.len(), 15);
}

#[test]
fn tausplit_colours_and_flips() {
    let balanced = dyadic(0, 0);
    assert_eq!(colour_tausplit(&balanced), Colour::Zero);
    assert_eq!(colour_tausplit(&dyadic(2, 0)), Colour::Zero);
    assert_eq!(colour_tausplit(&dyadic(0, 2)), Colour::One);
    let once = flip_tausplit(&balanced).unwrap();
    let twice = flip_tausplit(&once).unwrap();
    assert_eq!(colour_tausplit(&once), Colour::One);
    assert_eq!(colour_tausplit(&twice), Colour::Zero);
    assert!(within(&once, &balanced) && within(&twice, &balanced));
    let right = flip_tausplit(&dyadic(0, 2)).unwrap();
    assert_eq!(colour_tausplit(&right), Colour::Zero);
}

#[test]
fn dyadic_text_round_trip() {
    let twice = flip_tausplit(&flip_tausplit(&dyadic(1, 0)).unwrap()).unwrap();
    for a in [dyadic(1, 0), twice] {
        let text = a.to_string();
        assert_eq!(parse_dyadic(&text).unwrap(), a, "{text}");
    }
    let src = "alpha w\ndyadic(root=stem(h=1){0}, left=0, right=1, view=[e=e, 0>0, 1>11])\n";
    let a = parse_dyadic(src).unwrap();
    assert_eq!(dyadic_f(&a, &[true]).to_string(), "stem(h=5){0, 1, 3}");
}

#[test]
fn malformed_views_are_rejected() {
    for view in ["[0>0, 1>1]", "[e=e, 0>0]", "[e=e, 0>0, 1>0]", "[e=e, 0>0, 1>1, 10>1]", "[e=x]"] {
        let src = format!("alpha w\ndyadic(root=stem(h=0){{}}, left=0, right=0, view={view})\n");
        assert!(parse_dyadic(&src).is_err(), "{view}");
    }
    let deep = "alpha w+3\ndyadic(root=stem(h=w+1){}, left=0, right=0)\n";
    assert!(matches!(parse_dyadic(deep), Err(Error::OutOfRange(_))));
}

proptest! {
    #[test]
    fn composed_views_agree_with_pointwise_composition(
        grafts in proptest::collection::vec((0usize..3, 0usize..3, 0usize..3), 1..4),
        probe in proptest::collection::vec(any::<bool>(), 0..6),
    ) {
        let mut view = View::identity();
        let mut steps = Vec::new();
        for (w, u, v) in grafts {
            let g = View::graft(vec![true; w], [vec![true; w], vec![false; u + 1]].concat(), [vec![true; w + 1], vec![true; v]].concat()).unwrap();
            view = view.after(&g);
            steps.push(g);
        }
        // The first graft is applied last.
        let direct = steps.iter().rev().fold(probe.clone(), |x, g| g.apply(&x));
        prop_assert_eq!(view.apply(&probe), direct);
    }
}

fn asc_class(src: &str) -> SymbolicClass {
    match &family(src).blocks()[0] {
        Block::Class(c) => c.clone(),
        b => panic!("not a class: {b}"),
    }
}

fn oracles() -> Vec<KappaSetColouring> {
    ["const0", "const1", "parity"].iter().map(|n| KappaSetColouring::by_name(n).unwrap()).collect()
}

#[test]
fn reference_oracles() {
    let c = asc_class("alpha w\nasc(stem={}, sched=sched(prefix=[], start=1, step=1))\n");
    let parity = KappaSetColouring::parity();
    assert_eq!(kappa_g(&parity, &c).unwrap(), Colour::One);
    let tail = n_realize(&c, &IndexSchedule::tail(1)).unwrap();
    assert_eq!(kappa_g(&parity, &tail).unwrap(), Colour::Zero);
    assert_eq!(kappa_g(&KappaSetColouring::constant(Colour::One), &tail).unwrap(), Colour::One);
    assert!(KappaSetColouring::by_name("nope").is_none());
    assert_eq!(parity.name(), "parity");
}

#[test]
fn kappa_g_transfers_along_realised_subsets() {
    let srcs = [
        "alpha w\nasc(stem={}, sched=sched(prefix=[], start=1, step=1))\n",
        "alpha kappa\nasc(stem={}, sched=sched(prefix=[], start=w^(w+1), step=w))\n",
        "alpha w^2\ndesc(stem={}, sched=sched(prefix=[4], start=w, step=1))\n",
    ];
    let sels = [
        IndexSchedule::identity(),
        IndexSchedule::tail(3),
        IndexSchedule::affine(1, 2).unwrap(),
        IndexSchedule::affine(0, 3).unwrap(),
    ];
    for src in srcs {
        let c = asc_class(src);
        let sched = match c.kind() {
            Kind::Asc => c.asc_part().unwrap().sched().clone(),
            _ => c.desc_part().unwrap().sched().clone(),
        };
        for sel in &sels {
            let realised = n_realize(&c, sel).unwrap();
            let x = SymbolicOrdinalSet::schedule(sched.compose(sel));
            assert!(n_map(&realised).unwrap().same_set(&x));
            for f in oracles() {
                assert_eq!(kappa_g(&f, &realised).unwrap(), f.apply(&x), "{} {src}", f.name());
            }
        }
    }
}

#[test]
fn polarised_pieces_round_trip() {
    let a = family(TWO_ASC_STEADY);
    let set = n_prime(&a).unwrap();
    let form = normalize(&parse_type("w + w~").unwrap()).form.unwrap();
    let cuts = xi_cuts(&form).unwrap();
    assert_eq!(cuts, vec![o("w"), o("w*2")]);
    let pieces = split_at_cuts(&set, &cuts).unwrap();
    assert_eq!(pieces.len(), 2);
    assert!(pieces[0].concat(&pieces[1]).unwrap().same_set(&set));
    for f in oracles() {
        let packaged = polarised_split(|p: &[SymbolicOrdinalSet]| polarise(&f)(p).unwrap(), cuts.clone());
        assert_eq!(packaged(&set).unwrap(), f.apply(&set));
    }
    let single = split_at_cuts(&pieces[0], &cuts[..1]).unwrap();
    assert_eq!(single, vec![pieces[0].clone()]);
    assert!(split_at_cuts(&set, &[o("w*2"), o("w")]).is_err());
    assert!(split_at_cuts(&set, &[o("w")]).is_err());
    assert!(split_at_cuts(&set, &[o("5"), o("w*2")]).is_err());
    assert!(xi_cuts(&normalize(&parse_type("3").unwrap()).form.unwrap()).is_err());
}

#[test]
fn affordable_reads_a_raw_block_first() {
    let a = family(RAW_ASC);
    let parity = KappaSetColouring::parity();
    assert_eq!(colour_affordable(&parity, &a).unwrap(), Colour::Zero);
    let canonised = flip_affordable_raw(&a).unwrap();
    assert_eq!(colour_affordable(&parity, &canonised).unwrap(), Colour::One);
    assert_eq!(canonised.shape(), a.shape());
    assert!(canonised.sample_within(&a, 12));
    // A canonised sequence has no decreasing splits left to thin down to.
    assert!(matches!(flip_affordable_raw(&canonised), Err(Error::Unsupported(_))));
    let rising = family(RAW_RISING);
    assert_eq!(colour_affordable(&parity, &rising).unwrap(), Colour::One);
    let thinned = flip_affordable_raw(&rising).unwrap();
    assert_eq!(colour_affordable(&parity, &thinned).unwrap(), Colour::Zero);
    assert_eq!(thinned.shape(), rising.shape());
    assert!(thinned.sample_within(&rising, 12));
    let desc =
        family("alpha w\nraw(desc, stem={}, levels=[5, 2, 7], tail=sched(prefix=[], start=9, step=1), window=3)\n");
    let flipped = flip_affordable_raw(&desc).unwrap();
    assert_ne!(colour_affordable(&parity, &flipped).unwrap(), colour_affordable(&parity, &desc).unwrap());
    assert_eq!(flipped.shape(), desc.shape());
    assert!(flip_affordable_raw(&family(TWO_ASC)).is_err());
}

#[test]
fn affordable_transfers_on_two_piece_families() {
    let a = family(TWO_ASC_STEADY);
    let sels = [
        (IndexSchedule::identity(), IndexSchedule::tail(2)),
        (IndexSchedule::affine(1, 2).unwrap(), IndexSchedule::affine(0, 3).unwrap()),
    ];
    for (s0, s1) in sels {
        let blocks: Vec<Block> = a
            .blocks()
            .iter()
            .zip([&s0, &s1])
            .map(|(b, sel)| match b {
                Block::Class(c) => Block::Class(n_realize(c, sel).unwrap()),
                _ => unreachable!(),
            })
            .collect();
        let b = a.with_blocks(blocks).unwrap();
        let sched = |i: usize| match &a.blocks()[i] {
            Block::Class(c) => c.asc_part().unwrap().sched().clone(),
            _ => unreachable!(),
        };
        let expected = SymbolicOrdinalSet::new(vec![
            Component::Shifted { offset: Ordinal::zero(), sched: sched(0).compose(&s0) },
            Component::Shifted { offset: o("w"), sched: sched(1).compose(&s1) },
        ])
        .unwrap();
        assert!(n_prime(&b).unwrap().same_set(&expected));
        for f in oracles() {
            assert_eq!(colour_affordable(&f, &b).unwrap(), f.apply(&expected));
        }
    }
}
