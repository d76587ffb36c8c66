use std::collections::HashSet;

use proptest::prelude::*;

use super::*;
use crate::ordinal::parse_ordinal;

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

fn alpha(s: &str) -> Alpha {
    Alpha::new(o(s)).unwrap()
}

fn pt(bits: &[u64]) -> Point {
    Point::new(&Alpha::omega(), bits.iter().map(|&b| Ordinal::nat(b))).unwrap()
}

fn sym(a: &Alpha, bits: &[&str]) -> Point {
    Point::new(a, bits.iter().map(|b| o(b))).unwrap()
}

/// All points of `^ω2` whose support lies in `{0, ..., width-1}`, tagged with
/// their materialised bit strings.
fn small_points(width: u32) -> Vec<(Point, Vec<bool>)> {
    (0u32..1 << width)
        .map(|mask| {
            let bits: Vec<u64> = (0..width).filter(|i| mask >> i & 1 == 1).map(u64::from).collect();
            let string = (0..width).map(|i| mask >> i & 1 == 1).collect();
            (pt(&bits), string)
        })
        .collect()
}

fn first_mismatch(a: &[bool], b: &[bool]) -> Option<u64> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|i| i as u64)
}

#[test]
fn lex_examples() {
    assert_eq!(lex_cmp(&pt(&[1]), &pt(&[0])).unwrap(), Ordering::Less);
    assert_eq!(lex_cmp(&pt(&[]), &pt(&[])).unwrap(), Ordering::Equal);
    assert_eq!(lex_cmp(&pt(&[0, 2]), &pt(&[0, 1])).unwrap(), Ordering::Less);
    let other = Point::new(&alpha("w*2"), []).unwrap();
    assert_eq!(lex_cmp(&pt(&[]), &other), Err(Error::AmbientMismatch));
}

#[test]
fn delta_and_meet_examples() {
    let a = alpha("w*2");
    assert_eq!(delta(&pt(&[0]), &pt(&[1])).unwrap(), o("0"));
    assert_eq!(delta(&sym(&a, &["w"]), &sym(&a, &["w", "w+1"])).unwrap(), o("w+1"));
    assert_eq!(delta(&pt(&[2]), &pt(&[5])).unwrap(), o("2"));
    assert_eq!(delta(&pt(&[2]), &pt(&[2])), Err(Error::EqualPoints));

    let m = meet(&pt(&[0, 3]), &pt(&[0, 5])).unwrap();
    assert_eq!((m.height().clone(), m.bits().clone()), (o("3"), [o("0")].into()));
    let m = meet(&pt(&[2]), &pt(&[2, 4])).unwrap();
    assert_eq!((m.height().clone(), m.bits().clone()), (o("4"), [o("2")].into()));
    assert!(meet(&pt(&[0]), &pt(&[1])).unwrap().bits().is_empty());
}

#[test]
fn extends_examples() {
    let w = Alpha::omega();
    let s = Stem::new(&w, o("2"), [o("0")]).unwrap();
    assert!(extends(&pt(&[0, 3]), &s).unwrap());
    assert!(!extends(&pt(&[3]), &s).unwrap());
    let a = alpha("w*2");
    let s = Stem::new(&a, o("w"), []).unwrap();
    assert!(extends(&sym(&a, &["w"]), &s).unwrap());
    assert!(Stem::new(&w, o("2"), [o("3")]).is_err());
}

#[test]
fn lex_order_matches_bit_strings() {
    let pts = small_points(6);
    for (x, xs) in &pts {
        for (y, ys) in &pts {
            assert_eq!(lex_cmp(x, y).unwrap(), xs.cmp(ys), "{x} vs {y}");
            match first_mismatch(xs, ys) {
                None => assert_eq!(delta(x, y), Err(Error::EqualPoints)),
                Some(d) => {
                    assert_eq!(delta(x, y).unwrap(), Ordinal::nat(d));
                    let m = meet(x, y).unwrap();
                    let expected: Vec<u64> = (0..d).filter(|&i| xs[i as usize]).collect();
                    let got: Vec<u64> = m.bits().iter().map(|b| b.as_u64().unwrap()).collect();
                    assert_eq!(got, expected);
                    assert!(extends(x, &m).unwrap() && extends(y, &m).unwrap());
                }
            }
        }
    }
}

#[test]
fn min_law_on_small_supports() {
    let mut pts: Vec<Point> = small_points(6).into_iter().map(|(p, _)| p).collect();
    pts.sort();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let (x, y, z) = (&pts[i], &pts[j], &pts[k]);
                let via = delta(x, y).unwrap().min(delta(y, z).unwrap());
                assert_eq!(delta(x, z).unwrap(), via);
            }
        }
    }
}

#[test]
fn min_law_on_symbolic_supports() {
    let a = alpha("w*2+1");
    let positions = ["0", "w", "w+1", "w*2"];
    let mut pts: Vec<Point> = (0u32..16)
        .map(|mask| {
            let bits: Vec<&str> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| positions[i]).collect();
            sym(&a, &bits)
        })
        .collect();
    pts.sort();
    for w in pts.windows(2) {
        assert_eq!(lex_cmp(&w[0], &w[1]).unwrap(), Ordering::Less);
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let via = delta(&pts[i], &pts[j]).unwrap().min(delta(&pts[j], &pts[k]).unwrap());
                assert_eq!(delta(&pts[i], &pts[k]).unwrap(), via);
            }
        }
    }
}

#[test]
fn delta_min_agrees_with_all_pairs() {
    let pts: Vec<Point> = small_points(5).into_iter().map(|(p, _)| p).collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let set = [pts[i].clone(), pts[j].clone(), pts[k].clone()];
                let all_pairs =
                    [(0, 1), (0, 2), (1, 2)].iter().map(|&(a, b)| delta(&set[a], &set[b]).unwrap()).min().unwrap();
                assert_eq!(delta_min(&set).unwrap(), all_pairs);
            }
        }
    }
    assert_eq!(delta_min(&[pt(&[0]), pt(&[1]), pt(&[0, 1])]).unwrap(), o("0"));
    assert!(delta_min(&[pt(&[0])]).is_err());
    assert!(delta_min(&[pt(&[0]), pt(&[0])]).is_err());
}

#[test]
fn literals_round_trip() {
    let a = alpha("w*2");
    let p = parse_point("point{w+1, 3}", &a).unwrap();
    assert_eq!(p.support(), &[o("3"), o("w+1")].into());
    assert_eq!(p.to_string(), "point{3, w + 1}");
    assert_eq!(parse_point(&p.to_string(), &a).unwrap(), p);
    let s = parse_stem("stem(h=w){0,2}", &a).unwrap();
    assert_eq!(s.to_string(), "stem(h=w){0, 2}");
    assert_eq!(parse_stem(&s.to_string(), &a).unwrap(), s);
    assert!(parse_point("point{w*2}", &a).is_err());
    assert!(parse_point("point{1,", &a).is_err());
    assert!(parse_point("point{}", &a).unwrap().support().is_empty());
    assert!(Point::new(&Alpha::kappa(), [o("w^w")]).is_ok());
}

#[test]
fn bijection_examples() {
    let w = Alpha::omega();
    assert_eq!(b_encode(&w, &o("5")).unwrap(), 5u32.into());
    assert_eq!(b_decode(&w, &5u32.into()).unwrap(), o("5"));
    let w2 = alpha("w*2");
    assert_ne!(b_encode(&w2, &o("w")).unwrap(), b_encode(&w2, &o("0")).unwrap());
    assert!(b_encode(&w2, &o("w*2")).is_err());
    assert_eq!(b_encode(&Alpha::kappa(), &o("3")), Err(Error::Uncountable));
    assert_eq!(script_n(&w, &pt(&[0]), &pt(&[1])).unwrap(), 0u32.into());
    assert_eq!(script_n(&w, &pt(&[2]), &pt(&[5])).unwrap(), 2u32.into());
    let split = script_n(&w2, &sym(&w2, &["w"]), &sym(&w2, &[])).unwrap();
    assert_eq!(split, b_encode(&w2, &o("w")).unwrap());
}

#[test]
fn bijection_round_trips() {
    for length in ["w", "w+3", "w*2", "w^2", "w^2+w", "w^3*2+w+1", "w^w", "w^(w+1)+w^2"] {
        let a = alpha(length);
        let mut seen = HashSet::new();
        for n in 0u32..10_000 {
            let n = BigUint::from(n);
            let x = b_decode(&a, &n).unwrap();
            assert!(x < a.length, "{length}: {n} decodes to {x}");
            assert_eq!(b_encode(&a, &x).unwrap(), n, "{length}: {x}");
            assert!(seen.insert(x));
        }
    }
}

#[test]
fn bijection_of_two_omegas_is_onto_initial_segments() {
    let a = alpha("w*2");
    let hits: HashSet<Ordinal> = (0u32..200).map(|n| b_decode(&a, &n.into()).unwrap()).collect();
    for k in 0u64..100 {
        assert!(hits.contains(&Ordinal::nat(k)));
        assert!(hits.contains(&o("w").add(&Ordinal::nat(k))));
    }
}

fn small_below_length() -> impl Strategy<Value = Ordinal> {
    prop::collection::btree_map(0u64..3, 0u64..20, 0..4).prop_map(|m| {
        m.into_iter().rev().fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::term(Ordinal::nat(e), c)))
    })
}

proptest! {
    #[test]
    fn encode_then_decode_is_the_identity(x in small_below_length()) {
        for length in ["w^3", "w^w", "w^3+w^2*4"] {
            let a = alpha(length);
            let n = b_encode(&a, &x).unwrap();
            prop_assert_eq!(b_decode(&a, &n).unwrap(), x.clone());
        }
    }

    #[test]
    fn lex_order_is_total(a in prop::collection::btree_set(0u64..8, 0..5),
                          b in prop::collection::btree_set(0u64..8, 0..5),
                          c in prop::collection::btree_set(0u64..8, 0..5)) {
        let to_pt = |s: &std::collections::BTreeSet<u64>| pt(&s.iter().copied().collect::<Vec<_>>());
        let (x, y, z) = (to_pt(&a), to_pt(&b), to_pt(&c));
        prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
        prop_assert_eq!(x.cmp(&y) == Ordering::Equal, a == b);
        if x <= y && y <= z {
            prop_assert!(x <= z);
        }
    }
}
