//! The acceptance suite as library code, so that the CLI `demo` verb and
//! the integration tests run the same checks.
//!
//! Each criterion returns a one-line summary on success and the first
//! counterexample on failure.

use std::fmt;

use num_bigint::BigUint;

use crate::canonise::{
    canonise_family, indecomposable_pieces, n_map, n_prime, n_realize, Component, SymbolicOrdinalSet,
};
use crate::cantorlex::{b_decode, b_encode, delta, Alpha, Point};
use crate::classifier::{beta, classify, same_leading_component, xi, Witness};
use crate::colourings::{
    colour_c, colour_mutual, colour_zeta, colour_zeta_cc, lift_selector, mutual_selectors, prepare_two_classes,
    prepare_zeta_classes, zeta_cc_case, zeta_witness, ColouringName, KappaSetColouring, Subject, ZetaCase,
};
use crate::corpus::CorpusEntry;
use crate::families::{Block, Body, IndexSchedule, Kind, RepFamily, SymbolicClass};
use crate::ordertype::{normalize, parse_type, FiniteSumForm, Side};
use crate::ordinal::{parse_ordinal, Ordinal};

type Outcome = std::result::Result<String, String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {verdict} {}: {}", self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 10] = [
    "classifier golden table",
    "beta/xi oracle",
    "min-law",
    "canonisation",
    "flip soundness",
    "coherence laws",
    "homogeneity transfer",
    "B bijection",
    "CNF algebra",
    "leading-component equivalence",
];

/// Runs criterion `id` (1 to 10) against `corpus`.
pub fn criterion(id: u8, corpus: &[CorpusEntry]) -> CriterionReport {
    let outcome = match id {
        1 => classifier_table(),
        2 => beta_xi_oracle(),
        3 => min_law(),
        4 => canonisation(corpus),
        5 => flip_soundness(corpus),
        6 => coherence(corpus),
        7 => homogeneity_transfer(corpus),
        8 => bijection(),
        9 => cnf_algebra(),
        10 => leading_components(),
        _ => Err(format!("no criterion {id}")),
    };
    let title = TITLES.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown");
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport { id, title, passed, detail }
}

pub fn run(corpus: &[CorpusEntry]) -> Vec<CriterionReport> {
    (1..=10).map(|id| criterion(id, corpus)).collect()
}

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).expect("fixed ordinal literal")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn form(t: &str) -> std::result::Result<FiniteSumForm, String> {
    let e = parse_type(t).map_err(|e| format!("{t}: {e}"))?;
    normalize(&e).form.ok_or_else(|| format!("{t}: not scattered"))
}

// Expected class, ω+k data for class 1, (ξ, β) for class 2, witness for class 3.
type Golden = (&'static str, u8, Option<(u32, Side)>, Option<(&'static str, &'static str)>, Witness);

const GOLDEN: [Golden; 12] = [
    ("w", 1, Some((0, Side::Left)), None, Witness::None),
    ("w+3", 1, Some((3, Side::Left)), None, Witness::None),
    ("3+w~", 1, Some((3, Side::Right)), None, Witness::None),
    ("zeta", 2, None, Some(("w*2", "w*2")), Witness::None),
    ("w*2", 2, None, Some(("w*2", "w*2")), Witness::None),
    ("w^2", 2, None, Some(("w^2", "w^2")), Witness::None),
    ("w~+w^2", 2, None, Some(("w^2", "w^2+w")), Witness::None),
    ("w+w~", 2, None, Some(("w*2", "w*2")), Witness::None),
    ("w^2+w~", 2, None, Some(("w^2+w", "w^2+w")), Witness::None),
    ("w*w~", 3, None, None, Witness::OmegaOmegaStar),
    ("zeta*w", 3, None, None, Witness::OmegaStarOmega),
    ("eta", 3, None, None, Witness::Eta),
];

fn classifier_table() -> Outcome {
    for (t, class, ks, xb, witness) in GOLDEN {
        let r = classify(&parse_type(t).map_err(|e| e.to_string())?).map_err(|e| format!("{t}: {e}"))?;
        let got = (r.class_index, r.k_and_side.clone(), r.xi.clone().zip(r.beta.clone()), r.witness);
        let want = (class, ks.map(|(k, s)| (BigUint::from(k), s)), xb.map(|(x, b)| (o(x), o(b))), witness);
        ensure(got == want, || format!("{t}: got {got:?}, want {want:?}"))?;
        ensure(!r.equivalence.is_empty(), || format!("{t}: no certificate"))?;
    }
    Ok(format!("{} inputs", GOLDEN.len()))
}

const CLASS_TWO: [&str; 12] = [
    "zeta",
    "w*2",
    "w^2",
    "w~ + w^2",
    "w + w~",
    "w^2 + w~",
    "w + w~ + w^2",
    "(w^2 + w)~ + w",
    "w^3 + w~*2 + w",
    "w~*3 + w^2",
    "w^w + w~ + 5",
    "w + w^2 + w~ + w^3",
];

fn permutation_max(parts: &mut [Ordinal], k: usize, best: &mut Ordinal) {
    if k == parts.len() {
        let sum = parts.iter().fold(Ordinal::zero(), |acc, p| acc.add(p));
        if sum > *best {
            *best = sum;
        }
        return;
    }
    for i in k..parts.len() {
        parts.swap(k, i);
        permutation_max(parts, k + 1, best);
        parts.swap(k, i);
    }
}

fn beta_xi_oracle() -> Outcome {
    for t in CLASS_TWO {
        let f = form(t)?;
        let mut parts = Vec::new();
        for e in f.entries() {
            parts.extend(e.value.indecomposable_parts().map_err(|e| e.to_string())?);
        }
        ensure(parts.len() <= 6, || format!("{t}: {} parts", parts.len()))?;
        let mut best = Ordinal::zero();
        permutation_max(&mut parts, 0, &mut best);
        let (x, b) = (xi(&f).map_err(|e| e.to_string())?, beta(&f).map_err(|e| e.to_string())?);
        ensure(b == best, || format!("{t}: beta {b}, brute force {best}"))?;
        ensure(x <= b, || format!("{t}: xi {x} above beta {b}"))?;
    }
    Ok(format!("{} forms", CLASS_TWO.len()))
}

fn subset_points(alpha: &Alpha, pool: &[Ordinal]) -> Vec<Point> {
    let mut pts: Vec<Point> = (0u32..1 << pool.len())
        .map(|mask| {
            let support = pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone());
            Point::new(alpha, support).expect("pool inside the ambient")
        })
        .collect();
    pts.sort();
    pts
}

fn check_min_law(x: &Point, y: &Point, z: &Point) -> std::result::Result<(), String> {
    let d = |a: &Point, b: &Point| delta(a, b).map_err(|e| e.to_string());
    let (xz, xy, yz) = (d(x, z)?, d(x, y)?, d(y, z)?);
    ensure(xz == xy.clone().min(yz.clone()), || format!("{x} {y} {z}: {xz} vs min({xy}, {yz})"))
}

fn min_law() -> Outcome {
    let finite: Vec<Ordinal> = (0..6u32).map(Ordinal::nat).collect();
    let pts = subset_points(&Alpha::omega(), &finite);
    let mut count = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                check_min_law(&pts[i], &pts[j], &pts[k])?;
                count += 1;
            }
        }
    }
    let alpha = Alpha::new(o("w^2")).map_err(|e| e.to_string())?;
    let pool: Vec<Ordinal> = ["0", "1", "2", "w", "w+1", "w*2", "w*2+3", "w*5"].into_iter().map(o).collect();
    let pts = subset_points(&alpha, &pool);
    for k in 0..20 {
        check_min_law(&pts[7 * k], &pts[7 * k + 50], &pts[7 * k + 120])?;
    }
    Ok(format!("{count} finite triples, 20 transfinite triples"))
}

fn families(corpus: &[CorpusEntry]) -> impl Iterator<Item = (&str, &RepFamily)> {
    corpus.iter().filter_map(|e| e.subject.family().map(|a| (e.name.as_str(), a)))
}

/// Points sampled per block when checking that one family lies in another.
const SAMPLE: usize = 8;

fn canonisation(corpus: &[CorpusEntry]) -> Outcome {
    let mut count = 0;
    for (name, a) in families(corpus) {
        let c = canonise_family(a).map_err(|e| format!("{name}: {e}"))?;
        let again = canonise_family(&c).map_err(|e| format!("{name}: {e}"))?;
        ensure(again == c, || format!("{name}: canonising twice changes the family"))?;
        ensure(c.shape() == a.shape(), || format!("{name}: order type changed"))?;
        ensure(c.sample_within(a, SAMPLE), || format!("{name}: canonised points outside the family"))?;
        let col = colour_c(&c).map_err(|e| format!("{name}: {e}"))?;
        ensure(col.value() == 0, || format!("{name}: C = {col} after canonising"))?;
        count += 1;
    }
    Ok(format!("{count} families"))
}

fn has_block(a: &RepFamily, pred: impl Fn(&Block) -> bool) -> bool {
    a.blocks().iter().any(pred)
}

/// The input a colouring is checked on, or `None` when it does not apply.
fn flip_input(name: ColouringName, s: &Subject, oracle: &KappaSetColouring) -> Option<Subject> {
    let with = |a: RepFamily| Subject::Family(crate::families::FamilyDoc { family: a, checks: Vec::new() });
    let prepared = match (name, s.family()) {
        (ColouringName::Mutual, Some(a)) => with(prepare_two_classes(a).ok()?),
        (ColouringName::ZetaCc, Some(a)) => with(prepare_zeta_classes(a).ok()?),
        _ => s.clone(),
    };
    let colour = name.colour(&prepared, oracle).ok()?;
    let applies = match (name, prepared.family()) {
        (ColouringName::C, Some(a)) => colour.value() == 1 || has_block(a, |b| matches!(b, Block::Tower(_))),
        (ColouringName::Affordable, Some(a)) => has_block(a, |b| matches!(b, Block::Raw(r) if r.kind() != Kind::Zeta)),
        _ => true,
    };
    applies.then_some(prepared)
}

fn sample_dyadic(s: &Subject, depth: usize) -> Vec<Point> {
    match s {
        Subject::Dyadic { copy, .. } => copy.sample(depth),
        Subject::Family(_) => Vec::new(),
    }
}

fn flip_soundness(corpus: &[CorpusEntry]) -> Outcome {
    let oracle = KappaSetColouring::parity();
    let mut per_colouring = Vec::new();
    for name in ColouringName::ALL {
        let mut count = 0;
        for e in corpus {
            let key = format!("colour.{name}");
            if let Some(want) = e.subject.check(&key) {
                let got = name.colour(&e.subject, &oracle).map_err(|err| format!("{}: {name}: {err}", e.name))?;
                ensure(got.to_string() == want, || format!("{}: {key} = {got}, file says {want}", e.name))?;
            }
            let Some(input) = flip_input(name, &e.subject, &oracle) else { continue };
            let before = name.colour(&input, &oracle).map_err(|err| err.to_string())?;
            let out = name.flip(&input, None, &oracle).map_err(|err| format!("{}: {name}: {err}", e.name))?;
            let after = name.colour(&out, &oracle).map_err(|err| format!("{}: {name}: {err}", e.name))?;
            ensure(after == before.other(), || format!("{}: {name} stays {after}", e.name))?;
            match (input.family(), out.family()) {
                (Some(a), Some(b)) => {
                    let same_type = if name == ColouringName::Triple {
                        b.blocks().iter().map(|blk| blk.sample(4).len()).sum::<usize>() == 3
                    } else {
                        b.shape() == a.shape()
                    };
                    ensure(same_type, || format!("{}: {name} flip changes the order type", e.name))?;
                    ensure(b.sample_within(a, SAMPLE), || format!("{}: {name} flip leaves the family", e.name))?;
                }
                _ => {
                    let host = sample_dyadic(&input, 10);
                    let inside = sample_dyadic(&out, 3).iter().all(|p| host.binary_search(p).is_ok());
                    ensure(inside, || format!("{}: {name} flip leaves the copy", e.name))?;
                }
            }
            count += 1;
        }
        ensure(count > 0, || format!("{name}: no applicable corpus entry"))?;
        per_colouring.push(format!("{name} {count}"));
    }
    let n = families(corpus).count();
    ensure(n >= 20, || format!("only {n} families in the corpus"))?;
    Ok(format!("{n} families; flips checked: {}", per_colouring.join(", ")))
}

/// Removes the points with sequence indices `from..=to` from a one-sided body.
fn drop_sequence(alpha: &Alpha, body: &Body, from: usize, to: usize) -> Body {
    if from > to {
        return body.clone();
    }
    let a = body.position(body.sequence_slot(from));
    let b = body.position(body.sequence_slot(to));
    body.without(alpha, a.min(b), a.max(b))
}

fn replace(a: &RepFamily, i: usize, body: Body) -> std::result::Result<RepFamily, String> {
    crate::colourings::replace_body(a, i, body).map_err(|e| e.to_string())
}

fn block_of(a: &RepFamily, body: &Body) -> Option<usize> {
    let first = body.sample(a.ambient(), 1).into_iter().next()?;
    a.blocks().iter().position(|b| b.contains(&first))
}

fn coherence(corpus: &[CorpusEntry]) -> Outcome {
    let (mut pairs, mut zetas) = (0, 0);
    for (name, a) in families(corpus) {
        let fail = |m: String| format!("{name}: {m}");
        if let Ok(p) = prepare_two_classes(a) {
            let alpha = p.ambient();
            let (s0, s1) = mutual_selectors(&p).map_err(|e| fail(e.to_string()))?;
            let (i0, i1) = (block_of(&p, &s0).ok_or("no block")?, block_of(&p, &s1).ok_or("no block")?);
            let (b0, b1) = (p.blocks()[i0].body().cloned().unwrap(), p.blocks()[i1].body().cloned().unwrap());
            ensure(i0 != i1, || fail("selector images share a class".into()))?;
            ensure(p.sample_within(a, SAMPLE), || fail("prepared family leaves the input".into()))?;
            for k0 in 0..=5 {
                for k1 in 0..=5 {
                    let c0 = drop_sequence(alpha, &b0, 1, k0);
                    let c1 = drop_sequence(alpha, &b1, 1, k1);
                    let q = replace(&replace(&p, i0, c0)?, i1, c1)?;
                    colour_mutual(&q).map_err(|e| fail(format!("k=({k0},{k1}) leaves the domain: {e}")))?;
                    let (r0, r1) = mutual_selectors(&q).map_err(|e| fail(e.to_string()))?;
                    let want0 = if k0 == 0 { s0.clone() } else { drop_sequence(alpha, &s0, 0, k0 - 1) };
                    let want1 = if k1 == 0 { s1.clone() } else { drop_sequence(alpha, &s1, 0, k1 - 1) };
                    let same = |x: &Body, y: &Body| x.sample(alpha, SAMPLE) == y.sample(alpha, SAMPLE);
                    ensure(same(&r0, &want0) && same(&r1, &want1), || fail(format!("k=({k0},{k1}): selectors moved")))?;
                    pairs += 1;
                }
            }
        }
        if let Ok(ZetaCase::Unique(i)) = zeta_cc_case(a) {
            let alpha = a.ambient();
            if !alpha.countable {
                continue;
            }
            let sel = |f: &RepFamily| match zeta_cc_case(f)? {
                ZetaCase::Unique(j) => f.with_blocks(vec![f.blocks()[j].clone()]),
                ZetaCase::Pair(..) => Err(crate::Error::Precondition("two classes".into())),
            };
            let body = a.blocks()[i].body().cloned().ok_or("no body")?;
            let lifted = lift_selector(sel, colour_zeta)(a).map_err(|e| fail(e.to_string()))?;
            ensure(Ok(lifted) == colour_zeta_cc(a), || fail("lifted selector disagrees with zeta-cc".into()))?;
            let x = zeta_witness(alpha, &body).map_err(|e| fail(e.to_string()))?.x;
            let p = body.position(x);
            for k in 0..=5i64 {
                let b = body.without(alpha, p + 2, p + 1 + k);
                let q = replace(a, i, b.clone())?;
                ensure(zeta_cc_case(&q).ok() == Some(ZetaCase::Unique(i)), || fail(format!("k={k}: case changed")))?;
                ensure(q.blocks()[i].body() == Some(&b), || fail(format!("k={k}: selector moved")))?;
                zetas += 1;
            }
        }
    }
    ensure(pairs > 0 && zetas > 0, || "no corpus family exercises the selectors".into())?;
    Ok(format!("{pairs} two-class replacements, {zetas} zeta replacements"))
}

fn selections() -> Vec<(&'static str, IndexSchedule)> {
    let affine = |s, t| IndexSchedule::affine(s, t).expect("valid selection");
    vec![
        ("tail 1", IndexSchedule::tail(1)),
        ("tail 4", IndexSchedule::tail(4)),
        ("even", affine(0, 2)),
        ("odd", affine(1, 2)),
        ("affine 2+3n", affine(2, 3)),
    ]
}

fn oracles() -> Vec<KappaSetColouring> {
    ["const0", "const1", "parity"].into_iter().filter_map(KappaSetColouring::by_name).collect()
}

fn one_sided_schedule(c: &SymbolicClass) -> Option<crate::families::LevelSchedule> {
    if !c.extras().is_empty() {
        return None;
    }
    match c.kind() {
        Kind::Asc => c.asc_part().map(|p| p.sched().clone()),
        Kind::Desc => c.desc_part().map(|p| p.sched().clone()),
        Kind::Zeta => None,
    }
}

fn homogeneity_transfer(corpus: &[CorpusEntry]) -> Outcome {
    let (mut classes, mut two_piece) = (0, 0);
    for (name, a) in families(corpus) {
        let fail = |m: String| format!("{name}: {m}");
        for b in a.blocks() {
            let Block::Class(c) = b else { continue };
            let Some(sched) = one_sided_schedule(c) else { continue };
            for (label, sel) in selections() {
                let realised = n_realize(c, &sel).map_err(|e| fail(format!("{label}: {e}")))?;
                let x = SymbolicOrdinalSet::schedule(sched.compose(&sel));
                let got = n_map(&realised).map_err(|e| fail(e.to_string()))?;
                ensure(got.same_set(&x), || fail(format!("{label}: N gives {got}, want {x}")))?;
                for f in oracles() {
                    let g = crate::colourings::kappa_g(&f, &realised).map_err(|e| fail(e.to_string()))?;
                    ensure(g == f.apply(&x), || fail(format!("{label}: {} disagrees", f.name())))?;
                }
            }
            classes += 1;
        }
        let bare: Option<Vec<(SymbolicClass, crate::families::LevelSchedule)>> = a
            .blocks()
            .iter()
            .map(|b| match b {
                Block::Class(c) => one_sided_schedule(c).map(|s| (c.clone(), s)),
                _ => None,
            })
            .collect();
        let Some(bare) = bare else { continue };
        if bare.len() != 2 || indecomposable_pieces(a).map(|p| p.len()) != Ok(2) {
            continue;
        }
        let offset = bare[0].1.sup();
        for (l0, s0) in selections() {
            for (l1, s1) in selections() {
                let blocks = vec![
                    Block::Class(n_realize(&bare[0].0, &s0).map_err(|e| fail(e.to_string()))?),
                    Block::Class(n_realize(&bare[1].0, &s1).map_err(|e| fail(e.to_string()))?),
                ];
                let h = a.with_blocks(blocks).map_err(|e| fail(e.to_string()))?;
                let want = SymbolicOrdinalSet::new(vec![
                    Component::Shifted { offset: Ordinal::zero(), sched: bare[0].1.compose(&s0) },
                    Component::Shifted { offset: offset.clone(), sched: bare[1].1.compose(&s1) },
                ])
                .map_err(|e| fail(e.to_string()))?;
                let got = n_prime(&h).map_err(|e| fail(e.to_string()))?;
                ensure(got.same_set(&want), || fail(format!("{l0}/{l1}: N' gives {got}, want {want}")))?;
                for f in oracles() {
                    let col = crate::colourings::colour_affordable(&f, &h).map_err(|e| fail(e.to_string()))?;
                    ensure(col == f.apply(&want), || fail(format!("{l0}/{l1}: {} disagrees", f.name())))?;
                }
            }
        }
        two_piece += 1;
    }
    ensure(classes > 0 && two_piece > 0, || "no corpus class to realise selections in".into())?;
    Ok(format!("{classes} classes x {} selections, {two_piece} two-piece families", selections().len()))
}

/// Naturals round-tripped through the coding of each ambient.
const BIJECTION_RANGE: u32 = 10_000;

fn bijection() -> Outcome {
    for length in ["w", "w*2", "w^2", "w^2+w"] {
        let alpha = Alpha::new(o(length)).map_err(|e| e.to_string())?;
        for n in 0..BIJECTION_RANGE {
            let n = BigUint::from(n);
            let x = b_decode(&alpha, &n).map_err(|e| format!("{length}: {n}: {e}"))?;
            ensure(x < alpha.length, || format!("{length}: {n} decodes to {x}, outside"))?;
            let back = b_encode(&alpha, &x).map_err(|e| format!("{length}: {x}: {e}"))?;
            ensure(back == n, || format!("{length}: {n} -> {x} -> {back}"))?;
        }
    }
    Ok(format!("{BIJECTION_RANGE} naturals for 4 ambients"))
}

/// Ordinals below `ω^ω` the algebra instances are drawn from.
fn algebra_pool() -> Vec<Ordinal> {
    let mut pool = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            for c in 0..3u32 {
                pool.push(
                    Ordinal::term(Ordinal::nat(2u32), a).add(&Ordinal::omega().mul_nat(b.into())).add(&Ordinal::nat(c)),
                );
            }
        }
    }
    for s in ["w^3", "w^3*2+w+1", "w^5+w^2*3", "w^4*2+7", "w^7+w^6+w^5", "w^3+w^3", "w*9+4", "w^6*3+w^2+w*2"] {
        pool.push(o(s));
    }
    pool
}

fn interleaving_max(x: &[Ordinal], y: &[Ordinal]) -> Ordinal {
    fn go(x: &[Ordinal], y: &[Ordinal], acc: &Ordinal, best: &mut Ordinal) {
        match (x.split_first(), y.split_first()) {
            (None, None) => {
                if acc > best {
                    *best = acc.clone();
                }
            }
            (sx, sy) => {
                if let Some((h, rest)) = sx {
                    go(rest, y, &acc.add(h), best);
                }
                if let Some((h, rest)) = sy {
                    go(x, rest, &acc.add(h), best);
                }
            }
        }
    }
    let mut best = Ordinal::zero();
    go(x, y, &Ordinal::zero(), &mut best);
    best
}

/// Instances of the algebra laws checked.
const ALGEBRA_INSTANCES: usize = 200;

fn cnf_algebra() -> Outcome {
    let pool = algebra_pool();
    let n = pool.len();
    for i in 0..ALGEBRA_INSTANCES {
        let (a, b, c) = (&pool[i % n], &pool[(i * 7 + 3) % n], &pool[(i * 13 + 5) % n]);
        let at = || format!("instance {i}: a={a}, b={b}, c={c}");
        ensure(a.add(b).add(c) == a.add(&b.add(c)), || format!("{}: + not associative", at()))?;
        ensure(a.natural_sum(b) == b.natural_sum(a), || format!("{}: ⊕ not commutative", at()))?;
        ensure(a.natural_sum(b).natural_sum(c) == a.natural_sum(&b.natural_sum(c)), || {
            format!("{}: ⊕ not associative", at())
        })?;
        ensure(a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c)), || format!("{}: left distributivity", at()))?;
        let parts = |x: &Ordinal| {
            if x.is_zero() {
                Ok(Vec::new())
            } else {
                x.indecomposable_parts().map_err(|e| e.to_string())
            }
        };
        let best = interleaving_max(&parts(a)?, &parts(b)?);
        ensure(a.natural_sum(b) == best, || format!("{}: ⊕ is not the best interleaving {best}", at()))?;
    }
    Ok(format!("{ALGEBRA_INSTANCES} instances over {n} ordinals"))
}

// Each remainder after the leading term is infinite: a finite reversed
// prefix would be absorbed into the leading copy.
const GAMMAS: [&str; 10] = [
    "w^2+w",
    "w^2+w*2+1",
    "w^2*3+w",
    "w^2*2+w*3+1",
    "w^3+w^2",
    "w^4+w^3*2",
    "w^w+w",
    "w^w+w^2+4",
    "w^(w+1)+w^w",
    "w^3*4+w",
];

fn leading_components() -> Outcome {
    let mut reports = Vec::new();
    for g in GAMMAS {
        let gamma = o(g);
        let (e, k) = gamma.leading_term().map_err(|e| e.to_string())?;
        let lead = Ordinal::term(e, k);
        let tail = gamma.left_sub(&lead).expect("leading term is a prefix");
        let tau = if tail.is_zero() { format!("{lead}") } else { format!("({tail})~ + {lead}") };
        let r = classify(&parse_type(&tau).map_err(|e| format!("{tau}: {e}"))?).map_err(|e| e.to_string())?;
        ensure(r.beta.as_ref() == Some(&gamma), || format!("{tau}: beta {:?}, want {gamma}", r.beta))?;
        ensure(r.xi.as_ref() == Some(&lead), || format!("{tau}: xi {:?}, want {lead}", r.xi))?;
        reports.push((gamma, lead));
    }
    let mut agree = 0;
    for (g, lg) in &reports {
        for (h, lh) in &reports {
            let same = same_leading_component(g, h).map_err(|e| e.to_string())?;
            ensure(same == (lg == lh), || format!("{g} vs {h}: same_leading_component = {same}"))?;
            agree += usize::from(same);
        }
    }
    Ok(format!("{} ordinals, {agree} agreeing ordered pairs", GAMMAS.len()))
}
