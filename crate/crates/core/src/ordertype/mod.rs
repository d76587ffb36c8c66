//! Order-type expressions and their normal form as finite sums of ordinals and
//! reversed ordinals.

mod text;

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::ordinal::Ordinal;

pub use text::parse_type;

/// An order-type expression. `Prod(a, b)` is `b` copies of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeExpr {
    Fin(BigUint),
    Ord(Ordinal),
    Eta,
    Rev(Box<TypeExpr>),
    Sum(Vec<TypeExpr>),
    Prod(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    /// `Fin` for finite ordinals, `Ord` otherwise.
    pub fn ordinal(o: Ordinal) -> Self {
        match o.as_nat() {
            Some(n) => TypeExpr::Fin(n),
            None => TypeExpr::Ord(o),
        }
    }

    pub fn fin(n: u64) -> Self {
        TypeExpr::Fin(n.into())
    }

    pub fn omega() -> Self {
        TypeExpr::Ord(Ordinal::omega())
    }

    pub fn zeta() -> Self {
        TypeExpr::Sum(vec![TypeExpr::rev(TypeExpr::omega()), TypeExpr::omega()])
    }

    pub fn rev(e: TypeExpr) -> Self {
        TypeExpr::Rev(Box::new(e))
    }

    pub fn prod(a: TypeExpr, b: TypeExpr) -> Self {
        TypeExpr::Prod(Box::new(a), Box::new(b))
    }

    /// A sum, collapsing the degenerate lengths.
    pub fn sum(mut parts: Vec<TypeExpr>) -> Self {
        match parts.len() {
            0 => TypeExpr::fin(0),
            1 => parts.pop().unwrap(),
            _ => TypeExpr::Sum(parts),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Fwd,
    Rev,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Fwd => Direction::Rev,
            Direction::Rev => Direction::Fwd,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub dir: Direction,
    pub value: Ordinal,
}

impl Entry {
    pub fn fwd(value: Ordinal) -> Self {
        Entry { dir: Direction::Fwd, value }
    }

    pub fn rev(value: Ordinal) -> Self {
        Entry { dir: Direction::Rev, value }
    }
}

/// A scattered type written as `β₀ + β₁* + …` in canonical form.
///
/// Neighbouring entries alternate direction, finite amounts are folded into a
/// neighbour, and a reversed entry that follows a forward one has no finite
/// part (it is moved to the forward entry). An empty entry list is the empty
/// type; a lone finite entry is a finite type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiniteSumForm {
    entries: Vec<Entry>,
}

impl FiniteSumForm {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Canonicalises an arbitrary sequence of entries read left to right.
    pub fn from_entries(raw: impl IntoIterator<Item = Entry>) -> Self {
        let mut out: Vec<Entry> = Vec::new();
        let mut pending = BigUint::zero();
        for entry in raw {
            if entry.value.is_zero() {
                continue;
            }
            if let Some(k) = entry.value.as_nat() {
                match out.last_mut() {
                    Some(last) if last.dir == Direction::Fwd => {
                        last.value = last.value.add(&Ordinal::nat(k));
                    }
                    // k after an infinite reversed entry: (k + γ)* = γ*
                    Some(_) => {}
                    None => pending += k,
                }
                continue;
            }
            let lead_in = std::mem::take(&mut pending);
            match entry.dir {
                Direction::Fwd => match out.last_mut() {
                    Some(last) if last.dir == Direction::Fwd => {
                        last.value = last.value.add(&entry.value);
                    }
                    _ => out.push(entry),
                },
                Direction::Rev => {
                    let mut value = entry.value.add(&Ordinal::nat(lead_in));
                    match out.last_mut() {
                        Some(last) if last.dir == Direction::Rev => {
                            last.value = value.add(&last.value);
                        }
                        Some(last) => {
                            let k = value.finite_part();
                            last.value = last.value.add(&Ordinal::nat(k));
                            value = value.without_finite_part();
                            out.push(Entry::rev(value));
                        }
                        None => out.push(Entry::rev(value)),
                    }
                }
            }
        }
        if out.is_empty() && !pending.is_zero() {
            out.push(Entry::fwd(Ordinal::nat(pending)));
        }
        FiniteSumForm { entries: out }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The number of points when the type is finite.
    pub fn finite_size(&self) -> Option<BigUint> {
        match self.entries.as_slice() {
            [] => Some(BigUint::zero()),
            [e] => e.value.as_nat(),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_size().is_some()
    }

    pub fn reversed(&self) -> Self {
        FiniteSumForm::from_entries(
            self.entries.iter().rev().map(|e| Entry { dir: e.dir.flip(), value: e.value.clone() }),
        )
    }

    pub fn concat(&self, rhs: &FiniteSumForm) -> Self {
        FiniteSumForm::from_entries(self.entries.iter().chain(&rhs.entries).cloned())
    }

    pub fn contains_omega(&self) -> bool {
        self.entries.iter().any(|e| e.dir == Direction::Fwd && !e.value.is_finite())
    }

    pub fn contains_omega_star(&self) -> bool {
        self.entries.iter().any(|e| e.dir == Direction::Rev && !e.value.is_finite())
    }

    /// Reads the form back as an expression.
    pub fn to_expr(&self) -> TypeExpr {
        TypeExpr::sum(
            self.entries
                .iter()
                .map(|e| match e.dir {
                    Direction::Fwd => TypeExpr::ordinal(e.value.clone()),
                    Direction::Rev => TypeExpr::rev(TypeExpr::ordinal(e.value.clone())),
                })
                .collect(),
        )
    }

    /// Maximum over entries of the leading exponent; finite entries count as 0.
    pub fn hausdorff_rank(&self) -> Ordinal {
        self.entries.iter().filter_map(|e| e.value.leading_exponent().cloned()).max().unwrap_or_default()
    }

    /// `(k, left)` for `ω + k`, `(k, right)` for `k + ω*`.
    pub fn match_omega_plus_k(&self) -> Option<(BigUint, Side)> {
        let [entry] = self.entries.as_slice() else {
            return None;
        };
        if entry.value.without_finite_part() != Ordinal::omega() {
            return None;
        }
        let side = match entry.dir {
            Direction::Fwd => Side::Left,
            Direction::Rev => Side::Right,
        };
        Some((entry.value.finite_part(), side))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Eta,
    OmegaOmegaStar,
    OmegaStarOmega,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Eta => "eta",
            Pattern::OmegaOmegaStar => "omega_omegastar",
            Pattern::OmegaStarOmega => "omegastar_omega",
        })
    }
}

/// Result of normalising an expression: either a finite-sum form or one of the
/// three non-form flags, plus the rule trace that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalReport {
    pub embeds_eta: bool,
    pub embeds_omega_omegastar: bool,
    pub embeds_omegastar_omega: bool,
    pub form: Option<FiniteSumForm>,
    pub witness: Vec<String>,
}

impl NormalReport {
    fn with_form(form: FiniteSumForm, witness: Vec<String>) -> Self {
        NormalReport {
            embeds_eta: false,
            embeds_omega_omegastar: false,
            embeds_omegastar_omega: false,
            form: Some(form),
            witness,
        }
    }

    fn flagged(eta: bool, oo: bool, oso: bool, witness: Vec<String>) -> Self {
        debug_assert!(eta || oo || oso);
        NormalReport { embeds_eta: eta, embeds_omega_omegastar: oo, embeds_omegastar_omega: oso, form: None, witness }
    }

    pub fn is_flagged(&self) -> bool {
        self.embeds_eta || self.embeds_omega_omegastar || self.embeds_omegastar_omega
    }

    /// Any flag forces both an ω and an ω* subset.
    fn contains_omega(&self) -> bool {
        self.form.as_ref().is_none_or(FiniteSumForm::contains_omega)
    }

    fn contains_omega_star(&self) -> bool {
        self.form.as_ref().is_none_or(FiniteSumForm::contains_omega_star)
    }

    fn is_empty_type(&self) -> bool {
        self.form.as_ref().is_some_and(FiniteSumForm::is_empty)
    }

    pub fn embeds(&self, pattern: Pattern) -> bool {
        match pattern {
            Pattern::Eta => self.embeds_eta,
            Pattern::OmegaOmegaStar => self.embeds_omega_omegastar,
            Pattern::OmegaStarOmega => self.embeds_omegastar_omega,
        }
    }
}

pub fn normalize(e: &TypeExpr) -> NormalReport {
    match e {
        TypeExpr::Fin(n) => {
            NormalReport::with_form(FiniteSumForm::from_entries([Entry::fwd(Ordinal::nat(n.clone()))]), vec![])
        }
        TypeExpr::Ord(o) => NormalReport::with_form(FiniteSumForm::from_entries([Entry::fwd(o.clone())]), vec![]),
        TypeExpr::Eta => NormalReport::flagged(
            true,
            true,
            true,
            vec!["eta: dense without endpoints, every countable order embeds".into()],
        ),
        TypeExpr::Rev(inner) => {
            let r = normalize(inner);
            match r.form {
                Some(f) => NormalReport::with_form(f.reversed(), r.witness),
                None => {
                    let mut witness = r.witness;
                    if r.embeds_omega_omegastar != r.embeds_omegastar_omega {
                        witness.push("reversal: (w*w~)~ = w~*w swaps the product flags".into());
                    }
                    NormalReport::flagged(r.embeds_eta, r.embeds_omegastar_omega, r.embeds_omega_omegastar, witness)
                }
            }
        }
        TypeExpr::Sum(parts) => {
            let reports: Vec<NormalReport> = parts.iter().map(normalize).collect();
            let mut witness: Vec<String> = reports.iter().flat_map(|r| r.witness.iter().cloned()).collect();
            let eta = reports.iter().any(|r| r.embeds_eta);
            let oo = reports.iter().any(|r| r.embeds_omega_omegastar);
            let oso = reports.iter().any(|r| r.embeds_omegastar_omega);
            if eta || oo || oso {
                witness.push("sum: a summand carries the flag".into());
                return NormalReport::flagged(eta, oo, oso, witness);
            }
            let form = reports.iter().fold(FiniteSumForm::empty(), |acc, r| acc.concat(r.form.as_ref().unwrap()));
            NormalReport::with_form(form, witness)
        }
        TypeExpr::Prod(a, b) => product(&normalize(a), &normalize(b)),
    }
}

fn product(left: &NormalReport, right: &NormalReport) -> NormalReport {
    let mut witness: Vec<String> = left.witness.iter().chain(&right.witness).cloned().collect();
    if left.is_empty_type() || right.is_empty_type() {
        witness.push("product: an empty factor gives the empty type".into());
        return NormalReport::with_form(FiniteSumForm::empty(), witness);
    }
    let eta = left.embeds_eta || right.embeds_eta;
    if eta {
        witness.push("product: an eta factor with a nonempty cofactor embeds eta".into());
    }
    let mut oo = left.embeds_omega_omegastar || right.embeds_omega_omegastar;
    let mut oso = left.embeds_omegastar_omega || right.embeds_omegastar_omega;
    if left.is_flagged() || right.is_flagged() {
        witness.push("product: each factor embeds in the product, so flags propagate".into());
    }
    if left.contains_omega() && right.contains_omega_star() && !oo {
        oo = true;
        witness.push("product: left factor contains w and right factor contains w~, so w*w~ embeds".into());
    }
    if left.contains_omega_star() && right.contains_omega() && !oso {
        oso = true;
        witness.push("product: left factor contains w~ and right factor contains w, so w~*w embeds".into());
    }
    if eta || oo || oso {
        return NormalReport::flagged(eta, oo, oso, witness);
    }
    let (lf, rf) = (left.form.as_ref().unwrap(), right.form.as_ref().unwrap());
    let form = if let Some(k) = rf.finite_size() {
        witness.push(format!("product: {k} copies of the left factor"));
        let mut acc = FiniteSumForm::empty();
        let mut i = BigUint::zero();
        while i < k {
            acc = acc.concat(lf);
            i += 1u32;
        }
        acc
    } else if let Some(k) = lf.finite_size() {
        witness.push(format!("product: each point of the right factor becomes {k} points"));
        let k = Ordinal::nat(k);
        FiniteSumForm::from_entries(rf.entries().iter().map(|e| Entry { dir: e.dir, value: k.mul(&e.value) }))
    } else if !lf.contains_omega_star() {
        witness.push("product: ordinal times ordinal".into());
        let (a, b) = (single_value(lf), single_value(rf));
        FiniteSumForm::from_entries([Entry::fwd(a.mul(&b))])
    } else {
        witness.push("product: reversed ordinals multiply as (a*b)~".into());
        let (a, b) = (single_value(lf), single_value(rf));
        FiniteSumForm::from_entries([Entry::rev(a.mul(&b))])
    };
    NormalReport::with_form(form, witness)
}

/// Infinite forms without the product flags on both sides reduce to one entry.
fn single_value(f: &FiniteSumForm) -> Ordinal {
    debug_assert_eq!(f.entries().len(), 1, "mixed factor reached the unflagged product branch");
    f.entries()[0].value.clone()
}

pub fn embeds_special(pattern: Pattern, e: &TypeExpr) -> bool {
    normalize(e).embeds(pattern)
}

pub fn hausdorff_rank(f: &FiniteSumForm) -> Ordinal {
    f.hausdorff_rank()
}

pub fn match_omega_plus_k(f: &FiniteSumForm) -> Option<(BigUint, Side)> {
    f.match_omega_plus_k()
}
