//! Three-way classification of countable scattered-or-not order types for the
//! partition relation `⟨^α2, <_lex⟩ → (τ)^τ`, together with the ordinal
//! invariants that govern the middle case.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ordertype::{normalize, FiniteSumForm, Pattern, Side, TypeExpr};
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Eta,
    OmegaOmegaStar,
    OmegaStarOmega,
    None,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Eta => Pattern::Eta.fmt(f),
            Witness::OmegaOmegaStar => Pattern::OmegaOmegaStar.fmt(f),
            Witness::OmegaStarOmega => Pattern::OmegaStarOmega.fmt(f),
            Witness::None => f.write_str("none"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrichotomyReport {
    pub class_index: u8,
    pub form: Option<FiniteSumForm>,
    pub k_and_side: Option<(BigUint, Side)>,
    pub xi: Option<Ordinal>,
    pub beta: Option<Ordinal>,
    pub witness: Witness,
    pub equivalence: Vec<String>,
}

/// Ordinal sum of the entry values, read left to right.
pub fn xi(f: &FiniteSumForm) -> Result<Ordinal> {
    require_infinite(f)?;
    Ok(f.entries().iter().fold(Ordinal::zero(), |acc, e| acc.add(&e.value)))
}

/// Largest ordinal obtainable by summing the normal-form pieces of the entries
/// in some order: sort the pieces by exponent, largest first.
pub fn beta(f: &FiniteSumForm) -> Result<Ordinal> {
    require_infinite(f)?;
    let mut parts = Vec::new();
    for e in f.entries() {
        parts.extend(e.value.indecomposable_parts()?);
    }
    parts.sort_by(|a, b| b.leading_exponent().cmp(&a.leading_exponent()));
    Ok(parts.iter().fold(Ordinal::zero(), |acc, p| acc.add(p)))
}

fn require_infinite(f: &FiniteSumForm) -> Result<()> {
    if f.is_finite() {
        Err(Error::FiniteType)
    } else {
        Ok(())
    }
}

pub fn classify(e: &TypeExpr) -> Result<TrichotomyReport> {
    let report = normalize(e);
    let witness = if report.embeds_eta {
        Witness::Eta
    } else if report.embeds_omega_omegastar {
        Witness::OmegaOmegaStar
    } else if report.embeds_omegastar_omega {
        Witness::OmegaStarOmega
    } else {
        Witness::None
    };
    if witness != Witness::None {
        let reason = match witness {
            Witness::Eta => "τ is not scattered, so every countable order, in particular τ + τ, embeds in τ",
            Witness::OmegaOmegaStar => "ωω* embeds in τ",
            _ => "ω*ω embeds in τ",
        };
        return Ok(TrichotomyReport {
            class_index: 3,
            form: None,
            k_and_side: None,
            xi: None,
            beta: None,
            witness,
            equivalence: vec!["⟨^α2⟩ ↛ (τ)^τ for every α".into(), format!("reason: {reason}")],
        });
    }
    let form = report.form.expect("unflagged report carries a form");
    if form.is_finite() {
        return Err(Error::FiniteType);
    }
    if let Some(ks) = form.match_omega_plus_k() {
        return Ok(TrichotomyReport {
            class_index: 1,
            form: Some(form),
            k_and_side: Some(ks),
            xi: None,
            beta: None,
            witness: Witness::None,
            equivalence: vec!["⟨^α2⟩ → (τ)^τ ⟺ ω → (ω)^ω, for every countable α ≥ ω".into()],
        });
    }
    let (x, b) = (xi(&form)?, beta(&form)?);
    Ok(TrichotomyReport {
        class_index: 2,
        form: Some(form),
        k_and_side: None,
        xi: Some(x),
        beta: Some(b.clone()),
        witness: Witness::None,
        equivalence: vec![
            format!("⟨^ω₁2⟩ → (τ)^τ ⟺ ω₁ → (β)^β, where β = {b}"),
            "⟨^α2⟩ ↛ (τ)^τ for every countable α".into(),
            "uncountable α other than ω₁: not settled".into(),
        ],
    })
}

/// Whether two infinite ordinals share the first term of their normal forms.
pub fn same_leading_component(g: &Ordinal, g2: &Ordinal) -> Result<bool> {
    if g.is_finite() || g2.is_finite() {
        return Err(Error::FiniteType);
    }
    Ok(g.leading_term()? == g2.leading_term()?)
}

/// The sentence attached to a positive `same_leading_component` answer.
pub fn leading_component_certificate(g: &Ordinal, g2: &Ordinal) -> String {
    format!("κ → (γ)^γ ⟺ κ → (γ′)^γ′ for every cardinal κ, where γ = {g}, γ′ = {g2}")
}

impl fmt::Display for TrichotomyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class: {}", self.class_index)?;
        if let Some(form) = &self.form {
            writeln!(f, "form: {form}")?;
            writeln!(f, "rank: {}", form.hausdorff_rank())?;
        }
        if let Some((k, side)) = &self.k_and_side {
            writeln!(f, "k: {k}")?;
            writeln!(f, "side: {side}")?;
        }
        if let Some(x) = &self.xi {
            writeln!(f, "xi: {x}")?;
        }
        if let Some(b) = &self.beta {
            writeln!(f, "beta: {b}")?;
        }
        writeln!(f, "witness: {}", self.witness)?;
        for line in &self.equivalence {
            writeln!(f, "certificate: {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::ordertype::{parse_type, Entry};
    use crate::ordinal::parse_ordinal;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn form(s: &str) -> FiniteSumForm {
        normalize(&parse_type(s).unwrap()).form.unwrap()
    }

    fn permutation_max(parts: &mut Vec<Ordinal>, k: usize, best: &mut Ordinal) {
        if k == parts.len() {
            let s = parts.iter().fold(Ordinal::zero(), |acc, p| acc.add(p));
            if s > *best {
                *best = s;
            }
            return;
        }
        for i in k..parts.len() {
            parts.swap(k, i);
            permutation_max(parts, k + 1, best);
            parts.swap(k, i);
        }
    }

    fn beta_oracle(f: &FiniteSumForm) -> Ordinal {
        let mut parts: Vec<Ordinal> =
            f.entries().iter().flat_map(|e| e.value.indecomposable_parts().unwrap()).collect();
        let mut best = Ordinal::zero();
        permutation_max(&mut parts, 0, &mut best);
        best
    }

    #[test]
    fn xi_and_beta_examples() {
        assert_eq!(xi(&form("zeta")).unwrap(), o("w*2"));
        assert_eq!(xi(&form("w~ + w^2")).unwrap(), o("w^2"));
        assert_eq!(xi(&form("w^2 + w~")).unwrap(), o("w^2+w"));
        assert_eq!(beta(&form("w~ + w^2")).unwrap(), o("w^2+w"));
        assert_eq!(beta(&form("zeta")).unwrap(), beta_oracle(&form("zeta")));
        assert_eq!(beta(&form("zeta")).unwrap(), o("w*2"));
        assert_eq!(beta(&form("w")).unwrap(), o("w"));
        assert_eq!(xi(&form("7")), Err(Error::FiniteType));
    }

    #[test]
    fn classification_examples() {
        let r = classify(&parse_type("w+3").unwrap()).unwrap();
        assert_eq!((r.class_index, r.k_and_side), (1, Some((3u32.into(), Side::Left))));
        let r = classify(&TypeExpr::zeta()).unwrap();
        assert_eq!((r.class_index, r.xi, r.beta), (2, Some(o("w*2")), Some(o("w*2"))));
        let r = classify(&TypeExpr::prod(TypeExpr::omega(), TypeExpr::rev(TypeExpr::omega()))).unwrap();
        assert_eq!((r.class_index, r.witness), (3, Witness::OmegaOmegaStar));
        let r = classify(&parse_type("eta * (w * w~)").unwrap()).unwrap();
        assert_eq!(r.witness, Witness::Eta);
        assert_eq!(classify(&parse_type("4").unwrap()), Err(Error::FiniteType));
        assert_eq!(classify(&parse_type("0").unwrap()), Err(Error::FiniteType));
    }

    #[test]
    fn leading_components() {
        assert!(same_leading_component(&o("w^2+w"), &o("w^2+5")).unwrap());
        assert!(same_leading_component(&o("w^2"), &o("w^2")).unwrap());
        assert!(!same_leading_component(&o("w*2"), &o("w")).unwrap());
        assert_eq!(same_leading_component(&o("3"), &o("w")), Err(Error::FiniteType));
    }

    fn scattered_entries() -> impl Strategy<Value = Vec<Entry>> {
        let value = prop::collection::btree_map(0u64..3, 1u64..=2, 1..3).prop_map(|m| {
            m.into_iter().rev().fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::term(Ordinal::nat(e), c)))
        });
        prop::collection::vec(
            (value, any::<bool>()).prop_map(|(v, f)| if f { Entry::fwd(v) } else { Entry::rev(v) }),
            1..=3,
        )
    }

    proptest! {
        #[test]
        fn beta_is_the_best_arrangement(raw in scattered_entries()) {
            let f = FiniteSumForm::from_entries(raw);
            prop_assume!(!f.is_finite());
            let parts: usize = f.entries().iter().map(|e| e.value.terms().len()).sum();
            prop_assume!(parts <= 6);
            let b = beta(&f).unwrap();
            prop_assert_eq!(&b, &beta_oracle(&f));
            prop_assert!(xi(&f).unwrap() <= b.clone());
            let natural = f.entries().iter().fold(Ordinal::zero(), |acc, e| acc.natural_sum(&e.value));
            prop_assert_eq!(b, natural);
        }

        #[test]
        fn classification_is_stable(raw in scattered_entries()) {
            let f = FiniteSumForm::from_entries(raw);
            prop_assume!(!f.is_finite());
            let e = f.to_expr();
            let r = classify(&e).unwrap();
            prop_assert_eq!(&r, &classify(&TypeExpr::rev(TypeExpr::rev(e))).unwrap());
            let reread = parse_type(&r.form.as_ref().unwrap().to_string()).unwrap();
            prop_assert_eq!(&r, &classify(&reread).unwrap());
            match r.class_index {
                1 => prop_assert!(r.k_and_side.is_some()),
                2 => prop_assert!(r.xi.is_some() && r.beta.is_some() && r.xi <= r.beta),
                _ => prop_assert!(false),
            }
        }
    }
}
