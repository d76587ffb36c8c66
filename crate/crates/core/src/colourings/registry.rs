//! Colourings and inputs addressed by name, for batch drivers.

use std::fmt;
use std::str::FromStr;

use super::*;
use crate::families::text::split_document;
use crate::families::{parse_family, Check, FamilyDoc};

/// Something a colouring can be evaluated on: a represented family or a
/// dyadic copy of `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Family(FamilyDoc),
    Dyadic { copy: DyadicCopy, checks: Vec<Check> },
}

impl Subject {
    /// Reads a family document, or a dyadic copy when the first content line
    /// starts with `dyadic`.
    pub fn parse(src: &str) -> Result<Self> {
        let doc = split_document(src)?;
        let dyadic = doc.lines.first().is_some_and(|(_, l)| l.trim_start().starts_with("dyadic"));
        if dyadic {
            Ok(Subject::Dyadic { copy: parse_dyadic(src)?, checks: doc.checks })
        } else {
            Ok(Subject::Family(parse_family(src)?))
        }
    }

    pub fn family(&self) -> Option<&RepFamily> {
        match self {
            Subject::Family(d) => Some(&d.family),
            Subject::Dyadic { .. } => None,
        }
    }

    pub fn check(&self, key: &str) -> Option<&str> {
        match self {
            Subject::Family(d) => d.check(key),
            Subject::Dyadic { checks, .. } => checks.iter().find(|c| c.key == key).map(|c| c.value.as_str()),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Family(d) => d.family.fmt(f),
            Subject::Dyadic { copy, .. } => copy.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColouringName {
    C,
    Zeta,
    Mutual,
    ZetaCc,
    Tausplit,
    Triple,
    Affordable,
}

impl ColouringName {
    pub const ALL: [ColouringName; 7] = [
        ColouringName::C,
        ColouringName::Zeta,
        ColouringName::Mutual,
        ColouringName::ZetaCc,
        ColouringName::Tausplit,
        ColouringName::Triple,
        ColouringName::Affordable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ColouringName::C => "C",
            ColouringName::Zeta => "zeta",
            ColouringName::Mutual => "mutual",
            ColouringName::ZetaCc => "zeta-cc",
            ColouringName::Tausplit => "tausplit",
            ColouringName::Triple => "triple",
            ColouringName::Affordable => "affordable",
        }
    }

    /// Evaluates the colouring; `oracle` is read only by `affordable`.
    pub fn colour(self, s: &Subject, oracle: &KappaSetColouring) -> Result<Colour> {
        match (self, s) {
            (ColouringName::Tausplit, Subject::Dyadic { copy, .. }) => Ok(colour_tausplit(copy)),
            (ColouringName::Tausplit, _) => Err(Error::Precondition("tausplit needs a dyadic copy".into())),
            (_, Subject::Dyadic { .. }) => Err(Error::Precondition(format!("{self} needs a family"))),
            (_, Subject::Family(d)) => {
                let a = &d.family;
                match self {
                    ColouringName::C => colour_c(a),
                    ColouringName::Zeta => colour_zeta(a),
                    ColouringName::Mutual => colour_mutual(a),
                    ColouringName::ZetaCc => colour_zeta_cc(a),
                    ColouringName::Triple => colour_triple_family(a),
                    ColouringName::Affordable => colour_affordable(oracle, a),
                    ColouringName::Tausplit => unreachable!("handled above"),
                }
            }
        }
    }

    /// A subcopy of colour `target` (the other colour when `None`).
    /// `affordable` only moves the leftmost raw block, so the oracle is not
    /// consulted.
    pub fn flip(self, s: &Subject, target: Option<Colour>, oracle: &KappaSetColouring) -> Result<Subject> {
        let current = self.colour(s, oracle)?;
        let target = target.unwrap_or(current.other());
        if target == current {
            return Ok(s.clone());
        }
        let family = |a: RepFamily| Subject::Family(FamilyDoc { family: a, checks: Vec::new() });
        match (self, s) {
            (ColouringName::Tausplit, Subject::Dyadic { copy, .. }) => {
                Ok(Subject::Dyadic { copy: flip_tausplit(copy)?, checks: Vec::new() })
            }
            (_, Subject::Family(d)) => {
                let a = &d.family;
                Ok(family(match self {
                    ColouringName::C => flip_c(a, target)?,
                    ColouringName::Zeta => flip_zeta(a, target)?,
                    ColouringName::Mutual => flip_mutual(a, target)?,
                    ColouringName::ZetaCc => flip_zeta_cc(a, target)?,
                    ColouringName::Triple => flip_triple(a, target)?,
                    ColouringName::Affordable => flip_affordable_raw(a)?,
                    ColouringName::Tausplit => unreachable!("colour already failed"),
                }))
            }
            _ => unreachable!("colour already failed"),
        }
    }
}

impl fmt::Display for ColouringName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ColouringName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ParseError::new(0, format!("unknown colouring '{s}'")).into())
    }
}
