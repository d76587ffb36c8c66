//! The bundled corpus of families and dyadic copies, and loading a corpus
//! from a directory of `.fam` / `.dy` files.

use std::fs;
use std::path::Path;

use crate::colourings::Subject;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub subject: Subject,
}

const BUNDLED: &[(&str, &str)] = &[
    ("asc_desc.fam", include_str!("../corpus/asc_desc.fam")),
    ("asc_extras.fam", include_str!("../corpus/asc_extras.fam")),
    ("dyadic_balanced.dy", include_str!("../corpus/dyadic_balanced.dy")),
    ("dyadic_left.dy", include_str!("../corpus/dyadic_left.dy")),
    ("dyadic_right.dy", include_str!("../corpus/dyadic_right.dy")),
    ("glued_desc.fam", include_str!("../corpus/glued_desc.fam")),
    ("omega.fam", include_str!("../corpus/omega.fam")),
    ("omega_plus_3.fam", include_str!("../corpus/omega_plus_3.fam")),
    ("omega_star.fam", include_str!("../corpus/omega_star.fam")),
    ("omega_w2.fam", include_str!("../corpus/omega_w2.fam")),
    ("raw_asc.fam", include_str!("../corpus/raw_asc.fam")),
    ("raw_desc.fam", include_str!("../corpus/raw_desc.fam")),
    ("raw_rising.fam", include_str!("../corpus/raw_rising.fam")),
    ("raw_zeta.fam", include_str!("../corpus/raw_zeta.fam")),
    ("three_asc.fam", include_str!("../corpus/three_asc.fam")),
    ("three_zeta.fam", include_str!("../corpus/three_zeta.fam")),
    ("tower.fam", include_str!("../corpus/tower.fam")),
    ("tower_framed.fam", include_str!("../corpus/tower_framed.fam")),
    ("two_asc.fam", include_str!("../corpus/two_asc.fam")),
    ("two_asc_steady.fam", include_str!("../corpus/two_asc_steady.fam")),
    ("two_zeta.fam", include_str!("../corpus/two_zeta.fam")),
    ("zeta.fam", include_str!("../corpus/zeta.fam")),
    ("zeta_dropped.fam", include_str!("../corpus/zeta_dropped.fam")),
    ("zeta_framed.fam", include_str!("../corpus/zeta_framed.fam")),
    ("zeta_kappa.fam", include_str!("../corpus/zeta_kappa.fam")),
    ("zeta_w3.fam", include_str!("../corpus/zeta_w3.fam")),
];

fn entry(name: &str, src: &str) -> Result<CorpusEntry> {
    let subject = Subject::parse(src).map_err(|e| match e {
        Error::Parse(p) => Error::Parse(crate::ParseError::new(p.offset, format!("{name}: {}", p.message))),
        Error::InvalidFamily(m) => Error::InvalidFamily(format!("{name}: {m}")),
        e => e,
    })?;
    Ok(CorpusEntry { name: name.to_string(), subject })
}

/// The corpus compiled into the library, in file-name order.
pub fn bundled() -> Result<Vec<CorpusEntry>> {
    BUNDLED.iter().map(|(name, src)| entry(name, src)).collect()
}

/// Every `.fam` and `.dy` file directly inside `dir`, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let io = |e: std::io::Error| Error::Precondition(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "fam" || x == "dy"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let src = fs::read_to_string(p).map_err(io)?;
            entry(&p.file_name().expect("file").to_string_lossy(), &src)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        let corpus = bundled().unwrap();
        assert!(corpus.iter().filter(|e| e.subject.family().is_some()).count() >= 20);
    }

    #[test]
    fn directory_matches_bundle() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        assert_eq!(load_dir(&dir).unwrap(), bundled().unwrap());
    }
}
