//! Named quivers with automorphisms.
//!
//! The built-in entries are JSON files compiled into the library. Setting
//! `QFOLD_CORPUS_DIR` makes [`load`] and [`entries`] read `<name>.json`
//! files from that directory instead.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::quiver::{families::*, is_admissible, DiagramAutomorphism, Quiver, QuiverJson};

pub const CORPUS_DIR_VAR: &str = "QFOLD_CORPUS_DIR";

const BUILTIN: &[(&str, &str)] = &[
    ("A3-flip", include_str!("../corpus/A3-flip.json")),
    ("A5-flip", include_str!("../corpus/A5-flip.json")),
    ("A7-flip", include_str!("../corpus/A7-flip.json")),
    ("D4-swap", include_str!("../corpus/D4-swap.json")),
    ("D5-swap", include_str!("../corpus/D5-swap.json")),
    ("D6-swap", include_str!("../corpus/D6-swap.json")),
    ("D4-triality", include_str!("../corpus/D4-triality.json")),
    ("A3-id", include_str!("../corpus/A3-id.json")),
    ("D4-id", include_str!("../corpus/D4-id.json")),
    ("affineA3-refl", include_str!("../corpus/affineA3-refl.json")),
    ("affineA5-refl", include_str!("../corpus/affineA5-refl.json")),
    ("affineD4-swap", include_str!("../corpus/affineD4-swap.json")),
    ("affineD6-swap", include_str!("../corpus/affineD6-swap.json")),
];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub quiver: Quiver,
    pub automorphism: DiagramAutomorphism,
    pub admissible: bool,
}

impl CorpusEntry {
    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let (quiver, automorphism) = QuiverJson::parse(text)?.to_quiver()?;
        let admissible = is_admissible(&quiver, &automorphism)?;
        Ok(CorpusEntry {
            name: name.to_string(),
            quiver,
            automorphism,
            admissible,
        })
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson::from_quiver(&self.quiver, Some(&self.automorphism))
    }
}

/// The entries as built from the named families; the JSON files are these
/// serialized.
pub fn family_entries() -> Vec<(String, Quiver, DiagramAutomorphism)> {
    let mut out = Vec::new();
    let mut push = |name: &str, q: Quiver, a: fn(&Quiver) -> Result<DiagramAutomorphism>| {
        let a = a(&q).expect("family automorphism");
        out.push((name.to_string(), q, a));
    };
    push("A3-flip", type_a(3), a_flip);
    push("A5-flip", type_a(5), a_flip);
    push("A7-flip", type_a(7), a_flip);
    push("D4-swap", type_d(4), d_fork_swap);
    push("D5-swap", type_d(5), d_fork_swap);
    push("D6-swap", type_d(6), d_fork_swap);
    push("D4-triality", type_d(4), d4_triality);
    push("A3-id", type_a(3), |q| Ok(DiagramAutomorphism::identity(q)));
    push("D4-id", type_d(4), |q| Ok(DiagramAutomorphism::identity(q)));
    push("affineA3-refl", affine_a(3), affine_a_reflection);
    push("affineA5-refl", affine_a(5), affine_a_reflection);
    push("affineD4-swap", affine_d(4), affine_d_double_swap);
    push("affineD6-swap", affine_d(6), affine_d_double_swap);
    out
}

fn override_dir() -> Option<PathBuf> {
    std::env::var_os(CORPUS_DIR_VAR).map(PathBuf::from)
}

/// Entry names, sorted for the directory override and in built-in order
/// otherwise.
pub fn names() -> Result<Vec<String>> {
    match override_dir() {
        None => Ok(BUILTIN.iter().map(|(n, _)| n.to_string()).collect()),
        Some(dir) => {
            let mut out = Vec::new();
            let listing = std::fs::read_dir(&dir)
                .map_err(|e| Error::Json(format!("cannot read corpus directory {}: {e}", dir.display())))?;
            for item in listing {
                let path = item.map_err(|e| Error::Json(e.to_string()))?.path();
                if path.extension().is_some_and(|x| x == "json") {
                    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                        out.push(stem.to_string());
                    }
                }
            }
            out.sort();
            Ok(out)
        }
    }
}

pub fn load(name: &str) -> Result<CorpusEntry> {
    match override_dir() {
        None => {
            let (_, text) = BUILTIN
                .iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| Error::Json(format!("unknown corpus entry {name:?}")))?;
            CorpusEntry::from_json(name, text)
        }
        Some(dir) => {
            let path = dir.join(format!("{name}.json"));
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?;
            CorpusEntry::from_json(name, &text)
        }
    }
}

pub fn entries() -> Result<Vec<CorpusEntry>> {
    names()?.iter().map(|n| load(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::split_involution_check;

    fn builtin_entries() -> Vec<CorpusEntry> {
        BUILTIN.iter().map(|(n, t)| CorpusEntry::from_json(n, t).unwrap()).collect()
    }

    #[test]
    fn files_match_families() {
        let built = builtin_entries();
        let fam = family_entries();
        assert_eq!(built.len(), fam.len());
        for (e, (name, q, a)) in built.iter().zip(&fam) {
            assert_eq!(&e.name, name);
            assert_eq!(&e.quiver, q);
            assert_eq!(&e.automorphism, a);
        }
    }

    #[test]
    fn entries_round_trip_and_pass_involution() {
        for e in builtin_entries() {
            let text = serde_json::to_string_pretty(&e.to_json()).unwrap();
            let back = CorpusEntry::from_json(&e.name, &text).unwrap();
            assert_eq!(back.quiver, e.quiver);
            assert_eq!(back.automorphism, e.automorphism);
            assert!(e.admissible, "{}", e.name);
            split_involution_check(&e.quiver, &e.automorphism).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }

    /// Regenerates the JSON files: `cargo test -p qfold-core write_corpus -- --ignored`.
    #[test]
    #[ignore]
    fn write_corpus() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        std::fs::create_dir_all(&dir).unwrap();
        for (name, q, a) in family_entries() {
            let text = serde_json::to_string_pretty(&QuiverJson::from_quiver(&q, Some(&a))).unwrap();
            std::fs::write(dir.join(format!("{name}.json")), text + "\n").unwrap();
        }
    }
}
