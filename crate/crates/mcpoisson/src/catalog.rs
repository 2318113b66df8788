//! The built-in model catalog.
//!
//! Fifteen cards ship with the library: seven Lie algebras
//! (`abelian2/4/6`, `heisenberg3`, `sl2`, `so3`, `nilpotent4_kt`),
//! four commutative Frobenius algebras (`kx2`, `kx3`, `kx4`,
//! `kxy22`), and four symplectic models (`torus4`, `torus6`,
//! `kodaira_thurston`, `nilpotent6`). Each card is stored as JSON in
//! the crate's `cards/` directory in the canonical form produced by
//! [`AlgebraCard::canonical_json`], embedded at compile time, and
//! fully revalidated on load.

use crate::card::{AlgebraCard, CardError};

/// Name and embedded JSON source of every shipped card, in catalog
/// order: Lie algebras, then Frobenius algebras, then symplectic
/// models.
pub const SOURCES: &[(&str, &str)] = &[
    ("abelian2", include_str!("../cards/abelian2.json")),
    ("abelian4", include_str!("../cards/abelian4.json")),
    ("abelian6", include_str!("../cards/abelian6.json")),
    ("heisenberg3", include_str!("../cards/heisenberg3.json")),
    ("sl2", include_str!("../cards/sl2.json")),
    ("so3", include_str!("../cards/so3.json")),
    ("nilpotent4_kt", include_str!("../cards/nilpotent4_kt.json")),
    ("kx2", include_str!("../cards/kx2.json")),
    ("kx3", include_str!("../cards/kx3.json")),
    ("kx4", include_str!("../cards/kx4.json")),
    ("kxy22", include_str!("../cards/kxy22.json")),
    ("torus4", include_str!("../cards/torus4.json")),
    ("torus6", include_str!("../cards/torus6.json")),
    ("kodaira_thurston", include_str!("../cards/kodaira_thurston.json")),
    ("nilpotent6", include_str!("../cards/nilpotent6.json")),
];

/// Names of the shipped cards in catalog order.
pub fn names() -> Vec<&'static str> {
    SOURCES.iter().map(|(name, _)| *name).collect()
}

/// The embedded JSON text of a shipped card, if the name is known.
pub fn source(name: &str) -> Option<&'static str> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

/// Loads and validates a shipped card by name.
pub fn load(name: &str) -> Option<Result<AlgebraCard, CardError>> {
    source(name).map(AlgebraCard::from_json)
}

/// Loads every shipped card, in catalog order.
pub fn all() -> Vec<AlgebraCard> {
    SOURCES
        .iter()
        .map(|(name, text)| {
            AlgebraCard::from_json(text)
                .unwrap_or_else(|e| panic!("shipped card `{name}` must validate: {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::card::CardKind;

    #[test]
    fn every_shipped_card_validates_and_is_canonical() {
        for (name, text) in SOURCES {
            let card = AlgebraCard::from_json(text)
                .unwrap_or_else(|e| panic!("card `{name}`: {e}"));
            assert_eq!(&card.name, name, "file name and card name agree");
            assert_eq!(
                card.canonical_json(),
                *text,
                "card `{name}` is stored in canonical form"
            );
        }
    }

    #[test]
    fn catalog_has_the_expected_families() {
        let cards = all();
        assert_eq!(cards.len(), 15);
        let count = |kind: CardKind| cards.iter().filter(|c| c.kind == kind).count();
        assert_eq!(count(CardKind::Lie), 7);
        assert_eq!(count(CardKind::Frobenius), 4);
        assert_eq!(count(CardKind::SymplecticModel), 4);
        assert!(load("heisenberg3").is_some());
        assert!(load("no_such_model").is_none());
    }

    #[test]
    fn shipped_symplectic_cards_match_the_library_constructors() {
        use crate::symplectic::{kodaira_thurston_model, nilpotent6_model, torus_model};
        for (name, model) in [
            ("torus4", torus_model(2)),
            ("torus6", torus_model(3)),
            ("kodaira_thurston", kodaira_thurston_model()),
            ("nilpotent6", nilpotent6_model()),
        ] {
            let card = load(name).unwrap().unwrap();
            let from_card = card.to_symplectic().unwrap();
            assert_eq!(from_card.omega, model.omega, "{name} omega");
            assert_eq!(from_card.pi, model.pi, "{name} pi");
            for i in 0..model.lie.dim() {
                for j in 0..model.lie.dim() {
                    assert_eq!(
                        from_card.lie.bracket_basis(i, j),
                        model.lie.bracket_basis(i, j),
                        "{name} bracket ({i}, {j})"
                    );
                }
            }
        }
    }

    #[test]
    #[ignore]
    fn regen_canonical_card_files() {
        for (name, _) in SOURCES {
            let path = format!("{}/cards/{name}.json", env!("CARGO_MANIFEST_DIR"));
            let card = AlgebraCard::load(std::path::Path::new(&path)).unwrap();
            std::fs::write(&path, card.canonical_json()).unwrap();
        }
    }
}
