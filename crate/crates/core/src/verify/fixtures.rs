use crate::error::Result;
use crate::lattice::{LatticeInput, QuadField};
use crate::layered::LayeredMedium;
use crate::schur::SchurData;

const MODELS: [(&str, &str); 3] = [
    ("d1", include_str!("../../fixtures/model_d1.json")),
    ("d2", include_str!("../../fixtures/model_d2.json")),
    ("d3", include_str!("../../fixtures/model_d3.json")),
];

const MEDIA: [(&str, &str); 2] = [
    ("single", include_str!("../../fixtures/medium_single.json")),
    ("three", include_str!("../../fixtures/medium_three.json")),
];

const LATTICES: [(&str, &str, &str); 4] = [
    (
        "sqrt2",
        "Q(sqrt2)",
        include_str!("../../fixtures/lattice_sqrt2.json"),
    ),
    (
        "integer",
        "Q",
        include_str!("../../fixtures/lattice_integer.json"),
    ),
    (
        "fractions",
        "Q",
        include_str!("../../fixtures/lattice_fractions.json"),
    ),
    (
        "mixed_signs",
        "Q(sqrt2)",
        include_str!("../../fixtures/lattice_mixed_signs.json"),
    ),
];

/// Schur data in one, two and three variables (levels 4, 4 and 6).
pub fn bundled_models() -> Vec<(String, SchurData)> {
    MODELS
        .iter()
        .map(|(name, s)| {
            (
                name.to_string(),
                SchurData::from_json(s).expect("bundled model"),
            )
        })
        .collect()
}

/// A single interface and a three-interface medium with incommensurate gaps.
pub fn bundled_media() -> Vec<(String, LayeredMedium)> {
    MEDIA
        .iter()
        .map(|(name, s)| {
            (
                name.to_string(),
                LayeredMedium::from_json(s).expect("bundled medium"),
            )
        })
        .collect()
}

pub fn bundled_lattices() -> Vec<(String, LatticeInput)> {
    LATTICES
        .iter()
        .map(|(name, field, s)| {
            let field: QuadField = field.parse().expect("bundled field");
            (
                name.to_string(),
                LatticeInput::from_json(s, field).expect("bundled lattice input"),
            )
        })
        .collect()
}

pub fn bundled_model(name: &str) -> Option<SchurData> {
    bundled_models()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, d)| d)
}

pub fn bundled_medium(name: &str) -> Option<LayeredMedium> {
    bundled_media()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, m)| m)
}

pub fn load_model(path: &str) -> Result<SchurData> {
    SchurData::from_json(&std::fs::read_to_string(path)?)
}

pub fn load_medium(path: &str) -> Result<LayeredMedium> {
    LayeredMedium::from_json(&std::fs::read_to_string(path)?)
}
