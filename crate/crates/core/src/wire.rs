//! JSON wire formats for fields, characters and representations.
//!
//! Characters travel as `{"conductor": k, "exponents": [e_0, e_1, ...]}`
//! relative to the documented invariant-factor order `[q-1, p^(k-1) x f]`;
//! representations as
//! `{"field": {"p": ..., "f": ...}, "components": [{"n", "label", "a_min",
//! "mu", "omega_min"}, ...]}`. Unknown keys are rejected; `omega_min` is
//! optional.

use serde::{Deserialize, Serialize};

use crate::characters::UnitCharacter;
use crate::error::Result;
use crate::localfield::LocalFieldParams;
use crate::reps::{QuasiSquareIntegrable, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    pub f: u32,
}

impl FieldSpec {
    pub fn resolve(&self) -> Result<LocalFieldParams> {
        LocalFieldParams::new(self.p, self.f)
    }

    pub fn from_params(params: LocalFieldParams) -> Self {
        Self {
            p: params.residue_characteristic(),
            f: params.residue_degree(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub conductor: u64,
    pub exponents: Vec<u64>,
}

impl CharacterSpec {
    /// Interprets the spec against a field; non-canonical exponents are
    /// reduced and the exact conductor recomputed.
    pub fn resolve(&self, field: LocalFieldParams) -> Result<UnitCharacter> {
        UnitCharacter::from_exponents(field, self.conductor, &self.exponents)
    }

    pub fn from_character(chi: &UnitCharacter) -> Self {
        Self {
            conductor: chi.conductor(),
            exponents: chi.exponents().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub n: u64,
    pub label: String,
    pub a_min: u64,
    pub mu: CharacterSpec,
    #[serde(default)]
    pub omega_min: Option<CharacterSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub field: FieldSpec,
    pub components: Vec<ComponentSpec>,
}

impl RepresentationSpec {
    pub fn resolve(&self) -> Result<Representation> {
        let field = self.field.resolve()?;
        let mut components = Vec::with_capacity(self.components.len());
        for spec in &self.components {
            let mu = spec.mu.resolve(field)?;
            let omega = spec
                .omega_min
                .as_ref()
                .map(|o| o.resolve(field))
                .transpose()?;
            components.push(QuasiSquareIntegrable::new(
                spec.n,
                &spec.label,
                spec.a_min,
                mu,
                omega,
            )?);
        }
        Representation::new(components)
    }

    /// Canonical spec: characters re-expressed at their exact conductors.
    pub fn from_representation(rep: &Representation) -> Self {
        Self {
            field: FieldSpec::from_params(rep.field()),
            components: rep
                .components()
                .iter()
                .map(|c| ComponentSpec {
                    n: c.rank(),
                    label: c.minimal_label().to_string(),
                    a_min: c.minimal_conductor(),
                    mu: CharacterSpec::from_character(c.twist()),
                    omega_min: c.minimal_central().map(CharacterSpec::from_character),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representation_round_trip() {
        let text = r#"{
            "field": {"p": 5, "f": 1},
            "components": [
                {"n": 2, "label": "A", "a_min": 1,
                 "mu": {"conductor": 2, "exponents": [0, 1]},
                 "omega_min": null}
            ]
        }"#;
        let spec: RepresentationSpec = serde_json::from_str(text).unwrap();
        let rep = spec.resolve().unwrap();
        assert_eq!(rep.conductor(), 4);
        let back = RepresentationSpec::from_representation(&rep);
        assert_eq!(back.resolve().unwrap(), rep);
        let emitted = serde_json::to_string(&back).unwrap();
        let reparsed: RepresentationSpec = serde_json::from_str(&emitted).unwrap();
        assert_eq!(reparsed, back);
    }

    #[test]
    fn omega_min_is_optional() {
        let text = r#"{
            "field": {"p": 5, "f": 1},
            "components": [
                {"n": 1, "label": "trivial", "a_min": 0,
                 "mu": {"conductor": 0, "exponents": []}}
            ]
        }"#;
        let spec: RepresentationSpec = serde_json::from_str(text).unwrap();
        assert!(spec.resolve().is_ok());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"field": {"p": 5, "f": 1}, "components": [], "extra": 1}"#;
        assert!(serde_json::from_str::<RepresentationSpec>(text).is_err());
        let text = r#"{"conductor": 1, "exponents": [1, 0], "stray": true}"#;
        assert!(serde_json::from_str::<CharacterSpec>(text).is_err());
    }

    #[test]
    fn non_canonical_input_is_canonicalized() {
        // Exponent 5 at level 2 over Q_5 reduces to the zero p-part.
        let spec = CharacterSpec {
            conductor: 2,
            exponents: vec![0, 5],
        };
        let chi = spec.resolve(LocalFieldParams::new(5, 1).unwrap()).unwrap();
        assert_eq!(chi.conductor(), 0);
    }

    #[test]
    fn invariant_violations_surface() {
        let text = r#"{
            "field": {"p": 5, "f": 1},
            "components": [
                {"n": 2, "label": "A", "a_min": 0,
                 "mu": {"conductor": 0, "exponents": []}}
            ]
        }"#;
        let spec: RepresentationSpec = serde_json::from_str(text).unwrap();
        assert!(spec.resolve().is_err());
    }
}
