use std::fmt;

use serde::{Serialize, Serializer};

use super::{
    AitCompanion, AitLsd, CevCompanion, CevLsd, CirCompanion, CirLsd, HestonCompanion, HestonLsd,
    WfCompanion, WfLsd,
};
use crate::error::{Error, Result};
use crate::models::Model;

/// A scheme together with the model it discretises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    CirLsd(CirLsd),
    CirCompanion(CirCompanion),
    CirExactOu,
    CevLsd(CevLsd),
    CevCompanion(CevCompanion),
    WfLsd(WfLsd),
    WfCompanion(WfCompanion),
    HestonLsd(HestonLsd),
    HestonCompanion(HestonCompanion),
    AitLsd(AitLsd),
    AitCompanion(AitCompanion),
}

const TABLE: &[(SchemeId, &str)] = &[
    (SchemeId::CirLsd(CirLsd::Lsd1), "lsd1"),
    (SchemeId::CirLsd(CirLsd::Lsd2), "lsd2"),
    (SchemeId::CirLsd(CirLsd::Lsd3), "lsd3"),
    (SchemeId::CirCompanion(CirCompanion::SdTheta), "sd_theta"),
    (SchemeId::CirCompanion(CirCompanion::Alf), "alf"),
    (SchemeId::CirCompanion(CirCompanion::Ns), "ns"),
    (SchemeId::CirExactOu, "exact_ou"),
    (SchemeId::CevLsd(CevLsd::Lsd1), "lsd1"),
    (SchemeId::CevLsd(CevLsd::Lsd2), "lsd2"),
    (SchemeId::CevLsd(CevLsd::Lsd3), "lsd3"),
    (SchemeId::CevCompanion(CevCompanion::SdTheta), "sd_theta"),
    (SchemeId::CevCompanion(CevCompanion::Implicit), "implicit"),
    (SchemeId::WfLsd(WfLsd::Lsd1), "lsd1"),
    (SchemeId::WfLsd(WfLsd::Lsd2), "lsd2"),
    (SchemeId::WfLsd(WfLsd::Lsd3), "lsd3"),
    (SchemeId::WfLsd(WfLsd::Lsd4), "lsd4"),
    (SchemeId::WfCompanion(WfCompanion::Sd), "sd"),
    (SchemeId::WfCompanion(WfCompanion::SdAlt), "sd_alt"),
    (SchemeId::WfCompanion(WfCompanion::Biss), "biss"),
    (SchemeId::WfCompanion(WfCompanion::Hyb), "hyb"),
    (SchemeId::WfCompanion(WfCompanion::Implicit), "implicit"),
    (SchemeId::HestonLsd(HestonLsd::Lsd1), "lsd1"),
    (SchemeId::HestonLsd(HestonLsd::Lsd2), "lsd2"),
    (SchemeId::HestonCompanion(HestonCompanion::SdExp), "sd_exp"),
    (SchemeId::HestonCompanion(HestonCompanion::Implicit), "implicit"),
    (SchemeId::AitLsd(AitLsd::Lsd1), "lsd1"),
    (SchemeId::AitLsd(AitLsd::Lsd2), "lsd2"),
    (SchemeId::AitCompanion(AitCompanion::Implicit), "implicit"),
    (SchemeId::AitCompanion(AitCompanion::ImplicitDrift), "implicit_drift"),
];

impl SchemeId {
    pub fn model(self) -> Model {
        match self {
            SchemeId::CirLsd(_) | SchemeId::CirCompanion(_) | SchemeId::CirExactOu => Model::Cir,
            SchemeId::CevLsd(_) | SchemeId::CevCompanion(_) => Model::Cev,
            SchemeId::WfLsd(_) | SchemeId::WfCompanion(_) => Model::Wf,
            SchemeId::HestonLsd(_) | SchemeId::HestonCompanion(_) => Model::Heston32,
            SchemeId::AitLsd(_) | SchemeId::AitCompanion(_) => Model::Ait,
        }
    }

    /// Lower-case variant tag, unique within a model.
    pub fn name(self) -> &'static str {
        TABLE
            .iter()
            .find(|(id, _)| *id == self)
            .map(|(_, n)| *n)
            .expect("every scheme is listed")
    }

    /// Parses a variant tag such as `lsd1`, `SD_THETA` or `implicit-drift`.
    pub fn parse(model: Model, name: &str) -> Result<Self> {
        let key = name.trim().to_ascii_lowercase().replace('-', "_");
        TABLE
            .iter()
            .find(|(id, n)| id.model() == model && *n == key)
            .map(|(id, _)| *id)
            .ok_or_else(|| {
                let valid: Vec<_> = Self::all(model).iter().map(|s| s.name()).collect();
                Error::config(format!(
                    "unknown scheme '{name}' for model {model}; expected one of {}",
                    valid.join(", ")
                ))
            })
    }

    pub fn all(model: Model) -> Vec<SchemeId> {
        TABLE
            .iter()
            .filter(|(id, _)| id.model() == model)
            .map(|(id, _)| *id)
            .collect()
    }

    /// Whether the scheme iterates in Lamperti space.
    pub fn is_lsd(self) -> bool {
        matches!(
            self,
            SchemeId::CirLsd(_)
                | SchemeId::CevLsd(_)
                | SchemeId::WfLsd(_)
                | SchemeId::HestonLsd(_)
                | SchemeId::AitLsd(_)
        )
    }

    /// Number of independent Brownian motions driving one path.
    pub fn drivers(self) -> usize {
        if self == SchemeId::CirExactOu {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SchemeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for model in Model::ALL {
            for id in SchemeId::all(model) {
                assert_eq!(SchemeId::parse(model, id.name()).unwrap(), id);
                assert_eq!(id.model(), model);
            }
        }
    }

    #[test]
    fn variant_counts() {
        let counts: Vec<_> = Model::ALL.iter().map(|m| SchemeId::all(*m).len()).collect();
        assert_eq!(counts, vec![7, 5, 9, 4, 4]);
    }

    #[test]
    fn parse_is_lenient_about_case_and_dashes() {
        assert_eq!(
            SchemeId::parse(Model::Ait, "IMPLICIT-DRIFT").unwrap(),
            SchemeId::AitCompanion(AitCompanion::ImplicitDrift)
        );
    }

    #[test]
    fn invalid_for_model() {
        let err = SchemeId::parse(Model::Heston32, "alf").unwrap_err();
        assert!(err.to_string().contains("sd_exp"), "{err}");
        assert!(SchemeId::parse(Model::Cir, "lsd4").is_err());
    }
}
