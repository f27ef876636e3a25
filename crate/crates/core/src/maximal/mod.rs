//! Centered, one-sided and uncentered maximal operators on sequences and
//! step functions.

pub mod continuous;
pub mod discrete;
pub mod envelope;
pub mod peaks;

use serde::{Deserialize, Serialize};

/// Which maximal operator. `OneSided` takes averages over windows extending
/// to the right of the point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Centered,
    OneSided,
    Uncentered,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Centered, Variant::OneSided, Variant::Uncentered];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Centered => "centered",
            Variant::OneSided => "one_sided",
            Variant::Uncentered => "uncentered",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Variant> {
        match s {
            "centered" => Ok(Variant::Centered),
            "one_sided" | "one-sided" => Ok(Variant::OneSided),
            "uncentered" => Ok(Variant::Uncentered),
            _ => Err(crate::Error::malformed(
                "variant",
                format!("unknown variant `{s}` (expected centered, one_sided or uncentered)"),
            )),
        }
    }
}
