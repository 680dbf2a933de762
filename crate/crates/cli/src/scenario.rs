//! Scenario files: a JSON object with a `kind`, an optional `name` and
//! `description`, and the kind-specific fields.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::{anyhow, bail, Context, Result};
use bicanon::picard::LatticeKind;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

pub const KINDS: [&str; 7] = [
    "double-cover",
    "z22-surface-cover",
    "product-quotient",
    "fermat",
    "proofcheck",
    "linsys",
    "lattice",
];

#[derive(Debug)]
pub struct Scenario {
    pub name: String,
    pub description: Option<String>,
    pub payload: Payload,
}

#[derive(Debug)]
pub enum Payload {
    DoubleCover(DoubleCoverSpec),
    SurfaceCover(SurfaceCoverSpec),
    ProductQuotient(ProductQuotientSpec),
    Fermat(FermatSpec),
    Proofcheck(ProofcheckSpec),
    Linsys(LinsysSpec),
    Lattice(LatticeSpec),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::DoubleCover(_) => "double-cover",
            Payload::SurfaceCover(_) => "z22-surface-cover",
            Payload::ProductQuotient(_) => "product-quotient",
            Payload::Fermat(_) => "fermat",
            Payload::Proofcheck(_) => "proofcheck",
            Payload::Linsys(_) => "linsys",
            Payload::Lattice(_) => "lattice",
        }
    }
}

/// A divisor class either as a list of terms (`"2f1"`, `"-K"`, `"e4"`) or as
/// a map from basis label to coefficient.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ClassExpr {
    Terms(Vec<String>),
    Coefficients(BTreeMap<String, i64>),
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Terms(t) => write!(f, "{}", t.join(" + ")),
            ClassExpr::Coefficients(m) => {
                let parts: Vec<String> = m.iter().map(|(k, v)| format!("{v}{k}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Either a named lattice or an explicit one.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Named(String),
    Explicit(LatticeKind),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCoverSpec {
    pub chi_base: i64,
    pub pg_base: i64,
    pub h0_k_plus_m: i64,
    pub k2_base: Option<i64>,
    pub m_squared: Option<i64>,
    pub m_dot_k: Option<i64>,
    pub lattice: Option<LatticeRef>,
    pub m: Option<ClassExpr>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsSpec {
    pub coordinates: Vec<[i64; 3]>,
    #[serde(default)]
    pub incidences: Vec<IncidenceSpec>,
}

/// Point `point` lies on the line through `line[0]`, `line[1]` (1-based).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceSpec {
    pub line: [usize; 2],
    pub point: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceCoverSpec {
    pub points: Option<PointsSpec>,
    pub branch: [ClassExpr; 3],
    pub line_bundles: [ClassExpr; 2],
    #[serde(default)]
    pub blowdowns: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchEntrySpec {
    pub element: Vec<i64>,
    pub points: Option<Vec<String>>,
    pub degree: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub branch: Vec<BranchEntrySpec>,
    pub line_bundles: Option<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductQuotientSpec {
    pub group: Vec<u32>,
    pub psi: Vec<Vec<i64>>,
    pub curve1: CurveSpec,
    pub curve2: CurveSpec,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FermatSpec {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofPart {
    Cases,
    Reider,
    Lemma,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofcheckSpec {
    #[serde(default = "all_parts")]
    pub parts: Vec<ProofPart>,
}

fn all_parts() -> Vec<ProofPart> {
    vec![ProofPart::Cases, ProofPart::Reider, ProofPart::Lemma]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub degree: u32,
    pub multiplicities: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinsysSpec {
    pub points: Option<PointsSpec>,
    #[serde(default)]
    pub classes: BTreeMap<String, ClassExpr>,
    #[serde(default)]
    pub systems: Vec<SystemSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisibilitySpec {
    pub class: String,
    pub by: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub lattice: LatticeRef,
    pub classes: BTreeMap<String, ClassExpr>,
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub divisible: Vec<DivisibilitySpec>,
    #[serde(default)]
    pub negative_definite: Vec<Vec<Vec<i64>>>,
}

fn payload<T: DeserializeOwned>(kind: &str, fields: serde_json::Map<String, Value>) -> Result<T> {
    serde_path_to_error::deserialize(Value::Object(fields)).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            anyhow!("invalid {kind} scenario: {}", e.inner())
        } else {
            anyhow!("invalid {kind} scenario at `{path}`: {}", e.inner())
        }
    })
}

pub fn parse(text: &str, fallback_name: &str) -> Result<Scenario> {
    let value: Value = serde_json::from_str(text).context("malformed JSON")?;
    let Value::Object(mut fields) = value else {
        bail!("scenario must be a JSON object");
    };
    let kind = match fields.remove("kind") {
        Some(Value::String(k)) => k,
        Some(_) => bail!("invalid scenario at `kind`: expected a string"),
        None => bail!("missing field `kind` (one of {})", KINDS.join(", ")),
    };
    let name = match fields.remove("name") {
        Some(Value::String(s)) => s,
        Some(_) => bail!("invalid scenario at `name`: expected a string"),
        None => fallback_name.to_string(),
    };
    let description = match fields.remove("description") {
        Some(Value::String(s)) => Some(s),
        Some(_) => bail!("invalid scenario at `description`: expected a string"),
        None => None,
    };
    let payload = match kind.as_str() {
        "double-cover" => Payload::DoubleCover(payload(&kind, fields)?),
        "z22-surface-cover" => Payload::SurfaceCover(payload(&kind, fields)?),
        "product-quotient" => Payload::ProductQuotient(payload(&kind, fields)?),
        "fermat" => Payload::Fermat(payload(&kind, fields)?),
        "proofcheck" => Payload::Proofcheck(payload(&kind, fields)?),
        "linsys" => Payload::Linsys(payload(&kind, fields)?),
        "lattice" => Payload::Lattice(payload(&kind, fields)?),
        other => bail!(
            "invalid scenario at `kind`: unknown kind `{other}` (expected one of {})",
            KINDS.join(", ")
        ),
    };
    Ok(Scenario {
        name,
        description,
        payload,
    })
}
