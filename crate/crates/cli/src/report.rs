//! JSON report bodies emitted by each subcommand.

use std::collections::BTreeMap;

use fftp_core::bounds::DrumConstants;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallReport {
    pub radius: usize,
    pub vertices: usize,
    /// `|S(m)|` for `m = 0..=radius`.
    pub sphere_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicsReport {
    pub target: String,
    pub length: usize,
    pub geodesics: Vec<String>,
    /// More geodesics exist than the cap allowed.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FtDistReport {
    pub w: String,
    pub u: String,
    pub k_sync: usize,
    pub sync_witness_time: usize,
    pub k_async: Option<usize>,
    pub matching: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateReport {
    pub k: usize,
    #[serde(rename = "L")]
    pub max_len: usize,
    pub radius: usize,
    pub mode: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub words_checked: usize,
    pub words_skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinKReport {
    #[serde(rename = "L")]
    pub max_len: usize,
    pub radius: usize,
    pub k_max: usize,
    pub mode: String,
    /// Smallest certified constant, `null` if none up to `k_max`.
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeTypesReport {
    pub depth: usize,
    pub radius: usize,
    pub max_distance: usize,
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    /// Shortlex-least geodesic to the first member of each class.
    pub representatives: Vec<String>,
    /// Per class, letter name to successor class.
    pub transitions: Vec<BTreeMap<String, usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcEntry {
    pub n: usize,
    pub c_val: Option<usize>,
    pub witness_pair: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcRunReport {
    pub i: usize,
    pub radius: usize,
    pub values: Vec<AcEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusCheck {
    pub r: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillReport {
    pub k: usize,
    pub ladder: Vec<String>,
    pub cells: usize,
    pub max_perimeter: usize,
    pub max_vertex_radius: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_check: Option<RadiusCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillBatchReport {
    pub seed: u64,
    pub fillings: Vec<FillReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrumConstsReport {
    pub constants: DrumConstants,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_order_bound: Option<String>,
}
