use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer matrix as a list of rows.
pub type Rows = Vec<Vec<i64>>;

/// On-disk instance: names map to sets, maps, sheaves, spans and morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// `0` for the integers, `m` for `ℤ/m`.
    pub ring: u64,
    pub base: Vec<String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub sets: IndexMap<String, SetSpec>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub maps: IndexMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub sheaves: IndexMap<String, SheafSpec>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub spans: IndexMap<String, SpanSpec>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub morphisms: IndexMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lv: Option<LvSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_change: Option<BaseChangeSpec>,
    /// Recorded traces: endomorphism name to fixed-point label to value.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub expect: IndexMap<String, IndexMap<String, i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    pub elements: Vec<String>,
    /// Base label per element; may be omitted over a one-point base.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchor: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    pub graph: IndexMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    /// Degree (as a string key) to rank.
    pub ranks: IndexMap<String, usize>,
    /// Degree `n` to the differential `C^n -> C^{n+1}`.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub diff: IndexMap<String, Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafSpec {
    pub carrier: String,
    pub stalks: IndexMap<String, ComplexSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanSpec {
    pub source: String,
    pub target: String,
    pub apex: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    /// Sheaf names.
    pub source: String,
    pub target: String,
    pub span: String,
    /// Apex label to degree to matrix; missing entries are zero.
    #[serde(default)]
    pub maps: IndexMap<String, IndexMap<String, Rows>>,
}

/// Names of the pieces of a pair of commuting squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LvSpec {
    pub f: String,
    pub p: String,
    pub g: String,
    pub q: String,
    pub c: String,
    pub c2: String,
    pub d: String,
    pub d2: String,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseChangeSpec {
    /// Labels of the new base `S`.
    pub base: Vec<String>,
    /// `g : S -> T` by labels.
    pub g: IndexMap<String, String>,
}

pub(crate) fn pointer(path: &serde_path_to_error::Path) -> String {
    let s = path.to_string();
    if s == "." {
        return String::new();
    }
    s.split('.')
        .map(|seg| {
            let seg = seg.trim_start_matches('[').trim_end_matches(']');
            format!("/{}", seg.replace('~', "~0").replace('/', "~1"))
        })
        .collect()
}

impl InstanceFile {
    /// Parses JSON; errors carry a JSON-pointer location.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
            pointer: pointer(e.path()),
            message: e.inner().to_string(),
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }
}
