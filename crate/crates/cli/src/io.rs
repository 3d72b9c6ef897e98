//! JSON input files and the conversion of exact values to JSON.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use sha2::{Digest, Sha256};
use toric_t2::gorenstein::LatticePolygon;
use toric_t2::{Cone, Rat};

/// Largest magnitude written as a JSON number; anything bigger becomes a string.
pub const SAFE_INT: i64 = (1 << 53) - 1;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("{0}")]
    Invalid(#[from] toric_t2::Error),
}

/// An integer that serializes as a string once it leaves the 53-bit range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub i64);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.abs() <= SAFE_INT {
            s.serialize_i64(self.0)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(JsonInt(n)),
            Repr::Str(s) => s.trim().parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

fn wrap(v: &[i64]) -> Vec<JsonInt> {
    v.iter().copied().map(JsonInt).collect()
}

fn unwrap(v: &[JsonInt]) -> Vec<i64> {
    v.iter().map(|x| x.0).collect()
}

/// `{ "rank": n, "generators": [[...], ...] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub rank: usize,
    pub generators: Vec<Vec<JsonInt>>,
}

impl ConeSpec {
    pub fn new(rank: usize, generators: &[Vec<i64>]) -> Self {
        ConeSpec { rank, generators: generators.iter().map(|g| wrap(g)).collect() }
    }

    pub fn generators(&self) -> Vec<Vec<i64>> {
        self.generators.iter().map(|g| unwrap(g)).collect()
    }

    pub fn to_cone(&self) -> Result<Cone, InputError> {
        Ok(Cone::new(self.rank, &self.generators())?)
    }
}

impl From<&Cone> for ConeSpec {
    fn from(c: &Cone) -> Self {
        let gens: Vec<Vec<i64>> = c.generators().iter().map(|g| g.0.clone()).collect();
        ConeSpec::new(c.rank(), &gens)
    }
}

/// `{ "vertices": [[x, y], ...] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonSpec {
    pub vertices: Vec<[JsonInt; 2]>,
}

impl PolygonSpec {
    pub fn new(vertices: &[[i64; 2]]) -> Self {
        PolygonSpec { vertices: vertices.iter().map(|v| [JsonInt(v[0]), JsonInt(v[1])]).collect() }
    }

    pub fn vertices(&self) -> Vec<[i64; 2]> {
        self.vertices.iter().map(|v| [v[0].0, v[1].0]).collect()
    }

    pub fn to_polygon(&self, allow_nonprimitive: bool) -> Result<LatticePolygon, InputError> {
        let v = self.vertices();
        Ok(if allow_nonprimitive {
            LatticePolygon::with_nonprimitive_edges(v)?
        } else {
            LatticePolygon::new(v)?
        })
    }
}

impl From<&LatticePolygon> for PolygonSpec {
    fn from(p: &LatticePolygon) -> Self {
        PolygonSpec::new(p.vertices())
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

pub fn parse_cone_str(text: &str) -> Result<(ConeSpec, Cone), InputError> {
    let spec: ConeSpec = serde_json::from_str(text).map_err(|e| InputError::Schema(e.to_string()))?;
    let cone = spec.to_cone()?;
    Ok((spec, cone))
}

pub fn parse_polygon_str(text: &str, allow_nonprimitive: bool) -> Result<(PolygonSpec, LatticePolygon), InputError> {
    let spec: PolygonSpec = serde_json::from_str(text).map_err(|e| InputError::Schema(e.to_string()))?;
    let polygon = spec.to_polygon(allow_nonprimitive)?;
    Ok((spec, polygon))
}

pub fn parse_cone_file(path: &Path) -> Result<(ConeSpec, Cone), InputError> {
    parse_cone_str(&read(path)?)
}

pub fn parse_polygon_file(path: &Path, allow_nonprimitive: bool) -> Result<(PolygonSpec, LatticePolygon), InputError> {
    parse_polygon_str(&read(path)?, allow_nonprimitive)
}

/// Comma separated integers, e.g. `"0,0,1"`.
pub fn parse_degree(text: &str) -> Result<Vec<i64>, InputError> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| InputError::Schema(format!("bad degree entry {s:?}: {e}"))))
        .collect()
}

/// SHA-256 of the compact serialization.
pub fn canonical_hash<T: Serialize>(x: &T) -> String {
    let bytes = serde_json::to_vec(x).expect("input echo serializes");
    hex::encode(Sha256::digest(bytes))
}

pub fn int_json(x: i64) -> Value {
    serde_json::to_value(JsonInt(x)).unwrap()
}

pub fn ints_json(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|&x| int_json(x)).collect())
}

/// Integers within the safe range become numbers, everything else `"p/q"` strings.
pub fn rat_json(r: &Rat) -> Value {
    if r.is_integer() {
        if let Ok(n) = i64::try_from(r.to_integer()) {
            return int_json(n);
        }
    }
    Value::String(r.to_string())
}

pub fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}
