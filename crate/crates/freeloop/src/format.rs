//! JSON presentations of simplicial sets and homology summaries.

use std::collections::BTreeMap;
use std::str::FromStr;

use freeloop_core::homalg::{HomologyGroup, HomologySummary};
use freeloop_core::simplicial::{builtin, FaceSpec, SimplicialSet, SimplicialSetBuilder};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

#[derive(Debug)]
pub enum LoadError {
    Parse(String),
    Invalid(String),
}

impl std::error::Error for LoadError {}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Parse(m) => write!(f, "parse error: {}", m),
            LoadError::Invalid(m) => write!(f, "invalid simplicial set: {}", m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceRecord {
    #[serde(default)]
    pub deg: Vec<u32>,
    pub base: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub name: String,
    pub basepoint: String,
    pub simplices: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<FaceRecord>>,
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Presentation, LoadError> {
        serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<SimplicialSet, LoadError> {
        let mut b = SimplicialSetBuilder::new(&self.name).basepoint(&self.basepoint);
        let mut declared = BTreeMap::new();
        for (dim, names) in &self.simplices {
            let d: usize = dim
                .parse()
                .map_err(|_| LoadError::Parse(format!("simplices: dimension key {:?} is not a non-negative integer", dim)))?;
            for n in names {
                declared.insert(n.clone(), d);
                if d == 0 {
                    if self.faces.contains_key(n) {
                        return Err(LoadError::Parse(format!("faces.{}: a vertex has no faces", n)));
                    }
                    b = b.vertex(n);
                } else {
                    let recs = self
                        .faces
                        .get(n)
                        .ok_or_else(|| LoadError::Parse(format!("faces.{}: missing face list", n)))?;
                    let specs = recs.iter().map(|r| FaceSpec { deg: r.deg.clone(), base: r.base.clone() }).collect();
                    b = b.simplex(n, d, specs);
                }
            }
        }
        if let Some(n) = self.faces.keys().find(|n| !declared.contains_key(*n)) {
            return Err(LoadError::Parse(format!("faces.{}: simplex is not declared", n)));
        }
        let x = b.build().map_err(|e| LoadError::Invalid(e.to_string()))?;
        let violations = x.validate();
        if !violations.is_empty() {
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(LoadError::Invalid(list.join("; ")));
        }
        Ok(x)
    }

    pub fn of(x: &SimplicialSet) -> Presentation {
        let mut simplices: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut faces = BTreeMap::new();
        for s in x.ids() {
            let name = x.simplex_name(s).to_string();
            simplices.entry(x.dim(s).to_string()).or_default().push(name.clone());
            if x.dim(s) > 0 {
                let recs = x.face_specs(s).into_iter().map(|f| FaceRecord { deg: f.deg, base: f.base }).collect();
                faces.insert(name, recs);
            }
        }
        Presentation {
            name: x.name().to_string(),
            basepoint: x.simplex_name(x.basepoint()).to_string(),
            simplices,
            faces,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }
}

/// A built-in name, or a path to a JSON presentation.
pub fn load_space(spec: &str) -> Result<SimplicialSet, LoadError> {
    if let Some(x) = builtin(spec) {
        return Ok(x);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| LoadError::Parse(format!("{}: not a built-in space and not readable ({})", spec, e)))?;
    Presentation::parse(&text)?.build()
}

pub fn group_to_json(g: &HomologyGroup, truncated_at: Option<usize>) -> String {
    let torsion: Vec<Value> =
        g.torsion.iter().map(|t| Value::Number(Number::from_str(&t.to_string()).expect("integer literal"))).collect();
    let mut v = json!({ "degree": g.degree, "free_rank": g.free_rank, "torsion": torsion });
    if let Some(l) = truncated_at {
        v["truncated_at"] = json!(l);
    }
    serde_json::to_string(&v).expect("json value serializes")
}

/// One JSON object per line.
pub fn summary_to_json_lines(h: &HomologySummary, truncated_at: Option<usize>) -> String {
    h.groups.iter().map(|g| group_to_json(g, truncated_at) + "\n").collect()
}

pub fn summary_from_json_lines(text: &str) -> Result<HomologySummary, LoadError> {
    let mut groups = Vec::new();
    for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let bad = |m: &str| LoadError::Parse(format!("line {}: {}", k + 1, m));
        let v: Value = serde_json::from_str(line).map_err(|e| bad(&e.to_string()))?;
        let degree = v["degree"].as_i64().ok_or_else(|| bad("degree must be an integer"))?;
        let free_rank = v["free_rank"].as_u64().ok_or_else(|| bad("free_rank must be a non-negative integer"))? as usize;
        let torsion = v["torsion"]
            .as_array()
            .ok_or_else(|| bad("torsion must be an array"))?
            .iter()
            .map(|t| BigInt::from_str(&t.to_string()).map_err(|_| bad("torsion entries must be integers")))
            .collect::<Result<Vec<_>, _>>()?;
        groups.push(HomologyGroup { degree, free_rank, torsion });
    }
    Ok(HomologySummary { groups })
}
