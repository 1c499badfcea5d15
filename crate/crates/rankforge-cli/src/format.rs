//! JSON instance and solution files.

use anyhow::{bail, ensure, Context, Result};
use rankforge::instances::RdPlant;
use rankforge::supportminors::projective_normalize;
use rankforge::{DenseMatrix, ExtElement, ExtField, Fq, MinRankInstance, PrimeField, RdInstance};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT: u32 = 1;

#[derive(Serialize, Deserialize, Debug)]
pub struct RdFile {
    pub format: u32,
    #[serde(rename = "type")]
    pub kind: String,
    pub q: u32,
    pub m: usize,
    pub modulus: Vec<Fq>,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub seed: Option<u64>,
    pub code: Vec<Vec<Vec<Fq>>>,
    pub y: Vec<Vec<Fq>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub plant: Option<RdPlantFile>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct RdPlantFile {
    pub e: Vec<Vec<Fq>>,
    pub s: Vec<Vec<Fq>>,
    pub c: Vec<Vec<Fq>>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct MinRankFile {
    pub format: u32,
    #[serde(rename = "type")]
    pub kind: String,
    pub q: u32,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "K")]
    pub kk: usize,
    pub r: usize,
    pub seed: Option<u64>,
    pub matrices: Vec<Vec<Vec<Fq>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub plant: Option<Vec<Fq>>,
}

/// A solution as written by `solve --out` and read by `verify`.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(tag = "type")]
pub enum Solution {
    #[serde(rename = "rd-solution")]
    Rd { format: u32, e: Vec<Vec<Fq>> },
    #[serde(rename = "minrank-solution")]
    MinRank { format: u32, x: Vec<Fq> },
}

pub enum Instance {
    Rd(RdInstance),
    MinRank(MinRankInstance),
}

fn ext_vec(v: &[ExtElement]) -> Vec<Vec<Fq>> {
    v.iter().map(|x| x.coords().to_vec()).collect()
}

pub fn ext_from(field: &ExtField, v: &[Vec<Fq>]) -> Result<Vec<ExtElement>> {
    v.iter()
        .map(|c| {
            ensure!(c.iter().all(|&x| x < field.q()), "coordinate out of range");
            Ok(field.from_coords(c.clone())?)
        })
        .collect()
}

fn matrix_from(f: PrimeField, rows: &[Vec<Fq>]) -> Result<DenseMatrix> {
    ensure!(rows.iter().flatten().all(|&x| x < f.q()), "matrix entry out of range");
    Ok(DenseMatrix::from_rows(f, rows)?)
}

impl Instance {
    pub fn to_json(&self, with_plant: bool) -> Result<String> {
        let s = match self {
            Instance::Rd(i) => serde_json::to_string_pretty(&RdFile {
                format: FORMAT,
                kind: "rd".into(),
                q: i.q(),
                m: i.m(),
                modulus: i.field.modulus().to_vec(),
                n: i.n,
                k: i.k,
                r: i.r,
                seed: i.seed,
                code: i.code.iter().map(|row| ext_vec(row)).collect(),
                y: ext_vec(&i.y),
                plant: i.plant.as_ref().filter(|_| with_plant).map(|p| RdPlantFile {
                    e: ext_vec(&p.e),
                    s: p.s.to_rows(),
                    c: p.c.to_rows(),
                }),
            })?,
            Instance::MinRank(i) => serde_json::to_string_pretty(&MinRankFile {
                format: FORMAT,
                kind: "minrank".into(),
                q: i.field.q(),
                m: i.m,
                n: i.n,
                kk: i.k(),
                r: i.r,
                seed: i.seed,
                matrices: i.mats.iter().map(|a| a.to_rows()).collect(),
                plant: i.plant.clone().filter(|_| with_plant),
            })?,
        };
        Ok(s + "\n")
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let v: serde_json::Value = serde_json::from_str(text).context("not JSON")?;
        let format = v.get("format").and_then(|x| x.as_u64());
        ensure!(format == Some(FORMAT as u64), "unsupported instance format {:?}", format);
        match v.get("type").and_then(|x| x.as_str()) {
            Some("rd") => {
                let f: RdFile = serde_json::from_value(v)?;
                let base = PrimeField::new(f.q)?;
                let field = ExtField::new(base, f.modulus.clone())?;
                ensure!(field.m() == f.m, "modulus degree differs from m");
                let code = f.code.iter().map(|row| ext_from(&field, row)).collect::<Result<Vec<_>>>()?;
                let y = ext_from(&field, &f.y)?;
                let mut inst = RdInstance::new(field.clone(), f.n, f.k, f.r, code, y)?;
                inst.seed = f.seed;
                if let Some(p) = f.plant {
                    inst.plant = Some(RdPlant { e: ext_from(&field, &p.e)?, s: matrix_from(base, &p.s)?, c: matrix_from(base, &p.c)? });
                }
                Ok(Instance::Rd(inst))
            }
            Some("minrank") => {
                let f: MinRankFile = serde_json::from_value(v)?;
                let base = PrimeField::new(f.q)?;
                ensure!(f.matrices.len() == f.kk, "expected {} matrices", f.kk);
                let mats = f.matrices.iter().map(|a| matrix_from(base, a)).collect::<Result<Vec<_>>>()?;
                let mut inst = MinRankInstance::new(base, f.m, f.n, f.r, mats)?;
                inst.seed = f.seed;
                if let Some(x) = f.plant {
                    ensure!(x.len() == f.kk && x.iter().all(|&v| v < f.q), "malformed plant");
                    inst.plant = Some(x);
                }
                Ok(Instance::MinRank(inst))
            }
            other => bail!("unknown instance type {:?}", other),
        }
    }

    /// Fingerprint of the planted solution, if any.
    pub fn plant_fingerprint(&self) -> Option<String> {
        match self {
            Instance::Rd(i) => i.plant.as_ref().map(|p| rd_fingerprint(&p.e)),
            Instance::MinRank(i) => i.plant.as_ref().map(|x| minrank_fingerprint(&i.field, x)),
        }
    }
}

/// SHA-256 of the error's coordinates. A recovered error with the same
/// fingerprint equals the plant.
pub fn rd_fingerprint(e: &[ExtElement]) -> String {
    hash(&serde_json::to_vec(&ext_vec(e)).expect("serializable"))
}

/// SHA-256 of the projectively normalized vector.
pub fn minrank_fingerprint(f: &PrimeField, x: &[Fq]) -> String {
    let mut x = x.to_vec();
    projective_normalize(f, &mut x);
    hash(&serde_json::to_vec(&x).expect("serializable"))
}

fn hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Solution {
    pub fn rd(e: &[ExtElement]) -> Self {
        Solution::Rd { format: FORMAT, e: ext_vec(e) }
    }

    pub fn minrank(x: &[Fq]) -> Self {
        Solution::MinRank { format: FORMAT, x: x.to_vec() }
    }
}
