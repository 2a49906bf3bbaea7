//! JSON documents. Rationals are strings `"p/q"`, permutations are one-line
//! arrays, `J` is an array of simple-reflection indices, and every top-level
//! document carries the schema version `"v": 1`.

use serde::{Deserialize, Serialize};

use crate::cells::{CellLabel, CellSample, LeviChart};
use crate::group::GroupMatrix;
use crate::linalg::QMat;
use crate::rational::{self, Rational};
use crate::rep::FundamentalRep;
use crate::strata::CompactPoint;
use crate::tnn::MrChart;
use crate::weyl::{Parabolic, PositiveSubexpression, ReducedWord, WeylElement};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub type MatrixJson = Vec<Vec<String>>;

pub fn matrix_to_json(m: &QMat) -> MatrixJson {
    m.to_rows().iter().map(|r| r.iter().map(rational::to_string).collect()).collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<QMat> {
    let parsed: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != width) {
        return Err(Error::Schema("matrix rows must be nonempty and of equal length".into()));
    }
    Ok(QMat::from_rows(parsed))
}

pub fn group_from_json(rows: &MatrixJson) -> Result<GroupMatrix> {
    GroupMatrix::new(matrix_from_json(rows)?)
}

fn rationals_to_json(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::to_string).collect()
}

fn rationals_from_json(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| rational::parse(s)).collect()
}

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(Error::Schema(format!("unsupported schema version {v}")));
    }
    Ok(())
}

fn parabolic(n: usize, members: &[usize]) -> Result<Parabolic> {
    Parabolic::new(n, members.iter().copied())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRecord {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub v: WeylElement,
    pub w: WeylElement,
    pub v2: WeylElement,
    pub w2: WeylElement,
    pub y: WeylElement,
    pub y2: WeylElement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

impl LabelRecord {
    pub fn from_label(label: &CellLabel, dim: Option<usize>) -> Self {
        LabelRecord {
            j: label.j.members().to_vec(),
            v: label.v.clone(),
            w: label.w.clone(),
            v2: label.v2.clone(),
            w2: label.w2.clone(),
            y: label.y.clone(),
            y2: label.y2.clone(),
            dim,
        }
    }

    pub fn to_label(&self) -> Result<CellLabel> {
        let n = self.v.n();
        let label = CellLabel {
            j: parabolic(n, &self.j)?,
            v: self.v.clone(),
            w: self.w.clone(),
            v2: self.v2.clone(),
            w2: self.w2.clone(),
            y: self.y.clone(),
            y2: self.y2.clone(),
        };
        if !label.is_valid() {
            return Err(Error::Schema(format!("invalid label {label}")));
        }
        Ok(label)
    }
}

/// `cells.json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellsFile {
    pub v: u32,
    pub n: usize,
    pub cells: Vec<LabelRecord>,
}

impl CellsFile {
    pub fn new(n: usize, cells: &[(CellLabel, usize)]) -> Self {
        CellsFile {
            v: SCHEMA_VERSION,
            n,
            cells: cells.iter().map(|(l, d)| LabelRecord::from_label(l, Some(*d))).collect(),
        }
    }
}

/// A single label, as read by the sampler.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabelFile {
    pub v: u32,
    pub n: usize,
    pub label: LabelRecord,
}

impl LabelFile {
    pub fn new(label: &CellLabel) -> Self {
        let dim = label.dimension().ok();
        LabelFile { v: SCHEMA_VERSION, n: label.j.n(), label: LabelRecord::from_label(label, dim) }
    }

    pub fn label(&self) -> Result<CellLabel> {
        check_version(self.v)?;
        let label = self.label.to_label()?;
        if label.j.n() != self.n {
            return Err(Error::RankMismatch(label.j.n(), self.n));
        }
        Ok(label)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartJson {
    pub word: Vec<usize>,
    pub v: WeylElement,
    pub coords: Vec<String>,
    pub seed: u64,
}

impl ChartJson {
    pub fn from_chart(chart: &MrChart, seed: u64) -> Self {
        ChartJson {
            word: chart.psub.word.letters().to_vec(),
            v: chart.psub.v().clone(),
            coords: rationals_to_json(&chart.coords),
            seed,
        }
    }

    pub fn to_chart(&self) -> Result<MrChart> {
        let word = ReducedWord::new(self.v.n(), self.word.clone())?;
        let psub = PositiveSubexpression::new(&word, &self.v)?;
        MrChart::new(psub, rationals_from_json(&self.coords)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeviJson {
    pub wminus: WeylElement,
    pub wplus: WeylElement,
    pub aminus: Vec<String>,
    pub torus: Vec<String>,
    pub aplus: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub seed: u64,
    pub label: LabelRecord,
    pub chart1: ChartJson,
    pub levi: LeviJson,
    pub chart2: ChartJson,
}

impl SampleJson {
    pub fn from_sample(s: &CellSample) -> Self {
        SampleJson {
            seed: s.seed,
            label: LabelRecord::from_label(&s.label, s.label.dimension().ok()),
            chart1: ChartJson::from_chart(&s.chart1, s.seed),
            levi: LeviJson {
                wminus: s.levi.wminus.clone(),
                wplus: s.levi.wplus.clone(),
                aminus: rationals_to_json(&s.levi.aminus),
                torus: rationals_to_json(&s.levi.torus),
                aplus: rationals_to_json(&s.levi.aplus),
            },
            chart2: ChartJson::from_chart(&s.chart2, s.seed),
        }
    }

    pub fn to_sample(&self) -> Result<CellSample> {
        Ok(CellSample {
            label: self.label.to_label()?,
            seed: self.seed,
            chart1: self.chart1.to_chart()?,
            chart2: self.chart2.to_chart()?,
            levi: LeviChart {
                wminus: self.levi.wminus.clone(),
                wplus: self.levi.wplus.clone(),
                aminus: rationals_from_json(&self.levi.aminus)?,
                torus: rationals_from_json(&self.levi.torus)?,
                aplus: rationals_from_json(&self.levi.aplus)?,
            },
        })
    }
}

/// A compound matrix together with its basis labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompoundJson {
    pub k: usize,
    pub basis: Vec<Vec<usize>>,
    pub matrix: MatrixJson,
}

impl CompoundJson {
    pub fn new(n: usize, k: usize, m: &QMat) -> Self {
        CompoundJson { k, basis: FundamentalRep { n, k }.basis(), matrix: matrix_to_json(m) }
    }
}

/// A point `{J, a, b, g}` with optional provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointFile {
    pub v: u32,
    pub n: usize,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub a: MatrixJson,
    pub b: MatrixJson,
    pub g: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<CompoundJson>>,
}

impl PointFile {
    pub fn from_point(z: &CompactPoint) -> Self {
        PointFile {
            v: SCHEMA_VERSION,
            n: z.n(),
            j: z.j.members().to_vec(),
            a: matrix_to_json(z.a.mat()),
            b: matrix_to_json(z.b.mat()),
            g: matrix_to_json(z.gamma().mat()),
            sample: None,
            images: None,
        }
    }

    pub fn with_images(mut self, z: &CompactPoint) -> Self {
        let n = z.n();
        self.images =
            Some(z.fundamental_images().iter().enumerate().map(|(k, m)| CompoundJson::new(n, k + 1, m)).collect());
        self
    }

    pub fn point(&self) -> Result<CompactPoint> {
        check_version(self.v)?;
        let j = parabolic(self.n, &self.j)?;
        let (a, b, g) = (group_from_json(&self.a)?, group_from_json(&self.b)?, group_from_json(&self.g)?);
        if [a.n(), b.n(), g.n()].iter().any(|&m| m != self.n) {
            return Err(Error::Schema(format!("matrices must be {0}x{0}", self.n)));
        }
        CompactPoint::from_gamma(j, a, b, &g)
    }
}

/// A curve `g_1 · t(s) · g_2` with exponent vector `c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub v: u32,
    pub g1: MatrixJson,
    pub c: Vec<i64>,
    pub g2: MatrixJson,
}

impl CurveFile {
    pub fn new(g1: &GroupMatrix, c: &[i64], g2: &GroupMatrix) -> Self {
        CurveFile { v: SCHEMA_VERSION, g1: matrix_to_json(g1.mat()), c: c.to_vec(), g2: matrix_to_json(g2.mat()) }
    }

    pub fn parts(&self) -> Result<(GroupMatrix, Vec<i64>, GroupMatrix)> {
        check_version(self.v)?;
        Ok((group_from_json(&self.g1)?, self.c.clone(), group_from_json(&self.g2)?))
    }
}

/// Input of the minor-positivity check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub v: u32,
    pub matrix: MatrixJson,
}

impl MatrixFile {
    pub fn matrix(&self) -> Result<QMat> {
        check_version(self.v)?;
        let m = matrix_from_json(&self.matrix)?;
        if !m.is_square() {
            return Err(Error::Schema("matrix must be square".into()));
        }
        Ok(m)
    }
}

pub fn weyl_from_json(v: &[usize]) -> Result<WeylElement> {
    WeylElement::from_one_line(v)
}

/// Serializes with a trailing newline; output is byte-stable.
pub fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::sample_cell;

    #[test]
    fn point_round_trip() {
        let label = CellLabel::top(&Parabolic::new(3, [1]).unwrap());
        let (sample, z) = sample_cell(&label, 2).unwrap();
        let mut file = PointFile::from_point(&z);
        file.sample = Some(SampleJson::from_sample(&sample));
        let text = to_pretty(&file).unwrap();
        let back: PointFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.point().unwrap(), z);
        let resampled = back.sample.unwrap().to_sample().unwrap();
        assert_eq!(resampled.point(), z);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = r#"{"v":2,"n":2,"J":[],"a":[["1","0"],["0","1"]],"b":[["1","0"],["0","1"]],"g":[["1","0"],["0","1"]]}"#;
        let f: PointFile = serde_json::from_str(bad).unwrap();
        assert!(matches!(f.point(), Err(Error::Schema(_))));
        let singular = r#"{"v":1,"matrix":[["1","1"],["1","1"]]}"#;
        let f: MatrixFile = serde_json::from_str(singular).unwrap();
        assert!(f.matrix().is_ok());
        assert!(serde_json::from_str::<LabelRecord>(r#"{"J":[],"v":[1,1],"w":[1,2],"v2":[1,2],"w2":[1,2],"y":[1,2],"y2":[1,2]}"#).is_err());
    }

    #[test]
    fn cells_file_shape() {
        let cells = crate::cells::enumerate_cells(&Parabolic::full(2)).unwrap();
        let text = to_pretty(&CellsFile::new(2, &cells)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["v"], 1);
        assert_eq!(v["cells"].as_array().unwrap().len(), 4);
        assert_eq!(v["cells"][0]["J"], serde_json::json!([1]));
    }
}
