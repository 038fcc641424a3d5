//! JSON serialization: the input bundle (algebra + optional J, metric,
//! hypercomplex triple), data tuples, and analysis documents.
//!
//! Rationals are strings `"p/q"` (or `"p"`), matrices are dense row-major
//! arrays of such strings, and bracket tables list `{i, j, coeffs}` entries
//! with 1-based `i < j`; omitted pairs are zero brackets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexStructure, JClassification};
use crate::construct::{Complex2StepData, Complex3StepData};
use crate::error::{Error, Result};
use crate::hermitian::{CenterSamplingRecord, HypercomplexStructure, MetricComplexTriple};
use crate::lie::{AlgebraReport, BracketTable, LieAlgebra, MetricLieAlgebra};
use crate::linalg::RMatrix;
use crate::rational::{parse_rational, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

/// One input file: an algebra plus whatever structures are present. Missing
/// parts simply disable the corresponding checks.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Bundle {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "J")]
    pub j: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypercomplex: Option<[Vec<Vec<String>>; 3]>,
}

pub fn matrix_to_json(m: &RMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Result<RMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Json("ragged matrix".into()));
    }
    let mut out = RMatrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            out.set(i, j, parse_rational(s)?);
        }
    }
    Ok(out)
}

pub fn vector_to_json(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn vector_from_json(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn algebra_to_bundle(l: &LieAlgebra) -> Bundle {
    Bundle {
        dim: l.dim(),
        brackets: l
            .brackets()
            .iter()
            .map(|(&(i, j), v)| BracketEntry {
                i: i + 1,
                j: j + 1,
                coeffs: vector_to_json(v),
            })
            .collect(),
        name: l.name().map(|s| s.to_string()),
        ..Bundle::default()
    }
}

pub fn algebra_from_bundle(b: &Bundle) -> Result<LieAlgebra> {
    let mut table: BracketTable = BTreeMap::new();
    for e in &b.brackets {
        if e.i == 0 || e.j == 0 {
            return Err(Error::Json("bracket indices are 1-based".into()));
        }
        table.insert((e.i - 1, e.j - 1), vector_from_json(&e.coeffs)?);
    }
    LieAlgebra::new(b.dim, table, b.name.clone())
}

/// The decoded content of a bundle.
pub struct DecodedBundle {
    pub algebra: LieAlgebra,
    pub j: Option<ComplexStructure>,
    pub metric: Option<RMatrix>,
    pub hypercomplex: Option<HypercomplexStructure>,
}

pub fn decode_bundle(b: &Bundle) -> Result<DecodedBundle> {
    let algebra = algebra_from_bundle(b)?;
    let j = match &b.j {
        Some(m) => Some(ComplexStructure::new(matrix_from_json(m)?)?),
        None => None,
    };
    let metric = match &b.metric {
        Some(m) => Some(matrix_from_json(m)?),
        None => None,
    };
    let hypercomplex = match &b.hypercomplex {
        Some([a, b2, c]) => Some(HypercomplexStructure::new(
            ComplexStructure::new(matrix_from_json(a)?)?,
            ComplexStructure::new(matrix_from_json(b2)?)?,
            ComplexStructure::new(matrix_from_json(c)?)?,
        )),
        None => None,
    };
    Ok(DecodedBundle {
        algebra,
        j,
        metric,
        hypercomplex,
    })
}

pub fn triple_to_bundle(t: &MetricComplexTriple) -> Bundle {
    let mut b = algebra_to_bundle(&t.algebra);
    b.j = Some(matrix_to_json(t.j.matrix()));
    b.metric = Some(matrix_to_json(&t.gram));
    b
}

pub fn metric_algebra_to_bundle(m: &MetricLieAlgebra) -> Bundle {
    let mut b = algebra_to_bundle(&m.algebra);
    b.metric = Some(matrix_to_json(&m.gram));
    b
}

// ---------------------------------------------------------------------------
// Data tuples
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoStepDataJson {
    pub n0: Bundle,
    pub j_v: Vec<Vec<String>>,
    pub z1_dim: usize,
    pub psi: Vec<Vec<Vec<String>>>,
}

pub fn two_step_data_to_json(d: &Complex2StepData) -> TwoStepDataJson {
    TwoStepDataJson {
        n0: metric_algebra_to_bundle(&d.n0),
        j_v: matrix_to_json(&d.j_v),
        z1_dim: d.z1_dim,
        psi: d.psi.iter().map(matrix_to_json).collect(),
    }
}

pub fn two_step_data_from_json(j: &TwoStepDataJson) -> Result<Complex2StepData> {
    let algebra = algebra_from_bundle(&j.n0)?;
    let gram = match &j.n0.metric {
        Some(m) => matrix_from_json(m)?,
        None => RMatrix::identity(algebra.dim()),
    };
    Ok(Complex2StepData {
        n0: MetricLieAlgebra::new(algebra, gram)?,
        j_v: matrix_from_json(&j.j_v)?,
        z1_dim: j.z1_dim,
        psi: j
            .psi
            .iter()
            .map(|m| matrix_from_json(m))
            .collect::<Result<_>>()?,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThreeStepDataJson {
    pub dim_v: usize,
    pub j_v: Vec<Vec<String>>,
    pub dim_q: usize,
    pub j_0: Vec<Vec<String>>,
    pub dim_z1: usize,
    pub dim_z2: usize,
    pub j_1: Vec<Vec<String>>,
    pub alpha: Vec<FormEntry>,
    pub mu: Vec<FormEntry>,
    pub rho: Vec<Vec<Vec<String>>>,
}

pub fn three_step_data_to_json(d: &Complex3StepData) -> ThreeStepDataJson {
    let form = |m: &BTreeMap<(usize, usize), Vec<Rational>>| -> Vec<FormEntry> {
        m.iter()
            .map(|(&(i, j), v)| FormEntry {
                i: i + 1,
                j: j + 1,
                coeffs: vector_to_json(v),
            })
            .collect()
    };
    ThreeStepDataJson {
        dim_v: d.dim_v,
        j_v: matrix_to_json(&d.j_v),
        dim_q: d.dim_q,
        j_0: matrix_to_json(&d.j_0),
        dim_z1: d.dim_z1,
        dim_z2: d.dim_z2,
        j_1: matrix_to_json(&d.j_1),
        alpha: form(&d.alpha),
        mu: form(&d.mu),
        rho: d.rho.iter().map(matrix_to_json).collect(),
    }
}

pub fn three_step_data_from_json(j: &ThreeStepDataJson) -> Result<Complex3StepData> {
    let form = |entries: &[FormEntry]| -> Result<BTreeMap<(usize, usize), Vec<Rational>>> {
        let mut out = BTreeMap::new();
        for e in entries {
            if e.i == 0 || e.j == 0 {
                return Err(Error::Json("form indices are 1-based".into()));
            }
            out.insert((e.i - 1, e.j - 1), vector_from_json(&e.coeffs)?);
        }
        Ok(out)
    };
    Ok(Complex3StepData {
        dim_v: j.dim_v,
        j_v: matrix_from_json(&j.j_v)?,
        dim_q: j.dim_q,
        j_0: matrix_from_json(&j.j_0)?,
        dim_z1: j.dim_z1,
        dim_z2: j.dim_z2,
        j_1: matrix_from_json(&j.j_1)?,
        alpha: form(&j.alpha)?,
        mu: form(&j.mu)?,
        rho: j
            .rho
            .iter()
            .map(|m| matrix_from_json(m))
            .collect::<Result<_>>()?,
    })
}

// ---------------------------------------------------------------------------
// Analysis documents
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct MetricChecks {
    pub hermitian: bool,
    pub pluriclosed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_sampling: Option<CenterSamplingRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub input: String,
    pub seed: u64,
    pub samples: usize,
    pub version: String,
}

/// Deterministic analysis output for a bundle: invariant fingerprints plus
/// whatever structure checks apply.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisDocument {
    pub algebra: AlgebraReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<JClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricChecks>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hkt: Option<bool>,
    /// Non-central complex abelian factors are outside the detector's scope;
    /// this note flags when the question is conceivable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub provenance: Provenance,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::heisenberg;

    #[test]
    fn bundle_round_trip() {
        let h3 = heisenberg(1).unwrap();
        let b = algebra_to_bundle(&h3);
        let s = serde_json::to_string(&b).unwrap();
        let b2: Bundle = serde_json::from_str(&s).unwrap();
        let l2 = algebra_from_bundle(&b2).unwrap();
        assert_eq!(h3.brackets(), l2.brackets());
    }

    #[test]
    fn triple_bundle_round_trip() {
        let t = crate::construct::standard_heisenberg_abelian_triple(0, 1).unwrap();
        let b = triple_to_bundle(&t);
        let s = serde_json::to_string_pretty(&b).unwrap();
        let decoded = decode_bundle(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(decoded.algebra.brackets(), t.algebra.brackets());
        assert_eq!(decoded.j.unwrap(), t.j);
        assert_eq!(decoded.metric.unwrap(), t.gram);
    }

    #[test]
    fn two_step_data_json_round_trip() {
        let (data, _) =
            crate::construct::example_2step(2, crate::construct::ExampleTwoStepVariant::Generic)
                .unwrap();
        let j = two_step_data_to_json(&data);
        let s = serde_json::to_string(&j).unwrap();
        let back = two_step_data_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(data, back);
    }

    #[test]
    fn three_step_data_json_round_trip() {
        let d = crate::construct::example_3step(
            3,
            &[crate::rational::rat(1)],
            &[crate::rational::rat(0)],
        )
        .unwrap();
        let j = three_step_data_to_json(&d);
        let s = serde_json::to_string(&j).unwrap();
        let back = three_step_data_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn malformed_rational_rejected() {
        assert!(matrix_from_json(&[vec!["x".into()]]).is_err());
    }
}
