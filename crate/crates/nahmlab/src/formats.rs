//! JSON and CSV encodings of matrices, paths and reports.
//!
//! Matrices are nested row-major arrays of `[re, im]` pairs. CSV floats use
//! `{:.16e}` (17 significant digits) so that identical runs produce
//! identical bytes.

use std::fmt::Write as _;

use nahmlab_core::gauge::{Flavor, GroupPath};
use nahmlab_core::moment::MomentResidual;
use nahmlab_core::nahm::OrbitReport;
use nahmlab_core::spectral::SpectralData;
use nahmlab_core::{AlgebraPath, AlgebraSpec, ComplexMatrix, Family, Grid, NahmData, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type ComplexJson = [f64; 2];
pub type MatrixJson = Vec<Vec<ComplexJson>>;

pub fn complex_to_json(z: C64) -> ComplexJson {
    [z.re, z.im]
}

pub fn complex_from_json(z: ComplexJson) -> C64 {
    C64::new(z[0], z[1])
}

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.dim()).map(|r| (0..m.dim()).map(|c| complex_to_json(m[(r, c)])).collect()).collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<ComplexMatrix, CliError> {
    let k = rows.len();
    if k == 0 || rows.iter().any(|r| r.len() != k) {
        return Err(CliError::config("matrices must be non-empty and square"));
    }
    let data = rows.iter().flatten().map(|&z| complex_from_json(z)).collect();
    Ok(ComplexMatrix::from_vec(k, data)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyJson {
    Su,
    Sl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub family: FamilyJson,
    pub dim: usize,
}

impl AlgebraJson {
    pub fn to_spec(self) -> Result<AlgebraSpec, CliError> {
        let family = match self.family {
            FamilyJson::Su => Family::Su,
            FamilyJson::Sl => Family::SlComplex,
        };
        Ok(AlgebraSpec::new(family, self.dim)?)
    }
}

impl From<&AlgebraSpec> for AlgebraJson {
    fn from(spec: &AlgebraSpec) -> Self {
        let family = match spec.family {
            Family::Su => FamilyJson::Su,
            Family::SlComplex => FamilyJson::Sl,
        };
        Self { family, dim: spec.dim }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridJson {
    pub s0: f64,
    pub s1: f64,
    pub n: usize,
}

impl GridJson {
    pub fn to_grid(self) -> Result<Grid, CliError> {
        Ok(Grid::new(self.s0, self.s1, self.n)?)
    }
}

impl From<&Grid> for GridJson {
    fn from(g: &Grid) -> Self {
        Self { s0: g.s0, s1: g.s1, n: g.n }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NahmDataJson {
    pub algebra: AlgebraJson,
    pub grid: GridJson,
    #[serde(rename = "T0")]
    pub t0: Vec<MatrixJson>,
    #[serde(rename = "T1")]
    pub t1: Vec<MatrixJson>,
    #[serde(rename = "T2")]
    pub t2: Vec<MatrixJson>,
    #[serde(rename = "T3")]
    pub t3: Vec<MatrixJson>,
}

fn path_to_json(p: &AlgebraPath) -> Vec<MatrixJson> {
    p.values().iter().map(matrix_to_json).collect()
}

fn path_from_json(grid: Grid, values: &[MatrixJson]) -> Result<AlgebraPath, CliError> {
    let mats = values.iter().map(matrix_from_json).collect::<Result<Vec<_>, _>>()?;
    Ok(AlgebraPath::new(grid, mats)?)
}

impl From<&NahmData> for NahmDataJson {
    fn from(d: &NahmData) -> Self {
        let c = d.components();
        Self {
            algebra: d.spec().into(),
            grid: d.grid().into(),
            t0: path_to_json(&c[0]),
            t1: path_to_json(&c[1]),
            t2: path_to_json(&c[2]),
            t3: path_to_json(&c[3]),
        }
    }
}

impl NahmDataJson {
    pub fn to_data(&self) -> Result<NahmData, CliError> {
        let spec = self.algebra.to_spec()?;
        let grid = self.grid.to_grid()?;
        let comps = [&self.t0, &self.t1, &self.t2, &self.t3].map(|v| path_from_json(grid, v));
        let [a, b, c, d] = comps;
        Ok(NahmData::new(spec, [a?, b?, c?, d?])?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlavorJson {
    Unitary,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupPathJson {
    pub grid: GridJson,
    pub flavor: FlavorJson,
    pub values: Vec<MatrixJson>,
}

impl From<&GroupPath> for GroupPathJson {
    fn from(g: &GroupPath) -> Self {
        let flavor = match g.flavor() {
            Flavor::Unitary => FlavorJson::Unitary,
            Flavor::Complex => FlavorJson::Complex,
        };
        Self { grid: g.grid().into(), flavor, values: g.values().iter().map(matrix_to_json).collect() }
    }
}

impl GroupPathJson {
    pub fn to_path(&self) -> Result<GroupPath, CliError> {
        let flavor = match self.flavor {
            FlavorJson::Unitary => Flavor::Unitary,
            FlavorJson::Complex => Flavor::Complex,
        };
        let values = self.values.iter().map(matrix_from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPath::new(self.grid.to_grid()?, values, flavor)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralJson {
    pub k: usize,
    pub a: Vec<Vec<ComplexJson>>,
}

impl From<&SpectralData> for SpectralJson {
    fn from(s: &SpectralData) -> Self {
        Self { k: s.k, a: s.a.iter().map(|c| c.iter().map(|&z| complex_to_json(z)).collect()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReportJson {
    pub charpoly_beta0: Vec<ComplexJson>,
    pub charpoly_target: Vec<ComplexJson>,
    pub max_coeff_dev: f64,
    pub certified: bool,
}

impl From<&OrbitReport> for OrbitReportJson {
    fn from(r: &OrbitReport) -> Self {
        let conv = |v: &[C64]| v.iter().map(|&z| complex_to_json(z)).collect();
        Self {
            charpoly_beta0: conv(&r.charpoly_beta0),
            charpoly_target: conv(&r.charpoly_target),
            max_coeff_dev: r.max_coeff_dev,
            certified: r.certified,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn push_float(out: &mut String, x: f64) {
    let _ = write!(out, ",{x:.16e}");
}

/// One row per node: `s`, then real and imaginary parts of every entry of
/// `T0..T3` in row-major order.
pub fn nahm_csv(d: &NahmData) -> String {
    let k = d.spec().dim;
    let mut out = String::from("s");
    for comp in 0..4 {
        for r in 0..k {
            for c in 0..k {
                let _ = write!(out, ",T{comp}_{r}{c}_re,T{comp}_{r}{c}_im");
            }
        }
    }
    out.push('\n');
    for (i, s) in d.grid().nodes().enumerate() {
        let _ = write!(out, "{s:.16e}");
        for comp in d.components() {
            for z in comp.values()[i].as_slice() {
                push_float(&mut out, z.re);
                push_float(&mut out, z.im);
            }
        }
        out.push('\n');
    }
    out
}

/// `s, ‖μ1‖, ‖μ2‖, ‖μ3‖` per node.
pub fn residual_csv(grid: &Grid, r: &MomentResidual) -> String {
    let mut out = String::from("s,mu1,mu2,mu3\n");
    for (s, row) in grid.nodes().zip(r.rows()) {
        let _ = write!(out, "{s:.16e}");
        for x in &row[1..] {
            push_float(&mut out, *x);
        }
        out.push('\n');
    }
    out
}

/// Per-node spectral coefficients: `s`, then `a_j` coefficient `m` as
/// real/imaginary column pairs.
pub fn coefficient_csv(grid: &Grid, curves: &[SpectralData]) -> String {
    let mut out = String::from("s");
    if let Some(first) = curves.first() {
        for (j, c) in first.a.iter().enumerate() {
            for m in 0..c.len() {
                let _ = write!(out, ",a{}_{m}_re,a{}_{m}_im", j + 1, j + 1);
            }
        }
    }
    out.push('\n');
    for (s, curve) in grid.nodes().zip(curves) {
        let _ = write!(out, "{s:.16e}");
        for z in curve.a.iter().flatten() {
            push_float(&mut out, z.re);
            push_float(&mut out, z.im);
        }
        out.push('\n');
    }
    out
}

/// Two-column CSV of an iteration history.
pub fn history_csv(history: &[f64]) -> String {
    let mut out = String::from("iteration,terminal_deviation\n");
    for (i, x) in history.iter().enumerate() {
        let _ = writeln!(out, "{i},{x:.16e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nahmlab_core::nahm::coth_solution;

    #[test]
    fn matrix_round_trip() {
        let m = ComplexMatrix::from_rows([[(1.0, -2.0), (0.5, 0.0)], [(0.0, 3.0), (-1.0, 0.25)]]);
        let j = matrix_to_json(&m);
        assert_eq!(j[1][0], [0.0, 3.0]);
        assert_eq!(matrix_from_json(&j).unwrap(), m);
        assert!(matrix_from_json(&vec![vec![[0.0, 0.0]; 2]]).is_err());
    }

    #[test]
    fn nahm_data_round_trip() {
        let d = coth_solution(1.0, 0.5, Grid::new(0.0, 1.0, 4).unwrap()).unwrap();
        let text = to_json_string(&NahmDataJson::from(&d));
        assert!(text.contains("\"T3\""));
        let back: NahmDataJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_data().unwrap(), d);
        let csv = nahm_csv(&d);
        assert_eq!(csv.lines().count(), 6);
        assert_eq!(csv.lines().nth(1).unwrap().split(',').count(), 1 + 4 * 8);
    }

    #[test]
    fn csv_floats_have_seventeen_digits() {
        let mut s = String::new();
        push_float(&mut s, 1.0 / 3.0);
        assert_eq!(s, ",3.3333333333333331e-1");
    }
}
