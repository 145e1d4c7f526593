//! Versioned JSON records written by the commands.

use serde::{Deserialize, Serialize};
use zonokit_core::congruence::{signed_permutation, CongruenceWitness, SignVector};
use zonokit_core::tiling::{Tiling, TilingReport};
use zonokit_core::Matrix;

use crate::format::MatrixRecord;

pub const FORMAT_VERSION: u32 = 1;

/// Column `i` of `B` equals `signs[i] · q · a[sigma[i]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub format_version: u32,
    pub sigma: Vec<usize>,
    pub signs: Vec<i8>,
    pub q: MatrixRecord,
    pub residual: f64,
}

impl WitnessRecord {
    pub fn new(w: &CongruenceWitness, residual: f64) -> Self {
        WitnessRecord {
            format_version: FORMAT_VERSION,
            sigma: w.sigma.clone(),
            signs: w.signs.entries().to_vec(),
            q: MatrixRecord::from_matrix(&w.q),
            residual,
        }
    }
}

/// Relative residual `‖B − Q A Σ J‖ / ‖B‖` of a stored witness; fails on
/// malformed records.
pub fn verify_witness(a: &Matrix, b: &Matrix, w: &WitnessRecord) -> Result<f64, String> {
    let k = a.cols();
    if w.sigma.len() != k || w.signs.len() != k || b.cols() != k {
        return Err("witness size does not match the matrices".into());
    }
    let mut seen = vec![false; k];
    for &s in &w.sigma {
        if s >= k || std::mem::replace(&mut seen[s], true) {
            return Err("sigma is not a permutation".into());
        }
    }
    SignVector::new(w.signs.clone()).ok_or("signs must be ±1")?;
    let q = w.q.to_matrix()?;
    if q.rows() != b.rows() || q.cols() != a.rows() {
        return Err("q has the wrong shape".into());
    }
    let arranged = signed_permutation(a, &w.sigma, &w.signs);
    let diff = q.mul(&arranged).sub(b).frobenius_norm();
    Ok(diff / b.frobenius_norm().max(f64::MIN_POSITIVE))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileRecord {
    pub columns: Vec<usize>,
    pub translation: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub passed: bool,
    pub volume: f64,
    pub tile_volume_sum: f64,
    pub volume_ok: bool,
    pub duplicates: Vec<Vec<usize>>,
    pub missing: Vec<Vec<usize>>,
    pub degenerate: Vec<usize>,
    pub overlaps: Vec<(usize, usize)>,
    pub outside: Vec<usize>,
}

impl From<&TilingReport> for ReportRecord {
    fn from(r: &TilingReport) -> Self {
        ReportRecord {
            passed: r.passed(),
            volume: r.volume,
            tile_volume_sum: r.tile_volume_sum,
            volume_ok: r.volume_ok,
            duplicates: r.duplicates.clone(),
            missing: r.missing.clone(),
            degenerate: r.degenerate.clone(),
            overlaps: r.overlaps.clone(),
            outside: r.outside.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingRecord {
    pub format_version: u32,
    pub matrix: MatrixRecord,
    pub order: Vec<usize>,
    pub tiles: Vec<TileRecord>,
    pub report: ReportRecord,
}

impl TilingRecord {
    pub fn new(a: &Matrix, t: &Tiling, report: &TilingReport) -> Self {
        TilingRecord {
            format_version: FORMAT_VERSION,
            matrix: MatrixRecord::from_matrix(a),
            order: t.order.clone(),
            tiles: t
                .tiles
                .iter()
                .map(|tile| TileRecord {
                    columns: tile.columns.clone(),
                    translation: tile.translation.clone(),
                })
                .collect(),
            report: report.into(),
        }
    }
}

/// An exterior root; readable as a matrix file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub format_version: u32,
    #[serde(flatten)]
    pub root: MatrixRecord,
    pub residual: f64,
    /// Column signs applied to the input before taking the root.
    pub signs: Vec<i8>,
}
