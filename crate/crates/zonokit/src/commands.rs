//! Subcommand logic, independent of argument parsing and file IO.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zonokit_core::congruence::congruent_zonotopes;
use zonokit_core::numkit::{self, Tolerance};
use zonokit_core::rigidity::exterior_root;
use zonokit_core::subsets::combinations;
use zonokit_core::symmetry::{
    central_center, dedup_points, loop_symmetric, sort_ccw, zonogon_recognize, Failure,
    SegmentLoop, SymmetryReport,
};
use zonokit_core::tiling::{tile_zonotope, validate_tiling};
use zonokit_core::{Error, Matrix, Vector, Zonotope};

use crate::format::MatrixRecord;
use crate::off::{format_g, write_off, zonotope_mesh};
use crate::records::{verify_witness, RootRecord, TilingRecord, WitnessRecord, FORMAT_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_RANK: i32 = 3;
pub const EXIT_NO_ROOT: i32 = 4;
pub const EXIT_MESH_RANK: i32 = 5;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

/// Accepted relative residual for written witnesses.
pub const WITNESS_RESIDUAL: f64 = 1e-8;

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub tol: Tolerance,
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    MeshRank(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::MeshRank(_) => EXIT_MESH_RANK,
            CliError::Core(e) => match e {
                Error::Capacity { .. } => EXIT_CAPACITY,
                Error::Degenerate { .. } | Error::Singular => EXIT_RANK,
                Error::NoRealRoot { .. } => EXIT_NO_ROOT,
                Error::Inconsistent(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::MeshRank(m) => f.write_str(m),
            CliError::Core(Error::NoRealRoot { det }) => write!(
                f,
                "no real exterior root: the re-signed target has determinant {det}, and an even root of a negative number is not real"
            ),
            CliError::Core(Error::Singular) => {
                f.write_str("input is singular; the exterior root needs a nonsingular square matrix")
            }
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// A finished command: exit code, human summary and an optional file body.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub summary: String,
    pub payload: Option<String>,
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn point(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| format_g(x)).collect();
    format!("({})", parts.join(", "))
}

pub fn volume(a: &Matrix, samples: Option<usize>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let z = Zonotope::new(a.clone(), cfg.tol)?;
    let (n, r, k) = (z.dim(), z.rank(), z.generator_count());
    let v = z.volume().value;
    let total = combinations(k, r).count();
    let independent = combinations(k, r)
        .filter(|s| numkit::rank(&a.select_columns(s), &cfg.tol) == r)
        .count();
    let mut summary = String::new();
    if r < n {
        summary.push_str(&format!(
            "warning: rank {r} is below the dimension {n}; reporting {r}-dimensional volume\n"
        ));
    }
    summary.push_str(&format!("rank {r}, volume {}, {independent}/{total} subsets independent\n", format_g(v)));
    if let Some(count) = samples {
        if r < n {
            summary.push_str("monte carlo skipped: zonotope is not full-dimensional\n");
        } else {
            let est = monte_carlo_volume(&z, count, cfg.seed)?;
            summary.push_str(&format!(
                "monte carlo estimate {} from {count} samples (seed {})\n",
                format_g(est),
                cfg.seed
            ));
        }
    }
    Ok(Outcome {
        code: EXIT_OK,
        summary,
        payload: None,
    })
}

/// Hit-or-miss estimate over the bounding box of the vertices.
fn monte_carlo_volume(z: &Zonotope, samples: usize, seed: u64) -> Result<f64, CliError> {
    let vertices = z.vertices()?;
    let n = z.dim();
    let lo: Vec<f64> = (0..n).map(|i| vertices.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..n).map(|i| vertices.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(l, h)| h - l).product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    let mut p = vec![0.0; n];
    for _ in 0..samples {
        for i in 0..n {
            p[i] = rng.gen_range(lo[i]..=hi[i]);
        }
        if z.contains(&p)? {
            hits += 1;
        }
    }
    Ok(box_volume * hits as f64 / samples.max(1) as f64)
}

pub fn congruent(a: &Matrix, b: &Matrix, cfg: &RunConfig) -> Result<Outcome, CliError> {
    if a.cols() != b.cols() {
        return Err(CliError::Usage(format!(
            "column counts differ: {} and {}",
            a.cols(),
            b.cols()
        )));
    }
    let Some(w) = congruent_zonotopes(a, b, &cfg.tol)? else {
        return Ok(Outcome {
            code: EXIT_NEGATIVE,
            summary: "not congruent\n".into(),
            payload: None,
        });
    };
    let record = WitnessRecord::new(&w, 0.0);
    let residual = verify_witness(a, b, &record)
        .map_err(|_| CliError::Core(Error::Inconsistent("witness record is malformed")))?;
    if residual > WITNESS_RESIDUAL {
        return Err(CliError::Core(Error::Inconsistent("witness residual")));
    }
    let record = WitnessRecord { residual, ..record };
    Ok(Outcome {
        code: EXIT_OK,
        summary: format!(
            "congruent: sigma {:?}, signs {:?}, residual {}\n",
            record.sigma,
            record.signs,
            format_g(residual)
        ),
        payload: Some(json(&record)),
    })
}

pub fn tile(a: &Matrix, order: Option<&[usize]>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let z = Zonotope::new(a.clone(), cfg.tol)?;
    let natural: Vec<usize> = (0..z.generator_count()).collect();
    let order = order.unwrap_or(&natural);
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != natural {
        return Err(CliError::Usage(format!(
            "--order must be a permutation of 0..{}",
            natural.len()
        )));
    }
    let t = tile_zonotope(&z, order)?;
    let report = validate_tiling(&z, &t, &cfg.tol);
    let record = TilingRecord::new(a, &t, &report);
    let verdict = if report.passed() { "passed" } else { "FAILED" };
    Ok(Outcome {
        code: if report.passed() { EXIT_OK } else { EXIT_NEGATIVE },
        summary: format!(
            "{} tiles, tile volume sum {}, zonotope volume {}, validation {verdict}\n",
            t.tiles.len(),
            format_g(report.tile_volume_sum),
            format_g(report.volume)
        ),
        payload: Some(json(&record)),
    })
}

pub fn root(b: &Matrix, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let r = exterior_root(b, &cfg.tol)?;
    let record = RootRecord {
        format_version: FORMAT_VERSION,
        root: MatrixRecord::from_matrix(&r.root),
        residual: r.residual,
        signs: r.signs.entries().to_vec(),
    };
    let mut summary = format!("residual {}\n", format_g(r.residual));
    if r.signs.entries().iter().any(|&s| s < 0) {
        summary.push_str(&format!("input columns re-signed by {:?}\n", r.signs.entries()));
    }
    if !r.alternatives.is_empty() {
        summary.push_str("the negated matrix has the same compound\n");
    }
    Ok(Outcome {
        code: EXIT_OK,
        summary,
        payload: Some(json(&record)),
    })
}

pub fn mesh(a: &Matrix, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let z = Zonotope::new(a.clone(), cfg.tol)?;
    if z.dim() != 3 || z.rank() != 3 {
        return Err(CliError::MeshRank(format!(
            "mesh export needs a rank-3 zonotope in R^3, got rank {} in R^{}",
            z.rank(),
            z.dim()
        )));
    }
    let m = zonotope_mesh(&z)?;
    Ok(Outcome {
        code: EXIT_OK,
        summary: format!("{} vertices, {} faces\n", m.vertices.len(), m.faces.len()),
        payload: Some(write_off(&m)),
    })
}

fn describe(report: &SymmetryReport) -> String {
    if report.symmetric {
        let c = report.center.as_deref().unwrap_or(&[]);
        return format!("symmetric, center {}\n", point(c));
    }
    let why = match &report.failure {
        Some(Failure::Unmatched { point: p, missing }) => {
            format!("{} has no partner {}", point(p), point(missing))
        }
        Some(Failure::OddSegmentCount { count }) => format!("{count} segments"),
        Some(Failure::Segment {
            index,
            displacement,
            opposite,
        }) => format!(
            "segment {index} {} is not reversed by {}",
            point(displacement),
            point(opposite)
        ),
        None => "no candidate center".into(),
    };
    format!("not symmetric: {why}\n")
}

/// Rows of `points` are points; with `as_loop` they are consecutive
/// vertices of a closed loop.
pub fn symmetry(points: &Matrix, as_loop: bool, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let pts: Vec<Vector> = (0..points.rows())
        .map(|i| (0..points.cols()).map(|j| points[(i, j)]).collect())
        .collect();
    let report = if as_loop {
        loop_symmetric(&SegmentLoop::from_polygon(&pts, &cfg.tol)?, &cfg.tol)
    } else {
        central_center(&pts, &cfg.tol)?
    };
    let mut summary = describe(&report);
    if !as_loop && points.cols() == 2 && pts.len() >= 3 {
        let polygon = sort_ccw(&dedup_points(&pts, &cfg.tol))?;
        match zonogon_recognize(&polygon, &cfg.tol) {
            Ok(Some(gens)) => {
                let listed: Vec<String> = gens.iter().map(|g| point(g)).collect();
                summary.push_str(&format!("zonogon generators: {}\n", listed.join(" ")));
            }
            Ok(None) | Err(Error::NotConvex { .. }) => summary.push_str("zonogon: absent\n"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        code: if report.symmetric { EXIT_OK } else { EXIT_NEGATIVE },
        summary,
        payload: None,
    })
}
