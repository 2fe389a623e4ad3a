//! Batch reproductions: the element-count sweep, the AF/directivity series
//! built from it, and the pattern batch for square arrays.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::array_factor::{linear_af_from_phase, ArrayGeometry, SteeringPhase};
use crate::directivity::{numerical_directivity, DirectivityReport, QuadratureGrid};
use crate::error::{Error, Result};
use crate::pattern::export::{grid_to_csv, series_to_csv, sig9};
use crate::pattern::svg::{export_polar_svg, PolarStyle};
use crate::pattern::{
    main_lobe_width_3db, principal_cut, sample_pattern, CutSpec, ElementPattern, GridSpec,
    DEFAULT_DB_FLOOR,
};
use crate::wave::{to_db, TrigMode};

pub const SWEEP_CSV_HEADER: &str = "n_elements,af_x,af_planar,af_db";

/// Element counts of the reference sweep.
pub const TABLE1_COUNTS: [usize; 13] = [4, 5, 6, 8, 10, 15, 20, 25, 30, 35, 40, 45, 50];
pub const TABLE1_SPACING: f64 = 0.47;
pub const TABLE1_THETA_DEG: f64 = 45.0;

/// Square sizes of the reference pattern batch.
pub const FIG3_SIZES: [usize; 8] = [4, 10, 15, 20, 25, 35, 45, 50];

/// One row of the sweep as listed in the reference table:
/// `(N, af_x, af_xy, af_db)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub n_elements: usize,
    pub af_x: f64,
    pub af_xy: f64,
    pub af_db: f64,
}

const fn row(n_elements: usize, af_x: f64, af_xy: f64, af_db: f64) -> ReferenceRow {
    ReferenceRow {
        n_elements,
        af_x,
        af_xy,
        af_db,
    }
}

pub const REFERENCE_SWEEP: [ReferenceRow; 13] = [
    row(4, 0.9992, 0.9984, -0.0072),
    row(5, 0.9980, 0.9980, -0.0176),
    row(6, 0.9981, 0.9978, -0.0168),
    row(8, 0.9834, 0.9674, -0.1452),
    row(10, 0.9944, 0.9888, -0.0489),
    row(15, 0.9876, 0.9754, -0.1079),
    row(20, 0.9781, 0.9567, -0.1927),
    row(25, 0.9658, 0.9323, -0.3021),
    row(30, 0.9510, 0.9044, -0.4379),
    row(35, 0.9336, 0.8716, -0.5966),
    row(40, 0.9138, 0.8350, -0.7827),
    row(45, 0.8917, 0.7951, -0.9957),
    row(50, 0.8673, 0.7522, -1.2363),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n_elements: usize,
    pub af_x: f64,
    pub af_xy: f64,
    pub af_db: f64,
}

/// Uniform N×N arrays observed at polar angle `theta`, using the line-array
/// phase `ρ = 2π·spacing·cosθ` on both axes.
pub fn table1_sweep(
    element_counts: &[usize],
    spacing: f64,
    theta: f64,
    mode: TrigMode,
) -> Result<Vec<SweepRow>> {
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::domain(format!(
            "spacing must be positive, got {spacing}"
        )));
    }
    if !theta.is_finite() {
        return Err(Error::domain("observation angle must be finite"));
    }
    let rho = std::f64::consts::TAU * spacing * theta.cos();
    element_counts
        .iter()
        .map(|&n| {
            let af_x = linear_af_from_phase(n, rho, mode)?;
            let af_xy = af_x * af_x;
            Ok(SweepRow {
                n_elements: n,
                af_x,
                af_xy,
                af_db: to_db(af_xy),
            })
        })
        .collect()
}

/// The reference configuration: counts 4…50, 0.47λ, θ = 45°.
pub fn default_sweep(mode: TrigMode) -> Result<Vec<SweepRow>> {
    table1_sweep(
        &TABLE1_COUNTS,
        TABLE1_SPACING,
        TABLE1_THETA_DEG.to_radians(),
        mode,
    )
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n_elements,
            sig9(r.af_x),
            sig9(r.af_xy),
            sig9(r.af_db)
        );
    }
    out
}

/// Per-row deviation of computed values from the reference table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowDiff {
    pub n_elements: usize,
    pub computed_af_x: f64,
    pub reference_af_x: f64,
    pub af_x_error: f64,
    pub computed_db: f64,
    pub reference_db: f64,
    pub db_error: f64,
}

/// Pairs computed rows with reference rows by element count.
pub fn compare_with_reference(rows: &[SweepRow]) -> Vec<RowDiff> {
    rows.iter()
        .filter_map(|r| {
            let p = REFERENCE_SWEEP
                .iter()
                .find(|p| p.n_elements == r.n_elements)?;
            Some(RowDiff {
                n_elements: r.n_elements,
                computed_af_x: r.af_x,
                reference_af_x: p.af_x,
                af_x_error: r.af_x - p.af_x,
                computed_db: r.af_db,
                reference_db: p.af_db,
                db_error: r.af_db - p.af_db,
            })
        })
        .collect()
}

pub fn format_row_diffs(diffs: &[RowDiff]) -> String {
    let mut out =
        String::from("    N   af_x(calc)  af_x(ref)     d_af   dB(calc)   dB(ref)     d_dB\n");
    for d in diffs {
        let _ = writeln!(
            out,
            "{:>5} {:>11.5} {:>10.4} {:>+8.5} {:>10.4} {:>9.4} {:>+8.4}",
            d.n_elements,
            d.computed_af_x,
            d.reference_af_x,
            d.af_x_error,
            d.computed_db,
            d.reference_db,
            d.db_error
        );
    }
    out
}

/// Array factor against element count, and array factor against directivity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Series {
    pub af_vs_n: Vec<(f64, f64)>,
    /// `(directivity, af_xy)` pairs, one per row.
    pub af_vs_directivity: Vec<(f64, f64)>,
}

impl Fig2Series {
    pub fn af_vs_n_csv(&self) -> String {
        series_to_csv("n_elements", "af_x", &self.af_vs_n)
    }

    pub fn af_vs_directivity_csv(&self) -> String {
        series_to_csv("directivity", "af_planar", &self.af_vs_directivity)
    }
}

/// Builds both series; directivity is the numerical value of the broadside
/// N×N array at `spacing` for each row.
pub fn fig2_series(rows: &[SweepRow], spacing: f64, grid: QuadratureGrid) -> Result<Fig2Series> {
    if rows.is_empty() {
        return Err(Error::domain("no sweep rows"));
    }
    let directivities = rows
        .par_iter()
        .map(|r| {
            let geom = ArrayGeometry::square(r.n_elements, spacing)?;
            numerical_directivity(
                &geom,
                &SteeringPhase::broadside(),
                ElementPattern::Isotropic,
                grid,
                false,
            )
            .map(|d| d.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Fig2Series {
        af_vs_n: rows.iter().map(|r| (r.n_elements as f64, r.af_x)).collect(),
        af_vs_directivity: rows
            .iter()
            .zip(&directivities)
            .map(|(r, &d)| (d, r.af_xy))
            .collect(),
    })
}

/// Settings for the square-array pattern batch.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig3Options {
    pub sizes: Vec<usize>,
    pub spacing: f64,
    pub element: ElementPattern,
    pub pattern_grid: GridSpec,
    pub quadrature: QuadratureGrid,
    pub cut_phi_deg: f64,
    pub db_floor: f64,
}

impl Default for Fig3Options {
    fn default() -> Self {
        Self {
            sizes: FIG3_SIZES.to_vec(),
            spacing: TABLE1_SPACING,
            element: ElementPattern::Isotropic,
            pattern_grid: GridSpec::default(),
            quadrature: QuadratureGrid::default(),
            cut_phi_deg: 45.0,
            db_floor: DEFAULT_DB_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Relative to the output directory.
    pub path: String,
    pub sha256: String,
    pub size_bytes: u64,
}

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Serialize)]
struct Fig3Record<'a> {
    m_x: usize,
    n_y: usize,
    spacing_wavelengths: f64,
    element: ElementPattern,
    cut_phi_deg: f64,
    main_lobe_width_3db_deg: Option<f64>,
    directivity: &'a DirectivityReport,
    pattern_csv: &'a str,
    cut_svg: &'a str,
}

struct Rendered {
    n: usize,
    files: Vec<(String, Vec<u8>)>,
}

fn render_size(n: usize, opts: &Fig3Options) -> Result<Rendered> {
    let geom = ArrayGeometry::square(n, opts.spacing)?;
    let steer = SteeringPhase::broadside();
    let grid = sample_pattern(
        &geom,
        &steer,
        opts.element,
        opts.pattern_grid,
        TrigMode::Radians,
        opts.db_floor,
    )?;
    let cut = principal_cut(&grid, CutSpec::PhiConst(opts.cut_phi_deg.to_radians()))?;
    let svg = export_polar_svg(
        &cut,
        PolarStyle {
            db_floor: opts.db_floor,
            ..PolarStyle::default()
        },
    )?;
    let hemisphere = !opts.element.is_horizon_symmetric();
    let directivity =
        numerical_directivity(&geom, &steer, opts.element, opts.quadrature, hemisphere)?;

    let csv_name = format!("pattern_{n}x{n}.csv");
    let svg_name = format!("cut_phi{:.0}_{n}x{n}.svg", opts.cut_phi_deg);
    let json_name = format!("meta_{n}x{n}.json");
    let record = Fig3Record {
        m_x: n,
        n_y: n,
        spacing_wavelengths: opts.spacing,
        element: opts.element,
        cut_phi_deg: opts.cut_phi_deg,
        main_lobe_width_3db_deg: main_lobe_width_3db(&cut).map(f64::to_degrees),
        directivity: &directivity,
        pattern_csv: &csv_name,
        cut_svg: &svg_name,
    };
    let json = serde_json::to_string_pretty(&record)?;
    Ok(Rendered {
        n,
        files: vec![
            (csv_name, grid_to_csv(&grid).into_bytes()),
            (svg_name, svg.into_bytes()),
            (json_name, json.into_bytes()),
        ],
    })
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes every file of one size or none of them.
fn commit(dir: &Path, rendered: &Rendered) -> Result<Vec<ManifestEntry>> {
    let mut staged: Vec<(PathBuf, PathBuf)> = Vec::new();
    let cleanup = |staged: &[(PathBuf, PathBuf)]| {
        for (tmp, _) in staged {
            let _ = std::fs::remove_file(tmp);
        }
    };
    for (name, bytes) in &rendered.files {
        let tmp = dir.join(format!(".{name}.partial"));
        if let Err(e) = std::fs::write(&tmp, bytes) {
            cleanup(&staged);
            return Err(Error::io(&tmp, e));
        }
        staged.push((tmp, dir.join(name)));
    }
    for (tmp, dst) in &staged {
        if let Err(e) = std::fs::rename(tmp, dst) {
            cleanup(&staged);
            return Err(Error::io(dst, e));
        }
    }
    Ok(rendered
        .files
        .iter()
        .map(|(name, bytes)| ManifestEntry {
            path: name.clone(),
            sha256: digest(bytes),
            size_bytes: bytes.len() as u64,
        })
        .collect())
}

/// Renders the pattern batch into `output_dir` and writes `manifest.json`.
///
/// Per size: the full grid CSV, a polar SVG of the azimuth cut and a JSON
/// record with the numerical directivity. Sizes render in parallel; the
/// manifest is ordered by size, then by file.
pub fn fig3_batch(opts: &Fig3Options, output_dir: &Path) -> Result<Vec<ManifestEntry>> {
    if opts.sizes.is_empty() {
        return Err(Error::domain("no array sizes requested"));
    }
    std::fs::create_dir_all(output_dir).map_err(|e| Error::io(output_dir, e))?;
    let probe = output_dir.join(".write-probe");
    std::fs::write(&probe, b"").map_err(|e| Error::io(output_dir, e))?;
    let _ = std::fs::remove_file(&probe);

    let mut sizes = opts.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();

    let rendered: Vec<Result<Rendered>> = sizes.par_iter().map(|&n| render_size(n, opts)).collect();

    let mut manifest = Vec::new();
    for r in rendered {
        let r = r?;
        debug_assert!(r.n > 0);
        manifest.extend(commit(output_dir, &r)?);
    }

    let path = output_dir.join(MANIFEST_FILE);
    let json = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}
