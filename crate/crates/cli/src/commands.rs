//! Thin adapters: parse flags into library types, call the library,
//! serialize the result.

use std::fmt::Write as _;
use std::io::Write as _;

use planar_array::array_factor::visible_order_bound;
use planar_array::directivity::{
    beam_broadening_factor, linear_directivity_closed_form, numerical_directivity,
    planar_directivity_closed_form, ChebyshevDirectivityInput, QuadratureGrid,
};
use planar_array::experiments::{
    compare_with_reference, fig3_batch, format_row_diffs, sweep_to_csv, table1_sweep, Fig3Options,
};
use planar_array::pattern::export::{
    cut_to_csv, cut_to_json, grid_to_csv, grid_to_json, write_file,
};
use planar_array::pattern::svg::{export_polar_svg, PolarStyle};
use planar_array::wave::{amplitude_to_db, Wave};
use planar_array::{
    null_angles, peak_angles, planar_af, principal_cut, sample_pattern, steering_phases,
    ArrayGeometry, CutSpec, Direction, ElementPattern, GridSpec, LobeKind, LobeReport,
    SteeringConvention, SteeringPhase, TrigMode,
};
use serde_json::json;

use crate::args::*;
use crate::CliError;

type CmdResult = Result<(), CliError>;

/// Converts spacing/length flags to wavelengths.
struct Units {
    wave: Option<Wave>,
}

impl Units {
    fn from_global(g: &GlobalOpts) -> Result<Self, CliError> {
        let wave = match (g.lambda, g.freq) {
            (Some(l), None) => Some(Wave::from_wavelength(l)?),
            (None, Some(f)) => Some(Wave::from_frequency(f)?),
            (None, None) => None,
            (Some(_), Some(_)) => {
                return Err(CliError::usage(
                    "--lambda and --freq are mutually exclusive",
                ))
            }
        };
        match (g.spacing_unit, wave) {
            (SpacingUnit::Meters, None) => Err(CliError::usage(
                "--spacing-unit meters requires --lambda or --freq",
            )),
            (SpacingUnit::Wavelengths, Some(_)) => Err(CliError::usage(
                "--lambda/--freq only apply with --spacing-unit meters",
            )),
            (_, wave) => Ok(Self { wave }),
        }
    }

    fn len(&self, v: f64) -> f64 {
        match self.wave {
            Some(w) => w.meters_to_wavelengths(v),
            None => v,
        }
    }
}

fn mode(g: &GlobalOpts) -> TrigMode {
    if g.compat {
        TrigMode::PaperDegreeCompat
    } else {
        TrigMode::Radians
    }
}

fn reject_compat(g: &GlobalOpts, cmd: &str) -> CmdResult {
    if g.compat {
        return Err(CliError::usage(format!(
            "--compat does not apply to `{cmd}`"
        )));
    }
    Ok(())
}

fn element(e: Element) -> ElementPattern {
    match e {
        Element::Isotropic => ElementPattern::Isotropic,
        Element::Monopole => ElementPattern::QuarterWaveMonopole,
    }
}

fn geometry(a: &ArrayArgs, u: &Units) -> Result<ArrayGeometry, CliError> {
    Ok(ArrayGeometry::new(a.mx, a.ny, u.len(a.ax), u.len(a.ay))?)
}

fn steering(geom: &ArrayGeometry, s: &SteerTarget) -> Result<SteeringPhase, CliError> {
    let convention = if s.paper_literal {
        SteeringConvention::PaperLiteral
    } else {
        SteeringConvention::Physical
    };
    match (s.steer_theta, s.steer_phi) {
        (Some(t), Some(p)) => Ok(steering_phases(
            geom,
            &Direction::from_degrees(t, p)?,
            convention,
        )),
        _ => Ok(SteeringPhase::broadside()),
    }
}

fn emit(g: &GlobalOpts, body: &str) -> CmdResult {
    match &g.out {
        Some(path) => Ok(write_file(path, body.as_bytes())?),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| {
                    CliError::Lib(planar_array::Error::Io {
                        path: "<stdout>".into(),
                        source: e,
                    })
                })
        }
    }
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

pub fn af(g: &GlobalOpts, a: &AfArgs) -> CmdResult {
    let u = Units::from_global(g)?;
    let geom = geometry(&a.array, &u)?;
    let steer = steering(&geom, &a.steer)?;
    let dir = Direction::from_degrees(a.theta, a.phi)?;
    let amp = planar_af(&geom, &steer, &dir, mode(g));
    let db = amplitude_to_db(amp);
    let body = if g.json {
        json_line(
            json!({ "amplitude": amp, "db": if db.is_finite() { json!(db) } else { json!(null) } }),
        )
    } else {
        format!("amplitude {amp:.9}\ndb {db:.6}\n")
    };
    emit(g, &body)
}

fn sample(
    g: &GlobalOpts,
    array: &ArrayArgs,
    steer: &SteerTarget,
    grid: &GridArgs,
) -> Result<planar_array::PatternGrid, CliError> {
    let u = Units::from_global(g)?;
    let geom = geometry(array, &u)?;
    let steer = steering(&geom, steer)?;
    Ok(sample_pattern(
        &geom,
        &steer,
        element(grid.element),
        GridSpec {
            n_theta: grid.n_theta,
            n_phi: grid.n_phi,
        },
        mode(g),
        grid.db_floor,
    )?)
}

pub fn pattern(g: &GlobalOpts, a: &PatternArgs) -> CmdResult {
    let grid = sample(g, &a.array, &a.steer, &a.grid)?;
    let body = if g.json {
        grid_to_json(&grid)?
    } else {
        grid_to_csv(&grid)
    };
    emit(g, &body)
}

pub fn cut(g: &GlobalOpts, a: &CutArgs) -> CmdResult {
    let grid = sample(g, &a.array, &a.steer, &a.grid)?;
    let spec = match (a.cut_phi, a.cut_theta) {
        (Some(p), None) => CutSpec::PhiConst(p.to_radians()),
        (None, Some(t)) => CutSpec::ThetaConst(t.to_radians()),
        _ => {
            return Err(CliError::usage(
                "give exactly one of --cut-phi or --cut-theta",
            ))
        }
    };
    let cut = principal_cut(&grid, spec)?;
    let format = if g.json { CutFormat::Json } else { a.format };
    let body = match format {
        CutFormat::Csv => cut_to_csv(&cut),
        CutFormat::Json => cut_to_json(&cut)?,
        CutFormat::Svg => export_polar_svg(
            &cut,
            PolarStyle {
                radius_px: a.radius_px,
                db_floor: a.grid.db_floor,
            },
        )?,
    };
    emit(g, &body)
}

pub fn sweep(g: &GlobalOpts, a: &SweepArgs) -> CmdResult {
    let u = Units::from_global(g)?;
    let rows = table1_sweep(&a.counts, u.len(a.spacing), a.theta.to_radians(), mode(g))?;
    if a.compare {
        eprint!("{}", format_row_diffs(&compare_with_reference(&rows)));
    }
    let body = if g.json {
        json_line(serde_json::to_value(&rows).map_err(planar_array::Error::from)?)
    } else {
        sweep_to_csv(&rows)
    };
    emit(g, &body)
}

fn lobe_table(lobes: &[LobeReport], g: &GlobalOpts) -> String {
    let kind = |k: LobeKind| match k {
        LobeKind::Null => "null",
        LobeKind::Peak => "peak",
        LobeKind::GratingLobe => "grating_lobe",
    };
    if g.json {
        let rows: Vec<_> = lobes
            .iter()
            .map(|l| {
                json!({
                    "kind": kind(l.kind),
                    "index": l.index,
                    "theta_deg": l.theta.to_degrees(),
                    "arccos_argument": l.arccos_argument,
                })
            })
            .collect();
        return json_line(json!(rows));
    }
    let mut out = String::from("kind,index,theta_deg,arccos_argument\n");
    for l in lobes {
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.9}",
            kind(l.kind),
            l.index,
            l.theta.to_degrees(),
            l.arccos_argument
        );
    }
    out
}

pub fn nulls(g: &GlobalOpts, a: &LobeArgs) -> CmdResult {
    reject_compat(g, "nulls")?;
    let u = Units::from_global(g)?;
    let lobes = null_angles(a.n, u.len(a.a), a.alpha.to_radians())?;
    emit(g, &lobe_table(&lobes, g))
}

pub fn peaks(g: &GlobalOpts, a: &PeakArgs) -> CmdResult {
    reject_compat(g, "peaks")?;
    let u = Units::from_global(g)?;
    let spacing = u.len(a.lobe.a);
    let alpha = a.lobe.alpha.to_radians();
    let m_max = a
        .m_max
        .unwrap_or_else(|| visible_order_bound(spacing, alpha));
    let lobes = peak_angles(a.lobe.n, spacing, alpha, m_max)?;
    emit(g, &lobe_table(&lobes, g))
}

pub fn directivity(g: &GlobalOpts, a: &DirectivityArgs) -> CmdResult {
    reject_compat(g, "directivity")?;
    let u = Units::from_global(g)?;
    let body = match a.method {
        Method::ClosedForm => {
            let f = match a.f {
                Some(f) => f,
                None => beam_broadening_factor(a.r0)?,
            };
            let dx = linear_directivity_closed_form(&ChebyshevDirectivityInput::new(
                a.r0,
                u.len(a.lx),
                u.len(a.ax),
                f,
            )?);
            let dy = linear_directivity_closed_form(&ChebyshevDirectivityInput::new(
                a.r0,
                u.len(a.ly),
                u.len(a.ay),
                f,
            )?);
            let d0 = planar_directivity_closed_form(
                dx.value,
                dy.value,
                a.theta0.to_radians(),
                a.include_pi,
            )?;
            if g.json {
                json_line(json!({ "broadening_f": f, "d_x": dx, "d_y": dy, "d_0": d0 }))
            } else {
                format!(
                    "broadening_f {f:.9}\nd_x {:.9}\nd_y {:.9}\nd_0 {:.9}\nd_0_dbi {:.6}\n",
                    dx.value, dy.value, d0.value, d0.value_dbi
                )
            }
        }
        Method::Numerical => {
            let (Some(mx), Some(ny)) = (a.mx, a.ny) else {
                return Err(CliError::usage("--method numerical requires --mx and --ny"));
            };
            let geom = ArrayGeometry::new(mx, ny, u.len(a.ax), u.len(a.ay))?;
            let steer = steering(&geom, &a.steer)?;
            let grid = QuadratureGrid::new(a.n_theta, a.n_phi)?;
            let r = numerical_directivity(&geom, &steer, element(a.element), grid, a.hemisphere)?;
            if g.json {
                json_line(json!(r))
            } else {
                format!(
                    "directivity {:.9}\ndirectivity_dbi {:.6}\n",
                    r.value, r.value_dbi
                )
            }
        }
    };
    emit(g, &body)
}

pub fn steer(g: &GlobalOpts, a: &SteerArgs) -> CmdResult {
    reject_compat(g, "steer")?;
    let u = Units::from_global(g)?;
    let geom = ArrayGeometry::new(1, 1, u.len(a.ax), u.len(a.ay))?;
    let convention = if a.paper_literal {
        SteeringConvention::PaperLiteral
    } else {
        SteeringConvention::Physical
    };
    let s = steering_phases(&geom, &Direction::from_degrees(a.theta, a.phi)?, convention);
    let body = if g.json {
        json_line(json!({
            "omega_x_rad": s.omega_x,
            "omega_y_rad": s.omega_y,
            "omega_x_deg": s.omega_x.to_degrees(),
            "omega_y_deg": s.omega_y.to_degrees(),
        }))
    } else {
        format!(
            "omega_x_deg {:.6}\nomega_y_deg {:.6}\n",
            s.omega_x.to_degrees() + 0.0,
            s.omega_y.to_degrees() + 0.0
        )
    };
    emit(g, &body)
}

pub fn fig3(g: &GlobalOpts, a: &Fig3Args) -> CmdResult {
    reject_compat(g, "fig3")?;
    let Some(dir) = &g.out else {
        return Err(CliError::usage("fig3 requires --out <directory>"));
    };
    let u = Units::from_global(g)?;
    let opts = Fig3Options {
        sizes: a.sizes.clone(),
        spacing: u.len(a.spacing),
        element: element(a.element),
        pattern_grid: GridSpec {
            n_theta: a.n_theta,
            n_phi: a.n_phi,
        },
        ..Fig3Options::default()
    };
    let manifest = fig3_batch(&opts, dir)?;
    let mut out = std::io::stdout().lock();
    for e in &manifest {
        let _ = writeln!(out, "{}  {}", e.sha256, e.path);
    }
    Ok(())
}
