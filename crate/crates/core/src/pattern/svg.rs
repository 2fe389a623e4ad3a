//! Standalone SVG rendering of a principal cut as a polar plot.
//!
//! Radius is linear in dB between `db_floor` (centre) and 0 dB (outer ring).
//! θ-cuts put the zenith at the top and sweep clockwise; φ-cuts put φ = 0 at
//! the right and sweep counter-clockwise.

use std::fmt::Write as _;

use super::{CutSpec, PatternCut, DEFAULT_DB_FLOOR};
use crate::error::{Error, Result};

const MARGIN_PX: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarStyle {
    pub radius_px: f64,
    pub db_floor: f64,
}

impl Default for PolarStyle {
    fn default() -> Self {
        Self {
            radius_px: 200.0,
            db_floor: DEFAULT_DB_FLOOR,
        }
    }
}

fn px(v: f64) -> String {
    let v = if v.abs() < 5e-4 { 0.0 } else { v };
    format!("{v:.3}")
}

pub fn export_polar_svg(cut: &PatternCut, style: PolarStyle) -> Result<String> {
    if cut.points.is_empty() {
        return Err(Error::domain("cannot render an empty cut"));
    }
    if !(style.radius_px.is_finite() && style.radius_px > 0.0) {
        return Err(Error::domain("radius must be positive"));
    }
    if !(style.db_floor.is_finite() && style.db_floor < 0.0) {
        return Err(Error::domain("dB floor must be negative"));
    }
    let r_max = style.radius_px;
    let size = 2.0 * (r_max + MARGIN_PX);
    let c = size / 2.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = px(size)
    );
    let title = match cut.spec {
        CutSpec::PhiConst(phi) => format!("phi = {:.3} deg", phi.to_degrees()),
        CutSpec::ThetaConst(theta) => format!("theta = {:.3} deg", theta.to_degrees()),
    };
    let _ = writeln!(svg, "<title>{title}</title>");
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{s}" height="{s}" fill="white"/>"#,
        s = px(size)
    );

    // rings every 10 dB from 0 down to the floor, plus the floor itself
    let _ = writeln!(
        svg,
        r##"<g fill="none" stroke="#bbbbbb" stroke-width="1">"##
    );
    let mut level = 0.0;
    while level > style.db_floor {
        ring(&mut svg, c, radius_for(level, style), level);
        level -= 10.0;
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r##"<g font-family="sans-serif" font-size="10" fill="#666666">"##
    );
    let mut level = 0.0;
    while level > style.db_floor {
        let r = radius_for(level, style);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}">{:.0} dB</text>"#,
            px(c + 3.0),
            px(c - r - 2.0),
            level
        );
        level -= 10.0;
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r##"<g stroke="#bbbbbb" stroke-width="1"><line x1="{l}" y1="{c}" x2="{r}" y2="{c}"/><line x1="{c}" y1="{l}" x2="{c}" y2="{r}"/></g>"##,
        l = px(c - r_max),
        r = px(c + r_max),
        c = px(c)
    );

    let mut points = String::new();
    for (k, p) in cut.points.iter().enumerate() {
        let r = radius_for(p.db, style);
        let (x, y) = match cut.spec {
            CutSpec::PhiConst(_) => (c + r * p.angle.sin(), c - r * p.angle.cos()),
            CutSpec::ThetaConst(_) => (c + r * p.angle.cos(), c - r * p.angle.sin()),
        };
        if k > 0 {
            points.push(' ');
        }
        let _ = write!(points, "{},{}", px(x), px(y));
    }
    let _ = writeln!(
        svg,
        r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{points}"/>"##
    );
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn radius_for(db: f64, style: PolarStyle) -> f64 {
    let db = if db.is_nan() {
        style.db_floor
    } else {
        db.clamp(style.db_floor, 0.0)
    };
    style.radius_px * (db - style.db_floor) / -style.db_floor
}

fn ring(svg: &mut String, c: f64, r: f64, level: f64) {
    let _ = writeln!(
        svg,
        r#"<circle cx="{c}" cy="{c}" r="{r}" data-db="{level:.0}"/>"#,
        c = px(c),
        r = px(r)
    );
}
