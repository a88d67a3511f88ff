//! Phase-portrait rendering to SVG.
//!
//! Three-strategy games project onto the standard ternary triangle;
//! two-strategy games render as a phase line. Output is plain text with no
//! timestamps, so identical inputs give identical bytes.

use std::fmt::Write as _;

use crate::analysis::{find_rest_points, StabilityClass};
use crate::dynamics::{field, FieldKind};
use crate::flow::{integrate, IntegrationOptions};
use crate::game::{PayoffMatrix, PopulationState};

use super::run::CliError;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;

fn class_color(class: StabilityClass) -> (&'static str, &'static str) {
    // (fill, stroke)
    match class {
        StabilityClass::Attractor => ("#1a7f37", "#1a7f37"),
        StabilityClass::Repeller => ("#ffffff", "#cf222e"),
        StabilityClass::Saddle => ("#bc4c00", "#bc4c00"),
        StabilityClass::CenterCandidate => ("#ffffff", "#0969da"),
        StabilityClass::Nonhyperbolic => ("#6e7781", "#6e7781"),
        StabilityClass::RestSetSample => ("#d0d7de", "#6e7781"),
    }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

/// Projects a 3-simplex state onto the drawing triangle.
fn ternary(x: &[f64]) -> (f64, f64) {
    let v1 = (MARGIN, HEIGHT - MARGIN);
    let v2 = (WIDTH - MARGIN, HEIGHT - MARGIN);
    let side = WIDTH - 2.0 * MARGIN;
    let v3 = (WIDTH / 2.0, HEIGHT - MARGIN - side * 3.0f64.sqrt() / 2.0);
    (
        x[0] * v1.0 + x[1] * v2.0 + x[2] * v3.0,
        x[0] * v1.1 + x[1] * v2.1 + x[2] * v3.1,
    )
}

fn line_x(share: f64) -> f64 {
    MARGIN + share * (WIDTH - 2.0 * MARGIN)
}

fn arrow_head(out: &mut String, at: (f64, f64), dir: (f64, f64), color: &str) {
    let norm = (dir.0 * dir.0 + dir.1 * dir.1).sqrt();
    if norm == 0.0 {
        return;
    }
    let (ux, uy) = (dir.0 / norm, dir.1 / norm);
    let (px_, py) = (-uy, ux);
    let size = 6.0;
    let tip = (at.0 + ux * size, at.1 + uy * size);
    let left = (at.0 - ux * size * 0.6 + px_ * size * 0.6, at.1 - uy * size * 0.6 + py * size * 0.6);
    let right = (at.0 - ux * size * 0.6 - px_ * size * 0.6, at.1 - uy * size * 0.6 - py * size * 0.6);
    let _ = writeln!(
        out,
        "  <polygon points=\"{},{} {},{} {},{}\" fill=\"{color}\"/>",
        px(tip.0),
        px(tip.1),
        px(left.0),
        px(left.1),
        px(right.0),
        px(right.1)
    );
}

fn rest_point_marker(out: &mut String, at: (f64, f64), class: StabilityClass) {
    let (fill, stroke) = class_color(class);
    let _ = writeln!(
        out,
        "  <circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>",
        px(at.0),
        px(at.1)
    );
    let _ = writeln!(
        out,
        "  <text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{stroke}\">{}</text>",
        px(at.0 + 8.0),
        px(at.1 - 6.0),
        class.as_str()
    );
}

/// Renders trajectories from the given starts plus the classified rest
/// points. Supports two- and three-strategy games.
pub fn emit_phase_svg(
    game: &PayoffMatrix,
    kind: FieldKind,
    starts: &[PopulationState],
    horizon: f64,
) -> Result<String, CliError> {
    match game.n() {
        2 => phase_line(game, kind),
        3 => phase_triangle(game, kind, starts, horizon),
        n => Err(CliError::Input(format!(
            "phase portraits support 2 or 3 strategies, got {n}"
        ))),
    }
}

fn svg_open(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        WIDTH as u32, HEIGHT as u32, WIDTH as u32, HEIGHT as u32
    );
    let _ = writeln!(out, "  <title>{title}</title>");
    let _ = writeln!(
        out,
        "  <rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        WIDTH as u32, HEIGHT as u32
    );
}

fn phase_triangle(
    game: &PayoffMatrix,
    kind: FieldKind,
    starts: &[PopulationState],
    horizon: f64,
) -> Result<String, CliError> {
    let mut out = String::new();
    svg_open(&mut out, &format!("{kind} phase portrait"));

    let corners = [ternary(&[1.0, 0.0, 0.0]), ternary(&[0.0, 1.0, 0.0]), ternary(&[0.0, 0.0, 1.0])];
    let _ = writeln!(
        out,
        "  <polygon points=\"{},{} {},{} {},{}\" fill=\"none\" stroke=\"#24292f\" stroke-width=\"1.5\"/>",
        px(corners[0].0),
        px(corners[0].1),
        px(corners[1].0),
        px(corners[1].1),
        px(corners[2].0),
        px(corners[2].1)
    );
    for (idx, (cx, cy)) in corners.iter().enumerate() {
        let (dx, dy) = match idx {
            0 => (-18.0, 16.0),
            1 => (6.0, 16.0),
            _ => (-6.0, -10.0),
        };
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"13\" fill=\"#24292f\">x{}</text>",
            px(cx + dx),
            px(cy + dy),
            idx + 1
        );
    }

    let opts = IntegrationOptions {
        output_samples: 1200,
        ..Default::default()
    };
    for x0 in starts {
        let traj = integrate(game, kind, x0, horizon, &opts)
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let points: Vec<(f64, f64)> = traj
            .states
            .iter()
            .map(|s| ternary(s.as_slice()))
            .collect();
        let path: Vec<String> = points
            .iter()
            .map(|(a, b)| format!("{},{}", px(*a), px(*b)))
            .collect();
        let _ = writeln!(
            out,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#57606a\" stroke-width=\"1\"/>",
            path.join(" ")
        );
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"#57606a\"/>",
            px(points[0].0),
            px(points[0].1)
        );
        // arrowheads at fixed fractions of the drawn arc length
        let mut lengths = vec![0.0];
        for w in points.windows(2) {
            let d = ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt();
            lengths.push(lengths.last().unwrap() + d);
        }
        let total = *lengths.last().unwrap();
        if total > 1.0 {
            for frac in [0.25, 0.5, 0.75] {
                let target = total * frac;
                let idx = lengths.partition_point(|l| *l < target).min(points.len() - 1);
                if idx == 0 {
                    continue;
                }
                let dir = (
                    points[idx].0 - points[idx - 1].0,
                    points[idx].1 - points[idx - 1].1,
                );
                arrow_head(&mut out, points[idx], dir, "#57606a");
            }
        }
    }

    let scan =
        find_rest_points(game, kind).map_err(|e| CliError::Numerical(e.to_string()))?;
    for report in &scan.reports {
        rest_point_marker(&mut out, ternary(report.location.as_slice()), report.class);
    }

    out.push_str("</svg>\n");
    Ok(out)
}

fn phase_line(game: &PayoffMatrix, kind: FieldKind) -> Result<String, CliError> {
    let mut out = String::new();
    svg_open(&mut out, &format!("{kind} phase line"));
    let y = HEIGHT / 2.0;
    let _ = writeln!(
        out,
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#24292f\" stroke-width=\"1.5\"/>",
        px(line_x(0.0)),
        px(y),
        px(line_x(1.0)),
        px(y)
    );
    for (share, label) in [(0.0, "x=0"), (0.5, "x=1/2"), (1.0, "x=1")] {
        let _ = writeln!(
            out,
            "  <line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#24292f\"/>",
            px(line_x(share)),
            px(y - 5.0),
            px(y + 5.0)
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#24292f\">{label}</text>",
            px(line_x(share) - 12.0),
            px(y + 24.0)
        );
    }

    let scan =
        find_rest_points(game, kind).map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut positions: Vec<f64> = scan
        .reports
        .iter()
        .map(|r| r.location.share(0))
        .collect();
    positions.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // arrows between consecutive rest points, oriented by the field sign
    for w in positions.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if (w[1] - w[0]).abs() < 1e-9 {
            continue;
        }
        let x = PopulationState::new(vec![mid, 1.0 - mid]).unwrap();
        let v = field(kind, &x, game).component(0);
        if v.abs() < 1e-14 {
            continue;
        }
        let dir = if v > 0.0 { (1.0, 0.0) } else { (-1.0, 0.0) };
        arrow_head(&mut out, (line_x(mid), y), dir, "#57606a");
    }

    for report in &scan.reports {
        rest_point_marker(&mut out, (line_x(report.location.share(0)), y), report.class);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn triangle_portrait_is_deterministic_and_complete() {
        let g = presets::preset("table5-C2").unwrap();
        let starts = vec![
            PopulationState::new(vec![0.5, 0.25, 0.25]).unwrap(),
            PopulationState::new(vec![0.4, 0.3, 0.3]).unwrap(),
        ];
        let a = emit_phase_svg(&g, FieldKind::Ibr, &starts, 60.0).unwrap();
        let b = emit_phase_svg(&g, FieldKind::Ibr, &starts, 60.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<polyline").count(), 2);
        assert!(a.contains("center_candidate"));
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn phase_line_marks_all_rest_points() {
        let g = presets::preset("table1-C1").unwrap();
        let svg = emit_phase_svg(&g, FieldKind::Ibr, &[], 0.0).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("repeller"));
    }

    #[test]
    fn large_games_are_rejected() {
        let g = PayoffMatrix::new(4, vec![0.0; 16]).unwrap();
        assert!(emit_phase_svg(&g, FieldKind::Ibr, &[], 10.0).is_err());
    }
}
