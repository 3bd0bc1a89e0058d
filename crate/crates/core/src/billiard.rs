//! Billiard simulator inside the ellipse `x²/a + y²/b = 1`.
//!
//! Reflection uses the gradient normal, every vertex is re-projected onto
//! the boundary by one Newton step, and closure is tested on position and
//! direction together.

use std::fmt::Write as _;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::conics::{caustic_of_line, CausticKind, CausticParam, ConfocalFamily, Point};
use crate::error::{Error, Result};

pub const BOUNDARY_TOL: f64 = 1e-10;
pub const CLOSURE_TOL: f64 = 1e-8;
/// Vertices closer than this to the y-axis do not count as a side.
pub const AXIS_TOL: f64 = 1e-12;
const MIN_CHORD_PARAM: f64 = 1e-12;

pub type Direction = Vector2<f64>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub vertices: Vec<Point>,
    pub segment_caustics: Vec<f64>,
    /// Number of reflections performed.
    pub m0: usize,
    /// Number of crossings of the y-axis, counted cyclically once closed.
    pub m1: usize,
    pub closure_residual: f64,
    pub closed: bool,
    /// Largest Newton correction applied to a vertex.
    pub max_projection: f64,
}

fn check_on_boundary(family: &ConfocalFamily, p: &Point) -> Result<()> {
    let residual = family.boundary_residual(p);
    if residual.abs() > BOUNDARY_TOL {
        return Err(Error::PointNotOnBoundary {
            x: p.x,
            y: p.y,
            residual,
        });
    }
    Ok(())
}

/// Mirror `incoming` in the tangent line at `point`.
pub fn reflect(family: &ConfocalFamily, point: &Point, incoming: &Direction) -> Result<Direction> {
    check_on_boundary(family, point)?;
    let n = Vector2::new(point.x / family.a(), point.y / family.b()).normalize();
    Ok(incoming - 2.0 * incoming.dot(&n) * n)
}

/// One Newton step on `F = x²/a + y²/b − 1` along the gradient.
fn project(family: &ConfocalFamily, p: &Point) -> Point {
    let g = Vector2::new(2.0 * p.x / family.a(), 2.0 * p.y / family.b());
    p - family.boundary_residual(p) / g.norm_squared() * g
}

/// Second intersection of the ray with the boundary, with the reflected
/// direction there.
pub fn step(family: &ConfocalFamily, point: &Point, direction: &Direction) -> Result<(Point, Direction)> {
    step_tracked(family, point, direction).map(|(p, d, _)| (p, d))
}

/// `step` plus the length of the Newton correction applied to the new vertex.
fn step_tracked(family: &ConfocalFamily, point: &Point, direction: &Direction) -> Result<(Point, Direction, f64)> {
    check_on_boundary(family, point)?;
    let (a, b) = (family.a(), family.b());
    let d = direction;
    let qa = d.x * d.x / a + d.y * d.y / b;
    let qb = 2.0 * (point.x * d.x / a + point.y * d.y / b);
    let qc = family.boundary_residual(point);
    let disc = qb * qb - 4.0 * qa * qc;
    if !(qa > 0.0) || disc <= 0.0 {
        return Err(Error::TangentRay);
    }
    let sq = disc.sqrt();
    let (t1, t2) = if qb <= 0.0 {
        let hi = (-qb + sq) / (2.0 * qa);
        (qc / (qa * hi), hi)
    } else {
        let lo = (-qb - sq) / (2.0 * qa);
        (lo, qc / (qa * lo))
    };
    let t = t1.max(t2);
    if !(t > MIN_CHORD_PARAM * a.sqrt() / d.norm()) {
        return Err(Error::TangentRay);
    }
    let raw = point + t * d;
    let next = project(family, &raw);
    let out = reflect(family, &next, d)?;
    Ok((next, out, (next - raw).norm()))
}

fn side(p: &Point) -> i8 {
    if p.x > AXIS_TOL {
        1
    } else if p.x < -AXIS_TOL {
        -1
    } else {
        0
    }
}

/// Running y-axis crossing counts along a vertex list (zeros skipped).
pub fn cumulative_crossings(vertices: &[Point]) -> Vec<usize> {
    let mut last = 0i8;
    let mut count = 0;
    vertices
        .iter()
        .map(|p| {
            let s = side(p);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
            count
        })
        .collect()
}

/// Crossings of a closed polygon whose last vertex repeats the first.
fn cyclic_crossings(vertices: &[Point]) -> usize {
    let linear = *cumulative_crossings(vertices).last().unwrap_or(&0);
    if side(&vertices[0]) != 0 {
        return linear;
    }
    let signs: Vec<i8> = vertices.iter().map(side).filter(|&s| s != 0).collect();
    match (signs.first(), signs.last()) {
        (Some(f), Some(l)) if f != l => linear + 1,
        _ => linear,
    }
}

pub fn simulate(
    family: &ConfocalFamily,
    start: &Point,
    direction: &Direction,
    max_bounces: usize,
) -> Result<Trajectory> {
    if max_bounces == 0 {
        return Err(Error::ParamOutOfRange {
            detail: "max_bounces must be at least 1".into(),
        });
    }
    check_on_boundary(family, start)?;
    let d0 = direction.normalize();
    let (mut p, mut d) = (*start, d0);
    let mut vertices = vec![p];
    let mut caustics = Vec::with_capacity(max_bounces);
    let mut max_projection = 0.0f64;
    let mut residual = f64::INFINITY;
    let mut closed = false;
    for _ in 0..max_bounces {
        caustics.push(caustic_of_line(family, &p, &d)?.lambda0);
        let (np, nd, moved) = step_tracked(family, &p, &d)?;
        max_projection = max_projection.max(moved);
        p = np;
        d = nd.normalize();
        vertices.push(p);
        residual = (p - start).norm() + (d - d0).norm();
        if residual < CLOSURE_TOL {
            closed = true;
            break;
        }
    }
    let m0 = vertices.len() - 1;
    let m1 = if closed {
        cyclic_crossings(&vertices)
    } else {
        *cumulative_crossings(&vertices).last().unwrap()
    };
    Ok(Trajectory {
        vertices,
        segment_caustics: caustics,
        m0,
        m1,
        closure_residual: residual,
        closed,
        max_projection,
    })
}

/// A boundary point and a direction along a tangent line of the caustic.
///
/// Ellipses are parameterized by `(√A cos φ, √B sin φ)`, hyperbolas by the
/// positive-x branch `(√A cosh φ, √−B sinh φ)`, with `A = a−λ₀`, `B = b−λ₀`.
/// The returned point is the first boundary intersection of the tangent
/// line, the direction runs along the chord.
pub fn launch_tangent(family: &ConfocalFamily, caustic: &CausticParam, phase: f64) -> Result<(Point, Direction)> {
    caustic.require_regular()?;
    let aa = family.a() - caustic.lambda0;
    let bb = family.b() - caustic.lambda0;
    let (touch, tangent) = match caustic.kind {
        CausticKind::Ellipse => (
            Point::new(aa.sqrt() * phase.cos(), bb.sqrt() * phase.sin()),
            Vector2::new(-aa.sqrt() * phase.sin(), bb.sqrt() * phase.cos()),
        ),
        _ => (
            Point::new(aa.sqrt() * phase.cosh(), (-bb).sqrt() * phase.sinh()),
            Vector2::new(aa.sqrt() * phase.sinh(), (-bb).sqrt() * phase.cosh()),
        ),
    };
    let t = tangent.normalize();
    let (a, b) = (family.a(), family.b());
    let qa = t.x * t.x / a + t.y * t.y / b;
    let qb = 2.0 * (touch.x * t.x / a + touch.y * t.y / b);
    let qc = family.boundary_residual(&touch);
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return Err(Error::NoIntersection);
    }
    let s = (-qb - disc.sqrt()) / (2.0 * qa);
    let start = project(family, &(touch + s * t));
    Ok((start, t))
}

/// Symmetries of a closed polygon, tested on its vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetry {
    pub origin: bool,
    pub x_axis: bool,
    pub y_axis: bool,
}

pub fn symmetry(vertices: &[Point], tol: f64) -> Symmetry {
    let pts: &[Point] = match vertices.split_last() {
        Some((last, rest)) if !rest.is_empty() && (last - rest[0]).norm() < tol => rest,
        _ => vertices,
    };
    let invariant = |f: &dyn Fn(&Point) -> Point| pts.iter().all(|p| pts.iter().any(|q| (f(p) - q).norm() < tol));
    Symmetry {
        origin: invariant(&|p| -p),
        x_axis: invariant(&|p| Point::new(p.x, -p.y)),
        y_axis: invariant(&|p| Point::new(-p.x, p.y)),
    }
}

pub fn to_csv(traj: &Trajectory) -> String {
    let mut out = String::from("index,x,y,segment_caustic,cumulative_m1\n");
    let cum = cumulative_crossings(&traj.vertices);
    for (i, p) in traj.vertices.iter().enumerate() {
        let lam = traj
            .segment_caustics
            .get(i)
            .map(|l| format!("{l:.16e}"))
            .unwrap_or_default();
        writeln!(out, "{i},{:.16e},{:.16e},{lam},{}", p.x, p.y, cum[i]).unwrap();
    }
    out
}

/// Boundary, caustic and polygon as a standalone SVG document.
pub fn to_svg(family: &ConfocalFamily, caustic: &CausticParam, traj: &Trajectory) -> String {
    let (a, b) = (family.a(), family.b());
    let (ra, rb) = (a.sqrt(), b.sqrt());
    let size = 600.0;
    let scale = 0.45 * size / ra;
    let tx = |x: f64| 0.5 * size + scale * x;
    let ty = |y: f64| 0.5 * size - scale * y;
    let height = 2.0 * rb * scale + 0.1 * size;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 {:.3} {size} {height:.3}">"#,
        0.5 * size - 0.5 * height
    )
    .unwrap();
    writeln!(
        svg,
        r#"<ellipse cx="{:.3}" cy="{:.3}" rx="{:.3}" ry="{:.3}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        tx(0.0),
        ty(0.0),
        scale * ra,
        scale * rb
    )
    .unwrap();
    let aa = a - caustic.lambda0;
    let bb = b - caustic.lambda0;
    match caustic.kind {
        CausticKind::Ellipse => {
            writeln!(
                svg,
                r#"<ellipse cx="{:.3}" cy="{:.3}" rx="{:.3}" ry="{:.3}" fill="none" stroke="steelblue" stroke-dasharray="4 3"/>"#,
                tx(0.0),
                ty(0.0),
                scale * aa.sqrt(),
                scale * bb.sqrt()
            )
            .unwrap();
        }
        CausticKind::Hyperbola => {
            // both branches, clipped to the table's bounding box
            let ymax = rb;
            let tmax = (ymax / (-bb).sqrt()).asinh();
            for sx in [1.0, -1.0] {
                let pts: Vec<String> = (0..=100)
                    .map(|i| {
                        let t = -tmax + 2.0 * tmax * i as f64 / 100.0;
                        let x = sx * aa.sqrt() * t.cosh();
                        let y = (-bb).sqrt() * t.sinh();
                        format!("{:.3},{:.3}", tx(x), ty(y))
                    })
                    .collect();
                writeln!(
                    svg,
                    r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-dasharray="4 3"/>"#,
                    pts.join(" ")
                )
                .unwrap();
            }
        }
        _ => {}
    }
    let poly: Vec<String> = traj
        .vertices
        .iter()
        .map(|p| format!("{:.3},{:.3}", tx(p.x), ty(p.y)))
        .collect();
    writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="firebrick" stroke-width="1"/>"#,
        poly.join(" ")
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}
