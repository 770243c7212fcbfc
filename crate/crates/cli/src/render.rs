//! SVG rendering of a marked disc: points clockwise from the top, arcs as
//! curves bowed towards their short side, isolated points hollow. Output
//! is a pure function of the input, so bytes are stable across runs.

use std::f64::consts::PI;

const SIZE: f64 = 520.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 230.0;
const POINT_RADIUS: f64 = 4.0;

fn fmt(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    // Avoid the unstable "-0.00".
    format!("{:.2}", if r == 0.0 { 0.0 } else { r })
}

fn position(n: usize, k: usize, radius: f64) -> (f64, f64) {
    let theta = 2.0 * PI * (k as f64 - 1.0) / n as f64;
    (CENTER + radius * theta.sin(), CENTER - radius * theta.cos())
}

pub fn render_svg(points: usize, arcs: &[(usize, usize)]) -> String {
    let mut arcs: Vec<(usize, usize)> = arcs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    arcs.sort_unstable();

    let mut body = String::new();
    body.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
        fmt(CENTER),
        fmt(CENTER),
        fmt(RADIUS)
    ));

    for &(i, j) in &arcs {
        let (x1, y1) = position(points, i, RADIUS);
        let (x2, y2) = position(points, j, RADIUS);
        // Bow towards the shorter boundary side; diameters stay straight.
        let fwd = (j - i) % points;
        let (gap, mid_from) = if fwd * 2 <= points {
            (fwd, i)
        } else {
            (points - fwd, j)
        };
        let mid_theta = 2.0 * PI * ((mid_from as f64 - 1.0) + gap as f64 / 2.0) / points as f64;
        let control_radius = RADIUS * (1.0 - 2.0 * gap as f64 / points as f64);
        let cx = CENTER + control_radius * mid_theta.sin();
        let cy = CENTER - control_radius * mid_theta.cos();
        body.push_str(&format!(
            "  <path d=\"M {} {} Q {} {} {} {}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n",
            fmt(x1),
            fmt(y1),
            fmt(cx),
            fmt(cy),
            fmt(x2),
            fmt(y2)
        ));
    }

    for k in 1..=points {
        let isolated = !arcs.iter().any(|&(i, j)| i == k || j == k);
        let (x, y) = position(points, k, RADIUS);
        let fill = if isolated { "#ffffff" } else { "#000000" };
        body.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
            fmt(x),
            fmt(y),
            fmt(POINT_RADIUS),
            fill
        ));
    }

    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n{body}</svg>\n",
        s = fmt(SIZE),
        body = body
    )
}
