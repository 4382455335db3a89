use std::fmt::Write;

use udg::graph::UnitDistanceGraph;
use udg::Colouring;

/// Pixels per unit distance.
const SCALE: f64 = 100.0;
/// Keeps circles and strokes inside the viewBox.
const MARGIN: f64 = 12.0;
const VERTEX_RADIUS: f64 = 5.0;

/// Fills for colours 1..=5; colours beyond that wrap around.
const PALETTE: [&str; 5] = ["#d33", "#27b", "#2a2", "#fa0", "#93c"];

fn fmt(v: f64) -> String {
    // Two decimals at scale 100 keeps full visual precision and makes the
    // output byte-stable across runs.
    let s = format!("{:.2}", v);
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Renders vertices as circles and unit edges as lines, y axis pointing up.
/// A colouring fills each circle with its colour's palette entry.
pub fn svg(g: &UnitDistanceGraph, colouring: Option<&Colouring>) -> String {
    let coords = g.coords_f64();
    let points: Vec<(f64, f64)> = coords
        .iter()
        .map(|&(x, y)| (x * SCALE, -y * SCALE))
        .collect();

    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(&(x, y)) = points.first() {
        (min_x, min_y, max_x, max_y) = (x, y, x, y);
    }
    for &(x, y) in &points {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let vb = (
        min_x - MARGIN,
        min_y - MARGIN,
        (max_x - min_x) + 2.0 * MARGIN,
        (max_y - min_y) + 2.0 * MARGIN,
    );

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        fmt(vb.0),
        fmt(vb.1),
        fmt(vb.2),
        fmt(vb.3)
    );
    let _ = writeln!(out, "<g stroke=\"#999\" stroke-width=\"1.5\">");
    for &(a, b) in g.edges() {
        let (x1, y1) = points[a as usize];
        let (x2, y2) = points[b as usize];
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "<g stroke=\"#333\" stroke-width=\"1\">");
    for (v, &(x, y)) in points.iter().enumerate() {
        let fill = match colouring {
            Some(c) => PALETTE[(c.0[v] as usize - 1) % PALETTE.len()],
            None => "#ccc",
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            fmt(x),
            fmt(y),
            fmt(VERTEX_RADIUS),
            fill
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
