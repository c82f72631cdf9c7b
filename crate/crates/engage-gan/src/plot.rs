//! Static SVG heat map for a correlation matrix.

use std::fmt::Write;

const CELL: f64 = 120.0;
const MARGIN: f64 = 110.0;

/// Blue for -1, white for 0, red for +1.
fn colour(r: f64) -> String {
    let r = r.clamp(-1.0, 1.0);
    let fade = |t: f64| (255.0 * (1.0 - t)).round() as u8;
    let (red, green, blue) = if r >= 0.0 {
        (255, fade(r), fade(r))
    } else {
        (fade(-r), fade(-r), 255)
    };
    format!("#{red:02x}{green:02x}{blue:02x}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn correlation_svg(names: [&str; 2], matrix: &[[f64; 2]; 2]) -> String {
    let size = MARGIN + 2.0 * CELL + 20.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="sans-serif">"#
    );
    for (i, row) in matrix.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            let (x, y) = (MARGIN + j as f64 * CELL, MARGIN + i as f64 * CELL);
            let _ = writeln!(
                svg,
                r##"  <rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}" stroke="#333333"/>"##,
                colour(*r)
            );
            let _ = writeln!(
                svg,
                r#"  <text x="{}" y="{}" text-anchor="middle" font-size="20">{r:.3}</text>"#,
                x + CELL / 2.0,
                y + CELL / 2.0 + 7.0
            );
        }
    }
    for (k, name) in names.iter().enumerate() {
        let c = MARGIN + k as f64 * CELL + CELL / 2.0;
        let name = escape(name);
        let _ = writeln!(
            svg,
            r#"  <text x="{c}" y="{}" text-anchor="middle" font-size="16">{name}</text>"#,
            MARGIN - 12.0
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{c}" text-anchor="end" font-size="16">{name}</text>"#,
            MARGIN - 8.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
