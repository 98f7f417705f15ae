//! SVG rendering of the support approximation and a codebook.

use std::fmt::Write;

use affine_quant::words::BinaryWord;
use affine_quant::measure::cell_interval;
use affine_quant::{Codebook, Rational, Scalar};

const SIZE: f64 = 500.0;
const MARGIN: f64 = 10.0;

fn px(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// SVG 1.1 document with the `4^depth` Cantor cells of level `depth` and the
/// codebook drawn as dots. The `y` axis points up.
pub fn render(codebook: &Codebook<Rational>, depth: u32, title: &str) -> String {
    let total = SIZE + 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + x * SIZE;
    let sy = |y: f64| MARGIN + (1.0 - y) * SIZE;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#,
        w = px(total)
    )
    .unwrap();
    writeln!(out, "<title>{title}</title>").unwrap();
    writeln!(out, r##"<g fill="#dde6f0" stroke="#51667d" stroke-width="0.5">"##).unwrap();
    let words = BinaryWord::all_of_length(depth as usize);
    let intervals: Vec<(f64, f64)> = words
        .iter()
        .map(|w| {
            let (a, b) = cell_interval::<Rational>(w);
            (a.to_f64_lossy(), b.to_f64_lossy())
        })
        .collect();
    for &(x0, x1) in &intervals {
        for &(y0, y1) in &intervals {
            writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                px(sx(x0)),
                px(sy(y1)),
                px((x1 - x0) * SIZE),
                px((y1 - y0) * SIZE)
            )
            .unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r##"<g fill="#b03a2e">"##).unwrap();
    for p in codebook.iter() {
        writeln!(out, r#"<circle cx="{}" cy="{}" r="4"/>"#, px(sx(p.x.to_f64_lossy())), px(sy(p.y.to_f64_lossy()))).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
