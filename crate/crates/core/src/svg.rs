//! Deterministic SVG drawing of the circle, its points and its gaps.
//!
//! Point `n` sits at angle `2 pi {n a}` measured clockwise from the top.
//! Every arc runs from a point to its successor and is stroked in the
//! color of the gap class its exact length belongs to. Geometry is exact up
//! to a single 30-digit decimal conversion per coordinate.

use std::f64::consts::PI;
use std::fmt::Write;

use num_bigint::BigInt;

use crate::error::{GapError, Result};
use crate::gap::{CircleConfig, GapKind, Orbit};
use crate::numeric::{FieldValue, REPORT_DIGITS};

pub const MIN_SIZE_PX: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderStyle {
    pub size_px: u32,
    pub label_points: bool,
    /// Colors for `FirstGap`, `LastGap` and `CombinedGap`, in that order.
    pub class_colors: [String; 3],
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            size_px: 480,
            label_points: true,
            class_colors: ["#1f77b4".into(), "#d62728".into(), "#2ca02c".into()],
        }
    }
}

impl RenderStyle {
    fn color(&self, kind: GapKind) -> &str {
        match kind {
            GapKind::FirstGap => &self.class_colors[0],
            GapKind::LastGap => &self.class_colors[1],
            GapKind::CombinedGap => &self.class_colors[2],
        }
    }
}

struct Frame {
    cx: f64,
    cy: f64,
    r: f64,
}

impl Frame {
    /// Screen point at `turns` clockwise from the top, at radius `r`.
    fn at(&self, turns: f64, r: f64) -> (f64, f64) {
        let theta = 2.0 * PI * turns;
        (self.cx + r * theta.sin(), self.cy - r * theta.cos())
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    // Avoid "-0.000000".
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

pub fn render_svg(cfg: &CircleConfig, style: &RenderStyle) -> Result<String> {
    if style.size_px < MIN_SIZE_PX {
        return Err(GapError::Parse(format!(
            "size {} is below the {MIN_SIZE_PX}px minimum",
            style.size_px
        )));
    }
    let orbit = Orbit::new(cfg);
    let census = orbit.census(false)?;
    let n = cfg.n_points();
    let size = style.size_px as f64;
    let frame = Frame {
        cx: size / 2.0,
        cy: size / 2.0,
        r: size * 0.38,
    };
    let stroke = (size / 160.0).max(1.0);
    let font = (size / 40.0).max(6.0);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = style.size_px
    )
    .unwrap();
    writeln!(
        out,
        r#"<title>{n} points of n*alpha mod 1, alpha = {}</title>"#,
        cfg.alpha()
    )
    .unwrap();
    writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#dddddd" stroke-width="{}"/>"##,
        num(frame.cx),
        num(frame.cy),
        num(frame.r),
        num(stroke)
    )
    .unwrap();

    let successors = if n == 1 { vec![0] } else { orbit.after_table()?.successor };
    let turns: Vec<f64> = orbit.positions().iter().map(FieldValue::to_f64).collect();
    // Arcs of one class share an exact length, so each sweep is converted once.
    let full_turn = BigInt::from(360);
    let sweeps: Vec<String> = census
        .classes
        .iter()
        .map(|c| format!("{:.12}", c.length.scale(&full_turn).to_f64()))
        .collect();

    writeln!(out, r#"<g id="arcs" fill="none" stroke-width="{}">"#, num(stroke * 2.0)).unwrap();
    // Walk the circle clockwise from point 0 so arcs appear in angular order.
    let mut m = 0;
    for _ in 0..n {
        let next = successors[m];
        let (end, end_turns) = if next == 0 {
            (FieldValue::one(), 1.0)
        } else {
            (orbit.position(next).clone(), turns[next])
        };
        let length = end.try_sub(orbit.position(m)).expect("one radicand");
        let class = census
            .classes
            .iter()
            .position(|c| c.length == length)
            .expect("every arc length belongs to a census class");
        let kind = census.classes[class].kind;
        let (x1, y1) = frame.at(turns[m], frame.r);
        let path = if n == 1 {
            let (xh, yh) = frame.at(0.5, frame.r);
            format!(
                "M {x1} {y1} A {r} {r} 0 0 1 {xh} {yh} A {r} {r} 0 0 1 {x1} {y1}",
                x1 = num(x1),
                y1 = num(y1),
                xh = num(xh),
                yh = num(yh),
                r = num(frame.r)
            )
        } else {
            let (x2, y2) = frame.at(end_turns, frame.r);
            let large = u8::from(length.compare(&FieldValue::rational(1, 2).unwrap()).unwrap().is_gt());
            format!(
                "M {} {} A {r} {r} 0 {large} 1 {} {}",
                num(x1),
                num(y1),
                num(x2),
                num(y2),
                r = num(frame.r)
            )
        };
        writeln!(
            out,
            r#"<path class="arc {kind}" data-from="{m}" data-to="{next}" data-sweep-deg="{}" stroke="{}" d="{path}"/>"#,
            sweeps[class],
            style.color(kind),
        )
        .unwrap();
        m = next;
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r#"<g id="points" fill="black">"#).unwrap();
    for (k, &t) in turns.iter().enumerate() {
        let (x, y) = frame.at(t, frame.r);
        writeln!(
            out,
            r#"<circle class="point" data-n="{k}" cx="{}" cy="{}" r="{}"/>"#,
            num(x),
            num(y),
            num(stroke * 2.5)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    if style.label_points {
        writeln!(
            out,
            r#"<g id="labels" font-family="sans-serif" font-size="{}" text-anchor="middle" dominant-baseline="middle">"#,
            num(font)
        )
        .unwrap();
        for (k, &t) in turns.iter().enumerate() {
            let (x, y) = frame.at(t, frame.r + font * 1.4);
            writeln!(out, r#"<text x="{}" y="{}">{k}</text>"#, num(x), num(y)).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }

    writeln!(
        out,
        r#"<g id="legend" font-family="sans-serif" font-size="{}">"#,
        num(font)
    )
    .unwrap();
    for (i, c) in census.classes.iter().enumerate() {
        let y = font * (1.5 + 1.4 * i as f64);
        writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{}">{} x{} length {}</text>"#,
            num(font),
            num(y),
            style.color(c.kind),
            c.kind,
            c.count,
            c.length.to_decimal(REPORT_DIGITS)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
