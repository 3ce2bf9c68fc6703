//! Minimal static SVG scatter plots. Output depends only on the data, so
//! reports stay byte-stable.

use std::fmt::Write;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Filled,
    Hollow,
    Square,
    Diamond,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub x: f64,
    pub y: f64,
    pub marker: Marker,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scatter {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<ScatterPoint>,
    pub polyline: Vec<(f64, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) =
        values.filter(|v| v.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    if lo > hi {
        return (0.0, 1.0);
    }
    let pad = if hi > lo { (hi - lo) * 0.05 } else { 0.5 };
    (lo - pad, hi + pad)
}

impl Scatter {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            points: Vec::new(),
            polyline: Vec::new(),
        }
    }

    pub fn render(&self) -> String {
        let all = || self.points.iter().map(|p| (p.x, p.y)).chain(self.polyline.iter().copied());
        let (x0, x1) = range(all().map(|p| p.0));
        let (y0, y1) = range(all().map(|p| p.1));
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#888"/>"##,
            WIDTH - 2.0 * MARGIN,
            HEIGHT - 2.0 * MARGIN
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        );
        for (v, x) in [(x0, MARGIN), (x1, WIDTH - MARGIN)] {
            let _ =
                writeln!(s, r#"<text x="{x:.1}" y="{}" text-anchor="middle">{v:.3}</text>"#, HEIGHT - MARGIN + 14.0);
        }
        for (v, y) in [(y0, HEIGHT - MARGIN), (y1, MARGIN)] {
            let _ = writeln!(s, r#"<text x="{}" y="{y:.1}" text-anchor="end">{v:.3}</text>"#, MARGIN - 4.0);
        }
        if self.polyline.len() > 1 {
            let pts: Vec<String> = self.polyline.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ =
                writeln!(s, r##"<polyline points="{}" fill="none" stroke="#c33" stroke-width="1.5"/>"##, pts.join(" "));
        }
        for p in self.points.iter().filter(|p| p.x.is_finite() && p.y.is_finite()) {
            let (x, y) = (sx(p.x), sy(p.y));
            let _ = match p.marker {
                Marker::Filled => writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#36c"/>"##),
                Marker::Hollow => writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="none" stroke="#36c"/>"##),
                Marker::Square => {
                    writeln!(s, r##"<rect x="{:.2}" y="{:.2}" width="8" height="8" fill="#e90"/>"##, x - 4.0, y - 4.0)
                }
                Marker::Diamond => writeln!(
                    s,
                    r##"<polygon points="{x:.2},{:.2} {:.2},{y:.2} {x:.2},{:.2} {:.2},{y:.2}" fill="#393"/>"##,
                    y - 5.0,
                    x + 5.0,
                    y + 5.0,
                    x - 5.0
                ),
            };
            if let Some(label) = &p.label {
                let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 6.0, y - 6.0, escape(label));
            }
        }
        s.push_str("</svg>\n");
        s
    }
}
