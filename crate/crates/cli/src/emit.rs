//! CSV and SVG renderings of the two common-factor lines.

use std::fmt::Write as _;
use std::io::{self, Write};

use kappa_sweep::sweep::{Line, LinePoint};
use kappa_sweep::{BigNat, FixedDec};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("nothing to plot")]
    Empty,
    #[error("both lines need at least one point")]
    MissingLine,
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Horizontal coordinate used by the SVG plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum XAxis {
    /// Walk step at which the coordinate was visited.
    Step,
    /// The prime itself.
    Prime,
}

/// A highlighted `(x, f)` location, in the units of the chosen axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marker {
    pub x: BigNat,
    pub f: FixedDec,
    pub label: String,
}

fn sorted(points: &[LinePoint]) -> Vec<&LinePoint> {
    let mut rows: Vec<&LinePoint> = points.iter().collect();
    rows.sort_by(|a, b| (a.line, &a.x).cmp(&(b.line, &b.x)));
    rows
}

/// Writes `line,x,f` rows ordered by line, then by `x`.
pub fn emit_csv(points: &[LinePoint], sink: &mut dyn Write) -> Result<(), EmitError> {
    if points.is_empty() {
        return Err(EmitError::Empty);
    }
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["line", "x", "f"])?;
    for p in sorted(points) {
        w.write_record([p.line.name(), &p.x.to_string(), &p.f.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads back the output of [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<LinePoint>, EmitError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["line", "x", "f"] {
        return Err(EmitError::Parse {
            row: 0,
            message: format!("unexpected header {:?}", headers.iter().collect::<Vec<_>>()),
        });
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let bad = |message: String| EmitError::Parse { row: i + 1, message };
        let line: Line = rec[0].parse().map_err(bad)?;
        let x: BigNat = rec[1].parse().map_err(|e| bad(format!("{e}")))?;
        let f: FixedDec = rec[2].parse().map_err(|e| bad(format!("{e}")))?;
        out.push(LinePoint { line, x, f, step: None });
    }
    Ok(out)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;

/// Lossy but deterministic conversion for layout only.
fn approx(s: String) -> f64 {
    s.parse().unwrap_or(f64::MAX)
}

struct Scale {
    lo: f64,
    hi: f64,
}

impl Scale {
    fn over(values: impl Iterator<Item = f64>) -> Scale {
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if lo < hi {
            Scale { lo, hi }
        } else {
            Scale { lo: lo - 0.5, hi: lo + 0.5 }
        }
    }

    fn map(&self, v: f64, from: f64, to: f64) -> f64 {
        from + (v - self.lo) / (self.hi - self.lo) * (to - from)
    }
}

/// Plots both lines against `axis` as two polylines, with a circle at every
/// marker. Output depends only on the inputs.
pub fn emit_svg(points: &[LinePoint], markers: &[Marker], axis: XAxis, sink: &mut dyn Write) -> Result<(), EmitError> {
    if points.is_empty() {
        return Err(EmitError::Empty);
    }
    if !points.iter().any(|p| p.line == Line::P) || !points.iter().any(|p| p.line == Line::Q) {
        return Err(EmitError::MissingLine);
    }
    let xval = |p: &LinePoint| match (axis, p.step) {
        (XAxis::Step, Some(s)) => s as f64,
        _ => approx(p.x.to_string()),
    };
    let mut ordered: Vec<&LinePoint> = points.iter().collect();
    ordered.sort_by(|a, b| xval(a).total_cmp(&xval(b)).then((a.line, &a.x).cmp(&(b.line, &b.x))));

    let xs = Scale::over(
        ordered
            .iter()
            .map(|p| xval(p))
            .chain(markers.iter().map(|m| approx(m.x.to_string()))),
    );
    let ys = Scale::over(
        ordered
            .iter()
            .map(|p| approx(p.f.to_string()))
            .chain(markers.iter().map(|m| approx(m.f.to_string()))),
    );
    let px = |v: f64| xs.map(v, MARGIN, WIDTH - MARGIN);
    let py = |v: f64| ys.map(v, HEIGHT - MARGIN, MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(s, r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
    let xlabel = match axis {
        XAxis::Step => "sweep step",
        XAxis::Prime => "prime x",
    };
    let _ = writeln!(
        s,
        r#"<text class="label" x="{:.2}" y="{:.2}" text-anchor="middle">{xlabel}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text class="label" x="15" y="{:.2}" text-anchor="middle" transform="rotate(-90 15 {:.2})">f</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    for (v, x, y, anchor) in [
        (xs.lo, x0, y0 + 18.0, "start"),
        (xs.hi, x1, y0 + 18.0, "end"),
    ] {
        let _ = writeln!(s, r#"<text class="tick" x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{v}</text>"#);
    }
    for (v, y) in [(ys.lo, y0), (ys.hi, y1)] {
        let _ = writeln!(
            s,
            r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="end">{v:.6}</text>"#,
            x0 - 4.0,
            y + 4.0
        );
    }
    for (line, colour) in [(Line::P, "#1f77b4"), (Line::Q, "#d62728")] {
        let coords: Vec<String> = ordered
            .iter()
            .filter(|p| p.line == line)
            .map(|p| format!("{:.2},{:.2}", px(xval(p)), py(approx(p.f.to_string()))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="line-{line}" fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
    }
    for m in markers {
        let (cx, cy) = (px(approx(m.x.to_string())), py(approx(m.f.to_string())));
        let _ = writeln!(s, r#"<circle class="marker" cx="{cx:.2}" cy="{cy:.2}" r="5" fill="none" stroke="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text class="marker-label" x="{:.2}" y="{:.2}">{}</text>"#,
            cx + 8.0,
            cy - 8.0,
            m.label
        );
    }
    let _ = writeln!(s, r##"<text class="legend" x="{:.2}" y="20" fill="#1f77b4">f = kappa/p</text>"##, x1 - 200.0);
    let _ = writeln!(s, r##"<text class="legend" x="{:.2}" y="20" fill="#d62728">f = q/kappa</text>"##, x1 - 100.0);
    s.push_str("</svg>\n");
    sink.write_all(s.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use kappa_sweep::fixed_div;

    fn point(line: Line, x: u64, step: u64) -> LinePoint {
        let kappa = BigNat::from(61237u64);
        let x = BigNat::from(x);
        let f = match line {
            Line::P => fixed_div(&kappa, &x, 6).unwrap(),
            Line::Q => fixed_div(&x, &kappa, 6).unwrap(),
        };
        LinePoint { line, x, f, step: Some(step) }
    }

    fn sample() -> Vec<LinePoint> {
        vec![
            point(Line::Q, 61861, 1),
            point(Line::P, 61231, 0),
            point(Line::P, 47809, 2),
            point(Line::Q, 78437, 3),
        ]
    }

    #[test]
    fn csv_rows_sorted_and_round_trip() {
        let mut out = Vec::new();
        emit_csv(&sample(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "line,x,f");
        assert_eq!(lines[1], "p,47809,1.280867");
        assert!(lines[2].starts_with("p,61231,1.0"));
        assert!(lines[3].starts_with("q,61861,"));

        let back = parse_csv(&text).unwrap();
        let mut again = Vec::new();
        emit_csv(&back, &mut again).unwrap();
        assert_eq!(String::from_utf8(again).unwrap(), text);
    }

    #[test]
    fn csv_rejects_empty_and_bad_rows() {
        let mut out = Vec::new();
        assert!(matches!(emit_csv(&[], &mut out), Err(EmitError::Empty)));
        assert!(out.is_empty());
        assert!(parse_csv("a,b,c\n").is_err());
        assert!(matches!(parse_csv("line,x,f\nr,1,1.0\n"), Err(EmitError::Parse { row: 1, .. })));
        assert!(matches!(parse_csv("line,x,f\np,1,x\n"), Err(EmitError::Parse { row: 1, .. })));
    }

    #[test]
    fn svg_is_deterministic() {
        let marker = Marker {
            x: BigNat::from(2u64),
            f: "1.2808".parse().unwrap(),
            label: "p=47809 q=78437".into(),
        };
        let render = || {
            let mut out = Vec::new();
            emit_svg(&sample(), std::slice::from_ref(&marker), XAxis::Step, &mut out).unwrap();
            String::from_utf8(out).unwrap()
        };
        let svg = render();
        assert_eq!(svg, render());
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(">sweep step<") && svg.contains(">f<"));
    }

    #[test]
    fn svg_degenerate_lines() {
        let pts = vec![point(Line::P, 47809, 0), point(Line::Q, 78437, 0)];
        let mut out = Vec::new();
        emit_svg(&pts, &[], XAxis::Prime, &mut out).unwrap();
        let svg = String::from_utf8(out).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(!svg.contains("NaN"));
        let only_p = &pts[..1];
        assert!(matches!(emit_svg(only_p, &[], XAxis::Prime, &mut Vec::new()), Err(EmitError::MissingLine)));
    }
}
