//! CSV and SVG emission.

use std::fmt::Write as _;

use crate::solver::{RdCurve, RdPoint};

/// C `printf("%.12g")` formatting.
pub fn format_g12(x: f64) -> String {
    format_g(x, 12)
}

/// C `%.{precision}g`.
pub fn format_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let p = precision.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const SAMPLE_HEADER: &str = "distortion,rate_bits,seed_index";
pub const CURVE_HEADER: &str = "D,R_bits,method";

/// `distortion,rate_bits,seed_index`, one row per point.
pub fn sample_csv(points: &[RdPoint]) -> String {
    let mut out = String::with_capacity(40 * (points.len() + 1));
    out.push_str(SAMPLE_HEADER);
    out.push('\n');
    for p in points {
        let seed = p.seed.map(|s| s.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", format_g12(p.distortion), format_g12(p.rate.0), seed);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Lower envelope of a sampling sweep.
    Envelope,
    /// Lagrangian descent.
    Descent,
    Infeasible,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Envelope => "envelope",
            Method::Descent => "descent",
            Method::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub distortion: f64,
    pub rate: Option<f64>,
    pub method: Method,
}

/// `D,R_bits,method`, preceded by `# `-prefixed metadata lines.
pub fn curve_csv(rows: &[CurveRow], metadata: &[String]) -> String {
    let mut out = String::new();
    for line in metadata {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str(CURVE_HEADER);
    out.push('\n');
    for r in rows {
        let rate = r.rate.map(format_g12).unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", format_g12(r.distortion), rate, r.method.as_str());
    }
    out
}

/// Parses `D,R_bits,method` rows, skipping metadata; used by tests and
/// examples.
pub fn parse_curve_csv(text: &str) -> Vec<CurveRow> {
    text.lines()
        .filter(|l| !l.starts_with('#') && *l != CURVE_HEADER && !l.is_empty())
        .filter_map(|l| {
            let mut f = l.split(',');
            let d = f.next()?.parse().ok()?;
            let r = f.next()?;
            let method = match f.next()? {
                "envelope" => Method::Envelope,
                "descent" => Method::Descent,
                "infeasible" => Method::Infeasible,
                _ => return None,
            };
            Some(CurveRow { distortion: d, rate: if r.is_empty() { None } else { r.parse().ok() }, method })
        })
        .collect()
}

/// Most points drawn in the scatter; larger clouds are thinned by stride.
pub const MAX_SCATTER_POINTS: usize = 5000;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 55.0;

/// Scatter of `cloud` with the envelope polyline on top and descent
/// witnesses as crosses. Only points with distortion ≤ `d_cap` are drawn.
pub fn curve_svg(cloud: &[RdPoint], envelope: &RdCurve, descent: &[(f64, f64)], d_cap: f64) -> String {
    let visible: Vec<&RdPoint> = cloud.iter().filter(|p| p.distortion <= d_cap).collect();
    let r_top = visible
        .iter()
        .map(|p| p.rate.0)
        .chain(envelope.rates().into_iter().flatten())
        .chain(descent.iter().map(|d| d.1))
        .fold(0.0, f64::max)
        .max(1e-3);
    let r_top = (r_top * 10.0).ceil() / 10.0;
    let d_top = if d_cap.is_finite() && d_cap > 0.0 {
        d_cap
    } else {
        envelope.grid().last().copied().unwrap_or(1.0).max(1e-3)
    };
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |d: f64| MARGIN_LEFT + plot_w * (d / d_top).clamp(0.0, 1.0);
    let sy = |r: f64| MARGIN_TOP + plot_h * (1.0 - (r / r_top).clamp(0.0, 1.0));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    let stride = visible.len().div_ceil(MAX_SCATTER_POINTS).max(1);
    let _ = writeln!(s, r##"<g class="point-cloud" fill="#9db7d5" fill-opacity="0.6">"##);
    for p in visible.iter().step_by(stride) {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.2"/>"#, sx(p.distortion), sy(p.rate.0));
    }
    s.push_str("</g>\n");

    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP + plot_h;
    let _ = writeln!(
        s,
        r#"<path class="axes" d="M{x0},{MARGIN_TOP} L{x0},{y0} L{:.2},{y0}" stroke="black" fill="none"/>"#,
        MARGIN_LEFT + plot_w
    );
    for i in 0..=5 {
        let d = d_top * i as f64 / 5.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            sx(d),
            y0 + 16.0,
            format_g(d, 3)
        );
        let r = r_top * i as f64 / 5.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            sy(r) + 4.0,
            format_g(r, 3)
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="x-label" x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">D</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text class="y-label" x="18" y="{:.2}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.2})">R (bits)</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let coords: Vec<String> = envelope
        .grid()
        .iter()
        .zip(envelope.rates())
        .filter(|(d, _)| **d <= d_top)
        .filter_map(|(d, r)| r.map(|r| format!("{:.2},{:.2}", sx(*d), sy(r))))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline class="envelope" points="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
        coords.join(" ")
    );

    if !descent.is_empty() {
        let mut d_attr = String::new();
        for &(d, r) in descent.iter().filter(|(d, _)| *d <= d_top) {
            let (x, y) = (sx(d), sy(r));
            let _ = write!(d_attr, "M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2} ", x - 4.0, y - 4.0, x + 4.0, y + 4.0, x - 4.0, y + 4.0, x + 4.0, y - 4.0);
        }
        let _ = writeln!(s, r#"<path class="descent" d="{}" stroke="black" stroke-width="1.2" fill="none"/>"#, d_attr.trim_end());
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::information::Bits;
    use crate::solver::lower_envelope;

    #[test]
    fn g12_matches_printf() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.25, "0.25"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (0.6008760366928562, "0.600876036693"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1e-5, "1e-05"),
            (0.0001, "0.0001"),
            (-2.5e-7, "-2.5e-07"),
            (1e100, "1e+100"),
            (-0.5, "-0.5"),
            (9.9999999999996, "10"),
            (0.00012345678901234, "0.000123456789012"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g12(x), want, "{x}");
        }
    }

    #[test]
    fn g12_round_trips_to_twelve_digits() {
        for i in 1..2000 {
            let x = (i as f64).sin() * 10f64.powi((i % 17) - 8);
            let back: f64 = format_g12(x).parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs());
        }
    }

    #[test]
    fn csv_layout() {
        let pts = vec![
            RdPoint { distortion: 0.25, rate: Bits(0.0), povm: None, seed: Some(0) },
            RdPoint { distortion: 0.1, rate: Bits(0.5), povm: None, seed: Some(1) },
        ];
        assert_eq!(sample_csv(&pts), "distortion,rate_bits,seed_index\n0.25,0,0\n0.1,0.5,1\n");
        let rows = vec![
            CurveRow { distortion: 0.0, rate: None, method: Method::Infeasible },
            CurveRow { distortion: 0.25, rate: Some(0.0), method: Method::Envelope },
        ];
        let text = curve_csv(&rows, &["objective I(X;R)".into()]);
        assert_eq!(text, "# objective I(X;R)\nD,R_bits,method\n0,,infeasible\n0.25,0,envelope\n");
        assert_eq!(parse_curve_csv(&text), rows);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn svg_structure() {
        let pts: Vec<RdPoint> = (0..20000)
            .map(|i| {
                let d = 0.3 * (i as f64 / 20000.0);
                RdPoint { distortion: d, rate: Bits(1.0 - d * 3.0), povm: None, seed: Some(i) }
            })
            .collect();
        let grid: Vec<f64> = (0..=25).map(|i| i as f64 / 100.0).collect();
        let env = lower_envelope(&pts, &grid).unwrap();
        let svg = curve_svg(&pts, &env, &[(0.1, 0.7)], 0.25);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<g").count(), 1);
        assert!(svg.matches("<circle").count() <= MAX_SCATTER_POINTS);
        assert!(svg.contains(">D</text>"));
        assert!(svg.contains(">R (bits)</text>"));
    }
}
