//! SVG bar chart comparing simulated and analytic length frequencies.
//!
//! Output depends only on the inputs: coordinates are printed with fixed
//! precision and nothing time- or platform-dependent goes into the file.

use std::fmt::Write as _;

pub const WIDTH: u32 = 960;
pub const HEIGHT: u32 = 540;

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;
const FILLS: [&str; 4] = ["#4477aa", "#ee6677", "#228833", "#ccbb44"];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Grouped bars per game length, one bar per series, left to right in the
/// order given. Each series is a label and one probability per length.
pub fn length_chart(title: &str, series: &[(&str, &[f64])]) -> String {
    assert!(series.len() <= FILLS.len(), "at most {} series", FILLS.len());
    let groups = series.iter().map(|(_, v)| v.len()).max().unwrap_or(0).max(1);
    let peak = series
        .iter()
        .flat_map(|(_, v)| v.iter())
        .copied()
        .fold(0.0f64, f64::max);
    // Round the axis up to the next tenth.
    let top = ((peak * 10.0).ceil() / 10.0).clamp(0.1, 1.0);

    let plot_w = WIDTH as f64 - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT as f64 - MARGIN_TOP - MARGIN_BOTTOM;
    let base_y = MARGIN_TOP + plot_h;
    let group_w = plot_w / groups as f64;
    let bar_w = group_w * 0.7 / series.len().max(1) as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="28" font-size="18" text-anchor="middle">{}</text>"#,
        WIDTH as f64 / 2.0,
        escape(title)
    );

    for tick in 0..=5 {
        let value = top * tick as f64 / 5.0;
        let y = base_y - plot_h * tick as f64 / 5.0;
        let _ = writeln!(
            svg,
            r##"<line x1="{MARGIN_LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{value:.2}</text>"#,
            MARGIN_LEFT - 8.0,
            y + 4.0
        );
    }

    let bar = |svg: &mut String, x: f64, value: f64, fill: &str| {
        let h = plot_h * (value / top).clamp(0.0, 1.0);
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{:.2}" width="{bar_w:.2}" height="{h:.2}" fill="{fill}"><title>{value:.6}</title></rect>"#,
            base_y - h
        );
    };
    for length in 0..groups {
        let left = MARGIN_LEFT + group_w * length as f64;
        let center = left + group_w / 2.0;
        let start = center - bar_w * series.len() as f64 / 2.0;
        for (i, (_, values)) in series.iter().enumerate() {
            if let Some(&v) = values.get(length) {
                bar(&mut svg, start + bar_w * i as f64, v, FILLS[i]);
            }
        }
        let _ = writeln!(
            svg,
            r#"<text x="{center:.2}" y="{:.2}" font-size="12" text-anchor="middle">{length}</text>"#,
            base_y + 18.0
        );
    }

    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN_LEFT:.2}" y1="{base_y:.2}" x2="{:.2}" y2="{base_y:.2}" stroke="black"/>"#,
        MARGIN_LEFT + plot_w
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN_LEFT:.2}" y1="{MARGIN_TOP:.2}" x2="{MARGIN_LEFT:.2}" y2="{base_y:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">game length</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT as f64 - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.2})">probability</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let legend_x = MARGIN_LEFT + plot_w - 170.0;
    for (i, ((label, _), fill)) in series.iter().zip(FILLS).enumerate() {
        let y = MARGIN_TOP + 8.0 + 20.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{legend_x:.2}" y="{y:.2}" width="14" height="14" fill="{fill}"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="13">{}</text>"#,
            legend_x + 20.0,
            y + 12.0,
            escape(label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_is_deterministic_and_sized() {
        let sim = [0.5, 0.2, 0.1, 0.1, 0.1];
        let exact = [0.5125, 0.21875, 0.1, 0.09375, 0.075];
        let series: [(&str, &[f64]); 2] = [("simulated", &sim), ("analytic", &exact)];
        let a = length_chart("K3 & pendant", &series);
        let b = length_chart("K3 & pendant", &series);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.contains(r#"width="960" height="540""#));
        assert!(a.contains("K3 &amp; pendant"));
        assert_eq!(a.matches("<title>").count(), 10);
    }

    #[test]
    fn simulated_bar_sits_left_of_analytic() {
        let svg = length_chart("t", &[("simulated", &[0.4]), ("analytic", &[0.6])]);
        let x_of = |fill: &str| -> f64 {
            let line = svg.lines().find(|l| l.contains(fill) && l.contains("<title>")).unwrap();
            let start = line.find("x=\"").unwrap() + 3;
            line[start..].split('"').next().unwrap().parse().unwrap()
        };
        assert!(x_of(FILLS[0]) < x_of(FILLS[1]));
    }
}
