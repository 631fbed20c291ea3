//! CSV and SVG emission.

use std::fmt::Write as _;

use metric_svf::{CompactSet, Error, OperatorSpec, Result, SampledSvf};

/// `x,lo,hi` rows for interval unions and `x,p0,…` rows for point clouds.
pub fn set_rows(x: f64, set: &CompactSet) -> Vec<Vec<f64>> {
    match set {
        CompactSet::Intervals(u) => u.components().iter().map(|c| vec![x, c.lo(), c.hi()]).collect(),
        CompactSet::Cloud(c) => c
            .points()
            .iter()
            .map(|p| std::iter::once(x).chain(p.iter().copied()).collect())
            .collect(),
    }
}

pub fn csv_header(set: &CompactSet) -> String {
    match set {
        CompactSet::Intervals(_) => "x,lo,hi".into(),
        CompactSet::Cloud(c) => {
            let cols: Vec<String> = (0..c.dim()).map(|i| format!("p{i}")).collect();
            format!("x,{}", cols.join(","))
        }
    }
}

/// Rows sorted lexicographically, each value in shortest round-trip form.
pub fn to_csv(header: &str, mut rows: Vec<Vec<f64>>) -> String {
    rows.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut s = String::with_capacity(32 * (rows.len() + 1));
    s.push_str(header);
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| format!("{v}")).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureSpec {
    /// Number of subintervals of the evaluation grid; at least 2.
    pub grid: usize,
    /// Interior samples per chain segment.
    pub samples_per_segment: usize,
}

impl Default for FigureSpec {
    fn default() -> Self {
        Self {
            grid: 240,
            samples_per_segment: 16,
        }
    }
}

/// Curves `x ↦ Σ c_i(x) f_i` for sampled chains `(f_0, …, f_N)` of a
/// one-dimensional sampled function.
pub fn selection_curves(
    f: &SampledSvf,
    spec: &OperatorSpec,
    figure: &FigureSpec,
) -> Result<Vec<Vec<(f64, f64)>>> {
    if figure.grid < 2 {
        return Err(Error::InvalidArgument("figure grid must be at least 2".into()));
    }
    if f.values()[0].dim() != 1 {
        return Err(Error::InvalidArgument("figures need one-dimensional sets".into()));
    }
    let p = f.partition();
    let d = spec.valid_domain(p)?;
    let xs: Vec<f64> = (0..=figure.grid)
        .map(|i| d.lo() + d.len() * i as f64 / figure.grid as f64)
        .collect();
    let coeffs = xs
        .iter()
        .map(|&x| spec.coefficients(p, x))
        .collect::<Result<Vec<_>>>()?;
    let mut chains = f.chains()?.sample(figure.samples_per_segment);
    chains.sort_by(|a, b| {
        a.points
            .iter()
            .zip(&b.points)
            .map(|(x, y)| x[0].total_cmp(&y[0]))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    chains.dedup_by(|a, b| a.points == b.points);
    Ok(chains
        .iter()
        .map(|ch| {
            xs.iter()
                .zip(&coeffs)
                .map(|(&x, c)| (x, ch.combine(c)[0]))
                .collect()
        })
        .collect())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const PAD: f64 = 40.0;

/// Sampled sets as black vertical segments at the knots and selection
/// curves in gray.
pub fn render_svg(f: &SampledSvf, curves: &[Vec<(f64, f64)>], title: &str) -> String {
    let knots = f.partition().knots();
    let (x0, x1) = (knots[0], knots[knots.len() - 1]);
    let mut y0 = f64::INFINITY;
    let mut y1 = f64::NEG_INFINITY;
    for v in f.values() {
        if let Some(u) = v.as_intervals() {
            y0 = y0.min(u.min());
            y1 = y1.max(u.max());
        }
    }
    for c in curves {
        for &(_, y) in c {
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    if y1 - y0 < 1e-12 {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * PAD);
    let sy = |y: f64| HEIGHT - PAD - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#cccccc"/>"##,
        PAD,
        HEIGHT - PAD,
        WIDTH - PAD,
        HEIGHT - PAD
    );
    let _ = writeln!(s, r##"<g fill="none" stroke="#999999" stroke-width="1">"##);
    for c in curves {
        let pts: Vec<String> = c
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#000000" stroke-width="3" fill="#000000">"##);
    for (x, v) in knots.iter().zip(f.values()) {
        let Some(u) = v.as_intervals() else { continue };
        for comp in u.components() {
            if comp.is_degenerate() {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="3"/>"#,
                    sx(*x),
                    sy(comp.lo())
                );
            } else {
                let _ = writeln!(
                    s,
                    r#"<line x1="{0:.3}" y1="{1:.3}" x2="{0:.3}" y2="{2:.3}"/>"#,
                    sx(*x),
                    sy(comp.lo()),
                    sy(comp.hi())
                );
            }
        }
    }
    let _ = writeln!(s, "</g>");
    for x in knots {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">{x}</text>"#,
            sx(*x),
            HEIGHT - PAD / 3.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use metric_svf::Tolerance;

    #[test]
    fn csv_sorted_and_round_trip_formatting() {
        let rows = vec![
            vec![1.0, 0.1 + 0.2, 2.0],
            vec![0.5, 3.0, 4.0],
            vec![0.5, 1.0, 2.0],
        ];
        let csv = to_csv("x,lo,hi", rows);
        assert_eq!(csv, "x,lo,hi\n0.5,1,2\n0.5,3,4\n1,0.30000000000000004,2\n");
    }

    #[test]
    fn point_rows() {
        let set = CompactSet::points(vec![vec![1.0, 2.0]], &Tolerance::default()).unwrap();
        assert_eq!(csv_header(&set), "x,p0,p1");
        assert_eq!(set_rows(0.0, &set), vec![vec![0.0, 1.0, 2.0]]);
    }
}
