//! Self-contained SVG scatter plots.
//!
//! The rendered markup embeds the plotted coordinates as a CSV comment so
//! the figure can be regenerated or inspected without the original files.
//! Clouds with more than two dimensions are projected onto their top two
//! principal components first.

use pbc_core::cloud::PointCloud;
use pbc_core::io::fmt_f64;
use pbc_core::pca::{fit_pca, transform};

use crate::errors::CliError;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 30.0;

const PALETTE: [&str; 10] = [
    "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb", "#e07b39",
    "#117766", "#663399",
];

/// Excluded points are drawn hollow gray so cluster colors only mark scored
/// points.
pub fn scatter_svg(
    cloud: &PointCloud,
    labels: &[usize],
    excluded: Option<&[bool]>,
    title: &str,
) -> Result<String, CliError> {
    let coords = plane_coordinates(cloud)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = coords.iter().map(|&[x, y]| (x, y)).unzip();
    let (x_lo, x_hi) = padded_range(&xs);
    let (y_lo, y_hi) = padded_range(&ys);
    let sx = (WIDTH - 2.0 * MARGIN) / (x_hi - x_lo);
    let sy = (HEIGHT - 2.0 * MARGIN) / (y_hi - y_lo);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<!-- data\nx,y,label,excluded\n");
    for (i, &[x, y]) in coords.iter().enumerate() {
        let ex = excluded.is_some_and(|e| e[i]);
        svg.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(x),
            fmt_f64(y),
            labels[i],
            u8::from(ex)
        ));
    }
    svg.push_str("-->\n");
    svg.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        xml_escape(title)
    ));
    for (i, &[x, y]) in coords.iter().enumerate() {
        let px = MARGIN + (x - x_lo) * sx;
        let py = HEIGHT - MARGIN - (y - y_lo) * sy;
        if excluded.is_some_and(|e| e[i]) {
            svg.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"2\" fill=\"none\" \
                 stroke=\"#999999\" stroke-width=\"0.8\"/>\n"
            ));
        } else {
            svg.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"2\" fill=\"{}\"/>\n",
                PALETTE[labels[i] % PALETTE.len()]
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn plane_coordinates(cloud: &PointCloud) -> Result<Vec<[f64; 2]>, CliError> {
    let flat: PointCloud;
    let source = if cloud.dim() > 2 {
        let model = fit_pca(cloud, 2)?;
        flat = transform(&model, cloud)?;
        &flat
    } else {
        cloud
    };
    Ok((0..source.len())
        .map(|i| {
            let p = source.point(i);
            [p[0], *p.get(1).unwrap_or(&0.0)]
        })
        .collect())
}

fn padded_range(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    (lo - 0.05 * span, hi + 0.05 * span)
}

/// Escapes text for element content; also breaks `--` so titles cannot
/// terminate the embedded data comment.
fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace("--", "- -")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_embeds_data_and_palette() {
        let cloud = PointCloud::from_rows(&[
            vec![0.0, 0.0],
            vec![1.0, 0.5],
            vec![0.2, 0.9],
        ])
        .unwrap();
        let svg = scatter_svg(&cloud, &[0, 1, 0], Some(&[false, false, true]), "demo").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<!-- data"));
        assert!(svg.contains("x,y,label,excluded"));
        assert!(svg.contains(PALETTE[0]));
        assert!(svg.contains("stroke=\"#999999\""));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn titles_cannot_break_the_comment() {
        let cloud = PointCloud::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let svg = scatter_svg(&cloud, &[0, 1], None, "a--b <&>").unwrap();
        assert!(!svg.contains("a--b"));
        assert!(svg.contains("a- -b &lt;&amp;&gt;"));
    }

    #[test]
    fn high_dimensional_clouds_are_projected() {
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|i| {
                let t = f64::from(i);
                vec![t, 2.0 * t, 0.5 * t, 1.0]
            })
            .collect();
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let labels = vec![0usize; 12];
        let svg = scatter_svg(&cloud, &labels, None, "proj").unwrap();
        assert_eq!(svg.matches("<circle").count(), 12);
    }
}
