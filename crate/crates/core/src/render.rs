//! SVG rendering of terrains and guard solutions.
//!
//! Output is SVG 1.1 with the y axis flipped so terrain heights point up.
//! Every vertex gets one `<circle class="vertex ...">` marker colored by its
//! class, every guard one `<rect class="guard">` marker, and each assignment
//! one `<line class="assign">` arrow from guard to vertex. The text depends
//! only on the inputs.

use std::fmt::Write as _;

use crate::solver::GuardSolution;
use crate::terrain::{Terrain, VertexClass};

const WIDTH: f64 = 960.0;
const MARGIN: f64 = 24.0;

#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Drawing width in user units, excluding margins.
    pub width: f64,
    pub arrows: bool,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: WIDTH,
            arrows: true,
            labels: true,
        }
    }
}

fn color(c: VertexClass) -> &'static str {
    match c {
        VertexClass::LeftConvex => "#1f77b4",
        VertexClass::RightConvex => "#d62728",
        VertexClass::LeftReflex => "#2ca02c",
        VertexClass::RightReflex => "#9467bd",
    }
}

struct Frame {
    x0: i64,
    y1: i64,
    scale: f64,
}

impl Frame {
    fn x(&self, x: i64) -> f64 {
        MARGIN + (x - self.x0) as f64 * self.scale
    }

    fn y(&self, y: i64) -> f64 {
        MARGIN + (self.y1 - y) as f64 * self.scale
    }
}

pub fn render_svg(t: &Terrain, sol: Option<&GuardSolution>) -> String {
    render_svg_with(t, sol, &RenderOptions::default())
}

pub fn render_svg_with(t: &Terrain, sol: Option<&GuardSolution>, opts: &RenderOptions) -> String {
    let v = t.vertices();
    let c = t.classify();
    let (x0, x1) = (v[0].x, v[v.len() - 1].x);
    let y0 = v.iter().map(|p| p.y).min().unwrap_or(0);
    let y1 = v.iter().map(|p| p.y).max().unwrap_or(0);
    let span = (x1 - x0).max(y1 - y0).max(1);
    let f = Frame {
        x0,
        y1,
        scale: opts.width / span as f64,
    };
    let w = 2.0 * MARGIN + (x1 - x0) as f64 * f.scale;
    let h = 2.0 * MARGIN + (y1 - y0) as f64 * f.scale;
    let r = (f.scale * 0.15).clamp(1.0, 5.0);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">"
    );
    s.push_str("<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"#ff7f0e\"/></marker></defs>\n");
    s.push_str("<polyline class=\"terrain\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\" points=\"");
    for (k, p) in v.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.2},{:.2}", f.x(p.x), f.y(p.y));
    }
    s.push_str("\"/>\n");

    if let (Some(sol), true) = (sol, opts.arrows) {
        for (&w, &g) in &sol.assignment {
            if w == g || w >= v.len() || g >= v.len() {
                continue;
            }
            let _ = writeln!(
                s,
                "<line class=\"assign\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#ff7f0e\" stroke-width=\"0.8\" marker-end=\"url(#head)\"/>",
                f.x(v[g].x),
                f.y(v[g].y),
                f.x(v[w].x),
                f.y(v[w].y)
            );
        }
    }

    for (i, p) in v.iter().enumerate() {
        let k = c.class(i);
        let _ = writeln!(
            s,
            "<circle class=\"vertex {}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r:.2}\" fill=\"{}\"/>",
            k.short_name().to_ascii_lowercase(),
            f.x(p.x),
            f.y(p.y),
            color(k)
        );
        if opts.labels {
            let _ = writeln!(
                s,
                "<text class=\"label\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\">{}</text>",
                f.x(p.x) + r,
                f.y(p.y) - r,
                i + 1
            );
        }
    }

    if let Some(sol) = sol {
        let g = 2.0 * r;
        for &i in &sol.guards {
            if let Some(p) = v.get(i) {
                let _ = writeln!(
                    s,
                    "<rect class=\"guard\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.2\"/>",
                    f.x(p.x) - g,
                    f.y(p.y) - g,
                    2.0 * g,
                    2.0 * g
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{VALLEY, WALKTHROUGH};
    use crate::solver::{solve_full, solve_right_convex_fast};

    fn count(s: &str, needle: &str) -> usize {
        s.matches(needle).count()
    }

    #[test]
    fn valley_markers() {
        let t = Terrain::from_coords(VALLEY).unwrap();
        let sol = solve_full(&t);
        let svg = render_svg(&t, Some(&sol));
        assert_eq!(count(&svg, "class=\"vertex "), 6);
        assert_eq!(count(&svg, "class=\"guard\""), sol.guards.len());
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("version=\"1.1\""));
        assert_eq!(svg, render_svg(&t, Some(&sol)));
    }

    #[test]
    fn y_is_flipped() {
        let t = Terrain::from_coords(&[(0, 0), (1, 0), (1, 5), (2, 5)]).unwrap();
        let svg = render_svg_with(
            &t,
            None,
            &RenderOptions {
                labels: false,
                ..Default::default()
            },
        );
        // the high vertex must sit nearer the top edge than the low one
        let ys: Vec<f64> = svg
            .lines()
            .filter(|l| l.starts_with("<circle"))
            .map(|l| {
                let a = l.find("cy=\"").unwrap() + 4;
                l[a..a + l[a..].find('"').unwrap()].parse().unwrap()
            })
            .collect();
        assert!(ys[2] < ys[1]);
        assert_eq!(count(&svg, "class=\"guard\""), 0);
    }

    #[test]
    fn arrows_per_assignment() {
        let t = Terrain::from_coords(WALKTHROUGH).unwrap();
        let sol = solve_right_convex_fast(&t);
        let svg = render_svg(&t, Some(&sol));
        let real = sol.assignment.iter().filter(|(w, g)| w != g).count();
        assert_eq!(count(&svg, "class=\"assign\""), real);
        assert_eq!(count(&svg, "class=\"guard\""), 3);
        let plain = render_svg_with(
            &t,
            Some(&sol),
            &RenderOptions {
                arrows: false,
                ..Default::default()
            },
        );
        assert_eq!(count(&plain, "class=\"assign\""), 0);
    }
}
